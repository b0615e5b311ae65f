// We create a new empty object
var person = new Object();

// Write a property
person.age = 5;
person['age'] = 5; // equivalent

// Read a property and store it into some variable
var theAge = person.age;
var theAge = person['age']; // equivalent
theAge; // answers 5
