// 'Object' being a function, we add a new method to all objects
Object.prototype.superSend = function (selector, args) {
  // We use 'inheritsFrom' to reference the prototype and we search
  // the property in variable 'selector' from this prototype:
  return this.inheritsFrom[selector].apply(this, args);
};

var Animal = function () { };
Animal.prototype.say = function (string) {
    return 'hello ' + string;
};

var Dog = function () { };
Dog.prototype = new Animal();
// We add our own property to retain inheritance
// without using the not standard __proto__
Dog.prototype.inheritsFrom = Dog.prototype.constructor.prototype;
Dog.prototype.constructor = Dog;

new Dog().inheritsFrom === new Dog().__proto__.__proto__; // answers true

Dog.prototype.say = function (string) {
    return this.superSend('say',['wouf wouf']);
};

new Dog().say("I'm a dog"); // answers 'hello wouf wouf'
