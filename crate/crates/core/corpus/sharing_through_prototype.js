var Cat = function (color, name) {
  this.color = color;
  this.name = name || 'default name';
}

Cat.prototype.numberOfLegs = 4;

var garfield = new Cat('red', 'Garfield');
var azrael = new Cat('black', 'Azrael');

garfield.color; // answers 'red'
garfield.numberOfLegs; // answers 4

azrael.color; // answers 'black'
azrael.numberOfLegs; // answers 4

Cat.prototype.numberOfLegs = 5;
garfield.numberOfLegs; // answers 5
azrael.numberOfLegs; // answers 5

azrael.color = 'grey';
garfield.color; // answers 'red'
azrael.color; // answers 'grey'
