var person = new Object();
person.name = 'John';
person.surname = 'Foo';
person.getFullName = function (){
    return this.name + ' ' + this.surname;
}
person.getFullName(); // answers 'John Foo'
