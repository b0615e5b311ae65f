var Animal = function (name) {
    this.name = name;
    this.describe = function() {
        return this.name + ', an animal';
    }
};

//Invoking the constructor with the 'new' keyword
var animal = new Animal("pilou");

animal.name;       // answers 'pilou'
animal.describe()  // answers 'pilou, an animal'
