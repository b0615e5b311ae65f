var dog = {};
Object.defineProperty(dog, 'name', {
    enumerable: true,
    configurable: false,
    value: 'Pilou',
    writable: false
});

Object.isFrozen(dog); // answers false
Object.freeze(dog);
Object.isFrozen(dog); // answers true

dog.age = 5; // tries to add a new property to 'dog'
// 'dog' is not extensible
dog.age // answers undefined

delete dog.name // answers false
dog.name // answers 'Pilou'
