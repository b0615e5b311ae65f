var dog = {};
Object.defineProperty(dog, 'name', {
    enumerable: true,
    configurable: false,
    value: 'Pilou',
    writable: false
});

Object.isExtensible(dog); // answers true
Object.preventExtensions(dog);
Object.isExtensible(dog); // answers false

dog.age = 5; // tries to add a new property to 'dog'
// 'dog' is not extensible
dog.age // answers undefined
