var dog = {};
Object.defineProperty(dog, 'name', {
    enumerable: true,
    configurable: false,
    value: 'Pilou',
    writable: false
});

dog.name; // answers 'Pilou'
dog.name = 'another name'; // tries to set a new value
// the property is not writable
dog.name; // answers 'Pilou'

delete dog.name; // tries to remove the property from the object
// the property is not configurable
dog.name; // answers 'Pilou'
