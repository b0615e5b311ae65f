var objOld = new Object();
var objNew = Object.create(null); // new function from ECMAScript 5

// a.isPrototypeOf(b) checks if 'a' is in the __proto__ inheritance
// chain of b (i.e., b is derived from a)
Object.prototype.isPrototypeOf(objOld);  // answers true
Object.prototype.isPrototypeOf(objNew);  // answers false

objOld.toString;  // answers function
objNew.toString;  // answers undefined
