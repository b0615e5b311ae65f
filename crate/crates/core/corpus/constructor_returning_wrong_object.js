var Dog = function () {
  this.name = 'milou';
  return {name: 'tintin'}; // this statement is not ignored
}

var dog = new Dog();
dog; // answers {name: 'tintin'}
