var handlers = [];
for(var i=0; i < 10; i++) {
  handlers[i] = function() { return i; };
};
handlers[3](); // answers 10
