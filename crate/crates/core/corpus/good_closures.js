var handlers = [];
for(var i=0; i < 10; i++) {
  (function (j) {
     handlers[j] = function() { return j; };
   })(i);
};
handlers[3](); // answers 3
