var obj = {
  "x" : 0,
  "setX": function(val) { this.x = val }
};

window.x     // answers undefined
obj.setX(10);
obj.x         // answers 10
var f = obj.setX;
f(90);
// obj.x was not updated
obj.x // answers 10
// window.x was created
window.x // answers 90
