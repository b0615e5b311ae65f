// Creates a new object with a 'yourself' method
var o = {
  yourself: function() { return this; }
};

o.yourself() // answers {yourself: function}
o.yourself() === o // answers true

//We attach o.yourself to window
var yourselfFunction = o.yourself;

yourselfFunction() // answers [object Window]
