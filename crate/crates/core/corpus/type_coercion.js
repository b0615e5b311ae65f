false == 0 // answers true

0 == false // answers true

"" == 0 // answers true

false == "" // answers true

{} == {} // answers false

var n = {
    valueOf: function () {
        return 1;
    },
    toString: function () {
        return "2";
    }
};

n == 1; // answers true
n == "2"; // answers false

var n = {
    toString: function () {
        return "2";
    }
};

n == 1; // answers false
n == "2"; // answers true

// an array with one element converts to the string of its element
[ [ [ 42 ] ] ] == 42; // answers true

true + 3; // answers 4
