function foo(x) {
    return function() {
        var x; // "var x = x" is split in two statements
        x = x;
        return x;
    }
}

foo(200)(); // answers undefined
