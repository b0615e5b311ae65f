function foo() {
    var x;
    if (true) {
        x = 10;
    }
    return x;
}

foo(); // answers 10
