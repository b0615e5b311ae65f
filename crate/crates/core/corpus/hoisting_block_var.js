function foo() {
    if (true) {
        var x = 10;
    }
    return x;
}

foo(); // answers 10
