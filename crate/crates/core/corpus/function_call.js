function sum(a, b){
    return a + b;
}
function someFunctionWithNoArguments(){
    return 'no arguments';
}

sum(1, 2); // answers 3
someFunctionWithNoArguments(); // answers 'no arguments'
