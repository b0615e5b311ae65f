var a = 2;
eval('a++');
a // answers 3
