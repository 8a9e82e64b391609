unsigned x = 0777, y = 0xDEADbeef, z = 42ULL;
double d = 1.5e-3, e = .25, f = 1e+10f, g = 0x1.8p3;
