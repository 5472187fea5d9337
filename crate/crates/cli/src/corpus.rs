//! Bundled demo sessions.

pub const DEMOS: &[(&str, &str)] = &[
    (
        "truncated",
        "ring p=7 vars=x order=grevlex ideal=[x^3]\n\
         module M rank=1 rels=[[x]]\n\
         seq s = [x]\n\
         cmd resolve M 3\n\
         cmd koszul s M\n\
         cmd reconstruct M s --kmax 16\n",
    ),
    (
        "plane",
        "ring p=5 vars=x,y order=grevlex\n\
         module M rank=1 rels=[[x], [y]]\n\
         seq s = [x, y]\n\
         cmd koszul s M\n\
         cmd reconstruct M s --kmax 16\n",
    ),
    (
        "cusp",
        "ring p=7 vars=x,y order=grevlex ideal=[y^3 + 6*x^2]\n\
         module M rank=1 rels=[[x]]\n\
         seq s = [y]\n\
         cmd reconstruct M s --kmax 16\n\
         cmd flball M s --kmax 16\n",
    ),
];

pub fn demo(name: &str) -> Option<&'static str> {
    DEMOS.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}
