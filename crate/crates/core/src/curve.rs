//! The supersingular cubic `y^2 + y = x^3` over F_4: points, group law,
//! automorphisms, and their matrices on the 3-torsion.
//!
//! The curve has exactly 9 rational points forming (Z/3)^2, with basis
//! `P1 = (0,0)`, `P2 = (1,a)`.  Any group automorphism therefore becomes
//! a matrix in GL_2(F_3) once its additivity has been checked on all 81
//! pairs of points.  Four geometric automorphisms are provided:
//!
//! * negation `(x,y) -> (x, y+1)`,
//! * the order-3 twist `(x,y) -> (ax, y)`,
//! * an order-4 automorphism `(x,y) -> (x+1, x+y+a)`,
//! * the 2-power Frobenius `(x,y) -> (x^2, y^2)`.
//!
//! Together they generate the full GL_2(F_3), of order 48; the matrices
//! of determinant 1 form its order-24 subgroup.

use crate::error::{Error, Result};
use crate::rings::{F4Element, F4Field, Ring};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Point {
    Infinity,
    Affine(F4Element, F4Element),
}

use Point::{Affine, Infinity};

/// Basis of the point group.
pub const P1: Point = Affine(F4Element::ZERO, F4Element::ZERO);
pub const P2: Point = Affine(F4Element::ONE, F4Element::A);

pub fn on_curve(p: &Point) -> bool {
    match p {
        Infinity => true,
        Affine(x, y) => {
            let f = F4Field;
            let lhs = f.add(&f.mul(y, y), y);
            let rhs = f.mul(&f.mul(x, x), x);
            lhs == rhs
        }
    }
}

/// All 9 rational points, by scanning the 16 affine candidates.
pub fn all_points() -> Vec<Point> {
    let mut pts = vec![Infinity];
    for x in F4Element::all() {
        for y in F4Element::all() {
            let p = Affine(x, y);
            if on_curve(&p) {
                pts.push(p);
            }
        }
    }
    pts
}

pub fn neg_point(p: &Point) -> Point {
    match p {
        Infinity => Infinity,
        Affine(x, y) => Affine(*x, F4Field.add(y, &F4Element::ONE)),
    }
}

/// Chord-and-tangent addition, specialized to characteristic 2 with
/// `a1 = 0, a3 = 1`: the third intersection is negated by `y -> y + 1`.
pub fn add(p: &Point, q: &Point) -> Point {
    let f = F4Field;
    let (x1, y1, x2, y2) = match (p, q) {
        (Infinity, _) => return *q,
        (_, Infinity) => return *p,
        (Affine(x1, y1), Affine(x2, y2)) => (*x1, *y1, *x2, *y2),
    };
    let mu = if x1 == x2 {
        if y2 == f.add(&y1, &F4Element::ONE) {
            return Infinity;
        }
        // tangent slope of y^2 + y = x^3 is x^2
        f.mul(&x1, &x1)
    } else {
        let dx = f.add(&x2, &x1);
        f.mul(&f.add(&y2, &y1), &f.try_invert(&dx).expect("distinct x"))
    };
    let x3 = f.add(&f.add(&f.mul(&mu, &mu), &x1), &x2);
    let y3 = f.add(&f.add(&f.mul(&mu, &f.add(&x1, &x3)), &y1), &F4Element::ONE);
    Affine(x3, y3)
}

pub fn smul(k: i64, p: &Point) -> Point {
    let k = k.rem_euclid(3);
    let mut acc = Infinity;
    for _ in 0..k {
        acc = add(&acc, p);
    }
    acc
}

/// A named map on points.
#[derive(Clone, Copy)]
pub struct CurveMap {
    pub name: &'static str,
    map: fn(&Point) -> Point,
}

impl CurveMap {
    pub fn apply(&self, p: &Point) -> Point {
        (self.map)(p)
    }
}

pub fn negation() -> CurveMap {
    CurveMap {
        name: "negation",
        map: |p| neg_point(p),
    }
}

pub fn omega_twist() -> CurveMap {
    fn f(p: &Point) -> Point {
        match p {
            Infinity => Infinity,
            Affine(x, y) => Affine(F4Field.mul(&F4Element::A, x), *y),
        }
    }
    CurveMap {
        name: "omega",
        map: f,
    }
}

pub fn order_four() -> CurveMap {
    fn f(p: &Point) -> Point {
        match p {
            Infinity => Infinity,
            Affine(x, y) => {
                let g = F4Field;
                let x2 = g.add(x, &F4Element::ONE);
                let y2 = g.add(&g.add(x, y), &F4Element::A);
                Affine(x2, y2)
            }
        }
    }
    CurveMap { name: "i", map: f }
}

pub fn frobenius_map() -> CurveMap {
    fn f(p: &Point) -> Point {
        match p {
            Infinity => Infinity,
            Affine(x, y) => Affine(x.frobenius(), y.frobenius()),
        }
    }
    CurveMap {
        name: "frobenius",
        map: f,
    }
}

/// 2x2 matrix over F_3, acting on columns in the basis `(P1, P2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mat3 {
    pub e: [[u8; 2]; 2],
}

impl Mat3 {
    pub fn new(e: [[i64; 2]; 2]) -> Self {
        Mat3 {
            e: e.map(|row| row.map(|v| u8::try_from(v.rem_euclid(3)).unwrap())),
        }
    }

    pub fn identity() -> Self {
        Mat3::new([[1, 0], [0, 1]])
    }

    pub fn mul(&self, other: &Mat3) -> Mat3 {
        let mut e = [[0u8; 2]; 2];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = (0..2).map(|k| self.e[i][k] * other.e[k][j]).sum::<u8>() % 3;
            }
        }
        Mat3 { e }
    }

    pub fn det(&self) -> u8 {
        (self.e[0][0] * self.e[1][1] + 2 * self.e[0][1] * self.e[1][0]) % 3
    }

    /// Determinant as a signed representative, -1, 0 or 1.
    pub fn det_signed(&self) -> i64 {
        match self.det() {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.e[1][0] == 0
    }
}

impl std::fmt::Display for Mat3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |v: u8| {
            if v == 2 {
                "-1".to_string()
            } else {
                v.to_string()
            }
        };
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            s(self.e[0][0]),
            s(self.e[0][1]),
            s(self.e[1][0]),
            s(self.e[1][1])
        )
    }
}

/// Express `p` as `m*P1 + n*P2`.
fn coordinates(p: &Point) -> (u8, u8) {
    for m in 0..3 {
        for n in 0..3 {
            if add(&smul(m, &P1), &smul(n, &P2)) == *p {
                return (u8::try_from(m).unwrap(), u8::try_from(n).unwrap());
            }
        }
    }
    unreachable!("every point is a combination of the basis")
}

/// The matrix of a map on the point group, after verifying that the map
/// fixes infinity, lands on the curve, is additive on all 81 pairs of
/// points, and is invertible.
pub fn matrix_of(g: &CurveMap) -> Result<Mat3> {
    let bad = |detail: String| Error::NotGroupAutomorphism(format!("{}: {detail}", g.name));
    if g.apply(&Infinity) != Infinity {
        return Err(bad("does not fix the identity".into()));
    }
    let pts = all_points();
    for p in &pts {
        if !on_curve(&g.apply(p)) {
            return Err(bad(format!("image of {p:?} is off the curve")));
        }
    }
    for p in &pts {
        for q in &pts {
            if g.apply(&add(p, q)) != add(&g.apply(p), &g.apply(q)) {
                return Err(bad(format!("not additive at {p:?} + {q:?}")));
            }
        }
    }
    let (a, c) = coordinates(&g.apply(&P1));
    let (b, d) = coordinates(&g.apply(&P2));
    let m = Mat3 {
        e: [[a, b], [c, d]],
    };
    if m.det() == 0 {
        return Err(bad("matrix is singular".into()));
    }
    Ok(m)
}

/// Closure of a generating set under multiplication.
pub fn generate(gens: &[Mat3]) -> BTreeSet<Mat3> {
    let mut set: BTreeSet<Mat3> = BTreeSet::new();
    set.insert(Mat3::identity());
    loop {
        let mut grew = false;
        let snapshot: Vec<Mat3> = set.iter().copied().collect();
        for a in &snapshot {
            for g in gens {
                if set.insert(a.mul(g)) {
                    grew = true;
                }
            }
        }
        if !grew {
            return set;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_points_each_of_order_three() {
        let pts = all_points();
        assert_eq!(pts.len(), 9);
        for p in &pts {
            assert_eq!(smul(3, p), Infinity);
            if *p != Infinity {
                assert_ne!(smul(2, p), Infinity, "no 2-torsion");
                assert_eq!(smul(2, p), neg_point(p));
            }
        }
        // the basis spans everything
        let spanned: BTreeSet<Point> = (0..3)
            .flat_map(|m| (0..3).map(move |n| add(&smul(m, &P1), &smul(n, &P2))))
            .collect();
        assert_eq!(spanned.len(), 9);
    }

    #[test]
    fn known_sum() {
        let s = add(&P1, &P2);
        assert_eq!(s, Point::Affine(F4Element::A, F4Element::A));
    }

    #[test]
    fn automorphism_matrices_are_the_expected_ones() {
        assert_eq!(
            matrix_of(&negation()).unwrap(),
            Mat3::new([[-1, 0], [0, -1]])
        );
        assert_eq!(
            matrix_of(&omega_twist()).unwrap(),
            Mat3::new([[1, 1], [0, 1]])
        );
        assert_eq!(
            matrix_of(&order_four()).unwrap(),
            Mat3::new([[0, -1], [1, 0]])
        );
        assert_eq!(
            matrix_of(&frobenius_map()).unwrap(),
            Mat3::new([[1, 0], [0, -1]])
        );
        let dets: Vec<i64> = [negation(), omega_twist(), order_four(), frobenius_map()]
            .iter()
            .map(|g| matrix_of(g).unwrap().det_signed())
            .collect();
        assert_eq!(dets, vec![1, 1, 1, -1]);
    }

    #[test]
    fn automorphisms_generate_gl2_f3() {
        let gens: Vec<Mat3> = [negation(), omega_twist(), order_four(), frobenius_map()]
            .iter()
            .map(|g| matrix_of(g).unwrap())
            .collect();
        let full = generate(&gens);
        assert_eq!(full.len(), 48);
        let det_one: Vec<Mat3> = full.iter().filter(|m| m.det() == 1).copied().collect();
        assert_eq!(det_one.len(), 24);
        assert_eq!(
            generate(&det_one).len(),
            24,
            "determinant-1 part is a subgroup"
        );
    }

    #[test]
    fn named_subgroup_orders() {
        let neg = matrix_of(&negation()).unwrap();
        let om = matrix_of(&omega_twist()).unwrap();
        let iq = matrix_of(&order_four()).unwrap();
        let fr = matrix_of(&frobenius_map()).unwrap();
        assert_eq!(generate(&[neg, om, fr]).len(), 12);
        assert!(generate(&[neg, om, fr])
            .iter()
            .all(|m| m.is_upper_triangular()));
        assert_eq!(generate(&[om, fr]).len(), 6);
        let j = om.mul(&iq).mul(&om.mul(&om)); // conjugate of i by omega
        let q8 = generate(&[iq, j]);
        assert_eq!(q8.len(), 8);
        assert_eq!(generate(&[om]).len(), 3);
        // i has order 4 with square -1
        assert_eq!(iq.mul(&iq), neg);
    }

    #[test]
    fn broken_maps_are_rejected() {
        fn off_curve(p: &Point) -> Point {
            match p {
                Point::Infinity => Point::Infinity,
                Point::Affine(x, y) => Point::Affine(F4Field.add(x, &F4Element::ONE), *y),
            }
        }
        fn not_additive(p: &Point) -> Point {
            match p {
                Point::Affine(x, y) if *x == F4Element::ZERO => {
                    Point::Affine(*x, F4Field.add(y, &F4Element::ONE))
                }
                other => *other,
            }
        }
        let m1 = CurveMap {
            name: "off",
            map: off_curve,
        };
        let m2 = CurveMap {
            name: "swap",
            map: not_additive,
        };
        assert!(matches!(
            matrix_of(&m1),
            Err(Error::NotGroupAutomorphism(_))
        ));
        assert!(matches!(
            matrix_of(&m2),
            Err(Error::NotGroupAutomorphism(_))
        ));
    }
}
