//! Built-in planar substitutions with a periodic tiling and a test shift.

use num_rational::BigRational;

use super::geometry::{area2, ccw, Matrix2, Vec2};
use super::{GrCertificate, PeriodicTiling, PlanarPrototile, PlanarSubstitution, RuleTile};
use crate::algebra::QuadraticElement as Qe;

/// Names accepted by [`by_name`].
pub const NAMES: [&str; 2] = ["octagonal", "table"];

/// A planar substitution bundled with the inputs of the overlap test.
#[derive(Clone, Debug)]
pub struct PlanarExample {
    pub name: &'static str,
    pub substitution: PlanarSubstitution,
    pub tiling: PeriodicTiling,
    pub v: Vec2,
    pub gr_certificate: Option<GrCertificate>,
}

pub fn by_name(name: &str) -> Option<PlanarExample> {
    match name {
        "octagonal" => Some(octagonal()),
        "table" => Some(table()),
        _ => None,
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn rect(w: i64, h: i64) -> Vec<Vec2> {
    vec![Vec2::from_ints(0, 0, 1), Vec2::from_ints(w, 0, 1), Vec2::from_ints(w, h, 1), Vec2::from_ints(0, h, 1)]
}

fn rule(tiles: &[(usize, i64, i64)]) -> Vec<RuleTile> {
    tiles.iter().map(|&(tile, x, y)| RuleTile { tile, translation: Vec2::from_ints(x, y, 1) }).collect()
}

/// Dominoes `[0,2]×[0,1]` and `[0,1]×[0,2]` with expansion 2. The shift
/// `(1, 0)` comes with a return vector certificate, so overlaps that never
/// coincide refute pure discrete spectrum.
pub fn table() -> PlanarExample {
    let prototiles = vec![
        PlanarPrototile { id: 0, label: "rho1".into(), polygon: rect(2, 1) },
        PlanarPrototile { id: 1, label: "rho2".into(), polygon: rect(1, 2) },
    ];
    let rules =
        vec![rule(&[(1, 0, 0), (0, 1, 0), (0, 1, 1), (1, 3, 0)]), rule(&[(0, 0, 0), (1, 0, 1), (1, 1, 1), (0, 0, 3)])];
    let substitution = PlanarSubstitution::new(1, prototiles, Matrix2::scalar(Qe::from_int(2, 1)), rules)
        .expect("table substitution is well formed");
    let tiling = PeriodicTiling {
        patch: vec![(0, Vec2::zero(1))],
        lattice: [Vec2::from_ints(2, 0, 1), Vec2::from_ints(0, 1, 1)],
    };
    PlanarExample {
        name: "table",
        substitution,
        tiling,
        v: Vec2::from_ints(1, 0, 1),
        gr_certificate: Some(GrCertificate { statement: "(1, 0) is a return vector of the table tilings".into() }),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Shape {
    Triangle1,
    Triangle2,
    Rhomb,
}

struct OctagonalField {
    h: Qe,
    s2: Qe,
    lam: Qe,
}

impl OctagonalField {
    fn new() -> Self {
        let h = Qe::new(q(0, 1), q(1, 2), 2).expect("2 is square-free");
        OctagonalField { h, s2: Qe::sqrt_d(2), lam: Qe::new(q(1, 1), q(1, 1), 2).expect("2 is square-free") }
    }

    fn v(&self, x: i64, y: i64) -> Vec2 {
        Vec2::from_ints(x, y, 2)
    }

    fn rotate(&self, p: &Vec2, k: usize) -> Vec2 {
        let z = Qe::zero(2);
        let one = Qe::one(2);
        let h = self.h.clone();
        let table = [
            (one.clone(), z.clone()),
            (h.clone(), h.clone()),
            (z.clone(), one.clone()),
            (-&h, h.clone()),
            (-&one, z.clone()),
            (-&h, -&h),
            (z.clone(), -&one),
            (h.clone(), -&h),
        ];
        let (co, si) = &table[k % 8];
        Vec2::new(&(&p.x * co) - &(&p.y * si), &(&p.x * si) + &(&p.y * co))
    }

    /// Children of a prototile with the given vertex sequence, as
    /// `(shape, vertex sequence)`.
    fn rule(&self, shape: Shape, pts: &[Vec2]) -> Vec<(Shape, Vec<Vec2>)> {
        use Shape::*;
        let r1 = self.lam.inverse().expect("nonzero");
        let r2 = (&Qe::from_int(2, 2) + &self.s2).inverse().expect("nonzero");
        let r1s = &r1 * &self.s2;
        let along = |p: &Vec2, q: &Vec2, t: &Qe| p + &(q - p).scale(t);
        match shape {
            Triangle1 | Triangle2 => {
                let (a, b, c) = (&pts[0], &pts[1], &pts[2]);
                let ab = along(a, b, &r1s);
                let bc = along(b, c, &r1s);
                let ac1 = along(a, c, &r2);
                let ac2 = along(a, c, &(&r2 * &self.lam));
                let x = &bc - &(c - a).scale(&r2);
                if shape == Triangle1 {
                    vec![
                        (Triangle1, vec![ab.clone(), ac1.clone(), a.clone()]),
                        (Triangle1, vec![bc.clone(), x.clone(), b.clone()]),
                        (Triangle2, vec![ac2.clone(), x.clone(), ac1.clone()]),
                        (Rhomb, vec![ac1, ab, b.clone(), x.clone()]),
                        (Rhomb, vec![x, bc, c.clone(), ac2]),
                    ]
                } else {
                    vec![
                        (Triangle1, vec![ac2.clone(), x.clone(), ac1.clone()]),
                        (Triangle2, vec![ab.clone(), ac1.clone(), a.clone()]),
                        (Triangle2, vec![bc.clone(), x.clone(), b.clone()]),
                        (Rhomb, vec![ac1, x.clone(), b.clone(), ab]),
                        (Rhomb, vec![x, ac2, c.clone(), bc]),
                    ]
                }
            }
            Rhomb => {
                let (a, b, c, d) = (&pts[0], &pts[1], &pts[2], &pts[3]);
                let ab = along(a, b, &r1);
                let bc = along(b, c, &r1s);
                let cd = along(d, c, &r1s);
                let ad = along(a, d, &r1);
                let xa = &ad + &(&ab - a);
                let xc = &bc - &(c - &cd);
                vec![
                    (Triangle1, vec![ad.clone(), xa.clone(), d.clone()]),
                    (Triangle1, vec![bc.clone(), xc.clone(), b.clone()]),
                    (Triangle2, vec![ab.clone(), xa.clone(), b.clone()]),
                    (Triangle2, vec![cd.clone(), xc.clone(), d.clone()]),
                    (Rhomb, vec![a.clone(), ab, xa.clone(), ad]),
                    (Rhomb, vec![xc.clone(), bc, c.clone(), cd]),
                    (Rhomb, vec![b.clone(), xc, d.clone(), xa]),
                ]
            }
        }
    }
}

fn relative(pts: &[Vec2]) -> Vec<Vec2> {
    pts.iter().map(|p| p - &pts[0]).collect()
}

/// The octagonal triangle-rhomb substitution with expansion `1 + √2`:
/// two chiral triangles in eight orientations and a 45° rhomb in four.
/// The periodic tiling is the unit square split along its diagonal and the
/// shift `(1 − √2/2, √2/2)` is completely irrational with respect to `Z²`.
pub fn octagonal() -> PlanarExample {
    let f = OctagonalField::new();
    let t1 = [f.v(1, 1), f.v(1, 0), f.v(0, 0)];
    let t2 = [f.v(0, 0), f.v(1, 0), f.v(1, 1)];
    let rh = [f.v(0, 0), Vec2::new(f.h.clone(), f.h.clone()), Vec2::new(&Qe::one(2) + &f.h, f.h.clone()), f.v(1, 0)];
    // Vertex sequences in the orientation the rule expects.
    let mut shapes: Vec<(Shape, Vec<Vec2>, String)> = Vec::new();
    for k in 0..8 {
        shapes.push((Shape::Triangle1, t1.iter().map(|p| f.rotate(p, k)).collect(), format!("tau{k}")));
    }
    for k in 0..8 {
        shapes.push((Shape::Triangle2, t2.iter().map(|p| f.rotate(p, k)).collect(), format!("tau'{k}")));
    }
    for k in 0..4 {
        shapes.push((Shape::Rhomb, rh.iter().map(|p| f.rotate(p, k)).collect(), format!("rho{k}")));
    }
    let identify = |shape: Shape, pts: &[Vec2]| -> RuleTile {
        let mut candidates = vec![pts.to_vec()];
        if shape == Shape::Rhomb {
            candidates.push(pts[2..].iter().chain(&pts[..2]).cloned().collect());
        }
        for cand in &candidates {
            let rel = relative(cand);
            for (i, (s, proto, _)) in shapes.iter().enumerate() {
                if *s == shape && relative(proto) == rel {
                    return RuleTile { tile: i, translation: &cand[0] - &proto[0] };
                }
            }
        }
        panic!("octagonal child does not match a prototile");
    };
    let rules: Vec<Vec<RuleTile>> = shapes
        .iter()
        .map(|(shape, pts, _)| {
            let big: Vec<Vec2> = pts.iter().map(|p| p.scale(&f.lam)).collect();
            f.rule(*shape, &big).iter().map(|(s, child)| identify(*s, child)).collect()
        })
        .collect();
    let prototiles = shapes
        .iter()
        .enumerate()
        .map(|(id, (_, pts, label))| {
            debug_assert!(!area2(pts).is_zero());
            PlanarPrototile { id, label: label.clone(), polygon: ccw(pts) }
        })
        .collect();
    let substitution = PlanarSubstitution::new(2, prototiles, Matrix2::scalar(f.lam.clone()), rules)
        .expect("octagonal substitution is well formed");
    let tiling = PeriodicTiling { patch: vec![(0, f.v(0, 0)), (12, f.v(1, 1))], lattice: [f.v(1, 0), f.v(0, 1)] };
    PlanarExample {
        name: "octagonal",
        substitution,
        tiling,
        v: Vec2::new(&Qe::one(2) - &f.h, f.h.clone()),
        gr_certificate: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn octagonal_shape() {
        let b = octagonal();
        let ps = &b.substitution;
        assert_eq!(ps.prototiles.len(), 20);
        assert_eq!(ps.label(12), "tau'4");
        for (i, r) in ps.rules.iter().enumerate() {
            assert_eq!(r.len(), if i < 16 { 5 } else { 7 });
        }
        b.tiling.validate(ps).unwrap();
    }

    #[test]
    fn table_tiling_is_valid() {
        let b = table();
        b.tiling.validate(&b.substitution).unwrap();
        assert!(by_name("table").is_some());
        assert!(by_name("penrose").is_none());
    }
}
