//! Exact plane geometry over `Q(√d)`.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use crate::algebra::QuadraticElement as Qe;

/// A point or vector with coordinates in `Q(√d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vec2 {
    pub x: Qe,
    pub y: Qe,
}

impl Vec2 {
    pub fn new(x: Qe, y: Qe) -> Self {
        Vec2 { x, y }
    }

    pub fn zero(d: u32) -> Self {
        Vec2 { x: Qe::zero(d), y: Qe::zero(d) }
    }

    pub fn from_ints(x: i64, y: i64, d: u32) -> Self {
        Vec2 { x: Qe::from_int(x, d), y: Qe::from_int(y, d) }
    }

    pub fn d(&self) -> u32 {
        self.x.d()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, k: &Qe) -> Self {
        Vec2 { x: &self.x * k, y: &self.y * k }
    }

    pub fn cross(&self, o: &Vec2) -> Qe {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    /// `(x.a, x.b, y.a, y.b)`: the rational coordinates, compared
    /// lexicographically for the canonical order.
    pub fn key(&self) -> [BigRational; 4] {
        let [xa, xb] = self.x.rational_coords();
        let [ya, yb] = self.y.rational_coords();
        [xa, xb, ya, yb]
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Ord for Vec2 {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Vec2 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Add for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x + &o.x, y: &self.y + &o.y }
    }
}

impl std::ops::Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2 { x: &self.x - &o.x, y: &self.y - &o.y }
    }
}

impl std::ops::Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2 { x: -&self.x, y: -&self.y }
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A 2×2 matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub m: [[Qe; 2]; 2],
}

impl Matrix2 {
    pub fn scalar(k: Qe) -> Self {
        let z = Qe::zero(k.d());
        Matrix2 { m: [[k.clone(), z.clone()], [z, k]] }
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        let [[a, b], [c, d]] = &self.m;
        Vec2 { x: &(a * &v.x) + &(b * &v.y), y: &(c * &v.x) + &(d * &v.y) }
    }

    pub fn det(&self) -> Qe {
        let [[a, b], [c, d]] = &self.m;
        &(a * d) - &(b * c)
    }

    /// `M^k` for `k ≥ 0`.
    pub fn pow(&self, k: u32) -> Self {
        let d = self.m[0][0].d();
        let mut acc = Matrix2::scalar(Qe::one(d));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn mul(&self, o: &Matrix2) -> Self {
        let e = |i: usize, j: usize| &(&self.m[i][0] * &o.m[0][j]) + &(&self.m[i][1] * &o.m[1][j]);
        Matrix2 { m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] }
    }
}

/// Twice the signed area (positive for counterclockwise order).
pub fn area2(poly: &[Vec2]) -> Qe {
    let d = poly.first().map_or(1, Vec2::d);
    let mut s = Qe::zero(d);
    for i in 0..poly.len() {
        s = &s + &poly[i].cross(&poly[(i + 1) % poly.len()]);
    }
    s
}

pub fn area(poly: &[Vec2]) -> Qe {
    let two = Qe::from_int(2, poly.first().map_or(1, Vec2::d));
    &area2(poly) / &two
}

/// Strictly convex, counterclockwise, at least three vertices.
pub fn is_convex_ccw(poly: &[Vec2]) -> bool {
    let n = poly.len();
    n >= 3
        && (0..n).all(|i| {
            let (a, b, c) = (&poly[i], &poly[(i + 1) % n], &poly[(i + 2) % n]);
            (b - a).cross(&(c - b)).is_positive()
        })
}

/// Closed containment of a point in a convex counterclockwise polygon.
pub fn contains_point(poly: &[Vec2], p: &Vec2) -> bool {
    let n = poly.len();
    (0..n).all(|i| {
        let (a, b) = (&poly[i], &poly[(i + 1) % n]);
        !(b - a).cross(&(p - a)).is_negative()
    })
}

pub fn translate(poly: &[Vec2], t: &Vec2) -> Vec<Vec2> {
    poly.iter().map(|p| p + t).collect()
}

/// Exact axis-aligned bounds `(min_x, min_y, max_x, max_y)`.
pub fn bounds(poly: &[Vec2]) -> (Qe, Qe, Qe, Qe) {
    let xs = || poly.iter().map(|p| &p.x);
    let ys = || poly.iter().map(|p| &p.y);
    (
        xs().min().expect("nonempty").clone(),
        ys().min().expect("nonempty").clone(),
        xs().max().expect("nonempty").clone(),
        ys().max().expect("nonempty").clone(),
    )
}

/// Sutherland–Hodgman clipping of `subject` by the convex counterclockwise
/// polygon `clipper`.
pub fn clip_convex(subject: &[Vec2], clipper: &[Vec2]) -> Vec<Vec2> {
    let mut out = subject.to_vec();
    for i in 0..clipper.len() {
        if out.is_empty() {
            break;
        }
        let (a, b) = (&clipper[i], &clipper[(i + 1) % clipper.len()]);
        let edge = b - a;
        let input = std::mem::take(&mut out);
        let side: Vec<Qe> = input.iter().map(|p| edge.cross(&(p - a))).collect();
        for j in 0..input.len() {
            let k = (j + 1) % input.len();
            let (sp, sq) = (&side[j], &side[k]);
            if !sp.is_negative() {
                out.push(input[j].clone());
            }
            if (sp.is_positive() && sq.is_negative()) || (sp.is_negative() && sq.is_positive()) {
                let t = sp / &(sp - sq);
                out.push(&input[j] + &(&input[k] - &input[j]).scale(&t));
            }
        }
    }
    out
}

/// Whether two convex counterclockwise polygons share interior points.
pub fn interiors_intersect(a: &[Vec2], b: &[Vec2]) -> bool {
    let (ax0, ay0, ax1, ay1) = bounds(a);
    let (bx0, by0, bx1, by1) = bounds(b);
    if ax1 <= bx0 || bx1 <= ax0 || ay1 <= by0 || by1 <= ay0 {
        return false;
    }
    let c = clip_convex(a, b);
    c.len() >= 3 && area2(&c).is_positive()
}

/// Counterclockwise copy of a simple polygon.
pub fn ccw(poly: &[Vec2]) -> Vec<Vec2> {
    if area2(poly).is_negative() {
        poly.iter().rev().cloned().collect()
    } else {
        poly.to_vec()
    }
}
