//! Real quadratic fields `Q(√d)` with an exact total order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// `a + b·√d` with `d` a positive square-free integer.
///
/// With `d = 1` the irrational part is folded into `a`, so equal numbers
/// always have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    a: BigRational,
    b: BigRational,
    d: u32,
}

/// Checks that `d` is positive and square-free.
pub fn check_square_free(d: u32) -> Result<(), AlgebraError> {
    if d == 0 {
        return Err(AlgebraError::NotSquareFree(d));
    }
    let mut k = 2u32;
    while k * k <= d {
        if d.is_multiple_of(k * k) {
            return Err(AlgebraError::NotSquareFree(d));
        }
        k += 1;
    }
    Ok(())
}

impl QuadraticElement {
    pub fn new(a: BigRational, b: BigRational, d: u32) -> Result<Self, AlgebraError> {
        check_square_free(d)?;
        Ok(Self::new_unchecked(a, b, d))
    }

    pub(crate) fn new_unchecked(a: BigRational, b: BigRational, d: u32) -> Self {
        if d == 1 {
            QuadraticElement { a: a + b, b: BigRational::zero(), d }
        } else {
            QuadraticElement { a, b, d }
        }
    }

    pub fn rational(a: BigRational, d: u32) -> Self {
        Self::new_unchecked(a, BigRational::zero(), d)
    }

    pub fn from_int(n: i64, d: u32) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)), d)
    }

    pub fn zero(d: u32) -> Self {
        Self::from_int(0, d)
    }

    pub fn one(d: u32) -> Self {
        Self::from_int(1, d)
    }

    /// `√d` itself.
    pub fn sqrt_d(d: u32) -> Self {
        Self::new_unchecked(BigRational::zero(), BigRational::one(), d)
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.d, o.d, "arithmetic across different quadratic fields");
    }

    /// Exact sign: compare `a²` with `b²d` when `a` and `b` disagree.
    pub fn signum(&self) -> Ordering {
        let zero = BigRational::zero();
        let sa = self.a.cmp(&zero);
        let sb = self.b.cmp(&zero);
        match (sa, sb) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d));
                match a2.cmp(&b2d) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Self {
        QuadraticElement { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² − d b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(QuadraticElement { a: &self.a / &n, b: -&self.b / &n, d: self.d })
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * f64::from(self.d).sqrt()
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64().floor();
        let mut n = BigInt::from(approx as i64);
        let as_q = |n: &BigInt| Self::rational(BigRational::from_integer(n.clone()), self.d);
        while (self - &as_q(&n)).is_negative() {
            n -= 1;
        }
        while !(self - &as_q(&(&n + 1))).is_negative() {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn rational_coords(&self) -> [BigRational; 2] {
        [self.a.clone(), self.b.clone()]
    }

    /// Parses `["a", "b"]` strings meaning `a + b√d`.
    pub fn parse(a: &str, b: &str, d: u32) -> Result<Self, AlgebraError> {
        let pa = parse_rational(a)?;
        let pb = parse_rational(b)?;
        Self::new(pa, pb, d)
    }
}

/// Parses `"n"` or `"n/m"` as an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgebraError> {
    let t = s.trim();
    let bad = || AlgebraError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((n, m)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let m: BigInt = m.trim().parse().map_err(|_| bad())?;
            if m.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, m))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
    }
}

/// Renders a rational as `"n"` or `"n/m"`.
pub fn rational_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl PartialOrd for QuadraticElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl std::ops::Add for &QuadraticElement {
    type Output = QuadraticElement;
    fn add(self, o: &QuadraticElement) -> QuadraticElement {
        self.check(o);
        QuadraticElement { a: &self.a + &o.a, b: &self.b + &o.b, d: self.d }
    }
}

impl std::ops::Sub for &QuadraticElement {
    type Output = QuadraticElement;
    fn sub(self, o: &QuadraticElement) -> QuadraticElement {
        self.check(o);
        QuadraticElement { a: &self.a - &o.a, b: &self.b - &o.b, d: self.d }
    }
}

impl std::ops::Mul for &QuadraticElement {
    type Output = QuadraticElement;
    fn mul(self, o: &QuadraticElement) -> QuadraticElement {
        self.check(o);
        let d = BigRational::from_integer(BigInt::from(self.d));
        QuadraticElement { a: &self.a * &o.a + &self.b * &o.b * d, b: &self.a * &o.b + &self.b * &o.a, d: self.d }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Div for &QuadraticElement {
    type Output = QuadraticElement;
    fn div(self, o: &QuadraticElement) -> QuadraticElement {
        self * &o.inverse().expect("division by zero in quadratic field")
    }
}

impl std::ops::Neg for &QuadraticElement {
    type Output = QuadraticElement;
    fn neg(self) -> QuadraticElement {
        QuadraticElement { a: -&self.a, b: -&self.b, d: self.d }
    }
}

impl std::ops::Neg for QuadraticElement {
    type Output = QuadraticElement;
    fn neg(self) -> QuadraticElement {
        -&self
    }
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", rational_string(&self.a));
        }
        let root = format!("√{}", self.d);
        let bpart = if self.b.abs().is_one() { root } else { format!("{}{}", rational_string(&self.b.abs()), root) };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{bpart}")
        } else {
            let sign = if self.b.is_negative() { '-' } else { '+' };
            write!(f, "{} {sign} {bpart}", rational_string(&self.a))
        }
    }
}

/// Rank over `Q` of quadratic elements from one field.
pub fn q_linear_rank_quadratic(xs: &[QuadraticElement]) -> Result<usize, AlgebraError> {
    if let Some(first) = xs.first() {
        if xs.iter().any(|x| x.d != first.d) {
            return Err(AlgebraError::MixedFields);
        }
    }
    let rows: Vec<Vec<BigRational>> = xs.iter().map(|x| x.rational_coords().to_vec()).collect();
    Ok(super::matrix::rational_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, m: i64) -> BigRational {
        BigRational::new(n.into(), m.into())
    }

    fn r2(a: BigRational, b: BigRational) -> QuadraticElement {
        QuadraticElement::new(a, b, 2).unwrap()
    }

    #[test]
    fn exact_signs() {
        assert!(r2(q(3, 2), q(-1, 1)).is_positive()); // 1.5 − 1.414
        assert!(r2(q(7, 5), q(-1, 1)).is_negative()); // 1.4 − 1.414
        assert!(r2(q(-3, 2), q(1, 1)).is_negative());
        assert_eq!(r2(q(0, 1), q(0, 1)).signum(), Ordering::Equal);
    }

    #[test]
    fn inverse_and_product() {
        let s = QuadraticElement::sqrt_d(2);
        let one = QuadraticElement::one(2);
        let lam = &one + &s;
        assert_eq!(&lam * &lam.inverse().unwrap(), one);
        assert_eq!(&s * &s, QuadraticElement::from_int(2, 2));
    }

    #[test]
    fn d_one_folds() {
        let x = QuadraticElement::new(q(1, 1), q(2, 1), 1).unwrap();
        assert_eq!(x, QuadraticElement::from_int(3, 1));
    }

    #[test]
    fn rejects_non_square_free() {
        assert!(QuadraticElement::new(q(1, 1), q(1, 1), 8).is_err());
        assert!(QuadraticElement::new(q(1, 1), q(1, 1), 0).is_err());
    }

    #[test]
    fn floor_is_exact() {
        assert_eq!(r2(q(0, 1), q(1, 1)).floor(), BigInt::from(1));
        assert_eq!(r2(q(0, 1), q(-1, 1)).floor(), BigInt::from(-2));
        assert_eq!(QuadraticElement::from_int(3, 2).floor(), BigInt::from(3));
        assert_eq!(QuadraticElement::from_int(3, 2).ceil(), BigInt::from(3));
    }

    #[test]
    fn octagonal_shift_has_rank_two() {
        let x = r2(q(1, 1), q(-1, 2));
        let y = r2(q(0, 1), q(1, 2));
        assert_eq!(q_linear_rank_quadratic(&[x, y]).unwrap(), 2);
    }

    #[test]
    fn parse_and_display() {
        let x = QuadraticElement::parse("1", "-1/2", 2).unwrap();
        assert_eq!(x.to_string(), "1 - 1/2√2");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
