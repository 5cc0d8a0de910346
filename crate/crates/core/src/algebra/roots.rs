//! Real root isolation with Sturm sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::RatPoly;

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<RatPoly>,
}

impl SturmChain {
    /// Builds the chain of the squarefree part of `p` (nonconstant `p`).
    pub fn new(p: &RatPoly) -> Self {
        let p0 = p.squarefree();
        let mut chain = vec![p0.clone(), p0.derivative()];
        while !chain.last().expect("nonempty").is_zero() {
            let n = chain.len();
            let r = chain[n - 2].rem(&chain[n - 1]);
            chain.push(-&r);
        }
        chain.pop();
        SturmChain { chain }
    }

    pub fn base(&self) -> &RatPoly {
        &self.chain[0]
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            };
            if s != 0 {
                if last != 0 && s != last {
                    count += 1;
                }
                last = s;
            }
        }
        count
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Bound `B` with every real root in `(-B, B)`.
pub fn cauchy_bound(p: &RatPoly) -> BigRational {
    let lead = p.leading().abs();
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    max + BigRational::from_integer(BigInt::from(1))
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Half-open interval `(lo, hi]` holding exactly one root of `poly`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) * half()
    }

    /// Halves the interval, keeping the root. Uses counting so that rational
    /// roots at the midpoint are handled.
    pub fn bisect(&mut self, sturm: &SturmChain) {
        let mid = self.midpoint();
        if sturm.count(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_below(&mut self, sturm: &SturmChain, width: &BigRational) {
        while &self.width() > width {
            self.bisect(sturm);
        }
    }
}

/// Isolating interval of the largest real root of `p`, if any.
pub fn largest_real_root(p: &RatPoly) -> Option<(SturmChain, RootInterval)> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let sturm = SturmChain::new(p);
    let b = cauchy_bound(sturm.base());
    let mut iv = RootInterval { lo: -b.clone(), hi: b };
    if sturm.count(&iv.lo, &iv.hi) == 0 {
        return None;
    }
    while sturm.count(&iv.lo, &iv.hi) > 1 {
        let mid = iv.midpoint();
        if sturm.count(&mid, &iv.hi) >= 1 {
            iv.lo = mid;
        } else {
            iv.hi = mid;
        }
    }
    Some((sturm, iv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly::IntPolynomial;

    #[test]
    fn counts_roots_of_fibonacci_polynomial() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]).to_rat();
        let s = SturmChain::new(&p);
        let q = |n: i64| BigRational::from_integer(n.into());
        assert_eq!(s.count(&q(-10), &q(10)), 2);
        assert_eq!(s.count(&q(0), &q(10)), 1);
        assert_eq!(s.count(&q(2), &q(10)), 0);
    }

    #[test]
    fn isolates_largest_root() {
        let p = IntPolynomial::from_i64s(&[-1, -1, 1]).to_rat();
        let (s, mut iv) = largest_real_root(&p).unwrap();
        iv.refine_below(&s, &BigRational::new(1.into(), 1_000_000.into()));
        let approx = (1.0 + 5f64.sqrt()) / 2.0;
        let lo: f64 = num_traits::ToPrimitive::to_f64(&iv.lo).unwrap();
        assert!((lo - approx).abs() < 1e-5);
    }

    #[test]
    fn handles_rational_dominant_root() {
        // x^2 - x - 2 = (x - 2)(x + 1)
        let p = IntPolynomial::from_i64s(&[-2, -1, 1]).to_rat();
        let (s, mut iv) = largest_real_root(&p).unwrap();
        iv.refine_below(&s, &BigRational::new(1.into(), 1024.into()));
        let two = BigRational::from_integer(2.into());
        assert!(iv.lo < two && two <= iv.hi);
    }

    #[test]
    fn no_real_roots() {
        let p = IntPolynomial::from_i64s(&[1, 0, 1]).to_rat();
        assert!(largest_real_root(&p).is_none());
    }
}
