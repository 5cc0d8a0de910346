//! Certified Pisot test.
//!
//! Roots are approximated numerically and then certified with exact
//! rational arithmetic: for approximations `z_i` of the roots of a monic
//! `p`, the Weierstrass corrections `W_i = p(z_i) / Π_{j≠i}(z_i − z_j)`
//! make `p` the characteristic polynomial of `diag(z) − W·1ᵀ`, so the
//! Gershgorin discs `D(z_i − W_i, (n−1)|W_i|)` contain the roots and each
//! isolated disc contains exactly one. Precision grows until every disc is
//! isolated and strictly inside or outside the unit circle.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::factor::factor;
use super::poly::IntPolynomial;
use super::roots::largest_real_root;
use super::AlgebraError;

type CQ = Complex<BigRational>;

/// Position of a certified root relative to the unit circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UnitCircleSide {
    Inside,
    Outside,
}

/// Certified summary of a Pisot decision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PisotCertificate {
    pub is_pisot: bool,
    /// Minimal polynomial of the dominant real root.
    pub minimal_polynomial: IntPolynomial,
    /// Whether `gcd(f, x^deg f(1/x))` is nontrivial.
    pub self_reciprocal: bool,
    /// Roots of the minimal polynomial inside / outside the unit circle
    /// (`None` for self-reciprocal factors, decided structurally).
    pub inside: Option<usize>,
    pub outside: Option<usize>,
}

fn to_q(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(BigRational::zero)
}

/// Rounds to the dyadic grid `2^-bits` to keep denominators bounded.
fn round_dyadic(x: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let n = (x * BigRational::from_integer(scale.clone())).round().to_integer();
    BigRational::new(n, scale)
}

fn eval_c(coeffs: &[BigRational], z: &CQ) -> CQ {
    let mut acc = CQ::new(BigRational::zero(), BigRational::zero());
    for c in coeffs.iter().rev() {
        acc = acc * z + CQ::new(c.clone(), BigRational::zero());
    }
    acc
}

/// Durand–Kerner in double precision, from the usual spiral start.
fn approximate_roots(monic: &[f64]) -> Vec<Complex<f64>> {
    let n = monic.len() - 1;
    let bound = 1.0 + monic[..n].iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| seed.powu(k as u32) * bound.min(2.0)).collect();
    let eval = |x: Complex<f64>| monic.iter().rev().fold(Complex::new(0.0, 0.0), |a, &c| a * x + c);
    for _ in 0..2000 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex::new(1e-12, 1e-12);
            }
            let step = eval(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    z
}

/// One exact Durand–Kerner sweep, rounded to `bits`.
fn refine_exact(coeffs: &[BigRational], z: &mut [CQ], bits: u32) {
    let n = z.len();
    for i in 0..n {
        let mut den = CQ::new(BigRational::one(), BigRational::zero());
        for j in 0..n {
            if i != j {
                den *= &z[i] - &z[j];
            }
        }
        if den.norm_sqr().is_zero() {
            continue;
        }
        let step = eval_c(coeffs, &z[i]) / den;
        let next = &z[i] - step;
        z[i] = CQ::new(round_dyadic(&next.re, bits), round_dyadic(&next.im, bits));
    }
}

/// `√A + √R < 1`, exactly.
fn disc_inside(a: &BigRational, r: &BigRational) -> bool {
    let one = BigRational::one();
    let s = &one + r - a;
    s.is_positive() && r * BigRational::from_integer(4.into()) < &s * &s
}

/// `√A − √R > 1`, exactly.
fn disc_outside(a: &BigRational, r: &BigRational) -> bool {
    let one = BigRational::one();
    let s = a - &one - r;
    s.is_positive() && r * BigRational::from_integer(4.into()) < &s * &s
}

/// `√D > √R1 + √R2`, exactly.
fn discs_disjoint(d: &BigRational, r1: &BigRational, r2: &BigRational) -> bool {
    let s = d - r1 - r2;
    s.is_positive() && r1 * r2 * BigRational::from_integer(4.into()) < &s * &s
}

/// Tries to certify the unit-circle side of every root of monic `coeffs`
/// from the approximations `z`.
fn certify(coeffs: &[BigRational], z: &[CQ]) -> Option<Vec<UnitCircleSide>> {
    let n = z.len();
    let mut centers = Vec::with_capacity(n);
    let mut radii = Vec::with_capacity(n);
    let nm1 = BigRational::from_integer(BigInt::from(n as i64 - 1));
    for i in 0..n {
        let mut den = CQ::new(BigRational::one(), BigRational::zero());
        for j in 0..n {
            if i != j {
                den *= &z[i] - &z[j];
            }
        }
        if den.norm_sqr().is_zero() {
            return None;
        }
        let w = eval_c(coeffs, &z[i]) / den;
        radii.push(&nm1 * &nm1 * w.norm_sqr());
        centers.push(&z[i] - w);
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (&centers[i] - &centers[j]).norm_sqr();
            if !discs_disjoint(&d, &radii[i], &radii[j]) {
                return None;
            }
        }
    }
    let mut sides = Vec::with_capacity(n);
    for (c, r) in centers.iter().zip(&radii) {
        let a = c.norm_sqr();
        if disc_inside(&a, r) {
            sides.push(UnitCircleSide::Inside);
        } else if disc_outside(&a, r) {
            sides.push(UnitCircleSide::Outside);
        } else {
            return None;
        }
    }
    Some(sides)
}

/// Certified count of roots inside / outside the unit circle for a
/// squarefree polynomial with no roots on the circle.
pub fn unit_circle_split(p: &IntPolynomial) -> Result<(usize, usize), AlgebraError> {
    let n = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Ok((0, 0));
    }
    let lead = BigRational::from_integer(p.leading());
    let coeffs: Vec<BigRational> = p.coeffs().iter().map(|c| BigRational::from_integer(c.clone()) / &lead).collect();
    let approx: Vec<f64> = coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let mut z: Vec<CQ> = approximate_roots(&approx).into_iter().map(|c| CQ::new(to_q(c.re), to_q(c.im))).collect();
    let mut bits = 64;
    for _ in 0..12 {
        if let Some(sides) = certify(&coeffs, &z) {
            let inside = sides.iter().filter(|s| **s == UnitCircleSide::Inside).count();
            return Ok((inside, n - inside));
        }
        bits *= 2;
        for _ in 0..6 {
            refine_exact(&coeffs, &mut z, bits);
        }
    }
    Err(AlgebraError::CertificationFailed)
}

/// Decides the Pisot property of the dominant real root of `p`.
pub fn pisot_certificate(p: &IntPolynomial) -> Result<PisotCertificate, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let (sturm, iv) = largest_real_root(&p.to_rat()).ok_or(AlgebraError::NoRootAboveOne)?;
    let one = BigRational::one();
    if sturm.count(&one, &iv.hi) == 0 {
        return Err(AlgebraError::NoRootAboveOne);
    }
    let minimal = minimal_factor_at(p, &iv.lo, &iv.hi)?;
    let deg = minimal.degree().expect("nonzero");
    if deg == 1 {
        // An integer root (monic input) or a rational one; Pisot iff integral.
        let is_int = minimal.leading().is_one();
        return Ok(PisotCertificate {
            is_pisot: is_int,
            minimal_polynomial: minimal,
            self_reciprocal: false,
            inside: Some(0),
            outside: Some(1),
        });
    }
    let recip_gcd = minimal.to_rat().gcd(&minimal.reciprocal().to_rat());
    if recip_gcd.degree().unwrap_or(0) > 0 {
        // Irreducible and sharing a root with its reciprocal: roots are closed
        // under z ↦ 1/z, so only the quadratic λ, 1/λ can be Pisot.
        return Ok(PisotCertificate {
            is_pisot: deg == 2 && minimal.leading().is_one(),
            minimal_polynomial: minimal,
            self_reciprocal: true,
            inside: None,
            outside: None,
        });
    }
    let (inside, outside) = unit_circle_split(&minimal)?;
    Ok(PisotCertificate {
        is_pisot: minimal.leading().is_one() && outside == 1 && inside == deg - 1,
        minimal_polynomial: minimal,
        self_reciprocal: false,
        inside: Some(inside),
        outside: Some(outside),
    })
}

/// True iff the dominant real root `λ > 1` of `p` is a Pisot number.
pub fn is_pisot(p: &IntPolynomial) -> Result<bool, AlgebraError> {
    pisot_certificate(p).map(|c| c.is_pisot)
}

/// The irreducible factor of `p` with a root in `(lo, hi]`, where the
/// interval isolates one root of the squarefree part of `p`.
pub(crate) fn minimal_factor_at(
    p: &IntPolynomial,
    lo: &BigRational,
    hi: &BigRational,
) -> Result<IntPolynomial, AlgebraError> {
    let mut factors = factor(p)?;
    factors.dedup();
    factors
        .into_iter()
        .find(|f| super::roots::SturmChain::new(&f.to_rat()).count(lo, hi) == 1)
        .ok_or(AlgebraError::CertificationFailed)
}
