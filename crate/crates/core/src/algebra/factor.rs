//! Factorization over `Q` by the rational root test and Kronecker's method.
//!
//! Adequate for the small degrees met by incidence matrices; the search is
//! exponential in the degree.

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{IntPolynomial, RatPoly};
use super::AlgebraError;

/// Outcome of an irreducibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    /// Carries one nontrivial factor.
    Reducible(IntPolynomial),
}

impl Irreducibility {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Irreducibility::Irreducible)
    }
}

/// Positive divisors of a nonzero integer, ascending. Trial division.
fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// A linear factor `b·x − a` for a rational root `a/b` of `p`, if any.
fn rational_root_factor(p: &IntPolynomial) -> Option<IntPolynomial> {
    let c0 = p.coeff(0);
    if c0.is_zero() {
        return Some(IntPolynomial::x());
    }
    let lead = p.leading();
    for b in positive_divisors(&lead) {
        for a in positive_divisors(&c0) {
            for a in [a.clone(), -a] {
                if !a.gcd(&b).is_one() {
                    continue;
                }
                let r = BigRational::new(a.clone(), b.clone());
                if p.eval(&r).is_zero() {
                    return Some(IntPolynomial::new(vec![-a, b.clone()]));
                }
            }
        }
    }
    None
}

/// Lagrange interpolation through `(x_i, y_i)`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = RatPoly::constant(BigRational::from_integer(yi.clone()));
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = BigRational::from_integer(xi - xj);
            let lin = RatPoly::new(vec![BigRational::from_integer(-xj.clone()) / &denom, denom.recip()]);
            basis = &basis * &lin;
        }
        acc = &acc + &basis;
    }
    acc
}

/// Kronecker search for a factor of exact degree `d` of a primitive `p`
/// without rational roots.
fn kronecker_factor(p: &IntPolynomial, d: usize) -> Option<IntPolynomial> {
    // Evaluation points with few divisors keep the search small.
    let mut candidates: Vec<(usize, BigInt, BigInt)> = (0..=24i64)
        .flat_map(|k| if k == 0 { vec![0] } else { vec![k, -k] })
        .map(BigInt::from)
        .map(|x| {
            let y = p.eval_int(&x);
            (y.abs().to_f64().map_or(usize::MAX, |f| f.log2() as usize), x, y)
        })
        .filter(|(_, _, y)| !y.is_zero())
        .collect();
    candidates.sort_by_key(|(bits, _, _)| *bits);
    let mut points: Vec<(BigInt, BigInt, Vec<BigInt>)> = candidates
        .into_iter()
        .take(d + 1)
        .map(|(_, x, y)| {
            let divs = positive_divisors(&y);
            (x, y, divs)
        })
        .collect();
    if points.len() < d + 1 {
        return None;
    }
    points.sort_by_key(|(_, _, divs)| divs.len());
    let xs: Vec<BigInt> = points.iter().map(|(x, _, _)| x.clone()).collect();
    // Choice lists: the first value is fixed positive to kill the unit ambiguity.
    let choices: Vec<Vec<BigInt>> = points
        .iter()
        .enumerate()
        .map(
            |(i, (_, _, divs))| {
                if i == 0 {
                    divs.clone()
                } else {
                    divs.iter().flat_map(|q| [q.clone(), -q.clone()]).collect()
                }
            },
        )
        .collect();
    let mut idx = vec![0usize; choices.len()];
    loop {
        let ys: Vec<BigInt> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
        let g = interpolate(&xs, &ys);
        if g.degree() == Some(d) {
            if let Some(gi) = g.to_int_exact() {
                if p.div_exact(&gi).is_some() {
                    return Some(gi.primitive_part());
                }
            }
        }
        // Odometer increment.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// One nontrivial factor of a primitive polynomial of degree ≥ 2, if reducible.
fn find_factor(p: &IntPolynomial) -> Option<IntPolynomial> {
    let n = p.degree()?;
    if n < 2 {
        return None;
    }
    if let Some(f) = rational_root_factor(p) {
        return Some(f);
    }
    (2..=n / 2).find_map(|d| kronecker_factor(p, d))
}

/// Decides irreducibility over `Q`; constants are units, hence not irreducible.
pub fn is_irreducible_over_q(p: &IntPolynomial) -> Result<Irreducibility, AlgebraError> {
    match p.degree() {
        None => Err(AlgebraError::ZeroPolynomial),
        Some(0) => Ok(Irreducibility::Reducible(p.clone())),
        Some(_) => Ok(match find_factor(&p.primitive_part()) {
            Some(f) => Irreducibility::Reducible(f),
            None => Irreducibility::Irreducible,
        }),
    }
}

/// Irreducible primitive factors (positive leading coefficients), with
/// multiplicity, of a nonzero polynomial. The content is dropped.
pub fn factor(p: &IntPolynomial) -> Result<Vec<IntPolynomial>, AlgebraError> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    let mut stack = vec![p.primitive_part()];
    while let Some(q) = stack.pop() {
        if q.degree().unwrap_or(0) == 0 {
            continue;
        }
        match find_factor(&q) {
            None => out.push(q),
            Some(f) => {
                let rest = q.div_exact(&f).expect("factor divides");
                stack.push(f.primitive_part());
                stack.push(rest.primitive_part());
            }
        }
    }
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(out)
}
