//! The number field `Q(λ)` for a real algebraic number `λ`, with the real
//! embedding fixed by an isolating interval.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{format_in_var, IntPolynomial, RatPoly};
use super::roots::{RootInterval, SturmChain};
use super::AlgebraError;

/// `Q[x]/(p)` with `p` monic irreducible, embedded in `R` by a chosen root.
#[derive(Debug)]
pub struct NumberField {
    minpoly: IntPolynomial,
    modulus: RatPoly,
    sturm: Option<SturmChain>,
    /// Isolating interval of the embedded root, or the root itself in degree 1.
    embedding: RootInterval,
}

impl NumberField {
    /// Builds the field for the root of irreducible `minpoly` in `(lo, hi]`.
    /// Irreducibility is the caller's responsibility.
    pub fn new(minpoly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Arc<Self>, AlgebraError> {
        let deg = minpoly.degree().ok_or(AlgebraError::ZeroPolynomial)?;
        if deg == 0 {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let minpoly = minpoly.primitive_part();
        let modulus = minpoly.to_rat().monic();
        if deg == 1 {
            let root = -modulus.coeff(0);
            return Ok(Arc::new(NumberField {
                minpoly,
                modulus,
                sturm: None,
                embedding: RootInterval { lo: root.clone(), hi: root },
            }));
        }
        let sturm = SturmChain::new(&modulus);
        if sturm.count(&lo, &hi) != 1 {
            return Err(AlgebraError::NotIsolating);
        }
        Ok(Arc::new(NumberField { minpoly, modulus, sturm: Some(sturm), embedding: RootInterval { lo, hi } }))
    }

    /// The field `Q` itself (λ = the given rational).
    pub fn rational(value: BigRational) -> Arc<Self> {
        let poly = RatPoly::new(vec![-value.clone(), BigRational::one()]);
        NumberField {
            minpoly: poly.to_primitive_int(),
            modulus: poly,
            sturm: None,
            embedding: RootInterval { lo: value.clone(), hi: value },
        }
        .into()
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonzero modulus")
    }

    pub fn minimal_polynomial(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn isolating_interval(&self) -> &RootInterval {
        &self.embedding
    }

    /// Same defining polynomial and the same embedded root.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        if Arc::ptr_eq(self, other) {
            return true;
        }
        if self.minpoly != other.minpoly {
            return false;
        }
        let (a, b) = (&self.embedding, &other.embedding);
        if self.degree() == 1 {
            return a.lo == b.lo;
        }
        // Isolating intervals of one polynomial meet iff they hold the same root.
        let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
        let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
        lo < hi && self.sturm.as_ref().expect("degree ≥ 2").count(lo, hi) == 1
    }

    fn reduce(&self, p: &RatPoly) -> Vec<BigRational> {
        let r = p.rem(&self.modulus);
        let mut c = r.into_coeffs();
        c.resize(self.degree(), BigRational::zero());
        c
    }

    /// Sign of `g(λ)` for `g` of degree below the field degree.
    fn sign_of(&self, g: &RatPoly) -> Ordering {
        if g.is_zero() {
            return Ordering::Equal;
        }
        let Some(sturm) = &self.sturm else {
            return g.eval(&self.embedding.lo).cmp(&BigRational::zero());
        };
        if g.degree() == Some(0) {
            return g.coeff(0).cmp(&BigRational::zero());
        }
        let gs = SturmChain::new(g);
        let mut iv = self.embedding.clone();
        loop {
            let at_lo = g.eval(&iv.lo);
            if !at_lo.is_zero() && gs.count(&iv.lo, &iv.hi) == 0 {
                return at_lo.cmp(&BigRational::zero());
            }
            iv.bisect(sturm);
        }
    }

    /// Rational interval of width below `eps` around the embedded root.
    pub fn root_interval_within(&self, eps: &BigRational) -> RootInterval {
        let mut iv = self.embedding.clone();
        if let Some(s) = &self.sturm {
            iv.refine_below(s, eps);
        }
        iv
    }
}

/// Element of a [`NumberField`], as coordinates in the power basis `1, λ, λ², …`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        let c = field.reduce(&RatPoly::new(coords));
        FieldElement { field: field.clone(), coords: c }
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        Self::from_coords(field, vec![q])
    }

    pub fn from_int(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_coords(field, Vec::new())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_int(field, 1)
    }

    /// The generator `λ`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coords(field, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    fn poly(&self) -> RatPoly {
        RatPoly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The element as a rational, when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coords.iter().skip(1).all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check(&self, other: &Self) {
        assert!(self.field.same_as(&other.field), "arithmetic across different number fields");
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s, _) = self.poly().ext_gcd(&self.field.modulus);
        debug_assert_eq!(g.degree(), Some(0));
        Some(Self::from_coords(&self.field, s.into_coeffs()))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(&self.field);
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * q).collect() }
    }

    /// Sign in the real embedding.
    pub fn signum(&self) -> Ordering {
        self.field.sign_of(&self.poly())
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Real value to double precision (display only).
    pub fn to_f64(&self) -> f64 {
        let iv = self.field.root_interval_within(&BigRational::new(1.into(), BigInt::from(1u64) << 80));
        self.poly().eval(&iv.midpoint()).to_f64().unwrap_or(f64::NAN)
    }

    /// Total order in the real embedding.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.same_as(&other.field) && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement {
            field: self.field.clone(),
            coords: self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect(),
        }
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check(rhs);
        FieldElement::from_coords(&self.field, (&self.poly() * &rhs.poly()).into_coeffs())
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_in_var(&self.coords, "λ"))
    }
}

/// Dimension over `Q` of the span of `xs` (all in one field).
pub fn q_linear_rank_field(xs: &[FieldElement]) -> Result<usize, AlgebraError> {
    if let Some(first) = xs.first() {
        if xs.iter().any(|x| !x.field.same_as(&first.field)) {
            return Err(AlgebraError::MixedFields);
        }
    }
    let rows: Vec<Vec<BigRational>> = xs.iter().map(|x| x.coords.clone()).collect();
    Ok(super::matrix::rational_rank(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> Arc<NumberField> {
        NumberField::new(
            IntPolynomial::from_i64s(&[-1, -1, 1]),
            BigRational::from_integer(1.into()),
            BigRational::from_integer(2.into()),
        )
        .unwrap()
    }

    #[test]
    fn generator_satisfies_minimal_polynomial() {
        let k = golden();
        let l = FieldElement::generator(&k);
        let lhs = &l * &l;
        let rhs = &l + &FieldElement::one(&k);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_round_trips() {
        let k = golden();
        let x = &FieldElement::generator(&k) + &FieldElement::from_int(&k, 3);
        let y = x.inverse().unwrap();
        assert_eq!(&x * &y, FieldElement::one(&k));
        assert!(FieldElement::zero(&k).inverse().is_none());
    }

    #[test]
    fn signs_in_the_real_embedding() {
        let k = golden();
        let l = FieldElement::generator(&k);
        let one = FieldElement::one(&k);
        // λ − 1 ≈ 0.618 > 0, λ − 2 < 0, 5λ − 8 ≈ 0.09 > 0, 13λ − 21 ≈ 0.034 > 0, 21λ − 34 < 0
        assert!((&l - &one).is_positive());
        assert_eq!((&l - &FieldElement::from_int(&k, 2)).signum(), Ordering::Less);
        let t = &(&l * &FieldElement::from_int(&k, 13)) - &FieldElement::from_int(&k, 21);
        assert!(t.is_positive());
        let u = &(&l * &FieldElement::from_int(&k, 21)) - &FieldElement::from_int(&k, 34);
        assert_eq!(u.signum(), Ordering::Less);
        assert!(((l.to_f64()) - 1.618_033_988_75).abs() < 1e-9);
    }

    #[test]
    fn rank_examples() {
        let k = golden();
        let l = FieldElement::generator(&k);
        assert_eq!(q_linear_rank_field(&[FieldElement::one(&k), l]).unwrap(), 2);
        assert_eq!(q_linear_rank_field(&[FieldElement::one(&k), FieldElement::from_int(&k, 2)]).unwrap(), 1);
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = FieldElement::one(&golden());
        let q = NumberField::rational(BigRational::from_integer(2.into()));
        let b = FieldElement::one(&q);
        assert!(matches!(q_linear_rank_field(&[a, b]), Err(AlgebraError::MixedFields)));
    }

    #[test]
    fn separately_built_fields_agree() {
        let a = FieldElement::generator(&golden());
        let b = FieldElement::generator(&golden());
        assert_eq!(a, b);
    }

    #[test]
    fn rational_field() {
        let q = NumberField::rational(BigRational::from_integer(2.into()));
        let l = FieldElement::generator(&q);
        assert_eq!(l.as_rational(), Some(BigRational::from_integer(2.into())));
        assert!(l.is_positive());
    }
}
