//! Perron–Frobenius data over the number field of the dominant eigenvalue.

use std::sync::Arc;

use num_rational::BigRational;

use super::field::{FieldElement, NumberField};
use super::matrix::IntMatrix;
use super::pisot::minimal_factor_at;
use super::poly::IntPolynomial;
use super::roots::largest_real_root;
use super::AlgebraError;

/// Dominant eigenvalue and left eigenvector of a primitive matrix.
#[derive(Clone, Debug)]
pub struct PerronData {
    pub char_poly: IntPolynomial,
    pub minimal_polynomial: IntPolynomial,
    pub field: Arc<NumberField>,
    pub lambda: FieldElement,
    /// Left eigenvector with `omega[0] = 1`; all entries positive.
    pub omega: Vec<FieldElement>,
}

impl PerronData {
    /// `⟨counts, ω⟩`: the length of any word with these letter counts.
    pub fn pairing(&self, counts: &[i64]) -> FieldElement {
        counts
            .iter()
            .zip(&self.omega)
            .fold(FieldElement::zero(&self.field), |acc, (&c, w)| &acc + &w.scale(&BigRational::from_integer(c.into())))
    }
}

/// Computes `λ` and `ω` with `ω·M = λ·ω` exactly.
pub fn perron_data(m: &IntMatrix) -> Result<PerronData, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    if !m.is_primitive() {
        return Err(AlgebraError::NotPrimitive);
    }
    let char_poly = m.char_poly()?;
    let (_, iv) = largest_real_root(&char_poly.to_rat()).ok_or(AlgebraError::NoRootAboveOne)?;
    let minimal = minimal_factor_at(&char_poly, &iv.lo, &iv.hi)?;
    let field = NumberField::new(minimal.clone(), iv.lo, iv.hi)?;
    let lambda = FieldElement::generator(&field);
    let omega = left_kernel_vector(m, &lambda)?;
    if !omega.iter().all(FieldElement::is_positive) {
        return Err(AlgebraError::CertificationFailed);
    }
    Ok(PerronData { char_poly, minimal_polynomial: minimal, field, lambda, omega })
}

/// Solves `(Mᵀ − λI) x = 0` by Gaussian elimination in `Q(λ)`, normalized to `x_0 = 1`.
fn left_kernel_vector(m: &IntMatrix, lambda: &FieldElement) -> Result<Vec<FieldElement>, AlgebraError> {
    let n = m.rows();
    let k = lambda.field();
    let mut a: Vec<Vec<FieldElement>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = FieldElement::from_rational(k, BigRational::from_integer(m.get(j, i).clone()));
                    if i == j {
                        &e - lambda
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inverse().expect("nonzero pivot");
        a[row] = a[row].iter().map(|x| x * &inv).collect();
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (x, y) in r.iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return Err(AlgebraError::CertificationFailed);
    }
    let f = free[0];
    let mut x = vec![FieldElement::zero(k); n];
    x[f] = FieldElement::one(k);
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = -&a[r][f];
    }
    let inv = x[0].inverse().ok_or(AlgebraError::CertificationFailed)?;
    Ok(x.iter().map(|e| e * &inv).collect())
}
