//! Arnoux–Rauzy generators and cyclically equivalent fixed-word prefixes.

use num_traits::ToPrimitive;

use super::{abelianize, Alphabet, Letter, Substitution, SubstitutionError, Word};

/// The generator `σ_i` on `{1..d}` (0-based `i`): `σ_i(j) = j i` for
/// `j ≠ i`, `σ_i(i) = i`.
pub fn sigma(i: Letter, d: usize) -> Result<Substitution, SubstitutionError> {
    if i >= d {
        return Err(SubstitutionError::ForeignLetter { index: i, size: d });
    }
    let images = (0..d).map(|j| Word(if j == i { vec![i] } else { vec![j, i] })).collect();
    Substitution::new(Alphabet::numeric(d)?, images)
}

/// `σ_w = σ_{w_1} ∘ ⋯ ∘ σ_{w_k}`, requiring every letter to occur in `w`.
pub fn ar_substitution(w: &Word, d: usize) -> Result<Substitution, SubstitutionError> {
    if d < 2 {
        return Err(SubstitutionError::AlphabetTooSmall);
    }
    w.check(d)?;
    let ab = abelianize(w, d);
    if ab.contains(&0) {
        return Err(SubstitutionError::NotArnouxRauzy(ab));
    }
    let mut acc = Substitution::identity(Alphabet::numeric(d)?);
    for &i in w.iter() {
        acc = acc.compose(&sigma(i, d)?)?;
    }
    Ok(acc)
}

/// Non-parallel cyclic equivalence between fixed-word prefixes:
/// `p_i = u·v` and `p_j = v·u` with `[u] ∦ [v]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicEquivalenceWitness {
    pub i: Letter,
    pub j: Letter,
    pub p_i: Word,
    pub p_j: Word,
    pub u: Word,
    pub v: Word,
}

impl CyclicEquivalenceWitness {
    /// Checks the defining identities literally.
    pub fn verify(&self, d: usize) -> bool {
        self.u.concat(&self.v) == self.p_i
            && self.v.concat(&self.u) == self.p_j
            && !self.u.is_empty()
            && !self.v.is_empty()
            && !parallel(&abelianize(&self.u, d), &abelianize(&self.v, d))
    }
}

/// Whether two integer vectors are linearly dependent.
pub fn parallel(a: &[i64], b: &[i64]) -> bool {
    (0..a.len())
        .all(|p| (p + 1..a.len()).all(|q| i128::from(a[p]) * i128::from(b[q]) == i128::from(a[q]) * i128::from(b[p])))
}

/// Whether `b` is a rotation of `a` (conjugate words, trivial rotation allowed).
pub fn is_conjugate(a: &[Letter], b: &[Letter]) -> bool {
    a.len() == b.len() && (a.is_empty() || !rotations(a, b).is_empty())
}

/// All `k` in `0..n` with `b = a[k..] · a[..k]` (KMP over `a·a`).
fn rotations(a: &[Letter], b: &[Letter]) -> Vec<usize> {
    let n = a.len();
    if n == 0 || b.len() != n {
        return Vec::new();
    }
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for q in 1..n {
        while k > 0 && b[q] != b[k] {
            k = fail[k - 1];
        }
        if b[q] == b[k] {
            k += 1;
        }
        fail[q] = k;
    }
    let mut out = Vec::new();
    let mut m = 0;
    for t in 0..2 * n - 1 {
        let c = a[t % n];
        while m > 0 && c != b[m] {
            m = fail[m - 1];
        }
        if c == b[m] {
            m += 1;
        }
        if m == n {
            out.push(t + 1 - n);
            m = fail[m - 1];
        }
    }
    out
}

/// `|φ³(shortest image)| · d`, saturating.
pub fn default_prefix_bound(s: &Substitution) -> usize {
    let d = s.size();
    let shortest = (0..d).min_by_key(|&a| s.image(a).len()).unwrap_or(0);
    let mut counts: Vec<num_bigint::BigInt> = abelianize(s.image(shortest), d).into_iter().map(Into::into).collect();
    for _ in 0..3 {
        counts = s.incidence().mul_vec(&counts);
    }
    let total: num_bigint::BigInt = counts.iter().sum();
    total.to_usize().unwrap_or(usize::MAX / d.max(1)).saturating_mul(d)
}

/// For each pair `i < j`, the shortest prefixes `P_i`, `P_j` of the fixed
/// words with equal abelianization that are non-parallel cyclic rotations
/// of each other, with the shortest such `u`.
pub fn cyclically_equivalent_prefixes(
    s: &Substitution,
    bound: Option<usize>,
) -> Result<Vec<CyclicEquivalenceWitness>, SubstitutionError> {
    let d = s.size();
    let bound = bound.unwrap_or_else(|| default_prefix_bound(s));
    let prefixes = (0..d).map(|a| s.fixed_point_prefix(a, bound)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            let w =
                find_witness(&prefixes[i], &prefixes[j], d).ok_or_else(|| SubstitutionError::SearchBoundExceeded {
                    i: s.alphabet().name(i).to_string(),
                    j: s.alphabet().name(j).to_string(),
                    bound,
                })?;
            out.push(CyclicEquivalenceWitness { i, j, ..w });
        }
    }
    Ok(out)
}

fn find_witness(pi: &[Letter], pj: &[Letter], d: usize) -> Option<CyclicEquivalenceWitness> {
    let mut ai = vec![0i64; d];
    let mut aj = vec![0i64; d];
    for n in 1..=pi.len().min(pj.len()) {
        ai[pi[n - 1]] += 1;
        aj[pj[n - 1]] += 1;
        if ai != aj {
            continue;
        }
        let (a, b) = (&pi[..n], &pj[..n]);
        for k in rotations(a, b) {
            if k == 0 {
                continue;
            }
            let (u, v) = (&a[..k], &a[k..]);
            if !parallel(&abelianize(u, d), &abelianize(v, d)) {
                return Some(CyclicEquivalenceWitness {
                    i: 0,
                    j: 0,
                    p_i: Word(a.to_vec()),
                    p_j: Word(b.to_vec()),
                    u: Word(u.to_vec()),
                    v: Word(v.to_vec()),
                });
            }
        }
    }
    None
}
