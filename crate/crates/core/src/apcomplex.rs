//! The collared Anderson–Putnam complex of a one-dimensional substitution.
//!
//! In dimension one the complex is a graph: one edge per collared letter,
//! endpoints glued along admissible adjacencies. Its first homology, the map
//! induced by the substitution, and the displacement `l` give the group of
//! generalized return vectors `GR = l(H1)`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{
    hermite_normal_form, hnf_contains, perron_data, AlgebraError, FieldElement, IntMatrix, NumberField, PerronData,
};
use crate::substitution::{abelianize, factor_language, Alphabet, Letter, Substitution, SubstitutionError, Word};

/// Default word length for sampling return vectors.
pub const DEFAULT_RETURN_DEPTH: usize = 8;
/// Default number of collaring passes.
pub const DEFAULT_COLLAR_PASSES: usize = 1;

#[derive(Debug, Error)]
pub enum ApError {
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("image of a basis cycle is not a combination of basis cycles")]
    ReExpression,
    #[error("edge endpoint {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("chain has {got} entries, graph has {expected} edges")]
    ChainLength { expected: usize, got: usize },
    #[error("integer overflow in cycle arithmetic")]
    Overflow,
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A letter together with one letter of context on each side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CollaredLetter {
    pub left: Letter,
    pub core: Letter,
    pub right: Letter,
}

/// A substitution on collared letters, remembering how to forget collars.
#[derive(Clone, Debug)]
pub struct Collared {
    pub original: Substitution,
    pub perron: PerronData,
    /// Letters of the last pass, over the previous pass's alphabet; empty
    /// when no collaring was applied.
    pub letters: Vec<CollaredLetter>,
    pub substitution: Substitution,
    /// Original letter underlying each collared letter.
    pub forget: Vec<Letter>,
    pub passes: usize,
}

fn collar_name(a: &Alphabet, c: CollaredLetter) -> String {
    format!("{}[{}]{}", a.name(c.left), a.name(c.core), a.name(c.right))
}

/// One collaring pass: letters are 3-factors, images keep their context.
fn collar_once(s: &Substitution) -> Result<(Vec<CollaredLetter>, Substitution), ApError> {
    let letters: Vec<CollaredLetter> =
        factor_language(s, 3)?.into_iter().map(|w| CollaredLetter { left: w[0], core: w[1], right: w[2] }).collect();
    let index: HashMap<CollaredLetter, Letter> = letters.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let alphabet = Alphabet::new(letters.iter().map(|&c| collar_name(s.alphabet(), c)))?;
    let mut images = Vec::with_capacity(letters.len());
    for c in &letters {
        let before = *s.image(c.left).last().expect("nonempty image");
        let after = s.image(c.right)[0];
        let img = s.image(c.core);
        let mut out = Vec::with_capacity(img.len());
        for k in 0..img.len() {
            let left = if k == 0 { before } else { img[k - 1] };
            let right = if k + 1 == img.len() { after } else { img[k + 1] };
            let key = CollaredLetter { left, core: img[k], right };
            // The image of a legal 3-block is legal, so the key exists.
            out.push(*index.get(&key).ok_or(SubstitutionError::NotPrimitive)?);
        }
        images.push(Word(out));
    }
    Ok((letters, Substitution::new(alphabet, images)?))
}

/// Collars `s` the given number of times and builds the Anderson–Putnam
/// graph. Zero passes uses the tiles themselves.
pub fn collar(s: &Substitution, passes: usize) -> Result<(Collared, APGraph), ApError> {
    if !s.is_primitive() {
        return Err(ApError::NotPrimitive);
    }
    let perron = perron_data(s.incidence())?;
    let mut current = s.clone();
    let mut forget: Vec<Letter> = (0..s.size()).collect();
    let mut letters = Vec::new();
    for _ in 0..passes {
        let (ls, next) = collar_once(&current)?;
        forget = ls.iter().map(|c| forget[c.core]).collect();
        letters = ls;
        current = next;
    }
    let collared = Collared { original: s.clone(), perron, letters, substitution: current, forget, passes };
    let graph = ap_graph(&collared)?;
    Ok((collared, graph))
}

/// Edge `e` runs from vertex `source[e]` to `target[e]`.
#[derive(Clone, Debug)]
pub struct APGraph {
    pub vertex_count: usize,
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub lengths: Vec<FieldElement>,
    field: Arc<NumberField>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Glues the end of `e1` to the start of `e2` whenever `e1 e2` is a legal
/// 2-factor of the collared language, then closes transitively.
fn ap_graph(c: &Collared) -> Result<APGraph, ApError> {
    let e = c.substitution.size();
    // Endpoint 2i is the start of edge i, 2i + 1 its end.
    let mut parent: Vec<usize> = (0..2 * e).collect();
    for w in factor_language(&c.substitution, 2)? {
        let (a, b) = (find(&mut parent, 2 * w[0] + 1), find(&mut parent, 2 * w[1]));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut label = HashMap::new();
    let mut vertex = vec![0; 2 * e];
    for (p, slot) in vertex.iter_mut().enumerate() {
        let r = find(&mut parent, p);
        let next = label.len();
        *slot = *label.entry(r).or_insert(next);
    }
    let lengths = c.forget.iter().map(|&a| c.perron.omega[a].clone()).collect();
    Ok(APGraph {
        vertex_count: label.len(),
        source: (0..e).map(|i| vertex[2 * i]).collect(),
        target: (0..e).map(|i| vertex[2 * i + 1]).collect(),
        lengths,
        field: c.perron.field.clone(),
    })
}

impl APGraph {
    /// Graph from explicit `(source, target, length)` edges.
    pub fn from_edges(
        vertex_count: usize,
        edges: Vec<(usize, usize, FieldElement)>,
        field: Arc<NumberField>,
    ) -> Result<Self, ApError> {
        let mut g = APGraph { vertex_count, source: vec![], target: vec![], lengths: vec![], field };
        for (s, t, l) in edges {
            for v in [s, t] {
                if v >= vertex_count {
                    return Err(ApError::VertexOutOfRange { vertex: v, count: vertex_count });
                }
            }
            g.source.push(s);
            g.target.push(t);
            g.lengths.push(l);
        }
        Ok(g)
    }

    pub fn edge_count(&self) -> usize {
        self.source.len()
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn component_count(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.vertex_count).collect();
        let mut count = self.vertex_count;
        for (&s, &t) in self.source.iter().zip(&self.target) {
            let (a, b) = (find(&mut parent, s), find(&mut parent, t));
            if a != b {
                parent[a] = b;
                count -= 1;
            }
        }
        count
    }

    /// `∂z` as a vertex vector.
    pub fn boundary(&self, z: &[i64]) -> Result<Vec<i64>, ApError> {
        self.check_len(z)?;
        let mut b = vec![0i64; self.vertex_count];
        for (e, &k) in z.iter().enumerate() {
            b[self.target[e]] = b[self.target[e]].checked_add(k).ok_or(ApError::Overflow)?;
            b[self.source[e]] = b[self.source[e]].checked_sub(k).ok_or(ApError::Overflow)?;
        }
        Ok(b)
    }

    pub fn is_cycle(&self, z: &[i64]) -> Result<bool, ApError> {
        Ok(self.boundary(z)?.iter().all(|&x| x == 0))
    }

    fn check_len(&self, z: &[i64]) -> Result<(), ApError> {
        if z.len() != self.edge_count() {
            return Err(ApError::ChainLength { expected: self.edge_count(), got: z.len() });
        }
        Ok(())
    }
}

/// Integer cycles forming a basis of `ker ∂`, one per non-tree edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub cycles: Vec<Vec<i64>>,
    /// The non-tree edge owning each cycle; cycle `i` has coefficient 1
    /// there and 0 on every other non-tree edge.
    pub non_tree: Vec<usize>,
}

impl CycleBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }

    /// Coordinates of a cycle in this basis.
    pub fn coordinates(&self, z: &[i64]) -> Vec<i64> {
        self.non_tree.iter().map(|&e| z[e]).collect()
    }

    /// `Σ k_i · cycle_i`.
    pub fn combine(&self, ks: &[i64]) -> Result<Vec<i64>, ApError> {
        let width = self.cycles.first().map_or(0, Vec::len);
        let mut z = vec![0i64; width];
        for (c, &k) in self.cycles.iter().zip(ks) {
            for (x, &y) in z.iter_mut().zip(c) {
                *x = y.checked_mul(k).and_then(|p| x.checked_add(p)).ok_or(ApError::Overflow)?;
            }
        }
        Ok(z)
    }
}

/// Fundamental cycles of a breadth-first spanning forest.
pub fn h1_data(g: &APGraph) -> CycleBasis {
    let n = g.vertex_count;
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in 0..g.edge_count() {
        incident[g.source[e]].push(e);
        incident[g.target[e]].push(e);
    }
    // path[v]: signed edge vector of the tree path from the root to v.
    let mut path: Vec<Option<Vec<i64>>> = vec![None; n];
    let mut tree = vec![false; g.edge_count()];
    for root in 0..n {
        if path[root].is_some() {
            continue;
        }
        path[root] = Some(vec![0; g.edge_count()]);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &incident[v] {
                let (w, sign) = if g.source[e] == v { (g.target[e], 1) } else { (g.source[e], -1) };
                if path[w].is_none() {
                    let mut p = path[v].clone().expect("visited");
                    p[e] += sign;
                    path[w] = Some(p);
                    tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    let mut non_tree = Vec::new();
    for e in (0..g.edge_count()).filter(|&e| !tree[e]) {
        let ps = path[g.source[e]].as_ref().expect("visited");
        let pt = path[g.target[e]].as_ref().expect("visited");
        let mut z: Vec<i64> = ps.iter().zip(pt).map(|(a, b)| a - b).collect();
        z[e] += 1;
        cycles.push(z);
        non_tree.push(e);
    }
    CycleBasis { cycles, non_tree }
}

/// Matrix of `f_*` on a cycle basis; column `j` holds the coordinates of
/// the image of cycle `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedMap {
    pub matrix: IntMatrix,
}

impl InducedMap {
    /// Product of the nonzero eigenvalues with multiplicity: `(-1)^m q(0)`
    /// where `char_poly = x^k q(x)` with `q(0) ≠ 0` and `m = deg q`.
    pub fn nonzero_eigenvalue_product(&self) -> Result<BigInt, ApError> {
        if self.matrix.rows() == 0 {
            return Ok(BigInt::one());
        }
        let p = self.matrix.char_poly()?;
        let k = p.coeffs().iter().position(|c| !c.is_zero()).expect("monic");
        let m = p.degree().expect("nonzero") - k;
        let q0 = p.coeff(k);
        Ok(if m % 2 == 0 { q0 } else { -q0 })
    }
}

/// Image of a chain under the collared substitution.
pub fn push_forward(c: &Collared, z: &[i64]) -> Result<Vec<i64>, ApError> {
    let mut out = vec![0i64; c.substitution.size()];
    for (e, &k) in z.iter().enumerate() {
        if k == 0 {
            continue;
        }
        for &f in c.substitution.image(e).iter() {
            out[f] = out[f].checked_add(k).ok_or(ApError::Overflow)?;
        }
    }
    Ok(out)
}

pub fn induced_f_star(c: &Collared, g: &APGraph, basis: &CycleBasis) -> Result<InducedMap, ApError> {
    let r = basis.rank();
    let mut m = IntMatrix::zeros(r, r);
    for (j, z) in basis.cycles.iter().enumerate() {
        let img = push_forward(c, z)?;
        if !g.is_cycle(&img)? {
            return Err(ApError::ReExpression);
        }
        let coords = basis.coordinates(&img);
        if basis.combine(&coords)? != img {
            return Err(ApError::ReExpression);
        }
        for (i, k) in coords.into_iter().enumerate() {
            m.set(i, j, BigInt::from(k));
        }
    }
    Ok(InducedMap { matrix: m })
}

/// `l(z) = Σ z_e · length(e)` for a cycle `z`.
pub fn displacement(g: &APGraph, z: &[i64]) -> Result<FieldElement, ApError> {
    if !g.is_cycle(z)? {
        return Err(ApError::NotACycle);
    }
    Ok(z.iter()
        .zip(&g.lengths)
        .fold(FieldElement::zero(&g.field), |acc, (&k, l)| &acc + &l.scale(&BigRational::from_integer(k.into()))))
}

/// A finitely generated subgroup of `Q(λ)`, held as an integer lattice of
/// power-basis coordinates scaled by a common denominator.
#[derive(Clone, Debug)]
pub struct ReturnModule {
    pub generators: Vec<FieldElement>,
    field: Arc<NumberField>,
    pub denominator: BigInt,
    pub hnf: Vec<Vec<BigInt>>,
}

impl ReturnModule {
    pub fn new(field: &Arc<NumberField>, generators: Vec<FieldElement>) -> Self {
        let denominator = generators
            .iter()
            .flat_map(|g| g.coords().iter().map(|c| c.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let rows: Vec<Vec<BigInt>> = generators.iter().map(|g| scaled(g, &denominator, field.degree())).collect();
        let hnf = hermite_normal_form(&rows);
        ReturnModule { generators, field: field.clone(), denominator, hnf }
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let n = self.field.degree();
        let coords: Vec<BigRational> = padded(x, n);
        let d = BigRational::from_integer(self.denominator.clone());
        let mut v = Vec::with_capacity(n);
        for c in coords {
            let y = c * &d;
            if !y.is_integer() {
                return false;
            }
            v.push(y.to_integer());
        }
        if self.hnf.is_empty() {
            return v.iter().all(Zero::is_zero);
        }
        hnf_contains(&self.hnf, &v)
    }

    /// A `Z`-basis of the module.
    pub fn basis(&self) -> Vec<FieldElement> {
        let d = BigRational::from_integer(self.denominator.clone());
        self.hnf
            .iter()
            .map(|row| {
                let coords = row.iter().map(|x| BigRational::from_integer(x.clone()) / &d).collect();
                FieldElement::from_coords(&self.field, coords)
            })
            .collect()
    }

    /// `Z·b1 + Z·b2 + …`, or `0` for the trivial module.
    pub fn describe(&self) -> String {
        let basis = self.basis();
        if basis.is_empty() {
            return "0".to_string();
        }
        basis.iter().map(|b| format!("Z·({b})")).collect::<Vec<_>>().join(" + ")
    }
}

fn padded(x: &FieldElement, n: usize) -> Vec<BigRational> {
    let mut c = x.coords().to_vec();
    c.resize(n, BigRational::zero());
    c
}

fn scaled(x: &FieldElement, d: &BigInt, n: usize) -> Vec<BigInt> {
    let d = BigRational::from_integer(d.clone());
    padded(x, n).into_iter().map(|c| (c * &d).to_integer()).collect()
}

/// `GR = l(H1)`, generated by the displacements of the basis cycles.
pub fn gr_group(g: &APGraph, basis: &CycleBasis) -> Result<ReturnModule, ApError> {
    let gens = basis.cycles.iter().map(|z| displacement(g, z)).collect::<Result<Vec<_>, _>>()?;
    Ok(ReturnModule::new(&g.field, gens))
}

/// Distances between two occurrences of the same tile inside legal words
/// of length `depth`, deduplicated and sorted by size. With `passes > 0`
/// the tiles are compared with `passes` letters of context on each side.
pub fn return_vectors_sample(s: &Substitution, depth: usize, passes: usize) -> Result<Vec<FieldElement>, ApError> {
    if !s.is_primitive() {
        return Err(ApError::NotPrimitive);
    }
    let pd = perron_data(s.incidence())?;
    let d = s.size();
    let p = passes;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    if depth < 2 * p + 2 {
        return Ok(out);
    }
    for w in factor_language(s, depth)? {
        let block = |i: usize| &w[i - p..=i + p];
        for i in p..w.len() - p {
            for j in i + 1..w.len() - p {
                if block(i) == block(j) {
                    let v = pd.pairing(&abelianize(&w[i..j], d));
                    if seen.insert(v.clone()) {
                        out.push(v);
                    }
                }
            }
        }
    }
    out.sort_by(FieldElement::cmp_real);
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct GrFailure {
    pub return_vector: FieldElement,
    pub k: i64,
    /// `λ^k · v`, which lies outside `GR`.
    pub value: FieldElement,
}

#[derive(Clone, Debug)]
pub struct GrReport {
    pub collared_letters: usize,
    pub vertices: usize,
    pub h1_rank: usize,
    pub gr: ReturnModule,
    pub f_star: InducedMap,
    pub eigenvalue_product: BigInt,
    pub samples: Vec<FieldElement>,
    pub k_max: u32,
    pub failures: Vec<GrFailure>,
}

impl GrReport {
    /// `|Π nonzero eigenvalues of f_*| = 1`.
    pub fn unimodular(&self) -> bool {
        self.eigenvalue_product.abs().is_one()
    }
}

/// Tests `λ^k · v ∈ GR` for sampled returns `v` and `|k| ≤ k_max`.
pub fn check_gr_vs_returns(s: &Substitution, k_max: u32, depth: usize, passes: usize) -> Result<GrReport, ApError> {
    let (c, g) = collar(s, passes)?;
    let basis = h1_data(&g);
    let gr = gr_group(&g, &basis)?;
    let f_star = induced_f_star(&c, &g, &basis)?;
    let eigenvalue_product = f_star.nonzero_eigenvalue_product()?;
    let samples = return_vectors_sample(s, depth, passes)?;
    let lambda = &c.perron.lambda;
    let k_max_i = i64::from(k_max);
    let mut failures = Vec::new();
    for v in &samples {
        for k in -k_max_i..=k_max_i {
            let value = &lambda.pow(k).expect("λ is nonzero") * v;
            if !gr.contains(&value) {
                failures.push(GrFailure { return_vector: v.clone(), k, value });
            }
        }
    }
    Ok(GrReport {
        collared_letters: c.substitution.size(),
        vertices: g.vertex_count,
        h1_rank: basis.rank(),
        gr,
        f_star,
        eigenvalue_product,
        samples,
        k_max,
        failures,
    })
}

/// Rank of `H1` as `E − V + components`.
pub fn euler_rank(g: &APGraph) -> usize {
    (g.edge_count() + g.component_count()).saturating_sub(g.vertex_count)
}

/// Exact rational value of a field element, for reports.
pub fn as_integer(x: &FieldElement) -> Option<i64> {
    x.as_rational().filter(|q| q.is_integer()).and_then(|q| q.to_integer().to_i64())
}
