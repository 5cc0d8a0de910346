//! Overlap-coincidence closure for planar self-similar substitutions.
//!
//! Two copies of a periodic patch, one translated by `v`, are inflated in
//! lockstep. An overlap is a pair of tiles, one from each copy, with
//! intersecting interiors; up to translation it is determined by the two
//! tile types and their relative offset. If every overlap eventually
//! produces a coincidence (same type, zero offset) and `v` is completely
//! rationally independent of the lattice, the tiling space has pure
//! discrete spectrum. If some overlap never does and `v` is known to be a
//! generalized return vector, it does not.

pub mod builtins;
pub mod geometry;
pub mod io;
pub mod render;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::algebra::{q_linear_rank_quadratic, AlgebraError, QuadraticElement as Qe};
use crate::verdicts::VerdictKind;
use geometry::{area, bounds, contains_point, interiors_intersect, is_convex_ccw, translate, Matrix2, Vec2};

/// Default bound on distinct overlap classes.
pub const DEFAULT_OVERLAP_CAP: usize = 50_000;

#[derive(Debug, Error)]
pub enum OverlapError {
    #[error("invalid substitution: {0}")]
    Invalid(Violation),
    #[error("invalid periodic tiling: {0}")]
    InvalidTiling(String),
    #[error("lattice basis is degenerate")]
    DegenerateBasis,
    #[error("coordinates mix the fields Q(√{0}) and Q(√{1})")]
    MixedFields(u32, u32),
    #[error("prototile {0} is referenced but not defined")]
    UnknownTile(usize),
    #[error("prototile ids must be 0..n in order; found {found} at position {position}")]
    BadTileId { position: usize, found: usize },
    #[error("expected one rule per prototile ({expected}), found {found}")]
    RuleCount { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A convex prototile, vertices counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarPrototile {
    pub id: usize,
    pub label: String,
    pub polygon: Vec<Vec2>,
}

/// One tile of a substitution rule: prototile `tile` translated by
/// `translation` inside the inflated support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleTile {
    pub tile: usize,
    pub translation: Vec2,
}

/// `Φ(ρ_i + p) = { ρ_t + Λp + translation : (t, translation) ∈ rules[i] }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarSubstitution {
    pub d: u32,
    pub prototiles: Vec<PlanarPrototile>,
    pub expansion: Matrix2,
    pub rules: Vec<Vec<RuleTile>>,
}

impl PlanarSubstitution {
    /// Structural checks: ids in order, one rule per prototile, known
    /// references, a single field throughout.
    pub fn new(
        d: u32,
        prototiles: Vec<PlanarPrototile>,
        expansion: Matrix2,
        rules: Vec<Vec<RuleTile>>,
    ) -> Result<Self, OverlapError> {
        crate::algebra::check_square_free(d)?;
        for (position, p) in prototiles.iter().enumerate() {
            if p.id != position {
                return Err(OverlapError::BadTileId { position, found: p.id });
            }
        }
        if rules.len() != prototiles.len() {
            return Err(OverlapError::RuleCount { expected: prototiles.len(), found: rules.len() });
        }
        for r in rules.iter().flatten() {
            if r.tile >= prototiles.len() {
                return Err(OverlapError::UnknownTile(r.tile));
            }
        }
        let field_of = |q: &Qe| q.d();
        let all = prototiles
            .iter()
            .flat_map(|p| p.polygon.iter())
            .chain(rules.iter().flatten().map(|r| &r.translation))
            .flat_map(|v| [field_of(&v.x), field_of(&v.y)])
            .chain(expansion.m.iter().flatten().map(field_of));
        for e in all {
            if e != d {
                return Err(OverlapError::MixedFields(d, e));
            }
        }
        Ok(PlanarSubstitution { d, prototiles, expansion, rules })
    }

    pub fn polygon(&self, tile: usize) -> &[Vec2] {
        &self.prototiles[tile].polygon
    }

    /// Polygon of prototile `tile` placed at `position`.
    pub fn placed(&self, tile: usize, position: &Vec2) -> Vec<Vec2> {
        translate(self.polygon(tile), position)
    }

    /// Children of a tile placed at `position`.
    pub fn substitute(&self, tile: usize, position: &Vec2) -> Vec<(usize, Vec2)> {
        let base = self.expansion.apply(position);
        self.rules[tile].iter().map(|r| (r.tile, &base + &r.translation)).collect()
    }

    pub fn label(&self, tile: usize) -> &str {
        &self.prototiles[tile].label
    }
}

/// First failure found by [`validate_substitution`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotConvex { tile: usize },
    EmptyRule { tile: usize },
    OutsideSupport { tile: usize, child: usize },
    OverlappingChildren { tile: usize, first: usize, second: usize },
    AreaMismatch { tile: usize, expected: Box<Qe>, found: Box<Qe> },
    NonExpanding,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotConvex { tile } => write!(f, "prototile {tile} is not convex and counterclockwise"),
            Violation::EmptyRule { tile } => write!(f, "prototile {tile} has an empty rule"),
            Violation::OutsideSupport { tile, child } => {
                write!(f, "child {child} of prototile {tile} leaves the inflated support")
            }
            Violation::OverlappingChildren { tile, first, second } => {
                write!(f, "children {first} and {second} of prototile {tile} have overlapping interiors")
            }
            Violation::AreaMismatch { tile, expected, found } => {
                write!(f, "children of prototile {tile} cover area {found}, expected {expected}")
            }
            Violation::NonExpanding => write!(f, "expansion has determinant at most 1"),
        }
    }
}

/// Exact check that every rule tiles the inflated prototile: children lie
/// inside it, have disjoint interiors, and their areas sum to `det Λ` times
/// the prototile area.
pub fn validate_substitution(ps: &PlanarSubstitution) -> Result<(), Violation> {
    let det = ps.expansion.det();
    if det <= Qe::one(ps.d) {
        return Err(Violation::NonExpanding);
    }
    for (i, p) in ps.prototiles.iter().enumerate() {
        if !is_convex_ccw(&p.polygon) {
            return Err(Violation::NotConvex { tile: i });
        }
    }
    let origin = Vec2::zero(ps.d);
    for (i, p) in ps.prototiles.iter().enumerate() {
        if ps.rules[i].is_empty() {
            return Err(Violation::EmptyRule { tile: i });
        }
        let big: Vec<Vec2> = p.polygon.iter().map(|v| ps.expansion.apply(v)).collect();
        let children: Vec<Vec<Vec2>> = ps.substitute(i, &origin).iter().map(|(t, pos)| ps.placed(*t, pos)).collect();
        for (k, c) in children.iter().enumerate() {
            if !c.iter().all(|v| contains_point(&big, v)) {
                return Err(Violation::OutsideSupport { tile: i, child: k });
            }
        }
        for a in 0..children.len() {
            for b in a + 1..children.len() {
                if interiors_intersect(&children[a], &children[b]) {
                    return Err(Violation::OverlappingChildren { tile: i, first: a, second: b });
                }
            }
        }
        let found = children.iter().fold(Qe::zero(ps.d), |acc, c| &acc + &area(c));
        let expected = &area(&p.polygon) * &det;
        if found != expected {
            return Err(Violation::AreaMismatch { tile: i, expected: Box::new(expected), found: Box::new(found) });
        }
    }
    Ok(())
}

/// A finite patch repeated along a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTiling {
    pub patch: Vec<(usize, Vec2)>,
    pub lattice: [Vec2; 2],
}

impl PeriodicTiling {
    /// The patch area equals the lattice covolume and no tile overlaps
    /// another tile of the patch or of a neighbouring translate.
    pub fn validate(&self, ps: &PlanarSubstitution) -> Result<(), OverlapError> {
        let covol = self.lattice[0].cross(&self.lattice[1]).abs();
        if covol.is_zero() {
            return Err(OverlapError::DegenerateBasis);
        }
        for (t, _) in &self.patch {
            if *t >= ps.prototiles.len() {
                return Err(OverlapError::UnknownTile(*t));
            }
        }
        let total = self.patch.iter().fold(Qe::zero(ps.d), |acc, (t, _)| &acc + &area(ps.polygon(*t)));
        if total != covol {
            return Err(OverlapError::InvalidTiling(format!("patch area {total} differs from covolume {covol}")));
        }
        for (i, (ta, pa)) in self.patch.iter().enumerate() {
            let a = ps.placed(*ta, pa);
            for (j, (tb, pb)) in self.patch.iter().enumerate() {
                for k1 in -1..=1i64 {
                    for k2 in -1..=1i64 {
                        if i == j && k1 == 0 && k2 == 0 {
                            continue;
                        }
                        let shift = self.lattice_point(k1, k2);
                        if interiors_intersect(&a, &ps.placed(*tb, &(pb + &shift))) {
                            return Err(OverlapError::InvalidTiling(format!(
                                "patch tiles {i} and {j} overlap at lattice shift ({k1}, {k2})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn lattice_point(&self, k1: i64, k2: i64) -> Vec2 {
        let d = self.lattice[0].d();
        &self.lattice[0].scale(&Qe::from_int(k1, d)) + &self.lattice[1].scale(&Qe::from_int(k2, d))
    }
}

/// Translation class of a pair of tiles: type of the tile from the first
/// tiling, type of the tile from the second, and the position of the second
/// minus the position of the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Overlap {
    pub type_a: usize,
    pub type_b: usize,
    pub offset: Vec2,
}

impl Overlap {
    /// Class of tile `a` at `pos_a` against tile `b` at `pos_b`.
    pub fn from_placed(a: usize, pos_a: &Vec2, b: usize, pos_b: &Vec2) -> Self {
        Overlap { type_a: a, type_b: b, offset: pos_b - pos_a }
    }

    pub fn is_coincidence(&self) -> bool {
        self.type_a == self.type_b && self.offset.is_zero()
    }

    /// Whether the interiors of the two tiles meet.
    pub fn is_valid(&self, ps: &PlanarSubstitution) -> bool {
        interiors_intersect(ps.polygon(self.type_a), &ps.placed(self.type_b, &self.offset))
    }
}

/// Coefficients of `v` in the basis and their rank over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub coefficients: [Qe; 2],
    pub rank: usize,
}

impl Independence {
    pub fn holds(&self) -> bool {
        self.rank == 2
    }
}

/// Solves `v = a1 v1 + a2 v2` and reports `dim_Q span(a1, a2)`.
pub fn rational_independence(v: &Vec2, basis: &[Vec2; 2]) -> Result<Independence, OverlapError> {
    let det = basis[0].cross(&basis[1]);
    if det.is_zero() {
        return Err(OverlapError::DegenerateBasis);
    }
    let a1 = &v.cross(&basis[1]) / &det;
    let a2 = &basis[0].cross(v) / &det;
    let rank = q_linear_rank_quadratic(&[a1.clone(), a2.clone()])?;
    Ok(Independence { coefficients: [a1, a2], rank })
}

/// Whether `v` is completely rationally independent of the basis.
pub fn complete_rational_independence(v: &Vec2, basis: &[Vec2; 2]) -> Result<bool, OverlapError> {
    Ok(rational_independence(v, basis)?.holds())
}

/// Lattice shifts large enough to reach every tile that can meet the patch.
fn shift_radius(ps: &PlanarSubstitution, t: &PeriodicTiling, v: &Vec2) -> i64 {
    // Only the enumeration range uses floating point; every intersection
    // test below is exact.
    let mut extent: f64 = 0.0;
    for (tile, pos) in &t.patch {
        for p in ps.placed(*tile, pos) {
            let (x, y) = p.to_f64();
            extent = extent.max(x.abs()).max(y.abs());
        }
    }
    let (vx, vy) = v.to_f64();
    let reach = 2.0 * extent + vx.abs().max(vy.abs());
    let (ax, ay) = t.lattice[0].to_f64();
    let (bx, by) = t.lattice[1].to_f64();
    let area = (ax * by - ay * bx).abs();
    let height = area / ax.hypot(ay).max(bx.hypot(by));
    (reach / height).ceil() as i64 + 2
}

/// All overlap classes between the periodic tiling and its translate by `-v`.
pub fn initial_overlaps(ps: &PlanarSubstitution, t: &PeriodicTiling, v: &Vec2) -> BTreeSet<Overlap> {
    let r = shift_radius(ps, t, v);
    let mut out = BTreeSet::new();
    for (ta, pa) in &t.patch {
        let a = ps.placed(*ta, pa);
        for (tb, pb) in &t.patch {
            for k1 in -r..=r {
                for k2 in -r..=r {
                    let pos = &(pb + &t.lattice_point(k1, k2)) - v;
                    if interiors_intersect(&a, &ps.placed(*tb, &pos)) {
                        out.insert(Overlap::from_placed(*ta, pa, *tb, &pos));
                    }
                }
            }
        }
    }
    out
}

/// Overlap classes among the children of an overlap.
pub fn overlap_successors(ps: &PlanarSubstitution, o: &Overlap) -> BTreeSet<Overlap> {
    let origin = Vec2::zero(ps.d);
    let left = ps.substitute(o.type_a, &origin);
    let right = ps.substitute(o.type_b, &o.offset);
    let right_polys: Vec<Vec<Vec2>> = right.iter().map(|(t, p)| ps.placed(*t, p)).collect();
    let right_bounds: Vec<_> = right_polys.iter().map(|p| bounds(p)).collect();
    let mut out = BTreeSet::new();
    for (ta, pa) in &left {
        let a = ps.placed(*ta, pa);
        let (ax0, ay0, ax1, ay1) = bounds(&a);
        for ((tb, pb), (b, (bx0, by0, bx1, by1))) in right.iter().zip(right_polys.iter().zip(&right_bounds)) {
            if ax1 <= *bx0 || *bx1 <= ax0 || ay1 <= *by0 || *by1 <= ay0 {
                continue;
            }
            if interiors_intersect(&a, b) {
                out.insert(Overlap::from_placed(*ta, pa, *tb, pb));
            }
        }
    }
    out
}

/// Closure of the seed overlaps under inflation.
#[derive(Clone, Debug)]
pub struct OverlapGraph {
    /// Classes in discovery order (stage by stage, sorted within a stage).
    pub nodes: Vec<Overlap>,
    pub index: BTreeMap<Overlap, usize>,
    /// Sorted successor indices of each node.
    pub edges: Vec<Vec<usize>>,
    /// `stages[k]`: classes occurring after `k` inflations of the seeds.
    pub stages: Vec<BTreeSet<usize>>,
    /// First stage that brought no new class.
    pub stabilization_depth: Option<usize>,
    /// False when the cap stopped the expansion.
    pub complete: bool,
}

impl OverlapGraph {
    pub fn coincidences(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_coincidence()).collect()
    }

    /// Fewest inflations from each node to a coincidence; `None` if never.
    pub fn distances(&self) -> Vec<Option<usize>> {
        let n = self.nodes.len();
        let mut reverse = vec![Vec::new(); n];
        for (s, ts) in self.edges.iter().enumerate() {
            for &t in ts {
                reverse[t].push(s);
            }
        }
        let mut dist = vec![None; n];
        let mut queue = VecDeque::new();
        for c in self.coincidences() {
            dist[c] = Some(0);
            queue.push_back(c);
        }
        while let Some(t) = queue.pop_front() {
            let dt = dist[t].expect("queued");
            for &s in &reverse[t] {
                if dist[s].is_none() {
                    dist[s] = Some(dt + 1);
                    queue.push_back(s);
                }
            }
        }
        dist
    }

    /// Whether every class of stage `later` already occurs in stage `earlier`.
    pub fn stage_contained(&self, later: usize, earlier: usize) -> Option<bool> {
        Some(self.stages.get(later)?.is_subset(self.stages.get(earlier)?))
    }

    /// Classes of stage `k` absent from every earlier stage.
    pub fn new_at_stage(&self, k: usize) -> Vec<usize> {
        let seen: BTreeSet<usize> = self.stages[..k].iter().flatten().copied().collect();
        self.stages[k].iter().copied().filter(|i| !seen.contains(i)).collect()
    }
}

/// Breadth-first closure, stage by stage, until a stage adds nothing new;
/// `extra_stages` further stages are then recorded from the finished graph.
pub fn overlap_closure(
    ps: &PlanarSubstitution,
    seeds: &BTreeSet<Overlap>,
    cap: usize,
    extra_stages: usize,
) -> OverlapGraph {
    let mut g = OverlapGraph {
        nodes: Vec::new(),
        index: BTreeMap::new(),
        edges: Vec::new(),
        stages: Vec::new(),
        stabilization_depth: None,
        complete: true,
    };
    let intern = |g: &mut OverlapGraph, o: &Overlap| -> Option<usize> {
        if let Some(&i) = g.index.get(o) {
            return Some(i);
        }
        if g.nodes.len() >= cap {
            return None;
        }
        let i = g.nodes.len();
        g.nodes.push(o.clone());
        g.index.insert(o.clone(), i);
        g.edges.push(Vec::new());
        Some(i)
    };
    let mut stage = BTreeSet::new();
    for s in seeds {
        match intern(&mut g, s) {
            Some(i) => {
                stage.insert(i);
            }
            None => g.complete = false,
        }
    }
    g.stages.push(stage);
    let mut expanded = vec![false; g.nodes.len()];
    while g.complete {
        let current: Vec<usize> = g.stages.last().expect("seed stage").iter().copied().collect();
        let before = g.nodes.len();
        let mut next = BTreeSet::new();
        for i in current {
            if !expanded.get(i).copied().unwrap_or(false) {
                let succ = overlap_successors(ps, &g.nodes[i].clone());
                let mut targets = Vec::with_capacity(succ.len());
                for o in &succ {
                    match intern(&mut g, o) {
                        Some(t) => targets.push(t),
                        None => g.complete = false,
                    }
                }
                targets.sort_unstable();
                g.edges[i] = targets;
                expanded.resize(g.nodes.len(), false);
                expanded[i] = true;
            }
            next.extend(g.edges[i].iter().copied());
        }
        if !g.complete {
            break;
        }
        g.stages.push(next);
        if g.nodes.len() == before {
            g.stabilization_depth = Some(g.stages.len() - 1);
            break;
        }
    }
    if g.complete {
        for _ in 0..extra_stages {
            let next: BTreeSet<usize> =
                g.stages.last().expect("stage").iter().flat_map(|&i| g.edges[i].iter().copied()).collect();
            g.stages.push(next);
        }
    }
    g
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OverlapVerdictKind {
    SufficientForPds,
    RefutesPds,
    Inconclusive,
    CapExceeded,
}

impl OverlapVerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OverlapVerdictKind::SufficientForPds => "SufficientForPds",
            OverlapVerdictKind::RefutesPds => "RefutesPds",
            OverlapVerdictKind::Inconclusive => "Inconclusive",
            OverlapVerdictKind::CapExceeded => "CapExceeded",
        }
    }
}

/// Caller-supplied assertion that `v` is a generalized return vector (or a
/// rescaled return vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrCertificate {
    pub statement: String,
}

#[derive(Clone, Debug)]
pub struct OverlapVerdict {
    pub kind: OverlapVerdictKind,
    pub graph: OverlapGraph,
    pub independence: Independence,
    pub gr_certificate: Option<GrCertificate>,
    pub distances: Vec<Option<usize>>,
}

impl OverlapVerdict {
    pub fn non_reaching(&self) -> Vec<usize> {
        (0..self.distances.len()).filter(|&i| self.distances[i].is_none()).collect()
    }

    pub fn all_reach_coincidence(&self) -> bool {
        self.distances.iter().all(Option::is_some)
    }

    pub fn max_distance(&self) -> Option<usize> {
        self.distances.iter().flatten().copied().max()
    }

    /// The verdict on pure discrete spectrum this route supports.
    pub fn pds_kind(&self) -> VerdictKind {
        match self.kind {
            OverlapVerdictKind::SufficientForPds => VerdictKind::PdsCertified,
            OverlapVerdictKind::RefutesPds => VerdictKind::NotPdsCertified,
            _ => VerdictKind::Inconclusive,
        }
    }
}

/// Runs the full planar test.
pub fn pds_verdict_2d(
    ps: &PlanarSubstitution,
    t: &PeriodicTiling,
    v: &Vec2,
    gr_certificate: Option<GrCertificate>,
    cap: usize,
) -> Result<OverlapVerdict, OverlapError> {
    validate_substitution(ps).map_err(OverlapError::Invalid)?;
    t.validate(ps)?;
    let independence = rational_independence(v, &t.lattice)?;
    let seeds = initial_overlaps(ps, t, v);
    let graph = overlap_closure(ps, &seeds, cap, 1);
    let distances = if graph.complete { graph.distances() } else { Vec::new() };
    let all_reach = distances.iter().all(Option::is_some);
    let kind = if !graph.complete {
        OverlapVerdictKind::CapExceeded
    } else if all_reach && independence.holds() {
        OverlapVerdictKind::SufficientForPds
    } else if !all_reach && gr_certificate.is_some() {
        OverlapVerdictKind::RefutesPds
    } else {
        OverlapVerdictKind::Inconclusive
    };
    Ok(OverlapVerdict { kind, graph, independence, gr_certificate, distances })
}

#[cfg(test)]
mod tests {
    use super::builtins::{octagonal, table};
    use super::*;
    use num_rational::BigRational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn half_root2() -> Qe {
        Qe::new(q(0, 1), q(1, 2), 2).unwrap()
    }

    #[test]
    fn independence_examples() {
        let basis = [Vec2::from_ints(1, 0, 2), Vec2::from_ints(0, 1, 2)];
        let h = half_root2();
        let v = Vec2::new(&Qe::one(2) - &h, h);
        assert!(complete_rational_independence(&v, &basis).unwrap());
        assert!(!complete_rational_independence(&Vec2::from_ints(1, 0, 2), &basis).unwrap());
        let r = Vec2::new(Qe::rational(q(1, 2), 2), Qe::rational(q(1, 3), 2));
        assert!(!complete_rational_independence(&r, &basis).unwrap());
        let flat = [Vec2::from_ints(1, 0, 2), Vec2::from_ints(2, 0, 2)];
        assert!(matches!(complete_rational_independence(&v, &flat), Err(OverlapError::DegenerateBasis)));
    }

    #[test]
    fn builtins_validate() {
        assert_eq!(validate_substitution(&table().substitution), Ok(()));
        assert_eq!(validate_substitution(&octagonal().substitution), Ok(()));
    }

    #[test]
    fn shifted_table_child_is_rejected() {
        let mut ps = table().substitution;
        let shift = Vec2::new(Qe::rational(q(1, 3), 1), Qe::zero(1));
        ps.rules[0][1].translation = &ps.rules[0][1].translation + &shift;
        assert!(matches!(
            validate_substitution(&ps),
            Err(Violation::OverlappingChildren { .. } | Violation::OutsideSupport { .. })
        ));
    }

    #[test]
    fn table_seeds() {
        let b = table();
        let seeds = initial_overlaps(&b.substitution, &b.tiling, &b.v);
        let offsets: Vec<Vec2> = seeds.iter().map(|o| o.offset.clone()).collect();
        assert_eq!(offsets, vec![Vec2::from_ints(-1, 0, 1), Vec2::from_ints(1, 0, 1)]);
    }

    #[test]
    fn zero_shift_seeds_are_coincidences() {
        for b in [table(), octagonal()] {
            let seeds = initial_overlaps(&b.substitution, &b.tiling, &Vec2::zero(b.substitution.d));
            assert!(!seeds.is_empty());
            assert!(seeds.iter().all(Overlap::is_coincidence));
        }
    }

    #[test]
    fn coincidences_absorb() {
        for b in [table(), octagonal()] {
            for t in 0..b.substitution.prototiles.len() {
                let o = Overlap { type_a: t, type_b: t, offset: Vec2::zero(b.substitution.d) };
                let succ = overlap_successors(&b.substitution, &o);
                assert!(!succ.is_empty());
                assert!(succ.iter().all(Overlap::is_coincidence));
                let g = overlap_closure(&b.substitution, &BTreeSet::from([o]), 100, 0);
                assert!(g.nodes.iter().all(Overlap::is_coincidence));
            }
        }
    }

    #[test]
    fn table_refuted_with_certificate() {
        let b = table();
        let v =
            pds_verdict_2d(&b.substitution, &b.tiling, &b.v, b.gr_certificate.clone(), DEFAULT_OVERLAP_CAP).unwrap();
        assert_eq!(v.kind, OverlapVerdictKind::RefutesPds);
        assert!(!v.non_reaching().is_empty());
        assert_eq!(v.pds_kind(), VerdictKind::NotPdsCertified);
        let v = pds_verdict_2d(&b.substitution, &b.tiling, &b.v, None, DEFAULT_OVERLAP_CAP).unwrap();
        assert_eq!(v.kind, OverlapVerdictKind::Inconclusive);
    }

    #[test]
    fn cap_is_reported() {
        let b = table();
        let v = pds_verdict_2d(&b.substitution, &b.tiling, &b.v, None, 3).unwrap();
        assert_eq!(v.kind, OverlapVerdictKind::CapExceeded);
    }

    #[test]
    fn octagonal_lattice_shift_is_inconclusive() {
        let b = octagonal();
        let v =
            pds_verdict_2d(&b.substitution, &b.tiling, &Vec2::from_ints(1, 0, 2), None, DEFAULT_OVERLAP_CAP).unwrap();
        assert_eq!(v.kind, OverlapVerdictKind::Inconclusive);
        assert!(!v.independence.holds());
    }
}
