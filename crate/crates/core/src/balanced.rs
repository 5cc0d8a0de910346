//! Balanced pairs and the balanced pair algorithm.
//!
//! A balanced pair `(u, v)` has `[u] = [v]`. Every balanced pair factors
//! uniquely into irreducible ones by cutting wherever the prefix
//! abelianizations agree. The algorithm closes a seed under
//! `(u, v) ↦ irreducible factors of (φu, φv)` and asks whether every node of
//! the resulting graph can reach a coincidence `(a, a)`.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::substitution::{abelianize, Alphabet, Letter, Substitution, Word};

/// Default bound on distinct closure nodes.
pub const DEFAULT_BPA_CAP: usize = 10_000;
/// Longest image word the closure is allowed to build.
pub const WORD_LENGTH_GUARD: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BpaError {
    #[error("pair is not balanced: {u:?} vs {v:?}")]
    Unbalanced { u: Vec<i64>, v: Vec<i64> },
    #[error("pair is reducible")]
    Reducible,
    #[error("letter {index} is outside an alphabet of size {size}")]
    ForeignLetter { index: Letter, size: usize },
}

/// Pair of words with equal abelianization, stored in the given orientation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BalancedPair {
    u: Word,
    v: Word,
}

impl BalancedPair {
    pub fn new(u: Word, v: Word, d: usize) -> Result<Self, BpaError> {
        for w in [&u, &v] {
            if let Some(&index) = w.iter().find(|&&a| a >= d) {
                return Err(BpaError::ForeignLetter { index, size: d });
            }
        }
        let (au, av) = (abelianize(&u, d), abelianize(&v, d));
        if au != av {
            return Err(BpaError::Unbalanced { u: au, v: av });
        }
        Ok(BalancedPair { u, v })
    }

    fn new_unchecked(u: &[Letter], v: &[Letter]) -> Self {
        BalancedPair { u: Word(u.to_vec()), v: Word(v.to_vec()) }
    }

    pub fn u(&self) -> &Word {
        &self.u
    }

    pub fn v(&self) -> &Word {
        &self.v
    }

    /// `(a, a)` for a single letter `a`.
    pub fn is_coincidence(&self) -> bool {
        self.u.len() == 1 && self.u == self.v
    }

    pub fn dual(&self) -> Self {
        BalancedPair { u: self.v.clone(), v: self.u.clone() }
    }

    /// The lexicographically smaller of the pair and its dual.
    pub fn dual_canonical(&self) -> Self {
        let d = self.dual();
        if d < *self {
            d
        } else {
            self.clone()
        }
    }

    pub fn is_irreducible(&self) -> bool {
        split_points(&self.u, &self.v).len() == 1
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        format!("({}, {})", alphabet.format_word(&self.u), alphabet.format_word(&self.v))
    }
}

/// End positions of the irreducible blocks of a balanced pair.
fn split_points(u: &[Letter], v: &[Letter]) -> Vec<usize> {
    let d = u.iter().chain(v).copied().max().map_or(0, |m| m + 1);
    let mut diff = vec![0i64; d];
    let mut nonzero = 0usize;
    let mut cuts = Vec::new();
    for (k, (&a, &b)) in u.iter().zip(v).enumerate() {
        for (letter, delta) in [(a, 1i64), (b, -1i64)] {
            let before = diff[letter] != 0;
            diff[letter] += delta;
            let after = diff[letter] != 0;
            match (before, after) {
                (false, true) => nonzero += 1,
                (true, false) => nonzero -= 1,
                _ => {}
            }
        }
        if nonzero == 0 {
            cuts.push(k + 1);
        }
    }
    cuts
}

/// Unique factorization into irreducible balanced pairs, in order.
pub fn irreducible_factors(p: &BalancedPair) -> Vec<BalancedPair> {
    factor_words(&p.u, &p.v)
}

fn factor_words(u: &[Letter], v: &[Letter]) -> Vec<BalancedPair> {
    let mut out = Vec::new();
    let mut start = 0;
    for end in split_points(u, v) {
        out.push(BalancedPair::new_unchecked(&u[start..end], &v[start..end]));
        start = end;
    }
    out
}

/// Irreducible factors of `(φu, φv)` for an irreducible pair.
pub fn bpa_successors(s: &Substitution, p: &BalancedPair) -> Result<Vec<BalancedPair>, BpaError> {
    let d = s.size();
    for w in [&p.u, &p.v] {
        if let Some(&index) = w.iter().find(|&&a| a >= d) {
            return Err(BpaError::ForeignLetter { index, size: d });
        }
    }
    if !p.is_irreducible() {
        return Err(BpaError::Reducible);
    }
    Ok(factor_words(&s.apply_unchecked(&p.u), &s.apply_unchecked(&p.v)))
}

/// Closure graph of irreducible balanced pairs.
#[derive(Clone, Debug)]
pub struct BpaClosure {
    pub seed: BalancedPair,
    /// Nodes in breadth-first discovery order.
    pub nodes: Vec<BalancedPair>,
    /// Successor multiset of each node (indices into `nodes`).
    pub edges: Vec<Vec<usize>>,
    /// Breadth-first layer: node `i` is a factor of `(φ^depth u, φ^depth v)`.
    pub depth: Vec<usize>,
    /// True when every node's successors were computed.
    pub exhausted: bool,
}

impl BpaClosure {
    pub fn index_of(&self, p: &BalancedPair) -> Option<usize> {
        self.nodes.iter().position(|n| n == p)
    }

    pub fn contains(&self, p: &BalancedPair) -> bool {
        self.index_of(p).is_some()
    }

    /// Non-coincidence nodes, optionally identified with their duals, sorted.
    pub fn non_coincidence_pairs(&self, dual_quotient: bool) -> Vec<BalancedPair> {
        let mut out: Vec<BalancedPair> = self
            .nodes
            .iter()
            .filter(|p| !p.is_coincidence())
            .map(|p| if dual_quotient { p.dual_canonical() } else { p.clone() })
            .collect();
        out.sort_by(|a, b| (a.u.len(), a).cmp(&(b.u.len(), b)));
        out.dedup();
        out
    }

    /// Nodes from which some coincidence node is reachable.
    pub fn reaching_coincidence(&self) -> Vec<bool> {
        let n = self.nodes.len();
        let mut reverse = vec![Vec::new(); n];
        for (src, targets) in self.edges.iter().enumerate() {
            for &t in targets {
                reverse[t].push(src);
            }
        }
        let mut reach = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| self.nodes[i].is_coincidence()).collect();
        for &i in &queue {
            reach[i] = true;
        }
        while let Some(t) = queue.pop_front() {
            for &s in &reverse[t] {
                if !reach[s] {
                    reach[s] = true;
                    queue.push_back(s);
                }
            }
        }
        reach
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BpaVerdictKind {
    TerminatesWithCoincidence,
    FiniteNoCoincidence,
    CapExceeded,
}

impl BpaVerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BpaVerdictKind::TerminatesWithCoincidence => "TerminatesWithCoincidence",
            BpaVerdictKind::FiniteNoCoincidence => "FiniteNoCoincidence",
            BpaVerdictKind::CapExceeded => "CapExceeded",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BpaDiagnostics {
    pub node_count: usize,
    pub coincidence_count: usize,
    /// Nodes with no path to a coincidence (empty unless the closure is finite).
    pub non_reaching: Vec<usize>,
    /// Longest image word built during expansion.
    pub longest_word: usize,
    pub cap: usize,
}

#[derive(Clone, Debug)]
pub struct BpaVerdict {
    pub kind: BpaVerdictKind,
    pub closure: BpaClosure,
    pub diagnostics: BpaDiagnostics,
}

/// Breadth-first closure from the irreducible factors of `seed`.
pub fn bpa_run(s: &Substitution, seed: &BalancedPair, cap: usize) -> Result<BpaVerdict, BpaError> {
    let d = s.size();
    BalancedPair::new(seed.u.clone(), seed.v.clone(), d)?;
    let mut nodes: Vec<BalancedPair> = Vec::new();
    let mut index: HashMap<BalancedPair, usize> = HashMap::new();
    let mut depth = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut over_cap = false;

    let mut intern = |p: BalancedPair,
                      dep: usize,
                      nodes: &mut Vec<BalancedPair>,
                      depth: &mut Vec<usize>,
                      queue: &mut VecDeque<usize>|
     -> Option<usize> {
        if let Some(&i) = index.get(&p) {
            return Some(i);
        }
        if nodes.len() >= cap {
            return None;
        }
        let i = nodes.len();
        index.insert(p.clone(), i);
        nodes.push(p);
        depth.push(dep);
        queue.push_back(i);
        Some(i)
    };

    for f in irreducible_factors(seed) {
        if intern(f, 0, &mut nodes, &mut depth, &mut queue).is_none() {
            over_cap = true;
        }
    }
    let mut longest = 0;
    while let Some(i) = queue.pop_front() {
        if over_cap {
            break;
        }
        let (u, v) = (&nodes[i].u, &nodes[i].v);
        let len = s.image_len(u).max(s.image_len(v));
        longest = longest.max(len);
        if len > WORD_LENGTH_GUARD {
            over_cap = true;
            break;
        }
        let succ = factor_words(&s.apply_unchecked(u), &s.apply_unchecked(v));
        let dep = depth[i] + 1;
        let mut targets = Vec::with_capacity(succ.len());
        for p in succ {
            match intern(p, dep, &mut nodes, &mut depth, &mut queue) {
                Some(t) => targets.push(t),
                None => {
                    over_cap = true;
                    break;
                }
            }
        }
        if edges.len() <= i {
            edges.resize(i + 1, Vec::new());
        }
        edges[i] = targets;
    }
    edges.resize(nodes.len(), Vec::new());
    let closure = BpaClosure { seed: seed.clone(), nodes, edges, depth, exhausted: !over_cap };
    let coincidence_count = closure.nodes.iter().filter(|p| p.is_coincidence()).count();
    let (kind, non_reaching) = if over_cap {
        (BpaVerdictKind::CapExceeded, Vec::new())
    } else {
        let reach = closure.reaching_coincidence();
        let bad: Vec<usize> = (0..reach.len()).filter(|&i| !reach[i]).collect();
        if bad.is_empty() {
            (BpaVerdictKind::TerminatesWithCoincidence, bad)
        } else {
            (BpaVerdictKind::FiniteNoCoincidence, bad)
        }
    };
    let diagnostics =
        BpaDiagnostics { node_count: closure.nodes.len(), coincidence_count, non_reaching, longest_word: longest, cap };
    Ok(BpaVerdict { kind, closure, diagnostics })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::tests::{fibonacci, tau1, thue_morse};
    use proptest::prelude::*;

    fn pair(s: &Substitution, u: &str, v: &str) -> BalancedPair {
        BalancedPair::new(s.parse_word(u).unwrap(), s.parse_word(v).unwrap(), s.size()).unwrap()
    }

    fn show(s: &Substitution, ps: &[BalancedPair]) -> Vec<String> {
        ps.iter().map(|p| p.format(s.alphabet())).collect()
    }

    #[test]
    fn factorization_examples() {
        let f = fibonacci();
        assert_eq!(show(&f, &irreducible_factors(&pair(&f, "aba", "aab"))), ["(a, a)", "(ba, ab)"]);
        assert_eq!(show(&f, &irreducible_factors(&pair(&f, "abba", "baab"))), ["(ab, ba)", "(ba, ab)"]);
        let t = tau1();
        assert_eq!(irreducible_factors(&pair(&t, "12", "21")).len(), 1);
    }

    #[test]
    fn unbalanced_is_rejected() {
        let f = fibonacci();
        let e = BalancedPair::new(f.parse_word("a").unwrap(), f.parse_word("b").unwrap(), 2);
        assert!(matches!(e, Err(BpaError::Unbalanced { .. })));
    }

    #[test]
    fn successor_examples() {
        let f = fibonacci();
        assert_eq!(show(&f, &bpa_successors(&f, &pair(&f, "ab", "ba")).unwrap()), ["(a, a)", "(ba, ab)"]);
        let t = thue_morse();
        assert_eq!(show(&t, &bpa_successors(&t, &pair(&t, "ab", "ba")).unwrap()), ["(ab, ba)", "(ba, ab)"]);
        let succ = bpa_successors(&f, &pair(&f, "a", "a")).unwrap();
        assert!(succ.iter().all(BalancedPair::is_coincidence));
        assert!(matches!(bpa_successors(&f, &pair(&f, "aab", "aab")), Err(BpaError::Reducible)));
    }

    #[test]
    fn fibonacci_terminates() {
        let f = fibonacci();
        let v = bpa_run(&f, &pair(&f, "ab", "ba"), DEFAULT_BPA_CAP).unwrap();
        assert_eq!(v.kind, BpaVerdictKind::TerminatesWithCoincidence);
        let mut nodes = show(&f, &v.closure.nodes);
        nodes.sort();
        assert_eq!(nodes, ["(a, a)", "(ab, ba)", "(b, b)", "(ba, ab)"]);
    }

    #[test]
    fn thue_morse_has_no_coincidence() {
        let t = thue_morse();
        let v = bpa_run(&t, &pair(&t, "ab", "ba"), DEFAULT_BPA_CAP).unwrap();
        assert_eq!(v.kind, BpaVerdictKind::FiniteNoCoincidence);
        assert_eq!(show(&t, &v.closure.nodes), ["(ab, ba)", "(ba, ab)"]);
        assert_eq!(v.diagnostics.non_reaching, vec![0, 1]);
    }

    #[test]
    fn cap_is_a_distinct_verdict() {
        let t = tau1();
        let v = bpa_run(&t, &pair(&t, "12", "21"), 3).unwrap();
        assert_eq!(v.kind, BpaVerdictKind::CapExceeded);
        assert!(!v.closure.exhausted);
    }

    #[test]
    fn dual_quotient_reporting() {
        let f = fibonacci();
        let v = bpa_run(&f, &pair(&f, "ab", "ba"), DEFAULT_BPA_CAP).unwrap();
        assert_eq!(show(&f, &v.closure.non_coincidence_pairs(true)), ["(ab, ba)"]);
        assert_eq!(v.closure.non_coincidence_pairs(false).len(), 2);
    }

    fn balanced_words(d: usize) -> impl Strategy<Value = (Vec<Letter>, Vec<Letter>)> {
        (prop::collection::vec(0..d, 0..12), any::<u64>()).prop_map(|(u, seed)| {
            // A pseudo-random permutation of u keeps the abelianization.
            let mut v = u.clone();
            let mut x = seed | 1;
            for i in (1..v.len()).rev() {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                v.swap(i, (x % (i as u64 + 1)) as usize);
            }
            (u, v)
        })
    }

    fn random_substitution(d: usize) -> impl Strategy<Value = Substitution> {
        prop::collection::vec(prop::collection::vec(0..d, 1..4), d).prop_map(move |imgs| {
            Substitution::new(crate::substitution::Alphabet::numeric(d).unwrap(), imgs.into_iter().map(Word).collect())
                .unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn factorization_round_trips((u, v) in balanced_words(3)) {
            let p = BalancedPair::new(Word(u.clone()), Word(v.clone()), 3).unwrap();
            let fs = irreducible_factors(&p);
            let cu: Vec<Letter> = fs.iter().flat_map(|f| f.u().iter().copied()).collect();
            let cv: Vec<Letter> = fs.iter().flat_map(|f| f.v().iter().copied()).collect();
            prop_assert_eq!(cu, u);
            prop_assert_eq!(cv, v);
            for f in &fs {
                prop_assert!(f.is_irreducible());
            }
        }

        #[test]
        fn heredity_two_steps(s in random_substitution(3), (u, v) in balanced_words(3)) {
            let p = BalancedPair::new(Word(u.clone()), Word(v.clone()), 3).unwrap();
            let s2 = s.compose(&s).unwrap();
            let direct = factor_words(&s2.apply_unchecked(&u), &s2.apply_unchecked(&v));
            let mut stepped = Vec::new();
            for f in irreducible_factors(&p) {
                for g in bpa_successors(&s, &f).unwrap() {
                    stepped.extend(bpa_successors(&s, &g).unwrap());
                }
            }
            prop_assert_eq!(direct, stepped);
        }
    }

    #[test]
    fn closure_nodes_replay_as_factors() {
        for (s, u, v) in [(fibonacci(), "ab", "ba"), (tau1(), "12", "21"), (thue_morse(), "ab", "ba")] {
            let seed = pair(&s, u, v);
            let verdict = bpa_run(&s, &seed, DEFAULT_BPA_CAP).unwrap();
            let cl = &verdict.closure;
            let max_depth = cl.depth.iter().copied().max().unwrap_or(0);
            let mut level = irreducible_factors(&seed);
            let mut seen: std::collections::HashSet<BalancedPair> = level.iter().cloned().collect();
            for _ in 0..max_depth {
                level = level.iter().flat_map(|p| bpa_successors(&s, p).unwrap()).collect();
                seen.extend(level.iter().cloned());
            }
            assert!(cl.nodes.iter().all(|n| seen.contains(n)));
        }
    }

    #[test]
    fn duality() {
        let t = tau1();
        let a = bpa_run(&t, &pair(&t, "12", "21"), DEFAULT_BPA_CAP).unwrap();
        let b = bpa_run(&t, &pair(&t, "21", "12"), DEFAULT_BPA_CAP).unwrap();
        assert_eq!(a.closure.nodes.len(), b.closure.nodes.len());
        assert!(a.closure.nodes.iter().all(|p| b.closure.contains(&p.dual())));
    }
}
