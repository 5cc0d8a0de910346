//! One-dimensional certification pipelines.
//!
//! Every pipeline records each precondition it checked. A verdict is
//! `PdsCertified` only when all of them passed; otherwise it is
//! `Inconclusive` and names the checks that failed. The one-dimensional
//! routes never refute.

use std::fmt;

use thiserror::Error;

use crate::algebra::{is_irreducible_over_q, is_pisot, perron_data, q_linear_rank_field, AlgebraError, PerronData};
use crate::balanced::{bpa_run, BalancedPair, BpaError, BpaVerdict, BpaVerdictKind};
use crate::substitution::{
    abelianize, ar_substitution, builtins, cyclically_equivalent_prefixes, Alphabet, CyclicEquivalenceWitness, Letter,
    Substitution, SubstitutionError, Word,
};

#[derive(Debug, Error)]
pub enum VerdictError {
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("dominant eigenvalue is not a Pisot number")]
    NotPisot,
    #[error("the two letters must differ")]
    SameLetter,
    #[error("composition word is empty")]
    EmptyComposition,
    #[error("composition letter {0:?} is not one of 1, 2, 3, 4")]
    BadCompositionLetter(char),
    #[error(transparent)]
    Substitution(#[from] SubstitutionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Bpa(#[from] BpaError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VerdictKind {
    PdsCertified,
    NotPdsCertified,
    Inconclusive,
}

impl VerdictKind {
    pub fn as_str(self) -> &'static str {
        match self {
            VerdictKind::PdsCertified => "PdsCertified",
            VerdictKind::NotPdsCertified => "NotPdsCertified",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }
}

/// The criterion a verdict relies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Independence of `⟨[u],ω⟩, ⟨[v],ω⟩` plus BPA termination on `(uv, vu)`.
    UvVu,
    /// Irreducible Pisot incidence plus BPA termination on `(ab, ba)`.
    AbBa,
    /// Irreducible Pisot Arnoux–Rauzy substitution via a cyclic witness.
    ArnouxRauzy,
}

impl Rule {
    pub fn as_str(self) -> &'static str {
        match self {
            Rule::UvVu => "theorem-uv-vu",
            Rule::AbBa => "corollary-ab-ba",
            Rule::ArnouxRauzy => "arnoux-rauzy",
        }
    }
}

/// A single precondition or certificate step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    Primitive,
    Pisot,
    CharPolyIrreducible,
    Independence,
    NonParallelWitness,
    BpaCoincidence,
}

impl Check {
    pub fn as_str(self) -> &'static str {
        match self {
            Check::Primitive => "primitive",
            Check::Pisot => "pisot",
            Check::CharPolyIrreducible => "char_poly_irreducible",
            Check::Independence => "independence",
            Check::NonParallelWitness => "non_parallel_witness",
            Check::BpaCoincidence => "bpa_terminates_with_coincidence",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub check: Check,
    pub passed: bool,
    pub detail: String,
}

/// Why a verdict stopped short of certification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconclusiveReason {
    pub failed: Vec<Check>,
    /// Set when the balanced pair closure hit its node cap.
    pub bpa_cap: Option<usize>,
    /// Set when the cyclic prefix search hit its length bound.
    pub prefix_bound: Option<usize>,
}

impl fmt::Display for InconclusiveReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.failed.iter().map(|c| c.as_str()).collect();
        write!(f, "failed: {}", names.join(", "))?;
        if let Some(cap) = self.bpa_cap {
            write!(f, " (balanced pair cap {cap} reached)")?;
        }
        if let Some(b) = self.prefix_bound {
            write!(f, " (prefix bound {b} reached)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Evidence {
    pub checks: Vec<CheckResult>,
    /// `dim_Q` of the span of `⟨[u],ω⟩` and `⟨[v],ω⟩`.
    pub independence_rank: Option<usize>,
    pub bpa: Option<BpaVerdict>,
    pub witness: Option<CyclicEquivalenceWitness>,
    /// Number of witnesses tried before the verdict was reached.
    pub witnesses_tried: usize,
}

impl Evidence {
    fn record(&mut self, check: Check, passed: bool, detail: impl Into<String>) -> bool {
        self.checks.push(CheckResult { check, passed, detail: detail.into() });
        passed
    }

    pub fn passed(&self, check: Check) -> Option<bool> {
        self.checks.iter().rev().find(|c| c.check == check).map(|c| c.passed)
    }

    fn failed(&self) -> Vec<Check> {
        let mut out: Vec<Check> = self.checks.iter().filter(|c| !c.passed).map(|c| c.check).collect();
        out.dedup();
        out
    }
}

#[derive(Clone, Debug)]
pub struct PdsVerdict {
    pub kind: VerdictKind,
    pub rule: Rule,
    pub evidence: Evidence,
    pub reason: Option<InconclusiveReason>,
}

impl PdsVerdict {
    fn conclude(rule: Rule, evidence: Evidence) -> Self {
        let failed = evidence.failed();
        if failed.is_empty() {
            return PdsVerdict { kind: VerdictKind::PdsCertified, rule, evidence, reason: None };
        }
        let bpa_cap =
            evidence.bpa.as_ref().filter(|b| b.kind == BpaVerdictKind::CapExceeded).map(|b| b.diagnostics.cap);
        let reason = InconclusiveReason { failed, bpa_cap, prefix_bound: None };
        PdsVerdict { kind: VerdictKind::Inconclusive, rule, evidence, reason: Some(reason) }
    }
}

fn primitive_pisot(s: &Substitution) -> Result<PerronData, VerdictError> {
    if !s.is_primitive() {
        return Err(VerdictError::NotPrimitive);
    }
    let pd = perron_data(s.incidence())?;
    if !is_pisot(&pd.char_poly)? {
        return Err(VerdictError::NotPisot);
    }
    Ok(pd)
}

fn independence(pd: &PerronData, u: &[Letter], v: &[Letter], d: usize) -> Result<usize, VerdictError> {
    let lu = pd.pairing(&abelianize(u, d));
    let lv = pd.pairing(&abelianize(v, d));
    Ok(q_linear_rank_field(&[lu, lv])?)
}

fn record_bpa(ev: &mut Evidence, alphabet: &Alphabet, bpa: BpaVerdict) {
    let detail = format!(
        "{} from {} ({} nodes)",
        bpa.kind.as_str(),
        bpa.closure.seed.format(alphabet),
        bpa.diagnostics.node_count
    );
    ev.record(Check::BpaCoincidence, bpa.kind == BpaVerdictKind::TerminatesWithCoincidence, detail);
    ev.bpa = Some(bpa);
}

/// Certifies pure discrete spectrum from independence of `⟨[u],ω⟩`,
/// `⟨[v],ω⟩` and BPA termination on `(uv, vu)`.
pub fn theorem_uv_vu(s: &Substitution, u: &Word, v: &Word, cap: usize) -> Result<PdsVerdict, VerdictError> {
    let d = s.size();
    u.check(d)?;
    v.check(d)?;
    let pd = primitive_pisot(s)?;
    let mut ev = Evidence::default();
    ev.record(Check::Primitive, true, "incidence matrix is primitive");
    ev.record(Check::Pisot, true, format!("minimal polynomial {}", pd.minimal_polynomial));
    uv_vu_steps(&mut ev, s, &pd, u, v, cap)?;
    Ok(PdsVerdict::conclude(Rule::UvVu, ev))
}

fn uv_vu_steps(
    ev: &mut Evidence,
    s: &Substitution,
    pd: &PerronData,
    u: &Word,
    v: &Word,
    cap: usize,
) -> Result<(), VerdictError> {
    let d = s.size();
    let rank = independence(pd, u, v, d)?;
    ev.independence_rank = Some(rank);
    ev.record(Check::Independence, rank == 2, format!("rank {rank} over Q"));
    let seed = BalancedPair::new(u.concat(v), v.concat(u), d)?;
    record_bpa(ev, s.alphabet(), bpa_run(s, &seed, cap)?);
    Ok(())
}

/// Certifies pure discrete spectrum from an irreducible Pisot incidence
/// matrix and BPA termination on `(ab, ba)`.
pub fn corollary_ab_ba(s: &Substitution, a: Letter, b: Letter, cap: usize) -> Result<PdsVerdict, VerdictError> {
    if a == b {
        return Err(VerdictError::SameLetter);
    }
    let d = s.size();
    Word(vec![a, b]).check(d)?;
    if !s.is_primitive() {
        return Err(VerdictError::NotPrimitive);
    }
    let pd = perron_data(s.incidence())?;
    let mut ev = Evidence::default();
    ev.record(Check::Primitive, true, "incidence matrix is primitive");
    let irreducible = is_irreducible_over_q(&pd.char_poly)?.is_irreducible();
    ev.record(Check::CharPolyIrreducible, irreducible, format!("characteristic polynomial {}", pd.char_poly));
    let pisot = is_pisot(&pd.char_poly)?;
    ev.record(Check::Pisot, pisot, format!("minimal polynomial {}", pd.minimal_polynomial));
    // Recorded for the evidence trail; irreducibility already implies it.
    ev.independence_rank = Some(independence(&pd, &[a], &[b], d)?);
    let seed = BalancedPair::new(Word(vec![a, b]), Word(vec![b, a]), d)?;
    record_bpa(&mut ev, s.alphabet(), bpa_run(s, &seed, cap)?);
    Ok(PdsVerdict::conclude(Rule::AbBa, ev))
}

/// Arnoux–Rauzy route: build `σ_w`, find non-parallel cyclically
/// equivalent prefixes `P_i = uv`, `P_j = vu`, and run the `(uv, vu)` test
/// on each witness until one certifies.
pub fn ar_pipeline(w: &Word, d: usize, cap: usize, prefix_bound: Option<usize>) -> Result<PdsVerdict, VerdictError> {
    let s = ar_substitution(w, d)?;
    let pd = perron_data(s.incidence())?;
    let mut ev = Evidence::default();
    let irreducible = is_irreducible_over_q(&pd.char_poly)?.is_irreducible();
    ev.record(Check::CharPolyIrreducible, irreducible, format!("characteristic polynomial {}", pd.char_poly));
    let pisot = is_pisot(&pd.char_poly)?;
    ev.record(Check::Pisot, pisot, format!("minimal polynomial {}", pd.minimal_polynomial));
    let witnesses = match cyclically_equivalent_prefixes(&s, prefix_bound) {
        Ok(ws) => ws,
        Err(SubstitutionError::SearchBoundExceeded { i, j, bound }) => {
            ev.record(Check::NonParallelWitness, false, format!("no witness for ({i}, {j}) within {bound} letters"));
            let mut v = PdsVerdict::conclude(Rule::ArnouxRauzy, ev);
            if let Some(r) = v.reason.as_mut() {
                r.prefix_bound = Some(bound);
            }
            return Ok(v);
        }
        Err(e) => return Err(e.into()),
    };
    let verified = witnesses.iter().all(|x| x.verify(d));
    ev.record(
        Check::NonParallelWitness,
        verified && !witnesses.is_empty(),
        format!("{} letter pairs, all verified: {verified}", witnesses.len()),
    );
    let base = ev.checks.clone();
    let mut last = None;
    for (k, wit) in witnesses.iter().enumerate() {
        let mut trial = Evidence { checks: base.clone(), witnesses_tried: k + 1, ..Evidence::default() };
        trial.witness = Some(wit.clone());
        uv_vu_steps(&mut trial, &s, &pd, &wit.u, &wit.v, cap)?;
        let v = PdsVerdict::conclude(Rule::ArnouxRauzy, trial);
        if v.kind == VerdictKind::PdsCertified {
            return Ok(v);
        }
        last = Some(v);
    }
    Ok(last.unwrap_or_else(|| PdsVerdict::conclude(Rule::ArnouxRauzy, ev)))
}

const RAUZY_PAIRS: &str = include_str!("../data/rauzy_pairs.txt");

/// The reference list of irreducible non-coincidence pairs for the Rauzy family.
pub fn rauzy_pair_list() -> Vec<BalancedPair> {
    let alphabet = Alphabet::numeric(3).expect("three letters");
    RAUZY_PAIRS
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let (u, v) = l.split_once(' ').expect("two words per line");
            let u = alphabet.parse_word(u.trim()).expect("reference word");
            let v = alphabet.parse_word(v.trim()).expect("reference word");
            BalancedPair::new(u, v, 3).expect("reference pair is balanced")
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RauzyFamilyReport {
    pub composition: String,
    pub substitution: Substitution,
    pub bpa: BpaVerdict,
    /// Non-coincidence closure nodes whose pair and dual are both absent from the list.
    pub outside_list: Vec<BalancedPair>,
}

impl RauzyFamilyReport {
    pub fn terminates(&self) -> bool {
        self.bpa.kind == BpaVerdictKind::TerminatesWithCoincidence
    }

    pub fn contained(&self) -> bool {
        self.outside_list.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.terminates() && self.contained()
    }
}

/// Composes `τ_{c_1} ∘ ⋯ ∘ τ_{c_k}` from a word over `1..4`.
pub fn rauzy_composition(c: &str) -> Result<Substitution, VerdictError> {
    let mut letters = c.chars().peekable();
    if letters.peek().is_none() {
        return Err(VerdictError::EmptyComposition);
    }
    let mut acc: Option<Substitution> = None;
    for ch in letters {
        let t = ch
            .to_digit(10)
            .and_then(|i| builtins::rauzy_tau(i as usize))
            .ok_or(VerdictError::BadCompositionLetter(ch))?;
        acc = Some(match acc {
            None => t,
            Some(a) => a.compose(&t)?,
        });
    }
    Ok(acc.expect("nonempty"))
}

/// Runs BPA on `(12, 21)` for the composition and checks the closure
/// against the reference list.
pub fn rauzy_family_check(c: &str, cap: usize) -> Result<RauzyFamilyReport, VerdictError> {
    let s = rauzy_composition(c)?;
    let seed = BalancedPair::new(s.parse_word("12")?, s.parse_word("21")?, 3)?;
    let bpa = bpa_run(&s, &seed, cap)?;
    let list = rauzy_pair_list();
    let outside_list = bpa
        .closure
        .non_coincidence_pairs(true)
        .into_iter()
        .filter(|p| !list.contains(p) && !list.contains(&p.dual()))
        .collect();
    Ok(RauzyFamilyReport { composition: c.to_string(), substitution: s, bpa, outside_list })
}
