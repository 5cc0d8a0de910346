use std::fmt::Write as _;
use std::path::Path;

use pds_core::algebra::{is_irreducible_over_q, is_pisot, perron_data, FieldElement, Irreducibility};
use pds_core::apcomplex::{as_integer, check_gr_vs_returns};
use pds_core::balanced::{bpa_run, BalancedPair, BpaVerdict, BpaVerdictKind};
use pds_core::overlap::geometry::Vec2;
use pds_core::overlap::render::write_stage_svg;
use pds_core::overlap::{pds_verdict_2d, validate_substitution, GrCertificate, OverlapVerdict, OverlapVerdictKind};
use pds_core::substitution::{ar_substitution, Alphabet, Substitution, Word};
use pds_core::verdicts::{ar_pipeline, rauzy_family_check, theorem_uv_vu, PdsVerdict, VerdictKind};
use serde_json::{json, Value};

use crate::args::Global;
use crate::input::{load_1d, load_2d, parse_vector, split_pair};
use crate::CliError;

pub const EXIT_CLEAN: u8 = 0;
pub const EXIT_REFUTED: u8 = 1;
pub const EXIT_INCONCLUSIVE: u8 = 3;

/// Result of one command: exit code, human-readable text, structured data.
pub struct Report {
    pub code: u8,
    pub text: String,
    pub data: Value,
}

fn verdict_code(kind: VerdictKind) -> u8 {
    match kind {
        VerdictKind::PdsCertified => EXIT_CLEAN,
        VerdictKind::NotPdsCertified => EXIT_REFUTED,
        VerdictKind::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

fn bpa_code(kind: BpaVerdictKind) -> u8 {
    match kind {
        BpaVerdictKind::TerminatesWithCoincidence => EXIT_CLEAN,
        BpaVerdictKind::FiniteNoCoincidence => EXIT_REFUTED,
        BpaVerdictKind::CapExceeded => EXIT_INCONCLUSIVE,
    }
}

fn elements(xs: &[FieldElement]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

pub fn analyze(input: &str) -> Result<Report, CliError> {
    let s = load_1d(input)?;
    let m = s.incidence();
    let char_poly = m.char_poly()?;
    let irreducible = is_irreducible_over_q(&char_poly)?;
    let primitive = s.is_primitive();
    let mut text = String::new();
    let _ = writeln!(text, "substitution: {s}");
    let _ = writeln!(text, "incidence: {m}");
    let _ = writeln!(text, "primitive: {primitive}");
    let _ = writeln!(text, "char poly: {char_poly}");
    let _ = writeln!(text, "irreducible: {}", irreducible.is_irreducible());
    if let Irreducibility::Reducible(f) = &irreducible {
        let _ = writeln!(text, "  factor: {f}");
    }
    let mut data = json!({
        "substitution": s.to_string(),
        "incidence": m.to_string(),
        "primitive": primitive,
        "char_poly": char_poly.to_string(),
        "irreducible": irreducible.is_irreducible(),
    });
    if primitive {
        let pd = perron_data(m)?;
        let pisot = is_pisot(&pd.char_poly)?;
        let _ = writeln!(text, "minimal polynomial of λ: {}", pd.minimal_polynomial);
        let _ = writeln!(text, "Pisot: {pisot}");
        let _ = writeln!(text, "ω: [{}]", elements(&pd.omega).join(", "));
        data["minimal_polynomial"] = json!(pd.minimal_polynomial.to_string());
        data["pisot"] = json!(pisot);
        data["omega"] = json!(elements(&pd.omega));
    } else {
        let _ = writeln!(text, "Pisot: not evaluated (substitution is not primitive)");
        data["pisot"] = Value::Null;
    }
    Ok(Report { code: EXIT_CLEAN, text, data })
}

fn bpa_section(text: &mut String, alphabet: &Alphabet, bpa: &BpaVerdict, dual_quotient: bool) -> Value {
    let closure = &bpa.closure;
    let reach = closure.reaching_coincidence();
    let listed = closure.non_coincidence_pairs(dual_quotient);
    let _ = writeln!(text, "verdict: {}", bpa.kind.as_str());
    let _ = writeln!(
        text,
        "nodes: {} ({} coincidences), longest image word: {}",
        bpa.diagnostics.node_count, bpa.diagnostics.coincidence_count, bpa.diagnostics.longest_word
    );
    let quotient = if dual_quotient { ", duals identified" } else { "" };
    let _ = writeln!(text, "non-coincidence pairs ({}{quotient}):", listed.len());
    for p in &listed {
        let _ = writeln!(text, "  {}", p.format(alphabet));
    }
    let _ = writeln!(text, "reachability:");
    for (i, p) in closure.nodes.iter().enumerate() {
        let _ = writeln!(
            text,
            "  {i:>4}  depth {:>2}  {}  {}",
            closure.depth[i],
            if reach[i] { "reaches coincidence" } else { "no coincidence     " },
            p.format(alphabet)
        );
    }
    json!({
        "verdict": bpa.kind.as_str(),
        "node_count": bpa.diagnostics.node_count,
        "coincidence_count": bpa.diagnostics.coincidence_count,
        "cap": bpa.diagnostics.cap,
        "dual_quotient": dual_quotient,
        "non_coincidence_pairs": listed.iter().map(|p| p.format(alphabet)).collect::<Vec<_>>(),
        "nodes": closure.nodes.iter().enumerate().map(|(i, p)| json!({
            "pair": p.format(alphabet),
            "depth": closure.depth[i],
            "reaches_coincidence": reach[i],
            "successors": closure.edges[i],
        })).collect::<Vec<_>>(),
    })
}

pub fn bpa(input: &str, pair: &str, g: &Global) -> Result<Report, CliError> {
    let s = load_1d(input)?;
    let (u, v) = split_pair(pair)?;
    let seed = BalancedPair::new(s.parse_word(u)?, s.parse_word(v)?, s.size())?;
    let verdict = bpa_run(&s, &seed, g.cap_bpa)?;
    let mut text = format!("substitution: {s}\nseed: {}\n", seed.format(s.alphabet()));
    let data = bpa_section(&mut text, s.alphabet(), &verdict, g.dual_quotient);
    Ok(Report { code: bpa_code(verdict.kind), text, data })
}

fn verdict_report(s: &Substitution, v: &PdsVerdict, g: &Global, mut text: String, mut data: Value) -> Report {
    let _ = writeln!(text, "rule: {}", v.rule.as_str());
    let _ = writeln!(text, "verdict: {}", v.kind.as_str());
    if let Some(r) = &v.reason {
        let _ = writeln!(text, "reason: {r}");
    }
    let _ = writeln!(text, "checks:");
    for c in &v.evidence.checks {
        let _ = writeln!(text, "  [{}] {}: {}", if c.passed { "pass" } else { "FAIL" }, c.check.as_str(), c.detail);
    }
    if let Some(rank) = v.evidence.independence_rank {
        let _ = writeln!(text, "independence rank: {rank}");
    }
    data["rule"] = json!(v.rule.as_str());
    data["verdict"] = json!(v.kind.as_str());
    data["checks"] = json!(v
        .evidence
        .checks
        .iter()
        .map(|c| json!({"check": c.check.as_str(), "passed": c.passed, "detail": c.detail}))
        .collect::<Vec<_>>());
    data["independence_rank"] = json!(v.evidence.independence_rank);
    data["reason"] = match &v.reason {
        None => Value::Null,
        Some(r) => json!({
            "failed": r.failed.iter().map(|c| c.as_str()).collect::<Vec<_>>(),
            "bpa_cap": r.bpa_cap,
            "prefix_bound": r.prefix_bound,
        }),
    };
    if let Some(bpa) = &v.evidence.bpa {
        let _ = writeln!(text, "balanced pair closure from {}:", bpa.closure.seed.format(s.alphabet()));
        let mut section = String::new();
        data["bpa"] = bpa_section(&mut section, s.alphabet(), bpa, g.dual_quotient);
        for line in section.lines() {
            let _ = writeln!(text, "  {line}");
        }
    }
    Report { code: verdict_code(v.kind), text, data }
}

pub fn theorem_uvvu(input: &str, u: &str, v: &str, g: &Global) -> Result<Report, CliError> {
    let s = load_1d(input)?;
    let (uw, vw) = (s.parse_word(u)?, s.parse_word(v)?);
    let verdict = theorem_uv_vu(&s, &uw, &vw, g.cap_bpa)?;
    let text = format!("substitution: {s}\nu = {}, v = {}\n", s.format_word(&uw), s.format_word(&vw));
    let data = json!({"substitution": s.to_string(), "u": s.format_word(&uw), "v": s.format_word(&vw)});
    Ok(verdict_report(&s, &verdict, g, text, data))
}

pub fn ar(word: &str, d: usize, prefix_bound: Option<usize>, g: &Global) -> Result<Report, CliError> {
    let alphabet = Alphabet::numeric(d)?;
    let w: Word = alphabet.parse_word(word)?;
    let s = ar_substitution(&w, d)?;
    let verdict = ar_pipeline(&w, d, g.cap_bpa, prefix_bound)?;
    let det = s.incidence().det()?;
    let mut text = format!("σ_{word}: {s}\nincidence determinant: {det}\n");
    let mut data = json!({"word": word, "d": d, "substitution": s.to_string(), "incidence_det": det.to_string()});
    if let Some(wit) = &verdict.evidence.witness {
        let fw = |x: &Word| s.format_word(x);
        let _ = writeln!(
            text,
            "witness: P_{} = {}·{}, P_{} = {}·{} (verified: {})",
            alphabet.name(wit.i),
            fw(&wit.u),
            fw(&wit.v),
            alphabet.name(wit.j),
            fw(&wit.v),
            fw(&wit.u),
            wit.verify(d)
        );
        data["witness"] = json!({
            "i": alphabet.name(wit.i), "j": alphabet.name(wit.j),
            "u": fw(&wit.u), "v": fw(&wit.v), "verified": wit.verify(d),
        });
    }
    let _ = writeln!(text, "witnesses tried: {}", verdict.evidence.witnesses_tried);
    data["witnesses_tried"] = json!(verdict.evidence.witnesses_tried);
    Ok(verdict_report(&s, &verdict, g, text, data))
}

pub fn rauzy_family(c: &str, g: &Global) -> Result<Report, CliError> {
    let r = rauzy_family_check(c, g.cap_bpa)?;
    let s = &r.substitution;
    let mut text = format!("composition {c}: {s}\nseed: (12, 21)\n");
    let mut data = json!({"composition": c, "substitution": s.to_string()});
    data["bpa"] = bpa_section(&mut text, s.alphabet(), &r.bpa, g.dual_quotient);
    let outside: Vec<String> = r.outside_list.iter().map(|p| p.format(s.alphabet())).collect();
    if outside.is_empty() {
        let _ = writeln!(text, "containment: every non-coincidence pair is in the reference list up to duality");
    } else {
        let _ = writeln!(text, "containment: FAILED, pairs outside the reference list:");
        for p in &outside {
            let _ = writeln!(text, "  {p}");
        }
    }
    data["contained"] = json!(outside.is_empty());
    data["outside_list"] = json!(outside);
    let code = match r.bpa.kind {
        BpaVerdictKind::CapExceeded => EXIT_INCONCLUSIVE,
        _ if r.passed() => EXIT_CLEAN,
        _ => EXIT_REFUTED,
    };
    Ok(Report { code, text, data })
}

pub fn apcomplex(input: &str, k: u32, collar: usize, depth: usize) -> Result<Report, CliError> {
    let s = load_1d(input)?;
    let r = check_gr_vs_returns(&s, k, depth, collar)?;
    let show = |x: &FieldElement| as_integer(x).map_or_else(|| x.to_string(), |n| n.to_string());
    let mut text = String::new();
    let _ = writeln!(text, "substitution: {s}");
    let _ = writeln!(text, "collaring passes: {collar}");
    let _ = writeln!(text, "graph: {} vertices, {} edges", r.vertices, r.collared_letters);
    let _ = writeln!(text, "H1 rank: {}", r.h1_rank);
    let _ = writeln!(text, "GR: {}", r.gr.describe());
    let _ = writeln!(text, "f_*: {}", r.f_star.matrix);
    let _ = writeln!(text, "product of nonzero eigenvalues of f_*: {}", r.eigenvalue_product);
    let _ = writeln!(text, "unimodular: {}", r.unimodular());
    let _ = writeln!(text, "return vectors sampled: {} (words of length {depth})", r.samples.len());
    if r.failures.is_empty() {
        let _ = writeln!(text, "λ^k·v ∈ GR for every sample and |k| ≤ {k}");
    } else {
        let _ = writeln!(text, "failures (λ^k·v ∉ GR):");
        for f in &r.failures {
            let _ = writeln!(text, "  v = {}, k = {}: {}", show(&f.return_vector), f.k, show(&f.value));
        }
    }
    let data = json!({
        "substitution": s.to_string(),
        "collar_passes": collar,
        "vertices": r.vertices,
        "edges": r.collared_letters,
        "h1_rank": r.h1_rank,
        "gr": r.gr.describe(),
        "gr_basis": r.gr.basis().iter().map(show).collect::<Vec<_>>(),
        "f_star": r.f_star.matrix.to_string(),
        "eigenvalue_product": r.eigenvalue_product.to_string(),
        "unimodular": r.unimodular(),
        "k_max": k,
        "samples": r.samples.iter().map(show).collect::<Vec<_>>(),
        "failures": r.failures.iter().map(|f| json!({
            "return_vector": show(&f.return_vector), "k": f.k, "value": show(&f.value),
        })).collect::<Vec<_>>(),
    });
    let code = if r.failures.is_empty() { EXIT_CLEAN } else { EXIT_REFUTED };
    Ok(Report { code, text, data })
}

fn overlap_code(kind: OverlapVerdictKind) -> u8 {
    match kind {
        OverlapVerdictKind::SufficientForPds => EXIT_CLEAN,
        OverlapVerdictKind::RefutesPds => EXIT_REFUTED,
        OverlapVerdictKind::Inconclusive | OverlapVerdictKind::CapExceeded => EXIT_INCONCLUSIVE,
    }
}

fn overlap_data(v: &OverlapVerdict, shift: &Vec2) -> Value {
    let g = &v.graph;
    json!({
        "verdict": v.kind.as_str(),
        "pds": v.pds_kind().as_str(),
        "v": shift.to_string(),
        "independence": {
            "coefficients": v.independence.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "rank": v.independence.rank,
        },
        "gr_certificate": v.gr_certificate.as_ref().map(|c| c.statement.clone()),
        "classes": g.nodes.len(),
        "coincidences": g.coincidences().len(),
        "complete": g.complete,
        "stages": g.stages.iter().map(|s| s.len()).collect::<Vec<_>>(),
        "new_per_stage": (0..g.stages.len()).map(|k| g.new_at_stage(k).len()).collect::<Vec<_>>(),
        "stabilization_depth": g.stabilization_depth,
        "max_distance": v.max_distance(),
        "non_reaching": v.non_reaching().len(),
    })
}

pub fn overlap2d(
    input: &str,
    v: Option<&str>,
    certificate: Option<&str>,
    svg: Option<&Path>,
    svg_max_stage: usize,
    g: &Global,
) -> Result<Report, CliError> {
    let file = load_2d(input)?;
    let ps = &file.substitution;
    validate_substitution(ps).map_err(|e| CliError::InvalidPlanar(e.to_string()))?;
    let tiling = file.tiling.as_ref().ok_or(CliError::MissingTiling)?;
    let shift = match v {
        Some(text) => parse_vector(text, ps.d)?,
        None => file.v.clone().ok_or(CliError::MissingShift)?,
    };
    // A bundled certificate speaks only about the bundled shift.
    let bundled = file.gr_certificate.clone().filter(|_| file.v.as_ref() == Some(&shift));
    let gr = certificate.map(|s| GrCertificate { statement: s.to_string() }).or(bundled);
    let verdict = pds_verdict_2d(ps, tiling, &shift, gr, g.cap_overlap)?;
    let data = overlap_data(&verdict, &shift);
    let graph = &verdict.graph;
    let mut text = String::new();
    let field = if ps.d == 1 { "Q".to_string() } else { format!("Q(√{})", ps.d) };
    let _ = writeln!(text, "prototiles: {}, field {field}", ps.prototiles.len());
    let _ = writeln!(text, "v = {shift}");
    let [a1, a2] = &verdict.independence.coefficients;
    let _ = writeln!(
        text,
        "v = ({a1})·v1 + ({a2})·v2, rank over Q {}: completely rationally independent: {}",
        verdict.independence.rank,
        verdict.independence.holds()
    );
    match &verdict.gr_certificate {
        Some(c) => {
            let _ = writeln!(text, "return vector certificate: {}", c.statement);
        }
        None => {
            let _ = writeln!(text, "return vector certificate: none");
        }
    }
    let _ = writeln!(text, "overlap classes: {} ({} coincidences)", graph.nodes.len(), graph.coincidences().len());
    for (k, stage) in graph.stages.iter().enumerate() {
        let _ = writeln!(text, "  stage {k}: {} classes, {} new", stage.len(), graph.new_at_stage(k).len());
    }
    match graph.stabilization_depth {
        Some(d) => {
            let _ = writeln!(text, "no new classes from stage {d}");
        }
        None => {
            let _ = writeln!(text, "closure stopped at the cap of {} classes", g.cap_overlap);
        }
    }
    if graph.complete {
        match verdict.max_distance() {
            Some(m) if verdict.all_reach_coincidence() => {
                let _ = writeln!(text, "every class reaches a coincidence within {m} inflations");
            }
            _ => {
                let _ = writeln!(text, "{} classes never reach a coincidence", verdict.non_reaching().len());
            }
        }
    }
    let _ = writeln!(text, "verdict: {}", verdict.kind.as_str());
    if let Some(dir) = svg {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io { path: dir.display().to_string(), message: e.to_string() })?;
        for k in 0..=svg_max_stage {
            let path = dir.join(format!("stage_{k}.svg"));
            write_stage_svg(&path, ps, tiling, &shift, k)
                .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
            let _ = writeln!(text, "wrote {}", path.display());
        }
    }
    Ok(Report { code: overlap_code(verdict.kind), text, data })
}
