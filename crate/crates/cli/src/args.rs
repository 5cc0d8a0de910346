use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pds_core::apcomplex::{DEFAULT_COLLAR_PASSES, DEFAULT_RETURN_DEPTH};
use pds_core::balanced::DEFAULT_BPA_CAP;
use pds_core::overlap::DEFAULT_OVERLAP_CAP;

/// Exact certificates for pure discrete spectrum of substitution tilings.
///
/// INPUT is a built-in name (fibonacci, thue-morse, period-doubling, rauzy,
/// tau2, tau3, tau4, octagonal, table) or a path to a JSON file.
///
/// Exit codes: 0 certified or clean, 1 refuted or no coincidence, 2 input
/// error, 3 inconclusive or cap reached.
#[derive(Debug, Parser)]
#[command(name = "pds", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Node cap for the balanced pair closure.
    #[arg(long, global = true, default_value_t = DEFAULT_BPA_CAP, value_parser = positive)]
    pub cap_bpa: usize,
    /// Class cap for the planar overlap closure.
    #[arg(long, global = true, default_value_t = DEFAULT_OVERLAP_CAP, value_parser = positive)]
    pub cap_overlap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Identify balanced pairs with their duals in closure listings.
    #[arg(long, global = true)]
    pub dual_quotient: bool,
    /// Include wall-clock timings (makes output run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Incidence matrix, primitivity, characteristic polynomial, Pisot test, ω.
    Analyze { input: String },
    /// Balanced pair algorithm from a seed pair.
    Bpa {
        input: String,
        /// Seed pair as U,V.
        #[arg(long)]
        pair: String,
    },
    /// Certificate from independent ⟨[u],ω⟩, ⟨[v],ω⟩ and BPA on (uv, vu).
    #[command(name = "theorem-uvvu")]
    TheoremUvVu {
        input: String,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Arnoux–Rauzy pipeline for the directive word W over {1..D}.
    Ar {
        #[arg(long)]
        word: String,
        #[arg(long)]
        d: usize,
        /// Longest fixed-word prefix searched for a cyclic equivalence.
        #[arg(long, value_parser = positive)]
        prefix_bound: Option<usize>,
    },
    /// BPA on (12, 21) for a composition of τ1..τ4, checked against the
    /// reference pair list. C = "42" means τ4∘τ2.
    #[command(name = "rauzy-family")]
    RauzyFamily {
        #[arg(long)]
        c: String,
    },
    /// Anderson–Putnam graph, GR, f_* and returns scaled by λ^k, |k| ≤ K.
    Apcomplex {
        input: String,
        #[arg(long = "K", short = 'K')]
        k: u32,
        /// Collaring passes; 0 uses the tiles themselves.
        #[arg(long, default_value_t = DEFAULT_COLLAR_PASSES, value_parser = collar_passes)]
        collar: usize,
        /// Length of the legal words sampled for return vectors.
        #[arg(long, default_value_t = DEFAULT_RETURN_DEPTH)]
        depth: usize,
    },
    /// Planar overlap-coincidence test.
    Overlap2d {
        input: String,
        /// Shift as X,Y; each coordinate is `a` or `a:b` for a + b√d, with
        /// rationals written p/q.
        #[arg(long, allow_hyphen_values = true)]
        v: Option<String>,
        /// Assert that the shift is a generalized return vector.
        #[arg(long)]
        gr_certificate: Option<String>,
        /// Write stage_K.svg files into this directory.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Last stage drawn when --svg is given.
        #[arg(long, default_value_t = 2)]
        svg_max_stage: usize,
    },
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn collar_passes(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n <= 2 => Ok(n),
        Ok(_) => Err("at most 2 collaring passes are supported".into()),
        Err(e) => Err(e.to_string()),
    }
}
