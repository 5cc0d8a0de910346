//! Named one-dimensional substitutions.

use super::Substitution;

pub fn fibonacci() -> Substitution {
    Substitution::from_rules(&[("a", "ab"), ("b", "a")]).expect("valid rule")
}

pub fn thue_morse() -> Substitution {
    Substitution::from_rules(&[("a", "ab"), ("b", "ba")]).expect("valid rule")
}

pub fn period_doubling() -> Substitution {
    Substitution::from_rules(&[("a", "ab"), ("b", "aa")]).expect("valid rule")
}

/// Rauzy (`τ1`) and modified Rauzy (`τ2..τ4`) substitutions on `{1,2,3}`.
pub fn rauzy_tau(i: usize) -> Option<Substitution> {
    let rules: [(&str, &str); 3] = match i {
        1 => [("1", "12"), ("2", "13"), ("3", "1")],
        2 => [("1", "12"), ("2", "31"), ("3", "1")],
        3 => [("1", "21"), ("2", "13"), ("3", "1")],
        4 => [("1", "21"), ("2", "31"), ("3", "1")],
        _ => return None,
    };
    Some(Substitution::from_rules(&rules).expect("valid rule"))
}

/// Registry names of the one-dimensional built-ins.
pub const NAMES: [&str; 7] = ["fibonacci", "thue-morse", "period-doubling", "rauzy", "tau2", "tau3", "tau4"];

pub fn by_name(name: &str) -> Option<Substitution> {
    match name {
        "fibonacci" => Some(fibonacci()),
        "thue-morse" => Some(thue_morse()),
        "period-doubling" => Some(period_doubling()),
        "rauzy" | "tau1" => rauzy_tau(1),
        "tau2" => rauzy_tau(2),
        "tau3" => rauzy_tau(3),
        "tau4" => rauzy_tau(4),
        _ => None,
    }
}
