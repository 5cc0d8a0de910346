use std::path::Path;

use pds_core::algebra::{check_square_free, QuadraticElement as Qe};
use pds_core::overlap::builtins as planar;
use pds_core::overlap::geometry::Vec2;
use pds_core::overlap::io::{parse_planar, PlanarFile};
use pds_core::substitution::io::parse_substitution;
use pds_core::substitution::{builtins, Substitution};

use crate::CliError;

/// A built-in one-dimensional substitution, or a JSON file.
pub fn load_1d(input: &str) -> Result<Substitution, CliError> {
    if let Some(s) = builtins::by_name(input) {
        return Ok(s);
    }
    if planar::by_name(input).is_some() {
        return Err(CliError::WrongDimension { name: input.to_string(), expected: "one-dimensional" });
    }
    let text = read(input)?;
    parse_substitution(&text).map_err(|e| CliError::Parse { path: input.to_string(), message: e.to_string() })
}

/// A built-in planar substitution, or a JSON file.
pub fn load_2d(input: &str) -> Result<PlanarFile, CliError> {
    if let Some(e) = planar::by_name(input) {
        return Ok(e.into());
    }
    if builtins::by_name(input).is_some() {
        return Err(CliError::WrongDimension { name: input.to_string(), expected: "planar" });
    }
    let text = read(input)?;
    parse_planar(&text).map_err(|e| CliError::Parse { path: input.to_string(), message: e.to_string() })
}

fn read(input: &str) -> Result<String, CliError> {
    let path = Path::new(input);
    if !path.exists() {
        return Err(CliError::UnknownInput(input.to_string()));
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: input.to_string(), message: e.to_string() })
}

/// `X,Y`, each coordinate `a` or `a:b` meaning `a + b√d`.
pub fn parse_vector(text: &str, d: u32) -> Result<Vec2, CliError> {
    check_square_free(d).map_err(|e| CliError::BadVector(e.to_string()))?;
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let [x, y] = parts.as_slice() else {
        return Err(CliError::BadVector(format!("expected X,Y, got {text:?}")));
    };
    let coord = |c: &str| -> Result<Qe, CliError> {
        let (a, b) = c.split_once(':').unwrap_or((c, "0"));
        Qe::parse(a.trim(), b.trim(), d).map_err(|e| CliError::BadVector(e.to_string()))
    };
    Ok(Vec2::new(coord(x)?, coord(y)?))
}

/// `U,V` as two words.
pub fn split_pair(text: &str) -> Result<(&str, &str), CliError> {
    text.split_once(',').map(|(u, v)| (u.trim(), v.trim())).ok_or_else(|| CliError::BadPair(text.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pds_core::algebra::BigRational;

    #[test]
    fn vectors() {
        let v = parse_vector("1:-1/2, 0:1/2", 2).unwrap();
        let h = Qe::new(BigRational::from_integer(0.into()), BigRational::new(1.into(), 2.into()), 2).unwrap();
        assert_eq!(v, Vec2::new(&Qe::one(2) - &h, h));
        assert_eq!(parse_vector("1,0", 1).unwrap(), Vec2::from_ints(1, 0, 1));
        assert!(parse_vector("1", 2).is_err());
        assert!(parse_vector("x,0", 2).is_err());
    }

    #[test]
    fn inputs() {
        assert!(load_1d("fibonacci").is_ok());
        assert!(matches!(load_1d("table"), Err(CliError::WrongDimension { .. })));
        assert!(matches!(load_2d("rauzy"), Err(CliError::WrongDimension { .. })));
        assert!(matches!(load_1d("no-such-thing"), Err(CliError::UnknownInput(_))));
        assert_eq!(split_pair("12,21").unwrap(), ("12", "21"));
        assert!(split_pair("12").is_err());
    }
}
