//! JSON encoding of planar substitutions. Numbers are strings `"p/q"`
//! and each coordinate is a pair `["a", "b"]` meaning `a + b√d`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::builtins::PlanarExample;
use super::geometry::{Matrix2, Vec2};
use super::{GrCertificate, OverlapError, PeriodicTiling, PlanarPrototile, PlanarSubstitution, RuleTile};
use crate::algebra::{rational_string, AlgebraError, QuadraticElement as Qe};

#[derive(Debug, Error)]
pub enum PlanarIoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Number(#[from] AlgebraError),
    #[error(transparent)]
    Structure(#[from] OverlapError),
    #[error("{0}")]
    Missing(&'static str),
}

type RawElement = [String; 2];
type RawVec = [RawElement; 2];

#[derive(Serialize, Deserialize)]
struct RawPrototile {
    id: usize,
    label: String,
    vertices: Vec<RawVec>,
}

#[derive(Serialize, Deserialize)]
struct RawRuleTile {
    tile: usize,
    translation: RawVec,
}

#[derive(Serialize, Deserialize)]
struct RawPlaced {
    tile: usize,
    position: RawVec,
}

#[derive(Serialize, Deserialize)]
struct RawTiling {
    patch: Vec<RawPlaced>,
    lattice: [RawVec; 2],
}

#[derive(Serialize, Deserialize)]
struct RawPlanar {
    field_d: u32,
    prototiles: Vec<RawPrototile>,
    expansion: [[RawElement; 2]; 2],
    rules: Vec<Vec<RawRuleTile>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tiling: Option<RawTiling>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    v: Option<RawVec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gr_certificate: Option<String>,
}

/// A planar substitution file: the substitution plus optional defaults for
/// the overlap test.
#[derive(Clone, Debug)]
pub struct PlanarFile {
    pub substitution: PlanarSubstitution,
    pub tiling: Option<PeriodicTiling>,
    pub v: Option<Vec2>,
    pub gr_certificate: Option<GrCertificate>,
}

impl From<PlanarExample> for PlanarFile {
    fn from(e: PlanarExample) -> Self {
        PlanarFile {
            substitution: e.substitution,
            tiling: Some(e.tiling),
            v: Some(e.v),
            gr_certificate: e.gr_certificate,
        }
    }
}

fn element(raw: &RawElement, d: u32) -> Result<Qe, AlgebraError> {
    Qe::parse(&raw[0], &raw[1], d)
}

fn vector(raw: &RawVec, d: u32) -> Result<Vec2, AlgebraError> {
    Ok(Vec2::new(element(&raw[0], d)?, element(&raw[1], d)?))
}

fn raw_element(q: &Qe) -> RawElement {
    let [a, b] = q.rational_coords();
    [rational_string(&a), rational_string(&b)]
}

fn raw_vector(v: &Vec2) -> RawVec {
    [raw_element(&v.x), raw_element(&v.y)]
}

pub fn parse_planar(text: &str) -> Result<PlanarFile, PlanarIoError> {
    let raw: RawPlanar = serde_json::from_str(text)?;
    let d = raw.field_d;
    crate::algebra::check_square_free(d)?;
    let prototiles = raw
        .prototiles
        .iter()
        .map(|p| {
            Ok(PlanarPrototile {
                id: p.id,
                label: p.label.clone(),
                polygon: p.vertices.iter().map(|v| vector(v, d)).collect::<Result<_, AlgebraError>>()?,
            })
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let e = &raw.expansion;
    let expansion =
        Matrix2 { m: [[element(&e[0][0], d)?, element(&e[0][1], d)?], [element(&e[1][0], d)?, element(&e[1][1], d)?]] };
    let rules = raw
        .rules
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| Ok(RuleTile { tile: t.tile, translation: vector(&t.translation, d)? }))
                .collect::<Result<Vec<_>, AlgebraError>>()
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let substitution = PlanarSubstitution::new(d, prototiles, expansion, rules)?;
    let tiling = match &raw.tiling {
        None => None,
        Some(t) => Some(PeriodicTiling {
            patch: t
                .patch
                .iter()
                .map(|p| Ok((p.tile, vector(&p.position, d)?)))
                .collect::<Result<_, AlgebraError>>()?,
            lattice: [vector(&t.lattice[0], d)?, vector(&t.lattice[1], d)?],
        }),
    };
    let v = raw.v.as_ref().map(|v| vector(v, d)).transpose()?;
    let gr_certificate = raw.gr_certificate.map(|statement| GrCertificate { statement });
    Ok(PlanarFile { substitution, tiling, v, gr_certificate })
}

pub fn to_json(file: &PlanarFile) -> String {
    let ps = &file.substitution;
    let m = &ps.expansion.m;
    let raw = RawPlanar {
        field_d: ps.d,
        prototiles: ps
            .prototiles
            .iter()
            .map(|p| RawPrototile {
                id: p.id,
                label: p.label.clone(),
                vertices: p.polygon.iter().map(raw_vector).collect(),
            })
            .collect(),
        expansion: [[raw_element(&m[0][0]), raw_element(&m[0][1])], [raw_element(&m[1][0]), raw_element(&m[1][1])]],
        rules: ps
            .rules
            .iter()
            .map(|r| r.iter().map(|t| RawRuleTile { tile: t.tile, translation: raw_vector(&t.translation) }).collect())
            .collect(),
        tiling: file.tiling.as_ref().map(|t| RawTiling {
            patch: t.patch.iter().map(|(tile, p)| RawPlaced { tile: *tile, position: raw_vector(p) }).collect(),
            lattice: [raw_vector(&t.lattice[0]), raw_vector(&t.lattice[1])],
        }),
        v: file.v.as_ref().map(raw_vector),
        gr_certificate: file.gr_certificate.as_ref().map(|c| c.statement.clone()),
    };
    serde_json::to_string_pretty(&raw).expect("plain data serializes")
}
