//! Deterministic SVG pictures of `Φ^k(Q̄)` against `Φ^k(Q̄ − v)`.
//!
//! Coordinates are printed as decimals for display only.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io;
use std::path::Path;

use super::geometry::{interiors_intersect, Vec2};
use super::{PeriodicTiling, PlanarSubstitution};

/// Tiles of `Φ^k` applied to the given placed tiles.
pub fn inflate(ps: &PlanarSubstitution, tiles: &[(usize, Vec2)], k: usize) -> Vec<(usize, Vec2)> {
    let mut current = tiles.to_vec();
    for _ in 0..k {
        current = current.iter().flat_map(|(t, p)| ps.substitute(*t, p)).collect();
    }
    current.sort();
    current
}

/// `Φ^k(Q)` outlined, `Φ^k` of the tiles of `Q̄ − v` meeting `Q` filled, and
/// tiles common to both highlighted.
pub fn render_stage(ps: &PlanarSubstitution, t: &PeriodicTiling, v: &Vec2, k: usize) -> String {
    let patch = &t.patch;
    let mut shifted = Vec::new();
    for (tb, pb) in patch {
        for k1 in -2..=2 {
            for k2 in -2..=2 {
                let pos = &(pb + &t.lattice_point(k1, k2)) - v;
                let poly = ps.placed(*tb, &pos);
                if patch.iter().any(|(ta, pa)| interiors_intersect(&ps.placed(*ta, pa), &poly)) {
                    shifted.push((*tb, pos));
                }
            }
        }
    }
    let base = inflate(ps, patch, k);
    let moved = inflate(ps, &shifted, k);
    render_tiles(ps, &base, &moved)
}

/// SVG of two tile layers. The first is outlined, the second filled, and
/// tiles present in both are highlighted.
pub fn render_tiles(ps: &PlanarSubstitution, outlined: &[(usize, Vec2)], filled: &[(usize, Vec2)]) -> String {
    let first: BTreeSet<&(usize, Vec2)> = outlined.iter().collect();
    let second: BTreeSet<&(usize, Vec2)> = filled.iter().collect();
    let polys = |tiles: &[(usize, Vec2)]| -> Vec<(bool, Vec<(f64, f64)>)> {
        tiles
            .iter()
            .map(|tile| {
                let common = first.contains(tile) && second.contains(tile);
                (common, ps.placed(tile.0, &tile.1).iter().map(Vec2::to_f64).collect())
            })
            .collect()
    };
    let outline = polys(outlined);
    let fill = polys(filled);
    let points: Vec<(f64, f64)> = outline.iter().chain(&fill).flat_map(|(_, p)| p.iter().copied()).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 1.0f64, 1.0f64);
    if let Some(&(x, y)) = points.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
        for &(x, y) in &points {
            x0 = x0.min(x);
            y0 = y0.min(y);
            x1 = x1.max(x);
            y1 = y1.max(y);
        }
    }
    let margin = 0.05 * (x1 - x0).max(y1 - y0).max(1.0);
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let stroke = 0.004 * w.max(h);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{:.6} {:.6} {:.6} {:.6}" width="800" height="{:.0}">"#,
        x0 - margin,
        -(y1 + margin),
        w,
        h,
        800.0 * h / w
    );
    let path = |poly: &[(f64, f64)]| -> String {
        poly.iter().map(|(x, y)| format!("{:.6},{:.6}", x, -y)).collect::<Vec<_>>().join(" ")
    };
    let _ = writeln!(svg, r#"<g id="shifted" stroke="none">"#);
    for (common, p) in &fill {
        let colour = if *common { "#4caf50" } else { "#e53935" };
        let _ = writeln!(svg, r#"<polygon points="{}" fill="{colour}" fill-opacity="0.45"/>"#, path(p));
    }
    let _ = writeln!(svg, "</g>");
    let _ = writeln!(svg, r#"<g id="patch" fill="none" stroke="black" stroke-width="{stroke:.6}">"#);
    for (_, p) in &outline {
        let _ = writeln!(svg, r#"<polygon points="{}"/>"#, path(p));
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    svg
}

pub fn write_stage_svg(path: &Path, ps: &PlanarSubstitution, t: &PeriodicTiling, v: &Vec2, k: usize) -> io::Result<()> {
    std::fs::write(path, render_stage(ps, t, v, k))
}

#[cfg(test)]
mod tests {
    use super::super::builtins::{octagonal, table};
    use super::*;

    #[test]
    fn empty_canvas() {
        let b = table();
        let svg = render_tiles(&b.substitution, &[], &[]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<polygon"));
    }

    #[test]
    fn deterministic_table_stage() {
        let b = table();
        let one = render_stage(&b.substitution, &b.tiling, &b.v, 1);
        let two = render_stage(&b.substitution, &b.tiling, &b.v, 1);
        assert_eq!(one, two);
        assert_eq!(one.matches("<polygon").count(), 4 + 2 * 4);
    }

    #[test]
    fn octagonal_stage_two_highlights_coincidences() {
        let b = octagonal();
        let svg = render_stage(&b.substitution, &b.tiling, &b.v, 2);
        assert!(svg.contains("#4caf50"));
        assert!(svg.contains("#e53935"));
    }
}
