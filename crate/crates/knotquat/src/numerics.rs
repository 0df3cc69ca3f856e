//! Sampling the real variety and tabulating the `y / (1 − x²)` profile.

use std::io::Write;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::classify::{classify_point, Region};
use crate::error::{Error, Result};
use crate::polyalg::{rational_from_f64, real_roots, Ideal, Point, Poly, UniPoly, Var};

/// Width of the isolating intervals used for sampled roots.
pub const ROOT_EPS: f64 = 1e-12;
/// Profile values are omitted when `|1 − x²|` is below this.
pub const PROFILE_CUTOFF: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BranchPoint {
    pub y: f64,
    pub branch: usize,
    pub region: Region,
    /// `y / (1 − x²)`, absent near `|x| = 1`.
    pub profile: Option<f64>,
}

/// The real points of the variety over one grid abscissa.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveSample {
    pub x: f64,
    /// Branches in ascending `y`.
    pub points: Vec<BranchPoint>,
}

impl CurveSample {
    pub fn y_branches(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.y).collect()
    }
}

fn y_poly_at(g: &Poly, x: &BigRational) -> Result<UniPoly> {
    g.univariate_in(Var::Y, &Point::new().with(Var::X, x.clone()))
}

fn roots_of(u: &UniPoly) -> Result<Vec<f64>> {
    if u.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let b = u.cauchy_bound();
    Ok(real_roots(u, &-b.clone(), &b, ROOT_EPS)?.iter().map(|r| r.to_f64()).collect())
}

fn check_plane_ideal(ideal: &Ideal) -> Result<()> {
    if ideal.involves(Var::S) || ideal.is_empty() {
        return Err(Error::UnsupportedIdeal);
    }
    Ok(())
}

/// Real `y` with `g(x, y) = 0` for every generator, at an exact abscissa.
///
/// Generators vanishing identically at `x` are ignored; roots of the others
/// are intersected within `eps`.
pub fn branches_at(ideal: &Ideal, x: &BigRational, eps: f64) -> Result<Vec<f64>> {
    check_plane_ideal(ideal)?;
    let mut sets = Vec::new();
    for g in ideal.gens() {
        let u = y_poly_at(g, x)?;
        if u.is_zero() {
            continue;
        }
        sets.push(roots_of(&u)?);
    }
    let Some((first, rest)) = sets.split_first() else {
        return Ok(Vec::new());
    };
    Ok(first
        .iter()
        .copied()
        .filter(|y| rest.iter().all(|s| s.iter().any(|r| (r - y).abs() <= eps)))
        .collect())
}

/// Largest `|g(x, y)|` over the generators.
pub fn ideal_residual(ideal: &Ideal, x: f64, y: f64) -> Result<f64> {
    let pt = Point::xy(x, y).with(Var::S, 0.0);
    let mut worst: f64 = 0.0;
    for g in ideal.gens() {
        worst = worst.max(g.eval_f64(&pt)?.abs());
    }
    Ok(worst)
}

/// Real `y` on the variety over a decimal `x`, within residual `tol`.
///
/// Besides exact roots this keeps critical points of `y ↦ g(x, y)` where the
/// residual is below `tol`, so that a tangency is found even when `x` is a
/// rounded value just outside the real curve.
pub fn solve_y(ideal: &Ideal, x: f64, tol: f64) -> Result<Vec<f64>> {
    check_plane_ideal(ideal)?;
    let xr = rational_from_f64(x).ok_or_else(|| Error::Argument(format!("x = {x} is not finite")))?;
    let mut candidates = Vec::new();
    for g in ideal.gens() {
        let u = y_poly_at(g, &xr)?;
        if u.is_zero() {
            continue;
        }
        candidates.extend(roots_of(&u)?);
        let du = u.derivative();
        if !du.is_zero() {
            candidates.extend(roots_of(&du)?);
        }
    }
    candidates.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::new();
    for y in candidates {
        if ideal_residual(ideal, x, y)? > tol {
            continue;
        }
        if out.last().is_some_and(|last| (y - last).abs() <= 1e-9) {
            continue;
        }
        out.push(y);
    }
    Ok(out)
}

fn profile(x: f64, y: f64) -> Option<f64> {
    let u = 1.0 - x * x;
    (u.abs() >= PROFILE_CUTOFF).then(|| y / u)
}

/// Samples the curve on `x_min, x_min + step, …, ≤ x_max`.
///
/// Grid abscissae are exact decimal rationals. Branch ids follow the nearest
/// `y` at the previous abscissa; unmatched roots start new branches.
pub fn sample_variety(ideal: &Ideal, x_min: f64, x_max: f64, step: f64, eps: f64) -> Result<Vec<CurveSample>> {
    check_plane_ideal(ideal)?;
    if !(step > 0.0) || !step.is_finite() {
        return Err(Error::Argument(format!("step must be positive, got {step}")));
    }
    let to_rat = |v: f64| rational_from_f64(v).ok_or_else(|| Error::Argument(format!("{v} is not finite")));
    let (lo, hi, h) = (to_rat(x_min)?, to_rat(x_max)?, to_rat(step)?);
    if lo > hi {
        return Err(Error::Argument(format!("x range is empty: {x_min} > {x_max}")));
    }
    let n = ((&hi - &lo) / &h).floor().to_integer().to_u64().ok_or_else(|| Error::Argument("grid too large".into()))?;
    let mut out = Vec::new();
    let mut prev: Vec<(f64, usize)> = Vec::new();
    let mut next_id = 0;
    for i in 0..=n {
        let xr = &lo + &h * BigRational::from_integer(i.into());
        let x = xr.to_f64().unwrap_or(f64::NAN);
        let ys = branches_at(ideal, &xr, eps)?;
        let ids = assign_branches(&prev, &ys, &mut next_id);
        let points: Vec<BranchPoint> = ys
            .iter()
            .zip(&ids)
            .map(|(&y, &branch)| BranchPoint {
                y,
                branch,
                region: classify_point(x, y, crate::classify::DEFAULT_BOUNDARY_TOL),
                profile: profile(x, y),
            })
            .collect();
        prev = ys.iter().copied().zip(ids).collect();
        out.push(CurveSample { x, points });
    }
    Ok(out)
}

fn assign_branches(prev: &[(f64, usize)], ys: &[f64], next_id: &mut usize) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, y) in ys.iter().enumerate() {
        for (j, (py, _)) in prev.iter().enumerate() {
            pairs.push(((y - py).abs(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut ids = vec![None; ys.len()];
    let mut used = vec![false; prev.len()];
    for (_, i, j) in pairs {
        if ids[i].is_none() && !used[j] {
            ids[i] = Some(prev[j].1);
            used[j] = true;
        }
    }
    ids.into_iter()
        .map(|id| {
            id.unwrap_or_else(|| {
                *next_id += 1;
                *next_id - 1
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProfileRow {
    pub x: f64,
    pub y: f64,
    pub branch: usize,
    pub region: Region,
    pub profile: Option<f64>,
    /// `|profile| = 1`: the point lies on `y = ±(1 − x²)`.
    pub on_parabola: bool,
    /// `|x| = 1`.
    pub vertical: bool,
}

/// One row per sampled point, ordered by `x` then `y`.
pub fn region_profile(samples: &[CurveSample]) -> Vec<ProfileRow> {
    let tol = crate::classify::DEFAULT_BOUNDARY_TOL;
    samples
        .iter()
        .flat_map(|s| {
            s.points.iter().map(move |p| ProfileRow {
                x: s.x,
                y: p.y,
                branch: p.branch,
                region: p.region,
                profile: p.profile,
                on_parabola: ((1.0 - s.x * s.x).powi(2) - p.y * p.y).abs() <= tol,
                vertical: (1.0 - s.x * s.x).abs() <= tol,
            })
        })
        .collect()
}

/// Rounds to 12 significant digits.
pub fn round_sig(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return if v == 0.0 { 0.0 } else { v };
    }
    format!("{v:.11e}").parse().unwrap_or(v)
}

/// Shortest decimal for `v` rounded to 12 significant digits.
pub fn fmt_sig(v: f64) -> String {
    format!("{}", round_sig(v))
}

pub const CSV_HEADER: &str = "x,y,branch,region,profile";

pub fn write_csv<W: Write>(rows: &[ProfileRow], mut w: W) -> Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    for r in rows {
        let profile = r.profile.map(fmt_sig).unwrap_or_default();
        writeln!(w, "{},{},{},{},{}", fmt_sig(r.x), fmt_sig(r.y), r.branch, r.region.label(), profile)?;
    }
    Ok(())
}

/// Writes the profile table of `samples` as CSV to `path`.
pub fn emit_csv(samples: &[CurveSample], path: &Path) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut w = std::io::BufWriter::new(file);
    write_csv(&region_profile(samples), &mut w)?;
    w.flush()?;
    Ok(())
}

/// JSON rows with the CSV fields, floats rounded to 12 significant digits.
pub fn rows_to_json(rows: &[ProfileRow]) -> serde_json::Value {
    let r = |v: f64| serde_json::Value::from(round_sig(v));
    serde_json::Value::Array(
        rows.iter()
            .map(|row| {
                serde_json::json!({
                    "x": r(row.x),
                    "y": r(row.y),
                    "branch": row.branch,
                    "region": row.region.label(),
                    "profile": row.profile.map(r),
                    "on_parabola": row.on_parabola,
                    "vertical": row.vertical,
                })
            })
            .collect(),
    )
}

/// Sign of `5 − 24x² + 16x⁴` at an exact abscissa.
pub fn figure_eight_discriminant_sign(x: &BigRational) -> i32 {
    let x2 = x * x;
    let d = BigRational::from_integer(5.into()) - BigRational::from_integer(24.into()) * &x2
        + BigRational::from_integer(16.into()) * &x2 * &x2;
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{figure_eight, trefoil};
    use crate::variety::c_ideal;
    use proptest::prelude::*;

    fn trefoil_ideal() -> Ideal {
        c_ideal(&trefoil()).simplified
    }

    fn figure_eight_ideal() -> Ideal {
        c_ideal(&figure_eight()).simplified
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trefoil_at_zero() {
        assert_eq!(branches_at(&trefoil_ideal(), &rat(0, 1), 1e-9).unwrap(), vec![-0.5]);
    }

    #[test]
    fn figure_eight_at_zero() {
        let ys = branches_at(&figure_eight_ideal(), &rat(0, 1), 1e-9).unwrap();
        let s5 = 5f64.sqrt();
        assert_eq!(ys.len(), 2);
        assert!((ys[0] - (-1.0 - s5) / 4.0).abs() < 1e-12);
        assert!((ys[1] - (-1.0 + s5) / 4.0).abs() < 1e-12);
    }

    #[test]
    fn figure_eight_branches_meet_at_half() {
        let ys = branches_at(&figure_eight_ideal(), &rat(1, 2), 1e-9).unwrap();
        assert_eq!(ys.len(), 1);
        assert!((ys[0] + 0.25).abs() < 1e-12);
    }

    #[test]
    fn trefoil_grid() {
        let s = sample_variety(&trefoil_ideal(), -2.0, 2.0, 0.01, 1e-9).unwrap();
        assert_eq!(s.len(), 401);
        assert!(s.iter().all(|c| c.points.len() == 1 && c.points[0].branch == 0));
        assert_eq!(s[200].x, 0.0);
        assert_eq!(s[200].points[0].profile, Some(-0.5));
        assert_eq!(s[200].points[0].region, Region::Case1_S3);
        assert_eq!(s[300].x, 1.0);
        assert_eq!(s[300].points[0].profile, None);
        assert_eq!(s[300].points[0].region, Region::Case2_5_Parabolic_SL2R);
    }

    #[test]
    fn figure_eight_tangent_profile() {
        let ideal = figure_eight_ideal();
        let ys = solve_y(&ideal, 1.1180339887, 1e-9).unwrap();
        assert_eq!(ys.len(), 1);
        assert!((ys[0] + 0.25).abs() < 1e-12);
        let x = 1.1180339887f64;
        assert_eq!(classify_point(x, ys[0], 1e-9), Region::Case2_4_AlmostIrr_SL2R);
        assert!((profile(x, ys[0]).unwrap() - 1.0).abs() < 1e-9);
        assert!(solve_y(&ideal, 0.8, 1e-9).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        let ideal = trefoil_ideal();
        assert!(matches!(sample_variety(&ideal, 0.0, 1.0, 0.0, 1e-9), Err(Error::Argument(_))));
        assert!(matches!(sample_variety(&ideal, 1.0, 0.0, 0.1, 1e-9), Err(Error::Argument(_))));
        let with_s = Ideal::new([Poly::s() - Poly::x()]);
        assert!(matches!(sample_variety(&with_s, 0.0, 1.0, 0.1, 1e-9), Err(Error::UnsupportedIdeal)));
    }

    #[test]
    fn csv_output() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "x,y,branch,region,profile\n");
        let s = sample_variety(&trefoil_ideal(), 0.0, 1.0, 0.5, 1e-9).unwrap();
        let mut buf = Vec::new();
        write_csv(&region_profile(&s), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines, ["x,y,branch,region,profile", "0,-0.5,0,1,-0.5", "0.5,-0.25,0,1,-0.333333333333", "1,0.5,0,2.5,"]);
    }

    #[test]
    fn emit_to_file() {
        let dir = std::env::temp_dir().join(format!("knotquat-numerics-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("t.csv");
        emit_csv(&[], &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "x,y,branch,region,profile\n");
        assert!(emit_csv(&[], &dir.join("missing").join("t.csv")).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn profile_flags() {
        let s = sample_variety(&trefoil_ideal(), 1.0, 1.0, 0.1, 1e-9).unwrap();
        let rows = region_profile(&s);
        assert!(rows[0].vertical && !rows[0].on_parabola);
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(-0.0), "0");
    }

    #[test]
    fn figure_eight_branch_count_and_residuals() {
        let ideal = figure_eight_ideal();
        let samples = sample_variety(&ideal, -1.2, 1.2, 0.01, 1e-9).unwrap();
        assert_eq!(samples.len(), 241);
        for (i, s) in samples.iter().enumerate() {
            let xr = rat(-120 + i as i64, 100);
            let expected = match figure_eight_discriminant_sign(&xr) {
                1 => 2,
                0 => 1,
                _ => 0,
            };
            assert_eq!(s.points.len(), expected, "x = {}", s.x);
            for p in &s.points {
                assert!(ideal_residual(&ideal, s.x, p.y).unwrap() < 1e-9);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn regions_constant_between_crossings(k in -400i64..400) {
            // Adjacent trefoil samples that straddle no boundary share a region.
            let x0 = k as f64 / 200.0;
            let s = sample_variety(&trefoil_ideal(), x0, x0 + 0.0051, 0.005, 1e-9).unwrap();
            let crosses = |x: f64| {
                let u: f64 = 1.0 - x * x;
                let y = x * x - 0.5;
                (u.signum(), (u * u - y * y).signum())
            };
            if crosses(s[0].x) == crosses(s[1].x) && s.iter().all(|c| !c.points[0].region.is_boundary()) {
                prop_assert_eq!(s[0].points[0].region, s[1].points[0].region);
            }
        }
    }
}
