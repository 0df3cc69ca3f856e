//! Relator verification over sampled points of the real variety.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use knotquat::classify::{classify, Region, Tolerances};
use knotquat::numerics::{fmt_sig, sample_variety};
use knotquat::variety::c_ideal;
use knotquat::Presentation;
use serde::Serialize;

use crate::CliResult;

/// Tolerance on `A⁺ = B⁺ = x` and `−(A⁻B⁻)⁺ = y`.
pub const COORD_TOL: f64 = 1e-10;
const MAX_LISTED_FAILURES: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub x: f64,
    pub y: f64,
    pub region: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerifyReport {
    pub points: usize,
    pub degenerate: usize,
    pub non_boundary: usize,
    pub reducibility_agreements: usize,
    pub max_residual: f64,
    pub max_coord_error: f64,
    pub region_counts: BTreeMap<String, usize>,
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn regions(&self) -> Vec<&str> {
        self.region_counts.keys().map(String::as_str).collect()
    }

    fn fail(&mut self, x: f64, y: f64, region: Region, reason: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED_FAILURES {
            self.failures.push(Failure { x, y, region: region.label().to_string(), reason });
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "points: {} ({} degenerate, {} off boundaries)", self.points, self.degenerate, self.non_boundary)
            .ok();
        let counts: Vec<String> = self.region_counts.iter().map(|(k, v)| format!("{k}: {v}")).collect();
        writeln!(s, "regions: {}", counts.join(", ")).ok();
        writeln!(s, "max residual: {:.3e}", self.max_residual).ok();
        writeln!(s, "max coordinate error: {:.3e}", self.max_coord_error).ok();
        writeln!(s, "reducibility agreement: {}/{}", self.reducibility_agreements, self.non_boundary).ok();
        for f in &self.failures {
            writeln!(s, "FAIL ({}, {}) [{}]: {}", fmt_sig(f.x), fmt_sig(f.y), f.region, f.reason).ok();
        }
        writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" }).ok();
        s
    }
}

/// Classifies, constructs and checks the pair at every point.
pub fn sweep_points(p: &Presentation, points: &[(f64, f64)], tol: Tolerances) -> VerifyReport {
    let mut report = VerifyReport::default();
    for &(x, y) in points {
        report.points += 1;
        let cp = match classify(x, y, Some(p), tol) {
            Ok(cp) => cp,
            Err(e) => {
                let region = knotquat::classify::classify_point(x, y, tol.boundary);
                report.fail(x, y, region, e.to_string());
                continue;
            }
        };
        *report.region_counts.entry(cp.region.label().to_string()).or_default() += 1;
        let Some(c) = &cp.construction else {
            report.degenerate += 1;
            continue;
        };
        let residual = cp.residual.unwrap_or(f64::NAN);
        report.max_residual = report.max_residual.max(residual);
        if !(residual < tol.verify) {
            report.fail(x, y, cp.region, format!("relator residual {residual:.3e}"));
        }
        let coord_err = [
            (c.a.scalar() - x).norm(),
            (c.b.scalar() - x).norm(),
            (-(c.a.pure() * c.b.pure()).scalar() - y).norm(),
        ]
        .into_iter()
        .fold(0.0, f64::max);
        report.max_coord_error = report.max_coord_error.max(coord_err);
        if !(coord_err <= COORD_TOL) {
            report.fail(x, y, cp.region, format!("coordinate error {coord_err:.3e}"));
        }
        if !cp.region.is_boundary() {
            report.non_boundary += 1;
            if cp.reducibility == cp.region.expected_reducibility() {
                report.reducibility_agreements += 1;
            } else {
                report.fail(x, y, cp.region, format!("reducibility {:?}", cp.reducibility));
            }
        }
    }
    report
}

/// [`sweep_points`] over the sampled real curve.
pub fn sweep(p: &Presentation, x_min: f64, x_max: f64, step: f64, tol: Tolerances) -> CliResult<VerifyReport> {
    let ideal = c_ideal(p).simplified;
    let samples = sample_variety(&ideal, x_min, x_max, step, 1e-9)?;
    let points: Vec<(f64, f64)> = samples.iter().flat_map(|s| s.points.iter().map(move |b| (s.x, b.y))).collect();
    Ok(sweep_points(p, &points, tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use knotquat::presentation::{figure_eight, trefoil};

    #[test]
    fn trefoil_sweep_passes() {
        let r = sweep(&trefoil(), -2.0, 2.0, 0.05, Tolerances::default()).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.points, 81);
        assert_eq!(r.regions(), ["1", "2.1", "2.2.2", "2.5"]);
    }

    #[test]
    fn figure_eight_special_points() {
        let s5 = 5f64.sqrt();
        let r = sweep_points(&figure_eight(), &[(s5 / 2.0, -0.25), (0.5, -0.25)], Tolerances::default());
        assert!(r.passed(), "{}", r.to_text());
        assert_eq!(r.regions(), ["1", "2.4"]);
    }

    #[test]
    fn off_variety_points_fail() {
        let r = sweep_points(&trefoil(), &[(0.3, 0.7)], Tolerances::default());
        assert!(!r.passed());
        assert_eq!(r.failure_count, 1);
    }
}
