//! The ideal of c-representations and the loci attached to it.

use serde::Serialize;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::polyalg::{groebner, Ideal, MonomialOrder, Poly};
use crate::presentation::{Presentation, Word};
use crate::quatsym::{left_mult, zero_vec, SymVec4};

/// The ideal of a presentation together with the vector it came from.
#[derive(Clone, Debug, Serialize)]
pub struct CIdeal {
    /// `w₁(A, B) − w₂(A, B)` in the basis `{1, A⁻, B⁻, (A⁻B⁻)⁻}`.
    pub raw: SymVec4,
    /// Reduced graded-lex Gröbner basis of the nonzero raw entries.
    #[serde(rename = "ideal")]
    pub simplified: Ideal,
    pub presentation: Presentation,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl CIdeal {
    /// True when the ideal is empty, i.e. every `(x, y)` is a solution.
    pub fn is_everything(&self) -> bool {
        self.simplified.is_empty()
    }
}

/// Coordinates of `w(A, B)` in the basis `{1, A⁻, B⁻, (A⁻B⁻)⁻}`.
pub fn word_coords(w: &Word) -> SymVec4 {
    let mut v = zero_vec();
    v[0] = Poly::one();
    for &l in w.letters().iter().rev() {
        v = left_mult(l).apply(&v);
    }
    v
}

pub fn c_ideal(p: &Presentation) -> CIdeal {
    let (w1, w2) = p.sides();
    let (c1, c2) = (word_coords(&w1), word_coords(&w2));
    let raw: SymVec4 = std::array::from_fn(|k| &c1[k] - &c2[k]);
    let simplified = groebner(&Ideal::new(raw.iter().cloned()), MonomialOrder::GradedLex);
    let mut warnings = Vec::new();
    if p.is_conjugating() && !(raw[0].is_zero() && raw[3].is_zero()) {
        warnings.push("first or last coordinate of a·v − v·b does not vanish identically".to_string());
    }
    CIdeal { raw, simplified, presentation: p.clone(), warnings }
}

/// Rewrites `p(x, y)` in the trace coordinates `x' = 4x² − 2`, `z = 2x² − 2y`.
///
/// The result uses the `X` slot for `x'` and the `Y` slot for `z`; it is
/// cleared of denominators and made primitive.
pub fn to_trace_coords(p: &Poly) -> Result<Poly> {
    if p.terms().any(|(e, _)| e[0] % 2 == 1) {
        return Err(Error::NotExpressible);
    }
    let d = p.terms().map(|(e, _)| e[0] / 2 + e[1]).max().unwrap_or(0);
    let xp = Poly::x();
    let z = Poly::y();
    let two = Poly::constant(2);
    let x2 = &xp + &two; // 4x²
    let y4 = &x2 - &(&two * &z); // 4y
    let mut out = Poly::zero();
    for (e, c) in p.terms() {
        let (i, j) = (e[0] / 2, e[1]);
        let factor = BigInt::from(4).pow(d - i - j) * c;
        let mono = Poly::monomial(factor, [0, 0, e[2]]);
        out += &(&(&x2.pow(i) * &y4.pow(j)) * &mono);
    }
    Ok(out.normalized())
}

/// [`to_trace_coords`] applied to every generator.
pub fn ideal_to_trace_coords(ideal: &Ideal) -> Result<Ideal> {
    let gens: Result<Vec<Poly>> = ideal.gens().iter().map(to_trace_coords).collect();
    Ok(Ideal::new(gens?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Knot,
    Link,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReducibleLocus {
    pub on_upper_parabola: bool,
    pub on_lower_parabola: bool,
    pub realizable_by_reducible: bool,
}

/// Membership in the parabolas `y = 1 − x²` and `y = x² − 1`, where
/// reducible c-representations can live.
///
/// The upper parabola is always realizable by reducible representations.
/// The lower one is realizable for 2-bridge links but, for 2-bridge knots,
/// only at `(±1, 0)` where the two parabolas meet.
pub fn reducible_locus(x0: f64, y0: f64, kind: GroupKind, tol: f64) -> ReducibleLocus {
    let upper = (y0 - (1.0 - x0 * x0)).abs() < tol;
    let lower = (y0 - (x0 * x0 - 1.0)).abs() < tol;
    let corner = (x0.abs() - 1.0).abs() < tol && y0.abs() < tol;
    let realizable = upper || (lower && (kind == GroupKind::Link || corner));
    ReducibleLocus { on_upper_parabola: upper, on_lower_parabola: lower, realizable_by_reducible: realizable }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{figure_eight, parse_presentation, Letter};
    use proptest::prelude::*;

    fn c(k: i64) -> Poly {
        Poly::constant(k)
    }
    fn x() -> Poly {
        Poly::x()
    }
    fn y() -> Poly {
        Poly::y()
    }

    #[test]
    fn trefoil_ideal() {
        let ci = c_ideal(&parse_presentation("aba=bab").unwrap());
        let p = c(2) * x() * x() - c(2) * y() - c(1);
        assert_eq!(ci.raw, [Poly::zero(), p.clone(), -&p, Poly::zero()]);
        assert_eq!(ci.simplified.gens(), &[p]);
        assert!(ci.warnings.is_empty());
    }

    #[test]
    fn figure_eight_ideal() {
        let ci = c_ideal(&figure_eight());
        let p = c(4) * x().pow(4) - c(6) * x() * x() - c(4) * y() * y() - c(2) * y() + c(1);
        assert_eq!(ci.raw, [Poly::zero(), -&p, p.clone(), Poly::zero()]);
        assert_eq!(ci.simplified.gens(), &[p]);
    }

    #[test]
    fn trivial_relator() {
        let ci = c_ideal(&Presentation::relator_form(Word::identity()));
        assert!(ci.raw.iter().all(Poly::is_zero));
        assert!(ci.is_everything());
        assert!(c_ideal(&parse_presentation("a=a").unwrap()).is_everything());
    }

    #[test]
    fn word_coords_matches_matrix_column() {
        let w = parse_presentation("abABa").unwrap().relator();
        assert_eq!(word_coords(&w), crate::quatsym::eval_word(&w).column(0));
    }

    #[test]
    fn trace_coordinates() {
        let p = c(2) * x() * x() - c(2) * y() - c(1);
        assert_eq!(to_trace_coords(&p).unwrap(), y() - c(1));
        // x' − 2z + 2, sign-normalized so that the z term leads.
        assert_eq!(to_trace_coords(&y()).unwrap(), c(2) * y() - x() - c(2));
        assert!(matches!(to_trace_coords(&x()), Err(Error::NotExpressible)));
        let fig = c_ideal(&figure_eight()).simplified;
        let t = ideal_to_trace_coords(&fig).unwrap();
        let expected = y() * y() - x() * y() + c(2) * x() - c(3) * y() + c(3);
        assert_eq!(t.gens(), &[expected]);
    }

    #[test]
    fn reducible_loci() {
        let r = reducible_locus(3f64.sqrt() / 2.0, 0.25, GroupKind::Knot, 1e-9);
        assert!(r.on_upper_parabola && r.realizable_by_reducible);
        let r = reducible_locus(0.0, -1.0, GroupKind::Knot, 1e-9);
        assert!(r.on_lower_parabola && !r.realizable_by_reducible);
        let r = reducible_locus(0.0, -1.0, GroupKind::Link, 1e-9);
        assert!(r.realizable_by_reducible);
        let r = reducible_locus(1.0, 0.0, GroupKind::Knot, 1e-9);
        assert!(r.on_upper_parabola && r.on_lower_parabola && r.realizable_by_reducible);
    }

    #[test]
    fn two_bridge_balanced_entries_vanish() {
        for (p, q) in [(3, 1), (5, 1), (5, 3), (7, 3), (9, 5), (11, 7)] {
            let ci = c_ideal(&crate::presentation::two_bridge(p, q).unwrap());
            assert!(ci.warnings.is_empty(), "({p},{q})");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn cyclic_rotation_keeps_ideal(letters in proptest::collection::vec(0..4usize, 1..7), k in 0usize..7) {
            let w = Word::from_letters(letters.into_iter().map(|i| Letter::ALL[i]));
            let a = c_ideal(&Presentation::relator_form(w.clone()));
            let b = c_ideal(&Presentation::relator_form(w.rotate(k)));
            prop_assert_eq!(a.simplified, b.simplified);
        }
    }
}
