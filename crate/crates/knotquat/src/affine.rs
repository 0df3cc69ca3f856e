//! Affine c-representations `ρ(g) = (v(g), ρ̂(g))` into `H₀ ⋊ U₁`.
//!
//! The translational part is a cocycle, `v(g₁g₂) = v(g₁) + ρ̂(g₁)·v(g₂)`, so
//! a relator imposes polynomial conditions in `x`, `y` and the shift
//! parameter `s`. With the normal form `ρ(a) = (sA⁻, A)`,
//! `ρ(b) = (sB⁻ ± (A⁻B⁻)⁻, B)` these conditions generate the affine ideal.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyalg::{groebner, Ideal, MonomialOrder, Poly};
use crate::presentation::{Gen, Letter, Presentation, Word};
use crate::quaternion::NumQuaternion;
use crate::quatsym::{conj_action, eval_conj, zero_vec, SymMat4, SymVec4};
use crate::variety::c_ideal;

/// Translational part in the basis `{1, A⁻, B⁻, (A⁻B⁻)⁻}`; entry 0 is zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymCocycle {
    pub coords: SymVec4,
}

impl SymCocycle {
    pub fn zero() -> SymCocycle {
        SymCocycle { coords: zero_vec() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    pub fn add(&self, o: &SymCocycle) -> SymCocycle {
        SymCocycle { coords: std::array::from_fn(|k| &self.coords[k] + &o.coords[k]) }
    }

    pub fn sub(&self, o: &SymCocycle) -> SymCocycle {
        SymCocycle { coords: std::array::from_fn(|k| &self.coords[k] - &o.coords[k]) }
    }

    pub fn transform(&self, m: &SymMat4) -> SymCocycle {
        SymCocycle { coords: m.apply(&self.coords) }
    }
}

/// Sign of the `(A⁻B⁻)⁻` translate in `v(b)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ShiftSign {
    #[default]
    Plus,
    Minus,
}

/// `v(a) = sA⁻`.
pub fn normal_form_va() -> SymCocycle {
    SymCocycle { coords: [Poly::zero(), Poly::s(), Poly::zero(), Poly::zero()] }
}

/// `v(b) = sB⁻ ± (A⁻B⁻)⁻`.
pub fn normal_form_vb(sign: ShiftSign) -> SymCocycle {
    let c = match sign {
        ShiftSign::Plus => Poly::one(),
        ShiftSign::Minus => -Poly::one(),
    };
    SymCocycle { coords: [Poly::zero(), Poly::zero(), Poly::s(), c] }
}

struct ConjTable {
    m: [SymMat4; 4],
}

impl ConjTable {
    fn new() -> ConjTable {
        ConjTable { m: Letter::ALL.map(conj_action) }
    }

    fn get(&self, l: Letter) -> &SymMat4 {
        &self.m[Letter::ALL.iter().position(|&k| k == l).expect("letter")]
    }
}

/// `v(w)` by the cocycle rule, with `v(g⁻¹) = −ρ̂(g⁻¹)·v(g)`.
pub fn cocycle_of_word(w: &Word, va: &SymCocycle, vb: &SymCocycle) -> SymCocycle {
    let table = ConjTable::new();
    let mut total = SymCocycle::zero();
    let mut m = SymMat4::identity();
    for &l in w.letters() {
        let base = match l.gen {
            Gen::A => va,
            Gen::B => vb,
        };
        let conj = table.get(l);
        let step = if l.inverse {
            let t = base.transform(conj);
            SymCocycle { coords: t.coords.map(|p| -p) }
        } else {
            base.clone()
        };
        total = total.add(&step.transform(&m));
        m = &m * conj;
    }
    total
}

/// Formal integer combination of words.
pub type GroupRingElement = BTreeMap<Word, BigInt>;

fn add_term(acc: &mut GroupRingElement, w: Word, c: BigInt) {
    let entry = acc.entry(w.clone()).or_insert_with(BigInt::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&w);
    }
}

/// Free derivatives `(∂w/∂a, ∂w/∂b)`.
pub fn fox_derivatives(w: &Word) -> (GroupRingElement, GroupRingElement) {
    let mut da = GroupRingElement::new();
    let mut db = GroupRingElement::new();
    let mut prefix = Word::identity();
    for &l in w.letters() {
        let target = match l.gen {
            Gen::A => &mut da,
            Gen::B => &mut db,
        };
        if l.inverse {
            add_term(target, prefix.concat(&Word::from_letters([l])), -BigInt::one());
        } else {
            add_term(target, prefix.clone(), BigInt::one());
        }
        prefix.push(l);
    }
    (da, db)
}

/// `Σ cᵥ ρ̂(v)·t` for a group-ring element `Σ cᵥ v`.
pub fn apply_group_ring(e: &GroupRingElement, t: &SymCocycle) -> SymCocycle {
    let mut out = SymCocycle::zero();
    for (w, c) in e {
        let term = t.transform(&eval_conj(w));
        out = out.add(&SymCocycle { coords: term.coords.map(|p| p.scale(c)) });
    }
    out
}

/// `∂w/∂a ∘ v(a) + ∂w/∂b ∘ v(b)`.
pub fn cocycle_via_fox(w: &Word, va: &SymCocycle, vb: &SymCocycle) -> SymCocycle {
    let (da, db) = fox_derivatives(w);
    apply_group_ring(&da, va).add(&apply_group_ring(&db, vb))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineIdeal {
    /// Generators of the linear ideal in `x`, `y`.
    pub p_gens: Ideal,
    /// Nonzero entries of the cocycle relation, primitive and sign-normalized.
    pub q_gens: Vec<Poly>,
    /// `p_gens ∪ q_gens`.
    pub combined: Ideal,
    /// Reduced graded-lex Gröbner basis of `combined`.
    pub groebner: Ideal,
    pub sign: ShiftSign,
}

impl Serialize for AffineIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("p", self.p_gens.gens())?;
        m.serialize_entry("q", &self.q_gens)?;
        m.serialize_entry("groebner", self.groebner.gens())?;
        m.serialize_entry("sign", &self.sign)?;
        m.end()
    }
}

pub fn affine_ideal(p: &Presentation) -> AffineIdeal {
    affine_ideal_with(p, ShiftSign::Plus)
}

/// Affine ideal for the normal form with the given `(A⁻B⁻)⁻` sign.
pub fn affine_ideal_with(p: &Presentation, sign: ShiftSign) -> AffineIdeal {
    let (va, vb) = (normal_form_va(), normal_form_vb(sign));
    let (w1, w2) = p.sides();
    let diff = cocycle_of_word(&w1, &va, &vb).sub(&cocycle_of_word(&w2, &va, &vb));
    let q_gens = Ideal::new(diff.coords).gens().to_vec();
    let p_gens = c_ideal(p).simplified;
    let combined = Ideal::new(p_gens.gens().iter().chain(&q_gens).cloned());
    let groebner = groebner(&combined, MonomialOrder::GradedLex);
    AffineIdeal { p_gens, q_gens, combined, groebner, sign }
}

/// A numeric affine isometry `u ↦ v + A u A̅` on pure quaternions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AffineElement {
    /// Translation in `(X, Y, Z)` coordinates for the basis `{−ij, j, i}`.
    pub v: [f64; 3],
    pub a: NumQuaternion,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// A point on the invariant line, orthogonal to `A⁻`.
    Point([f64; 3]),
    NoAxis,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AxisShift {
    /// `s·A⁻`; absent when `A⁻` is null.
    pub vector_shift: Option<[f64; 3]>,
    pub v_perp: Option<[f64; 3]>,
    pub axis: Axis,
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Splits `v = s·A⁻ + v⊥` and solves `(Id − c(A))u = v⊥` for `u ⊥ A⁻`.
pub fn axis_shift(e: &AffineElement, tol: f64) -> Result<AxisShift> {
    let to_real = |v: [num_complex::Complex64; 3]| -> Result<[f64; 3]> {
        if v.iter().any(|c| c.im.abs() > tol) {
            return Err(Error::Domain("complex isometry".into()));
        }
        Ok(v.map(|c| c.re))
    };
    let dir = to_real(e.a.pure_xyz())?;
    if dot(&dir, &dir).sqrt() <= tol {
        return Err(Error::ZeroAxisDirection);
    }
    let eta = e.a.params.eta();
    let form = |p: &[f64; 3], q: &[f64; 3]| eta[0] * p[0] * q[0] + eta[1] * p[1] * q[1] + eta[2] * p[2] * q[2];
    let n_dir = form(&dir, &dir);
    if n_dir.abs() <= tol {
        return Ok(AxisShift { vector_shift: None, v_perp: None, axis: Axis::NoAxis });
    }
    let s = form(&e.v, &dir) / n_dir;
    let shift = dir.map(|c| s * c);
    let v_perp: [f64; 3] = std::array::from_fn(|k| e.v[k] - shift[k]);

    let r = e.a.conj_matrix();
    let r: [[f64; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| r[i][j].re));
    let normal = [eta[0] * dir[0], eta[1] * dir[1], eta[2] * dir[2]];
    let k = (0..3).min_by(|&i, &j| normal[i].abs().total_cmp(&normal[j].abs())).expect("index");
    let mut ek = [0.0; 3];
    ek[k] = 1.0;
    let b1 = cross(&normal, &ek);
    let b2 = cross(&normal, &b1);
    let apply = |b: &[f64; 3]| -> [f64; 3] { std::array::from_fn(|i| b[i] - dot(&r[i], b)) };
    let (c1, c2) = (apply(&b1), apply(&b2));
    let mut rows: Vec<[f64; 3]> = (0..3).map(|i| [c1[i], c2[i], v_perp[i]]).collect();

    let p1 = (0..3).max_by(|&i, &j| rows[i][0].abs().total_cmp(&rows[j][0].abs())).expect("row");
    rows.swap(0, p1);
    let piv1 = rows[0][0];
    if piv1.abs() <= tol {
        return Ok(AxisShift { vector_shift: Some(shift), v_perp: Some(v_perp), axis: Axis::NoAxis });
    }
    for i in 1..3 {
        let f = rows[i][0] / piv1;
        for j in 0..3 {
            rows[i][j] -= f * rows[0][j];
        }
    }
    let p2 = if rows[1][1].abs() >= rows[2][1].abs() { 1 } else { 2 };
    let piv2 = rows[p2][1];
    if piv2.abs() < tol * piv1.abs() {
        return Ok(AxisShift { vector_shift: Some(shift), v_perp: Some(v_perp), axis: Axis::NoAxis });
    }
    let beta = rows[p2][2] / piv2;
    let alpha = (rows[0][2] - rows[0][1] * beta) / piv1;
    let u = std::array::from_fn(|i| alpha * b1[i] + beta * b2[i]);
    Ok(AxisShift { vector_shift: Some(shift), v_perp: Some(v_perp), axis: Axis::Point(u) })
}
