//! Explicit representations for real points of the variety.
//!
//! A real point `(x, y)` falls into one of nine regions cut out by the signs
//! of `u = 1 − x²`, `u² − y²` and `y`. Each region except the degenerate
//! corner `(±1, 0)` comes with a closed-form pair `(A, B)` of unit quaternions
//! realizing it: in Hamilton's quaternions (`S³`) when `u > 0` and `u² > y²`,
//! and in the split algebra (`SL(2, ℝ)`, or `SL(2, ℂ)` on the complex
//! boundary) otherwise.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::presentation::{Gen, Presentation, Word};
use crate::quaternion::{NumQuaternion, ScalarField};
use crate::quatsym::AlgebraParams;

pub const DEFAULT_BOUNDARY_TOL: f64 = 1e-9;
pub const DEFAULT_VERIFY_TOL: f64 = 1e-9;

#[allow(non_camel_case_types)]
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Region {
    /// `u > 0`, `u² > y²`: a pair in `S³`.
    Case1_S3,
    /// `u > 0`, `u² = y²`: almost-irreducible, only over `ℂ`.
    Boundary_AlmostIrreducible_Complex,
    /// `u > 0`, `u² < y²`.
    Case2_1_SL2R,
    /// `u < 0`, `u² < y²`, `y < 0`.
    Case2_2_1_SL2R,
    /// `u < 0`, `u² < y²`, `y > 0`.
    Case2_2_2_SL2R,
    /// `u < 0`, `u² > y²`.
    Case2_3_SL2R,
    /// `u < 0`, `u² = y²`: almost-irreducible in `SL(2, ℝ)`.
    Case2_4_AlmostIrr_SL2R,
    /// `u = 0`, `y ≠ 0`: parabolic generators.
    Case2_5_Parabolic_SL2R,
    /// `(±1, 0)`: neither irreducible nor almost-irreducible.
    Degenerate_x2_1_y0,
}

impl Region {
    pub const ALL: [Region; 9] = [
        Region::Case1_S3,
        Region::Boundary_AlmostIrreducible_Complex,
        Region::Case2_1_SL2R,
        Region::Case2_2_1_SL2R,
        Region::Case2_2_2_SL2R,
        Region::Case2_3_SL2R,
        Region::Case2_4_AlmostIrr_SL2R,
        Region::Case2_5_Parabolic_SL2R,
        Region::Degenerate_x2_1_y0,
    ];

    /// Short label used in CSV and JSON output.
    pub fn label(self) -> &'static str {
        match self {
            Region::Case1_S3 => "1",
            Region::Boundary_AlmostIrreducible_Complex => "1c",
            Region::Case2_1_SL2R => "2.1",
            Region::Case2_2_1_SL2R => "2.2.1",
            Region::Case2_2_2_SL2R => "2.2.2",
            Region::Case2_3_SL2R => "2.3",
            Region::Case2_4_AlmostIrr_SL2R => "2.4",
            Region::Case2_5_Parabolic_SL2R => "2.5",
            Region::Degenerate_x2_1_y0 => "degenerate",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Region::Case1_S3 => "Case1_S3",
            Region::Boundary_AlmostIrreducible_Complex => "Boundary_AlmostIrreducible_Complex",
            Region::Case2_1_SL2R => "Case2_1_SL2R",
            Region::Case2_2_1_SL2R => "Case2_2_1_SL2R",
            Region::Case2_2_2_SL2R => "Case2_2_2_SL2R",
            Region::Case2_3_SL2R => "Case2_3_SL2R",
            Region::Case2_4_AlmostIrr_SL2R => "Case2_4_AlmostIrr_SL2R",
            Region::Case2_5_Parabolic_SL2R => "Case2_5_Parabolic_SL2R",
            Region::Degenerate_x2_1_y0 => "Degenerate_x2_1_y0",
        }
    }

    pub fn from_label(s: &str) -> Option<Region> {
        Region::ALL.into_iter().find(|r| r.label() == s || r.name() == s)
    }

    /// Target algebra of the construction.
    pub fn algebra(self) -> AlgebraParams {
        match self {
            Region::Case1_S3 => AlgebraParams::HAMILTON,
            _ => AlgebraParams::SPLIT,
        }
    }

    /// True on the equalities `u = 0` or `u² = y²` that separate regions.
    pub fn is_boundary(self) -> bool {
        matches!(
            self,
            Region::Boundary_AlmostIrreducible_Complex
                | Region::Case2_4_AlmostIrr_SL2R
                | Region::Case2_5_Parabolic_SL2R
                | Region::Degenerate_x2_1_y0
        )
    }

    /// Reducibility every pair constructed in this region must have.
    pub fn expected_reducibility(self) -> Reducibility {
        match self {
            Region::Boundary_AlmostIrreducible_Complex | Region::Case2_4_AlmostIrr_SL2R => {
                Reducibility::AlmostIrreducible
            }
            Region::Degenerate_x2_1_y0 => Reducibility::None,
            _ => Reducibility::Irreducible,
        }
    }

    pub fn field_desc(self) -> &'static str {
        match self {
            Region::Case1_S3 => "Q(x,y,sqrt(1-x^2),sqrt((1-x^2)^2-y^2))",
            Region::Boundary_AlmostIrreducible_Complex => "Q(x,y,sqrt(x^2-1)), x^2<1 (complex)",
            Region::Case2_1_SL2R => "Q(x,y,sqrt(1-x^2),sqrt(y^2-(1-x^2)^2))",
            Region::Case2_2_1_SL2R | Region::Case2_2_2_SL2R => "Q(x,y,sqrt(x^2-1),sqrt(y^2-(x^2-1)^2))",
            Region::Case2_3_SL2R => "Q(x,y,sqrt(x^2-1),sqrt((x^2-1)^2-y^2))",
            Region::Case2_4_AlmostIrr_SL2R => "Q(x,y,sqrt(x^2-1))",
            Region::Case2_5_Parabolic_SL2R => "Q(y)",
            Region::Degenerate_x2_1_y0 => "",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl Serialize for Region {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

/// Sign dispatch on `u = 1 − x²`, `u² − y²` and `y`, with values within
/// `tol` of zero snapped to the boundary case.
pub fn classify_point(x: f64, y: f64, tol: f64) -> Region {
    let u = 1.0 - x * x;
    let d = u * u - y * y;
    if u.abs() <= tol {
        return if y.abs() <= tol { Region::Degenerate_x2_1_y0 } else { Region::Case2_5_Parabolic_SL2R };
    }
    if u > 0.0 {
        if d.abs() <= tol {
            Region::Boundary_AlmostIrreducible_Complex
        } else if d > 0.0 {
            Region::Case1_S3
        } else {
            Region::Case2_1_SL2R
        }
    } else if d.abs() <= tol {
        Region::Case2_4_AlmostIrr_SL2R
    } else if d > 0.0 {
        Region::Case2_3_SL2R
    } else if y < 0.0 {
        Region::Case2_2_1_SL2R
    } else {
        Region::Case2_2_2_SL2R
    }
}

/// [`classify_point`] with exact signs.
pub fn classify_point_exact(x: &BigRational, y: &BigRational) -> Region {
    let u = BigRational::from_integer(1.into()) - x * x;
    let d = &u * &u - y * y;
    if u.is_zero() {
        return if y.is_zero() { Region::Degenerate_x2_1_y0 } else { Region::Case2_5_Parabolic_SL2R };
    }
    if u.is_positive() {
        if d.is_zero() {
            Region::Boundary_AlmostIrreducible_Complex
        } else if d.is_positive() {
            Region::Case1_S3
        } else {
            Region::Case2_1_SL2R
        }
    } else if d.is_zero() {
        Region::Case2_4_AlmostIrr_SL2R
    } else if d.is_positive() {
        Region::Case2_3_SL2R
    } else if y.is_negative() {
        Region::Case2_2_1_SL2R
    } else {
        Region::Case2_2_2_SL2R
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub a: NumQuaternion,
    pub b: NumQuaternion,
    pub params: AlgebraParams,
    pub field_desc: String,
}

fn radicand(v: f64, what: &str) -> Result<f64> {
    if v < -DEFAULT_BOUNDARY_TOL {
        return Err(Error::Domain(format!("{what} = {v} is negative")));
    }
    Ok(v.max(0.0).sqrt())
}

/// The normal-form pair `(A, B)` for a point of `region`.
///
/// All square roots take the positive branch. On the boundary cases `2.4`
/// and `2.5`, `y` (resp. `x`) is snapped onto the exact boundary before the
/// formulas are applied, so that `N(B) = 1` holds to rounding.
pub fn construct_pair(region: Region, x: f64, y: f64) -> Result<Construction> {
    let params = region.algebra();
    let u = 1.0 - x * x;
    let real = |a: [f64; 4], b: [f64; 4]| Construction {
        a: NumQuaternion::real(params, a),
        b: NumQuaternion::real(params, b),
        params,
        field_desc: region.field_desc().to_string(),
    };
    match region {
        Region::Case1_S3 => {
            let g = radicand(u, "1 - x^2")?;
            let r = radicand(u * u - y * y, "(1 - x^2)^2 - y^2")?;
            check_nonzero(g)?;
            Ok(real([x, y / g, r / g, 0.0], [x, g, 0.0, 0.0]))
        }
        Region::Case2_1_SL2R => {
            let g = radicand(u, "1 - x^2")?;
            let r = radicand(y * y - u * u, "y^2 - (1 - x^2)^2")?;
            check_nonzero(g)?;
            Ok(real([x, g, 0.0, 0.0], [x, y / g, r / g, 0.0]))
        }
        Region::Case2_2_1_SL2R | Region::Case2_2_2_SL2R => {
            let g = radicand(-u, "x^2 - 1")?;
            let r = radicand(y * y - u * u, "y^2 - (x^2 - 1)^2")?;
            check_nonzero(g)?;
            let beta = if region == Region::Case2_2_1_SL2R { r / g } else { -r / g };
            Ok(real([x, 0.0, g, 0.0], [x, beta, -y / g, 0.0]))
        }
        Region::Case2_3_SL2R => {
            let g = radicand(-u, "x^2 - 1")?;
            let r = radicand(u * u - y * y, "(x^2 - 1)^2 - y^2")?;
            check_nonzero(g)?;
            Ok(real([x, 0.0, g, 0.0], [x, 0.0, -y / g, r / g]))
        }
        Region::Case2_4_AlmostIrr_SL2R => {
            let g = radicand(-u, "x^2 - 1")?;
            check_nonzero(g)?;
            let ys = y.signum() * g * g;
            Ok(real([x, 0.0, g, 0.0], [x, 1.0, -ys / g, 1.0]))
        }
        Region::Case2_5_Parabolic_SL2R => {
            let xs = x.signum();
            Ok(real([xs, 1.0, 1.0, 0.0], [xs, y / 2.0, -y / 2.0, 0.0]))
        }
        Region::Boundary_AlmostIrreducible_Complex => {
            let xc = Complex64::new(x, 0.0);
            let g = (xc * xc - 1.0).sqrt();
            if g.norm() == 0.0 {
                return Err(Error::Domain("x^2 = 1 on the complex boundary".into()));
            }
            let den = 2.0 * x * x - 2.0;
            let (x2, x4, y2) = (x * x, x * x * x * x, y * y);
            let zero = Complex64::new(0.0, 0.0);
            let a = NumQuaternion::complex(params, [xc, zero, zero, g]);
            let b = NumQuaternion::complex(
                params,
                [
                    xc,
                    Complex64::new((2.0 - 3.0 * x2 + x4 - y2) / den, 0.0),
                    Complex64::new((-x2 + x4 - y2) / den, 0.0),
                    -Complex64::new(y, 0.0) / g,
                ],
            );
            Ok(Construction { a, b, params, field_desc: region.field_desc().to_string() })
        }
        Region::Degenerate_x2_1_y0 => Err(Error::DegeneratePoint),
    }
}

fn check_nonzero(g: f64) -> Result<()> {
    if g == 0.0 {
        Err(Error::Domain("square root vanishes; point is on |x| = 1".into()))
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    /// Angle `ω` between the rotation axes of `A` and `B` in `S³`.
    CosOmega,
    /// Hyperbolic distance `d` between the axes.
    CoshD,
    /// Angle `θ` between space-like axes.
    CosTheta,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Invariant {
    pub kind: InvariantKind,
    /// `cos ω`, `cosh d` or `cos θ`.
    pub value: f64,
    /// `ω`, `d` or `θ` itself.
    pub angle: f64,
}

/// `cos ω`, `cosh d` or `cos θ` of the axes of `A` and `B`, where defined.
pub fn geometric_invariant(region: Region, x: f64, y: f64, tol: f64) -> Result<Option<Invariant>> {
    let u = 1.0 - x * x;
    let (kind, value) = match region {
        Region::Case1_S3 => (InvariantKind::CosOmega, y / u),
        Region::Case2_1_SL2R => (InvariantKind::CoshD, y / u),
        Region::Case2_2_1_SL2R | Region::Case2_2_2_SL2R => (InvariantKind::CoshD, y.abs() / (x * x - 1.0)),
        Region::Case2_3_SL2R => (InvariantKind::CosTheta, -y / (x * x - 1.0)),
        _ => return Ok(None),
    };
    let angle = match kind {
        InvariantKind::CoshD => {
            if value < 1.0 - tol {
                return Err(Error::Domain(format!("cosh d = {value} < 1")));
            }
            value.max(1.0).acosh()
        }
        _ => {
            if value.abs() > 1.0 + tol {
                return Err(Error::Domain(format!("|cos| = {} > 1", value.abs())));
            }
            value.clamp(-1.0, 1.0).acos()
        }
    };
    Ok(Some(Invariant { kind, value, angle }))
}

/// Square matrix with complex entries, serialized as reals when possible.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumMatrix<const N: usize> {
    pub m: [[Complex64; N]; N],
    pub field: ScalarField,
}

impl<const N: usize> NumMatrix<N> {
    pub fn to_real(&self, tol: f64) -> Option<[[f64; N]; N]> {
        if self.m.iter().flatten().all(|v| v.im.abs() <= tol) {
            Some(self.m.map(|row| row.map(|v| v.re)))
        } else {
            None
        }
    }

    pub fn max_abs_diff(&self, other: &[[f64; N]; N]) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.m[i][j] - other[i][j]).norm());
            }
        }
        worst
    }
}

impl NumMatrix<2> {
    pub fn det(&self) -> Complex64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }
}

impl NumMatrix<3> {
    pub fn det(&self) -> Complex64 {
        det3(&self.m)
    }
}

fn det3(m: &[[Complex64; 3]; 3]) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

impl<const N: usize> Serialize for NumMatrix<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(N))?;
        for row in &self.m {
            seq.serialize_element(&crate::quaternion::Components(row, self.field))?;
        }
        seq.end()
    }
}

/// `Φ` into `SU(2)` for `(−1, −1)`, `Ψ` into `SL(2)` for `(−1, 1)`.
pub fn embed_2x2(q: &NumQuaternion) -> Result<NumMatrix<2>> {
    let [a, b, c, d] = q.c;
    let i = Complex64::i();
    let (m, field) = if q.params == AlgebraParams::SPLIT {
        ([[a + d, b + c], [c - b, a - d]], q.field)
    } else if q.params == AlgebraParams::HAMILTON {
        ([[a - d * i, -b + c * i], [b + c * i, a + d * i]], ScalarField::Complex)
    } else {
        return Err(Error::UnsupportedAlgebra(q.params.mu_f64(), q.params.nu_f64()));
    };
    Ok(NumMatrix { m, field })
}

/// Matrix of `v ↦ q v q̅` on `(X, Y, Z)` in the basis `{−ij, j, i}`.
pub fn so_matrix(q: &NumQuaternion) -> NumMatrix<3> {
    NumMatrix { m: q.conj_matrix(), field: q.field }
}

pub fn so_matrix_pair(c: &Construction) -> (NumMatrix<3>, NumMatrix<3>) {
    (so_matrix(&c.a), so_matrix(&c.b))
}

/// `w(A, B)`, inverting letters by conjugation.
pub fn eval_word_numeric(w: &Word, a: &NumQuaternion, b: &NumQuaternion) -> NumQuaternion {
    let mut acc = NumQuaternion::one(a.params);
    for l in w.letters() {
        let q = match l.gen {
            Gen::A => a,
            Gen::B => b,
        };
        acc = acc * if l.inverse { q.conj() } else { *q };
    }
    acc
}

/// Largest component of `w₁(A, B) − w₂(A, B)`.
pub fn verify_relator(a: &NumQuaternion, b: &NumQuaternion, p: &Presentation) -> f64 {
    let (w1, w2) = p.sides();
    (eval_word_numeric(&w1, a, b) - eval_word_numeric(&w2, a, b)).max_abs()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reducibility {
    Irreducible,
    AlmostIrreducible,
    Reducible,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IrreducibilityReport {
    pub kind: Reducibility,
    /// Determinant of the coordinates of `A⁻`, `B⁻`, `(A⁻B⁻)⁻` in `{i, j, ij}`;
    /// it equals `±(y² − (1 − x²)²)`.
    pub det: Complex64,
}

/// Rank of `{A⁻, B⁻, (A⁻B⁻)⁻}`: 3 is irreducible, 2 with `A⁻`, `B⁻`
/// independent is almost-irreducible, anything else reducible.
pub fn irreducibility_test(a: &NumQuaternion, b: &NumQuaternion, tol: f64) -> IrreducibilityReport {
    let am = a.pure();
    let bm = b.pure();
    let c = (am * bm).pure();
    let rows = [am, bm, c].map(|q| [q.c[1], q.c[2], q.c[3]]);
    let det = det3(&rows);
    let kind = if det.norm() > tol {
        Reducibility::Irreducible
    } else {
        let (p, q) = (rows[0], rows[1]);
        let cross = [
            p[1] * q[2] - p[2] * q[1],
            p[2] * q[0] - p[0] * q[2],
            p[0] * q[1] - p[1] * q[0],
        ];
        let n = cross.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if n > tol {
            Reducibility::AlmostIrreducible
        } else {
            Reducibility::Reducible
        }
    };
    IrreducibilityReport { kind, det }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    pub boundary: f64,
    pub verify: f64,
}

impl Default for Tolerances {
    fn default() -> Tolerances {
        Tolerances { boundary: DEFAULT_BOUNDARY_TOL, verify: DEFAULT_VERIFY_TOL }
    }
}

/// A classified point with its explicit representation, if one exists.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedPoint {
    pub x: f64,
    pub y: f64,
    pub region: Region,
    pub construction: Option<Construction>,
    pub invariant: Option<Invariant>,
    pub reducibility: Reducibility,
    pub determinant: Option<Complex64>,
    /// Relator residual, when a presentation was supplied.
    pub residual: Option<f64>,
}

impl ClassifiedPoint {
    pub fn pair(&self) -> Option<(&NumQuaternion, &NumQuaternion)> {
        self.construction.as_ref().map(|c| (&c.a, &c.b))
    }

    pub fn mat2(&self) -> Option<(NumMatrix<2>, NumMatrix<2>)> {
        let c = self.construction.as_ref()?;
        Some((embed_2x2(&c.a).ok()?, embed_2x2(&c.b).ok()?))
    }

    pub fn mat3(&self) -> Option<(NumMatrix<3>, NumMatrix<3>)> {
        self.construction.as_ref().map(so_matrix_pair)
    }
}

/// Region, pair, invariant, reducibility and (optionally) relator residual.
pub fn classify(x: f64, y: f64, presentation: Option<&Presentation>, tol: Tolerances) -> Result<ClassifiedPoint> {
    let region = classify_point(x, y, tol.boundary);
    if region == Region::Degenerate_x2_1_y0 {
        return Ok(ClassifiedPoint {
            x,
            y,
            region,
            construction: None,
            invariant: None,
            reducibility: Reducibility::None,
            determinant: None,
            residual: None,
        });
    }
    let construction = construct_pair(region, x, y)?;
    let invariant = geometric_invariant(region, x, y, tol.boundary)?;
    let report = irreducibility_test(&construction.a, &construction.b, tol.boundary);
    let residual = presentation.map(|p| verify_relator(&construction.a, &construction.b, p));
    Ok(ClassifiedPoint {
        x,
        y,
        region,
        construction: Some(construction),
        invariant,
        reducibility: report.kind,
        determinant: Some(report.det),
        residual,
    })
}

struct Pair<'a, T>(&'a T, &'a T);

impl<T: Serialize> Serialize for Pair<'_, T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        m.serialize_entry("A", self.0)?;
        m.serialize_entry("B", self.1)?;
        m.end()
    }
}

impl Serialize for ClassifiedPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("x", &self.x)?;
        m.serialize_entry("y", &self.y)?;
        m.serialize_entry("region", &self.region)?;
        m.serialize_entry("region_name", self.region.name())?;
        if let Some(c) = &self.construction {
            m.serialize_entry("algebra", &c.params)?;
            m.serialize_entry("scalars", &c.a.field.max_with(c.b.field))?;
            m.serialize_entry("A", &c.a)?;
            m.serialize_entry("B", &c.b)?;
            if let Some((a2, b2)) = self.mat2() {
                m.serialize_entry("mat2", &Pair(&a2, &b2))?;
            }
            let (a3, b3) = so_matrix_pair(c);
            m.serialize_entry("mat3", &Pair(&a3, &b3))?;
            m.serialize_entry("field", &c.field_desc)?;
        }
        m.serialize_entry("invariant", &self.invariant)?;
        m.serialize_entry("reducibility", &self.reducibility)?;
        if let Some(r) = self.residual {
            m.serialize_entry("residual", &r)?;
        }
        m.end()
    }
}

impl ScalarField {
    fn max_with(self, other: ScalarField) -> ScalarField {
        if self == ScalarField::Complex || other == ScalarField::Complex {
            ScalarField::Complex
        } else {
            ScalarField::Real
        }
    }
}
