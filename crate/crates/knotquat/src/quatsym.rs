//! Symbolic multiplication matrices in the basis `{1, A⁻, B⁻, (A⁻B⁻)⁻}`.
//!
//! For unit quaternions `A`, `B` with `A⁺ = B⁺ = x` and `(A⁻B⁻)⁺ = −y`, left
//! and right multiplication by any word in `A`, `B` is a 4×4 matrix over
//! `ℤ[x, y]`. The quantity `u = 1 − x² = N(A⁻)` is substituted everywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{Num, ToPrimitive};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::polyalg::Poly;
use crate::presentation::{Gen, Letter, Word};

/// 4×4 matrix over `ℤ[x, y, s]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymMat4 {
    pub entries: [[Poly; 4]; 4],
}

/// Column vector of four polynomials.
pub type SymVec4 = [Poly; 4];

pub fn zero_vec() -> SymVec4 {
    std::array::from_fn(|_| Poly::zero())
}

impl SymMat4 {
    pub fn zero() -> SymMat4 {
        SymMat4 { entries: std::array::from_fn(|_| std::array::from_fn(|_| Poly::zero())) }
    }

    pub fn identity() -> SymMat4 {
        SymMat4::scalar(&Poly::one())
    }

    pub fn scalar(c: &Poly) -> SymMat4 {
        let mut m = SymMat4::zero();
        for i in 0..4 {
            m.entries[i][i] = c.clone();
        }
        m
    }

    pub fn from_rows(rows: [[Poly; 4]; 4]) -> SymMat4 {
        SymMat4 { entries: rows }
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i][j]
    }

    pub fn column(&self, j: usize) -> SymVec4 {
        std::array::from_fn(|i| self.entries[i][j].clone())
    }

    pub fn transpose(&self) -> SymMat4 {
        SymMat4 { entries: std::array::from_fn(|i| std::array::from_fn(|j| self.entries[j][i].clone())) }
    }

    pub fn apply(&self, v: &SymVec4) -> SymVec4 {
        std::array::from_fn(|i| {
            let mut acc = Poly::zero();
            for j in 0..4 {
                if !self.entries[i][j].is_zero() && !v[j].is_zero() {
                    acc += &(&self.entries[i][j] * &v[j]);
                }
            }
            acc
        })
    }

    /// Lower-right 3×3 block: the action on the pure part.
    pub fn block3(&self) -> [[Poly; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.entries[i + 1][j + 1].clone()))
    }

    pub fn is_identity(&self) -> bool {
        *self == SymMat4::identity()
    }
}

impl fmt::Debug for SymMat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymMat4[")?;
        for row in &self.entries {
            let r: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for SymMat4 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

impl Mul<&SymMat4> for &SymMat4 {
    type Output = SymMat4;
    fn mul(self, rhs: &SymMat4) -> SymMat4 {
        let mut out = SymMat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = Poly::zero();
                for k in 0..4 {
                    let (a, b) = (&self.entries[i][k], &rhs.entries[k][j]);
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                out.entries[i][j] = acc;
            }
        }
        out
    }
}

impl Add<&SymMat4> for &SymMat4 {
    type Output = SymMat4;
    fn add(self, rhs: &SymMat4) -> SymMat4 {
        SymMat4 { entries: std::array::from_fn(|i| std::array::from_fn(|j| &self.entries[i][j] + &rhs.entries[i][j])) }
    }
}

impl Sub<&SymMat4> for &SymMat4 {
    type Output = SymMat4;
    fn sub(self, rhs: &SymMat4) -> SymMat4 {
        SymMat4 { entries: std::array::from_fn(|i| std::array::from_fn(|j| &self.entries[i][j] - &rhs.entries[i][j])) }
    }
}

impl Neg for &SymMat4 {
    type Output = SymMat4;
    fn neg(self) -> SymMat4 {
        SymMat4 { entries: std::array::from_fn(|i| std::array::from_fn(|j| -&self.entries[i][j])) }
    }
}

/// `u = 1 − x²`.
pub fn u() -> Poly {
    Poly::one() - Poly::x() * Poly::x()
}

/// `N((A⁻B⁻)⁻)`-related constant `y² − u²`.
fn y2_minus_u2() -> Poly {
    let u = u();
    Poly::y() * Poly::y() - &u * &u
}

/// The three pure basis elements `A⁻`, `B⁻`, `(A⁻B⁻)⁻`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMatrices {
    pub a: SymMat4,
    pub b: SymMat4,
    pub ab: SymMat4,
}

/// Left multiplication by `A⁻`, `B⁻`, `(A⁻B⁻)⁻`.
pub fn left_mult_basis() -> BasisMatrices {
    let (o, l, y, u, w) = (Poly::zero(), Poly::one(), Poly::y(), u(), y2_minus_u2());
    let a = SymMat4::from_rows([
        [o.clone(), -&u, -&y, o.clone()],
        [l.clone(), o.clone(), o.clone(), y.clone()],
        [o.clone(), o.clone(), o.clone(), -&u],
        [o.clone(), o.clone(), l.clone(), o.clone()],
    ]);
    let b = SymMat4::from_rows([
        [o.clone(), -&y, -&u, o.clone()],
        [o.clone(), o.clone(), o.clone(), u.clone()],
        [l.clone(), o.clone(), o.clone(), -&y],
        [o.clone(), -&l, o.clone(), o.clone()],
    ]);
    let ab = SymMat4::from_rows([
        [o.clone(), o.clone(), o.clone(), w],
        [o.clone(), -&y, -&u, o.clone()],
        [o.clone(), u.clone(), y.clone(), o.clone()],
        [l, o.clone(), o.clone(), o],
    ]);
    BasisMatrices { a, b, ab }
}

/// Right multiplication by `A⁻`, `B⁻`, `(A⁻B⁻)⁻`; column `j` holds the
/// coordinates of `basis_j · X`.
pub fn right_mult_basis() -> BasisMatrices {
    let (o, l, y, u, w) = (Poly::zero(), Poly::one(), Poly::y(), u(), y2_minus_u2());
    let a = SymMat4::from_rows([
        [o.clone(), -&u, -&y, o.clone()],
        [l.clone(), o.clone(), o.clone(), -&y],
        [o.clone(), o.clone(), o.clone(), u.clone()],
        [o.clone(), o.clone(), -&l, o.clone()],
    ]);
    let b = SymMat4::from_rows([
        [o.clone(), -&y, -&u, o.clone()],
        [o.clone(), o.clone(), o.clone(), -&u],
        [l.clone(), o.clone(), o.clone(), y.clone()],
        [o.clone(), l.clone(), o.clone(), o.clone()],
    ]);
    let ab = SymMat4::from_rows([
        [o.clone(), o.clone(), o.clone(), w],
        [o.clone(), y.clone(), u.clone(), o.clone()],
        [o.clone(), -&u, -&y, o.clone()],
        [l, o.clone(), o.clone(), o],
    ]);
    BasisMatrices { a, b, ab }
}

fn letter_matrix(pure: &SymMat4, inverse: bool) -> SymMat4 {
    let xi = SymMat4::scalar(&Poly::x());
    if inverse {
        &xi - pure
    } else {
        &xi + pure
    }
}

fn pure_for(basis: &BasisMatrices, g: Gen) -> &SymMat4 {
    match g {
        Gen::A => &basis.a,
        Gen::B => &basis.b,
    }
}

/// Left multiplication by `A`, `B`, `A̅` or `B̅`.
pub fn left_mult(l: Letter) -> SymMat4 {
    letter_matrix(pure_for(&left_mult_basis(), l.gen), l.inverse)
}

/// Right multiplication by `A`, `B`, `A̅` or `B̅`.
pub fn right_mult(l: Letter) -> SymMat4 {
    letter_matrix(pure_for(&right_mult_basis(), l.gen), l.inverse)
}

/// Left multiplication by `w(A, B)`; column 0 gives the coordinates of `w`.
pub fn eval_word(w: &Word) -> SymMat4 {
    let left = left_mult_basis();
    let mut m = SymMat4::identity();
    for l in w.letters() {
        m = &m * &letter_matrix(pure_for(&left, l.gen), l.inverse);
    }
    m
}

/// Conjugation `v ↦ X v X̅` by the quaternion of `l`.
pub fn conj_action(l: Letter) -> SymMat4 {
    &left_mult(l) * &right_mult(l.inv())
}

/// Product of [`conj_action`] over the letters of `w`.
pub fn eval_conj(w: &Word) -> SymMat4 {
    let mut m = SymMat4::identity();
    for &l in w.letters() {
        m = &m * &conj_action(l);
    }
    m
}

/// Gram matrix of `{A⁻, B⁻, (A⁻B⁻)⁻}` for the norm form.
pub fn gram_matrix() -> [[Poly; 3]; 3] {
    let (o, y, u, w) = (Poly::zero(), Poly::y(), u(), -y2_minus_u2());
    [[u.clone(), y.clone(), o.clone()], [y, u, o.clone()], [o.clone(), o, w]]
}

/// Parameters `(μ, ν)` of the quaternion algebra with `i² = μ`, `j² = ν`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    pub mu: Rational64,
    pub nu: Rational64,
}

impl AlgebraParams {
    /// Hamilton quaternions; unit group `S³ ≅ SU(2)`.
    pub const HAMILTON: AlgebraParams =
        AlgebraParams { mu: Rational64::new_raw(-1, 1), nu: Rational64::new_raw(-1, 1) };
    /// Split quaternions `M(2, k)`; unit group `SL(2)`.
    pub const SPLIT: AlgebraParams =
        AlgebraParams { mu: Rational64::new_raw(-1, 1), nu: Rational64::new_raw(1, 1) };

    pub fn new(mu: Rational64, nu: Rational64) -> Result<AlgebraParams> {
        if mu == Rational64::from(0) || nu == Rational64::from(0) {
            return Err(Error::Argument("algebra parameters must be nonzero".into()));
        }
        Ok(AlgebraParams { mu, nu })
    }

    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64().unwrap_or(f64::NAN)
    }

    pub fn nu_f64(&self) -> f64 {
        self.nu.to_f64().unwrap_or(f64::NAN)
    }

    /// Norm form `diag(μν, −ν, −μ)` in the basis `{−ij, j, i}`.
    pub fn eta(&self) -> [f64; 3] {
        let (m, n) = (self.mu_f64(), self.nu_f64());
        [m * n, -n, -m]
    }
}

impl Serialize for AlgebraParams {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let num = |r: Rational64| -> serde_json::Value {
            if r.is_integer() {
                serde_json::Value::from(r.to_integer())
            } else {
                serde_json::Value::from(r.to_f64().unwrap_or(f64::NAN))
            }
        };
        [num(self.mu), num(self.nu)].serialize(s)
    }
}

/// `m(μ, ν; α, β, γ, δ)` over any commutative scalar ring, with no norm check.
pub fn conj_matrix<T>(mu: T, nu: T, q: [T; 4]) -> [[T; 3]; 3]
where
    T: Num + Copy,
{
    let [a, b, c, d] = q;
    let two = T::one() + T::one();
    let (aa, bb, cc, dd) = (a * a, b * b, c * c, d * d);
    [
        [
            aa + mu * bb + nu * cc + mu * nu * dd,
            two * (nu * c * d - a * b),
            two * (a * c + mu * b * d),
        ],
        [
            T::zero() - two * mu * (a * b + nu * c * d),
            aa + mu * bb - nu * cc - mu * nu * dd,
            T::zero() - two * mu * (b * c + a * d),
        ],
        [
            two * nu * (a * c - mu * b * d),
            two * nu * (a * d - b * c),
            aa - mu * bb + nu * cc - mu * nu * dd,
        ],
    ]
}

/// Norm `α² − μβ² − νγ² + μνδ²`.
pub fn norm_form<T: Num + Copy>(mu: T, nu: T, q: [T; 4]) -> T {
    let [a, b, c, d] = q;
    a * a - mu * b * b - nu * c * c + mu * nu * d * d
}

/// Matrix of `v ↦ q v q̅` on coordinates `{X, Y, Z}` in the basis `{−ij, j, i}`.
pub fn rotation_matrix(params: AlgebraParams, q: [f64; 4]) -> Result<[[f64; 3]; 3]> {
    let (mu, nu) = (params.mu_f64(), params.nu_f64());
    let n = norm_form(mu, nu, q);
    let scale: f64 = 1.0 + q.iter().map(|c| c * c).sum::<f64>();
    if !n.is_finite() || (n - 1.0).abs() > 1e-9 * scale {
        return Err(Error::NotUnitNorm(n));
    }
    Ok(conj_matrix(mu, nu, q))
}
