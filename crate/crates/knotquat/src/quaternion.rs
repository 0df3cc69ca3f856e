//! Numeric quaternions `α + βi + γj + δij` in `(μ, ν)` algebras.
//!
//! Components are stored as complex numbers so the same type serves the real
//! algebras and their complexification; the [`ScalarField`] tag records which
//! one a value belongs to.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::quatsym::{conj_matrix, norm_form, AlgebraParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarField {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NumQuaternion {
    pub c: [Complex64; 4],
    pub params: AlgebraParams,
    pub field: ScalarField,
}

impl NumQuaternion {
    pub fn real(params: AlgebraParams, c: [f64; 4]) -> NumQuaternion {
        NumQuaternion { c: c.map(|v| Complex64::new(v, 0.0)), params, field: ScalarField::Real }
    }

    pub fn complex(params: AlgebraParams, c: [Complex64; 4]) -> NumQuaternion {
        NumQuaternion { c, params, field: ScalarField::Complex }
    }

    pub fn one(params: AlgebraParams) -> NumQuaternion {
        NumQuaternion::real(params, [1.0, 0.0, 0.0, 0.0])
    }

    fn mu_nu(&self) -> (Complex64, Complex64) {
        (Complex64::new(self.params.mu_f64(), 0.0), Complex64::new(self.params.nu_f64(), 0.0))
    }

    /// Scalar part `A⁺`.
    pub fn scalar(&self) -> Complex64 {
        self.c[0]
    }

    /// Pure part `A⁻`.
    pub fn pure(&self) -> NumQuaternion {
        let mut q = *self;
        q.c[0] = Complex64::new(0.0, 0.0);
        q
    }

    pub fn conj(&self) -> NumQuaternion {
        let mut q = *self;
        for k in 1..4 {
            q.c[k] = -q.c[k];
        }
        q
    }

    /// `N(q) = q q̅`.
    pub fn norm(&self) -> Complex64 {
        let (mu, nu) = self.mu_nu();
        norm_form(mu, nu, self.c)
    }

    /// Trace `q + q̅ = 2q⁺`.
    pub fn trace(&self) -> Complex64 {
        self.c[0] * 2.0
    }

    pub fn scale(&self, k: f64) -> NumQuaternion {
        let mut q = *self;
        for v in &mut q.c {
            *v *= k;
        }
        q
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Real components, if every imaginary part is below `tol`.
    pub fn to_real(&self, tol: f64) -> Option<[f64; 4]> {
        if self.c.iter().all(|v| v.im.abs() <= tol) {
            Some(self.c.map(|v| v.re))
        } else {
            None
        }
    }

    /// Coordinates of the pure part as `(X, Y, Z)` in the basis `{−ij, j, i}`.
    pub fn pure_xyz(&self) -> [Complex64; 3] {
        [-self.c[3], self.c[2], self.c[1]]
    }

    /// Matrix of `v ↦ q v q̅` on `(X, Y, Z)`.
    pub fn conj_matrix(&self) -> [[Complex64; 3]; 3] {
        let (mu, nu) = self.mu_nu();
        conj_matrix(mu, nu, self.c)
    }

    fn join_field(&self, other: &NumQuaternion) -> ScalarField {
        if self.field == ScalarField::Complex || other.field == ScalarField::Complex {
            ScalarField::Complex
        } else {
            ScalarField::Real
        }
    }
}

impl Mul for NumQuaternion {
    type Output = NumQuaternion;

    fn mul(self, o: NumQuaternion) -> NumQuaternion {
        debug_assert_eq!(self.params, o.params, "quaternions from different algebras");
        let (mu, nu) = self.mu_nu();
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = o.c;
        let c = [
            a0 * b0 + mu * a1 * b1 + nu * a2 * b2 - mu * nu * a3 * b3,
            a0 * b1 + a1 * b0 - nu * a2 * b3 + nu * a3 * b2,
            a0 * b2 + a2 * b0 + mu * a1 * b3 - mu * a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 - a2 * b1,
        ];
        NumQuaternion { c, params: self.params, field: self.join_field(&o) }
    }
}

impl Add for NumQuaternion {
    type Output = NumQuaternion;

    fn add(self, o: NumQuaternion) -> NumQuaternion {
        let field = self.join_field(&o);
        NumQuaternion { c: std::array::from_fn(|k| self.c[k] + o.c[k]), params: self.params, field }
    }
}

impl Sub for NumQuaternion {
    type Output = NumQuaternion;

    fn sub(self, o: NumQuaternion) -> NumQuaternion {
        let field = self.join_field(&o);
        NumQuaternion { c: std::array::from_fn(|k| self.c[k] - o.c[k]), params: self.params, field }
    }
}

impl Neg for NumQuaternion {
    type Output = NumQuaternion;

    fn neg(self) -> NumQuaternion {
        NumQuaternion { c: self.c.map(|v| -v), ..self }
    }
}

/// Serializes real components as numbers and complex ones as `[re, im]`.
pub struct Components<'a>(pub &'a [Complex64], pub ScalarField);

impl Serialize for Components<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            match self.1 {
                ScalarField::Real => seq.serialize_element(&v.re)?,
                ScalarField::Complex => seq.serialize_element(&[v.re, v.im])?,
            }
        }
        seq.end()
    }
}

impl Serialize for NumQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Components(&self.c, self.field).serialize(s)
    }
}
