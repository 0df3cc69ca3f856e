//! Quaternion c-representations of two-generator groups.
//!
//! A c-representation sends the two generators `a`, `b` to conjugate unit
//! quaternions `A`, `B`. Up to conjugation such a pair is determined by
//! `x = A⁺` and `y = −(A⁻B⁻)⁺`, and the pairs satisfying the group relation
//! form a real algebraic set `V(I)` in the `(x, y)` plane.
//!
//! - [`variety`] computes the ideal `I` from a presentation.
//! - [`classify`] turns a real point of `V(I)` into an explicit pair in
//!   `S³`, `SL(2, ℝ)` or `SL(2, ℂ)`.
//! - [`affine`] adds a translation parameter `s` for representations into the
//!   affine group `H₀ ⋊ U₁`.
//! - [`numerics`] samples the real curve and tabulates regions.

pub mod affine;
pub mod classify;
pub mod error;
pub mod numerics;
pub mod polyalg;
pub mod presentation;
pub mod quaternion;
pub mod quatsym;
pub mod variety;

pub use error::{Error, Result};
pub use polyalg::{Ideal, Poly, Var};
pub use presentation::{parse_presentation, parse_word, two_bridge, Presentation, Word};
pub use quaternion::NumQuaternion;
pub use quatsym::AlgebraParams;
