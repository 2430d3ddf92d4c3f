//! Verification lab for Damek-Ricci spaces in the half-space model.
//!
//! The crate builds H-type algebras from Clifford modules, represents
//! candidate functions `F = G / t^k` with exact rational polynomials, and
//! decides the transnormality (`|∇F|² = b(F)`) and Laplace (`ΔF = a(F)`)
//! conditions as polynomial identities. Floating-point oracles (geodesic
//! integration, finite-difference mean curvature, dual-number gradients)
//! cross-check the exact path.
//!
//! ```
//! use drlab::{clifford, htype::SpaceSignature, verify};
//!
//! let module = clifford::build_clifford_module(1, 2).unwrap();
//! let sig = SpaceSignature::new(module);
//! let spec = verify::FamilySpec::spherelike_normalized(&sig, drlab::rational::q(1, 2), 1).unwrap();
//! let report = verify::verify(&sig, &verify::family_polynomial(&sig, &spec).unwrap()).unwrap();
//! assert!(report.transnormal && report.laplace);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clifford;
pub mod error;
pub mod geometry;
pub mod htype;
pub mod linalg;
pub mod model;
pub mod numeric;
pub mod par;
pub mod poly;
pub mod rational;
pub mod scalar;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
