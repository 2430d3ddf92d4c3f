//! The `(t + ½‖Π₂v‖²)² + ‖z − ½[Π₁v, Π₂v]‖²` over `t²` test for an
//! orthogonal splitting `v = v₁ ⊕ v₂`.
//!
//! The function is transnormal exactly when every `J_α` swaps the two
//! summands (`J v₁ ⊆ v₂` and `J v₂ ⊆ v₁`), and it also satisfies the Laplace
//! condition only for `m = 1`.

use num_traits::Zero;
use rand::Rng;

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::linalg::{orthogonal_complement, projector, QMatrix};
use crate::rational::{dot, qi, Q};
use crate::verify::family::{family_polynomial, FamilySpec};
use crate::verify::report::{verify, VerificationReport};

#[derive(Clone, Debug, PartialEq)]
pub struct Prop64Report {
    pub bracket_condition: bool,
    pub transnormal: bool,
    pub laplace: bool,
    pub report: VerificationReport,
}

impl Prop64Report {
    /// Transnormality matches the bracket condition and the Laplace
    /// condition only shows up for `m = 1`.
    pub fn is_consistent(&self, m: usize) -> bool {
        self.transnormal == self.bracket_condition && (!self.laplace || m == 1)
    }
}

/// `J_α v₁ ⊆ v₂` and `J_α v₂ ⊆ v₁` for every generator.
pub fn bracket_condition(sig: &SpaceSignature, p1: &QMatrix) -> bool {
    let p2 = QMatrix::identity(sig.n()).sub(p1);
    sig.module()
        .generators()
        .iter()
        .all(|j| p1.mul(&j.mul(p1)).is_zero() && p2.mul(&j.mul(&p2)).is_zero())
}

pub fn prop64_check(sig: &SpaceSignature, v1: &[Vec<Q>], v2: &[Vec<Q>]) -> Result<Prop64Report> {
    let n = sig.n();
    for a in v1.iter().chain(v2) {
        crate::error::check_dim(n, a.len())?;
    }
    if v1.iter().any(|a| v2.iter().any(|b| !dot(a, b).is_zero())) {
        return Err(Error::InvalidArgument("v1 and v2 are not orthogonal".into()));
    }
    let all: Vec<Vec<Q>> = v1.iter().chain(v2).cloned().collect();
    let rank = if all.is_empty() { 0 } else { QMatrix::from_rows(&all)?.rank() };
    if rank != n {
        return Err(Error::InvalidArgument(format!("v1 and v2 span a {rank}-dimensional subspace of v (n = {n})")));
    }
    let p1 = projector(n, v1)?;
    let spec = FamilySpec::Generalized64 { v1_basis: v1.to_vec() };
    let report = verify(sig, &family_polynomial(sig, &spec)?)?;
    Ok(Prop64Report {
        bracket_condition: bracket_condition(sig, &p1),
        transnormal: report.transnormal,
        laplace: report.laplace,
        report,
    })
}

/// Random rational splitting with `dim v₁ = d1`; `v₂` is the orthogonal
/// complement.
pub fn random_splitting<R: Rng + ?Sized>(n: usize, d1: usize, rng: &mut R) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    assert!(d1 <= n);
    loop {
        let v1: Vec<Vec<Q>> = (0..d1).map(|_| (0..n).map(|_| qi(rng.random_range(-2..=2))).collect()).collect();
        if d1 > 0 && QMatrix::from_rows(&v1).expect("equal rows").rank() < d1 {
            continue;
        }
        let v2 = orthogonal_complement(n, &v1).expect("dimensions agree");
        return (v1, v2);
    }
}

/// Coordinate splitting: `v₁` spanned by the listed basis vectors.
pub fn coordinate_splitting(n: usize, v1_indices: &[usize]) -> (Vec<Vec<Q>>, Vec<Vec<Q>>) {
    let unit = |i: usize| (0..n).map(|j| if i == j { qi(1) } else { qi(0) }).collect::<Vec<Q>>();
    let v1 = v1_indices.iter().map(|&i| unit(i)).collect();
    let v2 = (0..n).filter(|i| !v1_indices.contains(i)).map(unit).collect();
    (v1, v2)
}
