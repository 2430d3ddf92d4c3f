//! Exact transnormality and Laplace checks for `F = G / t^k`.
//!
//! With `T = t Σ(D_i G)² + t² Σ(∂_{f_α} G)² + (t ∂_t G − k G)²` we have
//! `t^{2k} |∇F|² = T`, so transnormality with `b(x) = b₂x² + b₁x + b₀` is the
//! identity `T = b₂ G² + b₁ G t^k + b₀ t^{2k}`. Likewise
//!
//! ```text
//! t^k ΔF = t Δ_v G + t (t + ‖v‖²/4) Δ_z G + t² ∂_t² G − 2k t ∂_t G + k(k+1) G
//!          − (m + n/2 − 1)(t ∂_t G − k G) + t Σ_i ∂_{e_i} ∂_{[v, e_i]} G
//! ```
//!
//! and the Laplace condition `ΔF = α F + a₀` is `t^k ΔF = α G + a₀ t^k`.
//! Coefficients are fitted by an exact linear solve over monomials.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::htype::SpaceSignature;
use crate::linalg::{solve, QMatrix};
use crate::poly::{apply_di, laplace_v, laplace_z, norm_v_sq, s_operator, Exponent, Poly, PolyFraction};
use crate::rational::{q, qi, RatPair, Q};

/// Fits `target = Σ c_j basis_j` exactly; returns coefficients and residual.
fn fit(target: &Poly, basis: &[Poly]) -> (Vec<Q>, Poly) {
    let mut monomials: BTreeSet<Exponent> = target.terms().map(|(e, _)| e.clone()).collect();
    for b in basis {
        monomials.extend(b.terms().map(|(e, _)| e.clone()));
    }
    let rows: Vec<&Exponent> = monomials.iter().collect();
    let a = QMatrix::from_fn(rows.len(), basis.len(), |i, j| basis[j].coefficient(rows[i]));
    let rhs: Vec<Q> = rows.iter().map(|e| target.coefficient(e)).collect();
    let sol = solve(&a, &rhs).solution;
    let mut residual = target.clone();
    for (c, b) in sol.iter().zip(basis) {
        if !c.is_zero() {
            residual -= &b.scale(c);
        }
    }
    (sol, residual)
}

/// `t^{2k} |∇F|²` as a polynomial.
pub fn gradient_norm_numerator(sig: &SpaceSignature, f: &PolyFraction) -> Result<Poly> {
    let g = f.numerator();
    let l = g.layout();
    let t = Poly::var(l, l.t());
    let mut sum_d = Poly::zero(l);
    for i in 0..l.n {
        let d = apply_di(sig, g, i)?;
        sum_d += &(&d * &d);
    }
    let mut sum_z = Poly::zero(l);
    for a in 0..l.m {
        let d = g.derivative(l.z(a));
        sum_z += &(&d * &d);
    }
    let radial = &(&t * &g.derivative(l.t())) - &g.scale(&qi(f.k() as i64));
    Ok(&(&(&t * &sum_d) + &(&t.pow(2) * &sum_z)) + &(&radial * &radial))
}

/// `t^k ΔF` as a polynomial.
pub fn laplacian_numerator(sig: &SpaceSignature, f: &PolyFraction) -> Poly {
    let g = f.numerator();
    let l = g.layout();
    let k = qi(f.k() as i64);
    let t = Poly::var(l, l.t());
    let gt = g.derivative(l.t());
    let t_gt = &t * &gt;
    let lz = laplace_z(g);
    let mut out = &t * &laplace_v(g);
    if !lz.is_zero() {
        let weight = &t + &norm_v_sq(l).scale(&q(1, 4));
        out += &(&(&t * &weight) * &lz);
    }
    out += &(&t.pow(2) * &gt.derivative(l.t()));
    out -= &t_gt.scale(&(qi(2) * &k));
    out += &g.scale(&(&k * (&k + qi(1))));
    let c = Q::from_integer((l.m as i64).into()) + q(l.n as i64, 2) - qi(1);
    out -= &(&t_gt - &g.scale(&k)).scale(&c);
    out += &(&t * &s_operator(sig, g));
    out
}

/// Transnormal residual `T − b₂G² − b₁G t^k − b₀ t^{2k}` and `[b₂, b₁, b₀]`.
pub fn transnormal_residual(sig: &SpaceSignature, f: &PolyFraction) -> Result<(Poly, [Q; 3])> {
    let g = f.numerator();
    let l = g.layout();
    let k = f.k() as u8;
    let target = gradient_norm_numerator(sig, f)?;
    let basis = [g * g, g.shift(l.t(), k), Poly::one(l).shift(l.t(), 2 * k)];
    let (sol, residual) = fit(&target, &basis);
    Ok((residual, [sol[0].clone(), sol[1].clone(), sol[2].clone()]))
}

/// Laplace residual `t^k ΔF − αG − a₀ t^k` with `α` and `a₀`.
pub fn laplace_residual(sig: &SpaceSignature, f: &PolyFraction) -> Result<(Poly, Q, Q)> {
    let g = f.numerator();
    let l = g.layout();
    let target = laplacian_numerator(sig, f);
    let basis = [g.clone(), Poly::one(l).shift(l.t(), f.k() as u8)];
    let (sol, residual) = fit(&target, &basis);
    Ok((residual, sol[0].clone(), sol[1].clone()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub k: u32,
    pub transnormal: bool,
    /// `[b₂, b₁, b₀]` of `b(x) = b₂x² + b₁x + b₀`.
    pub b: [Q; 3],
    pub transnormal_residual: Poly,
    pub laplace: bool,
    pub alpha: Q,
    pub a0: Q,
    pub laplace_residual: Poly,
}

impl VerificationReport {
    pub fn passes(&self) -> bool {
        self.transnormal && self.laplace
    }

    /// `b₁² − 4b₂b₀`, which equals `64 c1² λ²` for spherelike members.
    pub fn lambda_discriminant(&self) -> Q {
        &self.b[1] * &self.b[1] - qi(4) * &self.b[0] * &self.b[2]
    }

    /// Transnormal residual split by degree in `t`, for diagnostics.
    pub fn transnormal_residual_by_t_degree(&self) -> Vec<(u8, Poly)> {
        let l = self.transnormal_residual.layout();
        self.transnormal_residual.split_by_degree(l.t())
    }
}

/// Runs both checks.
pub fn verify(sig: &SpaceSignature, f: &PolyFraction) -> Result<VerificationReport> {
    let (lres, alpha, a0) = laplace_residual(sig, f)?;
    let (tres, b) = transnormal_residual(sig, f)?;
    Ok(VerificationReport {
        k: f.k(),
        transnormal: tres.is_zero(),
        b,
        transnormal_residual: tres,
        laplace: lres.is_zero(),
        alpha,
        a0,
        laplace_residual: lres,
    })
}

/// Runs the Laplace check first and the transnormality check only when it
/// passes. Returns `None` for Laplace failures.
pub fn verify_laplace_first(sig: &SpaceSignature, f: &PolyFraction) -> Result<Option<VerificationReport>> {
    let (lres, alpha, a0) = laplace_residual(sig, f)?;
    if !lres.is_zero() {
        return Ok(None);
    }
    let (tres, b) = transnormal_residual(sig, f)?;
    Ok(Some(VerificationReport {
        k: f.k(),
        transnormal: tres.is_zero(),
        b,
        transnormal_residual: tres,
        laplace: true,
        alpha,
        a0,
        laplace_residual: lres,
    }))
}

#[derive(Serialize)]
struct ResidualJson {
    monomials: usize,
    sample: Vec<String>,
}

impl ResidualJson {
    fn of(p: &Poly) -> Self {
        let sample = p
            .terms()
            .take(10)
            .map(|(e, c)| {
                let mono = p.format_monomial(e);
                if mono.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{mono}")
                }
            })
            .collect();
        ResidualJson { monomials: p.len(), sample }
    }
}

#[derive(Serialize)]
struct ReportJson {
    schema_version: u32,
    k: u32,
    transnormal: bool,
    b2: RatPair,
    b1: RatPair,
    b0: RatPair,
    transnormal_residual: ResidualJson,
    laplace: bool,
    alpha: RatPair,
    a0: RatPair,
    laplace_residual: ResidualJson,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl Serialize for VerificationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut notes = Vec::new();
        if self.k >= 2 && !self.transnormal {
            notes.push("b was fitted with degree at most 2; higher-degree b is not searched for k >= 2".into());
        }
        ReportJson {
            schema_version: 1,
            k: self.k,
            transnormal: self.transnormal,
            b2: RatPair(self.b[0].clone()),
            b1: RatPair(self.b[1].clone()),
            b0: RatPair(self.b[2].clone()),
            transnormal_residual: ResidualJson::of(&self.transnormal_residual),
            laplace: self.laplace,
            alpha: RatPair(self.alpha.clone()),
            a0: RatPair(self.a0.clone()),
            laplace_residual: ResidualJson::of(&self.laplace_residual),
            notes,
        }
        .serialize(s)
    }
}
