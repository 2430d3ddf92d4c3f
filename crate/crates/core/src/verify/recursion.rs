//! Builds `G = Σ G_j t^j` from `G₀` so that the Laplace condition holds
//! order by order in `t`.
//!
//! With `M = m + n/2 + 1` and `𝐃 = Δ_v + (‖v‖²/4) Δ_z + Σ ∂_{e_i} ∂_{[v, e_i]}`:
//!
//! ```text
//! G₁ = (𝐃 G₀ − a₀) / M
//! G₂ = (𝐃 G₁ + Δ_z G₀) / (2(M − 1))
//! ```
//!
//! The expansion stops at `t^r`; what remains are the two boundary
//! conditions `𝐃 G_r + Δ_z G_{r−1} = 0` and `Δ_z G_r = 0`.

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::poly::{bold_d, laplace_z, Poly};
use crate::rational::{q, qi, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct Recursion {
    /// `G₀, …, G_r`.
    pub parts: Vec<Poly>,
    /// `Σ G_j t^j`.
    pub g: Poly,
    /// `[𝐃 G_r + Δ_z G_{r−1}, Δ_z G_r]`.
    pub boundary: [Poly; 2],
}

impl Recursion {
    pub fn closes(&self) -> bool {
        self.boundary.iter().all(Poly::is_zero)
    }
}

pub fn laplace_recursion(sig: &SpaceSignature, g0: &Poly, a0: &Q, r: usize) -> Result<Recursion> {
    if !(1..=2).contains(&r) {
        return Err(Error::InvalidArgument(format!("recursion depth must be 1 or 2, got {r}")));
    }
    let l = g0.layout();
    if g0.degree(l.t()) > 0 {
        return Err(Error::InvalidArgument("G0 must not depend on t".into()));
    }
    let big_m = qi(sig.m() as i64) + q(sig.n() as i64, 2) + qi(1);
    let g1 = (&bold_d(sig, g0) - &Poly::constant(l, a0.clone())).scale(&big_m.recip());
    let mut parts = vec![g0.clone(), g1];
    if r == 2 {
        let denom = qi(2) * (&big_m - qi(1));
        let g2 = (&bold_d(sig, &parts[1]) + &laplace_z(g0)).scale(&denom.recip());
        parts.push(g2);
    }
    let gr = &parts[r];
    let boundary = [&bold_d(sig, gr) + &laplace_z(&parts[r - 1]), laplace_z(gr)];
    let mut g = Poly::zero(l);
    for (j, p) in parts.iter().enumerate() {
        g += &p.shift(l.t(), j as u8);
    }
    Ok(Recursion { parts, g, boundary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;
    use crate::poly::{norm_z_sq, Layout};

    #[test]
    fn constant_seed() {
        let s = SpaceSignature::new(build_clifford_module(1, 2).unwrap());
        let l = Layout::of(&s);
        let r = laplace_recursion(&s, &Poly::one(l), &qi(3), 1).unwrap();
        assert_eq!(r.parts[1], Poly::constant(l, q(-3, 4)));
        assert!(r.closes());
    }

    #[test]
    fn z_norm_seed_fails() {
        let s = SpaceSignature::new(build_clifford_module(1, 2).unwrap());
        let l = Layout::of(&s);
        let r = laplace_recursion(&s, &norm_z_sq(l), &qi(0), 1).unwrap();
        assert!(!r.closes());
        assert!(laplace_recursion(&s, &norm_z_sq(l), &qi(0), 3).is_err());
    }
}
