//! Differential operators of the half-space model acting on polynomials, and
//! the polynomial form of `F ↦ c1 · F ∘ L_g + c2`.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::model::ModelPoint;
use crate::poly::{Layout, Poly, PolyFraction};
use crate::rational::{q, sqrt_exact, Q};

/// `D_i G = ∂_{e_i} G − ½ Σ_α ⟨[e_i, v], f_α⟩ ∂_{z_α} G`, i.e. `E_i / √t`.
pub fn apply_di(sig: &SpaceSignature, g: &Poly, i: usize) -> Result<Poly> {
    if i >= sig.n() {
        return Err(Error::IndexOutOfRange { index: i, limit: sig.n() });
    }
    let l = g.layout();
    let mut out = g.derivative(l.v(i));
    let half = q(-1, 2);
    let dz: Vec<Poly> = (0..sig.m()).map(|a| g.derivative(l.z(a))).collect();
    for c in sig.constants_from(i) {
        if dz[c.alpha].is_zero() {
            continue;
        }
        let coeff = &c.value * &half;
        out += &(&Poly::var(l, l.v(c.j)) * &dz[c.alpha]).scale(&coeff);
    }
    Ok(out)
}

/// `∂_{f_α} G`.
pub fn apply_dz(g: &Poly, alpha: usize) -> Poly {
    g.derivative(g.layout().z(alpha))
}

pub fn laplace_v(g: &Poly) -> Poly {
    let l = g.layout();
    let mut out = Poly::zero(l);
    for i in 0..l.n {
        out += &g.derivative(l.v(i)).derivative(l.v(i));
    }
    out
}

pub fn laplace_z(g: &Poly) -> Poly {
    let l = g.layout();
    let mut out = Poly::zero(l);
    for a in 0..l.m {
        out += &g.derivative(l.z(a)).derivative(l.z(a));
    }
    out
}

/// `Σ_i ∂_{e_i} ∂_{[v, e_i]} G`.
pub fn s_operator(sig: &SpaceSignature, g: &Poly) -> Poly {
    let l = g.layout();
    let mut out = Poly::zero(l);
    for c in sig.constants() {
        // c = c[j][i][α] contributes v_j ∂_{v_i} ∂_{z_α}.
        let (j, i) = (c.i, c.j);
        let d = g.derivative(l.v(i)).derivative(l.z(c.alpha));
        if !d.is_zero() {
            out += &(&Poly::var(l, l.v(j)) * &d).scale(&c.value);
        }
    }
    out
}

/// `Δ_v G + (‖v‖²/4) Δ_z G + Σ_i ∂_{e_i} ∂_{[v, e_i]} G`.
pub fn bold_d(sig: &SpaceSignature, g: &Poly) -> Poly {
    let l = g.layout();
    let mut out = laplace_v(g);
    let lz = laplace_z(g);
    if !lz.is_zero() {
        out += &(&super::norm_v_sq(l) * &lz).scale(&q(1, 4));
    }
    out += &s_operator(sig, g);
    out
}

/// Numerator of `c1 · (G/t^k) ∘ L_g + c2`:
/// `c1 t̄^{-k} G(√t̄ v + v̄, t̄ z + z̄ + ½√t̄ [v̄, v], t̄ t) + c2 t^k`.
pub fn compose_affine(
    sig: &SpaceSignature,
    f: &PolyFraction,
    g: &ModelPoint<Q>,
    c1: &Q,
    c2: &Q,
) -> Result<PolyFraction> {
    if c1.is_zero() {
        return Err(Error::InvalidArgument("c1 must be nonzero".into()));
    }
    if !(g.t > Q::zero()) {
        return Err(Error::NonPositiveT(g.t.to_string()));
    }
    let rt = sqrt_exact(&g.t).ok_or_else(|| Error::NotASquare(g.t.to_string()))?;
    let l: Layout = f.layout();
    crate::error::check_dim(sig.n(), g.v.len())?;
    crate::error::check_dim(sig.m(), g.z.len())?;

    let mut subs = Vec::with_capacity(l.nvars());
    for i in 0..l.n {
        subs.push(&Poly::var(l, l.v(i)).scale(&rt) + &Poly::constant(l, g.v[i].clone()));
    }
    // [v̄, v]^α = Σ v̄_i v_j c[i][j][α]
    let mut br = vec![Poly::zero(l); l.m];
    let half_rt = &rt * q(1, 2);
    for c in sig.constants() {
        if !g.v[c.i].is_zero() {
            br[c.alpha] += &Poly::var(l, l.v(c.j)).scale(&(&c.value * &g.v[c.i] * &half_rt));
        }
    }
    for (a, b) in br.iter().enumerate() {
        let mut s = &Poly::var(l, l.z(a)).scale(&g.t) + &Poly::constant(l, g.z[a].clone());
        s += b;
        subs.push(s);
    }
    subs.push(Poly::var(l, l.t()).scale(&g.t));

    let k = f.k();
    let tk = num_traits::pow(g.t.clone(), k as usize);
    let mut out = f.numerator().substitute(&subs)?.scale(&(c1 / tk));
    out += &Poly::var(l, l.t()).pow(k).scale(c2);
    PolyFraction::new(out, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;
    use crate::rational::qi;

    fn sig(m: usize, c: usize) -> SpaceSignature {
        SpaceSignature::new(build_clifford_module(m, c).unwrap())
    }

    #[test]
    fn di_on_z() {
        let s = sig(1, 1);
        let l = Layout::of(&s);
        let z = Poly::var(l, l.z(0));
        let d = apply_di(&s, &z, 0).unwrap();
        assert_eq!(d, Poly::var(l, l.v(1)).scale(&q(-1, 2)));
        assert!(apply_di(&s, &z, 2).is_err());
    }

    #[test]
    fn di_without_z_is_partial() {
        let s = sig(3, 1);
        let l = Layout::of(&s);
        let g = &super::super::norm_v_sq(l).pow(2) + &Poly::var(l, l.t());
        for i in 0..4 {
            assert_eq!(apply_di(&s, &g, i).unwrap(), g.derivative(i));
        }
    }

    #[test]
    fn compose_identity() {
        let s = sig(1, 2);
        let l = Layout::of(&s);
        let g = &super::super::norm_z_sq(l) + &Poly::one(l);
        let f = PolyFraction::new(g, 1).unwrap();
        let e = ModelPoint::identity(&s);
        assert_eq!(compose_affine(&s, &f, &e, &qi(1), &qi(0)).unwrap(), f);
        assert!(compose_affine(&s, &f, &e, &qi(0), &qi(0)).is_err());
        let bad = ModelPoint::new(vec![qi(0); 4], vec![qi(0)], qi(2)).unwrap();
        assert!(matches!(compose_affine(&s, &f, &bad, &qi(1), &qi(0)), Err(Error::NotASquare(_))));
    }
}
