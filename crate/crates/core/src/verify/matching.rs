//! Recognizes members of the horosphere, tube and spherelike families.
//!
//! Parameters are read off the coefficients of `G`; a candidate is matched
//! only when the rebuilt family polynomial equals it exactly.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::htype::SpaceSignature;
use crate::linalg::QMatrix;
use crate::model::ModelPoint;
use crate::poly::{compose_affine, norm_v_sq, norm_z_sq, Layout, Poly, PolyFraction};
use crate::rational::{q, qi, sqrt_exact, Q};
use crate::verify::family::{family_polynomial, FamilyKind, FamilySpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Recognition {
    pub kind: FamilyKind,
    /// Explicit parameters; `None` only for spherelike members whose `λ` is
    /// irrational (the normal form still matched exactly).
    pub spec: Option<FamilySpec>,
    /// `λ²` for spherelike members.
    pub lambda_sq: Option<Q>,
}

fn unit_exp(l: Layout, vars: &[usize]) -> Vec<u8> {
    let mut e = vec![0u8; l.nvars()];
    for &v in vars {
        e[v] += 1;
    }
    e
}

/// Symmetric matrix of the `v`-quadratic part, linear coefficients and
/// constant of a polynomial in `v` alone of degree at most 2.
fn quadratic_in_v(p: &Poly) -> Option<(QMatrix, Vec<Q>, Q)> {
    let l = p.layout();
    let n = l.n;
    for (e, _) in p.terms() {
        let v_deg: u32 = (0..n).map(|i| e[l.v(i)] as u32).sum();
        let total: u32 = e.iter().map(|&x| x as u32).sum();
        if total != v_deg || v_deg > 2 {
            return None;
        }
    }
    let a = QMatrix::from_fn(n, n, |i, j| {
        let c = p.coefficient(&unit_exp(l, &[l.v(i), l.v(j)]));
        if i == j {
            c
        } else {
            c * q(1, 2)
        }
    });
    let lin = (0..n).map(|i| p.coefficient(&unit_exp(l, &[l.v(i)]))).collect();
    Some((a, lin, p.constant_term()))
}

fn matches(sig: &SpaceSignature, f: &PolyFraction, spec: &FamilySpec) -> Result<bool> {
    Ok(spec.validate(sig).is_ok() && family_polynomial(sig, spec)?.numerator() == f.numerator())
}

/// Identifies `f` as a member of one of the three families, or `None`.
pub fn recognize(sig: &SpaceSignature, f: &PolyFraction) -> Result<Option<Recognition>> {
    if f.k() != 1 {
        return Ok(None);
    }
    let g = f.numerator();
    let l = g.layout();
    match g.degree(l.t()) {
        0 | 1 => recognize_linear_in_t(sig, f),
        2 => recognize_spherelike(sig, f),
        _ => Ok(None),
    }
}

fn recognize_linear_in_t(sig: &SpaceSignature, f: &PolyFraction) -> Result<Option<Recognition>> {
    let g = f.numerator();
    let l = g.layout();
    let g0 = g.coefficient_in(l.t(), 0);
    let g1 = g.coefficient_in(l.t(), 1);
    if g1.total_degree() > 0 {
        return Ok(None);
    }
    let c2 = g1.constant_term();
    if g0.total_degree() == 0 {
        let spec = FamilySpec::Horosphere { c1: g0.constant_term(), c2 };
        return Ok(matches(sig, f, &spec)?.then_some(Recognition { kind: FamilyKind::Horosphere, spec: Some(spec), lambda_sq: None }));
    }
    let Some((a, lin, _)) = quadratic_in_v(&g0) else {
        return Ok(None);
    };
    let tr = a.trace();
    if tr.is_zero() {
        return Ok(None);
    }
    let c1 = a.mul(&a).trace() / &tr;
    let p = a.scale(&c1.recip());
    if p.mul(&p) != p {
        return Ok(None);
    }
    let w0: Vec<Q> = lin.iter().map(|x| -x / (qi(2) * &c1)).collect();
    if p.mul_vec(&w0) != w0 {
        return Ok(None);
    }
    let spec = FamilySpec::Tube { c1, c2, w_basis: p.column_space_basis(), w0 };
    Ok(matches(sig, f, &spec)?.then_some(Recognition { kind: FamilyKind::Tube, spec: Some(spec), lambda_sq: None }))
}

fn recognize_spherelike(sig: &SpaceSignature, f: &PolyFraction) -> Result<Option<Recognition>> {
    let g = f.numerator();
    let l = g.layout();
    let (n, m) = (l.n, l.m);
    let g2 = g.coefficient_in(l.t(), 2);
    if g2.total_degree() > 0 {
        return Ok(None);
    }
    let c1 = g2.constant_term();
    let g1 = g.coefficient_in(l.t(), 1);
    let g0 = g.coefficient_in(l.t(), 0);
    // G₁ = (c1/2)‖v − v0‖² + c2
    let v0: Vec<Q> = (0..n).map(|i| -g1.coefficient(&unit_exp(l, &[l.v(i)])) / &c1).collect();
    let v0_sq: Q = v0.iter().map(|x| x * x).sum();
    let c2 = g1.constant_term() - &c1 * v0_sq * q(1, 2);
    // G₀ ∋ −2 c1 ⟨z, z0⟩
    let z0: Vec<Q> = (0..m).map(|a| -g0.coefficient(&unit_exp(l, &[l.z(a)])) / (qi(2) * &c1)).collect();

    let shift = ModelPoint { v: v0.clone(), z: z0.clone(), t: Q::one() };
    let normal = compose_affine(sig, f, &shift, &c1.recip(), &(-&c2 / &c1))?;
    let t = Poly::var(l, l.t());
    let core = &(&t + &norm_v_sq(l).scale(&q(1, 4))).pow(2) + &norm_z_sq(l);
    let rest = normal.numerator() - &core;
    let Some((qm, lin, kappa)) = quadratic_in_v(&rest) else {
        return Ok(None);
    };
    if lin.iter().any(|x| !x.is_zero()) {
        return Ok(None);
    }
    let lambda_sq = kappa * q(1, 4);
    if lambda_sq < Q::zero() || qm.mul(&qm) != QMatrix::identity(n).scale(&lambda_sq) {
        return Ok(None);
    }
    if sig.module().generators().iter().any(|j| j.mul(&qm) != qm.mul(j)) {
        return Ok(None);
    }
    let spec = match sqrt_exact(&lambda_sq) {
        Some(lambda) => {
            let plus = if lambda.is_zero() {
                QMatrix::zeros(n, n)
            } else {
                QMatrix::identity(n).add(&qm.scale(&lambda.recip())).scale(&q(1, 2))
            };
            let spec = FamilySpec::Spherelike { c1, c2, v0, z0, lambda, plus };
            if !matches(sig, f, &spec)? {
                return Ok(None);
            }
            Some(spec)
        }
        None => None,
    };
    Ok(Some(Recognition { kind: FamilyKind::Spherelike, spec, lambda_sq: Some(lambda_sq) }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;

    fn sig(m: usize, c: usize) -> SpaceSignature {
        SpaceSignature::new(build_clifford_module(m, c).unwrap())
    }

    fn roundtrip(s: &SpaceSignature, spec: &FamilySpec) -> Recognition {
        let f = family_polynomial(s, spec).unwrap();
        let r = recognize(s, &f).unwrap().expect("recognized");
        assert_eq!(r.kind, spec.kind());
        let rebuilt = family_polynomial(s, r.spec.as_ref().unwrap()).unwrap();
        assert_eq!(rebuilt, f);
        r
    }

    #[test]
    fn recognizes_each_family() {
        let s = sig(1, 2);
        roundtrip(&s, &FamilySpec::horosphere(qi(3), q(-1, 2)));
        let w = vec![vec![qi(1), qi(0), qi(0), qi(0)], vec![qi(0), qi(1), qi(1), qi(0)]];
        roundtrip(&s, &FamilySpec::Tube { c1: q(3, 2), c2: qi(1), w_basis: w, w0: vec![qi(2), qi(1), qi(1), qi(0)] });
        let spec = FamilySpec::spherelike(&s, qi(2), qi(-1), vec![qi(1), qi(0), qi(-1), qi(2)], vec![qi(3)], q(1, 2), 1).unwrap();
        let r = roundtrip(&s, &spec);
        assert_eq!(r.lambda_sq, Some(q(1, 4)));
        let spec = FamilySpec::spherelike(&s, qi(1), qi(0), vec![qi(0); 4], vec![qi(0)], qi(0), 0).unwrap();
        roundtrip(&s, &spec);
    }

    #[test]
    fn irrational_lambda_normal_form() {
        // Q = [[1,1],[1,-1]] ⊗ I₂ commutes with J₁ and squares to 2I.
        let s = sig(1, 2);
        let l = Layout::of(&s);
        let base = family_polynomial(&s, &FamilySpec::spherelike_normalized(&s, qi(0), 0).unwrap()).unwrap();
        let mut g = base.numerator().clone();
        let v = |i| Poly::var(l, l.v(i));
        let form = &(&(&(&v(0) * &v(0)) + &(&v(1) * &v(1))) - &(&v(2) * &v(2))) - &(&v(3) * &v(3));
        let cross = &(&(&v(0) * &v(2)) + &(&v(1) * &v(3)));
        g += &form;
        g += &cross.scale(&qi(2));
        g += &Poly::constant(l, qi(8));
        let f = PolyFraction::new(g, 1).unwrap();
        let r = recognize(&s, &f).unwrap().unwrap();
        assert_eq!(r.kind, FamilyKind::Spherelike);
        assert_eq!(r.spec, None);
        assert_eq!(r.lambda_sq, Some(qi(2)));
    }

    #[test]
    fn rejects_non_members() {
        let s = sig(1, 1);
        let l = Layout::of(&s);
        let t = Poly::var(l, l.t());
        let f = PolyFraction::new(&t.pow(3) + &Poly::one(l), 1).unwrap();
        assert_eq!(recognize(&s, &f).unwrap(), None);
        let f = PolyFraction::new(&Poly::var(l, l.z(0)) + &t, 1).unwrap();
        assert_eq!(recognize(&s, &f).unwrap(), None);
    }
}
