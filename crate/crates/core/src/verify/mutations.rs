//! Perturbed spherelike and tube candidates that must fail transnormality.

use crate::clifford::coordinate_projector;
use crate::error::Result;
use crate::htype::SpaceSignature;
use crate::poly::{norm_v_sq, norm_z_sq, Layout, Poly, PolyFraction};
use crate::rational::{q, qi, Q};
use crate::verify::family::{family_polynomial, family_polynomial_unchecked, FamilySpec};

#[derive(Clone, Debug)]
pub struct Mutant {
    pub name: &'static str,
    pub candidate: PolyFraction,
}

/// Mutants of the spherelike member with `c1 = 1`, `c2 = 1`, `v0 = z0 = 0`,
/// the given `λ > 0` and `v₊` the first block, plus a tube with `w0 ∉ w`.
///
/// Mutants that coincide with the base polynomial on this space (dropping
/// the `z` term when `m = 0`, a non-invariant split when `m = 0`) are left
/// out.
pub fn mutation_suite(sig: &SpaceSignature, lambda: &Q) -> Result<Vec<Mutant>> {
    let l = Layout::of(sig);
    let (n, m) = (sig.n(), sig.m());
    let plus_copies = 1.min(sig.module().copies());
    let base_spec = FamilySpec::spherelike(sig, qi(1), qi(1), vec![qi(0); n], vec![qi(0); m], lambda.clone(), plus_copies)?;
    let base = family_polynomial(sig, &base_spec)?;
    let g = base.numerator();
    let t = Poly::var(l, l.t());
    let mut out = Vec::new();
    let push = |out: &mut Vec<Mutant>, name, p: Poly| -> Result<()> {
        out.push(Mutant { name, candidate: PolyFraction::new(p, 1)? });
        Ok(())
    };

    // 4λ² → −4λ²
    push(&mut out, "lambda_constant_sign_flipped", g - &Poly::constant(l, lambda * lambda * qi(8)))?;

    if m > 0 {
        let mut plus = coordinate_projector(n, &[0]);
        if sig.module().preserves_subspace(&plus) {
            plus = coordinate_projector(n, &(0..n / 2).collect::<Vec<_>>());
        }
        if let FamilySpec::Spherelike { c1, c2, v0, z0, lambda, .. } = &base_spec {
            let spec = FamilySpec::Spherelike {
                c1: c1.clone(),
                c2: c2.clone(),
                v0: v0.clone(),
                z0: z0.clone(),
                lambda: lambda.clone(),
                plus,
            };
            out.push(Mutant { name: "non_invariant_splitting", candidate: family_polynomial_unchecked(sig, &spec)? });
        }
        push(&mut out, "z_term_dropped", g - &norm_z_sq(l))?;
    }

    // t‖v‖²/2 → 3t‖v‖²/4
    push(&mut out, "cross_term_altered", g + &(&t * &norm_v_sq(l)).scale(&q(1, 4)))?;
    push(&mut out, "cubic_t_term_added", g + &t.pow(3))?;

    if n >= 2 {
        let mut e0 = vec![qi(0); n];
        e0[0] = qi(1);
        let mut e1 = vec![qi(0); n];
        e1[1] = qi(1);
        let spec = FamilySpec::Tube { c1: qi(1), c2: qi(0), w_basis: vec![e0], w0: e1 };
        out.push(Mutant { name: "w0_outside_w", candidate: family_polynomial_unchecked(sig, &spec)? });
    }
    Ok(out)
}
