//! Parametrized families of candidate numerators `G` for `F = G / t^k`.

use num_traits::{One, Zero};

use crate::clifford::{coordinate_projector, invariant_splitting};
use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::linalg::{projector, QMatrix};
use crate::model::ModelPoint;
use crate::poly::{Layout, Poly, PolyFraction};
use crate::rational::{q, qi, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Horosphere,
    Tube,
    Spherelike,
    DistanceLike,
    ChkRealTube,
    Generalized64,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Horosphere => "horosphere_i",
            FamilyKind::Tube => "tube_ii",
            FamilyKind::Spherelike => "spherelike_iii",
            FamilyKind::DistanceLike => "distance_like",
            FamilyKind::ChkRealTube => "chk_real_tube",
            FamilyKind::Generalized64 => "generalized_64",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FamilySpec {
    /// `c1 + c2 t`.
    Horosphere { c1: Q, c2: Q },
    /// `c1 ‖Π_w v − w0‖² + c2 t` with `w` spanned by `w_basis`.
    Tube { c1: Q, c2: Q, w_basis: Vec<Vec<Q>>, w0: Vec<Q> },
    /// `c1((t + ‖(v−v0)/2‖²)² + ‖z − z0 + ½[v, v0]‖² + λ⟨v−v0, Q(v−v0)⟩ + 4λ²) + c2 t`
    /// with `Q = Π₊ − Π₋` and `Π₋ = I − Π₊`.
    Spherelike { c1: Q, c2: Q, v0: Vec<Q>, z0: Vec<Q>, lambda: Q, plus: QMatrix },
    /// `(t + t0 + ‖(v−v0)/2‖²)² + ‖z − z0 + ½[v, v0]‖²`, equal to
    /// `4 t0 t cosh²(d(x, x0)/2)`.
    DistanceLike { x0: ModelPoint<Q> },
    /// `(t + ½‖Im v‖²)² + ‖z − ½[Re v, Im v]‖²` over `t²` for `m = 1`, with
    /// `Re v` the even-index coordinates.
    ChkRealTube,
    /// `(t + ½‖Π₂v‖²)² + ‖z − ½[Π₁v, Π₂v]‖²` over `t²`, with `v₁` spanned by
    /// `v1_basis` and `v₂` its orthogonal complement.
    Generalized64 { v1_basis: Vec<Vec<Q>> },
}

impl FamilySpec {
    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Horosphere { .. } => FamilyKind::Horosphere,
            FamilySpec::Tube { .. } => FamilyKind::Tube,
            FamilySpec::Spherelike { .. } => FamilyKind::Spherelike,
            FamilySpec::DistanceLike { .. } => FamilyKind::DistanceLike,
            FamilySpec::ChkRealTube => FamilyKind::ChkRealTube,
            FamilySpec::Generalized64 { .. } => FamilyKind::Generalized64,
        }
    }

    /// Power of `t` in the denominator.
    pub fn k(&self) -> u32 {
        match self {
            FamilySpec::ChkRealTube | FamilySpec::Generalized64 { .. } => 2,
            _ => 1,
        }
    }

    pub fn horosphere(c1: Q, c2: Q) -> Self {
        FamilySpec::Horosphere { c1, c2 }
    }

    /// Spherelike member whose `v₊` is the first `plus_copies` irreducible
    /// blocks.
    pub fn spherelike(
        sig: &SpaceSignature,
        c1: Q,
        c2: Q,
        v0: Vec<Q>,
        z0: Vec<Q>,
        lambda: Q,
        plus_copies: usize,
    ) -> Result<Self> {
        let (plus, _) = invariant_splitting(sig.module(), plus_copies)?;
        let spec = FamilySpec::Spherelike { c1, c2, v0, z0, lambda, plus: coordinate_projector(sig.n(), &plus) };
        spec.validate(sig)?;
        Ok(spec)
    }

    /// Spherelike member with `c1 = 1`, `c2 = 0`, `v0 = 0`, `z0 = 0`.
    pub fn spherelike_normalized(sig: &SpaceSignature, lambda: Q, plus_copies: usize) -> Result<Self> {
        Self::spherelike(sig, Q::one(), Q::zero(), vec![Q::zero(); sig.n()], vec![Q::zero(); sig.m()], lambda, plus_copies)
    }

    /// `(n₊, n₋)` for spherelike specs.
    pub fn splitting_dims(&self) -> Option<(usize, usize)> {
        match self {
            FamilySpec::Spherelike { plus, .. } => {
                let np = plus.rank();
                Some((np, plus.rows() - np))
            }
            _ => None,
        }
    }

    /// Checks the structural requirements of the family.
    pub fn validate(&self, sig: &SpaceSignature) -> Result<()> {
        let (n, m) = (sig.n(), sig.m());
        let bad = |msg: String| Err(Error::InvalidFamily(msg));
        match self {
            FamilySpec::Horosphere { c1, .. } => {
                if c1.is_zero() {
                    return bad("c1 must be nonzero".into());
                }
            }
            FamilySpec::Tube { c1, w_basis, w0, .. } => {
                if c1.is_zero() {
                    return bad("c1 must be nonzero".into());
                }
                crate::error::check_dim(n, w0.len())?;
                let p = projector(n, w_basis)?;
                if p.is_zero() {
                    return bad("w must be a nonzero subspace".into());
                }
                if p.mul_vec(w0) != *w0 {
                    return bad("w0 does not lie in w".into());
                }
            }
            FamilySpec::Spherelike { c1, v0, z0, lambda, plus, .. } => {
                if c1.is_zero() {
                    return bad("c1 must be nonzero".into());
                }
                crate::error::check_dim(n, v0.len())?;
                crate::error::check_dim(m, z0.len())?;
                if *lambda < Q::zero() {
                    return bad("lambda must be non-negative".into());
                }
                if plus.rows() != n || !plus.is_symmetric() || plus.mul(plus) != *plus {
                    return bad("splitting is not an orthogonal projector".into());
                }
                if !sig.module().preserves_subspace(plus) {
                    return bad("splitting is not a Clifford submodule decomposition".into());
                }
            }
            FamilySpec::DistanceLike { x0 } => {
                crate::error::check_dim(n, x0.v.len())?;
                crate::error::check_dim(m, x0.z.len())?;
                if !(x0.t > Q::zero()) {
                    return Err(Error::NonPositiveT(x0.t.to_string()));
                }
            }
            FamilySpec::ChkRealTube => {
                if m != 1 {
                    return bad(format!("the real tube needs m = 1, got m = {m}"));
                }
                if n % 2 != 0 {
                    return bad(format!("the real tube needs even n, got n = {n}"));
                }
            }
            FamilySpec::Generalized64 { v1_basis } => {
                for b in v1_basis {
                    crate::error::check_dim(n, b.len())?;
                }
            }
        }
        Ok(())
    }
}

/// Coordinates of `v` on even positions: the real part for `m = 1`.
pub fn real_part_basis(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .step_by(2)
        .map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
        .collect()
}

/// `(v_i − a_i)` as polynomials.
fn shifted_v(l: Layout, a: &[Q]) -> Vec<Poly> {
    (0..l.n).map(|i| &Poly::var(l, l.v(i)) - &Poly::constant(l, a[i].clone())).collect()
}

/// `x ↦ M x` on vectors of polynomials.
fn apply_matrix(l: Layout, mat: &QMatrix, x: &[Poly]) -> Vec<Poly> {
    (0..mat.rows())
        .map(|i| {
            let mut acc = Poly::zero(l);
            for (j, xj) in x.iter().enumerate() {
                let c = mat.get(i, j);
                if !c.is_zero() {
                    acc += &xj.scale(c);
                }
            }
            acc
        })
        .collect()
}

fn norm_sq(l: Layout, x: &[Poly]) -> Poly {
    let mut acc = Poly::zero(l);
    for xi in x {
        acc += &(xi * xi);
    }
    acc
}

/// `[a, b]` for vectors of polynomials.
fn bracket_polys(sig: &SpaceSignature, l: Layout, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let mut out = vec![Poly::zero(l); l.m];
    for c in sig.constants() {
        if a[c.i].is_zero() || b[c.j].is_zero() {
            continue;
        }
        out[c.alpha] += &(&a[c.i] * &b[c.j]).scale(&c.value);
    }
    out
}

fn consts(l: Layout, x: &[Q]) -> Vec<Poly> {
    x.iter().map(|c| Poly::constant(l, c.clone())).collect()
}

/// `(t + s + ‖(v−v0)/2‖²)² + ‖z − z0 + ½[v, v0]‖²`.
fn distance_core(sig: &SpaceSignature, l: Layout, v0: &[Q], z0: &[Q], s: &Q) -> Poly {
    let t = Poly::var(l, l.t());
    let w = shifted_v(l, v0);
    let first = &(&t + &Poly::constant(l, s.clone())) + &norm_sq(l, &w).scale(&q(1, 4));
    let vs: Vec<Poly> = (0..l.n).map(|i| Poly::var(l, l.v(i))).collect();
    let br = bracket_polys(sig, l, &vs, &consts(l, v0));
    let zeta: Vec<Poly> = (0..l.m)
        .map(|a| &(&Poly::var(l, l.z(a)) - &Poly::constant(l, z0[a].clone())) + &br[a].scale(&q(1, 2)))
        .collect();
    &first.pow(2) + &norm_sq(l, &zeta)
}

/// `(t + ½‖Π₂v‖²)² + ‖z − ½[Π₁v, Π₂v]‖²`.
fn generalized_core(sig: &SpaceSignature, l: Layout, p1: &QMatrix) -> Poly {
    let p2 = QMatrix::identity(l.n).sub(p1);
    let vs: Vec<Poly> = (0..l.n).map(|i| Poly::var(l, l.v(i))).collect();
    let a = apply_matrix(l, p1, &vs);
    let b = apply_matrix(l, &p2, &vs);
    let first = &Poly::var(l, l.t()) + &norm_sq(l, &b).scale(&q(1, 2));
    let br = bracket_polys(sig, l, &a, &b);
    let zeta: Vec<Poly> = (0..l.m).map(|al| &Poly::var(l, l.z(al)) - &br[al].scale(&q(1, 2))).collect();
    &first.pow(2) + &norm_sq(l, &zeta)
}

/// Numerator and denominator power of the selected family.
pub fn family_polynomial(sig: &SpaceSignature, spec: &FamilySpec) -> Result<PolyFraction> {
    spec.validate(sig)?;
    family_polynomial_unchecked(sig, spec)
}

/// Like [`family_polynomial`] without structural checks, so that invalid
/// parameter choices (for example a non-invariant splitting) can be probed.
pub fn family_polynomial_unchecked(sig: &SpaceSignature, spec: &FamilySpec) -> Result<PolyFraction> {
    let l = Layout::of(sig);
    let t = Poly::var(l, l.t());
    let g = match spec {
        FamilySpec::Horosphere { c1, c2 } => &Poly::constant(l, c1.clone()) + &t.scale(c2),
        FamilySpec::Tube { c1, c2, w_basis, w0 } => {
            let p = projector(l.n, w_basis)?;
            let vs: Vec<Poly> = (0..l.n).map(|i| Poly::var(l, l.v(i))).collect();
            let pv = apply_matrix(l, &p, &vs);
            let diff: Vec<Poly> = pv.iter().zip(w0).map(|(x, c)| x - &Poly::constant(l, c.clone())).collect();
            &norm_sq(l, &diff).scale(c1) + &t.scale(c2)
        }
        FamilySpec::Spherelike { c1, c2, v0, z0, lambda, plus } => {
            let core = distance_core(sig, l, v0, z0, &Q::zero());
            let qmat = plus.scale(&qi(2)).sub(&QMatrix::identity(l.n));
            let w = shifted_v(l, v0);
            let qw = apply_matrix(l, &qmat, &w);
            let mut form = Poly::zero(l);
            for (a, b) in w.iter().zip(&qw) {
                form += &(a * b);
            }
            let four_l2 = lambda * lambda * qi(4);
            let inner = &(&core + &form.scale(lambda)) + &Poly::constant(l, four_l2);
            &inner.scale(c1) + &t.scale(c2)
        }
        FamilySpec::DistanceLike { x0 } => distance_core(sig, l, &x0.v, &x0.z, &x0.t),
        FamilySpec::ChkRealTube => generalized_core(sig, l, &projector(l.n, &real_part_basis(l.n))?),
        FamilySpec::Generalized64 { v1_basis } => generalized_core(sig, l, &projector(l.n, v1_basis)?),
    };
    PolyFraction::new(g, spec.k())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;
    use crate::poly::{norm_v_sq, norm_z_sq};

    fn sig(m: usize, c: usize) -> SpaceSignature {
        SpaceSignature::new(build_clifford_module(m, c).unwrap())
    }

    #[test]
    fn horosphere_constant() {
        let s = sig(1, 1);
        let f = family_polynomial(&s, &FamilySpec::horosphere(qi(1), qi(0))).unwrap();
        assert_eq!(f.numerator(), &Poly::one(Layout::of(&s)));
        assert_eq!(f.k(), 1);
    }

    #[test]
    fn boundary_horosphere_form() {
        let s = sig(1, 2);
        let l = Layout::of(&s);
        let spec = FamilySpec::spherelike_normalized(&s, qi(0), 2).unwrap();
        let f = family_polynomial(&s, &spec).unwrap();
        let t = Poly::var(l, l.t());
        let want = &(&t + &norm_v_sq(l).scale(&q(1, 4))).pow(2) + &norm_z_sq(l);
        assert_eq!(f.numerator(), &want);
    }

    #[test]
    fn distance_on_axis() {
        let s = sig(3, 1);
        let x0 = ModelPoint::identity(&s);
        let f = family_polynomial(&s, &FamilySpec::DistanceLike { x0 }).unwrap();
        let mut x = vec![qi(0); s.dim()];
        x[s.dim() - 1] = qi(3);
        assert_eq!(f.numerator().evaluate(&x), qi(16));
        assert_eq!(f.evaluate(&x), q(16, 3));
    }

    #[test]
    fn invalid_specs() {
        let s = sig(1, 2);
        let tube = FamilySpec::Tube {
            c1: qi(1),
            c2: qi(0),
            w_basis: vec![vec![qi(1), qi(0), qi(0), qi(0)]],
            w0: vec![qi(0), qi(1), qi(0), qi(0)],
        };
        assert!(matches!(family_polynomial(&s, &tube), Err(Error::InvalidFamily(_))));
        let h = sig(3, 1);
        assert!(family_polynomial(&h, &FamilySpec::ChkRealTube).is_err());
        let skew = FamilySpec::Spherelike {
            c1: qi(1),
            c2: qi(0),
            v0: vec![qi(0); 4],
            z0: vec![qi(0)],
            lambda: qi(1),
            plus: coordinate_projector(4, &[0, 2]),
        };
        assert!(family_polynomial(&s, &skew).is_err());
        assert!(family_polynomial_unchecked(&s, &skew).is_ok());
    }
}
