//! Half-space model `v ⊕ z × R₊` of a Damek-Ricci space.
//!
//! Points are `(v, z, t)` with `t > 0`. The group law is
//! `(v1, z1, t1)(v2, z2, t2) = (v1 + √t1 v2, z1 + t1 z2 + ½√t1 [v1, v2], t1 t2)`
//! and the left-invariant orthonormal frame at `(v, z, t)` is
//! `E_i = √t (∂_{e_i} − ½ ∂_{[e_i, v]})`, `F_α = t ∂_{f_α}`, `A = t ∂_t`.
//!
//! Everything here is generic over [`Scalar`]: with `Q` the identities are
//! exact as long as every `t` that gets square-rooted is a rational square.

mod geodesic;

pub use geodesic::{body_from_tangent, geodesic_flow, geodesic_flow_body, BodyVelocity, GeodesicPath, GeodesicSample};

use crate::error::{check_dim, Error, Result};
use crate::htype::SpaceSignature;
use crate::scalar::{axpy, dot, scaled, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct ModelPoint<S> {
    pub v: Vec<S>,
    pub z: Vec<S>,
    pub t: S,
}

/// Tangent vector in coordinates `(dv, dz, dt)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector<S> {
    pub dv: Vec<S>,
    pub dz: Vec<S>,
    pub dt: S,
}

impl<S: Scalar> ModelPoint<S> {
    pub fn new(v: Vec<S>, z: Vec<S>, t: S) -> Result<Self> {
        if !t.is_positive() {
            return Err(Error::NonPositiveT(format!("{t:?}")));
        }
        Ok(ModelPoint { v, z, t })
    }

    pub fn identity(sig: &SpaceSignature) -> Self {
        ModelPoint { v: vec![S::from_i64(0); sig.n()], z: vec![S::from_i64(0); sig.m()], t: S::from_i64(1) }
    }

    /// Coordinates flattened in the order `v, z, t`.
    pub fn coords(&self) -> Vec<S> {
        let mut out = self.v.clone();
        out.extend(self.z.iter().cloned());
        out.push(self.t.clone());
        out
    }

    pub fn from_coords(sig: &SpaceSignature, x: &[S]) -> Result<Self> {
        check_dim(sig.dim(), x.len())?;
        let (n, m) = (sig.n(), sig.m());
        Self::new(x[..n].to_vec(), x[n..n + m].to_vec(), x[n + m].clone())
    }

    fn check(&self, sig: &SpaceSignature) -> Result<()> {
        check_dim(sig.n(), self.v.len())?;
        check_dim(sig.m(), self.z.len())?;
        if !self.t.is_positive() {
            return Err(Error::NonPositiveT(format!("{:?}", self.t)));
        }
        Ok(())
    }
}

impl<S: Scalar> TangentVector<S> {
    pub fn zero(sig: &SpaceSignature) -> Self {
        TangentVector { dv: vec![S::from_i64(0); sig.n()], dz: vec![S::from_i64(0); sig.m()], dt: S::from_i64(0) }
    }

    pub fn coords(&self) -> Vec<S> {
        let mut out = self.dv.clone();
        out.extend(self.dz.iter().cloned());
        out.push(self.dt.clone());
        out
    }

    pub fn from_coords(sig: &SpaceSignature, x: &[S]) -> Result<Self> {
        check_dim(sig.dim(), x.len())?;
        let (n, m) = (sig.n(), sig.m());
        Ok(TangentVector { dv: x[..n].to_vec(), dz: x[n..n + m].to_vec(), dt: x[n + m].clone() })
    }

    pub fn scale(&self, s: &S) -> Self {
        TangentVector { dv: scaled(s, &self.dv), dz: scaled(s, &self.dz), dt: s.clone() * self.dt.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let one = S::from_i64(1);
        TangentVector {
            dv: axpy(&self.dv, &one, &o.dv),
            dz: axpy(&self.dz, &one, &o.dz),
            dt: self.dt.clone() + o.dt.clone(),
        }
    }
}

/// `p · q`.
pub fn group_multiply<S: Scalar>(sig: &SpaceSignature, p: &ModelPoint<S>, q: &ModelPoint<S>) -> Result<ModelPoint<S>> {
    p.check(sig)?;
    q.check(sig)?;
    let rt = p.t.sqrt()?;
    let v = axpy(&p.v, &rt, &q.v);
    let br = sig.bracket_unchecked(&p.v, &q.v);
    let half_rt = S::half() * rt;
    let z = p
        .z
        .iter()
        .zip(&q.z)
        .zip(&br)
        .map(|((z1, z2), b)| z1.clone() + p.t.clone() * z2.clone() + half_rt.clone() * b.clone())
        .collect();
    Ok(ModelPoint { v, z, t: p.t.clone() * q.t.clone() })
}

/// Left translation `L_g(p) = g · p`.
pub fn left_translate<S: Scalar>(sig: &SpaceSignature, g: &ModelPoint<S>, p: &ModelPoint<S>) -> Result<ModelPoint<S>> {
    group_multiply(sig, g, p)
}

/// `(v, z, t)⁻¹ = (−v/√t, −z/t, 1/t)`.
pub fn group_inverse<S: Scalar>(sig: &SpaceSignature, p: &ModelPoint<S>) -> Result<ModelPoint<S>> {
    p.check(sig)?;
    let rt = p.t.sqrt()?;
    Ok(ModelPoint {
        v: p.v.iter().map(|x| -(x.clone() / rt.clone())).collect(),
        z: p.z.iter().map(|x| -(x.clone() / p.t.clone())).collect(),
        t: S::from_i64(1) / p.t.clone(),
    })
}

/// Differential of `L_g`, which is affine in `(v, z, t)`:
/// `dL_g(u) = (√t̄ u_v, t̄ u_z + ½√t̄ [v̄, u_v], t̄ u_t)`.
pub fn left_translation_differential<S: Scalar>(
    sig: &SpaceSignature,
    g: &ModelPoint<S>,
    u: &TangentVector<S>,
) -> Result<TangentVector<S>> {
    g.check(sig)?;
    let rt = g.t.sqrt()?;
    let br = sig.bracket_vv(&g.v, &u.dv)?;
    let half_rt = S::half() * rt.clone();
    Ok(TangentVector {
        dv: scaled(&rt, &u.dv),
        dz: u.dz.iter().zip(&br).map(|(a, b)| g.t.clone() * a.clone() + half_rt.clone() * b.clone()).collect(),
        dt: g.t.clone() * u.dt.clone(),
    })
}

/// Riemannian inner product of `u` and `w` at `p`.
pub fn metric_at<S: Scalar>(sig: &SpaceSignature, p: &ModelPoint<S>, u: &TangentVector<S>, w: &TangentVector<S>) -> Result<S> {
    p.check(sig)?;
    for x in [u, w] {
        check_dim(sig.n(), x.dv.len())?;
        check_dim(sig.m(), x.dz.len())?;
    }
    let t = p.t.clone();
    let t2 = t.clone() * t.clone();
    let half = S::half();
    let bu = sig.bracket_unchecked(&u.dv, &p.v);
    let bw = sig.bracket_unchecked(&w.dv, &p.v);
    let zu = axpy(&u.dz, &half, &bu);
    let zw = axpy(&w.dz, &half, &bw);
    Ok(dot(&u.dv, &w.dv) / t + dot(&zu, &zw) / t2.clone() + u.dt.clone() * w.dt.clone() / t2)
}

/// Metric tensor at `p` in the coordinates `(v, z, t)`.
pub fn metric_matrix<S: Scalar>(sig: &SpaceSignature, p: &ModelPoint<S>) -> Result<Vec<Vec<S>>> {
    let dim = sig.dim();
    let basis: Vec<TangentVector<S>> = (0..dim)
        .map(|k| {
            let mut x = vec![S::from_i64(0); dim];
            x[k] = S::from_i64(1);
            TangentVector::from_coords(sig, &x)
        })
        .collect::<Result<_>>()?;
    let mut g = vec![vec![S::from_i64(0); dim]; dim];
    for i in 0..dim {
        for j in i..dim {
            let gij = metric_at(sig, p, &basis[i], &basis[j])?;
            g[i][j] = gij.clone();
            g[j][i] = gij;
        }
    }
    Ok(g)
}

/// Coordinate expressions of `E_1..E_n, F_1..F_m, A` at `p`.
pub fn left_invariant_frame<S: Scalar>(sig: &SpaceSignature, p: &ModelPoint<S>) -> Result<Vec<TangentVector<S>>> {
    p.check(sig)?;
    let (n, m) = (sig.n(), sig.m());
    let rt = p.t.sqrt()?;
    let mut frame = Vec::with_capacity(n + m + 1);
    let minus_half_rt = -(S::half() * rt.clone());
    for i in 0..n {
        let mut u = TangentVector::zero(sig);
        u.dv[i] = rt.clone();
        u.dz = scaled(&minus_half_rt, &sig.bracket_basis(i, &p.v));
        frame.push(u);
    }
    for a in 0..m {
        let mut u = TangentVector::zero(sig);
        u.dz[a] = p.t.clone();
        frame.push(u);
    }
    let mut u = TangentVector::zero(sig);
    u.dt = p.t.clone();
    frame.push(u);
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;
    use crate::rational::{qi, Q};

    fn sig(m: usize, copies: usize) -> SpaceSignature {
        SpaceSignature::new(build_clifford_module(m, copies).unwrap())
    }

    fn pt(v: &[i64], z: &[i64], t: i64) -> ModelPoint<Q> {
        ModelPoint::new(v.iter().map(|&x| qi(x)).collect(), z.iter().map(|&x| qi(x)).collect(), qi(t)).unwrap()
    }

    #[test]
    fn dilation() {
        let s = sig(1, 1);
        let g = pt(&[0, 0], &[0], 4);
        let p = pt(&[1, 2], &[3], 5);
        assert_eq!(group_multiply(&s, &g, &p).unwrap(), pt(&[2, 4], &[12], 20));
    }

    #[test]
    fn bracket_in_product() {
        let s = sig(1, 1);
        let r = group_multiply(&s, &pt(&[1, 0], &[0], 1), &pt(&[0, 1], &[0], 1)).unwrap();
        assert_eq!(r.z, vec![Q::new(1.into(), 2.into())]);
    }

    #[test]
    fn inverse_and_identity() {
        let s = sig(3, 1);
        let p = pt(&[1, -2, 3, 0], &[1, 0, -1], 9);
        let e = ModelPoint::identity(&s);
        assert_eq!(group_multiply(&s, &e, &p).unwrap(), p);
        let inv = group_inverse(&s, &p).unwrap();
        assert_eq!(group_multiply(&s, &p, &inv).unwrap(), e);
        assert_eq!(group_multiply(&s, &inv, &p).unwrap(), e);
    }

    #[test]
    fn rejects_nonpositive_t() {
        assert!(ModelPoint::<Q>::new(vec![], vec![], qi(0)).is_err());
        assert!(ModelPoint::new(vec![], vec![], -1.0).is_err());
    }

    #[test]
    fn metric_scaling() {
        let s = sig(1, 1);
        let p = pt(&[0, 0], &[0], 9);
        let u = TangentVector { dv: vec![qi(1), qi(2)], dz: vec![qi(0)], dt: qi(0) };
        assert_eq!(metric_at(&s, &p, &u, &u).unwrap(), Q::new(5.into(), 9.into()));
    }

    #[test]
    fn frame_is_orthonormal_exactly() {
        let s = sig(2, 1);
        let p = pt(&[1, 2, -1, 0], &[3, -2], 4);
        let f = left_invariant_frame(&s, &p).unwrap();
        for (i, a) in f.iter().enumerate() {
            for (j, b) in f.iter().enumerate() {
                let want = if i == j { qi(1) } else { qi(0) };
                assert_eq!(metric_at(&s, &p, a, b).unwrap(), want);
            }
        }
    }
}
