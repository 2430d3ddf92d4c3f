//! Focal varieties, tube radii and mean curvature of spherelike level sets.
//!
//! For the normalized spherelike function (`c1 = 1`, `c2 = 0`) the level
//! `F = c` is the tube of radius `r = arcosh(c / 4λ)` about the focal variety
//! `F = 4λ`, and the trace of its shape operator with respect to
//! `N = ∇F / |∇F|` is
//!
//! ```text
//! h(r) = −(m + n/2) coth r − ½ (n₊ − n₋) cosech r.
//! ```

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::linalg::QMatrix;
use crate::model::{geodesic_flow, metric_at, ModelPoint, TangentVector};
use crate::numeric::{coordinate_gradient_field, family_value, gradient_norm_sq, volume_density};
use crate::poly::Layout;
use crate::rational::{dot, q, qi, to_f64, Q};
use crate::verify::{family_polynomial, FamilySpec};

/// Finite-difference step of [`mean_curvature_numeric`].
pub const DIFF_STEP: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TubeProfile {
    pub lambda: f64,
    pub m: usize,
    pub n: usize,
    pub n_plus: usize,
    pub n_minus: usize,
}

impl TubeProfile {
    pub fn new(m: usize, n_plus: usize, n_minus: usize, lambda: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return Err(Error::InvalidArgument(format!("lambda must be non-negative, got {lambda}")));
        }
        Ok(TubeProfile { lambda, m, n: n_plus + n_minus, n_plus, n_minus })
    }

    /// Profile of a spherelike spec.
    pub fn of(sig: &SpaceSignature, spec: &FamilySpec) -> Result<Self> {
        let FamilySpec::Spherelike { lambda, plus, .. } = spec else {
            return Err(Error::InvalidFamily("tube profiles exist only for spherelike functions".into()));
        };
        let n_plus = plus.trace();
        let n_plus = n_plus.to_integer().try_into().map_err(|_| Error::InvalidFamily("bad projector".into()))?;
        TubeProfile::new(sig.m(), n_plus, sig.n() - n_plus, to_f64(lambda))
    }

    /// Least value `4λ` of the normalized function.
    pub fn c0(&self) -> f64 {
        4.0 * self.lambda
    }

    pub fn level(&self, r: f64) -> f64 {
        tube_level(self.lambda, r)
    }

    pub fn radius(&self, c: f64) -> Result<f64> {
        tube_radius_map(self.lambda, c)
    }

    fn dim_weight(&self) -> f64 {
        self.m as f64 + self.n as f64 / 2.0
    }

    /// `a(x) = (m + n/2 + 1) x + 2λ(n₊ − n₋)`.
    pub fn a(&self, x: f64) -> f64 {
        (self.dim_weight() + 1.0) * x + 2.0 * self.lambda * (self.n_plus as f64 - self.n_minus as f64)
    }

    /// `b(x) = x² − 16λ²`.
    pub fn b(&self, x: f64) -> f64 {
        x * x - 16.0 * self.lambda * self.lambda
    }

    pub fn mean_curvature_closed(&self, r: f64) -> f64 {
        -self.dim_weight() / r.tanh() - 0.5 * (self.n_plus as f64 - self.n_minus as f64) / r.sinh()
    }

    /// `(−2a(c) + b′(c)) / (2√b(c))` at `c = 4λ cosh r`.
    pub fn mean_curvature_ab(&self, r: f64) -> f64 {
        let c = self.level(r);
        (-2.0 * self.a(c) + 2.0 * c) / (2.0 * self.b(c).sqrt())
    }
}

/// `r = arcosh(c / 4λ)`.
pub fn tube_radius_map(lambda: f64, c: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    if !(c > 4.0 * lambda) {
        return Err(Error::InvalidArgument(format!("level {c} is not above the focal value {}", 4.0 * lambda)));
    }
    Ok((c / (4.0 * lambda)).acosh())
}

/// `c = 4λ cosh r`.
pub fn tube_level(lambda: f64, r: f64) -> f64 {
    4.0 * lambda * r.cosh()
}

/// Closed-form shape-operator trace at radius `r`, cross-checked against the
/// `(a, b)` route.
pub fn mean_curvature(profile: &TubeProfile, r: f64) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {r}")));
    }
    let closed = profile.mean_curvature_closed(r);
    if profile.lambda > 0.0 {
        let ab = profile.mean_curvature_ab(r);
        assert!((closed - ab).abs() <= 1e-12 * (1.0 + closed.abs()), "h = {closed} but (a,b) route gives {ab}");
    }
    Ok(closed)
}

/// `(v0 + w, z0 + ½[v0, v0 + w], 2λ − ¼‖w‖²)` for `w ∈ v₋`.
pub fn focal_point(sig: &SpaceSignature, spec: &FamilySpec, w: &[Q]) -> Result<ModelPoint<Q>> {
    let FamilySpec::Spherelike { v0, z0, lambda, plus, .. } = spec else {
        return Err(Error::InvalidFamily("focal points exist only for spherelike functions".into()));
    };
    crate::error::check_dim(sig.n(), w.len())?;
    if lambda.is_zero() {
        return Err(Error::InvalidArgument("the focal variety is empty for lambda = 0".into()));
    }
    if plus.mul_vec(w).iter().any(|x| !x.is_zero()) {
        return Err(Error::InvalidArgument("w is not in the minus part of the splitting".into()));
    }
    let w_sq = dot(w, w);
    if w_sq >= qi(8) * lambda {
        return Err(Error::InvalidArgument(format!("|w|^2 = {w_sq} reaches 8 lambda; the point leaves the model")));
    }
    let v: Vec<Q> = v0.iter().zip(w).map(|(a, b)| a + b).collect();
    let br = sig.bracket_vv(v0, &v)?;
    let z = z0.iter().zip(&br).map(|(a, b)| a + b * q(1, 2)).collect();
    ModelPoint::new(v, z, qi(2) * lambda - w_sq * q(1, 4))
}

/// Tangent vectors of the focal variety at `focal_point(w)`, one per basis
/// vector `e` of `v₋`: `(e, ½[v0, e], −½⟨w, e⟩)`.
pub fn focal_tangents(sig: &SpaceSignature, spec: &FamilySpec, w: &[f64]) -> Result<Vec<TangentVector<f64>>> {
    let FamilySpec::Spherelike { v0, plus, .. } = spec else {
        return Err(Error::InvalidFamily("focal varieties exist only for spherelike functions".into()));
    };
    let minus = QMatrix::identity(sig.n()).sub(plus);
    let v0: Vec<f64> = v0.iter().map(to_f64).collect();
    minus
        .column_space_basis()
        .iter()
        .map(|e| {
            let e: Vec<f64> = e.iter().map(to_f64).collect();
            let br = sig.bracket_vv(&v0, &e)?;
            let dt = -0.5 * w.iter().zip(&e).map(|(a, b)| a * b).sum::<f64>();
            Ok(TangentVector { dv: e, dz: br.iter().map(|x| 0.5 * x).collect(), dt })
        })
        .collect()
}

/// Projects `u` onto the metric orthogonal complement of `tangents` at `p`.
pub fn normal_component(
    sig: &SpaceSignature,
    p: &ModelPoint<f64>,
    tangents: &[TangentVector<f64>],
    u: &TangentVector<f64>,
) -> Result<TangentVector<f64>> {
    // Gram-Schmidt on the tangents, then subtract.
    let mut ortho: Vec<TangentVector<f64>> = Vec::new();
    for t in tangents {
        let mut x = t.clone();
        for o in &ortho {
            let c = metric_at(sig, p, &x, o)?;
            x = x.add(&o.scale(&-c));
        }
        let nrm = metric_at(sig, p, &x, &x)?.sqrt();
        if nrm > 1e-12 {
            ortho.push(x.scale(&(1.0 / nrm)));
        }
    }
    let mut out = u.clone();
    for o in &ortho {
        let c = metric_at(sig, p, &out, o)?;
        out = out.add(&o.scale(&-c));
    }
    Ok(out)
}

/// Runs the geodesic from `focal_point(w)` in the normal direction obtained
/// from `u`, for length `r`, and returns `F` at its end.
pub fn normal_geodesic_level(
    sig: &SpaceSignature,
    spec: &FamilySpec,
    w: &[Q],
    u: &TangentVector<f64>,
    r: f64,
    steps: usize,
) -> Result<f64> {
    let x = focal_point(sig, spec, w)?;
    let xf = ModelPoint::new(x.v.iter().map(to_f64).collect(), x.z.iter().map(to_f64).collect(), to_f64(&x.t))?;
    let wf: Vec<f64> = w.iter().map(to_f64).collect();
    let tangents = focal_tangents(sig, spec, &wf)?;
    let normal = normal_component(sig, &xf, &tangents, u)?;
    let path = geodesic_flow(sig, &xf, &normal, r, steps)?;
    family_value(sig, spec, &path.end().coords())
}

/// Point with the given `v, z` on the level `F = c` of a `G / t` function
/// whose numerator is at most quadratic in `t`; picks the larger root.
pub fn point_on_level(sig: &SpaceSignature, spec: &FamilySpec, c: f64, v: &[f64], z: &[f64]) -> Result<ModelPoint<f64>> {
    let f = family_polynomial(sig, spec)?;
    if f.k() != 1 {
        return Err(Error::InvalidFamily("levels are solved only for denominator power 1".into()));
    }
    let l = Layout::of(sig);
    let g = f.numerator();
    if g.degree(l.t()) > 2 {
        return Err(Error::InvalidFamily("numerator is more than quadratic in t".into()));
    }
    let mut x: Vec<f64> = v.to_vec();
    x.extend_from_slice(z);
    x.push(0.0);
    crate::error::check_dim(sig.dim(), x.len())?;
    let coeff = |j: u8| g.coefficient_in(l.t(), j).evaluate_f64(&x);
    // G₂ t² + (G₁ − c) t + G₀ = 0
    let (a, b, c0) = (coeff(2), coeff(1) - c, coeff(0));
    let t = if a == 0.0 {
        -c0 / b
    } else {
        let disc = b * b - 4.0 * a * c0;
        if disc < 0.0 {
            return Err(Error::InvalidArgument(format!("level {c} is not reached above this (v, z)")));
        }
        let s = disc.sqrt();
        ((-b + s) / (2.0 * a)).max((-b - s) / (2.0 * a))
    };
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!("level {c} is not reached above this (v, z)")));
    }
    ModelPoint::new(v.to_vec(), z.to_vec(), t)
}

/// `−div N` for `N = ∇F / |∇F|` by central differences of `ρ N^j`, with `ρ`
/// the metric volume density.
pub fn mean_curvature_numeric(sig: &SpaceSignature, spec: &FamilySpec, p: &ModelPoint<f64>) -> Result<f64> {
    let grad_sq = gradient_norm_sq(sig, spec, p)?;
    if !(grad_sq.sqrt() > 1e-6) {
        return Err(Error::NearSingular(grad_sq.sqrt()));
    }
    let x = p.coords();
    let t_index = sig.dim() - 1;
    if x[t_index] <= 2.0 * DIFF_STEP {
        return Err(Error::NearSingular(x[t_index]));
    }
    let weighted = |y: &[f64], j: usize| -> Result<f64> {
        let q = ModelPoint::from_coords(sig, y)?;
        let grad = coordinate_gradient_field(sig, spec, &q)?;
        let nrm = gradient_norm_sq(sig, spec, &q)?.sqrt();
        Ok(volume_density(sig, &q)? * grad[j] / nrm)
    };
    let mut div = 0.0;
    for j in 0..x.len() {
        let mut hi = x.clone();
        let mut lo = x.clone();
        hi[j] += DIFF_STEP;
        lo[j] -= DIFF_STEP;
        div += (weighted(&hi, j)? - weighted(&lo, j)?) / (2.0 * DIFF_STEP);
    }
    Ok(-div / volume_density(sig, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;

    fn sig(m: usize, c: usize) -> SpaceSignature {
        SpaceSignature::new(build_clifford_module(m, c).unwrap())
    }

    #[test]
    fn radius_roundtrip() {
        assert!((tube_radius_map(1.0, 20.0).unwrap() - 2.2924316695611777).abs() < 1e-12);
        let c = tube_level(0.25, 1.0);
        assert!((tube_radius_map(0.25, c).unwrap() - 1.0).abs() < 1e-12);
        assert!(tube_radius_map(1.0, 4.0).is_err());
        assert!(tube_radius_map(0.0, 4.0).is_err());
    }

    #[test]
    fn closed_form_values() {
        let p = TubeProfile::new(1, 2, 0, 1.0).unwrap();
        let h = mean_curvature(&p, 1.0).unwrap();
        assert!((h - (-2.0 / 1f64.tanh() - 1.0 / 1f64.sinh())).abs() < 1e-15);
        assert!((h + 3.4769886992379844).abs() < 1e-12);
        assert!((mean_curvature(&p, 40.0).unwrap() + 2.0).abs() < 1e-12);
        let sym = TubeProfile::new(1, 2, 2, 0.5).unwrap();
        assert!((mean_curvature(&sym, 0.7).unwrap() + 3.0 / 0.7f64.tanh()).abs() < 1e-12);
        assert!(mean_curvature(&p, 0.0).is_err());
    }

    #[test]
    fn focal_point_basics() {
        let s = sig(1, 2);
        let spec = FamilySpec::spherelike_normalized(&s, q(1, 2), 1).unwrap();
        let x = focal_point(&s, &spec, &vec![qi(0); 4]).unwrap();
        assert_eq!(x.t, qi(1));
        let f = family_polynomial(&s, &spec).unwrap();
        assert_eq!(f.evaluate(&x.coords()), qi(2));
        let w = vec![qi(0), qi(0), qi(1), qi(1)];
        let x = focal_point(&s, &spec, &w).unwrap();
        assert_eq!(f.evaluate(&x.coords()), qi(2));
        assert!(focal_point(&s, &spec, &[qi(1), qi(0), qi(0), qi(0)]).is_err());
        assert!(focal_point(&s, &spec, &[qi(0), qi(0), qi(2), qi(0)]).is_err());
        let flat = FamilySpec::spherelike_normalized(&s, qi(0), 1).unwrap();
        assert!(focal_point(&s, &flat, &vec![qi(0); 4]).is_err());
    }

    #[test]
    fn horosphere_calibration() {
        let s = sig(1, 1);
        let spec = FamilySpec::horosphere(qi(1), qi(0));
        let p = ModelPoint::new(vec![0.3, -0.2], vec![0.1], 0.8).unwrap();
        let h = mean_curvature_numeric(&s, &spec, &p).unwrap();
        assert!((h + 2.0).abs() < 1e-6, "{h}");
    }

    #[test]
    fn numeric_matches_closed_form() {
        let s = sig(1, 1);
        let spec = FamilySpec::spherelike_normalized(&s, q(1, 4), 1).unwrap();
        let profile = TubeProfile::of(&s, &spec).unwrap();
        let p = point_on_level(&s, &spec, 2.0, &[0.3, -0.1], &[0.2]).unwrap();
        let h = mean_curvature_numeric(&s, &spec, &p).unwrap();
        let r = profile.radius(2.0).unwrap();
        let expected = mean_curvature(&profile, r).unwrap();
        assert!((h - expected).abs() <= 1e-4 * (1.0 + expected.abs()), "{h} vs {expected}");
    }
}
