//! Floating-point oracle for the family functions.
//!
//! Values are computed straight from the defining formulas (no polynomial
//! expansion) and derivatives by forward-mode dual numbers, so the results
//! are independent of the exact symbolic path.

use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::linalg::{projector, QMatrix};
use crate::model::{left_invariant_frame, metric_matrix, ModelPoint};
use crate::rational::to_f64;
use crate::verify::{real_part_basis, FamilySpec};

pub trait Real:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self> + Neg<Output = Self>
{
    fn cst(x: f64) -> Self;
    fn re(self) -> f64;
}

impl Real for f64 {
    fn cst(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
}

/// `re + du·ε` with `ε² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dual {
    pub re: f64,
    pub du: f64,
}

impl Dual {
    pub fn var(re: f64) -> Self {
        Dual { re, du: 1.0 }
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(self, o: Dual) -> Dual {
        Dual { re: self.re + o.re, du: self.du + o.du }
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(self, o: Dual) -> Dual {
        Dual { re: self.re - o.re, du: self.du - o.du }
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, o: Dual) -> Dual {
        Dual { re: self.re * o.re, du: self.du * o.re + self.re * o.du }
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, o: Dual) -> Dual {
        Dual { re: self.re / o.re, du: (self.du * o.re - self.re * o.du) / (o.re * o.re) }
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        Dual { re: -self.re, du: -self.du }
    }
}

impl Real for Dual {
    fn cst(x: f64) -> Self {
        Dual { re: x, du: 0.0 }
    }
    fn re(self) -> f64 {
        self.re
    }
}

fn fmat(m: &QMatrix) -> Vec<Vec<f64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(to_f64).collect()).collect()
}

fn fvec(x: &[crate::Q]) -> Vec<f64> {
    x.iter().map(to_f64).collect()
}

fn apply<R: Real>(m: &[Vec<f64>], x: &[R]) -> Vec<R> {
    m.iter()
        .map(|row| row.iter().zip(x).fold(R::cst(0.0), |acc, (&a, &b)| acc + R::cst(a) * b))
        .collect()
}

fn norm_sq<R: Real>(x: &[R]) -> R {
    x.iter().fold(R::cst(0.0), |acc, &a| acc + a * a)
}

fn bracket<R: Real>(sig: &SpaceSignature, a: &[R], b: &[R]) -> Vec<R> {
    let mut out = vec![R::cst(0.0); sig.m()];
    for c in sig.constants() {
        out[c.alpha] = out[c.alpha] + R::cst(c.approx) * a[c.i] * b[c.j];
    }
    out
}

/// `(t + s + ‖(v−v0)/2‖²)² + ‖z − z0 + ½[v, v0]‖²`.
fn distance_core<R: Real>(sig: &SpaceSignature, v: &[R], z: &[R], t: R, v0: &[f64], z0: &[f64], s: f64) -> R {
    let w: Vec<R> = v.iter().zip(v0).map(|(&a, &b)| a - R::cst(b)).collect();
    let first = t + R::cst(s) + norm_sq(&w) * R::cst(0.25);
    let v0r: Vec<R> = v0.iter().map(|&x| R::cst(x)).collect();
    let br = bracket(sig, v, &v0r);
    let zeta: Vec<R> = (0..sig.m()).map(|a| z[a] - R::cst(z0[a]) + br[a] * R::cst(0.5)).collect();
    first * first + norm_sq(&zeta)
}

fn generalized_core<R: Real>(sig: &SpaceSignature, v: &[R], z: &[R], t: R, p1: &[Vec<f64>]) -> R {
    let a = apply(p1, v);
    let b: Vec<R> = v.iter().zip(&a).map(|(&x, &y)| x - y).collect();
    let first = t + norm_sq(&b) * R::cst(0.5);
    let br = bracket(sig, &a, &b);
    let zeta: Vec<R> = (0..sig.m()).map(|al| z[al] - br[al] * R::cst(0.5)).collect();
    (first * first + norm_sq(&zeta)) / (t * t)
}

/// `F(v, z, t)` for the family selected by `spec`, at coordinates `x`.
pub fn family_value<R: Real>(sig: &SpaceSignature, spec: &FamilySpec, x: &[R]) -> Result<R> {
    crate::error::check_dim(sig.dim(), x.len())?;
    let (n, m) = (sig.n(), sig.m());
    let (v, z, t) = (&x[..n], &x[n..n + m], x[n + m]);
    Ok(match spec {
        FamilySpec::Horosphere { c1, c2 } => (R::cst(to_f64(c1)) + R::cst(to_f64(c2)) * t) / t,
        FamilySpec::Tube { c1, c2, w_basis, w0 } => {
            let p = fmat(&projector(n, w_basis)?);
            let pv = apply(&p, v);
            let d: Vec<R> = pv.iter().zip(fvec(w0)).map(|(&a, b)| a - R::cst(b)).collect();
            (R::cst(to_f64(c1)) * norm_sq(&d) + R::cst(to_f64(c2)) * t) / t
        }
        FamilySpec::Spherelike { c1, c2, v0, z0, lambda, plus } => {
            let (v0, z0, lam) = (fvec(v0), fvec(z0), to_f64(lambda));
            let core = distance_core(sig, v, z, t, &v0, &z0, 0.0);
            let w: Vec<R> = v.iter().zip(&v0).map(|(&a, &b)| a - R::cst(b)).collect();
            let pw = apply(&fmat(plus), &w);
            // ⟨w, (2Π₊ − I) w⟩ = 2‖Π₊w‖² − ‖w‖²
            let form = norm_sq(&pw) * R::cst(2.0) - norm_sq(&w);
            let inner = core + form * R::cst(lam) + R::cst(4.0 * lam * lam);
            (R::cst(to_f64(c1)) * inner + R::cst(to_f64(c2)) * t) / t
        }
        FamilySpec::DistanceLike { x0 } => distance_core(sig, v, z, t, &fvec(&x0.v), &fvec(&x0.z), to_f64(&x0.t)) / t,
        FamilySpec::ChkRealTube => generalized_core(sig, v, z, t, &fmat(&projector(n, &real_part_basis(n))?)),
        FamilySpec::Generalized64 { v1_basis } => generalized_core(sig, v, z, t, &fmat(&projector(n, v1_basis)?)),
    })
}

/// Coordinate partial derivatives `∂F/∂x_j` at `p`.
pub fn coordinate_gradient(sig: &SpaceSignature, spec: &FamilySpec, p: &ModelPoint<f64>) -> Result<Vec<f64>> {
    let x = p.coords();
    (0..x.len())
        .map(|j| {
            let xd: Vec<Dual> = x.iter().enumerate().map(|(i, &xi)| if i == j { Dual::var(xi) } else { Dual::cst(xi) }).collect();
            family_value(sig, spec, &xd).map(|d| d.du)
        })
        .collect()
}

/// Components `E_a F` of `∇F` in the orthonormal left-invariant frame.
pub fn frame_gradient(sig: &SpaceSignature, spec: &FamilySpec, p: &ModelPoint<f64>) -> Result<Vec<f64>> {
    let d = coordinate_gradient(sig, spec, p)?;
    Ok(left_invariant_frame(sig, p)?
        .iter()
        .map(|e| e.coords().iter().zip(&d).map(|(a, b)| a * b).sum())
        .collect())
}

pub fn gradient_norm_sq(sig: &SpaceSignature, spec: &FamilySpec, p: &ModelPoint<f64>) -> Result<f64> {
    Ok(frame_gradient(sig, spec, p)?.iter().map(|x| x * x).sum())
}

/// `∇F` in coordinates.
pub fn coordinate_gradient_field(sig: &SpaceSignature, spec: &FamilySpec, p: &ModelPoint<f64>) -> Result<Vec<f64>> {
    let comps = frame_gradient(sig, spec, p)?;
    let frame = left_invariant_frame(sig, p)?;
    let mut out = vec![0.0; sig.dim()];
    for (c, e) in comps.iter().zip(&frame) {
        for (o, x) in out.iter_mut().zip(e.coords()) {
            *o += c * x;
        }
    }
    Ok(out)
}

/// `√det g` at `p`, from the metric matrix.
pub fn volume_density(sig: &SpaceSignature, p: &ModelPoint<f64>) -> Result<f64> {
    let g = metric_matrix(sig, p)?;
    let dim = sig.dim();
    let det = DMatrix::from_fn(dim, dim, |i, j| g[i][j]).determinant();
    if !(det > 0.0) {
        return Err(Error::NearSingular(det));
    }
    Ok(det.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;
    use crate::rational::{q, qi};
    use crate::verify::family_polynomial;

    #[test]
    fn dual_rules() {
        let x = Dual::var(3.0);
        let y = x * x / (x + Dual::cst(1.0));
        assert!((y.re - 2.25).abs() < 1e-15);
        assert!((y.du - 15.0 / 16.0).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_polynomial_path() {
        let s = SpaceSignature::new(build_clifford_module(3, 2).unwrap());
        let spec = FamilySpec::spherelike(&s, q(3, 2), qi(-1), vec![qi(1), qi(0), qi(2), qi(-1), qi(0), qi(0), qi(1), qi(0)], vec![qi(1), qi(0), q(1, 2)], q(1, 4), 1).unwrap();
        let f = family_polynomial(&s, &spec).unwrap();
        let x: Vec<f64> = (0..s.dim()).map(|i| 0.3 + 0.1 * i as f64).collect();
        let a = family_value(&s, &spec, &x).unwrap();
        let b = f.evaluate_f64(&x);
        assert!((a - b).abs() < 1e-12 * b.abs());
    }

    #[test]
    fn density_matches_power_of_t() {
        let s = SpaceSignature::new(build_clifford_module(1, 2).unwrap());
        let p = ModelPoint::new(vec![0.3, -1.0, 2.0, 0.5], vec![0.7], 1.7).unwrap();
        let expected = 1.7f64.powf(-(2.0 + 1.0 + 1.0));
        assert!((volume_density(&s, &p).unwrap() - expected).abs() < 1e-12);
    }
}
