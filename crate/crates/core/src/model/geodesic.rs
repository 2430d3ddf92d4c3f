//! Geodesics by integrating the Euler-Arnold equation in the left-invariant
//! frame.
//!
//! Write the velocity as `ω = Σ p_i E_i + Σ q_α F_α + a A`. The frame
//! brackets are `[E_i, E_j] = Σ_α c[i][j][α] F_α`, `[A, E_i] = ½ E_i`,
//! `[A, F_α] = F_α`, and the Koszul formula for a left-invariant metric then
//! gives
//!
//! ```text
//! p_k' = ⟨[p, e_k], q⟩ + ½ a p_k
//! q_α' = a q_α
//! a'   = −½|p|² − |q|²
//! ```
//!
//! Positions follow from the frame: `v' = √t p`, `z' = t q − ½√t [p, v]`,
//! `t' = t a`.

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::model::{metric_at, ModelPoint, TangentVector};

/// Components `(p, q, a)` of a velocity in the frame `E, F, A`.
#[derive(Clone, Debug, PartialEq)]
pub struct BodyVelocity {
    pub p: Vec<f64>,
    pub q: Vec<f64>,
    pub a: f64,
}

impl BodyVelocity {
    pub fn norm(&self) -> f64 {
        let s: f64 = self.p.iter().chain(&self.q).map(|x| x * x).sum::<f64>() + self.a * self.a;
        s.sqrt()
    }

    fn scale(&mut self, s: f64) {
        self.p.iter_mut().chain(self.q.iter_mut()).for_each(|x| *x *= s);
        self.a *= s;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicSample {
    pub s: f64,
    pub point: ModelPoint<f64>,
    /// `|ẋ|_g − 1` at this sample.
    pub speed_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPath {
    pub samples: Vec<GeodesicSample>,
}

impl GeodesicPath {
    pub fn end(&self) -> &ModelPoint<f64> {
        &self.samples.last().expect("paths contain the start point").point
    }

    pub fn max_speed_error(&self) -> f64 {
        self.samples.iter().map(|s| s.speed_error.abs()).fold(0.0, f64::max)
    }
}

/// Frame components of a coordinate tangent vector at `p`.
pub fn body_from_tangent(sig: &SpaceSignature, p: &ModelPoint<f64>, u: &TangentVector<f64>) -> BodyVelocity {
    let rt = p.t.sqrt();
    let br = sig.bracket_unchecked(&u.dv, &p.v);
    BodyVelocity {
        p: u.dv.iter().map(|x| x / rt).collect(),
        q: u.dz.iter().zip(&br).map(|(z, b)| (z + 0.5 * b) / p.t).collect(),
        a: u.dt / p.t,
    }
}

fn tangent_from_body(sig: &SpaceSignature, x: &ModelPoint<f64>, w: &BodyVelocity) -> TangentVector<f64> {
    let rt = x.t.sqrt();
    let br = sig.bracket_unchecked(&w.p, &x.v);
    TangentVector {
        dv: w.p.iter().map(|p| rt * p).collect(),
        dz: w.q.iter().zip(&br).map(|(q, b)| x.t * q - 0.5 * rt * b).collect(),
        dt: x.t * w.a,
    }
}

/// State layout: `v, z, t, p, q, a`.
fn rhs(sig: &SpaceSignature, y: &[f64], out: &mut [f64]) {
    let (n, m) = (sig.n(), sig.m());
    let d = n + m + 1;
    let (x, w) = y.split_at(d);
    let (v, t) = (&x[..n], x[n + m]);
    let (p, q, a) = (&w[..n], &w[n..n + m], w[n + m]);
    let rt = t.sqrt();

    out.fill(0.0);
    for c in sig.constants() {
        // z' gets −½√t [p, v]; p_j' gets ⟨[p, e_j], q⟩.
        out[n + c.alpha] -= 0.5 * rt * c.approx * p[c.i] * v[c.j];
        out[d + c.j] += c.approx * p[c.i] * q[c.alpha];
    }
    for i in 0..n {
        out[i] = rt * p[i];
        out[d + i] += 0.5 * a * p[i];
    }
    for al in 0..m {
        out[n + al] += t * q[al];
        out[d + n + al] = a * q[al];
    }
    out[n + m] = t * a;
    let pp: f64 = p.iter().map(|x| x * x).sum();
    let qq: f64 = q.iter().map(|x| x * x).sum();
    out[d + n + m] = -0.5 * pp - qq;
}

fn unpack(sig: &SpaceSignature, y: &[f64]) -> (ModelPoint<f64>, BodyVelocity) {
    let (n, m) = (sig.n(), sig.m());
    let d = n + m + 1;
    let point = ModelPoint { v: y[..n].to_vec(), z: y[n..n + m].to_vec(), t: y[n + m] };
    let body = BodyVelocity { p: y[d..d + n].to_vec(), q: y[d + n..d + n + m].to_vec(), a: y[2 * d - 1] };
    (point, body)
}

fn sample(sig: &SpaceSignature, s: f64, y: &[f64]) -> GeodesicSample {
    let (point, body) = unpack(sig, y);
    let u = tangent_from_body(sig, &point, &body);
    let speed = metric_at(sig, &point, &u, &u).map(f64::sqrt).unwrap_or(f64::NAN);
    GeodesicSample { s, point, speed_error: speed - 1.0 }
}

/// Integrates the unit-speed geodesic from `p0` with initial direction `u0`
/// over `[0, s_max]` using `steps` classical Runge-Kutta steps.
///
/// `u0` is normalized once; speed drift along the path is reported in each
/// sample and never corrected.
pub fn geodesic_flow(
    sig: &SpaceSignature,
    p0: &ModelPoint<f64>,
    u0: &TangentVector<f64>,
    s_max: f64,
    steps: usize,
) -> Result<GeodesicPath> {
    let body = body_from_tangent(sig, p0, u0);
    geodesic_flow_body(sig, p0, body, s_max, steps)
}

/// Same as [`geodesic_flow`] with the initial velocity given in the frame.
pub fn geodesic_flow_body(
    sig: &SpaceSignature,
    p0: &ModelPoint<f64>,
    mut body: BodyVelocity,
    s_max: f64,
    steps: usize,
) -> Result<GeodesicPath> {
    if !(p0.t > 0.0) {
        return Err(Error::NonPositiveT(p0.t.to_string()));
    }
    if !(s_max >= 0.0) || !s_max.is_finite() {
        return Err(Error::InvalidArgument(format!("s_max = {s_max}")));
    }
    if (steps as f64) < 100.0 * s_max {
        return Err(Error::InvalidArgument(format!("{steps} steps is fewer than 100 per unit length over {s_max}")));
    }
    let norm = body.norm();
    if !(norm > 0.0) {
        return Err(Error::InvalidArgument("initial direction is zero".into()));
    }
    body.scale(1.0 / norm);

    let mut y: Vec<f64> = p0.coords();
    y.extend(body.p.iter().chain(&body.q));
    y.push(body.a);

    let mut samples = vec![sample(sig, 0.0, &y)];
    if s_max == 0.0 {
        return Ok(GeodesicPath { samples });
    }
    let h = s_max / steps as f64;
    let len = y.len();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; len], vec![0.0; len], vec![0.0; len], vec![0.0; len]);
    let mut tmp = vec![0.0; len];
    let tpos = sig.n() + sig.m();
    for step in 1..=steps {
        rhs(sig, &y, &mut k1);
        for i in 0..len {
            tmp[i] = y[i] + 0.5 * h * k1[i];
        }
        rhs(sig, &tmp, &mut k2);
        for i in 0..len {
            tmp[i] = y[i] + 0.5 * h * k2[i];
        }
        rhs(sig, &tmp, &mut k3);
        for i in 0..len {
            tmp[i] = y[i] + h * k3[i];
        }
        rhs(sig, &tmp, &mut k4);
        for i in 0..len {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let s = step as f64 * h;
        if !(y[tpos] > 0.0) || y.iter().any(|x| !x.is_finite()) {
            return Err(Error::StepUnderflow { s, samples: samples.len() });
        }
        samples.push(sample(sig, s, &y));
    }
    Ok(GeodesicPath { samples })
}
