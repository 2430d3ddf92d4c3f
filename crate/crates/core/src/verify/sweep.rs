//! Randomized completeness sweep over small polynomial candidates `G / t`.
//!
//! Each candidate is drawn from its own ChaCha8 stream (`seed`, stream =
//! candidate index), so results do not depend on thread count or order.
//! Half the candidates are random combinations of dictionary monomials; the
//! other half are random family members with zero to two monomials added.
//! Every candidate passing both checks must be recognized by
//! [`recognize`](super::matching::recognize); anything else is reported as
//! unexplained.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::htype::SpaceSignature;
use crate::linalg::projector;
use crate::par::{map_indexed, Execution};
use crate::poly::{Exponent, Layout, Poly, PolyFraction};
use crate::rational::{q, qi, Q};
use crate::verify::family::{family_polynomial, FamilyKind, FamilySpec};
use crate::verify::matching::recognize;
use crate::verify::report::verify_laplace_first;

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub candidates: usize,
    pub seed: u64,
    pub max_degree: u32,
    pub max_t_degree: u8,
    pub execution: Execution,
}

impl SweepConfig {
    pub fn new(candidates: usize, seed: u64) -> Self {
        SweepConfig { candidates, seed, max_degree: 4, max_t_degree: 2, execution: Execution::Parallel }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateSource {
    Random,
    Family,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepHit {
    pub index: usize,
    pub source: CandidateSource,
    pub polynomial: String,
    pub recognized: Option<&'static str>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct SweepSummary {
    pub candidates: usize,
    pub laplace_passes: usize,
    pub double_passes: usize,
    pub recognized: usize,
    pub hits: Vec<SweepHit>,
    pub unexplained: Vec<SweepHit>,
}

/// Monomials of total degree `≤ max_degree` and `t`-degree `≤ max_t`,
/// excluding the constant.
pub fn monomial_dictionary(l: Layout, max_degree: u32, max_t: u8) -> Vec<Exponent> {
    fn rec(l: Layout, var: usize, left: u32, max_t: u8, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        if var == l.nvars() {
            if cur.iter().any(|&e| e > 0) {
                out.push(cur.clone());
            }
            return;
        }
        let cap = if var == l.t() { left.min(max_t as u32) } else { left };
        for e in 0..=cap {
            cur[var] = e as u8;
            rec(l, var + 1, left - e, max_t, cur, out);
        }
        cur[var] = 0;
    }
    let mut out = Vec::new();
    let mut cur: Exponent = std::iter::repeat_n(0u8, l.nvars()).collect();
    rec(l, 0, max_degree, max_t, &mut cur, &mut out);
    out
}

/// Uniform over `{−2, …, 2} / {1, 2}`, optionally excluding zero.
fn small_rational<R: Rng>(rng: &mut R, nonzero: bool) -> Q {
    loop {
        let c = q(rng.random_range(-2..=2), rng.random_range(1..=2));
        if !nonzero || c != qi(0) {
            return c;
        }
    }
}

fn small_vec<R: Rng>(rng: &mut R, len: usize) -> Vec<Q> {
    (0..len).map(|_| qi(rng.random_range(-1..=1))).collect()
}

fn random_family<R: Rng>(sig: &SpaceSignature, rng: &mut R) -> PolyFraction {
    let (n, m) = (sig.n(), sig.m());
    let c1 = small_rational(rng, true);
    let c2 = small_rational(rng, false);
    let spec = match rng.random_range(0..3) {
        0 => FamilySpec::horosphere(c1, c2),
        1 => loop {
            let dim = rng.random_range(1..=n);
            let basis: Vec<Vec<Q>> = (0..dim).map(|_| small_vec(rng, n)).collect();
            let Ok(p) = projector(n, &basis) else { continue };
            if p.rank() == 0 {
                continue;
            }
            let w0 = p.mul_vec(&small_vec(rng, n));
            break FamilySpec::Tube { c1, c2, w_basis: basis, w0 };
        },
        _ => {
            let lambda = [qi(0), q(1, 4), q(1, 2), qi(1)][rng.random_range(0..4)].clone();
            let plus = rng.random_range(0..=sig.module().copies());
            FamilySpec::spherelike(sig, c1, c2, small_vec(rng, n), small_vec(rng, m), lambda, plus)
                .expect("parameters have the right shape")
        }
    };
    family_polynomial(sig, &spec).expect("valid family parameters")
}

/// Candidate `index` of a sweep; deterministic in `(seed, index)`.
pub fn candidate(sig: &SpaceSignature, cfg: &SweepConfig, dictionary: &[Exponent], index: usize) -> (CandidateSource, PolyFraction) {
    let l = Layout::of(sig);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let add_monomials = |g: &mut Poly, rng: &mut ChaCha8Rng, count: usize| {
        for _ in 0..count {
            let e = &dictionary[rng.random_range(0..dictionary.len())];
            g.add_term(e.clone(), small_rational(rng, true));
        }
    };
    if rng.random_bool(0.5) {
        loop {
            let mut g = Poly::zero(l);
            if rng.random_bool(0.5) {
                g.add_term(std::iter::repeat_n(0u8, l.nvars()).collect(), small_rational(&mut rng, true));
            }
            let count = rng.random_range(1..=4);
            add_monomials(&mut g, &mut rng, count);
            if let Ok(f) = PolyFraction::new(g, 1) {
                return (CandidateSource::Random, f);
            }
        }
    }
    loop {
        let base = random_family(sig, &mut rng);
        let mut g = base.numerator().clone();
        let count = rng.random_range(0..=2);
        add_monomials(&mut g, &mut rng, count);
        if let Ok(f) = PolyFraction::new(g, 1) {
            return (CandidateSource::Family, f);
        }
    }
}

enum Outcome {
    LaplaceFail,
    LaplaceOnly,
    Hit(SweepHit, bool),
}

pub fn completeness_sweep(sig: &SpaceSignature, cfg: &SweepConfig) -> Result<SweepSummary> {
    let l = Layout::of(sig);
    let dictionary = monomial_dictionary(l, cfg.max_degree, cfg.max_t_degree);
    let outcomes = map_indexed(cfg.execution, cfg.candidates, |index| -> Result<Outcome> {
        let (source, f) = candidate(sig, cfg, &dictionary, index);
        let Some(report) = verify_laplace_first(sig, &f)? else {
            return Ok(Outcome::LaplaceFail);
        };
        if !report.transnormal {
            return Ok(Outcome::LaplaceOnly);
        }
        let rec = recognize(sig, &f)?;
        let hit = SweepHit {
            index,
            source,
            polynomial: f.numerator().to_string(),
            recognized: rec.as_ref().map(|r| r.kind.name()),
        };
        Ok(Outcome::Hit(hit, rec.is_some()))
    });
    let mut summary = SweepSummary { candidates: cfg.candidates, ..Default::default() };
    for o in outcomes {
        match o? {
            Outcome::LaplaceFail => {}
            Outcome::LaplaceOnly => summary.laplace_passes += 1,
            Outcome::Hit(hit, ok) => {
                summary.laplace_passes += 1;
                summary.double_passes += 1;
                if ok {
                    summary.recognized += 1;
                } else {
                    summary.unexplained.push(hit.clone());
                }
                summary.hits.push(hit);
            }
        }
    }
    Ok(summary)
}

/// Families the sweep draws from.
pub const SWEPT_FAMILIES: [FamilyKind; 3] = [FamilyKind::Horosphere, FamilyKind::Tube, FamilyKind::Spherelike];
