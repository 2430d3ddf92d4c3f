//! `drlab` batch front end.
//!
//! Every subcommand writes one artifact (JSON or CSV) to `--out`, or to
//! stdout when `--out` is absent, in which case the human summary goes to
//! stderr. Exit codes: 0 when the verdict matches the expectation, 1 on a
//! mismatch, 2 on invalid input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use drlab::clifford::irreducible_dim;
use drlab::geometry::{mean_curvature, mean_curvature_numeric, point_on_level, TubeProfile};
use drlab::htype::SpaceSignature;
use drlab::model::{geodesic_flow, ModelPoint, TangentVector};
use drlab::numeric::family_value;
use drlab::par::{map_indexed, Execution};
use drlab::rational::{parse_q, to_f64};
use drlab::verify::prop64::random_splitting;
use drlab::verify::{completeness_sweep, family_polynomial, prop64_check, real_part_basis, verify, FamilySpec, SweepConfig};
use drlab::Q;

const SCHEMA_VERSION: u32 = 1;
const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "drlab", version, about = "Exact and numeric checks for isoparametric families on Damek-Ricci spaces")]
struct Cli {
    /// Seed for every randomized step; recorded in all outputs.
    #[arg(long, global = true, env = "DRLAB_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Run data-parallel stages on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Clifford module and structure constants.
    Space {
        #[command(subcommand)]
        action: SpaceCmd,
    },
    /// Exact transnormality and Laplace check of one family member.
    Verify(Box<VerifyArgs>),
    /// Randomized completeness sweep over small polynomial candidates.
    Sweep(SweepArgs),
    /// Mean curvature of tubes around the focal variety.
    Curvature {
        #[command(subcommand)]
        action: CurvatureCmd,
    },
    /// Distance-function oracle along integrated geodesics.
    Geodesic {
        #[command(subcommand)]
        action: GeodesicCmd,
    },
    /// Bracket condition versus the two verdicts on random splittings.
    Prop64 {
        #[command(subcommand)]
        action: Prop64Cmd,
    },
}

#[derive(Subcommand)]
enum SpaceCmd {
    Build(SpaceArgs),
}

#[derive(Subcommand)]
enum CurvatureCmd {
    Table(CurvatureArgs),
}

#[derive(Subcommand)]
enum GeodesicCmd {
    Check(GeodesicArgs),
}

#[derive(Subcommand)]
enum Prop64Cmd {
    Scan(Prop64Args),
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Center dimension.
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Number of irreducible blocks.
    #[arg(long, default_value_t = 2)]
    copies: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Horospheres `c1 t^{-1} + c2`.
    I,
    /// Tubes around a totally geodesic subspace.
    Ii,
    /// Spherelike family with a splitting of `v`.
    Iii,
    /// `cosh` of the distance to a point.
    Distance,
    /// Real tube on complex hyperbolic space.
    Chk,
    /// Generalized candidate built from a splitting `v = v1 + v2`.
    General64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Expect {
    Pass,
    Fail,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    copies: usize,
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long, default_value = "1", value_parser = rational)]
    c1: Q,
    #[arg(long, default_value = "0", value_parser = rational)]
    c2: Q,
    #[arg(long, default_value = "1/2", value_parser = rational)]
    lambda: Q,
    /// Irreducible blocks in `v+` (defaults to all of them).
    #[arg(long)]
    plus_copies: Option<usize>,
    /// Comma-separated rationals; zero when omitted.
    #[arg(long)]
    v0: Option<String>,
    #[arg(long)]
    z0: Option<String>,
    #[arg(long, default_value = "1", value_parser = rational)]
    t0: Q,
    /// Coordinate indices spanning the tube direction space.
    #[arg(long, default_value = "0")]
    w: String,
    #[arg(long)]
    w0: Option<String>,
    /// Coordinate indices spanning `v1` (defaults to the even coordinates).
    #[arg(long)]
    v1: Option<String>,
    #[arg(long, value_enum, default_value_t = Expect::Pass)]
    expect: Expect,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long, default_value_t = 10_000)]
    candidates: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CurvatureArgs {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    /// Comma-separated positive rationals.
    #[arg(long, default_value = "1/4,1")]
    lambda: String,
    /// Comma-separated block counts for `v+`; all blocks when omitted.
    #[arg(long)]
    plus_copies: Option<String>,
    /// Comma-separated positive radii; an empty list gives a header-only table.
    #[arg(long, default_value = "0.25,0.5,1,2")]
    r: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GeodesicArgs {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long, default_value_t = 20)]
    rays: usize,
    #[arg(long, default_value_t = 3.0)]
    s_max: f64,
    #[arg(long, default_value_t = 600)]
    steps: usize,
    /// Height of the base point.
    #[arg(long, default_value = "1", value_parser = rational)]
    t0: Q,
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Prop64Args {
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = 1)]
    copies: usize,
    #[arg(long, default_value_t = 20)]
    samples: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct Ctx {
    seed: u64,
    exec: Execution,
}

fn rational(s: &str) -> std::result::Result<Q, String> {
    parse_q(s).map_err(|e| e.to_string())
}

fn rationals(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(str::trim).filter(|x| !x.is_empty()).map(|x| Ok(parse_q(x)?)).collect()
}

fn indices(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().with_context(|| format!("not an index: {x:?}")))
        .collect()
}

fn unit(n: usize, i: usize) -> Result<Vec<Q>> {
    if i >= n {
        bail!("index {i} out of range for n = {n}");
    }
    let mut e = vec![Q::from_integer(0.into()); n];
    e[i] = Q::from_integer(1.into());
    Ok(e)
}

fn vector_or_zero(s: &Option<String>, len: usize) -> Result<Vec<Q>> {
    match s {
        Some(s) => rationals(s),
        None => Ok(vec![Q::from_integer(0.into()); len]),
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Writes through a temporary file in the target directory so a failed run
/// never leaves a partial file behind.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).with_context(|| format!("cannot write into {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(())
}

/// Emits the artifact and the summary line.
fn emit(out: &Option<PathBuf>, bytes: &[u8], summary: &str) -> Result<()> {
    match out {
        Some(path) => {
            write_atomic(path, bytes)?;
            println!("{summary}");
        }
        None => {
            std::io::stdout().write_all(bytes)?;
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

fn csv_bytes<T: Serialize>(header: &[&str], rows: &[T]) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    Ok(w.into_inner()?)
}

fn space(m: usize, copies: usize) -> Result<SpaceSignature> {
    Ok(SpaceSignature::build(m, copies)?)
}

#[derive(Serialize)]
struct SpaceJson<'a> {
    schema_version: u32,
    seed: u64,
    m: usize,
    copies: usize,
    n: usize,
    irreducible_dim: usize,
    signature: &'a SpaceSignature,
}

fn cmd_space_build(ctx: &Ctx, a: &SpaceArgs) -> Result<bool> {
    let sig = space(a.m, a.copies)?;
    let doc = SpaceJson {
        schema_version: SCHEMA_VERSION,
        seed: ctx.seed,
        m: a.m,
        copies: a.copies,
        n: sig.n(),
        irreducible_dim: irreducible_dim(a.m),
        signature: &sig,
    };
    let summary = format!("n={} d(m)={} generators={}", sig.n(), irreducible_dim(a.m), sig.module().generators().len());
    emit(&a.out, &json_bytes(&doc)?, &summary)?;
    Ok(true)
}

fn family_spec(sig: &SpaceSignature, a: &VerifyArgs) -> Result<FamilySpec> {
    let (n, m) = (sig.n(), sig.m());
    let spec = match a.family {
        Family::I => FamilySpec::horosphere(a.c1.clone(), a.c2.clone()),
        Family::Ii => {
            let w_basis = indices(&a.w)?.into_iter().map(|i| unit(n, i)).collect::<Result<Vec<_>>>()?;
            FamilySpec::Tube { c1: a.c1.clone(), c2: a.c2.clone(), w_basis, w0: vector_or_zero(&a.w0, n)? }
        }
        Family::Iii => FamilySpec::spherelike(
            sig,
            a.c1.clone(),
            a.c2.clone(),
            vector_or_zero(&a.v0, n)?,
            vector_or_zero(&a.z0, m)?,
            a.lambda.clone(),
            a.plus_copies.unwrap_or(sig.module().copies()),
        )?,
        Family::Distance => FamilySpec::DistanceLike {
            x0: ModelPoint::new(vector_or_zero(&a.v0, n)?, vector_or_zero(&a.z0, m)?, a.t0.clone())?,
        },
        Family::Chk => FamilySpec::ChkRealTube,
        Family::General64 => {
            let v1_basis = match &a.v1 {
                Some(s) => indices(s)?.into_iter().map(|i| unit(n, i)).collect::<Result<Vec<_>>>()?,
                None => real_part_basis(n),
            };
            FamilySpec::Generalized64 { v1_basis }
        }
    };
    spec.validate(sig)?;
    Ok(spec)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    schema_version: u32,
    seed: u64,
    m: usize,
    copies: usize,
    family: &'static str,
    numerator: String,
    expect: Expect,
    verdict: Expect,
    report: &'a drlab::verify::VerificationReport,
}

fn cmd_verify(ctx: &Ctx, a: &VerifyArgs) -> Result<bool> {
    let sig = space(a.m, a.copies)?;
    let spec = family_spec(&sig, a)?;
    let f = family_polynomial(&sig, &spec)?;
    let report = verify(&sig, &f)?;
    let verdict = if report.passes() { Expect::Pass } else { Expect::Fail };
    let doc = VerifyJson {
        schema_version: SCHEMA_VERSION,
        seed: ctx.seed,
        m: a.m,
        copies: a.copies,
        family: spec.kind().name(),
        numerator: f.numerator().to_string(),
        expect: a.expect,
        verdict,
        report: &report,
    };
    let summary = format!(
        "{}: transnormal={} laplace={} expected {}",
        spec.kind().name(),
        report.transnormal,
        report.laplace,
        if a.expect == Expect::Pass { "pass" } else { "fail" }
    );
    emit(&a.out, &json_bytes(&doc)?, &summary)?;
    Ok(verdict == a.expect)
}

#[derive(Serialize)]
struct SweepRow<'a> {
    schema_version: u32,
    seed: u64,
    index: usize,
    source: drlab::verify::sweep::CandidateSource,
    recognized: &'a str,
    polynomial: &'a str,
}

fn cmd_sweep(ctx: &Ctx, a: &SweepArgs) -> Result<bool> {
    let sig = space(a.m, a.copies)?;
    let mut cfg = SweepConfig::new(a.candidates, ctx.seed);
    cfg.execution = ctx.exec;
    let summary = completeness_sweep(&sig, &cfg)?;
    let rows: Vec<_> = summary
        .hits
        .iter()
        .map(|h| SweepRow {
            schema_version: SCHEMA_VERSION,
            seed: ctx.seed,
            index: h.index,
            source: h.source,
            recognized: h.recognized.unwrap_or(""),
            polynomial: &h.polynomial,
        })
        .collect();
    let bytes = csv_bytes(&["schema_version", "seed", "index", "source", "recognized", "polynomial"], &rows)?;
    let text = format!(
        "{} candidates, {} Laplace passes, {} double passes, {} recognized, {} unexplained",
        summary.candidates,
        summary.laplace_passes,
        summary.double_passes,
        summary.recognized,
        summary.unexplained.len()
    );
    emit(&a.out, &bytes, &text)?;
    Ok(summary.unexplained.is_empty())
}

#[derive(Serialize)]
struct CurvatureRow {
    schema_version: u32,
    seed: u64,
    m: usize,
    n: usize,
    n_plus: usize,
    n_minus: usize,
    lambda: String,
    r: f64,
    h_closed: f64,
    h_ab_route: f64,
    h_numeric: Option<f64>,
    abs_err: Option<f64>,
}

const CURVATURE_HEADER: [&str; 12] =
    ["schema_version", "seed", "m", "n", "n_plus", "n_minus", "lambda", "r", "h_closed", "h_ab_route", "h_numeric", "abs_err"];

fn cmd_curvature_table(ctx: &Ctx, a: &CurvatureArgs) -> Result<bool> {
    let sig = space(a.m, a.copies)?;
    let lambdas = rationals(&a.lambda)?;
    if let Some(l) = lambdas.iter().find(|l| to_f64(l) <= 0.0) {
        bail!("lambda must be positive, got {l}");
    }
    let plus = match &a.plus_copies {
        Some(s) => indices(s)?,
        None => vec![a.copies],
    };
    let radii = a
        .r
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<f64>().with_context(|| format!("not a radius: {x:?}")))
        .collect::<Result<Vec<_>>>()?;
    if let Some(r) = radii.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        bail!("radii must be positive, got {r}");
    }
    let mut cases = Vec::new();
    for l in &lambdas {
        for &p in &plus {
            let spec = FamilySpec::spherelike_normalized(&sig, l.clone(), p)?;
            for &r in &radii {
                cases.push((l, spec.clone(), r));
            }
        }
    }
    let rows = map_indexed(ctx.exec, cases.len(), |i| -> Result<CurvatureRow> {
        let (l, spec, r) = &cases[i];
        let profile = TubeProfile::of(&sig, spec)?;
        let h = mean_curvature(&profile, *r)?;
        let lam = profile.lambda;
        let mut v = vec![0.0; sig.n()];
        v[0] = 0.1 * lam;
        let mut z = vec![0.0; sig.m()];
        if let Some(z0) = z.first_mut() {
            *z0 = lam * r.sinh();
        }
        let h_numeric = point_on_level(&sig, spec, profile.level(*r), &v, &z)
            .and_then(|p| mean_curvature_numeric(&sig, spec, &p))
            .ok();
        Ok(CurvatureRow {
            schema_version: SCHEMA_VERSION,
            seed: ctx.seed,
            m: sig.m(),
            n: sig.n(),
            n_plus: profile.n_plus,
            n_minus: profile.n_minus,
            lambda: l.to_string(),
            r: *r,
            h_closed: profile.mean_curvature_closed(*r),
            h_ab_route: profile.mean_curvature_ab(*r),
            h_numeric,
            abs_err: h_numeric.map(|x| (x - h).abs()),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let bytes = csv_bytes(&CURVATURE_HEADER, &rows)?;
    emit(&a.out, &bytes, &format!("{} rows", rows.len()))?;
    Ok(true)
}

#[derive(Serialize)]
struct GeodesicRow {
    schema_version: u32,
    seed: u64,
    ray: usize,
    s_max: f64,
    steps: usize,
    max_error: f64,
    max_speed_error: f64,
}

fn cmd_geodesic_check(ctx: &Ctx, a: &GeodesicArgs) -> Result<bool> {
    let sig = space(a.m, a.copies)?;
    if !(a.s_max.is_finite() && a.s_max >= 0.0) || a.steps == 0 {
        bail!("need s_max >= 0 and steps >= 1");
    }
    let x0 = ModelPoint::new(vec![Q::from_integer(0.into()); sig.n()], vec![Q::from_integer(0.into()); sig.m()], a.t0.clone())?;
    let t0 = to_f64(&x0.t);
    let spec = FamilySpec::DistanceLike { x0 };
    let p0 = ModelPoint::new(vec![0.0; sig.n()], vec![0.0; sig.m()], t0)?;
    let rows = map_indexed(ctx.exec, a.rays, |ray| -> Result<GeodesicRow> {
        let mut r = rng(ctx.seed, ray as u64);
        let mut u = TangentVector::zero(&sig);
        for c in u.dv.iter_mut().chain(u.dz.iter_mut()) {
            *c = r.random_range(-1.0..1.0);
        }
        u.dt = r.random_range(-1.0..1.0);
        let path = geodesic_flow(&sig, &p0, &u, a.s_max, a.steps)?;
        let mut worst: f64 = 0.0;
        for smp in &path.samples {
            let f = family_value(&sig, &spec, &smp.point.coords())?;
            worst = worst.max((f - 4.0 * t0 * (smp.s / 2.0).cosh().powi(2)).abs());
        }
        Ok(GeodesicRow {
            schema_version: SCHEMA_VERSION,
            seed: ctx.seed,
            ray,
            s_max: a.s_max,
            steps: a.steps,
            max_error: worst,
            max_speed_error: path.max_speed_error(),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let worst = rows.iter().map(|r| r.max_error).fold(0.0, f64::max);
    let bytes = csv_bytes(&["schema_version", "seed", "ray", "s_max", "steps", "max_error", "max_speed_error"], &rows)?;
    emit(&a.out, &bytes, &format!("{} rays, max error {worst:.3e}", rows.len()))?;
    Ok(worst < a.tolerance)
}

#[derive(Serialize)]
struct Prop64Row {
    schema_version: u32,
    seed: u64,
    sample: usize,
    dim_v1: usize,
    bracket_condition: bool,
    transnormal: bool,
    laplace: bool,
    consistent: bool,
}

fn cmd_prop64_scan(ctx: &Ctx, a: &Prop64Args) -> Result<bool> {
    let sig = space(a.m, a.copies)?;
    let n = sig.n();
    let rows = map_indexed(ctx.exec, a.samples, |i| -> Result<Prop64Row> {
        let mut r = rng(ctx.seed, i as u64);
        let d1 = r.random_range(0..=n);
        let (v1, v2) = random_splitting(n, d1, &mut r);
        let rep = prop64_check(&sig, &v1, &v2)?;
        Ok(Prop64Row {
            schema_version: SCHEMA_VERSION,
            seed: ctx.seed,
            sample: i,
            dim_v1: d1,
            bracket_condition: rep.bracket_condition,
            transnormal: rep.transnormal,
            laplace: rep.laplace,
            consistent: rep.is_consistent(sig.m()),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let bad = rows.iter().filter(|r| !r.consistent).count();
    let header = ["schema_version", "seed", "sample", "dim_v1", "bracket_condition", "transnormal", "laplace", "consistent"];
    emit(&a.out, &csv_bytes(&header, &rows)?, &format!("{} splittings, {bad} inconsistent", rows.len()))?;
    Ok(bad == 0)
}

fn run(cli: &Cli) -> Result<bool> {
    let ctx = Ctx { seed: cli.seed, exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel } };
    match &cli.command {
        Command::Space { action: SpaceCmd::Build(a) } => cmd_space_build(&ctx, a),
        Command::Verify(a) => cmd_verify(&ctx, a),
        Command::Sweep(a) => cmd_sweep(&ctx, a),
        Command::Curvature { action: CurvatureCmd::Table(a) } => cmd_curvature_table(&ctx, a),
        Command::Geodesic { action: GeodesicCmd::Check(a) } => cmd_geodesic_check(&ctx, a),
        Command::Prop64 { action: Prop64Cmd::Scan(a) } => cmd_prop64_scan(&ctx, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
