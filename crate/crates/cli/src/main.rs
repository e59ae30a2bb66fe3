//! Command-line front end: verification sweeps, state construction,
//! decomposition certificates, and segment extension, all emitting JSON
//! on standard output. Human-readable progress goes to standard error so
//! the output stream stays machine-parseable.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad arguments
//! or malformed input, 3 structurally invalid input data (a matrix that
//! is not a state, endpoints that do not lie in the face).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use trisep::faces::{decompose, eta_average, TenStateBasis, FACE_TOL};
use trisep::pptlab::{extend_segment, SegmentResult};
use trisep::products::{surface_membership, SurfaceId, SurfaceKind, TripleP};
use trisep::sweeps::{all_pass, run_battery, CheckRecord};
use trisep::{Complex64, ComplexMatrix, Error, Tolerances, Triple};

#[derive(Parser)]
#[command(name = "trisep", version, about = "Three-qubit witness and face certification tool")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the whole verification battery for all four witness triples.
    VerifyAll {
        /// Witness parameter; conditioning guard restricts it to [1/16, 16].
        #[arg(long, default_value_t = 1.0)]
        u: f64,
        /// Seed for the randomized sweeps.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also write the JSON report to this file.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Construct a state and print it as a matrix (dim, re, im).
    Construct {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        u: f64,
        /// Mixture weights over the triple's ten face states, comma separated,
        /// summing to one. Mutually exclusive with --p/--q/--r.
        #[arg(long)]
        weights: Option<String>,
        /// First coordinate of a point on the surface S. The three
        /// coordinates select the closed-form average over the eight
        /// product vectors at that point, unnormalized.
        #[arg(long, requires = "q", requires = "r", conflicts_with = "weights")]
        p: Option<f64>,
        #[arg(long, requires = "p")]
        q: Option<f64>,
        #[arg(long, requires = "p")]
        r: Option<f64>,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Decompose a state file over a triple's ten face states.
    Decompose {
        /// Path to a matrix JSON file (dim 8, re, im). The matrix is
        /// normalized to unit trace before decomposing.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        triple: String,
        #[arg(long)]
        u: f64,
        /// Face membership tolerance for the verdict.
        #[arg(long, default_value_t = FACE_TOL)]
        tol: f64,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Extend the segment through two face states past t = 1 and locate
    /// the PPT boundary.
    Extend {
        #[arg(long)]
        triple: String,
        #[arg(long)]
        u: f64,
        /// Weights of the interior starting state, comma separated.
        #[arg(long)]
        w0: String,
        /// Weights of the face state to extend through.
        #[arg(long)]
        w1: String,
        #[arg(long, default_value_t = 64.0)]
        t_max: f64,
        /// Bisection tolerance for the boundary parameter.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
}

#[derive(Serialize)]
struct ReportJson {
    version: String,
    u: f64,
    seed: u64,
    triple: String,
    records: Vec<RecordJson>,
    overall: bool,
}

#[derive(Serialize)]
struct RecordJson {
    name: String,
    pass: bool,
    measured: f64,
    tolerance: f64,
    detail: String,
}

impl From<&CheckRecord> for RecordJson {
    fn from(r: &CheckRecord) -> Self {
        RecordJson {
            name: r.name.clone(),
            pass: r.pass,
            measured: r.measured,
            tolerance: r.tolerance,
            detail: r.detail.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl MatrixJson {
    fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let mut re = vec![vec![0.0; n]; n];
        let mut im = vec![vec![0.0; n]; n];
        for r in 0..n {
            for c in 0..n {
                re[r][c] = m[(r, c)].re;
                im[r][c] = m[(r, c)].im;
            }
        }
        MatrixJson { dim: n, re, im }
    }

    fn to_matrix(&self) -> Result<ComplexMatrix, String> {
        let n = self.dim;
        if n == 0 || self.re.len() != n || self.im.len() != n {
            return Err(format!("matrix claims dim {n} but rows disagree"));
        }
        for rows in [&self.re, &self.im] {
            if rows.iter().any(|row| row.len() != n) {
                return Err(format!("matrix claims dim {n} but a row disagrees"));
            }
        }
        Ok(ComplexMatrix::from_fn(n, |r, c| {
            Complex64::new(self.re[r][c], self.im[r][c])
        }))
    }
}

#[derive(Serialize)]
struct CertificateJson {
    triple: String,
    u: f64,
    weights: Vec<f64>,
    residual: f64,
    hyperplane_values: [f64; 3],
    verdict: String,
}

#[derive(Serialize)]
struct ProbeJson {
    t: f64,
    ppt: bool,
    certificate: CertificateJson,
}

#[derive(Serialize)]
struct SegmentJson {
    triple: String,
    u: f64,
    t_star: f64,
    capped: bool,
    probes: Vec<ProbeJson>,
    witness_values: Vec<[f64; 3]>,
}

/// Failures carry the exit code they map to, so `main` stays a thin shell.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::BadParameter(_) | Error::BadDimension { .. } => 2,
            Error::NotXShaped { .. }
            | Error::NotAState(_)
            | Error::BadEndpoints(_)
            | Error::NotHermitian { .. }
            | Error::NonRealPairing { .. } => 3,
            _ => 1,
        };
        Failure::new(code, err.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::VerifyAll { u, seed, json_out } => cmd_verify_all(u, seed, json_out.as_deref()),
        Command::Construct { triple, u, weights, p, q, r, json_out } => {
            cmd_construct(&triple, u, weights.as_deref(), p, q, r, json_out.as_deref())
        }
        Command::Decompose { input, triple, u, tol, json_out } => {
            cmd_decompose(&input, &triple, u, tol, json_out.as_deref())
        }
        Command::Extend { triple, u, w0, w1, t_max, tol, json_out } => {
            cmd_extend(&triple, u, &w0, &w1, t_max, tol, json_out.as_deref())
        }
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn cmd_verify_all(u: f64, seed: u64, json_out: Option<&Path>) -> Result<u8, Failure> {
    if !(u >= 1.0 / 16.0 && u <= 16.0) {
        return Err(Failure::new(
            2,
            format!("u must lie in [1/16, 16] for well-conditioned checks, got {u}"),
        ));
    }
    let records = run_battery(u, seed)?;
    for record in &records {
        eprintln!("{record}");
    }
    let overall = all_pass(&records);
    let report = ReportJson {
        version: env!("CARGO_PKG_VERSION").to_string(),
        u,
        seed,
        triple: "all".to_string(),
        records: records.iter().map(RecordJson::from).collect(),
        overall,
    };
    emit(&report, json_out)?;
    Ok(if overall { 0 } else { 1 })
}

fn cmd_construct(
    triple: &str,
    u: f64,
    weights: Option<&str>,
    p: Option<f64>,
    q: Option<f64>,
    r: Option<f64>,
    json_out: Option<&Path>,
) -> Result<u8, Failure> {
    let triple = parse_triple(triple)?;
    let matrix = match (weights, p) {
        (Some(csv), None) => {
            let weights = parse_weights(csv)?;
            let basis = TenStateBasis::new(triple, u)?;
            basis.mix(&weights)?
        }
        (None, Some(p)) => {
            // q and r are enforced by the argument parser once p is given
            let point = TripleP::new(p, q.unwrap(), r.unwrap())?;
            let surface = SurfaceId { kind: SurfaceKind::S, u };
            if !surface_membership(&point, &surface, 1e-6) {
                return Err(Failure::new(
                    2,
                    format!(
                        "point ({}, {}, {}) is not on the surface {} at u={u}",
                        point.p(),
                        point.q(),
                        point.r(),
                        SurfaceKind::S
                    ),
                ));
            }
            eta_average(&point)
        }
        (None, None) => {
            let point = TripleP::from_array(triple.designated_point(u))?;
            eta_average(&point)
        }
        (Some(_), Some(_)) => unreachable!("clap rejects --weights with --p"),
    };
    emit(&MatrixJson::from_matrix(&matrix), json_out)?;
    Ok(0)
}

fn cmd_decompose(
    input: &Path,
    triple: &str,
    u: f64,
    tol: f64,
    json_out: Option<&Path>,
) -> Result<u8, Failure> {
    let triple = parse_triple(triple)?;
    let raw = fs::read_to_string(input)
        .map_err(|e| Failure::new(2, format!("cannot read {}: {e}", input.display())))?;
    let parsed: MatrixJson = serde_json::from_str(&raw)
        .map_err(|e| Failure::new(2, format!("malformed matrix JSON: {e}")))?;
    let matrix = parsed.to_matrix().map_err(|e| Failure::new(2, e))?;
    if matrix.dim() != trisep::DIM {
        let n = matrix.dim();
        return Err(Failure::new(2, format!("expected an 8x8 matrix, got {n}x{n}")));
    }
    if !matrix.is_hermitian(&Tolerances::default()) {
        return Err(Failure::new(3, "input matrix is not Hermitian".to_string()));
    }
    let trace = matrix.trace().re;
    if trace.abs() < 1e-9 {
        return Err(Failure::new(3, format!("input trace {trace} cannot be normalized")));
    }
    let state = matrix.scale_re(1.0 / trace);

    let basis = TenStateBasis::new(triple, u)?;
    let cert = decompose(&state, &basis, tol)?;
    eprintln!(
        "verdict {} with residual {:.3e} (input trace {:.6} normalized away)",
        cert.verdict, cert.residual, trace
    );
    emit(
        &CertificateJson {
            triple: triple.to_string(),
            u,
            weights: cert.weights.clone(),
            residual: cert.residual,
            hyperplane_values: cert.hyperplane_values,
            verdict: cert.verdict.to_string(),
        },
        json_out,
    )?;
    Ok(0)
}

fn cmd_extend(
    triple: &str,
    u: f64,
    w0: &str,
    w1: &str,
    t_max: f64,
    tol: f64,
    json_out: Option<&Path>,
) -> Result<u8, Failure> {
    let triple = parse_triple(triple)?;
    let w0 = parse_weights(w0)?;
    let w1 = parse_weights(w1)?;
    let basis = TenStateBasis::new(triple, u)?;
    let rho0 = basis.mix(&w0)?;
    let rho1 = basis.mix(&w1)?;
    let result = extend_segment(&rho0, &rho1, &basis, t_max, tol)?;
    eprintln!(
        "t_star = {:.8} ({})",
        result.t_star,
        if result.capped { "hit the cap while still PPT" } else { "bisected boundary" }
    );
    emit(&segment_json(triple, u, &result), json_out)?;
    Ok(0)
}

fn segment_json(triple: Triple, u: f64, result: &SegmentResult) -> SegmentJson {
    SegmentJson {
        triple: triple.to_string(),
        u,
        t_star: result.t_star,
        capped: result.capped,
        probes: result
            .probes
            .iter()
            .map(|p| ProbeJson {
                t: p.t,
                ppt: p.ppt,
                certificate: CertificateJson {
                    triple: triple.to_string(),
                    u,
                    weights: p.certificate.weights.clone(),
                    residual: p.certificate.residual,
                    hyperplane_values: p.certificate.hyperplane_values,
                    verdict: p.certificate.verdict.to_string(),
                },
            })
            .collect(),
        witness_values: result.witness_values.clone(),
    }
}

fn parse_triple(label: &str) -> Result<Triple, Failure> {
    Triple::from_str(label).map_err(Failure::from)
}

fn parse_weights(csv: &str) -> Result<Vec<f64>, Failure> {
    let weights: Vec<f64> = csv
        .split(',')
        .map(|part| part.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::new(2, format!("weights must be comma-separated reals: {e}")))?;
    if weights.len() != 10 {
        return Err(Failure::new(
            2,
            format!("expected 10 weights, got {}", weights.len()),
        ));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Failure::new(2, format!("weights sum to {total}, need 1")));
    }
    Ok(weights)
}

/// Serializes to stdout and, when requested, to a file.
fn emit<T: Serialize>(value: &T, json_out: Option<&Path>) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Failure::new(1, format!("serialization failed: {e}")))?;
    println!("{text}");
    if let Some(path) = json_out {
        fs::write(path, &text)
            .map_err(|e| Failure::new(1, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}
