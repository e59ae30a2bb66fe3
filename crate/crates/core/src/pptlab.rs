//! Positive-partial-transpose checks and the segment-extension experiment.
//!
//! Extending the line from an interior face point ϱ₀ through a boundary
//! face point ϱ₁ past t = 1 leaves the separable simplex immediately, yet
//! the extended states can stay PPT for a while. Every state strictly
//! between the face and the PPT boundary is then PPT entangled, and
//! [`extend_segment`] finds that boundary and certifies states along the
//! way. Facets whose states span too small a subspace admit no extension
//! at all; [`boundary_state_report`] summarizes the spans facet by facet.

use crate::error::{Error, Result};
use crate::faces::{decompose, DecompositionCertificate, TenStateBasis, Verdict, FACE_TOL};
use crate::linalg::{is_psd, partial_transpose, rank, ComplexMatrix, Party, Tolerances};

/// True iff `rho` is a state (Hermitian, positive semidefinite, unit
/// trace) whose three partial transposes are all positive semidefinite.
/// A matrix that fails the state preconditions is reported as
/// [`Error::NotAState`] rather than judged.
pub fn is_ppt(rho: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    if rho.dim() != crate::DIM {
        return Err(Error::BadDimension {
            expected: crate::DIM,
            got: rho.dim(),
        });
    }
    let scale = rho.max_abs_entry().max(1.0);
    let dev = rho.hermitian_deviation();
    if dev > tol.sym * scale {
        return Err(Error::NotAState(format!(
            "hermiticity deviation {dev:.3e} exceeds tolerance"
        )));
    }
    let h = rho.hermitized();
    if !is_psd(&h, tol)? {
        return Err(Error::NotAState("negative eigenvalue".into()));
    }
    let trace = h.trace().re;
    if (trace - 1.0).abs() > 1e-6 {
        return Err(Error::NotAState(format!("trace {trace} is not 1")));
    }
    ppt_member(&h, tol)
}

/// Membership in the PPT cone, with no state preconditions: positive
/// semidefinite and all three partial transposes positive semidefinite.
/// This is what segment probes use, where losing positivity is an answer
/// rather than an input error.
fn ppt_member(rho: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    if !is_psd(rho, tol)? {
        return Ok(false);
    }
    for party in Party::ALL {
        if !is_psd(&partial_transpose(rho, party)?, tol)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One sampled state along an extended segment.
#[derive(Clone, Debug)]
pub struct SegmentProbe {
    pub t: f64,
    pub ppt: bool,
    pub certificate: DecompositionCertificate,
}

/// The outcome of [`extend_segment`]: the largest PPT parameter and the
/// probe states taken on the way there.
#[derive(Clone, Debug)]
pub struct SegmentResult {
    /// Supremum of t with (1−t)ϱ₀ + tϱ₁ in the PPT cone, up to the
    /// bisection tolerance (or the cap, when the whole range stayed PPT).
    pub t_star: f64,
    /// True when the search hit `t_max` while still PPT; `t_star` is then
    /// a lower bound rather than a boundary.
    pub capped: bool,
    pub probes: Vec<SegmentProbe>,
    /// Pairings of each probe state with the triple's three witnesses,
    /// aligned with `probes`.
    pub witness_values: Vec<[f64; 3]>,
}

impl SegmentResult {
    /// The probes carrying a complete PPT-entanglement certificate: on
    /// the hyperplane within 1e-8, at least one decomposition weight
    /// below −1e-8, and inside the PPT cone. All three must hold at once
    /// for a probe to appear here.
    pub fn ppt_entangled_probes(&self) -> Vec<&SegmentProbe> {
        self.probes
            .iter()
            .filter(|p| {
                p.ppt
                    && p.certificate.verdict == Verdict::CertifiedEntangled
                    && p.certificate.min_weight() < -1e-8
                    && p.certificate
                        .hyperplane_values
                        .iter()
                        .all(|h| h.abs() <= 1e-8)
            })
            .collect()
    }
}

/// Follows ϱ_t = (1−t)ϱ₀ + tϱ₁ past the face and locates the PPT
/// boundary.
///
/// `rho0` must decompose strictly inside the simplex (every weight at
/// least 0.01) and `rho1` must decompose inside it as well; otherwise
/// [`Error::BadEndpoints`] is returned and no search happens. The search
/// doubles t from 2 until PPT fails or `t_max` is reached, then bisects to
/// within `bisect_tol`. Probes are taken at the quarter points of
/// [1, t_star] and just on both sides of the boundary.
pub fn extend_segment(
    rho0: &ComplexMatrix,
    rho1: &ComplexMatrix,
    basis: &TenStateBasis,
    t_max: f64,
    bisect_tol: f64,
) -> Result<SegmentResult> {
    if !(t_max > 1.0) || !t_max.is_finite() {
        return Err(Error::BadParameter(format!(
            "t_max must be finite and exceed 1, got {t_max}"
        )));
    }
    if !(bisect_tol > 0.0) || !bisect_tol.is_finite() {
        return Err(Error::BadParameter(format!(
            "bisect_tol must be positive, got {bisect_tol}"
        )));
    }

    let cert0 = decompose(rho0, basis, FACE_TOL)?;
    if cert0.verdict != Verdict::InFaceSeparable {
        return Err(Error::BadEndpoints(format!(
            "starting state is not in the face (verdict {})",
            cert0.verdict
        )));
    }
    if cert0.min_weight() < 0.01 - 1e-9 {
        return Err(Error::BadEndpoints(format!(
            "starting state is not interior: smallest weight {:.3e}",
            cert0.min_weight()
        )));
    }
    let cert1 = decompose(rho1, basis, FACE_TOL)?;
    if cert1.verdict != Verdict::InFaceSeparable {
        return Err(Error::BadEndpoints(format!(
            "target state is not in the face (verdict {})",
            cert1.verdict
        )));
    }

    let tol = Tolerances::default();
    let state_at = |t: f64| -> ComplexMatrix {
        &rho0.scale_re(1.0 - t) + &rho1.scale_re(t)
    };
    let ppt_at = |t: f64| -> Result<bool> { ppt_member(&state_at(t), &tol) };

    // Doubling phase: find the first failing t, or learn that the whole
    // admissible range is PPT.
    let mut lo = 1.0;
    let mut hi = None;
    let mut t = 2.0_f64.min(t_max);
    loop {
        if ppt_at(t)? {
            lo = t;
            if t >= t_max {
                break;
            }
            t = (t * 2.0).min(t_max);
        } else {
            hi = Some(t);
            break;
        }
    }

    let capped = hi.is_none();
    if let Some(mut hi) = hi {
        while hi - lo > bisect_tol {
            let mid = 0.5 * (lo + hi);
            if ppt_at(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let t_star = lo;

    let mut probe_points: Vec<f64> = (1..=4)
        .map(|k| 1.0 + k as f64 * (t_star - 1.0) / 4.0)
        .collect();
    probe_points.push((t_star - 2.0 * bisect_tol).max(1.0));
    if !capped {
        probe_points.push(t_star + 2.0 * bisect_tol);
    }

    let mut probes = Vec::with_capacity(probe_points.len());
    let mut witness_values = Vec::with_capacity(probe_points.len());
    for t in probe_points {
        let state = state_at(t);
        let certificate = decompose(&state, basis, FACE_TOL)?;
        witness_values.push(certificate.hyperplane_values);
        probes.push(SegmentProbe {
            t,
            ppt: ppt_at(t)?,
            certificate,
        });
    }

    Ok(SegmentResult {
        t_star,
        capped,
        probes,
        witness_values,
    })
}

/// Span data for the uniform mixture over one facet of the simplex.
#[derive(Clone, Debug)]
pub struct FacetReport {
    /// Basis indices making up the facet, as given.
    pub facet: Vec<usize>,
    /// Number of states in the facet.
    pub declared_length: usize,
    /// Rank of the uniform mixture over the facet.
    pub rank: usize,
    /// Ranks of its three partial transposes, in A, B, C order.
    pub pt_ranks: [usize; 3],
    /// Weights recovered by decomposing the mixture against the full
    /// basis.
    pub weights: Vec<f64>,
    pub verdict: Verdict,
}

/// Mixes the facet's states uniformly and reports the spans. Facet
/// entries must be distinct indices into the ten-state basis.
pub fn boundary_state_report(
    basis: &TenStateBasis,
    facet: &[usize],
    tol: &Tolerances,
) -> Result<FacetReport> {
    if facet.is_empty() {
        return Err(Error::EmptyFacet);
    }
    let mut seen = [false; 10];
    for &idx in facet {
        if idx >= basis.len() {
            return Err(Error::BadParameter(format!(
                "facet index {idx} is out of range for a basis of {}",
                basis.len()
            )));
        }
        if seen[idx] {
            return Err(Error::BadParameter(format!(
                "facet index {idx} appears twice"
            )));
        }
        seen[idx] = true;
    }

    let mut weights = vec![0.0; basis.len()];
    let share = 1.0 / facet.len() as f64;
    for &idx in facet {
        weights[idx] = share;
    }
    let mixture = basis.mix(&weights)?;

    let mut pt_ranks = [0usize; 3];
    for (slot, party) in pt_ranks.iter_mut().zip(Party::ALL) {
        *slot = rank(&partial_transpose(&mixture, party)?, tol);
    }
    let certificate = decompose(&mixture, basis, FACE_TOL)?;

    Ok(FacetReport {
        facet: facet.to_vec(),
        declared_length: facet.len(),
        rank: rank(&mixture, tol),
        pt_ranks,
        weights: certificate.weights,
        verdict: certificate.verdict,
    })
}
