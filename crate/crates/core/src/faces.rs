//! The ten-state face: simplex structure, unique decomposition, and the
//! spanning analysis of its subsets.
//!
//! For each witness triple the ten kill vectors induce ten pure product
//! states whose convex hull is affinely isomorphic to the 9-simplex. Every
//! separable state on the triple's hyperplane lies in that simplex, so
//! solving one 10×10 linear system decides face membership and recovers
//! the unique convex decomposition. A state on the hyperplane that fails
//! membership is certified entangled outright: no separable decomposition
//! can exist for it.
//!
//! The module also carries the closed-form averages ϱ_𝐩 over the eight η
//! states, the 8×8 coefficient matrix pairing the η family against the
//! dual ζ family, and rank reports for nine- and eight-element subsets of
//! the basis. The coefficient matrix is built from the unnormalized
//! displayed vectors, so its entries are Gaussian integers times 2√2.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{
    rank_of_columns, rank_of_real_rows, solve_real, Complex64, ComplexMatrix, Party, Tolerances,
};
use crate::products::{eta, lambda_table, omega, triple_kill_set, zeta_table, ProductVector, TripleP};
use crate::witness::{pairing, Triple};
use crate::xstate::XState;

/// Threshold for face membership: residual and weight slack in
/// [`decompose`], and the hyperplane window for the entanglement verdict.
pub const FACE_TOL: f64 = 1e-8;

fn check_u(u: f64) -> Result<()> {
    if !u.is_finite() || u <= 0.0 {
        return Err(Error::BadParameter(format!(
            "parameter u must be positive and finite, got {u}"
        )));
    }
    Ok(())
}

/// The X-state average (1/8)Σ_j |η_j(𝐩)⟩⟨η_j(𝐩)| in closed form:
///
/// ```text
/// ϱ_𝐩 = X((p²/u, q²u, r²u, u), (u/p², 1/(q²u), 1/(r²u), 1/u), (−1,−1,+1,−1)/√2)
/// ```
///
/// The identity with the average holds on the surface S; off it the
/// formula is still returned but describes no η average.
pub fn rho_p(point: &TripleP, u: f64) -> Result<XState> {
    check_u(u)?;
    let [p, q, r] = point.as_array();
    let a = [p * p / u, q * q * u, r * r * u, u];
    let b = [u / (p * p), 1.0 / (q * q * u), 1.0 / (r * r * u), 1.0 / u];
    let f = FRAC_1_SQRT_2;
    let c = [
        Complex64::new(-f, 0.0),
        Complex64::new(-f, 0.0),
        Complex64::new(f, 0.0),
        Complex64::new(-f, 0.0),
    ];
    Ok(XState::new(a, b, c))
}

/// The two half-averages over η_1..η_4 and η_5..η_8. Both share the
/// diagonal of ϱ_𝐩; their anti-diagonals are the unimodular phase rows
/// (ω⁵, ω³, ω⁷, ω⁵) and (ω³, ω⁵, ω, ω³), and their mean is ϱ_𝐩.
pub fn rho_sub_averages(point: &TripleP, u: f64) -> Result<(XState, XState)> {
    let full = rho_p(point, u)?;
    let first = XState::new(full.a, full.b, [omega(5), omega(3), omega(7), omega(5)]);
    let second = XState::new(full.a, full.b, [omega(3), omega(5), omega(1), omega(3)]);
    Ok((first, second))
}

/// The ten pure product states of a triple's kill set, with their Gram
/// matrix of Hilbert–Schmidt inner products.
#[derive(Clone, Debug)]
pub struct TenStateBasis {
    triple: Triple,
    u: f64,
    vectors: Vec<ProductVector>,
    states: Vec<ComplexMatrix>,
    gram: Vec<Vec<f64>>,
}

impl TenStateBasis {
    pub fn new(triple: Triple, u: f64) -> Result<Self> {
        check_u(u)?;
        Self::from_vectors(triple, u, triple_kill_set(triple, u)?)
    }

    /// Builds the basis from explicitly given vectors. Exists so tests can
    /// probe degenerate inputs; [`TenStateBasis::new`] is the front door.
    pub fn from_vectors(triple: Triple, u: f64, vectors: Vec<ProductVector>) -> Result<Self> {
        if vectors.len() != 10 {
            return Err(Error::BadParameter(format!(
                "a ten-state basis needs 10 vectors, got {}",
                vectors.len()
            )));
        }
        let states: Vec<ComplexMatrix> = vectors
            .iter()
            .map(|v| ComplexMatrix::projector(&v.tensor()).scale_re(1.0 / v.norm_sqr()))
            .collect();
        let gram: Vec<Vec<f64>> = states
            .iter()
            .map(|sk| states.iter().map(|sl| sk.hs_inner(sl).re).collect())
            .collect();
        Ok(TenStateBasis { triple, u, vectors, states, gram })
    }

    pub fn triple(&self) -> Triple {
        self.triple
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn vectors(&self) -> &[ProductVector] {
        &self.vectors
    }

    /// The normalized rank-one projectors, in kill-set order: the two
    /// computational kets first, then the eight η states.
    pub fn states(&self) -> &[ComplexMatrix] {
        &self.states
    }

    pub fn gram(&self) -> &[Vec<f64>] {
        &self.gram
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// The mixture Σ w_k ϱ_k of the basis states.
    pub fn mix(&self, weights: &[f64]) -> Result<ComplexMatrix> {
        if weights.len() != self.states.len() {
            return Err(Error::BadParameter(format!(
                "expected {} weights, got {}",
                self.states.len(),
                weights.len()
            )));
        }
        let mut out = ComplexMatrix::zeros(crate::DIM);
        for (w, state) in weights.iter().zip(&self.states) {
            out = &out + &state.scale_re(*w);
        }
        Ok(out)
    }
}

/// Rank of the ten states as real vectors (entries of the Hermitian
/// upper triangle, real parts then imaginary parts), paired with the rank
/// of their Gram matrix. Both equal 10 exactly when the states are
/// affinely a 9-simplex.
pub fn simplex_ranks(basis: &TenStateBasis, tol: &Tolerances) -> (usize, usize) {
    let rows: Vec<Vec<f64>> = basis
        .states()
        .iter()
        .map(|s| {
            let mut row = Vec::with_capacity(64);
            for r in 0..crate::DIM {
                for c in r..crate::DIM {
                    row.push(s[(r, c)].re);
                }
            }
            for r in 0..crate::DIM {
                for c in (r + 1)..crate::DIM {
                    row.push(s[(r, c)].im);
                }
            }
            row
        })
        .collect();
    (
        rank_of_real_rows(&rows, tol),
        rank_of_real_rows(basis.gram(), tol),
    )
}

/// True when the ten states are linearly independent as Hermitian
/// matrices: their real vectorizations have rank 10, equivalently the Gram
/// matrix is nonsingular. The two tests are computed independently and
/// both must agree on independence.
pub fn simplex_check(basis: &TenStateBasis, tol: &Tolerances) -> bool {
    simplex_ranks(basis, tol) == (10, 10)
}

/// The plain average (1/8)Σ_j |η_j(𝐩)⟩⟨η_j(𝐩)| computed state by state.
/// On the surface S this equals [`rho_p`]; elsewhere it is the honest
/// average and the closed form does not apply.
pub fn eta_average(point: &TripleP) -> ComplexMatrix {
    let mut acc = ComplexMatrix::zeros(crate::DIM);
    for lam in &lambda_table() {
        let t = eta(point, lam).tensor();
        acc = &acc + &ComplexMatrix::projector(&t);
    }
    acc.scale_re(1.0 / 8.0)
}

/// Outcome of projecting a state onto the ten-state simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// The state is a convex mixture of the ten basis states.
    InFaceSeparable,
    /// The state sits on the triple's hyperplane but outside the simplex;
    /// since all separable hyperplane states lie inside, it is entangled.
    CertifiedEntangled,
    /// The state pairs nonzero with some witness of the triple; the
    /// simplex says nothing about it.
    OffHyperplane,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::InFaceSeparable => write!(f, "in_face_separable"),
            Verdict::CertifiedEntangled => write!(f, "certified_entangled"),
            Verdict::OffHyperplane => write!(f, "off_hyperplane"),
        }
    }
}

/// The solved weights and diagnostics behind a [`Verdict`].
#[derive(Clone, Debug)]
pub struct DecompositionCertificate {
    pub weights: Vec<f64>,
    pub residual: f64,
    pub hyperplane_values: [f64; 3],
    pub verdict: Verdict,
}

impl DecompositionCertificate {
    pub fn min_weight(&self) -> f64 {
        self.weights.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Projects a Hermitian matrix onto the span of the basis states by
/// solving the Gram normal equations, and classifies the result.
///
/// The weights solve gram·w = v with v_k = tr(ϱ_k ρ), which is the unique
/// representation when ρ lies in the span. The verdict uses `face_tol` for
/// the residual, the weight floor, and the hyperplane window; callers
/// without special needs pass [`FACE_TOL`].
pub fn decompose(
    rho: &ComplexMatrix,
    basis: &TenStateBasis,
    face_tol: f64,
) -> Result<DecompositionCertificate> {
    if rho.dim() != crate::DIM {
        return Err(Error::BadDimension {
            expected: crate::DIM,
            got: rho.dim(),
        });
    }
    let v: Vec<f64> = basis.states().iter().map(|s| s.hs_inner(rho).re).collect();
    let weights = solve_real(basis.gram(), &v).ok_or(Error::SingularGram)?;
    let residual = (rho - &basis.mix(&weights)?).frobenius_norm();

    let tol = Tolerances::default();
    let mut hyperplane_values = [0.0; 3];
    for (slot, w) in hyperplane_values
        .iter_mut()
        .zip(basis.triple().witnesses(basis.u())?)
    {
        *slot = pairing(&w, rho, &tol)?;
    }

    let min_w = weights.iter().copied().fold(f64::INFINITY, f64::min);
    let on_hyperplane = hyperplane_values.iter().all(|h| h.abs() <= face_tol);
    let verdict = if residual <= face_tol && min_w >= -face_tol {
        Verdict::InFaceSeparable
    } else if on_hyperplane {
        Verdict::CertifiedEntangled
    } else {
        Verdict::OffHyperplane
    };
    Ok(DecompositionCertificate {
        weights,
        residual,
        hyperplane_values,
        verdict,
    })
}

/// The coefficient matrix L = [⟨ζ_i|η_j⟩] of the displayed η family with
/// respect to the ζ family, both unnormalized, at the designated point
/// (1, 1, 1/u).
pub fn coefficient_matrix(u: f64) -> Result<ComplexMatrix> {
    coefficient_matrix_conjugated(u, None)
}

/// The same matrix after partially conjugating both families in one slot.
pub fn coefficient_matrix_conjugated(u: f64, party: Option<Party>) -> Result<ComplexMatrix> {
    check_u(u)?;
    let point = TripleP::new(1.0, 1.0, 1.0 / u)?;
    let conj_if = |v: ProductVector| match party {
        Some(p) => v.partial_conjugate(p),
        None => v,
    };
    let zetas: Vec<[Complex64; 8]> = zeta_table(u)?
        .into_iter()
        .map(|z| conj_if(z).tensor_unscaled())
        .collect();
    let etas: Vec<[Complex64; 8]> = lambda_table()
        .iter()
        .map(|lam| conj_if(eta(&point, lam)).tensor_unscaled())
        .collect();
    Ok(ComplexMatrix::from_fn(8, |i, j| {
        zetas[i]
            .iter()
            .zip(&etas[j])
            .map(|(z, e)| z.conj() * e)
            .sum()
    }))
}

/// The closed form of the coefficient matrix: zero diagonal blocks and
/// off-diagonal blocks K, conj(K) with K = 2√2·ω³·(+1 on the diagonal,
/// −1 elsewhere). Independent of u.
pub fn expected_coefficient_matrix() -> ComplexMatrix {
    let k = omega(3).scale(2.0 * 2.0f64.sqrt());
    block_pattern(k, &[[1, -1, -1, -1], [-1, 1, -1, -1], [-1, -1, 1, -1], [-1, -1, -1, 1]])
}

/// The closed forms of the three conjugated variants: scale 2√2·ω^{-3}
/// with the sign pattern of the conjugating party.
pub fn expected_conjugated_matrix(party: Party) -> ComplexMatrix {
    let k = omega(-3).scale(2.0 * 2.0f64.sqrt());
    let pattern: [[i32; 4]; 4] = match party {
        Party::A => [[-1, 1, -1, -1], [1, -1, -1, -1], [-1, -1, -1, 1], [-1, -1, 1, -1]],
        Party::B => [[-1, -1, 1, -1], [-1, -1, -1, 1], [1, -1, -1, -1], [-1, 1, -1, -1]],
        Party::C => [[-1, -1, -1, 1], [-1, -1, 1, -1], [-1, 1, -1, -1], [1, -1, -1, -1]],
    };
    block_pattern(k, &pattern)
}

fn block_pattern(k: Complex64, signs: &[[i32; 4]; 4]) -> ComplexMatrix {
    ComplexMatrix::from_fn(8, |i, j| {
        let (bi, bj) = (i / 4, j / 4);
        if bi == bj {
            Complex64::new(0.0, 0.0)
        } else {
            let entry = k * signs[i % 4][j % 4] as f64;
            if bi == 1 {
                entry.conj()
            } else {
                entry
            }
        }
    })
}

/// Rank bookkeeping for subsets of the ten kill vectors.
///
/// Nine-element subsets are checked under every partial conjugation; the
/// eight-element records follow the column-replacement analysis: dropping
/// two η's from the same conjugation half in favor of the classical kets
/// collapses the span, while dropping one from each half does not.
#[derive(Clone, Debug)]
pub struct SubsetSpanReport {
    /// (conjugation, dropped basis index, rank of the remaining nine).
    pub nine_ranks: Vec<(Option<Party>, usize, usize)>,
    /// (two dropped η basis indices from the same half, rank of the eight).
    pub degenerate_ranks: Vec<([usize; 2], usize)>,
    /// (dropped η basis indices from opposite halves, rank of the eight).
    pub mixed_ranks: Vec<([usize; 2], usize)>,
}

impl SubsetSpanReport {
    pub fn all_nine_span(&self) -> bool {
        self.nine_ranks.iter().all(|&(_, _, r)| r == crate::DIM)
    }

    pub fn degenerate_all_deficient(&self) -> bool {
        self.degenerate_ranks.iter().all(|&(_, r)| r < crate::DIM)
    }

    pub fn mixed_all_span(&self) -> bool {
        self.mixed_ranks.iter().all(|&(_, r)| r == crate::DIM)
    }
}

pub fn subset_span_report(basis: &TenStateBasis, tol: &Tolerances) -> SubsetSpanReport {
    let conjugations = [None, Some(Party::A), Some(Party::B), Some(Party::C)];
    let tensors = |conj: Option<Party>| -> Vec<Vec<Complex64>> {
        basis
            .vectors()
            .iter()
            .map(|v| match conj {
                Some(p) => v.partial_conjugate(p).tensor().to_vec(),
                None => v.tensor().to_vec(),
            })
            .collect()
    };

    let mut nine_ranks = Vec::with_capacity(40);
    for conj in conjugations {
        let cols = tensors(conj);
        for dropped in 0..10 {
            let subset: Vec<Vec<Complex64>> = cols
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != dropped)
                .map(|(_, c)| c.clone())
                .collect();
            nine_ranks.push((conj, dropped, rank_of_columns(&subset, tol)));
        }
    }

    let cols = tensors(None);
    let eight_rank = |removed: [usize; 2]| {
        let subset: Vec<Vec<Complex64>> = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, c)| c.clone())
            .collect();
        rank_of_columns(&subset, tol)
    };

    let mut degenerate_ranks = Vec::with_capacity(12);
    for half in [2usize, 6] {
        for i in half..(half + 4) {
            for j in (i + 1)..(half + 4) {
                degenerate_ranks.push(([i, j], eight_rank([i, j])));
            }
        }
    }

    let mut mixed_ranks = Vec::with_capacity(16);
    for i in 2..6 {
        for j in 6..10 {
            mixed_ranks.push(([i, j], eight_rank([i, j])));
        }
    }

    SubsetSpanReport { nine_ranks, degenerate_ranks, mixed_ranks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{hermitian_eigenvalues, is_psd, partial_transpose, rank};
    use crate::sampling;
    use crate::witness::pairing_dense;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn designated_basis(triple: Triple, u: f64) -> TenStateBasis {
        TenStateBasis::new(triple, u).unwrap()
    }

    fn average_of_etas(point: &TripleP, range: std::ops::Range<usize>) -> ComplexMatrix {
        let lams = lambda_table();
        let mut acc = ComplexMatrix::zeros(8);
        for lam in &lams[range.clone()] {
            let t = eta(point, lam).tensor();
            acc = &acc + &ComplexMatrix::projector(&t);
        }
        acc.scale_re(1.0 / range.len() as f64)
    }

    #[test]
    fn rho_p_at_designated_points() {
        let u = 2.0;
        let wab = rho_p(&TripleP::new(1.0, 1.0, 1.0 / u).unwrap(), u).unwrap();
        assert_eq!(wab.a, [0.5, 2.0, 0.5, 2.0]);
        assert_eq!(wab.b, [2.0, 0.5, 2.0, 0.5]);
        let f = FRAC_1_SQRT_2;
        assert_eq!(wab.c[2], Complex64::new(f, 0.0));

        let wbc = rho_p(&TripleP::new(u, 1.0, 1.0).unwrap(), u).unwrap();
        assert_eq!(wbc.a, [2.0, 2.0, 2.0, 2.0]);
        assert_eq!(wbc.b, [0.5, 0.5, 0.5, 0.5]);

        assert!(rho_p(&TripleP::new(1.0, 1.0, 1.0).unwrap(), f64::NAN).is_err());
    }

    #[test]
    fn rho_p_equals_the_eta_average_on_the_surface() {
        let mut rng = sampling::rng(21);
        for &u in &[0.5, 1.0, 2.0] {
            for _ in 0..10 {
                let point =
                    sampling::surface_point(&mut rng, crate::products::SurfaceKind::S, u).unwrap();
                let formula = rho_p(&point, u).unwrap().to_dense();
                let average = average_of_etas(&point, 0..8);
                let scale = formula.max_abs_entry();
                assert!(formula.max_abs_diff(&average) <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn rho_p_and_partial_transposes_have_full_rank() {
        let u = 1.6;
        let point = TripleP::new(1.0, 1.0, 1.0 / u).unwrap();
        let dense = rho_p(&point, u).unwrap().to_dense();
        assert_eq!(rank(&dense, &tol()), 8);
        for party in Party::ALL {
            let pt = partial_transpose(&dense, party).unwrap();
            assert_eq!(rank(&pt, &tol()), 8);
            assert!(is_psd(&pt, &tol()).unwrap());
        }
    }

    #[test]
    fn sub_averages_match_and_have_rank_four() {
        let u = 2.0;
        let point = TripleP::new(1.0, 1.0, 1.0 / u).unwrap();
        let (first, second) = rho_sub_averages(&point, u).unwrap();
        assert_eq!(first.c, [omega(5), omega(3), omega(7), omega(5)]);
        assert_eq!(second.c, [omega(3), omega(5), omega(1), omega(3)]);

        let scale = first.to_dense().max_abs_entry();
        assert!(
            first.to_dense().max_abs_diff(&average_of_etas(&point, 0..4)) <= 1e-12 * scale
        );
        assert!(
            second.to_dense().max_abs_diff(&average_of_etas(&point, 4..8)) <= 1e-12 * scale
        );
        assert_eq!(first.rank(&tol()), 4);
        assert_eq!(second.rank(&tol()), 4);

        // the mean of the halves is the full average, entry for entry
        let mean = first.add(&second).scale(0.5).to_dense();
        let full = rho_p(&point, u).unwrap().to_dense();
        assert!(mean.max_abs_diff(&full) <= 1e-15 * scale);
    }

    #[test]
    fn basis_states_are_unit_trace_rank_one() {
        let basis = designated_basis(Triple::WBC, 1.3);
        assert_eq!(basis.len(), 10);
        for state in basis.states() {
            assert!((state.trace().re - 1.0).abs() < 1e-12);
            assert!(is_psd(state, &tol()).unwrap());
            assert_eq!(rank(state, &tol()), 1);
        }
        // gram is symmetric positive definite
        let g = ComplexMatrix::from_fn(10, |r, c| Complex64::new(basis.gram()[r][c], 0.0));
        let eigs = hermitian_eigenvalues(&g, &tol()).unwrap();
        assert!(eigs[0] > 1e-6);
        for r in 0..10 {
            for c in 0..10 {
                assert!((basis.gram()[r][c] - basis.gram()[c][r]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn simplex_check_across_triples_and_u() {
        for triple in Triple::ALL {
            for &u in &[0.25, 0.5, 1.0, 2.0, 4.0] {
                assert!(
                    simplex_check(&designated_basis(triple, u), &tol()),
                    "{triple} at u={u}"
                );
            }
        }
    }

    #[test]
    fn simplex_check_rejects_duplicates() {
        let mut vectors = triple_kill_set(Triple::WAB, 1.0).unwrap();
        vectors[3] = vectors[2].clone();
        let broken = TenStateBasis::from_vectors(Triple::WAB, 1.0, vectors).unwrap();
        assert!(!simplex_check(&broken, &tol()));
    }

    #[test]
    fn decompose_recovers_random_mixtures() {
        let mut rng = sampling::rng(31);
        for triple in Triple::ALL {
            let basis = designated_basis(triple, 1.7);
            for _ in 0..10 {
                let weights = sampling::interior_weights(&mut rng, 10, 0.01);
                let rho = basis.mix(&weights).unwrap();
                let cert = decompose(&rho, &basis, FACE_TOL).unwrap();
                assert_eq!(cert.verdict, Verdict::InFaceSeparable);
                assert!(cert.residual <= 1e-10);
                let worst = cert
                    .weights
                    .iter()
                    .zip(&weights)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(worst <= 1e-10, "weight error {worst}");
                let total: f64 = cert.weights.iter().sum();
                assert!((total - 1.0).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn decompose_splits_the_designated_average_evenly() {
        let u = 2.0;
        let basis = designated_basis(Triple::WAB, u);
        let point = TripleP::new(1.0, 1.0, 1.0 / u).unwrap();
        let dense = rho_p(&point, u).unwrap().to_dense();
        let normalized = dense.scale_re(1.0 / dense.trace().re);
        let cert = decompose(&normalized, &basis, FACE_TOL).unwrap();
        assert_eq!(cert.verdict, Verdict::InFaceSeparable);
        assert!(cert.weights[0].abs() < 1e-12);
        assert!(cert.weights[1].abs() < 1e-12);
        for w in &cert.weights[2..] {
            assert!((w - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn decompose_flags_points_past_a_facet() {
        let basis = designated_basis(Triple::WAB, 1.0);
        let uniform = vec![0.1; 10];
        let mut face_weights = vec![1.0 / 9.0; 10];
        face_weights[0] = 0.0;
        let t = 1.05;
        let blended: Vec<f64> = uniform
            .iter()
            .zip(&face_weights)
            .map(|(w0, w1)| (1.0 - t) * w0 + t * w1)
            .collect();
        let rho = basis.mix(&blended).unwrap();
        let cert = decompose(&rho, &basis, FACE_TOL).unwrap();
        assert_eq!(cert.verdict, Verdict::CertifiedEntangled);
        let negatives = cert.weights.iter().filter(|w| **w < -FACE_TOL).count();
        assert_eq!(negatives, 1);
        assert!(cert.residual <= 1e-10);
        for h in cert.hyperplane_values {
            assert!(h.abs() <= 1e-10);
        }
    }

    #[test]
    fn decompose_reports_off_hyperplane_inputs() {
        let basis = designated_basis(Triple::WAB, 1.0);
        let mixed = ComplexMatrix::identity(8).scale_re(1.0 / 8.0);
        let cert = decompose(&mixed, &basis, FACE_TOL).unwrap();
        assert_eq!(cert.verdict, Verdict::OffHyperplane);
    }

    #[test]
    fn decompose_rejects_degenerate_bases() {
        let mut vectors = triple_kill_set(Triple::WAB, 1.0).unwrap();
        vectors[5] = vectors[4].clone();
        let broken = TenStateBasis::from_vectors(Triple::WAB, 1.0, vectors).unwrap();
        let rho = ComplexMatrix::identity(8).scale_re(1.0 / 8.0);
        assert!(matches!(
            decompose(&rho, &broken, FACE_TOL),
            Err(Error::SingularGram)
        ));
    }

    #[test]
    fn hyperplane_vanishes_on_every_basis_state() {
        let u = 1.5;
        for triple in Triple::ALL {
            let basis = designated_basis(triple, u);
            let sum = triple.witness_sum(u).unwrap().to_dense();
            for state in basis.states() {
                let val = pairing_dense(&sum, state, &tol()).unwrap();
                assert!(val.abs() <= 1e-12, "{triple}: {val}");
            }
        }
    }

    #[test]
    fn coefficient_matrix_matches_the_block_form() {
        for &u in &[0.5, 1.0, 3.0] {
            let l = coefficient_matrix(u).unwrap();
            let expected = expected_coefficient_matrix();
            assert!(
                l.max_abs_diff(&expected) <= 1e-12,
                "u={u}: {}",
                l.max_abs_diff(&expected)
            );
            assert_eq!(rank(&l, &tol()), 8);
        }
        // spot values: the (1,5) entry is 2√2ω³, the diagonal blocks vanish
        let l = coefficient_matrix(2.0).unwrap();
        assert!((l[(0, 4)] - Complex64::new(-2.0, 2.0)).norm() < 1e-12);
        assert!(l[(0, 0)].norm() < 1e-14);
    }

    #[test]
    fn conjugated_coefficient_matrices_match_their_patterns() {
        for party in Party::ALL {
            let got = coefficient_matrix_conjugated(1.5, Some(party)).unwrap();
            let expected = expected_conjugated_matrix(party);
            assert!(
                got.max_abs_diff(&expected) <= 1e-12,
                "party {party}: {}",
                got.max_abs_diff(&expected)
            );
            assert_eq!(rank(&got, &tol()), 8);
        }
    }

    #[test]
    fn classical_replacement_columns_match_the_display() {
        let u = 2.0;
        let zetas = zeta_table(u).unwrap();
        let column = |ket: usize| -> Vec<Complex64> {
            zetas
                .iter()
                .map(|z| z.tensor_unscaled()[ket].conj())
                .collect()
        };
        let col010 = column(2);
        let col101 = column(5);
        let want010: Vec<Complex64> = [3, 7, 3, 7, 5, 1, 5, 1]
            .iter()
            .map(|&k| omega(k).scale(u))
            .collect();
        let want101: Vec<Complex64> =
            [6, 2, 6, 2, 2, 6, 2, 6].iter().map(|&k| omega(k)).collect();
        for i in 0..8 {
            assert!((col010[i] - want010[i]).norm() < 1e-12);
            assert!((col101[i] - want101[i]).norm() < 1e-12);
        }
        // the lower halves of the two columns are parallel, which is what
        // collapses the degenerate eight-element subsets
        let ratio = col010[4] / col101[4];
        for i in 5..8 {
            assert!((col010[i] / col101[i] - ratio).norm() < 1e-12);
        }
    }

    #[test]
    fn subset_spans_follow_the_replacement_analysis() {
        for triple in [Triple::WAB, Triple::ABC] {
            let basis = designated_basis(triple, 2.0);
            let report = subset_span_report(&basis, &tol());
            assert_eq!(report.nine_ranks.len(), 40);
            assert!(report.all_nine_span(), "{triple}");
            assert_eq!(report.degenerate_ranks.len(), 12);
            assert!(report.degenerate_all_deficient(), "{triple}");
            assert_eq!(report.mixed_ranks.len(), 16);
            assert!(report.mixed_all_span(), "{triple}");
            for &(_, r) in &report.degenerate_ranks {
                assert_eq!(r, 7, "{triple}: degenerate subsets drop exactly one rank");
            }
        }
    }
}
