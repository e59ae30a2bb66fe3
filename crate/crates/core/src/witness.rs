//! The one-parameter witness family and the functionals it induces.
//!
//! A bilinear map on pairs of 2x2 matrices, positive in the sense that it
//! sends pairs of positive matrices to positive matrices, gives rise to an
//! entanglement witness through its Choi matrix
//!
//! ```text
//! W = sum_{i1 j1 i2 j2} |i1><j1| (x) |i2><j2| (x) phi(|i1><j1|, |i2><j2|).
//! ```
//!
//! The map used throughout the crate carries a parameter `u > 0` through
//! the diagonal weights `s = sqrt(8) u` and `t = sqrt(8) / u`, chosen so
//! that `s t = 8`. Its Choi matrix `W` is X-shaped, and conjugating partial
//! transposes of `W` by local bit flips yields three companions `W_A`,
//! `W_B`, `W_C`. A state is paired with a witness via `<W, rho> =
//! tr(rho W^T)`; product vectors on which the pairing degenerates to zero
//! ("killed" vectors) span the faces studied in [`crate::faces`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Party, Tolerances, C_ONE};
use crate::xstate::XState;

/// Diagonal weights `(s, t)` of the bilinear map at parameter `u`.
///
/// Shared by [`BilinearMap::apply`] and [`make_witness`] so the Choi matrix
/// and the closed-form witness agree to the last bit.
fn diagonal_weights(u: f64) -> (f64, f64) {
    let s8 = 8.0f64.sqrt();
    (s8 * u, s8 / u)
}

fn check_u(u: f64) -> Result<()> {
    if !u.is_finite() || u <= 0.0 {
        return Err(Error::BadParameter(format!(
            "witness parameter u must be positive and finite, got {u}"
        )));
    }
    Ok(())
}

/// The positive bilinear map underlying the witness family.
#[derive(Clone, Copy, Debug)]
pub struct BilinearMap {
    u: f64,
}

impl BilinearMap {
    pub fn new(u: f64) -> Result<Self> {
        check_u(u)?;
        Ok(BilinearMap { u })
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    /// Applies the map to a pair of 2x2 matrices:
    ///
    /// ```text
    /// phi(x, y) = [ s x22 y11                    x12 y12 - x12 y21 + x21 y12 + x21 y21 ]
    ///             [ x12 y12 + x12 y21 - x21 y12 + x21 y21                    t x11 y22 ]
    /// ```
    pub fn apply(&self, x: &ComplexMatrix, y: &ComplexMatrix) -> Result<ComplexMatrix> {
        for m in [x, y] {
            if m.dim() != 2 {
                return Err(Error::BadDimension {
                    expected: 2,
                    got: m.dim(),
                });
            }
        }
        let (s, t) = diagonal_weights(self.u);
        let (x12, x21) = (x[(0, 1)], x[(1, 0)]);
        let (y12, y21) = (y[(0, 1)], y[(1, 0)]);
        let mut out = ComplexMatrix::zeros(2);
        out[(0, 0)] = x[(1, 1)] * y[(0, 0)] * s;
        out[(1, 1)] = x[(0, 0)] * y[(1, 1)] * t;
        out[(0, 1)] = x12 * y12 - x12 * y21 + x21 * y12 + x21 * y21;
        out[(1, 0)] = x12 * y12 + x12 * y21 - x21 * y12 + x21 * y21;
        Ok(out)
    }

    /// Choi matrix of the map on `C^2 (x) C^2 (x) C^2`.
    pub fn choi(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(crate::DIM);
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        let mut x = ComplexMatrix::zeros(2);
                        x[(i1, j1)] = C_ONE;
                        let mut y = ComplexMatrix::zeros(2);
                        y[(i2, j2)] = C_ONE;
                        let block = self.apply(&x, &y).expect("2x2 inputs by construction");
                        for a in 0..2 {
                            for b in 0..2 {
                                out[(4 * i1 + 2 * i2 + a, 4 * j1 + 2 * j2 + b)] += block[(a, b)];
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Which member of the witness family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WitnessLabel {
    W,
    WA,
    WB,
    WC,
}

impl WitnessLabel {
    pub const ALL: [WitnessLabel; 4] =
        [WitnessLabel::W, WitnessLabel::WA, WitnessLabel::WB, WitnessLabel::WC];

    /// The party whose partial transpose and bit flip produce this witness
    /// from the base one; `None` for the base witness itself.
    pub fn party(self) -> Option<Party> {
        match self {
            WitnessLabel::W => None,
            WitnessLabel::WA => Some(Party::A),
            WitnessLabel::WB => Some(Party::B),
            WitnessLabel::WC => Some(Party::C),
        }
    }
}

impl fmt::Display for WitnessLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessLabel::W => write!(f, "W"),
            WitnessLabel::WA => write!(f, "W_A"),
            WitnessLabel::WB => write!(f, "W_B"),
            WitnessLabel::WC => write!(f, "W_C"),
        }
    }
}

/// An entanglement witness of the family, kept in X-state form.
#[derive(Clone, Debug)]
pub struct Witness {
    pub label: WitnessLabel,
    pub u: f64,
    pub x: XState,
}

impl Witness {
    pub fn dense(&self) -> ComplexMatrix {
        self.x.to_dense()
    }

    /// Value of the kill functional `<conj(xi)| W |conj(xi)> / <xi|xi>`.
    ///
    /// Exploits the X shape; the result is real because the witness is
    /// Hermitian. Vectors on which it vanishes are exactly those whose
    /// induced product state sits on the witness hyperplane.
    pub fn kill_value(&self, xi: &[Complex64]) -> Result<f64> {
        if xi.len() != crate::DIM {
            return Err(Error::BadDimension {
                expected: crate::DIM,
                got: xi.len(),
            });
        }
        let norm: f64 = xi.iter().map(|z| z.norm_sqr()).sum();
        if norm < 1e-280 {
            return Err(Error::ZeroVector);
        }
        let x = &self.x;
        let mut val = 0.0;
        for k in 0..4 {
            val += x.a[k] * xi[k].norm_sqr();
            val += x.b[k] * xi[7 - k].norm_sqr();
            val += 2.0 * (x.c[k] * xi[k] * xi[7 - k].conj()).re;
        }
        Ok(val / norm)
    }
}

/// Builds a witness of the family in closed form:
///
/// ```text
/// W   = X((0,0,0,t), (0,0,0,s), (1,1,-1,1))
/// W_A = X((s,0,0,0), (t,0,0,0), (1,1,-1,1))
/// W_B = X((0,t,0,0), (0,s,0,0), (1,1,-1,1))
/// W_C = X((0,0,t,0), (0,0,s,0), (1,1,-1,1))
/// ```
///
/// with `s = sqrt(8) u`, `t = sqrt(8)/u`. The companions equal the base
/// witness partially transposed and conjugated by the matching bit flip.
pub fn make_witness(label: WitnessLabel, u: f64) -> Result<Witness> {
    check_u(u)?;
    let (s, t) = diagonal_weights(u);
    let c = [C_ONE, C_ONE, -C_ONE, C_ONE];
    let x = match label {
        WitnessLabel::W => XState::new([0.0, 0.0, 0.0, t], [0.0, 0.0, 0.0, s], c),
        WitnessLabel::WA => XState::new([s, 0.0, 0.0, 0.0], [t, 0.0, 0.0, 0.0], c),
        WitnessLabel::WB => XState::new([0.0, t, 0.0, 0.0], [0.0, s, 0.0, 0.0], c),
        WitnessLabel::WC => XState::new([0.0, 0.0, t, 0.0], [0.0, 0.0, s, 0.0], c),
    };
    Ok(Witness { label, u, x })
}

/// Pairing of a witness (or any Hermitian functional) with a state:
/// `tr(rho W^T)`, which reduces to the entrywise sum of products.
/// Fails when the result has a non-negligible imaginary part.
pub fn pairing_dense(w: &ComplexMatrix, rho: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    if w.dim() != rho.dim() {
        return Err(Error::BadDimension {
            expected: w.dim(),
            got: rho.dim(),
        });
    }
    let n = w.dim();
    let mut acc = Complex64::new(0.0, 0.0);
    for r in 0..n {
        for c in 0..n {
            acc += rho[(r, c)] * w[(r, c)];
        }
    }
    let scale = (w.max_abs_entry() * rho.max_abs_entry() * n as f64).max(1.0);
    if acc.im.abs() > tol.zero * scale {
        return Err(Error::NonRealPairing { imag: acc.im });
    }
    Ok(acc.re)
}

pub fn pairing(w: &Witness, rho: &ComplexMatrix, tol: &Tolerances) -> Result<f64> {
    pairing_dense(&w.dense(), rho, tol)
}

/// A choice of three witnesses out of the four, named by the companions
/// they include (`WAB` pairs the base witness with `W_A` and `W_B`, and
/// `ABC` takes the three companions).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Triple {
    WAB,
    WBC,
    WCA,
    ABC,
}

impl Triple {
    pub const ALL: [Triple; 4] = [Triple::WAB, Triple::WBC, Triple::WCA, Triple::ABC];

    pub fn labels(self) -> [WitnessLabel; 3] {
        match self {
            Triple::WAB => [WitnessLabel::W, WitnessLabel::WA, WitnessLabel::WB],
            Triple::WBC => [WitnessLabel::W, WitnessLabel::WB, WitnessLabel::WC],
            Triple::WCA => [WitnessLabel::W, WitnessLabel::WC, WitnessLabel::WA],
            Triple::ABC => [WitnessLabel::WA, WitnessLabel::WB, WitnessLabel::WC],
        }
    }

    pub fn witnesses(self, u: f64) -> Result<[Witness; 3]> {
        let [l0, l1, l2] = self.labels();
        Ok([
            make_witness(l0, u)?,
            make_witness(l1, u)?,
            make_witness(l2, u)?,
        ])
    }

    /// Sum of the three witnesses; its pairing hyperplane carries the face
    /// of separable states associated with the triple.
    pub fn witness_sum(self, u: f64) -> Result<XState> {
        let [w0, w1, w2] = self.witnesses(u)?;
        Ok(w0.x.add(&w1.x).add(&w2.x))
    }

    /// Basis indices of the two computational kets killed by all three
    /// witnesses of the triple.
    pub fn classical_indices(self) -> [usize; 2] {
        match self {
            Triple::WAB => [2, 5], // |010>, |101>
            Triple::WBC => [0, 7], // |000>, |111>
            Triple::WCA => [1, 6], // |001>, |110>
            Triple::ABC => [3, 4], // |011>, |100>
        }
    }

    /// The unique parameter point `(p, q, r)` on which the remaining eight
    /// members of the kill set live.
    pub fn designated_point(self, u: f64) -> [f64; 3] {
        match self {
            Triple::WAB => [1.0, 1.0, 1.0 / u],
            Triple::WBC => [u, 1.0, 1.0],
            Triple::WCA => [1.0, 1.0 / u, 1.0],
            Triple::ABC => [u, 1.0 / u, 1.0 / u],
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Triple::WAB => write!(f, "WAB"),
            Triple::WBC => write!(f, "WBC"),
            Triple::WCA => write!(f, "WCA"),
            Triple::ABC => write!(f, "ABC"),
        }
    }
}

impl FromStr for Triple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Triple> {
        match s.to_ascii_uppercase().as_str() {
            "WAB" => Ok(Triple::WAB),
            "WBC" => Ok(Triple::WBC),
            "WCA" => Ok(Triple::WCA),
            "ABC" => Ok(Triple::ABC),
            other => Err(Error::BadParameter(format!(
                "unknown witness triple {other:?}, expected WAB, WBC, WCA or ABC"
            ))),
        }
    }
}
