//! X-shaped three-qubit operators in closed coefficient form.
//!
//! An X-shaped operator is supported on the main diagonal and the main
//! anti-diagonal of the 8x8 matrix. In the basis `|000>, ..., |111>` it is
//! determined by real diagonals `a = (a1..a4)`, `b = (b1..b4)` and complex
//! anti-diagonal entries `c = (c1..c4)`:
//!
//! ```text
//! diag  = (a1, a2, a3, a4, b4, b3, b2, b1)
//! entry (k, 7-k) = c_{k+1}         for k = 0..3
//! entry (7-k, k) = conj(c_{k+1})   for k = 0..3
//! ```
//!
//! The family is closed under partial transposes and under conjugation by
//! local bit flips, and positivity reduces to the four 2x2 blocks that pair
//! `a_i` with `b_i` across the anti-diagonal. Those closed forms are
//! implemented here and cross-checked against the dense operations.

use crate::error::{Error, Result};
use crate::linalg::{Complex64, ComplexMatrix, Party, Tolerances, C_ZERO};

#[derive(Clone, Debug, PartialEq)]
pub struct XState {
    /// Diagonal entries at positions 0..3.
    pub a: [f64; 4],
    /// Diagonal entries at positions 7..4, i.e. `b[0]` sits at (7,7).
    pub b: [f64; 4],
    /// Upper anti-diagonal entries, `c[k]` at position (k, 7-k).
    pub c: [Complex64; 4],
}

impl XState {
    pub fn new(a: [f64; 4], b: [f64; 4], c: [Complex64; 4]) -> Self {
        XState { a, b, c }
    }

    /// X-state with the given diagonals and zero anti-diagonal.
    pub fn diagonal(a: [f64; 4], b: [f64; 4]) -> Self {
        XState::new(a, b, [C_ZERO; 4])
    }

    pub fn zero() -> Self {
        XState::diagonal([0.0; 4], [0.0; 4])
    }

    pub fn trace(&self) -> f64 {
        self.a.iter().sum::<f64>() + self.b.iter().sum::<f64>()
    }

    pub fn add(&self, other: &XState) -> XState {
        let mut out = self.clone();
        for k in 0..4 {
            out.a[k] += other.a[k];
            out.b[k] += other.b[k];
            out.c[k] += other.c[k];
        }
        out
    }

    pub fn scale(&self, s: f64) -> XState {
        let mut out = self.clone();
        for k in 0..4 {
            out.a[k] *= s;
            out.b[k] *= s;
            out.c[k] *= s;
        }
        out
    }

    pub fn max_abs_coeff(&self) -> f64 {
        let mut m = 0.0f64;
        for k in 0..4 {
            m = m.max(self.a[k].abs()).max(self.b[k].abs()).max(self.c[k].norm());
        }
        m
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(crate::DIM);
        for k in 0..4 {
            m[(k, k)] = Complex64::new(self.a[k], 0.0);
            m[(7 - k, 7 - k)] = Complex64::new(self.b[k], 0.0);
            m[(k, 7 - k)] = self.c[k];
            m[(7 - k, k)] = self.c[k].conj();
        }
        m
    }

    /// Strict inverse of [`XState::to_dense`]. Rejects non-Hermitian input
    /// and any entry off the diagonal and anti-diagonal; nothing is zeroed
    /// silently.
    pub fn from_dense(m: &ComplexMatrix, tol: &Tolerances) -> Result<XState> {
        if m.dim() != crate::DIM {
            return Err(Error::BadDimension {
                expected: crate::DIM,
                got: m.dim(),
            });
        }
        let dev = m.hermitian_deviation();
        let scale = m.max_abs_entry().max(1.0);
        if dev > tol.sym * scale {
            return Err(Error::NotHermitian { deviation: dev });
        }
        for r in 0..crate::DIM {
            for c in 0..crate::DIM {
                if r == c || r + c == 7 {
                    continue;
                }
                let mag = m[(r, c)].norm();
                if mag > tol.zero * scale {
                    return Err(Error::NotXShaped {
                        row: r,
                        col: c,
                        magnitude: mag,
                    });
                }
            }
        }
        let mut a = [0.0; 4];
        let mut b = [0.0; 4];
        let mut c = [C_ZERO; 4];
        for k in 0..4 {
            a[k] = m[(k, k)].re;
            b[k] = m[(7 - k, 7 - k)].re;
            c[k] = m[(k, 7 - k)];
        }
        Ok(XState { a, b, c })
    }

    /// Partial transpose in coefficient form. The diagonals are fixed; the
    /// anti-diagonal is permuted and conjugated depending on the party:
    ///
    /// ```text
    /// A: c -> (conj c4, conj c3, conj c2, conj c1)
    /// B: c -> (c3, c4, c1, c2)
    /// C: c -> (c2, c1, c4, c3)
    /// ```
    pub fn partial_transpose(&self, party: Party) -> XState {
        let c = &self.c;
        let c_new = match party {
            Party::A => [c[3].conj(), c[2].conj(), c[1].conj(), c[0].conj()],
            Party::B => [c[2], c[3], c[0], c[1]],
            Party::C => [c[1], c[0], c[3], c[2]],
        };
        XState::new(self.a, self.b, c_new)
    }

    /// Conjugation by the bit flip on one party, `sigma_P X sigma_P`.
    pub fn bitflip_conjugate(&self, party: Party) -> XState {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        match party {
            Party::A => XState::new(
                [b[3], b[2], b[1], b[0]],
                [a[3], a[2], a[1], a[0]],
                [c[3].conj(), c[2].conj(), c[1].conj(), c[0].conj()],
            ),
            Party::B => XState::new(
                [a[2], a[3], a[0], a[1]],
                [b[2], b[3], b[0], b[1]],
                [c[2], c[3], c[0], c[1]],
            ),
            Party::C => XState::new(
                [a[1], a[0], a[3], a[2]],
                [b[1], b[0], b[3], b[2]],
                [c[1], c[0], c[3], c[2]],
            ),
        }
    }

    /// Positivity through the four 2x2 anti-diagonal blocks: `a_i >= 0`,
    /// `b_i >= 0` and `a_i b_i >= |c_i|^2`, all within relative tolerance.
    pub fn psd_check(&self, tol: &Tolerances) -> bool {
        let s = self.max_abs_coeff().max(1.0);
        for k in 0..4 {
            if self.a[k] < -tol.psd * s || self.b[k] < -tol.psd * s {
                return false;
            }
            let det = self.a[k] * self.b[k] - self.c[k].norm_sqr();
            if det < -tol.psd * s * s {
                return false;
            }
        }
        true
    }

    /// Rank as the sum of the four 2x2 block ranks.
    pub fn rank(&self, tol: &Tolerances) -> usize {
        let s = self.max_abs_coeff();
        if s == 0.0 {
            return 0;
        }
        let mut rank = 0;
        for k in 0..4 {
            let m = self.a[k].abs().max(self.b[k].abs()).max(self.c[k].norm());
            if m <= tol.rank * s {
                continue;
            }
            let det = (self.a[k] * self.b[k] - self.c[k].norm_sqr()).abs();
            rank += if det > tol.rank * s * m { 2 } else { 1 };
        }
        rank
    }

    /// True when the state is diagonal in the GHZ basis: `a = b` and all
    /// anti-diagonal entries real.
    pub fn is_ghz_diagonal(&self, tol: &Tolerances) -> bool {
        let s = self.max_abs_coeff().max(1.0);
        (0..4).all(|k| {
            (self.a[k] - self.b[k]).abs() <= tol.zero * s && self.c[k].im.abs() <= tol.zero * s
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{self, kron, C_ONE};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    /// The model state supported on a ten-element kill set, at `u = 1` and
    /// parameters (1,1,1): diagonals all one, anti-diagonal
    /// `(-1,-1,+1,-1)/sqrt(2)`.
    fn model_state() -> XState {
        let f = FRAC_1_SQRT_2;
        XState::new(
            [1.0; 4],
            [1.0; 4],
            [c64(-f, 0.0), c64(-f, 0.0), c64(f, 0.0), c64(-f, 0.0)],
        )
    }

    #[test]
    fn dense_layout_is_pinned() {
        let s8 = 8.0f64.sqrt();
        let w = XState::new(
            [0.0, 0.0, 0.0, s8],
            [0.0, 0.0, 0.0, s8],
            [C_ONE, C_ONE, -C_ONE, C_ONE],
        );
        let d = w.to_dense();
        let mut expected = ComplexMatrix::zeros(8);
        expected[(3, 3)] = c64(s8, 0.0);
        expected[(4, 4)] = c64(s8, 0.0);
        for (k, sign) in [(0usize, 1.0), (1, 1.0), (2, -1.0), (3, 1.0)] {
            expected[(k, 7 - k)] = c64(sign, 0.0);
            expected[(7 - k, k)] = c64(sign, 0.0);
        }
        assert_eq!(d.max_abs_diff(&expected), 0.0);
    }

    #[test]
    fn identity_coefficients_give_dense_identity() {
        let x = XState::diagonal([1.0; 4], [1.0; 4]);
        assert_eq!(x.to_dense().max_abs_diff(&ComplexMatrix::identity(8)), 0.0);
        assert_eq!(x.trace(), 8.0);
    }

    #[test]
    fn from_dense_rejects_off_pattern_entries() {
        let plus = ComplexMatrix::from_real(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let m = kron(&plus, &ComplexMatrix::identity(4));
        assert!(matches!(
            XState::from_dense(&m, &tol()),
            Err(Error::NotXShaped { .. })
        ));
    }

    #[test]
    fn from_dense_rejects_non_hermitian() {
        let mut m = ComplexMatrix::zeros(8);
        m[(0, 7)] = c64(1.0, 0.0);
        m[(7, 0)] = c64(0.5, 0.0);
        assert!(matches!(
            XState::from_dense(&m, &tol()),
            Err(Error::NotHermitian { .. })
        ));
        assert!(matches!(
            XState::from_dense(&ComplexMatrix::identity(4), &tol()),
            Err(Error::BadDimension { .. })
        ));
    }

    #[test]
    fn partial_transpose_permutations() {
        let x = XState::new(
            [1.0, 2.0, 3.0, 4.0],
            [5.0, 6.0, 7.0, 8.0],
            [C_ONE, C_ONE, -C_ONE, C_ONE],
        );
        let ga = x.partial_transpose(Party::A);
        assert_eq!(ga.c, [C_ONE, -C_ONE, C_ONE, C_ONE]);
        assert_eq!(ga.a, x.a);
        assert_eq!(ga.b, x.b);
        let gb = x.partial_transpose(Party::B);
        assert_eq!(gb.c, [-C_ONE, C_ONE, C_ONE, C_ONE]);
        let gc = x.partial_transpose(Party::C);
        assert_eq!(gc.c, [C_ONE, C_ONE, C_ONE, -C_ONE]);
    }

    #[test]
    fn partial_transpose_matches_dense_operation() {
        let x = XState::new(
            [0.3, -0.2, 1.5, 0.0],
            [2.0, 0.1, -0.4, 0.9],
            [c64(0.2, 0.7), c64(-1.0, 0.1), c64(0.0, -0.3), c64(0.5, 0.5)],
        );
        for party in Party::ALL {
            let via_x = x.partial_transpose(party).to_dense();
            let via_dense = linalg::partial_transpose(&x.to_dense(), party).unwrap();
            assert_eq!(via_x.max_abs_diff(&via_dense), 0.0);
            let twice = x.partial_transpose(party).partial_transpose(party);
            assert_eq!(twice, x);
        }
    }

    #[test]
    fn bitflip_matches_dense_conjugation() {
        let x = XState::new(
            [0.3, -0.2, 1.5, 0.0],
            [2.0, 0.1, -0.4, 0.9],
            [c64(0.2, 0.7), c64(-1.0, 0.1), c64(0.0, -0.3), c64(0.5, 0.5)],
        );
        let flip = ComplexMatrix::from_real(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let id2 = ComplexMatrix::identity(2);
        for party in Party::ALL {
            let sigma = match party {
                Party::A => kron(&kron(&flip, &id2), &id2),
                Party::B => kron(&kron(&id2, &flip), &id2),
                Party::C => kron(&kron(&id2, &id2), &flip),
            };
            let direct = &(&sigma * &x.to_dense()) * &sigma;
            let via_x = x.bitflip_conjugate(party).to_dense();
            assert_eq!(via_x.max_abs_diff(&direct), 0.0);
            let twice = x.bitflip_conjugate(party).bitflip_conjugate(party);
            assert_eq!(twice, x);
        }
    }

    #[test]
    fn psd_check_examples() {
        let t = tol();
        assert!(XState::diagonal([1.0; 4], [1.0; 4]).psd_check(&t));
        assert!(model_state().psd_check(&t));
        let s8 = 8.0f64.sqrt();
        let w = XState::new(
            [0.0, 0.0, 0.0, s8],
            [0.0, 0.0, 0.0, s8],
            [C_ONE, C_ONE, -C_ONE, C_ONE],
        );
        assert!(!w.psd_check(&t));
        assert!(XState::zero().psd_check(&t));
    }

    #[test]
    fn psd_check_matches_dense_psd() {
        let t = tol();
        for x in [
            model_state(),
            XState::new(
                [0.5, 0.2, 0.0, 1.0],
                [0.5, 0.3, 0.0, 2.0],
                [c64(0.4, 0.1), c64(0.1, 0.2), C_ZERO, c64(-1.0, 0.9)],
            ),
            XState::new(
                [0.5, -0.1, 0.0, 1.0],
                [0.5, 0.3, 0.0, 2.0],
                [C_ZERO; 4],
            ),
        ] {
            let dense = linalg::is_psd(&x.to_dense(), &t).unwrap();
            assert_eq!(x.psd_check(&t), dense);
        }
    }

    #[test]
    fn block_rank_examples() {
        let t = tol();
        assert_eq!(model_state().rank(&t), 8);
        // unimodular anti-diagonal with reciprocal diagonals: every block
        // is singular but nonzero, rank one per block
        let quarter = XState::new(
            [2.0, 0.5, 2.0, 0.5],
            [0.5, 2.0, 0.5, 2.0],
            [C_ONE, C_ONE, C_ONE, C_ONE],
        );
        assert_eq!(quarter.rank(&t), 4);
        assert_eq!(quarter.rank(&t), linalg::rank(&quarter.to_dense(), &t));
        assert_eq!(XState::zero().rank(&t), 0);
        assert_eq!(
            model_state().rank(&t),
            linalg::rank(&model_state().to_dense(), &t)
        );
    }

    #[test]
    fn ghz_diagonal_predicate() {
        let t = tol();
        assert!(model_state().is_ghz_diagonal(&t));
        let skew = XState::new(
            [2.0, 0.5, 2.0, 0.5],
            [0.5, 2.0, 0.5, 2.0],
            [C_ONE; 4],
        );
        assert!(!skew.is_ghz_diagonal(&t));
        for party in Party::ALL {
            assert!(model_state()
                .partial_transpose(party)
                .is_ghz_diagonal(&t));
        }
    }

    proptest! {
        #[test]
        fn dense_roundtrip_is_exact(
            a in prop::array::uniform4(-1.0f64..1.0),
            b in prop::array::uniform4(-1.0f64..1.0),
            cre in prop::array::uniform4(-1.0f64..1.0),
            cim in prop::array::uniform4(-1.0f64..1.0),
        ) {
            let x = XState::new(a, b, [
                c64(cre[0], cim[0]),
                c64(cre[1], cim[1]),
                c64(cre[2], cim[2]),
                c64(cre[3], cim[3]),
            ]);
            let back = XState::from_dense(&x.to_dense(), &Tolerances::default()).unwrap();
            prop_assert_eq!(back, x);
        }

        #[test]
        fn partial_transpose_closed_form_agrees(
            a in prop::array::uniform4(-1.0f64..1.0),
            b in prop::array::uniform4(-1.0f64..1.0),
            cre in prop::array::uniform4(-1.0f64..1.0),
            cim in prop::array::uniform4(-1.0f64..1.0),
        ) {
            let x = XState::new(a, b, [
                c64(cre[0], cim[0]),
                c64(cre[1], cim[1]),
                c64(cre[2], cim[2]),
                c64(cre[3], cim[3]),
            ]);
            for party in Party::ALL {
                let lhs = x.partial_transpose(party).to_dense();
                let rhs = linalg::partial_transpose(&x.to_dense(), party).unwrap();
                prop_assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
            }
        }
    }
}
