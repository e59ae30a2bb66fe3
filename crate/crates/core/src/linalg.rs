//! Dense complex linear algebra for small Hilbert spaces.
//!
//! Everything here targets matrices of dimension at most a few dozen; the
//! eigensolver is a cyclic Jacobi iteration and rank goes through row
//! echelon form with partial pivoting, which is plenty at these sizes and
//! keeps the crate free of external solver dependencies.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use crate::error::{Error, Result};

pub use num_complex::Complex64;

/// Shorthand for the complex zero.
pub const C_ZERO: Complex64 = Complex64::new(0.0, 0.0);
/// Shorthand for the complex one.
pub const C_ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One of the three qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Party {
    A,
    B,
    C,
}

impl Party {
    pub const ALL: [Party; 3] = [Party::A, Party::B, Party::C];

    /// Bit mask of this party inside a basis index `i = 4*i_A + 2*i_B + i_C`.
    pub fn mask(self) -> usize {
        match self {
            Party::A => 4,
            Party::B => 2,
            Party::C => 1,
        }
    }
}

impl fmt::Display for Party {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Party::A => write!(f, "A"),
            Party::B => write!(f, "B"),
            Party::C => write!(f, "C"),
        }
    }
}

/// Relative tolerances shared across the numeric routines.
#[derive(Clone, Copy, Debug)]
pub struct Tolerances {
    /// Hermitian symmetry deviation allowed before a matrix is rejected.
    pub sym: f64,
    /// Pivot threshold for rank decisions, relative to the largest entry.
    pub rank: f64,
    /// Eigenvalue floor for positive semidefiniteness checks.
    pub psd: f64,
    /// Threshold below which a pairing or kill value counts as zero.
    pub zero: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            sym: 1e-10,
            rank: 1e-9,
            psd: 1e-9,
            zero: 1e-9,
        }
    }
}

/// Square complex matrix in row-major storage.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![C_ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C_ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for r in 0..dim {
            for c in 0..dim {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Builds a matrix from real entries.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        Self::from_fn(dim, |r, c| Complex64::new(rows[r][c], 0.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The rank-one operator `|v><v|`.
    pub fn projector(v: &[Complex64]) -> Self {
        Self::from_fn(v.len(), |r, c| v[r] * v[c].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Hilbert–Schmidt inner product ⟨self, other⟩ = tr(self† · other),
    /// computed entrywise.
    pub fn hs_inner(&self, other: &ComplexMatrix) -> Complex64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] * s)
    }

    pub fn scale_re(&self, s: f64) -> Self {
        Self::from_fn(self.dim, |r, c| self[(r, c)] * s)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise difference to `other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `M = M^dagger`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.dim {
            for c in r..self.dim {
                let d = (self[(r, c)] - self[(c, r)].conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: &Tolerances) -> bool {
        self.hermitian_deviation() <= tol.sym * self.max_abs_entry().max(1.0)
    }

    /// Replaces the matrix by `(M + M^dagger)/2`.
    pub fn hermitized(&self) -> Self {
        Self::from_fn(self.dim, |r, c| {
            (self[(r, c)] + self[(c, r)].conj()) * 0.5
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |r, c| self[(r, c)] + rhs[(r, c)])
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        ComplexMatrix::from_fn(self.dim, |r, c| self[(r, c)] - rhs[(r, c)])
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == C_ZERO {
                    continue;
                }
                for c in 0..n {
                    out[(r, c)] += a * rhs[(k, c)];
                }
            }
        }
        out
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix(dim={})", self.dim)?;
        for r in 0..self.dim {
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, "{:+.4}{:+.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Kronecker product `a (x) b`.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut out = ComplexMatrix::zeros(da * db);
    for r1 in 0..da {
        for c1 in 0..da {
            let f = a[(r1, c1)];
            if f == C_ZERO {
                continue;
            }
            for r2 in 0..db {
                for c2 in 0..db {
                    out[(r1 * db + r2, c1 * db + c2)] = f * b[(r2, c2)];
                }
            }
        }
    }
    out
}

/// Kronecker product of vectors.
pub fn kron_vec(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}

/// Inner product, conjugate linear in the first argument.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    assert_eq!(a.len(), b.len(), "length mismatch");
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Eigendecomposition of a Hermitian matrix: `m = U diag(values) U^dagger`.
pub struct Eigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Unitary with eigenvector columns, ordered like `values`.
    pub vectors: ComplexMatrix,
}

/// Convergence threshold of the Jacobi sweep, relative to the Frobenius
/// norm of the input.
const JACOBI_REL_OFF: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigenvalues and eigenvectors of a Hermitian matrix by cyclic Jacobi
/// rotations. Fails with [`Error::NotHermitian`] if the input deviates from
/// its adjoint by more than the symmetry tolerance.
pub fn hermitian_eigen(m: &ComplexMatrix, tol: &Tolerances) -> Result<Eigen> {
    let dev = m.hermitian_deviation();
    if dev > tol.sym * m.max_abs_entry().max(1.0) {
        return Err(Error::NotHermitian { deviation: dev });
    }
    let n = m.dim;
    let mut h = m.hermitized();
    let mut u = ComplexMatrix::identity(n);
    let target = JACOBI_REL_OFF * h.frobenius_norm();

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for r in 0..n {
            for c in 0..n {
                if r != c {
                    off += h[(r, c)].norm_sqr();
                }
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = h[(p, q)];
                let g = apq.norm();
                if g < 1e-300 {
                    continue;
                }
                // Strip the phase so the (p,q) plane is real symmetric,
                // then rotate by the classic Jacobi angle.
                let phase = apq / g;
                let app = h[(p, p)].re;
                let aqq = h[(q, q)].re;
                let tau = (aqq - app) / (2.0 * g);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let cs = Complex64::new(c, 0.0);
                let s_col = phase.conj() * s;
                let s_row = phase * s;

                for r in 0..n {
                    let hp = h[(r, p)];
                    let hq = h[(r, q)];
                    h[(r, p)] = hp * c - hq * s_col;
                    h[(r, q)] = hp * s + hq * (cs * phase.conj());
                }
                for r in 0..n {
                    let hp = h[(p, r)];
                    let hq = h[(q, r)];
                    h[(p, r)] = hp * c - hq * s_row;
                    h[(q, r)] = hp * s + hq * (cs * phase);
                }
                h[(p, q)] = C_ZERO;
                h[(q, p)] = C_ZERO;
                h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
                h[(q, q)] = Complex64::new(h[(q, q)].re, 0.0);

                for r in 0..n {
                    let up = u[(r, p)];
                    let uq = u[(r, q)];
                    u[(r, p)] = up * c - uq * s_col;
                    u[(r, q)] = up * s + uq * (cs * phase.conj());
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| h[(i, i)].re.total_cmp(&h[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| u[(r, order[c])]);
    Ok(Eigen { values, vectors })
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &ComplexMatrix, tol: &Tolerances) -> Result<Vec<f64>> {
    hermitian_eigen(m, tol).map(|e| e.values)
}

/// True iff the smallest eigenvalue clears `-psd_tol * max(1, largest)`.
pub fn is_psd(m: &ComplexMatrix, tol: &Tolerances) -> Result<bool> {
    let ev = hermitian_eigenvalues(m, tol)?;
    let min = ev.first().copied().unwrap_or(0.0);
    let max = ev.last().copied().unwrap_or(0.0);
    Ok(min >= -tol.psd * max.max(1.0))
}

/// Row echelon rank over the complex field with partial pivoting. The pivot
/// threshold is relative to the largest entry of the input.
fn echelon_rank(mut rows: Vec<Vec<Complex64>>, tol: &Tolerances) -> usize {
    let m = rows.len();
    if m == 0 {
        return 0;
    }
    let n = rows[0].len();
    let scale = rows
        .iter()
        .flat_map(|r| r.iter())
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return 0;
    }
    let thresh = tol.rank * scale;
    let mut rank = 0;
    for col in 0..n {
        let mut best = rank;
        let mut best_val = 0.0;
        for (i, row) in rows.iter().enumerate().skip(rank) {
            let v = row[col].norm();
            if v > best_val {
                best = i;
                best_val = v;
            }
        }
        if best_val <= thresh {
            continue;
        }
        rows.swap(rank, best);
        let (pivot_row, rest) = {
            let (head, tail) = rows.split_at_mut(rank + 1);
            (&head[rank], tail)
        };
        let pivot = pivot_row[col];
        for row in rest.iter_mut() {
            let f = row[col] / pivot;
            if f == C_ZERO {
                continue;
            }
            for j in col..n {
                let sub = f * pivot_row[j];
                row[j] -= sub;
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Numerical rank of a square matrix.
pub fn rank(m: &ComplexMatrix, tol: &Tolerances) -> usize {
    let rows: Vec<Vec<Complex64>> = (0..m.dim)
        .map(|r| (0..m.dim).map(|c| m[(r, c)]).collect())
        .collect();
    echelon_rank(rows, tol)
}

/// Rank of the (possibly rectangular) matrix whose columns are `cols`.
pub fn rank_of_columns(cols: &[Vec<Complex64>], tol: &Tolerances) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let m = cols[0].len();
    debug_assert!(cols.iter().all(|c| c.len() == m));
    let rows: Vec<Vec<Complex64>> = (0..m)
        .map(|r| cols.iter().map(|col| col[r]).collect())
        .collect();
    echelon_rank(rows, tol)
}

/// Rank of a real matrix given by rows.
pub fn rank_of_real_rows(rows: &[Vec<f64>], tol: &Tolerances) -> usize {
    let lifted: Vec<Vec<Complex64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    echelon_rank(lifted, tol)
}

/// Partial transpose on one party of an 8x8 three-qubit operator.
///
/// With basis index `i = 4*i_A + 2*i_B + i_C` the transposed party's bits of
/// the row and column indices are swapped.
pub fn partial_transpose(m: &ComplexMatrix, party: Party) -> Result<ComplexMatrix> {
    if m.dim != crate::DIM {
        return Err(Error::BadDimension {
            expected: crate::DIM,
            got: m.dim,
        });
    }
    let mask = party.mask();
    let keep = !mask;
    Ok(ComplexMatrix::from_fn(m.dim, |r, c| {
        m[((r & keep) | (c & mask), (c & keep) | (r & mask))]
    }))
}

/// Solves the real linear system `a x = b` by Gaussian elimination with
/// partial pivoting. Returns `None` when a pivot degenerates.
pub fn solve_real(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = a.len();
    debug_assert!(a.iter().all(|row| row.len() == n) && b.len() == n);
    let scale = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x.abs())
        .fold(0.0, f64::max);
    if scale == 0.0 {
        return None;
    }
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let (best, best_val) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if best_val <= 1e-13 * scale {
            return None;
        }
        m.swap(col, best);
        rhs.swap(col, best);
        for r in (col + 1)..n {
            let f = m[r][col] / m[col][col];
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m[r][j] -= f * m[col][j];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for r in (0..n).rev() {
        let mut acc = rhs[r];
        for j in (r + 1)..n {
            acc -= m[r][j] * x[j];
        }
        x[r] = acc / m[r][r];
    }
    Some(x)
}
