//! Product vectors and the families of them killed by the witnesses.
//!
//! A witness kills a product vector ξ = x⊗y⊗z when the kill functional
//! vanishes on it. For the witness family of [`crate::witness`] those
//! vectors come in two kinds: vectors with zero entries, organized into
//! six two-parameter families per witness, and vectors without zero
//! entries, which are parameterized as
//!
//! ```text
//! η(𝐩, Λ) = (pqr)^{-1/2} (p, α)ᵗ ⊗ (q, β)ᵗ ⊗ (r, γ)ᵗ
//! ```
//!
//! with 𝐩 = (p, q, r) positive and Λ = (α, β, γ) drawn from a fixed list
//! of eight phase triples built on ω = exp(iπ/4). The parameter 𝐩 must lie
//! on a surface determined by the witness: a monomial in p, q, r equals
//! the witness parameter u. Intersecting three witnesses pins 𝐩 down to a
//! single point, leaving exactly ten common kill vectors per triple: two
//! computational kets and the eight η's at the designated point.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Complex64, Party, C_ONE, C_ZERO};
use crate::witness::{Triple, WitnessLabel};

/// Exact value of ω^k for ω = exp(iπ/4), reduced mod 8.
///
/// Entries are built from `FRAC_1_SQRT_2` so that conjugation and negation
/// of table members land back on table members bit for bit.
pub fn omega(k: i32) -> Complex64 {
    let f = std::f64::consts::FRAC_1_SQRT_2;
    match k.rem_euclid(8) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(f, f),
        2 => Complex64::new(0.0, 1.0),
        3 => Complex64::new(-f, f),
        4 => Complex64::new(-1.0, 0.0),
        5 => Complex64::new(-f, -f),
        6 => Complex64::new(0.0, -1.0),
        _ => Complex64::new(f, -f),
    }
}

/// A point 𝐩 = (p, q, r) of positive parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TripleP {
    p: f64,
    q: f64,
    r: f64,
}

impl TripleP {
    pub fn new(p: f64, q: f64, r: f64) -> Result<Self> {
        for (name, v) in [("p", p), ("q", q), ("r", r)] {
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::BadParameter(format!(
                    "parameter {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(TripleP { p, q, r })
    }

    pub fn from_array(a: [f64; 3]) -> Result<Self> {
        TripleP::new(a[0], a[1], a[2])
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.p, self.q, self.r]
    }

    /// The point with one coordinate replaced by its reciprocal, as induced
    /// on η parameters by a partial conjugation of that party.
    pub fn inverted(&self, party: Party) -> TripleP {
        let mut a = self.as_array();
        let i = match party {
            Party::A => 0,
            Party::B => 1,
            Party::C => 2,
        };
        a[i] = 1.0 / a[i];
        TripleP { p: a[0], q: a[1], r: a[2] }
    }
}

impl fmt::Display for TripleP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

/// A triple Λ = (α, β, γ) of unimodular phases.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseTriple {
    alpha: Complex64,
    beta: Complex64,
    gamma: Complex64,
}

impl PhaseTriple {
    const MODULUS_SLACK: f64 = 1e-12;

    pub fn new(alpha: Complex64, beta: Complex64, gamma: Complex64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if (v.norm() - 1.0).abs() > Self::MODULUS_SLACK {
                return Err(Error::BadParameter(format!(
                    "phase {name} must have modulus 1, got |{name}| = {}",
                    v.norm()
                )));
            }
        }
        Ok(PhaseTriple { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn conj(&self) -> PhaseTriple {
        PhaseTriple {
            alpha: self.alpha.conj(),
            beta: self.beta.conj(),
            gamma: self.gamma.conj(),
        }
    }
}

/// The eight phase triples
///
/// ```text
/// Λ_1 = (+ω³, +ω, +ω⁷)    Λ_2 = (+ω³, −ω, −ω⁷)
/// Λ_3 = (−ω³, +ω, −ω⁷)    Λ_4 = (−ω³, −ω, +ω⁷)
/// ```
///
/// and their entrywise conjugates Λ_5..Λ_8.
pub fn lambda_table() -> [PhaseTriple; 8] {
    let (a, b, g) = (omega(3), omega(1), omega(7));
    let first = [
        PhaseTriple { alpha: a, beta: b, gamma: g },
        PhaseTriple { alpha: a, beta: -b, gamma: -g },
        PhaseTriple { alpha: -a, beta: b, gamma: -g },
        PhaseTriple { alpha: -a, beta: -b, gamma: g },
    ];
    [
        first[0], first[1], first[2], first[3],
        first[0].conj(), first[1].conj(), first[2].conj(), first[3].conj(),
    ]
}

/// A three-qubit product vector, stored slotwise with a real scalar factor
/// applied on assembly.
#[derive(Clone, Debug)]
pub struct ProductVector {
    x: [Complex64; 2],
    y: [Complex64; 2],
    z: [Complex64; 2],
    scale: f64,
}

impl ProductVector {
    pub fn new(x: [Complex64; 2], y: [Complex64; 2], z: [Complex64; 2]) -> Result<Self> {
        for slot in [&x, &y, &z] {
            if slot[0].norm_sqr() + slot[1].norm_sqr() < 1e-280 {
                return Err(Error::ZeroVector);
            }
        }
        Ok(ProductVector { x, y, z, scale: 1.0 })
    }

    /// The computational basis ket with index i = 4i_A + 2i_B + i_C.
    pub fn basis_ket(index: usize) -> Result<Self> {
        if index >= crate::DIM {
            return Err(Error::BadDimension {
                expected: crate::DIM,
                got: index,
            });
        }
        let slot = |bit: usize| {
            let mut s = [C_ZERO; 2];
            s[bit] = C_ONE;
            s
        };
        ProductVector::new(slot(index >> 2 & 1), slot(index >> 1 & 1), slot(index & 1))
    }

    pub fn slots(&self) -> ([Complex64; 2], [Complex64; 2], [Complex64; 2]) {
        (self.x, self.y, self.z)
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// The assembled 8-vector, scalar factor included.
    pub fn tensor(&self) -> [Complex64; 8] {
        let mut out = [C_ZERO; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.x[i >> 2 & 1] * self.y[i >> 1 & 1] * self.z[i & 1] * self.scale;
        }
        out
    }

    /// The assembled 8-vector without the scalar factor, as displayed in
    /// closed-form tables.
    pub fn tensor_unscaled(&self) -> [Complex64; 8] {
        let mut out = [C_ZERO; 8];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = self.x[i >> 2 & 1] * self.y[i >> 1 & 1] * self.z[i & 1];
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        let slot_norm = |s: &[Complex64; 2]| s[0].norm_sqr() + s[1].norm_sqr();
        self.scale * self.scale * slot_norm(&self.x) * slot_norm(&self.y) * slot_norm(&self.z)
    }

    pub fn conj(&self) -> ProductVector {
        let c = |s: &[Complex64; 2]| [s[0].conj(), s[1].conj()];
        ProductVector {
            x: c(&self.x),
            y: c(&self.y),
            z: c(&self.z),
            scale: self.scale,
        }
    }

    /// Replaces one slot by the bit flip of its conjugate, leaving the
    /// other slots untouched.
    pub fn partial_conjugate(&self, party: Party) -> ProductVector {
        let flip_conj = |s: &[Complex64; 2]| [s[1].conj(), s[0].conj()];
        let mut out = self.clone();
        match party {
            Party::A => out.x = flip_conj(&self.x),
            Party::B => out.y = flip_conj(&self.y),
            Party::C => out.z = flip_conj(&self.z),
        }
        out
    }
}

/// True when two 8-vectors span the same complex ray: the squared overlap
/// of their normalizations is within `tol` of 1.
pub fn same_ray(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    let na: f64 = a.iter().map(|v| v.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|v| v.norm_sqr()).sum();
    if na < 1e-280 || nb < 1e-280 {
        return false;
    }
    let overlap: Complex64 = a.iter().zip(b).map(|(av, bv)| av.conj() * bv).sum();
    (overlap.norm_sqr() / (na * nb) - 1.0).abs() <= tol
}

/// The vector η(𝐩, Λ) with the (pqr)^{-1/2} factor tracked on the tensor.
pub fn eta(point: &TripleP, lambda: &PhaseTriple) -> ProductVector {
    let (p, q, r) = (point.p(), point.q(), point.r());
    ProductVector {
        x: [Complex64::new(p, 0.0), lambda.alpha()],
        y: [Complex64::new(q, 0.0), lambda.beta()],
        z: [Complex64::new(r, 0.0), lambda.gamma()],
        scale: 1.0 / (p * q * r).sqrt(),
    }
}

/// Which monomial constraint a surface imposes on 𝐩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    S,
    SA,
    SB,
    SC,
}

impl SurfaceKind {
    pub const ALL: [SurfaceKind; 4] =
        [SurfaceKind::S, SurfaceKind::SA, SurfaceKind::SB, SurfaceKind::SC];

    /// The surface carrying the zero-free kill vectors of a witness.
    pub fn for_witness(label: WitnessLabel) -> SurfaceKind {
        match label {
            WitnessLabel::W => SurfaceKind::S,
            WitnessLabel::WA => SurfaceKind::SA,
            WitnessLabel::WB => SurfaceKind::SB,
            WitnessLabel::WC => SurfaceKind::SC,
        }
    }

    /// The defining monomial: membership means it equals u.
    pub fn monomial(self, point: &TripleP) -> f64 {
        let (p, q, r) = (point.p(), point.q(), point.r());
        match self {
            SurfaceKind::S => p / (q * r),
            SurfaceKind::SA => 1.0 / (p * q * r),
            SurfaceKind::SB => p * q / r,
            SurfaceKind::SC => p * r / q,
        }
    }

    /// Solves the defining relation for p at given (q, r).
    pub fn point_at(self, u: f64, q: f64, r: f64) -> Result<TripleP> {
        let p = match self {
            SurfaceKind::S => u * q * r,
            SurfaceKind::SA => 1.0 / (u * q * r),
            SurfaceKind::SB => u * r / q,
            SurfaceKind::SC => u * q / r,
        };
        TripleP::new(p, q, r)
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceKind::S => write!(f, "S"),
            SurfaceKind::SA => write!(f, "S_A"),
            SurfaceKind::SB => write!(f, "S_B"),
            SurfaceKind::SC => write!(f, "S_C"),
        }
    }
}

/// A surface at a fixed witness parameter.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceId {
    pub kind: SurfaceKind,
    pub u: f64,
}

/// Relative membership test: |monomial(𝐩) − u| ≤ tol·u.
pub fn surface_membership(point: &TripleP, surface: &SurfaceId, tol: f64) -> bool {
    (surface.kind.monomial(point) - surface.u).abs() <= tol * surface.u
}

/// The ten product vectors killed by all three witnesses of a triple: the
/// two computational kets followed by η_1..η_8 at the designated point.
pub fn triple_kill_set(triple: Triple, u: f64) -> Result<Vec<ProductVector>> {
    let point = TripleP::from_array(triple.designated_point(u))?;
    let mut out = Vec::with_capacity(10);
    for index in triple.classical_indices() {
        out.push(ProductVector::basis_ket(index)?);
    }
    for lambda in lambda_table() {
        out.push(eta(&point, &lambda));
    }
    Ok(out)
}

/// A two-parameter family of product vectors with zero entries: two slots
/// frozen to basis kets, one left free.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZeroFamily {
    free: Party,
    bits: [(Party, u8); 2],
}

impl ZeroFamily {
    fn new(free: Party, first: u8, second: u8) -> ZeroFamily {
        let fixed: Vec<Party> = Party::ALL.into_iter().filter(|p| *p != free).collect();
        ZeroFamily {
            free,
            bits: [(fixed[0], first), (fixed[1], second)],
        }
    }

    pub fn free_party(&self) -> Party {
        self.free
    }

    /// The member with the given free-slot component.
    pub fn member(&self, free_slot: [Complex64; 2]) -> Result<ProductVector> {
        let ket = |bit: u8| {
            let mut s = [C_ZERO; 2];
            s[bit as usize] = C_ONE;
            s
        };
        let mut slots = [[C_ZERO; 2]; 3];
        slots[self.free as usize] = free_slot;
        for (party, bit) in self.bits {
            slots[party as usize] = ket(bit);
        }
        ProductVector::new(slots[0], slots[1], slots[2])
    }
}

impl fmt::Display for ZeroFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut marks = ['.'; 3];
        for (party, bit) in self.bits {
            marks[party as usize] = char::from(b'0' + bit);
        }
        write!(f, "E[{}{}{}]", marks[0], marks[1], marks[2])
    }
}

/// The six zero-entry families killed by each witness.
pub fn zero_families(label: WitnessLabel) -> [ZeroFamily; 6] {
    use Party::{A, B, C};
    let e = ZeroFamily::new;
    match label {
        // E[.01] E[.10] E[0.0] E[1.1] E[00.] E[11.]
        WitnessLabel::W => [
            e(A, 0, 1), e(A, 1, 0), e(B, 0, 0), e(B, 1, 1), e(C, 0, 0), e(C, 1, 1),
        ],
        // E[.01] E[.10] E[1.0] E[0.1] E[10.] E[01.]
        WitnessLabel::WA => [
            e(A, 0, 1), e(A, 1, 0), e(B, 1, 0), e(B, 0, 1), e(C, 1, 0), e(C, 0, 1),
        ],
        // E[.11] E[.00] E[0.0] E[1.1] E[01.] E[10.]
        WitnessLabel::WB => [
            e(A, 1, 1), e(A, 0, 0), e(B, 0, 0), e(B, 1, 1), e(C, 0, 1), e(C, 1, 0),
        ],
        // E[.00] E[.11] E[0.1] E[1.0] E[00.] E[11.]
        WitnessLabel::WC => [
            e(A, 0, 0), e(A, 1, 1), e(B, 0, 1), e(B, 1, 0), e(C, 0, 0), e(C, 1, 1),
        ],
    }
}

/// The eight ζ vectors dual to the displayed η's:
///
/// ```text
/// ζ_1 = (1, +ω³) ⊗ (1, −ω) ⊗ (u, +ω⁷)    ζ_2 = (1, +ω³) ⊗ (1, +ω) ⊗ (u, −ω⁷)
/// ζ_3 = (1, −ω³) ⊗ (1, −ω) ⊗ (u, −ω⁷)    ζ_4 = (1, −ω³) ⊗ (1, +ω) ⊗ (u, +ω⁷)
/// ```
///
/// and their conjugates ζ_5..ζ_8, all unnormalized.
pub fn zeta_table(u: f64) -> Result<[ProductVector; 8]> {
    if !u.is_finite() || u <= 0.0 {
        return Err(Error::BadParameter(format!(
            "zeta parameter u must be positive and finite, got {u}"
        )));
    }
    let (a, b, g) = (omega(3), omega(1), omega(7));
    let uu = Complex64::new(u, 0.0);
    let make = |sa: f64, sb: f64, sg: f64| ProductVector {
        x: [C_ONE, sa * a],
        y: [C_ONE, sb * b],
        z: [uu, sg * g],
        scale: 1.0,
    };
    let first = [
        make(1.0, -1.0, 1.0),
        make(1.0, 1.0, -1.0),
        make(-1.0, -1.0, -1.0),
        make(-1.0, 1.0, 1.0),
    ];
    Ok([
        first[0].clone(), first[1].clone(), first[2].clone(), first[3].clone(),
        first[0].conj(), first[1].conj(), first[2].conj(), first[3].conj(),
    ])
}
