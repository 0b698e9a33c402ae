use serde::{Deserialize, Serialize};

use super::{KrausChannel, VacuumExtension};
use crate::error::{check_probability, Error, Result};
use crate::numerics::{c64, vector_norm, ComplexMatrix, C64};
use crate::tolerances::UNIT_TOL;

/// Flip probabilities of a binary asymmetric channel: `q` for 0→1, `p` for 1→0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinaryAsymmetricParams {
    pub q: f64,
    pub p: f64,
}

impl BinaryAsymmetricParams {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        check_probability("q", q)?;
        check_probability("p", p)?;
        if p + q > 1.0 + 1e-12 {
            return Err(Error::ProbabilityRange(format!("p + q = {} exceeds 1", p + q)));
        }
        Ok(Self { q, p })
    }
}

fn real(x: f64) -> C64 {
    c64(x, 0.0)
}

fn ket_bra(i: usize, j: usize) -> ComplexMatrix {
    ComplexMatrix::unit(2, 2, i, j)
}

fn check_unit(v: &[C64]) -> Result<()> {
    if v.len() != 2 {
        return Err(Error::DimensionMismatch(format!("expected a qubit vector, got length {}", v.len())));
    }
    let n = vector_norm(v);
    if (n - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotUnitVector(n));
    }
    Ok(())
}

/// Qubit vector orthogonal to `v = (a, b)`: (−b̄, ā).
pub fn orthogonal_complement(v: &[C64]) -> [C64; 2] {
    [-v[1].conj(), v[0].conj()]
}

/// The dephase-then-reset Z-channel: ρ ↦ p|0⟩⟨0| + (1−p) ρ_diag.
pub fn z_channel(p: f64) -> Result<KrausChannel> {
    Ok(physical_z_extension(p)?.channel().clone())
}

/// Z-channel realised as a CNOT dephasing followed, with probability p, by a
/// swap with a |0⟩ environment. Kraus order: C̃₁₀, C̃₁₁, C̃₂₀, C̃₂₁.
pub fn physical_z_extension(p: f64) -> Result<VacuumExtension> {
    check_probability("p", p)?;
    let (sp, sq) = (p.sqrt(), (1.0 - p).sqrt());
    VacuumExtension::from_pairs(vec![
        (ket_bra(0, 0).scale_real(sp), real(sp)),
        (ket_bra(0, 1).scale_real(sp), real(0.0)),
        (ket_bra(0, 0).scale_real(sq), real(sq)),
        (ket_bra(1, 1).scale_real(sq), real(0.0)),
    ])
}

/// Seven-operator vacuum extension of the binary asymmetric channel:
/// reset to |0⟩ with probability p, to |1⟩ with probability q, otherwise
/// dephase. F = (1−q)|0⟩⟨0|.
pub fn bac_extension(params: BinaryAsymmetricParams) -> Result<VacuumExtension> {
    let BinaryAsymmetricParams { q, p } = BinaryAsymmetricParams::new(params.q, params.p)?;
    let sp = p.sqrt();
    let sq = q.sqrt();
    let sr = (1.0 - p - q).max(0.0).sqrt();
    let zero = ComplexMatrix::zeros(2, 2);
    VacuumExtension::from_pairs(vec![
        (ket_bra(0, 0).scale_real(sp), real(sp)),
        (ket_bra(0, 1).scale_real(sp), real(0.0)),
        (ket_bra(1, 0).scale_real(sq), real(0.0)),
        (ket_bra(1, 1).scale_real(sq), real(0.0)),
        (zero, real(sq)),
        (ket_bra(0, 0).scale_real(sr), real(sr)),
        (ket_bra(1, 1).scale_real(sr), real(0.0)),
    ])
}

/// Z-channel in the basis {|η⟩, |η⊥⟩}: ρ ↦ p|η⟩⟨η| + (1−p) ρ_diag^{(η)}.
pub fn variable_basis_z(p: f64, eta: &[C64]) -> Result<KrausChannel> {
    Ok(variable_basis_z_extension(p, eta)?.channel().clone())
}

/// Physical Z extension conjugated by the basis change |0⟩ ↦ |η⟩; F = |η⟩⟨η|.
pub fn variable_basis_z_extension(p: f64, eta: &[C64]) -> Result<VacuumExtension> {
    check_unit(eta)?;
    let base = physical_z_extension(p)?;
    let perp = orthogonal_complement(eta);
    let u = ComplexMatrix::from_fn(2, 2, |i, j| if j == 0 { eta[i] } else { perp[i] });
    let ud = u.adjoint();
    VacuumExtension::from_pairs(
        base.pairs()
            .map(|(e, a)| (&(&u * e) * &ud, a))
            .collect(),
    )
}

fn check_alpha(alpha0: C64, alpha1: C64) -> Result<()> {
    let norm = alpha0.norm_sqr() + alpha1.norm_sqr();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// p = 1 Z-channel with vacuum amplitudes (α₀, α₁); F = |0⟩⟨α|.
pub fn appendix_b_extension(alpha0: C64, alpha1: C64) -> Result<VacuumExtension> {
    check_alpha(alpha0, alpha1)?;
    VacuumExtension::from_pairs(vec![(ket_bra(0, 0), alpha0), (ket_bra(0, 1), alpha1)])
}

/// Repeater {|α⟩⟨0| ⊕ |vac⟩⟨vac|, |α⊥⟩⟨1| ⊕ 0} with |α⊥⟩ = ᾱ₁|0⟩ − ᾱ₀|1⟩,
/// so that G = |α⟩⟨0| = F† for the matching [`appendix_b_extension`].
pub fn appendix_b_repeater(alpha0: C64, alpha1: C64) -> Result<VacuumExtension> {
    check_alpha(alpha0, alpha1)?;
    let alpha = [alpha0, alpha1];
    let alpha_perp = [alpha1.conj(), -alpha0.conj()];
    let e0 = [real(1.0), real(0.0)];
    let e1 = [real(0.0), real(1.0)];
    VacuumExtension::from_pairs(vec![
        (ComplexMatrix::outer(&alpha, &e0), real(1.0)),
        (ComplexMatrix::outer(&alpha_perp, &e1), real(0.0)),
    ])
}

/// Trivial extension of the identity channel (α = 1).
pub fn identity_extension(dim: usize) -> VacuumExtension {
    VacuumExtension::new(KrausChannel::identity(dim), vec![real(1.0)]).expect("identity is valid")
}

/// U(·)U† extended by |vac⟩⟨vac|, so the interference operator is U itself.
pub fn unitary_extension(u: ComplexMatrix) -> Result<VacuumExtension> {
    VacuumExtension::new(KrausChannel::new(vec![u])?, vec![real(1.0)])
}
