//! Sequences of vacuum-extended links and their coherent two-path
//! superposition.
//!
//! Output states of a superposition live on message ⊗ path, with the
//! message index major: basis index `m * 2 + path`.

use serde::Serialize;

use crate::channels::{compress_kraus, identity_extension, KrausChannel, QuantumMap, VacuumExtension};
use crate::error::{Error, Result};
use crate::numerics::{density_spectrum, hermitian_eig, kron, singular_values, ComplexMatrix, C64};
use crate::tolerances::TRACE_TOL;

const FIXED_POINT_TOL: f64 = 1e-9;
const FIXED_POINT_MAX_ITERS: usize = 100_000;
/// |σ_max(F) − 1| allowed before the asymptotic limit is declared absent.
const UNIT_SINGULAR_TOL: f64 = 1e-6;

/// One path through the network: the composed channel and the composed
/// vacuum interference operator.
#[derive(Debug, Clone, Serialize)]
pub struct Branch {
    channel: KrausChannel,
    f_op: ComplexMatrix,
    links: usize,
}

impl Branch {
    pub fn from_extension(ext: &VacuumExtension) -> Self {
        Self {
            channel: ext.channel().clone(),
            f_op: ext.vacuum_interference(),
            links: 1,
        }
    }

    /// Builds a branch directly from its parts; `f_op` must be the
    /// interference operator of some vacuum extension of `channel`.
    pub fn from_parts(channel: KrausChannel, f_op: ComplexMatrix, links: usize) -> Result<Self> {
        if f_op.dims() != (channel.dim_out(), channel.dim_in()) {
            return Err(Error::DimensionMismatch("interference operator shape".into()));
        }
        Ok(Self {
            channel,
            f_op,
            links,
        })
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn f_op(&self) -> &ComplexMatrix {
        &self.f_op
    }

    pub fn links(&self) -> usize {
        self.links
    }

    fn then(&self, ext: &VacuumExtension, added_links: usize) -> Result<Self> {
        let channel = compress_kraus(&ext.channel().after(&self.channel)?);
        Ok(Self {
            channel,
            f_op: &ext.vacuum_interference() * &self.f_op,
            links: self.links + added_links,
        })
    }

    /// Appends a noisy link after this branch.
    pub fn then_link(&self, ext: &VacuumExtension) -> Result<Self> {
        self.then(ext, 1)
    }

    /// Appends a repeater; repeaters do not count as links.
    pub fn then_repeater(&self, ext: &VacuumExtension) -> Result<Self> {
        self.then(ext, 0)
    }

    /// Concatenates `next` after `self`.
    pub fn then_branch(&self, next: &Branch) -> Result<Self> {
        let channel = compress_kraus(&next.channel.after(&self.channel)?);
        Ok(Self {
            channel,
            f_op: &next.f_op * &self.f_op,
            links: self.links + next.links,
        })
    }
}

/// A communication line: links interleaved with repeaters, plus the
/// per-link path dephasing probability.
#[derive(Debug, Clone)]
pub struct RouteSpec {
    pub channels: Vec<VacuumExtension>,
    pub repeaters: Vec<VacuumExtension>,
    pub dephase_s: f64,
}

impl RouteSpec {
    pub fn new(
        channels: Vec<VacuumExtension>,
        repeaters: Vec<VacuumExtension>,
        dephase_s: f64,
    ) -> Result<Self> {
        if channels.is_empty() {
            return Err(Error::EmptyChain);
        }
        if repeaters.len() + 1 != channels.len() {
            return Err(Error::InvalidConfig(format!(
                "{} channels need {} repeaters, got {}",
                channels.len(),
                channels.len() - 1,
                repeaters.len()
            )));
        }
        if !(0.0..=0.5).contains(&dephase_s) {
            return Err(Error::ProbabilityRange(format!("dephasing s = {dephase_s} outside [0, 0.5]")));
        }
        Ok(Self {
            channels,
            repeaters,
            dephase_s,
        })
    }

    /// `n` copies of `ext` joined by identity repeaters.
    pub fn identical(ext: &VacuumExtension, n: usize, dephase_s: f64) -> Result<Self> {
        Self::with_repeater(ext, &identity_extension(ext.channel().dim_out()), n, dephase_s)
    }

    /// `n` copies of `ext` with the same repeater between each pair.
    pub fn with_repeater(
        ext: &VacuumExtension,
        repeater: &VacuumExtension,
        n: usize,
        dephase_s: f64,
    ) -> Result<Self> {
        Self::new(
            vec![ext.clone(); n],
            vec![repeater.clone(); n.saturating_sub(1)],
            dephase_s,
        )
    }

    pub fn gamma(&self) -> f64 {
        gamma_factor(self.dephase_s, self.channels.len()).expect("validated in constructor")
    }
}

/// ℰ_n ∘ ℛ_{n−1} ∘ … ∘ ℛ₁ ∘ ℰ₁ with F_eff = F_n G_{n−1} … G₁ F₁.
pub fn compose_branch(spec: &RouteSpec) -> Result<Branch> {
    let (first, rest) = spec.channels.split_first().ok_or(Error::EmptyChain)?;
    let mut branch = Branch::from_extension(first);
    for (repeater, link) in spec.repeaters.iter().zip(rest) {
        branch = branch.then_repeater(repeater)?.then_link(link)?;
    }
    Ok(branch)
}

/// Density matrix of the path qubit.
#[derive(Debug, Clone, Serialize)]
pub struct PathState(ComplexMatrix);

impl PathState {
    pub fn new(omega: ComplexMatrix) -> Result<Self> {
        if omega.dims() != (2, 2) {
            return Err(Error::DimensionMismatch("path state must be 2x2".into()));
        }
        density_spectrum(&omega)?;
        Ok(Self(omega))
    }

    /// |+⟩⟨+|
    pub fn plus() -> Self {
        Self(ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]))
    }

    /// Definite path `k`.
    pub fn definite(k: usize) -> Self {
        Self(ComplexMatrix::unit(2, 2, k, k))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }
}

/// γ = (1 − 2s)ⁿ, the coherence surviving n dephasing steps.
pub fn gamma_factor(s: f64, n: usize) -> Result<f64> {
    if !(0.0..=0.5).contains(&s) {
        return Err(Error::ProbabilityRange(format!("dephasing s = {s} outside [0, 0.5]")));
    }
    Ok((1.0 - 2.0 * s).powi(n as i32))
}

/// The closed-form superposition map ρ ↦ Σ_ab ω_ab c_ab X_ab(ρ) ⊗ |a⟩⟨b|,
/// with X_00 = ℰ₁(ρ), X_11 = ℰ₂(ρ), X_01 = F₁ρF₂†, X_10 = F₂ρF₁† and
/// c_01 = c_10 = γ.
#[derive(Debug, Clone)]
pub struct SuperposedMap<'a> {
    first: &'a Branch,
    second: &'a Branch,
    omega: &'a PathState,
    gamma: f64,
}

impl<'a> SuperposedMap<'a> {
    pub fn new(first: &'a Branch, second: &'a Branch, omega: &'a PathState, gamma: f64) -> Result<Self> {
        if first.channel.dim_in() != second.channel.dim_in()
            || first.channel.dim_out() != second.channel.dim_out()
        {
            return Err(Error::DimensionMismatch("branches have different dimensions".into()));
        }
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::GammaRange(gamma));
        }
        Ok(Self {
            first,
            second,
            omega,
            gamma,
        })
    }
}

impl QuantumMap for SuperposedMap<'_> {
    fn dim_in(&self) -> usize {
        self.first.channel.dim_in()
    }

    fn dim_out(&self) -> usize {
        2 * self.first.channel.dim_out()
    }

    fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        let d = self.first.channel.dim_out();
        let w = self.omega.matrix();
        let (f1, f2) = (&self.first.f_op, &self.second.f_op);
        let blocks = [
            [self.first.channel.apply(rho), &(f1 * rho) * &f2.adjoint()],
            [&(f2 * rho) * &f1.adjoint(), self.second.channel.apply(rho)],
        ];
        let mut out = ComplexMatrix::zeros(2 * d, 2 * d);
        for (a, row) in blocks.iter().enumerate() {
            for (b, x) in row.iter().enumerate() {
                let coeff = w[(a, b)] * if a == b { 1.0 } else { self.gamma };
                for m in 0..d {
                    for mp in 0..d {
                        out[(m * 2 + a, mp * 2 + b)] = coeff * x[(m, mp)];
                    }
                }
            }
        }
        out
    }
}

/// Superposition of two branches as a channel from message to message ⊗ path.
pub fn superpose(first: &Branch, second: &Branch, omega: &PathState, gamma: f64) -> Result<KrausChannel> {
    let map = SuperposedMap::new(first, second, omega, gamma)?;
    let (din, dout) = (map.dim_in(), map.dim_out());
    let mut choi = ComplexMatrix::zeros(din * dout, din * dout);
    for a in 0..din {
        for b in 0..din {
            let image = map.apply(&ComplexMatrix::unit(din, din, a, b));
            for i in 0..dout {
                for j in 0..dout {
                    choi[(a * dout + i, b * dout + j)] = image[(i, j)];
                }
            }
        }
    }
    KrausChannel::from_choi(&choi, din, dout)
}

/// Convenience: the superposition of two identical copies of `spec`'s
/// branch with path |+⟩ and the route's accumulated dephasing.
pub fn superpose_route(spec: &RouteSpec) -> Result<KrausChannel> {
    let branch = compose_branch(spec)?;
    superpose(&branch, &branch, &PathState::plus(), spec.gamma())
}

/// Ẽ_i as explicit (d_out+1)×(d_in+1) matrices, vacuum last.
fn block_kraus(ext: &VacuumExtension) -> Vec<ComplexMatrix> {
    let (dout, din) = (ext.channel().dim_out(), ext.channel().dim_in());
    ext.pairs()
        .map(|(e, a)| {
            let mut m = e.embed(dout + 1, din + 1);
            m[(dout, din)] = a;
            m
        })
        .collect()
}

/// Isometry message ⊗ path → one-particle sector of the two-mode space.
fn mode_isometry(d: usize) -> ComplexMatrix {
    let modes = d + 1;
    let mut u = ComplexMatrix::zeros(modes * modes, 2 * d);
    for m in 0..d {
        u[(m * modes + d, m * 2)] = C64::new(1.0, 0.0);
        u[(d * modes + m, m * 2 + 1)] = C64::new(1.0, 0.0);
    }
    u
}

/// Superposition computed in the two-mode picture: embed ρ ⊗ ω, run
/// Ẽ⁽¹⁾ ⊗ Ẽ⁽²⁾, and map the one-particle sector back.
pub fn mode_picture_superpose(
    ext1: &VacuumExtension,
    ext2: &VacuumExtension,
    rho: &ComplexMatrix,
    omega: &PathState,
) -> Result<ComplexMatrix> {
    let (c1, c2) = (ext1.channel(), ext2.channel());
    if c1.dim_in() != c2.dim_in() || c1.dim_out() != c2.dim_out() {
        return Err(Error::DimensionMismatch("extensions have different dimensions".into()));
    }
    if rho.dims() != (c1.dim_in(), c1.dim_in()) {
        return Err(Error::DimensionMismatch("input state does not match channel".into()));
    }
    let u_in = mode_isometry(c1.dim_in());
    let u_out = mode_isometry(c1.dim_out());
    let state = u_in.sandwich(&kron(rho, omega.matrix()));
    let blocks1 = block_kraus(ext1);
    let blocks2 = block_kraus(ext2);
    let n = u_out.rows();
    let mut evolved = ComplexMatrix::zeros(n, n);
    for k1 in &blocks1 {
        for k2 in &blocks2 {
            evolved = &evolved + &kron(k1, k2).sandwich(&state);
        }
    }
    Ok(u_out.adjoint().sandwich(&evolved))
}

/// Fixed point of repeated application, required to be the same from the
/// maximally mixed state and from every basis projector.
fn channel_fixed_point(ch: &KrausChannel) -> Result<ComplexMatrix> {
    let d = ch.dim_in();
    if d != ch.dim_out() {
        return Err(Error::NoFixedPoint);
    }
    let iterate = |mut rho: ComplexMatrix| -> Result<ComplexMatrix> {
        for _ in 0..FIXED_POINT_MAX_ITERS {
            let next = ch.apply(&rho);
            let delta = next.max_abs_diff(&rho);
            rho = next;
            if delta < FIXED_POINT_TOL {
                return Ok(rho);
            }
        }
        Err(Error::NoFixedPoint)
    };
    let limit = iterate(ComplexMatrix::identity(d).scale_real(1.0 / d as f64))?;
    for k in 0..d {
        let other = iterate(ComplexMatrix::unit(d, d, k, k))?;
        if other.max_abs_diff(&limit) > 1e3 * FIXED_POINT_TOL {
            return Err(Error::NoFixedPoint);
        }
    }
    Ok(limit)
}

/// Projector onto {v : F v = v}. For a contraction this is also the kernel
/// of (F − I)†(F − I).
fn unit_eigenspace_projector(f: &ComplexMatrix) -> Option<ComplexMatrix> {
    let d = f.rows();
    let shifted = f - &ComplexMatrix::identity(d);
    let gram = &shifted.adjoint() * &shifted;
    let sys = hermitian_eig(&gram).expect("Gram matrix is Hermitian");
    let mut proj = ComplexMatrix::zeros(d, d);
    let mut rank = 0;
    for (k, &lambda) in sys.eigenvalues.iter().enumerate() {
        if lambda <= UNIT_SINGULAR_TOL * UNIT_SINGULAR_TOL {
            proj = &proj + &ComplexMatrix::projector(&sys.eigenvector(k));
            rank += 1;
        }
    }
    (rank > 0).then_some(proj)
}

/// Limit n → ∞ of the superposition of two identical n-link sequences of
/// a vacuum extension with path |+⟩, as a channel on the message.
#[derive(Debug, Clone)]
pub struct AsymptoticMap {
    fixed: ComplexMatrix,
    unit_projector: ComplexMatrix,
    sigma_max: f64,
}

impl AsymptoticMap {
    pub fn new(ext: &VacuumExtension) -> Result<Self> {
        let f = ext.vacuum_interference();
        if !f.is_square() {
            return Err(Error::DimensionMismatch("asymptotic limit needs equal input and output".into()));
        }
        let sigma_max = singular_values(&f)[0];
        if (sigma_max - 1.0).abs() > UNIT_SINGULAR_TOL {
            return Err(Error::NoUnitEigenvalue(sigma_max));
        }
        let unit_projector = unit_eigenspace_projector(&f).ok_or(Error::NoUnitEigenvalue(sigma_max))?;
        let fixed = channel_fixed_point(ext.channel())?;
        Ok(Self {
            fixed,
            unit_projector,
            sigma_max,
        })
    }

    /// σ_∞, the common limit of the channel iterates.
    pub fn fixed_point(&self) -> &ComplexMatrix {
        &self.fixed
    }

    /// Projector Π onto the fixed vectors of F.
    pub fn unit_projector(&self) -> &ComplexMatrix {
        &self.unit_projector
    }

    pub fn sigma_max(&self) -> f64 {
        self.sigma_max
    }
}

impl QuantumMap for AsymptoticMap {
    fn dim_in(&self) -> usize {
        self.fixed.rows()
    }

    fn dim_out(&self) -> usize {
        2 * self.fixed.rows()
    }

    fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        limit_output(&self.fixed, &self.unit_projector.sandwich(rho))
    }
}

/// (σ_∞ ± ΠρΠ)/2 ⊗ |±⟩⟨±|, the limiting output of [`AsymptoticMap`].
pub fn asymptotic_superposition(ext: &VacuumExtension, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    let map = AsymptoticMap::new(ext)?;
    if rho.dims() != (map.dim_in(), map.dim_in()) {
        return Err(Error::DimensionMismatch("input state does not match channel".into()));
    }
    Ok(map.apply(rho))
}

/// (σ + c)/2 ⊗ |+⟩⟨+| + (σ − c)/2 ⊗ |−⟩⟨−|
pub(crate) fn limit_output(sigma: &ComplexMatrix, coherent: &ComplexMatrix) -> ComplexMatrix {
    let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
    let minus = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, 0.5]]);
    let a = (sigma + coherent).scale_real(0.5);
    let b = (sigma - coherent).scale_real(0.5);
    &kron(&a, &plus) + &kron(&b, &minus)
}

/// Checks the output of a superposition is a unit-trace state.
pub fn is_normalised_output(out: &ComplexMatrix) -> bool {
    (out.trace().re - 1.0).abs() <= TRACE_TOL
}

/// (ℰ(ρ) ± γ FρF†)/2 on the |±⟩ path components, read back from a
/// message ⊗ path output.
pub fn path_components(out: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let d = out.rows() / 2;
    let plus = [C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2];
    let minus = [plus[0], -plus[0]];
    let project = |v: &[C64; 2]| {
        ComplexMatrix::from_fn(d, d, |m, mp| {
            let mut acc = C64::new(0.0, 0.0);
            for a in 0..2 {
                for b in 0..2 {
                    acc += v[a].conj() * out[(m * 2 + a, mp * 2 + b)] * v[b];
                }
            }
            acc
        })
    };
    (project(&plus), project(&minus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{bac_extension, physical_z_extension, z_channel, BinaryAsymmetricParams};
    use crate::numerics::c64;

    fn ket(k: usize) -> ComplexMatrix {
        ComplexMatrix::unit(2, 2, k, k)
    }

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma_factor(0.0, 17).unwrap(), 1.0);
        assert_eq!(gamma_factor(0.5, 3).unwrap(), 0.0);
        assert!((gamma_factor(0.1, 10).unwrap() - 0.8f64.powi(10)).abs() < 1e-15);
        assert!((gamma_factor(0.1, 10).unwrap() - 0.107_374_182_4).abs() < 1e-12);
        assert!(gamma_factor(0.6, 1).is_err());
    }

    #[test]
    fn three_z_links_compose_to_effective_z() {
        let ext = physical_z_extension(0.5).unwrap();
        let branch = compose_branch(&RouteSpec::identical(&ext, 3, 0.0).unwrap()).unwrap();
        assert_eq!(branch.links(), 3);
        assert!(branch.f_op().max_abs_diff(&ket(0)) < 1e-15);
        let expected = z_channel(1.0 - 0.125).unwrap();
        assert!(branch.channel().choi().max_abs_diff(&expected.choi()) < 1e-12);
        assert!(branch.channel().len() <= 4);
    }

    #[test]
    fn single_link_branch() {
        let ext = physical_z_extension(0.2).unwrap();
        let branch = compose_branch(&RouteSpec::new(vec![ext.clone()], vec![], 0.0).unwrap()).unwrap();
        assert!(branch.channel().choi().max_abs_diff(&ext.channel().choi()) < 1e-15);
        assert!(branch.f_op().max_abs_diff(&ext.vacuum_interference()) < 1e-15);
    }

    #[test]
    fn route_spec_validation() {
        let ext = physical_z_extension(0.2).unwrap();
        assert!(matches!(RouteSpec::new(vec![], vec![], 0.0), Err(Error::EmptyChain)));
        assert!(RouteSpec::new(vec![ext.clone(); 2], vec![], 0.0).is_err());
        assert!(RouteSpec::identical(&ext, 2, 0.7).is_err());
    }

    #[test]
    fn zero_is_fixed_with_full_coherence() {
        let ext = physical_z_extension(0.37).unwrap();
        let b = Branch::from_extension(&ext);
        let ch = superpose(&b, &b, &PathState::plus(), 1.0).unwrap();
        let out = ch.apply(&ket(0));
        let expected = kron(&ket(0), PathState::plus().matrix());
        assert!(out.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn zero_gamma_is_classical_sequence() {
        let ext = physical_z_extension(0.5).unwrap();
        let branch = compose_branch(&RouteSpec::identical(&ext, 4, 0.5).unwrap()).unwrap();
        let ch = superpose(&branch, &branch, &PathState::plus(), 0.0).unwrap();
        let rho = ComplexMatrix::from_real_rows(&[&[0.3, 0.2], &[0.2, 0.7]]);
        let expected = kron(&branch.channel().apply(&rho), &ComplexMatrix::identity(2).scale_real(0.5));
        assert!(ch.apply(&rho).max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn bac_on_one_has_no_coherent_term() {
        let ext = bac_extension(BinaryAsymmetricParams { q: 0.2, p: 0.5 }).unwrap();
        let b = Branch::from_extension(&ext);
        let out = superpose(&b, &b, &PathState::plus(), 1.0).unwrap().apply(&ket(1));
        let (plus, minus) = path_components(&out);
        let half = ext.channel().apply(&ket(1)).scale_real(0.5);
        assert!(plus.max_abs_diff(&half) < 1e-12);
        assert!(minus.max_abs_diff(&half) < 1e-12);
    }

    #[test]
    fn superpose_rejects_bad_gamma() {
        let b = Branch::from_extension(&physical_z_extension(0.5).unwrap());
        assert!(matches!(
            superpose(&b, &b, &PathState::plus(), 1.5),
            Err(Error::GammaRange(_))
        ));
    }

    #[test]
    fn mode_picture_trivial_cases() {
        let id = identity_extension(2);
        let rho = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c64(0.6, 0.0),
            (1, 1) => c64(0.4, 0.0),
            (0, 1) => c64(0.1, 0.3),
            _ => c64(0.1, -0.3),
        });
        let omega = PathState::new(ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => c64(0.3, 0.0),
            (1, 1) => c64(0.7, 0.0),
            (0, 1) => c64(0.2, 0.1),
            _ => c64(0.2, -0.1),
        }))
        .unwrap();
        let out = mode_picture_superpose(&id, &id, &rho, &omega).unwrap();
        assert!(out.max_abs_diff(&kron(&rho, omega.matrix())) < 1e-15);

        let z = physical_z_extension(0.5).unwrap();
        let out = mode_picture_superpose(&z, &id, &rho, &PathState::definite(0)).unwrap();
        assert!(out.max_abs_diff(&kron(&z.channel().apply(&rho), &ket(0))) < 1e-15);
    }

    #[test]
    fn mode_picture_matches_closed_form_for_z() {
        let z = physical_z_extension(0.5).unwrap();
        let plus = PathState::plus();
        let rho = plus.matrix().clone();
        let oracle = mode_picture_superpose(&z, &z, &rho, &plus).unwrap();
        // (ℰ(ρ) ± FρF†)/2 with ℰ(ρ) = diag(.75, .25), FρF† = diag(.5, 0)
        let (p, m) = path_components(&oracle);
        assert!(p.max_abs_diff(&ComplexMatrix::diag_real(&[0.625, 0.125])) < 1e-15);
        assert!(m.max_abs_diff(&ComplexMatrix::diag_real(&[0.125, 0.125])) < 1e-15);
        let b = Branch::from_extension(&z);
        let closed = superpose(&b, &b, &plus, 1.0).unwrap().apply(&rho);
        assert!(closed.max_abs_diff(&oracle) < 1e-12);
    }

    #[test]
    fn asymptotic_examples() {
        let z = physical_z_extension(0.5).unwrap();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let out = asymptotic_superposition(&z, &ket(1)).unwrap();
        assert!(out.max_abs_diff(&kron(&ket(0), &half)) < 1e-9);
        let out = asymptotic_superposition(&z, &ket(0)).unwrap();
        assert!(out.max_abs_diff(&kron(&ket(0), PathState::plus().matrix())) < 1e-9);

        let bac = bac_extension(BinaryAsymmetricParams { q: 0.2, p: 0.5 }).unwrap();
        assert!(matches!(
            asymptotic_superposition(&bac, &ket(0)),
            Err(Error::NoUnitEigenvalue(s)) if (s - 0.8).abs() < 1e-12
        ));
        // pure dephasing has no unique fixed point
        let dephase = physical_z_extension(0.0).unwrap();
        assert!(matches!(asymptotic_superposition(&dephase, &ket(1)), Err(Error::NoFixedPoint)));
    }
}
