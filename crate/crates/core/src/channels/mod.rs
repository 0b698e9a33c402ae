//! Kraus channels, vacuum extensions and the channel families used along
//! network links.

mod builders;
mod spec;

pub use builders::{
    appendix_b_extension, appendix_b_repeater, bac_extension, identity_extension,
    orthogonal_complement, physical_z_extension, unitary_extension, variable_basis_z,
    variable_basis_z_extension, z_channel, BinaryAsymmetricParams,
};
pub use spec::{ChannelKind, ChannelSpec};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{hermitian_eig, singular_values, ComplexMatrix, C64};
use crate::tolerances::{CHOI_DROP, COMPLETENESS_TOL};

/// Anything that maps density matrices to density matrices.
pub trait QuantumMap: Sync {
    fn dim_in(&self) -> usize;
    fn dim_out(&self) -> usize;
    fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix;
}

/// A completely positive trace-preserving map in Kraus form.
#[derive(Debug, Clone, Serialize)]
pub struct KrausChannel {
    dim_in: usize,
    dim_out: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let first = kraus.first().ok_or(Error::EmptyKraus)?;
        let (dim_out, dim_in) = first.dims();
        if let Some(bad) = kraus.iter().find(|k| k.dims() != (dim_out, dim_in)) {
            return Err(Error::DimensionMismatch(format!(
                "Kraus operator {}x{} in a {dim_out}x{dim_in} list",
                bad.rows(),
                bad.cols()
            )));
        }
        let ch = Self {
            dim_in,
            dim_out,
            kraus,
        };
        let defect = ch.completeness_defect();
        if defect > COMPLETENESS_TOL {
            return Err(Error::Incomplete(defect));
        }
        Ok(ch)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim_in: dim,
            dim_out: dim,
            kraus: vec![ComplexMatrix::identity(dim)],
        }
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn len(&self) -> usize {
        self.kraus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kraus.is_empty()
    }

    /// max |Σ E†E − I|
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.kraus {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim_in))
    }

    /// `self ∘ first`, i.e. `first` acts before `self`.
    pub fn after(&self, first: &KrausChannel) -> Result<KrausChannel> {
        if first.dim_out != self.dim_in {
            return Err(Error::DimensionMismatch(format!(
                "cannot feed a {}-dimensional output into a {}-dimensional input",
                first.dim_out, self.dim_in
            )));
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| first.kraus.iter().map(move |b| a * b))
            .collect();
        Ok(KrausChannel {
            dim_in: first.dim_in,
            dim_out: self.dim_out,
            kraus,
        })
    }

    /// Choi matrix Σ_ab |a⟩⟨b| ⊗ Φ(|a⟩⟨b|), indexed (a·dim_out + i, b·dim_out + j).
    pub fn choi(&self) -> ComplexMatrix {
        let n = self.dim_in * self.dim_out;
        let mut j = ComplexMatrix::zeros(n, n);
        for k in &self.kraus {
            let v = vectorize(k);
            for r in 0..n {
                if v[r] == C64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    j[(r, c)] += v[r] * v[c].conj();
                }
            }
        }
        j
    }

    /// Rebuilds a minimal Kraus set from a Choi matrix.
    pub fn from_choi(choi: &ComplexMatrix, dim_in: usize, dim_out: usize) -> Result<KrausChannel> {
        if choi.dims() != (dim_in * dim_out, dim_in * dim_out) {
            return Err(Error::DimensionMismatch(format!(
                "Choi matrix {}x{} for a {dim_in}->{dim_out} channel",
                choi.rows(),
                choi.cols()
            )));
        }
        let sys = hermitian_eig(choi)?;
        let mut kraus = Vec::new();
        for (idx, &lambda) in sys.eigenvalues.iter().enumerate().rev() {
            if lambda <= CHOI_DROP {
                continue;
            }
            let scale = lambda.sqrt();
            let v = sys.eigenvector(idx);
            kraus.push(ComplexMatrix::from_fn(dim_out, dim_in, |i, a| {
                v[a * dim_out + i] * scale
            }));
        }
        KrausChannel::new(kraus)
    }
}

fn vectorize(k: &ComplexMatrix) -> Vec<C64> {
    let (dim_out, dim_in) = k.dims();
    (0..dim_in * dim_out)
        .map(|idx| k[(idx % dim_out, idx / dim_out)])
        .collect()
}

impl QuantumMap for KrausChannel {
    fn dim_in(&self) -> usize {
        self.dim_in
    }

    fn dim_out(&self) -> usize {
        self.dim_out
    }

    fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(rho.dims(), (self.dim_in, self.dim_in), "input dimension mismatch");
        let mut out = ComplexMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.kraus {
            out = &out + &k.sandwich(rho);
        }
        out
    }
}

/// Replaces the Kraus set with the Choi-eigenvector one: same channel, at
/// most `dim_in · dim_out` operators.
pub fn compress_kraus(ch: &KrausChannel) -> KrausChannel {
    KrausChannel::from_choi(&ch.choi(), ch.dim_in, ch.dim_out)
        .expect("the Choi matrix of a valid channel is Hermitian and rebuilds a complete set")
}

/// A channel on the one-particle sector plus the amplitudes α_i with which
/// each Kraus operator acts on the vacuum: Ẽ_i = E_i ⊕ α_i |vac⟩⟨vac|.
#[derive(Debug, Clone, Serialize)]
pub struct VacuumExtension {
    channel: KrausChannel,
    amplitudes: Vec<C64>,
}

impl VacuumExtension {
    pub fn new(channel: KrausChannel, amplitudes: Vec<C64>) -> Result<Self> {
        if amplitudes.len() != channel.len() {
            return Err(Error::AmplitudeCount {
                amplitudes: amplitudes.len(),
                kraus: channel.len(),
            });
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm - 1.0).abs() > COMPLETENESS_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            channel,
            amplitudes,
        })
    }

    /// Builds from (E_i, α_i) pairs, dropping pairs where both vanish.
    pub fn from_pairs(pairs: Vec<(ComplexMatrix, C64)>) -> Result<Self> {
        let (kraus, amplitudes): (Vec<_>, Vec<_>) = pairs
            .into_iter()
            .filter(|(e, a)| !(e.is_zero(0.0) && a.norm() == 0.0))
            .unzip();
        Self::new(KrausChannel::new(kraus)?, amplitudes)
    }

    pub fn channel(&self) -> &KrausChannel {
        &self.channel
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&ComplexMatrix, C64)> {
        self.channel.kraus.iter().zip(self.amplitudes.iter().copied())
    }

    /// F = Σ ᾱ_i E_i
    pub fn vacuum_interference(&self) -> ComplexMatrix {
        let mut f = ComplexMatrix::zeros(self.channel.dim_out, self.channel.dim_in);
        for (e, a) in self.pairs() {
            f = &f + &e.scale(a.conj());
        }
        f
    }

    pub fn sigma_max(&self) -> f64 {
        singular_values(&self.vacuum_interference())[0]
    }
}

pub fn vacuum_interference(ext: &VacuumExtension) -> ComplexMatrix {
    ext.vacuum_interference()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::c64;

    #[test]
    fn rejects_incomplete_and_empty() {
        assert!(matches!(KrausChannel::new(vec![]), Err(Error::EmptyKraus)));
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(matches!(KrausChannel::new(vec![half]), Err(Error::Incomplete(_))));
    }

    #[test]
    fn amplitude_checks() {
        let id = KrausChannel::identity(2);
        assert!(matches!(
            VacuumExtension::new(id.clone(), vec![c64(0.5, 0.0)]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            VacuumExtension::new(id.clone(), vec![]),
            Err(Error::AmplitudeCount { .. })
        ));
        let ext = VacuumExtension::new(id, vec![c64(1.0, 0.0)]).unwrap();
        assert_eq!(ext.vacuum_interference(), ComplexMatrix::identity(2));
    }

    #[test]
    fn minimal_channel_compresses_to_same_choi() {
        let ch = z_channel(0.3).unwrap();
        let small = compress_kraus(&ch);
        assert!(small.choi().max_abs_diff(&ch.choi()) < 1e-10);
        assert!(small.len() <= 4);
    }
}
