use super::eigen::hermitian_eig;
use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::tolerances::{NEGATIVITY_CLAMP, TRACE_TOL};

/// Checks that `rho` is a density matrix and returns its clamped spectrum.
pub fn density_spectrum(rho: &ComplexMatrix) -> Result<Vec<f64>> {
    let sys = hermitian_eig(rho).map_err(|e| match e {
        Error::NotHermitian(d) => Error::NotDensityMatrix(format!("not Hermitian (defect {d:.3e})")),
        other => other,
    })?;
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
        return Err(Error::NotDensityMatrix(format!("trace {trace}")));
    }
    let mut eigs = sys.eigenvalues;
    for lambda in &mut eigs {
        if *lambda < 0.0 {
            if *lambda < -NEGATIVITY_CLAMP {
                return Err(Error::NotDensityMatrix(format!("negative eigenvalue {lambda:.3e}")));
            }
            *lambda = 0.0;
        }
    }
    Ok(eigs)
}

/// Shannon entropy in bits of a probability vector, with 0·log 0 = 0.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    -probs
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}

/// H₂(x) in bits.
pub fn binary_entropy(x: f64) -> f64 {
    shannon_entropy(&[x, 1.0 - x])
}

/// S(ρ) = −Tr ρ log₂ ρ.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    Ok(shannon_entropy(&density_spectrum(rho)?).max(0.0))
}
