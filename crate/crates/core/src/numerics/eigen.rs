//! Cyclic Jacobi eigensolver for small Hermitian matrices.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerances::HERMITIAN_TOL;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigenSystem {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenSystem {
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        self.eigenvectors.column_vec(k)
    }

    /// V Λ V†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let v = &self.eigenvectors;
        let lambda = ComplexMatrix::diag_real(&self.eigenvalues);
        &(v * &lambda) * &v.adjoint()
    }
}

pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigenSystem> {
    let defect = a.hermiticity_defect().ok_or(Error::NotSquare {
        rows: a.rows(),
        cols: a.cols(),
    })?;
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(jacobi(a))
}

/// Rotates the (p, q) plane by the 2×2 unitary `w`: A ← W† A W, V ← V W.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, w: [[C64; 2]; 2]) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * w[0][0] + akq * w[1][0];
        a[(k, q)] = akp * w[0][1] + akq * w[1][1];
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = w[0][0].conj() * apk + w[1][0].conj() * aqk;
        a[(q, k)] = w[0][1].conj() * apk + w[1][1].conj() * aqk;
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w[0][0] + vkq * w[1][0];
        v[(k, q)] = vkp * w[0][1] + vkq * w[1][1];
    }
}

fn jacobi(input: &ComplexMatrix) -> HermitianEigenSystem {
    let n = input.rows();
    // symmetrise so that rounding in the caller's matrix cannot leak in
    let mut a = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (input[(i, j)] + input[(j, i)].conj()));
    let mut v = ComplexMatrix::identity(n);
    let scale = a.frobenius_norm().max(f64::MIN_POSITIVE);

    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // real rotation on the phase-stripped block [[app, r], [r, aqq]]
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let phase = apq / r; // e^{iφ}
                let pc = phase.conj();
                let w = [
                    [C64::new(c, 0.0), C64::new(s, 0.0)],
                    [-pc * s, pc * c],
                ];
                rotate(&mut a, &mut v, p, q, w);
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues = order.iter().map(|&i| a[(i, i)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| v[(i, order[k])]);
    HermitianEigenSystem {
        eigenvalues,
        eigenvectors,
    }
}

/// Singular values in descending order, computed as √eig(A†A).
pub fn singular_values(a: &ComplexMatrix) -> Vec<f64> {
    let gram = &a.adjoint() * a;
    let mut sv: Vec<f64> = jacobi(&gram)
        .eigenvalues
        .into_iter()
        .map(|x| x.max(0.0).sqrt())
        .collect();
    sv.reverse();
    sv
}

/// Largest singular value with a unit vector attaining it (‖A φ‖ = σ_max).
pub fn top_right_singular(a: &ComplexMatrix) -> (f64, Vec<C64>) {
    let gram = &a.adjoint() * a;
    let sys = jacobi(&gram);
    let k = sys.eigenvalues.len() - 1;
    (sys.eigenvalues[k].max(0.0).sqrt(), sys.eigenvector(k))
}
