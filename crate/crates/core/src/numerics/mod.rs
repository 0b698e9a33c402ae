//! Dense complex linear algebra and entropy primitives for dimensions ≤ 9.

mod eigen;
mod entropy;
mod matrix;

pub use eigen::{hermitian_eig, singular_values, top_right_singular, HermitianEigenSystem};
pub use entropy::{binary_entropy, density_spectrum, shannon_entropy, von_neumann_entropy};
pub use matrix::{c64, inner, kron, vector_norm, ComplexMatrix, C64};

/// Normalises `v`, or `None` when it is numerically zero.
pub fn normalized(v: &[C64]) -> Option<Vec<C64>> {
    let n = vector_norm(v);
    (n > 1e-300).then(|| v.iter().map(|z| z / n).collect())
}

/// Orthonormal basis of C^d whose first vector is `first` (assumed unit).
pub fn complete_basis(first: &[C64]) -> Vec<Vec<C64>> {
    let d = first.len();
    let mut basis = vec![first.to_vec()];
    for k in 0..d {
        if basis.len() == d {
            break;
        }
        let mut v: Vec<C64> = (0..d).map(|i| c64(if i == k { 1.0 } else { 0.0 }, 0.0)).collect();
        for b in &basis {
            let overlap = inner(b, &v);
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi -= overlap * bi;
            }
        }
        if vector_norm(&v) > 1e-6 {
            basis.push(normalized(&v).expect("non-zero residual"));
        }
    }
    basis
}
