#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use superpath::channels::{KrausChannel, VacuumExtension};
use superpath::numerics::{c64, inner, ComplexMatrix, C64};
use superpath::routing::PathState;

pub const LOG2_5_4: f64 = 0.321_928_094_887_362_3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut impl Rng) -> C64 {
    c64(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_unit_vector(rng: &mut impl Rng, d: usize) -> Vec<C64> {
    loop {
        let v: Vec<C64> = (0..d).map(|_| random_complex(rng)).collect();
        if let Some(u) = superpath::numerics::normalized(&v) {
            return u;
        }
    }
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| random_complex(rng))
}

pub fn random_hermitian(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let a = random_matrix(rng, d, d);
    (&a + &a.adjoint()).scale_real(0.5)
}

pub fn random_density(rng: &mut impl Rng, d: usize) -> ComplexMatrix {
    let g = random_matrix(rng, d, d);
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

pub fn random_path_state(rng: &mut impl Rng) -> PathState {
    PathState::new(random_density(rng, 2)).unwrap()
}

/// Columns of a random (rows × cols) isometry, rows ≥ cols.
fn random_isometry(rng: &mut impl Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let mut columns: Vec<Vec<C64>> = Vec::new();
    while columns.len() < cols {
        let mut v: Vec<C64> = (0..rows).map(|_| random_complex(rng)).collect();
        for u in &columns {
            let overlap = inner(u, &v);
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= overlap * ui;
            }
        }
        if let Some(u) = superpath::numerics::normalized(&v) {
            columns.push(u);
        }
    }
    ComplexMatrix::from_fn(rows, cols, |i, j| columns[j][i])
}

/// Channel with `k` Kraus operators cut from a random Stinespring isometry.
pub fn random_channel(rng: &mut impl Rng, d_in: usize, d_out: usize, k: usize) -> KrausChannel {
    let v = random_isometry(rng, k * d_out, d_in);
    let kraus = (0..k).map(|j| v.block(j * d_out, 0, d_out, d_in)).collect();
    KrausChannel::new(kraus).unwrap()
}

pub fn random_extension(rng: &mut impl Rng, d_in: usize, d_out: usize, k: usize) -> VacuumExtension {
    let channel = random_channel(rng, d_in, d_out, k);
    let amplitudes = random_unit_vector(rng, k);
    VacuumExtension::new(channel, amplitudes).unwrap()
}
