//! Classical capacity: Holevo lower bounds for quantum channels and exact
//! capacities of binary classical channels.

mod classical;
mod simplex;

pub use classical::{bac_capacity, bac_transition, blahut_arimoto, effective_bac_params, z_capacity};
pub use simplex::{nelder_mead, SimplexOptions, SimplexResult};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channels::QuantumMap;
use crate::error::{Error, Result};
use crate::numerics::{c64, density_spectrum, hermitian_eig, shannon_entropy, ComplexMatrix, C64};

/// Input states with prior probabilities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Ensemble {
    pub states: Vec<ComplexMatrix>,
    pub priors: Vec<f64>,
}

impl Ensemble {
    pub fn new(states: Vec<ComplexMatrix>, priors: Vec<f64>) -> Result<Self> {
        if states.is_empty() || states.len() != priors.len() {
            return Err(Error::InvalidConfig(format!(
                "{} states with {} priors",
                states.len(),
                priors.len()
            )));
        }
        if priors.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::ProbabilityRange("ensemble prior".into()));
        }
        let total: f64 = priors.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::ProbabilityRange(format!("priors sum to {total}")));
        }
        for s in &states {
            density_spectrum(s)?;
        }
        Ok(Self { states, priors })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AnalyticExact,
    HolevoLower,
    BlahutArimoto,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CapacityBound {
    pub value: f64,
    pub kind: BoundKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Ensemble>,
}

/// Entropy of a channel output; tiny negative eigenvalues from rounding are clamped.
fn output_entropy(rho: &ComplexMatrix) -> f64 {
    let sys = hermitian_eig(rho).expect("channel outputs are Hermitian");
    let eigs: Vec<f64> = sys.eigenvalues.into_iter().map(|x| x.max(0.0)).collect();
    shannon_entropy(&eigs)
}

/// χ = S(Σ p_x ℰ(ρ_x)) − Σ p_x S(ℰ(ρ_x)), in bits.
pub fn holevo_information<M: QuantumMap + ?Sized>(ensemble: &Ensemble, map: &M) -> Result<f64> {
    let d = map.dim_in();
    if let Some(bad) = ensemble.states.iter().find(|s| s.dims() != (d, d)) {
        return Err(Error::DimensionMismatch(format!(
            "state is {}x{}, channel takes {d}x{d}",
            bad.rows(),
            bad.cols()
        )));
    }
    let dout = map.dim_out();
    let mut average = ComplexMatrix::zeros(dout, dout);
    let mut conditional = 0.0;
    for (state, &prior) in ensemble.states.iter().zip(&ensemble.priors) {
        if prior == 0.0 {
            continue;
        }
        let out = map.apply(state);
        conditional += prior * output_entropy(&out);
        average = &average + &out.scale_real(prior);
    }
    Ok((output_entropy(&average) - conditional).max(0.0))
}

/// Grid and refinement settings for [`two_state_lower_bound_with`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LowerBoundConfig {
    pub theta_points: usize,
    pub phi_points: usize,
    pub prior_points: usize,
    pub tol: f64,
    /// How many of the best grid cells get a simplex refinement.
    pub refine_starts: usize,
}

impl Default for LowerBoundConfig {
    fn default() -> Self {
        Self {
            theta_points: 32,
            phi_points: 32,
            prior_points: 17,
            tol: 1e-6,
            refine_starts: 3,
        }
    }
}

/// cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩ and its orthogonal partner.
fn basis_pair(theta: f64, phi: f64) -> ([C64; 2], [C64; 2]) {
    let (s, c) = (0.5 * theta).sin_cos();
    let phase = C64::from_polar(1.0, phi);
    ([c64(c, 0.0), phase * s], [c64(s, 0.0), -phase * c])
}

struct PairOutputs {
    first: ComplexMatrix,
    second: ComplexMatrix,
    s_first: f64,
    s_second: f64,
}

impl PairOutputs {
    fn new<M: QuantumMap + ?Sized>(map: &M, theta: f64, phi: f64) -> Self {
        let (psi, perp) = basis_pair(theta, phi);
        let first = map.apply(&ComplexMatrix::projector(&psi));
        let second = map.apply(&ComplexMatrix::projector(&perp));
        let s_first = output_entropy(&first);
        let s_second = output_entropy(&second);
        Self {
            first,
            second,
            s_first,
            s_second,
        }
    }

    fn chi(&self, prior: f64) -> f64 {
        let prior = prior.clamp(0.0, 1.0);
        let mix = &self.first.scale_real(prior) + &self.second.scale_real(1.0 - prior);
        output_entropy(&mix) - prior * self.s_first - (1.0 - prior) * self.s_second
    }
}

fn chi_at<M: QuantumMap + ?Sized>(map: &M, x: &[f64]) -> f64 {
    PairOutputs::new(map, x[0], x[1]).chi(x[2])
}

/// Maximum Holevo information over two-element ensembles of orthogonal
/// pure qubit states, with default search settings.
pub fn two_state_lower_bound<M: QuantumMap + ?Sized>(map: &M) -> CapacityBound {
    two_state_lower_bound_with(map, &LowerBoundConfig::default())
}

/// Grid search over (θ, φ, prior) followed by Nelder–Mead refinement of
/// the best grid cells. Panics if the map does not take qubit inputs.
pub fn two_state_lower_bound_with<M: QuantumMap + ?Sized>(map: &M, cfg: &LowerBoundConfig) -> CapacityBound {
    assert_eq!(map.dim_in(), 2, "two-state bound needs qubit inputs");
    let nt = cfg.theta_points.max(2);
    let np = cfg.phi_points.max(1);
    let nl = cfg.prior_points.max(2);
    let theta_step = PI / (nt - 1) as f64;
    let phi_step = 2.0 * PI / np as f64;
    let prior_step = 1.0 / (nl - 1) as f64;

    let cells: Vec<(usize, usize)> = (0..nt).flat_map(|i| (0..np).map(move |j| (i, j))).collect();
    let scored: Vec<(f64, [f64; 3])> = cells
        .par_iter()
        .map(|&(i, j)| {
            let (theta, phi) = (i as f64 * theta_step, j as f64 * phi_step);
            let outputs = PairOutputs::new(map, theta, phi);
            (0..nl)
                .map(|k| {
                    let prior = k as f64 * prior_step;
                    (outputs.chi(prior), [theta, phi, prior])
                })
                .fold((f64::NEG_INFINITY, [0.0; 3]), |best, cand| {
                    if cand.0 > best.0 {
                        cand
                    } else {
                        best
                    }
                })
        })
        .collect();

    let mut ranked: Vec<usize> = (0..scored.len()).collect();
    ranked.sort_by(|&a, &b| scored[b].0.total_cmp(&scored[a].0).then(a.cmp(&b)));

    let opts = SimplexOptions {
        x_tol: cfg.tol,
        ..SimplexOptions::default()
    };
    let steps = [0.5 * theta_step, 0.5 * phi_step, 0.5 * prior_step];
    let mut best_value = scored[ranked[0]].0;
    let mut best_x = scored[ranked[0]].1.to_vec();
    for &idx in ranked.iter().take(cfg.refine_starts.max(1)) {
        let res = nelder_mead(|x| -chi_at(map, x), &scored[idx].1, &steps, opts);
        if -res.value > best_value {
            best_value = -res.value;
            best_x = res.x;
        }
    }

    let (psi, perp) = basis_pair(best_x[0], best_x[1]);
    let prior = best_x[2].clamp(0.0, 1.0);
    let witness = Ensemble {
        states: vec![ComplexMatrix::projector(&psi), ComplexMatrix::projector(&perp)],
        priors: vec![prior, 1.0 - prior],
    };
    CapacityBound {
        value: best_value.max(0.0),
        kind: BoundKind::HolevoLower,
        witness: Some(witness),
    }
}
