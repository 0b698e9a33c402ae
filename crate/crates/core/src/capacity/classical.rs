//! Capacities of binary classical channels.

use crate::error::{check_probability, Error, Result};
use crate::numerics::binary_entropy;

const BA_TOL: f64 = 1e-10;
const BA_MAX_ITERS: usize = 100_000;
const MAX_STEP_SCALE: f64 = 1e12;

/// C = log₂(1 + (1−p) p^{p/(1−p)}) for the Z-channel with 1→0 flip probability p.
pub fn z_capacity(p: f64) -> Result<f64> {
    check_probability("p", p)?;
    if p == 0.0 {
        return Ok(1.0);
    }
    if p == 1.0 {
        return Ok(0.0);
    }
    let boost = (1.0 - p) * (p * p.ln() / (1.0 - p)).exp();
    Ok(boost.ln_1p() / std::f64::consts::LN_2)
}

/// Capacity of the binary asymmetric channel with flip probabilities
/// q (0→1) and p (1→0), in the closed form
///
/// C = q/(1−p−q)·H(p) − (1−p)/(1−p−q)·H(q) + log₂(1 + 2^{(H(q)−H(p))/(1−p−q)}).
pub fn bac_capacity(q: f64, p: f64) -> Result<f64> {
    check_probability("q", q)?;
    check_probability("p", p)?;
    // relabelling the outputs maps (q, p) to (1−q, 1−p) without changing capacity
    let (e0, e1) = if p + q > 1.0 { (1.0 - q, 1.0 - p) } else { (q, p) };
    let d = 1.0 - e0 - e1;
    if d < 1e-12 {
        return Ok(0.0);
    }
    let (h0, h1) = (binary_entropy(e0), binary_entropy(e1));
    let x = (h0 - h1) / d;
    // log₂(1 + 2^x) without overflow
    let softplus = if x > 0.0 {
        x + (-x).exp2().ln_1p() / std::f64::consts::LN_2
    } else {
        x.exp2().ln_1p() / std::f64::consts::LN_2
    };
    Ok((e0 * h1 / d - (1.0 - e1) * h0 / d + softplus).max(0.0))
}

/// D(W_x ‖ rW) for every input x, in bits.
fn divergences(w: &[Vec<f64>], r: &[f64]) -> Vec<f64> {
    let ny = w[0].len();
    let out: Vec<f64> = (0..ny).map(|y| w.iter().zip(r).map(|(row, rx)| rx * row[y]).sum()).collect();
    w.iter()
        .map(|row| {
            row.iter()
                .zip(&out)
                .filter(|(&wy, _)| wy > 0.0)
                .map(|(&wy, &oy)| wy * (wy / oy).log2())
                .sum()
        })
        .collect()
}

/// r_x ∝ r_x 2^{μ d_x}
fn reweight(r: &[f64], d: &[f64], mu: f64) -> Vec<f64> {
    let top = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut next: Vec<f64> = r.iter().zip(d).map(|(rx, dx)| rx * (mu * (dx - top)).exp2()).collect();
    let z: f64 = next.iter().sum();
    next.iter_mut().for_each(|x| *x /= z);
    next
}

/// Capacity in bits of a discrete memoryless channel with row-stochastic
/// transition matrix `w[x][y]`, by Blahut–Arimoto iteration.
///
/// Stops once the lower bound log₂ Σ r_x 2^{D_x} and the upper bound max D_x
/// are within 1e−10. The exponent of the multiplicative update is scaled up
/// while the gap between the bounds keeps shrinking, which matters for nearly
/// useless channels where the plain update barely moves; the bounds hold for
/// any input distribution, so the stopping rule is unaffected.
pub fn blahut_arimoto(w: &[Vec<f64>]) -> Result<f64> {
    let nx = w.len();
    let ny = w.first().map_or(0, Vec::len);
    if nx == 0 || ny == 0 {
        return Err(Error::NotStochastic("empty matrix".into()));
    }
    for (x, row) in w.iter().enumerate() {
        if row.len() != ny {
            return Err(Error::NotStochastic(format!("row {x} has {} entries", row.len())));
        }
        if row.iter().any(|&v| v < 0.0 || !v.is_finite()) {
            return Err(Error::NotStochastic(format!("row {x} has a negative entry")));
        }
        let sum: f64 = row.iter().sum();
        if (sum - 1.0).abs() > 1e-10 {
            return Err(Error::NotStochastic(format!("row {x} sums to {sum}")));
        }
    }

    let bounds = |r: &[f64], d: &[f64]| {
        let z: f64 = r.iter().zip(d).map(|(rx, dx)| rx * dx.exp2()).sum();
        let upper = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (z.log2(), upper)
    };
    let mut r = vec![1.0 / nx as f64; nx];
    let mut d = divergences(w, &r);
    let mut mu: f64 = 1.0;
    for _ in 0..BA_MAX_ITERS {
        let (lower, upper) = bounds(&r, &d);
        if upper - lower < BA_TOL {
            return Ok(lower.max(0.0));
        }
        // keep the spread of exponents bounded so no input underflows to zero
        let spread = upper - d.iter().copied().fold(f64::INFINITY, f64::min);
        if spread > 0.0 {
            mu = mu.min(30.0 / spread);
        }
        loop {
            let cand = reweight(&r, &d, mu.max(1.0));
            let cand_d = divergences(w, &cand);
            let (cl, cu) = bounds(&cand, &cand_d);
            if mu <= 1.0 || cu - cl < upper - lower {
                r = cand;
                d = cand_d;
                mu = (mu * 2.0).min(MAX_STEP_SCALE);
                break;
            }
            mu = (mu / 4.0).max(1.0);
        }
    }
    Err(Error::NoConvergence(BA_MAX_ITERS))
}

/// Transition matrix of the binary asymmetric channel.
pub fn bac_transition(q: f64, p: f64) -> Vec<Vec<f64>> {
    vec![vec![1.0 - q, q], vec![p, 1.0 - p]]
}

/// Flip probabilities (q₍ₙ₎, p₍ₙ₎) of n concatenated binary asymmetric
/// channels: each is the single-use value times Σ_{k<n} (1−p−q)^k.
pub fn effective_bac_params(q: f64, p: f64, n: usize) -> Result<(f64, f64)> {
    check_probability("q", q)?;
    check_probability("p", p)?;
    if n == 0 {
        return Err(Error::InvalidConfig("sequence length must be at least 1".into()));
    }
    let r = 1.0 - p - q;
    let sum = if p + q > 0.0 {
        (1.0 - r.powi(n as i32)) / (p + q)
    } else {
        n as f64
    };
    Ok((q * sum, p * sum))
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2_5_4: f64 = 0.321_928_094_887_362_3;

    #[test]
    fn z_capacity_examples() {
        assert!((z_capacity(0.5).unwrap() - LOG2_5_4).abs() < 1e-15);
        assert_eq!(z_capacity(0.0).unwrap(), 1.0);
        assert_eq!(z_capacity(1.0).unwrap(), 0.0);
        assert!(z_capacity(1.0 - 1e-12).unwrap() < 1e-11);
        assert!((z_capacity(1e-12).unwrap() - 1.0).abs() < 1e-9);
        assert!(z_capacity(-0.1).is_err());
    }

    #[test]
    fn bac_capacity_examples() {
        assert!((bac_capacity(0.0, 0.5).unwrap() - LOG2_5_4).abs() < 1e-15);
        // binary symmetric channel: 1 − H(0.1) = 0.531004406410719...
        assert!((bac_capacity(0.1, 0.1).unwrap() - 0.531_004_406_410_719_3).abs() < 1e-12);
        assert_eq!(bac_capacity(0.5, 0.5).unwrap(), 0.0);
        assert!((bac_capacity(0.9, 0.9).unwrap() - bac_capacity(0.1, 0.1).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn bac_capacity_matches_oracle_at_q02_p05() {
        let oracle = blahut_arimoto(&bac_transition(0.2, 0.5)).unwrap();
        assert!((bac_capacity(0.2, 0.5).unwrap() - oracle).abs() < 1e-8);
    }

    #[test]
    fn blahut_arimoto_examples() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!((blahut_arimoto(&id).unwrap() - 1.0).abs() < 1e-12);
        let same = vec![vec![0.3, 0.7], vec![0.3, 0.7]];
        assert!(blahut_arimoto(&same).unwrap().abs() < 1e-12);
        let z = vec![vec![1.0, 0.0], vec![0.5, 0.5]];
        assert!((blahut_arimoto(&z).unwrap() - LOG2_5_4).abs() < 1e-9);
        assert!(matches!(
            blahut_arimoto(&[vec![0.5, 0.6], vec![0.0, 1.0]]),
            Err(Error::NotStochastic(_))
        ));
        assert!(matches!(
            blahut_arimoto(&[vec![1.2, -0.2], vec![0.0, 1.0]]),
            Err(Error::NotStochastic(_))
        ));
    }

    #[test]
    fn effective_params_examples() {
        assert_eq!(effective_bac_params(0.1, 0.3, 1).unwrap(), (0.1, 0.3));
        let (_, p2) = effective_bac_params(0.0, 0.5, 2).unwrap();
        assert!((p2 - 0.75).abs() < 1e-15);
        let (q3, p3) = effective_bac_params(0.1, 0.3, 3).unwrap();
        assert!((p3 - 0.588).abs() < 1e-12 && (q3 - 0.196).abs() < 1e-12);
        assert_eq!(effective_bac_params(0.0, 0.0, 5).unwrap(), (0.0, 0.0));
        assert!(effective_bac_params(0.1, 0.3, 0).is_err());
    }
}
