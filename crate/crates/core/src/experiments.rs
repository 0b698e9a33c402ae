//! Parameter sweeps over superposed channel sequences, shared by the
//! command-line driver and the test suite.

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{theorem1_check, Theorem1Report, DEFAULT_SINGULAR_TOL};
use crate::capacity::{
    bac_capacity, effective_bac_params, two_state_lower_bound_with, z_capacity, CapacityBound, Ensemble,
    LowerBoundConfig,
};
use crate::channels::{ChannelSpec, QuantumMap, VacuumExtension};
use crate::error::{check_probability, Error, Result};
use crate::numerics::ComplexMatrix;
use crate::routing::{gamma_factor, AsymptoticMap, Branch, PathState, SuperposedMap};

pub const DEFAULT_N_MAX: usize = 20;
pub const DEFAULT_S_GRID: [f64; 6] = [0.0, 0.01, 0.05, 0.1, 0.2, 0.5];
pub const DEFAULT_Q_GRID: [f64; 5] = [0.0, 0.01, 0.05, 0.1, 0.2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Fig4,
    Fig5a,
    Fig5b,
    Asymptotic,
    Capacity,
    Theorem1,
}

impl Experiment {
    pub const ALL: [Experiment; 6] = [
        Experiment::Fig4,
        Experiment::Fig5a,
        Experiment::Fig5b,
        Experiment::Asymptotic,
        Experiment::Capacity,
        Experiment::Theorem1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Experiment::Fig4 => "fig4",
            Experiment::Fig5a => "fig5a",
            Experiment::Fig5b => "fig5b",
            Experiment::Asymptotic => "asymptotic",
            Experiment::Capacity => "capacity",
            Experiment::Theorem1 => "theorem1",
        }
    }

    /// Whether the experiment produces CSV rows rather than a JSON report.
    pub fn is_sweep(self) -> bool {
        matches!(self, Experiment::Fig4 | Experiment::Fig5a | Experiment::Fig5b | Experiment::Capacity)
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown experiment {s:?}")))
    }
}

/// Sweep settings read from JSON. Unset lists fall back to per-experiment
/// defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<Experiment>,
    pub p: Option<Vec<f64>>,
    pub q: Option<Vec<f64>>,
    pub s: Option<Vec<f64>>,
    pub n_max: usize,
    pub output_path: Option<PathBuf>,
    pub optimizer: LowerBoundConfig,
    /// Link channel for the asymptotic, capacity and theorem1 experiments.
    pub channel: Option<ChannelSpec>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            experiment: None,
            p: None,
            q: None,
            s: None,
            n_max: DEFAULT_N_MAX,
            output_path: None,
            optimizer: LowerBoundConfig::default(),
            channel: None,
        }
    }
}

impl ExperimentConfig {
    pub fn for_experiment(experiment: Experiment) -> Self {
        Self {
            experiment: Some(experiment),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::InvalidConfig("n_max must be at least 1".into()));
        }
        for (name, list) in [("p", &self.p), ("q", &self.q)] {
            for &x in list.iter().flatten() {
                check_probability(name, x).map_err(|e| Error::InvalidConfig(e.to_string()))?;
            }
        }
        for &s in self.s.iter().flatten() {
            if !(0.0..=0.5).contains(&s) {
                return Err(Error::InvalidConfig(format!("dephasing s = {s} outside [0, 0.5]")));
            }
        }
        let opt = &self.optimizer;
        if opt.theta_points < 2 || opt.phi_points < 1 || opt.prior_points < 2 {
            return Err(Error::InvalidConfig("optimizer grids need at least 2 points".into()));
        }
        if opt.tol.is_nan() || opt.tol <= 0.0 {
            return Err(Error::InvalidConfig("optimizer tolerance must be positive".into()));
        }
        Ok(())
    }

    fn p_list(&self, default: &[f64]) -> Vec<f64> {
        self.p.clone().unwrap_or_else(|| default.to_vec())
    }

    fn q_list(&self) -> Vec<f64> {
        self.q.clone().unwrap_or_else(|| DEFAULT_Q_GRID.to_vec())
    }

    fn s_list(&self, default: &[f64]) -> Vec<f64> {
        self.s.clone().unwrap_or_else(|| default.to_vec())
    }

    fn channel_or_z(&self) -> Vec<ChannelSpec> {
        match &self.channel {
            Some(spec) => vec![spec.clone()],
            None => self.p_list(&[0.5]).into_iter().map(ChannelSpec::z).collect(),
        }
    }
}

/// One line of sweep output.
#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub experiment: Experiment,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub s: Option<f64>,
    pub n: usize,
    pub bound_superposed: f64,
    pub capacity_classical: f64,
    pub gap: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Ensemble>,
}

pub const CSV_HEADER: &str = "experiment,p,q,s,n,bound_superposed,capacity_classical,gap";

fn field(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.experiment,
            field(self.p),
            field(self.q),
            field(self.s),
            self.n,
            self.bound_superposed,
            self.capacity_classical,
            self.gap
        )
    }
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()
}

/// Branches of 1..=n_max identical links.
fn prefix_branches(ext: &VacuumExtension, n_max: usize) -> Result<Vec<Branch>> {
    let mut branches = vec![Branch::from_extension(ext)];
    for _ in 1..n_max {
        let next = branches.last().expect("non-empty").then_link(ext)?;
        branches.push(next);
    }
    Ok(branches)
}

/// Two-state bound of the superposition of two copies of `branch` with path
/// |+⟩ and coherence factor `gamma`.
fn superposed_bound(branch: &Branch, gamma: f64, cfg: &LowerBoundConfig) -> Result<CapacityBound> {
    let omega = PathState::plus();
    let map = SuperposedMap::new(branch, branch, &omega, gamma)?;
    Ok(two_state_lower_bound_with(&map, cfg))
}

struct Cell<'a> {
    p: Option<f64>,
    q: Option<f64>,
    s: Option<f64>,
    n: usize,
    branch: &'a Branch,
    gamma: f64,
    classical: f64,
}

fn evaluate(experiment: Experiment, cells: Vec<Cell<'_>>, cfg: &LowerBoundConfig) -> Result<Vec<SweepRow>> {
    cells
        .into_par_iter()
        .map(|c| {
            let bound = superposed_bound(c.branch, c.gamma, cfg)?;
            Ok(SweepRow {
                experiment,
                p: c.p,
                q: c.q,
                s: c.s,
                n: c.n,
                bound_superposed: bound.value,
                capacity_classical: c.classical,
                gap: bound.value - c.classical,
                witness: bound.witness,
            })
        })
        .collect()
}

/// Dephased superposition of two identical Z-channel sequences against a
/// single sequence of the same length.
pub fn run_fig4(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let s_list = config.s_list(&DEFAULT_S_GRID);
    let mut per_p = Vec::new();
    for p in config.p_list(&[0.5]) {
        let ext = crate::channels::physical_z_extension(p)?;
        per_p.push((p, prefix_branches(&ext, config.n_max)?));
    }
    let mut cells = Vec::new();
    for (p, branches) in &per_p {
        for &s in &s_list {
            for (k, branch) in branches.iter().enumerate() {
                let n = k + 1;
                cells.push(Cell {
                    p: Some(*p),
                    q: None,
                    s: Some(s),
                    n,
                    branch,
                    gamma: gamma_factor(s, n)?,
                    classical: z_capacity(1.0 - (1.0 - p).powi(n as i32))?,
                });
            }
        }
    }
    evaluate(Experiment::Fig4, cells, &config.optimizer)
}

/// Superposed binary asymmetric channel sequences with full path coherence.
/// `experiment` selects the default p (0.5 for fig5a, 0.2 for fig5b).
pub fn run_fig5(experiment: Experiment, config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let default_p = match experiment {
        Experiment::Fig5a => 0.5,
        Experiment::Fig5b => 0.2,
        other => return Err(Error::InvalidConfig(format!("{other} is not a fig5 experiment"))),
    };
    let mut per_pq = Vec::new();
    for p in config.p_list(&[default_p]) {
        for q in config.q_list() {
            let ext = ChannelSpec::bac(q, p).build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
            per_pq.push((p, q, prefix_branches(&ext, config.n_max)?));
        }
    }
    let mut cells = Vec::new();
    for (p, q, branches) in &per_pq {
        for (k, branch) in branches.iter().enumerate() {
            let n = k + 1;
            let (qn, pn) = effective_bac_params(*q, *p, n)?;
            cells.push(Cell {
                p: Some(*p),
                q: Some(*q),
                s: None,
                n,
                branch,
                gamma: 1.0,
                classical: bac_capacity(qn, pn)?,
            });
        }
    }
    evaluate(experiment, cells, &config.optimizer)
}

/// Superposed sequences of an arbitrary link channel against the two-state
/// bound of a single sequence.
pub fn run_capacity(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let s_list = config.s_list(&[0.0]);
    let mut per_channel = Vec::new();
    for spec in config.channel_or_z() {
        let ext = spec.build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if ext.channel().dim_in() != 2 {
            return Err(Error::InvalidConfig("capacity sweeps need qubit channels".into()));
        }
        let branches = prefix_branches(&ext, config.n_max)?;
        let classical = branches
            .par_iter()
            .map(|b| two_state_lower_bound_with(b.channel(), &config.optimizer).value)
            .collect::<Vec<_>>();
        per_channel.push((spec, branches, classical));
    }
    let mut cells = Vec::new();
    for (spec, branches, classical) in &per_channel {
        for &s in &s_list {
            for (k, branch) in branches.iter().enumerate() {
                let n = k + 1;
                cells.push(Cell {
                    p: spec.p,
                    q: spec.q,
                    s: Some(s),
                    n,
                    branch,
                    gamma: gamma_factor(s, n)?,
                    classical: classical[k],
                });
            }
        }
    }
    evaluate(Experiment::Capacity, cells, &config.optimizer)
}

/// Bounds for one sequence length and dephasing strength.
#[derive(Debug, Clone, Serialize)]
pub struct CapacityPoint {
    pub n: usize,
    pub s: f64,
    pub gamma: f64,
    pub bound_superposed: CapacityBound,
    pub bound_single_sequence: CapacityBound,
}

pub fn capacity_point(ext: &VacuumExtension, n: usize, s: f64, cfg: &LowerBoundConfig) -> Result<CapacityPoint> {
    if n == 0 {
        return Err(Error::InvalidConfig("sequence length must be at least 1".into()));
    }
    if ext.channel().dim_in() != 2 {
        return Err(Error::InvalidConfig("capacity bounds need qubit channels".into()));
    }
    let gamma = gamma_factor(s, n)?;
    let branch = prefix_branches(ext, n)?.pop().expect("n ≥ 1");
    Ok(CapacityPoint {
        n,
        s,
        gamma,
        bound_superposed: superposed_bound(&branch, gamma, cfg)?,
        bound_single_sequence: two_state_lower_bound_with(branch.channel(), cfg),
    })
}

/// Limit channel of infinitely long superposed sequences, or the reason it
/// does not exist.
#[derive(Debug, Clone, Serialize)]
pub struct AsymptoticReport {
    pub channel: ChannelSpec,
    pub sigma_max: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fixed_point: Option<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit_projector: Option<ComplexMatrix>,
    /// Limit outputs for the inputs |0⟩⟨0| and |1⟩⟨1|.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub basis_outputs: Vec<ComplexMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<CapacityBound>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn asymptotic_report(spec: &ChannelSpec, cfg: &LowerBoundConfig) -> Result<AsymptoticReport> {
    let ext = spec.build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
    let sigma_max = ext.sigma_max();
    let mut report = AsymptoticReport {
        channel: spec.clone(),
        sigma_max,
        fixed_point: None,
        unit_projector: None,
        basis_outputs: Vec::new(),
        bound: None,
        error: None,
    };
    match AsymptoticMap::new(&ext) {
        Ok(map) => {
            let d = map.dim_in();
            report.basis_outputs = (0..d).map(|k| map.apply(&ComplexMatrix::unit(d, d, k, k))).collect();
            if d == 2 {
                report.bound = Some(two_state_lower_bound_with(&map, cfg));
            }
            report.fixed_point = Some(map.fixed_point().clone());
            report.unit_projector = Some(map.unit_projector().clone());
        }
        Err(e) => report.error = Some(e.to_string()),
    }
    Ok(report)
}

pub fn run_asymptotic(config: &ExperimentConfig) -> Result<Vec<AsymptoticReport>> {
    config.validate()?;
    config
        .channel_or_z()
        .iter()
        .map(|spec| asymptotic_report(spec, &config.optimizer))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Entry {
    pub channel: ChannelSpec,
    #[serde(flatten)]
    pub report: Theorem1Report,
}

/// Singular-value-1 reports for the configured channel, or for Z-channels over the
/// configured p list (default 0, 0.1, …, 1).
pub fn run_theorem1(config: &ExperimentConfig) -> Result<Vec<Theorem1Entry>> {
    config.validate()?;
    let specs = match (&config.channel, &config.p) {
        (Some(spec), _) => vec![spec.clone()],
        (None, Some(ps)) => ps.iter().map(|&p| ChannelSpec::z(p)).collect(),
        (None, None) => (0..=10).map(|k| ChannelSpec::z(k as f64 / 10.0)).collect(),
    };
    specs
        .into_par_iter()
        .map(|spec| {
            let ext = spec.build().map_err(|e| Error::InvalidConfig(e.to_string()))?;
            Ok(Theorem1Entry {
                report: theorem1_check(&ext, DEFAULT_SINGULAR_TOL),
                channel: spec,
            })
        })
        .collect()
}

/// Output of [`run`]: CSV rows for sweeps, JSON reports otherwise.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ExperimentOutput {
    Sweep(Vec<SweepRow>),
    Asymptotic(Vec<AsymptoticReport>),
    Theorem1(Vec<Theorem1Entry>),
}

pub fn run(experiment: Experiment, config: &ExperimentConfig) -> Result<ExperimentOutput> {
    if let Some(declared) = config.experiment {
        if declared != experiment {
            return Err(Error::InvalidConfig(format!(
                "config is for {declared}, asked to run {experiment}"
            )));
        }
    }
    Ok(match experiment {
        Experiment::Fig4 => ExperimentOutput::Sweep(run_fig4(config)?),
        Experiment::Fig5a | Experiment::Fig5b => ExperimentOutput::Sweep(run_fig5(experiment, config)?),
        Experiment::Capacity => ExperimentOutput::Sweep(run_capacity(config)?),
        Experiment::Asymptotic => ExperimentOutput::Asymptotic(run_asymptotic(config)?),
        Experiment::Theorem1 => ExperimentOutput::Theorem1(run_theorem1(config)?),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOG2_5_4: f64 = 0.321_928_094_887_362_3;

    fn small(experiment: Experiment) -> ExperimentConfig {
        ExperimentConfig {
            n_max: 4,
            ..ExperimentConfig::for_experiment(experiment)
        }
    }

    #[test]
    fn experiment_names_round_trip() {
        for e in Experiment::ALL {
            assert_eq!(e.name().parse::<Experiment>().unwrap(), e);
        }
        assert!("fig6".parse::<Experiment>().is_err());
    }

    #[test]
    fn config_validation() {
        let json = r#"{"experiment": "fig4", "s": [0.0, 0.7]}"#;
        let cfg: ExperimentConfig = serde_json::from_str(json).unwrap();
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        let cfg = ExperimentConfig {
            n_max: 0,
            ..ExperimentConfig::default()
        };
        assert!(cfg.validate().is_err());
        assert!(serde_json::from_str::<ExperimentConfig>(r#"{"bogus": 1}"#).is_err());
        let cfg: ExperimentConfig = serde_json::from_str(r#"{"optimizer": {"theta_points": 8}}"#).unwrap();
        assert_eq!(cfg.optimizer.phi_points, 32);
        assert_eq!(cfg.n_max, DEFAULT_N_MAX);
    }

    #[test]
    fn fig4_small_sweep() {
        let rows = run_fig4(&small(Experiment::Fig4)).unwrap();
        assert_eq!(rows.len(), 6 * 4);
        let fully_dephased: Vec<_> = rows.iter().filter(|r| r.s == Some(0.5)).collect();
        for r in fully_dephased {
            assert!((r.bound_superposed - r.capacity_classical).abs() < 1e-4, "{r:?}");
        }
        let first = &rows[0];
        assert_eq!((first.s, first.n), (Some(0.0), 1));
        assert!(first.bound_superposed >= LOG2_5_4);
        let line = first.to_csv_line();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(&fields[..5], &["fig4", "0.5", "", "0", "1"]);
        assert!((fields[6].parse::<f64>().unwrap() - LOG2_5_4).abs() < 1e-15);
    }

    #[test]
    fn fig5_rejects_other_experiments() {
        assert!(run_fig5(Experiment::Fig4, &ExperimentConfig::default()).is_err());
        let rows = run_fig5(Experiment::Fig5b, &small(Experiment::Fig5b)).unwrap();
        assert!(rows.iter().all(|r| r.p == Some(0.2) && r.s.is_none()));
    }

    #[test]
    fn asymptotic_reports_error_entries() {
        let cfg = ExperimentConfig {
            channel: Some(ChannelSpec::bac(0.2, 0.5)),
            ..small(Experiment::Asymptotic)
        };
        let report = &run_asymptotic(&cfg).unwrap()[0];
        assert!((report.sigma_max - 0.8).abs() < 1e-12);
        assert!(report.bound.is_none() && report.error.is_some());

        let report = &run_asymptotic(&small(Experiment::Asymptotic)).unwrap()[0];
        assert!((report.bound.as_ref().unwrap().value - LOG2_5_4).abs() < 1e-4);
    }

    #[test]
    fn run_checks_declared_experiment() {
        let cfg = ExperimentConfig::for_experiment(Experiment::Fig4);
        assert!(matches!(run(Experiment::Fig5a, &cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn capacity_point_single_link() {
        let ext = crate::channels::physical_z_extension(0.5).unwrap();
        let pt = capacity_point(&ext, 1, 0.5, &LowerBoundConfig::default()).unwrap();
        assert_eq!(pt.gamma, 0.0);
        assert!((pt.bound_single_sequence.value - LOG2_5_4).abs() < 1e-4);
        assert!((pt.bound_superposed.value - LOG2_5_4).abs() < 1e-4);
        assert!(capacity_point(&ext, 0, 0.0, &LowerBoundConfig::default()).is_err());
    }
}
