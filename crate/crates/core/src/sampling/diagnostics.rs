//! Variance and correlation diagnostics for choosing sampling parameters.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::{grid_for_shift, interval_count_vector, Estimator, IntervalCountVector, IntervalStats};
use crate::error::{Error, Result};
use crate::exact::ExactCounter;
use crate::graph::{TemporalGraph, TimeDelta};
use crate::motif::Motif;

/// Pearson correlation of `q` and `y`; 0 when either is constant.
pub fn correlation_diagnostic(q: &[f64], y: &[f64]) -> Result<f64> {
    if q.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "length mismatch: {} vs {}",
            q.len(),
            y.len()
        )));
    }
    if q.len() < 2 {
        return Err(Error::InvalidInput("correlation needs at least two windows".into()));
    }
    let n = q.len() as f64;
    let mq = q.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sqy, mut sqq, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in q.iter().zip(y) {
        let (da, db) = (a - mq, b - my);
        sqy += da * db;
        sqq += da * da;
        syy += db * db;
    }
    if sqq == 0.0 || syy == 0.0 {
        return Ok(0.0);
    }
    Ok((sqy / (sqq.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// `Var[Z | s] = Σ_j Y_j² (1 − q_j) / q_j`.
pub fn conditional_variance(q: &[f64], y: &[f64]) -> Result<f64> {
    if q.len() != y.len() {
        return Err(Error::InvalidInput(format!(
            "length mismatch: {} vs {}",
            q.len(),
            y.len()
        )));
    }
    let mut var = 0.0;
    for (j, (&qj, &yj)) in q.iter().zip(y).enumerate() {
        if yj == 0.0 {
            continue;
        }
        if qj <= 0.0 {
            return Err(Error::InvalidInput(format!("window {j} has Y = {yj} but q = {qj}")));
        }
        var += yj * yj * (1.0 - qj) / qj;
    }
    Ok(var)
}

/// `(ℓ − 1)·‖y‖₂² / ‖y‖₁²`: `ℓ − 1` for a one-hot vector, `(ℓ − 1)/ℓ` for a
/// uniform one.
pub fn sparsity_measure(y: &[f64]) -> Result<f64> {
    let l1: f64 = y.iter().map(|v| v.abs()).sum();
    if l1 == 0.0 {
        return Err(Error::InvalidInput("sparsity of a zero vector is undefined".into()));
    }
    let l2: f64 = y.iter().map(|v| v * v).sum();
    Ok((y.len() as f64 - 1.0) * l2 / (l1 * l1))
}

/// `C² / (c − 1)`, the bound on the shift variance of `‖Y_s‖₁`.
pub fn variance_upper_bound(count: u64, c: u64) -> BigRational {
    assert!(c >= 2, "c must be at least 2");
    let count = BigInt::from(count);
    BigRational::new(&count * &count, BigInt::from(c - 1))
}

/// The two terms of the error budget
/// `(E‖Ŷ‖₂² − E‖Y‖₂²)/C² + 1/(c−1) ≤ b·ε²`, estimated from one pilot shift
/// with `‖Y_s‖₁` standing in for `C`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TradeoffTerms {
    pub sampling_term: f64,
    pub shift_term: f64,
    pub lhs: f64,
    /// `b·ε²`, when a target ε was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub within_budget: Option<bool>,
}

pub fn tradeoff_terms(q: &[f64], y: &[f64], c: u64, b: usize, target_epsilon: Option<f64>) -> Result<TradeoffTerms> {
    let l1: f64 = y.iter().sum();
    let sampling_term = if l1 > 0.0 {
        conditional_variance(q, y)? / (l1 * l1)
    } else {
        0.0
    };
    let shift_term = 1.0 / (c as f64 - 1.0);
    let lhs = sampling_term + shift_term;
    let budget = target_epsilon.map(|eps| b as f64 * eps * eps);
    Ok(TradeoffTerms {
        sampling_term,
        shift_term,
        lhs,
        budget,
        within_budget: budget.map(|bud| lhs <= bud),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub len: usize,
    pub nonzero: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub sum: f64,
}

impl Summary {
    pub fn of(values: &[f64]) -> Self {
        let sum: f64 = values.iter().sum();
        Self {
            len: values.len(),
            nonzero: values.iter().filter(|&&v| v != 0.0).count(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean: if values.is_empty() {
                0.0
            } else {
                sum / values.len() as f64
            },
            sum,
        }
    }
}

/// Full pass over every window of one shift.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnosis {
    pub shift: i64,
    pub num_intervals: usize,
    pub q_summary: Summary,
    pub y_summary: Summary,
    /// Correlation of `q` and `Y_s`; `None` with fewer than two windows.
    pub rho: Option<f64>,
    /// `None` when `Y_s` is zero.
    pub sparsity: Option<f64>,
    pub conditional_variance: f64,
    pub tradeoff: TradeoffTerms,
    /// Expected number of sampled windows, `Σ q_j`.
    pub expected_sampled_intervals: f64,
    /// Expected fraction of edges handed to the exact counter per shift.
    pub expected_edge_fraction: f64,
    pub q: Vec<f64>,
    pub y: Vec<f64>,
}

/// Counts every window of the estimator's first shift and reports how well
/// the sampling probabilities track the weighted counts.
pub fn diagnose(
    estimator: &Estimator,
    g: &TemporalGraph,
    motif: &Motif,
    delta: TimeDelta,
    counter: &dyn ExactCounter,
) -> Result<Diagnosis> {
    let cfg = estimator.config();
    cfg.validate()?;
    let origin = g.t_min().unwrap_or(0);
    let t_max = g.t_max().map_or(0, |t| t - origin);
    let grid = grid_for_shift(cfg.seed, 0, t_max, cfg.c, delta)?;
    let m = g.num_edges();
    let counts: Vec<usize> = grid.partition(g.edges(), origin).into_iter().map(|r| r.len()).collect();
    let q: Vec<f64> = counts
        .iter()
        .enumerate()
        .map(|(j, &m_j)| {
            let stats = IntervalStats {
                shift_index: 0,
                interval: j,
                edges: m_j,
                total_edges: m,
                motif_edges: motif.num_edges(),
            };
            super::checked_probability(estimator.policy.probability(&stats), &stats)
        })
        .collect::<Result<_>>()?;
    let IntervalCountVector { entries: y } = interval_count_vector(g, &grid, motif, delta, counter)?;
    let rho = if q.len() >= 2 {
        Some(correlation_diagnostic(&q, &y)?)
    } else {
        None
    };
    let sparsity = sparsity_measure(&y).ok();
    let expected_edge_fraction = if m == 0 {
        0.0
    } else {
        q.iter().zip(&counts).map(|(qj, &mj)| qj * mj as f64).sum::<f64>() / m as f64
    };
    Ok(Diagnosis {
        shift: grid.shift(),
        num_intervals: grid.num_intervals(),
        q_summary: Summary::of(&q),
        y_summary: Summary::of(&y),
        rho,
        sparsity,
        conditional_variance: conditional_variance(&q, &y)?,
        tradeoff: tradeoff_terms(&q, &y, cfg.c, cfg.b, cfg.target_epsilon)?,
        expected_sampled_intervals: q.iter().sum(),
        expected_edge_fraction,
        q,
        y,
    })
}
