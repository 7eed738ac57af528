//! Exact enumeration over every shift, in rational arithmetic. Only viable at
//! test scale; used to check the estimator's identities exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{IntervalGrid, SamplingConfig};
use crate::error::{Error, Result};
use crate::exact::ExactCounter;
use crate::graph::{TemporalGraph, TimeDelta, Timestamp};
use crate::motif::Motif;

/// Exact `Y_{s,j}` for every window of `grid`.
pub fn interval_count_vector_exact(
    g: &TemporalGraph,
    grid: &IntervalGrid,
    motif: &Motif,
    delta: TimeDelta,
    counter: &dyn ExactCounter,
) -> Result<Vec<BigRational>> {
    let origin = g.t_min().unwrap_or(0);
    let width = grid.width();
    grid.partition(g.edges(), origin)
        .into_iter()
        .map(|range| {
            let hist = counter.count(&g.edges()[range], motif, delta)?;
            let mut y = BigRational::zero();
            for (d, count) in hist.iter() {
                if d < 0 || d >= width || d > delta {
                    return Err(Error::Contract(format!("duration {d} with delta {delta}")));
                }
                y += BigRational::new(BigInt::from(count) * width, BigInt::from(width - d));
            }
            Ok(y)
        })
        .collect()
}

/// First two moments of `‖Y_s‖₁` over the uniform shift.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftMoments {
    pub mean: BigRational,
    pub second_moment: BigRational,
    pub variance: BigRational,
}

/// Enumerates all `cδ` shifts.
pub fn shift_moments(
    g: &TemporalGraph,
    motif: &Motif,
    delta: TimeDelta,
    c: u64,
    counter: &dyn ExactCounter,
) -> Result<ShiftMoments> {
    let width = SamplingConfig {
        c,
        ..Default::default()
    }
    .width(delta)?;
    let t_max = match (g.t_min(), g.t_max()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    };
    let mut sum = BigRational::zero();
    let mut sum_sq = BigRational::zero();
    for shift in -(width - 1)..=0 {
        let grid = IntervalGrid::new(t_max, width, shift)?;
        let l1: BigRational = interval_count_vector_exact(g, &grid, motif, delta, counter)?
            .into_iter()
            .fold(BigRational::zero(), |a, y| a + y);
        sum_sq += &l1 * &l1;
        sum += l1;
    }
    let n = BigRational::from_integer(BigInt::from(width));
    let mean = sum / &n;
    let second_moment = sum_sq / &n;
    let variance = &second_moment - &mean * &mean;
    Ok(ShiftMoments {
        mean,
        second_moment,
        variance,
    })
}

/// `E_s[‖Y_s‖₁]`, averaged exactly over all `cδ` shifts.
pub fn exhaustive_expectation(
    g: &TemporalGraph,
    motif: &Motif,
    delta: TimeDelta,
    c: u64,
    counter: &dyn ExactCounter,
) -> Result<BigRational> {
    Ok(shift_moments(g, motif, delta, c, counter)?.mean)
}

/// How many of the `width` shifts put normalized times `first..=last` in a
/// single window.
pub fn containment_count(first: Timestamp, last: Timestamp, width: i64) -> Result<u64> {
    let t_max = last.max(first);
    let mut contained = 0;
    for shift in -(width - 1)..=0 {
        let grid = IntervalGrid::new(t_max, width, shift)?;
        if grid.index_of(first) == grid.index_of(last) {
            contained += 1;
        }
    }
    Ok(contained)
}
