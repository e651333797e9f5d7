//! Optimal interval weights.

use serde::{Deserialize, Serialize};

use crate::deviation::{abw_star, deviation_profile};
use crate::model::{PairwiseComparisonSystem, Role};

/// Denominators below this are treated as nonpositive.
pub const DIVISION_GUARD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 2]", from = "[f64; 2]")]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl From<Interval> for [f64; 2] {
    fn from(iv: Interval) -> Self {
        [iv.lower, iv.upper]
    }
}

impl From<[f64; 2]> for Interval {
    fn from([lower, upper]: [f64; 2]) -> Self {
        Interval { lower, upper }
    }
}

impl Interval {
    pub fn contains(&self, x: f64, tol: f64) -> bool {
        x >= self.lower - tol && x <= self.upper + tol
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Per-criterion weight intervals, indexed like the criteria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalWeights(pub Vec<Interval>);

impl IntervalWeights {
    pub fn as_slice(&self) -> &[Interval] {
        &self.0
    }

    /// True when no lower bound exceeds its upper bound by more than `tol`.
    pub fn is_well_formed(&self, tol: f64) -> bool {
        self.0.iter().all(|iv| iv.lower <= iv.upper + tol)
    }
}

impl std::ops::Index<usize> for IntervalWeights {
    type Output = Interval;

    fn index(&self, k: usize) -> &Interval {
        &self.0[k]
    }
}

/// Bounds on `t_i = w_i / w_w` for a criterion in D at deviation `eps` and
/// best-to-worst ratio `r`.
pub fn ratio_bounds(ab: f64, aw: f64, eps: f64, r: f64) -> (f64, f64) {
    let lo = (aw - eps).max(r / (ab + eps));
    let down = ab - eps;
    let hi = if down <= DIVISION_GUARD {
        aw + eps
    } else {
        (aw + eps).min(r / down)
    };
    (lo, hi)
}

/// Interval weights from the endpoint formulas at a given `eps` and `r`.
///
/// Bounds are returned as computed; nothing forces `lower <= upper`.
pub fn interval_weights_at(pcs: &PairwiseComparisonSystem, eps: f64, r: f64) -> IntervalWeights {
    let bounds: Vec<(usize, f64, f64)> = pcs
        .others()
        .iter()
        .map(|&i| {
            let (lo, hi) = ratio_bounds(pcs.a_b(i), pcs.a_w(i), eps, r);
            (i, lo, hi)
        })
        .collect();
    weights_from_bounds(pcs, r, &bounds)
}

fn weights_from_bounds(
    pcs: &PairwiseComparisonSystem,
    r: f64,
    bounds: &[(usize, f64, f64)],
) -> IntervalWeights {
    let base = pcs.n_worst() as f64 + pcs.n_best() as f64 * r;
    let sum_lo: f64 = bounds.iter().map(|b| b.1).sum();
    let sum_hi: f64 = bounds.iter().map(|b| b.2).sum();
    let mut out = vec![
        Interval {
            lower: 0.0,
            upper: 0.0
        };
        pcs.n()
    ];
    for (k, iv) in out.iter_mut().enumerate() {
        *iv = match pcs.role(k) {
            Role::Best => Interval {
                lower: r / (base + sum_hi),
                upper: r / (base + sum_lo),
            },
            Role::Worst => Interval {
                lower: 1.0 / (base + sum_hi),
                upper: 1.0 / (base + sum_lo),
            },
            Role::Other => continue,
        };
    }
    for &(i, lo, hi) in bounds {
        out[i] = Interval {
            lower: lo / (base + lo + sum_hi - hi),
            upper: hi / (base + hi + sum_lo - lo),
        };
    }
    IntervalWeights(out)
}

/// Optimal interval weights at ε* and `ã_bw*`.
pub fn interval_weights(pcs: &PairwiseComparisonSystem) -> IntervalWeights {
    let profile = deviation_profile(pcs);
    let r = abw_star(&profile, pcs);
    let eps = profile.epsilon_star;
    // At the anchor the ratio interval collapses to a point; rounding can
    // leave its ends crossed by a few ulps, before or after normalizing.
    let bounds: Vec<(usize, f64, f64)> = pcs
        .others()
        .iter()
        .map(|&i| {
            let (lo, hi) = ratio_bounds(pcs.a_b(i), pcs.a_w(i), eps, r);
            if lo > hi {
                let mid = 0.5 * (lo + hi);
                (i, mid, mid)
            } else {
                (i, lo, hi)
            }
        })
        .collect();
    let mut out = weights_from_bounds(pcs, r, &bounds);
    for iv in &mut out.0 {
        if iv.lower > iv.upper {
            let mid = 0.5 * (iv.lower + iv.upper);
            *iv = Interval {
                lower: mid,
                upper: mid,
            };
        }
    }
    out
}
