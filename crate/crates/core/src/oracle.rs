//! Brute-force solver for the minimax problem, independent of the closed
//! forms.
//!
//! With the worst weight fixed at 1 and the best at `r`, every other weight
//! `t_i` must lie in an interval that depends only on `ε` and `r`. A given
//! `ε` is feasible when some `r` within `ε` of `a_bw` leaves every interval
//! nonempty. The scan over `r` uses a uniform grid plus every point where an
//! interval endpoint crosses, so it cannot miss a feasible `r`.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{BwmError, Result};
use crate::interval::Interval;
use crate::model::{PairwiseComparisonSystem, Role};
use crate::scale::{Scale, ScaleId};

const GRID_POINTS: usize = 256;
const WEIGHT_GRID_POINTS: usize = 64;
const GUARD: f64 = 1e-12;
const MIN_RATIO: f64 = 1e-12;
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FeasibilityWitness {
    pub epsilon: f64,
    /// A feasible `w_b / w_w`, when one exists.
    pub ratio: Option<f64>,
    /// Interval for `w_i / w_w` at `ratio`, per other criterion.
    pub per_criterion_intervals: BTreeMap<usize, (f64, f64)>,
    pub feasible: bool,
}

fn t_interval(ab: f64, aw: f64, eps: f64, r: f64) -> (f64, f64) {
    let lower = f64::max(aw - eps, r / (ab + eps));
    let upper_ratio = if ab - eps <= GUARD {
        f64::INFINITY
    } else {
        r / (ab - eps)
    };
    (lower, f64::min(aw + eps, upper_ratio))
}

fn all_nonempty(pcs: &PairwiseComparisonSystem, eps: f64, r: f64) -> bool {
    pcs.others().iter().all(|&i| {
        let (lo, hi) = t_interval(pcs.a_b(i), pcs.a_w(i), eps, r);
        lo <= hi + SLACK * hi.abs().max(1.0)
    })
}

fn ratio_range(pcs: &PairwiseComparisonSystem, eps: f64) -> (f64, f64) {
    ((pcs.abw() - eps).max(MIN_RATIO), pcs.abw() + eps)
}

/// Scan points for `r`, sorted.
fn candidates(pcs: &PairwiseComparisonSystem, eps: f64) -> Vec<f64> {
    let (lo, hi) = ratio_range(pcs, eps);
    let mut out: Vec<f64> = (0..=GRID_POINTS)
        .map(|k| lo + (hi - lo) * k as f64 / GRID_POINTS as f64)
        .collect();
    for &i in pcs.others() {
        let (ab, aw) = (pcs.a_b(i), pcs.a_w(i));
        out.push((ab + eps) * (aw + eps));
        if ab - eps > 0.0 && aw - eps > 0.0 {
            out.push((ab - eps) * (aw - eps));
        }
    }
    out.retain(|r| (lo..=hi).contains(r));
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

fn feasible_ratios(pcs: &PairwiseComparisonSystem, eps: f64) -> Vec<f64> {
    candidates(pcs, eps)
        .into_iter()
        .filter(|&r| all_nonempty(pcs, eps, r))
        .collect()
}

/// Whether some weight vector has every ratio within `epsilon` of its
/// stated value.
pub fn feasible(pcs: &PairwiseComparisonSystem, epsilon: f64) -> FeasibilityWitness {
    let ratios = feasible_ratios(pcs, epsilon);
    let ratio = ratios.get(ratios.len() / 2).copied();
    let per_criterion_intervals = ratio
        .map(|r| {
            pcs.others()
                .iter()
                .map(|&i| (i, t_interval(pcs.a_b(i), pcs.a_w(i), epsilon, r)))
                .collect()
        })
        .unwrap_or_default();
    FeasibilityWitness {
        epsilon,
        ratio,
        per_criterion_intervals,
        feasible: ratio.is_some(),
    }
}

/// Whether `r` is a feasible best-to-worst ratio at `epsilon`.
pub fn feasible_at(pcs: &PairwiseComparisonSystem, epsilon: f64, r: f64) -> bool {
    let (lo, hi) = ratio_range(pcs, epsilon);
    let tol = SLACK * hi.max(1.0);
    r >= lo - tol && r <= hi + tol && all_nonempty(pcs, epsilon, r)
}

/// Bisection on [`feasible`] down to a bracket of width `tol`.
pub fn solve_epsilon_star(pcs: &PairwiseComparisonSystem, tol: f64) -> f64 {
    let tol = tol.max(1e-12);
    if feasible(pcs, 0.0).feasible {
        return 0.0;
    }
    let largest = pcs
        .best_to_other()
        .iter()
        .chain(pcs.other_to_worst())
        .fold(0.0f64, |m, &v| m.max(v));
    let (mut lo, mut hi) = (0.0, pcs.abw() + largest);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if feasible(pcs, mid).feasible {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

fn weight_extremes(pcs: &PairwiseComparisonSystem, eps: f64, r: f64, k: usize) -> (f64, f64) {
    let bounds: Vec<(usize, f64, f64)> = pcs
        .others()
        .iter()
        .map(|&i| {
            let (lo, hi) = t_interval(pcs.a_b(i), pcs.a_w(i), eps, r);
            (i, lo, hi.max(lo))
        })
        .collect();
    let base = pcs.n_best() as f64 * r + pcs.n_worst() as f64;
    let sum_lo: f64 = bounds.iter().map(|b| b.1).sum();
    let sum_hi: f64 = bounds.iter().map(|b| b.2).sum();
    match pcs.role(k) {
        Role::Best => (r / (base + sum_hi), r / (base + sum_lo)),
        Role::Worst => (1.0 / (base + sum_hi), 1.0 / (base + sum_lo)),
        Role::Other => {
            let &(_, lo, hi) = bounds
                .iter()
                .find(|b| b.0 == k)
                .expect("k is an other criterion");
            (
                lo / (base + lo + sum_hi - hi),
                hi / (base + hi + sum_lo - lo),
            )
        }
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd).max(f(a)).max(f(b))
}

/// Smallest and largest weight of criterion `k` over all solutions that
/// attain deviation `epsilon_star`.
pub fn solve_weight_bounds(
    pcs: &PairwiseComparisonSystem,
    epsilon_star: f64,
    k: usize,
) -> Result<Interval> {
    if k >= pcs.n() {
        return Err(BwmError::IndexNotInD { index: k });
    }
    let ratios = feasible_ratios(pcs, epsilon_star);
    let (Some(&r_min), Some(&r_max)) = (ratios.first(), ratios.last()) else {
        return Err(BwmError::InfeasibleEpsilon(epsilon_star));
    };
    let lower_at = |r: f64| weight_extremes(pcs, epsilon_star, r, k).0;
    let upper_at = |r: f64| weight_extremes(pcs, epsilon_star, r, k).1;
    if r_max - r_min <= GUARD * r_max.max(1.0) {
        return Ok(Interval {
            lower: lower_at(r_min),
            upper: upper_at(r_min),
        });
    }
    let step = (r_max - r_min) / WEIGHT_GRID_POINTS as f64;
    let grid: Vec<f64> = (0..=WEIGHT_GRID_POINTS)
        .map(|j| r_min + step * j as f64)
        .collect();
    let refine = |f: &dyn Fn(f64) -> f64| -> f64 {
        let (j, _) = grid.iter().enumerate().map(|(j, &r)| (j, f(r))).fold(
            (0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
        let a = grid[j.saturating_sub(1)];
        let b = grid[(j + 1).min(WEIGHT_GRID_POINTS)];
        golden_max(f, a, b)
    };
    let upper = refine(&upper_at);
    let lower = -refine(&|r| -lower_at(r));
    Ok(Interval { lower, upper })
}

/// [`solve_weight_bounds`] for every criterion.
pub fn solve_all_weight_bounds(
    pcs: &PairwiseComparisonSystem,
    epsilon_star: f64,
) -> Result<Vec<Interval>> {
    (0..pcs.n())
        .map(|k| solve_weight_bounds(pcs, epsilon_star, k))
        .collect()
}

/// A random valid system with entries drawn from `scale`, reproducible from
/// `seed`. With `multi_roles` and `n >= 3` there are at least two best
/// criteria and one or two worst.
pub fn random_pcs(
    scale: &Scale,
    n: usize,
    multi_roles: bool,
    seed: u64,
) -> PairwiseComparisonSystem {
    assert!(n >= 2, "random_pcs needs n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values: Vec<f64> = scale.levels().iter().map(|l| l.value).collect();
    let top = if values.len() > 1 {
        rng.gen_range(1..values.len())
    } else {
        0
    };
    let abw = values[top];

    let (n_best, n_worst) = if multi_roles && n >= 3 {
        let nb = rng.gen_range(2..=3.min(n - 1));
        let nw = rng.gen_range(1..=2.min(n - nb));
        (nb, nw)
    } else {
        (1, 1)
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut best = order[..n_best].to_vec();
    let mut worst = order[n_best..n_best + n_worst].to_vec();
    best.sort_unstable();
    worst.sort_unstable();

    let mut bto = vec![0.0; n];
    let mut otw = vec![0.0; n];
    for k in 0..n {
        if best.contains(&k) {
            (bto[k], otw[k]) = (1.0, abw);
        } else if worst.contains(&k) {
            (bto[k], otw[k]) = (abw, 1.0);
        } else {
            bto[k] = values[rng.gen_range(0..=top)];
            otw[k] = values[rng.gen_range(0..=top)];
        }
    }
    let pcs = PairwiseComparisonSystem::new(bto, otw, &best, &worst)
        .expect("generated system satisfies the role invariants");
    match scale.name().parse::<ScaleId>() {
        Ok(id) => pcs.with_scale(id),
        Err(_) => pcs,
    }
}
