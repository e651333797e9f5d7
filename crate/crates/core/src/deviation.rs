//! Per-criterion and per-pair deviations and the optimal deviation ε*.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{BwmError, Result};
use crate::model::{rel_eq, PairwiseComparisonSystem, Role, Warning, WarningCode};

/// Relative tolerance used to place a product `a_bi a_iw` exactly on `a_bw`.
pub const CLASS_TOLERANCE: f64 = 1e-9;

const TIE_TOLERANCE: f64 = 1e-12;

/// Position of `a_bi a_iw` relative to `a_bw`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    Below,
    Above,
    Equal,
}

pub fn classify(pcs: &PairwiseComparisonSystem, i: usize) -> Class {
    let p = pcs.product(i);
    if rel_eq(p, pcs.abw(), CLASS_TOLERANCE) {
        Class::Equal
    } else if p < pcs.abw() {
        Class::Below
    } else {
        Class::Above
    }
}

fn check_other(pcs: &PairwiseComparisonSystem, i: usize) -> Result<()> {
    if i >= pcs.n() || pcs.role(i) != Role::Other {
        return Err(BwmError::IndexNotInD { index: i });
    }
    Ok(())
}

/// Smallest nonnegative ε with `(a_bi ± ε)(a_iw ± ε) = a_bw ∓ ε`.
pub(crate) fn eps_single(ab: f64, aw: f64, abw: f64) -> f64 {
    let s = ab + aw + 1.0;
    let delta = ab * aw - abw;
    let disc = (s * s - 4.0 * delta).max(0.0);
    (2.0 * delta / (s + disc.sqrt())).abs()
}

/// ε balancing two criteria: `(a_bi + ε)(a_iw + ε) = (a_bj - ε)(a_jw - ε)`
/// where `i` has the smaller product.
pub(crate) fn eps_pair(ab_lo: f64, aw_lo: f64, ab_hi: f64, aw_hi: f64) -> f64 {
    ((ab_hi * aw_hi - ab_lo * aw_lo) / ((ab_lo + aw_lo) + (ab_hi + aw_hi))).abs()
}

/// Order two criteria by product, then by index.
fn ordered(pcs: &PairwiseComparisonSystem, i: usize, j: usize) -> (usize, usize) {
    let (pi, pj) = (pcs.product(i), pcs.product(j));
    if pi < pj || (pi == pj && i < j) {
        (i, j)
    } else {
        (j, i)
    }
}

/// ε_i for a criterion that is neither best nor worst. Zero when the
/// criterion is already consistent.
pub fn epsilon_i(pcs: &PairwiseComparisonSystem, i: usize) -> Result<f64> {
    check_other(pcs, i)?;
    Ok(epsilon_i_unchecked(pcs, i))
}

fn epsilon_i_unchecked(pcs: &PairwiseComparisonSystem, i: usize) -> f64 {
    match classify(pcs, i) {
        Class::Equal => 0.0,
        _ => eps_single(pcs.a_b(i), pcs.a_w(i), pcs.abw()),
    }
}

/// ε_{i,j} for two criteria that are neither best nor worst. Symmetric in
/// its arguments to the bit.
pub fn epsilon_ij(pcs: &PairwiseComparisonSystem, i: usize, j: usize) -> Result<f64> {
    check_other(pcs, i)?;
    check_other(pcs, j)?;
    Ok(epsilon_ij_unchecked(pcs, i, j))
}

fn epsilon_ij_unchecked(pcs: &PairwiseComparisonSystem, i: usize, j: usize) -> f64 {
    let (lo, hi) = ordered(pcs, i, j);
    eps_pair(pcs.a_b(lo), pcs.a_w(lo), pcs.a_b(hi), pcs.a_w(hi))
}

/// Entry of the profile that attains ε*.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    /// A criterion with product below `a_bw`.
    Below(usize),
    /// A criterion with product above `a_bw`.
    Above(usize),
    /// Two criteria; the first has the smaller product.
    Pair(usize, usize),
    /// ε* = 0.
    Empty,
}

impl Anchor {
    pub fn kind(&self) -> &'static str {
        match self {
            Anchor::Below(_) => "below",
            Anchor::Above(_) => "above",
            Anchor::Pair(..) => "pair",
            Anchor::Empty => "empty",
        }
    }

    /// Criteria named by the anchor, 1-based.
    pub fn criteria(&self) -> Vec<usize> {
        match *self {
            Anchor::Below(i) | Anchor::Above(i) => vec![i + 1],
            Anchor::Pair(i, j) => vec![i + 1, j + 1],
            Anchor::Empty => Vec::new(),
        }
    }
}

impl Serialize for Anchor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Anchor", 2)?;
        s.serialize_field("kind", self.kind())?;
        s.serialize_field("criteria", &self.criteria())?;
        s.end()
    }
}

/// Partition of the non-best/worst criteria and every deviation candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationProfile {
    pub d1: Vec<usize>,
    pub d2: Vec<usize>,
    pub d3: Vec<usize>,
    pub eps_i: BTreeMap<usize, f64>,
    /// Keyed by `(i, j)` with `i < j`.
    pub eps_ij: BTreeMap<(usize, usize), f64>,
    pub epsilon_star: f64,
    pub anchor: Anchor,
    /// Every entry attaining ε*, in precedence order. `anchor` is the first.
    pub ties: Vec<Anchor>,
}

pub fn deviation_profile(pcs: &PairwiseComparisonSystem) -> DeviationProfile {
    let others = pcs.others();
    let (mut d1, mut d2, mut d3) = (Vec::new(), Vec::new(), Vec::new());
    let mut eps_i = BTreeMap::new();
    for &i in others {
        match classify(pcs, i) {
            Class::Below => d1.push(i),
            Class::Above => d2.push(i),
            Class::Equal => d3.push(i),
        }
        eps_i.insert(i, epsilon_i_unchecked(pcs, i));
    }
    let mut eps_ij = BTreeMap::new();
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            eps_ij.insert((i, j), epsilon_ij_unchecked(pcs, i, j));
        }
    }

    let epsilon_star = eps_i
        .values()
        .chain(eps_ij.values())
        .fold(0.0f64, |m, &v| m.max(v));

    let mut ties = Vec::new();
    if epsilon_star > 0.0 {
        let attains = |v: f64| epsilon_star - v <= TIE_TOLERANCE * epsilon_star.max(1.0);
        for (&(i, j), &v) in &eps_ij {
            if attains(v) {
                let (lo, hi) = ordered(pcs, i, j);
                ties.push(Anchor::Pair(lo, hi));
            }
        }
        ties.extend(
            d1.iter()
                .filter(|i| attains(eps_i[i]))
                .map(|&i| Anchor::Below(i)),
        );
        ties.extend(
            d2.iter()
                .filter(|i| attains(eps_i[i]))
                .map(|&i| Anchor::Above(i)),
        );
    }
    let anchor = ties.first().copied().unwrap_or(Anchor::Empty);

    DeviationProfile {
        d1,
        d2,
        d3,
        eps_i,
        eps_ij,
        epsilon_star,
        anchor,
        ties,
    }
}

fn abw_star_for(pcs: &PairwiseComparisonSystem, anchor: Anchor, eps: f64) -> f64 {
    match anchor {
        Anchor::Below(_) => pcs.abw() - eps,
        Anchor::Above(_) => pcs.abw() + eps,
        Anchor::Pair(i, _) => (pcs.a_b(i) + eps) * (pcs.a_w(i) + eps),
        Anchor::Empty => pcs.abw(),
    }
}

/// Optimally modified best-to-worst ratio `ã_bw*` implied by the anchor.
pub fn abw_star(profile: &DeviationProfile, pcs: &PairwiseComparisonSystem) -> f64 {
    abw_star_for(pcs, profile.anchor, profile.epsilon_star)
}

/// Warnings for tied anchors whose `ã_bw*` values disagree.
pub fn tie_warnings(profile: &DeviationProfile, pcs: &PairwiseComparisonSystem) -> Vec<Warning> {
    let chosen = abw_star(profile, pcs);
    profile
        .ties
        .iter()
        .skip(1)
        .filter_map(|&t| {
            let other = abw_star_for(pcs, t, profile.epsilon_star);
            (!rel_eq(other, chosen, 1e-9)).then(|| {
                Warning::new(
                    WarningCode::AnchorTieDisagreement,
                    format!(
                        "tied {} anchor {:?} gives a_bw* = {other}, chosen anchor gives {chosen}",
                        t.kind(),
                        t.criteria()
                    ),
                )
            })
        })
        .collect()
}
