#![allow(dead_code)]

use bwm_core::consistency::{consistency_index, consistency_ratio};
use bwm_core::deviation::{abw_star, classify, deviation_profile, epsilon_i, epsilon_ij, Class};
use bwm_core::interval::interval_weights;
use bwm_core::model::{
    is_consistent, weights_from_consistent, PairwiseComparisonSystem, Role, DEFAULT_TOLERANCE,
};
use bwm_core::modified::{best_modified_pcs, max_modification};
use bwm_core::oracle::random_pcs;
use bwm_core::report::{analyze, AnalysisOptions};
use bwm_core::scale::{Scale, ScaleId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn scale_for(k: u64) -> Scale {
    ScaleId::BUILT_IN[(k % 4) as usize].scale().unwrap()
}

/// Random system with entries from one of the built-in scales, so all
/// entries lie in `[1, a_bw]`.
pub fn bounded(seed: u64) -> PairwiseComparisonSystem {
    let n = 2 + ((seed / 4) % 7) as usize;
    random_pcs(&scale_for(seed), n, seed.is_multiple_of(3), seed)
}

/// Like [`bounded`] but with at least one criterion outside the best and
/// worst sets.
pub fn bounded_with_others(seed: u64) -> PairwiseComparisonSystem {
    let n = 4 + ((seed / 4) % 5) as usize;
    random_pcs(&scale_for(seed), n, seed.is_multiple_of(3), seed)
}

/// Random consistent system with continuous entries in `[1, a_bw]`.
pub fn consistent(seed: u64) -> PairwiseComparisonSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let abw: f64 = rng.gen_range(1.5..16.0);
    let n = rng.gen_range(3..=8);
    let n_best = if n >= 4 { rng.gen_range(1..=2) } else { 1 };
    let n_worst = if n - n_best >= 3 {
        rng.gen_range(1..=2)
    } else {
        1
    };
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let best: Vec<usize> = order[..n_best].to_vec();
    let worst: Vec<usize> = order[n_best..n_best + n_worst].to_vec();
    let mut bto = vec![0.0; n];
    let mut otw = vec![0.0; n];
    for k in 0..n {
        if best.contains(&k) {
            (bto[k], otw[k]) = (1.0, abw);
        } else if worst.contains(&k) {
            (bto[k], otw[k]) = (abw, 1.0);
        } else {
            let b: f64 = rng.gen_range(1.0..=abw);
            (bto[k], otw[k]) = (b, abw / b);
        }
    }
    PairwiseComparisonSystem::new(bto, otw, &best, &worst).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every single and pairwise deviation is at most ε*.
pub fn deviations_bounded(pcs: &PairwiseComparisonSystem) -> Check {
    let p = deviation_profile(pcs);
    for (&i, &e) in &p.eps_i {
        ensure(e <= p.epsilon_star, || {
            format!("eps_{i} = {e} > {}", p.epsilon_star)
        })?;
    }
    for (&(i, j), &e) in &p.eps_ij {
        ensure(e <= p.epsilon_star, || {
            format!("eps_{i},{j} = {e} > {}", p.epsilon_star)
        })?;
    }
    Ok(())
}

/// ε_{i,j} is symmetric to the bit and balances the two criteria.
pub fn pair_symmetry_and_balance(pcs: &PairwiseComparisonSystem) -> Check {
    let others = pcs.others();
    for (a, &i) in others.iter().enumerate() {
        for &j in &others[a + 1..] {
            let e = epsilon_ij(pcs, i, j).unwrap();
            let f = epsilon_ij(pcs, j, i).unwrap();
            ensure(e.to_bits() == f.to_bits(), || {
                format!("eps({i},{j}) = {e} but eps({j},{i}) = {f}")
            })?;
            let (lo, hi) = if pcs.product(i) < pcs.product(j) {
                (i, j)
            } else {
                (j, i)
            };
            let left = (pcs.a_b(lo) + e) * (pcs.a_w(lo) + e);
            let right = (pcs.a_b(hi) - e) * (pcs.a_w(hi) - e);
            ensure((left - right).abs() <= 1e-9 * left.abs().max(1.0), || {
                format!("balance ({lo},{hi}): {left} vs {right}")
            })?;
        }
    }
    Ok(())
}

/// A system of four criteria with `i` and `j` (indices 1 and 2) between the
/// best (0) and worst (3), plus an optional third other criterion `k`.
pub fn dominance_system(
    abw: f64,
    i: (f64, f64),
    j: (f64, f64),
    k: Option<(f64, f64)>,
) -> PairwiseComparisonSystem {
    let mut bto = vec![1.0, i.0, j.0];
    let mut otw = vec![abw, i.1, j.1];
    if let Some(k) = k {
        bto.push(k.0);
        otw.push(k.1);
    }
    bto.push(abw);
    otw.push(1.0);
    let last = bto.len() - 1;
    PairwiseComparisonSystem::new(bto, otw, &[0], &[last]).unwrap()
}

/// With `j` dominating `i` componentwise: below `a_bw` the dominated
/// criterion deviates at least as much, above it at most as much, and the
/// same ordering carries over to pairs with a third criterion.
pub fn dominance(pcs: &PairwiseComparisonSystem) -> Check {
    let (i, j) = (1, 2);
    debug_assert!(pcs.a_b(i) <= pcs.a_b(j) && pcs.a_w(i) <= pcs.a_w(j));
    let (ei, ej) = (epsilon_i(pcs, i).unwrap(), epsilon_i(pcs, j).unwrap());
    let slack = 1e-12;
    match (classify(pcs, i), classify(pcs, j)) {
        (Class::Below, Class::Below) => ensure(ej <= ei + slack, || {
            format!("below: eps_j {ej} > eps_i {ei}")
        })?,
        (Class::Above, Class::Above) => ensure(ei <= ej + slack, || {
            format!("above: eps_i {ei} > eps_j {ej}")
        })?,
        _ => {}
    }
    if pcs.n() == 5 {
        let k = 3;
        let (pk, pi, pj) = (pcs.product(k), pcs.product(i), pcs.product(j));
        let (eik, ejk) = (
            epsilon_ij(pcs, i, k).unwrap(),
            epsilon_ij(pcs, j, k).unwrap(),
        );
        if pk >= pj && pk >= pi {
            ensure(ejk <= eik + slack, || {
                format!("pair above: eps_jk {ejk} > eps_ik {eik}")
            })?;
        } else if pk <= pi && pk <= pj {
            ensure(eik <= ejk + slack, || {
                format!("pair below: eps_ik {eik} > eps_jk {ejk}")
            })?;
        }
    }
    Ok(())
}

/// Best weights sum to one and lie inside well-formed intervals.
pub fn weights_inside_intervals(pcs: &PairwiseComparisonSystem) -> Check {
    let iv = interval_weights(pcs);
    let w = best_modified_pcs(pcs).weights();
    ensure((w.sum() - 1.0).abs() <= 1e-9, || {
        format!("weights sum to {}", w.sum())
    })?;
    for k in 0..pcs.n() {
        ensure(iv[k].lower <= iv[k].upper, || {
            format!("c{}: lower {} > upper {}", k + 1, iv[k].lower, iv[k].upper)
        })?;
        ensure(iv[k].contains(w[k], 1e-12), || {
            format!(
                "c{}: weight {} outside [{}, {}]",
                k + 1,
                w[k],
                iv[k].lower,
                iv[k].upper
            )
        })?;
    }
    Ok(())
}

/// A consistent system is its own best modification and its intervals
/// collapse onto the exact weights.
pub fn consistent_fixed_point(pcs: &PairwiseComparisonSystem) -> Check {
    ensure(is_consistent(pcs, DEFAULT_TOLERANCE), || {
        "generator produced an inconsistent system".into()
    })?;
    let p = deviation_profile(pcs);
    ensure(p.epsilon_star <= 1e-9, || {
        format!("epsilon* = {}", p.epsilon_star)
    })?;
    let best = best_modified_pcs(pcs);
    let moved = max_modification(pcs, best.pcs());
    ensure(moved <= 1e-9 * pcs.abw(), || {
        format!("best system moved by {moved}")
    })?;
    let exact = weights_from_consistent(pcs).unwrap();
    let iv = interval_weights(pcs);
    for k in 0..pcs.n() {
        ensure(
            (iv[k].lower - exact[k]).abs() <= 1e-9 && (iv[k].upper - exact[k]).abs() <= 1e-9,
            || {
                format!(
                    "c{}: [{}, {}] vs exact {}",
                    k + 1,
                    iv[k].lower,
                    iv[k].upper,
                    exact[k]
                )
            },
        )?;
    }
    Ok(())
}

/// Relabelling criteria permutes the report; criteria sharing a role get
/// bit-identical weights and intervals.
pub fn permutation_invariance(pcs: &PairwiseComparisonSystem, perm: &[usize]) -> Check {
    let options = AnalysisOptions::default();
    let a = analyze(pcs, &options);
    let b = analyze(&pcs.permuted(perm).unwrap(), &options);
    ensure(a.epsilon_star.to_bits() == b.epsilon_star.to_bits(), || {
        format!("epsilon* {} vs {}", a.epsilon_star, b.epsilon_star)
    })?;
    ensure(a.cr == b.cr, || format!("cr {:?} vs {:?}", a.cr, b.cr))?;
    let tol = 1e-12;
    for (new, &old) in perm.iter().enumerate() {
        ensure(
            (a.best_weights[old] - b.best_weights[new]).abs() <= tol,
            || {
                format!(
                    "weight of c{} changed: {} vs {}",
                    old + 1,
                    a.best_weights[old],
                    b.best_weights[new]
                )
            },
        )?;
        let (x, y) = (a.intervals[old], b.intervals[new]);
        ensure(
            (x.lower - y.lower).abs() <= tol && (x.upper - y.upper).abs() <= tol,
            || format!("interval of c{} changed: {x:?} vs {y:?}", old + 1),
        )?;
    }
    for group in [pcs.best_indices(), pcs.worst_indices()] {
        for &k in &group[1..] {
            let first = group[0];
            ensure(
                a.best_weights[k].to_bits() == a.best_weights[first].to_bits(),
                || {
                    format!(
                        "c{} and c{} share a role but differ in weight",
                        first + 1,
                        k + 1
                    )
                },
            )?;
            ensure(a.intervals[k] == a.intervals[first], || {
                format!(
                    "c{} and c{} share a role but differ in interval",
                    first + 1,
                    k + 1
                )
            })?;
        }
    }
    Ok(())
}

/// Permutation that shuffles only the criteria that are neither best nor
/// worst.
pub fn shuffle_others(pcs: &PairwiseComparisonSystem, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..pcs.n()).collect();
    let others = pcs.others().to_vec();
    let mut shuffled = others.clone();
    shuffled.shuffle(&mut rng);
    for (slot, src) in others.iter().zip(shuffled) {
        perm[*slot] = src;
    }
    perm
}

pub fn shuffle_all(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

fn cr(pcs: &PairwiseComparisonSystem) -> f64 {
    consistency_ratio(pcs)
        .cr
        .expect("a_bw > 1 on bounded systems")
}

/// CR lies in [0, 1] when entries respect their bounds, and ε* never
/// exceeds the consistency index.
pub fn cr_normalized(pcs: &PairwiseComparisonSystem) -> Check {
    if pcs.abw() <= 1.0 {
        return Ok(());
    }
    let a = consistency_ratio(pcs);
    ensure(a.bounds_respected, || "generator left the bounds".into())?;
    let ci = consistency_index(pcs.abw()).unwrap();
    ensure(a.epsilon_star <= ci + 1e-12, || {
        format!("epsilon* {} > CI {ci}", a.epsilon_star)
    })?;
    let v = cr(pcs);
    ensure((0.0..=1.0 + 1e-12).contains(&v), || format!("cr = {v}"))
}

/// CR vanishes on consistent systems and is positive once one entry moves.
pub fn cr_zero_iff_consistent(pcs: &PairwiseComparisonSystem, seed: u64) -> Check {
    ensure(cr(pcs) <= 1e-9, || {
        format!("consistent system has cr {}", cr(pcs))
    })?;
    let Some(&i) = pcs.others().first() else {
        return Ok(());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let factor: f64 = if rng.gen_bool(0.5) {
        rng.gen_range(1.01..1.5)
    } else {
        rng.gen_range(0.67..0.99)
    };
    let mut bto = pcs.best_to_other().to_vec();
    bto[i] *= factor;
    let moved = PairwiseComparisonSystem::new(
        bto,
        pcs.other_to_worst().to_vec(),
        pcs.best_indices(),
        pcs.worst_indices(),
    )
    .unwrap();
    ensure(!is_consistent(&moved, DEFAULT_TOLERANCE), || {
        "perturbation kept consistency".into()
    })?;
    ensure(cr(&moved) > 0.0, || {
        format!("perturbed system has cr {}", cr(&moved))
    })
}

/// Relabelling the non-best/worst criteria leaves CR unchanged to the bit.
pub fn cr_permutation(pcs: &PairwiseComparisonSystem, seed: u64) -> Check {
    let perm = shuffle_others(pcs, seed);
    let before = consistency_ratio(pcs).cr;
    let after = consistency_ratio(&pcs.permuted(&perm).unwrap()).cr;
    ensure(before.map(f64::to_bits) == after.map(f64::to_bits), || {
        format!("{before:?} vs {after:?}")
    })
}

/// Removing a non-best/worst criterion never raises CR.
pub fn cr_elimination(pcs: &PairwiseComparisonSystem) -> Check {
    let before = cr(pcs);
    for &k in pcs.others() {
        let after = cr(&pcs.without_criterion(k).unwrap());
        ensure(after <= before, || {
            format!("removing c{} raised cr from {before} to {after}", k + 1)
        })?;
    }
    Ok(())
}

/// Moving one best-to-other entry of a consistent system further from its
/// consistent value, within `[1, a_bw]`, never lowers CR.
pub fn cr_monotone(pcs: &PairwiseComparisonSystem, seed: u64) -> Check {
    let Some(&i) = pcs.others().first() else {
        return Ok(());
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = pcs.a_b(i);
    let end = if rng.gen_bool(0.5) { pcs.abw() } else { 1.0 };
    let mut steps: Vec<f64> = (0..4).map(|_| rng.gen_range(0.0..=1.0)).collect();
    steps.sort_by(f64::total_cmp);
    let mut last = 0.0;
    for t in steps {
        let mut bto = pcs.best_to_other().to_vec();
        bto[i] = start + t * (end - start);
        let moved = PairwiseComparisonSystem::new(
            bto,
            pcs.other_to_worst().to_vec(),
            pcs.best_indices(),
            pcs.worst_indices(),
        )
        .unwrap();
        let now = cr(&moved);
        ensure(now + 1e-12 >= last, || {
            format!("cr fell from {last} to {now} at step {t}")
        })?;
        last = now;
    }
    Ok(())
}

/// A 1e-6 change to any single judgement moves CR by less than 1e-3.
pub fn cr_continuity(pcs: &PairwiseComparisonSystem) -> Check {
    if pcs.abw() <= 1.0 {
        return Ok(());
    }
    let base = cr(pcs);
    let delta = 1e-6;
    let rebuild = |bto: Vec<f64>, otw: Vec<f64>| {
        PairwiseComparisonSystem::new(bto, otw, pcs.best_indices(), pcs.worst_indices()).unwrap()
    };
    let mut variants = Vec::new();
    for &i in pcs.others() {
        let mut bto = pcs.best_to_other().to_vec();
        bto[i] += delta;
        variants.push(rebuild(bto, pcs.other_to_worst().to_vec()));
        let mut otw = pcs.other_to_worst().to_vec();
        otw[i] += delta;
        variants.push(rebuild(pcs.best_to_other().to_vec(), otw));
    }
    let (mut bto, mut otw) = (pcs.best_to_other().to_vec(), pcs.other_to_worst().to_vec());
    for k in 0..pcs.n() {
        match pcs.role(k) {
            Role::Best => otw[k] += delta,
            Role::Worst => bto[k] += delta,
            Role::Other => {}
        }
    }
    variants.push(rebuild(bto, otw));
    for v in variants {
        let now = cr(&v);
        ensure((now - base).abs() < 1e-3, || {
            format!("cr jumped from {base} to {now}")
        })?;
    }
    Ok(())
}

/// The best modified system moves no entry by more than ε*, and the anchor
/// entries move by exactly ε*.
pub fn modification_residuals(pcs: &PairwiseComparisonSystem) -> Check {
    let p = deviation_profile(pcs);
    let best = best_modified_pcs(pcs);
    let moved = max_modification(pcs, best.pcs());
    ensure(moved <= p.epsilon_star + 1e-9, || {
        format!("moved {moved} > epsilon* {}", p.epsilon_star)
    })?;
    ensure((moved - p.epsilon_star).abs() <= 1e-9, || {
        format!("moved {moved} but epsilon* {}", p.epsilon_star)
    })?;
    let r = abw_star(&p, pcs);
    ensure(r > 0.0, || format!("a_bw* = {r}"))
}
