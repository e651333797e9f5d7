//! Reference systems from the published worked examples.
//!
//! Entries are the rounded decimals as printed (for example `1.8571` rather
//! than 13/7) except where the value is an exact surd.

use crate::model::PairwiseComparisonSystem;
use crate::scale::ScaleId;

fn single(bto: Vec<f64>, otw: Vec<f64>, scale: ScaleId) -> PairwiseComparisonSystem {
    let n = bto.len();
    PairwiseComparisonSystem::new(bto, otw, &[0], &[n - 1])
        .expect("fixture is valid")
        .with_scale(scale)
}

/// Five criteria on the Salo-Hamalainen scale.
pub fn example1() -> PairwiseComparisonSystem {
    single(
        vec![1.0, 9.0, 3.0, 1.8571, 9.0],
        vec![9.0, 1.5, 4.0, 3.0, 1.0],
        ScaleId::Salo,
    )
}

/// Five criteria on the Lootsma scale.
pub fn example2() -> PairwiseComparisonSystem {
    let r2 = 2f64.sqrt();
    single(
        vec![1.0, 16.0, 4.0 * r2, 2.0 * r2, 16.0],
        vec![16.0, 2.0 * r2, 4.0 * r2, r2, 1.0],
        ScaleId::Lootsma,
    )
}

/// Five criteria on the Donegan-Dodd-McMaster scale.
pub fn example3() -> PairwiseComparisonSystem {
    single(
        vec![1.0, 5.8284, 3.2289, 1.0, 5.8284],
        vec![5.8284, 1.967, 3.2289, 1.967, 1.0],
        ScaleId::Ddm7,
    )
}

/// The two decision makers' Saaty-scale systems that are aggregated into
/// [`example4`].
pub fn example4_group() -> [PairwiseComparisonSystem; 2] {
    [
        single(
            vec![1.0, 5.0, 1.0, 3.0, 7.0],
            vec![7.0, 2.0, 7.0, 1.0, 1.0],
            ScaleId::Saaty,
        ),
        single(
            vec![1.0, 2.0, 5.0, 2.0, 7.0],
            vec![7.0, 5.0, 3.0, 3.0, 1.0],
            ScaleId::Saaty,
        ),
    ]
}

/// Geometric-mean aggregate of [`example4_group`], with exact surds.
pub fn example4() -> PairwiseComparisonSystem {
    single(
        vec![1.0, 10f64.sqrt(), 5f64.sqrt(), 6f64.sqrt(), 7.0],
        vec![7.0, 10f64.sqrt(), 21f64.sqrt(), 3f64.sqrt(), 1.0],
        ScaleId::Saaty,
    )
}

/// Four Saaty-scale criteria whose deviation equals the consistency index.
pub fn example5() -> PairwiseComparisonSystem {
    single(
        vec![1.0, 1.0, 2.0, 2.0],
        vec![2.0, 1.0, 2.0, 1.0],
        ScaleId::Saaty,
    )
}

/// Two best criteria (c1, c2) and one worst (c4).
pub fn example6() -> PairwiseComparisonSystem {
    PairwiseComparisonSystem::new(
        vec![1.0, 1.0, 2.0, 7.0],
        vec![7.0, 7.0, 3.0, 1.0],
        &[0, 1],
        &[3],
    )
    .expect("fixture is valid")
    .with_scale(ScaleId::Saaty)
}

/// [`example6`] read with c1 as the only best criterion.
pub fn example6_single_best() -> PairwiseComparisonSystem {
    single(
        vec![1.0, 1.0, 2.0, 7.0],
        vec![7.0, 7.0, 3.0, 1.0],
        ScaleId::Saaty,
    )
}

/// A consistent three-criterion system: 2 × 2 = 4.
pub fn consistent3() -> PairwiseComparisonSystem {
    single(vec![1.0, 2.0, 4.0], vec![4.0, 2.0, 1.0], ScaleId::Saaty)
}

/// All numbered examples, in order.
pub fn all_examples() -> Vec<(&'static str, PairwiseComparisonSystem)> {
    vec![
        ("example1", example1()),
        ("example2", example2()),
        ("example3", example3()),
        ("example4", example4()),
        ("example5", example5()),
        ("example6", example6()),
    ]
}
