//! Shared instance generation for the integration suites. Not every test
//! binary uses every item.
#![allow(dead_code)]

use gcss::rng::SplitMix64;
use gcss::{DenseMatrix, TargetSpec};

/// One randomized test instance: a source matrix, a target recipe and a
/// subset size. Everything derives from the instance seed.
pub struct Instance {
    pub a: DenseMatrix,
    pub spec: TargetSpec,
    pub l: usize,
    pub seed: u64,
}

pub fn uniform_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> DenseMatrix {
    DenseMatrix::from_fn(rows, cols, |_, _| rng.next_in(-1.0, 1.0))
}

/// Deterministic stream of desk-scale instances: m ∈ [3,8], n ∈ [4,10],
/// l ∈ [1,3], entries uniform in [−1,1], cycling through all five target
/// variants.
pub fn instance_stream(count: usize, base_seed: u64) -> Vec<Instance> {
    (0..count)
        .map(|k| {
            let seed = base_seed.wrapping_add(k as u64).wrapping_mul(0x9E37_79B9);
            let mut rng = SplitMix64::new(seed);
            let m = 3 + rng.next_index(6); // 3..=8
            let n = 4 + rng.next_index(7); // 4..=10
            let l = 1 + rng.next_index(3); // 1..=3
            let a = uniform_matrix(&mut rng, m, n);
            let spec = match k % 5 {
                0 => TargetSpec::SelfTarget,
                1 => TargetSpec::RandomProjection {
                    r: 1 + rng.next_index(4),
                    seed: rng.next_u64(),
                },
                2 => TargetSpec::FeaturePartition {
                    c: 1 + rng.next_index(n),
                    seed: rng.next_u64(),
                },
                3 => TargetSpec::Svd {
                    k: 1 + rng.next_index(m.min(n).min(3)),
                },
                _ => {
                    let r = 1 + rng.next_index(4);
                    TargetSpec::External(uniform_matrix(&mut rng, m, r))
                }
            };
            Instance { a, spec, l, seed }
        })
        .collect()
}
