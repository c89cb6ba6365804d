use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::float::Scalar;
use crate::qsim::StateVector;

/// Draws `shots` computational-basis measurements from |amp|^2.
///
/// Keys are bitstrings with character `k` = qubit `k`; only observed outcomes
/// appear. Identical seeds give identical counts.
pub fn sample_measurements<T: Scalar>(
    state: &StateVector<T>,
    shots: u64,
    seed: u64,
) -> BTreeMap<String, u64> {
    assert!(shots >= 1, "need at least one shot");
    let n = state.n_qubits();

    // Cumulative distribution in f64 regardless of T; sampling precision is
    // not tolerance-critical and this keeps draws identical across scalars.
    let mut cdf = Vec::with_capacity(state.amps().len());
    let mut acc = 0.0f64;
    for amp in state.amps() {
        acc += amp.norm_sqr().to_f64();
        cdf.push(acc);
    }
    let total = acc;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for _ in 0..shots {
        let r: f64 = rng.gen::<f64>() * total;
        let idx = match cdf.binary_search_by(|p| p.partial_cmp(&r).unwrap()) {
            Ok(i) | Err(i) => i.min(cdf.len() - 1),
        };
        *counts.entry(bitstring(idx, n)).or_insert(0) += 1;
    }
    counts
}

fn bitstring(index: usize, n_qubits: usize) -> String {
    (0..n_qubits)
        .map(|q| if (index >> q) & 1 == 1 { '1' } else { '0' })
        .collect()
}
