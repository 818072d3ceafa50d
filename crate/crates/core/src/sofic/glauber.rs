use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{stream_rng, SoficMap};
use crate::error::{invalid, Result};
use crate::numeric::logistic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InitialState {
    AllPlus,
    AllMinus,
    /// I.i.d. uniform spins.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlauberRecord {
    pub step: u64,
    pub magnetization: f64,
}

/// Heat-bath probability of `+1` given neighbor spin sum `S`:
/// `e^{JS} / (2 cosh(JS))`.
pub fn heat_bath_plus_probability(coupling: f64, spin_sum: f64) -> f64 {
    logistic(2.0 * coupling * spin_sum)
}

/// Single-site heat-bath dynamics for the Ising model on `σ`. Each step picks
/// a uniform site and resamples it from its conditional law given the `2r`
/// neighbors (self-loops contribute a constant and are skipped). The
/// magnetization is recorded at step 0 and every `record_every` steps.
/// The dynamics draws from stream 1 of `seed`.
pub fn glauber_run(
    sigma: &SoficMap,
    coupling: f64,
    steps: u64,
    seed: u64,
    record_every: u64,
    initial: InitialState,
) -> Result<Vec<GlauberRecord>> {
    if !coupling.is_finite() {
        return Err(invalid("J", format!("coupling must be finite, got {coupling}")));
    }
    if record_every < 1 {
        return Err(invalid("record_every", "must be at least 1"));
    }
    let n = sigma.n();
    let mut rng = stream_rng(seed, 1);
    let mut spins: Vec<i8> = match initial {
        InitialState::AllPlus => vec![1; n],
        InitialState::AllMinus => vec![-1; n],
        InitialState::Random => (0..n).map(|_| if rng.random::<bool>() { 1 } else { -1 }).collect(),
    };
    let mut total: i64 = spins.iter().map(|&s| s as i64).sum();
    let nf = n as f64;
    let mut records = Vec::with_capacity((steps / record_every + 1) as usize);
    records.push(GlauberRecord {
        step: 0,
        magnetization: total as f64 / nf,
    });
    for step in 1..=steps {
        let v = rng.random_range(0..n);
        let mut sum: i64 = 0;
        for i in 0..sigma.rank() {
            let fwd = sigma.forward(i, v);
            if fwd != v {
                sum += spins[fwd] as i64 + spins[sigma.backward(i, v)] as i64;
            }
        }
        let p_plus = heat_bath_plus_probability(coupling, sum as f64);
        let new: i8 = if rng.random::<f64>() < p_plus { 1 } else { -1 };
        total += (new - spins[v]) as i64;
        spins[v] = new;
        if step % record_every == 0 {
            records.push(GlauberRecord {
                step,
                magnetization: total as f64 / nf,
            });
        }
    }
    Ok(records)
}
