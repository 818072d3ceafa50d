//! Exhaustive enumeration of `{-1, +1}^n` in Gray-code order. Each step flips
//! one spin and updates the per-generator `(+,+)` pair counts in `O(r)`, which
//! together with `n_+` determine energy and membership in edge balls.

use serde::{Deserialize, Serialize};

use super::{EdgeBall, SoficMap};
use crate::error::{Error, Result};
use crate::ising::IsingChain;
use crate::numeric::log_sum_exp;

pub const MAX_ENUMERATION_N: usize = 28;

fn check_size(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ENUMERATION_N,
        });
    }
    Ok(())
}

/// Visit every configuration once, passing `n_+` and the per-generator
/// `a_{++}` counts. Starts from all-minus.
fn walk(sigma: &SoficMap, mut visit: impl FnMut(usize, &[usize])) {
    let n = sigma.n();
    let r = sigma.rank();
    let mut plus = vec![false; n];
    let mut plus_plus = vec![0usize; r];
    let mut n_plus = 0usize;
    visit(n_plus, &plus_plus);
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let becomes_plus = !plus[v];
        plus[v] = becomes_plus;
        for (i, count) in plus_plus.iter_mut().enumerate() {
            let fwd = sigma.forward(i, v);
            let delta = if fwd == v {
                1
            } else {
                plus[fwd] as usize + plus[sigma.backward(i, v)] as usize
            };
            if becomes_plus {
                *count += delta;
            } else {
                *count -= delta;
            }
        }
        if becomes_plus {
            n_plus += 1;
        } else {
            n_plus -= 1;
        }
        visit(n_plus, &plus_plus);
    }
}

/// Number of configurations at each `(n_+, D)`, where
/// `D = Σ_i (a_{+-} + a_{-+}) / 2 = Σ_i (n_+ - a_{++})` counts disagreeing
/// directed edges (halved). The energy is `U = -J (rn - 4D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyCensus {
    pub n: usize,
    pub rank: usize,
    /// `counts[n_plus][d]`.
    pub counts: Vec<Vec<u64>>,
}

impl EnergyCensus {
    fn log_weight(&self, d: usize, coupling: f64) -> f64 {
        coupling * (self.rank as f64 * self.n as f64 - 4.0 * d as f64)
    }

    fn log_partial(&self, coupling: f64, keep: impl Fn(usize) -> bool) -> f64 {
        let mut terms = Vec::new();
        for (n_plus, row) in self.counts.iter().enumerate() {
            if !keep(n_plus) {
                continue;
            }
            for (d, &c) in row.iter().enumerate() {
                if c > 0 {
                    terms.push((c as f64).ln() + self.log_weight(d, coupling));
                }
            }
        }
        log_sum_exp(&terms)
    }

    /// `log Z_σ = log Σ_x exp(-U^σ(x))`.
    pub fn log_partition(&self, coupling: f64) -> f64 {
        self.log_partial(coupling, |_| true)
    }

    /// `log` of the partition sum restricted to `|m| <= eps_m`, where
    /// `m = (2n_+ - n)/n`. The window test is done in integers.
    pub fn log_partition_window(&self, coupling: f64, eps_m: f64) -> f64 {
        let n = self.n as f64;
        self.log_partial(coupling, |n_plus| {
            let excess = (2 * n_plus).abs_diff(self.n) as f64;
            excess <= eps_m * n + 1e-9
        })
    }

    /// Boltzmann weight of the window `|m| <= eps_m`.
    pub fn window_weight(&self, coupling: f64, eps_m: f64) -> f64 {
        (self.log_partition_window(coupling, eps_m) - self.log_partition(coupling)).exp()
    }
}

pub fn energy_census(sigma: &SoficMap) -> Result<EnergyCensus> {
    let n = sigma.n();
    check_size(n)?;
    let r = sigma.rank();
    let max_d = r * n / 2 + 1;
    let mut counts = vec![vec![0u64; max_d + 1]; n + 1];
    walk(sigma, |n_plus, pp| {
        let d: usize = pp.iter().map(|&k| n_plus - k).sum();
        counts[n_plus][d] += 1;
    });
    Ok(EnergyCensus { n, rank: r, counts })
}

/// `log Z_σ` at coupling `J` by exhaustive enumeration (`n <= 28`).
pub fn partition_function_exact(sigma: &SoficMap, coupling: f64) -> Result<f64> {
    Ok(energy_census(sigma)?.log_partition(coupling))
}

/// `|Ω(σ, μ, ε)|`: microstates whose pair frequencies lie within TV distance
/// `eps` of the chain's edge law for every generator.
pub fn count_good_models(sigma: &SoficMap, chain: &IsingChain, eps: f64) -> Result<u64> {
    let n = sigma.n();
    check_size(n)?;
    let table = EdgeBall::new(chain, eps)?.membership_table(n);
    let mut count = 0u64;
    walk(sigma, |n_plus, pp| {
        let row = &table[n_plus];
        if pp.iter().all(|&k| row[k]) {
            count += 1;
        }
    });
    Ok(count)
}
