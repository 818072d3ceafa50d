use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{count_good_models, energy_census, sample_hom, stream_rng, SoficMap, MAX_ENUMERATION_N};
use crate::error::{invalid, Error, Result};
use crate::ising::IsingChain;

/// Largest `n` for which all of `Sym(n)^r` is enumerated.
pub const MAX_EXHAUSTIVE_N: usize = 5;

/// First and second moments of `|Ω(σ)|` over `σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub mean: f64,
    pub mean_sq: f64,
    /// Paley–Zygmund ratio `(E|Ω|)^2 / E|Ω|^2`, in `[0, 1]`; zero when every
    /// count vanishes.
    pub pz_ratio: f64,
    /// Standard error of `mean`; zero for exhaustive averages.
    pub std_error: f64,
    pub samples: u64,
}

impl Moments {
    fn from_values(values: &[f64], exact: bool) -> Self {
        let m = values.len() as f64;
        let mean = values.iter().sum::<f64>() / m;
        let mean_sq = values.iter().map(|v| v * v).sum::<f64>() / m;
        let pz_ratio = if mean_sq > 0.0 { (mean * mean / mean_sq).min(1.0) } else { 0.0 };
        let std_error = if exact || values.len() < 2 {
            0.0
        } else {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
            (var / m).sqrt()
        };
        Self {
            mean,
            mean_sq,
            pz_ratio,
            std_error,
            samples: values.len() as u64,
        }
    }
}

fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATION_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_ENUMERATION_N,
        });
    }
    if n < 1 {
        return Err(invalid("n", "need at least one vertex"));
    }
    Ok(())
}

/// Monte Carlo moments of the exact per-`σ` good-model count. Sample `s`
/// draws its map from stream `s` of `seed`.
pub fn second_moment_mc(
    n: usize,
    rank: usize,
    chain: &IsingChain,
    eps: f64,
    samples: u64,
    seed: u64,
) -> Result<Moments> {
    check_enumerable(n)?;
    if samples < 1 {
        return Err(invalid("samples", "need at least one sample"));
    }
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    let counts = (0..samples)
        .into_par_iter()
        .map(|s| {
            let sigma = sample_hom(n, rank, &mut stream_rng(seed, s))?;
            count_good_models(&sigma, chain, eps).map(|c| c as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Moments::from_values(&counts, false))
}

fn all_permutations(n: usize) -> Vec<Vec<u32>> {
    fn extend(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v as u32);
                extend(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Exact moments over all of `Sym(n)^r` (`n <= 5`).
pub fn exhaustive_moments(n: usize, rank: usize, chain: &IsingChain, eps: f64) -> Result<Moments> {
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::TooLarge {
            n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    check_enumerable(n)?;
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    let perms = all_permutations(n);
    let total = (perms.len() as u64).pow(rank as u32);
    let counts = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let chosen = (0..rank)
                .map(|_| {
                    let p = perms[(idx % perms.len() as u64) as usize].clone();
                    idx /= perms.len() as u64;
                    p
                })
                .collect();
            let sigma = SoficMap::new(n, chosen)?;
            count_good_models(&sigma, chain, eps).map(|c| c as f64)
        })
        .collect::<Result<Vec<f64>>>()?;
    Ok(Moments::from_values(&counts, true))
}

/// Mean over sampled maps of the Boltzmann weight of `|m| <= eps_m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoexistenceRow {
    pub n: usize,
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// For each `n`, averages the exact near-zero-magnetization window weight
/// over `samples` maps. Map `s` at size `n` uses stream `(n << 32) | s`.
pub fn coexistence_weight(
    n_list: &[usize],
    rank: usize,
    coupling: f64,
    eps_m: f64,
    samples: u64,
    seed: u64,
) -> Result<Vec<CoexistenceRow>> {
    if !coupling.is_finite() {
        return Err(invalid("J", format!("coupling must be finite, got {coupling}")));
    }
    if !(eps_m >= 0.0) {
        return Err(invalid("eps", format!("window must be >= 0, got {eps_m}")));
    }
    if samples < 1 || samples > u32::MAX as u64 {
        return Err(invalid("samples", "need between 1 and 2^32 - 1 samples"));
    }
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    for &n in n_list {
        check_enumerable(n)?;
    }
    n_list
        .iter()
        .map(|&n| {
            let weights = (0..samples)
                .into_par_iter()
                .map(|s| {
                    let mut rng = stream_rng(seed, ((n as u64) << 32) | s);
                    let sigma = sample_hom(n, rank, &mut rng)?;
                    Ok(energy_census(&sigma)?.window_weight(coupling, eps_m))
                })
                .collect::<Result<Vec<f64>>>()?;
            let m = Moments::from_values(&weights, false);
            Ok(CoexistenceRow {
                n,
                mean: m.mean,
                std_error: m.std_error,
                samples,
            })
        })
        .collect()
}
