//! The random-permutation model: homomorphisms `F_r → Sym(n)`, microstates
//! on `[n]`, exact enumeration at small `n`, the annealed microstate count,
//! Monte Carlo moments and Glauber dynamics.

mod annealed;
mod enumerate;
mod glauber;
mod moments;
mod rng;

pub use annealed::{annealed_count_exact, nearest_profile_distance};
pub use enumerate::{
    count_good_models, energy_census, partition_function_exact, EnergyCensus, MAX_ENUMERATION_N,
};
pub use glauber::{glauber_run, heat_bath_plus_probability, GlauberRecord, InitialState};
pub use moments::{
    coexistence_weight, exhaustive_moments, second_moment_mc, CoexistenceRow, Moments, MAX_EXHAUSTIVE_N,
};
pub use rng::stream_rng;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::ising::IsingChain;

/// A homomorphism `σ: F_r → Sym(n)`, determined by the images of the `r`
/// generators. Inverses are cached for neighbor lookups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SoficMap {
    n: usize,
    perms: Vec<Vec<u32>>,
    #[serde(skip)]
    inverses: Vec<Vec<u32>>,
}

impl SoficMap {
    pub fn new(n: usize, perms: Vec<Vec<u32>>) -> Result<Self> {
        if n < 1 {
            return Err(invalid("n", "need at least one vertex"));
        }
        if perms.is_empty() {
            return Err(invalid("r", "need at least one generator"));
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "permutation {i} has length {}, expected {n}",
                    p.len()
                )));
            }
            let mut inv = vec![u32::MAX; n];
            for (v, &w) in p.iter().enumerate() {
                let w = w as usize;
                if w >= n || inv[w] != u32::MAX {
                    return Err(invalid("sigma", format!("permutation {i} is not a bijection")));
                }
                inv[w] = v as u32;
            }
            inverses.push(inv);
        }
        Ok(Self { n, perms, inverses })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<u32>] {
        &self.perms
    }

    /// `σ(s_i)(v)`.
    #[inline]
    pub fn forward(&self, generator: usize, v: usize) -> usize {
        self.perms[generator][v] as usize
    }

    /// `σ(s_i^{-1})(v)`.
    #[inline]
    pub fn backward(&self, generator: usize, v: usize) -> usize {
        self.inverses[generator][v] as usize
    }

    /// Number of vertices fixed by at least one generator.
    pub fn fixed_point_count(&self) -> usize {
        (0..self.n)
            .filter(|&v| (0..self.rank()).any(|i| self.forward(i, v) == v))
            .count()
    }
}

/// `r` independent uniform permutations of `[n]` by Fisher–Yates shuffles.
pub fn sample_hom<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> Result<SoficMap> {
    if n < 1 {
        return Err(invalid("n", "need at least one vertex"));
    }
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    let perms = (0..rank)
        .map(|_| {
            let mut p: Vec<u32> = (0..n as u32).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    SoficMap::new(n, perms)
}

/// [`sample_hom`] driven by stream 0 of the generator seeded with `seed`.
pub fn sample_hom_seeded(n: usize, rank: usize, seed: u64) -> Result<SoficMap> {
    sample_hom(n, rank, &mut stream_rng(seed, 0))
}

/// A microstate `x ∈ {-1, +1}^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinConfig {
    spins: Vec<i8>,
}

impl SpinConfig {
    pub fn new(spins: Vec<i8>) -> Result<Self> {
        if spins.iter().any(|&s| s != 1 && s != -1) {
            return Err(invalid("x", "spins must be -1 or +1"));
        }
        Ok(Self { spins })
    }

    pub fn all_plus(n: usize) -> Self {
        Self { spins: vec![1; n] }
    }

    /// Bit `v` of `bits` set means spin `+1` at `v`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        Self {
            spins: (0..n).map(|v| if bits >> v & 1 == 1 { 1 } else { -1 }).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }

    pub fn n_plus(&self) -> usize {
        self.spins.iter().filter(|&&s| s == 1).count()
    }

    pub fn magnetization(&self) -> f64 {
        self.spins.iter().map(|&s| s as f64).sum::<f64>() / self.spins.len() as f64
    }

    pub fn flipped(&self) -> Self {
        Self {
            spins: self.spins.iter().map(|&s| -s).collect(),
        }
    }
}

/// `U^σ(x) = -J Σ_i Σ_v x_v x_{σ_i(v)}`.
pub fn total_energy(sigma: &SoficMap, x: &SpinConfig, coupling: f64) -> Result<f64> {
    if x.len() != sigma.n() {
        return Err(Error::DimensionMismatch(format!(
            "configuration has {} spins, map has {} vertices",
            x.len(),
            sigma.n()
        )));
    }
    let s = x.spins();
    let mut bonds: i64 = 0;
    for i in 0..sigma.rank() {
        for v in 0..sigma.n() {
            bonds += (s[v] * s[sigma.forward(i, v)]) as i64;
        }
    }
    Ok(-coupling * bonds as f64)
}

/// Pair counts `(a_{++}, a_{+-}, a_{-+}, a_{--})` of one generator, where
/// `a_{bc} = #{v : x_v = b, x_{σ_i(v)} = c}`.
pub type PairCounts = [usize; 4];

/// Site count and per-generator pair counts of a microstate over `σ`; the
/// discretized depth-1 empirical distribution.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeProfile {
    pub n: usize,
    pub n_plus: usize,
    pub pairs: Vec<PairCounts>,
}

impl TypeProfile {
    pub fn of(sigma: &SoficMap, x: &SpinConfig) -> Result<Self> {
        if x.len() != sigma.n() {
            return Err(Error::DimensionMismatch(format!(
                "configuration has {} spins, map has {} vertices",
                x.len(),
                sigma.n()
            )));
        }
        let s = x.spins();
        let pairs = (0..sigma.rank())
            .map(|i| {
                let mut c = [0usize; 4];
                for v in 0..sigma.n() {
                    let a = s[v] == 1;
                    let b = s[sigma.forward(i, v)] == 1;
                    c[match (a, b) {
                        (true, true) => 0,
                        (true, false) => 1,
                        (false, true) => 2,
                        (false, false) => 3,
                    }] += 1;
                }
                c
            })
            .collect();
        Ok(Self {
            n: sigma.n(),
            n_plus: x.n_plus(),
            pairs,
        })
    }

    /// Row sums give the site counts of the source, column sums those of the
    /// target; both must match since each `σ_i` is a bijection.
    pub fn is_consistent(&self) -> bool {
        let minus = self.n - self.n_plus;
        self.pairs.iter().all(|&[pp, pm, mp, mm]| {
            pp + pm == self.n_plus && mp + mm == minus && pp + mp == self.n_plus && pm + mm == minus
        })
    }
}

/// Pair counts determined by `n`, `n_+` and `a_{++} = k`.
pub fn pair_counts(n: usize, n_plus: usize, plus_plus: usize) -> Option<PairCounts> {
    let cross = n_plus.checked_sub(plus_plus)?;
    let minus_minus = (n - n_plus).checked_sub(cross)?;
    Some([plus_plus, cross, cross, minus_minus])
}

/// A total-variation ball around a chain's edge marginal, applied to each
/// generator's empirical pair frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeBall {
    /// Edge law in the order `(++, +-, -+, --)`.
    target: [f64; 4],
    eps: f64,
}

impl EdgeBall {
    pub fn new(chain: &IsingChain, eps: f64) -> Result<Self> {
        if !(eps >= 0.0) {
            return Err(invalid("eps", format!("radius must be >= 0, got {eps}")));
        }
        let m = chain.edge_marginal();
        Ok(Self {
            target: [m[1][1], m[1][0], m[0][1], m[0][0]],
            eps,
        })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    /// `½ Σ |a/n - μ|`.
    pub fn distance(&self, n: usize, counts: &PairCounts) -> f64 {
        let nf = n as f64;
        0.5 * counts
            .iter()
            .zip(&self.target)
            .map(|(&c, &m)| (c as f64 / nf - m).abs())
            .sum::<f64>()
    }

    pub fn contains(&self, n: usize, counts: &PairCounts) -> bool {
        self.distance(n, counts) <= self.eps
    }

    /// `table[n_+][k]` is whether pair counts `(n, n_+, k)` lie in the ball.
    pub(crate) fn membership_table(&self, n: usize) -> Vec<Vec<bool>> {
        (0..=n)
            .map(|n_plus| {
                (0..=n_plus)
                    .map(|k| pair_counts(n, n_plus, k).is_some_and(|c| self.contains(n, &c)))
                    .collect()
            })
            .collect()
    }
}
