//! The annealed count `E_σ |Ω(σ, μ, ε)|` over uniform `σ ∈ Hom(F_r, Sym(n))`.
//!
//! For a fixed microstate with `n_+` plus sites, the number of permutations
//! with `a_{++} = k` is `C(n_+, k) C(n_-, n_+ - k) n_+! n_-!`, and every
//! generator is independent, so
//! `E|Ω| = Σ_{n_+} C(n, n_+) (Σ_{k ∈ ball} C(n_+, k) C(n_-, n_+ - k) / C(n, n_+))^r`.

use super::{pair_counts, EdgeBall};
use crate::error::{invalid, Result};
use crate::ising::IsingChain;
use crate::numeric::{log_sum_exp, LnFactorial};

/// `log E|Ω|` with `Ω` the microstates whose pair frequencies lie within TV
/// distance `eps` of the chain's edge law for every generator. Returns `-∞`
/// when no lattice profile lies in the ball.
pub fn annealed_count_exact(n: usize, rank: usize, chain: &IsingChain, eps: f64) -> Result<f64> {
    if n < 1 {
        return Err(invalid("n", "need at least one vertex"));
    }
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    let ball = EdgeBall::new(chain, eps)?;
    let lf = LnFactorial::new(n);
    let r = rank as f64;
    let mut outer = Vec::with_capacity(n + 1);
    let mut inner = Vec::new();
    for n_plus in 0..=n {
        let n_minus = n - n_plus;
        inner.clear();
        for k in 0..=n_plus {
            if let Some(c) = pair_counts(n, n_plus, k) {
                if ball.contains(n, &c) {
                    inner.push(lf.ln_choose(n_plus, k) + lf.ln_choose(n_minus, n_plus - k));
                }
            }
        }
        if inner.is_empty() {
            continue;
        }
        let sites = lf.ln_choose(n, n_plus);
        outer.push(sites + r * (log_sum_exp(&inner) - sites));
    }
    Ok(log_sum_exp(&outer))
}

/// Smallest TV distance between the chain's edge law and a pair-count
/// profile realizable on `n` sites.
pub fn nearest_profile_distance(n: usize, chain: &IsingChain) -> Result<f64> {
    if n < 1 {
        return Err(invalid("n", "need at least one vertex"));
    }
    let ball = EdgeBall::new(chain, 0.0)?;
    let mut best = f64::INFINITY;
    for n_plus in 0..=n {
        for k in 0..=n_plus {
            if let Some(c) = pair_counts(n, n_plus, k) {
                best = best.min(ball.distance(n, &c));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::{build_mu_t, f_invariant, IsingParams};
    use std::f64::consts::LN_2;

    #[test]
    fn whole_ball_counts_everything() {
        let chain = build_mu_t(0.3, &IsingParams::new(0.5, 2).unwrap());
        for n in [1, 5, 40, 500] {
            let v = annealed_count_exact(n, 2, &chain, 1.0).unwrap();
            assert!((v - n as f64 * LN_2).abs() <= 1e-9 * n as f64, "n = {n}");
        }
    }

    #[test]
    fn empty_ball() {
        let chain = build_mu_t(0.3, &IsingParams::new(0.5, 2).unwrap());
        assert_eq!(annealed_count_exact(7, 2, &chain, 0.0).unwrap(), f64::NEG_INFINITY);
        assert!(nearest_profile_distance(7, &chain).unwrap() > 0.0);
    }

    #[test]
    fn growth_rate_near_f_invariant() {
        let p = IsingParams::new(0.5, 2).unwrap();
        let chain = build_mu_t(0.0, &p);
        let n = 1000;
        let eps = nearest_profile_distance(n, &chain).unwrap() + 2.0 / n as f64;
        let rate = annealed_count_exact(n, 2, &chain, eps).unwrap() / n as f64;
        assert!((rate - f_invariant(&chain)).abs() < 0.05);
    }
}
