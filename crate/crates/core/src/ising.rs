//! Closed-form quantities for the zero-field Ising model on the Cayley tree of
//! the rank-`r` free group (degree `2r`), restricted to the one-parameter family
//! of completely homogeneous Markov chains `μ_t`.
//!
//! Spins are ordered `(-1, +1)` throughout: `alpha` is the probability of `-1`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numeric::{binary_entropy, log_sum_exp, logistic};

/// Coupling strength and free-group rank.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingParams {
    coupling: f64,
    rank: usize,
}

impl IsingParams {
    /// `coupling` must be a finite positive number and `rank >= 1`.
    ///
    /// Rank 1 (the bi-infinite path) is accepted here but has degenerate
    /// thresholds; see [`crate::bp::uniqueness_threshold`].
    pub fn new(coupling: f64, rank: usize) -> Result<Self> {
        if !(coupling.is_finite() && coupling > 0.0) {
            return Err(invalid("J", format!("coupling must be finite and > 0, got {coupling}")));
        }
        if rank < 1 {
            return Err(invalid("r", "rank must be at least 1"));
        }
        Ok(Self { coupling, rank })
    }

    /// Like [`IsingParams::new`] but also admits `J = 0` (the non-interacting
    /// limit), which several sanity checks use.
    pub fn new_allow_zero(coupling: f64, rank: usize) -> Result<Self> {
        if coupling == 0.0 {
            if rank < 1 {
                return Err(invalid("r", "rank must be at least 1"));
            }
            return Ok(Self { coupling, rank });
        }
        Self::new(coupling, rank)
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of neighbors of a vertex in the Cayley tree.
    pub fn degree(&self) -> usize {
        2 * self.rank
    }
}

/// Probability of spin `-1` at a site under `μ_t`:
/// `α(t) = (e^{-2J} + e^{-2t}) / (2e^{-2J} + 2cosh 2t)`.
pub fn alpha(t: f64, params: &IsingParams) -> f64 {
    let j = params.coupling;
    let num = log_sum_exp(&[-2.0 * j, -2.0 * t]);
    let den = log_sum_exp(&[std::f64::consts::LN_2 - 2.0 * j, 2.0 * t, -2.0 * t]);
    (num - den).exp()
}

/// `β(t) = 1 / (e^{2(J+t)} + 1)`, the probability of leaving `+1` along an edge.
pub fn beta(t: f64, params: &IsingParams) -> f64 {
    logistic(-2.0 * (params.coupling + t))
}

/// One member `μ_t` of the Ising Markov-chain family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsingChain {
    pub t: f64,
    /// `P{-1}`.
    pub alpha: f64,
    /// `P{+1}`, stored separately so that it keeps full relative precision
    /// when `alpha` is close to one.
    pub alpha_complement: f64,
    /// `β(t) = P{+1 -> -1}`.
    pub beta_plus: f64,
    /// `β(-t) = P{-1 -> +1}`.
    pub beta_minus: f64,
    pub params: IsingParams,
}

pub fn build_mu_t(t: f64, params: &IsingParams) -> IsingChain {
    IsingChain {
        t,
        alpha: alpha(t, params),
        alpha_complement: alpha(-t, params),
        beta_plus: beta(t, params),
        beta_minus: beta(-t, params),
        params: *params,
    }
}

impl IsingChain {
    /// Site marginal `(P{-1}, P{+1})`.
    pub fn marginal(&self) -> [f64; 2] {
        [self.alpha, self.alpha_complement]
    }

    /// Transition matrix indexed `[from][to]` in the order `(-1, +1)`.
    pub fn transition(&self) -> [[f64; 2]; 2] {
        [
            [1.0 - self.beta_minus, self.beta_minus],
            [self.beta_plus, 1.0 - self.beta_plus],
        ]
    }

    /// Joint law of `(X_e, X_{s_i})` in the order `(-1, +1)`.
    pub fn edge_marginal(&self) -> [[f64; 2]; 2] {
        let p = self.marginal();
        let k = self.transition();
        [
            [p[0] * k[0][0], p[0] * k[0][1]],
            [p[1] * k[1][0], p[1] * k[1][1]],
        ]
    }

    /// `|α β(-t) - (1-α) β(t)|`; zero for a stationary, reversible chain.
    pub fn stationarity_residual(&self) -> f64 {
        (self.alpha * self.beta_minus - self.alpha_complement * self.beta_plus).abs()
    }

    /// `E[x(e) x(s_i)]` under the chain.
    pub fn edge_correlation(&self) -> f64 {
        1.0 + 2.0 * self.alpha * (self.beta_plus - self.beta_minus) - 2.0 * self.beta_plus
    }

    /// Conditional entropy of a neighbor's spin given the spin at the root.
    pub fn edge_entropy(&self) -> f64 {
        self.alpha * binary_entropy(self.beta_minus)
            + self.alpha_complement * binary_entropy(self.beta_plus)
    }
}

/// Specific energy `u(μ_t) = -J r E[x(e) x(s_i)]`, with each edge's energy
/// split evenly between its endpoints.
pub fn energy_density(chain: &IsingChain) -> f64 {
    let p = &chain.params;
    -p.coupling * p.rank as f64 * chain.edge_correlation()
}

/// `u(μ_0) = -J r tanh J`, the free-boundary energy.
pub fn free_boundary_energy(params: &IsingParams) -> f64 {
    -params.coupling * params.rank as f64 * params.coupling.tanh()
}

/// The f-invariant `(1-r) H(α) + r [α H(β(-t)) + (1-α) H(β(t))]`.
pub fn f_invariant(chain: &IsingChain) -> f64 {
    let r = chain.params.rank as f64;
    (1.0 - r) * binary_entropy(chain.alpha) + r * chain.edge_entropy()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PressureReport {
    pub energy: f64,
    pub f_invariant: f64,
    pub f_pressure: f64,
    pub edge_entropy: f64,
    /// `P^edge = H^edge - u`, an upper bound on the pressure over every sofic
    /// approximation.
    pub edge_pressure: f64,
}

pub fn pressure_report(chain: &IsingChain) -> PressureReport {
    let energy = energy_density(chain);
    let f = f_invariant(chain);
    let edge_entropy = chain.edge_entropy();
    PressureReport {
        energy,
        f_invariant: f,
        f_pressure: f - energy,
        edge_entropy,
        edge_pressure: edge_entropy - energy,
    }
}

/// `t ↦ P_f(μ_t)`.
pub fn f_pressure_at(t: f64, params: &IsingParams) -> f64 {
    pressure_report(&build_mu_t(t, params)).f_pressure
}

/// Pressure of the all-plus point mass: zero entropy, energy `-Jr`.
pub fn delta_plus_pressure(params: &IsingParams) -> f64 {
    params.coupling * params.rank as f64
}

/// Closed form of `d²/dt² P_f(μ_t)` at `t = 0`:
/// `(tanh J + 1)((2r - 1) tanh J - 1)`.
pub fn d2_pressure_at_zero(params: &IsingParams) -> f64 {
    let th = params.coupling.tanh();
    (th + 1.0) * ((2.0 * params.rank as f64 - 1.0) * th - 1.0)
}

/// Central second difference of `t ↦ P_f(μ_t)` at zero with step `h`.
pub fn d2_pressure_fd(params: &IsingParams, h: f64) -> Result<f64> {
    check_step(h)?;
    let p0 = f_pressure_at(0.0, params);
    let pp = f_pressure_at(h, params);
    let pm = f_pressure_at(-h, params);
    Ok((pp - 2.0 * p0 + pm) / (h * h))
}

/// Central first difference of `t ↦ P_f(μ_t)` at zero with step `h`.
pub fn d1_pressure_fd(params: &IsingParams, h: f64) -> Result<f64> {
    check_step(h)?;
    Ok((f_pressure_at(h, params) - f_pressure_at(-h, params)) / (2.0 * h))
}

fn check_step(h: f64) -> Result<()> {
    if !(h > 0.0 && h <= 1e-2) {
        return Err(invalid("h", format!("step must lie in (0, 1e-2], got {h}")));
    }
    Ok(())
}
