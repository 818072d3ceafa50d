//! Completely homogeneous (and per-generator) tree-indexed Markov chains on a
//! `q`-letter alphabet under nearest-neighbor energies
//! `u(x) = B(x(e)) + Σ_i J(x(e), x(s_i))`.
//!
//! Matrices are stored as `Vec<Vec<f64>>` indexed `[from][to]`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numeric::{entropy_term, log_sum_exp, shannon_entropy};

const ROW_SUM_TOL: f64 = 1e-12;
const STATIONARITY_TOL: f64 = 1e-10;
const HOMOGENIZE_TIE_TOL: f64 = 1e-14;
const MAX_BP_ITERATIONS: usize = 200_000;

pub type Matrix = Vec<Vec<f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NNInteraction {
    q: usize,
    site_energy: Vec<f64>,
    edge_energy: Matrix,
    rank: usize,
    constraint: Option<Vec<Vec<bool>>>,
}

impl NNInteraction {
    pub fn new(site_energy: Vec<f64>, edge_energy: Matrix, rank: usize) -> Result<Self> {
        let q = site_energy.len();
        if q < 2 {
            return Err(invalid("q", "alphabet needs at least two symbols"));
        }
        if rank < 1 {
            return Err(invalid("r", "rank must be at least 1"));
        }
        check_square(&edge_energy, q, "edge energy")?;
        for a in 0..q {
            for b in 0..a {
                if edge_energy[a][b] != edge_energy[b][a] {
                    return Err(invalid("J", format!("edge energy is not symmetric at ({a}, {b})")));
                }
            }
        }
        if site_energy.iter().chain(edge_energy.iter().flatten()).any(|v| !v.is_finite()) {
            return Err(invalid("J", "energies must be finite"));
        }
        Ok(Self {
            q,
            site_energy,
            edge_energy,
            rank,
            constraint: None,
        })
    }

    /// Attach an allowed-transitions matrix (a topological Markov chain). It
    /// must be symmetric and allow at least one successor for every symbol.
    pub fn with_constraint(mut self, allowed: Vec<Vec<bool>>) -> Result<Self> {
        if allowed.len() != self.q || allowed.iter().any(|row| row.len() != self.q) {
            return Err(Error::DimensionMismatch(format!(
                "constraint matrix must be {q}x{q}",
                q = self.q
            )));
        }
        for a in 0..self.q {
            if !allowed[a].iter().any(|&x| x) {
                return Err(invalid("M", format!("symbol {a} has no allowed neighbor")));
            }
            for b in 0..a {
                if allowed[a][b] != allowed[b][a] {
                    return Err(invalid("M", format!("constraint is not symmetric at ({a}, {b})")));
                }
            }
        }
        self.constraint = Some(allowed);
        Ok(self)
    }

    /// Zero-field Ising model with symbols ordered `(-1, +1)`:
    /// `J(a, b) = -J s_a s_b`.
    pub fn ising(coupling: f64, rank: usize) -> Result<Self> {
        Self::new(
            vec![0.0, 0.0],
            vec![vec![-coupling, coupling], vec![coupling, -coupling]],
            rank,
        )
    }

    /// Ferromagnetic Potts model: `J(a, b) = -J [a = b]`, no field.
    pub fn potts(q: usize, coupling: f64, rank: usize) -> Result<Self> {
        let edge = (0..q)
            .map(|a| (0..q).map(|b| if a == b { -coupling } else { 0.0 }).collect())
            .collect();
        Self::new(vec![0.0; q], edge, rank)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn site_energy(&self) -> &[f64] {
        &self.site_energy
    }

    pub fn edge_energy(&self) -> &Matrix {
        &self.edge_energy
    }

    pub fn constraint(&self) -> Option<&Vec<Vec<bool>>> {
        self.constraint.as_ref()
    }

    /// Apply the symbol relabeling `a ↦ perm[a]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let q = self.q;
        let mut site = vec![0.0; q];
        let mut edge = vec![vec![0.0; q]; q];
        for a in 0..q {
            site[perm[a]] = self.site_energy[a];
            for b in 0..q {
                edge[perm[a]][perm[b]] = self.edge_energy[a][b];
            }
        }
        let constraint = self.constraint.as_ref().map(|m| {
            let mut out = vec![vec![false; q]; q];
            for a in 0..q {
                for b in 0..q {
                    out[perm[a]][perm[b]] = m[a][b];
                }
            }
            out
        });
        Self {
            q,
            site_energy: site,
            edge_energy: edge,
            rank: self.rank,
            constraint,
        }
    }

    /// Check that `chain` has matching dimensions and, when a constraint is
    /// attached, only uses allowed transitions.
    pub fn check_chain(&self, chain: &NNChain) -> Result<()> {
        if chain.q() != self.q {
            return Err(Error::DimensionMismatch(format!(
                "chain alphabet {} != interaction alphabet {}",
                chain.q(),
                self.q
            )));
        }
        if chain.rank() != self.rank {
            return Err(Error::DimensionMismatch(format!(
                "chain has {} kernels, interaction rank is {}",
                chain.rank(),
                self.rank
            )));
        }
        if let Some(allowed) = &self.constraint {
            for (i, k) in chain.kernels.iter().enumerate() {
                for a in 0..self.q {
                    for b in 0..self.q {
                        if chain.marginal[a] > 0.0 && k[a][b] > 0.0 && !allowed[a][b] {
                            return Err(invalid(
                                "K",
                                format!("kernel {i} uses forbidden transition ({a}, {b})"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_square(m: &Matrix, q: usize, what: &str) -> Result<()> {
    if m.len() != q || m.iter().any(|row| row.len() != q) {
        return Err(Error::DimensionMismatch(format!("{what} must be {q}x{q}")));
    }
    Ok(())
}

/// Site marginal `p` and one transition kernel per generator. Every kernel
/// must leave `p` invariant, so each edge law `p(a) K_i(a, b)` has both
/// marginals equal to `p`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NNChain {
    marginal: Vec<f64>,
    kernels: Vec<Matrix>,
}

impl NNChain {
    pub fn new(marginal: Vec<f64>, kernels: Vec<Matrix>) -> Result<Self> {
        let q = marginal.len();
        if q < 2 {
            return Err(invalid("p", "alphabet needs at least two symbols"));
        }
        if kernels.is_empty() {
            return Err(invalid("K", "need at least one kernel"));
        }
        if marginal.iter().any(|&x| !(x >= 0.0)) {
            return Err(invalid("p", "marginal entries must be nonnegative"));
        }
        if (marginal.iter().sum::<f64>() - 1.0).abs() > ROW_SUM_TOL {
            return Err(invalid("p", "marginal must sum to 1"));
        }
        for (i, k) in kernels.iter().enumerate() {
            check_square(k, q, "kernel")?;
            for (a, row) in k.iter().enumerate() {
                if row.iter().any(|&x| !(x >= 0.0)) {
                    return Err(invalid("K", format!("kernel {i} row {a} has a negative entry")));
                }
                if (row.iter().sum::<f64>() - 1.0).abs() > ROW_SUM_TOL {
                    return Err(invalid("K", format!("kernel {i} row {a} does not sum to 1")));
                }
            }
            for b in 0..q {
                let pushed: f64 = (0..q).map(|a| marginal[a] * k[a][b]).sum();
                if (pushed - marginal[b]).abs() > STATIONARITY_TOL {
                    return Err(invalid(
                        "K",
                        format!("marginal is not stationary for kernel {i} (symbol {b})"),
                    ));
                }
            }
        }
        Ok(Self { marginal, kernels })
    }

    /// The same kernel on all `rank` generators.
    pub fn homogeneous(marginal: Vec<f64>, kernel: Matrix, rank: usize) -> Result<Self> {
        Self::new(marginal, vec![kernel; rank])
    }

    pub fn q(&self) -> usize {
        self.marginal.len()
    }

    pub fn rank(&self) -> usize {
        self.kernels.len()
    }

    pub fn marginal(&self) -> &[f64] {
        &self.marginal
    }

    pub fn kernels(&self) -> &[Matrix] {
        &self.kernels
    }

    pub fn is_homogeneous(&self) -> bool {
        self.kernels.windows(2).all(|w| w[0] == w[1])
    }

    /// Joint law of `(X_e, X_{s_i})`.
    pub fn edge_joint(&self, generator: usize) -> Matrix {
        let k = &self.kernels[generator];
        self.marginal
            .iter()
            .zip(k)
            .map(|(&p, row)| row.iter().map(|&x| p * x).collect())
            .collect()
    }

    /// Kernel of the reversed edge, `R(a, b) = p(b) K(b, a) / p(a)`; rows of
    /// zero-probability symbols are left uniform.
    pub fn reverse_kernel(&self, generator: usize) -> Matrix {
        let q = self.q();
        let k = &self.kernels[generator];
        (0..q)
            .map(|a| {
                if self.marginal[a] > 0.0 {
                    (0..q).map(|b| self.marginal[b] * k[b][a] / self.marginal[a]).collect()
                } else {
                    vec![1.0 / q as f64; q]
                }
            })
            .collect()
    }

    pub fn relabel(&self, perm: &[usize]) -> Self {
        let q = self.q();
        let mut marginal = vec![0.0; q];
        for a in 0..q {
            marginal[perm[a]] = self.marginal[a];
        }
        let kernels = self
            .kernels
            .iter()
            .map(|k| {
                let mut out = vec![vec![0.0; q]; q];
                for a in 0..q {
                    for b in 0..q {
                        out[perm[a]][perm[b]] = k[a][b];
                    }
                }
                out
            })
            .collect();
        Self { marginal, kernels }
    }
}

fn expected_site_energy(chain: &NNChain, inter: &NNInteraction) -> f64 {
    chain
        .marginal
        .iter()
        .zip(&inter.site_energy)
        .map(|(p, b)| p * b)
        .sum()
}

fn expected_edge_energy(joint: &Matrix, inter: &NNInteraction) -> f64 {
    joint
        .iter()
        .zip(&inter.edge_energy)
        .flat_map(|(pr, jr)| pr.iter().zip(jr).map(|(p, j)| p * j))
        .sum()
}

/// Per-generator terms `H(X_e, X_i) - E J(X_e, X_i)` of the f-pressure.
pub fn edge_terms(chain: &NNChain, inter: &NNInteraction) -> Result<Vec<f64>> {
    inter.check_chain(chain)?;
    Ok((0..chain.rank())
        .map(|i| {
            let joint = chain.edge_joint(i);
            shannon_entropy(joint.iter().flatten()) - expected_edge_energy(&joint, inter)
        })
        .collect())
}

/// f-pressure of a Markov chain, split as
/// `[(1-2r) H(X_e) - E B(X_e)] + Σ_i [H(X_e, X_i) - E J(X_e, X_i)]`.
pub fn f_pressure_nn(chain: &NNChain, inter: &NNInteraction) -> Result<f64> {
    let terms = edge_terms(chain, inter)?;
    let r = chain.rank() as f64;
    let site = (1.0 - 2.0 * r) * shannon_entropy(&chain.marginal) - expected_site_energy(chain, inter);
    Ok(site + terms.iter().sum::<f64>())
}

/// The same f-pressure through `f = (1-r) H(X_e) + Σ_i H(X_i | X_e)` and
/// `u = E B(X_e) + Σ_i E J(X_e, X_i)`.
pub fn f_pressure_nn_conditional(chain: &NNChain, inter: &NNInteraction) -> Result<f64> {
    inter.check_chain(chain)?;
    let r = chain.rank() as f64;
    let mut f = (1.0 - r) * shannon_entropy(&chain.marginal);
    let mut u = expected_site_energy(chain, inter);
    for (i, k) in chain.kernels.iter().enumerate() {
        f += chain
            .marginal
            .iter()
            .zip(k)
            .map(|(&p, row)| p * row.iter().map(|&x| entropy_term(x)).sum::<f64>())
            .sum::<f64>();
        u += expected_edge_energy(&chain.edge_joint(i), inter);
    }
    Ok(f - u)
}

/// Replace every kernel by the one with the largest edge term; ties go to the
/// lowest generator index. Never lowers the f-pressure.
pub fn homogenize(chain: &NNChain, inter: &NNInteraction) -> Result<NNChain> {
    let terms = edge_terms(chain, inter)?;
    let best = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let slack = HOMOGENIZE_TIE_TOL * best.abs().max(1.0);
    let winner = terms
        .iter()
        .position(|&t| t >= best - slack)
        .expect("at least one kernel");
    Ok(NNChain {
        marginal: chain.marginal.clone(),
        kernels: vec![chain.kernels[winner].clone(); chain.rank()],
    })
}

/// Homogeneous chain induced by a cavity log-field `h`:
/// `K(a, b) ∝ exp(-J(a, b) + h(b))`, `p(a) ∝ exp(h(a)) Σ_b exp(-J(a, b) + h(b))`.
/// The chain is reversible, and for the Ising interaction with
/// `h = (-t, t)` it is exactly `μ_t`.
pub fn chain_from_field(inter: &NNInteraction, field: &[f64]) -> Result<NNChain> {
    let q = inter.q;
    if field.len() != q {
        return Err(Error::DimensionMismatch(format!(
            "field has length {}, expected {q}",
            field.len()
        )));
    }
    let mut kernel = vec![vec![0.0; q]; q];
    let mut ln_weight = vec![0.0; q];
    for a in 0..q {
        let logits: Vec<f64> = (0..q)
            .map(|b| {
                if inter.allows(a, b) {
                    -inter.edge_energy[a][b] + field[b]
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let ln_z = log_sum_exp(&logits);
        for b in 0..q {
            kernel[a][b] = (logits[b] - ln_z).exp();
        }
        ln_weight[a] = field[a] + ln_z;
    }
    let ln_norm = log_sum_exp(&ln_weight);
    let marginal: Vec<f64> = ln_weight.iter().map(|w| (w - ln_norm).exp()).collect();
    let marginal = renormalize(marginal);
    let kernel = kernel.into_iter().map(renormalize).collect();
    NNChain::homogeneous(marginal, kernel, inter.rank)
}

fn renormalize(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    v.iter_mut().for_each(|x| *x /= s);
    v
}

impl NNInteraction {
    fn allows(&self, a: usize, b: usize) -> bool {
        self.constraint.as_ref().is_none_or(|m| m[a][b])
    }
}

/// One step of the homogeneous BP recursion on the `2r`-regular tree,
/// `h(a) ← -B(a) + (2r-1) log Σ_b exp(-J(a, b) + h(b))`, centered to mean 0.
pub fn bp_map(inter: &NNInteraction, field: &[f64]) -> Vec<f64> {
    let q = inter.q;
    let branching = 2.0 * inter.rank as f64 - 1.0;
    let mut out: Vec<f64> = (0..q)
        .map(|a| {
            let logits: Vec<f64> = (0..q)
                .map(|b| {
                    if inter.allows(a, b) {
                        -inter.edge_energy[a][b] + field[b]
                    } else {
                        f64::NEG_INFINITY
                    }
                })
                .collect();
            -inter.site_energy[a] + branching * log_sum_exp(&logits)
        })
        .collect();
    center(&mut out);
    out
}

fn center(h: &mut [f64]) {
    let finite: Vec<f64> = h.iter().copied().filter(|x| x.is_finite()).collect();
    let mean = finite.iter().sum::<f64>() / finite.len().max(1) as f64;
    h.iter_mut().for_each(|x| *x -= mean);
}

/// Star-conditional residual of a homogeneous chain: the largest difference,
/// over neighbor patterns of the `2r`-star, between the chain's law of the
/// center symbol and the Boltzmann law `∝ exp(-B(a) - Σ_j J(a, x_j))`.
///
/// Forward neighbors are drawn from `K`, backward neighbors from the reverse
/// kernel; each group enters only through its symbol counts.
pub fn star_conditional_residual(chain: &NNChain, inter: &NNInteraction) -> Result<f64> {
    inter.check_chain(chain)?;
    if !chain.is_homogeneous() {
        return Err(invalid("K", "star residual needs a completely homogeneous chain"));
    }
    let q = chain.q();
    let r = chain.rank();
    let ln = |x: f64| if x > 0.0 { x.ln() } else { f64::NEG_INFINITY };
    let ln_fwd: Matrix = chain.kernels[0].iter().map(|row| row.iter().map(|&x| ln(x)).collect()).collect();
    let ln_bwd: Matrix = chain.reverse_kernel(0).iter().map(|row| row.iter().map(|&x| ln(x)).collect()).collect();
    let ln_p: Vec<f64> = chain.marginal.iter().map(|&x| ln(x)).collect();
    let compositions = compositions(r, q);

    let mut worst: f64 = 0.0;
    for fwd in &compositions {
        for bwd in &compositions {
            let mut chain_score = vec![0.0; q];
            let mut boltz_score = vec![0.0; q];
            for a in 0..q {
                let mut s = ln_p[a];
                let mut e = -inter.site_energy[a];
                for b in 0..q {
                    let c = (fwd[b] + bwd[b]) as f64;
                    if fwd[b] > 0 {
                        s += fwd[b] as f64 * ln_fwd[a][b];
                    }
                    if bwd[b] > 0 {
                        s += bwd[b] as f64 * ln_bwd[a][b];
                    }
                    if c > 0.0 {
                        e -= c * inter.edge_energy[a][b];
                        if !inter.allows(a, b) {
                            e = f64::NEG_INFINITY;
                        }
                    }
                }
                chain_score[a] = s;
                boltz_score[a] = e;
            }
            let ln_zc = log_sum_exp(&chain_score);
            let ln_zb = log_sum_exp(&boltz_score);
            if ln_zb == f64::NEG_INFINITY {
                // pattern impossible under the constraint
                continue;
            }
            if ln_zc == f64::NEG_INFINITY {
                // pattern has zero chain probability; nothing to compare
                continue;
            }
            for a in 0..q {
                let pc = (chain_score[a] - ln_zc).exp();
                let pb = (boltz_score[a] - ln_zb).exp();
                worst = worst.max((pc - pb).abs());
            }
        }
    }
    Ok(worst)
}

/// All ways of writing `total` as an ordered sum of `parts` nonnegative
/// integers.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(left - k, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, parts, &mut Vec::with_capacity(parts), &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GibbsSolution {
    pub chain: NNChain,
    pub field: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
    pub damped: bool,
}

/// Iterate the BP map from `init_field` until the star-conditional residual of
/// the induced chain is at most `tol`. Switches to 0.5 damping if the update
/// size grows for several consecutive steps.
pub fn solve_markov_gibbs(inter: &NNInteraction, init_field: &[f64], tol: f64) -> Result<GibbsSolution> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("tolerance must be > 0, got {tol}")));
    }
    if init_field.len() != inter.q {
        return Err(Error::DimensionMismatch(format!(
            "init field has length {}, expected {}",
            init_field.len(),
            inter.q
        )));
    }
    let mut h = init_field.to_vec();
    center(&mut h);
    let mut damped = false;
    let mut last_change = f64::INFINITY;
    let mut growth_streak = 0;
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_BP_ITERATIONS {
        let mut next = bp_map(inter, &h);
        if damped {
            for (n, o) in next.iter_mut().zip(&h) {
                if n.is_finite() && o.is_finite() {
                    *n = 0.5 * *n + 0.5 * o;
                }
            }
        }
        let change = next
            .iter()
            .zip(&h)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        h = next;
        if change > last_change {
            growth_streak += 1;
            if growth_streak >= 3 && !damped {
                damped = true;
            }
        } else {
            growth_streak = 0;
        }
        last_change = change;
        if change <= 0.01 * tol {
            let chain = chain_from_field(inter, &h)?;
            residual = star_conditional_residual(&chain, inter)?;
            if residual <= tol {
                return Ok(GibbsSolution {
                    chain,
                    field: h,
                    iterations: it,
                    residual,
                    damped,
                });
            }
            if change == 0.0 {
                break;
            }
        }
    }
    if !residual.is_finite() {
        residual = star_conditional_residual(&chain_from_field(inter, &h)?, inter)?;
    }
    Err(Error::NonConvergence {
        iterations: MAX_BP_ITERATIONS,
        residual,
    })
}

/// Field of the `k`-th one-parameter family: the first `k` colors are tilted
/// together against the remaining `q - k`,
/// `h(t) = 2t (1_{a < k} - k/q)`. At `q = 2, k = 1` this is the Ising
/// field with the favored symbol first.
pub fn family_field(q: usize, family: usize, t: f64) -> Vec<f64> {
    let shift = family as f64 / q as f64;
    (0..q)
        .map(|a| 2.0 * t * (if a < family { 1.0 } else { 0.0 } - shift))
        .collect()
}

/// `(t, P_f)` along a one-parameter family of chains; `family ∈ [1, q-1]`.
pub fn potts_family_curve(inter: &NNInteraction, t_grid: &[f64], family: usize) -> Result<Vec<(f64, f64)>> {
    if family < 1 || family >= inter.q {
        return Err(invalid(
            "family",
            format!("family index must lie in [1, {}], got {family}", inter.q - 1),
        ));
    }
    t_grid
        .iter()
        .map(|&t| {
            let chain = chain_from_field(inter, &family_field(inter.q, family, t))?;
            Ok((t, f_pressure_nn(&chain, inter)?))
        })
        .collect()
}

/// A random valid chain with strictly positive marginal: per generator a
/// Metropolis kernel `K(a, b) = Q(a, b) min(1, p(b)/p(a))` built from a random
/// symmetric proposal `Q`, which is reversible with respect to `p`.
pub fn random_chain<R: Rng + ?Sized>(q: usize, rank: usize, homogeneous: bool, rng: &mut R) -> NNChain {
    let marginal = renormalize((0..q).map(|_| 0.05 + rng.random::<f64>()).collect());
    let make_kernel = |rng: &mut R| -> Matrix {
        let mut w = vec![vec![0.0; q]; q];
        for a in 0..q {
            for b in 0..a {
                let x = rng.random::<f64>();
                w[a][b] = x;
                w[b][a] = x;
            }
        }
        let scale = w.iter().map(|row| row.iter().sum::<f64>()).fold(0.0, f64::max) * (1.0 + rng.random::<f64>());
        let mut k = vec![vec![0.0; q]; q];
        for a in 0..q {
            let mut off = 0.0;
            for b in 0..q {
                if a != b {
                    k[a][b] = w[a][b] / scale * (marginal[b] / marginal[a]).min(1.0);
                    off += k[a][b];
                }
            }
            k[a][a] = 1.0 - off;
        }
        k
    };
    let kernels = if homogeneous {
        vec![make_kernel(rng); rank]
    } else {
        (0..rank).map(|_| make_kernel(rng)).collect()
    };
    NNChain { marginal, kernels }
}

/// A random symmetric interaction with entries in `[-scale, scale]`.
pub fn random_interaction<R: Rng + ?Sized>(q: usize, rank: usize, scale: f64, rng: &mut R) -> NNInteraction {
    let site = (0..q).map(|_| scale * (2.0 * rng.random::<f64>() - 1.0)).collect();
    let mut edge = vec![vec![0.0; q]; q];
    for a in 0..q {
        for b in 0..=a {
            let x = scale * (2.0 * rng.random::<f64>() - 1.0);
            edge[a][b] = x;
            edge[b][a] = x;
        }
    }
    NNInteraction::new(site, edge, rank).expect("random interaction is valid")
}
