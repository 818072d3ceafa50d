//! Comparison of the free-boundary state against the all-plus point mass
//! through the edge-entropy upper bound, the simplified sufficient condition
//! `r > ρ(J)`, and region / figure data built on top of them.

use serde::{Deserialize, Serialize};

use crate::bp::{reconstruction_threshold, solve_fixed_points, uniqueness_threshold, DEFAULT_TOL};
use crate::error::{invalid, Error, Result};
use crate::ising::{build_mu_t, delta_plus_pressure, pressure_report, IsingParams};

/// `φ(t) = t log t` for `t > 0`.
pub fn phi(t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(invalid("t", format!("phi needs t > 0, got {t}")));
    }
    Ok(t * t.ln())
}

/// `φ(1 + e^{2J}) - φ(e^{2J})`, computed as
/// `(1 + e^{2J}) log(1 + e^{-2J}) + 2J` so that it stays finite for large `J`.
fn phi_gap(coupling: f64) -> f64 {
    let x = 2.0 * coupling;
    if x < 700.0 {
        let e = x.exp();
        (1.0 + e) * (-x).exp().ln_1p() + x
    } else {
        1.0 + x
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiCondition {
    /// `2Jr - [φ(1+e^{2J}) - φ(e^{2J})]`.
    pub margin: f64,
    /// `P(δ_+) > P^edge(μ^FB)`.
    pub holds: bool,
}

/// Whether the all-plus state beats the edge-entropy bound on the
/// free-boundary pressure: `2Jr > φ(1+e^{2J}) - φ(e^{2J})`.
pub fn delta_plus_beats_fb(params: &IsingParams) -> PhiCondition {
    let j = params.coupling();
    let margin = 2.0 * j * params.rank() as f64 - phi_gap(j);
    PhiCondition {
        margin,
        holds: margin > 0.0,
    }
}

/// `P(δ_+) - P^edge(μ^FB)` through the Ising pressure report. Equals the
/// φ-condition margin divided by `1 + e^{2J}`.
pub fn delta_plus_minus_edge_fb(params: &IsingParams) -> f64 {
    let fb = pressure_report(&build_mu_t(0.0, params));
    delta_plus_pressure(params) - fb.edge_pressure
}

/// `ρ(J) = 1 + (1 + e^{-2J}) / (2J)`.
pub fn rho(coupling: f64) -> Result<f64> {
    if !(coupling > 0.0) {
        return Err(invalid("J", format!("rho needs J > 0, got {coupling}")));
    }
    Ok(1.0 + (1.0 + (-2.0 * coupling).exp()) / (2.0 * coupling))
}

/// The three inequality families behind the every-approximation result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremBReport {
    pub r_max: usize,
    pub grid_points: usize,
    /// Smallest `r - ρ(2 J_uniq(r))` over `2 <= r <= r_max`.
    pub min_rho_margin: f64,
    /// Smallest `(4J + 2) - (2cosh 2J + (e^{-2J} - 1)^2)` over the grid on
    /// `(0, J_rec(2)]`.
    pub min_dagger_margin: f64,
    /// Smallest `2r(r-1)(r log(r/(r-1)) - 1) - 1`.
    pub min_rearranged_margin: f64,
    /// Smallest `r log(r/(r-1)) - (1 + 1/(2r))`.
    pub min_taylor_margin: f64,
    /// Smallest φ-condition margin at `J = 2 J_uniq(r)` and `J = J_rec(r)`.
    pub min_phi_margin: f64,
    pub failures: Vec<String>,
}

impl TheoremBReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `(4J + 2) - (2cosh 2J + (e^{-2J} - 1)^2)`.
pub fn dagger_margin(coupling: f64) -> f64 {
    let lhs = 4.0 * coupling + 2.0;
    let rhs = 2.0 * (2.0 * coupling).cosh() + (-2.0 * coupling).exp_m1().powi(2);
    lhs - rhs
}

/// `2r(r-1)(r log(r/(r-1)) - 1)`.
pub fn rearranged_uniqueness_lhs(rank: usize) -> f64 {
    let r = rank as f64;
    // r log(r/(r-1)) = -r log(1 - 1/r)
    2.0 * r * (r - 1.0) * (-r * (-1.0 / r).ln_1p() - 1.0)
}

/// Check, for `2 <= r <= r_max`: `r > ρ(2 J_uniq(r))`, the rearranged form
/// `2r(r-1)(r log(r/(r-1)) - 1) > 1`, the Taylor bound
/// `r log(r/(r-1)) > 1 + 1/(2r)`, and the φ-condition at `2 J_uniq` and
/// `J_rec`; and `4J + 2 > 2cosh 2J + (e^{-2J} - 1)^2` on `grid` evenly
/// spaced points of `(0, J_rec(2)]`.
pub fn verify_theorem_b(r_max: usize, grid: usize) -> Result<TheoremBReport> {
    if r_max < 2 {
        return Err(invalid("r_max", "need r_max >= 2"));
    }
    if grid == 0 {
        return Err(invalid("grid", "grid must have at least one point"));
    }
    let mut report = TheoremBReport {
        r_max,
        grid_points: grid,
        min_rho_margin: f64::INFINITY,
        min_dagger_margin: f64::INFINITY,
        min_rearranged_margin: f64::INFINITY,
        min_taylor_margin: f64::INFINITY,
        min_phi_margin: f64::INFINITY,
        failures: Vec::new(),
    };
    for r in 2..=r_max {
        let rf = r as f64;
        let ju = uniqueness_threshold(r)?.value;
        let jr = reconstruction_threshold(r)?.value;

        let m = rf - rho(2.0 * ju)?;
        report.min_rho_margin = report.min_rho_margin.min(m);
        if !(m > 0.0) {
            report.failures.push(format!("r > rho(2 J_uniq) fails at r = {r} (margin {m:e})"));
        }

        let m = rearranged_uniqueness_lhs(r) - 1.0;
        report.min_rearranged_margin = report.min_rearranged_margin.min(m);
        if !(m > 0.0) {
            report.failures.push(format!("rearranged condition fails at r = {r} (margin {m:e})"));
        }

        let m = -rf * (-1.0 / rf).ln_1p() - (1.0 + 0.5 / rf);
        report.min_taylor_margin = report.min_taylor_margin.min(m);
        if !(m > 0.0) {
            report.failures.push(format!("Taylor bound fails at r = {r} (margin {m:e})"));
        }

        for (label, j) in [("2 J_uniq", 2.0 * ju), ("J_rec", jr)] {
            let m = delta_plus_beats_fb(&IsingParams::new(j, r)?).margin;
            report.min_phi_margin = report.min_phi_margin.min(m);
            if !(m > 0.0) {
                report.failures.push(format!("phi-condition fails at r = {r}, J = {label} (margin {m:e})"));
            }
        }
    }
    let jr2 = reconstruction_threshold(2)?.value;
    for k in 1..=grid {
        let j = jr2 * k as f64 / grid as f64;
        let m = dagger_margin(j);
        report.min_dagger_margin = report.min_dagger_margin.min(m);
        if !(m > 0.0) {
            report.failures.push(format!("(4J+2) inequality fails at J = {j}"));
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MinimalConstant {
    pub rank: usize,
    /// Smallest `c` with the φ-condition holding for every `J >= c J_uniq(r)`.
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantSearch {
    pub per_rank: Vec<MinimalConstant>,
    pub sup: f64,
    pub argsup: usize,
}

/// The φ-condition margin is increasing in `J` for `r >= 2`: its derivative is
/// `2r - 2e^{2J} log(1 + e^{-2J}) > 2r - 2`. This is checked on a grid before
/// bisecting, rather than assumed.
fn margin_is_increasing(rank: usize, lo: f64, hi: f64) -> Result<bool> {
    let steps = 200;
    let mut last = f64::NEG_INFINITY;
    for k in 0..=steps {
        let j = lo + (hi - lo) * k as f64 / steps as f64;
        let m = delta_plus_beats_fb(&IsingParams::new(j, rank)?).margin;
        if m < last {
            return Ok(false);
        }
        last = m;
    }
    Ok(true)
}

/// For each rank, bisect on `c` for the zero of `c ↦ margin(c J_uniq(r))`.
pub fn minimal_constant_search(ranks: &[usize], tol: f64) -> Result<ConstantSearch> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("tolerance must be > 0, got {tol}")));
    }
    if ranks.is_empty() {
        return Err(invalid("r", "need at least one rank"));
    }
    let mut per_rank = Vec::with_capacity(ranks.len());
    for &r in ranks {
        if r < 2 {
            return Err(invalid("r", format!("constant search needs r >= 2, got {r}")));
        }
        let ju = uniqueness_threshold(r)?.value;
        let margin = |c: f64| -> Result<f64> { Ok(delta_plus_beats_fb(&IsingParams::new(c * ju, r)?).margin) };
        let (mut lo, mut hi) = (1e-3, 2.0);
        while margin(hi)? <= 0.0 {
            hi *= 2.0;
        }
        if !margin_is_increasing(r, lo * ju, hi * ju)? {
            return Err(Error::VerificationFailed(format!(
                "phi-condition margin is not monotone in J for r = {r}"
            )));
        }
        if margin(lo)? > 0.0 {
            per_rank.push(MinimalConstant { rank: r, c: lo });
            continue;
        }
        while hi - lo > tol {
            let mid = 0.5 * (lo + hi);
            if margin(mid)? > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        per_rank.push(MinimalConstant { rank: r, c: hi });
    }
    let best = per_rank
        .iter()
        .copied()
        .fold(None::<MinimalConstant>, |acc, m| match acc {
            Some(a) if a.c >= m.c => Some(a),
            _ => Some(m),
        })
        .expect("nonempty");
    Ok(ConstantSearch {
        per_rank,
        sup: best.c,
        argsup: best.rank,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegionClass {
    /// `J <= J_uniq`: the free-boundary state is the only Gibbs state.
    UniqueGibbs,
    /// Nonequilibrium over a typical sofic approximation.
    NonequilibriumTypical,
    /// Nonequilibrium over every sofic approximation.
    NonequilibriumAlways,
    Undetermined,
}

impl RegionClass {
    pub fn label(&self) -> &'static str {
        match self {
            RegionClass::UniqueGibbs => "unique-Gibbs",
            RegionClass::NonequilibriumTypical => "nonequilibrium-typical",
            RegionClass::NonequilibriumAlways => "nonequilibrium-always",
            RegionClass::Undetermined => "undetermined",
        }
    }
}

impl std::fmt::Display for RegionClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionPoint {
    pub rank: usize,
    pub coupling: f64,
    pub class: RegionClass,
}

pub fn classify(params: &IsingParams) -> Result<RegionClass> {
    let r = params.rank();
    let j = params.coupling();
    let ju = uniqueness_threshold(r)?.value;
    let jr = reconstruction_threshold(r)?.value;
    if j <= ju {
        return Ok(RegionClass::UniqueGibbs);
    }
    let always = r >= 2 && (j >= 2.0 * ju || j >= jr || delta_plus_beats_fb(params).holds);
    if always {
        return Ok(RegionClass::NonequilibriumAlways);
    }
    if j <= jr {
        return Ok(RegionClass::NonequilibriumTypical);
    }
    Ok(RegionClass::Undetermined)
}

/// Classification on the product grid, `r` outer and `J` inner.
pub fn region_data(ranks: &[usize], couplings: &[f64]) -> Result<Vec<RegionPoint>> {
    if ranks.is_empty() || couplings.is_empty() {
        return Err(invalid("grid", "grids must be nonempty"));
    }
    let mut out = Vec::with_capacity(ranks.len() * couplings.len());
    for &r in ranks {
        for &j in couplings {
            let params = IsingParams::new(j, r)?;
            out.push(RegionPoint {
                rank: r,
                coupling: j,
                class: classify(&params)?,
            });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Figure5Row {
    pub coupling: f64,
    pub edge_pressure_fb: f64,
    pub delta_plus_pressure: f64,
    /// `P_f(μ^+)`, or the free-boundary value when there is no plus state.
    pub plus_pressure: f64,
}

pub fn figure5_data(rank: usize, couplings: &[f64]) -> Result<Vec<Figure5Row>> {
    if couplings.is_empty() {
        return Err(invalid("J", "grid must be nonempty"));
    }
    couplings
        .iter()
        .map(|&j| {
            let params = IsingParams::new(j, rank)?;
            let fb = pressure_report(&build_mu_t(0.0, &params));
            let t = solve_fixed_points(&params, DEFAULT_TOL)?.t_plus.unwrap_or(0.0);
            Ok(Figure5Row {
                coupling: j,
                edge_pressure_fb: fb.edge_pressure,
                delta_plus_pressure: delta_plus_pressure(&params),
                plus_pressure: pressure_report(&build_mu_t(t, &params)).f_pressure,
            })
        })
        .collect()
}
