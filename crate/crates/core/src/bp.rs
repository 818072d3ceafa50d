//! Fixed points of the homogeneous belief-propagation recursion for the Ising
//! model on the `2r`-regular tree, the uniqueness and reconstruction
//! thresholds, and a direct check of the DLR conditional property on a star.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::ising::{IsingChain, IsingParams};
use crate::numeric::logistic;

pub const DEFAULT_TOL: f64 = 1e-12;

const SCAN_START: f64 = 1e-6;
const SCAN_RATIO: f64 = 1.05;

/// `((2r-1)/2) log(cosh(t+J) / cosh(t-J))`, evaluated as
/// `(2r-1) artanh(tanh t · tanh J)` to keep relative precision near `t = 0`.
pub fn fixed_point_rhs(t: f64, params: &IsingParams) -> f64 {
    let branching = 2.0 * params.rank() as f64 - 1.0;
    branching * (t.tanh() * params.coupling().tanh()).atanh()
}

fn excess(t: f64, params: &IsingParams) -> f64 {
    fixed_point_rhs(t, params) - t
}

/// A threshold value, flagged when it is infinite because the rank is 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    pub value: f64,
    pub degenerate: bool,
}

fn threshold_from(value: f64) -> Threshold {
    Threshold {
        value,
        degenerate: !value.is_finite(),
    }
}

/// `J_uniq(r) = artanh(1/(2r-1))`. Infinite (and flagged) for `r = 1`.
pub fn uniqueness_threshold(rank: usize) -> Result<Threshold> {
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    if rank == 1 {
        return Ok(threshold_from(f64::INFINITY));
    }
    Ok(threshold_from((1.0 / (2.0 * rank as f64 - 1.0)).atanh()))
}

/// `J_rec(r) = artanh((2r-1)^{-1/2})`. Infinite (and flagged) for `r = 1`.
pub fn reconstruction_threshold(rank: usize) -> Result<Threshold> {
    if rank < 1 {
        return Err(invalid("r", "rank must be at least 1"));
    }
    if rank == 1 {
        return Ok(threshold_from(f64::INFINITY));
    }
    Ok(threshold_from((2.0 * rank as f64 - 1.0).sqrt().recip().atanh()))
}

/// Whether `(2r-1) tanh J > 1`, i.e. `J > J_uniq(r)`. The boundary itself
/// counts as uniqueness.
pub fn above_uniqueness(params: &IsingParams) -> bool {
    (2.0 * params.rank() as f64 - 1.0) * params.coupling().tanh() > 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixedPointSet {
    pub t_zero: f64,
    pub t_plus: Option<f64>,
    pub t_minus: Option<f64>,
    /// `|t - rhs(t)|` for `t_zero`, then `t_plus`, `t_minus` when present.
    pub residuals: Vec<f64>,
    /// Every positive root isolated by the scan, in increasing order. A
    /// single entry is the expected case; more would mean the positive root
    /// is not unique.
    pub positive_roots: Vec<f64>,
}

impl FixedPointSet {
    pub fn roots(&self) -> Vec<f64> {
        let mut out = vec![self.t_zero];
        out.extend(self.t_plus);
        out.extend(self.t_minus);
        out
    }

    pub fn has_phase_transition(&self) -> bool {
        self.t_plus.is_some()
    }
}

/// Solve `t = rhs(t)`. The root `t = 0` is always present; above the
/// uniqueness threshold the symmetric pair `t_± = ±t_+` is found by scanning
/// `(0, (2r-1)J]` geometrically for sign changes of `rhs(t) - t` and
/// bisecting each bracket.
pub fn solve_fixed_points(params: &IsingParams, tol: f64) -> Result<FixedPointSet> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("tolerance must be > 0, got {tol}")));
    }
    let mut out = FixedPointSet {
        t_zero: 0.0,
        t_plus: None,
        t_minus: None,
        residuals: vec![excess(0.0, params).abs()],
        positive_roots: Vec::new(),
    };
    if !above_uniqueness(params) {
        return Ok(out);
    }

    let upper = (2.0 * params.rank() as f64 - 1.0) * params.coupling() * (1.0 + 1e-9) + 1e-9;
    let mut brackets = Vec::new();
    let mut lo = SCAN_START;
    let mut g_lo = excess(lo, params);
    while lo < upper {
        let hi = (lo * SCAN_RATIO).min(upper);
        let g_hi = excess(hi, params);
        if g_lo == 0.0 {
            brackets.push((lo, lo));
        } else if (g_lo > 0.0) != (g_hi > 0.0) && g_hi != 0.0 {
            brackets.push((lo, hi));
        }
        lo = hi;
        g_lo = g_hi;
    }
    if g_lo == 0.0 {
        brackets.push((lo, lo));
    }

    for (a, b) in brackets {
        out.positive_roots.push(bisect(|t| excess(t, params), a, b, tol));
    }
    // The scan starts at a small positive t; above threshold g > 0 there, so
    // the first crossing is the plus-state root.
    if let Some(&t_plus) = out.positive_roots.first() {
        out.t_plus = Some(t_plus);
        out.t_minus = Some(-t_plus);
        out.residuals.push(excess(t_plus, params).abs());
        out.residuals.push(excess(-t_plus, params).abs());
    }
    Ok(out)
}

/// Bisection on `[a, b]` where `f(a)` and `f(b)` have opposite signs (or one
/// vanishes). Narrows the bracket to `tol / 100` or to floating-point
/// resolution, whichever comes first.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let mut fa = f(a);
    if fa == 0.0 {
        return a;
    }
    if f(b) == 0.0 {
        return b;
    }
    loop {
        let m = 0.5 * (a + b);
        if m <= a || m >= b || b - a <= 0.01 * tol {
            return m;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
}

/// Largest discrepancy, over neighbor patterns of a `2r`-star, between the
/// chain's conditional law of the center spin and the Boltzmann law
/// `P(+1 | S) = e^{JS} / (e^{JS} + e^{-JS})`, where `S` is the neighbor spin
/// sum. Zero exactly when `t` solves the fixed-point equation.
///
/// Neighbors of the center are conditionally independent given the center
/// under a reversible tree-indexed chain, so the conditional depends only on
/// the number of `+1` neighbors.
pub fn gibbs_conditional_residual(chain: &IsingChain) -> f64 {
    let degree = chain.params.degree();
    let k = chain.transition();
    let ln_p = [chain.alpha.ln(), chain.alpha_complement.ln()];
    let j = chain.params.coupling();
    let mut worst: f64 = 0.0;
    for plus in 0..=degree {
        let minus = degree - plus;
        // log of p(a) · K(a,+)^plus · K(a,-)^minus
        let score = |a: usize| ln_p[a] + plus as f64 * k[a][1].ln() + minus as f64 * k[a][0].ln();
        let chain_plus = logistic(score(1) - score(0));
        let s = plus as f64 - minus as f64;
        let boltzmann_plus = logistic(2.0 * j * s);
        worst = worst.max((chain_plus - boltzmann_plus).abs());
    }
    worst
}

/// `gibbs_conditional_residual(chain) <= tol`.
pub fn is_gibbs(chain: &IsingChain, tol: f64) -> Result<bool> {
    if !(tol > 0.0) {
        return Err(invalid("tol", format!("tolerance must be > 0, got {tol}")));
    }
    Ok(gibbs_conditional_residual(chain) <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ising::{build_mu_t, d2_pressure_at_zero};

    fn params(j: f64, r: usize) -> IsingParams {
        IsingParams::new(j, r).unwrap()
    }

    #[test]
    fn rhs_values() {
        let p = params(0.5, 2);
        assert_eq!(fixed_point_rhs(0.0, &p), 0.0);
        assert!((fixed_point_rhs(1.0, &p) - 1.102_988_496_083_278_8).abs() < 1e-14);
        assert!((fixed_point_rhs(60.0, &p) - 1.5).abs() < 1e-12);
        for &t in &[0.01, 0.3, 2.0, 9.0] {
            assert!((fixed_point_rhs(-t, &p) + fixed_point_rhs(t, &p)).abs() < 1e-14);
            assert!(fixed_point_rhs(t, &p) <= 1.5);
        }
    }

    #[test]
    fn thresholds() {
        let u2 = uniqueness_threshold(2).unwrap();
        assert!((u2.value - 0.346_573_590_279_972_65).abs() < 1e-15);
        assert!((u2.value - 0.5 * std::f64::consts::LN_2).abs() < 1e-15);
        assert!(!u2.degenerate);
        let u1 = uniqueness_threshold(1).unwrap();
        assert!(u1.degenerate && u1.value.is_infinite());
        assert!(uniqueness_threshold(0).is_err());

        let r2 = reconstruction_threshold(2).unwrap();
        assert!((r2.value - 0.658_478_948_462_408_4).abs() < 1e-15);
        assert!(reconstruction_threshold(1).unwrap().degenerate);
        assert!(reconstruction_threshold(0).is_err());

        let u5 = uniqueness_threshold(5).unwrap().value;
        assert!((2.0 * u5 - (5.0f64 / 4.0).ln()).abs() < 1e-14);
        for r in 2..=100 {
            let u = uniqueness_threshold(r).unwrap().value;
            assert!(reconstruction_threshold(r).unwrap().value > u);
            assert!((2.0 * u - (r as f64 / (r as f64 - 1.0)).ln()).abs() < 1e-14);
        }
    }

    #[test]
    fn below_threshold_only_zero() {
        let fp = solve_fixed_points(&params(0.3, 2), DEFAULT_TOL).unwrap();
        assert_eq!(fp.roots(), vec![0.0]);
        let ju = uniqueness_threshold(2).unwrap().value;
        let fp = solve_fixed_points(&params(ju, 2), DEFAULT_TOL).unwrap();
        assert!(!fp.has_phase_transition());
    }

    #[test]
    fn plus_minus_roots() {
        let fp = solve_fixed_points(&params(0.5, 2), 1e-10).unwrap();
        let tp = fp.t_plus.unwrap();
        assert!((tp - 1.236_006_809_064_818_3).abs() < 1e-9);
        assert_eq!(fp.t_minus.unwrap(), -tp);
        assert_eq!(fp.positive_roots.len(), 1);
        assert!(fp.residuals.iter().all(|&r| r <= 1e-10));
    }

    #[test]
    fn solver_errors() {
        assert!(solve_fixed_points(&params(0.5, 2), 0.0).is_err());
        assert!(solve_fixed_points(&params(0.5, 2), -1.0).is_err());
    }

    #[test]
    fn strong_coupling_root_near_cap() {
        let p = params(2.0, 10);
        let fp = solve_fixed_points(&p, DEFAULT_TOL).unwrap();
        let tp = fp.t_plus.unwrap();
        assert!(tp > 37.0 && tp <= 38.0 + 1e-9);
        assert!(fp.residuals.iter().all(|&r| r <= 1e-10));
    }

    #[test]
    fn nontrivial_root_iff_positive_curvature() {
        for r in 2..=6 {
            for k in 1..=60 {
                let j = k as f64 * 0.025;
                let p = params(j, r);
                let fp = solve_fixed_points(&p, DEFAULT_TOL).unwrap();
                assert_eq!(fp.has_phase_transition(), d2_pressure_at_zero(&p) > 0.0, "r={r} J={j}");
            }
        }
    }

    #[test]
    fn t_plus_nondecreasing_in_coupling() {
        let ju = uniqueness_threshold(3).unwrap().value;
        let mut last = 0.0;
        for k in 1..=80 {
            let j = ju + (3.0 - ju) * k as f64 / 80.0;
            let tp = solve_fixed_points(&params(j, 3), DEFAULT_TOL).unwrap().t_plus.unwrap();
            assert!(tp >= last);
            last = tp;
        }
    }

    #[test]
    fn gibbs_residuals() {
        for &j in &[0.1, 0.5, 1.5] {
            assert!(gibbs_conditional_residual(&build_mu_t(0.0, &params(j, 2))) < 1e-12);
        }
        let p = params(0.5, 2);
        let tp = solve_fixed_points(&p, DEFAULT_TOL).unwrap().t_plus.unwrap();
        assert!(gibbs_conditional_residual(&build_mu_t(tp, &p)) < 1e-9);
        assert!(gibbs_conditional_residual(&build_mu_t(-tp, &p)) < 1e-9);
        assert!(gibbs_conditional_residual(&build_mu_t(0.1, &params(0.3, 2))) > 1e-3);
    }
}
