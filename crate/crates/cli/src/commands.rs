use clap::ValueEnum;
use serde_json::{json, Value};

use sofic_pressure::bp::{reconstruction_threshold, solve_fixed_points, uniqueness_threshold, DEFAULT_TOL};
use sofic_pressure::ising::{build_mu_t, f_invariant, pressure_report, IsingParams};
use sofic_pressure::nn_markov::{f_pressure_nn, family_field, potts_family_curve, solve_markov_gibbs, NNInteraction};
use sofic_pressure::sofic::{
    annealed_count_exact, coexistence_weight, glauber_run, nearest_profile_distance, sample_hom_seeded,
    second_moment_mc, InitialState,
};
use sofic_pressure::thresholds::{figure5_data, minimal_constant_search, region_data, verify_theorem_b};

use crate::config::{Initial, Settings};
use crate::output::Table;
use crate::{row, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Uniqueness and reconstruction thresholds.
    Thresholds,
    /// Energy, f-invariant and pressures along the family μ_t.
    PressureCurve,
    /// Roots of the tree recursion.
    FixedPoints,
    /// Classification of the (r, J) plane.
    Region,
    /// Edge pressure of the free-boundary state against δ+ and μ+.
    Figure5,
    /// Pressure along one-parameter Potts chain families.
    PottsCurve,
    /// Check the every-approximation inequalities.
    #[value(name = "verify-theoremB")]
    VerifyTheoremB,
    /// Minimal constant c with δ+ beating the free-boundary state above c·J_uniq.
    ConstantSearch,
    /// Exact annealed microstate count.
    Annealed,
    /// Monte Carlo first and second moments of the microstate count.
    SecondMoment,
    /// Glauber dynamics on a random permutation model.
    Simulate,
    /// Weight of the near-zero magnetization window.
    Coexistence,
}

impl Command {
    pub fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

pub struct Outcome {
    pub tables: Vec<Table>,
    pub results: Value,
    /// Set when the run completed but a checked property failed.
    pub failure: Option<String>,
}

impl Outcome {
    fn table(table: Table) -> Self {
        Self {
            tables: vec![table],
            results: Value::Null,
            failure: None,
        }
    }
}

fn required<T: Copy>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Invalid(format!("--{flag} is required")))
}

fn grid(min: f64, max: f64, steps: usize, what: &str) -> Result<Vec<f64>, CliError> {
    if !(min.is_finite() && max.is_finite()) || min > max {
        return Err(CliError::Invalid(format!("{what} range [{min}, {max}] is empty or not finite")));
    }
    if steps < 1 {
        return Err(CliError::Invalid(format!("{what} grid needs at least one point")));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    Ok((0..steps)
        .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
        .collect())
}

fn t_grid(s: &mut Settings) -> Result<Vec<f64>, CliError> {
    let lo = *s.t_min.get_or_insert(-2.0);
    let hi = *s.t_max.get_or_insert(2.0);
    let steps = *s.t_steps.get_or_insert(401);
    grid(lo, hi, steps, "t")
}

fn sizes(s: &Settings) -> Result<Vec<usize>, CliError> {
    match &s.n {
        Some(n) if !n.is_empty() => Ok(n.clone()),
        _ => Err(CliError::Invalid("--n is required".into())),
    }
}

fn params(s: &mut Settings) -> Result<IsingParams, CliError> {
    let r = *s.r.get_or_insert(2);
    Ok(IsingParams::new(required(s.coupling, "J")?, r)?)
}

/// Fills defaults into `s` so the manifest records the effective values.
pub fn run(cmd: Command, s: &mut Settings) -> Result<Outcome, CliError> {
    match cmd {
        Command::Thresholds => thresholds(s),
        Command::PressureCurve => pressure_curve(s),
        Command::FixedPoints => fixed_points(s),
        Command::Region => region(s),
        Command::Figure5 => figure5(s),
        Command::PottsCurve => potts_curve(s),
        Command::VerifyTheoremB => theorem_b(s),
        Command::ConstantSearch => constant_search(s),
        Command::Annealed => annealed(s),
        Command::SecondMoment => second_moment(s),
        Command::Simulate => simulate(s),
        Command::Coexistence => coexistence(s),
    }
}

fn thresholds(s: &mut Settings) -> Result<Outcome, CliError> {
    let ranks: Vec<usize> = match s.r {
        Some(r) => vec![r],
        None => (1..=*s.r_max.get_or_insert(10)).collect(),
    };
    let mut t = Table::new("thresholds.csv", &["r", "J_uniq", "J_rec"]);
    for r in ranks {
        t.push(row![r, uniqueness_threshold(r)?.value, reconstruction_threshold(r)?.value]);
    }
    Ok(Outcome::table(t))
}

fn pressure_curve(s: &mut Settings) -> Result<Outcome, CliError> {
    let p = params(s)?;
    let ts = t_grid(s)?;
    let mut t = Table::new(
        "pressure-curve.csv",
        &["t", "energy", "f_invariant", "f_pressure", "edge_entropy", "edge_pressure"],
    );
    for x in ts {
        let rep = pressure_report(&build_mu_t(x, &p));
        t.push(row![x, rep.energy, rep.f_invariant, rep.f_pressure, rep.edge_entropy, rep.edge_pressure]);
    }
    Ok(Outcome::table(t))
}

fn fixed_points(s: &mut Settings) -> Result<Outcome, CliError> {
    let p = params(s)?;
    let tol = *s.tol.get_or_insert(DEFAULT_TOL);
    let fp = solve_fixed_points(&p, tol)?;
    let mut t = Table::new("fixed-points.csv", &["root", "residual"]);
    for (root, res) in fp.roots().into_iter().zip(&fp.residuals) {
        t.push(row![root, *res]);
    }
    Ok(Outcome {
        results: json!({ "positive_roots": fp.positive_roots }),
        ..Outcome::table(t)
    })
}

fn region(s: &mut Settings) -> Result<Outcome, CliError> {
    let r_max = *s.r_max.get_or_insert(6);
    let j_max = *s.j_max.get_or_insert(1.5);
    let steps = *s.steps.get_or_insert(100) as usize;
    if steps < 1 {
        return Err(CliError::Invalid("--steps must be at least 1".into()));
    }
    let j_min = *s.j_min.get_or_insert(j_max / steps as f64);
    if r_max < 2 {
        return Err(CliError::Invalid("--r-max must be at least 2".into()));
    }
    let ranks: Vec<usize> = (2..=r_max).collect();
    let points = region_data(&ranks, &grid(j_min, j_max, steps, "J")?)?;
    let mut t = Table::new("region.csv", &["r", "J", "class"]);
    for pt in points {
        t.push(row![pt.rank, pt.coupling, pt.class.label()]);
    }
    Ok(Outcome::table(t))
}

fn figure5(s: &mut Settings) -> Result<Outcome, CliError> {
    let r = *s.r.get_or_insert(2);
    let js = grid(
        *s.j_min.get_or_insert(0.1),
        *s.j_max.get_or_insert(3.0),
        *s.j_steps.get_or_insert(100),
        "J",
    )?;
    let mut t = Table::new("figure5.csv", &["T", "P_edge_FB", "P_delta_plus", "P_f_plus"]);
    for row in figure5_data(r, &js)? {
        t.push(row![
            1.0 / row.coupling,
            row.edge_pressure_fb,
            row.delta_plus_pressure,
            row.plus_pressure
        ]);
    }
    Ok(Outcome::table(t))
}

fn potts_curve(s: &mut Settings) -> Result<Outcome, CliError> {
    let q = *s.q.get_or_insert(3);
    let r = *s.r.get_or_insert(2);
    let inter = NNInteraction::potts(q, required(s.coupling, "J")?, r)?;
    let ts = t_grid(s)?;
    let families: Vec<usize> = match s.family {
        Some(k) => vec![k],
        None => (1..q).collect(),
    };
    let tol = *s.tol.get_or_insert(1e-12);
    let mut t = Table::new("potts-curve.csv", &["t", "family", "f_pressure"]);
    let mut gibbs = Vec::new();
    for k in families {
        for (x, p) in potts_family_curve(&inter, &ts, k)? {
            t.push(row![x, k, p]);
        }
        // the Gibbs chain this family flows to under the tree recursion
        let sol = solve_markov_gibbs(&inter, &family_field(q, k, 1.0), tol)?;
        gibbs.push(json!({
            "family": k,
            "field": sol.field,
            "residual": sol.residual,
            "iterations": sol.iterations,
            "f_pressure": f_pressure_nn(&sol.chain, &inter)?,
        }));
    }
    Ok(Outcome {
        results: json!({ "gibbs": gibbs }),
        ..Outcome::table(t)
    })
}

fn theorem_b(s: &mut Settings) -> Result<Outcome, CliError> {
    let r_max = *s.r_max.get_or_insert(100);
    let grid_points = *s.steps.get_or_insert(10_000) as usize;
    let rep = verify_theorem_b(r_max, grid_points)?;
    let mut t = Table::new("verify-theoremB.csv", &["check", "min_margin"]);
    t.push(row!["rho", rep.min_rho_margin]);
    t.push(row!["dagger", rep.min_dagger_margin]);
    t.push(row!["rearranged", rep.min_rearranged_margin]);
    t.push(row!["taylor", rep.min_taylor_margin]);
    t.push(row!["phi", rep.min_phi_margin]);
    let failure = (!rep.passed()).then(|| rep.failures.join("; "));
    Ok(Outcome {
        tables: vec![t],
        results: json!({ "passed": rep.passed(), "failures": rep.failures }),
        failure,
    })
}

fn constant_search(s: &mut Settings) -> Result<Outcome, CliError> {
    let r_max = *s.r_max.get_or_insert(50);
    let tol = *s.tol.get_or_insert(1e-10);
    let mut ranks: Vec<usize> = (2..=r_max).collect();
    if let Some(r) = s.r {
        if !ranks.contains(&r) {
            ranks.push(r);
        }
    }
    let found = minimal_constant_search(&ranks, tol)?;
    let mut t = Table::new("constant-search.csv", &["r", "c"]);
    for m in &found.per_rank {
        t.push(row![m.rank, m.c]);
    }
    Ok(Outcome {
        results: json!({ "sup": found.sup, "argsup": found.argsup }),
        ..Outcome::table(t)
    })
}

fn annealed(s: &mut Settings) -> Result<Outcome, CliError> {
    let p = params(s)?;
    let chain = build_mu_t(*s.t.get_or_insert(0.0), &p);
    let f = f_invariant(&chain);
    let mut t = Table::new("annealed.csv", &["n", "eps", "log_count", "rate", "f_invariant"]);
    for n in sizes(s)? {
        // without --eps, the smallest ball reaching past the nearest lattice profile
        let eps = match s.eps {
            Some(e) => e,
            None => nearest_profile_distance(n, &chain)? + 2.0 / n as f64,
        };
        let log_count = annealed_count_exact(n, p.rank(), &chain, eps)?;
        t.push(row![n, eps, log_count, log_count / n as f64, f]);
    }
    Ok(Outcome::table(t))
}

fn second_moment(s: &mut Settings) -> Result<Outcome, CliError> {
    let p = params(s)?;
    let chain = build_mu_t(*s.t.get_or_insert(0.0), &p);
    let eps = *s.eps.get_or_insert(0.1);
    let samples = *s.samples.get_or_insert(100);
    let seed = *s.seed.get_or_insert(0);
    let mut t = Table::new(
        "second-moment.csv",
        &["n", "mean", "mean_sq", "pz_ratio", "std_error", "samples"],
    );
    for n in sizes(s)? {
        let m = second_moment_mc(n, p.rank(), &chain, eps, samples, seed)?;
        t.push(row![n, m.mean, m.mean_sq, m.pz_ratio, m.std_error, m.samples]);
    }
    Ok(Outcome::table(t))
}

fn simulate(s: &mut Settings) -> Result<Outcome, CliError> {
    let p = params(s)?;
    let n = match sizes(s)?.as_slice() {
        [n] => *n,
        _ => return Err(CliError::Invalid("simulate takes a single --n".into())),
    };
    let steps = *s.steps.get_or_insert(100_000);
    let seed = *s.seed.get_or_insert(0);
    let every = *s.record_every.get_or_insert(1000);
    let initial = match *s.initial.get_or_insert(Initial::Plus) {
        Initial::Plus => InitialState::AllPlus,
        Initial::Minus => InitialState::AllMinus,
        Initial::Random => InitialState::Random,
    };
    let sigma = sample_hom_seeded(n, p.rank(), seed)?;
    let run = glauber_run(&sigma, p.coupling(), steps, seed, every, initial)?;
    let mut t = Table::new("simulate.csv", &["step", "magnetization"]);
    for rec in &run {
        t.push(row![rec.step, rec.magnetization]);
    }
    let last = run.last().map(|r| r.magnetization);
    Ok(Outcome {
        results: json!({ "final_magnetization": last, "fixed_points": sigma.fixed_point_count() }),
        ..Outcome::table(t)
    })
}

fn coexistence(s: &mut Settings) -> Result<Outcome, CliError> {
    let p = params(s)?;
    let eps = *s.eps.get_or_insert(0.1);
    let samples = *s.samples.get_or_insert(100);
    let seed = *s.seed.get_or_insert(0);
    let rows = coexistence_weight(&sizes(s)?, p.rank(), p.coupling(), eps, samples, seed)?;
    let mut t = Table::new("coexistence.csv", &["n", "mean", "std_error", "samples"]);
    for r in rows {
        t.push(row![r.n, r.mean, r.std_error, r.samples]);
    }
    Ok(Outcome::table(t))
}
