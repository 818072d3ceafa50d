//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use rand::Rng;

use sofic_pressure::bp::{gibbs_conditional_residual, reconstruction_threshold, solve_fixed_points, uniqueness_threshold};
use sofic_pressure::ising::{build_mu_t, d1_pressure_fd, d2_pressure_fd, f_invariant, f_pressure_at, IsingChain, IsingParams};
use sofic_pressure::nn_markov::{
    f_pressure_nn, f_pressure_nn_conditional, homogenize, random_chain, random_interaction, solve_markov_gibbs,
    NNInteraction,
};
use sofic_pressure::sofic::{
    annealed_count_exact, coexistence_weight, nearest_profile_distance, partition_function_exact, stream_rng,
    SoficMap,
};
use sofic_pressure::thresholds::{
    dagger_margin, delta_plus_beats_fb, minimal_constant_search, rearranged_uniqueness_lhs,
};

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn params(j: f64, r: usize) -> IsingParams {
    IsingParams::new(j, r).unwrap()
}

fn t_plus(p: &IsingParams) -> f64 {
    solve_fixed_points(p, 1e-13).unwrap().t_plus.expect("above uniqueness")
}

fn second_derivative_identity() -> Outcome {
    let mut worst2: f64 = 0.0;
    let mut worst1: f64 = 0.0;
    for r in 2..=10 {
        for k in 1..=40 {
            let j = 0.05 * k as f64;
            let p = params(j, r);
            let th = j.tanh();
            let closed = (th + 1.0) * ((2.0 * r as f64 - 1.0) * th - 1.0);
            worst2 = worst2.max((d2_pressure_fd(&p, 1e-4).unwrap() - closed).abs());
            worst1 = worst1.max(d1_pressure_fd(&p, 1e-4).unwrap().abs());
        }
    }
    check(
        worst2 <= 1e-5 && worst1 <= 1e-8,
        format!("max |d2 error| = {worst2:.3e}, max |d1| = {worst1:.3e}"),
    )
}

fn local_minimum() -> Outcome {
    let mut smallest = f64::INFINITY;
    for j in [0.4, 0.5, 0.6] {
        let p = params(j, 2);
        let base = f_pressure_at(0.0, &p);
        for k in 1..=100 {
            let t = 0.1 * k as f64 / 100.0;
            for s in [t, -t] {
                smallest = smallest.min(f_pressure_at(s, &p) - base);
            }
        }
    }
    check(smallest > 0.0, format!("min P_f(t) - P_f(0) = {smallest:.3e}"))
}

fn fixed_point_structure() -> Outcome {
    let mut problems = Vec::new();
    let (mut sym, mut res, mut gibbs): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for r in 2..=10 {
        let ju = uniqueness_threshold(r).unwrap().value;
        let below = solve_fixed_points(&params(0.9 * ju, r), 1e-13).unwrap();
        if below.roots() != vec![0.0] || !below.positive_roots.is_empty() {
            problems.push(format!("r={r}: extra roots below J_uniq: {:?}", below.roots()));
        }
        let above = solve_fixed_points(&params(1.2 * ju, r), 1e-13).unwrap();
        match (above.t_plus, above.t_minus) {
            (Some(tp), Some(tm)) => {
                sym = sym.max((tp + tm).abs());
                res = above.residuals.iter().fold(res, |a, &b| a.max(b));
                gibbs = gibbs.max(gibbs_conditional_residual(&build_mu_t(tp, &params(1.2 * ju, r))));
            }
            _ => problems.push(format!("r={r}: no t_± above J_uniq")),
        }
    }
    check(
        problems.is_empty() && sym <= 1e-9 && res <= 1e-10 && gibbs <= 1e-9,
        format!("|t+ + t-| <= {sym:.1e}, residual <= {res:.1e}, Gibbs residual <= {gibbs:.1e} {problems:?}"),
    )
}

fn pressure_gap() -> Outcome {
    let mut smallest = f64::INFINITY;
    for r in 2..=5 {
        let ju = uniqueness_threshold(r).unwrap().value;
        for k in 1..=50 {
            let p = params(ju + 2.0 * ju * k as f64 / 50.0, r);
            smallest = smallest.min(f_pressure_at(t_plus(&p), &p) - f_pressure_at(0.0, &p));
        }
    }
    check(smallest > 1e-10, format!("min P_f(t+) - P_f(0) = {smallest:.3e}"))
}

fn theorem_b_inequalities() -> Outcome {
    let mut phi: f64 = f64::INFINITY;
    let mut rearr: f64 = f64::INFINITY;
    for r in 2..=100 {
        let ju = uniqueness_threshold(r).unwrap().value;
        let jr = reconstruction_threshold(r).unwrap().value;
        phi = phi.min(delta_plus_beats_fb(&params(2.0 * ju, r)).margin);
        phi = phi.min(delta_plus_beats_fb(&params(jr, r)).margin);
        rearr = rearr.min(rearranged_uniqueness_lhs(r) - 1.0);
    }
    let jr2 = reconstruction_threshold(2).unwrap().value;
    let dagger = (1..=10_000)
        .map(|k| dagger_margin(jr2 * k as f64 / 10_000.0))
        .fold(f64::INFINITY, f64::min);
    check(
        phi > 0.0 && dagger > 0.0 && rearr > 0.0,
        format!("min φ margin = {phi:.3e}, min (†) margin = {dagger:.3e}, min rearranged margin = {rearr:.3e}"),
    )
}

fn constant_search() -> Outcome {
    let ranks: Vec<usize> = (2..=50).collect();
    let found = minimal_constant_search(&ranks, 1e-10).unwrap();
    let big = minimal_constant_search(&[10_000], 1e-10).unwrap().per_rank[0].c;
    check(
        (1.55..=1.75).contains(&found.sup) && big <= 1.45,
        format!("sup c = {:.6} at r = {}, c(10^4) = {big:.6}", found.sup, found.argsup),
    )
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    // Heap's algorithm
    let mut a: Vec<u32> = (0..n as u32).collect();
    let mut c = vec![0usize; n];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Average over all pairs of permutations of the number of spin vectors whose
/// pair frequencies are within TV `eps` of the edge law, computed directly.
fn brute_force_mean(n: usize, chain: &IsingChain, eps: f64) -> f64 {
    let m = chain.edge_marginal();
    let perms = permutations(n);
    let mut total = 0u64;
    for p0 in &perms {
        for p1 in &perms {
            for bits in 0u32..(1 << n) {
                let spin = |v: usize| (bits >> v & 1) as usize;
                let good = [p0, p1].iter().all(|p| {
                    let mut freq = [[0.0; 2]; 2];
                    for v in 0..n {
                        freq[spin(v)][spin(p[v] as usize)] += 1.0 / n as f64;
                    }
                    let tv: f64 = (0..2)
                        .flat_map(|a| (0..2).map(move |b| (a, b)))
                        .map(|(a, b)| (freq[a][b] - m[a][b]).abs())
                        .sum::<f64>()
                        * 0.5;
                    tv <= eps
                });
                total += good as u64;
            }
        }
    }
    total as f64 / (perms.len() * perms.len()) as f64
}

fn annealed_exactness() -> Outcome {
    let p9 = params(0.9, 2);
    let settings = [
        (params(0.5, 2), 0.0, 0.31),
        (params(0.3, 2), 0.7, 0.27),
        (p9, t_plus(&p9), 0.37),
    ];
    let mut worst: f64 = 0.0;
    let mut smallest_mean = f64::INFINITY;
    for n in 3..=5 {
        for (p, t, eps) in &settings {
            let chain = build_mu_t(*t, p);
            let exact = annealed_count_exact(n, 2, &chain, *eps).unwrap().exp();
            let brute = brute_force_mean(n, &chain, *eps);
            smallest_mean = smallest_mean.min(brute);
            worst = worst.max((exact - brute).abs() / brute);
        }
    }
    check(
        worst <= 1e-12 && smallest_mean > 0.0,
        format!("max relative error = {worst:.3e} (smallest E|Ω| = {smallest_mean:.4})"),
    )
}

fn annealed_asymptotics() -> Outcome {
    let p = params(0.5, 2);
    let n = 2000;
    let mut worst: f64 = 0.0;
    let mut detail = Vec::new();
    for t in [0.0, t_plus(&p)] {
        let chain = build_mu_t(t, &p);
        let eps = nearest_profile_distance(n, &chain).unwrap() + 2.0 / n as f64;
        let rate = annealed_count_exact(n, 2, &chain, eps).unwrap() / n as f64;
        let gap = (rate - f_invariant(&chain)).abs();
        worst = worst.max(gap);
        detail.push(format!("t={t:.4}: |rate - f| = {gap:.4e}"));
    }
    check(worst <= 0.05, detail.join(", "))
}

fn exact_partition_function() -> Outcome {
    let mut rng = stream_rng(2024, 0);
    let mut problems = Vec::new();
    for r in 1..=4 {
        let one = sofic_pressure::sofic::sample_hom(1, r, &mut rng).unwrap();
        let j = 0.7;
        let lz = partition_function_exact(&one, j).unwrap();
        let expect = std::f64::consts::LN_2 + j * r as f64;
        if (lz - expect).abs() > 1e-15 * expect {
            problems.push(format!("n=1 r={r}: {lz} vs {expect}"));
        }
    }
    for n in [1, 5, 12, 20] {
        let s = sofic_pressure::sofic::sample_hom(n, 2, &mut rng).unwrap();
        let lz = partition_function_exact(&s, 0.0).unwrap();
        let expect = n as f64 * std::f64::consts::LN_2;
        if (lz - expect).abs() > 1e-14 * expect {
            problems.push(format!("J=0 n={n}: {lz} vs {expect}"));
        }
    }
    let mut worst: f64 = 0.0;
    for seed in 0..5 {
        let mut pick = stream_rng(seed, 7);
        let all = permutations(3);
        let chosen = (0..2).map(|_| all[pick.random_range(0..all.len())].clone()).collect();
        let s = SoficMap::new(3, chosen).unwrap();
        let j = 0.45;
        let mut z: f64 = 0.0;
        for bits in 0u32..8 {
            let x = |v: usize| if bits >> v & 1 == 1 { 1.0 } else { -1.0 };
            let mut bonds: f64 = 0.0;
            for p in s.perms() {
                for v in 0..3 {
                    bonds += x(v) * x(p[v] as usize);
                }
            }
            z += (j * bonds).exp();
        }
        let lz = partition_function_exact(&s, j).unwrap();
        worst = worst.max((lz - z.ln()).abs() / z.ln().abs());
    }
    check(
        problems.is_empty() && worst <= 1e-12,
        format!("n=3 max relative error = {worst:.3e} {problems:?}"),
    )
}

fn phase_coexistence() -> Outcome {
    let rows = coexistence_weight(&[8, 12, 16, 20], 2, 0.5, 0.1, 100, 20240601).unwrap();
    let decreasing = rows.windows(2).all(|w| w[1].mean < w[0].mean);
    let (first, last) = (&rows[0], &rows[rows.len() - 1]);
    let z = (first.mean - last.mean) / (first.std_error.powi(2) + last.std_error.powi(2)).sqrt();
    let means: Vec<String> = rows
        .iter()
        .map(|r| format!("n={}: {:.4e}±{:.1e}", r.n, r.mean, r.std_error))
        .collect();
    check(
        decreasing && z >= 3.0,
        format!("{}; trend z(8→20) = {z:.2}", means.join(", ")),
    )
}

fn nn_equivalence() -> Outcome {
    let mut rng = stream_rng(11, 0);
    let mut form_gap: f64 = 0.0;
    let mut homog_drop: f64 = 0.0;
    for i in 0..1000 {
        let q = [2, 3, 5][i % 3];
        let r = [2, 3][(i / 3) % 2];
        let inter = random_interaction(q, r, 1.5, &mut rng);
        let chain = random_chain(q, r, i % 2 == 0, &mut rng);
        let a = f_pressure_nn(&chain, &inter).unwrap();
        let b = f_pressure_nn_conditional(&chain, &inter).unwrap();
        form_gap = form_gap.max((a - b).abs());

        let hetero = random_chain(q, r, false, &mut rng);
        let before = f_pressure_nn(&hetero, &inter).unwrap();
        let after = f_pressure_nn(&homogenize(&hetero, &inter).unwrap(), &inter).unwrap();
        homog_drop = homog_drop.max(before - after);
    }

    let mut chain_gap: f64 = 0.0;
    for (j, r) in [(0.5, 2), (0.9, 3), (0.4, 4)] {
        let p = params(j, r);
        let expect = build_mu_t(t_plus(&p), &p);
        let sol = solve_markov_gibbs(&NNInteraction::ising(j, r).unwrap(), &[-1.0, 1.0], 1e-13).unwrap();
        let k = &sol.chain.kernels()[0];
        let m = sol.chain.marginal();
        let e = expect.transition();
        let em = expect.marginal();
        for a in 0..2 {
            chain_gap = chain_gap.max((m[a] - em[a]).abs());
            for b in 0..2 {
                chain_gap = chain_gap.max((k[a][b] - e[a][b]).abs());
            }
        }
    }
    check(
        form_gap <= 1e-12 && chain_gap <= 1e-8 && homog_drop <= 1e-12,
        format!(
            "max form gap = {form_gap:.2e}, BP chain error = {chain_gap:.2e}, max homogenize drop = {homog_drop:.2e}"
        ),
    )
}

fn run_cli(dir: &Path, args: &[&str]) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_sofic-pressure"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .status()
        .map_err(|e| e.to_string())?;
    if status.success() {
        Ok(())
    } else {
        Err(format!("{args:?} exited with {status}"))
    }
}

fn determinism() -> Outcome {
    let runs: [(&str, &[&str]); 2] = [
        ("simulate.csv", &["simulate", "--n", "500", "--r", "2", "--J", "0.8", "--steps", "200000", "--seed", "17", "--record-every", "500"]),
        ("coexistence.csv", &["coexistence", "--n", "8,12,16", "--r", "2", "--J", "0.5", "--samples", "40", "--seed", "17"]),
    ];
    let mut detail = Vec::new();
    for (file, args) in runs {
        let a = tempfile::tempdir().map_err(|e| e.to_string())?;
        let b = tempfile::tempdir().map_err(|e| e.to_string())?;
        run_cli(a.path(), args)?;
        run_cli(b.path(), args)?;
        let x = std::fs::read(a.path().join(file)).map_err(|e| e.to_string())?;
        let y = std::fs::read(b.path().join(file)).map_err(|e| e.to_string())?;
        if x != y || x.is_empty() {
            return Err(format!("{file} differs between runs"));
        }
        detail.push(format!("{file}: {} identical bytes", x.len()));
    }
    Ok(detail.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("second-derivative identity", second_derivative_identity),
        ("local minimum at t = 0", local_minimum),
        ("fixed-point structure", fixed_point_structure),
        ("pressure gap", pressure_gap),
        ("every-approximation inequalities", theorem_b_inequalities),
        ("minimal constant search", constant_search),
        ("annealed count exactness", annealed_exactness),
        ("annealed count asymptotics", annealed_asymptotics),
        ("exact partition function", exact_partition_function),
        ("phase coexistence trend", phase_coexistence),
        ("nearest-neighbor equivalence", nn_equivalence),
        ("CLI determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(f).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(d) => println!("PASS  criterion {:>2}  {name} [{secs:.2}s]: {d}", i + 1),
            Err(d) => {
                failed += 1;
                println!("FAIL  criterion {:>2}  {name} [{secs:.2}s]: {d}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
