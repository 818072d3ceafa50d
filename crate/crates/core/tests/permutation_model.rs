use proptest::prelude::*;
use sofic_pressure::ising::{build_mu_t, IsingParams};
use sofic_pressure::sofic::{
    annealed_count_exact, count_good_models, energy_census, partition_function_exact, sample_hom, sample_hom_seeded,
    stream_rng, total_energy, SpinConfig, TypeProfile,
};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn perm_index(p: &[u32]) -> usize {
    // Lehmer code
    let mut idx = 0;
    for i in 0..p.len() {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        idx = idx * (p.len() - i) + smaller;
    }
    idx
}

#[test]
fn sampled_permutations_are_uniform_on_s4() {
    let mut rng = stream_rng(77, 0);
    let samples = 100_000;
    let mut cells = [[0u64; 24]; 2];
    for _ in 0..samples {
        let s = sample_hom(4, 2, &mut rng).unwrap();
        for (i, p) in s.perms().iter().enumerate() {
            cells[i][perm_index(p)] += 1;
        }
    }
    let expect = samples as f64 / 24.0;
    let chi = ChiSquared::new(23.0).unwrap();
    for row in cells {
        let stat: f64 = row.iter().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
        let p_value = 1.0 - chi.cdf(stat);
        assert!(p_value > 0.001, "chi-square {stat}, p = {p_value}");
    }
}

#[test]
fn partition_function_is_flip_symmetric() {
    let s = sample_hom_seeded(9, 3, 21).unwrap();
    let c = energy_census(&s).unwrap();
    for (n_plus, row) in c.counts.iter().enumerate() {
        assert_eq!(row, &c.counts[9 - n_plus]);
    }
    assert_eq!(c.counts.iter().flatten().sum::<u64>(), 1 << 9);
}

#[test]
fn log_z_per_site_bounds() {
    for (n, r, j) in [(14, 2, 0.3), (16, 3, 0.8), (18, 2, 1.5)] {
        let s = sample_hom_seeded(n, r, 5).unwrap();
        let per_site = partition_function_exact(&s, j).unwrap() / n as f64;
        let jr = j * r as f64;
        assert!(per_site >= jr - 1e-12 && per_site <= std::f64::consts::LN_2 + jr + 1e-12);
    }
}

#[test]
fn whole_ball_counts_every_configuration() {
    let chain = build_mu_t(0.5, &IsingParams::new(0.7, 3).unwrap());
    let s = sample_hom_seeded(11, 3, 2).unwrap();
    assert_eq!(count_good_models(&s, &chain, 1.0).unwrap(), 1 << 11);
    let a = annealed_count_exact(11, 3, &chain, 1.0).unwrap();
    assert!((a - 11.0 * std::f64::consts::LN_2).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn profiles_and_energy_are_consistent(n in 1usize..40, r in 1usize..4, seed in any::<u64>(), bits in any::<u64>(), j in 0.0f64..2.0) {
        let s = sample_hom_seeded(n, r, seed).unwrap();
        let x = SpinConfig::from_bits(n, bits);
        let p = TypeProfile::of(&s, &x).unwrap();
        prop_assert!(p.is_consistent());
        // U = -J Σ_i (a_{++} + a_{--} - a_{+-} - a_{-+})
        let bonds: i64 = p.pairs.iter().map(|c| c[0] as i64 + c[3] as i64 - c[1] as i64 - c[2] as i64).sum();
        let u = total_energy(&s, &x, j).unwrap();
        prop_assert!((u + j * bonds as f64).abs() < 1e-12);
        prop_assert!(u.abs() <= j * (r * n) as f64 + 1e-12);
        prop_assert_eq!(total_energy(&s, &x.flipped(), j).unwrap(), u);
    }

    #[test]
    fn good_model_counts_are_flip_symmetric(seed in any::<u64>(), t in -2.0f64..2.0, eps in 0.05f64..0.5) {
        let s = sample_hom_seeded(9, 2, seed).unwrap();
        let p = IsingParams::new(0.6, 2).unwrap();
        let a = count_good_models(&s, &build_mu_t(t, &p), eps).unwrap();
        let b = count_good_models(&s, &build_mu_t(-t, &p), eps).unwrap();
        prop_assert_eq!(a, b);
    }
}
