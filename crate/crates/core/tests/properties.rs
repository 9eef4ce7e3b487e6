use proptest::prelude::*;
use proptest::strategy::ValueTree;

use psibound::field::FieldProfile;
use psibound::oracle::{psi_quadratic, PsiMethod, QuadraticField, VonMangoldt};
use psibound::tables::{reference_cmax, MinDiscTable};
use psibound::theorems::{crossover, crossover_grid, optimized_bound, BoundFormula};
use psibound::zero_estimates::{general_bound, GeneralBoundInput};

/// A field profile with a plausible signature and `root discriminant >= 1`.
fn profile() -> impl Strategy<Value = FieldProfile> {
    (1u32..40, 0.0f64..8.0, any::<u32>()).prop_map(|(n, log_root, s)| {
        let r2 = if n == 1 { 0 } else { s % (n / 2 + 1) };
        FieldProfile::from_log_disc(n, n as f64 * log_root, n - 2 * r2, r2).expect("valid profile")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bounds_nonnegative(p in profile(), log_x in 3f64.ln()..60.0) {
        let x = log_x.exp();
        for f in BoundFormula::ALL {
            if f.needs_parameters() || x < f.validity_min_x() {
                continue;
            }
            let v = f.evaluate(&p, x).unwrap().value;
            prop_assert!(v >= 0.0, "{f} {p} x = {x}: {v}");
        }
        let g = general_bound(&GeneralBoundInput::new(p, x, 2.0 * std::f64::consts::PI, 1.0).unwrap()).unwrap();
        prop_assert!(g.value >= 0.0);
    }

    #[test]
    fn sqrt_x_terms_double_under_4x(p in profile(), log_x in 3f64.ln()..40.0, t in 5.0f64..1e6, k in 0.1f64..2.0) {
        let x = log_x.exp();
        let a = general_bound(&GeneralBoundInput::new(p, x, t, k).unwrap()).unwrap().terms;
        let b = general_bound(&GeneralBoundInput::new(p, 4.0 * x, t, k).unwrap()).unwrap().terms;
        prop_assert!((b.disc - 2.0 * a.disc).abs() <= 1e-12 * b.disc.abs().max(1e-300));
        prop_assert!((b.degree - 2.0 * a.degree).abs() <= 1e-12 * b.degree.abs().max(1e-300));
    }
}

#[test]
fn crossover_holds_on_random_grid_points() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let cases = [
        (FieldProfile::new(2, 4.9535, 2, 0).unwrap(), BoundFormula::PriorX2000),
        (FieldProfile::new(6, 9747.0, 0, 3).unwrap(), BoundFormula::PriorX100),
        (FieldProfile::new(3, 23.0, 1, 1).unwrap(), BoundFormula::PriorX2000),
    ];
    for (p, rival) in cases {
        let row = crossover(&p, rival, 10_000_000).unwrap();
        let grid: Vec<u64> = crossover_grid(row.crossover_x, 10_000_000);
        for _ in 0..100 {
            let i = (0..grid.len()).new_tree(&mut runner).unwrap().current();
            let x = grid[i] as f64;
            let ours = optimized_bound(&p, x).unwrap().value;
            let theirs = rival.evaluate(&p, x).unwrap().value;
            assert!(ours <= theirs, "{p} vs {rival} at x = {x}: {ours} > {theirs}");
        }
    }
}

#[test]
fn psi_steps_are_prime_power_sized() {
    let sieve = VonMangoldt::new(20_000).unwrap();
    for d in [-3, -4, 5, 8, -7, 12, 13] {
        let k = QuadraticField::new(d).unwrap();
        let mut prev = 0.0;
        for n in 2..=20_000u64 {
            let x = n as f64;
            let v = psi_quadratic(&k, &sieve, x, PsiMethod::DirectIdeals).unwrap().value;
            let step = v - prev;
            assert!(step >= -1e-9, "D = {d}: psi decreases at {n}");
            assert!(
                step.abs() < 1e-9 || (step >= 2f64.ln() - 1e-9 && step <= 2.0 * x.ln() + 1e-9),
                "D = {d}: jump {step} at {n}"
            );
            prev = v;
        }
    }
}

#[test]
fn scanned_cmax_never_exceeds_degree_three_row() {
    let bound = psibound::Constants::standard().cmax_degree3;
    for row in reference_cmax(&MinDiscTable::embedded()) {
        let c = row.computed.expect("scan succeeds");
        assert!(c.c_max <= bound, "{}: {}", row.label, c.c_max);
    }
}
