use mubsdp::combinatorics::orbit_classes;
use mubsdp::combinatorics::set_partitions;
use mubsdp::model::ProjectorModel;
use mubsdp::reducer::Form;
use mubsdp::sdp::oracle::brute_force_phi_oracle;
use mubsdp::sdp::sdpa::{render_sdpa, DEFAULT_DIGITS};
use mubsdp::sdp::{
    assemble_instance, block_sizes, check_linear, stats, Level, Mode, Problem, Pruning, SdpError, SdpInstance, Verdict,
};
use mubsdp::specht::sk_multiplicities_with;
use mubsdp::Rational;
use num_traits::Zero;

fn min_eig(m: nalgebra::DMatrix<f64>) -> f64 {
    m.symmetric_eigen().eigenvalues.min()
}

fn model_values(inst: &SdpInstance, model: &ProjectorModel) -> Vec<f64> {
    inst.free_words().into_iter().map(|w| model.value(w)).collect()
}

#[test]
fn model_point_is_feasible_for_two_bases() {
    let model = ProjectorModel::standard_hadamard();
    for lvl in [Level::integer(1), Level::half(1), Level::integer(2)] {
        for pruning in [Pruning::Classes, Pruning::None, Pruning::Exact] {
            let pr = Problem::new(2, 2, lvl, Mode::Full).unwrap().with_pruning(pruning);
            let inst = assemble_instance(&pr, 8).unwrap();
            let y = model_values(&inst, &model);
            for b in &inst.blocks {
                assert!(b.is_symmetric());
                assert!(min_eig(b.evaluate(&y)) >= -1e-9, "{lvl} {pruning} {}", b.name);
            }
            let all = inst.expand(&y);
            for (g, w) in inst.variables.iter().enumerate() {
                assert!((all[g] - model.value(w)).abs() < 1e-10);
            }
            for row in &inst.constraints {
                let v = row.form.map(mubsdp::scalar::from_rational::<f64>).evaluate(&all);
                assert!(v.abs() < 1e-10);
            }
        }
    }
}

#[test]
fn elimination_preserves_solutions() {
    let pr = Problem::new(3, 3, Level::integer(3), Mode::Full).unwrap();
    let (_, rows, verdict) = check_linear(&pr, 8).unwrap();
    assert!(matches!(verdict, Verdict::Undetermined));
    let inst = assemble_instance(&pr, 8).unwrap();
    assert_eq!(inst.constraints.len(), rows.len());
    // Any rational values of the free variables, pushed through the substitution.
    let n = inst.variables.len();
    let mut all: Vec<Rational> = (0..n)
        .map(|i| Rational::new((i as i64 * 7 + 3).into(), 11.into()))
        .collect();
    for (&v, f) in &inst.substitution {
        let mut x = f.constant.clone();
        for (&u, c) in &f.coeffs {
            assert!(!inst.substitution.contains_key(&u));
            x += c * &all[u];
        }
        all[v] = x;
    }
    for row in &inst.constraints {
        assert!(row.form.evaluate(&all).is_zero());
    }
}

#[test]
fn infeasible_instance_short_circuits() {
    let pr = Problem::new(2, 4, Level::half(4), Mode::Full).unwrap();
    match assemble_instance(&pr, 9) {
        Err(SdpError::LinearInfeasible(cert)) => {
            assert_eq!(cert.n_linear, 8);
            assert_eq!(cert.variables.len(), 7);
            // The certificate's combination is the constant 1.
            let mut sum = Form::zero();
            for (row, c) in &cert.rows {
                sum.add_scaled(&row.form, c);
            }
            assert!(sum.is_constant() && !sum.constant.is_zero());
        }
        other => panic!("expected a linear certificate, got {:?}", other.map(|i| i.free.len())),
    }
}

#[test]
fn bases_only_half_level() {
    let pr = Problem::new(2, 4, Level::half(4), Mode::BasesOnly).unwrap();
    let s = stats(&pr, 9).unwrap();
    assert_eq!((s.size, s.n_vars, s.n_linear), (256, 5, 0));
    assert!(matches!(s.verdict, Verdict::Undetermined));
    let exact = assemble_instance(&pr.with_pruning(Pruning::Exact), 9).unwrap();
    assert_eq!(exact.free.len(), 5);
    assert_eq!(exact.block_sizes(), vec![9, 15, 7]);
}

#[test]
fn sum_of_squares_counts_orbits() {
    for d in 2..=3 {
        for k in 2..=3 {
            for t in 1..=2 {
                let pr = Problem::new(d, k, Level::integer(t), Mode::Full).unwrap();
                let sq: usize = block_sizes(&pr, false).iter().map(|(_, m)| m * m).sum();
                assert_eq!(sq, orbit_classes(2 * t, k, d).len());
            }
        }
    }
    for k in 2..=4 {
        for t in 1..=3 {
            let total: usize = sk_multiplicities_with(k, true, &set_partitions(t + 1, k))
                .iter()
                .map(|(l, m)| m * mubsdp::combinatorics::hook_length_count(l) as usize)
                .sum();
            assert_eq!(total, k.pow(t as u32));
        }
    }
}

#[test]
fn oracle_on_half_level() {
    let pr = Problem::new(2, 2, Level::half(2), Mode::Full).unwrap();
    assert!(brute_force_phi_oracle(&pr, 5, 1e-8, 3).passed());
    let pr = Problem::new(2, 3, Level::integer(2), Mode::BasesOnly).unwrap();
    assert!(brute_force_phi_oracle(&pr, 5, 1e-8, 3).passed());
    let pr = Problem::new(2, 3, Level::half(2), Mode::BasesOnly).unwrap();
    assert!(brute_force_phi_oracle(&pr, 5, 1e-8, 3).passed());
}

#[test]
fn export_is_deterministic() {
    let pr = Problem::new(2, 4, Level::half(2), Mode::BasesOnly).unwrap();
    let a = render_sdpa(&assemble_instance(&pr, 5).unwrap(), DEFAULT_DIGITS);
    let b = render_sdpa(&assemble_instance(&pr, 5).unwrap(), DEFAULT_DIGITS);
    assert_eq!(a, b);
}
