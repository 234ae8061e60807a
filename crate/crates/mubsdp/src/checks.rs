//! The invariant suite behind `mubsdp selftest`.

use crate::combinatorics::{bell_number, hook_length_count, orbit_classes, refinement_pair_count};
use crate::model::ProjectorModel;
use crate::reducer::{for_each_extension, ideal_sweep_constraints, vanishes, Reducer};
use crate::scalar::{from_rational, rat};
use crate::sdp::oracle::{brute_force_phi_oracle, phi_oracle_with};
use crate::sdp::{assemble_instance, Level, Mode, Problem, Pruning, RepBlock};
use crate::specht::sk_representative_set;
use crate::word::word_from_pairs;
use crate::wreath::{
    total_dimension_check, wreath_multiplicities, wreath_representative_set, wreath_representative_set_corrupted,
};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check {
        name: name.to_string(),
        passed,
        detail,
    }
}

/// Options for [`run_selftest`].
#[derive(Clone, Copy, Debug, Default)]
pub struct SelftestOptions {
    /// Feed the Φ oracle a set built with the wrong `ν` order; the oracle must fail.
    pub corrupt_nu: bool,
}

pub fn bell_identities() -> Check {
    let mut detail = Vec::new();
    let mut ok = true;
    for (k, t) in [(2, 1), (4, 2), (6, 3)] {
        let s: usize = sk_representative_set(k, t).iter().map(|(_, m)| m.len().pow(2)).sum();
        ok &= s as u128 == bell_number(2 * t);
        detail.push(format!("k={k},t={t}:{s}"));
    }
    check("bell", ok, detail.join(" "))
}

pub fn a000258_identities() -> Check {
    let mut detail = Vec::new();
    let mut ok = true;
    for (d, k, t) in [(2, 2, 1), (4, 4, 2)] {
        let s: usize = wreath_representative_set(d, k, t)
            .iter()
            .map(|(_, m)| m.len().pow(2))
            .sum();
        ok &= s as u128 == refinement_pair_count(2 * t);
        detail.push(format!("d={d},k={k},t={t}:{s}"));
    }
    check("a000258", ok, detail.join(" "))
}

pub fn dimension_identities() -> Check {
    let mut ok = true;
    let mut n = 0;
    for k in 2..=4 {
        for t in 1..=4 {
            let total: u128 = sk_representative_set(k, t)
                .iter()
                .map(|(l, m)| m.len() as u128 * hook_length_count(l))
                .sum();
            ok &= total == (k as u128).pow(t as u32);
            n += 1;
        }
    }
    for d in 2..=3 {
        for k in 2..=3 {
            for t in 1..=2 {
                ok &= total_dimension_check(&wreath_multiplicities(d, k, &orbit_classes(t, k, d)), d, k, t).is_ok();
                n += 1;
            }
        }
    }
    check("dimensions", ok, format!("{n} cases"))
}

pub fn phi_oracle(opts: SelftestOptions) -> Check {
    let mut ok = true;
    let mut n = 0;
    for d in 2..=3 {
        for k in 2..=3 {
            for lvl in [Level::integer(1), Level::half(1), Level::integer(2)] {
                let pr = Problem::new(d, k, lvl, Mode::Full).expect("valid");
                let report = if opts.corrupt_nu && !lvl.is_half() {
                    let blocks: Vec<RepBlock> = wreath_representative_set_corrupted(d, k, lvl.floor())
                        .into_iter()
                        .map(|(l, m)| RepBlock {
                            name: l.to_string(),
                            members: m.into_iter().map(|(_, u)| (String::new(), u)).collect(),
                        })
                        .collect();
                    phi_oracle_with(&pr, &blocks, 20, 1e-8, 11)
                } else {
                    brute_force_phi_oracle(&pr, 20, 1e-8, 11)
                };
                ok &= report.passed();
                n += 1;
            }
        }
    }
    check("phi-oracle", ok, format!("{n} cases"))
}

pub fn reducer_ground_truth() -> Check {
    let mut ok = true;
    for d in [2usize, 3, 6] {
        let mut r = Reducer::new(d, 3);
        let f = r.reduce(&word_from_pairs(&[(1, 1), (1, 2), (1, 3)])).unwrap();
        ok &= f.is_constant() && f.constant == rat(1, (d * d) as i64);
    }
    check("reducer-values", ok, "L(x11 x12 x13) = 1/d^2".into())
}

pub fn numeric_model() -> Check {
    let model = ProjectorModel::standard_hadamard();
    let mut r = Reducer::new(2, 2);
    let mut worst = 0.0f64;
    let mut words = Vec::new();
    for n in 0..=8 {
        for_each_extension(&[], n, 2, 2, &mut |w| words.push(w.to_vec()));
    }
    let mut ok = true;
    for w in &words {
        match r.reduce(w) {
            Ok(f) => {
                let vals = model.values(r.variables());
                let got = f.map(from_rational::<f64>).evaluate(&vals);
                worst = worst.max((got - model.value(w)).abs());
            }
            Err(_) => ok = false,
        }
    }
    let rows = ideal_sweep_constraints(&mut r, 8).unwrap_or_default();
    let vals = model.values(r.variables());
    ok &= rows.iter().all(|row| vanishes(&row.form, &vals, 1e-10));
    for lvl in [Level::integer(1), Level::half(1), Level::integer(2)] {
        let pr = Problem::new(2, 2, lvl, Mode::Full)
            .expect("valid")
            .with_pruning(Pruning::None);
        match assemble_instance(&pr, 8) {
            Ok(inst) => {
                let y: Vec<f64> = inst.free_words().into_iter().map(|w| model.value(w)).collect();
                for b in &inst.blocks {
                    let m = b.evaluate(&y);
                    ok &= m.symmetric_eigen().eigenvalues.min() >= -1e-9;
                }
            }
            Err(_) => ok = false,
        }
    }
    ok &= worst < 1e-10;
    check(
        "numeric-model",
        ok,
        format!("{} words, max deviation {worst:.1e}", words.len()),
    )
}

pub fn run_selftest(opts: SelftestOptions) -> Vec<Check> {
    vec![
        bell_identities(),
        a000258_identities(),
        dimension_identities(),
        phi_oracle(opts),
        reducer_ground_truth(),
        numeric_model(),
    ]
}
