use mubsdp::model::ProjectorModel;
use mubsdp::reducer::{
    detect_linear_infeasibility, discover_variables, for_each_extension, ideal_sweep_constraints, vanishes, Reducer,
};
use mubsdp::word::{Letter, Word};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn word_strategy(d: usize, k: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..d as u8, 0..k as u8), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(e, b)| Letter::new(e, b)).collect())
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<u8>> {
    Just((0..n as u8).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reduction_is_invariant_under_the_group(
        (d, k, w, basis_perm, elem_perms, shift, rev) in (2usize..=3, 2usize..=3).prop_flat_map(|(d, k)| (
            Just(d),
            Just(k),
            word_strategy(d, k, 5),
            perm_strategy(k),
            prop::collection::vec(perm_strategy(d), k),
            0usize..5,
            any::<bool>(),
        ))
    ) {
        let mut r = Reducer::new(d, k);
        let mut moved: Word = w
            .iter()
            .map(|l| Letter::new(elem_perms[l.basis as usize][l.elem as usize], basis_perm[l.basis as usize]))
            .collect();
        if !moved.is_empty() {
            let s = shift % moved.len();
            moved.rotate_left(s);
        }
        if rev {
            moved.reverse();
        }
        prop_assert_eq!(r.reduce(&w).unwrap(), r.reduce(&moved).unwrap());
    }

    #[test]
    fn reduction_matches_two_basis_model(w in word_strategy(2, 2, 10)) {
        let model = ProjectorModel::standard_hadamard();
        let mut r = Reducer::new(2, 2);
        let f = r.reduce(&w).unwrap();
        let values = model.values(r.variables());
        let got = f.map(mubsdp::scalar::from_rational::<f64>).evaluate(&values);
        prop_assert!((got - model.value(&w)).abs() < 1e-10, "{} vs {}", got, model.value(&w));
    }
}

#[test]
fn every_short_word_matches_the_model() {
    let model = ProjectorModel::standard_hadamard();
    let mut r = Reducer::new(2, 2);
    for n in 0..=5 {
        let mut words = Vec::new();
        for_each_extension(&[], n, 2, 2, &mut |w| words.push(w.to_vec()));
        for w in words {
            let f = r.reduce(&w).unwrap();
            assert!(f.is_constant(), "degree {n} should not reach a variable");
            let got = mubsdp::scalar::from_rational::<f64>(&f.constant);
            assert!((got - model.value(&w)).abs() < 1e-10);
        }
    }
}

#[test]
fn sweep_rows_vanish_on_the_model() {
    let model = ProjectorModel::standard_hadamard();
    let mut r = Reducer::new(2, 2);
    let rows = ideal_sweep_constraints(&mut r, 10).unwrap();
    let values = model.values(r.variables());
    for row in &rows {
        assert!(vanishes(&row.form, &values, 1e-10), "{:?} {:?}", row.family, row.form);
    }
    assert!(!detect_linear_infeasibility(&rows).is_infeasible());
}

#[test]
fn variables_reduce_to_themselves() {
    for (d, k) in [(2, 3), (3, 3), (6, 4)] {
        let mut r = Reducer::new(d, k);
        for w in discover_variables(&mut r, 8).unwrap() {
            let f = r.reduce(&w).unwrap();
            assert!(f.constant.is_zero() && f.coeffs.len() == 1);
            let (&id, c) = f.coeffs.iter().next().unwrap();
            assert!(c.is_one());
            assert_eq!(r.variables()[id], w);
        }
    }
}
