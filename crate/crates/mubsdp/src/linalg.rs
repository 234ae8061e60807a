//! Affine linear forms and sparse row elimination over any [`Scalar`].

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::Scalar;

/// `constant + Σ coeffs[v] · y_v` over variable indices `v`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearForm<S: Scalar> {
    pub constant: S,
    pub coeffs: BTreeMap<usize, S>,
}

impl<S: Scalar> Default for LinearForm<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> LinearForm<S> {
    pub fn zero() -> Self {
        LinearForm {
            constant: S::zero(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        LinearForm {
            constant: c,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn variable(v: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(v, S::one());
        LinearForm {
            constant: S::zero(),
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_negligible() && self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_negligible() {
            return;
        }
        self.constant = self.constant.clone() + other.constant.clone() * c.clone();
        for (v, a) in &other.coeffs {
            let e = self.coeffs.entry(*v).or_insert_with(S::zero);
            *e = e.clone() + a.clone() * c.clone();
            if e.is_negligible() {
                self.coeffs.remove(v);
            }
        }
        if self.constant.is_negligible() {
            self.constant = S::zero();
        }
    }

    pub fn scaled(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn evaluate(&self, values: &[S]) -> S {
        let mut acc = self.constant.clone();
        for (v, a) in &self.coeffs {
            acc = acc + a.clone() * values[*v].clone();
        }
        acc
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> LinearForm<T> {
        LinearForm {
            constant: f(&self.constant),
            coeffs: self.coeffs.iter().map(|(v, a)| (*v, f(a))).collect(),
        }
    }

    /// Replaces variables by forms; variables not in `subst` are kept.
    pub fn substitute(&self, subst: &BTreeMap<usize, LinearForm<S>>) -> Self {
        let mut out = Self::constant(self.constant.clone());
        for (v, a) in &self.coeffs {
            match subst.get(v) {
                Some(f) => out.add_scaled(f, a),
                None => out.add_scaled(&Self::variable(*v), a),
            }
        }
        out
    }

    /// Renames variable indices.
    pub fn reindex(&self, map: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::constant(self.constant.clone());
        for (v, a) in &self.coeffs {
            out.add_scaled(&Self::variable(map(*v)), a);
        }
        out
    }
}

impl<S: Scalar> fmt::Display for LinearForm<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        if !self.constant.is_negligible() || self.coeffs.is_empty() {
            write!(f, "{}", self.constant)?;
            first = false;
        }
        for (v, a) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.is_one() {
                write!(f, "y{v}")?;
            } else {
                write!(f, "({a})*y{v}")?;
            }
        }
        Ok(())
    }
}

/// Incremental echelon basis of sparse rows keyed by `K`.
///
/// Each stored row's pivot is its largest key, so reducing keys in descending
/// order never reintroduces an eliminated pivot.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone, S: Scalar> {
    rows: BTreeMap<K, BTreeMap<K, S>>,
}

impl<K: Ord + Clone, S: Scalar> Default for Echelon<K, S> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> Echelon<K, S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored pivots.
    pub fn reduce(&self, mut row: BTreeMap<K, S>) -> BTreeMap<K, S> {
        row.retain(|_, v| !v.is_negligible());
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => row.keys().next_back().cloned(),
                Some(c) => row.range(..c.clone()).next_back().map(|(k, _)| k.clone()),
            };
            let Some(key) = next else { break };
            if let Some(pivot_row) = self.rows.get(&key) {
                let factor = row[&key].clone() / pivot_row[&key].clone();
                for (k, v) in pivot_row {
                    let e = row.entry(k.clone()).or_insert_with(S::zero);
                    *e = e.clone() - factor.clone() * v.clone();
                    if e.is_negligible() {
                        row.remove(k);
                    }
                }
                row.remove(&key);
            }
            cursor = Some(key);
        }
        row
    }

    /// Adds `row` if independent; returns the reduced row when it was added.
    pub fn insert(&mut self, row: BTreeMap<K, S>) -> Option<BTreeMap<K, S>> {
        let reduced = self.reduce(row);
        let pivot = reduced.keys().next_back().cloned()?;
        self.rows.insert(pivot, reduced.clone());
        Some(reduced)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&K, &BTreeMap<K, S>)> {
        self.rows.iter()
    }
}

/// Rank of a dense matrix, given as rows.
pub fn rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut ech: Echelon<usize, S> = Echelon::new();
    for r in rows {
        let m: BTreeMap<usize, S> = r
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_negligible())
            .map(|(i, v)| (i, v.clone()))
            .collect();
        ech.insert(m);
    }
    ech.rank()
}

/// Key in a constraint row: the constant term sorts below every variable.
pub type FormKey = Option<usize>;

/// Views a form as a sparse row with the constant under key `None`.
pub fn form_to_row<S: Scalar>(f: &LinearForm<S>) -> BTreeMap<FormKey, S> {
    let mut row: BTreeMap<FormKey, S> = f.coeffs.iter().map(|(v, a)| (Some(*v), a.clone())).collect();
    if !f.constant.is_negligible() {
        row.insert(None, f.constant.clone());
    }
    row
}

pub fn row_to_form<S: Scalar>(row: &BTreeMap<FormKey, S>) -> LinearForm<S> {
    let mut f = LinearForm::zero();
    for (k, v) in row {
        match k {
            None => f.constant = v.clone(),
            Some(var) => {
                f.coeffs.insert(*var, v.clone());
            }
        }
    }
    f
}

/// Normalizes a row so its pivot coefficient is one.
pub fn monic<S: Scalar>(row: &BTreeMap<FormKey, S>) -> BTreeMap<FormKey, S> {
    let Some((_, lead)) = row.iter().next_back() else {
        return row.clone();
    };
    let lead = lead.clone();
    row.iter().map(|(k, v)| (*k, v.clone() / lead.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    #[test]
    fn forms_add_and_substitute() {
        let mut f: LinearForm<BigRational> = LinearForm::constant(rat(1, 2));
        f.add_scaled(&LinearForm::variable(3), &rat(2, 1));
        f.add_scaled(&LinearForm::variable(3), &rat(-2, 1));
        assert!(f.is_constant());
        let mut subst = BTreeMap::new();
        subst.insert(0, LinearForm::constant(rat(3, 1)));
        let g = LinearForm::variable(0).scaled(&rat(2, 1));
        assert_eq!(g.substitute(&subst), LinearForm::constant(rat(6, 1)));
    }

    #[test]
    fn echelon_rank() {
        let rows = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ];
        assert_eq!(rank(&rows), 2);
        let frows: Vec<Vec<f64>> = vec![vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0], vec![0.0, 1.0, 1.0]];
        assert_eq!(rank(&frows), 2);
    }

    #[test]
    fn constant_row_signals_contradiction() {
        let mut ech: Echelon<FormKey, BigRational> = Echelon::new();
        let mut a = LinearForm::variable(0);
        a.constant = rat(-1, 1);
        ech.insert(form_to_row(&a));
        let b: LinearForm<BigRational> = LinearForm::variable(0);
        let r = ech.insert(form_to_row(&b)).unwrap();
        assert_eq!(r.keys().collect::<Vec<_>>(), vec![&None]);
    }
}
