//! Tabloids, polytabloids and the representative set for `S_k` acting on `[k]^t`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::combinatorics::{
    cartesian, integer_partitions, kostka, semistandard_tableaux, set_partitions, Partition, SetPartition, Tableau,
};
use crate::linalg::Echelon;
use crate::word::{Letter, Word};

/// Sparse exact vector indexed by `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVec<K: Ord> {
    pub terms: BTreeMap<K, BigRational>,
}

impl<K: Ord> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(key: K) -> Self {
        let mut v = Self::new();
        v.add(key, BigRational::one());
        v
    }

    pub fn add(&mut self, key: K, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dot(&self, other: &Self) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, a) in &self.terms {
            if let Some(b) = other.terms.get(k) {
                acc += a * b;
            }
        }
        acc
    }
}

/// A row-equivalence class of tableaux: each row sorted. Rows may be empty.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tabloid {
    pub rows: Vec<Vec<usize>>,
}

impl Tabloid {
    pub fn of_rows(mut rows: Vec<Vec<usize>>) -> Self {
        for r in rows.iter_mut() {
            r.sort_unstable();
        }
        Tabloid { rows }
    }
}

pub type TabloidVector = SparseVec<Tabloid>;
pub type WordVector = SparseVec<Word>;

/// Permutations of `0..n` with signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i32)>) {
        if cur.len() == n {
            let mut inv = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if cur[i] > cur[j] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Column stabilizer of a tableau with distinct entries `0..n`, as maps
/// `value -> value` with their signs.
pub fn column_stabilizer(t: &Tableau) -> Vec<(Vec<usize>, i32)> {
    let shape = t.shape();
    let n = shape.weight();
    let columns: Vec<Vec<usize>> = (0..shape.parts().first().copied().unwrap_or(0))
        .map(|c| (0..shape.column_len(c)).map(|r| t.rows[r][c]).collect())
        .collect();
    let per_column: Vec<Vec<(Vec<usize>, i32)>> = columns.iter().map(|c| permutations(c.len())).collect();
    let mut out = Vec::new();
    for choice in cartesian(&per_column.iter().map(Vec::len).collect::<Vec<_>>()) {
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1;
        for (c, &i) in choice.iter().enumerate() {
            let (p, s) = &per_column[c][i];
            sign *= s;
            for (a, &b) in p.iter().enumerate() {
                perm[columns[c][a]] = columns[c][b];
            }
        }
        out.push((perm, sign));
    }
    out
}

fn apply_to_tableau(perm: &[usize], t: &Tableau) -> Tableau {
    Tableau {
        rows: t.rows.iter().map(|r| r.iter().map(|&v| perm[v]).collect()).collect(),
    }
}

/// `e_t = Σ_{π ∈ C_t} sgn(π) π{t}`.
pub fn polytabloid(t: &Tableau) -> TabloidVector {
    let mut v = TabloidVector::new();
    for (perm, sign) in column_stabilizer(t) {
        let pt = apply_to_tableau(&perm, t);
        v.add(Tabloid::of_rows(pt.rows), BigRational::from_integer(sign.into()));
    }
    v
}

/// `τ' ∗ {t'}`: row `a` holds every value whose cell in `t'` carries entry `a` in `τ'`.
/// The result has `content_len` rows.
pub fn act_tableau_on_tabloid(tau: &Tableau, t: &Tableau, content_len: usize) -> Result<Tabloid, String> {
    if tau.shape() != t.shape() {
        return Err(format!("shape mismatch: {} vs {}", tau.shape(), t.shape()));
    }
    let mut rows = vec![Vec::new(); content_len];
    for (r, row) in tau.rows.iter().enumerate() {
        for (c, &a) in row.iter().enumerate() {
            if a >= content_len {
                return Err(format!("entry {} outside content of length {content_len}", a + 1));
            }
            rows[a].push(t.rows[r][c]);
        }
    }
    Ok(Tabloid::of_rows(rows))
}

/// Distinct tableaux obtained by permuting entries within rows.
pub fn row_equivalents(tau: &Tableau) -> Vec<Tableau> {
    fn distinct_perms(row: &[usize]) -> Vec<Vec<usize>> {
        let mut sorted = row.to_vec();
        sorted.sort_unstable();
        let mut out = Vec::new();
        fn rec(rem: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rem.is_empty() {
                out.push(cur.clone());
                return;
            }
            let mut last = None;
            for i in 0..rem.len() {
                if Some(rem[i]) == last {
                    continue;
                }
                last = Some(rem[i]);
                let v = rem.remove(i);
                cur.push(v);
                rec(rem, cur, out);
                cur.pop();
                rem.insert(i, v);
            }
        }
        rec(&mut sorted, &mut Vec::new(), &mut out);
        out
    }
    let options: Vec<Vec<Vec<usize>>> = tau.rows.iter().map(|r| distinct_perms(r)).collect();
    cartesian(&options.iter().map(Vec::len).collect::<Vec<_>>())
        .into_iter()
        .map(|idx| Tableau {
            rows: idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect(),
        })
        .collect()
}

/// `v_τ = Σ_{τ'∼τ} Σ_{c ∈ C_t} sgn(c) τ' ∗ c{t}` for the row-major tableau `t` of shape `λ`.
pub fn generator_vector(tau: &Tableau, lambda: &Partition, content: &[usize]) -> TabloidVector {
    debug_assert_eq!(&tau.shape(), lambda);
    let t = Tableau::canonical(lambda);
    let stab = column_stabilizer(&t);
    let mut v = TabloidVector::new();
    for tp in row_equivalents(tau) {
        for (perm, sign) in &stab {
            let ct = apply_to_tableau(perm, &t);
            let tab = act_tableau_on_tabloid(&tp, &ct, content.len()).expect("tableau content");
            v.add(tab, BigRational::from_integer((*sign).into()));
        }
    }
    v
}

/// Label of an `S_k` representative vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkLabel {
    pub p: SetPartition,
    pub tau: Tableau,
}

/// Content `(n - r, 1^r)` as a composition, keeping a leading zero.
pub fn hook_content(n: usize, r: usize) -> Vec<usize> {
    std::iter::once(n - r).chain(std::iter::repeat_n(1, r)).collect()
}

/// `φ^{-1}` for a hook-content tabloid over `labels`: part `i` receives the
/// single label in row `i + 1`. Returns labels per part.
pub fn parts_from_hook_tabloid(tab: &Tabloid, labels: &[usize]) -> Vec<usize> {
    tab.rows[1..].iter().map(|row| labels[row[0]]).collect()
}

/// One block per `λ ⊢ k`, each a list of labelled vectors `u_{τ,P}` over words
/// with basis letters `0..k` (all elements 0).
pub type SkRepSet = Vec<(Partition, Vec<(SkLabel, WordVector)>)>;

/// Representative set for `S_k` on `[k]^t`, blocks in descending lex order of `λ`.
pub fn sk_representative_set(k: usize, t: usize) -> SkRepSet {
    sk_representative_set_with(k, &set_partitions(t, k))
}

/// As [`sk_representative_set`], restricted to the given basis patterns.
pub fn sk_representative_set_with(k: usize, patterns: &[SetPartition]) -> SkRepSet {
    sk_build(k, false, patterns)
}

/// Half-level set for `S_{k-1}` on words `x_{1,1} w`: patterns are over all
/// `t + 1` positions, the part holding position 0 is pinned to basis 0.
pub fn sk_half_representative_set_with(k: usize, patterns: &[SetPartition]) -> SkRepSet {
    sk_build(k, true, patterns)
}

fn sk_build(k: usize, pinned: bool, patterns: &[SetPartition]) -> SkRepSet {
    let (n, off) = if pinned { (k - 1, 1) } else { (k, 0) };
    let mut blocks: BTreeMap<Partition, Vec<(SkLabel, WordVector)>> = BTreeMap::new();
    let labels: Vec<usize> = (off..k).collect();
    for p in patterns {
        let r = p.len() - off;
        if r > n {
            continue;
        }
        let content = hook_content(n, r);
        for lambda in integer_partitions(n) {
            for tau in semistandard_tableaux(&lambda, &content) {
                let tv = generator_vector(&tau, &lambda, &content);
                let mut u = WordVector::new();
                for (tab, c) in &tv.terms {
                    let assign = parts_from_hook_tabloid(tab, &labels);
                    let mut w = vec![Letter::new(0, 0); p.ground_size()];
                    for (i, part) in p.parts.iter().enumerate().skip(off) {
                        for &pos in part {
                            w[pos] = Letter::new(0, assign[i - off] as u8);
                        }
                    }
                    u.add(w, c.clone());
                }
                blocks
                    .entry(lambda.clone())
                    .or_default()
                    .push((SkLabel { p: p.clone(), tau }, u));
            }
        }
    }
    order_blocks(blocks, integer_partitions(n))
}

fn order_blocks<V>(mut blocks: BTreeMap<Partition, Vec<V>>, order: Vec<Partition>) -> Vec<(Partition, Vec<V>)> {
    order
        .into_iter()
        .filter_map(|l| blocks.remove(&l).map(|v| (l, v)))
        .collect()
}

/// Block multiplicities of [`sk_representative_set`] without building vectors.
pub fn sk_multiplicities(k: usize, t: usize) -> Vec<(Partition, usize)> {
    sk_multiplicities_with(k, false, &set_partitions(t, k))
}

/// Multiplicities for the given patterns; `pinned` selects the half-level variant.
pub fn sk_multiplicities_with(k: usize, pinned: bool, patterns: &[SetPartition]) -> Vec<(Partition, usize)> {
    let (n, off) = if pinned { (k - 1, 1) } else { (k, 0) };
    let mut out = Vec::new();
    for lambda in integer_partitions(n) {
        let m: usize = patterns
            .iter()
            .filter(|p| p.len() - off <= n)
            .map(|p| kostka(&lambda, &hook_content(n, p.len() - off)))
            .sum();
        if m > 0 {
            out.push((lambda, m));
        }
    }
    out
}

/// Rank of the span of polytabloids of `λ`: every bijective filling when `|λ| <= 5`,
/// otherwise the standard ones.
pub fn specht_dimension_rank(lambda: &Partition) -> usize {
    let n = lambda.weight();
    let fillings: Vec<Tableau> = if n <= 5 {
        permutations(n)
            .into_iter()
            .map(|(p, _)| {
                let mut it = p.into_iter();
                Tableau {
                    rows: lambda
                        .parts()
                        .iter()
                        .map(|&len| it.by_ref().take(len).collect())
                        .collect(),
                }
            })
            .collect()
    } else {
        semistandard_tableaux(lambda, &vec![1; n])
    };
    let mut index: BTreeMap<Tabloid, usize> = BTreeMap::new();
    let mut ech: Echelon<usize, BigRational> = Echelon::new();
    for t in fillings {
        let v = polytabloid(&t);
        let row = v
            .terms
            .into_iter()
            .map(|(tab, c)| {
                let next = index.len();
                (*index.entry(tab).or_insert(next), c)
            })
            .collect();
        ech.insert(row);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{bell_number, hook_length_count};

    fn tab(rows: &[&[usize]]) -> Tableau {
        Tableau {
            rows: rows.iter().map(|r| r.iter().map(|v| v - 1).collect()).collect(),
        }
    }

    #[test]
    fn stabilizer_sizes() {
        let t = Tableau::canonical(&Partition(vec![3, 2]));
        let s = column_stabilizer(&t);
        assert_eq!(s.len(), 4);
        assert!(s.iter().all(|(p, _)| p[2] == 2));
        assert_eq!(column_stabilizer(&Tableau::canonical(&Partition(vec![4]))).len(), 1);
        let s3 = column_stabilizer(&Tableau::canonical(&Partition(vec![1, 1, 1])));
        assert_eq!(s3.len(), 6);
        assert_eq!(s3.iter().map(|(_, s)| s).sum::<i32>(), 0);
    }

    #[test]
    fn polytabloid_examples() {
        assert_eq!(polytabloid(&Tableau::canonical(&Partition(vec![3]))).len(), 1);
        let e = polytabloid(&Tableau::canonical(&Partition(vec![1, 1])));
        assert_eq!(e.len(), 2);
        assert_eq!(e.terms[&Tabloid::of_rows(vec![vec![0], vec![1]])], BigRational::one());
        assert_eq!(e.terms[&Tabloid::of_rows(vec![vec![1], vec![0]])], -BigRational::one());
        assert_eq!(polytabloid(&Tableau::canonical(&Partition(vec![2, 1]))).len(), 2);
    }

    #[test]
    fn acting_with_a_tableau() {
        let out = act_tableau_on_tabloid(&tab(&[&[1, 1], &[2]]), &tab(&[&[1, 2], &[3]]), 2).unwrap();
        assert_eq!(out, Tabloid::of_rows(vec![vec![0, 1], vec![2]]));
        let all = act_tableau_on_tabloid(&tab(&[&[1, 1, 1]]), &tab(&[&[1, 2, 3]]), 1).unwrap();
        assert_eq!(all.rows, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn generator_for_hook_content() {
        let k = 4;
        let lambda = Partition(vec![k]);
        let content = hook_content(k, 1);
        let tau = semistandard_tableaux(&lambda, &content).pop().unwrap();
        let v = generator_vector(&tau, &lambda, &content);
        assert_eq!(v.len(), k);
        assert!(v.terms.values().all(|c| c.is_one()));
    }

    #[test]
    fn generators_are_independent() {
        for k in 2..=5 {
            for r in 0..=k {
                let content = hook_content(k, r);
                for lambda in integer_partitions(k) {
                    let vs: Vec<TabloidVector> = semistandard_tableaux(&lambda, &content)
                        .iter()
                        .map(|t| generator_vector(t, &lambda, &content))
                        .collect();
                    let mut index: BTreeMap<Tabloid, usize> = BTreeMap::new();
                    let mut ech: Echelon<usize, BigRational> = Echelon::new();
                    for v in &vs {
                        assert!(!v.is_zero());
                        let row = v
                            .terms
                            .iter()
                            .map(|(t, c)| {
                                let n = index.len();
                                (*index.entry(t.clone()).or_insert(n), c.clone())
                            })
                            .collect();
                        ech.insert(row);
                    }
                    assert_eq!(ech.rank(), vs.len());
                }
            }
        }
    }

    #[test]
    fn sk_block_multiplicities() {
        let m = sk_multiplicities(2, 1);
        assert_eq!(m, vec![(Partition(vec![2]), 1), (Partition(vec![1, 1]), 1)]);
        let m4: BTreeMap<Partition, usize> = sk_multiplicities(4, 2).into_iter().collect();
        assert_eq!(m4[&Partition(vec![4])], 2);
        assert_eq!(m4[&Partition(vec![3, 1])], 3);
        assert_eq!(m4[&Partition(vec![2, 2])], 1);
        assert_eq!(m4[&Partition(vec![2, 1, 1])], 1);
        assert_eq!(m4.values().map(|m| m * m).sum::<usize>() as u128, bell_number(4));
    }

    #[test]
    fn sk_total_dimension() {
        for k in 1..=4 {
            for t in 1..=4 {
                let total: u128 = sk_multiplicities(k, t)
                    .iter()
                    .map(|(l, m)| *m as u128 * hook_length_count(l))
                    .sum();
                assert_eq!(total, (k as u128).pow(t as u32));
            }
        }
    }

    #[test]
    fn rank_matches_hook_formula() {
        for n in 1..=6 {
            for l in integer_partitions(n) {
                assert_eq!(specht_dimension_rank(&l) as u128, hook_length_count(&l));
            }
        }
    }

    #[test]
    fn vectors_live_in_their_class() {
        for (_, members) in sk_representative_set(3, 3) {
            for (label, u) in members {
                for w in u.terms.keys() {
                    let bases: Vec<usize> = w.iter().map(|l| l.basis as usize).collect();
                    let p = SetPartition::from_rgs(
                        &crate::word::orbit_key(w)
                            .iter()
                            .map(|l| l.basis as usize)
                            .collect::<Vec<_>>(),
                    );
                    assert_eq!(p, label.p, "{bases:?}");
                }
            }
        }
    }
}
