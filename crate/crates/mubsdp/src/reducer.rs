//! Moment values `L(w)` modulo the MUB relations.
//!
//! Words are cyclic (`L` is tracial), invariant under relabeling elements within a
//! basis and relabeling bases, and identified with their reversal (`L` is real).
//! Normalization `L(1) = d`, `L(x_{i,j}) = 1` is folded in, so the variables are
//! the words no rule can shorten.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{form_to_row, row_to_form, Echelon, FormKey, LinearForm};
use crate::scalar::{rat, Scalar};
use crate::word::{format_word, graded_lex_cmp, graded_lex_less, pack, relabel, Letter, Word};

pub type Form = LinearForm<BigRational>;

/// Rewriting steps allowed for one top-level reduction.
pub const STEP_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReduceError {
    #[error("rewriting did not terminate on {0}")]
    CycleDetected(String),
    #[error("labels exceed the supported range (d, k <= 16, degree <= 15)")]
    OutOfRange,
}

/// Minimum over rotations (and reversals, when enabled) of the first-occurrence relabeling.
pub fn canonicalize_with(w: &[Letter], reversal: bool) -> Word {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Word> = None;
    let mut consider = |seq: &[Letter]| {
        let mut rot = Vec::with_capacity(n);
        for s in 0..n {
            rot.clear();
            rot.extend_from_slice(&seq[s..]);
            rot.extend_from_slice(&seq[..s]);
            let cand = relabel(&rot, false);
            if best.as_ref().is_none_or(|b| graded_lex_less(&cand, b)) {
                best = Some(cand);
            }
        }
    };
    consider(w);
    if reversal {
        let rev: Word = w.iter().rev().copied().collect();
        consider(&rev);
    }
    best.unwrap()
}

/// Canonical representative of `w` under rotation, reversal and `S_d ≀ S_k`.
pub fn canonicalize(w: &[Letter]) -> Word {
    canonicalize_with(w, true)
}

fn has_rule4_pattern(w: &[Letter]) -> bool {
    let n = w.len();
    n >= 3 && (0..n).any(|p| w[p] == w[(p + 2) % n] && w[p].basis != w[(p + 1) % n].basis)
}

fn rotate(w: &[Letter], s: usize) -> Word {
    let mut r = Vec::with_capacity(w.len());
    r.extend_from_slice(&w[s..]);
    r.extend_from_slice(&w[..s]);
    r
}

fn remove_at(w: &[Letter], pos: usize) -> Word {
    let mut r = w.to_vec();
    r.remove(pos);
    r
}

/// Which substitution rule produced a reduction step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    Idempotent,
    SingleBasis,
    CompleteBasis,
    Unbiased,
    Commute,
}

/// Reduction engine with a memo table and a registry of irreducible words.
#[derive(Clone, Debug)]
pub struct Reducer {
    d: usize,
    k: usize,
    reversal: bool,
    memo: HashMap<u128, Form>,
    vars: Vec<Word>,
    var_index: HashMap<u128, usize>,
    in_progress: HashSet<u128>,
    steps: usize,
    depth: usize,
    rule_counts: BTreeMap<Rule, usize>,
}

impl Reducer {
    pub fn new(d: usize, k: usize) -> Self {
        Self::with_reversal(d, k, true)
    }

    /// A reducer that does not identify `w` with `w*` (used to compare conventions).
    pub fn with_reversal(d: usize, k: usize, reversal: bool) -> Self {
        assert!((1..=16).contains(&d) && (1..=16).contains(&k));
        Reducer {
            d,
            k,
            reversal,
            memo: HashMap::new(),
            vars: Vec::new(),
            var_index: HashMap::new(),
            in_progress: HashSet::new(),
            steps: 0,
            depth: 0,
            rule_counts: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn canonical(&self, w: &[Letter]) -> Word {
        canonicalize_with(w, self.reversal)
    }

    /// Irreducible words seen so far, indexed by variable id.
    pub fn variables(&self) -> &[Word] {
        &self.vars
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn rule_counts(&self) -> &BTreeMap<Rule, usize> {
        &self.rule_counts
    }

    /// `L(w)` as an affine form in the irreducible variables.
    pub fn reduce(&mut self, w: &[Letter]) -> Result<Form, ReduceError> {
        if w.len() > 15
            || w.iter()
                .any(|l| l.elem as usize >= self.d || l.basis as usize >= self.k)
        {
            return Err(ReduceError::OutOfRange);
        }
        let c = self.canonical(w);
        let key = pack(&c);
        if let Some(f) = self.memo.get(&key) {
            return Ok(f.clone());
        }
        if self.depth == 0 {
            self.steps = 0;
        }
        self.steps += 1;
        if self.steps > STEP_CAP || self.in_progress.contains(&key) {
            return Err(ReduceError::CycleDetected(format_word(&c)));
        }
        self.in_progress.insert(key);
        self.depth += 1;
        let out = self.reduce_canonical(&c);
        self.depth -= 1;
        self.in_progress.remove(&key);
        let f = out?;
        self.memo.insert(key, f.clone());
        Ok(f)
    }

    fn count(&mut self, rule: Rule) {
        *self.rule_counts.entry(rule).or_insert(0) += 1;
    }

    fn reduce_canonical(&mut self, c: &[Letter]) -> Result<Form, ReduceError> {
        let n = c.len();
        if n == 0 {
            return Ok(Form::constant(rat(self.d as i64, 1)));
        }
        if n == 1 {
            return Ok(Form::constant(BigRational::one()));
        }
        let inv_d = rat(1, self.d as i64);

        // 1: x_{i,j} x_{i',j} = δ_{i,i'} x_{i,j}, cyclically.
        for p in 0..n {
            let q = (p + 1) % n;
            if c[p].basis == c[q].basis {
                self.count(Rule::Idempotent);
                if c[p].elem != c[q].elem {
                    return Ok(Form::zero());
                }
                return self.reduce(&remove_at(c, q));
            }
        }

        // 2: a basis used once averages out to (1/d) of the word without it.
        let mut basis_count = [0usize; 16];
        let mut letter_count = [[0usize; 16]; 16];
        for l in c {
            basis_count[l.basis as usize] += 1;
            letter_count[l.basis as usize][l.elem as usize] += 1;
        }
        if let Some(pos) = (0..n).rev().find(|&p| basis_count[c[p].basis as usize] == 1) {
            self.count(Rule::SingleBasis);
            return Ok(self.reduce(&remove_at(c, pos))?.scaled(&inv_d));
        }

        // 3: a letter used once is replaced by I - Σ_{i'≠i} x_{i',j}; unused
        // elements contribute the same value as the letter itself.
        let singleton = (0..n)
            .filter(|&p| letter_count[c[p].basis as usize][c[p].elem as usize] == 1)
            .max_by_key(|&p| (c[p].basis, c[p].elem));
        if let Some(pos) = singleton {
            self.count(Rule::CompleteBasis);
            let j = c[pos].basis as usize;
            let used: Vec<u8> = (0..self.d as u8)
                .filter(|&e| e != c[pos].elem && letter_count[j][e as usize] > 0)
                .collect();
            let m = used.len() + 1;
            let mut f = self.reduce(&remove_at(c, pos))?;
            for e in used {
                let mut w = c.to_vec();
                w[pos].elem = e;
                let g = self.reduce(&w)?;
                f.add_scaled(&g, &-BigRational::one());
            }
            return Ok(f.scaled(&rat(1, (1 + self.d - m) as i64)));
        }

        // 4: x y x = (1/d) x when y lies in another basis.
        if let Some(p) = (0..n).find(|&p| c[p] == c[(p + 2) % n]) {
            self.count(Rule::Unbiased);
            let r = rotate(c, p);
            let mut w = vec![r[0]];
            w.extend_from_slice(&r[3..]);
            return Ok(self.reduce(&w)?.scaled(&inv_d));
        }

        // 5: x U x V x = x V x U x for |U|, |V| <= 3.
        if let Some(w) = self.commutation_step(c) {
            self.count(Rule::Commute);
            return self.reduce(&w);
        }

        let key = pack(c);
        let id = match self.var_index.get(&key) {
            Some(&id) => id,
            None => {
                let id = self.vars.len();
                self.vars.push(c.to_vec());
                self.var_index.insert(key, id);
                id
            }
        };
        Ok(Form::variable(id))
    }

    /// The best commutation rewrite of `c`, if one enables rule 4 or lowers the word.
    fn commutation_step(&self, c: &[Letter]) -> Option<Word> {
        let n = c.len();
        let mut best: Option<(bool, Word)> = None;
        for a in 0..n {
            let r = rotate(c, a);
            let x = r[0];
            for b in 2..=4usize.min(n.saturating_sub(1)) {
                if r[b] != x {
                    continue;
                }
                for e in (b + 2)..=(b + 4).min(n - 1) {
                    if r[e] != x {
                        continue;
                    }
                    let mut w = Vec::with_capacity(n);
                    w.push(x);
                    w.extend_from_slice(&r[b + 1..e]);
                    w.push(x);
                    w.extend_from_slice(&r[1..b]);
                    w.push(x);
                    w.extend_from_slice(&r[e + 1..]);
                    let cw = self.canonical(&w);
                    if self.in_progress.contains(&pack(&cw)) {
                        continue;
                    }
                    let enables = has_rule4_pattern(&cw);
                    if !enables && !graded_lex_less(&cw, c) {
                        continue;
                    }
                    let better = match &best {
                        None => true,
                        Some((be, bw)) => (enables && !be) || (enables == *be && graded_lex_less(&cw, bw)),
                    };
                    if better {
                        best = Some((enables, cw));
                    }
                }
            }
        }
        best.map(|(_, w)| w)
    }
}

/// Calls `f` on every word of length `n` extending `prefix`, with labels beyond
/// the prefix introduced in first-occurrence order (one word per orbit of the
/// stabilizer of the prefix's label pattern).
pub fn for_each_extension(prefix: &[Letter], n: usize, d: usize, k: usize, f: &mut impl FnMut(&[Letter])) {
    let mut elems_used = [0u8; 16];
    let mut bases_used = 0u8;
    for l in prefix {
        bases_used = bases_used.max(l.basis + 1);
        elems_used[l.basis as usize] = elems_used[l.basis as usize].max(l.elem + 1);
    }
    let mut w = prefix.to_vec();
    fn rec(
        w: &mut Word,
        n: usize,
        d: usize,
        k: usize,
        bases_used: u8,
        elems_used: &mut [u8; 16],
        f: &mut impl FnMut(&[Letter]),
    ) {
        if w.len() == n {
            f(w);
            return;
        }
        for b in 0..=(bases_used as usize).min(k - 1) {
            let e_max = (elems_used[b] as usize).min(d - 1);
            for e in 0..=e_max {
                let saved = elems_used[b];
                elems_used[b] = elems_used[b].max(e as u8 + 1);
                w.push(Letter::new(e as u8, b as u8));
                rec(w, n, d, k, bases_used.max(b as u8 + 1), elems_used, f);
                w.pop();
                elems_used[b] = saved;
            }
        }
    }
    if n >= prefix.len() {
        rec(&mut w, n, d, k, bases_used, &mut elems_used, f);
    }
}

/// Words that can be irreducible: every letter used twice, no cyclic `x_{·,j}x_{·,j}`
/// and no cyclic `x y x`. One representative per orbit up to relabeling.
fn candidate_irreducibles(n: usize, d: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    fn rec(w: &mut Word, n: usize, d: usize, k: usize, bases_used: u8, elems_used: &mut [u8; 16], out: &mut Vec<Word>) {
        let len = w.len();
        if len == n {
            if n >= 2 && w[n - 1].basis == w[0].basis {
                return;
            }
            if n >= 3 && (w[n - 2] == w[0] || w[n - 1] == w[1]) {
                return;
            }
            let mut counts: HashMap<Letter, usize> = HashMap::new();
            for l in w.iter() {
                *counts.entry(*l).or_default() += 1;
            }
            if counts.values().all(|&c| c >= 2) {
                out.push(w.clone());
            }
            return;
        }
        for b in 0..=(bases_used as usize).min(k - 1) {
            if len > 0 && w[len - 1].basis as usize == b {
                continue;
            }
            let e_max = (elems_used[b] as usize).min(d - 1);
            for e in 0..=e_max {
                let l = Letter::new(e as u8, b as u8);
                if len >= 2 && w[len - 2] == l {
                    continue;
                }
                let saved = elems_used[b];
                elems_used[b] = elems_used[b].max(e as u8 + 1);
                w.push(l);
                rec(w, n, d, k, bases_used.max(b as u8 + 1), elems_used, out);
                w.pop();
                elems_used[b] = saved;
            }
        }
    }
    let mut w = Vec::new();
    let mut elems = [0u8; 16];
    rec(&mut w, n, d, k, 0, &mut elems, &mut out);
    out
}

/// Irreducible variables up to `max_degree`, sorted by graded lex order.
///
/// Every irreducible word of lower degree is reached from degree `max_degree`
/// by doubling one of its letters, so this is the list of variables appearing
/// when all monomials of that degree are reduced.
pub fn discover_variables(reducer: &mut Reducer, max_degree: usize) -> Result<Vec<Word>, ReduceError> {
    let mut found: Vec<Word> = Vec::new();
    let mut seen: HashSet<u128> = HashSet::new();
    for n in (1..=max_degree).rev() {
        for w in candidate_irreducibles(n, reducer.d(), reducer.k()) {
            let c = reducer.canonical(&w);
            if !seen.insert(pack(&c)) {
                continue;
            }
            let f = reducer.reduce(&c)?;
            if f.constant.is_zero() && f.coeffs.len() == 1 {
                let (&v, a) = f.coeffs.iter().next().unwrap();
                if a.is_one() && reducer.variables()[v] == c {
                    found.push(c);
                }
            }
        }
    }
    found.sort_by(|a, b| graded_lex_cmp(a, b));
    Ok(found)
}

/// The generator family a sweep row came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// `x_{i,j} x_{i',j} - δ x_{i,j}`
    Projector,
    /// `Σ_i x_{i,j} - 1`
    Completeness,
    /// `x_{i,j} x_{i',j'} x_{i,j} - (1/d) x_{i,j}`
    Unbiased,
    /// `[x U x, x V x]`
    Commutation,
}

/// A linear constraint `form = 0` with its provenance.
#[derive(Clone, Debug)]
pub struct ConstraintRow {
    pub form: Form,
    pub family: Family,
    pub generator: Word,
    pub multiplier: Word,
}

fn x11() -> Letter {
    Letter::new(0, 0)
}

fn ext_words(prefix: &[Letter], extra_max: usize, d: usize, k: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for extra in 0..=extra_max {
        for_each_extension(prefix, prefix.len() + extra, d, k, &mut |w| out.push(w.to_vec()));
    }
    out
}

/// Evaluates `L(q p)` for the generators `q` of the MUB ideal and multipliers `p`
/// within `max_degree`, up to symmetry, and keeps the nonzero independent rows.
pub fn ideal_sweep_constraints(reducer: &mut Reducer, max_degree: usize) -> Result<Vec<ConstraintRow>, ReduceError> {
    sweep(reducer, max_degree, false)
}

/// The sweep restricted to generators and multipliers in the letters `x_{1,j}`.
pub fn bases_only_sweep_constraints(
    reducer: &mut Reducer,
    max_degree: usize,
) -> Result<Vec<ConstraintRow>, ReduceError> {
    sweep(reducer, max_degree, true)
}

fn sweep(reducer: &mut Reducer, max_degree: usize, bases_only: bool) -> Result<Vec<ConstraintRow>, ReduceError> {
    let k = reducer.k();
    // Multipliers range over elements 0..d, or only element 0 in the subalgebra.
    let d = if bases_only { 1 } else { reducer.d() };
    let d_true = reducer.d();
    let mut candidates: Vec<ConstraintRow> = Vec::new();
    let x = x11();
    let neg = -BigRational::one();

    // (i) x_{1,1}^2 - x_{1,1} and x_{1,1} x_{2,1}.
    if max_degree >= 2 {
        for w in ext_words(&[x, x], max_degree - 2, d, k) {
            let p = w[2..].to_vec();
            let mut f = reducer.reduce(&w)?;
            let mut shorter = vec![x];
            shorter.extend_from_slice(&p);
            f.add_scaled(&reducer.reduce(&shorter)?, &neg);
            candidates.push(ConstraintRow {
                form: f,
                family: Family::Projector,
                generator: vec![x, x],
                multiplier: p,
            });
        }
        if d >= 2 {
            let y = Letter::new(1, 0);
            for w in ext_words(&[x, y], max_degree - 2, d, k) {
                let p = w[2..].to_vec();
                candidates.push(ConstraintRow {
                    form: reducer.reduce(&w)?,
                    family: Family::Projector,
                    generator: vec![x, y],
                    multiplier: p,
                });
            }
        }
    }

    // (ii) Σ_i x_{i,j} - 1 for a basis j of p or a fresh one.
    if max_degree >= 1 && !bases_only {
        for p in ext_words(&[], max_degree - 1, d, k) {
            let nb = p.iter().map(|l| l.basis as usize + 1).max().unwrap_or(0);
            for j in 0..(nb + 1).min(k) {
                let mut f = reducer.reduce(&p)?;
                f = f.scaled(&neg);
                for i in 0..d {
                    let mut w = vec![Letter::new(i as u8, j as u8)];
                    w.extend_from_slice(&p);
                    f.add_scaled(&reducer.reduce(&w)?, &BigRational::one());
                }
                candidates.push(ConstraintRow {
                    form: f,
                    family: Family::Completeness,
                    generator: vec![Letter::new(0, j as u8)],
                    multiplier: p.clone(),
                });
            }
        }
    }

    // (iii) x_{1,1} x_{1,2} x_{1,1} - (1/d) x_{1,1}.
    if max_degree >= 3 && k >= 2 {
        let y = Letter::new(0, 1);
        for w in ext_words(&[x, y, x], max_degree - 3, d, k) {
            let p = w[3..].to_vec();
            let mut f = reducer.reduce(&w)?;
            let mut shorter = vec![x];
            shorter.extend_from_slice(&p);
            f.add_scaled(&reducer.reduce(&shorter)?, &rat(-1, d_true as i64));
            candidates.push(ConstraintRow {
                form: f,
                family: Family::Unbiased,
                generator: vec![x, y, x],
                multiplier: p,
            });
        }
    }

    // (iv) x U x V x - x V x U x with 1 <= |U|, |V| <= 3.
    for lu in 1..=3usize {
        for lv in 1..=3usize {
            let base = 3 + lu + lv;
            if base > max_degree {
                continue;
            }
            let mut words: Vec<Word> = Vec::new();
            for_each_extension(&[x], 1 + lu, d, k, &mut |wu| {
                let mut pre = wu.to_vec();
                pre.push(x);
                for_each_extension(&pre, pre.len() + lv, d, k, &mut |wv| {
                    let mut pre2 = wv.to_vec();
                    pre2.push(x);
                    for extra in 0..=(max_degree - base) {
                        for_each_extension(&pre2, base + extra, d, k, &mut |w| words.push(w.to_vec()));
                    }
                });
            });
            for w in words {
                let u = &w[1..lu + 1];
                let v = &w[lu + 2..lu + lv + 2];
                let p = &w[base..];
                let mut swapped = vec![x];
                swapped.extend_from_slice(v);
                swapped.push(x);
                swapped.extend_from_slice(u);
                swapped.push(x);
                swapped.extend_from_slice(p);
                let mut f = reducer.reduce(&w)?;
                f.add_scaled(&reducer.reduce(&swapped)?, &neg);
                candidates.push(ConstraintRow {
                    form: f,
                    family: Family::Commutation,
                    generator: w[..base].to_vec(),
                    multiplier: p.to_vec(),
                });
            }
        }
    }

    candidates.sort_by(|a, b| {
        a.family
            .cmp(&b.family)
            .then_with(|| (a.generator.len() + a.multiplier.len()).cmp(&(b.generator.len() + b.multiplier.len())))
            .then_with(|| graded_lex_cmp(&a.generator, &b.generator))
            .then_with(|| graded_lex_cmp(&a.multiplier, &b.multiplier))
    });
    let mut ech: Echelon<FormKey, BigRational> = Echelon::new();
    let mut kept = Vec::new();
    for row in candidates {
        if row.form.is_zero() {
            continue;
        }
        if ech.insert(form_to_row(&row.form)).is_some() {
            kept.push(row);
        }
    }
    Ok(kept)
}

/// Outcome of the purely linear check.
#[derive(Clone, Debug)]
pub enum LinearVerdict {
    /// Some combination of the rows reads `c = 0` with `c ≠ 0`; the witness lists
    /// `(row index, multiplier)`.
    Infeasible {
        constant: BigRational,
        witness: Vec<(usize, BigRational)>,
    },
    Undetermined,
}

impl LinearVerdict {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, LinearVerdict::Infeasible { .. })
    }
}

/// Gaussian elimination over the rows, tracking combinations, until a row
/// collapses to a nonzero constant.
pub fn detect_linear_infeasibility(rows: &[ConstraintRow]) -> LinearVerdict {
    // Augment each row with a tag variable per row so the combination is recovered.
    let tag_base = rows
        .iter()
        .flat_map(|r| r.form.coeffs.keys().copied())
        .max()
        .map_or(0, |m| m + 1);
    let mut ech: Echelon<(u8, FormKey), BigRational> = Echelon::new();
    for (i, r) in rows.iter().enumerate() {
        let mut row: BTreeMap<(u8, FormKey), BigRational> =
            form_to_row(&r.form).into_iter().map(|(k, v)| ((1, k), v)).collect();
        row.insert((0, Some(tag_base + i)), BigRational::one());
        let reduced = ech.reduce(row.clone());
        let only_tags_and_constant = reduced.keys().all(|(kind, key)| *kind == 0 || key.is_none());
        let constant = reduced.get(&(1, None)).cloned().unwrap_or_else(BigRational::zero);
        if only_tags_and_constant && !constant.is_zero() {
            let witness = reduced
                .iter()
                .filter(|((kind, _), _)| *kind == 0)
                .map(|((_, key), v)| (key.unwrap() - tag_base, v.clone() / constant.clone()))
                .collect();
            return LinearVerdict::Infeasible {
                constant: BigRational::one(),
                witness,
            };
        }
        ech.insert(row);
    }
    LinearVerdict::Undetermined
}

/// Solves the rows for some variables: returns `var -> form in the remaining variables`.
/// Pivots on the largest variable index, which is the highest-degree variable
/// when ids follow graded lex order.
pub fn eliminate(rows: &[Form]) -> BTreeMap<usize, Form> {
    let mut ech: Echelon<FormKey, BigRational> = Echelon::new();
    for r in rows {
        ech.insert(form_to_row(r));
    }
    let mut pivots: Vec<(usize, Form)> = Vec::new();
    for (key, row) in ech.rows() {
        let Some(v) = key else { continue };
        let lead = row[key].clone();
        let mut f = row_to_form(row).scaled(&(-BigRational::one() / lead));
        f.coeffs.remove(v);
        pivots.push((*v, f));
    }
    // Back-substitute so no solved variable appears on a right-hand side.
    pivots.sort_by_key(|(v, _)| *v);
    let mut solved: BTreeMap<usize, Form> = BTreeMap::new();
    for (v, f) in pivots {
        let g = f.substitute(&solved);
        solved.insert(v, g);
    }
    let snapshot = solved.clone();
    for f in solved.values_mut() {
        *f = f.substitute(&snapshot);
    }
    solved
}

/// True when `form` vanishes after substituting `values` for every variable.
pub fn vanishes<S: Scalar>(form: &Form, values: &[S], tol: f64) -> bool {
    form.map(|q| S::from_rational(q)).evaluate(values).magnitude() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::word_from_pairs;

    #[test]
    fn canonical_examples() {
        assert_eq!(canonicalize(&word_from_pairs(&[(3, 2)])), word_from_pairs(&[(1, 1)]));
        assert_eq!(
            canonicalize(&word_from_pairs(&[(1, 2), (1, 1)])),
            word_from_pairs(&[(1, 1), (1, 2)])
        );
        assert_eq!(
            canonicalize(&word_from_pairs(&[(2, 1), (5, 3), (2, 1)])),
            word_from_pairs(&[(1, 1), (1, 1), (1, 2)])
        );
    }

    #[test]
    fn small_values() {
        for d in [2usize, 3, 6] {
            let mut r = Reducer::new(d, 3);
            let dd = d as i64;
            assert_eq!(r.reduce(&word_from_pairs(&[(1, 1), (2, 1)])).unwrap(), Form::zero());
            assert_eq!(
                r.reduce(&word_from_pairs(&[(1, 1), (1, 2), (1, 1)])).unwrap(),
                Form::constant(rat(1, dd))
            );
            assert_eq!(
                r.reduce(&word_from_pairs(&[(1, 1), (1, 2), (1, 3)])).unwrap(),
                Form::constant(rat(1, dd * dd))
            );
            assert_eq!(r.reduce(&[]).unwrap(), Form::constant(rat(dd, 1)));
        }
    }

    #[test]
    fn first_variable_is_degree_six() {
        let mut r = Reducer::new(6, 4);
        let vars = discover_variables(&mut r, 6).unwrap();
        let w = word_from_pairs(&[(1, 1), (1, 2), (1, 3), (1, 1), (1, 2), (1, 3)]);
        assert_eq!(vars, vec![canonicalize(&w)]);
        let f = r.reduce(&w).unwrap();
        assert!(f.constant.is_zero() && f.coeffs.len() == 1);
        let mut r5 = Reducer::new(6, 4);
        assert!(discover_variables(&mut r5, 5).unwrap().is_empty());
    }

    #[test]
    fn irreducible_is_idempotent() {
        let mut r = Reducer::new(3, 4);
        let vars = discover_variables(&mut r, 8).unwrap();
        for v in vars {
            let f = r.reduce(&v).unwrap();
            let (&id, _) = f.coeffs.iter().next().unwrap();
            assert_eq!(r.variables()[id], v);
        }
    }

    #[test]
    fn extension_counts_match_orbit_counts() {
        let mut count = 0;
        for_each_extension(&[], 4, 4, 4, &mut |_| count += 1);
        assert_eq!(count, 60);
    }
}
