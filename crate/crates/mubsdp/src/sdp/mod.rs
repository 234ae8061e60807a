//! Block-diagonalized feasibility SDPs `sdp(d, k, t)` and their table statistics.

pub mod oracle;
pub mod sdpa;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use thiserror::Error;

use crate::combinatorics::{orbit_classes, set_partitions, OrbitClass, SetPartition, Tableau};
use crate::linalg::{form_to_row, Echelon, FormKey};
use crate::reducer::{
    bases_only_sweep_constraints, detect_linear_infeasibility, discover_variables, eliminate, for_each_extension,
    ideal_sweep_constraints, ConstraintRow, Form, LinearVerdict, ReduceError, Reducer,
};
use crate::specht::{sk_half_representative_set_with, sk_multiplicities_with, sk_representative_set_with, WordVector};
use crate::word::{graded_lex_cmp, pack, star, Letter, Word};
use crate::wreath::{
    half_level_multiplicities, half_level_with, wreath_multiplicities, wreath_representative_set_with,
};

/// Which moment matrix is relaxed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    /// Monomials in all `x_{i,j}`, symmetric under `S_d ≀ S_k`.
    Full,
    /// Monomials in `x_{1,j}` only, symmetric under `S_k`.
    BasesOnly,
}

impl FromStr for Mode {
    type Err = SdpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(Mode::Full),
            "bases_only" | "bases-only" => Ok(Mode::BasesOnly),
            _ => Err(SdpError::Config(format!("unknown mode {s:?} (full | bases_only)"))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Full => "full",
            Mode::BasesOnly => "bases_only",
        })
    }
}

/// Relaxation level `t`, stored as `2t`; odd values are the half levels `t + 1/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Level(usize);

impl Level {
    pub fn from_twice(two_t: usize) -> Result<Self, SdpError> {
        if two_t < 2 {
            return Err(SdpError::Config(format!("level must be at least 1, got {}/2", two_t)));
        }
        Ok(Level(two_t))
    }

    pub fn integer(t: usize) -> Self {
        Level(2 * t)
    }

    /// The level `t + 1/2`.
    pub fn half(t: usize) -> Self {
        Level(2 * t + 1)
    }

    pub fn twice(self) -> usize {
        self.0
    }

    pub fn floor(self) -> usize {
        self.0 / 2
    }

    pub fn is_half(self) -> bool {
        self.0 % 2 == 1
    }

    /// Length of the index words (`x_{1,1} w` counts the prefix at half levels).
    pub fn index_len(self) -> usize {
        self.floor() + usize::from(self.is_half())
    }
}

impl FromStr for Level {
    type Err = SdpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SdpError::Config(format!("level {s:?} is not an integer or half-integer"));
        let (whole, frac) = match s.split_once('.') {
            Some((w, f)) => (w, f.trim_end_matches('0')),
            None => (s, ""),
        };
        let w: usize = whole.parse().map_err(|_| bad())?;
        let two_t = match frac {
            "" => 2 * w,
            "5" => 2 * w + 1,
            _ => return Err(bad()),
        };
        Level::from_twice(two_t)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_half() {
            write!(f, "{}.5", self.floor())
        } else {
            write!(f, "{}", self.floor())
        }
    }
}

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("linear constraints are inconsistent")]
    LinearInfeasible(Box<LinearCertificate>),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("malformed solver output: {0}")]
    SolverOutput(String),
}

/// A combination of sweep rows that reads `1 = 0`.
#[derive(Clone, Debug)]
pub struct LinearCertificate {
    pub rows: Vec<(ConstraintRow, BigRational)>,
    pub variables: Vec<Word>,
    pub n_linear: usize,
}

/// Which degenerate index classes are dropped before assembly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pruning {
    /// Adjacent positions in one basis, or positions `a`, `a + 2` with the same letter.
    #[default]
    Classes,
    /// Only adjacent positions in one basis.
    Adjacent,
    None,
    /// No class is dropped; rows that are combinations of earlier rows of the
    /// same block are removed after the entries are known.
    Exact,
}

impl FromStr for Pruning {
    type Err = SdpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "classes" => Ok(Pruning::Classes),
            "adjacent" => Ok(Pruning::Adjacent),
            "none" => Ok(Pruning::None),
            "exact" => Ok(Pruning::Exact),
            _ => Err(SdpError::Config(format!(
                "unknown pruning {s:?} (classes | adjacent | none | exact)"
            ))),
        }
    }
}

impl fmt::Display for Pruning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pruning::Classes => "classes",
            Pruning::Adjacent => "adjacent",
            Pruning::None => "none",
            Pruning::Exact => "exact",
        })
    }
}

/// Problem parameters shared by assembly and statistics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Problem {
    pub d: usize,
    pub k: usize,
    pub level: Level,
    pub mode: Mode,
    pub pruning: Pruning,
}

impl Problem {
    pub fn new(d: usize, k: usize, level: Level, mode: Mode) -> Result<Self, SdpError> {
        if d < 2 || k < 2 {
            return Err(SdpError::Config(format!("need d >= 2 and k >= 2, got d={d}, k={k}")));
        }
        if d > 16 || k > 16 {
            return Err(SdpError::Config("d and k are limited to 16".into()));
        }
        if level.twice() > 15 {
            return Err(SdpError::Config("moment words are limited to degree 15".into()));
        }
        Ok(Problem {
            d,
            k,
            level,
            mode,
            pruning: Pruning::default(),
        })
    }

    pub fn with_pruning(self, pruning: Pruning) -> Self {
        Problem { pruning, ..self }
    }

    /// Side length of the unreduced moment matrix: `(dk)^⌊t⌋`, or `k^⌊t⌋` for bases only.
    pub fn size(&self) -> u128 {
        let base = match self.mode {
            Mode::Full => self.d * self.k,
            Mode::BasesOnly => self.k,
        };
        (base as u128).pow(self.level.floor() as u32)
    }
}

/// Adjacent positions in one basis, or positions `a`, `a + 2` carrying the same letter.
pub fn is_degenerate(word: &[(usize, usize)]) -> bool {
    has_adjacent_basis(word) || word.windows(3).any(|w| w[0] == w[2])
}

fn has_adjacent_basis(word: &[(usize, usize)]) -> bool {
    word.windows(2).any(|w| w[0].1 == w[1].1)
}

fn dropped(word: &[(usize, usize)], pruning: Pruning) -> bool {
    match pruning {
        Pruning::Classes => is_degenerate(word),
        Pruning::Adjacent => has_adjacent_basis(word),
        Pruning::None | Pruning::Exact => false,
    }
}

/// Drops classes whose rows vanish or repeat by relations (i) and (iii).
pub fn prune_orbit_classes(classes: Vec<OrbitClass>) -> Vec<OrbitClass> {
    prune_orbit_classes_with(classes, Pruning::Classes)
}

pub fn prune_orbit_classes_with(classes: Vec<OrbitClass>, pruning: Pruning) -> Vec<OrbitClass> {
    classes
        .into_iter()
        .filter(|c| !dropped(&c.canonical_word(), pruning))
        .collect()
}

/// Bases-only analogue of [`prune_orbit_classes`]: all elements are equal.
pub fn prune_patterns(patterns: Vec<SetPartition>) -> Vec<SetPartition> {
    prune_patterns_with(patterns, Pruning::Classes)
}

pub fn prune_patterns_with(patterns: Vec<SetPartition>, pruning: Pruning) -> Vec<SetPartition> {
    patterns
        .into_iter()
        .filter(|p| !dropped(&pattern_word(p), pruning))
        .collect()
}

fn pattern_word(p: &SetPartition) -> Vec<(usize, usize)> {
    p.rgs().into_iter().map(|b| (0, b)).collect()
}

fn classes_for(pr: &Problem, pruned: bool) -> Vec<OrbitClass> {
    let c = orbit_classes(pr.level.index_len(), pr.k, pr.d);
    prune_orbit_classes_with(c, if pruned { pr.pruning } else { Pruning::None })
}

fn patterns_for(pr: &Problem, pruned: bool) -> Vec<SetPartition> {
    let p = set_partitions(pr.level.index_len(), pr.k);
    prune_patterns_with(p, if pruned { pr.pruning } else { Pruning::None })
}

/// `(block name, block size)` from multiplicities alone, without building vectors.
pub fn block_sizes(pr: &Problem, pruned: bool) -> Vec<(String, usize)> {
    match (pr.mode, pr.level.is_half()) {
        (Mode::Full, false) => wreath_multiplicities(pr.d, pr.k, &classes_for(pr, pruned))
            .into_iter()
            .map(|(l, m)| (l.to_string(), m))
            .collect(),
        (Mode::Full, true) => half_level_multiplicities(pr.d, pr.k, &classes_for(pr, pruned))
            .into_iter()
            .map(|((a, l), m)| (format!("{a};{l}"), m))
            .collect(),
        (Mode::BasesOnly, half) => sk_multiplicities_with(pr.k, half, &patterns_for(pr, pruned))
            .into_iter()
            .map(|(l, m)| (l.to_string(), m))
            .collect(),
    }
}

/// Labelled representative vectors of one block.
#[derive(Clone, Debug)]
pub struct RepBlock {
    pub name: String,
    pub members: Vec<(String, WordVector)>,
}

fn join_tableaux(ts: &[Tableau]) -> String {
    ts.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(",")
}

/// The representative set feeding `Φ`, after pruning if requested.
pub fn representative_blocks(pr: &Problem, pruned: bool) -> Vec<RepBlock> {
    match (pr.mode, pr.level.is_half()) {
        (Mode::Full, false) => wreath_representative_set_with(pr.d, pr.k, classes_for(pr, pruned))
            .into_iter()
            .map(|(l, members)| RepBlock {
                name: l.to_string(),
                members: members
                    .into_iter()
                    .map(|(lab, u)| {
                        let s = format!(
                            "{} j={:?} s={} t={}",
                            lab.class,
                            lab.j,
                            join_tableaux(&lab.sigma),
                            join_tableaux(&lab.tau)
                        );
                        (s, u)
                    })
                    .collect(),
            })
            .collect(),
        (Mode::Full, true) => half_level_with(pr.d, pr.k, classes_for(pr, pruned))
            .into_iter()
            .map(|((a, l), members)| RepBlock {
                name: format!("{a};{l}"),
                members: members
                    .into_iter()
                    .map(|(lab, u)| {
                        let s = format!(
                            "{} r={} j={:?} s={} t={}",
                            lab.class,
                            lab.rho,
                            lab.j,
                            join_tableaux(&lab.sigma),
                            join_tableaux(&lab.tau)
                        );
                        (s, u)
                    })
                    .collect(),
            })
            .collect(),
        (Mode::BasesOnly, half) => {
            let patterns = patterns_for(pr, pruned);
            let set = if half {
                sk_half_representative_set_with(pr.k, &patterns)
            } else {
                sk_representative_set_with(pr.k, &patterns)
            };
            set.into_iter()
                .map(|(l, members)| RepBlock {
                    name: l.to_string(),
                    members: members
                        .into_iter()
                        .map(|(lab, u)| (format!("{} t={}", lab.p, lab.tau), u))
                        .collect(),
                })
                .collect()
        }
    }
}

/// `Σ u_w v_{w'} L(w^* w')` reduced to an affine form.
pub fn moment_entry(u: &WordVector, v: &WordVector, reducer: &mut Reducer) -> Result<Form, ReduceError> {
    let mut cache = HashMap::new();
    moment_entry_cached(u, v, reducer, &mut cache)
}

fn moment_entry_cached(
    u: &WordVector,
    v: &WordVector,
    reducer: &mut Reducer,
    cache: &mut HashMap<u128, Form>,
) -> Result<Form, ReduceError> {
    let mut out = Form::zero();
    for (w, a) in &u.terms {
        let ws = star(w);
        for (w2, b) in &v.terms {
            let mut full: Word = ws.clone();
            full.extend_from_slice(w2);
            let key = pack(&full);
            let f = match cache.get(&key) {
                Some(f) => f.clone(),
                None => {
                    let f = reducer.reduce(&full)?;
                    cache.insert(key, f.clone());
                    f
                }
            };
            out.add_scaled(&f, &(a * b));
        }
    }
    Ok(out)
}

/// One symmetric block of `Φ(M(L))`; entries are affine in the free variables.
#[derive(Clone, Debug)]
pub struct Block {
    pub name: String,
    pub labels: Vec<String>,
    pub entries: Vec<Vec<Form>>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..a).all(|b| self.entries[a][b] == self.entries[b][a]))
    }

    /// The block as a dense matrix at the given free-variable values.
    pub fn evaluate(&self, values: &[f64]) -> nalgebra::DMatrix<f64> {
        let n = self.size();
        let fv: Vec<_> = self
            .entries
            .iter()
            .flatten()
            .map(|f| f.map(crate::scalar::from_rational::<f64>))
            .collect();
        nalgebra::DMatrix::from_fn(n, n, |a, b| fv[a * n + b].evaluate(values))
    }
}

/// Indices of a maximal set of rows whose span contains every row, taken greedily
/// in order. Rows are compared as vectors of affine forms, so dropping the
/// others is a congruence and keeps the PSD condition equivalent.
pub fn independent_rows(entries: &[Vec<Form>]) -> Vec<usize> {
    let mut ech: Echelon<(usize, FormKey), BigRational> = Echelon::new();
    let mut keep = Vec::new();
    for (a, row) in entries.iter().enumerate() {
        let mut v = BTreeMap::new();
        for (b, f) in row.iter().enumerate() {
            for (key, c) in form_to_row(f) {
                v.insert((b, key), c);
            }
        }
        if !v.is_empty() && ech.insert(v).is_some() {
            keep.push(a);
        }
    }
    keep
}

impl Block {
    /// The principal submatrix on [`independent_rows`].
    pub fn reduced(&self) -> Block {
        let keep = independent_rows(&self.entries);
        Block {
            name: self.name.clone(),
            labels: keep.iter().map(|&a| self.labels[a].clone()).collect(),
            entries: keep
                .iter()
                .map(|&a| keep.iter().map(|&b| self.entries[a][b].clone()).collect())
                .collect(),
        }
    }
}

/// An assembled relaxation.
///
/// Variables are numbered globally in graded lex order of their words; block
/// entries use the local numbering `0..free.len()` of the surviving ones.
#[derive(Clone, Debug)]
pub struct SdpInstance {
    pub problem: Problem,
    pub variables: Vec<Word>,
    pub free: Vec<usize>,
    pub substitution: BTreeMap<usize, Form>,
    pub constraints: Vec<ConstraintRow>,
    pub blocks: Vec<Block>,
}

impl SdpInstance {
    pub fn free_words(&self) -> Vec<&Word> {
        self.free.iter().map(|&g| &self.variables[g]).collect()
    }

    /// Full assignment of all variables from values of the free ones.
    pub fn expand(&self, free_values: &[f64]) -> Vec<f64> {
        let mut all = vec![0.0; self.variables.len()];
        for (&g, &x) in self.free.iter().zip(free_values) {
            all[g] = x;
        }
        for (&v, f) in &self.substitution {
            all[v] = f.map(crate::scalar::from_rational::<f64>).evaluate(&all);
        }
        all
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::size).collect()
    }
}

/// Variables of the relaxation: every irreducible word reached from monomials
/// of degree at most `2t` (in the bases-only letters for that mode).
pub fn relaxation_variables(pr: &Problem, reducer: &mut Reducer) -> Result<Vec<Word>, ReduceError> {
    let deg = pr.level.twice();
    match pr.mode {
        Mode::Full => discover_variables(reducer, deg),
        Mode::BasesOnly => {
            let mut words = Vec::new();
            for n in 0..=deg {
                for_each_extension(&[], n, 1, pr.k, &mut |w| words.push(w.to_vec()));
            }
            let mut ids = BTreeSet::new();
            for w in words {
                ids.extend(reducer.reduce(&w)?.coeffs.into_keys());
            }
            let mut out: Vec<Word> = ids.into_iter().map(|i| reducer.variables()[i].clone()).collect();
            out.sort_by(|a, b| graded_lex_cmp(a, b));
            Ok(out)
        }
    }
}

/// Independent sweep rows for the problem's mode.
pub fn sweep_rows(pr: &Problem, reducer: &mut Reducer, sweep_degree: usize) -> Result<Vec<ConstraintRow>, ReduceError> {
    match pr.mode {
        Mode::Full => ideal_sweep_constraints(reducer, sweep_degree),
        Mode::BasesOnly => bases_only_sweep_constraints(reducer, sweep_degree),
    }
}

fn certificate(rows: &[ConstraintRow], verdict: LinearVerdict, variables: Vec<Word>) -> Option<LinearCertificate> {
    match verdict {
        LinearVerdict::Infeasible { witness, .. } => Some(LinearCertificate {
            rows: witness.into_iter().map(|(i, c)| (rows[i].clone(), c)).collect(),
            variables,
            n_linear: rows.len(),
        }),
        LinearVerdict::Undetermined => None,
    }
}

type RawBlock = (String, Vec<String>, Vec<Vec<Form>>);

#[allow(clippy::needless_range_loop)]
fn build_entries(pr: &Problem, reducer: &mut Reducer) -> Result<Vec<RawBlock>, ReduceError> {
    let mut raw_blocks = Vec::new();
    let mut cache = HashMap::new();
    for rb in representative_blocks(pr, true) {
        let n = rb.members.len();
        let mut entries = vec![vec![Form::zero(); n]; n];
        for a in 0..n {
            for b in a..n {
                let f = moment_entry_cached(&rb.members[a].1, &rb.members[b].1, reducer, &mut cache)?;
                entries[b][a] = f.clone();
                entries[a][b] = f;
            }
        }
        raw_blocks.push((rb.name, rb.members.into_iter().map(|(l, _)| l).collect(), entries));
    }
    Ok(raw_blocks)
}

/// Builds the pruned block-diagonal relaxation, eliminating the sweep's
/// equalities by substitution.
pub fn assemble_instance(pr: &Problem, sweep_degree: usize) -> Result<SdpInstance, SdpError> {
    let mut reducer = Reducer::new(pr.d, pr.k);
    let variables = relaxation_variables(pr, &mut reducer)?;
    let rows = sweep_rows(pr, &mut reducer, sweep_degree)?;
    if let Some(cert) = certificate(&rows, detect_linear_infeasibility(&rows), variables.clone()) {
        return Err(SdpError::LinearInfeasible(Box::new(cert)));
    }

    let raw_blocks = build_entries(pr, &mut reducer)?;

    // Global numbering in graded lex order of everything that occurs.
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for r in &rows {
        used.extend(r.form.coeffs.keys().copied());
    }
    for (_, _, e) in &raw_blocks {
        for f in e.iter().flatten() {
            used.extend(f.coeffs.keys().copied());
        }
    }
    let mut words: Vec<(Word, usize)> = used.iter().map(|&i| (reducer.variables()[i].clone(), i)).collect();
    for w in &variables {
        let id = reducer.reduce(w)?.coeffs.into_keys().next();
        if let Some(id) = id {
            if !used.contains(&id) {
                words.push((w.clone(), id));
                used.insert(id);
            }
        }
    }
    words.sort_by(|a, b| graded_lex_cmp(&a.0, &b.0));
    let global: HashMap<usize, usize> = words.iter().enumerate().map(|(g, (_, id))| (*id, g)).collect();
    let all_words: Vec<Word> = words.into_iter().map(|(w, _)| w).collect();

    let constraints: Vec<ConstraintRow> = rows
        .into_iter()
        .map(|r| ConstraintRow {
            form: r.form.reindex(|i| global[&i]),
            ..r
        })
        .collect();
    let substitution = eliminate(&constraints.iter().map(|r| r.form.clone()).collect::<Vec<_>>());

    let mut blocks: Vec<Block> = raw_blocks
        .into_iter()
        .map(|(name, labels, entries)| Block {
            name,
            labels,
            entries: entries
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|f| f.reindex(|i| global[&i]).substitute(&substitution))
                        .collect()
                })
                .collect(),
        })
        .collect();
    if pr.pruning == Pruning::Exact {
        blocks = blocks.iter().map(Block::reduced).filter(|b| b.size() > 0).collect();
    }
    let free: Vec<usize> = blocks
        .iter()
        .flat_map(|b| b.entries.iter().flatten())
        .flat_map(|f| f.coeffs.keys().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let local: HashMap<usize, usize> = free.iter().enumerate().map(|(l, &g)| (g, l)).collect();
    for b in blocks.iter_mut() {
        for f in b.entries.iter_mut().flatten() {
            *f = f.reindex(|g| local[&g]);
        }
    }

    Ok(SdpInstance {
        problem: *pr,
        variables: all_words,
        free,
        substitution,
        constraints,
        blocks,
    })
}

/// Linear verdict of the sweep alone.
#[derive(Clone, Debug)]
pub enum Verdict {
    LinearInfeasible(Box<LinearCertificate>),
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::LinearInfeasible(_) => f.write_str("infeasible(linear)"),
            Verdict::Undetermined => f.write_str("undetermined"),
        }
    }
}

/// Sweep plus linear check, without block entries.
pub fn check_linear(pr: &Problem, sweep_degree: usize) -> Result<(Vec<Word>, Vec<ConstraintRow>, Verdict), SdpError> {
    let mut reducer = Reducer::new(pr.d, pr.k);
    let variables = relaxation_variables(pr, &mut reducer)?;
    let rows = sweep_rows(pr, &mut reducer, sweep_degree)?;
    let verdict = match certificate(&rows, detect_linear_infeasibility(&rows), variables.clone()) {
        Some(c) => Verdict::LinearInfeasible(Box::new(c)),
        None => Verdict::Undetermined,
    };
    Ok((variables, rows, verdict))
}

/// The columns of the result tables, plus the unpruned block sizes for comparison.
#[derive(Clone, Debug)]
pub struct Stats {
    pub problem: Problem,
    pub size: u128,
    pub n_vars: usize,
    pub n_linear: usize,
    pub block_sum: usize,
    pub block_max: usize,
    pub n_blocks: usize,
    pub unpruned_sum: usize,
    pub unpruned_max: usize,
    pub verdict: Verdict,
}

fn sum_max(sizes: &[(String, usize)]) -> (usize, usize) {
    (
        sizes.iter().map(|(_, m)| m).sum(),
        sizes.iter().map(|(_, m)| *m).max().unwrap_or(0),
    )
}

/// Block sizes under [`Pruning::Exact`]; needs the entries. When the sweep is
/// inconsistent there is nothing to substitute, so rows are compared as reduced.
fn exact_block_sizes(pr: &Problem, sweep_degree: usize, verdict: &Verdict) -> Result<Vec<(String, usize)>, SdpError> {
    let blocks = match verdict {
        Verdict::Undetermined => assemble_instance(pr, sweep_degree)?.blocks,
        Verdict::LinearInfeasible(_) => {
            let mut reducer = Reducer::new(pr.d, pr.k);
            build_entries(pr, &mut reducer)?
                .into_iter()
                .map(|(name, labels, entries)| Block { name, labels, entries }.reduced())
                .filter(|b| b.size() > 0)
                .collect()
        }
    };
    Ok(blocks.into_iter().map(|b| (b.name, b.labels.len())).collect())
}

/// Table statistics; block sizes come from multiplicities, so this stays cheap
/// where building the entries would not.
pub fn stats(pr: &Problem, sweep_degree: usize) -> Result<Stats, SdpError> {
    let (variables, rows, verdict) = check_linear(pr, sweep_degree)?;
    let pruned = if pr.pruning == Pruning::Exact {
        exact_block_sizes(pr, sweep_degree, &verdict)?
    } else {
        block_sizes(pr, true)
    };
    let (block_sum, block_max) = sum_max(&pruned);
    let (unpruned_sum, unpruned_max) = sum_max(&block_sizes(pr, false));
    Ok(Stats {
        problem: *pr,
        size: pr.size(),
        n_vars: variables.len(),
        n_linear: rows.len(),
        block_sum,
        block_max,
        n_blocks: pruned.len(),
        unpruned_sum,
        unpruned_max,
        verdict,
    })
}

/// Words `x_{1,1} w` (half levels) or `w` indexing the moment matrix, as letters.
pub fn index_words(pr: &Problem) -> Vec<Word> {
    let n = pr.level.floor();
    let (d, k) = match pr.mode {
        Mode::Full => (pr.d, pr.k),
        Mode::BasesOnly => (1, pr.k),
    };
    let alphabet: Vec<Letter> = (0..k as u8)
        .flat_map(|b| (0..d as u8).map(move |e| Letter::new(e, b)))
        .collect();
    let mut out: Vec<Word> = vec![if pr.level.is_half() {
        vec![Letter::new(0, 0)]
    } else {
        Vec::new()
    }];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&l| {
                    let mut w2 = w.clone();
                    w2.push(l);
                    w2
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::word::word_from_pairs;

    #[test]
    fn level_parsing() {
        assert_eq!("4.5".parse::<Level>().unwrap(), Level::half(4));
        assert_eq!("5".parse::<Level>().unwrap(), Level::integer(5));
        assert_eq!("2.50".parse::<Level>().unwrap().twice(), 5);
        assert!("4.25".parse::<Level>().is_err());
        assert!("0.5".parse::<Level>().is_err());
        assert_eq!(Level::half(4).to_string(), "4.5");
        assert_eq!(Level::half(4).index_len(), 5);
    }

    #[test]
    fn pruning_examples() {
        let t2 = prune_patterns(set_partitions(2, 4));
        assert_eq!(t2, vec![SetPartition::from_rgs(&[0, 1])]);
        let c = OrbitClass {
            p: SetPartition::from_parts(vec![vec![0, 2], vec![1]]),
            q: vec![
                SetPartition::from_parts(vec![vec![0, 2]]),
                SetPartition::from_parts(vec![vec![1]]),
            ],
        };
        assert!(prune_orbit_classes(vec![c.clone()]).is_empty());
        let single = orbit_classes(1, 3, 3);
        assert_eq!(prune_orbit_classes(single.clone()), single);
    }

    #[test]
    fn entry_examples() {
        let mut r = Reducer::new(3, 3);
        let u = WordVector::unit(word_from_pairs(&[(1, 1)]));
        let v = WordVector::unit(word_from_pairs(&[(1, 2)]));
        let w = WordVector::unit(word_from_pairs(&[(2, 1)]));
        assert_eq!(moment_entry(&u, &u, &mut r).unwrap(), Form::constant(rat(1, 1)));
        assert_eq!(moment_entry(&u, &v, &mut r).unwrap(), Form::constant(rat(1, 3)));
        assert!(moment_entry(&u, &w, &mut r).unwrap().is_zero());
    }

    #[test]
    fn sizes_follow_table_convention() {
        let p = Problem::new(2, 4, Level::half(4), Mode::Full).unwrap();
        assert_eq!(p.size(), 4096);
        let p = Problem::new(2, 4, Level::half(4), Mode::BasesOnly).unwrap();
        assert_eq!(p.size(), 256);
    }

    #[test]
    fn blocks_match_counts_and_are_symmetric() {
        for (d, k, lvl, mode) in [
            (2, 2, Level::integer(2), Mode::Full),
            (2, 3, Level::half(1), Mode::Full),
            (2, 4, Level::half(2), Mode::BasesOnly),
            (2, 4, Level::integer(3), Mode::BasesOnly),
        ] {
            let pr = Problem::new(d, k, lvl, mode).unwrap();
            let inst = assemble_instance(&pr, lvl.twice()).unwrap();
            let counted: Vec<usize> = block_sizes(&pr, true).into_iter().map(|(_, m)| m).collect();
            assert_eq!(inst.block_sizes(), counted, "{d} {k} {lvl} {mode}");
            assert!(inst.blocks.iter().all(Block::is_symmetric));
            for b in &inst.blocks {
                for f in b.entries.iter().flatten() {
                    assert!(f.coeffs.keys().all(|&v| v < inst.free.len()));
                }
            }
        }
    }

    #[test]
    fn index_word_count() {
        let pr = Problem::new(2, 3, Level::half(2), Mode::Full).unwrap();
        assert_eq!(index_words(&pr).len(), 36);
        assert!(index_words(&pr).iter().all(|w| w[0] == Letter::new(0, 0)));
    }
}
