//! Brute-force check of the block diagonalization `Φ` on small index sets.
//!
//! Works with the explicit matrices indexed by all words, so it only scales to
//! a few thousand rows.

use std::collections::{BTreeMap, HashMap};

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{index_words, representative_blocks, Problem, RepBlock};
use crate::linalg::Echelon;
use crate::scalar::from_rational;
use crate::word::{orbit_key, orbit_key_fixed, Word};

/// Largest index set the oracle accepts.
pub const MAX_INDEX: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleReport {
    pub index_size: usize,
    pub orbits: usize,
    pub sum_squares: usize,
    pub phi_rank: usize,
    pub trials: usize,
    pub agreements: usize,
    pub identity_psd: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.orbits == self.sum_squares
            && self.phi_rank == self.orbits
            && self.agreements == self.trials
            && self.identity_psd
    }
}

struct Index {
    words: Vec<Word>,
    pos: HashMap<Word, usize>,
    orbit: Vec<usize>,
    n_orbits: usize,
}

fn index(pr: &Problem) -> Index {
    let words = index_words(pr);
    let n = words.len();
    let pos = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
    let fixed = pr.level.is_half();
    let mut ids: HashMap<Word, usize> = HashMap::new();
    let mut orbit = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let mut w = words[a].clone();
            w.extend_from_slice(&words[b]);
            let key = if fixed { orbit_key_fixed(&w) } else { orbit_key(&w) };
            let next = ids.len();
            orbit[a * n + b] = *ids.entry(key).or_insert(next);
        }
    }
    Index {
        words,
        pos,
        orbit,
        n_orbits: ids.len(),
    }
}

fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    m.clone().symmetric_eigen().eigenvalues.min()
}

fn scale(m: &DMatrix<f64>) -> f64 {
    m.amax().max(1.0)
}

/// Runs the oracle on the unpruned representative set of `pr`.
pub fn brute_force_phi_oracle(pr: &Problem, trials: usize, tol: f64, seed: u64) -> OracleReport {
    phi_oracle_with(pr, &representative_blocks(pr, false), trials, tol, seed)
}

/// Runs the oracle on an arbitrary candidate representative set.
pub fn phi_oracle_with(pr: &Problem, blocks: &[RepBlock], trials: usize, tol: f64, seed: u64) -> OracleReport {
    let idx = index(pr);
    let n = idx.words.len();
    assert!(n <= MAX_INDEX, "index set of size {n} is too large for the oracle");

    let sum_squares = blocks.iter().map(|b| b.members.len().pow(2)).sum();

    // Φ(E_O) for every orbit matrix E_O, one exact row per orbit.
    let mut rows: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); idx.n_orbits];
    let mut col = 0;
    for b in blocks {
        for (_, u) in &b.members {
            for (_, v) in &b.members {
                for (w1, c1) in &u.terms {
                    let i = idx.pos[w1];
                    for (w2, c2) in &v.terms {
                        let j = idx.pos[w2];
                        let e = rows[idx.orbit[i * n + j]]
                            .entry(col)
                            .or_insert_with(|| BigRational::from_integer(0.into()));
                        *e += c1 * c2;
                    }
                }
                col += 1;
            }
        }
    }
    let mut ech: Echelon<usize, BigRational> = Echelon::new();
    for mut r in rows {
        r.retain(|_, v| *v != BigRational::from_integer(0.into()));
        ech.insert(r);
    }
    let phi_rank = ech.rank();

    let dense: Vec<Vec<DVector<f64>>> = blocks
        .iter()
        .map(|b| {
            b.members
                .iter()
                .map(|(_, u)| {
                    let mut v = DVector::zeros(n);
                    for (w, c) in &u.terms {
                        v[idx.pos[w]] = from_rational::<f64>(c);
                    }
                    v
                })
                .collect()
        })
        .collect();
    let phi = |a: &DMatrix<f64>| -> Vec<DMatrix<f64>> {
        dense
            .iter()
            .map(|us| {
                let m = us.len();
                let au: Vec<DVector<f64>> = us.iter().map(|u| a * u).collect();
                DMatrix::from_fn(m, m, |p, q| us[p].dot(&au[q]))
            })
            .collect()
    };
    let blocks_psd = |bs: &[DMatrix<f64>]| bs.iter().all(|b| min_eigenvalue(b) >= -tol * scale(b));

    let identity_psd = blocks_psd(&phi(&DMatrix::identity(n, n)));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut agreements = 0;
    for _ in 0..trials {
        let x = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        let y = &x * x.transpose();
        let mut sums = vec![0.0; idx.n_orbits];
        let mut counts = vec![0usize; idx.n_orbits];
        for (o, v) in idx.orbit.iter().zip(y.iter()) {
            sums[*o] += v;
            counts[*o] += 1;
        }
        let mut a = DMatrix::from_fn(n, n, |i, j| {
            let o = idx.orbit[i * n + j];
            sums[o] / counts[o] as f64
        });
        // Shift so the smallest eigenvalue is ±ε, with ε well above the tolerance.
        let lmin = min_eigenvalue(&a);
        let s = scale(&a);
        let eps = rng.random_range(0.01..0.3) * s * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        for i in 0..n {
            a[(i, i)] += eps - lmin;
        }
        let a_psd = min_eigenvalue(&a) >= -tol * scale(&a);
        if a_psd == blocks_psd(&phi(&a)) {
            agreements += 1;
        }
    }

    OracleReport {
        index_size: n,
        orbits: idx.n_orbits,
        sum_squares,
        phi_rank,
        trials,
        agreements,
        identity_psd,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::{Level, Mode};

    #[test]
    fn smallest_cases_pass() {
        for (d, k, lvl) in [(2, 2, Level::integer(1)), (2, 3, Level::half(1))] {
            let pr = Problem::new(d, k, lvl, Mode::Full).unwrap();
            let r = brute_force_phi_oracle(&pr, 5, 1e-8, 1);
            assert!(r.passed(), "{r:?}");
        }
    }
}
