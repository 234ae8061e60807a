//! Representative sets for `S_d ≀ S_k` on `([d]×[k])^t` and for the stabilizer
//! `S_{d-1} × (S_d ≀ S_{k-1})` of `x_{1,1}` on the half-level index set.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;

use crate::combinatorics::{
    cartesian, factorial, hook_length_count, integer_partitions, kostka, orbit_classes, semistandard_tableaux,
    MultiPartition, OrbitClass, Partition, Tableau,
};
use crate::specht::{generator_vector, hook_content, SparseVec, Tabloid, TabloidVector, WordVector};
use crate::word::{Letter, Word};

/// `(σ, τ)` data of one wreath representative vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WreathLabel {
    pub class: OrbitClass,
    pub j: Vec<usize>,
    pub sigma: Vec<Tableau>,
    pub tau: Vec<Tableau>,
}

/// Label of a half-level vector: the `S_{d-1}` tableau for the fixed basis, then the
/// wreath data on the remaining bases.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfLabel {
    pub class: OrbitClass,
    pub rho: Tableau,
    pub j: Vec<usize>,
    pub sigma: Vec<Tableau>,
    pub tau: Vec<Tableau>,
}

pub type WreathRepSet = Vec<(MultiPartition, Vec<(WreathLabel, WordVector)>)>;
pub type HalfRepSet = Vec<((Partition, MultiPartition), Vec<(HalfLabel, WordVector)>)>;

/// `γ¹ = (k-r, 1^{|j^{-1}(1)|})`, `γ^a = (1^{|j^{-1}(a)|})` for `a >= 2` (0-based `a` here).
pub fn gamma_profile(j: &[usize], r: usize, k: usize, ell: usize) -> Vec<Partition> {
    gamma_contents(j, r, k, ell).into_iter().map(Partition::new).collect()
}

/// The γ profile as compositions; the first keeps its `k - r` entry even when zero.
fn gamma_contents(j: &[usize], r: usize, k: usize, ell: usize) -> Vec<Vec<usize>> {
    let mut counts = vec![0usize; ell];
    for &a in j {
        counts[a] += 1;
    }
    (0..ell)
        .map(|a| {
            if a == 0 {
                hook_content(k - r + counts[0], counts[0])
            } else {
                vec![1; counts[a]]
            }
        })
        .collect()
}

/// One part of an orbit class, with its element groups, in word positions.
#[derive(Clone, Debug)]
struct Part {
    groups: Vec<Vec<usize>>,
}

/// Letters at chosen positions, sorted by position.
type Fragment = SparseVec<Vec<(usize, Letter)>>;

struct NuData {
    nu: Vec<Partition>,
    // For each q: list of (nu index, σ, σ·e_ν) with nonempty tableau set.
    options: HashMap<usize, Vec<(usize, Tableau, TabloidVector)>>,
}

impl NuData {
    fn new(d: usize, build_vectors: bool, max_q: usize) -> Self {
        Self::with_order(d, build_vectors, max_q, false)
    }

    fn with_order(d: usize, build_vectors: bool, max_q: usize, reversed: bool) -> Self {
        let mut nu = integer_partitions(d);
        if reversed {
            nu.reverse();
        }
        let mut options = HashMap::new();
        for q in 1..=max_q.min(d) {
            let content = hook_content(d, q);
            let mut list = Vec::new();
            for (a, shape) in nu.iter().enumerate() {
                // ν has no tableau of this content when ν_1 < d - q or height > q + 1.
                if shape.parts()[0] < d - q || shape.height() > q + 1 {
                    continue;
                }
                for s in semistandard_tableaux(shape, &content) {
                    let v = if build_vectors {
                        generator_vector(&s, shape, &content)
                    } else {
                        TabloidVector::new()
                    };
                    list.push((a, s, v));
                }
            }
            options.insert(q, list);
        }
        NuData { nu, options }
    }
}

/// Enumerates `Λ̲` with every `T_{Λ^a, γ^a}` nonempty, with the tableau choices.
fn lambda_choices(contents: &[Vec<usize>]) -> Vec<(MultiPartition, Vec<Tableau>)> {
    let per: Vec<Vec<(Partition, Tableau)>> = contents
        .iter()
        .map(|c| {
            let n: usize = c.iter().sum();
            integer_partitions(n)
                .into_iter()
                .flat_map(|l| semistandard_tableaux(&l, c).into_iter().map(move |t| (l.clone(), t)))
                .collect()
        })
        .collect();
    cartesian(&per.iter().map(Vec::len).collect::<Vec<_>>())
        .into_iter()
        .map(|idx| {
            let lam = MultiPartition(idx.iter().zip(&per).map(|(&i, p)| p[i].0.clone()).collect());
            let taus = idx.iter().zip(&per).map(|(&i, p)| p[i].1.clone()).collect();
            (lam, taus)
        })
        .collect()
}

/// Vectors of the wreath decomposition for the given parts, using basis labels
/// `bases` and elements `0..d`. Each entry: `(Λ̲, j, σ, τ, fragment)`.
#[allow(clippy::type_complexity)]
fn wreath_fragments(
    parts: &[Part],
    bases: &[u8],
    nud: &NuData,
) -> Vec<(MultiPartition, Vec<usize>, Vec<Tableau>, Vec<Tableau>, Fragment)> {
    let ell = nud.nu.len();
    let k = bases.len();
    let r = parts.len();
    assert!(r <= k);
    let opts: Vec<&Vec<(usize, Tableau, TabloidVector)>> =
        parts.iter().map(|p| &nud.options[&p.groups.len()]).collect();
    let mut out = Vec::new();
    for choice in cartesian(&opts.iter().map(|o| o.len()).collect::<Vec<_>>()) {
        let j: Vec<usize> = choice.iter().zip(&opts).map(|(&c, o)| o[c].0).collect();
        let sigma: Vec<Tableau> = choice.iter().zip(&opts).map(|(&c, o)| o[c].1.clone()).collect();
        let contents = gamma_contents(&j, r, k, ell);
        // Consecutive label blocks per component: the identity coset.
        let mut offsets = Vec::with_capacity(ell);
        let mut acc = 0;
        for c in &contents {
            offsets.push(acc);
            acc += c.iter().sum::<usize>();
        }
        // Which row of which component gives part i its basis label.
        let mut seen = vec![0usize; ell];
        let slot: Vec<(usize, usize)> = j
            .iter()
            .map(|&a| {
                let m = seen[a];
                seen[a] += 1;
                (a, if a == 0 { m + 1 } else { m })
            })
            .collect();
        for (lam, taus) in lambda_choices(&contents) {
            let gvecs: Vec<TabloidVector> = taus
                .iter()
                .zip(&lam.0)
                .zip(&contents)
                .map(|((t, l), c)| generator_vector(t, l, c))
                .collect();
            let mut frag = Fragment::new();
            let d_terms: Vec<Vec<(&Tabloid, &BigRational)>> = choice
                .iter()
                .zip(&opts)
                .map(|(&c, o)| o[c].2.terms.iter().collect())
                .collect();
            let k_terms: Vec<Vec<(&Tabloid, &BigRational)>> = gvecs.iter().map(|g| g.terms.iter().collect()).collect();
            for kidx in cartesian(&k_terms.iter().map(Vec::len).collect::<Vec<_>>()) {
                let mut coef_k = BigRational::from_integer(1.into());
                for (a, &i) in kidx.iter().enumerate() {
                    coef_k *= k_terms[a][i].1;
                }
                let basis_of: Vec<u8> = slot
                    .iter()
                    .map(|&(a, row)| {
                        let tab = k_terms[a][kidx[a]].0;
                        bases[offsets[a] + tab.rows[row][0]]
                    })
                    .collect();
                for didx in cartesian(&d_terms.iter().map(Vec::len).collect::<Vec<_>>()) {
                    let mut coef = coef_k.clone();
                    let mut letters: Vec<(usize, Letter)> = Vec::new();
                    for (i, &di) in didx.iter().enumerate() {
                        let (tab, c) = d_terms[i][di];
                        coef *= c;
                        for (b, group) in parts[i].groups.iter().enumerate() {
                            let e = tab.rows[b + 1][0] as u8;
                            for &pos in group {
                                letters.push((pos, Letter::new(e, basis_of[i])));
                            }
                        }
                    }
                    letters.sort_unstable_by_key(|(p, _)| *p);
                    frag.add(letters, coef);
                }
            }
            out.push((lam, j.clone(), sigma.clone(), taus, frag));
        }
    }
    out
}

fn class_parts(class: &OrbitClass) -> Vec<Part> {
    class
        .q
        .iter()
        .map(|q| Part {
            groups: q.parts.clone(),
        })
        .collect()
}

fn fragment_to_word(key: &[(usize, Letter)]) -> Word {
    key.iter().map(|(_, l)| *l).collect()
}

/// Representative set for `S_d ≀ S_k` acting on `([d]×[k])^t`.
pub fn wreath_representative_set(d: usize, k: usize, t: usize) -> WreathRepSet {
    wreath_representative_set_with(d, k, orbit_classes(t, k, d))
}

/// As [`wreath_representative_set`], restricted to the given classes.
pub fn wreath_representative_set_with(d: usize, k: usize, classes: Vec<OrbitClass>) -> WreathRepSet {
    wreath_build(d, k, classes, false)
}

/// Test hook: builds the set with the `ν ⊢ d` order reversed, which breaks the
/// coherence of the construction.
#[doc(hidden)]
pub fn wreath_representative_set_corrupted(d: usize, k: usize, t: usize) -> WreathRepSet {
    wreath_build(d, k, orbit_classes(t, k, d), true)
}

fn wreath_build(d: usize, k: usize, classes: Vec<OrbitClass>, reversed_nu: bool) -> WreathRepSet {
    let max_len = classes.iter().map(OrbitClass::len).max().unwrap_or(1);
    let nud = NuData::with_order(d, true, max_len, reversed_nu);
    let bases: Vec<u8> = (0..k as u8).collect();
    let mut blocks: BTreeMap<MultiPartition, Vec<(WreathLabel, WordVector)>> = BTreeMap::new();
    for class in classes {
        for (lam, j, sigma, tau, frag) in wreath_fragments(&class_parts(&class), &bases, &nud) {
            let mut u = WordVector::new();
            for (key, c) in frag.terms {
                u.add(fragment_to_word(&key), c);
            }
            blocks.entry(lam).or_default().push((
                WreathLabel {
                    class: class.clone(),
                    j,
                    sigma,
                    tau,
                },
                u,
            ));
        }
    }
    blocks.into_iter().collect()
}

/// Representative set for `S_{d-1} × (S_d ≀ S_{k-1})` on words `x_{1,1} w`, `|w| = t`.
/// Vectors are over the full words of length `t + 1`.
pub fn half_level_representative_set(d: usize, k: usize, t: usize) -> HalfRepSet {
    half_level_with(d, k, orbit_classes(t + 1, k, d))
}

/// As [`half_level_representative_set`], restricted to the given classes of length `t + 1`.
pub fn half_level_with(d: usize, k: usize, classes: Vec<OrbitClass>) -> HalfRepSet {
    let max_len = classes.iter().map(OrbitClass::len).max().unwrap_or(1);
    let nud = NuData::new(d, true, max_len);
    let rest_bases: Vec<u8> = (1..k as u8).collect();
    let mut blocks: BTreeMap<(Partition, MultiPartition), Vec<(HalfLabel, WordVector)>> = BTreeMap::new();
    for class in classes {
        let parts = class_parts(&class);
        let first = &parts[0];
        let q1 = first.groups.len();
        let content = hook_content(d - 1, q1 - 1);
        let rest = wreath_fragments(&parts[1..], &rest_bases, &nud);
        for lambda in integer_partitions(d - 1) {
            for rho in semistandard_tableaux(&lambda, &content) {
                let sv = generator_vector(&rho, &lambda, &content);
                for (lam, j, sigma, tau, frag) in &rest {
                    let mut u = WordVector::new();
                    for (tab, c1) in &sv.terms {
                        let mut head: Vec<(usize, Letter)> = Vec::new();
                        for (b, group) in first.groups.iter().enumerate() {
                            let e = if b == 0 { 0 } else { 1 + tab.rows[b][0] as u8 };
                            for &pos in group {
                                head.push((pos, Letter::new(e, 0)));
                            }
                        }
                        for (key, c2) in &frag.terms {
                            let mut letters = head.clone();
                            letters.extend_from_slice(key);
                            letters.sort_unstable_by_key(|(p, _)| *p);
                            u.add(fragment_to_word(&letters), c1 * c2);
                        }
                    }
                    blocks.entry((lambda.clone(), lam.clone())).or_default().push((
                        HalfLabel {
                            class: class.clone(),
                            rho: rho.clone(),
                            j: j.clone(),
                            sigma: sigma.clone(),
                            tau: tau.clone(),
                        },
                        u,
                    ));
                }
            }
        }
    }
    blocks.into_iter().collect()
}

/// Kostka numbers with a cache.
#[derive(Default)]
pub struct KostkaCache {
    cache: HashMap<(Partition, Vec<usize>), usize>,
}

impl KostkaCache {
    pub fn get(&mut self, shape: &Partition, content: &[usize]) -> usize {
        let key = (shape.clone(), content.to_vec());
        if let Some(&v) = self.cache.get(&key) {
            return v;
        }
        let v = kostka(shape, content);
        self.cache.insert(key, v);
        v
    }
}

/// Multiplicity of each `Λ̲` contributed by one class, over bases of size `k`.
pub fn wreath_class_counts(
    q_sizes: &[usize],
    d: usize,
    k: usize,
    kc: &mut KostkaCache,
) -> BTreeMap<MultiPartition, usize> {
    let nu = integer_partitions(d);
    let ell = nu.len();
    let r = q_sizes.len();
    let mut out = BTreeMap::new();
    if r > k {
        return out;
    }
    for j in cartesian(&vec![ell; r]) {
        let mut m = 1usize;
        for (i, &a) in j.iter().enumerate() {
            m *= kc.get(&nu[a], &hook_content(d, q_sizes[i]));
            if m == 0 {
                break;
            }
        }
        if m == 0 {
            continue;
        }
        let contents = gamma_contents(&j, r, k, ell);
        let per: Vec<Vec<(Partition, usize)>> = contents
            .iter()
            .map(|c| {
                integer_partitions(c.iter().sum())
                    .into_iter()
                    .filter_map(|l| {
                        let n = kc.get(&l, c);
                        (n > 0).then_some((l, n))
                    })
                    .collect()
            })
            .collect();
        for idx in cartesian(&per.iter().map(Vec::len).collect::<Vec<_>>()) {
            let lam = MultiPartition(idx.iter().zip(&per).map(|(&i, p)| p[i].0.clone()).collect());
            let n: usize = idx.iter().zip(&per).map(|(&i, p)| p[i].1).product();
            *out.entry(lam).or_insert(0) += m * n;
        }
    }
    out
}

/// Block sizes of the wreath representative set over the given classes.
pub fn wreath_multiplicities(d: usize, k: usize, classes: &[OrbitClass]) -> BTreeMap<MultiPartition, usize> {
    let mut kc = KostkaCache::default();
    let mut by_q: HashMap<Vec<usize>, BTreeMap<MultiPartition, usize>> = HashMap::new();
    let mut out = BTreeMap::new();
    for c in classes {
        let q = c.q_sizes();
        let counts = by_q
            .entry(q.clone())
            .or_insert_with(|| wreath_class_counts(&q, d, k, &mut kc))
            .clone();
        for (l, m) in counts {
            *out.entry(l).or_insert(0) += m;
        }
    }
    out
}

/// Block sizes of the half-level representative set over the given classes.
pub fn half_level_multiplicities(
    d: usize,
    k: usize,
    classes: &[OrbitClass],
) -> BTreeMap<(Partition, MultiPartition), usize> {
    let mut kc = KostkaCache::default();
    let mut by_q: HashMap<Vec<usize>, BTreeMap<MultiPartition, usize>> = HashMap::new();
    let mut out = BTreeMap::new();
    for c in classes {
        let q = c.q_sizes();
        let rest = by_q
            .entry(q[1..].to_vec())
            .or_insert_with(|| wreath_class_counts(&q[1..], d, k - 1, &mut kc))
            .clone();
        let content = hook_content(d - 1, q[0] - 1);
        for lambda in integer_partitions(d - 1) {
            let a = kc.get(&lambda, &content);
            if a == 0 {
                continue;
            }
            for (l, m) in &rest {
                *out.entry((lambda.clone(), l.clone())).or_insert(0) += a * m;
            }
        }
    }
    out
}

/// `dim S^Λ̲` for the wreath product irreducible indexed by `Λ̲`.
pub fn wreath_irrep_dimension(d: usize, lam: &MultiPartition) -> u128 {
    let nu = integer_partitions(d);
    let k = lam.weight();
    let mut dim = factorial(k);
    for (a, l) in lam.0.iter().enumerate() {
        dim /= factorial(l.weight());
        dim *= hook_length_count(l) * hook_length_count(&nu[a]).pow(l.weight() as u32);
    }
    dim
}

/// Checks `Σ m_Λ̲ dim S^Λ̲ = (dk)^t`; on failure returns the offending total.
pub fn total_dimension_check(
    mults: &BTreeMap<MultiPartition, usize>,
    d: usize,
    k: usize,
    t: usize,
) -> Result<(), u128> {
    let total: u128 = mults
        .iter()
        .map(|(l, &m)| m as u128 * wreath_irrep_dimension(d, l))
        .sum();
    if total == ((d * k) as u128).pow(t as u32) {
        Ok(())
    } else {
        Err(total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::refinement_pair_count;

    #[test]
    fn gamma_examples() {
        let ell = 5;
        let g = gamma_profile(&[0], 1, 4, ell);
        assert_eq!(g[0], Partition(vec![3, 1]));
        assert!(g[1..].iter().all(Partition::is_empty));
        let g = gamma_profile(&[1], 1, 4, ell);
        assert_eq!(g[0], Partition(vec![3]));
        assert_eq!(g[1], Partition(vec![1]));
        let g = gamma_profile(&[1, 1], 2, 3, ell);
        assert_eq!(g[0], Partition(vec![1]));
        assert_eq!(g[1], Partition(vec![1, 1]));
    }

    #[test]
    fn level_one_blocks() {
        for (d, k) in [(2, 2), (3, 4), (4, 3)] {
            let rs = wreath_representative_set(d, k, 1);
            assert_eq!(rs.len(), 3);
            assert!(rs.iter().all(|(_, m)| m.len() == 1));
            let mults: BTreeMap<_, _> = rs.iter().map(|(l, m)| (l.clone(), m.len())).collect();
            assert!(total_dimension_check(&mults, d, k, 1).is_ok());
        }
    }

    #[test]
    fn counts_agree_with_vectors() {
        for (d, k, t) in [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3)] {
            let rs = wreath_representative_set(d, k, t);
            let built: BTreeMap<_, _> = rs.iter().map(|(l, m)| (l.clone(), m.len())).collect();
            assert_eq!(built, wreath_multiplicities(d, k, &orbit_classes(t, k, d)));
        }
    }

    #[test]
    fn square_sums() {
        let m = wreath_multiplicities(4, 4, &orbit_classes(2, 4, 4));
        assert_eq!(
            m.values().map(|x| x * x).sum::<usize>() as u128,
            refinement_pair_count(4)
        );
        let m = wreath_multiplicities(2, 2, &orbit_classes(2, 2, 2));
        assert_eq!(m.values().map(|x| x * x).sum::<usize>(), orbit_classes(4, 2, 2).len());
    }

    #[test]
    fn dimensions() {
        for d in 2..=3 {
            for k in 2..=3 {
                for t in 1..=3 {
                    let m = wreath_multiplicities(d, k, &orbit_classes(t, k, d));
                    assert!(total_dimension_check(&m, d, k, t).is_ok(), "{d} {k} {t}");
                }
            }
        }
    }

    #[test]
    fn half_level_counts_agree_with_vectors() {
        for (d, k, t) in [(2, 2, 1), (3, 3, 1), (2, 3, 2)] {
            let rs = half_level_representative_set(d, k, t);
            let built: BTreeMap<_, _> = rs.iter().map(|(l, m)| (l.clone(), m.len())).collect();
            assert_eq!(built, half_level_multiplicities(d, k, &orbit_classes(t + 1, k, d)));
            for (_, members) in &rs {
                for (_, u) in members {
                    assert!(!u.is_zero());
                    assert!(u.terms.keys().all(|w| w[0] == Letter::new(0, 0)));
                }
            }
        }
    }
}
