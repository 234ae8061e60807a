//! Partitions, set partitions, orbit classes and semistandard tableaux.

use std::fmt;

/// An integer partition, parts weakly decreasing. The empty partition is allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Partition(pub Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    /// `(n - q, 1^q)`, with the leading part dropped when it is zero.
    pub fn hook(n: usize, q: usize) -> Self {
        assert!(q <= n);
        let mut parts = Vec::with_capacity(q + 1);
        if n > q {
            parts.push(n - q);
        }
        parts.extend(std::iter::repeat_n(1, q));
        Partition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn height(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of column `c` (0-based).
    pub fn column_len(&self, c: usize) -> usize {
        self.0.iter().take_while(|&&p| p > c).count()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A list of partitions, one per partition of `d` in the ν-list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MultiPartition(pub Vec<Partition>);

impl MultiPartition {
    pub fn weight(&self) -> usize {
        self.0.iter().map(Partition::weight).sum()
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// All partitions of `n` in descending lexicographic order; `n = 0` gives the empty partition.
pub fn integer_partitions(n: usize) -> Vec<Partition> {
    fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// A set partition of `{0, .., n-1}`; parts sorted by minimum, elements sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetPartition {
    pub parts: Vec<Vec<usize>>,
}

impl SetPartition {
    /// Builds from a restricted growth string.
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let r = rgs.iter().map(|&x| x + 1).max().unwrap_or(0);
        let mut parts = vec![Vec::new(); r];
        for (i, &b) in rgs.iter().enumerate() {
            parts[b].push(i);
        }
        SetPartition { parts }
    }

    /// Canonicalizes arbitrary disjoint parts over an arbitrary ground set.
    pub fn from_parts(mut parts: Vec<Vec<usize>>) -> Self {
        parts.retain(|p| !p.is_empty());
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.sort_unstable_by_key(|p| p[0]);
        SetPartition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn ground_size(&self) -> usize {
        self.parts.iter().map(Vec::len).sum()
    }

    /// Restricted growth string over the sorted ground set.
    pub fn rgs(&self) -> Vec<usize> {
        let mut ground: Vec<usize> = self.parts.iter().flatten().copied().collect();
        ground.sort_unstable();
        let mut out = vec![0; ground.len()];
        for (b, part) in self.parts.iter().enumerate() {
            for x in part {
                let pos = ground.binary_search(x).unwrap();
                out[pos] = b;
            }
        }
        out
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in p.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Restricted growth strings of length `n` with at most `max_parts` distinct values.
pub fn restricted_growth_strings(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max_parts: usize, cur: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=used.min(max_parts.saturating_sub(1)) {
            cur.push(b);
            rec(n, max_parts, cur, used.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
        return out;
    }
    if max_parts == 0 {
        return out;
    }
    rec(n, max_parts, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Every set partition of `[n]` with at most `max_parts` parts.
pub fn set_partitions(n: usize, max_parts: usize) -> Vec<SetPartition> {
    restricted_growth_strings(n, max_parts)
        .iter()
        .map(|r| SetPartition::from_rgs(r))
        .collect()
}

/// An orbit of `([d]×[k])^t` under `S_d ≀ S_k`: positions grouped by basis (`p`),
/// and each basis group split by element (`q[i]` partitions `p.parts[i]`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitClass {
    pub p: SetPartition,
    pub q: Vec<SetPartition>,
}

impl OrbitClass {
    pub fn len(&self) -> usize {
        self.p.ground_size()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn r(&self) -> usize {
        self.p.len()
    }

    /// Sizes `q_i = |Q_i|`.
    pub fn q_sizes(&self) -> Vec<usize> {
        self.q.iter().map(SetPartition::len).collect()
    }

    /// The canonical word: position in `P_i` and `Q_{i,b}` gets letter `(b, i)`.
    pub fn canonical_word(&self) -> Vec<(usize, usize)> {
        let mut w = vec![(0, 0); self.len()];
        for (i, qi) in self.q.iter().enumerate() {
            for (b, part) in qi.parts.iter().enumerate() {
                for &pos in part {
                    w[pos] = (b, i);
                }
            }
        }
        w
    }

    /// Classifies a word of `(element, basis)` letters.
    pub fn of_word(word: &[(usize, usize)]) -> Self {
        let mut basis_parts: Vec<(usize, Vec<usize>)> = Vec::new();
        for (pos, &(_, j)) in word.iter().enumerate() {
            match basis_parts.iter_mut().find(|(b, _)| *b == j) {
                Some((_, v)) => v.push(pos),
                None => basis_parts.push((j, vec![pos])),
            }
        }
        let mut q = Vec::new();
        let mut p = Vec::new();
        for (_, positions) in basis_parts {
            let mut elem_parts: Vec<(usize, Vec<usize>)> = Vec::new();
            for &pos in &positions {
                let e = word[pos].0;
                match elem_parts.iter_mut().find(|(x, _)| *x == e) {
                    Some((_, v)) => v.push(pos),
                    None => elem_parts.push((e, vec![pos])),
                }
            }
            q.push(SetPartition::from_parts(
                elem_parts.into_iter().map(|(_, v)| v).collect(),
            ));
            p.push(positions);
        }
        OrbitClass {
            p: SetPartition::from_parts(p),
            q,
        }
    }
}

impl fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.p)?;
        for (i, q) in self.q.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "]")
    }
}

/// Refinements of a part, as set partitions over the part's own positions.
fn refinements(part: &[usize], max_parts: usize) -> Vec<SetPartition> {
    restricted_growth_strings(part.len(), max_parts)
        .into_iter()
        .map(|rgs| {
            let r = rgs.iter().max().map_or(0, |m| m + 1);
            let mut parts = vec![Vec::new(); r];
            for (idx, b) in rgs.into_iter().enumerate() {
                parts[b].push(part[idx]);
            }
            SetPartition { parts }
        })
        .collect()
}

/// All index tuples `(i_0, ..)` with `i_a < sizes[a]`, last index fastest.
pub fn cartesian(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &n in sizes {
        let mut next = Vec::with_capacity(out.len() * n);
        for prefix in &out {
            for i in 0..n {
                let mut v = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// One class per orbit of `([d]×[k])^t` under `S_d ≀ S_k`, ordered by `P` then `Q`.
pub fn orbit_classes(t: usize, k: usize, d: usize) -> Vec<OrbitClass> {
    let mut out = Vec::new();
    for p in set_partitions(t, k) {
        let options: Vec<Vec<SetPartition>> = p.parts.iter().map(|part| refinements(part, d)).collect();
        for idx in cartesian(&options.iter().map(Vec::len).collect::<Vec<_>>()) {
            out.push(OrbitClass {
                p: p.clone(),
                q: idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect(),
            });
        }
    }
    out
}

/// A tableau stored row by row; entries are 0-based content indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tableau {
    pub rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    /// The row-major tableau with entries `0, 1, .., n-1`.
    pub fn canonical(shape: &Partition) -> Self {
        let mut next = 0;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Tableau { rows }
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| ((r, c), v)))
    }

    pub fn is_semistandard(&self) -> bool {
        for row in &self.rows {
            if row.windows(2).any(|w| w[0] > w[1]) {
                return false;
            }
        }
        for r in 1..self.rows.len() {
            for c in 0..self.rows[r].len() {
                if self.rows[r][c] <= self.rows[r - 1][c] {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, "/")?;
            }
            for v in row {
                write!(f, "{}", v + 1)?;
            }
        }
        Ok(())
    }
}

/// All semistandard tableaux of `shape` with `content[a]` entries equal to `a`.
/// Zero entries in `content` are allowed.
pub fn semistandard_tableaux(shape: &Partition, content: &[usize]) -> Vec<Tableau> {
    if shape.weight() != content.iter().sum::<usize>() {
        return Vec::new();
    }
    // Add each value as a horizontal strip, tracking the current inner shape.
    fn rec(shape: &[usize], content: &[usize], value: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if value == content.len() {
            out.push(Tableau { rows: cur.clone() });
            return;
        }
        let inner: Vec<usize> = cur.iter().map(Vec::len).collect();
        let mut adds = vec![0usize; shape.len()];
        strip(shape, content, value, &inner, 0, content[value], &mut adds, cur, out);
    }
    #[allow(clippy::too_many_arguments)]
    fn strip(
        shape: &[usize],
        content: &[usize],
        value: usize,
        inner: &[usize],
        row: usize,
        remaining: usize,
        adds: &mut Vec<usize>,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Tableau>,
    ) {
        if row == shape.len() {
            if remaining == 0 {
                for (r, &a) in adds.iter().enumerate() {
                    cur[r].extend(std::iter::repeat_n(value, a));
                }
                rec(shape, content, value + 1, cur, out);
                for (r, &a) in adds.iter().enumerate() {
                    let l = cur[r].len();
                    cur[r].truncate(l - a);
                }
            }
            return;
        }
        // New cells in this row must sit below cells of the previous inner shape.
        let cap_shape = shape[row] - inner[row];
        let cap_strip = if row == 0 {
            usize::MAX
        } else {
            inner[row - 1] - inner[row]
        };
        let max_add = cap_shape.min(cap_strip).min(remaining);
        for a in 0..=max_add {
            adds[row] = a;
            strip(shape, content, value, inner, row + 1, remaining - a, adds, cur, out);
        }
        adds[row] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![Vec::new(); shape.height()];
    rec(shape.parts(), content, 0, &mut cur, &mut out);
    out
}

/// Kostka number `K(shape, content)`.
pub fn kostka(shape: &Partition, content: &[usize]) -> usize {
    semistandard_tableaux(shape, content).len()
}

/// Number of set partitions of `[n]`.
pub fn bell_number(n: usize) -> u128 {
    let mut b = vec![1u128];
    for m in 0..n {
        let mut next = 0u128;
        let mut binom = 1u128;
        for (j, bj) in b.iter().enumerate() {
            next += binom * bj;
            binom = binom * (m - j) as u128 / (j + 1) as u128;
        }
        b.push(next);
    }
    b[n]
}

/// Number of pairs `(P, P')` with `P'` refining `P`, by enumeration.
pub fn refinement_pair_count(n: usize) -> u128 {
    set_partitions(n, n.max(1))
        .iter()
        .map(|p| {
            p.parts
                .iter()
                .map(|part| restricted_growth_strings(part.len(), part.len()).len() as u128)
                .product::<u128>()
        })
        .sum()
}

/// Number of standard Young tableaux of `shape` by the hook-length formula.
pub fn hook_length_count(shape: &Partition) -> u128 {
    let n = shape.weight();
    let mut num: u128 = (1..=n as u128).product();
    let mut hooks: Vec<u128> = Vec::new();
    for (r, &len) in shape.parts().iter().enumerate() {
        for c in 0..len {
            let arm = len - c - 1;
            let leg = shape.column_len(c) - r - 1;
            hooks.push((arm + leg + 1) as u128);
        }
    }
    for h in hooks {
        num /= h;
    }
    num
}

/// `n!`
pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    // Exhaustive orbit count of words of length t over [d]x[k] under relabeling,
    // used as an oracle for `orbit_classes`.
    fn brute_orbit_count(t: usize, k: usize, d: usize) -> usize {
        let mut seen = std::collections::HashSet::new();
        let total = (d * k).pow(t as u32);
        for code in 0..total {
            let mut c = code;
            let word: Vec<(usize, usize)> = (0..t)
                .map(|_| {
                    let x = c % (d * k);
                    c /= d * k;
                    (x % d, x / d)
                })
                .collect();
            seen.insert(OrbitClass::of_word(&word));
        }
        seen.len()
    }

    #[test]
    fn partitions_in_descending_lex_order() {
        assert_eq!(integer_partitions(1), vec![Partition(vec![1])]);
        assert_eq!(
            integer_partitions(3),
            vec![Partition(vec![3]), Partition(vec![2, 1]), Partition(vec![1, 1, 1])]
        );
        assert_eq!(integer_partitions(6).len(), 11);
        for n in 1..9 {
            let ps = integer_partitions(n);
            assert!(ps.windows(2).all(|w| w[0] > w[1]));
            assert!(ps.iter().all(|p| p.weight() == n));
        }
    }

    #[test]
    fn set_partition_counts() {
        assert_eq!(set_partitions(3, 3).len(), 5);
        assert_eq!(set_partitions(3, 1).len(), 1);
        assert_eq!(set_partitions(3, 1)[0].parts, vec![vec![0, 1, 2]]);
        assert_eq!(set_partitions(4, 2).len(), 8);
        for n in 0..=10 {
            assert_eq!(set_partitions(n, n.max(1)).len() as u128, bell_number(n));
        }
    }

    #[test]
    fn bell_and_refinement_values() {
        let bell = [1u128, 1, 2, 5, 15, 52, 203, 877, 4140, 21147];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(bell_number(n), b);
        }
        assert_eq!(refinement_pair_count(2), 3);
        assert_eq!(refinement_pair_count(4), 60);
        assert_eq!(refinement_pair_count(6), 2471);
    }

    #[test]
    fn orbit_class_counts() {
        assert_eq!(orbit_classes(1, 3, 3).len(), 1);
        assert_eq!(orbit_classes(2, 2, 2).len(), 3);
        assert_eq!(orbit_classes(4, 4, 4).len(), 60);
        for t in 1..=4 {
            for k in 1..=3 {
                for d in 1..=3 {
                    assert_eq!(orbit_classes(t, k, d).len(), brute_orbit_count(t, k, d));
                }
            }
        }
    }

    #[test]
    fn orbit_classes_round_trip() {
        for t in 1..=4 {
            for class in orbit_classes(t, 4, 4) {
                assert_eq!(OrbitClass::of_word(&class.canonical_word()), class);
            }
        }
    }

    #[test]
    fn tableaux_examples() {
        let k = 5;
        for r in 0..=k {
            let content: Vec<usize> = std::iter::once(k - r).chain(std::iter::repeat_n(1, r)).collect();
            assert_eq!(semistandard_tableaux(&Partition(vec![k]), &content).len(), 1);
        }
        assert_eq!(semistandard_tableaux(&Partition(vec![2, 1]), &[1, 1, 1]).len(), 2);
        assert_eq!(semistandard_tableaux(&Partition(vec![1, 1, 1]), &[2, 1]).len(), 0);
        for t in semistandard_tableaux(&Partition(vec![3, 2, 1]), &[2, 2, 1, 1]) {
            assert!(t.is_semistandard());
        }
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(hook_length_count(&Partition(vec![4])), 1);
        assert_eq!(hook_length_count(&Partition(vec![2, 1])), 2);
        assert_eq!(hook_length_count(&Partition(vec![3, 2])), 5);
        for n in 1..=6 {
            let s: u128 = integer_partitions(n).iter().map(|l| hook_length_count(l).pow(2)).sum();
            assert_eq!(s, factorial(n));
            for l in integer_partitions(n) {
                let ones = vec![1; n];
                assert_eq!(kostka(&l, &ones) as u128, hook_length_count(&l));
            }
        }
    }
}
