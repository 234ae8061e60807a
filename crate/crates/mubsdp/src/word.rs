//! Letters `x_{i,j}` and words over `[d]×[k]`, with the orderings used everywhere else.

use std::cmp::Ordering;
use std::fmt;

/// The letter `x_{elem, basis}`, both 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub elem: u8,
    pub basis: u8,
}

impl Letter {
    pub const fn new(elem: u8, basis: u8) -> Self {
        Letter { elem, basis }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{},{}", self.elem + 1, self.basis + 1)
    }
}

pub type Word = Vec<Letter>;

/// Builds a word from 1-based `(i, j)` pairs.
pub fn word_from_pairs(pairs: &[(u8, u8)]) -> Word {
    pairs.iter().map(|&(i, j)| Letter::new(i - 1, j - 1)).collect()
}

pub fn format_word(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter()
        .map(|l| format!("x{}{}", l.elem + 1, l.basis + 1))
        .collect::<Vec<_>>()
        .join("*")
}

/// Graded lexicographic order: degree, then basis sequence, then element sequence.
pub fn graded_lex_cmp(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len()
        .cmp(&b.len())
        .then_with(|| a.iter().map(|l| l.basis).cmp(b.iter().map(|l| l.basis)))
        .then_with(|| a.iter().map(|l| l.elem).cmp(b.iter().map(|l| l.elem)))
}

pub fn graded_lex_less(a: &[Letter], b: &[Letter]) -> bool {
    graded_lex_cmp(a, b) == Ordering::Less
}

/// Relabels bases by first appearance and, within each basis, elements by first appearance.
///
/// With `fix_first` the letter `x_{1,1}` keeps basis 0 and element 0 and no other
/// letter may take them. Labels must be below 16.
pub fn relabel(w: &[Letter], fix_first: bool) -> Word {
    const NONE: u8 = u8::MAX;
    let mut basis_map = [NONE; 16];
    let mut elem_map = [[NONE; 16]; 16];
    let mut next_elem = [0u8; 16];
    let mut next_basis = 0u8;
    if fix_first {
        basis_map[0] = 0;
        elem_map[0][0] = 0;
        next_elem[0] = 1;
        next_basis = 1;
    }
    let mut out = Vec::with_capacity(w.len());
    for l in w {
        let b = &mut basis_map[l.basis as usize];
        if *b == NONE {
            *b = next_basis;
            next_basis += 1;
        }
        let nb = *b as usize;
        let e = &mut elem_map[nb][l.elem as usize];
        if *e == NONE {
            *e = next_elem[nb];
            next_elem[nb] += 1;
        }
        out.push(Letter::new(*e, nb as u8));
    }
    out
}

/// Orbit key of a word under `S_d ≀ S_k` (positions are not rotated).
pub fn orbit_key(w: &[Letter]) -> Word {
    relabel(w, false)
}

/// Orbit key under the stabilizer of `x_{1,1}`, that is `S_{d-1} × (S_d ≀ S_{k-1})`.
pub fn orbit_key_fixed(w: &[Letter]) -> Word {
    relabel(w, true)
}

/// Packs a word of at most 15 letters with labels below 16 into an integer key.
pub fn pack(w: &[Letter]) -> u128 {
    debug_assert!(w.len() <= 15);
    let mut key: u128 = w.len() as u128;
    for l in w {
        debug_assert!(l.basis < 16 && l.elem < 16);
        key = (key << 8) | ((l.basis as u128) << 4) | l.elem as u128;
    }
    key
}

pub fn unpack(mut key: u128) -> Word {
    let mut letters = Vec::new();
    while key > 0xff {
        let byte = (key & 0xff) as u8;
        letters.push(Letter::new(byte & 0xf, byte >> 4));
        key >>= 8;
    }
    let n = key as usize;
    letters.truncate(n);
    letters.reverse();
    letters
}

/// `w*`: the reversed word (letters are Hermitian).
pub fn star(w: &[Letter]) -> Word {
    w.iter().rev().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_examples() {
        let x11 = word_from_pairs(&[(1, 1)]);
        assert!(graded_lex_less(&x11, &word_from_pairs(&[(1, 1), (1, 1)])));
        assert!(graded_lex_less(
            &word_from_pairs(&[(2, 1), (1, 2)]),
            &word_from_pairs(&[(1, 2), (2, 1)])
        ));
        assert!(graded_lex_less(
            &word_from_pairs(&[(1, 1), (2, 1)]),
            &word_from_pairs(&[(2, 1), (1, 1)])
        ));
    }

    #[test]
    fn pack_round_trip() {
        let w = word_from_pairs(&[(1, 1), (3, 2), (1, 1), (2, 4)]);
        assert_eq!(unpack(pack(&w)), w);
        assert_eq!(unpack(pack(&[])), Vec::<Letter>::new());
        let z = vec![Letter::new(0, 0); 15];
        assert_eq!(unpack(pack(&z)), z);
    }

    #[test]
    fn relabel_fixes_first_letter() {
        let w = word_from_pairs(&[(2, 3), (1, 1), (3, 1)]);
        assert_eq!(orbit_key(&w), word_from_pairs(&[(1, 1), (1, 2), (2, 2)]));
        assert_eq!(orbit_key_fixed(&w), word_from_pairs(&[(1, 2), (1, 1), (2, 1)]));
    }
}
