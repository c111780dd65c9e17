//! Permutations, reduced words, Bruhat order and positive distinguished
//! subexpressions for the symmetric group.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::shapes::YoungDiagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("letter {letter} out of range for n = {n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("word is not reduced")]
    NotReduced,
    #[error("v is not below w in Bruhat order")]
    NotBelow,
    #[error("size mismatch")]
    SizeMismatch,
}

/// Permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn from_one_line(v: Vec<usize>) -> Result<Self, WeylError> {
        let n = v.len();
        let mut seen = vec![false; n + 1];
        for &x in &v {
            if x == 0 || x > n || seen[x] {
                return Err(WeylError::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation(v))
    }

    /// The simple transposition `s_i`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Self::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    /// `w(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut out = vec![0; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x - 1] = i + 1;
        }
        Permutation(out)
    }

    /// `self ∘ other`, acting on the right argument first.
    pub fn compose(&self, other: &Permutation) -> Self {
        Permutation(other.0.iter().map(|&j| self.apply(j)).collect())
    }

    /// `self · s_i`: swaps positions `i, i+1`.
    pub fn right_mul_simple(&self, i: usize) -> Self {
        let mut p = self.clone();
        p.0.swap(i - 1, i);
        p
    }

    /// `s_i · self`: swaps values `i, i+1`.
    pub fn left_mul_simple(&self, i: usize) -> Self {
        Permutation(
            self.0
                .iter()
                .map(|&x| if x == i { i + 1 } else if x == i + 1 { i } else { x })
                .collect(),
        )
    }

    /// Coxeter length: number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        let mut count = 0;
        for a in 0..v.len() {
            for b in (a + 1)..v.len() {
                if v[a] > v[b] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `ℓ(w s_i) < ℓ(w)`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        self.apply(i) > self.apply(i + 1)
    }

    /// Sorted image of a set.
    pub fn image(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&j| self.apply(j)).collect();
        out.sort_unstable();
        out
    }

    /// Sorted image of the interval `[a, b]`.
    pub fn image_range(&self, a: usize, b: usize) -> Vec<usize> {
        let set: Vec<usize> = (a..=b).collect();
        self.image(&set)
    }

    /// A reduced word, found by peeling off right descents.
    pub fn reduced_word(&self) -> ReducedWord {
        let mut w = self.clone();
        let mut peeled = Vec::new();
        while let Some(i) = (1..w.n()).find(|&i| w.has_right_descent(i)) {
            w = w.right_mul_simple(i);
            peeled.push(i);
        }
        peeled.reverse();
        ReducedWord { n: self.n(), letters: peeled }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A reduced word `s_{i_1} ... s_{i_m}` in `S_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedWord {
    n: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, WeylError> {
        for &l in &letters {
            if l == 0 || l >= n {
                return Err(WeylError::LetterOutOfRange { letter: l, n });
            }
        }
        let w = word_to_perm(n, &letters);
        if w.length() != letters.len() {
            return Err(WeylError::NotReduced);
        }
        Ok(ReducedWord { n, letters })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The letter `i_r` for 1-based `r`.
    pub fn letter(&self, r: usize) -> usize {
        self.letters[r - 1]
    }

    pub fn to_perm(&self) -> Permutation {
        word_to_perm(self.n, &self.letters)
    }
}

/// Product `s_{i_1} ⋯ s_{i_m}` as a permutation.
pub fn word_to_perm(n: usize, letters: &[usize]) -> Permutation {
    let mut p = Permutation::identity(n);
    for &i in letters {
        p.0.swap(i - 1, i);
    }
    p
}

/// Which letters of the reduced word are used by the subexpression for `v`.
/// Unused positions are the set `J°`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubexpressionMask {
    used: Vec<bool>,
}

impl SubexpressionMask {
    pub fn from_used(used: Vec<bool>) -> Self {
        SubexpressionMask { used }
    }

    pub fn len(&self) -> usize {
        self.used.len()
    }

    pub fn is_empty(&self) -> bool {
        self.used.is_empty()
    }

    /// Whether 1-based position `r` is used.
    pub fn is_used(&self, r: usize) -> bool {
        self.used[r - 1]
    }

    /// `J°`, the unused positions, ascending and 1-based.
    pub fn j_circ(&self) -> Vec<usize> {
        (1..=self.used.len()).filter(|&r| !self.used[r - 1]).collect()
    }

    pub fn used_positions(&self) -> Vec<usize> {
        (1..=self.used.len()).filter(|&r| self.used[r - 1]).collect()
    }
}

/// The positive distinguished subexpression for `v` in the reduced word:
/// scan right to left, using a letter exactly when it shortens the remainder.
pub fn positive_distinguished_subexpression(
    word: &ReducedWord,
    v: &Permutation,
) -> Result<SubexpressionMask, WeylError> {
    if v.n() != word.n() {
        return Err(WeylError::SizeMismatch);
    }
    let m = word.len();
    let mut used = vec![false; m];
    let mut u = v.clone();
    for r in (1..=m).rev() {
        let i = word.letter(r);
        if u.has_right_descent(i) {
            u = u.right_mul_simple(i);
            used[r - 1] = true;
        }
    }
    if u.is_identity() {
        Ok(SubexpressionMask { used })
    } else {
        Err(WeylError::NotBelow)
    }
}

/// Bruhat order test `v ≤ w` through the subexpression scan.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> bool {
    v.n() == w.n() && positive_distinguished_subexpression(&w.reduced_word(), v).is_ok()
}

/// Partial products attached to a reduced word and a subexpression.
#[derive(Clone, Debug)]
pub struct PrefixData {
    word: ReducedWord,
    mask: SubexpressionMask,
}

impl PrefixData {
    pub fn new(word: ReducedWord, mask: SubexpressionMask) -> Self {
        assert_eq!(word.len(), mask.len());
        PrefixData { word, mask }
    }

    pub fn word(&self) -> &ReducedWord {
        &self.word
    }

    pub fn mask(&self) -> &SubexpressionMask {
        &self.mask
    }

    fn v_letters(&self, range: std::ops::RangeInclusive<usize>) -> Vec<usize> {
        range.filter(|&r| self.mask.is_used(r)).map(|r| self.word.letter(r)).collect()
    }

    /// `w_(r) = s_{i_1} ⋯ s_{i_r}`.
    pub fn w_prefix(&self, r: usize) -> Permutation {
        word_to_perm(self.word.n(), &self.word.letters()[..r])
    }

    /// `v_(r)`: the same prefix with unused letters dropped.
    pub fn v_prefix(&self, r: usize) -> Permutation {
        word_to_perm(self.word.n(), &self.v_letters(1..=r))
    }

    /// `W^(r) = w^{-1} w_(r) = s_{i_m} ⋯ s_{i_{r+1}}`.
    pub fn w_suffix_inverse(&self, r: usize) -> Permutation {
        let mut letters: Vec<usize> = self.word.letters()[r..].to_vec();
        letters.reverse();
        word_to_perm(self.word.n(), &letters)
    }

    /// `V^(r) = v^{-1} v_(r)`.
    pub fn v_suffix_inverse(&self, r: usize) -> Permutation {
        let mut letters = self.v_letters(r + 1..=self.word.len());
        letters.reverse();
        word_to_perm(self.word.n(), &letters)
    }

    pub fn w(&self) -> Permutation {
        self.word.to_perm()
    }

    pub fn v(&self) -> Permutation {
        self.v_prefix(self.word.len())
    }
}

/// Reduced word of the Grassmannian permutation with diagram `λ ⊆ k × (n-k)`:
/// box `(i, j)` carries `s_{k+j-i}`, read right to left along rows from the
/// lowest row up. Also returns the box of each position.
pub fn grassmannian_word(k: usize, n: usize, shape: &YoungDiagram) -> (ReducedWord, Vec<(usize, usize)>) {
    let mut letters = Vec::new();
    let mut boxes = Vec::new();
    for i in (1..=shape.num_rows()).rev() {
        for j in (1..=shape.row(i)).rev() {
            letters.push(k + j - i);
            boxes.push((i, j));
        }
    }
    (ReducedWord { n, letters }, boxes)
}

/// The Grassmannian permutation with the given vertical boundary labels `w[k]`.
pub fn grassmannian_perm(n: usize, top: &[usize]) -> Permutation {
    let top_set: BTreeSet<usize> = top.iter().copied().collect();
    let mut v: Vec<usize> = top_set.iter().copied().collect();
    v.extend((1..=n).filter(|x| !top_set.contains(x)));
    Permutation(v)
}

/// Diagram of the set `u{1..a}` in the `(n-a) × a` rectangle whose box
/// `(i, j)` carries `s_{a+i-j}`.
pub fn mu_shape(u: &Permutation, a: usize) -> YoungDiagram {
    let s = u.image_range(1, a);
    let cols: Vec<usize> = (1..=a).map(|i| s[a - i] - (a + 1 - i)).collect();
    YoungDiagram::from_columns(&cols)
}

/// Every Young diagram inside the `k × (n-k)` rectangle, ordered by size then
/// lexicographically by parts.
pub fn shapes_in_rectangle(k: usize, n: usize) -> Vec<YoungDiagram> {
    let width = n - k;
    let mut out = Vec::new();
    let mut parts = Vec::new();
    fn rec(rows_left: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        out.push(YoungDiagram::new(parts.clone()).expect("weakly decreasing"));
        if rows_left == 0 {
            return;
        }
        for p in 1..=max {
            parts.push(p);
            rec(rows_left - 1, p, parts, out);
            parts.pop();
        }
    }
    rec(k, width, &mut parts, &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.parts().cmp(b.parts())));
    out
}

/// The Bruhat interval `[e, w]` as the set of subword products.
pub fn lower_interval(word: &ReducedWord) -> Vec<Permutation> {
    let mut set: BTreeSet<Permutation> = BTreeSet::new();
    set.insert(Permutation::identity(word.n()));
    for &i in word.letters() {
        let extra: Vec<Permutation> = set.iter().map(|u| u.right_mul_simple(i)).collect();
        set.extend(extra);
    }
    set.into_iter().collect()
}

/// An element of `Q^J(k, n)`: a shape and a `v ≤ w_λ` with its subexpression.
#[derive(Clone, Debug)]
pub struct QjPair {
    pub shape: YoungDiagram,
    pub v: Permutation,
    pub mask: SubexpressionMask,
}

/// All pairs `(v, w)` with `w` Grassmannian in the `k × (n-k)` box and
/// `v ≤ w`, ordered by shape (size, then lex) and then `v` in one-line lex.
pub fn enumerate_qj(k: usize, n: usize) -> Vec<QjPair> {
    let mut out = Vec::new();
    for shape in shapes_in_rectangle(k, n) {
        let (word, _) = grassmannian_word(k, n, &shape);
        for v in lower_interval(&word) {
            let mask = positive_distinguished_subexpression(&word, &v).expect("v in interval");
            out.push(QjPair { shape: shape.clone(), v, mask });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Tableau criterion: sorted prefixes of `v` are dominated by those of `w`.
    fn bruhat_leq_tableau(v: &Permutation, w: &Permutation) -> bool {
        (1..=v.n()).all(|a| {
            let sv = v.image_range(1, a);
            let sw = w.image_range(1, a);
            sv.iter().zip(&sw).all(|(x, y)| x <= y)
        })
    }

    fn all_perms(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=n).collect();
        fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Permutation>) {
            if k <= 1 {
                out.push(Permutation(cur.clone()));
                return;
            }
            for i in 0..k {
                heap(k - 1, cur, out);
                if k % 2 == 0 {
                    cur.swap(i, k - 1);
                } else {
                    cur.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut cur, &mut out);
        out
    }

    #[test]
    fn word_acts_innermost_first() {
        let w = word_to_perm(5, &[2, 1, 4, 3, 2]);
        assert_eq!(w.one_line(), &[3, 5, 1, 2, 4]);
    }

    #[test]
    fn grassmannian_words_of_small_shapes() {
        let (w, boxes) = grassmannian_word(2, 5, &YoungDiagram::new(vec![3, 2]).unwrap());
        assert_eq!(w.letters(), &[2, 1, 4, 3, 2]);
        assert_eq!(boxes, vec![(2, 2), (2, 1), (1, 3), (1, 2), (1, 1)]);
        let (w, _) = grassmannian_word(2, 5, &YoungDiagram::new(vec![3, 3]).unwrap());
        assert_eq!(w.letters(), &[3, 2, 1, 4, 3, 2]);
        let (w, _) = grassmannian_word(3, 6, &YoungDiagram::new(vec![3, 3, 2]).unwrap());
        assert_eq!(w.letters(), &[2, 1, 4, 3, 2, 5, 4, 3]);
    }

    #[test]
    fn distinguished_subexpressions_of_known_cells() {
        let word = ReducedWord::new(5, vec![2, 1, 4, 3, 2]).unwrap();
        let mask = positive_distinguished_subexpression(&word, &Permutation::simple(5, 2)).unwrap();
        assert_eq!(mask.j_circ(), vec![1, 2, 3, 4]);
        let word = ReducedWord::new(6, vec![2, 1, 4, 3, 2, 5, 4, 3]).unwrap();
        let v = word_to_perm(6, &[2, 4]);
        let mask = positive_distinguished_subexpression(&word, &v).unwrap();
        assert_eq!(mask.j_circ(), vec![1, 2, 3, 4, 6, 8]);
        assert_eq!(mask.used_positions(), vec![5, 7]);
    }

    #[test]
    fn bruhat_matches_tableau_criterion_in_s4() {
        let perms = all_perms(4);
        for v in &perms {
            for w in &perms {
                assert_eq!(bruhat_leq(v, w), bruhat_leq_tableau(v, w), "{} {}", v, w);
            }
        }
    }

    #[test]
    fn mu_shape_rectangle_and_subshape() {
        let w = word_to_perm(12, &[6, 7, 8, 9, 5, 6, 7, 8, 4, 5, 6, 7]);
        assert_eq!(mu_shape(&w, 7).parts(), &[4, 4, 4]);
        let v = word_to_perm(12, &[7, 8, 5, 6, 7]);
        assert_eq!(mu_shape(&v, 7).parts(), &[3, 2]);
    }

    #[test]
    fn qj_counts_small() {
        assert_eq!(enumerate_qj(1, 3).len(), 7);
        for n in 1..=4 {
            assert_eq!(enumerate_qj(n, n).len(), 1);
        }
    }

    proptest! {
        #[test]
        fn pds_reconstructs_v(n in 2usize..7, seed in any::<u64>()) {
            let perms = all_perms(n);
            let w = &perms[(seed as usize) % perms.len()];
            let word = w.reduced_word();
            prop_assert_eq!(word.to_perm(), w.clone());
            prop_assert_eq!(word.len(), w.length());
            for v in perms.iter().step_by(7) {
                let r = positive_distinguished_subexpression(&word, v);
                prop_assert_eq!(r.is_ok(), bruhat_leq_tableau(v, w));
                if let Ok(mask) = r {
                    let p = PrefixData::new(word.clone(), mask.clone());
                    prop_assert_eq!(&p.v(), v);
                    for r in 0..=word.len() {
                        prop_assert_eq!(p.w().inverse().compose(&p.w_prefix(r)), p.w_suffix_inverse(r));
                        prop_assert_eq!(v.inverse().compose(&p.v_prefix(r)), p.v_suffix_inverse(r));
                        if r > 0 {
                            prop_assert!(!p.v_prefix(r - 1).has_right_descent(word.letter(r)));
                        }
                    }
                }
            }
        }
    }
}
