//! Young diagrams, Frobenius coordinates, the shapes `ν_r` attached to
//! positions of a reduced word, and morphisms between them.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::le_diagram::LeDiagram;
use crate::weyl_group::{mu_shape, PrefixData};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("parts are not weakly decreasing")]
    NotDecreasing,
    #[error("Frobenius coordinates are not strictly decreasing")]
    BadFrobenius,
    #[error("shape is not a rectangle")]
    NotRectangle,
    #[error("shape does not fit inside the rectangle")]
    NotContained,
}

/// Partition with positive, weakly decreasing parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, ShapeError> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotDecreasing);
        }
        Ok(YoungDiagram { parts })
    }

    pub fn empty() -> Self {
        YoungDiagram { parts: Vec::new() }
    }

    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        YoungDiagram { parts: vec![cols; rows] }
    }

    /// Diagram with the given column lengths (weakly decreasing).
    pub fn from_columns(cols: &[usize]) -> Self {
        let rows = cols.first().copied().unwrap_or(0);
        let parts = (1..=rows).map(|i| cols.iter().filter(|&&c| c >= i).count()).collect();
        YoungDiagram { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn num_rows(&self) -> usize {
        self.parts.len()
    }

    /// Length of 1-based row `i` (0 past the last row).
    pub fn row(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Length of 1-based column `j`.
    pub fn col(&self, j: usize) -> usize {
        self.parts.iter().filter(|&&p| p >= j).count()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && self.row(i) >= j
    }

    pub fn conjugate(&self) -> Self {
        let cols: Vec<usize> = (1..=self.row(1)).map(|j| self.col(j)).collect();
        YoungDiagram { parts: cols }
    }

    /// Boxes `(i, j)`, row-major.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                out.push((i + 1, j));
            }
        }
        out
    }

    pub fn box_set(&self) -> BTreeSet<(usize, usize)> {
        self.boxes().into_iter().collect()
    }

    pub fn from_box_set(set: &BTreeSet<(usize, usize)>) -> Result<Self, ShapeError> {
        let rows = set.iter().map(|&(i, _)| i).max().unwrap_or(0);
        let parts: Vec<usize> = (1..=rows).map(|i| set.iter().filter(|&&(a, _)| a == i).count()).collect();
        let d = YoungDiagram::new(parts)?;
        if d.box_set() != *set {
            return Err(ShapeError::NotDecreasing);
        }
        Ok(d)
    }

    pub fn is_subset_of(&self, other: &YoungDiagram) -> bool {
        self.parts.iter().enumerate().all(|(i, &p)| other.row(i + 1) >= p)
    }

    pub fn fits_in(&self, rows: usize, cols: usize) -> bool {
        self.num_rows() <= rows && self.row(1) <= cols
    }

    pub fn as_rectangle(&self) -> Option<(usize, usize)> {
        match self.parts.first() {
            None => Some((0, 0)),
            Some(&c) if self.parts.iter().all(|&p| p == c) => Some((self.parts.len(), c)),
            _ => None,
        }
    }

    /// Boxes of the `rows × cols` rectangle outside this diagram, rotated by 180°.
    pub fn rotated_complement(&self, rows: usize, cols: usize) -> Result<Self, ShapeError> {
        if !self.fits_in(rows, cols) {
            return Err(ShapeError::NotContained);
        }
        let parts = (1..=rows).map(|l| cols - self.row(rows + 1 - l)).collect();
        YoungDiagram::new(parts)
    }

    /// Frobenius coordinates as nested hooks: `(width, height)` of the hook
    /// through each diagonal box.
    pub fn frobenius(&self) -> Frobenius {
        let d = (1..).take_while(|&l| self.contains(l, l)).count();
        Frobenius((1..=d).map(|l| (self.row(l) - l + 1, self.col(l) - l + 1)).collect())
    }

    pub fn from_frobenius(f: &Frobenius) -> Result<Self, ShapeError> {
        let hooks = &f.0;
        if hooks.iter().any(|&(a, b)| a == 0 || b == 0)
            || hooks.windows(2).any(|w| w[0].0 <= w[1].0 || w[0].1 <= w[1].1)
        {
            return Err(ShapeError::BadFrobenius);
        }
        let mut set = BTreeSet::new();
        for (idx, &(a, b)) in hooks.iter().enumerate() {
            let l = idx + 1;
            for j in l..l + a {
                set.insert((l, j));
            }
            for i in l..l + b {
                set.insert((i, l));
            }
        }
        YoungDiagram::from_box_set(&set).map_err(|_| ShapeError::BadFrobenius)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Frobenius coordinates `[(a_1, b_1), ..., (a_d, b_d)]`: hook `l` has width
/// `a_l` along row `l` and height `b_l` down column `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Frobenius(pub Vec<(usize, usize)>);

impl Frobenius {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hook `l` (1-based), `(0, 0)` past the end.
    pub fn hook(&self, l: usize) -> (usize, usize) {
        self.0.get(l - 1).copied().unwrap_or((0, 0))
    }
}

impl fmt::Display for Frobenius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(a, b)| format!("({},{})", a, b)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Classification of the elementary map `λ →p μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MorphismKind {
    /// The shifted overlap is not an order ideal of `μ`.
    None,
    Zero,
    Trivial,
    NonZero { injective: bool },
}

impl MorphismKind {
    pub fn exists(self) -> bool {
        self != MorphismKind::None
    }

    pub fn is_nonzero_nontrivial(self) -> bool {
        matches!(self, MorphismKind::NonZero { .. })
    }
}

/// Decide whether `λ →p μ` exists: the overlap of `λ` shifted by `(p, p)`
/// with `μ` must be closed under moving down or right inside `μ`.
pub fn morphism(lambda: &YoungDiagram, mu: &YoungDiagram, p: usize) -> MorphismKind {
    let inside = |i: usize, j: usize| i > p && j > p && lambda.contains(i - p, j - p) && mu.contains(i, j);
    let mut empty = true;
    for (i, j) in mu.boxes() {
        if !inside(i, j) {
            continue;
        }
        empty = false;
        if (mu.contains(i + 1, j) && !inside(i + 1, j)) || (mu.contains(i, j + 1) && !inside(i, j + 1)) {
            return MorphismKind::None;
        }
    }
    if empty {
        MorphismKind::Zero
    } else if p == 0 && lambda == mu {
        MorphismKind::Trivial
    } else {
        let injective = lambda.boxes().into_iter().all(|(i, j)| mu.contains(i + p, j + p));
        MorphismKind::NonZero { injective }
    }
}

/// A nonzero, nontrivial `λ →p μ` is irreducible when it does not factor as
/// `λ →p'' ν →p' μ` through a shape of the family with both factors nonzero
/// and nontrivial.
pub fn is_irreducible(lambda: &YoungDiagram, mu: &YoungDiagram, p: usize, family: &[YoungDiagram]) -> bool {
    if !morphism(lambda, mu, p).is_nonzero_nontrivial() {
        return false;
    }
    for nu in family {
        for p1 in 0..=p {
            if morphism(lambda, nu, p1).is_nonzero_nontrivial() && morphism(nu, mu, p - p1).is_nonzero_nontrivial() {
                return false;
            }
        }
    }
    true
}

/// `ν_r` from the two Grassmannian shapes: the rotated complement of
/// `μ(V^(r-1), i_r)` inside the rectangle `μ(W^(r-1), i_r)`.
pub fn nu_by_definition(prefix: &PrefixData, r: usize) -> Result<YoungDiagram, ShapeError> {
    let a = prefix.word().letter(r);
    let outer = mu_shape(&prefix.w_suffix_inverse(r - 1), a);
    let inner = mu_shape(&prefix.v_suffix_inverse(r - 1), a);
    let (rows, cols) = outer.as_rectangle().ok_or(ShapeError::NotRectangle)?;
    if !inner.is_subset_of(&outer) {
        return Err(ShapeError::NotContained);
    }
    inner.rotated_complement(rows, cols)
}

/// `ν_r` from the chain of north-west dots of the Le-diagram: a hook for the
/// box of `r` itself when it is dotted, then one hook per step of the chain.
pub fn nu_by_nw_chain(le: &LeDiagram, r: usize) -> Frobenius {
    let (i, j) = le.box_of(r);
    let mut hooks = Vec::new();
    let mut cur = if le.has_dot(i, j) { Some((i, j)) } else { le.nw_dot(i, j) };
    while let Some((a, b)) = cur {
        hooks.push((b, a));
        cur = le.nw_dot(a, b);
    }
    Frobenius(hooks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn yd(p: &[usize]) -> YoungDiagram {
        YoungDiagram::new(p.to_vec()).unwrap()
    }

    #[test]
    fn frobenius_of_known_shapes() {
        assert_eq!(yd(&[1]).frobenius().0, vec![(1, 1)]);
        assert_eq!(yd(&[2, 2, 1]).frobenius().0, vec![(2, 3), (1, 1)]);
        assert_eq!(yd(&[4, 3, 3, 2, 1]).frobenius().0, vec![(4, 5), (2, 3), (1, 1)]);
        assert_eq!(yd(&[4, 2, 1]).frobenius().0, vec![(4, 3), (1, 1)]);
        assert!(yd(&[]).frobenius().is_empty());
    }

    #[test]
    fn rotated_complement_in_rectangle() {
        assert_eq!(yd(&[3, 2]).rotated_complement(3, 4).unwrap(), yd(&[4, 2, 1]));
    }

    #[test]
    fn morphism_basics() {
        let a = yd(&[2, 1]);
        assert_eq!(morphism(&a, &a, 0), MorphismKind::Trivial);
        assert_eq!(morphism(&yd(&[2, 2]), &a, 0), MorphismKind::NonZero { injective: false });
        assert_eq!(morphism(&a, &yd(&[2, 2]), 0), MorphismKind::None);
        assert_eq!(morphism(&a, &a, 1), MorphismKind::Zero);
        assert_eq!(morphism(&yd(&[1]), &yd(&[2, 2]), 1), MorphismKind::NonZero { injective: true });
    }

    /// Hook-by-hook comparison `λ^l ≥ μ^{p+l}`.
    fn morphism_exists_by_hooks(lambda: &YoungDiagram, mu: &YoungDiagram, p: usize) -> bool {
        let (fl, fm) = (lambda.frobenius(), mu.frobenius());
        (1..=fm.len().max(p) + 1).all(|l| {
            let (a, b) = fl.hook(l);
            let (c, d) = fm.hook(p + l);
            a >= c && b >= d
        })
    }

    fn small_shape() -> impl Strategy<Value = YoungDiagram> {
        proptest::collection::vec(0usize..5, 0..5).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            YoungDiagram::new(v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn frobenius_round_trip(d in small_shape()) {
            prop_assert_eq!(YoungDiagram::from_frobenius(&d.frobenius()).unwrap(), d.clone());
            prop_assert_eq!(d.conjugate().conjugate(), d);
        }

        #[test]
        fn morphism_existence_matches_hook_criterion(a in small_shape().prop_filter("nonempty", |d| !d.is_empty()), b in small_shape(), p in 0usize..4) {
            prop_assert_eq!(morphism(&a, &b, p).exists(), morphism_exists_by_hooks(&a, &b, p));
        }
    }
}
