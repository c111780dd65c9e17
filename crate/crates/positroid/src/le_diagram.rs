//! Le-diagrams, their planar graphs, faces, strands, face labels and
//! boundary path weights.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::{LaurentPoly, Var};
use crate::shapes::YoungDiagram;
use crate::weyl_group::{
    grassmannian_word, positive_distinguished_subexpression, Permutation, PrefixData, ReducedWord,
    SubexpressionMask, WeylError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeError {
    #[error("shape does not fit in the {k} x {width} rectangle")]
    ShapeTooBig { k: usize, width: usize },
    #[error("dot mask has {got} entries, shape has {want} boxes")]
    MaskLength { got: usize, want: usize },
    #[error("empty box ({0}, {1}) has a dot above it and a dot to its left")]
    NotLe(usize, usize),
    #[error("w is not Grassmannian for k = {0}")]
    NotGrassmannian(usize),
    #[error("invalid k = {k} for n = {n}")]
    BadK { k: usize, n: usize },
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

/// A cell of the positroid stratification, given by a shape `λ ⊆ k × (n-k)`
/// and a dotted subset of its boxes with the Le property.
#[derive(Clone, Debug)]
pub struct LeDiagram {
    k: usize,
    n: usize,
    shape: YoungDiagram,
    prefix: PrefixData,
    boxes: Vec<(usize, usize)>,
    position: HashMap<(usize, usize), usize>,
}

impl LeDiagram {
    /// Cell from a shape and `v ≤ w_λ`.
    pub fn from_shape_and_v(k: usize, n: usize, shape: YoungDiagram, v: &Permutation) -> Result<Self, LeError> {
        Self::check_shape(k, n, &shape)?;
        let (word, boxes) = grassmannian_word(k, n, &shape);
        let mask = positive_distinguished_subexpression(&word, v)?;
        Ok(Self::assemble(k, n, shape, word, boxes, mask))
    }

    /// Cell from a shape and a row-major dot mask over its boxes.
    pub fn from_dot_mask(k: usize, n: usize, shape: YoungDiagram, dots: &[bool]) -> Result<Self, LeError> {
        Self::check_shape(k, n, &shape)?;
        let row_major = shape.boxes();
        if dots.len() != row_major.len() {
            return Err(LeError::MaskLength { got: dots.len(), want: row_major.len() });
        }
        let dotted: BTreeSet<(usize, usize)> =
            row_major.iter().zip(dots).filter(|(_, &d)| d).map(|(&b, _)| b).collect();
        for &(i, j) in &row_major {
            if dotted.contains(&(i, j)) {
                continue;
            }
            let above = (1..i).any(|a| dotted.contains(&(a, j)));
            let left = (1..j).any(|b| dotted.contains(&(i, b)));
            if above && left {
                return Err(LeError::NotLe(i, j));
            }
        }
        let (word, boxes) = grassmannian_word(k, n, &shape);
        let used = boxes.iter().map(|b| !dotted.contains(b)).collect();
        let mask = SubexpressionMask::from_used(used);
        Ok(Self::assemble(k, n, shape, word, boxes, mask))
    }

    /// Cell from a pair `v ≤ w` with `w` Grassmannian.
    pub fn from_pair(k: usize, v: &Permutation, w: &Permutation) -> Result<Self, LeError> {
        let n = w.n();
        if k == 0 || k > n {
            return Err(LeError::BadK { k, n });
        }
        let ascending = |a: usize, b: usize| (a..b).all(|j| w.apply(j) < w.apply(j + 1));
        if !ascending(1, k) || !ascending(k + 1, n) {
            return Err(LeError::NotGrassmannian(k));
        }
        let top = w.image_range(1, k);
        let parts = (1..=k).map(|i| top[k - i] - (k + 1 - i)).collect();
        let shape = YoungDiagram::new(parts).map_err(|_| LeError::NotGrassmannian(k))?;
        let le = Self::from_shape_and_v(k, n, shape, v)?;
        debug_assert_eq!(&le.w(), w);
        Ok(le)
    }

    fn check_shape(k: usize, n: usize, shape: &YoungDiagram) -> Result<(), LeError> {
        if k == 0 || k > n {
            return Err(LeError::BadK { k, n });
        }
        if !shape.fits_in(k, n - k) {
            return Err(LeError::ShapeTooBig { k, width: n - k });
        }
        Ok(())
    }

    fn assemble(
        k: usize,
        n: usize,
        shape: YoungDiagram,
        word: ReducedWord,
        boxes: Vec<(usize, usize)>,
        mask: SubexpressionMask,
    ) -> Self {
        let position = boxes.iter().enumerate().map(|(r, &b)| (b, r + 1)).collect();
        LeDiagram { k, n, shape, prefix: PrefixData::new(word, mask), boxes, position }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn word(&self) -> &ReducedWord {
        self.prefix.word()
    }

    pub fn mask(&self) -> &SubexpressionMask {
        self.prefix.mask()
    }

    pub fn prefix(&self) -> &PrefixData {
        &self.prefix
    }

    /// Number of letters `m = |λ|`.
    pub fn m(&self) -> usize {
        self.boxes.len()
    }

    pub fn w(&self) -> Permutation {
        self.prefix.w()
    }

    pub fn v(&self) -> Permutation {
        self.prefix.v()
    }

    pub fn j_circ(&self) -> Vec<usize> {
        self.mask().j_circ()
    }

    pub fn is_dot(&self, r: usize) -> bool {
        !self.mask().is_used(r)
    }

    pub fn box_of(&self, r: usize) -> (usize, usize) {
        self.boxes[r - 1]
    }

    pub fn position_at(&self, i: usize, j: usize) -> Option<usize> {
        self.position.get(&(i, j)).copied()
    }

    pub fn has_dot(&self, i: usize, j: usize) -> bool {
        self.position_at(i, j).map_or(false, |r| self.is_dot(r))
    }

    /// Row-major dot mask, the canonical cell address.
    pub fn dot_mask(&self) -> Vec<bool> {
        self.shape.boxes().into_iter().map(|(i, j)| self.has_dot(i, j)).collect()
    }

    pub fn dots(&self) -> Vec<(usize, (usize, usize))> {
        self.j_circ().into_iter().map(|r| (r, self.box_of(r))).collect()
    }

    fn row_dots(&self, i: usize) -> Vec<usize> {
        (1..=self.shape.row(i)).filter(|&j| self.has_dot(i, j)).collect()
    }

    fn col_dots(&self, j: usize) -> Vec<usize> {
        (1..=self.shape.col(j)).filter(|&i| self.has_dot(i, j)).collect()
    }

    /// Whether the dot at `r` has another dot above it in its column.
    pub fn has_up(&self, r: usize) -> bool {
        let (i, j) = self.box_of(r);
        (1..i).any(|a| self.has_dot(a, j))
    }

    /// Whether the dot at `r` has another dot to its left in its row.
    pub fn has_left(&self, r: usize) -> bool {
        let (i, j) = self.box_of(r);
        (1..j).any(|b| self.has_dot(i, b))
    }

    /// The dot strictly north-west of `(i, j)` that dominates all others there
    /// (unique by the Le property).
    pub fn nw_dot(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let dots: Vec<(usize, usize)> =
            (1..i).flat_map(|a| (1..j).map(move |b| (a, b))).filter(|&(a, b)| self.has_dot(a, b)).collect();
        let best = dots.iter().copied().max_by_key(|&(a, b)| a + b)?;
        debug_assert!(dots.iter().all(|&(a, b)| a <= best.0 && b <= best.1));
        Some(best)
    }

    /// Boundary steps labelled `1..n` counterclockwise from the south-west corner.
    pub fn boundary(&self) -> Vec<BoundaryStep> {
        let mut out = Vec::with_capacity(self.n);
        let (mut i, mut x) = (self.k, 0);
        while out.len() < self.n {
            if i >= 1 && x < self.shape.row(i) {
                x += 1;
                out.push(BoundaryStep::South(x));
            } else if i >= 1 {
                out.push(BoundaryStep::East(i));
                i -= 1;
            } else {
                x += 1;
                out.push(BoundaryStep::South(x));
            }
        }
        out
    }

    /// Label of the vertical boundary step at the end of row `i`.
    pub fn east_label(&self, i: usize) -> usize {
        1 + self.boundary().iter().position(|s| *s == BoundaryStep::East(i)).expect("row in range")
    }

    /// Label of the horizontal boundary step below column `j`.
    pub fn south_label(&self, j: usize) -> usize {
        1 + self.boundary().iter().position(|s| *s == BoundaryStep::South(j)).expect("column in range")
    }

    /// Build the planar graph: faces, labels and strands.
    pub fn graph(&self) -> PlanarGraph {
        PlanarGraph::new(self)
    }

    /// Sum over directed paths from boundary `source` (an east label) to
    /// boundary `target` (a south label) of `∏ t_r^{-1}` over visited dots.
    /// Horizontal edges point west, vertical edges point south.
    pub fn meas(&self, source: usize, target: usize) -> LaurentPoly {
        let steps = self.boundary();
        let BoundaryStep::East(i) = steps[source - 1] else {
            return LaurentPoly::zero();
        };
        let BoundaryStep::South(jt) = steps[target - 1] else {
            return LaurentPoly::zero();
        };
        let Some(&start) = self.row_dots(i).last() else {
            return LaurentPoly::zero();
        };
        let mut memo: HashMap<(usize, usize), LaurentPoly> = HashMap::new();
        self.meas_from((i, start), jt, &mut memo)
    }

    fn meas_from(&self, at: (usize, usize), target_col: usize, memo: &mut HashMap<(usize, usize), LaurentPoly>) -> LaurentPoly {
        if let Some(p) = memo.get(&at) {
            return p.clone();
        }
        let (i, j) = at;
        let mut total = LaurentPoly::zero();
        if let Some(&b) = self.row_dots(i).iter().rev().find(|&&b| b < j) {
            total = &total + &self.meas_from((i, b), target_col, memo);
        }
        match self.col_dots(j).iter().find(|&&a| a > i) {
            Some(&a) => total = &total + &self.meas_from((a, j), target_col, memo),
            None if j == target_col => total = &total + &LaurentPoly::one(),
            None => {}
        }
        let r = self.position_at(i, j).expect("dot box");
        let out = total.mul_monomial(&crate::exact_algebra::Monomial::var(Var::t(r)).inverse());
        memo.insert(at, out.clone());
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundaryStep {
    /// Vertical step at the east end of row `i`.
    East(usize),
    /// Horizontal step below column `j`.
    South(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dir {
    N,
    S,
    E,
    W,
}

/// A strand of the planar graph, as a polyline on the doubled grid where the
/// centre of box `(i, j)` sits at `(2i-1, 2j-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strand {
    pub start: usize,
    pub end: usize,
    pub points: Vec<(usize, usize)>,
}

/// Faces around a dot: north-east `a`, south-west `b`, north-west `c`,
/// south-east `r` (the dot's own face). Face `0` is the north-west face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Neighborhood {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub r: usize,
    pub up: bool,
    pub left: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub index: usize,
    pub label: Vec<usize>,
    pub boundary: bool,
}

/// Geometry of the graph `G(D)` of a Le-diagram.
#[derive(Clone, Debug)]
pub struct PlanarGraph {
    pub faces: BTreeMap<usize, Face>,
    pub neighborhoods: BTreeMap<usize, Neighborhood>,
    pub strands: Vec<Strand>,
    /// Labels of boundary vertices with no incident edge.
    pub isolated: Vec<usize>,
}

/// Quarter-cell grid: box `(i, j)` splits into quarters `(2i-2 | 2i-1, 2j-2 | 2j-1)`.
struct QuarterGrid {
    rows: usize,
    cols: usize,
    valid: Vec<bool>,
    /// `cut_below[y * cols + c]`: cells `(y, c)` and `(y+1, c)` are separated.
    cut_below: Vec<bool>,
    /// `cut_right[r * cols + x]`: cells `(r, x)` and `(r, x+1)` are separated.
    cut_right: Vec<bool>,
}

impl QuarterGrid {
    fn new(le: &LeDiagram) -> Self {
        let rows = 2 * le.k;
        let cols = 2 * (le.n - le.k);
        let mut valid = vec![false; rows * cols];
        for (i, j) in le.shape.boxes() {
            for dr in 0..2 {
                for dc in 0..2 {
                    valid[(2 * i - 2 + dr) * cols + 2 * j - 2 + dc] = true;
                }
            }
        }
        QuarterGrid { rows, cols, valid, cut_below: vec![false; rows * cols], cut_right: vec![false; rows * cols] }
    }

    /// Cut along the segment between two grid points sharing a coordinate.
    fn cut_segment(&mut self, p: (usize, usize), q: (usize, usize)) {
        let cols = self.cols;
        if p.0 == q.0 {
            let y = p.0;
            for c in p.1.min(q.1)..p.1.max(q.1) {
                if y >= 1 && y <= self.rows {
                    self.cut_below[(y - 1) * cols + c] = true;
                }
            }
        } else {
            let x = p.1;
            for r in p.0.min(q.0)..p.0.max(q.0) {
                if x >= 1 && x <= cols {
                    self.cut_right[r * cols + x - 1] = true;
                }
            }
        }
    }

    fn cut_polyline(&mut self, pts: &[(usize, usize)]) {
        for w in pts.windows(2) {
            self.cut_segment(w[0], w[1]);
        }
    }

    /// Connected component id of each valid cell.
    fn components(&self) -> Vec<Option<usize>> {
        let mut comp = vec![None; self.rows * self.cols];
        let mut next = 0;
        for start in 0..self.rows * self.cols {
            if !self.valid[start] || comp[start].is_some() {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = Some(next);
            while let Some(cell) = stack.pop() {
                let (r, c) = (cell / self.cols, cell % self.cols);
                let mut nbrs = Vec::with_capacity(4);
                if r + 1 < self.rows && !self.cut_below[cell] {
                    nbrs.push(cell + self.cols);
                }
                if r >= 1 && !self.cut_below[cell - self.cols] {
                    nbrs.push(cell - self.cols);
                }
                if c + 1 < self.cols && !self.cut_right[cell] {
                    nbrs.push(cell + 1);
                }
                if c >= 1 && !self.cut_right[cell - 1] {
                    nbrs.push(cell - 1);
                }
                for nb in nbrs {
                    if self.valid[nb] && comp[nb].is_none() {
                        comp[nb] = Some(next);
                        stack.push(nb);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

impl PlanarGraph {
    fn new(le: &LeDiagram) -> Self {
        let lam = &le.shape;
        let mut grid = QuarterGrid::new(le);
        for i in 1..=le.k {
            if let Some(&j0) = le.row_dots(i).first() {
                grid.cut_segment((2 * i - 1, 2 * j0 - 1), (2 * i - 1, 2 * lam.row(i)));
            }
        }
        for j in 1..=(le.n - le.k) {
            if let Some(&i0) = le.col_dots(j).first() {
                grid.cut_segment((2 * i0 - 1, 2 * j - 1), (2 * lam.col(j), 2 * j - 1));
            }
        }
        let comp = grid.components();
        let cols = grid.cols;
        let comp_at = |r: usize, c: usize| comp[r * cols + c].expect("cell inside the shape");

        let mut face_of_comp: HashMap<usize, usize> = HashMap::new();
        if !lam.is_empty() {
            face_of_comp.insert(comp_at(0, 0), 0);
        }
        for (r, (i, j)) in le.dots() {
            let prev = face_of_comp.insert(comp_at(2 * i - 1, 2 * j - 1), r);
            assert!(prev.is_none(), "two dots share a face");
        }
        let n_comp = comp.iter().flatten().max().map_or(0, |&m| m + 1);
        assert_eq!(n_comp, face_of_comp.len(), "every face has a north-west corner dot");

        let mut boundary_faces = BTreeSet::new();
        for (i, j) in lam.boxes() {
            if j == lam.row(i) {
                boundary_faces.insert(face_of_comp[&comp_at(2 * i - 2, 2 * j - 1)]);
                boundary_faces.insert(face_of_comp[&comp_at(2 * i - 1, 2 * j - 1)]);
            }
            if i == lam.col(j) {
                boundary_faces.insert(face_of_comp[&comp_at(2 * i - 1, 2 * j - 2)]);
                boundary_faces.insert(face_of_comp[&comp_at(2 * i - 1, 2 * j - 1)]);
            }
        }

        let mut neighborhoods = BTreeMap::new();
        for (r, (i, j)) in le.dots() {
            let f = |a: usize, b: usize| face_of_comp[&comp_at(a, b)];
            neighborhoods.insert(
                r,
                Neighborhood {
                    a: f(2 * i - 2, 2 * j - 1),
                    b: f(2 * i - 1, 2 * j - 2),
                    c: f(2 * i - 2, 2 * j - 2),
                    r,
                    up: le.has_up(r),
                    left: le.has_left(r),
                },
            );
        }

        let steps = le.boundary();
        let mut strands = Vec::new();
        let mut isolated = Vec::new();
        let mut labels: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        labels.insert(0, Vec::new());
        for r in le.j_circ() {
            labels.insert(r, Vec::new());
        }
        for a in 1..=le.n {
            match trace_strand(le, &steps, a) {
                None => {
                    isolated.push(a);
                    if matches!(steps[a - 1], BoundaryStep::South(_)) {
                        for l in labels.values_mut() {
                            l.push(a);
                        }
                    }
                }
                Some((strand, right_cell)) => {
                    let mut g = QuarterGrid::new(le);
                    g.cut_polyline(&strand.points);
                    let side = g.components();
                    let right = side[right_cell.0 * cols + right_cell.1];
                    for (&cid, &face) in &face_of_comp {
                        let rep = comp.iter().position(|&c| c == Some(cid)).expect("nonempty face");
                        if side[rep] == right {
                            labels.get_mut(&face).expect("face").push(a);
                        }
                    }
                    strands.push(strand);
                }
            }
        }
        let faces = labels
            .into_iter()
            .map(|(index, mut label)| {
                label.sort_unstable();
                let boundary = index != 0 && boundary_faces.contains(&index);
                (index, Face { index, label, boundary })
            })
            .collect();
        PlanarGraph { faces, neighborhoods, strands, isolated }
    }

    pub fn label(&self, r: usize) -> &[usize] {
        &self.faces[&r].label
    }

    pub fn is_boundary(&self, r: usize) -> bool {
        self.faces[&r].boundary
    }

    /// `∂J°`: dots whose face touches the boundary.
    pub fn boundary_dots(&self) -> Vec<usize> {
        self.faces.values().filter(|f| f.index != 0 && f.boundary).map(|f| f.index).collect()
    }

    /// Dots whose face is interior.
    pub fn interior_dots(&self) -> Vec<usize> {
        self.faces.values().filter(|f| f.index != 0 && !f.boundary).map(|f| f.index).collect()
    }

    /// The strand permutation `a ↦ end of p_a`; isolated vertices are fixed.
    pub fn strand_permutation(&self, n: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=n).collect();
        for s in &self.strands {
            out[s.start - 1] = s.end;
        }
        out
    }
}

/// Follow the rules of the road from boundary vertex `a`. Returns the strand
/// and the quarter cell to the right of its first segment.
fn trace_strand(le: &LeDiagram, steps: &[BoundaryStep], a: usize) -> Option<(Strand, (usize, usize))> {
    let lam = &le.shape;
    let (mut pos, mut dir, start_point, right_cell) = match steps[a - 1] {
        BoundaryStep::East(i) => {
            let &j = le.row_dots(i).last()?;
            let p = (2 * i - 1, 2 * lam.row(i));
            ((i, j), Dir::W, p, (2 * i - 2, 2 * lam.row(i) - 1))
        }
        BoundaryStep::South(j) => {
            let &i = le.col_dots(j).last()?;
            let p = (2 * lam.col(j), 2 * j - 1);
            ((i, j), Dir::N, p, (2 * lam.col(j) - 1, 2 * j - 1))
        }
    };
    let centre = |(i, j): (usize, usize)| (2 * i - 1, 2 * j - 1);
    let mut points = vec![start_point, centre(pos)];
    loop {
        let (i, j) = pos;
        let left = le.row_dots(i).into_iter().filter(|&b| b < j).max();
        let up = le.col_dots(j).into_iter().filter(|&x| x < i).max();
        let next_dir = match dir {
            Dir::N if left.is_some() => Dir::W,
            Dir::N => Dir::E,
            Dir::W if up.is_some() => Dir::N,
            Dir::W => Dir::S,
            d => d,
        };
        let next = match next_dir {
            Dir::W => left.map(|b| (i, b)),
            Dir::N => up.map(|x| (x, j)),
            Dir::E => le.row_dots(i).into_iter().find(|&b| b > j).map(|b| (i, b)),
            Dir::S => le.col_dots(j).into_iter().find(|&x| x > i).map(|x| (x, j)),
        };
        match next {
            Some(p) => {
                pos = p;
                dir = next_dir;
                points.push(centre(p));
            }
            None => {
                let (end_point, end) = match next_dir {
                    Dir::E => ((2 * i - 1, 2 * lam.row(i)), le.east_label(i)),
                    Dir::S => ((2 * lam.col(j), 2 * j - 1), le.south_label(j)),
                    _ => unreachable!("lines start at dots"),
                };
                points.push(end_point);
                return Some((Strand { start: a, end, points }, right_cell));
            }
        }
    }
}
