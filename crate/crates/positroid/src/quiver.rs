//! Ice quivers: the quiver read off the planar graph, the quiver built from
//! irreducible morphisms of the shapes `ν_r`, mutation and exchange matrices.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact_algebra::integer_rank;
use crate::le_diagram::{LeDiagram, PlanarGraph};
use crate::shapes::{is_irreducible, nu_by_nw_chain, YoungDiagram};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} is frozen")]
    Frozen(usize),
    #[error("arrows {0} -> {1} and {1} -> {0} both produced")]
    TwoCycle(usize, usize),
    #[error("parallel arrows {0} -> {1}")]
    Parallel(usize, usize),
    #[error("shape error: {0}")]
    Shape(String),
}

/// Quiver with frozen vertices, stored as a skew-symmetric signed arrow count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IceQuiver {
    labels: Vec<usize>,
    frozen: Vec<bool>,
    b: Vec<Vec<i64>>,
}

impl IceQuiver {
    pub fn new(vertices: Vec<(usize, bool)>) -> Self {
        let mut vertices = vertices;
        vertices.sort_unstable();
        let n = vertices.len();
        IceQuiver {
            labels: vertices.iter().map(|v| v.0).collect(),
            frozen: vertices.iter().map(|v| v.1).collect(),
            b: vec![vec![0; n]; n],
        }
    }

    /// Quiver from an arrow list; opposite arrows cancel.
    pub fn from_arrows(vertices: Vec<(usize, bool)>, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        let mut q = Self::new(vertices);
        for &(a, b) in arrows {
            q.add_arrow(a, b)?;
        }
        Ok(q)
    }

    pub fn index(&self, label: usize) -> Result<usize, QuiverError> {
        self.labels.binary_search(&label).map_err(|_| QuiverError::UnknownVertex(label))
    }

    pub fn add_arrow(&mut self, from: usize, to: usize) -> Result<(), QuiverError> {
        let (i, j) = (self.index(from)?, self.index(to)?);
        self.b[i][j] += 1;
        self.b[j][i] -= 1;
        Ok(())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn is_frozen(&self, label: usize) -> bool {
        self.index(label).map_or(false, |i| self.frozen[i])
    }

    pub fn mutable(&self) -> Vec<usize> {
        self.labels.iter().zip(&self.frozen).filter(|(_, &f)| !f).map(|(&l, _)| l).collect()
    }

    pub fn frozen(&self) -> Vec<usize> {
        self.labels.iter().zip(&self.frozen).filter(|(_, &f)| f).map(|(&l, _)| l).collect()
    }

    /// Signed number of arrows `from → to`.
    pub fn weight(&self, from: usize, to: usize) -> i64 {
        match (self.index(from), self.index(to)) {
            (Ok(i), Ok(j)) => self.b[i][j],
            _ => 0,
        }
    }

    /// Arrows `(from, to, multiplicity)`, sorted.
    pub fn arrows(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for i in 0..self.labels.len() {
            for j in 0..self.labels.len() {
                if self.b[i][j] > 0 {
                    out.push((self.labels[i], self.labels[j], self.b[i][j]));
                }
            }
        }
        out
    }

    /// Vertices with arrows into `label`, with multiplicity.
    pub fn in_neighbors(&self, label: usize) -> Vec<(usize, i64)> {
        let Ok(r) = self.index(label) else { return Vec::new() };
        (0..self.labels.len()).filter(|&i| self.b[i][r] > 0).map(|i| (self.labels[i], self.b[i][r])).collect()
    }

    /// Vertices with arrows out of `label`, with multiplicity.
    pub fn out_neighbors(&self, label: usize) -> Vec<(usize, i64)> {
        let Ok(r) = self.index(label) else { return Vec::new() };
        (0..self.labels.len()).filter(|&j| self.b[r][j] > 0).map(|j| (self.labels[j], self.b[r][j])).collect()
    }

    /// `B̃`: rows are all vertices, columns the mutable ones, in label order.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let cols: Vec<usize> = (0..self.labels.len()).filter(|&j| !self.frozen[j]).collect();
        self.b.iter().map(|row| cols.iter().map(|&j| row[j]).collect()).collect()
    }

    pub fn exchange_rank(&self) -> usize {
        integer_rank(&self.exchange_matrix())
    }

    /// Quiver mutation at a mutable vertex.
    pub fn mutate(&self, label: usize) -> Result<IceQuiver, QuiverError> {
        let r = self.index(label)?;
        if self.frozen[r] {
            return Err(QuiverError::Frozen(label));
        }
        let n = self.labels.len();
        let mut b = self.b.clone();
        for i in 0..n {
            for j in 0..n {
                if i == r || j == r {
                    b[i][j] = -self.b[i][j];
                } else {
                    let (x, y) = (self.b[i][r], self.b[r][j]);
                    b[i][j] = self.b[i][j] + (x.abs() * y + x * y.abs()) / 2;
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.frozen[i] && self.frozen[j] {
                    b[i][j] = 0;
                }
            }
        }
        Ok(IceQuiver { labels: self.labels.clone(), frozen: self.frozen.clone(), b })
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph {} {{", name);
        for (l, &f) in self.labels.iter().zip(&self.frozen) {
            let shape = if f { "box" } else { "circle" };
            let _ = writeln!(s, "  F{} [shape={}];", l, shape);
        }
        for (a, b, m) in self.arrows() {
            for _ in 0..m {
                let _ = writeln!(s, "  F{} -> F{};", a, b);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Matrix mutation of a full skew-symmetric matrix at index `k`.
pub fn matrix_mutation(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

/// The quiver `Q_D`: one vertex per dot, frozen when its face touches the
/// boundary; arrows from the local rule at each dot, dropping arrows at the
/// north-west face and between frozen vertices.
pub fn quiver_from_graph(le: &LeDiagram, graph: &PlanarGraph) -> Result<IceQuiver, QuiverError> {
    let vertices: Vec<(usize, bool)> = le.j_circ().into_iter().map(|r| (r, graph.is_boundary(r))).collect();
    let mut raw: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for nb in graph.neighborhoods.values() {
        let mut local = Vec::new();
        match (nb.up, nb.left) {
            (false, false) => local.push((nb.r, nb.c)),
            (false, true) => local.push((nb.r, nb.b)),
            (true, false) => local.push((nb.r, nb.a)),
            (true, true) => {
                local.push((nb.r, nb.a));
                local.push((nb.r, nb.b));
                local.push((nb.c, nb.r));
            }
        }
        for (x, y) in local {
            if x == 0 || y == 0 || (graph.is_boundary(x) && graph.is_boundary(y)) {
                continue;
            }
            *raw.entry((x, y)).or_insert(0) += 1;
        }
    }
    for (&(x, y), &m) in &raw {
        if raw.contains_key(&(y, x)) {
            return Err(QuiverError::TwoCycle(x, y));
        }
        if m > 1 {
            return Err(QuiverError::Parallel(x, y));
        }
    }
    let arrows: Vec<(usize, usize)> = raw.keys().copied().collect();
    IceQuiver::from_arrows(vertices, &arrows)
}

/// Shapes `ν_r` for the dots, from the north-west chains.
pub fn nu_family(le: &LeDiagram) -> Result<BTreeMap<usize, YoungDiagram>, QuiverError> {
    le.j_circ()
        .into_iter()
        .map(|r| {
            YoungDiagram::from_frobenius(&nu_by_nw_chain(le, r))
                .map(|d| (r, d))
                .map_err(|e| QuiverError::Shape(e.to_string()))
        })
        .collect()
}

/// The quiver with an arrow `r → r'` whenever some `ν_r →p ν_r'` is
/// irreducible and one endpoint is mutable.
pub fn quiver_from_morphisms(le: &LeDiagram, graph: &PlanarGraph) -> Result<IceQuiver, QuiverError> {
    let nus = nu_family(le)?;
    let family: Vec<YoungDiagram> = nus.values().cloned().collect();
    let vertices: Vec<(usize, bool)> = le.j_circ().into_iter().map(|r| (r, graph.is_boundary(r))).collect();
    let mut arrows = Vec::new();
    for (&r, lam) in &nus {
        for (&s, mu) in &nus {
            if r == s || (graph.is_boundary(r) && graph.is_boundary(s)) {
                continue;
            }
            let depth = mu.frobenius().len();
            if (0..depth).any(|p| is_irreducible(lam, mu, p, &family)) {
                arrows.push((r, s));
            }
        }
    }
    IceQuiver::from_arrows(vertices, &arrows)
}
