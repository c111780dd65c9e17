//! Twisted face minors `q_r`, the monomial change of variables between the
//! torus coordinates and the `q_r`, Grassmann necklaces and the twist map.

use std::collections::BTreeMap;

use crate::exact_algebra::{AlgebraError, FractionPair, LaurentPoly, Matrix, Monomial, Var};
use crate::le_diagram::{LeDiagram, PlanarGraph};
use crate::parametrization::{deodhar_matrix, right_block, ParamError};

type Mat = Matrix<LaurentPoly>;

/// `q_r(t)` for every face and `t_r(q)` for every dot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistTable {
    pub q_in_t: BTreeMap<usize, Monomial>,
    pub t_in_q: BTreeMap<usize, Monomial>,
}

impl TwistTable {
    pub fn new(le: &LeDiagram, graph: &PlanarGraph) -> Self {
        let dots = le.dots();
        let mut q_in_t = BTreeMap::new();
        q_in_t.insert(0, Monomial::one());
        for &(r, (i, j)) in &dots {
            let m = Monomial::from_exponents(
                dots.iter().filter(|(_, (a, b))| *a <= i && *b <= j).map(|&(s, _)| (Var::t(s), -1)),
            );
            q_in_t.insert(r, m);
        }
        let qv = |f: usize, e: i32| if f == 0 { None } else { Some((Var::q(f), e)) };
        let mut t_in_q = BTreeMap::new();
        for nb in graph.neighborhoods.values() {
            let m = Monomial::from_exponents(
                [qv(nb.a, 1), qv(nb.b, 1), qv(nb.c, -1), qv(nb.r, -1)].into_iter().flatten(),
            );
            t_in_q.insert(nb.r, m);
        }
        TwistTable { q_in_t, t_in_q }
    }

    pub fn q(&self, r: usize) -> LaurentPoly {
        LaurentPoly::monomial(self.q_in_t[&r].clone())
    }

    /// Substitution `t_r ↦ t_r(q)`.
    pub fn t_to_q_map(&self) -> BTreeMap<Var, LaurentPoly> {
        self.t_in_q.iter().map(|(&r, m)| (Var::t(r), LaurentPoly::monomial(m.clone()))).collect()
    }

    /// Substitution `q_r ↦ q_r(t)`.
    pub fn q_to_t_map(&self) -> BTreeMap<Var, LaurentPoly> {
        self.q_in_t
            .iter()
            .filter(|(&r, _)| r != 0)
            .map(|(&r, m)| (Var::q(r), LaurentPoly::monomial(m.clone())))
            .collect()
    }

    /// Rewrite a Laurent polynomial in the `t_r` as one in the `q_r`.
    pub fn to_q(&self, p: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        p.substitute(&self.t_to_q_map())
    }

    pub fn to_t(&self, p: &LaurentPoly) -> Result<LaurentPoly, AlgebraError> {
        p.substitute(&self.q_to_t_map())
    }
}

/// `x = g(t) P`, rescaled in its last column so that `Δ_{F_0}(x) = 1`.
pub fn point_matrix(le: &LeDiagram, graph: &PlanarGraph) -> Result<Mat, ParamError> {
    let mut x = right_block(&deodhar_matrix(le), le.k());
    let d0 = x.plucker1(graph.label(0))?;
    let inv = d0.unit_inverse().ok_or(AlgebraError::NotAUnit)?;
    if !inv.is_one() && x.cols() > 0 {
        let c = x.cols() - 1;
        for i in 0..x.rows() {
            let v = x.get(i, c) * &inv;
            x.set(i, c, v);
        }
    }
    Ok(x)
}

fn independent(x: &Mat, rows: &[usize]) -> Result<bool, AlgebraError> {
    if rows.len() > x.cols() {
        return Ok(false);
    }
    for cols in crate::exact_algebra::subsets(x.cols(), rows.len()) {
        if !x.minor1(rows, &cols)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Greedy lexicographically minimal row basis for the given row order.
fn greedy_basis(x: &Mat, order: impl Iterator<Item = usize>) -> Result<Vec<usize>, AlgebraError> {
    let mut basis = Vec::new();
    for r in order {
        let mut cand = basis.clone();
        cand.push(r);
        cand.sort_unstable();
        if independent(x, &cand)? {
            basis = cand;
        }
        if basis.len() == x.cols() {
            break;
        }
    }
    Ok(basis)
}

/// `I_i`: lex-minimal basis of rows in the order `i < i+1 < ... < n < 1 < ... < i-1`.
pub fn forward_necklace(x: &Mat) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let n = x.rows();
    (1..=n).map(|i| greedy_basis(x, (0..n).map(|s| (i - 1 + s) % n + 1))).collect()
}

/// Lex-minimal basis in the order `i < i-1 < ... < 1 < n < ... < i+1`.
pub fn reverse_necklace(x: &Mat) -> Result<Vec<Vec<usize>>, AlgebraError> {
    let n = x.rows();
    (1..=n).map(|i| greedy_basis(x, (0..n).map(|s| (i + n - 1 - s) % n + 1))).collect()
}

/// The twist: row `i` pairs to 1 with row `i` of `x` and to 0 with the other
/// rows of the forward necklace basis `I_i`; zero if `i ∉ I_i`.
pub fn twist_matrix(x: &Mat) -> Result<Matrix<FractionPair>, AlgebraError> {
    let (n, d) = (x.rows(), x.cols());
    let necklace = forward_necklace(x)?;
    let mut out = Matrix::<FractionPair>::zeros(n, d);
    let all: Vec<usize> = (0..d).collect();
    for i in 1..=n {
        let basis = &necklace[i - 1];
        let Some(p) = basis.iter().position(|&b| b == i) else { continue };
        let rows: Vec<usize> = basis.iter().map(|&b| b - 1).collect();
        let m = x.submatrix(&rows, &all);
        let det = m.det()?;
        for c in 0..d {
            let keep_r: Vec<usize> = (0..d).filter(|&a| a != p).collect();
            let keep_c: Vec<usize> = (0..d).filter(|&a| a != c).collect();
            let mut cof = m.submatrix(&keep_r, &keep_c).det()?;
            if (p + c) % 2 == 1 {
                cof = -&cof;
            }
            out.set(i - 1, c, FractionPair::new(cof, det.clone())?);
        }
    }
    Ok(out)
}

/// The twist with entries reduced to Laurent polynomials.
pub fn twist_laurent(x: &Mat) -> Result<Mat, AlgebraError> {
    twist_matrix(x)?.try_map(|f| f.to_laurent())
}
