//! Deodhar parametrization of a cell, its echelon representative, the
//! unipotent part of a point, index sets and the minors `f_r`.

use thiserror::Error;

use crate::exact_algebra::{AlgebraError, LaurentPoly, Matrix, Var};
use crate::le_diagram::LeDiagram;
use crate::weyl_group::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("index set {0:?} does not split as [1,a] ⊔ [k+1,b]")]
    BadIndexSet(Vec<usize>),
    #[error("trailing minor vanishes at column {0}")]
    SingularTrailingMinor(usize),
}

type Mat = Matrix<LaurentPoly>;

/// `ṡ_i`: identity except the block `[[0, 1], [-1, 0]]` on rows/columns `i, i+1`.
pub fn simple_lift(n: usize, i: usize) -> Mat {
    let mut m = Mat::identity(n);
    m.set(i - 1, i - 1, LaurentPoly::zero());
    m.set(i, i, LaurentPoly::zero());
    m.set(i - 1, i, LaurentPoly::one());
    m.set(i, i - 1, LaurentPoly::int(-1));
    m
}

/// `x_i(t) = I + t E_{i,i+1}`.
pub fn x_matrix(n: usize, i: usize, t: LaurentPoly) -> Mat {
    let mut m = Mat::identity(n);
    m.set(i - 1, i, t);
    m
}

/// Signed lift of a product of simple reflections.
pub fn lift_word(n: usize, letters: &[usize]) -> Mat {
    let mut m = Mat::identity(n);
    for &i in letters {
        m = m.mul(&simple_lift(n, i)).expect("square");
    }
    m
}

/// Signed lift `ẇ` through any reduced word.
pub fn lift_perm(w: &Permutation) -> Mat {
    lift_word(w.n(), w.reduced_word().letters())
}

/// `inv(i, j) = #{j' > j : w(j') < i}`.
pub fn inv_count(w: &Permutation, i: usize, j: usize) -> usize {
    ((j + 1)..=w.n()).filter(|&jj| w.apply(jj) < i).count()
}

/// `g = g_1 ⋯ g_m` with `g_r = x_{i_r}(t_r)` for dots and `ṡ_{i_r}` otherwise.
pub fn deodhar_matrix(le: &LeDiagram) -> Mat {
    let n = le.n();
    let mut g = Mat::identity(n);
    for r in 1..=le.m() {
        let i = le.word().letter(r);
        let factor = if le.is_dot(r) { x_matrix(n, i, LaurentPoly::var(Var::t(r))) } else { simple_lift(n, i) };
        g = g.mul(&factor).expect("square");
    }
    g
}

/// `v̇`, the lift of the letters used by the subexpression.
pub fn v_lift(le: &LeDiagram) -> Mat {
    let letters: Vec<usize> = le.mask().used_positions().into_iter().map(|r| le.word().letter(r)).collect();
    lift_word(le.n(), &letters)
}

/// The last `n-k` columns.
pub fn right_block(m: &Mat, k: usize) -> Mat {
    m.last_columns(k)
}

/// Echelon representative `h`: the first `k` columns of `ẇ`, and in column
/// `j > k` a one in row `w(j)`, signed path weights in rows `w[k]`, zeros elsewhere.
pub fn echelon_matrix(le: &LeDiagram) -> Mat {
    let (n, k) = (le.n(), le.k());
    let w = le.w();
    let wdot = lift_word(n, le.word().letters());
    let mut h = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..k {
            h.set(i, j, wdot.get(i, j).clone());
        }
    }
    let top = w.image_range(1, k);
    for j in (k + 1)..=n {
        h.set(w.apply(j) - 1, j - 1, LaurentPoly::one());
        for &i in &top {
            let m = le.meas(i, w.apply(j));
            let signed = if inv_count(&w, i, j) % 2 == 1 { -&m } else { m };
            h.set(i - 1, j - 1, signed);
        }
    }
    h
}

/// Column-echelon form of an `n × d` matrix normalized to the identity on the
/// given rows: `x · (x_S)^{-1}`.
pub fn normalize_on_rows(x: &Mat, rows: &[usize]) -> Result<Mat, ParamError> {
    let d = x.cols();
    let idx: Vec<usize> = rows.iter().map(|&r| r - 1).collect();
    let all: Vec<usize> = (0..d).collect();
    let xs = x.submatrix(&idx, &all);
    let det = xs.det()?;
    if det.is_zero() {
        return Err(AlgebraError::DivisionByZero.into());
    }
    let mut out = Mat::zeros(x.rows(), d);
    for i in 0..x.rows() {
        for c in 0..d {
            // Cramer: replace row c of x_S by row i of x
            let mut m = xs.clone();
            for b in 0..d {
                m.set(c, b, x.get(i, b).clone());
            }
            out.set(i, c, m.det()?.exact_div(&det)?);
        }
    }
    Ok(out)
}

/// Factor `x = y · l` with `y` upper unitriangular and `l` lower triangular;
/// returns `y`. Needs every trailing principal minor to divide exactly.
pub fn unipotent_part(x: &Mat) -> Result<Mat, ParamError> {
    let n = x.rows();
    let mut y = Mat::identity(n);
    for j in 1..=n {
        let tail: Vec<usize> = (j..=n).collect();
        let den = x.minor1(&tail, &tail)?;
        if den.is_zero() {
            return Err(ParamError::SingularTrailingMinor(j));
        }
        for i in 1..j {
            let mut rows = vec![i];
            rows.extend((j + 1)..=n);
            let num = x.minor1(&rows, &tail)?;
            y.set(i - 1, j - 1, num.exact_div(&den)?);
        }
    }
    Ok(y)
}

/// The unipotent `y` with `v̇ y` and the Deodhar matrix defining the same point.
pub fn deodhar_unipotent(le: &LeDiagram) -> Result<Mat, ParamError> {
    let x = v_lift(le).transpose().mul(&deodhar_matrix(le))?;
    unipotent_part(&x)
}

/// Index sets for position `r`: `A = V^(r-1)[i_r]`, `B = W^(r-1)[i_r] = [1,a] ⊔ [k+1,b]`
/// and `C = (A ∖ [1,a]) ⊔ [b+1, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexSets {
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub c_set: Vec<usize>,
}

pub fn index_sets(le: &LeDiagram, r: usize) -> Result<IndexSets, ParamError> {
    let (n, k) = (le.n(), le.k());
    let ir = le.word().letter(r);
    let p = le.prefix();
    let a_set = p.v_suffix_inverse(r - 1).image_range(1, ir);
    let b_set = p.w_suffix_inverse(r - 1).image_range(1, ir);
    let a = b_set.iter().enumerate().take_while(|&(idx, &x)| x == idx + 1).count();
    let rest = &b_set[a..];
    let b = k + rest.len();
    if rest.iter().enumerate().any(|(idx, &x)| x != k + 1 + idx) || a > k {
        return Err(ParamError::BadIndexSet(b_set));
    }
    if !(1..=a).all(|x| a_set.contains(&x)) {
        return Err(ParamError::BadIndexSet(a_set));
    }
    let mut c_set: Vec<usize> = a_set.iter().copied().filter(|&x| x > a).collect();
    c_set.extend((b + 1)..=n);
    c_set.sort_unstable();
    Ok(IndexSets { a_set, b_set, a, b, c_set })
}

/// `f_r(y) = Δ_{A_r, B_r}(y)`.
pub fn leclerc_minor(le: &LeDiagram, r: usize, y: &Mat) -> Result<LaurentPoly, ParamError> {
    let s = index_sets(le, r)?;
    Ok(y.minor1(&s.a_set, &s.b_set)?)
}

/// Plücker coordinate `Δ_I` of the last `n-k` columns.
pub fn right_plucker(m: &Mat, k: usize, rows: &[usize]) -> Result<LaurentPoly, ParamError> {
    let cols: Vec<usize> = ((k + 1)..=m.cols()).collect();
    Ok(m.minor1(rows, &cols)?)
}

/// Generic upper unitriangular matrix with entries `u_i_j`.
pub fn generic_unipotent(n: usize) -> Mat {
    let mut m = Mat::identity(n);
    for i in 1..=n {
        for j in (i + 1)..=n {
            m.set(i - 1, j - 1, LaurentPoly::var(Var::u(i, j)));
        }
    }
    m
}
