//! Seeds, mutation over Laurent rings, the once-mutated Laurent test for
//! echelon entries, bounded mutation exploration and positivity sampling.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact_algebra::{AlgebraError, LaurentPoly, Matrix, Var};
use crate::le_diagram::{LeDiagram, PlanarGraph};
use crate::parametrization::{deodhar_matrix, echelon_matrix, right_block, ParamError};
use crate::quiver::{IceQuiver, QuiverError};
use crate::twist::TwistTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("mutation at {0} is not Laurent")]
    NotLaurent(usize),
}

/// Quiver together with one Laurent polynomial per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub quiver: IceQuiver,
    pub values: BTreeMap<usize, LaurentPoly>,
}

impl Seed {
    /// Seed whose value at `r` is the variable `var(r)`.
    pub fn initial(quiver: IceQuiver, var: impl Fn(usize) -> Var) -> Self {
        let values = quiver.labels().iter().map(|&r| (r, LaurentPoly::var(var(r)))).collect();
        Seed { quiver, values }
    }

    /// `∏_{i→r} x_i + ∏_{r→j} x_j`.
    pub fn exchange_binomial(&self, r: usize) -> LaurentPoly {
        let prod = |nbrs: Vec<(usize, i64)>| {
            nbrs.into_iter().fold(LaurentPoly::one(), |acc, (v, m)| &acc * &self.values[&v].pow(m as u32))
        };
        &prod(self.quiver.in_neighbors(r)) + &prod(self.quiver.out_neighbors(r))
    }

    pub fn mutate(&self, r: usize) -> Result<Seed, ClusterError> {
        let quiver = self.quiver.mutate(r)?;
        let new = self.exchange_binomial(r).exact_div(&self.values[&r]).map_err(|e| match e {
            AlgebraError::NotDivisible => ClusterError::NotLaurent(r),
            other => other.into(),
        })?;
        let mut values = self.values.clone();
        values.insert(r, new);
        Ok(Seed { quiver, values })
    }
}

/// Outcome of rewriting an entry in the cluster mutated once at `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MutatedLaurent {
    /// Order of the pole along `q_r`.
    pub d: i32,
    /// The entry in the variables `q_{≠r}`, `q'_r`, when it is Laurent there.
    pub rewritten: Option<LaurentPoly>,
}

impl MutatedLaurent {
    pub fn is_laurent(&self) -> bool {
        self.rewritten.is_some()
    }
}

/// Write `entry = Σ_m c_m q_r^{m-d}`, substitute `q_r = E / q'_r`, and test
/// whether `E^d` divides `Σ_m c_m E^m q'_r^{d-m}`.
pub fn laurent_in_mutated_cluster(entry: &LaurentPoly, r: usize, seed: &Seed) -> Result<MutatedLaurent, ClusterError> {
    let qr = seed.values[&r].vars();
    let var = match qr.as_slice() {
        [v] => *v,
        _ => return Err(AlgebraError::Shape(format!("vertex {} does not carry a variable", r)).into()),
    };
    let prime = Var { family: crate::exact_algebra::Family::QPrime, index: var.index };
    let e = seed.exchange_binomial(r);
    let d = (-entry.min_exponent(var)).max(0);
    let mut sum = LaurentPoly::zero();
    for (exp, c) in entry.coefficients_in(var) {
        let m = exp + d;
        let qpow = LaurentPoly::monomial(crate::exact_algebra::Monomial::from_exponents([(prime, d - m)]));
        sum = &sum + &(&(&c * &e.pow(m as u32)) * &qpow);
    }
    match sum.exact_div(&e.pow(d as u32)) {
        Ok(q) => Ok(MutatedLaurent { d, rewritten: Some(q) }),
        Err(AlgebraError::NotDivisible) => Ok(MutatedLaurent { d, rewritten: None }),
        Err(other) => Err(other.into()),
    }
}

/// An entry of `h` with a pole along some mutable `q_r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleEntry {
    pub vertex: usize,
    pub row: usize,
    pub col: usize,
    pub order: i32,
    pub entry: String,
    pub rewritten: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct MutatedLaurentReport {
    pub checked: usize,
    pub poles: Vec<PoleEntry>,
    pub failures: Vec<PoleEntry>,
    pub budget_hits: Vec<(usize, usize, usize)>,
}

/// The echelon representative with every entry rewritten in the `q_r`.
pub fn echelon_in_q(le: &LeDiagram, table: &TwistTable) -> Result<Matrix<LaurentPoly>, ClusterError> {
    Ok(echelon_matrix(le).try_map(|p| table.to_q(p))?)
}

/// Test every entry of `h` in every once-mutated cluster.
pub fn verify_mutated_laurent(
    le: &LeDiagram,
    graph: &PlanarGraph,
    quiver: &IceQuiver,
) -> Result<MutatedLaurentReport, ClusterError> {
    let table = TwistTable::new(le, graph);
    let h = echelon_in_q(le, &table)?;
    let seed = Seed::initial(quiver.clone(), Var::q);
    let mut report = MutatedLaurentReport::default();
    for r in quiver.mutable() {
        for i in 0..h.rows() {
            for j in 0..h.cols() {
                let entry = h.get(i, j);
                report.checked += 1;
                if entry.min_exponent(Var::q(r)) >= 0 {
                    continue;
                }
                match laurent_in_mutated_cluster(entry, r, &seed) {
                    Ok(res) => {
                        let pe = PoleEntry {
                            vertex: r,
                            row: i + 1,
                            col: j + 1,
                            order: res.d,
                            entry: entry.to_string(),
                            rewritten: res.rewritten.as_ref().map(|p| p.to_string()),
                        };
                        if res.is_laurent() {
                            report.poles.push(pe);
                        } else {
                            report.failures.push(pe);
                        }
                    }
                    Err(ClusterError::Algebra(AlgebraError::BudgetExceeded { .. })) => {
                        report.budget_hits.push((r, i + 1, j + 1));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(report)
}

/// Cluster variables reached by mutation sequences of length `≤ depth`.
#[derive(Clone, Debug, Default)]
pub struct Exploration {
    pub variables: Vec<LaurentPoly>,
    pub seeds_visited: usize,
    pub not_laurent: Vec<Vec<usize>>,
    pub budget_hits: Vec<Vec<usize>>,
}

/// Mutate in every direction up to `depth`, never undoing the previous step.
pub fn explore(seed: &Seed, depth: usize) -> Exploration {
    let mut out = Exploration::default();
    let mutable = seed.quiver.mutable();
    let mut frontier: Vec<(Seed, Vec<usize>)> = vec![(seed.clone(), Vec::new())];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (s, path) in &frontier {
            for &r in &mutable {
                if path.last() == Some(&r) {
                    continue;
                }
                let mut p = path.clone();
                p.push(r);
                match s.mutate(r) {
                    Ok(m) => {
                        out.seeds_visited += 1;
                        out.variables.push(m.values[&r].clone());
                        next.push((m, p));
                    }
                    Err(ClusterError::NotLaurent(_)) => out.not_laurent.push(p),
                    Err(_) => out.budget_hits.push(p),
                }
            }
        }
        frontier = next;
    }
    let unique: BTreeMap<String, LaurentPoly> = out.variables.drain(..).map(|v| (v.to_string(), v)).collect();
    out.variables = unique.into_values().collect();
    out
}

/// Random rational in `(0, 10]` with denominator at most 16.
pub fn random_positive(rng: &mut ChaCha8Rng) -> BigRational {
    let den: i64 = rng.gen_range(1..=16);
    let num: i64 = rng.gen_range(1..=10 * den);
    BigRational::new(num.into(), den.into())
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub samples: usize,
    pub negative_plucker: usize,
    pub nonpositive_q: usize,
    pub nonpositive_cluster: usize,
    pub cluster_variables: usize,
    pub budget_hits: usize,
}

impl PositivityReport {
    pub fn ok(&self) -> bool {
        self.negative_plucker == 0 && self.nonpositive_q == 0 && self.nonpositive_cluster == 0
    }
}

/// Sample positive `t`, check Plücker coordinates of `g(t)P`, the `q_r(t)`, and
/// every cluster variable up to `depth` evaluated at the `q_r(t)`.
pub fn positivity_sampling(
    le: &LeDiagram,
    graph: &PlanarGraph,
    quiver: &IceQuiver,
    samples: usize,
    depth: usize,
    seed: u64,
) -> Result<PositivityReport, ClusterError> {
    let table = TwistTable::new(le, graph);
    let x = right_block(&deodhar_matrix(le), le.k());
    let ex = explore(&Seed::initial(quiver.clone(), Var::x), depth);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = PositivityReport {
        cluster_variables: ex.variables.len(),
        budget_hits: ex.budget_hits.len(),
        ..Default::default()
    };
    for _ in 0..samples {
        report.samples += 1;
        let t: BTreeMap<Var, BigRational> = le.j_circ().into_iter().map(|r| (Var::t(r), random_positive(&mut rng))).collect();
        let xv = x.try_map(|p| p.eval(&t))?;
        let d0 = xv.plucker1(graph.label(0))?;
        let sign = if d0.is_negative() { -1 } else { 1 };
        for rows in crate::exact_algebra::subsets(x.rows(), x.cols()) {
            let p = xv.plucker1(&rows)? * BigRational::from_integer(sign.into());
            if p.is_negative() {
                report.negative_plucker += 1;
            }
        }
        let mut qv = BTreeMap::new();
        for &r in table.q_in_t.keys().filter(|&&r| r != 0) {
            let v = table.q(r).eval(&t)?;
            if !v.is_positive() {
                report.nonpositive_q += 1;
            }
            qv.insert(Var::x(r), v);
        }
        for var in &ex.variables {
            let v = var.eval(&qv)?;
            if v.is_zero() || v.is_negative() {
                report.nonpositive_cluster += 1;
            }
        }
    }
    Ok(report)
}
