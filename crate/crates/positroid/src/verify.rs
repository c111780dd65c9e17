//! Per-cell verification suites shared by the CLI and the acceptance tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::cluster::{explore, positivity_sampling, verify_mutated_laurent, Seed};
use crate::exact_algebra::{same_grassmann_point, LaurentPoly, Matrix, Var};
use crate::le_diagram::{LeDiagram, PlanarGraph};
use crate::parametrization::{
    deodhar_matrix, deodhar_unipotent, echelon_matrix, index_sets, leclerc_minor, right_block, right_plucker, v_lift,
};
use crate::quiver::{nu_family, quiver_from_graph, quiver_from_morphisms, IceQuiver};
use crate::shapes::nu_by_definition;
use crate::twist::{point_matrix, reverse_necklace, twist_laurent, TwistTable};
use crate::weyl_group::enumerate_qj;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    NuShapes,
    QuiverIso,
    MinorIdentity,
    CSets,
    PointEquality,
    TwistMinors,
    Positivity,
    MutatedLaurent,
    FullRank,
    Laurent,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::NuShapes,
        Suite::QuiverIso,
        Suite::MinorIdentity,
        Suite::CSets,
        Suite::PointEquality,
        Suite::TwistMinors,
        Suite::Positivity,
        Suite::MutatedLaurent,
        Suite::FullRank,
        Suite::Laurent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::NuShapes => "nu_shapes",
            Suite::QuiverIso => "quiver_iso",
            Suite::MinorIdentity => "minor_identity",
            Suite::CSets => "c_sets",
            Suite::PointEquality => "point_equality",
            Suite::TwistMinors => "twist_minors",
            Suite::Positivity => "positivity",
            Suite::MutatedLaurent => "mutated_laurent",
            Suite::FullRank => "full_rank",
            Suite::Laurent => "laurent",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| format!("unknown suite `{}`", s))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub depth: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { depth: 3, samples: 20, seed: 0 }
    }
}

/// A cell with its planar graph and quiver.
#[derive(Clone, Debug)]
pub struct Cell {
    pub le: LeDiagram,
    pub graph: PlanarGraph,
    pub quiver: IceQuiver,
}

impl Cell {
    pub fn new(le: LeDiagram) -> Result<Self, String> {
        let graph = le.graph();
        let quiver = quiver_from_graph(&le, &graph).map_err(|e| e.to_string())?;
        Ok(Cell { le, graph, quiver })
    }

    /// `parts/mask`, e.g. `3,3,2/10110111`.
    pub fn id(&self) -> String {
        cell_id(&self.le)
    }
}

pub fn cell_id(le: &LeDiagram) -> String {
    let parts: Vec<String> = le.shape().parts().iter().map(|p| p.to_string()).collect();
    let mask: String = le.dot_mask().iter().map(|&d| if d { '1' } else { '0' }).collect();
    format!("{}/{}", parts.join(","), mask)
}

/// Every cell of `Gr(k, n)` in enumeration order.
pub fn all_cells(k: usize, n: usize) -> Vec<LeDiagram> {
    enumerate_qj(k, n)
        .into_iter()
        .map(|p| LeDiagram::from_shape_and_v(k, n, p.shape, &p.v).expect("enumerated pair"))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub suite: Suite,
    pub k: usize,
    pub n: usize,
    pub cell: String,
    pub passed: bool,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

pub fn run(suite: Suite, cell: &Cell, opts: &VerifyOptions) -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    let res = match suite {
        Suite::NuShapes => nu_shapes(cell, &mut failures),
        Suite::QuiverIso => quiver_iso(cell, &mut failures),
        Suite::MinorIdentity => minor_identity(cell, &mut failures),
        Suite::CSets => c_sets(cell, &mut failures),
        Suite::PointEquality => point_equality(cell, &mut failures),
        Suite::TwistMinors => twist_minors(cell, &mut failures),
        Suite::Positivity => positivity(cell, opts, &mut failures, &mut notes),
        Suite::MutatedLaurent => mutated_laurent(cell, &mut failures, &mut notes),
        Suite::FullRank => full_rank(cell, &mut failures),
        Suite::Laurent => laurent(cell, opts, &mut failures, &mut notes),
    };
    if let Err(e) = res {
        failures.push(format!("error: {}", e));
    }
    Outcome {
        suite,
        k: cell.le.k(),
        n: cell.le.n(),
        cell: cell.id(),
        passed: failures.is_empty(),
        failures,
        notes,
    }
}

type Check = Result<(), String>;

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn nu_shapes(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let chain = nu_family(&cell.le).map_err(err)?;
    for (r, nu) in chain {
        let def = nu_by_definition(cell.le.prefix(), r).map_err(err)?;
        if def != nu {
            failures.push(format!("r={}: definition {:?} vs chain {:?}", r, def.parts(), nu.parts()));
        }
    }
    Ok(())
}

fn quiver_iso(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let q = quiver_from_morphisms(&cell.le, &cell.graph).map_err(err)?;
    if q != cell.quiver {
        failures.push(format!("morphism arrows {:?} vs graph arrows {:?}", q.arrows(), cell.quiver.arrows()));
    }
    Ok(())
}

fn minor_identity(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let (le, k, n) = (&cell.le, cell.le.k(), cell.le.n());
    let y = deodhar_unipotent(le).map_err(err)?;
    let vy = v_lift(le).mul(&y).map_err(err)?;
    let d0 = right_plucker(&vy, k, cell.graph.label(0)).map_err(err)?;
    let tail: Vec<usize> = ((k + 1)..=n).collect();
    for r in le.j_circ() {
        let f = leclerc_minor(le, r, &y).map_err(err)?;
        let dr = right_plucker(&vy, k, cell.graph.label(r)).map_err(err)?;
        if &f * &d0 != dr {
            failures.push(format!("r={}: f_r = {} but face minor ratio differs", r, f));
        }
        let c = index_sets(le, r).map_err(err)?.c_set;
        let alt = y.minor1(&c, &tail).map_err(err)?;
        if alt != f {
            failures.push(format!("r={}: C-minor {} differs from f_r {}", r, alt, f));
        }
    }
    Ok(())
}

fn c_sets(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let v = cell.le.v();
    for r in cell.le.j_circ() {
        let c = index_sets(&cell.le, r).map_err(err)?.c_set;
        let mut vc = v.image(&c);
        vc.sort_unstable();
        if vc != cell.graph.label(r) {
            failures.push(format!("r={}: vC = {:?}, face label {:?}", r, vc, cell.graph.label(r)));
        }
    }
    Ok(())
}

fn point_equality(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let k = cell.le.k();
    let g = right_block(&deodhar_matrix(&cell.le), k);
    let h = right_block(&echelon_matrix(&cell.le), k);
    if !same_grassmann_point(&g, &h).map_err(err)? {
        failures.push("echelon matrix is a different point".into());
    }
    for r in std::iter::once(0).chain(cell.graph.boundary_dots()) {
        if g.plucker1(cell.graph.label(r)).map_err(err)?.is_zero() {
            failures.push(format!("boundary minor of face {} vanishes", r));
        }
    }
    Ok(())
}

fn twist_minors(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let table = TwistTable::new(&cell.le, &cell.graph);
    for r in cell.le.j_circ() {
        let t = LaurentPoly::var(Var::t(r));
        let back = table.to_t(&table.to_q(&t).map_err(err)?).map_err(err)?;
        if back != t {
            failures.push(format!("chamber ansatz at {} gives {}", r, back));
        }
    }
    let x = point_matrix(&cell.le, &cell.graph).map_err(err)?;
    let tau = twist_laurent(&x).map_err(err)?;
    check_pairing(&x, &tau, failures).map_err(err)?;
    for (&r, face) in &cell.graph.faces {
        let got = tau.plucker1(&face.label).map_err(err)?;
        if got != table.q(r) {
            failures.push(format!("twisted minor of face {} is {}, expected {}", r, got, table.q(r)));
        }
        if r == 0 || face.boundary {
            let plain = x.plucker1(&face.label).map_err(err)?;
            if &plain * &table.q(r) != LaurentPoly::one() {
                failures.push(format!("face {}: minor {} is not 1/q", r, plain));
            }
        }
    }
    let mut neck = reverse_necklace(&x).map_err(err)?;
    neck.sort();
    neck.dedup();
    let mut labels: Vec<Vec<usize>> =
        cell.graph.faces.values().filter(|f| f.index == 0 || f.boundary).map(|f| f.label.clone()).collect();
    labels.sort();
    labels.dedup();
    if neck != labels {
        failures.push(format!("necklace {:?} vs boundary labels {:?}", neck, labels));
    }
    Ok(())
}

/// `⟨τ_i, x_j⟩ = δ_ij` for `j` in the forward necklace basis at `i`.
fn check_pairing(
    x: &Matrix<LaurentPoly>,
    tau: &Matrix<LaurentPoly>,
    failures: &mut Vec<String>,
) -> Result<(), crate::exact_algebra::AlgebraError> {
    let necklace = crate::twist::forward_necklace(x)?;
    for i in 1..=x.rows() {
        if !necklace[i - 1].contains(&i) {
            continue;
        }
        for &j in &necklace[i - 1] {
            let mut dot = LaurentPoly::zero();
            for c in 0..x.cols() {
                dot = &dot + &(tau.get(i - 1, c) * x.get(j - 1, c));
            }
            let want = if i == j { LaurentPoly::one() } else { LaurentPoly::zero() };
            if dot != want {
                failures.push(format!("pairing of twist row {} with row {} is {}", i, j, dot));
            }
        }
    }
    Ok(())
}

fn positivity(cell: &Cell, opts: &VerifyOptions, failures: &mut Vec<String>, notes: &mut Vec<String>) -> Check {
    let rep = positivity_sampling(&cell.le, &cell.graph, &cell.quiver, opts.samples, opts.depth, opts.seed)
        .map_err(err)?;
    if !rep.ok() {
        failures.push(format!(
            "negative Plücker {}, nonpositive q {}, nonpositive cluster values {}",
            rep.negative_plucker, rep.nonpositive_q, rep.nonpositive_cluster
        ));
    }
    if rep.budget_hits > 0 {
        notes.push(format!("{} mutation branches over budget", rep.budget_hits));
    }
    Ok(())
}

fn mutated_laurent(cell: &Cell, failures: &mut Vec<String>, notes: &mut Vec<String>) -> Check {
    let rep = verify_mutated_laurent(&cell.le, &cell.graph, &cell.quiver).map_err(err)?;
    for p in &rep.failures {
        failures.push(format!("entry ({}, {}) not Laurent after mutation at {}", p.row, p.col, p.vertex));
    }
    for p in &rep.poles {
        notes.push(format!(
            "entry ({}, {}) = {} has a pole along q_{}; rewritten {}",
            p.row,
            p.col,
            p.entry,
            p.vertex,
            p.rewritten.as_deref().unwrap_or("-")
        ));
    }
    for (r, i, j) in &rep.budget_hits {
        notes.push(format!("budget hit: entry ({}, {}) at {}", i, j, r));
    }
    Ok(())
}

fn full_rank(cell: &Cell, failures: &mut Vec<String>) -> Check {
    let rank = cell.quiver.exchange_rank();
    let m = cell.quiver.mutable().len();
    if rank != m {
        failures.push(format!("exchange matrix rank {} < {}", rank, m));
    }
    Ok(())
}

fn laurent(cell: &Cell, opts: &VerifyOptions, failures: &mut Vec<String>, notes: &mut Vec<String>) -> Check {
    let ex = explore(&Seed::initial(cell.quiver.clone(), Var::x), opts.depth);
    for p in &ex.not_laurent {
        failures.push(format!("mutation sequence {:?} is not Laurent", p));
    }
    if !ex.budget_hits.is_empty() {
        notes.push(format!("{} mutation branches over budget", ex.budget_hits.len()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_in_gr_2_4() {
        let opts = VerifyOptions { samples: 3, ..Default::default() };
        for le in all_cells(2, 4) {
            let cell = Cell::new(le).unwrap();
            for suite in Suite::ALL {
                let o = run(suite, &cell, &opts);
                assert!(o.passed, "{} {}: {:?}", suite, o.cell, o.failures);
            }
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
    }
}
