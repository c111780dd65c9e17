//! Acceptance run: worked cells reproduced exactly, then exhaustive sweeps
//! over small Grassmannians. One PASS/FAIL line per criterion; the process
//! exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use positroid::cli::verify_cells;
use positroid::cluster::{laurent_in_mutated_cluster, Seed};
use positroid::exact_algebra::{rat, same_grassmann_point, LaurentPoly, Matrix, Monomial, Var};
use positroid::le_diagram::LeDiagram;
use positroid::parametrization::{deodhar_matrix, echelon_matrix, right_block};
use positroid::quiver::quiver_from_graph;
use positroid::shapes::{nu_by_definition, nu_by_nw_chain, YoungDiagram};
use positroid::twist::{point_matrix, twist_laurent, TwistTable};
use positroid::verify::{all_cells, Suite, VerifyOptions};
use positroid::weyl_group::{shapes_in_rectangle, word_to_perm, Permutation};

/// Every comparison is exact; a criterion passes only with zero mismatches.
const MAX_MISMATCHES: usize = 0;
const SAMPLES_PER_CELL: usize = 20;
const MUTATION_DEPTH: usize = 3;
const SAMPLE_SEED: u64 = 2024;
const SWEEP_N_ALGEBRA: usize = 6;
const SWEEP_N_COMBINATORICS: usize = 7;
const ENUMERATION_MAX_N: usize = 8;

const BUDGET_SMALL: Duration = Duration::from_secs(1);
const BUDGET_FIGURE: Duration = Duration::from_secs(2);
const BUDGET_QUIVER_SWEEP: Duration = Duration::from_secs(300);
const BUDGET_MINOR_SWEEP: Duration = Duration::from_secs(600);
const BUDGET_C_SWEEP: Duration = Duration::from_secs(60);
const BUDGET_POINT_SWEEP: Duration = Duration::from_secs(900);
const BUDGET_RANK_SWEEP: Duration = Duration::from_secs(60);
const BUDGET_OPEN: Duration = Duration::from_secs(3600);

type Mat = Matrix<LaurentPoly>;

fn t(i: usize) -> Var {
    Var::t(i)
}

fn q(i: usize) -> Var {
    Var::q(i)
}

/// `c · ∏ v^e`.
fn mono(c: i64, factors: &[(Var, i32)]) -> LaurentPoly {
    LaurentPoly::term(rat(c), Monomial::from_exponents(factors.iter().copied()))
}

/// `c / ∏ den`.
fn over(c: i64, den: &[Var]) -> LaurentPoly {
    mono(c, &den.iter().map(|&v| (v, -1)).collect::<Vec<_>>())
}

fn int(c: i64) -> LaurentPoly {
    LaurentPoly::int(c)
}

fn matrix(rows: Vec<Vec<LaurentPoly>>) -> Mat {
    Matrix::from_rows(rows).expect("rectangular")
}

/// Labels in the two-row cell are shifted by one against the box order used here.
fn shift_labels(m: &Mat, le: &LeDiagram) -> Mat {
    let map: BTreeMap<Var, LaurentPoly> = le.j_circ().into_iter().map(|r| (t(r), LaurentPoly::var(t(r + 1)))).collect();
    m.try_map(|p| p.substitute(&map)).expect("monomial substitution")
}

fn mismatch(report: &mut Vec<String>, what: &str, got: &impl std::fmt::Debug, want: &impl std::fmt::Debug) {
    report.push(format!("{}: got {:?}, want {:?}", what, got, want));
}

fn small_cell() -> LeDiagram {
    LeDiagram::from_shape_and_v(2, 5, YoungDiagram::new(vec![3, 2]).unwrap(), &Permutation::simple(5, 2)).unwrap()
}

fn figure_cell() -> LeDiagram {
    LeDiagram::from_shape_and_v(3, 6, YoungDiagram::new(vec![3, 3, 2]).unwrap(), &word_to_perm(6, &[2, 4])).unwrap()
}

fn small_cell_matrices() -> Vec<String> {
    let mut bad = Vec::new();
    let le = small_cell();
    let g = shift_labels(&deodhar_matrix(&le), &le);
    let want_g = matrix(vec![
        vec![int(1), int(0), mono(1, &[(t(3), 1)]), int(0), int(0)],
        vec![int(0), mono(-1, &[(t(2), 1)]), int(1), mono(1, &[(t(2), 1), (t(5), 1)]), int(0)],
        vec![int(0), int(-1), int(0), mono(1, &[(t(5), 1)]), int(0)],
        vec![int(0), int(0), int(0), int(1), mono(1, &[(t(4), 1)])],
        vec![int(0), int(0), int(0), int(0), int(1)],
    ]);
    if g != want_g {
        mismatch(&mut bad, "Deodhar matrix", &g, &want_g);
    }
    let h = shift_labels(&echelon_matrix(&le), &le);
    let want_h = matrix(vec![
        vec![int(0), int(0), int(1), int(0), int(0)],
        vec![int(0), int(0), int(0), int(1), int(0)],
        vec![int(1), int(0), over(-1, &[t(2), t(3)]), over(1, &[t(2)]), int(0)],
        vec![int(0), int(0), int(0), int(0), int(1)],
        vec![int(0), int(-1), over(1, &[t(2), t(3), t(4), t(5)]), over(-1, &[t(2), t(4), t(5)]), over(1, &[t(4)])],
    ]);
    if h != want_h {
        mismatch(&mut bad, "echelon matrix", &h, &want_h);
    }
    match same_grassmann_point(&right_block(&g, 2), &right_block(&h, 2)) {
        Ok(true) => {}
        other => bad.push(format!("point equality: {:?}", other)),
    }
    bad
}

fn small_cell_twist() -> Vec<String> {
    let mut bad = Vec::new();
    let le = small_cell();
    let graph = le.graph();
    let x = point_matrix(&le, &graph).expect("point");
    let want_x = matrix(vec![
        vec![mono(1, &[(t(3), 1)]), int(0), int(0)],
        vec![int(1), mono(1, &[(t(2), 1), (t(5), 1)]), int(0)],
        vec![int(0), mono(1, &[(t(5), 1)]), int(0)],
        vec![int(0), int(1), mono(1, &[(t(4), 1)])],
        vec![int(0), int(0), int(1)],
    ]);
    if shift_labels(&x, &le) != want_x {
        mismatch(&mut bad, "gauge-fixed point", &shift_labels(&x, &le), &want_x);
    }
    let tau = shift_labels(&twist_laurent(&x).expect("twist"), &le);
    let want_tau = matrix(vec![
        vec![over(1, &[t(3)]), over(-1, &[t(2), t(3), t(5)]), over(1, &[t(2), t(3), t(4), t(5)])],
        vec![int(1), int(0), int(0)],
        vec![int(0), over(1, &[t(5)]), over(-1, &[t(4), t(5)])],
        vec![int(0), int(1), int(0)],
        vec![int(0), int(0), int(1)],
    ]);
    if tau != want_tau {
        mismatch(&mut bad, "twist", &tau, &want_tau);
    }
    let table = TwistTable::new(&le, &graph);
    let want: [(usize, Vec<usize>, LaurentPoly); 5] = [
        (0, vec![2, 4, 5], int(1)),
        (2, vec![1, 2, 5], over(1, &[t(2), t(3), t(5)])),
        (3, vec![1, 4, 5], over(1, &[t(3)])),
        (4, vec![2, 3, 4], over(1, &[t(4), t(5)])),
        (5, vec![2, 3, 5], over(1, &[t(5)])),
    ];
    for (label, face, qr) in want {
        let r = if label == 0 { 0 } else { label - 1 };
        if graph.label(r) != face.as_slice() {
            mismatch(&mut bad, &format!("face {}", label), &graph.label(r), &face);
        }
        let q_shift = shift_labels(&matrix(vec![vec![table.q(r)]]), &le);
        if q_shift.get(0, 0) != &qr {
            mismatch(&mut bad, &format!("q_{}", label), q_shift.get(0, 0), &qr);
        }
        let twisted = shift_labels(&matrix(vec![vec![twist_laurent(&x).unwrap().plucker1(&face).unwrap()]]), &le);
        if twisted.get(0, 0) != &qr {
            mismatch(&mut bad, &format!("twisted minor {}", label), twisted.get(0, 0), &qr);
        }
    }
    for r in std::iter::once(0).chain(graph.boundary_dots()) {
        let plain = x.plucker1(graph.label(r)).unwrap();
        if &plain * &table.q(r) != LaurentPoly::one() {
            bad.push(format!("boundary face {}: minor {} times q is not 1", r, plain));
        }
    }
    bad
}

fn figure_cell_cluster() -> Vec<String> {
    let mut bad = Vec::new();
    let le = figure_cell();
    let graph = le.graph();
    let table = TwistTable::new(&le, &graph);
    let want_t: [(usize, LaurentPoly); 6] = [
        (8, over(1, &[q(8)])),
        (6, mono(1, &[(q(8), 1), (q(6), -1)])),
        (4, mono(1, &[(q(8), 1), (q(4), -1)])),
        (3, mono(1, &[(q(4), 1), (q(6), 1), (q(3), -1), (q(8), -1)])),
        (2, mono(1, &[(q(8), 1), (q(2), -1)])),
        (1, mono(1, &[(q(2), 1), (q(4), 1), (q(1), -1), (q(8), -1)])),
    ];
    for (r, want) in want_t {
        let got = LaurentPoly::monomial(table.t_in_q[&r].clone());
        if got != want {
            mismatch(&mut bad, &format!("t_{} in q", r), &got.to_string(), &want.to_string());
        }
    }
    let quiver = quiver_from_graph(&le, &graph).expect("quiver");
    let seed = Seed::initial(quiver, Var::q);
    let exchange = &mono(1, &[(q(2), 1), (q(4), 1), (q(6), 1)]) + &mono(1, &[(q(1), 1), (q(3), 1)]);
    let want_prime = exchange.mul_monomial(&Monomial::from_exponents([(q(8), -1)]));
    match seed.mutate(8) {
        Ok(m) if m.values[&8] == want_prime => {}
        Ok(m) => mismatch(&mut bad, "mutated q_8", &m.values[&8].to_string(), &want_prime.to_string()),
        Err(e) => bad.push(format!("mutation at 8: {}", e)),
    }
    let h = right_block(&echelon_matrix(&le), 3);
    let num = &mono(1, &[(t(1), 1), (t(3), 1), (t(4), 1)]) + &mono(1, &[(t(8), 1)]);
    let want_h = matrix(vec![
        vec![int(1), int(0), int(0)],
        vec![int(0), int(1), int(0)],
        vec![over(-1, &[t(1), t(2)]), over(1, &[t(1)]), int(0)],
        vec![int(0), int(0), int(1)],
        vec![over(1, &[t(1), t(2), t(3), t(4)]), over(-1, &[t(1), t(3), t(4)]), over(1, &[t(3)])],
        vec![
            num.mul_monomial(&Monomial::from_exponents([1, 2, 3, 4, 6, 8].map(|r| (t(r), -1)))),
            over(-1, &[t(1), t(3), t(4), t(6)]),
            over(1, &[t(3), t(6)]),
        ],
    ]);
    if h != want_h {
        mismatch(&mut bad, "echelon matrix in t", &h, &want_h);
    }
    let hq = h.try_map(|p| table.to_q(p)).expect("substitution");
    let pole = exchange.mul_monomial(&Monomial::from_exponents([(q(4), -1), (q(8), -1)]));
    let want_hq = matrix(vec![
        vec![int(1), int(0), int(0)],
        vec![int(0), int(1), int(0)],
        vec![mono(-1, &[(q(1), 1), (q(4), -1)]), mono(1, &[(q(1), 1), (q(8), 1), (q(2), -1), (q(4), -1)]), int(0)],
        vec![int(0), int(0), int(1)],
        vec![
            mono(1, &[(q(1), 1), (q(3), 1), (q(4), -1), (q(6), -1)]),
            mono(-1, &[(q(1), 1), (q(3), 1), (q(8), 1), (q(2), -1), (q(4), -1), (q(6), -1)]),
            mono(1, &[(q(3), 1), (q(8), 1), (q(4), -1), (q(6), -1)]),
        ],
        vec![
            pole.clone(),
            mono(-1, &[(q(1), 1), (q(3), 1), (q(2), -1), (q(4), -1)]),
            mono(1, &[(q(3), 1), (q(4), -1)]),
        ],
    ]);
    if hq != want_hq {
        mismatch(&mut bad, "echelon matrix in q", &hq, &want_hq);
    }
    let mut poles = Vec::new();
    for i in 0..hq.rows() {
        for j in 0..hq.cols() {
            if hq.get(i, j).min_exponent(q(8)) < 0 {
                poles.push((i + 1, j + 1));
            }
        }
    }
    if poles != vec![(6, 1)] {
        mismatch(&mut bad, "entries with a pole along q_8", &poles, &vec![(6, 1)]);
    }
    let want_rewrite = mono(1, &[(Var::q_prime(8), 1), (q(4), -1)]);
    match laurent_in_mutated_cluster(&pole, 8, &seed) {
        Ok(res) if res.rewritten.as_ref() == Some(&want_rewrite) => {}
        other => mismatch(&mut bad, "rewritten pole entry", &other, &want_rewrite),
    }
    bad
}

fn nu_shapes_of_large_cell() -> Vec<String> {
    let mut bad = Vec::new();
    let shape = YoungDiagram::new(vec![6, 6, 5, 5, 4, 4]).unwrap();
    let dotted = [(1, 1), (3, 2), (3, 4), (5, 4)];
    let mask: Vec<bool> = shape.boxes().iter().map(|b| dotted.contains(b)).collect();
    let le = LeDiagram::from_dot_mask(6, 12, shape, &mask).expect("valid Le-diagram");
    let want: [((usize, usize), Vec<usize>, Vec<(usize, usize)>); 4] = [
        ((1, 1), vec![1], vec![(1, 1)]),
        ((3, 2), vec![2, 2, 1], vec![(2, 3), (1, 1)]),
        ((3, 4), vec![4, 2, 1], vec![(4, 3), (1, 1)]),
        ((5, 4), vec![4, 3, 3, 2, 1], vec![(4, 5), (2, 3), (1, 1)]),
    ];
    for ((i, j), parts, frob) in want {
        let r = le.position_at(i, j).expect("box");
        let chain = nu_by_nw_chain(&le, r);
        let from_chain = YoungDiagram::from_frobenius(&chain).expect("frobenius");
        let by_def = nu_by_definition(le.prefix(), r).expect("definition");
        if chain.0 != frob {
            mismatch(&mut bad, &format!("chain hooks at {:?}", (i, j)), &chain.0, &frob);
        }
        if by_def.frobenius().0 != frob {
            mismatch(&mut bad, &format!("definition hooks at {:?}", (i, j)), &by_def.frobenius().0, &frob);
        }
        if from_chain.parts() != parts.as_slice() || by_def.parts() != parts.as_slice() {
            mismatch(&mut bad, &format!("shape at {:?}", (i, j)), &(from_chain.parts(), by_def.parts()), &parts);
        }
    }
    bad
}

fn sweep(suite: Suite, max_n: usize, opts: &VerifyOptions) -> Vec<String> {
    let mut bad = Vec::new();
    let mut notes = 0;
    for n in 1..=max_n {
        let cells: Vec<LeDiagram> = (1..=n).flat_map(|k| all_cells(k, n)).collect();
        match verify_cells(&cells, &[suite], opts, true) {
            Ok(outcomes) => {
                for o in outcomes {
                    notes += o.notes.iter().filter(|s| s.contains("budget")).count();
                    for f in o.failures {
                        bad.push(format!("k={} n={} {}: {}", o.k, o.n, o.cell, f));
                    }
                }
            }
            Err(e) => bad.push(e),
        }
    }
    if notes > 0 {
        println!("  note: {} {} checks stopped at the term budget", notes, suite);
    }
    bad
}

/// Independent count: 0/1 fillings of each shape in the box with no empty
/// cell having a filled cell above it and a filled cell to its left.
fn le_fillings(k: usize, n: usize) -> usize {
    let mut total = 0;
    for shape in shapes_in_rectangle(k, n) {
        let boxes = shape.boxes();
        let m = boxes.len();
        for bits in 0u64..(1u64 << m) {
            let filled = |i: usize, j: usize| {
                boxes.iter().position(|&b| b == (i, j)).map_or(false, |p| bits >> p & 1 == 1)
            };
            let ok = boxes.iter().all(|&(i, j)| {
                filled(i, j) || !((1..i).any(|a| filled(a, j)) && (1..j).any(|b| filled(i, b)))
            });
            if ok {
                total += 1;
            }
        }
    }
    total
}

fn enumeration() -> Vec<String> {
    let mut bad = Vec::new();
    for n in 1..=ENUMERATION_MAX_N {
        let mut per_n = 1;
        for k in 1..=n {
            let got = all_cells(k, n).len();
            let want = le_fillings(k, n);
            per_n += got;
            if got != want {
                bad.push(format!("k={} n={}: {} cells, {} fillings", k, n, got, want));
            }
        }
        // cells over all k, with the single k = 0 cell: sum of n!/j!
        let mut closed = 0usize;
        let mut term = 1usize;
        for j in (0..=n).rev() {
            closed += term;
            term *= j.max(1);
        }
        if per_n != closed {
            bad.push(format!("n={}: {} cells in total, expected {}", n, per_n, closed));
        }
    }
    bad
}

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Duration,
    run: Box<dyn Fn() -> Vec<String>>,
}

fn main() {
    let opts = VerifyOptions { depth: MUTATION_DEPTH, samples: SAMPLES_PER_CELL, seed: SAMPLE_SEED };
    let suite = |id, title, budget, s: Suite, max_n| Criterion {
        id,
        title,
        budget,
        run: Box::new(move || sweep(s, max_n, &opts)),
    };
    let criteria = vec![
        Criterion { id: "A01", title: "two-row cell: Deodhar and echelon matrices", budget: BUDGET_SMALL, run: Box::new(small_cell_matrices) },
        Criterion { id: "A02", title: "two-row cell: twist matrix and twisted minors", budget: BUDGET_SMALL, run: Box::new(small_cell_twist) },
        Criterion { id: "A03", title: "three-row cell: chamber ansatz, exchange, echelon in q", budget: BUDGET_FIGURE, run: Box::new(figure_cell_cluster) },
        Criterion { id: "A04", title: "shapes nu_r of the 6x6 cell, both constructions", budget: BUDGET_SMALL, run: Box::new(nu_shapes_of_large_cell) },
        suite("A05", "graph quiver equals morphism quiver, n <= 7", BUDGET_QUIVER_SWEEP, Suite::QuiverIso, SWEEP_N_COMBINATORICS),
        suite("A06", "Leclerc minors are face minor ratios, n <= 6", BUDGET_MINOR_SWEEP, Suite::MinorIdentity, SWEEP_N_ALGEBRA),
        suite("A07", "face labels equal vC_r, n <= 7", BUDGET_C_SWEEP, Suite::CSets, SWEEP_N_COMBINATORICS),
        suite("A08", "echelon matrix is the same point, n <= 6", BUDGET_POINT_SWEEP, Suite::PointEquality, SWEEP_N_ALGEBRA),
        suite("A09", "twisted face minors are the monomials q_r, n <= 6", BUDGET_OPEN, Suite::TwistMinors, SWEEP_N_ALGEBRA),
        suite("A10", "exchange matrix has full rank, n <= 7", BUDGET_RANK_SWEEP, Suite::FullRank, SWEEP_N_COMBINATORICS),
        suite("A11", "echelon entries Laurent in once-mutated clusters, n <= 6", BUDGET_OPEN, Suite::MutatedLaurent, SWEEP_N_ALGEBRA),
        suite("A12", "depth-3 mutations stay Laurent, n <= 6", BUDGET_OPEN, Suite::Laurent, SWEEP_N_ALGEBRA),
        suite("A13", "positive samples give positive minors and cluster values, n <= 6", BUDGET_OPEN, Suite::Positivity, SWEEP_N_ALGEBRA),
        Criterion { id: "A14", title: "cell count equals Le-filling count, n <= 8", budget: BUDGET_OPEN, run: Box::new(enumeration) },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut bad = (c.run)();
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            bad.push(format!("took {:.2?}, budget {:.2?}", elapsed, c.budget));
        }
        let status = if bad.len() <= MAX_MISMATCHES { "PASS" } else { "FAIL" };
        println!("{} {} {} ({:.2?})", status, c.id, c.title, elapsed);
        for line in bad.iter().take(10) {
            println!("  {}", line);
        }
        if bad.len() > MAX_MISMATCHES {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
