use super::*;
use crate::cellset::CellSet;
use crate::measures::{build_halfer, build_thirder};
use crate::principles::Principle::{self, PIst, PEI, PI, PN, PNFI, PP};
use crate::rational::ratio;
use crate::scenarios::corpus::{corpus, CorpusOptions};
use crate::scenarios::{four_beauties, sequential, sleeping_beauty};
use crate::space::{Atom, ObjectiveSpace};

fn space(m: usize, atoms: &[(&str, Rational, &[usize])]) -> ExtendedSpace {
    let atoms = atoms
        .iter()
        .map(|(l, w, occ)| Atom::new(*l, w.clone(), CellSet::from_indices(m, occ.iter().copied())))
        .collect();
    let cells = (1..=m).map(|i| i.to_string()).collect();
    ExtendedSpace::new(ObjectiveSpace::new(cells, vec!["-".into()], atoms).unwrap())
}

fn solve_for(ext: &ExtendedSpace, ps: &[Principle]) -> Solution {
    solve(&compile(ext, ps).unwrap())
}

/// Weights `(H@1, T@1, T@2)` of a Sleeping Beauty measure.
fn sb_weights(m: &Measure) -> (Rational, Rational, Rational) {
    let w = m.weights();
    (w[0].clone(), w[3].clone(), w[4].clone())
}

#[test]
fn sleeping_beauty_pn_leaves_two_dimensions() {
    let sb = sleeping_beauty();
    match solve_for(&sb.ext, &[PN]) {
        Solution::Affine {
            dimension,
            witness,
            basis,
        } => {
            assert_eq!(dimension, 2);
            assert_eq!(basis.len(), 2);
            let (a, b, c) = sb_weights(&witness);
            assert!(a > Rational::zero() && b > Rational::zero() && c > Rational::zero());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn sleeping_beauty_linear_relations() {
    let sb = sleeping_beauty();
    match solve_for(&sb.ext, &[PN, PEI, PI]) {
        Solution::Unique(m) => {
            assert_eq!(sb_weights(&m), (ratio(1, 3), ratio(1, 3), ratio(1, 3)));
            assert_eq!(m, build_thirder(&sb.ext).unwrap());
        }
        other => panic!("unexpected {other:?}"),
    }
    match solve_for(&sb.ext, &[PN, PI, PP]) {
        Solution::Unique(m) => assert_eq!(sb_weights(&m), (ratio(1, 2), ratio(1, 4), ratio(1, 4))),
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(solve_for(&sb.ext, &[PN, PI, PEI, PP]), Solution::Infeasible);
}

#[test]
fn each_principle_alone_on_sleeping_beauty() {
    let sb = sleeping_beauty();
    // PEI alone: mass at each day proportional to the objective weights there.
    assert_eq!(solve_for(&sb.ext, &[PN, PEI]).dimension(), Some(1));
    // PN and PI: a + b + b = 1 with a, b free.
    assert_eq!(solve_for(&sb.ext, &[PN, PI]).dimension(), Some(1));
    assert_eq!(solve_for(&sb.ext, &[PN, PP]).dimension(), Some(1));
    // No principles: the full simplex on six atoms.
    assert_eq!(solve_for(&sb.ext, &[]).dimension(), Some(5));
}

#[test]
fn deterministic_occupancy_has_one_solution_for_all_four() {
    let ext = space(
        2,
        &[("a", ratio(1, 3), &[0, 1]), ("b", ratio(2, 3), &[0, 1])],
    );
    match solve_for(&ext, &[PN, PI, PEI, PP]) {
        Solution::Unique(m) => {
            assert_eq!(m, build_thirder(&ext).unwrap());
            assert_eq!(m.weights(), build_halfer(&ext).unwrap().weights());
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn four_beauties_is_unique() {
    let fb = four_beauties();
    assert_eq!(
        solve_for(&fb.ext, &[PN, PI, PEI]),
        Solution::Unique(build_thirder(&fb.ext).unwrap())
    );
}

#[test]
fn disconnected_singletons_are_not_unique() {
    let ext = space(
        3,
        &[
            ("a", ratio(1, 3), &[0]),
            ("b", ratio(1, 3), &[1]),
            ("c", ratio(1, 3), &[2]),
        ],
    );
    assert_eq!(solve_for(&ext, &[PN, PI, PEI]).dimension(), Some(2));
}

#[test]
fn pnfi_needs_sequential_structure() {
    let sb = sleeping_beauty();
    assert_eq!(
        compile(&sb.ext, &[PNFI]).unwrap_err(),
        Error::PnfiWithoutSequentialStructure
    );
    let seq = sequential(&[ratio(0, 1), ratio(1, 2), ratio(1, 1)], 1).unwrap();
    assert!(compile(&seq.ext, &[PN, PNFI]).is_ok());
}

#[test]
fn unreachable_cells_give_vacuous_constraints() {
    let ext = space(2, &[("a", ratio(1, 1), &[0])]);
    match solve_for(&ext, &[PN, PI, PEI, PIst, PP]) {
        Solution::Unique(m) => assert_eq!(m.weight(ext.index(0, Location::Cell(0))), &ratio(1, 1)),
        other => panic!("unexpected {other:?}"),
    }
    // Without PN, PEI alone still forbids mass on the never-occupied cell.
    let cs = compile(&ext, &[PEI]).unwrap();
    let mut w = vec![Rational::zero(); ext.n_atoms()];
    w[ext.index(0, Location::Cell(1))] = ratio(1, 1);
    assert!(!cs.satisfied_by(&w));
}

#[test]
fn oracle_agreement_on_corpus() {
    let models = corpus(41, 40, &CorpusOptions::default());
    for sc in &models {
        let ext = &sc.ext;
        let halfer = build_halfer(ext).unwrap();
        assert_eq!(
            solve_for(ext, &[PN, PP, PIst]),
            Solution::Unique(halfer),
            "{}",
            sc.name
        );
        if ext.base().occupancy_graph().connected {
            let thirder = build_thirder(ext).unwrap();
            assert_eq!(
                solve_for(ext, &[PN, PI, PEI]),
                Solution::Unique(thirder),
                "{}",
                sc.name
            );
        }
    }
}

#[test]
fn pn_dimension_counts_allowed_pairs() {
    for sc in corpus(7, 30, &CorpusOptions::default()) {
        let pairs: usize = sc.space().atoms().iter().map(|a| a.occupancy()).sum();
        assert_eq!(solve_for(&sc.ext, &[PN]).dimension(), Some(pairs - 1));
    }
}

#[test]
fn witnesses_and_directions_fit_the_system() {
    let subsets: [&[Principle]; 5] = [&[PN], &[PN, PI], &[PN, PEI], &[PI, PIst], &[PEI, PP]];
    for sc in corpus(9, 25, &CorpusOptions::default()) {
        for ps in subsets {
            let cs = compile(&sc.ext, ps).unwrap();
            match solve(&cs) {
                Solution::Infeasible => {}
                Solution::Unique(m) => assert!(cs.satisfied_by(m.weights())),
                Solution::Affine { witness, basis, .. } => {
                    assert!(cs.satisfied_by(witness.weights()));
                    for v in &basis {
                        for c in cs.constraints() {
                            assert!(c.row.dot(v).is_zero());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn adding_principles_never_enlarges_the_solution_set() {
    let chain: [&[Principle]; 4] = [&[], &[PN], &[PN, PI], &[PN, PI, PEI]];
    for sc in corpus(13, 25, &CorpusOptions::default()) {
        let polys: Vec<Polytope> = chain
            .iter()
            .map(|ps| solve_polytope(&compile(&sc.ext, ps).unwrap()))
            .collect();
        for w in polys.windows(2) {
            assert!(w[0].contains(&w[1]));
        }
        let with_pp = solve_polytope(&compile(&sc.ext, &[PN, PI, PEI, PP]).unwrap());
        assert!(polys[3].contains(&with_pp));
    }
}

#[test]
fn containment_is_strict_when_dimensions_differ() {
    let sb = sleeping_beauty();
    let pn = solve_polytope(&compile(&sb.ext, &[PN]).unwrap());
    let pe = solve_polytope(&compile(&sb.ext, &[PN, PI, PEI]).unwrap());
    let pl = solve_polytope(&compile(&sb.ext, &[PN, PI, PP]).unwrap());
    let none = solve_polytope(&compile(&sb.ext, &[PN, PI, PEI, PP]).unwrap());
    assert!(pn.contains(&pe) && !pe.contains(&pn));
    assert!(!pe.contains(&pl) && !pl.contains(&pe));
    assert!(pe.contains(&none) && !none.contains(&pe));
    assert!(none.same_as(&none) && none.is_empty());
}
