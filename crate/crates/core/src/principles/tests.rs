use proptest::prelude::*;

use super::*;
use crate::cellset::CellSet;
use crate::feasibility::compile;
use crate::measures::{build_halfer, build_thirder};
use crate::rational::ratio;
use crate::scenarios::corpus::{corpus, random_sequential, CorpusOptions};
use crate::scenarios::{four_beauties, sequential, sleeping_beauty};
use crate::space::{Atom, ObjectiveSpace};

fn opts() -> CheckOptions {
    CheckOptions::default()
}

fn space(m: usize, atoms: &[(&str, Rational, &[usize])]) -> ExtendedSpace {
    let atoms = atoms
        .iter()
        .map(|(l, w, occ)| Atom::new(*l, w.clone(), CellSet::from_indices(m, occ.iter().copied())))
        .collect();
    let cells = (1..=m).map(|i| i.to_string()).collect();
    ExtendedSpace::new(ObjectiveSpace::new(cells, vec!["-".into()], atoms).unwrap())
}

fn measure(ext: &ExtendedSpace, w: &[(usize, Location, Rational)]) -> Measure {
    let mut weights = vec![Rational::zero(); ext.n_atoms()];
    for (o, l, v) in w {
        weights[ext.index(*o, *l)] = v.clone();
    }
    Measure::new(ext, weights).unwrap()
}

#[test]
fn names_parse_case_insensitively() {
    assert_eq!("pist".parse::<Principle>().unwrap(), Principle::PIst);
    assert_eq!("PNFI".parse::<Principle>().unwrap(), Principle::PNFI);
    assert!("PQ".parse::<Principle>().is_err());
    for p in Principle::ALL {
        assert_eq!(p.to_string().parse::<Principle>().unwrap(), p);
    }
}

#[test]
fn thirder_on_sleeping_beauty() {
    let sb = sleeping_beauty();
    let pe = build_thirder(&sb.ext).unwrap();
    for p in [
        Principle::PN,
        Principle::PI,
        Principle::PIst,
        Principle::PEI,
    ] {
        assert!(check(&sb.ext, &pe, p, &opts()).unwrap().holds, "{p}");
    }
    let pp = check_pp(&sb.ext, &pe, &opts());
    assert!(!pp.holds);
    assert_eq!(pp.violations[0].witness, "H");
    assert_eq!(
        (pp.violations[0].lhs.clone(), pp.violations[0].rhs.clone()),
        (ratio(1, 3), ratio(1, 2))
    );
}

#[test]
fn halfer_on_sleeping_beauty() {
    let sb = sleeping_beauty();
    let pl = build_halfer(&sb.ext).unwrap();
    for p in [Principle::PN, Principle::PI, Principle::PIst, Principle::PP] {
        assert!(check(&sb.ext, &pl, p, &opts()).unwrap().holds, "{p}");
    }
    let pei = check_pei(&sb.ext, &pl, &opts());
    assert!(!pei.holds);
    let v = &pei.violations[0];
    assert_eq!(v.witness, "H | S=1");
    assert_eq!((v.lhs.clone(), v.rhs.clone()), (ratio(2, 3), ratio(1, 2)));
}

#[test]
fn uniform_measure_fails_pn_at_tuesday_after_heads() {
    let sb = sleeping_beauty();
    let uniform = Measure::new(&sb.ext, vec![ratio(1, 6); 6]).unwrap();
    let r = check_pn(&sb.ext, &uniform, &opts());
    assert!(!r.holds);
    assert_eq!(r.violations[0].witness, "H@2 outside S ∈ X");
    assert_eq!(r.violations.len(), 3);
}

#[test]
fn double_halfer_fails_pi() {
    let sb = sleeping_beauty();
    let c1 = Location::Cell(0);
    let m = measure(&sb.ext, &[(0, c1, ratio(1, 2)), (1, c1, ratio(1, 2))]);
    let r = check_pi(&sb.ext, &m, &opts());
    assert!(!r.holds);
    assert_eq!(r.violations[0].witness, "S=1 | X={1,2}");
    assert_eq!(
        (r.violations[0].lhs.clone(), r.violations[0].rhs.clone()),
        (ratio(1, 1), ratio(1, 2))
    );
}

#[test]
fn pi_can_hold_while_pist_fails() {
    let ext = space(
        2,
        &[("a", ratio(1, 2), &[0, 1]), ("b", ratio(1, 2), &[0, 1])],
    );
    let (c1, c2) = (Location::Cell(0), Location::Cell(1));
    let m = measure(
        &ext,
        &[
            (0, c1, ratio(3, 8)),
            (0, c2, ratio(1, 8)),
            (1, c1, ratio(1, 8)),
            (1, c2, ratio(3, 8)),
        ],
    );
    assert!(check_pi(&ext, &m, &opts()).holds);
    let r = check_pist(&ext, &m, &opts());
    assert!(!r.holds);
    assert_eq!(r.violations[0].witness, "S=1 | a");
}

#[test]
fn deterministic_size_makes_both_measures_satisfy_everything() {
    let ext = space(
        3,
        &[("a", ratio(1, 3), &[0, 1]), ("b", ratio(2, 3), &[1, 2])],
    );
    for m in [build_thirder(&ext).unwrap(), build_halfer(&ext).unwrap()] {
        for p in [
            Principle::PN,
            Principle::PI,
            Principle::PIst,
            Principle::PEI,
            Principle::PP,
        ] {
            assert!(check(&ext, &m, p, &opts()).unwrap().holds, "{p}");
        }
    }
}

#[test]
fn mass_on_a_never_occupied_cell() {
    let ext = space(2, &[("a", ratio(1, 1), &[0])]);
    let m = measure(
        &ext,
        &[
            (0, Location::Cell(0), ratio(1, 2)),
            (0, Location::Cell(1), ratio(1, 2)),
        ],
    );
    let r = check_pei(&ext, &m, &opts());
    assert_eq!(r.violations[0].witness, "S=2 is never occupied");
    assert!(!check_pn(&ext, &m, &opts()).holds);
}

#[test]
fn violation_lists_are_capped() {
    let sb = sleeping_beauty();
    let uniform = Measure::new(&sb.ext, vec![ratio(1, 6); 6]).unwrap();
    let r = check_pn(&sb.ext, &uniform, &CheckOptions { cap: 1 });
    assert_eq!(r.violations.len(), 1);
    assert_eq!(r.omitted, 2);
    assert!(!r.holds);
}

#[test]
fn pnfi_on_sequential_sleeping_beauty() {
    let sc = sequential(&[ratio(0, 1), ratio(1, 2), ratio(1, 1)], 1).unwrap();
    let pe = build_thirder(&sc.ext).unwrap();
    let pl = build_halfer(&sc.ext).unwrap();
    assert!(check_pnfi(&sc.ext, &pe, &opts()).unwrap().holds);
    assert!(check_pei(&sc.ext, &pe, &opts()).holds);
    assert!(!check_pnfi(&sc.ext, &pl, &opts()).unwrap().holds);
    assert!(!check_pei(&sc.ext, &pl, &opts()).holds);

    let sb = sleeping_beauty();
    let m = build_thirder(&sb.ext).unwrap();
    assert_eq!(
        check_pnfi(&sb.ext, &m, &opts()),
        Err(Error::PnfiWithoutSequentialStructure)
    );
}

#[test]
fn pnfi_is_vacuous_without_mass_on_days() {
    let sc = sequential(&[ratio(1, 2), ratio(1, 2), ratio(1, 1)], 1).unwrap();
    let mut w = vec![Rational::zero(); sc.ext.n_atoms()];
    w[sc.ext.index(0, Location::Boundary)] = ratio(1, 1);
    let m = Measure::new(&sc.ext, w).unwrap();
    assert!(check_pnfi(&sc.ext, &m, &opts()).unwrap().holds);
    assert!(!check_pn(&sc.ext, &m, &opts()).holds);
}

#[test]
fn uniqueness() {
    for sc in [sleeping_beauty(), four_beauties()] {
        let r = check_uniqueness(&sc.ext).unwrap();
        assert_eq!(r.dimension, 0);
        assert!(r.equals_thirder);
    }
    let singletons = space(
        3,
        &[
            ("a", ratio(1, 3), &[0]),
            ("b", ratio(1, 3), &[1]),
            ("c", ratio(1, 3), &[2]),
        ],
    );
    match check_uniqueness(&singletons) {
        Err(Error::GraphDisconnected { dimension }) => assert_eq!(dimension, 2),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn four_principles_examples() {
    let r = check_four_principles(&sleeping_beauty().ext).unwrap();
    assert_eq!(
        (r.feasible, r.deterministic_k, r.consistent),
        (false, None, true)
    );

    let full = space(
        3,
        &[
            ("a", ratio(1, 2), &[0, 1, 2]),
            ("b", ratio(1, 2), &[0, 1, 2]),
        ],
    );
    let r = check_four_principles(&full).unwrap();
    assert_eq!((r.feasible, r.deterministic_k), (true, Some(3)));

    let zero_or_two = space(
        3,
        &[
            ("none", ratio(1, 4), &[]),
            ("a", ratio(1, 4), &[0, 1]),
            ("b", ratio(1, 2), &[1, 2]),
        ],
    );
    let r = check_four_principles(&zero_or_two).unwrap();
    assert_eq!(
        (r.feasible, r.deterministic_k, r.consistent),
        (true, Some(2), true)
    );
}

#[test]
fn four_principles_need_a_connected_graph() {
    // 𝒳 = {1} or {2, 3}: feasible although |𝒳| is not deterministic.
    let ext = space(3, &[("a", ratio(1, 2), &[0]), ("b", ratio(1, 2), &[1, 2])]);
    let r = check_four_principles(&ext).unwrap();
    assert!(r.feasible && r.deterministic_k.is_none() && !r.connected && r.consistent);
    let cs = compile(
        &ext,
        &[Principle::PN, Principle::PI, Principle::PEI, Principle::PP],
    )
    .unwrap();
    let expected = measure(
        &ext,
        &[
            (0, Location::Cell(0), ratio(1, 2)),
            (1, Location::Cell(1), ratio(1, 4)),
            (1, Location::Cell(2), ratio(1, 4)),
        ],
    );
    assert!(cs.satisfied_by(expected.weights()));
}

#[test]
fn pei_and_pnfi_agree_on_sequential_models() {
    for seed in 0..6 {
        let sc = random_sequential(seed, 3, 2);
        assert!(pei_pnfi_agree(&sc.ext).unwrap(), "seed {seed}");
    }
}

/// Measures with many exact zeros and ties, so every principle both passes
/// and fails across the generated cases.
fn candidate(ext: &ExtendedSpace, pick: u8, raw: &[u8]) -> Measure {
    let pe = build_thirder(ext).unwrap();
    let pl = build_halfer(ext).unwrap();
    match pick % 4 {
        0 => pe,
        1 => pl,
        2 => {
            let t = ratio(i64::from(raw[0] % 5), 4).min(ratio(1, 1));
            let w = pe
                .weights()
                .iter()
                .zip(pl.weights())
                .map(|(a, b)| &t * a + (Rational::one() - &t) * b)
                .collect();
            Measure::new(ext, w).unwrap()
        }
        _ => {
            let mut w: Vec<Rational> = (0..ext.n_atoms())
                .map(|i| int(i64::from(raw[i % raw.len()] % 3)))
                .collect();
            if w.iter().all(Zero::is_zero) {
                w[0] = int(1);
            }
            let total: Rational = w.iter().sum();
            Measure::new(ext, w.into_iter().map(|x| x / &total).collect()).unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn reports_agree_with_polytope_membership(seed in 0u64..500, pick in 0u8..8, raw in prop::collection::vec(0u8..255, 12)) {
        let sc = corpus(seed, 1, &CorpusOptions { max_cells: 3, max_atoms: 3, ..Default::default() }).remove(0);
        prop_assume!(sc.ext.n_atoms() <= 12);
        let m = candidate(&sc.ext, pick, &raw);
        for p in [Principle::PN, Principle::PI, Principle::PIst, Principle::PEI, Principle::PP] {
            let report = check(&sc.ext, &m, p, &opts()).unwrap();
            let cs = compile(&sc.ext, &[p]).unwrap();
            prop_assert_eq!(report.holds, cs.satisfied_by(m.weights()), "{}", p);
        }
    }

    #[test]
    fn pnfi_report_agrees_with_membership(seed in 0u64..200, pick in 0u8..8, raw in prop::collection::vec(0u8..255, 12)) {
        let sc = random_sequential(seed, 2, 2);
        let m = candidate(&sc.ext, pick, &raw);
        let report = check_pnfi(&sc.ext, &m, &opts()).unwrap();
        let cs = compile(&sc.ext, &[Principle::PNFI]).unwrap();
        prop_assert_eq!(report.holds, cs.satisfied_by(m.weights()));
    }

    #[test]
    fn atom_checks_cover_all_objective_events(seed in 0u64..500, mask in 0u64..64) {
        let sc = corpus(seed, 1, &CorpusOptions::default()).remove(0);
        let ext = &sc.ext;
        let f = ext.objective_event(|a| {
            let i = ext.base().atom_index(&a.label).unwrap();
            mask >> i & 1 == 1
        });
        let pe = build_thirder(ext).unwrap();
        prop_assert!(check_pei(ext, &pe, &opts()).holds);
        for x in 0..ext.base().n_cells() {
            let s = ext.location_event(Location::Cell(x));
            let occ = ext.objective_event(|a| a.occupied.contains(x));
            if let (Ok(lhs), Ok(rhs)) = (pe.conditional(&f, &s), ext.objective_conditional(&f, &occ)) {
                prop_assert_eq!(lhs, rhs);
            }
        }
        let pl = build_halfer(ext).unwrap();
        prop_assert!(check_pp(ext, &pl, &opts()).holds);
        let nonempty = ext.objective_event(|a| !a.occupied.is_empty());
        prop_assert_eq!(pl.probability(&f), ext.objective_conditional(&f, &nonempty).unwrap());
    }
}
