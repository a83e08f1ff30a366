use num::{One, Zero};
use proptest::prelude::*;

use obsinfer_core::model_file::ModelFile;
use obsinfer_core::principles::{check, CheckOptions};
use obsinfer_core::rational::int;
use obsinfer_core::scenarios::corpus::{corpus, random_sequential, CorpusOptions};
use obsinfer_core::{build_halfer, build_thirder, Location, Principle, Rational, Scenario};

fn model(seed: u64) -> Scenario {
    corpus(seed, 1, &CorpusOptions::default()).remove(0)
}

fn has_observers(sc: &Scenario) -> bool {
    !sc.space().prob_nonempty().is_zero()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_measures_are_probabilities(seed in any::<u64>()) {
        let sc = model(seed);
        prop_assume!(has_observers(&sc));
        for m in [build_thirder(&sc.ext).unwrap(), build_halfer(&sc.ext).unwrap()] {
            prop_assert!(m.weights().iter().all(|w| w >= &Rational::zero()));
            prop_assert!(m.weights().iter().sum::<Rational>().is_one());
            prop_assert!(m.probability(&sc.ext.location_event(Location::Boundary)).is_zero());
        }
    }

    #[test]
    fn canonical_measures_satisfy_their_principles(seed in any::<u64>()) {
        let sc = model(seed);
        prop_assume!(has_observers(&sc));
        let opts = CheckOptions::default();
        let pe = build_thirder(&sc.ext).unwrap();
        for p in [Principle::PN, Principle::PI, Principle::PIst, Principle::PEI] {
            prop_assert!(check(&sc.ext, &pe, p, &opts).unwrap().holds, "thirder fails {}", p);
        }
        let pl = build_halfer(&sc.ext).unwrap();
        for p in [Principle::PN, Principle::PI, Principle::PIst, Principle::PP] {
            prop_assert!(check(&sc.ext, &pl, p, &opts).unwrap().holds, "halfer fails {}", p);
        }
    }

    #[test]
    fn thirder_location_law_is_occupancy_over_mean(seed in any::<u64>()) {
        let sc = model(seed);
        prop_assume!(has_observers(&sc));
        let space = sc.space();
        let pe = build_thirder(&sc.ext).unwrap();
        let marginal = pe.location_marginal();
        let mean = space.mean_occupancy();
        for (x, got) in marginal.iter().take(space.n_cells()).enumerate() {
            let occupied = space.prob_where(|a| a.occupied.contains(x));
            prop_assert_eq!(got, &(occupied / &mean));
        }
    }

    #[test]
    fn halfer_objective_law_is_conditioned_on_observers(seed in any::<u64>()) {
        let sc = model(seed);
        prop_assume!(has_observers(&sc));
        let pl = build_halfer(&sc.ext).unwrap();
        let nonempty = sc.space().prob_nonempty();
        for (omega, a) in sc.space().atoms().iter().enumerate() {
            let want = if a.occupied.is_empty() { Rational::zero() } else { &a.weight / &nonempty };
            prop_assert_eq!(pl.objective_mass(omega), want);
        }
    }

    #[test]
    fn occupancy_law_is_size_biased(seed in any::<u64>()) {
        let sc = model(seed);
        prop_assume!(has_observers(&sc));
        let pe = build_thirder(&sc.ext).unwrap();
        let mean = sc.space().mean_occupancy();
        for (k, p) in sc.space().occupancy_law() {
            let got = pe.probability(&sc.event(&format!("X={k}")).unwrap());
            prop_assert_eq!(got, int(k as i64) * p / &mean);
        }
    }

    #[test]
    fn event_algebra(seed in any::<u64>(), a in 0usize..4, b in 0usize..4) {
        let sc = model(seed);
        let cells = sc.space().cells();
        let e = |i: usize| sc.event(&format!("S={}", cells[i % cells.len()])).unwrap();
        let (f, g) = (e(a), e(b));
        prop_assert_eq!(f.or(&g).complement(), f.complement().and(&g.complement()));
        prop_assert_eq!(sc.event(&format!("!(S={} | S={})", cells[a % cells.len()], cells[b % cells.len()])).unwrap(),
            f.or(&g).complement());
        prop_assert!(f.and(&g).is_subset(&f));
    }

    #[test]
    fn model_files_round_trip(seed in any::<u64>(), sequential in any::<bool>()) {
        let sc = if sequential { random_sequential(seed, 3, 2) } else { model(seed) };
        let file = ModelFile::from_scenario(&sc);
        let back = ModelFile::from_json(&file.to_json()).unwrap().to_scenario().unwrap();
        prop_assert_eq!(back.space(), sc.space());
        prop_assert_eq!(&back.events, &sc.events);
    }
}
