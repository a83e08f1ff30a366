use super::*;
use crate::error::Error;
use crate::extended::ExtendedSpace;
use crate::measures::{build_halfer, build_thirder};
use crate::observation::{halfer_given_colour, thirder_given_colour};
use crate::rational::{ratio, to_f64};
use crate::scenarios::{cosmo_constant, hartle_srednicki, sleeping_beauty, two_zone, CosmoParams};

fn within(e: &Estimate, exact: f64, k: f64) -> bool {
    (e.value - exact).abs() <= k * e.std_error
}

#[test]
fn sleeping_beauty_estimates() {
    let sb = sleeping_beauty();
    let sampler = AtomSampler::new(sb.space());
    let heads = AtomSampler::indicator(&sb.ext, &sb.event("Heads").unwrap()).unwrap();
    let f = |d: &samplers::AtomDraw| heads[d.index];
    let e = estimate_thirder(&&sampler, f, None, 200_000, 1, 1).unwrap();
    assert!(within(&e, 1.0 / 3.0, 4.0), "{e:?}");
    assert!(e.std_error > 0.0 && e.std_error < 0.01);
    let e = estimate_halfer(&&sampler, f, None, 200_000, 1, 1).unwrap();
    assert!(within(&e, 0.5, 4.0), "{e:?}");
}

#[test]
fn full_event_is_exact() {
    let sb = sleeping_beauty();
    let sampler = AtomSampler::new(sb.space());
    let e = estimate_thirder(&&sampler, |_| true, None, 1000, 3, 1).unwrap();
    assert_eq!((e.value, e.std_error), (1.0, 0.0));
    let e = estimate_halfer(&&sampler, |_| false, None, 1000, 3, 1).unwrap();
    assert_eq!((e.value, e.std_error), (0.0, 0.0));
}

#[test]
fn results_do_not_depend_on_threads() {
    let s = TwoZoneSampler::new(50, 0.1, 0.1, 0.5).unwrap();
    let run = |streams| {
        estimate_halfer(
            &s,
            |d: &samplers::ZoneDraw| !d.w,
            Some(0),
            10_000,
            99,
            streams,
        )
        .unwrap()
    };
    let one = run(1);
    for k in [2, 3, 8] {
        let other = run(k);
        assert_eq!(one.value.to_bits(), other.value.to_bits());
        assert_eq!(one.std_error.to_bits(), other.std_error.to_bits());
    }
    assert_eq!(run(1), one);
    assert_ne!(
        estimate_halfer(&s, |d: &samplers::ZoneDraw| !d.w, Some(0), 10_000, 100, 1)
            .unwrap()
            .value,
        one.value
    );
}

#[test]
fn hartle_srednicki_large_n() {
    let s = HartleSrednickiSampler::new(1000, 1, 0.5).unwrap();
    let e = estimate_thirder(
        &s,
        |d: &samplers::CycleDraw| d.some_red,
        Some(0),
        100_000,
        5,
        0,
    )
    .unwrap();
    assert!(within(&e, 1.0 / 1001.0, 4.0), "{e:?}");
}

#[test]
fn hartle_srednicki_sampler_matches_exact() {
    let p = ratio(1, 2);
    let hs = hartle_srednicki(4, 2, &p).unwrap();
    let sr = hs.event("SR").unwrap();
    let s = HartleSrednickiSampler::new(4, 2, 0.5).unwrap();
    let f = |d: &samplers::CycleDraw| d.some_red;
    let exact_e = to_f64(&build_thirder(&hs.ext).unwrap().probability(&sr));
    let exact_l = to_f64(&build_halfer(&hs.ext).unwrap().probability(&sr));
    let exact_ec = to_f64(&thirder_given_colour(&hs.ext, &sr, "R").unwrap());
    let exact_lc = to_f64(&halfer_given_colour(&hs.ext, &sr, "R").unwrap());
    assert!(within(
        &estimate_thirder(&s, f, None, 100_000, 2, 0).unwrap(),
        exact_e,
        4.0
    ));
    assert!(within(
        &estimate_halfer(&s, f, None, 100_000, 2, 0).unwrap(),
        exact_l,
        4.0
    ));
    assert!(within(
        &estimate_thirder(&s, f, Some(0), 100_000, 2, 0).unwrap(),
        exact_ec,
        4.0
    ));
    assert!(within(
        &estimate_halfer(&s, f, Some(0), 100_000, 2, 0).unwrap(),
        exact_lc,
        4.0
    ));
}

#[test]
fn two_zone_sampler_matches_exact() {
    let (p0, p1, p2) = (ratio(1, 5), ratio(1, 10), ratio(1, 2));
    let tz = two_zone(2, &p0, &p1, &p2).unwrap();
    let w0 = tz.event("W0").unwrap();
    let exact = to_f64(&halfer_given_colour(&tz.ext, &w0, "0").unwrap());
    let s = TwoZoneSampler::new(2, 0.2, 0.1, 0.5).unwrap();
    let e = estimate_halfer(&s, |d: &samplers::ZoneDraw| !d.w, Some(0), 200_000, 4, 0).unwrap();
    assert!(within(&e, exact, 4.0), "{e:?} vs {exact}");
}

#[test]
fn cosmo_sampler_matches_exact() {
    let params = CosmoParams::linear(3, ratio(3, 2), &ratio(1, 1), &ratio(2, 1), 3).unwrap();
    let sc = cosmo_constant(&params).unwrap();
    let pl = build_halfer(&sc.ext).unwrap();
    for target in 0..3 {
        let exact = to_f64(&pl.probability(&sc.event(&format!("theta{target}")).unwrap()));
        let s = CosmoSampler::new(1.5, &params.y_dist_f64(), target).unwrap();
        let e = estimate_halfer_colour_mass(&s, 0, 200_000, 8, 0).unwrap();
        assert!(within(&e, exact, 4.0), "{e:?} vs {exact}");
    }
}

#[test]
fn constant_m_gives_a_flat_halfer_law() {
    let n = 20;
    let law = vec![vec![0.0, 0.5, 0.5]; n];
    let s = CosmoSampler::new(4.0, &law, 7).unwrap();
    let e = estimate_halfer_colour_mass(&s, 0, 200_000, 1, 0).unwrap();
    assert!(within(&e, 1.0 / n as f64, 4.0), "{e:?}");
}

#[test]
fn deterministic_size_estimators_agree() {
    let sc = crate::scenarios::presumptuous_philosopher(4, 4).unwrap();
    let sampler = AtomSampler::new(sc.space());
    let w0 = AtomSampler::indicator(&sc.ext, &sc.event("W0").unwrap()).unwrap();
    let f = |d: &samplers::AtomDraw| w0[d.index];
    let a = estimate_thirder(&&sampler, f, None, 50_000, 6, 1).unwrap();
    let b = estimate_halfer(&&sampler, f, None, 50_000, 6, 1).unwrap();
    assert_eq!(a.value, b.value);
}

struct Nobody;

impl ObjectiveSampler for Nobody {
    type Outcome = samplers::ZoneDraw;

    fn sample<R: rand::Rng + ?Sized>(&self, _: &mut R) -> samplers::ZoneDraw {
        samplers::ZoneDraw {
            w: false,
            x0: 0,
            x1: 0,
        }
    }
}

#[test]
fn degenerate_samples_are_errors() {
    assert_eq!(
        estimate_halfer(&Nobody, |_| true, None, 100, 1, 1),
        Err(Error::AllRejected)
    );
    assert_eq!(
        estimate_thirder(&Nobody, |_| true, None, 100, 1, 1),
        Err(Error::ZeroDenominator)
    );
    let s = TwoZoneSampler::new(3, 0.5, 0.5, 0.5).unwrap();
    assert_eq!(
        estimate_thirder(&s, |_| true, Some(7), 100, 1, 1),
        Err(Error::ZeroDenominator)
    );
    assert!(matches!(
        estimate_thirder(&s, |_| true, None, 0, 1, 1),
        Err(Error::InvalidParams(_))
    ));
    assert!(TwoZoneSampler::new(3, 0.0, 0.5, 0.5).is_err());
    assert!(HartleSrednickiSampler::new(3, 3, 0.5).is_err());
    assert!(CosmoSampler::new(5.0, &vec![vec![0.0, 1.0]; 3], 0).is_err());
}

#[test]
fn atom_sampler_frequencies() {
    let sb = sleeping_beauty();
    let ext: &ExtendedSpace = &sb.ext;
    let sampler = AtomSampler::new(ext.base());
    let tails = AtomSampler::indicator(ext, &sb.event("Tails").unwrap()).unwrap();
    let e = estimate_ratio(&&sampler, 100_000, 2, 1, |d: &samplers::AtomDraw| {
        Some((if tails[d.index] { 1.0 } else { 0.0 }, 1.0))
    })
    .unwrap();
    assert!(within(&e, 0.5, 4.0));
}
