use h1cut::certificate::verify_certificate;
use h1cut::circle_map::{build_circle_map, certify_nontrivial, thicken, CircleMapError, MAX_RETRIES};
use h1cut::homology::{cocycle_basis, fundamental_cycles, is_coboundary, is_cocycle, pairing};
use h1cut::library::{generate, GeneratorSpec};
use h1cut::tower::Tower;
use h1cut::witness::{construct_witness, full_pipeline, WitnessOptions};

#[test]
fn round_trip_on_surfaces() {
    for spec in [GeneratorSpec::Torus2, GeneratorSpec::Klein, GeneratorSpec::Genus(2)] {
        let k = generate(spec).unwrap();
        let result = full_pipeline(&k, &WitnessOptions::default()).unwrap();
        let map = &result.circle_map;
        let z = &map.winding_cocycle;
        assert!(is_cocycle(&k, z), "{spec}");
        assert!(!is_coboundary(&k, z).unwrap(), "{spec}");
        assert_eq!(map.pairing_value.abs(), 1, "{spec}");
        assert_eq!(map.crossing_count, map.pairing_value, "{spec}");
        assert_eq!(pairing(&k, z, &map.base_loop).unwrap(), map.pairing_value, "{spec}");
        assert!(fundamental_cycles(&k).iter().any(|c| pairing(&k, z, c).unwrap() != 0), "{spec}");
        assert!(verify_certificate(&result.certificate), "{spec}");

        // The loop crosses the dual of the source cocycle once, so the source
        // cocycle pairs oddly with it.
        let source = &cocycle_basis(&k).unwrap()[result.certificate.construction_log.last().unwrap().cocycle.unwrap()];
        assert_eq!(pairing(&k, source, &map.base_loop).unwrap().rem_euclid(2), 1, "{spec}");
    }
}

#[test]
fn circle_map_is_deterministic() {
    let k = generate(GeneratorSpec::Klein).unwrap();
    let cert = construct_witness(&k).unwrap();
    let run = || {
        let t = thicken(Tower::with_depth(k.clone(), cert.subdivision_depth), &cert.domain, MAX_RETRIES).unwrap();
        serde_json::to_string(&build_circle_map(&t).unwrap().record()).unwrap()
    };
    assert_eq!(run(), run());
}

#[test]
fn enumerated_witness_on_base_complex() {
    // A witness found by exhaustive search on the unsubdivided torus also
    // yields a nontrivial winding cocycle.
    let k = generate(GeneratorSpec::Torus2).unwrap();
    let report = h1cut::theorem::theorem_check(&k, 14).unwrap();
    for w in report.non_cutting_witnesses.iter().step_by(25) {
        let t = thicken(Tower::new(k.clone()), &w.domain, MAX_RETRIES).unwrap();
        let r = build_circle_map(&t).unwrap();
        assert_eq!(r.crossing_count, r.pairing_value);
        assert!(verify_certificate(&certify_nontrivial(&r).unwrap()));
    }
}

#[test]
fn retries_bound_separation() {
    let k = generate(GeneratorSpec::Torus2).unwrap();
    let report = h1cut::theorem::theorem_check(&k, 14).unwrap();
    let w = &report.non_cutting_witnesses[0];
    // Two subdivisions always separate the boundary parts, so even zero
    // retries succeed; a cutting domain never reaches the retry loop.
    assert!(thicken(Tower::new(k.clone()), &w.domain, 0).is_ok());
    let cutting = h1cut::domain::enumerate_candidates(&k, 14).into_iter().find(|d| d.cut_report().cuts).unwrap();
    assert!(matches!(
        thicken(Tower::new(k.clone()), cutting.facets(), 0),
        Err(CircleMapError::Precondition(_))
    ));
}
