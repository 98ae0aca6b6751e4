//! Pinned behaviour on graphs where the published characterisations and
//! the exact inertia index disagree, plus the two side-condition readings.

use std::collections::BTreeMap;

use signed_inertia::closed_forms::target_index;
use signed_inertia::enumeration::{verify_theorem, Constraints, OrderBound};
use signed_inertia::families::{
    gen_fan_core_with_stray, gen_gamma, gen_theta, Family, FamilyError, FamilyParams, Reading, ThetaClass, ThetaSpec,
};
use signed_inertia::inertia::negative_inertia;
use signed_inertia::predicates::{hypothesis_check, thm33_classify, Theorem};
use signed_inertia::sgraph::Sign;

#[test]
fn three_fours_theta_reaches_target_without_a_family() {
    for class in [ThetaClass::Positive, ThetaClass::Negative] {
        let g = gen_theta(&ThetaSpec::class(4, 4, 4, class)).unwrap();
        let h = hypothesis_check(&g, Theorem::NearVertices).unwrap();
        assert!(h.satisfied, "{:?}", h.failure);
        assert_eq!(negative_inertia(&g), target_index(6));
        for reading in Reading::BOTH {
            let c = thm33_classify(&g, reading).unwrap();
            assert_eq!(c.tag, None);
            assert!(!c.consistent());
        }
    }
}

#[test]
fn fan_core_with_stray_pendant_is_not_always_five() {
    let mut low = 0;
    for bits in 0u32..128 {
        let signs: [Sign; 7] = std::array::from_fn(|i| Sign::from_bool(bits >> i & 1 == 0));
        match negative_inertia(&gen_fan_core_with_stray(signs)) {
            5 => {}
            4 => low += 1,
            other => panic!("unexpected i- = {other}"),
        }
    }
    assert_eq!(low, 32);
}

#[test]
fn readings_differ_on_gamma8() {
    let params = FamilyParams {
        counts: BTreeMap::from([('a', 1), ('d', 1)]),
        t: 0,
    };
    assert!(matches!(
        gen_gamma(Family::Gamma8, &params, Reading::Statement),
        Err(FamilyError::SideCondition(_))
    ));
    let g = gen_gamma(Family::Gamma8, &params, Reading::Proof).unwrap();
    assert_eq!(negative_inertia(&g), target_index(7));
}

#[test]
fn near_vertex_counterexamples_replay() {
    let r = verify_theorem(Theorem::NearVertices, &Constraints::new(6, 6, OrderBound::Absolute(10))).unwrap();
    assert!(!r.confirmed);
    assert_eq!(r.discriminating_instances, 0);
    assert!(!r.counterexamples.is_empty());
    for c in &r.counterexamples {
        let g = c.graph();
        assert_eq!(negative_inertia(&g), c.i_minus);
        assert_eq!(c.i_minus, c.target);
        assert_eq!(c.tag, None);
    }
}

#[test]
fn girth_seven_prefers_the_longer_reading() {
    let r = verify_theorem(Theorem::NearVertices, &Constraints::new(7, 7, OrderBound::Absolute(11))).unwrap();
    assert_eq!(r.selected_reading, Some(Reading::Proof));
    assert_eq!(r.preferred_reading, Some(Reading::Proof));
    assert!(r.confirmed);
}
