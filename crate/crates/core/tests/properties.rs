//! Randomized structural invariants over small systems.

use proptest::prelude::*;

use orient_shatter::boolcube::{GroundSet, System};
use orient_shatter::shattering::{is_se, profile};

fn arb_system(max_m: usize) -> impl Strategy<Value = System> {
    (0..=max_m).prop_flat_map(|m| {
        prop::collection::vec(any::<bool>(), 1 << m).prop_map(move |bits| {
            System::from_predicate(GroundSet::of_size(m), |p| bits[p as usize])
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn complement_involution(s in arb_system(7)) {
        prop_assert!(s.complement().complement().table() == s.table());
        prop_assert!(s.antipodal().antipodal().table() == s.table());
    }

    #[test]
    fn co_complement_involution(s in arb_system(7)) {
        let p = profile(&s);
        prop_assert!(p.shattered.co_complement().co_complement() == p.shattered);
    }

    #[test]
    fn sandwich(s in arb_system(7)) {
        let p = profile(&s);
        prop_assert!(p.strongly_shattered.size() <= p.size);
        prop_assert!(p.size <= p.shattered.size());
        prop_assert!(p.strongly_shattered.is_subfamily_of(&p.shattered));
        prop_assert!(p.shattered.is_downward_closed());
        prop_assert!(p.strongly_shattered.is_downward_closed());
    }

    #[test]
    fn se_complement_symmetric(s in arb_system(6)) {
        prop_assert_eq!(is_se(&s), is_se(&s.complement()));
    }

    #[test]
    fn vc_monotone_under_union_with_member(s in arb_system(6), extra in any::<u32>()) {
        // adding points can only grow the shattered family
        let m = s.ground().len();
        let extra = extra & s.ground().full_mask();
        let bigger = s.union(&System::new(GroundSet::of_size(m), &[extra]).unwrap());
        let p1 = profile(&s);
        let p2 = profile(&bigger);
        prop_assert!(p1.shattered.is_subfamily_of(&p2.shattered));
        prop_assert!(p1.vc <= p2.vc);
    }

    #[test]
    fn restriction_recursion_inclusions(s in arb_system(6)) {
        // the one-sided inclusions that justify the recursive computation
        let m = s.ground().len();
        if m == 0 { return Ok(()); }
        let (s0, s1) = s.coordinate_restrictions(m - 1).unwrap();
        let p = profile(&s);
        let pu = profile(&s0.union(&s1));
        let pi = profile(&s0.intersection(&s1));
        // shattered sets avoiding the split coordinate
        for y in pu.shattered.subsets() {
            prop_assert!(p.shattered.contains(y));
        }
        // strongly shattered sets through the split coordinate
        for y in pi.strongly_shattered.subsets() {
            prop_assert!(p.strongly_shattered.contains(y | 1 << (m - 1)));
        }
    }
}
