//! Randomized property tests for the combinatorial layer, plus JSON
//! round-trips of the serializable report types.

use proptest::prelude::*;

use twistclass::classmaps::{
    exceptional_phi_table, fiber_phi_prime, is_valid_gamma, length_dimension_identity,
    phi_prime, ExceptionalCase,
};
use twistclass::partitions::dominance_le;
use twistclass::weyl::{twisted_class_label, z_perm, z_perm_degree};
use twistclass::Partition;

fn arb_partition(max_part: u32, max_len: usize) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1..=max_part, 0..=max_len)
        .prop_map(|parts| Partition::from_unsorted(parts).expect("positive parts"))
}

/// Two partitions of the same total, built by cutting `total` at random
/// points and sorting the resulting summands.
fn arb_partition_pair(total: u32) -> impl Strategy<Value = (Partition, Partition)> {
    let cuts = move || prop::collection::btree_set(1..total.max(2), 0..=3usize);
    (cuts(), cuts()).prop_map(move |(a, b)| {
        let build = |cuts: std::collections::BTreeSet<u32>| {
            let mut parts = Vec::new();
            let mut prev = 0;
            for c in cuts.into_iter().filter(|&c| c < total) {
                parts.push(c - prev);
                prev = c;
            }
            parts.push(total - prev);
            Partition::from_unsorted(parts).expect("cut summands are positive")
        };
        (build(a), build(b))
    })
}

proptest! {
    #[test]
    fn splitting_lands_in_the_image_and_preserves_totals(
        lambda in arb_partition(9, 8)
    ) {
        let gamma = phi_prime(&lambda);
        prop_assert_eq!(gamma.total(), lambda.total());
        prop_assert!(is_valid_gamma(&gamma));
        // Odd-part partitions are fixed points (but the map is not
        // idempotent in general: a split even part a,a can itself be even).
        if lambda.parts().iter().all(|p| p % 2 == 1) {
            prop_assert_eq!(&gamma, &lambda);
        }
    }

    #[test]
    fn fiber_contains_the_source_and_maps_back(
        lambda in arb_partition(6, 6)
    ) {
        let gamma = phi_prime(&lambda);
        let fiber = fiber_phi_prime(&gamma).expect("image partitions have fibers");
        prop_assert!(fiber.contains(&lambda));
        for member in &fiber {
            prop_assert_eq!(&phi_prime(member), &gamma);
        }
    }

    #[test]
    fn dominance_is_reflexive_antisymmetric_and_dual_reversing(
        (a, b) in (2u32..=14).prop_flat_map(arb_partition_pair)
    ) {
        prop_assert!(dominance_le(&a, &a).unwrap());
        let ab = dominance_le(&a, &b).unwrap();
        let ba = dominance_le(&b, &a).unwrap();
        if ab && ba {
            prop_assert_eq!(&a, &b);
        }
        prop_assert_eq!(dominance_le(&b.dual(), &a.dual()).unwrap(), ab);
    }

    #[test]
    fn dual_is_an_involution(p in arb_partition(10, 10)) {
        prop_assert_eq!(p.dual().dual(), p);
    }

    #[test]
    fn distinguished_element_has_the_closed_form_length_and_label(
        shape in arb_partition(4, 4).prop_filter("nonempty", |p| !p.is_empty())
    ) {
        let z = z_perm(&shape);
        prop_assert_eq!(z.n(), z_perm_degree(&shape));
        let closed = length_dimension_identity(&shape).unwrap();
        prop_assert_eq!(z.length(), closed.ell);
        let label = Partition::from_unsorted(
            shape.parts().iter().map(|&p| 2 * p - 1).collect()
        ).unwrap();
        prop_assert_eq!(twisted_class_label(&z).0, label);
    }

    #[test]
    fn partition_display_round_trips(p in arb_partition(12, 9)) {
        let shown = p.to_string();
        let back: Partition = shown.parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn partition_json_round_trips(p in arb_partition(12, 9)) {
        let doc = serde_json::to_string(&p).unwrap();
        let back: Partition = serde_json::from_str(&doc).unwrap();
        prop_assert_eq!(back, p);
    }
}

#[test]
fn report_types_serialize_to_json() {
    let entries = exceptional_phi_table(ExceptionalCase::D4P3);
    let doc = serde_json::to_value(entries).unwrap();
    assert_eq!(doc.as_array().unwrap().len(), 7);
    assert_eq!(doc[0]["source"], "Ã_2");

    let ld = length_dimension_identity(&"2,1".parse().unwrap()).unwrap();
    let doc = serde_json::to_value(ld).unwrap();
    assert_eq!(doc["ell"], doc["dim"]);
}
