use grove_forge_core::ast::{entry_sum, glick_check, rotate_ast, section5_check};
use grove_forge_core::grove::{enumerate_groves, to_ast_with, validate_with};
use grove_forge_core::lattice::{self, Vertex};
use grove_forge_core::reconstruct::{build_grove, search_grove};
use grove_forge_core::{Ast, Grove, Lattice};
use proptest::prelude::*;

fn sized_ast() -> impl Strategy<Value = Ast> {
    (1i32..=5).prop_flat_map(|n| {
        proptest::collection::vec(prop_oneof![Just(-1i8), Just(0), Just(1)], (n * (n + 1) / 2) as usize)
            .prop_map(move |v| Ast::from_flat(n, v).unwrap())
    })
}

fn binary_ast() -> impl Strategy<Value = Ast> {
    (1i32..=5).prop_flat_map(|n| {
        proptest::collection::vec(0i8..=1, (n * (n + 1) / 2) as usize).prop_map(move |v| Ast::from_flat(n, v).unwrap())
    })
}

proptest! {
    #[test]
    fn ast_json_round_trip(a in sized_ast()) {
        prop_assert_eq!(Ast::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn rotation_has_order_three(a in sized_ast()) {
        let r = rotate_ast(&a);
        prop_assert_eq!(entry_sum(&r), entry_sum(&a));
        prop_assert_eq!(rotate_ast(&rotate_ast(&r)), a);
    }

    #[test]
    fn six_properties_are_rotation_invariant(a in binary_ast()) {
        prop_assert_eq!(glick_check(&a).passes(), glick_check(&rotate_ast(&a)).passes());
    }

    #[test]
    fn constructive_and_search_agree(a in binary_ast()) {
        if glick_check(&a).passes() {
            let built = build_grove(&a).unwrap();
            let lat = Lattice::new(a.n()).unwrap();
            prop_assert!(validate_with(&lat, &built.grove).is_valid());
            prop_assert_eq!(to_ast_with(&lat, &built.grove).unwrap(), a.clone());
            prop_assert!(search_grove(&a).is_some());
        } else {
            prop_assert!(search_grove(&a).is_none());
        }
    }

    #[test]
    fn vertex_rotation_has_order_three(n in 1i32..=6, k in 0usize..64) {
        let vs = lattice::vertices(n).unwrap();
        let v = vs[k % vs.len()];
        let r = |v: Vertex| lattice::rotate120(n, v).unwrap();
        prop_assert!(r(v).in_region(n));
        prop_assert_eq!(r(r(r(v))), v);
    }
}

#[test]
fn grove_json_round_trip_and_rotation() {
    for n in 1..=4 {
        let lat = Lattice::new(n).unwrap();
        for g in enumerate_groves(n).unwrap() {
            check_grove(&lat, &g);
        }
    }
}

fn check_grove(lat: &Lattice, g: &Grove) {
    assert_eq!(&Grove::from_json(&g.to_json(lat)).unwrap(), g);
    let r = g.rotated(lat);
    assert!(validate_with(lat, &r).is_valid());
    assert_eq!(to_ast_with(lat, &r).unwrap(), rotate_ast(&to_ast_with(lat, g).unwrap()));
    assert!(section5_check(&to_ast_with(lat, g).unwrap()).passes());
}
