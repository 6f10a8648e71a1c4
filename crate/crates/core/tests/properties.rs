mod support;

use support::props;

fn check(r: Result<(), String>) {
    if let Err(e) = r {
        panic!("{e}");
    }
}

#[test]
fn finite_field_axioms() {
    check(props::finite_field_axioms());
}

#[test]
fn number_field_axioms() {
    check(props::number_field_axioms());
}

#[test]
fn polynomial_ring_axioms() {
    check(props::polynomial_ring_axioms());
}

#[test]
fn cantor_group_axioms() {
    check(props::cantor_group_axioms());
}

#[test]
fn nullity_under_root_permutations() {
    check(props::nullity_permutation_invariance());
}

#[test]
fn reduction_maps_are_homomorphisms() {
    check(props::reduction_homomorphism());
}
