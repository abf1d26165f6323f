//! Property suites over seeded random inputs.

mod common;

use proptest::prelude::*;

fn run(c: common::Check) -> Result<(), TestCaseError> {
    c.map_err(TestCaseError::fail)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(seed in any::<u64>()) {
        run(common::field_axioms(seed))?;
    }

    #[test]
    fn residue_is_a_ring_homomorphism(seed in any::<u64>()) {
        run(common::residue_homomorphism(seed))?;
    }

    #[test]
    fn rref_kernel_and_solve(seed in any::<u64>()) {
        run(common::linear_algebra(seed))?;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn artin_and_sphere_relations(seed in any::<u64>()) {
        run(common::braid_relations(seed))?;
    }

    #[test]
    fn cocycle_rule(seed in any::<u64>()) {
        run(common::cocycle_rule(seed))?;
    }

    #[test]
    fn phi_and_psi_preserve_coboundaries(seed in any::<u64>()) {
        run(common::phi_psi_on_e(seed))?;
    }
}

#[test]
fn dimension_formula_on_random_tuples() {
    assert_eq!(common::dimension_formula_batch(1, 120), Ok(120));
}
