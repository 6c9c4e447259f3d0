use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smale_core::complex::homology;
use smale_core::sample::cover_presentation;
use smale_core::stationary::krieger_dimension_group;

#[test]
fn fiber_products_recover_the_quotient() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for trial in 0..100 {
        let s = cover_presentation(&mut rng, 3, 6, 3);
        let h = homology(&s.presentation).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        let expected = krieger_dimension_group(&s.quotient).unwrap().invariants();
        assert_eq!(
            h.invariant_table(),
            BTreeMap::from([(0, expected)]),
            "trial {trial}: {:?}",
            s.presentation.bounds()
        );
    }
}
