//! Property-based structural invariants.

use entpower::ggm::ggm;
use entpower::optimizer::FSPoint;
use entpower::tensor::{
    apply_unitary, hermitian_expm, partial_trace, HermitianMatrix, PureState, Sign,
};
use entpower::zoo::{haar_from_rng, seeded_rng, u_lambda};
use proptest::prelude::*;

proptest! {
    #[test]
    fn u_lambda_adjoint_negates_the_angle(lambda in -10.0f64..10.0) {
        let diff = u_lambda(lambda).adjoint().entries() - u_lambda(-lambda).entries();
        prop_assert!(diff.norm() < 1e-12);
    }

    #[test]
    fn random_unitaries_preserve_the_norm(seed in 0u64..1u64 << 48, n in 2usize..=5) {
        let mut rng = seeded_rng(seed, 0);
        let state = PureState::random(n, &mut rng);
        let unitary = haar_from_rng(1 << n, &mut rng);
        let out = apply_unitary(&unitary, &state).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn ggm_stays_within_qubit_bounds(seed in 0u64..1u64 << 48, n in 2usize..=5) {
        let mut rng = seeded_rng(seed, 1);
        let state = PureState::random(n, &mut rng);
        let result = ggm(&state).unwrap();
        prop_assert!(result.value >= -1e-12);
        prop_assert!(result.value <= 0.5 + 1e-12);
        prop_assert!((result.value - (1.0 - result.max_eigenvalue)).abs() <= 1e-12);
        prop_assert!(result.max_eigenvalue >= 0.5 - 1e-12);
    }

    #[test]
    fn complementary_cuts_share_their_schmidt_spectrum(
        seed in 0u64..1u64 << 48,
        n in 3usize..=6,
        cut_bits in 1usize..1 << 6,
    ) {
        let mut rng = seeded_rng(seed, 2);
        let state = PureState::random(n, &mut rng);
        let keep: Vec<usize> = (1..=n).filter(|q| cut_bits >> (q - 1) & 1 == 1).collect();
        prop_assume!(!keep.is_empty() && keep.len() < n);
        let comp: Vec<usize> = (1..=n).filter(|q| !keep.contains(q)).collect();
        let a = partial_trace(&state, &keep).unwrap().eigenvalues();
        let b = partial_trace(&state, &comp).unwrap().eigenvalues();
        let shared = a.len().min(b.len());
        for k in 0..shared {
            prop_assert!((a[k] - b[k]).abs() <= 1e-10);
        }
        for &rest in a.iter().skip(shared).chain(b.iter().skip(shared)) {
            prop_assert!(rest.abs() <= 1e-10);
        }
    }

    #[test]
    fn product_states_are_pure_across_every_single_site(
        seed in 0u64..1u64 << 48,
        n in 2usize..=5,
        site_raw in 0usize..8,
    ) {
        let mut rng = seeded_rng(seed, 3);
        let point = FSPoint::random(&mut rng, n);
        let site = 1 + site_raw % n;
        let rho = partial_trace(&point.to_state(), &[site]).unwrap();
        prop_assert!((rho.max_eigenvalue() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn spectral_exponentials_compose_additively(
        seed in 0u64..1u64 << 48,
        t1 in -3.0f64..3.0,
        t2 in -3.0f64..3.0,
    ) {
        let mut rng = seeded_rng(seed, 4);
        let raw = haar_from_rng(4, &mut rng);
        let h = HermitianMatrix::new(raw.entries() + raw.entries().adjoint()).unwrap();
        let lhs = hermitian_expm(&h, t1, Sign::Plus).entries()
            * hermitian_expm(&h, t2, Sign::Plus).entries();
        let rhs = hermitian_expm(&h, t1 + t2, Sign::Plus);
        prop_assert!((lhs - rhs.entries()).norm() <= 1e-10);
    }
}
