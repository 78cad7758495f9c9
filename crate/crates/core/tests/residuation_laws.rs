mod common;

use common::*;
use proptest::prelude::*;
use resgt::boolsemi::{vec_mul, BoolMatrix, BoolVec};
use resgt::residuation::{verify_residuated_pair, TestingScheme, VerifyMode};

fn scheme(h: BoolMatrix) -> TestingScheme {
    TestingScheme::new(h).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// g∘f ≥ id, f∘g ≤ id and the defining equivalence f(x) ≤ y ⇔ x ≤ g(y).
    #[test]
    fn galois_inequalities(h in matrix_strategy(1..=8, 1..=8)) {
        let s = scheme(h);
        let xs = all(s.n());
        let ys = all(s.k());
        for x in &xs {
            let fx = s.encode(x).unwrap();
            prop_assert!(x.iter().zip(s.decode(&fx).unwrap().iter()).all(|(a, b)| !a || b));
            for y in &ys {
                let lhs = fx.iter().zip(y.iter()).all(|(a, b)| !a || b);
                let gy = s.decode(y).unwrap();
                let rhs = x.iter().zip(gy.iter()).all(|(a, b)| !a || b);
                prop_assert_eq!(lhs, rhs);
            }
        }
        for y in &ys {
            let fgy = s.kernel(y).unwrap();
            prop_assert!(fgy.iter().zip(y.iter()).all(|(a, b)| !a || b));
        }
    }

    #[test]
    fn triangle_identities(h in matrix_strategy(1..=8, 1..=8)) {
        let s = scheme(h);
        for x in all(s.n()) {
            let fx = s.encode(&x).unwrap();
            prop_assert_eq!(s.encode(&s.decode(&fx).unwrap()).unwrap(), fx);
        }
        for y in all(s.k()) {
            let gy = s.decode(&y).unwrap();
            prop_assert_eq!(s.decode(&s.encode(&gy).unwrap()).unwrap(), gy);
        }
    }

    /// Closed and kernel elements correspond one to one through f and g.
    #[test]
    fn closed_kernel_bijection(h in matrix_strategy(1..=8, 1..=8)) {
        let s = scheme(h);
        let closed = s.enumerate_closed().unwrap();
        let kernel = s.enumerate_kernel().unwrap();
        prop_assert_eq!(closed.len(), kernel.len());
        let fixed_closed: std::collections::HashSet<BoolVec> =
            all(s.n()).into_iter().filter(|x| s.closure(x).unwrap() == *x).collect();
        let fixed_kernel: std::collections::HashSet<BoolVec> =
            all(s.k()).into_iter().filter(|y| s.kernel(y).unwrap() == *y).collect();
        prop_assert_eq!(&closed, &fixed_closed);
        prop_assert_eq!(&kernel, &fixed_kernel);
        let images: std::collections::HashSet<BoolVec> =
            closed.iter().map(|x| s.encode(x).unwrap()).collect();
        prop_assert_eq!(&images, &kernel);
        for y in &kernel {
            prop_assert!(closed.contains(&s.decode(y).unwrap()));
            prop_assert_eq!(s.encode(&s.decode(y).unwrap()).unwrap(), y.clone());
        }
    }

    #[test]
    fn residual_preserves_infima(
        (h, y, y2) in matrix_strategy(1..=30, 1..=30)
            .prop_flat_map(|h| { let k = h.ncols(); (Just(h), vec_strategy(k), vec_strategy(k)) })
    ) {
        let s = scheme(h);
        let meet = vec_mul(&y, &y2).unwrap();
        prop_assert_eq!(
            s.decode(&meet).unwrap(),
            vec_mul(&s.decode(&y).unwrap(), &s.decode(&y2).unwrap()).unwrap()
        );
        prop_assert!(s.decode(&BoolVec::ones(s.k())).unwrap().is_ones());
    }

    #[test]
    fn pair_verifies(h in matrix_strategy(1..=10, 1..=10)) {
        let s = scheme(h);
        prop_assert!(verify_residuated_pair(&s.pair(), VerifyMode::default()).unwrap().holds);
    }

    #[test]
    fn closure_operator_laws(
        (h, x, x2) in matrix_strategy(1..=20, 1..=20)
            .prop_flat_map(|h| { let n = h.nrows(); (Just(h), vec_strategy(n), vec_strategy(n)) })
    ) {
        let s = scheme(h);
        let c = s.closure(&x).unwrap();
        prop_assert_eq!(s.closure(&c).unwrap(), c.clone());
        let join = resgt::boolsemi::vec_add(&x, &x2).unwrap();
        // monotone: x ≤ x + x2 implies closure(x) ≤ closure(x + x2)
        prop_assert!(resgt::boolsemi::leq(&c, &s.closure(&join).unwrap()).unwrap());
    }
}

#[test]
fn sampled_mode_on_large_scheme() {
    let s = resgt::geometry::construct_symplectic(3)
        .unwrap()
        .to_testing_scheme(1)
        .unwrap();
    let out = verify_residuated_pair(
        &s.pair(),
        VerifyMode::Sampled {
            samples: 500,
            seed: 11,
        },
    )
    .unwrap();
    assert!(out.holds);
    assert_eq!(out.checked_domain, 500);
}
