//! Exact arithmetic in `v = q^(1/2)`.

pub mod gcd;
mod parse;
mod qrat;
mod quantum;
mod surd;
mod vpoly;

pub use parse::parse_qrat;
pub use qrat::{is_polynomial_nonneg, PolyClass, QRat};
pub use quantum::{gl_order, quantum_binomial, quantum_factorial, quantum_int};
pub(crate) use quantum::gaussian;
pub use surd::{eval_qrat_sqrt, eval_vpoly_sqrt, Surd};
pub use vpoly::VPoly;

#[cfg(test)]
mod props {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn vpoly() -> impl Strategy<Value = VPoly> {
        prop::collection::vec((-4i64..6, -3i64..4), 0..5).prop_map(VPoly::from_terms)
    }

    fn qrat() -> impl Strategy<Value = QRat> {
        (vpoly(), vpoly()).prop_filter_map("nonzero denominator", |(n, d)| QRat::new(n, d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in qrat(), b in qrat(), c in qrat()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a / &a).unwrap().is_one());
            }
        }

        #[test]
        fn equality_is_cross_multiplication(n1 in vpoly(), d1 in vpoly(), n2 in vpoly(), d2 in vpoly()) {
            prop_assume!(!d1.is_zero() && !d2.is_zero());
            let a = QRat::new(n1.clone(), d1.clone()).unwrap();
            let b = QRat::new(n2.clone(), d2.clone()).unwrap();
            prop_assert_eq!(a == b, &n1 * &d2 == &n2 * &d1);
        }

        #[test]
        fn evaluation_is_multiplicative(a in qrat(), b in qrat(), q0 in 2u64..6) {
            let ea = a.substitute_power(2).eval_at_prime_power(q0);
            let eb = b.substitute_power(2).eval_at_prime_power(q0);
            let eab = (&a * &b).substitute_power(2).eval_at_prime_power(q0);
            if let (Ok(x), Ok(y)) = (ea, eb) {
                prop_assert_eq!(eab.unwrap(), x * y);
            }
        }

        #[test]
        fn render_parse_roundtrip(a in qrat()) {
            prop_assert_eq!(parse_qrat(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn gl_order_matches_brute_force_over_f2() {
        for n in 0..=3usize {
            let mut count = 0u64;
            for bits in 0u32..(1 << (n * n)) {
                let mut rows: Vec<u32> = (0..n).map(|i| (bits >> (i * n)) & ((1 << n) - 1)).collect();
                let mut rank = 0;
                for col in 0..n {
                    if let Some(p) = (rank..n).find(|&r| rows[r] >> col & 1 == 1) {
                        rows.swap(rank, p);
                        for r in 0..n {
                            if r != rank && rows[r] >> col & 1 == 1 {
                                rows[r] ^= rows[rank];
                            }
                        }
                        rank += 1;
                    }
                }
                if rank == n {
                    count += 1;
                }
            }
            let f = QRat::from_vpoly(gl_order(n as u32));
            assert_eq!(f.eval_at_prime_power(2).unwrap(), BigRational::from_integer(count.into()));
        }
    }
}
