use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use twistq_core::chain::{Chain, Cochain, Complex, Variant};
use twistq_core::coeff::AlexanderRing;
use twistq_core::exactlin::{smith_normal_form, IntMatrix};
use twistq_core::quandle::{find_isomorphism, FiniteQuandle, QuandleMap};

/// Finite Alexander rings with at most 27 elements.
fn small_ring() -> impl Strategy<Value = AlexanderRing> {
    (2u64..=5, prop::collection::vec(-4i64..=4, 2..=3))
        .prop_filter_map("not a valid ring of size <= 27", |(n, h)| {
            let r = AlexanderRing::new(n, &h).ok()?;
            (r.size()? <= 27).then_some(r)
        })
}

fn small_quandle() -> impl Strategy<Value = FiniteQuandle> {
    prop_oneof![
        (1usize..=4).prop_map(FiniteQuandle::trivial),
        (2usize..=5).prop_map(FiniteQuandle::dihedral),
    ]
}

fn prime_ring() -> impl Strategy<Value = AlexanderRing> {
    prop_oneof![
        Just(AlexanderRing::new(2, &[1, 1]).unwrap()),
        Just(AlexanderRing::new(3, &[1, 1]).unwrap()),
        Just(AlexanderRing::new(5, &[1, 1]).unwrap()),
        Just(AlexanderRing::new(3, &[1, 1, 1]).unwrap()),
        Just(AlexanderRing::new(2, &[1, 1, 1]).unwrap()),
    ]
}

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-6i64..=6, c), r).prop_map(|rows| IntMatrix::from_rows(&rows))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn alexander_quandles_satisfy_axioms(r in small_ring()) {
        let q = FiniteQuandle::alexander(&r);
        prop_assert!(q.is_ok(), "{:?}", q.err());
    }

    #[test]
    fn t_pow_inverts(r in small_ring(), idx in 0usize..27, k in -6i64..=6) {
        let a = r.element_at(idx % r.size().unwrap());
        prop_assert_eq!(r.t_pow(&r.t_pow(&a, k), -k), a.clone());
        prop_assert_eq!(r.mul(&r.t(), r.t_inv()), r.one());
    }

    #[test]
    fn boundary_squares_to_zero(x in small_quandle(), r in prime_ring(), v in 0usize..3) {
        let variant = [Variant::Tr, Variant::Td, Variant::Tq][v];
        let c = Complex::new(x, r, variant);
        for n in 2..=3 {
            let d_hi = c.boundary_matrix(n + 1).unwrap();
            let d_lo = c.boundary_matrix(n).unwrap();
            let m = BigInt::from(c.ring().modulus());
            let prod = d_lo.mul(&d_hi);
            for i in 0..prod.rows() {
                for j in 0..prod.cols() {
                    prop_assert!((&prod[(i, j)] % &m).is_zero());
                }
            }
        }
    }

    #[test]
    fn coboundary_squares_to_zero(x in small_quandle(), r in prime_ring(), seed in prop::collection::vec(0i64..5, 25)) {
        let c = Complex::new(x, r, Variant::Tq);
        let basis = c.basis(1);
        let f = Cochain::from_values(1, c.ring(), basis.into_iter().zip(seed.iter()).map(|(t, &k)| (t, c.ring().from_int(k))));
        prop_assert!(c.delta(&c.delta(&f)).is_zero());
        let g2: Vec<_> = c.basis(2);
        let f2 = Cochain::from_values(2, c.ring(), g2.into_iter().zip(seed.iter().cycle()).map(|(t, &k)| (t, c.ring().from_int(k))));
        prop_assert!(c.delta(&c.delta(&f2)).is_zero());
    }

    #[test]
    fn boundary_of_boundary_chains(x in small_quandle(), r in prime_ring(), coeffs in prop::collection::vec(-3i64..=3, 64)) {
        let c = Complex::new(x, r, Variant::Tr);
        let terms = c.basis(3).into_iter().zip(coeffs.iter().cycle()).map(|(t, &k)| (t, c.ring().from_int(k)));
        let ch = Chain::from_terms(3, c.ring(), terms);
        let dd = c.boundary(&c.boundary(&ch).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn snf_is_a_factorisation(m in small_matrix()) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(m.rows()));
        let diag = s.diagonal();
        for i in 0..diag.len() {
            if i < s.rank {
                prop_assert!(diag[i] > BigInt::zero());
                if i + 1 < s.rank {
                    prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
                }
            } else {
                prop_assert!(diag[i].is_zero());
            }
        }
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
    }

    #[test]
    fn isomorphism_is_symmetric(a in 2usize..=4, b in 2usize..=4, perm_seed in 0usize..24) {
        let x = FiniteQuandle::dihedral(a);
        let y = FiniteQuandle::dihedral(b);
        prop_assert_eq!(find_isomorphism(&x, &y).is_some(), find_isomorphism(&y, &x).is_some());
        // a relabelled copy is always isomorphic
        let n = x.size();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = perm_seed;
        for i in (1..n).rev() {
            perm.swap(i, s % (i + 1));
            s /= i + 1;
        }
        let mut inv = vec![0; n];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| perm[x.op(inv[i], inv[j])]).collect()).collect();
        let z = FiniteQuandle::from_table(table).unwrap();
        let f = find_isomorphism(&x, &z).unwrap();
        prop_assert_eq!(f.is_homomorphism(&x, &z), Ok(()));
        prop_assert_eq!(QuandleMap::new(perm).is_homomorphism(&x, &z), Ok(()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn homology_agrees_with_enumeration(x in prop_oneof![Just(FiniteQuandle::trivial(2)), Just(FiniteQuandle::dihedral(3)), Just(FiniteQuandle::trivial(1))],
                                        r in prop_oneof![Just(AlexanderRing::new(2, &[1, 1]).unwrap()), Just(AlexanderRing::new(3, &[1, 1]).unwrap()), Just(AlexanderRing::new(3, &[-2, 1]).unwrap())],
                                        n in 1usize..=2) {
        let c = Complex::new(x, r, Variant::Tq);
        let fast = c.homology(n).unwrap();
        if let Ok(slow) = c.brute_force_homology(n, 1 << 16) { prop_assert_eq!(fast.invariant_factors, slow.invariant_factors) }
    }
}
