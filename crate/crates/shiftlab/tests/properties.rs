//! Property tests for the algebraic invariants the solvers lean on.

use proptest::collection::vec;
use proptest::prelude::*;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha20Rng;
use shiftlab::ff::{FieldElement, PrimeModulus};
use shiftlab::lfs::scalar_equivalent;
use shiftlab::poly::{AffineLinear, LinearFunction, MultiPoly, UniPoly};
use shiftlab::samples::{read_samples, write_samples, SampleSet};

fn modulus_strategy() -> impl Strategy<Value = PrimeModulus> {
    prop_oneof![
        Just(5u64),
        Just(7),
        Just(101),
        Just(1_000_003),
        Just((1 << 61) - 1),
    ]
    .prop_map(|q| PrimeModulus::new(q).unwrap())
}

proptest! {
    #[test]
    fn addition_cancels(m in modulus_strategy(), a in any::<u64>(), b in any::<u64>()) {
        let a = m.element(a);
        let b = m.element(b);
        prop_assert_eq!((a + b) - b, a);
    }

    #[test]
    fn multiplication_cancels(m in modulus_strategy(), a in any::<u64>(), b in 1u64..u64::MAX) {
        let a = m.element(a);
        let b = m.element(b);
        prop_assume!(!b.is_zero());
        prop_assert_eq!(a * b * b.inverse().unwrap(), a);
        prop_assert_eq!(b.inverse().unwrap().inverse().unwrap(), b);
    }

    #[test]
    fn fermat_exponent(m in modulus_strategy(), a in 1u64..u64::MAX) {
        let a = m.element(a);
        prop_assume!(!a.is_zero());
        prop_assert_eq!(a.pow(m.get() - 1), m.one());
    }

    /// divide_by_affine((ell - alpha) h, ell - alpha) = (h, 0) for random
    /// linear forms and random cofactors of degree <= 3.
    #[test]
    fn affine_division_round_trip(
        seed in any::<u64>(),
        coeffs in vec(0u64..101, 1..4),
        alpha in 0u64..101,
    ) {
        let m = PrimeModulus::new(101).unwrap();
        let n = coeffs.len();
        let mut coeffs: Vec<FieldElement> = coeffs.into_iter().map(|c| m.element(c)).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            coeffs[0] = m.one();
        }
        let divisor = AffineLinear::new(coeffs, -m.element(alpha));

        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut h = MultiPoly::zero(n, m);
        for _ in 0..6 {
            let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..2u32)).collect();
            let term = MultiPoly::from_terms(n, m, vec![(exps, m.element(rng.gen_range(0..101)))]);
            h = &h + &term;
        }
        if h.is_zero() {
            h = MultiPoly::constant(m.one(), n);
        }

        let product = &divisor.to_multipoly() * &h;
        let (quot, rem) = product.divide_by_affine(&divisor).unwrap();
        prop_assert!(rem.is_zero());
        prop_assert_eq!(quot, h);
    }

    /// For arbitrary g: g = divisor * quotient + remainder, with the
    /// remainder free of the divisor's pivot variable.
    #[test]
    fn affine_division_reconstructs(
        seed in any::<u64>(),
        coeffs in vec(0u64..101, 1..4),
        constant in 0u64..101,
    ) {
        let m = PrimeModulus::new(101).unwrap();
        let n = coeffs.len();
        let mut coeffs: Vec<FieldElement> = coeffs.into_iter().map(|c| m.element(c)).collect();
        if coeffs.iter().all(|c| c.is_zero()) {
            coeffs[0] = m.one();
        }
        let divisor = AffineLinear::new(coeffs, m.element(constant));
        let pivot = divisor.pivot().unwrap();

        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut g = MultiPoly::zero(n, m);
        for _ in 0..8 {
            let exps: Vec<u32> = (0..n).map(|_| rng.gen_range(0..4u32)).collect();
            let term = MultiPoly::from_terms(n, m, vec![(exps, m.element(rng.gen_range(0..101)))]);
            g = &g + &term;
        }

        let (quot, rem) = g.divide_by_affine(&divisor).unwrap();
        let rebuilt = &(&divisor.to_multipoly() * &quot) + &rem;
        prop_assert_eq!(rebuilt, g);
        prop_assert!(rem.terms().all(|(exps, _)| exps[pivot] == 0));
    }

    /// Root finding agrees with an exhaustive scan on small fields.
    #[test]
    fn roots_agree_with_scan(
        q in prop_oneof![Just(2u64), Just(3), Just(7), Just(31), Just(101)],
        raw in vec(0u64..101, 2..8),
        seed in any::<u64>(),
    ) {
        let m = PrimeModulus::new(q).unwrap();
        let mut coeffs: Vec<FieldElement> = raw.into_iter().map(|c| m.element(c)).collect();
        let last = coeffs.len() - 1;
        if coeffs[last].is_zero() {
            coeffs[last] = m.one();
        }
        let p = UniPoly::from_coeffs(coeffs);
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let got: Vec<u64> = p.roots(&mut rng).unwrap().iter().map(|r| r.value()).collect();
        let want: Vec<u64> = (0..q).filter(|&t| p.evaluate(m.element(t)).is_zero()).collect();
        prop_assert_eq!(got, want);
    }

    /// scalar_equivalent recovers exactly the scaling constant.
    #[test]
    fn scalar_equivalence_detects_scaling(
        raw in vec(0u64..101, 1..6),
        c in 1u64..101,
    ) {
        let m = PrimeModulus::new(101).unwrap();
        let mut raw = raw;
        if raw.iter().all(|&x| x == 0) {
            raw[0] = 1;
        }
        let l1 = LinearFunction::new(raw.iter().map(|&x| m.element(x)).collect::<Vec<_>>()).unwrap();
        let l2 = l1.scale(m.element(c)).unwrap();
        prop_assert_eq!(scalar_equivalent(&l1, &l2).unwrap(), m.element(c));
    }

    /// Sample files survive a write/read round trip byte-exactly.
    #[test]
    fn sample_file_round_trip(
        rows in vec(vec(0u64..7, 3), 0..12),
    ) {
        let set = SampleSet {
            modulus: PrimeModulus::new(7).unwrap(),
            arity: 3,
            samples: rows,
        };
        let mut buf = Vec::new();
        write_samples(&mut buf, &set).unwrap();
        let parsed = read_samples(&buf[..]).unwrap();
        prop_assert_eq!(&parsed, &set);
        let mut buf2 = Vec::new();
        write_samples(&mut buf2, &parsed).unwrap();
        prop_assert_eq!(buf, buf2);
    }
}
