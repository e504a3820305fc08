use num_rational::BigRational;
use proptest::prelude::*;

use qweight::laurent::engine::ExpandOptions;
use qweight::laurent::{LaurentPoly, VarSet};
use qweight::qseries::poch_qpow;
use qweight::sym::{Basis, Partition, SymExpansion};
use qweight::verify::{spot_check, Cache, CacheKey, Value};
use qweight::weight::bg_sum::{bg_sum, s_closed};
use qweight::weight::{build_weight, InnerProductConfig, WeightSpec};
use qweight::ExactScalar;

fn poly() -> impl Strategy<Value = ExactScalar> {
    prop::collection::vec((-3i64..=3, 0i64..=3, 0i64..=2), 0..4).prop_map(|ms| {
        ms.into_iter().fold(ExactScalar::zero(), |acc, (c, qe, te)| {
            &acc + &ExactScalar::monomial(c, qe, te)
        })
    })
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (poly(), 1i64..=3, 0i64..=1).prop_map(|(num, k, j)| {
        let den = &ExactScalar::one() - &ExactScalar::monomial(1, k, j);
        num.checked_div(&den).unwrap()
    })
}

fn laurent(n: usize, lo: i32, hi: i32) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(lo..=hi, n), poly()), 0..4).prop_map(move |terms| {
        let vars = VarSet::w_only(n);
        let mut f = LaurentPoly::zero(&vars);
        for (e, c) in terms {
            f.add_term(e, c).unwrap();
        }
        f
    })
}

fn point(q: i64) -> (BigRational, BigRational) {
    (
        BigRational::new(q.into(), 7.into()),
        BigRational::new(3.into(), 5.into()),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scalar_field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).checked_div(&b).unwrap(), a.clone());
        }
    }

    #[test]
    fn scalar_text_round_trips(a in scalar()) {
        let back: ExactScalar = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(), b in scalar(), q in prop::sample::select(vec![-5i64, -2, 2, 3, 9])) {
        let (q, t) = point(q);
        let (x, y) = (a.evaluate(&q, &t).unwrap(), b.evaluate(&q, &t).unwrap());
        prop_assert_eq!((&a * &b).evaluate(&q, &t).unwrap(), &x * &y);
        prop_assert_eq!((&a + &b).evaluate(&q, &t).unwrap(), x + y);
    }

    #[test]
    fn star_is_an_antiautomorphism(f in laurent(2, -2, 2), g in laurent(2, -2, 2)) {
        prop_assert_eq!(f.star().star(), f.clone());
        prop_assert_eq!(f.mul(&g).unwrap().star(), f.star().mul(&g.star()).unwrap());
        prop_assert_eq!(f.mul(&g).unwrap(), g.mul(&f).unwrap());
    }

    #[test]
    fn pochhammer_splits(e in -3i64..=3, m in 0i64..=4, n in 0i64..=4) {
        let whole = poch_qpow(e, m + n).unwrap();
        let split = &poch_qpow(e, m).unwrap() * &poch_qpow(e + m, n).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn revlex_refines_dominance(k in 1usize..=6, i in 0usize..32, j in 0usize..32) {
        let all = Partition::all(k);
        let (x, y) = (&all[i % all.len()], &all[j % all.len()]);
        if x.dominated_by(y) && x != y {
            prop_assert_eq!(x.revlex_cmp(y), std::cmp::Ordering::Less);
        }
        let back: Partition = x.to_string().parse().unwrap();
        prop_assert_eq!(&back, x);
        prop_assert_eq!(&x.conjugate().conjugate(), x);
    }

    #[test]
    fn cache_round_trips(coeffs in prop::collection::vec(scalar(), 1..5), n in 1usize..=3) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let parts = Partition::all(3);
        let mut f = SymExpansion::new(Basis::Monomial, n);
        for (p, c) in parts.iter().zip(coeffs) {
            if p.len() <= n {
                f.add(p.clone(), c).unwrap();
            }
        }
        let key = CacheKey::new("gram", &Partition::row(2), &[n, 1], 1);
        cache.store_expansion(&key, &f).unwrap();
        prop_assert_eq!(cache.load_expansion(&key, Basis::Monomial, n), Some(f));
    }

    #[test]
    fn spot_checks_are_reproducible(a in scalar(), seed in any::<u64>()) {
        let v = Value::from(a);
        let first = spot_check(&v, &v, seed);
        prop_assert!(first.iter().all(|s| s.agree));
        prop_assert_eq!(first, spot_check(&v, &v, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn inversion_sum_matches_closed_form(n0 in 0usize..=2, n1 in 0usize..=2, b in 1usize..=2, lam in 1usize..=2) {
        prop_assert_eq!(bg_sum(n0, n1, b, lam).unwrap(), s_closed(n0, n1, b, lam).unwrap());
    }

    #[test]
    fn different_degrees_are_orthogonal(f in laurent(2, 0, 2), g in laurent(2, 0, 2), n1 in 0usize..=1) {
        let spec = WeightSpec::new(vec![2, n1], 1).unwrap();
        let ip = InnerProductConfig::new(&spec, 2, ExpandOptions::default()).unwrap();
        let degree = |h: &LaurentPoly, d: i32| {
            let mut out = LaurentPoly::zero(h.vars());
            for (e, c) in h.terms() {
                if e.iter().sum::<i32>() == d {
                    out.add_term(e.clone(), c.clone()).unwrap();
                }
            }
            out
        };
        for d in 0..=4 {
            for d2 in 0..=4 {
                if d != d2 {
                    prop_assert!(ip.inner_product(&degree(&f, d), &degree(&g, d2)).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn weight_ct_ignores_labels_within_blocks(n0 in 1usize..=3, n1 in 0usize..=2, lam in 1usize..=2, swap_w in any::<bool>()) {
        let spec = WeightSpec::new(vec![n0, n1], lam).unwrap();
        let w = build_weight(&spec).unwrap();
        let mut perm: Vec<usize> = (0..spec.nvars()).collect();
        if swap_w && n0 >= 2 {
            perm.swap(0, n0 - 1);
        } else if n1 >= 2 {
            perm.swap(n0, n0 + 1);
        }
        prop_assert_eq!(w.permute(&perm).unwrap().constant_term(), w.constant_term());
    }
}
