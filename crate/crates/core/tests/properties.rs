//! Property tests for the exact layers: field axioms, canonicalization
//! stability, permutation machinery, and ring axioms on random elements.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use qhecke::hecke::{factorial, HeckeElement, Permutation};
use qhecke::qarith::{qint, LaurentPoly, RatFunc};
use qhecke::tl::{quotient_from_hecke, TlElement, TlTables};

fn laurent_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-6i64..=6), (-9i64..=9)), 0..5).prop_map(|terms| {
        LaurentPoly::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    })
}

fn ratfunc_strategy() -> impl Strategy<Value = RatFunc> {
    (laurent_strategy(), laurent_strategy()).prop_map(|(num, den)| {
        let den = if den.is_zero() { qint(2) } else { den };
        RatFunc::new(num, den).expect("nonzero denominator")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_div_rem_invariant(a in laurent_strategy(), b in laurent_strategy()) {
        prop_assume!(!b.is_zero());
        let (q, r) = a.div_rem(&b);
        prop_assert_eq!(&q * &b + r, a);
    }

    #[test]
    fn ratfunc_field_axioms(a in ratfunc_strategy(), b in ratfunc_strategy(), c in ratfunc_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn ratfunc_canonicalization_idempotent(a in ratfunc_strategy()) {
        let rebuilt = RatFunc::new(a.num().clone(), a.den().clone()).unwrap();
        prop_assert_eq!(&rebuilt, &a);
        if !a.is_zero() {
            let double_inverse = a.recip().unwrap().recip().unwrap();
            prop_assert_eq!(double_inverse, a);
        }
    }

    #[test]
    fn qint_neighbor_identity_all_integers(k in -30i64..=30) {
        // [k-1] + [k+1] = [2][k] holds for every integer index.
        let lhs = qint(k - 1) + qint(k + 1);
        let rhs = &qint(2) * &qint(k);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn permutation_index_roundtrip(n in 1usize..=6, bits in any::<u64>()) {
        let idx = (bits as usize) % factorial(n);
        let w = Permutation::from_index(n, idx);
        prop_assert_eq!(w.index(), idx);
        let word = w.reduced_word();
        prop_assert_eq!(word.len(), w.length());
        let mut rebuilt = Permutation::identity(n);
        for &k in &word {
            rebuilt = rebuilt.compose(&Permutation::simple(n, k as usize).unwrap());
        }
        prop_assert_eq!(rebuilt, w);
    }

    #[test]
    fn permutation_inverse_length(n in 2usize..=6, bits in any::<u64>()) {
        let idx = (bits as usize) % factorial(n);
        let w = Permutation::from_index(n, idx);
        prop_assert_eq!(w.length(), w.inverse().length());
        prop_assert!(w.compose(&w.inverse()).is_identity());
    }
}

fn hecke_strategy(rank: usize) -> impl Strategy<Value = HeckeElement> {
    prop::collection::vec(
        (0usize..factorial(rank), -3i128..=3, -2i64..=2),
        1..4,
    )
    .prop_map(move |terms| {
        let mut e = HeckeElement::zero(rank).unwrap();
        for (idx, c, ex) in terms {
            let w = Permutation::from_index(rank, idx);
            let b = HeckeElement::basis(rank, &w).unwrap().scale_monomial(c, ex);
            e = e.add(&b).unwrap();
        }
        e
    })
}

fn tl_strategy(rank: usize) -> impl Strategy<Value = TlElement> {
    let size = TlTables::get(rank).unwrap().size();
    prop::collection::vec((0usize..size, -3i64..=3, -2i64..=2), 1..4).prop_map(move |terms| {
        let tables = TlTables::get(rank).unwrap();
        let mut e = TlElement::zero(rank).unwrap();
        for (idx, c, ex) in terms {
            let d = tables.diagram(idx).clone();
            let t = TlElement::from_diagram(rank, &d)
                .unwrap()
                .scale(&RatFunc::from_poly(LaurentPoly::from_int_terms(&[(ex, c)])));
            e = e.add(&t).unwrap();
        }
        e
    })
}

/// Fully independent multiplication oracle: sparse Permutation -> RatFunc
/// maps driven by the defining relation alone, sharing no code with the
/// engine's common-denominator representation.
mod naive {
    use std::collections::BTreeMap;

    use qhecke::hecke::Permutation;
    use qhecke::qarith::{LaurentPoly, RatFunc};

    pub type Map = BTreeMap<Permutation, RatFunc>;

    pub fn add_into(acc: &mut Map, w: Permutation, c: RatFunc) {
        let entry = acc.entry(w).or_insert_with(RatFunc::zero);
        *entry = &*entry + &c;
    }

    /// T_w * T_{s_k} through the quadratic relation.
    fn basis_times_gen(w: &Permutation, k: usize) -> Vec<(Permutation, RatFunc)> {
        let ws = w.right_mul_simple(k);
        if w.right_ascent(k) {
            vec![(ws, RatFunc::one())]
        } else {
            vec![
                (ws, RatFunc::one()),
                (w.clone(), RatFunc::from_poly(LaurentPoly::q_minus_q_inv())),
            ]
        }
    }

    pub fn mul(a: &Map, b: &Map) -> Map {
        let mut out = Map::new();
        for (wb, cb) in b {
            // Start from a scaled copy of `a`, then walk the reduced word.
            let mut cur: Map = a
                .iter()
                .map(|(w, c)| (w.clone(), c * cb))
                .collect();
            for k in wb.reduced_word() {
                let mut next = Map::new();
                for (w, c) in &cur {
                    for (w2, c2) in basis_times_gen(w, k as usize) {
                        add_into(&mut next, w2, c * &c2);
                    }
                }
                cur = next;
            }
            for (w, c) in cur {
                add_into(&mut out, w, c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

fn to_naive(e: &HeckeElement) -> naive::Map {
    e.coeffs().into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engine_mul_matches_naive_ratfunc_oracle(a in hecke_strategy(3), b in hecke_strategy(3)) {
        let engine = a.mul(&b).unwrap();
        let expect = naive::mul(&to_naive(&a), &to_naive(&b));
        let got = to_naive(&engine);
        prop_assert_eq!(got, expect);
    }

    #[test]
    fn hecke_ring_axioms(a in hecke_strategy(3), b in hecke_strategy(3), c in hecke_strategy(3)) {
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&assoc_l, &assoc_r);
        let dist_l = a.mul(&b.add(&c).unwrap()).unwrap();
        let dist_r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(&dist_l, &dist_r);
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn phi_is_an_involutive_homomorphism(a in hecke_strategy(3), b in hecke_strategy(3)) {
        prop_assert_eq!(&a.phi().phi(), &a);
        let lhs = a.mul(&b).unwrap().phi();
        let rhs = a.phi().mul(&b.phi()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_embedding_composition(a in hecke_strategy(3)) {
        // phi_{N+1}(phi_N(X) (x) id) is the generator shift of X.
        let lhs = a.phi().shift_embed(4, 0).unwrap().phi();
        let rhs = a.shift_embed(4, 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tl_ring_axioms(a in tl_strategy(3), b in tl_strategy(3), c in tl_strategy(3)) {
        let assoc_l = a.mul(&b).unwrap().mul(&c).unwrap();
        let assoc_r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        prop_assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn quotient_map_is_multiplicative(a in hecke_strategy(3), b in hecke_strategy(3)) {
        let lhs = quotient_from_hecke(&a.mul(&b).unwrap()).unwrap();
        let rhs = quotient_from_hecke(&a).unwrap()
            .mul(&quotient_from_hecke(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
