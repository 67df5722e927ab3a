//! The Hecke algebra H_N(q) in its permutation basis {T_w}: exact
//! multiplication, both generator conventions, index-shift embeddings, and
//! the reversal automorphism.

mod element;
mod numeric;
mod perm;
mod tables;

pub use element::{mul_basis_by_generator, HeckeElement};
pub use numeric::{regular_rep_matrix, RegularAction};
pub use perm::{factorial, Permutation};
pub use tables::{HeckeTables, MAX_RANK};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{qint, qint_rf, LaurentPoly, RatFunc};

    fn one(n: usize) -> HeckeElement {
        HeckeElement::one(n).unwrap()
    }

    fn r(n: usize, k: usize) -> HeckeElement {
        HeckeElement::generator_r(n, k).unwrap()
    }

    fn t(n: usize, k: usize) -> HeckeElement {
        HeckeElement::generator_t(n, k).unwrap()
    }

    fn dq() -> RatFunc {
        RatFunc::from_poly(LaurentPoly::q_minus_q_inv())
    }

    #[test]
    fn quadratic_relation() {
        for n in 2..=7 {
            for k in 1..n {
                let rk = r(n, k);
                let lhs = rk.mul(&rk).unwrap();
                let rhs = one(n).add(&rk.scale(&dq())).unwrap();
                assert_eq!(lhs, rhs, "rank {n}, k {k}");
            }
        }
    }

    #[test]
    fn braid_relation() {
        for n in 3..=7 {
            for k in 1..n - 1 {
                let a = r(n, k);
                let b = r(n, k + 1);
                let lhs = a.mul(&b).unwrap().mul(&a).unwrap();
                let rhs = b.mul(&a).unwrap().mul(&b).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn distant_generators_commute() {
        for n in 4..=7 {
            for k in 1..n {
                for m in k + 2..n {
                    let lhs = r(n, k).mul(&r(n, m)).unwrap();
                    let rhs = r(n, m).mul(&r(n, k)).unwrap();
                    assert!(lhs.sub(&rhs).unwrap().is_zero(), "rank {n}: R_{k} R_{m}");
                }
            }
        }
    }

    #[test]
    fn t_relations_up_to_rank_seven() {
        for n in 2..=7 {
            for k in 1..n {
                let tk = t(n, k);
                assert_eq!(tk.mul(&tk).unwrap(), tk.scale(&qint_rf(2)));
            }
            for k in 1..n.saturating_sub(1) {
                let a = t(n, k);
                let b = t(n, k + 1);
                let lhs = a
                    .mul(&b)
                    .unwrap()
                    .mul(&a)
                    .unwrap()
                    .sub(&b.mul(&a).unwrap().mul(&b).unwrap())
                    .unwrap();
                assert_eq!(lhs, a.sub(&b).unwrap(), "rank {n}, k {k}");
            }
        }
    }

    #[test]
    fn t_generator_relations() {
        // T_k^2 = (q + q^-1) T_k.
        for n in 2..=5 {
            for k in 1..n {
                let tk = t(n, k);
                let lhs = tk.mul(&tk).unwrap();
                let rhs = tk.scale(&qint_rf(2));
                assert_eq!(lhs, rhs);
            }
        }
        // T_1 T_2 T_1 - T_2 T_1 T_2 = T_1 - T_2 in H_3.
        let t1 = t(3, 1);
        let t2 = t(3, 2);
        let lhs = t1
            .mul(&t2)
            .unwrap()
            .mul(&t1)
            .unwrap()
            .sub(&t2.mul(&t1).unwrap().mul(&t2).unwrap())
            .unwrap();
        let rhs = t1.sub(&t2).unwrap();
        assert_eq!(lhs, rhs);
        // T_1 T_3 = T_3 T_1 in H_4.
        let lhs = t(4, 1).mul(&t(4, 3)).unwrap();
        let rhs = t(4, 3).mul(&t(4, 1)).unwrap();
        assert!(lhs.sub(&rhs).unwrap().is_zero());
    }

    #[test]
    fn t_annihilates_its_complement() {
        // T_1 (T_1 - [2] 1) = 0.
        let t1 = t(3, 1);
        let rhs = t1.sub(&one(3).scale(&qint_rf(2))).unwrap();
        assert!(t1.mul(&rhs).unwrap().is_zero());
    }

    #[test]
    fn basis_generator_expansion() {
        // Unit times any generator is that generator's basis element.
        let id = Permutation::identity(3);
        for k in 1..3 {
            let prod = mul_basis_by_generator(&id, k).unwrap();
            assert_eq!(prod, r(3, k));
        }
        // s_1 * s_1 expands through the quadratic relation.
        let s1 = Permutation::simple(3, 1).unwrap();
        let prod = mul_basis_by_generator(&s1, 1).unwrap();
        let expect = one(3).add(&r(3, 1).scale(&dq())).unwrap();
        assert_eq!(prod, expect);
        // Length increase is plain concatenation.
        let prod = mul_basis_by_generator(&s1, 2).unwrap();
        let s1s2 = s1.compose(&Permutation::simple(3, 2).unwrap());
        // s_1 then s_2 acting on the right: the basis element of s_1 s_2.
        let expect = HeckeElement::basis(3, &Permutation::simple(3, 1).unwrap())
            .unwrap()
            .mul(&r(3, 2))
            .unwrap();
        assert_eq!(prod, expect);
        assert_eq!(prod.coeff(&s1s2).unwrap(), RatFunc::one());
    }

    #[test]
    fn unit_is_neutral() {
        let a = r(4, 1).mul(&t(4, 2)).unwrap().add(&one(4)).unwrap();
        assert_eq!(a.mul(&one(4)).unwrap(), a);
        assert_eq!(one(4).mul(&a).unwrap(), a);
    }

    #[test]
    fn rank_mismatch_rejected() {
        assert!(r(3, 1).mul(&r(4, 1)).is_err());
        assert!(r(3, 1).add(&r(4, 1)).is_err());
        assert!(HeckeElement::generator_r(3, 3).is_err());
        assert!(HeckeElement::generator_t(4, 0).is_err());
    }

    #[test]
    fn shift_embed_examples() {
        // Shift of the unit is the unit.
        assert_eq!(one(2).shift_embed(4, 1).unwrap(), one(4));
        // Relabeling products: shift_1(T_{s_1 s_2}) = T_{s_2 s_3} in H_4.
        let w12 = Permutation::simple(3, 1)
            .unwrap()
            .compose(&Permutation::simple(3, 2).unwrap());
        let el = HeckeElement::basis(3, &w12).unwrap();
        let shifted = el.shift_embed(4, 1).unwrap();
        let w23 = Permutation::simple(4, 2)
            .unwrap()
            .compose(&Permutation::simple(4, 3).unwrap());
        assert_eq!(shifted, HeckeElement::basis(4, &w23).unwrap());
        // Shift 0 is the standard embedding.
        let e = r(3, 2).shift_embed(5, 0).unwrap();
        assert_eq!(e, r(5, 2));
        // Overflow is an error.
        assert!(r(3, 2).shift_embed(3, 1).is_err());
    }

    #[test]
    fn phi_on_generators_and_involution() {
        // phi(1) = 1; phi_3(T_1) = T_2.
        assert_eq!(one(3).phi(), one(3));
        assert_eq!(t(3, 1).phi(), t(3, 2));
        assert_eq!(r(4, 1).phi(), r(4, 3));
        // Involution and homomorphism on a handful of structured elements.
        let samples = [
            r(4, 1).mul(&r(4, 2)).unwrap(),
            t(4, 3).add(&one(4)).unwrap(),
            r(4, 2).mul(&t(4, 1)).unwrap().sub(&r(4, 3)).unwrap(),
        ];
        for a in &samples {
            assert_eq!(a.phi().phi(), *a);
            for b in &samples {
                let lhs = a.mul(b).unwrap().phi();
                let rhs = a.phi().mul(&b.phi()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn phi_composition_with_embedding() {
        // phi_{N+1}(phi_N(X) (x) id) equals the generator shift of X.
        let samples = [
            r(3, 1).mul(&r(3, 2)).unwrap().add(&t(3, 1)).unwrap(),
            t(3, 2).mul(&t(3, 1)).unwrap(),
            one(3).sub(&r(3, 2)).unwrap(),
        ];
        for x in &samples {
            let lhs = x.phi().shift_embed(4, 0).unwrap().phi();
            let rhs = x.shift_embed(4, 1).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn coefficients_render_deterministically() {
        let el = one(3)
            .scale(&RatFunc::new(qint(1), qint(2)).unwrap())
            .sub(&r(3, 1))
            .unwrap();
        let s = el.to_string();
        assert!(s.starts_with("((q) / (q^2 + 1)) * T[]"), "got {s}");
        assert!(s.contains("T[1]"));
    }

    #[test]
    fn associativity_against_matrix_oracle() {
        use num::complex::Complex64;
        // Deterministic pseudo-random small elements of H_4.
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let q = Complex64::new(0.7, 0.3);
        for _round in 0..50 {
            let mut els = Vec::new();
            for _ in 0..3 {
                let mut e = HeckeElement::zero(4).unwrap();
                for _ in 0..3 {
                    let idx = (next() % 24) as usize;
                    let c = (next() % 7) as i128 - 3;
                    let exp = (next() % 5) as i64 - 2;
                    let w = Permutation::from_index(4, idx);
                    let b = HeckeElement::basis(4, &w).unwrap().scale_monomial(c, exp);
                    e = e.add(&b).unwrap();
                }
                els.push(e);
            }
            let (a, b, c) = (&els[0], &els[1], &els[2]);
            let left = a.mul(b).unwrap().mul(c).unwrap();
            let right = a.mul(&b.mul(c).unwrap()).unwrap();
            assert_eq!(left, right);
            // Distributivity.
            let d1 = a.mul(&b.add(c).unwrap()).unwrap();
            let d2 = a.mul(b).unwrap().add(&a.mul(c).unwrap()).unwrap();
            assert_eq!(d1, d2);
            // Numeric cross-check of one product against matrices.
            let mab = regular_rep_matrix(&a.mul(b).unwrap(), q).unwrap();
            let ma = regular_rep_matrix(a, q).unwrap();
            let mb = regular_rep_matrix(b, q).unwrap();
            let prod = &ma * &mb;
            assert!((&prod - &mab).max_abs() < 1e-9);
        }
    }
}
