use std::sync::Arc;

use num::complex::Complex64;

use super::element::HeckeElement;
use super::tables::HeckeTables;
use crate::error::Result;
use crate::rep::DenseOperator;

/// The matrix of left multiplication by `a` on the permutation basis, with
/// coefficients evaluated at a concrete `q`: column `j` holds the basis
/// coefficients of `a * T_{w_j}`.
///
/// Faithful for generic q, so it serves as a numeric oracle for the exact
/// engine. Size is n! x n!; callers should stay at small ranks.
pub fn regular_rep_matrix(a: &HeckeElement, q: Complex64) -> Result<DenseOperator> {
    let tables = a.tables().clone();
    let size = tables.size();
    let base = a.eval_vector(q)?;
    let mut m = DenseOperator::zeros(size);
    let mut col = base.clone();
    for j in 0..size {
        col.copy_from_slice(&base);
        for &k in tables.reduced_word(j) {
            apply_generator_right_numeric(&tables, &mut col, k as usize, q);
        }
        for i in 0..size {
            m[(i, j)] = col[i];
        }
    }
    Ok(m)
}

/// Numeric analogue of the exact right-multiplication step: the coefficient
/// pair (c_short, c_long) over w <-> w s_k becomes
/// (c_long, c_short + (q - q^-1) c_long).
pub(crate) fn apply_generator_right_numeric(
    tables: &HeckeTables,
    buf: &mut [Complex64],
    k: usize,
    q: Complex64,
) {
    let dq = q - q.inv();
    for u in 0..buf.len() {
        let v = tables.right_mul(k, u);
        if v <= u {
            continue;
        }
        let (short, long) = if tables.length(u) < tables.length(v) {
            (u, v)
        } else {
            (v, u)
        };
        let old_long = buf[long];
        buf[long] = buf[short] + dq * old_long;
        buf[short] = old_long;
    }
}

/// Same step for the left action: T_k acts on a coefficient vector through
/// the pairing w <-> s_k w.
pub(crate) fn apply_generator_left_numeric(
    tables: &HeckeTables,
    buf: &mut [Complex64],
    k: usize,
    q: Complex64,
) {
    let dq = q - q.inv();
    for u in 0..buf.len() {
        let v = tables.left_mul(k, u);
        if v <= u {
            continue;
        }
        let (short, long) = if tables.length(u) < tables.length(v) {
            (u, v)
        } else {
            (v, u)
        };
        let old_long = buf[long];
        buf[long] = buf[short] + dq * old_long;
        buf[short] = old_long;
    }
}

/// Matrix-free left action of algebra expressions on basis-coefficient
/// vectors at a fixed numeric q. Products of generators and recursively
/// defined projectors never materialize matrices, which keeps the regular
/// representation usable as an oracle at rank 7 and beyond.
pub struct RegularAction {
    tables: Arc<HeckeTables>,
    q: Complex64,
}

impl RegularAction {
    pub fn new(host_rank: usize, q: Complex64) -> Result<Self> {
        Ok(Self {
            tables: HeckeTables::get(host_rank)?,
            q,
        })
    }

    pub fn size(&self) -> usize {
        self.tables.size()
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// Quantum integer at this q.
    pub fn qint(&self, k: i64) -> Complex64 {
        let q = self.q;
        (q.powi(k as i32) - q.powi(-k as i32)) / (q - q.inv())
    }

    pub fn rho(&self, n: i64) -> Complex64 {
        self.qint(n) / self.qint(n + 1)
    }

    /// v <- R_k v.
    pub fn apply_r(&self, k: usize, v: &mut [Complex64]) {
        apply_generator_left_numeric(&self.tables, v, k, self.q);
    }

    /// v <- T_k v = (q^-1 + R_k) v.
    pub fn apply_t(&self, k: usize, v: &mut [Complex64]) {
        let qinv = self.q.inv();
        let mut rv = v.to_vec();
        apply_generator_left_numeric(&self.tables, &mut rv, k, self.q);
        for (x, r) in v.iter_mut().zip(rv) {
            *x = qinv * *x + r;
        }
    }

    /// v <- P_level v for the antisymmetrizer built on generators
    /// T_{1+shift}, ..., T_{level-1+shift}; shift 1 gives the primed tower.
    pub fn apply_p(&self, level: usize, shift: usize, v: &mut [Complex64]) {
        if level <= 1 {
            return;
        }
        // P_level = P_{level-1} - rho_{level-1} P_{level-1} T_{level-1+shift} P_{level-1}
        self.apply_p(level - 1, shift, v);
        let mut w = v.to_vec();
        self.apply_t(level - 1 + shift, &mut w);
        self.apply_p(level - 1, shift, &mut w);
        let r = self.rho(level as i64 - 1);
        for (x, y) in v.iter_mut().zip(w) {
            *x -= r * y;
        }
    }

    /// The unit coefficient vector.
    pub fn unit_vector(&self) -> Vec<Complex64> {
        let mut v = vec![Complex64::new(0.0, 0.0); self.size()];
        v[0] = Complex64::new(1.0, 0.0);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke::element::HeckeElement;

    fn cq() -> Complex64 {
        Complex64::new(0.7, 0.3)
    }

    #[test]
    fn identity_maps_to_identity_matrix() {
        let one = HeckeElement::one(3).unwrap();
        let m = regular_rep_matrix(&one, cq()).unwrap();
        assert!((&m - &DenseOperator::identity(6)).max_abs() < 1e-14);
    }

    #[test]
    fn quadratic_relation_in_matrices() {
        let q = cq();
        let r1 = HeckeElement::generator_r(3, 1).unwrap();
        let m = regular_rep_matrix(&r1, q).unwrap();
        let lhs = &m * &m;
        let rhs = &DenseOperator::identity(6) + &m.scale(q - q.inv());
        assert!((&lhs - &rhs).max_abs() < 1e-10);
    }

    #[test]
    fn matrix_of_product_is_product_of_matrices() {
        // Five generic q samples off the unit circle; relative 1e-9.
        let qs = [
            Complex64::new(0.7, 0.3),
            Complex64::new(1.2, -0.1),
            Complex64::new(0.85, 0.4),
            Complex64::new(1.1, 0.25),
            Complex64::new(0.8, -0.45),
        ];
        let a = HeckeElement::generator_t(3, 1)
            .unwrap()
            .mul(&HeckeElement::generator_r(3, 2).unwrap())
            .unwrap()
            .add(&HeckeElement::one(3).unwrap())
            .unwrap();
        let b = HeckeElement::generator_r(3, 2)
            .unwrap()
            .sub(&HeckeElement::generator_t(3, 1).unwrap())
            .unwrap();
        let ab = a.mul(&b).unwrap();
        for q in qs {
            let ma = regular_rep_matrix(&a, q).unwrap();
            let mb = regular_rep_matrix(&b, q).unwrap();
            let mab = regular_rep_matrix(&ab, q).unwrap();
            let prod = &ma * &mb;
            let scale = prod.max_abs().max(1.0);
            assert!((&prod - &mab).max_abs() / scale < 1e-9, "q = {q}");
        }
    }

    #[test]
    fn left_action_matches_multiplication() {
        let q = cq();
        let act = RegularAction::new(3, q).unwrap();
        let b = HeckeElement::generator_r(3, 2)
            .unwrap()
            .add(&HeckeElement::generator_t(3, 1).unwrap())
            .unwrap();
        let mut v = b.eval_vector(q).unwrap();
        act.apply_t(1, &mut v);
        let t1 = HeckeElement::generator_t(3, 1).unwrap();
        let prod = t1.mul(&b).unwrap();
        let expect = prod.eval_vector(q).unwrap();
        for (x, y) in v.iter().zip(&expect) {
            assert!((x - y).norm() < 1e-12);
        }
    }
}
