//! Exact arithmetic in Z[q, q^-1] and its fraction field Q(q), quantum
//! integers and their identities, and evaluation at q on the unit circle.

mod laurent;
mod ratfunc;
pub(crate) mod zpoly;

pub use laurent::LaurentPoly;
pub use ratfunc::{ratfunc_arith, ArithOp, RatFunc};

use num::complex::Complex64;
use num::{BigInt, BigRational, One};

use crate::error::{Error, Result};

/// The quantum integer `[k] = (q^k - q^-k) / (q - q^-1)` as a Laurent
/// polynomial: `q^(k-1) + q^(k-3) + ... + q^(1-k)` for `k >= 1`, with
/// `[0] = 0` and `[-k] = -[k]`.
pub fn qint(k: i64) -> LaurentPoly {
    if k == 0 {
        return LaurentPoly::zero();
    }
    if k < 0 {
        return -qint(-k);
    }
    LaurentPoly::from_terms((0..k).map(|j| (k - 1 - 2 * j, BigRational::one())))
}

/// `[k]` as a rational function, convenient for scalar algebra.
pub fn qint_rf(k: i64) -> RatFunc {
    RatFunc::from_poly(qint(k))
}

/// `rho_N = [N] / [N+1]`, the recursion coefficient.
pub fn rho(n: i64) -> RatFunc {
    RatFunc::new(qint(n), qint(n + 1)).expect("[N+1] is never the zero polynomial for N >= 0")
}

/// One failed identity instance: which identity, and at which index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub identity: String,
    pub k: i64,
}

/// Outcome of `qint_identities_check`.
#[derive(Debug, Clone)]
pub struct QintIdentityReport {
    pub k_max: i64,
    pub checked: usize,
    pub failures: Vec<IdentityFailure>,
}

impl QintIdentityReport {
    pub fn all_hold(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn first_failure(&self) -> Option<&IdentityFailure> {
        self.failures.first()
    }
}

/// Verifies, exactly, the quantum-integer identities
///
/// * `[k-1] + [k+1] = [2][k]`            for 1 <= k <= k_max,
/// * `[k-1][k+1] + 1 = [k]^2`            for 1 <= k <= k_max,
/// * `[2][N] - [N-1] = [N+1]`            for 1 <= N <= k_max,
/// * `[N+1]/[N] - [N+2]/[N+1] = 1/([N][N+1])` for 1 <= N <= k_max,
/// * `[2][N+1] + [N] = [N+2] + 2[N]`     for 1 <= N <= k_max.
pub fn qint_identities_check(k_max: i64) -> QintIdentityReport {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    let two = qint(2);
    for k in 1..=k_max {
        checked += 1;
        let lhs = qint(k - 1) + qint(k + 1);
        let rhs = &two * &qint(k);
        if lhs != rhs {
            failures.push(IdentityFailure {
                identity: "[k-1] + [k+1] = [2][k]".into(),
                k,
            });
        }
        checked += 1;
        let lhs = &qint(k - 1) * &qint(k + 1) + LaurentPoly::one();
        let rhs = &qint(k) * &qint(k);
        if lhs != rhs {
            failures.push(IdentityFailure {
                identity: "[k-1][k+1] + 1 = [k]^2".into(),
                k,
            });
        }
    }
    for n in 1..=k_max {
        checked += 1;
        let lhs = &two * &qint(n) - qint(n - 1);
        if lhs != qint(n + 1) {
            failures.push(IdentityFailure {
                identity: "[2][N] - [N-1] = [N+1]".into(),
                k: n,
            });
        }
        checked += 1;
        // [N+1]/[N] - [N+2]/[N+1] = 1/([N][N+1]); needs [N] != 0, so N >= 1.
        let lhs = &(&qint_rf(n + 1) / &qint_rf(n)) - &(&qint_rf(n + 2) / &qint_rf(n + 1));
        let rhs = RatFunc::new(LaurentPoly::one(), &qint(n) * &qint(n + 1))
            .expect("[N][N+1] nonzero");
        if lhs != rhs {
            failures.push(IdentityFailure {
                identity: "[N+1]/[N] - [N+2]/[N+1] = 1/([N][N+1])".into(),
                k: n,
            });
        }
        checked += 1;
        let lhs = &two * &qint(n + 1) + qint(n);
        let rhs = qint(n + 2) + &LaurentPoly::from_int(2) * &qint(n);
        if lhs != rhs {
            failures.push(IdentityFailure {
                identity: "[2][N+1] + [N] = [N+2] + 2[N]".into(),
                k: n,
            });
        }
    }
    QintIdentityReport {
        k_max,
        checked,
        failures,
    }
}

/// Tolerance below which a denominator magnitude counts as a pole.
pub const POLE_TOL: f64 = 1e-12;

/// The evaluation point q = e^(i*gamma) on the unit circle, 0 < gamma < pi.
///
/// Under this substitution every quantum integer becomes the real number
/// `[k] -> sin(k*gamma) / sin(gamma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitCircleQ {
    gamma: f64,
}

impl UnitCircleQ {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma < std::f64::consts::PI) {
            return Err(Error::InvalidParameter(format!(
                "gamma must lie in (0, pi), got {gamma}"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn q(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.gamma)
    }

    /// `[k]` evaluated at this point: sin(k*gamma) / sin(gamma).
    pub fn qint_value(&self, k: i64) -> f64 {
        (k as f64 * self.gamma).sin() / self.gamma.sin()
    }

    /// `rho_n = [n]/[n+1]` at this point; errors when `[n+1]` vanishes.
    pub fn rho_value(&self, n: i64) -> Result<f64> {
        let den = self.qint_value(n + 1);
        if den.abs() < POLE_TOL {
            return Err(Error::RhoPole {
                k: (n + 1) as usize,
                gamma: self.gamma,
            });
        }
        Ok(self.qint_value(n) / den)
    }
}

/// Substitutes q = e^(i*gamma) into a rational function, term by term.
/// Fails with `PoleAtGamma` when the denominator magnitude is below 1e-12.
pub fn eval_unit_circle(f: &RatFunc, gamma: f64) -> Result<Complex64> {
    let q = Complex64::from_polar(1.0, gamma);
    let den = f.den().eval_complex(q);
    if den.norm() < POLE_TOL {
        return Err(Error::PoleAtGamma {
            gamma,
            magnitude: den.norm(),
        });
    }
    Ok(f.num().eval_complex(q) / den)
}

/// Exact rational q-points that avoid all quantum-integer zeros (those lie on
/// the unit circle), used as evaluation oracles.
pub fn generic_rational_points(count: usize) -> Vec<BigRational> {
    (0..count)
        .map(|i| BigRational::new(BigInt::from(i as i64 + 2), BigInt::from(2 * i as i64 + 3)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2), LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]));
        assert_eq!(
            qint(3),
            LaurentPoly::from_int_terms(&[(2, 1), (0, 1), (-2, 1)])
        );
        assert_eq!(qint(-3), -qint(3));
    }

    #[test]
    fn qint_matches_division_oracle() {
        // Independent route: [k] = (q^k - q^-k) / (q - q^-1) by polynomial
        // division.
        let den = LaurentPoly::q_minus_q_inv();
        for k in 1..=12i64 {
            let num = LaurentPoly::from_int_terms(&[(k, 1), (-k, -1)]);
            let (quot, rem) = num.div_rem(&den);
            assert!(rem.is_zero());
            assert_eq!(quot, qint(k), "k = {k}");
        }
    }

    #[test]
    fn identities_hold_up_to_20() {
        let report = qint_identities_check(20);
        assert!(report.all_hold(), "failures: {:?}", report.failures);
    }

    #[test]
    fn identity_trivial_k1() {
        // [0] + [2] = [2][1] with [0] = 0, [1] = 1.
        let report = qint_identities_check(1);
        assert!(report.all_hold());
    }

    #[test]
    fn eq35_form_at_n2() {
        // [2][3] + [2] = [4] + 2[2].
        let lhs = &qint(2) * &qint(3) + qint(2);
        let rhs = qint(4) + &LaurentPoly::from_int(2) * &qint(2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_minus_rho_is_inverse_rho() {
        // [2] - rho_{N-1} = [N+1]/[N] = 1/rho_N, exact in Q(q).
        for n in 2..=12i64 {
            let lhs = &qint_rf(2) - &rho(n - 1);
            let rhs = RatFunc::new(qint(n + 1), qint(n)).unwrap();
            assert_eq!(lhs, rhs, "N = {n}");
            assert_eq!(rho(n).recip().unwrap(), rhs);
        }
    }

    #[test]
    fn unit_circle_values() {
        // [3] at gamma = pi/3 vanishes: sin(pi) = 0.
        let v = eval_unit_circle(&qint_rf(3), std::f64::consts::PI / 3.0).unwrap();
        assert!(v.norm() < 1e-12);
        // [2] at gamma = pi/4 is sqrt(2).
        let v = eval_unit_circle(&qint_rf(2), std::f64::consts::PI / 4.0).unwrap();
        assert!((v.re - std::f64::consts::SQRT_2).abs() < 1e-12);
        assert!(v.im.abs() < 1e-12);
        // [1] is 1 at any gamma.
        let v = eval_unit_circle(&qint_rf(1), 0.7321).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);
    }

    #[test]
    fn pole_detection() {
        // 1/[3] at gamma = pi/3 is a pole.
        let f = RatFunc::new(LaurentPoly::one(), qint(3)).unwrap();
        match eval_unit_circle(&f, std::f64::consts::PI / 3.0) {
            Err(Error::PoleAtGamma { .. }) => {}
            other => panic!("expected PoleAtGamma, got {other:?}"),
        }
    }

    #[test]
    fn sine_ratio_matches_for_all_small_k() {
        for k in 1..=9i64 {
            for &gamma in &[0.3f64, 0.7, 1.1, 2.0, 2.9] {
                let u = UnitCircleQ::new(gamma).unwrap();
                let sym = eval_unit_circle(&qint_rf(k), gamma).unwrap();
                assert!((sym.re - u.qint_value(k)).abs() < 1e-12);
                assert!(sym.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn qint_product_random_rational_oracle() {
        // [k][m] evaluated at 20 generic rational points matches evaluating
        // the product polynomial, in exact rational arithmetic.
        let points = generic_rational_points(20);
        for &(k, m) in &[(2i64, 3i64), (4, 5), (1, 7), (6, 6), (3, 8)] {
            let prod = &qint(k) * &qint(m);
            for p in &points {
                let direct = prod.eval_rational(p);
                let split = qint(k).eval_rational(p) * qint(m).eval_rational(p);
                assert_eq!(direct, split);
            }
        }
    }
}
