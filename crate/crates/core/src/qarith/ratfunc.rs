use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{BigRational, One, Zero};

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// An element of the rational-function field Q(q), kept in canonical form:
///
/// * `den` is nonzero, has lowest exponent 0 and leading coefficient +1;
/// * the polynomial parts of `num` and `den` are coprime over Q\[q\];
/// * the zero element is `0 / 1`.
///
/// With this normalization, equality and zero-testing are plain structural
/// comparisons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(mut num: LaurentPoly, mut den: LaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            };
        }
        // Shift so that den has lowest exponent 0; the shift moves into num.
        let s = den.low_degree().unwrap();
        den = den.shifted(-s);
        num = num.shifted(-s);
        // Divide out the polynomial gcd (computed on polynomial parts; num's
        // Laurent shift survives in its own low exponent).
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.exact_div(&g);
            den = den.exact_div(&g);
        }
        // Scale den's leading coefficient to +1.
        let lead = den.leading_coeff();
        if !lead.is_one() {
            let inv = lead.recip();
            num.scale_monomial(0, &inv);
            den.scale_monomial(0, &inv);
        }
        Self { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(v))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    /// Exact evaluation at a nonzero rational `q`.
    pub fn eval_rational(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval_rational(q);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval_rational(q) / d)
    }

    /// Evaluation at a complex `q`; reports a pole when the denominator
    /// magnitude falls below `pole_tol`.
    pub fn eval_complex(&self, q: Complex64, pole_tol: f64) -> Result<Complex64> {
        let d = self.den.eval_complex(q);
        if d.norm() < pole_tol {
            return Err(Error::PoleAtQ {
                q_re: q.re,
                q_im: q.im,
            });
        }
        Ok(self.num.eval_complex(q) / d)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::canonical(&self.num + &rhs.num, self.den.clone());
        }
        RatFunc::canonical(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -self.num,
            den: self.den,
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

/// The four field operations behind one entry point, mapping division by
/// zero to an error instead of a panic.
pub fn ratfunc_arith(a: &RatFunc, b: &RatFunc, op: ArithOp) -> Result<RatFunc> {
    match op {
        ArithOp::Add => Ok(a + b),
        ArithOp::Sub => Ok(a - b),
        ArithOp::Mul => Ok(a * b),
        ArithOp::Div => a.checked_div(b),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[cfg(test)]
mod tests {
    use super::super::qint;
    use super::*;

    fn qr(k: i64) -> RatFunc {
        RatFunc::from_poly(qint(k))
    }

    #[test]
    fn inverse_pair() {
        // (1/[2]) * [2] = 1
        let two = qr(2);
        let inv = two.recip().unwrap();
        assert!((&inv * &two).is_one());
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let a = RatFunc::new(
            LaurentPoly::from_int_terms(&[(3, 2), (1, 2)]),
            LaurentPoly::from_int_terms(&[(2, 4), (0, 4)]),
        )
        .unwrap();
        // (2q^3 + 2q) / (4q^2 + 4) = q/2.
        assert_eq!(a, RatFunc::new(LaurentPoly::q(), LaurentPoly::from_int(2)).unwrap());
        let re = RatFunc::new(a.num().clone(), a.den().clone()).unwrap();
        assert_eq!(a, re);
    }

    #[test]
    fn x_minus_x_is_zero() {
        let x = RatFunc::new(qint(5), qint(3)).unwrap();
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn rho_difference_identity() {
        // [N+1]/[N] - [N+2]/[N+1] = 1/([N][N+1]) at N = 3.
        let lhs = &(&qr(4) / &qr(3)) - &(&qr(5) / &qr(4));
        let rhs = RatFunc::new(LaurentPoly::one(), &qint(3) * &qint(4)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn two_minus_ratio_identity() {
        // [2] - [N-1]/[N] = [N+1]/[N] at N = 4.
        let lhs = &qr(2) - &(&qr(3) / &qr(4));
        let rhs = &qr(5) / &qr(4);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn division_by_zero_reported() {
        let z = RatFunc::zero();
        let one = RatFunc::one();
        assert!(matches!(
            one.checked_div(&z),
            Err(Error::DivisionByZero)
        ));
        assert!(matches!(
            ratfunc_arith(&one, &z, ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn display_format() {
        // Canonical form shifts the denominator to lowest exponent 0.
        let r = RatFunc::new(LaurentPoly::one(), qint(2)).unwrap();
        assert_eq!(r.to_string(), "(q) / (q^2 + 1)");
        assert_eq!(qr(2).to_string(), "q + q^-1");
    }
}
