use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

/// A Laurent polynomial in `q` with arbitrary-precision rational
/// coefficients: a finite map exponent -> coefficient.
///
/// Zero coefficients are never stored, and the exponent map is ordered, so
/// structural equality is exact equality and printing is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, BigRational::one())
    }

    /// The inverse variable `q^-1`.
    pub fn q_inv() -> Self {
        Self::monomial(-1, BigRational::one())
    }

    /// `q - q^-1`, the deformation scalar of the quadratic relation.
    pub fn q_minus_q_inv() -> Self {
        Self::q() - Self::q_inv()
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_int(v: i64) -> Self {
        Self::monomial(0, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_terms<I>(iter: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let mut p = Self::zero();
        for (e, c) in iter {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from `(exponent, integer coefficient)` pairs.
    pub fn from_int_terms(pairs: &[(i64, i64)]) -> Self {
        Self::from_terms(
            pairs
                .iter()
                .map(|&(e, c)| (e, BigRational::from_integer(BigInt::from(c)))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    /// True when the polynomial is a single term `c * q^e`.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest exponent, or None for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent, or None for the zero polynomial.
    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(BigRational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, exp: i64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiply by `c * q^e` in place.
    pub fn scale_monomial(&mut self, exp: i64, coeff: &BigRational) {
        if coeff.is_zero() {
            self.terms.clear();
            return;
        }
        let old = std::mem::take(&mut self.terms);
        for (e, c) in old {
            self.terms.insert(e + exp, c * coeff);
        }
    }

    pub fn shifted(&self, exp: i64) -> Self {
        let mut out = self.clone();
        out.scale_monomial(exp, &BigRational::one());
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute a nonzero rational value for `q`. Exact.
    pub fn eval_rational(&self, q: &BigRational) -> BigRational {
        assert!(!q.is_zero(), "cannot evaluate a Laurent polynomial at q = 0");
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * rational_pow(q, *e);
        }
        acc
    }

    /// Substitute a complex value for `q`.
    pub fn eval_complex(&self, q: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let cf = rational_to_f64(c);
            acc += q.powi(*e as i32) * cf;
        }
        acc
    }

    /// Polynomial quotient and remainder, treating both operands as ordinary
    /// polynomials after factoring out their lowest powers of `q`.
    ///
    /// `self = quot * div + rem * q^s` with the usual degree condition on the
    /// polynomial parts; the Laurent shifts are reattached so that the returned
    /// identity `self = quot * div + rem` holds verbatim.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        assert!(!div.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let div_low = div.low_degree().unwrap();
        let div_deg = div.degree().unwrap() - div_low;
        let div_lead = div.coeff(div.degree().unwrap());

        let self_low = self.low_degree().unwrap();
        // Work on the polynomial part of self; remember the shift.
        let mut rem = self.shifted(-self_low);
        let mut quot = Self::zero();
        while let Some(rdeg) = rem.degree() {
            if rdeg < div_deg {
                break;
            }
            let factor = rem.coeff(rdeg) / &div_lead;
            let shift = rdeg - div_deg;
            quot.add_term(shift, factor.clone());
            let mut sub = div.shifted(-div_low + shift);
            sub.scale_monomial(0, &factor);
            rem -= sub;
        }
        // Reattach shifts: self = q^{self_low} (quot*divpoly + rem)
        //                       = (quot * q^{self_low - div_low}) * div + rem * q^{self_low}.
        (quot.shifted(self_low - div_low), rem.shifted(self_low))
    }

    /// Exact division; panics if `div` does not divide `self`.
    pub fn exact_div(&self, div: &Self) -> Self {
        let (q, r) = self.div_rem(div);
        assert!(r.is_zero(), "exact_div: nonzero remainder");
        q
    }

    /// Monic gcd of the polynomial parts (Laurent shifts are discarded, so the
    /// result has lowest exponent 0). gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        if let Some(lo) = a.low_degree() {
            a = a.shifted(-lo);
        }
        if let Some(lo) = b.low_degree() {
            b = b.shifted(-lo);
        }
        while !b.is_zero() {
            let (_, mut r) = a.div_rem(&b);
            if let Some(lo) = r.low_degree() {
                r = r.shifted(-lo);
            }
            // Keep coefficients small-ish by making the remainder monic.
            if !r.is_zero() {
                let lead = r.leading_coeff();
                r.scale_monomial(0, &lead.recip());
            }
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coeff();
        a.scale_monomial(0, &lead.recip());
        a
    }

    /// Rendered with exponents descending, e.g. `q^2 - 2 + q^-2`.
    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            if *e != 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if *e == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{}", e)?;
                }
            }
        }
        Ok(())
    }
}

fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    // num's Ratio::pow takes i32; exponents here are tiny.
    let p = q.pow(i32::try_from(e.unsigned_abs()).expect("exponent overflow"));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

pub(crate) fn rational_to_f64(c: &BigRational) -> f64 {
    use num::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs.clone();
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += rhs;
        self
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs.clone();
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= rhs;
        self
    }
}

impl SubAssign for LaurentPoly {
    fn sub_assign(&mut self, rhs: LaurentPoly) {
        for (e, c) in rhs.terms {
            self.add_term(e, -c);
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl MulAssign for LaurentPoly {
    fn mul_assign(&mut self, rhs: LaurentPoly) {
        *self = &*self * &rhs;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn arithmetic_basics() {
        let q = LaurentPoly::q();
        let qi = LaurentPoly::q_inv();
        let two = &q * &qi + &q * &qi;
        assert_eq!(two, LaurentPoly::from_int(2));
        assert!((&q - &q).is_zero());
        assert_eq!((&q + &qi).num_terms(), 2);
    }

    #[test]
    fn div_rem_roundtrip() {
        // (q^2 - q^-2) / (q - q^-1) = q + q^-1 exactly.
        let num = LaurentPoly::from_int_terms(&[(2, 1), (-2, -1)]);
        let den = LaurentPoly::from_int_terms(&[(1, 1), (-1, -1)]);
        let (quot, rem) = num.div_rem(&den);
        assert!(rem.is_zero());
        assert_eq!(quot, LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]));
        assert_eq!(&quot * &den, num);
    }

    #[test]
    fn div_rem_with_remainder() {
        let a = LaurentPoly::from_int_terms(&[(3, 2), (1, 1), (0, 5)]);
        let b = LaurentPoly::from_int_terms(&[(2, 1), (0, 1)]);
        let (quot, rem) = a.div_rem(&b);
        assert_eq!(&quot * &b + rem, a);
    }

    #[test]
    fn gcd_of_shifted_factors() {
        let f = LaurentPoly::from_int_terms(&[(1, 1), (-1, 1)]); // q + q^-1
        let g = LaurentPoly::from_int_terms(&[(2, 1), (0, 1), (-2, 1)]); // q^2+1+q^-2
        let prod_f = &f * &g;
        let d = prod_f.gcd(&g);
        // gcd is monic with lowest exponent 0: q^4 + q^2 + 1 normalized.
        assert_eq!(d, g.shifted(2));
    }

    #[test]
    fn eval_rational_exact() {
        let p = LaurentPoly::from_int_terms(&[(2, 1), (0, 1), (-2, 1)]);
        let v = p.eval_rational(&rat(2, 1));
        assert_eq!(v, rat(21, 4));
    }

    #[test]
    fn display_descending() {
        let p = LaurentPoly::from_int_terms(&[(-2, 1), (0, -3), (2, 1)]);
        assert_eq!(p.to_string(), "q^2 - 3 + q^-2");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let m = LaurentPoly::monomial(1, rat(1, 2));
        assert_eq!(m.to_string(), "1/2*q");
    }
}
