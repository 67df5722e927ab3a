//! Dense integer-coefficient Laurent polynomials.
//!
//! This is the workhorse representation behind algebra elements: products of
//! basis elements only ever add, shift, and multiply by small polynomials, so
//! keeping coefficients as machine integers in a dense exponent window makes
//! those operations branch-light loops. All arithmetic is checked; an i128
//! overflow aborts loudly rather than wrapping. Rational content lives in the
//! enclosing element's common denominator, never here.

use num::{BigInt, BigRational, One};

use super::laurent::LaurentPoly;

/// `c[0] * q^lo + c[1] * q^(lo+1) + ...`; invariant: `c` is empty (zero
/// polynomial) or has nonzero first and last entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ZPoly {
    lo: i64,
    c: Vec<i128>,
}

#[inline]
fn cadd(a: i128, b: i128) -> i128 {
    a.checked_add(b).expect("i128 overflow in exact coefficient arithmetic")
}

#[inline]
fn cmul(a: i128, b: i128) -> i128 {
    a.checked_mul(b).expect("i128 overflow in exact coefficient arithmetic")
}

impl ZPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i128) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            Self {
                lo: exp,
                c: vec![coeff],
            }
        }
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn from_int_terms(pairs: &[(i64, i128)]) -> Self {
        let mut p = Self::zero();
        for &(e, v) in pairs {
            p.add_term(e, v);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.c.len() == 1 && self.c[0] == 1
    }

    pub fn low(&self) -> i64 {
        self.lo
    }

    pub fn degree(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.lo + self.c.len() as i64 - 1
    }

    pub fn leading_coeff(&self) -> i128 {
        self.c.last().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead_zeros = self.c.iter().take_while(|&&v| v == 0).count();
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.lo += lead_zeros as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
    }

    pub fn add_term(&mut self, exp: i64, v: i128) {
        if v == 0 {
            return;
        }
        if self.c.is_empty() {
            self.lo = exp;
            self.c.push(v);
            return;
        }
        let hi = self.degree();
        if exp < self.lo {
            let pad = (self.lo - exp) as usize;
            let mut nc = vec![0i128; pad + self.c.len()];
            nc[0] = v;
            nc[pad..].copy_from_slice(&self.c);
            self.c = nc;
            self.lo = exp;
        } else if exp > hi {
            self.c.resize((exp - self.lo) as usize + 1, 0);
            let last = self.c.len() - 1;
            self.c[last] = v;
        } else {
            let idx = (exp - self.lo) as usize;
            self.c[idx] = cadd(self.c[idx], v);
            self.trim();
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.degree().max(rhs.degree());
        if lo < self.lo || hi > self.degree() {
            let mut nc = vec![0i128; (hi - lo + 1) as usize];
            let off = (self.lo - lo) as usize;
            nc[off..off + self.c.len()].copy_from_slice(&self.c);
            self.c = nc;
            self.lo = lo;
        }
        let off = (rhs.lo - self.lo) as usize;
        for (i, &v) in rhs.c.iter().enumerate() {
            self.c[off + i] = cadd(self.c[off + i], v);
        }
        self.trim();
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn sub_assign_ref(&mut self, rhs: &Self) {
        // Cheap enough: negate-and-add keeps one code path.
        if rhs.is_zero() {
            return;
        }
        let mut neg = rhs.clone();
        neg.negate();
        self.add_assign_ref(&neg);
    }

    pub fn negate(&mut self) {
        for v in &mut self.c {
            *v = v.checked_neg().expect("i128 overflow in negation");
        }
    }

    pub fn shift(&mut self, exp: i64) {
        if !self.is_zero() {
            self.lo += exp;
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0i128; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = cadd(c[i + j], cmul(a, b));
                }
            }
        }
        let mut out = Self {
            lo: self.lo + rhs.lo,
            c,
        };
        out.trim();
        out
    }

    /// `self += scale * rhs`, fused to avoid a temporary.
    pub fn add_scaled(&mut self, rhs: &Self, scale: &Self) {
        if rhs.is_zero() || scale.is_zero() {
            return;
        }
        if scale.c.len() == 1 {
            // Monomial fast path.
            let sv = scale.c[0];
            let lo = scale.lo + rhs.lo;
            let hi = lo + rhs.c.len() as i64 - 1;
            self.reserve_window(lo, hi);
            let off = (lo - self.lo) as usize;
            for (i, &v) in rhs.c.iter().enumerate() {
                if v != 0 {
                    self.c[off + i] = cadd(self.c[off + i], cmul(v, sv));
                }
            }
            self.trim();
            return;
        }
        let prod = rhs.mul(scale);
        self.add_assign_ref(&prod);
    }

    /// `self += (q - q^-1) * rhs`, the deformation term of the quadratic
    /// relation; fused because it sits on the hottest multiplication path.
    pub fn add_mul_q_minus_qinv(&mut self, rhs: &Self) {
        if rhs.is_zero() {
            return;
        }
        let lo = rhs.lo - 1;
        let hi = rhs.degree() + 1;
        self.reserve_window(lo, hi);
        let off = (rhs.lo - self.lo) as usize;
        debug_assert!(off >= 1);
        for (i, &v) in rhs.c.iter().enumerate() {
            if v != 0 {
                self.c[off + i + 1] = cadd(self.c[off + i + 1], v);
                self.c[off + i - 1] = cadd(self.c[off + i - 1], -v);
            }
        }
        self.trim();
    }

    fn reserve_window(&mut self, lo: i64, hi: i64) {
        if self.is_zero() {
            self.lo = lo;
            self.c = vec![0i128; (hi - lo + 1) as usize];
            return;
        }
        let nlo = self.lo.min(lo);
        let nhi = self.degree().max(hi);
        if nlo < self.lo || nhi > self.degree() {
            let mut nc = vec![0i128; (nhi - nlo + 1) as usize];
            let off = (self.lo - nlo) as usize;
            nc[off..off + self.c.len()].copy_from_slice(&self.c);
            self.c = nc;
            self.lo = nlo;
        }
    }

    pub fn mul_int(&self, v: i128) -> Self {
        if v == 0 {
            return Self::zero();
        }
        let mut out = self.clone();
        for x in &mut out.c {
            *x = cmul(*x, v);
        }
        out
    }

    /// Integer content (gcd of coefficients), with the sign of the leading
    /// coefficient. Zero polynomial has content 0.
    pub fn content(&self) -> i128 {
        let mut g: i128 = 0;
        for &v in &self.c {
            g = gcd_i128(g, v);
            if g == 1 {
                break;
            }
        }
        if self.leading_coeff() < 0 {
            -g
        } else {
            g
        }
    }

    pub fn div_int_exact(&self, v: i128) -> Self {
        assert!(v != 0);
        let mut out = self.clone();
        for x in &mut out.c {
            assert!(*x % v == 0, "div_int_exact: not divisible");
            *x /= v;
        }
        out
    }

    /// Exact Laurent division; panics if `div` does not divide `self`.
    pub fn exact_div(&self, div: &Self) -> Self {
        assert!(!div.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Self::zero();
        }
        let dl = div.c.len();
        let nl = self.c.len();
        assert!(nl >= dl, "exact_div: degree too small");
        let mut rem = self.c.clone();
        let mut quot = vec![0i128; nl - dl + 1];
        let dlead = div.c[dl - 1];
        for k in (0..quot.len()).rev() {
            let r = rem[k + dl - 1];
            if r == 0 {
                continue;
            }
            assert!(r % dlead == 0, "exact_div: leading coefficient does not divide");
            let f = r / dlead;
            quot[k] = f;
            for (j, &dv) in div.c.iter().enumerate() {
                rem[k + j] = cadd(rem[k + j], -cmul(f, dv));
            }
        }
        assert!(rem.iter().all(|&v| v == 0), "exact_div: nonzero remainder");
        let mut out = Self {
            lo: self.lo - div.lo,
            c: quot,
        };
        out.trim();
        out
    }

    /// Gcd of the polynomial parts (Laurent shifts discarded), returned as a
    /// primitive integer polynomial with positive leading coefficient and
    /// lowest exponent 0. Computed over Q via the rational Euclid to dodge
    /// pseudo-remainder coefficient growth, then cleared back to Z.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            let mut g = other.clone();
            if g.is_zero() {
                return g;
            }
            g.lo = 0;
            let c = g.content();
            return g.div_int_exact(c);
        }
        if other.is_zero() {
            let mut g = self.clone();
            g.lo = 0;
            let c = g.content();
            return g.div_int_exact(c);
        }
        let a = self.to_laurent();
        let b = other.to_laurent();
        let g = a.gcd(&b);
        Self::from_laurent_clearing(&g).0
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        LaurentPoly::from_terms(self.c.iter().enumerate().filter(|(_, &v)| v != 0).map(
            |(i, &v)| {
                (
                    self.lo + i as i64,
                    BigRational::from_integer(BigInt::from(v)),
                )
            },
        ))
    }

    /// Convert a rational-coefficient polynomial to an integer one by
    /// clearing denominators: returns `(p, d)` with `poly = p / d` and
    /// `p` primitive up to the common factor with `d`.
    pub fn from_laurent_clearing(poly: &LaurentPoly) -> (Self, i128) {
        use num::Integer;
        if poly.is_zero() {
            return (Self::zero(), 1);
        }
        let mut lcm = BigInt::one();
        for (_, c) in poly.iter() {
            lcm = lcm.lcm(c.denom());
        }
        let mut out = Self::zero();
        for (e, c) in poly.iter() {
            let v = (c * BigRational::from_integer(lcm.clone()))
                .to_integer();
            let v: i128 = i128::try_from(&v).expect("coefficient exceeds i128 in conversion");
            out.add_term(*e, v);
        }
        let d = i128::try_from(&lcm).expect("denominator exceeds i128 in conversion");
        (out, d)
    }

    pub fn eval_complex(&self, q: num::complex::Complex64) -> num::complex::Complex64 {
        let mut acc = num::complex::Complex64::new(0.0, 0.0);
        for (i, &v) in self.c.iter().enumerate() {
            if v != 0 {
                acc += q.powi((self.lo + i as i64) as i32) * (v as f64);
            }
        }
        acc
    }

}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl From<&LaurentPoly> for ZPoly {
    /// Clears denominators and drops the scale; only valid for
    /// integer-coefficient inputs (asserted).
    fn from(p: &LaurentPoly) -> Self {
        let (z, d) = Self::from_laurent_clearing(p);
        assert!(d == 1, "LaurentPoly has non-integer coefficients");
        z
    }
}
