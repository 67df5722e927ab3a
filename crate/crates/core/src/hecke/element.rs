use std::fmt;
use std::sync::Arc;

use num::complex::Complex64;

use super::perm::Permutation;
use super::tables::HeckeTables;
use crate::error::{Error, Result};
use crate::qarith::zpoly::ZPoly;
use crate::qarith::RatFunc;

/// An element of the Hecke algebra H_n(q): a finite Q(q)-linear combination
/// of the permutation basis {T_w}.
///
/// Internally the element is stored over a single common denominator, with
/// one dense integer-coefficient Laurent polynomial per basis index. Basis
/// multiplications then never leave Z[q, q^-1], which is what makes exact
/// certification at rank 7 affordable. The `coeff`/`coeffs` accessors present
/// the usual sparse Permutation -> RatFunc view; canonical form (joint gcd 1,
/// denominator with lowest exponent 0 and positive leading coefficient) makes
/// structural equality coincide with algebra equality.
#[derive(Clone)]
pub struct HeckeElement {
    tables: Arc<HeckeTables>,
    den: ZPoly,
    terms: Vec<ZPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Result<Self> {
        let tables = HeckeTables::get(n)?;
        let size = tables.size();
        Ok(Self {
            tables,
            den: ZPoly::one(),
            terms: vec![ZPoly::zero(); size],
        })
    }

    /// The unit element.
    pub fn one(n: usize) -> Result<Self> {
        let mut el = Self::zero(n)?;
        el.terms[0] = ZPoly::one();
        Ok(el)
    }

    /// The basis element T_w.
    pub fn basis(n: usize, w: &Permutation) -> Result<Self> {
        if w.n() != n {
            return Err(Error::RankMismatch {
                left: n,
                right: w.n(),
            });
        }
        let mut el = Self::zero(n)?;
        el.terms[w.index()] = ZPoly::one();
        Ok(el)
    }

    /// The generator R_k = T_{s_k} (the basis element of the simple
    /// transposition), satisfying R_k^2 = 1 + (q - q^-1) R_k.
    pub fn generator_r(n: usize, k: usize) -> Result<Self> {
        let tables = HeckeTables::get(n)?;
        tables.check_generator(k)?;
        let sk = Permutation::simple(n, k)?;
        Self::basis(n, &sk)
    }

    /// The generator T_k = q^-1 * 1 + R_k, satisfying T_k^2 = (q + q^-1) T_k.
    pub fn generator_t(n: usize, k: usize) -> Result<Self> {
        let tables = HeckeTables::get(n)?;
        tables.check_generator(k)?;
        let sk = Permutation::simple(n, k)?;
        let mut el = Self::zero(n)?;
        el.terms[0] = ZPoly::monomial(-1, 1);
        el.terms[sk.index()] = ZPoly::one();
        Ok(el)
    }

    pub fn rank(&self) -> usize {
        self.tables.n()
    }

    pub(crate) fn tables(&self) -> &Arc<HeckeTables> {
        &self.tables
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// Number of basis elements with nonzero coefficient.
    pub fn num_terms(&self) -> usize {
        self.terms.iter().filter(|t| !t.is_zero()).count()
    }

    /// Coefficient of T_w, as a canonical rational function.
    pub fn coeff(&self, w: &Permutation) -> Result<RatFunc> {
        if w.n() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: w.n(),
            });
        }
        let t = &self.terms[w.index()];
        RatFunc::new(t.to_laurent(), self.den.to_laurent())
    }

    /// Sparse view: all `(permutation, coefficient)` pairs, by basis index.
    pub fn coeffs(&self) -> Vec<(Permutation, RatFunc)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| {
                (
                    self.tables.perm(i).clone(),
                    RatFunc::new(t.to_laurent(), self.den.to_laurent())
                        .expect("denominator nonzero"),
                )
            })
            .collect()
    }

    fn check_same_rank(&self, other: &Self) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let mut out = self.combine(other, false);
        out.reduce();
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let mut out = self.combine(other, true);
        out.reduce();
        Ok(out)
    }

    fn combine(&self, other: &Self, negate: bool) -> Self {
        let (den, ca, cb) = if self.den == other.den {
            (self.den.clone(), ZPoly::one(), ZPoly::one())
        } else {
            let g = self.den.gcd(&other.den);
            let ca = other.den.exact_div(&g);
            let cb = self.den.exact_div(&g);
            (self.den.mul(&ca), ca, cb)
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let mut t = if ca.is_one() { a.clone() } else { a.mul(&ca) };
            let mut sb = if cb.is_one() { b.clone() } else { b.mul(&cb) };
            if negate {
                sb.negate();
            }
            t.add_assign_ref(&sb);
            terms.push(t);
        }
        Self {
            tables: self.tables.clone(),
            den,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for t in &mut out.terms {
            t.negate();
        }
        out
    }

    /// Multiply by a scalar from Q(q).
    pub fn scale(&self, s: &RatFunc) -> Self {
        if s.is_zero() {
            let mut out = self.clone();
            for t in &mut out.terms {
                *t = ZPoly::zero();
            }
            out.den = ZPoly::one();
            return out;
        }
        let (znum, e_num) = ZPoly::from_laurent_clearing(s.num());
        let (zden, e_den) = ZPoly::from_laurent_clearing(s.den());
        let mut out = self.clone();
        for t in &mut out.terms {
            if !t.is_zero() {
                *t = t.mul(&znum).mul_int(e_den);
            }
        }
        out.den = out.den.mul(&zden).mul_int(e_num);
        out.reduce();
        out
    }

    /// Multiply by the monomial `c * q^e`.
    pub fn scale_monomial(&self, c: i128, e: i64) -> Self {
        let m = ZPoly::monomial(e, c);
        let mut out = self.clone();
        for t in &mut out.terms {
            if !t.is_zero() {
                *t = t.mul(&m);
            }
        }
        out.reduce();
        out
    }

    /// Exact product. For each basis term of `other`, the canonical reduced
    /// word is applied letter by letter to `self` through the quadratic
    /// relation, and the results are accumulated under the product
    /// denominator.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let size = self.tables.size();
        let mut acc = vec![ZPoly::zero(); size];
        let mut scratch: Vec<ZPoly> = Vec::new();
        for idx in 0..size {
            let cw = &other.terms[idx];
            if cw.is_zero() {
                continue;
            }
            let word = self.tables.reduced_word(idx);
            if word.is_empty() {
                for (a, t) in acc.iter_mut().zip(&self.terms) {
                    a.add_scaled(t, cw);
                }
                continue;
            }
            scratch.clone_from(&self.terms);
            for &k in word {
                apply_generator_right(&self.tables, &mut scratch, k as usize);
            }
            for (a, t) in acc.iter_mut().zip(&scratch) {
                if !t.is_zero() {
                    a.add_scaled(t, cw);
                }
            }
        }
        let mut out = Self {
            tables: self.tables.clone(),
            den: self.den.mul(&other.den),
            terms: acc,
        };
        out.reduce();
        Ok(out)
    }

    /// The smallest m such that the element lies in the parabolic subalgebra
    /// generated by R_1, ..., R_{m-1}. The unit (and zero) have support
    /// rank 1.
    pub fn support_rank(&self) -> usize {
        let mut max_letter = 0u8;
        for (idx, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for &k in self.tables.reduced_word(idx) {
                max_letter = max_letter.max(k);
            }
        }
        max_letter as usize + 1
    }

    /// The image under the generator shift R_k -> R_{k + shift} inside
    /// H_target(q); shift 0 is the standard embedding X -> X (x) id.
    ///
    /// The target only needs room for the shifted support of the element,
    /// so embedded elements can be re-shifted inside a fixed host.
    pub fn shift_embed(&self, target_rank: usize, shift: usize) -> Result<Self> {
        let needed = self.support_rank() + shift;
        if target_rank < needed {
            return Err(Error::RankOverflow {
                needed,
                available: target_rank,
            });
        }
        let tt = HeckeTables::get(target_rank)?;
        let mut terms = vec![ZPoly::zero(); tt.size()];
        for (idx, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let mut cur = 0usize;
            for &k in self.tables.reduced_word(idx) {
                let next = tt.right_mul(k as usize + shift, cur);
                // A shifted reduced word is still reduced, so every letter
                // extends the length.
                debug_assert!(tt.length(next) == tt.length(cur) + 1);
                cur = next;
            }
            terms[cur] = t.clone();
        }
        let mut out = Self {
            tables: tt,
            den: self.den.clone(),
            terms,
        };
        out.reduce();
        Ok(out)
    }

    /// The reversal automorphism: on generators, T_k -> T_{n-k}
    /// (equivalently R_k -> R_{n-k}). Computed by rewriting each basis
    /// element's reduced word through the multiplication engine, so no
    /// closed-form conjugation is assumed.
    pub fn phi(&self) -> Self {
        let n = self.rank();
        let size = self.tables.size();
        let mut acc = vec![ZPoly::zero(); size];
        let mut scratch = vec![ZPoly::zero(); size];
        for (idx, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            for s in scratch.iter_mut() {
                if !s.is_zero() {
                    *s = ZPoly::zero();
                }
            }
            scratch[0] = t.clone();
            for &k in self.tables.reduced_word(idx) {
                apply_generator_right(&self.tables, &mut scratch, n - k as usize);
            }
            for (a, s) in acc.iter_mut().zip(&scratch) {
                if !s.is_zero() {
                    a.add_assign_ref(s);
                }
            }
        }
        let mut out = Self {
            tables: self.tables.clone(),
            den: self.den.clone(),
            terms: acc,
        };
        out.reduce();
        out
    }

    /// Numeric coefficient vector at a concrete q, indexed like the basis.
    pub fn eval_vector(&self, q: Complex64) -> Result<Vec<Complex64>> {
        let d = self.den.eval_complex(q);
        if d.norm() < crate::qarith::POLE_TOL {
            return Err(Error::PoleAtQ {
                q_re: q.re,
                q_im: q.im,
            });
        }
        Ok(self.terms.iter().map(|t| t.eval_complex(q) / d).collect())
    }

    /// Restore canonical form: divide out the joint polynomial gcd and
    /// integer content of denominator and coefficients, normalize the
    /// denominator to lowest exponent 0 and positive leading coefficient.
    fn reduce(&mut self) {
        if self.is_zero() {
            self.den = ZPoly::one();
            return;
        }
        let mut g = self.den.clone();
        for t in self.terms.iter().filter(|t| !t.is_zero()) {
            if g.is_one() {
                break;
            }
            g = g.gcd(t);
        }
        if !g.is_one() && !g.is_zero() {
            self.den = self.den.exact_div(&g);
            for t in &mut self.terms {
                if !t.is_zero() {
                    *t = t.exact_div(&g);
                }
            }
        }
        // Joint integer content, signed so the denominator's leading
        // coefficient ends up positive.
        let mut ic: i128 = self.den.content().abs();
        for t in self.terms.iter().filter(|t| !t.is_zero()) {
            if ic == 1 {
                break;
            }
            ic = gcd_abs(ic, t.content());
        }
        if self.den.leading_coeff() < 0 {
            ic = -ic;
        }
        if ic != 1 {
            self.den = self.den.div_int_exact(ic);
            for t in &mut self.terms {
                if !t.is_zero() {
                    *t = t.div_int_exact(ic);
                }
            }
        }
        // Normalize the denominator's Laurent shift to zero.
        let s = self.den.low();
        if s != 0 {
            self.den.shift(-s);
            for t in &mut self.terms {
                t.shift(-s);
            }
        }
    }

}

fn gcd_abs(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// In-place right multiplication of a coefficient vector by the basis
/// generator R_k. Basis indices pair up under w <-> w s_k; writing u for the
/// shorter and v for the longer member of a pair,
///
///   T_u R_k = T_v,    T_v R_k = T_u + (q - q^-1) T_v,
///
/// so the pair transforms as (c_u, c_v) -> (c_v, c_u + (q - q^-1) c_v).
pub(crate) fn apply_generator_right(tables: &HeckeTables, buf: &mut [ZPoly], k: usize) {
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
        if buf[short].is_zero() && buf[long].is_zero() {
            continue;
        }
        let old_long = std::mem::take(&mut buf[long]);
        let mut new_long = std::mem::take(&mut buf[short]);
        new_long.add_mul_q_minus_qinv(&old_long);
        buf[long] = new_long;
        buf[short] = old_long;
    }
}

/// Expansion of the product T_w * T_{s_k}: the basis element of `w s_k` when
/// the length goes up, and `T_{w s_k} + (q - q^-1) T_w` otherwise.
pub fn mul_basis_by_generator(w: &Permutation, k: usize) -> Result<HeckeElement> {
    let n = w.n();
    let tables = HeckeTables::get(n)?;
    tables.check_generator(k)?;
    let el = HeckeElement::basis(n, w)?;
    let mut terms = el.terms;
    apply_generator_right(&tables, &mut terms, k);
    let mut out = HeckeElement {
        tables,
        den: ZPoly::one(),
        terms,
    };
    out.reduce();
    Ok(out)
}

impl PartialEq for HeckeElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.den == other.den && self.terms == other.terms
    }
}

impl Eq for HeckeElement {}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HeckeElement(rank {}, {})", self.rank(), self)
    }
}

impl fmt::Display for HeckeElement {
    /// Deterministic rendering: `coeff * T[word]` terms with words in
    /// lexicographic order (the unit renders as `T[]`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut idxs: Vec<usize> = (0..self.terms.len())
            .filter(|&i| !self.terms[i].is_zero())
            .collect();
        idxs.sort_by(|&a, &b| self.tables.reduced_word(a).cmp(self.tables.reduced_word(b)));
        for (pos, &i) in idxs.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            let c = RatFunc::new(self.terms[i].to_laurent(), self.den.to_laurent())
                .expect("denominator nonzero");
            write!(f, "({c}) * T[")?;
            for (j, k) in self.tables.reduced_word(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{k}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
