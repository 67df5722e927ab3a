use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::complex::Complex64;
use num::One;

use super::diagram::{TlDiagram, TlTables};
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::qarith::zpoly::ZPoly;
use crate::qarith::{qint, rho, RatFunc};

/// An element of the Temperley-Lieb algebra TL_n(Q) in the planar-diagram
/// basis, with loop parameter Q = \[2\]. Stored like `HeckeElement`: a common
/// integer-polynomial denominator and one dense numerator per diagram index.
#[derive(Clone)]
pub struct TlElement {
    tables: Arc<TlTables>,
    den: ZPoly,
    terms: Vec<ZPoly>,
}

impl TlElement {
    pub fn zero(n: usize) -> Result<Self> {
        let tables = TlTables::get(n)?;
        let size = tables.size();
        Ok(Self {
            tables,
            den: ZPoly::one(),
            terms: vec![ZPoly::zero(); size],
        })
    }

    pub fn one(n: usize) -> Result<Self> {
        let mut el = Self::zero(n)?;
        let id = el.tables.identity_idx();
        el.terms[id] = ZPoly::one();
        Ok(el)
    }

    /// The cup-cap generator E_k as an element.
    pub fn generator(n: usize, k: usize) -> Result<Self> {
        let d = TlDiagram::generator(n, k)?;
        let mut el = Self::zero(n)?;
        let idx = el.tables.index_of(&d);
        el.terms[idx] = ZPoly::one();
        Ok(el)
    }

    pub fn from_diagram(n: usize, d: &TlDiagram) -> Result<Self> {
        if d.n() != n {
            return Err(Error::RankMismatch {
                left: n,
                right: d.n(),
            });
        }
        let mut el = Self::zero(n)?;
        let idx = el.tables.index_of(d);
        el.terms[idx] = ZPoly::one();
        Ok(el)
    }

    pub fn rank(&self) -> usize {
        self.tables.n()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.iter().filter(|t| !t.is_zero()).count()
    }

    pub fn coeff(&self, d: &TlDiagram) -> Result<RatFunc> {
        if d.n() != self.rank() {
            return Err(Error::RankMismatch {
                left: self.rank(),
                right: d.n(),
            });
        }
        let idx = self.tables.index_of(d);
        RatFunc::new(self.terms[idx].to_laurent(), self.den.to_laurent())
    }

    pub fn coeffs(&self) -> Vec<(TlDiagram, RatFunc)> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_zero())
            .map(|(i, t)| {
                (
                    self.tables.diagram(i).clone(),
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
        Ok(self.combine(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        Ok(self.combine(other, true))
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
        let mut out = Self {
            tables: self.tables.clone(),
            den,
            terms,
        };
        out.reduce();
        out
    }

    pub fn scale(&self, s: &RatFunc) -> Self {
        if s.is_zero() {
            return Self::zero(self.rank()).expect("rank already validated");
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

    /// Diagram-by-diagram product; closed loops formed in the middle become
    /// factors of Q = \[2\].
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_rank(other)?;
        let n = self.rank();
        let size = self.tables.size();
        // Q^0 .. Q^n: at most n loops can close in one composition.
        let q2: ZPoly = (&qint(2)).into();
        let mut qpow = Vec::with_capacity(n + 1);
        qpow.push(ZPoly::one());
        for i in 1..=n {
            let prev: &ZPoly = &qpow[i - 1];
            qpow.push(prev.mul(&q2));
        }
        let mut acc = vec![ZPoly::zero(); size];
        for (i, ci) in self.terms.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, cj) in other.terms.iter().enumerate() {
                if cj.is_zero() {
                    continue;
                }
                let (loops, k) = self.tables.compose_idx(i, j);
                let prod = ci.mul(cj);
                acc[k].add_scaled(&prod, &qpow[loops]);
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

    /// Strand shift by `shift` inside TL_target.
    pub fn shift_embed(&self, target: usize, shift: usize) -> Result<Self> {
        let tt = TlTables::get(target)?;
        let mut terms = vec![ZPoly::zero(); tt.size()];
        for (i, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let d = self.tables.diagram(i).shift_embed(target, shift)?;
            terms[tt.index_of(&d)] = t.clone();
        }
        let mut out = Self {
            tables: tt,
            den: self.den.clone(),
            terms,
        };
        out.reduce();
        Ok(out)
    }

    /// Numeric coefficient vector at a concrete q (diagram-indexed).
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

impl PartialEq for TlElement {
    fn eq(&self, other: &Self) -> bool {
        self.rank() == other.rank() && self.den == other.den && self.terms == other.terms
    }
}

impl Eq for TlElement {}

impl fmt::Debug for TlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TlElement(rank {}, {})", self.rank(), self)
    }
}

impl fmt::Display for TlElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, t) in self.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let c = RatFunc::new(t.to_laurent(), self.den.to_laurent())
                .expect("denominator nonzero");
            write!(f, "({c}) * {}", self.tables.diagram(i))?;
        }
        Ok(())
    }
}

/// The Jones-Wenzl tower in TL_host: JW_1 = 1 and
/// JW_{N+1} = JW_N - rho_N JW_N E_N JW_N, the same recursion as the
/// antisymmetrizer with E in place of T.
#[derive(Debug, Clone)]
pub struct JonesWenzlTower {
    host: usize,
    levels: Vec<TlElement>,
}

impl JonesWenzlTower {
    pub fn host_rank(&self) -> usize {
        self.host
    }

    pub fn max_n(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, n: usize) -> &TlElement {
        &self.levels[n - 1]
    }

    pub fn primed(&self, n: usize) -> Result<TlElement> {
        if self.host < n + 1 {
            return Err(Error::RankOverflow {
                needed: n + 1,
                available: self.host,
            });
        }
        // Restrict to the minimal rank, then shift by one strand.
        let small = self.level(n);
        let mut terms = vec![ZPoly::zero(); TlTables::get(self.host)?.size()];
        let tt = TlTables::get(self.host)?;
        for (i, t) in small.terms.iter().enumerate() {
            if t.is_zero() {
                continue;
            }
            let d = small.tables.diagram(i);
            let d = restrict_diagram(d, n).expect("tower level supported on first n strands");
            let shifted = d.shift_embed(self.host, 1)?;
            terms[tt.index_of(&shifted)] = t.clone();
        }
        let mut out = TlElement {
            tables: tt,
            den: small.den.clone(),
            terms,
        };
        out.reduce();
        Ok(out)
    }
}

/// Undo a trailing-identity embedding: restrict a diagram of rank m that
/// acts as the identity on strands n+1..m to rank n. Returns None if any
/// arc touches the trailing strands non-trivially.
fn restrict_diagram(d: &TlDiagram, n: usize) -> Option<TlDiagram> {
    let m = d.n();
    if m == n {
        return Some(d.clone());
    }
    // Trailing strands must be through-strands t_j - b_j.
    for j in n + 1..=m {
        let top = j - 1;
        let bottom = 2 * m - j;
        if d.pairing()[top] as usize != bottom {
            return None;
        }
    }
    // Leading positions keep their index on top; bottom re-indexes from
    // rank m to rank n (b_i sits at 2m - i resp. 2n - i).
    let back = |x: usize| -> usize {
        if x < n {
            x
        } else {
            debug_assert!(x >= 2 * m - n);
            x - 2 * (m - n)
        }
    };
    let mut pairing = vec![0u8; 2 * n];
    for v in 0..2 * m {
        let w = d.pairing()[v] as usize;
        if v >= w {
            continue;
        }
        let keeps = |x: usize| x < n || x >= 2 * m - n;
        if keeps(v) && keeps(w) {
            let (a, b) = (back(v), back(w));
            pairing[a] = b as u8;
            pairing[b] = a as u8;
        }
    }
    Some(TlDiagram::from_pairing_unchecked(n, pairing))
}

pub fn jones_wenzl(host: usize, max_n: usize) -> Result<JonesWenzlTower> {
    if max_n == 0 || max_n > host {
        return Err(Error::RankOverflow {
            needed: max_n,
            available: host,
        });
    }
    let mut levels = vec![TlElement::one(host)?];
    for n in 1..max_n {
        let p = &levels[n - 1];
        let e_n = TlElement::generator(host, n)?;
        let pep = p.mul(&e_n)?.mul(p)?;
        levels.push(p.sub(&pep.scale(&rho(n as i64)))?);
    }
    Ok(JonesWenzlTower { host, levels })
}

/// Jones-Wenzl towers are memoized per host rank, like the Hecke towers.
pub fn cached_jw_tower(host: usize) -> Result<Arc<JonesWenzlTower>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<JonesWenzlTower>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().expect("jw cache poisoned");
        if let Some(t) = guard.get(&host) {
            return Ok(t.clone());
        }
    }
    let tower = Arc::new(jones_wenzl(host, host)?);
    let mut guard = cache.lock().expect("jw cache poisoned");
    Ok(guard.entry(host).or_insert(tower).clone())
}

/// The quotient map H_n(q) -> TL_n(\[2\]) sending T_k to E_k (equivalently
/// R_k to E_k - q^-1). Each basis element T_w maps to the product of
/// (E_k - q^-1) along its reduced word.
pub fn quotient_from_hecke(a: &HeckeElement) -> Result<TlElement> {
    let n = a.rank();
    let mut acc = TlElement::zero(n)?;
    let qinv = RatFunc::from_poly(crate::qarith::LaurentPoly::monomial(
        -1,
        num::BigRational::one(),
    ));
    for (w, c) in a.coeffs() {
        let mut prod = TlElement::one(n)?;
        for &k in w.reduced_word().iter() {
            let factor = TlElement::generator(n, k as usize)?
                .sub(&TlElement::one(n)?.scale(&qinv))?;
            prod = prod.mul(&factor)?;
        }
        acc = acc.add(&prod.scale(&c))?;
    }
    Ok(acc)
}
