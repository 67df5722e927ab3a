//! Exact certification of the relation catalogue.
//!
//! Each relation is certified by computing LHS - RHS in the exact algebra
//! and canonicalizing; `proved` means the difference has zero terms, with no
//! numeric tolerance anywhere. A certificate records the host algebra, the
//! residual term count, wall time, and (when requested) the seeded numeric
//! oracle samples gathered before the exact run.

mod oracle;

pub use oracle::{oracle_check, oracle_check_corrupted, OracleSample, ORACLE_REL_TOL};

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::projector::cached_tower;
use crate::qarith::{qint, qint_rf, rho, LaurentPoly, RatFunc};
use crate::tl::{cached_jw_tower, TlElement};

/// Hosts above rank 7 (5040 basis elements) take real memory and minutes of
/// bookkeeping; they are opt-in through `deep`.
pub const DEFAULT_HOST_CAP: usize = 7;
pub const DEEP_HOST_CAP: usize = 8;

/// The certified relation catalogue. The first eight live in the Hecke
/// algebra; the `Tl*` entries are the diagram-basis analogues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    DelPp,
    Pttp1,
    Pttp2,
    Pttp3,
    Ppp1,
    Tpt1,
    Tpthe,
    Tpt2,
    TlTpt,
    TlDelPp,
    TlPttp1,
    TlPttp2,
    TlPttp3,
    TlPpp1,
}

impl Relation {
    pub const ALL: [Relation; 14] = [
        Relation::DelPp,
        Relation::Pttp1,
        Relation::Pttp2,
        Relation::Pttp3,
        Relation::Ppp1,
        Relation::Tpt1,
        Relation::Tpthe,
        Relation::Tpt2,
        Relation::TlTpt,
        Relation::TlDelPp,
        Relation::TlPttp1,
        Relation::TlPttp2,
        Relation::TlPttp3,
        Relation::TlPpp1,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            Relation::DelPp => "delPP",
            Relation::Pttp1 => "pttp1",
            Relation::Pttp2 => "pttp2",
            Relation::Pttp3 => "pttp3",
            Relation::Ppp1 => "ppp1",
            Relation::Tpt1 => "tpt1",
            Relation::Tpthe => "tpthe",
            Relation::Tpt2 => "tpt2",
            Relation::TlTpt => "tl-tpt",
            Relation::TlDelPp => "tl-delPP",
            Relation::TlPttp1 => "tl-pttp1",
            Relation::TlPttp2 => "tl-pttp2",
            Relation::TlPttp3 => "tl-pttp3",
            Relation::TlPpp1 => "tl-ppp1",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Relation::ALL
            .iter()
            .copied()
            .find(|r| r.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownRelation(s.to_string()))
    }

    pub fn is_tl(&self) -> bool {
        matches!(
            self,
            Relation::TlTpt
                | Relation::TlDelPp
                | Relation::TlPttp1
                | Relation::TlPttp2
                | Relation::TlPttp3
                | Relation::TlPpp1
        )
    }

    /// Smallest n for which the relation is stated.
    pub fn min_n(&self) -> usize {
        match self {
            Relation::Tpt1 | Relation::Tpthe | Relation::Tpt2 | Relation::TlTpt => 2,
            _ => 1,
        }
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        if n < self.min_n() {
            return Err(Error::RelationOutOfRange {
                relation: self.id().to_string(),
                min_n: self.min_n(),
                n,
            });
        }
        Ok(())
    }

    /// Rank of the algebra the check lives in.
    pub fn host_rank(&self, n: usize) -> usize {
        match self {
            Relation::Tpt1 | Relation::Tpthe | Relation::Tpt2 | Relation::TlTpt => n + 1,
            _ => n + 2,
        }
    }

    /// The identity being certified, written out (P' denotes the shift of P
    /// by one strand, rho_k = \[k\]/\[k+1\]).
    pub fn statement(&self, n: usize) -> String {
        let m = n + 1;
        match self {
            Relation::DelPp => format!(
                "P{m} - P'{m} = rho_{n} P'{n} (T{m} - T1) P'{n}   in rank {}",
                self.host_rank(n)
            ),
            Relation::Pttp1 => format!(
                "rho_{n} P'{n} T1 P'{n} T1 P'{n} = P'{n} T1 P'{n}   in rank {}",
                self.host_rank(n)
            ),
            Relation::Pttp2 => format!(
                "rho_{n} P'{n} T{m} P'{n} T{m} P'{n} = P'{n} T{m} P'{n}   in rank {}",
                self.host_rank(n)
            ),
            Relation::Pttp3 => format!(
                "P'{n}(T1 P'{n} T{m} P'{n} T1 - T{m} P'{n} T1 P'{n} T{m})P'{n} = -([{m}]/[{n}]^3)(P{m} - P'{m})   in rank {}",
                self.host_rank(n)
            ),
            Relation::Ppp1 => format!(
                "(P{n} - P'{n})^3 = ([{}][{}]/[{n}]^2)(P{n} - P'{n})   in rank {} (and the index-{m} form)",
                n - 1,
                n + 1,
                self.host_rank(n)
            ),
            Relation::Tpt1 => format!(
                "([2]^2+1) T{n} P{n} T{n} = ([2]([{}]+2[{n}])/[{n}]) T{n} P{} - ([{}]/[{n}]) P{} T{n} T{} T{n} T{} T{n} P{}   in rank {}",
                n + 2,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                self.host_rank(n)
            ),
            Relation::Tpthe => format!(
                "T{n} P{n} T{n} + P{n} = ([2]-rho_{}) T{n} P{} + P{} - rho_{} P{} T{} T{n} T{} P{}   in rank {}",
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                self.host_rank(n)
            ),
            Relation::Tpt2 => format!(
                "([2]^2+1) T{n} P{n} T{n} = ([2]^2([2]-rho_{})+[2]) T{n} P{} - rho_{} P{} T{n} T{} T{n} T{} T{n} P{}; scalar gap [2]([2]-rho_{})+1 = ([{}]+2[{n}])/[{n}]   in rank {}",
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n - 1,
                n + 2,
                self.host_rank(n)
            ),
            Relation::TlTpt => format!(
                "E{n} JW{n} E{n} = ([{}]/[{n}]) E{n} JW{}   in TL rank {}",
                n + 1,
                n - 1,
                self.host_rank(n)
            ),
            Relation::TlDelPp => format!(
                "JW{m} - JW'{m} = rho_{n} JW'{n} (E{m} - E1) JW'{n}   in TL rank {}",
                self.host_rank(n)
            ),
            Relation::TlPttp1 => format!(
                "rho_{n} JW'{n} E1 JW'{n} E1 JW'{n} = JW'{n} E1 JW'{n}   in TL rank {}",
                self.host_rank(n)
            ),
            Relation::TlPttp2 => format!(
                "rho_{n} JW'{n} E{m} JW'{n} E{m} JW'{n} = JW'{n} E{m} JW'{n}   in TL rank {}",
                self.host_rank(n)
            ),
            Relation::TlPttp3 => format!(
                "JW'{n}(E1 JW'{n} E{m} JW'{n} E1 - E{m} JW'{n} E1 JW'{n} E{m})JW'{n} = -([{m}]/[{n}]^3)(JW{m} - JW'{m})   in TL rank {}",
                self.host_rank(n)
            ),
            Relation::TlPpp1 => format!(
                "(JW{n} - JW'{n})^3 = ([{}][{}]/[{n}]^2)(JW{n} - JW'{n})   in TL rank {} (and the index-{m} form)",
                n - 1,
                n + 1,
                self.host_rank(n)
            ),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertStatus {
    Proved,
    Failed,
}

/// Machine-readable outcome of one exact certification.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RelationCertificate {
    pub relation_id: String,
    pub n: usize,
    pub host_rank: usize,
    pub statement: String,
    pub status: CertStatus,
    pub residual_terms: usize,
    pub wall_time_s: f64,
    pub q_oracle_samples: Vec<OracleSample>,
    /// Full rendering of the canonicalized nonzero difference; a nonzero
    /// residual is either a discovery or a bug, and must be inspectable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl RelationCertificate {
    pub fn proved(&self) -> bool {
        self.status == CertStatus::Proved
    }

    pub fn ensure_proved(&self) -> Result<()> {
        if self.proved() {
            return Ok(());
        }
        Err(Error::CertificationFailed {
            relation: self.relation_id.clone(),
            n: self.n,
            residual_terms: self.residual_terms,
            residual: self.residual.clone().unwrap_or_default(),
        })
    }
}

/// One named sub-identity inside a certificate.
struct SubResidual {
    label: String,
    terms: usize,
    rendered: Option<String>,
}

impl SubResidual {
    fn from_hecke(label: impl Into<String>, el: &HeckeElement) -> Self {
        let terms = el.num_terms();
        Self {
            label: label.into(),
            terms,
            rendered: (terms > 0).then(|| el.to_string()),
        }
    }

    fn from_tl(label: impl Into<String>, el: &TlElement) -> Self {
        let terms = el.num_terms();
        Self {
            label: label.into(),
            terms,
            rendered: (terms > 0).then(|| el.to_string()),
        }
    }

    fn from_scalar(label: impl Into<String>, s: &RatFunc) -> Self {
        let terms = if s.is_zero() { 0 } else { 1 };
        Self {
            label: label.into(),
            terms,
            rendered: (terms > 0).then(|| s.to_string()),
        }
    }
}

/// Certify a catalogue relation at index `n`, exact arithmetic only.
pub fn certify(rel: Relation, n: usize) -> Result<RelationCertificate> {
    certify_with_samples(rel, n, Vec::new())
}

/// Runs the seeded numeric oracle first, then the exact certification, and
/// embeds the oracle samples in the certificate.
pub fn certify_with_oracle(
    rel: Relation,
    n: usize,
    seed: u64,
    n_q: usize,
) -> Result<RelationCertificate> {
    let samples = oracle_check(rel, n, seed, n_q)?;
    certify_with_samples(rel, n, samples)
}

fn certify_with_samples(
    rel: Relation,
    n: usize,
    samples: Vec<OracleSample>,
) -> Result<RelationCertificate> {
    rel.check_range(n)?;
    let start = Instant::now();
    let subs = if rel.is_tl() {
        tl_sub_residuals(rel, n)?
    } else {
        hecke_sub_residuals(rel, n)?
    };
    let wall_time_s = start.elapsed().as_secs_f64();
    let residual_terms: usize = subs.iter().map(|s| s.terms).sum();
    let status = if residual_terms == 0 {
        CertStatus::Proved
    } else {
        CertStatus::Failed
    };
    let residual = if residual_terms == 0 {
        None
    } else {
        Some(
            subs.iter()
                .filter(|s| s.terms > 0)
                .map(|s| format!("[{}] {}", s.label, s.rendered.as_deref().unwrap_or("")))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    };
    Ok(RelationCertificate {
        relation_id: rel.id().to_string(),
        n,
        host_rank: rel.host_rank(n),
        statement: rel.statement(n),
        status,
        residual_terms,
        wall_time_s,
        q_oracle_samples: samples,
        residual,
    })
}

// Named per-relation entry points.
pub fn certify_del_pp(n: usize) -> Result<RelationCertificate> {
    certify(Relation::DelPp, n)
}
pub fn certify_pttp1(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Pttp1, n)
}
pub fn certify_pttp2(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Pttp2, n)
}
pub fn certify_pttp3(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Pttp3, n)
}
pub fn certify_ppp1(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Ppp1, n)
}
pub fn certify_tpt1(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Tpt1, n)
}
pub fn certify_tpthe(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Tpthe, n)
}
pub fn certify_tpt2(n: usize) -> Result<RelationCertificate> {
    certify(Relation::Tpt2, n)
}

/// The diagram-basis certificates: Eq-12 analogue, the bare cubic, and all
/// four shift-difference identities.
pub fn certify_tl_relations(n: usize) -> Result<Vec<RelationCertificate>> {
    let mut out = Vec::new();
    if n >= 2 {
        out.push(certify(Relation::TlTpt, n)?);
    }
    for rel in [
        Relation::TlPpp1,
        Relation::TlDelPp,
        Relation::TlPttp1,
        Relation::TlPttp2,
        Relation::TlPttp3,
    ] {
        out.push(certify(rel, n)?);
    }
    Ok(out)
}

fn hecke_sub_residuals(rel: Relation, n: usize) -> Result<Vec<SubResidual>> {
    let host = rel.host_rank(n);
    let tower = cached_tower(host)?;
    let n_i = n as i64;
    let t = |k: usize| HeckeElement::generator_t(host, k);
    match rel {
        Relation::DelPp => {
            let p1 = tower.level(n + 1);
            let pp1 = tower.primed(n + 1)?;
            let pp = tower.primed(n)?;
            let mid = t(n + 1)?.sub(&t(1)?)?;
            let rhs = pp.mul(&mid)?.mul(&pp)?.scale(&rho(n_i));
            let res = p1.sub(&pp1)?.sub(&rhs)?;
            Ok(vec![SubResidual::from_hecke("delPP", &res)])
        }
        Relation::Pttp1 | Relation::Pttp2 => {
            let k = if rel == Relation::Pttp1 { 1 } else { n + 1 };
            let pp = tower.primed(n)?;
            let ptp = pp.mul(&t(k)?)?.mul(&pp)?;
            let lhs = ptp.mul(&t(k)?)?.mul(&pp)?.scale(&rho(n_i));
            let res = lhs.sub(&ptp)?;
            Ok(vec![SubResidual::from_hecke(rel.id(), &res)])
        }
        Relation::Pttp3 => {
            let pp = tower.primed(n)?;
            let chain = |a: usize, b: usize, c: usize| -> Result<HeckeElement> {
                pp.mul(&t(a)?)?
                    .mul(&pp)?
                    .mul(&t(b)?)?
                    .mul(&pp)?
                    .mul(&t(c)?)?
                    .mul(&pp)
            };
            let lhs = chain(1, n + 1, 1)?.sub(&chain(n + 1, 1, n + 1)?)?;
            let scalar = RatFunc::new(qint(n_i + 1), qint(n_i).pow(3))?;
            let rhs = tower
                .level(n + 1)
                .sub(&tower.primed(n + 1)?)?
                .scale(&scalar);
            // LHS = -scalar * (P_{N+1} - P'_{N+1})
            let res = lhs.add(&rhs)?;
            Ok(vec![SubResidual::from_hecke("pttp3", &res)])
        }
        Relation::Ppp1 => {
            let cubic = |m: usize, tower: &crate::projector::AntisymmetrizerTower| -> Result<HeckeElement> {
                let d = tower.level(m).sub(&tower.primed(m)?)?;
                let c = RatFunc::new(
                    &qint(m as i64 - 1) * &qint(m as i64 + 1),
                    &qint(m as i64) * &qint(m as i64),
                )?;
                d.mul(&d)?.mul(&d)?.sub(&d.scale(&c))
            };
            let mut subs = vec![
                SubResidual::from_hecke(format!("index {n} in rank {host}"), &cubic(n, &tower)?),
                SubResidual::from_hecke(
                    format!("index {} in rank {host}", n + 1),
                    &cubic(n + 1, &tower)?,
                ),
            ];
            if n <= 3 {
                // Embedding-stability bonus: the same identity one host up.
                let big = cached_tower(host + 1)?;
                subs.push(SubResidual::from_hecke(
                    format!("index {n} in rank {}", host + 1),
                    &cubic(n, &big)?,
                ));
            }
            Ok(subs)
        }
        Relation::Tpt1 => {
            let p_n = tower.level(n);
            let p_m = tower.level(n - 1);
            let lhs = t(n)?
                .mul(p_n)?
                .mul(&t(n)?)?
                .scale(&(&(&qint_rf(2) * &qint_rf(2)) + &RatFunc::one()));
            let c1 = RatFunc::new(
                &qint(2) * &(qint(n_i + 2) + &LaurentPoly::from_int(2) * &qint(n_i)),
                qint(n_i),
            )?;
            let c2 = RatFunc::new(qint(n_i - 1), qint(n_i))?;
            let five = p_m
                .mul(&t(n)?)?
                .mul(&t(n - 1)?)?
                .mul(&t(n)?)?
                .mul(&t(n - 1)?)?
                .mul(&t(n)?)?
                .mul(p_m)?;
            let rhs = t(n)?.mul(p_m)?.scale(&c1).sub(&five.scale(&c2))?;
            let res = lhs.sub(&rhs)?;
            Ok(vec![SubResidual::from_hecke("tpt1", &res)])
        }
        Relation::Tpthe => {
            let p_n = tower.level(n);
            let p_m = tower.level(n - 1);
            let lhs = t(n)?.mul(p_n)?.mul(&t(n)?)?.add(p_n)?;
            let c1 = &qint_rf(2) - &rho(n_i - 1);
            let three = p_m
                .mul(&t(n - 1)?)?
                .mul(&t(n)?)?
                .mul(&t(n - 1)?)?
                .mul(p_m)?;
            let rhs = t(n)?
                .mul(p_m)?
                .scale(&c1)
                .add(p_m)?
                .sub(&three.scale(&rho(n_i - 1)))?;
            let res = lhs.sub(&rhs)?;
            Ok(vec![SubResidual::from_hecke("tpthe", &res)])
        }
        Relation::Tpt2 => {
            let p_n = tower.level(n);
            let p_m = tower.level(n - 1);
            let two = qint_rf(2);
            let lhs = t(n)?
                .mul(p_n)?
                .mul(&t(n)?)?
                .scale(&(&(&two * &two) + &RatFunc::one()));
            let c1 = &(&(&two * &two) * &(&two - &rho(n_i - 1))) + &two;
            let five = p_m
                .mul(&t(n)?)?
                .mul(&t(n - 1)?)?
                .mul(&t(n)?)?
                .mul(&t(n - 1)?)?
                .mul(&t(n)?)?
                .mul(p_m)?;
            let rhs = t(n)?
                .mul(p_m)?
                .scale(&c1)
                .sub(&five.scale(&rho(n_i - 1)))?;
            let res = lhs.sub(&rhs)?;
            // Scalar identity closing the gap to the single-fraction form:
            // [2]([2] - rho_{N-1}) + 1 = ([N+2] + 2[N]) / [N].
            let scalar_lhs = &(&two * &(&two - &rho(n_i - 1))) + &RatFunc::one();
            let scalar_rhs = RatFunc::new(
                qint(n_i + 2) + &LaurentPoly::from_int(2) * &qint(n_i),
                qint(n_i),
            )?;
            let gap = &scalar_lhs - &scalar_rhs;
            Ok(vec![
                SubResidual::from_hecke("tpt2", &res),
                SubResidual::from_scalar("scalar gap", &gap),
            ])
        }
        _ => unreachable!("TL relation routed to the Hecke certifier"),
    }
}

fn tl_sub_residuals(rel: Relation, n: usize) -> Result<Vec<SubResidual>> {
    let host = rel.host_rank(n);
    let tower = cached_jw_tower(host)?;
    let n_i = n as i64;
    let e = |k: usize| TlElement::generator(host, k);
    match rel {
        Relation::TlTpt => {
            let jw_n = tower.level(n);
            let jw_m = tower.level(n - 1);
            let lhs = e(n)?.mul(jw_n)?.mul(&e(n)?)?;
            let c = RatFunc::new(qint(n_i + 1), qint(n_i))?;
            let rhs = e(n)?.mul(jw_m)?.scale(&c);
            let res = lhs.sub(&rhs)?;
            Ok(vec![SubResidual::from_tl("tl-tpt", &res)])
        }
        Relation::TlDelPp => {
            let p1 = tower.level(n + 1);
            let pp1 = tower.primed(n + 1)?;
            let pp = tower.primed(n)?;
            let mid = e(n + 1)?.sub(&e(1)?)?;
            let rhs = pp.mul(&mid)?.mul(&pp)?.scale(&rho(n_i));
            let res = p1.sub(&pp1)?.sub(&rhs)?;
            Ok(vec![SubResidual::from_tl("tl-delPP", &res)])
        }
        Relation::TlPttp1 | Relation::TlPttp2 => {
            let k = if rel == Relation::TlPttp1 { 1 } else { n + 1 };
            let pp = tower.primed(n)?;
            let pep = pp.mul(&e(k)?)?.mul(&pp)?;
            let lhs = pep.mul(&e(k)?)?.mul(&pp)?.scale(&rho(n_i));
            let res = lhs.sub(&pep)?;
            Ok(vec![SubResidual::from_tl(rel.id(), &res)])
        }
        Relation::TlPttp3 => {
            let pp = tower.primed(n)?;
            let chain = |a: usize, b: usize, c: usize| -> Result<TlElement> {
                pp.mul(&e(a)?)?
                    .mul(&pp)?
                    .mul(&e(b)?)?
                    .mul(&pp)?
                    .mul(&e(c)?)?
                    .mul(&pp)
            };
            let lhs = chain(1, n + 1, 1)?.sub(&chain(n + 1, 1, n + 1)?)?;
            let scalar = RatFunc::new(qint(n_i + 1), qint(n_i).pow(3))?;
            let rhs = tower
                .level(n + 1)
                .sub(&tower.primed(n + 1)?)?
                .scale(&scalar);
            let res = lhs.add(&rhs)?;
            Ok(vec![SubResidual::from_tl("tl-pttp3", &res)])
        }
        Relation::TlPpp1 => {
            let cubic = |m: usize| -> Result<TlElement> {
                let d = tower.level(m).sub(&tower.primed(m)?)?;
                let c = RatFunc::new(
                    &qint(m as i64 - 1) * &qint(m as i64 + 1),
                    &qint(m as i64) * &qint(m as i64),
                )?;
                d.mul(&d)?.mul(&d)?.sub(&d.scale(&c))
            };
            Ok(vec![
                SubResidual::from_tl(format!("index {n} in TL rank {host}"), &cubic(n)?),
                SubResidual::from_tl(format!("index {} in TL rank {host}", n + 1), &cubic(n + 1)?),
            ])
        }
        _ => unreachable!("Hecke relation routed to the TL certifier"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_small_certificates() {
        // ppp1 at N = 1 degenerates: P_1 = P'_1 = 1 and [0] = 0.
        let cert = certify_ppp1(1).unwrap();
        assert!(cert.proved());
        assert_eq!(cert.residual_terms, 0);
        assert_eq!(cert.host_rank, 3);

        // pttp3 at N = 1 reduces to the cubic generator relation.
        let cert = certify_pttp3(1).unwrap();
        assert!(cert.proved());

        // tpt1 at N = 2 (smallest allowed).
        let cert = certify_tpt1(2).unwrap();
        assert!(cert.proved());
        assert_eq!(cert.host_rank, 3);
    }

    #[test]
    fn lemma_family_small_n() {
        for n in 1..=2 {
            for rel in [
                Relation::DelPp,
                Relation::Pttp1,
                Relation::Pttp2,
                Relation::Pttp3,
            ] {
                let cert = certify(rel, n).unwrap();
                assert!(cert.proved(), "{rel} at n = {n}");
            }
        }
    }

    #[test]
    fn out_of_range_is_an_error() {
        assert!(matches!(
            certify_tpt1(1),
            Err(Error::RelationOutOfRange { .. })
        ));
        assert!(matches!(
            certify(Relation::TlTpt, 1),
            Err(Error::RelationOutOfRange { .. })
        ));
    }

    #[test]
    fn tl_relations_small() {
        let certs = certify_tl_relations(2).unwrap();
        assert_eq!(certs.len(), 6);
        for c in &certs {
            assert!(c.proved(), "{} at n = 2: {:?}", c.relation_id, c.residual);
        }
    }

    #[test]
    fn certificates_serialize() {
        let cert = certify_with_oracle(Relation::Ppp1, 2, 42, 2).unwrap();
        assert!(cert.proved());
        assert_eq!(cert.q_oracle_samples.len(), 2);
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"relation_id\":\"ppp1\""));
        assert!(json.contains("\"status\":\"proved\""));
        let back: RelationCertificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back.residual_terms, 0);
    }

    #[test]
    fn relation_parsing_roundtrip() {
        for rel in Relation::ALL {
            assert_eq!(Relation::parse(rel.id()).unwrap(), rel);
        }
        assert!(matches!(
            Relation::parse("nope"),
            Err(Error::UnknownRelation(_))
        ));
    }

    #[test]
    fn statements_render_with_correct_indices() {
        let s = Relation::DelPp.statement(3);
        assert_eq!(s, "P4 - P'4 = rho_3 P'3 (T4 - T1) P'3   in rank 5");
        let s = Relation::Tpt1.statement(4);
        assert!(s.contains("T4 P4 T4"), "{s}");
        assert!(s.contains("[2]([6]+2[4])/[4]") && s.contains("T4 P3"), "{s}");
        assert!(s.contains("P3 T4 T3 T4 T3 T4 P3") && s.ends_with("in rank 5"), "{s}");
        let s = Relation::Tpthe.statement(2);
        assert!(s.contains("T2 P2 T2 + P2"), "{s}");
        assert!(s.contains("([2]-rho_1) T2 P1 + P1 - rho_1 P1 T1 T2 T1 P1"), "{s}");
        let s = Relation::TlPpp1.statement(5);
        assert!(s.contains("(JW5 - JW'5)^3 = ([4][6]/[5]^2)(JW5 - JW'5)"), "{s}");
        let s = Relation::Tpt2.statement(3);
        assert!(s.contains("scalar gap [2]([2]-rho_2)+1 = ([5]+2[3])/[3]"), "{s}");
    }

    #[test]
    fn failed_certificates_surface_their_residual() {
        let cert = RelationCertificate {
            relation_id: "ppp1".into(),
            n: 2,
            host_rank: 4,
            statement: "test".into(),
            status: CertStatus::Failed,
            residual_terms: 3,
            wall_time_s: 0.0,
            q_oracle_samples: Vec::new(),
            residual: Some("(1) * T[]".into()),
        };
        assert!(!cert.proved());
        match cert.ensure_proved() {
            Err(Error::CertificationFailed {
                residual_terms: 3,
                residual,
                ..
            }) => assert!(residual.contains("T[]")),
            other => panic!("expected CertificationFailed, got {other:?}"),
        }
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"status\":\"failed\""));
        assert!(json.contains("\"residual\":\"(1) * T[]\""));
    }

    #[test]
    fn certificates_are_deterministic() {
        // Every mathematical field reproduces run to run; only the wall
        // time may differ.
        let a = certify_with_oracle(Relation::DelPp, 2, 7, 3).unwrap();
        let b = certify_with_oracle(Relation::DelPp, 2, 7, 3).unwrap();
        assert_eq!(a.relation_id, b.relation_id);
        assert_eq!(a.status, b.status);
        assert_eq!(a.residual_terms, b.residual_terms);
        assert_eq!(a.statement, b.statement);
        assert_eq!(a.residual, b.residual);
        for (x, y) in a.q_oracle_samples.iter().zip(&b.q_oracle_samples) {
            assert_eq!(x.q_re, y.q_re);
            assert_eq!(x.q_im, y.q_im);
            assert_eq!(x.max_rel_err, y.max_rel_err);
        }
    }
}
