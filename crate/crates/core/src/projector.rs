//! The q-antisymmetrizer tower: P_1 = 1 and
//!
//!   P_{N+1} = P_N - rho_N P_N T_N P_N,          rho_N = \[N\]/\[N+1\],
//!
//! equivalently, in the R-generator form,
//!
//!   P_{N+1} = (1/\[N+1\]) P_N (q^N - \[N\] R_N) P_N.
//!
//! Both recursions are implemented and cross-checked; the shifted copies
//! P'_N are the images under the generator shift R_k -> R_{k+1}.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::qarith::{qint, qint_rf, rho, RatFunc};

/// The antisymmetrizers P_1, ..., P_max embedded in a fixed host algebra
/// H_host(q). Levels at different host ranks are distinct objects, related
/// only by explicit `shift_embed`.
#[derive(Debug, Clone)]
pub struct AntisymmetrizerTower {
    host: usize,
    levels: Vec<HeckeElement>,
}

impl AntisymmetrizerTower {
    pub fn host_rank(&self) -> usize {
        self.host
    }

    pub fn max_n(&self) -> usize {
        self.levels.len()
    }

    /// P_n inside the host algebra.
    pub fn level(&self, n: usize) -> &HeckeElement {
        &self.levels[n - 1]
    }

    /// P'_n: the shift-by-one image of P_n inside `host_rank`.
    pub fn primed(&self, n: usize) -> Result<HeckeElement> {
        shifted_projector(self, n, self.host)
    }
}

/// T-form recursion. `max_n <= host` is required: P_N uses generators up to
/// T_{N-1}.
pub fn build_tower_t(host: usize, max_n: usize) -> Result<AntisymmetrizerTower> {
    if max_n == 0 || max_n > host {
        return Err(Error::RankOverflow {
            needed: max_n,
            available: host,
        });
    }
    let mut levels = vec![HeckeElement::one(host)?];
    for n in 1..max_n {
        let p = &levels[n - 1];
        let t_n = HeckeElement::generator_t(host, n)?;
        let ptp = p.mul(&t_n)?.mul(p)?;
        let next = p.sub(&ptp.scale(&rho(n as i64)))?;
        levels.push(next);
    }
    Ok(AntisymmetrizerTower { host, levels })
}

/// R-form recursion; must produce exactly the same tower as `build_tower_t`.
pub fn build_tower_r(host: usize, max_n: usize) -> Result<AntisymmetrizerTower> {
    if max_n == 0 || max_n > host {
        return Err(Error::RankOverflow {
            needed: max_n,
            available: host,
        });
    }
    let mut levels = vec![HeckeElement::one(host)?];
    for n in 1..max_n {
        let p = &levels[n - 1];
        // q^N * 1 - [N] R_N
        let middle = HeckeElement::one(host)?
            .scale_monomial(1, n as i64)
            .sub(&HeckeElement::generator_r(host, n)?.scale(&qint_rf(n as i64)))?;
        let prod = p.mul(&middle)?.mul(p)?;
        let inv = RatFunc::new(crate::qarith::LaurentPoly::one(), qint(n as i64 + 1))?;
        levels.push(prod.scale(&inv));
    }
    Ok(AntisymmetrizerTower { host, levels })
}

/// P'_n as an element of H_host(q), n + 1 <= host.
pub fn shifted_projector(
    tower: &AntisymmetrizerTower,
    n: usize,
    host_rank: usize,
) -> Result<HeckeElement> {
    if host_rank < n + 1 {
        return Err(Error::RankOverflow {
            needed: n + 1,
            available: host_rank,
        });
    }
    tower.level(n).shift_embed(host_rank, 1)
}

/// Towers are built once per host rank and memoized; construction of deeper
/// levels is the single most reused computation in certification.
pub fn cached_tower(host: usize) -> Result<Arc<AntisymmetrizerTower>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<AntisymmetrizerTower>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().expect("tower cache poisoned");
        if let Some(t) = guard.get(&host) {
            return Ok(t.clone());
        }
    }
    // Build outside the lock: tower construction at rank 7 takes seconds and
    // independent hosts may build concurrently.
    let tower = Arc::new(build_tower_t(host, host)?);
    let mut guard = cache.lock().expect("tower cache poisoned");
    Ok(guard.entry(host).or_insert(tower).clone())
}
