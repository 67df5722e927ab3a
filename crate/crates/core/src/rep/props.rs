use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dense::DenseOperator;
use super::seeds::HermitianHeckeSeed;
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::qarith::POLE_TOL;

/// Dense tensor-power work is capped here; eigendecompositions dominate well
/// before this size.
pub const MAX_TENSOR_DIM: usize = 4096;

fn qint_at(q: Complex64, k: i64) -> Complex64 {
    (q.powi(k as i32) - q.powi(-k as i32)) / (q - q.inv())
}

fn check_tensor_dim(n: usize, strands: usize) -> Result<usize> {
    let dim = n.pow(strands as u32);
    if dim > MAX_TENSOR_DIM {
        return Err(Error::InvalidParameter(format!(
            "tensor dimension {n}^{strands} exceeds the cap {MAX_TENSOR_DIM}"
        )));
    }
    Ok(dim)
}

/// `T_k` on `strands` sites: I^(k-1) (x) T (x) I^(strands-k-1).
pub fn t_k_matrix(t_local: &DenseOperator, n: usize, strands: usize, k: usize) -> DenseOperator {
    t_local.embed_at(n, strands, k - 1, 2)
}

/// The projector recursion on `strands` sites, generators shifted by
/// `shift`: returns [P_1, ..., P_levels] with
/// P_{k+1} = P_k - rho_k P_k T_{k+shift} P_k and rho_k = \[k\]/\[k+1\] at `q`.
/// Errors with `RhoPole` when a needed `[k+1]` vanishes.
pub fn projector_tower_numeric(
    t_local: &DenseOperator,
    n: usize,
    strands: usize,
    q: Complex64,
    levels: usize,
    shift: usize,
) -> Result<Vec<DenseOperator>> {
    let dim = check_tensor_dim(n, strands)?;
    t_local.check_dim(n * n)?;
    if levels == 0 || levels - 1 + shift > strands - 1 {
        return Err(Error::InvalidParameter(format!(
            "levels {levels} with shift {shift} does not fit {strands} strands"
        )));
    }
    let mut out = vec![DenseOperator::identity(dim)];
    for k in 1..levels {
        let denom = qint_at(q, k as i64 + 1);
        if denom.norm() < POLE_TOL {
            return Err(Error::RhoPole {
                k: k + 1,
                gamma: q.arg(),
            });
        }
        let rho = qint_at(q, k as i64) / denom;
        let p = &out[k - 1];
        let t_k = t_k_matrix(t_local, n, strands, k + shift);
        let ptp = &(p * &t_k) * p;
        out.push(p - &ptp.scale(rho));
    }
    Ok(out)
}

/// P_1, ..., P_levels for a unit-circle seed on `levels` strands.
pub fn projector_images(seed: &HermitianHeckeSeed, levels: usize) -> Result<Vec<DenseOperator>> {
    // sin(k gamma) != 0 for k = 2..levels is required and checked level by
    // level through the rho denominators.
    projector_tower_numeric(&seed.t, seed.n, levels.max(2), seed.q(), levels, 0)
}

/// Outcome of the vanishing-projector window check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Prop3Report {
    pub n_strands: usize,
    pub gamma: f64,
    /// max |entries| of the projector image P_N.
    pub p_norm: f64,
    /// Smallest eigenvalue of (P_N - P'_N)^2; must not be below -1e-10.
    pub d2_min_eigenvalue: f64,
    /// max |D^4 - c D^2| with c = \[N-1\]\[N+1\]/\[N\]^2.
    pub quartic_residual: f64,
    /// The scalar c, which the window forces to be <= 0.
    pub scalar_factor: f64,
}

pub const PROP_NORM_TOL: f64 = 1e-8;
pub const PSD_EIG_TOL: f64 = -1e-10;

/// In the window pi/(N+1) <= gamma < pi/N a nonzero accepted seed forces
/// tau(P_N) = 0. This verifies that conclusion and the sign mechanism it
/// rests on: (P_N - P'_N)^2 is positive semi-definite while its quartic
/// relation carries a non-positive scalar.
pub fn verify_prop3(seed: &HermitianHeckeSeed, n: usize) -> Result<Prop3Report> {
    if n < 2 {
        return Err(Error::InvalidParameter("prop3 check needs N >= 2".into()));
    }
    let lo = std::f64::consts::PI / (n as f64 + 1.0);
    let hi = std::f64::consts::PI / n as f64;
    if !(seed.gamma >= lo && seed.gamma < hi) {
        return Err(Error::InvalidParameter(format!(
            "gamma {} outside [pi/{}, pi/{})",
            seed.gamma,
            n + 1,
            n
        )));
    }
    let strands = n + 1;
    let q = seed.q();
    let plain = projector_tower_numeric(&seed.t, seed.n, strands, q, n, 0)?;
    let primed = projector_tower_numeric(&seed.t, seed.n, strands, q, n, 1)?;
    let p_n = &plain[n - 1];
    let d = p_n - &primed[n - 1];
    let d2 = &d * &d;
    let d4 = &d2 * &d2;
    let g = crate::qarith::UnitCircleQ::new(seed.gamma)?;
    let c = g.qint_value(n as i64 - 1) * g.qint_value(n as i64 + 1)
        / g.qint_value(n as i64).powi(2);
    let eigs = d2.hermitian_eigenvalues();
    let report = Prop3Report {
        n_strands: strands,
        gamma: seed.gamma,
        p_norm: p_n.max_abs(),
        d2_min_eigenvalue: eigs.first().copied().unwrap_or(0.0),
        quartic_residual: (&d4 - &d2.scale(Complex64::new(c, 0.0))).max_abs(),
        scalar_factor: c,
    };
    if report.p_norm > PROP_NORM_TOL
        || report.d2_min_eigenvalue < PSD_EIG_TOL
        || report.quartic_residual > PROP_NORM_TOL
        || report.scalar_factor > 1e-12
    {
        return Err(Error::PropositionViolated(format!(
            "prop3 mechanism violated at gamma = {}: {report:?}; seed {:?}",
            seed.gamma,
            serde_json::to_string(&seed.to_json()).unwrap_or_default()
        )));
    }
    Ok(report)
}

/// Outcome of the sign-condition window check one level down.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Prop4Report {
    pub n_strands: usize,
    pub gamma: f64,
    /// Value of \[N+2\] + 2\[N\]; the hypothesis requires it negative.
    pub condition_value: f64,
    /// max |entries| of the projector image P_{N-1}.
    pub p_norm: f64,
    /// Largest eigenvalue of the negative-semi-definite side.
    pub lhs_max_eigenvalue: f64,
    /// Smallest eigenvalue of the positive-semi-definite side.
    pub rhs_min_eigenvalue: f64,
}

/// For N >= 3, gamma strictly inside (pi/(N+1), pi/N) and \[N+2\] + 2\[N\] < 0,
/// a nonzero accepted seed forces tau(P_{N-1}) = 0. Verifies the conclusion
/// and the semi-definiteness mechanism:
/// \[2\](\[N+2\]+2\[N\]) T_N P_{N-1} is NSD while
/// \[N-1\] P_{N-1} T_N T_{N-1} T_N T_{N-1} T_N P_{N-1} is PSD.
pub fn verify_prop4(seed: &HermitianHeckeSeed, n: usize) -> Result<Prop4Report> {
    if n < 3 {
        return Err(Error::InvalidParameter("prop4 check needs N >= 3".into()));
    }
    let lo = std::f64::consts::PI / (n as f64 + 1.0);
    let hi = std::f64::consts::PI / n as f64;
    if !(seed.gamma > lo && seed.gamma < hi) {
        return Err(Error::InvalidParameter(format!(
            "gamma {} outside (pi/{}, pi/{})",
            seed.gamma,
            n + 1,
            n
        )));
    }
    let g = crate::qarith::UnitCircleQ::new(seed.gamma)?;
    let condition_value = g.qint_value(n as i64 + 2) + 2.0 * g.qint_value(n as i64);
    if condition_value >= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "[N+2] + 2[N] = {condition_value} is not negative at gamma = {}",
            seed.gamma
        )));
    }
    let strands = n + 1;
    let q = seed.q();
    let tower = projector_tower_numeric(&seed.t, seed.n, strands, q, n - 1, 0)?;
    let p_m = &tower[n - 2];
    let t_n = t_k_matrix(&seed.t, seed.n, strands, n);
    let t_m = t_k_matrix(&seed.t, seed.n, strands, n - 1);
    let two = g.qint_value(2);
    let lhs = (&t_n * p_m).scale(Complex64::new(two * condition_value, 0.0));
    let rhs = (&(&(&(&(&(p_m * &t_n) * &t_m) * &t_n) * &t_m) * &t_n) * p_m)
        .scale(Complex64::new(g.qint_value(n as i64 - 1), 0.0));
    let lhs_eigs = lhs.hermitian_eigenvalues();
    let rhs_eigs = rhs.hermitian_eigenvalues();
    let report = Prop4Report {
        n_strands: strands,
        gamma: seed.gamma,
        condition_value,
        p_norm: p_m.max_abs(),
        lhs_max_eigenvalue: lhs_eigs.last().copied().unwrap_or(0.0),
        rhs_min_eigenvalue: rhs_eigs.first().copied().unwrap_or(0.0),
    };
    if report.p_norm > PROP_NORM_TOL
        || report.lhs_max_eigenvalue > PROP_NORM_TOL
        || report.rhs_min_eigenvalue < -PROP_NORM_TOL
    {
        return Err(Error::PropositionViolated(format!(
            "prop4 mechanism violated at gamma = {}: {report:?}",
            seed.gamma
        )));
    }
    Ok(report)
}

/// The threshold angle: the unique root of 16 cos^4 g - 4 cos^2 g - 1 on
/// (pi/4, pi/3), located by bisection to 1e-14. Satisfies
/// cos^2 gamma_0 = (1 + sqrt 5)/8.
pub fn gamma0_root() -> f64 {
    let f = |g: f64| {
        let c2 = g.cos().powi(2);
        16.0 * c2 * c2 - 4.0 * c2 - 1.0
    };
    let mut lo = std::f64::consts::PI / 4.0;
    let mut hi = std::f64::consts::PI / 3.0;
    debug_assert!(f(lo) > 0.0 && f(hi) < 0.0);
    while hi - lo > 1e-14 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `f(gamma) = sin 5g + 2 sin 3g`, the sign function governing the N = 3
/// window condition.
pub fn f_gamma(gamma: f64) -> f64 {
    (5.0 * gamma).sin() + 2.0 * (3.0 * gamma).sin()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanRow {
    pub gamma: f64,
    /// \[N+2\] + 2\[N\] evaluated through sine ratios.
    pub value: f64,
    pub in_prop3_window: bool,
    pub in_prop4_window: bool,
    pub sign: i8,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanTable {
    pub n: usize,
    pub rows: Vec<ScanRow>,
    pub sign_changes: usize,
}

impl ScanTable {
    /// Stable CSV schema: `gamma,qint_Np2_plus_2N,in_prop3_window,
    /// in_prop4_window,sign` with booleans as 0/1.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("gamma,qint_Np2_plus_2N,in_prop3_window,in_prop4_window,sign\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{:.12e},{:.12e},{},{},{}\n",
                r.gamma,
                r.value,
                r.in_prop3_window as u8,
                r.in_prop4_window as u8,
                r.sign
            ));
        }
        out
    }
}

/// Samples \[N+2\] + 2\[N\] across [pi/(N+1), pi/N] inclusive of endpoints,
/// tagging window membership and sign.
pub fn scan_gamma(n: usize, steps: usize) -> Result<ScanTable> {
    if steps < 2 {
        return Err(Error::InvalidParameter("scan needs steps >= 2".into()));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("scan needs N >= 2".into()));
    }
    let lo = std::f64::consts::PI / (n as f64 + 1.0);
    let hi = std::f64::consts::PI / n as f64;
    let mut rows = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        // Endpoints are pinned exactly so window membership is stable
        // against rounding in the interior formula.
        let gamma = if i == 0 {
            lo
        } else if i == steps {
            hi
        } else {
            lo + (hi - lo) * i as f64 / steps as f64
        };
        let g = crate::qarith::UnitCircleQ::new(gamma)?;
        let value = g.qint_value(n as i64 + 2) + 2.0 * g.qint_value(n as i64);
        let sign = if value.abs() < 1e-12 {
            0
        } else if value > 0.0 {
            1
        } else {
            -1
        };
        rows.push(ScanRow {
            gamma,
            value,
            in_prop3_window: gamma >= lo && gamma < hi,
            in_prop4_window: gamma > lo && gamma < hi,
            sign,
        });
    }
    let sign_changes = rows
        .windows(2)
        .filter(|w| w[0].sign * w[1].sign < 0)
        .count();
    Ok(ScanTable {
        n,
        rows,
        sign_changes,
    })
}

/// The image of a basis word under tau: products of R_k = T_k - q^-1.
fn tau_matrices(t_local: &DenseOperator, n: usize, strands: usize, q: Complex64) -> Vec<DenseOperator> {
    (1..strands)
        .map(|k| {
            let dim = n.pow(strands as u32);
            let _ = dim;
            let t_k = t_k_matrix(t_local, n, strands, k);
            &t_k - &DenseOperator::identity(t_k.dim()).scale(q.inv())
        })
        .collect()
}

/// tau applied to an exact Hecke element: coefficients evaluated at `q`,
/// basis words mapped to products of R-matrices on `strands` sites.
pub fn tau_of_element(
    el: &HeckeElement,
    t_local: &DenseOperator,
    n: usize,
    strands: usize,
    q: Complex64,
) -> Result<DenseOperator> {
    if el.rank() > strands {
        return Err(Error::RankOverflow {
            needed: el.rank(),
            available: strands,
        });
    }
    let dim = check_tensor_dim(n, strands)?;
    let r_mats = tau_matrices(t_local, n, strands, q);
    let mut acc = DenseOperator::zeros(dim);
    for (w, coeff) in el.coeffs() {
        let c = coeff.eval_complex(q, POLE_TOL)?;
        let mut m = DenseOperator::identity(dim);
        for &k in &w.reduced_word() {
            m = &m * &r_mats[k as usize - 1];
        }
        acc = &acc + &m.scale(c);
    }
    Ok(acc)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauReport {
    /// max over sampled pairs of |tau(ab) - tau(a) tau(b)|.
    pub hom_residual: f64,
    /// |tau(symbolic P_N) - numeric P_N| on the same strand count.
    pub projector_residual: f64,
    /// |R* R - I| for R = tau(R_1), meaningful on the unit circle.
    pub unitarity_residual: f64,
}

/// Cross-checks the representation: the homomorphism property on pseudo-
/// random exact elements, agreement of the two projector routes, and
/// unitarity of the R image for Hermitian seeds.
pub fn tau_consistency(
    seed: &HermitianHeckeSeed,
    strands: usize,
    element_rank: usize,
) -> Result<TauReport> {
    let q = seed.q();
    tau_consistency_at(&seed.t, seed.n, strands, element_rank, q)
}

/// Same checks at an arbitrary q (used with the real-q standard seed).
pub fn tau_consistency_at(
    t_local: &DenseOperator,
    n: usize,
    strands: usize,
    element_rank: usize,
    q: Complex64,
) -> Result<TauReport> {
    if element_rank > strands {
        return Err(Error::RankOverflow {
            needed: element_rank,
            available: strands,
        });
    }
    check_tensor_dim(n, strands)?;
    // Homomorphism on deterministic pseudo-random structured elements.
    let mut state = 0x5deece66d_u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let mut hom_residual = 0.0f64;
    for _ in 0..4 {
        let mut make = |_: ()| -> Result<HeckeElement> {
            let mut e = HeckeElement::zero(element_rank)?;
            for _ in 0..3 {
                let idx = (next() % crate::hecke::factorial(element_rank) as u64) as usize;
                let c = (next() % 5) as i128 - 2;
                let ex = (next() % 5) as i64 - 2;
                let w = crate::hecke::Permutation::from_index(element_rank, idx);
                e = e.add(&HeckeElement::basis(element_rank, &w)?.scale_monomial(c, ex))?;
            }
            Ok(e)
        };
        let a = make(())?;
        let b = make(())?;
        let tau_ab = tau_of_element(&a.mul(&b)?, t_local, n, strands, q)?;
        let ta = tau_of_element(&a, t_local, n, strands, q)?;
        let tb = tau_of_element(&b, t_local, n, strands, q)?;
        hom_residual = hom_residual.max((&tau_ab - &(&ta * &tb)).max_abs());
    }
    // Two independent routes to the projector image.
    let symbolic = crate::projector::cached_tower(element_rank)?;
    let tau_p = tau_of_element(symbolic.level(element_rank), t_local, n, strands, q)?;
    let numeric =
        projector_tower_numeric(t_local, n, strands, q, element_rank, 0)?;
    let projector_residual = (&tau_p - &numeric[element_rank - 1]).max_abs();
    // R-image unitarity.
    let r1 = {
        let t1 = t_k_matrix(t_local, n, strands, 1);
        &t1 - &DenseOperator::identity(t1.dim()).scale(q.inv())
    };
    let unitarity_residual =
        (&(&r1.dagger() * &r1) - &DenseOperator::identity(r1.dim())).max_abs();
    Ok(TauReport {
        hom_residual,
        projector_residual,
        unitarity_residual,
    })
}
