//! Dual-functional certificates, frame-based lower bounds, and the
//! certificate-to-pressure pipeline.
//!
//! A certificate is a functional `f` with dual norm at most one and a level
//! `gamma` such that `f(v_i) >= gamma` for every vector in a tuple. Such a
//! certificate bounds the unsigned (convex-weight) inner problem from below.
//! The signed conclusion is checked numerically, never assumed.

mod coherence;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{self, Constraint, Relation};
use crate::pressure::{
    inner_signed_min, inner_unsigned_min, norm_gradient, Exactness, PressureQuery,
};
use crate::vectorspace::{combine, dot, NormSpec, Vector};

pub use coherence::{
    coherence_kernel, coherence_phi_lower, mutual_coherence, spectral_phi_lower, CoherenceReport,
};

const CHECK_TOL: f64 = 1e-9;
/// Below this (relative) norm the min-norm point is treated as the origin.
const ORIGIN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateScope {
    UnsignedValid,
    SignedClaimed,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualCertificate {
    pub f: Vector,
    pub gamma: f64,
    pub norm_of_f: NormSpec,
    pub scope: CertificateScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub dual_norm_ok: bool,
    pub level_ok: bool,
    /// The weaker hypothesis `|f(v_i)| >= gamma`.
    pub abs_level_ok: bool,
}

fn check_dims(vs: &[Vector]) -> Result<usize> {
    let dim = vs.first().ok_or(Error::EmptyInput)?.dim();
    if let Some(v) = vs.iter().find(|v| v.dim() != dim) {
        return Err(Error::DimMismatch {
            expected: dim,
            got: v.dim(),
        });
    }
    Ok(dim)
}

/// Best certificate for `vs`: maximizes `t` over `||f||_* <= 1` and
/// `f(v_i) >= t`.
pub fn solve_certificate(vs: &[Vector], n: NormSpec) -> Result<DualCertificate> {
    let dim = check_dims(vs)?;
    let f = match n {
        NormSpec::L1 | NormSpec::Linf => polyhedral_functional(vs, dim, n)?,
        NormSpec::L2 | NormSpec::Lp(_) => {
            // the optimal functional supports the hull at its min-norm point
            let sol = inner_unsigned_min(vs, n)?;
            let x = combine(vs, &sol.coefficients);
            let scale = vs.iter().map(|v| n.eval(v.as_slice())).fold(0.0, f64::max);
            if n.eval(&x) <= ORIGIN_TOL * scale.max(f64::MIN_POSITIVE) {
                vec![0.0; dim]
            } else {
                norm_gradient(&x, n)
            }
        }
    };
    let dual = n.dual();
    let mut f = f;
    let fnorm = dual.eval(&f);
    if fnorm > 1.0 {
        f.iter_mut().for_each(|x| *x /= fnorm);
    }
    let level = vs
        .iter()
        .map(|v| dot(&f, v.as_slice()))
        .fold(f64::INFINITY, f64::min);
    Ok(DualCertificate {
        f: Vector::from_raw(f),
        gamma: level.max(0.0),
        norm_of_f: dual,
        scope: CertificateScope::UnsignedValid,
    })
}

/// Solves the certificate LP when the dual ball is a box (`L1`) or a
/// cross-polytope (`Linf`). Variables: `g, h >= 0` with `f = g - h`, then `t`.
fn polyhedral_functional(vs: &[Vector], dim: usize, n: NormSpec) -> Result<Vec<f64>> {
    let nvars = 2 * dim + 1;
    let t = 2 * dim;
    let mut cons = Vec::new();
    for v in vs {
        // t - f(v) <= 0
        let mut row = vec![0.0; nvars];
        for j in 0..dim {
            row[j] = -v[j];
            row[dim + j] = v[j];
        }
        row[t] = 1.0;
        cons.push(Constraint::new(row, Relation::Le, 0.0));
    }
    match n {
        NormSpec::L1 => {
            for j in 0..2 * dim {
                let mut row = vec![0.0; nvars];
                row[j] = 1.0;
                cons.push(Constraint::new(row, Relation::Le, 1.0));
            }
        }
        _ => {
            let mut row = vec![1.0; nvars];
            row[t] = 0.0;
            cons.push(Constraint::new(row, Relation::Le, 1.0));
        }
    }
    let mut objective = vec![0.0; nvars];
    objective[t] = -1.0;
    let sol = lp::minimize(&objective, &cons)?;
    Ok((0..dim).map(|j| sol.x[j] - sol.x[dim + j]).collect())
}

pub fn verify_certificate(c: &DualCertificate, vs: &[Vector]) -> Result<CertificateCheck> {
    if let Some(v) = vs.iter().find(|v| v.dim() != c.f.dim()) {
        return Err(Error::DimMismatch {
            expected: c.f.dim(),
            got: v.dim(),
        });
    }
    let values: Vec<f64> = vs.iter().map(|v| c.f.dot(v)).collect();
    Ok(CertificateCheck {
        dual_norm_ok: c.norm_of_f.eval(c.f.as_slice()) <= 1.0 + CHECK_TOL,
        level_ok: values.iter().all(|&x| x >= c.gamma - CHECK_TOL),
        abs_level_ok: values.iter().all(|&x| x.abs() >= c.gamma - CHECK_TOL),
    })
}

/// Certified lower bound on the unsigned inner minimum of `vs`.
pub fn cert_bound_unsigned(c: &DualCertificate, vs: &[Vector]) -> Result<f64> {
    let check = verify_certificate(c, vs)?;
    if !(check.dual_norm_ok && check.level_ok) {
        return Err(Error::InvalidCertificate);
    }
    Ok(c.gamma.max(0.0))
}

/// Outcome of testing the signed reading `inner_signed_min >= gamma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignedCheck {
    Confirmed,
    Violated,
    /// `|f(v_i)| >= gamma` fails, so there is nothing to test.
    HypothesisUnmet,
    /// Only a heuristic inner value was available and it did not refute.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineRow {
    pub k: usize,
    pub tuple: Vec<usize>,
    pub gamma: f64,
    pub check: CertificateCheck,
    /// True when the certificate is a valid unsigned lower bound.
    pub unsigned_certified: bool,
    pub signed_inner: f64,
    pub signed_check: SignedCheck,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub rows: Vec<PipelineRow>,
    /// Smallest gamma among certified rows; a lower bound on each
    /// corresponding unsigned per-k value.
    pub min_gamma: Option<f64>,
    pub signed_all_confirmed: bool,
}

/// Verifies one certificate per `k` against the given tuple of indices into
/// the normalized query set.
pub fn certificate_pipeline(
    q: &PressureQuery,
    per_k_tuples: &BTreeMap<usize, Vec<usize>>,
    per_k_certs: &BTreeMap<usize, DualCertificate>,
) -> Result<PipelineReport> {
    q.validate()?;
    let normalized = q.normalized()?;
    let n = normalized.norm();
    let mut rows = Vec::with_capacity(per_k_tuples.len());
    for (&k, tuple) in per_k_tuples {
        if tuple.len() != k {
            return Err(Error::LengthMismatch {
                left: k,
                right: tuple.len(),
            });
        }
        let cert = per_k_certs.get(&k).ok_or(Error::EmptyInput)?;
        let vs = tuple
            .iter()
            .map(|&i| {
                normalized
                    .points()
                    .get(i)
                    .cloned()
                    .ok_or(Error::OutOfRange {
                        name: "tuple index",
                        value: i as f64,
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        let check = verify_certificate(cert, &vs)?;
        let signed = inner_signed_min(&vs, n, crate::pressure::default_signed_method(k))?;
        let signed_check = if !(check.abs_level_ok && check.dual_norm_ok) {
            SignedCheck::HypothesisUnmet
        } else if signed.value < cert.gamma - CHECK_TOL {
            SignedCheck::Violated
        } else if signed.exactness == Exactness::Exact {
            SignedCheck::Confirmed
        } else {
            SignedCheck::Inconclusive
        };
        rows.push(PipelineRow {
            k,
            tuple: tuple.clone(),
            gamma: cert.gamma,
            check,
            unsigned_certified: check.dual_norm_ok && check.level_ok,
            signed_inner: signed.value,
            signed_check,
        });
    }
    let min_gamma = rows
        .iter()
        .filter(|r| r.unsigned_certified)
        .map(|r| r.gamma.max(0.0))
        .reduce(f64::min);
    let signed_all_confirmed = rows
        .iter()
        .all(|r| r.signed_check == SignedCheck::Confirmed);
    Ok(PipelineReport {
        rows,
        min_gamma,
        signed_all_confirmed,
    })
}
