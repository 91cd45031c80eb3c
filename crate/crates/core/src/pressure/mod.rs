//! Diametral l1-pressure `Phi_k`, the weighted selection functional `Psi_k`,
//! the separation-aware variant, and their truncated infima.
//!
//! Every functional is a supremum over `k`-tuples drawn from a finite point
//! set of an inner minimum over coefficient vectors. Tuples are treated as
//! multisets: the inner problems are invariant under permutation, so only
//! nondecreasing index tuples are visited.

mod inner;
mod minnorm;
mod tuples;

use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vectorspace::{pairwise_diameter, NormSpec, PointSet, Vector};

pub(crate) use inner::{default_signed_method, norm_gradient};
pub use inner::{
    evaluate_combination, inner_signed_min, inner_unsigned_min, unsigned_grid_oracle, Exactness,
    InnerMethod, InnerMode, InnerSolution, MAX_EXACT_POINTS,
};
pub use tuples::{combination_count, multiset_count};

pub const DEFAULT_SEARCH_BUDGET: usize = 200_000;
/// Slack used when comparing pairwise distances against `eta * delta`.
const SEPARATION_TOL: f64 = 1e-12;

/// Inputs shared by the per-k functionals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureQuery {
    pub set: PointSet,
    pub base: Vector,
    /// Normalizing scale; the diameter of `set ∪ {base}` when absent.
    pub delta: Option<f64>,
    pub k_max: usize,
    pub eta: Option<f64>,
    pub search_budget: usize,
    pub seed: u64,
    /// Worker threads for exhaustive enumeration. Results do not depend on it.
    pub threads: usize,
    /// Forces exhaustive or search mode; chosen per k from the budget when absent.
    #[serde(default)]
    pub mode: Option<SearchMode>,
}

impl PressureQuery {
    pub fn new(set: PointSet, base: Vector) -> Self {
        Self {
            set,
            base,
            delta: None,
            k_max: 1,
            eta: None,
            search_budget: DEFAULT_SEARCH_BUDGET,
            seed: 0,
            threads: 1,
            mode: None,
        }
    }

    pub fn with_delta(mut self, delta: f64) -> Self {
        self.delta = Some(delta);
        self
    }

    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn with_eta(mut self, eta: f64) -> Self {
        self.eta = Some(eta);
        self
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.search_budget = budget;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = Some(mode);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.base.dim() != self.set.dim() {
            return Err(Error::DimMismatch {
                expected: self.set.dim(),
                got: self.base.dim(),
            });
        }
        if let Some(d) = self.delta {
            if !(d.is_finite() && d > 0.0) {
                return Err(Error::ZeroDelta);
            }
        }
        if let Some(eta) = self.eta {
            if !(eta > 0.0 && eta <= 1.0) {
                return Err(Error::OutOfRange {
                    name: "eta",
                    value: eta,
                });
            }
        }
        if self.k_max == 0 {
            return Err(Error::OutOfRange {
                name: "k_max",
                value: 0.0,
            });
        }
        Ok(())
    }

    /// The normalizing scale actually used.
    pub fn resolved_delta(&self) -> Result<f64> {
        self.validate()?;
        let delta = match self.delta {
            Some(d) => d,
            None => pairwise_diameter(&self.set.with_point(self.base.clone())?),
        };
        if delta <= 0.0 {
            return Err(Error::ZeroDelta);
        }
        Ok(delta)
    }

    /// `(y_i - base) / delta` for every point of the set.
    pub fn normalized(&self) -> Result<PointSet> {
        normalize_points(&self.set, &self.base, self.resolved_delta()?)
    }
}

/// Maps each point `y` to `(y - base) / delta`.
pub fn normalize_points(set: &PointSet, base: &Vector, delta: f64) -> Result<PointSet> {
    if !(delta.is_finite() && delta > 0.0) {
        return Err(Error::ZeroDelta);
    }
    if base.dim() != set.dim() {
        return Err(Error::DimMismatch {
            expected: set.dim(),
            got: base.dim(),
        });
    }
    let points = set
        .points()
        .iter()
        .map(|y| y.sub(base).scale(1.0 / delta))
        .collect();
    PointSet::new(points, set.norm())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Every tuple was visited and every inner problem solved exactly.
    Exact,
    /// Some tuples were visited with exact inner values; a certified lower
    /// bound on the supremum.
    LowerBound,
    /// At least one inner problem was solved heuristically.
    Approximate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Search,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Signed,
    Unsigned,
    Separated,
}

/// One row of a pressure table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerKRecord {
    pub k: usize,
    pub value: f64,
    /// Indices into the query set of the maximizing tuple.
    pub witness: Vec<usize>,
    /// Inner minimizer for the witness tuple.
    pub coefficients: Vec<f64>,
    pub bound_kind: BoundKind,
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PressureReport {
    pub variant: Variant,
    pub delta: f64,
    pub per_k: Vec<PerKRecord>,
    pub truncated_inf: f64,
    pub truncated_kind: BoundKind,
    pub exact_zero_rule_applied: bool,
}

fn tuple_vectors(points: &PointSet, tuple: &[usize]) -> Vec<Vector> {
    tuple.iter().map(|&i| points.points()[i].clone()).collect()
}

fn combine_kinds(exhaustive: bool, inner_exact: bool) -> BoundKind {
    match (exhaustive, inner_exact) {
        (_, false) => BoundKind::Approximate,
        (true, true) => BoundKind::Exact,
        (false, true) => BoundKind::LowerBound,
    }
}

type InnerFn<'a> = dyn Fn(&[Vector]) -> Result<InnerSolution> + Sync + 'a;

/// Shared outer supremum for the signed and unsigned functionals.
fn outer_sup(
    q: &PressureQuery,
    k: usize,
    mode: SearchMode,
    distinct: bool,
    admissible: &(dyn Fn(&[usize]) -> bool + Sync),
    inner: &InnerFn<'_>,
) -> Result<Option<PerKRecord>> {
    if k == 0 {
        return Err(Error::OutOfRange {
            name: "k",
            value: 0.0,
        });
    }
    let points = q.normalized()?;
    let m = points.len();
    match mode {
        SearchMode::Exhaustive => {
            let needed = if distinct {
                combination_count(m, k)
            } else {
                multiset_count(m, k)
            };
            if needed > q.search_budget as u128 {
                return Err(Error::BudgetExceeded {
                    needed,
                    budget: q.search_budget,
                });
            }
            let all = if distinct {
                tuples::combinations(m, k)
            } else {
                tuples::multisets(m, k)
            };
            let candidates: Vec<Vec<usize>> = all.into_iter().filter(|t| admissible(t)).collect();
            // errors cannot occur for well-formed normalized points; surface
            // them as a skipped tuple rather than panicking inside the pool
            let all_exact = AtomicBool::new(true);
            let best = tuples::argmax(&candidates, q.threads, |t| {
                let sol = inner(&tuple_vectors(&points, t)).ok()?;
                if sol.exactness != Exactness::Exact {
                    all_exact.store(false, Ordering::Relaxed);
                }
                Some((sol.value, sol))
            });
            let all_exact = all_exact.into_inner();
            Ok(best.map(|(i, value, sol)| PerKRecord {
                k,
                value,
                witness: candidates[i].clone(),
                coefficients: sol.coefficients,
                bound_kind: combine_kinds(true, all_exact),
                admissible: true,
            }))
        }
        SearchMode::Search => {
            let mut all_exact = true;
            let mut eval = |t: &[usize]| match inner(&tuple_vectors(&points, t)) {
                Ok(s) => {
                    all_exact &= s.exactness == Exactness::Exact;
                    s.value
                }
                Err(_) => f64::NEG_INFINITY,
            };
            let outcome = tuples::hill_climb(
                m,
                k,
                distinct,
                q.search_budget.max(1),
                q.seed,
                admissible,
                &mut eval,
            );
            match outcome {
                None => Ok(None),
                Some(o) => {
                    let sol = inner(&tuple_vectors(&points, &o.tuple))?;
                    Ok(Some(PerKRecord {
                        k,
                        value: o.value,
                        witness: o.tuple,
                        coefficients: sol.coefficients,
                        bound_kind: combine_kinds(false, all_exact),
                        admissible: true,
                    }))
                }
            }
        }
    }
}

fn signed_inner(norm: NormSpec) -> impl Fn(&[Vector]) -> Result<InnerSolution> + Sync {
    move |vs: &[Vector]| inner_signed_min(vs, norm, inner::default_signed_method(vs.len()))
}

fn unsigned_inner(norm: NormSpec) -> impl Fn(&[Vector]) -> Result<InnerSolution> + Sync {
    move |vs: &[Vector]| inner_unsigned_min(vs, norm)
}

fn empty_record(k: usize, kind: BoundKind) -> PerKRecord {
    PerKRecord {
        k,
        value: 0.0,
        witness: Vec::new(),
        coefficients: Vec::new(),
        bound_kind: kind,
        admissible: false,
    }
}

/// `Phi_k`: supremum over k-tuples (with repetition) of the signed inner minimum.
pub fn phi_k(q: &PressureQuery, k: usize, mode: SearchMode) -> Result<PerKRecord> {
    let inner = signed_inner(q.set.norm());
    outer_sup(q, k, mode, false, &|_| true, &inner)
        .map(|r| r.unwrap_or_else(|| empty_record(k, BoundKind::Exact)))
}

/// `Psi_k`: supremum over k-tuples (with repetition) of the simplex minimum.
pub fn psi_k(q: &PressureQuery, k: usize, mode: SearchMode) -> Result<PerKRecord> {
    let inner = unsigned_inner(q.set.norm());
    outer_sup(q, k, mode, false, &|_| true, &inner)
        .map(|r| r.unwrap_or_else(|| empty_record(k, BoundKind::Exact)))
}

/// Whether all pairwise distances within `tuple` reach `eta * delta`.
fn separated(set: &PointSet, tuple: &[usize], threshold: f64) -> bool {
    let pts = set.points();
    let n = set.norm();
    tuple.iter().enumerate().all(|(a, &i)| {
        tuple[a + 1..]
            .iter()
            .all(|&j| i != j && n.eval(pts[i].sub(&pts[j]).as_slice()) >= threshold)
    })
}

/// `Phi_k^(eta)`: the signed supremum restricted to eta-separated tuples.
///
/// Duplicates are never admissible for `k >= 2`. With no admissible tuple the
/// value is 0 and `admissible` is false.
pub fn phi_k_separated(q: &PressureQuery, k: usize) -> Result<PerKRecord> {
    let eta = q.eta.ok_or(Error::MissingEta)?;
    let delta = q.resolved_delta()?;
    let threshold = eta * delta - SEPARATION_TOL * delta;
    let set = q.set.clone();
    let admissible = move |t: &[usize]| separated(&set, t, threshold);
    let inner = signed_inner(q.set.norm());
    let m = q.set.len();
    let mode = q
        .mode
        .unwrap_or(if combination_count(m, k) <= q.search_budget as u128 {
            SearchMode::Exhaustive
        } else {
            SearchMode::Search
        });
    let kind = if mode == SearchMode::Exhaustive {
        BoundKind::Exact
    } else {
        BoundKind::LowerBound
    };
    outer_sup(q, k, mode, true, &admissible, &inner)
        .map(|r| r.unwrap_or_else(|| empty_record(k, kind)))
}

fn auto_mode(m: usize, k: usize, budget: usize) -> SearchMode {
    if multiset_count(m, k) <= budget as u128 {
        SearchMode::Exhaustive
    } else {
        SearchMode::Search
    }
}

/// One row of the chosen functional, in the query's mode (or the automatic
/// choice when unset).
pub fn per_k_value(q: &PressureQuery, variant: Variant, k: usize) -> Result<PerKRecord> {
    let mode = q
        .mode
        .unwrap_or_else(|| auto_mode(q.set.len(), k, q.search_budget));
    match variant {
        Variant::Signed => phi_k(q, k, mode),
        Variant::Unsigned => psi_k(q, k, mode),
        Variant::Separated => phi_k_separated(q, k),
    }
}

/// Per-k values for `k = 1..=k_max` and their minimum.
///
/// Each level runs exhaustively when its tuple count fits the budget and falls
/// back to seeded search otherwise. For the signed variant every level above
/// the set size is exactly zero (a tuple must repeat a point), so those rows
/// are filled in without search.
pub fn pressure_p(q: &PressureQuery, variant: Variant) -> Result<PressureReport> {
    q.validate()?;
    let delta = q.resolved_delta()?;
    let m = q.set.len();
    let mut per_k = Vec::with_capacity(q.k_max);
    let mut zero_rule = false;
    for k in 1..=q.k_max {
        if variant == Variant::Signed && k > m {
            zero_rule = true;
            let mut coefficients = vec![0.0; k];
            coefficients[0] = 0.5;
            coefficients[1] = -0.5;
            per_k.push(PerKRecord {
                k,
                value: 0.0,
                witness: vec![0; k],
                coefficients,
                bound_kind: BoundKind::Exact,
                admissible: true,
            });
        } else {
            per_k.push(per_k_value(q, variant, k)?);
        }
    }
    let truncated_inf = per_k.iter().map(|r| r.value).fold(f64::INFINITY, f64::min);
    let all_exact = per_k.iter().all(|r| r.bound_kind == BoundKind::Exact);
    let truncated_kind = if zero_rule || all_exact {
        BoundKind::Exact
    } else if per_k.iter().any(|r| r.bound_kind == BoundKind::Approximate) {
        BoundKind::Approximate
    } else {
        BoundKind::LowerBound
    };
    Ok(PressureReport {
        variant,
        delta,
        per_k,
        truncated_inf,
        truncated_kind,
        exact_zero_rule_applied: zero_rule,
    })
}

/// Outcome of checking the l1 anti-collapse hypothesis on supplied tuples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub holds: bool,
    /// Index of the first tuple whose signed inner minimum falls below eps.
    pub violating_tuple: Option<usize>,
    pub violating_coefficients: Option<Vec<f64>>,
    /// Smallest inner value seen; `+inf` when no tuple was supplied.
    pub min_value: f64,
}

/// Checks that no signed l1-normalized combination of the normalized
/// differences `(y - base) / delta` of each supplied tuple falls below `eps`.
pub fn hypothesis_h_l1(
    q: &PressureQuery,
    eps: f64,
    k: usize,
    tuples: &[Vec<Vector>],
) -> Result<HypothesisReport> {
    if eps.is_nan() || eps <= 0.0 {
        return Err(Error::OutOfRange {
            name: "eps",
            value: eps,
        });
    }
    let delta = q.resolved_delta()?;
    let norm = q.set.norm();
    let mut report = HypothesisReport {
        holds: true,
        violating_tuple: None,
        violating_coefficients: None,
        min_value: f64::INFINITY,
    };
    for (idx, tuple) in tuples.iter().enumerate() {
        if tuple.len() != k {
            return Err(Error::LengthMismatch {
                left: k,
                right: tuple.len(),
            });
        }
        let normalized: Vec<Vector> = tuple
            .iter()
            .map(|y| {
                if y.dim() != q.base.dim() {
                    Err(Error::DimMismatch {
                        expected: q.base.dim(),
                        got: y.dim(),
                    })
                } else {
                    Ok(y.sub(&q.base).scale(1.0 / delta))
                }
            })
            .collect::<Result<_>>()?;
        let sol = inner_signed_min(&normalized, norm, inner::default_signed_method(k))?;
        report.min_value = report.min_value.min(sol.value);
        if sol.value < eps && report.holds {
            report.holds = false;
            report.violating_tuple = Some(idx);
            report.violating_coefficients = Some(sol.coefficients);
        }
    }
    Ok(report)
}
