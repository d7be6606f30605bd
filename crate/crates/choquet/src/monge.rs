//! The greedy packing algorithm and its certification.
//!
//! Given a non-negative weighting f, the algorithm repeatedly takes the
//! *minimal-index* family member M still contained in the surviving ground
//! set X, picks an element p of M where the residual weight is smallest,
//! books that residual onto M, subtracts it from every element of M, and
//! removes p from X. It stops when no member survives inside X.
//!
//! Because the built indexing lists ⪰-greater sets first, "minimal index"
//! means the algorithm always grabs a ⪯-maximal surviving member. The
//! booked vector y is always a feasible packing (y ≥ 0 and Σ y_F·1_F ≤ f),
//! so ⟨v, y⟩ is a lower bound for the packing optimum for any valuation v
//! — and v ↦ ⟨v, y⟩ is *linear*, while the true integral is only
//! superadditive. Whether the bound is tight for every valuation reduces
//! to whether it is tight on the m simple functions ζ^i; [`certify`]
//! decides exactly that by comparing against the packing program.
//!
//! On weakly union-closed families the chosen sets form a forest under
//! containment and the booked amounts telescope along it: each amount is
//! f at the element removed for the set minus f at the element removed for
//! its father. [`forest_structure`] and [`father_difference_value`] expose
//! this for verification.

use crate::lp::{solve_packing_max, LpError, LpStatus};
use crate::rational::{dot, Rational};
use crate::set_system::{ElemSet, SetSystem};
use crate::valuation::{simple_function, Valuation, Weighting};
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MongeError {
    #[error("weighting must be non-negative; entry at element {index} is negative")]
    NegativeWeighting { index: usize },
    #[error("chosen sets do not form a forest: set at position {position} has no unique minimal proper superset")]
    NotAForest { position: usize },
    #[error("internal failure: {0}")]
    Internal(String),
}

/// One round of the algorithm: which set was selected, which of its
/// elements was removed, and the residual amount booked onto the set.
#[derive(Debug, Clone)]
pub struct MongeEvent {
    pub set: usize,
    pub element: usize,
    pub amount: Rational,
}

/// Full trace of a run.
#[derive(Debug, Clone)]
pub struct MongeOutput {
    /// Selected family indices in selection order. A set is never selected
    /// twice: selection removes one of its elements from X, after which it
    /// is no longer contained in X.
    pub chosen: Vec<usize>,
    /// Booked amounts, accumulated per family member (zero off `chosen`).
    pub y: Vec<Rational>,
    /// Removed elements in removal order; distinct, at most n of them.
    pub pi: Vec<usize>,
    /// The residual weights when the run stopped.
    pub residual: Weighting,
    pub events: Vec<MongeEvent>,
}

impl MongeOutput {
    /// Lemma-level guarantee, re-checkable against the original input:
    /// y ≥ 0 and Σ y_F·1_F ≤ f.
    pub fn is_feasible_for(&self, sys: &SetSystem, f: &Weighting) -> bool {
        if self.y.iter().any(|v| v.is_negative()) {
            return false;
        }
        for e in 0..sys.n() {
            let mut load = Rational::zero();
            for (i, yv) in self.y.iter().enumerate() {
                if sys.set(i).contains(e) {
                    load += yv;
                }
            }
            if load > *f.value(e) {
                return false;
            }
        }
        true
    }
}

/// Runs the greedy packing on `f ≥ 0`.
pub fn run(sys: &Arc<SetSystem>, f: &Weighting) -> Result<MongeOutput, MongeError> {
    assert_eq!(f.len(), sys.n(), "weighting length must match the ground set");
    if let Some(index) = f.values().iter().position(|x| x.is_negative()) {
        return Err(MongeError::NegativeWeighting { index });
    }
    let mut x = ElemSet::full(sys.n());
    let mut c: Vec<Rational> = f.values().to_vec();
    let mut y = vec![Rational::zero(); sys.m()];
    let mut chosen = Vec::new();
    let mut pi = Vec::new();
    let mut events = Vec::new();

    // Minimal surviving index = a ⪯-maximal member of ℱ(X).
    while let Some(&m_idx) = sys.restrict(x).first() {
        let set = sys.set(m_idx);
        // Element of M with the smallest residual; ties go to the smallest
        // element index so runs are reproducible.
        let p = set
            .iter()
            .min_by(|&a, &b| c[a].cmp(&c[b]))
            .expect("family members are non-empty");
        let amount = c[p].clone();
        debug_assert!(!amount.is_negative(), "residuals stay non-negative");
        y[m_idx] += &amount;
        for e in set.iter() {
            c[e] -= &amount;
        }
        x.remove(p);
        chosen.push(m_idx);
        pi.push(p);
        events.push(MongeEvent { set: m_idx, element: p, amount });
    }

    let out = MongeOutput { chosen, y, pi, residual: Weighting::new(c), events };
    debug_assert!(out.is_feasible_for(sys, f), "greedy output must be a feasible packing");
    Ok(out)
}

/// The linear functional ⟨v, y⟩ attached to a run.
pub fn monge_functional(out: &MongeOutput, v: &Valuation) -> Rational {
    assert_eq!(out.y.len(), v.sys().m(), "run and valuation live on different systems");
    dot(v.values(), &out.y)
}

/// Per-simple-function comparison of the greedy value with the packing
/// optimum.
#[derive(Debug, Clone)]
pub struct CertifyEntry {
    pub index: usize,
    pub monge_value: Rational,
    pub lp_value: Rational,
}

impl CertifyEntry {
    pub fn matches(&self) -> bool {
        self.monge_value == self.lp_value
    }
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub all_match: bool,
    pub entries: Vec<CertifyEntry>,
}

/// Runs the greedy once and compares ⟨ζ^i, y⟩ with the packing optimum of
/// ζ^i for every i. If all m comparisons agree, the greedy value ⟨v, y⟩
/// equals the integral for *every* valuation on this system at this f —
/// the functional is linear in v and the simple functions form a basis.
pub fn certify(sys: &Arc<SetSystem>, f: &Weighting) -> Result<CertifyReport, MongeError> {
    let out = run(sys, f)?;
    let mut entries = Vec::with_capacity(sys.m());
    let mut all_match = true;
    for i in 0..sys.m() {
        let zi = simple_function(sys, i);
        let monge_value = monge_functional(&out, &zi);
        let lp = solve_packing_max(&zi, f).map_err(|e| match e {
            LpError::NegativeWeighting { index } => MongeError::NegativeWeighting { index },
            LpError::Internal(msg) => MongeError::Internal(msg),
        })?;
        if lp.status != LpStatus::Optimal {
            return Err(MongeError::Internal(format!(
                "packing program for simple function {i} did not report an optimum"
            )));
        }
        all_match &= monge_value == lp.value;
        entries.push(CertifyEntry { index: i, monge_value, lp_value: lp.value });
    }
    Ok(CertifyReport { all_match, entries })
}

/// Father links of the chosen sets under containment: `result[k]` is the
/// selection position of the unique ⊆-minimal proper superset of the k-th
/// chosen set, `None` for roots. Fails when a set has several minimal
/// proper supersets (then (𝓜, ⊆) is not a forest, which cannot happen on
/// weakly union-closed families).
pub fn forest_structure(
    sys: &SetSystem,
    out: &MongeOutput,
) -> Result<Vec<Option<usize>>, MongeError> {
    let q = out.chosen.len();
    let mut fathers = Vec::with_capacity(q);
    for k in 0..q {
        let sk = sys.set(out.chosen[k]);
        let supersets: Vec<usize> = (0..q)
            .filter(|&j| j != k && sk.is_subset_of(sys.set(out.chosen[j])))
            .collect();
        let minimal: Vec<usize> = supersets
            .iter()
            .copied()
            .filter(|&j| {
                !supersets.iter().any(|&l| {
                    l != j && sys.set(out.chosen[l]).is_subset_of(sys.set(out.chosen[j]))
                })
            })
            .collect();
        match minimal.len() {
            0 => fathers.push(None),
            1 => fathers.push(Some(minimal[0])),
            _ => return Err(MongeError::NotAForest { position: k }),
        }
    }
    Ok(fathers)
}

/// Evaluates Σ_k (f(p_k) − f(p_{father(k)}))·v(M_k), the telescoped form of
/// ⟨v, y⟩ on weakly union-closed families (f at the root's removed element
/// is used as-is).
pub fn father_difference_value(
    sys: &SetSystem,
    out: &MongeOutput,
    f: &Weighting,
    v: &Valuation,
) -> Result<Rational, MongeError> {
    let fathers = forest_structure(sys, out)?;
    let mut total = Rational::zero();
    for (k, father) in fathers.iter().enumerate() {
        let own = f.value(out.pi[k]).clone();
        let base = match father {
            Some(j) => f.value(out.pi[*j]).clone(),
            None => Rational::zero(),
        };
        total += (own - base) * v.value(out.chosen[k]);
    }
    Ok(total)
}
