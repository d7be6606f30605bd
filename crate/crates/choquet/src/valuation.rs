//! Numeric data on a system: weightings on the ground set, valuations on
//! the family, and set functions on the full power set.
//!
//! A valuation v assigns a rational to every family member. Three views of
//! the same data recur throughout:
//!
//! * the values v(F_0), …, v(F_{m−1}) themselves;
//! * the Möbius inverse β = v·Z⁻¹, i.e. the unique coefficients with
//!   v = Σᵢ βᵢ ζ^i in the basis of simple functions ζ^i(F) = 1 iff F ⪰ F_i;
//! * for a *density* w ≥ 0, the cumulative ŵ = w·Z with
//!   ŵ(F) = Σ_{F′ ⪯ F} w(F′).
//!
//! A valuation whose Möbius inverse is non-negative is called a *belief*;
//! beliefs are exactly the cumulatives of densities, and they are the cone
//! on which the integral behaves like a lower expectation. Every valuation
//! splits as a difference of two beliefs with disjoint Möbius supports
//! ([`Valuation::decompose`]), which is how integration is extended beyond
//! the cone.

use crate::rational::Rational;
use crate::set_system::{ElemSet, SetSystem};
use num_traits::{Signed, Zero};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ValuationError {
    #[error("expected {expected} values (one per family member), got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("density must be non-negative; value at index {index} is negative")]
    NegativeDensity { index: usize },
    #[error("order is not consecutive: F_{f} ⪯ F_{g} ⪯ F_{h} but F_{f} ∩ F_{h} ⊄ F_{g}")]
    NotConsecutive { f: usize, g: usize, h: usize },
}

/// A rational weight on every ground element — the functions that get
/// integrated. Negative entries are allowed; operations that require
/// non-negativity check for it at their own boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weighting {
    values: Vec<Rational>,
}

impl Weighting {
    pub fn new(values: Vec<Rational>) -> Self {
        Weighting { values }
    }

    pub fn zero(n: usize) -> Self {
        Weighting { values: vec![Rational::zero(); n] }
    }

    /// The constant weighting λ·1_N.
    pub fn constant(n: usize, value: &Rational) -> Self {
        Weighting { values: vec![value.clone(); n] }
    }

    /// The indicator 1_A.
    pub fn indicator(n: usize, a: ElemSet) -> Self {
        let one = Rational::from_integer(1.into());
        let values = (0..n)
            .map(|i| if a.contains(i) { one.clone() } else { Rational::zero() })
            .collect();
        Weighting { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|x| !x.is_negative())
    }

    /// Smallest entry over a non-empty set of elements.
    pub fn min_over(&self, s: ElemSet) -> Option<Rational> {
        s.iter().map(|i| self.values[i].clone()).min()
    }

    /// Smallest entry overall (None for the empty weighting).
    pub fn min_entry(&self) -> Option<Rational> {
        self.values.iter().cloned().min()
    }

    pub fn add(&self, other: &Weighting) -> Weighting {
        assert_eq!(self.len(), other.len());
        Weighting {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, by: &Rational) -> Weighting {
        Weighting { values: self.values.iter().map(|a| a * by).collect() }
    }

    /// self + λ·1_N.
    pub fn shift(&self, lambda: &Rational) -> Weighting {
        Weighting { values: self.values.iter().map(|a| a + lambda).collect() }
    }
}

/// Are f and g comonotonic, i.e. is there no pair of elements on which
/// they move in strictly opposite directions?
pub fn comonotonic(f: &Weighting, g: &Weighting) -> bool {
    assert_eq!(f.len(), g.len());
    let n = f.len();
    for i in 0..n {
        for j in 0..n {
            if f.values[i] > f.values[j] && g.values[i] < g.values[j] {
                return false;
            }
        }
    }
    true
}

/// A rational value on every member of a fixed system's family.
#[derive(Debug, Clone)]
pub struct Valuation {
    sys: Arc<SetSystem>,
    values: Vec<Rational>,
}

impl Valuation {
    pub fn new(sys: Arc<SetSystem>, values: Vec<Rational>) -> Result<Self, ValuationError> {
        if values.len() != sys.m() {
            return Err(ValuationError::LengthMismatch { expected: sys.m(), got: values.len() });
        }
        Ok(Valuation { sys, values })
    }

    pub fn zero(sys: Arc<SetSystem>) -> Self {
        let m = sys.m();
        Valuation { sys, values: vec![Rational::zero(); m] }
    }

    /// Reconstructs the valuation v = Σᵢ βᵢ ζ^i from arbitrary basis
    /// coefficients (this is the matrix product β·Z; no sign restriction).
    pub fn from_mobius(sys: Arc<SetSystem>, beta: &[Rational]) -> Result<Self, ValuationError> {
        if beta.len() != sys.m() {
            return Err(ValuationError::LengthMismatch { expected: sys.m(), got: beta.len() });
        }
        let m = sys.m();
        let mut values = vec![Rational::zero(); m];
        for (j, value) in values.iter_mut().enumerate() {
            for (i, b) in beta.iter().enumerate() {
                if sys.leq(i, j) {
                    *value += b;
                }
            }
        }
        Ok(Valuation { sys, values })
    }

    pub fn sys(&self) -> &Arc<SetSystem> {
        &self.sys
    }

    pub fn value(&self, i: usize) -> &Rational {
        &self.values[i]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Pointwise sum; both valuations must live on the same system.
    pub fn add(&self, other: &Valuation) -> Valuation {
        assert!(Arc::ptr_eq(&self.sys, &other.sys), "valuations on different systems");
        Valuation {
            sys: Arc::clone(&self.sys),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    /// β = v·Z⁻¹: the coordinates of v in the basis of simple functions.
    pub fn mobius_inverse(&self) -> Vec<Rational> {
        let m = self.sys.m();
        let mu = self.sys.mobius_matrix();
        let mut beta = vec![Rational::zero(); m];
        for (j, b) in beta.iter_mut().enumerate() {
            for (i, v) in self.values.iter().enumerate() {
                let coef = &mu[i][j];
                if !coef.is_zero() {
                    *b += v * Rational::from_integer(coef.clone());
                }
            }
        }
        beta
    }

    /// A belief is a valuation with non-negative Möbius inverse —
    /// equivalently, the cumulative of some density.
    pub fn is_belief(&self) -> bool {
        self.mobius_inverse().iter().all(|b| !b.is_negative())
    }

    /// Splits v = v⁺ − v⁻ into beliefs with disjoint Möbius supports:
    /// v⁺ collects the positive coefficients, v⁻ the negated negative ones.
    pub fn decompose(&self) -> BeliefDecomposition {
        let beta = self.mobius_inverse();
        let mut plus = vec![Rational::zero(); beta.len()];
        let mut minus = vec![Rational::zero(); beta.len()];
        for (i, b) in beta.iter().enumerate() {
            if b.is_negative() {
                minus[i] = -b.clone();
            } else {
                plus[i] = b.clone();
            }
        }
        let v_plus = Valuation::from_mobius(Arc::clone(&self.sys), &plus)
            .expect("coefficient length matches by construction");
        let v_minus = Valuation::from_mobius(Arc::clone(&self.sys), &minus)
            .expect("coefficient length matches by construction");
        BeliefDecomposition { beta, v_plus, v_minus }
    }

    /// Non-negative and ⪯-isotone?
    pub fn is_capacity(&self) -> bool {
        if !self.values.iter().all(|x| !x.is_negative()) {
            return false;
        }
        let m = self.sys.m();
        for i in 0..m {
            for j in 0..m {
                if self.sys.leq(i, j) && self.values[i] > self.values[j] {
                    return false;
                }
            }
        }
        true
    }

    /// Supermodularity relative to the order, decided by exhaustive search.
    ///
    /// The order must be consecutive. For every co-intersecting pair
    /// (F, G) there must exist a meet L and a join U inside F∪G — the
    /// empty set, with value 0, is admitted as a meet — such that
    /// L ⪯ F, G ⪯ U and v(L) + v(U) ≥ v(F) + v(G). The meet and join
    /// constraints are independent, so maximizing the two sides separately
    /// decides existence exactly.
    pub fn is_supermodular_ordered(&self) -> Result<Supermodularity, ValuationError> {
        let sys = &self.sys;
        let m = sys.m();
        for f in 0..m {
            for g in 0..m {
                if !sys.leq(f, g) {
                    continue;
                }
                for h in 0..m {
                    if sys.leq(g, h)
                        && !sys.set(f).inter(sys.set(h)).is_subset_of(sys.set(g))
                    {
                        return Err(ValuationError::NotConsecutive { f, g, h });
                    }
                }
            }
        }
        for (i, j) in co_intersecting_pairs(sys) {
            let u = sys.set(i).union(sys.set(j));
            let inside = sys.restrict(u);
            let mut best_meet = Rational::zero(); // the empty set
            for &l in &inside {
                if sys.leq(l, i) && sys.leq(l, j) && self.values[l] > best_meet {
                    best_meet = self.values[l].clone();
                }
            }
            let mut best_join: Option<Rational> = None;
            for &k in &inside {
                if sys.leq(i, k) && sys.leq(j, k) {
                    match &best_join {
                        Some(b) if *b >= self.values[k] => {}
                        _ => best_join = Some(self.values[k].clone()),
                    }
                }
            }
            let need = &self.values[i] + &self.values[j];
            match best_join {
                None => {
                    return Ok(Supermodularity::Fails {
                        i,
                        j,
                        detail: format!(
                            "co-intersecting F_{i}, F_{j} have no join inside their union"
                        ),
                    });
                }
                Some(bj) => {
                    if best_meet + bj < need {
                        return Ok(Supermodularity::Fails {
                            i,
                            j,
                            detail: format!(
                                "no meet/join pair inside the union reaches v(F_{i}) + v(F_{j})"
                            ),
                        });
                    }
                }
            }
        }
        Ok(Supermodularity::Holds)
    }
}

/// Result of the ordered supermodularity test.
#[derive(Debug, Clone)]
pub enum Supermodularity {
    Holds,
    Fails { i: usize, j: usize, detail: String },
}

impl Supermodularity {
    pub fn holds(&self) -> bool {
        matches!(self, Supermodularity::Holds)
    }
}

/// v = v⁺ − v⁻ with both parts beliefs of disjoint Möbius support.
#[derive(Debug, Clone)]
pub struct BeliefDecomposition {
    /// Möbius inverse of the original valuation.
    pub beta: Vec<Rational>,
    pub v_plus: Valuation,
    pub v_minus: Valuation,
}

/// ŵ = w·Z: cumulative sums of a density over ⪯-lower sets. Fails on
/// negative input because only densities have cumulatives in this sense.
pub fn cumulative(density: &Valuation) -> Result<Valuation, ValuationError> {
    if let Some(index) = density.values.iter().position(|x| x.is_negative()) {
        return Err(ValuationError::NegativeDensity { index });
    }
    Valuation::from_mobius(Arc::clone(&density.sys), &density.values)
}

/// The simple function ζ^i: F ↦ 1 iff F ⪰ F_i (row i of the incidence
/// matrix). Panics if `i` is out of range.
pub fn simple_function(sys: &Arc<SetSystem>, i: usize) -> Valuation {
    assert!(i < sys.m(), "simple function index {i} out of range for m = {}", sys.m());
    let one = Rational::from_integer(1.into());
    let values = (0..sys.m())
        .map(|j| if sys.leq(i, j) { one.clone() } else { Rational::zero() })
        .collect();
    Valuation { sys: Arc::clone(sys), values }
}

/// All pairs i < j such that some F_k with k ≤ i intersects both F_i and
/// F_j. (Taking k = i shows every intersecting pair qualifies.)
pub fn co_intersecting_pairs(sys: &SetSystem) -> Vec<(usize, usize)> {
    let m = sys.m();
    let mut pairs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            let linked = (0..=i).any(|k| {
                sys.set(k).intersects(sys.set(i)) && sys.set(k).intersects(sys.set(j))
            });
            if linked {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// A rational function on all 2^n subsets of a ground set, vanishing on ∅.
/// Subsets are indexed by bitmask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetFunction {
    n: usize,
    values: Vec<Rational>,
}

impl SetFunction {
    /// `values[mask]` for every mask below 2^n; `values[0]` must be zero.
    pub fn new(n: usize, values: Vec<Rational>) -> Result<Self, ValuationError> {
        let expected = 1usize
            .checked_shl(n as u32)
            .expect("ground set too large for a power-set table");
        if values.len() != expected {
            return Err(ValuationError::LengthMismatch { expected, got: values.len() });
        }
        assert!(values[0].is_zero(), "a set function must vanish on the empty set");
        Ok(SetFunction { n, values })
    }

    pub fn zero(n: usize) -> Self {
        SetFunction { n, values: vec![Rational::zero(); 1 << n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: ElemSet) -> &Rational {
        &self.values[s.bits() as usize]
    }

    pub fn set_value(&mut self, s: ElemSet, value: Rational) {
        assert!(!s.is_empty() || value.is_zero());
        self.values[s.bits() as usize] = value;
    }

    /// First pair S ⊆ T with value(S) > value(T), if any.
    pub fn monotone_violation(&self) -> Option<(ElemSet, ElemSet)> {
        let size = self.values.len() as u64;
        for s in 0..size {
            for t in 0..size {
                if s & !t == 0 && self.values[s as usize] > self.values[t as usize] {
                    return Some((ElemSet::from_bits(s), ElemSet::from_bits(t)));
                }
            }
        }
        None
    }
}

/// Exhaustive supermodularity test on the power set:
/// value(S∪T) + value(S∩T) ≥ value(S) + value(T) for all pairs.
/// Returns the first violating pair, `None` when supermodular.
pub fn is_supermodular_boolean(vhat: &SetFunction) -> Option<(ElemSet, ElemSet)> {
    let size = vhat.values.len() as u64;
    for s in 0..size {
        for t in s..size {
            let lhs = &vhat.values[(s | t) as usize] + &vhat.values[(s & t) as usize];
            let rhs = &vhat.values[s as usize] + &vhat.values[t as usize];
            if lhs < rhs {
                return Some((ElemSet::from_bits(s), ElemSet::from_bits(t)));
            }
        }
    }
    None
}
