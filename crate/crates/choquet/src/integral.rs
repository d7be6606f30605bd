//! The integral itself, in its several computable forms.
//!
//! For a belief v (non-negative Möbius inverse) and f ≥ 0 the integral is
//! *defined* as the core minimum min{⟨f, x⟩ : x ≥ 0, x(F) ≥ v(F) ∀F},
//! which by duality equals the packing maximum. A general valuation is
//! integrated through its decomposition v = v⁺ − v⁻ into beliefs.
//!
//! Negative weightings are handled by shifting: pick λ ≥ 0 with
//! f + λ·1_N ≥ 0 and set ∫f = ∫(f + λ·1_N) − λ·∫1_N. The result is
//! independent of the chosen λ exactly when the valuation treats constant
//! shifts additively ([`check_strong`]); [`integral_shifted`] recomputes at
//! λ + 1 and flags any disagreement rather than assuming that property.
//!
//! On containment-ordered systems the valuation extends to the whole power
//! set ([`extension_hat`]), where the familiar layer-cake sum
//! ([`classical_integral`]) and the Möbius min-form
//! ([`mobius_form_integral`]) become available; on weakly union-closed
//! families all of these agree with the core definition. Set algebras get
//! the probability-specific form [`lehrer_integral`] and the induced
//! capacity.

use crate::lp::{solve_core_min, LpError, LpStatus};
use crate::rational::Rational;
use crate::set_system::ElemSet;
use crate::valuation::{SetFunction, Valuation, Weighting};
use crate::monge::{monge_functional, run as monge_run, MongeError};
use num_traits::{Signed, Zero};
use thiserror::Error;

/// Largest ground set for which power-set tables are materialized.
pub const MAX_EXTENSION_GROUND: usize = 16;

#[derive(Debug, Error)]
pub enum ChoquetError {
    #[error("weighting must be non-negative; entry at element {index} is negative")]
    NegativeWeighting { index: usize },
    #[error("shift must be non-negative")]
    NegativeShift,
    #[error("operation requires the order to coincide with containment")]
    NotContainmentOrder,
    #[error("not an algebra: {0}")]
    NotAnAlgebra(String),
    #[error("not a probability: {0}")]
    NotAProbability(String),
    #[error("ground set of size {n} exceeds the power-set limit {limit}")]
    GroundTooLarge { n: usize, limit: usize },
    #[error("internal failure: {0}")]
    Internal(String),
}

impl From<LpError> for ChoquetError {
    fn from(e: LpError) -> Self {
        match e {
            LpError::NegativeWeighting { index } => ChoquetError::NegativeWeighting { index },
            LpError::Internal(msg) => ChoquetError::Internal(msg),
        }
    }
}

impl From<MongeError> for ChoquetError {
    fn from(e: MongeError) -> Self {
        match e {
            MongeError::NegativeWeighting { index } => ChoquetError::NegativeWeighting { index },
            other => ChoquetError::Internal(other.to_string()),
        }
    }
}

/// How a reported value was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lp,
    Monge,
    Classical,
    MobiusForm,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lp => "lp",
            Method::Monge => "monge",
            Method::Classical => "classical",
            Method::MobiusForm => "mobius_form",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IntegralResult {
    pub value: Rational,
    /// Optimal packing vector over the family, when the computation
    /// produces one (single-belief LP solves and greedy runs do; the
    /// two-sided decomposition does not).
    pub dual_y: Option<Vec<Rational>>,
    pub method: Method,
}

fn require_nonnegative(f: &Weighting) -> Result<(), ChoquetError> {
    match f.values().iter().position(|x| x.is_negative()) {
        Some(index) => Err(ChoquetError::NegativeWeighting { index }),
        None => Ok(()),
    }
}

fn optimal_value(
    v: &Valuation,
    f: &Weighting,
) -> Result<(Rational, Vec<Rational>), ChoquetError> {
    let r = solve_core_min(v, f)?;
    if r.status != LpStatus::Optimal {
        return Err(ChoquetError::Internal(format!(
            "core program reported {:?} for a non-negative weighting",
            r.status
        )));
    }
    Ok((r.value, r.dual_y))
}

/// The integral ∫f dv for f ≥ 0: core minimum for beliefs, extended to
/// arbitrary valuations by ∫f dv⁺ − ∫f dv⁻ over the sign decomposition.
pub fn integral(v: &Valuation, f: &Weighting) -> Result<IntegralResult, ChoquetError> {
    require_nonnegative(f)?;
    if v.is_belief() {
        let (value, dual_y) = optimal_value(v, f)?;
        return Ok(IntegralResult { value, dual_y: Some(dual_y), method: Method::Lp });
    }
    let d = v.decompose();
    let (plus, _) = optimal_value(&d.v_plus, f)?;
    let (minus, _) = optimal_value(&d.v_minus, f)?;
    Ok(IntegralResult { value: plus - minus, dual_y: None, method: Method::Lp })
}

/// The greedy value ⟨v, y⟩ as an integral result. This equals the true
/// integral exactly when the run certifies at f (always the case on
/// weakly union-closed families and intersection systems); callers that
/// cannot rely on a theorem should run [`crate::monge::certify`] first.
pub fn integral_monge(v: &Valuation, f: &Weighting) -> Result<IntegralResult, ChoquetError> {
    let out = monge_run(v.sys(), f)?;
    let value = monge_functional(&out, v);
    Ok(IntegralResult { value, dual_y: Some(out.y), method: Method::Monge })
}

/// Integral of a possibly negative weighting via the shift rule, with the
/// shift-independence of the result checked rather than assumed.
#[derive(Debug, Clone)]
pub struct ShiftedIntegral {
    pub value: Rational,
    /// The shift actually used: max(0, −min f).
    pub lambda: Rational,
    /// True when recomputing at λ + 1 gave a different value — the
    /// valuation does not price constant shifts additively, so no
    /// shift-independent integral of this f exists.
    pub shift_dependent: bool,
}

pub fn integral_shifted(v: &Valuation, f: &Weighting) -> Result<ShiftedIntegral, ChoquetError> {
    let zero = Rational::zero();
    let lambda = match f.min_entry() {
        Some(min) if min.is_negative() => -min,
        _ => zero.clone(),
    };
    let ones = Weighting::constant(f.len(), &Rational::from_integer(1.into()));
    let unit = integral(v, &ones)?.value;
    let at = |shift: &Rational| -> Result<Rational, ChoquetError> {
        let shifted = f.shift(shift);
        Ok(integral(v, &shifted)?.value - shift * &unit)
    };
    let value = at(&lambda)?;
    let recheck = at(&(&lambda + Rational::from_integer(1.into())))?;
    Ok(ShiftedIntegral { shift_dependent: recheck != value, value, lambda })
}

/// Does v price the shifted weighting additively at this (f, λ):
/// ∫(f + λ·1_N) dv = ∫f dv + λ·∫1_N dv?
pub fn check_strong(v: &Valuation, f: &Weighting, lambda: &Rational) -> Result<bool, ChoquetError> {
    require_nonnegative(f)?;
    if lambda.is_negative() {
        return Err(ChoquetError::NegativeShift);
    }
    let ones = Weighting::constant(f.len(), &Rational::from_integer(1.into()));
    let lhs = integral(v, &f.shift(lambda))?.value;
    let rhs = integral(v, f)?.value + lambda * integral(v, &ones)?.value;
    Ok(lhs == rhs)
}

/// Layer-cake sum on the power set: with the distinct values of f sorted
/// descending as α_1 > … > α_k (and α_{k+1} := 0), the integral is
/// Σ_t (α_t − α_{t+1}) · v̂({i : f_i ≥ α_t}). Indicator weightings
/// integrate to the set function itself.
pub fn classical_integral(vhat: &SetFunction, f: &Weighting) -> Result<Rational, ChoquetError> {
    require_nonnegative(f)?;
    assert_eq!(vhat.n(), f.len(), "set function and weighting sizes differ");
    let mut levels: Vec<Rational> = f.values().to_vec();
    levels.sort();
    levels.dedup();
    levels.reverse();
    let mut total = Rational::zero();
    let mut prev: Option<ElemSet> = None;
    for (t, alpha) in levels.iter().enumerate() {
        let next = levels.get(t + 1).cloned().unwrap_or_else(Rational::zero);
        let level_set = ElemSet::from_indices(
            (0..f.len()).filter(|&i| f.value(i) >= alpha),
        );
        debug_assert!(prev.is_none_or(|p| p.is_subset_of(level_set)));
        prev = Some(level_set);
        total += (alpha - next) * vhat.value(level_set);
    }
    Ok(total)
}

/// Σ_i β_i · min_{e ∈ F_i} f(e): the Möbius min-form, meaningful on
/// containment-ordered systems where each simple function integrates to
/// the minimum over its set.
pub fn mobius_form_integral(
    v: &Valuation,
    f: &Weighting,
) -> Result<Rational, ChoquetError> {
    require_nonnegative(f)?;
    let sys = v.sys();
    if !sys.is_containment_ordered() {
        return Err(ChoquetError::NotContainmentOrder);
    }
    assert_eq!(f.len(), sys.n());
    let beta = v.mobius_inverse();
    let mut total = Rational::zero();
    for (i, b) in beta.iter().enumerate() {
        if !b.is_zero() {
            let min = f.min_over(sys.set(i)).expect("family members are non-empty");
            total += b * min;
        }
    }
    Ok(total)
}

/// Extends a valuation on a containment-ordered system to the whole power
/// set: v̂(S) = Σ_{F_i ⊆ S} β_i. The extension agrees with v on family
/// members. On weakly union-closed families v̂(S) also equals the sum of
/// v over the ⊆-maximal members inside S; that identity is re-checked
/// here for every S as an internal consistency guarantee.
pub fn extension_hat(v: &Valuation) -> Result<SetFunction, ChoquetError> {
    let sys = v.sys();
    if !sys.is_containment_ordered() {
        return Err(ChoquetError::NotContainmentOrder);
    }
    let n = sys.n();
    if n > MAX_EXTENSION_GROUND {
        return Err(ChoquetError::GroundTooLarge { n, limit: MAX_EXTENSION_GROUND });
    }
    let beta = v.mobius_inverse();
    let size = 1u64 << n;
    let mut values = Vec::with_capacity(size as usize);
    for mask in 0..size {
        let s = ElemSet::from_bits(mask);
        let mut total = Rational::zero();
        for (i, b) in beta.iter().enumerate() {
            if sys.set(i).is_subset_of(s) {
                total += b;
            }
        }
        values.push(total);
    }
    let vhat = SetFunction::new(n, values)
        .map_err(|e| ChoquetError::Internal(e.to_string()))?;
    if sys.is_weakly_union_closed() {
        for mask in 0..size {
            let s = ElemSet::from_bits(mask);
            let by_maximal: Rational =
                sys.maximal_in(s).into_iter().map(|i| v.value(i).clone()).sum();
            if by_maximal != *vhat.value(s) {
                return Err(ChoquetError::Internal(format!(
                    "extension mismatch at {s:?}: Möbius sum vs maximal-member sum"
                )));
            }
        }
    }
    Ok(vhat)
}

/// Atoms of an algebra system together with the probability's masses,
/// after validating both structures.
fn algebra_atoms(p: &Valuation) -> Result<Vec<usize>, ChoquetError> {
    let sys = p.sys();
    if !sys.is_containment_ordered() {
        return Err(ChoquetError::NotAnAlgebra(
            "the order must coincide with containment".into(),
        ));
    }
    let report = sys.classify();
    let atoms = match report.algebra.atoms() {
        Some(atoms) => atoms.to_vec(),
        None => {
            let detail = match &report.algebra {
                crate::set_system::AlgebraCheck::Fails { detail, .. } => detail.clone(),
                crate::set_system::AlgebraCheck::Holds { .. } => unreachable!(),
            };
            return Err(ChoquetError::NotAnAlgebra(detail));
        }
    };
    if let Some(i) = p.values().iter().position(|x| x.is_negative()) {
        return Err(ChoquetError::NotAProbability(format!(
            "negative mass on member {i}"
        )));
    }
    let full = sys
        .index_of_set(ElemSet::full(sys.n()))
        .expect("an algebra contains the ground set");
    if *p.value(full) != Rational::from_integer(1.into()) {
        return Err(ChoquetError::NotAProbability(
            "total mass of the ground set is not 1".into(),
        ));
    }
    for i in 0..sys.m() {
        let atom_sum: Rational = atoms
            .iter()
            .filter(|&&a| sys.set(a).is_subset_of(sys.set(i)))
            .map(|&a| p.value(a).clone())
            .sum();
        if atom_sum != *p.value(i) {
            return Err(ChoquetError::NotAProbability(format!(
                "member {i} is not the sum of its atoms"
            )));
        }
    }
    Ok(atoms)
}

/// Lower integral of f ≥ 0 against a probability on a set algebra:
/// Σ over atoms B of P(B) · min_{e ∈ B} f(e). This is the optimum of the
/// packing program over the algebra, reached by loading each atom with
/// its minimum.
pub fn lehrer_integral(p: &Valuation, f: &Weighting) -> Result<Rational, ChoquetError> {
    require_nonnegative(f)?;
    assert_eq!(f.len(), p.sys().n());
    let atoms = algebra_atoms(p)?;
    let mut total = Rational::zero();
    for a in atoms {
        let min = f.min_over(p.sys().set(a)).expect("atoms are non-empty");
        total += p.value(a) * min;
    }
    Ok(total)
}

/// The capacity a probability on an algebra induces on arbitrary subsets:
/// v(S) = max{P(A) : A in the algebra, A ⊆ S}, computed literally from
/// that definition (the empty set contributes 0). It coincides with the
/// Möbius extension of P.
pub fn induced_capacity(p: &Valuation) -> Result<SetFunction, ChoquetError> {
    let _ = algebra_atoms(p)?;
    let sys = p.sys();
    let n = sys.n();
    if n > MAX_EXTENSION_GROUND {
        return Err(ChoquetError::GroundTooLarge { n, limit: MAX_EXTENSION_GROUND });
    }
    let size = 1u64 << n;
    let mut values = Vec::with_capacity(size as usize);
    for mask in 0..size {
        let s = ElemSet::from_bits(mask);
        let mut best = Rational::zero();
        for i in 0..sys.m() {
            if sys.set(i).is_subset_of(s) && *p.value(i) > best {
                best = p.value(i).clone();
            }
        }
        values.push(best);
    }
    SetFunction::new(n, values).map_err(|e| ChoquetError::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use crate::set_system::{GroundSet, OrderSpec, SetSystem};
    use std::sync::Arc;

    fn w(xs: &[i64]) -> Weighting {
        Weighting::new(xs.iter().map(|&x| rat(x)).collect())
    }

    fn rats(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    fn boolean2() -> Arc<SetSystem> {
        let ground = GroundSet::numbered(2).unwrap();
        let family = vec![
            ElemSet::from_indices([0]),
            ElemSet::from_indices([1]),
            ElemSet::from_indices([0, 1]),
        ];
        SetSystem::build(ground, family, OrderSpec::Containment).unwrap()
    }

    #[test]
    fn belief_integral_is_core_minimum_with_certificate() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[5, 2, 3])).unwrap();
        let r = integral(&v, &w(&[1, 2])).unwrap();
        assert_eq!(r.value, rat(8));
        assert_eq!(r.method, Method::Lp);
        assert!(r.dual_y.is_some());
    }

    #[test]
    fn non_belief_integrates_through_the_decomposition() {
        let sys = boolean2();
        // v = 2ζ{1} + 3ζ{2} − 4ζ{12}.
        let v = Valuation::new(Arc::clone(&sys), rats(&[1, 2, 3])).unwrap();
        let r = integral(&v, &w(&[1, 2])).unwrap();
        assert_eq!(r.value, rat(4)); // 2·1 + 3·2 − 4·min(1,2)
        assert!(r.dual_y.is_none());
    }

    #[test]
    fn monge_route_agrees_on_a_certified_system() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[1, 2, 3])).unwrap();
        let f = w(&[1, 2]);
        let lp = integral(&v, &f).unwrap();
        let greedy = integral_monge(&v, &f).unwrap();
        assert_eq!(lp.value, greedy.value);
        assert_eq!(greedy.method, Method::Monge);
    }

    #[test]
    fn classical_integral_telescopes_levels() {
        // Additive v̂ on n = 2: v̂({1}) = 2, v̂({2}) = 3, v̂(N) = 5.
        let vhat = SetFunction::new(2, rats(&[0, 2, 3, 5])).unwrap();
        assert_eq!(classical_integral(&vhat, &w(&[1, 2])).unwrap(), rat(8));
        // Indicators integrate to the set value.
        for mask in 1u64..4 {
            let ind = Weighting::indicator(2, ElemSet::from_bits(mask));
            assert_eq!(
                classical_integral(&vhat, &ind).unwrap(),
                *vhat.value(ElemSet::from_bits(mask))
            );
        }
        // Constants integrate to the constant times v̂(N).
        let c = Weighting::constant(2, &ratio(7, 2));
        assert_eq!(classical_integral(&vhat, &c).unwrap(), ratio(35, 2));
    }

    #[test]
    fn mobius_form_matches_lp_on_containment_beliefs() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[5, 2, 3])).unwrap();
        let f = w(&[1, 2]);
        assert_eq!(mobius_form_integral(&v, &f).unwrap(), rat(8));
        // Non-containment order is refused.
        let ground = GroundSet::numbered(2).unwrap();
        let family = vec![ElemSet::from_indices([0]), ElemSet::from_indices([1])];
        let chain = SetSystem::build(ground, family, OrderSpec::Pairs(vec![(0, 1)])).unwrap();
        let v2 = Valuation::new(Arc::clone(&chain), rats(&[1, 1])).unwrap();
        assert!(matches!(
            mobius_form_integral(&v2, &w(&[1, 1])),
            Err(ChoquetError::NotContainmentOrder)
        ));
    }

    #[test]
    fn extension_agrees_with_valuation_on_members() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[5, 2, 3])).unwrap();
        let vhat = extension_hat(&v).unwrap();
        for i in 0..sys.m() {
            assert_eq!(vhat.value(sys.set(i)), v.value(i));
        }
        assert!(vhat.value(ElemSet::EMPTY).is_zero());
    }

    #[test]
    fn extension_of_the_non_monotone_fixture() {
        let sys = crate::set_system::tests::non_monotone_fixture();
        // 1 on every member containing {1,2} or {3,5}, 0 elsewhere — the
        // smallest capacity with v(N) = v({1,2}) = v({3,5}) = 1.
        let pair12 = ElemSet::from_indices([0, 1]);
        let pair35 = ElemSet::from_indices([2, 4]);
        let mut vals = vec![Rational::zero(); sys.m()];
        for (i, val) in vals.iter_mut().enumerate() {
            let s = sys.set(i);
            if pair12.is_subset_of(s) || pair35.is_subset_of(s) {
                *val = rat(1);
            }
        }
        let v = Valuation::new(Arc::clone(&sys), vals).unwrap();
        assert!(v.is_capacity());
        let vhat = extension_hat(&v).unwrap();
        // {1,2,3,5} holds two disjoint maximal members worth 1 each, while
        // the full set holds only the top worth 1: the extension is not
        // monotone even though v is a capacity.
        assert_eq!(*vhat.value(ElemSet::from_indices([0, 1, 2, 4])), rat(2));
        assert_eq!(*vhat.value(ElemSet::full(5)), rat(1));
        let (s, t) = vhat.monotone_violation().expect("extension must not be monotone");
        assert!(s.is_subset_of(t));
    }

    #[test]
    fn shifted_integral_of_additive_valuation_is_the_expectation() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[5, 2, 3])).unwrap();
        let f = Weighting::new(rats(&[-1, 2]));
        let r = integral_shifted(&v, &f).unwrap();
        assert_eq!(r.lambda, rat(1));
        assert_eq!(r.value, rat(4)); // −1·2 + 2·3
        assert!(!r.shift_dependent);
        // Non-negative input shifts by zero and matches the plain integral.
        let g = w(&[1, 2]);
        let rg = integral_shifted(&v, &g).unwrap();
        assert_eq!(rg.lambda, rat(0));
        assert_eq!(rg.value, integral(&v, &g).unwrap().value);
    }

    #[test]
    fn strongness_holds_for_beliefs_on_the_boolean_square() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[5, 2, 3])).unwrap();
        assert!(check_strong(&v, &w(&[1, 2]), &rat(3)).unwrap());
        assert!(check_strong(&v, &w(&[1, 2]), &rat(0)).unwrap());
        assert!(matches!(
            check_strong(&v, &w(&[1, 2]), &rat(-1)),
            Err(ChoquetError::NegativeShift)
        ));
    }

    fn atom_algebra() -> Arc<SetSystem> {
        // Atoms {1} and {2,3}: algebra {∅, 1, 23, 123} minus ∅.
        let ground = GroundSet::numbered(3).unwrap();
        let family = vec![
            ElemSet::from_indices([0]),
            ElemSet::from_indices([1, 2]),
            ElemSet::from_indices([0, 1, 2]),
        ];
        SetSystem::build(ground, family, OrderSpec::Containment).unwrap()
    }

    #[test]
    fn lehrer_integral_on_a_two_atom_algebra() {
        let sys = atom_algebra();
        let p = Valuation::new(
            Arc::clone(&sys),
            vec![rat(1), ratio(2, 3), ratio(1, 3)],
        )
        .unwrap();
        // Built order: 123, 23, 1 — so P = (1, 2/3, 1/3).
        assert_eq!(sys.set(0), ElemSet::full(3));
        let f = w(&[6, 3, 9]);
        assert_eq!(lehrer_integral(&p, &f).unwrap(), rat(4)); // 1/3·6 + 2/3·3
        // Agreement with the core definition.
        assert_eq!(integral(&p, &f).unwrap().value, rat(4));
    }

    #[test]
    fn induced_capacity_equals_the_extension() {
        let sys = atom_algebra();
        let p = Valuation::new(
            Arc::clone(&sys),
            vec![rat(1), ratio(2, 3), ratio(1, 3)],
        )
        .unwrap();
        let induced = induced_capacity(&p).unwrap();
        let vhat = extension_hat(&p).unwrap();
        assert_eq!(induced, vhat);
        // {1,2} contains the atom {1} but splits {2,3}.
        assert_eq!(*induced.value(ElemSet::from_indices([0, 1])), ratio(1, 3));
    }

    #[test]
    fn algebra_and_probability_validation() {
        // {12, 23, 123} lacks the complement of 12.
        let ground = GroundSet::numbered(3).unwrap();
        let family = vec![
            ElemSet::from_indices([0, 1]),
            ElemSet::from_indices([1, 2]),
            ElemSet::from_indices([0, 1, 2]),
        ];
        let not_algebra = SetSystem::build(ground, family, OrderSpec::Containment).unwrap();
        let p = Valuation::new(Arc::clone(&not_algebra), rats(&[1, 1, 1])).unwrap();
        assert!(matches!(
            lehrer_integral(&p, &w(&[1, 1, 1])),
            Err(ChoquetError::NotAnAlgebra(_))
        ));

        let sys = atom_algebra();
        // Masses that are not additive across atoms.
        let bad = Valuation::new(
            Arc::clone(&sys),
            vec![rat(1), ratio(2, 3), ratio(1, 2)],
        )
        .unwrap();
        assert!(matches!(
            lehrer_integral(&bad, &w(&[1, 1, 1])),
            Err(ChoquetError::NotAProbability(_))
        ));
        // Total mass must be exactly one.
        let unnormalized = Valuation::new(
            Arc::clone(&sys),
            vec![rat(2), ratio(2, 3), ratio(4, 3)],
        )
        .unwrap();
        assert!(matches!(
            lehrer_integral(&unnormalized, &w(&[1, 1, 1])),
            Err(ChoquetError::NotAProbability(_))
        ));
    }

    #[test]
    fn negative_weightings_are_rejected_at_the_boundary() {
        let sys = boolean2();
        let v = Valuation::new(Arc::clone(&sys), rats(&[5, 2, 3])).unwrap();
        let f = Weighting::new(rats(&[1, -2]));
        assert!(matches!(
            integral(&v, &f),
            Err(ChoquetError::NegativeWeighting { index: 1 })
        ));
        let vhat = SetFunction::new(2, rats(&[0, 2, 3, 5])).unwrap();
        assert!(matches!(
            classical_integral(&vhat, &f),
            Err(ChoquetError::NegativeWeighting { index: 1 })
        ));
    }
}
