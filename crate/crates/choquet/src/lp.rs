//! The two dual linear programs that define the integral, solved exactly.
//!
//! For a system (ℱ, ⪯), a valuation v and a non-negative weighting f:
//!
//! * the *core program* minimizes ⟨f, x⟩ over x ∈ ℝ^N with x ≥ 0 and
//!   x(F) ≥ v(F) for every member F;
//! * the *packing program* maximizes ⟨v, y⟩ over y ∈ ℝ^ℱ with y ≥ 0 and
//!   Σ_F y_F·1_F ≤ f.
//!
//! They are dual to each other, and for f ≥ 0 both always attain a common
//! optimal value. Every solve returns both certificates — the element
//! vector x and the family vector y — and re-checks feasibility and the
//! equality ⟨f, x⟩ = ⟨v, y⟩ = value before returning, so a successful
//! result is self-certifying.
//!
//! Arithmetic is exact rational throughout. The solver is a dense-tableau
//! two-phase simplex with Bland's rule (smallest eligible index enters; the
//! ratio test breaks ties toward the smallest basic index), which excludes
//! cycling, so termination needs no perturbation or tolerance machinery.

use crate::rational::{dot, Rational};
use crate::valuation::{Valuation, Weighting};
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Solution of either program, reported in a fixed orientation:
/// `primal_x` lives on ground elements, `dual_y` on family members,
/// regardless of which of the two programs was solved.
#[derive(Debug, Clone)]
pub struct LpResult {
    pub status: LpStatus,
    pub value: Rational,
    pub primal_x: Vec<Rational>,
    pub dual_y: Vec<Rational>,
}

#[derive(Debug, Error)]
pub enum LpError {
    #[error("weighting must be non-negative; entry at element {index} is negative")]
    NegativeWeighting { index: usize },
    #[error("internal solver failure: {0}")]
    Internal(String),
}

fn require_nonnegative(f: &Weighting) -> Result<(), LpError> {
    match f.values().iter().position(|x| x.is_negative()) {
        Some(index) => Err(LpError::NegativeWeighting { index }),
        None => Ok(()),
    }
}

/// Minimizes ⟨f, x⟩ over the (outer) core {x ≥ 0 : x(F) ≥ v(F) ∀F}.
///
/// `primal_x` is an optimal core point, `dual_y` an optimal packing
/// vector; both are verified exactly before return.
pub fn solve_core_min(v: &Valuation, f: &Weighting) -> Result<LpResult, LpError> {
    let sys = v.sys();
    assert_eq!(f.len(), sys.n(), "weighting length must match the ground set");
    require_nonnegative(f)?;
    let n = sys.n();
    let m = sys.m();

    // max (−f)·x subject to −x(F) ≤ −v(F); the minimum is the negated optimum.
    let objective: Vec<Rational> = f.values().iter().map(|c| -c.clone()).collect();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let set = sys.set(i);
        let row: Vec<Rational> = (0..n)
            .map(|e| if set.contains(e) { -Rational::from_integer(1.into()) } else { Rational::zero() })
            .collect();
        rows.push(row);
        rhs.push(-v.value(i).clone());
    }
    let outcome = simplex_max(&objective, &rows, &rhs)?;
    let result = LpResult {
        status: outcome.status,
        value: -outcome.value,
        primal_x: outcome.primal,
        dual_y: outcome.row_duals,
    };
    if result.status == LpStatus::Optimal {
        certify(v, f, &result)?;
    }
    Ok(result)
}

/// Maximizes ⟨v, y⟩ over the packings {y ≥ 0 : Σ_F y_F·1_F ≤ f}.
///
/// Solved directly in packing form (never by detouring through the core
/// program). `dual_y` is the optimal packing, `primal_x` the optimal core
/// point read off the row prices; both are verified exactly.
pub fn solve_packing_max(v: &Valuation, f: &Weighting) -> Result<LpResult, LpError> {
    let sys = v.sys();
    assert_eq!(f.len(), sys.n(), "weighting length must match the ground set");
    require_nonnegative(f)?;
    let n = sys.n();
    let m = sys.m();

    let objective: Vec<Rational> = v.values().to_vec();
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for e in 0..n {
        let row: Vec<Rational> = (0..m)
            .map(|i| {
                if sys.set(i).contains(e) {
                    Rational::from_integer(1.into())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        rows.push(row);
        rhs.push(f.value(e).clone());
    }
    let outcome = simplex_max(&objective, &rows, &rhs)?;
    let result = LpResult {
        status: outcome.status,
        value: outcome.value,
        primal_x: outcome.row_duals,
        dual_y: outcome.primal,
    };
    if result.status == LpStatus::Optimal {
        certify(v, f, &result)?;
    }
    Ok(result)
}

/// Exact post-check of an optimal result: both certificates feasible and
/// ⟨f, x⟩ = ⟨v, y⟩ = value. Any failure is a solver bug, not bad input.
fn certify(v: &Valuation, f: &Weighting, r: &LpResult) -> Result<(), LpError> {
    let sys = v.sys();
    if r.primal_x.iter().any(|x| x.is_negative()) {
        return Err(LpError::Internal("negative entry in core certificate".into()));
    }
    if r.dual_y.iter().any(|y| y.is_negative()) {
        return Err(LpError::Internal("negative entry in packing certificate".into()));
    }
    for i in 0..sys.m() {
        let total: Rational = sys.set(i).iter().map(|e| r.primal_x[e].clone()).sum();
        if total < *v.value(i) {
            return Err(LpError::Internal(format!("core constraint {i} violated")));
        }
    }
    for e in 0..sys.n() {
        let mut load = Rational::zero();
        for i in 0..sys.m() {
            if sys.set(i).contains(e) {
                load += &r.dual_y[i];
            }
        }
        if load > *f.value(e) {
            return Err(LpError::Internal(format!("packing constraint at element {e} violated")));
        }
    }
    if dot(f.values(), &r.primal_x) != r.value || dot(v.values(), &r.dual_y) != r.value {
        return Err(LpError::Internal("certificate values disagree with the optimum".into()));
    }
    Ok(())
}

struct SimplexOutcome {
    status: LpStatus,
    value: Rational,
    primal: Vec<Rational>,
    row_duals: Vec<Rational>,
}

/// Dense-tableau simplex for max c·z s.t. A·z ≤ b, z ≥ 0, with b of any
/// sign (phase 1 introduces artificials for negated rows). The objective
/// row stores reduced costs ζ_j = c_B·B⁻¹·A_j − c_j, so a column may
/// improve while ζ_j < 0 and optimality is ζ ≥ 0.
fn simplex_max(
    c: &[Rational],
    a: &[Vec<Rational>],
    b: &[Rational],
) -> Result<SimplexOutcome, LpError> {
    let nv = c.len();
    let nr = a.len();
    let zero = Rational::zero();
    let one = Rational::from_integer(1.into());

    // Rows extended with slack identity; rows with negative rhs are
    // negated (their slack keeps coefficient −1) and get an artificial.
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(nr);
    let mut rhs: Vec<Rational> = Vec::with_capacity(nr);
    let mut needs_artificial = Vec::new();
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), nv, "ragged constraint matrix");
        let mut t: Vec<Rational> = row.clone();
        t.extend((0..nr).map(|k| if k == i { one.clone() } else { zero.clone() }));
        let mut r = b[i].clone();
        if r.is_negative() {
            for entry in t.iter_mut() {
                *entry = -entry.clone();
            }
            r = -r;
            needs_artificial.push(i);
        }
        tab.push(t);
        rhs.push(r);
    }
    let na = needs_artificial.len();
    let width = nv + nr + na;
    let mut basis: Vec<usize> = (0..nr).map(|i| nv + i).collect();
    for (k, &i) in needs_artificial.iter().enumerate() {
        for (ii, row) in tab.iter_mut().enumerate() {
            row.push(if ii == i { one.clone() } else { zero.clone() });
        }
        basis[i] = nv + nr + k;
    }

    if na > 0 {
        // Phase 1: maximize −Σ artificials.
        let mut cost = vec![zero.clone(); width];
        for k in 0..na {
            cost[nv + nr + k] = -one.clone();
        }
        let (value, ..) = run_pivots(&mut tab, &mut rhs, &mut basis, &cost)?;
        if value.is_negative() {
            return Ok(SimplexOutcome {
                status: LpStatus::Infeasible,
                value: Rational::zero(),
                primal: vec![Rational::zero(); nv],
                row_duals: vec![Rational::zero(); nr],
            });
        }
        // Drive leftover artificials out of the basis (they sit at value 0);
        // a row with no real column left is redundant and is dropped.
        let mut r = 0;
        while r < tab.len() {
            if basis[r] >= nv + nr {
                if let Some(j) = (0..nv + nr).find(|&j| !tab[r][j].is_zero()) {
                    pivot(&mut tab, &mut rhs, &mut basis, r, j);
                } else {
                    tab.remove(r);
                    rhs.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
            r += 1;
        }
        for row in tab.iter_mut() {
            row.truncate(nv + nr);
        }
    }

    // Phase 2 on the real objective.
    let mut cost = vec![zero.clone(); nv + nr];
    cost[..nv].clone_from_slice(c);
    let (value, unbounded) = run_pivots(&mut tab, &mut rhs, &mut basis, &cost)?;
    if unbounded {
        return Ok(SimplexOutcome {
            status: LpStatus::Unbounded,
            value: Rational::zero(),
            primal: vec![Rational::zero(); nv],
            row_duals: vec![Rational::zero(); nr],
        });
    }

    let mut primal = vec![Rational::zero(); nv];
    for (r, &bv) in basis.iter().enumerate() {
        if bv < nv {
            primal[bv] = rhs[r].clone();
        }
    }
    // Reduced cost of slack i equals the dual price of original row i
    // (the sign flip for negated rows cancels against the flipped slack).
    let obj = objective_row(&tab, &basis, &cost);
    let row_duals = (0..nr).map(|i| obj[nv + i].clone()).collect();
    Ok(SimplexOutcome { status: LpStatus::Optimal, value, primal, row_duals })
}

/// Reduced-cost row ζ_j = c_B·B⁻¹·A_j − c_j for the current basis.
fn objective_row(tab: &[Vec<Rational>], basis: &[usize], cost: &[Rational]) -> Vec<Rational> {
    let width = cost.len();
    let mut obj = vec![Rational::zero(); width];
    for (j, o) in obj.iter_mut().enumerate() {
        for (r, row) in tab.iter().enumerate() {
            let cb = &cost[basis[r]];
            if !cb.is_zero() && !row[j].is_zero() {
                *o += cb * &row[j];
            }
        }
        *o -= &cost[j];
    }
    obj
}

/// Runs Bland pivots to optimality. Returns (objective value, unbounded).
fn run_pivots(
    tab: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    basis: &mut [usize],
    cost: &[Rational],
) -> Result<(Rational, bool), LpError> {
    let width = cost.len();
    let mut obj = objective_row(tab, basis, cost);
    let mut value: Rational = basis
        .iter()
        .enumerate()
        .map(|(r, &bv)| &cost[bv] * &rhs[r])
        .sum();

    // Bland's rule terminates; the cap is pure defense in depth.
    for _ in 0..100_000 {
        let entering = match (0..width).find(|&j| obj[j].is_negative()) {
            None => return Ok((value, false)),
            Some(j) => j,
        };
        let mut leaving: Option<usize> = None;
        for r in 0..tab.len() {
            if !tab[r][entering].is_positive() {
                continue;
            }
            leaving = match leaving {
                None => Some(r),
                Some(best) => {
                    let lhs = &rhs[r] * &tab[best][entering];
                    let rhs_cmp = &rhs[best] * &tab[r][entering];
                    if lhs < rhs_cmp || (lhs == rhs_cmp && basis[r] < basis[best]) {
                        Some(r)
                    } else {
                        Some(best)
                    }
                }
            };
        }
        let leaving = match leaving {
            None => return Ok((value, true)),
            Some(r) => r,
        };
        pivot(tab, rhs, basis, leaving, entering);
        let factor = obj[entering].clone();
        if !factor.is_zero() {
            for (j, o) in obj.iter_mut().enumerate() {
                *o -= &factor * &tab[leaving][j];
            }
            value -= &factor * &rhs[leaving];
        }
    }
    Err(LpError::Internal("pivot limit exceeded".into()))
}

fn pivot(
    tab: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    basis: &mut [usize],
    r: usize,
    j: usize,
) {
    let p = tab[r][j].clone();
    debug_assert!(!p.is_zero());
    for entry in tab[r].iter_mut() {
        *entry /= &p;
    }
    rhs[r] /= &p;
    for i in 0..tab.len() {
        if i == r || tab[i][j].is_zero() {
            continue;
        }
        let factor = tab[i][j].clone();
        let pivot_row = tab[r].clone();
        for (entry, pe) in tab[i].iter_mut().zip(&pivot_row) {
            *entry -= &factor * pe;
        }
        let dr = &factor * &rhs[r];
        rhs[i] -= dr;
    }
    basis[r] = j;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::set_system::{ElemSet, GroundSet, OrderSpec, SetSystem};
    use crate::valuation::simple_function;
    use std::sync::Arc;

    fn boolean2() -> Arc<SetSystem> {
        let ground = GroundSet::numbered(2).unwrap();
        let family = vec![
            ElemSet::from_indices([0]),
            ElemSet::from_indices([1]),
            ElemSet::from_indices([0, 1]),
        ];
        SetSystem::build(ground, family, OrderSpec::Containment).unwrap()
    }

    fn w(xs: &[i64]) -> Weighting {
        Weighting::new(xs.iter().map(|&x| rat(x)).collect())
    }

    fn v(sys: &Arc<SetSystem>, xs: &[i64]) -> Valuation {
        Valuation::new(Arc::clone(sys), xs.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn additive_valuation_prices_like_a_measure() {
        let sys = boolean2();
        let meas = v(&sys, &[5, 2, 3]);
        let core = solve_core_min(&meas, &w(&[1, 2])).unwrap();
        assert_eq!(core.status, LpStatus::Optimal);
        assert_eq!(core.value, rat(8)); // x = (2, 3) is forced
        let pack = solve_packing_max(&meas, &w(&[1, 2])).unwrap();
        assert_eq!(pack.value, rat(8));
    }

    #[test]
    fn simple_function_integrates_to_min_over_its_set() {
        let sys = boolean2();
        // ζ at index 1 = the simple function of {1}.
        let z1 = simple_function(&sys, 1);
        let f = w(&[3, 5]);
        let core = solve_core_min(&z1, &f).unwrap();
        assert_eq!(core.value, rat(3));
        let pack = solve_packing_max(&z1, &f).unwrap();
        assert_eq!(pack.value, rat(3));
    }

    #[test]
    fn single_set_system_prices_the_minimum() {
        let ground = GroundSet::numbered(3).unwrap();
        let sys = SetSystem::build(
            ground,
            vec![ElemSet::full(3)],
            OrderSpec::Containment,
        )
        .unwrap();
        let val = v(&sys, &[4]);
        let f = w(&[7, 2, 5]);
        let core = solve_core_min(&val, &f).unwrap();
        assert_eq!(core.value, rat(8)); // 4 · min(7, 2, 5)
        let pack = solve_packing_max(&val, &f).unwrap();
        assert_eq!(pack.value, rat(8));
        assert_eq!(pack.dual_y, vec![rat(2)]); // y_N = min f
    }

    #[test]
    fn zero_valuation_prices_zero() {
        let sys = boolean2();
        let zero = v(&sys, &[0, 0, 0]);
        let core = solve_core_min(&zero, &w(&[3, 4])).unwrap();
        assert_eq!(core.value, rat(0));
        assert!(core.primal_x.iter().all(|x| x == &rat(0)));
    }

    #[test]
    fn negative_valuation_entries_are_priced_consistently() {
        let sys = boolean2();
        let val = v(&sys, &[1, -2, 3]);
        let f = w(&[1, 1]);
        let core = solve_core_min(&val, &f).unwrap();
        let pack = solve_packing_max(&val, &f).unwrap();
        assert_eq!(core.value, rat(3));
        assert_eq!(pack.value, rat(3));
    }

    #[test]
    fn negative_weighting_is_rejected() {
        let sys = boolean2();
        let val = v(&sys, &[5, 2, 3]);
        assert!(matches!(
            solve_core_min(&val, &w(&[1, -1])),
            Err(LpError::NegativeWeighting { index: 1 })
        ));
        assert!(matches!(
            solve_packing_max(&val, &w(&[-1, 1])),
            Err(LpError::NegativeWeighting { index: 0 })
        ));
    }

    #[test]
    fn hexagon_duality_on_a_simple_function() {
        let sys = crate::set_system::tests::hexagon_fixture();
        let f = w(&[2, 7, 1, 3, 5, 4]);
        for i in 0..sys.m() {
            let zi = simple_function(&sys, i);
            let core = solve_core_min(&zi, &f).unwrap();
            let pack = solve_packing_max(&zi, &f).unwrap();
            assert_eq!(core.status, LpStatus::Optimal);
            assert_eq!(core.value, pack.value, "duality gap at ζ^{i}");
        }
    }

    #[test]
    fn fractional_data_stays_exact() {
        let sys = boolean2();
        let val = Valuation::new(
            Arc::clone(&sys),
            vec![
                Rational::new(7.into(), 3.into()),
                Rational::new(1.into(), 2.into()),
                Rational::new(5.into(), 6.into()),
            ],
        )
        .unwrap();
        let f = Weighting::new(vec![
            Rational::new(2.into(), 5.into()),
            Rational::new(3.into(), 7.into()),
        ]);
        let core = solve_core_min(&val, &f).unwrap();
        let pack = solve_packing_max(&val, &f).unwrap();
        assert_eq!(core.value, pack.value);
        // The optimum is a vertex of a rational polyhedron: exact equality
        // of the two programs is the whole point of exact arithmetic.
        assert_eq!(dot(f.values(), &core.primal_x), core.value);
    }
}
