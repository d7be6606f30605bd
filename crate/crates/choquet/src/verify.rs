//! Randomized verification suites.
//!
//! Each suite draws seeded instances — a system plus whatever valuations
//! and weightings its property needs — and checks an exact identity or
//! implication on every one. All arithmetic is rational, so every check
//! is pass/fail with tolerance zero. A fixed seed reproduces the same
//! instances bit for bit.
//!
//! When a check fails, the instance is recorded (and optionally written
//! to disk) in a self-contained JSON form that [`replay`] can re-run: it
//! rebuilds the system and re-executes exactly the failed check. Every
//! suite that runs the greedy algorithm also re-checks feasibility of the
//! produced packing vector on every single run, on intersection systems
//! and otherwise.

use crate::integral::{
    check_strong, classical_integral, extension_hat, integral, integral_monge,
    lehrer_integral, mobius_form_integral,
};
use crate::io::{
    parse_system, parse_valuation, parse_weighting, system_json, valuation_json, weighting_json,
    IoError,
};
use crate::lp::{solve_core_min, solve_packing_max, LpStatus};
use crate::monge::{certify, run as monge_run};
use crate::rational::{format_rational, parse_rational, rat, Rational};
use crate::set_system::{ElemSet, SetSystem};
use crate::valuation::{
    comonotonic, cumulative, is_supermodular_boolean, Supermodularity, Valuation, Weighting,
};
use crate::generators as gen;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::sync::Arc;
use thiserror::Error;

/// The available suites, in canonical order.
pub const SUITES: &[&str] = &[
    "mobius",
    "duality",
    "monge_wuc",
    "monge_intersection",
    "supermodular_equiv",
    "extension",
    "lehrer",
    "classical_agreement",
    "homogeneity_superadditivity",
];

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub n_max: usize,
    pub m_max: usize,
    /// Directory violation instances are written to, when set.
    pub dump_dir: Option<PathBuf>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 0, trials: 100, n_max: 6, m_max: 40, dump_dir: None }
    }
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("cannot write violation dump: {0}")]
    Dump(#[from] std::io::Error),
    #[error("cannot replay instance: {0}")]
    Replay(#[from] IoError),
    #[error("cannot replay instance: {0}")]
    BadInstance(String),
}

#[derive(Debug)]
pub struct Violation {
    pub trial: usize,
    pub detail: String,
    /// Self-contained replayable JSON instance.
    pub instance: Value,
    /// Path the instance was written to, when dumping is enabled.
    pub dumped_to: Option<PathBuf>,
}

#[derive(Debug)]
pub struct SuiteReport {
    pub suite: String,
    pub trials_run: usize,
    pub checks_run: usize,
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One replayable check: a system plus the values the check consumes.
struct Instance {
    suite: String,
    sys: Arc<SetSystem>,
    valuation: Option<Valuation>,
    valuation2: Option<Valuation>,
    weighting: Option<Weighting>,
    weighting2: Option<Weighting>,
    lambda: Option<Rational>,
    expected: Option<Rational>,
}

impl Instance {
    fn new(suite: &str, sys: Arc<SetSystem>) -> Self {
        Instance {
            suite: suite.to_string(),
            sys,
            valuation: None,
            valuation2: None,
            weighting: None,
            weighting2: None,
            lambda: None,
            expected: None,
        }
    }

    fn with_valuation(mut self, v: Valuation) -> Self {
        self.valuation = Some(v);
        self
    }

    fn with_valuation2(mut self, v: Valuation) -> Self {
        self.valuation2 = Some(v);
        self
    }

    fn with_weighting(mut self, f: Weighting) -> Self {
        self.weighting = Some(f);
        self
    }

    fn with_weighting2(mut self, g: Weighting) -> Self {
        self.weighting2 = Some(g);
        self
    }

    fn with_lambda(mut self, lambda: Rational) -> Self {
        self.lambda = Some(lambda);
        self
    }

    fn with_expected(mut self, expected: Rational) -> Self {
        self.expected = Some(expected);
        self
    }

    fn to_json(&self, trial: usize, detail: &str) -> Value {
        let opt = |v: &Option<Value>| v.clone().unwrap_or(Value::Null);
        json!({
            "suite": self.suite,
            "trial": trial,
            "detail": detail,
            "system": system_json(&self.sys),
            "valuation": opt(&self.valuation.as_ref().map(valuation_json)),
            "valuation2": opt(&self.valuation2.as_ref().map(valuation_json)),
            "weighting": opt(&self.weighting.as_ref().map(|f| weighting_json(f, self.sys.ground()))),
            "weighting2": opt(&self.weighting2.as_ref().map(|g| weighting_json(g, self.sys.ground()))),
            "lambda": opt(&self.lambda.as_ref().map(|l| Value::String(format_rational(l)))),
            "expected": opt(&self.expected.as_ref().map(|e| Value::String(format_rational(e)))),
        })
    }
}

/// Re-runs a dumped violation instance. Returns the (single-check) suite
/// report, whose violation list is empty exactly when the instance now
/// passes.
pub fn replay(text: &str) -> Result<SuiteReport, VerifyError> {
    let raw: Value = serde_json::from_str(text).map_err(IoError::from)?;
    let suite = raw["suite"]
        .as_str()
        .ok_or_else(|| VerifyError::BadInstance("missing \"suite\"".into()))?
        .to_string();
    if !SUITES.contains(&suite.as_str()) {
        return Err(VerifyError::UnknownSuite(suite));
    }
    let sys = parse_system(&raw["system"].to_string())?;
    let mut inst = Instance::new(&suite, Arc::clone(&sys));
    if !raw["valuation"].is_null() {
        inst.valuation = Some(parse_valuation(&raw["valuation"].to_string(), &sys)?);
    }
    if !raw["valuation2"].is_null() {
        inst.valuation2 = Some(parse_valuation(&raw["valuation2"].to_string(), &sys)?);
    }
    if !raw["weighting"].is_null() {
        inst.weighting = Some(parse_weighting(&raw["weighting"].to_string(), sys.ground())?);
    }
    if !raw["weighting2"].is_null() {
        inst.weighting2 = Some(parse_weighting(&raw["weighting2"].to_string(), sys.ground())?);
    }
    if let Some(l) = raw["lambda"].as_str() {
        inst.lambda =
            Some(parse_rational(l).map_err(|e| VerifyError::BadInstance(e.to_string()))?);
    }
    if let Some(e) = raw["expected"].as_str() {
        inst.expected =
            Some(parse_rational(e).map_err(|e| VerifyError::BadInstance(e.to_string()))?);
    }
    let trial = raw["trial"].as_u64().unwrap_or(0) as usize;
    let mut report = SuiteReport {
        suite,
        trials_run: 1,
        checks_run: 1,
        violations: Vec::new(),
        notes: vec!["replayed a dumped instance".to_string()],
    };
    if let Err(detail) = check_instance(&inst) {
        let instance = inst.to_json(trial, &detail);
        report.violations.push(Violation { trial, detail, instance, dumped_to: None });
    }
    Ok(report)
}

fn missing(what: &str) -> String {
    format!("instance is missing its {what}")
}

/// Executes the single check an instance stands for. `Err` carries the
/// human-readable violation detail.
fn check_instance(inst: &Instance) -> Result<(), String> {
    match inst.suite.as_str() {
        "mobius" => check_mobius(inst),
        "duality" => check_duality(inst),
        "monge_wuc" => check_monge_wuc(inst),
        "monge_intersection" => check_monge_intersection(inst),
        "supermodular_equiv" => check_supermodular_equiv(inst),
        "extension" => check_extension(inst),
        "lehrer" => check_lehrer(inst),
        "classical_agreement" => check_classical_agreement(inst),
        "homogeneity_superadditivity" => check_homogeneity_superadditivity(inst),
        other => Err(format!("unknown suite {other:?}")),
    }
}

#[allow(clippy::needless_range_loop)] // entrywise matrix product check
fn check_mobius(inst: &Instance) -> Result<(), String> {
    let sys = &inst.sys;
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    // Incidence times its inverse is the identity, entry by entry.
    let z = sys.incidence_matrix();
    let minv = sys.mobius_matrix();
    let m = sys.m();
    for i in 0..m {
        for k in 0..m {
            let entry: BigInt = (0..m).map(|j| &z[i][j] * &minv[j][k]).sum();
            let expected = BigInt::from((i == k) as u8);
            if entry != expected {
                return Err(format!("Z·Z⁻¹ has {entry} at ({i},{k})"));
            }
        }
    }
    // Round trip through the Möbius inverse, for any valuation.
    let beta = v.mobius_inverse();
    let back = Valuation::from_mobius(Arc::clone(sys), &beta).map_err(|e| e.to_string())?;
    if back.values() != v.values() {
        return Err("from_mobius(mobius_inverse(v)) differs from v".to_string());
    }
    // For beliefs the inverse is a density: the cumulative must return,
    // and its inverse must return the density.
    if v.is_belief() {
        let density = Valuation::new(Arc::clone(sys), beta.clone()).expect("length matches");
        let cum = cumulative(&density).map_err(|e| e.to_string())?;
        if cum.values() != v.values() {
            return Err("cumulative(mobius_inverse(v)) differs from belief v".to_string());
        }
        if cum.mobius_inverse() != beta {
            return Err("mobius_inverse(cumulative(w)) differs from density w".to_string());
        }
    }
    Ok(())
}

fn check_duality(inst: &Instance) -> Result<(), String> {
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    let core = solve_core_min(v, f).map_err(|e| e.to_string())?;
    let pack = solve_packing_max(v, f).map_err(|e| e.to_string())?;
    if core.status != LpStatus::Optimal || pack.status != LpStatus::Optimal {
        return Err(format!(
            "expected both programs optimal, got {:?} and {:?}",
            core.status, pack.status
        ));
    }
    if core.value != pack.value {
        return Err(format!(
            "duality gap: core {} vs packing {}",
            format_rational(&core.value),
            format_rational(&pack.value)
        ));
    }
    // The greedy vector must be feasible on every system, even those
    // where its value is not optimal.
    let out = monge_run(inst.sys(), f).map_err(|e| e.to_string())?;
    if !out.is_feasible_for(&inst.sys, f) {
        return Err("greedy packing vector is infeasible".to_string());
    }
    Ok(())
}

fn check_monge_wuc(inst: &Instance) -> Result<(), String> {
    let sys = &inst.sys;
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    if !sys.is_weakly_union_closed() || !sys.is_containment_ordered() {
        return Err("generated system is not weakly union-closed under containment".to_string());
    }
    let out = monge_run(sys, f).map_err(|e| e.to_string())?;
    if !out.is_feasible_for(sys, f) {
        return Err("greedy packing vector is infeasible".to_string());
    }
    let greedy = crate::monge::monge_functional(&out, v);
    let lp = integral(v, f).map_err(|e| e.to_string())?.value;
    let mobius = mobius_form_integral(v, f).map_err(|e| e.to_string())?;
    let vhat = extension_hat(v).map_err(|e| e.to_string())?;
    let classical = classical_integral(&vhat, f).map_err(|e| e.to_string())?;
    if greedy != lp || lp != mobius || mobius != classical {
        return Err(format!(
            "values diverge: greedy {}, lp {}, mobius form {}, classical {}",
            format_rational(&greedy),
            format_rational(&lp),
            format_rational(&mobius),
            format_rational(&classical)
        ));
    }
    Ok(())
}

fn check_monge_intersection(inst: &Instance) -> Result<(), String> {
    let sys = &inst.sys;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    let report = sys.classify();
    if !report.intersection_system.holds() {
        return Err("generated system failed to classify as an intersection system".to_string());
    }
    let out = monge_run(sys, f).map_err(|e| e.to_string())?;
    if !out.is_feasible_for(sys, f) {
        return Err("greedy packing vector is infeasible".to_string());
    }
    let cert = certify(sys, f).map_err(|e| e.to_string())?;
    if !cert.all_match {
        let bad = cert
            .entries
            .iter()
            .find(|e| !e.matches())
            .expect("mismatch recorded");
        return Err(format!(
            "certification failed at member {}: greedy {} vs optimum {}",
            bad.index,
            format_rational(&bad.monge_value),
            format_rational(&bad.lp_value)
        ));
    }
    if let Some(v) = &inst.valuation {
        let greedy = integral_monge(v, f).map_err(|e| e.to_string())?.value;
        let lp = integral(v, f).map_err(|e| e.to_string())?.value;
        if greedy != lp {
            return Err(format!(
                "greedy {} differs from lp {}",
                format_rational(&greedy),
                format_rational(&lp)
            ));
        }
    }
    Ok(())
}

fn check_supermodular_equiv(inst: &Instance) -> Result<(), String> {
    let sys = &inst.sys;
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    let g = inst.weighting2.as_ref().ok_or_else(|| missing("second weighting"))?;
    if !sys.is_union_closed() || !sys.is_containment_ordered() {
        return Err("generated system is not union-closed under containment".to_string());
    }
    if !v.is_capacity() {
        return Err("generated valuation is not a capacity".to_string());
    }
    let supermodular = matches!(
        v.is_supermodular_ordered().map_err(|e| e.to_string())?,
        Supermodularity::Holds
    );
    // Sampled packing equality and superadditivity at (f, g).
    let packing_equal = {
        let lp = integral(v, f).map_err(|e| e.to_string())?.value;
        let pack = solve_packing_max(v, f).map_err(|e| e.to_string())?;
        lp == pack.value
    };
    let superadditive_here = {
        let sum = integral(v, &f.add(g)).map_err(|e| e.to_string())?.value;
        let parts = integral(v, f).map_err(|e| e.to_string())?.value
            + integral(v, g).map_err(|e| e.to_string())?.value;
        sum >= parts
    };
    if supermodular && !packing_equal {
        return Err("supermodular capacity but integral differs from packing optimum".to_string());
    }
    if supermodular && !superadditive_here {
        return Err("supermodular capacity but integral is not superadditive at (f, g)".to_string());
    }
    // Power-set equivalence is exact in both directions.
    let vhat = extension_hat(v).map_err(|e| e.to_string())?;
    let boolean_supermodular = is_supermodular_boolean(&vhat).is_none();
    if supermodular != boolean_supermodular {
        return Err(format!(
            "supermodularity disagrees with its power-set extension: family {supermodular}, extension {boolean_supermodular}"
        ));
    }
    Ok(())
}

fn check_extension(inst: &Instance) -> Result<(), String> {
    let sys = &inst.sys;
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    // Internal consistency of the extension (Möbius sum vs maximal-member
    // sum on weakly union-closed families) re-checks itself on every call.
    let vhat = extension_hat(v).map_err(|e| e.to_string())?;
    for i in 0..sys.m() {
        if vhat.value(sys.set(i)) != v.value(i) {
            return Err(format!("extension differs from v on member {i}"));
        }
    }
    if let Some(expected) = &inst.expected {
        // Fixture mode: the two disjoint members {1,2} and {3,5} of the
        // split-cover family outweigh the full ground set.
        let probe = ElemSet::from_indices([0, 1, 2, 4]);
        let at_probe = vhat.value(probe);
        if at_probe != expected {
            return Err(format!(
                "fixture extension at {{1,2,3,5}} is {}, expected {}",
                format_rational(at_probe),
                format_rational(expected)
            ));
        }
        let at_full = vhat.value(ElemSet::full(sys.n()));
        if *at_full != rat(1) {
            return Err(format!(
                "fixture extension at the full set is {}, expected 1",
                format_rational(at_full)
            ));
        }
        if vhat.monotone_violation().is_none() {
            return Err("fixture extension should not be monotone".to_string());
        }
    }
    Ok(())
}

fn check_lehrer(inst: &Instance) -> Result<(), String> {
    let p = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    let atom_form = lehrer_integral(p, f).map_err(|e| e.to_string())?;
    let lp = integral(p, f).map_err(|e| e.to_string())?.value;
    let mobius = mobius_form_integral(p, f).map_err(|e| e.to_string())?;
    if atom_form != lp || lp != mobius {
        return Err(format!(
            "values diverge: atom form {}, lp {}, mobius form {}",
            format_rational(&atom_form),
            format_rational(&lp),
            format_rational(&mobius)
        ));
    }
    let induced = crate::integral::induced_capacity(p).map_err(|e| e.to_string())?;
    let vhat = extension_hat(p).map_err(|e| e.to_string())?;
    if induced != vhat {
        return Err("induced capacity differs from the Möbius extension".to_string());
    }
    Ok(())
}

fn check_classical_agreement(inst: &Instance) -> Result<(), String> {
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    let expected = inst.expected.as_ref().ok_or_else(|| missing("expected value"))?;
    // f was assembled as Σ c_k·1_{F_k} along a nested chain of members,
    // so every level set lies in the family and the layer-cake sum with v
    // itself — no extension involved — must match the integral.
    let got = integral(v, f).map_err(|e| e.to_string())?.value;
    if got != *expected {
        return Err(format!(
            "integral {} differs from the direct layer-cake sum {}",
            format_rational(&got),
            format_rational(expected)
        ));
    }
    Ok(())
}

fn check_homogeneity_superadditivity(inst: &Instance) -> Result<(), String> {
    let sys = &inst.sys;
    let v = inst.valuation.as_ref().ok_or_else(|| missing("valuation"))?;
    let v2 = inst.valuation2.as_ref().ok_or_else(|| missing("second valuation"))?;
    let f = inst.weighting.as_ref().ok_or_else(|| missing("weighting"))?;
    let g = inst.weighting2.as_ref().ok_or_else(|| missing("second weighting"))?;
    let lambda = inst.lambda.as_ref().ok_or_else(|| missing("lambda"))?;
    if !v.is_belief() || !v2.is_belief() {
        return Err("generated valuations are not beliefs".to_string());
    }
    let int_f = integral(v, f).map_err(|e| e.to_string())?.value;
    // Positive homogeneity: ∫(λf) = λ·∫f.
    let scaled = Weighting::new(f.values().iter().map(|x| lambda * x).collect());
    let int_scaled = integral(v, &scaled).map_err(|e| e.to_string())?.value;
    if int_scaled != lambda * &int_f {
        return Err(format!(
            "homogeneity fails at λ = {}: {} vs {}",
            format_rational(lambda),
            format_rational(&int_scaled),
            format_rational(&(lambda * &int_f))
        ));
    }
    // Superadditivity in f for beliefs.
    let int_g = integral(v, g).map_err(|e| e.to_string())?.value;
    let int_sum = integral(v, &f.add(g)).map_err(|e| e.to_string())?.value;
    if int_sum < &int_f + &int_g {
        return Err("superadditivity in f fails for a belief".to_string());
    }
    // Comonotone weightings achieve equality on weakly union-closed
    // systems, matching the classical layer-cake computation.
    if comonotonic(f, g) && sys.is_weakly_union_closed() && sys.is_containment_ordered() {
        if int_sum != &int_f + &int_g {
            return Err("comonotonic additivity fails for the integral".to_string());
        }
        let vhat = extension_hat(v).map_err(|e| e.to_string())?;
        let c_f = classical_integral(&vhat, f).map_err(|e| e.to_string())?;
        let c_g = classical_integral(&vhat, g).map_err(|e| e.to_string())?;
        let c_sum = classical_integral(&vhat, &f.add(g)).map_err(|e| e.to_string())?;
        if c_sum != c_f + c_g {
            return Err("comonotonic additivity fails for the layer-cake sum".to_string());
        }
    }
    // Subadditivity in the valuation argument, for beliefs.
    let int_v2 = integral(v2, f).map_err(|e| e.to_string())?.value;
    let int_both = integral(&v.add(v2), f).map_err(|e| e.to_string())?.value;
    if int_both > &int_f + &int_v2 {
        return Err("subadditivity in v fails for beliefs".to_string());
    }
    // Domination: indicators of members integrate to at least the value.
    for i in 0..sys.m() {
        let ind = Weighting::indicator(sys.n(), sys.set(i));
        let got = integral(v, &ind).map_err(|e| e.to_string())?.value;
        if got < *v.value(i) {
            return Err(format!("∫1_F < v(F) at member {i}"));
        }
    }
    // Shift additivity at λ: beliefs price constant shifts additively.
    if !check_strong(v, f, lambda).map_err(|e| e.to_string())? {
        return Err(format!("shift additivity fails at λ = {}", format_rational(lambda)));
    }
    Ok(())
}

impl Instance {
    fn sys(&self) -> &Arc<SetSystem> {
        &self.sys
    }
}

/// A pair of weightings non-decreasing along one shared element order —
/// comonotone by construction.
fn comonotone_pair<R: Rng>(rng: &mut R, n: usize) -> (Weighting, Weighting) {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut f = vec![Rational::zero(); n];
    let mut g = vec![Rational::zero(); n];
    let mut acc_f = Rational::zero();
    let mut acc_g = Rational::zero();
    for &e in &order {
        acc_f += gen::random_rational(rng, false);
        acc_g += gen::random_rational(rng, false);
        f[e] = acc_f.clone();
        g[e] = acc_g.clone();
    }
    (Weighting::new(f), Weighting::new(g))
}

/// A nested chain of member indices, outermost first.
fn random_chain<R: Rng>(rng: &mut R, sys: &SetSystem) -> Vec<usize> {
    let mut chain = vec![rng.gen_range(0..sys.m())];
    loop {
        let last = sys.set(*chain.last().expect("chain is non-empty"));
        let inside: Vec<usize> = (0..sys.m())
            .filter(|&i| sys.set(i) != last && sys.set(i).is_subset_of(last))
            .collect();
        if inside.is_empty() || rng.gen_ratio(1, 4) {
            return chain;
        }
        chain.push(inside[rng.gen_range(0..inside.len())]);
    }
}

fn suite_rng(cfg: &VerifyConfig, suite: &str) -> ChaCha8Rng {
    let index = SUITES.iter().position(|s| *s == suite).unwrap_or(SUITES.len()) as u64;
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
}

fn positive_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(1i64..=6)), BigInt::from(rng.gen_range(1i64..=4)))
}

/// Builds the instances one trial of a suite stands for.
fn trial_instances<R: Rng>(suite: &str, trial: usize, cfg: &VerifyConfig, rng: &mut R) -> Vec<Instance> {
    let n_max = cfg.n_max.max(1);
    let m_max = cfg.m_max.max(n_max + 2);
    let n = rng.gen_range(1..=n_max);
    match suite {
        "mobius" => {
            let sys = gen::random_system(rng, n, m_max);
            // Beliefs exercise the density round trip; general valuations
            // exercise the plain inverse round trip.
            let v = if trial.is_multiple_of(2) {
                gen::random_belief(rng, &sys)
            } else {
                gen::random_valuation(rng, &sys)
            };
            vec![Instance::new(suite, sys).with_valuation(v)]
        }
        "duality" => {
            let sys = gen::random_system(rng, n, m_max);
            let v = gen::random_belief(rng, &sys);
            let f = gen::random_weighting(rng, sys.n(), false);
            vec![Instance::new(suite, sys).with_valuation(v).with_weighting(f)]
        }
        "monge_wuc" => {
            let sys = gen::random_wuc_system(rng, n, m_max);
            let v = gen::random_valuation(rng, &sys);
            let f = gen::random_weighting(rng, sys.n(), false);
            vec![Instance::new(suite, sys).with_valuation(v).with_weighting(f)]
        }
        "monge_intersection" => {
            // Every eighth trial replays the hexagon, the canonical
            // intersection system whose order is coarser than containment.
            let sys = if trial.is_multiple_of(8) {
                gen::hexagon_system()
            } else {
                gen::random_wuc_system(rng, n, m_max)
            };
            let v = gen::random_valuation(rng, &sys);
            (0..3)
                .map(|k| {
                    let f = gen::random_weighting(rng, sys.n(), false);
                    let inst = Instance::new(suite, Arc::clone(&sys)).with_weighting(f);
                    if k == 0 {
                        inst.with_valuation(v.clone())
                    } else {
                        inst
                    }
                })
                .collect()
        }
        "supermodular_equiv" => {
            let sys = gen::random_union_closed_system(rng, n, m_max.min(20));
            let v = gen::random_capacity(rng, &sys);
            let f = gen::random_weighting(rng, sys.n(), false);
            let g = gen::random_weighting(rng, sys.n(), false);
            vec![Instance::new(suite, sys)
                .with_valuation(v)
                .with_weighting(f)
                .with_weighting2(g)]
        }
        "extension" => {
            if trial.is_multiple_of(10) {
                // The split-cover fixture: 1 on the full set, {1,2}, and
                // {3,5}; the extension must reach 2 on their union yet
                // only 1 on the full set.
                let sys = gen::split_cover_system();
                let marked = [
                    ElemSet::full(5),
                    ElemSet::from_indices([0, 1]),
                    ElemSet::from_indices([2, 4]),
                ];
                let values = (0..sys.m())
                    .map(|i| if marked.contains(&sys.set(i)) { rat(1) } else { rat(0) })
                    .collect();
                let v = Valuation::new(Arc::clone(&sys), values).expect("length matches");
                vec![Instance::new(suite, sys).with_valuation(v).with_expected(rat(2))]
            } else {
                let sys = gen::random_wuc_system(rng, n, m_max);
                let v = gen::random_valuation(rng, &sys);
                vec![Instance::new(suite, sys).with_valuation(v)]
            }
        }
        "lehrer" => {
            let sys = gen::random_algebra(rng, n, 5);
            let p = gen::random_probability(rng, &sys);
            let f = gen::random_weighting(rng, sys.n(), false);
            vec![Instance::new(suite, sys).with_valuation(p).with_weighting(f)]
        }
        "classical_agreement" => {
            let sys = gen::random_wuc_system(rng, n, m_max);
            let v = gen::random_valuation(rng, &sys);
            let chain = random_chain(rng, &sys);
            let mut f = Weighting::zero(sys.n());
            let mut expected = Rational::zero();
            for &k in &chain {
                let c = positive_rational(rng);
                let member = Weighting::indicator(sys.n(), sys.set(k));
                f = f.add(&member.scale(&c));
                expected += &c * v.value(k);
            }
            vec![Instance::new(suite, sys)
                .with_valuation(v)
                .with_weighting(f)
                .with_expected(expected)]
        }
        "homogeneity_superadditivity" => {
            let sys = gen::random_wuc_system(rng, n, m_max);
            let v = gen::random_belief(rng, &sys);
            let v2 = gen::random_belief(rng, &sys);
            let lambdas = homogeneity_lambdas();
            let lambda = lambdas[trial % lambdas.len()].clone();
            // Half the trials use a comonotone pair (equality regime),
            // half use independent weightings (inequality regime).
            let (f, g) = if trial.is_multiple_of(2) {
                comonotone_pair(rng, sys.n())
            } else {
                (
                    gen::random_weighting(rng, sys.n(), false),
                    gen::random_weighting(rng, sys.n(), false),
                )
            };
            vec![Instance::new(suite, sys)
                .with_valuation(v)
                .with_valuation2(v2)
                .with_weighting(f)
                .with_weighting2(g)
                .with_lambda(lambda)]
        }
        _ => Vec::new(),
    }
}

/// Runs one named suite at the configured scale.
pub fn run_suite(suite: &str, cfg: &VerifyConfig) -> Result<SuiteReport, VerifyError> {
    if !SUITES.contains(&suite) {
        return Err(VerifyError::UnknownSuite(suite.to_string()));
    }
    let mut rng = suite_rng(cfg, suite);
    let mut report = SuiteReport {
        suite: suite.to_string(),
        trials_run: 0,
        checks_run: 0,
        violations: Vec::new(),
        notes: Vec::new(),
    };
    for trial in 0..cfg.trials {
        report.trials_run += 1;
        for (k, inst) in trial_instances(suite, trial, cfg, &mut rng).into_iter().enumerate() {
            report.checks_run += 1;
            if let Err(detail) = check_instance(&inst) {
                let instance = inst.to_json(trial, &detail);
                let mut dumped_to = None;
                if let Some(dir) = &cfg.dump_dir {
                    if report.violations.len() < 20 {
                        std::fs::create_dir_all(dir)?;
                        let path = dir.join(format!("{suite}_trial{trial}_{k}.json"));
                        let text =
                            serde_json::to_string_pretty(&instance).map_err(IoError::from)?;
                        std::fs::write(&path, text)?;
                        dumped_to = Some(path);
                    }
                }
                report.violations.push(Violation { trial, detail, instance, dumped_to });
            }
        }
    }
    report.notes.push(format!(
        "{} checks across {} trials at n ≤ {}, m ≤ {}, seed {}",
        report.checks_run, report.trials_run, cfg.n_max, cfg.m_max, cfg.seed
    ));
    Ok(report)
}

/// Runs every suite in canonical order.
pub fn run_all(cfg: &VerifyConfig) -> Result<Vec<SuiteReport>, VerifyError> {
    SUITES.iter().map(|s| run_suite(s, cfg)).collect()
}

/// Renders a suite report as JSON.
pub fn report_json(report: &SuiteReport) -> Value {
    json!({
        "suite": report.suite,
        "passed": report.passed(),
        "trials_run": report.trials_run,
        "checks_run": report.checks_run,
        "violations": report.violations.iter().map(|v| json!({
            "trial": v.trial,
            "detail": v.detail,
            "dumped_to": v.dumped_to.as_ref().map(|p| p.display().to_string()),
            "instance": v.instance,
        })).collect::<Vec<_>>(),
        "notes": report.notes,
    })
}

/// Renders the homogeneity factor list used by the suites, for reports.
pub fn homogeneity_lambdas() -> Vec<Rational> {
    vec![rat(0), Rational::new(BigInt::from(1), BigInt::from(2)), rat(2), rat(3)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(seed: u64, trials: usize) -> VerifyConfig {
        VerifyConfig { seed, trials, n_max: 4, m_max: 24, dump_dir: None }
    }

    #[test]
    fn every_suite_passes_at_small_scale() {
        for suite in SUITES {
            let report = run_suite(suite, &small(7, 12)).unwrap();
            assert!(
                report.passed(),
                "suite {} failed: {}",
                suite,
                report.violations.first().map(|v| v.detail.as_str()).unwrap_or("?")
            );
            assert_eq!(report.trials_run, 12);
        }
    }

    #[test]
    fn unknown_suites_are_rejected() {
        assert!(matches!(
            run_suite("nonsense", &small(0, 1)),
            Err(VerifyError::UnknownSuite(_))
        ));
    }

    #[test]
    fn same_seed_reproduces_the_same_reports() {
        let a = run_suite("duality", &small(3, 10)).unwrap();
        let b = run_suite("duality", &small(3, 10)).unwrap();
        assert_eq!(report_json(&a), report_json(&b));
    }

    #[test]
    fn violations_round_trip_through_replay() {
        // Manufacture a violation by checking a deliberately wrong
        // expected value on a classical-agreement instance.
        let sys = gen::split_cover_system();
        let v = Valuation::new(
            Arc::clone(&sys),
            (0..sys.m() as i64).map(rat).collect(),
        )
        .unwrap();
        let f = Weighting::indicator(sys.n(), sys.set(0));
        let inst = Instance::new("classical_agreement", Arc::clone(&sys))
            .with_valuation(v)
            .with_weighting(f)
            .with_expected(rat(-999));
        let detail = check_instance(&inst).expect_err("must fail");
        let dumped = inst.to_json(0, &detail).to_string();
        let replayed = replay(&dumped).unwrap();
        assert_eq!(replayed.violations.len(), 1, "replay must reproduce the failure");
        assert!(replayed.violations[0].detail.contains("differs"));
    }

    #[test]
    fn fixture_trials_appear_in_extension_and_intersection_suites() {
        // Trial 0 of the extension suite is the split-cover fixture and
        // must pass its non-monotonicity checks; trial 0 of the
        // intersection suite is the hexagon.
        let report = run_suite("extension", &small(1, 1)).unwrap();
        assert!(report.passed());
        let report = run_suite("monge_intersection", &small(1, 1)).unwrap();
        assert!(report.passed());
    }
}
