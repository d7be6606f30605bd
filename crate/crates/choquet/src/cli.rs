//! Command-line front end.
//!
//! Eight subcommands wrap the library: `integrate`, `monge`, `classify`,
//! `mobius`, `decompose`, `extend`, `lehrer`, and `verify`. Inputs are
//! the JSON files documented in [`crate::io`]; output is human-readable
//! text or JSON (`--format json`), written to stdout. Exit codes: 0 on
//! success, 1 when a checked property fails (a verification suite finds
//! a violation, greedy certification refuses, or a shift-dependent
//! integral is flagged), 2 on input errors. With a fixed seed and
//! configuration, JSON output is byte-identical across runs.

use crate::integral::{
    classical_integral, extension_hat, integral, integral_monge, integral_shifted,
    lehrer_integral, ChoquetError, Method,
};
use crate::io::{
    self, certify_json, monge_json, parse_system, parse_valuation, parse_weighting, rational_json,
    set_function_json, structure_json, system_json, vector_json,
};
use crate::monge;
use crate::rational::{approx_decimal, format_rational, Rational};
use crate::set_system::SetSystem;
use crate::valuation::{Valuation, Weighting};
use crate::verify::{replay, report_json, run_all, run_suite, SuiteReport, VerifyConfig, SUITES};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser)]
#[command(
    name = "choquet",
    about = "Exact Choquet integration on finite ordered set systems",
    version
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    /// Core linear program (the defining computation).
    Lp,
    /// Greedy packing; certified against the linear program first.
    Monge,
    /// Layer-cake sum over the power-set extension.
    Classical,
    /// Greedy when the family is weakly union-closed under containment,
    /// otherwise the linear program.
    Auto,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a weighting against a valuation.
    Integrate {
        system: PathBuf,
        valuation: PathBuf,
        weighting: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
        /// Include optimality certificates (packing vectors, duals).
        #[arg(long)]
        certificates: bool,
        /// Allow negative weightings via the shift rule; flags (exit 1)
        /// integrals that depend on the chosen shift.
        #[arg(long)]
        shift: bool,
        /// Skip greedy certification (--method monge only): report the
        /// greedy value even where it is not the integral.
        #[arg(long)]
        unchecked: bool,
    },
    /// Run the greedy packing algorithm and print its full trace.
    Monge {
        system: PathBuf,
        weighting: PathBuf,
        /// Also certify the greedy value against the linear program on
        /// every simple function.
        #[arg(long)]
        certificates: bool,
    },
    /// Report the structural properties of a system.
    Classify { system: PathBuf },
    /// Möbius inverse of a valuation.
    Mobius { system: PathBuf, valuation: PathBuf },
    /// Split a valuation into its positive and negative belief parts.
    Decompose { system: PathBuf, valuation: PathBuf },
    /// Extend a valuation on a containment-ordered family to all subsets.
    Extend { system: PathBuf, valuation: PathBuf },
    /// Integrate a probability on a set algebra by its atoms.
    Lehrer {
        system: PathBuf,
        valuation: PathBuf,
        weighting: PathBuf,
    },
    /// Run randomized verification suites (all of them when no name is given).
    Verify {
        /// Suite name; see --help for the list.
        #[arg(value_parser = SUITES.to_vec())]
        suite: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 40)]
        m_max: usize,
        /// Re-run a dumped violation instance instead of generating new ones.
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Directory for violation dumps.
        #[arg(long, default_value = "violations")]
        dump_dir: PathBuf,
    },
}

/// Failures carry the exit code they map to: 1 for property violations,
/// 2 for input errors.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn violation(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        Failure::input(e.to_string())
    }
}

impl From<ChoquetError> for Failure {
    fn from(e: ChoquetError) -> Self {
        match e {
            ChoquetError::Internal(_) => Failure::violation(e.to_string()),
            _ => Failure::input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_system(path: &Path) -> Result<Arc<SetSystem>, Failure> {
    Ok(parse_system(&read(path)?)?)
}

fn load_valuation(path: &Path, sys: &Arc<SetSystem>) -> Result<Valuation, Failure> {
    Ok(parse_valuation(&read(path)?, sys)?)
}

fn load_weighting(path: &Path, sys: &SetSystem) -> Result<Weighting, Failure> {
    Ok(parse_weighting(&read(path)?, sys.ground())?)
}

/// Entry point; returns the process exit code.
pub fn main_entry() -> i32 {
    let cli = Cli::parse();
    let format = cli.format;
    match dispatch(cli.command, format) {
        Ok((value, text, code)) => {
            let rendered = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&value).expect("reports serialize")
                }
                Format::Text => text.trim_end().to_string(),
            };
            // A closed pipe (e.g. `choquet … | head`) is the consumer's
            // choice, not a failure: keep the computed exit code.
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{rendered}").and_then(|()| out.flush()) {
                Ok(()) => code,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => code,
                Err(e) => {
                    eprintln!("error: cannot write output: {e}");
                    2
                }
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

type Output = (Value, String, i32);

fn dispatch(command: Command, format: Format) -> Result<Output, Failure> {
    match command {
        Command::Integrate { system, valuation, weighting, method, certificates, shift, unchecked } => {
            cmd_integrate(&system, &valuation, &weighting, method, certificates, shift, unchecked)
        }
        Command::Monge { system, weighting, certificates } => {
            cmd_monge(&system, &weighting, certificates)
        }
        Command::Classify { system } => cmd_classify(&system),
        Command::Mobius { system, valuation } => cmd_mobius(&system, &valuation),
        Command::Decompose { system, valuation } => cmd_decompose(&system, &valuation),
        Command::Extend { system, valuation } => cmd_extend(&system, &valuation),
        Command::Lehrer { system, valuation, weighting } => {
            cmd_lehrer(&system, &valuation, &weighting)
        }
        Command::Verify { suite, seed, trials, n_max, m_max, replay: replay_path, dump_dir } => {
            let _ = format;
            cmd_verify(suite, seed, trials, n_max, m_max, replay_path, dump_dir)
        }
    }
}

fn value_line(x: &Rational) -> String {
    format!("{} (≈ {})", format_rational(x), approx_decimal(x, io::APPROX_DIGITS))
}

#[allow(clippy::too_many_arguments)]
fn cmd_integrate(
    system: &Path,
    valuation: &Path,
    weighting: &Path,
    method: MethodArg,
    certificates: bool,
    shift: bool,
    unchecked: bool,
) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let v = load_valuation(valuation, &sys)?;
    let f = load_weighting(weighting, &sys)?;
    if f.values().iter().any(|x| x.is_negative()) && !shift {
        return Err(Failure::input(
            "the weighting has negative entries; pass --shift to integrate via the shift rule",
        ));
    }

    if shift {
        if !matches!(method, MethodArg::Lp | MethodArg::Auto) {
            return Err(Failure::input(
                "--shift computes through the linear program; use --method lp or auto",
            ));
        }
        let r = integral_shifted(&v, &f)?;
        let mut text = format!(
            "value = {}\nmethod = lp (shift rule, λ = {})\n",
            value_line(&r.value),
            format_rational(&r.lambda)
        );
        let code = if r.shift_dependent {
            text.push_str("warning: the result depends on the chosen shift — the valuation does not price constant shifts additively\n");
            1
        } else {
            0
        };
        let value = json!({
            "command": "integrate",
            "method": "lp",
            "value": rational_json(&r.value),
            "shift": {
                "lambda": rational_json(&r.lambda),
                "shift_dependent": r.shift_dependent,
            },
        });
        return Ok((value, text, code));
    }

    let requested = method;
    let effective = match method {
        MethodArg::Auto => {
            if sys.is_weakly_union_closed() && sys.is_containment_ordered() {
                MethodArg::Monge
            } else {
                MethodArg::Lp
            }
        }
        other => other,
    };

    let mut cert_value = Value::Null;
    let mut extra_text = String::new();
    let (result, method_name) = match effective {
        MethodArg::Lp | MethodArg::Auto => (integral(&v, &f)?, Method::Lp.name()),
        MethodArg::Monge => {
            // The greedy value equals the integral exactly when its runs
            // certify against the linear program (automatic on weakly
            // union-closed families and intersection systems).
            let theorem_backed = requested == MethodArg::Auto
                && sys.is_weakly_union_closed()
                && sys.is_containment_ordered();
            if !theorem_backed && !unchecked {
                let report = monge::certify(&sys, &f).map_err(|e| Failure::input(e.to_string()))?;
                if !report.all_match {
                    let bad = report.entries.iter().find(|e| !e.matches()).expect("recorded");
                    return Err(Failure::violation(format!(
                        "greedy certification failed at member {}: greedy {} vs optimum {}; \
                         pass --unchecked to report the greedy value anyway",
                        bad.index,
                        format_rational(&bad.monge_value),
                        format_rational(&bad.lp_value)
                    )));
                }
                cert_value = certify_json(&report);
                extra_text.push_str("certification: all simple functions match the linear program\n");
            }
            (integral_monge(&v, &f)?, Method::Monge.name())
        }
        MethodArg::Classical => {
            let vhat = extension_hat(&v)?;
            let value = classical_integral(&vhat, &f)?;
            if !sys.is_weakly_union_closed() {
                extra_text.push_str(
                    "note: the family is not weakly union-closed; the layer-cake sum may differ from the core integral\n",
                );
            }
            let text = format!("value = {}\nmethod = classical\n{extra_text}", value_line(&value));
            let out = json!({
                "command": "integrate",
                "method": Method::Classical.name(),
                "method_requested": method_label(requested),
                "value": rational_json(&value),
            });
            return Ok((out, text, 0));
        }
    };

    let mut text = format!("value = {}\nmethod = {}\n{extra_text}", value_line(&result.value), method_name);
    let mut out = json!({
        "command": "integrate",
        "method": method_name,
        "method_requested": method_label(requested),
        "value": rational_json(&result.value),
    });
    if certificates {
        let packing = result
            .dual_y
            .as_ref()
            .map(|y| vector_json(y))
            .unwrap_or(Value::Null);
        // For a belief the core program supplies both optimal vectors.
        let core_program = if effective == MethodArg::Lp && v.is_belief() {
            let lp = crate::lp::solve_core_min(&v, &f)
                .map_err(|e| Failure::violation(e.to_string()))?;
            io::lp_json(&lp)
        } else {
            Value::Null
        };
        out["certificates"] = json!({
            "packing_vector": packing,
            "core_program": core_program,
            "greedy_certification": cert_value,
        });
        if let Some(y) = &result.dual_y {
            text.push_str("packing vector:\n");
            for (i, yi) in y.iter().enumerate() {
                if !yi.is_zero() {
                    text.push_str(&format!("  y[{i}] = {}\n", format_rational(yi)));
                }
            }
        }
    }
    Ok((out, text, 0))
}

fn method_label(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Lp => "lp",
        MethodArg::Monge => "monge",
        MethodArg::Classical => "classical",
        MethodArg::Auto => "auto",
    }
}

fn cmd_monge(system: &Path, weighting: &Path, certificates: bool) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let f = load_weighting(weighting, &sys)?;
    let out = monge::run(&sys, &f).map_err(|e| Failure::input(e.to_string()))?;
    let mut text = String::new();
    for ev in &out.events {
        text.push_str(&format!(
            "take {} from {{{}}} at element {}\n",
            format_rational(&ev.amount),
            sys.set_labels(ev.set).join(","),
            sys.ground().label(ev.element),
        ));
    }
    text.push_str(&format!(
        "feasible: {}\n",
        out.is_feasible_for(&sys, &f)
    ));
    let mut value = json!({
        "command": "monge",
        "trace": monge_json(&sys, &out),
        "feasible": out.is_feasible_for(&sys, &f),
    });
    let mut code = 0;
    if certificates {
        let report = monge::certify(&sys, &f).map_err(|e| Failure::input(e.to_string()))?;
        text.push_str(&format!(
            "certification: {}\n",
            if report.all_match { "all simple functions match" } else { "MISMATCH" }
        ));
        if !report.all_match {
            code = 1;
        }
        value["certification"] = certify_json(&report);
    }
    Ok((value, text, code))
}

fn cmd_classify(system: &Path) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let report = sys.classify();
    let positions: Vec<usize> = (0..sys.m()).map(|i| sys.input_position(i)).collect();
    let value = json!({
        "command": "classify",
        "system": system_json(&sys),
        "input_position": positions,
        "structure": structure_json(&report),
    });
    let mut text = String::new();
    for i in 0..sys.m() {
        text.push_str(&format!(
            "F_{i} = {{{}}} (input position {})\n",
            sys.set_labels(i).join(","),
            sys.input_position(i)
        ));
    }
    let line = |name: &str, holds: bool, detail: String| {
        if holds {
            format!("{name}: holds\n")
        } else {
            format!("{name}: fails {detail}\n")
        }
    };
    let fails_detail = |c: &crate::set_system::Check| match c {
        crate::set_system::Check::Holds => String::new(),
        crate::set_system::Check::Fails { witness, detail } => {
            format!("(witness {witness:?}: {detail})")
        }
    };
    text.push_str(&line("trivially_ordered", report.trivially_ordered.holds(), fails_detail(&report.trivially_ordered)));
    text.push_str(&line("containment_ordered", report.containment_ordered.holds(), fails_detail(&report.containment_ordered)));
    text.push_str(&line("weakly_union_closed", report.weakly_union_closed.holds(), fails_detail(&report.weakly_union_closed)));
    text.push_str(&line("union_closed", report.union_closed.holds(), fails_detail(&report.union_closed)));
    match &report.algebra {
        crate::set_system::AlgebraCheck::Holds { atoms } => {
            text.push_str(&format!("algebra: holds (atoms {atoms:?})\n"));
        }
        crate::set_system::AlgebraCheck::Fails { witness, detail } => {
            text.push_str(&format!("algebra: fails (witness {witness:?}: {detail})\n"));
        }
    }
    text.push_str(&line("consecutive", report.consecutive.holds(), fails_detail(&report.consecutive)));
    text.push_str(&line("intersection_system", report.intersection_system.holds(), fails_detail(&report.intersection_system)));
    Ok((value, text, 0))
}

fn cmd_mobius(system: &Path, valuation: &Path) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let v = load_valuation(valuation, &sys)?;
    let beta = v.mobius_inverse();
    let mut text = String::new();
    for (i, b) in beta.iter().enumerate() {
        text.push_str(&format!(
            "β[{{{}}}] = {}\n",
            sys.set_labels(i).join(","),
            format_rational(b)
        ));
    }
    text.push_str(&format!("belief: {}\n", v.is_belief()));
    let value = json!({
        "command": "mobius",
        "mobius": vector_json(&beta),
        "is_belief": v.is_belief(),
    });
    Ok((value, text, 0))
}

fn cmd_decompose(system: &Path, valuation: &Path) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let v = load_valuation(valuation, &sys)?;
    let d = v.decompose();
    let value = json!({
        "command": "decompose",
        "mobius": vector_json(&d.beta),
        "v_plus": vector_json(d.v_plus.values()),
        "v_minus": vector_json(d.v_minus.values()),
        "is_belief": v.is_belief(),
    });
    let mut text = String::new();
    for i in 0..sys.m() {
        text.push_str(&format!(
            "{{{}}}: v = {}, v⁺ = {}, v⁻ = {}\n",
            sys.set_labels(i).join(","),
            format_rational(v.value(i)),
            format_rational(d.v_plus.value(i)),
            format_rational(d.v_minus.value(i)),
        ));
    }
    text.push_str(&format!("belief: {}\n", v.is_belief()));
    Ok((value, text, 0))
}

fn cmd_extend(system: &Path, valuation: &Path) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let v = load_valuation(valuation, &sys)?;
    let vhat = extension_hat(&v)?;
    let violation = vhat.monotone_violation();
    let mut text = String::new();
    for mask in 0..(1u64 << sys.n()) {
        let s = crate::set_system::ElemSet::from_bits(mask);
        let labels: Vec<&str> = s.iter().map(|e| sys.ground().label(e)).collect();
        text.push_str(&format!("v̂({{{}}}) = {}\n", labels.join(","), format_rational(vhat.value(s))));
    }
    let violation_json = match violation {
        None => Value::Null,
        Some((s, t)) => {
            let name = |x: crate::set_system::ElemSet| {
                x.iter().map(|e| sys.ground().label(e).to_string()).collect::<Vec<_>>()
            };
            text.push_str(&format!(
                "warning: extension is not monotone: v̂({:?}) > v̂({:?})\n",
                name(s),
                name(t)
            ));
            json!({ "subset": name(s), "superset": name(t) })
        }
    };
    let value = json!({
        "command": "extend",
        "extension": set_function_json(&vhat, sys.ground()),
        "monotone_violation": violation_json,
    });
    Ok((value, text, 0))
}

fn cmd_lehrer(system: &Path, valuation: &Path, weighting: &Path) -> Result<Output, Failure> {
    let sys = load_system(system)?;
    let p = load_valuation(valuation, &sys)?;
    let f = load_weighting(weighting, &sys)?;
    let got = lehrer_integral(&p, &f)?;
    let atoms = match sys.classify().algebra {
        crate::set_system::AlgebraCheck::Holds { atoms } => atoms,
        crate::set_system::AlgebraCheck::Fails { .. } => unreachable!("validated above"),
    };
    let atom_labels: Vec<Vec<String>> = atoms.iter().map(|&a| sys.set_labels(a)).collect();
    let text = format!(
        "value = {}\natoms = {}\n",
        value_line(&got),
        atom_labels
            .iter()
            .map(|ls| format!("{{{}}}", ls.join(",")))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let value = json!({
        "command": "lehrer",
        "value": rational_json(&got),
        "atoms": atom_labels,
    });
    Ok((value, text, 0))
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    suite: Option<String>,
    seed: u64,
    trials: usize,
    n_max: usize,
    m_max: usize,
    replay_path: Option<PathBuf>,
    dump_dir: PathBuf,
) -> Result<Output, Failure> {
    if let Some(path) = replay_path {
        let text = read(&path)?;
        let report = replay(&text).map_err(|e| Failure::input(e.to_string()))?;
        let code = if report.passed() { 0 } else { 1 };
        let rendered = render_suite_text(&report);
        return Ok((json!({ "command": "verify", "reports": [report_json(&report)] }), rendered, code));
    }
    let cfg = VerifyConfig { seed, trials, n_max, m_max, dump_dir: Some(dump_dir) };
    let reports = match suite {
        Some(name) => {
            vec![run_suite(&name, &cfg).map_err(|e| Failure::input(e.to_string()))?]
        }
        None => run_all(&cfg).map_err(|e| Failure::input(e.to_string()))?,
    };
    let code = if reports.iter().all(SuiteReport::passed) { 0 } else { 1 };
    let text: String = reports.iter().map(render_suite_text).collect();
    let value = json!({
        "command": "verify",
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    });
    Ok((value, text, code))
}

fn render_suite_text(report: &SuiteReport) -> String {
    let mut text = format!(
        "suite {}: {} ({} checks, {} trials)\n",
        report.suite,
        if report.passed() { "PASS" } else { "FAIL" },
        report.checks_run,
        report.trials_run,
    );
    for v in &report.violations {
        text.push_str(&format!("  trial {}: {}\n", v.trial, v.detail));
        if let Some(path) = &v.dumped_to {
            text.push_str(&format!("    instance dumped to {}\n", path.display()));
        }
    }
    for note in &report.notes {
        text.push_str(&format!("  note: {note}\n"));
    }
    text
}
