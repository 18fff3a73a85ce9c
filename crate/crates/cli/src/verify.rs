use std::fmt::Write as _;

use clap::Args;
use ppsym_core::kasteleyn::{
    compare_routes, determinant_via_dmap, normalization, verify_flatness, verify_term_equality, ExactValue,
};
use ppsym_core::reptheory::class_matrix;
use ppsym_core::{BigInt, BoxDims, Error, MatchingMatrix, Mode, QPoly, Route, Scalar, SymmetryClass, WeightedGraph};
use serde::Serialize;

use crate::{emit, Failure, ReportFormat, EXIT_INVARIANT, EXIT_OK};

#[derive(Args)]
pub struct VerifyArgs {
    /// Largest side length swept.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    max: u32,
    /// Restrict the sweep to one class.
    #[arg(long)]
    class: Option<SymmetryClass>,
    /// Negative control: add 1 to one edge weight of every graph before the
    /// graph checks. The sweep must then fail.
    #[arg(long)]
    perturb: bool,
    /// Largest colour class on which determinant terms are enumerated.
    #[arg(long, default_value_t = 40)]
    term_limit: usize,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    format: ReportFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Serialize)]
struct Check {
    name: &'static str,
    status: Status,
    detail: String,
}

#[derive(Serialize)]
struct Case {
    class: SymmetryClass,
    dims: BoxDims,
    checks: Vec<Check>,
}

#[derive(Serialize)]
struct Sweep {
    max: u32,
    perturbed: bool,
    cases: Vec<Case>,
    failures: usize,
}

pub fn run(args: &VerifyArgs, budget: u64) -> Result<u8, Failure> {
    let classes = match args.class {
        Some(c) => vec![c],
        None => SymmetryClass::ALL.to_vec(),
    };
    let mut cases = Vec::new();
    for &class in &classes {
        for a in 1..=args.max {
            for b in 1..=args.max {
                for c in 1..=args.max {
                    let dims = BoxDims::new(a, b, c)?;
                    if class.check_dims(dims).is_ok() {
                        cases.push(Case {
                            class,
                            dims,
                            checks: checks(class, dims, args, budget),
                        });
                    }
                }
            }
        }
    }
    let failures = cases
        .iter()
        .flat_map(|c| &c.checks)
        .filter(|k| k.status == Status::Fail)
        .count();
    let sweep = Sweep {
        max: args.max,
        perturbed: args.perturb,
        cases,
        failures,
    };
    match args.format {
        ReportFormat::Json => emit(&(serde_json::to_string_pretty(&sweep)? + "\n"))?,
        ReportFormat::Text => emit(&text_report(&sweep))?,
    }
    Ok(if failures == 0 { EXIT_OK } else { EXIT_INVARIANT })
}

fn text_report(sweep: &Sweep) -> String {
    let mut out = String::new();
    for case in &sweep.cases {
        let line: Vec<String> = case
            .checks
            .iter()
            .map(|k| format!("{} {:?}", k.name, k.status).to_lowercase())
            .collect();
        writeln!(
            out,
            "{:<6} {:<7} {}",
            case.class.name(),
            case.dims.to_string(),
            line.join("  ")
        )
        .unwrap();
        for k in case.checks.iter().filter(|k| k.status == Status::Fail) {
            writeln!(out, "    {}: {}", k.name, k.detail).unwrap();
        }
    }
    if sweep.failures == 0 {
        writeln!(out, "all green ({} cases)", sweep.cases.len()).unwrap();
    } else {
        writeln!(out, "{} failed checks in {} cases", sweep.failures, sweep.cases.len()).unwrap();
    }
    out
}

/// Runs one check; an invariant error fails it, any other error skips it.
fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String), Error>) -> Check {
    let (status, detail) = match f() {
        Ok((true, detail)) => (Status::Pass, detail),
        Ok((false, detail)) => (Status::Fail, detail),
        Err(e @ Error::Invariant(_)) => (Status::Fail, e.to_string()),
        Err(e) => (Status::Skip, e.to_string()),
    };
    Check { name, status, detail }
}

fn skipped(name: &'static str, detail: String) -> Check {
    Check {
        name,
        status: Status::Skip,
        detail,
    }
}

/// Adds one to the weight of the first edge.
fn perturbed<S: Scalar>(g: &WeightedGraph<S>) -> Result<WeightedGraph<S>, Error> {
    let mut first = true;
    g.reweight(|e, _, _| {
        let w = if first {
            e.weight.clone() + S::one()
        } else {
            e.weight.clone()
        };
        first = false;
        Ok(w)
    })
}

fn graph_checks<S: Scalar>(
    class: SymmetryClass,
    dims: BoxDims,
    mode: Mode,
    norm: impl FnOnce() -> Result<S, Error>,
    args: &VerifyArgs,
    out: &mut Vec<Check>,
) -> Result<(), Error> {
    let (flat_name, term_name) = match mode {
        Mode::Classical => ("flatness", "terms"),
        Mode::Quantum => ("q-flatness", "q-terms"),
    };
    let mut mm: MatchingMatrix<S> = class_matrix(class, dims, mode)?;
    if args.perturb {
        mm.graph = perturbed(&mm.graph)?;
    }
    out.push(check(flat_name, || {
        let r = verify_flatness(&mm.graph, mode)?;
        Ok((
            r.is_flat(),
            format!("{} faces, {} off curvature {}", r.faces.len(), r.violations, r.expected),
        ))
    }));
    let vertices = mm.graph.black().len();
    if vertices > args.term_limit {
        out.push(skipped(
            term_name,
            format!("{vertices} vertices per colour exceeds {}", args.term_limit),
        ));
        return Ok(());
    }
    out.push(check(term_name, || {
        let t = verify_term_equality(&mm, &norm()?, args.term_limit)?;
        let detail = if t.violations.is_empty() {
            format!("{} matchings", t.matchings)
        } else {
            t.violations.join("; ")
        };
        Ok((t.ok() && t.sums_to_determinant, detail))
    }));
    Ok(())
}

fn route_check(name: &'static str, class: SymmetryClass, dims: BoxDims, mode: Mode, budget: u64) -> Check {
    let routes: Vec<Route> = Route::ALL
        .into_iter()
        .filter(|&r| r != Route::Oracle || dims.volume() <= budget)
        .collect();
    check(name, || {
        let table = compare_routes(class, dims, mode, &routes, budget)?;
        let values: Vec<String> = table
            .results
            .iter()
            .map(|r| format!("{}={}", r.route, r.value))
            .collect();
        if table.results.len() < 2 {
            return Err(Error::Unsupported(format!("only {} available", values.join(", "))));
        }
        Ok((table.agree, values.join(", ")))
    })
}

fn checks(class: SymmetryClass, dims: BoxDims, args: &VerifyArgs, budget: u64) -> Vec<Check> {
    let mut out = Vec::new();
    let integer = || match normalization(class, dims, Mode::Classical)?.value {
        ExactValue::Integer(n) => Ok(n),
        ExactValue::Polynomial(p) => Err(Error::Invariant(format!("classical normalization {p} is a polynomial"))),
    };
    if let Err(e) = graph_checks::<BigInt>(class, dims, Mode::Classical, integer, args, &mut out) {
        out.push(check("graph", || Err(e)));
    }
    out.push(route_check("routes", class, dims, Mode::Classical, budget));
    if class == SymmetryClass::Pp {
        let polynomial = || match normalization(class, dims, Mode::Quantum)?.value {
            ExactValue::Polynomial(p) => Ok(p),
            ExactValue::Integer(n) => Err(Error::Invariant(format!("quantum normalization {n} is an integer"))),
        };
        if let Err(e) = graph_checks::<QPoly>(class, dims, Mode::Quantum, polynomial, args, &mut out) {
            out.push(check("q-graph", || Err(e)));
        }
        out.push(route_check("q-routes", class, dims, Mode::Quantum, budget));
        out.push(check("dmap", || {
            let (value, _) = determinant_via_dmap(dims)?;
            Ok((true, value.to_string()))
        }));
    }
    out
}
