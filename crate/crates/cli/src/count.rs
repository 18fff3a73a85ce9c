use std::fmt::Write as _;

use ppsym_core::kasteleyn::compare_routes;
use ppsym_core::{BoxDims, Error, Mode, Route, SymmetryClass};

use crate::{emit, Failure, ReportFormat, EXIT_INVARIANT, EXIT_OK};

/// Counts by each requested route. Several routes must agree exactly.
pub fn run(
    class: SymmetryClass,
    dims: BoxDims,
    mode: Mode,
    routes: &[Route],
    format: ReportFormat,
    budget: u64,
) -> Result<u8, Failure> {
    class.check_dims(dims)?;
    let table = compare_routes(class, dims, mode, routes, budget)?;
    if table.results.is_empty() {
        let why = table
            .skipped
            .iter()
            .map(|(r, why)| format!("{r}: {why}"))
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::Unsupported(why).into());
    }
    let mut text = String::new();
    match format {
        ReportFormat::Json => text = serde_json::to_string_pretty(&table)? + "\n",
        ReportFormat::Text if routes.len() == 1 => text = format!("{}\n", table.results[0].value),
        ReportFormat::Text => {
            for r in &table.results {
                writeln!(text, "{}: {}", r.route, r.value).unwrap();
            }
            for (route, why) in &table.skipped {
                writeln!(text, "{route}: skipped ({why})").unwrap();
            }
            writeln!(text, "{}", if table.agree { "agree" } else { "DISAGREE" }).unwrap();
        }
    }
    emit(&text)?;
    Ok(if table.agree { EXIT_OK } else { EXIT_INVARIANT })
}
