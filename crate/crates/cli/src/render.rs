use std::path::PathBuf;

use clap::Args;
use ppsym_core::hexgraph::{build_hexagon, render_svg};
use ppsym_core::kasteleyn::oracle_filter;
use ppsym_core::oracle::{enumerate_pp, pp_to_matching, PlanePartition};
use ppsym_core::{BigInt, BoxDims, Error, SymmetryClass};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{emit, DimsArgs, Failure, EXIT_OK};

#[derive(Args)]
pub struct RenderArgs {
    #[command(flatten)]
    dims: DimsArgs,
    /// Only draw partitions of this class.
    #[arg(long, default_value = "pp")]
    class: SymmetryClass,
    /// Position in enumeration order; 0 is the empty box for pp.
    #[arg(long, conflicts_with_all = ["seed", "full"])]
    index: Option<u64>,
    /// Draw a partition chosen uniformly at random from this seed.
    #[arg(long, conflicts_with = "full")]
    seed: Option<u64>,
    /// Draw the full box.
    #[arg(long)]
    full: bool,
    /// Write the SVG here instead of to stdout.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

pub fn run(args: &RenderArgs, budget: u64) -> Result<u8, Failure> {
    let dims = args.dims.dims()?;
    args.class.check_dims(dims)?;
    let p = select(args, dims, budget)?;
    let g = build_hexagon::<BigInt>(dims);
    let svg = render_svg(&g, &pp_to_matching(&p, &g)?)?;
    match &args.output {
        Some(path) => std::fs::write(path, svg)?,
        None => emit(&svg)?,
    }
    Ok(EXIT_OK)
}

fn select(args: &RenderArgs, dims: BoxDims, budget: u64) -> Result<PlanePartition, Failure> {
    let filter = oracle_filter(args.class);
    if args.full || (args.class == SymmetryClass::Pp && args.seed.is_none() && args.index.unwrap_or(0) == 0) {
        // The empty and full boxes need no enumeration, so any size works.
        let p = if args.full {
            PlanePartition::full(dims)
        } else {
            PlanePartition::empty(dims)
        };
        if !filter.admits(&p) {
            return Err(Error::InvalidArgument(format!("the full {dims} box is not a {}", args.class)).into());
        }
        return Ok(p);
    }
    let index = match args.seed {
        Some(seed) => {
            let total = enumerate_pp(dims, filter, budget)?.count() as u64;
            if total == 0 {
                return Err(Error::InvalidArgument(format!("no {} fits the {dims} box", args.class)).into());
            }
            ChaCha8Rng::seed_from_u64(seed).gen_range(0..total)
        }
        None => args.index.unwrap_or(0),
    };
    enumerate_pp(dims, filter, budget)?.nth(index as usize).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "index {index} is past the last {} of the {dims} box",
            args.class
        ))
        .into()
    })
}
