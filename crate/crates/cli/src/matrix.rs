use clap::{Args, ValueEnum};
use ppsym_core::reptheory::{class_matrix, tensor_block, Generator, TensorRep};
use ppsym_core::{BigInt, BoxDims, Mode, QPoly, RepMatrix, Scalar, SymmetryClass};

use crate::{emit, Failure, ModeArg, EXIT_OK};

/// Factors of the tensor product whose X-block is printed as a worked example.
const DEMO_FACTORS: [u32; 2] = [4, 3];

#[derive(Args)]
pub struct MatrixArgs {
    /// pp, tcpp, cspp or cstcpp.
    #[arg(required_unless_present_any = ["tensor", "demo"])]
    class: Option<SymmetryClass>,
    #[arg(required_unless_present_any = ["tensor", "demo"], value_parser = clap::value_parser!(u32).range(1..))]
    a: Option<u32>,
    #[arg(required_unless_present_any = ["tensor", "demo"], value_parser = clap::value_parser!(u32).range(1..))]
    b: Option<u32>,
    #[arg(required_unless_present_any = ["tensor", "demo"], value_parser = clap::value_parser!(u32).range(1..))]
    c: Option<u32>,
    /// Highest weights of a tensor product, e.g. `4,3`; prints its X-block.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["class", "demo"])]
    tensor: Option<Vec<u32>>,
    /// Shorthand for `--tensor 4,3`.
    #[arg(long, conflicts_with = "class")]
    demo: bool,
    /// H-weight of the slice the X-block starts from.
    #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
    source: i64,
    #[arg(long, value_enum, default_value_t = ModeArg::Classical)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
    format: MatrixFormat,
    /// Dump the weighted graph (vertices, edges, faces) instead of the matrix.
    #[arg(long, conflicts_with_all = ["tensor", "demo"])]
    graph: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Json,
    Csv,
}

pub fn run(args: &MatrixArgs) -> Result<u8, Failure> {
    match Mode::from(args.mode) {
        Mode::Classical => dump::<BigInt>(args),
        Mode::Quantum => dump::<QPoly>(args),
    }
}

fn dump<S: Scalar>(args: &MatrixArgs) -> Result<u8, Failure> {
    let mode = Mode::from(args.mode);
    let factors = if args.demo {
        Some(DEMO_FACTORS.to_vec())
    } else {
        args.tensor.clone()
    };
    let block: RepMatrix<S> = match factors {
        Some(factors) => {
            let rep = TensorRep::new(factors, mode)?;
            tensor_block(&rep, Generator::X, args.source)?
        }
        None => {
            let (Some(class), Some(a), Some(b), Some(c)) = (args.class, args.a, args.b, args.c) else {
                return Err(Failure::Usage("a class and three sides are required".into()));
            };
            let dims = BoxDims::new(a, b, c)?;
            class.check_dims(dims)?;
            let mm = class_matrix::<S>(class, dims, mode)?;
            if args.graph {
                if args.format == MatrixFormat::Csv {
                    return Err(Failure::Usage("graph dumps are JSON only".into()));
                }
                emit(&(serde_json::to_string(&mm.graph.dump())? + "\n"))?;
                return Ok(EXIT_OK);
            }
            mm.block
        }
    };
    match args.format {
        MatrixFormat::Json => emit(&(serde_json::to_string(&block.dump())? + "\n"))?,
        MatrixFormat::Csv => emit(&block.to_csv())?,
    }
    Ok(EXIT_OK)
}
