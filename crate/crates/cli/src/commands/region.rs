//! `vrsp region`: decision-region grid export for k = 2.

use crate::args::RegionArgs;
use crate::grid::GridSpec;
use crate::output::{CsvSink, cell};
use crate::{CliError, commands};

pub fn run(args: &RegionArgs) -> Result<(), CliError> {
    let model = commands::build_model(&args.model)?;
    if model.k() != 2 {
        return Err(CliError::usage("region export requires --k 2"));
    }
    let procedure = commands::build_procedure(&model, &args.procedure)?;
    let grid = GridSpec::parse(&args.grid)?;

    let mut sink = CsvSink::create(args.output.out.as_deref())?;
    sink.comment(&format!(
        "vrsp region {} {} --grid {}",
        commands::model_echo(&args.model),
        commands::procedure_echo(&args.procedure),
        args.grid
    ))?;
    sink.line("z1,z2,a1,a2")?;
    let axis = grid.values();
    for &z1 in &axis {
        for &z2 in &axis {
            let action = procedure.decide(&[z1, z2]);
            sink.line(&format!(
                "{},{},{},{}",
                cell(z1),
                cell(z2),
                action.rejects(0) as u8,
                action.rejects(1) as u8
            ))?;
        }
    }
    sink.finish()
}
