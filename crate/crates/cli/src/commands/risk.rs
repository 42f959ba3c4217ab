//! `vrsp risk`: Monte Carlo vector risk over a product grid of means.

use vrsp_core::model::{GENERATOR_NAME, MeanVector, SUBSTREAM_BLOCK};
use vrsp_core::risk::vector_risk_mc;

use crate::args::RiskArgs;
use crate::grid::{GridSpec, product_grid};
use crate::output::{CsvSink, cell, cells};
use crate::{CliError, commands};

pub fn run(args: &RiskArgs) -> Result<(), CliError> {
    let model = commands::build_model(&args.model)?;
    let procedure = commands::build_procedure(&model, &args.procedure)?;
    let grid = GridSpec::parse(&args.grid)?;
    if grid.lo < 0.0 {
        return Err(CliError::usage("mu grids must be nonnegative (lo >= 0)"));
    }

    let mut sink = CsvSink::create(args.output.out.as_deref())?;
    sink.comment(&format!(
        "vrsp risk {} {} --grid {} --n {} --seed {}",
        commands::model_echo(&args.model),
        commands::procedure_echo(&args.procedure),
        args.grid,
        args.n,
        args.seed
    ))?;
    sink.comment(&format!(
        "generator: {GENERATOR_NAME} (substream block {SUBSTREAM_BLOCK})"
    ))?;
    let k = model.k();
    let mu_names: Vec<String> = (1..=k).map(|i| format!("mu_{i}")).collect();
    sink.line(&format!("{},r0,se0,r1,se1,n,seed", mu_names.join(",")))?;
    for point in product_grid(&grid.values(), k) {
        let mu = MeanVector::new(point).map_err(|e| CliError::usage(e.to_string()))?;
        let report = vector_risk_mc(procedure.as_ref(), &model, &mu, args.n, args.seed)
            .map_err(commands::map_risk_error)?;
        let mut row = cells(mu.coords());
        row.extend([
            cell(report.r0),
            cell(report.se0),
            cell(report.r1),
            cell(report.se1),
            report.n.to_string(),
            report.seed.to_string(),
        ]);
        sink.row(&row)?;
    }
    sink.finish()
}
