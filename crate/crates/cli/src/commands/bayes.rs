//! `vrsp bayes`: q-values and Bayes actions at user-supplied observations.

use vrsp_core::bayes::{bayes_rule, posterior_oracle, posterior_summary};

use crate::args::BayesArgs;
use crate::grid::parse_list;
use crate::output::{CsvSink, cell, cells};
use crate::{CliError, commands, prior_file};

pub fn run(args: &BayesArgs) -> Result<(), CliError> {
    let model = commands::build_model(&args.model)?;
    let k = model.k();
    let prior = prior_file::load_prior(&args.prior, k)?;
    let threshold = 1.0 - prior.beta();

    let mut points = Vec::with_capacity(args.points.len());
    for text in &args.points {
        let z = parse_list(text, "--z")?;
        if z.len() != k {
            return Err(CliError::usage(format!(
                "--z '{text}' has {} coordinates, expected {k}",
                z.len()
            )));
        }
        points.push(z);
    }

    let mut sink = CsvSink::create(args.output.out.as_deref())?;
    let z_echo: Vec<String> = args.points.iter().map(|p| format!("--z {p}")).collect();
    sink.comment(&format!(
        "vrsp bayes {} --prior {} {}{}",
        commands::model_echo(&args.model),
        args.prior.display(),
        z_echo.join(" "),
        if args.oracle { " --oracle" } else { "" }
    ))?;
    let z_names: Vec<String> = (1..=k).map(|i| format!("z_{i}")).collect();
    let q_names: Vec<String> = (1..=k).map(|i| format!("q_{i}")).collect();
    let a_names: Vec<String> = (1..=k).map(|i| format!("a_{i}")).collect();
    let mut header = format!(
        "{},{},threshold,{}",
        z_names.join(","),
        q_names.join(","),
        a_names.join(",")
    );
    if args.oracle {
        let o_names: Vec<String> = (1..=k).map(|i| format!("oracle_{i}")).collect();
        header.push_str(&format!(",{},agree", o_names.join(",")));
    }
    sink.line(&header)?;

    for z in &points {
        let summary = posterior_summary(&prior, &model, z)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let action = bayes_rule(&prior, &model, z)
            .map_err(|e| CliError::Numerical(e.to_string()))?;
        let mut row = cells(z);
        row.extend(cells(&summary.q));
        row.push(cell(threshold));
        for i in 0..k {
            row.push((action.rejects(i) as u8).to_string());
        }
        if args.oracle {
            let oracle = posterior_oracle(&prior, &model, z)
                .map_err(|e| CliError::Numerical(e.to_string()))?;
            for i in 0..k {
                row.push((oracle.rejects(i) as u8).to_string());
            }
            row.push(((oracle == action) as u8).to_string());
        }
        sink.row(&row)?;
    }
    sink.finish()
}
