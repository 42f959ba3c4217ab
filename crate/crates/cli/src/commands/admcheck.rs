//! `vrsp admcheck`: partial-sum monotonicity scans. Violations are findings,
//! not failures: a successful scan exits 0 whether or not rows are emitted.

use vrsp_core::admissibility::{
    LineSpec, Violation, corollary_preset, default_witness_epsilon, monotonicity_scan,
    step_up_violation_witness,
};
use vrsp_core::procedures::CriticalValues;

use crate::args::AdmcheckArgs;
use crate::grid::{parse_list, parse_range};
use crate::output::{CsvSink, cell, cells};
use crate::{CliError, commands};

fn critical_values(args: &AdmcheckArgs) -> Result<CriticalValues, CliError> {
    let crit = commands::parse_crit(&args.procedure)?;
    CriticalValues::new(crit).map_err(|e| CliError::usage(e.to_string()))
}

fn build_line(args: &AdmcheckArgs, k: usize) -> Result<LineSpec, CliError> {
    if let Some(preset) = &args.preset {
        if preset != "corollary-4.4" {
            return Err(CliError::usage(format!(
                "unknown preset '{preset}'; available: corollary-4.4"
            )));
        }
        let c = critical_values(args)?;
        if c.k() != k {
            return Err(CliError::usage(format!(
                "--crit has {} values but --k is {k}",
                c.k()
            )));
        }
        let epsilon = args.epsilon.unwrap_or_else(|| default_witness_epsilon(&c));
        return corollary_preset(&c, epsilon, args.steps)
            .map_err(|e| CliError::usage(e.to_string()));
    }
    let j = args
        .j
        .ok_or_else(|| CliError::usage("an explicit line needs --j (or use --preset)"))?;
    let fixed_text = args
        .fixed
        .as_deref()
        .ok_or_else(|| CliError::usage("an explicit line needs --fixed t_i,..."))?;
    let fixed = parse_list(fixed_text, "--fixed")?;
    let range_text = args
        .range
        .as_deref()
        .ok_or_else(|| CliError::usage("an explicit line needs --range lo:hi"))?;
    let range = parse_range(range_text)?;
    Ok(LineSpec { j, fixed, range, resolution: args.steps })
}

fn violation_row(v: &Violation, k: usize) -> Vec<String> {
    let mut row = vec![
        v.j.to_string(),
        cell(v.t_low.coords()[v.j - 1]),
        cell(v.t_high.coords()[v.j - 1]),
    ];
    row.extend(cells(&v.z_low));
    row.extend(cells(&v.z_high));
    row.push((v.action_low.rejects(v.j - 1) as u8).to_string());
    row.push((v.action_high.rejects(v.j - 1) as u8).to_string());
    debug_assert_eq!(row.len(), 5 + 2 * k);
    row
}

pub fn run(args: &AdmcheckArgs) -> Result<(), CliError> {
    let model = commands::build_model(&args.model)?;
    let k = model.k();
    let procedure = commands::build_procedure(&model, &args.procedure)?;
    let line = build_line(args, k)?;
    // resolve the witness before any output so configuration errors leave
    // nothing half-written
    let witness = if args.witness {
        let c = critical_values(args)?;
        let epsilon = args.epsilon.unwrap_or_else(|| default_witness_epsilon(&c));
        let pair = step_up_violation_witness(&c, epsilon)
            .map_err(|e| CliError::usage(e.to_string()))?;
        Some((epsilon, pair))
    } else {
        None
    };

    let mut sink = CsvSink::create(args.output.out.as_deref())?;
    let line_echo = match &args.preset {
        Some(p) => {
            let mut text = format!("--preset {p}");
            if let Some(e) = args.epsilon {
                text.push_str(&format!(" --epsilon {e}"));
            }
            text
        }
        None => format!(
            "--j {} --fixed {} --range {}",
            line.j,
            args.fixed.as_deref().unwrap_or(""),
            args.range.as_deref().unwrap_or("")
        ),
    };
    sink.comment(&format!(
        "vrsp admcheck {} {} {} --steps {}{}",
        commands::model_echo(&args.model),
        commands::procedure_echo(&args.procedure),
        line_echo,
        args.steps,
        if args.witness { " --witness" } else { "" }
    ))?;

    if let Some((epsilon, (z_star, z_bar))) = &witness {
        sink.comment(&format!("witness epsilon = {}", cell(*epsilon)))?;
        sink.comment(&format!("witness z_star = {}", cells(z_star).join(",")))?;
        sink.comment(&format!("witness z_bar = {}", cells(z_bar).join(",")))?;
    }

    let violations =
        monotonicity_scan(procedure.as_ref(), &line).map_err(|e| CliError::usage(e.to_string()))?;

    let z_low: Vec<String> = (1..=k).map(|i| format!("z_low_{i}")).collect();
    let z_high: Vec<String> = (1..=k).map(|i| format!("z_high_{i}")).collect();
    sink.line(&format!(
        "j,tj_low,tj_high,{},{},decision_low,decision_high",
        z_low.join(","),
        z_high.join(",")
    ))?;
    for violation in &violations {
        sink.row(&violation_row(violation, k))?;
    }
    sink.comment(&format!("violations = {}", violations.len()))?;
    sink.finish()
}
