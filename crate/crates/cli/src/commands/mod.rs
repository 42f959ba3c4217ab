//! Subcommand implementations.

pub mod admcheck;
pub mod bayes;
pub mod dominate;
pub mod region;
pub mod risk;

use vrsp_core::bayes::BayesProcedure;
use vrsp_core::model::IntraclassModel;
use vrsp_core::procedures::{CriticalValues, Marginal, Procedure, PsiStar, StepUp, StripImprovement};
use vrsp_core::risk::RiskError;

use crate::args::{ModelArgs, ProcedureArgs};
use crate::grid::parse_list;
use crate::{CliError, prior_file};

pub(crate) fn build_model(args: &ModelArgs) -> Result<IntraclassModel, CliError> {
    IntraclassModel::new(args.k, args.sigma2, args.rho).map_err(|e| CliError::usage(e.to_string()))
}

pub(crate) fn parse_crit(args: &ProcedureArgs) -> Result<Vec<f64>, CliError> {
    let text = args
        .crit
        .as_deref()
        .ok_or_else(|| CliError::usage("--crit is required for this procedure"))?;
    parse_list(text, "--crit")
}

/// Build the selected procedure against the model, validating dimensions
/// before any computation.
pub(crate) fn build_procedure(
    model: &IntraclassModel,
    args: &ProcedureArgs,
) -> Result<Box<dyn Procedure>, CliError> {
    match args.proc.as_str() {
        "step-up" => {
            let c = parse_crit(args)?;
            if c.len() != model.k() {
                return Err(CliError::usage(format!(
                    "step-up needs {} critical values for --k {}, got {}",
                    model.k(),
                    model.k(),
                    c.len()
                )));
            }
            let c = CriticalValues::new(c).map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Box::new(StepUp::new(c)))
        }
        "marginal" => {
            let c = parse_crit(args)?;
            if c.len() != 1 {
                return Err(CliError::usage(format!(
                    "marginal takes exactly one threshold in --crit, got {}",
                    c.len()
                )));
            }
            Ok(Box::new(Marginal::new(c[0], model.k())))
        }
        "psi-star" => {
            if model.k() != 2 {
                return Err(CliError::usage("psi-star requires --k 2"));
            }
            let c = parse_crit(args)?;
            if c.len() != 2 {
                return Err(CliError::usage(format!(
                    "psi-star needs two critical values, got {}",
                    c.len()
                )));
            }
            let strip = StripImprovement::new(c[0], c[1], model.rho(), model.sigma2())
                .map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Box::new(PsiStar::new(strip)))
        }
        "bayes" => {
            let path = args
                .prior
                .as_deref()
                .ok_or_else(|| CliError::usage("--prior FILE is required for the bayes procedure"))?;
            let prior = prior_file::load_prior(path, model.k())?;
            let proc = BayesProcedure::new(prior, model.clone())
                .map_err(|e| CliError::usage(e.to_string()))?;
            Ok(Box::new(proc))
        }
        other => Err(CliError::usage(format!(
            "unknown procedure '{other}'; expected step-up | marginal | psi-star | bayes"
        ))),
    }
}

/// Quadrature failures are numerical (exit 3); everything else a risk
/// function reports is a configuration problem (exit 2).
pub(crate) fn map_risk_error(e: RiskError) -> CliError {
    match e {
        RiskError::Quadrature(q) => CliError::Numerical(q.to_string()),
        other => CliError::usage(other.to_string()),
    }
}

/// The canonical flag echo for the model block.
pub(crate) fn model_echo(args: &ModelArgs) -> String {
    format!("--k {} --sigma2 {} --rho {}", args.k, args.sigma2, args.rho)
}

pub(crate) fn procedure_echo(args: &ProcedureArgs) -> String {
    let mut text = format!("--proc {}", args.proc);
    if let Some(c) = &args.crit {
        text.push_str(&format!(" --crit {c}"));
    }
    if let Some(p) = &args.prior {
        text.push_str(&format!(" --prior {}", p.display()));
    }
    text
}
