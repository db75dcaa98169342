use std::io::Write;
use std::path::Path;

use qedlife::linewidth::{
    convention_lines, format_matrix_exact, format_matrix_json, format_report_csv,
    format_report_json, format_report_text, im_z_matrix, im_z_momentum_form,
    lifetimes as lifetime_report, CutoffFunction, ImZMatrix, PhysicalConstants,
};

use crate::{read_file, CmdResult, Failure, Form, Kappa, MatrixFormat, ReportFormat};

fn cutoff(kappa: Kappa) -> CutoffFunction {
    match kappa {
        Kappa::One => CutoffFunction::One,
        Kappa::Quartic => CutoffFunction::GaussianQuartic,
    }
}

fn matrix(n: u32, kappa: Kappa, form: Form) -> Result<ImZMatrix, Failure> {
    if n == 0 {
        return Err(Failure::usage("--n must be at least 1"));
    }
    let kappa = cutoff(kappa);
    Ok(match form {
        Form::Position => im_z_matrix(n, &kappa)?,
        Form::Momentum => im_z_momentum_form(n, &kappa)?,
    })
}

fn comment_header(out: &mut dyn Write, m: &ImZMatrix) -> std::io::Result<()> {
    for line in convention_lines(m) {
        writeln!(out, "# {line}")?;
    }
    if let Some(w) = &m.warning {
        writeln!(out, "# warning: {w}")?;
    }
    Ok(())
}

pub(crate) fn imz(
    out: &mut dyn Write,
    err: &mut dyn Write,
    n: u32,
    kappa: Kappa,
    form: Form,
    format: MatrixFormat,
) -> CmdResult {
    let m = matrix(n, kappa, form)?;
    if let Some(w) = &m.warning {
        writeln!(err, "warning: {w}")?;
    }
    match format {
        MatrixFormat::Exact => write!(out, "{}", format_matrix_exact(&m))?,
        MatrixFormat::Json => {
            let text = serde_json::to_string_pretty(&format_matrix_json(&m)).expect("json");
            writeln!(out, "{text}")?
        }
        MatrixFormat::Csv => {
            let report = lifetime_report(&m, &PhysicalConstants::default())?;
            comment_header(out, &m)?;
            write!(out, "{}", format_report_csv(&report))?
        }
    }
    Ok(())
}

pub(crate) fn lifetimes(
    out: &mut dyn Write,
    n: u32,
    constants: Option<&Path>,
    kappa: Kappa,
    format: ReportFormat,
) -> CmdResult {
    let constants = match constants {
        Some(path) => PhysicalConstants::parse(&read_file(path)?)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => PhysicalConstants::default(),
    };
    let m = matrix(n, kappa, Form::Position)?;
    let report = lifetime_report(&m, &constants)?;
    match format {
        ReportFormat::Text => write!(out, "{}", format_report_text(&report))?,
        ReportFormat::Csv => {
            comment_header(out, &m)?;
            write!(out, "{}", format_report_csv(&report))?
        }
        ReportFormat::Json => {
            let text = serde_json::to_string_pretty(&format_report_json(&report)).expect("json");
            writeln!(out, "{text}")?
        }
    }
    Ok(())
}
