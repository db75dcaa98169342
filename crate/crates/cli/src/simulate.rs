use std::fmt::Write as _;
use std::io::Write;

use num_complex::Complex64;
use qedlife::resonance::{
    build_model, corollary_limit_check, feshbach_batch, fit_decay, fit_window, im_z_eigen,
    linspace, pole_scan, resolvent_identity_check, resonance_pole, z_matrix_toy, ModelConfig,
    Propagator, ToyModel,
};

use crate::{read_file, write_file, CmdResult, Failure, ModelArgs, Simulation, EXIT_NUMERICAL};

/// Largest accepted Feshbach residual.
const FESHBACH_TOLERANCE: f64 = 1e-10;

fn load(args: &ModelArgs) -> Result<ToyModel, Failure> {
    let config = match &args.config {
        Some(path) => ModelConfig::parse(&read_file(path)?)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?,
        None => ModelConfig::default(),
    };
    Ok(build_model(&config)?)
}

fn header(model: &ToyModel) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# units: toy model, dimensionless energies and time s");
    let _ = writeln!(
        s,
        "# sign: pole z* = E_j - g^2 Z + O(g^4), Im Z >= 0, second sheet Q^II = Q^I + 2 pi i rho"
    );
    let _ = writeln!(
        s,
        "# model: levels {:?}, target {}, K = {}, D = {}, g = {}, checksum {}",
        model.levels(),
        model.target(),
        model.grid().len(),
        model.dim(),
        model.g(),
        model.checksum()
    );
    for w in model.warnings() {
        let _ = writeln!(s, "# {w}");
    }
    s
}

/// Writes `csv` to `--out` if given, otherwise to stdout after the header.
fn emit(
    out: &mut dyn Write,
    args: &ModelArgs,
    header: &str,
    csv: &str,
    summary: &str,
) -> CmdResult {
    write!(out, "{header}")?;
    match &args.out {
        Some(path) => {
            write_file(path, csv)?;
            writeln!(out, "# wrote {}", path.display())?;
        }
        None => write!(out, "{csv}")?,
    }
    write!(out, "{summary}")?;
    Ok(())
}

fn decay_constant(model: &ToyModel) -> Result<f64, Failure> {
    let (eigs, _) = im_z_eigen(&z_matrix_toy(model)?);
    Ok(eigs.last().copied().unwrap_or(0.0))
}

pub(crate) fn run(out: &mut dyn Write, what: Simulation) -> CmdResult {
    match what {
        Simulation::Survival {
            model: args,
            t_max,
            samples,
        } => {
            let model = load(&args)?;
            let im_z = decay_constant(&model)?;
            let rate = model.g().powi(2) * im_z;
            let t_max = match t_max {
                Some(t) if t.is_finite() && t > 0.0 => t,
                Some(t) => {
                    return Err(Failure::usage(format!("--t-max must be positive, got {t}")))
                }
                None if rate > 0.0 => 1.0 / rate,
                None => return Err(Failure::usage("no decay at this coupling; pass --t-max")),
            };
            let phi = model.basis_vector(model.target_states().start);
            let prop = Propagator::new(&model)?;
            let series = prop.amplitude(&phi, &phi, &linspace(0.0, t_max, samples))?;
            let mut summary = format!("# max |A| = {:.15e}\n", series.max_abs());
            if rate > 0.0 {
                let fit = fit_decay(&prop.amplitude(&phi, &phi, &fit_window(rate, 201))?)?;
                let _ = writeln!(
                    summary,
                    "# fitted amplitude rate = {:.10e}, g^2 Im Z = {:.10e}, ratio = {:.6}",
                    fit.amplitude_rate,
                    rate,
                    fit.amplitude_rate / rate
                );
            }
            emit(out, &args, &header(&model), &series.to_csv(), &summary)
        }
        Simulation::Pole {
            model: args,
            g_list,
        } => {
            let model = load(&args)?;
            let z = z_matrix_toy(&model)?;
            let mut head = header(&model);
            for a in 0..z.nrows() {
                for b in 0..z.ncols() {
                    let v = z[(a, b)];
                    let _ = writeln!(head, "# Z_toy[{a},{b}] = {:.15e} {:+.15e}i", v.re, v.im);
                }
            }
            if g_list.is_empty() {
                write!(out, "{head}")?;
                write!(out, "{}", resonance_pole(&model, model.g())?.to_text())?;
                return Ok(());
            }
            let scan = pole_scan(&model, &g_list)?;
            let mut summary = format!("# error decreasing: {}\n", yes_no(scan.error_decreasing()));
            if let Some(limit) = scan.richardson(model.target_energy()) {
                let _ = writeln!(
                    summary,
                    "# richardson (z* - E_j)/g^2 -> {:.12e} {:+.12e}i",
                    limit.re, limit.im
                );
            }
            emit(out, &args, &head, &scan.to_csv(), &summary)
        }
        Simulation::Corollary {
            model: args,
            tau,
            g_list,
        } => {
            let model = load(&args)?;
            let table = corollary_limit_check(&model, tau, &g_list, None)?;
            let summary = format!(
                "# Im Gamma = {:.15e}\n# deviation strictly decreasing: {}\n",
                table.im_gamma,
                yes_no(table.strictly_decreasing())
            );
            emit(out, &args, &header(&model), &table.to_csv(), &summary)
        }
        Simulation::FeshbachCheck {
            model: args,
            seed,
            models,
            max_dim,
        } => {
            let model = load(&args)?;
            let batch = feshbach_batch(seed, models, max_dim)?;
            let phi = model.basis_vector(model.target_states().start);
            let z = Complex64::new(model.target_energy(), 0.3);
            let own = resolvent_identity_check(&model, z, 0.0, &phi, &phi)?;
            let worst = batch.max_residual().max(own.max());
            let summary = format!(
                "# config model at z = E_j + 0.3i: scalar {:.3e}, reconstruction {:.3e}\n# seed {seed}, {} random models, max residual = {:.3e}\n",
                own.scalar,
                own.reconstruction,
                batch.rows.len(),
                worst
            );
            emit(out, &args, &header(&model), &batch.to_csv(), &summary)?;
            if !(worst < FESHBACH_TOLERANCE) {
                return Err(Failure {
                    code: EXIT_NUMERICAL,
                    message: format!(
                        "Feshbach residual {worst:.3e} exceeds {FESHBACH_TOLERANCE:e}"
                    ),
                });
            }
            Ok(())
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
