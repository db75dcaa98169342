use std::io::Write;

use qedlife::exact::format_rational;
use qedlife::hydrogen::{
    angular_element, dipole_element, energy, gordon_radial_integral, radial as radial_fn, Axis,
    Orbital,
};
use qedlife::linewidth::ImZForm;

use crate::{CmdResult, Failure};

pub(crate) fn write_conventions(out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "# prefactor: {}", ImZForm::Position.prefactor_tag())?;
    writeln!(
        out,
        "# phase: Condon-Shortley spherical harmonics, radial sign as in R_{{n,l}}"
    )?;
    writeln!(
        out,
        "# units: length = a0/2, energy = 4 Ry, E_n = -1/(4 n^2)"
    )
}

pub(crate) fn energies(out: &mut dyn Write, n_max: u32) -> CmdResult {
    if n_max == 0 {
        return Err(Failure::usage("--n-max must be at least 1"));
    }
    write_conventions(out)?;
    writeln!(out, "n,E_n,E_n_float")?;
    for n in 1..=n_max {
        let e = energy(n)?;
        writeln!(
            out,
            "{n},{},{:.15e}",
            format_rational(&e),
            qedlife::exact::to_f64(&e)
        )?;
    }
    Ok(())
}

pub(crate) fn radial(out: &mut dyn Write, n: u32, l: u32, eval: &[f64]) -> CmdResult {
    let r = radial_fn(n, l)?;
    write_conventions(out)?;
    writeln!(
        out,
        "R_{{{n},{l}}}(r) = C * p(r) * exp(-{} r)",
        format_rational(&r.rate)
    )?;
    writeln!(out, "C = {}", r.prefactor)?;
    writeln!(out, "p(r) = {}", r.polynomial)?;
    if !eval.is_empty() {
        writeln!(out, "r,R")?;
        for x in eval {
            if !(x.is_finite() && *x >= 0.0) {
                return Err(Failure::usage(format!(
                    "radius must be finite and >= 0, got {x}"
                )));
            }
            writeln!(out, "{x},{:.15e}", r.eval_f64(*x))?;
        }
    }
    Ok(())
}

fn orbital(text: &str, flag: &str) -> Result<Orbital, Failure> {
    text.parse::<Orbital>()
        .map_err(|e| Failure::usage(format!("--{flag} {text}: {e}")))
}

pub(crate) fn dipole(
    out: &mut dyn Write,
    from: &str,
    to: &str,
    axis: &str,
    float: bool,
) -> CmdResult {
    let source = orbital(from, "from")?;
    let target = orbital(to, "to")?;
    let axis: Axis = axis
        .parse()
        .map_err(|e| Failure::usage(format!("--axis {axis}: {e}")))?;
    write_conventions(out)?;
    let value = dipole_element(&target, axis, &source)?;
    writeln!(out, "element = <{target}| {} |{source}>", axis.name())?;
    if value.is_zero() {
        writeln!(out, "value = 0")?;
        writeln!(
            out,
            "reason: forbidden by selection rules (|l'-l| = 1, m' - m as required by the axis)"
        )?;
        return Ok(());
    }
    let c = value.to_complex();
    if float {
        writeln!(out, "value = {:.15e} {:+.15e}i", c.re, c.im)?;
        return Ok(());
    }
    let angular = angular_element(&target, axis, &source);
    let radial = gordon_radial_integral(source.n(), source.l(), target.n(), target.l())?;
    let angular_sq = angular
        .norm_sqr()
        .as_rational()
        .map(|q| format_rational(&q))
        .unwrap_or_else(|| angular.norm_sqr().to_string());
    writeln!(out, "angular = {angular}")?;
    writeln!(out, "angular^2 = {angular_sq}")?;
    writeln!(
        out,
        "radial = R^{{{},{}}}_{{{},{}}} = {radial}",
        target.n(),
        target.l(),
        source.n(),
        source.l()
    )?;
    writeln!(out, "value = {value}")?;
    writeln!(out, "value_float = {:.15e} {:+.15e}i", c.re, c.im)?;
    Ok(())
}
