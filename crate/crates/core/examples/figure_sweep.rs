//! Run a preset and a custom sweep, and render both output formats.

use qmetro::sweep::{compute_sweep, render, OutputFormat, Preset, SweepOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rows = Preset::Fig1c.compute();
    println!("{} rows in fig1c; first three:", rows.len());
    let csv = render(&rows[..3], OutputFormat::Csv);
    print!("{}", String::from_utf8(csv)?);

    let spec = SweepOptions::from_config(
        "protocols = linear,nonlinear\nalpha_sq = 1:4:4\nd = 5\nn = 7\n",
    )?
    .into_spec()?;
    let rows = compute_sweep(&spec)?;
    print!("{}", String::from_utf8(render(&rows, OutputFormat::Json))?);
    Ok(())
}
