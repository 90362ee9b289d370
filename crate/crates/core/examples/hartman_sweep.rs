//! Width sweep: tau_T saturates while free flight grows linearly.

use larmor_clock::clock::{hartman_sweep, tau_infinity, FdOptions};

fn main() -> larmor_clock::Result<()> {
    let (energy, u0) = (1.2, 1.0);
    let widths: Vec<f64> = (0..=12).map(|i| 0.25 * 2f64.powf(0.5 * i as f64)).collect();
    let points = hartman_sweep(energy, u0, 1.0, &widths, &FdOptions::default())?;
    println!(
        "{:>9} {:>14} {:>14} {:>10}",
        "d", "tau_T", "tau_free", "ratio"
    );
    for p in &points {
        println!(
            "{:>9.4} {:>14.10} {:>14.6} {:>10.4}{}",
            p.d,
            p.tau_t,
            p.tau_free,
            p.ratio.unwrap_or(f64::NAN),
            if p.is_superluminal() { "  *" } else { "" }
        );
    }
    println!("tau_inf = {:.10}", tau_infinity(energy, u0, 1.0)?);
    Ok(())
}
