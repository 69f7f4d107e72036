//! How ln(MFPT) / ln(N) approaches its limiting exponent as generations grow.

use vicsek::closed_form::{
    convergence_threshold, delta_series, scaling_exponents, ClosedFormParams,
};

fn main() -> vicsek::Result<()> {
    println!(
        "{:>2} {:>8} {:>8} {:>8} {:>8}",
        "s", "lambda", "d", "d_f", "d_w"
    );
    for s in 2..=9u64 {
        let e = scaling_exponents(s)?;
        println!(
            "{s:>2} {:>8.5} {:>8.5} {:>8.5} {:>8.5}",
            e.lambda, e.spectral_dim, e.fractal_dim, e.walk_dim
        );
    }

    // seed with n = 5, W = 18
    println!("\nDelta_t for the five-vertex spider:");
    for s in 4..=9u64 {
        let p = ClosedFormParams::new(5, 18, s, 0)?;
        let lambda = scaling_exponents(s)?.lambda;
        let series = delta_series(&p, 0..=25)?;
        let samples: Vec<String> = [1usize, 5, 10, 25]
            .iter()
            .map(|&t| format!("t={t}: {:.4}", series[t].1))
            .collect();
        let within = convergence_threshold(&p, 0..=200, 0.01)?;
        println!(
            "  s={s} lambda={lambda:.4}  {}  within 0.01 from t={}",
            samples.join("  "),
            within.map_or("-".into(), |t| t.to_string())
        );
    }
    Ok(())
}
