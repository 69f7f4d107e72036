//! Laplacian spectra of consecutive generations and the cubic map that sends
//! each parent eigenvalue to three child eigenvalues.

use vicsek::fractal::{generate, star_seed};
use vicsek::spectral::{decimation_report, mfpt_eigen, spectrum};

fn main() -> vicsek::Result<()> {
    let s = 3;
    let seed = star_seed(s)?;
    let parent = spectrum(generate(&seed, s, 1)?.graph())?;
    let child = spectrum(generate(&seed, s, 2)?.graph())?;

    println!(
        "parent distinct nonzero eigenvalues: {:?}",
        parent.distinct_nonzero()
    );
    println!("MFPT from the spectrum: {:.6}", mfpt_eigen(&child));

    let report = decimation_report(&parent, &child, s, 1e-6)?;
    for e in &report.entries {
        println!(
            "  {:.6} -> [{:.6}, {:.6}, {:.6}] (worst distance {:.1e})",
            e.parent, e.children[0], e.children[1], e.children[2], e.max_distance
        );
    }
    println!("all children found: {}", report.all_matched);
    Ok(())
}
