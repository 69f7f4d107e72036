//! Exact Wiener index and mean first-passage time far beyond what can be
//! built explicitly, checked against brute force where it can.

use vicsek::closed_form::{mfpt_closed, wiener_closed, wiener_recursive, ClosedFormParams};
use vicsek::fractal::{generate, star_seed};
use vicsek::tree::wiener_brute;

fn main() -> vicsek::Result<()> {
    let s = 3;
    let seed = star_seed(s)?;
    println!(
        "{:>3} {:>12} {:>20} closed form",
        "t", "vertices", "brute force"
    );
    for t in 0..=4u32 {
        let p = ClosedFormParams::from_seed(&seed, s as u64, t)?;
        let brute = wiener_brute(generate(&seed, s, t)?.graph())?;
        println!(
            "{t:>3} {:>12} {:>20} {}",
            p.vertex_count(),
            brute,
            wiener_closed(&p)?
        );
    }

    let far = ClosedFormParams::typical(s as u64, 40)?;
    let w = wiener_closed(&far)?;
    assert_eq!(w, wiener_recursive(&far)?);
    println!("\nt = 40: {} vertices", far.vertex_count());
    println!("  W = {w}");
    let a = mfpt_closed(&far)?;
    println!("  MFPT = {} / {}", a.numer(), a.denom());
    Ok(())
}
