//! Published closed forms next to the derived ones and a brute-force oracle.

use vicsek::closed_form::{eval_printed_formulas, ClosedFormParams};
use vicsek::fractal::{generate, star_seed};
use vicsek::tree::wiener_brute;
use vicsek::walk::mfpt_oracle;

fn main() -> vicsek::Result<()> {
    for (s, t) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        let f = generate(&star_seed(s as usize)?, s as usize, t)?;
        let w = wiener_brute(f.graph())?;
        let a = mfpt_oracle(f.graph())?;
        println!("s={s} t={t}: oracle W = {w}, MFPT = {a}");
        for r in eval_printed_formulas(&ClosedFormParams::typical(s, t)?)? {
            let w_note = match &r.wiener_t {
                Some(x) if *x == w => format!("W {x} ok"),
                Some(x) => format!("W {x} WRONG"),
                None => "W -".to_string(),
            };
            let a_note = if r.mfpt_t == a { "ok" } else { "WRONG" };
            println!(
                "  {:<22} {w_note:<16} MFPT {} {a_note}",
                r.variant.as_str(),
                r.mfpt_t
            );
        }
    }
    Ok(())
}
