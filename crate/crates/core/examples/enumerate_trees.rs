//! Exhaustive small-tree enumeration: the one-step Wiener recursion holds
//! for every tree shape and every admissible s.

use num_bigint::BigInt;
use vicsek::closed_form::wiener_one_step;
use vicsek::enumerate::free_trees;
use vicsek::fractal::vicsek_step;
use vicsek::tree::wiener_brute;

fn main() -> vicsek::Result<()> {
    for n in 1..=8 {
        let trees = free_trees(n);
        let mut checked = 0;
        for tree in &trees {
            let w = wiener_brute(tree)?;
            for s in tree.max_degree().max(2)..=6 {
                let next = wiener_brute(vicsek_step(tree, s)?.graph())?;
                assert_eq!(next, wiener_one_step(&BigInt::from(n), &w, s as u64)?);
                checked += 1;
            }
        }
        println!(
            "n = {n}: {} shapes, {checked} (tree, s) pairs agree",
            trees.len()
        );
    }
    Ok(())
}
