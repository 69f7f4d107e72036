//! Hitting times on a small fractal three ways: the tree edge-crossing
//! oracle, an exact rational linear solve, and the Laplacian pseudoinverse.
//! Ends with a seeded Monte Carlo estimate of the mean first-passage time.

use vicsek::fractal::{generate, star_seed};
use vicsek::spectral::pseudoinverse_hitting;
use vicsek::walk::{
    hitting_table_tree, hitting_times_solve, mc_first_passage, mc_mfpt, mfpt_oracle,
};
use vicsek::VertexId;

fn main() -> vicsek::Result<()> {
    let f = generate(&star_seed(2)?, 2, 1)?;
    let g = f.graph();
    let n = g.vertex_count();

    let tree = hitting_table_tree(g)?;
    let pinv = pseudoinverse_hitting(g)?;
    let target = 0;
    let solved = hitting_times_solve(g, VertexId(target))?;
    println!("hitting times to vertex {target} on the {n}-vertex path:");
    for (u, h) in solved.iter().enumerate() {
        println!(
            "  from {u}: tree {:>3}  solve {:>3}  pseudoinverse {:.9}",
            tree.get(u, target),
            h,
            pinv.get(u, target)
        );
    }

    let exact = mfpt_oracle(g)?;
    println!("\nexact MFPT = {exact}");
    let est = mc_mfpt(g, 200_000, 1, 7)?;
    println!(
        "Monte Carlo = {:.4} +/- {:.4} (95%)",
        est.mean, est.half_width_95
    );
    let one = mc_first_passage(g, VertexId(1), VertexId(2), 100_000, 7)?;
    println!("F(1 -> 2) ~ {:.3}, exact {}", one.mean, tree.get(1, 2));
    Ok(())
}
