//! Grow a generalized Vicsek fractal from a small seed and inspect it.
//!
//! ```text
//! cargo run --example build_fractal -- 4 2
//! ```

use vicsek::fractal::{generate, VertexKind};
use vicsek::tree::{validate_tree, wiener_brute, write_edge_list};

fn main() -> vicsek::Result<()> {
    let mut args = std::env::args().skip(1);
    let s: usize = args.next().map_or(4, |a| a.parse().expect("s"));
    let t: u32 = args.next().map_or(2, |a| a.parse().expect("t"));

    // a center with two leaves and one arm of length two
    let seed = validate_tree(5, &[(0, 1), (0, 2), (0, 3), (3, 4)])?;
    let fractal = generate(&seed, s, t)?;
    let g = fractal.graph();

    let count = |k| fractal.vertex_kind().iter().filter(|&&x| x == k).count();
    println!(
        "s = {s}, t = {t}: {} vertices, {} edges",
        g.vertex_count(),
        g.edge_count()
    );
    println!(
        "  original {}, inserted middles {}, attached leaves {}",
        count(VertexKind::Original),
        count(VertexKind::InsertedMiddle),
        count(VertexKind::AttachedLeaf)
    );
    println!(
        "  max degree {}, Wiener index {}",
        g.max_degree(),
        wiener_brute(g)?
    );

    if g.vertex_count() <= 30 {
        let mut buf = Vec::new();
        write_edge_list(g, &mut buf)?;
        print!("{}", String::from_utf8_lossy(&buf));
    }
    Ok(())
}
