//! Small-tree enumeration and random trees, used as oracle inputs.

use std::collections::BTreeSet;

use rand::Rng;

use crate::tree::{subtree_sizes, validate_tree, Graph, SeedTree};

/// Largest `n` accepted by [`free_trees`]; the Prüfer sweep visits `n^(n-2)`
/// labelled trees.
pub const MAX_ENUMERATED_N: usize = 9;

/// One representative of every isomorphism class of trees on `n` vertices,
/// in a deterministic order. Representatives are relabelled in BFS order
/// from a center, so vertex 0 is always central.
pub fn free_trees(n: usize) -> Vec<SeedTree> {
    assert!(
        (1..=MAX_ENUMERATED_N).contains(&n),
        "free_trees supports 1 <= n <= {MAX_ENUMERATED_N}"
    );
    match n {
        1 => return vec![validate_tree(1, &[]).unwrap()],
        2 => return vec![validate_tree(2, &[(0, 1)]).unwrap()],
        _ => {}
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let edges = prufer_decode(n, &seq);
        let g = Graph::new(n, &edges).unwrap();
        let (code, center) = canonical_code(&g);
        if seen.insert(code) {
            out.push(relabel_bfs(&g, center));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == seq.len() {
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, x));
        degree[leaf] -= 1;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Tree centers by repeated leaf stripping.
fn centers(g: &Graph) -> Vec<usize> {
    let n = g.vertex_count();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut degree = g.degrees();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &w in g.neighbors(leaf) {
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// AHU encoding rooted at `root`.
fn ahu(g: &Graph, root: usize) -> String {
    let rooted = subtree_sizes(g, root);
    let n = g.vertex_count();
    let mut codes = vec![String::new(); n];
    for &u in rooted.order.iter().rev() {
        let mut kids: Vec<String> = g
            .neighbors(u)
            .iter()
            .filter(|&&w| w != root && rooted.parent[w] == u)
            .map(|&w| std::mem::take(&mut codes[w]))
            .collect();
        kids.sort();
        codes[u] = format!("({})", kids.concat());
    }
    std::mem::take(&mut codes[root])
}

fn canonical_code(g: &Graph) -> (String, usize) {
    centers(g)
        .into_iter()
        .map(|c| (ahu(g, c), c))
        .min()
        .unwrap()
}

fn relabel_bfs(g: &Graph, root: usize) -> SeedTree {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut order = vec![root];
    label[root] = 0;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in g.neighbors(u) {
            if label[w] == usize::MAX {
                label[w] = order.len();
                order.push(w);
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(u, v)| {
            let (a, b) = (label[u], label[v]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_by_key(|&(a, b)| (b, a));
    validate_tree(n, &edges).unwrap()
}

/// Uniform random recursive tree: vertex `i` attaches to a uniformly chosen
/// earlier vertex.
pub fn random_recursive_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SeedTree {
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    validate_tree(n.max(1), &edges).unwrap()
}

/// Random labelled tree from a uniform Prüfer sequence, ids shuffled by the
/// sequence itself. Produces long paths more often than the recursive model.
pub fn random_prufer_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> SeedTree {
    if n <= 2 {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (0, i)).collect();
        return validate_tree(n.max(1), &edges).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    validate_tree(n, &prufer_decode_fast(n, &seq)).unwrap()
}

fn prufer_decode_fast(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    use std::cmp::Reverse;
    use std::collections::BinaryHeap;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(leaf) = leaves.pop().unwrap();
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().unwrap();
    let Reverse(b) = leaves.pop().unwrap();
    edges.push((a, b));
    edges
}
