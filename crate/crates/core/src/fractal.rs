//! Generalized Vicsek fractals built by iterating the Vicsek operation on a
//! seed tree.
//!
//! One step subdivides every edge `uv` into the path `u-a-b-v` and then hangs
//! `s - k_v` new leaves on every vertex `v` that existed before the step, so
//! that all of them end up with degree exactly `s`. The subdivision vertices
//! receive no leaves. Starting from a star with `s` leaves this yields the
//! typical Vicsek fractal; any tree of maximum degree at most `s` is a valid
//! seed, and a single vertex grows into the star.

use std::io::Write;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{validate_tree, Graph, SeedTree};

/// Default limit on explicitly constructed vertex counts.
pub const DEFAULT_VERTEX_CAP: usize = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    Original,
    InsertedMiddle,
    AttachedLeaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationParams {
    pub s: usize,
    pub t: u32,
}

impl GenerationParams {
    pub fn new(s: usize, t: u32) -> Result<Self> {
        if s < 2 {
            return Err(Error::BadParameter(format!("s must be >= 2, got {s}")));
        }
        Ok(GenerationParams { s, t })
    }
}

/// A generation-`t` fractal together with per-vertex provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractalGraph {
    tree: SeedTree,
    n0: usize,
    s: usize,
    t: u32,
    birth_step: Vec<u32>,
    vertex_kind: Vec<VertexKind>,
}

impl FractalGraph {
    /// Wraps a seed as generation 0.
    pub fn seed(tree: SeedTree, s: usize) -> Result<Self> {
        GenerationParams::new(s, 0)?;
        check_degrees(&tree, s)?;
        let n = tree.vertex_count();
        Ok(FractalGraph {
            tree,
            n0: n,
            s,
            t: 0,
            birth_step: vec![0; n],
            vertex_kind: vec![VertexKind::Original; n],
        })
    }

    /// Applies one Vicsek operation. Existing ids are preserved; middles are
    /// appended in edge order, then leaves in vertex order.
    pub fn step(&self) -> FractalGraph {
        let g = self.tree.graph();
        let n = g.vertex_count();
        let s = self.s;
        let t = self.t + 1;
        let new_n = n * (s + 1);

        let mut edges = Vec::with_capacity(new_n - 1);
        let mut birth_step = self.birth_step.clone();
        let mut vertex_kind = self.vertex_kind.clone();
        birth_step.reserve(new_n - n);
        vertex_kind.reserve(new_n - n);

        let mut next = n;
        for &(u, v) in g.edges() {
            let (a, b) = (next, next + 1);
            next += 2;
            edges.extend([(u, a), (a, b), (b, v)]);
            birth_step.extend([t, t]);
            vertex_kind.extend([VertexKind::InsertedMiddle; 2]);
        }
        for v in 0..n {
            for _ in g.degree(v)..s {
                edges.push((v, next));
                next += 1;
                birth_step.push(t);
                vertex_kind.push(VertexKind::AttachedLeaf);
            }
        }
        debug_assert_eq!(next, new_n);

        let graph = Graph::new(new_n, &edges).expect("Vicsek step produces a simple graph");
        FractalGraph {
            tree: SeedTree::from_graph_unchecked(graph),
            n0: self.n0,
            s,
            t,
            birth_step,
            vertex_kind,
        }
    }

    pub fn tree(&self) -> &SeedTree {
        &self.tree
    }

    pub fn graph(&self) -> &Graph {
        self.tree.graph()
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn birth_step(&self) -> &[u32] {
        &self.birth_step
    }

    pub fn vertex_kind(&self) -> &[VertexKind] {
        &self.vertex_kind
    }

    pub fn sidecar(&self) -> Sidecar {
        Sidecar {
            n0: self.n0,
            s: self.s,
            t: self.t,
            vertex_count: self.tree.vertex_count(),
            birth_step: self.birth_step.clone(),
            vertex_kind: self.vertex_kind.clone(),
        }
    }

    pub fn write_sidecar<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer(out, &self.sidecar()).map_err(|e| Error::Io(std::io::Error::other(e)))
    }
}

impl AsRef<Graph> for FractalGraph {
    fn as_ref(&self) -> &Graph {
        self.tree.graph()
    }
}

/// JSON metadata written next to a generated edge list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sidecar {
    pub n0: usize,
    pub s: usize,
    pub t: u32,
    pub vertex_count: usize,
    pub birth_step: Vec<u32>,
    pub vertex_kind: Vec<VertexKind>,
}

fn check_degrees(g: &Graph, s: usize) -> Result<()> {
    for v in 0..g.vertex_count() {
        let degree = g.degree(v);
        if degree > s {
            return Err(Error::DegreeExceedsS {
                vertex: v,
                degree,
                s,
            });
        }
    }
    Ok(())
}

/// Star with center 0 and leaves `1..=s`.
pub fn star_seed(s: usize) -> Result<SeedTree> {
    if s < 2 {
        return Err(Error::BadParameter(format!("star needs s >= 2, got {s}")));
    }
    let edges: Vec<_> = (1..=s).map(|i| (0, i)).collect();
    validate_tree(s + 1, &edges)
}

pub fn single_vertex() -> SeedTree {
    validate_tree(1, &[]).expect("single vertex is a tree")
}

/// One Vicsek step applied to an arbitrary tree.
pub fn vicsek_step(tree: &SeedTree, s: usize) -> Result<FractalGraph> {
    Ok(FractalGraph::seed(tree.clone(), s)?.step())
}

/// `n0 (s+1)^t`, without building anything.
pub fn vertex_count(n0: usize, s: usize, t: u32) -> Result<BigInt> {
    if n0 == 0 {
        return Err(Error::BadParameter("n0 must be >= 1".into()));
    }
    GenerationParams::new(s, t)?;
    Ok(BigInt::from(n0) * num_traits::pow(BigInt::from(s + 1), t as usize))
}

/// `t`-fold Vicsek iteration with the default vertex cap.
pub fn generate(seed: &SeedTree, s: usize, t: u32) -> Result<FractalGraph> {
    generate_with_cap(seed, s, t, DEFAULT_VERTEX_CAP)
}

pub fn generate_with_cap(seed: &SeedTree, s: usize, t: u32, cap: usize) -> Result<FractalGraph> {
    let projected = vertex_count(seed.vertex_count(), s, t)?;
    if projected.to_usize().is_none_or(|p| p > cap) {
        return Err(Error::SizeCapExceeded {
            projected: projected.to_string(),
            cap,
        });
    }
    let mut f = FractalGraph::seed(seed.clone(), s)?;
    for _ in 0..t {
        f = f.step();
    }
    Ok(f)
}
