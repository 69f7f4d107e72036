//! Laplacian machinery: pseudoinverse hitting times, the eigenvalue-sum form
//! of the mean first-passage time, and the cubic decimation map linking the
//! spectra of consecutive fractal generations.

use std::io::Write;

use nalgebra::{DMatrix, Matrix3, SymmetricEigen};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::pow;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::Graph;
use crate::walk::HittingTimeTable;

/// Largest graph handled with dense matrices.
pub const DENSE_CAP: usize = 2000;

/// Eigenvalues closer than this are treated as one (multiplicity hints,
/// parent de-duplication).
pub const CLUSTER_TOL: f64 = 1e-8;

/// Dense graph Laplacian `D - A` with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianView {
    n: usize,
    data: Vec<i64>,
}

impl LaplacianView {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        DMatrix::from_row_iterator(self.n, self.n, self.data.iter().map(|&x| x as f64))
    }
}

fn check_dense(g: &Graph) -> Result<usize> {
    let n = g.vertex_count();
    if n > DENSE_CAP {
        return Err(Error::DenseCapExceeded { n, cap: DENSE_CAP });
    }
    Ok(n)
}

pub fn laplacian(g: &Graph) -> Result<LaplacianView> {
    let n = check_dense(g)?;
    let mut data = vec![0i64; n * n];
    for u in 0..n {
        data[u * n + u] = g.degree(u) as i64;
        for &w in g.neighbors(u) {
            data[u * n + w] = -1;
        }
    }
    Ok(LaplacianView { n, data })
}

/// Moore-Penrose pseudoinverse of the Laplacian of a connected graph:
/// `(L - J/n)^{-1} + J/n`, `J` the all-ones matrix. Shifting the null
/// direction to eigenvalue -1 makes the matrix invertible, and adding `J/n`
/// back cancels it.
pub fn pseudoinverse(g: &Graph) -> Result<DMatrix<f64>> {
    let n = check_dense(g)?;
    if let Some(vertex) = g.first_unreachable() {
        return Err(Error::NotConnected { vertex });
    }
    let shift = 1.0 / n as f64;
    let shifted = laplacian(g)?.to_matrix().add_scalar(-shift);
    let inv = shifted
        .clone()
        .lu()
        .try_inverse()
        .ok_or(Error::IllConditioned {
            residual: f64::INFINITY,
        })?;
    let residual = (&shifted * &inv - DMatrix::<f64>::identity(n, n)).amax();
    // more than six digits lost relative to machine precision
    if residual > f64::EPSILON * 1e6 {
        return Err(Error::IllConditioned { residual });
    }
    Ok(inv.add_scalar(shift))
}

/// First-passage times from the pseudoinverse:
/// `F(u -> v) = sum_a k_a (P_ua - P_uv - P_va + P_vv)`.
pub fn pseudoinverse_hitting(g: &Graph) -> Result<HittingTimeTable<f64>> {
    let p = pseudoinverse(g)?;
    let n = g.vertex_count();
    let degrees: Vec<f64> = g.degrees().into_iter().map(|d| d as f64).collect();
    let two_m: f64 = degrees.iter().sum();
    // r_u = sum_a P_ua k_a
    let r: Vec<f64> = (0..n)
        .map(|u| (0..n).map(|a| p[(u, a)] * degrees[a]).sum())
        .collect();
    let mut data = vec![0.0; n * n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                data[u * n + v] = r[u] - r[v] + two_m * (p[(v, v)] - p[(u, v)]);
            }
        }
    }
    Ok(HittingTimeTable::from_rows(n, data))
}

/// Laplacian spectrum, ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    pub zero_index: usize,
    /// Sum of `1/phi` over the nonzero eigenvalues.
    pub reciprocal_sum: f64,
}

impl SpectrumResult {
    pub fn nonzero(&self) -> impl Iterator<Item = f64> + '_ {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != self.zero_index)
            .map(|(_, &x)| x)
    }

    /// For each eigenvalue, the size of its cluster of near-equal values.
    pub fn multiplicity_hints(&self) -> Vec<usize> {
        let ev = &self.eigenvalues;
        let mut hints = vec![0; ev.len()];
        let mut start = 0;
        while start < ev.len() {
            let mut end = start + 1;
            while end < ev.len() && ev[end] - ev[end - 1] <= CLUSTER_TOL * ev[end].max(1.0) {
                end += 1;
            }
            hints[start..end].fill(end - start);
            start = end;
        }
        hints
    }

    /// Distinct nonzero eigenvalues, one representative per cluster.
    pub fn distinct_nonzero(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for x in self.nonzero() {
            match out.last() {
                Some(&last) if x - last <= CLUSTER_TOL * x.max(1.0) => {}
                _ => out.push(x),
            }
        }
        out
    }

    /// Index of the eigenvalue nearest to `x`.
    pub fn nearest(&self, x: f64) -> (usize, f64) {
        let ev = &self.eigenvalues;
        let i = ev.partition_point(|&e| e < x);
        [i.wrapping_sub(1), i]
            .into_iter()
            .filter(|&j| j < ev.len())
            .map(|j| (j, (ev[j] - x).abs()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("spectrum is non-empty")
    }
}

/// All Laplacian eigenvalues by a dense symmetric eigensolve.
pub fn spectrum(g: &Graph) -> Result<SpectrumResult> {
    let n = check_dense(g)?;
    if n == 0 {
        return Err(Error::DegenerateSize { n });
    }
    if let Some(vertex) = g.first_unreachable() {
        return Err(Error::NotConnected { vertex });
    }
    let eig = SymmetricEigen::new(laplacian(g)?.to_matrix());
    let mut eigenvalues: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);

    let scale = eigenvalues.last().copied().unwrap_or(0.0).max(1.0);
    let zeros = eigenvalues
        .iter()
        .filter(|x| x.abs() <= 1e-9 * scale)
        .count();
    if zeros != 1 {
        return Err(Error::InternalInconsistency(format!(
            "expected one null eigenvalue for a connected graph, found {zeros}"
        )));
    }
    let reciprocal_sum = eigenvalues[1..].iter().map(|x| 1.0 / x).sum();
    Ok(SpectrumResult {
        eigenvalues,
        zero_index: 0,
        reciprocal_sum,
    })
}

/// Mean first-passage time of a tree as `2 sum 1/phi` over the nonzero
/// Laplacian eigenvalues.
pub fn mfpt_eigen(spec: &SpectrumResult) -> f64 {
    2.0 * spec.reciprocal_sum
}

/// `CSV index,eigenvalue,multiplicity_hint`.
pub fn write_spectrum_csv<W: Write>(spec: &SpectrumResult, mut out: W) -> Result<()> {
    writeln!(out, "index,eigenvalue,multiplicity_hint")?;
    for (i, (x, m)) in spec
        .eigenvalues
        .iter()
        .zip(spec.multiplicity_hints())
        .enumerate()
    {
        // clamp the numerical zero so output is stable across platforms
        let x = if i == spec.zero_index { 0.0 } else { *x };
        writeln!(out, "{i},{x:.15e},{m}")?;
    }
    Ok(())
}

/// The three preimages of a parent eigenvalue under `x(x-3)(x-(s+1))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecimationTriple {
    pub parent: f64,
    /// Ascending.
    pub children: [f64; 3],
    pub residuals: [f64; 3],
}

fn cubic(x: f64, s: f64, parent: f64) -> (f64, f64) {
    let f = x * (x - 3.0) * (x - (s + 1.0)) - parent;
    let df = 3.0 * x * x - 2.0 * (s + 4.0) * x + 3.0 * (s + 1.0);
    (f, df)
}

/// Solves `x(x-3)(x-(s+1)) = parent` for its three real roots: eigenvalues of
/// the companion matrix, each refined by Newton steps until the residual is
/// at most `1e-10 max(1, parent)`.
pub fn decimate_eigenvalue(parent: f64, s: usize) -> Result<DecimationTriple> {
    if s < 2 {
        return Err(Error::BadParameter(format!("s must be >= 2, got {s}")));
    }
    if !(parent > 0.0 && parent.is_finite()) {
        return Err(Error::BadParameter(format!(
            "parent eigenvalue must be positive, got {parent}"
        )));
    }
    let sf = s as f64;
    // x^3 - (s+4) x^2 + 3(s+1) x - parent
    let companion = Matrix3::new(
        sf + 4.0,
        -3.0 * (sf + 1.0),
        parent,
        1.0,
        0.0,
        0.0,
        0.0,
        1.0,
        0.0,
    );
    let roots = companion.complex_eigenvalues();
    let tol = 1e-10 * parent.max(1.0);
    let mut children = [0.0; 3];
    let mut residuals = [0.0; 3];
    for (k, z) in roots.iter().enumerate() {
        if z.im.abs() > 1e-6 * z.re.abs().max(1.0) {
            return Err(Error::NoThreeRealRoots { parent, s });
        }
        let mut x = z.re;
        let (mut f, _) = cubic(x, sf, parent);
        for _ in 0..50 {
            if f.abs() <= tol * 1e-3 {
                break;
            }
            let (_, df) = cubic(x, sf, parent);
            if df == 0.0 {
                break;
            }
            let nx = x - f / df;
            let (nf, _) = cubic(nx, sf, parent);
            if nf.abs() >= f.abs() {
                break;
            }
            x = nx;
            f = nf;
        }
        if f.abs() > tol {
            return Err(Error::NoThreeRealRoots { parent, s });
        }
        children[k] = x;
        residuals[k] = f.abs();
    }
    let mut idx = [0usize, 1, 2];
    idx.sort_by(|&a, &b| children[a].total_cmp(&children[b]));
    Ok(DecimationTriple {
        parent,
        children: idx.map(|i| children[i]),
        residuals: idx.map(|i| residuals[i]),
    })
}

/// One parent eigenvalue and where its children landed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecimationEntry {
    pub parent: f64,
    pub children: [f64; 3],
    pub residuals: [f64; 3],
    /// Index into the child spectrum of the nearest eigenvalue, when within
    /// tolerance.
    pub matched: [Option<usize>; 3],
    pub max_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecimationReport {
    pub s: usize,
    pub tolerance: f64,
    pub entries: Vec<DecimationEntry>,
    pub all_matched: bool,
}

/// Maps every distinct nonzero parent eigenvalue through the decimation cubic
/// and matches the roots against the next generation's spectrum.
pub fn decimation_report(
    parent: &SpectrumResult,
    child: &SpectrumResult,
    s: usize,
    tolerance: f64,
) -> Result<DecimationReport> {
    let mut entries = Vec::new();
    for phi in parent.distinct_nonzero() {
        let triple = decimate_eigenvalue(phi, s)?;
        let mut matched = [None; 3];
        let mut max_distance: f64 = 0.0;
        for (k, &x) in triple.children.iter().enumerate() {
            let (j, dist) = child.nearest(x);
            max_distance = max_distance.max(dist);
            if dist <= tolerance {
                matched[k] = Some(j);
            }
        }
        entries.push(DecimationEntry {
            parent: phi,
            children: triple.children,
            residuals: triple.residuals,
            matched,
            max_distance,
        });
    }
    let all_matched = entries
        .iter()
        .all(|e| e.matched.iter().all(Option::is_some));
    Ok(DecimationReport {
        s,
        tolerance,
        entries,
        all_matched,
    })
}

/// The two published split sums over nondegenerate and degenerate
/// eigenvalues of the typical fractal, evaluated verbatim:
///
/// ```text
/// first  = ((3s+3)^t - 1) / ((s+1)(3s+2))
/// second = (s-2)(s+1)^{t-1}(3^t - 1) / 2 + ((3s+3)^t - 1) / (3s+2)
/// total  = 2 (first + second)
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitSums {
    pub first: BigRational,
    pub second: BigRational,
    pub total: BigRational,
}

pub fn printed_split_sums(s: u64, t: u32) -> Result<SplitSums> {
    if s < 2 || t < 1 {
        return Err(Error::BadParameter(format!(
            "split sums need s >= 2 and t >= 1, got s = {s}, t = {t}"
        )));
    }
    let big = |x: u64| BigInt::from(x);
    let growth: BigInt = pow(big(3 * s + 3), t as usize) - 1;
    let first = BigRational::new(growth.clone(), big((s + 1) * (3 * s + 2)));
    let second = BigRational::new(
        big(s - 2) * pow(big(s + 1), t as usize - 1) * (pow(big(3), t as usize) - 1),
        big(2),
    ) + BigRational::new(growth, big(3 * s + 2));
    let total = BigRational::from_integer(big(2)) * (&first + &second);
    Ok(SplitSums {
        first,
        second,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::validate_tree;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        validate_tree(n, &edges).unwrap().into_graph()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        validate_tree(leaves + 1, &edges).unwrap().into_graph()
    }

    fn assert_spectrum(g: &Graph, want: &[f64]) {
        let got = spectrum(g).unwrap().eigenvalues;
        assert_eq!(got.len(), want.len());
        for (a, b) in got.iter().zip(want) {
            assert!((a - b).abs() < 1e-10, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn laplacian_examples() {
        let l = laplacian(&path(3)).unwrap();
        assert_eq!(l.row(0), &[1, -1, 0]);
        assert_eq!(l.row(1), &[-1, 2, -1]);
        assert_eq!(l.row(2), &[0, -1, 1]);
        assert_eq!(laplacian(&star(4)).unwrap().row(0), &[4, -1, -1, -1, -1]);
        assert_eq!(laplacian(&path(1)).unwrap().row(0), &[0]);
        for u in 0..5 {
            assert_eq!(laplacian(&star(4)).unwrap().row(u).iter().sum::<i64>(), 0);
        }
    }

    #[test]
    fn spectrum_examples() {
        assert_spectrum(&path(3), &[0.0, 1.0, 3.0]);
        assert_spectrum(&star(4), &[0.0, 1.0, 1.0, 1.0, 5.0]);
        assert_spectrum(&path(2), &[0.0, 2.0]);
        let s = spectrum(&star(4)).unwrap();
        assert_eq!(s.multiplicity_hints(), vec![1, 3, 3, 3, 1]);
        assert_eq!(s.distinct_nonzero().len(), 2);
    }

    #[test]
    fn mfpt_eigen_examples() {
        assert!((mfpt_eigen(&spectrum(&path(3)).unwrap()) - 8.0 / 3.0).abs() < 1e-12);
        assert!((mfpt_eigen(&spectrum(&path(9)).unwrap()) - 80.0 / 3.0).abs() < 1e-10);
        assert!((mfpt_eigen(&spectrum(&star(4)).unwrap()) - 32.0 / 5.0).abs() < 1e-12);
    }

    #[test]
    fn pseudoinverse_examples() {
        let h = pseudoinverse_hitting(&path(9)).unwrap();
        assert!((h.get(0, 8) - 64.0).abs() < 1e-8 * 64.0);
        let h = pseudoinverse_hitting(&star(4)).unwrap();
        assert!((h.get(0, 1) - 7.0).abs() < 1e-8 * 7.0);
        assert!((h.get(1, 0) - 1.0).abs() < 1e-8);
        assert_eq!(*h.get(2, 2), 0.0);
    }

    #[test]
    fn pseudoinverse_is_a_generalized_inverse() {
        let g = star(5);
        let l = laplacian(&g).unwrap().to_matrix();
        let p = pseudoinverse(&g).unwrap();
        assert!((&l * &p * &l - &l).amax() < 1e-12);
        assert!((&p * &l * &p - &p).amax() < 1e-12);
        assert!(p.row_sum().amax() < 1e-12);
    }

    #[test]
    fn dense_cap() {
        assert!(matches!(
            spectrum(&path(2001)),
            Err(Error::DenseCapExceeded { n: 2001, cap: 2000 })
        ));
    }

    #[test]
    fn decimation_p3_to_p9() {
        let t = decimate_eigenvalue(1.0, 2).unwrap();
        let small = 4.0 * (std::f64::consts::PI / 18.0).sin().powi(2);
        assert!((t.children[0] - small).abs() < 1e-12);
        assert!(t.residuals.iter().all(|&r| r <= 1e-10));
        let p9 = spectrum(&path(9)).unwrap();
        for c in t.children {
            assert!(p9.nearest(c).1 < 1e-10);
        }
    }

    #[test]
    fn decimation_small_parent_limit() {
        for s in 2..7 {
            let t = decimate_eigenvalue(1e-12, s).unwrap();
            let want = [0.0, 3.0, s as f64 + 1.0];
            let want = if s == 2 { [0.0, 3.0, 3.0] } else { want };
            for (a, b) in t.children.iter().zip(want) {
                assert!((a - b).abs() < 1e-5, "{t:?}");
            }
        }
    }

    #[test]
    fn decimation_errors() {
        assert!(decimate_eigenvalue(0.0, 3).is_err());
        assert!(decimate_eigenvalue(1.0, 1).is_err());
        // beyond the local maximum of the cubic only one root is real
        assert!(matches!(
            decimate_eigenvalue(50.0, 3),
            Err(Error::NoThreeRealRoots { s: 3, .. })
        ));
    }

    #[test]
    fn decimation_s3_children_are_distinct() {
        let t = decimate_eigenvalue(1.0, 3).unwrap();
        assert!(t.residuals.iter().all(|&r| r <= 1e-10));
        assert!(t.children[0] < t.children[1] && t.children[1] < t.children[2]);
    }

    #[test]
    fn split_sums() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        let r = printed_split_sums(2, 1).unwrap();
        assert_eq!(r.first, q(1, 3));
        assert_eq!(r.second, q(1, 1));
        assert_eq!(r.total, q(8, 3));
        for s in 2..9u64 {
            assert_eq!(printed_split_sums(s, 1).unwrap().first, q(1, s as i64 + 1));
        }
        assert!(printed_split_sums(2, 0).is_err());
    }

    #[test]
    fn spectrum_csv() {
        let mut buf = Vec::new();
        write_spectrum_csv(&spectrum(&star(3)).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "index,eigenvalue,multiplicity_hint");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0,0.000000000000000e0,1"));
        assert!(lines[2].ends_with(",2"));
    }
}
