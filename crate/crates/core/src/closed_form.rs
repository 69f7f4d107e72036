//! Exact Wiener index and mean first-passage time of generalized Vicsek
//! fractals from the seed's vertex count `n` and Wiener index `W` alone.
//!
//! One Vicsek step maps `(N, W)` to
//!
//! ```text
//! W' = 3(s+1)^2 W + (s^2 - s - 2) N^2 + (s+2) N,    N' = (s+1) N
//! ```
//!
//! and solving that linear recursion gives
//!
//! ```text
//! W_t = 3^t (s+1)^{2t} W
//!     + (s-2) n^2 (s+1)^{2t-1} (3^t - 1) / 2
//!     + (s+2) n (s+1)^{t-1} ((3(s+1))^t - 1) / (3s+2)
//! ```
//!
//! On a tree the mean first-passage time is `2W/N`, so every quantity here is
//! an exact integer or rational. Floating point only enters the scaling
//! exponents.
//!
//! The `printed_*` evaluators reproduce an alternative set of published
//! expressions verbatim for side-by-side comparison; they carry no
//! correctness claim and disagree with brute force away from `s = 2, t = 1`.

use std::io::Write;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{pow, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectral::printed_split_sums;
use crate::tree::SeedTree;

/// Seed summary plus generation parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormParams {
    n: u64,
    wiener: BigInt,
    s: u64,
    t: u32,
}

impl ClosedFormParams {
    pub fn new(n: u64, wiener: impl Into<BigInt>, s: u64, t: u32) -> Result<Self> {
        let wiener = wiener.into();
        if n == 0 {
            return Err(Error::BadParameter("n must be >= 1".into()));
        }
        if s < 2 {
            return Err(Error::BadParameter(format!("s must be >= 2, got {s}")));
        }
        if wiener.is_negative() {
            return Err(Error::BadParameter("W must be >= 0".into()));
        }
        if (n == 1) != wiener.is_zero() {
            return Err(Error::BadParameter(format!(
                "W = 0 exactly when n = 1 (got n = {n}, W = {wiener})"
            )));
        }
        Ok(ClosedFormParams { n, wiener, s, t })
    }

    /// Parameters for a concrete seed tree.
    pub fn from_seed(seed: &SeedTree, s: u64, t: u32) -> Result<Self> {
        let w = crate::tree::wiener_fast_tree(seed);
        Self::new(seed.vertex_count() as u64, w, s, t)
    }

    /// Star with `s` leaves: `n = s + 1`, `W = s^2`.
    pub fn typical(s: u64, t: u32) -> Result<Self> {
        Self::new(s + 1, BigInt::from(s) * s, s, t)
    }

    pub fn with_t(&self, t: u32) -> Self {
        ClosedFormParams { t, ..self.clone() }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn wiener(&self) -> &BigInt {
        &self.wiener
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    /// Whether the seed is the star with `s` leaves.
    pub fn is_typical(&self) -> bool {
        self.n == self.s + 1 && self.wiener == BigInt::from(self.s) * self.s
    }

    /// `n (s+1)^t`.
    pub fn vertex_count(&self) -> BigInt {
        BigInt::from(self.n) * pow(BigInt::from(self.s + 1), self.t as usize)
    }
}

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// One Vicsek step: `3(s+1)^2 W + (s^2-s-2) n^2 + (s+2) n`.
pub fn wiener_one_step(n: &BigInt, wiener: &BigInt, s: u64) -> Result<BigInt> {
    if s < 2 {
        return Err(Error::BadParameter(format!("s must be >= 2, got {s}")));
    }
    if !n.is_positive() {
        return Err(Error::BadParameter("n must be >= 1".into()));
    }
    let s1 = big(s + 1);
    let quad = big(s * s - s - 2);
    Ok(big(3) * &s1 * &s1 * wiener + quad * n * n + big(s + 2) * n)
}

/// Iterates [`wiener_one_step`] `t` times.
pub fn wiener_recursive(p: &ClosedFormParams) -> Result<BigInt> {
    let mut w = p.wiener.clone();
    let mut n = big(p.n);
    for _ in 0..p.t {
        w = wiener_one_step(&n, &w, p.s)?;
        n *= p.s + 1;
    }
    Ok(w)
}

fn exact_div(num: BigInt, den: &BigInt, what: &str) -> Result<BigInt> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "{what}: division by {den} leaves remainder {r}"
        )));
    }
    Ok(q)
}

/// Closed-form Wiener index of generation `t`.
pub fn wiener_closed(p: &ClosedFormParams) -> Result<BigInt> {
    if p.t == 0 {
        return Ok(p.wiener.clone());
    }
    let t = p.t as usize;
    let (s, n) = (p.s, big(p.n));
    let s1 = big(s + 1);
    let three_t = pow(big(3), t);
    let growth = pow(big(3 * (s + 1)), t);

    let lead = &three_t * pow(s1.clone(), 2 * t) * &p.wiener;
    let quad = exact_div(
        big(s - 2) * &n * &n * pow(s1.clone(), 2 * t - 1) * (&three_t - 1),
        &big(2),
        "quadratic term",
    )?;
    let lin = exact_div(
        big(s + 2) * &n * pow(s1, t - 1) * (growth - 1),
        &big(3 * s + 2),
        "linear term",
    )?;
    Ok(lead + quad + lin)
}

/// Tree identity `A = 2W / |T|`.
pub fn mfpt_from_wiener(wiener: &BigInt, vertex_count: &BigInt) -> Result<BigRational> {
    if vertex_count < &big(2) {
        return Err(Error::DegenerateSize {
            n: vertex_count.to_usize().unwrap_or(0),
        });
    }
    Ok(ratio(big(2) * wiener, vertex_count.clone()))
}

/// Closed-form mean first-passage time of generation `t`:
///
/// ```text
/// A_t = 2 3^t (s+1)^t W / n + (s-2) n (s+1)^{t-1} (3^t - 1)
///     + 2 (s+2) ((3(s+1))^t - 1) / ((3s+2)(s+1))
/// ```
pub fn mfpt_closed(p: &ClosedFormParams) -> Result<BigRational> {
    if p.t == 0 {
        if p.n < 2 {
            return Err(Error::BadParameter(
                "mean first-passage time needs at least 2 vertices".into(),
            ));
        }
        return mfpt_from_wiener(&p.wiener, &big(p.n));
    }
    let t = p.t as usize;
    let (s, n) = (p.s, big(p.n));
    let s1 = big(s + 1);
    let three_t = pow(big(3), t);
    let growth = pow(big(3 * (s + 1)), t);

    let lead = ratio(
        big(2) * &three_t * pow(s1.clone(), t) * &p.wiener,
        n.clone(),
    );
    let quad = big(s - 2) * &n * pow(s1, t - 1) * (&three_t - 1);
    let lin = ratio(big(2 * (s + 2)) * (growth - 1), big((3 * s + 2) * (s + 1)));
    Ok(lead + BigRational::from_integer(quad) + lin)
}

/// Which formula produced a [`ClosedFormReport`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Derived,
    PrintedWiener,
    PrintedMfpt,
    PrintedTypicalMfpt,
    PrintedSplitSums,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Derived => "derived",
            Variant::PrintedWiener => "printed-wiener",
            Variant::PrintedMfpt => "printed-mfpt",
            Variant::PrintedTypicalMfpt => "printed-typical-mfpt",
            Variant::PrintedSplitSums => "printed-split-sums",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub variant: Variant,
    /// `None` for formulas that only give the mean first-passage time.
    pub wiener_t: Option<BigInt>,
    pub mfpt_t: BigRational,
    pub vertex_count_t: BigInt,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    variant: &'a str,
    wiener: Option<String>,
    mfpt_num: String,
    mfpt_den: String,
    vertex_count: String,
}

impl ClosedFormReport {
    /// Exact values as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            variant: self.variant.as_str(),
            wiener: self.wiener_t.as_ref().map(ToString::to_string),
            mfpt_num: self.mfpt_t.numer().to_string(),
            mfpt_den: self.mfpt_t.denom().to_string(),
            vertex_count: self.vertex_count_t.to_string(),
        })
        .expect("report serializes")
    }
}

/// Derived report: Wiener index by closed form, MFPT via `2W/N`.
pub fn derived_report(p: &ClosedFormParams) -> Result<ClosedFormReport> {
    let w = wiener_closed(p)?;
    let nv = p.vertex_count();
    let a = mfpt_from_wiener(&w, &nv)?;
    Ok(ClosedFormReport {
        variant: Variant::Derived,
        wiener_t: Some(w),
        mfpt_t: a,
        vertex_count_t: nv,
    })
}

/// `3^t (s+1)^{2t} W + n^2 (3^t-1)(s+1)^{2(t-1)} / 2 + n (s+1)^{t-1} (3^t (s+1)^t - 1) / (3s+2)`
pub fn printed_wiener(p: &ClosedFormParams) -> BigRational {
    let t = p.t as i32;
    let (s, n) = (p.s, big(p.n));
    let s1 = BigRational::from_integer(big(s + 1));
    let three_t = pow(big(3), p.t as usize);
    let int = BigRational::from_integer;

    let lead = int(&three_t * pow(big(s + 1), 2 * p.t as usize) * &p.wiener);
    let quad = int(&n * &n * (&three_t - 1)) * s1.pow(2 * (t - 1)) / int(big(2));
    let lin = int(n) * s1.pow(t - 1) * int(&three_t * pow(big(s + 1), p.t as usize) - 1)
        / int(big(3 * s + 2));
    lead + quad + lin
}

/// `2 3^t (s+1)^t W / n + n (3^t-1)(s+1)^{t-2} + 2 (3^t (s+1)^t - 1) / ((3s+2)(s+1))`
pub fn printed_mfpt(p: &ClosedFormParams) -> BigRational {
    let t = p.t as i32;
    let (s, n) = (p.s, big(p.n));
    let int = BigRational::from_integer;
    let s1 = int(big(s + 1));
    let three_t = pow(big(3), p.t as usize);
    let growth = &three_t * pow(big(s + 1), p.t as usize);

    let lead = ratio(big(2) * &growth * &p.wiener, n.clone());
    let quad = int(n * (&three_t - 1)) * s1.pow(t - 2);
    let lin = ratio(big(2) * (growth - 1), big((3 * s + 2) * (s + 1)));
    lead + quad + lin
}

/// `2 3^t (s+1)^{t+1} + (3^t-1)(s+1)^{t-1} + 2 (3^t (s+1)^t - 1) / ((3s+2)(s+1))`
pub fn printed_typical_mfpt(s: u64, t: u32) -> BigRational {
    let int = BigRational::from_integer;
    let s1 = int(big(s + 1));
    let three_t = pow(big(3), t as usize);
    let growth = &three_t * pow(big(s + 1), t as usize);

    let lead = int(big(2) * &three_t * pow(big(s + 1), t as usize + 1));
    let mid = int(&three_t - 1) * s1.pow(t as i32 - 1);
    let lin = ratio(big(2) * (growth - 1), big((3 * s + 2) * (s + 1)));
    lead + mid + lin
}

/// Evaluates every applicable formula variant at `p`. The typical-seed MFPT
/// and the spectral split sums are included only for the star seed and `t >= 1`.
pub fn eval_printed_formulas(p: &ClosedFormParams) -> Result<Vec<ClosedFormReport>> {
    let nv = p.vertex_count();
    if nv < big(2) {
        return Err(Error::BadParameter(
            "formula comparison needs at least 2 vertices".into(),
        ));
    }
    let mut out = vec![derived_report(p)?];

    let w3 = printed_wiener(p);
    let w3_int = if w3.is_integer() {
        Some(w3.to_integer())
    } else {
        None
    };
    out.push(ClosedFormReport {
        variant: Variant::PrintedWiener,
        mfpt_t: BigRational::from_integer(big(2)) * w3 / BigRational::from_integer(nv.clone()),
        wiener_t: w3_int,
        vertex_count_t: nv.clone(),
    });
    out.push(ClosedFormReport {
        variant: Variant::PrintedMfpt,
        wiener_t: None,
        mfpt_t: printed_mfpt(p),
        vertex_count_t: nv.clone(),
    });
    if p.is_typical() && p.t >= 1 {
        out.push(ClosedFormReport {
            variant: Variant::PrintedTypicalMfpt,
            wiener_t: None,
            mfpt_t: printed_typical_mfpt(p.s, p.t),
            vertex_count_t: nv.clone(),
        });
        let sums = printed_split_sums(p.s, p.t)?;
        out.push(ClosedFormReport {
            variant: Variant::PrintedSplitSums,
            wiener_t: None,
            mfpt_t: sums.total,
            vertex_count_t: nv,
        });
    }
    Ok(out)
}

/// Natural log of a positive big integer via its leading 64 bits and binary
/// exponent; keeps full `f64` relative precision at any magnitude.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert_eq!(x.sign(), Sign::Plus, "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits") as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln(p/q)` for a positive rational.
pub fn ln_rational(x: &BigRational) -> f64 {
    ln_bigint(x.numer()) - ln_bigint(x.denom())
}

/// Scaling exponents of the fractal family with parameter `s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub s: u64,
    /// `A ~ N^lambda`, `lambda = 1 + ln 3 / ln(s+1)`.
    pub lambda: f64,
    pub spectral_dim: f64,
    pub fractal_dim: f64,
    pub walk_dim: f64,
    pub delta_series: Vec<(u32, f64)>,
}

pub fn scaling_exponents(s: u64) -> Result<ScalingReport> {
    if s < 2 {
        return Err(Error::BadParameter(format!("s must be >= 2, got {s}")));
    }
    let ln3 = 3f64.ln();
    let ln_s1 = ((s + 1) as f64).ln();
    let lambda = 1.0 + ln3 / ln_s1;
    let spectral_dim = 2.0 / lambda;
    let fractal_dim = ln_s1 / ln3;
    let walk_dim = 1.0 + ln_s1 / ln3;
    let via_identity = 2.0 * fractal_dim / spectral_dim;
    if (walk_dim - via_identity).abs() > 1e-12 {
        return Err(Error::InternalInconsistency(format!(
            "d_w = {walk_dim} but 2 d_f / d = {via_identity}"
        )));
    }
    Ok(ScalingReport {
        s,
        lambda,
        spectral_dim,
        fractal_dim,
        walk_dim,
        delta_series: Vec::new(),
    })
}

/// `Delta_t = ln A_t / ln N_t` from exact closed forms.
pub fn delta(p: &ClosedFormParams) -> Result<f64> {
    let nv = p.vertex_count();
    if nv < big(2) {
        return Err(Error::BadParameter(format!(
            "Delta undefined at t = {}: vertex count {nv} < 2",
            p.t
        )));
    }
    let a = mfpt_closed(p)?;
    Ok(ln_rational(&a) / ln_bigint(&nv))
}

pub fn delta_series(p: &ClosedFormParams, ts: RangeInclusive<u32>) -> Result<Vec<(u32, f64)>> {
    ts.map(|t| delta(&p.with_t(t)).map(|d| (t, d))).collect()
}

/// First `t` in `ts` with `|Delta_t - lambda| < tol`.
pub fn convergence_threshold(
    p: &ClosedFormParams,
    ts: RangeInclusive<u32>,
    tol: f64,
) -> Result<Option<u32>> {
    let lambda = scaling_exponents(p.s)?.lambda;
    for (t, d) in delta_series(p, ts)? {
        if (d - lambda).abs() < tol {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// One line of the scaling CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalingRow {
    pub s: u64,
    pub t: u32,
    pub vertex_count: BigInt,
    pub mfpt: BigRational,
    pub delta: f64,
    pub lambda: f64,
}

pub const SCALING_CSV_HEADER: &str = "s,t,vertex_count,mfpt_num,mfpt_den,delta,lambda";

/// Scaling rows for a seed over an `s x t` grid; rows are ordered by
/// `(s, t)` regardless of evaluation order. Generations with fewer than two
/// vertices are skipped.
pub fn scaling_table(
    n: u64,
    wiener: &BigInt,
    s_list: &[u64],
    ts: RangeInclusive<u32>,
) -> Result<Vec<ScalingRow>> {
    let jobs: Vec<(u64, u32)> = s_list
        .iter()
        .flat_map(|&s| ts.clone().map(move |t| (s, t)))
        .collect();
    let mut rows: Vec<ScalingRow> = jobs
        .par_iter()
        .map(|&(s, t)| -> Result<Option<ScalingRow>> {
            let p = ClosedFormParams::new(n, wiener.clone(), s, t)?;
            let vertex_count = p.vertex_count();
            if vertex_count < big(2) {
                return Ok(None);
            }
            Ok(Some(ScalingRow {
                s,
                t,
                mfpt: mfpt_closed(&p)?,
                delta: delta(&p)?,
                lambda: scaling_exponents(s)?.lambda,
                vertex_count,
            }))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    rows.sort_by_key(|r| (r.s, r.t));
    Ok(rows)
}

pub fn write_scaling_csv<W: Write>(rows: &[ScalingRow], mut out: W) -> Result<()> {
    writeln!(out, "{SCALING_CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{:.15},{:.15}",
            r.s,
            r.t,
            r.vertex_count,
            r.mfpt.numer(),
            r.mfpt.denom(),
            r.delta,
            r.lambda
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    fn params(n: u64, w: u64, s: u64, t: u32) -> ClosedFormParams {
        ClosedFormParams::new(n, w, s, t).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ClosedFormParams::new(0, 0u64, 2, 1).is_err());
        assert!(ClosedFormParams::new(3, 4u64, 1, 1).is_err());
        assert!(ClosedFormParams::new(1, 3u64, 2, 1).is_err());
        assert!(ClosedFormParams::new(3, 0u64, 2, 1).is_err());
        assert!(ClosedFormParams::new(3, -4i64, 2, 1).is_err());
        assert!(ClosedFormParams::typical(4, 2).unwrap().is_typical());
        assert!(!params(5, 18, 4, 1).is_typical());
    }

    #[test]
    fn one_step_anchors() {
        let one = |n: u64, w: u64, s| wiener_one_step(&n.into(), &w.into(), s).unwrap();
        assert_eq!(one(3, 4, 2), 120.into());
        assert_eq!(one(2, 1, 3), 74.into());
        assert_eq!(one(5, 18, 4), 1630.into());
        for s in 2..10u64 {
            assert_eq!(one(1, 0, s), (s * s).into());
        }
        assert!(wiener_one_step(&3.into(), &4.into(), 1).is_err());
    }

    #[test]
    fn recursion_and_closed_form_anchors() {
        assert_eq!(wiener_recursive(&params(3, 4, 2, 2)).unwrap(), 3276.into());
        assert_eq!(wiener_closed(&params(3, 4, 2, 2)).unwrap(), 3276.into());
        assert_eq!(wiener_recursive(&params(2, 1, 3, 1)).unwrap(), 74.into());
        assert_eq!(wiener_closed(&params(5, 18, 4, 1)).unwrap(), 1630.into());
        assert_eq!(wiener_closed(&params(5, 18, 4, 0)).unwrap(), 18.into());
        assert_eq!(wiener_recursive(&params(5, 18, 4, 0)).unwrap(), 18.into());
        assert_eq!(
            wiener_closed(&ClosedFormParams::typical(3, 1).unwrap()).unwrap(),
            516.into()
        );
    }

    #[test]
    fn closed_matches_recursion_on_grid() {
        for n in 1..=10u64 {
            // path and star Wiener indices both give real seeds
            let path_w = n * (n * n - 1) / 6;
            let star_w = (n - 1) * (n - 1);
            for w in [path_w, star_w] {
                for s in 2..=9 {
                    for t in 0..=12 {
                        let p = params(n, w, s, t);
                        assert_eq!(wiener_closed(&p).unwrap(), wiener_recursive(&p).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn mfpt_anchors() {
        assert_eq!(mfpt_from_wiener(&120.into(), &9.into()).unwrap(), q(80, 3));
        assert_eq!(mfpt_from_wiener(&16.into(), &5.into()).unwrap(), q(32, 5));
        assert_eq!(mfpt_from_wiener(&1.into(), &2.into()).unwrap(), q(1, 1));
        assert!(matches!(
            mfpt_from_wiener(&0.into(), &1.into()),
            Err(Error::DegenerateSize { n: 1 })
        ));
        assert_eq!(mfpt_closed(&params(3, 4, 2, 1)).unwrap(), q(80, 3));
        assert_eq!(mfpt_closed(&params(2, 1, 3, 1)).unwrap(), q(37, 2));
        assert!(mfpt_closed(&params(1, 0, 3, 0)).is_err());
        assert_eq!(mfpt_closed(&params(1, 0, 4, 1)).unwrap(), q(32, 5));
    }

    #[test]
    fn mfpt_closed_is_twice_wiener_over_vertex_count() {
        for s in 2..=9u64 {
            for t in 1..=10 {
                for p in [
                    ClosedFormParams::typical(s, t).unwrap(),
                    params(5, 18, s.max(3), t),
                ] {
                    let via_w = mfpt_from_wiener(&wiener_closed(&p).unwrap(), &p.vertex_count());
                    assert_eq!(mfpt_closed(&p).unwrap(), via_w.unwrap());
                }
            }
        }
    }

    #[test]
    fn printed_formula_values() {
        assert_eq!(printed_wiener(&params(3, 4, 2, 1)), q(120, 1));
        assert_eq!(
            printed_wiener(&ClosedFormParams::typical(3, 1).unwrap()),
            q(452, 1)
        );
        assert_eq!(
            printed_wiener(&ClosedFormParams::typical(2, 2).unwrap()),
            q(3330, 1)
        );
        assert_eq!(printed_typical_mfpt(2, 1), q(170, 3));
    }

    #[test]
    fn printed_reports_carry_variants() {
        let reports = eval_printed_formulas(&ClosedFormParams::typical(2, 1).unwrap()).unwrap();
        let variants: Vec<_> = reports.iter().map(|r| r.variant).collect();
        assert_eq!(
            variants,
            vec![
                Variant::Derived,
                Variant::PrintedWiener,
                Variant::PrintedMfpt,
                Variant::PrintedTypicalMfpt,
                Variant::PrintedSplitSums,
            ]
        );
        assert_eq!(reports[0].mfpt_t, q(80, 3));
        assert_eq!(reports[1].wiener_t, Some(120.into()));
        assert_eq!(reports[3].mfpt_t, q(170, 3));
        assert_eq!(reports[4].mfpt_t, q(8, 3));

        let general = eval_printed_formulas(&params(5, 18, 4, 1)).unwrap();
        assert_eq!(general.len(), 3);

        let json = reports[0].to_json();
        assert_eq!(json["variant"], "derived");
        assert_eq!(json["wiener"], "120");
        assert_eq!(json["mfpt_num"], "80");
        assert_eq!(json["mfpt_den"], "3");
        assert_eq!(json["vertex_count"], "9");
    }

    #[test]
    fn scaling_exponent_values() {
        let r = scaling_exponents(2).unwrap();
        assert!((r.fractal_dim - 1.0).abs() < 1e-15);
        assert!((r.walk_dim - 2.0).abs() < 1e-15);
        assert!((r.lambda - 2.0).abs() < 1e-15);
        assert!((r.spectral_dim - 1.0).abs() < 1e-15);

        let r4 = scaling_exponents(4).unwrap();
        assert!((r4.lambda - (1.0 + 3f64.ln() / 5f64.ln())).abs() < 1e-15);
        assert!((r4.lambda - 1.682606).abs() < 1e-6);

        let r3 = scaling_exponents(3).unwrap();
        assert!((r3.spectral_dim - 2.0 * 4f64.ln() / 12f64.ln()).abs() < 1e-15);
        assert!((r3.spectral_dim - 1.11577).abs() < 1e-5);
        assert!(scaling_exponents(1).is_err());
    }

    #[test]
    fn ln_of_huge_integers() {
        let x = pow(BigInt::from(2), 200);
        assert!((ln_bigint(&x) / (200.0 * std::f64::consts::LN_2) - 1.0).abs() < 1e-14);
        let y = pow(BigInt::from(3), 500) * 7;
        let want = 500.0 * 3f64.ln() + 7f64.ln();
        assert!((ln_bigint(&y) / want - 1.0).abs() < 1e-14);
        assert!((ln_bigint(&BigInt::from(9)) - 9f64.ln()).abs() < 1e-15);
        assert!((ln_rational(&q(80, 3)) - (80.0f64 / 3.0).ln()).abs() < 1e-14);
    }

    #[test]
    fn delta_values() {
        let d = delta(&params(3, 4, 2, 1)).unwrap();
        assert!((d - (80.0f64 / 3.0).ln() / 9f64.ln()).abs() < 1e-13);
        assert!(delta(&params(1, 0, 3, 0)).is_err());
        let series = delta_series(&params(5, 18, 4, 0), 0..=50).unwrap();
        assert_eq!(series.len(), 51);
        assert!(series.iter().all(|(_, d)| d.is_finite()));
        assert!(delta_series(&params(1, 0, 4, 0), 0..=3).is_err());
    }

    #[test]
    fn scaling_csv_layout() {
        let rows = scaling_table(3, &4.into(), &[2], 0..=1).unwrap();
        let mut buf = Vec::new();
        write_scaling_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], SCALING_CSV_HEADER);
        assert!(lines[1].starts_with("2,0,3,8,3,"));
        assert!(lines[2].starts_with("2,1,9,80,3,"));
        // single-vertex seed: t = 0 row skipped
        let rows = scaling_table(1, &0.into(), &[3], 0..=2).unwrap();
        assert_eq!(rows.iter().map(|r| r.t).collect::<Vec<_>>(), vec![1, 2]);
    }
}
