//! Splitting level of `H¹` of punctured nodal curves of genus 0 and 1,
//! read off numerically from period matrices.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoreError, Result};

/// A point of P¹ over ℂ.
#[derive(Clone, Copy, PartialEq, Debug)]
pub enum ProjPoint {
    Finite(Complex64),
    Infinity,
}

impl ProjPoint {
    pub fn new(re: f64, im: f64) -> Self {
        ProjPoint::Finite(Complex64::new(re, im))
    }

    /// Homogeneous coordinates `[z : 1]` or `[1 : 0]`.
    fn homogeneous(self) -> (Complex64, Complex64) {
        match self {
            ProjPoint::Finite(z) => (z, Complex64::new(1.0, 0.0)),
            ProjPoint::Infinity => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        }
    }

    pub fn finite(self) -> Option<Complex64> {
        match self {
            ProjPoint::Finite(z) => Some(z),
            ProjPoint::Infinity => None,
        }
    }

    /// Image under `z ↦ (az + b)/(cz + d)`.
    pub fn mobius(self, [a, b, c, d]: [Complex64; 4]) -> ProjPoint {
        let (x, y) = self.homogeneous();
        let (nx, ny) = (a * x + b * y, c * x + d * y);
        if ny == Complex64::new(0.0, 0.0) {
            ProjPoint::Infinity
        } else {
            ProjPoint::Finite(nx / ny)
        }
    }
}

impl From<Complex64> for ProjPoint {
    fn from(z: Complex64) -> Self {
        ProjPoint::Finite(z)
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ProjPoint::Finite(z) => [z.re, z.im].serialize(s),
            ProjPoint::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ProjPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Pair([f64; 2]),
            Real(f64),
            Symbol(String),
        }
        match Raw::deserialize(d)? {
            Raw::Pair([re, im]) => Ok(ProjPoint::new(re, im)),
            Raw::Real(re) => Ok(ProjPoint::new(re, 0.0)),
            Raw::Symbol(s) if s == "inf" || s == "∞" => Ok(ProjPoint::Infinity),
            Raw::Symbol(s) => Err(serde::de::Error::custom(format!(
                "expected [re, im] or \"inf\", got {s:?}"
            ))),
        }
    }
}

fn det(x: (Complex64, Complex64), y: (Complex64, Complex64)) -> Complex64 {
    x.0 * y.1 - x.1 * y.0
}

/// `(a, b; c, d) = ((a−c)/(a−d)) / ((b−c)/(b−d))`, extended to ∞ by continuity.
pub fn cross_ratio(a: ProjPoint, b: ProjPoint, c: ProjPoint, d: ProjPoint) -> Result<Complex64> {
    let pts = [a, b, c, d].map(ProjPoint::homogeneous);
    for i in 0..4 {
        for j in i + 1..4 {
            if det(pts[i], pts[j]).norm() == 0.0 {
                return Err(CoreError::CoincidentPoints(i, j));
            }
        }
    }
    let [a, b, c, d] = pts;
    Ok(det(a, c) * det(b, d) / (det(a, d) * det(b, c)))
}

fn default_tol() -> f64 {
    1e-9
}

fn default_truncation() -> usize {
    40
}

/// `m` punctures and `n` glued pairs `(P_j, Q_j)` on P¹ (genus 0) or on
/// `ℂ/(ℤ + τℤ)` (genus 1).
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct CurveConfig {
    pub genus: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Complex64>,
    pub punctures: Vec<ProjPoint>,
    pub pairs: Vec<(ProjPoint, ProjPoint)>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_truncation")]
    pub theta_truncation: usize,
}

impl CurveConfig {
    pub fn genus0(punctures: Vec<ProjPoint>, pairs: Vec<(ProjPoint, ProjPoint)>) -> Self {
        CurveConfig {
            genus: 0,
            tau: None,
            punctures,
            pairs,
            tol: default_tol(),
            theta_truncation: default_truncation(),
        }
    }

    pub fn genus1(tau: Complex64, punctures: Vec<Complex64>, pairs: Vec<(Complex64, Complex64)>) -> Self {
        CurveConfig {
            genus: 1,
            tau: Some(tau),
            punctures: punctures.into_iter().map(ProjPoint::Finite).collect(),
            pairs: pairs.into_iter().map(|(p, q)| (p.into(), q.into())).collect(),
            tol: default_tol(),
            theta_truncation: default_truncation(),
        }
    }

    /// Punctures followed by `P_1, Q_1, P_2, Q_2, …`.
    fn all_points(&self) -> Vec<ProjPoint> {
        let mut out = self.punctures.clone();
        for (p, q) in &self.pairs {
            out.push(*p);
            out.push(*q);
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        if self.punctures.is_empty() {
            return Err(CoreError::InvalidConfig("at least one puncture is required".into()));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(CoreError::InvalidConfig("tol must be positive".into()));
        }
        let pts = self.all_points();
        match self.genus {
            0 => {
                for i in 0..pts.len() {
                    for j in i + 1..pts.len() {
                        let same = match (pts[i], pts[j]) {
                            (ProjPoint::Infinity, ProjPoint::Infinity) => true,
                            (ProjPoint::Finite(a), ProjPoint::Finite(b)) => (a - b).norm() <= self.tol,
                            _ => false,
                        };
                        if same {
                            return Err(CoreError::CoincidentPoints(i, j));
                        }
                    }
                }
            }
            1 => {
                let tau = self
                    .tau
                    .ok_or_else(|| CoreError::InvalidConfig("genus 1 requires tau".into()))?;
                if tau.im.is_nan() || tau.im <= 0.0 {
                    return Err(CoreError::InvalidConfig("tau must have positive imaginary part".into()));
                }
                if self.theta_truncation == 0 {
                    return Err(CoreError::InvalidConfig("theta_truncation must be at least 1".into()));
                }
                let finite: Vec<Complex64> = pts
                    .iter()
                    .map(|p| {
                        p.finite()
                            .ok_or_else(|| CoreError::InvalidConfig("genus-1 points must be finite".into()))
                    })
                    .collect::<Result<_>>()?;
                for i in 0..finite.len() {
                    for j in i + 1..finite.len() {
                        if in_lattice(finite[i] - finite[j], tau, self.tol) {
                            return Err(CoreError::CoincidentPoints(i, j));
                        }
                    }
                }
            }
            g => return Err(CoreError::InvalidConfig(format!("genus {g} is not supported"))),
        }
        Ok(())
    }
}

/// `z ∈ ℤ + τℤ` up to `tol`.
fn in_lattice(z: Complex64, tau: Complex64, tol: f64) -> bool {
    let b = z.im / tau.im;
    let a = z.re - b * tau.re;
    (a - a.round()).abs() <= tol && (b - b.round()).abs() <= tol
}

/// `A = (B, C)`: residue block `B` and log-period block `C`.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct PeriodMatrix {
    pub b: Vec<Vec<Complex64>>,
    pub c: Vec<Vec<Complex64>>,
    /// Entries `(i, j)` whose cross-ratio lies on the negative real axis,
    /// where the principal logarithm is discontinuous.
    pub branch_flags: Vec<(usize, usize)>,
}

impl PeriodMatrix {
    pub fn assembled(&self) -> Vec<Vec<Complex64>> {
        self.b
            .iter()
            .zip(&self.c)
            .map(|(b, c)| b.iter().chain(c).copied().collect())
            .collect()
    }
}

fn residue_block(m: usize) -> Vec<Vec<Complex64>> {
    let two_pi_i = Complex64::new(0.0, 2.0 * PI);
    (0..m - 1)
        .map(|i| {
            (0..m - 1)
                .map(|j| match i as isize - j as isize {
                    0 => two_pi_i,
                    1 => -two_pi_i,
                    _ => Complex64::new(0.0, 0.0),
                })
                .collect()
        })
        .collect()
}

/// `cross_ratio(Q_j, P_j, p_i, p_{i+1})` for each row `i` and pair `j`.
pub fn genus0_cross_ratios(cfg: &CurveConfig) -> Result<Vec<Vec<Complex64>>> {
    let p = &cfg.punctures;
    (0..p.len().saturating_sub(1))
        .map(|i| {
            cfg.pairs
                .iter()
                .map(|&(pj, qj)| cross_ratio(qj, pj, p[i], p[i + 1]))
                .collect()
        })
        .collect()
}

pub fn genus0_period_matrix(cfg: &CurveConfig) -> Result<PeriodMatrix> {
    genus0_checks(cfg)?;
    if cfg.punctures.len() < 2 {
        return Err(CoreError::InvalidConfig(
            "a period matrix needs at least two punctures".into(),
        ));
    }
    let ratios = genus0_cross_ratios(cfg)?;
    let mut branch_flags = Vec::new();
    let c = ratios
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, z)| {
                    if z.re < 0.0 && z.im.abs() <= cfg.tol * z.norm().max(1.0) {
                        // Principal branch: arg in (−π, π], whatever the sign of a zero imaginary part.
                        branch_flags.push((i, j));
                        Complex64::new(z.norm().ln(), PI)
                    } else {
                        z.ln()
                    }
                })
                .collect()
        })
        .collect();
    Ok(PeriodMatrix {
        b: residue_block(cfg.punctures.len()),
        c,
        branch_flags,
    })
}

fn genus0_checks(cfg: &CurveConfig) -> Result<()> {
    if cfg.genus != 0 {
        return Err(CoreError::InvalidConfig("expected a genus-0 configuration".into()));
    }
    cfg.validate()
}

/// Per-row data behind an α value.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct RowReport {
    pub i: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imag_parts: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub imag_parts_branch_adjusted: Option<Vec<f64>>,
    /// Whether the row is discounted from `m − 1`.
    pub degenerate: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct CurveReport {
    pub genus: u8,
    pub alpha: usize,
    /// Genus 1 only: α when the reality test is applied to `Im c` reduced
    /// modulo `2π` into `(−π, π]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_branch_adjusted: Option<usize>,
    pub rows: Vec<RowReport>,
}

pub fn genus0_report(cfg: &CurveConfig) -> Result<CurveReport> {
    genus0_checks(cfg)?;
    let m = cfg.punctures.len();
    let rows: Vec<RowReport> = genus0_cross_ratios(cfg)?
        .into_iter()
        .enumerate()
        .map(|(i, row)| {
            let moduli: Vec<f64> = row.iter().map(|z| z.norm()).collect();
            let degenerate = moduli.iter().all(|r| (r - 1.0).abs() <= cfg.tol);
            RowReport {
                i,
                moduli: Some(moduli),
                imag_parts: None,
                imag_parts_branch_adjusted: None,
                degenerate,
            }
        })
        .collect();
    let alpha = (m - 1) - rows.iter().filter(|r| r.degenerate).count();
    Ok(CurveReport {
        genus: 0,
        alpha,
        alpha_branch_adjusted: None,
        rows,
    })
}

/// `(m − 1) − #{i : |(Q_j, P_j; p_i, p_{i+1})| = 1 for all j}`.
pub fn genus0_alpha(cfg: &CurveConfig) -> Result<usize> {
    Ok(genus0_report(cfg)?.alpha)
}

/// `θ(z, τ) = Σ_{|n| ≤ N} exp(πi n² τ + 2πi n z)`.
pub fn theta(z: Complex64, tau: Complex64, n: usize) -> Result<Complex64> {
    if tau.im.is_nan() || tau.im <= 0.0 {
        return Err(CoreError::InvalidConfig("tau must have positive imaginary part".into()));
    }
    let n = n as i64;
    let mut sum = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let k = k as f64;
        sum += (Complex64::new(0.0, PI) * (k * k * tau + 2.0 * k * z)).exp();
    }
    Ok(sum)
}

/// Upper bound for `Σ_{|n| > N} |exp(πi n² τ + 2πi n z)|`.
pub fn theta_tail_bound(z: Complex64, tau: Complex64, n: usize) -> f64 {
    let (t, y) = (tau.im, z.im.abs());
    let log_term = |k: f64| -PI * k * k * t + 2.0 * PI * k * y;
    let mut bound = 0.0;
    let mut k = n as f64 + 1.0;
    // Past k > y/t the log-terms decrease with gaps ≥ π·t, so a geometric
    // series dominates the rest once the terms are negligible.
    loop {
        let lt = log_term(k);
        bound += 2.0 * lt.exp();
        if k > y / t + 1.0 && lt < -745.0 {
            break;
        }
        if k > n as f64 + 1e6 {
            return f64::INFINITY;
        }
        k += 1.0;
    }
    bound
}

fn checked_theta(z: Complex64, tau: Complex64, cfg: &CurveConfig) -> Result<Complex64> {
    let value = theta(z, tau, cfg.theta_truncation)?;
    let bound = theta_tail_bound(z, tau, cfg.theta_truncation);
    if bound > cfg.tol * value.norm().max(1.0) {
        return Err(CoreError::Truncation { bound, tol: cfg.tol });
    }
    if value.norm() <= cfg.tol {
        return Err(CoreError::DegenerateTheta { re: z.re, im: z.im });
    }
    Ok(value)
}

/// `c_ij = log(θ(Q_j−p_i−h)/θ(Q_j−p_{i+1}−h)) − log(θ(P_j−p_i−h)/θ(P_j−p_{i+1}−h))`
/// with `h = (1+τ)/2`, principal logarithms throughout.
pub fn genus1_c_matrix(cfg: &CurveConfig) -> Result<Vec<Vec<Complex64>>> {
    genus1_checks(cfg)?;
    let tau = cfg.tau.expect("validated");
    let h = (Complex64::new(1.0, 0.0) + tau) / 2.0;
    let pts: Vec<Complex64> = cfg.punctures.iter().map(|p| p.finite().expect("validated")).collect();
    let th = |z: Complex64| checked_theta(z - h, tau, cfg);
    let mut rows = Vec::new();
    for i in 0..pts.len().saturating_sub(1) {
        let mut row = Vec::new();
        for &(pj, qj) in &cfg.pairs {
            let (pj, qj) = (pj.finite().expect("validated"), qj.finite().expect("validated"));
            let log_q = (th(qj - pts[i])? / th(qj - pts[i + 1])?).ln();
            let log_p = (th(pj - pts[i])? / th(pj - pts[i + 1])?).ln();
            row.push(log_q - log_p);
        }
        rows.push(row);
    }
    Ok(rows)
}

fn genus1_checks(cfg: &CurveConfig) -> Result<()> {
    if cfg.genus != 1 {
        return Err(CoreError::InvalidConfig("expected a genus-1 configuration".into()));
    }
    cfg.validate()
}

/// `x` reduced into `(−π, π]`.
fn reduce_angle(x: f64) -> f64 {
    let r = x - 2.0 * PI * (x / (2.0 * PI)).round();
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

pub fn genus1_report(cfg: &CurveConfig) -> Result<CurveReport> {
    let c = genus1_c_matrix(cfg)?;
    let m = cfg.punctures.len();
    let mut adjusted_degenerate = 0;
    let rows: Vec<RowReport> = c
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let imag: Vec<f64> = row.iter().map(|z| z.im).collect();
            let adjusted: Vec<f64> = imag.iter().map(|&x| reduce_angle(x)).collect();
            if adjusted.iter().all(|x| x.abs() <= cfg.tol) {
                adjusted_degenerate += 1;
            }
            RowReport {
                i,
                moduli: None,
                degenerate: imag.iter().all(|x| x.abs() <= cfg.tol),
                imag_parts: Some(imag),
                imag_parts_branch_adjusted: Some(adjusted),
            }
        })
        .collect();
    let alpha = (m - 1) - rows.iter().filter(|r| r.degenerate).count();
    Ok(CurveReport {
        genus: 1,
        alpha,
        alpha_branch_adjusted: Some((m - 1) - adjusted_degenerate),
        rows,
    })
}

/// `(m − 1) − #{i : Im c_ij = 0 for all j}`.
pub fn genus1_alpha(cfg: &CurveConfig) -> Result<usize> {
    Ok(genus1_report(cfg)?.alpha)
}

pub fn curve_report(cfg: &CurveConfig) -> Result<CurveReport> {
    match cfg.genus {
        0 => genus0_report(cfg),
        1 => genus1_report(cfg),
        g => Err(CoreError::InvalidConfig(format!("genus {g} is not supported"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pt(re: f64, im: f64) -> ProjPoint {
        ProjPoint::new(re, im)
    }

    fn four_points(q: ProjPoint) -> CurveConfig {
        CurveConfig::genus0(vec![pt(0.0, 0.0), pt(1.0, 0.0)], vec![(ProjPoint::Infinity, q)])
    }

    #[test]
    fn cross_ratio_examples() {
        let inf = ProjPoint::Infinity;
        let z = cross_ratio(pt(0.5, 0.0), inf, pt(0.0, 0.0), pt(1.0, 0.0)).unwrap();
        assert!((z - c(-1.0, 0.0)).norm() < 1e-15);
        let z = cross_ratio(pt(2.0, 0.0), inf, pt(0.0, 0.0), pt(1.0, 0.0)).unwrap();
        assert!((z - c(2.0, 0.0)).norm() < 1e-15);
        // (∞, P; p1, p2) = (P − p2)/(P − p1)
        let (p, p1, p2) = (c(0.3, 2.0), c(-1.0, 0.5), c(4.0, -1.0));
        let z = cross_ratio(inf, p.into(), p1.into(), p2.into()).unwrap();
        assert!((z - (p - p2) / (p - p1)).norm() < 1e-14);
        assert_eq!(
            cross_ratio(pt(1.0, 0.0), pt(2.0, 0.0), pt(1.0, 0.0), pt(3.0, 0.0)),
            Err(CoreError::CoincidentPoints(0, 2))
        );
    }

    #[test]
    fn cross_ratio_mobius_invariant() {
        let g = [c(1.0, 2.0), c(-0.5, 0.0), c(0.3, -1.0), c(2.0, 1.0)];
        let pts = [pt(0.2, 0.1), pt(-1.0, 3.0), ProjPoint::Infinity, pt(5.0, -2.0)];
        let before = cross_ratio(pts[0], pts[1], pts[2], pts[3]).unwrap();
        let moved = pts.map(|p| p.mobius(g));
        let after = cross_ratio(moved[0], moved[1], moved[2], moved[3]).unwrap();
        assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn genus0_alpha_examples() {
        assert_eq!(genus0_alpha(&four_points(pt(0.5, 0.0))).unwrap(), 0);
        assert_eq!(genus0_alpha(&four_points(pt(0.5, -3.0))).unwrap(), 0);
        assert_eq!(genus0_alpha(&four_points(pt(2.0, 0.0))).unwrap(), 1);
        assert_eq!(genus0_alpha(&four_points(pt(0.0, 1.0))).unwrap(), 1);
        let single = CurveConfig::genus0(vec![pt(0.0, 0.0)], vec![(pt(1.0, 0.0), pt(2.0, 0.0))]);
        assert_eq!(genus0_alpha(&single).unwrap(), 0);
    }

    #[test]
    fn genus0_period_matrix_examples() {
        let pm = genus0_period_matrix(&four_points(pt(2.0, 0.0))).unwrap();
        assert!((pm.c[0][0] - c(2f64.ln(), 0.0)).norm() < 1e-15);
        assert!(pm.branch_flags.is_empty());
        let pm = genus0_period_matrix(&four_points(pt(0.5, 0.0))).unwrap();
        assert!((pm.c[0][0] - c(0.0, PI)).norm() < 1e-15);
        assert_eq!(pm.branch_flags, vec![(0, 0)]);
        let three = CurveConfig::genus0(
            vec![pt(0.0, 0.0), pt(1.0, 0.0), pt(3.0, 0.0)],
            vec![(pt(5.0, 0.0), pt(7.0, 1.0))],
        );
        let pm = genus0_period_matrix(&three).unwrap();
        let t = c(0.0, 2.0 * PI);
        assert_eq!(pm.b, vec![vec![t, c(0.0, 0.0)], vec![-t, t]]);
        assert_eq!(pm.assembled()[1].len(), 3);
    }

    #[test]
    fn invalid_configs() {
        let dup = CurveConfig::genus0(vec![pt(0.0, 0.0), pt(1.0, 0.0)], vec![(pt(0.0, 0.0), pt(2.0, 0.0))]);
        assert_eq!(dup.validate(), Err(CoreError::CoincidentPoints(0, 2)));
        let mut g1 = CurveConfig::genus1(c(0.0, 1.0), vec![c(0.1, 0.0)], vec![(c(1.1, 1.0), c(0.5, 0.0))]);
        assert_eq!(g1.validate(), Err(CoreError::CoincidentPoints(0, 1)));
        g1.tau = Some(c(0.0, -1.0));
        assert!(matches!(g1.validate(), Err(CoreError::InvalidConfig(_))));
        let empty = CurveConfig::genus0(vec![], vec![]);
        assert!(matches!(empty.validate(), Err(CoreError::InvalidConfig(_))));
    }

    #[test]
    fn theta_identities() {
        let tau = c(0.0, 1.0);
        for z in [c(0.3, 0.2), c(-1.2, 0.7), c(2.5, -0.4)] {
            let t = theta(z, tau, 40).unwrap();
            assert!((theta(z + 1.0, tau, 40).unwrap() - t).norm() < 1e-12);
            assert!((theta(-z, tau, 40).unwrap() - t).norm() < 1e-12);
            let shifted = theta(z + tau, tau, 40).unwrap() * (Complex64::new(0.0, PI) * (tau + 2.0 * z)).exp();
            assert!((shifted - t).norm() < 1e-10);
        }
        assert!(theta(c(0.0, 0.0), c(1.0, 0.0), 10).is_err());
    }

    #[test]
    fn theta_truncation_rejected_for_thin_lattices() {
        let mut cfg = CurveConfig::genus1(
            c(0.0, 1e-3),
            vec![c(0.1, 0.0), c(0.3, 0.0)],
            vec![(c(0.5, 0.0), c(0.7, 0.0))],
        );
        cfg.theta_truncation = 5;
        assert!(matches!(genus1_alpha(&cfg), Err(CoreError::Truncation { .. })));
    }

    #[test]
    fn genus1_real_configuration() {
        for t in [0.8, 1.0, 2.0] {
            let cfg = CurveConfig::genus1(
                c(0.0, t),
                vec![c(0.1, 0.0), c(0.3, 0.0)],
                vec![(c(0.5, 0.0), c(0.7, 0.0))],
            );
            let c_mat = genus1_c_matrix(&cfg).unwrap();
            assert!(c_mat[0][0].im.abs() < 1e-12);
            assert_eq!(genus1_alpha(&cfg).unwrap(), 0);
        }
    }

    #[test]
    fn genus1_generic_configuration() {
        let cfg = CurveConfig::genus1(
            c(0.2, 1.1),
            vec![c(0.1, 0.05), c(0.4, 0.3)],
            vec![(c(0.6, 0.2), c(0.8, 0.7))],
        );
        let report = genus1_report(&cfg).unwrap();
        assert_eq!(report.alpha, 1);
        assert_eq!(report.alpha_branch_adjusted, Some(1));
        let single = CurveConfig::genus1(c(0.0, 1.0), vec![c(0.1, 0.0)], vec![(c(0.6, 0.2), c(0.8, 0.7))]);
        assert_eq!(genus1_alpha(&single).unwrap(), 0);
    }

    #[test]
    fn config_json() {
        let raw = r#"{"genus":0,"punctures":[[0,0],[1,0]],"pairs":[["inf",[0.5,0.7]]]}"#;
        let cfg: CurveConfig = serde_json::from_str(raw).unwrap();
        assert_eq!(cfg.tol, 1e-9);
        assert_eq!(cfg.pairs[0].0, ProjPoint::Infinity);
        assert_eq!(curve_report(&cfg).unwrap().alpha, 0);
        let back = serde_json::to_value(&cfg).unwrap();
        assert_eq!(back["pairs"][0][0], "inf");
    }
}
