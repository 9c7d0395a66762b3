//! α-stratifications and flatness audits over sampled families of
//! trifiltered spaces.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::exactfield::{rational, GaussianRational};
use crate::filtration::FilteredSpace;
use crate::invariants;
use crate::linalg::{Scalar, Subspace};
use crate::multifilt::{intersection_dim, trigraded_dims, Table2, TrifilteredSpace};

#[derive(Clone, Copy, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ParameterPoint {
    pub label: String,
    #[serde(default)]
    pub coords: Vec<(String, Coord)>,
}

/// Fibers sampled at labelled parameter points, with optional grid edges
/// and named subfamilies (index sets) to audit separately.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(try_from = "FamilyJson")]
pub struct SampledFamily {
    pub parameters: Vec<ParameterPoint>,
    pub fibers: Vec<TrifilteredSpace>,
    #[serde(default)]
    pub edges: Vec<(usize, usize)>,
    #[serde(default)]
    pub subfamilies: BTreeMap<String, Vec<usize>>,
}

#[derive(Deserialize)]
struct FamilyJson {
    parameters: Vec<ParameterPoint>,
    fibers: Vec<TrifilteredSpace>,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    subfamilies: BTreeMap<String, Vec<usize>>,
}

impl TryFrom<FamilyJson> for SampledFamily {
    type Error = CoreError;
    fn try_from(raw: FamilyJson) -> Result<Self> {
        SampledFamily::new(raw.parameters, raw.fibers, raw.edges, raw.subfamilies)
    }
}

impl SampledFamily {
    pub fn new(
        parameters: Vec<ParameterPoint>,
        fibers: Vec<TrifilteredSpace>,
        edges: Vec<(usize, usize)>,
        subfamilies: BTreeMap<String, Vec<usize>>,
    ) -> Result<Self> {
        if parameters.len() != fibers.len() {
            return Err(CoreError::DimensionMismatch {
                expected: parameters.len(),
                found: fibers.len(),
            });
        }
        if let Some(first) = fibers.first() {
            if let Some(bad) = fibers.iter().find(|t| t.ambient_dim() != first.ambient_dim()) {
                return Err(CoreError::DimensionMismatch {
                    expected: first.ambient_dim(),
                    found: bad.ambient_dim(),
                });
            }
        }
        let n = fibers.len();
        let out_of_range = edges
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .chain(subfamilies.values().flatten().copied())
            .find(|&i| i >= n);
        if let Some(i) = out_of_range {
            return Err(CoreError::InvalidConfig(format!(
                "point index {i} out of range for {n} samples"
            )));
        }
        Ok(SampledFamily {
            parameters,
            fibers,
            edges,
            subfamilies,
        })
    }

    pub fn len(&self) -> usize {
        self.fibers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fibers.is_empty()
    }

    fn label(&self, i: usize) -> String {
        self.parameters[i].label.clone()
    }

    fn neighbors(&self) -> Vec<BTreeSet<usize>> {
        let mut out = vec![BTreeSet::new(); self.len()];
        for &(a, b) in &self.edges {
            if a != b {
                out[a].insert(b);
                out[b].insert(a);
            }
        }
        out
    }

    /// Checks that the trigraded dimension table (hence the Hodge numbers)
    /// is the same on every fiber.
    pub fn check_weight_locked(&self) -> Result<()> {
        let tables: Vec<_> = self.fibers.par_iter().map(trigraded_dims).collect::<Vec<_>>();
        let mut reference = None;
        for (i, t) in tables.into_iter().enumerate() {
            let t = t.map_err(|e| self.fiber_error(i, e))?;
            match &reference {
                None => reference = Some(t),
                Some(r) if *r == t => {}
                Some(_) => return Err(CoreError::NotWeightLocked { label: self.label(i) }),
            }
        }
        Ok(())
    }

    fn fiber_error(&self, i: usize, e: CoreError) -> CoreError {
        CoreError::Fiber {
            label: self.label(i),
            source: Box::new(e),
        }
    }

    /// Common index window `[p_lo, p_hi] × [q_lo, q_hi]` covering every
    /// fiber's `F` and `G` jumps.
    pub fn f_window(&self) -> (i64, i64, i64, i64) {
        let mut w = (i64::MAX, i64::MIN, i64::MAX, i64::MIN);
        for t in &self.fibers {
            let (a, b) = t.f().bounds();
            let (c, d) = t.g().bounds();
            w = (w.0.min(a), w.1.max(b), w.2.min(c), w.3.max(d));
        }
        if self.fibers.is_empty() {
            (0, 0, 0, 0)
        } else {
            w
        }
    }

    /// `f^{p,q} = dim F^p ∩ G^q` of every fiber on the common window.
    pub fn f_tables(&self) -> Vec<Table2> {
        let (plo, phi, qlo, qhi) = self.f_window();
        self.fibers
            .par_iter()
            .map(|t| {
                let mut table = Table2::new();
                for p in plo..=phi {
                    for q in qlo..=qhi {
                        table.insert((p, q), intersection_dim(t.f(), t.g(), p, q));
                    }
                }
                table
            })
            .collect()
    }
}

fn ser_tables<S: Serializer>(tables: &[Table2], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(tables.len()))?;
    for t in tables {
        let entries: Vec<[i64; 3]> = t.iter().map(|(&(p, q), &d)| [p, q, d as i64]).collect();
        seq.serialize_element(&entries)?;
    }
    seq.end()
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct StrataReport {
    pub labels: Vec<String>,
    pub alphas: Vec<u64>,
    /// α value ↦ indices of the points in that stratum.
    pub strata: BTreeMap<u64, Vec<usize>>,
    #[serde(serialize_with = "ser_tables")]
    pub f_tables: Vec<Table2>,
    /// Edges whose endpoints lie in different strata.
    pub changing_edges: Vec<(usize, usize)>,
}

pub fn alpha_map(fam: &SampledFamily) -> Result<StrataReport> {
    fam.check_weight_locked()?;
    let alphas = fam
        .fibers
        .par_iter()
        .map(invariants::alpha)
        .collect::<Vec<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, a)| a.map_err(|e| fam.fiber_error(i, e)))
        .collect::<Result<Vec<u64>>>()?;
    let mut strata: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, &a) in alphas.iter().enumerate() {
        strata.entry(a).or_default().push(i);
    }
    let changing_edges = fam
        .edges
        .iter()
        .copied()
        .filter(|&(a, b)| alphas[a] != alphas[b])
        .collect();
    Ok(StrataReport {
        labels: fam.parameters.iter().map(|p| p.label.clone()).collect(),
        alphas,
        strata,
        f_tables: fam.f_tables(),
        changing_edges,
    })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FDeviation {
    pub p: i64,
    pub q: i64,
    pub generic: usize,
    pub deviating: Vec<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct HAudit {
    /// Every `(p, q)` of the common window, with its generic value.
    pub entries: Vec<FDeviation>,
    /// Union of the deviation sets.
    pub deviation_locus: Vec<usize>,
    pub holds: bool,
    /// Per declared subfamily: all `f^{p,q}` constant on it.
    pub subfamilies: BTreeMap<String, bool>,
}

/// Most frequent value, ties going to the smaller one.
fn generic_value(values: impl IntoIterator<Item = usize>) -> usize {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|(va, ca), (vb, cb)| ca.cmp(cb).then(vb.cmp(va)))
        .map(|(v, _)| v)
        .unwrap_or(0)
}

/// Flatness of every `F^p ∩ G^q` across the family.
pub fn hypothesis_h_audit(fam: &SampledFamily) -> HAudit {
    let tables = fam.f_tables();
    let keys: Vec<(i64, i64)> = tables.first().map(|t| t.keys().copied().collect()).unwrap_or_default();
    let mut entries = Vec::with_capacity(keys.len());
    let mut locus = BTreeSet::new();
    for &(p, q) in &keys {
        let generic = generic_value(tables.iter().map(|t| t[&(p, q)]));
        let deviating: Vec<usize> = (0..tables.len()).filter(|&i| tables[i][&(p, q)] != generic).collect();
        locus.extend(deviating.iter().copied());
        entries.push(FDeviation {
            p,
            q,
            generic,
            deviating,
        });
    }
    let subfamilies = fam
        .subfamilies
        .iter()
        .map(|(name, idx)| {
            let flat = idx.windows(2).all(|w| tables[w[0]] == tables[w[1]]);
            (name.clone(), flat)
        })
        .collect();
    HAudit {
        entries,
        holds: locus.is_empty(),
        deviation_locus: locus.into_iter().collect(),
        subfamilies,
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct FMinimum {
    pub p: i64,
    pub q: i64,
    pub minimum: usize,
    pub attained: usize,
    pub on_majority: bool,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SemicontinuityReport {
    /// Directed edges `(i, j)` with `α(i) < α(j)`.
    pub increasing_edges: Vec<(usize, usize)>,
    /// Points whose α strictly exceeds that of every neighbour.
    pub suspects: Vec<usize>,
    pub f_minima: Vec<FMinimum>,
}

pub fn semicontinuity_report(fam: &SampledFamily) -> Result<SemicontinuityReport> {
    let report = alpha_map(fam)?;
    let a = &report.alphas;
    let mut increasing_edges = Vec::new();
    for &(i, j) in &fam.edges {
        if a[i] < a[j] {
            increasing_edges.push((i, j));
        } else if a[j] < a[i] {
            increasing_edges.push((j, i));
        }
    }
    let suspects = fam
        .neighbors()
        .iter()
        .enumerate()
        .filter(|(i, nb)| !nb.is_empty() && nb.iter().all(|&j| a[j] < a[*i]))
        .map(|(i, _)| i)
        .collect();
    let tables = &report.f_tables;
    let f_minima = tables
        .first()
        .map(|t| {
            t.keys()
                .map(|&(p, q)| {
                    let minimum = tables.iter().map(|t| t[&(p, q)]).min().unwrap_or(0);
                    let attained = tables.iter().filter(|t| t[&(p, q)] == minimum).count();
                    FMinimum {
                        p,
                        q,
                        minimum,
                        attained,
                        on_majority: 2 * attained > tables.len(),
                    }
                })
                .collect()
        })
        .unwrap_or_default();
    Ok(SemicontinuityReport {
        increasing_edges,
        suspects,
        f_minima,
    })
}

/// One row per point: label, coordinates, α, then `f_p_q` over the window.
pub fn strata_csv(fam: &SampledFamily, report: &StrataReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let coord_names: Vec<String> = fam
        .parameters
        .first()
        .map(|p| {
            p.coords
                .iter()
                .flat_map(|(name, c)| match c {
                    Coord::Real(_) => vec![name.clone()],
                    Coord::Complex(_) => vec![format!("{name}.re"), format!("{name}.im")],
                })
                .collect()
        })
        .unwrap_or_default();
    let keys: Vec<(i64, i64)> = report
        .f_tables
        .first()
        .map(|t| t.keys().copied().collect())
        .unwrap_or_default();
    let mut header = vec!["label".to_string()];
    header.extend(coord_names);
    header.push("alpha".into());
    header.extend(keys.iter().map(|(p, q)| format!("f_{p}_{q}")));
    let csv_err = |e: csv::Error| CoreError::Invariant(format!("csv output: {e}"));
    w.write_record(&header).map_err(csv_err)?;
    for (i, point) in fam.parameters.iter().enumerate() {
        let mut row = vec![point.label.clone()];
        for (_, c) in &point.coords {
            match c {
                Coord::Real(x) => row.push(x.to_string()),
                Coord::Complex([re, im]) => {
                    row.push(re.to_string());
                    row.push(im.to_string());
                }
            }
        }
        row.push(report.alphas[i].to_string());
        row.extend(keys.iter().map(|k| report.f_tables[i][k].to_string()));
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CoreError::Invariant(format!("csv output: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CoreError::Invariant(e.to_string()))
}

/// Two-step weight filtration `W^{−2} = V ⊃ W^{−1} = W^0 = ⟨e⟩ ⊃ 0` on
/// `V = ⟨e, f⟩`, with `F¹ = ⟨f + λe⟩` and `G¹ = ⟨f + κe⟩`.
pub fn lambda_kappa_fiber(lambda: &Scalar, kappa: &Scalar) -> TrifilteredSpace {
    let e = Subspace::span(&[vec![Scalar::from(1), Scalar::from(0)]], 2).expect("nonzero vector");
    let line = |c: &Scalar| Subspace::span(&[vec![c.clone(), Scalar::from(1)]], 2).expect("nonzero vector");
    let w = FilteredSpace::from_levels(2, [(-2, Subspace::full(2)), (-1, e.clone()), (0, e)]).expect("nested levels");
    let f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(lambda))]).expect("nested levels");
    let g = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(kappa))]).expect("nested levels");
    TrifilteredSpace::new(w, f, g).expect("shared ambient space")
}

/// λ = a + bi with `a, b ∈ {−1, −4/5, …, 1}`, `G = conj(F)`, 4-neighbour
/// edges, and the subfamilies `real_axis` and `off_axis`.
pub fn lambda_plane_family() -> SampledFamily {
    let steps: Vec<i64> = (-5..=5).collect();
    let side = steps.len();
    let (mut parameters, mut fibers) = (Vec::new(), Vec::new());
    let mut subfamilies: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for &b in &steps {
        for &a in &steps {
            let lambda = GaussianRational::new(rational(a, 5), rational(b, 5));
            parameters.push(ParameterPoint {
                label: format!("lambda={lambda}"),
                coords: vec![("lambda".into(), Coord::Complex([a as f64 / 5.0, b as f64 / 5.0]))],
            });
            let idx = fibers.len();
            subfamilies
                .entry(if b == 0 { "real_axis" } else { "off_axis" }.into())
                .or_default()
                .push(idx);
            fibers.push(lambda_kappa_fiber(&lambda, &lambda.conj()));
        }
    }
    let mut edges = Vec::new();
    for r in 0..side {
        for c in 0..side {
            let i = r * side + c;
            if c + 1 < side {
                edges.push((i, i + 1));
            }
            if r + 1 < side {
                edges.push((i, i + side));
            }
        }
    }
    SampledFamily::new(parameters, fibers, edges, subfamilies).expect("well-formed grid")
}

/// All pairs `(λ, κ)` from the given values, with a `diagonal` subfamily.
pub fn lambda_kappa_family(values: &[Scalar]) -> SampledFamily {
    let (mut parameters, mut fibers, mut diagonal) = (Vec::new(), Vec::new(), Vec::new());
    for l in values {
        for k in values {
            if l == k {
                diagonal.push(fibers.len());
            }
            let to_coord = |s: &Scalar| {
                let z = s.to_complex_float().expect("small rationals");
                Coord::Complex([z.re, z.im])
            };
            parameters.push(ParameterPoint {
                label: format!("lambda={l},kappa={k}"),
                coords: vec![("lambda".into(), to_coord(l)), ("kappa".into(), to_coord(k))],
            });
            fibers.push(lambda_kappa_fiber(l, k));
        }
    }
    let subfamilies = BTreeMap::from([("diagonal".to_string(), diagonal)]);
    SampledFamily::new(parameters, fibers, Vec::new(), subfamilies).expect("well-formed family")
}

/// `count` copies of one fiber on a path graph.
pub fn constant_family(fiber: &TrifilteredSpace, count: usize) -> SampledFamily {
    let parameters = (0..count)
        .map(|i| ParameterPoint {
            label: format!("t={i}"),
            coords: vec![("t".into(), Coord::Real(i as f64))],
        })
        .collect();
    let edges = (1..count).map(|i| (i - 1, i)).collect();
    SampledFamily::new(parameters, vec![fiber.clone(); count], edges, BTreeMap::new()).expect("well-formed family")
}
