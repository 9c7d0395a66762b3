//! Bi- and trifiltered spaces: graded dimension tables, opposedness,
//! simultaneous splittings of two filtrations, and filtered morphisms.
//!
//! Graded pieces of a triple `(W, F, G)` are always taken with `W`
//! outermost: `Gr_G^q Gr_F^p Gr_W^r` uses the filtrations induced by `F`
//! and `G` on `Gr_W^r = W^r / W^{r+1}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::filtration::FilteredSpace;
use crate::linalg::{image, kernel, Matrix, Subspace};

pub type Table2 = BTreeMap<(i64, i64), usize>;
pub type Table3 = BTreeMap<(i64, i64, i64), usize>;

/// Three descending exhaustive filtrations of the same space.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "TriJson", into = "TriJson")]
pub struct TrifilteredSpace {
    ambient_dim: usize,
    w: FilteredSpace,
    f: FilteredSpace,
    g: FilteredSpace,
}

#[derive(Serialize, Deserialize)]
struct TriJson {
    ambient_dim: usize,
    #[serde(rename = "W")]
    w: FilteredSpace,
    #[serde(rename = "F")]
    f: FilteredSpace,
    #[serde(rename = "G")]
    g: FilteredSpace,
}

impl TryFrom<TriJson> for TrifilteredSpace {
    type Error = CoreError;
    fn try_from(raw: TriJson) -> Result<Self> {
        let t = TrifilteredSpace::new(raw.w, raw.f, raw.g)?;
        if t.ambient_dim != raw.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: raw.ambient_dim,
                found: t.ambient_dim,
            });
        }
        Ok(t)
    }
}

impl From<TrifilteredSpace> for TriJson {
    fn from(t: TrifilteredSpace) -> Self {
        TriJson {
            ambient_dim: t.ambient_dim,
            w: t.w,
            f: t.f,
            g: t.g,
        }
    }
}

fn same_ambient(a: &FilteredSpace, b: &FilteredSpace) -> Result<()> {
    if a.ambient_dim() != b.ambient_dim() {
        return Err(CoreError::DimensionMismatch {
            expected: a.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    Ok(())
}

impl TrifilteredSpace {
    pub fn new(w: FilteredSpace, f: FilteredSpace, g: FilteredSpace) -> Result<Self> {
        same_ambient(&w, &f)?;
        same_ambient(&w, &g)?;
        Ok(TrifilteredSpace {
            ambient_dim: w.ambient_dim(),
            w,
            f,
            g,
        })
    }

    /// All three filtrations trivial.
    pub fn trivial(n: usize) -> Self {
        let t = FilteredSpace::trivial(n);
        TrifilteredSpace {
            ambient_dim: n,
            w: t.clone(),
            f: t.clone(),
            g: t,
        }
    }

    /// The rank-one space with jumps at `(r, p, q)`.
    pub fn rank_one(r: i64, p: i64, q: i64) -> Self {
        TrifilteredSpace::trivial(1).shift(r, p, q)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn w(&self) -> &FilteredSpace {
        &self.w
    }

    pub fn f(&self) -> &FilteredSpace {
        &self.f
    }

    pub fn g(&self) -> &FilteredSpace {
        &self.g
    }

    pub fn filtrations(&self) -> [(&'static str, &FilteredSpace); 3] {
        [("W", &self.w), ("F", &self.f), ("G", &self.g)]
    }

    pub fn shift(&self, r: i64, p: i64, q: i64) -> Self {
        TrifilteredSpace {
            ambient_dim: self.ambient_dim,
            w: self.w.shift(r),
            f: self.f.shift(p),
            g: self.g.shift(q),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        TrifilteredSpace {
            ambient_dim: self.ambient_dim + other.ambient_dim,
            w: self.w.direct_sum(&other.w),
            f: self.f.direct_sum(&other.f),
            g: self.g.direct_sum(&other.g),
        }
    }

    pub fn tensor(&self, other: &Self) -> Self {
        TrifilteredSpace {
            ambient_dim: self.ambient_dim * other.ambient_dim,
            w: self.w.tensor(&other.w),
            f: self.f.tensor(&other.f),
            g: self.g.tensor(&other.g),
        }
    }

    pub fn dual(&self) -> Self {
        TrifilteredSpace {
            ambient_dim: self.ambient_dim,
            w: self.w.dual(),
            f: self.f.dual(),
            g: self.g.dual(),
        }
    }

    pub fn induced_on_sub(&self, s: &Subspace) -> Result<Self> {
        TrifilteredSpace::new(
            self.w.induced_on_sub(s)?,
            self.f.induced_on_sub(s)?,
            self.g.induced_on_sub(s)?,
        )
    }

    pub fn induced_on_quotient(&self, s: &Subspace) -> Result<Self> {
        TrifilteredSpace::new(
            self.w.induced_on_quotient(s)?,
            self.f.induced_on_quotient(s)?,
            self.g.induced_on_quotient(s)?,
        )
    }

    /// The pair `(F, G)` induced on `Gr_W^r`.
    pub fn weight_graded_pair(&self, r: i64) -> Result<(FilteredSpace, FilteredSpace)> {
        let outer = self.w.level(r);
        let inner = outer.restrict(&self.w.level(r + 1))?;
        let f = self.f.induced_on_sub(&outer)?.induced_on_quotient(&inner)?;
        let g = self.g.induced_on_sub(&outer)?.induced_on_quotient(&inner)?;
        Ok((f, g))
    }

    /// Weight indices `r` with `Gr_W^r ≠ 0`.
    pub fn weight_indices(&self) -> Vec<i64> {
        self.w.graded_dims().into_keys().collect()
    }
}

/// `dim (F^p ∩ G^q)`.
pub fn intersection_dim(f: &FilteredSpace, g: &FilteredSpace, p: i64, q: i64) -> usize {
    f.level(p).intersect(&g.level(q)).map_or(0, |s| s.dim())
}

/// `f^{p,q} = dim (F^p ∩ G^q)` on the window where it is not determined by
/// a single filtration, i.e. `p ∈ [loF, hiF]`, `q ∈ [loG, hiG]`.
pub fn intersection_dims(f: &FilteredSpace, g: &FilteredSpace) -> Result<Table2> {
    same_ambient(f, g)?;
    let (f0, f1) = f.bounds();
    let (g0, g1) = g.bounds();
    let mut out = Table2::new();
    for p in f0..=f1 {
        let fp = f.level(p);
        for q in g0..=g1 {
            out.insert((p, q), fp.intersect(&g.level(q))?.dim());
        }
    }
    Ok(out)
}

/// `dim Gr_G^q Gr_F^p V`, computed as
/// `dim (F^p∩G^q) / (F^{p+1}∩G^q + F^p∩G^{q+1})`. Nonzero entries only.
pub fn bigraded_dims(f: &FilteredSpace, g: &FilteredSpace) -> Result<Table2> {
    same_ambient(f, g)?;
    let n = f.ambient_dim();
    let (f0, f1) = f.bounds();
    let (g0, g1) = g.bounds();
    let mut grid: BTreeMap<(i64, i64), Subspace> = BTreeMap::new();
    for p in f0..=f1 {
        let fp = f.level(p);
        for q in g0..=g1 {
            grid.insert((p, q), fp.intersect(&g.level(q))?);
        }
    }
    let at = |p: i64, q: i64| -> Subspace { grid.get(&(p, q)).cloned().unwrap_or_else(|| Subspace::zero(n)) };
    let mut out = Table2::new();
    for p in f0..f1 {
        for q in g0..g1 {
            let top = at(p, q);
            if top.is_zero() {
                continue;
            }
            let lower = at(p + 1, q).sum(&at(p, q + 1))?;
            let d = top.quotient_dim(&lower)?;
            if d > 0 {
                out.insert((p, q), d);
            }
        }
    }
    Ok(out)
}

/// `δ(r,p,q) = dim Gr_G^q Gr_F^p Gr_W^r V`. Nonzero entries only.
pub fn trigraded_dims(t: &TrifilteredSpace) -> Result<Table3> {
    let mut out = Table3::new();
    for r in t.weight_indices() {
        let (f, g) = t.weight_graded_pair(r)?;
        for ((p, q), d) in bigraded_dims(&f, &g)? {
            out.insert((r, p, q), d);
        }
    }
    Ok(out)
}

/// First graded piece with `r + p + q ≠ 0`, if any.
pub fn opposedness_violation(t: &TrifilteredSpace) -> Result<Option<(i64, i64, i64, usize)>> {
    Ok(trigraded_dims(t)?
        .into_iter()
        .find(|&((r, p, q), _)| r + p + q != 0)
        .map(|((r, p, q), d)| (r, p, q, d)))
}

/// `Gr_G^q Gr_F^p Gr_W^r V = 0` whenever `r + p + q ≠ 0`.
pub fn is_opposed(t: &TrifilteredSpace) -> Result<bool> {
    Ok(opposedness_violation(t)?.is_none())
}

/// The dimension tables of a triple: `h` is `δ` restricted to `r = −p−q`
/// and reindexed by `(p, q)`; `s` and `f` are taken for the pair `(F, G)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct DimensionTable {
    pub h: Table2,
    pub s: Table2,
    pub f: Table2,
    pub delta3: Table3,
}

impl DimensionTable {
    pub fn of(t: &TrifilteredSpace) -> Result<Self> {
        let delta3 = trigraded_dims(t)?;
        let h = delta3
            .iter()
            .filter(|(&(r, p, q), _)| r + p + q == 0)
            .map(|(&(_, p, q), &d)| ((p, q), d))
            .collect();
        Ok(DimensionTable {
            h,
            s: bigraded_dims(t.f(), t.g())?,
            f: intersection_dims(t.f(), t.g())?,
            delta3,
        })
    }

    /// `f^{p,q}` at any indices, clamping into the stored window.
    pub fn f_at(&self, p: i64, q: i64) -> usize {
        let (Some(&(p0, q0)), Some(&(p1, q1))) = (self.f.keys().next(), self.f.keys().next_back()) else {
            return 0;
        };
        *self.f.get(&(p.clamp(p0, p1), q.clamp(q0, q1))).unwrap_or(&0)
    }
}

/// A bigrading `V = ⊕ V^{p,q}` splitting both `F` and `G`:
/// `F^p = ⊕_{a≥p} V^{a,b}` and `G^q = ⊕_{b≥q} V^{a,b}`.
///
/// Each `V^{p,q}` is a complement of `F^{p+1}∩G^q + F^p∩G^{q+1}` inside
/// `F^p∩G^q`, completed greedily from the canonical basis of `F^p∩G^q`.
pub fn simultaneous_splitting(f: &FilteredSpace, g: &FilteredSpace) -> Result<BTreeMap<(i64, i64), Subspace>> {
    same_ambient(f, g)?;
    let n = f.ambient_dim();
    let (f0, f1) = f.bounds();
    let (g0, g1) = g.bounds();
    let mut out = BTreeMap::new();
    for p in (f0..f1).rev() {
        for q in (g0..g1).rev() {
            let top = f.level(p).intersect(&g.level(q))?;
            let lower = f
                .level(p + 1)
                .intersect(&g.level(q))?
                .sum(&f.level(p).intersect(&g.level(q + 1))?)?;
            let comp = top.complement_of(&lower)?;
            if !comp.is_empty() {
                out.insert((p, q), Subspace::span(&comp, n)?);
            }
        }
    }
    Ok(out)
}

/// A linear map between trifiltered spaces compatible with all three
/// filtrations.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FilteredMorphism {
    matrix: Matrix,
    source: TrifilteredSpace,
    target: TrifilteredSpace,
}

impl FilteredMorphism {
    /// Checks shapes and that `matrix` maps each source level into the
    /// corresponding target level.
    pub fn new(matrix: Matrix, source: TrifilteredSpace, target: TrifilteredSpace) -> Result<Self> {
        if matrix.cols() != source.ambient_dim() {
            return Err(CoreError::DimensionMismatch {
                expected: source.ambient_dim(),
                found: matrix.cols(),
            });
        }
        if matrix.rows() != target.ambient_dim() {
            return Err(CoreError::DimensionMismatch {
                expected: target.ambient_dim(),
                found: matrix.rows(),
            });
        }
        for ((name, sf), (_, tf)) in source.filtrations().into_iter().zip(target.filtrations()) {
            for p in level_range(sf, tf) {
                if !tf.level(p).contains(&image(&matrix, &sf.level(p))?) {
                    return Err(CoreError::Incompatible {
                        filtration: name,
                        level: p,
                    });
                }
            }
        }
        Ok(FilteredMorphism { matrix, source, target })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn source(&self) -> &TrifilteredSpace {
        &self.source
    }

    pub fn target(&self) -> &TrifilteredSpace {
        &self.target
    }

    /// `f(X^p) = f(V) ∩ X'^p` for every level of `W`, `F` and `G`.
    pub fn is_strict(&self) -> Result<bool> {
        let im = image(&self.matrix, &Subspace::full(self.source.ambient_dim()))?;
        for ((_, sf), (_, tf)) in self.source.filtrations().into_iter().zip(self.target.filtrations()) {
            for p in level_range(sf, tf) {
                if image(&self.matrix, &sf.level(p))? != im.intersect(&tf.level(p))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Kernel with the filtrations induced from the source.
    pub fn kernel(&self) -> Result<TrifilteredSpace> {
        self.source.induced_on_sub(&kernel(&self.matrix))
    }

    /// Cokernel with the quotient filtrations from the target.
    pub fn cokernel(&self) -> Result<TrifilteredSpace> {
        let im = image(&self.matrix, &Subspace::full(self.source.ambient_dim()))?;
        self.target.induced_on_quotient(&im)
    }

    pub fn compose(&self, after: &FilteredMorphism) -> Result<FilteredMorphism> {
        FilteredMorphism::new(
            after.matrix.mul(&self.matrix)?,
            self.source.clone(),
            after.target.clone(),
        )
    }
}

fn level_range(a: &FilteredSpace, b: &FilteredSpace) -> std::ops::RangeInclusive<i64> {
    let (a0, a1) = a.bounds();
    let (b0, b1) = b.bounds();
    a0.min(b0)..=a1.max(b1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Scalar, Vector};

    fn g(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn line(items: &[&str]) -> Subspace {
        let v: Vector = items.iter().map(|s| g(s)).collect();
        let n = v.len();
        Subspace::span(&[v], n).unwrap()
    }

    /// `V = ⟨e, f⟩`, `W^{-2} = V ⊃ W^{-1} = W^0 = ⟨e⟩`, `F^1 = ⟨f+λe⟩`, `G^1 = ⟨f+κe⟩`.
    fn lambda_kappa(lambda: &str, kappa: &str) -> TrifilteredSpace {
        let w = FilteredSpace::from_levels(
            2,
            [(-2, Subspace::full(2)), (-1, line(&["1", "0"])), (0, line(&["1", "0"]))],
        )
        .unwrap();
        let f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&[lambda, "1"]))]).unwrap();
        let gg = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&[kappa, "1"]))]).unwrap();
        TrifilteredSpace::new(w, f, gg).unwrap()
    }

    #[test]
    fn bigraded_examples() {
        let t = FilteredSpace::trivial(3).shift(2);
        assert_eq!(bigraded_dims(&t, &t).unwrap(), Table2::from([((2, 2), 3)]));
        let ne = lambda_kappa("2", "3");
        assert_eq!(
            bigraded_dims(ne.f(), ne.g()).unwrap(),
            Table2::from([((1, 0), 1), ((0, 1), 1)])
        );
        let eq = lambda_kappa("1+i", "1+i");
        assert_eq!(
            bigraded_dims(eq.f(), eq.g()).unwrap(),
            Table2::from([((1, 1), 1), ((0, 0), 1)])
        );
    }

    #[test]
    fn trigraded_examples() {
        assert_eq!(
            trigraded_dims(&TrifilteredSpace::trivial(4)).unwrap(),
            Table3::from([((0, 0, 0), 4)])
        );
        assert_eq!(
            trigraded_dims(&TrifilteredSpace::rank_one(-3, 1, 5)).unwrap(),
            Table3::from([((-3, 1, 5), 1)])
        );
        for (l, k) in [("0", "0"), ("1", "i"), ("2", "-1/2")] {
            assert_eq!(
                trigraded_dims(&lambda_kappa(l, k)).unwrap(),
                Table3::from([((-2, 1, 1), 1), ((0, 0, 0), 1)])
            );
        }
    }

    #[test]
    fn opposedness_examples() {
        assert!(is_opposed(&lambda_kappa("i", "1")).unwrap());
        assert!(is_opposed(&lambda_kappa("1", "1")).unwrap());
        // pure weight 1 on ⟨e, f⟩ with F¹ = ⟨f+ie⟩, G¹ = ⟨f−ie⟩
        let w = FilteredSpace::trivial(2).shift(-1);
        let f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&["i", "1"]))]).unwrap();
        let pure = TrifilteredSpace::new(w, f.clone(), f.conj()).unwrap();
        assert!(is_opposed(&pure).unwrap());
        let bad = TrifilteredSpace::rank_one(0, 1, 1);
        assert!(!is_opposed(&bad).unwrap());
        assert_eq!(opposedness_violation(&bad).unwrap(), Some((0, 1, 1, 1)));
    }

    #[test]
    fn splitting_examples() {
        let ne = lambda_kappa("2", "3");
        let split = simultaneous_splitting(ne.f(), ne.g()).unwrap();
        assert_eq!(split.len(), 2);
        assert_eq!(split[&(1, 0)], line(&["2", "1"]));
        assert_eq!(split[&(0, 1)], line(&["3", "1"]));

        let flag = FilteredSpace::from_levels(
            3,
            [
                (0, line(&["1", "1", "0"]).sum(&line(&["0", "0", "1"])).unwrap()),
                (2, line(&["0", "0", "1"])),
            ],
        )
        .unwrap();
        let split = simultaneous_splitting(&flag, &flag).unwrap();
        assert_eq!(
            split.keys().copied().collect::<Vec<_>>(),
            vec![(-1, -1), (1, 1), (2, 2)]
        );
        assert_eq!(split[&(2, 2)], line(&["0", "0", "1"]));
    }

    #[test]
    fn dimension_table_sums() {
        let t = lambda_kappa("i", "-i");
        let table = DimensionTable::of(&t).unwrap();
        assert_eq!(table.h, Table2::from([((1, 1), 1), ((0, 0), 1)]));
        assert_eq!(table.s, Table2::from([((1, 0), 1), ((0, 1), 1)]));
        assert_eq!(table.f_at(-10, -10), 2);
        assert_eq!(table.f_at(1, 1), 0);
        assert_eq!(table.f_at(1, 0), 1);
    }

    #[test]
    fn strictness_examples() {
        let t = lambda_kappa("1", "i");
        let id = FilteredMorphism::new(Matrix::identity(2), t.clone(), t.clone()).unwrap();
        assert!(id.is_strict().unwrap());
        assert_eq!(id.kernel().unwrap().ambient_dim(), 0);
        let zero = FilteredMorphism::new(Matrix::zeros(2, 2), t.clone(), t.clone()).unwrap();
        assert!(zero.is_strict().unwrap());
        assert_eq!(zero.cokernel().unwrap(), t);

        // ⟨e⟩ → ⟨e, f⟩ with target F¹ = ⟨f⟩
        let target_f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&["0", "1"]))]).unwrap();
        let target = TrifilteredSpace::new(FilteredSpace::trivial(2), target_f, FilteredSpace::trivial(2)).unwrap();
        let incl = Matrix::from_columns(&[vec![g("1"), g("0")]], 2).unwrap();
        let ok = FilteredMorphism::new(incl.clone(), TrifilteredSpace::trivial(1), target.clone()).unwrap();
        assert!(ok.is_strict().unwrap());
        let src = TrifilteredSpace::new(
            FilteredSpace::trivial(1),
            FilteredSpace::trivial(1).shift(1),
            FilteredSpace::trivial(1),
        )
        .unwrap();
        assert!(matches!(
            FilteredMorphism::new(incl, src, target),
            Err(CoreError::Incompatible {
                filtration: "F",
                level: 1
            })
        ));
    }

    #[test]
    fn kernel_of_projection_in_example() {
        let t = lambda_kappa("1", "i");
        let e = line(&["1", "0"]);
        let quot = t.induced_on_quotient(&e).unwrap();
        let proj = FilteredMorphism::new(e.quotient_matrix(), t, quot).unwrap();
        let k = proj.kernel().unwrap();
        assert_eq!(k.ambient_dim(), 1);
        assert_eq!(trigraded_dims(&k).unwrap(), Table3::from([((0, 0, 0), 1)]));
        assert!(proj.is_strict().unwrap());
    }

    #[test]
    fn non_strict_morphism_detected() {
        // identity from F jumping at -1 to the trivial F on a rank-one space
        let src = TrifilteredSpace::new(
            FilteredSpace::trivial(1),
            FilteredSpace::trivial(1).shift(-1),
            FilteredSpace::trivial(1),
        )
        .unwrap();
        let tgt = TrifilteredSpace::trivial(1);
        let m = FilteredMorphism::new(Matrix::identity(1), src, tgt).unwrap();
        assert!(!m.is_strict().unwrap());
    }

    #[test]
    fn json_shape() {
        let t = lambda_kappa("1/2", "i");
        let text = serde_json::to_string(&t).unwrap();
        assert!(text.contains("\"W\"") && text.contains("\"G\""));
        let back: TrifilteredSpace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
        let bad = text.replacen("\"ambient_dim\":2", "\"ambient_dim\":3", 1);
        assert!(serde_json::from_str::<TrifilteredSpace>(&bad).is_err());
    }
}
