//! Finite, exhaustive, descending filtrations `F^p` of `K^n`.
//!
//! A filtration is stored as a step function keyed by its jump indices: the
//! entry at `k` is `F^k`, and `F^{k-1} ≠ F^k`. Below the lowest key the
//! filtration is the whole space, from the highest key on it is zero.
//!
//! Index conventions: `shift(f, s)^p = f^{p-s}`, so `shift(trivial(n), p)`
//! is the rank-`n` filtration jumping at `p` (`F^p = V`, `F^{p+1} = 0`).
//! The dual filtration is `dual(F)^k = ann(F^{1-k})`.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::linalg::{image, Matrix, Scalar, Subspace, Vector};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FilteredSpace {
    ambient_dim: usize,
    jumps: BTreeMap<i64, Subspace>,
}

impl FilteredSpace {
    /// Builds a filtration from levels listed at some indices.
    ///
    /// `F^p` is the listed level at the largest listed index `≤ p`; below the
    /// lowest listed index it is the whole space and above the highest one it
    /// is zero. Listed levels must be nested.
    pub fn from_levels<I>(ambient_dim: usize, levels: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Subspace)>,
    {
        let mut listed: BTreeMap<i64, Subspace> = BTreeMap::new();
        for (p, s) in levels {
            if s.ambient_dim() != ambient_dim {
                return Err(CoreError::DimensionMismatch {
                    expected: ambient_dim,
                    found: s.ambient_dim(),
                });
            }
            if let Some(prev) = listed.insert(p, s.clone()) {
                if prev != s {
                    return Err(CoreError::parse("filtration", format!("index {p} listed twice")));
                }
            }
        }
        let mut jumps = BTreeMap::new();
        let mut prev = Subspace::full(ambient_dim);
        let mut last = None;
        for (p, s) in listed {
            if !prev.contains(&s) {
                return Err(CoreError::NotMonotone { index: p });
            }
            if s != prev {
                jumps.insert(p, s.clone());
            }
            prev = s;
            last = Some(p);
        }
        if let Some(p) = last {
            if !prev.is_zero() {
                jumps.insert(p + 1, Subspace::zero(ambient_dim));
            }
        }
        Ok(FilteredSpace { ambient_dim, jumps })
    }

    /// Builds `F^p = level(p)` for `p ∈ [lo, hi]`, with `level(hi)` expected
    /// to be zero (otherwise `F^{hi+1} = 0` is implied).
    pub fn from_fn<G>(ambient_dim: usize, lo: i64, hi: i64, mut level: G) -> Result<Self>
    where
        G: FnMut(i64) -> Result<Subspace>,
    {
        let mut levels = Vec::new();
        for p in lo..=hi {
            levels.push((p, level(p)?));
        }
        Self::from_levels(ambient_dim, levels)
    }

    /// The descending filtration `F^p = W_{-p}` attached to an increasing
    /// filtration `W_m`. Between listed indices `W_m` is the listed level at
    /// the largest listed index `≤ m`; below the lowest it is zero, above
    /// the highest it is the whole space.
    pub fn from_increasing<I>(ambient_dim: usize, levels: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Subspace)>,
    {
        let listed: BTreeMap<i64, Subspace> = levels.into_iter().collect();
        let mut prev = Subspace::zero(ambient_dim);
        for (&m, s) in &listed {
            if s.ambient_dim() != ambient_dim {
                return Err(CoreError::DimensionMismatch {
                    expected: ambient_dim,
                    found: s.ambient_dim(),
                });
            }
            if !s.contains(&prev) {
                return Err(CoreError::NotMonotone { index: m });
            }
            prev = s.clone();
        }
        let (Some(&m0), Some(&m1)) = (listed.keys().next(), listed.keys().next_back()) else {
            return Ok(Self::trivial(ambient_dim));
        };
        let increasing = |m: i64| match listed.range(..=m).next_back() {
            Some((_, s)) => s.clone(),
            None => Subspace::zero(ambient_dim),
        };
        Self::from_fn(ambient_dim, -m1 - 1, -m0 + 1, |p| {
            if -p > m1 {
                Ok(Subspace::full(ambient_dim))
            } else {
                Ok(increasing(-p))
            }
        })
    }

    /// `F^0 = V`, `F^1 = 0`.
    pub fn trivial(ambient_dim: usize) -> Self {
        let mut jumps = BTreeMap::new();
        if ambient_dim > 0 {
            jumps.insert(1, Subspace::zero(ambient_dim));
        }
        FilteredSpace { ambient_dim, jumps }
    }

    /// `shift(f, s)^p = f^{p-s}`.
    pub fn shift(&self, s: i64) -> Self {
        FilteredSpace {
            ambient_dim: self.ambient_dim,
            jumps: self.jumps.iter().map(|(k, v)| (k + s, v.clone())).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Stored jump indices with their levels.
    pub fn jumps(&self) -> &BTreeMap<i64, Subspace> {
        &self.jumps
    }

    /// `F^p`.
    pub fn level(&self, p: i64) -> Subspace {
        match self.jumps.range(..=p).next_back() {
            Some((_, s)) => s.clone(),
            None => Subspace::full(self.ambient_dim),
        }
    }

    pub fn level_ref(&self, p: i64) -> Option<&Subspace> {
        self.jumps.range(..=p).next_back().map(|(_, s)| s)
    }

    /// `(lo, hi)` with `F^lo = V` and `F^hi = 0`, as tight as possible.
    pub fn bounds(&self) -> (i64, i64) {
        match (self.jumps.keys().next(), self.jumps.keys().next_back()) {
            (Some(&a), Some(&b)) => (a - 1, b),
            _ => (0, 0),
        }
    }

    pub fn dim_at(&self, p: i64) -> usize {
        self.level_ref(p).map_or(self.ambient_dim, Subspace::dim)
    }

    /// `dim Gr^p = dim F^p − dim F^{p+1}`, nonzero entries only.
    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&k, s) in &self.jumps {
            let d = self.dim_at(k - 1) - s.dim();
            if d > 0 {
                out.insert(k - 1, d);
            }
        }
        out
    }

    /// Basis adapted to the filtration: each vector `v` is tagged with the
    /// largest `p` such that `v ∈ F^p`, and `F^p` is spanned by the vectors
    /// with tag `≥ p`.
    pub fn adapted_basis(&self) -> Vec<(i64, Vector)> {
        let mut out = Vec::new();
        for (&k, s) in self.jumps.iter().rev() {
            let above = self.level(k - 1);
            for v in above.complement_of(s).expect("filtration is decreasing") {
                out.push((k - 1, v));
            }
        }
        out
    }

    pub fn is_decreasing(&self) -> bool {
        let mut prev = Subspace::full(self.ambient_dim);
        for s in self.jumps.values() {
            if !prev.contains(s) {
                return false;
            }
            prev = s.clone();
        }
        prev.is_zero()
    }

    pub fn direct_sum(&self, other: &FilteredSpace) -> FilteredSpace {
        let n = self.ambient_dim + other.ambient_dim;
        let (a0, a1) = self.bounds();
        let (b0, b1) = other.bounds();
        Self::from_fn(n, a0.min(b0), a1.max(b1), |p| {
            Ok(self.level(p).direct_sum(&other.level(p)))
        })
        .expect("direct sum of filtrations is a filtration")
    }

    /// `F^k(V ⊗ V') = Σ_{a+b=k} F^a ⊗ G^b`, with basis order `e_i ⊗ e'_j ↦ i·n' + j`.
    pub fn tensor(&self, other: &FilteredSpace) -> FilteredSpace {
        let n = self.ambient_dim * other.ambient_dim;
        let left = self.adapted_basis();
        let right = other.adapted_basis();
        let mut products: Vec<(i64, Vector)> = Vec::with_capacity(left.len() * right.len());
        for (a, v) in &left {
            for (b, w) in &right {
                let mut t = Vec::with_capacity(n);
                for x in v {
                    for y in w {
                        t.push(if x.is_zero() || y.is_zero() {
                            Scalar::zero()
                        } else {
                            x * y
                        });
                    }
                }
                products.push((a + b, t));
            }
        }
        if n == 0 {
            return Self::trivial(0);
        }
        let (a0, a1) = self.bounds();
        let (b0, b1) = other.bounds();
        Self::from_fn(n, a0 + b0, a1 + b1 - 1, |k| {
            let vs: Vec<&Vector> = products.iter().filter(|(d, _)| *d >= k).map(|(_, v)| v).collect();
            Subspace::span(&vs, n)
        })
        .expect("tensor filtration is decreasing")
    }

    /// `dual(F)^k = ann(F^{1-k})` inside `V* ≅ K^n` (bilinear pairing).
    pub fn dual(&self) -> FilteredSpace {
        let n = self.ambient_dim;
        let (lo, hi) = self.bounds();
        Self::from_fn(n, 1 - hi, 1 - lo, |k| Ok(annihilator(&self.level(1 - k))))
            .expect("dual filtration is decreasing")
    }

    /// Filtration induced on `s`, in the coordinates of `s`'s canonical basis.
    pub fn induced_on_sub(&self, s: &Subspace) -> Result<FilteredSpace> {
        if s.ambient_dim() != self.ambient_dim {
            return Err(CoreError::NotContained(format!(
                "an ambient space of dimension {}",
                self.ambient_dim
            )));
        }
        let (lo, hi) = self.bounds();
        Self::from_fn(s.dim(), lo, hi, |p| s.restrict(&s.intersect(&self.level(p))?))
    }

    /// Filtration induced on `V/s`, in the coordinates of
    /// [`Subspace::quotient_matrix`].
    pub fn induced_on_quotient(&self, s: &Subspace) -> Result<FilteredSpace> {
        if s.ambient_dim() != self.ambient_dim {
            return Err(CoreError::NotContained(format!(
                "an ambient space of dimension {}",
                self.ambient_dim
            )));
        }
        self.push_forward(&s.quotient_matrix())
    }

    /// Image filtration `f(F^p)` under a map `f: K^n → K^m`.
    pub fn push_forward(&self, f: &Matrix) -> Result<FilteredSpace> {
        let (lo, hi) = self.bounds();
        Self::from_fn(f.rows(), lo, hi, |p| image(f, &self.level(p)))
    }

    /// Level-wise entry conjugation.
    pub fn conj(&self) -> FilteredSpace {
        FilteredSpace {
            ambient_dim: self.ambient_dim,
            jumps: self.jumps.iter().map(|(k, s)| (*k, s.conj())).collect(),
        }
    }

    /// Image under an invertible change of coordinates.
    pub fn transform(&self, g: &Matrix) -> Result<FilteredSpace> {
        let jumps = self
            .jumps
            .iter()
            .map(|(k, s)| Ok((*k, image(g, s)?)))
            .collect::<Result<_>>()?;
        Ok(FilteredSpace {
            ambient_dim: g.rows(),
            jumps,
        })
    }
}

/// `{x : Σ x_i s_i = 0 for all s ∈ S}`.
pub fn annihilator(s: &Subspace) -> Subspace {
    crate::linalg::kernel(&s.basis_matrix())
}

#[derive(Serialize, Deserialize)]
struct LevelJson {
    index: i64,
    vectors: Vec<Vector>,
}

#[derive(Serialize, Deserialize)]
struct FiltrationJson {
    ambient_dim: usize,
    levels: Vec<LevelJson>,
}

impl Serialize for FilteredSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FiltrationJson {
            ambient_dim: self.ambient_dim,
            levels: self
                .jumps
                .iter()
                .map(|(k, s)| LevelJson {
                    index: *k,
                    vectors: s.basis().to_vec(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FilteredSpace {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = FiltrationJson::deserialize(deserializer)?;
        let n = raw.ambient_dim;
        let mut levels = Vec::with_capacity(raw.levels.len());
        for l in raw.levels {
            let s = Subspace::span(&l.vectors, n).map_err(serde::de::Error::custom)?;
            levels.push((l.index, s));
        }
        FilteredSpace::from_levels(n, levels).map_err(serde::de::Error::custom)
    }
}
