//! Discrete invariants of the Rees bundle on P² attached to a trifiltered
//! space `(W, F, G)`: Chern data, the splitting level α, the equivariant
//! K₀ class, and splitting types of restrictions to lines.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::exactfield::{rational, Rational};
use crate::filtration::FilteredSpace;
use crate::multifilt::{
    bigraded_dims, intersection_dims, opposedness_violation, trigraded_dims, DimensionTable, Table2, TrifilteredSpace,
};

/// `ch = rank + c1·w² + ch2·w⁴`, with `c2 = −ch2` recorded when `c1 = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChernData {
    pub rank: usize,
    pub c1: i64,
    pub ch2: Rational,
    pub c2: Option<i64>,
}

/// Chern character from the trigraded and bigraded dimensions:
///
/// `ch2 = Σ δ(r,p,q)·½(r² + 2rp + 2rq) + Σ s(p,q)·½(p+q)²`,
/// `c1 = Σ δ(r,p,q)·(r+p+q)`.
pub fn chern(t: &TrifilteredSpace) -> Result<ChernData> {
    let delta3 = trigraded_dims(t)?;
    let s = bigraded_dims(t.f(), t.g())?;
    let mut c1 = 0i64;
    let mut twice_ch2 = 0i64;
    for (&(r, p, q), &d) in &delta3 {
        let d = d as i64;
        c1 += d * (r + p + q);
        twice_ch2 += d * (r * r + 2 * r * p + 2 * r * q);
    }
    for (&(p, q), &d) in &s {
        twice_ch2 += d as i64 * (p + q) * (p + q);
    }
    let ch2 = rational(twice_ch2, 2);
    let c2 = if c1 == 0 && ch2.is_integer() {
        (-ch2.to_integer()).to_i64()
    } else {
        None
    };
    Ok(ChernData {
        rank: t.ambient_dim(),
        c1,
        ch2,
        c2,
    })
}

fn require_opposed(t: &TrifilteredSpace) -> Result<()> {
    match opposedness_violation(t)? {
        Some((r, p, q, dim)) => Err(CoreError::NotOpposed { r, p, q, dim }),
        None => Ok(()),
    }
}

fn half_nonneg(twice: i64) -> Result<u64> {
    if twice < 0 || twice % 2 != 0 {
        return Err(CoreError::Invariant(format!(
            "2α = {twice} is not a nonnegative even integer"
        )));
    }
    Ok((twice / 2) as u64)
}

/// `α = ½ Σ (p+q)² (h^{p,q} − s^{p,q})`, defined for opposed triples only.
pub fn alpha(t: &TrifilteredSpace) -> Result<u64> {
    require_opposed(t)?;
    let table = DimensionTable::of(t)?;
    alpha_from_tables(&table.h, &table.s)
}

pub fn alpha_from_tables(h: &Table2, s: &Table2) -> Result<u64> {
    let weighted = |t: &Table2| -> i64 { t.iter().map(|(&(p, q), &d)| (p + q) * (p + q) * d as i64).sum() };
    half_nonneg(weighted(h) - weighted(s))
}

/// Coefficient of `f^{p,q}` in `2α⁻ = Σ (p+q)² s^{p,q}` after summation by
/// parts over the window whose lower corner is `(p0, q0)`:
/// `2` inside, `2(p0+q)−1` and `2(p+q0)−1` on the two lower edges, and
/// `(p0+q0)²` at the corner.
pub fn alpha_minus_coefficient(p: i64, q: i64, p0: i64, q0: i64) -> i64 {
    match (p > p0, q > q0) {
        (true, true) => 2,
        (false, true) => 2 * (p0 + q) - 1,
        (true, false) => 2 * (p + q0) - 1,
        (false, false) => (p0 + q0) * (p0 + q0),
    }
}

/// `α = α⁺ − α⁻` with `α⁺ = ½ Σ (p+q)² h^{p,q}` and `α⁻` evaluated from the
/// intersection dimensions `f^{p,q} = dim F^p ∩ G^q` alone.
pub fn alpha_via_intersections(t: &TrifilteredSpace) -> Result<u64> {
    require_opposed(t)?;
    let table = DimensionTable::of(t)?;
    let twice_plus: i64 = table.h.iter().map(|(&(p, q), &d)| (p + q) * (p + q) * d as i64).sum();
    let twice_minus = twice_alpha_minus(t.f(), t.g())?;
    half_nonneg(twice_plus - twice_minus)
}

/// `2α⁻ = Σ_{(p,q) in window} κ(p,q) f^{p,q}`, see [`alpha_minus_coefficient`].
pub fn twice_alpha_minus(f: &FilteredSpace, g: &FilteredSpace) -> Result<i64> {
    let (p0, _) = f.bounds();
    let (q0, _) = g.bounds();
    Ok(intersection_dims(f, g)?
        .iter()
        .map(|(&(p, q), &d)| alpha_minus_coefficient(p, q, p0, q0) * d as i64)
        .sum())
}

/// Laurent polynomial in two variables with integer coefficients.
pub type Laurent2 = BTreeMap<(i64, i64), i64>;
/// Laurent polynomial in one variable with integer coefficients.
pub type Laurent1 = BTreeMap<i64, i64>;

/// Class of the Rees bundle in the torus-equivariant K₀ of P², given by its
/// fixed-point polynomials at the three vertices, along the three torus
/// lines, and on the open orbit.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct K0Class {
    #[serde(rename = "pA0", serialize_with = "ser_laurent2")]
    pub p_a0: Laurent2,
    #[serde(rename = "pA1", serialize_with = "ser_laurent2")]
    pub p_a1: Laurent2,
    #[serde(rename = "pA2", serialize_with = "ser_laurent2")]
    pub p_a2: Laurent2,
    #[serde(rename = "pGm12", serialize_with = "ser_laurent1")]
    pub p_gm12: Laurent1,
    #[serde(rename = "pGm02", serialize_with = "ser_laurent1")]
    pub p_gm02: Laurent1,
    #[serde(rename = "pGm01", serialize_with = "ser_laurent1")]
    pub p_gm01: Laurent1,
    #[serde(rename = "pGm2")]
    pub p_gm2: i64,
}

fn ser_laurent2<S: Serializer>(poly: &Laurent2, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(poly.len()))?;
    for (&(p, q), &c) in poly {
        seq.serialize_element(&[p, q, c])?;
    }
    seq.end()
}

fn ser_laurent1<S: Serializer>(poly: &Laurent1, s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(poly.len()))?;
    for (&p, &c) in poly {
        seq.serialize_element(&[p, c])?;
    }
    seq.end()
}

fn to_laurent2(t: Table2) -> Laurent2 {
    t.into_iter().map(|(k, d)| (k, d as i64)).collect()
}

fn to_laurent1(t: BTreeMap<i64, usize>) -> Laurent1 {
    t.into_iter().map(|(k, d)| (k, d as i64)).collect()
}

/// `Σ_q P(u, q)`: the marginal of a two-variable polynomial on its first
/// (`first = true`) or second variable.
pub fn marginal(poly: &Laurent2, first: bool) -> Laurent1 {
    let mut out = Laurent1::new();
    for (&(p, q), &c) in poly {
        *out.entry(if first { p } else { q }).or_default() += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

fn add_laurent<K: Ord + Copy>(a: &BTreeMap<K, i64>, b: &BTreeMap<K, i64>) -> BTreeMap<K, i64> {
    let mut out = a.clone();
    for (k, c) in b {
        *out.entry(*k).or_default() += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

impl K0Class {
    /// Component-wise sum (the class of a direct sum).
    pub fn add(&self, other: &K0Class) -> K0Class {
        K0Class {
            p_a0: add_laurent(&self.p_a0, &other.p_a0),
            p_a1: add_laurent(&self.p_a1, &other.p_a1),
            p_a2: add_laurent(&self.p_a2, &other.p_a2),
            p_gm12: add_laurent(&self.p_gm12, &other.p_gm12),
            p_gm02: add_laurent(&self.p_gm02, &other.p_gm02),
            p_gm01: add_laurent(&self.p_gm01, &other.p_gm01),
            p_gm2: self.p_gm2 + other.p_gm2,
        }
    }

    /// Marginal and rank compatibilities between the components.
    pub fn is_consistent(&self) -> bool {
        let total = |p: &Laurent2| p.values().sum::<i64>();
        marginal(&self.p_a0, true) == self.p_gm12
            && marginal(&self.p_a1, true) == self.p_gm12
            && marginal(&self.p_a0, false) == self.p_gm02
            && marginal(&self.p_a2, true) == self.p_gm02
            && marginal(&self.p_a1, false) == self.p_gm01
            && marginal(&self.p_a2, false) == self.p_gm01
            && [&self.p_a0, &self.p_a1, &self.p_a2]
                .iter()
                .all(|p| total(p) == self.p_gm2)
    }
}

pub fn k0_class(t: &TrifilteredSpace) -> Result<K0Class> {
    Ok(K0Class {
        p_a0: to_laurent2(bigraded_dims(t.w(), t.f())?),
        p_a1: to_laurent2(bigraded_dims(t.w(), t.g())?),
        p_a2: to_laurent2(bigraded_dims(t.f(), t.g())?),
        p_gm12: to_laurent1(t.w().graded_dims()),
        p_gm02: to_laurent1(t.f().graded_dims()),
        p_gm01: to_laurent1(t.g().graded_dims()),
        p_gm2: t.ambient_dim() as i64,
    })
}

/// Splitting type `⊕ O(d)^{m_d}` of a bundle on P¹, as degree ↦ multiplicity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SplittingType(pub BTreeMap<i64, usize>);

impl SplittingType {
    pub fn rank(&self) -> usize {
        self.0.values().sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|(&d, &m)| d * m as i64).sum()
    }

    /// A single degree (semistable restriction).
    pub fn is_semistable(&self) -> bool {
        self.0.len() <= 1
    }
}

impl Serialize for SplittingType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for (&d, &m) in &self.0 {
            seq.serialize_element(&(d, m))?;
        }
        seq.end()
    }
}

/// `ξ(V, F, G) ≅ ⊕ O(p+q)^{s^{p,q}}`.
pub fn p1_splitting_type(f: &FilteredSpace, g: &FilteredSpace) -> Result<SplittingType> {
    let mut out = BTreeMap::new();
    for ((p, q), d) in bigraded_dims(f, g)? {
        *out.entry(p + q).or_default() += d;
    }
    Ok(SplittingType(out))
}

/// Splitting type of the pair induced on each `Gr_W^r`, keyed by `r`.
pub fn weight_graded_splitting_types(t: &TrifilteredSpace) -> Result<BTreeMap<i64, SplittingType>> {
    let mut out = BTreeMap::new();
    for r in t.weight_indices() {
        let (f, g) = t.weight_graded_pair(r)?;
        out.insert(r, p1_splitting_type(&f, &g)?);
    }
    Ok(out)
}

/// Everything the `invariants` command reports for one triple.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub rank: usize,
    pub c1: i64,
    pub ch2: [i64; 2],
    pub c2: Option<i64>,
    pub alpha: Option<u64>,
    pub opposed: bool,
    pub k0: K0Class,
    pub splitting_type: SplittingType,
}

pub fn report(t: &TrifilteredSpace) -> Result<InvariantReport> {
    let ch = chern(t)?;
    let opposed = opposedness_violation(t)?.is_none();
    let to_i64 = |b: &BigInt| {
        b.to_i64()
            .ok_or_else(|| CoreError::Invariant("ch2 out of range".into()))
    };
    Ok(InvariantReport {
        rank: ch.rank,
        c1: ch.c1,
        ch2: [to_i64(ch.ch2.numer())?, to_i64(ch.ch2.denom())?],
        c2: ch.c2,
        alpha: if opposed { Some(alpha(t)?) } else { None },
        opposed,
        k0: k0_class(t)?,
        splitting_type: p1_splitting_type(t.f(), t.g())?,
    })
}

impl ChernData {
    pub fn ch2_is_zero(&self) -> bool {
        self.ch2.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Scalar, Subspace, Vector};

    fn line(items: &[&str]) -> Subspace {
        let v: Vector = items.iter().map(|s| s.parse::<Scalar>().unwrap()).collect();
        let n = v.len();
        Subspace::span(&[v], n).unwrap()
    }

    fn lambda_kappa(lambda: &str, kappa: &str) -> TrifilteredSpace {
        let w = FilteredSpace::from_levels(
            2,
            [(-2, Subspace::full(2)), (-1, line(&["1", "0"])), (0, line(&["1", "0"]))],
        )
        .unwrap();
        let f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&[lambda, "1"]))]).unwrap();
        let g = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&[kappa, "1"]))]).unwrap();
        TrifilteredSpace::new(w, f, g).unwrap()
    }

    #[test]
    fn chern_rank_one_closed_form() {
        let ch = chern(&TrifilteredSpace::rank_one(2, -1, 3)).unwrap();
        assert_eq!(ch.rank, 1);
        assert_eq!(ch.c1, 4);
        assert_eq!(ch.ch2, rational(16, 2));
        assert_eq!(ch.c2, None);
        let ch = chern(&TrifilteredSpace::rank_one(1, 1, 1)).unwrap();
        assert_eq!(ch.ch2, rational(9, 2));
    }

    #[test]
    fn chern_trivial() {
        let ch = chern(&TrifilteredSpace::trivial(5)).unwrap();
        assert_eq!((ch.rank, ch.c1, ch.c2), (5, 0, Some(0)));
        assert!(ch.ch2_is_zero());
    }

    #[test]
    fn chern_lambda_kappa() {
        assert_eq!(chern(&lambda_kappa("3", "3")).unwrap().c2, Some(0));
        assert_eq!(chern(&lambda_kappa("3", "i")).unwrap().c2, Some(1));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&lambda_kappa("1", "2")).unwrap(), 1);
        assert_eq!(alpha(&lambda_kappa("1", "1")).unwrap(), 0);
        assert_eq!(alpha(&TrifilteredSpace::rank_one(-4, 2, 2)).unwrap(), 0);
        assert_eq!(
            alpha(&TrifilteredSpace::rank_one(-4, 3, 1).direct_sum(&TrifilteredSpace::rank_one(0, 0, 0))).unwrap(),
            0
        );
        assert!(matches!(
            alpha(&TrifilteredSpace::rank_one(0, 1, 1)),
            Err(CoreError::NotOpposed {
                r: 0,
                p: 1,
                q: 1,
                dim: 1
            })
        ));
    }

    #[test]
    fn alpha_second_path_on_example() {
        assert_eq!(alpha_via_intersections(&lambda_kappa("1", "2")).unwrap(), 1);
        assert_eq!(alpha_via_intersections(&lambda_kappa("1/2", "1/2")).unwrap(), 0);
    }

    #[test]
    fn k0_examples() {
        let k = k0_class(&TrifilteredSpace::rank_one(-1, 2, 3)).unwrap();
        assert_eq!(k.p_a2, Laurent2::from([((2, 3), 1)]));
        assert_eq!(k.p_gm2, 1);
        assert!(k.is_consistent());
        let ne = k0_class(&lambda_kappa("0", "1")).unwrap();
        assert_eq!(ne.p_a2, Laurent2::from([((1, 0), 1), ((0, 1), 1)]));
        let eq = k0_class(&lambda_kappa("0", "0")).unwrap();
        assert_eq!(eq.p_a2, Laurent2::from([((1, 1), 1), ((0, 0), 1)]));
        assert!(ne.is_consistent() && eq.is_consistent());
        let sum = k0_class(&lambda_kappa("0", "1").direct_sum(&lambda_kappa("0", "0"))).unwrap();
        assert_eq!(sum, ne.add(&eq));
    }

    #[test]
    fn splitting_type_examples() {
        let f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&["i", "1"]))]).unwrap();
        assert_eq!(
            p1_splitting_type(&f, &f.conj()).unwrap(),
            SplittingType(BTreeMap::from([(1, 2)]))
        );
        let ne = lambda_kappa("0", "1");
        assert_eq!(
            p1_splitting_type(ne.f(), ne.g()).unwrap(),
            SplittingType(BTreeMap::from([(1, 2)]))
        );
        let eq = lambda_kappa("5", "5");
        assert_eq!(
            p1_splitting_type(eq.f(), eq.g()).unwrap(),
            SplittingType(BTreeMap::from([(0, 1), (2, 1)]))
        );
    }

    #[test]
    fn weight_graded_types() {
        let per = weight_graded_splitting_types(&lambda_kappa("0", "1")).unwrap();
        assert_eq!(per.keys().copied().collect::<Vec<_>>(), vec![-2, 0]);
        assert_eq!(per[&-2], SplittingType(BTreeMap::from([(2, 1)])));
        assert_eq!(per[&0], SplittingType(BTreeMap::from([(0, 1)])));
        let bad = weight_graded_splitting_types(&TrifilteredSpace::rank_one(0, 1, 1)).unwrap();
        assert_eq!(bad, BTreeMap::from([(0, SplittingType(BTreeMap::from([(2, 1)])))]));
    }

    #[test]
    fn report_json() {
        let r = report(&lambda_kappa("0", "1")).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["c2"], 1);
        assert_eq!(v["alpha"], 1);
        assert_eq!(v["ch2"], serde_json::json!([-1, 1]));
        assert_eq!(v["splitting_type"], serde_json::json!([[1, 2]]));
        let r = report(&TrifilteredSpace::rank_one(0, 1, 1)).unwrap();
        assert!(r.alpha.is_none() && !r.opposed);
    }
}
