//! Mixed Hodge structures over ℚ(i), with the real structure given by
//! coordinate-wise conjugation.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{CoreError, Result};
use crate::filtration::FilteredSpace;
use crate::invariants;
use crate::linalg::{Matrix, Subspace, Vector};
use crate::multifilt::{opposedness_violation, DimensionTable, Table2, TrifilteredSpace};

/// `(V, W, F)` with `W` stored decreasingly (`W^r = W_{-r}`) and
/// `F̄ = conj(F)` derived.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "MhsJson", into = "MhsJson")]
pub struct MixedHodgeStructure {
    triple: TrifilteredSpace,
}

#[derive(Serialize, Deserialize)]
struct MhsJson {
    ambient_dim: usize,
    #[serde(rename = "W")]
    w: FilteredSpace,
    #[serde(rename = "F")]
    f: FilteredSpace,
}

impl TryFrom<MhsJson> for MixedHodgeStructure {
    type Error = CoreError;
    fn try_from(raw: MhsJson) -> Result<Self> {
        if raw.w.ambient_dim() != raw.ambient_dim {
            return Err(CoreError::DimensionMismatch {
                expected: raw.ambient_dim,
                found: raw.w.ambient_dim(),
            });
        }
        validate(raw.w, raw.f)
    }
}

impl From<MixedHodgeStructure> for MhsJson {
    fn from(m: MixedHodgeStructure) -> Self {
        MhsJson {
            ambient_dim: m.ambient_dim(),
            w: m.w().clone(),
            f: m.f().clone(),
        }
    }
}

pub fn validate(w: FilteredSpace, f: FilteredSpace) -> Result<MixedHodgeStructure> {
    if w.ambient_dim() != f.ambient_dim() {
        return Err(CoreError::DimensionMismatch {
            expected: w.ambient_dim(),
            found: f.ambient_dim(),
        });
    }
    if let Some((&level, _)) = w.jumps().iter().find(|(_, s)| !s.is_real()) {
        return Err(CoreError::NotReal { level });
    }
    let m = MixedHodgeStructure::unchecked(w, f);
    if let Some((r, p, q, dim)) = opposedness_violation(&m.triple)? {
        return Err(CoreError::NotOpposed { r, p, q, dim });
    }
    let h = m.hodge_numbers()?;
    for (&(p, q), d) in &h {
        if h.get(&(q, p)) != Some(d) {
            return Err(CoreError::HodgeAsymmetry { p, q });
        }
    }
    Ok(m)
}

impl MixedHodgeStructure {
    fn unchecked(w: FilteredSpace, f: FilteredSpace) -> Self {
        let fbar = f.conj();
        let triple = TrifilteredSpace::new(w, f, fbar).expect("filtrations share the ambient space");
        MixedHodgeStructure { triple }
    }

    /// Pure Hodge–Tate structure `T⟨−p⟩`: rank one, weight `2p`, `F` jumping at `p`.
    pub fn tate(p: i64) -> Self {
        Self::unchecked(
            FilteredSpace::trivial(1).shift(-2 * p),
            FilteredSpace::trivial(1).shift(p),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.triple.ambient_dim()
    }

    pub fn w(&self) -> &FilteredSpace {
        self.triple.w()
    }

    pub fn f(&self) -> &FilteredSpace {
        self.triple.f()
    }

    pub fn fbar(&self) -> &FilteredSpace {
        self.triple.g()
    }

    /// `(W, F, F̄)` as a trifiltered space.
    pub fn triple(&self) -> &TrifilteredSpace {
        &self.triple
    }

    /// `W_m` in the increasing convention.
    pub fn weight_level(&self, m: i64) -> Subspace {
        self.w().level(-m)
    }

    /// Weights `m` with `Gr^W_m ≠ 0`.
    pub fn weights(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.triple.weight_indices().into_iter().map(|r| -r).collect();
        out.sort_unstable();
        out
    }

    /// `h^{p,q} = dim Gr_F^p Gr_{F̄}^q Gr^W_{p+q}`.
    pub fn hodge_numbers(&self) -> Result<Table2> {
        Ok(DimensionTable::of(&self.triple)?.h)
    }

    /// Difference between the largest and the smallest weight.
    pub fn length(&self) -> i64 {
        let ws = self.weights();
        match (ws.first(), ws.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }
}

/// Deligne's bigrading `V = ⊕ I^{p,q}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DeligneSplitting {
    pub ambient_dim: usize,
    pub pieces: BTreeMap<(i64, i64), Subspace>,
}

impl DeligneSplitting {
    pub fn get(&self, p: i64, q: i64) -> Subspace {
        self.pieces
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.ambient_dim))
    }

    pub fn dims(&self) -> Table2 {
        self.pieces.iter().map(|(&k, s)| (k, s.dim())).collect()
    }
}

impl Serialize for DeligneSplitting {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Piece<'a> {
            p: i64,
            q: i64,
            dim: usize,
            basis: &'a [Vector],
        }
        let mut seq = s.serialize_seq(Some(self.pieces.len()))?;
        for (&(p, q), sub) in &self.pieces {
            seq.serialize_element(&Piece {
                p,
                q,
                dim: sub.dim(),
                basis: sub.basis(),
            })?;
        }
        seq.end()
    }
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (F̄^q ∩ W_{p+q} + Σ_{i≥1} F̄^{q−i} ∩ W_{p+q−i−1})`.
pub fn deligne_splitting(m: &MixedHodgeStructure) -> Result<DeligneSplitting> {
    let n = m.ambient_dim();
    let (flo, fhi) = m.f().bounds();
    let weights = m.weights();
    let mut pieces = BTreeMap::new();
    let Some(&wmin) = weights.first() else {
        return Ok(DeligneSplitting { ambient_dim: n, pieces });
    };
    for p in flo..fhi {
        for q in flo..fhi {
            let wpq = m.weight_level(p + q);
            if wpq.is_zero() {
                continue;
            }
            let left = m.f().level(p).intersect(&wpq)?;
            if left.is_zero() {
                continue;
            }
            let mut right = m.fbar().level(q).intersect(&wpq)?;
            let mut i = 1;
            while p + q - i > wmin {
                let piece = m.fbar().level(q - i).intersect(&m.weight_level(p + q - i - 1))?;
                right = right.sum(&piece)?;
                i += 1;
            }
            let ipq = left.intersect(&right)?;
            if !ipq.is_zero() {
                pieces.insert((p, q), ipq);
            }
        }
    }
    Ok(DeligneSplitting { ambient_dim: n, pieces })
}

pub fn is_r_split(m: &MixedHodgeStructure) -> Result<bool> {
    let split = deligne_splitting(m)?;
    Ok(split.pieces.iter().all(|(&(p, q), ipq)| split.get(q, p).conj() == *ipq))
}

pub fn alpha_mhs(m: &MixedHodgeStructure) -> Result<u64> {
    invariants::alpha(&m.triple)
}

/// `H ⊗ T⟨k⟩`: `W_n` becomes `W_{n+2k}` and `F^p` becomes `F^{p+k}`.
pub fn tate_twist(m: &MixedHodgeStructure, k: i64) -> MixedHodgeStructure {
    MixedHodgeStructure::unchecked(m.w().shift(2 * k), m.f().shift(-k))
}

pub fn dual_mhs(m: &MixedHodgeStructure) -> MixedHodgeStructure {
    MixedHodgeStructure::unchecked(m.w().dual(), m.f().dual())
}

pub fn direct_sum_mhs(a: &MixedHodgeStructure, b: &MixedHodgeStructure) -> MixedHodgeStructure {
    MixedHodgeStructure::unchecked(a.w().direct_sum(b.w()), a.f().direct_sum(b.f()))
}

pub fn tensor_mhs(a: &MixedHodgeStructure, b: &MixedHodgeStructure) -> MixedHodgeStructure {
    MixedHodgeStructure::unchecked(a.w().tensor(b.w()), a.f().tensor(b.f()))
}

/// Gluing data for an extension `0 → A → H → B → 0` on `H = A ⊕ B`:
/// `W_H^r = {(a + ψb, b) : a ∈ W_A^r, b ∈ W_B^r}` and likewise `F_H` with `φ`.
/// Both maps are `dim A × dim B`; `ψ` must be real.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtensionLift {
    pub w_lift: Matrix,
    pub f_lift: Matrix,
}

impl ExtensionLift {
    pub fn zero(dim_a: usize, dim_b: usize) -> Self {
        ExtensionLift {
            w_lift: Matrix::zeros(dim_a, dim_b),
            f_lift: Matrix::zeros(dim_a, dim_b),
        }
    }
}

fn glued_filtration(a: &FilteredSpace, b: &FilteredSpace, lift: &Matrix) -> Result<FilteredSpace> {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let total = na + nb;
    let (alo, ahi) = a.bounds();
    let (blo, bhi) = b.bounds();
    let (lo, hi) = (alo.min(blo), ahi.max(bhi));
    FilteredSpace::from_fn(total, lo, hi, |p| {
        let mut gens: Vec<Vector> = a.level(p).embed(0, total).basis().to_vec();
        for v in b.level(p).basis() {
            let mut g = lift.apply(v)?;
            g.extend(v.iter().cloned());
            gens.push(g);
        }
        Subspace::span(&gens, total)
    })
}

fn check_lift_contract(name: &str, h: &FilteredSpace, a: &FilteredSpace, b: &FilteredSpace) -> Result<()> {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let a_in_h = Subspace::full(na).embed(0, na + nb);
    let (lo, hi) = h.bounds();
    for p in lo.min(a.bounds().0).min(b.bounds().0)..=hi.max(a.bounds().1).max(b.bounds().1) {
        let hp = h.level(p);
        if hp.intersect(&a_in_h)? != a.level(p).embed(0, na + nb) {
            return Err(CoreError::LiftContract(format!(
                "{name}^{p} restricted to A differs from A's level"
            )));
        }
        let projected: Vec<Vector> = hp.basis().iter().map(|v| v[na..].to_vec()).collect();
        if Subspace::span(&projected, nb)? != b.level(p) {
            return Err(CoreError::LiftContract(format!(
                "{name}^{p} projected to B differs from B's level"
            )));
        }
    }
    Ok(())
}

pub fn assemble_extension(
    a: &MixedHodgeStructure,
    b: &MixedHodgeStructure,
    lift: &ExtensionLift,
) -> Result<MixedHodgeStructure> {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    for (name, mat) in [("w_lift", &lift.w_lift), ("f_lift", &lift.f_lift)] {
        if mat.rows() != na || mat.cols() != nb {
            return Err(CoreError::LiftContract(format!(
                "{name} is {}x{}, expected {na}x{nb}",
                mat.rows(),
                mat.cols()
            )));
        }
    }
    if !lift.w_lift.is_real() {
        return Err(CoreError::LiftContract("w_lift is not real".into()));
    }
    let w = glued_filtration(a.w(), b.w(), &lift.w_lift)?;
    let f = glued_filtration(a.f(), b.f(), &lift.f_lift)?;
    check_lift_contract("W", &w, a.w(), b.w())?;
    check_lift_contract("F", &f, a.f(), b.f())?;
    validate(w, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Scalar;

    fn sc(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    fn line(items: &[&str]) -> Subspace {
        let v: Vector = items.iter().map(|s| sc(s)).collect();
        let n = v.len();
        Subspace::span(&[v], n).unwrap()
    }

    /// Basis `e = (1,0)`, `f = (0,1)`; `W_0 = ⟨e⟩`, `W_2 = V`, `F¹ = ⟨f + λe⟩`.
    fn lambda_mhs(lambda: &str) -> Result<MixedHodgeStructure> {
        let w = FilteredSpace::from_levels(
            2,
            [(-2, Subspace::full(2)), (-1, line(&["1", "0"])), (0, line(&["1", "0"]))],
        )?;
        let f = FilteredSpace::from_levels(2, [(0, Subspace::full(2)), (1, line(&[lambda, "1"]))])?;
        validate(w, f)
    }

    #[test]
    fn pure_weight_zero() {
        let m = validate(FilteredSpace::trivial(3), FilteredSpace::trivial(3)).unwrap();
        assert_eq!(m.hodge_numbers().unwrap(), Table2::from([((0, 0), 3)]));
        assert_eq!(alpha_mhs(&m).unwrap(), 0);
        assert!(is_r_split(&m).unwrap());
    }

    #[test]
    fn lambda_i_is_valid_and_not_split() {
        let m = lambda_mhs("i").unwrap();
        assert_eq!(m.hodge_numbers().unwrap(), Table2::from([((1, 1), 1), ((0, 0), 1)]));
        assert_eq!(m.fbar().level(1), line(&["-i", "1"]));
        let split = deligne_splitting(&m).unwrap();
        assert_eq!(split.get(1, 1), line(&["i", "1"]));
        assert_eq!(split.get(0, 0), line(&["1", "0"]));
        assert!(!is_r_split(&m).unwrap());
        assert_eq!(alpha_mhs(&m).unwrap(), 1);
        assert_eq!(alpha_mhs(&tate_twist(&m, 1)).unwrap(), 1);
    }

    #[test]
    fn lambda_real_is_split() {
        let m = lambda_mhs("1").unwrap();
        assert!(is_r_split(&m).unwrap());
        assert_eq!(alpha_mhs(&m).unwrap(), 0);
    }

    #[test]
    fn non_real_weight_rejected() {
        let w = FilteredSpace::from_levels(2, [(-1, Subspace::full(2)), (0, line(&["1", "i"]))]).unwrap();
        assert!(matches!(
            validate(w, FilteredSpace::trivial(2)),
            Err(CoreError::NotReal { level: 0 })
        ));
    }

    #[test]
    fn non_opposed_rejected() {
        let w = FilteredSpace::trivial(1);
        let f = FilteredSpace::trivial(1).shift(1);
        assert!(matches!(
            validate(w, f),
            Err(CoreError::NotOpposed {
                r: 0,
                p: 1,
                q: 1,
                dim: 1
            })
        ));
    }

    #[test]
    fn tate_objects() {
        for k in -3..=3 {
            let t = MixedHodgeStructure::tate(k);
            assert_eq!(t.weights(), vec![2 * k]);
            assert_eq!(t.hodge_numbers().unwrap(), Table2::from([((k, k), 1)]));
            assert_eq!(alpha_mhs(&t).unwrap(), 0);
            assert_eq!(tate_twist(&MixedHodgeStructure::tate(0), -k), t);
        }
    }

    #[test]
    fn operations_round_trip() {
        let m = lambda_mhs("1+i").unwrap();
        assert_eq!(tate_twist(&m, 0), m);
        assert_eq!(dual_mhs(&dual_mhs(&m)), m);
        let twisted = tate_twist(&m, 2);
        let h = m.hodge_numbers().unwrap();
        for ((p, q), d) in twisted.hodge_numbers().unwrap() {
            assert_eq!(h[&(p + 2, q + 2)], d);
        }
        let d = dual_mhs(&m);
        assert_eq!(d.weights(), vec![-2, 0]);
        assert_eq!(alpha_mhs(&d).unwrap(), 1);
        assert_eq!(alpha_mhs(&direct_sum_mhs(&m, &m)).unwrap(), 2);
        assert_eq!(alpha_mhs(&tensor_mhs(&m, &m)).unwrap(), 4);
    }

    #[test]
    fn extension_examples() {
        let a = MixedHodgeStructure::tate(0);
        let b = MixedHodgeStructure::tate(1);
        let split = assemble_extension(&a, &b, &ExtensionLift::zero(1, 1)).unwrap();
        assert_eq!(split, direct_sum_mhs(&a, &b));
        assert_eq!(alpha_mhs(&split).unwrap(), 0);

        let lift = ExtensionLift {
            w_lift: Matrix::zeros(1, 1),
            f_lift: Matrix::from_entries(1, 1, vec![sc("i")]).unwrap(),
        };
        let h = assemble_extension(&a, &b, &lift).unwrap();
        assert_eq!(h, lambda_mhs("i").unwrap());
        assert_eq!(alpha_mhs(&h).unwrap(), 1);

        let real = ExtensionLift {
            w_lift: Matrix::zeros(1, 1),
            f_lift: Matrix::from_entries(1, 1, vec![sc("3")]).unwrap(),
        };
        assert_eq!(alpha_mhs(&assemble_extension(&a, &b, &real).unwrap()).unwrap(), 0);
    }

    #[test]
    fn extension_lift_errors() {
        let a = MixedHodgeStructure::tate(0);
        let b = MixedHodgeStructure::tate(1);
        let bad_shape = ExtensionLift::zero(2, 1);
        assert!(matches!(
            assemble_extension(&a, &b, &bad_shape),
            Err(CoreError::LiftContract(_))
        ));
        let complex_w = ExtensionLift {
            w_lift: Matrix::from_entries(1, 1, vec![sc("i")]).unwrap(),
            f_lift: Matrix::zeros(1, 1),
        };
        assert!(matches!(
            assemble_extension(&a, &b, &complex_w),
            Err(CoreError::LiftContract(_))
        ));
    }

    #[test]
    fn json_round_trip_without_fbar() {
        let m = lambda_mhs("i").unwrap();
        let v = serde_json::to_value(&m).unwrap();
        assert!(v.get("G").is_none() && v.get("Fbar").is_none());
        let back: MixedHodgeStructure = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
        let split = serde_json::to_value(deligne_splitting(&m).unwrap()).unwrap();
        assert_eq!(split.as_array().unwrap().len(), 2);
    }
}
