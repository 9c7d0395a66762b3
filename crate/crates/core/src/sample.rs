//! Seeded random generators of mixed Hodge structures, extensions and
//! morphisms, used by property tests, the acceptance suite and `selftest`.
//!
//! Structures are built from an R-split bigrading in coordinates, deformed
//! by a weight-lowering unipotent `g = 1 + N` acting on `F` (which keeps the
//! graded pieces pure but generally breaks R-splitness), and finally moved
//! by a random real change of basis.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exactfield::{rational, GaussianRational};
use crate::filtration::FilteredSpace;
use crate::linalg::{Matrix, Scalar, Subspace, Vector};
use crate::mhs::{assemble_extension, deligne_splitting, direct_sum_mhs, validate, ExtensionLift, MixedHodgeStructure};
use crate::multifilt::FilteredMorphism;

/// The generator used throughout for reproducible sampling.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Range of Hodge indices used by the generators.
pub const INDEX_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

fn small_rational<R: Rng>(rng: &mut R) -> crate::exactfield::Rational {
    rational(rng.gen_range(-3..=3), rng.gen_range(1..=3))
}

pub fn real_scalar<R: Rng>(rng: &mut R) -> Scalar {
    GaussianRational::from_rational(small_rational(rng))
}

pub fn gaussian_scalar<R: Rng>(rng: &mut R) -> Scalar {
    GaussianRational::new(small_rational(rng), small_rational(rng))
}

/// Random invertible matrix with small integer entries.
pub fn real_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let entries = (0..n * n).map(|_| Scalar::from(rng.gen_range(-2..=2))).collect();
        let m = Matrix::from_entries(n, n, entries).expect("square shape");
        if m.rank() == n {
            return m;
        }
    }
}

fn unit(n: usize, k: usize) -> Vector {
    let mut v = vec![Scalar::from(0); n];
    v[k] = Scalar::from(1);
    v
}

/// R-split bigrading of `K^n`: `(p, q, v)` with `v` spanning `I^{p,q}`.
fn split_bigrading<R: Rng>(rng: &mut R, n: usize) -> Vec<(i64, i64, Vector)> {
    let mut out = Vec::with_capacity(n);
    let mut k = 0;
    while k < n {
        let p = rng.gen_range(INDEX_RANGE);
        let q = rng.gen_range(INDEX_RANGE);
        if p == q || k + 1 == n {
            out.push((p, p, unit(n, k)));
            k += 1;
        } else {
            let (e, f) = (unit(n, k), unit(n, k + 1));
            let plus: Vector = e.iter().zip(&f).map(|(a, b)| a + &(b * &Scalar::i())).collect();
            let minus: Vector = plus.iter().map(Scalar::conj).collect();
            out.push((p, q, plus));
            out.push((q, p, minus));
            k += 2;
        }
    }
    out
}

/// Random valid MHS of dimension in `1..=max_dim`. With probability
/// `deform` the Hodge filtration is moved off the R-split position.
pub fn random_mhs_with<R: Rng>(rng: &mut R, max_dim: usize, deform: f64) -> MixedHodgeStructure {
    loop {
        let n = rng.gen_range(1..=max_dim.max(1));
        if let Ok(m) = try_random_mhs(rng, n, deform) {
            return m;
        }
    }
}

pub fn random_mhs<R: Rng>(rng: &mut R, max_dim: usize) -> MixedHodgeStructure {
    random_mhs_with(rng, max_dim, 0.75)
}

fn try_random_mhs<R: Rng>(rng: &mut R, n: usize, deform: f64) -> Result<MixedHodgeStructure> {
    let grading = split_bigrading(rng, n);
    let deformed: Vec<Vector> = if rng.gen_bool(deform) {
        grading
            .iter()
            .map(|(p, q, v)| {
                let mut out = v.clone();
                for (p2, q2, u) in &grading {
                    if p2 + q2 < p + q && rng.gen_bool(0.6) {
                        let c = gaussian_scalar(rng);
                        for (o, x) in out.iter_mut().zip(u) {
                            *o += &(&c * x);
                        }
                    }
                }
                out
            })
            .collect()
    } else {
        grading.iter().map(|(_, _, v)| v.clone()).collect()
    };
    let wmin = grading.iter().map(|(p, q, _)| p + q).min().unwrap_or(0);
    let wmax = grading.iter().map(|(p, q, _)| p + q).max().unwrap_or(0);
    let w = FilteredSpace::from_fn(n, -wmax, -wmin + 1, |r| {
        let gens: Vec<&Vector> = grading
            .iter()
            .filter(|(p, q, _)| p + q <= -r)
            .map(|(_, _, v)| v)
            .collect();
        Subspace::span(&gens, n)
    })?;
    let f = FilteredSpace::from_fn(n, *INDEX_RANGE.start(), *INDEX_RANGE.end() + 1, |a| {
        let gens: Vec<&Vector> = grading
            .iter()
            .zip(&deformed)
            .filter(|((p, _, _), _)| *p >= a)
            .map(|(_, v)| v)
            .collect();
        Subspace::span(&gens, n)
    })?;
    let h = real_invertible(rng, n);
    validate(w.transform(&h)?, f.transform(&h)?)
}

/// Random extension data: `(A, B, lift, H)` with `H` assembled from a lift
/// sending each weight-`m` Deligne vector of `B` into `W_{A,m−1}`.
pub fn random_extension<R: Rng>(
    rng: &mut R,
    max_dim: usize,
) -> (
    MixedHodgeStructure,
    MixedHodgeStructure,
    ExtensionLift,
    MixedHodgeStructure,
) {
    loop {
        let half = (max_dim / 2).max(1);
        let a = random_mhs(rng, half);
        let b = random_mhs(rng, max_dim.saturating_sub(a.ambient_dim()).max(1));
        let Ok(lift) = random_lift(rng, &a, &b) else { continue };
        if let Ok(h) = assemble_extension(&a, &b, &lift) {
            return (a, b, lift, h);
        }
    }
}

fn random_lift<R: Rng>(rng: &mut R, a: &MixedHodgeStructure, b: &MixedHodgeStructure) -> Result<ExtensionLift> {
    let (na, nb) = (a.ambient_dim(), b.ambient_dim());
    let split_a = deligne_splitting(a)?;
    let split_b = deligne_splitting(b)?;
    let mut b_basis = Vec::with_capacity(nb);
    let mut images = Vec::with_capacity(nb);
    for (&(p, q), piece) in &split_b.pieces {
        for v in piece.basis() {
            let mut img = vec![Scalar::from(0); na];
            for (&(p2, q2), apiece) in &split_a.pieces {
                if p2 + q2 < p + q {
                    for u in apiece.basis() {
                        if rng.gen_bool(0.7) {
                            let c = gaussian_scalar(rng);
                            for (o, x) in img.iter_mut().zip(u) {
                                *o += &(&c * x);
                            }
                        }
                    }
                }
            }
            b_basis.push(v.clone());
            images.push(img);
        }
    }
    let basis = Matrix::from_columns(&b_basis, nb)?;
    let inv = basis
        .inverse()
        .ok_or_else(|| crate::error::CoreError::Invariant("Deligne vectors do not form a basis".into()))?;
    let phi = Matrix::from_columns(&images, na)?.mul(&inv)?;
    Ok(ExtensionLift {
        w_lift: Matrix::zeros(na, nb),
        f_lift: phi,
    })
}

/// A morphism of mixed Hodge structures, as a filtered morphism of the
/// triples `(W, F, F̄)`.
pub fn random_morphism<R: Rng>(rng: &mut R, max_dim: usize) -> FilteredMorphism {
    loop {
        if let Ok(m) = try_random_morphism(rng, max_dim) {
            return m;
        }
    }
}

fn morphism(matrix: Matrix, src: &MixedHodgeStructure, tgt: &MixedHodgeStructure) -> Result<FilteredMorphism> {
    FilteredMorphism::new(matrix, src.triple().clone(), tgt.triple().clone())
}

fn try_random_morphism<R: Rng>(rng: &mut R, max_dim: usize) -> Result<FilteredMorphism> {
    match rng.gen_range(0..6) {
        0 | 1 => {
            let (a, b, _, h) = random_extension(rng, max_dim);
            let (na, nb) = (a.ambient_dim(), b.ambient_dim());
            let mut incl = Matrix::zeros(na + nb, na);
            incl.set_block(0, 0, &Matrix::identity(na));
            let mut proj = Matrix::zeros(nb, na + nb);
            proj.set_block(0, na, &Matrix::identity(nb));
            let i = morphism(incl, &a, &h)?;
            let p = morphism(proj, &h, &b)?;
            Ok(match rng.gen_range(0..3) {
                0 => i,
                1 => p,
                _ => i.compose(&p)?,
            })
        }
        2 | 3 => {
            let m = random_mhs(rng, (max_dim / 2).max(1));
            let n = m.ambient_dim();
            let mm = direct_sum_mhs(&m, &m);
            let id = Matrix::identity(n);
            let diag = Matrix::from_rows(&[id.row_vectors(), id.row_vectors()].concat(), n)?;
            let c = real_scalar(rng);
            let add = Matrix::identity(n).scale(&c).hstack(&id)?;
            let d = morphism(diag, &m, &mm)?;
            let s = morphism(add, &mm, &m)?;
            Ok(if rng.gen_bool(0.5) { d } else { d.compose(&s)? })
        }
        _ => {
            let m = random_mhs(rng, max_dim);
            let c = real_scalar(rng);
            morphism(Matrix::identity(m.ambient_dim()).scale(&c), &m, &m)
        }
    }
}
