//! Subspaces of a fixed ambient space and the distance used to compare
//! invariant directions: the infimum of ‖F₁ − F₂‖ over frames of the two
//! subspaces whose smallest singular value is at least one.
//!
//! That infimum has a closed form, 2 sin(φ/2) in the largest principal
//! angle φ: principal-aligned orthonormal frames attain it, and no pair of
//! admissible frames beats it because a unit vector realizing φ can be fed
//! through both frames at cost at most one in length. The tests keep a
//! brute-force frame search as an independent oracle.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cocycle::op_norm;
use crate::error::{Error, Result};

const RANK_TOL: f64 = 1e-12;

/// A linear subspace stored as an orthonormal basis (columns).
#[derive(Debug, Clone)]
pub struct Subspace {
    basis: DMatrix<f64>,
}

impl Subspace {
    /// Span of the given vectors, which must be linearly independent.
    pub fn new(vectors: &[DVector<f64>]) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::PreconditionViolated(
                "a subspace needs at least one spanning vector".into(),
            ));
        }
        let d = vectors[0].len();
        if vectors.iter().any(|v| v.len() != d) {
            return Err(Error::DimensionMismatch(
                "spanning vectors have mixed lengths".into(),
            ));
        }
        if vectors.len() > d {
            return Err(Error::DimensionMismatch(format!(
                "{} vectors cannot be independent in dimension {d}",
                vectors.len()
            )));
        }
        let p = vectors.len();
        let mut m = DMatrix::zeros(d, p);
        for (j, v) in vectors.iter().enumerate() {
            m.set_column(j, v);
        }
        Subspace::from_columns_with_floor(m, 0.0)
    }

    /// Orthonormalizes the columns; any singular value at or below the
    /// larger of `floor` and the relative rank cutoff means the columns do
    /// not span a subspace of full column count.
    fn from_columns_with_floor(m: DMatrix<f64>, floor: f64) -> Result<Self> {
        if m.ncols() == 1 {
            let n = m.column(0).norm();
            if n <= floor || n == 0.0 {
                return Err(Error::Degenerate(
                    "spanning vectors are linearly dependent".into(),
                ));
            }
            return Ok(Subspace { basis: m / n });
        }
        let p = m.ncols();
        let svd = m.svd(true, false);
        let top = svd.singular_values.max();
        let cutoff = (RANK_TOL * top).max(floor);
        if top == 0.0 || svd.singular_values.iter().any(|&s| s <= cutoff) {
            return Err(Error::Degenerate(
                "spanning vectors are linearly dependent".into(),
            ));
        }
        let u = svd.u.unwrap().columns(0, p).into_owned();
        Ok(Subspace { basis: u })
    }

    /// The line through a nonzero vector.
    pub fn line(v: &DVector<f64>) -> Result<Self> {
        Subspace::new(std::slice::from_ref(v))
    }

    pub fn ambient_dimension(&self) -> usize {
        self.basis.nrows()
    }

    pub fn dimension(&self) -> usize {
        self.basis.ncols()
    }

    /// Orthonormal basis, one column per dimension.
    pub fn basis(&self) -> &DMatrix<f64> {
        &self.basis
    }

    /// Orthogonal projection onto the subspace.
    pub fn project(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        if v.len() != self.ambient_dimension() {
            return Err(Error::DimensionMismatch(
                "vector length does not match the ambient dimension".into(),
            ));
        }
        Ok(&self.basis * (self.basis.transpose() * v))
    }

    /// Whether the vector lies in the subspace up to a relative tolerance.
    pub fn contains(&self, v: &DVector<f64>, tol: f64) -> Result<bool> {
        let proj = self.project(v)?;
        Ok((v - proj).norm() <= tol * (1.0 + v.norm()))
    }

    /// Image under a linear map, which must not collapse the subspace.
    pub fn apply(&self, m: &DMatrix<f64>) -> Result<Self> {
        if m.ncols() != self.ambient_dimension() {
            return Err(Error::DimensionMismatch(
                "map does not act on the ambient space".into(),
            ));
        }
        let image = m * &self.basis;
        Subspace::from_columns_with_floor(image, RANK_TOL * op_norm(m))
    }
}

fn sorted_clamped(values: &[f64], ascending: bool) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().map(|s| s.clamp(0.0, 1.0)).collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if !ascending {
        v.reverse();
    }
    v
}

/// Principal angles between two subspaces of equal dimension, ascending.
/// Cosines come from the singular values of U₁ᵀU₂, sines from those of
/// (I − P₂)U₁; combining both through atan2 stays accurate at both ends.
pub fn principal_angles(a: &Subspace, b: &Subspace) -> Result<Vec<f64>> {
    if a.ambient_dimension() != b.ambient_dimension() {
        return Err(Error::DimensionMismatch(
            "subspaces live in different ambient spaces".into(),
        ));
    }
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch(
            "principal angles need equal dimensions".into(),
        ));
    }
    let u1 = a.basis();
    let u2 = b.basis();
    let cross = u1.transpose() * u2;
    let cosines = sorted_clamped(
        cross.clone().svd(false, false).singular_values.as_slice(),
        false,
    );
    let residual = u1 - u2 * (u2.transpose() * u1);
    let sines = sorted_clamped(residual.svd(false, false).singular_values.as_slice(), true);
    Ok(cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| s.atan2(c))
        .collect())
}

/// Distance between subspaces: the infimum of ‖F₁ − F₂‖ over frames with
/// smallest singular value at least one, which equals 2 sin(φ/2) for the
/// largest principal angle φ. A metric on each Grassmannian.
pub fn grassmann_distance(a: &Subspace, b: &Subspace) -> Result<f64> {
    let angles = principal_angles(a, b)?;
    let top = angles[angles.len() - 1];
    Ok(2.0 * (0.5 * top).sin())
}

/// Worst observed expansion of the subspace distance under a fixed
/// invertible map, over random pairs of p-dimensional subspaces. Bounded
/// by the bolicity ‖L‖·‖L⁻¹‖, since rescaled image frames stay admissible.
pub fn lipschitz_bolicity_property(
    l: &DMatrix<f64>,
    p: usize,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    let d = l.nrows();
    if l.ncols() != d {
        return Err(Error::DimensionMismatch("the map must be square".into()));
    }
    if p == 0 || p >= d {
        return Err(Error::PreconditionViolated(
            "proper subspaces need 0 < p < dim".into(),
        ));
    }
    if trials == 0 {
        return Err(Error::PreconditionViolated(
            "need at least one trial".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_subspace = |rng: &mut ChaCha8Rng| -> Subspace {
        loop {
            let cols: Vec<DVector<f64>> = (0..p)
                .map(|_| DVector::from_fn(d, |_, _| rng.random_range(-1.0..1.0f64)))
                .collect();
            if let Ok(s) = Subspace::new(&cols) {
                return s;
            }
        }
    };
    let mut worst = 0.0f64;
    let mut done = 0usize;
    while done < trials {
        let v1 = random_subspace(&mut rng);
        let v2 = random_subspace(&mut rng);
        let base = grassmann_distance(&v1, &v2)?;
        if base < 1e-8 {
            continue;
        }
        let image = grassmann_distance(&v1.apply(l)?, &v2.apply(l)?)?;
        worst = worst.max(image / base);
        done += 1;
    }
    Ok(worst)
}
