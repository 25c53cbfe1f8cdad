//! Norm fields on the fibers: constant reference norms (Euclidean, max,
//! polytope gauge, ellipsoidal) and the evaluator-backed candidate norm
//! produced by the limit formula in [`crate::extremal`].
//!
//! Constant variants evaluate on vectors alone; the candidate norm needs the
//! base point, since its value is read off the orbit structure above it.

use nalgebra::{DMatrix, DVector};

use crate::cocycle::{op_norm, Cocycle};
use crate::error::{Error, Result};
use crate::subshift::Point;

/// A polygonal unit ball in the plane, stored both as its hull vertices and
/// as outer half-space constraints, so the gauge is an exact max of ratios.
#[derive(Debug, Clone)]
pub struct PolytopeNorm {
    vertices: Vec<[f64; 2]>,
    /// outward normal and positive offset per hull edge: ball = {x : <n,x> <= c}
    faces: Vec<([f64; 2], f64)>,
}

/// Ellipsoidal norm ‖v‖ = sqrt(vᵀ Q v) for positive-definite Q.
#[derive(Debug, Clone)]
pub struct EllipseNorm {
    q: DMatrix<f64>,
    /// upper Cholesky factor U with Q = Uᵀ U, so ‖v‖ = |U v|
    chol_u: DMatrix<f64>,
    chol_u_inv: DMatrix<f64>,
}

/// Point-dependent candidate norm evaluated by the truncated limit formula.
#[derive(Debug, Clone)]
pub struct BarabanovNorm {
    pub cocycle: Cocycle,
    pub beta: f64,
    pub depth: usize,
}

/// A norm on the fibers, possibly varying with the base point.
#[derive(Debug, Clone)]
pub enum NormField {
    Euclidean,
    Max,
    Polytope(PolytopeNorm),
    Ellipse(EllipseNorm),
    Barabanov(BarabanovNorm),
}

fn cross(o: [f64; 2], a: [f64; 2], b: [f64; 2]) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Convex hull, counterclockwise, collinear points dropped.
fn convex_hull(points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup_by(|a, b| (a[0] - b[0]).abs() < 1e-12 && (a[1] - b[1]).abs() < 1e-12);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-12
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-12
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Hull of a planar point cloud given as vectors, for callers that need to
/// trim a candidate vertex list before building the gauge.
pub(crate) fn convex_hull_of(points: &[DVector<f64>]) -> Vec<DVector<f64>> {
    let raw: Vec<[f64; 2]> = points.iter().map(|p| [p[0], p[1]]).collect();
    convex_hull(&raw)
        .into_iter()
        .map(|p| DVector::from_column_slice(&p))
        .collect()
}

impl PolytopeNorm {
    /// Builds the gauge norm of the symmetric convex hull of `vertices`.
    /// The list must be centrally symmetric, in convex position, and span
    /// the plane.
    pub fn new(vertices: &[DVector<f64>]) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty("polytope needs vertices".into()));
        }
        if vertices.iter().any(|v| v.len() != 2) {
            return Err(Error::DimensionMismatch(
                "polytope norms are two-dimensional".into(),
            ));
        }
        if vertices.iter().any(|v| !v.iter().all(|x| x.is_finite())) {
            return Err(Error::PreconditionViolated(
                "polytope vertices must be finite".into(),
            ));
        }
        let scale = vertices
            .iter()
            .map(|v| v.amax())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for v in vertices {
            let mirrored = vertices.iter().any(|w| (w + v).amax() <= 1e-9 * scale);
            if !mirrored {
                return Err(Error::PreconditionViolated(format!(
                    "vertex ({}, {}) has no negation in the list",
                    v[0], v[1]
                )));
            }
        }
        let raw: Vec<[f64; 2]> = vertices.iter().map(|v| [v[0], v[1]]).collect();
        let hull = convex_hull(&raw);
        if hull.len() < 3 {
            return Err(Error::Degenerate("polytope vertices are collinear".into()));
        }
        for p in &raw {
            let on_hull = hull.iter().any(|h| {
                (h[0] - p[0]).abs() <= 1e-9 * scale && (h[1] - p[1]).abs() <= 1e-9 * scale
            });
            if !on_hull {
                return Err(Error::PreconditionViolated(format!(
                    "vertex ({}, {}) is not in convex position",
                    p[0], p[1]
                )));
            }
        }
        let mut faces = Vec::with_capacity(hull.len());
        for i in 0..hull.len() {
            let a = hull[i];
            let b = hull[(i + 1) % hull.len()];
            // outward normal of the CCW edge a -> b
            let n = [b[1] - a[1], a[0] - b[0]];
            let c = n[0] * a[0] + n[1] * a[1];
            if c <= 1e-12 * scale * scale {
                return Err(Error::Degenerate(
                    "polytope does not contain the origin in its interior".into(),
                ));
            }
            faces.push((n, c));
        }
        Ok(PolytopeNorm {
            vertices: hull,
            faces,
        })
    }

    /// Hull vertices in counterclockwise order.
    pub fn vertices(&self) -> Vec<DVector<f64>> {
        self.vertices
            .iter()
            .map(|v| DVector::from_column_slice(&[v[0], v[1]]))
            .collect()
    }

    /// Exact gauge: max over faces of <n,v> / c.
    pub fn gauge(&self, v: &DVector<f64>) -> f64 {
        self.faces
            .iter()
            .map(|(n, c)| (n[0] * v[0] + n[1] * v[1]) / c)
            .fold(0.0f64, f64::max)
    }
}

impl EllipseNorm {
    /// Builds the norm sqrt(vᵀ Q v); Q must be symmetric positive-definite.
    pub fn new(q: DMatrix<f64>) -> Result<Self> {
        if !q.is_square() {
            return Err(Error::DimensionMismatch(
                "ellipse matrix must be square".into(),
            ));
        }
        let sym_defect = op_norm(&(&q - q.transpose()));
        if sym_defect > 1e-9 * (1.0 + op_norm(&q)) {
            return Err(Error::PreconditionViolated(
                "ellipse matrix must be symmetric".into(),
            ));
        }
        let sym = (&q + q.transpose()) * 0.5;
        let chol = sym
            .clone()
            .cholesky()
            .ok_or_else(|| Error::Degenerate("ellipse matrix is not positive-definite".into()))?;
        let u = chol.l().transpose();
        let d = u.nrows();
        let u_inv = u
            .clone()
            .solve_upper_triangular(&DMatrix::identity(d, d))
            .ok_or_else(|| Error::Degenerate("ellipse factor is singular".into()))?;
        Ok(EllipseNorm {
            q: sym,
            chol_u: u,
            chol_u_inv: u_inv,
        })
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.q
    }

    pub fn value(&self, v: &DVector<f64>) -> f64 {
        (&self.chol_u * v).norm()
    }

    /// Operator norm via the similarity U M U⁻¹, which is exact.
    pub fn operator(&self, m: &DMatrix<f64>) -> f64 {
        op_norm(&(&self.chol_u * m * &self.chol_u_inv))
    }

    /// The similarity itself, for callers that need a maximizing direction:
    /// a Euclidean maximizer w of U M U⁻¹ pulls back to the maximizer U⁻¹ w.
    pub(crate) fn conjugated(&self, m: &DMatrix<f64>) -> DMatrix<f64> {
        &self.chol_u * m * &self.chol_u_inv
    }

    pub(crate) fn pullback(&self, v: &DVector<f64>) -> DVector<f64> {
        &self.chol_u_inv * v
    }
}

impl NormField {
    pub fn euclidean() -> Self {
        NormField::Euclidean
    }

    pub fn max() -> Self {
        NormField::Max
    }

    pub fn polytope(vertices: &[DVector<f64>]) -> Result<Self> {
        Ok(NormField::Polytope(PolytopeNorm::new(vertices)?))
    }

    pub fn ellipse(q: DMatrix<f64>) -> Result<Self> {
        Ok(NormField::Ellipse(EllipseNorm::new(q)?))
    }

    pub fn barabanov(cocycle: Cocycle, beta: f64, depth: usize) -> Self {
        NormField::Barabanov(BarabanovNorm {
            cocycle,
            beta,
            depth,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            NormField::Euclidean => "euclidean",
            NormField::Max => "max",
            NormField::Polytope(_) => "polytope",
            NormField::Ellipse(_) => "ellipse",
            NormField::Barabanov(_) => "barabanov",
        }
    }

    /// True when the norm does not depend on the base point.
    pub fn is_constant(&self) -> bool {
        !matches!(self, NormField::Barabanov(_))
    }

    /// Norm of a vector for the constant variants.
    pub fn constant_norm(&self, v: &DVector<f64>) -> Result<f64> {
        match self {
            NormField::Euclidean => Ok(v.norm()),
            NormField::Max => Ok(v.amax()),
            NormField::Polytope(p) => {
                if v.len() != 2 {
                    return Err(Error::DimensionMismatch(
                        "polytope norm expects a plane vector".into(),
                    ));
                }
                Ok(p.gauge(v))
            }
            NormField::Ellipse(e) => {
                if v.len() != e.q.nrows() {
                    return Err(Error::DimensionMismatch(format!(
                        "ellipse norm expects dimension {}",
                        e.q.nrows()
                    )));
                }
                Ok(e.value(v))
            }
            NormField::Barabanov(_) => Err(Error::PreconditionViolated(
                "candidate norm needs a base point; use evaluate".into(),
            )),
        }
    }

    /// Norm of a vector in the fiber over x.
    pub fn evaluate(&self, x: &Point, v: &DVector<f64>) -> Result<f64> {
        match self {
            NormField::Barabanov(b) => {
                crate::extremal::barabanov_eval(&b.cocycle, b.beta, x, v, b.depth)
            }
            _ => self.constant_norm(v),
        }
    }

    /// Operator norm of a matrix, exact per variant; constant variants only.
    pub fn operator_norm(&self, m: &DMatrix<f64>) -> Result<f64> {
        match self {
            NormField::Euclidean => Ok(op_norm(m)),
            NormField::Max => {
                // max absolute row sum
                Ok((0..m.nrows())
                    .map(|i| m.row(i).iter().map(|x| x.abs()).sum())
                    .fold(0.0f64, f64::max))
            }
            NormField::Polytope(p) => {
                if m.nrows() != 2 || m.ncols() != 2 {
                    return Err(Error::DimensionMismatch(
                        "polytope operator norm expects a 2x2 matrix".into(),
                    ));
                }
                // the gauge is maximized over the unit ball at a vertex
                Ok(p.vertices()
                    .iter()
                    .map(|v| p.gauge(&(m * v)))
                    .fold(0.0f64, f64::max))
            }
            NormField::Ellipse(e) => {
                if m.nrows() != e.q.nrows() || m.ncols() != e.q.nrows() {
                    return Err(Error::DimensionMismatch(
                        "ellipse operator norm dimension mismatch".into(),
                    ));
                }
                Ok(e.operator(m))
            }
            NormField::Barabanov(_) => Err(Error::PreconditionViolated(
                "operator norms are defined for the constant variants only".into(),
            )),
        }
    }
}
