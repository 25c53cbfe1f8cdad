//! Matrix cocycles over a subshift: locally constant generators given by a
//! window table, products along orbits, singular-value diagnostics,
//! fiber-bunching margins, irreducibility, and invariant-subspace splitting.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subshift::{parse_symbols, symbols_string, Point, Sft};

/// Condition-number guardrail: matrices beyond this are treated as singular.
pub const CONDITION_CAP: f64 = 1e12;

/// Leaf budget for exhaustive word enumerations.
pub const ENUMERATION_CAP: f64 = 1e8;

/// Singular values of a real matrix, sorted nonincreasing. The first entry is
/// the Euclidean operator norm.
pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Euclidean operator norm (largest singular value).
pub fn op_norm(m: &DMatrix<f64>) -> f64 {
    singular_values(m)[0]
}

/// Ratio of extreme singular values, `bol(M) = ||M|| ||M^{-1}|| = s_1/s_d`.
pub fn bolicity(m: &DMatrix<f64>) -> Result<f64> {
    let sv = singular_values(m);
    let (s1, sd) = (sv[0], sv[sv.len() - 1]);
    if !(sd > 0.0) || s1 / sd > CONDITION_CAP {
        return Err(Error::SingularMatrix(format!(
            "extreme singular values {s1:.3e}, {sd:.3e}"
        )));
    }
    Ok(s1 / sd)
}

/// Inverse with the condition-number guardrail.
pub fn try_inverse(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    bolicity(m)?;
    m.clone()
        .try_inverse()
        .ok_or_else(|| Error::SingularMatrix("inverse failed".into()))
}

fn lex_subsets(d: usize, p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    if p == 0 || p > d {
        return out;
    }
    loop {
        out.push(cur.clone());
        // advance to the next p-subset of {0..d-1} in lexicographic order
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + d - p {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// The induced action on p-vectors in the canonical wedge basis (lexicographic
/// p-subsets of coordinates): entry (I, J) is the minor det M[I, J]. Its
/// Euclidean norm is the product of the top p singular values of M.
pub fn exterior_power(m: &DMatrix<f64>, p: usize) -> Result<DMatrix<f64>> {
    let d = m.nrows();
    if m.ncols() != d {
        return Err(Error::DimensionMismatch("matrix must be square".into()));
    }
    if p == 0 || p > d {
        return Err(Error::PreconditionViolated(format!(
            "wedge degree p = {p} must satisfy 1 <= p <= {d}"
        )));
    }
    let subsets = lex_subsets(d, p);
    let n = subsets.len();
    let mut out = DMatrix::zeros(n, n);
    for (a, rows) in subsets.iter().enumerate() {
        for (b, cols) in subsets.iter().enumerate() {
            let minor = DMatrix::from_fn(p, p, |i, j| m[(rows[i], cols[j])]);
            out[(a, b)] = minor.determinant();
        }
    }
    Ok(out)
}

/// Fiber-bunching diagnostics for a Holder exponent `theta`.
///
/// Over a subshift both hyperbolicity exponents equal the metric parameter
/// lambda, so the bunching condition reads `log bol(F(x)) < theta * lambda`
/// pointwise. The strong form tightens the threshold to `theta * lambda / 3`
/// in dimension >= 3; in dimension <= 2 plain fiber-bunching already implies
/// the strong form.
#[derive(Debug, Clone, Serialize)]
pub struct BunchingReport {
    pub theta: f64,
    pub max_log_bolicity: f64,
    pub threshold: f64,
    pub margin: f64,
    pub strongly_bunched: bool,
}

impl BunchingReport {
    pub fn fiber_bunched(&self) -> bool {
        self.margin > 0.0
    }
}

/// Generator access shared by table-backed cocycles and analytically defined
/// ones: the one-step matrix as a function of the base point.
pub trait CocycleGenerator {
    fn dimension(&self) -> usize;
    fn base(&self) -> &Sft;
    fn matrix_at(&self, x: &Point) -> DMatrix<f64>;
}

/// The n-step product along the orbit of x: the identity at n = 0, the
/// forward composition `F(T^{n-1}x) ... F(Tx) F(x)` for n > 0, and the
/// inverse of the forward product based at `T^n x` for n < 0.
pub fn cocycle_product<G: CocycleGenerator + ?Sized>(
    c: &G,
    x: &Point,
    n: i64,
) -> Result<DMatrix<f64>> {
    let d = c.dimension();
    if n == 0 {
        return Ok(DMatrix::identity(d, d));
    }
    if n < 0 {
        let fwd = cocycle_product(c, &x.shift(n), -n)?;
        return try_inverse(&fwd);
    }
    let mut prod = DMatrix::identity(d, d);
    for i in 0..n {
        prod = c.matrix_at(&x.shift(i)) * prod;
    }
    Ok(prod)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CocycleRaw {
    d: usize,
    r: usize,
    entries: BTreeMap<String, Vec<Vec<f64>>>,
}

/// A locally constant cocycle: each step matrix depends on the symbol window
/// `x_{-r} ... x_r`, through a table covering exactly the admissible windows.
#[derive(Debug, Clone)]
pub struct Cocycle {
    base: Sft,
    dimension: usize,
    step_radius: usize,
    table: BTreeMap<Vec<u8>, DMatrix<f64>>,
}

impl Cocycle {
    /// Validate and build: the table must cover exactly the admissible
    /// (2r+1)-windows, and every matrix must be d-by-d, finite, and
    /// invertible within the condition cap.
    pub fn new(
        base: Sft,
        dimension: usize,
        step_radius: usize,
        table: BTreeMap<Vec<u8>, DMatrix<f64>>,
    ) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::PreconditionViolated("dimension must be >= 1".into()));
        }
        let wlen = 2 * step_radius + 1;
        let admissible = base.admissible_words(wlen);
        for w in &admissible {
            if !table.contains_key(w) {
                return Err(Error::PreconditionViolated(format!(
                    "table misses admissible window {}",
                    symbols_string(w)
                )));
            }
        }
        for (w, m) in &table {
            if w.len() != wlen || !base.is_admissible_word(w) {
                return Err(Error::PreconditionViolated(format!(
                    "table key {} is not an admissible {wlen}-window",
                    symbols_string(w)
                )));
            }
            if m.nrows() != dimension || m.ncols() != dimension {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for window {} is {}x{}, expected {dimension}x{dimension}",
                    symbols_string(w),
                    m.nrows(),
                    m.ncols()
                )));
            }
            if m.iter().any(|e| !e.is_finite()) {
                return Err(Error::PreconditionViolated(format!(
                    "matrix for window {} has non-finite entries",
                    symbols_string(w)
                )));
            }
            bolicity(m).map_err(|_| {
                Error::SingularMatrix(format!(
                    "matrix for window {} exceeds the condition cap",
                    symbols_string(w)
                ))
            })?;
        }
        Ok(Cocycle {
            base,
            dimension,
            step_radius,
            table,
        })
    }

    /// One-step cocycle: one matrix per symbol.
    pub fn one_step(base: Sft, matrices: Vec<DMatrix<f64>>) -> Result<Self> {
        if matrices.len() != base.alphabet_size() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for alphabet of size {}",
                matrices.len(),
                base.alphabet_size()
            )));
        }
        let d = matrices.first().map_or(0, |m| m.nrows());
        let table = matrices
            .into_iter()
            .enumerate()
            .map(|(s, m)| (vec![s as u8], m))
            .collect();
        Cocycle::new(base, d, 0, table)
    }

    /// Parse the serialized form against a base subshift.
    pub fn from_json(base: Sft, json: &serde_json::Value) -> Result<Self> {
        let raw: CocycleRaw = serde_json::from_value(json.clone())
            .map_err(|e| Error::PreconditionViolated(format!("cocycle config: {e}")))?;
        let mut table = BTreeMap::new();
        for (k, rows) in &raw.entries {
            let win = parse_symbols(k)?;
            let m = matrix_from_rows(rows)?;
            table.insert(win, m);
        }
        Cocycle::new(base, raw.d, raw.r, table)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: BTreeMap<String, Vec<Vec<f64>>> = self
            .table
            .iter()
            .map(|(w, m)| (symbols_string(w), matrix_to_rows(m)))
            .collect();
        serde_json::json!({
            "d": self.dimension,
            "r": self.step_radius,
            "entries": entries,
        })
    }

    pub fn step_radius(&self) -> usize {
        self.step_radius
    }

    /// The step matrix for an explicit symbol window `x_{-r} .. x_r`.
    pub fn matrix_for_window(&self, window: &[u8]) -> Result<&DMatrix<f64>> {
        self.table.get(window).ok_or_else(|| {
            Error::NotFound(format!(
                "window {} not in cocycle table",
                symbols_string(window)
            ))
        })
    }

    /// Iterate over (window, matrix) pairs in deterministic order.
    pub fn windows(&self) -> impl Iterator<Item = (&Vec<u8>, &DMatrix<f64>)> {
        self.table.iter()
    }

    /// The one-step matrices indexed by symbol; errors when r > 0.
    pub fn one_step_matrices(&self) -> Result<Vec<DMatrix<f64>>> {
        if self.step_radius != 0 {
            return Err(Error::PreconditionViolated(
                "cocycle has window radius > 0".into(),
            ));
        }
        Ok((0..self.base.alphabet_size() as u8)
            .map(|s| self.table[&vec![s]].clone())
            .collect())
    }

    /// Product along one period of a cyclic word, based at phase 0, reading
    /// windows cyclically. Agrees with `cocycle_product` at the periodic
    /// point of the word.
    pub fn product_along_cycle(&self, word: &[u8]) -> Result<DMatrix<f64>> {
        if word.is_empty() {
            return Err(Error::PreconditionViolated("empty word".into()));
        }
        if !self.base.is_cyclically_admissible(word) {
            return Err(Error::PreconditionViolated(format!(
                "word {} is not cyclically admissible",
                symbols_string(word)
            )));
        }
        let k = word.len() as i64;
        let r = self.step_radius as i64;
        let mut prod = DMatrix::identity(self.dimension, self.dimension);
        for i in 0..k {
            let win: Vec<u8> = (i - r..=i + r)
                .map(|j| word[j.rem_euclid(k) as usize])
                .collect();
            prod = self.matrix_for_window(&win)? * prod;
        }
        Ok(prod)
    }

    /// Pointwise bunching margins over all table windows.
    pub fn fiber_bunching_check(&self, theta: f64) -> Result<BunchingReport> {
        if !(theta > 0.0) {
            return Err(Error::PreconditionViolated(format!(
                "theta must be positive, got {theta}"
            )));
        }
        let mut max_log_bol = f64::NEG_INFINITY;
        for (_, m) in self.windows() {
            max_log_bol = max_log_bol.max(bolicity(m)?.ln());
        }
        let lambda = self.base.lambda();
        let threshold = theta * lambda;
        let margin = threshold - max_log_bol;
        let strongly_bunched = if self.dimension <= 2 {
            margin > 0.0
        } else {
            max_log_bol < theta * lambda / 3.0
        };
        Ok(BunchingReport {
            theta,
            max_log_bolicity: max_log_bol,
            threshold,
            margin,
            strongly_bunched,
        })
    }
}

impl CocycleGenerator for Cocycle {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn base(&self) -> &Sft {
        &self.base
    }

    fn matrix_at(&self, x: &Point) -> DMatrix<f64> {
        let r = self.step_radius as i64;
        let win = x.window(-r, r);
        self.table[&win].clone()
    }
}

/// Row-major nested arrays to a matrix.
pub fn matrix_from_rows(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let d = rows.len();
    if d == 0 || rows.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch(
            "matrix rows must form a nonempty square array".into(),
        ));
    }
    Ok(DMatrix::from_fn(d, d, |i, j| rows[i][j]))
}

/// Matrix to row-major nested arrays.
pub fn matrix_to_rows(m: &DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}

fn is_scalar(m: &DMatrix<f64>, tol: f64) -> bool {
    let d = m.nrows();
    let lam = m.trace() / d as f64;
    let mut diff = m.clone();
    for i in 0..d {
        diff[(i, i)] -= lam;
    }
    diff.norm() <= tol * (1.0 + m.norm())
}

/// Real eigendirections of a 2x2 matrix, unit vectors; None when the matrix
/// is (numerically) scalar so that every direction qualifies.
fn real_eigenlines_2x2(m: &DMatrix<f64>, tol: f64) -> Option<Vec<DVector<f64>>> {
    if is_scalar(m, tol) {
        return None;
    }
    let tr = m.trace();
    let det = m.determinant();
    let disc = tr * tr - 4.0 * det;
    let scale = 1.0 + m.norm();
    let mut lines = Vec::new();
    if disc >= -tol * scale * scale {
        let sq = disc.max(0.0).sqrt();
        let mut eigs = vec![(tr + sq) / 2.0];
        if sq > 0.0 {
            eigs.push((tr - sq) / 2.0);
        }
        for lam in eigs {
            // kernel direction of M - lam I from its larger row
            let a = m[(0, 0)] - lam;
            let b = m[(0, 1)];
            let c = m[(1, 0)];
            let d = m[(1, 1)] - lam;
            let v = if a.hypot(b) >= c.hypot(d) {
                DVector::from_vec(vec![-b, a])
            } else {
                DVector::from_vec(vec![-d, c])
            };
            if v.norm() > tol * scale {
                lines.push(v.normalize());
            }
        }
    }
    Some(lines)
}

fn line_invariant_under_all(v: &DVector<f64>, mats: &[DMatrix<f64>], tol: f64) -> bool {
    mats.iter().all(|m| {
        let w = m * v;
        let cross = (w[0] * v[1] - w[1] * v[0]).abs();
        cross <= tol * (1.0 + m.norm())
    })
}

/// Whether a finite family of invertible matrices admits no common invariant
/// proper nonzero real subspace.
///
/// Dimension 2 is decided exactly: a common invariant subspace is a common
/// real eigendirection, and candidates can only come from the (at most two)
/// real eigenlines of any non-scalar member. In dimension >= 3 the test is
/// the full-matrix-algebra span criterion, evaluated on products up to length
/// d^2 with rank-revealing orthogonalization; generating the full algebra is
/// sufficient for irreducibility, so the result errs conservative for exotic
/// proper subalgebras without invariant subspaces.
pub fn check_irreducible_onestep(matrices: &[DMatrix<f64>]) -> Result<bool> {
    if matrices.is_empty() {
        return Err(Error::Empty("no matrices given".into()));
    }
    let d = matrices[0].nrows();
    for m in matrices {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch(
                "matrices must share one square dimension".into(),
            ));
        }
        bolicity(m)?;
    }
    if d == 1 {
        return Ok(true);
    }
    if d == 2 {
        let tol = 1e-10;
        let mut candidates: Option<Vec<DVector<f64>>> = None;
        for m in matrices {
            if let Some(lines) = real_eigenlines_2x2(m, tol) {
                candidates = Some(lines);
                break;
            }
        }
        return Ok(match candidates {
            // every matrix is scalar: all lines are invariant
            None => false,
            Some(lines) => !lines
                .iter()
                .any(|v| line_invariant_under_all(v, matrices, tol)),
        });
    }
    let dim_full = d * d;
    let tol = 1e-9;
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let add = |m: &DMatrix<f64>, basis: &mut Vec<DVector<f64>>| -> bool {
        let mut v = DVector::from_iterator(dim_full, m.iter().copied());
        let n0 = v.norm();
        if n0 == 0.0 {
            return false;
        }
        v /= n0;
        for b in basis.iter() {
            let proj = b.dot(&v);
            v -= b * proj;
        }
        if v.norm() > tol {
            let vn = v.normalize();
            basis.push(vn);
            true
        } else {
            false
        }
    };
    let mut frontier: Vec<DMatrix<f64>> = vec![DMatrix::identity(d, d)];
    add(&frontier[0], &mut basis);
    for _ in 0..dim_full {
        let mut next = Vec::new();
        for f in &frontier {
            for g in matrices {
                let prod = g * f;
                if add(&prod, &mut basis) {
                    next.push(prod);
                }
            }
        }
        if basis.len() == dim_full || next.is_empty() {
            break;
        }
        frontier = next;
    }
    Ok(basis.len() == dim_full)
}

/// Split a family along an invariant subspace F: matrices of the restriction
/// to F in an orthonormal basis, and of the quotient action, realized as the
/// compression to the orthogonal complement. The second list is empty when F
/// is the whole space.
#[allow(clippy::type_complexity)]
pub fn split_by_invariant_subspace(
    matrices: &[DMatrix<f64>],
    subspace: &[DVector<f64>],
) -> Result<(Vec<DMatrix<f64>>, Vec<DMatrix<f64>>)> {
    if matrices.is_empty() {
        return Err(Error::Empty("no matrices given".into()));
    }
    let d = matrices[0].nrows();
    if subspace.is_empty() || subspace.len() > d {
        return Err(Error::PreconditionViolated(format!(
            "subspace basis size {} must be in 1..={d}",
            subspace.len()
        )));
    }
    if subspace.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch(
            "basis vectors must have length d".into(),
        ));
    }
    // orthonormalize F and extend to a full orthonormal frame
    let k = subspace.len();
    let mut frame: Vec<DVector<f64>> = Vec::new();
    for v in subspace {
        let mut w = v.clone();
        for b in &frame {
            let proj = b.dot(&w);
            w -= b * proj;
        }
        if w.norm() <= 1e-12 * (1.0 + v.norm()) {
            return Err(Error::Degenerate(
                "subspace basis is linearly dependent".into(),
            ));
        }
        frame.push(w.normalize());
    }
    for i in 0..d {
        let mut w = DVector::zeros(d);
        w[i] = 1.0;
        for b in &frame {
            let proj = b.dot(&w);
            w -= b * proj;
        }
        if w.norm() > 1e-8 {
            frame.push(w.normalize());
        }
        if frame.len() == d {
            break;
        }
    }
    if frame.len() != d {
        return Err(Error::Degenerate(
            "could not complete orthonormal frame".into(),
        ));
    }
    let basis_f = DMatrix::from_columns(&frame[..k]);
    let basis_q = (k < d).then(|| DMatrix::from_columns(&frame[k..]));
    let mut restricted = Vec::new();
    let mut quotient = Vec::new();
    for m in matrices {
        if m.nrows() != d || m.ncols() != d {
            return Err(Error::DimensionMismatch(
                "matrices must share one square dimension".into(),
            ));
        }
        let image = m * &basis_f;
        // invariance: the image of F must have no component outside F
        let outside = &image - &basis_f * (basis_f.transpose() * &image);
        if outside.norm() > 1e-10 * (1.0 + m.norm()) {
            return Err(Error::NotInvariant(format!(
                "subspace leaks by {:.3e} under a generator",
                outside.norm()
            )));
        }
        restricted.push(basis_f.transpose() * &image);
        if let Some(bq) = &basis_q {
            quotient.push(bq.transpose() * m * bq);
        }
    }
    Ok((restricted, quotient))
}

/// A 2-dimensional diagonal cocycle `diag(1, exp(-d(x, anchor)^theta))`
/// pinching the second coordinate by proximity to an anchor point. Locally
/// constant it is not; products are evaluated pointwise through the
/// generator interface.
#[derive(Debug, Clone)]
pub struct DistanceDiagonalCocycle {
    base: Sft,
    anchor: Point,
    theta: f64,
}

impl DistanceDiagonalCocycle {
    pub fn new(base: Sft, anchor: Point, theta: f64) -> Result<Self> {
        anchor.validate(&base)?;
        if !(theta > 0.0) {
            return Err(Error::PreconditionViolated(format!(
                "theta must be positive, got {theta}"
            )));
        }
        Ok(DistanceDiagonalCocycle {
            base,
            anchor,
            theta,
        })
    }

    pub fn anchor(&self) -> &Point {
        &self.anchor
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The decay weight `f(x) = d(x, anchor)^theta`.
    pub fn weight(&self, x: &Point) -> f64 {
        crate::subshift::distance(&self.base, x, &self.anchor).powf(self.theta)
    }
}

impl CocycleGenerator for DistanceDiagonalCocycle {
    fn dimension(&self) -> usize {
        2
    }

    fn base(&self) -> &Sft {
        &self.base
    }

    fn matrix_at(&self, x: &Point) -> DMatrix<f64> {
        DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, (-self.weight(x)).exp()]))
    }
}
