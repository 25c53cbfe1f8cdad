//! Where the growth is attained: periodic-orbit approximations of the
//! maximizing sets for the top p singular directions, empirical dominated
//! splitting detection with equivariant subspace estimates, calibrated
//! section checks, the cone slope of the pinched diagonal example, and the
//! largest inscribed ellipse of a symmetric polygon.

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};

use crate::cocycle::{
    cocycle_product, exterior_power, singular_values, try_inverse, CocycleGenerator,
    DistanceDiagonalCocycle, ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::grassmann::Subspace;
use crate::norms::{convex_hull_of, NormField};
use crate::spectral::WORD_LENGTH_CAP;
use crate::subshift::{enumerate_periodic_words, PeriodicWord, Point};

/// Periodic orbits whose top-p exponent sum comes within `tol` of the best
/// value seen up to the enumerated period: an outer approximation of the
/// support of the maximizing measures for that exponent sum.
#[derive(Debug, Clone)]
pub struct MatherApprox {
    pub index_p: usize,
    pub orbits: Vec<PeriodicWord>,
    pub tol: f64,
    /// best top-p exponent sum over the enumerated orbits
    pub beta_used: f64,
    /// for p >= 2, deviation of the best sum from the top rate of the p-th
    /// exterior power computed independently; None for p = 1
    pub wedge_gap: Option<f64>,
}

/// Outcome of the empirical splitting test: the singular value gap of
/// index p decays like `c - tau * n` on a log scale.
#[derive(Debug, Clone)]
pub struct SplittingReport {
    pub p: usize,
    pub tau: f64,
    pub log_constant: f64,
    pub r_squared: f64,
    /// estimated dominant p-dimensional space at each sample point
    pub subspaces: Vec<Subspace>,
}

/// One orbit's standing in the subordination comparison.
#[derive(Debug, Clone)]
pub struct SubordinationRow {
    pub orbit: String,
    pub chi_top: f64,
    pub attains_top: bool,
    pub in_approx: bool,
}

/// Whether every orbit of a maximizing-set approximation also attains the
/// top exponent: the higher-index sets sit inside the lower-index ones.
#[derive(Debug, Clone)]
pub struct SubordinationReport {
    pub beta_top: f64,
    pub rows: Vec<SubordinationRow>,
    pub contained: bool,
}

fn enumeration_gate(alphabet: usize, max_period: usize) -> Result<()> {
    if max_period > WORD_LENGTH_CAP {
        return Err(Error::TooLarge(format!(
            "period {max_period} exceeds the cap {WORD_LENGTH_CAP}"
        )));
    }
    let leaves = (alphabet as f64).powi(max_period as i32);
    if !(leaves <= ENUMERATION_CAP) {
        return Err(Error::TooLarge(format!(
            "about {leaves:.2e} words of period {max_period} exceed the cap {ENUMERATION_CAP:.0e}"
        )));
    }
    Ok(())
}

fn cycle_product<G: CocycleGenerator + ?Sized>(g: &G, w: &PeriodicWord) -> Result<DMatrix<f64>> {
    let x = w.point(g.base());
    cocycle_product(g, &x, w.period() as i64)
}

fn eigen_moduli_desc(m: &DMatrix<f64>) -> Vec<f64> {
    let mut mods: Vec<f64> = m.complex_eigenvalues().iter().map(|e| e.norm()).collect();
    mods.sort_by(|a, b| b.partial_cmp(a).unwrap());
    mods
}

fn orbit_spectrum<G: CocycleGenerator + ?Sized>(g: &G, w: &PeriodicWord) -> Result<Vec<f64>> {
    let prod = cycle_product(g, w)?;
    let k = w.period() as f64;
    Ok(eigen_moduli_desc(&prod)
        .into_iter()
        .map(|r| r.ln() / k)
        .collect())
}

/// Periodic orbits of period at most `max_period` whose top-p exponent sum
/// is within `tol` of the best one. For p >= 2 the best sum is checked
/// against the top rate of the p-th exterior power along the same orbits,
/// which must agree by the subset structure of exterior eigenvalues.
pub fn mather_set_approx<G: CocycleGenerator + ?Sized>(
    g: &G,
    p: usize,
    max_period: usize,
    tol: f64,
) -> Result<MatherApprox> {
    let d = g.dimension();
    if p == 0 || p > d {
        return Err(Error::PreconditionViolated(format!(
            "index p = {p} must satisfy 1 <= p <= {d}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    enumeration_gate(g.base().alphabet_size(), max_period)?;
    let words = enumerate_periodic_words(g.base(), max_period);
    if words.is_empty() {
        return Err(Error::Empty(
            "subshift has no periodic orbit in range".into(),
        ));
    }
    let mut sums = Vec::with_capacity(words.len());
    let mut wedge_best = f64::NEG_INFINITY;
    for w in &words {
        let prod = cycle_product(g, w)?;
        let chis: Vec<f64> = eigen_moduli_desc(&prod)
            .into_iter()
            .map(|r| r.ln() / w.period() as f64)
            .collect();
        sums.push(chis.iter().take(p).sum::<f64>());
        if p >= 2 {
            let wedge = exterior_power(&prod, p)?;
            let top = eigen_moduli_desc(&wedge)[0].ln() / w.period() as f64;
            wedge_best = wedge_best.max(top);
        }
    }
    let target = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let orbits: Vec<PeriodicWord> = words
        .into_iter()
        .zip(&sums)
        .filter(|(_, &s)| s >= target - tol)
        .map(|(w, _)| w)
        .collect();
    let wedge_gap = (p >= 2).then(|| (wedge_best - target).abs());
    Ok(MatherApprox {
        index_p: p,
        orbits,
        tol,
        beta_used: target,
        wedge_gap,
    })
}

fn top_left_singular_space(m: &DMatrix<f64>, p: usize) -> Result<Subspace> {
    let svd = m.clone().svd(true, false);
    let u = svd.u.unwrap();
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| {
        svd.singular_values[b]
            .partial_cmp(&svd.singular_values[a])
            .unwrap()
    });
    let cols: Vec<DVector<f64>> = order
        .iter()
        .take(p)
        .map(|&j| u.column(j).into_owned())
        .collect();
    Subspace::new(&cols)
}

/// The worst (largest) `log(sigma_{p+1}/sigma_p)` of the n-step products
/// over the samples, for n = 1, 2, ... up to `n_max`. The scan stops early
/// once the computed gap falls below floating point resolution (the
/// strongest evidence of domination a double can give).
pub fn singular_gap_series<G: CocycleGenerator + ?Sized>(
    g: &G,
    samples: &[Point],
    p: usize,
    n_max: usize,
) -> Result<Vec<(usize, f64)>> {
    let d = g.dimension();
    if p == 0 || p >= d {
        return Err(Error::PreconditionViolated(format!(
            "index p = {p} must satisfy 1 <= p < {d}"
        )));
    }
    if samples.is_empty() {
        return Err(Error::Empty("need at least one sample point".into()));
    }
    if n_max < 2 {
        return Err(Error::PreconditionViolated(
            "need at least two steps".into(),
        ));
    }
    if n_max > 500 {
        return Err(Error::TooLarge(format!("n_max = {n_max} exceeds 500")));
    }
    let mut series = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let mut worst = f64::NEG_INFINITY;
        for x in samples {
            let prod = cocycle_product(g, x, n as i64)?;
            let sv = singular_values(&prod);
            let ratio = sv[p] / sv[p - 1];
            if ratio.is_nan() {
                return Err(Error::Degenerate(format!(
                    "singular values vanished entirely at n = {n}"
                )));
            }
            worst = worst.max(ratio.ln());
        }
        // past this the computed gap is swamped by SVD rounding
        if worst < (1e-13f64).ln() {
            break;
        }
        series.push((n, worst));
    }
    Ok(series)
}

/// Looks for a dominated splitting of index p along the samples: fits the
/// worst log gap `log(sigma_{p+1}/sigma_p)` of the n-step products against
/// `c - tau * n`. A positive rate with a clean fit (r^2 at least 0.9, no
/// point more than 0.5 above the line) counts as detected; the report then
/// carries the dominant spaces estimated by pushing forward from the past.
/// Returns None when no such decay is visible.
///
/// At least five steps above floating point resolution are required.
pub fn dominated_splitting_test<G: CocycleGenerator + ?Sized>(
    g: &G,
    samples: &[Point],
    p: usize,
    n_max: usize,
) -> Result<Option<SplittingReport>> {
    let series = singular_gap_series(g, samples, p, n_max)?;
    if series.len() < 5 {
        return Err(Error::Degenerate(
            "the gap fell below floating point resolution before five steps were measured".into(),
        ));
    }
    let xs: Vec<f64> = series.iter().map(|&(n, _)| n as f64).collect();
    let ys: Vec<f64> = series.iter().map(|&(_, y)| y).collect();
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (intercept + slope * x);
            e * e
        })
        .sum();
    let ss_tot: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let r_squared = if ss_tot > 1e-30 {
        1.0 - ss_res / ss_tot
    } else {
        0.0
    };
    let tau = -slope;
    let clean = xs
        .iter()
        .zip(&ys)
        .all(|(x, y)| *y <= intercept + slope * x + 0.5);
    if !(tau > 0.0 && r_squared >= 0.9 && clean) {
        return Ok(None);
    }
    let depth = xs.len() as i64;
    let mut subspaces = Vec::with_capacity(samples.len());
    for x in samples {
        let from_past = cocycle_product(g, &x.shift(-depth), depth)?;
        subspaces.push(top_left_singular_space(&from_past, p)?);
    }
    Ok(Some(SplittingReport {
        p,
        tau,
        log_constant: intercept,
        r_squared,
        subspaces,
    }))
}

/// Verifies the calibration identity `norm(Phi^n u) = e^(beta n) norm(u)`
/// at every step within the window, to 1e-6 relative accuracy. The zero
/// vector passes vacuously.
pub fn calibrated_check<G: CocycleGenerator + ?Sized>(
    g: &G,
    norm: &NormField,
    beta: f64,
    x: &Point,
    u: &DVector<f64>,
    n_window: usize,
) -> Result<bool> {
    if u.len() != g.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} does not match fiber dimension {}",
            u.len(),
            g.dimension()
        )));
    }
    let base = norm.evaluate(x, u)?;
    for n in -(n_window as i64)..=(n_window as i64) {
        let v = cocycle_product(g, x, n)? * u;
        let val = norm.evaluate(&x.shift(n), &v)?;
        let target = (beta * n as f64).exp() * base;
        if (val - target).abs() > 1e-6 * (1.0 + target.abs()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Slope of the calibrated section of the pinched diagonal cocycle along
/// the unstable set of its anchor: `exp(sum of f(T^-n x) for n >= 1)`.
/// The anchor must be a fixed point and `x` must lie on its unstable set.
/// Once the backward orbit's disagreement window has moved past the origin,
/// consecutive weights shrink by exactly `e^(-theta lambda)`, so the series
/// is finished off by the exact geometric tail; `n_terms` must reach that
/// regime.
pub fn calibrated_cone_slope(
    ddc: &DistanceDiagonalCocycle,
    x: &Point,
    n_terms: usize,
) -> Result<f64> {
    let anchor = ddc.anchor();
    if anchor.shift(1) != *anchor {
        return Err(Error::PreconditionViolated(
            "the anchor must be a fixed point".into(),
        ));
    }
    if n_terms == 0 {
        return Err(Error::PreconditionViolated("need at least one term".into()));
    }
    let sync = x
        .unstable_sync_index(anchor)
        .ok_or_else(|| Error::NotOnUnstableSet("point does not extend the anchor's past".into()))?;
    // agreement holds at all indices <= sync; after n backward steps the
    // first disagreement sits at sync + 1 + n, in the strict future once
    // n >= -sync
    let needed = ((-sync).max(1)) as usize;
    if n_terms < needed {
        return Err(Error::PreconditionViolated(format!(
            "need at least {needed} terms before the tail turns geometric"
        )));
    }
    let mut partial = 0.0f64;
    let mut last = 0.0f64;
    for n in 1..=n_terms {
        last = ddc.weight(&x.shift(-(n as i64)));
        partial += last;
    }
    let q = (-(ddc.theta() * ddc.base().lambda())).exp();
    let tail = last * q / (1.0 - q);
    Ok((partial + tail).exp())
}

/// Subordination of the maximizing sets: every orbit kept by the index-p
/// approximation should also attain the top exponent within the same
/// tolerance. Extra orbits join the table for comparison without affecting
/// the verdict.
pub fn subordination_check<G: CocycleGenerator + ?Sized>(
    g: &G,
    mather: &MatherApprox,
    extra_orbits: &[PeriodicWord],
) -> Result<SubordinationReport> {
    if mather.orbits.is_empty() {
        return Err(Error::Empty("the approximation holds no orbit".into()));
    }
    let max_period = mather
        .orbits
        .iter()
        .chain(extra_orbits)
        .map(|w| w.period())
        .max()
        .unwrap();
    enumeration_gate(g.base().alphabet_size(), max_period)?;
    let mut beta_top = f64::NEG_INFINITY;
    for w in enumerate_periodic_words(g.base(), max_period) {
        beta_top = beta_top.max(orbit_spectrum(g, &w)?[0]);
    }
    let mut rows = Vec::new();
    for (list, in_approx) in [(&mather.orbits, true), (&extra_orbits.to_vec(), false)] {
        for w in list.iter() {
            let chi_top = orbit_spectrum(g, w)?[0];
            rows.push(SubordinationRow {
                orbit: crate::subshift::symbols_string(w.symbols()),
                chi_top,
                attains_top: (chi_top - beta_top).abs() <= mather.tol,
                in_approx,
            });
        }
    }
    let contained = rows.iter().filter(|r| r.in_approx).all(|r| r.attains_top);
    Ok(SubordinationReport {
        beta_top,
        rows,
        contained,
    })
}

fn quadratic_value(m: &DMatrix<f64>, u: &DVector<f64>) -> f64 {
    (u.transpose() * m * u)[(0, 0)]
}

/// Largest-area ellipse inscribed in the symmetric polygon spanned by
/// `vertices`, returned as the positive definite matrix Q of the ellipse
/// `{v : v^T Q v <= 1}`. Solved exactly through polar duality: the polar
/// polygon's minimum-volume enclosing ellipse is supported on at most three
/// vertex pairs in the plane, so scanning pairs and triples of contacts
/// finds the optimum.
pub fn john_ellipse(vertices: &[DVector<f64>]) -> Result<DMatrix<f64>> {
    if vertices.is_empty() {
        return Err(Error::Empty("polygon needs vertices".into()));
    }
    if vertices.iter().any(|v| v.len() != 2) {
        return Err(Error::DimensionMismatch(
            "inscribed ellipses are two-dimensional here".into(),
        ));
    }
    if vertices.iter().any(|v| !v.iter().all(|t| t.is_finite())) {
        return Err(Error::PreconditionViolated(
            "polygon vertices must be finite".into(),
        ));
    }
    let scale = vertices.iter().map(|v| v.amax()).fold(0.0f64, f64::max);
    if scale == 0.0 {
        return Err(Error::Degenerate("polygon collapses to the origin".into()));
    }
    for v in vertices {
        if !vertices.iter().any(|w| (w + v).amax() <= 1e-9 * scale) {
            return Err(Error::PreconditionViolated(
                "vertex list is not centrally symmetric".into(),
            ));
        }
    }
    let hull = convex_hull_of(vertices);
    if hull.len() < 3 {
        return Err(Error::Degenerate("polygon vertices are collinear".into()));
    }
    if hull.len() > 200 {
        return Err(Error::TooLarge(format!(
            "polygon with {} hull vertices exceeds the cap 200",
            hull.len()
        )));
    }
    // polar dual vertices: one per edge, solving <y, v_i> = <y, v_j> = 1
    let m = hull.len();
    let mut duals: Vec<DVector<f64>> = Vec::with_capacity(m);
    for i in 0..m {
        let a = &hull[i];
        let b = &hull[(i + 1) % m];
        let det = a[0] * b[1] - a[1] * b[0];
        if det.abs() <= 1e-14 * scale * scale {
            return Err(Error::Degenerate(
                "polygon has an edge aligned with the origin".into(),
            ));
        }
        duals.push(DVector::from_column_slice(&[
            (b[1] - a[1]) / det,
            (a[0] - b[0]) / det,
        ]));
    }
    let contains_all =
        |q: &DMatrix<f64>| -> bool { duals.iter().all(|u| quadratic_value(q, u) <= 1.0 + 1e-9) };
    let mut best: Option<(f64, DMatrix<f64>)> = None;
    let mut consider = |m_cand: DMatrix<f64>| {
        let det = m_cand[(0, 0)] * m_cand[(1, 1)] - m_cand[(0, 1)] * m_cand[(1, 0)];
        if m_cand[(0, 0)] <= 0.0 || det <= 0.0 {
            return;
        }
        if !contains_all(&m_cand) {
            return;
        }
        if best.as_ref().is_none_or(|(bd, _)| det > *bd) {
            best = Some((det, m_cand));
        }
    };
    // two contact pairs: the tightest ellipse through u_i, u_j maps them to
    // an orthonormal pair
    for i in 0..m {
        for j in (i + 1)..m {
            let b = DMatrix::from_columns(&[duals[i].clone(), duals[j].clone()]);
            if let Ok(binv) = try_inverse(&b) {
                consider(binv.transpose() * binv);
            }
        }
    }
    // three contact pairs: the membership equalities are linear in the
    // matrix entries (m11, m12, m22)
    for i in 0..m {
        for j in (i + 1)..m {
            for k in (j + 1)..m {
                let rows: Vec<[f64; 3]> = [i, j, k]
                    .iter()
                    .map(|&t| {
                        let u = &duals[t];
                        [u[0] * u[0], 2.0 * u[0] * u[1], u[1] * u[1]]
                    })
                    .collect();
                let sys = Matrix3::new(
                    rows[0][0], rows[0][1], rows[0][2], rows[1][0], rows[1][1], rows[1][2],
                    rows[2][0], rows[2][1], rows[2][2],
                );
                let rhs = Vector3::from_element(1.0);
                if let Some(sol) = sys.lu().solve(&rhs) {
                    consider(DMatrix::from_row_slice(
                        2,
                        2,
                        &[sol[0], sol[1], sol[1], sol[2]],
                    ));
                }
            }
        }
    }
    let (_, mvee) = best
        .ok_or_else(|| Error::NotConverged("no admissible contact configuration found".into()))?;
    try_inverse(&mvee)
}
