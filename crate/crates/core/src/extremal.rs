//! Extremal norm construction and verification.
//!
//! The central evaluator truncates the limit formula for the canonical
//! maximizing norm: at a point x and fiber vector u it takes the largest
//! rescaled image norm over all admissible forward continuations of x's
//! past, with depths drawn from the upper half of the budget so that
//! oscillating maxima settle. Around it sit an extremality checker against
//! a stated growth rate, a planar value iteration producing constant
//! candidate norms, a calibrated-continuation diagnostic, and the loop
//! obstruction that rules out smooth (ellipsoidal) extremal norms for the
//! quarter-rotation/shear pair.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cocycle::{
    check_irreducible_onestep, op_norm, try_inverse, Cocycle, CocycleGenerator, ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::holonomy::loop_holonomy;
use crate::norms::NormField;
use crate::subshift::{point_through, symbols_string, Point, Sft};

/// Outcome of testing a norm against a claimed growth rate.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalityReport {
    /// sup over one-step contexts and directions of the log operator norm
    pub sup_log_operator_norm: f64,
    pub beta_used: f64,
    /// sup_log_operator_norm - beta_used; nonpositive within tolerance
    /// means the norm certifies the rate
    pub slack: f64,
    pub worst_window: String,
    pub worst_direction: Vec<f64>,
    pub extremal: bool,
    pub tolerance: f64,
}

fn symbol_at(x: &Point, chosen: &[u8], j: i64) -> u8 {
    if j <= 0 {
        x.symbol(j)
    } else {
        chosen[(j - 1) as usize]
    }
}

fn window_matrix<'a>(
    c: &'a Cocycle,
    x: &Point,
    chosen: &[u8],
    center: i64,
) -> Result<&'a DMatrix<f64>> {
    let r = c.step_radius() as i64;
    let w: Vec<u8> = (center - r..=center + r)
        .map(|j| symbol_at(x, chosen, j))
        .collect();
    c.matrix_for_window(&w)
}

/// Depth-first sweep over all admissible forward continuations of x's past.
/// At each continuation the carried matrix is the product of the first n
/// generator factors times the unstable transport from x to the continued
/// point (which stabilizes after `step_radius` backward steps, exactly, for
/// the locally constant generators used here). The visitor sees every depth
/// n in [half, n_max].
fn continuation_sweep(
    c: &Cocycle,
    x: &Point,
    half: usize,
    n_max: usize,
    visitor: &mut dyn FnMut(usize, &DMatrix<f64>),
) -> Result<()> {
    let r = c.step_radius();
    let k_max = n_max - 1 + r;
    let trigger = r.saturating_sub(1);

    #[allow(clippy::too_many_arguments)]
    fn rec(
        c: &Cocycle,
        x: &Point,
        chosen: &mut Vec<u8>,
        mut transported: Option<DMatrix<f64>>,
        mut n: usize,
        half: usize,
        n_max: usize,
        k_max: usize,
        trigger: usize,
        visitor: &mut dyn FnMut(usize, &DMatrix<f64>),
    ) -> Result<()> {
        let r = c.step_radius();
        let d = c.dimension();
        let k = chosen.len();
        if transported.is_none() && k == trigger {
            if r == 0 {
                transported = Some(DMatrix::identity(d, d));
            } else {
                // transport from x to the continued point: the backward
                // windows at centers -1..-r are the only ones that differ
                let mut along_y = DMatrix::identity(d, d);
                let mut along_x = DMatrix::identity(d, d);
                for center in 1..=r as i64 {
                    along_y = &along_y * window_matrix(c, x, chosen, -center)?;
                    let rr = r as i64;
                    let w: Vec<u8> = (-center - rr..=-center + rr).map(|j| x.symbol(j)).collect();
                    along_x = &along_x * c.matrix_for_window(&w)?;
                }
                transported = Some(along_y * try_inverse(&along_x)?);
            }
        }
        if let Some(p) = transported.as_mut() {
            while n < n_max && n + r <= k {
                let f = window_matrix(c, x, chosen, n as i64)?;
                *p = f * &*p;
                n += 1;
                if n >= half {
                    visitor(n, p);
                }
            }
        }
        if k == k_max {
            return Ok(());
        }
        let last = if k == 0 { x.symbol(0) } else { chosen[k - 1] };
        let succ: Vec<u8> = c.base().successors(last).collect();
        for s in succ {
            chosen.push(s);
            rec(
                c,
                x,
                chosen,
                transported.clone(),
                n,
                half,
                n_max,
                k_max,
                trigger,
                visitor,
            )?;
            chosen.pop();
        }
        Ok(())
    }

    rec(
        c,
        x,
        &mut Vec::new(),
        None,
        0,
        half,
        n_max,
        k_max,
        trigger,
        visitor,
    )
}

fn bunching_gate(c: &Cocycle) -> Result<()> {
    let report = c.fiber_bunching_check(1.0)?;
    if !report.fiber_bunched() {
        return Err(Error::NotBunched(format!(
            "log bolicity {:.4} is not below the contraction rate {:.4}",
            report.max_log_bolicity, report.threshold
        )));
    }
    Ok(())
}

fn enumeration_gate(c: &Cocycle, n_max: usize) -> Result<()> {
    let leaves = (c.base().alphabet_size() as f64).powi(n_max as i32);
    if !(leaves <= ENUMERATION_CAP) {
        return Err(Error::TooLarge(format!(
            "about {leaves:.2e} continuations at depth {n_max} exceed the cap {ENUMERATION_CAP:.0e}"
        )));
    }
    Ok(())
}

/// Truncated limit-formula value of the canonical maximizing norm at (x, u):
/// max over depths n in [n_max/2, n_max] and admissible continuations y of
/// x's past of e^{-beta n} ‖Φⁿ_y ĥ(u)‖, with ĥ the unstable transport from
/// x to y. Requires fiber bunching at Hölder exponent 1.
pub fn barabanov_eval(
    c: &Cocycle,
    beta: f64,
    x: &Point,
    u: &DVector<f64>,
    n_max: usize,
) -> Result<f64> {
    if u.len() != c.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "vector has length {}, cocycle dimension is {}",
            u.len(),
            c.dimension()
        )));
    }
    if n_max == 0 {
        return Err(Error::PreconditionViolated(
            "depth must be at least 1".into(),
        ));
    }
    bunching_gate(c)?;
    enumeration_gate(c, n_max)?;
    let half = (n_max / 2).max(1);
    let mut best = 0.0f64;
    continuation_sweep(c, x, half, n_max, &mut |n, p| {
        let value = (-beta * n as f64).exp() * (p * u).norm();
        best = best.max(value);
    })?;
    Ok(best)
}

/// The same evaluator with the continuation sweep folded into a maximal set
/// of quadratic forms: value(v) = sqrt(max_j vᵀ Q_j v). Dropping a form
/// dominated by another in the semidefinite order never changes the max, so
/// the compiled evaluator is exact and cheap to query on many directions.
pub(crate) struct CompiledBarabanov {
    quadratics: Vec<DMatrix<f64>>,
}

fn is_psd(m: &DMatrix<f64>) -> bool {
    let d = m.nrows();
    let scale = m.amax() + 1.0;
    let tol = 1e-12 * scale;
    match d {
        1 => m[(0, 0)] >= -tol,
        2 => {
            m[(0, 0)] >= -tol
                && m[(1, 1)] >= -tol
                && m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)] >= -tol * scale
        }
        _ => m
            .clone()
            .symmetric_eigen()
            .eigenvalues
            .iter()
            .all(|&e| e >= -tol),
    }
}

impl CompiledBarabanov {
    pub(crate) fn compile(c: &Cocycle, beta: f64, x: &Point, n_max: usize) -> Result<Self> {
        bunching_gate(c)?;
        enumeration_gate(c, n_max)?;
        let half = (n_max / 2).max(1);
        let mut raw: Vec<DMatrix<f64>> = Vec::new();
        continuation_sweep(c, x, half, n_max, &mut |n, p| {
            let q = (-2.0 * beta * n as f64).exp() * p.transpose() * p;
            raw.push(q);
        })?;
        raw.sort_by(|a, b| b.trace().partial_cmp(&a.trace()).unwrap());
        let mut kept: Vec<DMatrix<f64>> = Vec::new();
        for q in raw {
            if kept.iter().any(|k| is_psd(&(k - &q))) {
                continue;
            }
            kept.retain(|k| !is_psd(&(&q - k)));
            kept.push(q);
        }
        Ok(CompiledBarabanov { quadratics: kept })
    }

    pub(crate) fn value(&self, v: &DVector<f64>) -> f64 {
        self.quadratics
            .iter()
            .map(|q| v.dot(&(q * v)))
            .fold(0.0f64, f64::max)
            .max(0.0)
            .sqrt()
    }
}

fn unit_angle(theta: f64) -> DVector<f64> {
    DVector::from_column_slice(&[theta.cos(), theta.sin()])
}

fn top_right_singular_vector(m: &DMatrix<f64>) -> DVector<f64> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.unwrap();
    let top = svd
        .singular_values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    DVector::from_iterator(m.ncols(), vt.row(top).iter().copied())
}

fn constant_witness(norm: &NormField, m: &DMatrix<f64>) -> Result<DVector<f64>> {
    match norm {
        NormField::Euclidean => Ok(top_right_singular_vector(m)),
        NormField::Max => {
            let (row, _) = (0..m.nrows())
                .map(|i| (i, m.row(i).iter().map(|x| x.abs()).sum::<f64>()))
                .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            Ok(DVector::from_iterator(
                m.ncols(),
                m.row(row).iter().map(|&x| if x < 0.0 { -1.0 } else { 1.0 }),
            ))
        }
        NormField::Polytope(p) => {
            let verts = p.vertices();
            let best = verts
                .iter()
                .max_by(|a, b| p.gauge(&(m * *a)).partial_cmp(&p.gauge(&(m * *b))).unwrap())
                .unwrap();
            Ok(best.clone())
        }
        NormField::Ellipse(e) => {
            let w = top_right_singular_vector(&e.conjugated(m));
            Ok(e.pullback(&w))
        }
        NormField::Barabanov(_) => Err(Error::PreconditionViolated(
            "no constant witness for the point-dependent norm".into(),
        )),
    }
}

/// Tests whether a norm certifies the growth rate `beta`: computes the sup
/// over one-step contexts and fiber directions of the log operator norm and
/// compares with beta. Exact for the constant variants; the point-dependent
/// variant is evaluated on a direction grid with local refinement and only
/// supports one-step cocycles.
pub fn extremality_check(c: &Cocycle, norm: &NormField, beta: f64) -> Result<ExtremalityReport> {
    if norm.is_constant() {
        let tolerance = 1e-6;
        let mut sup = f64::NEG_INFINITY;
        let mut worst_window = String::new();
        let mut worst_dir = DVector::zeros(c.dimension());
        for (w, m) in c.windows() {
            let val = norm.operator_norm(m)?;
            let lv = val.ln();
            if lv > sup {
                sup = lv;
                worst_window = symbols_string(w);
                worst_dir = constant_witness(norm, m)?;
            }
        }
        let slack = sup - beta;
        return Ok(ExtremalityReport {
            sup_log_operator_norm: sup,
            beta_used: beta,
            slack,
            worst_window,
            worst_direction: worst_dir.iter().copied().collect(),
            extremal: slack <= tolerance,
            tolerance,
        });
    }
    let b = match norm {
        NormField::Barabanov(b) => b,
        _ => unreachable!(),
    };
    if c.step_radius() != 0 || b.cocycle.step_radius() != 0 {
        return Err(Error::PreconditionViolated(
            "the point-dependent norm check needs one-step cocycles".into(),
        ));
    }
    if c.dimension() != b.cocycle.dimension() {
        return Err(Error::DimensionMismatch(
            "norm and cocycle dimensions differ".into(),
        ));
    }
    let tolerance = 1e-3;
    let base = c.base();
    let d = c.dimension();
    let mut contexts: Vec<CompiledBarabanov> = Vec::new();
    for a in 0..base.alphabet_size() as u8 {
        let xa = point_through(base, a)?;
        contexts.push(CompiledBarabanov::compile(
            &b.cocycle, b.beta, &xa, b.depth,
        )?);
    }
    let grid = 10_000usize;
    let mut sup = f64::NEG_INFINITY;
    let mut worst_window = String::new();
    let mut worst_dir = DVector::zeros(d);
    let ratio_at = |a: usize, bsym: usize, v: &DVector<f64>| -> f64 {
        let m = c.matrix_for_window(&[a as u8]).expect("one-step window");
        let denom = contexts[a].value(v);
        let num = contexts[bsym].value(&(m * v));
        (num / denom).ln()
    };
    for a in 0..base.alphabet_size() {
        for bsym in 0..base.alphabet_size() {
            if !base.allows(a as u8, bsym as u8) {
                continue;
            }
            let mut local_best = f64::NEG_INFINITY;
            let mut local_dir = DVector::zeros(d);
            if d == 2 {
                let step = std::f64::consts::PI / grid as f64;
                let mut best_theta = 0.0;
                for k in 0..grid {
                    let theta = k as f64 * step;
                    let v = unit_angle(theta);
                    let lv = ratio_at(a, bsym, &v);
                    if lv > local_best {
                        local_best = lv;
                        best_theta = theta;
                        local_dir = v;
                    }
                }
                for k in 0..200 {
                    let theta = best_theta + step * ((k as f64 / 100.0) - 1.0);
                    let v = unit_angle(theta);
                    let lv = ratio_at(a, bsym, &v);
                    if lv > local_best {
                        local_best = lv;
                        local_dir = v;
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(0);
                for _ in 0..grid {
                    let v = DVector::from_fn(d, |_, _| rng.random_range(-1.0..1.0f64));
                    if v.norm() < 1e-6 {
                        continue;
                    }
                    let lv = ratio_at(a, bsym, &v);
                    if lv > local_best {
                        local_best = lv;
                        local_dir = v;
                    }
                }
            }
            if local_best > sup {
                sup = local_best;
                worst_window = symbols_string(&[a as u8, bsym as u8]);
                worst_dir = local_dir;
            }
        }
    }
    let slack = sup - beta;
    Ok(ExtremalityReport {
        sup_log_operator_norm: sup,
        beta_used: beta,
        slack,
        worst_window,
        worst_direction: worst_dir.iter().copied().collect(),
        extremal: slack <= tolerance,
        tolerance,
    })
}

/// Planar value iteration for a constant candidate norm: g ← e^{-beta}
/// maxᵢ g∘Aᵢ on a circle grid with linear interpolation and max
/// renormalization. Returns the polygonal norm read off the fixed point and
/// the sup residual of the defining equation on the grid. The residual is
/// required to keep decreasing; fifty stalled iterations with a
/// non-negligible residual signal a wrong rate or a reducible family.
pub fn constant_barabanov_iterate(
    matrices: &[DMatrix<f64>],
    beta: f64,
    grid: usize,
    iters: usize,
) -> Result<(NormField, f64)> {
    if matrices.is_empty() {
        return Err(Error::Empty("no matrices".into()));
    }
    if matrices.iter().any(|m| m.nrows() != 2 || m.ncols() != 2) {
        return Err(Error::PreconditionViolated(
            "the polygonal iteration is two-dimensional".into(),
        ));
    }
    if grid < 8 || !grid.is_multiple_of(2) || iters == 0 {
        return Err(Error::PreconditionViolated(
            "need an even grid of at least 8 directions and at least one iteration".into(),
        ));
    }
    if !check_irreducible_onestep(matrices)? {
        return Err(Error::PreconditionViolated(
            "the family shares an invariant line; the iteration would collapse".into(),
        ));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let step = two_pi / grid as f64;
    let angles: Vec<f64> = (0..grid).map(|k| k as f64 * step).collect();
    let units: Vec<DVector<f64>> = angles.iter().map(|&t| unit_angle(t)).collect();
    let mut g = vec![1.0f64; grid];
    let interp = |g: &[f64], phi: f64| -> f64 {
        let pos = phi.rem_euclid(two_pi) / step;
        let i0 = (pos.floor() as usize) % grid;
        let i1 = (i0 + 1) % grid;
        let frac = pos - pos.floor();
        g[i0] * (1.0 - frac) + g[i1] * frac
    };
    let scale = (-beta).exp();
    let mut residual = f64::INFINITY;
    let mut best_residual = f64::INFINITY;
    let mut stall = 0usize;
    for _ in 0..iters {
        let mut next: Vec<f64> = Vec::with_capacity(grid);
        for unit in &units {
            let mut m = f64::NEG_INFINITY;
            for a in matrices {
                let w = a * unit;
                let len = w.norm();
                let phi = w[1].atan2(w[0]);
                m = m.max(len * interp(&g, phi));
            }
            next.push(scale * m);
        }
        residual = next
            .iter()
            .zip(&g)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        if residual < best_residual * (1.0 - 1e-9) {
            best_residual = residual;
            stall = 0;
        } else {
            stall += 1;
            if stall >= 50 && best_residual > 1e-10 {
                return Err(Error::NotConverged(format!(
                    "residual stalled at {best_residual:.3e} for 50 iterations"
                )));
            }
        }
        let m = next.iter().fold(0.0f64, |acc, &v| acc.max(v));
        for (gk, nk) in g.iter_mut().zip(&next) {
            *gk = nk / m;
        }
        if residual <= 1e-13 {
            break;
        }
    }
    // build vertices from one half circle and mirror them exactly, so the
    // hull pass makes bitwise-identical keep/drop decisions on both sides
    // and the gauge constructor sees an exactly symmetric list
    let mut vertices: Vec<DVector<f64>> = (0..grid / 2).map(|k| &units[k] / g[k]).collect();
    for k in 0..grid / 2 {
        let v = -&vertices[k];
        vertices.push(v);
    }
    let hull = crate::norms::convex_hull_of(&vertices);
    let norm = NormField::polytope(&hull)?;
    Ok((norm, residual))
}

/// Random admissible walk from `start`, free for the first eight steps and
/// then greedy until it revisits a symbol, split into (transient, cycle).
fn closed_random_walk(
    sft: &Sft,
    start: u8,
    forward: bool,
    rng: &mut ChaCha8Rng,
) -> (Vec<u8>, Vec<u8>) {
    let mut seen = vec![usize::MAX; sft.alphabet_size()];
    let mut path = vec![start];
    seen[start as usize] = 0;
    loop {
        let last = *path.last().unwrap();
        let options: Vec<u8> = if forward {
            sft.successors(last).collect()
        } else {
            sft.predecessors(last).collect()
        };
        let s = if path.len() <= 8 {
            options[rng.random_range(0..options.len())]
        } else {
            options[0]
        };
        if seen[s as usize] != usize::MAX {
            let at = seen[s as usize];
            if at == 0 {
                // closes through the start itself: rotate it out
                let mut cycle = path[1..].to_vec();
                cycle.push(path[0]);
                return (Vec::new(), cycle);
            }
            return (path[1..at].to_vec(), path[at..].to_vec());
        }
        seen[s as usize] = path.len();
        path.push(s);
    }
}

fn random_point(sft: &Sft, rng: &mut ChaCha8Rng) -> Point {
    let start = rng.random_range(0..sft.alphabet_size()) as u8;
    let (fwd_t, fwd_c) = closed_random_walk(sft, start, true, rng);
    let (bwd_t, bwd_c) = closed_random_walk(sft, start, false, rng);
    let mut core: Vec<u8> = bwd_t.iter().rev().copied().collect();
    let origin = -(core.len() as i64);
    core.push(start);
    core.extend(fwd_t);
    let left: Vec<u8> = bwd_c.iter().rev().copied().collect();
    Point::new(sft, left, core, fwd_c, origin).expect("walks assemble admissible points")
}

/// For random (point, direction) samples, checks whether some one-symbol
/// admissible choice at the origin achieves the defining max within 1e-6 of
/// e^beta times the norm there. Returns the satisfied fraction. One-step
/// cocycles only.
pub fn calibration_check(
    c: &Cocycle,
    norm: &NormField,
    beta: f64,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    if c.step_radius() != 0 {
        return Err(Error::PreconditionViolated(
            "the one-symbol lookahead is defined for one-step cocycles".into(),
        ));
    }
    if samples == 0 {
        return Err(Error::PreconditionViolated(
            "need at least one sample".into(),
        ));
    }
    let base = c.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // contexts for the point-dependent variant, one per origin symbol
    let contexts: Option<Vec<Point>> = if norm.is_constant() {
        None
    } else {
        Some(
            (0..base.alphabet_size() as u8)
                .map(|s| point_through(base, s))
                .collect::<Result<_>>()?,
        )
    };
    let mut satisfied = 0usize;
    for _ in 0..samples {
        let x = random_point(base, &mut rng);
        let d = c.dimension();
        let u = loop {
            let v = DVector::from_fn(d, |_, _| rng.random_range(-1.0..1.0f64));
            if v.norm() > 1e-3 {
                break v;
            }
        };
        let nu = norm.evaluate(&x, &u)?;
        let prev = x.symbol(-1);
        let mut best = f64::NEG_INFINITY;
        for a in 0..base.alphabet_size() as u8 {
            if !base.allows(prev, a) {
                continue;
            }
            let img = c.matrix_for_window(&[a])? * &u;
            let val = match (&contexts, norm) {
                (None, _) => norm.constant_norm(&img)?,
                (Some(ctx), _) => {
                    let mut m = f64::NEG_INFINITY;
                    for b in 0..base.alphabet_size() as u8 {
                        if base.allows(a, b) {
                            m = m.max(norm.evaluate(&ctx[b as usize], &img)?);
                        }
                    }
                    m
                }
            };
            best = best.max(val);
        }
        if (best - beta.exp() * nu).abs() <= 1e-6 * (1.0 + best.abs()) {
            satisfied += 1;
        }
    }
    Ok(satisfied as f64 / samples as f64)
}

/// Loop obstruction to ellipsoidal extremal norms. Requires the matrix at
/// the fixed point to be a scaled rotation with non-real eigenvalues (the
/// only case where the argument applies: the induced unit ellipse at p must
/// be a disk, so the homoclinic loop must be a Euclidean contraction for an
/// ellipsoidal extremal norm to exist). Returns the Euclidean operator norm
/// of the stabilized loop and whether it exceeds 1; the loop has zero net
/// displacement, so no growth-rate rescaling enters.
pub fn riemannian_obstruction(c: &Cocycle, p: &Point, q: &Point) -> Result<(f64, bool)> {
    let m = c.matrix_at(p);
    let d = m.nrows();
    let gram = m.transpose() * &m;
    let s2 = gram.trace() / d as f64;
    let defect = op_norm(&(&gram - DMatrix::identity(d, d) * s2));
    if defect > 1e-9 * (1.0 + s2) {
        return Err(Error::NotRotationFixedPoint(
            "the fixed-point matrix is not a scaled orthogonal matrix".into(),
        ));
    }
    let eigs = m.complex_eigenvalues();
    if eigs.iter().any(|e| e.im.abs() <= 1e-9 * (1.0 + e.norm())) {
        return Err(Error::NotRotationFixedPoint(
            "the fixed-point matrix has a real eigenvalue".into(),
        ));
    }
    let loops: Vec<DMatrix<f64>> = (1..=5)
        .map(|k| loop_holonomy(c, p, q, k))
        .collect::<Result<_>>()?;
    let mut chosen = loops.last().unwrap().clone();
    for k in 0..loops.len() - 1 {
        if op_norm(&(&loops[k] - &loops[k + 1])) <= 1e-9 * (1.0 + op_norm(&loops[k])) {
            chosen = loops[k].clone();
            break;
        }
    }
    let loop_norm = op_norm(&chosen);
    Ok((loop_norm, loop_norm > 1.0 + 1e-9))
}

/// The perturbed family: the quarter rotation is replaced by the rotation
/// by pi/2 - pi/(4m), so that m of them compose with the shear into an
/// exact diagonal. Returns the pair, the diagonal product, and the growth
/// exponent of the periodic word 1·0^m. Requires m ≡ 2 (mod 4).
pub fn perturbed_example(m: usize) -> Result<(Vec<DMatrix<f64>>, DMatrix<f64>, f64)> {
    if m % 4 != 2 {
        return Err(Error::PreconditionViolated(format!(
            "m must be 2 mod 4, got {m}"
        )));
    }
    let alpha = std::f64::consts::FRAC_PI_2 - std::f64::consts::PI / (4.0 * m as f64);
    let (s, c) = (alpha.sin(), alpha.cos());
    let a0 = DMatrix::from_row_slice(2, 2, &[c, -s, s, c]);
    let a1 = DMatrix::from_row_slice(2, 2, &[0.8, -0.1, 0.8, 0.1]);
    let mut power = DMatrix::identity(2, 2);
    for _ in 0..m {
        power = &a0 * power;
    }
    let product = power * &a1;
    let exponent = (0.8 * 2.0f64.sqrt()).ln() / (m as f64 + 1.0);
    Ok((vec![a0, a1], product, exponent))
}
