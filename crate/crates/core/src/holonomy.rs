//! Stable and unstable holonomies by the limit formula.
//!
//! For y on the stable set of x the maps `H_n = (product_y^n)^{-1} product_x^n`
//! converge; the limit identifies the fiber over x with the fiber over y and
//! intertwines the cocycle. Over a subshift the bundle is trivial, so no
//! transport maps appear. For locally constant cocycles the iteration
//! stabilizes exactly once the symbol windows along the two orbits coincide,
//! which yields an exact convergence certificate; otherwise certification is
//! numerical (tolerance plus sustained decrease).

use nalgebra::DMatrix;

use crate::cocycle::{op_norm, try_inverse, Cocycle, CocycleGenerator};
use crate::error::{Error, Result};
use crate::subshift::Point;

/// Default increment tolerance for holonomy iteration.
pub const DEFAULT_TOL: f64 = 1e-10;
/// Default iteration cap.
pub const DEFAULT_N_MAX: usize = 200;

/// Outcome of a holonomy iteration.
#[derive(Debug, Clone)]
pub struct HolonomyResult {
    pub matrix: DMatrix<f64>,
    pub iterations_used: usize,
    pub last_increment_norm: f64,
    /// True when the limit is reached exactly (window stabilization) or the
    /// tolerance was hit with nonincreasing increments over the final window.
    pub certified: bool,
    /// Increment norms per step, for convergence diagnostics.
    pub increments: Vec<f64>,
}

impl HolonomyResult {
    fn settled(d: usize) -> Self {
        HolonomyResult {
            matrix: DMatrix::identity(d, d),
            iterations_used: 0,
            last_increment_norm: 0.0,
            certified: true,
            increments: Vec::new(),
        }
    }
}

/// Direction of the holonomy iteration.
enum Side {
    Stable,
    Unstable,
}

fn holonomy_iterate(
    c: &Cocycle,
    x: &Point,
    y: &Point,
    tol: f64,
    n_max: usize,
    side: Side,
) -> Result<HolonomyResult> {
    let d = c.dimension();
    if x.same_sequence(y) {
        return Ok(HolonomyResult::settled(d));
    }
    let r = c.step_radius() as i64;
    // step index past which the two orbits read identical windows, so the
    // increment vanishes exactly (locally constant generator)
    let stabilize_at: usize = match side {
        Side::Stable => {
            let sync = y
                .stable_sync_index(x)
                .ok_or_else(|| Error::NotOnStableSet("right tails never agree".into()))?;
            (sync + r + 1).max(1) as usize
        }
        Side::Unstable => {
            let sync = y
                .unstable_sync_index(x)
                .ok_or_else(|| Error::NotOnUnstableSet("left tails never agree".into()))?;
            (r - sync).max(1) as usize
        }
    };
    // H_n = (product over y)^{-1} (product over x), built incrementally
    let mut h = DMatrix::identity(d, d);
    let mut fwd = DMatrix::identity(d, d); // product along x side
    let mut inv = DMatrix::identity(d, d); // inverse product along y side
    let mut increments: Vec<f64> = Vec::new();
    let mut growth_run = 0usize;
    for n in 0..n_max {
        let (fx, fy) = match side {
            Side::Stable => (
                c.matrix_at(&x.shift(n as i64)),
                c.matrix_at(&y.shift(n as i64)),
            ),
            Side::Unstable => (
                c.matrix_at(&x.shift(-(n as i64) - 1)),
                c.matrix_at(&y.shift(-(n as i64) - 1)),
            ),
        };
        let next = match side {
            Side::Stable => {
                fwd = &fx * &fwd;
                inv = &inv * try_inverse(&fy)?;
                &inv * &fwd
            }
            Side::Unstable => {
                // products based at T^{-n-1}: append the new factor innermost
                fwd = try_inverse(&fx)? * &fwd;
                inv = &inv * &fy;
                &inv * &fwd
            }
        };
        let delta = op_norm(&(&next - &h));
        h = next;
        if let Some(&prev) = increments.last() {
            if delta > prev * (1.0 + 1e-12) && delta > tol {
                growth_run += 1;
                if growth_run >= 5 {
                    return Err(Error::Diverging(format!(
                        "increments grew over 5 consecutive steps, last {delta:.3e}"
                    )));
                }
            } else {
                growth_run = 0;
            }
        }
        increments.push(delta);
        let iterations = n + 1;
        if iterations >= stabilize_at {
            // windows agree from here on: the increment is exactly zero and
            // the limit has been reached
            return Ok(HolonomyResult {
                matrix: h,
                iterations_used: iterations,
                last_increment_norm: delta,
                certified: true,
                increments,
            });
        }
        if delta < tol && increments.len() >= 5 {
            let tail = &increments[increments.len() - 5..];
            if tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)) {
                return Ok(HolonomyResult {
                    matrix: h,
                    iterations_used: iterations,
                    last_increment_norm: delta,
                    certified: true,
                    increments,
                });
            }
        }
    }
    let last = increments.last().copied().unwrap_or(0.0);
    Ok(HolonomyResult {
        matrix: h,
        iterations_used: n_max,
        last_increment_norm: last,
        certified: false,
        increments,
    })
}

/// Stable holonomy `H_{y<-x} = lim (product_y^n)^{-1} product_x^n`, mapping
/// the fiber over x to the fiber over y. Requires y on the stable set of x.
pub fn stable_holonomy(
    c: &Cocycle,
    x: &Point,
    y: &Point,
    tol: f64,
    n_max: usize,
) -> Result<HolonomyResult> {
    if !y.in_stable_set_of(x) {
        return Err(Error::NotOnStableSet(
            "target point's right tail never joins the base point's".into(),
        ));
    }
    holonomy_iterate(c, x, y, tol, n_max, Side::Stable)
}

/// Unstable holonomy, the time-reversed mirror: products run into the past.
/// Requires y on the unstable set of x.
pub fn unstable_holonomy(
    c: &Cocycle,
    x: &Point,
    y: &Point,
    tol: f64,
    n_max: usize,
) -> Result<HolonomyResult> {
    if !y.in_unstable_set_of(x) {
        return Err(Error::NotOnUnstableSet(
            "target point's left tail never joins the base point's".into(),
        ));
    }
    holonomy_iterate(c, x, y, tol, n_max, Side::Unstable)
}

/// Holonomy around the homoclinic loop of a fixed point p through q: climb
/// the unstable set from p to `T^{-k} q`, ride the orbit 2k steps to
/// `T^k q`, descend the stable set back to p, and discount the 2k orbit
/// steps by `product_p^{-k}` on both sides. For one-step cocycles with k
/// large enough that the shifted copies of q are local, the holonomies are
/// exact identities and the loop value is exact.
pub fn loop_holonomy(c: &Cocycle, p: &Point, q: &Point, k: usize) -> Result<DMatrix<f64>> {
    if !p.shift(1).same_sequence(p) {
        return Err(Error::PreconditionViolated(
            "p must be a fixed point".into(),
        ));
    }
    if k == 0 {
        return Err(Error::PreconditionViolated("k must be at least 1".into()));
    }
    if q.same_sequence(p) || !q.in_stable_set_of(p) || !q.in_unstable_set_of(p) {
        return Err(Error::NotHomoclinic(
            "q must lie on both the stable and unstable sets of p, and differ from p".into(),
        ));
    }
    let ki = k as i64;
    let p_back = crate::cocycle::cocycle_product(c, p, -ki)?;
    let q_fwd = q.shift(ki);
    let q_back = q.shift(-ki);
    let hs = stable_holonomy(c, &q_fwd, p, DEFAULT_TOL, DEFAULT_N_MAX)?;
    let hu = unstable_holonomy(c, p, &q_back, DEFAULT_TOL, DEFAULT_N_MAX)?;
    let middle = crate::cocycle::cocycle_product(c, &q_back, 2 * ki)?;
    Ok(&p_back * hs.matrix * middle * hu.matrix * &p_back)
}
