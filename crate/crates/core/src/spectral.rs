//! Two-sided estimation of the top growth rate: norm bounds from exhaustive
//! word enumeration (upper), periodic-orbit spectral radii (lower), the
//! convergence table for the periodic approximations, Lyapunov spectra of
//! cycles with exterior-power cross-checks, polynomial growth fitting, and
//! an empirical Lipschitz-continuity diagnostic for the rate.
//!
//! The two bounds meet in the limit: averaged log norms decrease to the rate
//! by subadditivity, periodic exponents increase to it, so every (lower,
//! upper) pair at finite depth is a certified bracket.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::{
    check_irreducible_onestep, op_norm, Cocycle, CocycleGenerator, ENUMERATION_CAP,
};
use crate::error::{Error, Result};
use crate::norms::NormField;
use crate::subshift::{enumerate_periodic_words, symbols_string, PeriodicWord};

/// Hard cap on enumerated word length, on top of the leaf-count cap.
pub const WORD_LENGTH_CAP: usize = 24;

/// A certified two-sided estimate of the growth rate.
#[derive(Debug, Clone, Serialize)]
pub struct BetaBracket {
    pub lower: f64,
    pub upper: f64,
    /// period of the orbit achieving the lower bound
    pub n_lower: usize,
    /// word length achieving the upper bound
    pub n_upper: usize,
}

impl BetaBracket {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lower + self.upper)
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// A periodic orbit together with its top Lyapunov exponent.
#[derive(Debug, Clone)]
pub struct PeriodicExponent {
    pub word: PeriodicWord,
    pub exponent: f64,
}

/// One row of the periodic-approximation convergence table.
#[derive(Debug, Clone, Serialize)]
pub struct BergerWangRow {
    pub n: usize,
    /// best periodic exponent over periods up to n (nondecreasing)
    pub beta_n: f64,
    /// reference upper bound minus beta_n
    pub gap: f64,
    pub witness: String,
}

/// Least-squares fit of the subexponential factor in the growth of word
/// norms: log(sup norm at n) - n*beta ~ degree*log(n) + log_constant.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    pub degree: f64,
    pub log_constant: f64,
    pub residual: f64,
}

/// Empirical sensitivity of e^beta to a perturbation of the generators.
#[derive(Debug, Clone, Serialize)]
pub struct LipschitzReport {
    pub exp_beta_gap: f64,
    pub sup_distance: f64,
    pub ratio: f64,
}

fn word_budget_gate(c: &Cocycle, n: usize) -> Result<()> {
    if n > WORD_LENGTH_CAP {
        return Err(Error::TooLarge(format!(
            "word length {n} exceeds the cap {WORD_LENGTH_CAP}"
        )));
    }
    let l = n + 2 * c.step_radius();
    let leaves = (c.base().alphabet_size() as f64).powi(l as i32);
    if !(leaves <= ENUMERATION_CAP) {
        return Err(Error::TooLarge(format!(
            "about {leaves:.2e} words of length {l} exceed the cap {ENUMERATION_CAP:.0e}"
        )));
    }
    Ok(())
}

/// Exhaustive maximum over admissible words: the word spans n steps plus the
/// window margin on both sides; `p` carries the product of completed steps.
/// Prunes with the submultiplicative bound ‖P‖·G^{remaining}, which can
/// never turn a non-maximal branch into the maximum.
#[allow(clippy::too_many_arguments)]
fn word_max_dfs(
    c: &Cocycle,
    norm: &NormField,
    n: usize,
    word: &mut Vec<u8>,
    p: DMatrix<f64>,
    applied: usize,
    g_pows: &[f64],
    best: &mut f64,
    witness: &mut Option<Vec<u8>>,
) -> Result<()> {
    let r = c.step_radius();
    let mut p = p;
    let mut applied = applied;
    while applied < n && word.len() > applied + 2 * r {
        let m = c.matrix_for_window(&word[applied..applied + 2 * r + 1])?;
        p = m * p;
        applied += 1;
    }
    if applied == n {
        let v = norm.operator_norm(&p)?;
        if v > *best {
            *best = v;
            *witness = Some(word.clone());
        }
        return Ok(());
    }
    if norm.operator_norm(&p)? * g_pows[n - applied] <= *best {
        return Ok(());
    }
    let last = *word.last().unwrap();
    let succ: Vec<u8> = c.base().successors(last).collect();
    for s in succ {
        word.push(s);
        word_max_dfs(c, norm, n, word, p.clone(), applied, g_pows, best, witness)?;
        word.pop();
    }
    Ok(())
}

/// Maximum of the operator norm of n-step products over all admissible
/// words, with the lexicographically first maximizing word (length n plus
/// the window margins). Enumeration is split by leading symbol and reduced
/// by max, so the result does not depend on thread scheduling.
pub fn sup_product_norm(c: &Cocycle, n: usize, norm: &NormField) -> Result<(f64, Vec<u8>)> {
    if n == 0 {
        return Err(Error::PreconditionViolated("need at least one step".into()));
    }
    if !norm.is_constant() {
        return Err(Error::PreconditionViolated(
            "word bounds need a constant norm".into(),
        ));
    }
    word_budget_gate(c, n)?;
    let mut g = 0.0f64;
    for (_, m) in c.windows() {
        g = g.max(norm.operator_norm(m)?);
    }
    let g_pows: Vec<f64> = (0..=n).map(|k| g.powi(k as i32)).collect();
    let d = c.dimension();
    let firsts: Vec<u8> = (0..c.base().alphabet_size() as u8).collect();
    let branches: Vec<Result<(f64, Option<Vec<u8>>)>> = firsts
        .par_iter()
        .map(|&a| {
            let mut word = vec![a];
            let mut best = 0.0f64;
            let mut witness = None;
            word_max_dfs(
                c,
                norm,
                n,
                &mut word,
                DMatrix::identity(d, d),
                0,
                &g_pows,
                &mut best,
                &mut witness,
            )?;
            Ok((best, witness))
        })
        .collect();
    let mut best = 0.0f64;
    let mut witness: Option<Vec<u8>> = None;
    for b in branches {
        let (v, w) = b?;
        if v > best || witness.is_none() {
            best = v;
            witness = w.or(witness);
        }
    }
    let witness = witness.ok_or_else(|| Error::Empty("no admissible word".into()))?;
    Ok((best, witness))
}

/// Averaged log of the worst n-step word norm: an upper bound for the
/// growth rate at every single n, by subadditivity of the sequence
/// n ↦ log sup ‖Φⁿ‖.
pub fn beta_upper(c: &Cocycle, n: usize, norm: &NormField) -> Result<f64> {
    let (v, _) = sup_product_norm(c, n, norm)?;
    Ok(v.ln() / n as f64)
}

fn spectral_radius(m: &DMatrix<f64>) -> f64 {
    m.complex_eigenvalues()
        .iter()
        .map(|e| e.norm())
        .fold(0.0f64, f64::max)
}

/// Top Lyapunov exponent of the periodic orbit of `w`: the averaged log
/// spectral radius of the cycle product.
pub fn periodic_exponent(c: &Cocycle, w: &PeriodicWord) -> Result<f64> {
    let prod = c.product_along_cycle(w.symbols())?;
    Ok(spectral_radius(&prod).ln() / w.period() as f64)
}

/// Best lower bound for the growth rate from periodic orbits of period at
/// most `max_period`, with the achieving orbit. Always a rigorous lower
/// bound; converges to the rate as the period grows.
pub fn beta_lower_periodic(c: &Cocycle, max_period: usize) -> Result<(f64, PeriodicExponent)> {
    if max_period == 0 {
        return Err(Error::PreconditionViolated("need period at least 1".into()));
    }
    word_budget_gate(c, max_period)?;
    let words = enumerate_periodic_words(c.base(), max_period);
    if words.is_empty() {
        return Err(Error::Empty(
            "subshift has no periodic orbit in range".into(),
        ));
    }
    let exps: Vec<Result<f64>> = words.par_iter().map(|w| periodic_exponent(c, w)).collect();
    let mut best: Option<(f64, usize)> = None;
    for (i, e) in exps.into_iter().enumerate() {
        let e = e?;
        if best.is_none_or(|(b, _)| e > b) {
            best = Some((e, i));
        }
    }
    let (exponent, i) = best.unwrap();
    Ok((
        exponent,
        PeriodicExponent {
            word: words[i].clone(),
            exponent,
        },
    ))
}

fn upper_length_grid(c: &Cocycle, budget: usize) -> Vec<usize> {
    let n_af = affordable_length(c, budget);
    let mut grid: Vec<usize> = Vec::new();
    let mut k = 1usize;
    while k < n_af {
        grid.push(k);
        k *= 2;
    }
    grid.push(n_af);
    grid
}

fn affordable_length(c: &Cocycle, budget: usize) -> usize {
    let na = c.base().alphabet_size() as f64;
    let cap = (budget as f64).min(ENUMERATION_CAP);
    let mut n = 1usize;
    while n < WORD_LENGTH_CAP && na.powi((n + 1 + 2 * c.step_radius()) as i32) <= cap {
        n += 1;
    }
    n
}

/// Bracket the growth rate within a leaf budget: the lower bound from
/// periodic orbits up to the affordable period, the upper bound minimized
/// over word lengths (powers of two up to the affordable length) and over
/// the Euclidean and max reference norms plus any caller-supplied constant
/// norms. The midpoint is the point estimate; the bracket is the certificate.
pub fn estimate_beta_with(
    c: &Cocycle,
    budget: usize,
    extra_norms: &[NormField],
) -> Result<BetaBracket> {
    if extra_norms.iter().any(|n| !n.is_constant()) {
        return Err(Error::PreconditionViolated(
            "upper bounds need constant norms".into(),
        ));
    }
    let mut norms: Vec<NormField> = vec![NormField::euclidean(), NormField::max()];
    norms.extend(extra_norms.iter().cloned());
    let mut upper = f64::INFINITY;
    let mut n_upper = 1usize;
    for n in upper_length_grid(c, budget) {
        for norm in &norms {
            let b = beta_upper(c, n, norm)?;
            if b < upper {
                upper = b;
                n_upper = n;
            }
        }
    }
    let (lower, wit) = beta_lower_periodic(c, affordable_length(c, budget))?;
    Ok(BetaBracket {
        lower,
        upper,
        n_lower: wit.word.period(),
        n_upper,
    })
}

/// [`estimate_beta_with`] with only the built-in reference norms.
pub fn estimate_beta(c: &Cocycle, budget: usize) -> Result<BetaBracket> {
    estimate_beta_with(c, budget, &[])
}

/// Convergence table of the periodic lower bounds against one fixed upper
/// bound: row n holds the best exponent over periods ≤ n, so the column is
/// nondecreasing and the gap column nonincreasing.
pub fn berger_wang_table(c: &Cocycle, max_period: usize) -> Result<Vec<BergerWangRow>> {
    if max_period == 0 {
        return Err(Error::PreconditionViolated("need period at least 1".into()));
    }
    word_budget_gate(c, max_period)?;
    let words = enumerate_periodic_words(c.base(), max_period);
    let exps: Vec<Result<f64>> = words.par_iter().map(|w| periodic_exponent(c, w)).collect();
    let mut by_period: Vec<Option<(f64, usize)>> = vec![None; max_period + 1];
    for (i, e) in exps.into_iter().enumerate() {
        let e = e?;
        let p = words[i].period();
        if by_period[p].is_none_or(|(b, _)| e > b) {
            by_period[p] = Some((e, i));
        }
    }
    let upper = {
        let mut u = f64::INFINITY;
        let na = c.base().alphabet_size() as f64;
        for n in [1usize, 2, 4, 8, 16] {
            if na.powi((n + 2 * c.step_radius()) as i32) > 1e6 {
                break;
            }
            for norm in [NormField::euclidean(), NormField::max()] {
                u = u.min(beta_upper(c, n, &norm)?);
            }
        }
        u
    };
    let mut rows = Vec::new();
    let mut running: Option<(f64, usize)> = None;
    for (n, slot) in by_period.iter().enumerate().skip(1) {
        if let Some((e, i)) = *slot {
            if running.is_none_or(|(b, _)| e > b) {
                running = Some((e, i));
            }
        }
        if let Some((beta_n, i)) = running {
            rows.push(BergerWangRow {
                n,
                beta_n,
                gap: upper - beta_n,
                witness: symbols_string(words[i].symbols()),
            });
        }
    }
    Ok(rows)
}

/// All d Lyapunov exponents of a periodic orbit, sorted decreasing: the
/// averaged logs of the eigenvalue moduli of the cycle product.
pub fn lyapunov_spectrum_periodic(c: &Cocycle, w: &PeriodicWord) -> Result<Vec<f64>> {
    let prod = c.product_along_cycle(w.symbols())?;
    let k = w.period() as f64;
    let mut chis: Vec<f64> = prod
        .complex_eigenvalues()
        .iter()
        .map(|e| e.norm().ln() / k)
        .collect();
    chis.sort_by(|a, b| b.partial_cmp(a).unwrap());
    Ok(chis)
}

/// Fit of the subexponential factor: regress log(sup ‖Φⁿ‖) − nβ on log n.
/// Degree near 0 means relative product boundedness at the given rate; a
/// constant Jordan block shows degree near 1.
pub fn polynomial_growth_fit(c: &Cocycle, beta: f64, n_max: usize) -> Result<GrowthFit> {
    if n_max < 2 {
        return Err(Error::PreconditionViolated(
            "need at least two lengths to fit".into(),
        ));
    }
    word_budget_gate(c, n_max)?;
    let euclid = NormField::euclidean();
    let mut xs = Vec::with_capacity(n_max);
    let mut ys = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let (v, _) = sup_product_norm(c, n, &euclid)?;
        xs.push((n as f64).ln());
        ys.push(v.ln() - n as f64 * beta);
    }
    let len = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / len;
    let my = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let degree = sxy / sxx;
    let log_constant = my - degree * mx;
    let residual = (xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let e = y - (log_constant + degree * x);
            e * e
        })
        .sum::<f64>()
        / len)
        .sqrt();
    Ok(GrowthFit {
        degree,
        log_constant,
        residual,
    })
}

/// Empirical Lipschitz diagnostic for the rate: compares midpoint estimates
/// of two cocycles over the same base against their sup distance. The gap
/// is measured between e^beta values, matching the scale on which the rate
/// is locally Lipschitz in the generators.
pub fn lipschitz_beta_test(c1: &Cocycle, c2: &Cocycle, budget: usize) -> Result<LipschitzReport> {
    if c1.base() != c2.base() {
        return Err(Error::PreconditionViolated(
            "the cocycles live over different subshifts".into(),
        ));
    }
    if c1.dimension() != c2.dimension() || c1.step_radius() != c2.step_radius() {
        return Err(Error::DimensionMismatch(
            "the cocycles have different fiber shapes".into(),
        ));
    }
    for c in [c1, c2] {
        if !check_irreducible_onestep(&c.one_step_matrices()?)? {
            return Err(Error::PreconditionViolated(
                "the diagnostic needs irreducible generators".into(),
            ));
        }
    }
    let b1 = estimate_beta(c1, budget)?;
    let b2 = estimate_beta(c2, budget)?;
    let exp_beta_gap = (b1.midpoint().exp() - b2.midpoint().exp()).abs();
    let mut sup_distance = 0.0f64;
    for (w, m) in c1.windows() {
        sup_distance = sup_distance.max(op_norm(&(m - c2.matrix_for_window(w)?)));
    }
    let ratio = if sup_distance == 0.0 {
        0.0
    } else {
        exp_beta_gap / sup_distance
    };
    Ok(LipschitzReport {
        exp_beta_gap,
        sup_distance,
        ratio,
    })
}
