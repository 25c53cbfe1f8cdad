//! Subcommand implementations: each validates its flags, calls into the
//! library, and emits artifacts through the sink. Input problems become
//! `Failure::Validation` (exit 2); library errors pass through as
//! `Failure::Numerical` (exit 3).

use cocycle_lab::extremal::{
    constant_barabanov_iterate, extremality_check, perturbed_example, riemannian_obstruction,
};
use cocycle_lab::holonomy::{stable_holonomy, unstable_holonomy};
use cocycle_lab::mather::{dominated_splitting_test, singular_gap_series};
use cocycle_lab::spectral::{berger_wang_table, estimate_beta, lyapunov_spectrum_periodic};
use cocycle_lab::subshift::{closing_periodic_orbit, symbols_string};
use cocycle_lab::{mather, Cocycle, CocycleGenerator, NormField, PeriodicWord, Point, Sft};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::RunConfig;
use crate::report::{fmt_f, Csv, Format, Sink};
use crate::{
    BarabanovArgs, BetaArgs, CheckExtremalArgs, ClosingArgs, ExampleArgs, Failure, HolonomyArgs,
    MatherArgs, NormKind, Scenario, Side, SplittingArgs,
};

fn fmt_b(b: bool) -> String {
    u8::from(b).to_string()
}

fn matrix_json(m: &DMatrix<f64>) -> serde_json::Value {
    let rows: Vec<Vec<f64>> = m
        .row_iter()
        .map(|row| row.iter().copied().collect())
        .collect();
    json!(rows)
}

/// Parse `left|core|right|origin` into a point of the subshift.
fn parse_point(sft: &Sft, text: &str, what: &str) -> Result<Point, Failure> {
    let parts: Vec<&str> = text.split('|').collect();
    if parts.len() != 4 {
        return Err(Failure::Validation(format!(
            "{what}: expected left|core|right|origin, got {text:?}"
        )));
    }
    let origin: i64 = parts[3].trim().parse().map_err(|_| {
        Failure::Validation(format!(
            "{what}: origin must be an integer, got {:?}",
            parts[3]
        ))
    })?;
    Point::parse(sft, parts[0], parts[1], parts[2], origin)
        .map_err(|e| Failure::Validation(format!("{what}: {e}")))
}

fn positive_flag(value: Option<f64>, name: &str, fallback: f64) -> Result<f64, Failure> {
    match value {
        Some(t) if t > 0.0 && t.is_finite() => Ok(t),
        Some(t) => Err(Failure::Validation(format!(
            "{name} must be a positive real, got {t}"
        ))),
        None => Ok(fallback),
    }
}

/// Sample the unit sphere of a constant planar norm: one row per angle with
/// the boundary point of the unit ball in that direction and its image under
/// each one-step generator.
fn emit_ball(
    sink: &Sink,
    stem: &str,
    norm: &NormField,
    generators: &[DMatrix<f64>],
    resolution: usize,
) -> Result<(), Failure> {
    if resolution < 4 {
        return Err(Failure::Validation(format!(
            "--resolution must be at least 4, got {resolution}"
        )));
    }
    let mut rows = Vec::with_capacity(resolution);
    for k in 0..resolution {
        let angle = std::f64::consts::TAU * k as f64 / resolution as f64;
        let u = DVector::from_column_slice(&[angle.cos(), angle.sin()]);
        let radius = 1.0 / norm.constant_norm(&u)?;
        let boundary = &u * radius;
        let images: Vec<DVector<f64>> = generators.iter().map(|a| a * &boundary).collect();
        rows.push((angle, radius, boundary, images));
    }
    match sink.format {
        Format::Csv => {
            let mut columns = vec![
                "angle".to_string(),
                "radius".to_string(),
                "x".to_string(),
                "y".to_string(),
            ];
            for i in 0..generators.len() {
                columns.push(format!("image{i}_x"));
                columns.push(format!("image{i}_y"));
            }
            let header: Vec<&str> = columns.iter().map(String::as_str).collect();
            let mut csv = Csv::new(&header);
            for (angle, radius, boundary, images) in &rows {
                let mut cells = vec![
                    fmt_f(*angle),
                    fmt_f(*radius),
                    fmt_f(boundary[0]),
                    fmt_f(boundary[1]),
                ];
                for im in images {
                    cells.push(fmt_f(im[0]));
                    cells.push(fmt_f(im[1]));
                }
                csv.push(&cells);
            }
            sink.emit(stem, &csv.finish())
        }
        Format::Json => {
            let points: Vec<serde_json::Value> = rows
                .iter()
                .map(|(angle, radius, boundary, images)| {
                    json!({
                        "angle": angle,
                        "radius": radius,
                        "point": [boundary[0], boundary[1]],
                        "images": images
                            .iter()
                            .map(|im| json!([im[0], im[1]]))
                            .collect::<Vec<_>>(),
                    })
                })
                .collect();
            sink.emit_json(
                stem,
                &json!({
                    "norm": norm.name(),
                    "resolution": resolution,
                    "points": points,
                }),
            )
        }
    }
}

pub fn beta(cfg: &RunConfig, args: &BetaArgs, sink: &Sink) -> Result<(), Failure> {
    if args.budget == 0 {
        return Err(Failure::Validation("--budget must be positive".into()));
    }
    let bracket = estimate_beta(&cfg.cocycle, args.budget)?;
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&["lower", "upper", "n_lower", "n_upper", "midpoint", "width"]);
            csv.push(&[
                fmt_f(bracket.lower),
                fmt_f(bracket.upper),
                bracket.n_lower.to_string(),
                bracket.n_upper.to_string(),
                fmt_f(bracket.midpoint()),
                fmt_f(bracket.width()),
            ]);
            sink.emit("beta", &csv.finish())?;
        }
        Format::Json => {
            sink.emit_json(
                "beta",
                &json!({
                    "lower": bracket.lower,
                    "upper": bracket.upper,
                    "n_lower": bracket.n_lower,
                    "n_upper": bracket.n_upper,
                    "midpoint": bracket.midpoint(),
                    "width": bracket.width(),
                }),
            )?;
        }
    }
    println!(
        "growth rate in [{}, {}], width {}",
        fmt_f(bracket.lower),
        fmt_f(bracket.upper),
        fmt_f(bracket.width())
    );
    Ok(())
}

pub fn berger_wang(cfg: &RunConfig, sink: &Sink) -> Result<(), Failure> {
    let table = berger_wang_table(&cfg.cocycle, cfg.budgets.max_period)?;
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&["n", "beta_n", "gap", "witness"]);
            for row in &table {
                csv.push(&[
                    row.n.to_string(),
                    fmt_f(row.beta_n),
                    fmt_f(row.gap),
                    row.witness.clone(),
                ]);
            }
            sink.emit("berger_wang", &csv.finish())?;
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .iter()
                .map(|r| json!({"n": r.n, "beta_n": r.beta_n, "gap": r.gap, "witness": r.witness}))
                .collect();
            sink.emit_json(
                "berger_wang",
                &json!({"max_period": cfg.budgets.max_period, "rows": rows}),
            )?;
        }
    }
    if let Some(last) = table.last() {
        println!(
            "best periodic lower bound {} at period {}",
            fmt_f(last.beta_n),
            last.n
        );
    }
    Ok(())
}

pub fn barabanov(cfg: &RunConfig, args: &BarabanovArgs, sink: &Sink) -> Result<(), Failure> {
    let matrices = cfg.cocycle.one_step_matrices()?;
    let beta_used = match args.beta {
        Some(b) if b.is_finite() => b,
        Some(b) => {
            return Err(Failure::Validation(format!(
                "--beta must be finite, got {b}"
            )));
        }
        None => estimate_beta(&cfg.cocycle, 65536)?.midpoint(),
    };
    let (norm, residual) =
        constant_barabanov_iterate(&matrices, beta_used, cfg.budgets.grid, cfg.budgets.iters)?;
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&["beta_used", "residual", "grid", "iters"]);
            csv.push(&[
                fmt_f(beta_used),
                fmt_f(residual),
                cfg.budgets.grid.to_string(),
                cfg.budgets.iters.to_string(),
            ]);
            sink.emit("barabanov", &csv.finish())?;
        }
        Format::Json => {
            sink.emit_json(
                "barabanov",
                &json!({
                    "beta_used": beta_used,
                    "residual": residual,
                    "grid": cfg.budgets.grid,
                    "iters": cfg.budgets.iters,
                }),
            )?;
        }
    }
    emit_ball(sink, "barabanov_ball", &norm, &matrices, args.resolution)?;
    println!(
        "barabanov iteration settled at rate {}, residual {}",
        fmt_f(beta_used),
        fmt_f(residual)
    );
    Ok(())
}

fn build_norm(cfg: &RunConfig, args: &CheckExtremalArgs) -> Result<NormField, Failure> {
    match args.norm {
        NormKind::Euclidean => Ok(NormField::euclidean()),
        NormKind::Max => Ok(NormField::max()),
        NormKind::Polytope => {
            let path = args.vertices.as_ref().ok_or_else(|| {
                Failure::Validation("--norm polytope needs --vertices <file>".into())
            })?;
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Validation(format!("vertices {}: {e}", path.display())))?;
            let rows: Vec<Vec<f64>> = serde_json::from_str(&text)
                .map_err(|e| Failure::Validation(format!("vertices {}: {e}", path.display())))?;
            let d = cfg.cocycle.dimension();
            if rows.iter().any(|r| r.len() != d) {
                return Err(Failure::Validation(format!(
                    "vertices {}: expected vectors of length {d}",
                    path.display()
                )));
            }
            let vertices: Vec<DVector<f64>> =
                rows.iter().map(|r| DVector::from_column_slice(r)).collect();
            Ok(NormField::polytope(&vertices)?)
        }
        NormKind::Barabanov => {
            if args.depth == 0 {
                return Err(Failure::Validation("--depth must be positive".into()));
            }
            Ok(NormField::barabanov(
                cfg.cocycle.clone(),
                args.beta,
                args.depth,
            ))
        }
    }
}

pub fn check_extremal(
    cfg: &RunConfig,
    args: &CheckExtremalArgs,
    sink: &Sink,
) -> Result<(), Failure> {
    if !args.beta.is_finite() {
        return Err(Failure::Validation(format!(
            "--beta must be finite, got {}",
            args.beta
        )));
    }
    let norm = build_norm(cfg, args)?;
    let report = extremality_check(&cfg.cocycle, &norm, args.beta)?;
    match sink.format {
        Format::Csv => {
            let direction = report
                .worst_direction
                .iter()
                .map(|v| fmt_f(*v))
                .collect::<Vec<_>>()
                .join(";");
            let mut csv = Csv::new(&[
                "norm",
                "beta",
                "sup_log_operator_norm",
                "slack",
                "extremal",
                "worst_window",
                "worst_direction",
                "tolerance",
            ]);
            csv.push(&[
                norm.name().to_string(),
                fmt_f(report.beta_used),
                fmt_f(report.sup_log_operator_norm),
                fmt_f(report.slack),
                fmt_b(report.extremal),
                report.worst_window.clone(),
                direction,
                fmt_f(report.tolerance),
            ]);
            sink.emit("check_extremal", &csv.finish())?;
        }
        Format::Json => {
            sink.emit_json(
                "check_extremal",
                &json!({
                    "norm": norm.name(),
                    "beta": report.beta_used,
                    "sup_log_operator_norm": report.sup_log_operator_norm,
                    "slack": report.slack,
                    "extremal": report.extremal,
                    "worst_window": report.worst_window,
                    "worst_direction": report.worst_direction,
                    "tolerance": report.tolerance,
                }),
            )?;
        }
    }
    if norm.is_constant() && cfg.cocycle.dimension() == 2 {
        // the picture needs constant planar data; generator images only
        // exist for one-step cocycles
        let generators = cfg.cocycle.one_step_matrices().unwrap_or_default();
        emit_ball(sink, "check_extremal_ball", &norm, &generators, 64)?;
    }
    println!(
        "{} norm at rate {}: extremal = {}, slack {}",
        norm.name(),
        fmt_f(report.beta_used),
        report.extremal,
        fmt_f(report.slack)
    );
    Ok(())
}

pub fn holonomy(cfg: &RunConfig, args: &HolonomyArgs, sink: &Sink) -> Result<(), Failure> {
    let base = parse_point(&cfg.sft, &args.base, "--base")?;
    let target = parse_point(&cfg.sft, &args.target, "--target")?;
    let tol = positive_flag(args.tol, "--tol", cfg.tolerance("holonomy", 1e-10))?;
    if args.n_max == 0 {
        return Err(Failure::Validation("--n-max must be positive".into()));
    }
    // convergence is guaranteed under strong fiber bunching at the config's
    // Holder exponent; without it the iteration may still settle, so warn
    // rather than refuse
    let bunching = cfg.cocycle.fiber_bunching_check(cfg.theta)?;
    if !bunching.strongly_bunched {
        println!(
            "note: not strongly fiber bunched at theta {} (margin {})",
            fmt_f(cfg.theta),
            fmt_f(bunching.margin)
        );
    }
    let (side_name, result) = match args.side {
        Side::Stable => (
            "stable",
            stable_holonomy(&cfg.cocycle, &base, &target, tol, args.n_max)?,
        ),
        Side::Unstable => (
            "unstable",
            unstable_holonomy(&cfg.cocycle, &base, &target, tol, args.n_max)?,
        ),
    };
    match sink.format {
        Format::Csv => {
            let mut trace = Csv::new(&["iteration", "increment_norm"]);
            for (i, inc) in result.increments.iter().enumerate() {
                trace.push(&[(i + 1).to_string(), fmt_f(*inc)]);
            }
            sink.emit("holonomy_trace", &trace.finish())?;
            let d = result.matrix.ncols();
            let columns: Vec<String> = (0..d).map(|j| format!("col{j}")).collect();
            let header: Vec<&str> = columns.iter().map(String::as_str).collect();
            let mut mat = Csv::new(&header);
            for i in 0..result.matrix.nrows() {
                let cells: Vec<String> = (0..d).map(|j| fmt_f(result.matrix[(i, j)])).collect();
                mat.push(&cells);
            }
            sink.emit("holonomy_matrix", &mat.finish())?;
        }
        Format::Json => {
            sink.emit_json(
                "holonomy",
                &json!({
                    "side": side_name,
                    "matrix": matrix_json(&result.matrix),
                    "iterations_used": result.iterations_used,
                    "last_increment_norm": result.last_increment_norm,
                    "certified": result.certified,
                    "strongly_bunched": bunching.strongly_bunched,
                    "increments": result.increments,
                }),
            )?;
        }
    }
    println!(
        "{side_name} holonomy: certified = {}, {} iteration(s), last increment {}",
        result.certified,
        result.iterations_used,
        fmt_f(result.last_increment_norm)
    );
    Ok(())
}

pub fn mather(cfg: &RunConfig, args: &MatherArgs, sink: &Sink) -> Result<(), Failure> {
    let tol = positive_flag(args.tol, "--tol", cfg.tolerance("mather", 1e-6))?;
    let approx = mather::mather_set_approx(&cfg.cocycle, args.p, cfg.budgets.max_period, tol)?;
    let mut rows = Vec::with_capacity(approx.orbits.len());
    for w in &approx.orbits {
        let spectrum = lyapunov_spectrum_periodic(&cfg.cocycle, w)?;
        let sum: f64 = spectrum.iter().take(approx.index_p).sum();
        rows.push((symbols_string(w.symbols()), w.period(), sum));
    }
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&["word", "period", "top_sum", "gap"]);
            for (word, period, sum) in &rows {
                csv.push(&[
                    word.clone(),
                    period.to_string(),
                    fmt_f(*sum),
                    fmt_f(approx.beta_used - sum),
                ]);
            }
            sink.emit("mather", &csv.finish())?;
        }
        Format::Json => {
            let orbits: Vec<serde_json::Value> = rows
                .iter()
                .map(|(word, period, sum)| json!({"word": word, "period": period, "top_sum": sum}))
                .collect();
            sink.emit_json(
                "mather",
                &json!({
                    "p": approx.index_p,
                    "beta_used": approx.beta_used,
                    "tol": approx.tol,
                    "wedge_gap": approx.wedge_gap,
                    "orbits": orbits,
                }),
            )?;
        }
    }
    println!(
        "p = {}: {} maximizing orbit(s), best sum {}",
        approx.index_p,
        rows.len(),
        fmt_f(approx.beta_used)
    );
    Ok(())
}

pub fn splitting(cfg: &RunConfig, args: &SplittingArgs, sink: &Sink) -> Result<(), Failure> {
    let mut samples = Vec::new();
    for token in args.orbits.split(',') {
        let token = token.trim();
        if token.is_empty() {
            return Err(Failure::Validation("--orbits has an empty entry".into()));
        }
        let w = PeriodicWord::parse(&cfg.sft, token)
            .map_err(|e| Failure::Validation(format!("--orbits {token:?}: {e}")))?;
        let x = w.point(&cfg.sft);
        for k in 0..w.period() as i64 {
            samples.push(x.shift(k));
        }
    }
    let n_max = args.n_max.unwrap_or(cfg.budgets.n_max);
    let series = singular_gap_series(&cfg.cocycle, &samples, args.p, n_max)?;
    if sink.format == Format::Csv {
        let mut csv = Csv::new(&["n", "log_gap"]);
        for (n, gap) in &series {
            csv.push(&[n.to_string(), fmt_f(*gap)]);
        }
        sink.emit("splitting_series", &csv.finish())?;
    } else {
        let points: Vec<serde_json::Value> =
            series.iter().map(|(n, gap)| json!([n, gap])).collect();
        sink.emit_json("splitting_series", &json!({ "series": points }))?;
    }
    let verdict = dominated_splitting_test(&cfg.cocycle, &samples, args.p, n_max)?;
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&["p", "found", "tau", "log_constant", "r_squared"]);
            match &verdict {
                Some(report) => csv.push(&[
                    report.p.to_string(),
                    fmt_b(true),
                    fmt_f(report.tau),
                    fmt_f(report.log_constant),
                    fmt_f(report.r_squared),
                ]),
                None => csv.push(&[
                    args.p.to_string(),
                    fmt_b(false),
                    String::new(),
                    String::new(),
                    String::new(),
                ]),
            }
            sink.emit("splitting", &csv.finish())?;
        }
        Format::Json => {
            let value = match &verdict {
                Some(report) => json!({
                    "p": report.p,
                    "found": true,
                    "tau": report.tau,
                    "log_constant": report.log_constant,
                    "r_squared": report.r_squared,
                    "subspaces": report
                        .subspaces
                        .iter()
                        .map(|s| matrix_json(s.basis()))
                        .collect::<Vec<_>>(),
                }),
                None => json!({ "p": args.p, "found": false }),
            };
            sink.emit_json("splitting", &value)?;
        }
    }
    match &verdict {
        Some(report) => println!(
            "dominated splitting at p = {}: gap decays at rate {}, fit r^2 {}",
            report.p,
            fmt_f(report.tau),
            fmt_f(report.r_squared)
        ),
        None => println!("no dominated splitting detected at p = {}", args.p),
    }
    Ok(())
}

/// Seeded random cyclically admissible word: walk the transition graph and
/// retry until the wrap-around edge is allowed too.
fn random_cyclic_word(sft: &Sft, period: usize, seed: u64) -> Result<PeriodicWord, Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = sft.alphabet_size() as u8;
    for _ in 0..1000 {
        let mut w = Vec::with_capacity(period);
        let mut a = rng.random_range(0..n);
        w.push(a);
        let mut alive = true;
        while w.len() < period {
            let succ: Vec<u8> = sft.successors(a).collect();
            if succ.is_empty() {
                alive = false;
                break;
            }
            a = succ[rng.random_range(0..succ.len())];
            w.push(a);
        }
        if alive && sft.is_cyclically_admissible(&w) {
            return Ok(PeriodicWord::parse(sft, &symbols_string(&w))?);
        }
    }
    Err(Failure::Numerical(cocycle_lab::Error::NotFound(format!(
        "no cyclically admissible word of period {period} in 1000 seeded draws"
    ))))
}

pub fn closing(cfg: &RunConfig, seed: u64, args: &ClosingArgs, sink: &Sink) -> Result<(), Failure> {
    if args.n == 0 {
        return Err(Failure::Validation("--n must be positive".into()));
    }
    if !(args.tau > 0.0 && args.tau.is_finite()) {
        return Err(Failure::Validation(format!(
            "--tau must be a positive real, got {}",
            args.tau
        )));
    }
    let sample_word = match (&args.sample.word, args.sample.random) {
        (Some(text), None) => PeriodicWord::parse(&cfg.sft, text)
            .map_err(|e| Failure::Validation(format!("--word {text:?}: {e}")))?,
        (None, Some(period)) => {
            if period == 0 {
                return Err(Failure::Validation("--random must be positive".into()));
            }
            random_cyclic_word(&cfg.sft, period, seed)?
        }
        _ => {
            return Err(Failure::Validation(
                "exactly one of --word and --random is required".into(),
            ));
        }
    };
    let x = sample_word.point(&cfg.sft);
    let samples: Vec<Point> = (0..sample_word.period() as i64)
        .map(|k| x.shift(k))
        .collect();
    let orbit = closing_periodic_orbit(&samples, args.n, args.tau, &cfg.sft)?;
    let sample_text = symbols_string(sample_word.symbols());
    let orbit_text = symbols_string(orbit.symbols());
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "sample",
                "sample_period",
                "n",
                "tau",
                "word",
                "period",
                "primitive",
            ]);
            csv.push(&[
                sample_text.clone(),
                sample_word.period().to_string(),
                args.n.to_string(),
                fmt_f(args.tau),
                orbit_text.clone(),
                orbit.period().to_string(),
                fmt_b(orbit.is_primitive()),
            ]);
            sink.emit("closing", &csv.finish())?;
        }
        Format::Json => {
            sink.emit_json(
                "closing",
                &json!({
                    "sample": sample_text,
                    "sample_period": sample_word.period(),
                    "n": args.n,
                    "tau": args.tau,
                    "word": orbit_text,
                    "period": orbit.period(),
                    "primitive": orbit.is_primitive(),
                }),
            )?;
        }
    }
    println!(
        "closed the {}-point sample of {} into the period-{} orbit {}",
        samples.len(),
        sample_text,
        orbit.period(),
        orbit_text
    );
    Ok(())
}

fn no_riemannian(sink: &Sink) -> Result<(), Failure> {
    // rotation-plus-contraction pair on the full 2-shift; lambda is large
    // enough that the one-step cocycle is strongly fiber bunched
    let sft = Sft::full_shift(2, 2.2)?;
    let a0 = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    let a1 = DMatrix::from_row_slice(2, 2, &[0.8, -0.1, 0.8, 0.1]);
    let c = Cocycle::one_step(sft.clone(), vec![a0, a1])?;
    let bracket = estimate_beta(&c, 65536)?;
    let report = extremality_check(&c, &NormField::max(), 0.0)?;
    let p = Point::fixed(&sft, 0)?;
    let q = Point::parse(&sft, "0", "1", "0", 0)?;
    let (loop_norm, obstructed) = riemannian_obstruction(&c, &p, &q)?;
    println!(
        "growth rate bracket: [{}, {}]",
        fmt_f(bracket.lower),
        fmt_f(bracket.upper)
    );
    println!(
        "max norm extremal at rate 0: {} (slack {})",
        report.extremal,
        fmt_f(report.slack)
    );
    println!("homoclinic loop norm: {}", fmt_f(loop_norm));
    println!("riemannian extremal norm obstructed: {obstructed}");
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "beta_lower",
                "beta_upper",
                "max_extremal",
                "max_slack",
                "loop_norm",
                "obstructed",
            ]);
            csv.push(&[
                fmt_f(bracket.lower),
                fmt_f(bracket.upper),
                fmt_b(report.extremal),
                fmt_f(report.slack),
                fmt_f(loop_norm),
                fmt_b(obstructed),
            ]);
            sink.emit("example_no_riemannian", &csv.finish())
        }
        Format::Json => sink.emit_json(
            "example_no_riemannian",
            &json!({
                "beta_lower": bracket.lower,
                "beta_upper": bracket.upper,
                "max_extremal": report.extremal,
                "max_slack": report.slack,
                "loop_norm": loop_norm,
                "obstructed": obstructed,
            }),
        ),
    }
}

fn unlocked(m: usize, sink: &Sink) -> Result<(), Failure> {
    if !m.is_multiple_of(2) || m.is_multiple_of(4) {
        return Err(Failure::Validation(format!("--m must be 2 mod 4, got {m}")));
    }
    let (_, product, exponent) = perturbed_example(m)?;
    println!("product along the period-{} orbit:", m + 1);
    for i in 0..2 {
        println!("  [{} {}]", fmt_f(product[(i, 0)]), fmt_f(product[(i, 1)]));
    }
    println!("periodic exponent: {}", fmt_f(exponent));
    match sink.format {
        Format::Csv => {
            let mut csv = Csv::new(&[
                "m",
                "product_00",
                "product_01",
                "product_10",
                "product_11",
                "exponent",
            ]);
            csv.push(&[
                m.to_string(),
                fmt_f(product[(0, 0)]),
                fmt_f(product[(0, 1)]),
                fmt_f(product[(1, 0)]),
                fmt_f(product[(1, 1)]),
                fmt_f(exponent),
            ]);
            sink.emit("example_unlocked", &csv.finish())
        }
        Format::Json => sink.emit_json(
            "example_unlocked",
            &json!({
                "m": m,
                "product": matrix_json(&product),
                "exponent": exponent,
            }),
        ),
    }
}

pub fn example(args: &ExampleArgs, sink: &Sink) -> Result<(), Failure> {
    match args.scenario {
        Scenario::NoRiemannian => no_riemannian(sink),
        Scenario::Unlocked => unlocked(args.m, sink),
    }
}
