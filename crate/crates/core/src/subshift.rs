//! Two-sided subshifts of finite type and their computable points.
//!
//! The base space is the set of bi-infinite admissible sequences over a finite
//! alphabet, with the left shift acting on it. Points are represented as
//! eventually periodic sequences `(left)^inf core (right)^inf`, the smallest
//! class that is closed under shifting and bracketing and contains every
//! fixed, periodic, and homoclinic point we need. All comparisons (distance,
//! equality, stable/unstable membership) are decided exactly by scanning a
//! certified finite window.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Metric space diameter: symbol mismatch at index 0 gives distance e^0 = 1.
pub const DIAMETER: f64 = 1.0;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Symbols are encoded as base-36 digits (`0-9a-z`) in serialized form.
pub fn symbol_char(s: u8) -> char {
    char::from_digit(s as u32, 36).expect("symbol below 36")
}

/// Parse a string of base-36 digits into symbols.
pub fn parse_symbols(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| {
            c.to_digit(36)
                .map(|d| d as u8)
                .ok_or_else(|| Error::PreconditionViolated(format!("invalid symbol char {c:?}")))
        })
        .collect()
}

/// Render symbols as a base-36 digit string.
pub fn symbols_string(w: &[u8]) -> String {
    w.iter().map(|&s| symbol_char(s)).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SftRaw {
    alphabet: usize,
    transitions: Vec<Vec<u8>>,
    lambda: f64,
}

/// A subshift of finite type: alphabet, 0-1 transition matrix, and the metric
/// parameter `lambda` defining `d(x,y) = exp(-lambda * k)` where `k` is the
/// smallest `|n|` with `x_n != y_n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SftRaw", into = "SftRaw")]
pub struct Sft {
    alphabet_size: usize,
    transitions: Vec<Vec<u8>>,
    lambda: f64,
}

impl TryFrom<SftRaw> for Sft {
    type Error = Error;
    fn try_from(raw: SftRaw) -> Result<Self> {
        Sft::new(raw.alphabet, raw.transitions, raw.lambda)
    }
}

impl From<Sft> for SftRaw {
    fn from(sft: Sft) -> Self {
        SftRaw {
            alphabet: sft.alphabet_size,
            transitions: sft.transitions,
            lambda: sft.lambda,
        }
    }
}

impl Sft {
    /// Build a subshift, validating the transition matrix.
    ///
    /// Requirements: `1 <= alphabet_size <= 36` (the cap comes from the
    /// base-36 string encoding of symbols), a square 0-1 matrix with at least
    /// one 1 in every row and column (no dead symbols), and `lambda > 0`.
    pub fn new(alphabet_size: usize, transitions: Vec<Vec<u8>>, lambda: f64) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::PreconditionViolated(
                "alphabet must be nonempty".into(),
            ));
        }
        if alphabet_size > 36 {
            return Err(Error::TooLarge(format!(
                "alphabet size {alphabet_size} exceeds the base-36 symbol encoding"
            )));
        }
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::PreconditionViolated(format!(
                "lambda must be a positive real, got {lambda}"
            )));
        }
        if transitions.len() != alphabet_size
            || transitions.iter().any(|row| row.len() != alphabet_size)
        {
            return Err(Error::DimensionMismatch(format!(
                "transition matrix must be {alphabet_size}x{alphabet_size}"
            )));
        }
        for row in &transitions {
            for &e in row {
                if e > 1 {
                    return Err(Error::PreconditionViolated(
                        "transition entries must be 0 or 1".into(),
                    ));
                }
            }
        }
        for (a, row) in transitions.iter().enumerate() {
            if row.iter().all(|&e| e == 0) {
                return Err(Error::PreconditionViolated(format!(
                    "symbol {a} has no outgoing transition"
                )));
            }
            if (0..alphabet_size).all(|b| transitions[b][a] == 0) {
                return Err(Error::PreconditionViolated(format!(
                    "symbol {a} has no incoming transition"
                )));
            }
        }
        Ok(Sft {
            alphabet_size,
            transitions,
            lambda,
        })
    }

    /// The full shift on `n` symbols (all transitions allowed).
    pub fn full_shift(n: usize, lambda: f64) -> Result<Self> {
        Sft::new(n, vec![vec![1; n]; n], lambda)
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Expansivity radius: points at distance <= epsilon0 share the symbol at
    /// index 0.
    pub fn epsilon0(&self) -> f64 {
        (-self.lambda).exp()
    }

    pub fn allows(&self, a: u8, b: u8) -> bool {
        self.transitions[a as usize][b as usize] == 1
    }

    pub fn transitions(&self) -> &[Vec<u8>] {
        &self.transitions
    }

    /// Symbols that may follow `a`.
    pub fn successors(&self, a: u8) -> impl Iterator<Item = u8> + '_ {
        self.transitions[a as usize]
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1)
            .map(|(b, _)| b as u8)
    }

    /// Symbols that may precede `a`.
    pub fn predecessors(&self, a: u8) -> impl Iterator<Item = u8> + '_ {
        (0..self.alphabet_size as u8).filter(move |&b| self.allows(b, a))
    }

    /// Whether every consecutive pair in `w` is an allowed transition.
    pub fn is_admissible_word(&self, w: &[u8]) -> bool {
        w.iter().all(|&s| (s as usize) < self.alphabet_size)
            && w.windows(2).all(|p| self.allows(p[0], p[1]))
    }

    /// Admissible word whose last-to-first transition is also allowed.
    pub fn is_cyclically_admissible(&self, w: &[u8]) -> bool {
        !w.is_empty() && self.is_admissible_word(w) && self.allows(w[w.len() - 1], w[0])
    }

    /// All admissible words of exactly the given length, in lexicographic
    /// order. `len = 0` yields the single empty word.
    pub fn admissible_words(&self, len: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let mut stack = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == len {
                out.push(w);
                continue;
            }
            // push in reverse so the DFS pops symbols in increasing order
            for b in (0..self.alphabet_size as u8).rev() {
                if w.last().is_none_or(|&a| self.allows(a, b)) {
                    let mut next = w.clone();
                    next.push(b);
                    stack.push(next);
                }
            }
        }
        out
    }
}

/// A cyclically admissible word, the combinatorial core of a periodic orbit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PeriodicWord {
    symbols: Vec<u8>,
}

impl Serialize for PeriodicWord {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&symbols_string(&self.symbols))
    }
}

impl<'de> Deserialize<'de> for PeriodicWord {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        let symbols = parse_symbols(&s).map_err(serde::de::Error::custom)?;
        if symbols.is_empty() {
            return Err(serde::de::Error::custom("periodic word must be nonempty"));
        }
        Ok(PeriodicWord { symbols })
    }
}

impl std::fmt::Display for PeriodicWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&symbols_string(&self.symbols))
    }
}

fn min_rotation(w: &[u8]) -> Vec<u8> {
    let mut best = w.to_vec();
    for r in 1..w.len() {
        let mut rot = w[r..].to_vec();
        rot.extend_from_slice(&w[..r]);
        if rot < best {
            best = rot;
        }
    }
    best
}

fn primitive_root_len(w: &[u8]) -> usize {
    'outer: for p in 1..=w.len() {
        if !w.len().is_multiple_of(p) {
            continue;
        }
        for i in p..w.len() {
            if w[i] != w[i - p] {
                continue 'outer;
            }
        }
        return p;
    }
    w.len()
}

impl PeriodicWord {
    /// Validate cyclic admissibility and build the word.
    pub fn new(sft: &Sft, symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::PreconditionViolated(
                "periodic word must be nonempty".into(),
            ));
        }
        if !sft.is_cyclically_admissible(&symbols) {
            return Err(Error::PreconditionViolated(format!(
                "word {} is not cyclically admissible",
                symbols_string(&symbols)
            )));
        }
        Ok(PeriodicWord { symbols })
    }

    /// Parse from a base-36 digit string and validate against the subshift.
    pub fn parse(sft: &Sft, s: &str) -> Result<Self> {
        PeriodicWord::new(sft, parse_symbols(s)?)
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn period(&self) -> usize {
        self.symbols.len()
    }

    /// Not a proper power of a shorter word.
    pub fn is_primitive(&self) -> bool {
        primitive_root_len(&self.symbols) == self.symbols.len()
    }

    /// Representative with the primitive root and the lexicographically least
    /// rotation; two words describe the same orbit iff their canonical forms
    /// are equal.
    pub fn canonical(&self) -> PeriodicWord {
        let root = &self.symbols[..primitive_root_len(&self.symbols)];
        PeriodicWord {
            symbols: min_rotation(root),
        }
    }

    /// The periodic point `...www.www...` with the word starting at index 0.
    pub fn point(&self, sft: &Sft) -> Point {
        Point::new(
            sft,
            self.symbols.clone(),
            Vec::new(),
            self.symbols.clone(),
            0,
        )
        .expect("cyclically admissible word gives an admissible point")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointRaw {
    left: String,
    core: String,
    right: String,
    origin: i64,
}

/// A two-sided eventually periodic sequence `(left)^inf core (right)^inf`.
///
/// `origin_offset` is the absolute index of the first core symbol; the left
/// period fills all smaller indices (repeated right-aligned against the
/// core), the right period all indices past the core. The core may be empty,
/// in which case `origin_offset` marks the junction.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PointRaw", into = "PointRaw")]
pub struct Point {
    left_period: Vec<u8>,
    core: Vec<u8>,
    right_period: Vec<u8>,
    origin_offset: i64,
}

impl TryFrom<PointRaw> for Point {
    type Error = Error;
    fn try_from(raw: PointRaw) -> Result<Self> {
        let left = parse_symbols(&raw.left)?;
        let core = parse_symbols(&raw.core)?;
        let right = parse_symbols(&raw.right)?;
        if left.is_empty() || right.is_empty() {
            return Err(Error::PreconditionViolated(
                "left and right periods must be nonempty".into(),
            ));
        }
        // admissibility against a concrete subshift is checked by validate()
        Ok(Point {
            left_period: left,
            core,
            right_period: right,
            origin_offset: raw.origin,
        })
    }
}

impl From<Point> for PointRaw {
    fn from(p: Point) -> Self {
        PointRaw {
            left: symbols_string(&p.left_period),
            core: symbols_string(&p.core),
            right: symbols_string(&p.right_period),
            origin: p.origin_offset,
        }
    }
}

fn period_symbol(period: &[u8], idx: i64) -> u8 {
    period[idx.rem_euclid(period.len() as i64) as usize]
}

fn rotate_period(period: &[u8], shift: i64) -> Vec<u8> {
    (0..period.len() as i64)
        .map(|j| period_symbol(period, j + shift))
        .collect()
}

impl Point {
    /// Build a point and verify admissibility at every junction: inside both
    /// periods, across their wrap-arounds, and through the core.
    pub fn new(
        sft: &Sft,
        left_period: Vec<u8>,
        core: Vec<u8>,
        right_period: Vec<u8>,
        origin_offset: i64,
    ) -> Result<Self> {
        if left_period.is_empty() || right_period.is_empty() {
            return Err(Error::PreconditionViolated(
                "left and right periods must be nonempty".into(),
            ));
        }
        let p = Point {
            left_period,
            core,
            right_period,
            origin_offset,
        };
        p.validate(sft)?;
        Ok(p)
    }

    /// Parse from base-36 digit strings; `origin` is the index of the first
    /// core symbol.
    pub fn parse(sft: &Sft, left: &str, core: &str, right: &str, origin: i64) -> Result<Self> {
        Point::new(
            sft,
            parse_symbols(left)?,
            parse_symbols(core)?,
            parse_symbols(right)?,
            origin,
        )
    }

    /// The fixed point `a^inf`. Requires the self-loop `a -> a`.
    pub fn fixed(sft: &Sft, a: u8) -> Result<Self> {
        Point::new(sft, vec![a], Vec::new(), vec![a], 0)
    }

    /// Check every transition of the represented sequence against the
    /// subshift. Scanning one full period on each side of the core covers
    /// both periodic wrap-arounds and all junctions.
    pub fn validate(&self, sft: &Sft) -> Result<()> {
        for w in [&self.left_period, &self.core, &self.right_period] {
            for &s in w.iter() {
                if s as usize >= sft.alphabet_size() {
                    return Err(Error::PreconditionViolated(format!(
                        "symbol {s} outside alphabet of size {}",
                        sft.alphabet_size()
                    )));
                }
            }
        }
        let lo = self.core_start() - self.left_period.len() as i64 - 1;
        let hi = self.core_end() + self.right_period.len() as i64 - 1;
        for n in lo..=hi {
            let (a, b) = (self.symbol(n), self.symbol(n + 1));
            if !sft.allows(a, b) {
                return Err(Error::PreconditionViolated(format!(
                    "forbidden transition {}{} at index {n}",
                    symbol_char(a),
                    symbol_char(b)
                )));
            }
        }
        Ok(())
    }

    /// Index of the first core symbol (junction index when the core is empty).
    pub fn core_start(&self) -> i64 {
        self.origin_offset
    }

    /// One past the last core symbol.
    pub fn core_end(&self) -> i64 {
        self.origin_offset + self.core.len() as i64
    }

    pub fn left_period(&self) -> &[u8] {
        &self.left_period
    }

    pub fn right_period(&self) -> &[u8] {
        &self.right_period
    }

    /// The symbol at an arbitrary integer index.
    pub fn symbol(&self, n: i64) -> u8 {
        if n < self.core_start() {
            period_symbol(&self.left_period, n - self.core_start())
        } else if n < self.core_end() {
            self.core[(n - self.core_start()) as usize]
        } else {
            period_symbol(&self.right_period, n - self.core_end())
        }
    }

    /// The window `x_{lo} ... x_{hi}` inclusive.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u8> {
        (lo..=hi).map(|n| self.symbol(n)).collect()
    }

    /// `T^n x`: the sequence read from index `n` onward, i.e.
    /// `symbol_i(shift(x,n)) = symbol_{i+n}(x)`.
    pub fn shift(&self, n: i64) -> Point {
        let mut p = self.clone();
        p.origin_offset -= n;
        p
    }

    /// Certified scan window `[lo, hi)` outside which both points are purely
    /// periodic and one full aligned period has already been compared.
    fn scan_bounds(&self, other: &Point) -> (i64, i64) {
        let lcm_l = lcm(self.left_period.len(), other.left_period.len()) as i64;
        let lcm_r = lcm(self.right_period.len(), other.right_period.len()) as i64;
        let lo = self.core_start().min(other.core_start()).min(0) - lcm_l;
        let hi = self.core_end().max(other.core_end()).max(0) + lcm_r;
        (lo, hi)
    }

    /// Smallest `|n|` with a symbol mismatch, or None when the sequences are
    /// identical. Decidable: past the scan window both sequences are aligned
    /// periodic repetitions, so any further mismatch would already have shown
    /// up inside the window.
    pub fn first_disagreement(&self, other: &Point) -> Option<u64> {
        let (lo, hi) = self.scan_bounds(other);
        let right = (0..hi).find(|&n| self.symbol(n) != other.symbol(n));
        let left = (lo..0).rev().find(|&n| self.symbol(n) != other.symbol(n));
        match (right, left) {
            (None, None) => None,
            (r, l) => {
                let kr = r.map(|n| n as u64);
                let kl = l.map(|n| n.unsigned_abs());
                Some(match (kr, kl) {
                    (Some(a), Some(b)) => a.min(b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b,
                    (None, None) => unreachable!(),
                })
            }
        }
    }

    /// Exact sequence equality.
    pub fn same_sequence(&self, other: &Point) -> bool {
        self.first_disagreement(other).is_none()
    }

    /// Membership in the local stable set of `other`: agreement at all n >= 0.
    pub fn in_local_stable_of(&self, other: &Point) -> bool {
        let (_, hi) = self.scan_bounds(other);
        (0..hi).all(|n| self.symbol(n) == other.symbol(n))
    }

    /// Membership in the local unstable set of `other`: agreement at all n <= 0.
    pub fn in_local_unstable_of(&self, other: &Point) -> bool {
        let (lo, _) = self.scan_bounds(other);
        (lo..=0).all(|n| self.symbol(n) == other.symbol(n))
    }

    /// Membership in the (global) stable set: the right tails eventually
    /// agree. Beyond both cores the sequences are periodic, so it suffices to
    /// compare one aligned period there.
    pub fn in_stable_set_of(&self, other: &Point) -> bool {
        let m = self.core_end().max(other.core_end());
        let lcm_r = lcm(self.right_period.len(), other.right_period.len()) as i64;
        (m..m + lcm_r).all(|n| self.symbol(n) == other.symbol(n))
    }

    /// Membership in the (global) unstable set: the left tails eventually
    /// agree.
    pub fn in_unstable_set_of(&self, other: &Point) -> bool {
        let m = self.core_start().min(other.core_start());
        let lcm_l = lcm(self.left_period.len(), other.left_period.len()) as i64;
        (m - lcm_l..m).all(|n| self.symbol(n) == other.symbol(n))
    }

    /// Smallest index from which the two sequences agree forever to the
    /// right, provided they lie on a common stable set. For identical
    /// sequences returns the scan floor (any smaller index also works).
    pub fn stable_sync_index(&self, other: &Point) -> Option<i64> {
        if !self.in_stable_set_of(other) {
            return None;
        }
        let (lo, _) = self.scan_bounds(other);
        let m = self.core_end().max(other.core_end());
        match (lo..m).rev().find(|&n| self.symbol(n) != other.symbol(n)) {
            Some(n) => Some(n + 1),
            None => Some(lo),
        }
    }

    /// Largest index up to which the two sequences agree forever to the left,
    /// provided they lie on a common unstable set.
    pub fn unstable_sync_index(&self, other: &Point) -> Option<i64> {
        if !self.in_unstable_set_of(other) {
            return None;
        }
        let (_, hi) = self.scan_bounds(other);
        let m = self.core_start().min(other.core_start());
        match (m..hi).find(|&n| self.symbol(n) != other.symbol(n)) {
            Some(n) => Some(n - 1),
            None => Some(hi),
        }
    }
}

impl PartialEq for Point {
    /// Semantic equality of the represented sequences, independent of how
    /// the (period, core, offset) data is split.
    fn eq(&self, other: &Self) -> bool {
        self.same_sequence(other)
    }
}

impl Eq for Point {}

/// `d(x,y) = exp(-lambda * k)` with `k` the smallest `|n|` where the
/// sequences disagree; 0 when they coincide.
pub fn distance(sft: &Sft, x: &Point, y: &Point) -> f64 {
    match x.first_disagreement(y) {
        None => 0.0,
        Some(k) => (-sft.lambda() * k as f64).exp(),
    }
}

/// Orbit-refined metric `d_n(x,y) = max_{0 <= i < n} d(T^i x, T^i y)`.
pub fn orbit_distance(sft: &Sft, x: &Point, y: &Point, depth: usize) -> f64 {
    (0..depth.max(1) as i64)
        .map(|i| distance(sft, &x.shift(i), &y.shift(i)))
        .fold(0.0, f64::max)
}

/// The unique point agreeing with `x` at all n <= 0 and with `y` at all
/// n >= 0. Requires `x_0 = y_0`.
pub fn bracket(sft: &Sft, x: &Point, y: &Point) -> Result<Point> {
    if x.symbol(0) != y.symbol(0) {
        return Err(Error::PreconditionViolated(format!(
            "bracket needs matching symbols at index 0, got {} and {}",
            symbol_char(x.symbol(0)),
            symbol_char(y.symbol(0))
        )));
    }
    let l_cut = x.core_start().min(0);
    let r_cut = y.core_end().max(1);
    let left = rotate_period(&x.left_period, l_cut - x.core_start());
    let right = rotate_period(&y.right_period, r_cut - y.core_end());
    let core = (l_cut..r_cut)
        .map(|n| if n <= 0 { x.symbol(n) } else { y.symbol(n) })
        .collect();
    Point::new(sft, left, core, right, l_cut)
}

/// Some point carrying `symbol` at the origin: greedy smallest-successor
/// walk forward and smallest-predecessor walk backward, each closed off at
/// its first repeated symbol into a periodic tail. Every symbol admits such
/// a point because the transition digraph has no dead rows or columns.
pub fn point_through(sft: &Sft, symbol: u8) -> Result<Point> {
    if symbol as usize >= sft.alphabet_size() {
        return Err(Error::PreconditionViolated(format!(
            "symbol {symbol} outside alphabet"
        )));
    }
    let walk = |next: &dyn Fn(u8) -> u8| -> (Vec<u8>, Vec<u8>) {
        // returns (transient after `symbol`, cycle) in walk order
        let mut seen = vec![usize::MAX; sft.alphabet_size()];
        let mut path = vec![symbol];
        seen[symbol as usize] = 0;
        loop {
            let s = next(*path.last().unwrap());
            if seen[s as usize] != usize::MAX {
                let start = seen[s as usize];
                if start == 0 {
                    // the walk closes through `symbol` itself: rotate it out
                    let mut cycle = path[1..].to_vec();
                    cycle.push(path[0]);
                    return (Vec::new(), cycle);
                }
                return (path[1..start].to_vec(), path[start..].to_vec());
            }
            seen[s as usize] = path.len();
            path.push(s);
        }
    };
    let succ = |s: u8| sft.successors(s).next().unwrap();
    let pred = |s: u8| sft.predecessors(s).next().unwrap();
    let (fwd_transient, fwd_cycle) = walk(&succ);
    let (bwd_transient, bwd_cycle) = walk(&pred);
    // backward data is in walk order (towards the past); reverse for reading order
    let mut core: Vec<u8> = bwd_transient.iter().rev().copied().collect();
    let origin = -(core.len() as i64);
    core.push(symbol);
    core.extend(fwd_transient);
    let left: Vec<u8> = bwd_cycle.iter().rev().copied().collect();
    Point::new(sft, left, core, fwd_cycle, origin)
}

/// One representative per periodic orbit of period up to `max_period`:
/// primitive cyclically admissible words in canonical (least-rotation) form,
/// ordered by length then lexicographically.
pub fn enumerate_periodic_words(sft: &Sft, max_period: usize) -> Vec<PeriodicWord> {
    let mut out = Vec::new();
    for len in 1..=max_period {
        for w in sft.admissible_words(len) {
            if sft.allows(w[len - 1], w[0])
                && primitive_root_len(&w) == len
                && min_rotation(&w) == w
            {
                out.push(PeriodicWord { symbols: w });
            }
        }
    }
    out
}

/// Digraph of the epsilon-pseudoorbit relation on a finite point sample:
/// edge i -> j iff `d_n(T x_i, x_j) < epsilon` (strict).
fn pseudoorbit_edges(
    points: &[Point],
    epsilon: f64,
    metric_depth: usize,
    sft: &Sft,
) -> Vec<Vec<usize>> {
    let shifted: Vec<Point> = points.iter().map(|p| p.shift(1)).collect();
    points
        .iter()
        .enumerate()
        .map(|(i, _)| {
            (0..points.len())
                .filter(|&j| orbit_distance(sft, &shifted[i], &points[j], metric_depth) < epsilon)
                .collect()
        })
        .collect()
}

/// Shortest cycle length in a digraph given by adjacency lists, with the
/// cycle's vertex sequence. None when the graph is acyclic.
fn shortest_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        // BFS from start; the first path that returns closes a shortest cycle
        // through start.
        let mut parent = vec![usize::MAX; n];
        let mut dist = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        dist[start] = 0;
        queue.push_back(start);
        'bfs: while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if v == start {
                    let mut cycle = vec![start];
                    let mut cur = u;
                    while cur != start {
                        cycle.push(cur);
                        cur = parent[cur];
                    }
                    // collected as start, u, parent(u), ...; reverse and
                    // rotate so the cycle reads start-first in edge order
                    cycle.reverse();
                    let cycle = if cycle.len() > 1 {
                        let pos = cycle.iter().position(|&c| c == start).unwrap();
                        let mut rot = cycle[pos..].to_vec();
                        rot.extend_from_slice(&cycle[..pos]);
                        rot
                    } else {
                        cycle
                    };
                    if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                    break 'bfs;
                }
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
    }
    best
}

/// Least period of a periodic epsilon-pseudoorbit drawn from the sample,
/// under the depth-`n` orbit metric.
pub fn min_pseudoorbit_period(
    points: &[Point],
    epsilon: f64,
    metric_depth: usize,
    sft: &Sft,
) -> Result<usize> {
    if points.is_empty() {
        return Err(Error::PreconditionViolated("point sample is empty".into()));
    }
    if !(epsilon > 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    let adj = pseudoorbit_edges(points, epsilon, metric_depth, sft);
    shortest_cycle(&adj)
        .map(|c| c.len())
        .ok_or_else(|| Error::NoPseudoorbit(format!("no cycle at epsilon {epsilon}")))
}

fn exact_max_independent(adj: &[u32], alive: u32) -> u32 {
    if alive == 0 {
        return 0;
    }
    let v = alive.trailing_zeros() as usize;
    let without = exact_max_independent(adj, alive & !(1 << v));
    if adj[v] & alive == 0 {
        // isolated vertex: always take it
        return 1 + without;
    }
    let with = 1 + exact_max_independent(adj, alive & !(1 << v) & !adj[v]);
    with.max(without)
}

/// Cardinality of a maximal epsilon-separated subset (pairwise distances at
/// least epsilon, non-strict) under the depth-`n` orbit metric. Exact for up
/// to 20 points, greedy (a certified lower bound) beyond that.
pub fn max_separated_set(points: &[Point], epsilon: f64, metric_depth: usize, sft: &Sft) -> usize {
    let n = points.len();
    if n == 0 {
        return 0;
    }
    let close =
        |i: usize, j: usize| orbit_distance(sft, &points[i], &points[j], metric_depth) < epsilon;
    if n <= 20 {
        let mut adj = vec![0u32; n];
        for i in 0..n {
            for j in i + 1..n {
                if close(i, j) {
                    adj[i] |= 1 << j;
                    adj[j] |= 1 << i;
                }
            }
        }
        exact_max_independent(&adj, (1u32 << n) - 1) as usize
    } else {
        let mut kept: Vec<usize> = Vec::new();
        for i in 0..n {
            if kept.iter().all(|&j| !close(i, j)) {
                kept.push(i);
            }
        }
        kept.len()
    }
}

/// Both sides of the pseudoorbit-counting inequality on a finite sample.
#[derive(Debug, Clone, Serialize)]
pub struct BqReport {
    /// ln(m)
    pub lhs: f64,
    /// ln S(eps/2, d) - ln S(eps, d_m) / m + 1
    pub rhs: f64,
    pub s_half: usize,
    pub s_m: usize,
    pub holds: bool,
}

/// Evaluate the counting inequality `ln m <= ln S(eps/2, d) -
/// (1/m) ln S(eps, d_m) + 1` on the sample. Valid only when every periodic
/// epsilon-pseudoorbit in the sample has period greater than `m`; that
/// precondition is verified first. A diagnostic, not a proof: the S values
/// are sample counts, not space-wide suprema.
pub fn bq_inequality_check(
    m: usize,
    epsilon: f64,
    points: &[Point],
    sft: &Sft,
) -> Result<BqReport> {
    if m == 0 {
        return Err(Error::PreconditionViolated("m must be positive".into()));
    }
    match min_pseudoorbit_period(points, epsilon, 1, sft) {
        Ok(r) if r <= m => {
            return Err(Error::PreconditionViolated(format!(
                "minimal pseudoorbit period {r} must exceed m = {m}"
            )));
        }
        Ok(_) | Err(Error::NoPseudoorbit(_)) => {}
        Err(e) => return Err(e),
    }
    let s_half = max_separated_set(points, epsilon / 2.0, 1, sft);
    let s_m = max_separated_set(points, epsilon, m, sft);
    let lhs = (m as f64).ln();
    let rhs = (s_half as f64).ln() - (s_m as f64).ln() / m as f64 + 1.0;
    Ok(BqReport {
        lhs,
        rhs,
        s_half,
        s_m,
        holds: lhs <= rhs + 1e-12,
    })
}

/// Extract a periodic orbit of period at most `n` from a finite sample:
/// build the digraph of `n^{-tau}`-pseudo-transitions, take a shortest
/// cycle, and read off the word of 0th symbols. Distances below
/// `n^{-tau} <= 1` force symbol agreement on a window whose radius grows
/// with n, so the spliced word is admissible and its exact periodic orbit
/// stays within `n^{-tau}` of the sample.
pub fn closing_periodic_orbit(
    points: &[Point],
    n: usize,
    tau: f64,
    sft: &Sft,
) -> Result<PeriodicWord> {
    if points.is_empty() {
        return Err(Error::PreconditionViolated("point sample is empty".into()));
    }
    if n == 0 {
        return Err(Error::PreconditionViolated("n must be at least 1".into()));
    }
    if !(tau >= 0.0) {
        return Err(Error::PreconditionViolated(format!(
            "tau must be nonnegative, got {tau}"
        )));
    }
    let epsilon = (n as f64).powf(-tau);
    let adj = pseudoorbit_edges(points, epsilon, 1, sft);
    let cycle = shortest_cycle(&adj)
        .ok_or_else(|| Error::NotFound(format!("no periodic pseudoorbit at epsilon {epsilon}")))?;
    if cycle.len() > n {
        return Err(Error::NotFound(format!(
            "shortest pseudoorbit period {} exceeds n = {n}",
            cycle.len()
        )));
    }
    let word: Vec<u8> = cycle.iter().map(|&i| points[i].symbol(0)).collect();
    // pseudo-transitions at epsilon <= 1 imply (x_i)_1 = (x_j)_0, so every
    // consecutive pair of the spliced word is an admissible transition
    let word = PeriodicWord::new(sft, word)?;
    Ok(word.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn full2() -> Sft {
        Sft::full_shift(2, 1.0).unwrap()
    }

    fn golden_mean() -> Sft {
        // forbid the word 11
        Sft::new(2, vec![vec![1, 1], vec![1, 0]], 1.0).unwrap()
    }

    fn random_point(sft: &Sft, rng: &mut ChaCha8Rng, core_len: usize) -> Point {
        let n = sft.alphabet_size() as u8;
        let admissible_follow = |rng: &mut ChaCha8Rng, a: Option<u8>| -> u8 {
            loop {
                let b = rng.random_range(0..n);
                if a.is_none_or(|a| sft.allows(a, b)) {
                    return b;
                }
            }
        };
        loop {
            let mut core = Vec::new();
            for _ in 0..core_len {
                let prev = core.last().copied();
                core.push(admissible_follow(rng, prev));
            }
            let left = vec![admissible_follow(rng, None)];
            let right = vec![admissible_follow(rng, None)];
            let origin = rng.random_range(-3..3);
            if let Ok(p) = Point::new(sft, left, core, right, origin) {
                return p;
            }
        }
    }

    #[test]
    fn distance_identical_is_zero() {
        let sft = full2();
        let x = Point::parse(&sft, "0", "01", "0", 0).unwrap();
        assert_eq!(distance(&sft, &x, &x), 0.0);
    }

    #[test]
    fn distance_mismatch_at_origin_is_one() {
        let sft = full2();
        let x = Point::fixed(&sft, 0).unwrap();
        let y = Point::fixed(&sft, 1).unwrap();
        assert_eq!(distance(&sft, &x, &y), 1.0);
    }

    #[test]
    fn distance_formula_at_depth_two() {
        let sft = full2();
        let x = Point::fixed(&sft, 0).unwrap();
        // differs from 0^inf first at index 2
        let y = Point::parse(&sft, "0", "001", "0", 0).unwrap();
        let d = distance(&sft, &x, &y);
        assert!((d - (-2.0f64).exp()).abs() < 1e-15, "d = {d}");
    }

    #[test]
    fn distance_picks_nearest_side() {
        let sft = full2();
        // mismatch at -1 and at +3: k should be 1
        let x = Point::fixed(&sft, 0).unwrap();
        let y = Point::parse(&sft, "0", "10001", "0", -1).unwrap();
        assert_eq!(y.symbol(-1), 1);
        assert_eq!(y.symbol(3), 1);
        let d = distance(&sft, &x, &y);
        assert!((d - (-1.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn representation_equality_is_semantic() {
        let sft = full2();
        let a = Point::parse(&sft, "01", "0110", "10", -2).unwrap();
        // same sequence with one period absorbed into the core on each side
        let b = Point::parse(&sft, "01", "01011010", "10", -4).unwrap();
        assert_eq!(a.window(-8, 8), b.window(-8, 8));
        assert_eq!(a, b);
        let c = Point::parse(&sft, "10", "100", "01", -1).unwrap();
        let d = Point::parse(&sft, "01", "0100", "01", -2).unwrap();
        assert_eq!(c.window(-6, 6), d.window(-6, 6));
        assert_eq!(c, d);
    }

    #[test]
    fn shift_fixed_point_invariant() {
        let sft = full2();
        let x = Point::fixed(&sft, 0).unwrap();
        assert_eq!(x.shift(5), x);
    }

    #[test]
    fn shift_round_trip() {
        let sft = full2();
        let x = Point::parse(&sft, "0", "0110", "1", -2).unwrap();
        assert_eq!(x.shift(3).shift(-3), x);
    }

    #[test]
    fn shift_moves_marked_symbol() {
        let sft = full2();
        let q = Point::parse(&sft, "0", "1", "0", 0).unwrap();
        assert_eq!(q.symbol(0), 1);
        let shifted = q.shift(1);
        assert_eq!(shifted.symbol(-1), 1);
        assert_eq!(shifted.symbol(0), 0);
    }

    #[test]
    fn bracket_of_point_with_itself() {
        let sft = full2();
        let x = Point::parse(&sft, "0", "0101", "1", -1).unwrap();
        assert_eq!(bracket(&sft, &x, &x).unwrap(), x);
    }

    #[test]
    fn bracket_splices_past_and_future() {
        let sft = full2();
        let p = Point::fixed(&sft, 0).unwrap();
        let q = Point::parse(&sft, "0", "01", "0", 0).unwrap();
        // q_0 = 0 = p_0; bracket(p, q) has no 1s in the past, q's future
        let z = bracket(&sft, &p, &q).unwrap();
        assert_eq!(z, q);
        let z2 = bracket(&sft, &q, &p).unwrap();
        assert_eq!(z2, p);
    }

    #[test]
    fn bracket_membership_window() {
        let sft = golden_mean();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let x = random_point(&sft, &mut rng, 5);
            let y = random_point(&sft, &mut rng, 5);
            if x.symbol(0) != y.symbol(0) {
                assert!(bracket(&sft, &x, &y).is_err());
                continue;
            }
            let z = bracket(&sft, &x, &y).unwrap();
            for n in -50..=0i64 {
                assert_eq!(z.symbol(n), x.symbol(n), "unstable side at {n}");
            }
            for n in 0..=50i64 {
                assert_eq!(z.symbol(n), y.symbol(n), "stable side at {n}");
            }
            assert!(z.in_local_unstable_of(&x));
            assert!(z.in_local_stable_of(&y));
        }
    }

    #[test]
    fn ultrametric_inequality() {
        let sft = full2();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let x = random_point(&sft, &mut rng, 4);
            let y = random_point(&sft, &mut rng, 4);
            let z = random_point(&sft, &mut rng, 4);
            let dxz = distance(&sft, &x, &z);
            let dxy = distance(&sft, &x, &y);
            let dyz = distance(&sft, &y, &z);
            assert!(dxz <= dxy.max(dyz) + 1e-15);
        }
    }

    #[test]
    fn shift_expansion_and_stable_contraction() {
        let sft = full2();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let lam = sft.lambda();
        for _ in 0..300 {
            let x = random_point(&sft, &mut rng, 4);
            let y = random_point(&sft, &mut rng, 4);
            let d0 = distance(&sft, &x, &y);
            let d1 = distance(&sft, &x.shift(1), &y.shift(1));
            assert!(d1 <= lam.exp() * d0 + 1e-15);
            if y.symbol(0) == x.symbol(0) {
                // bracket(y, x) shares x's future, so it lies on W^s_loc(x)
                let ys = bracket(&sft, &y, &x).unwrap();
                assert!(ys.in_local_stable_of(&x));
                let e0 = distance(&sft, &x, &ys);
                let e1 = distance(&sft, &x.shift(1), &ys.shift(1));
                assert!(e1 <= (-lam).exp() * e0 + 1e-15, "contraction on stable set");
            }
        }
    }

    #[test]
    fn enumerate_words_full_shift_small() {
        let sft = full2();
        let w1: Vec<String> = enumerate_periodic_words(&sft, 1)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(w1, vec!["0", "1"]);
        let w2: Vec<String> = enumerate_periodic_words(&sft, 2)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(w2, vec!["0", "1", "01"]);
    }

    #[test]
    fn enumerate_words_golden_mean() {
        let sft = golden_mean();
        let w2: Vec<String> = enumerate_periodic_words(&sft, 2)
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(w2, vec!["0", "01"]);
    }

    /// Counting oracle: sum over divisors j of k of j * (number of primitive
    /// orbit classes of length j) equals trace(transitions^k).
    #[test]
    fn enumerate_words_trace_oracle() {
        for sft in [full2(), golden_mean(), Sft::full_shift(3, 1.0).unwrap()] {
            let n = sft.alphabet_size();
            let words = enumerate_periodic_words(&sft, 6);
            for k in 1..=6usize {
                let mut pow = vec![vec![0u64; n]; n];
                for (i, row) in pow.iter_mut().enumerate() {
                    row[i] = 1;
                }
                for _ in 0..k {
                    let mut next = vec![vec![0u64; n]; n];
                    for (next_row, pow_row) in next.iter_mut().zip(&pow) {
                        for (coeff, trans_row) in pow_row.iter().zip(sft.transitions()) {
                            for (cell, &t) in next_row.iter_mut().zip(trans_row) {
                                *cell += coeff * t as u64;
                            }
                        }
                    }
                    pow = next;
                }
                let trace: u64 = (0..n).map(|i| pow[i][i]).sum();
                let counted: u64 = words
                    .iter()
                    .filter(|w| k % w.period() == 0)
                    .map(|w| w.period() as u64)
                    .sum();
                assert_eq!(counted, trace, "k = {k}");
            }
        }
    }

    #[test]
    fn pseudoorbit_period_fixed_point() {
        let sft = full2();
        let p = Point::fixed(&sft, 0).unwrap();
        assert_eq!(min_pseudoorbit_period(&[p], 1e-6, 1, &sft).unwrap(), 1);
    }

    #[test]
    fn pseudoorbit_period_two_cycle() {
        let sft = full2();
        let w = PeriodicWord::parse(&sft, "01").unwrap();
        let x = w.point(&sft);
        let y = x.shift(1);
        let pts = [x, y];
        assert_eq!(min_pseudoorbit_period(&pts, 1e-6, 1, &sft).unwrap(), 2);
    }

    #[test]
    fn pseudoorbit_period_large_epsilon() {
        let sft = full2();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<Point> = (0..6).map(|_| random_point(&sft, &mut rng, 4)).collect();
        assert_eq!(min_pseudoorbit_period(&pts, 1.5, 1, &sft).unwrap(), 1);
    }

    #[test]
    fn pseudoorbit_acyclic_detected() {
        let sft = full2();
        // a transient point and a far shift of it: the shift map moves both
        // off the sample, so no pseudo-transition exists at small epsilon
        let x = Point::parse(&sft, "0", "1", "0", 0).unwrap();
        let y = x.shift(5);
        let err = min_pseudoorbit_period(&[x, y], 1e-9, 1, &sft).unwrap_err();
        assert!(matches!(err, Error::NoPseudoorbit(_)));
    }

    #[test]
    fn separated_set_trivials() {
        let sft = full2();
        let p = Point::fixed(&sft, 0).unwrap();
        assert_eq!(max_separated_set(std::slice::from_ref(&p), 0.5, 1, &sft), 1);
        // p and a point equal to p out to index 9: distance e^{-10}
        let q = Point::parse(&sft, "0", "00000000001", "0", 0).unwrap();
        let far = Point::fixed(&sft, 1).unwrap();
        assert_eq!(max_separated_set(&[p.clone(), q.clone()], 1e-3, 1, &sft), 1);
        assert_eq!(max_separated_set(&[p, q, far], 1e-3, 1, &sft), 2);
    }

    #[test]
    fn separated_set_below_min_distance_counts_all() {
        let sft = full2();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let pts: Vec<Point> = (0..8).map(|_| random_point(&sft, &mut rng, 3)).collect();
        let mut min_d = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d = distance(&sft, &pts[i], &pts[j]);
                if d > 0.0 {
                    min_d = min_d.min(d);
                }
            }
        }
        let distinct = {
            let mut kept: Vec<&Point> = Vec::new();
            for p in &pts {
                if kept.iter().all(|q| !q.same_sequence(p)) {
                    kept.push(p);
                }
            }
            kept.len()
        };
        assert_eq!(max_separated_set(&pts, min_d * 0.99, 1, &sft), distinct);
    }

    #[test]
    fn greedy_matches_exact_on_small_samples() {
        // exact search must never fall below the greedy lower bound; on these
        // small ultrametric samples they agree
        let sft = full2();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..50 {
            let pts: Vec<Point> = (0..10).map(|_| random_point(&sft, &mut rng, 3)).collect();
            let eps = [0.01, 0.05, 0.2, 0.5][rng.random_range(0..4)];
            let exact = max_separated_set(&pts, eps, 1, &sft);
            let mut kept: Vec<usize> = Vec::new();
            for i in 0..pts.len() {
                if kept
                    .iter()
                    .all(|&j| distance(&sft, &pts[i], &pts[j]) >= eps)
                {
                    kept.push(i);
                }
            }
            assert!(exact >= kept.len());
        }
    }

    #[test]
    fn bq_check_m_one_direct() {
        let sft = full2();
        // transient points (no pseudoorbit at this epsilon), so R is infinite
        let x = Point::parse(&sft, "0", "1", "0", 0).unwrap();
        let y = x.shift(5);
        let r = bq_inequality_check(1, 1e-6, &[x, y], &sft).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert_eq!(r.s_half, 2);
        assert!(r.holds);
    }

    #[test]
    fn bq_check_rejects_small_period() {
        let sft = full2();
        let p = Point::fixed(&sft, 0).unwrap();
        let err = bq_inequality_check(1, 0.5, &[p], &sft).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn bq_check_single_point_vacuous() {
        let sft = full2();
        // a single non-fixed point: its shift moves distance 1 away, so no
        // pseudoorbit exists at tiny epsilon and the check is vacuous
        let q = Point::parse(&sft, "0", "0111", "1", 0).unwrap();
        let r = bq_inequality_check(2, 1e-6, &[q], &sft).unwrap();
        assert_eq!(r.s_half, 1);
        assert_eq!(r.s_m, 1);
        assert!(r.holds);
    }

    #[test]
    fn closing_fixed_point_orbit() {
        let sft = full2();
        let p = Point::fixed(&sft, 0).unwrap();
        let w = closing_periodic_orbit(&[p], 4, 1.0, &sft).unwrap();
        assert_eq!(w.to_string(), "0");
    }

    #[test]
    fn closing_period_two_orbit() {
        let sft = full2();
        let x = PeriodicWord::parse(&sft, "01").unwrap().point(&sft);
        let y = x.shift(1);
        let w = closing_periodic_orbit(&[x, y], 4, 1.0, &sft).unwrap();
        assert_eq!(w.to_string(), "01");
    }

    #[test]
    fn closing_aperiodic_sample_shadows() {
        let sft = full2();
        let n = 8usize;
        let tau = 1.0;
        // a long orbit segment of an aperiodic-looking point
        let base = Point::parse(&sft, "0", "0110101100101110", "1", 0).unwrap();
        let sample: Vec<Point> = (0..24).map(|i| base.shift(i)).collect();
        let w = closing_periodic_orbit(&sample, n, tau, &sft).unwrap();
        assert!(w.period() <= n);
        // post hoc: every orbit point of w stays within n^{-tau} of the sample
        let eps = (n as f64).powf(-tau);
        let p = w.point(&sft);
        for j in 0..w.period() as i64 {
            let orbit_pt = p.shift(j);
            let nearest = sample
                .iter()
                .map(|s| distance(&sft, &orbit_pt, s))
                .fold(f64::INFINITY, f64::min);
            assert!(
                nearest <= eps,
                "orbit point {j} at distance {nearest} > {eps}"
            );
        }
    }

    #[test]
    fn closing_rejects_overlong_period() {
        let sft = full2();
        // period-3 orbit but n = 2 allows only periods up to 2
        let x = PeriodicWord::parse(&sft, "011").unwrap().point(&sft);
        let pts: Vec<Point> = (0..3).map(|i| x.shift(i)).collect();
        let err = closing_periodic_orbit(&pts, 2, 2.0, &sft).unwrap_err();
        assert!(matches!(err, Error::NotFound(_)));
    }

    #[test]
    fn stable_unstable_predicates() {
        let sft = full2();
        let x = Point::fixed(&sft, 0).unwrap();
        // all 1s in the past, a lone 1 at index 1, 0s from index 2 on
        let y = Point::parse(&sft, "1", "01", "0", 0).unwrap();
        assert!(y.in_stable_set_of(&x));
        assert!(!y.in_local_stable_of(&x));
        assert!(!y.in_unstable_set_of(&x));
        assert_eq!(y.stable_sync_index(&x), Some(2));
        let z = Point::parse(&sft, "0", "011", "1", 0).unwrap();
        assert!(z.in_unstable_set_of(&x));
        assert!(z.in_local_unstable_of(&x));
        assert_eq!(z.unstable_sync_index(&x), Some(0));
    }

    #[test]
    fn serde_round_trip() {
        let sft = full2();
        let json = serde_json::to_string(&sft).unwrap();
        let back: Sft = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sft);
        let p = Point::parse(&sft, "0", "01", "0", 0).unwrap();
        let pj = serde_json::to_string(&p).unwrap();
        assert!(pj.contains("\"origin\":0"));
        let pk: Point = serde_json::from_str(&pj).unwrap();
        assert_eq!(pk, p);
        let w = PeriodicWord::parse(&sft, "01").unwrap();
        assert_eq!(serde_json::to_string(&w).unwrap(), "\"01\"");
    }

    #[test]
    fn sft_rejects_dead_symbols() {
        let err = Sft::new(2, vec![vec![1, 0], vec![1, 0]], 1.0).unwrap_err();
        assert!(matches!(err, Error::PreconditionViolated(_)));
    }

    #[test]
    fn point_rejects_forbidden_transitions() {
        let sft = golden_mean();
        assert!(Point::parse(&sft, "0", "11", "0", 0).is_err());
        assert!(
            Point::parse(&sft, "1", "", "0", 0).is_err(),
            "11 inside left period loop"
        );
        assert!(Point::parse(&sft, "0", "1", "0", 0).is_ok());
    }

    #[test]
    fn point_through_lands_on_the_symbol() {
        let gm = golden_mean();
        for s in 0..2 {
            let p = point_through(&gm, s).unwrap();
            assert_eq!(p.symbol(0), s);
            p.validate(&gm).unwrap();
        }
        // a symbol off every cycle still gets a valid point through it
        let sft = Sft::new(3, vec![vec![0, 1, 0], vec![0, 1, 0], vec![1, 0, 1]], 1.0).unwrap();
        let p = point_through(&sft, 0).unwrap();
        assert_eq!(p.symbol(0), 0);
        p.validate(&sft).unwrap();
        assert!(point_through(&sft, 7).is_err());
    }
}
