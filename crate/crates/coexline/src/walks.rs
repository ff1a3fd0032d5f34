//! Lazy nearest-neighbor walks: the step law `nu_a`, survival probabilities,
//! exact sampling of walks conditioned to stay non-negative, and the
//! Bernoulli coupling that turns `{-1,0,1}` walks into `{0,1}` walks.

use rand::Rng;

use crate::error::{Error, Result};

/// Default cap on survival-table size. A table of `n_max` steps stores
/// `n_max (n_max + 1) / 2` doubles, so this cap corresponds to ~40 GB; real
/// callers stay far below it and use the rejection sampler for long walks.
pub const DEFAULT_SURVIVAL_CAP: usize = 100_000;

/// Step law of the lazy walk with parameter `a > 0`:
/// `P(+1) = a^2/(a+1)^2`, `P(0) = 2a/(a+1)^2`, `P(-1) = 1/(a+1)^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepLaw {
    pub a: f64,
    pub p_up: f64,
    pub p_zero: f64,
    pub p_down: f64,
}

impl StepLaw {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0) {
            return Err(Error::domain(format!("step law requires a > 0, got a={a}")));
        }
        let denom = (a + 1.0) * (a + 1.0);
        Ok(Self {
            a,
            p_up: a * a / denom,
            p_zero: 2.0 * a / denom,
            p_down: 1.0 / denom,
        })
    }

    /// Mean step, `(a - 1)/(a + 1)`.
    pub fn mean(&self) -> f64 {
        (self.a - 1.0) / (self.a + 1.0)
    }

    /// Per-step variance, `2a/(a+1)^2`.
    pub fn variance(&self) -> f64 {
        2.0 * self.a / ((self.a + 1.0) * (self.a + 1.0))
    }

    /// One unconditioned step; consumes exactly one uniform draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> i64 {
        let u: f64 = rng.random();
        if u < self.p_up {
            1
        } else if u < self.p_up + self.p_zero {
            0
        } else {
            -1
        }
    }
}

/// Constructs the step law for parameter `a`.
pub fn step_law(a: f64) -> Result<StepLaw> {
    StepLaw::new(a)
}

/// The path weight `w_a = a/4 + 1/(4a) + 1/2 = (a+1)^2 / (4a)`.
pub fn weight_w(a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain(format!("weight requires a > 0, got a={a}")));
    }
    Ok(a / 4.0 + 1.0 / (4.0 * a) + 0.5)
}

/// A walk path `(s_0 = 0, s_1, ..., s_m)` with increments in `{-1, 0, 1}`.
///
/// Primed paths produced by [`couple_primed`] have increments restricted to
/// `{0, 1}` (right) or `{-1, 0}` (left); the type does not distinguish them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePath {
    values: Vec<i64>,
}

impl LatticePath {
    /// The zero-step path `(0,)`.
    pub fn empty() -> Self {
        Self { values: vec![0] }
    }

    pub fn from_values(values: Vec<i64>) -> Result<Self> {
        if values.first() != Some(&0) {
            return Err(Error::domain("lattice path must start at s_0 = 0"));
        }
        if values.windows(2).any(|w| (w[1] - w[0]).abs() > 1) {
            return Err(Error::domain("lattice path increments must lie in {-1, 0, 1}"));
        }
        Ok(Self { values })
    }

    pub fn from_increments<I: IntoIterator<Item = i64>>(increments: I) -> Result<Self> {
        let mut values = vec![0_i64];
        for inc in increments {
            if inc.abs() > 1 {
                return Err(Error::domain("lattice path increments must lie in {-1, 0, 1}"));
            }
            values.push(values.last().unwrap() + inc);
        }
        Ok(Self { values })
    }

    pub(crate) fn from_values_unchecked(values: Vec<i64>) -> Self {
        debug_assert_eq!(values.first(), Some(&0));
        debug_assert!(values.windows(2).all(|w| (w[1] - w[0]).abs() <= 1));
        Self { values }
    }

    /// Number of steps `m` (the value vector has length `m + 1`).
    pub fn steps(&self) -> usize {
        self.values.len() - 1
    }

    /// Position after `j` steps, `0 <= j <= steps()`.
    pub fn value(&self, j: usize) -> i64 {
        self.values[j]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn endpoint(&self) -> i64 {
        *self.values.last().unwrap()
    }

    /// Increment of step `j` (1-based).
    pub fn increment(&self, j: usize) -> i64 {
        self.values[j] - self.values[j - 1]
    }

    pub fn increments(&self) -> impl Iterator<Item = i64> + '_ {
        self.values.windows(2).map(|w| w[1] - w[0])
    }

    pub fn min_value(&self) -> i64 {
        *self.values.iter().min().unwrap()
    }
}

/// Triangular table of survival probabilities `q_r(h)`: the probability that
/// a `nu_a` walk started at height `h >= 0` stays non-negative for `r` steps.
///
/// Only entries with `h < r` are stored; `q_r(h) = 1` whenever `h >= r`.
/// The survival probabilities from zero are `p_l = q_l(0)`.
#[derive(Debug, Clone)]
pub struct SurvivalTable {
    a: f64,
    law: StepLaw,
    n_max: usize,
    // row r occupies tri[r(r-1)/2 .. r(r+1)/2], holding q_r(0..r)
    tri: Vec<f64>,
}

impl SurvivalTable {
    /// Builds the table for `r = 0, ..., n_max` under the default cap.
    pub fn build(a: f64, n_max: usize) -> Result<Self> {
        Self::build_with_cap(a, n_max, DEFAULT_SURVIVAL_CAP)
    }

    pub fn build_with_cap(a: f64, n_max: usize, cap: usize) -> Result<Self> {
        if n_max > cap {
            return Err(Error::ResourceLimit(format!(
                "survival table of {n_max} steps exceeds cap {cap}"
            )));
        }
        let law = StepLaw::new(a)?;
        let mut tri = Vec::with_capacity(n_max * (n_max + 1) / 2);
        for r in 1..=n_max {
            let prev_off = (r - 1) * (r - 2) / 2;
            // reads q_{r-1}(h) with the h >= r-1 => 1 convention
            let prev = |h: usize| -> f64 {
                if h >= r - 1 {
                    1.0
                } else {
                    tri[prev_off + h]
                }
            };
            for h in 0..r {
                let mut q = law.p_up * prev(h + 1) + law.p_zero * prev(h);
                if h > 0 {
                    q += law.p_down * prev(h - 1);
                }
                tri.push(q);
            }
        }
        Ok(Self { a, law, n_max, tri })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn law(&self) -> &StepLaw {
        &self.law
    }

    /// `q_r(h)` for `0 <= r <= n_max`, `h >= 0`.
    pub fn q(&self, r: usize, h: usize) -> f64 {
        assert!(r <= self.n_max, "survival query r={r} beyond table n_max={}", self.n_max);
        if h >= r {
            1.0
        } else {
            self.tri[r * (r - 1) / 2 + h]
        }
    }

    /// Survival probability from zero, `p_l = q_l(0)`.
    pub fn p(&self, l: usize) -> f64 {
        self.q(l, 0)
    }

    /// Debug dump, one row per `r` with `q_r(0), ..., q_r(r-1)`.
    pub fn write_csv<W: std::io::Write>(&self, mut w: W) -> std::io::Result<()> {
        for r in 1..=self.n_max {
            let off = r * (r - 1) / 2;
            let row: Vec<String> =
                self.tri[off..off + r].iter().map(|q| format!("{q}")).collect();
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

/// Builds the survival table; see [`SurvivalTable::build`].
pub fn survival_table(a: f64, n_max: usize) -> Result<SurvivalTable> {
    SurvivalTable::build(a, n_max)
}

/// Exact sampler for the `nu_a` walk conditioned to stay non-negative for
/// `m` steps, by sequential h-transform: at height `h` with `r` steps left,
/// step `w` is drawn with probability `nu_a(w) q_{r-1}(h+w) / q_r(h)`
/// (restricted to `h + w >= 0`). Consumes exactly `m` uniform draws.
pub fn sample_conditioned<R: Rng + ?Sized>(
    a: f64,
    m: usize,
    table: &SurvivalTable,
    rng: &mut R,
) -> Result<LatticePath> {
    if a != table.a {
        return Err(Error::domain(format!(
            "survival table was built for a={}, sampler called with a={a}",
            table.a
        )));
    }
    if m > table.n_max {
        return Err(Error::domain(format!(
            "conditioned sample of {m} steps exceeds table n_max={}",
            table.n_max
        )));
    }
    let law = table.law;
    let mut values = Vec::with_capacity(m + 1);
    values.push(0_i64);
    let mut h = 0_usize;
    for j in 0..m {
        let r = m - j; // steps remaining, including this one
        let w_up = law.p_up * table.q(r - 1, h + 1);
        let w_zero = law.p_zero * table.q(r - 1, h);
        let w_down = if h > 0 { law.p_down * table.q(r - 1, h - 1) } else { 0.0 };
        let total = w_up + w_zero + w_down;
        let u: f64 = rng.random();
        let x = u * total;
        if x < w_up {
            h += 1;
        } else if x >= w_up + w_zero && h > 0 {
            h -= 1;
        }
        values.push(h as i64);
    }
    Ok(LatticePath::from_values_unchecked(values))
}

/// Rejection sampler with the same law as [`sample_conditioned`], valid for
/// `a > 1` where the acceptance probability stays above `1 - 1/a^2`.
pub fn sample_conditioned_rejection<R: Rng + ?Sized>(
    a: f64,
    m: usize,
    rng: &mut R,
) -> Result<LatticePath> {
    sample_conditioned_rejection_counted(a, m, rng).map(|(path, _)| path)
}

/// Rejection sampler that also reports how many trials were consumed.
pub fn sample_conditioned_rejection_counted<R: Rng + ?Sized>(
    a: f64,
    m: usize,
    rng: &mut R,
) -> Result<(LatticePath, u64)> {
    if !(a > 1.0) {
        return Err(Error::domain(format!(
            "rejection sampling requires a > 1 (acceptance vanishes otherwise), got a={a}"
        )));
    }
    let law = StepLaw::new(a)?;
    let mut trials = 0_u64;
    'trial: loop {
        trials += 1;
        let mut values = Vec::with_capacity(m + 1);
        values.push(0_i64);
        let mut h = 0_i64;
        for _ in 0..m {
            h += law.sample(rng);
            if h < 0 {
                continue 'trial;
            }
            values.push(h);
        }
        return Ok((LatticePath::from_values_unchecked(values), trials));
    }
}

/// Which side of the minimum a path feeds; selects the coupling rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Couples a `{-1,0,1}` walk to its primed companion.
///
/// Right side: `+1 -> +1`, `-1 -> 0`, `0 -> coin` with a fresh Bernoulli(1/2)
/// coin per zero step. Left side: `+1 -> 0`, `-1 -> -1`, `0 -> -coin`.
/// Output increments lie in `{0, 1}` (right) or `{-1, 0}` (left).
pub fn couple_primed<R: Rng + ?Sized>(path: &LatticePath, side: Side, rng: &mut R) -> LatticePath {
    let mut values = Vec::with_capacity(path.steps() + 1);
    values.push(0_i64);
    let mut h = 0_i64;
    for inc in path.increments() {
        let primed = match (side, inc) {
            (Side::Right, 1) => 1,
            (Side::Right, -1) => 0,
            (Side::Right, 0) => i64::from(rng.random::<bool>()),
            (Side::Left, 1) => 0,
            (Side::Left, -1) => -1,
            (Side::Left, 0) => -i64::from(rng.random::<bool>()),
            _ => unreachable!("increment out of range"),
        };
        h += primed;
        values.push(h);
    }
    LatticePath::from_values_unchecked(values)
}
