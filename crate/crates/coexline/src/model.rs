//! Model vocabulary: boundary rates, the (a, b) reparameterization,
//! occupation vectors, height functions, and the half-integer minimizer.
//!
//! The open TASEP on sites `{1, ..., n}` injects particles at site 1 with
//! rate `alpha`, ejects at site `n` with rate `beta`, and moves particles one
//! site to the right at rate 1 when the target is free. All sampling in this
//! crate works in the reparameterization `a = (1 - alpha)/alpha`,
//! `b = (1 - beta)/beta`.

use crate::error::{Error, Result};

/// Jump rates of the open ASEP. Only `alpha`, `beta` drive any sampling here;
/// `gamma`, `delta`, `q` exist so the general parameter map can be evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryRates {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub q: f64,
}

impl BoundaryRates {
    /// Open TASEP rates (`gamma = delta = q = 0`).
    pub fn tasep(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, 0.0, 0.0, 0.0)
    }

    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, q: f64) -> Result<Self> {
        if !(alpha > 0.0) || !(beta > 0.0) {
            return Err(Error::domain(format!(
                "boundary rates require alpha > 0 and beta > 0, got alpha={alpha}, beta={beta}"
            )));
        }
        if gamma < 0.0 || delta < 0.0 || q < 0.0 {
            return Err(Error::domain("gamma, delta, q must be nonnegative"));
        }
        Ok(Self { alpha, beta, gamma, delta, q })
    }
}

/// The pair `(a, b)` with `alpha = 1/(1+a)`, `beta = 1/(1+b)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepParams {
    pub a: f64,
    pub b: f64,
}

impl RepParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a > 0.0) || !(b > 0.0) {
            return Err(Error::domain(format!("rep params require a, b > 0, got a={a}, b={b}")));
        }
        Ok(Self { a, b })
    }

    /// Coexistence-line parameters (`a = b`). The limit theorems additionally
    /// need `a > 1`, which the statistics layer enforces where it matters.
    pub fn symmetric(a: f64) -> Result<Self> {
        Self::new(a, a)
    }

    pub fn alpha(&self) -> f64 {
        1.0 / (1.0 + self.a)
    }

    pub fn beta(&self) -> f64 {
        1.0 / (1.0 + self.b)
    }
}

/// Which root of the quadratic the parameter map takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaSign {
    Plus,
    Minus,
}

/// General boundary-parameter map
/// `kappa_{+/-}(x, y) = (1 - q - x + y +/- sqrt((1 - q - x + y)^2 + 4xy)) / (2x)`.
///
/// `kappa_plus >= kappa_minus` always; with `y = 0` one of the two is 0.
pub fn kappa_pm(x: f64, y: f64, q: f64, sign: KappaSign) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("kappa requires x > 0, got x={x}")));
    }
    if y < 0.0 {
        return Err(Error::domain(format!("kappa requires y >= 0, got y={y}")));
    }
    if !(0.0..1.0).contains(&q) {
        return Err(Error::domain(format!("kappa requires 0 <= q < 1, got q={q}")));
    }
    let u = 1.0 - q - x + y;
    let root = (u * u + 4.0 * x * y).sqrt();
    let num = match sign {
        KappaSign::Plus => u + root,
        KappaSign::Minus => u - root,
    };
    Ok(num / (2.0 * x))
}

/// Maps TASEP boundary rates to `(a, b) = ((1-alpha)/alpha, (1-beta)/beta)`.
///
/// Requires the open-TASEP regime `0 < alpha, beta < 1` and
/// `gamma = delta = q = 0`; agrees with `kappa_pm(alpha, 0, 0, Plus)` there.
pub fn rep_from_rates(rates: &BoundaryRates) -> Result<RepParams> {
    if rates.gamma != 0.0 || rates.delta != 0.0 || rates.q != 0.0 {
        return Err(Error::domain(
            "rep_from_rates is defined for the TASEP case gamma = delta = q = 0",
        ));
    }
    if !(rates.alpha > 0.0 && rates.alpha < 1.0) || !(rates.beta > 0.0 && rates.beta < 1.0) {
        return Err(Error::domain(format!(
            "rep_from_rates requires alpha, beta in (0, 1), got alpha={}, beta={}",
            rates.alpha, rates.beta
        )));
    }
    RepParams::new(
        (1.0 - rates.alpha) / rates.alpha,
        (1.0 - rates.beta) / rates.beta,
    )
}

/// A `{0,1}`-valued occupation configuration of `n >= 1` sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupationVector {
    tau: Vec<u8>,
}

impl OccupationVector {
    pub fn new(tau: Vec<u8>) -> Result<Self> {
        if tau.is_empty() {
            return Err(Error::domain("occupation vector must have n >= 1 sites"));
        }
        if tau.iter().any(|&t| t > 1) {
            return Err(Error::domain("occupation entries must be 0 or 1"));
        }
        Ok(Self { tau })
    }

    pub fn n(&self) -> usize {
        self.tau.len()
    }

    /// Occupation of site `k` (1-based).
    pub fn site(&self, k: usize) -> u8 {
        self.tau[k - 1]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.tau
    }

    /// Height `s_j = tau_1 + ... + tau_j` (with `s_0 = 0`).
    pub fn height(&self, j: usize) -> Result<i64> {
        if j > self.n() {
            return Err(Error::Index { index: j, max: self.n() });
        }
        Ok(self.tau[..j].iter().map(|&t| i64::from(t)).sum())
    }

    /// Smallest `j` minimizing `s_j - j/2` over `j = 0, ..., n`.
    ///
    /// Comparisons run on the doubled integers `2 s_j - j`, so ties and
    /// half-integers are exact.
    pub fn tau_star(&self) -> usize {
        first_argmin_doubled(self.tau.iter().map(|&t| i64::from(t)))
    }
}

/// First argmin of `2 s_j - j` over `j = 0, ..., n`, where `s_j` are the
/// partial sums of the given increments. Shared by `tau_star` and the
/// sampler-side minimizer so the two can never drift apart.
pub(crate) fn first_argmin_doubled(increments: impl Iterator<Item = i64>) -> usize {
    let mut best_val = 0_i64; // j = 0 term
    let mut best_j = 0_usize;
    let mut doubled = 0_i64;
    for (idx, inc) in increments.enumerate() {
        let j = idx + 1;
        doubled += 2 * inc - 1; // 2 s_j - j steps by 2*inc - 1
        if doubled < best_val {
            best_val = doubled;
            best_j = j;
        }
    }
    best_j
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn kappa_plus_hand_values() {
        assert_abs_diff_eq!(
            kappa_pm(0.25, 0.0, 0.0, KappaSign::Plus).unwrap(),
            3.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            kappa_pm(0.25, 0.0, 0.0, KappaSign::Minus).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            kappa_pm(0.5, 0.0, 0.0, KappaSign::Plus).unwrap(),
            1.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn kappa_domain_errors() {
        assert!(kappa_pm(0.0, 0.0, 0.0, KappaSign::Plus).is_err());
        assert!(kappa_pm(-0.1, 0.0, 0.0, KappaSign::Plus).is_err());
        assert!(kappa_pm(0.5, 0.0, 1.0, KappaSign::Plus).is_err());
        assert!(kappa_pm(0.5, -0.2, 0.0, KappaSign::Plus).is_err());
    }

    #[test]
    fn kappa_ordering_and_zero_product_at_y0() {
        for &x in &[0.05, 0.3, 0.7, 0.95, 1.5] {
            for &y in &[0.0, 0.1, 1.0] {
                for &q in &[0.0, 0.4, 0.9] {
                    let plus = kappa_pm(x, y, q, KappaSign::Plus).unwrap();
                    let minus = kappa_pm(x, y, q, KappaSign::Minus).unwrap();
                    assert!(plus >= minus, "x={x} y={y} q={q}");
                    if y == 0.0 {
                        assert_abs_diff_eq!(plus * minus, 0.0, epsilon = 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn rep_from_rates_hand_values() {
        let r = rep_from_rates(&BoundaryRates::tasep(0.25, 0.25).unwrap()).unwrap();
        assert_abs_diff_eq!(r.a, 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.b, 3.0, epsilon = 1e-14);

        let r = rep_from_rates(&BoundaryRates::tasep(0.5, 0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(r.a, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.b, 1.0, epsilon = 1e-14);

        let r = rep_from_rates(&BoundaryRates::tasep(0.25, 0.5).unwrap()).unwrap();
        assert_abs_diff_eq!(r.a, 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r.b, 1.0, epsilon = 1e-14);

        assert!(rep_from_rates(&BoundaryRates::tasep(1.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn rep_agrees_with_kappa_on_grid() {
        let mut alpha = 0.01;
        while alpha < 0.99 {
            let a = (1.0 - alpha) / alpha;
            let k = kappa_pm(alpha, 0.0, 0.0, KappaSign::Plus).unwrap();
            assert!(
                (a - k).abs() <= 1e-12 * a.max(1.0),
                "alpha={alpha}: a={a}, kappa={k}"
            );
            alpha += 0.007;
        }
    }

    #[test]
    fn height_examples() {
        let tau = OccupationVector::new(vec![1, 0, 1]).unwrap();
        assert_eq!(tau.height(3).unwrap(), 2);
        assert_eq!(tau.height(0).unwrap(), 0);
        assert!(tau.height(4).is_err());

        let zeros = OccupationVector::new(vec![0, 0, 0, 0]).unwrap();
        assert_eq!(zeros.height(4).unwrap(), 0);

        // nondecreasing with unit steps
        let tau = OccupationVector::new(vec![1, 1, 0, 1, 0]).unwrap();
        for j in 1..=tau.n() {
            let d = tau.height(j).unwrap() - tau.height(j - 1).unwrap();
            assert!(d == 0 || d == 1);
        }
    }

    #[test]
    fn tau_star_examples() {
        let t = |v: Vec<u8>| OccupationVector::new(v).unwrap().tau_star();
        assert_eq!(t(vec![1, 1, 1]), 0);
        assert_eq!(t(vec![0, 0, 1, 1]), 2);
        assert_eq!(t(vec![0, 1, 0, 1]), 1);
    }

    #[test]
    fn tau_star_is_first_minimizer() {
        // exhaustive over {0,1}^10
        for code in 0_u32..(1 << 10) {
            let tau: Vec<u8> = (0..10).map(|k| ((code >> k) & 1) as u8).collect();
            let occ = OccupationVector::new(tau).unwrap();
            let star = occ.tau_star();
            let doubled =
                |j: usize| 2 * occ.height(j).unwrap() - j as i64;
            let best = doubled(star);
            for j in 0..=occ.n() {
                assert!(doubled(j) >= best);
                if j < star {
                    assert!(doubled(j) > best, "not the first minimizer at code {code}");
                }
            }
        }
    }

    #[test]
    fn occupation_rejects_bad_entries() {
        assert!(OccupationVector::new(vec![]).is_err());
        assert!(OccupationVector::new(vec![0, 2]).is_err());
    }
}
