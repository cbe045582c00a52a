//! Small statistics utilities: the two-sample Kolmogorov-Smirnov test used
//! by the distributional checks, and a Poisson counter for the direct
//! reward-model sampler.

use rand::Rng;

use crate::error::{Error, Result};

/// Two-sample Kolmogorov-Smirnov outcome at a fixed significance level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsTest {
    pub statistic: f64,
    pub critical: f64,
    pub reject: bool,
}

/// Two-sample KS test: `D = sup |F_a - F_b|` against the large-sample
/// critical value `c(alpha) sqrt((n + m) / (n m))` with
/// `c(alpha) = sqrt(-ln(alpha / 2) / 2)`.
pub fn two_sample_ks(a: &[f64], b: &[f64], alpha: f64) -> KsTest {
    assert!(!a.is_empty() && !b.is_empty(), "KS needs nonempty samples");
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.total_cmp(y));
    sb.sort_by(|x, y| x.total_cmp(y));
    let (n, m) = (sa.len(), sb.len());
    let mut i = 0;
    let mut j = 0;
    let mut statistic: f64 = 0.0;
    while i < n && j < m {
        let x = sa[i].min(sb[j]);
        while i < n && sa[i] <= x {
            i += 1;
        }
        while j < m && sb[j] <= x {
            j += 1;
        }
        let gap = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        statistic = statistic.max(gap);
    }
    let c_alpha = (-(alpha / 2.0).ln() / 2.0).sqrt();
    let critical = c_alpha * (((n + m) as f64) / ((n * m) as f64)).sqrt();
    KsTest {
        statistic,
        critical,
        reject: statistic > critical,
    }
}

/// Sample mean and (population) variance in one pass.
pub fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    (mean, var)
}

/// Draws a Poisson count by the product-of-uniforms method; fine for the
/// moderate intensities the reward-model comparisons use.
pub fn poisson_count<R: Rng + ?Sized>(rng: &mut R, nu: f64) -> Result<u64> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::InvalidParameter(
            "poisson intensity must be finite and >= 0".into(),
        ));
    }
    if nu > 600.0 {
        return Err(Error::InvalidParameter(
            "poisson intensity too large for the product method".into(),
        ));
    }
    let threshold = (-nu).exp();
    let mut product = 1.0;
    let mut count = 0u64;
    loop {
        product *= rng.random::<f64>();
        if product <= threshold {
            return Ok(count);
        }
        count += 1;
    }
}
