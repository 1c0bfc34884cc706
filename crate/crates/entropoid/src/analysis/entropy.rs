use crate::error::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-12;

fn validate(probs: &[f64]) -> Result<()> {
    if probs.is_empty() {
        return Err(Error::BadDistribution("empty".into()));
    }
    if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
        return Err(Error::BadDistribution(format!("entry {p}")));
    }
    let s: f64 = probs.iter().sum();
    if (s - 1.0).abs() > SUM_TOLERANCE {
        return Err(Error::BadDistribution(format!("sums to {s}")));
    }
    Ok(())
}

/// `-sum p log2 p`, skipping zero entries.
pub fn entropy_shannon(probs: &[f64]) -> Result<f64> {
    validate(probs)?;
    let h: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    Ok(h.max(0.0))
}

/// Renyi entropy of order `alpha`. Order 1 is Shannon and infinity is min-entropy.
pub fn entropy_renyi(probs: &[f64], alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::BadDistribution(format!("order {alpha}")));
    }
    if alpha == 1.0 {
        return entropy_shannon(probs);
    }
    if alpha.is_infinite() {
        return entropy_min(probs);
    }
    validate(probs)?;
    let s: f64 = probs.iter().filter(|&&p| p > 0.0).map(|&p| p.powf(alpha)).sum();
    Ok((s.log2() / (1.0 - alpha)).max(0.0))
}

/// `-log2 max p`.
pub fn entropy_min(probs: &[f64]) -> Result<f64> {
    validate(probs)?;
    let m = probs.iter().cloned().fold(0.0, f64::max);
    Ok((-m.log2()).max(0.0))
}

/// Class sizes to probabilities. Computed from integer counts so the three
/// entropies of one census share exactly the same inputs.
pub fn probabilities(sizes: &[u64]) -> Vec<f64> {
    let total: u64 = sizes.iter().sum();
    sizes.iter().map(|&n| n as f64 / total as f64).collect()
}
