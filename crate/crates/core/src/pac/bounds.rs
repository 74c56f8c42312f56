use crate::error::{Error, Result};

pub const A1: f64 = 2.28;
pub const A2: f64 = 3.92;

/// `A1 · ln(k · A2) · Σ dims`, an upper bound on the VC dimension of a
/// k-fold product whose components have VC dimensions `dims`.
pub fn vc_product_bound(dims: &[u32], k: usize) -> f64 {
    let sum: u32 = dims.iter().sum();
    A1 * (k as f64 * A2).ln() * f64::from(sum)
}

/// `(e·m/d)^d`, valid for `m > d + 1` and `d >= 1`.
pub fn growth_bound(m: u64, d: u32) -> Result<f64> {
    if d < 1 || m <= u64::from(d) + 1 {
        return Err(Error::Domain(format!("growth bound needs m > d + 1 and d >= 1, got m={m}, d={d}")));
    }
    Ok((std::f64::consts::E * m as f64 / f64::from(d)).powi(d as i32))
}

/// An upper bound on the growth function at every `m`: `2^m` where the
/// Sauer–Shelah form does not apply, 1 when `d = 0`.
pub fn growth_term(m: u64, d: u32) -> f64 {
    if d == 0 {
        1.0
    } else {
        growth_bound(m, d).unwrap_or_else(|_| 2f64.powi(m as i32))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PacParams {
    pub epsilon: f64,
    pub delta: f64,
    pub b: f64,
    /// VC dimension of each component class.
    pub dims: Vec<u32>,
}

impl PacParams {
    pub fn new(epsilon: f64, delta: f64, b: f64, dims: Vec<u32>) -> Result<Self> {
        let p = PacParams { epsilon, delta, b, dims };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let open = |v: f64| v > 0.0 && v < 1.0;
        if !open(self.epsilon) || !open(self.delta) || self.b.is_nan() || self.b <= 0.0 {
            return Err(Error::Domain(format!(
                "need epsilon, delta in (0,1) and b > 0, got {}, {}, {}",
                self.epsilon, self.delta, self.b
            )));
        }
        Ok(())
    }

    pub fn d(&self) -> u32 {
        self.dims.iter().sum()
    }

    pub fn sample_size(&self) -> Result<u64> {
        self.validate()?;
        Ok(sample_size(self.b, self.d(), self.epsilon, self.delta))
    }
}

/// `⌈b · (d · ln(1/ε) + ln(1/δ)) / ε⌉`
pub fn sample_size(b: f64, d: u32, epsilon: f64, delta: f64) -> u64 {
    let m = b * (f64::from(d) * (1.0 / epsilon).ln() + (1.0 / delta).ln()) / epsilon;
    m.ceil() as u64
}
