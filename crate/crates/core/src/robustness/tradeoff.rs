use crate::error::{Error, Result};

/// Weights of the robustness/cost tradeoff, each in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TradeoffParams {
    pub alpha_tol: f64,
    pub beta_tol: f64,
    pub delta_tol: f64,
    pub gamma_tol: f64,
}

impl Default for TradeoffParams {
    fn default() -> Self {
        TradeoffParams {
            alpha_tol: 1.0,
            beta_tol: 1.0,
            delta_tol: 1.0,
            gamma_tol: 1.0,
        }
    }
}

impl TradeoffParams {
    pub fn validate(&self) -> Result<()> {
        for (name, w) in [
            ("alpha_tol", self.alpha_tol),
            ("beta_tol", self.beta_tol),
            ("delta_tol", self.delta_tol),
            ("gamma_tol", self.gamma_tol),
        ] {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::param(format!("{name} = {w} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Link cost relative to a spanning tree: 0 for `m <= n - 1`, rising toward
/// 1 as links are added.
pub fn density_penalty(n: u64, m: u64) -> f64 {
    if m + 1 <= n {
        return 0.0;
    }
    let extra = (m - (n - 1)) as f64;
    1.0 - (-0.5 * extra / n as f64).exp()
}

/// Weighted robustness under random, degree and betweenness attacks, less
/// the weighted link cost.
pub fn tradeoff_re(
    elas_r: f64,
    elas_d: f64,
    elas_b: f64,
    n: u64,
    m: u64,
    params: &TradeoffParams,
) -> Result<f64> {
    params.validate()?;
    if n < 2 {
        return Err(Error::param(format!("tradeoff needs at least 2 nodes, got {n}")));
    }
    let ceiling = 1.0 / 3.0 + 1.0 / (2.0 * n as f64);
    for (name, e) in [("elas_r", elas_r), ("elas_d", elas_d), ("elas_b", elas_b)] {
        if !(0.0..=ceiling).contains(&e) {
            return Err(Error::param(format!("{name} = {e} outside [0, {ceiling}]")));
        }
    }
    Ok(params.alpha_tol * elas_r + params.beta_tol * elas_d + params.delta_tol * elas_b
        - params.gamma_tol * density_penalty(n, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_rows() {
        let p = TradeoffParams::default();
        let hot = tradeoff_re(0.1623, 0.0095, 0.0048, 1000, 1049, &p).unwrap();
        assert!((hot - 0.15191).abs() < 5e-5, "{hot}");
        let ring = tradeoff_re(0.1290, 0.0040, 0.0026, 1000, 1000, &p).unwrap();
        assert!((ring - 0.1351).abs() < 5e-5, "{ring}");
        let abilene = tradeoff_re(0.1280, 0.0093, 0.0031, 886, 896, &p).unwrap();
        assert!((abilene - 0.1342).abs() < 5e-5, "{abilene}");
    }

    #[test]
    fn tree_pays_nothing() {
        assert_eq!(density_penalty(100, 99), 0.0);
        assert_eq!(density_penalty(100, 50), 0.0);
        assert!(density_penalty(100, 100) > 0.0);
    }

    #[test]
    fn penalty_grows_with_links() {
        let mut last = -1.0;
        for m in 0..3000 {
            let d = density_penalty(1000, m);
            assert!(d >= last && d < 1.0);
            last = d;
        }
    }

    #[test]
    fn zero_gamma_ignores_links() {
        let p = TradeoffParams { gamma_tol: 0.0, ..TradeoffParams::default() };
        let a = tradeoff_re(0.1, 0.1, 0.1, 50, 49, &p).unwrap();
        let b = tradeoff_re(0.1, 0.1, 0.1, 50, 1000, &p).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_bad_inputs() {
        let p = TradeoffParams::default();
        assert!(tradeoff_re(-0.1, 0.0, 0.0, 10, 10, &p).is_err());
        assert!(tradeoff_re(0.5, 0.0, 0.0, 1000, 10, &p).is_err());
        assert!(tradeoff_re(f64::NAN, 0.0, 0.0, 10, 10, &p).is_err());
        assert!(tradeoff_re(0.1, 0.0, 0.0, 1, 0, &p).is_err());
        let neg = TradeoffParams { beta_tol: -1.0, ..p };
        assert!(tradeoff_re(0.1, 0.0, 0.0, 10, 10, &neg).is_err());
        let big = TradeoffParams { gamma_tol: 1.5, ..p };
        assert!(tradeoff_re(0.1, 0.0, 0.0, 10, 10, &big).is_err());
    }
}
