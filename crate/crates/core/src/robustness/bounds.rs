//! Elasticity of the full mesh under node removal, the upper reference
//! against which other topologies are compared.

use crate::error::{Error, Result};

/// Largest `n` for which the exact integer sums below fit in `u128`.
pub const MAX_BOUND_NODES: u64 = 1_000_000_000_000;

/// How many nodes the continuous bound removes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Removal {
    Nodes(u64),
    All,
}

fn check_n(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::param(format!("mesh needs at least 2 nodes, got {n}")));
    }
    if n > MAX_BOUND_NODES {
        return Err(Error::param(format!("n = {n} exceeds {MAX_BOUND_NODES}")));
    }
    Ok(())
}

/// Normalized throughput of the `n`-mesh after removing `k` nodes.
pub fn mesh_normalized_throughput(n: u64, k: u64) -> Result<f64> {
    check_n(n)?;
    if k > n {
        return Err(Error::param(format!("cannot remove {k} of {n} nodes")));
    }
    let rest = (n - k) as u128;
    let pairs = rest * rest.saturating_sub(1);
    Ok(pairs as f64 / (n as u128 * (n as u128 - 1)) as f64)
}

/// `sum_{j=0}^{a} j (j + 1)`, with `a = -1` giving 0.
fn pronic_sum(a: i128) -> u128 {
    if a < 0 {
        return 0;
    }
    let a = a as u128;
    a * (a + 1) * (a + 2) / 3
}

/// Trapezoidal elasticity of the `n`-mesh when `zeta` nodes are removed one
/// at a time.
pub fn mesh_elasticity_discrete(n: u64, zeta: u64) -> Result<f64> {
    check_n(n)?;
    if zeta < 1 || zeta > n {
        return Err(Error::param(format!("zeta = {zeta} outside 1..={n}")));
    }
    let (n128, z) = (n as u128, zeta as u128);
    // sum_{k=1}^{zeta-1} (n-k)(n-k-1) = sum_{j=n-zeta}^{n-2} j(j+1)
    let inner = pronic_sum(n as i128 - 2) - pronic_sum(n as i128 - zeta as i128 - 1);
    let tail = (n128 - z) * (n128 - z).saturating_sub(1);
    // (1/n) [1/2 + inner/(n(n-1)) + tail/(2n(n-1))], over a common denominator.
    let numer = n128 * (n128 - 1) + 2 * inner + tail;
    let denom = 2 * n128 * n128 * (n128 - 1);
    Ok(ratio(numer, denom))
}

/// Integral of the mesh's normalized throughput `(n-x)(n-x-1) / (n(n-1))`
/// over `x` in `[0, zeta]`, divided by `n`.
///
/// Removing every node integrates the curve down to its last connected pair
/// at `x = n - 1`, and counts the remaining unit step at zero height.
pub fn mesh_elasticity_continuous(n: u64, removal: Removal) -> Result<f64> {
    check_n(n)?;
    let nf = n as f64;
    let zeta = match removal {
        Removal::All => n,
        Removal::Nodes(z) if z > n => {
            return Err(Error::param(format!("cannot remove {z} of {n} nodes")))
        }
        Removal::Nodes(z) => z,
    };
    if zeta >= n - 1 {
        return Ok(1.0 / 3.0 - 1.0 / (6.0 * nf) - 1.0 / (6.0 * nf * nf));
    }
    let z = zeta as f64;
    let area = nf * (nf - 1.0) * z - (2.0 * nf - 1.0) * z * z / 2.0 + z * z * z / 3.0;
    Ok(area / (nf * nf * (nf - 1.0)))
}

/// `a / b` for integers too large for an exact `f64`.
fn ratio(a: u128, b: u128) -> f64 {
    let q = a / b;
    let r = a % b;
    q as f64 + r as f64 / b as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_discrete(n: u64, zeta: u64) -> f64 {
        let t = |k: u64| ((n - k) * (n - k).saturating_sub(1)) as f64 / (n * (n - 1)) as f64;
        let mut area = 0.0;
        for k in 0..zeta {
            area += (t(k) + t(k + 1)) / 2.0;
        }
        area / n as f64
    }

    #[test]
    fn discrete_matches_summation() {
        for n in 2..40 {
            for zeta in 1..=n {
                let got = mesh_elasticity_discrete(n, zeta).unwrap();
                assert!((got - brute_discrete(n, zeta)).abs() < 1e-14, "n={n} zeta={zeta}");
            }
        }
    }

    #[test]
    fn discrete_full_removal_values() {
        assert!((mesh_elasticity_discrete(10, 10).unwrap() - 19.0 / 60.0).abs() < 1e-15);
        assert!((mesh_elasticity_discrete(3, 3).unwrap() - 5.0 / 18.0).abs() < 1e-15);
        assert!((mesh_elasticity_discrete(2, 2).unwrap() - 0.25).abs() < 1e-15);
        let big = mesh_elasticity_discrete(1_000_000_000, 1_000_000_000).unwrap();
        assert!((big - 1.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn continuous_values() {
        let c = |n, r| mesh_elasticity_continuous(n, r).unwrap();
        assert!((c(10, Removal::All) - 0.315).abs() < 1e-12);
        assert!((c(20, Removal::All) - 0.3245833333).abs() < 1e-9);
        assert!((c(1_000_000_000, Removal::All) - 1.0 / 3.0).abs() < 1e-8);
        assert_eq!(c(10, Removal::Nodes(0)), 0.0);
        assert_eq!(c(10, Removal::Nodes(10)), c(10, Removal::All));
    }

    #[test]
    fn continuous_is_exact_integral() {
        // Simpson's rule is exact for cubics.
        for n in [5u64, 12, 40] {
            for z in 1..n - 1 {
                let nf = n as f64;
                let t = |x: f64| (nf - x) * (nf - x - 1.0) / (nf * (nf - 1.0));
                let zf = z as f64;
                let simpson = zf / 6.0 * (t(0.0) + 4.0 * t(zf / 2.0) + t(zf)) / nf;
                let got = mesh_elasticity_continuous(n, Removal::Nodes(z)).unwrap();
                assert!((got - simpson).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(mesh_elasticity_discrete(1, 1).is_err());
        assert!(mesh_elasticity_discrete(10, 0).is_err());
        assert!(mesh_elasticity_discrete(10, 11).is_err());
        assert!(mesh_elasticity_continuous(10, Removal::Nodes(11)).is_err());
        assert!(mesh_elasticity_continuous(MAX_BOUND_NODES + 1, Removal::All).is_err());
    }

    #[test]
    fn normalized_throughput_of_mesh() {
        assert_eq!(mesh_normalized_throughput(10, 0).unwrap(), 1.0);
        assert!((mesh_normalized_throughput(10, 1).unwrap() - 0.8).abs() < 1e-15);
        assert_eq!(mesh_normalized_throughput(10, 9).unwrap(), 0.0);
    }
}
