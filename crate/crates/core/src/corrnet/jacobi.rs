use crate::error::{Error, Result};

/// Stopping rule for the cyclic Jacobi eigensolver.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiConfig {
    /// Converged once every off-diagonal magnitude is at most
    /// `tolerance_per_dim · N`.
    pub tolerance_per_dim: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        JacobiConfig { tolerance_per_dim: 1e-12, max_sweeps: 100 }
    }
}

fn max_off_diagonal(a: &[f64], n: usize) -> f64 {
    let mut m: f64 = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            m = m.max(a[p * n + q].abs());
        }
    }
    m
}

/// Eigenvalues of the symmetric row-major `n × n` matrix `a`, ascending.
///
/// Cyclic Jacobi: each sweep visits every pair `p < q` in row order and
/// applies the plane rotation that zeroes `a[p][q]`.
pub fn symmetric_eigenvalues(a: &[f64], n: usize, config: &JacobiConfig) -> Result<Vec<f64>> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let mut a = a.to_vec();
    let tolerance = config.tolerance_per_dim * n as f64;
    let mut sweeps = 0;
    loop {
        let off = max_off_diagonal(&a, n);
        if off <= tolerance {
            break;
        }
        if sweeps == config.max_sweeps {
            return Err(Error::NumericalFailure { sweeps, off_diagonal: off });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;
            }
        }
    }
    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(eigenvalues)
}
