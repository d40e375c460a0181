//! Dense symmetric eigenvalues: Householder tridiagonalization followed by
//! implicit QL iterations with Wilkinson-type shifts.

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Reduces the symmetric row-major matrix `a` (`n × n`, lower triangle used) to
/// tridiagonal form. Returns `(diagonal, subdiagonal)` with `sub[i]` coupling
/// `i` and `i + 1`; `sub[n−1] = 0`.
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let idx = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[idx(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[idx(i, l)];
                continue;
            }
            let mut h = 0.0;
            for k in 0..=l {
                a[idx(i, k)] /= scale;
                h += a[idx(i, k)] * a[idx(i, k)];
            }
            let f = a[idx(i, l)];
            let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
            e[i] = scale * g;
            h -= f * g;
            a[idx(i, l)] = f - g;
            let mut f = 0.0;
            for j in 0..=l {
                let mut g = 0.0;
                for k in 0..=j {
                    g += a[idx(j, k)] * a[idx(i, k)];
                }
                for k in j + 1..=l {
                    g += a[idx(k, j)] * a[idx(i, k)];
                }
                e[j] = g / h;
                f += e[j] * a[idx(i, j)];
            }
            let hh = f / (h + h);
            for j in 0..=l {
                let f = a[idx(i, j)];
                let g = e[j] - hh * f;
                e[j] = g;
                for k in 0..=j {
                    a[idx(j, k)] -= f * e[k] + g * a[idx(i, k)];
                }
            }
        } else {
            e[i] = a[idx(i, l)];
        }
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[idx(i, i)];
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    if n > 0 {
        e[n - 1] = 0.0;
    }
    (d, e)
}

/// Eigenvalues of a symmetric tridiagonal matrix, in place.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS {
                return Err(Error::Solver(format!(
                    "QL iteration stalled at index {l} after {MAX_SWEEPS} sweeps (|e| = {:e})",
                    e[l].abs()
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// All eigenvalues of the symmetric row-major `n × n` matrix, ascending.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Result<Vec<f64>> {
    if matrix.len() != n * n {
        return Err(Error::domain(format!("matrix has {} entries, expected {}", matrix.len(), n * n)));
    }
    let mut a = matrix.to_vec();
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let (a, b, c) = (1.3, -0.7, 2.9);
        let ev = symmetric_eigenvalues(&[a, b, b, c], 2).unwrap();
        let mid = 0.5 * (a + c);
        let rad = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((ev[0] - (mid - rad)).abs() < 1e-14);
        assert!((ev[1] - (mid + rad)).abs() < 1e-14);
    }

    #[test]
    fn diagonal() {
        let m = [3.0, 0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0, 2.0];
        assert_eq!(symmetric_eigenvalues(&m, 3).unwrap(), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn trace_and_frobenius_preserved() {
        let n = 40;
        let mut m = vec![0.0; n * n];
        let mut state = 12345u64;
        for i in 0..n {
            for j in 0..=i {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let v = ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5;
                m[i * n + j] = v;
                m[j * n + i] = v;
            }
        }
        let ev = symmetric_eigenvalues(&m, n).unwrap();
        let tr: f64 = (0..n).map(|i| m[i * n + i]).sum();
        let fro: f64 = m.iter().map(|x| x * x).sum();
        assert!((ev.iter().sum::<f64>() - tr).abs() < 1e-12);
        assert!((ev.iter().map(|x| x * x).sum::<f64>() - fro).abs() < 1e-11);
    }

    #[test]
    fn free_oscillator_ladder() {
        // path-graph Laplacian: eigenvalues 2 − 2cos(kπ/(n+1))
        let n = 30;
        let mut m = vec![0.0; n * n];
        for i in 0..n {
            m[i * n + i] = 2.0;
            if i + 1 < n {
                m[i * n + i + 1] = -1.0;
                m[(i + 1) * n + i] = -1.0;
            }
        }
        let ev = symmetric_eigenvalues(&m, n).unwrap();
        for (k, v) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * (((k + 1) as f64) * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - want).abs() < 1e-13);
        }
    }
}
