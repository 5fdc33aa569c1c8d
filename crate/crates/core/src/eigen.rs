//! Dense symmetric eigensolver.
//!
//! Householder reduction to tridiagonal form followed by the implicit QL
//! iteration with Wilkinson-style shifts, after the EISPACK `tred2`/`tql2`
//! pair. Eigenvectors are accumulated only when requested.

use crate::error::{Error, Result};
use crate::matrix::SymmetricMatrix;

/// Sweeps allowed per eigenvalue before the iteration is declared stalled.
const MAX_SWEEPS: usize = 60;

/// Eigenvalues in ascending order.
pub fn symmetric_eigenvalues(m: &SymmetricMatrix) -> Result<Vec<f64>> {
    let n = m.n();
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut work = m.to_dense();
    let (mut d, mut e) = tridiagonalize(&mut work, n, false);
    tql(&mut d, &mut e, None, n)?;
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues in ascending order with the matching orthonormal eigenvectors,
/// returned as the columns of a row-major `n × n` matrix.
pub fn symmetric_eigen(m: &SymmetricMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = m.n();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut v = m.to_dense();
    let (mut d, mut e) = tridiagonalize(&mut v, n, true);
    tql(&mut d, &mut e, Some(&mut v), n)?;

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = idx.iter().map(|&k| d[k]).collect();
    let mut vectors = vec![0.0; n * n];
    for (col, &k) in idx.iter().enumerate() {
        for row in 0..n {
            vectors[row * n + col] = v[k * n + row];
        }
    }
    Ok((values, vectors))
}

/// Reduces the row-major symmetric matrix `v` in place. Returns the diagonal
/// and the subdiagonal (`e[i]` couples rows `i - 1` and `i`, `e[0] = 0`).
/// With `accumulate`, `v` ends as the orthogonal reduction matrix.
fn tridiagonalize(v: &mut [f64], n: usize, accumulate: bool) -> (Vec<f64>, Vec<f64>) {
    let mut d: Vec<f64> = (0..n).map(|j| v[j * n + n - 1]).collect();
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
        let mut h = 0.0;
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[j * n + (i - 1)];
                v[j * n + i] = 0.0;
                v[i * n + j] = 0.0;
            }
        } else {
            for x in &mut d[..i] {
                *x /= scale;
                h += *x * *x;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);

            for j in 0..i {
                f = d[j];
                v[i * n + j] = f;
                g = e[j] + v[j * n + j] * f;
                for k in (j + 1)..i {
                    g += v[j * n + k] * d[k];
                    e[k] += v[j * n + k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[j * n + k] -= f * e[k] + g * d[k];
                }
                d[j] = v[j * n + (i - 1)];
                v[j * n + i] = 0.0;
            }
        }
        d[i] = h;
    }

    if !accumulate {
        // The reduced diagonal sits on the diagonal of the work matrix.
        for (i, x) in d.iter_mut().enumerate() {
            *x = v[i * n + i];
        }
        return (d, e);
    }

    for i in 0..n - 1 {
        v[i * n + (n - 1)] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[(i + 1) * n + k] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[(i + 1) * n + k] * v[j * n + k];
                }
                for k in 0..=i {
                    v[j * n + k] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[(i + 1) * n + k] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[j * n + (n - 1)];
        v[j * n + (n - 1)] = 0.0;
    }
    v[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
    (d, e)
}

/// Implicit QL on the tridiagonal `(d, e)`. Eigenvalues are left unsorted in
/// `d`; rotations are applied to the columns of `vectors` when present.
fn tql(d: &mut [f64], e: &mut [f64], mut vectors: Option<&mut [f64]>, n: usize) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut shift_total = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > f64::EPSILON * tst1 {
            m += 1;
        }

        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > MAX_SWEEPS {
                    return Err(Error::NoConvergence {
                        residual: e[l].abs(),
                    });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for x in &mut d[(l + 2)..n] {
                    *x -= h;
                }
                shift_total += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = vectors.as_deref_mut() {
                        for k in 0..n {
                            let h = v[(i + 1) * n + k];
                            v[(i + 1) * n + k] = s * v[i * n + k] + c * h;
                            v[i * n + k] = c * v[i * n + k] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= f64::EPSILON * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_total;
        e[l] = 0.0;
    }
    Ok(())
}
