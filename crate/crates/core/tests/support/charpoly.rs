//! Brute-force Laplacian spectra through the characteristic polynomial.
//!
//! Shares nothing with the library's eigensolver: the polynomial
//! `det(x·B − L)` (with `B = I` for the raw Laplacian, `B = D` restricted to
//! non-isolated vertices for the normalized one) is interpolated from exact
//! integer determinants, split into square-free factors with Yun's algorithm
//! over the rationals, and each factor's real roots are isolated by
//! derivative interlacing and bisection.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Poly = Vec<BigRational>;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn degree(p: &Poly) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * int(k as i64))
            .collect(),
    )
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    let len = a.len().max(b.len());
    trim(
        (0..len)
            .map(|k| {
                a.get(k).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(k).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect(),
    )
}

fn divmod(a: &Poly, b: &Poly) -> (Poly, Poly) {
    let mut rem = a.clone();
    let db = degree(b);
    let lead = b.last().unwrap().clone();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + db] / &lead;
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &c * bj;
        }
        quot[k] = c;
    }
    rem.truncate(db);
    (trim(quot), trim(rem))
}

fn monic(p: Poly) -> Poly {
    let lead = p.last().unwrap().clone();
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let (_, r) = divmod(&x, &y);
        x = y;
        y = r;
    }
    monic(x)
}

/// Square-free factors `(factor, multiplicity)` with `f = c · ∏ factor^mult`.
fn yun(f: &Poly) -> Vec<(Poly, usize)> {
    let df = derivative(f);
    let a0 = gcd(f, &df);
    let mut b = divmod(f, &a0).0;
    let c = divmod(&df, &a0).0;
    let mut d = sub(&c, &derivative(&b));
    let mut out = Vec::new();
    let mut mult = 1;
    while degree(&b) > 0 {
        let a = gcd(&b, &d);
        let next_b = divmod(&b, &a).0;
        let c = divmod(&d, &a).0;
        d = sub(&c, &derivative(&next_b));
        if degree(&a) > 0 {
            out.push((a, mult));
        }
        b = next_b;
        mult += 1;
    }
    out
}

fn eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Real roots of a real-rooted polynomial with simple roots, ascending.
fn simple_real_roots(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let lead = coeffs[deg];
    let bound = 1.0
        + coeffs[..deg]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let deriv: Vec<f64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect();
    let mut fences = vec![-bound];
    fences.extend(simple_real_roots(&deriv));
    fences.push(bound);
    fences
        .windows(2)
        .filter_map(|w| bisect(coeffs, w[0], w[1]))
        .collect()
}

fn bisect(coeffs: &[f64], mut lo: f64, mut hi: f64) -> Option<f64> {
    let mut flo = eval(coeffs, lo);
    let fhi = eval(coeffs, hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = eval(coeffs, mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
fn bareiss_det(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Coefficients (lowest first) of `det(x·diag(b) − l)` from its values at
/// `x = 0..=k` by Newton forward differences.
fn char_poly(l: &[Vec<i64>], b: &[i64]) -> Poly {
    let k = l.len();
    let values: Vec<BigRational> = (0..=k as i64)
        .map(|x| {
            let m = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let diag = if i == j { x * b[i] } else { 0 };
                            (diag - l[i][j]) as i128
                        })
                        .collect()
                })
                .collect();
            BigRational::from_integer(BigInt::from(bareiss_det(m)))
        })
        .collect();
    // divided differences at integer nodes
    let mut dd = values;
    for level in 1..=k {
        for i in (level..=k).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / int(level as i64);
        }
    }
    // Newton form -> monomial: p = dd0 + dd1 (x-0) + dd2 (x-0)(x-1) + ...
    let mut poly: Poly = vec![BigRational::zero()];
    for i in (0..=k).rev() {
        // poly = poly * (x - i) + dd[i]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] = &next[j + 1] + c;
            next[j] = &next[j] - c * int(i as i64);
        }
        next[0] = &next[0] + &dd[i];
        poly = trim(next);
    }
    poly
}

/// All real roots of `det(x·diag(b) − l)` with multiplicity, ascending.
fn roots_with_multiplicity(l: &[Vec<i64>], b: &[i64]) -> Vec<f64> {
    if l.is_empty() {
        return Vec::new();
    }
    let p = char_poly(l, b);
    let mut roots = Vec::new();
    for (factor, mult) in yun(&p) {
        let coeffs: Vec<f64> = factor.iter().map(|c| c.to_f64().unwrap()).collect();
        for r in simple_real_roots(&coeffs) {
            roots.extend(std::iter::repeat_n(r, mult));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Raw Laplacian spectrum of the graph on `n` vertices with the given edges.
pub fn raw_spectrum(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut l = vec![vec![0i64; n]; n];
    for &(a, b) in edges {
        l[a][b] -= 1;
        l[b][a] -= 1;
        l[a][a] += 1;
        l[b][b] += 1;
    }
    roots_with_multiplicity(&l, &vec![1; n])
}

/// Normalized Laplacian spectrum: eigenvalues of `D⁻¹L` on the non-isolated
/// vertices plus one zero per isolated vertex.
pub fn normalized_spectrum(n: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut deg = vec![0i64; n];
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let active: Vec<usize> = (0..n).filter(|&v| deg[v] > 0).collect();
    let index = |v: usize| active.iter().position(|&u| u == v).unwrap();
    let k = active.len();
    let mut l = vec![vec![0i64; k]; k];
    for &(a, b) in edges {
        let (i, j) = (index(a), index(b));
        l[i][j] -= 1;
        l[j][i] -= 1;
    }
    for (i, &v) in active.iter().enumerate() {
        l[i][i] = deg[v];
    }
    let b: Vec<i64> = active.iter().map(|&v| deg[v]).collect();
    let mut roots = vec![0.0; n - k];
    roots.extend(roots_with_multiplicity(&l, &b));
    roots.sort_by(f64::total_cmp);
    roots
}

#[allow(dead_code)]
pub fn self_check() {
    // K_3: raw {0, 3, 3}; normalized {0, 1.5, 1.5}
    let k3 = [(0, 1), (0, 2), (1, 2)];
    let raw = raw_spectrum(3, &k3);
    assert!(raw
        .iter()
        .zip([0.0, 3.0, 3.0])
        .all(|(a, b)| (a - b).abs() < 1e-12));
    let norm = normalized_spectrum(3, &k3);
    assert!(norm
        .iter()
        .zip([0.0, 1.5, 1.5])
        .all(|(a, b)| (a - b).abs() < 1e-12));
    // path on 3 vertices: raw {0, 1, 3}
    let p3 = raw_spectrum(3, &[(0, 1), (1, 2)]);
    assert!(p3
        .iter()
        .zip([0.0, 1.0, 3.0])
        .all(|(a, b)| (a - b).abs() < 1e-12));
    // edgeless
    assert_eq!(raw_spectrum(4, &[]), vec![0.0; 4]);
    assert_eq!(normalized_spectrum(4, &[]), vec![0.0; 4]);
    assert!(BigRational::one().is_positive());
}
