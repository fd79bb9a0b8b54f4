//! Eigenvalues of real symmetric banded matrices.
//!
//! Givens rotations reduce the band to tridiagonal form, chasing each bulge
//! off the bottom of the matrix, so storage and work stay O(n * bandwidth)
//! per column. The tridiagonal matrix is then diagonalised by implicit QL.

use alloc::vec;
use alloc::vec::Vec;

use libm::{fabs, hypot};

use crate::{Error, Result};

/// Lower band of a symmetric matrix with one spare diagonal for the bulge.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricBand {
    n: usize,
    kd: usize,
    data: Vec<f64>,
}

impl SymmetricBand {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        SymmetricBand { n, kd: bandwidth, data: vec![0.0; n * (bandwidth + 2)] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.kd
    }

    fn stride(&self) -> usize {
        self.kd + 2
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        if d > self.kd + 1 {
            0.0
        } else {
            self.data[hi * self.stride() + d]
        }
    }

    /// Sets `A[i][j] = A[j][i] = v`. Entries outside the band must be zero.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let (hi, lo) = if i >= j { (i, j) } else { (j, i) };
        let d = hi - lo;
        if d > self.kd + 1 {
            debug_assert!(v == 0.0, "write outside band at ({i},{j})");
            return;
        }
        let s = self.stride();
        self.data[hi * s + d] = v;
    }

    /// Rotate rows/columns `p` and `p+1` so that `A[p+1][col]` vanishes.
    fn annihilate(&mut self, p: usize, col: usize) {
        let q = p + 1;
        let a = self.get(p, col);
        let b = self.get(q, col);
        if b == 0.0 {
            return;
        }
        let r = hypot(a, b);
        let c = a / r;
        let s = b / r;
        let reach = self.kd + 1;
        let lo = p.saturating_sub(reach);
        let hi = (q + reach).min(self.n - 1);
        for j in lo..=hi {
            if j == p || j == q {
                continue;
            }
            let x = self.get(p, j);
            let y = self.get(q, j);
            if x == 0.0 && y == 0.0 {
                continue;
            }
            self.set(p, j, c * x + s * y);
            self.set(q, j, -s * x + c * y);
        }
        let app = self.get(p, p);
        let aqq = self.get(q, q);
        let apq = self.get(p, q);
        self.set(p, p, c * c * app + 2.0 * c * s * apq + s * s * aqq);
        self.set(q, q, s * s * app - 2.0 * c * s * apq + c * c * aqq);
        self.set(p, q, (c * c - s * s) * apq + c * s * (aqq - app));
        self.set(q, col, 0.0);
    }

    /// Reduce to tridiagonal form; returns (diagonal, subdiagonal).
    pub fn tridiagonalize(mut self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let kd = self.kd;
        if kd > 1 {
            for j in 0..n.saturating_sub(2) {
                let last = (j + kd).min(n - 1);
                for i in (j + 2..=last).rev() {
                    self.annihilate(i - 1, j);
                    // chase the bulge created at (i - 1 + kd + 1, i - 1)
                    let mut row = i + kd;
                    let mut col = i - 1;
                    while row < n {
                        if self.get(row, col) != 0.0 {
                            self.annihilate(row - 1, col);
                        }
                        col = row - 1;
                        row += kd;
                    }
                }
            }
        }
        let d = (0..n).map(|i| self.get(i, i)).collect();
        let e = (0..n).map(|i| if i + 1 < n { self.get(i + 1, i) } else { 0.0 }).collect();
        (d, e)
    }
}

/// Eigenvalues (ascending) of a symmetric band matrix.
pub fn band_eigenvalues(a: SymmetricBand) -> Result<Vec<f64>> {
    let (mut d, mut e) = a.tridiagonalize();
    tridiagonal_eigenvalues(&mut d, &mut e)?;
    d.sort_by(|x, y| x.total_cmp(y));
    Ok(d)
}

/// Implicit QL with Wilkinson-type shifts on the tridiagonal matrix with
/// diagonal `d` and subdiagonal `e` (`e[i]` couples `i` and `i+1`).
/// Eigenvalues overwrite `d` in no particular order.
pub fn tridiagonal_eigenvalues(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    assert_eq!(e.len(), n);
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = fabs(d[m]) + fabs(d[m + 1]);
                if fabs(e[m]) <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigensolverFailure);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r } else { -r });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
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

/// Number of eigenvalues below `x` of the tridiagonal matrix (`d`, `e`),
/// from the signs of the LDL^T pivots of `T - x`.
pub fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let coupling = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (fabs(d[i]) + fabs(x)).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues of a tridiagonal matrix by bisection on the
/// Sturm count. Keeps high relative accuracy on strongly graded matrices,
/// where QL iterations lose digits of the small eigenvalues.
pub fn tridiagonal_lowest(d: &[f64], e: &[f64], k: usize) -> Vec<f64> {
    let n = d.len();
    let k = k.min(n);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i == 0 { 0.0 } else { fabs(e[i - 1]) };
        let right = if i + 1 < n { fabs(e[i]) } else { 0.0 };
        lo = lo.min(d[i] - left - right);
        hi = hi.max(d[i] + left + right);
    }
    (0..k)
        .map(|j| {
            let (mut a, mut b) = (lo, hi);
            loop {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if sturm_count(d, e, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            lo = a;
            0.5 * (a + b)
        })
        .collect()
}

/// The `k` smallest eigenvalues (ascending) of a symmetric band matrix.
pub fn band_lowest(a: SymmetricBand, k: usize) -> Vec<f64> {
    let (d, e) = a.tridiagonalize();
    tridiagonal_lowest(&d, &e, k)
}
