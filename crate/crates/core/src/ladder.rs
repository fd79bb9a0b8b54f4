//! Matrix elements of powers of `q = a + a^dagger` between number states.
//!
//! `x = q / sqrt(2 omega)` for a harmonic basis of frequency `omega`.

use alloc::vec;
use alloc::vec::Vec;

use libm::sqrt;

/// `(a + a^dagger)^p |n>` as a dense slice over indices `first..first + len`.
pub fn q_power_column(n: usize, p: u32) -> (usize, Vec<f64>) {
    let p = p as usize;
    let first = n.saturating_sub(p);
    let len = n + p - first + 1;
    let mut cur = vec![0.0; len];
    let mut next = vec![0.0; len];
    cur[n - first] = 1.0;
    for _ in 0..p {
        next.iter_mut().for_each(|v| *v = 0.0);
        for (i, &amp) in cur.iter().enumerate() {
            if amp == 0.0 {
                continue;
            }
            let k = first + i;
            if k > 0 {
                next[i - 1] += sqrt(k as f64) * amp;
            }
            if i + 1 < len {
                next[i + 1] += sqrt((k + 1) as f64) * amp;
            }
        }
        core::mem::swap(&mut cur, &mut next);
    }
    (first, cur)
}

/// `<m|(a + a^dagger)^p|n>`.
pub fn q_power_element(m: usize, n: usize, p: u32) -> f64 {
    let diff = m.abs_diff(n);
    if diff > p as usize || (p as usize - diff) % 2 == 1 {
        return 0.0;
    }
    let (first, col) = q_power_column(n, p);
    col[m - first]
}
