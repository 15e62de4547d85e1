//! Optimal pairing of two point sets (Hungarian algorithm).

use num_complex::Complex64;

/// Minimum-weight perfect matching on `|a_i - b_j|`. Returns `perm` with
/// `a[i]` paired to `b[perm[i]]`.
pub fn min_weight_matching(a: &[Complex64], b: &[Complex64]) -> Vec<usize> {
    assert_eq!(a.len(), b.len(), "point sets must have equal size");
    let n = a.len();
    if n == 0 {
        return Vec::new();
    }
    let cost = |i: usize, j: usize| (a[i] - b[j]).norm();
    // 1-indexed potentials formulation.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut perm = vec![0; n];
    for j in 1..=n {
        perm[p[j] - 1] = j - 1;
    }
    perm
}

/// Largest pair distance under the minimum-weight matching.
pub fn matched_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    let perm = min_weight_matching(a, b);
    perm.iter().enumerate().map(|(i, &j)| (a[i] - b[j]).norm()).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_cost(a: &[Complex64], b: &[Complex64]) -> f64 {
        fn rec(a: &[Complex64], b: &[Complex64], i: usize, used: &mut Vec<bool>) -> f64 {
            if i == a.len() {
                return 0.0;
            }
            let mut best = f64::INFINITY;
            for j in 0..b.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min((a[i] - b[j]).norm() + rec(a, b, i + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        rec(a, b, 0, &mut vec![false; b.len()])
    }

    #[test]
    fn matches_brute_force() {
        let mut s = 7u64;
        let mut next = || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
            (s >> 11) as f64 / (1u64 << 53) as f64
        };
        for n in 1..7 {
            let a: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
            let b: Vec<Complex64> = (0..n).map(|_| Complex64::new(next(), next())).collect();
            let perm = min_weight_matching(&a, &b);
            let cost: f64 = perm.iter().enumerate().map(|(i, &j)| (a[i] - b[j]).norm()).sum();
            assert!((cost - brute_force_cost(&a, &b)).abs() < 1e-12);
        }
    }

    #[test]
    fn permuted_copy_matches_exactly() {
        let a = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0)];
        let b = [a[2], a[0], a[1]];
        assert_eq!(matched_distance(&a, &b), 0.0);
    }
}
