//! Sign convention for exterior powers.
//!
//! A wedge monomial is a strictly increasing index list. Substituting one
//! factor yields an unsorted list; it is sorted back with the sign of the
//! sorting permutation. Shared by `ext_power` and the skew Howe bimodule.

/// Replaces `set[pos]` by `new`. Returns `None` if `new` already occurs
/// (the wedge vanishes), otherwise the sign and the sorted result.
pub fn substitute(set: &[usize], pos: usize, new: usize) -> Option<(i64, Vec<usize>)> {
    let old = set[pos];
    if new != old && set.contains(&new) {
        return None;
    }
    let (lo, hi) = if old < new { (old, new) } else { (new, old) };
    let crossed = set.iter().filter(|&&x| x > lo && x < hi).count();
    let mut out = set.to_vec();
    out[pos] = new;
    out.sort_unstable();
    let sign = if crossed % 2 == 0 { 1 } else { -1 };
    Some((sign, out))
}

/// All k-subsets of {0..n} in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
