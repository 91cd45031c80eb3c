//! Enumeration and local search over index tuples.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// `C(n, r)` saturating at `u128::MAX`.
pub(crate) fn binomial(n: u128, r: u128) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of size-`k` multisets from `m` items.
pub fn multiset_count(m: usize, k: usize) -> u128 {
    if m == 0 {
        return 0;
    }
    binomial((m + k - 1) as u128, k as u128)
}

/// Number of size-`k` subsets from `m` items.
pub fn combination_count(m: usize, k: usize) -> u128 {
    binomial(m as u128, k as u128)
}

/// All nondecreasing index tuples of length `k` over `0..m`, lexicographic.
pub(crate) fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 || k == 0 {
        return out;
    }
    let mut t = vec![0usize; k];
    loop {
        out.push(t.clone());
        let Some(pos) = (0..k).rev().find(|&i| t[i] + 1 < m) else {
            return out;
        };
        let v = t[pos] + 1;
        t[pos..].iter_mut().for_each(|x| *x = v);
    }
}

/// All strictly increasing index tuples of length `k` over `0..m`, lexicographic.
pub(crate) fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 || k > m {
        return out;
    }
    let mut t: Vec<usize> = (0..k).collect();
    loop {
        out.push(t.clone());
        let Some(pos) = (0..k).rev().find(|&i| t[i] < m - k + i) else {
            return out;
        };
        t[pos] += 1;
        for i in pos + 1..k {
            t[i] = t[i - 1] + 1;
        }
    }
}

/// Best (largest value) entry among `tuples`, ties to the earliest tuple.
/// The reduction is order independent, so the result does not depend on
/// `threads`.
pub(crate) fn argmax<T, F>(
    tuples: &[Vec<usize>],
    threads: usize,
    eval: F,
) -> Option<(usize, f64, T)>
where
    T: Send,
    F: Fn(&[usize]) -> Option<(f64, T)> + Sync,
{
    let pick = |a: Option<(usize, f64, T)>, b: Option<(usize, f64, T)>| match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                Some(b)
            } else {
                Some(a)
            }
        }
    };
    let scored = |(i, t): (usize, &Vec<usize>)| eval(t).map(|(v, extra)| (i, v, extra));
    if threads <= 1 {
        return tuples.iter().enumerate().map(scored).fold(None, pick);
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build();
    match pool {
        Ok(pool) => pool.install(|| {
            tuples
                .par_iter()
                .enumerate()
                .map(scored)
                .reduce(|| None, pick)
        }),
        Err(_) => tuples.iter().enumerate().map(scored).fold(None, pick),
    }
}

pub(crate) struct SearchOutcome {
    pub tuple: Vec<usize>,
    pub value: f64,
}

/// Random restarts plus single-position swap hill climbing over sorted
/// tuples. Each distinct tuple costs one unit of `budget`. Ties are broken
/// toward the lexicographically smallest tuple.
pub(crate) fn hill_climb(
    m: usize,
    k: usize,
    distinct: bool,
    budget: usize,
    seed: u64,
    admissible: &dyn Fn(&[usize]) -> bool,
    eval: &mut dyn FnMut(&[usize]) -> f64,
) -> Option<SearchOutcome> {
    if m == 0 || k == 0 || (distinct && k > m) {
        return None;
    }
    let space = if distinct {
        combination_count(m, k)
    } else {
        multiset_count(m, k)
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut memo: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut best: Option<(Vec<usize>, f64)> = None;
    let better = |v: f64, t: &[usize], cur: &Option<(Vec<usize>, f64)>| match cur {
        None => true,
        Some((bt, bv)) => v > *bv || (v == *bv && t < bt.as_slice()),
    };

    let mut score = |t: &[usize], memo: &mut HashMap<Vec<usize>, f64>| -> Option<f64> {
        if let Some(&v) = memo.get(t) {
            return Some(v);
        }
        if memo.len() >= budget {
            return None;
        }
        let v = eval(t);
        memo.insert(t.to_vec(), v);
        Some(v)
    };

    let mut stale_restarts = 0;
    while memo.len() < budget && (memo.len() as u128) < space && stale_restarts < 64 {
        let before = memo.len();
        // random admissible start
        let mut start = None;
        for _ in 0..256 {
            let mut t: Vec<usize> = if distinct {
                let mut pool: Vec<usize> = (0..m).collect();
                for i in 0..k {
                    let j = rng.random_range(i..m);
                    pool.swap(i, j);
                }
                pool.truncate(k);
                pool
            } else {
                (0..k).map(|_| rng.random_range(0..m)).collect()
            };
            t.sort_unstable();
            if admissible(&t) {
                start = Some(t);
                break;
            }
        }
        let Some(mut current) = start else {
            break;
        };
        let Some(mut current_value) = score(&current, &mut memo) else {
            break;
        };
        loop {
            let mut step: Option<(Vec<usize>, f64)> = None;
            'scan: for pos in 0..k {
                for idx in 0..m {
                    if idx == current[pos] {
                        continue;
                    }
                    let mut cand = current.clone();
                    cand[pos] = idx;
                    cand.sort_unstable();
                    if distinct && cand.windows(2).any(|w| w[0] == w[1]) {
                        continue;
                    }
                    if !admissible(&cand) {
                        continue;
                    }
                    let Some(v) = score(&cand, &mut memo) else {
                        break 'scan;
                    };
                    if better(v, &cand, &step) {
                        step = Some((cand, v));
                    }
                }
            }
            match step {
                Some((t, v)) if v > current_value => {
                    current = t;
                    current_value = v;
                }
                _ => break,
            }
        }
        if better(current_value, &current, &best) {
            best = Some((current, current_value));
        }
        stale_restarts = if memo.len() == before {
            stale_restarts + 1
        } else {
            0
        };
    }
    // the memo may hold a better tuple than any local optimum reached
    for (t, &v) in &memo {
        if better(v, t, &best) {
            best = Some((t.clone(), v));
        }
    }
    best.map(|(tuple, value)| SearchOutcome { tuple, value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(multiset_count(3, 3), 10);
        assert_eq!(multiset_count(8, 8), 6435);
        assert_eq!(combination_count(5, 2), 10);
        assert_eq!(combination_count(2, 3), 0);
        assert_eq!(multiset_count(1000, 1000), binomial(1999, 1000));
        assert_eq!(binomial(400, 200), u128::MAX);
    }

    #[test]
    fn enumerations_match_counts() {
        for m in 1..5 {
            for k in 1..5 {
                let ms = multisets(m, k);
                assert_eq!(ms.len() as u128, multiset_count(m, k));
                assert!(ms.windows(2).all(|w| w[0] < w[1]));
                assert!(ms.iter().all(|t| t.windows(2).all(|p| p[0] <= p[1])));
                let cs = combinations(m, k);
                assert_eq!(cs.len() as u128, combination_count(m, k));
                assert!(cs.iter().all(|t| t.windows(2).all(|p| p[0] < p[1])));
            }
        }
    }

    #[test]
    fn argmax_is_thread_independent() {
        let tuples = multisets(6, 3);
        let f = |t: &[usize]| Some((((t[0] * 7 + t[1] * 3 + t[2]) % 5) as f64, ()));
        let a = argmax(&tuples, 1, f).unwrap();
        let b = argmax(&tuples, 4, f).unwrap();
        assert_eq!((a.0, a.1), (b.0, b.1));
        // earliest maximal tuple wins
        assert_eq!(a.1, 4.0);
        assert!(tuples[..a.0].iter().all(|t| f(t).unwrap().0 < 4.0));
    }

    #[test]
    fn hill_climb_finds_separable_maximum() {
        let mut evals = 0;
        let out = hill_climb(6, 2, false, 1000, 3, &|_| true, &mut |t: &[usize]| {
            evals += 1;
            (t[0] + t[1]) as f64
        })
        .unwrap();
        assert_eq!(out.tuple, vec![5, 5]);
        assert_eq!(out.value, 10.0);
        assert!(evals <= multiset_count(6, 2) as usize);
    }

    #[test]
    fn hill_climb_respects_budget_and_distinctness() {
        let mut evals = 0;
        let out = hill_climb(10, 3, true, 5, 0, &|_| true, &mut |t: &[usize]| {
            evals += 1;
            assert!(t[0] < t[1] && t[1] < t[2]);
            t.iter().sum::<usize>() as f64
        })
        .unwrap();
        assert!(evals <= 5);
        assert!(out.value > 0.0);
    }
}
