//! Independent oracles and generators shared by the integration tests.
//!
//! Nothing here calls the library's own combinatorics: subsets are plain
//! sorted vectors, products are triple loops and maxima are taken over
//! exhaustive enumerations.

#![allow(dead_code)]

use plactrop::{Tableau, TabParams, Trop, TropMatrix, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Set = Vec<usize>;

/// All `k`-subsets of `[n]` as sorted vectors.
pub fn k_subsets(n: usize, k: usize) -> Vec<Set> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=n).filter(|&x| m >> (x - 1) & 1 == 1).collect())
        .collect()
}

/// `S <= T`: same size and `S^i <= T^i` for the `i`-th smallest elements.
pub fn set_le(s: &Set, t: &Set) -> bool {
    s.len() == t.len() && s.iter().zip(t).all(|(a, b)| a <= b)
}

/// Union of every set in `[p, q]`, by enumeration.
pub fn brute_union(n: usize, p: &Set, q: &Set) -> Set {
    let mut hit = vec![false; n + 1];
    for s in k_subsets(n, p.len()) {
        if set_le(p, &s) && set_le(&s, q) {
            for x in s {
                hit[x] = true;
            }
        }
    }
    (1..=n).filter(|&x| hit[x]).collect()
}

/// Longest chain (counted in elements) of the `k`-subsets of `[n]`.
pub fn brute_longest_chain(n: usize, k: usize) -> usize {
    let sets = k_subsets(n, k);
    // Colex order is not assumed; a quadratic relaxation over a topological
    // order obtained by sorting on element sums suffices, since S < T implies
    // sum(S) < sum(T).
    let mut sets = sets;
    sets.sort_by_key(|s| s.iter().sum::<usize>());
    let mut best = vec![1usize; sets.len()];
    for j in 0..sets.len() {
        for i in 0..j {
            if sets[i] != sets[j] && set_le(&sets[i], &sets[j]) {
                best[j] = best[j].max(best[i] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// A word can be read inside `[p, q]`: greedy over a chain of sets in the
/// interval, explored exhaustively.
pub fn readable(n: usize, w: &[usize], p: &Set, q: &Set) -> bool {
    let sets: Vec<Set> =
        k_subsets(n, p.len()).into_iter().filter(|s| set_le(p, s) && set_le(s, q)).collect();
    // reach[i]: the i-th set can hold the current letter after a valid chain.
    let mut reach: Vec<bool> = sets.iter().map(|_| true).collect();
    let mut first = true;
    for &x in w {
        let next: Vec<bool> = sets
            .iter()
            .map(|t| {
                t.contains(&x)
                    && (first
                        || sets.iter().zip(&reach).any(|(s, &ok)| ok && set_le(s, t)))
            })
            .collect();
        reach = next;
        first = false;
        if !reach.iter().any(|&b| b) {
            return false;
        }
    }
    !sets.is_empty()
}

/// Longest scattered subword of `w` readable from `p` to `q`, by trying
/// every subword; `-∞` when `p <= q` fails.
pub fn brute_entry(n: usize, w: &[usize], p: &Set, q: &Set) -> Trop {
    if !set_le(p, q) {
        return Trop::NegInf;
    }
    let mut best = 0;
    for mask in 0u32..1 << w.len() {
        let len = mask.count_ones() as usize;
        if len <= best {
            continue;
        }
        let sub: Vec<usize> = (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
        if readable(n, &sub, p, q) {
            best = len;
        }
    }
    Trop::Fin(best as i64)
}

/// Longest weakly increasing subsequence with letters in `[p, q]`, by
/// enumeration.
pub fn brute_singleton(w: &[usize], p: usize, q: usize) -> i64 {
    let mut best = 0;
    for mask in 0u32..1 << w.len() {
        let sub: Vec<usize> = (0..w.len()).filter(|i| mask >> i & 1 == 1).map(|i| w[i]).collect();
        if sub.iter().all(|&x| p <= x && x <= q) && sub.windows(2).all(|s| s[0] <= s[1]) {
            best = best.max(sub.len());
        }
    }
    best as i64
}

fn add(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    Some(a? + b?)
}

fn opt(t: Trop) -> Option<i64> {
    t.finite()
}

/// Max-plus product by the textbook triple loop.
pub fn naive_mul(a: &TropMatrix, b: &TropMatrix) -> Vec<Vec<Option<i64>>> {
    let d = a.dim();
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).filter_map(|k| add(opt(a.get(i, k)), opt(b.get(k, j)))).max())
                .collect()
        })
        .collect()
}

pub fn as_options(m: &TropMatrix) -> Vec<Vec<Option<i64>>> {
    m.rows().into_iter().map(|r| r.into_iter().map(opt).collect()).collect()
}

/// Entries `<= m` in the bottom `k` rows, counted directly.
pub fn direct_row_count(t: &Tableau, k: usize, m: usize) -> i64 {
    t.rows().iter().take(k).flatten().filter(|&&y| y <= m).count() as i64
}

/// All words obtained from `w` by one Knuth move.
pub fn knuth_neighbours(w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(2) {
        let (a, b, c) = (w[i], w[i + 1], w[i + 2]);
        let mut swap = |j: usize| {
            let mut v = w.to_vec();
            v.swap(j, j + 1);
            out.push(v);
        };
        // y z x <-> y x z with x < y <= z
        if c < a && a <= b {
            swap(i + 1);
        }
        if b < a && a <= c {
            swap(i + 1);
        }
        // z x y <-> x z y with x <= y < z
        if b <= c && c < a {
            swap(i);
        }
        if a <= c && c < b {
            swap(i);
        }
    }
    out
}

/// The Knuth class of `w`, by breadth-first search.
pub fn knuth_class(w: &[usize]) -> std::collections::BTreeSet<Vec<usize>> {
    let mut seen = std::collections::BTreeSet::new();
    let mut queue = vec![w.to_vec()];
    seen.insert(w.to_vec());
    while let Some(v) = queue.pop() {
        for u in knuth_neighbours(&v) {
            if seen.insert(u.clone()) {
                queue.push(u);
            }
        }
    }
    seen
}

/// The tropical polynomial `f_{u,π}^w(x)` by enumerating every index subset
/// of `w` of size `|u|`. `x[s][v - 1]` is the value of variable `s` at
/// vertex `v`.
pub fn brute_f(w: &[usize], u: &[usize], pi: &[usize], x: &[Vec<i64>]) -> Option<i64> {
    let mut best = None;
    for mask in 0u32..1 << w.len() {
        if mask.count_ones() as usize != u.len() {
            continue;
        }
        let alpha: Vec<usize> = (0..w.len()).filter(|i| mask >> i & 1 == 1).collect();
        if alpha.iter().zip(u).any(|(&i, &s)| w[i] != s) {
            continue;
        }
        let mut total = 0;
        for (i, &s) in w.iter().enumerate() {
            if alpha.contains(&i) {
                continue;
            }
            let segment = alpha.iter().filter(|&&a| a < i).count();
            total += x[s][pi[segment] - 1];
        }
        best = best.max(Some(total));
    }
    best
}

pub fn random_word(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new(n, (0..len).map(|_| rng.gen_range(1..=n)).collect()).unwrap()
}

pub fn random_tableau(rng: &mut ChaCha8Rng, n: usize, max_len: usize) -> Tableau {
    Tableau::from_word(&random_word(rng, n, max_len))
}

/// A random tableau with `i_{x+1,y+1} >= i_{x,y}` for `x < y`.
///
/// Off-diagonal parameters are drawn weakly increasing along each diagonal;
/// diagonal parameters are then chosen from the top row down, each at least
/// the smallest value that keeps the row inequalities true.
pub fn random_diagonal_tableau(rng: &mut ChaCha8Rng, n: usize) -> Tableau {
    let mut p = vec![vec![0u64; n + 2]; n + 2];
    for d in 1..n {
        let mut v = 0;
        for x in 1..=n - d {
            v += rng.gen_range(0..=1);
            p[x][x + d] = v;
        }
    }
    for x in (1..=n).rev() {
        let mut need = 0i64;
        if x < n {
            let (mut lower, mut upper) = (0i64, 0i64);
            for t in 0..n - x {
                if t > 0 {
                    lower += p[x][x + t] as i64;
                }
                upper += p[x + 1][x + t + 1] as i64;
                need = need.max(upper - lower);
            }
        }
        p[x][x] = need.max(0) as u64 + rng.gen_range(0..=2);
    }
    let mut params = TabParams::zero(n);
    for x in 1..=n {
        for y in x..=n {
            params.set(x, y, p[x][y]).unwrap();
        }
    }
    Tableau::from_parameters(&params).expect("generator keeps the row inequalities")
}

/// `i_{x,y}` read off a tableau directly.
pub fn direct_param(t: &Tableau, x: usize, y: usize) -> u64 {
    t.rows().get(x - 1).map_or(0, |r| r.iter().filter(|&&v| v == y).count() as u64)
}
