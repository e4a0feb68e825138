//! Slow, obviously-correct reference computations shared by the
//! integration tests. None of them call into the library's own
//! implementations of the quantity being checked.

#![allow(dead_code)]

use positroid::BoundedAffinePermutation;

pub fn bap(w: &[i64]) -> BoundedAffinePermutation {
    BoundedAffinePermutation::new(w.to_vec()).unwrap()
}

/// `f` on all of `Z` from its window.
pub fn lift(w: &[i64], i: i64) -> i64 {
    let n = w.len() as i64;
    let t = (i - 1).div_euclid(n);
    w[(i - 1 - t * n) as usize] + t * n
}

/// Affine inversions counted from the definition: pairs `i < j` with
/// `i` in `1..=n`, `j` anywhere in `Z`, and `f(i) > f(j)`. Boundedness
/// means only `j < i + 2n` can qualify.
pub fn brute_length(w: &[i64]) -> usize {
    let n = w.len() as i64;
    let mut count = 0;
    for i in 1..=n {
        for j in (i + 1)..(i + 2 * n + 1) {
            if lift(w, i) > lift(w, j) {
                count += 1;
            }
        }
    }
    count
}

pub fn brute_k(w: &[i64]) -> i64 {
    let n = w.len() as i64;
    w.iter().enumerate().map(|(i, &v)| v - i as i64 - 1).sum::<i64>() / n
}

pub fn brute_fix(w: &[i64]) -> usize {
    w.iter().enumerate().filter(|(i, &v)| v == *i as i64 + 1).count()
}

/// Every window in the box `i <= w_i <= i + n` that is a bijection mod n
/// with displacement total `kn`.
pub fn brute_enumerate(k: usize, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(k: usize, n: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            let mut res: Vec<i64> = cur.iter().map(|v| v.rem_euclid(n as i64)).collect();
            res.sort();
            res.dedup();
            let total: i64 = cur.iter().enumerate().map(|(i, &v)| v - i as i64 - 1).sum();
            if res.len() == n && total == (k * n) as i64 {
                out.push(cur.clone());
            }
            return;
        }
        let i = cur.len() as i64 + 1;
        for v in i..=i + n as i64 {
            cur.push(v);
            rec(k, n, cur, out);
            cur.pop();
        }
    }
    rec(k, n, &mut cur, &mut out);
    out
}

/// Strand permutation of a braid followed by the half twist, computed by
/// moving labelled strands through the letters; returns the number of
/// cycles, i.e. closure components.
pub fn closure_cycles(strands: usize, letters: &[usize]) -> usize {
    let mut all = letters.to_vec();
    for top in 1..strands {
        for g in (1..=top).rev() {
            all.push(g);
        }
    }
    // pos[s] = where the strand that entered at s currently sits
    let mut at: Vec<usize> = (0..strands).collect();
    for &g in &all {
        at.swap(g - 1, g);
    }
    // at[p] = entry strand now at position p; closure sends p back to entry
    let mut exit_of = vec![0; strands];
    for (p, &s) in at.iter().enumerate() {
        exit_of[s] = p;
    }
    let mut seen = vec![false; strands];
    let mut cycles = 0;
    for s in 0..strands {
        if !seen[s] {
            cycles += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = exit_of[x];
            }
        }
    }
    cycles
}

/// Orbits of `i -> w_i mod n` that are not fixed points `w_i = i`.
pub fn brute_components(w: &[i64]) -> usize {
    let n = w.len();
    let mut seen = vec![false; n];
    let mut count = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut x = s;
        let mut len = 0;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = (w[x] - 1).rem_euclid(n as i64) as usize;
        }
        if !(len == 1 && w[s] == s as i64 + 1) {
            count += 1;
        }
    }
    count
}

/// Expands `(g1 g2 ...)^e` style factors into a flat letter list.
pub fn word(factors: &[(&[usize], usize)]) -> Vec<usize> {
    factors.iter().flat_map(|(letters, e)| letters.repeat(*e)).collect()
}

pub fn word_text(letters: &[usize]) -> String {
    letters.iter().map(|g| format!("s{g}")).collect::<Vec<_>>().join(" ")
}

pub const GENUS_TWO_CHAIN: [[i64; 8]; 7] = [
    [5, 4, 7, 6, 8, 9, 10, 11],
    [5, 4, 8, 6, 7, 9, 10, 11],
    [5, 4, 8, 7, 6, 9, 10, 11],
    [6, 4, 8, 7, 5, 9, 10, 11],
    [6, 3, 8, 7, 5, 9, 10, 12],
    [6, 2, 8, 7, 5, 9, 11, 12],
    [7, 2, 8, 6, 5, 9, 11, 12],
];

pub fn genus_two_words() -> Vec<Vec<usize>> {
    let a: &[usize] = &[1, 2];
    vec![
        word(&[(a, 4), (&[2, 1, 2], 1)]),
        word(&[(a, 3), (&[2], 2), (&[1, 2], 1)]),
        word(&[(a, 3), (&[2, 1, 2], 1)]),
        word(&[(a, 3), (&[2, 1, 2], 1)]),
        word(&[(a, 3), (&[2, 1], 1)]),
        word(&[(a, 3), (&[2, 1], 1)]),
        word(&[(a, 3), (&[1], 1)]),
    ]
}
