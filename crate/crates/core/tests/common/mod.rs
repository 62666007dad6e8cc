//! Test-side oracles shared by the property and acceptance suites.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quadlin_core::{CycNum, IntMatrix, Mat, Permutation, Rational};

/// Eigenvalue of `e_j ↦ c_j e_{π(j)}` as a fraction of a full turn: each cycle of length `L`
/// with product `ζ_n^k` contributes the `L` solutions of `λ^L = ζ_n^k`.
pub fn monomial_spectrum(perm: &Permutation, exps: &[i64], n: i64) -> BTreeMap<Rational, usize> {
    let mut out = BTreeMap::new();
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        while !seen[perm.apply(*cycle.last().unwrap())] {
            let next = perm.apply(*cycle.last().unwrap());
            seen[next] = true;
            cycle.push(next);
        }
        let l = cycle.len() as i64;
        let k: i64 = cycle.iter().map(|&j| exps[j]).sum();
        for j in 0..l {
            let t = Rational::new(BigInt::from(k + n * j), BigInt::from(n * l));
            let t = &t - &Rational::from_integer(t.floor().to_integer());
            *out.entry(t).or_insert(0) += 1;
        }
    }
    out
}

pub fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize) -> Mat {
    let mut p = Mat::identity(dim);
    for _ in 0..dim * 2 {
        let (i, j) = (rng.gen_range(0..dim), rng.gen_range(0..dim));
        if i == j {
            continue;
        }
        let mut e = Mat::identity(dim);
        e.set(i, j, CycNum::from_int(rng.gen_range(-2..=2)));
        p = p.mul(&e);
    }
    p
}

pub fn int_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    IntMatrix::from_rows(&rows)
}

pub fn form(a: &[i64; 6], b: &[i64; 6]) -> i64 {
    a[0] * b[0] - (1..6).map(|i| a[i] * b[i]).sum::<i64>()
}

pub fn column(m: &IntMatrix, j: usize) -> [i64; 6] {
    let mut c = [0; 6];
    for (i, x) in c.iter_mut().enumerate() {
        *x = num_traits::ToPrimitive::to_i64(m.get(i, j)).unwrap();
    }
    c
}


/// A random monomial matrix `e_j ↦ ζ_n^{k_j} e_{π(j)}`, returned with `π`, the `k_j` and `n`.
pub fn random_monomial(rng: &mut ChaCha8Rng) -> (Mat, Permutation, Vec<i64>, i64) {
    let dim = rng.gen_range(2..=5);
    let n = [1i64, 2, 3, 4, 6][rng.gen_range(0..5)];
    let mut images: Vec<usize> = (0..dim).collect();
    for i in (1..dim).rev() {
        images.swap(i, rng.gen_range(0..=i));
    }
    let perm = Permutation::new(images).unwrap();
    let exps: Vec<i64> = (0..dim).map(|_| rng.gen_range(0..n)).collect();
    let mut mono = Mat::zeros(dim, dim);
    for j in 0..dim {
        mono.set(perm.apply(j), j, CycNum::root_of_unity(n as u32, exps[j]));
    }
    (mono, perm, exps, n)
}

/// Rank over Q, by fraction-free elimination.
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let (a, b) = (m[rank][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[rank][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over F_2.
pub fn rank_f2(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<bool>> = rows.iter().map(|r| r.iter().map(|&x| x.rem_euclid(2) == 1).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c]) else { continue };
        m.swap(rank, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] {
                for j in 0..cols {
                    m[i][j] ^= m[rank][j];
                }
            }
        }
        rank += 1;
    }
    rank
}

/// For an involution `A`, `H¹` is `(Z/2)^b` with `b` the number of sign summands,
/// and `b = rank_Q(A − 1) − rank_F2(A − 1)`.
pub fn involution_h1_rank(a: &[Vec<i64>]) -> usize {
    let n = a.len();
    let d: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| a[i][j] - (i == j) as i64).collect()).collect();
    rank_q(&d) - rank_f2(&d)
}
