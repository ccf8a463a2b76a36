//! Oracles shared by the integration tests. They use only the public scalar
//! types and never call the structures they check.

#![allow(dead_code)]

pub mod hopf;

use std::collections::BTreeSet;

use qinv_core::ribbon::{BraidWord, CrossingSign};
use qinv_core::ring::LaurentScalar;

/// Kauffman bracket of the closure of `word` on `k` strands, as a Laurent
/// polynomial in `A` (stored in the variable `v`), normalized by `<O> = δ`
/// with `δ = -A^2 - A^-2`.
///
/// State sum over smoothings: `σ_i = A·1 + A⁻¹·e_i`, `σ_i⁻¹ = A⁻¹·1 + A·e_i`.
pub fn kauffman_bracket(k: usize, word: &BraidWord) -> LaurentScalar {
    let gens = &word.0;
    let l = gens.len();
    let delta = -(&LaurentScalar::v_pow(2) + &LaurentScalar::v_pow(-2));
    let mut total = LaurentScalar::zero();
    for mask in 0..(1u64 << l) {
        let levels = l.max(1);
        let mut uf: Vec<usize> = (0..levels * k).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            r
        }
        fn join(p: &mut [usize], a: usize, b: usize) {
            let (x, y) = (find(p, a), find(p, b));
            p[x] = y;
        }
        // level l is identified with level 0 by the closure
        let node = |t: usize, j: usize| (t % levels) * k + j;
        let mut exponent = 0i64;
        for (t, g) in gens.iter().enumerate() {
            let i = g.index - 1;
            let e_state = (mask >> t) & 1 == 1;
            let positive = g.sign == CrossingSign::Positive;
            exponent += if positive != e_state { 1 } else { -1 };
            for j in 0..k {
                if !(e_state && (j == i || j == i + 1)) {
                    join(&mut uf, node(t, j), node(t + 1, j));
                }
            }
            if e_state {
                join(&mut uf, node(t, i), node(t, i + 1));
                join(&mut uf, node(t + 1, i), node(t + 1, i + 1));
            }
        }
        let roots: BTreeSet<usize> = (0..levels * k).map(|x| find(&mut uf, x)).collect();
        total = &total + &(&LaurentScalar::v_pow(exponent) * &delta.pow(roots.len() as u32));
    }
    total
}

/// Number of cycles of the permutation underlying a braid word on `k` strands.
pub fn closure_components(k: usize, word: &BraidWord) -> usize {
    let mut perm: Vec<usize> = (0..k).collect();
    for g in &word.0 {
        perm.swap(g.index - 1, g.index);
    }
    let mut seen = vec![false; k];
    let mut cycles = 0;
    for s in 0..k {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

pub fn writhe(word: &BraidWord) -> i64 {
    word.0
        .iter()
        .map(|g| {
            if g.sign == CrossingSign::Positive {
                1
            } else {
                -1
            }
        })
        .sum()
}

/// The `V_1` framed invariant predicted from the bracket: `(-1)^(c + w) <D>` at `A = v`.
pub fn kauffman_prediction(k: usize, word: &BraidWord) -> LaurentScalar {
    let sign = (closure_components(k, word) as i64 + writhe(word)).rem_euclid(2);
    let b = kauffman_bracket(k, word);
    if sign == 1 {
        -b
    } else {
        b
    }
}

/// `v^(-3w)`: the writhe correction for `V_1`, whose twist is `v^3`.
pub fn fundamental_framing_factor(word: &BraidWord) -> LaurentScalar {
    LaurentScalar::v_pow(-3 * writhe(word))
}

/// `[n]` as an explicit sum `Σ v^(2(n-1-2j))`, written independently of the crate.
pub fn qint(n: i64) -> LaurentScalar {
    let mut x = LaurentScalar::zero();
    for j in 0..n {
        x = &x + &LaurentScalar::v_pow(2 * (n - 1 - 2 * j));
    }
    x
}
