//! Shared generators for the integration suites.
#![allow(dead_code)]

use grident_core::graph::MonomialGraph;
use grident_core::identity::{is_identity_classes, is_identity_oracle};
use grident_core::monomial::{GradedPolynomial, Monomial};
use grident_core::paths::{eulerian_paths_from, Permutation};
use grident_core::{Caps, FiniteGroup, GroupElement};
use num_rational::BigRational;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random strongly multilinear monomial of the given degree, with variable
/// indices drawn (distinct) from 1..=2n and uniform weights.
pub fn random_monomial(rng: &mut ChaCha8Rng, group: &FiniteGroup, degree: usize) -> Monomial {
    let mut pool: Vec<u32> = (1..=(2 * degree.max(1)) as u32).collect();
    pool.shuffle(rng);
    let factors = pool[..degree]
        .iter()
        .map(|&v| {
            let w = group.element(rng.gen_range(1..=group.order())).unwrap();
            (v, w)
        })
        .collect();
    Monomial::new(group, factors).unwrap()
}

/// Random monomial plus a permutation drawn uniformly from its
/// prefix-product-preserving ones (the identity is always available).
pub fn random_ipp_pair(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    degree: usize,
    caps: &Caps,
) -> (Monomial, Permutation) {
    let m = random_monomial(rng, group, degree);
    let graph = MonomialGraph::of_monomial(&m);
    let paths: Vec<Vec<u32>> = eulerian_paths_from(&graph, &group.identity()).collect();
    let pick = &paths[rng.gen_range(0..paths.len())];
    let pos_of: std::collections::HashMap<u32, usize> = m
        .factors()
        .iter()
        .enumerate()
        .map(|(j, (v, _))| (*v, j + 1))
        .collect();
    let images: Vec<usize> = pick.iter().map(|l| pos_of[l]).collect();
    let pi = Permutation::from_images(images).unwrap();
    debug_assert!(degree <= caps.path_degree);
    (m, pi)
}

fn random_coeff(rng: &mut ChaCha8Rng) -> BigRational {
    let numer: i64 = loop {
        let v = rng.gen_range(-5..=5);
        if v != 0 {
            break v;
        }
    };
    let denom: i64 = rng.gen_range(1..=4);
    BigRational::new(numer.into(), denom.into())
}

/// Random degree-n strongly multilinear polynomial in the classical frame:
/// one weight per variable, every term a reordering of
/// `x[1,w1] ... x[n,wn]`, rational coefficients with numerators in [-5, 5]
/// and denominators in 1..=4.
pub fn random_polynomial(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_terms: usize,
    degree: usize,
) -> GradedPolynomial {
    let weights: Vec<GroupElement> = (0..degree)
        .map(|_| group.element(rng.gen_range(1..=group.order())).unwrap())
        .collect();
    let terms = (1..=max_terms.max(1)).map(|_| {
        let mut order: Vec<usize> = (0..degree).collect();
        order.shuffle(rng);
        let factors = order
            .into_iter()
            .map(|i| (i as u32 + 1, weights[i].clone()))
            .collect();
        let m = Monomial::new(group, factors).unwrap();
        (random_coeff(rng), m)
    });
    GradedPolynomial::new(group, terms.collect()).unwrap()
}

/// Random polynomial whose terms pick weights independently, so one
/// variable index may appear with several weights across terms.
pub fn random_mixed_polynomial(
    rng: &mut ChaCha8Rng,
    group: &FiniteGroup,
    max_terms: usize,
    degree: usize,
) -> GradedPolynomial {
    let terms = (1..=max_terms.max(1)).map(|_| {
        let mut vars: Vec<u32> = (1..=degree as u32).collect();
        vars.shuffle(rng);
        let factors = vars
            .into_iter()
            .map(|v| (v, group.element(rng.gen_range(1..=group.order())).unwrap()))
            .collect();
        let m = Monomial::new(group, factors).unwrap();
        (random_coeff(rng), m)
    });
    GradedPolynomial::new(group, terms.collect()).unwrap()
}

/// Both decision routes, asserted to agree; returns the common verdict.
pub fn agreed_verdict(f: &GradedPolynomial, caps: &Caps) -> bool {
    let classes = is_identity_classes(f).is_identity;
    let oracle = is_identity_oracle(f, caps).unwrap();
    assert_eq!(classes, oracle, "method disagreement on {f}");
    classes
}

pub fn weights_from_word(group: &FiniteGroup, word: &[usize]) -> Vec<GroupElement> {
    word.iter().map(|&i| group.element(i).unwrap()).collect()
}

/// All k^n weight words as 1-based index vectors, lexicographic.
pub fn all_words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let total = (k as u64).pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut word = vec![0usize; n];
            for j in (0..n).rev() {
                word[j] = (idx % k as u64) as usize + 1;
                idx /= k as u64;
            }
            word
        })
        .collect()
}

/// All permutations of 1..=n in image form.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation::from_images(cur.clone()).unwrap());
            return;
        }
        for v in 1..=n {
            if !used[v - 1] {
                used[v - 1] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}
