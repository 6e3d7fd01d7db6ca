//! Independent oracles and instance generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use topcoh::linalg::{FieldSpec, Matrix};
use topcoh::{Monomial, MonomialIdeal, VarSet};

pub const FIELDS: [FieldSpec; 2] = [FieldSpec::Rationals, FieldSpec::Prime(2)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vs(i: &[usize]) -> VarSet {
    VarSet::from_indices(i.iter().copied())
}

pub fn sq(d: usize, supports: &[&[usize]]) -> MonomialIdeal {
    MonomialIdeal::from_supports(d, supports.iter().map(|s| vs(s)))
}

pub fn random_subset(rng: &mut ChaCha8Rng, d: usize, density: f64) -> VarSet {
    VarSet::from_indices((0..d).filter(|_| rng.gen_bool(density)))
}

/// Squarefree, proper; zero with probability `zero_prob`.
pub fn random_squarefree(rng: &mut ChaCha8Rng, d: usize, max_gens: usize, zero_prob: f64) -> MonomialIdeal {
    if rng.gen_bool(zero_prob) {
        return MonomialIdeal::zero(d);
    }
    let k = rng.gen_range(1..=max_gens);
    let density = rng.gen_range(0.25..0.7);
    let supports = (0..k).map(|_| {
        let s = random_subset(rng, d, density);
        if s.is_empty() {
            VarSet::singleton(rng.gen_range(0..d))
        } else {
            s
        }
    });
    MonomialIdeal::from_supports(d, supports.collect::<Vec<_>>())
}

/// Arbitrary monomial ideal with exponents up to `max_exp`.
pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, d: usize, max_gens: usize, max_exp: u32) -> MonomialIdeal {
    let k = rng.gen_range(1..=max_gens);
    let gens: Vec<Monomial> = (0..k)
        .map(|_| loop {
            let e: Vec<u32> = (0..d)
                .map(|_| if rng.gen_bool(0.45) { rng.gen_range(1..=max_exp) } else { 0 })
                .collect();
            if e.iter().any(|&x| x > 0) {
                break Monomial::new(e);
            }
        })
        .collect();
    topcoh::monomial::minimalize(gens, d).unwrap()
}

pub fn random_monomial(rng: &mut ChaCha8Rng, d: usize, max_exp: u32) -> Monomial {
    Monomial::new((0..d).map(|_| rng.gen_range(0..=max_exp)).collect())
}

/// Raw divisibility: some generator divides `m`.
pub fn brute_member(gens: &[Vec<u32>], m: &[u32]) -> bool {
    gens.iter().any(|g| g.iter().zip(m).all(|(a, b)| a <= b))
}

pub fn raw(ideal: &MonomialIdeal) -> Vec<Vec<u32>> {
    ideal.gens().iter().map(|g| g.exps().to_vec()).collect()
}

/// Every exponent vector in `{0..=max_exp}^d`.
pub fn exponent_box(d: usize, max_exp: u32) -> Vec<Vec<u32>> {
    assert!(d > 0);
    (0..d).map(|_| 0..=max_exp).multi_cartesian_product().collect()
}

/// `dim Tor_i(S/I, K)_α` for all `i`, from the Koszul complex `K(u) ⊗ S/I` in degree `α`.
pub fn koszul_tor(ideal: &MonomialIdeal, field: FieldSpec, alpha: &[u32]) -> Vec<usize> {
    let d = alpha.len();
    let gens = raw(ideal);
    let support: Vec<usize> = (0..d).filter(|&k| alpha[k] > 0).collect();
    // Basis of K_i ⊗ S/I in degree α: e_τ ⊗ u^{α − 1_τ} with the coefficient monomial outside I.
    let basis: Vec<Vec<Vec<usize>>> = (0..=support.len())
        .map(|i| {
            support
                .iter()
                .copied()
                .combinations(i)
                .filter(|tau| {
                    let mut coeff = alpha.to_vec();
                    for &k in tau {
                        coeff[k] -= 1;
                    }
                    !brute_member(&gens, &coeff)
                })
                .collect()
        })
        .collect();
    let boundary_rank = |i: usize| -> usize {
        // ∂_i : C_i → C_{i−1}
        if i == 0 || i >= basis.len() || basis[i].is_empty() || basis[i - 1].is_empty() {
            return 0;
        }
        let mut m = Matrix::zeros(basis[i - 1].len(), basis[i].len());
        for (col, tau) in basis[i].iter().enumerate() {
            for (pos, &k) in tau.iter().enumerate() {
                let face: Vec<usize> = tau.iter().copied().filter(|&x| x != k).collect();
                if let Some(row) = basis[i - 1].iter().position(|f| *f == face) {
                    m.set(row, col, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m.rank(field)
    };
    (0..basis.len())
        .map(|i| basis[i].len() - boundary_rank(i) - boundary_rank(i + 1))
        .collect()
}

/// Koszul Betti table at all degrees in `{0,1,2}^d`; nonzero entries keyed by `(i, α)`.
pub fn koszul_table(ideal: &MonomialIdeal, field: FieldSpec) -> BTreeMap<(usize, Vec<u32>), usize> {
    let mut out = BTreeMap::new();
    for alpha in exponent_box(ideal.ambient(), 2) {
        for (i, v) in koszul_tor(ideal, field, &alpha).into_iter().enumerate() {
            if v > 0 {
                out.insert((i, alpha.clone()), v);
            }
        }
    }
    out
}

/// All antichains of nonempty subsets of `[d]`: every proper squarefree ideal, as supports.
pub fn antichains(d: usize) -> Vec<Vec<VarSet>> {
    let nonempty: Vec<VarSet> = VarSet::full(d).subsets().filter(|s| !s.is_empty()).collect();
    let mut out = Vec::new();
    fn grow(i: usize, nonempty: &[VarSet], cur: &mut Vec<VarSet>, out: &mut Vec<Vec<VarSet>>) {
        if i == nonempty.len() {
            out.push(cur.clone());
            return;
        }
        grow(i + 1, nonempty, cur, out);
        let s = nonempty[i];
        if cur.iter().all(|t| !t.is_subset(s) && !s.is_subset(*t)) {
            cur.push(s);
            grow(i + 1, nonempty, cur, out);
            cur.pop();
        }
    }
    grow(0, &nonempty, &mut Vec::new(), &mut out);
    out
}

fn permute(s: VarSet, perm: &[usize]) -> VarSet {
    VarSet::from_indices(s.iter().map(|i| perm[i]))
}

fn key(sets: &[VarSet], perm: &[usize]) -> Vec<u64> {
    sets.iter().map(|&s| permute(s, perm).bits()).sorted().collect()
}

/// One representative per orbit of `S_d` acting on pairs `(a, J)` of squarefree ideals with `a + J` proper.
pub fn canonical_pairs(d: usize) -> Vec<(MonomialIdeal, MonomialIdeal)> {
    let all = antichains(d);
    let perms: Vec<Vec<usize>> = (0..d).permutations(d).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in &all {
        for j in &all {
            let canon = perms.iter().map(|p| (key(a, p), key(j, p))).min().unwrap();
            if !seen.insert(canon) {
                continue;
            }
            let (ai, ji) = (MonomialIdeal::from_supports(d, a.clone()), MonomialIdeal::from_supports(d, j.clone()));
            if ai.sum(&ji).unwrap().is_unit() {
                continue;
            }
            out.push((ai, ji));
        }
    }
    out
}

pub fn shuffle_subsets(rng: &mut ChaCha8Rng, d: usize) -> Vec<VarSet> {
    let mut all: Vec<VarSet> = VarSet::full(d).subsets().collect();
    all.shuffle(rng);
    all
}
