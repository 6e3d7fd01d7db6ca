//! Multigraded Čech complex of `R = S/J` on the generators of `√a`, slice by slice.
//!
//! In degree `b ∈ Z^d` the component `(R_{m_σ})_b` is spanned by the Laurent
//! monomial `u^b` when it survives localization, so every slice is a complex of
//! 0/1-dimensional pieces with ±1 Čech signs. A slice only depends on which
//! coordinates of `b` are negative, zero or positive; results are cached per
//! sign pattern.

use std::collections::HashMap;

use crate::error::{invalid, Error, Result};
use crate::linalg::{FieldSpec, Matrix, VectorSpaceComplex};
use crate::monomial::{Monomial, MonomialIdeal, VarSet};
use crate::sr_complex::QuotientIdeal;

/// Most generators the oracle accepts.
pub const MAX_CECH_GENERATORS: usize = 10;

/// Inclusive integer box of multidegrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBox {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl DegreeBox {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return invalid("degree box corners have different lengths");
        }
        if lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return invalid("degree box needs lower <= upper componentwise");
        }
        Ok(DegreeBox { lower, upper })
    }

    pub fn cube(d: usize, lo: i64, hi: i64) -> Result<Self> {
        DegreeBox::new(vec![lo; d], vec![hi; d])
    }

    /// `[−3, 1]^d`.
    pub fn default_for(d: usize) -> Self {
        DegreeBox::cube(d, -3, 1).expect("-3 <= 1")
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn contains(&self, b: &[i64]) -> bool {
        b.len() == self.dim() && b.iter().enumerate().all(|(i, &v)| self.lower[i] <= v && v <= self.upper[i])
    }

    pub fn len(&self) -> usize {
        self.lower.iter().zip(&self.upper).map(|(l, u)| (u - l + 1) as usize).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Degrees in lexicographic order.
    pub fn degrees(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        let mut cur = Some(self.lower.clone());
        std::iter::from_fn(move || {
            let out = cur.clone()?;
            let mut next = out.clone();
            let mut k = next.len();
            loop {
                if k == 0 {
                    cur = None;
                    break;
                }
                k -= 1;
                if next[k] < self.upper[k] {
                    next[k] += 1;
                    cur = Some(next);
                    break;
                }
                next[k] = self.lower[k];
            }
            Some(out)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct SignPattern {
    neg: VarSet,
    pos: VarSet,
}

impl SignPattern {
    fn of(b: &[i64]) -> Self {
        SignPattern {
            neg: VarSet::from_indices(b.iter().enumerate().filter(|(_, &v)| v < 0).map(|(i, _)| i)),
            pos: VarSet::from_indices(b.iter().enumerate().filter(|(_, &v)| v > 0).map(|(i, _)| i)),
        }
    }
}

fn piece_nonzero(j_supports: &[VarSet], w: VarSet, pattern: SignPattern) -> bool {
    pattern.neg.is_subset(w) && {
        let face = pattern.pos.union(w);
        !j_supports.iter().any(|s| s.is_subset(face))
    }
}

/// Dimension (0 or 1) of `((S/J)[1/m_W])_deg`, spanned by `u^deg` when nonzero.
///
/// Nonzero iff every negative coordinate of `deg` lies in `W` and the support of
/// the positive part together with `W` is a face of the Stanley–Reisner complex.
pub fn localization_piece(j: &MonomialIdeal, w: VarSet, deg: &[i64]) -> bool {
    piece_nonzero(&j.supports(), w, SignPattern::of(deg))
}

/// Ranks of `H^i` of the Čech complex on `generators`, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechReport {
    pub generators: Vec<Monomial>,
    pub degree_box: DegreeBox,
    /// `(degree, [rank H^0, …, rank H^t])` for every degree in the box, in lexicographic order.
    pub ranks: Vec<(Vec<i64>, Vec<usize>)>,
    /// Largest `i` with a nonzero rank somewhere in the box.
    pub top_nonvanishing: Option<usize>,
    pub field: FieldSpec,
}

/// Čech data for a fixed `(a, J)`; slices are built on demand.
pub struct CechComplex {
    field: FieldSpec,
    generators: Vec<Monomial>,
    j_supports: Vec<VarSet>,
    /// Support of `lcm(g_k : k ∈ σ)` for every `σ ⊆ [t]`, indexed by bitmask.
    lcm_support: Vec<VarSet>,
    /// Subsets of `[t]` of each size, in lexicographic order.
    layers: Vec<Vec<u32>>,
    slices: HashMap<SignPattern, Slice>,
}

#[derive(Clone, Debug)]
struct Slice {
    basis: Vec<Vec<u32>>,
    complex: VectorSpaceComplex,
    ranks: Vec<usize>,
}

impl CechComplex {
    pub fn new(a: &QuotientIdeal, field: FieldSpec) -> Result<Self> {
        let j = a.ring().j();
        let generators: Vec<Monomial> = a
            .lift()
            .radical()
            .gens()
            .iter()
            .filter(|g| !j.contains(g))
            .cloned()
            .collect();
        let t = generators.len();
        if t > MAX_CECH_GENERATORS {
            return Err(Error::Guard(format!(
                "Čech oracle limited to {MAX_CECH_GENERATORS} generators, got {t}"
            )));
        }
        let supports: Vec<VarSet> = generators.iter().map(Monomial::support).collect();
        let lcm_support = (0u32..1 << t)
            .map(|mask| {
                (0..t)
                    .filter(|k| mask >> k & 1 == 1)
                    .fold(VarSet::empty(), |acc, k| acc.union(supports[k]))
            })
            .collect();
        let layers = (0..=t)
            .map(|size| {
                itertools::Itertools::combinations(0..t, size)
                    .map(|c| c.iter().fold(0u32, |m, &k| m | 1 << k))
                    .collect()
            })
            .collect();
        Ok(CechComplex {
            field,
            generators,
            j_supports: j.supports(),
            lcm_support,
            layers,
            slices: HashMap::new(),
        })
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    fn build_slice(&self, pattern: SignPattern) -> Slice {
        let basis: Vec<Vec<u32>> = self
            .layers
            .iter()
            .map(|layer| {
                layer
                    .iter()
                    .copied()
                    .filter(|&s| piece_nonzero(&self.j_supports, self.lcm_support[s as usize], pattern))
                    .collect()
            })
            .collect();
        let t = self.generators.len();
        let maps = (0..t)
            .map(|i| {
                let index: HashMap<u32, usize> = basis[i + 1].iter().enumerate().map(|(k, &s)| (s, k)).collect();
                let mut m = Matrix::zeros(basis[i + 1].len(), basis[i].len());
                for (col, &sigma) in basis[i].iter().enumerate() {
                    for k in (0..t).filter(|k| sigma >> k & 1 == 0) {
                        if let Some(&row) = index.get(&(sigma | 1 << k)) {
                            let before = (sigma & ((1u32 << k) - 1)).count_ones();
                            m.set(row, col, if before.is_multiple_of(2) { 1 } else { -1 });
                        }
                    }
                }
                m
            })
            .collect();
        let dims = basis.iter().map(Vec::len).collect();
        let complex = VectorSpaceComplex::new_unchecked(self.field, dims, maps).expect("shapes built consistently");
        let ranks = complex.cohomology_ranks();
        Slice { basis, complex, ranks }
    }

    fn slice(&mut self, pattern: SignPattern) -> &Slice {
        if !self.slices.contains_key(&pattern) {
            let s = self.build_slice(pattern);
            self.slices.insert(pattern, s);
        }
        &self.slices[&pattern]
    }

    /// The degree-`b` slice as a vector-space complex.
    pub fn slice_complex(&mut self, b: &[i64]) -> VectorSpaceComplex {
        self.slice(SignPattern::of(b)).complex.clone()
    }

    pub fn ranks_at(&mut self, b: &[i64]) -> Vec<usize> {
        self.slice(SignPattern::of(b)).ranks.clone()
    }

    /// Whether multiplication by `u^shift` from degree `b` to `b + shift` is nonzero on `H^i`.
    pub fn multiplication_nonzero(&mut self, b: &[i64], shift: &[i64], i: usize) -> bool {
        let target: Vec<i64> = b.iter().zip(shift).map(|(x, y)| x + y).collect();
        let (src, dst) = (SignPattern::of(b), SignPattern::of(&target));
        let t = self.generators.len();
        if i > t {
            return false;
        }
        let field = self.field;
        let source = self.slice(src).clone();
        let dest = self.slice(dst);
        if source.ranks[i] == 0 || dest.ranks[i] == 0 {
            return false;
        }
        // φ(ker δ) ⊄ im δ' iff rank [[δ, 0], [φ, δ']] − rank δ > rank δ'.
        let n_src = source.basis[i].len();
        let n_next = if i < t { source.basis[i + 1].len() } else { 0 };
        let n_dst = dest.basis[i].len();
        let n_prev = if i > 0 { dest.basis[i - 1].len() } else { 0 };
        let mut block = Matrix::zeros(n_next + n_dst, n_src + n_prev);
        let mut rank_delta = 0;
        if i < t {
            let delta = &source.complex.maps()[i];
            block.paste(0, 0, delta);
            rank_delta = delta.rank(field);
        }
        let index: HashMap<u32, usize> = dest.basis[i].iter().enumerate().map(|(k, &s)| (s, k)).collect();
        for (col, sigma) in source.basis[i].iter().enumerate() {
            if let Some(&row) = index.get(sigma) {
                block.set(n_next + row, col, 1);
            }
        }
        let mut rank_prev = 0;
        if i > 0 {
            let delta_prev = &dest.complex.maps()[i - 1];
            block.paste(n_next, n_src, delta_prev);
            rank_prev = delta_prev.rank(field);
        }
        block.rank(field) - rank_delta > rank_prev
    }
}

pub fn cech_ranks(a: &QuotientIdeal, degree_box: &DegreeBox, field: FieldSpec) -> Result<CechReport> {
    if degree_box.dim() != a.ring().ambient() {
        return invalid("degree box dimension differs from the number of variables");
    }
    let mut cx = CechComplex::new(a, field)?;
    let ranks: Vec<(Vec<i64>, Vec<usize>)> = degree_box
        .degrees()
        .map(|b| {
            let r = cx.ranks_at(&b);
            (b, r)
        })
        .collect();
    let top_nonvanishing = ranks
        .iter()
        .filter_map(|(_, r)| r.iter().rposition(|&x| x > 0))
        .max();
    Ok(CechReport {
        generators: cx.generators().to_vec(),
        degree_box: degree_box.clone(),
        ranks,
        top_nonvanishing,
        field,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    AnnihilatesInBox,
    ActsNonzero { witness: Vec<i64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilationReport {
    pub monomial: Monomial,
    pub i: usize,
    pub verdict: Verdict,
    /// Degrees `b` with `b` and `b + deg m` both in the box.
    pub degrees_checked: usize,
    /// Degrees skipped because `b + deg m` leaves the box.
    pub coverage_gaps: usize,
    pub field: FieldSpec,
}

/// Checks whether `m` kills `H^i_a(R)` on every degree of the box.
pub fn annihilation_check(
    m: &Monomial,
    a: &QuotientIdeal,
    i: usize,
    degree_box: &DegreeBox,
    field: FieldSpec,
) -> Result<AnnihilationReport> {
    let d = a.ring().ambient();
    if m.dim() != d || degree_box.dim() != d {
        return invalid("monomial and degree box must live in the ring's variables");
    }
    let mut cx = CechComplex::new(a, field)?;
    let shift: Vec<i64> = m.exps().iter().map(|&e| e as i64).collect();
    let mut cache: HashMap<(SignPattern, SignPattern), bool> = HashMap::new();
    let (mut checked, mut gaps) = (0, 0);
    for b in degree_box.degrees() {
        let target: Vec<i64> = b.iter().zip(&shift).map(|(x, y)| x + y).collect();
        if !degree_box.contains(&target) {
            gaps += 1;
            continue;
        }
        checked += 1;
        let key = (SignPattern::of(&b), SignPattern::of(&target));
        let nonzero = match cache.get(&key) {
            Some(&v) => v,
            None => {
                let v = cx.multiplication_nonzero(&b, &shift, i);
                cache.insert(key, v);
                v
            }
        };
        if nonzero {
            return Ok(AnnihilationReport {
                monomial: m.clone(),
                i,
                verdict: Verdict::ActsNonzero { witness: b },
                degrees_checked: checked,
                coverage_gaps: gaps,
                field,
            });
        }
    }
    Ok(AnnihilationReport {
        monomial: m.clone(),
        i,
        verdict: Verdict::AnnihilatesInBox,
        degrees_checked: checked,
        coverage_gaps: gaps,
        field,
    })
}
