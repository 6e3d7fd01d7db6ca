//! Exact linear algebra over `Q` or `F_p`, and reduced simplicial (co)homology ranks.
//!
//! Matrices carry integer entries; over `F_p` they are reduced modulo `p`. Rank
//! over `Q` uses fraction-free (Bareiss) elimination in `i128`, retrying in
//! arbitrary precision if an intermediate overflows.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{invalid, Error, Result};
use crate::monomial::VarSet;
use crate::sr_complex::SimplicialComplex;

/// Coefficient field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(u64),
}

impl FieldSpec {
    /// `F_p`; `p` must be a prime below `2^31`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return invalid(format!("field characteristic {p} is not prime"));
        }
        if p >= 1 << 31 {
            return invalid(format!("field characteristic {p} exceeds 2^31"));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` and `Fp:<prime>` (case-insensitive prefix).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let lower = t.to_ascii_lowercase();
        if let Some(rest) = lower.strip_prefix("fp:") {
            let p: u64 = rest
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad field characteristic in {s:?}")))?;
            return FieldSpec::prime(p);
        }
        invalid(format!("unknown field {s:?}; expected \"Q\" or \"Fp:<prime>\""))
    }
}

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return invalid("ragged matrix rows");
        }
        Ok(Matrix { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// Whether `self · rhs` vanishes over `field`.
    pub fn product_vanishes(&self, rhs: &Matrix, field: FieldSpec) -> bool {
        assert_eq!(self.cols, rhs.rows);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let s: i128 = (0..self.cols)
                    .map(|k| self.get(r, k) as i128 * rhs.get(k, c) as i128)
                    .sum();
                let zero = match field {
                    FieldSpec::Rationals => s == 0,
                    FieldSpec::Prime(p) => s.rem_euclid(p as i128) == 0,
                };
                if !zero {
                    return false;
                }
            }
        }
        true
    }

    pub fn rank(&self, field: FieldSpec) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match field {
            FieldSpec::Prime(p) => self.rank_mod(p),
            FieldSpec::Rationals => self.rank_bareiss_i128().unwrap_or_else(|| self.rank_bareiss_big()),
        }
    }

    fn rank_mod(&self, p: u64) -> usize {
        let mut a: Vec<u64> = self.data.iter().map(|&v| v.rem_euclid(p as i64) as u64).collect();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            for c in 0..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
            let inv = mod_pow(a[rank * cols + col], p - 2, p);
            for r in rank + 1..rows {
                let f = a[r * cols + col] * inv % p;
                if f == 0 {
                    continue;
                }
                for c in col..cols {
                    let sub = f * a[rank * cols + c] % p;
                    a[r * cols + c] = (a[r * cols + c] + p - sub) % p;
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    fn rank_bareiss_i128(&self) -> Option<usize> {
        let mut a: Vec<i128> = self.data.iter().map(|&v| v as i128).collect();
        bareiss(&mut a, self.rows, self.cols, 1i128, |x, y, z, w, prev| {
            x.checked_mul(*y)?.checked_sub(z.checked_mul(*w)?)?.checked_div(*prev)
        })
    }

    fn rank_bareiss_big(&self) -> usize {
        let mut a: Vec<BigInt> = self.data.iter().map(|&v| BigInt::from(v)).collect();
        bareiss(&mut a, self.rows, self.cols, BigInt::from(1), |x, y, z, w, prev| {
            Some((x * y - z * w) / prev)
        })
        .expect("arbitrary precision cannot overflow")
    }
}

trait Entry: Clone + Zero {}
impl Entry for i128 {}
impl Entry for BigInt {}

// Fraction-free Gaussian elimination. Every entry stays an integer (a minor of the
// input), and the exact division by the previous pivot never leaves a remainder.
fn bareiss<T, F>(a: &mut [T], rows: usize, cols: usize, one: T, step: F) -> Option<usize>
where
    T: Entry,
    F: Fn(&T, &T, &T, &T, &T) -> Option<T>,
{
    let mut prev = one;
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if piv != rank {
            for c in 0..cols {
                a.swap(piv * cols + c, rank * cols + c);
            }
        }
        let pivot = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let lead = a[r * cols + col].clone();
            for c in col + 1..cols {
                let v = step(&pivot, &a[r * cols + c], &lead, &a[rank * cols + c], &prev)?;
                a[r * cols + c] = v;
            }
            a[r * cols + col] = T::zero();
        }
        prev = pivot;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Some(rank)
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = self.data.chunks(self.cols.max(1)).take(self.rows).collect();
        write!(f, "Matrix{}x{}{:?}", self.rows, self.cols, rows)
    }
}

/// A cochain complex `C^0 → C^1 → … → C^t` of finite-dimensional vector spaces.
///
/// `maps[i]` is `C^i → C^{i+1}`, a `dims[i+1] × dims[i]` matrix.
#[derive(Clone, Debug)]
pub struct VectorSpaceComplex {
    field: FieldSpec,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl VectorSpaceComplex {
    /// Checks shapes and that consecutive differentials compose to zero.
    pub fn new(field: FieldSpec, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        let c = VectorSpaceComplex::new_unchecked(field, dims, maps)?;
        for (i, w) in c.maps.windows(2).enumerate() {
            if !w[1].product_vanishes(&w[0], field) {
                return invalid(format!("d^{} ∘ d^{} is not zero", i + 1, i));
            }
        }
        Ok(c)
    }

    /// Checks shapes only.
    pub(crate) fn new_unchecked(field: FieldSpec, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self> {
        if dims.is_empty() {
            return invalid("complex needs at least one component");
        }
        if maps.len() + 1 != dims.len() {
            return invalid(format!("{} components need {} maps, got {}", dims.len(), dims.len() - 1, maps.len()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows() != dims[i + 1] || m.cols() != dims[i] {
                return invalid(format!(
                    "map {i} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                ));
            }
        }
        Ok(VectorSpaceComplex { field, dims, maps })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Whether every composite `d^{i+1} ∘ d^i` vanishes.
    pub fn is_complex(&self) -> bool {
        self.maps.windows(2).all(|w| w[1].product_vanishes(&w[0], self.field))
    }

    pub fn map_ranks(&self) -> Vec<usize> {
        self.maps.iter().map(|m| m.rank(self.field)).collect()
    }

    /// `dim H^i = dim C^i − rank d^i − rank d^{i−1}`.
    pub fn cohomology_ranks(&self) -> Vec<usize> {
        let ranks = self.map_ranks();
        (0..self.dims.len())
            .map(|i| {
                let out = ranks.get(i).copied().unwrap_or(0);
                let inc = if i == 0 { 0 } else { ranks[i - 1] };
                self.dims[i] - out - inc
            })
            .collect()
    }
}

/// Cohomology ranks of a checked complex.
pub fn cohomology_ranks(c: &VectorSpaceComplex) -> Vec<usize> {
    c.cohomology_ranks()
}

/// Reduced (co)homology ranks `H̃_i(Δ; F)` for `i = −1 ..= dim Δ`.
///
/// The empty face sits in dimension `−1`, so `{∅}` has `H̃_{−1} = 1`.
pub fn reduced_homology_ranks(delta: &SimplicialComplex, field: FieldSpec) -> Result<BTreeMap<isize, usize>> {
    if delta.is_void() {
        return invalid("reduced homology of the void complex");
    }
    Ok(reduced_ranks_of_faces(&delta.faces(), field))
}

/// Same as [`reduced_homology_ranks`] from an explicit, downward-closed face list.
pub(crate) fn reduced_ranks_of_faces(faces: &[VarSet], field: FieldSpec) -> BTreeMap<isize, usize> {
    let top = faces.iter().map(|f| f.len()).max().unwrap_or(0);
    let mut by_size: Vec<Vec<VarSet>> = vec![Vec::new(); top + 1];
    for f in faces {
        by_size[f.len()].push(*f);
    }
    for layer in &mut by_size {
        layer.sort_by_key(|f| f.bits());
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|layer| layer.iter().enumerate().map(|(k, f)| (f.bits(), k)).collect())
        .collect();
    // Coboundary from faces of size s to faces of size s+1.
    let mut maps = Vec::with_capacity(top);
    for s in 0..top {
        let mut m = Matrix::zeros(by_size[s + 1].len(), by_size[s].len());
        for (row, tau) in by_size[s + 1].iter().enumerate() {
            for (pos, v) in tau.iter().enumerate() {
                let sigma = tau.without(v);
                let col = index[s][&sigma.bits()];
                m.set(row, col, if pos % 2 == 0 { 1 } else { -1 });
            }
        }
        maps.push(m);
    }
    let dims = by_size.iter().map(Vec::len).collect();
    let complex = VectorSpaceComplex::new_unchecked(field, dims, maps).expect("shapes built consistently");
    complex
        .cohomology_ranks()
        .into_iter()
        .enumerate()
        .map(|(s, r)| (s as isize - 1, r))
        .collect()
}
