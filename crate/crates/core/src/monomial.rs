//! Monomials, variable subsets and monomial ideals of `S = K[u_1, …, u_d]`.
//!
//! Ideals are kept in a canonical form: the generator list is the minimal
//! (divisibility-antichain) generating set, sorted lexicographically by
//! exponent vector. Equality of ideals is therefore structural equality.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest number of variables a [`VarSet`] can index.
pub const MAX_VARS: usize = 64;

/// A subset of the variable indices `0..d`, stored as a bitmask.
///
/// Also stands for the monomial prime `(u_i : i ∈ V)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u64);

impl VarSet {
    pub const fn empty() -> Self {
        VarSet(0)
    }

    /// All variables `0..d`.
    pub fn full(d: usize) -> Self {
        assert!(d <= MAX_VARS, "at most {MAX_VARS} variables");
        if d == MAX_VARS {
            VarSet(u64::MAX)
        } else {
            VarSet((1u64 << d) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        VarSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_VARS);
        VarSet(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(VarSet::empty(), |acc, i| acc.with(i))
    }

    /// Contiguous block `start..end`.
    pub fn range(start: usize, end: usize) -> Self {
        VarSet::from_indices(start..end)
    }

    pub fn with(self, i: usize) -> Self {
        VarSet(self.0 | VarSet::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        VarSet(self.0 & !VarSet::singleton(i).0)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_VARS && self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: VarSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    /// Complement inside `0..d`.
    pub fn complement(self, d: usize) -> Self {
        VarSet::full(d).difference(self)
    }

    /// Largest index plus one, or 0 for the empty set.
    pub fn span(self) -> usize {
        MAX_VARS - self.0.leading_zeros() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VarSet(cur))
        })
    }
}

/// Lexicographic order on the sorted index lists, so `{0} < {0,1} < {0,2} < {1}`.
impl Ord for VarSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VarSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A monomial `u^e` given by its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The identity monomial of `K[u_1, …, u_d]`.
    pub fn one(d: usize) -> Self {
        Monomial { exps: vec![0; d] }
    }

    pub fn var(d: usize, i: usize) -> Self {
        let mut exps = vec![0; d];
        exps[i] = 1;
        Monomial { exps }
    }

    /// Squarefree monomial `∏_{i ∈ v} u_i`.
    pub fn from_varset(d: usize, v: VarSet) -> Self {
        let mut exps = vec![0; d];
        for i in v.iter() {
            exps[i] = 1;
        }
        Monomial { exps }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> VarSet {
        VarSet::from_indices(self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        self.exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial::new)
            .ok_or_else(|| Error::Overflow("monomial product exceeds u32 exponents".into()))
    }

    /// `self / gcd(self, other)`: exponent-wise subtraction clipped at zero.
    pub fn div_clipped(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(&a, &b)| a.saturating_sub(b)).collect())
    }

    /// Same exponents, with variables outside `keep` set to zero.
    pub fn restrict(&self, keep: VarSet) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .enumerate()
                .map(|(i, &e)| if keep.contains(i) { e } else { 0 })
                .collect(),
        )
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "u{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial ideal in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ambient: usize,
    gens: Vec<Monomial>,
}

/// Divisibility antichain generating the same ideal as `gens`, sorted.
pub fn minimalize<I: IntoIterator<Item = Monomial>>(gens: I, d: usize) -> Result<MonomialIdeal> {
    let mut gens: Vec<Monomial> = gens.into_iter().collect();
    if let Some(bad) = gens.iter().find(|g| g.dim() != d) {
        return invalid(format!(
            "monomial has {} exponents but the ambient ring has {d} variables",
            bad.dim()
        ));
    }
    Ok(MonomialIdeal::minimal_from(d, &mut gens))
}

impl MonomialIdeal {
    fn minimal_from(ambient: usize, gens: &mut Vec<Monomial>) -> MonomialIdeal {
        // Sorting by degree first means a divisor is always seen before its multiples.
        gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
        gens.dedup();
        let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
        for g in gens.drain(..) {
            if !kept.iter().any(|k| k.divides(&g)) {
                kept.push(g);
            }
        }
        kept.sort();
        MonomialIdeal { ambient, gens: kept }
    }

    pub fn zero(d: usize) -> Self {
        MonomialIdeal { ambient: d, gens: Vec::new() }
    }

    pub fn unit(d: usize) -> Self {
        MonomialIdeal { ambient: d, gens: vec![Monomial::one(d)] }
    }

    /// The monomial prime `(u_i : i ∈ v)`.
    pub fn from_vars(d: usize, v: VarSet) -> Self {
        let mut gens: Vec<Monomial> = v.iter().map(|i| Monomial::var(d, i)).collect();
        gens.sort();
        MonomialIdeal { ambient: d, gens }
    }

    pub fn principal(m: Monomial) -> Self {
        MonomialIdeal { ambient: m.dim(), gens: vec![m] }
    }

    /// Squarefree ideal generated by `∏_{i∈s} u_i` for each support `s`.
    pub fn from_supports<I: IntoIterator<Item = VarSet>>(d: usize, supports: I) -> Self {
        let mut gens: Vec<Monomial> = supports.into_iter().map(|s| Monomial::from_varset(d, s)).collect();
        MonomialIdeal::minimal_from(d, &mut gens)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Supports of the generators (meaningful as the ideal itself when squarefree).
    pub fn supports(&self) -> Vec<VarSet> {
        self.gens.iter().map(Monomial::support).collect()
    }

    /// Union of the generator supports.
    pub fn variables(&self) -> VarSet {
        self.gens.iter().fold(VarSet::empty(), |acc, g| acc.union(g.support()))
    }

    fn check_ambient(&self, other: usize) -> Result<()> {
        if self.ambient != other {
            return invalid(format!(
                "ambient mismatch: ideal in {} variables, operand in {other}",
                self.ambient
            ));
        }
        Ok(())
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.dim(), self.ambient);
        self.gens.iter().any(|g| g.divides(m))
    }

    /// `self ⊆ other` as ideals.
    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.ambient == other.ambient && self.gens.iter().all(|g| other.contains(g))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.ambient)?;
        let mut gens: Vec<Monomial> = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(MonomialIdeal::minimal_from(self.ambient, &mut gens))
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.ambient)?;
        let mut gens: Vec<Monomial> = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b)))
            .collect();
        Ok(MonomialIdeal::minimal_from(self.ambient, &mut gens))
    }

    /// Intersection of a non-empty family; an empty family is rejected.
    pub fn intersect_all<'a, I>(ideals: I) -> Result<MonomialIdeal>
    where
        I: IntoIterator<Item = &'a MonomialIdeal>,
    {
        let mut iter = ideals.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidInput("intersection of an empty family of ideals".into()))?;
        iter.try_fold(first.clone(), |acc, i| acc.intersect(i))
    }

    /// `(self : m)`.
    pub fn colon(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_ambient(m.dim())?;
        let mut gens: Vec<Monomial> = self.gens.iter().map(|g| g.div_clipped(m)).collect();
        Ok(MonomialIdeal::minimal_from(self.ambient, &mut gens))
    }

    /// `(self : other) = ⋂_{g ∈ gens(other)} (self : g)`; the colon by the zero ideal is the unit ideal.
    pub fn colon_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.ambient)?;
        let mut acc = MonomialIdeal::unit(self.ambient);
        for g in &other.gens {
            acc = acc.intersect(&self.colon(g)?)?;
        }
        Ok(acc)
    }

    /// `(self : m^∞)`, the stable value of iterated colons.
    pub fn saturate(&self, m: &Monomial) -> Result<MonomialIdeal> {
        self.check_ambient(m.dim())?;
        let mut cur = self.clone();
        loop {
            let next = cur.colon(m)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `(self : other^∞)`.
    pub fn saturate_ideal(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_ideal(other)?;
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ambient(other.ambient)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ok(MonomialIdeal::minimal_from(self.ambient, &mut gens))
    }

    /// `self^n` for `n ≥ 1`.
    pub fn power(&self, n: u32) -> Result<MonomialIdeal> {
        if n == 0 {
            return invalid("ideal power requires n >= 1");
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::from_supports(self.ambient, self.gens.iter().map(Monomial::support))
    }

    /// Same generators viewed in a ring with `extra` more variables appended.
    pub fn pad(&self, extra: usize) -> MonomialIdeal {
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let mut e = g.exps.clone();
                e.resize(self.ambient + extra, 0);
                Monomial::new(e)
            })
            .collect();
        MonomialIdeal { ambient: self.ambient + extra, gens }
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g:?}")?;
        }
        write!(f, ")")
    }
}

/// Default variable names `u1, …, ud`.
pub fn default_names(d: usize) -> Vec<String> {
    (1..=d).map(|i| format!("u{i}")).collect()
}

impl VarSet {
    /// `{x, y}` with the given variable names.
    pub fn render(self, names: &[String]) -> String {
        format!("{{{}}}", self.iter().map(|i| names[i].as_str()).collect::<Vec<_>>().join(", "))
    }
}

impl Monomial {
    /// `x·y^2` with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{e}", names[i]) })
            .collect::<Vec<_>>()
            .join("·")
    }
}

impl MonomialIdeal {
    /// Generators in descending lexicographic order, `u1 > u2 > …`.
    pub fn render(&self, names: &[String]) -> String {
        format!("({})", self.gens.iter().rev().map(|g| g.render(names)).collect::<Vec<_>>().join(", "))
    }

    /// Lift form `(g, …)+J` listing only generators outside `j`; bare `J` when none remain.
    pub fn render_mod(&self, j: &MonomialIdeal, names: &[String]) -> String {
        let kept: Vec<String> = self.gens.iter().rev().filter(|g| !j.contains(g)).map(|g| g.render(names)).collect();
        match (kept.is_empty(), j.is_zero()) {
            (true, true) => "(0)".into(),
            (true, false) => "J".into(),
            (false, true) => format!("({})", kept.join(", ")),
            (false, false) => format!("({})+J", kept.join(", ")),
        }
    }
}
