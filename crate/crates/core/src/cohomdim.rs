//! Cohomological dimension of `R = S/J` with respect to a monomial ideal `a`.
//!
//! `cd(a, R) = max_{p ∈ Ass R} cd(a, R/p)`. Each `R/p` is a polynomial ring in the
//! variables outside `p`, where the image `ā` of `√a` is again squarefree, and
//! `cd(ā, S/p) = pd((S/p)/ā)` (Lyubeznik). Projective dimension is read off the
//! Betti table from Hochster's formula
//! `β_{i,σ}(S/I) = dim H̃_{|σ|−i−1}(Δ_I|_σ; K)`.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{invalid, Error, Result};
use crate::linalg::{reduced_ranks_of_faces, FieldSpec};
use crate::monomial::{MonomialIdeal, VarSet};
use crate::sr_complex::{minimal_primes, QuotientIdeal};

/// Largest ambient dimension for the Hochster enumeration.
pub const MAX_BETTI_VARS: usize = 14;

/// Multigraded Betti numbers `β_{i,σ}(S/I)` at squarefree degrees; zeros are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub field: FieldSpec,
    pub entries: BTreeMap<(usize, VarSet), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, sigma: VarSet) -> usize {
        self.entries.get(&(i, sigma)).copied().unwrap_or(0)
    }

    /// `pd = max{i : β_{i,σ} ≠ 0}`.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|&(i, _)| i).max().unwrap_or(0)
    }

    /// Total Betti numbers `β_i = Σ_σ β_{i,σ}`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.projective_dimension() + 1];
        for (&(i, _), &b) in &self.entries {
            out[i] += b;
        }
        out
    }
}

/// Hochster-formula Betti table of `S/I` for squarefree proper `I`.
pub fn betti_numbers(ideal: &MonomialIdeal, field: FieldSpec) -> Result<BettiTable> {
    if !ideal.is_squarefree() {
        return invalid("Betti numbers via Hochster's formula need a squarefree ideal");
    }
    if ideal.is_unit() {
        return invalid("Betti numbers of S/I need a proper ideal");
    }
    if ideal.ambient() > MAX_BETTI_VARS {
        return Err(Error::Guard(format!(
            "Hochster enumeration limited to {MAX_BETTI_VARS} variables, got {}",
            ideal.ambient()
        )));
    }
    let supports = ideal.supports();
    let mut entries = BTreeMap::new();
    for sigma in lcm_lattice(&supports) {
        let faces: Vec<VarSet> = sigma
            .subsets()
            .filter(|tau| !supports.iter().any(|s| s.is_subset(*tau)))
            .collect();
        let reduced = reduced_ranks_of_faces(&faces, field);
        let size = sigma.len() as isize;
        for (k, rank) in reduced {
            let i = size - k - 1;
            if rank > 0 && i >= 0 {
                entries.insert((i as usize, sigma), rank);
            }
        }
    }
    Ok(BettiTable { field, entries })
}

// Unions of generator supports, plus ∅. Betti numbers vanish off this set.
fn lcm_lattice(supports: &[VarSet]) -> BTreeSet<VarSet> {
    let mut lattice = BTreeSet::from([VarSet::empty()]);
    for s in supports {
        let grown: Vec<VarSet> = lattice.iter().map(|l| l.union(*s)).collect();
        lattice.extend(grown);
    }
    lattice
}

pub fn projective_dimension(ideal: &MonomialIdeal, field: FieldSpec) -> Result<usize> {
    Ok(betti_numbers(ideal, field)?.projective_dimension())
}

fn check_prime_in_support(a: &QuotientIdeal, p: VarSet) -> Result<()> {
    let ring = a.ring();
    if p.span() > ring.ambient() {
        return invalid(format!("prime {p:?} uses variables outside the ring"));
    }
    if !ring.in_support(p) {
        return invalid(format!("prime {p:?} does not contain J, so R/p is not a quotient of R"));
    }
    Ok(())
}

/// Image of `√a` in `S/p`: generators meeting `p` become zero and are dropped.
pub fn image_on_prime(a: &QuotientIdeal, p: VarSet) -> Result<MonomialIdeal> {
    check_prime_in_support(a, p)?;
    if a.lift().is_unit() {
        return invalid("a + p is the unit ideal; R/p ⊗ R/a would be zero");
    }
    let rad = a.lift().radical();
    let kept = rad.supports().into_iter().filter(|s| !s.intersects(p));
    Ok(MonomialIdeal::from_supports(a.ring().ambient(), kept))
}

/// `cd(a, R/p)` for a monomial prime `p` in the support of `R`.
pub fn cd_on_prime_quotient(a: &QuotientIdeal, p: VarSet, field: FieldSpec) -> Result<usize> {
    let image = image_on_prime(a, p)?;
    if image.is_zero() {
        return Ok(0);
    }
    projective_dimension(&image, field)
}

/// `grade(a, R/p) = ht ā` in the polynomial ring `S/p`; `None` when `ā = 0`.
pub fn grade_on_prime_quotient(a: &QuotientIdeal, p: VarSet) -> Result<Option<usize>> {
    let image = image_on_prime(a, p)?;
    if image.is_zero() {
        return Ok(None);
    }
    Ok(minimal_primes(&image)?.iter().map(|q| q.len()).min())
}

/// Generator count of `√(a + J)` modulo `J`: an upper bound for `ara(a)`.
pub fn ara_upper(a: &QuotientIdeal) -> usize {
    let j = a.ring().j();
    a.full_lift().radical().gens().iter().filter(|g| !j.contains(g)).count()
}

/// Generator count of `ā`, bounding `ara` of the image ideal in `R/p`.
pub fn ara_upper_on_prime_quotient(a: &QuotientIdeal, p: VarSet) -> Result<usize> {
    Ok(image_on_prime(a, p)?.gens().len())
}

/// `c = cd(a, R)` with its breakdown over `Ass R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdReport {
    pub c: usize,
    /// `(p, cd(a, R/p))` in the order of the minimal primes of `J`.
    pub per_prime: Vec<(VarSet, usize)>,
    pub field: FieldSpec,
}

impl CdReport {
    pub fn cd_of(&self, p: VarSet) -> Option<usize> {
        self.per_prime.iter().find(|(q, _)| *q == p).map(|&(_, c)| c)
    }
}

pub fn cd(a: &QuotientIdeal, field: FieldSpec) -> Result<CdReport> {
    let per_prime = a
        .ring()
        .minimal_primes()
        .iter()
        .map(|&p| Ok((p, cd_on_prime_quotient(a, p, field)?)))
        .collect::<Result<Vec<_>>>()?;
    let c = per_prime.iter().map(|&(_, c)| c).max().unwrap_or(0);
    Ok(CdReport { c, per_prime, field })
}
