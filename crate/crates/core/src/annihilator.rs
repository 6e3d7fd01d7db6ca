//! Bounds on `ann H^c_a(R)` for the top local cohomology of `R = S/J`.
//!
//! With `c = cd(a, R)`, `Δ = {p ∈ Ass R : cd(a, R/p) = c}` and
//! `Σ = {q ∈ Supp R : cd(a, R/q) = dim R/q = c}`:
//!
//! ```text
//! ann(R/T(a,R)) ⊆ ann H^c_a(R) ⊆ ⋂_{q ∈ Σ} C_q(0)
//! ```
//!
//! where `T(a,R) = ⋂_{p ∈ Δ} p/J`, and if every `p ∈ Δ` lies under some `q ∈ Σ`
//! both inclusions are equalities. All ideals here are returned as lifts to `S`
//! containing `J`.

use itertools::Itertools;
use rayon::prelude::*;

use crate::cohomdim::{cd, cd_on_prime_quotient, CdReport};
use crate::error::{invalid, Error, Result};
use crate::linalg::FieldSpec;
use crate::monomial::{Monomial, MonomialIdeal, VarSet};
use crate::sr_complex::{height_in_quotient, krull_dim, QuotientIdeal, QuotientRing};

/// Largest ambient dimension for the prime-by-prime corollary scan.
pub const MAX_SCAN_VARS: usize = 12;

/// Lift of `Γ_a(R) = (J : a^∞)`. Equals `J` iff `Γ_a(R) = 0`; the unit ideal when `a` is nilpotent.
pub fn gamma(a: &QuotientIdeal) -> Result<MonomialIdeal> {
    a.ring().j().saturate_ideal(a.lift())
}

/// `T(a, R)` and `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopPart {
    pub cd: CdReport,
    pub delta: Vec<VarSet>,
    /// Lift of `T(a, R) = ⋂_{p ∈ Δ} p/J`; also `ann(R/T)`.
    pub t_lift: MonomialIdeal,
}

pub fn top_part(a: &QuotientIdeal, field: FieldSpec) -> Result<TopPart> {
    let cd = cd(a, field)?;
    let d = a.ring().ambient();
    let delta: Vec<VarSet> = cd.per_prime.iter().filter(|&&(_, v)| v == cd.c).map(|&(p, _)| p).collect();
    let primes: Vec<MonomialIdeal> = delta.iter().map(|&p| MonomialIdeal::from_vars(d, p)).collect();
    let t_lift = MonomialIdeal::intersect_all(&primes)?;
    Ok(TopPart { cd, delta, t_lift })
}

/// `(T-lift, Δ)`.
pub fn t_ideal(a: &QuotientIdeal, field: FieldSpec) -> Result<(MonomialIdeal, Vec<VarSet>)> {
    let top = top_part(a, field)?;
    Ok((top.t_lift, top.delta))
}

fn outside_product(ring: &QuotientRing, q: VarSet) -> Result<Monomial> {
    let d = ring.ambient();
    if q.span() > d {
        return invalid(format!("prime {q:?} uses variables outside the ring"));
    }
    if !ring.in_support(q) {
        return invalid(format!("prime {q:?} is not in Supp R: it contains no minimal prime of J"));
    }
    Ok(Monomial::from_varset(d, q.complement(d)))
}

/// Lift of `C^R_q(0) = ker(R → R_q)`, i.e. `(J : w^∞)` with `w` the product of the variables outside `q`.
pub fn contraction_zero(q: VarSet, ring: &QuotientRing) -> Result<MonomialIdeal> {
    let w = outside_product(ring, q)?;
    ring.j().saturate(&w)
}

/// Lift of `C^R_q(L/J)`, the preimage of `(L/J)_q` in `R`: `(L + J : w^∞)`.
pub fn contraction(l: &MonomialIdeal, q: VarSet, ring: &QuotientRing) -> Result<MonomialIdeal> {
    let w = outside_product(ring, q)?;
    l.sum(ring.j())?.saturate(&w)
}

/// Lift of the symbolic power `(qR)^{(n)} = ((q)^n + J : w^∞)`.
pub fn symbolic_power(q: VarSet, n: u32, ring: &QuotientRing) -> Result<MonomialIdeal> {
    let w = outside_product(ring, q)?;
    let qn = MonomialIdeal::from_vars(ring.ambient(), q).power(n)?;
    qn.sum(ring.j())?.saturate(&w)
}

/// Why the lower bound is known to equal the annihilator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactnessReason {
    AllWitnessesFound,
    CdLe1,
    DimQuotientLe1,
    DimLe2,
    None,
}

impl ExactnessReason {
    pub fn as_str(self) -> &'static str {
        match self {
            ExactnessReason::AllWitnessesFound => "all-witnesses-found",
            ExactnessReason::CdLe1 => "cd-le-1",
            ExactnessReason::DimQuotientLe1 => "dim-quotient-le-1",
            ExactnessReason::DimLe2 => "dim-le-2",
            ExactnessReason::None => "none",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "all-witnesses-found" => ExactnessReason::AllWitnessesFound,
            "cd-le-1" => ExactnessReason::CdLe1,
            "dim-quotient-le-1" => ExactnessReason::DimQuotientLe1,
            "dim-le-2" => ExactnessReason::DimLe2,
            "none" => ExactnessReason::None,
            other => return invalid(format!("unknown exactness reason {other:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnBoundsReport {
    pub c: usize,
    pub delta: Vec<VarSet>,
    /// For each `p ∈ Δ`, the first monomial `q ∈ Σ` with `p ⊆ q`, if any.
    pub sigma_witnesses: Vec<(VarSet, Option<VarSet>)>,
    pub lower: MonomialIdeal,
    /// `⋂ C_q(0)` over the distinct witnesses; absent when none were found.
    pub upper: Option<MonomialIdeal>,
    pub exact: bool,
    pub exactness_reason: ExactnessReason,
    pub field: FieldSpec,
}

impl AnnBoundsReport {
    /// Distinct witnesses, sorted.
    pub fn sigma_found(&self) -> Vec<VarSet> {
        self.sigma_witnesses.iter().filter_map(|&(_, q)| q).sorted().dedup().collect()
    }

    /// The annihilator lift, when certified.
    pub fn annihilator(&self) -> Option<&MonomialIdeal> {
        self.exact.then_some(&self.lower)
    }
}

/// First `q ⊇ p` with `|q| = d − c` (so `dim R/q = c`) and `cd(a, R/q) = c`,
/// scanning candidates in lexicographic order.
pub fn find_witness(a: &QuotientIdeal, p: VarSet, c: usize, field: FieldSpec) -> Result<Option<VarSet>> {
    let d = a.ring().ambient();
    let Some(size) = d.checked_sub(c) else {
        return Ok(None);
    };
    if size < p.len() {
        return Ok(None);
    }
    let free: Vec<usize> = p.complement(d).iter().collect();
    for extra in free.iter().copied().combinations(size - p.len()) {
        let q = p.union(VarSet::from_indices(extra));
        if cd_on_prime_quotient(a, q, field)? == c {
            return Ok(Some(q));
        }
    }
    Ok(None)
}

pub fn ann_bounds(a: &QuotientIdeal, field: FieldSpec) -> Result<AnnBoundsReport> {
    let ring = a.ring();
    let TopPart { cd, delta, t_lift } = top_part(a, field)?;
    let c = cd.c;
    let sigma_witnesses = delta
        .par_iter()
        .map(|&p| Ok((p, find_witness(a, p, c, field)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut found: Vec<VarSet> = sigma_witnesses.iter().filter_map(|&(_, q)| q).collect();
    found.sort();
    found.dedup();
    let upper = if found.is_empty() {
        None
    } else {
        let parts = found
            .iter()
            .map(|&q| contraction_zero(q, ring))
            .collect::<Result<Vec<_>>>()?;
        Some(MonomialIdeal::intersect_all(&parts)?)
    };

    let reason = if sigma_witnesses.iter().all(|(_, q)| q.is_some()) {
        ExactnessReason::AllWitnessesFound
    } else if c <= 1 {
        ExactnessReason::CdLe1
    } else if krull_dim(&a.full_lift())? <= 1 {
        ExactnessReason::DimQuotientLe1
    } else if ring.dim() <= 2 {
        ExactnessReason::DimLe2
    } else {
        ExactnessReason::None
    };

    Ok(AnnBoundsReport {
        c,
        delta,
        sigma_witnesses,
        lower: t_lift,
        upper,
        exact: reason != ExactnessReason::None,
        exactness_reason: reason,
        field,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryCheck {
    pub name: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightReport {
    pub ht_upper: Option<usize>,
    /// `None` when the annihilator is not certified.
    pub ht_ann: Option<usize>,
    pub corollary_checks: Vec<CorollaryCheck>,
}

impl HeightReport {
    pub fn all_hold(&self) -> bool {
        self.corollary_checks.iter().all(|c| c.holds)
    }
}

/// Height of the bounds, plus the instance-level height corollaries.
pub fn height_report(rep: &AnnBoundsReport, a: &QuotientIdeal) -> Result<HeightReport> {
    let ring = a.ring();
    let height = |lift: &MonomialIdeal| -> Result<usize> {
        height_in_quotient(&QuotientIdeal::new(ring, lift.clone())?)
    };
    let ht_upper = rep.upper.as_ref().map(height).transpose()?;
    let ht_ann = rep.annihilator().map(height).transpose()?;
    let dim_r = ring.dim();
    let show = |h: Option<usize>| h.map_or("n/a".to_string(), |h| h.to_string());
    let mut checks = Vec::new();

    let has_sigma = !rep.sigma_found().is_empty();
    checks.push(CorollaryCheck {
        name: "sigma-nonempty-upper-height-zero".into(),
        applicable: has_sigma,
        holds: !has_sigma || ht_upper == Some(0),
        detail: format!("ht(upper) = {}", show(ht_upper)),
    });
    checks.push(CorollaryCheck {
        name: "sigma-nonempty-ann-height-zero".into(),
        applicable: has_sigma && rep.exact,
        holds: !(has_sigma && rep.exact) || ht_ann == Some(0),
        detail: format!("ht(ann) = {}", show(ht_ann)),
    });
    let codim_one = rep.exact && dim_r >= 1 && rep.c + 1 == dim_r;
    checks.push(CorollaryCheck {
        name: "c-eq-dim-minus-1-ann-height-zero".into(),
        applicable: codim_one,
        holds: !codim_one || ht_ann == Some(0),
        detail: format!("c = {}, dim R = {dim_r}, ht(ann) = {}", rep.c, show(ht_ann)),
    });
    checks.push(large_prime_height_check(a, rep.c, rep.field)?);

    Ok(HeightReport { ht_upper, ht_ann, corollary_checks: checks })
}

// For monomial q ∈ Supp R with cd(a, R/q) = c < dim R/q: ht_R(q) ≤ dim R − c − 1.
fn large_prime_height_check(a: &QuotientIdeal, c: usize, field: FieldSpec) -> Result<CorollaryCheck> {
    let ring = a.ring();
    let d = ring.ambient();
    let name = "cd-below-dim-prime-height-bound".to_string();
    if d > MAX_SCAN_VARS {
        return Ok(CorollaryCheck {
            name,
            applicable: false,
            holds: true,
            detail: format!("skipped: scan limited to {MAX_SCAN_VARS} variables"),
        });
    }
    let dim_r = ring.dim();
    let mut examined = 0;
    let mut violations = Vec::new();
    for q in VarSet::full(d).subsets() {
        if !ring.in_support(q) || ring.dim_mod_prime(q) <= c {
            continue;
        }
        if cd_on_prime_quotient(a, q, field)? != c {
            continue;
        }
        examined += 1;
        let ht = ring.local_dim(q).ok_or_else(|| Error::InvalidInput("prime outside support".into()))?;
        if ht + c + 1 > dim_r {
            violations.push(q);
        }
    }
    Ok(CorollaryCheck {
        name,
        applicable: examined > 0,
        holds: violations.is_empty(),
        detail: format!("{examined} primes examined, {} violations", violations.len()),
    })
}
