//! The three-component family `J = (X) ∩ (Y) ∩ (Z)`, `I = (X') + (Y') + J`.
//!
//! Every instance is verified end to end through the general pipeline; the
//! closed-form values only enter as the expected column of the checklist.

use rayon::prelude::*;

use crate::annihilator::{ann_bounds, gamma};
use crate::cohomdim::{cd, cd_on_prime_quotient, grade_on_prime_quotient};
use crate::error::{invalid, Result};
use crate::linalg::FieldSpec;
use crate::monomial::{default_names, MonomialIdeal, VarSet};
use crate::sr_complex::{krull_dim, QuotientIdeal, QuotientRing};

/// Largest `d_max` accepted by [`search_family`].
pub const MAX_SEARCH_D: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LynchInstance {
    pub d: usize,
    pub x: VarSet,
    pub y: VarSet,
    pub z: VarSet,
    pub xp: VarSet,
    pub yp: VarSet,
    pub names: Vec<String>,
    pub j: MonomialIdeal,
    pub i_lift: MonomialIdeal,
}

/// 0-based variable indices; names default to `u1, …, ud`.
pub fn build_instance(d: usize, x: VarSet, y: VarSet, z: VarSet, xp: VarSet, yp: VarSet) -> Result<LynchInstance> {
    build_named(d, x, y, z, xp, yp, default_names(d))
}

pub fn build_named(
    d: usize,
    x: VarSet,
    y: VarSet,
    z: VarSet,
    xp: VarSet,
    yp: VarSet,
    names: Vec<String>,
) -> Result<LynchInstance> {
    if names.len() != d {
        return invalid(format!("{} variable names given for d = {d}", names.len()));
    }
    for (label, s) in [("X", x), ("Y", y), ("Z", z)] {
        if s.is_empty() {
            return invalid(format!("{label} must be nonempty"));
        }
        if s.span() > d {
            return invalid(format!("{label} uses variables outside 1..{d}"));
        }
    }
    if x.intersects(y) || x.intersects(z) || y.intersects(z) {
        return invalid("X, Y, Z must be pairwise disjoint");
    }
    if !(x.len() <= y.len() && y.len() <= z.len()) {
        return invalid("sizes must satisfy |X| <= |Y| <= |Z|");
    }
    if xp.is_empty() || !xp.is_subset(x) {
        return invalid("X' must be a nonempty subset of X");
    }
    if yp.is_empty() || !yp.is_subset(y) {
        return invalid("Y' must be a nonempty subset of Y");
    }
    let j = MonomialIdeal::intersect_all(&[
        MonomialIdeal::from_vars(d, x),
        MonomialIdeal::from_vars(d, y),
        MonomialIdeal::from_vars(d, z),
    ])?;
    let i_lift = MonomialIdeal::from_vars(d, xp.union(yp));
    Ok(LynchInstance { d, x, y, z, xp, yp, names, j, i_lift })
}

impl LynchInstance {
    /// Canonical placement of the given sizes on initial segments.
    pub fn canonical(d: usize, sx: usize, sy: usize, sz: usize, sxp: usize, syp: usize) -> Result<Self> {
        build_instance(
            d,
            VarSet::range(0, sx),
            VarSet::range(sx, sx + sy),
            VarSet::range(sx + sy, sx + sy + sz),
            VarSet::range(0, sxp),
            VarSet::range(sx, sx + syp),
        )
    }

    pub fn ring(&self) -> Result<QuotientRing> {
        QuotientRing::new(self.j.clone())
    }

    pub fn sizes(&self) -> [usize; 5] {
        [self.x.len(), self.y.len(), self.z.len(), self.xp.len(), self.yp.len()]
    }
}

/// `d = 4`, variables `x, y, z1, z2`, `J = (x·y·z1, x·y·z2)`, `I = (x, y)`.
pub fn singh_walther() -> LynchInstance {
    let names = ["x", "y", "z1", "z2"].map(String::from).to_vec();
    let s = |i: &[usize]| VarSet::from_indices(i.iter().copied());
    build_named(4, s(&[0]), s(&[1]), s(&[2, 3]), s(&[0]), s(&[1]), names).expect("valid fixture")
}

/// `X = {u1, u2}`, `Y = {u3, u4}`, `Z = {u5, …, ul}`, `I = (u1, u3)`.
pub fn bahmanpour(d: usize, l: usize) -> Result<LynchInstance> {
    if !(7 <= l && l <= d) {
        return invalid(format!("bahmanpour needs 7 <= l <= d, got d = {d}, l = {l}"));
    }
    build_instance(
        d,
        VarSet::range(0, 2),
        VarSet::range(2, 4),
        VarSet::range(4, l),
        VarSet::singleton(0),
        VarSet::singleton(2),
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

impl ClaimCheck {
    fn new(id: &str, expected: String, computed: String) -> Self {
        let pass = expected == computed;
        ClaimCheck { id: id.into(), expected, computed, pass }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LynchReport {
    pub instance: LynchInstance,
    pub field: FieldSpec,
    pub checklist: Vec<ClaimCheck>,
    pub c: usize,
    pub gamma_lift: MonomialIdeal,
    pub dim_r: usize,
    pub dim_r_mod_gamma: usize,
    pub ann_lift: Option<MonomialIdeal>,
    pub dim_r_mod_ann: Option<usize>,
    pub gap: i64,
    /// Computed dimensions differ.
    pub conjecture_violated: bool,
}

impl LynchReport {
    pub fn all_pass(&self) -> bool {
        self.checklist.iter().all(|c| c.pass)
    }
}

fn list<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    format!("[{}]", xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

pub fn verify_instance(inst: &LynchInstance, field: FieldSpec) -> Result<LynchReport> {
    let ring = inst.ring()?;
    let a = QuotientIdeal::new(&ring, inst.i_lift.clone())?;
    let names = &inst.names;
    let d = inst.d;
    let (x, y, z, xp, yp) = (inst.x, inst.y, inst.z, inst.xp, inst.yp);
    let c_formula = xp.len() + yp.len();
    let primes = [x, y, z];
    let mut checklist = Vec::with_capacity(6);

    let mut expected_primes = primes.to_vec();
    expected_primes.sort();
    checklist.push(ClaimCheck::new(
        "i",
        list(expected_primes.iter().map(|p| p.render(names))),
        list(ring.minimal_primes().iter().map(|p| p.render(names))),
    ));

    let expected_ii = [yp.len(), xp.len(), c_formula];
    let mut computed_ii = Vec::new();
    for &p in &primes {
        let g = grade_on_prime_quotient(&a, p)?.map_or("none".to_string(), |g| g.to_string());
        computed_ii.push(format!("{g}/{}", cd_on_prime_quotient(&a, p, field)?));
    }
    checklist.push(ClaimCheck::new(
        "ii",
        list(expected_ii.iter().map(|v| format!("{v}/{v}"))),
        list(computed_ii),
    ));

    checklist.push(ClaimCheck::new(
        "iii",
        list(primes.iter().map(|p| d - p.len())),
        list(primes.iter().map(|&p| ring.dim_mod_prime(p))),
    ));

    let gamma_lift = gamma(&a)?;
    let c = cd(&a, field)?.c;
    let dim_r = ring.dim();
    let dim_r_mod_gamma = krull_dim(&gamma_lift)?;
    checklist.push(ClaimCheck::new(
        "iv",
        format!("gamma = {}, dim R = {}, c = {c_formula}", inst.j.render_mod(&inst.j, names), d - x.len()),
        format!("gamma = {}, dim R = {dim_r}, c = {c}", gamma_lift.render_mod(&inst.j, names)),
    ));

    let q = xp.union(yp).complement(d);
    let q_ok = z.is_subset(q);
    checklist.push(ClaimCheck::new(
        "v",
        format!("q = {} contains Z, cd = {c_formula}, dim = {c_formula}", q.render(names)),
        format!(
            "q = {} {}, cd = {}, dim = {}",
            q.render(names),
            if q_ok { "contains Z" } else { "misses Z" },
            cd_on_prime_quotient(&a, q, field)?,
            ring.dim_mod_prime(q)
        ),
    ));

    let bounds = ann_bounds(&a, field)?;
    let ann_lift = bounds.annihilator().cloned();
    let dim_r_mod_ann = ann_lift.as_ref().map(krull_dim).transpose()?;
    let z_ideal = MonomialIdeal::from_vars(d, z).sum(&inst.j)?;
    checklist.push(ClaimCheck::new(
        "vi",
        format!("exact, ann = {}, dim R/ann = {}", z_ideal.render_mod(&inst.j, names), d - z.len()),
        match (&ann_lift, dim_r_mod_ann) {
            (Some(l), Some(dim)) => format!("exact, ann = {}, dim R/ann = {dim}", l.render_mod(&inst.j, names)),
            _ => "not certified".to_string(),
        },
    ));

    let gap = z.len() as i64 - x.len() as i64;
    let conjecture_violated = dim_r_mod_ann.is_some_and(|da| da != dim_r_mod_gamma);
    Ok(LynchReport {
        instance: inst.clone(),
        field,
        checklist,
        c,
        gamma_lift,
        dim_r,
        dim_r_mod_gamma,
        ann_lift,
        dim_r_mod_ann,
        gap,
        conjecture_violated,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySearch {
    pub d_max: usize,
    pub reports: Vec<LynchReport>,
}

impl FamilySearch {
    pub fn total(&self) -> usize {
        self.reports.len()
    }

    pub fn violated(&self) -> usize {
        self.reports.iter().filter(|r| r.conjecture_violated).count()
    }

    pub fn failures(&self) -> usize {
        self.reports.iter().filter(|r| !r.all_pass()).count()
    }
}

/// Size tuples `(d, |X|, |Y|, |Z|, |X'|, |Y'|)` in canonical order.
pub fn family_parameters(d_max: usize) -> Vec<[usize; 6]> {
    let mut out = Vec::new();
    for d in 3..=d_max {
        for sx in 1..=d {
            for sy in sx..=d {
                for sz in sy..=d {
                    if sx + sy + sz > d {
                        break;
                    }
                    for sxp in 1..=sx {
                        for syp in 1..=sy {
                            out.push([d, sx, sy, sz, sxp, syp]);
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn search_family(d_max: usize, field: FieldSpec) -> Result<FamilySearch> {
    if d_max > MAX_SEARCH_D {
        return invalid(format!("family search limited to d_max <= {MAX_SEARCH_D}, got {d_max}"));
    }
    let reports = family_parameters(d_max)
        .into_par_iter()
        .map(|[d, sx, sy, sz, sxp, syp]| verify_instance(&LynchInstance::canonical(d, sx, sy, sz, sxp, syp)?, field))
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilySearch { d_max, reports })
}
