//! Versioned JSON reports. Each wire type converts back to the library value it
//! was built from, given the variable names stored alongside it.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::annihilator::{AnnBoundsReport, CorollaryCheck, ExactnessReason, HeightReport};
use crate::cech::{AnnihilationReport, CechReport, DegreeBox, Verdict};
use crate::cohomdim::CdReport;
use crate::error::{invalid, Result};
use crate::linalg::FieldSpec;
use crate::lynch::{build_named, ClaimCheck, FamilySearch, LynchReport};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VarSet};

pub const FORMAT_VERSION: u32 = 1;

/// `{name: exponent}` with names in declaration order and zero exponents omitted.
pub type WireMonomial = IndexMap<String, u32>;
pub type WireIdeal = Vec<WireMonomial>;

pub fn monomial_to_wire(m: &Monomial, names: &[String]) -> WireMonomial {
    m.exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (names[i].clone(), e))
        .collect()
}

pub fn monomial_from_wire(w: &WireMonomial, names: &[String]) -> Result<Monomial> {
    let mut exps = vec![0; names.len()];
    for (name, &e) in w {
        match names.iter().position(|n| n == name) {
            Some(k) => exps[k] = e,
            None => return invalid(format!("monomial uses undeclared variable {name:?}")),
        }
    }
    Ok(Monomial::new(exps))
}

/// Generators in descending lexicographic order.
pub fn ideal_to_wire(ideal: &MonomialIdeal, names: &[String]) -> WireIdeal {
    ideal.gens().iter().rev().map(|g| monomial_to_wire(g, names)).collect()
}

pub fn ideal_from_wire(w: &WireIdeal, names: &[String]) -> Result<MonomialIdeal> {
    let gens = w.iter().map(|m| monomial_from_wire(m, names)).collect::<Result<Vec<_>>>()?;
    minimalize(gens, names.len())
}

pub fn varset_to_wire(v: VarSet, names: &[String]) -> Vec<String> {
    v.iter().map(|i| names[i].clone()).collect()
}

pub fn varset_from_wire(w: &[String], names: &[String]) -> Result<VarSet> {
    let mut out = VarSet::empty();
    for name in w {
        match names.iter().position(|n| n == name) {
            Some(k) => out = out.with(k),
            None => return invalid(format!("set uses undeclared variable {name:?}")),
        }
    }
    Ok(out)
}

fn field_from_wire(s: &str) -> Result<FieldSpec> {
    s.parse()
}

fn check_version(v: u32) -> Result<()> {
    if v != FORMAT_VERSION {
        return invalid(format!("unsupported report format_version {v}"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxWire {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
}

impl BoxWire {
    pub fn from_core(b: &DegreeBox) -> Self {
        BoxWire { lower: b.lower().to_vec(), upper: b.upper().to_vec() }
    }

    pub fn to_core(&self) -> Result<DegreeBox> {
        DegreeBox::new(self.lower.clone(), self.upper.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCd {
    pub prime: Vec<String>,
    pub cd: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdWire {
    pub format_version: u32,
    pub field: String,
    pub vars: Vec<String>,
    pub c: usize,
    pub per_prime: Vec<PrimeCd>,
}

impl CdWire {
    pub fn from_core(r: &CdReport, names: &[String]) -> Self {
        CdWire {
            format_version: FORMAT_VERSION,
            field: r.field.to_string(),
            vars: names.to_vec(),
            c: r.c,
            per_prime: r
                .per_prime
                .iter()
                .map(|&(p, cd)| PrimeCd { prime: varset_to_wire(p, names), cd })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<CdReport> {
        check_version(self.format_version)?;
        Ok(CdReport {
            c: self.c,
            per_prime: self
                .per_prime
                .iter()
                .map(|p| Ok((varset_from_wire(&p.prime, &self.vars)?, p.cd)))
                .collect::<Result<_>>()?,
            field: field_from_wire(&self.field)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessWire {
    pub prime: Vec<String>,
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckWire {
    pub name: String,
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightWire {
    pub ht_upper: Option<usize>,
    pub ht_ann: Option<usize>,
    pub corollary_checks: Vec<CheckWire>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnBoundsWire {
    pub format_version: u32,
    pub field: String,
    pub vars: Vec<String>,
    pub c: usize,
    pub delta: Vec<Vec<String>>,
    pub sigma_witnesses: Vec<WitnessWire>,
    pub lower: WireIdeal,
    pub upper: Option<WireIdeal>,
    pub exact: bool,
    pub exactness_reason: String,
    pub height: HeightWire,
}

impl AnnBoundsWire {
    pub fn from_core(r: &AnnBoundsReport, h: &HeightReport, names: &[String]) -> Self {
        AnnBoundsWire {
            format_version: FORMAT_VERSION,
            field: r.field.to_string(),
            vars: names.to_vec(),
            c: r.c,
            delta: r.delta.iter().map(|&p| varset_to_wire(p, names)).collect(),
            sigma_witnesses: r
                .sigma_witnesses
                .iter()
                .map(|&(p, q)| WitnessWire {
                    prime: varset_to_wire(p, names),
                    witness: q.map(|q| varset_to_wire(q, names)),
                })
                .collect(),
            lower: ideal_to_wire(&r.lower, names),
            upper: r.upper.as_ref().map(|u| ideal_to_wire(u, names)),
            exact: r.exact,
            exactness_reason: r.exactness_reason.as_str().to_string(),
            height: HeightWire {
                ht_upper: h.ht_upper,
                ht_ann: h.ht_ann,
                corollary_checks: h
                    .corollary_checks
                    .iter()
                    .map(|c| CheckWire {
                        name: c.name.clone(),
                        applicable: c.applicable,
                        holds: c.holds,
                        detail: c.detail.clone(),
                    })
                    .collect(),
            },
        }
    }

    pub fn to_core(&self) -> Result<(AnnBoundsReport, HeightReport)> {
        check_version(self.format_version)?;
        let names = &self.vars;
        let report = AnnBoundsReport {
            c: self.c,
            delta: self.delta.iter().map(|p| varset_from_wire(p, names)).collect::<Result<_>>()?,
            sigma_witnesses: self
                .sigma_witnesses
                .iter()
                .map(|w| {
                    let q = w.witness.as_deref().map(|q| varset_from_wire(q, names)).transpose()?;
                    Ok((varset_from_wire(&w.prime, names)?, q))
                })
                .collect::<Result<_>>()?,
            lower: ideal_from_wire(&self.lower, names)?,
            upper: self.upper.as_ref().map(|u| ideal_from_wire(u, names)).transpose()?,
            exact: self.exact,
            exactness_reason: ExactnessReason::parse(&self.exactness_reason)?,
            field: field_from_wire(&self.field)?,
        };
        let height = HeightReport {
            ht_upper: self.height.ht_upper,
            ht_ann: self.height.ht_ann,
            corollary_checks: self
                .height
                .corollary_checks
                .iter()
                .map(|c| CorollaryCheck {
                    name: c.name.clone(),
                    applicable: c.applicable,
                    holds: c.holds,
                    detail: c.detail.clone(),
                })
                .collect(),
        };
        Ok((report, height))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaWire {
    pub format_version: u32,
    pub vars: Vec<String>,
    /// Lift of `Γ_a(R)` to `S`; equals `J` exactly when the torsion vanishes.
    pub gamma: WireIdeal,
    pub vanishes: bool,
}

impl GammaWire {
    pub fn from_core(gamma: &MonomialIdeal, j: &MonomialIdeal, names: &[String]) -> Self {
        GammaWire {
            format_version: FORMAT_VERSION,
            vars: names.to_vec(),
            gamma: ideal_to_wire(gamma, names),
            vanishes: gamma == j,
        }
    }

    pub fn to_core(&self) -> Result<MonomialIdeal> {
        check_version(self.format_version)?;
        ideal_from_wire(&self.gamma, &self.vars)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimWire {
    pub id: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LynchWire {
    pub format_version: u32,
    pub field: String,
    pub vars: Vec<String>,
    pub d: usize,
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y")]
    pub y: Vec<String>,
    #[serde(rename = "Z")]
    pub z: Vec<String>,
    #[serde(rename = "Xp")]
    pub xp: Vec<String>,
    #[serde(rename = "Yp")]
    pub yp: Vec<String>,
    #[serde(rename = "J")]
    pub j: WireIdeal,
    #[serde(rename = "I")]
    pub i: WireIdeal,
    pub checklist: Vec<ClaimWire>,
    pub all_pass: bool,
    pub c: usize,
    pub gamma: WireIdeal,
    pub dim_r: usize,
    pub dim_r_mod_gamma: usize,
    pub ann: Option<WireIdeal>,
    pub dim_r_mod_ann: Option<usize>,
    pub gap: i64,
    pub conjecture_violated: bool,
}

impl LynchWire {
    pub fn from_core(r: &LynchReport) -> Self {
        let inst = &r.instance;
        let names = &inst.names;
        let set = |v| varset_to_wire(v, names);
        LynchWire {
            format_version: FORMAT_VERSION,
            field: r.field.to_string(),
            vars: names.clone(),
            d: inst.d,
            x: set(inst.x),
            y: set(inst.y),
            z: set(inst.z),
            xp: set(inst.xp),
            yp: set(inst.yp),
            j: ideal_to_wire(&inst.j, names),
            i: ideal_to_wire(&inst.i_lift, names),
            checklist: r
                .checklist
                .iter()
                .map(|c| ClaimWire {
                    id: c.id.clone(),
                    expected: c.expected.clone(),
                    computed: c.computed.clone(),
                    pass: c.pass,
                })
                .collect(),
            all_pass: r.all_pass(),
            c: r.c,
            gamma: ideal_to_wire(&r.gamma_lift, names),
            dim_r: r.dim_r,
            dim_r_mod_gamma: r.dim_r_mod_gamma,
            ann: r.ann_lift.as_ref().map(|a| ideal_to_wire(a, names)),
            dim_r_mod_ann: r.dim_r_mod_ann,
            gap: r.gap,
            conjecture_violated: r.conjecture_violated,
        }
    }

    pub fn to_core(&self) -> Result<LynchReport> {
        check_version(self.format_version)?;
        let names = &self.vars;
        let set = |v: &[String]| varset_from_wire(v, names);
        let instance = build_named(
            self.d,
            set(&self.x)?,
            set(&self.y)?,
            set(&self.z)?,
            set(&self.xp)?,
            set(&self.yp)?,
            names.clone(),
        )?;
        if ideal_from_wire(&self.j, names)? != instance.j || ideal_from_wire(&self.i, names)? != instance.i_lift {
            return invalid("stored J or I disagrees with the instance parameters");
        }
        Ok(LynchReport {
            instance,
            field: field_from_wire(&self.field)?,
            checklist: self
                .checklist
                .iter()
                .map(|c| ClaimCheck {
                    id: c.id.clone(),
                    expected: c.expected.clone(),
                    computed: c.computed.clone(),
                    pass: c.pass,
                })
                .collect(),
            c: self.c,
            gamma_lift: ideal_from_wire(&self.gamma, names)?,
            dim_r: self.dim_r,
            dim_r_mod_gamma: self.dim_r_mod_gamma,
            ann_lift: self.ann.as_ref().map(|a| ideal_from_wire(a, names)).transpose()?,
            dim_r_mod_ann: self.dim_r_mod_ann,
            gap: self.gap,
            conjecture_violated: self.conjecture_violated,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWire {
    pub format_version: u32,
    pub field: String,
    pub d_max: usize,
    pub total: usize,
    pub failures: usize,
    pub violated: usize,
    pub instances: Vec<LynchWire>,
}

impl SearchWire {
    pub fn from_core(s: &FamilySearch, field: FieldSpec) -> Self {
        SearchWire {
            format_version: FORMAT_VERSION,
            field: field.to_string(),
            d_max: s.d_max,
            total: s.total(),
            failures: s.failures(),
            violated: s.violated(),
            instances: s.reports.iter().map(LynchWire::from_core).collect(),
        }
    }

    pub fn to_core(&self) -> Result<FamilySearch> {
        check_version(self.format_version)?;
        Ok(FamilySearch {
            d_max: self.d_max,
            reports: self.instances.iter().map(LynchWire::to_core).collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRanks {
    pub degree: Vec<i64>,
    pub ranks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CechRanksWire {
    pub format_version: u32,
    pub field: String,
    pub vars: Vec<String>,
    pub generators: Vec<WireMonomial>,
    #[serde(rename = "box")]
    pub degree_box: BoxWire,
    pub top_nonvanishing: Option<usize>,
    pub ranks: Vec<DegreeRanks>,
}

impl CechRanksWire {
    pub fn from_core(r: &CechReport, names: &[String]) -> Self {
        CechRanksWire {
            format_version: FORMAT_VERSION,
            field: r.field.to_string(),
            vars: names.to_vec(),
            generators: r.generators.iter().map(|g| monomial_to_wire(g, names)).collect(),
            degree_box: BoxWire::from_core(&r.degree_box),
            top_nonvanishing: r.top_nonvanishing,
            ranks: r
                .ranks
                .iter()
                .map(|(b, rk)| DegreeRanks { degree: b.clone(), ranks: rk.clone() })
                .collect(),
        }
    }

    pub fn to_core(&self) -> Result<CechReport> {
        check_version(self.format_version)?;
        Ok(CechReport {
            generators: self
                .generators
                .iter()
                .map(|g| monomial_from_wire(g, &self.vars))
                .collect::<Result<_>>()?,
            degree_box: self.degree_box.to_core()?,
            ranks: self.ranks.iter().map(|r| (r.degree.clone(), r.ranks.clone())).collect(),
            top_nonvanishing: self.top_nonvanishing,
            field: field_from_wire(&self.field)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnCheckWire {
    pub format_version: u32,
    pub field: String,
    pub vars: Vec<String>,
    pub monomial: WireMonomial,
    pub i: usize,
    #[serde(rename = "box")]
    pub degree_box: BoxWire,
    /// `annihilates-in-box` or `acts-nonzero`.
    pub verdict: String,
    pub witness: Option<Vec<i64>>,
    pub degrees_checked: usize,
    pub coverage_gaps: usize,
}

impl AnnCheckWire {
    pub fn from_core(r: &AnnihilationReport, degree_box: &DegreeBox, names: &[String]) -> Self {
        let (verdict, witness) = match &r.verdict {
            Verdict::AnnihilatesInBox => ("annihilates-in-box", None),
            Verdict::ActsNonzero { witness } => ("acts-nonzero", Some(witness.clone())),
        };
        AnnCheckWire {
            format_version: FORMAT_VERSION,
            field: r.field.to_string(),
            vars: names.to_vec(),
            monomial: monomial_to_wire(&r.monomial, names),
            i: r.i,
            degree_box: BoxWire::from_core(degree_box),
            verdict: verdict.into(),
            witness,
            degrees_checked: r.degrees_checked,
            coverage_gaps: r.coverage_gaps,
        }
    }

    pub fn to_core(&self) -> Result<AnnihilationReport> {
        check_version(self.format_version)?;
        let verdict = match (self.verdict.as_str(), &self.witness) {
            ("annihilates-in-box", None) => Verdict::AnnihilatesInBox,
            ("acts-nonzero", Some(w)) => Verdict::ActsNonzero { witness: w.clone() },
            (v, _) => return invalid(format!("inconsistent verdict {v:?}")),
        };
        Ok(AnnihilationReport {
            monomial: monomial_from_wire(&self.monomial, &self.vars)?,
            i: self.i,
            verdict,
            degrees_checked: self.degrees_checked,
            coverage_gaps: self.coverage_gaps,
            field: field_from_wire(&self.field)?,
        })
    }
}
