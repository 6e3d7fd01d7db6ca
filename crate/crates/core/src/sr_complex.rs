//! Stanley–Reisner dictionary for squarefree monomial ideals.
//!
//! The minimal primes of a monomial ideal `I` are the monomial primes `(V)`
//! where `V` ranges over the minimal vertex covers of the hypergraph formed by
//! the supports of the generators of `√I`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::monomial::{MonomialIdeal, VarSet};

/// Largest ambient dimension for minimal-prime enumeration.
pub const MAX_TRANSVERSAL_VARS: usize = 20;

/// Krull dimension, with `-∞` for the zero module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    NegInfinity,
    Finite(usize),
}

impl Dim {
    pub fn finite(self) -> Result<usize> {
        match self {
            Dim::Finite(n) => Ok(n),
            Dim::NegInfinity => invalid("dimension of the zero module is -infinity"),
        }
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dim::Finite(n) => write!(f, "{n}"),
            Dim::NegInfinity => write!(f, "-inf"),
        }
    }
}

/// Inclusion-minimal monomial primes over `ideal`, sorted.
pub fn minimal_primes(ideal: &MonomialIdeal) -> Result<Vec<VarSet>> {
    if ideal.is_unit() {
        return invalid("minimal primes of the unit ideal: the ideal must be proper");
    }
    if ideal.ambient() > MAX_TRANSVERSAL_VARS {
        return Err(Error::Guard(format!(
            "minimal prime enumeration limited to {MAX_TRANSVERSAL_VARS} variables, got {}",
            ideal.ambient()
        )));
    }
    let edges = ideal.radical().supports();
    let mut found = BTreeSet::new();
    covers(&edges, VarSet::empty(), VarSet::empty(), &mut found);
    let mut primes: Vec<VarSet> = found
        .into_iter()
        .filter(|c| is_minimal_cover(&edges, *c))
        .collect();
    primes.sort();
    Ok(primes)
}

// Branch on the vertices of the first edge not yet hit. Vertices already branched
// on at this level are forbidden in later siblings, so each cover is reached once.
fn covers(edges: &[VarSet], chosen: VarSet, forbidden: VarSet, out: &mut BTreeSet<VarSet>) {
    let Some(edge) = edges.iter().find(|e| !e.intersects(chosen)) else {
        out.insert(chosen);
        return;
    };
    let mut forbidden = forbidden;
    for v in edge.difference(forbidden).iter() {
        let next = chosen.with(v);
        // A vertex that has lost its private edge never regains one.
        if next.iter().all(|u| has_private_edge(edges, next, u)) {
            covers(edges, next, forbidden, out);
        }
        forbidden = forbidden.with(v);
    }
}

fn edge_fully_hit(edges: &[VarSet], cover: VarSet) -> bool {
    edges.iter().all(|e| e.intersects(cover))
}

fn has_private_edge(edges: &[VarSet], cover: VarSet, u: usize) -> bool {
    edges.iter().any(|e| e.intersection(cover) == VarSet::singleton(u))
}

fn is_minimal_cover(edges: &[VarSet], cover: VarSet) -> bool {
    edge_fully_hit(edges, cover) && cover.iter().all(|u| has_private_edge(edges, cover, u))
}

/// `dim S/I`, or `-∞` for the unit ideal.
pub fn dim_of(ideal: &MonomialIdeal) -> Result<Dim> {
    if ideal.is_unit() {
        return Ok(Dim::NegInfinity);
    }
    let primes = minimal_primes(ideal)?;
    let min = primes.iter().map(|p| p.len()).min().unwrap_or(0);
    Ok(Dim::Finite(ideal.ambient() - min))
}

/// `dim S/I` for a proper ideal.
pub fn krull_dim(ideal: &MonomialIdeal) -> Result<usize> {
    dim_of(ideal)?.finite()
}

/// A simplicial complex on vertices `0..vertices`, given by its facets.
///
/// No facets at all is the void complex; the single facet `∅` is the
/// irrelevant complex `{∅}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: usize,
    facets: Vec<VarSet>,
}

impl SimplicialComplex {
    /// Builds a complex from any generating faces; non-maximal ones are dropped.
    pub fn new(vertices: usize, faces: impl IntoIterator<Item = VarSet>) -> Result<Self> {
        let mut faces: Vec<VarSet> = faces.into_iter().collect();
        if let Some(f) = faces.iter().find(|f| f.span() > vertices) {
            return invalid(format!("face {f:?} uses a vertex outside 0..{vertices}"));
        }
        faces.sort_by_key(|f| std::cmp::Reverse(f.len()));
        faces.dedup();
        let mut facets: Vec<VarSet> = Vec::new();
        for f in faces {
            if !facets.iter().any(|g| f.is_subset(*g)) {
                facets.push(f);
            }
        }
        facets.sort();
        Ok(SimplicialComplex { vertices, facets })
    }

    pub fn void(vertices: usize) -> Self {
        SimplicialComplex { vertices, facets: Vec::new() }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[VarSet] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, s: VarSet) -> bool {
        self.facets.iter().any(|f| s.is_subset(*f))
    }

    /// Largest facet size minus one; `None` for the void complex.
    pub fn dimension(&self) -> Option<isize> {
        self.facets.iter().map(|f| f.len() as isize - 1).max()
    }

    /// All faces, sorted.
    pub fn faces(&self) -> Vec<VarSet> {
        let mut all = BTreeSet::new();
        for f in &self.facets {
            all.extend(f.subsets());
        }
        all.into_iter().collect()
    }

    /// Induced subcomplex on the vertex set `s`.
    pub fn restrict(&self, s: VarSet) -> SimplicialComplex {
        SimplicialComplex::new(self.vertices, self.facets.iter().map(|f| f.intersection(s)))
            .expect("restriction keeps vertices in range")
    }
}

/// Stanley–Reisner complex of a squarefree proper ideal.
pub fn sr_complex_of(j: &MonomialIdeal) -> Result<SimplicialComplex> {
    if !j.is_squarefree() {
        return invalid("Stanley-Reisner complex needs a squarefree ideal");
    }
    let d = j.ambient();
    let primes = minimal_primes(j)?;
    SimplicialComplex::new(d, primes.into_iter().map(|p| p.complement(d)))
}

/// `R = S/J` for a squarefree proper `J`, with its minimal primes cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    ambient: usize,
    j: MonomialIdeal,
    minimal_primes: Vec<VarSet>,
}

impl QuotientRing {
    pub fn new(j: MonomialIdeal) -> Result<Self> {
        if !j.is_squarefree() {
            return invalid("J must be squarefree");
        }
        if j.is_unit() {
            return invalid("J must be a proper ideal (1 is not in J)");
        }
        let minimal_primes = minimal_primes(&j)?;
        Ok(QuotientRing { ambient: j.ambient(), j, minimal_primes })
    }

    /// The polynomial ring itself, `J = 0`.
    pub fn polynomial(d: usize) -> Self {
        QuotientRing::new(MonomialIdeal::zero(d)).expect("zero ideal is squarefree and proper")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn j(&self) -> &MonomialIdeal {
        &self.j
    }

    /// `Ass_R(R)`, which for radical `J` is the set of minimal primes.
    pub fn minimal_primes(&self) -> &[VarSet] {
        &self.minimal_primes
    }

    pub fn dim(&self) -> usize {
        self.ambient - self.minimal_primes.iter().map(|p| p.len()).min().unwrap_or(0)
    }

    /// Whether the monomial prime `q` lies in `Supp R = V(J)`.
    pub fn in_support(&self, q: VarSet) -> bool {
        self.minimal_primes.iter().any(|p| p.is_subset(q))
    }

    /// `dim R/q = d − |q|` for a monomial prime `q ⊇ J`.
    pub fn dim_mod_prime(&self, q: VarSet) -> usize {
        self.ambient - q.len()
    }

    /// Local dimension `dim R_q` of a monomial prime in the support.
    pub fn local_dim(&self, q: VarSet) -> Option<usize> {
        self.minimal_primes
            .iter()
            .filter(|p| p.is_subset(q))
            .map(|p| q.len() - p.len())
            .max()
    }
}

/// `a = (lift + J)/J`, an ideal of `R` with `a ≠ R`.
#[derive(Clone, Debug)]
pub struct QuotientIdeal<'r> {
    ring: &'r QuotientRing,
    lift: MonomialIdeal,
}

impl<'r> QuotientIdeal<'r> {
    pub fn new(ring: &'r QuotientRing, lift: MonomialIdeal) -> Result<Self> {
        if lift.ambient() != ring.ambient() {
            return invalid(format!(
                "ideal lives in {} variables but R has {}",
                lift.ambient(),
                ring.ambient()
            ));
        }
        if lift.sum(ring.j())?.is_unit() {
            return invalid("a + J must be a proper ideal (R != aR)");
        }
        Ok(QuotientIdeal { ring, lift })
    }

    pub fn ring(&self) -> &'r QuotientRing {
        self.ring
    }

    pub fn lift(&self) -> &MonomialIdeal {
        &self.lift
    }

    /// `lift + J`.
    pub fn full_lift(&self) -> MonomialIdeal {
        self.lift.sum(self.ring.j()).expect("ambient checked at construction")
    }
}

/// `ht_R(a)`: the least local dimension `dim R_q` over primes `q ⊇ a + J`.
///
/// The infimum is attained at a prime minimal over `a + J`; those are monomial,
/// and `dim R_q = max_{p ⊆ q} (|q| − |p|)` over minimal primes `p` of `J`.
pub fn height_in_quotient(a: &QuotientIdeal) -> Result<usize> {
    let ring = a.ring();
    let over = minimal_primes(&a.full_lift())?;
    Ok(over
        .into_iter()
        .map(|q| ring.local_dim(q).expect("q contains a + J, hence J"))
        .min()
        .expect("a proper ideal has a minimal prime"))
}
