use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{
    graded_component, groebner_basis, ideal_equal, ideal_quotient_element, kernel_of_ringmap, GradedPiece,
    GroebnerBasis, IdealPresentation,
};
use crate::polyring::{
    parse_poly, GradedRingSpec, MonomialOrder, Polynomial, Ring, RingRef, Substitution,
};

/// A named graded quotient `ring / relations` with homogeneous relations.
#[derive(Debug, Clone)]
pub struct ChowPresentation {
    name: String,
    relations: IdealPresentation,
    docs: BTreeMap<String, String>,
    basis: OnceLock<GroebnerBasis>,
}

impl ChowPresentation {
    pub fn new(name: impl Into<String>, relations: IdealPresentation) -> Result<Self> {
        let name = name.into();
        if !relations.is_homogeneous() {
            return Err(Error::InhomogeneousIdeal(format!("relations of `{name}`: {relations}")));
        }
        Ok(Self { name, relations, docs: BTreeMap::new(), basis: OnceLock::new() })
    }

    pub fn free(name: impl Into<String>, ring: &RingRef) -> Self {
        Self::new(name, IdealPresentation::zero(ring)).expect("zero ideal is homogeneous")
    }

    /// `ChowPresentation::parse("M12", "Z[l1,mu1]", &["mu1*(l1+mu1)", "24*l1^2"])`
    pub fn parse(name: &str, ring: &str, relations: &[&str]) -> Result<Self> {
        let ring = Ring::parse(ring)?;
        Self::new(name, IdealPresentation::parse(&ring, relations)?)
    }

    pub fn with_docs(mut self, docs: BTreeMap<String, String>) -> Self {
        self.docs = docs;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &RingRef {
        self.relations.ring()
    }

    pub fn relations(&self) -> &IdealPresentation {
        &self.relations
    }

    pub fn docs(&self) -> &BTreeMap<String, String> {
        &self.docs
    }

    pub fn basis(&self) -> Result<&GroebnerBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = groebner_basis(&self.relations, &MonomialOrder::default())?;
        Ok(self.basis.get_or_init(|| b))
    }

    /// Normal form modulo the relations, in the presentation's ring.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        self.basis()?.normal_form(p)?.in_ring(self.ring())
    }

    pub fn is_zero(&self, p: &Polynomial) -> Result<bool> {
        Ok(self.reduce(p)?.is_zero())
    }

    pub fn parse_poly(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, self.ring())
    }

    pub fn graded_component(&self, d: u64) -> Result<GradedPiece> {
        graded_component(&self.relations, d)
    }

    /// Same relations up to ideal equality (and the same ring).
    pub fn same_ideal(&self, other: &ChowPresentation) -> Result<bool> {
        ideal_equal(&self.relations, &other.relations)
    }
}

impl fmt::Display for ChowPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}/{}", self.name, self.ring(), self.relations)
    }
}

/// A ring homomorphism from a free graded ring into a quotient presentation.
#[derive(Debug, Clone)]
pub struct RingMap {
    name: String,
    target: ChowPresentation,
    map: Substitution,
}

impl RingMap {
    pub fn new(name: impl Into<String>, source: &RingRef, target: &ChowPresentation, images: Vec<Polynomial>) -> Result<Self> {
        let map = Substitution::new(source, target.ring(), images)?;
        Ok(Self { name: name.into(), target: target.clone(), map })
    }

    /// Unlisted source variables go to the target variable of the same name.
    pub fn from_named(
        name: impl Into<String>,
        source: &RingRef,
        target: &ChowPresentation,
        images: &[(&str, &str)],
    ) -> Result<Self> {
        let parsed = images
            .iter()
            .map(|(v, text)| Ok((*v, parse_poly(text, target.ring())?)))
            .collect::<Result<Vec<_>>>()?;
        let map = Substitution::from_named(source, target.ring(), &parsed)?;
        Ok(Self { name: name.into(), target: target.clone(), map })
    }

    pub fn identity(p: &ChowPresentation) -> Self {
        Self { name: "id".into(), target: p.clone(), map: Substitution::identity(p.ring()) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &RingRef {
        self.map.source()
    }

    pub fn target(&self) -> &ChowPresentation {
        &self.target
    }

    pub fn substitution(&self) -> &Substitution {
        &self.map
    }

    /// Image of `p`, reduced modulo the target relations.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        self.target.reduce(&self.map.apply(p)?)
    }

    /// Image of `p` before reduction.
    pub fn apply_raw(&self, p: &Polynomial) -> Result<Polynomial> {
        self.map.apply(p)
    }

    pub fn kernel(&self) -> Result<IdealPresentation> {
        kernel_of_ringmap(&self.map, self.target.relations())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapValidation {
    pub valid: bool,
    /// First offending relation and the normal form of its image.
    pub witness: Option<(Polynomial, Polynomial)>,
}

/// Checks that every source relation maps into the target relations.
pub fn validate_ringmap(m: &RingMap, source_relations: &IdealPresentation) -> Result<MapValidation> {
    if source_relations.ring().spec() != m.source().spec() {
        return Err(Error::RingMismatch(format!("relations over {} but map from {}", source_relations.ring(), m.source())));
    }
    for r in source_relations.generators() {
        let nf = m.apply(r)?;
        if !nf.is_zero() {
            return Ok(MapValidation { valid: false, witness: Some((r.clone(), nf)) });
        }
    }
    Ok(MapValidation { valid: true, witness: None })
}

/// True iff `(relations : c) = relations`.
pub fn nonzerodivisor(a: &ChowPresentation, c: &Polynomial) -> Result<bool> {
    if c.is_zero() {
        return a.is_zero(&Polynomial::one(a.ring()));
    }
    let q = ideal_quotient_element(a.relations(), c)?;
    for g in q.generators() {
        if !a.is_zero(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Adds `classes` to the relations.
pub fn excise(a: &ChowPresentation, classes: &[Polynomial], new_name: &str) -> Result<ChowPresentation> {
    let rel = a.relations().extended(classes.iter().cloned())?;
    Ok(ChowPresentation::new(new_name, rel)?.with_docs(a.docs.clone()))
}

/// Product of the given classes; `1` in `ring` for the empty list.
pub fn weight_class(ring: &RingRef, characters: &[Polynomial]) -> Result<Polynomial> {
    let mut acc = Polynomial::one(ring);
    for c in characters {
        if c.ring().spec() != ring.spec() {
            return Err(Error::RingMismatch(format!("{} is not over {}", c, ring)));
        }
        acc = acc.mul_ref(&c.in_ring(ring)?);
    }
    Ok(acc)
}

/// `base[h] / (relations, h^r + c_1 h^(r-1) + ... + c_r)` where `chern = [c_1, ..., c_r]`.
pub fn projective_bundle_presentation(
    base: &ChowPresentation,
    chern: &[Polynomial],
    h_name: &str,
    new_name: &str,
) -> Result<ChowPresentation> {
    let ring = base.ring();
    if ring.index_of(h_name).is_some() {
        return Err(Error::InvalidRing(format!("`{h_name}` already names a variable of {ring}")));
    }
    for (i, c) in chern.iter().enumerate() {
        if c.ring().spec() != ring.spec() {
            return Err(Error::RingMismatch(format!("{} is not over {}", c, ring)));
        }
        if !c.is_zero() && c.homogeneous_degree() != Some(i as u64 + 1) {
            return Err(Error::DegreeMismatch(format!("c_{} = {} is not homogeneous of degree {}", i + 1, c, i + 1)));
        }
    }
    let vars = ring.spec().vars();
    let spec = GradedRingSpec::new(
        ring.domain(),
        vars.iter().map(|v| (v.name.clone(), v.weight)).chain(std::iter::once((h_name.to_string(), 1))),
    )?;
    let big = Ring::new(spec);
    let lift: Vec<Option<usize>> = (0..vars.len()).map(Some).collect();
    let h = Polynomial::var(&big, vars.len());
    let r = chern.len() as u32;
    let mut rel = h.pow(r);
    for (i, c) in chern.iter().enumerate() {
        rel = rel.add_ref(&crate::groebner::remap(c, &big, &lift)?.mul_ref(&h.pow(r - 1 - i as u32)));
    }
    let mut gens = base
        .relations()
        .generators()
        .iter()
        .map(|g| crate::groebner::remap(g, &big, &lift))
        .collect::<Result<Vec<_>>>()?;
    gens.push(rel);
    ChowPresentation::new(new_name, IdealPresentation::new(&big, gens)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionCheck {
    pub map: String,
    pub passed: bool,
    /// Normal form of `image − expected` in the target.
    pub difference: Polynomial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub checks: Vec<RestrictionCheck>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Checks `map(class) ≡ expected` in each target.
pub fn class_consistency(class: &Polynomial, restrictions: &[(RingMap, Polynomial)]) -> Result<ConsistencyReport> {
    let mut checks = Vec::with_capacity(restrictions.len());
    for (m, expected) in restrictions {
        let diff = m.apply_raw(class)?.arith(expected, crate::polyring::ArithOp::Sub)?;
        let difference = m.target().reduce(&diff)?;
        checks.push(RestrictionCheck { map: m.name().to_string(), passed: difference.is_zero(), difference });
    }
    Ok(ConsistencyReport { checks })
}
