//! Scenario files: a JSON tree of rings, maps, classes, pushforward operators and checks.
//!
//! Names are resolved in declaration order, section by section (rings, maps, classes,
//! operators, checks), so a definition can only refer to what precedes it.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use m21_core::chowcalc::{
    excise, weight_class, ChowPresentation, PatchingProblem, PushforwardOperator, QuadraticTransfer, RingMap,
    SurjectivePullback,
};
use m21_core::groebner::{GradedPiece, IdealPresentation};
use m21_core::polyring::{parse_poly_with, Polynomial, Ring, RingRef};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::error::LoadError;

/// A polynomial-valued expression.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum Expr {
    /// Polynomial grammar text; `$name` refers to a class.
    Text(String),
    /// `{"apply": map, "to": expr}`: `to` is read in the map's source ring.
    Apply { apply: String, to: Box<Expr> },
    /// `{"weight_class": [expr, ...]}`: product of the listed classes.
    WeightClass { weight_class: Vec<Expr> },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Text(s) => write!(f, "{s}"),
            Expr::Apply { apply, to } => write!(f, "{apply}({to})"),
            Expr::WeightClass { weight_class } => {
                write!(f, "weight_class(")?;
                for (i, e) in weight_class.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A presentation argument: a ring name, a ring with extra relations, or the image of a
/// map's source relations.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PresArg {
    Name(String),
    Excise { base: String, excise: Vec<Expr> },
    Image { image: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    id: String,
    #[serde(default)]
    description: String,
    #[serde(default)]
    covers: Vec<String>,
    #[serde(default)]
    assumptions: Vec<String>,
    #[serde(default)]
    rings: Vec<RawRing>,
    #[serde(default)]
    maps: Vec<RawMap>,
    #[serde(default)]
    classes: Vec<RawClass>,
    #[serde(default)]
    operators: Vec<RawOperator>,
    #[serde(default)]
    checks: Vec<RawCheck>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    name: String,
    ring: String,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    docs: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    name: String,
    source: String,
    target: String,
    #[serde(default)]
    images: BTreeMap<String, Expr>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    name: String,
    ring: String,
    value: Expr,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
enum RawOperator {
    SurjectivePullback {
        name: String,
        pullback: String,
        preimages: BTreeMap<String, Expr>,
        unit_image: Expr,
    },
    QuadraticTransfer {
        name: String,
        pullback: String,
        tau: String,
        p: Expr,
        q: Expr,
        cogenerators: BTreeMap<String, String>,
        push_unit: Expr,
        push_tau: Expr,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRestriction {
    map: String,
    expected: Expr,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPiece {
    degree: u64,
    free_rank: usize,
    #[serde(default)]
    torsion: Vec<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawIdealArg {
    Generators(Vec<Expr>),
    Pres(PresArg),
}

fn yes() -> bool {
    true
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE", deny_unknown_fields)]
enum RawCheck {
    IdealEqual { name: String, ring: PresArg, expected: RawIdealArg },
    Member { name: String, ring: PresArg, elements: Vec<Expr> },
    NotMember { name: String, ring: PresArg, elements: Vec<Expr> },
    PatchingDerive { name: String, open: String, closed: String, top_chern: Expr, expected: PresArg },
    MapValid {
        name: String,
        map: String,
        #[serde(default = "yes")]
        expect: bool,
    },
    Nzd {
        name: String,
        ring: PresArg,
        element: Expr,
        #[serde(default = "yes")]
        expect: bool,
    },
    PushforwardEq { name: String, operator: String, input: Expr, expected: Expr },
    ClassConsistency { name: String, ring: String, class: Expr, restrictions: Vec<RawRestriction> },
    GradedComponent {
        name: String,
        ring: PresArg,
        degrees: Vec<u64>,
        #[serde(default)]
        expected: Option<Vec<RawPiece>>,
        #[serde(default)]
        compare_with: Option<PresArg>,
    },
    IdentityEq {
        name: String,
        ring: PresArg,
        lhs: Expr,
        rhs: Expr,
        #[serde(default)]
        modulo: bool,
    },
    ContainmentReport {
        name: String,
        ring: PresArg,
        #[serde(default)]
        other: Option<PresArg>,
        #[serde(default)]
        value: Option<Expr>,
        #[serde(default)]
        candidates: BTreeMap<String, Expr>,
        #[serde(default)]
        modulo: bool,
    },
}

impl RawCheck {
    fn name(&self) -> &str {
        match self {
            RawCheck::IdealEqual { name, .. }
            | RawCheck::Member { name, .. }
            | RawCheck::NotMember { name, .. }
            | RawCheck::PatchingDerive { name, .. }
            | RawCheck::MapValid { name, .. }
            | RawCheck::Nzd { name, .. }
            | RawCheck::PushforwardEq { name, .. }
            | RawCheck::ClassConsistency { name, .. }
            | RawCheck::GradedComponent { name, .. }
            | RawCheck::IdentityEq { name, .. }
            | RawCheck::ContainmentReport { name, .. } => name,
        }
    }
}

/// A named ring map together with the names of its endpoints.
#[derive(Debug, Clone)]
pub struct MapDef {
    pub source: String,
    pub map: RingMap,
}

#[derive(Debug, Clone)]
pub struct ClassDef {
    pub name: String,
    pub ring: String,
    pub value: Polynomial,
}

/// An operator whose construction (which verifies its own consistency) may have failed;
/// checks using a failed operator fail with the construction error as witness.
#[derive(Debug, Clone)]
pub struct OperatorDef {
    pub name: String,
    pub upstream: ChowPresentation,
    pub downstream: ChowPresentation,
    pub op: Result<PushforwardOperator, String>,
}

#[derive(Debug, Clone)]
pub enum GradedExpectation {
    Values(Vec<GradedPiece>),
    SameAs(ChowPresentation),
}

#[derive(Debug, Clone)]
pub enum CheckKind {
    IdealEqual { lhs: ChowPresentation, rhs: ChowPresentation },
    Member { ring: ChowPresentation, elements: Vec<(String, Polynomial)>, expect: bool },
    PatchingDerive { open: RingMap, closed: RingMap, top_chern: Polynomial, expected: ChowPresentation },
    MapValid { map: RingMap, source_relations: IdealPresentation, expect: bool },
    Nzd { ring: ChowPresentation, element: Polynomial, expect: bool },
    PushforwardEq { op: OperatorDef, input: Polynomial, expected: Polynomial },
    ClassConsistency { class: Polynomial, restrictions: Vec<(RingMap, Polynomial)> },
    GradedComponent { ring: ChowPresentation, degrees: Vec<u64>, expected: GradedExpectation },
    IdentityEq { ring: ChowPresentation, lhs: Polynomial, rhs: Polynomial, modulo: bool },
    ContainmentIdeal { lhs: ChowPresentation, rhs: ChowPresentation },
    ContainmentValue { ring: ChowPresentation, value: Polynomial, candidates: Vec<(String, Polynomial)>, modulo: bool },
}

impl CheckKind {
    pub fn label(&self) -> &'static str {
        match self {
            CheckKind::IdealEqual { .. } => "IDEAL_EQUAL",
            CheckKind::Member { expect: true, .. } => "MEMBER",
            CheckKind::Member { expect: false, .. } => "NOT_MEMBER",
            CheckKind::PatchingDerive { .. } => "PATCHING_DERIVE",
            CheckKind::MapValid { .. } => "MAP_VALID",
            CheckKind::Nzd { .. } => "NZD",
            CheckKind::PushforwardEq { .. } => "PUSHFORWARD_EQ",
            CheckKind::ClassConsistency { .. } => "CLASS_CONSISTENCY",
            CheckKind::GradedComponent { .. } => "GRADED_COMPONENT",
            CheckKind::IdentityEq { .. } => "IDENTITY_EQ",
            CheckKind::ContainmentIdeal { .. } | CheckKind::ContainmentValue { .. } => "CONTAINMENT_REPORT",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub kind: CheckKind,
}

/// A fully resolved scenario.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub description: String,
    pub covers: Vec<String>,
    /// Hypotheses taken on trust (for instance that the chosen classes generate the ring).
    pub assumptions: Vec<String>,
    pub rings: Vec<ChowPresentation>,
    pub maps: Vec<MapDef>,
    pub classes: Vec<ClassDef>,
    pub operators: Vec<OperatorDef>,
    pub checks: Vec<Check>,
}

impl Scenario {
    pub fn ring(&self, name: &str) -> Option<&ChowPresentation> {
        self.rings.iter().find(|r| r.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapDef> {
        self.maps.iter().find(|m| m.map.name() == name)
    }

    pub fn class(&self, name: &str) -> Option<&ClassDef> {
        self.classes.iter().find(|c| c.name == name)
    }

    pub fn operator(&self, name: &str) -> Option<&OperatorDef> {
        self.operators.iter().find(|o| o.name == name)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<Scenario, LoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| LoadError::Io { path: path.display().to_string(), msg: e.to_string() })?;
    parse_scenario(&text, &path.display().to_string())
}

/// Parses and resolves scenario text; `origin` prefixes error locations.
pub fn parse_scenario(text: &str, origin: &str) -> Result<Scenario, LoadError> {
    let raw: RawScenario = serde_json::from_str(text).map_err(|e| LoadError::Parse {
        location: format!("{origin}:{}:{}", e.line(), e.column()),
        msg: e.to_string(),
    })?;
    Resolver { origin, s: Scenario::empty(&raw) }.resolve(raw)
}

impl Scenario {
    fn empty(raw: &RawScenario) -> Self {
        Scenario {
            id: raw.id.clone(),
            description: raw.description.clone(),
            covers: raw.covers.clone(),
            assumptions: raw.assumptions.clone(),
            rings: Vec::new(),
            maps: Vec::new(),
            classes: Vec::new(),
            operators: Vec::new(),
            checks: Vec::new(),
        }
    }
}

struct Resolver<'a> {
    origin: &'a str,
    s: Scenario,
}

fn unique<'n>(seen: &mut Vec<&'n str>, name: &'n str, loc: &str) -> Result<(), LoadError> {
    if seen.contains(&name) {
        return Err(LoadError::TypeMismatch { location: loc.to_string(), msg: format!("duplicate name `{name}`") });
    }
    seen.push(name);
    Ok(())
}

impl Resolver<'_> {
    fn loc(&self, what: &str) -> String {
        format!("{}: {what}", self.origin)
    }

    fn resolve(mut self, raw: RawScenario) -> Result<Scenario, LoadError> {
        let mut seen = Vec::new();
        for (i, r) in raw.rings.iter().enumerate() {
            let loc = self.loc(&format!("rings[{i}] `{}`", r.name));
            unique(&mut seen, &r.name, &loc)?;
            let ring = Ring::parse(&r.ring).map_err(|e| LoadError::core(&loc, e))?;
            let rels = r
                .relations
                .iter()
                .map(|t| self.eval_text(t, &ring, &loc))
                .collect::<Result<Vec<_>, _>>()?;
            let ideal = IdealPresentation::new(&ring, rels).map_err(|e| LoadError::core(&loc, e))?;
            let pres = ChowPresentation::new(&r.name, ideal)
                .map_err(|e| LoadError::core(&loc, e))?
                .with_docs(r.docs.clone());
            self.s.rings.push(pres);
        }
        for (i, m) in raw.maps.iter().enumerate() {
            let loc = self.loc(&format!("maps[{i}] `{}`", m.name));
            unique(&mut seen, &m.name, &loc)?;
            let source = self.ring(&m.source, &loc)?.clone();
            let target = self.ring(&m.target, &loc)?.clone();
            let mut images = Vec::new();
            for (var, e) in &m.images {
                images.push((var.as_str(), self.eval(e, target.ring(), &loc)?));
            }
            let sub = m21_core::polyring::Substitution::from_named(source.ring(), target.ring(), &images)
                .map_err(|e| LoadError::core(&loc, e))?;
            let map = RingMap::new(&m.name, source.ring(), &target, sub.images().to_vec())
                .map_err(|e| LoadError::core(&loc, e))?;
            self.s.maps.push(MapDef { source: m.source.clone(), map });
        }
        for (i, c) in raw.classes.iter().enumerate() {
            let loc = self.loc(&format!("classes[{i}] `{}`", c.name));
            unique(&mut seen, &c.name, &loc)?;
            let ring = self.ring(&c.ring, &loc)?.ring().clone();
            let value = self.eval(&c.value, &ring, &loc)?;
            self.s.classes.push(ClassDef { name: c.name.clone(), ring: c.ring.clone(), value });
        }
        for (i, o) in raw.operators.iter().enumerate() {
            let def = self.operator(i, o)?;
            unique(&mut seen, match o {
                RawOperator::SurjectivePullback { name, .. } | RawOperator::QuadraticTransfer { name, .. } => name,
            }, &self.loc(&format!("operators[{i}]")))?;
            self.s.operators.push(def);
        }
        let mut check_names = Vec::new();
        for (i, c) in raw.checks.iter().enumerate() {
            let loc = self.loc(&format!("checks[{i}] `{}`", c.name()));
            unique(&mut check_names, c.name(), &loc)?;
            let kind = self.check(c, &loc)?;
            self.s.checks.push(Check { name: c.name().to_string(), kind });
        }
        Ok(self.s)
    }

    fn ring(&self, name: &str, loc: &str) -> Result<&ChowPresentation, LoadError> {
        self.s.ring(name).ok_or_else(|| LoadError::Unresolved { location: loc.to_string(), name: name.to_string() })
    }

    fn map(&self, name: &str, loc: &str) -> Result<&MapDef, LoadError> {
        self.s.map(name).ok_or_else(|| LoadError::Unresolved { location: loc.to_string(), name: name.to_string() })
    }

    fn eval_text(&self, text: &str, ring: &RingRef, loc: &str) -> Result<Polynomial, LoadError> {
        let classes = &self.s.classes;
        let look = |name: &str| classes.iter().find(|c| c.name == name).map(|c| c.value.clone());
        parse_poly_with(text, ring, &look).map_err(|e| LoadError::core(&format!("{loc}: `{text}`"), e))
    }

    fn eval(&self, e: &Expr, ring: &RingRef, loc: &str) -> Result<Polynomial, LoadError> {
        match e {
            Expr::Text(t) => self.eval_text(t, ring, loc),
            Expr::Apply { apply, to } => {
                let m = &self.map(apply, loc)?.map;
                let x = self.eval(to, m.source(), loc)?;
                let y = m.apply_raw(&x).map_err(|err| LoadError::core(loc, err))?;
                if y.ring().spec() != ring.spec() {
                    return Err(LoadError::TypeMismatch {
                        location: loc.to_string(),
                        msg: format!("`{e}` lands in {} but {} is expected", y.ring(), ring),
                    });
                }
                y.in_ring(ring).map_err(|err| LoadError::core(loc, err))
            }
            Expr::WeightClass { weight_class: items } => {
                let polys = items.iter().map(|x| self.eval(x, ring, loc)).collect::<Result<Vec<_>, _>>()?;
                weight_class(ring, &polys).map_err(|err| LoadError::core(loc, err))
            }
        }
    }

    fn pres(&self, arg: &PresArg, loc: &str) -> Result<ChowPresentation, LoadError> {
        match arg {
            PresArg::Name(n) => Ok(self.ring(n, loc)?.clone()),
            PresArg::Excise { base, excise: classes } => {
                let b = self.ring(base, loc)?;
                let polys = classes.iter().map(|x| self.eval(x, b.ring(), loc)).collect::<Result<Vec<_>, _>>()?;
                excise(b, &polys, &format!("{base}/excised")).map_err(|e| LoadError::core(loc, e))
            }
            PresArg::Image { image } => {
                let m = self.map(image, loc)?;
                let src = self.ring(&m.source, loc)?;
                let tgt = m.map.target().ring();
                let imgs = src
                    .relations()
                    .generators()
                    .iter()
                    .map(|g| m.map.apply_raw(g))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| LoadError::core(loc, e))?;
                let ideal = IdealPresentation::new(tgt, imgs).map_err(|e| LoadError::core(loc, e))?;
                ChowPresentation::new(format!("image of {}", m.source), ideal).map_err(|e| LoadError::core(loc, e))
            }
        }
    }

    fn operator(&self, i: usize, o: &RawOperator) -> Result<OperatorDef, LoadError> {
        match o {
            RawOperator::SurjectivePullback { name, pullback, preimages, unit_image } => {
                let loc = self.loc(&format!("operators[{i}] `{name}`"));
                let m = self.map(pullback, &loc)?;
                let source = self.ring(&m.source, &loc)?.clone();
                let y = m.map.target().ring().clone();
                let mut lifts = Vec::with_capacity(y.nvars());
                for k in 0..y.nvars() {
                    let var = y.var_name(k);
                    let e = preimages.get(var).ok_or_else(|| LoadError::Unresolved {
                        location: format!("{loc}: preimages"),
                        name: var.to_string(),
                    })?;
                    lifts.push(self.eval(e, source.ring(), &loc)?);
                }
                if let Some(extra) = preimages.keys().find(|k| y.index_of(k).is_none()) {
                    return Err(LoadError::Unresolved { location: format!("{loc}: preimages"), name: extra.clone() });
                }
                let unit = self.eval(unit_image, source.ring(), &loc)?;
                let op = SurjectivePullback::new(&source, m.map.clone(), lifts, unit)
                    .map(PushforwardOperator::SurjectivePullback)
                    .map_err(|e| e.to_string());
                Ok(OperatorDef { name: name.clone(), upstream: m.map.target().clone(), downstream: source, op })
            }
            RawOperator::QuadraticTransfer { name, pullback, tau, p, q, cogenerators, push_unit, push_tau } => {
                let loc = self.loc(&format!("operators[{i}] `{name}`"));
                let m = self.map(pullback, &loc)?;
                let down = self.ring(&m.source, &loc)?.clone();
                let dr = down.ring();
                let (p, q) = (self.eval(p, dr, &loc)?, self.eval(q, dr, &loc)?);
                let (pu, pt) = (self.eval(push_unit, dr, &loc)?, self.eval(push_tau, dr, &loc)?);
                let others: Vec<(&str, &str)> = cogenerators.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
                let op = QuadraticTransfer::new(&down, m.map.clone(), tau, (p, q), &others, pu, pt)
                    .map(PushforwardOperator::QuadraticTransfer)
                    .map_err(|e| e.to_string());
                Ok(OperatorDef { name: name.clone(), upstream: m.map.target().clone(), downstream: down, op })
            }
        }
    }

    fn elements(&self, ring: &ChowPresentation, items: &[Expr], loc: &str) -> Result<Vec<(String, Polynomial)>, LoadError> {
        items.iter().map(|e| Ok((e.to_string(), self.eval(e, ring.ring(), loc)?))).collect()
    }

    fn check(&self, c: &RawCheck, loc: &str) -> Result<CheckKind, LoadError> {
        Ok(match c {
            RawCheck::IdealEqual { ring, expected, .. } => {
                let lhs = self.pres(ring, loc)?;
                let rhs = match expected {
                    RawIdealArg::Pres(p) => self.pres(p, loc)?,
                    RawIdealArg::Generators(gens) => {
                        let polys = gens.iter().map(|g| self.eval(g, lhs.ring(), loc)).collect::<Result<Vec<_>, _>>()?;
                        let ideal = IdealPresentation::new(lhs.ring(), polys).map_err(|e| LoadError::core(loc, e))?;
                        ChowPresentation::new("expected", ideal).map_err(|e| LoadError::core(loc, e))?
                    }
                };
                self.same_ring(&lhs, &rhs, loc)?;
                CheckKind::IdealEqual { lhs, rhs }
            }
            RawCheck::Member { ring, elements, .. } | RawCheck::NotMember { ring, elements, .. } => {
                let ring = self.pres(ring, loc)?;
                let elements = self.elements(&ring, elements, loc)?;
                CheckKind::Member { ring, elements, expect: matches!(c, RawCheck::Member { .. }) }
            }
            RawCheck::PatchingDerive { open, closed, top_chern, expected, .. } => {
                let open = self.map(open, loc)?.map.clone();
                let closed = self.map(closed, loc)?.map.clone();
                let top_chern = self.eval(top_chern, closed.target().ring(), loc)?;
                let expected = self.pres(expected, loc)?;
                PatchingProblem::new(open.clone(), closed.clone(), top_chern.clone())
                    .map_err(|e| LoadError::core(loc, e))?;
                if expected.ring().spec() != open.source().spec() {
                    return Err(LoadError::TypeMismatch {
                        location: loc.to_string(),
                        msg: format!("expected ring {} differs from generator ring {}", expected.ring(), open.source()),
                    });
                }
                CheckKind::PatchingDerive { open, closed, top_chern, expected }
            }
            RawCheck::MapValid { map, expect, .. } => {
                let m = self.map(map, loc)?;
                let source_relations = self.ring(&m.source, loc)?.relations().clone();
                CheckKind::MapValid { map: m.map.clone(), source_relations, expect: *expect }
            }
            RawCheck::Nzd { ring, element, expect, .. } => {
                let ring = self.pres(ring, loc)?;
                let element = self.eval(element, ring.ring(), loc)?;
                CheckKind::Nzd { ring, element, expect: *expect }
            }
            RawCheck::PushforwardEq { operator, input, expected, .. } => {
                let op = self
                    .s
                    .operator(operator)
                    .ok_or_else(|| LoadError::Unresolved { location: loc.to_string(), name: operator.clone() })?
                    .clone();
                let input = self.eval(input, op.upstream.ring(), loc)?;
                let expected = self.eval(expected, op.downstream.ring(), loc)?;
                CheckKind::PushforwardEq { op, input, expected }
            }
            RawCheck::ClassConsistency { ring, class, restrictions, .. } => {
                let r = self.ring(ring, loc)?.ring().clone();
                let class = self.eval(class, &r, loc)?;
                let mut out = Vec::new();
                for rr in restrictions {
                    let m = &self.map(&rr.map, loc)?.map;
                    if m.source().spec() != r.spec() {
                        return Err(LoadError::TypeMismatch {
                            location: loc.to_string(),
                            msg: format!("map `{}` does not start at {}", rr.map, r),
                        });
                    }
                    out.push((m.clone(), self.eval(&rr.expected, m.target().ring(), loc)?));
                }
                CheckKind::ClassConsistency { class, restrictions: out }
            }
            RawCheck::GradedComponent { ring, degrees, expected, compare_with, .. } => {
                let ring = self.pres(ring, loc)?;
                let expected = match (expected, compare_with) {
                    (Some(v), None) => {
                        let pieces: Vec<GradedPiece> = v
                            .iter()
                            .map(|p| GradedPiece {
                                degree: p.degree,
                                free_rank: p.free_rank,
                                torsion: p.torsion.iter().map(|&t| BigInt::from(t)).collect(),
                            })
                            .collect();
                        if pieces.iter().map(|p| p.degree).collect::<Vec<_>>() != *degrees {
                            return Err(LoadError::TypeMismatch {
                                location: loc.to_string(),
                                msg: "expected pieces must list exactly the checked degrees".into(),
                            });
                        }
                        GradedExpectation::Values(pieces)
                    }
                    (None, Some(other)) => {
                        let other = self.pres(other, loc)?;
                        self.same_ring(&ring, &other, loc)?;
                        GradedExpectation::SameAs(other)
                    }
                    _ => {
                        return Err(LoadError::TypeMismatch {
                            location: loc.to_string(),
                            msg: "give exactly one of `expected` and `compare_with`".into(),
                        })
                    }
                };
                CheckKind::GradedComponent { ring, degrees: degrees.clone(), expected }
            }
            RawCheck::IdentityEq { ring, lhs, rhs, modulo, .. } => {
                let ring = self.pres(ring, loc)?;
                let lhs = self.eval(lhs, ring.ring(), loc)?;
                let rhs = self.eval(rhs, ring.ring(), loc)?;
                CheckKind::IdentityEq { ring, lhs, rhs, modulo: *modulo }
            }
            RawCheck::ContainmentReport { ring, other, value, candidates, modulo, .. } => {
                let ring = self.pres(ring, loc)?;
                match (other, value) {
                    (Some(o), None) if candidates.is_empty() => {
                        let rhs = self.pres(o, loc)?;
                        self.same_ring(&ring, &rhs, loc)?;
                        CheckKind::ContainmentIdeal { lhs: ring, rhs }
                    }
                    (None, Some(v)) if !candidates.is_empty() => {
                        let value = self.eval(v, ring.ring(), loc)?;
                        let candidates = candidates
                            .iter()
                            .map(|(k, e)| Ok((k.clone(), self.eval(e, ring.ring(), loc)?)))
                            .collect::<Result<Vec<_>, LoadError>>()?;
                        CheckKind::ContainmentValue { ring, value, candidates, modulo: *modulo }
                    }
                    _ => {
                        return Err(LoadError::TypeMismatch {
                            location: loc.to_string(),
                            msg: "give either `other`, or `value` with `candidates`".into(),
                        })
                    }
                }
            }
        })
    }

    fn same_ring(&self, a: &ChowPresentation, b: &ChowPresentation, loc: &str) -> Result<(), LoadError> {
        if a.ring().spec() != b.ring().spec() {
            return Err(LoadError::TypeMismatch {
                location: loc.to_string(),
                msg: format!("{} and {} live in different rings", a.name(), b.name()),
            });
        }
        Ok(())
    }
}
