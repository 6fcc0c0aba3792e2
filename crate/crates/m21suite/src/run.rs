use std::fmt::Write as _;
use std::time::Instant;

use m21_core::chowcalc::{
    class_consistency, nonzerodivisor, patching_relations, pushforward_apply, validate_ringmap, ChowPresentation,
    PatchingProblem,
};
use m21_core::groebner::ideal_quotient_element;
use m21_core::polyring::{ArithOp, Polynomial};

use crate::glob::glob_match;
use crate::report::{CheckResult, Report, Status};
use crate::scenario::{Check, CheckKind, GradedExpectation, Scenario};

type Outcome = (Status, Option<String>);

fn pass() -> Outcome {
    (Status::Pass, None)
}

fn fail(w: impl Into<String>) -> Outcome {
    (Status::Fail, Some(w.into()))
}

/// Runs the checks whose names match `filter` (all if `None`), in declaration order.
pub fn run_checks(s: &Scenario, filter: Option<&str>) -> Report {
    let results = s
        .checks
        .iter()
        .filter(|c| filter.is_none_or(|g| glob_match(g, &c.name)))
        .map(run_check)
        .collect();
    Report::new(&s.id, results)
}

pub fn run_check(c: &Check) -> CheckResult {
    let start = Instant::now();
    let (status, witness) = match outcome(&c.kind) {
        Ok(o) => o,
        Err(e) => fail(format!("error: {e}")),
    };
    CheckResult {
        name: c.name.clone(),
        kind: c.kind.label().to_string(),
        status,
        witness,
        ms: start.elapsed().as_millis() as u64,
    }
}

/// First generator of `a` that does not reduce to zero modulo `b`, with its normal form.
fn first_outside(a: &ChowPresentation, b: &ChowPresentation) -> m21_core::Result<Option<(Polynomial, Polynomial)>> {
    for g in a.relations().generators() {
        let nf = b.reduce(g)?;
        if !nf.is_zero() {
            return Ok(Some((g.clone(), nf)));
        }
    }
    Ok(None)
}

fn ideal_equal_outcome(lhs: &ChowPresentation, rhs: &ChowPresentation) -> m21_core::Result<Outcome> {
    if let Some((g, nf)) = first_outside(lhs, rhs)? {
        return Ok(fail(format!("{g} is not in {}: normal form {nf}", rhs.name())));
    }
    if let Some((g, nf)) = first_outside(rhs, lhs)? {
        return Ok(fail(format!("{g} is not in {}: normal form {nf}", lhs.name())));
    }
    Ok(pass())
}

fn sub(a: &Polynomial, b: &Polynomial) -> m21_core::Result<Polynomial> {
    a.arith(b, ArithOp::Sub)
}

fn outcome(kind: &CheckKind) -> m21_core::Result<Outcome> {
    Ok(match kind {
        CheckKind::IdealEqual { lhs, rhs } => ideal_equal_outcome(lhs, rhs)?,
        CheckKind::Member { ring, elements, expect } => {
            let mut bad = Vec::new();
            for (label, p) in elements {
                let nf = ring.reduce(p)?;
                match (expect, nf.is_zero()) {
                    (true, false) => bad.push(format!("{label} reduces to {nf}")),
                    (false, true) => bad.push(format!("{label} lies in the ideal")),
                    _ => {}
                }
            }
            if bad.is_empty() {
                pass()
            } else {
                fail(bad.join("\n"))
            }
        }
        CheckKind::PatchingDerive { open, closed, top_chern, expected } => {
            let problem = PatchingProblem::new(open.clone(), closed.clone(), top_chern.clone())?;
            let rel = patching_relations(&problem)?;
            let derived = ChowPresentation::new("derived", rel)?;
            ideal_equal_outcome(&derived, expected)?
        }
        CheckKind::MapValid { map, source_relations, expect } => {
            let v = validate_ringmap(map, source_relations)?;
            match (v.valid, expect) {
                (true, true) | (false, false) => pass(),
                (true, false) => fail(format!("every relation maps into {}", map.target().name())),
                (false, true) => {
                    let (r, nf) = v.witness.expect("invalid map has a witness");
                    fail(format!("relation {r} maps to {nf}"))
                }
            }
        }
        CheckKind::Nzd { ring, element, expect } => {
            let is_nzd = nonzerodivisor(ring, element)?;
            if is_nzd == *expect {
                pass()
            } else if is_nzd {
                fail(format!("{element} is a non-zero-divisor in {}", ring.name()))
            } else {
                let q = ideal_quotient_element(ring.relations(), element)?;
                let mut w = format!("{element} is a zero divisor in {}", ring.name());
                for g in q.generators() {
                    if !ring.is_zero(g)? {
                        let _ = write!(w, ": ({element})*({g}) vanishes but {g} does not");
                        break;
                    }
                }
                fail(w)
            }
        }
        CheckKind::PushforwardEq { op, input, expected } => match &op.op {
            Err(e) => fail(format!("operator `{}` is inconsistent: {e}", op.name)),
            Ok(o) => {
                let out = pushforward_apply(o, input)?;
                let diff = op.downstream.reduce(&sub(&out, expected)?)?;
                if diff.is_zero() {
                    pass()
                } else {
                    fail(format!("push({input}) = {out}, which differs from {expected} by {diff}"))
                }
            }
        },
        CheckKind::ClassConsistency { class, restrictions } => {
            let rep = class_consistency(class, restrictions)?;
            let bad: Vec<String> = rep
                .checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("{}: image minus expected reduces to {}", c.map, c.difference))
                .collect();
            if bad.is_empty() {
                pass()
            } else {
                fail(bad.join("\n"))
            }
        }
        CheckKind::GradedComponent { ring, degrees, expected } => {
            let mut bad = Vec::new();
            for (k, &d) in degrees.iter().enumerate() {
                let got = ring.graded_component(d)?;
                let want = match expected {
                    GradedExpectation::Values(v) => v[k].clone(),
                    GradedExpectation::SameAs(other) => other.graded_component(d)?,
                };
                if got != want {
                    bad.push(format!("degree {d}: {got} but expected {want}"));
                }
            }
            if bad.is_empty() {
                pass()
            } else {
                fail(bad.join("\n"))
            }
        }
        CheckKind::IdentityEq { ring, lhs, rhs, modulo } => {
            let exact = sub(lhs, rhs)?;
            if exact.is_zero() {
                pass()
            } else if !modulo {
                fail(format!("lhs - rhs = {exact}"))
            } else {
                let nf = ring.reduce(&exact)?;
                if nf.is_zero() {
                    (Status::Pass, Some(format!("holds modulo relations only; exact difference {exact}")))
                } else {
                    fail(format!("lhs - rhs = {exact}, normal form {nf}"))
                }
            }
        }
        CheckKind::ContainmentIdeal { lhs, rhs } => {
            let mut w = String::new();
            for (a, b) in [(lhs, rhs), (rhs, lhs)] {
                let mut outside = Vec::new();
                for g in a.relations().generators() {
                    let nf = b.reduce(g)?;
                    if !nf.is_zero() {
                        outside.push(format!("  {g} -> {nf}"));
                    }
                }
                if outside.is_empty() {
                    let _ = writeln!(w, "{} is contained in {}", a.name(), b.name());
                } else {
                    let _ = writeln!(w, "{} is not contained in {}:", a.name(), b.name());
                    for line in outside {
                        let _ = writeln!(w, "{line}");
                    }
                }
            }
            (Status::Report, Some(w.trim_end().to_string()))
        }
        CheckKind::ContainmentValue { ring, value, candidates, modulo } => {
            let mut w = format!("value {value}");
            for (label, c) in candidates {
                let mut diff = sub(value, c)?;
                if *modulo {
                    diff = ring.reduce(&diff)?;
                }
                if diff.is_zero() {
                    let _ = write!(w, "\nmatches {label}");
                } else {
                    let _ = write!(w, "\ndiffers from {label} by {diff}");
                }
            }
            (Status::Report, Some(w))
        }
    })
}
