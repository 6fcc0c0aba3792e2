use super::presentation::{nonzerodivisor, RingMap};
use crate::error::{Error, Result};
use crate::groebner::{intersect, IdealPresentation};
use crate::polyring::{Polynomial, RingRef};

/// Candidate generators together with their restrictions to an open substack and its
/// closed complement.
#[derive(Debug, Clone)]
pub struct PatchingProblem {
    pub generators: RingRef,
    pub open: RingMap,
    pub closed: RingMap,
    /// Top Chern class of the normal bundle of the closed part, in the closed ring.
    pub top_chern: Polynomial,
}

impl PatchingProblem {
    pub fn new(open: RingMap, closed: RingMap, top_chern: Polynomial) -> Result<Self> {
        if open.source().spec() != closed.source().spec() {
            return Err(Error::RingMismatch(format!("{} vs {}", open.source(), closed.source())));
        }
        if top_chern.ring().spec() != closed.target().ring().spec() {
            return Err(Error::RingMismatch(format!(
                "top Chern class {} is not over {}",
                top_chern,
                closed.target().ring()
            )));
        }
        if !top_chern.is_homogeneous() || top_chern.is_zero() {
            return Err(Error::DegreeMismatch(format!("top Chern class {} must be homogeneous and nonzero", top_chern)));
        }
        Ok(Self { generators: open.source().clone(), open, closed, top_chern })
    }
}

/// Relations among the candidate generators: `ker(open) ∩ ker(closed)`. Refuses to run if
/// the top Chern class is a zero divisor in the closed ring.
pub fn patching_relations(p: &PatchingProblem) -> Result<IdealPresentation> {
    if !nonzerodivisor(p.closed.target(), &p.top_chern)? {
        return Err(Error::PreconditionNzd(format!(
            "{} is a zero divisor in {}",
            p.top_chern,
            p.closed.target().name()
        )));
    }
    let out = intersect(&p.open.kernel()?, &p.closed.kernel()?)?;
    for g in out.generators() {
        for m in [&p.open, &p.closed] {
            let img = m.apply(g)?;
            if !img.is_zero() {
                return Err(Error::SelfCheck(format!("{} restricts to {} under {}", g, img, m.name())));
            }
        }
    }
    Ok(out)
}
