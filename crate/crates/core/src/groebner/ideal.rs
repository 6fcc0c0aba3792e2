use std::fmt;

use crate::error::{Error, Result};
use crate::polyring::{parse_poly, Polynomial, RingRef};

/// A finite generating set of an ideal. Zero generators are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealPresentation {
    ring: RingRef,
    generators: Vec<Polynomial>,
    homogeneous: bool,
}

impl IdealPresentation {
    pub fn new(ring: &RingRef, generators: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        let mut gens = Vec::new();
        for g in generators {
            if g.ring().spec() != ring.spec() {
                return Err(Error::RingMismatch(format!("generator {} is not over {}", g, ring)));
            }
            if !g.is_zero() {
                gens.push(g.in_ring(ring)?);
            }
        }
        let homogeneous = gens.iter().all(Polynomial::is_homogeneous);
        Ok(Self { ring: ring.clone(), generators: gens, homogeneous })
    }

    pub fn zero(ring: &RingRef) -> Self {
        Self { ring: ring.clone(), generators: Vec::new(), homogeneous: true }
    }

    pub fn parse(ring: &RingRef, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| parse_poly(s, ring)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// `self + (extra)`.
    pub fn extended(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Self> {
        Self::new(&self.ring, self.generators.iter().cloned().chain(extra))
    }
}

impl fmt::Display for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}
