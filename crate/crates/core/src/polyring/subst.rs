use std::collections::HashMap;

use num_traits::Zero;

use super::poly::{Coeff, Polynomial};
use super::ring::{Domain, RingRef};
use crate::error::{Error, Result};

/// Variable-level homomorphism `source -> target`: each source variable is sent to a
/// polynomial of the same weighted degree (or to zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    source: RingRef,
    target: RingRef,
    images: Vec<Polynomial>,
}

impl Substitution {
    pub fn new(source: &RingRef, target: &RingRef, images: Vec<Polynomial>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::RingMismatch(format!(
                "{} images given for {} source variables",
                images.len(),
                source.nvars()
            )));
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(i, img)| {
                if img.ring().spec() != target.spec() {
                    return Err(Error::RingMismatch(format!(
                        "image of `{}` lives in {} not {}",
                        source.var_name(i),
                        img.ring(),
                        target
                    )));
                }
                let w = source.weights()[i] as u64;
                match img.homogeneous_degree() {
                    _ if img.is_zero() => {}
                    Some(d) if d == w => {}
                    _ => {
                        return Err(Error::DegreeMismatch(format!(
                            "image {} of `{}` is not homogeneous of degree {}",
                            img,
                            source.var_name(i),
                            w
                        )))
                    }
                }
                img.in_ring(target)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { source: source.clone(), target: target.clone(), images })
    }

    /// Builds from `(variable name, image text)` pairs; unlisted variables map to the
    /// target variable of the same name.
    pub fn from_named(source: &RingRef, target: &RingRef, pairs: &[(&str, Polynomial)]) -> Result<Self> {
        let mut images = Vec::with_capacity(source.nvars());
        for i in 0..source.nvars() {
            let name = source.var_name(i);
            let img = match pairs.iter().find(|(n, _)| *n == name) {
                Some((_, p)) => p.clone(),
                None => Polynomial::var_named(target, name).ok_or_else(|| {
                    Error::RingMismatch(format!("no image for `{name}` and no same-named target variable"))
                })?,
            };
            images.push(img);
        }
        for (n, _) in pairs {
            if source.index_of(n).is_none() {
                return Err(Error::UnknownVariable { name: n.to_string(), pos: 0 });
            }
        }
        Self::new(source, target, images)
    }

    pub fn identity(ring: &RingRef) -> Self {
        let images = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&Polynomial> {
        self.source.index_of(name).map(|i| &self.images[i])
    }

    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        substitute(p, self)
    }
}

/// Applies a variable-level homomorphism.
pub fn substitute(p: &Polynomial, map: &Substitution) -> Result<Polynomial> {
    if p.ring().spec() != map.source.spec() {
        return Err(Error::RingMismatch(format!("{} is not over {}", p, map.source)));
    }
    let target = &map.target;
    let mut powers: HashMap<(usize, u32), Polynomial> = HashMap::new();
    let mut acc = Polynomial::zero(target);
    for t in p.terms() {
        let c: &Coeff = &t.coeff;
        if target.domain() == Domain::Integers && !c.is_integer() {
            return Err(Error::RationalInIntegerRing(c.to_string()));
        }
        if c.is_zero() {
            continue;
        }
        let mut prod = Polynomial::constant(target, c.clone());
        for (i, &e) in t.monomial.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = powers.entry((i, e)).or_insert_with(|| map.images[i].pow(e));
            prod = prod.mul_ref(pw);
            if prod.is_zero() {
                break;
            }
        }
        acc = acc.add_ref(&prod);
    }
    Ok(acc)
}
