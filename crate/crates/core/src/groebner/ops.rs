use super::buchberger::{groebner_basis, GroebnerBasis};
use super::ideal::IdealPresentation;
use crate::error::{Error, Result};
use crate::polyring::{
    substitute, GradedRingSpec, Monomial, MonomialOrder, Polynomial, Ring, RingRef, Substitution, Term,
};

/// Moves `p` into `target`, sending source variable `i` to target variable `map[i]`.
/// Fails if a variable mapped to `None` occurs in `p`.
pub(crate) fn remap(p: &Polynomial, target: &RingRef, map: &[Option<usize>]) -> Result<Polynomial> {
    let mut terms = Vec::with_capacity(p.nterms());
    for t in p.terms() {
        let mut exps = vec![0u32; target.nvars()];
        for (i, &e) in t.monomial.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            match map[i] {
                Some(j) => exps[j] = e,
                None => {
                    return Err(Error::RingMismatch(format!(
                        "`{}` has no counterpart in {}",
                        p.ring().var_name(i),
                        target
                    )))
                }
            }
        }
        terms.push(Term { coeff: t.coeff.clone(), monomial: Monomial(exps) });
    }
    Ok(Polynomial::from_terms(target, terms))
}

fn check_same(i: &IdealPresentation, f: &Polynomial) -> Result<()> {
    if i.ring().spec() != f.ring().spec() {
        return Err(Error::RingMismatch(format!("{} is not over {}", f, i.ring())));
    }
    Ok(())
}

fn default_basis(i: &IdealPresentation) -> Result<GroebnerBasis> {
    groebner_basis(i, &MonomialOrder::default())
}

pub fn ideal_contains(i: &IdealPresentation, f: &Polynomial) -> Result<bool> {
    check_same(i, f)?;
    default_basis(i)?.contains(f)
}

/// True iff every generator of `j` lies in `i` and vice versa.
pub fn ideal_equal(i: &IdealPresentation, j: &IdealPresentation) -> Result<bool> {
    if i.ring().spec() != j.ring().spec() {
        return Err(Error::RingMismatch(format!("{} vs {}", i.ring(), j.ring())));
    }
    let (gi, gj) = (default_basis(i)?, default_basis(j)?);
    for g in j.generators() {
        if !gi.contains(g)? {
            return Ok(false);
        }
    }
    for g in i.generators() {
        if !gj.contains(g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I ∩ Z[keep]` (or over Q), returned over the subring on `keep` in the original variable order.
pub fn eliminate(i: &IdealPresentation, keep: &[&str]) -> Result<IdealPresentation> {
    let ring = i.ring();
    for name in keep {
        if ring.index_of(name).is_none() {
            return Err(Error::UnknownVariable { name: name.to_string(), pos: 0 });
        }
    }
    let vars = ring.spec().vars();
    let kept: Vec<usize> = (0..vars.len()).filter(|&k| keep.contains(&vars[k].name.as_str())).collect();
    let dropped: Vec<usize> = (0..vars.len()).filter(|k| !kept.contains(k)).collect();

    let order: Vec<usize> = dropped.iter().chain(&kept).copied().collect();
    let spec = GradedRingSpec::new(
        ring.domain(),
        order.iter().map(|&k| (vars[k].name.clone(), vars[k].weight)),
    )?;
    let elim = Ring::with_order(spec, MonomialOrder::elimination(dropped.len()));
    let mut to_elim = vec![None; vars.len()];
    for (pos, &k) in order.iter().enumerate() {
        to_elim[k] = Some(pos);
    }
    let gens = i.generators().iter().map(|g| remap(g, &elim, &to_elim)).collect::<Result<Vec<_>>>()?;
    let gb = groebner_basis(&IdealPresentation::new(&elim, gens)?, elim.order())?;

    let sub = Ring::new(GradedRingSpec::new(
        ring.domain(),
        kept.iter().map(|&k| (vars[k].name.clone(), vars[k].weight)),
    )?);
    let mut back = vec![None; order.len()];
    for pos in dropped.len()..order.len() {
        back[pos] = Some(pos - dropped.len());
    }
    let nd = dropped.len();
    let out = gb
        .basis()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= nd))
        .map(|g| remap(g, &sub, &back))
        .collect::<Result<Vec<_>>>()?;
    IdealPresentation::new(&sub, out)
}

fn fresh_name(ring: &RingRef, base: &str) -> String {
    let mut name = base.to_string();
    let mut k = 0;
    while ring.index_of(&name).is_some() {
        k += 1;
        name = format!("{base}{k}");
    }
    name
}

/// `I ∩ J` by eliminating `t` from `t·I + (1−t)·J`.
pub fn intersect(i: &IdealPresentation, j: &IdealPresentation) -> Result<IdealPresentation> {
    let ring = i.ring();
    if ring.spec() != j.ring().spec() {
        return Err(Error::RingMismatch(format!("{} vs {}", ring, j.ring())));
    }
    if i.is_zero_ideal() || j.is_zero_ideal() {
        return Ok(IdealPresentation::zero(ring));
    }
    let t = fresh_name(ring, "t");
    let vars = ring.spec().vars();
    let spec = GradedRingSpec::new(
        ring.domain(),
        std::iter::once((t.clone(), 1)).chain(vars.iter().map(|v| (v.name.clone(), v.weight))),
    )?;
    let big = Ring::new(spec);
    let shift: Vec<Option<usize>> = (0..vars.len()).map(|k| Some(k + 1)).collect();
    let tv = Polynomial::var(&big, 0);
    let one_minus_t = Polynomial::one(&big).sub_ref(&tv);
    let mut gens = Vec::new();
    for g in i.generators() {
        gens.push(remap(g, &big, &shift)?.mul_ref(&tv));
    }
    for g in j.generators() {
        gens.push(remap(g, &big, &shift)?.mul_ref(&one_minus_t));
    }
    let keep: Vec<&str> = vars.iter().map(|v| v.name.as_str()).collect();
    let out = eliminate(&IdealPresentation::new(&big, gens)?, &keep)?;
    let gens = out.generators().iter().map(|g| g.in_ring(ring)).collect::<Result<Vec<_>>>()?;
    IdealPresentation::new(ring, gens)
}

/// `(I : c)`, computed as `(I ∩ (c)) / c`.
pub fn ideal_quotient_element(i: &IdealPresentation, c: &Polynomial) -> Result<IdealPresentation> {
    check_same(i, c)?;
    if c.is_zero() {
        return Err(Error::DivisionFailure("quotient by the zero element".into()));
    }
    let c = c.in_ring(i.ring())?;
    let cap = intersect(i, &IdealPresentation::new(i.ring(), [c.clone()])?)?;
    let gens = cap.generators().iter().map(|g| g.exact_div(&c)).collect::<Result<Vec<_>>>()?;
    IdealPresentation::new(i.ring(), gens)
}

/// Kernel of `source -> target/relations` given by `map`, by eliminating the target variables
/// from `relations + (x_k − image_k)`. Every returned generator is checked to map into
/// `relations`.
pub fn kernel_of_ringmap(map: &Substitution, relations: &IdealPresentation) -> Result<IdealPresentation> {
    let (src, tgt) = (map.source(), map.target());
    if relations.ring().spec() != tgt.spec() {
        return Err(Error::RingMismatch(format!("relations over {} but map targets {}", relations.ring(), tgt)));
    }
    if src.domain() != tgt.domain() {
        return Err(Error::RingMismatch(format!("{} and {} have different coefficient domains", src, tgt)));
    }
    let (nt, ns) = (tgt.nvars(), src.nvars());
    let spec = GradedRingSpec::new(
        tgt.domain(),
        tgt.spec()
            .vars()
            .iter()
            .map(|v| (format!("y_{}", v.name), v.weight))
            .chain(src.spec().vars().iter().map(|v| (format!("x_{}", v.name), v.weight))),
    )?;
    let big = Ring::with_order(spec, MonomialOrder::elimination(nt));
    let from_tgt: Vec<Option<usize>> = (0..nt).map(Some).collect();
    let mut gens = relations.generators().iter().map(|g| remap(g, &big, &from_tgt)).collect::<Result<Vec<_>>>()?;
    for (k, img) in map.images().iter().enumerate() {
        gens.push(Polynomial::var(&big, nt + k).sub_ref(&remap(img, &big, &from_tgt)?));
    }
    let gb = groebner_basis(&IdealPresentation::new(&big, gens)?, big.order())?;
    let mut back = vec![None; nt + ns];
    for k in 0..ns {
        back[nt + k] = Some(k);
    }
    let out = gb
        .basis()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= nt))
        .map(|g| remap(g, src, &back))
        .collect::<Result<Vec<_>>>()?;
    let target_gb = groebner_basis(relations, &MonomialOrder::default())?;
    for g in &out {
        let nf = target_gb.normal_form(&substitute(g, map)?)?;
        if !nf.is_zero() {
            return Err(Error::SelfCheck(format!("kernel element {} maps to {} != 0", g, nf)));
        }
    }
    IdealPresentation::new(src, out)
}
