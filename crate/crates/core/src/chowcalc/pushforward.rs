use super::presentation::{ChowPresentation, RingMap};
use crate::error::{Error, Result};
use crate::groebner::{remap, IdealPresentation};
use crate::polyring::{
    substitute, GradedRingSpec, MonomialOrder, Polynomial, Ring, RingRef, Substitution,
};

/// Pushforward along `f: Y -> X` determined by the projection formula.
#[derive(Debug, Clone)]
pub enum PushforwardOperator {
    /// `f^*: A_X -> A_Y` is onto; `f_*(f^* a) = a · f_*(1)`.
    SurjectivePullback(SurjectivePullback),
    /// `A_up` is free of rank two over `A_down` on `1, τ`; `f_*` is fixed by `f_*(1)` and `f_*(τ)`.
    QuadraticTransfer(QuadraticTransfer),
}

#[derive(Debug, Clone)]
pub struct SurjectivePullback {
    source: ChowPresentation,
    pullback: RingMap,
    preimages: Substitution,
    unit_image: Polynomial,
}

impl SurjectivePullback {
    /// `pullback` goes from the ring of `source` (= A_X) to A_Y; `preimages[k]` is a lift of
    /// the k-th variable of A_Y. Checks the lifts and that `ker(pullback) · unit_image` is
    /// zero in A_X.
    pub fn new(
        source: &ChowPresentation,
        pullback: RingMap,
        preimages: Vec<Polynomial>,
        unit_image: Polynomial,
    ) -> Result<Self> {
        if pullback.source().spec() != source.ring().spec() {
            return Err(Error::RingMismatch(format!("pullback starts at {} not {}", pullback.source(), source.ring())));
        }
        let y = pullback.target().ring().clone();
        let preimages = Substitution::new(&y, source.ring(), preimages).map_err(|e| match e {
            Error::RingMismatch(m) | Error::DegreeMismatch(m) => Error::LiftFailure(m),
            e => e,
        })?;
        for (k, lift) in preimages.images().iter().enumerate() {
            let diff = pullback.apply_raw(lift)?.sub_ref(&Polynomial::var(&y, k));
            let nf = pullback.target().reduce(&diff)?;
            if !nf.is_zero() {
                return Err(Error::LiftFailure(format!(
                    "{} does not pull back to `{}` (difference {})",
                    lift,
                    y.var_name(k),
                    nf
                )));
            }
        }
        let unit_image = unit_image.in_ring(source.ring())?;
        for k in pullback.kernel()?.generators() {
            let nf = source.reduce(&k.mul_ref(&unit_image))?;
            if !nf.is_zero() {
                return Err(Error::SelfCheck(format!(
                    "kernel element {} times {} is {} != 0, pushforward not well defined",
                    k, unit_image, nf
                )));
            }
        }
        Ok(Self { source: source.clone(), pullback, preimages, unit_image })
    }

    pub fn source(&self) -> &ChowPresentation {
        &self.source
    }

    pub fn pullback(&self) -> &RingMap {
        &self.pullback
    }

    pub fn unit_image(&self) -> &Polynomial {
        &self.unit_image
    }

    /// A lift `x̃` with `f^* x̃ = x`.
    pub fn lift(&self, x: &Polynomial) -> Result<Polynomial> {
        let lift = substitute(x, &self.preimages)?;
        let diff = self.pullback.apply_raw(&lift)?.sub_ref(&x.in_ring(self.pullback.target().ring())?);
        if !self.pullback.target().is_zero(&diff)? {
            return Err(Error::LiftFailure(format!("{} does not pull back to {}", lift, x)));
        }
        Ok(lift)
    }

    pub fn apply(&self, x: &Polynomial) -> Result<Polynomial> {
        let lift = self.lift(x)?;
        self.source.reduce(&lift.mul_ref(&self.unit_image))
    }
}

#[derive(Debug, Clone)]
pub struct QuadraticTransfer {
    down: ChowPresentation,
    pullback: RingMap,
    tau: usize,
    p: Polynomial,
    q: Polynomial,
    /// Ring of `down` with `τ` appended.
    mixed: RingRef,
    to_mixed: Substitution,
    push_unit: Polynomial,
    push_tau: Polynomial,
}

impl QuadraticTransfer {
    /// `pullback: A_down -> A_up`, `tau` a variable of A_up with `τ² = f^*(p)·τ + f^*(q)`,
    /// and `others` expressing the remaining variables of A_up as text in the ring of `down`
    /// extended by `tau` (for instance `U = xi1 - l1 - T`). Unlisted variables must be
    /// variables of `down` and map to themselves.
    ///
    /// Fails unless `k·push_unit` and `k·push_tau` vanish in A_down for every generator `k`
    /// of `ker(f^*)`, since `a + bτ` is only determined modulo that kernel.
    pub fn new(
        down: &ChowPresentation,
        pullback: RingMap,
        tau: &str,
        (p, q): (Polynomial, Polynomial),
        others: &[(&str, &str)],
        push_unit: Polynomial,
        push_tau: Polynomial,
    ) -> Result<Self> {
        if pullback.source().spec() != down.ring().spec() {
            return Err(Error::RingMismatch(format!("pullback starts at {} not {}", pullback.source(), down.ring())));
        }
        let up = pullback.target().ring().clone();
        let tau_idx = up
            .index_of(tau)
            .ok_or_else(|| Error::UnknownVariable { name: tau.to_string(), pos: 0 })?;
        let dvars = down.ring().spec().vars();
        let spec = GradedRingSpec::new(
            down.ring().domain(),
            std::iter::once((tau.to_string(), up.weights()[tau_idx]))
                .chain(dvars.iter().map(|v| (v.name.clone(), v.weight))),
        )
        .map_err(|_| Error::InvalidRing(format!("`{tau}` clashes with a variable of {}", down.ring())))?;
        let mixed = Ring::with_order(spec, MonomialOrder::elimination(1));
        let mut images = Vec::with_capacity(up.nvars());
        for k in 0..up.nvars() {
            let name = up.var_name(k);
            if k == tau_idx {
                images.push(Polynomial::var(&mixed, 0));
                continue;
            }
            match others.iter().find(|(n, _)| *n == name) {
                Some((_, text)) => images.push(crate::polyring::parse_poly(text, &mixed)?),
                None => images.push(Polynomial::var_named(&mixed, name).ok_or_else(|| {
                    Error::NotReducible(format!("no expression for `{name}` in terms of `{tau}` and {}", down.ring()))
                })?),
            }
        }
        let to_mixed = Substitution::new(&up, &mixed, images)?;
        let p = p.in_ring(down.ring())?;
        let q = q.in_ring(down.ring())?;
        let push_unit = push_unit.in_ring(down.ring())?;
        let push_tau = push_tau.in_ring(down.ring())?;
        let op = Self { down: down.clone(), pullback, tau: tau_idx, p, q, mixed, to_mixed, push_unit, push_tau };

        let tt = Polynomial::var(&up, tau_idx);
        let rel = tt.mul_ref(&tt).sub_ref(
            &op.pullback.apply_raw(&op.p)?.mul_ref(&tt).add_ref(&op.pullback.apply_raw(&op.q)?),
        );
        if !op.pullback.target().is_zero(&rel)? {
            return Err(Error::NotReducible(format!("τ² − f^*(p)τ − f^*(q) = {} is not zero upstairs", rel)));
        }
        for k in op.pullback.kernel()?.generators() {
            for (label, v) in [("push(1)", &op.push_unit), ("push(τ)", &op.push_tau)] {
                let nf = op.down.reduce(&k.mul_ref(v))?;
                if !nf.is_zero() {
                    return Err(Error::SelfCheck(format!(
                        "kernel element {} times {} = {} is {} != 0, pushforward not well defined",
                        k, label, v, nf
                    )));
                }
            }
        }
        Ok(op)
    }

    pub fn down(&self) -> &ChowPresentation {
        &self.down
    }

    pub fn pullback(&self) -> &RingMap {
        &self.pullback
    }

    pub fn push_unit(&self) -> &Polynomial {
        &self.push_unit
    }

    pub fn push_tau(&self) -> &Polynomial {
        &self.push_tau
    }

    /// `x = f^*(a) + f^*(b)·τ`.
    pub fn decompose(&self, x: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let up = self.pullback.target().ring();
        let m = &self.mixed;
        let nd = self.down.ring().nvars();
        let from_down: Vec<Option<usize>> = (0..nd).map(|k| Some(k + 1)).collect();
        let tt = Polynomial::var(m, 0);
        let rel = tt.mul_ref(&tt).sub_ref(
            &remap(&self.p, m, &from_down)?.mul_ref(&tt).add_ref(&remap(&self.q, m, &from_down)?),
        );
        let gb = crate::groebner::groebner_basis(&IdealPresentation::new(m, [rel])?, m.order())?;
        let nf = gb.normal_form(&substitute(x, &self.to_mixed)?)?;

        let mut back = vec![None; nd + 1];
        for k in 0..nd {
            back[k + 1] = Some(k);
        }
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for t in nf.terms() {
            let mut t = t.clone();
            let e = t.monomial.0[0];
            t.monomial.0[0] = 0;
            match e {
                0 => a.push(t),
                1 => b.push(t),
                _ => return Err(Error::NotReducible(format!("{} still has τ^{}", nf, e))),
            }
        }
        let a = remap(&Polynomial::from_terms(m, a), self.down.ring(), &back)?;
        let b = remap(&Polynomial::from_terms(m, b), self.down.ring(), &back)?;

        let tau = Polynomial::var(up, self.tau);
        let rebuilt = self.pullback.apply_raw(&a)?.add_ref(&self.pullback.apply_raw(&b)?.mul_ref(&tau));
        let diff = rebuilt.sub_ref(&x.in_ring(up)?);
        if !self.pullback.target().is_zero(&diff)? {
            return Err(Error::NotReducible(format!("{} is not of the form f^*(a) + f^*(b)τ", x)));
        }
        Ok((a, b))
    }

    pub fn apply(&self, x: &Polynomial) -> Result<Polynomial> {
        let (a, b) = self.decompose(x)?;
        self.down.reduce(&a.mul_ref(&self.push_unit).add_ref(&b.mul_ref(&self.push_tau)))
    }
}

impl PushforwardOperator {
    /// Ring the operator accepts input from.
    pub fn upstream(&self) -> &ChowPresentation {
        match self {
            PushforwardOperator::SurjectivePullback(s) => s.pullback.target(),
            PushforwardOperator::QuadraticTransfer(t) => t.pullback.target(),
        }
    }

    /// Ring the result lives in.
    pub fn downstream(&self) -> &ChowPresentation {
        match self {
            PushforwardOperator::SurjectivePullback(s) => &s.source,
            PushforwardOperator::QuadraticTransfer(t) => &t.down,
        }
    }

    pub fn pullback(&self) -> &RingMap {
        match self {
            PushforwardOperator::SurjectivePullback(s) => &s.pullback,
            PushforwardOperator::QuadraticTransfer(t) => &t.pullback,
        }
    }
}

/// Applies the pushforward; the result is reduced in the downstream presentation.
pub fn pushforward_apply(op: &PushforwardOperator, x: &Polynomial) -> Result<Polynomial> {
    match op {
        PushforwardOperator::SurjectivePullback(s) => s.apply(x),
        PushforwardOperator::QuadraticTransfer(t) => t.apply(x),
    }
}
