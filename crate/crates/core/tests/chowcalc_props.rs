mod common;

use common::oracle::random_homogeneous;
use m21_core::chowcalc::{
    class_consistency, excise, nonzerodivisor, patching_relations, projective_bundle_presentation,
    pushforward_apply, weight_class, ChowPresentation, PatchingProblem, PushforwardOperator, QuadraticTransfer,
    RingMap, SurjectivePullback,
};
use m21_core::groebner::{ideal_equal, IdealPresentation};
use m21_core::polyring::{parse_poly, Polynomial, Ring, RingRef};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pres(name: &str, ring: &str, rel: &[&str]) -> ChowPresentation {
    ChowPresentation::parse(name, ring, rel).unwrap()
}

fn p(ring: &RingRef, s: &str) -> Polynomial {
    parse_poly(s, ring).unwrap()
}

/// Random homogeneous element with degree drawn from `degrees`.
fn random_in(rng: &mut impl Rng, a: &ChowPresentation, degrees: std::ops::RangeInclusive<u64>) -> Polynomial {
    let w = a.ring().weights().to_vec();
    let d = rng.gen_range(degrees);
    random_homogeneous(rng, a.ring(), &w, d, 4)
}

/// Patching of the universal section over the generators `(a, b)` with `l1 = l.0*a + l.1*b`
/// and `mu1 = mu.0*a + mu.1*b`: open restriction `mu1 = 0`, closed `mu1 = -l1`.
fn patched(l: (i64, i64), mu: (i64, i64)) -> IdealPresentation {
    let gens = Ring::parse("Z[a:1,b:1]").unwrap();
    let open = pres("open", "Z[l1:1]", &[]);
    let closed = pres("closed", "Z[l1:1]", &[]);
    let det = l.0 * mu.1 - l.1 * mu.0;
    let restrict = |target: &ChowPresentation, mu_img: &str| {
        let r = target.ring();
        let a_img = format!("{}*l1 + {}*({mu_img})", mu.1 * det, -l.1 * det);
        let b_img = format!("{}*l1 + {}*({mu_img})", -mu.0 * det, l.0 * det);
        RingMap::new("m", &gens, target, vec![p(r, &a_img), p(r, &b_img)]).unwrap()
    };
    let problem =
        PatchingProblem::new(restrict(&open, "0"), restrict(&closed, "-l1"), p(closed.ring(), "-l1")).unwrap();
    patching_relations(&problem).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn patching_follows_a_change_of_generators(
        (x, y, z, w) in (-2i64..=2, -2i64..=2, -2i64..=2, -2i64..=2).prop_filter("unimodular", |(x, y, z, w)| (x * w - y * z).abs() == 1)
    ) {
        let got = patched((x, y), (z, w));
        let gens = got.ring().clone();
        let (l1, mu1) = (format!("({x}*a + {y}*b)"), format!("({z}*a + {w}*b)"));
        let want = IdealPresentation::new(&gens, [p(&gens, &format!("{mu1}*({l1} + {mu1})"))]).unwrap();
        prop_assert!(ideal_equal(&got, &want).unwrap(), "got {}", got);
    }
}

#[test]
fn patching_refuses_a_zero_divisor() {
    let gens = Ring::parse("Z[a:1]").unwrap();
    let open = pres("open", "Z[a:1]", &[]);
    let closed = pres("closed", "Z[a:1]", &["2*a"]);
    let m = |t: &ChowPresentation| RingMap::from_named("m", &gens, t, &[]).unwrap();
    let problem = PatchingProblem::new(m(&open), m(&closed), p(closed.ring(), "a")).unwrap();
    assert!(patching_relations(&problem).is_err());
}

/// A_X with a closed Y whose pullback is onto: Y has 2-torsion class x with x(l1 - x) = 0.
fn surjective() -> SurjectivePullback {
    let x = pres("X", "Z[l1:1,l2:2,u:1,th:1]", &["2*u*th", "u*(l1 - u)*th", "th*(th - u + l1)"]);
    let y = pres("Y", "Z[l1:1,l2:2,x:1]", &["2*x", "x*(l1 - x)"]);
    let f = RingMap::from_named("i", x.ring(), &y, &[("u", "x"), ("th", "x - l1")]).unwrap();
    let lifts = vec![p(x.ring(), "l1"), p(x.ring(), "l2"), p(x.ring(), "u")];
    SurjectivePullback::new(&x, f, lifts, p(x.ring(), "th")).unwrap()
}

/// A P^1-bundle: A_up = A_down[T]/(T^2 - aT - b), push(1) = 0, push(T) = 1.
fn transfer() -> QuadraticTransfer {
    let down = pres("B", "Z[a:1,b:2]", &[]);
    let up = pres("P", "Z[a:1,b:2,T:1]", &["T^2 - a*T - b"]);
    let f = RingMap::from_named("f", down.ring(), &up, &[]).unwrap();
    let r = down.ring();
    QuadraticTransfer::new(&down, f, "T", (p(r, "a"), p(r, "b")), &[], Polynomial::zero(r), Polynomial::one(r)).unwrap()
}

fn projection_formula(op: &PushforwardOperator, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (down, up) = (op.downstream().clone(), op.upstream().clone());
    for _ in 0..30 {
        let a = random_in(&mut rng, &down, 0..=2);
        let x = random_in(&mut rng, &up, 0..=3);
        let fa = op.pullback().apply(&a).unwrap();
        let lhs = pushforward_apply(op, &(fa * x.clone())).unwrap();
        let rhs = down.reduce(&(a.clone() * pushforward_apply(op, &x).unwrap())).unwrap();
        assert!(down.is_zero(&(lhs.clone() - rhs.clone())).unwrap(), "push(f*({a})·{x}) = {lhs} but {rhs}");
        let d = x.homogeneous_degree().unwrap_or(0);
        let y = random_in(&mut rng, &up, d..=d);
        let sum = pushforward_apply(op, &(x.clone() + y.clone())).unwrap();
        let parts = pushforward_apply(op, &x).unwrap() + pushforward_apply(op, &y).unwrap();
        assert!(down.is_zero(&(sum - parts)).unwrap());
    }
}

#[test]
fn projection_formula_surjective_pullback() {
    projection_formula(&PushforwardOperator::SurjectivePullback(surjective()), 41);
}

#[test]
fn projection_formula_quadratic_transfer() {
    projection_formula(&PushforwardOperator::QuadraticTransfer(transfer()), 43);
}

#[test]
fn bundle_pushforward_values() {
    let t = transfer();
    let up = t.pullback().target().ring().clone();
    let down = t.down().ring().clone();
    let push = |s: &str| t.apply(&p(&up, s)).unwrap();
    assert_eq!(push("1"), Polynomial::zero(&down));
    assert_eq!(push("T"), Polynomial::one(&down));
    assert_eq!(push("T^2"), p(&down, "a"));
    assert_eq!(push("T^3"), p(&down, "a^2 + b"));
    assert_eq!(push("a*T^2 - b*T"), p(&down, "a^2 - b"));
}

#[test]
fn surjective_pullback_values() {
    let s = surjective();
    let y = s.pullback().target().ring().clone();
    let x = s.source().ring().clone();
    assert_eq!(s.apply(&Polynomial::one(&y)).unwrap(), p(&x, "th"));
    assert_eq!(s.apply(&p(&y, "l1")).unwrap(), s.source().reduce(&p(&x, "l1*th")).unwrap());
    assert!(s.source().is_zero(&(s.apply(&p(&y, "2*x")).unwrap())).unwrap());
}

#[test]
fn inconsistent_pushforward_is_refused() {
    let x = pres("X", "Z[l1:1,u:1,th:1]", &["u*th"]);
    let y = pres("Y", "Z[l1:1,x:1]", &["2*x"]);
    let f = RingMap::from_named("i", x.ring(), &y, &[("u", "x"), ("th", "x")]).unwrap();
    let lifts = vec![p(x.ring(), "l1"), p(x.ring(), "u")];
    assert!(SurjectivePullback::new(&x, f, lifts, p(x.ring(), "th")).is_err());
}

#[test]
fn excision_is_idempotent() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let a = pres("A", "Z[l1:1,l2:2,t:1]", &["2*t", "t*(l1 - t)"]);
    for _ in 0..15 {
        let classes: Vec<Polynomial> = (0..rng.gen_range(1..=3)).map(|_| random_in(&mut rng, &a, 1..=3)).collect();
        let once = excise(&a, &classes, "once").unwrap();
        let twice = excise(&once, &classes, "twice").unwrap();
        assert!(once.same_ideal(&twice).unwrap());
        let already = excise(&a, &[a.relations().generators()[0].clone() * classes[0].clone()], "same").unwrap();
        assert!(already.same_ideal(&a).unwrap());
        for c in &classes {
            assert!(once.is_zero(c).unwrap());
        }
    }
}

#[test]
fn weight_class_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(53);
    let r = Ring::parse("Z[l1:1,psi1:1]").unwrap();
    let a = ChowPresentation::free("F", &r);
    assert_eq!(weight_class(&r, &[]).unwrap(), Polynomial::one(&r));
    for _ in 0..30 {
        let xs: Vec<Polynomial> = (0..rng.gen_range(0..4)).map(|_| random_in(&mut rng, &a, 1..=1)).collect();
        let ys: Vec<Polynomial> = (0..rng.gen_range(0..4)).map(|_| random_in(&mut rng, &a, 1..=1)).collect();
        let all: Vec<Polynomial> = xs.iter().chain(&ys).cloned().collect();
        assert_eq!(weight_class(&r, &all).unwrap(), weight_class(&r, &xs).unwrap() * weight_class(&r, &ys).unwrap());
    }
    assert_eq!(weight_class(&r, &[p(&r, "-4*l1"), p(&r, "-6*l1")]).unwrap(), p(&r, "24*l1^2"));
}

#[test]
fn class_consistency_with_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(59);
    let a = pres("A", "Z[l1:1,x:1]", &["2*x", "x*(l1 - x)"]);
    let id = RingMap::identity(&a);
    for _ in 0..20 {
        let c = random_in(&mut rng, &a, 2..=2);
        let k = random_in(&mut rng, &a, 1..=1) * a.relations().generators()[0].clone();
        let ok = class_consistency(&c, &[(id.clone(), c.clone() + k)]).unwrap();
        assert!(ok.passed());
        let off = c.clone() + p(a.ring(), "l1^2");
        let bad = class_consistency(&c, &[(id.clone(), off)]).unwrap();
        assert!(!bad.passed());
        assert_eq!(bad.checks[0].difference, a.reduce(&p(a.ring(), "-l1^2")).unwrap());
    }
}

#[test]
fn nonzerodivisors() {
    let a = pres("A", "Z[l1:1,x:1]", &["2*x", "x*(l1 - x)"]);
    let r = a.ring().clone();
    assert!(!nonzerodivisor(&a, &p(&r, "x")).unwrap());
    assert!(!nonzerodivisor(&a, &p(&r, "2")).unwrap());
    assert!(!nonzerodivisor(&a, &p(&r, "l1 - x")).unwrap());
    assert!(!nonzerodivisor(&a, &Polynomial::zero(&r)).unwrap());
    let b = pres("B", "Z[x:1,y:1]", &["x*y"]);
    assert!(nonzerodivisor(&b, &p(b.ring(), "x + y")).unwrap());
    assert!(!nonzerodivisor(&b, &p(b.ring(), "x")).unwrap());
    let c = pres("C", "Z[l1:1,l2:2]", &[]);
    assert!(nonzerodivisor(&c, &p(c.ring(), "-l1")).unwrap());
}

#[test]
fn projective_bundle_ranks() {
    let base = pres("B", "Z[a:1,b:2]", &[]);
    let r = base.ring();
    let bundle = projective_bundle_presentation(&base, &[p(r, "a"), p(r, "b")], "h", "P").unwrap();
    let base_rank = |d: u64| base.graded_component(d).unwrap().free_rank;
    for d in 0..6 {
        let want = base_rank(d) + if d >= 1 { base_rank(d - 1) } else { 0 };
        let got = bundle.graded_component(d).unwrap();
        assert_eq!((got.free_rank, got.torsion.len()), (want, 0), "degree {d}");
    }
    assert!(bundle.is_zero(&p(bundle.ring(), "h^2 + a*h + b")).unwrap());
    assert!(projective_bundle_presentation(&base, &[p(r, "b")], "h", "bad").is_err());
    assert!(projective_bundle_presentation(&base, &[p(r, "a")], "a", "bad").is_err());
}
