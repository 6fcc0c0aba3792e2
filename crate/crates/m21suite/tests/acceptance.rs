//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 8 is expected to FAIL: the printed c''_* rho^* T reduces to 96*th2^2 in the final
//! ring, and the degree-4 graded pieces of the final ring and the excision differ. The run
//! exits nonzero if any other criterion fails or if criterion 8 fails in any other way.

#[path = "../../core/tests/common/oracle.rs"]
mod oracle;

use std::path::PathBuf;
use std::time::{Duration, Instant};

use m21_core::chowcalc::{
    class_consistency, excise, nonzerodivisor, patching_relations, pushforward_apply, validate_ringmap, weight_class,
    ChowPresentation, PatchingProblem, RingMap,
};
use m21_core::groebner::{groebner_basis, ideal_equal, IdealPresentation, Strength};
use m21_core::polyring::{MonomialOrder, Polynomial};
use m21suite::{load_scenario, run_checks, Scenario, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Verdict);

fn scenario(name: &str) -> Scenario {
    load_scenario(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)).unwrap()
}

fn ring<'a>(s: &'a Scenario, name: &str) -> &'a ChowPresentation {
    s.ring(name).unwrap_or_else(|| panic!("no ring {name}"))
}

fn map<'a>(s: &'a Scenario, name: &str) -> &'a RingMap {
    &s.map(name).unwrap_or_else(|| panic!("no map {name}")).map
}

fn class(s: &Scenario, name: &str) -> Polynomial {
    s.class(name).unwrap_or_else(|| panic!("no class {name}")).value.clone()
}

fn poly(p: &ChowPresentation, text: &str) -> Polynomial {
    p.parse_poly(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}

fn ideal(p: &ChowPresentation, gens: &[&str]) -> IdealPresentation {
    IdealPresentation::parse(p.ring(), gens).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn patched(s: &Scenario, open: &str, closed: &str, top: &str, want: &[&str]) -> Result<(), String> {
    let (open, closed) = (map(s, open).clone(), map(s, closed).clone());
    let top = poly(closed.target(), top);
    let derived = patching_relations(&PatchingProblem::new(open.clone(), closed, top).unwrap()).map_err(|e| e.to_string())?;
    let want = IdealPresentation::parse(open.source(), want).unwrap();
    ensure(ideal_equal(&derived, &want).unwrap(), || format!("derived {derived}"))
}

fn c1() -> Verdict {
    let s = scenario("m12.scn");
    let start = Instant::now();
    patched(&s, "j*", "s*", "-l1", &["mu1*(l1 + mu1)"])?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("(mu1*(l1 + mu1)) in {} ms", t.as_millis()))
}

fn c2() -> Verdict {
    let s = scenario("m21.scn");
    patched(
        &s,
        "open1",
        "closed1",
        "-l1",
        &["l2 - psi1*(l1 - psi1)", "(l1 + th1)*(24*l1^2 - 48*l2)", "20*(l1 + th1)*l1*l2", "th1*(l1 + th1)"],
    )?;
    Ok("four generators".into())
}

fn c3() -> Verdict {
    let s = scenario("m21.scn");
    patched(
        &s,
        "open2",
        "i*",
        "l2",
        &[
            "l2 - th2 - psi1*(l1 - psi1)",
            "(l1 + th1)*(24*l1^2 - 48*l2)",
            "20*(l1 + th1)*l1*l2",
            "th1*(l1 + th1)",
            "2*psi1*th2",
            "th2*(th1 + l1 - psi1)",
            "psi1*th1*th2",
        ],
    )?;
    let op = s.operator("push-Theta2").unwrap().op.as_ref().map_err(Clone::clone)?;
    let c = ring(&s, "Ctilde2");
    let eta3 = pushforward_apply(op, &poly(ring(&s, "Theta2"), "xi1")).map_err(|e| e.to_string())?;
    let diff = c.reduce(&(eta3.clone() - poly(c, "psi1*th2"))).unwrap();
    ensure(diff.is_zero(), || format!("push of xi1 is {eta3}, off by {diff}"))?;
    Ok("seven generators; push of xi1 = psi1*th2".into())
}

fn c4() -> Verdict {
    let s = scenario("m21.scn");
    let (a, t) = (ring(&s, "Th1-Th2"), ring(&s, "Theta2"));
    ensure(nonzerodivisor(a, &poly(a, "-l1")).unwrap(), || "-l1 is a zero divisor".into())?;
    ensure(nonzerodivisor(t, &poly(t, "l2")).unwrap(), || "l2 is a zero divisor".into())?;
    ensure(!nonzerodivisor(t, &poly(t, "xi1")).unwrap(), || "xi1 is not a zero divisor".into())?;
    Ok("-l1, l2 nonzerodivisors; xi1 not".into())
}

/// Invariant factors of a small integer matrix from its determinantal divisors.
fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<BigInt> {
    fn det(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> BigInt {
        if rows.len() == 1 {
            return BigInt::from(m[rows[0]][cols[0]]);
        }
        let mut acc = BigInt::zero();
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = det(m, &rows[1..], &rest) * m[rows[0]][c];
            acc += if k % 2 == 0 { sub } else { -sub };
        }
        acc
    }
    let subsets = |n: usize, k: usize| -> Vec<Vec<usize>> {
        (0..1u32 << n).filter(|s| s.count_ones() as usize == k).map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect()).collect()
    };
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=m.len().min(m[0].len()) {
        let mut g = BigInt::zero();
        for r in subsets(m.len(), k) {
            for c in subsets(m[0].len(), k) {
                g = g.gcd(&det(m, &r, &c));
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn c5() -> Verdict {
    let s = scenario("m12.scn");
    let c11 = ring(&s, "C11");
    let w = weight_class(c11.ring(), &[poly(c11, "-4*l1"), poly(c11, "-6*l1")]).unwrap();
    let m12 = excise(c11, &[w, poly(c11, "24*l1^2*mu1")], "M12").unwrap();
    let want = ideal(c11, &["mu1*(l1 + mu1)", "24*l1^2"]);
    ensure(ideal_equal(m12.relations(), &want).unwrap(), || format!("excision gives {}", m12.relations()))?;
    let (d1, d2) = (m12.graded_component(1).unwrap(), m12.graded_component(2).unwrap());
    ensure(d1.free_rank == 2 && d1.torsion.is_empty(), || format!("degree 1: {d1:?}"))?;
    ensure(d2.free_rank == 1 && d2.torsion == [BigInt::from(24)], || format!("degree 2: {d2:?}"))?;
    // degree-2 relations in the basis l1^2, l1*mu1, mu1^2
    let factors = invariant_factors_by_minors(&[vec![0, 1, 1], vec![24, 0, 0]]);
    ensure(factors == [BigInt::from(1), BigInt::from(24)], || format!("minors give {factors:?}"))?;
    Ok("d=1: Z^2; d=2: Z + Z/24 (minors: 1, 24)".into())
}

fn c6() -> Verdict {
    let s = scenario("m21.scn");
    let t = |m: &str, e: &str| {
        let m = map(&s, m).clone();
        let e = poly(m.target(), e);
        (m, e)
    };
    let cases = [
        ("Cc", vec![
            t("to-C2-Th1", "-2*psi1*(l1 - 3*psi1)*(l1 - 4*psi1)"),
            t("to-Th1-Th2", "-24*psi1^3"),
            t("i*", "0"),
        ]),
        ("CE", vec![t("open2", "24*th1*psi1^2"), t("i*", "-24*l1*l2")]),
        ("crhoT", vec![t("open2", "24*th1*psi1^2*(l1 - psi1)"), t("i*", "48*l2^2")]),
    ];
    for (name, restrictions) in &cases {
        let r = class_consistency(&class(&s, name), restrictions).unwrap();
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(format!("{name} along {} off by {}", c.map, c.difference));
        }
    }
    Ok("Cc (3), CE (2), crhoT (2) restrictions".into())
}

fn c7() -> Verdict {
    let s = scenario("m21.scn");
    let op = s.operator("push-f").unwrap().op.as_ref().map_err(Clone::clone)?;
    let (up, down) = (ring(&s, "BT2"), ring(&s, "Theta2"));
    for (x, want) in [("24*U^2*T", "-24*l2*l1"), ("24*(U*T)^2", "48*l2^2")] {
        let got = pushforward_apply(op, &poly(up, x)).map_err(|e| e.to_string())?;
        let diff = down.reduce(&(got.clone() - poly(down, want))).unwrap();
        ensure(diff.is_zero(), || format!("push of {x} is {got}, expected {want}"))?;
    }
    Ok("-24*l1*l2 and 48*l2^2".into())
}

/// Every part of criterion 8; `Err` lists the parts that fail.
fn c8() -> Verdict {
    let s = scenario("m21.scn");
    let ct = ring(&s, "Ctilde2");
    let gens = [
        "l2 - th2 - psi1*(l1 - psi1)",
        "24*l1^2 - 48*l2",
        "th1*(l1 + th1)",
        "20*l1*l2 - 4*l2*th1",
        "2*psi1*th2",
        "th2*(th1 + l1 - psi1)",
        "2*psi1*(l1 + th1)*(7*psi1 - l1) - 24*psi1^3",
    ];
    let fin = ChowPresentation::new("final", ideal(ct, &gens)).unwrap();
    let mut failures = Vec::new();
    for r in ct.relations().generators() {
        let nf = fin.reduce(r).unwrap();
        if !nf.is_zero() {
            failures.push(format!("relation {r} reduces to {nf}"));
        }
    }
    let classes = ["Cc", "CE", "crhoT"].map(|n| class(&s, n));
    for (name, c) in ["Cc", "CE", "crhoT"].iter().zip(&classes) {
        let nf = fin.reduce(c).unwrap();
        if !nf.is_zero() {
            failures.push(format!("{name} reduces to {nf}"));
        }
    }
    let mut inputs = classes.to_vec();
    inputs.extend(["24*l1^2 - 48*l2", "20*l1*l2 - 4*l2*th1"].map(|j| poly(ct, j)));
    let exc = excise(ct, &inputs, "excised").unwrap();
    for g in gens {
        if !exc.is_zero(&poly(ct, g)).unwrap() {
            failures.push(format!("{g} not in the excision"));
        }
    }
    for d in 0..=5 {
        let (a, b) = (fin.graded_component(d).unwrap(), exc.graded_component(d).unwrap());
        if a != b {
            failures.push(format!("degree {d}: rank {} vs {}", a.free_rank, b.free_rank));
        }
    }
    let report = run_checks(&s, Some("Mbar21/vs-excision-with-J"));
    let emitted = report.results.first().is_some_and(|r| {
        r.status == Status::Report && r.witness.as_deref().is_some_and(|w| w.contains("96*th2^2"))
    });
    if !emitted {
        failures.push("discrepancy not emitted as a containment report".into());
    }
    if failures.is_empty() {
        Ok("all containments hold; d <= 5 agree".into())
    } else {
        Err(failures.join("; "))
    }
}

fn c9() -> Verdict {
    let s = scenario("faber.scn");
    for m in ["phi", "phi-inv"] {
        let def = s.map(m).unwrap();
        let v = validate_ringmap(&def.map, ring(&s, &def.source).relations()).unwrap();
        ensure(v.valid, || format!("{m} is not well defined: {:?}", v.witness))?;
    }
    let cq = ring(&s, "CorQ");
    let b = |n: &str| class(&s, n);
    let exact = |lhs: Polynomial, rhs: Polynomial, what: &str| ensure(lhs == rhs, || format!("{what} is not an exact identity"));
    exact(poly(cq, "2*psi1*((l1 + th1)*(7*psi1 - l1) - 12*psi1^2)"), b("b34"), "2*gamma33 = beta34")?;
    exact(poly(cq, "2*psi1*(1/2*l1^2 - psi1*(l1 - psi1))"), b("b32"), "2*gamma34 = beta32")?;
    let phi = map(&s, "phi");
    let image = |n: &str| phi.apply_raw(&b(n)).unwrap();
    let p = |t: &str| poly(cq, t);
    let g31 = image("g31") - p("20*(th1 - 5*l1)") * b("a23") - p("300") * b("b31");
    let combo32 = p("2*psi1 + th1 - l1") * b("a23") - p("1/12") * b("b31")
        + p("17/6") * b("b32")
        + p("5/6") * b("b33")
        + p("1/6") * b("b34");
    let g32 = image("g32") - combo32;
    for (name, residue) in [("gamma31", &g31), ("gamma32", &g32)] {
        ensure(cq.reduce(residue).unwrap().is_zero(), || format!("{name} fails modulo the ideal"))?;
    }
    // every side lies in the ideal, so the candidates are compared as polynomials
    let g21 = image("g21");
    let a21 = map(&s, "rho").apply_raw(&b("a21")).unwrap() * p("10");
    let a23 = b("a23") * p("10");
    let matched: Vec<&str> = [("10*alpha21", &a21), ("10*alpha23", &a23)]
        .iter()
        .filter(|(_, v)| **v == g21)
        .map(|(n, _)| *n)
        .collect();
    ensure(matched == ["10*alpha23"], || format!("gamma21 maps to {g21}, matching {matched:?}"))?;
    Ok(format!(
        "maps valid; exact residues gamma31: {}, gamma32: {}; gamma21 matches {}",
        if g31.is_zero() { "0".to_string() } else { g31.to_string() },
        g32,
        matched.join(", ")
    ))
}

fn c10() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let (mut instances, mut queries) = (0, 0);
    while instances < 1000 {
        let (r, w) = oracle::random_ring(&mut rng);
        let mut gens = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let d = rng.gen_range(1..=2);
            let g = oracle::random_homogeneous(&mut rng, &r, &w, d, 3);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        if gens.is_empty() {
            continue;
        }
        let i = IdealPresentation::new(&r, gens.clone()).unwrap();
        let gb = groebner_basis(&i, &MonomialOrder::WeightedDegRevLex).map_err(|e| e.to_string())?;
        ensure(gb.strength() == Strength::StrongZ, || format!("{i}: basis not strong"))?;
        for _ in 0..3 {
            let d = rng.gen_range(0..=4);
            let comb = oracle::random_combination(&mut rng, &w, &gens, d);
            ensure(gb.normal_form(&comb).unwrap().is_zero(), || format!("{comb} does not reduce to 0 by {i}"))?;
            let f = match rng.gen_range(0..3) {
                0 => oracle::primitive_part(&comb),
                1 => comb + oracle::random_homogeneous(&mut rng, &r, &w, d, 2),
                _ => oracle::random_poly(&mut rng, &r, &w, 3, 3),
            };
            let want = oracle::member(&w, &gens, &f);
            ensure(gb.contains(&f).unwrap() == want, || format!("membership of {f} in {i}: oracle says {want}"))?;
            queries += 1;
        }
        instances += 1;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{instances} instances, {queries} oracle queries in {:.1} s", t.as_secs_f64()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "patching, genus 1", c1),
        (2, "patching, complement of Theta2", c2),
        (3, "patching, Ctilde2", c3),
        (4, "nonzerodivisor preconditions", c4),
        (5, "excision and graded pieces, Mbar12", c5),
        (6, "class consistency", c6),
        (7, "transfer pushforward", c7),
        (8, "final theorem redundancy and comparison", c8),
        (9, "Faber comparison over Q", c9),
        (10, "Groebner engine against oracle", c10),
    ];
    let mut unexpected = Vec::new();
    for (n, label, f) in criteria {
        let start = Instant::now();
        let v = f();
        let ms = start.elapsed().as_millis();
        match &v {
            Ok(msg) => println!("criterion {n:>2}: PASS {label} ({msg}) [{ms} ms]"),
            Err(msg) => println!("criterion {n:>2}: FAIL {label} ({msg}) [{ms} ms]"),
        }
        let expected_fail = n == 8;
        match (&v, expected_fail) {
            (Ok(_), false) => {}
            (Err(msg), true) if known_discrepancy(msg) => {
                println!("              known discrepancy: the printed crhoT is not in the final ideal");
            }
            _ => unexpected.push(n),
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}

/// The documented failure: crhoT reduces to 96*th2^2 and only degree 4 differs.
fn known_discrepancy(msg: &str) -> bool {
    let parts: Vec<&str> = msg.split("; ").collect();
    parts.len() == 2 && parts[0] == "crhoT reduces to 96*th2^2" && parts[1].starts_with("degree 4:")
}
