//! Acceptance suite: one line per criterion, each checked at its pinned
//! tolerance and runtime bound. Runs without the libtest harness so the lines
//! always appear in `cargo test` output.

use std::process::Command;
use std::time::{Duration, Instant};

use h3calc::chern::{porteous, ChernSeries};
use h3calc::family::{
    derive, excess_ledger, family_ring, pushforward, pushforward_chain, pushforward_degree_one,
    DivisorClassOnS, FiberClass, Variant,
};
use h3calc::field::{Field, PrimeField, Rationals};
use h3calc::graded_algebra::{ChowClass, Generator, Monomial, Ring};
use h3calc::jet::{
    degeneracy_rank, jet_matrix_reparametrized, rank_at_abscissa, CurvePoint, HyperellipticCurve,
};
use h3calc::local_multiplicity::{
    colength, multiplicity_of_case_over, CaseLabel, MultiplicityError, TruncSeries,
};
use h3calc_cli::config::{SetupConfig, FAMILY_CONFIG};
use h3calc_cli::eval::{evaluate, Evaluator};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

/// Randomized cases per property; criteria ask for at least 100.
const CASES: u32 = 128;

type Check = Result<String, String>;

/// Id, name, runtime bound and check.
type Criterion = (&'static str, &'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

// ---- 1 ----

fn criterion_1() -> Check {
    let ring = family_ring();
    let p = pushforward_chain(&ring, Variant::Stable).map_err(|e| e.to_string())?;
    let checkpoints = [
        ("π_* c1(F)^2", p.push_c1f_squared.to_string(), "9κ - 16δ1"),
        ("π_* c2(F)", p.push_c2f.to_string(), "2κ - 4δ1"),
        ("π_* [D]", p.before_kappa.to_string(), "7κ - 12λ"),
        ("after κ", p.result.to_string(), "72λ - 7δ0 - 7δ1"),
    ];
    for (name, got, want) in &checkpoints {
        ensure(got == want, || format!("{name}: got {got}, want {want}"))?;
    }
    // The same chain through the expression language and the shipped setup.
    let cfg = SetupConfig::parse(FAMILY_CONFIG).map_err(|e| e.to_string())?;
    let ev = Evaluator::new(&cfg);
    let exprs = [
        (
            "subst(push(part(dual(c(E)) * inv(dual(c(F))), 2)))",
            "72λ - 7δ0 - 7δ1",
        ),
        ("push(porteous(E, F, 1))", "7κ - 12λ"),
        ("push(c1(F)^2)", "9κ - 16δ1"),
        ("push(c2(F))", "2κ - 4δ1"),
    ];
    for (src, want) in exprs {
        let (_, v) = evaluate(&cfg, src).map_err(|d| format!("{src}: {d}"))?;
        let got = ev.render(&v);
        ensure(got == want, || format!("{src}: got {got}, want {want}"))?;
    }
    Ok("72λ - 7δ0 - 7δ1 with checkpoints 9κ - 16δ1, 2κ - 4δ1, 7κ - 12λ".into())
}

// ---- 2 ----

fn run_verify(args: &[&str]) -> Result<(String, i32, Duration), String> {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_h3calc"))
        .arg("verify-h3")
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((stdout, out.status.code().unwrap_or(-1), elapsed))
}

fn criterion_2() -> Check {
    let mut slowest = Duration::ZERO;
    for (args, want) in [
        (&[][..], "[H̄] = 9λ − δ0 − 3δ1"),
        (&["--smooth"][..], "[H] = 9λ"),
    ] {
        let (out, code, t) = run_verify(args)?;
        slowest = slowest.max(t);
        let last = out.lines().last().unwrap_or_default();
        ensure(last == want && code == 0, || {
            format!("verify-h3 {args:?}: last line `{last}`, exit {code}")
        })?;
        ensure(out.lines().any(|l| l == "PASS"), || {
            format!("verify-h3 {args:?}: no PASS line")
        })?;
        ensure(t < Duration::from_secs(1), || {
            format!("verify-h3 {args:?} took {t:?}")
        })?;
    }
    Ok(format!(
        "9λ − δ0 − 3δ1 and 9λ, slowest run {} ms",
        slowest.as_millis()
    ))
}

// ---- 3 ----

fn criterion_3() -> Check {
    let fields: Vec<PrimeField> = [3, 5, 101].map(|p| PrimeField::new(p).unwrap()).to_vec();
    let mut runs = 0;
    for label in CaseLabel::ALL {
        let want = label.expected_multiplicity();
        for seed in 0..20 {
            for cutoff in 4..=8 {
                let mut got = vec![multiplicity_of_case_over(&Rationals, label, seed, cutoff)];
                got.extend(
                    fields
                        .iter()
                        .map(|k| multiplicity_of_case_over(k, label, seed, cutoff)),
                );
                runs += got.len();
                ensure(got.iter().all(|m| m.as_ref() == Ok(&want)), || {
                    format!("{label} seed {seed} cutoff {cutoff}: {got:?}, want {want}")
                })?;
            }
        }
    }
    let f2 = PrimeField::new(2).unwrap();
    for label in CaseLabel::ALL {
        let r = multiplicity_of_case_over(&f2, label, 0, 5);
        ensure(r == Err(MultiplicityError::FieldCharTwo), || {
            format!("{label} over F_2 was not rejected: {r:?}")
        })?;
    }
    let m: Vec<usize> = CaseLabel::ALL
        .iter()
        .map(|l| l.expected_multiplicity())
        .collect();
    Ok(format!(
        "(Z, XY, 2A≡2N, W_Y) = {m:?} in {runs} runs, F_2 rejected"
    ))
}

// ---- 4 and 7: random classes ----

/// Every monomial (as factor names) of weighted degree `lo..=hi`.
fn monomials(ring: &Ring, lo: u32, hi: u32) -> Vec<Vec<String>> {
    fn go(
        gens: &[Generator],
        start: usize,
        budget: u32,
        cur: &mut Vec<String>,
        used: u32,
        lo: u32,
        out: &mut Vec<Vec<String>>,
    ) {
        if used >= lo {
            out.push(cur.clone());
        }
        for (i, g) in gens.iter().enumerate().skip(start) {
            if g.degree <= budget {
                cur.push(g.name.clone());
                go(gens, i, budget - g.degree, cur, used + g.degree, lo, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(ring.generators(), 0, hi, &mut Vec::new(), 0, lo, &mut out);
    out
}

fn rational() -> impl Strategy<Value = BigRational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::vec(prop_oneof![3 => Just(q(0)), 2 => rational()], n)
}

fn class(ring: &Ring, monos: &[Vec<String>], c: &[BigRational], raw: bool) -> ChowClass {
    let terms: Vec<(Monomial, BigRational)> = monos
        .iter()
        .zip(c)
        .map(|(m, c)| (ring.monomial(m).unwrap(), c.clone()))
        .collect();
    if raw {
        ring.raw_class(terms)
    } else {
        ring.class_from_terms(terms)
    }
}

fn free_ring() -> Ring {
    let gens = [("a", 1), ("b", 1), ("c", 1), ("p", 2), ("q", 2), ("r", 3)]
        .map(|(n, d)| Generator::new(n, d))
        .to_vec();
    Ring::new(gens, vec![], 3).unwrap()
}

fn series(ring: &Ring, rank: i64, c: &[BigRational]) -> ChernSeries {
    let mut parts = Vec::new();
    let mut used = 0;
    for d in 1..=ring.truncation() {
        let monos = monomials(ring, d, d);
        parts.push(class(ring, &monos, &c[used..used + monos.len()], false));
        used += monos.len();
    }
    ChernSeries::new(ring, rank, &parts).unwrap()
}

fn series_len(ring: &Ring) -> usize {
    monomials(ring, 1, ring.truncation()).len()
}

/// Runs `CASES` cases of a property; the error carries proptest's minimal
/// failing input.
fn property<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases: CASES,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())?;
    Ok(CASES)
}

fn criterion_4() -> Check {
    let ring = free_ring();
    let n = series_len(&ring);
    let cases = property((coeffs(n), coeffs(n)), |(a, b)| {
        let (e, f) = (series(&ring, 3, &a), series(&ring, 2, &b));
        let det = porteous(&e, &f, 3, 2, 1).unwrap();
        let extracted = e
            .dual()
            .quotient(&f.dual())
            .unwrap()
            .total()
            .graded_part(2)
            .unwrap();
        prop_assert_eq!(det, extracted);
        Ok(())
    })?;
    Ok(format!(
        "determinant = [c(E*)/c(F*)]_2 on {cases} random assignments, (e,f,k) = (3,2,1)"
    ))
}

// ---- 5 ----

fn product_curve() -> HyperellipticCurve<Rationals> {
    let mut f = vec![q(1)];
    for r in 0..8 {
        let mut next = vec![q(0); f.len() + 1];
        for (i, c) in f.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * q(r);
        }
        f = next;
    }
    HyperellipticCurve::new(Rationals, f).unwrap()
}

fn criterion_5() -> Check {
    let k = PrimeField::new(17).unwrap();
    let mut f = vec![0u64; 9];
    f[0] = 16;
    f[8] = 1;
    let c = HyperellipticCurve::new(k, f).map_err(|e| e.to_string())?;
    let mut degenerate = Vec::new();
    for x in 0..17u64 {
        for y in 0..17u64 {
            let p = CurvePoint::new(x, y);
            if c.contains(&p) && degeneracy_rank(&c, &p).map_err(|e| e.to_string())? <= 1 {
                degenerate.push(p);
            }
        }
    }
    // Roots of x^8 - 1 by repeated multiplication mod 17, independent of the curve code.
    let roots: Vec<u64> = (0..17u64)
        .filter(|&x| (0..8).fold(1u64, |acc, _| acc * x % 17) == 1)
        .collect();
    ensure(degenerate.len() == 8 && roots.len() == 8, || {
        format!(
            "{} degenerate points, {} roots",
            degenerate.len(),
            roots.len()
        )
    })?;
    ensure(
        degenerate.iter().all(|p| p.y == 0 && roots.contains(&p.x)),
        || "a degenerate point is not a root of f".into(),
    )?;

    let c = product_curve();
    for a in 0..8 {
        let r = degeneracy_rank(&c, &CurvePoint::branch(&Rationals, q(a)))
            .map_err(|e| e.to_string())?;
        ensure(r == 1, || format!("branch point {a} has rank {r}"))?;
    }
    let mut ordinary = 0;
    'outer: for n in -30i64..=30 {
        for d in [1i64, 2, 3] {
            if ordinary == 50 {
                break 'outer;
            }
            let x0 = BigRational::new(n.into(), d.into());
            if (0..8).any(|a| x0 == q(a)) {
                continue;
            }
            let r = rank_at_abscissa(&c, &x0).map_err(|e| e.to_string())?;
            ensure(r == 2, || format!("x0 = {x0} has rank {r}"))?;
            ordinary += 1;
        }
    }
    Ok(format!("F_17: 8 degenerate points = 8 roots; Q: 8 branch points rank 1, {ordinary} ordinary rank 2"))
}

// ---- 6 ----

fn criterion_6() -> Check {
    let ledger = excess_ledger().map_err(|e| e.to_string())?;
    let (w0, w1) = (
        ledger.total(FiberClass::Delta0),
        ledger.total(FiberClass::Delta1),
    );
    ensure((w0, w1) == (1, 17), || {
        format!("ledger weights ({w0}, {w1})")
    })?;
    let quotient = DivisorClassOnS::new(72, -7, -7, 0)
        .sub(&DivisorClassOnS::new(0, 1, 17, 0))
        .scale(&BigRational::new(1.into(), 8.into()));
    ensure(quotient.is_integral(), || {
        format!("{quotient} is not integral")
    })?;
    ensure(quotient == DivisorClassOnS::new(9, -1, -3, 0), || {
        format!("quotient {quotient}")
    })?;
    let d = derive(Variant::Stable, Some(ledger)).map_err(|e| e.to_string())?;
    ensure(d.theorem.as_ref() == Ok(&quotient), || {
        format!("pipeline gives {:?}", d.theorem)
    })?;
    Ok(format!(
        "weights δ0 {w0}, δ1 {w1}; (72λ - 7δ0 - 7δ1 - δ0 - 17δ1)/8 = {quotient}"
    ))
}

// ---- 7 ----

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn curve_over_f101() -> impl Strategy<Value = HyperellipticCurve<PrimeField>> {
    (proptest::collection::vec(0u64..101, 8), 1u64..101).prop_filter_map(
        "squarefree",
        |(mut v, lead)| {
            v.push(lead);
            HyperellipticCurve::new(f101(), v).ok()
        },
    )
}

fn unit_twist() -> impl Strategy<Value = Vec<((u32, u32), i64)>> {
    proptest::collection::vec(((0u32..3, 0u32..3), -3i64..=3), 0..4)
        .prop_map(|v| v.into_iter().filter(|((i, j), _)| i + j > 0).collect())
}

fn criterion_7() -> Check {
    let fam = family_ring();
    let fam_monos = monomials(&fam, 0, 2);
    let free = free_ring();
    let n = series_len(&free);
    let mut report = Vec::new();

    let cases = property(coeffs(fam_monos.len()), |c| {
        let once = class(&fam, &fam_monos, &c, true).normalize();
        prop_assert_eq!(once.normalize(), once);
        Ok(())
    })?;
    report.push(format!("normalize {cases}"));

    let cases = property((coeffs(n), coeffs(n)), |(a, b)| {
        let (x, y) = (series(&free, 2, &a), series(&free, 3, &b));
        prop_assert_eq!(x.whitney(&y).unwrap(), y.whitney(&x).unwrap());
        Ok(())
    })?;
    report.push(format!("whitney-comm {cases}"));

    let cases = property((coeffs(n), coeffs(n), coeffs(n)), |(a, b, c)| {
        let (x, y, z) = (
            series(&free, 1, &a),
            series(&free, 2, &b),
            series(&free, 3, &c),
        );
        prop_assert_eq!(
            x.whitney(&y).unwrap().whitney(&z).unwrap(),
            x.whitney(&y.whitney(&z).unwrap()).unwrap()
        );
        Ok(())
    })?;
    report.push(format!("whitney-assoc {cases}"));

    let cases = property(coeffs(n), |a| {
        let x = series(&free, 3, &a);
        prop_assert_eq!(x.whitney(&x.inverse()).unwrap().total(), free.one());
        Ok(())
    })?;
    report.push(format!("inverse {cases}"));

    let degree_one = ["K", "X", "Y", "pl", "pd0", "pd1"];
    let cases = property(
        (
            (rational(), rational(), rational()),
            proptest::collection::vec(rational(), degree_one.len()),
        ),
        |((l, d0, d1), cs)| {
            let alpha = DivisorClassOnS {
                lambda: l,
                delta0: d0,
                delta1: d1,
                kappa: q(0),
            };
            let mut c = fam.zero();
            for (name, k) in degree_one.iter().zip(&cs) {
                c = &c + &fam.generator(name).unwrap().scale(k);
            }
            let lhs = pushforward(&(&alpha.pullback(&fam).unwrap() * &c)).unwrap();
            prop_assert_eq!(lhs, alpha.scale(&pushforward_degree_one(&c).unwrap()));
            Ok(())
        },
    )?;
    report.push(format!("projection {cases}"));

    let cases = property(
        (1u32..=4, 1u32..=4, unit_twist(), unit_twist()),
        |(a, b, ua, ub)| {
            let cutoff = a + b + 1;
            let prec = cutoff + 1;
            let twist = |g: TruncSeries, extra: &[((u32, u32), i64)]| {
                let unit = &TruncSeries::one(prec)
                    + &TruncSeries::from_terms(extra.iter().map(|&(e, c)| (e, q(c))), prec);
                &g * &unit
            };
            let gens = [
                twist(TruncSeries::monomial((0, a), q(1), prec), &ua),
                twist(TruncSeries::monomial((b, 0), q(1), prec), &ub),
            ];
            prop_assert_eq!(
                colength(&Rationals, &gens, cutoff).unwrap().colength,
                (a * b) as usize
            );
            Ok(())
        },
    )?;
    report.push(format!("colength {cases}"));

    let cases = property(
        (curve_over_f101(), 0usize..1000, 1u64..101, 0u64..101),
        |(c, pick, lin, quad)| {
            let k = f101();
            let points = c.affine_points().unwrap();
            prop_assume!(!points.is_empty());
            let p = &points[pick % points.len()];
            let r = degeneracy_rank(&c, p).unwrap();
            prop_assert_eq!(r, if p.is_branch(&k) { 1 } else { 2 });
            prop_assert_eq!(
                jet_matrix_reparametrized(&c, p, &lin, &quad)
                    .unwrap()
                    .rank(),
                r
            );
            prop_assert_eq!(degeneracy_rank(&c, &p.conjugate(&k)).unwrap(), r);
            prop_assert!(k.characteristic() == 101);
            Ok(())
        },
    )?;
    report.push(format!("jet {cases}"));

    Ok(format!("zero failures: {}", report.join(", ")))
}

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "1",
            "Chern/Porteous pipeline to 72λ - 7δ0 - 7δ1",
            Duration::from_secs(1),
            criterion_1,
        ),
        (
            "2",
            "verify-h3 theorem lines",
            Duration::from_secs(2),
            criterion_2,
        ),
        (
            "3",
            "fixture multiplicities (1, 2, 1, 2)",
            Duration::from_secs(10),
            criterion_3,
        ),
        (
            "4",
            "Porteous cross-validation",
            Duration::from_secs(60),
            criterion_4,
        ),
        ("5", "jet degeneracy", Duration::from_secs(5), criterion_5),
        (
            "6",
            "excess bookkeeping",
            Duration::from_secs(60),
            criterion_6,
        ),
        (
            "7",
            "property suites",
            Duration::from_secs(300),
            criterion_7,
        ),
    ];
    let mut failed = 0;
    for (id, name, limit, check) in criteria {
        let start = Instant::now();
        let result = check();
        let t = start.elapsed();
        let (status, detail) = match result {
            Ok(d) if t < limit => ("PASS", d),
            Ok(d) => (
                "FAIL",
                format!(
                    "{d}; took {} ms, limit {} ms",
                    t.as_millis(),
                    limit.as_millis()
                ),
            ),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id} {status}: {name} (exact; {} ms, limit {} ms): {detail}",
            t.as_millis(),
            limit.as_millis()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 7 acceptance criteria passed");
}
