//! The one-parameter family of genus-3 curves over a complete curve `S`:
//! its Chow ring on the total space, the Chern data of the evaluation map,
//! pushforward to `S`, the excess ledger of special points and the final
//! divisor class.

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chern::{porteous, ChernError, ChernSeries};
use crate::graded_algebra::{AlgebraError, ChowClass, Generator, RewriteRule, Ring};
use crate::local_multiplicity::{multiplicity_of_case, CaseLabel, MultiplicityError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Multiplicity(#[from] MultiplicityError),
    #[error("monomial `{0}` is outside the normalized pushforward basis")]
    UnreducedMonomial(String),
    #[error("pushforward expects a homogeneous class of degree {expected}, got {class}")]
    WrongDegree { expected: u32, class: String },
    #[error("kappa must be eliminated first: {0}")]
    KappaPresent(String),
    #[error(
        "ledger multiplicity {ledger} for {label} disagrees with the germ computation ({computed})"
    )]
    MultiplicityMismatch {
        label: CaseLabel,
        ledger: u32,
        computed: usize,
    },
    #[error("result {0} has non-integral coefficients")]
    NonIntegralResult(Box<DivisorClassOnS>),
}

/// Generator names of the family ring, in declaration (and term) order.
pub const GENERATORS: [(&str, u32); 7] = [
    ("Y", 1),
    ("X", 1),
    ("K", 1),
    ("N", 2),
    ("pd1", 1),
    ("pd0", 1),
    ("pl", 1),
];

/// Number of Weierstrass points on a genus-3 hyperelliptic curve.
pub const WEIERSTRASS_POINTS: i64 = 8;

/// `K` restricted to a fiber has degree `2g - 2`.
pub const FIBER_CANONICAL_DEGREE: i64 = 4;

/// Chow ring of the total space `C`, truncated above dimension-0 classes.
///
/// `K` is the relative canonical class, `X` the elliptic tail and `Y` the
/// genus-2 component of the `delta1` fiber, `N` their common node, and
/// `pl, pd0, pd1` the pullbacks of `lambda, delta0, delta1`.
///
/// Built once; every call returns the same ring.
pub fn family_ring() -> Ring {
    static RING: OnceLock<Ring> = OnceLock::new();
    RING.get_or_init(build_family_ring).clone()
}

fn build_family_ring() -> Ring {
    let gens = GENERATORS
        .iter()
        .map(|(n, d)| Generator::new(*n, *d))
        .collect();
    let mut rules = vec![
        RewriteRule::int(&["Y"], &[(1, &["pd1"]), (-1, &["X"])]),
        RewriteRule::int(&["X", "X"], &[(1, &["X", "pd1"]), (-1, &["N"])]),
        RewriteRule::int(&["K", "X"], &[(1, &["N"])]),
        RewriteRule::int(&["X", "pl"], &[]),
        RewriteRule::int(&["X", "pd0"], &[]),
    ];
    let base = ["pl", "pd0", "pd1"];
    for (i, a) in base.iter().enumerate() {
        for b in &base[i..] {
            rules.push(RewriteRule::int(&[a, b], &[]));
        }
    }
    let ring = Ring::new(gens, rules, 2).expect("family ring rules are well-formed");
    ring.check_confluence()
        .expect("family ring rules are confluent");
    ring
}

/// Which geometric situation the family models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// One irreducible nodal fiber and one fiber `X ∪ Y`.
    Stable,
    /// Every fiber smooth; the evaluation map is not twisted.
    Smooth,
}

/// `c(E')` and `c(F')`, the source and target of the evaluation map.
pub fn chern_data(
    ring: &Ring,
    variant: Variant,
) -> Result<(ChernSeries, ChernSeries), FamilyError> {
    let g = |n: &str| ring.generator(n);
    let (k, x, pl, pd1) = (g("K")?, g("X")?, g("pl")?, g("pd1")?);
    match variant {
        Variant::Stable => {
            let c_e = ChernSeries::new(ring, 3, &[&pl - &pd1])?;
            // 0 -> L ⊗ ω -> F' -> L -> 0 with c1(L) = K - X.
            let l = &k - &x;
            let l_omega = ChernSeries::line_bundle(&(&l + &k))?;
            let c_f = l_omega.whitney(&ChernSeries::line_bundle(&l)?)?;
            Ok((c_e, c_f))
        }
        Variant::Smooth => {
            let c_e = ChernSeries::new(ring, 3, &[pl])?;
            let omega2 = ChernSeries::line_bundle(&(&k + &k))?;
            let c_f = omega2.whitney(&ChernSeries::line_bundle(&k)?)?;
            Ok((c_e, c_f))
        }
    }
}

/// Porteous class of the locus where `E' -> F'` fails to be surjective.
pub fn degeneracy_class(ring: &Ring, variant: Variant) -> Result<ChowClass, FamilyError> {
    let (c_e, c_f) = chern_data(ring, variant)?;
    Ok(porteous(&c_e, &c_f, 3, 2, 1)?)
}

/// Rational divisor class on `S` in `lambda, delta0, delta1, kappa`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClassOnS {
    pub lambda: BigRational,
    pub delta0: BigRational,
    pub delta1: BigRational,
    pub kappa: BigRational,
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl DivisorClassOnS {
    pub fn zero() -> Self {
        Self {
            lambda: BigRational::zero(),
            delta0: BigRational::zero(),
            delta1: BigRational::zero(),
            kappa: BigRational::zero(),
        }
    }

    pub fn new(lambda: i64, delta0: i64, delta1: i64, kappa: i64) -> Self {
        Self {
            lambda: int(lambda),
            delta0: int(delta0),
            delta1: int(delta1),
            kappa: int(kappa),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_zero())
    }

    /// `(kappa, lambda, delta0, delta1)`, the display order.
    pub fn coefficients(&self) -> [&BigRational; 4] {
        [&self.kappa, &self.lambda, &self.delta0, &self.delta1]
    }

    pub fn add(&self, o: &Self) -> Self {
        Self {
            lambda: &self.lambda + &o.lambda,
            delta0: &self.delta0 + &o.delta0,
            delta1: &self.delta1 + &o.delta1,
            kappa: &self.kappa + &o.kappa,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self {
            lambda: &self.lambda * q,
            delta0: &self.delta0 * q,
            delta1: &self.delta1 * q,
            kappa: &self.kappa * q,
        }
    }

    /// Substitutes `kappa = 12 lambda - delta0 - delta1`.
    pub fn eliminate_kappa(&self) -> Self {
        let k = &self.kappa;
        Self {
            lambda: &self.lambda + k * int(12),
            delta0: &self.delta0 - k,
            delta1: &self.delta1 - k,
            kappa: BigRational::zero(),
        }
    }

    /// Restriction to a family with no singular fibers.
    pub fn drop_boundary(&self) -> Self {
        Self {
            delta0: BigRational::zero(),
            delta1: BigRational::zero(),
            ..self.clone()
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coefficients().iter().all(|c| c.is_integer())
    }

    /// Degree on a base with `deg lambda = lambda_deg`, `n0` irreducible nodal
    /// fibers and `n1` fibers with an elliptic tail.
    pub fn degree(&self, lambda_deg: i64, n0: i64, n1: i64) -> BigRational {
        let e = self.eliminate_kappa();
        e.lambda * int(lambda_deg) + e.delta0 * int(n0) + e.delta1 * int(n1)
    }

    /// Pullback `pl, pd0, pd1` combination on `C`.
    pub fn pullback(&self, ring: &Ring) -> Result<ChowClass, FamilyError> {
        if !self.kappa.is_zero() {
            return Err(FamilyError::KappaPresent(self.to_string()));
        }
        let g = |n: &str| ring.generator(n);
        Ok(
            &(&g("pl")?.scale(&self.lambda) + &g("pd0")?.scale(&self.delta0))
                + &g("pd1")?.scale(&self.delta1),
        )
    }

    fn render(&self, minus: &str) -> String {
        let names = ["κ", "λ", "δ0", "δ1"];
        let mut out = String::new();
        for (c, name) in self.coefficients().into_iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if out.is_empty() {
                if c.is_negative() {
                    out.push_str(minus.trim());
                }
            } else {
                out.push_str(if c.is_negative() { minus } else { " + " });
            }
            let a = c.abs();
            if a.is_one() {
            } else if a.is_integer() {
                out.push_str(&a.to_string());
            } else {
                out.push_str(&format!("({a})"));
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    /// Typographic form with a proper minus sign.
    pub fn pretty(&self) -> String {
        self.render(" \u{2212} ")
    }
}

impl fmt::Display for DivisorClassOnS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(" - "))
    }
}

fn image_of_base(factor: &str) -> Option<DivisorClassOnS> {
    let one = BigRational::one();
    let mut d = DivisorClassOnS::zero();
    match factor {
        "pl" => d.lambda = one,
        "pd0" => d.delta0 = one,
        "pd1" => d.delta1 = one,
        _ => return None,
    }
    Some(d)
}

/// `pi_*` on normalized degree-2 classes: `K^2 -> kappa`, `N -> delta1`,
/// `K·pi^*a -> 4a`, `X·pi^*a -> 0`.
pub fn pushforward(c: &ChowClass) -> Result<DivisorClassOnS, FamilyError> {
    let c = c.normalize();
    if !c.is_homogeneous_of_degree(2) {
        return Err(FamilyError::WrongDegree {
            expected: 2,
            class: c.to_string(),
        });
    }
    let ring = c.ring();
    let mut out = DivisorClassOnS::zero();
    for (m, coeff) in c.terms() {
        let factors = ring.factors(m);
        let f: Vec<&str> = factors.iter().map(String::as_str).collect();
        let image = match f.as_slice() {
            ["K", "K"] => DivisorClassOnS {
                kappa: BigRational::one(),
                ..DivisorClassOnS::zero()
            },
            ["N"] => DivisorClassOnS {
                delta1: BigRational::one(),
                ..DivisorClassOnS::zero()
            },
            [a, b] if (*a == "K") != (*b == "K") => {
                let base = if *a == "K" { b } else { a };
                image_of_base(base)
                    .ok_or_else(|| FamilyError::UnreducedMonomial(ring.render_monomial(m)))?
                    .scale(&int(FIBER_CANONICAL_DEGREE))
            }
            ["X", b] | [b, "X"] if image_of_base(b).is_some() => DivisorClassOnS::zero(),
            _ => return Err(FamilyError::UnreducedMonomial(ring.render_monomial(m))),
        };
        out = out.add(&image.scale(coeff));
    }
    Ok(out)
}

/// `pi_*` on degree-1 classes, valued in multiples of `[S]`: the fiber degree.
pub fn pushforward_degree_one(c: &ChowClass) -> Result<BigRational, FamilyError> {
    let c = c.normalize();
    if !c.is_homogeneous_of_degree(1) {
        return Err(FamilyError::WrongDegree {
            expected: 1,
            class: c.to_string(),
        });
    }
    let ring = c.ring();
    let mut out = BigRational::zero();
    for (m, coeff) in c.terms() {
        let factors = ring.factors(m);
        match factors[0].as_str() {
            "K" => out += coeff * int(FIBER_CANONICAL_DEGREE),
            "X" | "pl" | "pd0" | "pd1" => {}
            _ => return Err(FamilyError::UnreducedMonomial(ring.render_monomial(m))),
        }
    }
    Ok(out)
}

/// Intermediate results of the pushforward of `[D]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushforwardChain {
    pub degeneracy_class: ChowClass,
    /// `pi_* c1(F')^2`.
    pub push_c1f_squared: DivisorClassOnS,
    /// `pi_* c2(F')`.
    pub push_c2f: DivisorClassOnS,
    /// `pi_* [D]` before eliminating `kappa`.
    pub before_kappa: DivisorClassOnS,
    pub result: DivisorClassOnS,
}

/// `pi_* [D]` with `kappa` eliminated; the smooth variant also drops the
/// boundary classes, which vanish on such a base.
pub fn pushforward_chain(ring: &Ring, variant: Variant) -> Result<PushforwardChain, FamilyError> {
    let d = degeneracy_class(ring, variant)?;
    let (_, c_f) = chern_data(ring, variant)?;
    let push_c1f_squared = pushforward(&c_f.c(1).pow(2))?;
    let push_c2f = pushforward(&c_f.c(2))?;
    let before_kappa = pushforward(&d)?;
    let mut result = before_kappa.eliminate_kappa();
    if variant == Variant::Smooth {
        result = result.drop_boundary();
    }
    Ok(PushforwardChain {
        degeneracy_class: d,
        push_c1f_squared,
        push_c2f,
        before_kappa,
        result,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberClass {
    Delta0,
    Delta1,
}

impl fmt::Display for FiberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FiberClass::Delta0 => "δ0",
            FiberClass::Delta1 => "δ1",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub label: CaseLabel,
    pub fiber: FiberClass,
    /// Points of this type per special fiber.
    pub count: u32,
    pub multiplicity: u32,
}

impl LedgerEntry {
    pub fn weight(&self) -> u32 {
        self.count * self.multiplicity
    }
}

/// Special points of `D` lying on singular fibers, which must be removed
/// from `pi_*[D]` to leave the Weierstrass divisor.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExcessLedger {
    pub entries: Vec<LedgerEntry>,
}

/// Cutoff and seeds at which ledger multiplicities are recomputed.
pub const LEDGER_CHECK_CUTOFF: u32 = 6;
pub const LEDGER_CHECK_SEEDS: [u64; 2] = [0, 1];

impl ExcessLedger {
    /// Ledger without the germ cross-check.
    pub fn declared() -> Self {
        let entry = |label: CaseLabel, fiber, count| LedgerEntry {
            label,
            fiber,
            count,
            multiplicity: label.expected_multiplicity() as u32,
        };
        Self {
            entries: vec![
                entry(CaseLabel::ZNode, FiberClass::Delta0, 1),
                entry(CaseLabel::XyNode, FiberClass::Delta1, 1),
                entry(CaseLabel::TorsionA, FiberClass::Delta1, 3),
                entry(CaseLabel::WeierstrassY, FiberClass::Delta1, 6),
            ],
        }
    }

    /// Recomputes each multiplicity from its germ family.
    pub fn verify(&self) -> Result<(), FamilyError> {
        for e in &self.entries {
            for seed in LEDGER_CHECK_SEEDS {
                let computed = multiplicity_of_case(e.label, seed, LEDGER_CHECK_CUTOFF)?;
                if computed != e.multiplicity as usize {
                    return Err(FamilyError::MultiplicityMismatch {
                        label: e.label,
                        ledger: e.multiplicity,
                        computed,
                    });
                }
            }
        }
        Ok(())
    }

    /// Replaces the multiplicity of one point type; the result is no longer
    /// expected to pass [`ExcessLedger::verify`].
    pub fn with_override(mut self, label: CaseLabel, multiplicity: u32) -> Self {
        for e in self.entries.iter_mut().filter(|e| e.label == label) {
            e.multiplicity = multiplicity;
        }
        self
    }

    pub fn total(&self, fiber: FiberClass) -> u32 {
        self.entries
            .iter()
            .filter(|e| e.fiber == fiber)
            .map(LedgerEntry::weight)
            .sum()
    }

    pub fn correction(&self) -> DivisorClassOnS {
        DivisorClassOnS {
            delta0: int(self.total(FiberClass::Delta0) as i64),
            delta1: int(self.total(FiberClass::Delta1) as i64),
            ..DivisorClassOnS::zero()
        }
    }

    /// Excess points, with multiplicity, on a base with `n0` and `n1` special
    /// fibers of each type.
    pub fn point_count(&self, n0: i64, n1: i64) -> i64 {
        n0 * self.total(FiberClass::Delta0) as i64 + n1 * self.total(FiberClass::Delta1) as i64
    }
}

/// The verified ledger.
pub fn excess_ledger() -> Result<ExcessLedger, FamilyError> {
    let l = ExcessLedger::declared();
    l.verify()?;
    Ok(l)
}

/// `(pi_*[D] - excess) / 8`; every Weierstrass point of a smooth fiber is a
/// simple point of `D`.
pub fn assemble_theorem(
    pushed: &DivisorClassOnS,
    ledger: &ExcessLedger,
) -> Result<DivisorClassOnS, FamilyError> {
    let r = pushed
        .sub(&ledger.correction())
        .scale(&BigRational::new(1.into(), WEIERSTRASS_POINTS.into()));
    if r.is_integral() {
        Ok(r)
    } else {
        Err(FamilyError::NonIntegralResult(Box::new(r)))
    }
}

/// Every stage of the computation for one variant and ledger.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub variant: Variant,
    pub chain: PushforwardChain,
    /// Absent for the smooth variant, which has no special fibers.
    pub ledger: Option<ExcessLedger>,
    pub correction: DivisorClassOnS,
    pub theorem: Result<DivisorClassOnS, FamilyError>,
}

impl Derivation {
    pub fn expected(variant: Variant) -> DivisorClassOnS {
        match variant {
            Variant::Stable => DivisorClassOnS::new(9, -1, -3, 0),
            Variant::Smooth => DivisorClassOnS::new(9, 0, 0, 0),
        }
    }

    pub fn passes(&self) -> bool {
        self.theorem.as_ref().ok() == Some(&Self::expected(self.variant))
    }
}

/// Runs the full pipeline. `ledger` defaults to the verified ledger.
pub fn derive(variant: Variant, ledger: Option<ExcessLedger>) -> Result<Derivation, FamilyError> {
    let ring = family_ring();
    let chain = pushforward_chain(&ring, variant)?;
    let ledger = match variant {
        Variant::Smooth => None,
        Variant::Stable => Some(match ledger {
            Some(l) => l,
            None => excess_ledger()?,
        }),
    };
    let empty = ExcessLedger::default();
    let used = ledger.as_ref().unwrap_or(&empty);
    let theorem = assemble_theorem(&chain.result, used);
    Ok(Derivation {
        variant,
        correction: used.correction(),
        chain,
        ledger,
        theorem,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        family_ring()
    }

    fn cls(r: &Ring, terms: &[(i64, &[&str])]) -> ChowClass {
        r.class(terms).unwrap()
    }

    #[test]
    fn ring_relations() {
        let r = ring();
        let y = r.generator("Y").unwrap();
        let x = r.generator("X").unwrap();
        let k = r.generator("K").unwrap();
        assert_eq!(&y * &x, cls(&r, &[(1, &["N"])]));
        assert_eq!(&k * &y, cls(&r, &[(1, &["K", "pd1"]), (-1, &["N"])]));
        assert!(cls(&r, &[(1, &["pd1", "pd1"])]).is_zero());
    }

    #[test]
    fn chern_data_values() {
        let r = ring();
        let (c_e, c_f) = chern_data(&r, Variant::Stable).unwrap();
        assert!(c_e.c(2).is_zero());
        assert_eq!(c_f.c(1), cls(&r, &[(3, &["K"]), (-2, &["X"])]));
        assert_eq!(
            c_f.c(2),
            cls(&r, &[(2, &["K", "K"]), (-4, &["N"]), (1, &["X", "pd1"])])
        );
    }

    #[test]
    fn pushforward_examples() {
        let r = ring();
        let a = cls(&r, &[(3, &["K"]), (-2, &["X"])]);
        assert_eq!(
            pushforward(&a.pow(2)).unwrap(),
            DivisorClassOnS::new(0, 0, -16, 9)
        );
        let b = cls(&r, &[(1, &["K"]), (-1, &["X"])]);
        let c = cls(&r, &[(2, &["K"]), (-1, &["X"])]);
        assert_eq!(
            pushforward(&(&b * &c)).unwrap(),
            DivisorClassOnS::new(0, 0, -4, 2)
        );
        assert!(pushforward(&r.zero()).unwrap().is_zero());
        assert!(matches!(
            pushforward(&r.generator("K").unwrap()),
            Err(FamilyError::WrongDegree { .. })
        ));
    }

    #[test]
    fn smooth_degeneracy_class() {
        let r = ring();
        let d = degeneracy_class(&r, Variant::Smooth).unwrap();
        assert_eq!(d, cls(&r, &[(7, &["K", "K"]), (-3, &["K", "pl"])]));
        let stable = degeneracy_class(&r, Variant::Stable).unwrap();
        assert_eq!(
            stable
                .specialize_to_zero(&["X", "Y", "N", "pd0", "pd1"])
                .unwrap(),
            d
        );
    }

    #[test]
    fn rendering() {
        assert_eq!(
            DivisorClassOnS::new(72, -7, -7, 0).to_string(),
            "72λ - 7δ0 - 7δ1"
        );
        assert_eq!(DivisorClassOnS::new(-12, 0, 0, 7).to_string(), "7κ - 12λ");
        assert_eq!(
            DivisorClassOnS::new(9, -1, -3, 0).pretty(),
            "9λ \u{2212} δ0 \u{2212} 3δ1"
        );
        assert_eq!(DivisorClassOnS::new(0, -1, 0, 0).to_string(), "-δ0");
        assert_eq!(DivisorClassOnS::zero().to_string(), "0");
        let frac = DivisorClassOnS::new(72, -7, -7, 0).scale(&BigRational::new(1.into(), 8.into()));
        assert_eq!(frac.to_string(), "9λ - (7/8)δ0 - (7/8)δ1");
    }

    #[test]
    fn zeroed_ledger_is_non_integral() {
        let mut l = ExcessLedger::declared();
        for e in &mut l.entries {
            e.multiplicity = 0;
        }
        let p = DivisorClassOnS::new(72, -7, -7, 0);
        match assemble_theorem(&p, &l) {
            Err(FamilyError::NonIntegralResult(c)) => {
                assert_eq!(c.to_string(), "9λ - (7/8)δ0 - (7/8)δ1")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn override_fails_derivation() {
        let l = ExcessLedger::declared().with_override(CaseLabel::ZNode, 0);
        let d = derive(Variant::Stable, Some(l)).unwrap();
        assert!(!d.passes());
    }

    #[test]
    fn stable_pipeline() {
        let r = ring();
        let p = pushforward_chain(&r, Variant::Stable).unwrap();
        assert_eq!(p.push_c1f_squared.to_string(), "9κ - 16δ1");
        assert_eq!(p.push_c2f.to_string(), "2κ - 4δ1");
        assert_eq!(p.before_kappa.to_string(), "7κ - 12λ");
        assert_eq!(p.result.to_string(), "72λ - 7δ0 - 7δ1");
        let d = derive(Variant::Stable, None).unwrap();
        assert_eq!(d.correction, DivisorClassOnS::new(0, 1, 17, 0));
        assert!(d.passes());
    }

    #[test]
    fn smooth_pipeline() {
        let r = ring();
        let p = pushforward_chain(&r, Variant::Smooth).unwrap();
        assert_eq!(p.result.to_string(), "72λ");
        let d = derive(Variant::Smooth, None).unwrap();
        assert_eq!(d.theorem.unwrap().pretty(), "9λ");
    }

    #[test]
    fn degree_one_pushforward() {
        let r = ring();
        let k = r.generator("K").unwrap();
        assert_eq!(pushforward_degree_one(&k).unwrap(), int(4));
        assert!(pushforward_degree_one(&r.generator("Y").unwrap())
            .unwrap()
            .is_zero());
    }
}
