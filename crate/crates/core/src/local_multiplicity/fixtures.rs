//! The four degeneracy germs of the boundary points of the family.
//!
//! Each entry of a 2x3 template is a leading polynomial plus a "slot": a
//! monomial ideal whose members may be added freely. Instantiating a family
//! fills every slot with a random multiple of each slot generator.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::series::{Exp, TruncSeries};
use super::{GermMatrix, MultiplicityError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    /// Node of the irreducible nodal fiber.
    ZNode,
    /// Node joining the elliptic tail to the genus-2 component.
    XyNode,
    /// The three points `A` of the elliptic tail with `2A = 2N`.
    TorsionA,
    /// Weierstrass points of the genus-2 component.
    WeierstrassY,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 4] = [
        CaseLabel::ZNode,
        CaseLabel::XyNode,
        CaseLabel::TorsionA,
        CaseLabel::WeierstrassY,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::ZNode => "Z_node",
            CaseLabel::XyNode => "XY_node",
            CaseLabel::TorsionA => "torsion_A",
            CaseLabel::WeierstrassY => "weierstrass_Y",
        }
    }

    /// Multiplicity the germ analysis is expected to give.
    pub fn expected_multiplicity(self) -> usize {
        match self {
            CaseLabel::ZNode | CaseLabel::TorsionA => 1,
            CaseLabel::XyNode | CaseLabel::WeierstrassY => 2,
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseLabel {
    type Err = MultiplicityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseLabel::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| MultiplicityError::UnknownLabel(s.to_string()))
    }
}

/// One entry: `leading + (slot ideal)`, or an exact polynomial when the slot
/// is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryTemplate {
    pub leading: Vec<(i64, Exp)>,
    pub slot: Vec<Exp>,
}

impl EntryTemplate {
    fn exact(leading: &[(i64, Exp)]) -> Self {
        Self {
            leading: leading.to_vec(),
            slot: Vec::new(),
        }
    }

    fn with_slot(leading: &[(i64, Exp)], slot: &[Exp]) -> Self {
        Self {
            leading: leading.to_vec(),
            slot: slot.to_vec(),
        }
    }

    pub fn leading_series(&self, cutoff: u32) -> TruncSeries {
        TruncSeries::from_terms(
            self.leading
                .iter()
                .map(|(c, e)| (*e, BigRational::from_integer((*c).into()))),
            cutoff,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermFamily {
    pub label: CaseLabel,
    pub vars: [&'static str; 2],
    pub entries: [[EntryTemplate; 3]; 2],
    /// Geometric side condition on the local coordinates. It restricts which
    /// deformations are meaningful but does not enter the minors.
    pub constraint: Option<&'static str>,
}

/// Slot multipliers are polynomials of this degree at most.
pub const SLOT_MULTIPLIER_DEGREE: u32 = 2;

fn coefficient_pool() -> Vec<BigRational> {
    [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
        .into_iter()
        .map(|(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

impl GermFamily {
    /// A member of the family. Seed 0 is the instantiation with every slot
    /// empty; other seeds draw each multiplier coefficient from a fixed pool
    /// of nonzero rationals whose numerators and denominators are units in
    /// every odd characteristic.
    pub fn instantiate(&self, seed: u64, cutoff: u32) -> GermMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pool = coefficient_pool();
        let entries = self.entries.clone().map(|row| {
            row.map(|entry| {
                let mut s = entry.leading_series(cutoff);
                if seed == 0 {
                    return s;
                }
                for &(a, b) in &entry.slot {
                    let mut terms = Vec::new();
                    for d in 0..=SLOT_MULTIPLIER_DEGREE {
                        for i in 0..=d {
                            let c = pool.choose(&mut rng).expect("nonempty pool").clone();
                            terms.push(((a + i, b + d - i), c));
                        }
                    }
                    s = &s + &TruncSeries::from_terms(terms, cutoff);
                }
                s
            })
        });
        GermMatrix {
            vars: self.vars.map(str::to_string),
            entries,
        }
    }

    /// Whether `m` belongs to this family: exact entries match and every other
    /// entry differs from its leading part by a member of its slot ideal.
    pub fn contains(&self, m: &GermMatrix) -> bool {
        self.entries.iter().zip(&m.entries).all(|(trow, mrow)| {
            trow.iter().zip(mrow).all(|(t, e)| {
                let diff = e - &t.leading_series(e.cutoff());
                if t.slot.is_empty() {
                    diff.is_zero()
                } else {
                    diff.lies_in_monomial_ideal(&t.slot)
                }
            })
        })
    }
}

fn lead(c: i64, e: Exp) -> (i64, Exp) {
    (c, e)
}

pub fn case_fixture(label: CaseLabel) -> GermFamily {
    use EntryTemplate as E;
    let one = E::exact(&[lead(1, (0, 0))]);
    let zero = E::exact(&[]);
    match label {
        // (t, u): 1 | u^2+(t,u^3) | tu+(t^2,tu^2)
        //         0 | 2u+(t,u^2)  | t+(t^2,tu)
        CaseLabel::TorsionA => GermFamily {
            label,
            vars: ["t", "u"],
            entries: [
                [
                    one,
                    E::with_slot(&[lead(1, (0, 2))], &[(1, 0), (0, 3)]),
                    E::with_slot(&[lead(1, (1, 1))], &[(2, 0), (1, 2)]),
                ],
                [
                    zero,
                    E::with_slot(&[lead(2, (0, 1))], &[(1, 0), (0, 2)]),
                    E::with_slot(&[lead(1, (1, 0))], &[(2, 0), (1, 1)]),
                ],
            ],
            constraint: None,
        },
        // (t, u): 1 | u^2+(t,u^3) | t^2(u+(t,u^2))
        //         0 | 2u+(t,u^2)  | t^2+t^2(t,u)
        CaseLabel::WeierstrassY => GermFamily {
            label,
            vars: ["t", "u"],
            entries: [
                [
                    one,
                    E::with_slot(&[lead(1, (0, 2))], &[(1, 0), (0, 3)]),
                    E::with_slot(&[lead(1, (2, 1))], &[(3, 0), (2, 2)]),
                ],
                [
                    zero,
                    E::with_slot(&[lead(2, (0, 1))], &[(1, 0), (0, 2)]),
                    E::with_slot(&[lead(1, (2, 0))], &[(3, 0), (2, 1)]),
                ],
            ],
            constraint: None,
        },
        // (x, y): 1 | x(x+(y,x^2))  | y(1+(x,y))
        //         0 | 2x^2+x(y,x^2) | -y+y(x,y)
        CaseLabel::XyNode => GermFamily {
            label,
            vars: ["x", "y"],
            entries: [
                [
                    one,
                    E::with_slot(&[lead(1, (2, 0))], &[(1, 1), (3, 0)]),
                    E::with_slot(&[lead(1, (0, 1))], &[(1, 1), (0, 2)]),
                ],
                [
                    zero,
                    E::with_slot(&[lead(2, (2, 0))], &[(1, 1), (3, 0)]),
                    E::with_slot(&[lead(-1, (0, 1))], &[(1, 1), (0, 2)]),
                ],
            ],
            constraint: Some("t = xy"),
        },
        // (x, y): 1 | x+(x,y)^2 | y+(x,y)^2
        //         0 | x+(x,y)^2 | -y+(x,y)^2
        CaseLabel::ZNode => {
            let sq: &[Exp] = &[(2, 0), (1, 1), (0, 2)];
            GermFamily {
                label,
                vars: ["x", "y"],
                entries: [
                    [
                        one,
                        E::with_slot(&[lead(1, (1, 0))], sq),
                        E::with_slot(&[lead(1, (0, 1))], sq),
                    ],
                    [
                        zero,
                        E::with_slot(&[lead(1, (1, 0))], sq),
                        E::with_slot(&[lead(-1, (0, 1))], sq),
                    ],
                ],
                constraint: Some("t = xy mod (x,y)^3"),
            }
        }
    }
}

/// Looks a fixture up by its label name.
pub fn case_fixture_by_name(name: &str) -> Result<GermFamily, MultiplicityError> {
    Ok(case_fixture(name.parse()?))
}
