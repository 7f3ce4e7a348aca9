//! Multiplicity at the origin of the scheme cut out by the 2x2 minors of a
//! 2x3 matrix of bivariate germs.

mod colength;
mod fixtures;
mod series;

use thiserror::Error;

use crate::field::{Field, FieldError, Rationals};

pub use colength::{colength, quotient_at_cutoff, ColengthReport, QuotientBasis};
pub use fixtures::{
    case_fixture, case_fixture_by_name, CaseLabel, EntryTemplate, GermFamily,
    SLOT_MULTIPLIER_DEGREE,
};
pub use series::{render_monomial, Exp, TruncSeries};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultiplicityError {
    #[error("colength computations need characteristic different from 2")]
    FieldCharTwo,
    #[error("quotient dimension did not stabilize at cutoff {cutoff} ({lower} vs {upper} at the next cutoff); the colength may be infinite")]
    UnstableAtCutoff {
        cutoff: u32,
        lower: usize,
        upper: usize,
    },
    #[error("cutoff {0} is too small (need at least 2)")]
    CutoffTooSmall(u32),
    #[error("series known only below degree {series_cutoff}, need {needed}")]
    InsufficientPrecision { series_cutoff: u32, needed: u32 },
    #[error("unknown fixture label `{0}`")]
    UnknownLabel(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// 2x3 matrix of germs in two named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GermMatrix {
    pub vars: [String; 2],
    pub entries: [[TruncSeries; 3]; 2],
}

impl GermMatrix {
    pub fn var_names(&self) -> [&str; 2] {
        [self.vars[0].as_str(), self.vars[1].as_str()]
    }
}

/// The maximal minors for the column pairs {1,2}, {1,3}, {2,3}.
pub fn minors(m: &GermMatrix) -> [TruncSeries; 3] {
    let e = &m.entries;
    let minor = |a: usize, b: usize| &(&e[0][a] * &e[1][b]) - &(&e[0][b] * &e[1][a]);
    [minor(0, 1), minor(0, 2), minor(1, 2)]
}

/// Colength of the minor ideal of a fixture member over `field`.
pub fn multiplicity_of_case_over<F: Field>(
    field: &F,
    label: CaseLabel,
    seed: u64,
    cutoff: u32,
) -> Result<usize, MultiplicityError> {
    colength::check_field(field)?;
    let m = case_fixture(label).instantiate(seed, cutoff + 1);
    Ok(colength(field, &minors(&m), cutoff)?.colength)
}

/// Colength of the minor ideal of a fixture member over the rationals.
pub fn multiplicity_of_case(
    label: CaseLabel,
    seed: u64,
    cutoff: u32,
) -> Result<usize, MultiplicityError> {
    multiplicity_of_case_over(&Rationals, label, seed, cutoff)
}
