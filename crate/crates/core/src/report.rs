//! A single machine-readable summary of everything computable about one
//! semigroup. Budget and size guards mark individual fields as skipped.

use serde::Serialize;

use crate::centrality::center_congruence;
use crate::congruence::enumerate_congruences;
use crate::conjugation::metacenter;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::semigroup::{Element, InverseSemigroup};
use crate::series::{
    conjecture_check, is_nilpotent, is_solvable, kmm_kernel_series, malcev_class, MALCEV_GUARD,
};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Field<T> {
    Computed { value: T },
    Skipped { reason: String },
}

impl<T> Field<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Field::Computed { value } => Some(value),
            Field::Skipped { .. } => None,
        }
    }
}

/// Guard trips become skipped fields; anything else is a real error.
fn guarded<T>(r: Result<T>) -> Result<Field<T>> {
    match r {
        Ok(value) => Ok(Field::Computed { value }),
        Err(
            e @ (Error::BudgetExceeded { .. }
            | Error::OrderTooLarge { .. }
            | Error::LevelTooLarge { .. }),
        ) => Ok(Field::Skipped {
            reason: e.to_string(),
        }),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreenCounts {
    pub l: usize,
    pub r: usize,
    pub h: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterSummary {
    pub blocks: Vec<Vec<Element>>,
    pub is_identity: bool,
    pub is_universal: bool,
    /// Whether the largest central congruence was found by scanning the lattice.
    pub lattice_checked: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// Nilpotency class or solvable length.
    pub degree: Option<usize>,
}

impl Verdict {
    fn of(degree: Option<usize>) -> Self {
        Verdict {
            holds: degree.is_some(),
            degree,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MalcevSummary {
    pub class: Option<usize>,
    pub searched_up_to: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KmmSummary {
    pub class: Option<usize>,
    pub kernels: Vec<Vec<Element>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureSummary {
    pub holds: bool,
    pub witness: Option<[Element; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub result: Field<ConjectureSummary>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub name: Option<String>,
    pub order: usize,
    pub idempotents: usize,
    pub green_classes: GreenCounts,
    pub is_group: bool,
    pub is_clifford: bool,
    pub metacenter: Vec<Element>,
    pub classical_center: Vec<Element>,
    pub congruence_count: Field<usize>,
    pub center_congruence: Field<CenterSummary>,
    pub nilpotent: Field<Verdict>,
    pub solvable: Field<Verdict>,
    pub kmm: Field<KmmSummary>,
    pub malcev: Field<MalcevSummary>,
    pub conjecture: Vec<ConjectureRow>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Highest level for the Mal'cev search and the `ζ_n = H ∩ μ_n` rows.
    pub max_n: usize,
    pub limits: Limits,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_n: 2,
            limits: Limits::default(),
        }
    }
}

pub fn analyze(
    name: Option<&str>,
    s: &InverseSemigroup,
    options: &AnalysisOptions,
) -> Result<AnalysisReport> {
    let limits = &options.limits;
    let green = s.green_relations();
    let center = guarded(center_congruence(s, limits))?;
    let center_congruence = match center {
        Field::Computed { value } => Field::Computed {
            value: CenterSummary {
                blocks: value.zeta.blocks(),
                is_identity: value.zeta.is_identity(),
                is_universal: value.zeta.is_universal(),
                lattice_checked: value.largest_central.is_some(),
            },
        },
        Field::Skipped { reason } => Field::Skipped { reason },
    };
    let malcev = guarded(
        malcev_class(s, options.max_n.min(MALCEV_GUARD), limits).map(|class| MalcevSummary {
            class,
            searched_up_to: options.max_n.min(MALCEV_GUARD),
        }),
    )?;
    let conjecture = (0..=options.max_n)
        .map(|n| {
            let result = guarded(conjecture_check(s, n, limits).map(|v| ConjectureSummary {
                holds: v.holds,
                witness: v.witness.map(|(a, b)| [a, b]),
            }))?;
            Ok(ConjectureRow { n, result })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        name: name.map(str::to_owned),
        order: s.order(),
        idempotents: s.idempotents().len(),
        green_classes: GreenCounts {
            l: green.l.block_count(),
            r: green.r.block_count(),
            h: green.h.block_count(),
        },
        is_group: s.is_group(),
        is_clifford: s.is_clifford(),
        metacenter: metacenter(s).to_vec(),
        classical_center: s.classical_center().to_vec(),
        congruence_count: guarded(enumerate_congruences(s, limits).map(|c| c.len()))?,
        center_congruence,
        nilpotent: guarded(is_nilpotent(s, limits).map(Verdict::of))?,
        solvable: guarded(is_solvable(s, limits).map(Verdict::of))?,
        kmm: guarded(kmm_kernel_series(s, limits).map(|k| KmmSummary {
            class: k.class,
            kernels: k.kernels.iter().map(|z| z.to_vec()).collect(),
        }))?,
        malcev,
        conjecture,
    })
}
