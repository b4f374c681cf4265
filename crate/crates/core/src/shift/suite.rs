//! The rank-one shift-operator suite: Frobenius residual, intertwiner and
//! composition identities, and rationality of `S(s)`, for each `Delta`
//! convention.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{
    composition_check, fundamental_solution, intertwiner_check, reconstruct_entries, Cocharacter, CompositionReport,
    DeltaConvention, FundamentalSolution, IntertwinerReport, RationalEntry, ShiftError,
};
use crate::hecke::HeckeAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalityReport {
    pub cocharacter: String,
    pub convention: DeltaConvention,
    /// Independent coefficients each fit must reproduce beyond those it was solved from.
    pub spare: usize,
    /// Entries of `c S(s)`, `c` the polynomial clearing the denominators of `Delta(s)`.
    pub normalization: String,
    /// `None` marks an entry with no rational fit inside the window.
    pub entries: Vec<Option<RationalEntry>>,
}

impl RationalityReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(Option::is_some)
    }
}

/// Fit every entry of `S(s)` by a rational function of `q`.
pub fn rationality_check(
    fs: &FundamentalSolution,
    s: &Cocharacter,
    convention: DeltaConvention,
    spare: usize,
) -> Result<RationalityReport, ShiftError> {
    let op = fs.shift_operator(s, convention)?;
    let names = fs.alg.var_names();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    Ok(RationalityReport {
        cocharacter: s.to_string(),
        convention,
        spare,
        normalization: op.normalization.fmt_with(&names),
        entries: reconstruct_entries(&op, &names, spare).into_iter().map(|(_, _, e)| e).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConventionReport {
    pub convention: DeltaConvention,
    pub intertwiners: Vec<IntertwinerReport>,
    pub compositions: Vec<CompositionReport>,
    pub rationality: Vec<RationalityReport>,
}

impl ConventionReport {
    pub fn identities_ok(&self) -> bool {
        self.intertwiners.iter().all(IntertwinerReport::ok) && self.compositions.iter().all(|c| c.holds)
    }

    pub fn rational(&self) -> bool {
        self.rationality.iter().all(RationalityReport::ok)
    }

    pub fn ok(&self) -> bool {
        self.identities_ok() && self.rational()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftSuiteReport {
    pub cartan_type: String,
    /// Height of the identity checks.
    pub max_height: i64,
    /// Height of the window used for rational reconstruction.
    pub rational_height: i64,
    /// Nonzero residual grades of the fundamental solution, per fundamental weight.
    pub frobenius_residual: Vec<Vec<Vec<i64>>>,
    pub conventions: Vec<ConventionReport>,
}

impl ShiftSuiteReport {
    /// Conventions under which every identity holds and every entry is rational.
    pub fn passing(&self) -> Vec<DeltaConvention> {
        self.conventions.iter().filter(|c| c.ok()).map(|c| c.convention).collect()
    }

    pub fn ok(&self) -> bool {
        self.frobenius_residual.iter().all(Vec::is_empty) && !self.passing().is_empty()
    }
}

/// The cocharacters `(alpha^vee; 0)` and `(0; 1)` of a rank-one system.
pub fn basic_cocharacters() -> (Cocharacter, Cocharacter) {
    (Cocharacter::new(vec![1], 0), Cocharacter::new(vec![0], 1))
}

/// Identities through height `n` and rational reconstruction on a window of
/// height `rational_height`, for each convention in `conventions`.
pub fn shift_suite(
    alg: &Arc<HeckeAlgebra>,
    n: i64,
    rational_height: i64,
    conventions: &[DeltaConvention],
) -> Result<ShiftSuiteReport, ShiftError> {
    let fs = fundamental_solution(alg, n)?;
    let wide = fundamental_solution(alg, rational_height)?;
    let (coroot, time) = basic_cocharacters();
    let pairs = [(time.clone(), time.clone()), (coroot.clone(), time.clone()), (time.clone(), coroot.clone())];
    let conventions = conventions
        .iter()
        .map(|&conv| {
            Ok(ConventionReport {
                convention: conv,
                intertwiners: [&coroot, &time]
                    .iter()
                    .map(|s| intertwiner_check(&fs, s, conv))
                    .collect::<Result<_, _>>()?,
                compositions: pairs
                    .iter()
                    .map(|(a, b)| composition_check(&fs, a, b, conv))
                    .collect::<Result<_, _>>()?,
                rationality: [&coroot, &time]
                    .iter()
                    .map(|s| rationality_check(&wide, s, conv, 2))
                    .collect::<Result<_, _>>()?,
            })
        })
        .collect::<Result<_, ShiftError>>()?;
    Ok(ShiftSuiteReport {
        cartan_type: alg.root_system().kind().to_string(),
        max_height: n,
        rational_height,
        frobenius_residual: fs.residual_grades(),
        conventions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_reciprocal_is_rational_at_rank_one() {
        let alg = HeckeAlgebra::new("A1".parse().unwrap()).unwrap();
        let rep = shift_suite(&alg, 2, 6, &DeltaConvention::ALL).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.passing(), vec![DeltaConvention::Reciprocal]);
        let shifted = &rep.conventions[1];
        assert!(shifted.identities_ok() && !shifted.rational());
    }
}
