//! Enumeration joined with realizability, one record per matrix.

use rayon::prelude::*;

use crate::enumerate::{collect_matrices, EnumerationSpec};
use crate::error::Result;
use crate::field::FieldContext;
use crate::format::matrix_inline;
use crate::multiplicity::{LambdaSequence, MultiplicityMatrix};
use crate::poly::Polynomial;
use crate::realize::{realize, search_lambda};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CensusMode {
    /// Enumerate only.
    Unchecked,
    /// Decide each matrix at these points.
    Lambda(LambdaSequence),
    /// Search for points in `context` up to `height`.
    Search { context: FieldContext, height: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusStatus {
    Unchecked,
    Realizable,
    Infeasible,
    Found,
    /// The search was exhaustive and found nothing.
    None,
    NoneWithinBounds,
}

impl CensusStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CensusStatus::Unchecked => "unchecked",
            CensusStatus::Realizable => "realizable",
            CensusStatus::Infeasible => "infeasible",
            CensusStatus::Found => "found",
            CensusStatus::None => "none",
            CensusStatus::NoneWithinBounds => "none-within-bounds",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    pub matrix: MultiplicityMatrix,
    pub status: CensusStatus,
    /// Points of the witness; differs from the designated ones only under search.
    pub lambda: Option<LambdaSequence>,
    pub witness: Option<Polynomial>,
    pub dimension: Option<usize>,
    pub unique: Option<bool>,
}

impl CensusRecord {
    fn bare(matrix: MultiplicityMatrix, status: CensusStatus) -> Self {
        CensusRecord {
            matrix,
            status,
            lambda: None,
            witness: None,
            dimension: None,
            unique: None,
        }
    }

    /// `matrix  status  witness  dim  unique`, tab separated, `-` for absent fields.
    pub fn to_tsv(&self) -> String {
        let dash = || "-".to_string();
        [
            matrix_inline(&self.matrix),
            self.status.as_str().to_string(),
            self.witness.as_ref().map_or_else(dash, ToString::to_string),
            self.dimension.map_or_else(dash, |d| d.to_string()),
            self.unique.map_or_else(dash, |u| u.to_string()),
        ]
        .join("\t")
    }
}

pub const TSV_HEADER: &str = "matrix\tstatus\twitness\tdim\tunique";

fn classify(m: MultiplicityMatrix, mode: &CensusMode) -> Result<CensusRecord> {
    match mode {
        CensusMode::Unchecked => Ok(CensusRecord::bare(m, CensusStatus::Unchecked)),
        CensusMode::Lambda(lambda) => {
            let r = realize(&m, lambda)?;
            let status = if r.is_realizable() {
                CensusStatus::Realizable
            } else {
                CensusStatus::Infeasible
            };
            Ok(CensusRecord {
                matrix: m,
                status,
                lambda: r.witness.as_ref().map(|_| lambda.clone()),
                unique: r.witness.as_ref().map(|_| r.unique),
                witness: r.witness,
                dimension: r.dimension,
            })
        }
        CensusMode::Search { context, height } => {
            if m.m() < 2 {
                // a single point normalizes to 0
                return classify(m, &CensusMode::Lambda(LambdaSequence::from_ints(*context, &[0])?));
            }
            let s = search_lambda(&m, *context, *height)?;
            match s.found.into_iter().next() {
                Some((lambda, r)) => Ok(CensusRecord {
                    matrix: m,
                    status: CensusStatus::Found,
                    lambda: Some(lambda),
                    unique: Some(r.unique),
                    witness: r.witness,
                    dimension: r.dimension,
                }),
                None if s.exhaustive => Ok(CensusRecord::bare(m, CensusStatus::None)),
                None => Ok(CensusRecord::bare(m, CensusStatus::NoneWithinBounds)),
            }
        }
    }
}

/// Records in enumeration order.
pub fn census(spec: &EnumerationSpec, mode: &CensusMode) -> Result<Vec<CensusRecord>> {
    let matrices = collect_matrices(spec)?;
    matrices.into_par_iter().map(|m| classify(m, mode)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;

    const Q: FieldContext = FieldContext::RATIONALS;

    #[test]
    fn two_by_six_at_zero_one() {
        let spec = EnumerationSpec::new(2, 5).with_col0(vec![3, 2]);
        let mode = CensusMode::Lambda(LambdaSequence::from_ints(Q, &[0, 1]).unwrap());
        let recs = census(&spec, &mode).unwrap();
        assert_eq!(recs.len(), 6);
        let ok: Vec<_> = recs.iter().filter(|r| r.status == CensusStatus::Realizable).collect();
        assert_eq!(ok.len(), 1);
        assert_eq!(
            ok[0].matrix.to_raw(),
            vec![vec![3, 2, 1, 0, 0, 0], vec![2, 1, 0, 0, 0, 0]]
        );
        let want = Polynomial::from_root_powers(
            &[(FieldElement::from_int(Q, 0), 3), (FieldElement::from_int(Q, 1), 2)],
            &Polynomial::one(Q),
        )
        .unwrap();
        assert_eq!(ok[0].witness.as_ref().unwrap(), &want);
        assert_eq!(
            ok[0].to_tsv(),
            format!("3 2 1 0 0 0;2 1 0 0 0 0\trealizable\t{want}\t0\ttrue")
        );
        assert!(recs.iter().any(|r| r.to_tsv().ends_with("infeasible\t-\t-\t-")));
    }

    #[test]
    fn unchecked_and_search() {
        let recs = census(&EnumerationSpec::new(1, 2), &CensusMode::Unchecked).unwrap();
        assert_eq!(recs.len(), 4);
        assert_eq!(recs[3].to_tsv(), "2 1 0\tunchecked\t-\t-\t-");

        let spec = EnumerationSpec::new(4, 4).with_col0(vec![1; 4]).canonical(true);
        let recs = census(&spec, &CensusMode::Search { context: Q, height: 4 }).unwrap();
        assert_eq!(recs.len(), 7);
        let count = |s: CensusStatus| recs.iter().filter(|r| r.status == s).count();
        assert_eq!((count(CensusStatus::Found), count(CensusStatus::None)), (3, 4));
    }
}
