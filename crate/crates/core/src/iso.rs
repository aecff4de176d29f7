//! Does a linear isomorphism between two codes preserve pair weights?
//!
//! The isomorphism is given by matched generator rows: row `i` of the
//! target is the image of row `i` of the source. It preserves pair weights
//! iff the line sums of the two generators differ by a constant and one
//! nonzero codeword keeps its weight.

use serde::{Deserialize, Serialize};

use crate::code::{pair_weight, LinearCode};
use crate::criterion::{omega_sums, Constancy, LineValue, Rule, Verdict, Witness};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoPair {
    source: LinearCode,
    target: LinearCode,
}

impl IsoPair {
    pub fn new(source: LinearCode, target: LinearCode) -> Result<Self> {
        if source.spec() != target.spec() {
            return Err(Error::Field(format!(
                "source over F_{}, target over F_{}",
                source.spec().q(),
                target.spec().q()
            )));
        }
        if (source.n(), source.k()) != (target.n(), target.k()) {
            return Err(Error::Dimension(format!(
                "source is [{}, {}], target is [{}, {}]",
                source.n(),
                source.k(),
                target.n(),
                target.k()
            )));
        }
        Ok(IsoPair { source, target })
    }

    pub fn source(&self) -> &LinearCode {
        &self.source
    }

    pub fn target(&self) -> &LinearCode {
        &self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapAnalysis {
    pub constant_gap: bool,
    /// `w_p(g_1) - w_p(φ(g_1))`, set when the gap is constant.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<i64>,
    /// Two lines on which the line-sum differences disagree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_lines: Option<(LineValue, LineValue)>,
}

/// Entry-wise difference of the source and target line sums; the witness
/// values are differences.
pub fn gap_analysis(pair: &IsoPair) -> GapAnalysis {
    let diff = omega_sums(&pair.source).difference(&omega_sums(&pair.target));
    match diff.constancy(pair.source.spec()) {
        Constancy::Constant(_) => {
            let gap = pair_weight(&pair.source.row(0)) as i64 - pair_weight(&pair.target.row(0)) as i64;
            GapAnalysis { constant_gap: true, gap: Some(gap), failing_lines: None }
        }
        Constancy::Differs(a, b) => GapAnalysis { constant_gap: false, gap: None, failing_lines: Some((a, b)) },
    }
}

pub fn preserves_pair_weights(pair: &IsoPair) -> Verdict {
    let g = gap_analysis(pair);
    match (g.failing_lines, g.gap) {
        (Some((first, second)), _) => Verdict::no(Rule::GapSums, Witness::Lines { first, second }),
        (None, Some(0)) => Verdict::yes(Rule::GapSums, None),
        (None, gap) => Verdict::no(Rule::GapSums, Witness::Gap { gap: gap.expect("constant gap is evaluated") }),
    }
}
