use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::ring::{CoeffRing, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ReportParams {
    pub n_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<String>,
    #[serde(flatten)]
    pub extra: BTreeMap<String, String>,
}

impl ReportParams {
    pub fn new(n_max: usize) -> Self {
        ReportParams {
            n_max,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "R: CoeffRing")]
pub struct ReportRow<R> {
    pub n: usize,
    pub lhs: R,
    pub rhs: R,
    pub pass: bool,
}

/// Side-by-side values of one identity over a contiguous range of `n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "R: CoeffRing")]
pub struct IdentityReport<R> {
    pub identity: String,
    pub mode: Mode,
    pub params: ReportParams,
    pub rows: Vec<ReportRow<R>>,
    pub overall: bool,
}

impl<R: CoeffRing> IdentityReport<R> {
    pub fn from_rows(
        identity: &str,
        params: ReportParams,
        rows: impl IntoIterator<Item = (usize, R, R)>,
    ) -> Self {
        let rows: Vec<ReportRow<R>> = rows
            .into_iter()
            .map(|(n, lhs, rhs)| {
                let pass = lhs == rhs;
                ReportRow { n, lhs, rhs, pass }
            })
            .collect();
        let overall = rows.iter().all(|r| r.pass);
        IdentityReport {
            identity: identity.to_string(),
            mode: R::MODE,
            params,
            rows,
            overall,
        }
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.rows.iter().find(|r| !r.pass).map(|r| r.n)
    }

    pub fn row(&self, n: usize) -> Option<&ReportRow<R>> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Adds one to the right-hand side at row `n` and re-grades the report.
    /// Used to check that a broken identity is actually reported.
    pub fn corrupt_rhs(&mut self, n: usize) {
        for row in &mut self.rows {
            if row.n == n {
                row.rhs = row.rhs.plus(&R::one());
                row.pass = row.lhs == row.rhs;
            }
        }
        self.overall = self.rows.iter().all(|r| r.pass);
    }
}
