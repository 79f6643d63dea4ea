//! Fine's product-to-partition expansion.
//!
//! For `psi_j(q) = sum_k C_j(k) q^k`,
//! `prod_{j>=1} psi_j(q^j) = sum_n q^n sum_{pi in P(n)} prod_j C_j(k_j)`.
//! A [`FineSpec`] lists `C_j` explicitly for `j = 1..=J`; every later
//! factor is the constant series 1.

use serde::{Deserialize, Serialize};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::identity::report::{IdentityReport, ReportParams};
use crate::partition::enumerate_partitions;
use crate::ring::CoeffRing;
use crate::series::TruncatedSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound = "R: CoeffRing")]
pub struct FineSpec<R> {
    /// `table[j-1][k] = C_j(k)`; coefficients past the end are zero.
    pub table: Vec<Vec<R>>,
    /// Constant term of every factor beyond the table. Must be 1.
    #[serde(default = "R::one")]
    pub tail: R,
}

impl<R: CoeffRing> FineSpec<R> {
    pub fn new(table: Vec<Vec<R>>) -> Self {
        FineSpec {
            table,
            tail: R::one(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tail.is_one() {
            return Err(Error::FineSpecInvalid(format!(
                "factors beyond the table must have constant term 1, got {}",
                self.tail
            )));
        }
        if let Some(j) = self.table.iter().position(Vec::is_empty) {
            return Err(Error::FineSpecInvalid(format!(
                "factor {} has no coefficients",
                j + 1
            )));
        }
        Ok(())
    }

    /// `C_j(k)` with the tail rule applied.
    pub fn coefficient(&self, j: usize, k: usize) -> R {
        match self.table.get(j - 1) {
            Some(row) => row.get(k).cloned().unwrap_or_else(R::zero),
            None if k == 0 => R::one(),
            None => R::zero(),
        }
    }
}

/// `prod_{j=1..N} psi_j(q^j)` modulo `q^(N+1)`.
pub fn fine_product<R: CoeffRing>(spec: &FineSpec<R>, order: usize) -> Result<TruncatedSeries<R>> {
    spec.validate()?;
    let mut acc = TruncatedSeries::one(order);
    for (idx, row) in spec.table.iter().enumerate() {
        let j = idx + 1;
        let mut coeffs = vec![R::zero(); order + 1];
        for (k, c) in row.iter().enumerate().take_while(|(k, _)| j * k <= order) {
            coeffs[j * k] = c.clone();
        }
        acc = acc.mul(&TruncatedSeries::from_coeffs(coeffs, order))?;
    }
    Ok(acc)
}

/// `sum_{pi in P(n)} prod_j C_j(k_j)`; the empty partition gives 1 at `n = 0`.
pub fn fine_partition_sum<R: CoeffRing>(spec: &FineSpec<R>, n: u32) -> Result<R> {
    spec.validate()?;
    if n == 0 {
        // Empty partition: every k_j = 0.
        return Ok(spec
            .table
            .iter()
            .fold(R::one(), |acc, row| acc.times(&row[0])));
    }
    let mut total = R::zero();
    for p in enumerate_partitions(n)? {
        let mut w = R::one();
        let depth = spec.table.len().max(p.mult().len());
        for j in 1..=depth {
            w = w.times(&spec.coefficient(j, p.multiplicity(j) as usize));
            if w.is_zero() {
                break;
            }
        }
        total = total.plus(&w);
    }
    Ok(total)
}

/// Product coefficient against partition sum for each power `q^0..q^N`.
pub fn fine_check<R: CoeffRing>(spec: &FineSpec<R>, order: usize) -> Result<IdentityReport<R>> {
    let prod = fine_product(spec, order)?;
    let sums: Vec<R> = (0..=order)
        .into_par_iter()
        .map(|n| fine_partition_sum(spec, n as u32))
        .collect::<Result<_>>()?;
    let mut params = ReportParams::new(order);
    params
        .extra
        .insert("factors".into(), spec.table.len().to_string());
    let rows = prod
        .into_coeffs()
        .into_iter()
        .zip(sums)
        .enumerate()
        .map(|(n, (l, r))| (n, l, r));
    Ok(IdentityReport::from_rows("fine", params, rows))
}
