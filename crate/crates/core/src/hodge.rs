//! Graded dimensions and the Hodge numbers of the resolution.

use crate::error::{Error, Result};
use crate::exactalg::FieldSpec;

/// Binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of weighted degree `k`; zero for negative `k`.
pub fn dim_graded(weights: &[u32], k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let k = k as usize;
    let mut counts = vec![0u64; k + 1];
    counts[0] = 1;
    for &w in weights {
        let w = w as usize;
        for t in w..=k {
            counts[t] += counts[t - w];
        }
    }
    counts[k]
}

/// Euler number of the resolution of a degree-`d` hypersurface in P⁴ with
/// `mu` ordinary triple points. Each point lowers the Milnor-fibre
/// contribution by 16 and adds a cubic surface of Euler number 9.
pub fn euler_p4(d: i64, mu: i64) -> i64 {
    -d.pow(4) + 5 * d.pow(3) - 10 * d * d + 10 * d + 24 * mu
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeReport {
    pub d: u32,
    pub weights: Vec<u32>,
    pub mu: usize,
    pub delta: i64,
    pub dim_ieq: usize,
    pub h11: i64,
    pub h12: i64,
    pub h03: i64,
    pub h12_smooth: i64,
    pub euler: i64,
    pub q_factorial: bool,
    pub field_used: Option<FieldSpec>,
    pub completeness_certified: bool,
    /// Unmet weight hypotheses; the numbers are still computed.
    pub warnings: Vec<String>,
}

impl HodgeReport {
    pub fn with_provenance(mut self, field: FieldSpec, completeness_certified: bool) -> Self {
        self.field_used = Some(field);
        self.completeness_certified = completeness_certified;
        self
    }

    /// `|w|`.
    pub fn total_weight(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }

    pub fn defect_degree(&self) -> i64 {
        2 * self.d as i64 - self.total_weight()
    }
}

fn non_negative(name: &'static str, value: i64) -> Result<()> {
    if value < 0 {
        return Err(Error::NegativeHodge { name, value });
    }
    Ok(())
}

fn check_defect_form(r: &HodgeReport) -> Result<()> {
    let mu = r.mu as i64;
    if r.h11 != 1 + mu + r.delta || r.h12 != r.h12_smooth - 11 * mu + r.delta {
        return Err(Error::Inconsistent(format!(
            "direct and defect forms disagree (h11 = {}, h12 = {}, delta = {})",
            r.h11, r.h12, r.delta
        )));
    }
    Ok(())
}

/// Hodge numbers of the resolution of a degree-`d` hypersurface in P⁴.
pub fn hodge_p4(d: u32, mu: usize, dim_ieq: usize) -> Result<HodgeReport> {
    if d < 4 {
        return Err(Error::InvalidInput(format!("degree {d} < 4")));
    }
    let di = d as i64;
    let n = binomial(2 * di - 1, 4);
    let dim = dim_ieq as i64;
    if dim > n {
        return Err(Error::InvalidInput(format!(
            "dim I_eq = {dim} exceeds dim S^(2d-5) = {n}"
        )));
    }
    let mu_i = mu as i64;
    let h11 = dim - n + 12 * mu_i + 1;
    let h12 = dim - 5 * binomial(di, 4);
    let delta = dim - (n - 11 * mu_i);
    let report = HodgeReport {
        d,
        weights: vec![1; 5],
        mu,
        delta,
        dim_ieq,
        h11,
        h12,
        h03: binomial(di - 1, 4),
        h12_smooth: n - 5 * binomial(di, 4),
        euler: euler_p4(di, mu_i),
        q_factorial: delta == 0,
        field_used: None,
        completeness_certified: false,
        warnings: Vec::new(),
    };
    non_negative("delta", delta)?;
    non_negative("h11", h11)?;
    non_negative("h12", h12)?;
    check_defect_form(&report)?;
    let betti = 2 + 2 * h11 - 2 * (report.h03 + h12);
    if betti != report.euler {
        return Err(Error::Inconsistent(format!(
            "Betti sum {betti} differs from Euler number {}",
            report.euler
        )));
    }
    Ok(report)
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Hodge numbers for a degree-`d` hypersurface in P(w0, ..., w4) missing
/// the singular locus of the ambient space. `h03 = dim S^(d-|w|)` and the
/// Euler number is read off the Hodge numbers.
pub fn hodge_weighted(d: u32, weights: &[u32], mu: usize, dim_ieq: usize) -> Result<HodgeReport> {
    if weights.len() != 5 || weights.contains(&0) {
        return Err(Error::InvalidInput(format!(
            "need 5 positive weights, got {weights:?}"
        )));
    }
    let total: i64 = weights.iter().map(|&w| w as i64).sum();
    let min_w = *weights.iter().min().expect("five weights") as i64;
    let di = d as i64;
    if di < total - min_w {
        return Err(Error::InvalidInput(format!(
            "degree {d} below |w| - min w = {}",
            total - min_w
        )));
    }
    let mut warnings = Vec::new();
    for i in 0..5 {
        if !d.is_multiple_of(weights[i]) {
            warnings.push(format!("weight {} does not divide degree {d}", weights[i]));
        }
        for j in i + 1..5 {
            if gcd(weights[i], weights[j]) != 1 {
                warnings.push(format!(
                    "weights {} and {} are not coprime",
                    weights[i], weights[j]
                ));
            }
        }
    }
    let n = dim_graded(weights, 2 * di - total) as i64;
    let dim = dim_ieq as i64;
    if dim > n {
        return Err(Error::InvalidInput(format!(
            "dim I_eq = {dim} exceeds dim S^D = {n}"
        )));
    }
    let jac: i64 = weights
        .iter()
        .map(|&w| dim_graded(weights, di + w as i64 - total) as i64)
        .sum();
    let mu_i = mu as i64;
    let h11 = dim - n + 12 * mu_i + 1;
    let h12 = dim - jac;
    let h03 = dim_graded(weights, di - total) as i64;
    let delta = dim - (n - 11 * mu_i);
    let report = HodgeReport {
        d,
        weights: weights.to_vec(),
        mu,
        delta,
        dim_ieq,
        h11,
        h12,
        h03,
        h12_smooth: n - jac,
        euler: 2 + 2 * h11 - 2 * (h03 + h12),
        q_factorial: delta == 0,
        field_used: None,
        completeness_certified: false,
        warnings,
    };
    non_negative("delta", delta)?;
    non_negative("h11", h11)?;
    non_negative("h12", h12)?;
    check_defect_form(&report)?;
    if weights.iter().all(|&w| w == 1) && report.euler != euler_p4(di, mu_i) {
        return Err(Error::Inconsistent(format!(
            "Betti sum {} differs from Euler number {}",
            report.euler,
            euler_p4(di, mu_i)
        )));
    }
    Ok(report)
}

/// Dispatches to [`hodge_p4`] for unit weights and to [`hodge_weighted`]
/// otherwise.
pub fn hodge(d: u32, weights: &[u32], mu: usize, dim_ieq: usize) -> Result<HodgeReport> {
    if weights.len() == 5 && weights.iter().all(|&w| w == 1) {
        hodge_p4(d, mu, dim_ieq)
    } else {
        hodge_weighted(d, weights, mu, dim_ieq)
    }
}
