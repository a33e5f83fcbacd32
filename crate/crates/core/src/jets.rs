//! Charts at projective points and jets of order ≤ 2.
//!
//! A 2-jet at a point is the class of a local function modulo the cube of
//! the maximal ideal: its Taylor coefficients of order 0, 1 and 2 in the
//! local coordinates. With four local coordinates that is
//! 1 + 4 + 10 = 15 numbers, stored in the fixed order
//!
//! ```text
//! 1; y1, y2, y3, y4; y1^2, y1*y2, y1*y3, y1*y4, y2^2, y2*y3, y2*y4, y3^2, y3*y4, y4^2
//! ```

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Scalar};
use crate::locus::ProjectivePoint;
use crate::poly::{Monomial, Polynomial, Ring};

/// An affine chart `x_c = 1` around a point with `w_c = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    center: ProjectivePoint,
    index: usize,
    local: Vec<usize>,
}

impl Chart {
    /// The center, scaled so that coordinate `index` equals 1.
    pub fn center(&self) -> &ProjectivePoint {
        &self.center
    }

    pub fn index(&self) -> usize {
        self.index
    }

    /// Ring variables serving as local coordinates `y1, y2, ...`.
    pub fn local_variables(&self) -> &[usize] {
        &self.local
    }

    pub fn local_dimension(&self) -> usize {
        self.local.len()
    }
}

/// Picks the lowest-index weight-1 coordinate that is nonzero at `pt` and
/// rescales `pt` by the weighted action so that coordinate becomes 1.
pub fn choose_chart(pt: &ProjectivePoint, ring: &Ring) -> Result<Chart> {
    let w = ring.weights();
    let coords = pt.coordinates();
    if coords.len() != w.len() {
        return Err(Error::RingMismatch(format!(
            "point {pt} has {} coordinates, ring has {} variables",
            coords.len(),
            w.len()
        )));
    }
    let index = (0..w.len())
        .find(|&c| w[c] == 1 && !coords[c].is_zero())
        .ok_or(Error::NoSmoothChart)?;
    let lambda = coords[index].inv().expect("nonzero");
    let scaled = coords
        .iter()
        .zip(w)
        .map(|(x, &wj)| x * &lambda.pow(wj as u64))
        .collect();
    let center = ProjectivePoint::new(ring, scaled)?;
    let local = (0..w.len()).filter(|&j| j != index).collect();
    Ok(Chart {
        center,
        index,
        local,
    })
}

/// Number of Taylor coefficients of order ≤ 2 in `m` variables.
pub const fn jet_len(m: usize) -> usize {
    1 + m + m * (m + 1) / 2
}

/// Multi-indices of the jet slots, in storage order. Each entry lists the
/// local variable positions (0-based) of the monomial.
pub fn jet_slots(m: usize) -> Vec<Vec<usize>> {
    let mut slots = vec![vec![]];
    slots.extend((0..m).map(|i| vec![i]));
    for i in 0..m {
        for j in i..m {
            slots.push(vec![i, j]);
        }
    }
    slots
}

/// Human-readable slot names: `1`, `y1`, ..., `y1^2`, `y1*y2`, ...
pub fn jet_labels(m: usize) -> Vec<String> {
    jet_slots(m)
        .into_iter()
        .map(|s| match s.as_slice() {
            [] => "1".to_string(),
            [i] => format!("y{}", i + 1),
            [i, j] if i == j => format!("y{}^2", i + 1),
            [i, j] => format!("y{}*y{}", i + 1, j + 1),
            _ => unreachable!(),
        })
        .collect()
}

/// Taylor coefficients of order ≤ 2 at a chart center.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Jet2Vector(Vec<Scalar>);

impl Jet2Vector {
    pub fn coefficients(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coefficients(self) -> Vec<Scalar> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn constant(&self) -> &Scalar {
        &self.0[0]
    }

    /// True when the constant and linear coefficients vanish, i.e. the
    /// function has multiplicity ≥ 2 at the center.
    pub fn vanishes_to_order_two(&self, m: usize) -> bool {
        self.0[..1 + m].iter().all(Scalar::is_zero)
    }
}

/// `∂^α p / α!` at the chart center, for a multi-index given as a list
/// of local variable positions (repetitions allowed).
pub(crate) fn taylor_coefficient(p: &Polynomial, chart: &Chart, slot: &[usize]) -> Scalar {
    let field = p.ring().field();
    let mut d = p.clone();
    for &k in slot {
        d = d.partial_derivative(chart.local[k]);
    }
    let value = d.evaluate(chart.center.coordinates());
    // α! for |α| ≤ 3; nonzero since char ≥ 5
    let mut factorial = 1u64;
    let mut run = 1u64;
    for w in slot.windows(2) {
        if w[0] == w[1] {
            run += 1;
            factorial *= run;
        } else {
            run = 1;
        }
    }
    if factorial == 1 {
        value
    } else {
        value
            .checked_div(&field.from_u64(factorial))
            .expect("factorial invertible in characteristic >= 5")
    }
}

/// The 2-jet of `p` at the chart center, from derivatives evaluated there.
pub fn jet2(p: &Polynomial, chart: &Chart) -> Jet2Vector {
    let slots = jet_slots(chart.local_dimension());
    Jet2Vector(
        slots
            .iter()
            .map(|s| taylor_coefficient(p, chart, s))
            .collect(),
    )
}

fn binomial_mod(n: u32, k: usize, ring: &Ring) -> Scalar {
    let k = k as u32;
    if k > n {
        return ring.field().zero();
    }
    let mut acc: u64 = 1;
    for i in 0..k as u64 {
        acc = acc * (n as u64 - i) / (i + 1);
    }
    ring.field().from_u64(acc)
}

/// Jet matrix of a list of monomials (one column per monomial).
///
/// Uses the binomial expansion of `(c_j + y_j)^a_j` directly, so no
/// polynomial is ever differentiated.
pub fn jet_matrix(monomials: &[Monomial], ring: &Ring, chart: &Chart) -> Matrix {
    let m = chart.local_dimension();
    let slots = jet_slots(m);
    let field = ring.field();
    let coords = chart.center.coordinates();
    Matrix::from_fn(field, slots.len(), monomials.len(), |s, col| {
        let exps = monomials[col].exponents();
        let mut beta = vec![0usize; m];
        for &k in &slots[s] {
            beta[k] += 1;
        }
        let mut acc = field.one();
        for (k, &j) in chart.local.iter().enumerate() {
            let a = exps[j];
            if (beta[k] as u32) > a {
                return field.zero();
            }
            acc = acc * binomial_mod(a, beta[k], ring) * coords[j].pow((a - beta[k] as u32) as u64);
        }
        acc
    })
}

/// Rows are the 2-jets of `∂F/∂x_i`. Errors if any row has a nonzero
/// constant or linear coefficient.
pub fn partial_jets(f: &Polynomial, chart: &Chart) -> Result<Matrix> {
    let ring = f.ring();
    let m = chart.local_dimension();
    let mut rows = Vec::with_capacity(ring.nvars());
    for i in 0..ring.nvars() {
        let jet = jet2(&f.partial_derivative(i), chart);
        if !jet.vanishes_to_order_two(m) {
            return Err(Error::NotATriplePoint(chart.center.to_string()));
        }
        rows.push(jet.into_coefficients());
    }
    Ok(Matrix::from_rows(ring.field(), jet_len(m), rows))
}
