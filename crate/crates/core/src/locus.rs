//! Singular points over prime fields and certification of ordinary triple points.

use std::cmp::Ordering;
use std::fmt;
use std::thread;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Matrix, Scalar};
use crate::jets::{self, choose_chart, jet_len, Chart};
use crate::poly::{local_ring, AffinePolynomial, Monomial, Polynomial, Ring};

/// Default degree bound for the tangent-cone saturation test.
pub const DEFAULT_K_MAX: u32 = 8;

/// A point of (weighted) projective space.
///
/// [`ProjectivePoint::new`] scales the first nonzero weight-1 coordinate
/// to 1, so two points of the same ring are equal iff their coordinates
/// agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    pub fn new(ring: &Ring, coords: Vec<Scalar>) -> Result<Self> {
        let w = ring.weights();
        if coords.len() != w.len() {
            return Err(Error::InvalidPoint(format!(
                "{} coordinates for a ring with {} variables",
                coords.len(),
                w.len()
            )));
        }
        if coords.iter().any(|c| c.field() != ring.field()) {
            return Err(Error::InvalidPoint("coordinate from another field".into()));
        }
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::InvalidPoint("all coordinates are zero".into()));
        }
        let Some(c) = (0..w.len()).find(|&c| w[c] == 1 && !coords[c].is_zero()) else {
            // no weight-1 chart; such points are kept as given
            return Ok(ProjectivePoint { coords });
        };
        let lambda = coords[c].inv().expect("nonzero");
        let coords = coords
            .iter()
            .zip(w)
            .map(|(x, &wj)| x * &lambda.pow(wj as u64))
            .collect();
        Ok(ProjectivePoint { coords })
    }

    /// Integer coordinates mapped into the ring's field.
    pub fn from_i64(ring: &Ring, coords: &[i64]) -> Result<Self> {
        let f = ring.field();
        ProjectivePoint::new(ring, coords.iter().map(|&c| f.from_i64(c)).collect())
    }

    /// Coordinates taken verbatim, without normalization.
    pub fn unnormalized(coords: Vec<Scalar>) -> Self {
        ProjectivePoint { coords }
    }

    pub fn coordinates(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

fn cmp_scalar(a: &Scalar, b: &Scalar) -> Ordering {
    match (a.residue_value(), b.residue_value()) {
        (Some(x), Some(y)) => x.cmp(&y),
        _ => a.as_rational().cmp(&b.as_rational()),
    }
}

impl PartialOrd for ProjectivePoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ProjectivePoint {
    /// Lexicographic on coordinates; residues compare in `[0, p)`.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match cmp_scalar(a, b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match c.residue_value() {
                Some(v) => v.to_string(),
                None => c.to_string(),
            })
            .collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// Residue-level evaluator used by the exhaustive scan.
struct ModEval {
    p: u64,
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModEval {
    fn new(poly: &Polynomial, p: u64) -> Self {
        let terms = poly
            .terms()
            .map(|(m, c)| {
                (
                    m.exponents().to_vec(),
                    c.residue_value().expect("prime field"),
                )
            })
            .collect();
        ModEval { p, terms }
    }

    fn eval(&self, powers: &[Vec<u64>]) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for (exps, c) in &self.terms {
            let mut v = *c;
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    v = v * powers[j][e as usize] % p;
                    if v == 0 {
                        break;
                    }
                }
            }
            acc += v;
        }
        acc % p
    }
}

struct Scanner {
    p: u64,
    max_exp: usize,
    f: ModEval,
    partials: Vec<ModEval>,
}

impl Scanner {
    fn new(f: &Polynomial, p: u64) -> Self {
        let max_exp = f
            .terms()
            .flat_map(|(m, _)| m.exponents().iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let partials = (0..f.ring().nvars())
            .map(|i| ModEval::new(&f.partial_derivative(i), p))
            .collect();
        Scanner {
            p,
            max_exp,
            f: ModEval::new(f, p),
            partials,
        }
    }

    fn is_singular(&self, point: &[u64], powers: &mut [Vec<u64>]) -> bool {
        for (row, &x) in powers.iter_mut().zip(point) {
            row[0] = 1;
            for k in 1..=self.max_exp {
                row[k] = row[k - 1] * x % self.p;
            }
        }
        self.f.eval(powers) == 0 && self.partials.iter().all(|d| d.eval(powers) == 0)
    }
}

/// One block of the enumeration: coordinates not in `free` are fixed.
struct Block {
    template: Vec<u64>,
    free: Vec<usize>,
}

impl Block {
    fn size(&self, p: u64) -> u64 {
        p.pow(self.free.len() as u32)
    }

    fn point(&self, mut index: u64, p: u64, out: &mut [u64]) {
        out.copy_from_slice(&self.template);
        for &j in self.free.iter().rev() {
            out[j] = index % p;
            index /= p;
        }
    }
}

/// All points of the (weighted) projective space over F_p where `F` and all
/// of its partials vanish, sorted. Uses all available cores.
pub fn find_singular_points(f: &Polynomial) -> Result<Vec<ProjectivePoint>> {
    let threads = thread::available_parallelism().map_or(1, |n| n.get());
    find_singular_points_with_threads(f, threads)
}

/// As [`find_singular_points`], with an explicit worker count. The result
/// does not depend on `threads`.
///
/// Points are visited chart by chart: for each weight-1 coordinate `c`,
/// `x_c = 1`, earlier weight-1 coordinates are 0, everything else ranges
/// over F_p. Each point with a weight-1 chart is visited exactly once.
pub fn find_singular_points_with_threads(
    f: &Polynomial,
    threads: usize,
) -> Result<Vec<ProjectivePoint>> {
    let ring = f.ring();
    let p = ring
        .field()
        .characteristic()
        .ok_or(Error::InfiniteFieldScan)?;
    f.homogeneous_degree()?;
    let w = ring.weights();
    let n = w.len();
    let scanner = Scanner::new(f, p);

    let unit: Vec<usize> = (0..n).filter(|&j| w[j] == 1).collect();
    let blocks: Vec<Block> = unit
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let mut template = vec![0u64; n];
            template[c] = 1;
            let free = (0..n)
                .filter(|&j| j != c && !unit[..k].contains(&j))
                .collect();
            Block { template, free }
        })
        .collect();
    let heavy: Vec<usize> = (0..n).filter(|&j| w[j] > 1).collect();

    // points with every weight-1 coordinate zero have no smooth chart;
    // they must not be singular
    if !heavy.is_empty() {
        let outside = Block {
            template: vec![0; n],
            free: heavy,
        };
        let mut powers = vec![vec![0u64; scanner.max_exp + 1]; n];
        let mut pt = vec![0u64; n];
        for idx in 1..outside.size(p) {
            outside.point(idx, p, &mut pt);
            if scanner.is_singular(&pt, &mut powers) {
                let coords = pt.iter().map(|&v| ring.field().from_u64(v)).collect();
                return Err(Error::SingularOutsideCharts(
                    ProjectivePoint::unnormalized(coords).to_string(),
                ));
            }
        }
    }

    // split the largest block's first free coordinate across workers
    let mut work: Vec<(usize, u64, u64)> = Vec::new();
    for (b, block) in blocks.iter().enumerate() {
        let size = block.size(p);
        let chunks = (threads.max(1) as u64).min(size.max(1));
        let step = size.div_ceil(chunks);
        let mut start = 0;
        while start < size {
            work.push((b, start, (start + step).min(size)));
            start += step;
        }
    }
    let threads = threads.max(1).min(work.len().max(1));
    let scanner = &scanner;
    let blocks_ref = &blocks;
    let mut found: Vec<Vec<u64>> = thread::scope(|s| {
        let handles: Vec<_> = (0..threads)
            .map(|t| {
                let mine: Vec<_> = work.iter().skip(t).step_by(threads).copied().collect();
                s.spawn(move || {
                    let mut powers = vec![vec![0u64; scanner.max_exp + 1]; n];
                    let mut pt = vec![0u64; n];
                    let mut hits = Vec::new();
                    for (b, lo, hi) in mine {
                        let block = &blocks_ref[b];
                        for idx in lo..hi {
                            block.point(idx, p, &mut pt);
                            if scanner.is_singular(&pt, &mut powers) {
                                hits.push(pt.clone());
                            }
                        }
                    }
                    hits
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    found.sort();
    found
        .into_iter()
        .map(|pt| {
            let coords = pt.into_iter().map(|v| ring.field().from_u64(v)).collect();
            ProjectivePoint::new(ring, coords)
        })
        .collect()
}

/// Outcome of the tangent-cone smoothness test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeSmoothness {
    /// The partials generate every form of this degree, so they have no
    /// common zero over the algebraic closure.
    CertifiedSmooth(u32),
    /// The partials share this explicit zero.
    CertifiedSingular(Vec<Scalar>),
    /// Neither conclusion reached up to this degree bound.
    Undetermined(u32),
}

/// Saturation test for a cubic cone `C` in local coordinates: smooth iff the
/// ideal of its partials contains every form of some degree `k ≤ k_max`.
/// Failing that, look for an explicit common zero of the partials.
pub fn certify_cone_smooth(cubic: &AffinePolynomial, k_max: u32) -> Result<ConeSmoothness> {
    let c = cubic.as_polynomial();
    match c.weighted_degree() {
        Err(_) => return Err(Error::InvalidCubic("zero polynomial".into())),
        Ok(crate::poly::Degree::Homogeneous(3)) => {}
        Ok(_) => return Err(Error::InvalidCubic(format!("{c} is not a cubic form"))),
    }
    let ring = c.ring();
    let field = ring.field();
    let n = ring.nvars();
    let grads: Vec<Polynomial> = (0..n).map(|i| c.partial_derivative(i)).collect();
    for k in 2..=k_max.max(2) {
        let target = ring.monomial_basis(k as i64);
        let shifts = ring.monomial_basis(k as i64 - 2);
        let rows: Vec<Vec<Scalar>> = grads
            .iter()
            .flat_map(|g| shifts.iter().map(move |m| g.mul_monomial(m)))
            .map(|p| p.coefficient_vector(&target))
            .collect();
        let m = Matrix::from_rows(field, target.len(), rows);
        if m.rank() == target.len() {
            return Ok(ConeSmoothness::CertifiedSmooth(k));
        }
    }
    match common_zero(&grads, field) {
        Some(z) => Ok(ConeSmoothness::CertifiedSingular(z)),
        None => Ok(ConeSmoothness::Undetermined(k_max)),
    }
}

/// Exhaustive search of P^{n-1}(F_p); over ℚ a box of small integers.
fn common_zero(polys: &[Polynomial], field: FieldSpec) -> Option<Vec<Scalar>> {
    let n = polys[0].ring().nvars();
    let values: Vec<i64> = match field.characteristic() {
        Some(p) => (0..p as i64).collect(),
        None => (-3..=3).collect(),
    };
    let base = values.len() as u64;
    for lead in 0..n {
        let free = n - lead - 1;
        let total = base.pow(free as u32);
        for mut idx in 0..total {
            let mut pt = vec![field.zero(); n];
            pt[lead] = field.one();
            for j in (lead + 1..n).rev() {
                pt[j] = field.from_i64(values[(idx % base) as usize]);
                idx /= base;
            }
            if polys.iter().all(|g| g.evaluate(&pt).is_zero()) {
                return Some(pt);
            }
        }
    }
    None
}

/// Evidence that a point is an ordinary triple point of `F`.
#[derive(Debug, Clone)]
pub struct TriplePointCertificate {
    pub ring: Ring,
    pub point: ProjectivePoint,
    pub chart: Chart,
    /// Order-3 leading form of the local equation.
    pub cubic_form: AffinePolynomial,
    /// 2-jets of the partials of `F`, one row per variable.
    pub q_matrix: Matrix,
    /// Basis of functionals on 2-jets vanishing on the rows of `q_matrix`.
    pub annihilator: Matrix,
    pub cone_smoothness: ConeSmoothness,
}

/// Checks multiplicity exactly 3, a smooth tangent cone and independent
/// partial jets at `pt`, in that order.
pub fn verify_triple_point(
    f: &Polynomial,
    pt: &ProjectivePoint,
    k_max: u32,
) -> Result<TriplePointCertificate> {
    let ring = f.ring();
    f.homogeneous_degree()?;
    let chart = choose_chart(pt, ring)?;
    let point = chart.center().clone();
    let label = point.to_string();
    if !f.evaluate(point.coordinates()).is_zero() {
        return Err(Error::NotOnHypersurface(label));
    }
    if !jets::jet2(f, &chart).is_zero() {
        return Err(Error::MultiplicityTooLow(label));
    }

    let m = chart.local_dimension();
    let local = local_ring(m, ring.field());
    let mut terms = Vec::new();
    for i in 0..m {
        for j in i..m {
            for k in j..m {
                let coeff = jets::taylor_coefficient(f, &chart, &[i, j, k]);
                let mut e = vec![0u32; m];
                e[i] += 1;
                e[j] += 1;
                e[k] += 1;
                terms.push((Monomial::new(e), coeff));
            }
        }
    }
    let cubic = Polynomial::from_terms(&local, terms);
    if cubic.is_zero() {
        return Err(Error::MultiplicityTooHigh(label));
    }
    let cubic_form = AffinePolynomial::from_local(cubic);

    let cone_smoothness = certify_cone_smooth(&cubic_form, k_max)?;
    match cone_smoothness {
        ConeSmoothness::CertifiedSmooth(_) => {}
        ConeSmoothness::CertifiedSingular(_) => return Err(Error::ConeSingular(label)),
        ConeSmoothness::Undetermined(k_max) => {
            return Err(Error::ConeUndetermined {
                point: label,
                k_max,
            })
        }
    }

    let q_matrix = jets::partial_jets(f, &chart)?;
    if q_matrix.rank() != m {
        return Err(Error::PartialsDependent(label));
    }
    let annihilator = q_matrix.row_space_annihilator();
    debug_assert_eq!(annihilator.rows(), jet_len(m) - m);
    Ok(TriplePointCertificate {
        ring: ring.clone(),
        point,
        chart,
        cubic_form,
        q_matrix,
        annihilator,
        cone_smoothness,
    })
}
