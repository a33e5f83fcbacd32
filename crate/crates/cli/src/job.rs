//! Line-oriented `key=value` job files.
//!
//! ```text
//! # quartic with a triple point
//! field=Fp:7
//! weights=1,1,1,1,1
//! polynomial=x0*(x1^3 + x2^3 + x3^3 + x4^3) + x1^4 + x2^4 + x3^4 + x4^4
//! point=1,0,0,0,0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. `point` may repeat
//! and accepts `1,0,0,0,0` or `(1:0:0:0:0)`.

use std::str::FromStr;

use triple_defect_core::{parse, Error, FieldSpec, Polynomial, ProjectivePoint, Result, Ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Analyze,
    FindSingular,
    Verify,
    Defect,
    TripleCover,
    Dims,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "analyze" => Mode::Analyze,
            "find-singular" => Mode::FindSingular,
            "verify" => Mode::Verify,
            "defect" => Mode::Defect,
            "triple-cover" => Mode::TripleCover,
            "dims" => Mode::Dims,
            other => return Err(Error::InvalidInput(format!("unknown mode `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JobOptions {
    pub cross_validate: bool,
    pub k_max: Option<u32>,
    /// Affine input: homogenize with this variable to the top term degree.
    pub homogenize_var: Option<String>,
}

/// A parsed but not yet interpreted job file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    pub field: FieldSpec,
    pub weights: Option<Vec<u32>>,
    pub polynomial: String,
    pub points: Vec<String>,
    pub mode: Option<Mode>,
    pub options: JobOptions,
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::InvalidInput(format!(
            "{key}: expected true or false, got `{v}`"
        ))),
    }
}

pub fn parse_weights(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|w| {
            w.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidInput(format!("bad weight `{}`", w.trim())))
        })
        .collect()
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<JobSpec> {
        let mut field = None;
        let mut weights = None;
        let mut polynomial: Option<String> = None;
        let mut points = Vec::new();
        let mut mode = None;
        let mut options = JobOptions::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::InvalidInput(format!("line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "field" => field = Some(value.parse::<FieldSpec>()?),
                "weights" => weights = Some(parse_weights(value)?),
                "polynomial" => {
                    // repeated lines continue the polynomial
                    match &mut polynomial {
                        Some(p) => {
                            p.push(' ');
                            p.push_str(value);
                        }
                        None => polynomial = Some(value.to_string()),
                    }
                }
                "point" => points.push(value.to_string()),
                "mode" => mode = Some(value.parse()?),
                "cross_validate" => options.cross_validate = parse_bool(key, value)?,
                "k_max" => {
                    options.k_max = Some(value.parse().map_err(|_| {
                        Error::InvalidInput(format!("k_max: expected an integer, got `{value}`"))
                    })?)
                }
                "homogenize" => options.homogenize_var = Some(value.to_string()),
                other => {
                    return Err(Error::InvalidInput(format!(
                        "line {}: unknown key `{other}`",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(JobSpec {
            field: field.ok_or_else(|| Error::InvalidInput("missing field=".into()))?,
            weights,
            polynomial: polynomial
                .ok_or_else(|| Error::InvalidInput("missing polynomial=".into()))?,
            points,
            mode,
            options,
        })
    }

    /// Builds the ring with `default_nvars` unit weights unless `weights=`
    /// is given, and the (possibly homogenized) polynomial.
    pub fn build(&self, default_nvars: usize) -> Result<(Ring, Polynomial)> {
        let weights = self
            .weights
            .clone()
            .unwrap_or_else(|| vec![1; default_nvars]);
        let ring = Ring::weighted(&weights, self.field)?;
        let mut f = parse(&self.polynomial, &ring)?;
        if let Some(var) = &self.options.homogenize_var {
            let idx = ring
                .var_index(var)
                .ok_or_else(|| Error::UnknownVariable(var.clone()))?;
            let top = f.max_degree().ok_or(Error::ZeroPolynomial)?;
            f = f.homogenize(top, idx)?;
        }
        Ok((ring, f))
    }

    pub fn build_points(&self, ring: &Ring) -> Result<Vec<ProjectivePoint>> {
        self.points.iter().map(|p| parse_point(p, ring)).collect()
    }
}

/// Reads `1,0,-2,1/3,0` or `(1:0:-2:1/3:0)`; each coordinate is any
/// constant of the polynomial grammar.
pub fn parse_point(text: &str, ring: &Ring) -> Result<ProjectivePoint> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    let sep = if inner.contains(':') { ':' } else { ',' };
    let zero_exps = triple_defect_core::Monomial::one(ring.nvars());
    let coords = inner
        .split(sep)
        .map(|c| {
            let p = parse(c.trim(), ring)?;
            if p.terms().any(|(m, _)| m != &zero_exps) {
                return Err(Error::InvalidPoint(format!(
                    "coordinate `{}` is not a constant",
                    c.trim()
                )));
            }
            Ok(p.coefficient(&zero_exps))
        })
        .collect::<Result<Vec<_>>>()?;
    if coords.len() != ring.nvars() {
        return Err(Error::InvalidPoint(format!(
            "`{t}` has {} coordinates, expected {}",
            coords.len(),
            ring.nvars()
        )));
    }
    ProjectivePoint::new(ring, coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_job() {
        let job = JobSpec::parse(
            "# comment\nfield=Fp:7\n\nweights=1,1,1,1,2\npolynomial=x4^3 - x0^6\npolynomial=- x1^6\n\
             point=1,0,0,0,1\npoint=(1:0:0:0:-1)\ncross_validate=true\nk_max=6\nmode=defect\n",
        )
        .unwrap();
        assert_eq!(job.weights, Some(vec![1, 1, 1, 1, 2]));
        assert_eq!(job.points.len(), 2);
        assert_eq!(job.mode, Some(Mode::Defect));
        assert!(job.options.cross_validate);
        assert_eq!(job.options.k_max, Some(6));
        let (ring, f) = job.build(5).unwrap();
        assert_eq!(f.homogeneous_degree().unwrap(), 6);
        let pts = job.build_points(&ring).unwrap();
        assert_eq!(pts[0].to_string(), "(1:0:0:0:1)");
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(JobSpec::parse("field=Fp:7").is_err());
        assert!(JobSpec::parse("polynomial=x0").is_err());
        assert!(JobSpec::parse("field=Fp:7\npolynomial=x0\ncolour=red").is_err());
        assert!(JobSpec::parse("field=Fp:8\npolynomial=x0").is_err());
        assert!(JobSpec::parse("field=Fp:7\npolynomial=x0\njunk").is_err());
    }

    #[test]
    fn homogenizes_to_top_degree() {
        let job =
            JobSpec::parse("field=Q\nweights=1,1,1,1\npolynomial=x1^3 + x2 + 1\nhomogenize=x0")
                .unwrap();
        let (ring, f) = job.build(4).unwrap();
        assert_eq!(f, parse("x1^3 + x0^2*x2 + x0^3", &ring).unwrap());
    }

    #[test]
    fn points_over_q() {
        let ring = Ring::standard(5, FieldSpec::rationals());
        let p = parse_point("(2:1/2:0:0:-4)", &ring).unwrap();
        assert_eq!(p.to_string(), "(1:1/4:0:0:-2)");
        assert!(parse_point("1,0,0", &ring).is_err());
        assert!(parse_point("1,x1,0,0,0", &ring).is_err());
    }
}
