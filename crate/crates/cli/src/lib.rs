//! Job files, report formats and the command pipeline behind the
//! `triple-defect` binary.

pub mod job;
pub mod report;

use triple_defect_core::{
    defect, find_singular_points_with_threads, hodge::dim_graded, hodge::hodge, triple_cover,
    verify_triple_point, ConeSmoothness, Error, Polynomial, ProjectivePoint, Result,
    TriplePointCertificate, DEFAULT_K_MAX,
};

pub use job::{parse_point, parse_weights, JobOptions, JobSpec, Mode};
pub use report::{DefectReport, Output, Report, VerifiedPoint};

/// Command-line settings that override or extend the job file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub cross_validate: bool,
    pub k_max: Option<u32>,
    pub threads: usize,
    pub homogenize_var: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            cross_validate: false,
            k_max: None,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            homogenize_var: None,
        }
    }
}

struct Settings {
    cross_validate: bool,
    k_max: u32,
    threads: usize,
}

fn merge(job: &mut JobSpec, cfg: &RunConfig) -> Settings {
    if cfg.homogenize_var.is_some() {
        job.options.homogenize_var = cfg.homogenize_var.clone();
    }
    Settings {
        cross_validate: cfg.cross_validate || job.options.cross_validate,
        k_max: cfg.k_max.or(job.options.k_max).unwrap_or(DEFAULT_K_MAX),
        threads: cfg.threads.max(1),
    }
}

/// Exit status for an error: 1 for a failed certification, 2 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_certification_failure() {
        1
    } else {
        2
    }
}

/// Listed points if any, otherwise an exhaustive scan over a finite field.
fn locate(
    f: &Polynomial,
    listed: Vec<ProjectivePoint>,
    threads: usize,
) -> Result<(Vec<ProjectivePoint>, bool)> {
    if !listed.is_empty() {
        return Ok((listed, false));
    }
    if !f.ring().field().is_prime_field() {
        return Err(Error::InvalidInput(
            "over Q the singular points cannot be enumerated; list them with point=".into(),
        ));
    }
    Ok((find_singular_points_with_threads(f, threads)?, true))
}

fn certify(
    f: &Polynomial,
    points: &[ProjectivePoint],
    k_max: u32,
) -> Result<Vec<TriplePointCertificate>> {
    points
        .iter()
        .map(|p| verify_triple_point(f, p, k_max))
        .collect()
}

fn analyze_with(
    f: &Polynomial,
    points: Vec<ProjectivePoint>,
    complete: bool,
    s: &Settings,
) -> Result<Report> {
    let certs = certify(f, &points, s.k_max)?;
    let points: Vec<ProjectivePoint> = certs.iter().map(|c| c.point.clone()).collect();
    let r = defect(f, &certs, s.cross_validate)?;
    let d = f.homogeneous_degree()?;
    let h =
        hodge(d, f.ring().weights(), r.mu, r.dim_ieq)?.with_provenance(f.ring().field(), complete);
    Ok(Report::new(&points, &r, &h))
}

/// Runs `mode` on `job`. The job's own `mode=` line, if present, must agree.
pub fn run(mode: Mode, mut job: JobSpec, cfg: &RunConfig) -> Result<Output> {
    if let Some(m) = job.mode {
        if m != mode {
            return Err(Error::InvalidInput(format!(
                "job file asks for {m:?} but the command is {mode:?}"
            )));
        }
    }
    let s = merge(&mut job, cfg);
    if mode == Mode::TripleCover {
        return triple_cover_cmd(&job, &s);
    }
    let (ring, f) = job.build(5)?;
    f.homogeneous_degree()?;
    let listed = job.build_points(&ring)?;
    match mode {
        Mode::Analyze => {
            let (points, complete) = locate(&f, listed, s.threads)?;
            Ok(Output::Report(analyze_with(&f, points, complete, &s)?))
        }
        Mode::FindSingular => {
            if !ring.field().is_prime_field() {
                return Err(Error::InfiniteFieldScan);
            }
            let points = find_singular_points_with_threads(&f, s.threads)?;
            Ok(Output::Points {
                points: points.iter().map(report::point_json).collect(),
                completeness_certified: true,
            })
        }
        Mode::Verify => {
            if listed.is_empty() {
                return Err(Error::InvalidInput(
                    "verify needs at least one point=".into(),
                ));
            }
            let certs = certify(&f, &listed, s.k_max)?;
            Ok(Output::Verified(
                certs
                    .iter()
                    .map(|c| VerifiedPoint {
                        point: report::point_json(&c.point),
                        chart: c.chart.index(),
                        cone_saturation_degree: match c.cone_smoothness {
                            ConeSmoothness::CertifiedSmooth(k) => k,
                            _ => unreachable!("certificates carry smooth cones"),
                        },
                        partials_rank: c.q_matrix.rank(),
                    })
                    .collect(),
            ))
        }
        Mode::Defect => {
            let (points, _) = locate(&f, listed, s.threads)?;
            let certs = certify(&f, &points, s.k_max)?;
            let points: Vec<_> = certs.iter().map(|c| c.point.clone()).collect();
            Ok(Output::Defect(DefectReport::new(
                &points,
                &defect(&f, &certs, s.cross_validate)?,
            )))
        }
        Mode::Dims => Err(Error::InvalidInput(
            "dims takes --weights and --degree, not a job".into(),
        )),
        Mode::TripleCover => unreachable!(),
    }
}

/// Builds `x4^3 - g`, lifts or finds the triple points and analyzes the cover.
fn triple_cover_cmd(job: &JobSpec, s: &Settings) -> Result<Output> {
    let (ring, g) = job.build(4)?;
    let cover = triple_cover(&g)?;
    let listed = job.build_points(&ring)?;
    let (points, complete) = if listed.is_empty() {
        if !ring.field().is_prime_field() {
            return Err(Error::InvalidInput(
                "over Q the branch surface's triple points must be listed with point=".into(),
            ));
        }
        (cover.singular_points(s.threads)?, true)
    } else {
        let cover = cover.clone().with_points(&listed)?;
        (cover.lifted_points(), false)
    };
    let mut report = analyze_with(&cover.cover_f, points, complete, s)?;
    let weights: Vec<String> = cover
        .ring()
        .weights()
        .iter()
        .map(|w| w.to_string())
        .collect();
    report.notes.push(format!(
        "cover: F = {}^3 - g in P({}); I_eq is taken in this weighted ring",
        cover.ring().names()[4],
        weights.join(",")
    ));
    Ok(Output::Report(report))
}

pub fn dims(weights: &[u32], degree: i64) -> Result<Output> {
    if weights.is_empty() || weights.contains(&0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    Ok(Output::Dims(dim_graded(weights, degree)))
}
