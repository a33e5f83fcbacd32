//! Serializable outputs and their human-readable tables.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use triple_defect_core::{DefectResult, HodgeReport, ProjectivePoint, Scalar};

/// Integral coordinates become JSON numbers, anything else a string.
pub fn scalar_json(s: &Scalar) -> Value {
    match s.to_integer().and_then(|n| i64::try_from(n).ok()) {
        Some(n) => Value::from(n),
        None => Value::from(s.to_string()),
    }
}

pub fn point_json(p: &ProjectivePoint) -> Value {
    Value::Array(p.coordinates().iter().map(scalar_json).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub degree: u32,
    pub weights: Vec<u32>,
    pub field: String,
    pub mu: usize,
    pub points: Vec<Value>,
    pub certificates_ok: bool,
    pub defect_degree: i64,
    #[serde(rename = "dim_S_D")]
    pub dim_s_d: usize,
    #[serde(rename = "dim_Ieq")]
    pub dim_ieq: usize,
    pub delta: i64,
    pub h11: i64,
    pub h12: i64,
    pub h03: i64,
    pub h12_smooth: i64,
    pub euler: i64,
    pub q_factorial: bool,
    pub completeness_certified: bool,
    pub method: String,
    /// Printed with the table only, never serialized.
    #[serde(skip)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(points: &[ProjectivePoint], defect: &DefectResult, hodge: &HodgeReport) -> Report {
        Report {
            degree: hodge.d,
            weights: hodge.weights.clone(),
            field: hodge.field_used.map(|f| f.to_string()).unwrap_or_default(),
            mu: hodge.mu,
            points: points.iter().map(point_json).collect(),
            certificates_ok: true,
            defect_degree: hodge.defect_degree(),
            dim_s_d: defect.dim_s,
            dim_ieq: hodge.dim_ieq,
            delta: hodge.delta,
            h11: hodge.h11,
            h12: hodge.h12,
            h03: hodge.h03,
            h12_smooth: hodge.h12_smooth,
            euler: hodge.euler,
            q_factorial: hodge.q_factorial,
            completeness_certified: hodge.completeness_certified,
            method: defect.method.as_str().to_string(),
            notes: hodge
                .warnings
                .iter()
                .map(|w| format!("warning: {w}"))
                .collect(),
        }
    }

    pub fn table(&self) -> String {
        let weights = self
            .weights
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let mut rows: Vec<(&str, String)> = vec![
            ("field", self.field.clone()),
            ("weights", weights),
            ("degree", self.degree.to_string()),
            ("mu", self.mu.to_string()),
            ("certificates_ok", self.certificates_ok.to_string()),
            (
                "completeness_certified",
                self.completeness_certified.to_string(),
            ),
            ("defect_degree", self.defect_degree.to_string()),
            ("dim_S_D", self.dim_s_d.to_string()),
            ("dim_Ieq", self.dim_ieq.to_string()),
            ("delta", self.delta.to_string()),
            ("h11", self.h11.to_string()),
            ("h12", self.h12.to_string()),
            ("h03", self.h03.to_string()),
            ("h12_smooth", self.h12_smooth.to_string()),
            ("euler", self.euler.to_string()),
            ("q_factorial", self.q_factorial.to_string()),
            ("method", self.method.clone()),
        ];
        rows.insert(4, ("points", points_inline(&self.points)));
        let mut out = String::new();
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<24}{v}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        out
    }
}

fn point_text(p: &Value) -> String {
    match p {
        Value::Array(cs) => {
            let parts: Vec<String> = cs
                .iter()
                .map(|c| match c {
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                })
                .collect();
            format!("({})", parts.join(":"))
        }
        other => other.to_string(),
    }
}

fn points_inline(points: &[Value]) -> String {
    if points.is_empty() {
        return "none".into();
    }
    points.iter().map(point_text).collect::<Vec<_>>().join(" ")
}

/// One certified point as reported by `verify`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifiedPoint {
    pub point: Value,
    pub chart: usize,
    pub cone_saturation_degree: u32,
    pub partials_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DefectReport {
    pub degree: i64,
    pub points: Vec<Value>,
    pub mu: usize,
    #[serde(rename = "dim_S_D")]
    pub dim_s_d: usize,
    pub rank: usize,
    #[serde(rename = "dim_Ieq")]
    pub dim_ieq: usize,
    pub delta: i64,
    pub method: String,
}

impl DefectReport {
    pub fn new(points: &[ProjectivePoint], r: &DefectResult) -> Self {
        DefectReport {
            degree: r.degree,
            points: points.iter().map(point_json).collect(),
            mu: r.mu,
            dim_s_d: r.dim_s,
            rank: r.rank,
            dim_ieq: r.dim_ieq,
            delta: r.delta,
            method: r.method.as_str().to_string(),
        }
    }
}

/// Whatever a command produces.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Report(Report),
    Points {
        points: Vec<Value>,
        completeness_certified: bool,
    },
    Verified(Vec<VerifiedPoint>),
    Defect(DefectReport),
    Dims(u64),
}

impl Output {
    pub fn to_json(&self) -> Value {
        match self {
            Output::Report(r) => serde_json::to_value(r).expect("plain data"),
            Output::Points { points, .. } => Value::Array(points.clone()),
            Output::Verified(v) => serde_json::to_value(v).expect("plain data"),
            Output::Defect(d) => serde_json::to_value(d).expect("plain data"),
            Output::Dims(n) => Value::from(*n),
        }
    }

    pub fn table(&self) -> String {
        match self {
            Output::Report(r) => r.table(),
            Output::Points {
                points,
                completeness_certified,
            } => {
                let mut out = format!("{} singular point(s)", points.len());
                if *completeness_certified {
                    out.push_str(" (exhaustive over the base field)");
                }
                out.push('\n');
                for p in points {
                    let _ = writeln!(out, "{}", point_text(p));
                }
                out
            }
            Output::Verified(v) => {
                let mut out = String::new();
                for e in v {
                    let _ = writeln!(
                        out,
                        "{}  ordinary triple point (chart x{}, cone saturates in degree {}, partials rank {})",
                        point_text(&e.point),
                        e.chart,
                        e.cone_saturation_degree,
                        e.partials_rank
                    );
                }
                out
            }
            Output::Defect(d) => {
                let mut out = String::new();
                let rows = [
                    ("degree", d.degree.to_string()),
                    ("points", points_inline(&d.points)),
                    ("mu", d.mu.to_string()),
                    ("dim_S_D", d.dim_s_d.to_string()),
                    ("rank", d.rank.to_string()),
                    ("dim_Ieq", d.dim_ieq.to_string()),
                    ("delta", d.delta.to_string()),
                    ("method", d.method.clone()),
                ];
                for (k, v) in rows {
                    let _ = writeln!(out, "{k:<24}{v}");
                }
                out
            }
            Output::Dims(n) => format!("{n}\n"),
        }
    }
}
