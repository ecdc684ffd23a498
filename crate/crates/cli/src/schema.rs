//! JSON document schemas for the CLI.
//!
//! Input systems: `{"A": [[a11,a12],[a21,a22]], "B": [[...]], "C": [c1,c2]}`
//! with an optional `"tol": {"residual":…, "rank":…, "det":…}` override.
//! Results: `{"status", "branch", "det_b", "solutions", "theta1_values",
//! "message"}` with absent fields omitted. Angles are radians at full
//! precision.

use serde::{Deserialize, Serialize};
use trigsolve::{Mat2, SolutionSet, SolveError, SolveReport, ToleranceConfig, TrigSystem, Vec2};

#[derive(Debug, Deserialize)]
pub struct SystemDoc {
    #[serde(rename = "A")]
    pub a: [[f64; 2]; 2],
    #[serde(rename = "B")]
    pub b: [[f64; 2]; 2],
    #[serde(rename = "C")]
    pub c: [f64; 2],
    #[serde(default)]
    pub tol: Option<TolDoc>,
}

#[derive(Debug, Deserialize)]
pub struct TolDoc {
    pub residual: Option<f64>,
    pub rank: Option<f64>,
    pub det: Option<f64>,
}

impl SystemDoc {
    pub fn into_parts(self) -> Result<(TrigSystem, ToleranceConfig), SolveError> {
        let system = TrigSystem::new(
            Mat2::new(self.a[0][0], self.a[0][1], self.a[1][0], self.a[1][1]),
            Mat2::new(self.b[0][0], self.b[0][1], self.b[1][0], self.b[1][1]),
            Vec2::new(self.c[0], self.c[1]),
        )?;
        let mut tol = ToleranceConfig::default();
        if let Some(doc) = self.tol {
            if let Some(residual) = doc.residual {
                tol.eps_residual = residual;
            }
            if let Some(rank) = doc.rank {
                tol.eps_rank = rank;
            }
            if let Some(det) = doc.det {
                tol.eps_det = det;
            }
        }
        tol.validate()?;
        Ok((system, tol))
    }
}

#[derive(Debug, Serialize)]
pub struct SolutionDoc {
    pub theta1: f64,
    pub theta2: f64,
    pub residual: f64,
}

#[derive(Debug, Serialize)]
pub struct ResultDoc {
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub det_b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solutions: Option<Vec<SolutionDoc>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta1_values: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl ResultDoc {
    pub fn from_report(report: &SolveReport) -> Self {
        let branch = Some(report.branch.as_str());
        let det_b = Some(report.det_b);
        match &report.solutions {
            SolutionSet::Finite(list) => Self {
                status: "finite",
                branch,
                det_b,
                solutions: Some(
                    list.iter()
                        .map(|s| SolutionDoc {
                            theta1: s.theta1,
                            theta2: s.theta2,
                            residual: s.residual,
                        })
                        .collect(),
                ),
                theta1_values: None,
                message: None,
            },
            SolutionSet::Theta2Family { theta1 } => Self {
                status: "theta2_family",
                branch,
                det_b,
                solutions: None,
                theta1_values: Some(theta1.clone()),
                message: None,
            },
            SolutionSet::Theta1Family => Self {
                status: "theta1_family",
                branch,
                det_b,
                solutions: None,
                theta1_values: None,
                message: None,
            },
            SolutionSet::Empty => Self {
                status: "empty",
                branch,
                det_b,
                solutions: None,
                theta1_values: None,
                message: None,
            },
        }
    }

    pub fn from_error(message: String) -> Self {
        Self {
            status: "error",
            branch: None,
            det_b: None,
            solutions: None,
            theta1_values: None,
            message: Some(message),
        }
    }

    pub fn n_solutions(&self) -> usize {
        self.solutions
            .as_ref()
            .map(Vec::len)
            .or_else(|| self.theta1_values.as_ref().map(Vec::len))
            .unwrap_or(0)
    }

    pub fn max_residual(&self) -> f64 {
        self.solutions
            .as_ref()
            .map(|list| list.iter().fold(0.0f64, |acc, s| acc.max(s.residual)))
            .unwrap_or(0.0)
    }

    /// One CSV row under the `index,status,branch,n_solutions,max_residual,micros` header.
    pub fn csv_row(&self, index: usize, micros: f64) -> String {
        format!(
            "{index},{},{},{},{:e},{micros:.3}",
            self.status,
            self.branch.unwrap_or(""),
            self.n_solutions(),
            self.max_residual(),
        )
    }
}

pub const CSV_HEADER: &str = "index,status,branch,n_solutions,max_residual,micros";

/// Exit code conventions: 0 solved (finite or family), 2 input error,
/// 3 no solutions.
pub fn exit_code_for(report: &SolveReport) -> i32 {
    match report.solutions {
        SolutionSet::Empty => 3,
        _ => 0,
    }
}
