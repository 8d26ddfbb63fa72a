use std::fmt::Write as _;

use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One evaluated check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub scene: String,
    pub point: Option<[f64; 4]>,
    /// Infinite when the check could not be evaluated; see `error`.
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Record {
    pub fn measured(
        name: impl Into<String>,
        scene: &str,
        point: Option<[f64; 4]>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Record {
            name: name.into(),
            scene: scene.to_string(),
            point,
            residual,
            tolerance,
            pass: residual <= tolerance,
            error: None,
        }
    }

    pub fn failed(
        name: impl Into<String>,
        scene: &str,
        point: Option<[f64; 4]>,
        tolerance: f64,
        error: String,
    ) -> Self {
        Record {
            name: name.into(),
            scene: scene.to_string(),
            point,
            residual: f64::INFINITY,
            tolerance,
            pass: false,
            error: Some(error),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryEntry {
    pub property: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub checks: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub seed: u64,
    pub records: Vec<Record>,
    pub summary: Vec<SummaryEntry>,
}

/// Property name without a bracketed qualifier: `a.b[c]` → `a.b`.
fn property_of(name: &str) -> &str {
    name.split('[').next().unwrap_or(name)
}

impl Report {
    pub fn new(seed: u64, records: Vec<Record>) -> Self {
        let mut summary: Vec<SummaryEntry> = Vec::new();
        for r in &records {
            let prop = property_of(&r.name);
            let entry = match summary.iter_mut().position(|e| e.property == prop) {
                Some(i) => &mut summary[i],
                None => {
                    summary.push(SummaryEntry {
                        property: prop.to_string(),
                        max_residual: 0.0,
                        tolerance: r.tolerance,
                        checks: 0,
                        failures: 0,
                    });
                    summary.last_mut().expect("just pushed")
                }
            };
            entry.max_residual = entry.max_residual.max(r.residual);
            entry.tolerance = entry.tolerance.max(r.tolerance);
            entry.checks += 1;
            entry.failures += usize::from(!r.pass);
        }
        Report {
            version: VERSION.to_string(),
            seed,
            records,
            summary,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary table followed by every failing record.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "spinlie {}  seed {}", self.version, self.seed);
        let _ = writeln!(s, "{} checks, {} failed", self.records.len(), self.records.iter().filter(|r| !r.pass).count());
        for e in &self.summary {
            let _ = writeln!(
                s,
                "{}  {:<40} max {:.16e}  tol {:.1e}  ({} checks, {} failed)",
                if e.failures == 0 { "PASS" } else { "FAIL" },
                e.property,
                e.max_residual,
                e.tolerance,
                e.checks,
                e.failures
            );
        }
        for r in self.records.iter().filter(|r| !r.pass) {
            let point = match r.point {
                Some(p) => format!(
                    "[{:.16e}, {:.16e}, {:.16e}, {:.16e}]",
                    p[0], p[1], p[2], p[3]
                ),
                None => "-".to_string(),
            };
            let _ = write!(
                s,
                "failed {} scene={} point={} residual={:.16e} tol={:.1e}",
                r.name, r.scene, point, r.residual, r.tolerance
            );
            if let Some(e) = &r.error {
                let _ = write!(s, " error: {e}");
            }
            s.push('\n');
        }
        s
    }
}
