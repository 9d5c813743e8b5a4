//! Gantt chart documents and their renderings.
//!
//! JSON is the normative format; SVG and text are visual conveniences with
//! stable layout rules: one row per machine, machine 1 at the top, time
//! running left to right. Times are normalized so the earliest start is 0.

use std::fmt::Write as _;

use flowshop_core::schedule::{validate, Schedule};
use flowshop_core::ProcessingTimeTable;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Bar {
    pub job: usize,
    pub start: f64,
    pub end: f64,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MachineRow {
    pub machine: usize,
    pub bars: Vec<Bar>,
}

/// A normalized schedule laid out for rendering.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct GanttDocument {
    pub fiducial: usize,
    pub makespan: f64,
    pub machines: Vec<MachineRow>,
}

impl GanttDocument {
    /// Builds a document from a feasible schedule; rejects infeasible ones.
    pub fn new(schedule: &Schedule, table: &ProcessingTimeTable) -> Result<Self> {
        let violations = validate(schedule, table)?;
        if !violations.is_empty() {
            return Err(CliError::Validation(format!(
                "schedule is infeasible: {} (and {} more)",
                violations[0],
                violations.len() - 1
            )));
        }
        let norm = schedule.normalize();
        let machines = (1..=norm.machines())
            .map(|mu| MachineRow {
                machine: mu,
                bars: (1..=norm.jobs())
                    .map(|i| Bar { job: i, start: norm.start(mu, i), end: norm.end(mu, i) })
                    .collect(),
            })
            .collect();
        Ok(GanttDocument { fiducial: norm.fiducial(), makespan: norm.makespan(), machines })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    /// Plain-text chart, one line per machine, `#` for busy time.
    pub fn to_text(&self) -> String {
        const WIDTH: f64 = 100.0;
        let span = self
            .machines
            .iter()
            .flat_map(|m| m.bars.iter().map(|b| b.end))
            .fold(0.0_f64, f64::max)
            .max(1e-300);
        let cols = |t: f64| -> usize { ((t / span) * WIDTH).round() as usize };

        let mut out = String::new();
        for row in &self.machines {
            let marker = if row.machine == self.fiducial { '*' } else { ' ' };
            let _ = write!(out, "M{:<3}{marker}|", row.machine);
            let mut cursor = 0;
            for bar in &row.bars {
                let s = cols(bar.start);
                let e = cols(bar.end).max(s);
                if s > cursor {
                    out.push_str(&".".repeat(s - cursor));
                }
                out.push_str(&"#".repeat(e - s.max(cursor)));
                cursor = e.max(cursor);
            }
            let _ = writeln!(out, "|");
        }
        let _ = writeln!(out, "fiducial machine {} (*), makespan {}", self.fiducial, self.makespan);
        out
    }

    /// Static SVG: one band per machine, one rect per job bar.
    pub fn to_svg(&self) -> String {
        const ROW_H: f64 = 24.0;
        const PAD: f64 = 40.0;
        const SCALE_W: f64 = 720.0;
        let span = self.makespan.max(1e-300);
        let height = self.machines.len() as f64 * ROW_H + 2.0 * PAD;
        let width = SCALE_W + 2.0 * PAD;
        let x = |t: f64| PAD + t / span * SCALE_W;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
        );
        let _ = writeln!(
            out,
            r#"<line x1="{PAD}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            height - PAD,
            width - PAD,
            height - PAD
        );
        for (r, row) in self.machines.iter().enumerate() {
            let y = PAD + r as f64 * ROW_H;
            let weight = if row.machine == self.fiducial { "bold" } else { "normal" };
            let _ = writeln!(
                out,
                r#"<text x="8" y="{:.1}" font-size="12" font-weight="{weight}">M{}</text>"#,
                y + ROW_H * 0.65,
                row.machine
            );
            for bar in &row.bars {
                let fill = if bar.job % 2 == 0 { "#7aa6c2" } else { "#c27a7a" };
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.1}" width="{:.2}" height="{:.1}" fill="{fill}" stroke="black"><title>J{} [{}, {}]</title></rect>"#,
                    x(bar.start),
                    y + 2.0,
                    x(bar.end) - x(bar.start),
                    ROW_H - 4.0,
                    bar.job,
                    bar.start,
                    bar.end
                );
            }
        }
        let _ = writeln!(out, "</svg>");
        out
    }
}
