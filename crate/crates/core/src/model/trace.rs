use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Per-iteration metrics emitted by the engine.
///
/// `objective` is the sum of the finite parts of `f + g + h` at `x_n`;
/// constraint violations are reported separately in `feas_f` / `feas_g`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub iter: usize,
    pub objective: f64,
    /// `||xbar_{n+1} - xbar_n||`
    pub step_norm: f64,
    /// `||y_n - x_n||`
    pub fixed_point_residual: f64,
    #[serde(rename = "feas_f")]
    pub feasibility_f: f64,
    #[serde(rename = "feas_g")]
    pub feasibility_g: f64,
    pub e_n: Option<f64>,
    pub restarted: bool,
}

/// Writes one JSON object per line.
pub fn write_jsonl<T: Serialize, W: Write>(rows: &[T], mut out: W) -> Result<()> {
    for row in rows {
        serde_json::to_writer(&mut out, row).map_err(|e| Error::Io(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Writes a CSV with a header row; `None` fields become empty cells.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
