//! Plain-text hydrodynamic coefficient tables.
//!
//! ```text
//! # comment lines start with '#'
//! omega 0.5
//! <6 rows x 6 columns added mass>
//! <6 rows x 6 columns radiation damping>
//! <6 rows "re im" excitation per unit wave amplitude>
//! omega 0.6
//! ...
//! ```
//!
//! Values are whitespace separated, SI units. Blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{Complex, Matrix6, Vector6};

use crate::dynamics::WecGeometry;
use crate::error::{Result, WecError};

use super::coefficients::check_node;
use super::{FrequencyGrid, HydroCoefficients, HydroProvider};

/// Reads a coefficient table from disk.
pub fn load_hydro_table(path: impl AsRef<Path>) -> Result<HydroCoefficients> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| WecError::io(path, e))?;
    parse_hydro_table(&text, &path.display().to_string())
}

/// Parses a coefficient table; `origin` names the source in error messages.
pub fn parse_hydro_table(text: &str, origin: &str) -> Result<HydroCoefficients> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();
    let err = |line: usize, msg: String| WecError::parse(origin, line, msg);

    let mut omegas = Vec::new();
    let mut added_mass = Vec::new();
    let mut damping = Vec::new();
    let mut excitation = Vec::new();

    while let Some((line_no, line)) = lines.next() {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("omega") {
            return Err(err(line_no, format!("expected `omega <value>`, found `{line}`")));
        }
        let omega = match (tokens.next().map(str::parse::<f64>), tokens.next()) {
            (Some(Ok(w)), None) if w.is_finite() && w > 0.0 => w,
            _ => return Err(err(line_no, format!("invalid frequency line `{line}`"))),
        };
        if let Some(&prev) = omegas.last() {
            if omega <= prev {
                return Err(err(
                    line_no,
                    format!("frequency {omega} does not increase (previous {prev})"),
                ));
            }
        }

        let mut read_rows = |cols: usize, what: &str| -> Result<Vec<(usize, Vec<f64>)>> {
            (0..6)
                .map(|r| {
                    let (n, l) = lines
                        .next()
                        .ok_or_else(|| err(line_no, format!("truncated {what} block at omega = {omega}")))?;
                    let vals: std::result::Result<Vec<f64>, _> =
                        l.split_whitespace().map(str::parse::<f64>).collect();
                    match vals {
                        Ok(v) if v.len() == cols => Ok((n, v)),
                        _ => Err(err(
                            n,
                            format!("{what} row {} needs {cols} numbers, found `{l}`", r + 1),
                        )),
                    }
                })
                .collect()
        };

        let a_rows = read_rows(6, "added mass")?;
        let b_rows = read_rows(6, "radiation damping")?;
        let f_rows = read_rows(2, "excitation")?;
        let a = Matrix6::from_fn(|i, j| a_rows[i].1[j]);
        let b = Matrix6::from_fn(|i, j| b_rows[i].1[j]);
        let f = Vector6::from_fn(|i, _| Complex::new(f_rows[i].1[0], f_rows[i].1[1]));
        check_node(omegas.len(), omega, &a, &b, &f).map_err(|m| err(line_no, m))?;

        omegas.push(omega);
        added_mass.push(a);
        damping.push(b);
        excitation.push(f);
    }

    let grid = FrequencyGrid::new(omegas).map_err(|e| err(0, e.to_string()))?;
    HydroCoefficients::new(grid, added_mass, damping, excitation)
}

/// Serialises coefficients in the table format. Values use the shortest
/// representation that reads back bit-exactly.
pub fn write_hydro_table(coeffs: &HydroCoefficients) -> String {
    let mut out =
        String::from("# omega block: added mass (6x6), radiation damping (6x6), excitation (re im)\n");
    let rows = coeffs
        .grid()
        .omegas()
        .iter()
        .zip(coeffs.added_mass())
        .zip(coeffs.radiation_damping())
        .zip(coeffs.excitation());
    for (((w, a), b), f) in rows {
        let _ = writeln!(out, "omega {w:e}");
        for m in [a, b] {
            for i in 0..6 {
                let row: Vec<String> = (0..6).map(|j| format!("{:e}", m[(i, j)])).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        for c in f.iter() {
            let _ = writeln!(out, "{:e} {:e}", c.re, c.im);
        }
    }
    out
}

/// Provider backed by a loaded table. The same coefficients are returned for
/// every geometry, interpolated onto the requested grid.
#[derive(Debug, Clone)]
pub struct TableHydro {
    coefficients: HydroCoefficients,
    label: String,
}

impl TableHydro {
    pub fn new(coefficients: HydroCoefficients, label: impl Into<String>) -> Self {
        Self {
            coefficients,
            label: label.into(),
        }
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Ok(Self::new(load_hydro_table(path)?, path.display().to_string()))
    }
}

impl HydroProvider for TableHydro {
    fn coefficients(&self, geom: &WecGeometry, grid: &FrequencyGrid) -> Result<HydroCoefficients> {
        geom.validate()?;
        Ok(self.coefficients.resample(grid))
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}
