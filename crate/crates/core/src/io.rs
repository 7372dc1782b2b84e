//! CSV output shared by the library and the command-line tool.
//!
//! Floats are written with 17 significant digits in scientific notation,
//! which round-trips every `f64` exactly.

use std::io::{self, Write};

use crate::extremal::PathGrid;

/// 17-significant-digit rendering of `x`; `inf`, `-inf` and `NaN` verbatim.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Write a header row followed by one row per record.
pub fn write_csv<W, R>(out: &mut W, header: &[&str], rows: R) -> io::Result<()>
where
    W: Write,
    R: IntoIterator<Item = Vec<f64>>,
{
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let cells: Vec<String> = row.into_iter().map(format_f64).collect();
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// `t,value` rows of a path.
pub fn write_path_csv<W: Write>(out: &mut W, path: &PathGrid) -> io::Result<()> {
    let rows = path
        .times
        .iter()
        .zip(&path.values)
        .map(|(&t, &v)| vec![t, v]);
    write_csv(out, &["t", "value"], rows)
}

/// `step,value` rows of a chain, steps counted from 1.
pub fn write_chain_csv<W: Write>(out: &mut W, chain: &[f64]) -> io::Result<()> {
    writeln!(out, "step,value")?;
    for (i, &v) in chain.iter().enumerate() {
        writeln!(out, "{},{}", i + 1, format_f64(v))?;
    }
    Ok(())
}
