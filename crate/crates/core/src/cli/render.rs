//! Plain-text multiplication and action tables.

use thiserror::Error;

use crate::modules::TrussModule;
use crate::truss::FiniteTruss;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("expected {expected} labels, got {got}")]
    LabelMismatch { expected: usize, got: usize },
}

fn labels_or_indices(labels: Option<&[String]>, n: usize) -> Result<Vec<String>, RenderError> {
    match labels {
        Some(l) if l.len() != n => Err(RenderError::LabelMismatch {
            expected: n,
            got: l.len(),
        }),
        Some(l) => Ok(l.to_vec()),
        None => Ok((0..n).map(|i| i.to_string()).collect()),
    }
}

fn grid(corner: &str, rows: &[String], cols: &[String], cell: impl Fn(usize, usize) -> String) -> String {
    let cells: Vec<Vec<String>> = (0..rows.len()).map(|r| (0..cols.len()).map(|c| cell(r, c)).collect()).collect();
    let w = std::iter::once(corner)
        .chain(rows.iter().map(String::as_str))
        .chain(cols.iter().map(String::as_str))
        .chain(cells.iter().flatten().map(String::as_str))
        .map(|s| s.chars().count())
        .max()
        .unwrap_or(1);
    let mut out = format!("{corner:>w$} |");
    for c in cols {
        out.push_str(&format!(" {c:>w$}"));
    }
    out.push('\n');
    out.push_str(&"-".repeat(w + 1));
    out.push('+');
    out.push_str(&"-".repeat((w + 1) * cols.len()));
    out.push('\n');
    for (label, row) in rows.iter().zip(&cells) {
        out.push_str(&format!("{label:>w$} |"));
        for v in row {
            out.push_str(&format!(" {v:>w$}"));
        }
        out.push('\n');
    }
    out
}

/// Multiplication table, row = left factor.
pub fn render_truss(t: &FiniteTruss, labels: Option<&[String]>) -> Result<String, RenderError> {
    let l = labels_or_indices(labels, t.size())?;
    Ok(grid("·", &l, &l, |r, c| l[t.mul(r, c)].clone()))
}

/// Action table, row = truss element.
pub fn render_module(
    m: &TrussModule,
    truss_labels: Option<&[String]>,
    module_labels: Option<&[String]>,
) -> Result<String, RenderError> {
    let rows = labels_or_indices(truss_labels, m.truss().size())?;
    let cols = labels_or_indices(module_labels, m.heap().size())?;
    Ok(grid("▷", &rows, &cols, |r, c| cols[m.act(r, c)].clone()))
}
