//! Plain-text tables for terminal output.

use std::fmt::Display;

use crate::classical::CondProbMatrix;
use crate::matrix::Matrix;
use crate::partition::PartitionLabeling;
use crate::states::StateFamily;

/// Left-aligned first column, right-aligned data columns.
pub fn render(header: &[String], rows: &[Vec<String>]) -> String {
    let width = header.len();
    let mut widths: Vec<usize> = header.iter().map(String::len).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let parts: Vec<String> = cells
            .iter()
            .take(width)
            .enumerate()
            .map(|(k, c)| if k == 0 { format!("{c:<w$}", w = widths[k]) } else { format!("{c:>w$}", w = widths[k]) })
            .collect();
        parts.join("  ").trim_end().to_string()
    };
    let mut out = line(header);
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    out
}

/// Atoms down, 1-based states across.
pub fn states_table(family: &StateFamily) -> String {
    let mut header = vec!["atom".to_string()];
    header.extend((1..=family.len()).map(|k| k.to_string()));
    let rows: Vec<Vec<String>> = family
        .logic()
        .atoms()
        .iter()
        .map(|a| {
            let mut row = vec![a.id.clone()];
            row.extend(family.states().iter().map(|s| u8::from(s.value(a.index)).to_string()));
            row
        })
        .collect();
    render(&header, &rows)
}

pub fn labels_table(labeling: &PartitionLabeling) -> String {
    let rows: Vec<Vec<String>> = labeling
        .iter()
        .map(|(id, l)| {
            let items: Vec<String> = l.iter().map(ToString::to_string).collect();
            vec![id.to_string(), format!("{{{}}}", items.join(","))]
        })
        .collect();
    render(&["atom".into(), "label".into()], &rows)
}

pub fn labeled_matrix<T: Display>(corner: &str, row_atoms: &[String], col_atoms: &[String], m: &Matrix<T>) -> String {
    let mut header = vec![corner.to_string()];
    header.extend(col_atoms.iter().cloned());
    let rows: Vec<Vec<String>> = row_atoms
        .iter()
        .zip(m.iter_rows())
        .map(|(a, r)| {
            let mut row = vec![a.clone()];
            row.extend(r.iter().map(ToString::to_string));
            row
        })
        .collect();
    render(&header, &rows)
}

pub fn cond_matrix_table(m: &CondProbMatrix) -> String {
    labeled_matrix(&format!("{}|{}", m.col_context, m.row_context), &m.row_atoms, &m.col_atoms, &m.entries)
}
