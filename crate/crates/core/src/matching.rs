//! Bipartite perfect matching by augmenting paths (Kuhn's algorithm).

/// Perfect matching of rows to columns in an `n x n` bipartite graph given
/// by row adjacency lists. Returns `match[row] = col`.
///
/// Rows are processed in order and each augmenting search tries columns in
/// ascending order, so the result is deterministic and prefers the
/// lexicographically smallest column choices.
pub fn perfect_matching(adjacency: &[Vec<usize>], cols: usize) -> Option<Vec<usize>> {
    let rows = adjacency.len();
    if rows != cols {
        return None;
    }
    let mut sorted: Vec<Vec<usize>> = adjacency.to_vec();
    for list in &mut sorted {
        list.sort_unstable();
        list.dedup();
    }
    let mut owner: Vec<Option<usize>> = vec![None; cols];
    for row in 0..rows {
        let mut seen = vec![false; cols];
        if !augment(row, &sorted, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut assignment = vec![0; rows];
    for (col, row) in owner.iter().enumerate() {
        assignment[row.expect("perfect")] = col;
    }
    Some(assignment)
}

fn augment(row: usize, adjacency: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    // a free column is taken directly before displacing earlier rows
    if let Some(&col) = adjacency[row].iter().find(|&&c| owner[c].is_none() && !seen[c]) {
        seen[col] = true;
        owner[col] = Some(row);
        return true;
    }
    for &col in &adjacency[row] {
        if seen[col] {
            continue;
        }
        seen[col] = true;
        if owner[col].is_none_or(|other| augment(other, adjacency, owner, seen)) {
            owner[col] = Some(row);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_matching_with_augmentation() {
        // row 0 grabs column 0 first; row 1 forces it onto column 1
        let adj = vec![vec![0, 1], vec![0]];
        assert_eq!(perfect_matching(&adj, 2), Some(vec![1, 0]));
    }

    #[test]
    fn prefers_small_columns() {
        let full = vec![vec![2, 1, 0]; 3];
        assert_eq!(perfect_matching(&full, 3), Some(vec![0, 1, 2]));
    }

    #[test]
    fn deficient_support() {
        let adj = vec![vec![0], vec![0], vec![1, 2]];
        assert_eq!(perfect_matching(&adj, 3), None);
        assert_eq!(perfect_matching(&[vec![0]], 2), None);
    }
}
