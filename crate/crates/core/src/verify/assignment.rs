//! Minimum-cost rectangular assignment (Hungarian method with potentials).
//!
//! Each row is assigned a distinct column along shortest augmenting paths
//! over reduced costs, `O(rows² · cols)`.

/// Assigns every row a distinct column minimizing total cost. Requires
/// `rows <= cols` and a rectangular matrix. Returns the column per row.
pub fn min_cost_assignment(cost: &[Vec<i64>]) -> Vec<usize> {
    let rows = cost.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = cost[0].len();
    assert!(
        rows <= cols,
        "assignment needs at least as many columns as rows"
    );
    assert!(
        cost.iter().all(|r| r.len() == cols),
        "cost matrix is ragged"
    );

    const NONE: usize = usize::MAX;
    // potentials: u for rows, v for columns; column `cols` is a virtual root
    let mut u = vec![0i64; rows];
    let mut v = vec![0i64; cols + 1];
    let mut owner = vec![NONE; cols + 1];
    let mut way = vec![NONE; cols + 1];

    for row in 0..rows {
        let root = cols;
        owner[root] = row;
        let mut slack = vec![i64::MAX; cols];
        let mut used = vec![false; cols + 1];
        let mut col = root;
        loop {
            used[col] = true;
            let r = owner[col];
            let mut delta = i64::MAX;
            let mut next = NONE;
            for j in 0..cols {
                if used[j] {
                    continue;
                }
                let reduced = cost[r][j] - u[r] - v[j];
                if reduced < slack[j] {
                    slack[j] = reduced;
                    way[j] = col;
                }
                if slack[j] < delta {
                    delta = slack[j];
                    next = j;
                }
            }
            for j in 0..=cols {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else if j < cols {
                    slack[j] -= delta;
                }
            }
            col = next;
            if owner[col] == NONE {
                break;
            }
        }
        // flip the augmenting path back to the root
        while col != root {
            let prev = way[col];
            owner[col] = owner[prev];
            col = prev;
        }
    }

    let mut assignment = vec![NONE; rows];
    for (j, &r) in owner.iter().enumerate().take(cols) {
        if r != NONE {
            assignment[r] = j;
        }
    }
    assignment
}
