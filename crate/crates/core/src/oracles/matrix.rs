use num::{BigInt, Signed, Zero};

use crate::graph::{Vertex, WeightedGraph};

use super::OracleError;

/// Row `i`, column `j` is 1 iff `order[j]` lies in `N(order[i])`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodMatrix {
    pub order: Vec<Vertex>,
    pub entries: Vec<Vec<u8>>,
}

pub fn neighborhood_matrix(
    g: &WeightedGraph,
    order: &[Vertex],
) -> Result<NeighborhoodMatrix, OracleError> {
    let n = g.len();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(OracleError::BadPermutation);
    }
    for &v in order {
        if v >= n || seen[v] {
            return Err(OracleError::BadPermutation);
        }
        seen[v] = true;
    }
    let entries = order
        .iter()
        .map(|&u| {
            order
                .iter()
                .map(|&v| u8::from(u == v || g.are_adjacent(u, v)))
                .collect()
        })
        .collect();
    Ok(NeighborhoodMatrix {
        order: order.to_vec(),
        entries,
    })
}

impl NeighborhoodMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> BigInt {
        det(&self.entries)
    }

    /// Every row's ones form a single contiguous run.
    pub fn has_consecutive_ones(&self) -> bool {
        has_consecutive_ones(&self.entries)
    }

    /// The square submatrix on the given row and column positions.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<u8>> {
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c]).collect())
            .collect()
    }
}

/// Exact determinant of a square 0/1 matrix by fraction-free (Bareiss)
/// elimination.
pub fn det(m: &[Vec<u8>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix must be square");
            row.iter().map(|&x| BigInt::from(x)).collect()
        })
        .collect();
    let mut sign = 1;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn has_consecutive_ones(m: &[Vec<u8>]) -> bool {
    m.iter().all(|row| {
        let first = row.iter().position(|&x| x == 1);
        let last = row.iter().rposition(|&x| x == 1);
        match (first, last) {
            (Some(a), Some(b)) => row[a..=b].iter().all(|&x| x == 1),
            _ => true,
        }
    })
}

/// True iff `|det| <= 1`.
pub fn is_unimodular_minor(m: &[Vec<u8>]) -> bool {
    det(m).abs() <= BigInt::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::fixtures;
    use crate::tree_edge::line_graph;

    #[test]
    fn identity_and_complete() {
        let g = WeightedGraph::new(vec![1; 4], &[]).unwrap();
        let m = neighborhood_matrix(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.det(), BigInt::from(1));
        assert!(m.has_consecutive_ones());
        let k3 = WeightedGraph::new(vec![1; 3], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let m = neighborhood_matrix(&k3, &[2, 0, 1]).unwrap();
        assert!(m.entries.iter().flatten().all(|&x| x == 1));
        assert_eq!(m.det(), BigInt::zero());
    }

    #[test]
    fn bad_permutations() {
        let g = WeightedGraph::new(vec![1; 3], &[]).unwrap();
        assert_eq!(
            neighborhood_matrix(&g, &[0, 1]),
            Err(OracleError::BadPermutation)
        );
        assert_eq!(
            neighborhood_matrix(&g, &[0, 1, 1]),
            Err(OracleError::BadPermutation)
        );
        assert_eq!(
            neighborhood_matrix(&g, &[0, 1, 3]),
            Err(OracleError::BadPermutation)
        );
    }

    #[test]
    fn non_tu_witnesses() {
        let ntu4 = fixtures::example_nontu_intervals().graph();
        let m = neighborhood_matrix(&ntu4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(m.entries[3], vec![1, 1, 1, 1]);
        assert!(m.entries.iter().all(|row| row[3] == 1));
        assert_eq!(m.det().abs(), BigInt::from(2));
        assert!(!m.has_consecutive_ones());

        let (tree, w) = fixtures::example_nontu_star();
        let lg = line_graph(&tree, &w).unwrap();
        let order: Vec<usize> = (0..lg.len()).collect();
        assert_eq!(
            neighborhood_matrix(&lg, &order).unwrap().det().abs(),
            BigInt::from(2)
        );
    }

    #[test]
    fn determinant_matches_permutation_expansion() {
        fn leibniz(m: &[Vec<u8>]) -> i64 {
            let n = m.len();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut total = 0i64;
            loop {
                let mut inversions = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            inversions += 1;
                        }
                    }
                }
                let prod: i64 = (0..n).map(|i| m[i][perm[i]] as i64).product();
                total += if inversions % 2 == 0 { prod } else { -prod };
                // next lexicographic permutation
                let Some(i) = (0..n.saturating_sub(1))
                    .rev()
                    .find(|&i| perm[i] < perm[i + 1])
                else {
                    return total;
                };
                let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
                perm.swap(i, j);
                perm[i + 1..].reverse();
            }
        }
        let mut state = 12345u64;
        for _ in 0..200 {
            let n = 1 + (state % 5) as usize;
            let m: Vec<Vec<u8>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
                            ((state >> 40) & 1) as u8
                        })
                        .collect()
                })
                .collect();
            assert_eq!(det(&m), BigInt::from(leibniz(&m)), "{m:?}");
        }
    }
}
