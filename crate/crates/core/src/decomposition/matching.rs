use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;

/// A bijection `i → mapping[i]` on `0..n`, i.e. a permutation matrix.
///
/// Fixed points are self-loops; they only appear as padding slots of a schedule.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct PermutationMatching {
    mapping: Vec<usize>,
}

impl PermutationMatching {
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for (i, &j) in mapping.iter().enumerate() {
            if j >= n || seen[j] {
                return Err(Error::invalid(format!("mapping is not a permutation: {i} -> {j}")));
            }
            seen[j] = true;
        }
        Ok(PermutationMatching { mapping })
    }

    pub fn identity(n: usize) -> Self {
        PermutationMatching {
            mapping: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.mapping.len()
    }

    pub fn target(&self, i: usize) -> usize {
        self.mapping[i]
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mapping.iter().copied().enumerate()
    }

    pub fn fixed_points(&self) -> usize {
        self.edges().filter(|&(i, j)| i == j).count()
    }

    pub fn to_matrix(&self) -> SquareMatrix<u32> {
        let mut m = SquareMatrix::zeros(self.n());
        for (i, j) in self.edges() {
            m.set(i, j, 1);
        }
        m
    }
}

impl TryFrom<Vec<usize>> for PermutationMatching {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<PermutationMatching> for Vec<usize> {
    fn from(p: PermutationMatching) -> Self {
        p.mapping
    }
}

/// Perfect matching of rows to columns using only `true` cells.
///
/// Augmenting-path search (Kuhn); rows are inserted in index order and
/// columns scanned in index order, so the result is deterministic. Returns
/// `None` exactly when no perfect matching exists.
pub fn perfect_matching(support: &SquareMatrix<bool>) -> Option<PermutationMatching> {
    let n = support.n();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| support.get(i, j)).collect())
        .collect();
    let mut col_owner: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![false; n];
    for row in 0..n {
        visited.iter_mut().for_each(|v| *v = false);
        if !augment(row, &adj, &mut col_owner, &mut visited) {
            return None;
        }
    }
    let mut mapping = vec![0; n];
    for (col, owner) in col_owner.into_iter().enumerate() {
        mapping[owner?] = col;
    }
    Some(PermutationMatching { mapping })
}

fn augment(row: usize, adj: &[Vec<usize>], col_owner: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &col in &adj[row] {
        if visited[col] {
            continue;
        }
        visited[col] = true;
        let free = match col_owner[col] {
            None => true,
            Some(other) => augment(other, adj, col_owner, visited),
        };
        if free {
            col_owner[col] = Some(row);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(rows: &[&[u8]]) -> SquareMatrix<bool> {
        SquareMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&b| b == 1).collect()).collect()).unwrap()
    }

    /// Brute force: try every permutation.
    fn exists_by_enumeration(s: &SquareMatrix<bool>) -> bool {
        fn rec(s: &SquareMatrix<bool>, row: usize, used: &mut Vec<bool>) -> bool {
            if row == s.n() {
                return true;
            }
            for col in 0..s.n() {
                if !used[col] && s.get(row, col) {
                    used[col] = true;
                    if rec(s, row + 1, used) {
                        return true;
                    }
                    used[col] = false;
                }
            }
            false
        }
        rec(s, 0, &mut vec![false; s.n()])
    }

    #[test]
    fn identity_support() {
        let s = SquareMatrix::from_fn(4, |i, j| i == j);
        assert_eq!(perfect_matching(&s), Some(PermutationMatching::identity(4)));
    }

    #[test]
    fn full_support_gives_a_permutation() {
        let s = SquareMatrix::filled(4, true);
        let m = perfect_matching(&s).unwrap();
        assert!(PermutationMatching::new(m.mapping().to_vec()).is_ok());
        assert_eq!(perfect_matching(&s), Some(m));
    }

    #[test]
    fn isolated_row_has_no_matching() {
        let s = support(&[&[1, 1, 0], &[0, 0, 0], &[0, 1, 1]]);
        assert_eq!(perfect_matching(&s), None);
    }

    #[test]
    fn needs_augmentation() {
        let s = support(&[&[1, 1, 0], &[1, 0, 0], &[0, 1, 1]]);
        let m = perfect_matching(&s).unwrap();
        for (i, j) in m.edges() {
            assert!(s.get(i, j));
        }
    }

    #[test]
    fn agrees_with_enumeration_up_to_five() {
        // Exhaustive for n ≤ 4, random supports for n = 5.
        for n in 1..=4usize {
            for mask in 0u32..(1 << (n * n)) {
                let s = SquareMatrix::from_fn(n, |i, j| mask >> (i * n + j) & 1 == 1);
                let got = perfect_matching(&s);
                assert_eq!(got.is_some(), exists_by_enumeration(&s));
                if let Some(m) = got {
                    assert!(m.edges().all(|(i, j)| s.get(i, j)));
                }
            }
        }
        let mut state = 0x9e3779b97f4a7c15u64;
        for n in 5..=5usize {
            for _ in 0..3000 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let bits = state;
                let s = SquareMatrix::from_fn(n, |i, j| bits >> ((i * n + j) % 64) & 1 == 1);
                let got = perfect_matching(&s);
                assert_eq!(got.is_some(), exists_by_enumeration(&s));
                if let Some(m) = got {
                    assert!(m.edges().all(|(i, j)| s.get(i, j)));
                }
            }
        }
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(PermutationMatching::new(vec![0, 0]).is_err());
        assert!(PermutationMatching::new(vec![0, 2]).is_err());
        let p: PermutationMatching = serde_json::from_str("[1,0]").unwrap();
        assert_eq!(p.target(0), 1);
        assert!(serde_json::from_str::<PermutationMatching>("[1,1]").is_err());
    }
}
