use super::presentation::{Flavor, Presentation, RelData};
use super::AlgebraError;
use serde::{Deserialize, Serialize};

/// Abelianization of a group presentation: free rank and torsion divisors
/// (elementary divisors > 1, each dividing the next).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

/// Smith normal form of an integer matrix; returns the diagonal entries
/// (nonnegative, each dividing the next).
pub fn smith_normal_form(mut m: Vec<Vec<i64>>) -> Vec<i64> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut r0 = 0usize;
    let mut c0 = 0usize;
    while r0 < rows && c0 < cols {
        // find a pivot with minimal absolute value
        let mut pivot: Option<(usize, usize)> = None;
        for i in r0..rows {
            for j in c0..cols {
                if m[i][j] != 0 {
                    let better = match pivot {
                        None => true,
                        Some((pi, pj)) => m[i][j].abs() < m[pi][pj].abs(),
                    };
                    if better {
                        pivot = Some((i, j));
                    }
                }
            }
        }
        let (pi, pj) = match pivot {
            None => break,
            Some(p) => p,
        };
        m.swap(r0, pi);
        for row in m.iter_mut() {
            row.swap(c0, pj);
        }
        // reduce row r0 and column c0
        let mut again = true;
        while again {
            again = false;
            for i in r0 + 1..rows {
                if m[i][c0] != 0 {
                    let q = m[i][c0] / m[r0][c0];
                    for j in c0..cols {
                        m[i][j] -= q * m[r0][j];
                    }
                    if m[i][c0] != 0 {
                        m.swap(r0, i);
                        again = true;
                    }
                }
            }
            for j in c0 + 1..cols {
                if m[r0][j] != 0 {
                    let q = m[r0][j] / m[r0][c0];
                    for i in r0..rows {
                        m[i][j] -= q * m[i][c0];
                    }
                    if m[r0][j] != 0 {
                        for row in m.iter_mut() {
                            row.swap(c0, j);
                        }
                        again = true;
                    }
                }
            }
        }
        // pivot must divide the rest of the block; if not, absorb and retry
        let p = m[r0][c0].abs();
        let mut clean = true;
        'outer: for i in r0 + 1..rows {
            for j in c0 + 1..cols {
                if m[i][j] % p != 0 {
                    // add row i to row r0 and reduce again
                    for k in c0..cols {
                        m[r0][k] += m[i][k];
                    }
                    clean = false;
                    break 'outer;
                }
            }
        }
        if !clean {
            continue;
        }
        diag.push(p);
        r0 += 1;
        c0 += 1;
    }
    diag
}

/// Elementary divisors and free rank of the abelianized presentation.
pub fn abelian_invariants(p: &Presentation) -> Result<AbelianInvariants, AlgebraError> {
    if p.flavor != Flavor::Group {
        return Err(AlgebraError::NotAGroup);
    }
    let n = p.generators.len();
    let mut rows = Vec::with_capacity(p.relations.len());
    for rel in &p.relations {
        let mut row = vec![0i64; n];
        if let RelData::Group { lhs, rhs } = rel {
            for &(g, e) in &lhs.0 {
                row[g] += e as i64;
            }
            for &(g, e) in &rhs.0 {
                row[g] -= e as i64;
            }
        }
        rows.push(row);
    }
    let diag = smith_normal_form(rows);
    let rank = diag.iter().filter(|&&d| d != 0).count();
    let torsion = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
    Ok(AbelianInvariants { free_rank: n - rank, torsion })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{twisted_group, twisted_quandle, upper_group};
    use crate::gauss::TwistedCode;

    fn code(s: &str) -> TwistedCode {
        TwistedCode::parse(s).unwrap()
    }

    #[test]
    fn snf_basics() {
        assert_eq!(smith_normal_form(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_normal_form(vec![vec![1, 0], vec![0, 0]]), vec![1]);
        assert_eq!(smith_normal_form(vec![vec![0, 0]]), Vec::<i64>::new());
        assert_eq!(smith_normal_form(vec![vec![2, 4], vec![4, 8]]), vec![2]);
        // divisibility chain with a necessary pivot fix-up
        assert_eq!(smith_normal_form(vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 3]]), vec![1, 2, 6]);
    }

    #[test]
    fn unknot_free_rank_two() {
        let inv = abelian_invariants(&twisted_group(&code("()"))).unwrap();
        assert_eq!(inv, AbelianInvariants { free_rank: 2, torsion: vec![] });
    }

    #[test]
    fn bar_unknot_free_rank_one() {
        let inv = abelian_invariants(&twisted_group(&code("(*)"))).unwrap();
        assert_eq!(inv, AbelianInvariants { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn trefoil_abelianization_is_z() {
        let p = upper_group(&code("(O1+ U2+ O3+ U1+ O2+ U3+)")).unwrap();
        let inv = abelian_invariants(&p).unwrap();
        assert_eq!(inv, AbelianInvariants { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn quandle_flavor_rejected() {
        let p = twisted_quandle(&code("()"));
        assert_eq!(abelian_invariants(&p).unwrap_err(), AlgebraError::NotAGroup);
    }
}
