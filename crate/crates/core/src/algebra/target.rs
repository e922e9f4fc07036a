use super::AlgebraError;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    Group,
    Quandle,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetTables {
    Group { inv: Vec<usize>, identity: usize },
    Quandle { dual: Vec<Vec<usize>> },
}

/// A finite group or quandle given by its operation table.
/// Elements are 0..order; `table[a][b]` is a·b resp. a*b.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteTarget {
    pub kind: TargetKind,
    pub name: String,
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub aux: TargetTables,
}

impl FiniteTarget {
    /// Build and validate a group from its multiplication table.
    pub fn group(name: &str, table: Vec<Vec<usize>>) -> Result<FiniteTarget, AlgebraError> {
        let n = table.len();
        check_table(&table, n)?;
        let mut identity = None;
        for e in 0..n {
            if (0..n).all(|a| table[e][a] == a && table[a][e] == a) {
                identity = Some(e);
                break;
            }
        }
        let identity = identity.ok_or_else(|| AlgebraError::InvalidTarget("no identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inv[a] = b,
                None => {
                    return Err(AlgebraError::InvalidTarget(format!("element {} has no inverse", a)))
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::InvalidTarget(format!(
                            "not associative at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(FiniteTarget {
            kind: TargetKind::Group,
            name: name.to_string(),
            order: n,
            table,
            aux: TargetTables::Group { inv, identity },
        })
    }

    /// Build and validate a quandle from its operation table.
    pub fn quandle(name: &str, table: Vec<Vec<usize>>) -> Result<FiniteTarget, AlgebraError> {
        let n = table.len();
        check_table(&table, n)?;
        for a in 0..n {
            if table[a][a] != a {
                return Err(AlgebraError::InvalidTarget(format!("{}*{} != {}", a, a, a)));
            }
        }
        // right translations must be bijections; dual is their inverse
        let mut dual = vec![vec![usize::MAX; n]; n];
        for a in 0..n {
            for b in 0..n {
                let c = table[b][a]; // c = b * a
                if dual[c][a] != usize::MAX {
                    return Err(AlgebraError::InvalidTarget(format!(
                        "right translation by {} is not injective",
                        a
                    )));
                }
                dual[c][a] = b; // c ∗̄ a = b
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // right self-distributivity: (a*b)*c = (a*c)*(b*c)
                    if table[table[a][b]][c] != table[table[a][c]][table[b][c]] {
                        return Err(AlgebraError::InvalidTarget(format!(
                            "not self-distributive at ({}, {}, {})",
                            a, b, c
                        )));
                    }
                }
            }
        }
        Ok(FiniteTarget {
            kind: TargetKind::Quandle,
            name: name.to_string(),
            order: n,
            table,
            aux: TargetTables::Quandle { dual },
        })
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        match &self.aux {
            TargetTables::Group { inv, .. } => inv[a],
            TargetTables::Quandle { .. } => panic!("inv on a quandle target"),
        }
    }

    pub fn identity(&self) -> usize {
        match &self.aux {
            TargetTables::Group { identity, .. } => *identity,
            TargetTables::Quandle { .. } => panic!("identity on a quandle target"),
        }
    }

    /// a * b or a ∗̄ b.
    pub fn qop(&self, a: usize, b: usize, bar: bool) -> usize {
        if bar {
            match &self.aux {
                TargetTables::Quandle { dual } => dual[a][b],
                TargetTables::Group { .. } => panic!("qop on a group target"),
            }
        } else {
            self.table[a][b]
        }
    }

    /// Load a target from JSON: {"kind": "group"|"quandle", "name": ..., "table": [[..]]}.
    pub fn from_json(json: &str) -> Result<FiniteTarget, AlgebraError> {
        #[derive(Deserialize)]
        struct Raw {
            kind: TargetKind,
            name: String,
            table: Vec<Vec<usize>>,
        }
        let raw: Raw = serde_json::from_str(json)
            .map_err(|e| AlgebraError::InvalidTarget(e.to_string()))?;
        match raw.kind {
            TargetKind::Group => FiniteTarget::group(&raw.name, raw.table),
            TargetKind::Quandle => FiniteTarget::quandle(&raw.name, raw.table),
        }
    }
}

fn check_table(table: &[Vec<usize>], n: usize) -> Result<(), AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidTarget("empty table".into()));
    }
    for row in table {
        if row.len() != n || row.iter().any(|&v| v >= n) {
            return Err(AlgebraError::InvalidTarget("table is not square over 0..n".into()));
        }
    }
    Ok(())
}

pub fn builtin_target_names() -> &'static [&'static str] {
    &["Z2", "Z3", "Z4", "S3", "D4", "Q8", "R3", "R4", "R5", "T1", "T2", "T3"]
}

pub fn builtin_target(name: &str) -> Result<FiniteTarget, AlgebraError> {
    match name {
        "Z2" => cyclic(2),
        "Z3" => cyclic(3),
        "Z4" => cyclic(4),
        "S3" => symmetric3(),
        "D4" => dihedral_group(4),
        "Q8" => quaternion(),
        "R3" => dihedral_quandle(3),
        "R4" => dihedral_quandle(4),
        "R5" => dihedral_quandle(5),
        "T1" => trivial_quandle(1),
        "T2" => trivial_quandle(2),
        "T3" => trivial_quandle(3),
        other => Err(AlgebraError::UnknownTarget(other.to_string())),
    }
}

fn cyclic(n: usize) -> Result<FiniteTarget, AlgebraError> {
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    FiniteTarget::group(&format!("Z{}", n), table)
}

fn symmetric3() -> Result<FiniteTarget, AlgebraError> {
    // permutations of 0,1,2 in lexicographic order
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let table = perms
        .iter()
        .map(|p| {
            perms
                .iter()
                .map(|q| {
                    let pq = compose(p, q);
                    perms.iter().position(|r| *r == pq).unwrap()
                })
                .collect()
        })
        .collect();
    FiniteTarget::group("S3", table)
}

/// Dihedral group of order 2n: element i + n*j is r^i s^j.
fn dihedral_group(n: usize) -> Result<FiniteTarget, AlgebraError> {
    let idx = |i: usize, j: usize| i % n + n * (j % 2);
    let mut table = vec![vec![0; 2 * n]; 2 * n];
    for i1 in 0..n {
        for j1 in 0..2 {
            for i2 in 0..n {
                for j2 in 0..2 {
                    // r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                    let i = if j1 == 0 { i1 + i2 } else { i1 + n - i2 % n + n };
                    table[idx(i1, j1)][idx(i2, j2)] = idx(i % n, j1 + j2);
                }
            }
        }
    }
    FiniteTarget::group(&format!("D{}", n), table)
}

fn quaternion() -> Result<FiniteTarget, AlgebraError> {
    // elements: 1, -1, i, -i, j, -j, k, -k as (unit, sign)
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        // units 0=1, 1=i, 2=j, 3=k; returns (unit, negate)
        match (a, b) {
            (0, u) => (u, false),
            (u, 0) => (u, false),
            (1, 1) | (2, 2) | (3, 3) => (0, true),
            (1, 2) => (3, false),
            (2, 1) => (3, true),
            (2, 3) => (1, false),
            (3, 2) => (1, true),
            (3, 1) => (2, false),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let n = 8;
    let mut table = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let (ua, sa) = (a / 2, a % 2 == 1);
            let (ub, sb) = (b / 2, b % 2 == 1);
            let (u, neg) = unit_mul(ua, ub);
            let s = sa ^ sb ^ neg;
            table[a][b] = u * 2 + s as usize;
        }
    }
    FiniteTarget::group("Q8", table)
}

/// Dihedral quandle R_n on Z/n with a*b = 2b − a.
fn dihedral_quandle(n: usize) -> Result<FiniteTarget, AlgebraError> {
    let table = (0..n).map(|a| (0..n).map(|b| (2 * b + n * 2 - a) % n).collect()).collect();
    FiniteTarget::quandle(&format!("R{}", n), table)
}

fn trivial_quandle(n: usize) -> Result<FiniteTarget, AlgebraError> {
    let table = (0..n).map(|a| vec![a; n]).collect();
    FiniteTarget::quandle(&format!("T{}", n), table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in builtin_target_names() {
            let t = builtin_target(name).unwrap();
            assert_eq!(t.order > 0, true, "{}", name);
        }
    }

    #[test]
    fn orders() {
        for (name, order) in
            [("Z2", 2), ("Z4", 4), ("S3", 6), ("D4", 8), ("Q8", 8), ("R3", 3), ("R5", 5), ("T2", 2)]
        {
            assert_eq!(builtin_target(name).unwrap().order, order, "{}", name);
        }
    }

    #[test]
    fn r3_idempotent() {
        let r3 = builtin_target("R3").unwrap();
        for a in 0..3 {
            assert_eq!(r3.qop(a, a, false), a);
        }
    }

    #[test]
    fn s3_noncommutative() {
        let s3 = builtin_target("S3").unwrap();
        assert!((0..6).any(|a| (0..6).any(|b| s3.mul(a, b) != s3.mul(b, a))));
    }

    #[test]
    fn quandle_dual_inverts() {
        let r5 = builtin_target("R5").unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(r5.qop(r5.qop(a, b, false), b, true), a);
                assert_eq!(r5.qop(r5.qop(a, b, true), b, false), a);
            }
        }
    }

    #[test]
    fn unknown_target() {
        assert!(matches!(builtin_target("Z5"), Err(AlgebraError::UnknownTarget(_))));
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"kind":"group","name":"Z2","table":[[0,1],[1,0]]}"#;
        let t = FiniteTarget::from_json(json).unwrap();
        assert_eq!(t, builtin_target("Z2").unwrap());
        let bad = r#"{"kind":"group","name":"bad","table":[[0,1],[0,1]]}"#;
        assert!(FiniteTarget::from_json(bad).is_err());
    }

    #[test]
    fn non_quandle_rejected() {
        // fails idempotence
        let bad = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteTarget::quandle("bad", bad).is_err());
    }
}
