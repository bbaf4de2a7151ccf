use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric Coxeter matrix with unit diagonal and off-diagonal entries ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix", into = "RawMatrix")]
pub struct CoxeterMatrix {
    n: usize,
    m: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct RawMatrix {
    n: usize,
    m: Vec<Vec<u32>>,
}

impl TryFrom<RawMatrix> for CoxeterMatrix {
    type Error = Error;
    fn try_from(raw: RawMatrix) -> Result<Self> {
        if raw.m.len() != raw.n {
            return Err(Error::InvalidMatrix(format!(
                "declared n = {} but matrix has {} rows",
                raw.n,
                raw.m.len()
            )));
        }
        CoxeterMatrix::new(raw.m)
    }
}

impl From<CoxeterMatrix> for RawMatrix {
    fn from(c: CoxeterMatrix) -> Self {
        RawMatrix { n: c.n, m: c.m }
    }
}

impl CoxeterMatrix {
    pub fn new(m: Vec<Vec<u32>>) -> Result<Self> {
        let n = m.len();
        for (i, row) in m.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 1 {
                return Err(Error::InvalidMatrix(format!(
                    "diagonal entry ({0},{0}) is not 1",
                    i + 1
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v != m[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "entries ({},{}) and ({},{}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if i != j && v < 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "off-diagonal entry ({},{}) = {v} is below 2",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(CoxeterMatrix { n, m })
    }

    /// Builds a matrix from the edges of a Coxeter diagram; unlisted pairs get 2.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let mut m = vec![vec![2u32; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, v) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidMatrix(format!("bad edge ({i},{j})")));
            }
            m[i][j] = v;
            m[j][i] = v;
        }
        CoxeterMatrix::new(m)
    }

    pub fn type_a(rank: usize) -> Self {
        let edges: Vec<_> = (1..rank).map(|i| (i - 1, i, 3)).collect();
        CoxeterMatrix::from_edges(rank, &edges).expect("type A diagram is valid")
    }

    pub fn dihedral(m: u32) -> Result<Self> {
        CoxeterMatrix::from_edges(2, &[(0, 1, m)])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.m[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.m
    }

    /// True when this is the linear diagram `A_n` with the standard labeling.
    pub fn is_type_a(&self) -> bool {
        *self == CoxeterMatrix::type_a(self.n)
    }
}

/// Named finite types, or an explicit matrix.
///
/// Named types use the linear labeling: `B_n` has the 4-bond between the last
/// two generators, `D_n` branches at `s_{n-2}`, and `H_3`, `H_4` put the
/// 5-bond between the first two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Named(String),
    Matrix(CoxeterMatrix),
}

impl GroupSpec {
    pub fn matrix(&self) -> Result<CoxeterMatrix> {
        match self {
            GroupSpec::Matrix(m) => Ok(m.clone()),
            GroupSpec::Named(name) => named_matrix(name),
        }
    }

    pub fn label(&self) -> String {
        match self {
            GroupSpec::Named(n) => n.clone(),
            GroupSpec::Matrix(m) => serde_json::to_string(m).unwrap_or_default(),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            let m: CoxeterMatrix =
                serde_json::from_str(t).map_err(|e| Error::Parse(format!("Coxeter matrix JSON: {e}")))?;
            Ok(GroupSpec::Matrix(m))
        } else {
            named_matrix(t)?;
            Ok(GroupSpec::Named(t.to_string()))
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn named_matrix(name: &str) -> Result<CoxeterMatrix> {
    let bad = || Error::Parse(format!("unknown group name `{name}`"));
    let t = name.trim();
    if let Some(rest) = t.strip_prefix("I2(") {
        let m: u32 = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
        return CoxeterMatrix::dihedral(m);
    }
    let (letter, num) = t.split_at(1.min(t.len()));
    let n: usize = num.parse().map_err(|_| bad())?;
    let linear = |n: usize| -> Vec<(usize, usize, u32)> { (1..n).map(|i| (i - 1, i, 3)).collect() };
    match (letter, n) {
        ("A", n) => Ok(CoxeterMatrix::type_a(n)),
        ("B" | "C", n) if n >= 2 => {
            let mut e = linear(n);
            e[n - 2].2 = 4;
            CoxeterMatrix::from_edges(n, &e)
        }
        ("D", n) if n >= 4 => {
            let mut e = linear(n - 1);
            e.push((n - 3, n - 1, 3));
            CoxeterMatrix::from_edges(n, &e)
        }
        ("E", 6..=8) => {
            // s1 - s3 - s4 - s5 - ... with s2 attached to s4
            let mut e = vec![(0, 2, 3), (1, 3, 3)];
            for i in 2..n - 1 {
                e.push((i, i + 1, 3));
            }
            CoxeterMatrix::from_edges(n, &e)
        }
        ("F", 4) => CoxeterMatrix::from_edges(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]),
        ("G", 2) => CoxeterMatrix::dihedral(6),
        ("H", 3 | 4) => {
            let mut e = linear(n);
            e[0].2 = 5;
            CoxeterMatrix::from_edges(n, &e)
        }
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_validation() {
        let m: CoxeterMatrix = serde_json::from_str(r#"{"n":3,"m":[[1,3,2],[3,1,3],[2,3,1]]}"#).unwrap();
        assert!(m.is_type_a());
        assert_eq!(
            serde_json::to_string(&m).unwrap(),
            r#"{"n":3,"m":[[1,3,2],[3,1,3],[2,3,1]]}"#
        );
        assert!(serde_json::from_str::<CoxeterMatrix>(r#"{"n":2,"m":[[1,3],[2,1]]}"#).is_err());
        assert!(serde_json::from_str::<CoxeterMatrix>(r#"{"n":2,"m":[[1,1],[1,1]]}"#).is_err());
        assert!(serde_json::from_str::<CoxeterMatrix>(r#"{"n":3,"m":[[1,3],[3,1]]}"#).is_err());
    }

    #[test]
    fn named_types() {
        assert_eq!(named_matrix("B3").unwrap().entry(1, 2), 4);
        assert_eq!(named_matrix("H3").unwrap().entry(0, 1), 5);
        assert_eq!(named_matrix("I2(7)").unwrap().entry(0, 1), 7);
        assert_eq!(named_matrix("D4").unwrap().entry(1, 3), 3);
        assert_eq!(named_matrix("D4").unwrap().entry(2, 3), 2);
        assert!(named_matrix("Q7").is_err());
        assert!("{\"n\":1,\"m\":[[1]]}".parse::<GroupSpec>().is_ok());
    }
}
