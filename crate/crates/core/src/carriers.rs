//! Finite carrier structures: right actions, quasigroups, ternary systems.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("table has {got} rows, expected {expected}")]
    RowCount { expected: usize, got: usize },
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("entry {value} at position {pos:?} out of range (< {bound})")]
    OutOfRange { pos: (usize, usize), value: usize, bound: usize },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

/// Outcome of a logical validation: pass, or a deterministic list of failures.
#[derive(Debug, Clone, Serialize)]
pub struct Validation {
    pub pass: bool,
    pub failures: Vec<String>,
}

impl Validation {
    pub fn from_failures(failures: Vec<String>) -> Validation {
        Validation { pass: failures.is_empty(), failures }
    }
}

/// Right action of a set X on a set H: `table[lambda][x] = lambda . x`.
/// Every column must be a permutation of H.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAction {
    pub h_size: usize,
    pub x_size: usize,
    pub table: Vec<Vec<usize>>,
}

impl FiniteAction {
    pub fn apply(&self, lambda: usize, x: usize) -> usize {
        self.table[lambda][x]
    }

    /// The trivial action: lambda . x = lambda.
    pub fn trivial(h_size: usize, x_size: usize) -> FiniteAction {
        FiniteAction {
            h_size,
            x_size,
            table: (0..h_size).map(|l| vec![l; x_size]).collect(),
        }
    }

    pub fn check_shape(&self) -> Result<(), StructureError> {
        check_table(&self.table, self.h_size, self.x_size, self.h_size)
    }

    /// Every column `lambda -> lambda . x` must be a bijection of H.
    pub fn validate(&self) -> Result<Validation, StructureError> {
        self.check_shape()?;
        let mut failures = Vec::new();
        for x in 0..self.x_size {
            let mut seen = vec![false; self.h_size];
            for lambda in 0..self.h_size {
                seen[self.table[lambda][x]] = true;
            }
            if seen.iter().any(|s| !s) {
                failures.push(format!("column {x} is not a permutation of H"));
            }
        }
        Ok(Validation::from_failures(failures))
    }
}

/// Finite quasigroup: `table[a][b] = a * b`, a Latin square.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quasigroup {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
}

impl Quasigroup {
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    /// Unique c with a * c = b.
    pub fn left_divide(&self, a: usize, b: usize) -> usize {
        self.table[a]
            .iter()
            .position(|&v| v == b)
            .expect("quasigroup row is a permutation")
    }

    pub fn check_shape(&self) -> Result<(), StructureError> {
        check_table(&self.table, self.size, self.size, self.size)
    }

    /// Latin square check: every row and every column is a permutation.
    pub fn validate(&self) -> Result<Validation, StructureError> {
        self.check_shape()?;
        let mut failures = Vec::new();
        for a in 0..self.size {
            let mut seen = vec![false; self.size];
            for b in 0..self.size {
                seen[self.table[a][b]] = true;
            }
            if seen.iter().any(|s| !s) {
                failures.push(format!("row {a} is not a permutation"));
            }
        }
        for b in 0..self.size {
            let mut seen = vec![false; self.size];
            for a in 0..self.size {
                seen[self.table[a][b]] = true;
            }
            if seen.iter().any(|s| !s) {
                failures.push(format!("column {b} is not a permutation"));
            }
        }
        Ok(Validation::from_failures(failures))
    }

    /// View the quasigroup product as a right action of the carrier on itself.
    pub fn as_action(&self) -> FiniteAction {
        FiniteAction {
            h_size: self.size,
            x_size: self.size,
            table: self.table.clone(),
        }
    }
}

/// Ternary operation on a finite set: `apply(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TernarySystem {
    pub size: usize,
    pub table: Vec<Vec<Vec<usize>>>,
}

impl TernarySystem {
    pub fn apply(&self, a: usize, b: usize, c: usize) -> usize {
        self.table[a][b][c]
    }

    pub fn check_shape(&self) -> Result<(), StructureError> {
        let n = self.size;
        if self.table.len() != n {
            return Err(StructureError::RowCount { expected: n, got: self.table.len() });
        }
        for (a, plane) in self.table.iter().enumerate() {
            check_table(plane, n, n, n).map_err(|e| {
                StructureError::SizeMismatch(format!("plane {a}: {e}"))
            })?;
        }
        Ok(())
    }

    /// c -> mu(a, b, c) must be a bijection for every fixed (a, b).
    pub fn validate(&self) -> Result<Validation, StructureError> {
        self.check_shape()?;
        let mut failures = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                let mut seen = vec![false; self.size];
                for c in 0..self.size {
                    seen[self.table[a][b][c]] = true;
                }
                if seen.iter().any(|s| !s) {
                    failures.push(format!("slice ({a},{b}) is not a bijection in c"));
                }
            }
        }
        Ok(Validation::from_failures(failures))
    }
}

fn check_table(
    table: &[Vec<usize>],
    rows: usize,
    cols: usize,
    bound: usize,
) -> Result<(), StructureError> {
    if table.len() != rows {
        return Err(StructureError::RowCount { expected: rows, got: table.len() });
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(StructureError::RowLength { row: i, expected: cols, got: row.len() });
        }
        for (j, &v) in row.iter().enumerate() {
            if v >= bound {
                return Err(StructureError::OutOfRange { pos: (i, j), value: v, bound });
            }
        }
    }
    Ok(())
}

/// Tagged JSON file for any carrier structure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Structure {
    Quasigroup(Quasigroup),
    Action(FiniteAction),
    Ternary(TernarySystem),
}

impl Structure {
    pub fn validate(&self) -> Result<Validation, StructureError> {
        match self {
            Structure::Quasigroup(q) => q.validate(),
            Structure::Action(a) => a.validate(),
            Structure::Ternary(t) => t.validate(),
        }
    }
}

/// A five-element quasigroup that is not isomorphic to any group.
pub fn builtin_q5() -> Quasigroup {
    Quasigroup {
        size: 5,
        table: vec![
            vec![4, 3, 2, 1, 0],
            vec![3, 1, 0, 2, 4],
            vec![0, 2, 3, 4, 1],
            vec![1, 0, 4, 3, 2],
            vec![2, 4, 1, 0, 3],
        ],
    }
}

/// The ternary system mu(a, b, c) = a - b + c on Z/5Z.
pub fn builtin_z5_ternary() -> TernarySystem {
    let n = 5usize;
    let table = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| (0..n).map(|c| (a + n - b + c) % n).collect())
                .collect()
        })
        .collect();
    TernarySystem { size: n, table }
}

#[cfg(test)]
mod tests {
    use super::*;

    proptest::proptest! {
        #[test]
        fn random_latin_squares_divide(seed in 0u64..2000, n in 1usize..6) {
            // Row-shifted permutation tables are Latin squares; division must
            // invert multiplication everywhere.
            let mut s = crate::sampling::Sampler::seeded(seed);
            let q = s.latin_square(n);
            proptest::prop_assert!(q.validate().unwrap().pass);
            for a in 0..n {
                for b in 0..n {
                    proptest::prop_assert_eq!(q.left_divide(a, q.mul(a, b)), b);
                    proptest::prop_assert_eq!(q.mul(a, q.left_divide(a, b)), b);
                }
            }
        }
    }

    #[test]
    fn q5_is_a_latin_square() {
        let q = builtin_q5();
        assert!(q.validate().unwrap().pass);
        assert_eq!(q.mul(4, 3), 0);
        assert_eq!(q.left_divide(1, 4), 4);
        assert_eq!(q.left_divide(0, 1), 3);
    }

    #[test]
    fn q5_is_not_associative() {
        // Q5 is not a group; witness a failure of associativity.
        let q = builtin_q5();
        let mut found = false;
        'outer: for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    if q.mul(q.mul(a, b), c) != q.mul(a, q.mul(b, c)) {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn z5_ternary_matches_definition() {
        let t = builtin_z5_ternary();
        assert!(t.validate().unwrap().pass);
        assert_eq!(t.apply(0, 3, 4), 1);
        for a in 0..5 {
            for b in 0..5 {
                for c in 0..5 {
                    assert_eq!(t.apply(a, b, c), (a + 5 - b + c) % 5);
                }
            }
        }
    }

    #[test]
    fn invalid_action_is_reported() {
        let a = FiniteAction { h_size: 2, x_size: 2, table: vec![vec![0, 0], vec![0, 1]] };
        let v = a.validate().unwrap();
        assert!(!v.pass);
        assert_eq!(v.failures, vec!["column 0 is not a permutation of H"]);
    }

    #[test]
    fn shape_errors_are_structural() {
        let a = FiniteAction { h_size: 2, x_size: 2, table: vec![vec![0, 1]] };
        assert!(matches!(a.validate(), Err(StructureError::RowCount { .. })));
        let q = Quasigroup { size: 2, table: vec![vec![0, 2], vec![1, 0]] };
        assert!(matches!(q.validate(), Err(StructureError::OutOfRange { .. })));
    }

    #[test]
    fn structure_json_round_trip() {
        let s = Structure::Quasigroup(builtin_q5());
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.contains("\"kind\":\"quasigroup\""));
        let back: Structure = serde_json::from_str(&text).unwrap();
        match back {
            Structure::Quasigroup(q) => assert_eq!(q, builtin_q5()),
            _ => panic!("wrong kind"),
        }
    }
}
