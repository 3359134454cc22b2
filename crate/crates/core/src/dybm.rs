//! Dynamical Yang-Baxter maps on finite carriers, as lookup tables.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carriers::{FiniteAction, Quasigroup, StructureError, TernarySystem};

/// Outcome of an exhaustive check: pass, how many cases were checked, and the
/// lexicographically first counterexample if any.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome<W> {
    pub pass: bool,
    pub checked: usize,
    pub witness: Option<W>,
}

impl<W> CheckOutcome<W> {
    pub fn pass(checked: usize) -> CheckOutcome<W> {
        CheckOutcome { pass: true, checked, witness: None }
    }

    pub fn fail(checked: usize, witness: W) -> CheckOutcome<W> {
        CheckOutcome { pass: false, checked, witness: Some(witness) }
    }
}

/// A parameter-dependent map R(lambda): X x X -> X x X stored as a table:
/// `table[lambda][x][y] = R(lambda)(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicalMap {
    pub action: FiniteAction,
    pub table: Vec<Vec<Vec<(usize, usize)>>>,
}

#[derive(Debug, Error)]
pub enum DybmError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("isomorphism is not a bijection onto the ternary carrier")]
    BadIsomorphism,
    #[error("quasigroup and ternary system sizes differ: {0} vs {1}")]
    CarrierMismatch(usize, usize),
    #[error("weight zero fails at lambda={lambda}, (x,y)=({x},{y})")]
    WeightZero { lambda: usize, x: usize, y: usize },
}

impl DynamicalMap {
    pub fn apply(&self, lambda: usize, x: usize, y: usize) -> (usize, usize) {
        self.table[lambda][x][y]
    }

    pub fn x_size(&self) -> usize {
        self.action.x_size
    }

    pub fn h_size(&self) -> usize {
        self.action.h_size
    }

    /// The flip R(lambda)(x, y) = (y, x) over any action; always a solution.
    pub fn flip(action: FiniteAction) -> DynamicalMap {
        let n = action.x_size;
        let table = (0..action.h_size)
            .map(|_| (0..n).map(|x| (0..n).map(|y| (y, x)).collect()).collect())
            .collect();
        DynamicalMap { action, table }
    }

    /// Build the map attached to a quasigroup Q, a ternary system on a carrier L,
    /// and a bijection `iso: Q -> L`:
    ///
    ///   xi_lambda(a)(b)  = lambda \ iso_inv(mu(iso(lambda), iso(lambda.a), iso((lambda.a).b)))
    ///   eta_lambda(b)(a) = (lambda . xi_lambda(a)(b)) \ ((lambda.a).b)
    ///   R(lambda)(a, b)  = (eta_lambda(b)(a), xi_lambda(a)(b))
    ///
    /// where `.` is the quasigroup product and `\` left division.
    pub fn from_quasigroup(
        q: &Quasigroup,
        t: &TernarySystem,
        iso: &[usize],
    ) -> Result<DynamicalMap, DybmError> {
        if !q.validate()?.pass {
            return Err(StructureError::SizeMismatch("quasigroup is not a Latin square".into()).into());
        }
        if !t.validate()?.pass {
            return Err(StructureError::SizeMismatch("ternary system is degenerate".into()).into());
        }
        if q.size != t.size {
            return Err(DybmError::CarrierMismatch(q.size, t.size));
        }
        let n = q.size;
        if iso.len() != n {
            return Err(DybmError::BadIsomorphism);
        }
        let mut iso_inv = vec![usize::MAX; n];
        for (a, &l) in iso.iter().enumerate() {
            if l >= n || iso_inv[l] != usize::MAX {
                return Err(DybmError::BadIsomorphism);
            }
            iso_inv[l] = a;
        }

        let mut table = vec![vec![vec![(0, 0); n]; n]; n];
        for lambda in 0..n {
            for a in 0..n {
                let la = q.mul(lambda, a);
                for b in 0..n {
                    let lab = q.mul(la, b);
                    let m = t.apply(iso[lambda], iso[la], iso[lab]);
                    let xi = q.left_divide(lambda, iso_inv[m]);
                    let eta = q.left_divide(q.mul(lambda, xi), lab);
                    table[lambda][a][b] = (eta, xi);
                }
            }
        }
        Ok(DynamicalMap { action: q.as_action(), table })
    }

    /// Exhaustive check of the parameter-dependent braid relation
    ///
    ///   R23(lambda) R13(lambda.X2) R12(lambda) = R12(lambda.X3) R13(lambda) R23(lambda.X1)
    ///
    /// where the shift in slot i uses the current value in that slot.
    /// Witness: first (lambda, x, y, z) in lexicographic order where the sides differ.
    pub fn check_qdybe(&self) -> CheckOutcome<(usize, usize, usize, usize)> {
        let (h, n) = (self.h_size(), self.x_size());
        let mut checked = 0;
        for lambda in 0..h {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        checked += 1;
                        // Left side, innermost map first.
                        let (x1, y1) = self.apply(lambda, x, y);
                        let (u, w) = self.apply(self.action.apply(lambda, y1), x1, z);
                        let (v2, w2) = self.apply(lambda, y1, w);
                        let lhs = (u, v2, w2);
                        // Right side.
                        let (y3, z3) = self.apply(self.action.apply(lambda, x), y, z);
                        let (x4, z4) = self.apply(lambda, x, z3);
                        let (x5, y5) = self.apply(self.action.apply(lambda, z4), x4, y3);
                        let rhs = (x5, y5, z4);
                        if lhs != rhs {
                            return CheckOutcome::fail(checked, (lambda, x, y, z));
                        }
                    }
                }
            }
        }
        CheckOutcome::pass(checked)
    }

    /// Weight zero: for (u, v) = R(lambda)(x, y), (lambda.v).u = (lambda.x).y.
    pub fn check_weight_zero(&self) -> CheckOutcome<(usize, usize, usize)> {
        let (h, n) = (self.h_size(), self.x_size());
        let mut checked = 0;
        for lambda in 0..h {
            for x in 0..n {
                for y in 0..n {
                    checked += 1;
                    let (u, v) = self.apply(lambda, x, y);
                    let left = self.action.apply(self.action.apply(lambda, v), u);
                    let right = self.action.apply(self.action.apply(lambda, x), y);
                    if left != right {
                        return CheckOutcome::fail(checked, (lambda, x, y));
                    }
                }
            }
        }
        CheckOutcome::pass(checked)
    }

    /// Each R(lambda) must be a bijection of X x X. Witness: first bad lambda.
    pub fn check_bijective(&self) -> CheckOutcome<usize> {
        let (h, n) = (self.h_size(), self.x_size());
        for lambda in 0..h {
            let mut seen = vec![false; n * n];
            for x in 0..n {
                for y in 0..n {
                    let (u, v) = self.apply(lambda, x, y);
                    seen[u * n + v] = true;
                }
            }
            if seen.iter().any(|s| !s) {
                return CheckOutcome::fail(lambda + 1, lambda);
            }
        }
        CheckOutcome::pass(h)
    }

    /// Inverse map family, if each R(lambda) is a bijection.
    pub fn inverse(&self) -> Option<DynamicalMap> {
        if !self.check_bijective().pass {
            return None;
        }
        let (h, n) = (self.h_size(), self.x_size());
        let mut table = vec![vec![vec![(0, 0); n]; n]; h];
        for lambda in 0..h {
            for x in 0..n {
                for y in 0..n {
                    let (u, v) = self.apply(lambda, x, y);
                    table[lambda][u][v] = (x, y);
                }
            }
        }
        Some(DynamicalMap { action: self.action.clone(), table })
    }

    /// Unitarity in both operator orders, where tau is the flip of X x X:
    /// orientation A is tau R(lambda) tau R(lambda) = id,
    /// orientation B is R(lambda) tau R(lambda) tau = id.
    pub fn check_unitarity(&self) -> UnitarityOutcome {
        let (h, n) = (self.h_size(), self.x_size());
        let mut a = CheckOutcome::pass(h * n * n);
        let mut b = CheckOutcome::pass(h * n * n);
        'a: for lambda in 0..h {
            for x in 0..n {
                for y in 0..n {
                    let (u, v) = self.apply(lambda, x, y);
                    let (p, q) = self.apply(lambda, v, u);
                    if (q, p) != (x, y) {
                        a = CheckOutcome::fail(lambda * n * n + x * n + y + 1, (lambda, x, y));
                        break 'a;
                    }
                }
            }
        }
        'b: for lambda in 0..h {
            for x in 0..n {
                for y in 0..n {
                    let (u, v) = self.apply(lambda, y, x);
                    let (p, q) = self.apply(lambda, v, u);
                    if (p, q) != (x, y) {
                        b = CheckOutcome::fail(lambda * n * n + x * n + y + 1, (lambda, x, y));
                        break 'b;
                    }
                }
            }
        }
        UnitarityOutcome { tau_r_tau_r: a, r_tau_r_tau: b }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitarityOutcome {
    pub tau_r_tau_r: CheckOutcome<(usize, usize, usize)>,
    pub r_tau_r_tau: CheckOutcome<(usize, usize, usize)>,
}

/// JSON file format for a dynamical map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DybmFile {
    pub kind: String,
    pub h_size: usize,
    pub x_size: usize,
    pub action: FiniteAction,
    pub r: Vec<Vec<Vec<[usize; 2]>>>,
}

impl DybmFile {
    pub fn from_map(m: &DynamicalMap) -> DybmFile {
        DybmFile {
            kind: "dybm".into(),
            h_size: m.h_size(),
            x_size: m.x_size(),
            action: m.action.clone(),
            r: m
                .table
                .iter()
                .map(|pl| pl.iter().map(|row| row.iter().map(|&(u, v)| [u, v]).collect()).collect())
                .collect(),
        }
    }

    pub fn into_map(self) -> Result<DynamicalMap, DybmError> {
        if self.kind != "dybm" {
            return Err(StructureError::SizeMismatch(format!("expected kind \"dybm\", got {:?}", self.kind)).into());
        }
        if self.action.h_size != self.h_size || self.action.x_size != self.x_size {
            return Err(StructureError::SizeMismatch("action sizes disagree with header".into()).into());
        }
        self.action.check_shape()?;
        let (h, n) = (self.h_size, self.x_size);
        if self.r.len() != h {
            return Err(StructureError::RowCount { expected: h, got: self.r.len() }.into());
        }
        let mut table = vec![vec![vec![(0, 0); n]; n]; h];
        for (l, plane) in self.r.iter().enumerate() {
            if plane.len() != n {
                return Err(StructureError::RowCount { expected: n, got: plane.len() }.into());
            }
            for (x, row) in plane.iter().enumerate() {
                if row.len() != n {
                    return Err(StructureError::RowLength { row: x, expected: n, got: row.len() }.into());
                }
                for (y, &[u, v]) in row.iter().enumerate() {
                    if u >= n || v >= n {
                        return Err(StructureError::OutOfRange { pos: (x, y), value: u.max(v), bound: n }.into());
                    }
                    table[l][x][y] = (u, v);
                }
            }
        }
        Ok(DynamicalMap { action: self.action, table })
    }
}

/// The map attached to the built-in five-element quasigroup with the
/// Z/5Z ternary system and the identity bijection.
pub fn builtin_q5_map() -> DynamicalMap {
    let q = crate::carriers::builtin_q5();
    let t = crate::carriers::builtin_z5_ternary();
    DynamicalMap::from_quasigroup(&q, &t, &[0, 1, 2, 3, 4]).expect("builtin structures are valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::{builtin_q5, builtin_z5_ternary};

    /// Independent table construction, written directly from the defining
    /// formulas with its own left-division search.
    fn oracle_table(q: &Quasigroup, t: &TernarySystem, iso: &[usize]) -> Vec<Vec<Vec<(usize, usize)>>> {
        let n = q.size;
        let ldiv = |a: usize, b: usize| (0..n).find(|&c| q.table[a][c] == b).unwrap();
        let inv = |l: usize| (0..n).find(|&a| iso[a] == l).unwrap();
        (0..n)
            .map(|lam| {
                (0..n)
                    .map(|a| {
                        (0..n)
                            .map(|b| {
                                let la = q.table[lam][a];
                                let lab = q.table[la][b];
                                let xi = ldiv(lam, inv(t.table[iso[lam]][iso[la]][iso[lab]]));
                                let eta = ldiv(q.table[lam][xi], lab);
                                (eta, xi)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn q5_map_matches_oracle() {
        let q = builtin_q5();
        let t = builtin_z5_ternary();
        let iso: Vec<usize> = (0..5).collect();
        let m = DynamicalMap::from_quasigroup(&q, &t, &iso).unwrap();
        assert_eq!(m.table, oracle_table(&q, &t, &iso));
        assert_eq!(m.apply(0, 1, 2), (4, 3));
    }

    #[test]
    fn q5_map_satisfies_all_conditions() {
        let m = builtin_q5_map();
        let qd = m.check_qdybe();
        assert!(qd.pass);
        assert_eq!(qd.checked, 625);
        assert!(m.check_weight_zero().pass);
        assert!(m.check_bijective().pass);
    }

    #[test]
    fn q5_unitarity_orientation() {
        // The two orientations are conjugate (R tau R tau = R (tau R tau R) R^-1),
        // so they always pass or fail together; for this map both pass.
        let u = builtin_q5_map().check_unitarity();
        assert!(u.r_tau_r_tau.pass);
        assert!(u.tau_r_tau_r.pass);
    }

    #[test]
    fn unitarity_orientations_agree_on_random_bijections() {
        use crate::sampling::Sampler;
        let mut s = Sampler::seeded(5);
        for _ in 0..50 {
            // Random bijective map family over a random action.
            let action = s.action(3, 2);
            let h = action.h_size;
            let n = action.x_size;
            let table: Vec<Vec<Vec<(usize, usize)>>> = (0..h)
                .map(|_| {
                    let p = s.perm(n * n);
                    (0..n)
                        .map(|x| (0..n).map(|y| (p[x * n + y] / n, p[x * n + y] % n)).collect())
                        .collect()
                })
                .collect();
            let m = DynamicalMap { action, table };
            let u = m.check_unitarity();
            assert_eq!(u.tau_r_tau_r.pass, u.r_tau_r_tau.pass);
        }
    }

    #[test]
    fn flip_is_always_a_solution() {
        let actions = [
            FiniteAction::trivial(3, 2),
            builtin_q5().as_action(),
            FiniteAction { h_size: 2, x_size: 2, table: vec![vec![1, 0], vec![0, 1]] },
        ];
        for a in actions {
            let m = DynamicalMap::flip(a);
            assert!(m.check_qdybe().pass);
            assert!(m.check_weight_zero().pass);
            assert!(m.check_bijective().pass);
            let u = m.check_unitarity();
            assert!(u.tau_r_tau_r.pass && u.r_tau_r_tau.pass);
        }
    }

    #[test]
    fn non_solution_yields_first_witness() {
        // |X| = 2, trivial H: the bijection fixing (1,0), (1,1) and swapping
        // the outputs of (0,0) and (0,1) breaks the braid relation at once.
        let action = FiniteAction::trivial(1, 2);
        let table = vec![vec![vec![(0, 1), (0, 0)], vec![(1, 0), (1, 1)]]];
        let m = DynamicalMap { action, table };
        assert!(m.check_bijective().pass);
        let qd = m.check_qdybe();
        assert!(!qd.pass);
        // Lexicographically first violating quadruple.
        assert_eq!(qd.witness, Some((0, 0, 0, 0)));
        assert_eq!(qd.checked, 1);
    }

    #[test]
    fn non_bijective_map_is_flagged() {
        let action = FiniteAction::trivial(1, 2);
        let table = vec![vec![vec![(0, 0), (0, 0)], vec![(0, 0), (1, 1)]]];
        let m = DynamicalMap { action, table };
        let bij = m.check_bijective();
        assert!(!bij.pass);
        assert_eq!(bij.witness, Some(0));
        assert!(m.inverse().is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let m = builtin_q5_map();
        let inv = m.inverse().unwrap();
        for lambda in 0..5 {
            for x in 0..5 {
                for y in 0..5 {
                    let (u, v) = m.apply(lambda, x, y);
                    assert_eq!(inv.apply(lambda, u, v), (x, y));
                }
            }
        }
    }

    #[test]
    fn file_round_trip() {
        let m = builtin_q5_map();
        let f = DybmFile::from_map(&m);
        let text = serde_json::to_string(&f).unwrap();
        let back: DybmFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_map().unwrap(), m);
    }
}
