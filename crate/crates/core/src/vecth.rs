//! The monoidal category of H-parameterized spaces: objects are finite sets
//! with a map into H-translations, morphisms are H-indexed matrix families
//! subject to a support condition.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::carriers::FiniteAction;
use crate::dybm::CheckOutcome;
use crate::scalar::{Matrix, Scalar};
use crate::wgroup::GroupElement;

/// An object: a finite carrier V together with a map H x V -> H,
/// `act[lambda][v] = lambda . v`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Object {
    pub size: usize,
    pub act: Vec<Vec<usize>>,
}

impl Object {
    pub fn h_size(&self) -> usize {
        self.act.len()
    }

    pub fn action_of(&self, lambda: usize, v: usize) -> usize {
        self.act[lambda][v]
    }

    /// The unit object: one point acting trivially.
    pub fn unit(h_size: usize) -> Object {
        Object { size: 1, act: (0..h_size).map(|l| vec![l]).collect() }
    }

    /// The base carrier X of a right action, as an object.
    pub fn from_action(action: &FiniteAction) -> Object {
        Object { size: action.x_size, act: action.table.clone() }
    }

    /// One-point subobject at element v of a parent object.
    pub fn point_of(parent: &Object, v: usize) -> Object {
        Object {
            size: 1,
            act: parent.act.iter().map(|row| vec![row[v]]).collect(),
        }
    }

    /// One-point object attached to a group element (a bijection of H).
    pub fn group_point(g: &GroupElement) -> Object {
        Object { size: 1, act: g.perm.iter().map(|&l| vec![l]).collect() }
    }

    /// Tensor product: carrier V x W, `lambda . (v, w) = (lambda . w) . v`.
    /// Pair (v, w) is indexed as v * |W| + w.
    pub fn tensor(&self, other: &Object) -> Object {
        let h = self.h_size();
        assert_eq!(h, other.h_size());
        let size = self.size * other.size;
        let act = (0..h)
            .map(|l| {
                let mut row = Vec::with_capacity(size);
                for v in 0..self.size {
                    for w in 0..other.size {
                        row.push(self.act[other.act[l][w]][v]);
                    }
                }
                row
            })
            .collect();
        Object { size, act }
    }
}

/// A morphism V -> W: one |W| x |V| matrix per lambda, supported only on
/// entries (w, v) with lambda . w = lambda . v.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Morphism {
    pub source: Object,
    pub target: Object,
    pub mats: Vec<Matrix>,
}

impl Morphism {
    pub fn new(source: Object, target: Object, mats: Vec<Matrix>) -> Morphism {
        assert_eq!(mats.len(), source.h_size());
        for m in &mats {
            assert_eq!((m.rows, m.cols), (target.size, source.size));
        }
        Morphism { source, target, mats }
    }

    pub fn identity(obj: &Object) -> Morphism {
        Morphism {
            source: obj.clone(),
            target: obj.clone(),
            mats: vec![Matrix::identity(obj.size); obj.h_size()],
        }
    }

    pub fn zero(source: &Object, target: &Object) -> Morphism {
        Morphism {
            source: source.clone(),
            target: target.clone(),
            mats: vec![Matrix::zeros(target.size, source.size); source.h_size()],
        }
    }

    /// 0/1 morphism from a lambda-independent partial map on basis elements.
    pub fn from_basis_map(
        source: &Object,
        target: &Object,
        f: impl Fn(usize) -> Option<usize>,
    ) -> Morphism {
        let m = Matrix::from_column_map(target.size, source.size, |v| f(v));
        Morphism {
            source: source.clone(),
            target: target.clone(),
            mats: vec![m; source.h_size()],
        }
    }

    /// Support condition check; witness is the first (lambda, row, col) violating it.
    pub fn check_support(&self) -> CheckOutcome<(usize, usize, usize)> {
        let mut checked = 0;
        for (lambda, m) in self.mats.iter().enumerate() {
            for (w, v, val) in m.entries() {
                checked += 1;
                if !val.is_zero() && self.target.act[lambda][w] != self.source.act[lambda][v] {
                    return CheckOutcome::fail(checked, (lambda, w, v));
                }
            }
        }
        CheckOutcome::pass(checked)
    }

    /// self after g, composed lambda-wise.
    pub fn compose(&self, g: &Morphism) -> Morphism {
        assert_eq!(self.source, g.target, "composition source/target mismatch");
        Morphism {
            source: g.source.clone(),
            target: self.target.clone(),
            mats: self
                .mats
                .iter()
                .zip(&g.mats)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mats: self.mats.iter().zip(&other.mats).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            mats: self.mats.iter().map(|m| m.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(|m| m.is_zero())
    }

    /// Tensor of morphisms:
    /// (f (x) g)(lambda) at ((u1,v1),(u2,v2)) is f(lambda . v2)_(u1,u2) g(lambda)_(v1,v2),
    /// with lambda . v2 taken in the source of g.
    pub fn tensor(&self, g: &Morphism) -> Morphism {
        let source = self.source.tensor(&g.source);
        let target = self.target.tensor(&g.target);
        let h = source.h_size();
        let mats = (0..h)
            .map(|lambda| {
                let mut m = Matrix::zeros(target.size, source.size);
                for (v1, v2, gval) in g.mats[lambda].nonzero_entries() {
                    let mu = g.source.act[lambda][v2];
                    for (u1, u2, fval) in self.mats[mu].nonzero_entries() {
                        m.set(
                            u1 * g.target.size + v1,
                            u2 * g.source.size + v2,
                            fval * gval,
                        );
                    }
                }
                m
            })
            .collect();
        Morphism { source, target, mats }
    }

    /// Lambda-wise exact inverse, if every matrix is invertible.
    pub fn invert(&self) -> Option<Morphism> {
        let mats: Option<Vec<Matrix>> = self.mats.iter().map(|m| m.invert()).collect();
        Some(Morphism {
            source: self.target.clone(),
            target: self.source.clone(),
            mats: mats?,
        })
    }

    /// First (lambda, row, col) where self and other differ.
    pub fn first_difference(&self, other: &Morphism) -> Option<(usize, usize, usize)> {
        for (lambda, (a, b)) in self.mats.iter().zip(&other.mats).enumerate() {
            if let Some((i, j)) = a.first_difference(b) {
                return Some((lambda, i, j));
            }
        }
        None
    }
}

/// Associativity constraint (U (x) V) (x) W -> U (x) (V (x) W).
/// Both objects have identical data under the flat pair indexing, so the
/// underlying matrices are identities; only the bracketing changes.
pub fn assoc(u: &Object, v: &Object, w: &Object) -> Morphism {
    let source = u.tensor(v).tensor(w);
    let target = u.tensor(&v.tensor(w));
    debug_assert_eq!(source, target);
    Morphism {
        mats: vec![Matrix::identity(source.size); source.h_size()],
        source,
        target,
    }
}

pub fn assoc_inv(u: &Object, v: &Object, w: &Object) -> Morphism {
    let source = u.tensor(&v.tensor(w));
    let target = u.tensor(v).tensor(w);
    Morphism {
        mats: vec![Matrix::identity(source.size); source.h_size()],
        source,
        target,
    }
}

/// Left unit constraint I (x) V -> V.
pub fn left_unit(v: &Object) -> Morphism {
    let source = Object::unit(v.h_size()).tensor(v);
    Morphism {
        mats: vec![Matrix::identity(v.size); v.h_size()],
        source,
        target: v.clone(),
    }
}

pub fn left_unit_inv(v: &Object) -> Morphism {
    let target = Object::unit(v.h_size()).tensor(v);
    Morphism {
        mats: vec![Matrix::identity(v.size); v.h_size()],
        source: v.clone(),
        target,
    }
}

/// Right unit constraint V (x) I -> V.
pub fn right_unit(v: &Object) -> Morphism {
    let source = v.tensor(&Object::unit(v.h_size()));
    Morphism {
        mats: vec![Matrix::identity(v.size); v.h_size()],
        source,
        target: v.clone(),
    }
}

pub fn right_unit_inv(v: &Object) -> Morphism {
    let target = v.tensor(&Object::unit(v.h_size()));
    Morphism {
        mats: vec![Matrix::identity(v.size); v.h_size()],
        source: v.clone(),
        target,
    }
}

/// Inclusion of the one-point subobject at v into its parent.
pub fn point_inj(parent: &Object, v: usize) -> Morphism {
    Morphism::from_basis_map(&Object::point_of(parent, v), parent, |_| Some(v))
}

/// Projection of the parent onto the one-point subobject at v.
pub fn point_proj(parent: &Object, v: usize) -> Morphism {
    Morphism::from_basis_map(parent, &Object::point_of(parent, v), |w| {
        if w == v {
            Some(0)
        } else {
            None
        }
    })
}

/// Isomorphism between two one-point objects, defined exactly when their
/// translations agree for every lambda; Err carries the first bad lambda.
pub fn point_iso(source: &Object, target: &Object) -> Result<Morphism, usize> {
    assert_eq!(source.size, 1);
    assert_eq!(target.size, 1);
    for lambda in 0..source.h_size() {
        if source.act[lambda][0] != target.act[lambda][0] {
            return Err(lambda);
        }
    }
    Ok(Morphism::from_basis_map(source, target, |_| Some(0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carriers::builtin_q5;
    use crate::scalar::int;
    use crate::wgroup::translation_element;

    fn x_obj() -> Object {
        Object::from_action(&builtin_q5().as_action())
    }

    #[test]
    fn tensor_action_composes_right_factor_first() {
        let x = x_obj();
        let xx = x.tensor(&x);
        let a = builtin_q5().as_action();
        for lambda in 0..5 {
            for v in 0..5 {
                for w in 0..5 {
                    assert_eq!(
                        xx.action_of(lambda, v * 5 + w),
                        a.apply(a.apply(lambda, w), v)
                    );
                }
            }
        }
    }

    #[test]
    fn support_condition_detects_violations() {
        let x = x_obj();
        // A matrix unit at (w, v) with different translations violates support.
        let mut bad = Morphism::zero(&x, &x);
        // lambda = 0: 0.0 = 4, 0.1 = 3 differ, so entry (0, 1) is illegal at lambda 0.
        bad.mats[0].set(0, 1, int(1));
        let out = bad.check_support();
        assert!(!out.pass);
        assert_eq!(out.witness, Some((0, 0, 1)));
        assert!(Morphism::identity(&x).check_support().pass);
    }

    #[test]
    fn tensor_of_identities_is_identity() {
        let x = x_obj();
        let id = Morphism::identity(&x);
        let t = id.tensor(&id);
        assert_eq!(t, Morphism::identity(&x.tensor(&x)));
    }

    #[test]
    fn pentagon_like_coherence_on_small_objects() {
        // a(U,V,W) composed with its inverse is the identity, and the unit
        // constraints cancel their inverses.
        let x = x_obj();
        let u = Object::point_of(&x, 2);
        let a = assoc(&u, &x, &x);
        let ai = assoc_inv(&u, &x, &x);
        assert_eq!(a.compose(&ai), Morphism::identity(&u.tensor(&x.tensor(&x))));
        assert_eq!(left_unit(&x).compose(&left_unit_inv(&x)), Morphism::identity(&x));
        assert_eq!(right_unit(&x).compose(&right_unit_inv(&x)), Morphism::identity(&x));
    }

    #[test]
    fn point_inclusion_projection_identities() {
        let x = x_obj();
        let i = point_inj(&x, 3);
        let p = point_proj(&x, 3);
        // p . i = id on the point.
        assert_eq!(p.compose(&i), Morphism::identity(&Object::point_of(&x, 3)));
        assert!(i.check_support().pass);
        assert!(p.check_support().pass);
    }

    #[test]
    fn point_iso_requires_matching_translations() {
        let x = x_obj();
        let p2 = Object::point_of(&x, 2);
        let p3 = Object::point_of(&x, 3);
        assert!(point_iso(&p2, &p2.clone()).is_ok());
        let err = point_iso(&p2, &p3).unwrap_err();
        // First lambda with lambda.2 != lambda.3.
        assert_eq!(err, 0);
    }

    #[test]
    fn group_point_matches_translation_point() {
        let a = builtin_q5().as_action();
        let x = x_obj();
        for v in 0..5 {
            let g = translation_element(&a, v);
            assert_eq!(Object::group_point(&g), Object::point_of(&x, v));
        }
    }

    #[test]
    fn tensor_entry_formula_spot_check() {
        // f, g supported morphisms on X built from translations of the action.
        let x = x_obj();
        // f = identity scaled by 2 at one lambda, g = identity: tensor picks up
        // f evaluated at the shifted parameter.
        let mut f = Morphism::identity(&x);
        f.mats[3] = f.mats[3].scale(&int(2));
        let g = Morphism::identity(&x);
        let t = f.tensor(&g);
        let a = builtin_q5().as_action();
        for lambda in 0..5 {
            for v in 0..5 {
                for w in 0..5 {
                    let expected = f.mats[a.apply(lambda, w)].get(v, v)
                        * g.mats[lambda].get(w, w);
                    assert_eq!(t.mats[lambda].get(v * 5 + w, v * 5 + w), &expected);
                }
            }
        }
    }

    #[test]
    fn invert_inverts_lambda_wise() {
        let x = x_obj();
        let mut f = Morphism::identity(&x);
        f.mats[1] = f.mats[1].scale(&int(3));
        let inv = f.invert().unwrap();
        assert_eq!(f.compose(&inv), Morphism::identity(&x));
        let z = Morphism::zero(&x, &x);
        assert!(z.invert().is_none());
    }
}
