//! Deterministic random generators for carriers, morphisms, and algebra
//! elements, used by property tests and the reproduction harness.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::carriers::{FiniteAction, Quasigroup};
use crate::dhx::DhxElement;
use crate::dhx::IhxElement;
use crate::scalar::{int, Scalar};
use crate::vecth::{Morphism, Object};
use crate::wgroup::GroupElement;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn seeded(seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Small rational, frequently an integer, never huge.
    pub fn scalar(&mut self) -> Scalar {
        let num = self.rng.gen_range(-3i64..=3);
        let den = *[1i64, 1, 1, 2, 3].get(self.rng.gen_range(0..5)).unwrap();
        int(num) / int(den)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn perm(&mut self, n: usize) -> Vec<usize> {
        let mut v: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self.rng.gen_range(0..=i);
            v.swap(i, j);
        }
        v
    }

    pub fn group_element(&mut self, h_size: usize) -> GroupElement {
        GroupElement { perm: self.perm(h_size) }
    }

    /// Random action: every column an independent random permutation of H.
    pub fn action(&mut self, h_size: usize, x_size: usize) -> FiniteAction {
        let mut table = vec![vec![0; x_size]; h_size];
        for x in 0..x_size {
            let col = self.perm(h_size);
            for l in 0..h_size {
                table[l][x] = col[l];
            }
        }
        FiniteAction { h_size, x_size, table }
    }

    /// Random Latin square as an isotope of the cyclic group table.
    pub fn latin_square(&mut self, n: usize) -> Quasigroup {
        let (p, r, c) = (self.perm(n), self.perm(n), self.perm(n));
        let table = (0..n)
            .map(|a| (0..n).map(|b| p[(r[a] + c[b]) % n]).collect())
            .collect();
        Quasigroup { size: n, table }
    }

    /// Random object with invertible translations per element.
    pub fn object(&mut self, h_size: usize, size: usize) -> Object {
        let mut act = vec![vec![0; size]; h_size];
        for v in 0..size {
            let col = self.perm(h_size);
            for l in 0..h_size {
                act[l][v] = col[l];
            }
        }
        Object { size, act }
    }

    /// Random morphism supported exactly where the translations allow.
    pub fn supported_morphism(&mut self, source: &Object, target: &Object) -> Morphism {
        let mut m = Morphism::zero(source, target);
        for lambda in 0..source.h_size() {
            for w in 0..target.size {
                for v in 0..source.size {
                    if target.act[lambda][w] == source.act[lambda][v] && self.rng.gen_bool(0.5) {
                        m.mats[lambda].set(w, v, self.scalar());
                    }
                }
            }
        }
        m
    }

    /// Random homogeneous component of degree (alpha, beta) on V.
    pub fn homogeneous(&mut self, v: &Object, alpha: &GroupElement, beta: &GroupElement) -> Morphism {
        let (src, tgt) = DhxElement::component_shape(v, alpha, beta);
        self.supported_morphism(&src, &tgt)
    }

    /// Random element with `count` homogeneous terms at random degrees.
    pub fn dhx_element(&mut self, v: &Object, count: usize) -> DhxElement {
        let h = v.h_size();
        let mut e = DhxElement::zero(v);
        for _ in 0..count {
            let a = self.group_element(h);
            let b = self.group_element(h);
            let m = self.homogeneous(v, &a, &b);
            e.add_term(a, b, m);
        }
        e
    }

    /// Pair of elements whose inner degrees all match a common gamma, so their
    /// graded pairing is defined termwise.
    pub fn dhx_matched_pair(&mut self, v: &Object, w: &Object, count: usize) -> (DhxElement, DhxElement) {
        let h = v.h_size();
        let gamma = self.group_element(h);
        let mut e1 = DhxElement::zero(v);
        let mut e2 = DhxElement::zero(w);
        for _ in 0..count {
            let a = self.group_element(h);
            let m = self.homogeneous(v, &a, &gamma);
            e1.add_term(a, gamma.clone(), m);
            let b = self.group_element(h);
            let m = self.homogeneous(w, &gamma, &b);
            e2.add_term(gamma.clone(), b, m);
        }
        (e1, e2)
    }

    pub fn mh(&mut self, h_size: usize) -> Vec<Scalar> {
        (0..h_size).map(|_| self.scalar()).collect()
    }

    pub fn ihx_element(&mut self, action: &FiniteAction, count: usize) -> IhxElement {
        let mut e = IhxElement::zero(action.h_size);
        for _ in 0..count {
            // Degrees come from short random generator words so they lie in
            // the translation group.
            let len = self.below(3);
            let mut g = GroupElement::identity(action.h_size);
            for _ in 0..len {
                let t = crate::wgroup::translation_element(action, self.below(action.x_size));
                g = g.compose(&t);
            }
            e.add_term(g, self.mh(action.h_size));
        }
        e
    }
}
