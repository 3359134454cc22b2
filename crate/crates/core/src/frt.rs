//! The generator-and-relation algebra attached to a Yang-Baxter operator on X:
//! words in scalar letters and (inverse) generator letters modulo a two-sided
//! ideal, with grading, coproduct, counit, dynamical representations, and the
//! operator-to-representation correspondence.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::carriers::FiniteAction;
use crate::dhx::{mu_l, mu_r, scalar2, DhxElement, IhxElement};
use crate::lop::{compose_chain, LOperator, SigmaContext};
use crate::scalar::{Matrix, Scalar};
use crate::vecth::{
    assoc, assoc_inv, left_unit, left_unit_inv, point_inj, point_iso, point_proj, right_unit,
    right_unit_inv, Morphism, Object,
};
use crate::wgroup::{translation_element, GroupElement};

/// One letter of the alphabet: a two-sided scalar (an |H| x |H| matrix of
/// coefficients over the function basis), a generator, or an inverse generator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "scalar")]
    Scalar(Matrix),
    L([usize; 2]),
    Linv([usize; 2]),
}

pub type Word = Vec<Letter>;

/// Normalize a word: multiply adjacent scalar letters pointwise, strip scalar
/// letters that are constant (pulling the constant into the coefficient).
/// Returns None if the word is zero.
fn normalize_word(mut word: Word, h_size: usize) -> Option<(Word, Scalar)> {
    let mut coeff = Scalar::one();
    loop {
        let mut changed = false;
        let mut out: Word = Vec::with_capacity(word.len());
        for letter in word.into_iter() {
            match (&letter, out.last()) {
                (Letter::Scalar(m), Some(Letter::Scalar(_))) => {
                    let prev = match out.pop() {
                        Some(Letter::Scalar(p)) => p,
                        _ => unreachable!(),
                    };
                    out.push(Letter::Scalar(prev.hadamard(m)));
                    changed = true;
                }
                _ => out.push(letter),
            }
        }
        let mut next: Word = Vec::with_capacity(out.len());
        for letter in out.into_iter() {
            if let Letter::Scalar(m) = &letter {
                assert_eq!((m.rows, m.cols), (h_size, h_size), "scalar letter has wrong shape");
                if let Some(c) = m.constant_value() {
                    coeff = &coeff * &c;
                    changed = true;
                    continue;
                }
                if m.is_zero() {
                    return None;
                }
            }
            next.push(letter);
        }
        word = next;
        if !changed {
            break;
        }
    }
    if coeff.is_zero() {
        None
    } else {
        Some((word, coeff))
    }
}

/// A linear combination of normalized words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    pub h_size: usize,
    pub x_size: usize,
    pub terms: BTreeMap<Word, Scalar>,
}

impl AlgebraElement {
    pub fn zero(h_size: usize, x_size: usize) -> AlgebraElement {
        AlgebraElement { h_size, x_size, terms: BTreeMap::new() }
    }

    pub fn one(h_size: usize, x_size: usize) -> AlgebraElement {
        AlgebraElement::from_word(h_size, x_size, Scalar::one(), Vec::new())
    }

    pub fn from_word(h_size: usize, x_size: usize, coeff: Scalar, word: Word) -> AlgebraElement {
        let mut e = AlgebraElement::zero(h_size, x_size);
        e.add_word(coeff, word);
        e
    }

    pub fn gen_l(h_size: usize, x_size: usize, a: usize, b: usize) -> AlgebraElement {
        AlgebraElement::from_word(h_size, x_size, Scalar::one(), vec![Letter::L([a, b])])
    }

    pub fn gen_linv(h_size: usize, x_size: usize, a: usize, b: usize) -> AlgebraElement {
        AlgebraElement::from_word(h_size, x_size, Scalar::one(), vec![Letter::Linv([a, b])])
    }

    pub fn scalar_letter(x_size: usize, m: Matrix) -> AlgebraElement {
        let h = m.rows;
        AlgebraElement::from_word(h, x_size, Scalar::one(), vec![Letter::Scalar(m)])
    }

    pub fn add_word(&mut self, coeff: Scalar, word: Word) {
        if coeff.is_zero() {
            return;
        }
        let Some((word, extra)) = normalize_word(word, self.h_size) else {
            return;
        };
        let c = coeff * extra;
        let entry = self.terms.entry(word).or_insert_with(Scalar::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            let key: Vec<Word> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(c.clone(), w.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(self.h_size, self.x_size);
        }
        AlgebraElement {
            h_size: self.h_size,
            x_size: self.x_size,
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.h_size, self.x_size);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_word(c1 * c2, w);
            }
        }
        out
    }

    /// Expand scalar letters over the basis of indicator functions, giving a
    /// canonical multilinear form for symbolic comparison.
    pub fn delta_expand(&self) -> BTreeMap<Word, Scalar> {
        let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (word, coeff) in &self.terms {
            for (branch, c) in expand_word(word, self.h_size) {
                let e = out.entry(branch).or_insert_with(Scalar::zero);
                *e = &*e + &(coeff * &c);
            }
            out.retain(|_, v| !v.is_zero());
        }
        out
    }
}

fn expand_word(word: &Word, h_size: usize) -> Vec<(Word, Scalar)> {
    let mut acc: Vec<(Word, Scalar)> = vec![(Vec::new(), Scalar::one())];
    for letter in word {
        match letter {
            Letter::Scalar(m) => {
                let mut next = Vec::new();
                for (l, mu, v) in m.nonzero_entries() {
                    let mut d = Matrix::zeros(h_size, h_size);
                    d.set(l, mu, Scalar::one());
                    for (w, c) in &acc {
                        let mut w2 = w.clone();
                        w2.push(Letter::Scalar(d.clone()));
                        next.push((w2, c * v));
                    }
                }
                acc = next;
            }
            _ => {
                for (w, _) in acc.iter_mut() {
                    w.push(letter.clone());
                }
            }
        }
    }
    acc
}

/// Left/right degrees of a single letter.
pub fn letter_degrees(action: &FiniteAction, letter: &Letter) -> (GroupElement, GroupElement) {
    let one = GroupElement::identity(action.h_size);
    match letter {
        Letter::Scalar(_) => (one.clone(), one),
        Letter::L([a, b]) => (
            translation_element(action, *a),
            translation_element(action, *b),
        ),
        Letter::Linv([a, b]) => (
            translation_element(action, *b).inverse(),
            translation_element(action, *a).inverse(),
        ),
    }
}

/// Degrees of a word: letterwise degrees multiplied in order.
pub fn word_degrees(action: &FiniteAction, word: &Word) -> (GroupElement, GroupElement) {
    let mut wl = GroupElement::identity(action.h_size);
    let mut wr = GroupElement::identity(action.h_size);
    for letter in word {
        let (l, r) = letter_degrees(action, letter);
        wl = wl.compose(&l);
        wr = wr.compose(&r);
    }
    (wl, wr)
}

/// Counit: letterwise images multiplied in the smash-product algebra.
pub fn counit(action: &FiniteAction, e: &AlgebraElement) -> IhxElement {
    let h = action.h_size;
    let mut out = IhxElement::zero(h);
    for (word, coeff) in &e.terms {
        let mut acc = IhxElement::unit(h);
        for letter in word {
            let img = match letter {
                Letter::Scalar(m) => {
                    // Multiply the two sides pointwise, then attach the
                    // identity translation.
                    let f: Vec<Scalar> = (0..h).map(|l| m.get(l, l).clone()).collect();
                    IhxElement::from_term(h, GroupElement::identity(h), f)
                }
                Letter::L([a, b]) => {
                    if a == b {
                        IhxElement::from_term(h, translation_element(action, *a), vec![Scalar::one(); h])
                    } else {
                        IhxElement::zero(h)
                    }
                }
                Letter::Linv([a, b]) => {
                    if a == b {
                        IhxElement::from_term(
                            h,
                            translation_element(action, *b).inverse(),
                            vec![Scalar::one(); h],
                        )
                    } else {
                        IhxElement::zero(h)
                    }
                }
            };
            acc = acc.mul(&img);
        }
        out = out.add(&acc.scale(coeff));
    }
    out
}

/// Formal coproduct: a linear combination of word pairs, letters split as
/// scalars into left/right channels and generators summed over a middle index.
pub fn coproduct(e: &AlgebraElement) -> BTreeMap<(Word, Word), Scalar> {
    let h = e.h_size;
    let n = e.x_size;
    let mut out: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
    for (word, coeff) in &e.terms {
        let mut acc: Vec<(Word, Word, Scalar)> = vec![(Vec::new(), Vec::new(), Scalar::one())];
        for letter in word {
            let branches: Vec<(Letter, Letter, Scalar)> = match letter {
                Letter::Scalar(m) => m
                    .nonzero_entries()
                    .map(|(l, mu, v)| {
                        let mut left = Matrix::zeros(h, h);
                        for j in 0..h {
                            left.set(l, j, Scalar::one());
                        }
                        let mut right = Matrix::zeros(h, h);
                        for i in 0..h {
                            right.set(i, mu, Scalar::one());
                        }
                        (Letter::Scalar(left), Letter::Scalar(right), v.clone())
                    })
                    .collect(),
                Letter::L([a, b]) => (0..n)
                    .map(|c| (Letter::L([*a, c]), Letter::L([c, *b]), Scalar::one()))
                    .collect(),
                Letter::Linv([a, b]) => (0..n)
                    .map(|c| (Letter::Linv([c, *b]), Letter::Linv([*a, c]), Scalar::one()))
                    .collect(),
            };
            let mut next = Vec::with_capacity(acc.len() * branches.len());
            for (w1, w2, c) in &acc {
                for (bl, br, bc) in &branches {
                    let mut n1 = w1.clone();
                    n1.push(bl.clone());
                    let mut n2 = w2.clone();
                    n2.push(br.clone());
                    next.push((n1, n2, c * bc));
                }
            }
            acc = next;
        }
        for (w1, w2, c) in acc {
            let Some((w1, c1)) = normalize_word(w1, h) else { continue };
            let Some((w2, c2)) = normalize_word(w2, h) else { continue };
            let total = coeff * &c * c1 * c2;
            let entry = out.entry((w1, w2)).or_insert_with(Scalar::zero);
            *entry = &*entry + &total;
        }
        out.retain(|_, v| !v.is_zero());
    }
    out
}

/// A dynamical representation: images of the generator letters as homogeneous
/// components on a carrier object, indexed by a * |X| + b.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynRep {
    pub v: Object,
    pub l_img: Vec<Morphism>,
    pub linv_img: Vec<Morphism>,
}

fn tr(action: &FiniteAction, x: usize) -> GroupElement {
    translation_element(action, x)
}

impl DynRep {
    /// Evaluate an algebra element as an operator-algebra element on V.
    pub fn eval(&self, action: &FiniteAction, e: &AlgebraElement) -> DhxElement {
        let n = action.x_size;
        let mut out = DhxElement::zero(&self.v);
        for (word, coeff) in &e.terms {
            let mut acc = DhxElement::unit(&self.v);
            for letter in word {
                let img = match letter {
                    Letter::Scalar(m) => scalar2(&self.v, m),
                    Letter::L([a, b]) => DhxElement::single(
                        &self.v,
                        tr(action, *a),
                        tr(action, *b),
                        self.l_img[a * n + b].clone(),
                    ),
                    Letter::Linv([a, b]) => DhxElement::single(
                        &self.v,
                        tr(action, *b).inverse(),
                        tr(action, *a).inverse(),
                        self.linv_img[a * n + b].clone(),
                    ),
                };
                acc = acc.star(&img);
            }
            out = out.add(&acc.scale(coeff));
        }
        out
    }
}

/// The trivial representation on the unit object: generators act by their
/// counit values.
pub fn trivial_rep(ctx: &SigmaContext) -> DynRep {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let i = Object::unit(h);
    let mut l_img = Vec::with_capacity(n * n);
    let mut linv_img = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let delta = if a == b { Scalar::one() } else { Scalar::zero() };
            let (src, tgt) = DhxElement::component_shape(&i, &tr(&ctx.action, a), &tr(&ctx.action, b));
            let mats = (0..h)
                .map(|_| {
                    let mut m = Matrix::zeros(1, 1);
                    m.set(0, 0, delta.clone());
                    m
                })
                .collect();
            l_img.push(Morphism::new(src, tgt, mats));
            let (src, tgt) = DhxElement::component_shape(
                &i,
                &tr(&ctx.action, b).inverse(),
                &tr(&ctx.action, a).inverse(),
            );
            let mats = (0..h)
                .map(|_| {
                    let mut m = Matrix::zeros(1, 1);
                    m.set(0, 0, delta.clone());
                    m
                })
                .collect();
            linv_img.push(Morphism::new(src, tgt, mats));
        }
    }
    DynRep { v: i, l_img, linv_img }
}

/// The basic representation on X, with components written directly in terms of
/// the entries of sigma and its parameter-shifted inverse.
pub fn basic_rep(ctx: &SigmaContext) -> DynRep {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let x = &ctx.x;
    let mut l_img = Vec::with_capacity(n * n);
    let mut linv_img = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let (src, tgt) = DhxElement::component_shape(x, &tr(&ctx.action, a), &tr(&ctx.action, b));
            let mats = (0..h)
                .map(|lambda| {
                    Matrix::from_fn(n, n, |y, xx| {
                        ctx.sigma.mats[lambda].get(a * n + y, xx * n + b).clone()
                    })
                })
                .collect();
            l_img.push(Morphism::new(src, tgt, mats));

            let a_inv = tr(&ctx.action, a).inverse();
            let (src, tgt) = DhxElement::component_shape(x, &tr(&ctx.action, b).inverse(), &a_inv);
            let mats = (0..h)
                .map(|lambda| {
                    let shifted = a_inv.apply(lambda);
                    Matrix::from_fn(n, n, |y, xx| {
                        ctx.sigma_inv.mats[shifted].get(y * n + a, b * n + xx).clone()
                    })
                })
                .collect();
            linv_img.push(Morphism::new(src, tgt, mats));
        }
    }
    DynRep { v: x.clone(), l_img, linv_img }
}

fn gp(g: &GroupElement) -> Object {
    Object::group_point(g)
}

/// Dual of a homogeneous component: from V (x) {alpha} -> {beta} (x) V to
/// {beta^-1} (x) V -> V (x) {alpha^-1}, built from unit and associativity
/// constraints and the one-point pairings.
pub fn vee(u: &Morphism, alpha: &GroupElement, beta: &GroupElement, v: &Object) -> Morphism {
    let (ai, bi) = (alpha.inverse(), beta.inverse());
    let (pa, pb, pai, pbi) = (gp(alpha), gp(beta), gp(&ai), gp(&bi));
    let h = v.h_size();
    let unit = Object::unit(h);
    let id_v = Morphism::identity(v);
    let v_ai = v.tensor(&pai);
    let inner = compose_chain(&[
        &assoc(&pb, v, &pai),
        &u.tensor(&Morphism::identity(&pai)),
        &assoc_inv(v, &pa, &pai),
        &id_v.tensor(&point_iso(&unit, &pa.tensor(&pai)).expect("alpha pairs with its inverse")),
    ]);
    compose_chain(&[
        &left_unit(&v_ai),
        &point_iso(&pbi.tensor(&pb), &unit)
            .expect("beta pairs with its inverse")
            .tensor(&Morphism::identity(&v_ai)),
        &assoc_inv(&pbi, &pb, &v_ai),
        &Morphism::identity(&pbi).tensor(&inner),
        &assoc(&pbi, v, &unit),
        &right_unit_inv(&pbi.tensor(v)),
    ])
}

/// Inverse of `vee`: from {beta^-1} (x) V -> V (x) {alpha^-1} back to
/// V (x) {alpha} -> {beta} (x) V.
pub fn wedge(u: &Morphism, alpha: &GroupElement, beta: &GroupElement, v: &Object) -> Morphism {
    let (ai, bi) = (alpha.inverse(), beta.inverse());
    let (pa, pb, pai, pbi) = (gp(alpha), gp(beta), gp(&ai), gp(&bi));
    let h = v.h_size();
    let unit = Object::unit(h);
    let id_v = Morphism::identity(v);
    let v_a = v.tensor(&pa);
    let bv = pb.tensor(v);
    let v_ai = v.tensor(&pai);

    let mid = compose_chain(&[
        &Morphism::identity(&pbi).tensor(&assoc_inv(&pb, v, &pai)),
        &assoc(&pbi, &pb, &v_ai),
        &point_iso(&unit, &pbi.tensor(&pb))
            .expect("beta inverse pairs with beta")
            .tensor(&Morphism::identity(&v_ai)),
        &left_unit_inv(&v_ai),
        u,
        &right_unit(&pbi.tensor(v)),
        &assoc_inv(&pbi, v, &unit),
        &Morphism::identity(&pbi).tensor(&compose_chain(&[
            &id_v.tensor(&point_iso(&pa.tensor(&pai), &unit).expect("alpha pairs with alpha inverse")),
            &assoc(v, &pa, &pai),
        ])),
    ]);

    let big_src = v_a.tensor(&pai);
    let big_tgt_inner = bv.tensor(&pai);
    let big = compose_chain(&[
        &left_unit(&big_tgt_inner),
        &point_iso(&pb.tensor(&pbi), &unit)
            .expect("beta pairs with beta inverse")
            .tensor(&Morphism::identity(&big_tgt_inner)),
        &assoc_inv(&pb, &pbi, &big_tgt_inner),
        &Morphism::identity(&pb).tensor(&mid),
        &assoc(&pb, &pbi, &big_src),
        &point_iso(&unit, &pb.tensor(&pbi))
            .expect("beta pairs with beta inverse")
            .tensor(&Morphism::identity(&big_src)),
        &left_unit_inv(&big_src),
    ]);

    compose_chain(&[
        &right_unit(&bv),
        &Morphism::identity(&bv).tensor(&point_iso(&pai.tensor(&pa), &unit).expect("pairing")),
        &assoc(&bv, &pai, &pa),
        &big.tensor(&Morphism::identity(&pa)),
        &assoc_inv(&v_a, &pai, &pa),
        &Morphism::identity(&v_a).tensor(&point_iso(&unit, &pai.tensor(&pa)).expect("pairing")),
        &right_unit_inv(&v_a),
    ])
}

/// From an invertible exchange operator to the generator images of its
/// dynamical representation.
pub fn g_functor(ctx: &SigmaContext, lop: &LOperator) -> DynRep {
    let n = ctx.x_size();
    let x = &ctx.x;
    let v = &lop.v;
    let id_v = Morphism::identity(v);
    let mut l_img = Vec::with_capacity(n * n);
    let mut linv_img = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ga = tr(&ctx.action, a);
            let gb = tr(&ctx.action, b);
            // X -> {[a]} through the point at a.
            let out_a = point_iso(&Object::point_of(x, a), &gp(&ga))
                .expect("translation point matches")
                .compose(&point_proj(x, a));
            // {[b]} -> X through the point at b.
            let in_b = point_inj(x, b).compose(
                &point_iso(&gp(&gb), &Object::point_of(x, b)).expect("translation point matches"),
            );
            l_img.push(compose_chain(&[
                &out_a.tensor(&id_v),
                &lop.l,
                &id_v.tensor(&in_b),
            ]));
            // Inner composite {[b]} (x) V -> V (x) {[a]} through the inverse
            // operator, then its wedge dual.
            let out_a_r = point_iso(&Object::point_of(x, a), &gp(&ga))
                .expect("translation point matches")
                .compose(&point_proj(x, a));
            let in_b_l = point_inj(x, b).compose(
                &point_iso(&gp(&gb), &Object::point_of(x, b)).expect("translation point matches"),
            );
            let inner = compose_chain(&[
                &id_v.tensor(&out_a_r),
                &lop.l_inv,
                &in_b_l.tensor(&id_v),
            ]);
            linv_img.push(wedge(&inner, &ga.inverse(), &gb.inverse(), v));
        }
    }
    DynRep { v: v.clone(), l_img, linv_img }
}

/// From generator images back to an exchange operator.
pub fn f_functor(ctx: &SigmaContext, rep: &DynRep) -> LOperator {
    let n = ctx.x_size();
    let x = &ctx.x;
    let v = &rep.v;
    let id_v = Morphism::identity(v);
    let mut l = Morphism::zero(&v.tensor(x), &x.tensor(v));
    let mut l_inv = Morphism::zero(&x.tensor(v), &v.tensor(x));
    for a in 0..n {
        for b in 0..n {
            let ga = tr(&ctx.action, a);
            let gb = tr(&ctx.action, b);
            let in_a = point_inj(x, a).compose(
                &point_iso(&gp(&ga), &Object::point_of(x, a)).expect("translation point matches"),
            );
            let out_b = point_iso(&Object::point_of(x, b), &gp(&gb))
                .expect("translation point matches")
                .compose(&point_proj(x, b));
            l = l.add(&compose_chain(&[
                &in_a.tensor(&id_v),
                &rep.l_img[a * n + b],
                &id_v.tensor(&out_b),
            ]));
            let dual = vee(
                &rep.linv_img[a * n + b],
                &ga.inverse(),
                &gb.inverse(),
                v,
            );
            l_inv = l_inv.add(&compose_chain(&[
                &id_v.tensor(&in_a),
                &dual,
                &out_b.tensor(&id_v),
            ]));
        }
    }
    LOperator { v: v.clone(), l, l_inv }
}

/// An evaluation channel for algebra elements.
#[derive(Debug, Clone)]
pub enum Channel {
    Counit,
    Rep(DynRep),
}

impl Channel {
    pub fn kills(&self, action: &FiniteAction, e: &AlgebraElement) -> bool {
        match self {
            Channel::Counit => counit(action, e).is_zero_op(),
            Channel::Rep(rep) => rep.eval(action, e).is_zero_op(),
        }
    }

    pub fn agree(&self, action: &FiniteAction, e1: &AlgebraElement, e2: &AlgebraElement) -> bool {
        self.kills(action, &e1.sub(e2))
    }
}

fn delta_fn(h: usize, at: usize) -> Vec<Scalar> {
    (0..h).map(|l| if l == at { Scalar::one() } else { Scalar::zero() }).collect()
}

fn left_scalar(h: usize, f: &[Scalar]) -> Matrix {
    Matrix::from_fn(h, h, |l, _| f[l].clone())
}

fn right_scalar(h: usize, f: &[Scalar]) -> Matrix {
    Matrix::from_fn(h, h, |_, m| f[m].clone())
}

/// Defining relations of the quotient, enumerated over finite index sets.
/// Scalar-linearity relations are instantiated on the indicator basis, and
/// the twist relations on indicator functions.
pub fn ideal_generators(ctx: &SigmaContext) -> Vec<(String, AlgebraElement)> {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let mut gens = Vec::new();
    let word = |w: Word| AlgebraElement::from_word(h, n, Scalar::one(), w);

    // (1) scalar-algebra coherence: addition, scalar multiples, products of
    // basis scalars against the algebra operations on letters.
    for l1 in 0..h {
        for m1 in 0..h {
            let mut e1 = Matrix::zeros(h, h);
            e1.set(l1, m1, Scalar::one());
            // c xi - (c xi) with c = 2.
            let two = Scalar::one() + Scalar::one();
            let gen = word(vec![Letter::Scalar(e1.scale(&two))])
                .sub(&word(vec![Letter::Scalar(e1.clone())]).scale(&two));
            gens.push((format!("scalar-mult({l1},{m1})"), gen));
            for l2 in 0..h {
                for m2 in 0..h {
                    let mut e2 = Matrix::zeros(h, h);
                    e2.set(l2, m2, Scalar::one());
                    // xi + xi' - (xi + xi').
                    let gen = word(vec![Letter::Scalar(e1.clone())])
                        .add(&word(vec![Letter::Scalar(e2.clone())]))
                        .sub(&word(vec![Letter::Scalar(e1.add(&e2))]));
                    gens.push((format!("scalar-add({l1},{m1};{l2},{m2})"), gen));
                    // xi xi' - (xi xi').
                    let gen = word(vec![Letter::Scalar(e1.clone()), Letter::Scalar(e2.clone())])
                        .sub(&word(vec![Letter::Scalar(e1.hadamard(&e2))]));
                    gens.push((format!("scalar-mul({l1},{m1};{l2},{m2})"), gen));
                }
            }
        }
    }

    // (2) inverse relations.
    for a in 0..n {
        for b in 0..n {
            let mut left = AlgebraElement::zero(h, n);
            let mut right = AlgebraElement::zero(h, n);
            for c in 0..n {
                left.add_word(Scalar::one(), vec![Letter::L([a, c]), Letter::Linv([c, b])]);
                right.add_word(Scalar::one(), vec![Letter::Linv([a, c]), Letter::L([c, b])]);
            }
            let delta = if a == b { AlgebraElement::one(h, n) } else { AlgebraElement::zero(h, n) };
            gens.push((format!("inverse-lr({a},{b})"), left.sub(&delta)));
            gens.push((format!("inverse-rl({a},{b})"), right.sub(&delta)));
        }
    }

    // (3) twisted commutation with scalars, on the indicator basis of functions.
    for a in 0..n {
        for b in 0..n {
            let ta = tr(&ctx.action, a);
            let tb = tr(&ctx.action, b);
            for at in 0..h {
                let f = delta_fn(h, at);
                let tf_a: Vec<Scalar> = (0..h).map(|l| f[ta.apply(l)].clone()).collect();
                let tf_b: Vec<Scalar> = (0..h).map(|l| f[tb.apply(l)].clone()).collect();
                let lw = Letter::L([a, b]);
                let liw = Letter::Linv([a, b]);
                let gen = word(vec![Letter::Scalar(left_scalar(h, &tf_a)), lw.clone()])
                    .sub(&word(vec![lw.clone(), Letter::Scalar(left_scalar(h, &f))]));
                gens.push((format!("twist-l-left({a},{b},{at})"), gen));
                let gen = word(vec![Letter::Scalar(right_scalar(h, &tf_b)), lw.clone()])
                    .sub(&word(vec![lw.clone(), Letter::Scalar(right_scalar(h, &f))]));
                gens.push((format!("twist-l-right({a},{b},{at})"), gen));
                let gen = word(vec![Letter::Scalar(left_scalar(h, &f)), liw.clone()])
                    .sub(&word(vec![liw.clone(), Letter::Scalar(left_scalar(h, &tf_b))]));
                gens.push((format!("twist-linv-left({a},{b},{at})"), gen));
                let gen = word(vec![Letter::Scalar(right_scalar(h, &f)), liw.clone()])
                    .sub(&word(vec![liw.clone(), Letter::Scalar(right_scalar(h, &tf_a))]));
                gens.push((format!("twist-linv-right({a},{b},{at})"), gen));
            }
        }
    }

    // (4) exchange relations.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    gens.push((
                        format!("exchange({a},{b},{c},{d})"),
                        exchange_generator(ctx, a, b, c, d),
                    ));
                }
            }
        }
    }

    // (5) empty word against the unit scalar; the normal form removes the
    // constant letter, so this reduces to zero identically, and we keep it to
    // witness the normalization.
    let ones = Matrix::from_fn(h, h, |_, _| Scalar::one());
    gens.push((
        "empty-vs-unit".to_string(),
        AlgebraElement::one(h, n).sub(&word(vec![Letter::Scalar(ones)])),
    ));

    gens
}

/// sigma_{ac}^{xy} as a function of lambda.
fn sigma_fn(ctx: &SigmaContext, a: usize, c: usize, x: usize, y: usize) -> Vec<Scalar> {
    let n = ctx.x_size();
    (0..ctx.h_size())
        .map(|l| ctx.sigma.mats[l].get(a * n + c, x * n + y).clone())
        .collect()
}

/// The exchange-relation generator for the index quadruple (a, b, c, d).
pub fn exchange_generator(ctx: &SigmaContext, a: usize, b: usize, c: usize, d: usize) -> AlgebraElement {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let mut gen = AlgebraElement::zero(h, n);
    for x in 0..n {
        for y in 0..n {
            let f = sigma_fn(ctx, a, c, x, y);
            gen.add_word(
                Scalar::one(),
                vec![Letter::Scalar(left_scalar(h, &f)), Letter::L([y, d]), Letter::L([x, b])],
            );
            let g = sigma_fn(ctx, x, y, b, d);
            gen.add_word(
                -Scalar::one(),
                vec![Letter::Scalar(right_scalar(h, &g)), Letter::L([c, y]), Letter::L([a, x])],
            );
        }
    }
    gen
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub channel: String,
    pub pass: bool,
    pub checked: usize,
    pub first_failure: Option<String>,
}

/// Verify that a channel annihilates every enumerated defining relation.
pub fn certify_kills_ideal(ctx: &SigmaContext, name: &str, channel: &Channel) -> CertifyReport {
    let gens = ideal_generators(ctx);
    let mut checked = 0;
    for (gname, gen) in &gens {
        checked += 1;
        if !channel.kills(&ctx.action, gen) {
            return CertifyReport {
                channel: name.to_string(),
                pass: false,
                checked,
                first_failure: Some(gname.clone()),
            };
        }
    }
    CertifyReport { channel: name.to_string(), pass: true, checked, first_failure: None }
}

/// A set of evaluation channels, used to compare algebra elements; equality
/// claims are always relative to the battery.
pub struct EvaluationBattery {
    pub channels: Vec<(String, Channel)>,
}

impl EvaluationBattery {
    /// Counit, trivial, and basic channels; callers may add more.
    pub fn standard(ctx: &SigmaContext) -> EvaluationBattery {
        EvaluationBattery {
            channels: vec![
                ("counit".to_string(), Channel::Counit),
                ("trivial".to_string(), Channel::Rep(trivial_rep(ctx))),
                ("basic".to_string(), Channel::Rep(basic_rep(ctx))),
            ],
        }
    }

    /// Certify every channel against the defining relations.
    pub fn certify(&self, ctx: &SigmaContext) -> Vec<CertifyReport> {
        self.channels
            .iter()
            .map(|(name, ch)| certify_kills_ideal(ctx, name, ch))
            .collect()
    }

    pub fn agree(&self, action: &FiniteAction, e1: &AlgebraElement, e2: &AlgebraElement) -> bool {
        self.channels.iter().all(|(_, ch)| ch.agree(action, e1, e2))
    }

    pub fn kills(&self, action: &FiniteAction, e: &AlgebraElement) -> bool {
        self.channels.iter().all(|(_, ch)| ch.kills(action, e))
    }
}

/// All single-letter elements, for axiom checks over the alphabet.
pub fn alphabet(h: usize, n: usize) -> Vec<AlgebraElement> {
    let mut out = Vec::new();
    for l in 0..h {
        for m in 0..h {
            let mut d = Matrix::zeros(h, h);
            d.set(l, m, Scalar::one());
            out.push(AlgebraElement::scalar_letter(n, d));
        }
    }
    for a in 0..n {
        for b in 0..n {
            out.push(AlgebraElement::gen_l(h, n, a, b));
            out.push(AlgebraElement::gen_linv(h, n, a, b));
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub coassociativity: bool,
    pub counit_left: bool,
    pub counit_right: bool,
    pub grading: bool,
    pub checked_elements: usize,
    pub first_failure: Option<String>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.coassociativity && self.counit_left && self.counit_right && self.grading
    }
}

/// Coassociativity (symbolically, over indicator-expanded triples), the two
/// counit identities (through every representation channel of the battery),
/// and compatibility of the coproduct with the grading, verified on the whole
/// alphabet and the provided extra elements.
pub fn check_bialgebroid_axioms(
    ctx: &SigmaContext,
    battery: &EvaluationBattery,
    extra: &[AlgebraElement],
) -> AxiomReport {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let mut elements = alphabet(h, n);
    elements.extend(extra.iter().cloned());
    let mut report = AxiomReport {
        coassociativity: true,
        counit_left: true,
        counit_right: true,
        grading: true,
        checked_elements: elements.len(),
        first_failure: None,
    };
    let fail = |report: &mut AxiomReport, field: &str, what: String| {
        match field {
            "coassoc" => report.coassociativity = false,
            "left" => report.counit_left = false,
            "right" => report.counit_right = false,
            _ => report.grading = false,
        }
        if report.first_failure.is_none() {
            report.first_failure = Some(what);
        }
    };

    for (i, e) in elements.iter().enumerate() {
        let cp = coproduct(e);

        // Grading: each split has matching inner degrees, and for homogeneous
        // elements the outer degrees reproduce the degrees of the element.
        let degrees: Vec<(GroupElement, GroupElement)> =
            e.terms.keys().map(|w| word_degrees(&ctx.action, w)).collect();
        let homogeneous = degrees.windows(2).all(|p| p[0] == p[1]);
        for ((w1, w2), _) in &cp {
            let (l1, r1) = word_degrees(&ctx.action, w1);
            let (l2, r2) = word_degrees(&ctx.action, w2);
            if r1 != l2 {
                fail(&mut report, "grading", format!("element {i}: inner degrees differ"));
            }
            if homogeneous {
                if let Some((wl, wr)) = degrees.first() {
                    if &l1 != wl || &r2 != wr {
                        fail(&mut report, "grading", format!("element {i}: outer degrees differ"));
                    }
                }
            }
        }

        // Coassociativity: expand both ways to triples of basis words.
        let mut lhs: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        let mut rhs: BTreeMap<(Word, Word, Word), Scalar> = BTreeMap::new();
        for ((w1, w2), c) in &cp {
            let e1 = AlgebraElement::from_word(h, n, c.clone(), w1.clone());
            for ((w1a, w1b), c2) in coproduct(&e1) {
                let a = AlgebraElement::from_word(h, n, c2, w1a);
                let b = AlgebraElement::from_word(h, n, Scalar::one(), w1b);
                let t = AlgebraElement::from_word(h, n, Scalar::one(), w2.clone());
                accumulate_triples(&mut lhs, &a, &b, &t);
            }
            let e2 = AlgebraElement::from_word(h, n, c.clone(), w2.clone());
            for ((w2a, w2b), c2) in coproduct(&e2) {
                let a = AlgebraElement::from_word(h, n, c2, w1.clone());
                let b = AlgebraElement::from_word(h, n, Scalar::one(), w2a);
                let t = AlgebraElement::from_word(h, n, Scalar::one(), w2b);
                accumulate_triples(&mut rhs, &a, &b, &t);
            }
        }
        if lhs != rhs {
            fail(&mut report, "coassoc", format!("element {i}: coassociativity fails"));
        }

        // Counit identities through each representation channel.
        for (name, ch) in &battery.channels {
            let (left_ok, right_ok) = counit_identities(ctx, ch, e, &cp);
            if !left_ok {
                fail(&mut report, "left", format!("element {i}: left counit fails on {name}"));
            }
            if !right_ok {
                fail(&mut report, "right", format!("element {i}: right counit fails on {name}"));
            }
        }
    }
    report
}

fn accumulate_triples(
    out: &mut BTreeMap<(Word, Word, Word), Scalar>,
    a: &AlgebraElement,
    b: &AlgebraElement,
    c: &AlgebraElement,
) {
    for (wa, ca) in a.delta_expand() {
        for (wb, cb) in b.delta_expand() {
            for (wc, cc) in c.delta_expand() {
                let coeff = &ca * &cb * &cc;
                let e = out
                    .entry((wa.clone(), wb.clone(), wc.clone()))
                    .or_insert_with(Scalar::zero);
                *e = &*e + &coeff;
                if e.is_zero() {
                    out.remove(&(wa.clone(), wb.clone(), wc.clone()));
                }
            }
        }
    }
}

/// The two counit identities for one element through one channel: summing
/// the counit value of one tensor factor (applied to the constant function 1)
/// against the channel image of the other recovers the channel image.
fn counit_identities(
    ctx: &SigmaContext,
    channel: &Channel,
    e: &AlgebraElement,
    cp: &BTreeMap<(Word, Word), Scalar>,
) -> (bool, bool) {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let ones = vec![Scalar::one(); h];
    match channel {
        Channel::Counit => {
            let target = counit(&ctx.action, e);
            let mut left = IhxElement::zero(h);
            let mut right = IhxElement::zero(h);
            for ((w1, w2), c) in cp {
                let e1 = AlgebraElement::from_word(h, n, Scalar::one(), w1.clone());
                let e2 = AlgebraElement::from_word(h, n, Scalar::one(), w2.clone());
                let f1 = counit(&ctx.action, &e1).apply(&ones);
                let lterm = IhxElement::from_term(h, GroupElement::identity(h), f1)
                    .mul(&counit(&ctx.action, &e2));
                left = left.add(&lterm.scale(c));
                let f2 = counit(&ctx.action, &e2).apply(&ones);
                let rterm = IhxElement::from_term(h, GroupElement::identity(h), f2)
                    .mul(&counit(&ctx.action, &e1));
                right = right.add(&rterm.scale(c));
            }
            (
                left.to_operator() == target.to_operator(),
                right.to_operator() == target.to_operator(),
            )
        }
        Channel::Rep(rep) => {
            let target = rep.eval(&ctx.action, e);
            let mut left = DhxElement::zero(&rep.v);
            let mut right = DhxElement::zero(&rep.v);
            for ((w1, w2), c) in cp {
                let e1 = AlgebraElement::from_word(h, n, Scalar::one(), w1.clone());
                let e2 = AlgebraElement::from_word(h, n, Scalar::one(), w2.clone());
                let f1 = counit(&ctx.action, &e1).apply(&ones);
                left = left.add(&mu_l(&rep.v, &f1).star(&rep.eval(&ctx.action, &e2)).scale(c));
                let f2 = counit(&ctx.action, &e2).apply(&ones);
                right = right.add(&mu_r(&rep.v, &f2).star(&rep.eval(&ctx.action, &e1)).scale(c));
            }
            (
                left.to_operator() == target.to_operator(),
                right.to_operator() == target.to_operator(),
            )
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DemoReport {
    pub counit_value_at_zero: String,
    pub left_degree_equals_right: bool,
    pub degree_12_differs_from_34: bool,
    pub unique_degree_pair: Option<(usize, usize)>,
    pub rewrite_is_relation: bool,
    pub rhs_left_degrees_avoid_12: bool,
    pub channels_certified: Vec<CertifyReport>,
    pub pass: bool,
}

/// A worked example showing that the degree decomposition is not direct: a
/// word of left degree [1][2] is congruent, modulo the exchange relation at
/// (4,2,3,1), to a combination of words whose left degrees all differ from
/// [1][2].
pub fn demo_nondirect_sum(ctx: &SigmaContext) -> DemoReport {
    let h = ctx.h_size();
    let n = ctx.x_size();
    let action = &ctx.action;
    let ones = vec![Scalar::one(); h];

    // v = (sigma_{43}^{21} (x) 1) L_{11} L_{22}.
    let f = sigma_fn(ctx, 4, 3, 2, 1);
    let v = AlgebraElement::from_word(
        h,
        n,
        Scalar::one(),
        vec![Letter::Scalar(left_scalar(h, &f)), Letter::L([1, 1]), Letter::L([2, 2])],
    );

    let counit_value_at_zero =
        crate::scalar::scalar_string(&counit(action, &v).apply(&ones)[0]);

    let d12 = tr(action, 1).compose(&tr(action, 2));
    let d34 = tr(action, 3).compose(&tr(action, 4));
    let (vl, vr) = {
        let word = v.terms.keys().next().cloned().unwrap_or_default();
        word_degrees(action, &word)
    };
    let left_degree_equals_right = vl == d12 && vr == d12;
    let degree_12_differs_from_34 = d12 != d34;

    let mut unique_degree_pair = None;
    let mut unique = true;
    for x in 0..n {
        for y in 0..n {
            if tr(action, x).compose(&tr(action, y)) == d12 {
                if unique_degree_pair.is_some() {
                    unique = false;
                } else {
                    unique_degree_pair = Some((x, y));
                }
            }
        }
    }
    if !unique {
        unique_degree_pair = None;
    }

    // The rewriting: v - rhs is exactly the exchange relation at (4,2,3,1),
    // so v is congruent to rhs modulo the ideal.
    let gen = exchange_generator(ctx, 4, 2, 3, 1);
    let rhs = v.sub(&gen);
    let battery = EvaluationBattery::standard(ctx);
    let channels_certified = battery.certify(ctx);
    let rewrite_is_relation =
        channels_certified.iter().all(|r| r.pass) && battery.agree(action, &v, &rhs);

    let rhs_left_degrees_avoid_12 = rhs
        .terms
        .keys()
        .all(|w| word_degrees(action, w).0 != d12);

    let pass = counit_value_at_zero == "1"
        && left_degree_equals_right
        && degree_12_differs_from_34
        && unique_degree_pair == Some((1, 2))
        && rewrite_is_relation
        && rhs_left_degrees_avoid_12;

    DemoReport {
        counit_value_at_zero,
        left_degree_equals_right,
        degree_12_differs_from_34,
        unique_degree_pair,
        rewrite_is_relation,
        rhs_left_degrees_avoid_12,
        channels_certified,
        pass,
    }
}

/// JSON file format for algebra elements.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ElementTerm {
    pub coeff: String,
    pub word: Vec<Letter>,
}

pub fn element_to_terms(e: &AlgebraElement) -> Vec<ElementTerm> {
    e.terms
        .iter()
        .map(|(w, c)| ElementTerm { coeff: crate::scalar::scalar_string(c), word: w.clone() })
        .collect()
}

pub fn element_from_terms(
    h_size: usize,
    x_size: usize,
    terms: &[ElementTerm],
) -> Result<AlgebraElement, String> {
    let mut e = AlgebraElement::zero(h_size, x_size);
    for t in terms {
        let c = crate::scalar::parse_scalar(&t.coeff)?;
        for letter in &t.word {
            match letter {
                Letter::Scalar(m) => {
                    if m.rows != h_size || m.cols != h_size {
                        return Err("scalar letter has wrong shape".into());
                    }
                }
                Letter::L([a, b]) | Letter::Linv([a, b]) => {
                    if *a >= x_size || *b >= x_size {
                        return Err(format!("generator index ({a},{b}) out of range"));
                    }
                }
            }
        }
        e.add_word(c, t.word.clone());
    }
    Ok(e)
}
