//! The group of bijections of H generated by the translations `lambda -> lambda . x`,
//! with generator-word bookkeeping.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carriers::FiniteAction;

/// A bijection of H, the canonical (faithful) form of a group element.
/// The group acts on H on the right, so `lambda . alpha = alpha.perm[lambda]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub perm: Vec<usize>,
}

impl GroupElement {
    pub fn identity(h_size: usize) -> GroupElement {
        GroupElement { perm: (0..h_size).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &v)| i == v)
    }

    pub fn apply(&self, lambda: usize) -> usize {
        self.perm[lambda]
    }

    /// Product `self * other` under the right-action convention:
    /// `lambda . (self * other) = (lambda . self) . other`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            perm: self.perm.iter().map(|&l| other.perm[l]).collect(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut perm = vec![0; self.perm.len()];
        for (i, &v) in self.perm.iter().enumerate() {
            perm[v] = i;
        }
        GroupElement { perm }
    }
}

/// One signed generator: the translation by `gen`, optionally inverted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedGen {
    pub gen: usize,
    pub inverse: bool,
}

pub type GeneratorWord = Vec<SignedGen>;

/// The translation `lambda -> lambda . x` as a group element.
pub fn translation_element(action: &FiniteAction, x: usize) -> GroupElement {
    GroupElement {
        perm: (0..action.h_size).map(|l| action.apply(l, x)).collect(),
    }
}

/// Evaluate a signed generator word left to right.
pub fn evaluate_word(action: &FiniteAction, word: &[SignedGen]) -> GroupElement {
    let mut acc = GroupElement::identity(action.h_size);
    for sg in word {
        let t = translation_element(action, sg.gen);
        let t = if sg.inverse { t.inverse() } else { t };
        acc = acc.compose(&t);
    }
    acc
}

/// Two words are equal in the group iff their permutations agree.
pub fn same_class(action: &FiniteAction, w1: &[SignedGen], w2: &[SignedGen]) -> bool {
    evaluate_word(action, w1) == evaluate_word(action, w2)
}

#[derive(Debug, Error)]
#[error("group closure exceeded cap of {cap} elements")]
pub struct ClosureCapExceeded {
    pub cap: usize,
}

/// The full generated group, with a shortest-first witness word per element.
#[derive(Debug, Clone)]
pub struct GroupClosure {
    pub elements: Vec<GroupElement>,
    pub witnesses: Vec<GeneratorWord>,
    index: BTreeMap<GroupElement, usize>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.index.contains_key(g)
    }
}

/// Breadth-first closure of the translations and their inverses, starting from
/// the identity. Deterministic: generators are tried in index order, plain
/// before inverted, so witnesses are shortest and lexicographically first.
pub fn generate_group(action: &FiniteAction, cap: usize) -> Result<GroupClosure, ClosureCapExceeded> {
    let gens: Vec<(SignedGen, GroupElement)> = (0..action.x_size)
        .flat_map(|x| {
            let t = translation_element(action, x);
            let ti = t.inverse();
            [
                (SignedGen { gen: x, inverse: false }, t),
                (SignedGen { gen: x, inverse: true }, ti),
            ]
        })
        .collect();

    let mut elements = vec![GroupElement::identity(action.h_size)];
    let mut witnesses: Vec<GeneratorWord> = vec![Vec::new()];
    let mut index = BTreeMap::new();
    index.insert(elements[0].clone(), 0);
    let mut queue: VecDeque<usize> = VecDeque::from([0]);

    while let Some(i) = queue.pop_front() {
        let base = elements[i].clone();
        let base_word = witnesses[i].clone();
        for (sg, t) in &gens {
            let next = base.compose(t);
            if index.contains_key(&next) {
                continue;
            }
            if elements.len() >= cap {
                return Err(ClosureCapExceeded { cap });
            }
            let mut word = base_word.clone();
            word.push(*sg);
            index.insert(next.clone(), elements.len());
            queue.push_back(elements.len());
            elements.push(next);
            witnesses.push(word);
        }
    }

    Ok(GroupClosure { elements, witnesses, index })
}
