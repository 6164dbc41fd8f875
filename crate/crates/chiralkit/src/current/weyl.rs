//! Formal Weyl elements: complex-linear combinations of symmetric words
//! over a generator type, with the star product determined by a Poisson
//! pairing through the contraction formula
//!
//! `u ⋆ v = Σ_matchings (i/2)^k · Π τ(u_a, v_b) · (word of unpaired letters)`
//!
//! summed over all partial matchings of the letters of `u` against those of
//! `v`. The deformation scale is fixed at one; all coefficients stay exact.

use std::collections::BTreeMap;

use crate::rat::Rat;
use crate::scalar::ComplexRat;

/// Sorted multiset of generators.
pub type Word<G> = Vec<G>;

/// Finite complex combination of symmetric words; the empty word is the
/// algebra unit. Zero coefficients are pruned eagerly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement<G: Ord + Clone> {
    terms: BTreeMap<Word<G>, ComplexRat>,
}

impl<G: Ord + Clone> WeylElement<G> {
    pub fn zero() -> Self {
        WeylElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn unit() -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Vec::new(), ComplexRat::one());
        WeylElement { terms }
    }

    /// Degree-one element for a single generator.
    pub fn generator(g: G) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![g], ComplexRat::one());
        WeylElement { terms }
    }

    /// Monomial: the symmetric word of the given letters.
    pub fn word(mut letters: Vec<G>) -> Self {
        letters.sort();
        let mut terms = BTreeMap::new();
        terms.insert(letters, ComplexRat::one());
        WeylElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word<G>, &ComplexRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &[G]) -> ComplexRat {
        self.terms
            .get(word)
            .cloned()
            .unwrap_or_else(ComplexRat::zero)
    }

    fn insert(&mut self, word: Word<G>, coeff: ComplexRat) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    o.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-ComplexRat::one()))
    }

    pub fn scale(&self, k: &ComplexRat) -> Self {
        if k.is_zero() {
            return WeylElement::zero();
        }
        WeylElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone() * k.clone()))
                .collect(),
        }
    }

    /// Star-involution: complex conjugation of coefficients (the generators
    /// are real and words are symmetric).
    pub fn conjugate(&self) -> Self {
        WeylElement {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.conj()))
                .collect(),
        }
    }

    /// Star product with respect to the Poisson pairing `tau`.
    pub fn product(&self, other: &Self, tau: &impl Fn(&G, &G) -> Rat) -> Self {
        let mut out = WeylElement::zero();
        for (u, cu) in &self.terms {
            for (v, cv) in &other.terms {
                let expanded = word_product(u, v, tau);
                for (w, c) in expanded.terms {
                    out.insert(w, c * cu.clone() * cv.clone());
                }
            }
        }
        out
    }

    /// `a ⋆ b - b ⋆ a`.
    pub fn commutator(&self, other: &Self, tau: &impl Fn(&G, &G) -> Rat) -> Self {
        self.product(other, tau).sub(&other.product(self, tau))
    }

    /// Applies a generator map letterwise; the algebra map induced by a
    /// linear map of the degree-one part.
    pub fn map_generators<H: Ord + Clone, E>(
        &self,
        f: &impl Fn(&G) -> Result<H, E>,
    ) -> Result<WeylElement<H>, E> {
        let mut out = WeylElement::zero();
        for (w, c) in &self.terms {
            let mut new_word = Vec::with_capacity(w.len());
            for g in w {
                new_word.push(f(g)?);
            }
            new_word.sort();
            out.insert(new_word, c.clone());
        }
        Ok(out)
    }
}

/// Expands the product of two symmetric words over all partial matchings
/// of letter positions.
fn word_product<G: Ord + Clone>(u: &[G], v: &[G], tau: &impl Fn(&G, &G) -> Rat) -> WeylElement<G> {
    let mut out = WeylElement::zero();
    let mut used = vec![false; v.len()];
    let mut unpaired = Vec::with_capacity(u.len());
    expand(
        u,
        v,
        0,
        &mut used,
        &mut unpaired,
        &Rat::from_integer(1.into()),
        0,
        tau,
        &mut out,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn expand<G: Ord + Clone>(
    u: &[G],
    v: &[G],
    idx: usize,
    used: &mut Vec<bool>,
    unpaired_u: &mut Vec<G>,
    tau_acc: &Rat,
    pairs: usize,
    tau: &impl Fn(&G, &G) -> Rat,
    out: &mut WeylElement<G>,
) {
    use num_traits::Zero;
    if idx == u.len() {
        let mut word: Vec<G> = unpaired_u.clone();
        word.extend(
            v.iter()
                .zip(used.iter())
                .filter(|(_, t)| !**t)
                .map(|(g, _)| g.clone()),
        );
        word.sort();
        let coeff = ComplexRat::i_over_two_pow(pairs) * ComplexRat::from_rat(tau_acc.clone());
        out.insert(word, coeff);
        return;
    }
    unpaired_u.push(u[idx].clone());
    expand(u, v, idx + 1, used, unpaired_u, tau_acc, pairs, tau, out);
    unpaired_u.pop();
    for j in 0..v.len() {
        if used[j] {
            continue;
        }
        let t = tau(&u[idx], &v[j]);
        if t.is_zero() {
            continue;
        }
        used[j] = true;
        let acc = tau_acc * &t;
        expand(u, v, idx + 1, used, unpaired_u, &acc, pairs + 1, tau, out);
        used[j] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn tau_int(a: &i64, b: &i64) -> Rat {
        // antisymmetric toy pairing on integer labels
        rat(*a - *b, 1) * rat(1, 4)
    }

    #[test]
    fn unit_is_neutral() {
        let a = WeylElement::word(vec![1i64, 2]).scale(&ComplexRat::new(rat(2, 3), int(1)));
        assert_eq!(WeylElement::unit().product(&a, &tau_int), a);
        assert_eq!(a.product(&WeylElement::unit(), &tau_int), a);
    }

    #[test]
    fn ccr_commutator_of_generators() {
        let a = WeylElement::generator(3i64);
        let b = WeylElement::generator(1i64);
        let comm = a.commutator(&b, &tau_int);
        // [phi(a), phi(b)] = i tau(a, b) * unit
        let expected =
            WeylElement::unit().scale(&(ComplexRat::i() * ComplexRat::from_rat(tau_int(&3, &1))));
        assert_eq!(comm, expected);
    }

    #[test]
    fn associativity_on_short_words() {
        let a = WeylElement::word(vec![1i64, 2]);
        let b = WeylElement::generator(3i64).add(&WeylElement::unit());
        let c = WeylElement::word(vec![2i64, 4, 4]);
        let left = a.product(&b, &tau_int).product(&c, &tau_int);
        let right = a.product(&b.product(&c, &tau_int), &tau_int);
        assert_eq!(left, right);
    }

    #[test]
    fn involution_reverses_products() {
        let a = WeylElement::generator(1i64).scale(&ComplexRat::i());
        let b = WeylElement::generator(2i64);
        let lhs = a.product(&b, &tau_int).conjugate();
        let rhs = b.conjugate().product(&a.conjugate(), &tau_int);
        assert_eq!(lhs, rhs);
    }
}
