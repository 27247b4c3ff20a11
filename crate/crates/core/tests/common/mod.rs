#![allow(dead_code)]

use std::collections::BTreeMap;

use ncps::random::PolyGen;
use ncps::{Coefficient, Generator, NCPoly};
use proptest::prelude::*;

/// Normal order a word by repeatedly rewriting the leftmost `p x` into
/// `x p - i hbar`. Deliberately naive: it never uses the closed product
/// formula, so it can be compared against it.
pub fn naive_normal_order(word: &[Generator], coeff: &Coefficient) -> NCPoly {
    let mut pending: BTreeMap<Vec<Generator>, Coefficient> = BTreeMap::new();
    pending.insert(word.to_vec(), coeff.clone());
    let mut done: Vec<(u32, u32, Coefficient)> = Vec::new();
    let minus_i_hbar = -&Coefficient::i_hbar();
    while let Some((w, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match w.windows(2).position(|pair| pair == [Generator::P, Generator::X]) {
            None => {
                let a = w.iter().filter(|g| **g == Generator::X).count() as u32;
                done.push((a, w.len() as u32 - a, c));
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                let mut contracted = w.clone();
                contracted.drain(i..i + 2);
                add_into(&mut pending, swapped, c.clone());
                add_into(&mut pending, contracted, &c * &minus_i_hbar);
            }
        }
    }
    NCPoly::from_terms(done)
}

fn add_into(map: &mut BTreeMap<Vec<Generator>, Coefficient>, w: Vec<Generator>, c: Coefficient) {
    let entry = map.entry(w).or_insert_with(Coefficient::zero);
    *entry = &*entry + &c;
}

/// Words over `{x, p}` of length at most `max_len`.
pub fn word(max_len: usize) -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(prop_oneof![Just(Generator::X), Just(Generator::P)], 0..=max_len)
}

/// Seeded `hbar`-free polynomial of degree at most `max_degree`.
pub fn classical(max_degree: u32) -> impl Strategy<Value = NCPoly> {
    any::<u64>().prop_map(move |seed| PolyGen::new(seed).classical(max_degree))
}

/// Seeded polynomial with symbolic coefficients.
pub fn symbolic(max_degree: u32) -> impl Strategy<Value = NCPoly> {
    any::<u64>().prop_map(move |seed| PolyGen::new(seed).symbolic(max_degree))
}

pub fn poly(src: &str) -> NCPoly {
    ncps::parse_poly(src).unwrap_or_else(|e| panic!("{}", e.annotate(src)))
}
