//! Search for small AWAs on which the BRV construction is ambiguous.
//!
//! Candidates have five states `p q s t r` (numbered 0..5) with
//! `F = {p, r}`: an accepting singleton `p`, a rejecting cycle `q → s → t`
//! and an accepting sink-like `r`. Only `q` branches disjunctively, and only
//! on one letter.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::awa::Awa;
use crate::constructions::brv_construct_limited;
use crate::formula::Formula;
use crate::set::StateSet;
use crate::verification::{ambiguity_check_limited, AmbiguityWitness};

use super::generator::{letters, mix};

const P: usize = 0;
const Q: usize = 1;
const S: usize = 2;
const T: usize = 3;
const R: usize = 4;

pub fn brv_candidate(seed: u64) -> Awa {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = 2;
    let mut delta = vec![vec![Formula::False; k]; 5];
    let later = [Q, S, T, R];
    for slot in delta[P].iter_mut() {
        let extra = *later.choose(&mut rng).unwrap();
        *slot = Formula::and([Formula::state(P), Formula::state(extra)]);
    }
    let branching = rng.gen_range(0..k);
    let cycle_letter: Vec<usize> = (0..3).map(|_| rng.gen_range(0..k)).collect();
    for (i, &q) in [Q, S, T].iter().enumerate() {
        let next = [S, T, Q][i];
        for (l, slot) in delta[q].iter_mut().enumerate() {
            let mut targets: Vec<usize> = Vec::new();
            if l == cycle_letter[i] {
                targets.push(next);
            }
            if targets.is_empty() || rng.gen_bool(0.3) {
                targets.push(*later.choose(&mut rng).unwrap());
            }
            targets.sort_unstable();
            targets.dedup();
            let disjunctive = q == Q && l == branching;
            if disjunctive && targets.len() == 1 {
                let other = later
                    .iter()
                    .copied()
                    .filter(|&x| x != targets[0])
                    .collect::<Vec<_>>();
                targets.push(*other.choose(&mut rng).unwrap());
            }
            let lits = targets.into_iter().map(Formula::state);
            *slot = if disjunctive {
                Formula::or(lits)
            } else {
                Formula::and(lits)
            };
        }
    }
    for slot in delta[R].iter_mut() {
        *slot = Formula::state(R);
    }
    let accepting: StateSet = [P, R].into_iter().collect();
    Awa::new(letters(k), P, accepting, delta).expect("candidate is well formed")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrvAmbiguity {
    pub seed: u64,
    pub attempt: usize,
    pub awa: Awa,
    pub witness: AmbiguityWitness,
}

/// Tries `attempts` candidates derived from `seed` and returns the first
/// whose BRV automaton has a (replay-validated) ambiguity witness.
pub fn search_brv_ambiguity(
    seed: u64,
    attempts: usize,
    product_limit: usize,
) -> Option<BrvAmbiguity> {
    (0..attempts).find_map(|attempt| {
        let s = mix(seed, attempt as u64);
        let a = brv_candidate(s);
        let b = brv_construct_limited(&a, 100_000).ok()?;
        let witness = ambiguity_check_limited(&b, product_limit).ok()??;
        witness.validate(&b).then_some(BrvAmbiguity {
            seed: s,
            attempt,
            awa: a,
            witness,
        })
    })
}
