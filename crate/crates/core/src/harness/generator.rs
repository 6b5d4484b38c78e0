//! Seeded random weak AWAs with a prescribed SCC structure.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::awa::Awa;
use crate::formula::Formula;
use crate::set::{StateSet, MAX_STATES};

/// One block of the SCC profile. Blocks are laid out in order; block `i`
/// holds the next `size` state numbers and may only reach blocks `≥ i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccSpec {
    pub size: usize,
    pub accepting: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub state_count: usize,
    pub alphabet_size: usize,
    pub scc_profile: Vec<SccSpec>,
    /// Probability of including each allowed target in a transition.
    pub formula_density: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("SCC sizes add up to {found}, expected {expected}")]
    ProfileSize { expected: usize, found: usize },
    #[error("SCC of size 0 in profile")]
    EmptyScc,
    #[error("density {0} outside (0, 1]")]
    Density(f64),
    #[error("alphabet size must be between 1 and 26")]
    Alphabet,
    #[error("state count must be between 1 and {MAX_STATES}")]
    StateCount,
}

impl GenParams {
    pub fn validate(&self) -> Result<(), GenError> {
        if self.state_count == 0 || self.state_count > MAX_STATES {
            return Err(GenError::StateCount);
        }
        if !(1..=26).contains(&self.alphabet_size) {
            return Err(GenError::Alphabet);
        }
        if !(self.formula_density > 0.0 && self.formula_density <= 1.0) {
            return Err(GenError::Density(self.formula_density));
        }
        if self.scc_profile.iter().any(|s| s.size == 0) {
            return Err(GenError::EmptyScc);
        }
        let found: usize = self.scc_profile.iter().map(|s| s.size).sum();
        if found != self.state_count {
            return Err(GenError::ProfileSize {
                expected: self.state_count,
                found,
            });
        }
        Ok(())
    }

    pub fn is_single_scc(&self) -> bool {
        self.scc_profile.len() == 1
    }

    pub fn is_very_weak(&self) -> bool {
        self.scc_profile.iter().all(|s| s.size == 1)
    }
}

/// Letters `a`, `b`, … for an alphabet of size `k`.
pub fn letters(k: usize) -> Vec<String> {
    (0..k)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect()
}

/// Builds a complete weak AWA realizing `p.scc_profile`; the initial state
/// is 0. Each block is made strongly connected by a cycle through all of its
/// states (a self-loop for singletons), each on a random letter.
pub fn random_weak_awa(p: &GenParams) -> Result<Awa, GenError> {
    p.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.state_count;
    let k = p.alphabet_size;
    let mut block_start = Vec::new();
    let mut accepting = StateSet::EMPTY;
    let mut start = 0;
    for spec in &p.scc_profile {
        block_start.push(start);
        if spec.accepting {
            for q in start..start + spec.size {
                accepting.insert(q);
            }
        }
        start += spec.size;
    }
    let mut delta = vec![vec![Formula::False; k]; n];
    for (b, spec) in p.scc_profile.iter().enumerate() {
        let lo = block_start[b];
        let hi = lo + spec.size;
        for (q, row) in (lo..hi).zip(&mut delta[lo..hi]) {
            let forced_target = if q + 1 == hi { lo } else { q + 1 };
            let forced_letter = rng.gen_range(0..k);
            for (l, slot) in row.iter_mut().enumerate() {
                let mut targets: Vec<usize> = (lo..n)
                    .filter(|_| rng.gen_bool(p.formula_density))
                    .collect();
                if targets.is_empty() {
                    targets.push(rng.gen_range(lo..n));
                }
                let mut f = random_tree(&mut rng, &mut targets);
                if l == forced_letter && !f.states().contains(forced_target) {
                    let lit = Formula::state(forced_target);
                    f = if rng.gen_bool(0.5) {
                        Formula::and([lit, f])
                    } else {
                        Formula::or([lit, f])
                    };
                }
                *slot = f;
            }
        }
    }
    let a = Awa::new(letters(k), 0, accepting, delta)
        .expect("generated automaton is well formed")
        .complete();
    debug_assert!(a.validate_weak().is_ok());
    Ok(a)
}

/// A random and/or tree with the given literals as leaves, in random order.
fn random_tree(rng: &mut ChaCha8Rng, leaves: &mut [usize]) -> Formula {
    leaves.shuffle(rng);
    build_tree(rng, leaves)
}

fn build_tree(rng: &mut ChaCha8Rng, leaves: &[usize]) -> Formula {
    if leaves.len() == 1 {
        return Formula::state(leaves[0]);
    }
    let cut = rng.gen_range(1..leaves.len());
    let (l, r) = (
        build_tree(rng, &leaves[..cut]),
        build_tree(rng, &leaves[cut..]),
    );
    if rng.gen_bool(0.5) {
        Formula::and([l, r])
    } else {
        Formula::or([l, r])
    }
}

/// Parameters of the `index`-th corpus automaton. Indices `≡ 0, 1, 2`
/// (mod 10) get a single SCC, indices `≡ 3` only singleton SCCs, and the
/// rest a random split into blocks. Multi-block profiles mostly end in an
/// accepting block.
pub fn corpus_params(
    seed: u64,
    index: usize,
    max_states: usize,
    alphabet_size: usize,
) -> GenParams {
    let record_seed = mix(seed, index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(record_seed);
    let max_states = max_states.max(1);
    let n = rng.gen_range(2.min(max_states)..=max_states);
    let mut scc_profile = match index % 10 {
        0..=2 => vec![SccSpec {
            size: n,
            accepting: rng.gen_bool(0.5),
        }],
        3 => (0..n)
            .map(|_| SccSpec {
                size: 1,
                accepting: rng.gen_bool(0.5),
            })
            .collect(),
        _ => {
            let mut blocks = Vec::new();
            let mut left = n;
            while left > 0 {
                let size = rng.gen_range(1..=left);
                blocks.push(SccSpec {
                    size,
                    accepting: rng.gen_bool(0.5),
                });
                left -= size;
            }
            blocks
        }
    };
    // Runs only move forward, so a rejecting last block tends to empty the
    // language; keep it accepting most of the time.
    if scc_profile.len() > 1 && rng.gen_bool(0.8) {
        scc_profile.last_mut().unwrap().accepting = true;
    }
    GenParams {
        state_count: n,
        alphabet_size,
        scc_profile,
        formula_density: rng.gen_range(0.2..0.6),
        seed: record_seed,
    }
}

/// SplitMix64 finalizer over `seed + index`, giving independent record seeds.
pub fn mix(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
