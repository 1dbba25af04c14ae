use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{ElemSet, PhaseModel, PhaseSpace, Valuation};
use crate::syntax::Sequent;

/// Largest size the generators go to; larger requests are clamped.
pub const MAX_GENERATED_SIZE: usize = 6;
/// Exhaustive valuations below this count, seeded samples of this many above.
pub const DEFAULT_VALUATION_CAP: usize = 512;
const BOTTOM_SAMPLES: usize = 12;

/// Every commutative monoid on `0..n` with unit 0, found by brute force over
/// the products of non-unit pairs.
fn exhaustive_monoids(n: usize) -> Vec<Vec<Vec<usize>>> {
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut vals = vec![0usize; pairs.len()];
    loop {
        let mut t: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| if i == 0 { j } else if j == 0 { i } else { 0 }).collect())
            .collect();
        for (&(i, j), &v) in pairs.iter().zip(&vals) {
            t[i][j] = v;
            t[j][i] = v;
        }
        if PhaseSpace::new(t.clone(), 0, ElemSet::EMPTY).is_ok() {
            out.push(t);
        }
        // odometer over vals
        let mut k = 0;
        while k < vals.len() {
            vals[k] += 1;
            if vals[k] < n {
                break;
            }
            vals[k] = 0;
            k += 1;
        }
        if k == vals.len() {
            return out;
        }
    }
}

fn table(n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| (0..n).map(|j| op(i, j)).collect()).collect()
}

/// Named families used above the exhaustive sizes.
fn family_monoids(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![
        // cyclic group
        table(n, |i, j| (i + j) % n),
        // chain, unit at the bottom
        table(n, |i, j| i.max(j)),
        // chain, unit at the top
        table(n, |i, j| match (i, j) {
            (0, y) => y,
            (x, 0) => x,
            (x, y) => x.min(y),
        }),
        // counter saturating at n-1
        table(n, |i, j| (i + j).min(n - 1)),
        // all products of non-units collapse to 1
        table(n, |i, j| match (i, j) {
            (0, y) => y,
            (x, 0) => x,
            _ => 1,
        }),
    ];
    if n == 4 {
        out.push(table(4, |i, j| i ^ j));
    }
    out
}

fn bottoms(n: usize, rng: &mut ChaCha8Rng) -> Vec<ElemSet> {
    let total = 1u64 << n;
    if n <= 3 {
        return (0..total).map(ElemSet).collect();
    }
    let mut picked = BTreeSet::new();
    while picked.len() < BOTTOM_SAMPLES {
        picked.insert(rng.gen_range(0..total));
    }
    picked.into_iter().map(ElemSet).collect()
}

fn size_rng(seed: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(n as u64))
}

/// All spaces up to `max_size`, in a fixed order: size, monoid, `bot`.
pub fn generate_spaces(seed: u64, max_size: usize) -> Vec<PhaseSpace> {
    let mut out = Vec::new();
    for n in 1..=max_size.min(MAX_GENERATED_SIZE) {
        let mut rng = size_rng(seed, n);
        let monoids = if n <= 3 { exhaustive_monoids(n) } else { family_monoids(n) };
        for t in monoids {
            let base = PhaseSpace::new(t, 0, ElemSet::EMPTY).expect("generated tables are monoids");
            for b in bottoms(n, &mut rng) {
                out.push(base.with_bottom(b));
            }
        }
    }
    out
}

/// The distinct facts of a space, ascending.
pub fn facts(space: &PhaseSpace) -> Vec<ElemSet> {
    let all: BTreeSet<ElemSet> = (0..1u64 << space.size()).map(|x| space.closure(ElemSet(x))).collect();
    all.into_iter().collect()
}

fn valuations(space: &PhaseSpace, atoms: &[String], cap: usize, rng: &mut ChaCha8Rng) -> Vec<Valuation> {
    let fs = facts(space);
    let count = (fs.len() as u128).checked_pow(atoms.len() as u32);
    match count {
        Some(c) if c <= cap as u128 => {
            let mut out = Vec::with_capacity(c as usize);
            let mut idx = vec![0usize; atoms.len()];
            loop {
                out.push(atoms.iter().cloned().zip(idx.iter().map(|&i| fs[i])).collect());
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < fs.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    return out;
                }
            }
        }
        _ => (0..cap)
            .map(|_| {
                atoms
                    .iter()
                    .map(|p| {
                        let raw = ElemSet(rng.gen::<u64>()).intersect(space.all());
                        (p.clone(), space.closure(raw))
                    })
                    .collect()
            })
            .collect(),
    }
}

fn space_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64 + 1);
    rng
}

fn models_of(space: &PhaseSpace, index: usize, atoms: &[String], seed: u64, cap: usize) -> Vec<PhaseModel> {
    let mut rng = space_rng(seed, index);
    valuations(space, atoms, cap, &mut rng)
        .into_iter()
        .map(|v| PhaseModel {
            space: space.clone(),
            valuation: v,
        })
        .collect()
}

/// Models over every generated space, valuing exactly `atoms`.
pub fn generate_models(seed: u64, max_size: usize, atoms: &[String]) -> impl Iterator<Item = PhaseModel> {
    let atoms = atoms.to_vec();
    generate_spaces(seed, max_size)
        .into_iter()
        .enumerate()
        .flat_map(move |(i, s)| models_of(&s, i, &atoms, seed, DEFAULT_VALUATION_CAP))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountermodelOptions {
    pub max_size: usize,
    pub seed: u64,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    pub valuation_cap: usize,
}

impl Default for CountermodelOptions {
    fn default() -> Self {
        CountermodelOptions {
            max_size: 3,
            seed: 0,
            jobs: 1,
            valuation_cap: DEFAULT_VALUATION_CAP,
        }
    }
}

pub fn find_countermodel(s: &Sequent, max_size: usize) -> Option<PhaseModel> {
    find_countermodel_with(
        s,
        &CountermodelOptions {
            max_size,
            ..CountermodelOptions::default()
        },
    )
}

/// First model (in generation order) where `s` fails. The answer does not
/// depend on `jobs`.
pub fn find_countermodel_with(s: &Sequent, opts: &CountermodelOptions) -> Option<PhaseModel> {
    let atoms: Vec<String> = s
        .formulas()
        .flat_map(|f| f.atoms())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let spaces = generate_spaces(opts.seed, opts.max_size);
    let search = |(i, space): (usize, &PhaseSpace)| {
        models_of(space, i, &atoms, opts.seed, opts.valuation_cap)
            .into_iter()
            .find(|m| m.sequent_holds(s) == Ok(false))
    };
    if opts.jobs == 1 {
        return spaces.iter().enumerate().find_map(search);
    }
    let run = || spaces.par_iter().enumerate().find_map_first(search);
    match rayon::ThreadPoolBuilder::new().num_threads(opts.jobs).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    }
}
