//! Seeded samples of small multicategories and multifunctors between them.

use std::ops::ControlFlow;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    elements_multicat, for_each_algebra, for_each_multifunctor, generated, radix_count,
    FinMulticategory, Generator, MultiAlgebra, MultiFunctor, Multicat,
};
use crate::category::Cat;

/// Closure limit used for random generators; larger closures are skipped.
pub const SAMPLE_LIMIT: usize = 40;

/// Multicategories generated by one or two random functions on one or two
/// colours with carriers of size at most 2, each with its defining algebra.
pub fn generated_sample(count: usize, seed: u64) -> Vec<(Multicat, MultiAlgebra)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count && tries < count * 20 {
        tries += 1;
        let nc = rng.gen_range(1..=2);
        let sets: Vec<usize> = (0..nc).map(|_| rng.gen_range(1..=2)).collect();
        let ngens = rng.gen_range(1..=2);
        let gens = (0..ngens)
            .map(|k| {
                let arity = rng.gen_range(0..=2);
                let sources: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..nc)).collect();
                let target = rng.gen_range(0..nc);
                let rows = radix_count(&sources.iter().map(|&c| sets[c]).collect::<Vec<_>>());
                Generator {
                    name: format!("g{k}"),
                    sources,
                    target,
                    table: (0..rows).map(|_| rng.gen_range(0..sets[target])).collect(),
                }
            })
            .collect();
        let names = (0..nc).map(|c| ["a", "b"][c].to_string()).collect();
        if let Ok(g) = generated(names, sets, gens, SAMPLE_LIMIT) {
            out.push((g.multicat, g.algebra));
        }
    }
    out
}

/// Generated multicategories, their unit-only parts and the unary
/// translations of `cats`.
pub fn multicat_corpus(cats: &[Cat], count: usize, seed: u64) -> Vec<Multicat> {
    let mut out: Vec<Multicat> = Vec::new();
    for (m, _) in generated_sample(count, seed) {
        out.push(Arc::new(m.units_only().0));
        out.push(m);
    }
    out.extend(
        cats.iter()
            .map(|c| Arc::new(FinMulticategory::from_category(c))),
    );
    out
}

/// Algebras on `m` with every carrier of size at most `max_size`.
pub fn algebra_family(
    m: &Multicat,
    max_size: usize,
    limit: usize,
    budget: usize,
) -> Vec<MultiAlgebra> {
    let mut out = Vec::new();
    let nc = m.num_colours();
    let choices = vec![max_size + 1; nc];
    for code in 0..radix_count(&choices) {
        let sizes = super::radix_decode(&choices, code);
        let r = for_each_algebra(m, &sizes, budget, |a| {
            out.push(a.clone());
            if out.len() >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        if r.is_err() || out.len() >= limit {
            break;
        }
    }
    out
}

/// Multifunctors between pairs of the corpus (at most `per_pair` each)
/// together with elements projections of small algebras.
pub fn multifunctor_sample(
    corpus: &[Multicat],
    pairs: usize,
    per_pair: usize,
    seed: u64,
) -> Vec<MultiFunctor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    if corpus.is_empty() {
        return out;
    }
    for _ in 0..pairs {
        let a = &corpus[rng.gen_range(0..corpus.len())];
        let b = &corpus[rng.gen_range(0..corpus.len())];
        let mut found = 0;
        let _ = for_each_multifunctor(a, b, None, 100_000, |f| {
            out.push(f.clone());
            found += 1;
            if found >= per_pair {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    }
    for m in corpus.iter().take(pairs) {
        for a in algebra_family(m, 2, 3, 100_000) {
            if let Ok(el) = elements_multicat(&a) {
                out.push(el.projection);
            }
        }
    }
    out
}
