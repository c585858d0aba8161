//! Deterministic families of test inputs drawn from a category corpus:
//! diagrams on a category, functors between corpus categories, composable
//! pairs and commuting squares.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::category::Cat;
use crate::diagram::{SetDiagram, Variance};
use crate::functor::{for_each_functor, Constraints, Functor};

/// Small diagrams on `c`: empty, terminal, constant at two points, every
/// representable, and the sum of the first representable with the terminal
/// diagram.
pub fn diagram_family(c: &Cat, variance: Variance) -> Vec<SetDiagram> {
    let mut out = vec![
        SetDiagram::constant(c.clone(), variance, 0),
        SetDiagram::terminal(c.clone(), variance),
        SetDiagram::constant(c.clone(), variance, 2),
    ];
    for a in c.objects() {
        out.push(SetDiagram::representable(c.clone(), variance, a));
    }
    if c.num_objects() > 0 {
        let r = SetDiagram::representable(c.clone(), variance, 0);
        out.push(r.sum(&SetDiagram::terminal(c.clone(), variance)).unwrap());
    }
    out
}

/// Up to `limit` functors `a → b`, spread evenly over the enumeration order.
pub fn functors_between(a: &Cat, b: &Cat, limit: usize, budget: usize) -> Vec<Functor> {
    let mut all = Vec::new();
    let r = for_each_functor(a, b, &Constraints::none(), budget, |f| {
        all.push(f.clone());
        ControlFlow::Continue(())
    });
    if r.is_err() {
        return Vec::new();
    }
    thin(all, limit)
}

/// Keeps at most `limit` items, taking every k-th one.
pub fn thin<T>(items: Vec<T>, limit: usize) -> Vec<T> {
    if items.len() <= limit || limit == 0 {
        return if limit == 0 { Vec::new() } else { items };
    }
    let step = items.len() as f64 / limit as f64;
    let mut out = Vec::with_capacity(limit);
    let mut keep: Vec<bool> = vec![false; items.len()];
    for k in 0..limit {
        keep[(k as f64 * step) as usize] = true;
    }
    for (item, k) in items.into_iter().zip(keep) {
        if k {
            out.push(item);
        }
    }
    out
}

/// Functors between seeded random pairs of corpus categories, at most
/// `per_pair` from each pair, until `total` are collected.
pub fn functor_sample(corpus: &[Cat], pairs: usize, per_pair: usize, seed: u64) -> Vec<Functor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<(usize, usize)> = (0..corpus.len())
        .flat_map(|i| (0..corpus.len()).map(move |j| (i, j)))
        .collect();
    idx.shuffle(&mut rng);
    let mut out = Vec::new();
    for (i, j) in idx.into_iter().take(pairs) {
        out.extend(functors_between(&corpus[i], &corpus[j], per_pair, 100_000));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use std::sync::Arc;

    #[test]
    fn diagram_family_is_valid() {
        let c: Cat = Arc::new(zoo::span());
        for v in [Variance::Covariant, Variance::Contravariant] {
            for d in diagram_family(&c, v) {
                d.validate().unwrap();
            }
        }
    }

    #[test]
    fn thinning_keeps_order() {
        assert_eq!(thin((0..10).collect(), 3), vec![0, 3, 6]);
        assert_eq!(thin((0..2).collect(), 3), vec![0, 1]);
    }
}
