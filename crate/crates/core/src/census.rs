//! Generation of small finite categories up to isomorphism.
//!
//! Exhaustive mode enumerates hom-size matrices up to object permutation,
//! then every associative composition table on them, and keeps one
//! canonical table per isomorphism class. Sampling mode draws random
//! composition tables with a seeded generator for sizes where exhaustive
//! enumeration is out of reach.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::category::{Cat, FinCategory, MorId};
use crate::group::{permutations, FinGroup};
use crate::zoo;

/// Hom-size matrices on `n` objects with the given morphism total,
/// identities included, one per object permutation class.
fn hom_matrices(n: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    if total < n {
        return out;
    }
    let perms = permutations(n);
    let mut cur = vec![0usize; n * n];
    fn go(
        i: usize,
        n: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        perms: &[Vec<usize>],
    ) {
        if i == n * n {
            if left == 0 && perms.iter().all(|p| permute_matrix(cur, p, n) >= *cur) {
                out.push(cur.clone());
            }
            return;
        }
        let min = usize::from(i / n == i % n);
        for v in min..=left + min {
            if v - min > left {
                break;
            }
            cur[i] = v;
            go(i + 1, n, left - (v - min), cur, out, perms);
        }
        cur[i] = 0;
    }
    go(0, n, total - n, &mut cur, &mut out, &perms);
    out
}

fn permute_matrix(m: &[usize], p: &[usize], n: usize) -> Vec<usize> {
    // new object p[a] is old object a
    let mut out = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            out[p[a] * n + p[b]] = m[a * n + b];
        }
    }
    out
}

/// Morphism layout for a hom matrix: identities first (in object order),
/// then non-identity morphisms grouped by `(src, tgt)`.
fn layout(n: usize, matrix: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut src: Vec<usize> = (0..n).collect();
    let mut tgt: Vec<usize> = (0..n).collect();
    for a in 0..n {
        for b in 0..n {
            let extra = matrix[a * n + b] - usize::from(a == b);
            for _ in 0..extra {
                src.push(a);
                tgt.push(b);
            }
        }
    }
    (src, tgt)
}

struct TableSearch {
    n: usize,
    m: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    table: Vec<Option<MorId>>,
    pairs: Vec<(MorId, MorId)>,
    triples: Vec<(MorId, MorId, MorId)>,
    homs: Vec<Vec<MorId>>,
}

impl TableSearch {
    fn new(n: usize, matrix: &[usize]) -> Self {
        let (src, tgt) = layout(n, matrix);
        let m = src.len();
        let mut table = vec![None; m * m];
        for f in 0..m {
            table[tgt[f] * m + f] = Some(f);
            table[f * m + src[f]] = Some(f);
        }
        let mut pairs = Vec::new();
        let mut triples = Vec::new();
        for g in n..m {
            for f in n..m {
                if tgt[f] == src[g] {
                    pairs.push((g, f));
                    for h in n..m {
                        if src[h] == tgt[g] {
                            triples.push((h, g, f));
                        }
                    }
                }
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..m {
            homs[src[f] * n + tgt[f]].push(f);
        }
        TableSearch {
            n,
            m,
            src,
            tgt,
            table,
            pairs,
            triples,
            homs,
        }
    }

    fn consistent(&self) -> bool {
        let m = self.m;
        self.triples.iter().all(|&(h, g, f)| {
            let (Some(gf), Some(hg)) = (self.table[g * m + f], self.table[h * m + g]) else {
                return true;
            };
            match (self.table[h * m + gf], self.table[hg * m + f]) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        })
    }

    fn build(&self) -> FinCategory {
        FinCategory::from_parts(
            (0..self.n).map(|a| a.to_string()).collect(),
            (0..self.m)
                .map(|f| {
                    if f < self.n {
                        format!("id_{f}")
                    } else {
                        format!("m{f}")
                    }
                })
                .collect(),
            self.src.clone(),
            self.tgt.clone(),
            (0..self.n).collect(),
            self.table.clone(),
        )
    }

    fn all(&mut self, k: usize, out: &mut Vec<FinCategory>) {
        if k == self.pairs.len() {
            out.push(self.build());
            return;
        }
        let (g, f) = self.pairs[k];
        let cands = self.homs[self.src[f] * self.n + self.tgt[g]].clone();
        for h in cands {
            self.table[g * self.m + f] = Some(h);
            if self.consistent() {
                self.all(k + 1, out);
            }
        }
        self.table[g * self.m + f] = None;
    }

    fn random(&mut self, k: usize, rng: &mut ChaCha8Rng, nodes: &mut usize) -> bool {
        if k == self.pairs.len() {
            return true;
        }
        if *nodes == 0 {
            return false;
        }
        *nodes -= 1;
        let (g, f) = self.pairs[k];
        let mut cands = self.homs[self.src[f] * self.n + self.tgt[g]].clone();
        cands.shuffle(rng);
        for h in cands {
            self.table[g * self.m + f] = Some(h);
            if self.consistent() && self.random(k + 1, rng, nodes) {
                return true;
            }
        }
        self.table[g * self.m + f] = None;
        false
    }
}

/// A canonical relabelling: among all object permutations and orderings of
/// each hom set (identities first), the one with the least composition
/// table. Two categories are isomorphic iff their canonical forms are equal.
pub fn canonical_form(c: &FinCategory) -> FinCategory {
    let n = c.num_objects();
    let m = c.num_morphisms();
    let matrix: Vec<usize> = (0..n * n).map(|i| c.hom(i / n, i % n).len()).collect();
    let perms = permutations(n);
    let best_matrix = perms
        .iter()
        .map(|p| permute_matrix(&matrix, p, n))
        .min()
        .unwrap_or_default();
    let mut best: Option<(Vec<Option<MorId>>, FinCategory)> = None;
    for p in perms
        .iter()
        .filter(|p| permute_matrix(&matrix, p, n) == best_matrix)
    {
        let mut inv = vec![0; n];
        for a in 0..n {
            inv[p[a]] = a;
        }
        // non-identity morphisms of each new hom (a', b'), in old-id order
        let mut groups: Vec<Vec<MorId>> = Vec::new();
        for a2 in 0..n {
            for b2 in 0..n {
                let (a, b) = (inv[a2], inv[b2]);
                groups.push(
                    c.hom(a, b)
                        .iter()
                        .copied()
                        .filter(|&f| !c.is_identity(f))
                        .collect(),
                );
            }
        }
        let orders: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| permutations(g.len())).collect();
        let mut choice = vec![0usize; groups.len()];
        loop {
            let mut new_id = vec![0; m];
            for a in 0..n {
                new_id[c.id(a)] = p[a];
            }
            let mut next = n;
            for (gi, g) in groups.iter().enumerate() {
                for &k in &orders[gi][choice[gi]] {
                    new_id[g[k]] = next;
                    next += 1;
                }
            }
            let mut table = vec![None; m * m];
            for g in 0..m {
                for f in 0..m {
                    if let Some(h) = c.compose(g, f) {
                        table[new_id[g] * m + new_id[f]] = Some(new_id[h]);
                    }
                }
            }
            if best.as_ref().is_none_or(|(t, _)| table < *t) {
                let mut src = vec![0; m];
                let mut tgt = vec![0; m];
                for f in 0..m {
                    src[new_id[f]] = p[c.src(f)];
                    tgt[new_id[f]] = p[c.tgt(f)];
                }
                let cat = FinCategory::from_parts(
                    (0..n).map(|a| a.to_string()).collect(),
                    (0..m)
                        .map(|f| {
                            if f < n {
                                format!("id_{f}")
                            } else {
                                format!("m{f}")
                            }
                        })
                        .collect(),
                    src,
                    tgt,
                    (0..n).collect(),
                    table.clone(),
                );
                best = Some((table, cat));
            }
            // advance the mixed-radix counter over hom orderings
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < orders[i].len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    best.map(|(_, c)| c).unwrap_or_else(zoo::empty)
}

/// All categories with exactly `n` objects and `m` morphisms, up to
/// isomorphism, in canonical form and sorted by their tables.
pub fn categories_exact(n: usize, m: usize) -> Vec<FinCategory> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for matrix in hom_matrices(n, m) {
        let mut raw = Vec::new();
        TableSearch::new(n, &matrix).all(0, &mut raw);
        for c in raw {
            let canon = canonical_form(&c);
            if seen.insert(canon.structure_key_owned()) {
                out.push(canon);
            }
        }
    }
    out.sort_by(|a, b| a.structure_key().cmp(&b.structure_key()));
    out
}

/// All categories with at most `max_objects` objects and at most
/// `max_morphisms` morphisms, up to isomorphism.
pub fn categories_up_to(max_objects: usize, max_morphisms: usize) -> Vec<FinCategory> {
    let mut out = Vec::new();
    for m in 0..=max_morphisms {
        for n in 0..=max_objects.min(m) {
            out.extend(categories_exact(n, m));
        }
    }
    out
}

/// A random category with `n` objects and `m` morphisms, or `None` when the
/// drawn hom matrix admits no table within the search allowance.
pub fn random_category(n: usize, m: usize, rng: &mut ChaCha8Rng) -> Option<FinCategory> {
    if n == 0 || m < n {
        return None;
    }
    let mut matrix: Vec<usize> = (0..n * n).map(|i| usize::from(i / n == i % n)).collect();
    for _ in n..m {
        let i = rng.gen_range(0..n * n);
        matrix[i] += 1;
    }
    let mut s = TableSearch::new(n, &matrix);
    let mut nodes = 20_000;
    if s.random(0, rng, &mut nodes) {
        Some(s.build())
    } else {
        None
    }
}

/// Categories that the tests and corpus always include by name.
pub fn named_categories() -> Vec<(String, FinCategory)> {
    let z2 = FinGroup::cyclic(2);
    vec![
        ("terminal".into(), zoo::terminal()),
        ("discrete2".into(), zoo::discrete(2)),
        ("discrete3".into(), zoo::discrete(3)),
        ("arrow".into(), zoo::walking_arrow()),
        ("chain2".into(), zoo::chain(2)),
        ("parallel".into(), zoo::parallel_pair()),
        ("span".into(), zoo::span()),
        ("cospan".into(), zoo::cospan()),
        ("codiscrete2".into(), zoo::codiscrete(2)),
        ("codiscrete3".into(), zoo::codiscrete(3)),
        ("BZ2".into(), zoo::delooping(&z2)),
        ("BZ3".into(), zoo::delooping(&FinGroup::cyclic(3))),
        ("BZ4".into(), zoo::delooping(&FinGroup::cyclic(4))),
        ("BK4".into(), zoo::delooping(&FinGroup::klein())),
        ("BS3".into(), zoo::delooping(&FinGroup::symmetric3())),
        (
            "BZ2+1".into(),
            zoo::coproduct(&zoo::delooping(&z2), &zoo::terminal()),
        ),
        (
            "arrow+1".into(),
            zoo::coproduct(&zoo::walking_arrow(), &zoo::terminal()),
        ),
        (
            "BZ2xarrow".into(),
            zoo::product(&zoo::delooping(&z2), &zoo::walking_arrow()),
        ),
        (
            "EZ2".into(),
            zoo::connected_groupoid(&FinGroup::trivial(), 2),
        ),
        ("BZ2xEZ2".into(), zoo::connected_groupoid(&z2, 2)),
    ]
}

/// Parameters of a generated corpus.
#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub max_objects: usize,
    pub max_morphisms: usize,
    /// sizes up to this bound are enumerated exhaustively
    pub exhaustive_morphisms: usize,
    /// random draws per (objects, morphisms) size above the exhaustive bound
    pub samples_per_size: usize,
    pub seed: u64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_objects: 3,
            max_morphisms: 8,
            exhaustive_morphisms: 5,
            samples_per_size: 4,
            seed: 0,
        }
    }
}

/// The category corpus: exhaustive small sizes, seeded samples above, and
/// the named categories, deduplicated up to isomorphism. Deterministic for a
/// fixed spec.
pub fn corpus(spec: &CorpusSpec) -> Vec<Cat> {
    let mut seen = HashSet::new();
    let mut out: Vec<Cat> = Vec::new();
    let mut push = |c: FinCategory, out: &mut Vec<Cat>| {
        if c.num_objects() > spec.max_objects || c.num_morphisms() > spec.max_morphisms {
            return;
        }
        let canon = canonical_form(&c);
        if seen.insert(canon.structure_key_owned()) {
            out.push(Arc::new(canon));
        }
    };
    for c in categories_up_to(
        spec.max_objects,
        spec.max_morphisms.min(spec.exhaustive_morphisms),
    ) {
        push(c, &mut out);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for m in spec.exhaustive_morphisms + 1..=spec.max_morphisms {
        for n in 1..=spec.max_objects.min(m) {
            for _ in 0..spec.samples_per_size {
                if let Some(c) = random_category(n, m, &mut rng) {
                    push(c, &mut out);
                }
            }
        }
    }
    for (_, c) in named_categories() {
        push(c, &mut out);
    }
    out
}

impl FinCategory {
    pub fn structure_key_owned(
        &self,
    ) -> (
        usize,
        Vec<usize>,
        Vec<usize>,
        Vec<usize>,
        Vec<Option<usize>>,
    ) {
        let (n, s, t, i, c) = self.structure_key();
        (n, s.to_vec(), t.to_vec(), i.to_vec(), c.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_tables_are_categories() {
        for c in categories_up_to(3, 5) {
            assert!(c.validate().is_empty(), "{c:?}");
        }
    }

    #[test]
    fn monoid_counts_match_known_sequence() {
        // monoids of order 1..=5 up to isomorphism: 1, 2, 7, 35, 228
        let counts: Vec<usize> = (1..=5).map(|m| categories_exact(1, m).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 35, 228]);
    }

    #[test]
    fn counts_with_three_morphisms() {
        // 7 monoids, the walking arrow, B(M) ⊔ ⋆ for the 2 monoids M of
        // order 2, and the discrete category on 3 objects
        let total: usize = (0..=3).map(|n| categories_exact(n, 3).len()).sum();
        assert_eq!(total, 11);
        assert_eq!(categories_exact(2, 3).len(), 3);
    }

    #[test]
    fn canonical_form_identifies_isomorphic_copies() {
        let c = Arc::new(zoo::span());
        let (d, _) = crate::functor::relabel(&c, &[2, 0, 1], &[2, 0, 1, 4, 3]);
        assert_eq!(canonical_form(&c), canonical_form(&d));
        assert_ne!(canonical_form(&zoo::span()), canonical_form(&zoo::cospan()));
    }

    #[test]
    fn corpus_is_deterministic_and_valid() {
        let spec = CorpusSpec {
            max_morphisms: 6,
            samples_per_size: 2,
            ..CorpusSpec::default()
        };
        let a = corpus(&spec);
        let b = corpus(&spec);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x, y);
            assert!(x.validate().is_empty());
        }
    }
}
