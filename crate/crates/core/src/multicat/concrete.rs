//! Sub-multicategories of the endomorphism multicategory of a family of
//! finite sets, generated by explicit functions.

use std::collections::HashMap;
use std::sync::Arc;

use super::{
    radix_count, radix_decode, radix_index, ColourId, FinMulticategory, MultiAlgebra, Multicat,
    Operation,
};
use crate::error::{Error, Result};

/// A function `S(c_0)×…×S(c_{k-1}) → S(c)` as a mixed-radix table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub sources: Vec<ColourId>,
    pub target: ColourId,
    pub table: Vec<usize>,
}

/// The closure of some functions under units, swaps and substitution,
/// with the algebra the functions themselves define.
#[derive(Clone, Debug)]
pub struct GeneratedMulticategory {
    pub multicat: Multicat,
    pub algebra: MultiAlgebra,
}

type Key = (Vec<ColourId>, ColourId, Vec<usize>);

/// Largest table a generated operation may carry.
const TABLE_CAP: usize = 1 << 16;

/// Closes `generators` under units, swaps and `∘_i`; fails with
/// [`Error::SupportExceeded`] once more than `limit` distinct functions
/// appear, or once a composite would need a table of more than 65536 rows.
pub fn generated(
    colours: Vec<String>,
    sets: Vec<usize>,
    generators: Vec<Generator>,
    limit: usize,
) -> Result<GeneratedMulticategory> {
    if colours.len() != sets.len() {
        return Err(Error::InvalidMulticategory(
            "one set per colour required".into(),
        ));
    }
    let sizes_of = |src: &[ColourId]| src.iter().map(|&c| sets[c]).collect::<Vec<usize>>();
    let mut ops: Vec<Generator> = Vec::new();
    let mut seen: HashMap<Key, usize> = HashMap::new();
    let mut add = |g: Generator, ops: &mut Vec<Generator>| -> Result<usize> {
        let key = (g.sources.clone(), g.target, g.table.clone());
        if let Some(&i) = seen.get(&key) {
            return Ok(i);
        }
        if ops.len() >= limit {
            return Err(Error::SupportExceeded(limit));
        }
        seen.insert(key, ops.len());
        ops.push(g);
        Ok(ops.len() - 1)
    };
    for (c, name) in colours.iter().enumerate() {
        add(
            Generator {
                name: format!("1_{name}"),
                sources: vec![c],
                target: c,
                table: (0..sets[c]).collect(),
            },
            &mut ops,
        )?;
    }
    for g in generators {
        if g.target >= sets.len() || g.sources.iter().any(|&c| c >= sets.len()) {
            return Err(Error::InvalidMulticategory(format!(
                "generator {} uses an unknown colour",
                g.name
            )));
        }
        if g.table.len() != radix_count(&sizes_of(&g.sources))
            || g.table.iter().any(|&y| y >= sets[g.target])
        {
            return Err(Error::InvalidMulticategory(format!(
                "generator {} has a malformed table",
                g.name
            )));
        }
        add(g, &mut ops)?;
    }
    let swapped = |f: &Generator, j: usize| {
        let mut sources = f.sources.clone();
        sources.swap(j, j + 1);
        let sizes = sizes_of(&sources);
        let old = sizes_of(&f.sources);
        let table = (0..radix_count(&sizes))
            .map(|idx| {
                let mut xs = radix_decode(&sizes, idx);
                xs.swap(j, j + 1);
                f.table[radix_index(&old, &xs)]
            })
            .collect();
        Generator {
            name: format!("{}·s{j}", f.name),
            sources,
            target: f.target,
            table,
        }
    };
    let composed = |f: &Generator, i: usize, g: &Generator| {
        let m = g.sources.len();
        let mut sources = f.sources[..i].to_vec();
        sources.extend(&g.sources);
        sources.extend(&f.sources[i + 1..]);
        let sizes = sizes_of(&sources);
        let (fs, gs) = (sizes_of(&f.sources), sizes_of(&g.sources));
        let table = (0..radix_count(&sizes))
            .map(|idx| {
                let xs = radix_decode(&sizes, idx);
                let inner = g.table[radix_index(&gs, &xs[i..i + m])];
                let mut outer = xs[..i].to_vec();
                outer.push(inner);
                outer.extend(&xs[i + m..]);
                f.table[radix_index(&fs, &outer)]
            })
            .collect();
        Generator {
            name: format!("({}∘{i}{})", f.name, g.name),
            sources,
            target: f.target,
            table,
        }
    };
    loop {
        let n = ops.len();
        for f in 0..n {
            for j in 0..ops[f].sources.len().saturating_sub(1) {
                let s = swapped(&ops[f], j);
                add(s, &mut ops)?;
            }
            for i in 0..ops[f].sources.len() {
                for g in 0..n {
                    if ops[g].target == ops[f].sources[i] {
                        let rows = ops[f]
                            .sources
                            .iter()
                            .chain(&ops[g].sources)
                            .map(|&c| sets[c])
                            .try_fold(1usize, |n, k| n.checked_mul(k));
                        if rows.is_none_or(|n| n > TABLE_CAP * sets[ops[g].target].max(1)) {
                            return Err(Error::SupportExceeded(limit));
                        }
                        let r = composed(&ops[f], i, &ops[g]);
                        add(r, &mut ops)?;
                    }
                }
            }
        }
        if ops.len() == n {
            break;
        }
    }
    let lookup = |g: &Generator| seen_lookup(&ops, g);
    let units = (0..colours.len()).collect();
    let mut swaps = Vec::with_capacity(ops.len());
    let mut comp = Vec::new();
    for (f, op) in ops.iter().enumerate() {
        swaps.push(
            (0..op.sources.len().saturating_sub(1))
                .map(|j| lookup(&swapped(op, j)))
                .collect(),
        );
        for i in 0..op.sources.len() {
            for (g, inner) in ops.iter().enumerate() {
                if inner.target == op.sources[i] {
                    comp.push((f, i, g, lookup(&composed(op, i, inner))));
                }
            }
        }
    }
    let operations = ops
        .iter()
        .map(|g| Operation {
            name: g.name.clone(),
            sources: g.sources.clone(),
            target: g.target,
        })
        .collect();
    let multicat = Arc::new(FinMulticategory::from_parts(
        colours, operations, units, swaps, comp,
    ));
    let algebra = MultiAlgebra::from_parts(
        multicat.clone(),
        sets,
        ops.into_iter().map(|g| g.table).collect(),
    );
    Ok(GeneratedMulticategory { multicat, algebra })
}

fn seen_lookup(ops: &[Generator], g: &Generator) -> usize {
    ops.iter()
        .position(|o| o.sources == g.sources && o.target == g.target && o.table == g.table)
        .expect("closed under the operation")
}
