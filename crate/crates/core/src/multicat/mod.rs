//! Finitely-supported symmetric multicategories (coloured operads): every
//! hom set outside a finite list of profiles is empty and composition never
//! leaves that list.
//!
//! Conventions, all indices from 0:
//! - `f ∘_i g` plugs `g` into input `i` of `f`; its inputs are those of `f`
//!   before `i`, then those of `g`, then those of `f` after `i`.
//! - `f·σ` for a permutation `σ` of the inputs has input `t` equal to input
//!   `σ[t]` of `f`; `swap(f, j)` is `f·(j j+1)`.

mod algebra;
mod concrete;
mod elements;
mod functor;
pub mod samples;
mod scheme;

pub use algebra::{for_each_algebra, AlgebraMorphism, MultiAlgebra};
pub use concrete::{generated, GeneratedMulticategory, Generator};
pub use elements::{
    elements_multicat, f_o_compose, f_o_hom, f_o_identity, factorise_multi, is_multicovering,
    multifunctor_pushforward, multifunctor_pushforward_terminal, FoMorphism, MultiElements,
    MultiFactorisation, MultiKan, Vertex,
};
pub use functor::{for_each_multifunctor, MultiFunctor};
pub use scheme::MultiScheme;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::category::FinCategory;
use crate::error::{Error, Result};

pub type ColourId = usize;
pub type OpId = usize;
pub type Multicat = Arc<FinMulticategory>;

/// Pointer equality, then structural equality.
pub fn same_multicat(a: &Multicat, b: &Multicat) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Arity beyond which the Coxeter relations of the symmetric action are not
/// checked.
pub const COXETER_CHECK_ARITY: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Operation {
    pub name: String,
    pub sources: Vec<ColourId>,
    pub target: ColourId,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FinMulticategory {
    colours: Vec<String>,
    ops: Vec<Operation>,
    units: Vec<OpId>,
    swaps: Vec<Vec<OpId>>,
    comp: HashMap<(OpId, usize, OpId), OpId>,
    profiles: BTreeMap<(Vec<ColourId>, ColourId), Vec<OpId>>,
}

impl FinMulticategory {
    /// Assembles the tables without checking the axioms. `comp` lists
    /// `(f, i, g, f ∘_i g)`.
    pub fn from_parts(
        colours: Vec<String>,
        ops: Vec<Operation>,
        units: Vec<OpId>,
        swaps: Vec<Vec<OpId>>,
        comp: Vec<(OpId, usize, OpId, OpId)>,
    ) -> Self {
        let mut profiles: BTreeMap<(Vec<ColourId>, ColourId), Vec<OpId>> = BTreeMap::new();
        for (f, op) in ops.iter().enumerate() {
            profiles
                .entry((op.sources.clone(), op.target))
                .or_default()
                .push(f);
        }
        FinMulticategory {
            colours,
            ops,
            units,
            swaps,
            comp: comp
                .into_iter()
                .map(|(f, i, g, r)| ((f, i, g), r))
                .collect(),
            profiles,
        }
    }

    pub fn new(
        colours: Vec<String>,
        ops: Vec<Operation>,
        units: Vec<OpId>,
        swaps: Vec<Vec<OpId>>,
        comp: Vec<(OpId, usize, OpId, OpId)>,
    ) -> Result<Self> {
        let m = FinMulticategory::from_parts(colours, ops, units, swaps, comp);
        m.validate()?;
        Ok(m)
    }

    /// The multicategory with one unary operation per morphism of `c`.
    pub fn from_category(c: &FinCategory) -> Self {
        let ops = c
            .morphisms()
            .map(|f| Operation {
                name: c.mor_name(f).to_string(),
                sources: vec![c.src(f)],
                target: c.tgt(f),
            })
            .collect();
        let units = c.objects().map(|a| c.id(a)).collect();
        let mut comp = Vec::new();
        for g in c.morphisms() {
            for f in c.out_of(c.tgt(g)) {
                comp.push((f, 0, g, c.comp(f, g)));
            }
        }
        let swaps = vec![Vec::new(); c.num_morphisms()];
        FinMulticategory::from_parts(c.obj_names().to_vec(), ops, units, swaps, comp)
    }

    /// The underlying category of a multicategory whose operations are all
    /// unary.
    pub fn to_category(&self) -> Result<FinCategory> {
        if !self.is_unary_only() {
            return Err(Error::Unsupported(
                "multicategory has non-unary operations".into(),
            ));
        }
        let m = self.ops.len();
        let mut compose = vec![None; m * m];
        for (&(f, _, g), &r) in &self.comp {
            compose[f * m + g] = Some(r);
        }
        FinCategory::new(
            self.colours.clone(),
            self.ops.iter().map(|o| o.name.clone()).collect(),
            self.ops.iter().map(|o| o.sources[0]).collect(),
            self.ops.iter().map(|o| o.target).collect(),
            self.units.clone(),
            compose,
        )
    }

    pub fn num_colours(&self) -> usize {
        self.colours.len()
    }

    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    pub fn colours(&self) -> std::ops::Range<ColourId> {
        0..self.colours.len()
    }

    pub fn op_ids(&self) -> std::ops::Range<OpId> {
        0..self.ops.len()
    }

    pub fn colour_name(&self, c: ColourId) -> &str {
        &self.colours[c]
    }

    pub fn colour_names(&self) -> &[String] {
        &self.colours
    }

    pub fn op(&self, f: OpId) -> &Operation {
        &self.ops[f]
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn sources(&self, f: OpId) -> &[ColourId] {
        &self.ops[f].sources
    }

    pub fn target(&self, f: OpId) -> ColourId {
        self.ops[f].target
    }

    pub fn arity(&self, f: OpId) -> usize {
        self.ops[f].sources.len()
    }

    pub fn unit(&self, c: ColourId) -> OpId {
        self.units[c]
    }

    pub fn units(&self) -> &[OpId] {
        &self.units
    }

    pub fn is_unit(&self, f: OpId) -> bool {
        self.arity(f) == 1 && self.units[self.target(f)] == f
    }

    pub fn swap(&self, f: OpId, j: usize) -> OpId {
        self.swaps[f][j]
    }

    pub fn swaps(&self) -> &[Vec<OpId>] {
        &self.swaps
    }

    /// `f ∘_i g`, when `g` lands in input `i` of `f`.
    pub fn compose_at(&self, f: OpId, i: usize, g: OpId) -> Option<OpId> {
        self.comp.get(&(f, i, g)).copied()
    }

    pub fn comp_at(&self, f: OpId, i: usize, g: OpId) -> OpId {
        self.compose_at(f, i, g).unwrap_or_else(|| {
            panic!(
                "{} ∘_{i} {} is not defined",
                self.ops[f].name, self.ops[g].name
            )
        })
    }

    /// The composition table as `(f, i, g, f ∘_i g)`, sorted.
    pub fn composition_table(&self) -> Vec<(OpId, usize, OpId, OpId)> {
        let mut out: Vec<_> = self
            .comp
            .iter()
            .map(|(&(f, i, g), &r)| (f, i, g, r))
            .collect();
        out.sort_unstable();
        out
    }

    /// `p(g_0, …, g_{k-1})`, plugging into the inputs from the right so the
    /// remaining indices stay put.
    pub fn gamma(&self, p: OpId, gs: &[OpId]) -> Option<OpId> {
        if gs.len() != self.arity(p) {
            return None;
        }
        let mut r = p;
        for i in (0..gs.len()).rev() {
            r = self.compose_at(r, i, gs[i])?;
        }
        Some(r)
    }

    /// `f·σ`, through a decomposition of `σ` into adjacent transpositions.
    pub fn act(&self, f: OpId, sigma: &[usize]) -> OpId {
        let mut arr: Vec<usize> = (0..sigma.len()).collect();
        let mut r = f;
        for t in 0..sigma.len() {
            let mut p = arr
                .iter()
                .position(|&x| x == sigma[t])
                .expect("permutation");
            while p > t {
                arr.swap(p - 1, p);
                r = self.swaps[r][p - 1];
                p -= 1;
            }
        }
        r
    }

    pub fn hom(&self, sources: &[ColourId], target: ColourId) -> &[OpId] {
        self.profiles
            .get(&(sources.to_vec(), target))
            .map_or(&[], Vec::as_slice)
    }

    /// Non-empty profiles in increasing order.
    pub fn profiles(&self) -> impl Iterator<Item = (&(Vec<ColourId>, ColourId), &Vec<OpId>)> {
        self.profiles.iter()
    }

    pub fn ops_into(&self, c: ColourId) -> impl Iterator<Item = OpId> + '_ {
        self.op_ids().filter(move |&f| self.target(f) == c)
    }

    pub fn max_arity(&self) -> usize {
        self.ops.iter().map(|o| o.sources.len()).max().unwrap_or(0)
    }

    pub fn is_unary_only(&self) -> bool {
        self.ops.iter().all(|o| o.sources.len() == 1)
    }

    pub fn op_by_name(&self, name: &str) -> Option<OpId> {
        self.ops.iter().position(|o| o.name == name)
    }

    pub fn colour_by_name(&self, name: &str) -> Option<ColourId> {
        self.colours.iter().position(|c| c == name)
    }

    /// The sub-multicategory of units, with its inclusion's operation map.
    pub fn units_only(&self) -> (FinMulticategory, Vec<OpId>) {
        let ops = self.units.iter().map(|&u| self.ops[u].clone()).collect();
        let units = (0..self.units.len()).collect();
        let comp = (0..self.units.len()).map(|c| (c, 0, c, c)).collect();
        let swaps = vec![Vec::new(); self.units.len()];
        (
            FinMulticategory::from_parts(self.colours.clone(), ops, units, swaps, comp),
            self.units.clone(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidMulticategory(msg));
        let nc = self.colours.len();
        let no = self.ops.len();
        for op in &self.ops {
            if op.target >= nc || op.sources.iter().any(|&c| c >= nc) {
                return bad(format!("operation {} uses an unknown colour", op.name));
            }
        }
        if self.units.len() != nc {
            return bad("one unit per colour required".into());
        }
        for (c, &u) in self.units.iter().enumerate() {
            if u >= no || self.ops[u].sources != [c] || self.ops[u].target != c {
                return bad(format!("unit of {} has the wrong profile", self.colours[c]));
            }
        }
        if self.swaps.len() != no {
            return bad("one swap list per operation required".into());
        }
        for f in 0..no {
            let k = self.arity(f);
            if self.swaps[f].len() != k.saturating_sub(1) {
                return bad(format!(
                    "operation {} needs {} swaps",
                    self.ops[f].name,
                    k.saturating_sub(1)
                ));
            }
            for (j, &s) in self.swaps[f].iter().enumerate() {
                let mut expect = self.ops[f].sources.clone();
                expect.swap(j, j + 1);
                if s >= no
                    || self.ops[s].sources != expect
                    || self.ops[s].target != self.ops[f].target
                {
                    return bad(format!(
                        "swap {j} of {} has the wrong profile",
                        self.ops[f].name
                    ));
                }
            }
        }
        for (&(f, i, g), &r) in &self.comp {
            if f >= no
                || g >= no
                || r >= no
                || i >= self.arity(f)
                || self.ops[f].sources[i] != self.ops[g].target
            {
                return bad(format!(
                    "composition entry ({f}, {i}, {g}) is not composable"
                ));
            }
            let mut expect = self.ops[f].sources[..i].to_vec();
            expect.extend(&self.ops[g].sources);
            expect.extend(&self.ops[f].sources[i + 1..]);
            if self.ops[r].sources != expect || self.ops[r].target != self.ops[f].target {
                return bad(format!(
                    "composite {} ∘_{i} {} has the wrong profile",
                    self.ops[f].name, self.ops[g].name
                ));
            }
        }
        for f in 0..no {
            for i in 0..self.arity(f) {
                for g in self.ops_into(self.ops[f].sources[i]) {
                    if !self.comp.contains_key(&(f, i, g)) {
                        return bad(format!(
                            "{} ∘_{i} {} is missing (support not closed)",
                            self.ops[f].name, self.ops[g].name
                        ));
                    }
                }
            }
        }
        self.check_units()?;
        self.check_coxeter()?;
        self.check_equivariance()?;
        self.check_associativity()
    }

    fn check_units(&self) -> Result<()> {
        for f in self.op_ids() {
            if self.comp_at(self.units[self.target(f)], 0, f) != f {
                return Err(Error::InvalidMulticategory(format!(
                    "left unit law fails at {}",
                    self.ops[f].name
                )));
            }
            for (i, &c) in self.sources(f).iter().enumerate() {
                if self.comp_at(f, i, self.units[c]) != f {
                    return Err(Error::InvalidMulticategory(format!(
                        "right unit law fails at {} input {i}",
                        self.ops[f].name
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_coxeter(&self) -> Result<()> {
        let bad = |f: OpId, what: &str| {
            Err(Error::InvalidMulticategory(format!(
                "{what} fails for the swaps of {}",
                self.ops[f].name
            )))
        };
        for f in self.op_ids() {
            let k = self.arity(f);
            if !(2..=COXETER_CHECK_ARITY).contains(&k) {
                continue;
            }
            for j in 0..k - 1 {
                if self.swap(self.swap(f, j), j) != f {
                    return bad(f, "involution");
                }
                if j + 2 < k {
                    let a = self.swap(self.swap(self.swap(f, j), j + 1), j);
                    let b = self.swap(self.swap(self.swap(f, j + 1), j), j + 1);
                    if a != b {
                        return bad(f, "braid relation");
                    }
                }
                for l in j + 2..k - 1 {
                    if self.swap(self.swap(f, j), l) != self.swap(self.swap(f, l), j) {
                        return bad(f, "commutation of distant swaps");
                    }
                }
            }
        }
        Ok(())
    }

    /// `f ∘_i (g·s_j) = (f ∘_i g)·s_{i+j}` and `(f·s_j) ∘_i g = (f ∘_{s_j(i)} g)·τ`
    /// with `τ` the block permutation carrying the inputs along.
    fn check_equivariance(&self) -> Result<()> {
        for f in self.op_ids() {
            let k = self.arity(f);
            for i in 0..k {
                for g in self.ops_into(self.sources(f)[i]) {
                    let m = self.arity(g);
                    let fg = self.comp_at(f, i, g);
                    for j in 0..m.saturating_sub(1) {
                        if self.comp_at(f, i, self.swap(g, j)) != self.swap(fg, i + j) {
                            return Err(Error::InvalidMulticategory(format!(
                                "composition into {} is not equivariant in {}",
                                self.ops[f].name, self.ops[g].name
                            )));
                        }
                    }
                }
            }
            for j in 0..k.saturating_sub(1) {
                let fs = self.swap(f, j);
                for i in 0..k {
                    let orig = if i == j {
                        j + 1
                    } else if i == j + 1 {
                        j
                    } else {
                        i
                    };
                    for g in self.ops_into(self.sources(fs)[i]) {
                        let m = self.arity(g);
                        let lhs = self.comp_at(fs, i, g);
                        let rhs = self.comp_at(f, orig, g);
                        // an input is labelled (input of f, 0) or (MAX, input of g)
                        let label = |pos: usize,
                                     t: usize,
                                     perm: &dyn Fn(usize) -> usize|
                         -> (usize, usize) {
                            if t < pos {
                                (perm(t), 0)
                            } else if t < pos + m {
                                (usize::MAX, t - pos)
                            } else {
                                (perm(t - m + 1), 0)
                            }
                        };
                        let s_j = |t: usize| {
                            if t == j {
                                j + 1
                            } else if t == j + 1 {
                                j
                            } else {
                                t
                            }
                        };
                        let id = |t: usize| t;
                        let n = k - 1 + m;
                        let lhs_labels: Vec<_> = (0..n).map(|t| label(i, t, &s_j)).collect();
                        let rhs_labels: Vec<_> = (0..n).map(|t| label(orig, t, &id)).collect();
                        let tau: Vec<usize> = lhs_labels
                            .iter()
                            .map(|l| rhs_labels.iter().position(|r| r == l).unwrap())
                            .collect();
                        if self.act(rhs, &tau) != lhs {
                            return Err(Error::InvalidMulticategory(format!(
                                "composition is not equivariant for swap {j} of {}",
                                self.ops[f].name
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_associativity(&self) -> Result<()> {
        let bad = |f: OpId| {
            Err(Error::InvalidMulticategory(format!(
                "associativity fails around {}",
                self.ops[f].name
            )))
        };
        for f in self.op_ids() {
            let k = self.arity(f);
            for i in 0..k {
                for g in self.ops_into(self.sources(f)[i]) {
                    let m = self.arity(g);
                    let fg = self.comp_at(f, i, g);
                    for j in 0..m {
                        for h in self.ops_into(self.sources(g)[j]) {
                            if self.comp_at(fg, i + j, h)
                                != self.comp_at(f, i, self.comp_at(g, j, h))
                            {
                                return bad(f);
                            }
                        }
                    }
                    for i2 in i + 1..k {
                        for h in self.ops_into(self.sources(f)[i2]) {
                            let a = self.comp_at(fg, i2 + m - 1, h);
                            let b = self.comp_at(self.comp_at(f, i2, h), i, g);
                            if a != b {
                                return bad(f);
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FinMulticategory {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "Multicategory[{}]{{", self.colours.join(","))?;
        for (i, op) in self.ops.iter().enumerate() {
            if self.is_unit(i) {
                continue;
            }
            let src: Vec<&str> = op
                .sources
                .iter()
                .map(|&c| self.colours[c].as_str())
                .collect();
            write!(
                fm,
                " {}:({})→{}",
                op.name,
                src.join(","),
                self.colours[op.target]
            )?;
        }
        write!(fm, " }}")
    }
}

/// Mixed-radix index of a tuple, first coordinate most significant.
pub(crate) fn radix_index(sizes: &[usize], tuple: &[usize]) -> usize {
    sizes.iter().zip(tuple).fold(0, |acc, (&s, &x)| acc * s + x)
}

/// Inverse of [`radix_index`].
pub(crate) fn radix_decode(sizes: &[usize], mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for t in (0..sizes.len()).rev() {
        out[t] = idx % sizes[t];
        idx /= sizes[t];
    }
    out
}

pub(crate) fn radix_count(sizes: &[usize]) -> usize {
    sizes.iter().product()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn unary_translation_round_trips() {
        for c in [zoo::span(), zoo::codiscrete(2), zoo::chain(2)] {
            let m = FinMulticategory::from_category(&c);
            m.validate().unwrap();
            assert_eq!(m.to_category().unwrap(), c);
        }
    }

    #[test]
    fn radix_round_trip() {
        let sizes = [2, 3, 1];
        for i in 0..radix_count(&sizes) {
            assert_eq!(radix_index(&sizes, &radix_decode(&sizes, i)), i);
        }
        assert_eq!(radix_count(&[]), 1);
        assert_eq!(radix_decode(&[], 0), Vec::<usize>::new());
    }

    #[test]
    fn missing_composite_is_reported() {
        let ops = vec![
            Operation {
                name: "1".into(),
                sources: vec![0],
                target: 0,
            },
            Operation {
                name: "m".into(),
                sources: vec![0, 0],
                target: 0,
            },
        ];
        let comp = vec![(0, 0, 0, 0), (0, 0, 1, 1), (1, 0, 0, 1), (1, 1, 0, 1)];
        let r = FinMulticategory::new(vec!["c".into()], ops, vec![0], vec![vec![], vec![1]], comp);
        assert!(matches!(r, Err(Error::InvalidMulticategory(ref s)) if s.contains("not closed")));
    }
}
