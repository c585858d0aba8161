//! Multifunctors between finitely-supported multicategories.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{same_multicat, ColourId, FinMulticategory, Multicat, OpId};
use crate::error::{Error, Result};
use crate::functor::Functor;

#[derive(Clone)]
pub struct MultiFunctor {
    dom: Multicat,
    cod: Multicat,
    colour_map: Vec<ColourId>,
    op_map: Vec<OpId>,
}

impl MultiFunctor {
    pub fn from_parts(
        dom: Multicat,
        cod: Multicat,
        colour_map: Vec<ColourId>,
        op_map: Vec<OpId>,
    ) -> Self {
        MultiFunctor {
            dom,
            cod,
            colour_map,
            op_map,
        }
    }

    pub fn new(
        dom: Multicat,
        cod: Multicat,
        colour_map: Vec<ColourId>,
        op_map: Vec<OpId>,
    ) -> Result<Self> {
        let f = MultiFunctor::from_parts(dom, cod, colour_map, op_map);
        f.validate()?;
        Ok(f)
    }

    pub fn identity(m: Multicat) -> Self {
        let colour_map = m.colours().collect();
        let op_map = m.op_ids().collect();
        MultiFunctor::from_parts(m.clone(), m, colour_map, op_map)
    }

    /// The unary translation of a functor, between the given translations
    /// of its domain and codomain.
    pub fn from_functor(f: &Functor, dom: Multicat, cod: Multicat) -> Self {
        MultiFunctor::from_parts(dom, cod, f.obj_map().to_vec(), f.mor_map().to_vec())
    }

    /// Translates both ends and the functor in one go.
    pub fn translate(f: &Functor) -> Self {
        let dom = Arc::new(FinMulticategory::from_category(f.dom()));
        let cod = Arc::new(FinMulticategory::from_category(f.cod()));
        MultiFunctor::from_functor(f, dom, cod)
    }

    pub fn dom(&self) -> &Multicat {
        &self.dom
    }

    pub fn cod(&self) -> &Multicat {
        &self.cod
    }

    pub fn colour(&self, c: ColourId) -> ColourId {
        self.colour_map[c]
    }

    pub fn op(&self, f: OpId) -> OpId {
        self.op_map[f]
    }

    pub fn colour_map(&self) -> &[ColourId] {
        &self.colour_map
    }

    pub fn op_map(&self) -> &[OpId] {
        &self.op_map
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&self.dom, &self.cod);
        let bad = |msg: String| Err(Error::InvalidMultifunctor(msg));
        if self.colour_map.len() != a.num_colours() || self.op_map.len() != a.num_ops() {
            return bad("map sizes do not match the domain".into());
        }
        if self.colour_map.iter().any(|&c| c >= b.num_colours())
            || self.op_map.iter().any(|&f| f >= b.num_ops())
        {
            return bad("map leaves the codomain".into());
        }
        for f in a.op_ids() {
            let g = self.op_map[f];
            let src: Vec<ColourId> = a.sources(f).iter().map(|&c| self.colour_map[c]).collect();
            if b.sources(g) != src.as_slice() || b.target(g) != self.colour_map[a.target(f)] {
                return bad(format!(
                    "{} is sent to an operation of the wrong profile",
                    a.op(f).name
                ));
            }
        }
        for c in a.colours() {
            if self.op_map[a.unit(c)] != b.unit(self.colour_map[c]) {
                return bad(format!("unit of {} is not preserved", a.colour_name(c)));
            }
        }
        for f in a.op_ids() {
            for j in 0..a.arity(f).saturating_sub(1) {
                if self.op_map[a.swap(f, j)] != b.swap(self.op_map[f], j) {
                    return bad(format!("swap {j} of {} is not preserved", a.op(f).name));
                }
            }
        }
        for (f, i, g, r) in a.composition_table() {
            if b.compose_at(self.op_map[f], i, self.op_map[g]) != Some(self.op_map[r]) {
                return bad(format!(
                    "{} ∘_{i} {} is not preserved",
                    a.op(f).name,
                    a.op(g).name
                ));
            }
        }
        Ok(())
    }

    /// `self ∘ first`
    pub fn after(&self, first: &MultiFunctor) -> Result<MultiFunctor> {
        if !same_multicat(&first.cod, &self.dom) {
            return Err(Error::CodomainMismatch(
                "multifunctors are not composable".into(),
            ));
        }
        Ok(MultiFunctor::from_parts(
            first.dom.clone(),
            self.cod.clone(),
            first
                .colour_map
                .iter()
                .map(|&c| self.colour_map[c])
                .collect(),
            first.op_map.iter().map(|&f| self.op_map[f]).collect(),
        ))
    }

    pub fn inverse(&self) -> Option<MultiFunctor> {
        let invert = |map: &[usize], n: usize| -> Option<Vec<usize>> {
            if map.len() != n {
                return None;
            }
            let mut back = vec![usize::MAX; n];
            for (x, &y) in map.iter().enumerate() {
                if back[y] != usize::MAX {
                    return None;
                }
                back[y] = x;
            }
            Some(back)
        };
        Some(MultiFunctor::from_parts(
            self.cod.clone(),
            self.dom.clone(),
            invert(&self.colour_map, self.cod.num_colours())?,
            invert(&self.op_map, self.cod.num_ops())?,
        ))
    }

    pub fn is_isomorphism(&self) -> bool {
        self.inverse().is_some()
    }

    /// The functor of underlying categories, for unary-only ends.
    pub fn to_functor(&self) -> Result<Functor> {
        let dom = Arc::new(self.dom.to_category()?);
        let cod = Arc::new(self.cod.to_category()?);
        Functor::new(dom, cod, self.colour_map.clone(), self.op_map.clone())
    }
}

impl PartialEq for MultiFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.colour_map == other.colour_map
            && self.op_map == other.op_map
            && same_multicat(&self.dom, &other.dom)
            && same_multicat(&self.cod, &other.cod)
    }
}

impl Eq for MultiFunctor {}

impl fmt::Debug for MultiFunctor {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "MultiFunctor{{colours: {:?}, ops: {:?}}}",
            self.colour_map, self.op_map
        )
    }
}

/// Enumerates multifunctors `a → b`; with `over = Some((p, q))` only those
/// `g` with `p∘g = q`. Colours are fixed first, then operations in id order;
/// each equation is checked as soon as its operations are fixed.
pub fn for_each_multifunctor(
    a: &Multicat,
    b: &Multicat,
    over: Option<(&MultiFunctor, &MultiFunctor)>,
    budget: usize,
    mut visit: impl FnMut(&MultiFunctor) -> ControlFlow<()>,
) -> Result<()> {
    if let Some((p, q)) = over {
        if !same_multicat(p.dom(), b)
            || !same_multicat(q.dom(), a)
            || !same_multicat(p.cod(), q.cod())
        {
            return Err(Error::Precondition(
                "constraint does not fit the search".into(),
            ));
        }
    }
    // equations indexed by the largest operation they mention
    let mut checks: Vec<Vec<(OpId, usize, OpId, OpId)>> = vec![Vec::new(); a.num_ops()];
    for (f, i, g, r) in a.composition_table() {
        checks[f.max(g).max(r)].push((f, i, g, r));
    }
    let mut swap_checks: Vec<Vec<(OpId, usize, OpId)>> = vec![Vec::new(); a.num_ops()];
    for f in a.op_ids() {
        for j in 0..a.arity(f).saturating_sub(1) {
            let s = a.swap(f, j);
            swap_checks[f.max(s)].push((f, j, s));
        }
    }
    let mut spent = 0usize;
    let mut colours = vec![0; a.num_colours()];
    let mut ops = vec![0; a.num_ops()];
    struct Search<'x> {
        a: &'x Multicat,
        b: &'x Multicat,
        over: Option<(&'x MultiFunctor, &'x MultiFunctor)>,
        checks: Vec<Vec<(OpId, usize, OpId, OpId)>>,
        swap_checks: Vec<Vec<(OpId, usize, OpId)>>,
        budget: usize,
    }
    fn tick(spent: &mut usize, budget: usize) -> Result<()> {
        *spent += 1;
        if *spent > budget {
            Err(Error::Budget(budget))
        } else {
            Ok(())
        }
    }
    fn ops_step(
        s: &Search,
        colours: &[ColourId],
        ops: &mut Vec<OpId>,
        f: OpId,
        spent: &mut usize,
        visit: &mut dyn FnMut(&MultiFunctor) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if f == s.a.num_ops() {
            let g =
                MultiFunctor::from_parts(s.a.clone(), s.b.clone(), colours.to_vec(), ops.clone());
            return Ok(visit(&g));
        }
        let src: Vec<ColourId> = s.a.sources(f).iter().map(|&c| colours[c]).collect();
        let tgt = colours[s.a.target(f)];
        let forced = s.a.is_unit(f).then(|| s.b.unit(tgt));
        let cands: Vec<OpId> = match forced {
            Some(u) => vec![u],
            None => s.b.hom(&src, tgt).to_vec(),
        };
        for g in cands {
            tick(spent, s.budget)?;
            if let Some((p, q)) = s.over {
                if p.op(g) != q.op(f) {
                    continue;
                }
            }
            ops[f] = g;
            let ok = s.checks[f]
                .iter()
                .all(|&(x, i, y, r)| s.b.compose_at(ops[x], i, ops[y]) == Some(ops[r]))
                && s.swap_checks[f]
                    .iter()
                    .all(|&(x, j, sx)| s.b.swap(ops[x], j) == ops[sx]);
            if ok && ops_step(s, colours, ops, f + 1, spent, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
    fn colours_step(
        s: &Search,
        colours: &mut Vec<ColourId>,
        ops: &mut Vec<OpId>,
        c: ColourId,
        spent: &mut usize,
        visit: &mut dyn FnMut(&MultiFunctor) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if c == s.a.num_colours() {
            return ops_step(s, colours, ops, 0, spent, visit);
        }
        for d in s.b.colours() {
            tick(spent, s.budget)?;
            if let Some((p, q)) = s.over {
                if p.colour(d) != q.colour(c) {
                    continue;
                }
            }
            colours[c] = d;
            if colours_step(s, colours, ops, c + 1, spent, visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        Ok(ControlFlow::Continue(()))
    }
    let s = Search {
        a,
        b,
        over,
        checks,
        swap_checks,
        budget,
    };
    let _ = colours_step(&s, &mut colours, &mut ops, 0, &mut spent, &mut visit)?;
    Ok(())
}
