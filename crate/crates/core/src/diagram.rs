//! Set-valued diagrams on finite categories and their natural transformations.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::category::{Cat, MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor::{same_cat, Functor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    /// `Set^A`
    Covariant,
    /// `Set^{A^op}`
    Contravariant,
}

impl Variance {
    pub fn flip(self) -> Self {
        match self {
            Variance::Covariant => Variance::Contravariant,
            Variance::Contravariant => Variance::Covariant,
        }
    }
}

/// A functor into finite sets. The carrier at `a` is `0..sizes[a]`;
/// `action[f]` maps the carrier at `src f` to the one at `tgt f`
/// (covariant) or the other way round (contravariant).
#[derive(Clone)]
pub struct SetDiagram {
    base: Cat,
    variance: Variance,
    sizes: Vec<usize>,
    action: Vec<Vec<usize>>,
    names: Option<Vec<Vec<String>>>,
}

impl SetDiagram {
    pub fn from_parts(
        base: Cat,
        variance: Variance,
        sizes: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Self {
        SetDiagram {
            base,
            variance,
            sizes,
            action,
            names: None,
        }
    }

    pub fn new(
        base: Cat,
        variance: Variance,
        sizes: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let d = Self::from_parts(base, variance, sizes, action);
        d.validate()?;
        Ok(d)
    }

    pub fn with_names(mut self, names: Vec<Vec<String>>) -> Self {
        self.names = Some(names);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let c = &*self.base;
        let bad = |s: String| Err(Error::InvalidDiagram(s));
        if self.sizes.len() != c.num_objects() || self.action.len() != c.num_morphisms() {
            return bad("table lengths do not match the base".into());
        }
        if let Some(n) = &self.names {
            if n.len() != self.sizes.len() || n.iter().zip(&self.sizes).any(|(v, &s)| v.len() != s)
            {
                return bad("element names do not match carriers".into());
            }
        }
        for f in c.morphisms() {
            let (from, to) = self.ends(f);
            if self.action[f].len() != self.sizes[from]
                || self.action[f].iter().any(|&y| y >= self.sizes[to])
            {
                return bad(format!("action of {} has the wrong shape", c.mor_name(f)));
            }
        }
        for a in c.objects() {
            if self.action[c.id(a)]
                .iter()
                .enumerate()
                .any(|(i, &j)| i != j)
            {
                return bad(format!(
                    "identity of {} does not act trivially",
                    c.obj_name(a)
                ));
            }
        }
        for g in c.morphisms() {
            for f in c.into_obj(c.src(g)) {
                let gf = c.comp(g, f);
                let (from, _) = self.ends(gf);
                for x in 0..self.sizes[from] {
                    let composed = match self.variance {
                        Variance::Covariant => self.action[g][self.action[f][x]],
                        Variance::Contravariant => self.action[f][self.action[g][x]],
                    };
                    if composed != self.action[gf][x] {
                        return bad(format!(
                            "action not functorial on {}∘{}",
                            c.mor_name(g),
                            c.mor_name(f)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// Carrier indices `(from, to)` the action of `f` runs between.
    pub fn ends(&self, f: MorId) -> (ObjId, ObjId) {
        let (s, t) = (self.base.src(f), self.base.tgt(f));
        match self.variance {
            Variance::Covariant => (s, t),
            Variance::Contravariant => (t, s),
        }
    }

    /// The terminal diagram: a singleton everywhere.
    pub fn terminal(base: Cat, variance: Variance) -> Self {
        let sizes = vec![1; base.num_objects()];
        let action = vec![vec![0]; base.num_morphisms()];
        Self::from_parts(base, variance, sizes, action)
    }

    /// The constant diagram at an `n`-element set.
    pub fn constant(base: Cat, variance: Variance, n: usize) -> Self {
        let sizes = vec![n; base.num_objects()];
        let action = vec![(0..n).collect(); base.num_morphisms()];
        Self::from_parts(base, variance, sizes, action)
    }

    /// The representable `Hom(a, −)` (covariant) or `Hom(−, a)`
    /// (contravariant); elements are morphism ids in hom-set order.
    pub fn representable(base: Cat, variance: Variance, a: ObjId) -> Self {
        let c = &*base;
        let homs: Vec<&[MorId]> = c
            .objects()
            .map(|b| match variance {
                Variance::Covariant => c.hom(a, b),
                Variance::Contravariant => c.hom(b, a),
            })
            .collect();
        let pos = |b: ObjId, f: MorId| homs[b].iter().position(|&g| g == f).unwrap();
        let sizes = homs.iter().map(|h| h.len()).collect();
        let action = c
            .morphisms()
            .map(|f| match variance {
                Variance::Covariant => homs[c.src(f)]
                    .iter()
                    .map(|&g| pos(c.tgt(f), c.comp(f, g)))
                    .collect(),
                Variance::Contravariant => homs[c.tgt(f)]
                    .iter()
                    .map(|&g| pos(c.src(f), c.comp(g, f)))
                    .collect(),
            })
            .collect();
        Self::from_parts(base.clone(), variance, sizes, action)
    }

    pub fn base(&self) -> &Cat {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn size(&self, a: ObjId) -> usize {
        self.sizes[a]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn act(&self, f: MorId, x: usize) -> usize {
        self.action[f][x]
    }

    pub fn action(&self, f: MorId) -> &[usize] {
        &self.action[f]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.action
    }

    pub fn names(&self) -> Option<&Vec<Vec<String>>> {
        self.names.as_ref()
    }

    pub fn element_name(&self, a: ObjId, x: usize) -> String {
        match &self.names {
            Some(n) => n[a][x].clone(),
            None => x.to_string(),
        }
    }

    /// Same data on a structurally equal base handle.
    pub fn rebased(&self, base: Cat) -> Self {
        debug_assert!(same_cat(&base, &self.base));
        SetDiagram {
            base,
            ..self.clone()
        }
    }

    /// The same data read as a diagram of the opposite variance on the
    /// opposite category.
    pub fn dualise(&self) -> Self {
        self.dualise_onto(Arc::new(self.base.opposite()))
    }

    pub fn dualise_onto(&self, base_op: Cat) -> Self {
        SetDiagram {
            base: base_op,
            variance: self.variance.flip(),
            sizes: self.sizes.clone(),
            action: self.action.clone(),
            names: self.names.clone(),
        }
    }

    /// Restriction `f*Y` along `f: A → B`.
    pub fn restrict(&self, f: &Functor) -> Result<Self> {
        if !same_cat(f.cod(), &self.base) {
            return Err(Error::BaseMismatch(
                "restriction along a functor into another base".into(),
            ));
        }
        let a = f.dom();
        Ok(SetDiagram {
            base: a.clone(),
            variance: self.variance,
            sizes: a.objects().map(|x| self.sizes[f.obj(x)]).collect(),
            action: a
                .morphisms()
                .map(|m| self.action[f.mor(m)].clone())
                .collect(),
            names: self
                .names
                .as_ref()
                .map(|n| a.objects().map(|x| n[f.obj(x)].clone()).collect()),
        })
    }

    /// Pointwise product; the pair `(x, y)` has index `x * |Y(a)| + y`.
    pub fn product(&self, other: &SetDiagram) -> Result<Self> {
        self.check_compatible(other)?;
        let sizes = self
            .sizes
            .iter()
            .zip(&other.sizes)
            .map(|(a, b)| a * b)
            .collect();
        let action = self
            .base
            .morphisms()
            .map(|f| {
                let (from, to) = self.ends(f);
                let nt = other.sizes[to];
                let mut v = Vec::with_capacity(self.sizes[from] * other.sizes[from]);
                for x in 0..self.sizes[from] {
                    for y in 0..other.sizes[from] {
                        v.push(self.action[f][x] * nt + other.action[f][y]);
                    }
                }
                v
            })
            .collect();
        Ok(Self::from_parts(
            self.base.clone(),
            self.variance,
            sizes,
            action,
        ))
    }

    /// Pointwise disjoint union; elements of `self` come first.
    pub fn sum(&self, other: &SetDiagram) -> Result<Self> {
        self.check_compatible(other)?;
        let sizes = self
            .sizes
            .iter()
            .zip(&other.sizes)
            .map(|(a, b)| a + b)
            .collect();
        let action = self
            .base
            .morphisms()
            .map(|f| {
                let (_, to) = self.ends(f);
                let off = self.sizes[to];
                self.action[f]
                    .iter()
                    .copied()
                    .chain(other.action[f].iter().map(|&y| y + off))
                    .collect()
            })
            .collect();
        Ok(Self::from_parts(
            self.base.clone(),
            self.variance,
            sizes,
            action,
        ))
    }

    pub fn check_compatible(&self, other: &SetDiagram) -> Result<()> {
        if !same_cat(&self.base, &other.base) {
            return Err(Error::BaseMismatch(
                "diagrams live on different categories".into(),
            ));
        }
        if self.variance != other.variance {
            return Err(Error::VarianceMismatch);
        }
        Ok(())
    }

    /// For each object, the carriers its elements are pushed into:
    /// `(morphism, target object)` pairs for every action leaving it.
    fn outgoing(&self) -> Vec<Vec<(MorId, ObjId)>> {
        let mut out = vec![Vec::new(); self.sizes.len()];
        for f in self.base.morphisms() {
            if self.base.is_identity(f) {
                continue;
            }
            let (from, to) = self.ends(f);
            out[from].push((f, to));
        }
        out
    }
}

impl PartialEq for SetDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.variance == other.variance
            && self.sizes == other.sizes
            && self.action == other.action
            && same_cat(&self.base, &other.base)
    }
}

impl Eq for SetDiagram {}

impl fmt::Debug for SetDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SetDiagram({:?}, sizes {:?}, action {:?})",
            self.variance, self.sizes, self.action
        )
    }
}

/// A natural transformation between diagrams on the same base.
#[derive(Clone, PartialEq, Eq)]
pub struct NatTrans {
    dom: SetDiagram,
    cod: SetDiagram,
    components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn from_parts(dom: SetDiagram, cod: SetDiagram, components: Vec<Vec<usize>>) -> Self {
        NatTrans {
            dom,
            cod,
            components,
        }
    }

    pub fn new(dom: SetDiagram, cod: SetDiagram, components: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self::from_parts(dom, cod, components);
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        self.dom.check_compatible(&self.cod)?;
        let bad = |s: String| Err(Error::InvalidTransformation(s));
        let c = self.dom.base();
        if self.components.len() != c.num_objects() {
            return bad("one component per object required".into());
        }
        for a in c.objects() {
            if self.components[a].len() != self.dom.size(a)
                || self.components[a].iter().any(|&y| y >= self.cod.size(a))
            {
                return bad(format!(
                    "component at {} has the wrong shape",
                    c.obj_name(a)
                ));
            }
        }
        for f in c.morphisms() {
            let (from, to) = self.dom.ends(f);
            for x in 0..self.dom.size(from) {
                if self.components[to][self.dom.act(f, x)]
                    != self.cod.act(f, self.components[from][x])
                {
                    return bad(format!("naturality fails at {}", c.mor_name(f)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(x: &SetDiagram) -> Self {
        NatTrans {
            dom: x.clone(),
            cod: x.clone(),
            components: x.sizes().iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    pub fn dom(&self) -> &SetDiagram {
        &self.dom
    }

    pub fn cod(&self) -> &SetDiagram {
        &self.cod
    }

    pub fn component(&self, a: ObjId) -> &[usize] {
        &self.components[a]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `self` after `first`.
    pub fn after(&self, first: &NatTrans) -> Result<NatTrans> {
        if first.cod != self.dom {
            return Err(Error::CodomainMismatch(
                "natural transformations are not composable".into(),
            ));
        }
        let components = first
            .components
            .iter()
            .zip(&self.components)
            .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
            .collect();
        Ok(NatTrans {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            components,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.dom.sizes() == self.cod.sizes()
            && self.components.iter().all(|c| {
                let mut seen = vec![false; c.len()];
                c.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
            })
    }

    pub fn inverse(&self) -> Option<NatTrans> {
        if !self.is_iso() {
            return None;
        }
        let components = self
            .components
            .iter()
            .map(|c| {
                let mut inv = vec![0; c.len()];
                for (x, &y) in c.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Some(NatTrans {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            components,
        })
    }

    /// Restriction along a functor into the base.
    pub fn restrict(&self, f: &Functor) -> Result<NatTrans> {
        Ok(NatTrans {
            dom: self.dom.restrict(f)?,
            cod: self.cod.restrict(f)?,
            components: f
                .dom()
                .objects()
                .map(|x| self.components[f.obj(x)].clone())
                .collect(),
        })
    }

    pub fn dualise_onto(&self, base_op: Cat) -> NatTrans {
        NatTrans {
            dom: self.dom.dualise_onto(base_op.clone()),
            cod: self.cod.dualise_onto(base_op),
            components: self.components.clone(),
        }
    }

    pub fn rebased(&self, base: Cat) -> NatTrans {
        NatTrans {
            dom: self.dom.rebased(base.clone()),
            cod: self.cod.rebased(base),
            components: self.components.clone(),
        }
    }
}

impl fmt::Debug for NatTrans {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NatTrans({:?})", self.components)
    }
}

/// Backtracking search for natural transformations with constraint
/// propagation along the actions.
struct NatSearch<'a> {
    x: &'a SetDiagram,
    y: &'a SetDiagram,
    bijective: bool,
    outgoing: Vec<Vec<(MorId, ObjId)>>,
    map: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    order: Vec<(ObjId, usize)>,
}

impl<'a> NatSearch<'a> {
    fn new(x: &'a SetDiagram, y: &'a SetDiagram, bijective: bool) -> Self {
        let order = x
            .base()
            .objects()
            .flat_map(|a| (0..x.size(a)).map(move |e| (a, e)))
            .collect();
        NatSearch {
            x,
            y,
            bijective,
            outgoing: x.outgoing(),
            map: x.sizes().iter().map(|&n| vec![usize::MAX; n]).collect(),
            used: y.sizes().iter().map(|&n| vec![false; n]).collect(),
            order,
        }
    }

    /// Sets `(a, e) ↦ v` and everything it forces; returns the trail of
    /// assignments made, or `None` on conflict (after undoing them).
    fn propagate(&mut self, a: ObjId, e: usize, v: usize) -> Option<Vec<(ObjId, usize)>> {
        let mut trail = Vec::new();
        let mut stack = vec![(a, e, v)];
        while let Some((a, e, v)) = stack.pop() {
            let cur = self.map[a][e];
            if cur != usize::MAX {
                if cur != v {
                    self.undo(&trail);
                    return None;
                }
                continue;
            }
            if self.bijective && self.used[a][v] {
                self.undo(&trail);
                return None;
            }
            self.map[a][e] = v;
            if self.bijective {
                self.used[a][v] = true;
            }
            trail.push((a, e));
            for &(f, b) in &self.outgoing[a] {
                stack.push((b, self.x.act(f, e), self.y.act(f, v)));
            }
        }
        Some(trail)
    }

    fn undo(&mut self, trail: &[(ObjId, usize)]) {
        for &(a, e) in trail {
            let v = self.map[a][e];
            if self.bijective {
                self.used[a][v] = false;
            }
            self.map[a][e] = usize::MAX;
        }
    }

    fn run(
        &mut self,
        k: usize,
        visit: &mut dyn FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(&(a, e)) = self.order.get(k) else {
            return visit(&self.map);
        };
        if self.map[a][e] != usize::MAX {
            return self.run(k + 1, visit);
        }
        for v in 0..self.y.size(a) {
            if let Some(trail) = self.propagate(a, e, v) {
                let r = self.run(k + 1, visit);
                self.undo(&trail);
                r?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on each natural transformation `X → Y` (only the
/// componentwise-bijective ones when `bijective`), in lexicographic order of
/// the component tables.
pub fn for_each_nat(
    x: &SetDiagram,
    y: &SetDiagram,
    bijective: bool,
    budget: usize,
    mut visit: impl FnMut(&NatTrans) -> ControlFlow<()>,
) -> Result<()> {
    x.check_compatible(y)?;
    if bijective && x.sizes() != y.sizes() {
        return Ok(());
    }
    let mut search = NatSearch::new(x, y, bijective);
    let mut count = 0;
    let mut over = false;
    let _ = search.run(0, &mut |m| {
        count += 1;
        if count > budget {
            over = true;
            return ControlFlow::Break(());
        }
        visit(&NatTrans::from_parts(x.clone(), y.clone(), m.to_vec()))
    });
    if over {
        Err(Error::Budget(budget))
    } else {
        Ok(())
    }
}

/// All natural transformations `X → Y`.
pub fn nat_transformations(x: &SetDiagram, y: &SetDiagram, budget: usize) -> Result<Vec<NatTrans>> {
    let mut out = Vec::new();
    for_each_nat(x, y, false, budget, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// First natural isomorphism `X → Y` in canonical order, if any.
pub fn diagram_iso(x: &SetDiagram, y: &SetDiagram) -> Result<Option<NatTrans>> {
    let mut found = None;
    for_each_nat(x, y, true, usize::MAX, |t| {
        found = Some(t.clone());
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Global sections: natural transformations from the terminal diagram.
pub fn global_sections(x: &SetDiagram, budget: usize) -> Result<Vec<NatTrans>> {
    let t = SetDiagram::terminal(x.base().clone(), x.variance());
    nat_transformations(&t, x, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;
    use crate::zoo;

    fn bz2() -> Cat {
        Arc::new(zoo::delooping(&FinGroup::cyclic(2)))
    }

    fn regular(base: Cat) -> SetDiagram {
        SetDiagram::new(
            base,
            Variance::Covariant,
            vec![2],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn terminal_iso_is_identity() {
        let c: Cat = Arc::new(zoo::chain(2));
        let t = SetDiagram::terminal(c, Variance::Covariant);
        let w = diagram_iso(&t, &t).unwrap().unwrap();
        assert_eq!(w, NatTrans::identity(&t));
    }

    #[test]
    fn different_sizes_are_not_isomorphic() {
        let c: Cat = Arc::new(zoo::discrete(2));
        let x = SetDiagram::constant(c.clone(), Variance::Covariant, 1);
        let y = SetDiagram::constant(c, Variance::Covariant, 2);
        assert!(diagram_iso(&x, &y).unwrap().is_none());
    }

    #[test]
    fn regular_actions_have_two_isomorphisms() {
        let b = bz2();
        let x = regular(b.clone());
        let mut all = Vec::new();
        for_each_nat(&x, &x, true, 100, |t| {
            all.push(t.clone());
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(all.len(), 2);
        assert_eq!(diagram_iso(&x, &x).unwrap().unwrap().component(0), &[0, 1]);
    }

    #[test]
    fn representable_is_valid_and_has_yoneda_sections() {
        let c: Cat = Arc::new(zoo::span());
        for a in c.objects() {
            for v in [Variance::Covariant, Variance::Contravariant] {
                let r = SetDiagram::representable(c.clone(), v, a);
                r.validate().unwrap();
                // Nat(Hom(a,-), X) ≅ X(a); with X = Hom(a,-) this is |Hom(a,a)| = 1
                assert_eq!(nat_transformations(&r, &r, 100).unwrap().len(), 1);
            }
        }
    }

    #[test]
    fn dualise_is_involutive() {
        let b = bz2();
        let x = regular(b);
        let d = x.dualise();
        d.validate().unwrap();
        assert_eq!(d.dualise(), x);
    }

    #[test]
    fn product_and_sum_validate() {
        let c: Cat = Arc::new(zoo::walking_arrow());
        let x = SetDiagram::new(
            c.clone(),
            Variance::Covariant,
            vec![2, 1],
            vec![vec![0, 1], vec![0], vec![0, 0]],
        )
        .unwrap();
        let y = SetDiagram::representable(c, Variance::Covariant, 0);
        x.product(&y).unwrap().validate().unwrap();
        x.sum(&y).unwrap().validate().unwrap();
    }
}
