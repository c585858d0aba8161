//! Functors between finite categories and exhaustive functor search.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::category::{Cat, FinCategory, MorId, ObjId};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct Functor {
    dom: Cat,
    cod: Cat,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

/// Structural equality of the underlying categories, short-circuited on
/// shared handles.
pub fn same_cat(a: &Cat, b: &Cat) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Functor {
    pub fn from_parts(dom: Cat, cod: Cat, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Self {
        Functor {
            dom,
            cod,
            obj_map,
            mor_map,
        }
    }

    pub fn new(dom: Cat, cod: Cat, obj_map: Vec<ObjId>, mor_map: Vec<MorId>) -> Result<Self> {
        let f = Self::from_parts(dom, cod, obj_map, mor_map);
        f.validate()?;
        Ok(f)
    }

    /// Checks endpoint, identity and composition preservation by full pair
    /// enumeration.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&*self.dom, &*self.cod);
        let bad = |s: String| Err(Error::InvalidFunctor(s));
        if self.obj_map.len() != a.num_objects() || self.mor_map.len() != a.num_morphisms() {
            return bad("map lengths do not match the domain".into());
        }
        if self.obj_map.iter().any(|&x| x >= b.num_objects())
            || self.mor_map.iter().any(|&x| x >= b.num_morphisms())
        {
            return bad("image id out of range".into());
        }
        for f in a.morphisms() {
            let g = self.mor_map[f];
            if b.src(g) != self.obj_map[a.src(f)] || b.tgt(g) != self.obj_map[a.tgt(f)] {
                return bad(format!(
                    "morphism {} is sent to a morphism with wrong endpoints",
                    a.mor_name(f)
                ));
            }
        }
        for x in a.objects() {
            if self.mor_map[a.id(x)] != b.id(self.obj_map[x]) {
                return bad(format!("identity of {} not preserved", a.obj_name(x)));
            }
        }
        for g in a.morphisms() {
            for f in a.into_obj(a.src(g)) {
                let gf = a.comp(g, f);
                if b.compose(self.mor_map[g], self.mor_map[f]) != Some(self.mor_map[gf]) {
                    return bad(format!(
                        "composite {}∘{} not preserved",
                        a.mor_name(g),
                        a.mor_name(f)
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn identity(c: Cat) -> Self {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        Functor {
            dom: c.clone(),
            cod: c,
            obj_map,
            mor_map,
        }
    }

    /// The functor picking out object `b` (from the terminal category).
    pub fn pick_object(terminal: Cat, cod: Cat, b: ObjId) -> Self {
        assert_eq!(terminal.num_objects(), 1);
        let idb = cod.id(b);
        Functor {
            dom: terminal,
            cod,
            obj_map: vec![b],
            mor_map: vec![idb],
        }
    }

    /// The constant functor at object `b`.
    pub fn constant(dom: Cat, cod: Cat, b: ObjId) -> Self {
        let idb = cod.id(b);
        Functor {
            obj_map: vec![b; dom.num_objects()],
            mor_map: vec![idb; dom.num_morphisms()],
            dom,
            cod,
        }
    }

    pub fn dom(&self) -> &Cat {
        &self.dom
    }

    pub fn cod(&self) -> &Cat {
        &self.cod
    }

    pub fn obj(&self, a: ObjId) -> ObjId {
        self.obj_map[a]
    }

    pub fn mor(&self, f: MorId) -> MorId {
        self.mor_map[f]
    }

    pub fn obj_map(&self) -> &[ObjId] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[MorId] {
        &self.mor_map
    }

    /// `self` after `first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if !same_cat(&first.cod, &self.dom) {
            return Err(Error::CodomainMismatch(
                "functors are not composable".into(),
            ));
        }
        Ok(Functor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj_map[x]).collect(),
            mor_map: first.mor_map.iter().map(|&x| self.mor_map[x]).collect(),
        })
    }

    /// Same maps, reattached to structurally equal categories.
    pub fn rebased(&self, dom: Cat, cod: Cat) -> Functor {
        debug_assert!(same_cat(&dom, &self.dom) && same_cat(&cod, &self.cod));
        Functor {
            dom,
            cod,
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// The inverse functor when both maps are bijections.
    pub fn inverse(&self) -> Option<Functor> {
        let inv = |map: &[usize], n: usize| {
            if map.len() != n {
                return None;
            }
            let mut out = vec![usize::MAX; n];
            for (i, &j) in map.iter().enumerate() {
                if out[j] != usize::MAX {
                    return None;
                }
                out[j] = i;
            }
            Some(out)
        };
        Some(Functor {
            obj_map: inv(&self.obj_map, self.cod.num_objects())?,
            mor_map: inv(&self.mor_map, self.cod.num_morphisms())?,
            dom: self.cod.clone(),
            cod: self.dom.clone(),
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.inverse().is_some()
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> Functor {
        Functor {
            dom: Arc::new(self.dom.opposite()),
            cod: Arc::new(self.cod.opposite()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    /// Opposite functor reusing already-built opposite categories.
    pub fn opposite_with(&self, dom_op: Cat, cod_op: Cat) -> Functor {
        Functor {
            dom: dom_op,
            cod: cod_op,
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.cod.num_objects()];
        self.obj_map
            .iter()
            .all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_full(&self) -> bool {
        let (a, b) = (&self.dom, &self.cod);
        a.objects().all(|x| {
            a.objects().all(|y| {
                let hit: Vec<bool> = {
                    let mut v = vec![false; b.num_morphisms()];
                    for &f in a.hom(x, y) {
                        v[self.mor_map[f]] = true;
                    }
                    v
                };
                b.hom(self.obj_map[x], self.obj_map[y])
                    .iter()
                    .all(|&g| hit[g])
            })
        })
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_cat(&self.dom, &other.dom)
            && same_cat(&self.cod, &other.cod)
    }
}

impl Eq for Functor {}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Functor(obj {:?}, mor {:?})", self.obj_map, self.mor_map)
    }
}

/// Optional restrictions on the images of individual objects and morphisms.
#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub objects: Option<Vec<Vec<ObjId>>>,
    pub morphisms: Option<Vec<Vec<MorId>>>,
}

impl Constraints {
    pub fn none() -> Self {
        Self::default()
    }

    /// Only functors `g` with `p∘g = q` (for fixed `p: C → D`, `q: B → D`).
    pub fn over(p: &Functor, q: &Functor) -> Self {
        let c = p.dom();
        let mut fib_obj = vec![Vec::new(); p.cod().num_objects()];
        for x in c.objects() {
            fib_obj[p.obj(x)].push(x);
        }
        let mut fib_mor = vec![Vec::new(); p.cod().num_morphisms()];
        for f in c.morphisms() {
            fib_mor[p.mor(f)].push(f);
        }
        Constraints {
            objects: Some(q.obj_map().iter().map(|&y| fib_obj[y].clone()).collect()),
            morphisms: Some(q.mor_map().iter().map(|&g| fib_mor[g].clone()).collect()),
        }
    }
}

struct Search<'a> {
    a: &'a FinCategory,
    b: &'a FinCategory,
    cons: &'a Constraints,
    /// variable order: objects, each followed by the non-identity morphisms
    /// whose endpoints have just become assigned
    steps: Vec<Step>,
    /// composition checks to run once the step at the same index is assigned
    checks: Vec<Vec<(MorId, MorId, MorId)>>,
    obj_map: Vec<ObjId>,
    mor_map: Vec<MorId>,
}

#[derive(Clone, Copy)]
enum Step {
    Obj(ObjId),
    Mor(MorId),
}

impl<'a> Search<'a> {
    fn new(a: &'a FinCategory, b: &'a FinCategory, cons: &'a Constraints) -> Self {
        let mut steps = Vec::new();
        let mut assigned_obj = vec![false; a.num_objects()];
        let mut pos_of_mor = vec![usize::MAX; a.num_morphisms()];
        for x in a.objects() {
            steps.push(Step::Obj(x));
            assigned_obj[x] = true;
            // identities are forced; morphisms become assignable when both ends are set
            for f in a.morphisms() {
                if a.is_identity(f) {
                    if a.src(f) == x {
                        pos_of_mor[f] = steps.len() - 1;
                    }
                    continue;
                }
                if pos_of_mor[f] == usize::MAX && assigned_obj[a.src(f)] && assigned_obj[a.tgt(f)] {
                    pos_of_mor[f] = steps.len();
                    steps.push(Step::Mor(f));
                }
            }
        }
        let mut checks = vec![Vec::new(); steps.len()];
        for g in a.morphisms() {
            if a.is_identity(g) {
                continue;
            }
            for f in a.into_obj(a.src(g)) {
                if a.is_identity(f) {
                    continue;
                }
                let h = a.comp(g, f);
                let last = pos_of_mor[g].max(pos_of_mor[f]).max(pos_of_mor[h]);
                checks[last].push((g, f, h));
            }
        }
        Search {
            a,
            b,
            cons,
            steps,
            checks,
            obj_map: vec![usize::MAX; a.num_objects()],
            mor_map: vec![usize::MAX; a.num_morphisms()],
        }
    }

    fn candidates(&self, step: Step) -> Vec<usize> {
        match step {
            Step::Obj(x) => match &self.cons.objects {
                Some(c) => c[x].clone(),
                None => self.b.objects().collect(),
            },
            Step::Mor(f) => {
                let hom = self
                    .b
                    .hom(self.obj_map[self.a.src(f)], self.obj_map[self.a.tgt(f)]);
                match &self.cons.morphisms {
                    Some(c) => hom.iter().copied().filter(|g| c[f].contains(g)).collect(),
                    None => hom.to_vec(),
                }
            }
        }
    }

    fn assign(&mut self, step: Step, v: usize) -> bool {
        match step {
            Step::Obj(x) => {
                self.obj_map[x] = v;
                let idv = self.b.id(v);
                let idx = self.a.id(x);
                if let Some(c) = &self.cons.morphisms {
                    if !c[idx].contains(&idv) {
                        return false;
                    }
                }
                self.mor_map[idx] = idv;
            }
            Step::Mor(f) => self.mor_map[f] = v,
        }
        true
    }

    fn run(
        &mut self,
        k: usize,
        visit: &mut dyn FnMut(&[ObjId], &[MorId]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if k == self.steps.len() {
            return visit(&self.obj_map, &self.mor_map);
        }
        let step = self.steps[k];
        for v in self.candidates(step) {
            if !self.assign(step, v) {
                continue;
            }
            let ok = self.checks[k].iter().all(|&(g, f, h)| {
                self.b.compose(self.mor_map[g], self.mor_map[f]) == Some(self.mor_map[h])
            });
            if ok {
                self.run(k + 1, visit)?;
            }
        }
        ControlFlow::Continue(())
    }
}

/// Calls `visit` on every functor `A → B` satisfying the constraints, in a
/// deterministic order (lexicographic in the variable order: objects by id,
/// each followed by the morphisms it completes). Stops with
/// [`Error::Budget`] when more than `budget` functors would be emitted.
pub fn for_each_functor(
    a: &Cat,
    b: &Cat,
    cons: &Constraints,
    budget: usize,
    mut visit: impl FnMut(&Functor) -> ControlFlow<()>,
) -> Result<()> {
    let mut search = Search::new(a, b, cons);
    let mut count = 0usize;
    let mut over = false;
    let _ = search.run(0, &mut |om, mm| {
        count += 1;
        if count > budget {
            over = true;
            return ControlFlow::Break(());
        }
        let f = Functor::from_parts(a.clone(), b.clone(), om.to_vec(), mm.to_vec());
        visit(&f)
    });
    if over {
        Err(Error::Budget(budget))
    } else {
        Ok(())
    }
}

/// Every functor `A → B`, in the order of [`for_each_functor`].
pub fn enumerate_functors(a: &Cat, b: &Cat, budget: usize) -> Result<Vec<Functor>> {
    enumerate_functors_with(a, b, &Constraints::none(), budget)
}

pub fn enumerate_functors_with(
    a: &Cat,
    b: &Cat,
    cons: &Constraints,
    budget: usize,
) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    for_each_functor(a, b, cons, budget, |f| {
        out.push(f.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_functors(a: &Cat, b: &Cat, budget: usize) -> Result<usize> {
    let mut n = 0;
    for_each_functor(a, b, &Constraints::none(), budget, |_| {
        n += 1;
        ControlFlow::Continue(())
    })?;
    Ok(n)
}

/// First isomorphism `A → B`, if any.
pub fn find_isomorphism(a: &Cat, b: &Cat, budget: usize) -> Result<Option<Functor>> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return Ok(None);
    }
    let mut found = None;
    for_each_functor(a, b, &Constraints::none(), budget, |f| {
        if f.is_isomorphism() {
            found = Some(f.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Relabels a category along object and morphism permutations
/// (`perm[old] = new`), returning the copy and the isomorphism onto it.
pub fn relabel(c: &Cat, obj_perm: &[ObjId], mor_perm: &[MorId]) -> (Cat, Functor) {
    let n = c.num_objects();
    let m = c.num_morphisms();
    let mut obj_names = vec![String::new(); n];
    let mut mor_names = vec![String::new(); m];
    let mut src = vec![0; m];
    let mut tgt = vec![0; m];
    let mut identity = vec![0; n];
    let mut compose = vec![None; m * m];
    for x in c.objects() {
        obj_names[obj_perm[x]] = c.obj_name(x).to_string();
        identity[obj_perm[x]] = mor_perm[c.id(x)];
    }
    for f in c.morphisms() {
        mor_names[mor_perm[f]] = c.mor_name(f).to_string();
        src[mor_perm[f]] = obj_perm[c.src(f)];
        tgt[mor_perm[f]] = obj_perm[c.tgt(f)];
        for g in c.morphisms() {
            if let Some(h) = c.compose(g, f) {
                compose[mor_perm[g] * m + mor_perm[f]] = Some(mor_perm[h]);
            }
        }
    }
    let d: Cat = Arc::new(FinCategory::from_parts(
        obj_names, mor_names, src, tgt, identity, compose,
    ));
    let iso = Functor::from_parts(c.clone(), d.clone(), obj_perm.to_vec(), mor_perm.to_vec());
    (d, iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FinGroup;
    use crate::zoo;

    fn arc(c: FinCategory) -> Cat {
        Arc::new(c)
    }

    #[test]
    fn small_functor_counts() {
        let star = arc(zoo::terminal());
        let arrow = arc(zoo::walking_arrow());
        let bz2 = arc(zoo::delooping(&FinGroup::cyclic(2)));
        assert_eq!(count_functors(&star, &arrow, 100).unwrap(), 2);
        assert_eq!(count_functors(&arrow, &star, 100).unwrap(), 1);
        assert_eq!(count_functors(&bz2, &bz2, 100).unwrap(), 2);
        // functors [1] → [1] are monotone maps on {0<1}
        assert_eq!(count_functors(&arrow, &arrow, 100).unwrap(), 3);
    }

    #[test]
    fn budget_is_reported() {
        let d3 = arc(zoo::discrete(3));
        let c3 = arc(zoo::codiscrete(3));
        assert_eq!(count_functors(&d3, &c3, 27).unwrap(), 27);
        assert_eq!(count_functors(&d3, &c3, 26), Err(Error::Budget(26)));
    }

    #[test]
    fn enumerated_functors_validate() {
        let span = arc(zoo::span());
        let c = arc(zoo::chain(2));
        let fs = enumerate_functors(&span, &c, 1000).unwrap();
        assert!(!fs.is_empty());
        for f in &fs {
            f.validate().unwrap();
        }
    }

    #[test]
    fn composition_and_inverse() {
        let arrow = arc(zoo::walking_arrow());
        let id = Functor::identity(arrow.clone());
        assert_eq!(id.after(&id).unwrap(), id);
        assert_eq!(id.inverse().unwrap(), id);
        let star = arc(zoo::terminal());
        let to_star = Functor::constant(arrow.clone(), star, 0);
        assert!(to_star.inverse().is_none());
    }

    #[test]
    fn relabelled_copies_are_isomorphic() {
        let c = arc(zoo::parallel_pair());
        let (d, iso) = relabel(&c, &[1, 0], &[1, 0, 3, 2]);
        iso.validate().unwrap();
        assert!(d.validate().is_empty());
        assert!(find_isomorphism(&c, &d, 1000).unwrap().is_some());
    }
}
