//! The powerset comprehension scheme on finite sets: direct and inverse
//! image, subset inclusions as coverings, image factorisation.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scheme::Scheme;

/// A finite set `0..size`, optionally with element names. Equality ignores
/// names.
#[derive(Clone)]
pub struct FinSet {
    size: usize,
    names: Option<Arc<Vec<String>>>,
}

impl FinSet {
    pub fn new(size: usize) -> Self {
        FinSet { size, names: None }
    }

    pub fn named(names: Vec<String>) -> Result<Self> {
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidSetMap(
                "element names must be distinct".into(),
            ));
        }
        Ok(FinSet {
            size: names.len(),
            names: Some(Arc::new(names)),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn name(&self, x: usize) -> String {
        match &self.names {
            Some(n) => n[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        match &self.names {
            Some(n) => n.iter().position(|s| s == name),
            None => name.parse().ok().filter(|&i| i < self.size),
        }
    }

    pub fn has_names(&self) -> bool {
        self.names.is_some()
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinSet({})", self.size)
    }
}

/// A total map between finite sets.
#[derive(Clone, PartialEq, Eq)]
pub struct SetMap {
    dom: FinSet,
    cod: FinSet,
    map: Vec<usize>,
}

impl SetMap {
    pub fn new(dom: FinSet, cod: FinSet, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.size() || map.iter().any(|&y| y >= cod.size()) {
            return Err(Error::InvalidSetMap(
                "map is not total into its codomain".into(),
            ));
        }
        Ok(SetMap { dom, cod, map })
    }

    pub fn identity(a: &FinSet) -> Self {
        SetMap {
            dom: a.clone(),
            cod: a.clone(),
            map: (0..a.size()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    /// `self` after `first`.
    pub fn after(&self, first: &SetMap) -> Result<SetMap> {
        if first.cod != self.dom {
            return Err(Error::CodomainMismatch(
                "set maps are not composable".into(),
            ));
        }
        Ok(SetMap {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        self.map
            .iter()
            .all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn inverse(&self) -> Option<SetMap> {
        if self.dom.size() != self.cod.size() || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Some(SetMap {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map: inv,
        })
    }

    /// Sorted image `f(A)`.
    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Debug for SetMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SetMap({} → {}, {:?})",
            self.dom.size(),
            self.cod.size(),
            self.map
        )
    }
}

/// A subset of a finite set, as a sorted list of members.
#[derive(Clone, PartialEq, Eq)]
pub struct Subset {
    base: FinSet,
    members: Vec<usize>,
}

impl Subset {
    pub fn new(base: FinSet, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.iter().any(|&x| x >= base.size()) {
            return Err(Error::InvalidSetMap("subset member out of range".into()));
        }
        Ok(Subset { base, members })
    }

    pub fn whole(base: &FinSet) -> Self {
        Subset {
            members: (0..base.size()).collect(),
            base: base.clone(),
        }
    }

    pub fn base(&self) -> &FinSet {
        &self.base
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.base == other.base && self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &Subset) -> Subset {
        Subset {
            base: self.base.clone(),
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// Every subset of `base`, ordered by bitmask.
    pub fn all(base: &FinSet) -> Vec<Subset> {
        let n = base.size();
        (0u64..1 << n)
            .map(|mask| Subset {
                base: base.clone(),
                members: (0..n).filter(|&i| mask >> i & 1 == 1).collect(),
            })
            .collect()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:?} ⊆ {})", self.members, self.base.size())
    }
}

/// `X ⊆ Y`, the only kind of morphism in a powerset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inclusion {
    pub dom: Subset,
    pub cod: Subset,
}

impl Inclusion {
    pub fn new(dom: Subset, cod: Subset) -> Result<Self> {
        if !dom.is_subset_of(&cod) {
            return Err(Error::Precondition("not a subset".into()));
        }
        Ok(Inclusion { dom, cod })
    }
}

/// `f(X)`
pub fn direct_image(f: &SetMap, x: &Subset) -> Subset {
    let mut members: Vec<usize> = x.members().iter().map(|&i| f.apply(i)).collect();
    members.sort_unstable();
    members.dedup();
    Subset {
        base: f.cod().clone(),
        members,
    }
}

/// `f⁻¹(Y)`
pub fn inverse_image(f: &SetMap, y: &Subset) -> Subset {
    Subset {
        base: f.dom().clone(),
        members: (0..f.dom().size())
            .filter(|&i| y.contains(f.apply(i)))
            .collect(),
    }
}

/// The inclusion `S ↪ B` of a subset, with `S` numbered in member order and
/// carrying the member names.
pub fn subset_inclusion(s: &Subset) -> SetMap {
    let dom = match s.base().has_names() {
        true => FinSet::named(s.members().iter().map(|&x| s.base().name(x)).collect()).unwrap(),
        false => FinSet::new(s.members().len()),
    };
    SetMap {
        dom,
        cod: s.base().clone(),
        map: s.members().to_vec(),
    }
}

/// `f = inclusion ∘ surjection` through the image of `f`.
pub fn image_factorise(f: &SetMap) -> (SetMap, SetMap) {
    let img = direct_image(f, &Subset::whole(f.dom()));
    let incl = subset_inclusion(&img);
    let surj = SetMap {
        dom: f.dom().clone(),
        cod: incl.dom().clone(),
        map: f
            .table()
            .iter()
            .map(|y| img.members().binary_search(y).unwrap())
            .collect(),
    };
    (surj, incl)
}

/// Every map `dom → cod` in lexicographic order of tables.
pub fn for_each_set_map(
    dom: &FinSet,
    cod: &FinSet,
    allowed: Option<&[Vec<usize>]>,
    budget: usize,
    visit: &mut dyn FnMut(&SetMap) -> ControlFlow<()>,
) -> Result<()> {
    let n = dom.size();
    let cands: Vec<Vec<usize>> = (0..n)
        .map(|i| match allowed {
            Some(a) => a[i].clone(),
            None => (0..cod.size()).collect(),
        })
        .collect();
    if cands.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        count += 1;
        if count > budget {
            return Err(Error::Budget(budget));
        }
        let map = SetMap {
            dom: dom.clone(),
            cod: cod.clone(),
            map: (0..n).map(|i| cands[i][idx[i]]).collect(),
        };
        if visit(&map).is_break() {
            return Ok(());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < cands[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PowersetScheme;

impl Scheme for PowersetScheme {
    type Obj = FinSet;
    type Mor = SetMap;
    type PObj = Subset;
    type PMor = Inclusion;

    fn name(&self) -> &'static str {
        "powerset"
    }

    fn dom(&self, f: &SetMap) -> FinSet {
        f.dom().clone()
    }

    fn cod(&self, f: &SetMap) -> FinSet {
        f.cod().clone()
    }

    fn identity(&self, a: &FinSet) -> SetMap {
        SetMap::identity(a)
    }

    fn compose(&self, g: &SetMap, f: &SetMap) -> Result<SetMap> {
        g.after(f)
    }

    fn invert(&self, f: &SetMap) -> Option<SetMap> {
        f.inverse()
    }

    fn obj_eq(&self, a: &FinSet, b: &FinSet) -> bool {
        a == b
    }

    fn for_each_mor(
        &self,
        a: &FinSet,
        b: &FinSet,
        over: Option<(&SetMap, &SetMap)>,
        budget: usize,
        visit: &mut dyn FnMut(&SetMap) -> ControlFlow<()>,
    ) -> Result<()> {
        let allowed = over.map(|(p, q)| {
            (0..a.size())
                .map(|i| {
                    (0..b.size())
                        .filter(|&j| p.apply(j) == q.apply(i))
                        .collect()
                })
                .collect::<Vec<Vec<usize>>>()
        });
        for_each_set_map(a, b, allowed.as_deref(), budget, visit)
    }

    fn base(&self, x: &Subset) -> FinSet {
        x.base().clone()
    }

    fn terminal(&self, a: &FinSet) -> Subset {
        Subset::whole(a)
    }

    fn pushforward(&self, f: &SetMap, x: &Subset) -> Result<Subset> {
        if x.base() != f.dom() {
            return Err(Error::BaseMismatch("subset of another set".into()));
        }
        Ok(direct_image(f, x))
    }

    fn pullback(&self, f: &SetMap, y: &Subset) -> Result<Subset> {
        if y.base() != f.cod() {
            return Err(Error::BaseMismatch("subset of another set".into()));
        }
        Ok(inverse_image(f, y))
    }

    fn pushforward_mor(&self, f: &SetMap, m: &Inclusion) -> Result<Inclusion> {
        Inclusion::new(direct_image(f, &m.dom), direct_image(f, &m.cod))
    }

    fn pullback_mor(&self, f: &SetMap, m: &Inclusion) -> Result<Inclusion> {
        Inclusion::new(inverse_image(f, &m.dom), inverse_image(f, &m.cod))
    }

    fn unit(&self, f: &SetMap, x: &Subset) -> Result<Inclusion> {
        Inclusion::new(x.clone(), inverse_image(f, &direct_image(f, x)))
    }

    fn counit(&self, f: &SetMap, y: &Subset) -> Result<Inclusion> {
        Inclusion::new(direct_image(f, &inverse_image(f, y)), y.clone())
    }

    fn elements(&self, x: &Subset) -> Result<SetMap> {
        Ok(subset_inclusion(x))
    }

    fn lift(&self, h: &SetMap, x: &Subset, point: &Inclusion) -> Result<SetMap> {
        if point.dom != Subset::whole(h.dom()) || point.cod != inverse_image(h, x) {
            return Err(Error::Precondition(
                "not a point of the inverse image".into(),
            ));
        }
        let incl = subset_inclusion(x);
        let map = h
            .table()
            .iter()
            .map(|y| x.members().binary_search(y).unwrap())
            .collect();
        Ok(SetMap {
            dom: h.dom().clone(),
            cod: incl.dom().clone(),
            map,
        })
    }

    fn unlift(&self, h: &SetMap, x: &Subset, g: &SetMap) -> Result<Inclusion> {
        if subset_inclusion(x).after(g)? != *h {
            return Err(Error::Precondition(
                "map does not lie over the base map".into(),
            ));
        }
        Inclusion::new(Subset::whole(h.dom()), inverse_image(h, x))
    }

    fn pdom(&self, m: &Inclusion) -> Subset {
        m.dom.clone()
    }

    fn pcod(&self, m: &Inclusion) -> Subset {
        m.cod.clone()
    }

    fn pidentity(&self, x: &Subset) -> Inclusion {
        Inclusion {
            dom: x.clone(),
            cod: x.clone(),
        }
    }

    fn pcompose(&self, g: &Inclusion, f: &Inclusion) -> Result<Inclusion> {
        if f.cod != g.dom {
            return Err(Error::CodomainMismatch(
                "inclusions are not composable".into(),
            ));
        }
        Ok(Inclusion {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
        })
    }

    fn pinverse(&self, m: &Inclusion) -> Option<Inclusion> {
        (m.dom == m.cod).then(|| m.clone())
    }

    fn hom_p(&self, x: &Subset, y: &Subset, _budget: usize) -> Result<Vec<Inclusion>> {
        Ok(Inclusion::new(x.clone(), y.clone()).into_iter().collect())
    }

    fn iso_p(&self, x: &Subset, y: &Subset) -> Result<Option<Inclusion>> {
        Ok((x == y).then(|| self.pidentity(x)))
    }

    fn pmor_eq(&self, a: &Inclusion, b: &Inclusion) -> bool {
        a == b
    }

    fn product(&self, x: &Subset, y: &Subset) -> Result<(Subset, Inclusion, Inclusion)> {
        if x.base() != y.base() {
            return Err(Error::BaseMismatch("subsets of different sets".into()));
        }
        let p = x.intersect(y);
        Ok((
            p.clone(),
            Inclusion::new(p.clone(), x.clone())?,
            Inclusion::new(p, y.clone())?,
        ))
    }

    fn pair(&self, p: &Inclusion, q: &Inclusion) -> Result<Inclusion> {
        if p.dom != q.dom {
            return Err(Error::CodomainMismatch(
                "pairing inclusions with different domains".into(),
            ));
        }
        Inclusion::new(p.dom.clone(), p.cod.intersect(&q.cod))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::{comprehension, factorise, is_connected, is_covering};

    fn set(n: usize) -> FinSet {
        FinSet::new(n)
    }

    fn map(dom: usize, cod: usize, m: &[usize]) -> SetMap {
        SetMap::new(set(dom), set(cod), m.to_vec()).unwrap()
    }

    #[test]
    fn image_factorisation_examples() {
        let (s, i) = image_factorise(&SetMap::identity(&set(3)));
        assert_eq!((s.table(), i.table()), (&[0, 1, 2][..], &[0, 1, 2][..]));
        let (s, i) = image_factorise(&map(3, 2, &[0, 0, 1]));
        assert_eq!(i.table(), &[0, 1]);
        assert!(s.is_surjective());
        let (_, i) = image_factorise(&map(2, 3, &[1, 1]));
        assert_eq!(i.table(), &[1]);
    }

    #[test]
    fn comprehension_is_direct_image() {
        let f = map(2, 3, &[0, 0]);
        assert_eq!(comprehension(&PowersetScheme, &f).unwrap().members(), &[0]);
    }

    #[test]
    fn coverings_are_injections_and_connected_are_surjections() {
        let s = PowersetScheme;
        for n in 0..=3 {
            for m in 0..=3 {
                s.for_each_mor(&set(n), &set(m), None, 1000, &mut |f| {
                    assert_eq!(is_covering(&s, f).unwrap().is_some(), f.is_injective());
                    assert_eq!(is_connected(&s, f).unwrap().is_some(), f.is_surjective());
                    let fac = factorise(&s, f).unwrap();
                    let (surj, incl) = image_factorise(f);
                    assert_eq!((fac.left, fac.right), (surj, incl));
                    ControlFlow::Continue(())
                })
                .unwrap();
            }
        }
    }

    #[test]
    fn adjunction_and_counit() {
        let s = PowersetScheme;
        let f = map(3, 2, &[0, 0, 1]);
        for x in Subset::all(&set(3)) {
            for y in Subset::all(&set(2)) {
                let lhs = direct_image(&f, &x).is_subset_of(&y);
                let rhs = x.is_subset_of(&inverse_image(&f, &y));
                assert_eq!(lhs, rhs);
            }
        }
        for y in Subset::all(&set(2)) {
            assert!(s.counit(&f, &y).is_ok());
        }
        assert_eq!(
            inverse_image(&f, &Subset::whole(&set(2))),
            Subset::whole(&set(3))
        );
    }
}
