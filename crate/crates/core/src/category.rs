//! Finite categories stored as explicit tables.
//!
//! Objects and morphisms are dense integer ids. Composition is a partial
//! table `(g, f) -> g∘f`, defined exactly on composable pairs
//! (`tgt f == src g`). Names are carried for display and file round trips
//! but never take part in equality.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type ObjId = usize;
pub type MorId = usize;

/// Shared handle on an immutable category.
pub type Cat = Arc<FinCategory>;

#[derive(Clone)]
pub struct FinCategory {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<ObjId>,
    tgt: Vec<ObjId>,
    identity: Vec<MorId>,
    compose: Vec<Option<MorId>>,
    homs: Vec<Vec<MorId>>,
}

/// One violated category axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Range(String),
    IdentityShape { object: ObjId },
    Undefined { g: MorId, f: MorId },
    NotComposable { g: MorId, f: MorId },
    Endpoints { g: MorId, f: MorId },
    LeftIdentity { f: MorId },
    RightIdentity { f: MorId },
    Associativity { h: MorId, g: MorId, f: MorId },
}

impl fmt::Display for Violation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Range(s) => write!(fm, "id out of range: {s}"),
            Violation::IdentityShape { object } => {
                write!(
                    fm,
                    "identity of object {object} is not an endomorphism of it"
                )
            }
            Violation::Undefined { g, f } => write!(fm, "composite {g}∘{f} undefined"),
            Violation::NotComposable { g, f } => {
                write!(fm, "composite {g}∘{f} defined on a non-composable pair")
            }
            Violation::Endpoints { g, f } => write!(fm, "composite {g}∘{f} has wrong endpoints"),
            Violation::LeftIdentity { f } => write!(fm, "identity law fails: id∘{f} != {f}"),
            Violation::RightIdentity { f } => write!(fm, "identity law fails: {f}∘id != {f}"),
            Violation::Associativity { h, g, f } => {
                write!(fm, "associativity fails on ({h}, {g}, {f})")
            }
        }
    }
}

impl FinCategory {
    /// Assembles a category from raw tables without checking the axioms.
    /// Use [`FinCategory::validate`] (or [`FinCategory::new`]) to check them.
    pub fn from_parts(
        obj_names: Vec<String>,
        mor_names: Vec<String>,
        src: Vec<ObjId>,
        tgt: Vec<ObjId>,
        identity: Vec<MorId>,
        compose: Vec<Option<MorId>>,
    ) -> Self {
        let n = obj_names.len();
        let mut homs = vec![Vec::new(); n * n];
        for f in 0..src.len() {
            if src[f] < n && tgt.get(f).is_some_and(|&t| t < n) {
                homs[src[f] * n + tgt[f]].push(f);
            }
        }
        FinCategory {
            obj_names,
            mor_names,
            src,
            tgt,
            identity,
            compose,
            homs,
        }
    }

    /// Like [`FinCategory::from_parts`] but rejects tables violating any axiom.
    pub fn new(
        obj_names: Vec<String>,
        mor_names: Vec<String>,
        src: Vec<ObjId>,
        tgt: Vec<ObjId>,
        identity: Vec<MorId>,
        compose: Vec<Option<MorId>>,
    ) -> Result<Self> {
        let c = Self::from_parts(obj_names, mor_names, src, tgt, identity, compose);
        let report = c.validate();
        if let Some(v) = report.first() {
            return Err(Error::InvalidCategory(v.to_string()));
        }
        Ok(c)
    }

    /// Checks composability, endpoints, identity laws and associativity by
    /// full enumeration. Empty when the tables form a category.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.obj_names.len();
        let m = self.src.len();
        let mut out = Vec::new();
        if self.tgt.len() != m || self.mor_names.len() != m {
            out.push(Violation::Range("morphism table lengths differ".into()));
            return out;
        }
        if self.identity.len() != n {
            out.push(Violation::Range("identity table length".into()));
            return out;
        }
        if self.compose.len() != m * m {
            out.push(Violation::Range("composition table size".into()));
            return out;
        }
        if let Some(f) = (0..m).find(|&f| self.src[f] >= n || self.tgt[f] >= n) {
            out.push(Violation::Range(format!("endpoint of morphism {f}")));
            return out;
        }
        if self.identity.iter().any(|&i| i >= m) || self.compose.iter().flatten().any(|&h| h >= m) {
            out.push(Violation::Range("morphism id".into()));
            return out;
        }
        for a in 0..n {
            let i = self.identity[a];
            if self.src[i] != a || self.tgt[i] != a {
                out.push(Violation::IdentityShape { object: a });
            }
        }
        if !out.is_empty() {
            return out;
        }
        for g in 0..m {
            for f in 0..m {
                let composable = self.tgt[f] == self.src[g];
                match (composable, self.compose[g * m + f]) {
                    (true, None) => out.push(Violation::Undefined { g, f }),
                    (false, Some(_)) => out.push(Violation::NotComposable { g, f }),
                    (true, Some(h)) => {
                        if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                            out.push(Violation::Endpoints { g, f });
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for f in 0..m {
            if self.compose[self.identity[self.tgt[f]] * m + f] != Some(f) {
                out.push(Violation::LeftIdentity { f });
            }
            if self.compose[f * m + self.identity[self.src[f]]] != Some(f) {
                out.push(Violation::RightIdentity { f });
            }
        }
        for f in 0..m {
            for g in self.out_of(self.tgt[f]) {
                let gf = self.compose[g * m + f].unwrap();
                for h in self.out_of(self.tgt[g]) {
                    let hg = self.compose[h * m + g].unwrap();
                    if self.compose[h * m + gf] != self.compose[hg * m + f] {
                        out.push(Violation::Associativity { h, g, f });
                    }
                }
            }
        }
        out
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn objects(&self) -> std::ops::Range<ObjId> {
        0..self.num_objects()
    }

    pub fn morphisms(&self) -> std::ops::Range<MorId> {
        0..self.num_morphisms()
    }

    pub fn src(&self, f: MorId) -> ObjId {
        self.src[f]
    }

    pub fn tgt(&self, f: MorId) -> ObjId {
        self.tgt[f]
    }

    pub fn id(&self, a: ObjId) -> MorId {
        self.identity[a]
    }

    pub fn is_identity(&self, f: MorId) -> bool {
        self.identity[self.src[f]] == f
    }

    /// `g∘f` when `tgt f == src g`.
    pub fn compose(&self, g: MorId, f: MorId) -> Option<MorId> {
        self.compose[g * self.num_morphisms() + f]
    }

    /// Composite of a composable pair; panics otherwise.
    pub fn comp(&self, g: MorId, f: MorId) -> MorId {
        self.compose(g, f)
            .unwrap_or_else(|| panic!("morphisms {g} and {f} are not composable"))
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> &[MorId] {
        &self.homs[a * self.num_objects() + b]
    }

    /// Morphisms with source `a`, in id order.
    pub fn out_of(&self, a: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |&f| self.src[f] == a)
    }

    /// Morphisms with target `b`, in id order.
    pub fn into_obj(&self, b: ObjId) -> impl Iterator<Item = MorId> + '_ {
        self.morphisms().filter(move |&f| self.tgt[f] == b)
    }

    pub fn obj_name(&self, a: ObjId) -> &str {
        &self.obj_names[a]
    }

    pub fn mor_name(&self, f: MorId) -> &str {
        &self.mor_names[f]
    }

    pub fn obj_names(&self) -> &[String] {
        &self.obj_names
    }

    pub fn mor_names(&self) -> &[String] {
        &self.mor_names
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjId> {
        self.obj_names.iter().position(|n| n == name)
    }

    pub fn morphism_by_name(&self, name: &str) -> Option<MorId> {
        self.mor_names.iter().position(|n| n == name)
    }

    /// Inverse of `f` if it has one.
    pub fn inverse(&self, f: MorId) -> Option<MorId> {
        let (a, b) = (self.src[f], self.tgt[f]);
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose(g, f) == Some(self.identity[a])
                && self.compose(f, g) == Some(self.identity[b])
        })
    }

    pub fn is_groupoid(&self) -> bool {
        self.morphisms().all(|f| self.inverse(f).is_some())
    }

    /// Every morphism is an identity.
    pub fn is_discrete(&self) -> bool {
        self.num_morphisms() == self.num_objects()
    }

    /// Same category with renamed objects and morphisms.
    pub fn renamed(&self, obj_names: Vec<String>, mor_names: Vec<String>) -> Self {
        assert_eq!(obj_names.len(), self.num_objects());
        assert_eq!(mor_names.len(), self.num_morphisms());
        FinCategory {
            obj_names,
            mor_names,
            ..self.clone()
        }
    }

    /// The opposite category: same ids, endpoints swapped, composition reversed.
    pub fn opposite(&self) -> FinCategory {
        let m = self.num_morphisms();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                // in the opposite, g∘f is defined when f∘g is in the original
                compose[g * m + f] = self.compose[f * m + g];
            }
        }
        FinCategory::from_parts(
            self.obj_names.clone(),
            self.mor_names.clone(),
            self.tgt.clone(),
            self.src.clone(),
            self.identity.clone(),
            compose,
        )
    }

    /// Full subcategory on the given objects (kept in the given order).
    /// Returns the subcategory and the morphism ids it keeps.
    pub fn full_subcategory(&self, objects: &[ObjId]) -> (FinCategory, Vec<MorId>) {
        let mut new_obj = vec![usize::MAX; self.num_objects()];
        for (i, &a) in objects.iter().enumerate() {
            new_obj[a] = i;
        }
        let kept: Vec<MorId> = self
            .morphisms()
            .filter(|&f| new_obj[self.src[f]] != usize::MAX && new_obj[self.tgt[f]] != usize::MAX)
            .collect();
        let mut new_mor = vec![usize::MAX; self.num_morphisms()];
        for (i, &f) in kept.iter().enumerate() {
            new_mor[f] = i;
        }
        let k = kept.len();
        let mut compose = vec![None; k * k];
        for (gi, &g) in kept.iter().enumerate() {
            for (fi, &f) in kept.iter().enumerate() {
                if let Some(h) = self.compose(g, f) {
                    compose[gi * k + fi] = Some(new_mor[h]);
                }
            }
        }
        let c = FinCategory::from_parts(
            objects.iter().map(|&a| self.obj_names[a].clone()).collect(),
            kept.iter().map(|&f| self.mor_names[f].clone()).collect(),
            kept.iter().map(|&f| new_obj[self.src[f]]).collect(),
            kept.iter().map(|&f| new_obj[self.tgt[f]]).collect(),
            objects.iter().map(|&a| new_mor[self.identity[a]]).collect(),
            compose,
        );
        (c, kept)
    }

    /// Canonical encoding of the tables, ignoring names.
    pub fn structure_key(&self) -> (usize, &[ObjId], &[ObjId], &[MorId], &[Option<MorId>]) {
        (
            self.num_objects(),
            &self.src,
            &self.tgt,
            &self.identity,
            &self.compose,
        )
    }
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        self.structure_key() == other.structure_key()
    }
}

impl Eq for FinCategory {}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FinCategory({} objects, {} morphisms: ",
            self.num_objects(),
            self.num_morphisms()
        )?;
        let mut first = true;
        for m in self.morphisms() {
            if self.is_identity(m) {
                continue;
            }
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(
                f,
                "{}:{}→{}",
                self.mor_names[m], self.obj_names[self.src[m]], self.obj_names[self.tgt[m]]
            )?;
        }
        write!(f, ")")
    }
}

/// Incremental construction of a category by name. Identities and all
/// composites involving identities are filled in automatically; every other
/// composable pair must be declared.
#[derive(Default, Clone, Debug)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, String, String)>,
    composites: Vec<(String, String, String)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(mut self, name: impl Into<String>) -> Self {
        self.objects.push(name.into());
        self
    }

    pub fn objects<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.objects.extend(names.into_iter().map(Into::into));
        self
    }

    pub fn morphism(
        mut self,
        name: impl Into<String>,
        src: impl Into<String>,
        tgt: impl Into<String>,
    ) -> Self {
        self.morphisms.push((name.into(), src.into(), tgt.into()));
        self
    }

    /// Declares `g∘f = h`. Identities may be referred to as `id_<object>`.
    pub fn compose(
        mut self,
        g: impl Into<String>,
        f: impl Into<String>,
        h: impl Into<String>,
    ) -> Self {
        self.composites.push((g.into(), f.into(), h.into()));
        self
    }

    pub fn build(self) -> Result<FinCategory> {
        let n = self.objects.len();
        let mut obj_index = HashMap::new();
        for (i, o) in self.objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!("duplicate object {o}")));
            }
        }
        let mut names: Vec<String> = self.objects.iter().map(|o| format!("id_{o}")).collect();
        let mut src: Vec<ObjId> = (0..n).collect();
        let mut tgt: Vec<ObjId> = (0..n).collect();
        for (name, s, t) in &self.morphisms {
            let s = *obj_index
                .get(s)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {s}")))?;
            let t = *obj_index
                .get(t)
                .ok_or_else(|| Error::InvalidCategory(format!("unknown object {t}")))?;
            names.push(name.clone());
            src.push(s);
            tgt.push(t);
        }
        let mut mor_index = HashMap::new();
        for (i, nm) in names.iter().enumerate() {
            if mor_index.insert(nm.clone(), i).is_some() {
                return Err(Error::InvalidCategory(format!("duplicate morphism {nm}")));
            }
        }
        let m = names.len();
        let mut compose = vec![None; m * m];
        for f in 0..m {
            compose[tgt[f] * m + f] = Some(f);
            compose[f * m + src[f]] = Some(f);
        }
        let lookup = |s: &String| {
            mor_index
                .get(s)
                .copied()
                .ok_or_else(|| Error::InvalidCategory(format!("unknown morphism {s}")))
        };
        for (g, f, h) in &self.composites {
            let (g, f, h) = (lookup(g)?, lookup(f)?, lookup(h)?);
            if let Some(prev) = compose[g * m + f] {
                if prev != h {
                    return Err(Error::InvalidCategory(format!(
                        "conflicting composite for ({}, {})",
                        names[g], names[f]
                    )));
                }
            }
            compose[g * m + f] = Some(h);
        }
        FinCategory::new(self.objects, names, src, tgt, (0..n).collect(), compose)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    #[test]
    fn terminal_and_walking_arrow_validate() {
        assert!(zoo::terminal().validate().is_empty());
        let arrow = zoo::walking_arrow();
        assert!(arrow.validate().is_empty());
        assert_eq!(arrow.num_objects(), 2);
        assert_eq!(arrow.num_morphisms(), 3);
    }

    #[test]
    fn identity_mapped_to_arrow_is_reported() {
        let arrow = zoo::walking_arrow();
        let m = arrow.num_morphisms();
        let f = arrow.morphism_by_name("f").unwrap();
        let id0 = arrow.id(0);
        let mut compose = arrow.compose.clone();
        compose[id0 * m + id0] = Some(f);
        let broken = FinCategory::from_parts(
            arrow.obj_names.clone(),
            arrow.mor_names.clone(),
            arrow.src.clone(),
            arrow.tgt.clone(),
            arrow.identity.clone(),
            compose,
        );
        let report = broken.validate();
        assert!(!report.is_empty());
        // id_0∘id_0 = f has the wrong target, and the identity law fails
        assert!(report.iter().any(|v| matches!(
            v,
            Violation::Endpoints { .. } | Violation::LeftIdentity { .. }
        )));
    }

    #[test]
    fn associativity_violation_is_found() {
        // one object, morphisms e (identity), a, b with a∘a = b, a∘b = a, b∘a = b, b∘b = b:
        // (a∘a)∘b = b∘b = b but a∘(a∘b) = a∘a = b; try (a∘b)∘a = a∘a = b vs a∘(b∘a) = a∘b = a
        let c = FinCategory::from_parts(
            vec!["x".into()],
            vec!["e".into(), "a".into(), "b".into()],
            vec![0, 0, 0],
            vec![0, 0, 0],
            vec![0],
            vec![
                Some(0),
                Some(1),
                Some(2), //
                Some(1),
                Some(2),
                Some(1), //
                Some(2),
                Some(2),
                Some(2),
            ],
        );
        assert!(c
            .validate()
            .iter()
            .any(|v| matches!(v, Violation::Associativity { .. })));
    }

    #[test]
    fn opposite_is_involutive() {
        let c = zoo::parallel_pair();
        assert_eq!(c.opposite().opposite(), c);
        assert_eq!(zoo::terminal().opposite(), zoo::terminal());
        let op = zoo::walking_arrow().opposite();
        let f = op.morphism_by_name("f").unwrap();
        assert_eq!((op.src(f), op.tgt(f)), (1, 0));
        assert!(op.validate().is_empty());
    }

    #[test]
    fn builder_rejects_missing_composite() {
        let r = CategoryBuilder::new()
            .objects(["a", "b", "c"])
            .morphism("f", "a", "b")
            .morphism("g", "b", "c")
            .build();
        assert!(r.is_err());
    }
}
