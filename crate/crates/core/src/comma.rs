//! Comma categories and connected components of finite categories.

use std::sync::Arc;

use crate::category::{Cat, FinCategory, MorId, ObjId};
use crate::error::{Error, Result};
use crate::functor::{same_cat, Functor};
use crate::unionfind::UnionFind;

/// `F ↓ G` for `F: A → C`, `G: B → C`.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: Cat,
    /// objects `(a, b, φ: Fa → Gb)` in lexicographic order
    pub objects: Vec<(ObjId, ObjId, MorId)>,
    /// morphisms `(u: a → a', v: b → b')`, indexed like `category`
    pub morphisms: Vec<(MorId, MorId)>,
    pub proj_left: Functor,
    pub proj_right: Functor,
}

pub fn comma(f: &Functor, g: &Functor) -> Result<CommaCategory> {
    if !same_cat(f.cod(), g.cod()) {
        return Err(Error::CodomainMismatch(
            "comma of functors into different categories".into(),
        ));
    }
    let (a, b, c) = (f.dom(), g.dom(), f.cod());
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            for &phi in c.hom(f.obj(x), g.obj(y)) {
                objects.push((x, y, phi));
            }
        }
    }
    let index = |o: &(ObjId, ObjId, MorId)| objects.binary_search(o).unwrap();
    let mut morphisms = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for (i, &(x, y, phi)) in objects.iter().enumerate() {
        for u in a.out_of(x) {
            for v in b.out_of(y) {
                // target (x', y', φ') with φ'∘F u = G v∘φ
                let (x2, y2) = (a.tgt(u), b.tgt(v));
                let rhs = c.comp(g.mor(v), phi);
                for &phi2 in c.hom(f.obj(x2), g.obj(y2)) {
                    if c.comp(phi2, f.mor(u)) == rhs {
                        morphisms.push((u, v));
                        src.push(i);
                        tgt.push(index(&(x2, y2, phi2)));
                    }
                }
            }
        }
    }
    let m = morphisms.len();
    let mut lookup = std::collections::HashMap::new();
    for k in 0..m {
        lookup.insert((src[k], morphisms[k]), k);
    }
    let mut compose = vec![None; m * m];
    for k2 in 0..m {
        for k1 in 0..m {
            if tgt[k1] == src[k2] {
                let (u1, v1) = morphisms[k1];
                let (u2, v2) = morphisms[k2];
                let h = lookup[&(src[k1], (a.comp(u2, u1), b.comp(v2, v1)))];
                compose[k2 * m + k1] = Some(h);
            }
        }
    }
    let identity = objects
        .iter()
        .enumerate()
        .map(|(i, &(x, y, _))| lookup[&(i, (a.id(x), b.id(y)))])
        .collect();
    let obj_names = objects
        .iter()
        .map(|&(x, y, phi)| format!("({},{},{})", a.obj_name(x), b.obj_name(y), c.mor_name(phi)))
        .collect();
    let mor_names = morphisms
        .iter()
        .zip(&src)
        .map(|(&(u, v), &s)| format!("({},{})@{}", a.mor_name(u), b.mor_name(v), s))
        .collect();
    let cat: Cat = Arc::new(FinCategory::from_parts(
        obj_names, mor_names, src, tgt, identity, compose,
    ));
    let proj_left = Functor::from_parts(
        cat.clone(),
        a.clone(),
        objects.iter().map(|o| o.0).collect(),
        morphisms.iter().map(|m| m.0).collect(),
    );
    let proj_right = Functor::from_parts(
        cat.clone(),
        b.clone(),
        objects.iter().map(|o| o.1).collect(),
        morphisms.iter().map(|m| m.1).collect(),
    );
    Ok(CommaCategory {
        category: cat,
        objects,
        morphisms,
        proj_left,
        proj_right,
    })
}

/// Zigzag components: blocks of object ids ordered by least member, and the
/// block index of every object.
pub fn pi0_category(c: &FinCategory) -> (Vec<Vec<ObjId>>, Vec<usize>) {
    let mut uf = UnionFind::new(c.num_objects());
    for f in c.morphisms() {
        uf.union(c.src(f), c.tgt(f));
    }
    uf.blocks()
}

pub fn num_components(c: &FinCategory) -> usize {
    pi0_category(c).0.len()
}

/// Non-empty with a single zigzag component.
pub fn is_connected_category(c: &FinCategory) -> bool {
    num_components(c) == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn arc(c: FinCategory) -> Cat {
        Arc::new(c)
    }

    #[test]
    fn comma_of_identities_on_terminal() {
        let t = arc(zoo::terminal());
        let id = Functor::identity(t);
        let k = comma(&id, &id).unwrap();
        assert_eq!(*k.category, zoo::terminal());
        k.proj_left.validate().unwrap();
    }

    #[test]
    fn comma_of_object_zero_over_arrow() {
        let t = arc(zoo::terminal());
        let arrow = arc(zoo::walking_arrow());
        let zero = Functor::pick_object(t, arrow.clone(), 0);
        let k = comma(&zero, &Functor::identity(arrow.clone())).unwrap();
        // brute force: triples (⋆, b, φ: 0 → b) are (⋆,0,id_0), (⋆,1,f)
        let mut triples = 0;
        for b in arrow.objects() {
            triples += arrow.hom(0, b).len();
        }
        assert_eq!(k.category.num_objects(), triples);
        assert_eq!(k.category.num_objects(), 2);
        assert_eq!(k.category.num_morphisms() - k.category.num_objects(), 1);
        assert!(k.category.validate().is_empty());
        k.proj_right.validate().unwrap();
    }

    #[test]
    fn comma_one_over_zero_is_empty() {
        let t = arc(zoo::terminal());
        let arrow = arc(zoo::walking_arrow());
        let one = Functor::pick_object(t.clone(), arrow.clone(), 1);
        let zero = Functor::pick_object(t, arrow, 0);
        let k = comma(&one, &zero).unwrap();
        assert_eq!(k.category.num_objects(), 0);
    }

    #[test]
    fn components() {
        assert_eq!(pi0_category(&zoo::discrete(3)).0.len(), 3);
        assert_eq!(pi0_category(&zoo::walking_arrow()).0.len(), 1);
        let c = zoo::coproduct(&zoo::parallel_pair(), &zoo::terminal());
        let (blocks, _) = pi0_category(&c);
        assert_eq!(blocks, vec![vec![0, 1], vec![2]]);
    }
}
