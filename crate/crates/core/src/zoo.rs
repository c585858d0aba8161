//! Small named categories used throughout the tests and the corpus.

use crate::category::{CategoryBuilder, FinCategory, MorId, ObjId};
use crate::group::FinGroup;

/// The category with no objects.
pub fn empty() -> FinCategory {
    FinCategory::from_parts(vec![], vec![], vec![], vec![], vec![], vec![])
}

/// One object, one morphism.
pub fn terminal() -> FinCategory {
    discrete(1)
}

pub fn discrete(n: usize) -> FinCategory {
    let objs: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    CategoryBuilder::new().objects(objs).build().unwrap()
}

/// Objects `0, 1` and one arrow `f: 0 → 1`.
pub fn walking_arrow() -> FinCategory {
    chain(1)
}

/// The poset `0 < 1 < … < n` with morphisms named `i_j` for `i < j`.
pub fn chain(n: usize) -> FinCategory {
    let mut b = CategoryBuilder::new().objects((0..=n).map(|i| i.to_string()));
    let name = |i: usize, j: usize| {
        if n == 1 {
            "f".to_string()
        } else {
            format!("{i}_{j}")
        }
    };
    for i in 0..=n {
        for j in i + 1..=n {
            b = b.morphism(name(i, j), i.to_string(), j.to_string());
        }
    }
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                b = b.compose(name(j, k), name(i, j), name(i, k));
            }
        }
    }
    b.build().unwrap()
}

/// Two parallel arrows `s, t: 0 ⇉ 1`.
pub fn parallel_pair() -> FinCategory {
    CategoryBuilder::new()
        .objects(["0", "1"])
        .morphism("s", "0", "1")
        .morphism("t", "0", "1")
        .build()
        .unwrap()
}

/// `0 ← 1 → 2`
pub fn span() -> FinCategory {
    CategoryBuilder::new()
        .objects(["0", "1", "2"])
        .morphism("l", "1", "0")
        .morphism("r", "1", "2")
        .build()
        .unwrap()
}

/// `0 → 1 ← 2`
pub fn cospan() -> FinCategory {
    CategoryBuilder::new()
        .objects(["0", "1", "2"])
        .morphism("l", "0", "1")
        .morphism("r", "2", "1")
        .build()
        .unwrap()
}

/// The indiscrete (codiscrete) category on `n` objects: exactly one
/// morphism between any two objects.
pub fn codiscrete(n: usize) -> FinCategory {
    let mut b = CategoryBuilder::new().objects((0..n).map(|i| i.to_string()));
    let name = |i: usize, j: usize| {
        if i == j {
            format!("id_{i}")
        } else {
            format!("{i}{j}")
        }
    };
    for i in 0..n {
        for j in 0..n {
            if i != j {
                b = b.morphism(name(i, j), i.to_string(), j.to_string());
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k {
                    b = b.compose(name(j, k), name(i, j), name(i, k));
                }
            }
        }
    }
    b.build().unwrap()
}

/// The one-object category of a finite monoid given by its multiplication
/// table (`table[a][b] = a·b`, composition `a∘b = a·b`), with unit `unit`.
pub fn one_object(table: &[Vec<usize>], unit: usize, names: Vec<String>) -> FinCategory {
    let m = table.len();
    // morphism ids: unit first, then the rest in order
    let mut order: Vec<usize> = vec![unit];
    order.extend((0..m).filter(|&x| x != unit));
    let mut pos = vec![0; m];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let mut compose = vec![None; m * m];
    for a in 0..m {
        for b in 0..m {
            compose[pos[a] * m + pos[b]] = Some(pos[table[a][b]]);
        }
    }
    FinCategory::new(
        vec!["*".into()],
        order.iter().map(|&x| names[x].clone()).collect(),
        vec![0; m],
        vec![0; m],
        vec![0],
        compose,
    )
    .expect("monoid table is a category")
}

/// The delooping `BG` of a finite group.
pub fn delooping(g: &FinGroup) -> FinCategory {
    let names = (0..g.order()).map(|i| g.name(i).to_string()).collect();
    one_object(g.table(), g.identity(), names)
}

/// Disjoint union; objects and morphisms of `a` come first.
pub fn coproduct(a: &FinCategory, b: &FinCategory) -> FinCategory {
    coproduct_many(&[a, b])
}

pub fn coproduct_many(parts: &[&FinCategory]) -> FinCategory {
    let mut obj_names = Vec::new();
    let mut mor_names = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut identity = Vec::new();
    let total: usize = parts.iter().map(|c| c.num_morphisms()).sum();
    let mut compose = vec![None; total * total];
    let (mut obj_off, mut mor_off) = (0, 0);
    for (k, c) in parts.iter().enumerate() {
        let tag = |s: &str| {
            if parts.len() > 1 {
                format!("{s}.{k}")
            } else {
                s.to_string()
            }
        };
        obj_names.extend(c.obj_names().iter().map(|s| tag(s)));
        mor_names.extend(c.mor_names().iter().map(|s| tag(s)));
        src.extend(c.morphisms().map(|f| c.src(f) + obj_off));
        tgt.extend(c.morphisms().map(|f| c.tgt(f) + obj_off));
        identity.extend(c.objects().map(|a| c.id(a) + mor_off));
        for g in c.morphisms() {
            for f in c.morphisms() {
                if let Some(h) = c.compose(g, f) {
                    compose[(g + mor_off) * total + f + mor_off] = Some(h + mor_off);
                }
            }
        }
        obj_off += c.num_objects();
        mor_off += c.num_morphisms();
    }
    FinCategory::from_parts(obj_names, mor_names, src, tgt, identity, compose)
}

/// Cartesian product `A × B`; object `(a, b)` has id `a * |B| + b`, morphism
/// `(f, g)` has id `f * |mor B| + g`.
pub fn product(a: &FinCategory, b: &FinCategory) -> FinCategory {
    let (nb, mb) = (b.num_objects(), b.num_morphisms());
    let m = a.num_morphisms() * mb;
    let obj = |x: ObjId, y: ObjId| x * nb + y;
    let mor = |f: MorId, g: MorId| f * mb + g;
    let mut obj_names = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            obj_names.push(format!("({},{})", a.obj_name(x), b.obj_name(y)));
        }
    }
    let mut mor_names = Vec::new();
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    for f in a.morphisms() {
        for g in b.morphisms() {
            mor_names.push(format!("({},{})", a.mor_name(f), b.mor_name(g)));
            src.push(obj(a.src(f), b.src(g)));
            tgt.push(obj(a.tgt(f), b.tgt(g)));
        }
    }
    let mut identity = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            identity.push(mor(a.id(x), b.id(y)));
        }
    }
    let mut compose = vec![None; m * m];
    for f2 in a.morphisms() {
        for g2 in b.morphisms() {
            for f1 in a.morphisms() {
                for g1 in b.morphisms() {
                    if let (Some(f), Some(g)) = (a.compose(f2, f1), b.compose(g2, g1)) {
                        compose[mor(f2, g2) * m + mor(f1, g1)] = Some(mor(f, g));
                    }
                }
            }
        }
    }
    FinCategory::from_parts(obj_names, mor_names, src, tgt, identity, compose)
}

/// Every connected finite groupoid is `BG × codiscrete(k)`.
pub fn connected_groupoid(g: &FinGroup, k: usize) -> FinCategory {
    if k == 1 {
        return delooping(g);
    }
    product(&delooping(g), &codiscrete(k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_categories_validate() {
        for c in [
            empty(),
            terminal(),
            discrete(3),
            walking_arrow(),
            chain(3),
            parallel_pair(),
            span(),
            cospan(),
            codiscrete(3),
            delooping(&FinGroup::cyclic(3)),
            delooping(&FinGroup::symmetric3()),
            coproduct(&walking_arrow(), &terminal()),
            product(&walking_arrow(), &delooping(&FinGroup::cyclic(2))),
            connected_groupoid(&FinGroup::cyclic(2), 2),
        ] {
            assert!(c.validate().is_empty(), "{c:?}: {:?}", c.validate());
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(chain(2).num_morphisms(), 6);
        assert_eq!(codiscrete(2).num_morphisms(), 4);
        assert_eq!(delooping(&FinGroup::symmetric3()).num_morphisms(), 6);
        assert!(codiscrete(3).is_groupoid());
        assert!(!walking_arrow().is_groupoid());
    }
}
