//! Colimits of covariant set-valued diagrams.

use crate::category::ObjId;
use crate::diagram::{SetDiagram, Variance};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// The colimit set `0..size` with its cocone. Classes are numbered in order
/// of their least `(object, element)` member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Colimit {
    pub size: usize,
    /// `cocone[a][x]` is the class of `x ∈ X(a)`
    pub cocone: Vec<Vec<usize>>,
    /// least member of each class
    pub reps: Vec<(ObjId, usize)>,
}

pub fn colimit_set_diagram(x: &SetDiagram) -> Result<Colimit> {
    if x.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch);
    }
    let c = x.base();
    let mut offset = Vec::with_capacity(c.num_objects() + 1);
    offset.push(0);
    for a in c.objects() {
        offset.push(offset[a] + x.size(a));
    }
    let total = offset[c.num_objects()];
    let mut uf = UnionFind::new(total);
    for f in c.morphisms() {
        let (s, t) = (c.src(f), c.tgt(f));
        for e in 0..x.size(s) {
            uf.union(offset[s] + e, offset[t] + x.act(f, e));
        }
    }
    let (blocks, block_of) = uf.blocks();
    let obj_of = |i: usize| {
        let a = offset.partition_point(|&o| o <= i) - 1;
        (a, i - offset[a])
    };
    Ok(Colimit {
        size: blocks.len(),
        cocone: c
            .objects()
            .map(|a| (0..x.size(a)).map(|e| block_of[offset[a] + e]).collect())
            .collect(),
        reps: blocks.iter().map(|b| obj_of(b[0])).collect(),
    })
}

impl Colimit {
    /// The mediating map to another cocone `(target size, legs)`, if the legs
    /// are compatible with the colimit classes.
    pub fn mediate(&self, legs: &[Vec<usize>]) -> Option<Vec<usize>> {
        let mut out = vec![usize::MAX; self.size];
        for (a, leg) in legs.iter().enumerate() {
            for (x, &y) in leg.iter().enumerate() {
                let k = self.cocone[a][x];
                if out[k] != usize::MAX && out[k] != y {
                    return None;
                }
                out[k] = y;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Cat;
    use crate::group::FinGroup;
    use crate::zoo;
    use std::sync::Arc;

    #[test]
    fn coproduct_case() {
        let c: Cat = Arc::new(zoo::discrete(2));
        let x = SetDiagram::new(
            c,
            Variance::Covariant,
            vec![1, 2],
            vec![vec![0], vec![0, 1]],
        )
        .unwrap();
        assert_eq!(colimit_set_diagram(&x).unwrap().size, 3);
    }

    #[test]
    fn collapsing_arrow() {
        let c: Cat = Arc::new(zoo::walking_arrow());
        let f = c.morphism_by_name("f").unwrap();
        let mut action = vec![vec![]; 3];
        action[c.id(0)] = vec![0, 1];
        action[c.id(1)] = vec![0];
        action[f] = vec![0, 0];
        let x = SetDiagram::new(c, Variance::Covariant, vec![2, 1], action).unwrap();
        let col = colimit_set_diagram(&x).unwrap();
        assert_eq!(col.size, 1);
        assert_eq!(col.reps, vec![(0, 0)]);
    }

    #[test]
    fn regular_z2_action_has_one_orbit() {
        let c: Cat = Arc::new(zoo::delooping(&FinGroup::cyclic(2)));
        let x = SetDiagram::new(
            c,
            Variance::Covariant,
            vec![2],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        assert_eq!(colimit_set_diagram(&x).unwrap().size, 1);
    }

    #[test]
    fn empty_diagram_has_empty_colimit() {
        let c: Cat = Arc::new(zoo::empty());
        let x = SetDiagram::terminal(c, Variance::Covariant);
        assert_eq!(colimit_set_diagram(&x).unwrap().size, 0);
    }
}
