//! Finite groups as multiplication tables, and finite group actions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone)]
pub struct FinGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    names: Vec<String>,
}

impl FinGroup {
    /// Builds a group from `table[a][b] = a·b`, checking the group axioms.
    pub fn new(table: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty carrier".into()));
        }
        if names.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroup(
                "table is not square over its carrier".into(),
            ));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(FinGroup {
            table,
            identity,
            inverse,
            names,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with elements named `0..n`.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        Self::new(table, (0..n).map(|i| i.to_string()).collect()).unwrap()
    }

    /// `Z/2 × Z/2`.
    pub fn klein() -> Self {
        Self::direct_product(&Self::cyclic(2), &Self::cyclic(2))
    }

    /// `S₃` as permutations of `{0,1,2}` in lexicographic order of their
    /// one-line notation; `a·b` is `a` after `b`.
    pub fn symmetric3() -> Self {
        Self::symmetric(3)
    }

    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        let names = perms
            .iter()
            .map(|p| p.iter().map(|i| i.to_string()).collect::<String>())
            .collect();
        Self::new(table, names).unwrap()
    }

    /// Element `(a, b)` has id `a * |H| + b`.
    pub fn direct_product(g: &FinGroup, h: &FinGroup) -> Self {
        let (ng, nh) = (g.order(), h.order());
        let mut table = vec![vec![0; ng * nh]; ng * nh];
        let mut names = Vec::with_capacity(ng * nh);
        for a in 0..ng {
            for b in 0..nh {
                names.push(format!("({},{})", g.names[a], h.names[b]));
                for c in 0..ng {
                    for d in 0..nh {
                        table[a * nh + b][c * nh + d] = g.table[a][c] * nh + h.table[b][d];
                    }
                }
            }
        }
        Self::new(table, names).unwrap()
    }

    /// One representative of each isomorphism class of groups of order at most 7.
    pub fn small_groups(max_order: usize) -> Vec<FinGroup> {
        assert!(max_order <= 7, "only orders up to 7 are tabulated");
        let mut out = Vec::new();
        for n in 1..=max_order {
            out.push(Self::cyclic(n));
            if n == 4 {
                out.push(Self::klein());
            }
            if n == 6 {
                out.push(Self::symmetric3());
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| {
            self.elements()
                .all(|b| self.table[a][b] == self.table[b][a])
        })
    }

    /// A group isomorphism `self → other`, as an element map, if one exists.
    pub fn isomorphism_to(&self, other: &FinGroup) -> Option<Vec<usize>> {
        let n = self.order();
        if n != other.order() {
            return None;
        }
        let mut ord_a: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        let mut ord_b: Vec<usize> = other.elements().map(|a| other.element_order(a)).collect();
        let orders_a = ord_a.clone();
        let orders_b = ord_b.clone();
        ord_a.sort_unstable();
        ord_b.sort_unstable();
        if ord_a != ord_b {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        map[self.identity] = other.identity;
        used[other.identity] = true;
        let order: Vec<usize> = self.elements().filter(|&a| a != self.identity).collect();
        fn go(
            g: &FinGroup,
            h: &FinGroup,
            order: &[usize],
            k: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            oa: &[usize],
            ob: &[usize],
        ) -> bool {
            if k == order.len() {
                return true;
            }
            let a = order[k];
            for b in h.elements() {
                if used[b] || oa[a] != ob[b] {
                    continue;
                }
                map[a] = b;
                used[b] = true;
                let consistent = g.elements().all(|x| {
                    let mx = map[x];
                    if mx == usize::MAX {
                        return true;
                    }
                    g.elements().all(|y| {
                        let (my, mxy) = (map[y], map[g.mul(x, y)]);
                        my == usize::MAX || mxy == usize::MAX || h.mul(mx, my) == mxy
                    })
                });
                if consistent && go(g, h, order, k + 1, map, used, oa, ob) {
                    return true;
                }
                map[a] = usize::MAX;
                used[b] = false;
            }
            false
        }
        if go(
            self, other, &order, 0, &mut map, &mut used, &orders_a, &orders_b,
        ) {
            Some(map)
        } else {
            None
        }
    }

    pub fn is_isomorphic(&self, other: &FinGroup) -> bool {
        self.isomorphism_to(other).is_some()
    }
}

impl PartialEq for FinGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FinGroup {}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup(order {}, {:?})", self.order(), self.table)
    }
}

/// All permutations of `0..k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    let mut used = vec![false; k];
    fn go(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    go(k, &mut cur, &mut used, &mut out);
    out
}

/// A left action of a finite group on `0..size`; `act[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    group: Arc<FinGroup>,
    act: Vec<Vec<usize>>,
}

impl GSet {
    pub fn new(group: Arc<FinGroup>, act: Vec<Vec<usize>>) -> Result<Self> {
        if act.len() != group.order() {
            return Err(Error::InvalidGroup(
                "one permutation per group element required".into(),
            ));
        }
        let size = act.first().map_or(0, Vec::len);
        if act
            .iter()
            .any(|p| p.len() != size || p.iter().any(|&x| x >= size))
        {
            return Err(Error::InvalidGroup("action entries out of range".into()));
        }
        if act[group.identity()]
            .iter()
            .enumerate()
            .any(|(i, &x)| i != x)
        {
            return Err(Error::InvalidGroup(
                "identity does not act trivially".into(),
            ));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if (0..size).any(|x| act[gh][x] != act[g][act[h][x]]) {
                    return Err(Error::InvalidGroup(format!(
                        "action does not respect the product of {g} and {h}"
                    )));
                }
            }
        }
        Ok(GSet { group, act })
    }

    /// The trivial action on `n` points.
    pub fn trivial(group: Arc<FinGroup>, n: usize) -> Self {
        let act = vec![(0..n).collect(); group.order()];
        GSet { group, act }
    }

    /// Left multiplication on the group itself.
    pub fn regular(group: Arc<FinGroup>) -> Self {
        let act = group
            .elements()
            .map(|g| group.elements().map(|x| group.mul(g, x)).collect())
            .collect();
        GSet { group, act }
    }

    /// Left multiplication on the left cosets of a subgroup, given as a
    /// sorted element list. Cosets are numbered by their least element.
    pub fn cosets(group: Arc<FinGroup>, subgroup: &[usize]) -> Self {
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for g in group.elements() {
            if coset_of[g] == usize::MAX {
                for &h in subgroup {
                    coset_of[group.mul(g, h)] = reps.len();
                }
                reps.push(g);
            }
        }
        let act = group
            .elements()
            .map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect())
            .collect();
        GSet { group, act }
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.act.first().map_or(0, Vec::len)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g][x]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// Disjoint union; points of `self` first.
    pub fn sum(&self, other: &GSet) -> GSet {
        let n = self.size();
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(p, q)| p.iter().copied().chain(q.iter().map(|&x| x + n)).collect())
            .collect();
        GSet {
            group: self.group.clone(),
            act,
        }
    }

    /// Orbits as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = crate::unionfind::UnionFind::new(self.size());
        for p in &self.act {
            for (x, &y) in p.iter().enumerate() {
                uf.union(x, y);
            }
        }
        uf.blocks().0
    }

    /// Sorted list of stabiliser sizes per orbit, a cheap isomorphism invariant.
    pub fn orbit_type(&self) -> Vec<(usize, Vec<usize>)> {
        let mut t: Vec<(usize, Vec<usize>)> = self
            .orbits()
            .iter()
            .map(|o| {
                let x = o[0];
                let stab: Vec<usize> = self
                    .group
                    .elements()
                    .filter(|&g| self.act[g][x] == x)
                    .collect();
                (o.len(), stab)
            })
            .collect();
        t.sort();
        t
    }

    fn equivariant_search(
        &self,
        other: &GSet,
        bijective: bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) {
        let n = self.size();
        let mut map = vec![usize::MAX; n];
        let orbits = self.orbits();
        // an equivariant map is determined by the image of one point per orbit
        fn go(
            s: &GSet,
            t: &GSet,
            orbits: &[Vec<usize>],
            k: usize,
            map: &mut Vec<usize>,
            bijective: bool,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            if k == orbits.len() {
                if bijective {
                    let mut seen = vec![false; t.size()];
                    for &y in map.iter() {
                        if seen[y] {
                            return true;
                        }
                        seen[y] = true;
                    }
                    if seen.iter().any(|b| !b) {
                        return true;
                    }
                }
                return visit(map);
            }
            let x = orbits[k][0];
            for y in 0..t.size() {
                let mut ok = true;
                for g in s.group.elements() {
                    let gx = s.act[g][x];
                    let gy = t.act[g][y];
                    if map[gx] != usize::MAX && map[gx] != gy {
                        ok = false;
                        break;
                    }
                    map[gx] = gy;
                }
                if ok && !go(s, t, orbits, k + 1, map, bijective, visit) {
                    return false;
                }
                for &z in &orbits[k] {
                    map[z] = usize::MAX;
                }
            }
            true
        }
        go(self, other, &orbits, 0, &mut map, bijective, visit);
    }

    /// All equivariant maps `self → other`, in lexicographic order of the
    /// images of orbit representatives.
    pub fn equivariant_maps(&self, other: &GSet) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.equivariant_search(other, false, &mut |m| {
            out.push(m.to_vec());
            true
        });
        out
    }

    /// First equivariant bijection `self → other`, if any.
    pub fn isomorphism_to(&self, other: &GSet) -> Option<Vec<usize>> {
        if self.size() != other.size() || self.group.order() != other.group.order() {
            return None;
        }
        let strip = |t: Vec<(usize, Vec<usize>)>| {
            t.into_iter().map(|(l, s)| (l, s.len())).collect::<Vec<_>>()
        };
        if strip(self.orbit_type()) != strip(other.orbit_type()) {
            return None;
        }
        let mut found = None;
        self.equivariant_search(other, true, &mut |m| {
            found = Some(m.to_vec());
            false
        });
        found
    }
}

/// One representative per isomorphism class of `G`-sets on at most `n` points,
/// ordered by size and then by generation order.
pub fn gsets_up_to_iso(group: &Arc<FinGroup>, n: usize) -> Vec<GSet> {
    // transitive G-sets are coset actions; collect them up to isomorphism
    let subgroups = subgroups(group);
    let mut transitive: Vec<GSet> = Vec::new();
    for h in &subgroups {
        let x = GSet::cosets(group.clone(), h);
        if x.size() <= n && !transitive.iter().any(|t| t.isomorphism_to(&x).is_some()) {
            transitive.push(x);
        }
    }
    transitive.sort_by_key(GSet::size);
    // every G-set is a sum of transitive ones: enumerate multisets by size
    let mut out = Vec::new();
    fn go(
        transitive: &[GSet],
        start: usize,
        budget: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        for i in start..transitive.len() {
            if transitive[i].size() <= budget {
                cur.push(i);
                go(transitive, i, budget - transitive[i].size(), cur, out);
                cur.pop();
            }
        }
    }
    let mut combos = Vec::new();
    go(&transitive, 0, n, &mut Vec::new(), &mut combos);
    for combo in combos {
        let mut x = GSet::trivial(group.clone(), 0);
        for i in combo {
            x = x.sum(&transitive[i]);
        }
        out.push(x);
    }
    out.sort_by_key(GSet::size);
    out
}

/// All subgroups as sorted element lists.
pub fn subgroups(group: &FinGroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let close = |gens: &[usize]| {
        let mut set = vec![false; n];
        set[group.identity()] = true;
        let mut frontier = vec![group.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = group.mul(x, g);
                if !set[y] {
                    set[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..n).filter(|&i| set[i]).collect::<Vec<usize>>()
    };
    let mut queue = vec![close(&[])];
    while let Some(h) = queue.pop() {
        if out.contains(&h) {
            continue;
        }
        for g in group.elements() {
            if !h.contains(&g) {
                let mut gens = h.clone();
                gens.push(g);
                queue.push(close(&gens));
            }
        }
        out.push(h);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups() {
        assert_eq!(FinGroup::symmetric3().order(), 6);
        assert!(!FinGroup::symmetric3().is_abelian());
        assert!(FinGroup::klein().is_abelian());
        assert!(!FinGroup::klein().is_isomorphic(&FinGroup::cyclic(4)));
        assert!(
            FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(3))
                .is_isomorphic(&FinGroup::cyclic(6))
        );
        assert_eq!(FinGroup::small_groups(6).len(), 8);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(subgroups(&FinGroup::symmetric3()).len(), 6);
        assert_eq!(subgroups(&FinGroup::klein()).len(), 5);
        assert_eq!(subgroups(&FinGroup::cyclic(3)).len(), 2);
    }

    #[test]
    fn gsets_of_z2_up_to_three_points() {
        // sums of trivial (1 point) and regular (2 points) orbits with total ≤ 3:
        // 0, 1, 2=1+1, 2=reg, 3=1+1+1, 3=1+reg
        let g = Arc::new(FinGroup::cyclic(2));
        assert_eq!(gsets_up_to_iso(&g, 3).len(), 6);
    }

    #[test]
    fn regular_action_isomorphisms() {
        let g = Arc::new(FinGroup::cyclic(2));
        let r = GSet::regular(g.clone());
        assert!(r.isomorphism_to(&r).is_some());
        assert!(r.isomorphism_to(&GSet::trivial(g, 2)).is_none());
        assert_eq!(r.equivariant_maps(&r).len(), 2);
    }
}
