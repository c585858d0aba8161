//! Set-valued algebras over a finitely-supported multicategory and their
//! morphisms.

use std::fmt;
use std::ops::ControlFlow;

use super::{radix_count, radix_decode, radix_index, same_multicat, MultiFunctor, Multicat, OpId};
use crate::error::{Error, Result};

/// A finite set per colour and, per operation `f: (c_0..c_{k-1}) → c`, a
/// function `A(c_0)×…×A(c_{k-1}) → A(c)` stored as a mixed-radix table.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiAlgebra {
    multicat: Multicat,
    sizes: Vec<usize>,
    tables: Vec<Vec<usize>>,
}

impl MultiAlgebra {
    pub fn from_parts(multicat: Multicat, sizes: Vec<usize>, tables: Vec<Vec<usize>>) -> Self {
        MultiAlgebra {
            multicat,
            sizes,
            tables,
        }
    }

    pub fn new(multicat: Multicat, sizes: Vec<usize>, tables: Vec<Vec<usize>>) -> Result<Self> {
        let a = MultiAlgebra::from_parts(multicat, sizes, tables);
        a.validate()?;
        Ok(a)
    }

    /// Singletons everywhere.
    pub fn terminal(multicat: Multicat) -> Self {
        let sizes = vec![1; multicat.num_colours()];
        let tables = multicat.op_ids().map(|_| vec![0]).collect();
        MultiAlgebra {
            multicat,
            sizes,
            tables,
        }
    }

    /// The empty algebra; only valid when no operation is nullary.
    pub fn empty(multicat: Multicat) -> Result<Self> {
        let sizes = vec![0; multicat.num_colours()];
        let tables = multicat
            .op_ids()
            .map(|f| vec![0; radix_count(&vec![0; multicat.arity(f)])])
            .collect();
        MultiAlgebra::new(multicat, sizes, tables)
    }

    pub fn multicat(&self) -> &Multicat {
        &self.multicat
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn total_size(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn table(&self, f: OpId) -> &[usize] {
        &self.tables[f]
    }

    pub fn tables(&self) -> &[Vec<usize>] {
        &self.tables
    }

    pub fn source_sizes(&self, f: OpId) -> Vec<usize> {
        self.multicat
            .sources(f)
            .iter()
            .map(|&c| self.sizes[c])
            .collect()
    }

    pub fn eval(&self, f: OpId, xs: &[usize]) -> usize {
        self.tables[f][radix_index(&self.source_sizes(f), xs)]
    }

    pub fn validate(&self) -> Result<()> {
        let m = &self.multicat;
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        if self.sizes.len() != m.num_colours() || self.tables.len() != m.num_ops() {
            return bad("one carrier per colour and one table per operation required".into());
        }
        for f in m.op_ids() {
            let n = radix_count(&self.source_sizes(f));
            if self.tables[f].len() != n {
                return bad(format!(
                    "table of {} has {} entries, expected {n}",
                    m.op(f).name,
                    self.tables[f].len()
                ));
            }
            if self.tables[f].iter().any(|&y| y >= self.sizes[m.target(f)]) {
                return bad(format!(
                    "table of {} leaves its target carrier",
                    m.op(f).name
                ));
            }
        }
        for c in m.colours() {
            if self.tables[m.unit(c)]
                .iter()
                .enumerate()
                .any(|(i, &y)| i != y)
            {
                return bad(format!(
                    "unit of {} does not act as the identity",
                    m.colour_name(c)
                ));
            }
        }
        for f in m.op_ids() {
            if let Some(msg) = self.check_op(f, &|_| true) {
                return bad(msg);
            }
        }
        Ok(())
    }

    /// First equation involving `f` as outer operation that fails, among
    /// those whose operations all satisfy `ready`.
    fn check_op(&self, f: OpId, ready: &dyn Fn(OpId) -> bool) -> Option<String> {
        let m = &self.multicat;
        let k = m.arity(f);
        for j in 0..k.saturating_sub(1) {
            let s = m.swap(f, j);
            if !ready(s) {
                continue;
            }
            let sizes = self.source_sizes(s);
            for idx in 0..radix_count(&sizes) {
                let xs = radix_decode(&sizes, idx);
                let mut ys = xs.clone();
                ys.swap(j, j + 1);
                if self.tables[s][idx] != self.eval(f, &ys) {
                    return Some(format!("swap {j} of {} is not respected", m.op(f).name));
                }
            }
        }
        for i in 0..k {
            for g in m.ops_into(m.sources(f)[i]) {
                let r = m.comp_at(f, i, g);
                if !(ready(g) && ready(r)) {
                    continue;
                }
                let mg = m.arity(g);
                let sizes = self.source_sizes(r);
                for idx in 0..radix_count(&sizes) {
                    let xs = radix_decode(&sizes, idx);
                    let inner = self.eval(g, &xs[i..i + mg]);
                    let mut outer = xs[..i].to_vec();
                    outer.push(inner);
                    outer.extend(&xs[i + mg..]);
                    if self.tables[r][idx] != self.eval(f, &outer) {
                        return Some(format!(
                            "{} ∘_{i} {} is not respected",
                            m.op(f).name,
                            m.op(g).name
                        ));
                    }
                }
            }
        }
        None
    }

    /// Pointwise product; `(x, y)` is `x·|Y(c)| + y`.
    pub fn product(&self, other: &MultiAlgebra) -> Result<MultiAlgebra> {
        self.check_same_base(other)?;
        let m = &self.multicat;
        let sizes: Vec<usize> = self
            .sizes
            .iter()
            .zip(&other.sizes)
            .map(|(a, b)| a * b)
            .collect();
        let tables = m
            .op_ids()
            .map(|f| {
                let src: Vec<usize> = m.sources(f).iter().map(|&c| sizes[c]).collect();
                let ob = other.sizes[m.target(f)];
                (0..radix_count(&src))
                    .map(|idx| {
                        let pairs = radix_decode(&src, idx);
                        let xs: Vec<usize> = pairs
                            .iter()
                            .zip(m.sources(f))
                            .map(|(&p, &c)| p / other.sizes[c])
                            .collect();
                        let ys: Vec<usize> = pairs
                            .iter()
                            .zip(m.sources(f))
                            .map(|(&p, &c)| p % other.sizes[c])
                            .collect();
                        self.eval(f, &xs) * ob + other.eval(f, &ys)
                    })
                    .collect()
            })
            .collect();
        Ok(MultiAlgebra::from_parts(m.clone(), sizes, tables))
    }

    /// `F*Y` for `F: O → P` and `Y` over `P`.
    pub fn restrict(&self, f: &MultiFunctor) -> Result<MultiAlgebra> {
        if !same_multicat(f.cod(), &self.multicat) {
            return Err(Error::BaseMismatch(
                "algebra is not over the codomain".into(),
            ));
        }
        let o = f.dom();
        let sizes = o.colours().map(|c| self.sizes[f.colour(c)]).collect();
        let tables = o.op_ids().map(|g| self.tables[f.op(g)].clone()).collect();
        Ok(MultiAlgebra::from_parts(o.clone(), sizes, tables))
    }

    pub fn rebased(&self, multicat: Multicat) -> MultiAlgebra {
        MultiAlgebra::from_parts(multicat, self.sizes.clone(), self.tables.clone())
    }

    pub fn check_same_base(&self, other: &MultiAlgebra) -> Result<()> {
        if same_multicat(&self.multicat, &other.multicat) {
            Ok(())
        } else {
            Err(Error::BaseMismatch(
                "algebras over different multicategories".into(),
            ))
        }
    }
}

impl fmt::Debug for MultiAlgebra {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "Algebra{{sizes: {:?}, tables: {:?}}}",
            self.sizes, self.tables
        )
    }
}

/// Enumerates algebras with the given carriers, table by table in operation
/// order, pruning on every equation whose operations are already fixed.
pub fn for_each_algebra(
    multicat: &Multicat,
    sizes: &[usize],
    budget: usize,
    mut visit: impl FnMut(&MultiAlgebra) -> ControlFlow<()>,
) -> Result<()> {
    let m = multicat;
    let mut alg = MultiAlgebra::from_parts(
        m.clone(),
        sizes.to_vec(),
        m.op_ids()
            .map(|f| {
                vec![0; radix_count(&m.sources(f).iter().map(|&c| sizes[c]).collect::<Vec<_>>())]
            })
            .collect(),
    );
    for c in m.colours() {
        alg.tables[m.unit(c)] = (0..sizes[c]).collect();
    }
    let order: Vec<OpId> = m.op_ids().filter(|&f| !m.is_unit(f)).collect();
    let mut assigned = vec![false; m.num_ops()];
    for c in m.colours() {
        assigned[m.unit(c)] = true;
    }
    let mut spent = 0usize;
    fn go(
        alg: &mut MultiAlgebra,
        order: &[OpId],
        pos: usize,
        assigned: &mut Vec<bool>,
        spent: &mut usize,
        budget: usize,
        visit: &mut dyn FnMut(&MultiAlgebra) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if pos == order.len() {
            return Ok(visit(alg));
        }
        let f = order[pos];
        let m = alg.multicat.clone();
        let n = alg.tables[f].len();
        let t = alg.sizes[m.target(f)];
        if n > 0 && t == 0 {
            return Ok(ControlFlow::Continue(()));
        }
        let total = if n == 0 {
            1
        } else {
            t.checked_pow(n as u32).unwrap_or(usize::MAX)
        };
        assigned[f] = true;
        for code in 0..total {
            *spent += 1;
            if *spent > budget {
                return Err(Error::Budget(budget));
            }
            let mut c = code;
            for e in alg.tables[f].iter_mut() {
                *e = c % t;
                c /= t;
            }
            let ok = {
                let ready = |g: OpId| assigned[g];
                order[..=pos]
                    .iter()
                    .chain(m.units().iter())
                    .all(|&g| alg.check_op(g, &ready).is_none())
            };
            if ok && go(alg, order, pos + 1, assigned, spent, budget, visit)?.is_break() {
                assigned[f] = false;
                return Ok(ControlFlow::Break(()));
            }
        }
        assigned[f] = false;
        Ok(ControlFlow::Continue(()))
    }
    let _ = go(
        &mut alg,
        &order,
        0,
        &mut assigned,
        &mut spent,
        budget,
        &mut visit,
    )?;
    Ok(())
}

/// Component maps `X(c) → Y(c)` commuting with every operation.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    dom: MultiAlgebra,
    cod: MultiAlgebra,
    components: Vec<Vec<usize>>,
}

impl AlgebraMorphism {
    pub fn from_parts(dom: MultiAlgebra, cod: MultiAlgebra, components: Vec<Vec<usize>>) -> Self {
        AlgebraMorphism {
            dom,
            cod,
            components,
        }
    }

    pub fn new(dom: MultiAlgebra, cod: MultiAlgebra, components: Vec<Vec<usize>>) -> Result<Self> {
        let h = AlgebraMorphism::from_parts(dom, cod, components);
        h.validate()?;
        Ok(h)
    }

    pub fn identity(x: &MultiAlgebra) -> Self {
        let components = x.sizes.iter().map(|&n| (0..n).collect()).collect();
        AlgebraMorphism::from_parts(x.clone(), x.clone(), components)
    }

    pub fn dom(&self) -> &MultiAlgebra {
        &self.dom
    }

    pub fn cod(&self) -> &MultiAlgebra {
        &self.cod
    }

    pub fn component(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn apply(&self, c: usize, x: usize) -> usize {
        self.components[c][x]
    }

    pub fn validate(&self) -> Result<()> {
        self.dom.check_same_base(&self.cod)?;
        let m = self.dom.multicat.clone();
        let bad = |msg: String| Err(Error::InvalidAlgebra(msg));
        if self.components.len() != m.num_colours() {
            return bad("one component per colour required".into());
        }
        for c in m.colours() {
            if self.components[c].len() != self.dom.sizes[c]
                || self.components[c].iter().any(|&y| y >= self.cod.sizes[c])
            {
                return bad(format!(
                    "component at {} has the wrong shape",
                    m.colour_name(c)
                ));
            }
        }
        for f in m.op_ids() {
            if !self.commutes_with(f) {
                return bad(format!("does not commute with {}", m.op(f).name));
            }
        }
        Ok(())
    }

    fn commutes_with(&self, f: OpId) -> bool {
        let m = &self.dom.multicat;
        let sizes = self.dom.source_sizes(f);
        (0..radix_count(&sizes)).all(|idx| {
            let xs = radix_decode(&sizes, idx);
            let ys: Vec<usize> = xs
                .iter()
                .zip(m.sources(f))
                .map(|(&x, &c)| self.components[c][x])
                .collect();
            self.components[m.target(f)][self.dom.tables[f][idx]] == self.cod.eval(f, &ys)
        })
    }

    /// `self ∘ first`
    pub fn after(&self, first: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if first.cod != self.dom {
            return Err(Error::CodomainMismatch(
                "algebra morphisms are not composable".into(),
            ));
        }
        let components = first
            .components
            .iter()
            .zip(&self.components)
            .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
            .collect();
        Ok(AlgebraMorphism::from_parts(
            first.dom.clone(),
            self.cod.clone(),
            components,
        ))
    }

    pub fn is_iso(&self) -> bool {
        self.inverse().is_some()
    }

    pub fn inverse(&self) -> Option<AlgebraMorphism> {
        let mut inv = Vec::with_capacity(self.components.len());
        for (c, comp) in self.components.iter().enumerate() {
            if comp.len() != self.cod.sizes[c] {
                return None;
            }
            let mut back = vec![usize::MAX; comp.len()];
            for (x, &y) in comp.iter().enumerate() {
                if back[y] != usize::MAX {
                    return None;
                }
                back[y] = x;
            }
            inv.push(back);
        }
        Some(AlgebraMorphism::from_parts(
            self.cod.clone(),
            self.dom.clone(),
            inv,
        ))
    }

    /// Enumerates morphisms `x → y` (bijective ones only if asked), colour
    /// by colour, checking each operation once its colours are fixed.
    pub fn for_each(
        x: &MultiAlgebra,
        y: &MultiAlgebra,
        bijective: bool,
        budget: usize,
        mut visit: impl FnMut(&AlgebraMorphism) -> ControlFlow<()>,
    ) -> Result<()> {
        x.check_same_base(y)?;
        let m = x.multicat.clone();
        if bijective && x.sizes != y.sizes {
            return Ok(());
        }
        let nc = m.num_colours();
        // operations become checkable once all their colours are assigned
        let mut ready_at: Vec<Vec<OpId>> = vec![Vec::new(); nc];
        for f in m.op_ids() {
            let last = m
                .sources(f)
                .iter()
                .copied()
                .chain([m.target(f)])
                .max()
                .unwrap();
            ready_at[last].push(f);
        }
        let mut h = AlgebraMorphism::from_parts(
            x.clone(),
            y.clone(),
            x.sizes.iter().map(|&n| vec![0; n]).collect(),
        );
        let mut spent = 0usize;
        #[allow(clippy::too_many_arguments)]
        fn go(
            h: &mut AlgebraMorphism,
            c: usize,
            e: usize,
            used: &mut Vec<bool>,
            ready_at: &[Vec<OpId>],
            bijective: bool,
            spent: &mut usize,
            budget: usize,
            visit: &mut dyn FnMut(&AlgebraMorphism) -> ControlFlow<()>,
        ) -> Result<ControlFlow<()>> {
            let nc = h.components.len();
            if c == nc {
                return Ok(visit(h));
            }
            if e == h.dom.sizes[c] {
                if !ready_at[c].iter().all(|&f| h.commutes_with(f)) {
                    return Ok(ControlFlow::Continue(()));
                }
                let mut fresh = vec![false; if c + 1 < nc { h.cod.sizes[c + 1] } else { 0 }];
                return go(
                    h,
                    c + 1,
                    0,
                    &mut fresh,
                    ready_at,
                    bijective,
                    spent,
                    budget,
                    visit,
                );
            }
            for t in 0..h.cod.sizes[c] {
                if bijective && used[t] {
                    continue;
                }
                *spent += 1;
                if *spent > budget {
                    return Err(Error::Budget(budget));
                }
                h.components[c][e] = t;
                if bijective {
                    used[t] = true;
                }
                let r = go(h, c, e + 1, used, ready_at, bijective, spent, budget, visit)?;
                if bijective {
                    used[t] = false;
                }
                if r.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            }
            Ok(ControlFlow::Continue(()))
        }
        if nc == 0 {
            let _ = visit(&h);
            return Ok(());
        }
        let mut used = vec![false; y.sizes[0]];
        let _ = go(
            &mut h, 0, 0, &mut used, &ready_at, bijective, &mut spent, budget, &mut visit,
        )?;
        Ok(())
    }

    pub fn all(x: &MultiAlgebra, y: &MultiAlgebra, budget: usize) -> Result<Vec<AlgebraMorphism>> {
        let mut out = Vec::new();
        AlgebraMorphism::for_each(x, y, false, budget, |h| {
            out.push(h.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    pub fn find_iso(
        x: &MultiAlgebra,
        y: &MultiAlgebra,
        budget: usize,
    ) -> Result<Option<AlgebraMorphism>> {
        let mut found = None;
        AlgebraMorphism::for_each(x, y, true, budget, |h| {
            found = Some(h.clone());
            ControlFlow::Break(())
        })?;
        Ok(found)
    }
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(fm, "AlgebraMorphism{:?}", self.components)
    }
}
