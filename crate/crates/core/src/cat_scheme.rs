//! The copresheaf and presheaf comprehension schemes on finite categories:
//! categories of elements, pointwise left Kan extension, restriction, and
//! the predicates they induce (discrete (op)fibrations, initial and final
//! functors).

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::category::{Cat, FinCategory, MorId, ObjId};
use crate::colimit::colimit_set_diagram;
use crate::diagram::{
    diagram_iso, for_each_nat, nat_transformations, NatTrans, SetDiagram, Variance,
};
use crate::error::{Error, Result};
use crate::functor::{for_each_functor, same_cat, Constraints, Functor};
use crate::scheme::Scheme;
use crate::unionfind::UnionFind;

/// The category of elements of a diagram with its projection to the base.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    pub category: Cat,
    pub projection: Functor,
    pub variance: Variance,
    offsets: Vec<usize>,
    /// morphism over `φ` anchored at an object: its source (covariant) or
    /// its target (contravariant); indexed `anchor * |mor B| + φ`
    index: Vec<Option<MorId>>,
    base_morphisms: usize,
}

impl ElementsCategory {
    /// Object id of `(b, x)`.
    pub fn obj(&self, b: ObjId, x: usize) -> ObjId {
        self.offsets[b] + x
    }

    /// The pair `(b, x)` an object stands for.
    pub fn element(&self, e: ObjId) -> (ObjId, usize) {
        let b = self.offsets.partition_point(|&o| o <= e) - 1;
        (b, e - self.offsets[b])
    }

    /// The morphism `src → tgt` lying over `φ`, if there is one.
    pub fn mor_over(&self, src: ObjId, tgt: ObjId, phi: MorId) -> Option<MorId> {
        let anchor = match self.variance {
            Variance::Covariant => src,
            Variance::Contravariant => tgt,
        };
        let m = self.index[anchor * self.base_morphisms + phi]?;
        let c = &self.category;
        (c.src(m) == src && c.tgt(m) == tgt).then_some(m)
    }
}

/// `∫X` for a covariant diagram: objects `(b, x)` in lexicographic order,
/// morphisms `φ: (b, x) → (b', X(φ)x)` ordered by source then `φ`.
pub fn elements_cov(x: &SetDiagram) -> Result<ElementsCategory> {
    if x.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch);
    }
    let b = x.base();
    let mb = b.num_morphisms();
    let mut offsets = vec![0];
    for o in b.objects() {
        offsets.push(offsets[o] + x.size(o));
    }
    let n = offsets[b.num_objects()];
    let mut obj_names = Vec::with_capacity(n);
    let mut obj_base = Vec::with_capacity(n);
    for o in b.objects() {
        for e in 0..x.size(o) {
            obj_names.push(format!("({},{})", b.obj_name(o), x.element_name(o, e)));
            obj_base.push(o);
        }
    }
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut over = Vec::new();
    let mut index = vec![None; n * mb];
    for e in 0..n {
        let o = obj_base[e];
        let xe = e - offsets[o];
        for phi in b.out_of(o) {
            index[e * mb + phi] = Some(src.len());
            src.push(e);
            tgt.push(offsets[b.tgt(phi)] + x.act(phi, xe));
            over.push(phi);
        }
    }
    let m = src.len();
    let mut compose = vec![None; m * m];
    for k1 in 0..m {
        for k2 in 0..m {
            if tgt[k1] == src[k2] {
                compose[k2 * m + k1] = index[src[k1] * mb + b.comp(over[k2], over[k1])];
            }
        }
    }
    let identity = (0..n)
        .map(|e| index[e * mb + b.id(obj_base[e])].unwrap())
        .collect();
    let mor_names = (0..m)
        .map(|k| format!("{}@{}", b.mor_name(over[k]), obj_names[src[k]]))
        .collect();
    let cat: Cat = Arc::new(FinCategory::from_parts(
        obj_names, mor_names, src, tgt, identity, compose,
    ));
    let projection = Functor::from_parts(cat.clone(), b.clone(), obj_base, over);
    Ok(ElementsCategory {
        category: cat,
        projection,
        variance: Variance::Covariant,
        offsets,
        index,
        base_morphisms: mb,
    })
}

/// Elements of a contravariant diagram, obtained by dualising twice: the
/// opposite of the covariant elements of the dual diagram.
pub fn elements_con(x: &SetDiagram) -> Result<ElementsCategory> {
    if x.variance() != Variance::Contravariant {
        return Err(Error::VarianceMismatch);
    }
    let dual = elements_cov(&x.dualise())?;
    let cat: Cat = Arc::new(dual.category.opposite());
    let projection = Functor::from_parts(
        cat.clone(),
        x.base().clone(),
        dual.projection.obj_map().to_vec(),
        dual.projection.mor_map().to_vec(),
    );
    Ok(ElementsCategory {
        category: cat,
        projection,
        variance: Variance::Contravariant,
        offsets: dual.offsets,
        index: dual.index,
        base_morphisms: dual.base_morphisms,
    })
}

pub fn elements(x: &SetDiagram) -> Result<ElementsCategory> {
    match x.variance() {
        Variance::Covariant => elements_cov(x),
        Variance::Contravariant => elements_con(x),
    }
}

/// The value of a left Kan extension at one object `b`: the colimit over
/// `f ↓ b` of `X`, whose elements are classes of triples `(a, φ: fa → b, x)`.
#[derive(Clone, Debug)]
pub struct KanFibre {
    pair_index: HashMap<(ObjId, MorId), usize>,
    class_of: Vec<usize>,
    /// least triple of each class
    pub reps: Vec<(ObjId, MorId, usize)>,
}

impl KanFibre {
    pub fn class(&self, a: ObjId, phi: MorId, x: usize) -> usize {
        self.class_of[self.pair_index[&(a, phi)] + x]
    }
}

#[derive(Clone, Debug)]
pub struct KanExtension {
    pub diagram: SetDiagram,
    pub fibres: Vec<KanFibre>,
}

impl KanExtension {
    pub fn class(&self, b: ObjId, a: ObjId, phi: MorId, x: usize) -> usize {
        self.fibres[b].class(a, phi, x)
    }
}

/// Pointwise left Kan extension `f_! X` of a covariant diagram. Elements at
/// `b` are numbered by their least representative triple `(a, φ, x)`.
pub fn left_kan(f: &Functor, x: &SetDiagram) -> Result<KanExtension> {
    if x.variance() != Variance::Covariant {
        return Err(Error::VarianceMismatch);
    }
    if !same_cat(f.dom(), x.base()) {
        return Err(Error::BaseMismatch(
            "diagram is not on the domain of the functor".into(),
        ));
    }
    let (a_cat, b_cat) = (f.dom(), f.cod());
    let mut fibres = Vec::with_capacity(b_cat.num_objects());
    for b in b_cat.objects() {
        let mut pair_index = HashMap::new();
        let mut triples = Vec::new();
        for a in a_cat.objects() {
            for &phi in b_cat.hom(f.obj(a), b) {
                pair_index.insert((a, phi), triples.len());
                for e in 0..x.size(a) {
                    triples.push((a, phi, e));
                }
            }
        }
        let mut uf = UnionFind::new(triples.len());
        for u in a_cat.morphisms() {
            let (a, a2) = (a_cat.src(u), a_cat.tgt(u));
            for &phi2 in b_cat.hom(f.obj(a2), b) {
                let phi = b_cat.comp(phi2, f.mor(u));
                let (i, j) = (pair_index[&(a, phi)], pair_index[&(a2, phi2)]);
                for e in 0..x.size(a) {
                    uf.union(i + e, j + x.act(u, e));
                }
            }
        }
        let (blocks, class_of) = uf.blocks();
        fibres.push(KanFibre {
            pair_index,
            class_of,
            reps: blocks.iter().map(|bl| triples[bl[0]]).collect(),
        });
    }
    let sizes = fibres.iter().map(|fb| fb.reps.len()).collect();
    let action = b_cat
        .morphisms()
        .map(|beta| {
            let (b, b2) = (b_cat.src(beta), b_cat.tgt(beta));
            fibres[b]
                .reps
                .iter()
                .map(|&(a, phi, e)| fibres[b2].class(a, b_cat.comp(beta, phi), e))
                .collect()
        })
        .collect();
    Ok(KanExtension {
        diagram: SetDiagram::from_parts(b_cat.clone(), Variance::Covariant, sizes, action),
        fibres,
    })
}

/// `f* Y`
pub fn restrict(f: &Functor, y: &SetDiagram) -> Result<SetDiagram> {
    y.restrict(f)
}

/// Every object `e` and morphism `φ: p(e) → b` admit exactly one morphism
/// out of `e` over `φ`.
pub fn is_discrete_opfibration(p: &Functor) -> bool {
    let (e_cat, b_cat) = (p.dom(), p.cod());
    let mb = b_cat.num_morphisms();
    let mut count = vec![0u32; e_cat.num_objects() * mb];
    for m in e_cat.morphisms() {
        count[e_cat.src(m) * mb + p.mor(m)] += 1;
    }
    e_cat
        .objects()
        .all(|e| b_cat.out_of(p.obj(e)).all(|phi| count[e * mb + phi] == 1))
}

/// Every object `e` and morphism `φ: b → p(e)` admit exactly one morphism
/// into `e` over `φ`.
pub fn is_discrete_fibration(p: &Functor) -> bool {
    let (e_cat, b_cat) = (p.dom(), p.cod());
    let mb = b_cat.num_morphisms();
    let mut count = vec![0u32; e_cat.num_objects() * mb];
    for m in e_cat.morphisms() {
        count[e_cat.tgt(m) * mb + p.mor(m)] += 1;
    }
    e_cat
        .objects()
        .all(|e| b_cat.into_obj(p.obj(e)).all(|phi| count[e * mb + phi] == 1))
}

/// Number of zigzag components of `f ↓ b` (objects `(a, φ: fa → b)`).
pub fn comma_components_over(f: &Functor, b: ObjId) -> usize {
    let (a_cat, b_cat) = (f.dom(), f.cod());
    let mut index = HashMap::new();
    for a in a_cat.objects() {
        for &phi in b_cat.hom(f.obj(a), b) {
            let k = index.len();
            index.insert((a, phi), k);
        }
    }
    let mut uf = UnionFind::new(index.len());
    for u in a_cat.morphisms() {
        for &phi2 in b_cat.hom(f.obj(a_cat.tgt(u)), b) {
            let phi = b_cat.comp(phi2, f.mor(u));
            uf.union(index[&(a_cat.src(u), phi)], index[&(a_cat.tgt(u), phi2)]);
        }
    }
    uf.blocks().0.len()
}

/// Number of zigzag components of `b ↓ f` (objects `(a, φ: b → fa)`).
pub fn comma_components_under(f: &Functor, b: ObjId) -> usize {
    let (a_cat, b_cat) = (f.dom(), f.cod());
    let mut index = HashMap::new();
    for a in a_cat.objects() {
        for &phi in b_cat.hom(b, f.obj(a)) {
            let k = index.len();
            index.insert((a, phi), k);
        }
    }
    let mut uf = UnionFind::new(index.len());
    for u in a_cat.morphisms() {
        for &phi in b_cat.hom(b, f.obj(a_cat.src(u))) {
            let phi2 = b_cat.comp(f.mor(u), phi);
            uf.union(index[&(a_cat.src(u), phi)], index[&(a_cat.tgt(u), phi2)]);
        }
    }
    uf.blocks().0.len()
}

/// Every comma category `f ↓ b` is non-empty and connected.
pub fn is_initial(f: &Functor) -> bool {
    f.cod().objects().all(|b| comma_components_over(f, b) == 1)
}

/// Every comma category `b ↓ f` is non-empty and connected.
pub fn is_final(f: &Functor) -> bool {
    f.cod().objects().all(|b| comma_components_under(f, b) == 1)
}

/// Natural transformations to and from product diagrams.
fn product_with_projections(
    x: &SetDiagram,
    y: &SetDiagram,
) -> Result<(SetDiagram, NatTrans, NatTrans)> {
    let p = x.product(y)?;
    let c = x.base();
    let mut c1 = Vec::with_capacity(c.num_objects());
    let mut c2 = Vec::with_capacity(c.num_objects());
    for a in c.objects() {
        let ny = y.size(a);
        c1.push((0..x.size(a) * ny).map(|i| i / ny).collect());
        c2.push((0..x.size(a) * ny).map(|i| i % ny).collect());
    }
    Ok((
        p.clone(),
        NatTrans::from_parts(p.clone(), x.clone(), c1),
        NatTrans::from_parts(p, y.clone(), c2),
    ))
}

fn pair_nat(p: &NatTrans, q: &NatTrans) -> Result<NatTrans> {
    if p.dom() != q.dom() {
        return Err(Error::CodomainMismatch(
            "pairing maps with different domains".into(),
        ));
    }
    let target = p.cod().product(q.cod())?;
    let base = p.dom().base();
    let comps = base
        .objects()
        .map(|a| {
            let ny = q.cod().size(a);
            p.component(a)
                .iter()
                .zip(q.component(a))
                .map(|(&x, &y)| x * ny + y)
                .collect()
        })
        .collect();
    Ok(NatTrans::from_parts(p.dom().clone(), target, comps))
}

fn lift_into(el: &ElementsCategory, h: &Functor, point: &NatTrans) -> Result<Functor> {
    let d = h.dom();
    let obj_map: Vec<ObjId> = d
        .objects()
        .map(|o| el.obj(h.obj(o), point.component(o)[0]))
        .collect();
    let mut mor_map = Vec::with_capacity(d.num_morphisms());
    for m in d.morphisms() {
        let k = el
            .mor_over(obj_map[d.src(m)], obj_map[d.tgt(m)], h.mor(m))
            .ok_or_else(|| Error::Precondition("point is not natural".into()))?;
        mor_map.push(k);
    }
    Ok(Functor::from_parts(
        d.clone(),
        el.category.clone(),
        obj_map,
        mor_map,
    ))
}

/// The copresheaf (`Covariant`) or presheaf (`Contravariant`) scheme.
#[derive(Clone, Copy, Debug)]
pub struct DiagramScheme {
    pub variance: Variance,
}

impl DiagramScheme {
    pub const COPRESHEAF: DiagramScheme = DiagramScheme {
        variance: Variance::Covariant,
    };
    pub const PRESHEAF: DiagramScheme = DiagramScheme {
        variance: Variance::Contravariant,
    };

    fn check_variance(&self, x: &SetDiagram) -> Result<()> {
        if x.variance() != self.variance {
            return Err(Error::VarianceMismatch);
        }
        Ok(())
    }

    /// `f_! X` with its colimit bookkeeping, on the covariant side.
    fn kan(&self, f: &Functor, x: &SetDiagram) -> Result<KanExtension> {
        self.check_variance(x)?;
        left_kan(f, x)
    }
}

/// Runs a covariant construction on dualised data and dualises the result
/// back onto the original categories.
struct Dual {
    a_op: Cat,
    b_op: Cat,
    f_op: Functor,
}

impl Dual {
    fn of(f: &Functor) -> Self {
        let a_op: Cat = Arc::new(f.dom().opposite());
        let b_op: Cat = Arc::new(f.cod().opposite());
        Dual {
            f_op: f.opposite_with(a_op.clone(), b_op.clone()),
            a_op,
            b_op,
        }
    }
}

impl Scheme for DiagramScheme {
    type Obj = Cat;
    type Mor = Functor;
    type PObj = SetDiagram;
    type PMor = NatTrans;

    fn name(&self) -> &'static str {
        match self.variance {
            Variance::Covariant => "copresheaf",
            Variance::Contravariant => "presheaf",
        }
    }

    fn dom(&self, f: &Functor) -> Cat {
        f.dom().clone()
    }

    fn cod(&self, f: &Functor) -> Cat {
        f.cod().clone()
    }

    fn identity(&self, a: &Cat) -> Functor {
        Functor::identity(a.clone())
    }

    fn compose(&self, g: &Functor, f: &Functor) -> Result<Functor> {
        g.after(f)
    }

    fn invert(&self, f: &Functor) -> Option<Functor> {
        f.inverse()
    }

    fn obj_eq(&self, a: &Cat, b: &Cat) -> bool {
        same_cat(a, b)
    }

    fn for_each_mor(
        &self,
        a: &Cat,
        b: &Cat,
        over: Option<(&Functor, &Functor)>,
        budget: usize,
        visit: &mut dyn FnMut(&Functor) -> ControlFlow<()>,
    ) -> Result<()> {
        let cons = match over {
            Some((p, q)) => Constraints::over(p, q),
            None => Constraints::none(),
        };
        for_each_functor(a, b, &cons, budget, visit)
    }

    fn base(&self, x: &SetDiagram) -> Cat {
        x.base().clone()
    }

    fn terminal(&self, a: &Cat) -> SetDiagram {
        SetDiagram::terminal(a.clone(), self.variance)
    }

    fn pushforward(&self, f: &Functor, x: &SetDiagram) -> Result<SetDiagram> {
        match self.variance {
            Variance::Covariant => Ok(self.kan(f, x)?.diagram),
            Variance::Contravariant => {
                self.check_variance(x)?;
                let d = Dual::of(f);
                let k = left_kan(&d.f_op, &x.dualise_onto(d.a_op.clone()))?;
                Ok(k.diagram.dualise_onto(f.cod().clone()))
            }
        }
    }

    fn pullback(&self, f: &Functor, y: &SetDiagram) -> Result<SetDiagram> {
        self.check_variance(y)?;
        y.restrict(f)
    }

    fn pushforward_mor(&self, f: &Functor, m: &NatTrans) -> Result<NatTrans> {
        let d;
        let (g, mm) = match self.variance {
            Variance::Covariant => (f, m.clone()),
            Variance::Contravariant => {
                d = Dual::of(f);
                (&d.f_op, m.dualise_onto(d.a_op.clone()))
            }
        };
        let kx = left_kan(g, mm.dom())?;
        let ky = left_kan(g, mm.cod())?;
        let b = g.cod();
        let comps = b
            .objects()
            .map(|o| {
                kx.fibres[o]
                    .reps
                    .iter()
                    .map(|&(a, phi, e)| ky.class(o, a, phi, mm.component(a)[e]))
                    .collect()
            })
            .collect();
        let t = NatTrans::from_parts(kx.diagram, ky.diagram, comps);
        Ok(match self.variance {
            Variance::Covariant => t,
            Variance::Contravariant => t.dualise_onto(f.cod().clone()),
        })
    }

    fn pullback_mor(&self, f: &Functor, m: &NatTrans) -> Result<NatTrans> {
        m.restrict(f)
    }

    fn unit(&self, f: &Functor, x: &SetDiagram) -> Result<NatTrans> {
        self.check_variance(x)?;
        let d;
        let (g, xx) = match self.variance {
            Variance::Covariant => (f, x.clone()),
            Variance::Contravariant => {
                d = Dual::of(f);
                (&d.f_op, x.dualise_onto(d.a_op.clone()))
            }
        };
        let k = left_kan(g, &xx)?;
        let a = g.dom();
        let comps = a
            .objects()
            .map(|o| {
                let b = g.obj(o);
                (0..xx.size(o))
                    .map(|e| k.class(b, o, g.cod().id(b), e))
                    .collect()
            })
            .collect();
        let cod = k.diagram.restrict(g)?;
        let t = NatTrans::from_parts(xx, cod, comps);
        Ok(match self.variance {
            Variance::Covariant => t,
            Variance::Contravariant => t.dualise_onto(f.dom().clone()),
        })
    }

    fn counit(&self, f: &Functor, y: &SetDiagram) -> Result<NatTrans> {
        self.check_variance(y)?;
        let d;
        let (g, yy) = match self.variance {
            Variance::Covariant => (f, y.clone()),
            Variance::Contravariant => {
                d = Dual::of(f);
                (&d.f_op, y.dualise_onto(d.b_op.clone()))
            }
        };
        let fy = yy.restrict(g)?;
        let k = left_kan(g, &fy)?;
        let comps = g
            .cod()
            .objects()
            .map(|o| {
                k.fibres[o]
                    .reps
                    .iter()
                    .map(|&(_, phi, e)| yy.act(phi, e))
                    .collect()
            })
            .collect();
        let t = NatTrans::from_parts(k.diagram, yy, comps);
        Ok(match self.variance {
            Variance::Covariant => t,
            Variance::Contravariant => t.dualise_onto(f.cod().clone()),
        })
    }

    fn elements(&self, x: &SetDiagram) -> Result<Functor> {
        self.check_variance(x)?;
        Ok(elements(x)?.projection)
    }

    fn lift(&self, h: &Functor, x: &SetDiagram, point: &NatTrans) -> Result<Functor> {
        self.check_variance(x)?;
        if !same_cat(h.cod(), x.base()) {
            return Err(Error::BaseMismatch(
                "lift along a functor into another base".into(),
            ));
        }
        if point.cod().sizes()
            != h.dom()
                .objects()
                .map(|o| x.size(h.obj(o)))
                .collect::<Vec<_>>()
                .as_slice()
            || point.dom().sizes().iter().any(|&n| n != 1)
        {
            return Err(Error::Precondition(
                "not a point of the pulled back diagram".into(),
            ));
        }
        lift_into(&elements(x)?, h, point)
    }

    fn unlift(&self, h: &Functor, x: &SetDiagram, g: &Functor) -> Result<NatTrans> {
        self.check_variance(x)?;
        let el = elements(x)?;
        if el.projection.after(g)? != *h {
            return Err(Error::Precondition(
                "morphism does not lie over the base map".into(),
            ));
        }
        let d = h.dom();
        let comps = d.objects().map(|o| vec![el.element(g.obj(o)).1]).collect();
        Ok(NatTrans::from_parts(
            SetDiagram::terminal(d.clone(), self.variance),
            x.restrict(h)?,
            comps,
        ))
    }

    fn pdom(&self, m: &NatTrans) -> SetDiagram {
        m.dom().clone()
    }

    fn pcod(&self, m: &NatTrans) -> SetDiagram {
        m.cod().clone()
    }

    fn pidentity(&self, x: &SetDiagram) -> NatTrans {
        NatTrans::identity(x)
    }

    fn pcompose(&self, g: &NatTrans, f: &NatTrans) -> Result<NatTrans> {
        g.after(f)
    }

    fn pinverse(&self, m: &NatTrans) -> Option<NatTrans> {
        m.inverse()
    }

    fn hom_p(&self, x: &SetDiagram, y: &SetDiagram, budget: usize) -> Result<Vec<NatTrans>> {
        nat_transformations(x, y, budget)
    }

    fn iso_p(&self, x: &SetDiagram, y: &SetDiagram) -> Result<Option<NatTrans>> {
        diagram_iso(x, y)
    }

    fn pmor_eq(&self, a: &NatTrans, b: &NatTrans) -> bool {
        a == b
    }

    fn product(&self, x: &SetDiagram, y: &SetDiagram) -> Result<(SetDiagram, NatTrans, NatTrans)> {
        product_with_projections(x, y)
    }

    fn pair(&self, p: &NatTrans, q: &NatTrans) -> Result<NatTrans> {
        pair_nat(p, q)
    }

    fn points(&self, x: &SetDiagram, budget: usize) -> Result<Vec<NatTrans>> {
        let t = SetDiagram::terminal(x.base().clone(), x.variance());
        let mut out = Vec::new();
        for_each_nat(&t, x, false, budget, |n| {
            out.push(n.clone());
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }
}

/// A deliberately wrong variant of the copresheaf scheme: `f_! X` is the
/// constant diagram at `colim X`. It keeps an adjunction unit but violates
/// the scheme axioms, so every theorem-level check should catch it.
#[derive(Clone, Copy, Debug, Default)]
pub struct BrokenScheme;

impl BrokenScheme {
    const INNER: DiagramScheme = DiagramScheme::COPRESHEAF;
}

impl Scheme for BrokenScheme {
    type Obj = Cat;
    type Mor = Functor;
    type PObj = SetDiagram;
    type PMor = NatTrans;

    fn name(&self) -> &'static str {
        "broken"
    }

    fn dom(&self, f: &Functor) -> Cat {
        Self::INNER.dom(f)
    }

    fn cod(&self, f: &Functor) -> Cat {
        Self::INNER.cod(f)
    }

    fn identity(&self, a: &Cat) -> Functor {
        Self::INNER.identity(a)
    }

    fn compose(&self, g: &Functor, f: &Functor) -> Result<Functor> {
        Self::INNER.compose(g, f)
    }

    fn invert(&self, f: &Functor) -> Option<Functor> {
        Self::INNER.invert(f)
    }

    fn obj_eq(&self, a: &Cat, b: &Cat) -> bool {
        Self::INNER.obj_eq(a, b)
    }

    fn for_each_mor(
        &self,
        a: &Cat,
        b: &Cat,
        over: Option<(&Functor, &Functor)>,
        budget: usize,
        visit: &mut dyn FnMut(&Functor) -> ControlFlow<()>,
    ) -> Result<()> {
        Self::INNER.for_each_mor(a, b, over, budget, visit)
    }

    fn base(&self, x: &SetDiagram) -> Cat {
        Self::INNER.base(x)
    }

    fn terminal(&self, a: &Cat) -> SetDiagram {
        Self::INNER.terminal(a)
    }

    fn pushforward(&self, f: &Functor, x: &SetDiagram) -> Result<SetDiagram> {
        let n = colimit_set_diagram(x)?.size;
        Ok(SetDiagram::constant(
            f.cod().clone(),
            Variance::Covariant,
            n,
        ))
    }

    fn pullback(&self, f: &Functor, y: &SetDiagram) -> Result<SetDiagram> {
        Self::INNER.pullback(f, y)
    }

    fn pushforward_mor(&self, f: &Functor, m: &NatTrans) -> Result<NatTrans> {
        let cx = colimit_set_diagram(m.dom())?;
        let cy = colimit_set_diagram(m.cod())?;
        let map: Vec<usize> = cx
            .reps
            .iter()
            .map(|&(a, e)| cy.cocone[a][m.component(a)[e]])
            .collect();
        let b = f.cod();
        Ok(NatTrans::from_parts(
            SetDiagram::constant(b.clone(), Variance::Covariant, cx.size),
            SetDiagram::constant(b.clone(), Variance::Covariant, cy.size),
            vec![map; b.num_objects()],
        ))
    }

    fn pullback_mor(&self, f: &Functor, m: &NatTrans) -> Result<NatTrans> {
        Self::INNER.pullback_mor(f, m)
    }

    fn unit(&self, f: &Functor, x: &SetDiagram) -> Result<NatTrans> {
        let c = colimit_set_diagram(x)?;
        let pushed = SetDiagram::constant(f.cod().clone(), Variance::Covariant, c.size);
        Ok(NatTrans::from_parts(
            x.clone(),
            pushed.restrict(f)?,
            c.cocone,
        ))
    }

    fn counit(&self, f: &Functor, y: &SetDiagram) -> Result<NatTrans> {
        // only over a one-object, identity-only base is there a canonical map
        // colim(f*Y) → Y
        let b = f.cod();
        if b.num_objects() != 1 || b.num_morphisms() != 1 {
            return Err(Error::Unsupported(
                "no counit for a constant pushforward".into(),
            ));
        }
        let fy = y.restrict(f)?;
        let c = colimit_set_diagram(&fy)?;
        let map = c.reps.iter().map(|&(_, e)| e).collect();
        Ok(NatTrans::from_parts(
            SetDiagram::constant(b.clone(), Variance::Covariant, c.size),
            y.clone(),
            vec![map],
        ))
    }

    fn elements(&self, x: &SetDiagram) -> Result<Functor> {
        Self::INNER.elements(x)
    }

    fn lift(&self, h: &Functor, x: &SetDiagram, point: &NatTrans) -> Result<Functor> {
        Self::INNER.lift(h, x, point)
    }

    fn unlift(&self, h: &Functor, x: &SetDiagram, g: &Functor) -> Result<NatTrans> {
        Self::INNER.unlift(h, x, g)
    }

    fn pdom(&self, m: &NatTrans) -> SetDiagram {
        Self::INNER.pdom(m)
    }

    fn pcod(&self, m: &NatTrans) -> SetDiagram {
        Self::INNER.pcod(m)
    }

    fn pidentity(&self, x: &SetDiagram) -> NatTrans {
        Self::INNER.pidentity(x)
    }

    fn pcompose(&self, g: &NatTrans, f: &NatTrans) -> Result<NatTrans> {
        Self::INNER.pcompose(g, f)
    }

    fn pinverse(&self, m: &NatTrans) -> Option<NatTrans> {
        Self::INNER.pinverse(m)
    }

    fn hom_p(&self, x: &SetDiagram, y: &SetDiagram, budget: usize) -> Result<Vec<NatTrans>> {
        Self::INNER.hom_p(x, y, budget)
    }

    fn iso_p(&self, x: &SetDiagram, y: &SetDiagram) -> Result<Option<NatTrans>> {
        Self::INNER.iso_p(x, y)
    }

    fn pmor_eq(&self, a: &NatTrans, b: &NatTrans) -> bool {
        a == b
    }

    fn product(&self, x: &SetDiagram, y: &SetDiagram) -> Result<(SetDiagram, NatTrans, NatTrans)> {
        Self::INNER.product(x, y)
    }

    fn pair(&self, p: &NatTrans, q: &NatTrans) -> Result<NatTrans> {
        Self::INNER.pair(p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comma::{comma, is_connected_category};
    use crate::group::FinGroup;
    use crate::scheme::{self, comprehension, factorise, is_connected, is_covering};
    use crate::zoo;

    fn arc(c: FinCategory) -> Cat {
        Arc::new(c)
    }

    fn bz2() -> Cat {
        arc(zoo::delooping(&FinGroup::cyclic(2)))
    }

    fn regular(b: Cat) -> SetDiagram {
        SetDiagram::new(
            b,
            Variance::Covariant,
            vec![2],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn elements_of_terminal_is_base() {
        let b = arc(zoo::span());
        let el = elements_cov(&SetDiagram::terminal(b.clone(), Variance::Covariant)).unwrap();
        assert!(el.projection.is_isomorphism());
        let el = elements_con(&SetDiagram::terminal(b, Variance::Contravariant)).unwrap();
        assert!(el.projection.is_isomorphism());
    }

    #[test]
    fn elements_of_regular_action_is_ez2() {
        let el = elements_cov(&regular(bz2())).unwrap();
        let c = &el.category;
        assert!(c.validate().is_empty());
        assert_eq!(c.num_objects(), 2);
        assert!(c.is_groupoid());
        assert!(c
            .objects()
            .all(|x| c.objects().all(|y| c.hom(x, y).len() == 1)));
    }

    #[test]
    fn elements_over_arrow() {
        let arrow = arc(zoo::walking_arrow());
        let f = arrow.morphism_by_name("f").unwrap();
        let mut action = vec![vec![]; 3];
        action[arrow.id(0)] = vec![0];
        action[arrow.id(1)] = vec![0, 1];
        action[f] = vec![0];
        let x = SetDiagram::new(arrow, Variance::Covariant, vec![1, 2], action).unwrap();
        let el = elements_cov(&x).unwrap();
        let c = &el.category;
        assert_eq!(c.num_objects(), 3);
        assert_eq!(c.num_morphisms() - c.num_objects(), 1);
        let non_id = c.morphisms().find(|&m| !c.is_identity(m)).unwrap();
        assert_eq!(
            (el.element(c.src(non_id)), el.element(c.tgt(non_id))),
            ((0, 0), (1, 0))
        );
        assert!(is_discrete_opfibration(&el.projection));
    }

    #[test]
    fn kan_examples() {
        let star = arc(zoo::terminal());
        let b = bz2();
        // discrete pair → ⋆ with singletons: 2-element set
        let d2 = arc(zoo::discrete(2));
        let to_star = Functor::constant(d2.clone(), star.clone(), 0);
        let k = left_kan(&to_star, &SetDiagram::terminal(d2, Variance::Covariant)).unwrap();
        assert_eq!(k.diagram.sizes(), &[2]);
        // ⋆ → BZ/2 with a singleton: the regular action
        let pick = Functor::pick_object(star.clone(), b.clone(), 0);
        let k = left_kan(&pick, &SetDiagram::terminal(star, Variance::Covariant)).unwrap();
        k.diagram.validate().unwrap();
        assert!(diagram_iso(&k.diagram, &regular(b)).unwrap().is_some());
    }

    #[test]
    fn kan_along_identity_is_identity() {
        let c = arc(zoo::chain(2));
        let x = SetDiagram::representable(c.clone(), Variance::Covariant, 1);
        let k = left_kan(&Functor::identity(c), &x).unwrap();
        assert_eq!(k.diagram, x);
    }

    #[test]
    fn opfibration_examples() {
        let arrow = arc(zoo::walking_arrow());
        let star = arc(zoo::terminal());
        assert!(!is_discrete_opfibration(&Functor::constant(
            arrow.clone(),
            star,
            0
        )));
        assert!(is_discrete_opfibration(&Functor::identity(arrow.clone())));
        assert!(is_discrete_fibration(&Functor::identity(arrow)));
    }

    #[test]
    fn initial_examples() {
        let arrow = arc(zoo::walking_arrow());
        let star = arc(zoo::terminal());
        assert!(is_initial(&Functor::identity(arrow.clone())));
        assert!(is_initial(&Functor::pick_object(
            star.clone(),
            arrow.clone(),
            0
        )));
        assert!(!is_initial(&Functor::pick_object(
            star.clone(),
            arrow.clone(),
            1
        )));
        assert!(is_initial(&Functor::constant(
            arrow.clone(),
            star.clone(),
            0
        )));
        assert!(is_final(&Functor::pick_object(star, arrow, 1)));
    }

    #[test]
    fn comma_components_agree_with_comma_category() {
        let span = arc(zoo::span());
        let c = arc(zoo::chain(2));
        let star = arc(zoo::terminal());
        for f in crate::functor::enumerate_functors(&span, &c, 1000).unwrap() {
            for b in c.objects() {
                let k = comma(&f, &Functor::pick_object(star.clone(), c.clone(), b)).unwrap();
                let comps = crate::comma::num_components(&k.category);
                assert_eq!(comps, comma_components_over(&f, b));
                assert_eq!(comps == 1, is_connected_category(&k.category));
            }
        }
    }

    #[test]
    fn scheme_predicates_match_classical_ones() {
        let star = arc(zoo::terminal());
        let arrow = arc(zoo::walking_arrow());
        let s = DiagramScheme::COPRESHEAF;
        let p = DiagramScheme::PRESHEAF;
        for f in [
            Functor::pick_object(star.clone(), arrow.clone(), 0),
            Functor::pick_object(star.clone(), arrow.clone(), 1),
            Functor::constant(arrow.clone(), star.clone(), 0),
            Functor::identity(arrow.clone()),
        ] {
            assert_eq!(
                is_covering(&s, &f).unwrap().is_some(),
                is_discrete_opfibration(&f)
            );
            assert_eq!(is_connected(&s, &f).unwrap().is_some(), is_initial(&f));
            assert_eq!(
                is_covering(&p, &f).unwrap().is_some(),
                is_discrete_fibration(&f)
            );
            assert_eq!(is_connected(&p, &f).unwrap().is_some(), is_final(&f));
        }
    }

    #[test]
    fn comprehension_of_object_zero() {
        let star = arc(zoo::terminal());
        let arrow = arc(zoo::walking_arrow());
        let f = Functor::pick_object(star, arrow, 0);
        let c = comprehension(&DiagramScheme::COPRESHEAF, &f).unwrap();
        assert_eq!(c.sizes(), &[1, 1]);
    }

    #[test]
    fn factorisation_of_base_point_of_bz2() {
        let star = arc(zoo::terminal());
        let b = bz2();
        let f = Functor::pick_object(star, b, 0);
        let s = DiagramScheme::COPRESHEAF;
        let fac = factorise(&s, &f).unwrap();
        assert_eq!(fac.middle.num_objects(), 2);
        assert!(is_connected(&s, &fac.left).unwrap().is_some());
        assert!(is_covering(&s, &fac.right).unwrap().is_some());
    }

    #[test]
    fn pullback_of_ez2_to_a_point_is_discrete() {
        let star = arc(zoo::terminal());
        let b = bz2();
        let s = DiagramScheme::COPRESHEAF;
        let p = s.elements(&regular(b.clone())).unwrap();
        let h = Functor::pick_object(star, b, 0);
        let pb = scheme::pullback_covering(&s, &h, &p).unwrap();
        let e = pb.covering.dom();
        assert_eq!((e.num_objects(), e.num_morphisms()), (2, 2));
        assert_eq!(p.after(&pb.top).unwrap(), h.after(&pb.covering).unwrap());
    }

    #[test]
    fn broken_scheme_rejects_identity_on_disconnected() {
        let d2 = arc(zoo::discrete(2));
        assert!(is_covering(&BrokenScheme, &Functor::identity(d2))
            .unwrap()
            .is_none());
    }
}
