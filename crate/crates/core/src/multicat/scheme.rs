//! The comprehension scheme on finitely-supported multicategories: algebras
//! as scheme objects, restriction and pointwise left Kan extension as the
//! adjunction, multicategories of elements.

use std::ops::ControlFlow;

use super::elements::Vertex;
use super::{
    elements_multicat, for_each_multifunctor, multifunctor_pushforward, same_multicat,
    AlgebraMorphism, MultiAlgebra, MultiFunctor, Multicat,
};
use crate::error::{Error, Result, DEFAULT_BUDGET};
use crate::scheme::Scheme;

#[derive(Clone, Copy, Debug)]
pub struct MultiScheme {
    /// cap on the vertices of a comma structure
    pub bound: usize,
}

impl Default for MultiScheme {
    fn default() -> Self {
        MultiScheme { bound: 100_000 }
    }
}

impl Scheme for MultiScheme {
    type Obj = Multicat;
    type Mor = MultiFunctor;
    type PObj = MultiAlgebra;
    type PMor = AlgebraMorphism;

    fn name(&self) -> &'static str {
        "multicat"
    }

    fn dom(&self, f: &MultiFunctor) -> Multicat {
        f.dom().clone()
    }

    fn cod(&self, f: &MultiFunctor) -> Multicat {
        f.cod().clone()
    }

    fn identity(&self, a: &Multicat) -> MultiFunctor {
        MultiFunctor::identity(a.clone())
    }

    fn compose(&self, g: &MultiFunctor, f: &MultiFunctor) -> Result<MultiFunctor> {
        g.after(f)
    }

    fn invert(&self, f: &MultiFunctor) -> Option<MultiFunctor> {
        f.inverse()
    }

    fn obj_eq(&self, a: &Multicat, b: &Multicat) -> bool {
        same_multicat(a, b)
    }

    fn for_each_mor(
        &self,
        a: &Multicat,
        b: &Multicat,
        over: Option<(&MultiFunctor, &MultiFunctor)>,
        budget: usize,
        visit: &mut dyn FnMut(&MultiFunctor) -> ControlFlow<()>,
    ) -> Result<()> {
        for_each_multifunctor(a, b, over, budget, visit)
    }

    fn base(&self, x: &MultiAlgebra) -> Multicat {
        x.multicat().clone()
    }

    fn terminal(&self, a: &Multicat) -> MultiAlgebra {
        MultiAlgebra::terminal(a.clone())
    }

    fn pushforward(&self, f: &MultiFunctor, x: &MultiAlgebra) -> Result<MultiAlgebra> {
        Ok(multifunctor_pushforward(f, x, self.bound)?.algebra)
    }

    fn pullback(&self, f: &MultiFunctor, y: &MultiAlgebra) -> Result<MultiAlgebra> {
        y.restrict(f)
    }

    fn pushforward_mor(&self, f: &MultiFunctor, m: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let kx = multifunctor_pushforward(f, m.dom(), self.bound)?;
        let ky = multifunctor_pushforward(f, m.cod(), self.bound)?;
        let p = f.cod();
        let components = p
            .colours()
            .map(|c| {
                (0..kx.algebra.size(c))
                    .map(|k| {
                        let v = kx.rep(c, k);
                        let moved = Vertex {
                            word: v.word.clone(),
                            op: v.op,
                            elems: v
                                .word
                                .iter()
                                .zip(&v.elems)
                                .map(|(&w, &x)| m.apply(w, x))
                                .collect(),
                        };
                        ky.class(c, &moved)
                            .ok_or_else(|| Error::Internal("image vertex missing".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AlgebraMorphism::from_parts(
            kx.algebra, ky.algebra, components,
        ))
    }

    fn pullback_mor(&self, f: &MultiFunctor, m: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        let components = f
            .dom()
            .colours()
            .map(|c| m.component(f.colour(c)).to_vec())
            .collect();
        Ok(AlgebraMorphism::from_parts(
            m.dom().restrict(f)?,
            m.cod().restrict(f)?,
            components,
        ))
    }

    fn unit(&self, f: &MultiFunctor, x: &MultiAlgebra) -> Result<AlgebraMorphism> {
        let kan = multifunctor_pushforward(f, x, self.bound)?;
        let p = f.cod();
        let components = f
            .dom()
            .colours()
            .map(|w| {
                (0..x.size(w))
                    .map(|e| {
                        let v = Vertex {
                            word: vec![w],
                            op: p.unit(f.colour(w)),
                            elems: vec![e],
                        };
                        kan.class(f.colour(w), &v).expect("unit vertex")
                    })
                    .collect()
            })
            .collect();
        Ok(AlgebraMorphism::from_parts(
            x.clone(),
            kan.algebra.restrict(f)?,
            components,
        ))
    }

    fn counit(&self, f: &MultiFunctor, y: &MultiAlgebra) -> Result<AlgebraMorphism> {
        let fy = y.restrict(f)?;
        let kan = multifunctor_pushforward(f, &fy, self.bound)?;
        let components = f
            .cod()
            .colours()
            .map(|c| {
                (0..kan.algebra.size(c))
                    .map(|k| {
                        let v = kan.rep(c, k);
                        y.eval(v.op, &v.elems)
                    })
                    .collect()
            })
            .collect();
        Ok(AlgebraMorphism::from_parts(
            kan.algebra,
            y.clone(),
            components,
        ))
    }

    fn elements(&self, x: &MultiAlgebra) -> Result<MultiFunctor> {
        Ok(elements_multicat(x)?.projection)
    }

    fn lift(
        &self,
        h: &MultiFunctor,
        x: &MultiAlgebra,
        point: &AlgebraMorphism,
    ) -> Result<MultiFunctor> {
        let el = elements_multicat(x)?;
        let d = h.dom();
        let at = |c: usize| point.apply(c, 0);
        let colour_map = d.colours().map(|c| el.colour(h.colour(c), at(c))).collect();
        let op_map = d
            .op_ids()
            .map(|f| {
                let xs: Vec<usize> = d.sources(f).iter().map(|&c| at(c)).collect();
                el.op_over(h.op(f), &xs)
            })
            .collect();
        Ok(MultiFunctor::from_parts(
            d.clone(),
            el.multicat,
            colour_map,
            op_map,
        ))
    }

    fn unlift(
        &self,
        h: &MultiFunctor,
        x: &MultiAlgebra,
        g: &MultiFunctor,
    ) -> Result<AlgebraMorphism> {
        let el = elements_multicat(x)?;
        let d = h.dom();
        let components = d
            .colours()
            .map(|c| vec![el.element(g.colour(c)).1])
            .collect();
        Ok(AlgebraMorphism::from_parts(
            MultiAlgebra::terminal(d.clone()),
            x.restrict(h)?,
            components,
        ))
    }

    fn pdom(&self, m: &AlgebraMorphism) -> MultiAlgebra {
        m.dom().clone()
    }

    fn pcod(&self, m: &AlgebraMorphism) -> MultiAlgebra {
        m.cod().clone()
    }

    fn pidentity(&self, x: &MultiAlgebra) -> AlgebraMorphism {
        AlgebraMorphism::identity(x)
    }

    fn pcompose(&self, g: &AlgebraMorphism, f: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        g.after(f)
    }

    fn pinverse(&self, m: &AlgebraMorphism) -> Option<AlgebraMorphism> {
        m.inverse()
    }

    fn hom_p(
        &self,
        x: &MultiAlgebra,
        y: &MultiAlgebra,
        budget: usize,
    ) -> Result<Vec<AlgebraMorphism>> {
        AlgebraMorphism::all(x, y, budget)
    }

    fn iso_p(&self, x: &MultiAlgebra, y: &MultiAlgebra) -> Result<Option<AlgebraMorphism>> {
        AlgebraMorphism::find_iso(x, y, DEFAULT_BUDGET)
    }

    fn pmor_eq(&self, a: &AlgebraMorphism, b: &AlgebraMorphism) -> bool {
        a.components() == b.components()
    }

    fn product(
        &self,
        x: &MultiAlgebra,
        y: &MultiAlgebra,
    ) -> Result<(MultiAlgebra, AlgebraMorphism, AlgebraMorphism)> {
        let prod = x.product(y)?;
        let m = x.multicat();
        let p1 = m
            .colours()
            .map(|c| (0..prod.size(c)).map(|z| z / y.size(c)).collect())
            .collect();
        let p2 = m
            .colours()
            .map(|c| (0..prod.size(c)).map(|z| z % y.size(c)).collect())
            .collect();
        Ok((
            prod.clone(),
            AlgebraMorphism::from_parts(prod.clone(), x.clone(), p1),
            AlgebraMorphism::from_parts(prod, y.clone(), p2),
        ))
    }

    fn pair(&self, p: &AlgebraMorphism, q: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if p.dom() != q.dom() {
            return Err(Error::Precondition("pairing needs a common domain".into()));
        }
        let (x, y) = (p.cod(), q.cod());
        let prod = x.product(y)?;
        let components = p
            .components()
            .iter()
            .zip(q.components())
            .enumerate()
            .map(|(c, (a, b))| a.iter().zip(b).map(|(&u, &v)| u * y.size(c) + v).collect())
            .collect();
        Ok(AlgebraMorphism::from_parts(
            p.dom().clone(),
            prod,
            components,
        ))
    }
}
