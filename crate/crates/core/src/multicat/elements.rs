//! Multicategories of elements, multicoverings, pointwise left Kan extension
//! of algebras along multifunctors, the comprehensive factorisation of a
//! multifunctor, and hom sets of the category of words `F_O`.

use std::collections::HashMap;
use std::sync::Arc;

use super::{
    radix_count, radix_decode, radix_index, same_multicat, ColourId, FinMulticategory,
    MultiAlgebra, MultiFunctor, Multicat, OpId, Operation,
};
use crate::error::{Error, Result};
use crate::unionfind::UnionFind;

/// `el(A)` with its projection: colours `(c, x)`, and one operation
/// `(f, x_0..x_{k-1})` with target `(c, A(f)(x⃗))` per operation `f` and
/// tuple of source elements.
#[derive(Clone, Debug)]
pub struct MultiElements {
    pub multicat: Multicat,
    pub projection: MultiFunctor,
    pub algebra: MultiAlgebra,
    colour_offsets: Vec<usize>,
    op_offsets: Vec<usize>,
}

impl MultiElements {
    pub fn colour(&self, c: ColourId, x: usize) -> ColourId {
        self.colour_offsets[c] + x
    }

    pub fn element(&self, e: ColourId) -> (ColourId, usize) {
        let c = self.colour_offsets.partition_point(|&o| o <= e) - 1;
        (c, e - self.colour_offsets[c])
    }

    /// The operation over `f` with the given source elements.
    pub fn op_over(&self, f: OpId, xs: &[usize]) -> OpId {
        self.op_offsets[f] + radix_index(&self.algebra.source_sizes(f), xs)
    }
}

pub fn elements_multicat(a: &MultiAlgebra) -> Result<MultiElements> {
    let o = a.multicat();
    let mut colour_offsets = vec![0];
    let mut colours = Vec::new();
    for c in o.colours() {
        colour_offsets.push(colour_offsets[c] + a.size(c));
        for x in 0..a.size(c) {
            colours.push(format!("({},{x})", o.colour_name(c)));
        }
    }
    let mut op_offsets = vec![0];
    let mut ops = Vec::new();
    let mut over = Vec::new();
    for f in o.op_ids() {
        let sizes = a.source_sizes(f);
        let n = radix_count(&sizes);
        op_offsets.push(op_offsets[f] + n);
        for idx in 0..n {
            let xs = radix_decode(&sizes, idx);
            let sources = o
                .sources(f)
                .iter()
                .zip(&xs)
                .map(|(&c, &x)| colour_offsets[c] + x)
                .collect();
            let target = colour_offsets[o.target(f)] + a.table(f)[idx];
            let name = if xs.is_empty() {
                o.op(f).name.clone()
            } else {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                format!("{}@({})", o.op(f).name, parts.join(","))
            };
            ops.push(Operation {
                name,
                sources,
                target,
            });
            over.push(f);
        }
    }
    let elements = MultiElements {
        multicat: Arc::new(FinMulticategory::from_parts(
            Vec::new(),
            Vec::new(),
            Vec::new(),
            Vec::new(),
            Vec::new(),
        )),
        projection: MultiFunctor::identity(o.clone()),
        algebra: a.clone(),
        colour_offsets: colour_offsets.clone(),
        op_offsets: op_offsets.clone(),
    };
    let units = o
        .colours()
        .flat_map(|c| (0..a.size(c)).map(move |x| (c, x)))
        .map(|(c, x)| elements.op_over(o.unit(c), &[x]))
        .collect();
    let mut swaps = Vec::with_capacity(ops.len());
    for f in o.op_ids() {
        let sizes = a.source_sizes(f);
        for idx in 0..radix_count(&sizes) {
            let xs = radix_decode(&sizes, idx);
            swaps.push(
                (0..o.arity(f).saturating_sub(1))
                    .map(|j| {
                        let mut ys = xs.clone();
                        ys.swap(j, j + 1);
                        elements.op_over(o.swap(f, j), &ys)
                    })
                    .collect(),
            );
        }
    }
    let mut comp = Vec::new();
    for (f, i, g, r) in o.composition_table() {
        let m = o.arity(g);
        let sizes = a.source_sizes(r);
        for idx in 0..radix_count(&sizes) {
            let xs = radix_decode(&sizes, idx);
            let inner = &xs[i..i + m];
            let mut outer = xs[..i].to_vec();
            outer.push(a.eval(g, inner));
            outer.extend(&xs[i + m..]);
            comp.push((
                elements.op_over(f, &outer),
                i,
                elements.op_over(g, inner),
                op_offsets[r] + idx,
            ));
        }
    }
    let colour_map = colours
        .iter()
        .enumerate()
        .map(|(e, _)| elements.element(e).0)
        .collect();
    let multicat = Arc::new(FinMulticategory::from_parts(
        colours, ops, units, swaps, comp,
    ));
    let projection = MultiFunctor::from_parts(multicat.clone(), o.clone(), colour_map, over);
    Ok(MultiElements {
        multicat,
        projection,
        ..elements
    })
}

/// Every operation `f` of the codomain has exactly one lift with any given
/// tuple of source colours over the sources of `f`.
pub fn is_multicovering(p: &MultiFunctor) -> bool {
    let (e, o) = (p.dom(), p.cod());
    let mut count: HashMap<(Vec<ColourId>, OpId), usize> = HashMap::new();
    for g in e.op_ids() {
        *count.entry((e.sources(g).to_vec(), p.op(g))).or_default() += 1;
    }
    let mut fibre: Vec<Vec<ColourId>> = vec![Vec::new(); o.num_colours()];
    for c in e.colours() {
        fibre[p.colour(c)].push(c);
    }
    for f in o.op_ids() {
        let choices: Vec<&Vec<ColourId>> = o.sources(f).iter().map(|&c| &fibre[c]).collect();
        let sizes: Vec<usize> = choices.iter().map(|v| v.len()).collect();
        for idx in 0..radix_count(&sizes) {
            let pick = radix_decode(&sizes, idx);
            let srcs: Vec<ColourId> = pick.iter().zip(&choices).map(|(&k, v)| v[k]).collect();
            if count.get(&(srcs, f)).copied().unwrap_or(0) != 1 {
                return false;
            }
        }
    }
    true
}

/// A morphism `v_0⊗…⊗v_{k-1} → w_0⊗…⊗w_{l-1}` of `F_O`: a map `φ` of
/// positions and, for each `j`, an operation from the letters `φ⁻¹(j)` (in
/// increasing order) to `w_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FoMorphism {
    pub phi: Vec<usize>,
    pub family: Vec<OpId>,
}

/// All morphisms `v → w`, by `φ` in lexicographic order and then by family.
pub fn f_o_hom(o: &FinMulticategory, v: &[ColourId], w: &[ColourId]) -> Vec<FoMorphism> {
    let (k, l) = (v.len(), w.len());
    let mut out = Vec::new();
    let phis = radix_count(&vec![l; k]);
    for code in 0..phis {
        let phi = radix_decode(&vec![l; k], code);
        let homs: Vec<&[OpId]> = (0..l)
            .map(|j| {
                let src: Vec<ColourId> = (0..k).filter(|&i| phi[i] == j).map(|i| v[i]).collect();
                o.hom(&src, w[j])
            })
            .collect();
        let sizes: Vec<usize> = homs.iter().map(|h| h.len()).collect();
        for idx in 0..radix_count(&sizes) {
            let pick = radix_decode(&sizes, idx);
            out.push(FoMorphism {
                phi: phi.clone(),
                family: pick.iter().zip(&homs).map(|(&t, h)| h[t]).collect(),
            });
        }
    }
    out
}

pub fn f_o_identity(o: &FinMulticategory, v: &[ColourId]) -> FoMorphism {
    FoMorphism {
        phi: (0..v.len()).collect(),
        family: v.iter().map(|&c| o.unit(c)).collect(),
    }
}

/// The permutation sorting a concatenation of letter positions, in the
/// input convention of [`FinMulticategory::act`].
fn unshuffle(concat: &[usize]) -> Vec<usize> {
    let mut sorted = concat.to_vec();
    sorted.sort_unstable();
    sorted
        .iter()
        .map(|t| concat.iter().position(|x| x == t).unwrap())
        .collect()
}

/// `β ∘ α` for `α: u → v`, `β: v → w`.
pub fn f_o_compose(
    o: &FinMulticategory,
    beta: &FoMorphism,
    alpha: &FoMorphism,
) -> Option<FoMorphism> {
    let l = beta.family.len();
    let phi: Vec<usize> = alpha.phi.iter().map(|&i| beta.phi[i]).collect();
    let mut family = Vec::with_capacity(l);
    for j in 0..l {
        let mids: Vec<usize> = (0..beta.phi.len()).filter(|&i| beta.phi[i] == j).collect();
        let inner: Vec<OpId> = mids.iter().map(|&i| alpha.family[i]).collect();
        let g = o.gamma(beta.family[j], &inner)?;
        let concat: Vec<usize> = mids
            .iter()
            .flat_map(|&i| (0..alpha.phi.len()).filter(move |&t| alpha.phi[t] == i))
            .collect();
        family.push(o.act(g, &unshuffle(&concat)));
    }
    Some(FoMorphism { phi, family })
}

/// A vertex of the comma structure at a colour `c` of `P`: a word `w⃗` in
/// the colours of `O`, an operation `g: F(w⃗) → c` and a tuple of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub word: Vec<ColourId>,
    pub op: OpId,
    pub elems: Vec<usize>,
}

/// `F_!X` for a multifunctor `F: O → P`, with the comma structures it was
/// computed from: at a colour `c`, classes of vertices under the relation
/// generated by `(v⃗, g∘F(α), y⃗) ~ (w⃗, g, X(α)y⃗)` for morphisms `α` of
/// `F_O`.
#[derive(Clone, Debug)]
pub struct MultiKan {
    pub algebra: MultiAlgebra,
    pub vertices: Vec<Vec<Vertex>>,
    index: Vec<HashMap<Vertex, usize>>,
    class_of: Vec<Vec<usize>>,
    /// least vertex of each class
    pub reps: Vec<Vec<usize>>,
}

impl MultiKan {
    pub fn class(&self, c: ColourId, v: &Vertex) -> Option<usize> {
        self.index[c].get(v).map(|&i| self.class_of[c][i])
    }

    pub fn rep(&self, c: ColourId, x: usize) -> &Vertex {
        &self.vertices[c][self.reps[c][x]]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.iter().map(Vec::len).sum()
    }
}

/// `F(α)` precomposed with `g`: the operation `g∘F(α): F(v⃗) → c`.
fn precompose(f: &MultiFunctor, g: OpId, alpha: &FoMorphism) -> Option<OpId> {
    let p = f.cod();
    let images: Vec<OpId> = alpha.family.iter().map(|&h| f.op(h)).collect();
    let r = p.gamma(g, &images)?;
    let concat: Vec<usize> = (0..images.len())
        .flat_map(|j| (0..alpha.phi.len()).filter(move |&t| alpha.phi[t] == j))
        .collect();
    Some(p.act(r, &unshuffle(&concat)))
}

fn act_on_elements(x: &MultiAlgebra, alpha: &FoMorphism, ys: &[usize]) -> Vec<usize> {
    (0..alpha.family.len())
        .map(|j| {
            let args: Vec<usize> = (0..alpha.phi.len())
                .filter(|&i| alpha.phi[i] == j)
                .map(|i| ys[i])
                .collect();
            x.eval(alpha.family[j], &args)
        })
        .collect()
}

/// Pointwise left Kan extension of `x` along `f`. Errors with
/// [`Error::SupportExceeded`] once more than `bound` vertices are generated.
pub fn multifunctor_pushforward(
    f: &MultiFunctor,
    x: &MultiAlgebra,
    bound: usize,
) -> Result<MultiKan> {
    if !same_multicat(f.dom(), x.multicat()) {
        return Err(Error::BaseMismatch("algebra is not over the domain".into()));
    }
    let (o, p) = (f.dom(), f.cod());
    let mut pre: Vec<Vec<ColourId>> = vec![Vec::new(); p.num_colours()];
    for c in o.colours() {
        pre[f.colour(c)].push(c);
    }
    let mut total = 0usize;
    let mut vertices: Vec<Vec<Vertex>> = Vec::with_capacity(p.num_colours());
    let mut index: Vec<HashMap<Vertex, usize>> = Vec::with_capacity(p.num_colours());
    let mut class_of = Vec::with_capacity(p.num_colours());
    let mut reps = Vec::with_capacity(p.num_colours());
    for c in p.colours() {
        let mut verts = Vec::new();
        // (word, op) pairs in generation order
        let mut heads: Vec<(Vec<ColourId>, OpId)> = Vec::new();
        for g in p.ops_into(c) {
            let choices: Vec<&Vec<ColourId>> = p.sources(g).iter().map(|&d| &pre[d]).collect();
            let sizes: Vec<usize> = choices.iter().map(|v| v.len()).collect();
            for widx in 0..radix_count(&sizes) {
                let pick = radix_decode(&sizes, widx);
                let word: Vec<ColourId> = pick.iter().zip(&choices).map(|(&k, v)| v[k]).collect();
                let esizes: Vec<usize> = word.iter().map(|&w| x.size(w)).collect();
                let n = radix_count(&esizes);
                total += n;
                if total > bound {
                    return Err(Error::SupportExceeded(bound));
                }
                for eidx in 0..n {
                    verts.push(Vertex {
                        word: word.clone(),
                        op: g,
                        elems: radix_decode(&esizes, eidx),
                    });
                }
                heads.push((word, g));
            }
        }
        let idx: HashMap<Vertex, usize> = verts
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        let mut words: Vec<Vec<ColourId>> = heads.iter().map(|(w, _)| w.clone()).collect();
        words.sort();
        words.dedup();
        let mut homs: HashMap<(usize, usize), Vec<FoMorphism>> = HashMap::new();
        let mut uf = UnionFind::new(verts.len());
        for (w, g) in &heads {
            let wi = words.binary_search(w).unwrap();
            for (vi, v) in words.iter().enumerate() {
                let hom = homs.entry((vi, wi)).or_insert_with(|| f_o_hom(o, v, w));
                for alpha in hom.iter() {
                    let h = precompose(f, *g, alpha).ok_or(Error::SupportExceeded(bound))?;
                    let ysizes: Vec<usize> = v.iter().map(|&t| x.size(t)).collect();
                    for yidx in 0..radix_count(&ysizes) {
                        let ys = radix_decode(&ysizes, yidx);
                        let xs = act_on_elements(x, alpha, &ys);
                        let from = Vertex {
                            word: v.clone(),
                            op: h,
                            elems: ys,
                        };
                        let to = Vertex {
                            word: w.clone(),
                            op: *g,
                            elems: xs,
                        };
                        let (a, b) = (idx.get(&from), idx.get(&to));
                        match (a, b) {
                            (Some(&a), Some(&b)) => {
                                uf.union(a, b);
                            }
                            _ => {
                                return Err(Error::Internal(
                                    "comma edge leaves the vertex set".into(),
                                ))
                            }
                        }
                    }
                }
            }
        }
        let (blocks, block_of) = uf.blocks();
        reps.push(blocks.iter().map(|b| b[0]).collect::<Vec<usize>>());
        class_of.push(block_of);
        vertices.push(verts);
        index.push(idx);
    }
    let sizes: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut kan = MultiKan {
        algebra: MultiAlgebra::from_parts(p.clone(), sizes.clone(), Vec::new()),
        vertices,
        index,
        class_of,
        reps,
    };
    let mut tables = Vec::with_capacity(p.num_ops());
    for q in p.op_ids() {
        let src: Vec<usize> = p.sources(q).iter().map(|&d| sizes[d]).collect();
        let mut table = Vec::with_capacity(radix_count(&src));
        for idx in 0..radix_count(&src) {
            let classes = radix_decode(&src, idx);
            let parts: Vec<&Vertex> = classes
                .iter()
                .zip(p.sources(q))
                .map(|(&k, &d)| kan.rep(d, k))
                .collect();
            let ops: Vec<OpId> = parts.iter().map(|v| v.op).collect();
            let op = p.gamma(q, &ops).ok_or(Error::SupportExceeded(bound))?;
            let v = Vertex {
                word: parts.iter().flat_map(|v| v.word.iter().copied()).collect(),
                op,
                elems: parts.iter().flat_map(|v| v.elems.iter().copied()).collect(),
            };
            table
                .push(kan.class(p.target(q), &v).ok_or_else(|| {
                    Error::Internal("structure map leaves the vertex set".into())
                })?);
        }
        tables.push(table);
    }
    kan.algebra = MultiAlgebra::from_parts(p.clone(), sizes, tables);
    Ok(kan)
}

pub fn multifunctor_pushforward_terminal(f: &MultiFunctor, bound: usize) -> Result<MultiKan> {
    multifunctor_pushforward(f, &MultiAlgebra::terminal(f.dom().clone()), bound)
}

/// `F = right ∘ left` with `right` the elements projection of `F_!(⋆)`.
#[derive(Clone, Debug)]
pub struct MultiFactorisation {
    pub left: MultiFunctor,
    pub right: MultiFunctor,
    pub middle: Multicat,
    pub classifier: MultiAlgebra,
}

pub fn factorise_multi(f: &MultiFunctor, bound: usize) -> Result<MultiFactorisation> {
    let o = f.dom();
    let kan = multifunctor_pushforward_terminal(f, bound)?;
    let el = elements_multicat(&kan.algebra)?;
    let class_of_colour = |w: ColourId| {
        let v = Vertex {
            word: vec![w],
            op: f.cod().unit(f.colour(w)),
            elems: vec![0],
        };
        kan.class(f.colour(w), &v).expect("unit vertex")
    };
    let colour_map: Vec<ColourId> = o
        .colours()
        .map(|w| el.colour(f.colour(w), class_of_colour(w)))
        .collect();
    let op_map = o
        .op_ids()
        .map(|g| {
            let xs: Vec<usize> = o.sources(g).iter().map(|&w| class_of_colour(w)).collect();
            el.op_over(f.op(g), &xs)
        })
        .collect();
    let left = MultiFunctor::from_parts(o.clone(), el.multicat.clone(), colour_map, op_map);
    let recomposed = el.projection.after(&left)?;
    if recomposed != *f {
        return Err(Error::Internal(
            "multicategory factorisation does not recompose".into(),
        ));
    }
    Ok(MultiFactorisation {
        left,
        right: el.projection,
        middle: el.multicat,
        classifier: kan.algebra,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multicat::Operation;

    fn op(name: &str, sources: Vec<usize>, target: usize) -> Operation {
        Operation {
            name: name.into(),
            sources,
            target,
        }
    }

    /// Colours `a`, `b`; a commutative `m: (a, a) → b` and `n: a → b`.
    fn two_level() -> Multicat {
        let ops = vec![
            op("1a", vec![0], 0),
            op("1b", vec![1], 1),
            op("m", vec![0, 0], 1),
            op("n", vec![0], 1),
        ];
        let comp = vec![
            (0, 0, 0, 0),
            (1, 0, 1, 1),
            (1, 0, 2, 2),
            (1, 0, 3, 3),
            (2, 0, 0, 2),
            (2, 1, 0, 2),
            (3, 0, 0, 3),
        ];
        let swaps = vec![vec![], vec![], vec![2], vec![]];
        Arc::new(
            FinMulticategory::new(vec!["a".into(), "b".into()], ops, vec![0, 1], swaps, comp)
                .unwrap(),
        )
    }

    fn one_colour_units() -> Multicat {
        Arc::new(
            FinMulticategory::new(
                vec!["c".into()],
                vec![op("1", vec![0], 0)],
                vec![0],
                vec![vec![]],
                vec![(0, 0, 0, 0)],
            )
            .unwrap(),
        )
    }

    #[test]
    fn elements_of_terminal_is_the_multicategory() {
        let p = two_level();
        let el = elements_multicat(&MultiAlgebra::terminal(p.clone())).unwrap();
        el.multicat.validate().unwrap();
        assert!(el.projection.is_isomorphism());
        assert!(is_multicovering(&el.projection));
    }

    #[test]
    fn elements_of_or() {
        let p = two_level();
        // A(a) = A(b) = {0, 1}, m = OR, n = id
        let alg = MultiAlgebra::new(
            p.clone(),
            vec![2, 2],
            vec![vec![0, 1], vec![0, 1], vec![0, 1, 1, 1], vec![0, 1]],
        )
        .unwrap();
        let el = elements_multicat(&alg).unwrap();
        el.multicat.validate().unwrap();
        el.projection.validate().unwrap();
        let m = el.multicat.clone();
        let (a, b) = (|x| el.colour(0, x), |x| el.colour(1, x));
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    let n = m.hom(&[a(x), a(y)], b(z)).len();
                    assert_eq!(n, usize::from((x | y) == z));
                }
            }
        }
        assert!(is_multicovering(&el.projection));
    }

    #[test]
    fn collapse_of_units_is_a_multicovering() {
        // two copies of the one-colour unit multicategory over one copy: a
        // covering, like discrete(2) → ⋆
        let two = Arc::new(
            FinMulticategory::new(
                vec!["x".into(), "y".into()],
                vec![op("1x", vec![0], 0), op("1y", vec![1], 1)],
                vec![0, 1],
                vec![vec![], vec![]],
                vec![(0, 0, 0, 0), (1, 0, 1, 1)],
            )
            .unwrap(),
        );
        let collapse =
            MultiFunctor::new(two.clone(), one_colour_units(), vec![0, 0], vec![0, 0]).unwrap();
        assert!(is_multicovering(&collapse));
        assert!(is_multicovering(&MultiFunctor::identity(two)));
        let p = two_level();
        let (units, incl) = p.units_only();
        let incl =
            MultiFunctor::new(Arc::new(units), p.clone(), p.colours().collect(), incl).unwrap();
        assert!(!is_multicovering(&incl));
    }

    #[test]
    fn pushforward_counts_components() {
        let p = two_level();
        let o = one_colour_units();
        let f = MultiFunctor::new(o, p.clone(), vec![0], vec![0]).unwrap();
        let kan = multifunctor_pushforward_terminal(&f, 1000).unwrap();
        kan.algebra.validate().unwrap();
        assert_eq!(kan.algebra.sizes(), &[1, 2]);
        let id =
            multifunctor_pushforward_terminal(&MultiFunctor::identity(p.clone()), 1000).unwrap();
        assert_eq!(id.algebra.sizes(), &[1, 1]);
    }

    #[test]
    fn factorisation_recomposes() {
        let p = two_level();
        let o = one_colour_units();
        let f = MultiFunctor::new(o, p, vec![0], vec![0]).unwrap();
        let fac = factorise_multi(&f, 1000).unwrap();
        fac.middle.validate().unwrap();
        fac.left.validate().unwrap();
        assert!(is_multicovering(&fac.right));
        let back = multifunctor_pushforward_terminal(&fac.left, 1000).unwrap();
        assert!(back.algebra.sizes().iter().all(|&n| n == 1));
    }

    #[test]
    fn word_homs() {
        let o = one_colour_units();
        assert_eq!(f_o_hom(&o, &[0, 0], &[0, 0]).len(), 2);
        assert_eq!(f_o_hom(&o, &[], &[]).len(), 1);
        let p = two_level();
        assert_eq!(f_o_hom(&p, &[0, 0], &[1]).len(), 1);
        assert_eq!(f_o_hom(&p, &[0, 0], &[1, 1]).len(), 2);
    }
}
