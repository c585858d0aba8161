//! Multicategory layer: elements, multicoverings, pushforward, factorisation
//! and the F_O hom formula, checked against brute-force oracles and against
//! the category-level scheme on unary inputs.

use std::collections::VecDeque;
use std::ops::ControlFlow;
use std::sync::Arc;

use comprehend::cat_scheme::{is_discrete_opfibration, left_kan, DiagramScheme};
use comprehend::census::{corpus, CorpusSpec};
use comprehend::diagram::diagram_iso;
use comprehend::multicat::samples::{
    algebra_family, generated_sample, multicat_corpus, multifunctor_sample,
};
use comprehend::multicat::*;
use comprehend::samples::{diagram_family, functor_sample};
use comprehend::scheme;
use comprehend::{Cat, SetDiagram, Variance};

const BOUND: usize = 20_000;

fn cats() -> Vec<Cat> {
    corpus(&CorpusSpec {
        max_objects: 3,
        max_morphisms: 4,
        exhaustive_morphisms: 4,
        samples_per_size: 0,
        seed: 3,
    })
}

fn to_algebra(m: &Multicat, x: &SetDiagram) -> MultiAlgebra {
    MultiAlgebra::new(m.clone(), x.sizes().to_vec(), x.actions().to_vec()).unwrap()
}

fn to_diagram(c: &Cat, a: &MultiAlgebra) -> SetDiagram {
    SetDiagram::new(
        c.clone(),
        Variance::Covariant,
        a.sizes().to_vec(),
        a.tables().to_vec(),
    )
    .unwrap()
}

fn is_connected_multi(f: &MultiFunctor) -> bool {
    let k = multifunctor_pushforward_terminal(f, BOUND).unwrap();
    k.algebra.sizes().iter().all(|&n| n == 1)
}

#[test]
fn elements_projections_are_multicoverings() {
    let ms = multicat_corpus(&cats(), 30, 11);
    let mut checked = 0;
    for m in &ms {
        m.validate().unwrap();
        for a in algebra_family(m, 2, 6, 50_000) {
            let el = elements_multicat(&a).unwrap();
            el.multicat.validate().unwrap();
            el.projection.validate().unwrap();
            assert!(is_multicovering(&el.projection));
            // hom sets of el(A) by the defining formula
            for f in m.op_ids() {
                let sizes: Vec<usize> = m.sources(f).iter().map(|&c| a.size(c)).collect();
                if sizes.contains(&0) {
                    continue;
                }
                let mut xs = vec![0; sizes.len()];
                loop {
                    let g = el.op_over(f, &xs);
                    let e = el.multicat.target(g);
                    assert_eq!(el.element(e), (m.target(f), a.eval(f, &xs)));
                    let srcs: Vec<_> = m
                        .sources(f)
                        .iter()
                        .zip(&xs)
                        .map(|(&c, &x)| el.colour(c, x))
                        .collect();
                    assert_eq!(el.multicat.sources(g), srcs.as_slice());
                    let Some(i) = (0..xs.len()).rev().find(|&i| xs[i] + 1 < sizes[i]) else {
                        break;
                    };
                    xs[i] += 1;
                    xs[i + 1..].iter_mut().for_each(|x| *x = 0);
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn identity_is_a_multicovering_and_collapse_of_units_is_too() {
    for m in multicat_corpus(&[], 10, 5) {
        assert!(is_multicovering(&MultiFunctor::identity(m.clone())));
    }
    // two colours with only units collapsing onto one: every unit lifts uniquely
    let two = Arc::new(comprehend::zoo::discrete(2));
    let one = Arc::new(comprehend::zoo::terminal());
    let collapse = comprehend::Functor::new(two, one, vec![0, 0], vec![0, 0]).unwrap();
    assert!(is_multicovering(&MultiFunctor::translate(&collapse)));
}

#[test]
fn factorisation_on_sampled_multifunctors() {
    let ms = multicat_corpus(&cats(), 25, 17);
    let fs = multifunctor_sample(&ms, 120, 3, 19);
    let mut checked = 0;
    for f in &fs {
        let fac = match factorise_multi(f, BOUND) {
            Ok(fac) => fac,
            Err(comprehend::Error::SupportExceeded(_)) => continue,
            Err(e) => panic!("{e}"),
        };
        fac.left.validate().unwrap();
        fac.right.validate().unwrap();
        assert_eq!(&fac.right.after(&fac.left).unwrap(), f);
        assert!(is_multicovering(&fac.right));
        assert!(is_connected_multi(&fac.left), "{f:?}");
        if is_multicovering(f) {
            assert!(fac.left.is_isomorphism());
        }
        checked += 1;
    }
    assert!(checked >= 50, "{checked}");
}

#[test]
fn generic_scheme_algorithms_agree_with_direct_ones() {
    let ms = multicat_corpus(&cats(), 15, 23);
    let s = MultiScheme { bound: BOUND };
    let mut checked = 0;
    for f in multifunctor_sample(&ms, 60, 2, 29) {
        let Ok(direct) = factorise_multi(&f, BOUND) else {
            continue;
        };
        let fac = scheme::factorise(&s, &f).unwrap();
        assert_eq!(fac.classifier.sizes(), direct.classifier.sizes());
        assert_eq!(
            scheme::is_covering(&s, &f).unwrap().is_some(),
            is_multicovering(&f)
        );
        assert!(scheme::is_connected(&s, &fac.left).unwrap().is_some());
        assert_eq!(
            scheme::is_connected(&s, &f).unwrap().is_some(),
            is_connected_multi(&f)
        );
        checked += 1;
    }
    assert!(checked >= 50, "{checked}");
}

#[test]
fn unary_inputs_agree_with_the_category_scheme() {
    let fs = functor_sample(&cats(), 80, 3, 31);
    assert!(fs.len() >= 100);
    for f in &fs {
        let mf = MultiFunctor::translate(f);
        mf.validate().unwrap();
        assert_eq!(is_multicovering(&mf), is_discrete_opfibration(f), "{f:?}");
        for x in diagram_family(f.dom(), Variance::Covariant) {
            let ours = multifunctor_pushforward(&mf, &to_algebra(mf.dom(), &x), BOUND).unwrap();
            let theirs = left_kan(f, &x).unwrap().diagram;
            let ours = to_diagram(f.cod(), &ours.algebra);
            assert!(diagram_iso(&ours, &theirs).unwrap().is_some(), "{f:?}");
        }
        let a = factorise_multi(&mf, BOUND).unwrap();
        let b = scheme::factorise(&DiagramScheme::COPRESHEAF, f).unwrap();
        assert_eq!(a.middle.num_colours(), b.middle.num_objects());
        assert_eq!(a.middle.num_ops(), b.middle.num_morphisms());
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        assert_eq!(sorted(a.right.colour_map()), sorted(b.right.obj_map()));
        assert!(
            diagram_iso(&to_diagram(f.cod(), &a.classifier), &b.classifier)
                .unwrap()
                .is_some()
        );
    }
}

/// `Σ` over families of operations with targets `w` of the number of maps
/// `φ` of positions whose fibres read off the families' sources.
fn f_o_hom_count(o: &FinMulticategory, v: &[ColourId], w: &[ColourId]) -> usize {
    fn phis(v: &[ColourId], fam: &[Vec<ColourId>], i: usize, taken: &mut Vec<usize>) -> usize {
        // assign position i to some slot j whose next unread letter matches
        if i == v.len() {
            return usize::from(taken.iter().zip(fam).all(|(&t, s)| t == s.len()));
        }
        let mut n = 0;
        for j in 0..fam.len() {
            if taken[j] < fam[j].len() && fam[j][taken[j]] == v[i] {
                taken[j] += 1;
                n += phis(v, fam, i + 1, taken);
                taken[j] -= 1;
            }
        }
        n
    }
    let mut total = 0;
    let mut fam: Vec<OpId> = Vec::new();
    fn families(
        o: &FinMulticategory,
        v: &[ColourId],
        w: &[ColourId],
        fam: &mut Vec<OpId>,
        total: &mut usize,
    ) {
        if fam.len() == w.len() {
            let srcs: Vec<Vec<ColourId>> = fam.iter().map(|&f| o.sources(f).to_vec()).collect();
            *total += phis(v, &srcs, 0, &mut vec![0; srcs.len()]);
            return;
        }
        for f in o.op_ids() {
            if o.target(f) == w[fam.len()] {
                fam.push(f);
                families(o, v, w, fam, total);
                fam.pop();
            }
        }
    }
    families(o, v, w, &mut fam, &mut total);
    total
}

fn words(n: usize, max_len: usize) -> Vec<Vec<ColourId>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<ColourId>| {
                (0..n).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
        out.extend(layer.clone());
    }
    out
}

#[test]
fn f_o_hom_matches_the_coproduct_formula() {
    let mut pairs = 0;
    for (m, _) in generated_sample(12, 37) {
        let ws = words(m.num_colours(), 3);
        for v in &ws {
            for w in ws.iter().filter(|w| w.len() <= 2) {
                let homs = f_o_hom(&m, v, w);
                assert_eq!(homs.len(), f_o_hom_count(&m, v, w), "{v:?} → {w:?}");
                let mut sorted = homs.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), homs.len());
                pairs += 1;
            }
        }
    }
    assert!(pairs >= 100, "{pairs}");
}

#[test]
fn f_o_hom_examples() {
    let one = Arc::new(FinMulticategory::from_category(&comprehend::zoo::terminal()));
    assert_eq!(f_o_hom(&one, &[0, 0], &[0, 0]).len(), 2);
    assert_eq!(f_o_hom(&one, &[], &[]).len(), 1);
    // a single binary m: (a, a) → b; on one colour m∘m would have no bound
    let m = Generator {
        name: "m".into(),
        sources: vec![0, 0],
        target: 1,
        table: vec![0],
    };
    let g = generated(vec!["a".into(), "b".into()], vec![1, 1], vec![m], 10).unwrap();
    assert_eq!(g.multicat.num_ops(), 3);
    assert_eq!(f_o_hom(&g.multicat, &[0, 0], &[1]).len(), 1);
    let m = Generator {
        name: "m".into(),
        sources: vec![0, 0],
        target: 0,
        table: vec![0],
    };
    let r = generated(vec!["c".into()], vec![1], vec![m], 10);
    assert!(matches!(r, Err(comprehend::Error::SupportExceeded(10))));
}

#[test]
fn f_o_composition_is_associative_and_unital() {
    let mut triples = 0;
    for (m, _) in generated_sample(20, 41) {
        let ws = words(m.num_colours(), 2);
        for u in &words(m.num_colours(), 3) {
            for a in [f_o_identity(&m, u)].into_iter().chain(f_o_hom(&m, u, u)) {
                assert_eq!(f_o_compose(&m, &f_o_identity(&m, u), &a).unwrap(), a);
                assert_eq!(f_o_compose(&m, &a, &f_o_identity(&m, u)).unwrap(), a);
            }
            for v in &ws {
                let ab = f_o_hom(&m, u, v);
                for w in &ws {
                    let bc = f_o_hom(&m, v, w);
                    for x in &ws {
                        let cd = f_o_hom(&m, w, x);
                        for a in ab.iter().take(4) {
                            for b in bc.iter().take(4) {
                                for c in cd.iter().take(4) {
                                    let l = f_o_compose(&m, &f_o_compose(&m, c, b).unwrap(), a)
                                        .unwrap();
                                    let r = f_o_compose(&m, c, &f_o_compose(&m, b, a).unwrap())
                                        .unwrap();
                                    assert_eq!(l, r);
                                    triples += 1;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(triples > 500, "{triples}");
}

#[test]
fn pushforward_along_units_counts_symmetry_orbits() {
    for p in multicat_corpus(&cats(), 20, 43) {
        let (u, incl) = p.units_only();
        let f = MultiFunctor::new(Arc::new(u), p.clone(), p.colours().collect(), incl).unwrap();
        let k = multifunctor_pushforward_terminal(&f, BOUND).unwrap();
        // orbits of operations into c under the transpositions
        let mut seen = vec![false; p.num_ops()];
        let mut orbits = vec![0; p.num_colours()];
        for g in p.op_ids() {
            if seen[g] {
                continue;
            }
            orbits[p.target(g)] += 1;
            let mut queue = VecDeque::from([g]);
            seen[g] = true;
            while let Some(h) = queue.pop_front() {
                for j in 0..p.arity(h).saturating_sub(1) {
                    let s = p.swap(h, j);
                    if !seen[s] {
                        seen[s] = true;
                        queue.push_back(s);
                    }
                }
            }
        }
        assert_eq!(k.algebra.sizes(), orbits.as_slice());
    }
}

#[test]
fn pushforward_from_a_point_separates_unrelated_operations() {
    // a, b; m: (a, a) → b and n: a → b, nothing composes into them
    let gens = vec![
        Generator {
            name: "m".into(),
            sources: vec![0, 0],
            target: 1,
            table: vec![0],
        },
        Generator {
            name: "n".into(),
            sources: vec![0],
            target: 1,
            table: vec![1],
        },
    ];
    let g = generated(vec!["a".into(), "b".into()], vec![1, 2], gens, 20).unwrap();
    let p = g.multicat.clone();
    let point = Arc::new(FinMulticategory::from_category(&comprehend::zoo::terminal()));
    let a = p.colour_by_name("a").unwrap();
    let f = MultiFunctor::new(point, p.clone(), vec![a], vec![p.unit(a)]).unwrap();
    let k = multifunctor_pushforward_terminal(&f, BOUND).unwrap();
    // at b: vertices (a; n) and ((a, a); m) lie in different components
    assert_eq!(k.algebra.sizes(), &[1, 2]);
    assert!(!is_connected_multi(&f));
    let id = MultiFunctor::identity(p);
    assert_eq!(
        multifunctor_pushforward_terminal(&id, BOUND)
            .unwrap()
            .algebra
            .sizes(),
        &[1, 1]
    );
}

#[test]
fn multicoverings_compose_and_cancel() {
    let ms = multicat_corpus(&cats(), 12, 47);
    let (mut composed, mut cancelled) = (0, 0);
    for m in &ms {
        for a in algebra_family(m, 2, 3, 50_000) {
            let el = elements_multicat(&a).unwrap();
            let p = el.projection.clone();
            for b in algebra_family(&el.multicat, 1, 3, 50_000) {
                let q = elements_multicat(&b).unwrap().projection;
                assert!(is_multicovering(&p.after(&q).unwrap()));
                composed += 1;
            }
            for x in ms.iter().take(12) {
                let mut seen = 0;
                let _ = for_each_multifunctor(x, &el.multicat, None, 50_000, |f| {
                    assert_eq!(is_multicovering(&p.after(f).unwrap()), is_multicovering(f));
                    cancelled += 1;
                    seen += 1;
                    if seen < 4 {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(())
                    }
                });
            }
        }
    }
    assert!(composed > 50 && cancelled > 50, "{composed} {cancelled}");
}

#[test]
fn algebras_over_elements_are_algebras_over_the_base() {
    let mut compared = 0;
    for (m, a) in generated_sample(30, 53) {
        let el = elements_multicat(&a).unwrap();
        let ne = el.multicat.num_colours();
        if ne > 3 {
            continue;
        }
        let choices = vec![3usize; ne];
        let profiles = choices.iter().product::<usize>();
        for code in 0..profiles {
            let mut n = Vec::with_capacity(ne);
            let mut r = code;
            for _ in 0..ne {
                n.push(r % 3);
                r /= 3;
            }
            let mut over_el = 0usize;
            if for_each_algebra(&el.multicat, &n, 200_000, |_| {
                over_el += 1;
                ControlFlow::Continue(())
            })
            .is_err()
            {
                continue;
            }
            // the matching algebras over the base: blocks of sizes n over each element
            let sizes: Vec<usize> = m
                .colours()
                .map(|c| (0..a.size(c)).map(|x| n[el.colour(c, x)]).sum())
                .collect();
            let block_map: Vec<Vec<usize>> = m
                .colours()
                .map(|c| {
                    (0..a.size(c))
                        .flat_map(|x| std::iter::repeat_n(x, n[el.colour(c, x)]))
                        .collect()
                })
                .collect();
            let mut over_base = 0usize;
            if for_each_algebra(&m, &sizes, 2_000_000, |x| {
                if AlgebraMorphism::new(x.clone(), a.clone(), block_map.clone()).is_ok() {
                    over_base += 1;
                }
                ControlFlow::Continue(())
            })
            .is_err()
            {
                continue;
            }
            assert_eq!(over_el, over_base, "{n:?}");
            compared += 1;
        }
    }
    assert!(compared >= 100, "{compared}");
}
