//! Theorem-level properties of the two diagram schemes and the powerset
//! scheme on a small corpus.

use std::ops::ControlFlow;
use std::sync::Arc;

use comprehend::cat_scheme::{
    is_discrete_fibration, is_discrete_opfibration, is_final, is_initial, BrokenScheme,
    DiagramScheme,
};
use comprehend::census::{corpus, CorpusSpec};
use comprehend::functor::{enumerate_functors_with, Constraints};
use comprehend::samples::{diagram_family, functor_sample};
use comprehend::scheme::{self, *};
use comprehend::set_scheme::{FinSet, PowersetScheme, Subset};
use comprehend::{Cat, Functor, Variance};

fn small_corpus() -> Vec<Cat> {
    corpus(&CorpusSpec {
        max_objects: 3,
        max_morphisms: 4,
        exhaustive_morphisms: 4,
        samples_per_size: 0,
        seed: 1,
    })
}

fn schemes() -> [DiagramScheme; 2] {
    [DiagramScheme::COPRESHEAF, DiagramScheme::PRESHEAF]
}

#[test]
fn factorisations_are_sound_and_predicates_agree() {
    let cs = small_corpus();
    let fs = functor_sample(&cs, 120, 4, 7);
    assert!(fs.len() > 200);
    for s in schemes() {
        for f in &fs {
            let fac = factorise(&s, f).unwrap();
            assert!(is_connected(&s, &fac.left).unwrap().is_some(), "{f:?}");
            assert!(is_covering(&s, &fac.right).unwrap().is_some(), "{f:?}");
            let (cov, conn) = (
                is_covering(&s, f).unwrap().is_some(),
                is_connected(&s, f).unwrap().is_some(),
            );
            match s.variance {
                Variance::Covariant => {
                    assert_eq!(cov, is_discrete_opfibration(f));
                    assert_eq!(conn, is_initial(f));
                }
                Variance::Contravariant => {
                    assert_eq!(cov, is_discrete_fibration(f));
                    assert_eq!(conn, is_final(f));
                }
            }
        }
    }
}

#[test]
fn frobenius_matches_beck_chevalley_pointwise() {
    // f_!(X × f*Y) → f_!X × Y is the Beck–Chevalley map for the square of
    // el(Y) pulled back along f, evaluated at X
    let cs = small_corpus();
    let fs = functor_sample(&cs, 60, 3, 11);
    for s in schemes() {
        let (mut pass, mut fail) = (0, 0);
        for f in &fs {
            let (a, b) = (f.dom().clone(), f.cod().clone());
            let safe = is_covering(&s, f).unwrap().is_some() || b.is_groupoid();
            for y in diagram_family(&b, s.variance).iter().skip(1) {
                let p = s.elements(y).unwrap();
                for x in diagram_family(&a, s.variance) {
                    let frob = check_frobenius(&s, f, &x, y);
                    let bc = check_beck_chevalley(&s, f, &p, &x);
                    assert_eq!(frob.passed(), bc.passed(), "{f:?} {x:?} {y:?}");
                    if safe {
                        assert!(frob.passed(), "{f:?} {x:?} {y:?}");
                    }
                    if frob.passed() {
                        pass += 1;
                    } else {
                        fail += 1;
                    }
                }
            }
        }
        assert!(pass > 1000 && fail > 0, "{pass} {fail}");
    }
}

#[test]
fn connected_stability_over_groupoids() {
    let cs = small_corpus();
    let fs = functor_sample(&cs, 120, 4, 13);
    for s in schemes() {
        let (mut pass, mut fail) = (0, 0);
        for l in &fs {
            if is_connected(&s, l).unwrap().is_none() {
                continue;
            }
            for y in diagram_family(l.cod(), s.variance).iter().skip(1) {
                let r = s.elements(y).unwrap();
                let out = check_connected_stability(&s, l, &r);
                if l.cod().is_groupoid() {
                    assert_eq!(out, CheckOutcome::Pass, "{l:?} {y:?}");
                }
                if out.passed() {
                    pass += 1;
                } else {
                    fail += 1;
                }
            }
        }
        assert!(pass > 50 && fail > 0, "{pass} {fail}");
    }
}

/// `M = {1, e}` with `e² = e`. Pushing forward along `⋆ → BM`, the left side
/// of the comparison is the free M-set on `Y = M`, the right side is `M × M`
/// with the diagonal action; `e` fixes two elements of the first and one of
/// the second.
#[test]
fn frobenius_fails_for_an_idempotent() {
    let bm: Cat = Arc::new(comprehend::zoo::one_object(
        &[vec![0, 1], vec![1, 1]],
        0,
        vec!["1".into(), "e".into()],
    ));
    let star: Cat = Arc::new(comprehend::zoo::terminal());
    let f = Functor::pick_object(star.clone(), bm.clone(), 0);
    let s = DiagramScheme::COPRESHEAF;
    let x = comprehend::SetDiagram::terminal(star, Variance::Covariant);
    let y = comprehend::SetDiagram::representable(bm.clone(), Variance::Covariant, 0);
    let lhs = s
        .pushforward(&f, &x.product(&s.pullback(&f, &y).unwrap()).unwrap())
        .unwrap();
    let rhs = s.pushforward(&f, &x).unwrap().product(&y).unwrap();
    let e = bm.morphism_by_name("e").unwrap();
    let fixed = |d: &comprehend::SetDiagram| (0..d.size(0)).filter(|&i| d.act(e, i) == i).count();
    assert_eq!((lhs.size(0), rhs.size(0)), (4, 4));
    assert_eq!((fixed(&lhs), fixed(&rhs)), (2, 1));
    assert!(!check_frobenius(&s, &f, &x, &y).passed());
    assert!(!check_beck_chevalley(&s, &f, &s.elements(&y).unwrap(), &x).passed());
}

#[test]
fn diagonal_fillers_are_unique() {
    let cs = small_corpus();
    let fs = functor_sample(&cs, 80, 3, 3);
    let s = DiagramScheme::COPRESHEAF;
    let mut squares = 0;
    for l in &fs {
        if is_connected(&s, l).unwrap().is_none() {
            continue;
        }
        let (a, b) = (l.dom().clone(), l.cod().clone());
        for d in cs.iter().take(12) {
            for bottom in comprehend::samples::functors_between(&b, d, 2, 10_000) {
                for y in diagram_family(d, s.variance).iter().skip(1).take(3) {
                    let r = s.elements(y).unwrap();
                    let bl = bottom.after(l).unwrap();
                    let tops =
                        enumerate_functors_with(&a, r.dom(), &Constraints::over(&r, &bl), 10_000)
                            .unwrap();
                    for top in tops.iter().take(2) {
                        let g = diagonal_filler(&s, l, &r, top, &bottom).unwrap();
                        let all = all_fillers(&s, l, &r, top, &bottom, 100_000).unwrap();
                        assert_eq!(all, vec![g]);
                        squares += 1;
                    }
                }
            }
        }
    }
    assert!(squares > 50, "{squares}");
}

#[test]
fn consistency_and_elements_lemma() {
    let cs = small_corpus();
    let s = DiagramScheme::COPRESHEAF;
    for b in cs.iter().take(25) {
        for y in diagram_family(b, s.variance) {
            let p = s.elements(&y).unwrap();
            let el = p.dom().clone();
            for z in diagram_family(&el, s.variance).iter().take(4) {
                let q = s.elements(z).unwrap();
                assert!(check_consistency_pair(&s, &q, &p).passed());
            }
            for d in cs.iter().take(10) {
                for h in comprehend::samples::functors_between(d, b, 2, 10_000) {
                    let (points, lifts) = check_elements_lemma(&s, &h, &y, 100_000).unwrap();
                    assert_eq!(points, lifts);
                }
            }
            assert!(check_counit_invertible(&s, &y).unwrap());
        }
    }
}

#[test]
fn adjunction_bijection() {
    let cs = small_corpus();
    let fs = functor_sample(&cs, 40, 2, 5);
    for s in schemes() {
        for f in fs.iter().take(40) {
            for x in diagram_family(f.dom(), s.variance).iter().take(3) {
                for y in diagram_family(f.cod(), s.variance).iter().take(3) {
                    assert!(check_adjunction(&s, f, x, y, 100_000).unwrap());
                }
            }
        }
    }
}

#[test]
fn broken_scheme_fails_the_checks() {
    let d2: Cat = Arc::new(comprehend::zoo::discrete(2));
    let star: Cat = Arc::new(comprehend::zoo::terminal());
    let fold = Functor::constant(d2.clone(), star.clone(), 0);
    let b = BrokenScheme;
    assert!(!check_consistency_pair(&b, &Functor::identity(d2.clone()), &fold).passed());
    let arrow: Cat = Arc::new(comprehend::zoo::walking_arrow());
    let to_arrow = Functor::pick_object(star.clone(), arrow.clone(), 0);
    let y = comprehend::SetDiagram::terminal(arrow.clone(), Variance::Covariant);
    assert!(!check_frobenius(
        &b,
        &to_arrow,
        &comprehend::SetDiagram::terminal(star.clone(), Variance::Covariant),
        &y
    )
    .passed());
}

#[test]
fn powerset_frobenius_exhaustive() {
    let s = PowersetScheme;
    for n in 0..=4 {
        for m in 0..=4 {
            let (a, b) = (FinSet::new(n), FinSet::new(m));
            s.for_each_mor(&a, &b, None, 10_000, &mut |f| {
                for x in Subset::all(&a) {
                    for y in Subset::all(&b) {
                        assert!(check_frobenius(&s, f, &x, &y).passed());
                    }
                }
                ControlFlow::Continue(())
            })
            .unwrap();
        }
    }
    let _ = scheme::comprehension::<PowersetScheme>;
}
