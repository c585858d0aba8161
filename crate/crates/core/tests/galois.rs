//! Covering theory on the corpus: fundamental groups against the Yoneda
//! oracle, the universal property of universal covers, component counts,
//! and the coverings / π₁-sets correspondence on small connected groupoids.

use std::ops::ControlFlow;
use std::sync::Arc;

use comprehend::cat_scheme::{is_discrete_opfibration, DiagramScheme};
use comprehend::census::{corpus, CorpusSpec};
use comprehend::functor::{for_each_functor, Constraints};
use comprehend::galois::*;
use comprehend::group::FinGroup;
use comprehend::samples::{diagram_family, functor_sample};
use comprehend::scheme::is_connected;
use comprehend::{zoo, Cat, Variance};

fn based_corpus() -> Vec<Cat> {
    corpus(&CorpusSpec {
        max_objects: 3,
        max_morphisms: 5,
        exhaustive_morphisms: 5,
        samples_per_size: 0,
        seed: 0,
    })
}

fn connected_groupoids() -> Vec<(String, Cat)> {
    let mut out: Vec<(String, Cat)> = FinGroup::small_groups(6)
        .into_iter()
        .map(|g| {
            (
                format!("B(order {})", g.order()),
                Arc::new(zoo::delooping(&g)) as Cat,
            )
        })
        .collect();
    out.push(("EZ2".into(), Arc::new(zoo::codiscrete(2))));
    out.push(("EZ3".into(), Arc::new(zoo::codiscrete(3))));
    out.push((
        "BZ2xEZ2".into(),
        Arc::new(zoo::connected_groupoid(&FinGroup::cyclic(2), 2)),
    ));
    out
}

#[test]
fn deck_group_matches_yoneda_oracle() {
    let mut checked = 0;
    for a in based_corpus() {
        for alpha in a.objects() {
            for v in [Variance::Covariant, Variance::Contravariant] {
                let pi = pi1(&a, alpha, v, 1_000_000).unwrap();
                let oracle = pi1_oracle(&a, alpha, v).unwrap();
                assert!(
                    pi.group.isomorphism_to(&oracle).is_some(),
                    "{a:?} at {alpha}"
                );
                // the naming is compatible: deck[i] ↦ loops[i] is the isomorphism
                for i in pi.group.elements() {
                    for j in pi.group.elements() {
                        let k = pi.group.mul(i, j);
                        let (gi, gj) = (pi.loops[i], pi.loops[j]);
                        let expect = match v {
                            Variance::Covariant => a.comp(gj, gi),
                            Variance::Contravariant => a.comp(gi, gj),
                        };
                        assert_eq!(pi.loops[k], expect);
                    }
                }
                let u = pi.universal.cover.total().clone();
                let pu = pi1(&u, pi.universal.base_point, v, 1_000_000).unwrap();
                assert_eq!(pu.group.order(), 1);
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked}");
}

#[test]
fn universal_cover_lifts_uniquely() {
    let mut lifts = 0;
    for a in based_corpus().iter().take(60) {
        for alpha in a.objects() {
            let u = universal_cover(a, alpha, Variance::Covariant).unwrap();
            for x in diagram_family(a, Variance::Covariant) {
                let p = CoveringOver::of_diagram(&x).unwrap();
                for beta in p.fibre(alpha) {
                    let mut n = 0;
                    for_each_functor(
                        u.cover.total(),
                        p.total(),
                        &Constraints::over(&p.map, &u.cover.map),
                        1_000_000,
                        |h| {
                            if h.obj(u.base_point) == beta {
                                n += 1;
                            }
                            ControlFlow::Continue(())
                        },
                    )
                    .unwrap();
                    assert_eq!(n, 1, "{a:?} {alpha} {x:?} {beta}");
                    lifts += 1;
                }
            }
        }
    }
    assert!(lifts > 200, "{lifts}");
}

#[test]
fn components_and_discrete_objects() {
    let cs = based_corpus();
    let s = DiagramScheme::COPRESHEAF;
    for f in functor_sample(&cs, 150, 4, 21) {
        if is_connected(&s, &f).unwrap().is_some() {
            let (pa, pb) = (
                pi0_object(f.dom()).unwrap().0,
                pi0_object(f.cod()).unwrap().0,
            );
            assert_eq!(pa.num_objects(), pb.num_objects(), "{f:?}");
        }
        if is_discrete_object(f.dom()).unwrap() && is_discrete_object(f.cod()).unwrap() {
            assert!(is_discrete_opfibration(&f));
        }
    }
    for c in &cs {
        let (d, q) = pi0_object(c).unwrap();
        assert!(d.is_discrete());
        assert_eq!(d.num_objects(), comprehend::comma::num_components(c));
        assert!(is_connected(&s, &q).unwrap().is_some());
        assert!(is_locally_connected(c).unwrap());
    }
}

#[test]
fn epi_mono_factorisation_of_coverings() {
    let cs = based_corpus();
    for b in cs.iter().take(80) {
        for x in diagram_family(b, Variance::Covariant) {
            let p = CoveringOver::of_diagram(&x).unwrap();
            let em = epi_mono_factorise(&p).unwrap();
            assert_eq!(em.mono.after(&em.epi).unwrap(), p.map);
            assert!(is_discrete_opfibration(&em.epi) && is_discrete_opfibration(&em.mono));
            // every component of the middle is hit
            let (_, q) = pi0_object(em.epi.cod()).unwrap();
            let mut hit = vec![false; q.cod().num_objects()];
            for e in p.total().objects() {
                hit[q.obj(em.epi.obj(e))] = true;
            }
            assert!(hit.iter().all(|&h| h));
        }
    }
}

#[test]
fn basepoints_give_isomorphic_groups() {
    for (name, a) in connected_groupoids() {
        let first = pi1(&a, 0, Variance::Covariant, 1_000_000).unwrap();
        for alpha in a.objects() {
            let other = pi1(&a, alpha, Variance::Covariant, 1_000_000).unwrap();
            assert!(first.group.isomorphism_to(&other.group).is_some(), "{name}");
        }
    }
}

#[test]
fn galois_correspondence_on_connected_groupoids() {
    for (name, a) in connected_groupoids() {
        if a.num_morphisms() > 6 {
            continue;
        }
        let r = galois_check(&a, 0, 3, 10_000_000).unwrap();
        assert!(r.passed(), "{name}: {r:?}");
        assert_eq!(r.gsets, r.coverings);
    }
}

#[test]
fn fundamental_groups_of_deloopings() {
    let s3 = FinGroup::symmetric3();
    let groups = [
        FinGroup::cyclic(2),
        FinGroup::cyclic(3),
        FinGroup::klein(),
        s3,
    ];
    for g in groups {
        let bg: Cat = Arc::new(zoo::delooping(&g));
        let pi = pi1(&bg, 0, Variance::Covariant, 1_000_000).unwrap();
        assert!(pi.group.isomorphism_to(&g).is_some());
        assert!(is_principal(&pi.universal.cover, 1_000_000).unwrap());
    }
}
