//! Randomised invariants. Inputs are drawn from small fixed pools so that
//! shrinking stays meaningful: an index into the pool plus the free data.

use std::sync::{Arc, OnceLock};

use comprehend::cat_scheme::{elements, left_kan, DiagramScheme};
use comprehend::census::{corpus, CorpusSpec};
use comprehend::colimit::colimit_set_diagram;
use comprehend::comma::num_components;
use comprehend::diagram::diagram_iso;
use comprehend::group::{FinGroup, GSet};
use comprehend::samples::{diagram_family, functors_between};
use comprehend::scheme::{check_counit_invertible, factorise, is_connected, is_covering};
use comprehend::set_scheme::{image_factorise, FinSet, PowersetScheme, SetMap};
use comprehend::{Cat, Functor, SetDiagram, Variance};
use proptest::prelude::*;

fn pool() -> &'static [Cat] {
    static POOL: OnceLock<Vec<Cat>> = OnceLock::new();
    POOL.get_or_init(|| {
        corpus(&CorpusSpec {
            max_objects: 3,
            max_morphisms: 5,
            exhaustive_morphisms: 5,
            samples_per_size: 0,
            seed: 0,
        })
    })
}

/// A covariant diagram on `c` with carriers of size below 3, built from free
/// choices of where generators go and closed up by composition when that is
/// consistent; otherwise a member of the standard family.
fn diagram_from(c: &Cat, sizes: &[usize], seeds: &[usize]) -> SetDiagram {
    let sizes: Vec<usize> = c.objects().map(|a| sizes[a % sizes.len()]).collect();
    let action: Vec<Vec<usize>> = c
        .morphisms()
        .map(|f| {
            let (s, t) = (c.src(f), c.tgt(f));
            (0..sizes[s])
                .map(|x| {
                    if c.is_identity(f) {
                        x
                    } else if sizes[t] == 0 {
                        0
                    } else {
                        seeds[(f * 3 + x) % seeds.len()] % sizes[t]
                    }
                })
                .collect()
        })
        .collect();
    match SetDiagram::new(c.clone(), Variance::Covariant, sizes.clone(), action) {
        Ok(x) => x,
        Err(_) => {
            let family = diagram_family(c, Variance::Covariant);
            family[seeds[0] % family.len()].clone()
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn any_diagram() -> impl Strategy<Value = SetDiagram> {
    (
        0..pool().len(),
        prop::collection::vec(0usize..3, 1..4),
        prop::collection::vec(0usize..6, 1..12),
    )
        .prop_map(|(i, sizes, seeds)| diagram_from(&pool()[i], &sizes, &seeds))
}

fn any_set_map() -> impl Strategy<Value = SetMap> {
    (0usize..6, 1usize..5).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..m, n)
            .prop_map(move |map| SetMap::new(FinSet::new(n), FinSet::new(m), map).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn powerset_factorisation_is_the_image_factorisation(f in any_set_map()) {
        let s = PowersetScheme;
        let fac = factorise(&s, &f).unwrap();
        prop_assert_eq!(fac.right.after(&fac.left).unwrap(), f.clone());
        prop_assert!(fac.left.is_surjective());
        prop_assert!(fac.right.is_injective());
        let (epi, mono) = image_factorise(&f);
        prop_assert_eq!(fac.middle.size(), epi.cod().size());
        prop_assert_eq!(fac.right.image(), mono.image());
    }

    #[test]
    fn components_of_elements_count_the_colimit(x in any_diagram()) {
        // π₀ of the category of elements is the colimit of the diagram
        let el = elements(&x).unwrap();
        let col = colimit_set_diagram(&x).unwrap();
        prop_assert_eq!(num_components(&el.category), col.size);
    }

    #[test]
    fn elements_projections_are_coverings_with_invertible_counits(x in any_diagram()) {
        let s = DiagramScheme::COPRESHEAF;
        let p = comprehend::scheme::Scheme::elements(&s, &x).unwrap();
        prop_assert!(is_covering(&s, &p).unwrap().is_some());
        prop_assert!(check_counit_invertible(&s, &x).unwrap());
    }

    #[test]
    fn kan_extension_along_the_identity_is_the_diagram(x in any_diagram()) {
        let id = Functor::identity(x.base().clone());
        let k = left_kan(&id, &x).unwrap();
        prop_assert!(diagram_iso(&k.diagram, &x).unwrap().is_some());
    }

    #[test]
    fn factorisation_parts_are_connected_and_covering(i in 0..pool().len(), j in 0..pool().len(), pick in 0usize..64) {
        let (a, b) = (&pool()[i], &pool()[j]);
        let fs = functors_between(a, b, 64, 100_000);
        prop_assume!(!fs.is_empty());
        let f = &fs[pick % fs.len()];
        for s in [DiagramScheme::COPRESHEAF, DiagramScheme::PRESHEAF] {
            let fac = factorise(&s, f).unwrap();
            prop_assert_eq!(&fac.right.after(&fac.left).unwrap(), f);
            prop_assert!(is_connected(&s, &fac.left).unwrap().is_some());
            prop_assert!(is_covering(&s, &fac.right).unwrap().is_some());
        }
    }

    #[test]
    fn orbits_partition_a_group_set(n in 1usize..7, k in 1usize..5, shift in 0usize..7) {
        // Z/n acting on Z/k through a generator's image, when that is an action
        let g = Arc::new(FinGroup::cyclic(n));
        let r = shift % k;
        prop_assume!((r * n) % k == 0);
        let act: Vec<Vec<usize>> = (0..n).map(|e| (0..k).map(|x| (x + e * r) % k).collect()).collect();
        let x = GSet::new(g, act).unwrap();
        let orbits = x.orbits();
        let mut all: Vec<usize> = orbits.concat();
        all.sort_unstable();
        prop_assert_eq!(all, (0..k).collect::<Vec<_>>());
        let expected = if r == 0 { k } else { gcd(r, k) };
        prop_assert_eq!(orbits.len(), expected);
    }
}
