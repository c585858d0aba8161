//! The corpus runner: every property of the library checked over generated
//! instances, one result per criterion. Instances fan out over rayon and are
//! reduced in input order, so results do not depend on scheduling.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use comprehend::cat_scheme::{left_kan, BrokenScheme, DiagramScheme};
use comprehend::census::{corpus, CorpusSpec};
use comprehend::colimit::colimit_set_diagram;
use comprehend::comma::comma;
use comprehend::functor::{enumerate_functors_with, relabel, Constraints};
use comprehend::galois::{
    borel, coverings_isomorphic, coverings_up_to_iso, galois_check, monodromy_fibre, pi1,
    pi1_oracle,
};
use comprehend::group::{gsets_up_to_iso, FinGroup};
use comprehend::multicat::samples::{
    algebra_family, generated_sample, multicat_corpus, multifunctor_sample,
};
use comprehend::multicat::{
    elements_multicat, f_o_hom, factorise_multi, is_multicovering, multifunctor_pushforward,
    multifunctor_pushforward_terminal, ColourId, FinMulticategory, MultiAlgebra, MultiFunctor,
    MultiScheme, OpId,
};
use comprehend::samples::{diagram_family, functor_sample, functors_between};
use comprehend::scheme::{
    all_fillers, check_beck_chevalley, check_connected_stability, check_consistency_pair,
    check_elements_lemma, check_frobenius, diagonal_filler, factorisation_comparison, factorise,
    is_connected, is_covering, CheckOutcome, Scheme,
};
use comprehend::set_scheme::{
    for_each_set_map, image_factorise, FinSet, PowersetScheme, SetMap, Subset,
};
use comprehend::{zoo, Cat, Error, Functor, SetDiagram, Variance};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, CliResult};

#[derive(Clone, Debug)]
pub struct SuiteSpec {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub seed: u64,
    pub budget: usize,
}

impl Default for SuiteSpec {
    fn default() -> Self {
        SuiteSpec {
            max_objects: 3,
            max_morphisms: 8,
            seed: 0,
            budget: 200_000,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    /// instances abandoned on the enumeration budget
    pub skipped: usize,
    pub details: BTreeMap<String, usize>,
    pub examples: Vec<String>,
}

#[derive(Clone, Debug, Default)]
struct Tally {
    checked: usize,
    failures: usize,
    skipped: usize,
    details: BTreeMap<String, usize>,
    examples: Vec<String>,
}

impl Tally {
    fn pass(&mut self) {
        self.checked += 1;
    }

    fn fail(&mut self, why: String) {
        self.checked += 1;
        self.failures += 1;
        if self.examples.len() < 5 {
            self.examples.push(why);
        }
    }

    fn check(&mut self, ok: bool, why: impl FnOnce() -> String) {
        if ok {
            self.pass()
        } else {
            self.fail(why())
        }
    }

    fn outcome(&mut self, o: &CheckOutcome, what: impl FnOnce() -> String) {
        match o {
            CheckOutcome::Pass => self.pass(),
            CheckOutcome::Fail(s) => self.fail(format!("{}: {s}", what())),
            CheckOutcome::Budget => self.skipped += 1,
        }
    }

    fn error(&mut self, e: Error, what: impl FnOnce() -> String) {
        if e.is_budget() {
            self.skipped += 1;
        } else {
            self.fail(format!("{}: {e}", what()));
        }
    }

    fn count(&mut self, key: &str, n: usize) {
        *self.details.entry(key.to_string()).or_default() += n;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failures += other.failures;
        self.skipped += other.skipped;
        for (k, v) in other.details {
            *self.details.entry(k).or_default() += v;
        }
        for e in other.examples {
            if self.examples.len() < 5 {
                self.examples.push(e);
            }
        }
        self
    }

    fn finish(self, id: u32, title: &str, passed: bool) -> CriterionResult {
        CriterionResult {
            id,
            title: title.into(),
            passed,
            checked: self.checked,
            failures: self.failures,
            skipped: self.skipped,
            details: self.details,
            examples: self.examples,
        }
    }
}

fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T) -> Tally + Sync + Send) -> Tally {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .fold(Tally::default(), Tally::merge)
}

const SCHEMES: [DiagramScheme; 2] = [DiagramScheme::COPRESHEAF, DiagramScheme::PRESHEAF];

pub const SUITES: &[&str] = &[
    "theorems",
    "orthogonality",
    "factorisation",
    "consistency",
    "frobenius",
    "kan",
    "elements",
    "galois",
    "multicat",
];

/// The shared inputs of one run.
pub struct Corpus {
    pub spec: SuiteSpec,
    pub categories: Vec<Cat>,
    pub functors: Vec<Functor>,
}

impl Corpus {
    pub fn new(spec: SuiteSpec) -> Corpus {
        let categories = corpus(&CorpusSpec {
            max_objects: spec.max_objects,
            max_morphisms: spec.max_morphisms,
            exhaustive_morphisms: spec.max_morphisms.min(5),
            samples_per_size: 4,
            seed: spec.seed,
        });
        let functors = functor_sample(&categories, 240, 3, spec.seed);
        Corpus {
            spec,
            categories,
            functors,
        }
    }

    /// Up to `n` corpus categories, seeded.
    fn some_categories(&self, n: usize, salt: u64) -> Vec<Cat> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.spec.seed ^ salt);
        let mut cs = self.categories.clone();
        cs.shuffle(&mut rng);
        cs.truncate(n);
        cs
    }
}

pub fn run_suite(name: &str, spec: SuiteSpec) -> CliResult<Vec<CriterionResult>> {
    let ids: Vec<u32> = match name {
        "theorems" => (1..=9).collect(),
        "orthogonality" => vec![1],
        "factorisation" => vec![2],
        "consistency" => vec![3],
        "frobenius" => vec![4],
        "kan" => vec![5],
        "elements" => vec![6],
        "galois" => vec![7, 8],
        "multicat" => vec![9],
        _ => {
            return invalid(format!(
                "unknown suite {name}; expected one of {}",
                SUITES.join(", ")
            ))
        }
    };
    let c = Corpus::new(spec);
    Ok(ids.into_iter().map(|id| run_criterion(&c, id)).collect())
}

pub fn run_criterion(c: &Corpus, id: u32) -> CriterionResult {
    match id {
        1 => orthogonality(c),
        2 => factorisation(c),
        3 => consistency(c),
        4 => frobenius(c),
        5 => kan_oracle(c),
        6 => elements_lemma(c),
        7 => galois(c),
        8 => borel_round_trip(c),
        9 => multicategories(c),
        _ => Tally::default().finish(id, "unknown criterion", false),
    }
}

// 1

fn orthogonality(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let targets = c.some_categories(10, 1);
    let work: Vec<(DiagramScheme, &Functor)> = SCHEMES
        .iter()
        .flat_map(|&s| c.functors.iter().map(move |f| (s, f)))
        .collect();
    let t = par_tally(&work, |&(s, l)| {
        let mut t = Tally::default();
        match is_connected(&s, l) {
            Ok(Some(_)) => {}
            Ok(None) => return t,
            Err(e) => {
                t.error(e, || format!("{l:?}"));
                return t;
            }
        }
        let a = l.dom();
        for d in targets.iter().take(4) {
            for bottom in functors_between(l.cod(), d, 2, budget) {
                for y in diagram_family(d, s.variance).iter().skip(1).take(3) {
                    let Ok(r) = s.elements(y) else { continue };
                    let Ok(bl) = bottom.after(l) else { continue };
                    let tops = match enumerate_functors_with(
                        a,
                        r.dom(),
                        &Constraints::over(&r, &bl),
                        budget,
                    ) {
                        Ok(tops) => tops,
                        Err(e) => {
                            t.error(e, || "tops".into());
                            continue;
                        }
                    };
                    for top in tops.iter().take(2) {
                        let all = match all_fillers(&s, l, &r, top, &bottom, budget) {
                            Ok(all) => all,
                            Err(e) => {
                                t.error(e, || format!("fillers for {l:?}"));
                                continue;
                            }
                        };
                        let computed = diagonal_filler(&s, l, &r, top, &bottom);
                        let ok = all.len() == 1 && computed.as_ref().is_ok_and(|g| *g == all[0]);
                        t.check(ok, || {
                            format!("{} square over {l:?} has {} fillers", s.name(), all.len())
                        });
                        t.count(s.name(), 1);
                    }
                }
            }
        }
        t
    });
    let enough = t.checked >= 500;
    let ok = t.failures == 0 && enough;
    t.finish(
        1,
        "unique diagonal fillers for (connected, covering) squares",
        ok,
    )
}

// 2

/// The same category with objects and morphisms renumbered, and the
/// isomorphism onto it.
fn shuffled(c: &Cat, rng: &mut ChaCha8Rng) -> (Cat, Functor) {
    let mut sigma: Vec<usize> = c.objects().collect();
    let mut tau: Vec<usize> = c.morphisms().collect();
    sigma.shuffle(rng);
    tau.shuffle(rng);
    relabel(c, &sigma, &tau)
}

fn factorise_and_check<S: Scheme>(s: &S, f: &S::Mor, t: &mut Tally) -> Option<(S::Mor, S::Mor)> {
    match factorise(s, f) {
        Ok(fac) => {
            let conn = is_connected(s, &fac.left).map(|x| x.is_some());
            let cov = is_covering(s, &fac.right).map(|x| x.is_some());
            let back = s.compose(&fac.right, &fac.left).map(|g| g == *f);
            let ok = conn == Ok(true) && cov == Ok(true) && back == Ok(true);
            t.check(ok, || format!("{} factorisation of {f:?}", s.name()));
            t.count(s.name(), 1);
            ok.then_some((fac.left, fac.right))
        }
        Err(e) => {
            t.error(e, || format!("{} factorisation of {f:?}", s.name()));
            None
        }
    }
}

fn set_maps(max: usize, budget: usize) -> Vec<SetMap> {
    let mut out = Vec::new();
    for n in 0..=max {
        for m in 0..=max {
            let _ = for_each_set_map(&FinSet::new(n), &FinSet::new(m), None, budget, &mut |f| {
                out.push(f.clone());
                ControlFlow::Continue(())
            });
        }
    }
    out
}

fn multi_sample(c: &Corpus, count: usize) -> Vec<MultiFunctor> {
    let cats: Vec<Cat> = c
        .categories
        .iter()
        .filter(|x| x.num_morphisms() <= 4)
        .take(20)
        .cloned()
        .collect();
    let ms = multicat_corpus(&cats, count, c.spec.seed);
    multifunctor_sample(&ms, 3 * count, 2, c.spec.seed)
}

fn factorisation(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let work: Vec<(DiagramScheme, usize)> = SCHEMES
        .iter()
        .flat_map(|&s| (0..c.functors.len()).map(move |i| (s, i)))
        .collect();
    let mut t = par_tally(&work, |&(s, i)| {
        let f = &c.functors[i];
        let mut t = Tally::default();
        if let Some((l, r)) = factorise_and_check(&s, f, &mut t) {
            // every fourth one: uniqueness against a renumbered copy
            if i % 4 == 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(c.spec.seed ^ i as u64);
                let (_, iso) = shuffled(l.cod(), &mut rng);
                let inv = iso.inverse().expect("relabelling is invertible");
                let (l2, r2) = (iso.after(&l).unwrap(), r.after(&inv).unwrap());
                match factorisation_comparison(&s, (&l, &r), (&l2, &r2), budget) {
                    Ok(w) => {
                        t.check(w.is_some(), || format!("no comparison iso for {f:?}"));
                        t.count("uniqueness", 1);
                    }
                    Err(e) => t.error(e, || format!("comparison for {f:?}")),
                }
            }
        }
        t
    });
    let maps = set_maps(3, budget);
    let p = PowersetScheme;
    t = t.merge(par_tally(&maps, |f| {
        let mut t = Tally::default();
        if let Some((l, r)) = factorise_and_check(&p, f, &mut t) {
            let (epi, mono) = image_factorise(f);
            match factorisation_comparison(&p, (&l, &r), (&epi, &mono), budget) {
                Ok(w) => {
                    t.check(w.is_some(), || {
                        format!("image factorisation of {f:?} differs")
                    });
                    t.count("uniqueness", 1);
                }
                Err(e) => t.error(e, || format!("comparison for {f:?}")),
            }
        }
        t
    }));
    let ms = multi_sample(c, 20);
    let s = MultiScheme::default();
    t = t.merge(par_tally(&ms, |f| {
        let mut t = Tally::default();
        factorise_and_check(&s, f, &mut t);
        t
    }));
    let morphisms = t.checked - t.details.get("uniqueness").copied().unwrap_or(0);
    let schemes_hit = ["copresheaf", "presheaf", "powerset", "multicat"]
        .iter()
        .all(|k| t.details.get(*k).copied().unwrap_or(0) > 0);
    let ok = t.failures == 0
        && morphisms >= 1000
        && t.details.get("uniqueness").copied().unwrap_or(0) >= 100
        && schemes_hit;
    t.finish(2, "factorisation soundness and uniqueness", ok)
}

// 3

fn consistency(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let targets = c.some_categories(6, 3);
    let work: Vec<(DiagramScheme, &Functor)> = SCHEMES
        .iter()
        .flat_map(|&s| c.functors.iter().take(160).map(move |f| (s, f)))
        .collect();
    let mut t = par_tally(&work, |&(s, f)| {
        let mut t = Tally::default();
        // composable pairs through corpus targets, plus elements towers
        for d in &targets {
            for g in functors_between(f.cod(), d, 2, budget) {
                t.outcome(&check_consistency_pair(&s, f, &g), || {
                    format!("{f:?} then {g:?}")
                });
                t.count(s.name(), 1);
            }
        }
        for y in diagram_family(f.cod(), s.variance).iter().skip(1).take(2) {
            let Ok(p) = s.elements(y) else { continue };
            for z in diagram_family(p.dom(), s.variance).iter().skip(1).take(2) {
                let Ok(q) = s.elements(z) else { continue };
                t.outcome(&check_consistency_pair(&s, &q, &p), || {
                    format!("tower over {f:?}")
                });
                t.count(s.name(), 1);
            }
        }
        t
    });
    let maps = set_maps(3, budget);
    let p = PowersetScheme;
    t = t.merge(par_tally(&maps, |f| {
        let mut t = Tally::default();
        let _ = for_each_set_map(f.cod(), &FinSet::new(2), None, budget, &mut |g| {
            t.outcome(&check_consistency_pair(&p, f, g), || {
                format!("{f:?} then {g:?}")
            });
            t.count("powerset", 1);
            ControlFlow::Continue(())
        });
        t
    }));
    let ms = multi_sample(c, 12);
    let s = MultiScheme::default();
    t = t.merge(par_tally(&ms, |f| {
        let mut t = Tally::default();
        let id = MultiFunctor::identity(f.cod().clone());
        t.outcome(&check_consistency_pair(&s, f, &id), || {
            format!("{f:?} then the identity")
        });
        t.count("multicat", 1);
        // towers of elements projections
        for a in algebra_family(f.cod(), 2, 2, budget) {
            let Ok(el) = elements_multicat(&a) else {
                continue;
            };
            for b in algebra_family(&el.multicat, 1, 2, budget) {
                let Ok(el2) = elements_multicat(&b) else {
                    continue;
                };
                t.outcome(
                    &check_consistency_pair(&s, &el2.projection, &el.projection),
                    || format!("tower over {:?}", f.cod()),
                );
                t.count("multicat", 1);
            }
        }
        t
    }));
    let ok = t.failures == 0 && t.checked > 0;
    t.finish(3, "coverings compose and cancel on the left", ok)
}

// 4

fn frobenius(c: &Corpus) -> CriterionResult {
    let work: Vec<(DiagramScheme, &Functor)> = SCHEMES
        .iter()
        .flat_map(|&s| c.functors.iter().map(move |f| (s, f)))
        .collect();
    let mut t = par_tally(&work, |&(s, f)| {
        let mut t = Tally::default();
        let name = s.name();
        for kind in ["frobenius", "beck_chevalley", "stability"] {
            t.count(&format!("{name}/{kind}/failures"), 0);
            t.count(
                &format!("{name}/{kind}/failures_on_coverings_or_groupoids"),
                0,
            );
        }
        let note = |t: &mut Tally, o: &CheckOutcome, kind: &str, safe: bool| {
            t.count(&format!("{name}/{kind}/instances"), 1);
            if !o.passed() {
                t.count(&format!("{name}/{kind}/failures"), 1);
                if safe {
                    t.count(
                        &format!("{name}/{kind}/failures_on_coverings_or_groupoids"),
                        1,
                    );
                }
            }
        };
        let safe = matches!(is_covering(&s, f), Ok(Some(_))) || f.cod().is_groupoid();
        for y in diagram_family(f.cod(), s.variance).iter().skip(1).take(3) {
            let Ok(p) = s.elements(y) else { continue };
            for x in diagram_family(f.dom(), s.variance).iter().take(3) {
                let o = check_frobenius(&s, f, x, y);
                note(&mut t, &o, "frobenius", safe);
                t.outcome(&o, || format!("{name} frobenius on {f:?}"));
                let o2 = check_beck_chevalley(&s, f, &p, x);
                note(&mut t, &o2, "beck_chevalley", safe);
                t.outcome(&o2, || format!("{name} beck-chevalley on {f:?}"));
                // the two comparisons are invertible together or not at all
                t.count(
                    &format!("{name}/frobenius_vs_beck_chevalley/disagreements"),
                    usize::from(o.passed() != o2.passed()),
                );
            }
        }
        // connected morphisms: the left parts of factorisations
        let Ok(fac) = factorise(&s, f) else { return t };
        let l = &fac.left;
        let safe = l.cod().is_groupoid();
        for y in diagram_family(l.cod(), s.variance).iter().skip(1).take(3) {
            let Ok(p) = s.elements(y) else { continue };
            let o = check_connected_stability(&s, l, &p);
            note(&mut t, &o, "stability", safe);
            t.outcome(&o, || format!("{name} stability on {l:?}"));
        }
        t
    });
    let p = PowersetScheme;
    let maps = set_maps(3, c.spec.budget);
    t = t.merge(par_tally(&maps, |f| {
        let mut t = Tally::default();
        for x in Subset::all(f.dom()) {
            for y in Subset::all(f.cod()) {
                let o = check_frobenius(&p, f, &x, &y);
                t.count("powerset/frobenius/instances", 1);
                t.outcome(&o, || format!("powerset frobenius on {f:?}"));
            }
        }
        for z in Subset::all(f.dom()) {
            for y in Subset::all(f.cod()) {
                let incl = comprehend::set_scheme::subset_inclusion(&y);
                let o = check_beck_chevalley(&p, f, &incl, &z);
                t.count("powerset/beck_chevalley/instances", 1);
                t.outcome(&o, || format!("powerset beck-chevalley on {f:?}"));
                if f.is_surjective() {
                    let o = check_connected_stability(&p, f, &incl);
                    t.count("powerset/stability/instances", 1);
                    t.outcome(&o, || format!("powerset stability on {f:?}"));
                }
            }
        }
        t
    }));
    // the mutation: a scheme whose pushforward forgets the base fails all three
    let broken = broken_scheme_failures();
    for (k, failed) in &broken {
        t.count(&format!("broken/{k}/failed"), usize::from(*failed));
    }
    let enough = ["copresheaf", "presheaf", "powerset"].iter().all(|s| {
        ["frobenius", "beck_chevalley", "stability"]
            .iter()
            .all(|k| {
                t.details
                    .get(&format!("{s}/{k}/instances"))
                    .copied()
                    .unwrap_or(0)
                    >= 300
            })
    });
    let ok = t.failures == 0 && enough && broken.iter().all(|(_, f)| *f);
    t.finish(4, "Frobenius, Beck-Chevalley and connected stability", ok)
}

fn broken_scheme_failures() -> Vec<(&'static str, bool)> {
    let b = BrokenScheme;
    let star: Cat = Arc::new(zoo::terminal());
    let arrow: Cat = Arc::new(zoo::walking_arrow());
    let d2: Cat = Arc::new(zoo::discrete(2));
    let to_arrow = Functor::pick_object(star.clone(), arrow.clone(), 0);
    let x = SetDiagram::terminal(star.clone(), Variance::Covariant);
    let y = SetDiagram::terminal(arrow.clone(), Variance::Covariant);
    let frob = check_frobenius(&b, &to_arrow, &x, &y);
    let two = SetDiagram::constant(arrow.clone(), Variance::Covariant, 2);
    let bc = match b.elements(&two) {
        Ok(p) => check_beck_chevalley(&b, &to_arrow, &p, &x),
        Err(e) => CheckOutcome::Fail(e.to_string()),
    };
    let fold = Functor::constant(d2.clone(), star.clone(), 0);
    let stab = match b.elements(&SetDiagram::constant(star.clone(), Variance::Covariant, 2)) {
        Ok(p) => check_connected_stability(&b, &fold, &p),
        Err(e) => CheckOutcome::Fail(e.to_string()),
    };
    vec![
        ("frobenius", !frob.passed()),
        ("beck_chevalley", !bc.passed()),
        ("stability", !stab.passed()),
    ]
}

// 5

/// `f_!X` at every object by the colimit of `X` over the comma category
/// `f ↓ b`, compared with the library's Kan extension up to the unique
/// bijection compatible with the cocones, and then on every transition map.
fn kan_against_colimits(f: &Functor, x: &SetDiagram) -> Result<bool, Error> {
    let ours = left_kan(f, x)?;
    let (a, b) = (f.dom(), f.cod());
    let star: Cat = Arc::new(zoo::terminal());
    let mut to_ours: Vec<Vec<usize>> = Vec::with_capacity(b.num_objects());
    let mut commas = Vec::with_capacity(b.num_objects());
    for t in b.objects() {
        let pick = Functor::pick_object(star.clone(), b.clone(), t);
        let k = comma(f, &pick)?;
        let restricted = x.restrict(&k.proj_left)?;
        let col = colimit_set_diagram(&restricted)?;
        if col.size != ours.diagram.size(t) {
            return Ok(false);
        }
        let mut map = vec![usize::MAX; col.size];
        for (i, &(s, _, phi)) in k.objects.iter().enumerate() {
            for e in 0..x.size(s) {
                let theirs = col.cocone[i][e];
                let mine = ours.class(t, s, phi, e);
                if map[theirs] == usize::MAX {
                    map[theirs] = mine;
                } else if map[theirs] != mine {
                    return Ok(false);
                }
            }
        }
        let mut seen = map.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != col.size || seen.contains(&usize::MAX) {
            return Ok(false);
        }
        to_ours.push(map);
        commas.push((k, col));
    }
    // transition maps: (s, φ, e) at t goes to (s, β∘φ, e) at t'
    for beta in b.morphisms() {
        let (t, t2) = (b.src(beta), b.tgt(beta));
        let (k, col) = &commas[t];
        let (k2, col2) = &commas[t2];
        for (i, &(s, _, phi)) in k.objects.iter().enumerate() {
            let j = k2
                .objects
                .binary_search(&(s, 0, b.comp(beta, phi)))
                .expect("comma object");
            for e in 0..x.size(s) {
                let here = to_ours[t][col.cocone[i][e]];
                let there = to_ours[t2][col2.cocone[j][e]];
                if ours.diagram.act(beta, here) != there {
                    return Ok(false);
                }
            }
        }
    }
    let _ = a;
    Ok(true)
}

fn kan_oracle(c: &Corpus) -> CriterionResult {
    let t = par_tally(&c.functors, |f| {
        let mut t = Tally::default();
        for x in diagram_family(f.dom(), Variance::Covariant) {
            match kan_against_colimits(f, &x) {
                Ok(ok) => t.check(ok, || format!("Kan extension of {x:?} along {f:?}")),
                Err(e) => t.error(e, || format!("{f:?}")),
            }
        }
        t
    });
    let ok = t.failures == 0 && t.checked >= 500;
    t.finish(5, "Kan extensions equal comma colimits", ok)
}

// 6

fn elements_lemma(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let sources = c.some_categories(6, 6);
    let work: Vec<(DiagramScheme, &Cat)> = SCHEMES
        .iter()
        .flat_map(|&s| c.categories.iter().take(60).map(move |b| (s, b)))
        .collect();
    let t = par_tally(&work, |&(s, b)| {
        let mut t = Tally::default();
        for y in diagram_family(b, s.variance).iter().take(4) {
            for d in &sources {
                for h in functors_between(d, b, 1, budget) {
                    match check_elements_lemma(&s, &h, y, budget) {
                        Ok((points, lifts)) => {
                            t.check(points == lifts, || {
                                format!("{points} points, {lifts} lifts over {h:?}")
                            });
                            t.count(s.name(), 1);
                        }
                        Err(e) => t.error(e, || format!("{h:?}")),
                    }
                }
            }
        }
        t
    });
    let ok = t.failures == 0 && t.checked >= 300;
    t.finish(6, "lifts into elements biject with points", ok)
}

// 7, 8

fn galois_instances() -> Vec<(String, Cat)> {
    let mut out: Vec<(String, Cat)> = FinGroup::small_groups(6)
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            (
                format!("BG{i}(order {})", g.order()),
                Arc::new(zoo::delooping(&g)),
            )
        })
        .collect();
    out.push((
        "EZ2".into(),
        Arc::new(zoo::connected_groupoid(&FinGroup::trivial(), 2)),
    ));
    out
}

fn galois(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let mut t = Tally::default();
    let named = [
        ("Z2", FinGroup::cyclic(2)),
        ("Z3", FinGroup::cyclic(3)),
        ("Z2xZ2", FinGroup::klein()),
        ("S3", FinGroup::symmetric3()),
    ];
    for (name, g) in &named {
        let bg: Cat = Arc::new(zoo::delooping(g));
        match pi1(&bg, 0, Variance::Covariant, budget) {
            Ok(pi) => t.check(pi.group.isomorphism_to(g).is_some(), || {
                format!("pi1(B{name}) is not {name}")
            }),
            Err(e) => t.error(e, || format!("pi1(B{name})")),
        }
        t.count("deloopings", 1);
    }
    let based: Vec<(Cat, usize)> = c
        .categories
        .iter()
        .flat_map(|a| a.objects().map(move |x| (a.clone(), x)))
        .collect();
    t = t.merge(par_tally(&based, |(a, x)| {
        let mut t = Tally::default();
        for v in [Variance::Covariant, Variance::Contravariant] {
            match (pi1(a, *x, v, budget), pi1_oracle(a, *x, v)) {
                (Ok(pi), Ok(oracle)) => {
                    t.check(pi.group.isomorphism_to(&oracle).is_some(), || {
                        format!("deck group of {a:?} at {x} differs from the oracle")
                    });
                    t.count("based", 1);
                }
                (Err(e), _) | (_, Err(e)) => t.error(e, || format!("pi1 of {a:?}")),
            }
        }
        t
    }));
    let gs = galois_instances();
    t = t.merge(par_tally(&gs, |(name, a)| {
        let mut t = Tally::default();
        match galois_check(a, 0, 3, budget) {
            Ok(r) => {
                t.check(r.passed(), || format!("{name}: {:?}", r.failures));
                t.count("galois_checks", 1);
                t.count("hom_pairs", r.hom_pairs);
            }
            Err(e) => t.error(e, || name.clone()),
        }
        t
    }));
    let ok = t.failures == 0 && t.skipped == 0;
    t.finish(7, "fundamental groups and the Galois correspondence", ok)
}

fn borel_round_trip(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let gs = galois_instances();
    let t = par_tally(&gs, |(name, a)| {
        let mut t = Tally::default();
        let pi = match pi1(a, 0, Variance::Covariant, budget) {
            Ok(pi) => pi,
            Err(e) => {
                t.error(e, || name.clone());
                return t;
            }
        };
        for x in gsets_up_to_iso(&pi.group, 3) {
            match borel(&x, &pi).and_then(|p| monodromy_fibre(&p, &pi)) {
                Ok(y) => t.check(y.isomorphism_to(&x).is_some(), || {
                    format!("{name}: fibre of borel differs")
                }),
                Err(e) => t.error(e, || name.clone()),
            }
            t.count("actions", 1);
        }
        match coverings_up_to_iso(a, Variance::Covariant, 3, budget) {
            Ok(covs) => {
                for p in covs {
                    let back = monodromy_fibre(&p, &pi).and_then(|x| borel(&x, &pi));
                    match back.and_then(|q| coverings_isomorphic(&p, &q, budget)) {
                        Ok(ok) => t.check(ok, || format!("{name}: borel of the fibre differs")),
                        Err(e) => t.error(e, || name.clone()),
                    }
                    t.count("coverings", 1);
                }
            }
            Err(e) => t.error(e, || name.clone()),
        }
        t
    });
    let ok = t.failures == 0 && t.skipped == 0 && t.checked > 0;
    t.finish(8, "Borel construction and monodromy are inverse", ok)
}

// 9

/// `Σ` over families of operations with targets `w` of the number of maps
/// of positions whose fibres spell the families' sources.
pub fn f_o_hom_count(o: &FinMulticategory, v: &[ColourId], w: &[ColourId]) -> usize {
    fn fill(v: &[ColourId], fam: &[&[ColourId]], i: usize, taken: &mut [usize]) -> usize {
        if i == v.len() {
            return usize::from(taken.iter().zip(fam).all(|(&t, s)| t == s.len()));
        }
        let mut n = 0;
        for j in 0..fam.len() {
            if taken[j] < fam[j].len() && fam[j][taken[j]] == v[i] {
                taken[j] += 1;
                n += fill(v, fam, i + 1, taken);
                taken[j] -= 1;
            }
        }
        n
    }
    fn families(
        o: &FinMulticategory,
        v: &[ColourId],
        w: &[ColourId],
        fam: &mut Vec<OpId>,
    ) -> usize {
        if fam.len() == w.len() {
            let srcs: Vec<&[ColourId]> = fam.iter().map(|&f| o.sources(f)).collect();
            return fill(v, &srcs, 0, &mut vec![0; srcs.len()]);
        }
        let mut n = 0;
        for f in o.op_ids() {
            if o.target(f) == w[fam.len()] {
                fam.push(f);
                n += families(o, v, w, fam);
                fam.pop();
            }
        }
        n
    }
    families(o, v, w, &mut Vec::new())
}

fn words(n: usize, max_len: usize) -> Vec<Vec<ColourId>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<ColourId>> = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..n).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn multicategories(c: &Corpus) -> CriterionResult {
    let budget = c.spec.budget;
    let bound = 20_000;
    let mut t = Tally::default();
    // elements projections
    let gens = generated_sample(30, c.spec.seed);
    t = t.merge(par_tally(&gens, |(m, _)| {
        let mut t = Tally::default();
        for a in algebra_family(m, 2, 4, budget) {
            match elements_multicat(&a) {
                Ok(el) => t.check(is_multicovering(&el.projection), || {
                    "elements projection is not a multicovering".into()
                }),
                Err(e) => t.error(e, || "elements".into()),
            }
            t.count("elements_projections", 1);
        }
        t
    }));
    // factorisation
    let fs = multi_sample(c, 25);
    t = t.merge(par_tally(&fs, |f| {
        let mut t = Tally::default();
        match factorise_multi(f, bound) {
            Ok(fac) => {
                let back = fac.right.after(&fac.left).is_ok_and(|g| g == *f);
                let connected = multifunctor_pushforward_terminal(&fac.left, bound)
                    .is_ok_and(|k| k.algebra.sizes().iter().all(|&n| n == 1));
                t.check(back && connected && is_multicovering(&fac.right), || {
                    format!("factorisation of {f:?}")
                });
                t.count("factorisations", 1);
            }
            Err(Error::SupportExceeded(_)) => t.skipped += 1,
            Err(e) => t.error(e, || format!("{f:?}")),
        }
        t
    }));
    // unary inputs against the category scheme
    let unary: Vec<&Functor> = c.functors.iter().take(150).collect();
    t = t.merge(par_tally(&unary, |f| {
        let mut t = Tally::default();
        let mf = MultiFunctor::translate(f);
        let s = DiagramScheme::COPRESHEAF;
        let cov = is_covering(&s, f).map(|x| x.is_some());
        t.check(cov == Ok(is_multicovering(&mf)), || {
            format!("covering disagrees on {f:?}")
        });
        for x in diagram_family(f.dom(), Variance::Covariant).iter().take(4) {
            let alg = MultiAlgebra::new(mf.dom().clone(), x.sizes().to_vec(), x.actions().to_vec());
            let ours = alg.and_then(|a| multifunctor_pushforward(&mf, &a, bound));
            let theirs = left_kan(f, x);
            match (ours, theirs) {
                (Ok(k), Ok(l)) => {
                    let d = SetDiagram::new(
                        f.cod().clone(),
                        Variance::Covariant,
                        k.algebra.sizes().to_vec(),
                        k.algebra.tables().to_vec(),
                    );
                    let same = d
                        .and_then(|d| comprehend::diagram::diagram_iso(&d, &l.diagram))
                        .is_ok_and(|i| i.is_some());
                    t.check(same, || format!("pushforward disagrees on {f:?}"));
                }
                (Err(e), _) | (_, Err(e)) => t.error(e, || format!("{f:?}")),
            }
        }
        match (factorise_multi(&mf, bound), factorise(&s, f)) {
            (Ok(a), Ok(b)) => {
                let same = a.middle.num_colours() == b.middle.num_objects()
                    && a.middle.num_ops() == b.middle.num_morphisms()
                    && a.classifier.sizes() == b.classifier.sizes();
                t.check(same, || format!("factorisation disagrees on {f:?}"));
            }
            (Err(e), _) | (_, Err(e)) => t.error(e, || format!("{f:?}")),
        }
        t.count("unary_functors", 1);
        t
    }));
    // F_O hom sets against the coproduct formula
    let small = generated_sample(12, c.spec.seed ^ 9);
    t = t.merge(par_tally(&small, |(m, _)| {
        let mut t = Tally::default();
        let ws = words(m.num_colours(), 3);
        for v in &ws {
            for w in ws.iter().filter(|w| w.len() <= 2) {
                let n = f_o_hom(m, v, w).len();
                let expected = f_o_hom_count(m, v, w);
                t.check(n == expected, || {
                    format!("|F_O({v:?}, {w:?})| = {n}, formula gives {expected}")
                });
                t.count("word_pairs", 1);
            }
        }
        t
    }));
    let at_least = |k: &str, n: usize| t.details.get(k).copied().unwrap_or(0) >= n;
    let ok = t.failures == 0
        && at_least("factorisations", 50)
        && at_least("word_pairs", 100)
        && at_least("elements_projections", 1)
        && at_least("unary_functors", 1);
    t.finish(9, "multicategory layer", ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelling_is_an_isomorphism() {
        let c: Cat = Arc::new(zoo::span());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (d, iso) = shuffled(&c, &mut rng);
        iso.validate().unwrap();
        assert!(iso.is_isomorphism());
        assert!(d.validate().is_empty());
    }

    #[test]
    fn kan_oracle_accepts_the_library() {
        let c: Cat = Arc::new(zoo::walking_arrow());
        let star: Cat = Arc::new(zoo::terminal());
        let f = Functor::pick_object(star.clone(), c, 0);
        let x = SetDiagram::constant(star, Variance::Covariant, 2);
        assert!(kan_against_colimits(&f, &x).unwrap());
    }

    #[test]
    fn unknown_suite_is_invalid_input() {
        let e = run_suite("nope", SuiteSpec::default()).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }
}
