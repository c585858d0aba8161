//! Covering theory of finite categories over the copresheaf scheme (or its
//! presheaf dual): components, universal coverings, fundamental groups by
//! deck transformations, monodromy, the Borel construction and the
//! equivalence between coverings of a connected groupoid and sets with an
//! action of its fundamental group.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::cat_scheme::DiagramScheme;
use crate::category::{Cat, MorId, ObjId};
use crate::diagram::{diagram_iso, SetDiagram, Variance};
use crate::error::{Error, Result};
use crate::functor::{for_each_functor, Constraints, Functor};
use crate::group::{gsets_up_to_iso, FinGroup, GSet};
use crate::scheme::{self, Scheme};
use crate::unionfind::UnionFind;
use crate::zoo;

fn scheme_for(variance: Variance) -> DiagramScheme {
    DiagramScheme { variance }
}

fn star() -> Cat {
    Arc::new(zoo::terminal())
}

/// `A → π₀(A)` from the factorisation of `A → ⋆`; the middle object is
/// discrete with one object per connected component.
pub fn pi0_object(a: &Cat) -> Result<(Cat, Functor)> {
    let s = DiagramScheme::COPRESHEAF;
    let bang = Functor::constant(a.clone(), star(), 0);
    let fac = scheme::factorise(&s, &bang)?;
    Ok((fac.middle, fac.left))
}

/// `A → π₀(A)` is invertible.
pub fn is_discrete_object(a: &Cat) -> Result<bool> {
    Ok(pi0_object(a)?.1.is_isomorphism())
}

/// `π₀(A) → ⋆` is invertible.
pub fn is_connected_object(a: &Cat) -> Result<bool> {
    let (d, _) = pi0_object(a)?;
    Ok(d.num_objects() == 1 && d.num_morphisms() == 1)
}

/// Restriction along `A → π₀(A)` preserves binary sums of the sample
/// diagrams on `π₀(A)`. Always true for finite categories, kept as an
/// executable check.
pub fn is_locally_connected(a: &Cat) -> Result<bool> {
    let (d, q) = pi0_object(a)?;
    let family = crate::samples::diagram_family(&d, Variance::Covariant);
    for x in &family {
        for y in &family {
            let lhs = x.sum(y)?.restrict(&q)?;
            let rhs = x.restrict(&q)?.sum(&y.restrict(&q)?)?;
            if diagram_iso(&lhs, &rhs)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A functor certified as a covering, with the diagram it classifies.
#[derive(Clone, Debug)]
pub struct CoveringOver {
    pub map: Functor,
    pub classifier: SetDiagram,
    pub variance: Variance,
}

impl CoveringOver {
    pub fn new(map: Functor, variance: Variance) -> Result<Self> {
        let s = scheme_for(variance);
        if scheme::is_covering(&s, &map)?.is_none() {
            return Err(Error::NotCovering(format!(
                "{map:?} is not a {} covering",
                s.name()
            )));
        }
        let classifier = scheme::comprehension(&s, &map)?;
        Ok(CoveringOver {
            map,
            classifier,
            variance,
        })
    }

    /// The elements projection of a diagram.
    pub fn of_diagram(x: &SetDiagram) -> Result<Self> {
        let s = scheme_for(x.variance());
        CoveringOver::new(s.elements(x)?, x.variance())
    }

    pub fn total(&self) -> &Cat {
        self.map.dom()
    }

    pub fn base(&self) -> &Cat {
        self.map.cod()
    }

    /// Objects of the total category over `b`, in id order.
    pub fn fibre(&self, b: ObjId) -> Vec<ObjId> {
        self.total()
            .objects()
            .filter(|&e| self.map.obj(e) == b)
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct UniversalCover {
    pub cover: CoveringOver,
    /// the object of the cover over the base point that the identity
    /// stands for
    pub base_point: ObjId,
    pub alpha: ObjId,
}

/// Factorises `α: ⋆ → A`; the middle object is the coslice `α/A`
/// (covariant) or the slice `A/α` (contravariant).
pub fn universal_cover(a: &Cat, alpha: ObjId, variance: Variance) -> Result<UniversalCover> {
    if alpha >= a.num_objects() {
        return Err(Error::Precondition(format!(
            "base point {alpha} out of range"
        )));
    }
    let s = scheme_for(variance);
    let pick = Functor::pick_object(star(), a.clone(), alpha);
    let fac = scheme::factorise(&s, &pick)?;
    Ok(UniversalCover {
        base_point: fac.left.obj(0),
        cover: CoveringOver {
            map: fac.right,
            classifier: fac.classifier,
            variance,
        },
        alpha,
    })
}

/// The fundamental group as deck transformations of the universal cover.
#[derive(Clone, Debug)]
pub struct FundamentalGroup {
    pub group: Arc<FinGroup>,
    pub deck: Vec<Functor>,
    /// `loops[i]`: the endomorphism of `α` the base point is sent to by
    /// `deck[i]`
    pub loops: Vec<MorId>,
    pub universal: UniversalCover,
}

impl FundamentalGroup {
    pub fn element_of_loop(&self, g: MorId) -> Option<usize> {
        self.loops.iter().position(|&l| l == g)
    }
}

/// Automorphisms `φ` of `p`'s total category with `p∘φ = p`, in enumeration
/// order.
pub fn automorphisms_over(p: &Functor, budget: usize) -> Result<Vec<Functor>> {
    let e = p.dom();
    let mut out = Vec::new();
    for_each_functor(e, e, &Constraints::over(p, p), budget, |phi| {
        if phi.is_isomorphism() {
            out.push(phi.clone());
        }
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The morphism of `A` that the object `e` of the universal cover stands
/// for: the image of the unique morphism between `e` and the base point.
fn cover_morphism(u: &UniversalCover, e: ObjId) -> MorId {
    let c = u.cover.total();
    let m = match u.cover.variance {
        Variance::Covariant => c.hom(u.base_point, e)[0],
        Variance::Contravariant => c.hom(e, u.base_point)[0],
    };
    u.cover.map.mor(m)
}

/// π₁(A, α): deck transformations of `u_α`, ordered by where they send the
/// base point; the product is composition `deck[i] ∘ deck[j]`.
pub fn pi1(a: &Cat, alpha: ObjId, variance: Variance, budget: usize) -> Result<FundamentalGroup> {
    let universal = universal_cover(a, alpha, variance)?;
    let mut deck = automorphisms_over(&universal.cover.map, budget)?;
    deck.sort_by_key(|phi| phi.obj(universal.base_point));
    let n = deck.len();
    let position = |phi: &Functor| deck.iter().position(|d| d == phi);
    let mut table = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let c = deck[i].after(&deck[j])?;
            table[i][j] =
                position(&c).ok_or_else(|| Error::Internal("deck group not closed".into()))?;
        }
    }
    let loops: Vec<MorId> = deck
        .iter()
        .map(|phi| cover_morphism(&universal, phi.obj(universal.base_point)))
        .collect();
    let names = loops.iter().map(|&g| a.mor_name(g).to_string()).collect();
    let group = Arc::new(FinGroup::new(table, names)?);
    Ok(FundamentalGroup {
        group,
        deck,
        loops,
        universal,
    })
}

/// Units of `End(α)`: `g·h = h∘g` for the covariant cover (the deck
/// transformation of `g` precomposes with `g`), `g·h = g∘h` for the
/// contravariant one.
pub fn pi1_oracle(a: &Cat, alpha: ObjId, variance: Variance) -> Result<FinGroup> {
    let units: Vec<MorId> = a
        .hom(alpha, alpha)
        .iter()
        .copied()
        .filter(|&g| a.inverse(g).is_some())
        .collect();
    let pos = |g: MorId| units.iter().position(|&u| u == g).unwrap();
    let table = units
        .iter()
        .map(|&g| {
            units
                .iter()
                .map(|&h| match variance {
                    Variance::Covariant => pos(a.comp(h, g)),
                    Variance::Contravariant => pos(a.comp(g, h)),
                })
                .collect()
        })
        .collect();
    FinGroup::new(
        table,
        units.iter().map(|&g| a.mor_name(g).to_string()).collect(),
    )
}

fn require_groupoid(a: &Cat) -> Result<()> {
    if !a.is_groupoid() {
        return Err(Error::NotGroupoid);
    }
    Ok(())
}

/// The fibre of `p` over `α` as a π₁-set: the element whose deck
/// transformation sends the base point to `g` moves `e` along the unique
/// lift of `g⁻¹` (so that the action is a left action).
pub fn monodromy_fibre(p: &CoveringOver, pi: &FundamentalGroup) -> Result<GSet> {
    require_groupoid(p.base())?;
    let a = p.base();
    let x = &p.classifier;
    if x.variance() != pi.universal.cover.variance {
        return Err(Error::VarianceMismatch);
    }
    let n = x.size(pi.universal.alpha);
    let act = pi
        .loops
        .iter()
        .map(|&g| {
            let inv = a.inverse(g).expect("groupoid");
            let m = match x.variance() {
                Variance::Covariant => inv,
                Variance::Contravariant => g,
            };
            (0..n).map(|e| x.act(m, e)).collect()
        })
        .collect();
    GSet::new(pi.group.clone(), act)
}

/// Splits a covering into a covering surjective on components followed by
/// the inclusion of the components it hits.
#[derive(Clone, Debug)]
pub struct EpiMono {
    pub epi: Functor,
    pub mono: Functor,
    /// indices of the hit components of the base, in `π₀` order
    pub image: Vec<usize>,
}

pub fn epi_mono_factorise(p: &CoveringOver) -> Result<EpiMono> {
    let b = p.base();
    let (_, qb) = pi0_object(b)?;
    let mut hit = vec![false; qb.cod().num_objects()];
    for e in p.total().objects() {
        hit[qb.obj(p.map.obj(e))] = true;
    }
    let image: Vec<usize> = (0..hit.len()).filter(|&k| hit[k]).collect();
    let kept: Vec<ObjId> = b.objects().filter(|&o| hit[qb.obj(o)]).collect();
    let (sub, mor_incl) = b.full_subcategory(&kept);
    let sub: Cat = Arc::new(sub);
    let mono = Functor::from_parts(sub.clone(), b.clone(), kept.clone(), mor_incl.clone());
    let mut obj_back = vec![usize::MAX; b.num_objects()];
    for (i, &o) in kept.iter().enumerate() {
        obj_back[o] = i;
    }
    let mut mor_back = vec![usize::MAX; b.num_morphisms()];
    for (i, &m) in mor_incl.iter().enumerate() {
        mor_back[m] = i;
    }
    let epi = Functor::from_parts(
        p.total().clone(),
        sub,
        p.map.obj_map().iter().map(|&o| obj_back[o]).collect(),
        p.map.mor_map().iter().map(|&m| mor_back[m]).collect(),
    );
    Ok(EpiMono { epi, mono, image })
}

/// Whether `Aut(ξ)•E → E ×_A E`, `(σ, e) ↦ (e, σe)`, is invertible.
pub fn is_principal(xi: &CoveringOver, budget: usize) -> Result<bool> {
    let s = scheme_for(xi.variance);
    let p = &xi.map;
    let e = p.dom();
    let auts = automorphisms_over(p, budget)?;
    let copies: Vec<&crate::category::FinCategory> = auts.iter().map(|_| e.as_ref()).collect();
    let sum: Cat = Arc::new(zoo::coproduct_many(&copies));
    let (mut fst_o, mut fst_m, mut snd_o, mut snd_m) =
        (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for sigma in &auts {
        fst_o.extend(e.objects());
        fst_m.extend(e.morphisms());
        snd_o.extend(sigma.obj_map());
        snd_m.extend(sigma.mor_map());
    }
    let fst = Functor::from_parts(sum.clone(), e.clone(), fst_o, fst_m);
    let snd = Functor::from_parts(sum, e.clone(), snd_o, snd_m);
    let pb = scheme::pullback_covering(&s, p, p)?;
    let action = scheme::pullback_mediator(&s, p, p, &pb, &fst, &snd)?;
    Ok(action.is_isomorphism())
}

/// `X ×_{π₁} U_α`: at `b`, orbits of pairs `(x, u)` with `u` in the fibre of
/// the universal cover over `b`, under `σ·(x, u) = (σx, σu)`; the covering
/// is its elements projection.
pub fn borel(x: &GSet, pi: &FundamentalGroup) -> Result<CoveringOver> {
    let u = &pi.universal.cover;
    require_groupoid(u.base())?;
    if x.group().order() != pi.group.order() || x.group().table() != pi.group.table() {
        return Err(Error::Precondition(
            "action is not over this fundamental group".into(),
        ));
    }
    let a = u.base();
    let ue = u.total();
    let n = x.size();
    let pair = |xe: usize, e: ObjId| xe * ue.num_objects() + e;
    let mut uf = UnionFind::new(n * ue.num_objects());
    for (i, sigma) in pi.deck.iter().enumerate() {
        for xe in 0..n {
            for e in ue.objects() {
                uf.union(pair(xe, e), pair(x.act(i, xe), sigma.obj(e)));
            }
        }
    }
    // element ids at b: orbit representatives over b in increasing order
    let mut class_id = vec![usize::MAX; n * ue.num_objects()];
    let mut sizes = vec![0; a.num_objects()];
    for b in a.objects() {
        let fib = u.fibre(b);
        for xe in 0..n {
            for &e in &fib {
                let r = uf.find(pair(xe, e));
                if class_id[r] == usize::MAX {
                    class_id[r] = sizes[b];
                    sizes[b] += 1;
                }
            }
        }
    }
    let uc = &u.classifier;
    let action = a
        .morphisms()
        .map(|f| {
            let (from, to) = uc.ends(f);
            let (fib_from, fib_to) = (u.fibre(from), u.fibre(to));
            let mut row = vec![0; sizes[from]];
            for xe in 0..n {
                for (k, &e) in fib_from.iter().enumerate() {
                    let moved = fib_to[uc.act(f, k)];
                    row[class_id[uf.find(pair(xe, e))]] = class_id[uf.find(pair(xe, moved))];
                }
            }
            row
        })
        .collect();
    let diagram = SetDiagram::new(a.clone(), u.variance, sizes, action)?;
    CoveringOver::of_diagram(&diagram)
}

/// Diagrams on a connected groupoid with every carrier of size `k`, up to
/// isomorphism; each is the classifier of a `k`-sheeted covering.
pub fn coverings_up_to_iso(
    a: &Cat,
    variance: Variance,
    max_sheets: usize,
    budget: usize,
) -> Result<Vec<CoveringOver>> {
    require_groupoid(a)?;
    let mut out: Vec<SetDiagram> = Vec::new();
    let mut spent = 0usize;
    for k in 0..=max_sheets {
        let perms = crate::group::permutations(k);
        let free: Vec<MorId> = a.morphisms().filter(|&f| !a.is_identity(f)).collect();
        let mut choice = vec![0usize; free.len()];
        loop {
            spent += 1;
            if spent > budget {
                return Err(Error::Budget(budget));
            }
            let mut action: Vec<Vec<usize>> = vec![(0..k).collect(); a.num_morphisms()];
            for (slot, &f) in free.iter().enumerate() {
                action[f] = perms[choice[slot]].clone();
            }
            if let Ok(d) = SetDiagram::new(a.clone(), variance, vec![k; a.num_objects()], action) {
                let mut seen = false;
                for o in &out {
                    if diagram_iso(o, &d)?.is_some() {
                        seen = true;
                        break;
                    }
                }
                if !seen {
                    out.push(d);
                }
            }
            // odometer over the free morphisms
            let mut i = 0;
            while i < choice.len() {
                choice[i] += 1;
                if choice[i] < perms.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == choice.len() {
                break;
            }
        }
    }
    out.iter().map(CoveringOver::of_diagram).collect()
}

/// Functors `E → E'` over the base between two coverings.
pub fn covering_maps(p: &CoveringOver, q: &CoveringOver, budget: usize) -> Result<Vec<Functor>> {
    let mut out = Vec::new();
    for_each_functor(
        p.total(),
        q.total(),
        &Constraints::over(&q.map, &p.map),
        budget,
        |h| {
            out.push(h.clone());
            ControlFlow::Continue(())
        },
    )?;
    Ok(out)
}

pub fn coverings_isomorphic(p: &CoveringOver, q: &CoveringOver, budget: usize) -> Result<bool> {
    if p.total().num_objects() != q.total().num_objects()
        || p.total().num_morphisms() != q.total().num_morphisms()
    {
        return Ok(false);
    }
    let mut found = false;
    for_each_functor(
        p.total(),
        q.total(),
        &Constraints::over(&q.map, &p.map),
        budget,
        |h| {
            if h.is_isomorphism() {
                found = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        },
    )?;
    Ok(found)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GaloisReport {
    pub group_order: usize,
    pub gsets: usize,
    pub coverings: usize,
    pub hom_pairs: usize,
    pub failures: Vec<String>,
}

impl GaloisReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Compares π₁-sets with at most `max_sheets` points against coverings of
/// `A` with fibres of at most that size: Borel is essentially surjective and
/// injective on isomorphism classes, monodromy inverts it, and covering
/// maps correspond bijectively to equivariant maps.
pub fn galois_check(
    a: &Cat,
    alpha: ObjId,
    max_sheets: usize,
    budget: usize,
) -> Result<GaloisReport> {
    require_groupoid(a)?;
    if a.num_objects() > 0 && !is_connected_object(a)? {
        return Err(Error::NotConnected(
            "galois_check needs a connected groupoid".into(),
        ));
    }
    let variance = Variance::Covariant;
    let pi = pi1(a, alpha, variance, budget)?;
    let mut report = GaloisReport {
        group_order: pi.group.order(),
        ..Default::default()
    };
    let gsets = gsets_up_to_iso(&pi.group, max_sheets);
    report.gsets = gsets.len();
    let mut covers = Vec::with_capacity(gsets.len());
    let mut fibres = Vec::with_capacity(gsets.len());
    for (i, x) in gsets.iter().enumerate() {
        let c = borel(x, &pi)?;
        let f = monodromy_fibre(&c, &pi)?;
        if f.isomorphism_to(x).is_none() {
            report.failures.push(format!(
                "monodromy of borel(#{i}) is not the original action"
            ));
        }
        covers.push(c);
        fibres.push(f);
    }
    let all = coverings_up_to_iso(a, variance, max_sheets, budget)?;
    report.coverings = all.len();
    for (j, c) in all.iter().enumerate() {
        let mut hits = 0;
        for b in &covers {
            if coverings_isomorphic(c, b, budget)? {
                hits += 1;
            }
        }
        if hits != 1 {
            report
                .failures
                .push(format!("covering #{j} matches {hits} Borel coverings"));
        }
        // the other direction of the round trip
        let back = borel(&monodromy_fibre(c, &pi)?, &pi)?;
        if !coverings_isomorphic(c, &back, budget)? {
            report
                .failures
                .push(format!("borel(monodromy(#{j})) is not isomorphic to #{j}"));
        }
    }
    if all.len() != covers.len() {
        report.failures.push(format!(
            "{} actions but {} coverings",
            covers.len(),
            all.len()
        ));
    }
    for i in 0..covers.len() {
        for j in 0..covers.len() {
            report.hom_pairs += 1;
            let maps = covering_maps(&covers[i], &covers[j], budget)?;
            let mut induced: Vec<Vec<usize>> = maps
                .iter()
                .map(|h| fibre_map(&covers[i], &covers[j], h, alpha))
                .collect();
            induced.sort();
            let before = induced.len();
            induced.dedup();
            let mut equivariant = fibres[i].equivariant_maps(&fibres[j]);
            equivariant.sort();
            if before != induced.len() || induced != equivariant {
                report.failures.push(format!(
                    "covering maps #{i} → #{j}: {before} functors, {} equivariant maps",
                    equivariant.len()
                ));
            }
        }
    }
    Ok(report)
}

/// The map a covering morphism induces on fibres over `alpha`, in fibre
/// coordinates.
pub fn fibre_map(p: &CoveringOver, q: &CoveringOver, h: &Functor, alpha: ObjId) -> Vec<usize> {
    let (fp, fq) = (p.fibre(alpha), q.fibre(alpha));
    fp.iter()
        .map(|&e| {
            fq.iter()
                .position(|&t| t == h.obj(e))
                .expect("map over the base")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::*;

    fn cat(c: crate::category::FinCategory) -> Cat {
        Arc::new(c)
    }

    #[test]
    fn components() {
        let arrow = cat(walking_arrow());
        assert_eq!(pi0_object(&arrow).unwrap().0.num_objects(), 1);
        let bz2 = delooping(&FinGroup::cyclic(2));
        let two = cat(coproduct(&bz2, &terminal()));
        assert_eq!(pi0_object(&two).unwrap().0.num_objects(), 2);
        let ez2 = cat(codiscrete(2));
        assert_eq!(pi0_object(&ez2).unwrap().0.num_objects(), 1);
        let d3 = cat(discrete(3));
        assert!(is_discrete_object(&d3).unwrap());
        assert!(!is_connected_object(&d3).unwrap());
        assert!(is_connected_object(&cat(bz2)).unwrap());
        assert!(is_locally_connected(&two).unwrap());
    }

    #[test]
    fn universal_cover_examples() {
        let u = universal_cover(&star(), 0, Variance::Covariant).unwrap();
        assert_eq!(u.cover.total().num_objects(), 1);
        let bz2 = cat(delooping(&FinGroup::cyclic(2)));
        let u = universal_cover(&bz2, 0, Variance::Covariant).unwrap();
        let e = u.cover.total();
        assert_eq!((e.num_objects(), e.num_morphisms()), (2, 4));
        assert!(e
            .objects()
            .all(|x| e.objects().all(|y| e.hom(x, y).len() == 1)));
        let arrow = cat(walking_arrow());
        let u = universal_cover(&arrow, 0, Variance::Covariant).unwrap();
        assert!(u.cover.map.is_isomorphism());
    }

    #[test]
    fn fundamental_groups() {
        for g in [
            FinGroup::cyclic(2),
            FinGroup::cyclic(3),
            FinGroup::symmetric3(),
        ] {
            let bg = cat(delooping(&g));
            let pi = pi1(&bg, 0, Variance::Covariant, 1_000_000).unwrap();
            assert!(pi.group.isomorphism_to(&g).is_some());
        }
        let arrow = cat(walking_arrow());
        assert_eq!(
            pi1(&arrow, 0, Variance::Covariant, 10_000)
                .unwrap()
                .group
                .order(),
            1
        );
    }

    #[test]
    fn monodromy_of_universal_cover_is_regular() {
        let g = FinGroup::symmetric3();
        let bg = cat(delooping(&g));
        let pi = pi1(&bg, 0, Variance::Covariant, 1_000_000).unwrap();
        let m = monodromy_fibre(&pi.universal.cover, &pi).unwrap();
        assert!(m.isomorphism_to(&GSet::regular(pi.group.clone())).is_some());
        let id = CoveringOver::new(Functor::identity(bg.clone()), Variance::Covariant).unwrap();
        assert_eq!(monodromy_fibre(&id, &pi).unwrap().size(), 1);
        let arrow = cat(walking_arrow());
        let pa = pi1(&arrow, 0, Variance::Covariant, 10_000).unwrap();
        let ida = CoveringOver::new(Functor::identity(arrow), Variance::Covariant).unwrap();
        assert!(matches!(
            monodromy_fibre(&ida, &pa),
            Err(Error::NotGroupoid)
        ));
    }

    #[test]
    fn principal_coverings() {
        let z2 = FinGroup::cyclic(2);
        let bz2 = cat(delooping(&z2));
        let pi = pi1(&bz2, 0, Variance::Covariant, 10_000).unwrap();
        assert!(is_principal(&pi.universal.cover, 100_000).unwrap());
        let triple = borel(&GSet::trivial(pi.group.clone(), 3), &pi).unwrap();
        assert!(!is_principal(&triple, 1_000_000).unwrap());
        let id = CoveringOver::new(Functor::identity(bz2), Variance::Covariant).unwrap();
        assert!(is_principal(&id, 100).unwrap());
    }

    #[test]
    fn borel_of_trivial_action_is_two_copies() {
        let bz2 = cat(delooping(&FinGroup::cyclic(2)));
        let pi = pi1(&bz2, 0, Variance::Covariant, 10_000).unwrap();
        let c = borel(&GSet::trivial(pi.group.clone(), 2), &pi).unwrap();
        let two = cat(coproduct(&bz2, &bz2));
        assert!(crate::functor::find_isomorphism(c.total(), &two, 100_000)
            .unwrap()
            .is_some());
        let r = borel(&GSet::regular(pi.group.clone()), &pi).unwrap();
        assert!(coverings_isomorphic(&r, &pi.universal.cover, 100_000).unwrap());
    }

    #[test]
    fn galois_small() {
        let bz2 = cat(delooping(&FinGroup::cyclic(2)));
        let r = galois_check(&bz2, 0, 3, 1_000_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.gsets, r.coverings), (6, 6));
        let ez2 = cat(codiscrete(2));
        let r = galois_check(&ez2, 0, 2, 1_000_000).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!((r.group_order, r.coverings), (1, 3));
        assert!(galois_check(&star(), 0, 2, 1_000).unwrap().passed());
    }

    #[test]
    fn epi_mono_on_components() {
        let bz2 = delooping(&FinGroup::cyclic(2));
        let two = cat(coproduct(&bz2, &terminal()));
        let incl = Functor::from_parts(
            cat(bz2.clone()),
            two.clone(),
            vec![0],
            (0..bz2.num_morphisms()).collect(),
        );
        let c = CoveringOver::new(incl, Variance::Covariant).unwrap();
        let em = epi_mono_factorise(&c).unwrap();
        assert!(em.epi.is_isomorphism());
        assert_eq!(em.image, vec![0]);
        assert_eq!(em.mono.after(&em.epi).unwrap(), c.map);
    }
}
