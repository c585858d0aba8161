//! Comprehension schemes and the constructions every scheme supports:
//! comprehension, units, coverings, connected morphisms, the comprehensive
//! factorisation, pullbacks of coverings, diagonal fillers and the
//! consistency / Frobenius / Beck–Chevalley / stability checks.

use std::fmt::Debug;
use std::ops::ControlFlow;

use crate::error::{Error, Result};

/// A comprehension scheme on a finite ambient category.
///
/// For every ambient object `A` the scheme provides a category `PA` of
/// scheme objects, with a terminal object `⋆_A`; every ambient morphism
/// `f: A → B` provides an adjunction `f_! ⊣ f*` between `PA` and `PB`; and
/// every scheme object `X` over `B` has an object of elements
/// `p: el_B(X) → B` whose morphisms `D → el_B(X)` over `B` correspond to
/// points `⋆_D → h*X` (`lift` / `unlift`).
pub trait Scheme: Sync {
    type Obj: Clone + Debug + Send + Sync;
    type Mor: Clone + Debug + PartialEq + Send + Sync;
    type PObj: Clone + Debug + Send + Sync;
    type PMor: Clone + Debug + Send + Sync;

    fn name(&self) -> &'static str;

    // ambient category

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, a: &Self::Obj) -> Self::Mor;
    /// `g∘f`
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn invert(&self, f: &Self::Mor) -> Option<Self::Mor>;
    fn obj_eq(&self, a: &Self::Obj, b: &Self::Obj) -> bool;
    /// Enumerates morphisms `g: a → b`; with `over = Some((p, q))` only
    /// those with `p∘g = q`. Errors with [`Error::Budget`] past `budget`.
    fn for_each_mor(
        &self,
        a: &Self::Obj,
        b: &Self::Obj,
        over: Option<(&Self::Mor, &Self::Mor)>,
        budget: usize,
        visit: &mut dyn FnMut(&Self::Mor) -> ControlFlow<()>,
    ) -> Result<()>;

    // scheme categories and adjunctions

    fn base(&self, x: &Self::PObj) -> Self::Obj;
    fn terminal(&self, a: &Self::Obj) -> Self::PObj;
    /// `f_! X`
    fn pushforward(&self, f: &Self::Mor, x: &Self::PObj) -> Result<Self::PObj>;
    /// `f* Y`
    fn pullback(&self, f: &Self::Mor, y: &Self::PObj) -> Result<Self::PObj>;
    fn pushforward_mor(&self, f: &Self::Mor, m: &Self::PMor) -> Result<Self::PMor>;
    fn pullback_mor(&self, f: &Self::Mor, m: &Self::PMor) -> Result<Self::PMor>;
    /// `X → f* f_! X`
    fn unit(&self, f: &Self::Mor, x: &Self::PObj) -> Result<Self::PMor>;
    /// `f_! f* Y → Y`
    fn counit(&self, f: &Self::Mor, y: &Self::PObj) -> Result<Self::PMor>;

    // elements

    /// The projection `el_B(X) → B`.
    fn elements(&self, x: &Self::PObj) -> Result<Self::Mor>;
    /// The morphism `D → el_B(X)` over `h: D → B` classified by a point
    /// `⋆_D → h*X`.
    fn lift(&self, h: &Self::Mor, x: &Self::PObj, point: &Self::PMor) -> Result<Self::Mor>;
    /// Inverse of [`Scheme::lift`].
    fn unlift(&self, h: &Self::Mor, x: &Self::PObj, g: &Self::Mor) -> Result<Self::PMor>;

    // morphisms of scheme objects

    fn pdom(&self, m: &Self::PMor) -> Self::PObj;
    fn pcod(&self, m: &Self::PMor) -> Self::PObj;
    fn pidentity(&self, x: &Self::PObj) -> Self::PMor;
    fn pcompose(&self, g: &Self::PMor, f: &Self::PMor) -> Result<Self::PMor>;
    fn pinverse(&self, m: &Self::PMor) -> Option<Self::PMor>;
    fn hom_p(&self, x: &Self::PObj, y: &Self::PObj, budget: usize) -> Result<Vec<Self::PMor>>;
    /// First isomorphism `x → y` in the instance's canonical order.
    fn iso_p(&self, x: &Self::PObj, y: &Self::PObj) -> Result<Option<Self::PMor>>;
    fn pmor_eq(&self, a: &Self::PMor, b: &Self::PMor) -> bool;
    /// Binary product with its projections.
    fn product(
        &self,
        x: &Self::PObj,
        y: &Self::PObj,
    ) -> Result<(Self::PObj, Self::PMor, Self::PMor)>;
    /// `⟨p, q⟩: Z → X × Y` into the product built by [`Scheme::product`].
    fn pair(&self, p: &Self::PMor, q: &Self::PMor) -> Result<Self::PMor>;

    fn points(&self, x: &Self::PObj, budget: usize) -> Result<Vec<Self::PMor>> {
        self.hom_p(&self.terminal(&self.base(x)), x, budget)
    }

    fn is_iso_p(&self, m: &Self::PMor) -> bool {
        self.pinverse(m).is_some()
    }
}

/// `c_B(f) = f_!(⋆_A)`.
pub fn comprehension<S: Scheme>(s: &S, f: &S::Mor) -> Result<S::PObj> {
    s.pushforward(f, &s.terminal(&s.dom(f)))
}

/// The unit `η_f: A → el_B(c_B(f))`, lifted from the adjunction unit
/// `⋆_A → f* f_! ⋆_A`.
pub fn unit_of<S: Scheme>(s: &S, f: &S::Mor) -> Result<S::Mor> {
    let star = s.terminal(&s.dom(f));
    let c = s.pushforward(f, &star)?;
    let point = s.unit(f, &star)?;
    s.lift(f, &c, &point)
}

/// `Some(η_f⁻¹)` when `f` is a covering.
pub fn is_covering<S: Scheme>(s: &S, f: &S::Mor) -> Result<Option<S::Mor>> {
    Ok(s.invert(&unit_of(s, f)?))
}

/// `Some(⋆_B ≅ f_!⋆_A)` when `f` is connected.
pub fn is_connected<S: Scheme>(s: &S, f: &S::Mor) -> Result<Option<S::PMor>> {
    let c = comprehension(s, f)?;
    s.iso_p(&s.terminal(&s.cod(f)), &c)
}

/// `f = right ∘ left` with `left = η_f` connected and `right` the elements
/// projection of `c_B(f)`.
#[derive(Clone, Debug)]
pub struct Factorisation<S: Scheme> {
    pub left: S::Mor,
    pub right: S::Mor,
    pub middle: S::Obj,
    pub classifier: S::PObj,
}

pub fn factorise<S: Scheme>(s: &S, f: &S::Mor) -> Result<Factorisation<S>> {
    let c = comprehension(s, f)?;
    let right = s.elements(&c)?;
    let left = unit_of(s, f)?;
    let recomposed = s.compose(&right, &left)?;
    if recomposed != *f {
        return Err(Error::Internal("factorisation does not recompose".into()));
    }
    Ok(Factorisation {
        middle: s.dom(&right),
        left,
        right,
        classifier: c,
    })
}

/// Pullback of a covering `p: E → B` along `h: D → B`: the covering
/// `q: el_D(h*X) → D` and the top map `g: el_D(h*X) → E`, where `X`
/// classifies `p`.
#[derive(Clone, Debug)]
pub struct PulledBack<S: Scheme> {
    pub covering: S::Mor,
    pub top: S::Mor,
    pub classifier: S::PObj,
    pub pulled: S::PObj,
}

pub fn pullback_covering<S: Scheme>(s: &S, h: &S::Mor, p: &S::Mor) -> Result<PulledBack<S>> {
    if !s.obj_eq(&s.cod(h), &s.cod(p)) {
        return Err(Error::CodomainMismatch(
            "pullback of morphisms with different codomains".into(),
        ));
    }
    let eta_inv = is_covering(s, p)?
        .ok_or_else(|| Error::NotCovering("cannot pull back a non-covering".into()))?;
    let x = comprehension(s, p)?;
    let hx = s.pullback(h, &x)?;
    let q = s.elements(&hx)?;
    // the identity of el_D(h*X) over D classifies the tautological point
    // ⋆ → q*h*X = (h∘q)*X, whose lift over h∘q is the comparison into el_B(X)
    let taut = s.unlift(&q, &hx, &s.identity(&s.dom(&q)))?;
    let hq = s.compose(h, &q)?;
    let into_el = s.lift(&hq, &x, &taut)?;
    let top = s.compose(&eta_inv, &into_el)?;
    Ok(PulledBack {
        covering: q,
        top,
        classifier: x,
        pulled: hx,
    })
}

/// The unique `m: T → el_D(h*X)` with `q∘m = a` and `top∘m = b`, for a
/// commuting square `h∘a = p∘b`.
pub fn pullback_mediator<S: Scheme>(
    s: &S,
    h: &S::Mor,
    p: &S::Mor,
    pb: &PulledBack<S>,
    a: &S::Mor,
    b: &S::Mor,
) -> Result<S::Mor> {
    if s.compose(h, a)? != s.compose(p, b)? {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let eta = unit_of(s, p)?;
    let eb = s.compose(&eta, b)?;
    let ha = s.compose(h, a)?;
    let point = s.unlift(&ha, &pb.classifier, &eb)?;
    s.lift(a, &pb.pulled, &point)
}

/// The diagonal filler of a square `r∘top = bottom∘l` with `l: A → B`
/// connected and `r: C → D` a covering, built from the section of the
/// covering pulled back along `bottom` that `top` induces.
pub fn diagonal_filler<S: Scheme>(
    s: &S,
    l: &S::Mor,
    r: &S::Mor,
    top: &S::Mor,
    bottom: &S::Mor,
) -> Result<S::Mor> {
    if s.compose(r, top)? != s.compose(bottom, l)? {
        return Err(Error::Precondition("square does not commute".into()));
    }
    let conn =
        is_connected(s, l)?.ok_or_else(|| Error::NotConnected("left side of the square".into()))?;
    let eta_inv =
        is_covering(s, r)?.ok_or_else(|| Error::NotCovering("right side of the square".into()))?;
    let eta = s.invert(&eta_inv).expect("inverse of an isomorphism");
    let y = comprehension(s, r)?;
    let z = s.pullback(bottom, &y)?;
    // η_r∘top: A → el_D(Y) over bottom∘l classifies a point ⋆_A → l*Z
    let bl = s.compose(bottom, l)?;
    let point_a = s.unlift(&bl, &y, &s.compose(&eta, top)?)?;
    // transpose to l_!⋆_A → Z and precompose with ⋆_B ≅ l_!⋆_A
    let pushed = s.pushforward_mor(l, &point_a)?;
    let transpose = s.pcompose(&s.counit(l, &z)?, &pushed)?;
    let section = s.pcompose(&transpose, &conn)?;
    let lifted = s.lift(bottom, &y, &section)?;
    let filler = s.compose(&eta_inv, &lifted)?;
    if s.compose(&filler, l)? != *top || s.compose(r, &filler)? != *bottom {
        return Err(Error::Internal(
            "constructed filler does not fill the square".into(),
        ));
    }
    Ok(filler)
}

/// All fillers of a square by exhaustive enumeration of morphisms
/// `B → C` over `bottom`.
pub fn all_fillers<S: Scheme>(
    s: &S,
    l: &S::Mor,
    r: &S::Mor,
    top: &S::Mor,
    bottom: &S::Mor,
    budget: usize,
) -> Result<Vec<S::Mor>> {
    let mut out = Vec::new();
    let mut err = None;
    s.for_each_mor(&s.cod(l), &s.dom(r), Some((r, bottom)), budget, &mut |g| {
        match s.compose(g, l) {
            Ok(gl) if gl == *top => out.push(g.clone()),
            Ok(_) => {}
            Err(e) => {
                err = Some(e);
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// An isomorphism `m: M → M'` between the middles of two factorisations of
/// the same morphism with `m∘l = l'` and `r'∘m = r`, found by enumeration.
pub fn factorisation_comparison<S: Scheme>(
    s: &S,
    (l, r): (&S::Mor, &S::Mor),
    (l2, r2): (&S::Mor, &S::Mor),
    budget: usize,
) -> Result<Option<S::Mor>> {
    let mut found = None;
    s.for_each_mor(&s.cod(l), &s.cod(l2), Some((r2, r)), budget, &mut |m| {
        let ok = s.compose(m, l).map(|ml| ml == *l2).unwrap_or(false) && s.invert(m).is_some();
        if ok {
            found = Some(m.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Outcome of a property check on one instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    /// the enumeration budget ran out before a verdict
    Budget,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, CheckOutcome::Pass)
    }

    pub fn from_result(r: Result<bool>, what: &str) -> Self {
        match r {
            Ok(true) => CheckOutcome::Pass,
            Ok(false) => CheckOutcome::Fail(what.to_string()),
            Err(Error::Budget(_)) => CheckOutcome::Budget,
            Err(e) => CheckOutcome::Fail(format!("{what}: {e}")),
        }
    }
}

/// Coverings contain identities, compose, and are left cancellable: for
/// `f: A → B` and `g: B → C`, checks `g, f coverings ⇒ g∘f covering` and
/// `g∘f, g coverings ⇒ f covering`.
pub fn check_consistency_pair<S: Scheme>(s: &S, f: &S::Mor, g: &S::Mor) -> CheckOutcome {
    let r = (|| -> Result<Option<String>> {
        for x in [s.dom(f), s.cod(f)] {
            if is_covering(s, &s.identity(&x))?.is_none() {
                return Ok(Some("an identity is not a covering".into()));
            }
        }
        let gf = s.compose(g, f)?;
        let (cf, cg, cgf) = (
            is_covering(s, f)?.is_some(),
            is_covering(s, g)?.is_some(),
            is_covering(s, &gf)?.is_some(),
        );
        if cf && cg && !cgf {
            return Ok(Some("composite of coverings is not a covering".into()));
        }
        if cgf && cg && !cf {
            return Ok(Some("left cancellation fails".into()));
        }
        Ok(None)
    })();
    match r {
        Ok(None) => CheckOutcome::Pass,
        Ok(Some(msg)) => CheckOutcome::Fail(msg),
        Err(Error::Budget(_)) => CheckOutcome::Budget,
        Err(e) => CheckOutcome::Fail(e.to_string()),
    }
}

/// The Frobenius comparison `f_!(X × f*Y) → f_!X × Y`, built as
/// `⟨f_!π₁, ε_Y ∘ f_!π₂⟩`.
pub fn frobenius_map<S: Scheme>(s: &S, f: &S::Mor, x: &S::PObj, y: &S::PObj) -> Result<S::PMor> {
    let fy = s.pullback(f, y)?;
    let (_, p1, p2) = s.product(x, &fy)?;
    let left = s.pushforward_mor(f, &p1)?;
    let right = s.pcompose(&s.counit(f, y)?, &s.pushforward_mor(f, &p2)?)?;
    s.pair(&left, &right)
}

pub fn check_frobenius<S: Scheme>(s: &S, f: &S::Mor, x: &S::PObj, y: &S::PObj) -> CheckOutcome {
    CheckOutcome::from_result(
        frobenius_map(s, f, x, y).map(|m| s.is_iso_p(&m)),
        "Frobenius comparison is not invertible",
    )
}

/// For the pullback square `p∘g = f∘q` of a covering `p: E → B` along
/// `f: A → B`, the mate `g_! q* Z → p* f_! Z`, built as
/// `ε^g_{p* f_! Z} ∘ g_!(q* η^f_Z)`.
pub fn beck_chevalley_map<S: Scheme>(
    s: &S,
    f: &S::Mor,
    p: &S::Mor,
    pb: &PulledBack<S>,
    z: &S::PObj,
) -> Result<S::PMor> {
    let (q, g) = (&pb.covering, &pb.top);
    let unit = s.unit(f, z)?;
    let restricted = s.pullback_mor(q, &unit)?;
    let pushed = s.pushforward_mor(g, &restricted)?;
    let target = s.pullback(p, &s.pushforward(f, z)?)?;
    let counit = s.counit(g, &target)?;
    s.pcompose(&counit, &pushed)
}

pub fn check_beck_chevalley<S: Scheme>(s: &S, f: &S::Mor, p: &S::Mor, z: &S::PObj) -> CheckOutcome {
    let r = pullback_covering(s, f, p).and_then(|pb| beck_chevalley_map(s, f, p, &pb, z));
    CheckOutcome::from_result(
        r.map(|m| s.is_iso_p(&m)),
        "Beck–Chevalley comparison is not invertible",
    )
}

/// For `l: C → B` connected and `r: E → B` a covering, the pullback of `l`
/// along `r` is connected.
pub fn check_connected_stability<S: Scheme>(s: &S, l: &S::Mor, r: &S::Mor) -> CheckOutcome {
    let r = (|| -> Result<bool> {
        if is_connected(s, l)?.is_none() || is_covering(s, r)?.is_none() {
            return Err(Error::Precondition(
                "stability needs a connected and a covering morphism".into(),
            ));
        }
        let pb = pullback_covering(s, l, r)?;
        Ok(is_connected(s, &pb.top)?.is_some())
    })();
    CheckOutcome::from_result(
        r,
        "pullback of a connected morphism along a covering is not connected",
    )
}

/// Every morphism `D → el_B(X)` over `h` corresponds to exactly one point of
/// `h*X`: checks that `lift` is a bijection by counting both sides and
/// round-tripping every point.
pub fn check_elements_lemma<S: Scheme>(
    s: &S,
    h: &S::Mor,
    x: &S::PObj,
    budget: usize,
) -> Result<(usize, usize)> {
    let hx = s.pullback(h, x)?;
    let points = s.points(&hx, budget)?;
    let p = s.elements(x)?;
    let mut lifts = Vec::new();
    s.for_each_mor(&s.dom(h), &s.dom(&p), Some((&p, h)), budget, &mut |g| {
        lifts.push(g.clone());
        ControlFlow::Continue(())
    })?;
    for pt in &points {
        let g = s.lift(h, x, pt)?;
        if s.compose(&p, &g)? != *h || !lifts.contains(&g) {
            return Err(Error::Internal(
                "lift is not a morphism over the base".into(),
            ));
        }
        if !s.pmor_eq(&s.unlift(h, x, &g)?, pt) {
            return Err(Error::Internal("unlift does not invert lift".into()));
        }
    }
    Ok((points.len(), lifts.len()))
}

/// The adjunction bijection `PA(X, f*Y) ≅ PB(f_!X, Y)` by counting.
pub fn check_adjunction<S: Scheme>(
    s: &S,
    f: &S::Mor,
    x: &S::PObj,
    y: &S::PObj,
    budget: usize,
) -> Result<bool> {
    let left = s.hom_p(x, &s.pullback(f, y)?, budget)?;
    let right = s.hom_p(&s.pushforward(f, x)?, y, budget)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    // transposition ε∘f_!(−) must be injective
    let unit = s.unit(f, x)?;
    let counit = s.counit(f, y)?;
    let mut images: Vec<S::PMor> = Vec::new();
    for m in &left {
        let t = s.pcompose(&counit, &s.pushforward_mor(f, m)?)?;
        if images.iter().any(|i| s.pmor_eq(i, &t)) {
            return Ok(false);
        }
        // and back again: f*t ∘ η = m
        let back = s.pcompose(&s.pullback_mor(f, &t)?, &unit)?;
        if !s.pmor_eq(&back, m) {
            return Ok(false);
        }
        images.push(t);
    }
    Ok(true)
}

/// Checks that the counit `c_B(p_B(X)) → X` is invertible, i.e. that
/// `X ↦ el_B(X)` is fully faithful at `X`.
pub fn check_counit_invertible<S: Scheme>(s: &S, x: &S::PObj) -> Result<bool> {
    let p = s.elements(x)?;
    let c = comprehension(s, &p)?;
    Ok(s.iso_p(&c, x)?.is_some())
}
