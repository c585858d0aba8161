//! The command surface. Every command loads its instance files, runs one
//! library operation and returns a report together with the exit code.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use comprehend::cat_scheme::{
    is_discrete_fibration, is_discrete_opfibration, is_final, is_initial, DiagramScheme,
};
use comprehend::galois::{
    borel, galois_check, is_principal, monodromy_fibre, pi0_object, pi1, universal_cover,
    CoveringOver,
};
use comprehend::multicat::{MultiAlgebra, MultiFunctor, MultiScheme, Multicat};
use comprehend::scheme::{
    check_beck_chevalley, check_frobenius, comprehension, factorise, is_connected, is_covering,
    CheckOutcome, Scheme,
};
use comprehend::set_scheme::{FinSet, PowersetScheme, SetMap, Subset};
use comprehend::{Cat, Functor, ObjId, SetDiagram, Variance, DEFAULT_BUDGET};
use serde_json::{json, Value};

use crate::dot;
use crate::error::{invalid, CliError, CliResult};
use crate::format::{self, document, group_doc, gset_doc, set_names, Loaded};
use crate::report::RunReport;
use crate::suite::{run_suite, SuiteSpec};

#[derive(Debug, Parser)]
#[command(
    name = "comprehend",
    version,
    about = "Comprehension schemes on finite instances"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, global = true, default_value_t = SchemeArg::Copresheaf)]
    pub scheme: SchemeArg,
    /// write a graph of the result in DOT
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// enumeration budget before giving up with exit code 3
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// cap on the support of generated multicategories
    #[arg(long, global = true, default_value_t = 100_000)]
    pub bound: usize,
    /// add wall-clock time to the report
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Copresheaf,
    Presheaf,
    Powerset,
    Multicat,
}

impl SchemeArg {
    fn name(self) -> &'static str {
        match self {
            SchemeArg::Copresheaf => "copresheaf",
            SchemeArg::Presheaf => "presheaf",
            SchemeArg::Powerset => "powerset",
            SchemeArg::Multicat => "multicat",
        }
    }

    fn variance(self) -> CliResult<Variance> {
        match self {
            SchemeArg::Copresheaf => Ok(Variance::Covariant),
            SchemeArg::Presheaf => Ok(Variance::Contravariant),
            _ => invalid(format!(
                "this command needs the copresheaf or presheaf scheme, not {}",
                self.name()
            )),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Predicate {
    Initial,
    Final,
    Dopf,
    Dfib,
    Covering,
    Connected,
    Principal,
    Frobenius,
    BeckChevalley,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Comprehensive factorisation of a morphism
    Factorize { input: PathBuf },
    /// Elements object of a diagram, subset or algebra
    Elements { input: PathBuf },
    /// Pushforward of a scheme object along a morphism
    Kan { morphism: PathBuf, object: PathBuf },
    /// Connected components of a category
    Pi0 { input: PathBuf },
    /// Fundamental group at a base object
    Pi1 {
        input: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Universal covering at a base object
    Cover {
        input: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Covering classified by an action of the fundamental group
    Borel {
        input: PathBuf,
        action: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Monodromy action on the fibre of a covering over the base object
    Fibre {
        input: PathBuf,
        covering: PathBuf,
        #[arg(long)]
        base: Option<String>,
    },
    /// Decide a predicate; exit code 2 when it is false
    Check {
        #[arg(value_enum)]
        predicate: Predicate,
        inputs: Vec<PathBuf>,
    },
    /// Compare coverings with actions of the fundamental group
    GaloisCheck {
        input: PathBuf,
        #[arg(long)]
        base: Option<String>,
        #[arg(long, default_value_t = 3)]
        max_sheets: usize,
    },
    /// Run a property suite over the generated corpus
    Corpus {
        suite: String,
        #[arg(long, default_value_t = 3)]
        max_objects: usize,
        #[arg(long, default_value_t = 8)]
        max_morphisms: usize,
    },
}

/// A report and the process exit code it calls for.
pub struct Outcome {
    pub report: RunReport,
    pub code: i32,
    pub dot: Option<String>,
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let start = Instant::now();
    let mut out = dispatch(cli)?;
    if cli.timing {
        out.report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    if let (Some(path), Some(text)) = (&cli.dot, &out.dot) {
        std::fs::write(path, text).map_err(|e| CliError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
    }
    Ok(out)
}

fn ok(report: RunReport, result: Value) -> Outcome {
    Outcome {
        report: RunReport { result, ..report },
        code: 0,
        dot: None,
    }
}

fn verdict(mut report: RunReport, holds: bool, result: Value) -> Outcome {
    report.outcome = holds.to_string();
    report.result = result;
    Outcome {
        report,
        code: if holds { 0 } else { 2 },
        dot: None,
    }
}

fn with_dot(mut o: Outcome, dot: String) -> Outcome {
    o.dot = Some(dot);
    o
}

fn doc_value(x: &Loaded) -> Value {
    serde_json::to_value(document(x)).expect("documents serialise")
}

fn paths(ps: &[&Path]) -> Vec<String> {
    ps.iter().map(|p| p.display().to_string()).collect()
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let sch = cli.scheme;
    let cat_scheme = matches!(sch, SchemeArg::Copresheaf | SchemeArg::Presheaf);
    let report = |cmd: &str, ps: &[&Path], scheme: bool| {
        RunReport::new(cmd, scheme.then(|| sch.name()), paths(ps))
    };
    match &cli.command {
        Command::Factorize { input } => {
            let r = report("factorize", &[input], true);
            let x = format::load_file(input)?;
            with_scheme(cli, |s| s.factorize(r, x))
        }
        Command::Elements { input } => {
            let r = report("elements", &[input], true);
            let x = format::load_file(input)?;
            with_scheme(cli, |s| s.elements(r, x))
        }
        Command::Kan { morphism, object } => {
            let r = report("kan", &[morphism, object], true);
            let (f, x) = (format::load_file(morphism)?, format::load_file(object)?);
            with_scheme(cli, |s| s.kan(r, f, x))
        }
        Command::Pi0 { input } => {
            let r = report("pi0", &[input], false);
            let c = category(format::load_file(input)?)?;
            let (d, q) = pi0_object(&c)?;
            let components: Vec<Vec<&str>> = d
                .objects()
                .map(|k| {
                    c.objects()
                        .filter(|&a| q.obj(a) == k)
                        .map(|a| c.obj_name(a))
                        .collect()
                })
                .collect();
            let result = json!({
                "count": d.num_objects(),
                "components": components,
                "quotient": doc_value(&Loaded::Functor(q)),
            });
            Ok(with_dot(ok(r, result), dot::category(&c)))
        }
        Command::Pi1 { input, base } => {
            let r = report("pi1", &[input], true);
            let (c, a) = based(format::load_file(input)?, base.as_deref())?;
            let pi = pi1(&c, a, sch.variance()?, cli.budget)?;
            let loops: Vec<&str> = pi.loops.iter().map(|&g| c.mor_name(g)).collect();
            let result = json!({
                "base": c.obj_name(a),
                "order": pi.group.order(),
                "abelian": pi.group.is_abelian(),
                "group": group_doc(&pi.group),
                "loops": loops,
            });
            Ok(ok(r, result))
        }
        Command::Cover { input, base } => {
            let r = report("cover", &[input], true);
            let (c, a) = based(format::load_file(input)?, base.as_deref())?;
            let u = universal_cover(&c, a, sch.variance()?)?;
            let p = &u.cover.map;
            let result = json!({
                "base": c.obj_name(a),
                "base_point": p.dom().obj_name(u.base_point),
                "sheets": u.cover.fibre(a).len(),
                "cover": doc_value(&Loaded::Functor(p.clone())),
                "classifier": doc_value(&Loaded::Diagram(u.cover.classifier.clone())),
            });
            Ok(with_dot(
                ok(r, result),
                dot::functor(p, &dot::unique_lifts(p)),
            ))
        }
        Command::Borel {
            input,
            action,
            base,
        } => {
            let r = report("borel", &[input, action], true);
            let (c, a) = based(format::load_file(input)?, base.as_deref())?;
            let Loaded::GroupAction(ga) = format::load_file(action)? else {
                return invalid("borel needs a group action");
            };
            let pi = pi1(&c, a, sch.variance()?, cli.budget)?;
            let x = ga.resolve(&pi.group)?;
            let p = borel(&x, &pi)?;
            let result = json!({
                "base": c.obj_name(a),
                "sheets": x.size(),
                "covering": doc_value(&Loaded::Functor(p.map.clone())),
                "classifier": doc_value(&Loaded::Diagram(p.classifier.clone())),
            });
            Ok(with_dot(
                ok(r, result),
                dot::functor(&p.map, &dot::unique_lifts(&p.map)),
            ))
        }
        Command::Fibre {
            input,
            covering,
            base,
        } => {
            let r = report("fibre", &[input, covering], true);
            let (c, a) = based(format::load_file(input)?, base.as_deref())?;
            let variance = sch.variance()?;
            let p = match format::load_file(covering)? {
                Loaded::Diagram(x) => CoveringOver::of_diagram(&on_base(&x, &c, variance)?)?,
                Loaded::Functor(f) => {
                    if *f.cod() != c {
                        return invalid("the covering lies over another category");
                    }
                    CoveringOver::new(f.rebased(f.dom().clone(), c.clone()), variance)?
                }
                other => {
                    return invalid(format!(
                        "fibre needs a diagram or a functor, not a {}",
                        other.kind()
                    ))
                }
            };
            let pi = pi1(&c, a, variance, cli.budget)?;
            let x = monodromy_fibre(&p, &pi)?;
            let points: Vec<&str> = p
                .fibre(a)
                .into_iter()
                .map(|e| p.total().obj_name(e))
                .collect();
            let result = json!({
                "base": c.obj_name(a),
                "points": points,
                "orbits": x.orbits().len(),
                "action": serde_json::to_value(gset_doc(&x))?,
            });
            Ok(ok(r, result))
        }
        Command::Check { predicate, inputs } => {
            let ps: Vec<&Path> = inputs.iter().map(PathBuf::as_path).collect();
            let scheme_dependent = !matches!(
                predicate,
                Predicate::Initial | Predicate::Final | Predicate::Dopf | Predicate::Dfib
            );
            let r = report(
                &format!("check {}", predicate_name(*predicate)),
                &ps,
                scheme_dependent,
            );
            let loaded = inputs
                .iter()
                .map(|p| format::load_file(p))
                .collect::<CliResult<Vec<_>>>()?;
            check(cli, *predicate, r, loaded, cat_scheme)
        }
        Command::GaloisCheck {
            input,
            base,
            max_sheets,
        } => {
            let r = report("galois-check", &[input], false);
            let (c, a) = based(format::load_file(input)?, base.as_deref())?;
            let g = galois_check(&c, a, *max_sheets, cli.budget)?;
            let passed = g.passed();
            let result = json!({
                "base": c.obj_name(a),
                "max_sheets": max_sheets,
                "group_order": g.group_order,
                "gsets": g.gsets,
                "coverings": g.coverings,
                "hom_pairs": g.hom_pairs,
                "failures": g.failures,
            });
            let mut o = verdict(r, passed, result);
            o.report.outcome = if passed { "pass" } else { "fail" }.into();
            Ok(o)
        }
        Command::Corpus {
            suite,
            max_objects,
            max_morphisms,
        } => {
            let r = RunReport::new(format!("corpus {suite}"), None, Vec::new());
            let spec = SuiteSpec {
                max_objects: *max_objects,
                max_morphisms: *max_morphisms,
                seed: cli.seed,
                budget: cli.budget.min(SuiteSpec::default().budget),
            };
            let results = run_suite(suite, spec.clone())?;
            let passed = results.iter().all(|c| c.passed);
            let result = json!({
                "max_objects": spec.max_objects,
                "max_morphisms": spec.max_morphisms,
                "seed": spec.seed,
                "criteria": results,
            });
            let mut o = verdict(r, passed, result);
            o.report.outcome = if passed { "pass" } else { "fail" }.into();
            Ok(o)
        }
    }
}

fn predicate_name(p: Predicate) -> &'static str {
    match p {
        Predicate::Initial => "initial",
        Predicate::Final => "final",
        Predicate::Dopf => "dopf",
        Predicate::Dfib => "dfib",
        Predicate::Covering => "covering",
        Predicate::Connected => "connected",
        Predicate::Principal => "principal",
        Predicate::Frobenius => "frobenius",
        Predicate::BeckChevalley => "beck-chevalley",
    }
}

fn check(
    cli: &Cli,
    p: Predicate,
    r: RunReport,
    mut xs: Vec<Loaded>,
    cat_scheme: bool,
) -> CliResult<Outcome> {
    let arity = match p {
        Predicate::Frobenius | Predicate::BeckChevalley => 3,
        _ => 1,
    };
    if xs.len() != arity {
        return invalid(format!(
            "check {} takes {arity} input file(s)",
            predicate_name(p)
        ));
    }
    let plain = |holds: bool, f: &Functor| {
        let o = verdict(r.clone(), holds, json!({ "holds": holds }));
        with_dot(o, dot::functor(f, &dot::unique_lifts(f)))
    };
    match p {
        Predicate::Initial | Predicate::Final | Predicate::Dopf | Predicate::Dfib => {
            let f = functor(xs.remove(0))?;
            let holds = match p {
                Predicate::Initial => is_initial(&f),
                Predicate::Final => is_final(&f),
                Predicate::Dopf => is_discrete_opfibration(&f),
                _ => is_discrete_fibration(&f),
            };
            Ok(plain(holds, &f))
        }
        Predicate::Principal => {
            if !cat_scheme {
                return invalid("principal coverings need the copresheaf or presheaf scheme");
            }
            let f = functor(xs.remove(0))?;
            match CoveringOver::new(f.clone(), cli.scheme.variance()?) {
                Ok(xi) => Ok(plain(is_principal(&xi, cli.budget)?, &f)),
                Err(comprehend::Error::NotCovering(why)) => {
                    let o = verdict(r, false, json!({ "holds": false, "reason": why }));
                    Ok(with_dot(o, dot::functor(&f, &dot::unique_lifts(&f))))
                }
                Err(e) => Err(e.into()),
            }
        }
        Predicate::Covering => with_scheme(cli, |s| s.check_covering(r, xs.remove(0))),
        Predicate::Connected => with_scheme(cli, |s| s.check_connected(r, xs.remove(0))),
        Predicate::Frobenius => {
            let (f, x, y) = three(xs);
            with_scheme(cli, |s| s.check_frobenius(r, f, x, y))
        }
        Predicate::BeckChevalley => {
            let (f, q, z) = three(xs);
            with_scheme(cli, |s| s.check_beck_chevalley(r, f, q, z))
        }
    }
}

fn three(mut xs: Vec<Loaded>) -> (Loaded, Loaded, Loaded) {
    let c = xs.pop().unwrap();
    let b = xs.pop().unwrap();
    let a = xs.pop().unwrap();
    (a, b, c)
}

fn category(x: Loaded) -> CliResult<Cat> {
    match x {
        Loaded::Category(c) | Loaded::Based(c, _) => Ok(c),
        other => invalid(format!("expected a category, got a {}", other.kind())),
    }
}

fn functor(x: Loaded) -> CliResult<Functor> {
    match x {
        Loaded::Functor(f) => Ok(f),
        other => invalid(format!("expected a functor, got a {}", other.kind())),
    }
}

fn based(x: Loaded, base: Option<&str>) -> CliResult<(Cat, ObjId)> {
    let (c, default) = match x {
        Loaded::Based(c, a) => (c, Some(a)),
        Loaded::Category(c) => (c, None),
        other => return invalid(format!("expected a based category, got a {}", other.kind())),
    };
    let a = match base {
        Some(name) => c
            .object_by_name(name)
            .ok_or_else(|| CliError::Invalid(format!("unknown object {name}")))?,
        None => default.ok_or_else(|| CliError::Invalid("no base object; pass --base".into()))?,
    };
    Ok((c, a))
}

/// `x` moved onto `c` when its own category has the same tables.
fn on_base(x: &SetDiagram, c: &Cat, variance: Variance) -> CliResult<SetDiagram> {
    if x.variance() != variance {
        return invalid("the diagram has the wrong variance for this scheme");
    }
    if **x.base() != **c {
        return invalid("the diagram lives on another category");
    }
    Ok(x.rebased(c.clone()))
}

fn outcome(o: CheckOutcome) -> CliResult<(bool, Option<String>)> {
    match o {
        CheckOutcome::Pass => Ok((true, None)),
        CheckOutcome::Fail(why) => Ok((false, Some(why))),
        CheckOutcome::Budget => Err(CliError::Core(comprehend::Error::Budget(0))),
    }
}

fn with_scheme(
    cli: &Cli,
    run: impl FnOnce(&dyn Front) -> CliResult<Outcome>,
) -> CliResult<Outcome> {
    match cli.scheme {
        SchemeArg::Copresheaf => run(&Generic(DiagramScheme::COPRESHEAF)),
        SchemeArg::Presheaf => run(&Generic(DiagramScheme::PRESHEAF)),
        SchemeArg::Powerset => run(&Generic(PowersetScheme)),
        SchemeArg::Multicat => run(&Generic(MultiScheme { bound: cli.bound })),
    }
}

/// The scheme-generic commands, object safe so one dispatch serves all
/// four schemes.
trait Front {
    fn factorize(&self, r: RunReport, f: Loaded) -> CliResult<Outcome>;
    fn elements(&self, r: RunReport, x: Loaded) -> CliResult<Outcome>;
    fn kan(&self, r: RunReport, f: Loaded, x: Loaded) -> CliResult<Outcome>;
    fn check_covering(&self, r: RunReport, f: Loaded) -> CliResult<Outcome>;
    fn check_connected(&self, r: RunReport, f: Loaded) -> CliResult<Outcome>;
    fn check_frobenius(&self, r: RunReport, f: Loaded, x: Loaded, y: Loaded) -> CliResult<Outcome>;
    fn check_beck_chevalley(
        &self,
        r: RunReport,
        f: Loaded,
        p: Loaded,
        z: Loaded,
    ) -> CliResult<Outcome>;
}

/// How one scheme reads its inputs and writes its results.
trait Io: Scheme + Sized {
    fn morphism(&self, x: Loaded) -> CliResult<Self::Mor>;
    /// A scheme object, moved onto `base` when one is given.
    fn object(&self, x: Loaded, base: Option<&Self::Obj>) -> CliResult<Self::PObj>;
    fn mor_value(&self, f: &Self::Mor) -> Value;
    fn obj_value(&self, a: &Self::Obj) -> Value;
    fn pobj_value(&self, x: &Self::PObj) -> Value;
    fn dot(&self, _f: &Self::Mor) -> Option<String> {
        None
    }
    fn image(&self, _f: &Self::Mor) -> Option<Value> {
        None
    }
}

struct Generic<S>(S);

impl<S: Io> Front for Generic<S> {
    fn factorize(&self, r: RunReport, f: Loaded) -> CliResult<Outcome> {
        let s = &self.0;
        let f = s.morphism(f)?;
        let fac = factorise(s, &f)?;
        let mut result = json!({
            "left": s.mor_value(&fac.left),
            "right": s.mor_value(&fac.right),
            "middle": s.obj_value(&fac.middle),
            "classifier": s.pobj_value(&fac.classifier),
        });
        if let Some(image) = s.image(&f) {
            result["image"] = image;
        }
        let mut o = ok(r, result);
        o.dot = s.dot(&fac.right);
        Ok(o)
    }

    fn elements(&self, r: RunReport, x: Loaded) -> CliResult<Outcome> {
        let s = &self.0;
        let x = s.object(x, None)?;
        let p = s.elements(&x)?;
        let result = json!({
            "total": s.obj_value(&s.dom(&p)),
            "projection": s.mor_value(&p),
        });
        let mut o = ok(r, result);
        o.dot = s.dot(&p);
        Ok(o)
    }

    fn kan(&self, r: RunReport, f: Loaded, x: Loaded) -> CliResult<Outcome> {
        let s = &self.0;
        let f = s.morphism(f)?;
        let x = s.object(x, Some(&s.dom(&f)))?;
        let y = s.pushforward(&f, &x)?;
        Ok(ok(r, json!({ "pushforward": s.pobj_value(&y) })))
    }

    fn check_covering(&self, r: RunReport, f: Loaded) -> CliResult<Outcome> {
        let s = &self.0;
        let f = s.morphism(f)?;
        let holds = is_covering(s, &f)?.is_some();
        let mut result = json!({ "holds": holds });
        if holds {
            result["classifier"] = s.pobj_value(&comprehension(s, &f)?);
        }
        let mut o = verdict(r, holds, result);
        o.dot = s.dot(&f);
        Ok(o)
    }

    fn check_connected(&self, r: RunReport, f: Loaded) -> CliResult<Outcome> {
        let s = &self.0;
        let f = s.morphism(f)?;
        let holds = is_connected(s, &f)?.is_some();
        let result =
            json!({ "holds": holds, "comprehension": s.pobj_value(&comprehension(s, &f)?) });
        let mut o = verdict(r, holds, result);
        o.dot = s.dot(&f);
        Ok(o)
    }

    fn check_frobenius(&self, r: RunReport, f: Loaded, x: Loaded, y: Loaded) -> CliResult<Outcome> {
        let s = &self.0;
        let f = s.morphism(f)?;
        let x = s.object(x, Some(&s.dom(&f)))?;
        let y = s.object(y, Some(&s.cod(&f)))?;
        let (holds, why) = outcome(check_frobenius(s, &f, &x, &y))?;
        Ok(verdict(r, holds, json!({ "holds": holds, "reason": why })))
    }

    fn check_beck_chevalley(
        &self,
        r: RunReport,
        f: Loaded,
        p: Loaded,
        z: Loaded,
    ) -> CliResult<Outcome> {
        let s = &self.0;
        let f = s.morphism(f)?;
        let p = s.morphism(p)?;
        let z = s.object(z, Some(&s.dom(&f)))?;
        let (holds, why) = outcome(check_beck_chevalley(s, &f, &p, &z))?;
        Ok(verdict(r, holds, json!({ "holds": holds, "reason": why })))
    }
}

impl Io for DiagramScheme {
    fn morphism(&self, x: Loaded) -> CliResult<Functor> {
        functor(x)
    }

    fn object(&self, x: Loaded, base: Option<&Cat>) -> CliResult<SetDiagram> {
        let Loaded::Diagram(d) = x else {
            return invalid(format!("expected a diagram, got a {}", x.kind()));
        };
        match base {
            Some(c) => on_base(&d, c, self.variance),
            None if d.variance() == self.variance => Ok(d),
            None => invalid("the diagram has the wrong variance for this scheme"),
        }
    }

    fn mor_value(&self, f: &Functor) -> Value {
        doc_value(&Loaded::Functor(f.clone()))
    }

    fn obj_value(&self, a: &Cat) -> Value {
        doc_value(&Loaded::Category(a.clone()))
    }

    fn pobj_value(&self, x: &SetDiagram) -> Value {
        doc_value(&Loaded::Diagram(x.clone()))
    }

    fn dot(&self, f: &Functor) -> Option<String> {
        Some(dot::functor(f, &dot::unique_lifts(f)))
    }
}

/// Subsets are read as injective set maps and stand for their image.
impl Io for PowersetScheme {
    fn morphism(&self, x: Loaded) -> CliResult<SetMap> {
        match x {
            Loaded::SetMap(f) => Ok(f),
            other => invalid(format!("expected a set map, got a {}", other.kind())),
        }
    }

    fn object(&self, x: Loaded, base: Option<&FinSet>) -> CliResult<Subset> {
        let m = self.morphism(x)?;
        if !m.is_injective() {
            return invalid("a subset is given by an injective map");
        }
        let cod = match base {
            Some(b) if set_names(b) != set_names(m.cod()) => {
                return invalid("the subset lies in another set");
            }
            Some(b) => b.clone(),
            None => m.cod().clone(),
        };
        Ok(Subset::new(cod, m.image())?)
    }

    fn mor_value(&self, f: &SetMap) -> Value {
        doc_value(&Loaded::SetMap(f.clone()))
    }

    fn obj_value(&self, a: &FinSet) -> Value {
        json!(set_names(a))
    }

    fn image(&self, f: &SetMap) -> Option<Value> {
        let names: Vec<String> = f.image().into_iter().map(|y| f.cod().name(y)).collect();
        Some(json!(names))
    }

    fn pobj_value(&self, x: &Subset) -> Value {
        let members: Vec<String> = x.members().iter().map(|&i| x.base().name(i)).collect();
        json!({ "set": set_names(x.base()), "members": members })
    }
}

impl Io for MultiScheme {
    fn morphism(&self, x: Loaded) -> CliResult<MultiFunctor> {
        match x {
            Loaded::Multifunctor(f) => Ok(f),
            other => invalid(format!("expected a multifunctor, got a {}", other.kind())),
        }
    }

    fn object(&self, x: Loaded, base: Option<&Multicat>) -> CliResult<MultiAlgebra> {
        let a = match x {
            Loaded::Algebra(a) => a,
            Loaded::Multicategory(_, Some(a)) => a,
            other => return invalid(format!("expected an algebra, got a {}", other.kind())),
        };
        match base {
            Some(m) if **a.multicat() != **m => {
                invalid("the algebra lives over another multicategory")
            }
            Some(m) => Ok(a.rebased(m.clone())),
            None => Ok(a),
        }
    }

    fn mor_value(&self, f: &MultiFunctor) -> Value {
        doc_value(&Loaded::Multifunctor(f.clone()))
    }

    fn obj_value(&self, a: &Multicat) -> Value {
        doc_value(&Loaded::Multicategory(Arc::clone(a), None))
    }

    fn pobj_value(&self, x: &MultiAlgebra) -> Value {
        doc_value(&Loaded::Algebra(x.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_parse() {
        let cli = Cli::try_parse_from([
            "comprehend",
            "check",
            "beck-chevalley",
            "a",
            "b",
            "c",
            "--scheme",
            "presheaf",
        ])
        .unwrap();
        assert_eq!(cli.scheme, SchemeArg::Presheaf);
        assert!(
            matches!(cli.command, Command::Check { predicate: Predicate::BeckChevalley, ref inputs } if inputs.len() == 3)
        );
    }

    #[test]
    fn missing_base_is_invalid_input() {
        let c: Cat = Arc::new(comprehend::zoo::terminal());
        let e = based(Loaded::Category(c), None).unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }
}
