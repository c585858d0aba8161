//! Instance documents. Every input is one JSON object with `"format": 1`
//! and a `"kind"`; composition is always spelled out, never implied beyond
//! identities and units.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;
use std::path::Path;
use std::sync::Arc;

use comprehend::group::{FinGroup, GSet};
use comprehend::multicat::{
    for_each_multifunctor, generated, FinMulticategory, Generator, MultiAlgebra, MultiFunctor,
    Multicat, Operation,
};
use comprehend::set_scheme::{FinSet, SetMap};
use comprehend::{Cat, CategoryBuilder, FinCategory, Functor, ObjId, SetDiagram, Variance};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, CliError, CliResult};

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub format: u32,
    #[serde(flatten)]
    pub instance: Instance,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Instance {
    Category(CategoryDoc),
    Functor(FunctorDoc),
    Diagram(DiagramDoc),
    Based(BasedDoc),
    Multicategory(MulticategoryDoc),
    Algebra(AlgebraDoc),
    Multifunctor(MultifunctorDoc),
    GroupAction(GroupActionDoc),
    SetMap(SetMapDoc),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Category(_) => "category",
            Instance::Functor(_) => "functor",
            Instance::Diagram(_) => "diagram",
            Instance::Based(_) => "based",
            Instance::Multicategory(_) => "multicategory",
            Instance::Algebra(_) => "algebra",
            Instance::Multifunctor(_) => "multifunctor",
            Instance::GroupAction(_) => "group_action",
            Instance::SetMap(_) => "set_map",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub name: String,
    pub src: String,
    pub tgt: String,
}

/// Objects, non-identity morphisms, and `[g, f, g∘f]` for every composable
/// pair of non-identity morphisms. Identities are `id_<object>`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDoc>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FunctorDoc {
    pub dom: CategoryDoc,
    pub cod: CategoryDoc,
    pub objects: BTreeMap<String, String>,
    /// non-identity morphisms only
    #[serde(default)]
    pub morphisms: BTreeMap<String, String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceDoc {
    #[default]
    Covariant,
    Contravariant,
}

impl From<VarianceDoc> for Variance {
    fn from(v: VarianceDoc) -> Self {
        match v {
            VarianceDoc::Covariant => Variance::Covariant,
            VarianceDoc::Contravariant => Variance::Contravariant,
        }
    }
}

impl From<Variance> for VarianceDoc {
    fn from(v: Variance) -> Self {
        match v {
            Variance::Covariant => VarianceDoc::Covariant,
            Variance::Contravariant => VarianceDoc::Contravariant,
        }
    }
}

/// `maps[f]` lists, for each element of the set `f` acts from, the name of
/// its image (from `X(src f)` covariantly, from `X(tgt f)` contravariantly).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagramDoc {
    #[serde(default)]
    pub variance: VarianceDoc,
    pub category: CategoryDoc,
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasedDoc {
    pub category: CategoryDoc,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColourDoc {
    Name(String),
    Sized { name: String, size: usize },
}

impl ColourDoc {
    pub fn name(&self) -> &str {
        match self {
            ColourDoc::Name(n) | ColourDoc::Sized { name: n, .. } => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OperationDoc {
    pub name: String,
    pub sources: Vec<String>,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub sources: Vec<String>,
    pub target: String,
    /// mixed radix over the source sets, first source most significant
    pub table: Vec<usize>,
}

/// Either explicit (operations, swaps, composition) or generated by
/// functions on sized colours. Units are `1_<colour>` unless renamed;
/// an operation without listed swaps is taken to be fixed by every
/// transposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MulticategoryDoc {
    pub colours: Vec<ColourDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub units: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub operations: Vec<OperationDoc>,
    /// `swaps[f][j]` is `f` with inputs `j` and `j+1` exchanged
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub swaps: BTreeMap<String, Vec<String>>,
    /// `[f, i, g, f ∘_i g]` for non-unit `f`, `g`
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub compose: Vec<(String, usize, String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<GeneratorDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraDoc {
    pub multicategory: MulticategoryDoc,
    /// use the functions a generated multicategory was built from
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub defining: bool,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tables: BTreeMap<String, Vec<usize>>,
}

/// Unlisted operations are filled in by search; the completion must be
/// unique.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultifunctorDoc {
    pub dom: MulticategoryDoc,
    pub cod: MulticategoryDoc,
    pub colours: BTreeMap<String, String>,
    #[serde(default)]
    pub operations: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDoc {
    /// `Z<n>`, `K4`, `S<k>`, `trivial`, or `pi1` (the fundamental group of
    /// whatever base the action is used with)
    Named { named: String },
    Table {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
    },
}

/// `action[g]` lists the image of every point under `g`; the identity may
/// be omitted.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupActionDoc {
    pub group: GroupDoc,
    pub points: Vec<String>,
    pub action: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetMapDoc {
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    pub map: Vec<String>,
}

/// A group action whose group may still be symbolic.
#[derive(Clone, Debug)]
pub struct GroupAction {
    pub group: Option<Arc<FinGroup>>,
    pub points: Vec<String>,
    pub action: BTreeMap<String, Vec<usize>>,
}

impl GroupAction {
    /// The action as a set over `target`, matching elements by name, or
    /// along the first isomorphism when the names differ.
    pub fn resolve(&self, target: &Arc<FinGroup>) -> CliResult<GSet> {
        let n = self.points.len();
        let by_name = |g: usize| -> CliResult<Vec<usize>> {
            let name = target.name(g);
            match self.action.get(name) {
                Some(p) => Ok(p.clone()),
                None if g == target.identity() => Ok((0..n).collect()),
                None => invalid(format!("no action given for {name}")),
            }
        };
        let names_match = self
            .action
            .keys()
            .all(|k| target.names().iter().any(|t| t == k));
        let act = match &self.group {
            Some(own) if !names_match => {
                let iso = own.isomorphism_to(target).ok_or_else(|| {
                    CliError::Invalid("group is not isomorphic to the one required".into())
                })?;
                let mut act = vec![Vec::new(); target.order()];
                for g in own.elements() {
                    act[iso[g]] = match self.action.get(own.name(g)) {
                        Some(p) => p.clone(),
                        None if g == own.identity() => (0..n).collect(),
                        None => return invalid(format!("no action given for {}", own.name(g))),
                    };
                }
                act
            }
            _ => target.elements().map(by_name).collect::<CliResult<_>>()?,
        };
        Ok(GSet::new(target.clone(), act)?)
    }
}

/// A parsed instance.
#[derive(Clone, Debug)]
pub enum Loaded {
    Category(Cat),
    Functor(Functor),
    Diagram(SetDiagram),
    Based(Cat, ObjId),
    Multicategory(Multicat, Option<MultiAlgebra>),
    Algebra(MultiAlgebra),
    Multifunctor(MultiFunctor),
    GroupAction(GroupAction),
    SetMap(SetMap),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Category(_) => "category",
            Loaded::Functor(_) => "functor",
            Loaded::Diagram(_) => "diagram",
            Loaded::Based(..) => "based",
            Loaded::Multicategory(..) => "multicategory",
            Loaded::Algebra(_) => "algebra",
            Loaded::Multifunctor(_) => "multifunctor",
            Loaded::GroupAction(_) => "group_action",
            Loaded::SetMap(_) => "set_map",
        }
    }
}

pub fn read_document(path: &Path) -> CliResult<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> CliResult<Document> {
    let doc: Document = serde_json::from_str(text)?;
    if doc.format != FORMAT {
        return invalid(format!("unsupported format {}", doc.format));
    }
    Ok(doc)
}

pub fn load_file(path: &Path) -> CliResult<Loaded> {
    load(&read_document(path)?.instance)
}

pub fn load(inst: &Instance) -> CliResult<Loaded> {
    Ok(match inst {
        Instance::Category(c) => Loaded::Category(Arc::new(load_category(c)?)),
        Instance::Functor(f) => Loaded::Functor(load_functor(f)?),
        Instance::Diagram(d) => Loaded::Diagram(load_diagram(d)?),
        Instance::Based(b) => {
            let c = Arc::new(load_category(&b.category)?);
            let a = object(&c, &b.base)?;
            Loaded::Based(c, a)
        }
        Instance::Multicategory(m) => {
            let (m, a) = load_multicategory(m)?;
            Loaded::Multicategory(m, a)
        }
        Instance::Algebra(a) => Loaded::Algebra(load_algebra(a)?),
        Instance::Multifunctor(f) => Loaded::Multifunctor(load_multifunctor(f)?),
        Instance::GroupAction(g) => Loaded::GroupAction(load_group_action(g)?),
        Instance::SetMap(s) => Loaded::SetMap(load_set_map(s)?),
    })
}

pub fn document(x: &Loaded) -> Document {
    let instance = match x {
        Loaded::Category(c) => Instance::Category(category_doc(c)),
        Loaded::Functor(f) => Instance::Functor(functor_doc(f)),
        Loaded::Diagram(d) => Instance::Diagram(diagram_doc(d)),
        Loaded::Based(c, a) => Instance::Based(BasedDoc {
            category: category_doc(c),
            base: c.obj_name(*a).to_string(),
        }),
        Loaded::Multicategory(m, _) => Instance::Multicategory(multicategory_doc(m)),
        Loaded::Algebra(a) => Instance::Algebra(algebra_doc(a)),
        Loaded::Multifunctor(f) => Instance::Multifunctor(multifunctor_doc(f)),
        Loaded::GroupAction(g) => Instance::GroupAction(group_action_doc(g)),
        Loaded::SetMap(s) => Instance::SetMap(set_map_doc(s)),
    };
    Document {
        format: FORMAT,
        instance,
    }
}

// categories, functors, diagrams

fn object(c: &FinCategory, name: &str) -> CliResult<ObjId> {
    c.object_by_name(name)
        .ok_or_else(|| CliError::Invalid(format!("unknown object {name}")))
}

fn morphism(c: &FinCategory, name: &str) -> CliResult<usize> {
    c.morphism_by_name(name)
        .ok_or_else(|| CliError::Invalid(format!("unknown morphism {name}")))
}

pub fn load_category(d: &CategoryDoc) -> CliResult<FinCategory> {
    let mut b = CategoryBuilder::new().objects(d.objects.iter().cloned());
    for m in &d.morphisms {
        b = b.morphism(&m.name, &m.src, &m.tgt);
    }
    for [g, f, h] in &d.compose {
        b = b.compose(g, f, h);
    }
    Ok(b.build()?)
}

/// Names as the builder would read them back: identities `id_<object>`,
/// everything else by its own name.
fn mor_label(c: &FinCategory, f: usize) -> String {
    if c.is_identity(f) {
        format!("id_{}", c.obj_name(c.src(f)))
    } else {
        c.mor_name(f).to_string()
    }
}

pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let proper: Vec<usize> = c.morphisms().filter(|&f| !c.is_identity(f)).collect();
    let mut compose = Vec::new();
    for &f in &proper {
        for &g in &proper {
            if let Some(h) = c.compose(g, f) {
                compose.push([mor_label(c, g), mor_label(c, f), mor_label(c, h)]);
            }
        }
    }
    CategoryDoc {
        objects: c.obj_names().to_vec(),
        morphisms: proper
            .iter()
            .map(|&f| MorphismDoc {
                name: c.mor_name(f).to_string(),
                src: c.obj_name(c.src(f)).to_string(),
                tgt: c.obj_name(c.tgt(f)).to_string(),
            })
            .collect(),
        compose,
    }
}

pub fn load_functor(d: &FunctorDoc) -> CliResult<Functor> {
    let dom = Arc::new(load_category(&d.dom)?);
    let cod = Arc::new(load_category(&d.cod)?);
    functor_between(&dom, &cod, &d.objects, &d.morphisms)
}

pub fn functor_between(
    dom: &Cat,
    cod: &Cat,
    objects: &BTreeMap<String, String>,
    morphisms: &BTreeMap<String, String>,
) -> CliResult<Functor> {
    let mut obj_map = Vec::with_capacity(dom.num_objects());
    for a in dom.objects() {
        let name = dom.obj_name(a);
        let image = objects
            .get(name)
            .ok_or_else(|| CliError::Invalid(format!("object {name} has no image")))?;
        obj_map.push(object(cod, image)?);
    }
    for k in objects.keys().chain(morphisms.keys()) {
        if dom.object_by_name(k).is_none() && dom.morphism_by_name(k).is_none() {
            return invalid(format!("{k} is not in the domain"));
        }
    }
    let mut mor_map = Vec::with_capacity(dom.num_morphisms());
    for f in dom.morphisms() {
        if dom.is_identity(f) {
            mor_map.push(cod.id(obj_map[dom.src(f)]));
            continue;
        }
        let name = dom.mor_name(f);
        let image = morphisms
            .get(name)
            .ok_or_else(|| CliError::Invalid(format!("morphism {name} has no image")))?;
        mor_map.push(morphism(cod, image)?);
    }
    Ok(Functor::new(dom.clone(), cod.clone(), obj_map, mor_map)?)
}

pub fn functor_doc(f: &Functor) -> FunctorDoc {
    let (a, b) = (f.dom(), f.cod());
    FunctorDoc {
        dom: category_doc(a),
        cod: category_doc(b),
        objects: a
            .objects()
            .map(|x| (a.obj_name(x).to_string(), b.obj_name(f.obj(x)).to_string()))
            .collect(),
        morphisms: a
            .morphisms()
            .filter(|&g| !a.is_identity(g))
            .map(|g| (a.mor_name(g).to_string(), mor_label(b, f.mor(g))))
            .collect(),
    }
}

pub fn load_diagram(d: &DiagramDoc) -> CliResult<SetDiagram> {
    let c = Arc::new(load_category(&d.category)?);
    diagram_on(&c, d)
}

/// Reads the sets and maps of `d` over an already loaded category.
pub fn diagram_on(c: &Cat, d: &DiagramDoc) -> CliResult<SetDiagram> {
    let variance: Variance = d.variance.into();
    let mut names = Vec::with_capacity(c.num_objects());
    for a in c.objects() {
        let set = d
            .sets
            .get(c.obj_name(a))
            .ok_or_else(|| CliError::Invalid(format!("no set given for {}", c.obj_name(a))))?;
        names.push(set.clone());
    }
    for k in d.sets.keys() {
        object(c, k)?;
    }
    let index = |a: ObjId, name: &str| -> CliResult<usize> {
        names[a].iter().position(|n| n == name).ok_or_else(|| {
            CliError::Invalid(format!("{name} is not an element over {}", c.obj_name(a)))
        })
    };
    let probe = SetDiagram::from_parts(c.clone(), variance, vec![0; c.num_objects()], Vec::new());
    let mut action = Vec::with_capacity(c.num_morphisms());
    for f in c.morphisms() {
        let (from, to) = probe.ends(f);
        if c.is_identity(f) {
            action.push((0..names[from].len()).collect());
            continue;
        }
        let images = d
            .maps
            .get(c.mor_name(f))
            .ok_or_else(|| CliError::Invalid(format!("no map given for {}", c.mor_name(f))))?;
        if images.len() != names[from].len() {
            return invalid(format!("map for {} has the wrong length", c.mor_name(f)));
        }
        action.push(
            images
                .iter()
                .map(|y| index(to, y))
                .collect::<CliResult<Vec<_>>>()?,
        );
    }
    for k in d.maps.keys() {
        morphism(c, k)?;
    }
    let sizes = names.iter().map(Vec::len).collect();
    Ok(SetDiagram::new(c.clone(), variance, sizes, action)?.with_names(names))
}

pub fn diagram_doc(x: &SetDiagram) -> DiagramDoc {
    let c = x.base();
    DiagramDoc {
        variance: x.variance().into(),
        category: category_doc(c),
        sets: c
            .objects()
            .map(|a| {
                let elems = (0..x.size(a)).map(|e| x.element_name(a, e)).collect();
                (c.obj_name(a).to_string(), elems)
            })
            .collect(),
        maps: c
            .morphisms()
            .filter(|&f| !c.is_identity(f))
            .map(|f| {
                let (from, to) = x.ends(f);
                let images = (0..x.size(from))
                    .map(|e| x.element_name(to, x.act(f, e)))
                    .collect();
                (c.mor_name(f).to_string(), images)
            })
            .collect(),
    }
}

// multicategories

fn colour_index(names: &[String], name: &str) -> CliResult<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| CliError::Invalid(format!("unknown colour {name}")))
}

pub fn load_multicategory(d: &MulticategoryDoc) -> CliResult<(Multicat, Option<MultiAlgebra>)> {
    let names: Vec<String> = d.colours.iter().map(|c| c.name().to_string()).collect();
    let sized = d
        .colours
        .iter()
        .any(|c| matches!(c, ColourDoc::Sized { .. }));
    if !d.generators.is_empty() || (sized && d.operations.is_empty()) {
        if !d.operations.is_empty() || !d.compose.is_empty() || !d.swaps.is_empty() {
            return invalid("a multicategory is either generated or explicit, not both");
        }
        let sets = d
            .colours
            .iter()
            .map(|c| match c {
                ColourDoc::Sized { size, .. } => Ok(*size),
                ColourDoc::Name(n) => invalid(format!("colour {n} needs a size")),
            })
            .collect::<CliResult<Vec<usize>>>()?;
        let gens = d
            .generators
            .iter()
            .map(|g| {
                Ok(Generator {
                    name: g.name.clone(),
                    sources: g
                        .sources
                        .iter()
                        .map(|s| colour_index(&names, s))
                        .collect::<CliResult<_>>()?,
                    target: colour_index(&names, &g.target)?,
                    table: g.table.clone(),
                })
            })
            .collect::<CliResult<Vec<_>>>()?;
        let g = generated(names, sets, gens, d.limit.unwrap_or(1000))?;
        return Ok((g.multicat, Some(g.algebra)));
    }
    let nc = names.len();
    let mut ops: Vec<Operation> = Vec::new();
    for (c, name) in names.iter().enumerate() {
        let unit = d
            .units
            .get(name)
            .cloned()
            .unwrap_or_else(|| format!("1_{name}"));
        ops.push(Operation {
            name: unit,
            sources: vec![c],
            target: c,
        });
    }
    for k in d.units.keys() {
        colour_index(&names, k)?;
    }
    for o in &d.operations {
        ops.push(Operation {
            name: o.name.clone(),
            sources: o
                .sources
                .iter()
                .map(|s| colour_index(&names, s))
                .collect::<CliResult<_>>()?,
            target: colour_index(&names, &o.target)?,
        });
    }
    let mut by_name: HashMap<&str, usize> = HashMap::new();
    for (i, o) in ops.iter().enumerate() {
        if by_name.insert(o.name.as_str(), i).is_some() {
            return invalid(format!("duplicate operation {}", o.name));
        }
    }
    let op = |name: &str| {
        by_name
            .get(name)
            .copied()
            .ok_or_else(|| CliError::Invalid(format!("unknown operation {name}")))
    };
    let mut swaps = Vec::with_capacity(ops.len());
    for (i, o) in ops.iter().enumerate() {
        let k = o.sources.len().saturating_sub(1);
        match d.swaps.get(&o.name) {
            Some(list) if list.len() == k => {
                swaps.push(list.iter().map(|s| op(s)).collect::<CliResult<Vec<_>>>()?)
            }
            Some(_) => return invalid(format!("{} needs {k} swaps", o.name)),
            None => swaps.push(vec![i; k]),
        }
    }
    for k in d.swaps.keys() {
        op(k)?;
    }
    let mut comp = Vec::new();
    for (f, o) in ops.iter().enumerate() {
        for (i, &c) in o.sources.iter().enumerate() {
            comp.push((f, i, c, f));
        }
    }
    for g in nc..ops.len() {
        let t = ops[g].target;
        comp.push((t, 0, g, g));
    }
    for (f, i, g, r) in &d.compose {
        let (f, g, r) = (op(f)?, op(g)?, op(r)?);
        if f < nc || g < nc {
            return invalid("composites with units are implied and must not be listed");
        }
        comp.push((f, *i, g, r));
    }
    let m = FinMulticategory::new(names, ops, (0..nc).collect(), swaps, comp)?;
    Ok((Arc::new(m), None))
}

pub fn multicategory_doc(m: &FinMulticategory) -> MulticategoryDoc {
    let names = m.colour_names();
    let units: BTreeMap<String, String> = m
        .colours()
        .filter(|&c| m.op(m.unit(c)).name != format!("1_{}", names[c]))
        .map(|c| (names[c].clone(), m.op(m.unit(c)).name.clone()))
        .collect();
    let proper: Vec<usize> = m.op_ids().filter(|&f| !m.is_unit(f)).collect();
    let operations = proper
        .iter()
        .map(|&f| OperationDoc {
            name: m.op(f).name.clone(),
            sources: m.sources(f).iter().map(|&c| names[c].clone()).collect(),
            target: names[m.target(f)].clone(),
        })
        .collect();
    let swaps = proper
        .iter()
        .filter(|&&f| (0..m.arity(f).saturating_sub(1)).any(|j| m.swap(f, j) != f))
        .map(|&f| {
            let list = (0..m.arity(f) - 1)
                .map(|j| m.op(m.swap(f, j)).name.clone())
                .collect();
            (m.op(f).name.clone(), list)
        })
        .collect();
    let compose = m
        .composition_table()
        .into_iter()
        .filter(|&(f, _, g, _)| !m.is_unit(f) && !m.is_unit(g))
        .map(|(f, i, g, r)| {
            (
                m.op(f).name.clone(),
                i,
                m.op(g).name.clone(),
                m.op(r).name.clone(),
            )
        })
        .collect();
    MulticategoryDoc {
        colours: names.iter().cloned().map(ColourDoc::Name).collect(),
        units,
        operations,
        swaps,
        compose,
        generators: Vec::new(),
        limit: None,
    }
}

pub fn load_algebra(d: &AlgebraDoc) -> CliResult<MultiAlgebra> {
    let (m, defining) = load_multicategory(&d.multicategory)?;
    if d.defining {
        return defining.ok_or_else(|| {
            CliError::Invalid("only a generated multicategory has a defining algebra".into())
        });
    }
    let sizes =
        m.colours()
            .map(|c| {
                d.sets.get(m.colour_name(c)).copied().ok_or_else(|| {
                    CliError::Invalid(format!("no set size for {}", m.colour_name(c)))
                })
            })
            .collect::<CliResult<Vec<usize>>>()?;
    let mut tables = Vec::with_capacity(m.num_ops());
    for f in m.op_ids() {
        if m.is_unit(f) {
            tables.push((0..sizes[m.target(f)]).collect());
            continue;
        }
        let name = &m.op(f).name;
        let t = d
            .tables
            .get(name)
            .ok_or_else(|| CliError::Invalid(format!("no table for {name}")))?;
        tables.push(t.clone());
    }
    for k in d.tables.keys() {
        if m.op_by_name(k).is_none() {
            return invalid(format!("unknown operation {k}"));
        }
    }
    Ok(MultiAlgebra::new(m, sizes, tables)?)
}

pub fn algebra_doc(a: &MultiAlgebra) -> AlgebraDoc {
    let m = a.multicat();
    AlgebraDoc {
        multicategory: multicategory_doc(m),
        defining: false,
        sets: m
            .colours()
            .map(|c| (m.colour_name(c).to_string(), a.size(c)))
            .collect(),
        tables: m
            .op_ids()
            .filter(|&f| !m.is_unit(f))
            .map(|f| (m.op(f).name.clone(), a.table(f).to_vec()))
            .collect(),
    }
}

pub fn load_multifunctor(d: &MultifunctorDoc) -> CliResult<MultiFunctor> {
    let (a, _) = load_multicategory(&d.dom)?;
    let (b, _) = load_multicategory(&d.cod)?;
    let mut colours = Vec::with_capacity(a.num_colours());
    for c in a.colours() {
        let name = a.colour_name(c);
        let image = d
            .colours
            .get(name)
            .ok_or_else(|| CliError::Invalid(format!("colour {name} has no image")))?;
        colours.push(colour_index(b.colour_names(), image)?);
    }
    let mut fixed = Vec::new();
    for (k, v) in &d.operations {
        let f = a
            .op_by_name(k)
            .ok_or_else(|| CliError::Invalid(format!("unknown operation {k}")))?;
        let g = b
            .op_by_name(v)
            .ok_or_else(|| CliError::Invalid(format!("unknown operation {v}")))?;
        fixed.push((f, g));
    }
    let mut found: Vec<MultiFunctor> = Vec::new();
    for_each_multifunctor(&a, &b, None, comprehend::DEFAULT_BUDGET, |f| {
        if f.colour_map() == colours.as_slice() && fixed.iter().all(|&(x, y)| f.op(x) == y) {
            found.push(f.clone());
        }
        if found.len() > 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    match found.len() {
        1 => Ok(found.pop().unwrap()),
        0 => invalid("no multifunctor matches the given assignments"),
        _ => invalid("the given assignments leave the multifunctor underdetermined"),
    }
}

pub fn multifunctor_doc(f: &MultiFunctor) -> MultifunctorDoc {
    let (a, b) = (f.dom(), f.cod());
    MultifunctorDoc {
        dom: multicategory_doc(a),
        cod: multicategory_doc(b),
        colours: a
            .colours()
            .map(|c| {
                (
                    a.colour_name(c).to_string(),
                    b.colour_name(f.colour(c)).to_string(),
                )
            })
            .collect(),
        operations: a
            .op_ids()
            .filter(|&g| !a.is_unit(g))
            .map(|g| (a.op(g).name.clone(), b.op(f.op(g)).name.clone()))
            .collect(),
    }
}

// groups and sets

pub fn named_group(name: &str) -> CliResult<FinGroup> {
    let parse = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    match name {
        "trivial" => Ok(FinGroup::trivial()),
        "K4" => Ok(FinGroup::klein()),
        _ => {
            if let Some(n) = name.strip_prefix('Z').and_then(parse) {
                Ok(FinGroup::cyclic(n))
            } else if let Some(k) = name.strip_prefix('S').and_then(parse).filter(|&k| k <= 5) {
                Ok(FinGroup::symmetric(k))
            } else {
                invalid(format!("unknown group {name}"))
            }
        }
    }
}

pub fn load_group(d: &GroupDoc) -> CliResult<Option<FinGroup>> {
    match d {
        GroupDoc::Named { named } if named == "pi1" => Ok(None),
        GroupDoc::Named { named } => named_group(named).map(Some),
        GroupDoc::Table { elements, table } => {
            let idx = |s: &String| {
                elements
                    .iter()
                    .position(|e| e == s)
                    .ok_or_else(|| CliError::Invalid(format!("unknown group element {s}")))
            };
            let t = table
                .iter()
                .map(|row| row.iter().map(idx).collect::<CliResult<Vec<_>>>())
                .collect::<CliResult<Vec<_>>>()?;
            Ok(Some(FinGroup::new(t, elements.clone())?))
        }
    }
}

pub fn load_group_action(d: &GroupActionDoc) -> CliResult<GroupAction> {
    let group = load_group(&d.group)?.map(Arc::new);
    let point = |s: &String| {
        d.points
            .iter()
            .position(|p| p == s)
            .ok_or_else(|| CliError::Invalid(format!("unknown point {s}")))
    };
    let mut action = BTreeMap::new();
    for (g, images) in &d.action {
        if images.len() != d.points.len() {
            return invalid(format!("action of {g} has the wrong length"));
        }
        action.insert(
            g.clone(),
            images.iter().map(point).collect::<CliResult<Vec<_>>>()?,
        );
    }
    let ga = GroupAction {
        group,
        points: d.points.clone(),
        action,
    };
    if let Some(g) = &ga.group {
        for k in ga.action.keys() {
            if !g.names().contains(k) {
                return invalid(format!("unknown group element {k}"));
            }
        }
        ga.resolve(g)?;
    }
    Ok(ga)
}

pub fn group_doc(g: &FinGroup) -> GroupDoc {
    let names = g.names();
    GroupDoc::Table {
        elements: names.to_vec(),
        table: g
            .table()
            .iter()
            .map(|row| row.iter().map(|&x| names[x].clone()).collect())
            .collect(),
    }
}

pub fn group_action_doc(g: &GroupAction) -> GroupActionDoc {
    GroupActionDoc {
        group: match &g.group {
            Some(grp) => group_doc(grp),
            None => GroupDoc::Named {
                named: "pi1".into(),
            },
        },
        points: g.points.clone(),
        action: g
            .action
            .iter()
            .map(|(k, v)| (k.clone(), v.iter().map(|&x| g.points[x].clone()).collect()))
            .collect(),
    }
}

pub fn gset_doc(x: &GSet) -> GroupActionDoc {
    let g = x.group();
    let points: Vec<String> = (0..x.size()).map(|p| p.to_string()).collect();
    GroupActionDoc {
        group: group_doc(g),
        action: g
            .elements()
            .filter(|&e| e != g.identity())
            .map(|e| {
                let images = (0..x.size()).map(|p| points[x.act(e, p)].clone()).collect();
                (g.name(e).to_string(), images)
            })
            .collect(),
        points,
    }
}

pub fn load_set_map(d: &SetMapDoc) -> CliResult<SetMap> {
    let dom = FinSet::named(d.dom.clone())?;
    let cod = FinSet::named(d.cod.clone())?;
    let map = d
        .map
        .iter()
        .map(|y| {
            cod.index_of(y)
                .ok_or_else(|| CliError::Invalid(format!("{y} is not in the codomain")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(SetMap::new(dom, cod, map)?)
}

pub fn set_names(s: &FinSet) -> Vec<String> {
    (0..s.size()).map(|x| s.name(x)).collect()
}

pub fn set_map_doc(f: &SetMap) -> SetMapDoc {
    SetMapDoc {
        dom: set_names(f.dom()),
        cod: set_names(f.cod()),
        map: f.table().iter().map(|&y| f.cod().name(y)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_round_trip() {
        let text = r#"{"format": 1, "kind": "category", "objects": ["a", "b"],
            "morphisms": [{"name": "f", "src": "a", "tgt": "b"}, {"name": "g", "src": "b", "tgt": "b"}],
            "compose": [["g", "f", "f"], ["g", "g", "g"]]}"#;
        let doc = parse_document(text).unwrap();
        let x = load(&doc.instance).unwrap();
        let again = document(&x);
        assert_eq!(load(&again.instance).map(|y| document(&y)).unwrap(), again);
        let Loaded::Category(c) = x else { panic!() };
        assert_eq!(c.num_morphisms(), 4);
    }

    #[test]
    fn wrong_format_is_rejected() {
        let err =
            parse_document(r#"{"format": 2, "kind": "category", "objects": []}"#).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn multifunctor_completion_is_unique_or_rejected() {
        let m = MulticategoryDoc {
            colours: vec![ColourDoc::Name("c".into())],
            units: BTreeMap::new(),
            operations: vec![],
            swaps: BTreeMap::new(),
            compose: vec![],
            generators: vec![],
            limit: None,
        };
        let d = MultifunctorDoc {
            dom: m.clone(),
            cod: m,
            colours: [("c".to_string(), "c".to_string())].into(),
            operations: BTreeMap::new(),
        };
        let f = load_multifunctor(&d).unwrap();
        assert!(f.is_isomorphism());
    }
}
