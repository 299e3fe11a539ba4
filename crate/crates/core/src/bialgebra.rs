//! Presented bialgebras and the checks run on them: Δ respects the relations,
//! coassociativity, counit, specialization of parameters, and equivalence of
//! two presentations under a generator map.
//!
//! Every membership verdict comes from the rewriting engine and is
//! cross-checked by the linear-algebra oracle at seeded rational points.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::Serialize;

use crate::coverage;
use crate::error::{Error, Result};
use crate::freealg::{coproduct_extend, tensor_embed, Alphabet, CoproductTable, FreeElement, Letter, LetterMap};
use crate::oracle::{self, OracleOutcome};
use crate::rewrite::{self, RewriteSystem, Status, Verdict, DEFAULT_DEGREE_BOUND};
use crate::scalars::{fmt_rational, integer, Rational, Scalar};

/// Generators, parameters, relations, coproduct and counit of an algebra.
///
/// `generators` keeps the declared order; the alphabet carries the order used
/// for normal forms, which a presentation may choose separately.
#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    name: String,
    params: Vec<String>,
    generators: Vec<String>,
    alphabet: Alphabet,
    relations: Vec<FreeElement>,
    coproduct: CoproductTable,
    counit: Vec<Option<Scalar>>,
}

/// Unvalidated pieces of a presentation. Elements may live over any alphabet
/// carrying the generator names; they are moved onto the ordered alphabet.
#[derive(Clone, Debug, Default)]
pub struct PresentationParts {
    pub name: String,
    pub params: Vec<String>,
    pub generators: Vec<String>,
    /// Normal-form order; empty means the declared order.
    pub order: Vec<String>,
    pub relations: Vec<FreeElement>,
    pub coproduct: Vec<(String, FreeElement)>,
    pub counit: Vec<(String, Scalar)>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidPresentation(msg.into())
}

fn is_permutation(a: &[String], b: &[String]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort();
    b.sort();
    a == b
}

impl Presentation {
    pub fn new(parts: PresentationParts) -> Result<Self> {
        let PresentationParts {
            name,
            params,
            generators,
            order,
            relations,
            coproduct,
            counit,
        } = parts;
        for (i, p) in params.iter().enumerate() {
            if params[..i].contains(p) || generators.contains(p) {
                return Err(invalid(format!("symbol `{p}` declared twice")));
            }
        }
        let order = if order.is_empty() { generators.clone() } else { order };
        if !is_permutation(&order, &generators) {
            return Err(invalid("order must list every generator exactly once"));
        }
        let alphabet = Alphabet::new(order.iter().cloned())?;
        let mut rels: Vec<FreeElement> = Vec::with_capacity(relations.len());
        for (i, r) in relations.iter().enumerate() {
            if r.nparams() > params.len() {
                return Err(invalid(format!("relation {} uses undeclared parameters", i + 1)));
            }
            let r = r.transport(&alphabet)?;
            if r.is_zero() {
                return Err(invalid(format!("relation {} is zero", i + 1)));
            }
            if rels.iter().any(|s| s.monic() == r.monic()) {
                return Err(invalid(format!("relation {} repeats an earlier relation", i + 1)));
            }
            rels.push(r);
        }
        let square = alphabet.tensor(2);
        let mut images: Vec<Option<FreeElement>> = vec![None; alphabet.len()];
        for (g, img) in coproduct {
            let l = alphabet
                .index_of(&g)
                .ok_or_else(|| invalid(format!("coproduct of unknown generator `{g}`")))?;
            if images[l as usize].is_some() {
                return Err(invalid(format!("coproduct of `{g}` given twice")));
            }
            images[l as usize] = Some(img.transport(&square)?);
        }
        let images = images
            .into_iter()
            .enumerate()
            .map(|(l, img)| {
                img.ok_or_else(|| invalid(format!("no coproduct for `{}`", alphabet.letter_name(l as Letter))))
            })
            .collect::<Result<Vec<_>>>()?;
        let coproduct = CoproductTable::new(&alphabet, images)?;
        let mut eps: Vec<Option<Scalar>> = vec![None; alphabet.len()];
        for (g, c) in counit {
            let l = alphabet
                .index_of(&g)
                .ok_or_else(|| invalid(format!("counit of unknown generator `{g}`")))?;
            if eps[l as usize].is_some() {
                return Err(invalid(format!("counit of `{g}` given twice")));
            }
            eps[l as usize] = Some(c);
        }
        Ok(Presentation {
            name,
            params,
            generators,
            alphabet,
            relations: rels,
            coproduct,
            counit: eps,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Generator names in normal-form order.
    pub fn order(&self) -> &[String] {
        self.alphabet.base_names()
    }

    pub fn relations(&self) -> &[FreeElement] {
        &self.relations
    }

    pub fn coproduct(&self) -> &CoproductTable {
        &self.coproduct
    }

    pub fn counit(&self, generator: Letter) -> Option<&Scalar> {
        self.counit.get(generator as usize).and_then(Option::as_ref)
    }

    pub fn generator(&self, name: &str) -> Result<FreeElement> {
        FreeElement::generator(&self.alphabet, name)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Presentation {
        Presentation {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Same presentation with normal forms taken in `order`.
    pub fn with_order(&self, order: &[String]) -> Result<Presentation> {
        if !is_permutation(order, &self.generators) {
            return Err(invalid("order must list every generator exactly once"));
        }
        Presentation::new(self.parts_with_order(order.to_vec()))
    }

    pub fn to_parts(&self) -> PresentationParts {
        let order = if self.order() == self.generators.as_slice() {
            Vec::new()
        } else {
            self.order().to_vec()
        };
        self.parts_with_order(order)
    }

    fn parts_with_order(&self, order: Vec<String>) -> PresentationParts {
        let name_of = |l: Letter| self.alphabet.letter_name(l);
        PresentationParts {
            name: self.name.clone(),
            params: self.params.clone(),
            generators: self.generators.clone(),
            order,
            relations: self.relations.clone(),
            coproduct: self
                .alphabet
                .letters()
                .map(|l| (name_of(l), self.coproduct.image(l).clone()))
                .collect(),
            counit: self
                .alphabet
                .letters()
                .filter_map(|l| self.counit(l).map(|c| (name_of(l), c.clone())))
                .collect(),
        }
    }

    /// Letters in declaration order.
    pub fn declared_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.generators
            .iter()
            .map(|g| self.alphabet.index_of(g).expect("declared"))
    }

    /// Relations scaled monic, deduplicated and sorted by their printed form.
    pub fn canonical_relations(&self) -> Vec<FreeElement> {
        canonical_set(&self.relations, &self.params)
    }

    /// Whether both presentations have the same canonical relation set, with
    /// `other`'s relations read over this presentation's alphabet.
    pub fn same_relations(&self, other: &Presentation) -> Result<bool> {
        if !is_permutation(&self.generators, &other.generators) || self.params != other.params {
            return Ok(false);
        }
        let moved = other
            .relations
            .iter()
            .map(|r| r.transport(&self.alphabet))
            .collect::<Result<Vec<_>>>()?;
        Ok(canonical_set(&moved, &self.params) == self.canonical_relations())
    }
}

fn canonical_set(relations: &[FreeElement], params: &[String]) -> Vec<FreeElement> {
    let mut keyed: Vec<(String, FreeElement)> = relations
        .iter()
        .filter(|r| !r.is_zero())
        .map(|r| {
            let m = r.monic();
            (m.display(params).to_string(), m)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.1 == b.1);
    keyed.into_iter().map(|(_, m)| m).collect()
}

fn value_tag(v: &Rational) -> String {
    fmt_rational(v).replace('-', "m").replace('/', "over")
}

/// Substitutes the given rational values for parameters. Parameters left out
/// of `assignment` stay symbolic; relations that vanish are dropped, as are
/// relations that become multiples of earlier ones.
pub fn specialize(p: &Presentation, assignment: &[(String, Rational)]) -> Result<Presentation> {
    coverage::hit("specialize");
    for (i, (name, _)) in assignment.iter().enumerate() {
        if !p.params.contains(name) {
            return Err(Error::UnknownParameter(name.clone()));
        }
        if assignment[..i].iter().any(|(n, _)| n == name) {
            return Err(invalid(format!("parameter `{name}` assigned twice")));
        }
    }
    let mut kept = Vec::new();
    let mut images = Vec::with_capacity(p.params.len());
    for name in &p.params {
        match assignment.iter().find(|(n, _)| n == name) {
            Some((_, v)) => images.push(Scalar::from_rational(v.clone())),
            None => {
                images.push(Scalar::param(kept.len()));
                kept.push(name.clone());
            }
        }
    }
    let subst = |x: &FreeElement| x.map_scalars(|c| c.compose(&images));
    let mut relations: Vec<FreeElement> = Vec::new();
    for r in &p.relations {
        let r = subst(r)?;
        if !r.is_zero() && !relations.iter().any(|s| s.monic() == r.monic()) {
            relations.push(r);
        }
    }
    let mut parts = p.to_parts();
    let mut tags: Vec<String> = Vec::new();
    for name in &p.params {
        if let Some((_, v)) = assignment.iter().find(|(n, _)| n == name) {
            tags.push(format!("{name}{}", value_tag(v)));
        }
    }
    parts.name = if tags.is_empty() {
        p.name.clone()
    } else {
        format!("{}_{}", p.name, tags.join("_"))
    };
    parts.params = kept;
    parts.relations = relations;
    parts.coproduct = parts
        .coproduct
        .into_iter()
        .map(|(g, img)| Ok((g, subst(&img)?)))
        .collect::<Result<_>>()?;
    parts.counit = parts
        .counit
        .into_iter()
        .map(|(g, c)| Ok((g, c.compose(&images)?)))
        .collect::<Result<_>>()?;
    Presentation::new(parts)
}

/// Algebra map from `source` to `target` given on generators, with an optional
/// substitution of source parameters.
///
/// Scalars of images live over `params`: the target's parameters followed by
/// source parameters the target lacks. Source parameters without an explicit
/// substitution pass through by name.
#[derive(Clone, Debug)]
pub struct GenMap {
    name: String,
    source: Presentation,
    target: Presentation,
    params: Vec<String>,
    images: Vec<FreeElement>,
    param_subst: Vec<Scalar>,
    explicit_params: bool,
}

impl GenMap {
    /// Parameter names available to image scalars for a map `source → target`.
    pub fn param_space(source: &Presentation, target: &Presentation) -> Vec<String> {
        let mut out = target.params.clone();
        for p in &source.params {
            if !out.contains(p) {
                out.push(p.clone());
            }
        }
        out
    }

    /// `images` pairs a source generator with an element over the target
    /// alphabet; `param_subst` pairs a source parameter with a scalar over
    /// [`Self::param_space`].
    pub fn new(
        name: impl Into<String>,
        source: &Presentation,
        target: &Presentation,
        images: Vec<(String, FreeElement)>,
        param_subst: Vec<(String, Scalar)>,
    ) -> Result<Self> {
        let params = Self::param_space(source, target);
        let mut slots: Vec<Option<FreeElement>> = vec![None; source.alphabet.len()];
        for (g, img) in images {
            let l = source
                .alphabet
                .index_of(&g)
                .ok_or_else(|| Error::MissingImage(g.clone()))?;
            if img.nparams() > params.len() {
                return Err(invalid(format!("image of `{g}` uses unknown parameters")));
            }
            slots[l as usize] = Some(img.transport(&target.alphabet)?);
        }
        let images = slots
            .into_iter()
            .enumerate()
            .map(|(l, img)| img.ok_or_else(|| Error::MissingImage(source.alphabet.letter_name(l as Letter))))
            .collect::<Result<Vec<_>>>()?;
        let explicit_params = !param_subst.is_empty();
        let mut subst = Vec::with_capacity(source.params.len());
        for p in &source.params {
            let s = match param_subst.iter().find(|(n, _)| n == p) {
                Some((_, s)) => s.clone(),
                None => Scalar::param(params.iter().position(|q| q == p).expect("in param space")),
            };
            subst.push(s);
        }
        for (n, _) in &param_subst {
            if !source.params.contains(n) {
                return Err(Error::UnknownParameter(n.clone()));
            }
        }
        Ok(GenMap {
            name: name.into(),
            source: source.clone(),
            target: target.clone(),
            params,
            images,
            param_subst: subst,
            explicit_params,
        })
    }

    pub fn identity(p: &Presentation) -> Self {
        let pairs = p
            .generators
            .iter()
            .map(|g| (g.clone(), p.generator(g).expect("declared")))
            .collect();
        GenMap::new("identity", p, p, pairs, Vec::new()).expect("identity is total")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn image(&self, generator: &str) -> Option<&FreeElement> {
        self.source
            .alphabet
            .index_of(generator)
            .map(|l| &self.images[l as usize])
    }

    fn letter_map(&self) -> LetterMap {
        LetterMap {
            target: self.target.alphabet.clone(),
            images: self.images.clone(),
            params: Some(self.param_subst.clone()),
        }
    }

    /// Image of an element of the source free algebra.
    pub fn apply(&self, x: &FreeElement) -> Result<FreeElement> {
        if x.alphabet() != &self.source.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        self.letter_map().apply(x)
    }

    /// `m ⊗ … ⊗ m` on an element of the `arity`-fold source tensor power.
    pub fn apply_tensor(&self, x: &FreeElement, arity: usize) -> Result<FreeElement> {
        let src = self.source.alphabet.tensor(arity);
        if x.alphabet() != &src {
            return Err(Error::AlphabetMismatch);
        }
        let mut images = Vec::with_capacity(src.len());
        for l in src.letters() {
            let f = src.factor_of(l).expect("tensor letter");
            images.push(tensor_embed(&self.images[src.base_letter(l) as usize], f, arity)?);
        }
        let map = LetterMap {
            target: self.target.alphabet.tensor(arity),
            images,
            params: Some(self.param_subst.clone()),
        };
        map.apply(x)
    }

    /// Images of the source relations.
    pub fn image_relations(&self) -> Result<Vec<FreeElement>> {
        self.source.relations.iter().map(|r| self.apply(r)).collect()
    }

    /// The inverse map, available when every image is a single generator and
    /// the images are pairwise distinct.
    pub fn inverse(&self) -> Result<GenMap> {
        if self.explicit_params {
            return Err(Error::NonInvertibleMap(format!(
                "`{}` substitutes parameters",
                self.name
            )));
        }
        let n = self.source.alphabet.len();
        if self.target.alphabet.len() != n {
            return Err(Error::NonInvertibleMap(format!(
                "`{}` changes the number of generators",
                self.name
            )));
        }
        let mut back: Vec<Option<Letter>> = vec![None; n];
        for (l, img) in self.images.iter().enumerate() {
            let single = match img.terms().next() {
                Some((w, c)) if img.num_terms() == 1 && w.len() == 1 && c.is_one() => w.letters()[0],
                _ => {
                    return Err(Error::NonInvertibleMap(format!(
                        "image of `{}` is not a single generator",
                        self.source.alphabet.letter_name(l as Letter)
                    )))
                }
            };
            if back[single as usize].replace(l as Letter).is_some() {
                return Err(Error::NonInvertibleMap(format!("`{}` is not injective", self.name)));
            }
        }
        let pairs = back
            .into_iter()
            .enumerate()
            .map(|(t, s)| {
                let s = s.expect("bijective");
                let src_name = self.target.alphabet.letter_name(t as Letter);
                let img = FreeElement::letter(&self.source.alphabet, s);
                (src_name, img)
            })
            .collect();
        GenMap::new(
            format!("{}^-1", self.name),
            &self.target,
            &self.source,
            pairs,
            Vec::new(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ItemVerdict {
    Member,
    Fail,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Overall {
    Pass,
    Fail,
    Inconclusive,
}

impl Overall {
    pub fn exit_code(self) -> i32 {
        match self {
            Overall::Pass => 0,
            Overall::Fail => 1,
            Overall::Inconclusive => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Overall::Pass => "pass",
            Overall::Fail => "fail",
            Overall::Inconclusive => "inconclusive",
        }
    }

    /// Fail dominates inconclusive, which dominates pass.
    pub fn combine(items: impl IntoIterator<Item = Overall>) -> Overall {
        let mut out = Overall::Pass;
        for o in items {
            match o {
                Overall::Fail => return Overall::Fail,
                Overall::Inconclusive => out = Overall::Inconclusive,
                Overall::Pass => {}
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub outcome: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub verdict: ItemVerdict,
    pub remainder: String,
    pub trace_steps: usize,
    pub trace_replayed: bool,
    pub oracle: Option<OracleCheck>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace: Vec<String>,
}

impl CheckItem {
    fn plain(label: impl Into<String>, ok: bool, remainder: String) -> Self {
        CheckItem {
            label: label.into(),
            verdict: if ok { ItemVerdict::Member } else { ItemVerdict::Fail },
            remainder,
            trace_steps: 0,
            trace_replayed: false,
            oracle: None,
            trace: Vec::new(),
        }
    }

    fn outcome(&self) -> Overall {
        if self.oracle.as_ref().is_some_and(|o| !o.agrees) {
            return Overall::Fail;
        }
        match self.verdict {
            ItemVerdict::Member => Overall::Pass,
            ItemVerdict::Fail => Overall::Fail,
            ItemVerdict::Inconclusive => Overall::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SystemInfo {
    pub name: String,
    pub rules: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialInfo {
    pub point: Vec<String>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleInfo {
    pub seed: u64,
    pub degree_cap: usize,
    pub trials: Vec<TrialInfo>,
    pub rank_stable: bool,
    pub agrees: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EngineInfo {
    pub degree_bound: usize,
    pub systems: Vec<SystemInfo>,
    pub oracle: Option<OracleInfo>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub presentations: Vec<String>,
    pub overall: Overall,
    pub items: Vec<CheckItem>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<CheckReport>,
    pub engine: EngineInfo,
}

impl CheckReport {
    fn new(check: &str, presentations: Vec<String>, items: Vec<CheckItem>, engine: EngineInfo) -> Self {
        let overall = Overall::combine(items.iter().map(CheckItem::outcome));
        CheckReport {
            check: check.into(),
            presentations,
            overall,
            items,
            parts: Vec::new(),
            engine,
        }
    }

    fn aggregate(check: &str, presentations: Vec<String>, parts: Vec<CheckReport>, degree_bound: usize) -> Self {
        let overall = Overall::combine(parts.iter().map(|p| p.overall));
        CheckReport {
            check: check.into(),
            presentations,
            overall,
            items: Vec::new(),
            parts,
            engine: EngineInfo {
                degree_bound,
                ..EngineInfo::default()
            },
        }
    }

    /// Items of this report and of all nested parts.
    pub fn all_items(&self) -> Vec<&CheckItem> {
        let mut out: Vec<&CheckItem> = self.items.iter().collect();
        for p in &self.parts {
            out.extend(p.all_items());
        }
        out
    }

    pub fn count(&self, verdict: ItemVerdict) -> usize {
        self.all_items().iter().filter(|i| i.verdict == verdict).count()
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub degree_bound: usize,
    pub seed: u64,
    pub trials: usize,
    /// Run the linear-algebra cross-check.
    pub oracle: bool,
    /// Keep the printed rewrite trace of every item.
    pub trace: bool,
    /// Parameter points always added to the random oracle trials, given by
    /// name. A point is used only where it names exactly the parameters in play.
    pub special_points: Vec<Vec<(String, Rational)>>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            degree_bound: DEFAULT_DEGREE_BOUND,
            seed: 42,
            trials: 5,
            oracle: true,
            trace: false,
            special_points: Vec::new(),
        }
    }
}

/// Runs checks with fixed options, caching completed rewrite systems.
pub struct Checker {
    opts: CheckOptions,
    systems: Mutex<HashMap<String, Arc<RewriteSystem>>>,
}

struct Candidate {
    label: String,
    element: FreeElement,
}

impl Checker {
    pub fn new(opts: CheckOptions) -> Self {
        Checker {
            opts,
            systems: Mutex::new(HashMap::new()),
        }
    }

    pub fn options(&self) -> &CheckOptions {
        &self.opts
    }

    fn cache_key(p: &Presentation, arity: usize, bound: usize) -> String {
        let rels: Vec<String> = p.relations.iter().map(|r| r.display(&p.params).to_string()).collect();
        format!("{arity}|{bound}|{}|{}", p.order().join(","), rels.join(";"))
    }

    /// Completed system of `p` (arity 1) or of its tensor square or cube.
    pub fn system(&self, p: &Presentation, arity: usize) -> Result<Arc<RewriteSystem>> {
        let bound = self.opts.degree_bound;
        let key = Self::cache_key(p, arity, bound);
        if let Some(s) = self.systems.lock().expect("cache lock").get(&key) {
            return Ok(s.clone());
        }
        let sys = if arity <= 1 {
            RewriteSystem::from_relations(&p.alphabet, &p.relations, bound)?
        } else {
            rewrite::tensor_quotient(&p.alphabet, &p.relations, arity, bound)?
        };
        let sys = Arc::new(sys);
        self.systems.lock().expect("cache lock").insert(key, sys.clone());
        Ok(sys)
    }

    fn system_info(name: &str, arity: usize, sys: &RewriteSystem) -> SystemInfo {
        let name = match arity {
            0 | 1 => name.to_string(),
            k => format!("{name}^(x){k}"),
        };
        SystemInfo {
            name,
            rules: sys.rules().len(),
            status: sys.status(),
        }
    }

    fn oracle_points(&self, params: &[String], elements: &[&FreeElement]) -> Vec<Vec<Rational>> {
        if params.is_empty() {
            return vec![Vec::new()];
        }
        let mut points = oracle::random_points(params.len(), self.opts.trials, self.opts.seed, elements);
        for sp in &self.opts.special_points {
            if sp.len() != params.len() {
                continue;
            }
            let values: Option<Vec<Rational>> = params
                .iter()
                .map(|p| sp.iter().find(|(n, _)| n == p).map(|(_, v)| v.clone()))
                .collect();
            if let Some(v) = values {
                if elements.iter().all(|x| x.terms().all(|(_, c)| c.eval(&v).is_ok())) && !points.contains(&v) {
                    points.push(v);
                }
            }
        }
        points
    }

    /// Reduces every candidate in `sys`, replays member traces and, when
    /// enabled, compares each verdict with the oracle on `relations`. The
    /// oracle cap is at least `nominal_degree`, for candidates that already
    /// cancel in the free algebra.
    fn membership_items(
        &self,
        candidates: Vec<Candidate>,
        sys: &RewriteSystem,
        relations: &[FreeElement],
        params: &[String],
        nominal_degree: usize,
    ) -> Result<(Vec<CheckItem>, Option<OracleInfo>)> {
        let results = candidates
            .par_iter()
            .map(|c| sys.ideal_membership(&c.element, true))
            .collect::<Result<Vec<_>>>()?;
        let mut items = Vec::with_capacity(candidates.len());
        for (c, v) in candidates.iter().zip(&results) {
            let verdict = match v.verdict {
                Verdict::Member => ItemVerdict::Member,
                Verdict::NonMemberUpToBound => ItemVerdict::Fail,
                Verdict::Inconclusive => ItemVerdict::Inconclusive,
            };
            let (steps, replayed, lines) = match &v.trace {
                Some(t) => (
                    t.steps.len(),
                    t.verify(sys, &v.remainder),
                    if self.opts.trace {
                        t.lines(sys, params)
                    } else {
                        Vec::new()
                    },
                ),
                None => (0, false, Vec::new()),
            };
            let verdict = if verdict == ItemVerdict::Member && !replayed {
                ItemVerdict::Fail
            } else {
                verdict
            };
            items.push(CheckItem {
                label: c.label.clone(),
                verdict,
                remainder: v.remainder.display(params).to_string(),
                trace_steps: steps,
                trace_replayed: replayed,
                oracle: None,
                trace: lines,
            });
        }
        if !self.opts.oracle || candidates.is_empty() {
            return Ok((items, None));
        }
        let elems: Vec<FreeElement> = candidates.iter().map(|c| c.element.clone()).collect();
        let letters = sys.alphabet().len();
        let deg = elems
            .iter()
            .map(FreeElement::degree)
            .max()
            .unwrap_or(0)
            .max(nominal_degree);
        let max_rel = relations.iter().map(FreeElement::degree).max().unwrap_or(0);
        let cap = if letters <= 4 { deg + 2 } else { deg }.max(max_rel);
        let refs: Vec<&FreeElement> = relations.iter().chain(&elems).collect();
        let points = self.oracle_points(params, &refs);
        let run = oracle::oracle_batch(&elems, relations, cap, &points)?;
        let mut all_agree = true;
        for (item, outcome) in items.iter_mut().zip(&run.outcomes) {
            let agrees = matches!(
                (item.verdict, outcome),
                (ItemVerdict::Member, OracleOutcome::MemberAtAllPoints)
                    | (ItemVerdict::Fail, OracleOutcome::NonMemberWitness(_))
                    | (ItemVerdict::Inconclusive, _)
            );
            all_agree &= agrees;
            item.oracle = Some(OracleCheck {
                outcome: outcome_name(outcome).into(),
                agrees,
            });
        }
        let info = OracleInfo {
            seed: self.opts.seed,
            degree_cap: cap,
            trials: run
                .trials
                .iter()
                .map(|t| TrialInfo {
                    point: t.point.iter().map(fmt_rational).collect(),
                    rows: t.rows,
                    cols: t.cols,
                    rank: t.rank,
                })
                .collect(),
            rank_stable: run.rank_stable(run.trials.len().saturating_sub(1).max(1)),
            agrees: all_agree,
        };
        Ok((items, Some(info)))
    }

    /// Δ(r) reduces to zero in the tensor square for every relation r.
    pub fn check_delta_hom(&self, p: &Presentation) -> Result<CheckReport> {
        coverage::hit("check_delta_hom");
        let sys = self.system(p, 2)?;
        let candidates = p
            .relations
            .iter()
            .enumerate()
            .map(|(i, r)| {
                Ok(Candidate {
                    label: format!("REL {}", i + 1),
                    element: coproduct_extend(&p.coproduct, r)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rels = rewrite::tensor_quotient_relations(&p.relations, 2)?;
        let (items, oracle) = self.membership_items(candidates, &sys, &rels, &p.params, 0)?;
        let engine = EngineInfo {
            degree_bound: self.opts.degree_bound,
            systems: vec![Self::system_info(&p.name, 2, &sys)],
            oracle,
        };
        Ok(CheckReport::new("delta_hom", vec![p.name.clone()], items, engine))
    }

    /// `(Δ⊗id)Δ(x) - (id⊗Δ)Δ(x)` reduces to zero in the tensor cube for every
    /// generator x.
    pub fn check_coassoc(&self, p: &Presentation) -> Result<CheckReport> {
        coverage::hit("check_coassoc");
        let sys = self.system(p, 3)?;
        let square = p.alphabet.tensor(2);
        let cube = p.alphabet.tensor(3);
        // Δ applied to one factor of the square, landing in the cube.
        let split = |which: usize| -> Result<LetterMap> {
            let mut images = Vec::with_capacity(square.len());
            for l in square.letters() {
                let base = square.base_letter(l);
                let f = square.factor_of(l).expect("tensor letter");
                let img = match (f == which, f) {
                    (true, _) => {
                        let d = p.coproduct.image(base);
                        spread(d, &cube, [which, which + 1])?
                    }
                    (false, 1) => FreeElement::letter(&cube, cube.tagged(base, 1)),
                    (false, _) => FreeElement::letter(&cube, cube.tagged(base, 3)),
                };
                images.push(img);
            }
            Ok(LetterMap {
                target: cube.clone(),
                images,
                params: None,
            })
        };
        let left = split(1)?;
        let right = split(2)?;
        let candidates = p
            .declared_letters()
            .map(|l| {
                let d = p.coproduct.image(l);
                Ok(Candidate {
                    label: format!("GEN {}", p.alphabet.letter_name(l)),
                    element: left.apply(d)?.sub(&right.apply(d)?)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rels = rewrite::tensor_quotient_relations(&p.relations, 3)?;
        let (items, oracle) = self.membership_items(candidates, &sys, &rels, &p.params, 3)?;
        let engine = EngineInfo {
            degree_bound: self.opts.degree_bound,
            systems: vec![Self::system_info(&p.name, 3, &sys)],
            oracle,
        };
        Ok(CheckReport::new("coassoc", vec![p.name.clone()], items, engine))
    }

    /// `(ε⊗id)Δ(x) = x = (id⊗ε)Δ(x)` for every generator, and `ε(r) = 0` for
    /// every relation.
    pub fn check_counit(&self, p: &Presentation) -> Result<CheckReport> {
        coverage::hit("check_counit");
        let eps: Vec<Scalar> = p
            .alphabet
            .letters()
            .map(|l| {
                p.counit(l)
                    .cloned()
                    .ok_or_else(|| Error::MissingImage(p.alphabet.letter_name(l)))
            })
            .collect::<Result<_>>()?;
        let sys = self.system(p, 1)?;
        let square = p.alphabet.tensor(2);
        let contract = |keep: usize| LetterMap {
            target: p.alphabet.clone(),
            images: square
                .letters()
                .map(|l| {
                    let base = square.base_letter(l);
                    if square.factor_of(l) == Some(keep) {
                        FreeElement::letter(&p.alphabet, base)
                    } else {
                        FreeElement::scalar(&p.alphabet, eps[base as usize].clone())
                    }
                })
                .collect(),
            params: None,
        };
        let (left, right) = (contract(2), contract(1));
        let mut candidates = Vec::new();
        for l in p.declared_letters() {
            let d = p.coproduct.image(l);
            let x = FreeElement::letter(&p.alphabet, l);
            let name = p.alphabet.letter_name(l);
            candidates.push(Candidate {
                label: format!("GEN {name} left"),
                element: left.apply(d)?.sub(&x)?,
            });
            candidates.push(Candidate {
                label: format!("GEN {name} right"),
                element: right.apply(d)?.sub(&x)?,
            });
        }
        let (mut items, oracle) = self.membership_items(candidates, &sys, &p.relations, &p.params, 0)?;
        let to_scalars = LetterMap {
            target: p.alphabet.clone(),
            images: eps
                .iter()
                .map(|c| FreeElement::scalar(&p.alphabet, c.clone()))
                .collect(),
            params: None,
        };
        let refs: Vec<&FreeElement> = p.relations.iter().collect();
        let points = if self.opts.oracle {
            self.oracle_points(&p.params, &refs)
        } else {
            Vec::new()
        };
        let mut all_agree = oracle.as_ref().is_none_or(|o| o.agrees);
        for (i, r) in p.relations.iter().enumerate() {
            let v = to_scalars.apply(r)?;
            let mut item = CheckItem::plain(format!("REL {}", i + 1), v.is_zero(), v.display(&p.params).to_string());
            if !points.is_empty() {
                let vanishes = points
                    .iter()
                    .map(|pt| counit_at(r, &eps, pt).map(|x| x == integer(0)))
                    .collect::<Result<Vec<_>>>()?;
                let outcome = if vanishes.iter().all(|&z| z) {
                    "member_at_all_points"
                } else if vanishes.iter().all(|&z| !z) {
                    "non_member_witness"
                } else {
                    "mixed"
                };
                let agrees = outcome
                    == if v.is_zero() {
                        "member_at_all_points"
                    } else {
                        "non_member_witness"
                    };
                all_agree &= agrees;
                item.oracle = Some(OracleCheck {
                    outcome: outcome.into(),
                    agrees,
                });
            }
            items.push(item);
        }
        let oracle = oracle.map(|o| OracleInfo { agrees: all_agree, ..o });
        let engine = EngineInfo {
            degree_bound: self.opts.degree_bound,
            systems: vec![Self::system_info(&p.name, 1, &sys)],
            oracle,
        };
        Ok(CheckReport::new("counit", vec![p.name.clone()], items, engine))
    }

    /// Images of the source relations lie in the target ideal.
    pub fn check_algebra_morphism(&self, m: &GenMap) -> Result<CheckReport> {
        coverage::hit("check_algebra_morphism");
        let sys = self.system(&m.target, 1)?;
        let candidates = m
            .image_relations()?
            .into_iter()
            .enumerate()
            .map(|(i, element)| Candidate {
                label: format!("REL {}", i + 1),
                element,
            })
            .collect();
        let (items, oracle) = self.membership_items(candidates, &sys, &m.target.relations, &m.params, 0)?;
        let engine = EngineInfo {
            degree_bound: self.opts.degree_bound,
            systems: vec![Self::system_info(&m.target.name, 1, &sys)],
            oracle,
        };
        Ok(CheckReport::new(
            &format!("algebra_morphism {}", m.name),
            vec![m.source.name.clone(), m.target.name.clone()],
            items,
            engine,
        ))
    }

    /// `(m⊗m)Δ(x) - Δ(m(x))` reduces to zero in the target's tensor square for
    /// every source generator x.
    pub fn check_coalgebra_morphism(&self, m: &GenMap) -> Result<CheckReport> {
        coverage::hit("check_coalgebra_morphism");
        let sys = self.system(&m.target, 2)?;
        let candidates = m
            .source
            .declared_letters()
            .map(|l| {
                let pushed = m.apply_tensor(m.source.coproduct.image(l), 2)?;
                let direct = coproduct_extend(&m.target.coproduct, &m.images[l as usize])?;
                Ok(Candidate {
                    label: format!("GEN {}", m.source.alphabet.letter_name(l)),
                    element: pushed.sub(&direct)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rels = rewrite::tensor_quotient_relations(&m.target.relations, 2)?;
        let (items, oracle) = self.membership_items(candidates, &sys, &rels, &m.params, 0)?;
        let engine = EngineInfo {
            degree_bound: self.opts.degree_bound,
            systems: vec![Self::system_info(&m.target.name, 2, &sys)],
            oracle,
        };
        Ok(CheckReport::new(
            &format!("coalgebra_morphism {}", m.name),
            vec![m.source.name.clone(), m.target.name.clone()],
            items,
            engine,
        ))
    }

    /// Algebra and coalgebra morphism checks for `m: p → q` and its inverse.
    pub fn check_equivalence(&self, p: &Presentation, q: &Presentation, m: &GenMap) -> Result<CheckReport> {
        coverage::hit("check_equivalence");
        if m.source.name != p.name || m.target.name != q.name {
            return Err(invalid(format!(
                "map `{}` goes from {} to {}, not from {} to {}",
                m.name, m.source.name, m.target.name, p.name, q.name
            )));
        }
        let inv = m.inverse()?;
        let parts = vec![
            self.check_algebra_morphism(m)?,
            self.check_algebra_morphism(&inv)?,
            self.check_coalgebra_morphism(m)?,
            self.check_coalgebra_morphism(&inv)?,
        ];
        Ok(CheckReport::aggregate(
            &format!("equivalence {}", m.name),
            vec![p.name.clone(), q.name.clone()],
            parts,
            self.opts.degree_bound,
        ))
    }

    /// Specializes `p` and compares the canonical relation set with `expected`
    /// in both directions.
    pub fn check_specialization(
        &self,
        p: &Presentation,
        assignment: &[(String, Rational)],
        expected: &Presentation,
    ) -> Result<(Presentation, CheckReport)> {
        let s = specialize(p, assignment)?;
        let mine = s.canonical_relations();
        let theirs = if is_permutation(&s.generators, &expected.generators) {
            let moved = expected
                .relations
                .iter()
                .map(|r| r.transport(&s.alphabet))
                .collect::<Result<Vec<_>>>()?;
            canonical_set(&moved, &s.params)
        } else {
            Vec::new()
        };
        let mut items = Vec::new();
        for (i, r) in mine.iter().enumerate() {
            items.push(CheckItem::plain(
                format!("REL {}", i + 1),
                theirs.contains(r),
                r.display(&s.params).to_string(),
            ));
        }
        for (i, r) in theirs.iter().enumerate() {
            items.push(CheckItem::plain(
                format!("REL {} converse", i + 1),
                mine.contains(r),
                r.display(&s.params).to_string(),
            ));
        }
        if s.params != expected.params {
            items.push(CheckItem::plain("PARAMS", false, s.params.join(",")));
        }
        let report = CheckReport::new(
            "specialization",
            vec![p.name.clone(), expected.name.clone()],
            items,
            EngineInfo {
                degree_bound: self.opts.degree_bound,
                ..EngineInfo::default()
            },
        );
        Ok((s, report))
    }
}

/// ε(r) at a parameter point, summed term by term.
fn counit_at(r: &FreeElement, eps: &[Scalar], point: &[Rational]) -> Result<Rational> {
    let eps: Vec<Rational> = eps.iter().map(|e| e.eval(point)).collect::<Result<_>>()?;
    let mut total = integer(0);
    for (w, c) in r.terms() {
        let mut t = c.eval(point)?;
        for &l in w.letters() {
            t *= &eps[l as usize];
        }
        total += t;
    }
    Ok(total)
}

fn outcome_name(o: &OracleOutcome) -> &'static str {
    match o {
        OracleOutcome::MemberAtAllPoints => "member_at_all_points",
        OracleOutcome::NonMemberWitness(_) => "non_member_witness",
        OracleOutcome::Mixed => "mixed",
    }
}

/// Moves a tensor-square element into factors `factors` of `cube`.
fn spread(x: &FreeElement, cube: &Alphabet, factors: [usize; 2]) -> Result<FreeElement> {
    let square = x.alphabet().clone();
    let map = LetterMap {
        target: cube.clone(),
        images: square
            .letters()
            .map(|l| {
                let f = square.factor_of(l).expect("tensor letter");
                FreeElement::letter(cube, cube.tagged(square.base_letter(l), factors[f - 1]))
            })
            .collect(),
        params: None,
    };
    map.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::dsl::parse_element;
    use crate::cli::library::{builtin, resolve_map};

    fn elem(p: &Presentation, src: &str) -> FreeElement {
        parse_element(src, p.generators(), p.params(), p.alphabet()).unwrap()
    }

    fn at(g: i64, h: i64) -> Vec<(String, Rational)> {
        vec![("g".into(), integer(g)), ("h".into(), integer(h))]
    }

    fn quiet() -> Checker {
        Checker::new(CheckOptions {
            oracle: false,
            ..CheckOptions::default()
        })
    }

    fn exchange() -> (Presentation, Presentation, GenMap) {
        let s = specialize(&builtin("glgh").unwrap(), &at(0, 1)).unwrap();
        let illy = builtin("illy").unwrap();
        let m = resolve_map("exchange", &s, &illy).unwrap();
        (s, illy, m)
    }

    #[test]
    fn exchange_images_of_relations() {
        let (s, illy, m) = exchange();
        assert_eq!(m.apply(&elem(&s, "bc - cb - ac")).unwrap(), elem(&illy, "cb - bc - db"));
        assert_eq!(m.apply(&elem(&s, "ad - da + ac")).unwrap(), elem(&illy, "da - ad + db"));
    }

    #[test]
    fn identity_map_fixes_elements() {
        let illy = builtin("illy").unwrap();
        let x = elem(&illy, "3ab - d^2c + 1/2");
        assert_eq!(GenMap::identity(&illy).apply(&x).unwrap(), x);
    }

    #[test]
    fn exchange_is_its_own_inverse() {
        let (s, _, m) = exchange();
        let back = m.inverse().unwrap();
        for g in s.generators() {
            assert_eq!(back.image(&m.image(g).unwrap().to_string()).unwrap().to_string(), *g);
        }
    }

    #[test]
    fn non_permutation_maps_are_not_inverted() {
        let illy = builtin("illy").unwrap();
        let pairs = ["a", "b", "c", "d"].map(|g| (g.to_string(), elem(&illy, if g == "a" { "a + b" } else { g })));
        let m = GenMap::new("skew", &illy, &illy, pairs.to_vec(), Vec::new()).unwrap();
        assert!(matches!(m.inverse(), Err(Error::NonInvertibleMap(_))));
    }

    #[test]
    fn undeformed_specialization_is_commutative() {
        let s = specialize(&builtin("glgh").unwrap(), &at(0, 0)).unwrap();
        assert!(s.params().is_empty());
        let mut expected: Vec<String> = ["ab - ba", "ac - ca", "ad - da", "bc - cb", "bd - db", "cd - dc"]
            .iter()
            .map(|r| elem(&s, r).monic().to_string())
            .collect();
        let mut got: Vec<String> = s.relations().iter().map(|r| r.monic().to_string()).collect();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_specialization_keeps_relations() {
        let illy = builtin("illy").unwrap();
        assert!(specialize(&illy, &[]).unwrap().same_relations(&illy).unwrap());
    }

    #[test]
    fn specialization_errors() {
        let glgh = builtin("glgh").unwrap();
        assert_eq!(
            specialize(&glgh, &[("k".into(), integer(1))]).unwrap_err(),
            Error::UnknownParameter("k".into())
        );
        let twice = vec![("g".into(), integer(1)), ("g".into(), integer(2))];
        assert!(specialize(&glgh, &twice).is_err());
    }

    #[test]
    fn delta_of_bd_minus_db_vanishes_in_illy() {
        let illy = builtin("illy").unwrap();
        let r = coproduct_extend(illy.coproduct(), &elem(&illy, "bd - db")).unwrap();
        assert!(!r.is_zero());
        let sys = quiet().system(&illy, 2).unwrap();
        assert!(sys.normal_form(&r).unwrap().is_zero());
    }

    #[test]
    fn bialgebra_checks_on_illy() {
        let illy = builtin("illy").unwrap();
        let c = quiet();
        for r in [c.check_delta_hom(&illy), c.check_coassoc(&illy), c.check_counit(&illy)] {
            let r = r.unwrap();
            assert_eq!(r.overall, Overall::Pass, "{}", r.check);
        }
        assert_eq!(c.check_coassoc(&illy).unwrap().items.len(), 4);
        let counit = c.check_counit(&illy).unwrap();
        assert_eq!(counit.items.len(), 8 + 6);
        assert_eq!(counit.items[0].label, "GEN a left");
    }

    #[test]
    fn perturbed_commutator_breaks_delta() {
        let illy = builtin("illy").unwrap();
        let mut parts = illy.to_parts();
        parts.relations[1] = elem(&illy, "[a,c] - b^2");
        let bad = Presentation::new(parts).unwrap();
        let r = quiet().check_delta_hom(&bad).unwrap();
        assert_eq!(r.overall, Overall::Fail);
        assert!(r
            .items
            .iter()
            .any(|i| i.verdict == ItemVerdict::Fail && i.remainder != "0"));
    }

    #[test]
    fn counit_of_deformed_relation_vanishes() {
        let glgh = builtin("glgh").unwrap();
        let eps: Vec<Scalar> = glgh
            .alphabet()
            .letters()
            .map(|l| glgh.counit(l).unwrap().clone())
            .collect();
        let r = elem(&glgh, "dc - cd - hc^2");
        assert_eq!(counit_at(&r, &eps, &[integer(3), integer(-2)]).unwrap(), integer(0));
        let q = elem(&glgh, "ad - 1");
        assert_eq!(counit_at(&q, &eps, &[integer(3), integer(-2)]).unwrap(), integer(0));
        assert_eq!(
            counit_at(&elem(&glgh, "a^2 + d"), &eps, &[integer(0), integer(0)]).unwrap(),
            integer(2)
        );
    }

    #[test]
    fn equivalences() {
        let c = quiet();
        let (s, illy, m) = exchange();
        let r = c.check_equivalence(&s, &illy, &m).unwrap();
        assert_eq!(r.overall, Overall::Pass);
        assert_eq!(r.parts.len(), 4);
        assert_eq!(r.count(ItemVerdict::Member), 6 + 6 + 4 + 4);
        let id = GenMap::identity(&illy);
        assert_eq!(c.check_equivalence(&illy, &illy, &id).unwrap().overall, Overall::Pass);
        let glgh = builtin("glgh").unwrap();
        let sym = resolve_map("exchange", &glgh, &illy).unwrap();
        assert_eq!(c.check_equivalence(&glgh, &illy, &sym).unwrap().overall, Overall::Fail);
    }

    #[test]
    fn coalgebra_morphism_items_are_zero_differences() {
        let (_, _, m) = exchange();
        let r = quiet().check_coalgebra_morphism(&m).unwrap();
        let labels: Vec<&str> = r.items.iter().map(|i| i.label.as_str()).collect();
        assert_eq!(labels, ["GEN a", "GEN b", "GEN c", "GEN d"]);
        assert!(r.items.iter().all(|i| i.remainder == "0"));
    }

    #[test]
    fn presentation_validation() {
        let illy = builtin("illy").unwrap();
        let mut dup = illy.to_parts();
        dup.relations.push(dup.relations[0].scale(&Scalar::from_int(3)));
        assert!(matches!(Presentation::new(dup), Err(Error::InvalidPresentation(_))));
        let mut partial = illy.to_parts();
        partial.coproduct.pop();
        assert!(Presentation::new(partial).is_err());
        let mut clash = illy.to_parts();
        clash.params = vec!["a".into()];
        assert!(Presentation::new(clash).is_err());
    }

    #[test]
    fn oracle_agrees_on_illy_delta() {
        let illy = builtin("illy").unwrap();
        let r = Checker::new(CheckOptions::default()).check_delta_hom(&illy).unwrap();
        let o = r.engine.oracle.unwrap();
        assert!(o.agrees && o.rank_stable);
        assert_eq!(o.trials.len(), 1);
    }
}
