//! Noncommutative rewriting: orientation of relations into rules, degree-bounded
//! completion (resolution of overlap ambiguities), normal forms and ideal
//! membership with traces.
//!
//! Rules are kept inter-reduced: no left-hand side contains another one as a
//! factor, so inclusion ambiguities never survive and every word has at most
//! one applicable rule per position.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::freealg::{fmt_word, tensor_embed, Alphabet, FreeElement, Letter, Word};
use crate::scalars::Scalar;

/// Reduction steps allowed for a single normal form computation.
pub const STEP_BUDGET: usize = 1_000_000;

/// Default degree bound for completion.
pub const DEFAULT_DEGREE_BOUND: usize = 8;

/// `lhs → rhs`, encoding the monic relation `lhs - rhs = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Word,
    pub rhs: FreeElement,
    pub source: String,
}

impl RewriteRule {
    pub fn element(&self) -> FreeElement {
        let lead = FreeElement::monomial(self.rhs.alphabet(), self.lhs.clone(), Scalar::one());
        lead.sub(&self.rhs).expect("same alphabet")
    }

    pub fn degree(&self) -> usize {
        self.lhs.len()
    }

    pub fn display(&self, params: &[String]) -> String {
        format!(
            "{} -> {}",
            fmt_word(self.rhs.alphabet(), &self.lhs),
            self.rhs.display(params)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Every overlap ambiguity up to the degree bound resolves.
    ConfluentUpToBound,
    /// A resource budget ran out before all ambiguities up to the bound were resolved.
    Inconclusive,
    /// Every overlap ambiguity resolves, with no degree restriction.
    Saturated,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::ConfluentUpToBound => "confluent_up_to_bound",
            Status::Inconclusive => "inconclusive",
            Status::Saturated => "saturated",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletionStats {
    pub overlaps_resolved: usize,
    pub rules_adjoined: usize,
    pub verification_rounds: usize,
}

#[derive(Clone, Copy, Debug)]
pub struct CompletionLimits {
    pub max_rules: usize,
    pub step_budget: usize,
}

impl Default for CompletionLimits {
    fn default() -> Self {
        CompletionLimits {
            max_rules: 200_000,
            step_budget: STEP_BUDGET,
        }
    }
}

/// Lookup structure over rule left-hand sides.
#[derive(Clone, Debug, Default)]
struct LhsIndex {
    by_word: HashMap<Vec<Letter>, usize>,
    lengths: Vec<usize>,
}

impl LhsIndex {
    fn insert(&mut self, w: &Word, id: usize) {
        self.by_word.insert(w.letters().to_vec(), id);
        if let Err(pos) = self.lengths.binary_search(&w.len()) {
            self.lengths.insert(pos, w.len());
        }
    }

    fn remove(&mut self, w: &Word) {
        self.by_word.remove(w.letters());
    }

    /// Leftmost match; earliest rule id among matches at that position.
    fn find(&self, w: &Word) -> Option<(usize, usize)> {
        let letters = w.letters();
        for pos in 0..letters.len() {
            let mut best: Option<usize> = None;
            for &l in &self.lengths {
                if pos + l > letters.len() {
                    break;
                }
                if let Some(&id) = self.by_word.get(&letters[pos..pos + l]) {
                    best = Some(best.map_or(id, |b| b.min(id)));
                }
            }
            if let Some(id) = best {
                return Some((id, pos));
            }
        }
        None
    }

    fn all_matches(&self, w: &Word) -> Vec<(usize, usize)> {
        let letters = w.letters();
        let mut out = Vec::new();
        for pos in 0..letters.len() {
            for &l in &self.lengths {
                if pos + l > letters.len() {
                    break;
                }
                if let Some(&id) = self.by_word.get(&letters[pos..pos + l]) {
                    out.push((id, pos));
                }
            }
        }
        out
    }
}

/// One rewrite step: the term `coeff · word` with `word = u · lhs · v`,
/// `|u| = position`, was replaced by `coeff · u · rhs · v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: usize,
    pub position: usize,
    pub word: Word,
    pub coeff: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub input: FreeElement,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// The ideal element removed by step `k`: `coeff · u · (lhs - rhs) · v`.
    fn step_element(&self, system: &RewriteSystem, step: &TraceStep) -> FreeElement {
        let rule = &system.rules[step.rule];
        let letters = step.word.letters();
        let (u, v) = (&letters[..step.position], &letters[step.position + rule.lhs.len()..]);
        rule.element().wrap_scaled(u, v, &step.coeff)
    }

    /// Rebuilds the input as `remainder + Σ coeff · u · (lhs - rhs) · v`.
    pub fn replay(&self, system: &RewriteSystem, remainder: &FreeElement) -> Result<FreeElement> {
        let mut acc = remainder.clone();
        for step in &self.steps {
            if step.rule >= system.rules.len() {
                return Err(Error::InvalidPresentation(format!(
                    "trace names unknown rule {}",
                    step.rule
                )));
            }
            acc = acc.add(&self.step_element(system, step))?;
        }
        Ok(acc)
    }

    /// True when replaying from `remainder` gives back the input.
    pub fn verify(&self, system: &RewriteSystem, remainder: &FreeElement) -> bool {
        self.replay(system, remainder).is_ok_and(|x| x == self.input)
    }

    /// One line per step: rule id, position, resulting element.
    pub fn lines(&self, system: &RewriteSystem, params: &[String]) -> Vec<String> {
        let mut cur = self.input.clone();
        let mut out = Vec::with_capacity(self.steps.len());
        for (k, step) in self.steps.iter().enumerate() {
            cur = cur.sub(&self.step_element(system, step)).expect("same alphabet");
            out.push(format!(
                "step {}: rule {} at {}: {}",
                k + 1,
                step.rule,
                step.position,
                cur.display(params)
            ));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    NonMemberUpToBound,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub remainder: FreeElement,
    pub trace: Option<Trace>,
}

/// An inter-reduced rule set with its completion status.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    alphabet: Alphabet,
    rules: Vec<RewriteRule>,
    index: LhsIndex,
    degree_bound: usize,
    status: Status,
    homogeneous: bool,
    stats: CompletionStats,
}

fn orient_one(rel: &FreeElement, source: String) -> Result<Option<RewriteRule>> {
    let Some((lead, lc)) = rel.leading() else {
        return Ok(None);
    };
    if lc.is_zero() {
        return Err(Error::NonOrientable);
    }
    let lead = lead.clone();
    let mut source = source;
    if !lc.is_constant() {
        let _ = write!(source, " [divided by parameter-dependent leading coefficient]");
    }
    let monic = rel.monic();
    let lead_elem = FreeElement::monomial(rel.alphabet(), lead.clone(), Scalar::one());
    let rhs = lead_elem.sub(&monic)?;
    Ok(Some(RewriteRule { lhs: lead, rhs, source }))
}

/// Scales each relation to have leading coefficient 1 and splits it as
/// `lhs → lhs - relation`. Zero relations are skipped.
pub fn orient(relations: &[FreeElement]) -> Result<Vec<RewriteRule>> {
    crate::coverage::hit("orient");
    let mut out = Vec::new();
    for (i, rel) in relations.iter().enumerate() {
        if let Some(rule) = orient_one(rel, format!("rel {}", i + 1))? {
            out.push(rule);
        }
    }
    Ok(out)
}

/// Mutable rule store used while completing.
struct Completion {
    alphabet: Alphabet,
    rules: Vec<Option<RewriteRule>>,
    index: LhsIndex,
    bound: usize,
    pairs: BTreeMap<(usize, usize), (usize, usize, usize)>,
    seq: usize,
    limits: CompletionLimits,
    exhausted: bool,
    stats: CompletionStats,
}

impl Completion {
    fn reduce(&self, x: &FreeElement) -> Option<FreeElement> {
        let mut work = x.clone();
        let mut out = FreeElement::zero(&self.alphabet);
        let mut steps = 0usize;
        while let Some((w, c)) = work.pop_leading() {
            match self.index.find(&w) {
                None => out.add_term(w, c),
                Some((id, pos)) => {
                    steps += 1;
                    if steps > self.limits.step_budget {
                        return None;
                    }
                    let rule = self.rules[id].as_ref().expect("indexed rules are live");
                    let l = w.letters();
                    let repl = rule.rhs.wrap_scaled(&l[..pos], &l[pos + rule.lhs.len()..], &c);
                    for (w2, c2) in repl.into_terms() {
                        work.add_term(w2, c2);
                    }
                }
            }
        }
        Some(out)
    }

    fn live(&self) -> impl Iterator<Item = (usize, &RewriteRule)> {
        self.rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().map(|r| (i, r)))
    }

    fn live_count(&self) -> usize {
        self.index.by_word.len()
    }

    fn queue_pairs(&mut self, new: usize) {
        let ids: Vec<usize> = self.live().map(|(i, _)| i).collect();
        for other in ids {
            let combos = if other == new {
                vec![(new, new)]
            } else {
                vec![(new, other), (other, new)]
            };
            for (i, j) in combos {
                let (lhs_i, lhs_j) = (
                    &self.rules[i].as_ref().unwrap().lhs,
                    &self.rules[j].as_ref().unwrap().lhs,
                );
                for k in overlaps(lhs_i, lhs_j) {
                    let deg = lhs_i.len() + lhs_j.len() - k;
                    if deg <= self.bound {
                        self.seq += 1;
                        self.pairs.insert((deg, self.seq), (i, j, k));
                    }
                }
            }
        }
    }

    /// Reduces `elem`, adjoins it as a rule if nonzero, and re-inserts any
    /// rule whose left-hand side became reducible.
    fn insert(&mut self, elem: FreeElement, source: String) {
        let mut queue = vec![(elem, source)];
        while let Some((e, src)) = queue.pop() {
            if self.live_count() >= self.limits.max_rules {
                self.exhausted = true;
                return;
            }
            let Some(r) = self.reduce(&e) else {
                self.exhausted = true;
                return;
            };
            let Some(rule) = orient_one(&r, src).expect("normal forms have nonzero coefficients") else {
                continue;
            };
            let id = self.rules.len();
            let stale: Vec<usize> = self
                .live()
                .filter(|(_, old)| old.lhs.contains(&rule.lhs))
                .map(|(i, _)| i)
                .collect();
            for i in stale {
                let old = self.rules[i].take().unwrap();
                self.index.remove(&old.lhs);
                let src = format!("{} (re-reduced)", old.source);
                queue.push((old.element(), src));
            }
            self.index.insert(&rule.lhs, id);
            self.rules.push(Some(rule));
            self.stats.rules_adjoined += 1;
            self.queue_pairs(id);
        }
    }

    fn s_element(&self, i: usize, j: usize, k: usize) -> Option<FreeElement> {
        let (ri, rj) = (self.rules[i].as_ref()?, self.rules[j].as_ref()?);
        Some(s_element(ri, rj, k))
    }

    fn run(&mut self) {
        while let Some((_, (i, j, k))) = self.pairs.pop_first() {
            if self.exhausted {
                return;
            }
            let Some(s) = self.s_element(i, j, k) else { continue };
            self.stats.overlaps_resolved += 1;
            let src = format!(
                "overlap({},{})",
                fmt_word(&self.alphabet, &self.rules[i].as_ref().unwrap().lhs),
                fmt_word(&self.alphabet, &self.rules[j].as_ref().unwrap().lhs)
            );
            self.insert(s, src);
        }
    }

    /// Compacts live rules sorted by lhs and replaces every rhs by its normal form.
    fn finish(&mut self) -> Vec<RewriteRule> {
        let mut live: Vec<RewriteRule> = self.rules.drain(..).flatten().collect();
        live.sort_by(|a, b| a.lhs.cmp(&b.lhs));
        self.index = LhsIndex::default();
        for (i, r) in live.iter().enumerate() {
            self.index.insert(&r.lhs, i);
        }
        self.rules = live.into_iter().map(Some).collect();
        for i in 0..self.rules.len() {
            let rhs = self.rules[i].as_ref().unwrap().rhs.clone();
            if let Some(nf) = self.reduce(&rhs) {
                self.rules[i].as_mut().unwrap().rhs = nf;
            } else {
                self.exhausted = true;
            }
        }
        self.rules.iter().flatten().cloned().collect()
    }
}

/// Lengths `k` of proper overlaps where the last `k` letters of `u` equal the
/// first `k` letters of `v`.
fn overlaps(u: &Word, v: &Word) -> Vec<usize> {
    let (u, v) = (u.letters(), v.letters());
    let max = u.len().min(v.len());
    (1..max).filter(|&k| u[u.len() - k..] == v[..k]).collect()
}

/// For `lhs_i = p · o`, `lhs_j = o · t` with `|o| = k`: the difference of the
/// two one-step reductions of `p · o · t`.
fn s_element(ri: &RewriteRule, rj: &RewriteRule, k: usize) -> FreeElement {
    let tail = &rj.lhs.letters()[k..];
    let head = &ri.lhs.letters()[..ri.lhs.len() - k];
    let one = Scalar::one();
    let left = ri.rhs.wrap_scaled(&[], tail, &one);
    let right = rj.rhs.wrap_scaled(head, &[], &one);
    left.sub(&right).expect("same alphabet")
}

/// Degree-bounded completion of `rules` over `alphabet`.
pub fn complete(alphabet: &Alphabet, rules: Vec<RewriteRule>, degree_bound: usize) -> Result<RewriteSystem> {
    complete_with_limits(alphabet, rules, degree_bound, CompletionLimits::default())
}

pub fn complete_with_limits(
    alphabet: &Alphabet,
    rules: Vec<RewriteRule>,
    degree_bound: usize,
    limits: CompletionLimits,
) -> Result<RewriteSystem> {
    crate::coverage::hit("complete");
    let needed = rules.iter().map(RewriteRule::degree).max().unwrap_or(0);
    if degree_bound < needed {
        return Err(Error::BoundTooSmall {
            bound: degree_bound,
            needed,
        });
    }
    for r in &rules {
        if r.rhs.alphabet() != alphabet {
            return Err(Error::AlphabetMismatch);
        }
    }
    let homogeneous = rules.iter().all(|r| r.element().is_homogeneous());
    let mut c = Completion {
        alphabet: alphabet.clone(),
        rules: Vec::new(),
        index: LhsIndex::default(),
        bound: degree_bound,
        pairs: BTreeMap::new(),
        seq: 0,
        limits,
        exhausted: false,
        stats: CompletionStats::default(),
    };
    for r in rules {
        let src = r.source.clone();
        c.insert(r.element(), src);
    }
    let final_rules = loop {
        c.run();
        let rules = c.finish();
        if c.exhausted {
            break rules;
        }
        c.stats.verification_rounds += 1;
        // Every ambiguity of the final system up to the bound must resolve.
        let mut unresolved = Vec::new();
        for (i, j, k) in all_overlaps(&rules, degree_bound) {
            let s = s_element(&rules[i], &rules[j], k);
            match c.reduce(&s) {
                None => {
                    c.exhausted = true;
                    break;
                }
                Some(nf) if !nf.is_zero() => unresolved.push((nf, format!("overlap({i},{j})"))),
                Some(_) => {}
            }
        }
        if unresolved.is_empty() || c.exhausted {
            break rules;
        }
        for (e, src) in unresolved {
            c.insert(e, src);
        }
    };
    let status = if c.exhausted {
        Status::Inconclusive
    } else if all_overlaps(&final_rules, usize::MAX)
        .iter()
        .any(|&(i, j, k)| final_rules[i].lhs.len() + final_rules[j].lhs.len() - k > degree_bound)
    {
        Status::ConfluentUpToBound
    } else {
        Status::Saturated
    };
    Ok(RewriteSystem::from_parts(
        alphabet.clone(),
        final_rules,
        degree_bound,
        status,
        homogeneous,
        c.stats,
    ))
}

fn all_overlaps(rules: &[RewriteRule], bound: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..rules.len() {
        for j in 0..rules.len() {
            for k in overlaps(&rules[i].lhs, &rules[j].lhs) {
                if rules[i].lhs.len() + rules[j].lhs.len() - k <= bound {
                    out.push((i, j, k));
                }
            }
        }
    }
    out
}

/// Generators of the ideal defining the `arity`-fold tensor power: each
/// relation copied into every factor, then the cross-factor commutations
/// `x_j y_i - y_i x_j` for `i < j`.
pub fn tensor_quotient_relations(relations: &[FreeElement], arity: usize) -> Result<Vec<FreeElement>> {
    let base = match relations.first() {
        Some(r) => r.alphabet().clone(),
        None => return Ok(Vec::new()),
    };
    let mut out = Vec::new();
    for f in 1..=arity {
        for r in relations {
            out.push(tensor_embed(r, f, arity)?);
        }
    }
    out.extend(commutations(&base, arity));
    Ok(out)
}

fn commutations(base: &Alphabet, arity: usize) -> Vec<FreeElement> {
    let t = base.tensor(arity);
    let mut out = Vec::new();
    for i in 1..=arity {
        for j in i + 1..=arity {
            for x in base.letters() {
                for y in base.letters() {
                    let (xj, yi) = (t.tagged(x, j), t.tagged(y, i));
                    let one = Scalar::one();
                    out.push(FreeElement::from_terms(
                        &t,
                        [
                            (Word::new(vec![xj, yi]), one.clone()),
                            (Word::new(vec![yi, xj]), one.neg()),
                        ],
                    ));
                }
            }
        }
    }
    out
}

/// Completed system for the `arity`-fold tensor power of the algebra
/// presented by `relations` over `base`.
pub fn tensor_quotient(
    base: &Alphabet,
    relations: &[FreeElement],
    arity: usize,
    degree_bound: usize,
) -> Result<RewriteSystem> {
    crate::coverage::hit("tensor_quotient");
    if !(2..=3).contains(&arity) {
        return Err(Error::BadFactorIndex {
            factor: arity,
            arity: 3,
        });
    }
    let mut gens = Vec::new();
    for f in 1..=arity {
        for r in relations {
            gens.push(tensor_embed(r, f, arity)?);
        }
    }
    gens.extend(commutations(base, arity));
    let rules = orient(&gens)?;
    let labelled = rules
        .into_iter()
        .map(|mut r| {
            if r.lhs.len() == 2 && r.rhs.num_terms() == 1 && is_commutation(&r) {
                r.source = "commutation".into();
            }
            r
        })
        .collect();
    complete(&base.tensor(arity), labelled, degree_bound)
}

fn is_commutation(r: &RewriteRule) -> bool {
    let a = r.rhs.alphabet();
    let l = r.lhs.letters();
    a.factor_of(l[0]) != a.factor_of(l[1])
        && r.rhs
            .terms()
            .next()
            .is_some_and(|(w, c)| c.is_one() && w.letters() == [l[1], l[0]])
}

impl RewriteSystem {
    fn from_parts(
        alphabet: Alphabet,
        rules: Vec<RewriteRule>,
        degree_bound: usize,
        status: Status,
        homogeneous: bool,
        stats: CompletionStats,
    ) -> Self {
        let mut index = LhsIndex::default();
        for (i, r) in rules.iter().enumerate() {
            index.insert(&r.lhs, i);
        }
        RewriteSystem {
            alphabet,
            rules,
            index,
            degree_bound,
            status,
            homogeneous,
            stats,
        }
    }

    /// Orients and completes `relations`.
    pub fn from_relations(alphabet: &Alphabet, relations: &[FreeElement], degree_bound: usize) -> Result<Self> {
        complete(alphabet, orient(relations)?, degree_bound)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn status(&self) -> Status {
        self.status
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn stats(&self) -> &CompletionStats {
        &self.stats
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.index.find(w).is_none()
    }

    fn reduce(&self, x: &FreeElement, mut trace: Option<&mut Vec<TraceStep>>) -> Option<FreeElement> {
        let mut work = x.clone();
        let mut out = FreeElement::zero(&self.alphabet);
        let mut steps = 0usize;
        while let Some((w, c)) = work.pop_leading() {
            match self.index.find(&w) {
                None => out.add_term(w, c),
                Some((id, pos)) => {
                    steps += 1;
                    if steps > STEP_BUDGET {
                        return None;
                    }
                    let rule = &self.rules[id];
                    let l = w.letters();
                    let repl = rule.rhs.wrap_scaled(&l[..pos], &l[pos + rule.lhs.len()..], &c);
                    for (w2, c2) in repl.into_terms() {
                        work.add_term(w2, c2);
                    }
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(TraceStep {
                            rule: id,
                            position: pos,
                            word: w,
                            coeff: c,
                        });
                    }
                }
            }
        }
        Some(out)
    }

    /// Rewrites the largest reducible word (leftmost match) until irreducible.
    pub fn normal_form(&self, x: &FreeElement) -> Result<FreeElement> {
        crate::coverage::hit("normal_form");
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(self.reduce(x, None).expect("step budget exceeded"))
    }

    pub fn normal_form_traced(&self, x: &FreeElement) -> Result<(FreeElement, Trace)> {
        crate::coverage::hit("normal_form");
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut steps = Vec::new();
        let nf = self.reduce(x, Some(&mut steps)).expect("step budget exceeded");
        Ok((
            nf,
            Trace {
                input: x.clone(),
                steps,
            },
        ))
    }

    /// Applies rules at random reducible positions until irreducible. On a
    /// confluent system the result equals [`Self::normal_form`].
    pub fn normal_form_randomized<R: Rng>(&self, x: &FreeElement, rng: &mut R) -> Result<FreeElement> {
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut cur = x.clone();
        for _ in 0..STEP_BUDGET {
            let reducible: Vec<(&Word, &Scalar)> = cur.terms().filter(|(w, _)| self.index.find(w).is_some()).collect();
            if reducible.is_empty() {
                return Ok(cur);
            }
            let (w, c) = reducible[rng.gen_range(0..reducible.len())];
            let matches = self.index.all_matches(w);
            let (id, pos) = matches[rng.gen_range(0..matches.len())];
            let rule = &self.rules[id];
            let l = w.letters();
            let step = rule.element().wrap_scaled(&l[..pos], &l[pos + rule.lhs.len()..], c);
            cur = cur.sub(&step)?;
        }
        panic!("step budget exceeded");
    }

    /// Decides two-sided ideal membership of `x` by reduction to normal form.
    pub fn ideal_membership(&self, x: &FreeElement, with_trace: bool) -> Result<MembershipVerdict> {
        crate::coverage::hit("ideal_membership");
        // Decided by the normal form of `x`.
        crate::coverage::hit("normal_form");
        if x.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut steps = Vec::new();
        let reduced = self.reduce(x, with_trace.then_some(&mut steps));
        let Some(remainder) = reduced else {
            return Ok(MembershipVerdict {
                verdict: Verdict::Inconclusive,
                remainder: x.clone(),
                trace: None,
            });
        };
        let verdict = if remainder.is_zero() {
            Verdict::Member
        } else {
            match self.status {
                Status::Saturated => Verdict::NonMemberUpToBound,
                Status::ConfluentUpToBound if self.homogeneous && x.degree() <= self.degree_bound => {
                    Verdict::NonMemberUpToBound
                }
                _ => Verdict::Inconclusive,
            }
        };
        let trace = with_trace.then(|| Trace {
            input: x.clone(),
            steps,
        });
        Ok(MembershipVerdict {
            verdict,
            remainder,
            trace,
        })
    }
}
