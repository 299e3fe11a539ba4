//! Degree-bounded linear-algebra ideal membership, used to cross-check the
//! rewriting engine.
//!
//! At a rational parameter point every relation becomes a vector over the
//! basis of words of length ≤ cap. The oracle spans all products `u · r · v`
//! that fit under the cap, brings them to echelon form by exact rational
//! elimination and tests whether the candidate lies in the span. No rewrite
//! rules or completion are involved.

use std::collections::HashMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freealg::{FreeElement, Letter, Word};
use crate::scalars::{integer, Rational};

/// All words of length ≤ `degree_cap`, in deglex order.
#[derive(Clone, Debug)]
pub struct GradedBasis {
    pub degree_cap: usize,
    pub words: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl GradedBasis {
    pub fn new(letters: usize, degree_cap: usize) -> Self {
        let mut words = vec![Word::empty()];
        let mut layer = vec![Vec::<Letter>::new()];
        for _ in 0..degree_cap {
            let mut next = Vec::with_capacity(layer.len() * letters);
            for w in &layer {
                for l in 0..letters as Letter {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned().map(Word::new));
            layer = next;
        }
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        GradedBasis {
            degree_cap,
            words,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn position(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }
}

/// Sparse vector, entries sorted by descending basis index.
type Row = Vec<(usize, Rational)>;

fn axpy(row: &Row, c: &Rational, pivot: &Row) -> Row {
    // row - c * pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 > pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 > row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(c * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - c * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Echelon basis of the degree-capped part of an ideal at one parameter point.
pub struct OracleSpan {
    basis: GradedBasis,
    pivots: Vec<Option<Row>>,
    pub generated_rows: usize,
    pub rank: usize,
}

fn evaluate(x: &FreeElement, point: &[Rational]) -> Result<Vec<(Word, Rational)>> {
    x.terms()
        .map(|(w, c)| Ok((w.clone(), c.eval(point)?)))
        .filter(|r| !matches!(r, Ok((_, v)) if v.is_zero()))
        .collect()
}

impl OracleSpan {
    pub fn build(relations: &[FreeElement], letters: usize, degree_cap: usize, point: &[Rational]) -> Result<Self> {
        let basis = GradedBasis::new(letters, degree_cap);
        let mut span = OracleSpan {
            pivots: vec![None; basis.len()],
            basis,
            generated_rows: 0,
            rank: 0,
        };
        for rel in relations {
            let terms = evaluate(rel, point)?;
            let Some(deg) = terms.iter().map(|(w, _)| w.len()).max() else {
                continue;
            };
            if deg > degree_cap {
                return Err(Error::DegreeOverflow {
                    degree: deg,
                    cap: degree_cap,
                });
            }
            let room = degree_cap - deg;
            for lu in 0..=room {
                for lv in 0..=room - lu {
                    for u in span.words_of_len(lu) {
                        for v in span.words_of_len(lv) {
                            let row = span.row_for(&terms, &u, &v);
                            span.generated_rows += 1;
                            span.insert(row);
                        }
                    }
                }
            }
        }
        Ok(span)
    }

    fn words_of_len(&self, len: usize) -> Vec<Vec<Letter>> {
        self.basis
            .words
            .iter()
            .filter(|w| w.len() == len)
            .map(|w| w.letters().to_vec())
            .collect()
    }

    fn row_for(&self, terms: &[(Word, Rational)], u: &[Letter], v: &[Letter]) -> Row {
        let mut row: Row = terms
            .iter()
            .map(|(w, c)| {
                let idx = self.basis.position(&w.wrap(u, v)).expect("word within cap");
                (idx, c.clone())
            })
            .collect();
        row.sort_by_key(|e| std::cmp::Reverse(e.0));
        row
    }

    fn eliminate(&self, mut row: Row) -> Row {
        while let Some((lead, c)) = row.first().cloned() {
            match &self.pivots[lead] {
                Some(p) => row = axpy(&row, &c, p),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let row = self.eliminate(row);
        if let Some((lead, c)) = row.first().cloned() {
            let inv = c.recip();
            let monic = row.into_iter().map(|(i, v)| (i, v * &inv)).collect();
            self.pivots[lead] = Some(monic);
            self.rank += 1;
        }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.generated_rows, self.basis.len())
    }

    /// Membership of an already evaluated element.
    pub fn contains_terms(&self, terms: &[(Word, Rational)]) -> Result<bool> {
        let mut row: Row = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            let idx = self.basis.position(w).ok_or(Error::DegreeOverflow {
                degree: w.len(),
                cap: self.basis.degree_cap,
            })?;
            row.push((idx, c.clone()));
        }
        row.sort_by_key(|e| std::cmp::Reverse(e.0));
        Ok(self.eliminate(row).is_empty())
    }

    pub fn contains(&self, x: &FreeElement, point: &[Rational]) -> Result<bool> {
        self.contains_terms(&evaluate(x, point)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleOutcome {
    MemberAtAllPoints,
    /// A point at which the candidate is not in the span.
    NonMemberWitness(Vec<Rational>),
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialReport {
    pub point: Vec<Rational>,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub member: Vec<bool>,
}

#[derive(Clone, Debug)]
pub struct OracleRun {
    pub trials: Vec<TrialReport>,
    pub outcomes: Vec<OracleOutcome>,
}

impl OracleRun {
    /// Whether at least `min` trials share the most common rank.
    pub fn rank_stable(&self, min: usize) -> bool {
        let mut counts: HashMap<usize, usize> = HashMap::new();
        for t in &self.trials {
            *counts.entry(t.rank).or_default() += 1;
        }
        counts.values().copied().max().unwrap_or(0) >= min.min(self.trials.len())
    }
}

fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(-97i64..=97);
    let d = loop {
        let d = rng.gen_range(-97i64..=97);
        if d != 0 {
            break d;
        }
    };
    Rational::new(n.into(), d.into())
}

/// `trials` seeded random points in `nparams` parameters, skipping points at
/// which any of `elements` has a pole.
pub fn random_points(nparams: usize, trials: usize, seed: u64, elements: &[&FreeElement]) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let mut attempts = 0;
    while out.len() < trials && attempts < trials * 100 + 100 {
        attempts += 1;
        let p: Vec<Rational> = (0..nparams).map(|_| random_rational(&mut rng)).collect();
        let ok = elements.iter().all(|x| x.terms().all(|(_, c)| c.eval(&p).is_ok()));
        if ok {
            out.push(p);
        }
    }
    out
}

fn aggregate(points: &[Vec<Rational>], member: impl Fn(usize) -> bool) -> OracleOutcome {
    let all = (0..points.len()).all(&member);
    let none = (0..points.len()).all(|i| !member(i));
    if all {
        OracleOutcome::MemberAtAllPoints
    } else if none {
        OracleOutcome::NonMemberWitness(points[0].clone())
    } else {
        OracleOutcome::Mixed
    }
}

/// Checks each candidate against the span of `relations` at every point.
/// Spans are built once per point; trials run in parallel and are merged in
/// point order.
pub fn oracle_batch(
    candidates: &[FreeElement],
    relations: &[FreeElement],
    degree_cap: usize,
    points: &[Vec<Rational>],
) -> Result<OracleRun> {
    let letters = relations
        .iter()
        .chain(candidates)
        .map(|x| x.alphabet().len())
        .next()
        .unwrap_or(0);
    for x in candidates {
        if x.degree() > degree_cap {
            return Err(Error::DegreeOverflow {
                degree: x.degree(),
                cap: degree_cap,
            });
        }
    }
    let mut distinct: Vec<&Vec<Rational>> = Vec::new();
    for p in points {
        if !distinct.contains(&p) {
            distinct.push(p);
        }
    }
    let reports: Vec<TrialReport> = distinct
        .par_iter()
        .map(|p| -> Result<TrialReport> {
            let span = OracleSpan::build(relations, letters, degree_cap, p)?;
            let member = candidates
                .iter()
                .map(|x| span.contains(x, p))
                .collect::<Result<Vec<_>>>()?;
            let (rows, cols) = span.dims();
            Ok(TrialReport {
                point: (*p).clone(),
                rows,
                cols,
                rank: span.rank,
                member,
            })
        })
        .collect::<Result<_>>()?;
    let trials: Vec<TrialReport> = points
        .iter()
        .map(|p| reports.iter().find(|r| &r.point == p).unwrap().clone())
        .collect();
    let outcomes = (0..candidates.len())
        .map(|k| aggregate(points, |i| trials[i].member[k]))
        .collect();
    Ok(OracleRun { trials, outcomes })
}

/// Single-candidate form with `trials` seeded random points.
pub fn oracle_membership(
    x: &FreeElement,
    relations: &[FreeElement],
    degree_cap: usize,
    trials: usize,
    seed: u64,
) -> Result<OracleOutcome> {
    let nparams = relations.iter().chain([x]).map(FreeElement::nparams).max().unwrap_or(0);
    let mut elems: Vec<&FreeElement> = relations.iter().collect();
    elems.push(x);
    let points = random_points(nparams, trials.max(1), seed, &elems);
    let run = oracle_batch(std::slice::from_ref(x), relations, degree_cap, &points)?;
    Ok(run.outcomes.into_iter().next().unwrap())
}

/// Integer point, values listed in parameter order.
pub fn point(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| integer(v)).collect()
}
