//! The free associative algebra over [`Scalar`] on a finite ordered alphabet.
//!
//! Tensor powers are free algebras on tagged copies of a base alphabet: in the
//! `k`-fold tensor alphabet, letter `(f - 1) * n + i` is base letter `i` in
//! factor `f`. Factor-1 letters therefore sort before factor-2 letters, and
//! within a factor the base order is kept. Commutation between factors is not
//! built in; it is imposed by rewrite rules (see [`crate::rewrite`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::Scalar;

pub type Letter = u16;

#[derive(Debug, PartialEq, Eq, Hash)]
struct AlphabetData {
    names: Vec<String>,
    /// Number of tensor factors; zero for a plain alphabet.
    arity: usize,
}

/// Ordered set of generator names, optionally copied into tensor factors.
#[derive(Clone, Debug)]
pub struct Alphabet(Arc<AlphabetData>);

impl Hash for Alphabet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Alphabet {}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::InvalidPresentation(format!("duplicate generator `{n}`")));
            }
        }
        if names.len() > 1024 {
            return Err(Error::InvalidPresentation("too many generators".into()));
        }
        Ok(Alphabet(Arc::new(AlphabetData { names, arity: 0 })))
    }

    /// The alphabet of the `arity`-fold tensor power of this (plain) alphabet.
    pub fn tensor(&self, arity: usize) -> Alphabet {
        Alphabet(Arc::new(AlphabetData {
            names: self.0.names.clone(),
            arity,
        }))
    }

    pub fn base(&self) -> Alphabet {
        if self.0.arity == 0 {
            self.clone()
        } else {
            self.tensor(0)
        }
    }

    pub fn base_names(&self) -> &[String] {
        &self.0.names
    }

    pub fn base_len(&self) -> usize {
        self.0.names.len()
    }

    pub fn arity(&self) -> usize {
        self.0.arity
    }

    pub fn is_tensor(&self) -> bool {
        self.0.arity > 0
    }

    pub fn len(&self) -> usize {
        self.0.names.len() * self.0.arity.max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.len() as Letter
    }

    /// 1-based tensor factor of a letter (the copy tag); `None` on plain alphabets.
    pub fn factor_of(&self, letter: Letter) -> Option<usize> {
        self.is_tensor().then(|| letter as usize / self.base_len() + 1)
    }

    pub fn base_letter(&self, letter: Letter) -> Letter {
        (letter as usize % self.base_len()) as Letter
    }

    pub fn tagged(&self, base_letter: Letter, factor: usize) -> Letter {
        ((factor - 1) * self.base_len() + base_letter as usize) as Letter
    }

    pub fn index_of(&self, name: &str) -> Option<Letter> {
        self.0.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        let base = &self.0.names[self.base_letter(letter) as usize];
        match self.factor_of(letter) {
            None => base.clone(),
            Some(f) => format!("{base}({f})"),
        }
    }

    fn single_char_names(&self) -> bool {
        self.0.names.iter().all(|n| n.chars().count() == 1)
    }

    fn contains_word(&self, w: &Word) -> bool {
        w.0.iter().all(|&l| (l as usize) < self.len())
    }
}

/// A monomial of the free algebra. Ordered by degree, then lexicographically
/// by letter index (deglex).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `prefix · self · suffix`
    pub fn wrap(&self, prefix: &[Letter], suffix: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(prefix.len() + self.0.len() + suffix.len());
        v.extend_from_slice(prefix);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(suffix);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Leftmost occurrence of `pat` as a factor.
    pub fn find(&self, pat: &Word) -> Option<usize> {
        if pat.0.len() > self.0.len() {
            return None;
        }
        self.0.windows(pat.0.len()).position(|w| w == pat.0.as_slice())
    }

    pub fn contains(&self, pat: &Word) -> bool {
        self.find(pat).is_some()
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

/// Deglex comparison of two words over `alphabet`.
pub fn word_compare(alphabet: &Alphabet, u: &Word, v: &Word) -> Result<Ordering> {
    if !alphabet.contains_word(u) || !alphabet.contains_word(v) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(u.cmp(v))
}

/// Finite linear combination of words with nonzero scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    alphabet: Alphabet,
    terms: BTreeMap<Word, Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Add,
    Sub,
    Mul,
}

impl FreeElement {
    pub fn zero(alphabet: &Alphabet) -> Self {
        FreeElement {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Self::scalar(alphabet, Scalar::one())
    }

    pub fn scalar(alphabet: &Alphabet, c: Scalar) -> Self {
        Self::monomial(alphabet, Word::empty(), c)
    }

    pub fn monomial(alphabet: &Alphabet, w: Word, c: Scalar) -> Self {
        let mut x = Self::zero(alphabet);
        x.add_term(w, c);
        x
    }

    pub fn letter(alphabet: &Alphabet, l: Letter) -> Self {
        Self::monomial(alphabet, Word::letter(l), Scalar::one())
    }

    pub fn generator(alphabet: &Alphabet, name: &str) -> Result<Self> {
        let l = alphabet
            .index_of(name)
            .ok_or_else(|| Error::MissingImage(name.to_string()))?;
        Ok(Self::letter(alphabet, l))
    }

    pub fn from_terms(alphabet: &Alphabet, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut x = Self::zero(alphabet);
        for (w, c) in terms {
            x.add_term(w, c);
        }
        x
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word under deglex with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> usize {
        self.leading().map_or(0, |(w, _)| w.len())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut lens = self.terms.keys().map(Word::len);
        match lens.next() {
            None => true,
            Some(d) => lens.all(|l| l == d),
        }
    }

    pub fn nparams(&self) -> usize {
        self.terms.values().map(Scalar::nvars).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    fn check(&self, other: &FreeElement) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &FreeElement) -> Result<FreeElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreeElement) -> Result<FreeElement> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &FreeElement) -> Result<FreeElement> {
        self.check(other)?;
        let mut out = Self::zero(&self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> FreeElement {
        if c.is_zero() {
            return Self::zero(&self.alphabet);
        }
        FreeElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect(),
        }
    }

    pub fn neg(&self) -> FreeElement {
        FreeElement {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.neg())).collect(),
        }
    }

    pub fn arith(op: ElemOp, x: &FreeElement, y: &FreeElement) -> Result<FreeElement> {
        match op {
            ElemOp::Add => x.add(y),
            ElemOp::Sub => x.sub(y),
            ElemOp::Mul => x.mul(y),
        }
    }

    /// `[x, y] = xy - yx`
    pub fn commutator(&self, other: &FreeElement) -> Result<FreeElement> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// `prefix · self · suffix` for words `prefix`, `suffix`, scaled by `c`.
    pub(crate) fn wrap_scaled(&self, prefix: &[Letter], suffix: &[Letter], c: &Scalar) -> FreeElement {
        FreeElement {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, x)| (w.wrap(prefix, suffix), x.mul(c)))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> FreeElement {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("stored coefficients are nonzero")),
        }
    }

    pub fn map_scalars(&self, mut f: impl FnMut(&Scalar) -> Result<Scalar>) -> Result<FreeElement> {
        let mut out = Self::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Rewrites every letter to the letter of the same name (and tensor
    /// factor) in `to`, which may order the names differently.
    pub fn transport(&self, to: &Alphabet) -> Result<FreeElement> {
        if to.arity() != self.alphabet.arity() {
            return Err(Error::AlphabetMismatch);
        }
        let table: Vec<Letter> = self
            .alphabet
            .base_names()
            .iter()
            .map(|n| to.index_of(n).ok_or(Error::AlphabetMismatch))
            .collect::<Result<_>>()?;
        let n = self.alphabet.base_len().max(1);
        let mut out = FreeElement::zero(to);
        for (w, c) in &self.terms {
            let letters =
                w.0.iter()
                    .map(|&l| {
                        let base = table[l as usize % n];
                        match self.alphabet.factor_of(l) {
                            None => base,
                            Some(f) => to.tagged(base, f),
                        }
                    })
                    .collect();
            out.add_term(Word(letters), c.clone());
        }
        Ok(out)
    }

    pub fn display<'a>(&'a self, params: &'a [String]) -> ElementDisplay<'a> {
        ElementDisplay { elem: self, params }
    }
}

/// Algebra homomorphism between free algebras given by letter images and an
/// optional substitution of parameters.
#[derive(Clone, Debug)]
pub struct LetterMap {
    pub target: Alphabet,
    pub images: Vec<FreeElement>,
    /// `params[i]` replaces parameter `i`; `None` leaves scalars unchanged.
    pub params: Option<Vec<Scalar>>,
}

impl LetterMap {
    pub fn identity(alphabet: &Alphabet) -> Self {
        LetterMap {
            target: alphabet.clone(),
            images: alphabet.letters().map(|l| FreeElement::letter(alphabet, l)).collect(),
            params: None,
        }
    }

    pub fn apply(&self, x: &FreeElement) -> Result<FreeElement> {
        let mut out = FreeElement::zero(&self.target);
        for (w, c) in x.terms() {
            let c = match &self.params {
                None => c.clone(),
                Some(p) => c.compose(p)?,
            };
            let mut prod = FreeElement::scalar(&self.target, c);
            for &l in w.letters() {
                let img = self
                    .images
                    .get(l as usize)
                    .ok_or_else(|| Error::MissingImage(x.alphabet.letter_name(l)))?;
                prod = prod.mul(img)?;
            }
            for (w, c) in prod.terms {
                out.add_term(w, c);
            }
        }
        Ok(out)
    }
}

/// Rewrites each letter of a plain-alphabet element to its copy in tensor factor `factor`.
pub fn tensor_embed(x: &FreeElement, factor: usize, arity: usize) -> Result<FreeElement> {
    if factor == 0 || factor > arity {
        return Err(Error::BadFactorIndex { factor, arity });
    }
    if x.alphabet.is_tensor() {
        return Err(Error::AlphabetMismatch);
    }
    let target = x.alphabet.tensor(arity);
    let terms = x.terms.iter().map(|(w, c)| {
        let letters = w.0.iter().map(|&l| target.tagged(l, factor)).collect();
        (Word(letters), c.clone())
    });
    Ok(FreeElement::from_terms(&target, terms))
}

/// Coproduct images of the generators, in the 2-fold tensor alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoproductTable {
    images: Vec<FreeElement>,
}

impl CoproductTable {
    pub fn new(base: &Alphabet, images: Vec<FreeElement>) -> Result<Self> {
        if images.len() != base.len() {
            return Err(Error::InvalidPresentation(format!(
                "coproduct table has {} images for {} generators",
                images.len(),
                base.len()
            )));
        }
        let square = base.tensor(2);
        for img in &images {
            if *img.alphabet() != square {
                return Err(Error::AlphabetMismatch);
            }
        }
        Ok(CoproductTable { images })
    }

    /// The matrix comultiplication `Δ(t_ij) = Σ_k t_ik ⊗ t_kj` for a square
    /// number of generators listed row by row.
    pub fn matrix(base: &Alphabet) -> Result<Self> {
        let n = (base.len() as f64).sqrt().round() as usize;
        if n * n != base.len() {
            return Err(Error::InvalidPresentation("generator count is not a square".into()));
        }
        let square = base.tensor(2);
        let images = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| {
                let terms = (0..n).map(|k| {
                    let left = square.tagged((i * n + k) as Letter, 1);
                    let right = square.tagged((k * n + j) as Letter, 2);
                    (Word(vec![left, right]), Scalar::one())
                });
                FreeElement::from_terms(&square, terms)
            })
            .collect();
        Ok(CoproductTable { images })
    }

    pub fn image(&self, generator: Letter) -> &FreeElement {
        &self.images[generator as usize]
    }

    pub fn images(&self) -> &[FreeElement] {
        &self.images
    }

    /// Every word of every image has one factor-1 and one factor-2 letter.
    pub fn is_matrix_shaped(&self) -> bool {
        self.images.iter().all(|img| {
            img.terms().all(|(w, _)| {
                let a = img.alphabet();
                w.len() == 2 && a.factor_of(w.0[0]) == Some(1) && a.factor_of(w.0[1]) == Some(2)
            })
        })
    }

    pub fn as_letter_map(&self) -> LetterMap {
        let target = self
            .images
            .first()
            .map(|x| x.alphabet.clone())
            .unwrap_or_else(|| Alphabet::new(Vec::<String>::new()).unwrap().tensor(2));
        LetterMap {
            target,
            images: self.images.clone(),
            params: None,
        }
    }
}

/// Extends Δ multiplicatively and linearly to `x` (no reduction).
pub fn coproduct_extend(table: &CoproductTable, x: &FreeElement) -> Result<FreeElement> {
    if x.alphabet.is_tensor() || x.alphabet.len() != table.images.len() {
        return Err(Error::AlphabetMismatch);
    }
    table.as_letter_map().apply(x)
}

fn fmt_letters(alphabet: &Alphabet, letters: &[Letter], tagged: bool) -> String {
    if letters.is_empty() {
        return "1".into();
    }
    let name = |l: Letter| {
        if tagged {
            alphabet.letter_name(l)
        } else {
            alphabet.base_names()[alphabet.base_letter(l) as usize].clone()
        }
    };
    let joiner = if !tagged && alphabet.single_char_names() {
        ""
    } else {
        "*"
    };
    let mut parts = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let n = name(letters[i]);
        parts.push(if j - i == 1 { n } else { format!("{n}^{}", j - i) });
        i = j;
    }
    parts.join(joiner)
}

/// Words print as juxtaposed letters with powers (`ab^2`). In a tensor
/// alphabet a word whose factor tags are non-decreasing prints factor by factor
/// separated by `(x)`; any other word falls back to tagged letters (`b(2)*a(1)`).
pub fn fmt_word(alphabet: &Alphabet, w: &Word) -> String {
    if !alphabet.is_tensor() {
        return fmt_letters(alphabet, &w.0, false);
    }
    let tags: Vec<usize> = w.0.iter().map(|&l| alphabet.factor_of(l).unwrap()).collect();
    if tags.windows(2).any(|p| p[0] > p[1]) {
        return fmt_letters(alphabet, &w.0, true);
    }
    (1..=alphabet.arity())
        .map(|f| {
            let seg: Vec<Letter> =
                w.0.iter()
                    .copied()
                    .filter(|&l| alphabet.factor_of(l) == Some(f))
                    .collect();
            fmt_letters(alphabet, &seg, false)
        })
        .collect::<Vec<_>>()
        .join(" (x) ")
}

pub struct ElementDisplay<'a> {
    elem: &'a FreeElement,
    params: &'a [String],
}

fn coeff_prefix(c: &Scalar, params: &[String]) -> Option<String> {
    if c.is_one() {
        return None;
    }
    if let Some(r) = c.as_rational() {
        if r.is_integer() {
            return Some(r.numer().to_string());
        }
    }
    let text = c.display(params).to_string();
    if c.is_polynomial() && c.num().num_terms() == 1 {
        Some(format!("{text}*"))
    } else {
        Some(format!("({text})*"))
    }
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let x = self.elem;
        if x.is_zero() {
            return f.write_str("0");
        }
        for (k, (w, c)) in x.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = if neg { c.neg() } else { c.clone() };
            if w.is_empty() && !x.alphabet.is_tensor() {
                let text = mag.display(self.params).to_string();
                if mag.is_polynomial() && mag.num().num_terms() == 1 {
                    f.write_str(&text)?;
                } else {
                    write!(f, "({text})")?;
                }
                continue;
            }
            let word = fmt_word(&x.alphabet, w);
            if let Some(p) = coeff_prefix(&mag, self.params) {
                f.write_str(&p)?;
                // keep `2*1 (x) a` from reading as the number 21
                if !p.ends_with('*') && word.starts_with(|ch: char| ch.is_ascii_digit()) {
                    f.write_str("*")?;
                }
            }
            f.write_str(&word)?;
        }
        Ok(())
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&[]).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abcd() -> Alphabet {
        Alphabet::new(["a", "b", "c", "d"]).unwrap()
    }

    fn w(alph: &Alphabet, s: &str) -> Word {
        Word(s.chars().map(|ch| alph.index_of(&ch.to_string()).unwrap()).collect())
    }

    fn gen(alph: &Alphabet, s: &str) -> FreeElement {
        FreeElement::monomial(alph, w(alph, s), Scalar::one())
    }

    #[test]
    fn deglex_examples() {
        let a = abcd();
        assert_eq!(word_compare(&a, &w(&a, "ab"), &w(&a, "ba")).unwrap(), Ordering::Less);
        assert_eq!(word_compare(&a, &w(&a, "cd"), &w(&a, "dc")).unwrap(), Ordering::Less);
        assert_eq!(word_compare(&a, &w(&a, "bb"), &w(&a, "abc")).unwrap(), Ordering::Less);
        let sq = a.tensor(2);
        // a(2) is letter 4, out of range for the base alphabet
        assert_eq!(
            word_compare(&a, &Word(vec![4]), &w(&a, "a")),
            Err(Error::AlphabetMismatch)
        );
        assert_eq!(
            word_compare(&sq, &Word(vec![3]), &Word(vec![4])).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn free_products_do_not_commute() {
        let al = abcd();
        let (a, b, c) = (gen(&al, "a"), gen(&al, "b"), gen(&al, "c"));
        let ab = a.mul(&b).unwrap();
        let ba = b.mul(&a).unwrap();
        assert_eq!(ab, gen(&al, "ab"));
        assert_ne!(ab, ba);
        assert!(ab.sub(&ab).unwrap().is_zero());
        let lhs = ab.sub(&ba).unwrap().mul(&c).unwrap();
        let rhs = gen(&al, "abc").sub(&gen(&al, "bac")).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_brackets() {
        let al = abcd();
        let (a, b) = (gen(&al, "a"), gen(&al, "b"));
        assert_eq!(a.commutator(&b).unwrap().to_string(), "ab - ba");
        assert!(a.commutator(&a).unwrap().is_zero());
        let other = Alphabet::new(["x"]).unwrap();
        assert_eq!(
            a.commutator(&FreeElement::letter(&other, 0)),
            Err(Error::AlphabetMismatch)
        );
    }

    #[test]
    fn tensor_embed_examples() {
        let al = abcd();
        let a1 = tensor_embed(&gen(&al, "a"), 1, 2).unwrap();
        assert_eq!(a1, FreeElement::letter(&al.tensor(2), 0));
        let ab2 = tensor_embed(&gen(&al, "ab"), 2, 2).unwrap();
        assert_eq!(ab2.terms().next().unwrap().0.letters(), &[4, 5]);
        let x = gen(&al, "ab").sub(&gen(&al, "ba")).unwrap();
        let e = tensor_embed(&x, 1, 3).unwrap();
        assert_eq!(e.alphabet().arity(), 3);
        assert_eq!(e.to_string(), "ab (x) 1 (x) 1 - ba (x) 1 (x) 1");
        assert_eq!(
            tensor_embed(&x, 3, 2),
            Err(Error::BadFactorIndex { factor: 3, arity: 2 })
        );
        assert!(tensor_embed(&x, 0, 2).is_err());
    }

    #[test]
    fn matrix_coproduct_of_generators() {
        let al = abcd();
        let delta = CoproductTable::matrix(&al).unwrap();
        assert!(delta.is_matrix_shaped());
        let da = coproduct_extend(&delta, &gen(&al, "a")).unwrap();
        assert_eq!(da.to_string(), "a (x) a + b (x) c");
        let one = coproduct_extend(&delta, &FreeElement::one(&al)).unwrap();
        assert_eq!(one, FreeElement::one(&al.tensor(2)));
    }

    #[test]
    fn coproduct_of_bd_expands_to_four_terms() {
        // (a1 b2 + b1 d2)(c1 b2 + d1 d2) expanded by hand
        let al = abcd();
        let sq = al.tensor(2);
        let delta = CoproductTable::matrix(&al).unwrap();
        let got = coproduct_extend(&delta, &gen(&al, "bd")).unwrap();
        let t = |l: &[(&str, usize)]| Word(l.iter().map(|&(n, f)| sq.tagged(al.index_of(n).unwrap(), f)).collect());
        let expected = FreeElement::from_terms(
            &sq,
            [
                t(&[("a", 1), ("b", 2), ("c", 1), ("b", 2)]),
                t(&[("a", 1), ("b", 2), ("d", 1), ("d", 2)]),
                t(&[("b", 1), ("d", 2), ("c", 1), ("b", 2)]),
                t(&[("b", 1), ("d", 2), ("d", 1), ("d", 2)]),
            ]
            .into_iter()
            .map(|w| (w, Scalar::one())),
        );
        assert_eq!(got, expected);
        assert_eq!(got.num_terms(), 4);
    }

    #[test]
    fn identity_map_is_identity() {
        let al = abcd();
        let x = gen(&al, "abc")
            .add(&gen(&al, "dd").scale(&Scalar::from_int(-3)))
            .unwrap();
        assert_eq!(LetterMap::identity(&al).apply(&x).unwrap(), x);
    }

    #[test]
    fn missing_image_is_reported() {
        let al = abcd();
        let m = LetterMap {
            target: al.clone(),
            images: vec![gen(&al, "a")],
            params: None,
        };
        assert_eq!(m.apply(&gen(&al, "b")), Err(Error::MissingImage("b".into())));
    }

    #[test]
    fn printing_powers_and_coefficients() {
        let al = abcd();
        let x = gen(&al, "ccd")
            .add(&gen(&al, "ccc").scale(&Scalar::from_int(2)))
            .unwrap();
        assert_eq!(x.to_string(), "2c^3 + c^2d");
        let y = gen(&al, "ab").sub(&gen(&al, "bb")).unwrap();
        assert_eq!(y.to_string(), "ab - b^2");
        let z = gen(&al, "a").scale(&Scalar::param(0)).neg();
        assert_eq!(z.display(&["g".into()]).to_string(), "-g*a");
    }
}
