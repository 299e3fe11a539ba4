//! The `.hopf` presentation language.
//!
//! ```text
//! presentation illy {
//!   gens a, b, c, d
//!   rel [a,b] = b^2            # bracket and `=` sugar
//!   coproduct a -> a(x)a + b(x)c
//!   counit a -> 1
//! }
//! map exchange { a -> d  b -> c  c -> b  d -> a }
//! ```
//!
//! Declarations: `params`, `gens`, `order` (normal-form order of the
//! generators), `rel`, `coproduct`, `counit`. Products are written by
//! juxtaposition or `*`; an identifier that is not a declared symbol is split
//! greedily into declared names, so `hac` reads as `h*a*c` and `ghc^2` as
//! `g*h*c^2`. Division is allowed by scalars only. In coproduct images `(x)`
//! separates tensor factors and `a(2)` names a letter of a given factor.

use num_bigint::BigInt;

use crate::bialgebra::{GenMap, Presentation, PresentationParts};
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, FreeElement, Word};
use crate::scalars::{Rational, Scalar};

const KEYWORDS: &[&str] = &[
    "presentation",
    "map",
    "params",
    "gens",
    "order",
    "rel",
    "coproduct",
    "counit",
];

const MAX_POWER: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    /// `name(k)`: a letter of tensor factor k.
    Tagged(String, usize),
    Int(BigInt),
    Tensor,
    Arrow,
    Sym(char),
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn parse_error(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
        } else if ch == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
        } else if chars[i..].starts_with(&['(', 'x', ')']) {
            out.push(Token {
                tok: Tok::Tensor,
                line: l0,
                col: c0,
            });
            advance(&mut i, &mut line, &mut col, 3);
        } else if chars[i..].starts_with(&['-', '>']) {
            out.push(Token {
                tok: Tok::Arrow,
                line: l0,
                col: c0,
            });
            advance(&mut i, &mut line, &mut col, 2);
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token {
                tok: Tok::Int(text.parse().expect("digits")),
                line: l0,
                col: c0,
            });
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                advance(&mut i, &mut line, &mut col, 1);
            }
            let name: String = chars[start..i].iter().collect();
            // `a(2)`: a digit run in parentheses glued to the name
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            if i < chars.len() && chars[i] == '(' && j > i + 1 && j < chars.len() && chars[j] == ')' {
                let k: String = chars[i + 1..j].iter().collect();
                let k = k
                    .parse()
                    .map_err(|_| parse_error(l0, c0, "tensor factor out of range"))?;
                let n = j + 1 - i;
                advance(&mut i, &mut line, &mut col, n);
                out.push(Token {
                    tok: Tok::Tagged(name, k),
                    line: l0,
                    col: c0,
                });
            } else {
                out.push(Token {
                    tok: Tok::Ident(name),
                    line: l0,
                    col: c0,
                });
            }
        } else if "+-*/^=,[](){}".contains(ch) {
            out.push(Token {
                tok: Tok::Sym(ch),
                line: l0,
                col: c0,
            });
            advance(&mut i, &mut line, &mut col, 1);
        } else {
            return Err(parse_error(l0, c0, format!("unexpected character `{ch}`")));
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Symbols in scope for an expression.
struct Scope<'a> {
    gens: &'a [String],
    params: &'a [String],
    /// Target alphabet: plain, or a tensor power for coproduct images.
    alphabet: &'a Alphabet,
}

impl Scope<'_> {
    fn is_param(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    fn letter(&self, name: &str, factor: usize) -> Option<FreeElement> {
        let base = self.alphabet.index_of(name)?;
        let l = if self.alphabet.is_tensor() {
            self.alphabet.tagged(base, factor.max(1))
        } else {
            base
        };
        Some(FreeElement::letter(self.alphabet, l))
    }

    fn symbol(&self, name: &str, factor: usize) -> Option<FreeElement> {
        if let Some(i) = self.is_param(name) {
            return Some(FreeElement::scalar(self.alphabet, Scalar::param(i)));
        }
        if self.gens.iter().any(|g| g == name) {
            return self.letter(name, factor);
        }
        None
    }

    /// Longest-prefix split of `ident` into declared names.
    fn split(&self, ident: &str) -> Option<Vec<String>> {
        let mut out = Vec::new();
        let mut rest = ident;
        while !rest.is_empty() {
            let best = self
                .gens
                .iter()
                .chain(self.params)
                .filter(|n| rest.starts_with(n.as_str()))
                .max_by_key(|n| n.len())?;
            out.push(best.clone());
            rest = &rest[best.len()..];
        }
        Some(out)
    }
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, msg: impl Into<String>) -> Error {
        let t = self.peek();
        parse_error(t.line, t.col, msg)
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek().tok == Tok::Sym(c)
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.is_sym(c) {
            self.next();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`")))
        }
    }

    fn expect_arrow(&mut self) -> Result<()> {
        if self.peek().tok == Tok::Arrow {
            self.next();
            Ok(())
        } else {
            Err(self.error_here("expected `->`"))
        }
    }

    fn expect_name(&mut self) -> Result<Token> {
        match &self.peek().tok {
            Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) => Ok(self.next()),
            Tok::Ident(n) => Err(self.error_here(format!("`{n}` is a reserved word"))),
            _ => Err(self.error_here("expected a name")),
        }
    }

    fn name_list(&mut self) -> Result<Vec<Token>> {
        let mut out = vec![self.expect_name()?];
        while self.is_sym(',') {
            self.next();
            out.push(self.expect_name()?);
        }
        Ok(out)
    }

    fn starts_atom(&self) -> bool {
        match &self.peek().tok {
            Tok::Int(_) | Tok::Tagged(..) => true,
            Tok::Ident(n) => !KEYWORDS.contains(&n.as_str()),
            Tok::Sym(c) => *c == '(' || *c == '[',
            _ => false,
        }
    }

    /// `sum := [+|-] term {(+|-) term}`, with `(x)`-separated tensor terms
    /// when the scope alphabet is a tensor power.
    fn sum(&mut self, scope: &Scope, tensor: bool) -> Result<FreeElement> {
        let mut acc = FreeElement::zero(scope.alphabet);
        let mut first = true;
        loop {
            let negate = if self.is_sym('-') {
                self.next();
                true
            } else if self.is_sym('+') {
                self.next();
                false
            } else if first {
                false
            } else {
                break;
            };
            let t = if tensor {
                self.tensor_term(scope)?
            } else {
                self.term(scope, 0)?
            };
            acc = if negate { acc.sub(&t)? } else { acc.add(&t)? };
            first = false;
        }
        Ok(acc)
    }

    fn tensor_term(&mut self, scope: &Scope) -> Result<FreeElement> {
        let arity = scope.alphabet.arity();
        let mut acc = self.term(scope, 1)?;
        let mut factor = 1;
        while self.peek().tok == Tok::Tensor {
            if factor == arity {
                return Err(self.error_here(format!("more than {arity} tensor factors")));
            }
            self.next();
            factor += 1;
            acc = acc.mul(&self.term(scope, factor)?)?;
        }
        Ok(acc)
    }

    /// `term := power {[*|/] power}`, juxtaposition meaning `*`.
    fn term(&mut self, scope: &Scope, factor: usize) -> Result<FreeElement> {
        let mut acc = self.power(scope, factor)?;
        loop {
            if self.is_sym('*') {
                self.next();
                acc = acc.mul(&self.power(scope, factor)?)?;
            } else if self.is_sym('/') {
                let at = self.peek().clone();
                self.next();
                let d = self.power(scope, factor)?;
                let c = as_scalar(&d).ok_or_else(|| parse_error(at.line, at.col, "division by a non-scalar"))?;
                let inv = c.inv().map_err(|_| parse_error(at.line, at.col, "division by zero"))?;
                acc = acc.scale(&inv);
            } else if self.starts_atom() {
                acc = acc.mul(&self.power(scope, factor)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    /// An atom with an optional `^n`. For a split identifier the power binds
    /// to its last name only.
    fn power(&mut self, scope: &Scope, factor: usize) -> Result<FreeElement> {
        let (prefix, last) = self.atom(scope, factor)?;
        if !self.is_sym('^') {
            return prefix.mul(&last);
        }
        self.next();
        let t = self.next();
        let n: u32 = match &t.tok {
            Tok::Int(n) => u32::try_from(n).ok().filter(|&n| n <= MAX_POWER),
            _ => None,
        }
        .ok_or_else(|| parse_error(t.line, t.col, format!("expected an exponent between 0 and {MAX_POWER}")))?;
        let mut p = FreeElement::one(scope.alphabet);
        for _ in 0..n {
            p = p.mul(&last)?;
        }
        prefix.mul(&p)
    }

    fn atom(&mut self, scope: &Scope, factor: usize) -> Result<(FreeElement, FreeElement)> {
        let one = FreeElement::one(scope.alphabet);
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok((
                one,
                FreeElement::scalar(scope.alphabet, Scalar::from_rational(Rational::from_integer(n))),
            )),
            Tok::Tagged(name, k) => {
                if !scope.alphabet.is_tensor() || k == 0 || k > scope.alphabet.arity() {
                    return Err(parse_error(
                        t.line,
                        t.col,
                        format!("`{name}({k})` is not a letter here"),
                    ));
                }
                if !scope.gens.contains(&name) {
                    return Err(Error::UndeclaredSymbol {
                        line: t.line,
                        col: t.col,
                        name,
                    });
                }
                Ok((one, scope.letter(&name, k).expect("declared")))
            }
            Tok::Ident(name) => {
                if let Some(x) = scope.symbol(&name, factor) {
                    return Ok((one, x));
                }
                let parts = scope.split(&name).ok_or_else(|| Error::UndeclaredSymbol {
                    line: t.line,
                    col: t.col,
                    name: name.clone(),
                })?;
                let mut prefix = one;
                for p in &parts[..parts.len() - 1] {
                    prefix = prefix.mul(&scope.symbol(p, factor).expect("declared"))?;
                }
                Ok((
                    prefix,
                    scope.symbol(parts.last().expect("nonempty"), factor).expect("declared"),
                ))
            }
            Tok::Sym('(') => {
                let x = self.sum(scope, false)?;
                self.expect_sym(')')?;
                Ok((one, x))
            }
            Tok::Sym('[') => {
                let x = self.sum(scope, false)?;
                self.expect_sym(',')?;
                let y = self.sum(scope, false)?;
                self.expect_sym(']')?;
                Ok((one, x.commutator(&y)?))
            }
            Tok::Eof => Err(parse_error(t.line, t.col, "unexpected end of input")),
            _ => Err(parse_error(t.line, t.col, "expected an expression")),
        }
    }

    /// `expr [= expr]`, the equation meaning `lhs - rhs`.
    fn equation(&mut self, scope: &Scope) -> Result<FreeElement> {
        let lhs = self.sum(scope, false)?;
        if self.is_sym('=') {
            self.next();
            let rhs = self.sum(scope, false)?;
            return lhs.sub(&rhs);
        }
        Ok(lhs)
    }

    fn scalar(&mut self, scope: &Scope) -> Result<Scalar> {
        let at = self.peek().clone();
        let x = self.sum(scope, false)?;
        as_scalar(&x).ok_or_else(|| parse_error(at.line, at.col, "expected a scalar"))
    }
}

fn as_scalar(x: &FreeElement) -> Option<Scalar> {
    match x.num_terms() {
        0 => Some(Scalar::zero()),
        1 => {
            let (w, c) = x.terms().next()?;
            w.is_empty().then(|| c.clone())
        }
        _ => None,
    }
}

/// A generator map as written, bound to concrete presentations on use.
#[derive(Clone, Debug)]
pub struct MapSpec {
    pub name: String,
    entries: Vec<(Token, Vec<Token>)>,
}

impl MapSpec {
    /// Resolves the map between `source` and `target`: entries naming a source
    /// generator give its image, entries naming a source parameter substitute it.
    pub fn bind(&self, source: &Presentation, target: &Presentation) -> Result<GenMap> {
        let params = GenMap::param_space(source, target);
        let alphabet = target.alphabet().clone();
        let gens = target.generators().to_vec();
        let scope = Scope {
            gens: &gens,
            params: &params,
            alphabet: &alphabet,
        };
        let mut images = Vec::new();
        let mut subst = Vec::new();
        for (key, body) in &self.entries {
            let Tok::Ident(name) = &key.tok else {
                unreachable!("map keys are names")
            };
            let mut toks = body.clone();
            let last = toks.last().map_or((key.line, key.col), |t| (t.line, t.col));
            toks.push(Token {
                tok: Tok::Eof,
                line: last.0,
                col: last.1,
            });
            let mut p = Parser { toks, pos: 0 };
            if source.generators().contains(name) {
                if images.iter().any(|(n, _)| n == name) {
                    return Err(parse_error(key.line, key.col, format!("`{name}` mapped twice")));
                }
                let img = p.sum(&scope, false)?;
                p.end_of_entry()?;
                images.push((name.clone(), img));
            } else if source.params().contains(name) {
                let s = p.scalar(&scope)?;
                p.end_of_entry()?;
                subst.push((name.clone(), s));
            } else {
                return Err(Error::UndeclaredSymbol {
                    line: key.line,
                    col: key.col,
                    name: name.clone(),
                });
            }
        }
        GenMap::new(&self.name, source, target, images, subst)
    }
}

impl Parser {
    fn end_of_entry(&self) -> Result<()> {
        if self.peek().tok == Tok::Eof {
            Ok(())
        } else {
            Err(self.error_here("unexpected token"))
        }
    }
}

/// Presentations and maps of one source text, in order of appearance.
#[derive(Clone, Debug, Default)]
pub struct Library {
    pub presentations: Vec<Presentation>,
    pub maps: Vec<MapSpec>,
}

impl Library {
    pub fn presentation(&self, name: &str) -> Option<&Presentation> {
        self.presentations.iter().find(|p| p.name() == name)
    }

    pub fn map(&self, name: &str) -> Option<&MapSpec> {
        self.maps.iter().find(|m| m.name == name)
    }
}

/// Parses a file of `presentation` and `map` blocks.
pub fn parse_library(src: &str) -> Result<Library> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let mut lib = Library::default();
    loop {
        let t = p.next();
        match &t.tok {
            Tok::Eof => return Ok(lib),
            Tok::Ident(k) if k == "presentation" => {
                let pres = parse_body(&mut p)?;
                if lib.presentation(pres.name()).is_some() {
                    return Err(parse_error(
                        t.line,
                        t.col,
                        format!("presentation `{}` defined twice", pres.name()),
                    ));
                }
                lib.presentations.push(pres);
            }
            Tok::Ident(k) if k == "map" => {
                let m = parse_map(&mut p)?;
                if lib.map(&m.name).is_some() {
                    return Err(parse_error(t.line, t.col, format!("map `{}` defined twice", m.name)));
                }
                lib.maps.push(m);
            }
            _ => return Err(parse_error(t.line, t.col, "expected `presentation` or `map`")),
        }
    }
}

/// Parses text holding exactly one presentation.
pub fn parse_presentation(src: &str) -> Result<Presentation> {
    let lib = parse_library(src)?;
    match (lib.presentations.len(), lib.maps.len()) {
        (1, 0) => Ok(lib.presentations.into_iter().next().expect("one")),
        _ => Err(parse_error(1, 1, "expected exactly one presentation")),
    }
}

fn ident_name(t: &Token) -> String {
    match &t.tok {
        Tok::Ident(n) => n.clone(),
        _ => unreachable!("checked by expect_name"),
    }
}

fn parse_body(p: &mut Parser) -> Result<Presentation> {
    let name = ident_name(&p.expect_name()?);
    p.expect_sym('{')?;
    let mut params: Vec<String> = Vec::new();
    let mut gens: Vec<String> = Vec::new();
    let mut order: Vec<String> = Vec::new();
    let mut relations = Vec::new();
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    loop {
        let t = p.next();
        let Tok::Ident(kw) = &t.tok else {
            if t.tok == Tok::Sym('}') {
                break;
            }
            return Err(parse_error(t.line, t.col, "expected a declaration or `}`"));
        };
        match kw.as_str() {
            "params" | "gens" => {
                for n in p.name_list()? {
                    let s = ident_name(&n);
                    if params.contains(&s) || gens.contains(&s) {
                        return Err(Error::DuplicateGenerator {
                            line: n.line,
                            col: n.col,
                            name: s,
                        });
                    }
                    if kw == "params" {
                        params.push(s)
                    } else {
                        gens.push(s)
                    }
                }
            }
            "order" => {
                if !order.is_empty() {
                    return Err(parse_error(t.line, t.col, "order given twice"));
                }
                for n in p.name_list()? {
                    let s = ident_name(&n);
                    if !gens.contains(&s) {
                        return Err(Error::UndeclaredSymbol {
                            line: n.line,
                            col: n.col,
                            name: s,
                        });
                    }
                    if order.contains(&s) {
                        return Err(Error::DuplicateGenerator {
                            line: n.line,
                            col: n.col,
                            name: s,
                        });
                    }
                    order.push(s);
                }
                if order.len() != gens.len() {
                    return Err(parse_error(t.line, t.col, "order must list every generator"));
                }
            }
            "rel" => {
                let alphabet = Alphabet::new(gens.iter().cloned())?;
                let scope = Scope {
                    gens: &gens,
                    params: &params,
                    alphabet: &alphabet,
                };
                let at = p.peek().clone();
                let r = p.equation(&scope)?;
                if r.is_zero() {
                    return Err(parse_error(at.line, at.col, "relation is zero"));
                }
                relations.push(r);
            }
            "coproduct" | "counit" => {
                let g = p.expect_name()?;
                let gname = ident_name(&g);
                if !gens.contains(&gname) {
                    return Err(Error::UndeclaredSymbol {
                        line: g.line,
                        col: g.col,
                        name: gname,
                    });
                }
                p.expect_arrow()?;
                let plain = Alphabet::new(gens.iter().cloned())?;
                if kw == "coproduct" {
                    let square = plain.tensor(2);
                    let scope = Scope {
                        gens: &gens,
                        params: &params,
                        alphabet: &square,
                    };
                    coproduct.push((gname, p.sum(&scope, true)?));
                } else {
                    let scope = Scope {
                        gens: &gens,
                        params: &params,
                        alphabet: &plain,
                    };
                    counit.push((gname, p.scalar(&scope)?));
                }
            }
            _ => return Err(parse_error(t.line, t.col, format!("unknown declaration `{kw}`"))),
        }
    }
    Presentation::new(PresentationParts {
        name,
        params,
        generators: gens,
        order,
        relations,
        coproduct,
        counit,
    })
}

fn parse_map(p: &mut Parser) -> Result<MapSpec> {
    let name = ident_name(&p.expect_name()?);
    p.expect_sym('{')?;
    let mut entries: Vec<(Token, Vec<Token>)> = Vec::new();
    while !p.is_sym('}') {
        let key = p.expect_name()?;
        p.expect_arrow()?;
        let mut body = Vec::new();
        loop {
            let t = p.peek().clone();
            let next_is_arrow = p.toks.get(p.pos + 1).is_some_and(|n| n.tok == Tok::Arrow);
            if t.tok == Tok::Eof || t.tok == Tok::Sym('}') || (matches!(t.tok, Tok::Ident(_)) && next_is_arrow) {
                break;
            }
            body.push(p.next());
        }
        if body.is_empty() {
            return Err(p.error_here("expected an image"));
        }
        entries.push((key, body));
    }
    p.expect_sym('}')?;
    Ok(MapSpec { name, entries })
}

/// Parses an element over `alphabet` (plain, or the tensor square when the
/// text uses `(x)`), with scalars over `params`.
pub fn parse_element(src: &str, gens: &[String], params: &[String], alphabet: &Alphabet) -> Result<FreeElement> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let scope = Scope { gens, params, alphabet };
    let x = if alphabet.is_tensor() {
        p.sum(&scope, true)?
    } else {
        p.equation(&scope)?
    };
    p.end_of_entry()?;
    Ok(x)
}

/// Whether the text contains the tensor separator `(x)`.
pub fn mentions_tensor(src: &str) -> bool {
    lex(src).is_ok_and(|t| t.iter().any(|t| t.tok == Tok::Tensor))
}

/// DSL text for `p`; [`parse_presentation`] inverts it.
pub fn print_presentation(p: &Presentation) -> String {
    let params = p.params();
    let mut out = format!("presentation {} {{\n", p.name());
    if !params.is_empty() {
        out.push_str(&format!("  params {}\n", params.join(", ")));
    }
    out.push_str(&format!("  gens {}\n", p.generators().join(", ")));
    if p.order() != p.generators() {
        out.push_str(&format!("  order {}\n", p.order().join(", ")));
    }
    for r in p.relations() {
        out.push_str(&format!("  rel {}\n", r.display(params)));
    }
    let alphabet = p.alphabet();
    for g in p.generators() {
        let l = alphabet.index_of(g).expect("generator");
        out.push_str(&format!(
            "  coproduct {g} -> {}\n",
            p.coproduct().image(l).display(params)
        ));
    }
    for g in p.generators() {
        let l = alphabet.index_of(g).expect("generator");
        if let Some(c) = p.counit(l) {
            out.push_str(&format!("  counit {g} -> {}\n", c.display(params)));
        }
    }
    out.push_str("}\n");
    out
}

/// Word from a string of single-character generator names.
pub fn word_of(alphabet: &Alphabet, letters: &str) -> Option<Word> {
    letters
        .chars()
        .map(|ch| alphabet.index_of(&ch.to_string()))
        .collect::<Option<Vec<_>>>()
        .map(Word::new)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ILLY: &str = "presentation illy {
  gens a, b, c, d
  rel [a,b] = b^2
  coproduct a -> a(x)a + b(x)c
  coproduct b -> a(x)b + b(x)d
  coproduct c -> c(x)a + d(x)c
  coproduct d -> c(x)b + d(x)d
  counit a -> 1
}";

    fn abcd() -> Vec<String> {
        ["a", "b", "c", "d"].map(String::from).to_vec()
    }

    #[test]
    fn bracket_sugar_expands() {
        let p = parse_presentation(ILLY).unwrap();
        assert_eq!(p.relations()[0].to_string(), "ab - ba - b^2");
        assert_eq!(p.coproduct().image(0).to_string(), "a (x) a + b (x) c");
        assert!(p.counit(0).unwrap().is_one());
        assert!(p.counit(1).is_none());
    }

    #[test]
    fn parameter_relation() {
        let gens = abcd();
        let params = vec!["g".to_string(), "h".to_string()];
        let al = Alphabet::new(gens.clone()).unwrap();
        let x = parse_element("[d,b] = g*(a*d - b*c + h*a*c - d^2)", &gens, &params, &al).unwrap();
        let y = parse_element("db - bd - gad + gbc - ghac + gd^2", &gens, &params, &al).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn split_identifier_power_binds_last() {
        let gens = abcd();
        let params = vec!["g".to_string(), "h".to_string()];
        let al = Alphabet::new(gens.clone()).unwrap();
        let x = parse_element("ghc^2", &gens, &params, &al).unwrap();
        let y = parse_element("g*h*c*c", &gens, &params, &al).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn scalar_division() {
        let gens = abcd();
        let params = vec!["g".to_string()];
        let al = Alphabet::new(gens.clone()).unwrap();
        let x = parse_element("(1/2)/(g)*ab + 1/2*c", &gens, &params, &al).unwrap();
        let back = parse_element(&x.display(&params).to_string(), &gens, &params, &al).unwrap();
        assert_eq!(x, back);
        assert!(matches!(
            parse_element("a/b", &gens, &params, &al),
            Err(Error::Parse { line: 1, col: 2, .. })
        ));
    }

    #[test]
    fn diagnostics_carry_positions() {
        let e = parse_presentation("presentation p {\n  gens a, b\n  rel a*q\n}").unwrap_err();
        assert_eq!(
            e,
            Error::UndeclaredSymbol {
                line: 3,
                col: 9,
                name: "q".into()
            }
        );
        let e = parse_presentation("presentation p {\n  gens a, b, a\n}").unwrap_err();
        assert_eq!(
            e,
            Error::DuplicateGenerator {
                line: 2,
                col: 14,
                name: "a".into()
            }
        );
        let e = parse_presentation("presentation p {\n  gens a\n  rel a +\n}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, col: 1, .. }), "{e:?}");
        let e = parse_presentation("presentation p { gens a $ }").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 25, .. }), "{e:?}");
    }

    #[test]
    fn comments_and_whitespace_are_ignored() {
        let src = "# header\npresentation  p{gens a,b rel ab=ba # commuting\n coproduct a->a(x)a coproduct b->b(x)b}";
        let p = parse_presentation(src).unwrap();
        assert_eq!(p.relations()[0].to_string(), "ab - ba");
    }

    #[test]
    fn tagged_letters_in_tensor_images() {
        let gens = abcd();
        let sq = Alphabet::new(gens.clone()).unwrap().tensor(2);
        let x = parse_element("b(2)*a(1)", &gens, &[], &sq).unwrap();
        assert_eq!(x.to_string(), "b(2)*a(1)");
        let y = parse_element("2*1 (x) a - c (x) 1", &gens, &[], &sq).unwrap();
        assert_eq!(y.to_string(), "-c (x) 1 + 2*1 (x) a");
    }

    #[test]
    fn print_round_trip() {
        let p = parse_presentation(ILLY).unwrap();
        assert_eq!(parse_presentation(&print_presentation(&p)).unwrap(), p);
    }

    #[test]
    fn order_directive() {
        let p = parse_presentation(
            "presentation p { gens a, b order b, a rel ab - ba coproduct a -> a(x)a coproduct b -> b(x)b }",
        )
        .unwrap();
        assert_eq!(p.order(), ["b", "a"]);
        assert_eq!(p.generators(), ["a", "b"]);
        assert_eq!(p.relations()[0].to_string(), "-ba + ab");
        assert_eq!(parse_presentation(&print_presentation(&p)).unwrap(), p);
    }
}
