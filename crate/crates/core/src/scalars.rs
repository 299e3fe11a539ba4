//! Exact arithmetic in the field of rational functions over ℚ in a finite,
//! ordered list of deformation parameters.
//!
//! Parameters are addressed by position. A [`Monomial`] stores one exponent per
//! parameter with trailing zeros trimmed, so constants have the empty exponent
//! vector and a scalar never needs to know how many parameters its owning
//! presentation declares. Slice comparison of trimmed vectors coincides with
//! lexicographic comparison of the zero-padded vectors, which is the monomial
//! order used to pick leading coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Exponent vector, trailing zeros trimmed.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial(exps)
    }

    pub fn var(index: usize) -> Self {
        let mut exps = vec![0; index + 1];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    /// Exponent vector padded to `nparams` entries.
    pub fn exponents(&self, nparams: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(nparams.max(v.len()), 0);
        v
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parameter slots in use (index of the last nonzero exponent + 1).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        let v = (0..n).map(|i| self.exp(i) + other.exp(i)).collect();
        Monomial(v)
    }

    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut v = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            let (a, b) = (self.exp(i), other.exp(i));
            if b > a {
                return None;
            }
            v.push(a - b);
        }
        Some(Monomial::new(v))
    }

    fn with_exp(&self, var: usize, e: u32) -> Monomial {
        let mut v = self.0.clone();
        if v.len() <= var {
            v.resize(var + 1, 0);
        }
        v[var] = e;
        Monomial::new(v)
    }
}

/// Polynomial in the parameters with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParamPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamPoly {
    pub fn zero() -> Self {
        ParamPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        ParamPoly { terms }
    }

    pub fn var(index: usize) -> Self {
        Self::term(Monomial::var(index), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = ParamPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// Leading term under lexicographic order in parameter declaration order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// One past the largest parameter index that occurs.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(Monomial::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> ParamPoly {
        if c.is_zero() {
            return ParamPoly::zero();
        }
        ParamPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `var`; each coefficient is free of `var`.
    fn coeffs_in(&self, var: usize) -> BTreeMap<u32, ParamPoly> {
        let mut out: BTreeMap<u32, ParamPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.exp(var))
                .or_default()
                .add_term(m.with_exp(var, 0), c.clone());
        }
        out
    }

    fn lc_in(&self, var: usize) -> ParamPoly {
        let d = self.degree_in(var);
        let mut p = ParamPoly::zero();
        for (m, c) in &self.terms {
            if m.exp(var) == d {
                p.add_term(m.with_exp(var, 0), c.clone());
            }
        }
        p
    }

    fn lowest_var(&self) -> Option<usize> {
        self.terms.keys().filter_map(|m| m.0.iter().position(|&e| e > 0)).min()
    }

    /// Exact quotient, or `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &ParamPoly) -> Option<ParamPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = ParamPoly::zero();
        while let Some((m, c)) = rem.leading() {
            let qm = m.checked_div(&lm)?;
            let qc = c / &lc;
            rem = &rem - &divisor.mul_term(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Scales so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> ParamPoly {
        match self.leading() {
            None => ParamPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    fn prem(&self, divisor: &ParamPoly, var: usize) -> ParamPoly {
        let db = divisor.degree_in(var);
        let lcb = divisor.lc_in(var);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= db {
            let k = r.degree_in(var) - db;
            let lr = r.lc_in(var);
            let shift = ParamPoly::term(Monomial::one().with_exp(var, k), Rational::one());
            r = &(&r * &lcb) - &(&(&lr * &shift) * divisor);
        }
        r
    }

    fn content_in(&self, var: usize) -> ParamPoly {
        self.coeffs_in(var)
            .values()
            .fold(ParamPoly::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part, scaled monic so remainder sequences keep small
    /// coefficients.
    fn primitive_part_in(&self, var: usize) -> ParamPoly {
        let c = self.content_in(var);
        self.div_exact(&c).expect("content divides").monic()
    }

    /// Monic greatest common divisor over ℚ.
    pub fn gcd(&self, other: &ParamPoly) -> ParamPoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (va, vb) = (self.lowest_var(), other.lowest_var());
        let var = match (va, vb) {
            (None, _) | (_, None) => return ParamPoly::one(),
            (Some(a), Some(b)) => a.min(b),
        };
        if self.degree_in(var) == 0 {
            return self.gcd(&other.content_in(var));
        }
        if other.degree_in(var) == 0 {
            return other.gcd(&self.content_in(var));
        }
        let (ca, cb) = (self.content_in(var), other.content_in(var));
        let content = ca.gcd(&cb);
        let mut a = self.div_exact(&ca).expect("content divides");
        let mut b = other.div_exact(&cb).expect("content divides");
        if a.degree_in(var) < b.degree_in(var) {
            std::mem::swap(&mut a, &mut b);
        }
        let prim = loop {
            let r = a.prem(&b, var);
            if r.is_zero() {
                break b.primitive_part_in(var);
            }
            if r.degree_in(var) == 0 {
                break ParamPoly::one();
            }
            a = b;
            b = r.primitive_part_in(var);
        };
        (&content * &prim).monic()
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = point.get(i).ok_or_else(|| Error::MissingParameter(format!("#{i}")))?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for &ParamPoly {
    type Output = ParamPoly;
    fn add(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &ParamPoly {
    type Output = ParamPoly;
    fn sub(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &ParamPoly {
    type Output = ParamPoly;
    fn mul(self, rhs: &ParamPoly) -> ParamPoly {
        let mut out = ParamPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Element of ℚ(params): a reduced fraction of polynomials whose denominator
/// has leading coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: ParamPoly,
    den: ParamPoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(integer(n))
    }

    pub fn from_rational(r: Rational) -> Self {
        Scalar {
            num: ParamPoly::constant(r),
            den: ParamPoly::one(),
        }
    }

    pub fn param(index: usize) -> Self {
        Scalar::from_poly(ParamPoly::var(index))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Scalar {
            num: p,
            den: ParamPoly::one(),
        }
    }

    /// Canonical reduced form of `num / den`.
    pub fn normalize(num: ParamPoly, den: ParamPoly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        if let Some(c) = den.as_constant() {
            return Ok(Scalar {
                num: num.scale(&c.recip()),
                den: ParamPoly::one(),
            });
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(Scalar { num, den })
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value of a parameter-free scalar.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars().max(self.den.nvars())
    }

    /// Sign of the numerator's leading coefficient.
    pub fn is_negative(&self) -> bool {
        self.num.leading_coeff().is_negative()
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::normalize(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::normalize(num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            if let Some(c) = self.num.as_constant() {
                return Scalar::from_poly(rhs.num.scale(&c));
            }
            if let Some(c) = rhs.num.as_constant() {
                return Scalar::from_poly(self.num.scale(&c));
            }
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::normalize(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = self.num.as_constant() {
            return Ok(Scalar::from_poly(self.den.scale(&c.recip())));
        }
        Scalar::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&rhs.inv()?))
    }

    pub fn arith(op: ArithOp, x: &Scalar, y: &Scalar) -> Result<Scalar> {
        Ok(match op {
            ArithOp::Add => x.add(y),
            ArithOp::Sub => x.sub(y),
            ArithOp::Mul => x.mul(y),
            ArithOp::Div => x.checked_div(y)?,
        })
    }

    /// Exact value at a rational point; `point[i]` is the value of parameter `i`.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        let d = self.den.eval(point)?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        Ok(self.num.eval(point)? / d)
    }

    /// Substitutes `images[i]` for parameter `i`.
    pub fn compose(&self, images: &[Scalar]) -> Result<Scalar> {
        let num = compose_poly(&self.num, images)?;
        if self.den.is_one() {
            return Ok(num);
        }
        let den = compose_poly(&self.den, images)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        num.checked_div(&den)
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ScalarDisplay<'a> {
        ScalarDisplay { scalar: self, names }
    }
}

fn compose_poly(p: &ParamPoly, images: &[Scalar]) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for (m, c) in p.terms() {
        let mut t = Scalar::from_rational(c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = images.get(i).ok_or_else(|| Error::MissingParameter(format!("#{i}")))?;
            for _ in 0..e {
                t = t.mul(img);
            }
        }
        total = total.add(&t);
    }
    Ok(total)
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

pub struct ScalarDisplay<'a> {
    scalar: &'a Scalar,
    names: &'a [String],
}

fn param_name(names: &[String], i: usize) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("p{i}"))
}

pub(crate) fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn fmt_poly(p: &ParamPoly, names: &[String]) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(fmt_rational(&abs));
        }
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(param_name(names, i)),
                _ => factors.push(format!("{}^{}", param_name(names, i), e)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

impl fmt::Display for ScalarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.scalar;
        let num = fmt_poly(&s.num, self.names);
        if s.den.is_one() {
            return f.write_str(&num);
        }
        let den = fmt_poly(&s.den, self.names);
        let num = if s.num.num_terms() > 1 || num.contains('/') {
            format!("({num})")
        } else {
            num
        };
        write!(f, "{num}/({den})")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(&[]).fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g() -> ParamPoly {
        ParamPoly::var(0)
    }
    fn h() -> ParamPoly {
        ParamPoly::var(1)
    }
    fn c(n: i64) -> ParamPoly {
        ParamPoly::constant(integer(n))
    }

    #[test]
    fn normalize_cancels_constant() {
        let s = Scalar::normalize(g().scale(&integer(2)), c(2)).unwrap();
        assert_eq!(s, Scalar::param(0));
    }

    #[test]
    fn normalize_cancels_parameter() {
        // (gh - h) / h = g - 1
        let num = &(&g() * &h()) - &h();
        let s = Scalar::normalize(num, h()).unwrap();
        assert_eq!(s, Scalar::from_poly(&g() - &c(1)));
        assert!(s.is_polynomial());
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let num = &(&g() * &g()) - &c(1);
        let s = Scalar::normalize(num.clone(), &g() - &c(1)).unwrap();
        let expected = &g() + &c(1);
        // cross-multiplication: (g + 1)(g - 1) = g^2 - 1
        assert_eq!(&expected * &(&g() - &c(1)), num);
        assert_eq!(s, Scalar::from_poly(expected));
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(Scalar::normalize(g(), ParamPoly::zero()), Err(Error::ZeroDenominator));
    }

    #[test]
    fn normalize_is_idempotent_and_makes_den_monic() {
        let s = Scalar::normalize(g().scale(&integer(3)), h().scale(&integer(-6))).unwrap();
        assert_eq!(s.den().leading_coeff(), integer(1));
        assert_eq!(s.num(), &g().scale(&rational(-1, 2)));
        let again = Scalar::normalize(s.num().clone(), s.den().clone()).unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn arith_examples() {
        let (sg, sh) = (Scalar::param(0), Scalar::param(1));
        assert_eq!(
            Scalar::arith(ArithOp::Add, &sg, &sh).unwrap(),
            Scalar::from_poly(&g() + &h())
        );
        assert!(Scalar::arith(ArithOp::Mul, &sg, &Scalar::zero()).unwrap().is_zero());
        let diff_sq = Scalar::from_poly(&(&g() * &g()) - &(&h() * &h()));
        let sum = Scalar::from_poly(&g() + &h());
        let q = Scalar::arith(ArithOp::Div, &diff_sq, &sum).unwrap();
        // (g - h)(g + h) = g^2 - h^2
        assert_eq!(q.mul(&sum), diff_sq);
        assert_eq!(q, Scalar::from_poly(&g() - &h()));
        assert_eq!(
            Scalar::arith(ArithOp::Div, &sg, &Scalar::zero()),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn eval_examples() {
        let pt = [integer(0), integer(1)];
        let gh = Scalar::from_poly(&g() * &h());
        assert_eq!(gh.eval(&pt).unwrap(), integer(0));
        assert_eq!(Scalar::param(1).eval(&pt).unwrap(), integer(1));
        let pole = Scalar::one().checked_div(&Scalar::from_poly(&g() - &c(1))).unwrap();
        assert_eq!(pole.eval(&[integer(1), integer(0)]), Err(Error::PoleAtPoint));
        assert!(matches!(
            Scalar::param(1).eval(&[integer(3)]),
            Err(Error::MissingParameter(_))
        ));
    }

    #[test]
    fn gcd_of_multivariate_polys() {
        // (g + h)(g - 2h + 1) and (g + h)(h^2 + 3)
        let f = &g() + &h();
        let a = &f * &(&(&g() - &h().scale(&integer(2))) + &c(1));
        let b = &f * &(&(&h() * &h()) + &c(3));
        assert_eq!(a.gcd(&b), f.monic());
        assert!(g().gcd(&h()).is_one());
    }

    #[test]
    fn sums_with_coprime_denominators_stay_small() {
        // Remainder sequences here once grew to thousand-digit coefficients.
        let q = |n: ParamPoly, d: ParamPoly| Scalar::normalize(n, d).unwrap();
        let (g2, h2) = (&g() * &g(), &h() * &h());
        let x = q(&(&g2 * &h2).scale(&integer(-6)) + &g2, &g2 + &c(5));
        let y = q(h(), &g() - &h2.scale(&rational(3, 2)));
        let z = q(
            &(&g2 * &h2).scale(&rational(-2, 3)) - &(&g2 * &h()).scale(&rational(5, 3)),
            &(&g() * &h()) + &ParamPoly::constant(rational(5, 3)),
        );
        let sum = x.add(&y).add(&z);
        let p = [integer(2), integer(3)];
        let by_point = &(&x.eval(&p).unwrap() + &y.eval(&p).unwrap()) + &z.eval(&p).unwrap();
        assert_eq!(sum.eval(&p).unwrap(), by_point);
        assert!(sum
            .num()
            .terms()
            .all(|(_, c)| c.numer().bits() < 64 && c.denom().bits() < 64));
    }

    #[test]
    fn rational_function_arith() {
        let sg = Scalar::param(0);
        let inv = sg.inv().unwrap();
        assert!(sg.mul(&inv).is_one());
        let x = inv.add(&Scalar::param(1).inv().unwrap());
        // 1/g + 1/h = (g + h)/(g h)
        let expected = Scalar::normalize(&g() + &h(), &g() * &h()).unwrap();
        assert_eq!(x, expected);
        assert!(x.sub(&expected).is_zero());
    }

    #[test]
    fn compose_substitutes_parameters() {
        let x = Scalar::from_poly(&(&g() * &h()) + &g());
        let out = x.compose(&[Scalar::from_int(2), Scalar::param(0)]).unwrap();
        // 2 * g + 2
        assert_eq!(out, Scalar::from_poly(&g().scale(&integer(2)) + &c(2)));
    }

    #[test]
    fn display_uses_names() {
        let names = vec!["g".to_string(), "h".to_string()];
        let x = Scalar::from_poly(&(&(&g() * &g()).scale(&integer(2)) - &h()) + &c(1));
        assert_eq!(x.display(&names).to_string(), "2*g^2 - h + 1");
        let y = Scalar::one().checked_div(&Scalar::from_poly(&g() - &c(1))).unwrap();
        assert_eq!(y.display(&names).to_string(), "1/(g - 1)");
    }
}
