//! Exact coefficient arithmetic: rationals and reduced rational functions in
//! the formal level `k`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored in lowest terms.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at k = {at}: denominator {denominator} vanishes")]
    Pole { at: String, denominator: String },
    #[error("scalar syntax error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p` or `p/q` (optionally signed) into a rational.
pub fn parse_rat(s: &str) -> Result<Rat, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse { col: 0, msg: format!("not a rational literal: {s:?}") };
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| err())?;
            let d: BigInt = d.trim().parse().map_err(|_| err())?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| err())?)),
    }
}

/// Dense univariate polynomial in `k`; `coeffs[i]` multiplies `k^i`.
/// No trailing zero coefficients; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Rat::one()] }
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `k`.
    pub fn var() -> Self {
        Poly { coeffs: vec![Rat::zero(), Rat::one()] }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<Rat> {
        match self.coeffs.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Euclidean division: `(q, r)` with `self = q*d + r`, `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let lc = d.coeffs[dd].clone();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = &r[i + dd] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dc;
                }
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "k")?;
                    } else {
                        write!(f, "k^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }

    fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f)
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let (long, short) = if a.coeffs.len() >= b.coeffs.len() { (a, b) } else { (b, a) };
    let mut c = long.coeffs.clone();
    for (x, y) in c.iter_mut().zip(&short.coeffs) {
        *x += y;
    }
    Poly::from_coeffs(c)
}

fn poly_neg(a: &Poly) -> Poly {
    Poly { coeffs: a.coeffs.iter().map(|c| -c).collect() }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        return Poly::zero();
    }
    if a.coeffs.len() == 1 {
        return b.scale(&a.coeffs[0]);
    }
    if b.coeffs.len() == 1 {
        return a.scale(&b.coeffs[0]);
    }
    let mut c = vec![Rat::zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    Poly::from_coeffs(c)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        poly_add(self, rhs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        poly_add(self, &poly_neg(rhs))
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        poly_mul(self, rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        poly_neg(self)
    }
}

/// A reduced rational function `num/den` in the formal level `k`.
///
/// The denominator is monic and coprime to the numerator, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LevelScalar {
    num: Poly,
    den: Poly,
}

impl LevelScalar {
    pub fn zero() -> Self {
        LevelScalar { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        LevelScalar { num: Poly::one(), den: Poly::one() }
    }

    /// The formal level `k`.
    pub fn k() -> Self {
        LevelScalar { num: Poly::var(), den: Poly::one() }
    }

    pub fn int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::from_rat(ratio(n, d))
    }

    pub fn from_rat(r: Rat) -> Self {
        LevelScalar { num: Poly::constant(r), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        LevelScalar { num: p, den: Poly::one() }
    }

    /// Builds and reduces `num/den`.
    pub fn from_parts(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.degree() == Some(0) {
            let c = den.coeffs[0].recip();
            return LevelScalar { num: num.scale(&c), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().expect("nonzero denominator").recip();
        LevelScalar { num: num.scale(&lc), den: den.scale(&lc) }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(r)` when the scalar does not depend on `k`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.coeffs.len() <= 1
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LevelScalar { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation at `k = k0`.
    pub fn specialize(&self, k0: &Rat) -> Result<Rat, ScalarError> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            return Err(ScalarError::Pole { at: k0.to_string(), denominator: self.den.to_string() });
        }
        Ok(self.num.eval(k0) / d)
    }

    /// Substitutes `k -> k0` and returns the constant scalar.
    pub fn specialize_scalar(&self, k0: &Rat) -> Result<Self, ScalarError> {
        if self.is_constant() {
            return Ok(self.clone());
        }
        self.specialize(k0).map(Self::from_rat)
    }

    /// Whether printing needs parentheses when used as a factor.
    pub fn is_compound(&self) -> bool {
        !self.den.is_one() || self.num.term_count() > 1 || self.num.degree().unwrap_or(0) > 0
    }

    pub fn is_negative_constant(&self) -> bool {
        self.as_rat().is_some_and(|r| r.is_negative())
    }
}

impl Default for LevelScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Ord for LevelScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.den.cmp(&other.den).then_with(|| self.num.cmp(&other.num))
    }
}

impl PartialOrd for LevelScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Rat> for LevelScalar {
    fn from(r: Rat) -> Self {
        Self::from_rat(r)
    }
}

impl From<i64> for LevelScalar {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl Add for &LevelScalar {
    type Output = LevelScalar;
    fn add(self, rhs: &LevelScalar) -> LevelScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return LevelScalar { num, den: Poly::one() };
            }
            return LevelScalar::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        LevelScalar::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &LevelScalar {
    type Output = LevelScalar;
    fn sub(self, rhs: &LevelScalar) -> LevelScalar {
        self + &(-rhs)
    }
}

impl Mul for &LevelScalar {
    type Output = LevelScalar;
    fn mul(self, rhs: &LevelScalar) -> LevelScalar {
        if self.is_zero() || rhs.is_zero() {
            return LevelScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return LevelScalar { num: &self.num * &rhs.num, den: Poly::one() };
        }
        LevelScalar::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &LevelScalar {
    type Output = LevelScalar;
    fn neg(self) -> LevelScalar {
        LevelScalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for LevelScalar {
    type Output = LevelScalar;
    fn neg(self) -> LevelScalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for LevelScalar {
            type Output = LevelScalar;
            fn $m(self, rhs: LevelScalar) -> LevelScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LevelScalar> for LevelScalar {
            type Output = LevelScalar;
            fn $m(self, rhs: &LevelScalar) -> LevelScalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&LevelScalar> for LevelScalar {
    fn add_assign(&mut self, rhs: &LevelScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&LevelScalar> for LevelScalar {
    fn sub_assign(&mut self, rhs: &LevelScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&LevelScalar> for LevelScalar {
    fn mul_assign(&mut self, rhs: &LevelScalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for LevelScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        if self.num.term_count() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        write!(f, "/({})", self.den)
    }
}

impl fmt::Debug for LevelScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Falling factorial `x (x-1) ... (x-n+1)` as an integer.
pub fn falling(x: i64, n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n as i64 {
        acc *= BigInt::from(x - i);
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as i64).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// Generalized binomial `binom(x, n)` for any integer `x`.
pub fn binom(x: i64, n: u32) -> BigInt {
    falling(x, n) / factorial(n)
}

pub fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

// ---------------------------------------------------------------------------
// Text syntax: integers, fractions, `k`, `+ - * / ^ ( )`.

struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ScalarParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ScalarError> {
        Err(ScalarError::Parse { col: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<LevelScalar, ScalarError> {
        let mut acc = self.product()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.product()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<LevelScalar, ScalarError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<LevelScalar, ScalarError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<LevelScalar, ScalarError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .map_or_else(|| self.err("expected exponent"), Ok)?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LevelScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.sum()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(LevelScalar::k())
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
                Ok(LevelScalar::from_rat(Rat::from_integer(s.parse().expect("digits"))))
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

impl FromStr for LevelScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ScalarParser { src: s.as_bytes(), pos: 0 };
        let v = p.sum()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> LevelScalar {
        x.parse().unwrap()
    }

    #[test]
    fn product_of_linear_factors() {
        assert_eq!(&s("k+1") * &s("k+1"), s("k^2+2*k+1"));
    }

    #[test]
    fn cancellation_in_quotient() {
        assert_eq!(s("k^2-1").checked_div(&s("k+1")).unwrap(), s("k-1"));
        assert_eq!(s("(k*k-1)/(k+1)"), s("k-1"));
    }

    #[test]
    fn like_denominators() {
        let a = s("1/(k+1)");
        assert_eq!(&a + &a, s("2/(k+1)"));
        assert_eq!((&a + &a).denom(), &s("k+1").numer().clone());
    }

    #[test]
    fn self_difference_is_zero() {
        let a = s("(3*k^2-1)/(2*k+7)");
        assert!((&a - &a).is_zero());
        assert_eq!(&a - &a, LevelScalar::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(s("k").checked_div(&LevelScalar::zero()), Err(ScalarError::DivisionByZero));
        assert!(matches!("1/(k-k)".parse::<LevelScalar>(), Err(ScalarError::DivisionByZero)));
    }

    #[test]
    fn specialize_examples() {
        assert_eq!(s("-(2*k+1)").specialize(&rat(-1)).unwrap(), rat(1));
        assert_eq!(s("k-1").specialize(&rat(0)).unwrap(), rat(-1));
        match s("1/(k+1)").specialize(&rat(-1)) {
            Err(ScalarError::Pole { denominator, .. }) => assert_eq!(denominator, "k+1"),
            other => panic!("expected pole, got {other:?}"),
        }
    }

    #[test]
    fn denominators_are_monic() {
        let a = s("1/(2*k+4)");
        assert!(a.denom().leading().unwrap().is_one());
        assert_eq!(a, s("(1/2)/(k+2)"));
    }

    #[test]
    fn display_round_trips() {
        for x in ["0", "1", "-3/2", "k", "-(2*k+1)", "(k+1)*(2*k+1)", "1/(k+1)", "(k^2-3)/(k^3+1/2)", "-k/(k+1)"] {
            let v = s(x);
            assert_eq!(s(&v.to_string()), v, "{x} printed as {v}");
        }
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(-1, 3), BigInt::from(-1));
        assert_eq!(binom(-2, 2), BigInt::from(3));
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(2, 5), BigInt::from(0));
    }
}
