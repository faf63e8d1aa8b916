//! Exact scalar domains: rationals with a machine-word fast path, and
//! Laurent polynomials in one variable `A`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact arithmetic used by tensors and the evaluator.
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_int(n: i64) -> Self;
    /// Multiplicative inverse when it exists in the domain.
    fn try_inv(&self) -> Option<Self>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let prod = a.clone() * b.clone();
        let cur = std::mem::replace(self, Self::zero());
        *self = cur + prod;
    }

    fn add_assign(&mut self, a: &Self) {
        if a.is_zero() {
            return;
        }
        let cur = std::mem::replace(self, Self::zero());
        *self = cur + a.clone();
    }
}

/// Scalars with division by every nonzero element.
pub trait Field: Scalar + Div<Output = Self> {}

/// Exact rational number. Values that fit in `i64` stay unboxed; the
/// representation is canonical, so structural equality is numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_i128(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "zero denominator");
        Rational::from_i128(num as i128, den as i128)
    }

    pub fn int(n: i64) -> Rational {
        Rational::Small(n, 1)
    }

    fn from_i128(num: i128, den: i128) -> Rational {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Rational::Small(0, 1);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rational::Small(a, b),
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Rational {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            Rational::Small(n, d)
        } else {
            Rational::Big(r)
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => b.clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small(n, _) => BigInt::from(*n),
            Rational::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small(_, d) => BigInt::from(*d),
            Rational::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small(_, d) => *d == 1,
            Rational::Big(b) => b.is_integer(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small(n, _) => *n < 0,
            Rational::Big(b) => b.is_negative(),
        }
    }

    pub fn recip(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Rational::from_big(b.recip()),
        }
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        match (&self, &o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        return Rational::Small(s, 1);
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rational::from_i128(a * d + c * b, b * d)
            }
            _ => Rational::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self + (-o)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match self {
            Rational::Small(n, d) if n != i64::MIN => Rational::Small(-n, d),
            other => Rational::from_big(-other.to_big()),
        }
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        match (&self, &o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(p) = a.checked_mul(*c) {
                        return Rational::Small(p, 1);
                    }
                }
                Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rational::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, o: Rational) -> Rational {
        assert!(!o.is_zero(), "division by zero");
        self * o.recip()
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Rational) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Rational) -> Ordering {
        match (self, o) {
            (Rational::Small(a, b), Rational::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small(n, 1) => write!(f, "{n}"),
            Rational::Small(n, d) => write!(f, "{n}/{d}"),
            Rational::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Rational::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n = BigInt::from_str(n).map_err(|_| bad())?;
        let d = BigInt::from_str(d).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Rational {
        Rational::int(n)
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::Small(0, 1)
    }
    fn one() -> Self {
        Rational::Small(1, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }
    fn from_int(n: i64) -> Self {
        Rational::int(n)
    }
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) if n.is_i64() => Ok(Rational::int(n.as_i64().unwrap())),
            Value::Object(m) => {
                // constant Laurent map
                let l = Laurent::from_json(v)?;
                match l.terms.as_slice() {
                    [] => Ok(Rational::zero()),
                    [(0, c)] => Ok(c.clone()),
                    _ => Err(Error::Parse(format!(
                        "non-constant Laurent entry where a rational is required: {m:?}"
                    ))),
                }
            }
            other => Err(Error::Parse(format!("expected rational string, got {other}"))),
        }
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if let (Rational::Small(x, 1), Rational::Small(y, 1), Rational::Small(z, 1)) = (&*self, a, b) {
            if let Some(p) = y.checked_mul(*z).and_then(|p| p.checked_add(*x)) {
                *self = Rational::Small(p, 1);
                return;
            }
        }
        if a.is_zero() || b.is_zero() {
            return;
        }
        let cur = std::mem::replace(self, Rational::zero());
        *self = cur + a.clone() * b.clone();
    }
}

impl Field for Rational {}

/// Laurent polynomial in `A` with rational coefficients, stored as sorted
/// `(exponent, coefficient)` pairs with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    terms: Vec<(i32, Rational)>,
}

impl Laurent {
    pub fn monomial(c: Rational, e: i32) -> Laurent {
        if c.is_zero() {
            Laurent::default()
        } else {
            Laurent { terms: vec![(e, c)] }
        }
    }

    /// `A^e`
    pub fn a_pow(e: i32) -> Laurent {
        Laurent::monomial(Rational::one(), e)
    }

    pub fn constant(c: Rational) -> Laurent {
        Laurent::monomial(c, 0)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Laurent {
        let mut v: Vec<(i32, Rational)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(i32, Rational)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    let s = std::mem::replace(lc, Rational::zero()) + c;
                    *lc = s;
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Laurent { terms: out }
    }

    pub fn terms(&self) -> &[(i32, Rational)] {
        &self.terms
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms
            .iter()
            .find(|t| t.0 == e)
            .map(|t| t.1.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Substitute `A -> A^{-1}`.
    pub fn bar(&self) -> Laurent {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (-e, c.clone())))
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(self, o: Laurent) -> Laurent {
        if o.terms.is_empty() {
            return self;
        }
        if self.terms.is_empty() {
            return o;
        }
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let take = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(o.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].1.clone() + o.terms[j].1.clone();
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Laurent { terms: out }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, o: Laurent) -> Laurent {
        self + (-o)
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, o: Laurent) -> Laurent {
        if self.terms.is_empty() || o.terms.is_empty() {
            return Laurent::default();
        }
        let mut acc = Vec::with_capacity(self.terms.len() * o.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                acc.push((e1 + e2, c1.clone() * c2.clone()));
            }
        }
        Laurent::from_terms(acc)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest power first, the way brackets are usually written
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let unit = mag.is_one();
            match (*e, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "A")?,
                (e, true) => write!(f, "A^{e}")?,
                (1, false) => write!(f, "{mag}*A")?,
                (e, false) => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Scalar for Laurent {
    fn zero() -> Self {
        Laurent::default()
    }
    fn one() -> Self {
        Laurent::a_pow(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_int(n: i64) -> Self {
        Laurent::constant(Rational::int(n))
    }
    fn try_inv(&self) -> Option<Self> {
        match self.terms.as_slice() {
            [(e, c)] => Some(Laurent::monomial(c.recip(), -e)),
            _ => None,
        }
    }
    fn to_json(&self) -> Value {
        let mut m = serde_json::Map::new();
        for (e, c) in &self.terms {
            m.insert(e.to_string(), Value::String(c.to_string()));
        }
        Value::Object(m)
    }
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Object(m) => {
                let mut terms = Vec::new();
                for (k, c) in m {
                    let e: i32 = k
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad Laurent exponent {k:?}")))?;
                    terms.push((e, Rational::from_json(c)?));
                }
                Ok(Laurent::from_terms(terms))
            }
            other => Ok(Laurent::constant(Rational::from_json(other)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_fast_path_overflows_to_big() {
        let big = Rational::int(i64::MAX);
        let s = big.clone() + big.clone();
        assert!(matches!(s, Rational::Big(_)));
        assert_eq!(s - big.clone(), big);
        assert!(matches!(Rational::int(i64::MAX) + Rational::int(1) - Rational::int(1), Rational::Small(..)));
    }

    #[test]
    fn rational_parse_print() {
        for s in ["0", "-3", "7/2", "-1/3", "123456789012345678901234567891/7"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!("4/6".parse::<Rational>().unwrap().to_string(), "2/3");
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn laurent_loop_value() {
        let a = Laurent::a_pow(1);
        let d = -(a.clone() * a.clone()) - Laurent::a_pow(-2);
        assert_eq!(d.to_string(), "-A^2 - A^-2");
        assert_eq!(d.bar(), d);
        let j = Laurent::from_json(&d.to_json()).unwrap();
        assert_eq!(j, d);
    }
}
