//! Exact rational functions in two integer parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, Rational};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FormulaError {
    #[error("formula denominator vanishes at n = {n}, k = {k}")]
    ZeroDenominator { n: i64, k: i64 },
    #[error("formula value overflows 128-bit arithmetic at n = {n}, k = {k}")]
    Overflow { n: i64, k: i64 },
}

/// Polynomial in `n` and `k` with rational coefficients, keyed by
/// `(deg_n, deg_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Poly::zero();
        p.add_term((0, 0), c);
        p
    }

    pub fn int(c: i64) -> Self {
        Poly::constant(exact::int(c as i128))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Poly::constant(exact::rat(p as i128, q as i128))
    }

    pub fn n() -> Self {
        Poly::monomial(1, 0)
    }

    pub fn k() -> Self {
        Poly::monomial(0, 1)
    }

    fn monomial(dn: u32, dk: u32) -> Self {
        let mut p = Poly::zero();
        p.add_term((dn, dk), Rational::one());
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        let e = self.terms.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::int(1), |acc, _| &acc * self)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `((deg_n, deg_k), coefficient)`, highest `n` degree first.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), Rational)> + '_ {
        self.terms.iter().rev().map(|(&d, &c)| (d, c))
    }

    pub fn eval(&self, n: i64, k: i64) -> Option<Rational> {
        let mut acc = Rational::zero();
        for (&(dn, dk), c) in &self.terms {
            let mut v: i128 = 1;
            for _ in 0..dn {
                v = v.checked_mul(n as i128)?;
            }
            for _ in 0..dk {
                v = v.checked_mul(k as i128)?;
            }
            let t = Rational::from_integer(v);
            acc = acc.checked_add(&c.checked_mul(&t)?)?;
        }
        Some(acc)
    }

    /// `C(p, 2)` as a polynomial.
    pub fn choose2(p: &Poly) -> Poly {
        &(p * &(p - &Poly::int(1))) * &Poly::ratio(1, 2)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                $body(self, rhs)
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                $body(&self, &rhs)
            }
        }
        impl $tr<i64> for Poly {
            type Output = Poly;
            fn $m(self, rhs: i64) -> Poly {
                $body(&self, &Poly::int(rhs))
            }
        }
        impl $tr<Poly> for i64 {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                $body(&Poly::int(self), &rhs)
            }
        }
    };
}

fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (&d, &c) in &b.terms {
        out.add_term(d, c);
    }
    out
}

fn sub(a: &Poly, b: &Poly) -> Poly {
    add(a, &-b)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (&(an, ak), &ac) in &a.terms {
        for (&(bn, bk), &bc) in &b.terms {
            out.add_term((an + bn, ak + bk), ac * bc);
        }
    }
    out
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&d, &c)| (d, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((dn, dk), c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let vars = [("n", dn), ("k", dk)]
                .iter()
                .filter(|(_, d)| *d > 0)
                .map(|(v, d)| {
                    if *d == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{d}")
                    }
                })
                .collect::<Vec<_>>()
                .join("");
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&vars)?;
            } else if !a.is_integer() {
                write!(f, "({a}){vars}")?;
            } else {
                write!(f, "{a}{vars}")?;
            }
        }
        Ok(())
    }
}

/// Serialized term: `coeff * n^n * k^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub n: u32,
    pub k: u32,
    #[serde(with = "exact::ratio_str")]
    pub coeff: Rational,
}

/// `numerator / denominator`, both polynomials in `(n, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formula {
    pub numerator: Poly,
    pub denominator: Poly,
}

impl Formula {
    pub fn poly(p: Poly) -> Self {
        Formula {
            numerator: p,
            denominator: Poly::int(1),
        }
    }

    pub fn quotient(numerator: Poly, denominator: Poly) -> Self {
        Formula {
            numerator,
            denominator,
        }
    }

    pub fn eval(&self, n: i64, k: i64) -> Result<Rational, FormulaError> {
        let num = self
            .numerator
            .eval(n, k)
            .ok_or(FormulaError::Overflow { n, k })?;
        let den = self
            .denominator
            .eval(n, k)
            .ok_or(FormulaError::Overflow { n, k })?;
        if den.is_zero() {
            return Err(FormulaError::ZeroDenominator { n, k });
        }
        num.checked_div(&den).ok_or(FormulaError::Overflow { n, k })
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator == Poly::int(1) {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FormulaRepr {
    numerator: Vec<Term>,
    denominator: Vec<Term>,
    text: String,
}

fn to_terms(p: &Poly) -> Vec<Term> {
    p.terms()
        .map(|((n, k), coeff)| Term { n, k, coeff })
        .collect()
}

fn from_terms(ts: &[Term]) -> Poly {
    let mut p = Poly::zero();
    for t in ts {
        p.add_term((t.n, t.k), t.coeff);
    }
    p
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FormulaRepr {
            numerator: to_terms(&self.numerator),
            denominator: to_terms(&self.denominator),
            text: self.to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = FormulaRepr::deserialize(d)?;
        Ok(Formula {
            numerator: from_terms(&r.numerator),
            denominator: from_terms(&r.denominator),
        })
    }
}
