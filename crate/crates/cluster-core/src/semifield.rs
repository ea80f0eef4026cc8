//! Semifields: a multiplicative abelian group with an auxiliary addition `⊕`.
//!
//! A semifield is a context object; its values are plain data. Two instances
//! are provided: the tropical semifield on named generators (`⊕` is the
//! componentwise minimum of exponents) and the universal semifield of
//! subtraction-free rational functions (`⊕` is ordinary addition).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::laurent::{monomial_text, Laurent, Vars};
use crate::rational::RationalExpr;

pub trait Semifield: Clone + Send + Sync {
    type Value: Clone + PartialEq + Debug + Send + Sync;

    fn gens(&self) -> &Vars;
    fn one(&self) -> Self::Value;
    /// The generator with 0-based index `i`.
    fn generator(&self, i: usize) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn inv(&self, a: &Self::Value) -> Self::Value;
    fn oplus(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    /// The value as an element of the field of rational functions in the
    /// generators (for tropical values this is the monomial itself).
    fn to_rational(&self, a: &Self::Value) -> RationalExpr;
    fn render(&self, a: &Self::Value) -> String;

    fn div(&self, a: &Self::Value, b: &Self::Value) -> Self::Value {
        self.mul(a, &self.inv(b))
    }

    fn pow(&self, a: &Self::Value, k: i64) -> Self::Value {
        let mut base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `1 ⊕ 1 ⊕ ... ⊕ 1` with `c` summands, by doubling.
    fn positive_integer(&self, c: &BigInt) -> Self::Value {
        assert!(c.is_positive(), "positive integers only");
        let bits = c.to_str_radix(2);
        let mut acc: Option<Self::Value> = None;
        for b in bits.chars() {
            if let Some(a) = acc.take() {
                acc = Some(self.oplus(&a, &a));
            }
            if b == '1' {
                acc = Some(match acc {
                    Some(a) => self.oplus(&a, &self.one()),
                    None => self.one(),
                });
            }
        }
        acc.expect("c > 0")
    }

    /// Evaluate a polynomial with positive coefficients at semifield values.
    fn eval_positive(&self, f: &Laurent, values: &[Self::Value]) -> Result<Self::Value> {
        assert_eq!(f.nvars(), values.len(), "one value per variable");
        let mut acc: Option<Self::Value> = None;
        for (e, c) in f.sorted_terms() {
            if !c.is_positive() {
                return Err(Error::NonPositiveCoefficient(c.to_string()));
            }
            let mut t = self.positive_integer(c);
            for (v, &k) in values.iter().zip(e) {
                if k != 0 {
                    t = self.mul(&t, &self.pow(v, k as i64));
                }
            }
            acc = Some(match acc {
                Some(a) => self.oplus(&a, &t),
                None => t,
            });
        }
        acc.ok_or(Error::DivisionByAbsorbing)
    }
}

/// Element of a tropical semifield: a Laurent monomial in named generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalMonomial {
    gens: Vars,
    exps: Vec<i64>,
}

impl TropicalMonomial {
    pub fn new(gens: Vars, exps: Vec<i64>) -> Self {
        assert_eq!(gens.len(), exps.len(), "one exponent per generator");
        TropicalMonomial { gens, exps }
    }

    pub fn one(gens: Vars) -> Self {
        let n = gens.len();
        Self::new(gens, vec![0; n])
    }

    pub fn exps(&self) -> &[i64] {
        &self.exps
    }

    pub fn gens(&self) -> &Vars {
        &self.gens
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.gens != other.gens {
            return Err(Error::GeneratorMismatch(format!(
                "{:?} vs {:?}",
                self.gens.names(),
                other.gens.names()
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::new(
            self.gens.clone(),
            self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn inv(&self) -> Self {
        Self::new(self.gens.clone(), self.exps.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i64) -> Self {
        Self::new(self.gens.clone(), self.exps.iter().map(|a| a * k).collect())
    }

    /// Exponents with the positive part kept (`numerator`) or the negative
    /// part negated (`denominator`).
    pub fn numerator(&self) -> Vec<i64> {
        self.exps.iter().map(|&e| e.max(0)).collect()
    }

    pub fn denominator(&self) -> Vec<i64> {
        self.exps.iter().map(|&e| (-e).max(0)).collect()
    }

    pub fn to_laurent(&self) -> Laurent {
        Laurent::monomial(self.exps.iter().map(|&e| e as i32).collect(), 1)
    }

    /// Laurent monomial text, `1` for the unit.
    pub fn to_text(&self) -> String {
        let t = monomial_text(&to_i32(&self.exps), &self.gens);
        if t.is_empty() {
            "1".into()
        } else {
            t
        }
    }

    /// `num / den` text with nonnegative exponents on both sides.
    pub fn to_fraction_text(&self) -> String {
        self.to_laurent().to_fraction_text(&self.gens)
    }
}

fn to_i32(v: &[i64]) -> Vec<i32> {
    v.iter().map(|&e| e as i32).collect()
}

/// `a ⊕ b` in a tropical semifield.
pub fn trop_oplus(a: &TropicalMonomial, b: &TropicalMonomial) -> Result<TropicalMonomial> {
    a.check(b)?;
    Ok(TropicalMonomial::new(
        a.gens.clone(),
        a.exps.iter().zip(&b.exps).map(|(x, y)| *x.min(y)).collect(),
    ))
}

/// Tropical evaluation of a polynomial whose coefficients must all be positive.
pub fn trop_eval_positive_poly(
    f: &Laurent,
    assign: &[TropicalMonomial],
) -> Result<TropicalMonomial> {
    assert_eq!(f.nvars(), assign.len(), "one value per variable");
    let gens = match assign.first() {
        Some(a) => a.gens.clone(),
        None => Vars::new(Vec::<String>::new()),
    };
    for a in assign {
        a.check(&assign[0])?;
    }
    let mut best: Option<Vec<i64>> = None;
    for (e, c) in f.terms() {
        if !c.is_positive() {
            return Err(Error::NonPositiveCoefficient(c.to_string()));
        }
        let mut img = vec![0i64; gens.len()];
        for (a, &k) in assign.iter().zip(e) {
            for (x, &y) in img.iter_mut().zip(&a.exps) {
                *x += k as i64 * y;
            }
        }
        best = Some(match best {
            Some(b) => b.iter().zip(&img).map(|(x, y)| *x.min(y)).collect(),
            None => img,
        });
    }
    let exps = best.ok_or(Error::DivisionByAbsorbing)?;
    Ok(TropicalMonomial::new(gens, exps))
}

/// `Trop(u_1, ..., u_m)`. With no generators it is the one-element semifield.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tropical {
    gens: Vars,
}

impl Tropical {
    pub fn new(gens: Vars) -> Self {
        Tropical { gens }
    }

    pub fn trivial() -> Self {
        Tropical { gens: Vars::new(Vec::<String>::new()) }
    }

    pub fn monomial(&self, exps: Vec<i64>) -> TropicalMonomial {
        TropicalMonomial::new(self.gens.clone(), exps)
    }
}

impl Semifield for Tropical {
    type Value = TropicalMonomial;

    fn gens(&self) -> &Vars {
        &self.gens
    }

    fn one(&self) -> TropicalMonomial {
        TropicalMonomial::one(self.gens.clone())
    }

    fn generator(&self, i: usize) -> TropicalMonomial {
        let mut e = vec![0; self.gens.len()];
        e[i] = 1;
        self.monomial(e)
    }

    fn mul(&self, a: &TropicalMonomial, b: &TropicalMonomial) -> TropicalMonomial {
        a.try_mul(b).expect("generator mismatch inside tropical semifield")
    }

    fn inv(&self, a: &TropicalMonomial) -> TropicalMonomial {
        a.inv()
    }

    fn oplus(&self, a: &TropicalMonomial, b: &TropicalMonomial) -> TropicalMonomial {
        trop_oplus(a, b).expect("generator mismatch inside tropical semifield")
    }

    fn pow(&self, a: &TropicalMonomial, k: i64) -> TropicalMonomial {
        a.pow(k)
    }

    fn positive_integer(&self, _c: &BigInt) -> TropicalMonomial {
        self.one()
    }

    fn to_rational(&self, a: &TropicalMonomial) -> RationalExpr {
        RationalExpr::from_laurent(a.to_laurent())
    }

    fn render(&self, a: &TropicalMonomial) -> String {
        a.to_fraction_text()
    }
}

/// Element of the universal semifield: a subtraction-free rational function.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalValue {
    gens: Vars,
    expr: RationalExpr,
}

impl UniversalValue {
    pub fn new(gens: Vars, expr: RationalExpr) -> Self {
        assert_eq!(gens.len(), expr.nvars(), "expression over the generators");
        UniversalValue { gens, expr }
    }

    pub fn expr(&self) -> &RationalExpr {
        &self.expr
    }

    pub fn gens(&self) -> &Vars {
        &self.gens
    }

    pub fn to_text(&self) -> String {
        self.expr.to_text(&self.gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Universal {
    gens: Vars,
}

impl Universal {
    pub fn new(gens: Vars) -> Self {
        Universal { gens }
    }

    pub fn value(&self, expr: RationalExpr) -> UniversalValue {
        UniversalValue::new(self.gens.clone(), expr)
    }

    fn check(&self, a: &UniversalValue) {
        assert!(a.gens == self.gens, "generator mismatch inside universal semifield");
    }
}

impl Semifield for Universal {
    type Value = UniversalValue;

    fn gens(&self) -> &Vars {
        &self.gens
    }

    fn one(&self) -> UniversalValue {
        self.value(RationalExpr::one(self.gens.len()))
    }

    fn generator(&self, i: usize) -> UniversalValue {
        self.value(RationalExpr::var(self.gens.len(), i))
    }

    fn mul(&self, a: &UniversalValue, b: &UniversalValue) -> UniversalValue {
        self.check(a);
        self.check(b);
        self.value(a.expr.mul(&b.expr))
    }

    fn inv(&self, a: &UniversalValue) -> UniversalValue {
        self.check(a);
        self.value(a.expr.inv().expect("semifield values are nonzero"))
    }

    fn oplus(&self, a: &UniversalValue, b: &UniversalValue) -> UniversalValue {
        self.check(a);
        self.check(b);
        let mut sum = a.expr.add(&b.expr);
        // A sum of positive expressions is a natural factor to retry later.
        if sum.num().num_terms() > 1 {
            let h = sum.num().clone();
            let hmin = h.min_exponents().expect("nonzero");
            if hmin.iter().all(|&e| e == 0) {
                sum.add_hint(h);
            }
        }
        self.value(sum)
    }

    fn positive_integer(&self, c: &BigInt) -> UniversalValue {
        self.value(crate::rational::constant(self.gens.len(), c.clone()))
    }

    fn to_rational(&self, a: &UniversalValue) -> RationalExpr {
        a.expr.clone()
    }

    fn render(&self, a: &UniversalValue) -> String {
        a.to_text()
    }
}

/// A subtraction-free expression: positive constants, generators, `+`, `·`,
/// `÷` and nonnegative integer powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SfExpr {
    Gen(usize),
    Const(u64),
    Add(Box<SfExpr>, Box<SfExpr>),
    Mul(Box<SfExpr>, Box<SfExpr>),
    Div(Box<SfExpr>, Box<SfExpr>),
    Pow(Box<SfExpr>, u32),
}

impl SfExpr {
    pub fn add(a: SfExpr, b: SfExpr) -> SfExpr {
        SfExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: SfExpr, b: SfExpr) -> SfExpr {
        SfExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: SfExpr, b: SfExpr) -> SfExpr {
        SfExpr::Div(Box::new(a), Box::new(b))
    }

    pub fn pow(a: SfExpr, k: u32) -> SfExpr {
        SfExpr::Pow(Box::new(a), k)
    }

    /// A polynomial with positive coefficients as an expression tree.
    pub fn from_positive_poly(f: &Laurent) -> Result<SfExpr> {
        let mut acc: Option<SfExpr> = None;
        for (e, c) in f.sorted_terms() {
            if !c.is_positive() || e.iter().any(|&x| x < 0) {
                return Err(Error::NonPositiveCoefficient(c.to_string()));
            }
            let k: u64 = c
                .try_into()
                .map_err(|_| Error::InvalidInput("coefficient too large".into()))?;
            let mut t = SfExpr::Const(k);
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = SfExpr::mul(t, SfExpr::pow(SfExpr::Gen(i), x as u32));
                }
            }
            acc = Some(match acc {
                Some(a) => SfExpr::add(a, t),
                None => t,
            });
        }
        acc.ok_or(Error::ZeroPolynomial)
    }
}

/// Evaluate a subtraction-free expression in a semifield, reading `+` as `⊕`.
pub fn sf_eval<S: Semifield>(expr: &SfExpr, values: &[S::Value], sf: &S) -> Result<S::Value> {
    Ok(match expr {
        SfExpr::Gen(i) => values
            .get(*i)
            .cloned()
            .ok_or_else(|| Error::InvalidInput(format!("no value for generator {i}")))?,
        SfExpr::Const(0) => return Err(Error::DivisionByAbsorbing),
        SfExpr::Const(c) => sf.positive_integer(&BigInt::from(*c)),
        SfExpr::Add(a, b) => sf.oplus(&sf_eval(a, values, sf)?, &sf_eval(b, values, sf)?),
        SfExpr::Mul(a, b) => sf.mul(&sf_eval(a, values, sf)?, &sf_eval(b, values, sf)?),
        SfExpr::Div(a, b) => sf.div(&sf_eval(a, values, sf)?, &sf_eval(b, values, sf)?),
        SfExpr::Pow(a, k) => sf.pow(&sf_eval(a, values, sf)?, *k as i64),
    })
}

/// Direct evaluation over the rationals, for cross-checking.
pub fn rational_eval(expr: &SfExpr, values: &[RationalExpr]) -> Result<RationalExpr> {
    let n = values.first().map(|v| v.nvars()).unwrap_or(0);
    Ok(match expr {
        SfExpr::Gen(i) => values[*i].clone(),
        SfExpr::Const(c) => crate::rational::constant(n, *c),
        SfExpr::Add(a, b) => rational_eval(a, values)?.add(&rational_eval(b, values)?),
        SfExpr::Mul(a, b) => rational_eval(a, values)?.mul(&rational_eval(b, values)?),
        SfExpr::Div(a, b) => rational_eval(a, values)?.div(&rational_eval(b, values)?)?,
        SfExpr::Pow(a, k) => rational_eval(a, values)?.pow(*k as i64)?,
    })
}
