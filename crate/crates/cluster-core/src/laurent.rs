//! Sparse multivariate Laurent polynomials with big-integer coefficients.
//!
//! Terms live in a hash map keyed by exponent vector. A sorted snapshot in
//! graded-lexicographic order is taken only for division and printing.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::packed;

pub type Exponents = Vec<i32>;

/// Ordered variable names for printing and parsing.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Vars(names.into_iter().map(Into::into).collect::<Vec<_>>().into())
    }

    /// `prefix1 .. prefixN`.
    pub fn indexed(prefix: &str, count: usize) -> Self {
        Self::indexed_from(prefix, 1, count)
    }

    pub fn indexed_from(prefix: &str, start: usize, count: usize) -> Self {
        Vars::new((start..start + count).map(|i| format!("{prefix}{i}")))
    }

    /// `x1..xn, y1..yn`: the ambient variables of a principal-coefficient pattern.
    pub fn principal(n: usize) -> Self {
        Self::indexed("x", n).concat(&Self::indexed("y", n))
    }

    pub fn concat(&self, other: &Vars) -> Vars {
        Vars::new(self.0.iter().chain(other.0.iter()).cloned())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }
}

/// Graded lexicographic comparison: total degree first, then the first
/// differing exponent (a larger exponent of an earlier variable wins).
pub fn grlex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone, PartialEq, Eq)]
struct GrlexKey(Exponents);

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        grlex_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    nvars: usize,
    terms: HashMap<Exponents, BigInt>,
}

impl Laurent {
    pub fn zero(nvars: usize) -> Self {
        Laurent { nvars, terms: HashMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    /// The variable with 0-based index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, 1)
    }

    pub fn monomial(exps: Exponents, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let nvars = exps.len();
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Laurent { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, BigInt)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length mismatch");
            p.add_term(e, c);
        }
        p
    }

    fn packed(&self) -> Option<packed::Terms> {
        packed::to_packed(self.terms.iter())
    }

    fn from_packed(nvars: usize, t: packed::Terms) -> Laurent {
        let terms = t.into_iter().map(|(k, c)| (packed::unpack(k, nvars), BigInt::from(c))).collect();
        Laurent { nvars, terms }
    }

    fn add_term(&mut self, e: Exponents, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.get(&vec![0; self.nvars]).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn as_monomial(&self) -> Option<(&Exponents, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// No negative exponents anywhere.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    /// Per-variable minimum exponent; `None` for the zero polynomial.
    pub fn min_exponents(&self) -> Option<Exponents> {
        self.fold_exponents(i32::min)
    }

    pub fn max_exponents(&self) -> Option<Exponents> {
        self.fold_exponents(i32::max)
    }

    fn fold_exponents(&self, f: fn(i32, i32) -> i32) -> Option<Exponents> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            for (a, &x) in acc.iter_mut().zip(e) {
                *a = f(*a, x);
            }
        }
        Some(acc)
    }

    /// Multiply by the monomial `x^shift`.
    pub fn mul_monomial(&self, shift: &[i32]) -> Laurent {
        assert_eq!(shift.len(), self.nvars);
        Laurent {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exps(e, shift), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Laurent {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Laurent {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Integer power; negative exponents are allowed only for monomials with
    /// unit coefficient.
    pub fn pow_signed(&self, k: i64) -> Result<Laurent> {
        if k >= 0 {
            return Ok(self.pow(k as u32));
        }
        match self.as_monomial() {
            Some((e, c)) if c.abs().is_one() => {
                let k = -k;
                let exps = e.iter().map(|&x| -x * k as i32).collect();
                let sign = if c.is_negative() && k % 2 == 1 { -1 } else { 1 };
                Ok(Laurent::monomial(exps, sign))
            }
            _ => Err(Error::NonExactDivision(
                "negative power of a non-monomial".into(),
            )),
        }
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact quotient `self / q`.
    ///
    /// `q` is first shifted by its minimal exponent vector so that it becomes a
    /// genuine polynomial with no monomial factor. Division then runs in
    /// graded-lex order. Every quotient exponent must lie in the box allowed
    /// by the Newton polytopes, which both guarantees termination and detects
    /// non-exact input early.
    pub fn exact_div(&self, q: &Laurent) -> Result<Laurent> {
        assert_eq!(self.nvars, q.nvars, "variable count mismatch");
        if q.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        if let Some((qe, qc)) = q.as_monomial() {
            let mut out = HashMap::with_capacity(self.terms.len());
            for (e, c) in &self.terms {
                let (quot, rem) = c.div_rem(qc);
                if !rem.is_zero() {
                    return Err(Error::NonExactDivision(format!(
                        "coefficient {c} not divisible by {qc}"
                    )));
                }
                out.insert(sub_exps(e, qe), quot);
            }
            return Ok(Laurent { nvars: self.nvars, terms: out });
        }
        let qmin = q.min_exponents().expect("nonzero");
        let qp = q.mul_monomial(&neg_exps(&qmin));
        let qmax = qp.max_exponents().expect("nonzero");
        let lo = self.min_exponents().expect("nonzero");
        let hi = sub_exps(&self.max_exponents().expect("nonzero"), &qmax);
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::NonExactDivision("Newton polytope too small".into()));
        }
        if let (Some(a), Some(b)) = (self.packed(), qp.packed()) {
            match packed::exact_div(&a, &b, self.nvars, &lo, &hi) {
                Some(Ok(t)) => return Ok(Laurent::from_packed(self.nvars, t).mul_monomial(&neg_exps(&qmin))),
                Some(Err(())) => {
                    return Err(Error::NonExactDivision("nonzero remainder in exact division".into()))
                }
                None => {}
            }
        }
        let (lt_e, lt_c) = {
            let (e, c) = qp.leading_term().expect("nonzero");
            (e.clone(), c.clone())
        };
        let q_terms: Vec<(Exponents, BigInt)> =
            qp.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        let mut rem: BTreeMap<GrlexKey, BigInt> = self
            .terms
            .iter()
            .map(|(e, c)| (GrlexKey(e.clone()), c.clone()))
            .collect();
        let mut quotient = HashMap::new();
        while let Some((key, c)) = rem.pop_last() {
            let e = sub_exps(&key.0, &lt_e);
            let in_box = e
                .iter()
                .zip(lo.iter().zip(&hi))
                .all(|(x, (l, h))| l <= x && x <= h);
            let (qc, r) = c.div_rem(&lt_c);
            if !in_box || !r.is_zero() {
                return Err(Error::NonExactDivision(
                    "nonzero remainder in exact division".into(),
                ));
            }
            for (te, tc) in &q_terms {
                if *te == lt_e {
                    continue;
                }
                let k = GrlexKey(add_exps(&e, te));
                let delta = &qc * tc;
                match rem.entry(k) {
                    std::collections::btree_map::Entry::Occupied(mut o) => {
                        *o.get_mut() -= delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(-delta);
                    }
                }
            }
            quotient.insert(e, qc);
        }
        let r = Laurent { nvars: self.nvars, terms: quotient };
        Ok(r.mul_monomial(&neg_exps(&qmin)))
    }

    /// Division in the polynomial ring: both operands and the quotient must
    /// be polynomials. Monomials are not units here, so `y1 / x1` fails.
    pub fn exact_div_polynomial(&self, q: &Laurent) -> Result<Laurent> {
        let r = self.exact_div(q)?;
        if self.is_polynomial() && q.is_polynomial() && !r.is_polynomial() {
            return Err(Error::NonExactDivision("quotient is not a polynomial".into()));
        }
        Ok(r)
    }

    /// Substitute variable `i` by the Laurent monomial `x^images[i]` in a ring
    /// with `target_nvars` variables.
    pub fn substitute_monomials(&self, images: &[Exponents], target_nvars: usize) -> Laurent {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let mut out = Laurent::zero(target_nvars);
        for (e, c) in &self.terms {
            let mut img = vec![0i32; target_nvars];
            for (k, &ek) in e.iter().enumerate() {
                if ek != 0 {
                    for (a, &b) in img.iter_mut().zip(&images[k]) {
                        *a += ek * b;
                    }
                }
            }
            out.add_term(img, c.clone());
        }
        out
    }

    /// Substitute variable `i` by an arbitrary Laurent polynomial. Negative
    /// powers require monomial images.
    pub fn substitute(&self, images: &[Laurent]) -> Result<Laurent> {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: HashMap<(usize, i32), Laurent> = HashMap::new();
        let mut out = Laurent::zero(target);
        for (e, c) in &self.terms {
            let mut term = Laurent::constant(target, c.clone());
            for (k, &ek) in e.iter().enumerate() {
                if ek == 0 {
                    continue;
                }
                let factor = match cache.get(&(k, ek)) {
                    Some(f) => f.clone(),
                    None => {
                        let f = images[k].pow_signed(ek as i64)?;
                        cache.insert((k, ek), f.clone());
                        f
                    }
                };
                term = &term * &factor;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Move terms into a ring with `new_nvars` variables: variable `i` goes to
    /// `map[i]`, or is set to 1 when `map[i]` is `None`.
    pub fn reindex(&self, new_nvars: usize, map: &[Option<usize>]) -> Laurent {
        assert_eq!(map.len(), self.nvars);
        let mut out = Laurent::zero(new_nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; new_nvars];
            for (i, &ei) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] += ei;
                }
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// Denominator vector with respect to the first `n` variables:
    /// `d_i = -min exponent of x_i`.
    pub fn denominator_vector(&self, n: usize) -> Result<Vec<i64>> {
        let mins = self.min_exponents().ok_or(Error::ZeroPolynomial)?;
        Ok(mins[..n].iter().map(|&m| -(m as i64)).collect())
    }

    /// Sum of coefficients (value at the all-ones point).
    pub fn eval_at_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn to_text(&self, vars: &Vars) -> String {
        assert_eq!(vars.len(), self.nvars, "variable names mismatch");
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            let mono = monomial_text(e, vars);
            if mono.is_empty() {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }

    /// Text as a single fraction `num / den` with a monomial denominator; plain
    /// text when there are no negative exponents.
    pub fn to_fraction_text(&self, vars: &Vars) -> String {
        if self.is_zero() || self.is_polynomial() {
            return self.to_text(vars);
        }
        let mins = self.min_exponents().expect("nonzero");
        let den: Exponents = mins.iter().map(|&m| (-m).max(0)).collect();
        let num = self.mul_monomial(&den);
        let num_text = if num.num_terms() > 1 {
            format!("({})", num.to_text(vars))
        } else {
            num.to_text(vars)
        };
        let den_text = monomial_text(&den, vars);
        if den.iter().filter(|&&d| d != 0).count() > 1 || den.iter().any(|&d| d > 1) {
            format!("{num_text} / ({den_text})")
        } else {
            format!("{num_text} / {den_text}")
        }
    }

    pub fn parse(text: &str, vars: &Vars) -> Result<Laurent> {
        crate::parse::parse_rational(text, vars)?
            .to_laurent()
            .ok_or_else(|| Error::Parse(format!("not a Laurent polynomial: {text}")))
    }

    /// JSON array-of-terms form in descending graded-lex order.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.sorted_terms()
                .into_iter()
                .map(|(e, c)| json!({"e": e, "c": c.to_string()}))
                .collect(),
        )
    }

    pub fn from_json(v: &Value, nvars: usize) -> Result<Laurent> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("expected array of terms".into()))?;
        let mut p = Laurent::zero(nvars);
        for t in arr {
            let e: Exponents = t
                .get("e")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("term without \"e\"".into()))?
                .iter()
                .map(|x| x.as_i64().map(|v| v as i32))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Parse("non-integer exponent".into()))?;
            if e.len() != nvars {
                return Err(Error::Parse("exponent length mismatch".into()));
            }
            let c: BigInt = t
                .get("c")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("term without \"c\"".into()))?
                .parse()
                .map_err(|_| Error::Parse("bad coefficient".into()))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// `x1^2*y3^-1`-style product; empty for the unit monomial.
pub fn monomial_text(e: &[i32], vars: &Vars) -> String {
    e.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| {
            if x == 1 {
                vars.name(i).to_string()
            } else {
                format!("{}^{}", vars.name(i), x)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub fn add_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_exps(a: &[i32], b: &[i32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg_exps(a: &[i32]) -> Exponents {
    a.iter().map(|x| -x).collect()
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = Vars::indexed("v", self.nvars);
        f.write_str(&self.to_text(&vars))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let (big, small) = if self.terms.len() >= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = big.clone();
        for (e, c) in &small.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        if let (Some(a), Some(b)) = (self.packed(), rhs.packed()) {
            if let Some(t) = packed::mul(&a, &b, self.nvars) {
                return Laurent::from_packed(self.nvars, t);
            }
        }
        let mut out = Laurent::zero(self.nvars);
        out.terms.reserve(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exps(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent {
            type Output = Laurent;
            fn $m(self, rhs: Laurent) -> Laurent {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Laurent {
        Laurent::parse(s, &Vars::principal(2)).unwrap()
    }

    #[test]
    fn grlex_text_order() {
        assert_eq!(p("1 + y1 + y1*y2").to_text(&Vars::principal(2)), "y1*y2 + y1 + 1");
        assert_eq!(Laurent::zero(4).to_text(&Vars::principal(2)), "0");
        assert_eq!(p("x1^-1").to_text(&Vars::principal(2)), "x1^-1");
        assert_eq!(p("3 - 2*x1*y2^3").to_text(&Vars::principal(2)), "-2*x1*y2^3 + 3");
    }

    #[test]
    fn exact_division_examples() {
        let num = p("(x1*y2 + 1)*x2");
        assert_eq!(num.exact_div(&p("x2")).unwrap(), p("x1*y2 + 1"));
        let bad = p("x1*y1*y2 + y1 + x2");
        assert!(matches!(bad.exact_div_polynomial(&p("x1")), Err(Error::NonExactDivision(_))));
        assert_eq!(bad.exact_div(&p("x1")).unwrap(), p("y1*y2 + y1/x1 + x2/x1"));
        let q = p("x1*y2 + x2^-1");
        let prod = &p("x1 + 3*y1 - y2^2") * &q;
        assert_eq!(prod.exact_div(&q).unwrap(), p("x1 + 3*y1 - y2^2"));
        assert!(matches!(p("x1 + 1").exact_div(&p("x1 - 1")), Err(Error::NonExactDivision(_))));
    }

    #[test]
    fn denominator_vectors() {
        let x = p("(x1*y1*y2 + y1 + x2)/(x1*x2)");
        assert_eq!(x.denominator_vector(2).unwrap(), vec![1, 1]);
        assert_eq!(p("x1").denominator_vector(2).unwrap(), vec![-1, 0]);
        assert_eq!(p("(x1*y2 + 1)/x2").denominator_vector(2).unwrap(), vec![0, 1]);
        assert_eq!(Laurent::zero(4).denominator_vector(2), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn monomial_substitution() {
        let f = Laurent::parse("y2 + 1", &Vars::indexed("y", 2)).unwrap();
        let images = vec![vec![0, -1, 1, 0], vec![1, 0, 0, 1]];
        assert_eq!(f.substitute_monomials(&images, 4), p("y2*x1 + 1"));
        let y1 = Laurent::parse("y1", &Vars::indexed("y", 2)).unwrap();
        assert_eq!(y1.substitute_monomials(&images, 4), p("y1*x2^-1"));
    }

    #[test]
    fn fraction_text() {
        let v = Vars::principal(2);
        assert_eq!(p("(x1*y1*y2 + y1 + x2)/(x1*x2)").to_fraction_text(&v), "(x1*y1*y2 + x2 + y1) / (x1*x2)");
        assert_eq!(p("y1^-1").to_fraction_text(&v), "1 / y1");
        assert_eq!(p("x1*y2 + 1").to_fraction_text(&v), "x1*y2 + 1");
    }

    #[test]
    fn json_round_trip() {
        let x = p("(x1*y1*y2 - 7*y1 + x2)/(x1*x2)");
        assert_eq!(Laurent::from_json(&x.to_json(), 4).unwrap(), x);
    }
}
