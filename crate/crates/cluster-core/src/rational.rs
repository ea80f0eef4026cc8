//! Rational functions as numerator/denominator pairs of Laurent polynomials.
//!
//! There is no multivariate gcd. Normalization only strips monomial and
//! integer content and tries exact division, either of the whole numerator
//! by the denominator or by polynomials recorded as known factors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::laurent::{neg_exps, Laurent, Vars};

#[derive(Clone, Debug)]
pub struct RationalExpr {
    num: Laurent,
    den: Laurent,
    hints: Vec<Laurent>,
}

impl RationalExpr {
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        Self::with_hints(num, den, Vec::new())
    }

    pub fn with_hints(num: Laurent, den: Laurent, hints: Vec<Laurent>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        assert_eq!(num.nvars(), den.nvars(), "variable count mismatch");
        let mut r = RationalExpr { num, den, hints };
        r.normalize();
        Ok(r)
    }

    pub fn from_laurent(p: Laurent) -> Self {
        let n = p.nvars();
        RationalExpr { num: p, den: Laurent::one(n), hints: Vec::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_laurent(Laurent::one(nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_laurent(Laurent::var(nvars, i))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn hints(&self) -> &[Laurent] {
        &self.hints
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Record a known polynomial factor for later trial divisions.
    pub fn add_hint(&mut self, h: Laurent) {
        if h.num_terms() > 1 && !self.hints.contains(&h) {
            self.hints.push(h);
        }
        self.normalize();
    }

    /// The Laurent polynomial this expression equals, if its reduced
    /// denominator is a monomial.
    pub fn to_laurent(&self) -> Option<Laurent> {
        if let Some((e, c)) = self.den.as_monomial() {
            let shifted = self.num.mul_monomial(&neg_exps(e));
            return if c.is_one() {
                Some(shifted)
            } else {
                shifted.exact_div(&Laurent::constant(self.nvars(), c.clone())).ok()
            };
        }
        self.num.exact_div(&self.den).ok()
    }

    fn normalize(&mut self) {
        let n = self.nvars();
        if self.num.is_zero() {
            self.den = Laurent::one(n);
            return;
        }
        if self.den.as_monomial().is_none() {
            if let Ok(q) = self.num.exact_div(&self.den) {
                self.num = q;
                self.den = Laurent::one(n);
            }
        }
        for h in self.hints.clone() {
            loop {
                if self.den.num_terms() <= 1 {
                    break;
                }
                match (self.num.exact_div(&h), self.den.exact_div(&h)) {
                    (Ok(a), Ok(b)) => {
                        self.num = a;
                        self.den = b;
                    }
                    _ => break,
                }
            }
        }
        // Move the monomial part of the denominator into the numerator.
        let dmin = self.den.min_exponents().expect("nonzero");
        if dmin.iter().any(|&e| e != 0) {
            let shift = neg_exps(&dmin);
            self.den = self.den.mul_monomial(&shift);
            self.num = self.num.mul_monomial(&shift);
        }
        let g = self.num.content().gcd(&self.den.content());
        let sign_neg = self
            .den
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        let mut k = g;
        if sign_neg {
            k = -k;
        }
        if !k.is_one() {
            let exact = |p: &Laurent| {
                Laurent::from_terms(
                    p.nvars(),
                    p.terms().map(|(e, c)| (e.clone(), c / &k)),
                )
            };
            self.num = exact(&self.num);
            self.den = exact(&self.den);
        }
    }

    pub fn mul(&self, other: &RationalExpr) -> RationalExpr {
        let mut hints = self.hints.clone();
        for h in &other.hints {
            if !hints.contains(h) {
                hints.push(h.clone());
            }
        }
        RationalExpr::with_hints(&self.num * &other.num, &self.den * &other.den, hints)
            .expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<RationalExpr> {
        if self.num.is_zero() {
            return Err(Error::DivisionByAbsorbing);
        }
        RationalExpr::with_hints(self.den.clone(), self.num.clone(), self.hints.clone())
    }

    pub fn div(&self, other: &RationalExpr) -> Result<RationalExpr> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn add(&self, other: &RationalExpr) -> RationalExpr {
        let mut hints = self.hints.clone();
        for h in &other.hints {
            if !hints.contains(h) {
                hints.push(h.clone());
            }
        }
        if self.den == other.den {
            return RationalExpr::with_hints(&self.num + &other.num, self.den.clone(), hints)
                .expect("nonzero");
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalExpr::with_hints(num, den, hints).expect("nonzero")
    }

    pub fn neg(&self) -> RationalExpr {
        RationalExpr { num: -&self.num, den: self.den.clone(), hints: self.hints.clone() }
    }

    pub fn sub(&self, other: &RationalExpr) -> RationalExpr {
        self.add(&other.neg())
    }

    pub fn pow(&self, k: i64) -> Result<RationalExpr> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let k = k.unsigned_abs() as u32;
        Ok(RationalExpr {
            num: base.num.pow(k),
            den: base.den.pow(k),
            hints: base.hints,
        })
    }

    /// Substitute each variable by a rational expression in a common ring.
    pub fn substitute(&self, images: &[RationalExpr]) -> Result<RationalExpr> {
        let n = substitute_laurent(&self.num, images)?;
        let d = substitute_laurent(&self.den, images)?;
        n.div(&d)
    }

    /// Move into a ring with other variables; see [`Laurent::reindex`].
    pub fn reindex(&self, new_nvars: usize, map: &[Option<usize>]) -> Result<RationalExpr> {
        RationalExpr::with_hints(
            self.num.reindex(new_nvars, map),
            self.den.reindex(new_nvars, map),
            self.hints.iter().map(|h| h.reindex(new_nvars, map)).collect(),
        )
    }

    /// `num / den` text; just the numerator when the denominator is 1.
    pub fn to_text(&self, vars: &Vars) -> String {
        if let Some((e, c)) = self.den.as_monomial() {
            if c.is_one() {
                return self.num.mul_monomial(&neg_exps(e)).to_fraction_text(vars);
            }
        }
        let wrap = |p: &Laurent| {
            let t = p.to_fraction_text(vars);
            if p.num_terms() > 1 || t.contains(" / ") {
                format!("({t})")
            } else {
                t
            }
        };
        format!("{} / {}", wrap(&self.num), wrap(&self.den))
    }
}

/// Value of a Laurent polynomial at rational arguments. Negative powers are
/// handled by clearing denominators variable by variable.
pub fn substitute_laurent(p: &Laurent, images: &[RationalExpr]) -> Result<RationalExpr> {
    assert_eq!(p.nvars(), images.len(), "one image per variable");
    let target = images.first().map(|r| r.nvars()).unwrap_or(0);
    if p.is_zero() {
        return Ok(RationalExpr::from_laurent(Laurent::zero(target)));
    }
    let lo = p.min_exponents().expect("nonzero");
    let hi = p.max_exponents().expect("nonzero");
    // Multiply every term by prod_i den_i^{hi_i} num_i^{-lo_i} (clamped at 0)
    // so all powers become nonnegative.
    let mut total = Laurent::zero(target);
    for (e, c) in p.terms() {
        let mut t = Laurent::constant(target, c.clone());
        for (i, &ei) in e.iter().enumerate() {
            let h = hi[i].max(0);
            let l = lo[i].min(0);
            // num^{ei - l} * den^{h - ei}
            let np = (ei - l) as u32;
            let dp = (h - ei) as u32;
            if np > 0 {
                t = &t * &images[i].num.pow(np);
            }
            if dp > 0 {
                t = &t * &images[i].den.pow(dp);
            }
        }
        total = &total + &t;
    }
    let mut den = Laurent::one(target);
    let mut hints = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let h = hi[i].max(0) as u32;
        let l = (-lo[i].min(0)) as u32;
        if h > 0 {
            den = &den * &img.den.pow(h);
        }
        if l > 0 {
            den = &den * &img.num.pow(l);
        }
        for hint in img.hints.iter().chain([&img.num, &img.den]) {
            if hint.num_terms() > 1 && !hints.contains(hint) {
                hints.push(hint.clone());
            }
        }
    }
    RationalExpr::with_hints(total, den, hints)
}

impl PartialEq for RationalExpr {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Display for RationalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&Vars::indexed("v", self.nvars())))
    }
}

/// Integer content helper used by callers that build expressions by hand.
pub fn constant(nvars: usize, c: impl Into<BigInt>) -> RationalExpr {
    let c = c.into();
    if c.is_zero() {
        return RationalExpr::from_laurent(Laurent::zero(nvars));
    }
    RationalExpr::from_laurent(Laurent::constant(nvars, c))
}
