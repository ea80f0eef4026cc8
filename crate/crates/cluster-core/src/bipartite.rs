//! Bipartite belts, generalized Y-systems and the root-lattice dynamics of
//! `t±`, `τ±` and `E`.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exchange_graph::cartan_positive_definite;
use crate::laurent::{Exponents, Laurent, Vars};
use crate::matrix::{pos, IntMatrix};
use crate::mutation::{
    bipartite_exchange, bipartite_sign, cartan_counterpart, coxeter_graph_sign, ExchangeMatrix,
    ExtendedMatrix, GeometricSeed,
};
use crate::principal::{homogeneous_degree, specialize_x};
use crate::rational::RationalExpr;
use crate::semifield::{Semifield, Universal};

pub const DEFAULT_COXETER_CAP: usize = 1000;

/// `(-1)^m` as a sign.
pub fn parity_sign(m: i64) -> i64 {
    if m.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Simple reflection `s_i(α_j) = α_j - a_ij α_i`, as a matrix acting on
/// coordinate columns.
pub fn simple_reflection(a: &IntMatrix, i: usize) -> IntMatrix {
    let n = a.rows();
    let mut s = IntMatrix::identity(n);
    for j in 0..n {
        s[(i, j)] -= a[(i, j)];
    }
    s
}

#[derive(Clone, Debug, Serialize)]
pub struct CoxeterData {
    pub a: IntMatrix,
    pub eps: Vec<i64>,
    pub t_plus: IntMatrix,
    pub t_minus: IntMatrix,
    /// Order of `t₊t₋`, or `None` when it exceeds the cap.
    pub h: Option<usize>,
    pub finite_type: bool,
}

/// `t±`, the Coxeter number and the finite-type test, with the sign function
/// of [`coxeter_graph_sign`].
pub fn coxeter_data(a: &IntMatrix, cap: usize) -> Result<CoxeterData> {
    let eps = coxeter_graph_sign(a).ok_or_else(|| Error::NotBipartite("Coxeter graph has an odd cycle".into()))?;
    coxeter_data_with_sign(a, &eps, cap)
}

pub fn coxeter_data_with_sign(a: &IntMatrix, eps: &[i64], cap: usize) -> Result<CoxeterData> {
    let n = a.rows();
    if !a.is_square() || eps.len() != n {
        return Err(Error::InvalidInput("Cartan matrix and sign function disagree in size".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && a[(i, j)] != 0 && eps[i] == eps[j] {
                return Err(Error::NotBipartite(format!("{} and {} share a sign", i + 1, j + 1)));
            }
        }
    }
    let product = |sign: i64| {
        (0..n)
            .filter(|&k| eps[k] == sign)
            .fold(IntMatrix::identity(n), |acc, k| acc.mul(&simple_reflection(a, k)))
    };
    let t_plus = product(1);
    let t_minus = product(-1);
    let c = t_plus.mul(&t_minus);
    let id = IntMatrix::identity(n);
    let mut p = c.clone();
    let mut h = None;
    for r in 1..=cap {
        if p == id {
            h = Some(r);
            break;
        }
        // A matrix of finite order has bounded powers, so overflow means
        // infinite order.
        match p.checked_mul(&c) {
            Some(next) => p = next,
            None => break,
        }
    }
    let finite_type = cartan_positive_definite(a)?;
    if finite_type != h.is_some() {
        return Err(Error::CrossCheckFailure(format!(
            "positive definiteness {finite_type} but Coxeter order {h:?}"
        )));
    }
    Ok(CoxeterData { a: a.clone(), eps: eps.to_vec(), t_plus, t_minus, h, finite_type })
}

fn neg_simple(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = -1;
    v
}

impl CoxeterData {
    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn t(&self, sign: i64) -> &IntMatrix {
        if sign > 0 {
            &self.t_plus
        } else {
            &self.t_minus
        }
    }

    /// `τ_ε` on almost positive real roots: fixes `-α_j` with `ε(j) = -ε`,
    /// acts as `t_ε` otherwise.
    pub fn tau(&self, sign: i64, v: &[i64]) -> Vec<i64> {
        let neg: Vec<usize> = (0..v.len()).filter(|&j| v[j] != 0).collect();
        if neg.len() == 1 && v[neg[0]] == -1 && self.eps[neg[0]] == -sign {
            return v.to_vec();
        }
        self.t(sign).mul_vec(v)
    }

    /// The piecewise-linear extension of `τ_ε` to the whole root lattice.
    pub fn tau_pl(&self, sign: i64, v: &[i64]) -> Vec<i64> {
        let n = self.n();
        (0..n)
            .map(|i| {
                if self.eps[i] == sign {
                    -v[i] - (0..n).filter(|&j| j != i).map(|j| self.a[(i, j)] * pos(v[j])).sum::<i64>()
                } else {
                    v[i]
                }
            })
            .collect()
    }

    /// `E(α_i) = -ε(i) α_i`.
    pub fn e_map(&self, v: &[i64]) -> Vec<i64> {
        v.iter().zip(&self.eps).map(|(c, e)| -e * c).collect()
    }

    /// Signs of the word defining the orbit vector at `(i, m)`, in the order
    /// they are applied (rightmost factor first).
    fn word(&self, i: usize, m: i64) -> Result<Vec<i64>> {
        if self.eps[i] != parity_sign(m) {
            return Err(Error::InvalidInput(format!("ε({}) ≠ (-1)^{m}", i + 1)));
        }
        // For m = r ≥ 0 the word is t₋t₊… (r factors); for m = -r-1 it is
        // t₊t₋… (r factors). Position k (from the left) has sign
        // leading·(-1)^k.
        let (r, leading) = if m >= 0 { (m as usize, -1) } else { ((-m - 1) as usize, 1) };
        Ok((0..r).rev().map(|k| leading * parity_sign(k as i64)).collect())
    }

    /// `α(i;m)` for `ε(i) = (-1)^m` (0-based `i`).
    pub fn alpha(&self, i: usize, m: i64) -> Result<Vec<i64>> {
        let mut v = neg_simple(self.n(), i);
        for s in self.word(i, m)? {
            v = self.t(s).mul_vec(&v);
        }
        Ok(v)
    }

    /// `d(i;m)` for `ε(i) = (-1)^m`, by the `τ` words. Each step is also
    /// taken by the piecewise-linear formula and the two must agree.
    pub fn d(&self, i: usize, m: i64) -> Result<Vec<i64>> {
        let mut v = neg_simple(self.n(), i);
        for s in self.word(i, m)? {
            let next = self.tau(s, &v);
            if self.tau_pl(s, &v) != next {
                return Err(Error::CrossCheckFailure(format!("τ and its piecewise-linear form differ at {v:?}")));
            }
            v = next;
        }
        Ok(v)
    }

    /// Denominator vector of `x_{i;m}` for any `i`: by parity, `x_{i;m}` equals
    /// `x_{i;m-1}` when `ε(i) ≠ (-1)^m`.
    pub fn d_any(&self, i: usize, m: i64) -> Result<Vec<i64>> {
        if self.eps[i] == parity_sign(m) {
            self.d(i, m)
        } else {
            self.d(i, m - 1)
        }
    }

    /// `g = E τ₋ d`.
    pub fn g_from_d(&self, d: &[i64]) -> Vec<i64> {
        self.e_map(&self.tau_pl(-1, d))
    }

    /// Rows `(m, i, α(i;m), d(i;m))` for `m` in `lo..=hi` and `ε(i) = (-1)^m`.
    pub fn orbit_vectors(&self, lo: i64, hi: i64) -> Result<Vec<OrbitRow>> {
        let mut rows = Vec::new();
        for m in lo..=hi {
            for i in 0..self.n() {
                if self.eps[i] == parity_sign(m) {
                    rows.push(OrbitRow { m, i: i + 1, alpha: self.alpha(i, m)?, d: self.d(i, m)? });
                }
            }
        }
        Ok(rows)
    }

    /// The involution `i ↦ i*` read off from `α(i;-h-2) = -α_{i*}`, checked
    /// against `α(j;h+1) = -α_{j*}`.
    pub fn w0_involution(&self) -> Result<Vec<usize>> {
        let h = self.h.ok_or_else(|| Error::NotFiniteType("no Coxeter number".into()))? as i64;
        let n = self.n();
        let mut star = vec![usize::MAX; n];
        let as_neg_simple = |v: &[i64]| -> Option<usize> {
            let nz: Vec<usize> = (0..v.len()).filter(|&k| v[k] != 0).collect();
            (nz.len() == 1 && v[nz[0]] == -1).then(|| nz[0])
        };
        for i in 0..n {
            let m = if self.eps[i] == parity_sign(h) { -h - 2 } else { h + 1 };
            let v = self.alpha(i, m)?;
            star[i] = as_neg_simple(&v)
                .ok_or_else(|| Error::CrossCheckFailure(format!("α({};{m}) = {v:?} is not a negative simple root", i + 1)))?;
        }
        if (0..n).any(|i| star[star[i]] != i) {
            return Err(Error::CrossCheckFailure(format!("{star:?} is not an involution")));
        }
        Ok(star)
    }

    /// The positive roots as `α(i;m)` for `m ∈ [1, h]`. Every `α(i;m)` with
    /// `m ∈ [-h-1, h] \ {-1, 0}` must be positive, and each of the halves
    /// `[1, h]` and `[-h-1, -2]` must list distinct roots, the same set.
    pub fn positive_roots(&self) -> Result<Vec<Vec<i64>>> {
        let h = self.h.ok_or_else(|| Error::NotFiniteType("no Coxeter number".into()))? as i64;
        let half = |lo: i64, hi: i64| -> Result<Vec<Vec<i64>>> {
            let mut out = Vec::new();
            let mut seen = HashSet::new();
            for row in self.orbit_vectors(lo, hi)? {
                if !is_positive(&row.alpha) || !seen.insert(row.alpha.clone()) {
                    return Err(Error::CrossCheckFailure(format!("α({};{}) = {:?}", row.i, row.m, row.alpha)));
                }
                out.push(row.alpha);
            }
            Ok(out)
        };
        let upper = half(1, h)?;
        let lower = half(-h - 1, -2)?;
        let a: HashSet<&Vec<i64>> = upper.iter().collect();
        let b: HashSet<&Vec<i64>> = lower.iter().collect();
        if a != b || 2 * upper.len() != self.n() * h as usize {
            return Err(Error::CrossCheckFailure("the two halves of the orbit disagree".into()));
        }
        Ok(upper)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub m: i64,
    /// 1-based index.
    pub i: usize,
    pub alpha: Vec<i64>,
    pub d: Vec<i64>,
}

pub fn is_positive(v: &[i64]) -> bool {
    v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
}

/// Directions from `Σ₀` to `Σ_m`: `Σ₁ = μ₋(Σ₀)`, `Σ₋₁ = μ₊(Σ₀)`, alternating.
pub fn belt_path(eps: &[i64], m: i64) -> Vec<usize> {
    let block = |s: i64| (1..=eps.len()).filter(move |&k| eps[k - 1] == s);
    let mut p = Vec::new();
    for step in 0..m.unsigned_abs() {
        // Moving up from an even index applies μ₋; moving down applies μ₊.
        let from = if m > 0 { step as i64 } else { -(step as i64) };
        let s = if m > 0 { -parity_sign(from) } else { parity_sign(from) };
        p.extend(block(s));
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BeltCoefficients {
    Principal,
    Trivial,
}

/// Seeds `Σ_m` for `m` in `lo..=hi` with their checks already run.
#[derive(Clone, Debug)]
pub struct BeltState {
    pub b: ExchangeMatrix,
    pub coxeter: CoxeterData,
    pub coeffs: BeltCoefficients,
    pub lo: i64,
    pub seeds: Vec<GeometricSeed>,
}

impl BeltState {
    pub fn hi(&self) -> i64 {
        self.lo + self.seeds.len() as i64 - 1
    }

    pub fn n(&self) -> usize {
        self.b.n()
    }

    pub fn eps(&self) -> &[i64] {
        &self.coxeter.eps
    }

    pub fn seed(&self, m: i64) -> Result<&GeometricSeed> {
        if m < self.lo || m > self.hi() {
            return Err(Error::InvalidInput(format!("m = {m} outside the walked range")));
        }
        Ok(&self.seeds[(m - self.lo) as usize])
    }

    /// `x_{i;m}` with 0-based `i`.
    pub fn x(&self, i: usize, m: i64) -> Result<&Laurent> {
        Ok(&self.seed(m)?.x[i])
    }

    pub fn vars(&self) -> Vars {
        match self.coeffs {
            BeltCoefficients::Principal => Vars::principal(self.n()),
            BeltCoefficients::Trivial => Vars::indexed("x", self.n()),
        }
    }

    /// The cluster variables `x_{i;m}` with `ε(i) = (-1)^m`, as `(m, i)`.
    pub fn family(&self) -> Vec<(i64, usize)> {
        (self.lo..=self.hi())
            .flat_map(|m| (0..self.n()).filter(move |&i| self.eps()[i] == parity_sign(m)).map(move |i| (m, i)))
            .collect()
    }
}

fn apply_block(seed: &GeometricSeed, eps: &[i64], sign: i64) -> Result<GeometricSeed> {
    let mut s = seed.clone();
    for k in 1..=eps.len() {
        if eps[k - 1] == sign {
            s = s.mutate(k)?;
        }
    }
    Ok(s)
}

fn ambient_monomial(n: usize, y: &[i64]) -> Laurent {
    let mut e = vec![0; 2 * n];
    for (k, &v) in y.iter().enumerate() {
        e[n + k] = v as i32;
    }
    Laurent::monomial(e, 1)
}

/// Walk the belt through the initial seed of a bipartite `B` over `lo..=hi`
/// (`lo ≤ 0 ≤ hi`). Parity relations are always checked; with principal
/// coefficients the tropical coefficients and the explicit exchange
/// relations are checked against `d(j;m)` as well.
pub fn belt_walk(b: &ExchangeMatrix, coeffs: BeltCoefficients, lo: i64, hi: i64) -> Result<BeltState> {
    let eps = bipartite_sign(b).ok_or_else(|| Error::NotBipartite("exchange matrix is not bipartite".into()))?;
    belt_walk_with_sign(b, &eps, coeffs, lo, hi)
}

/// Belt for an explicit sign; needed when B has isolated indices.
fn belt_walk_with_sign(b: &ExchangeMatrix, eps: &[i64], coeffs: BeltCoefficients, lo: i64, hi: i64) -> Result<BeltState> {
    if lo > 0 || hi < 0 {
        return Err(Error::InvalidInput("the range must contain 0".into()));
    }
    let n = b.n();
    let consistent = (0..n).all(|i| (0..n).all(|j| b.get(i, j) == 0 || b.get(i, j).signum() == eps[i]));
    if eps.len() != n || !consistent {
        return Err(Error::NotBipartite("sign does not match the exchange matrix".into()));
    }
    let eps = eps.to_vec();
    let coxeter = coxeter_data_with_sign(&cartan_counterpart(b), &eps, DEFAULT_COXETER_CAP)?;
    let bt = match coeffs {
        BeltCoefficients::Principal => b.principal_extension(),
        BeltCoefficients::Trivial => ExtendedMatrix::new(b.matrix().clone())?,
    };
    let s0 = GeometricSeed::initial(bt);
    let mut up = vec![s0.clone()];
    for m in 0..hi {
        let next = apply_block(up.last().expect("nonempty"), &eps, -parity_sign(m))?;
        up.push(next);
    }
    let mut down = vec![s0];
    for m in (lo + 1..=0).rev() {
        let next = apply_block(down.last().expect("nonempty"), &eps, parity_sign(m))?;
        down.push(next);
    }
    down.reverse();
    down.pop();
    down.extend(up);
    let belt = BeltState { b: b.clone(), coxeter, coeffs, lo, seeds: down };

    for m in lo..=hi {
        let s = belt.seed(m)?;
        let want = if parity_sign(m) == 1 { b.clone() } else { b.neg() };
        if s.btilde.principal() != want {
            return Err(Error::CrossCheckFailure(format!("B at m = {m} is not (-1)^m B")));
        }
        if m < hi {
            let t = belt.seed(m + 1)?;
            for i in 0..n {
                if eps[i] == parity_sign(m) && s.x[i] != t.x[i] {
                    return Err(Error::CrossCheckFailure(format!("x_{{{};{m}}} ≠ x_{{{};{}}}", i + 1, i + 1, m + 1)));
                }
            }
        }
    }
    if coeffs == BeltCoefficients::Principal {
        check_principal_belt(&belt)?;
    }
    Ok(belt)
}

fn check_principal_belt(belt: &BeltState) -> Result<()> {
    let n = belt.n();
    let eps = belt.eps();
    let cx = &belt.coxeter;
    for m in belt.lo..=belt.hi() {
        let s = belt.seed(m)?;
        for j in 0..n {
            let c = s.btilde.coefficient_column(j);
            if eps[j] == parity_sign(m - 1) {
                let d = cx.d(j, m - 1)?;
                let neg: Vec<i64> = d.iter().map(|x| -x).collect();
                if c != neg {
                    return Err(Error::CrossCheckFailure(format!(
                        "tropical y_{{{};{m}}} = {c:?}, expected {neg:?}",
                        j + 1
                    )));
                }
            }
        }
        if m > belt.lo && m < belt.hi() {
            for j in 0..n {
                if eps[j] != parity_sign(m - 1) {
                    continue;
                }
                let d = cx.d(j, m - 1)?;
                let neg: Vec<i64> = d.iter().map(|&x| pos(-x)).collect();
                let posd: Vec<i64> = d.iter().map(|&x| pos(x)).collect();
                let mut prod = ambient_monomial(n, &neg);
                for i in 0..n {
                    if eps[i] == -eps[j] && cx.a[(i, j)] != 0 {
                        prod = &prod * &s.x[i].pow((-cx.a[(i, j)]) as u32);
                    }
                }
                let rhs = &prod + &ambient_monomial(n, &posd);
                let lhs = belt.x(j, m - 1)? * belt.x(j, m + 1)?;
                if lhs != rhs {
                    return Err(Error::CrossCheckFailure(format!("belt exchange relation fails at j = {}, m = {m}", j + 1)));
                }
            }
        }
    }
    Ok(())
}

/// Initial data convention of a Y-system.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum YConvention {
    /// `u_i = y_{i;-1}` (`ε(i) = 1`) or `y_{i;0}` (`ε(i) = -1`).
    U,
    /// `y_i = y_{i;0}`.
    Y,
}

#[derive(Clone, Debug, PartialEq)]
pub struct YEntry<V> {
    pub m: i64,
    /// 1-based index.
    pub j: usize,
    pub value: V,
}

/// Convert between the two initial conventions: `u_i = y_i^{-1}` when
/// `ε(i) = 1`, `u_i = y_i` otherwise (the map is an involution).
pub fn convert_initial<S: Semifield>(eps: &[i64], sf: &S, values: &[S::Value]) -> Vec<S::Value> {
    values
        .iter()
        .zip(eps)
        .map(|(v, &e)| if e == 1 { sf.inv(v) } else { v.clone() })
        .collect()
}

/// Iterate `y_{i;m-1} y_{i;m+1} = ∏_{ε(j) = -ε(i)} (y_{j;m} ⊕ 1)^{-a_ji}` from
/// the initial data. Returns the family `y_{j;m}` with `ε(j) = (-1)^{m-1}`
/// for `m` in `-1..=steps`.
pub fn y_system_solve<S: Semifield>(
    a: &IntMatrix,
    eps: &[i64],
    sf: &S,
    initial: &[S::Value],
    conv: YConvention,
    steps: usize,
) -> Result<Vec<YEntry<S::Value>>> {
    let n = a.rows();
    if initial.len() != n || eps.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} initial values")));
    }
    let u = match conv {
        YConvention::U => initial.to_vec(),
        YConvention::Y => convert_initial(eps, sf, initial),
    };
    let mut val: HashMap<(usize, i64), S::Value> = HashMap::new();
    let mut out = Vec::new();
    for (i, v) in u.into_iter().enumerate() {
        let m = if eps[i] == 1 { -1 } else { 0 };
        val.insert((i, m), v.clone());
        out.push(YEntry { m, j: i + 1, value: v });
    }
    out.sort_by_key(|e| (e.m, e.j));
    for m in 0..steps as i64 {
        for i in 0..n {
            if eps[i] != parity_sign(m) {
                continue;
            }
            let mut num = sf.one();
            for j in 0..n {
                if eps[j] == -eps[i] && a[(j, i)] != 0 {
                    let t = sf.oplus(&val[&(j, m)], &sf.one());
                    num = sf.mul(&num, &sf.pow(&t, -a[(j, i)]));
                }
            }
            let v = sf.div(&num, &val[&(i, m - 1)]);
            val.insert((i, m + 1), v.clone());
            out.push(YEntry { m: m + 1, j: i + 1, value: v });
        }
    }
    Ok(out)
}

/// A Y-system value in factored form `y^trop ∏ F_i^{f_exps_i}` together with
/// its Laurent expansions in the `y` and the `u` initial data.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredYValue {
    pub m: i64,
    pub j: usize,
    pub trop: Vec<i64>,
    pub f_exps: Vec<i64>,
    pub laurent_y: Laurent,
    pub laurent_u: Laurent,
}

/// Solve the Y-system of a bipartite `B` in the universal semifield through
/// the principal belt: `y_{j;m} = y^{c_j} ∏ F_{i;m}^{b_ij}` with `B_m = (-1)^m B`.
/// All exponents are nonnegative on the family, so each value expands to a
/// Laurent polynomial; a negative exponent is reported as a failure.
pub fn y_system_universal(b: &ExchangeMatrix, steps: usize) -> Result<Vec<FactoredYValue>> {
    let belt = belt_walk(b, BeltCoefficients::Principal, -1, steps as i64)?;
    let n = b.n();
    let eps = belt.eps().to_vec();
    let to_u: Vec<Exponents> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = if eps[i] == 1 { -1 } else { 1 };
            e
        })
        .collect();
    let mut out = Vec::new();
    for m in -1..=steps as i64 {
        let s = belt.seed(m)?;
        let f: Vec<Laurent> = s.x.iter().map(|x| specialize_x(x, n)).collect();
        for j in 0..n {
            if eps[j] != parity_sign(m - 1) {
                continue;
            }
            let trop = s.btilde.coefficient_column(j);
            let f_exps: Vec<i64> = (0..n).map(|i| s.btilde.get(i, j)).collect();
            if f_exps.iter().any(|&e| e < 0) {
                return Err(Error::CrossCheckFailure(format!("negative F-exponent at y_{{{};{m}}}", j + 1)));
            }
            let mut p = Laurent::monomial(trop.iter().map(|&e| e as i32).collect(), 1);
            for i in 0..n {
                if f_exps[i] > 0 {
                    p = &p * &f[i].pow(f_exps[i] as u32);
                }
            }
            let laurent_u = p.substitute_monomials(&to_u, n);
            out.push(FactoredYValue { m, j: j + 1, trop, f_exps, laurent_y: p, laurent_u });
        }
    }
    Ok(out)
}

/// Compare the factored solution with the direct recurrence in the
/// universal semifield on `u`-generators, for the first `steps` steps.
pub fn y_system_cross_check(b: &ExchangeMatrix, steps: usize) -> Result<()> {
    let eps = bipartite_sign(b).ok_or_else(|| Error::NotBipartite("exchange matrix is not bipartite".into()))?;
    let n = b.n();
    let a = cartan_counterpart(b);
    let sf = Universal::new(Vars::indexed("u", n));
    let init: Vec<_> = (0..n).map(|i| sf.generator(i)).collect();
    let direct = y_system_solve(&a, &eps, &sf, &init, YConvention::U, steps)?;
    let factored = y_system_universal(b, steps)?;
    for e in &direct {
        let f = factored
            .iter()
            .find(|v| v.m == e.m && v.j == e.j)
            .ok_or_else(|| Error::CrossCheckFailure(format!("missing y_{{{};{}}}", e.j, e.m)))?;
        if RationalExpr::from_laurent(f.laurent_u.clone()) != sf.to_rational(&e.value) {
            return Err(Error::CrossCheckFailure(format!("y_{{{};{}}} differs between the two routes", e.j, e.m)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Periodicity {
    Period(usize),
    NoPeriodUpTo(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PeriodMode {
    Seeds,
    YSystem,
}

/// Periodicity of the belt of the bipartite matrix with Cartan counterpart
/// `a` (sign function from the Coxeter graph). Finite type: the least period
/// of labeled seeds (or Y-values), checked to divide `2(h+2)`, and the
/// shifted belt is compared over a further full period. Infinite type: the
/// tracked family is checked pairwise distinct over `0..=cap`.
pub fn periodicity_check(a: &IntMatrix, mode: PeriodMode, cap: usize) -> Result<Periodicity> {
    let cx = coxeter_data(a, DEFAULT_COXETER_CAP)?;
    let b = bipartite_exchange(a, &cx.eps)?;
    let n = b.n();
    let eps = cx.eps.clone();
    match cx.h {
        Some(h) => {
            let bound = 2 * (h + 2);
            let p = match mode {
                PeriodMode::Seeds => {
                    let belt = belt_walk(&b, BeltCoefficients::Principal, 0, 2 * bound as i64)?;
                    let shifts_by = |p: usize| -> Result<bool> {
                        for m in 0..=bound as i64 {
                            if belt.seed(m)? != belt.seed(m + p as i64)? {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    };
                    let mut found = None;
                    for p in 1..=bound {
                        if shifts_by(p)? {
                            found = Some(p);
                            break;
                        }
                    }
                    let p = found.ok_or_else(|| Error::CrossCheckFailure(format!("no period up to {bound}")))?;
                    p
                }
                PeriodMode::YSystem => {
                    let vals = y_system_universal(&b, 2 * bound + 1)?;
                    let at: HashMap<(i64, usize), &Laurent> = vals.iter().map(|v| ((v.m, v.j), &v.laurent_y)).collect();
                    let agrees = |p: i64, upto: i64| {
                        (-1..=upto).all(|m| {
                            (1..=n).all(|j| match (at.get(&(m, j)), at.get(&(m + p, j))) {
                                (Some(x), Some(y)) => x == y,
                                _ => true,
                            })
                        })
                    };
                    // Family members at m and m + p share a parity only for even p.
                    let p = (2..=bound as i64)
                        .step_by(2)
                        .find(|&p| agrees(p, bound as i64))
                        .ok_or_else(|| Error::CrossCheckFailure(format!("no period up to {bound}")))?;
                    p as usize
                }
            };
            if bound % p != 0 {
                return Err(Error::CrossCheckFailure(format!("period {p} does not divide {bound}")));
            }
            Ok(Periodicity::Period(p))
        }
        None => {
            let texts: Vec<String> = match mode {
                PeriodMode::Seeds => {
                    let belt = belt_walk(&b, BeltCoefficients::Trivial, 0, cap as i64)?;
                    let vars = belt.vars();
                    belt.family().into_iter().map(|(m, i)| belt.x(i, m).map(|x| x.to_text(&vars))).collect::<Result<_>>()?
                }
                PeriodMode::YSystem => {
                    let y = Vars::indexed("y", n);
                    y_system_universal(&b, cap)?.iter().map(|v| v.laurent_y.to_text(&y)).collect()
                }
            };
            let distinct: HashSet<&String> = texts.iter().collect();
            if distinct.len() != texts.len() {
                return Err(Error::CrossCheckFailure("repeated element in an infinite-type belt".into()));
            }
            let _ = eps;
            Ok(Periodicity::NoPeriodUpTo(cap))
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BeltReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl BeltReport {
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }
}

/// Monomial exponent vectors used to test cluster monomials.
fn sample_exponents(n: usize) -> Vec<Vec<u32>> {
    if n <= 3 {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out.into_iter().flat_map(|v: Vec<u32>| (0..3).map(move |k| [v.clone(), vec![k]].concat())).collect();
        }
        out.retain(|v| v.iter().any(|&k| k > 0));
        out
    } else {
        let mut out: Vec<Vec<u32>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u32).collect()).collect();
        out.push(vec![1; n]);
        out.push((0..n).map(|i| (i % 3) as u32).collect());
        out
    }
}

/// Check the denominator and g-vector formulas over the principal belt of a
/// bipartite `B` on `lo..=hi`.
pub fn belt_verify(b: &ExchangeMatrix, lo: i64, hi: i64) -> Result<BeltReport> {
    let belt = belt_walk(b, BeltCoefficients::Principal, lo, hi)?;
    let n = b.n();
    let cx = &belt.coxeter;
    let eps = belt.eps().to_vec();
    let mut r = BeltReport::default();

    for (m, i) in belt.family() {
        let x = belt.x(i, m)?;
        let d = x.denominator_vector(n)?;
        let dm = cx.d(i, m)?;
        r.record(d == dm, || format!("d(x_{{{};{m}}}) = {d:?}, d({};{m}) = {dm:?}", i + 1, i + 1));
        let g = homogeneous_degree(b, x)?;
        let gm = cx.g_from_d(&dm);
        r.record(g == gm, || format!("g(x_{{{};{m}}}) = {g:?}, Eτ₋d = {gm:?}", i + 1));
        // Numerator x^d · x has a term free of x1..xn.
        let p = x.mul_monomial(&dm.iter().map(|&v| v as i32).chain(std::iter::repeat(0).take(n)).collect::<Vec<_>>());
        let has_const = p.terms().any(|(e, _)| e[..n].iter().all(|&v| v == 0));
        r.record(has_const, || format!("numerator of x_{{{};{m}}} has zero constant term", i + 1));
        // Denominator recurrence.
        if cx.eps[i] == parity_sign(m) {
            let a = &cx.a;
            let mut s = vec![0i64; n];
            for k in 0..n {
                if eps[k] == -eps[i] {
                    let dk = cx.d(k, m + 1)?;
                    for c in 0..n {
                        s[c] -= a[(k, i)] * dk[c];
                    }
                }
            }
            let lhs: Vec<i64> = cx.d(i, m)?.iter().zip(cx.d(i, m + 2)?).map(|(p, q)| p + q).collect();
            let rhs: Vec<i64> = s.iter().map(|&v| pos(v)).collect();
            r.record(lhs == rhs, || format!("denominator recurrence at ({}, {})", i + 1, m + 1));
        }
    }

    for m in belt.lo..=belt.hi() {
        let seed = belt.seed(m)?;
        let ds: Vec<Vec<i64>> = (0..n).map(|i| cx.d_any(i, m)).collect::<Result<_>>()?;
        let coherent = (0..n).all(|c| ds.iter().all(|d| d[c] >= 0) || ds.iter().all(|d| d[c] <= 0));
        r.record(coherent, || format!("denominators of Σ_{m} are not sign-coherent"));
        for a in sample_exponents(n) {
            let mut p = Laurent::one(2 * n);
            for (i, &k) in a.iter().enumerate() {
                if k > 0 {
                    p = &p * &seed.x[i].pow(k);
                }
            }
            let d = p.denominator_vector(n)?;
            let g = homogeneous_degree(b, &p)?;
            let gm = cx.g_from_d(&d);
            r.record(g == gm, || format!("monomial {a:?} at Σ_{m}: g = {g:?}, Eτ₋d = {gm:?}"));
        }
    }

    // g-vectors with respect to the adjacent seeds Σ₁ = μ₋Σ₀ and Σ₋₁ = μ₊Σ₀.
    for (sign, shift) in [(-1i64, 1i64), (1, -1)] {
        let nb = b.neg();
        let (plo, phi) = (lo - shift, hi - shift);
        let neps: Vec<i64> = eps.iter().map(|e| -e).collect();
        let other = belt_walk_with_sign(&nb, &neps, BeltCoefficients::Principal, plo.min(0), phi.max(0))?;
        for (m, l) in belt.family() {
            let mp = m - shift;
            if mp < other.lo || mp > other.hi() {
                continue;
            }
            // x_{l;m} sits in the primed belt at m - shift.
            let g = homogeneous_degree(b, belt.x(l, m)?)?;
            let gp = homogeneous_degree(&nb, other.x(l, mp)?)?;
            let want: Vec<i64> = (0..n)
                .map(|i| {
                    if eps[i] == sign {
                        -gp[i]
                    } else {
                        gp[i] + (0..n)
                            .filter(|&k| eps[k] == sign)
                            .map(|k| pos(-b.get(i, k)) * gp[k] - b.get(i, k) * pos(-gp[k]))
                            .sum::<i64>()
                    }
                })
                .collect();
            r.record(g == want, || format!("adjacent g-relation at x_{{{};{m}}}: {g:?} vs {want:?}", l + 1));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutation::{named_cartan, named_exchange};

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn coxeter_numbers() {
        for (t, h) in [("A2", 3), ("B2", 4), ("G2", 6), ("A3", 4), ("D4", 6)] {
            assert_eq!(coxeter_data(&named_cartan(t).unwrap(), 1000).unwrap().h, Some(h), "{t}");
        }
        let k = IntMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap();
        let c = coxeter_data(&k, 1000).unwrap();
        assert_eq!(c.h, None);
        assert!(!c.finite_type);
    }

    #[test]
    fn a2_orbits() {
        let c = coxeter_data(&named_cartan("A2").unwrap(), 1000).unwrap();
        assert_eq!(c.alpha(0, 2).unwrap(), vec![1, 1]);
        assert_eq!(c.d(0, 2).unwrap(), vec![1, 1]);
        assert_eq!(c.alpha(1, 1).unwrap(), vec![0, 1]);
        assert_eq!(c.alpha(0, 0).unwrap(), vec![-1, 0]);
        assert_eq!(c.alpha(1, -1).unwrap(), vec![0, -1]);
        assert_eq!(c.g_from_d(&[1, 1]), vec![-1, 0]);
        assert_eq!(c.positive_roots().unwrap().len(), 3);
        assert_eq!(c.w0_involution().unwrap(), vec![1, 0]);
        assert_eq!(belt_path(&c.eps, 2), vec![2, 1]);
        assert_eq!(belt_path(&c.eps, -2), vec![1, 2]);
    }

    #[test]
    fn a2_belt() {
        let belt = belt_walk(&a2(), BeltCoefficients::Principal, -1, 5).unwrap();
        let v = belt.vars();
        assert_eq!(belt.x(0, 2).unwrap().to_fraction_text(&v), "(x1*y1*y2 + x2 + y1) / (x1*x2)");
        assert_eq!(belt.x(1, 3).unwrap().to_fraction_text(&v), "(x2 + y1) / x1");
        let r = belt_verify(&a2(), -1, 5).unwrap();
        assert!(r.violations.is_empty(), "{:?}", r.violations);
    }

    #[test]
    fn rank2_ysystem() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 2], vec![-1, 0]]).unwrap();
        let vals = y_system_universal(&b, 3).unwrap();
        let u = Vars::indexed("u", 2);
        let y11 = vals.iter().find(|v| v.m == 1 && v.j == 1).unwrap();
        // a_21 = -|b_21| = -1, so y_{1;1} = (u2 + 1)/u1.
        assert_eq!(y11.laurent_u.to_fraction_text(&u), "(u2 + 1) / u1");
        y_system_cross_check(&b, 4).unwrap();
    }

    #[test]
    fn periodicity() {
        assert_eq!(periodicity_check(&named_cartan("A2").unwrap(), PeriodMode::Seeds, 0).unwrap(), Periodicity::Period(10));
        assert_eq!(periodicity_check(&named_cartan("A2").unwrap(), PeriodMode::YSystem, 0).unwrap(), Periodicity::Period(10));
        let k = IntMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(periodicity_check(&k, PeriodMode::Seeds, 12).unwrap(), Periodicity::NoPeriodUpTo(12));
        let _ = named_exchange("A2").unwrap();
    }

    #[test]
    fn decomposable_and_affine() {
        let a = named_cartan("A1xA1").unwrap();
        assert_eq!(periodicity_check(&a, PeriodMode::Seeds, 0).unwrap(), Periodicity::Period(4));
        let b = bipartite_exchange(&a, &coxeter_data(&a, 100).unwrap().eps).unwrap();
        assert!(belt_verify(&b, -1, 8).unwrap().violations.is_empty());

        let a = crate::mutation::affine_a_cartan(4);
        let b = bipartite_exchange(&a, &coxeter_data(&a, 100).unwrap().eps).unwrap();
        let vals: Vec<String> =
            y_system_universal(&b, 4).unwrap().iter().map(|v| v.laurent_u.eval_at_ones().to_string()).collect();
        assert_eq!(vals[4..10], ["4", "4", "25", "25", "169", "169"]);
    }
}
