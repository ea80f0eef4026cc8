//! Cluster patterns with principal coefficients at an initial vertex.
//!
//! The ambient ring of a pattern over an `n × n` matrix `B0` has variables
//! `x1..xn, y1..yn`; F-polynomials live in `y1..yn`. Every step of a walk is
//! cross-checked against the independent recurrences for F and g.

pub mod audit;

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::laurent::{Exponents, Laurent, Vars};
use crate::matrix::pos;
use crate::mutation::{ExchangeMatrix, ExtendedMatrix, GeometricSeed, YSeed};
use crate::rational::{substitute_laurent, RationalExpr};
use crate::semifield::{trop_eval_positive_poly, Semifield, Tropical, Universal};

pub use audit::{conjecture_suite, AuditReport, CheckResult, Exploration};

/// One vertex of a principal-coefficient pattern, reached from `t0` by `path`.
#[derive(Clone, Debug)]
pub struct PrincipalVertex {
    pub path: Vec<usize>,
    /// Cluster variables `X_{l;t}` over `x1..xn, y1..yn` and the `2n × n`
    /// matrix `B̃_t`.
    pub seed: GeometricSeed,
    /// `F_{l;t}` over `y1..yn`.
    pub f: Vec<Laurent>,
    pub g: Vec<Vec<i64>>,
}

impl PrincipalVertex {
    pub fn n(&self) -> usize {
        self.seed.n()
    }

    pub fn btilde(&self) -> &ExtendedMatrix {
        &self.seed.btilde
    }

    pub fn b(&self) -> ExchangeMatrix {
        self.seed.btilde.principal()
    }

    pub fn x(&self, l: usize) -> &Laurent {
        &self.seed.x[l]
    }

    /// `c_{l;t}`: the bottom half of column `l` of `B̃_t` (0-based `l`).
    pub fn c(&self, l: usize) -> Vec<i64> {
        self.seed.btilde.coefficient_column(l)
    }

    /// The tropical coefficient `y_{j;t} = y^{c_{j;t}}`.
    pub fn y_trop(&self, j: usize) -> Vec<i64> {
        self.c(j)
    }
}

/// Memoized principal-coefficient walks from a fixed `B0`.
#[derive(Clone, Debug)]
pub struct PrincipalPattern {
    b0: ExchangeMatrix,
    memo: HashMap<Vec<usize>, Arc<PrincipalVertex>>,
}

impl PrincipalPattern {
    pub fn new(b0: ExchangeMatrix) -> Self {
        let n = b0.n();
        let seed = GeometricSeed::initial(b0.principal_extension());
        let root = PrincipalVertex {
            path: Vec::new(),
            seed,
            f: vec![Laurent::one(n); n],
            g: (0..n).map(|l| unit(n, l)).collect(),
        };
        let mut memo = HashMap::new();
        memo.insert(Vec::new(), Arc::new(root));
        PrincipalPattern { b0, memo }
    }

    pub fn b0(&self) -> &ExchangeMatrix {
        &self.b0
    }

    pub fn n(&self) -> usize {
        self.b0.n()
    }

    pub fn vars(&self) -> Vars {
        Vars::principal(self.n())
    }

    pub fn y_vars(&self) -> Vars {
        Vars::indexed("y", self.n())
    }

    pub fn root(&self) -> Arc<PrincipalVertex> {
        self.memo[&Vec::new()].clone()
    }

    /// The vertex at the end of `path` (1-based directions), computing and
    /// caching every prefix on the way.
    pub fn vertex(&mut self, path: &[usize]) -> Result<Arc<PrincipalVertex>> {
        if let Some(v) = self.memo.get(path) {
            return Ok(v.clone());
        }
        let n = self.n();
        let mut known = path.len();
        while !self.memo.contains_key(&path[..known]) {
            known -= 1;
        }
        let mut cur = self.memo[&path[..known]].clone();
        for i in known..path.len() {
            let k = path[i];
            if !(1..=n).contains(&k) {
                return Err(Error::InvalidInput(format!("direction {k} out of range 1..={n}")));
            }
            let next = Arc::new(step(&self.b0, &cur, k)?);
            self.memo.insert(path[..=i].to_vec(), next.clone());
            cur = next;
        }
        Ok(cur)
    }

    /// Every vertex along `path`, starting with the root.
    pub fn walk(&mut self, path: &[usize]) -> Result<Vec<Arc<PrincipalVertex>>> {
        (0..=path.len()).map(|i| self.vertex(&path[..i])).collect()
    }

    pub fn cached(&self) -> usize {
        self.memo.len()
    }
}

/// The vertex at the end of `path` from principal coefficients at `B0`.
pub fn principal_walk(b0: &ExchangeMatrix, path: &[usize]) -> Result<PrincipalVertex> {
    let mut p = PrincipalPattern::new(b0.clone());
    Ok((*p.vertex(path)?).clone())
}

fn unit(n: usize, l: usize) -> Vec<i64> {
    let mut e = vec![0; n];
    e[l] = 1;
    e
}

/// `X ↦ X|_{x_i = 1}`: drop the x-variables of the ambient ring.
pub fn specialize_x(x: &Laurent, n: usize) -> Laurent {
    let map: Vec<Option<usize>> = (0..2 * n).map(|i| i.checked_sub(n)).collect();
    x.reindex(n, &map)
}

/// Principal degree of an ambient monomial: `deg x_i = e_i`,
/// `deg y_j = -b0_j` (column `j` of `B0`).
pub fn principal_degree(b0: &ExchangeMatrix, e: &[i32]) -> Vec<i64> {
    let n = b0.n();
    (0..n)
        .map(|i| e[i] as i64 - (0..n).map(|j| b0.get(i, j) * e[n + j] as i64).sum::<i64>())
        .collect()
}

/// The common degree of a homogeneous ambient Laurent polynomial.
pub fn homogeneous_degree(b0: &ExchangeMatrix, p: &Laurent) -> Result<Vec<i64>> {
    let mut deg: Option<Vec<i64>> = None;
    for (e, _) in p.terms() {
        let d = principal_degree(b0, e);
        match &deg {
            None => deg = Some(d),
            Some(d0) if *d0 != d => {
                return Err(Error::CrossCheckFailure(format!(
                    "not homogeneous: degrees {d0:?} and {d:?}"
                )))
            }
            _ => {}
        }
    }
    deg.ok_or(Error::ZeroPolynomial)
}

/// Exponents of `ŷ_j = y_j prod_i x_i^{b0_ij}` in the ambient ring.
pub fn y_hat_initial_exponents(b0: &ExchangeMatrix) -> Vec<Exponents> {
    let n = b0.n();
    (0..n)
        .map(|j| {
            let mut e = vec![0i32; 2 * n];
            for i in 0..n {
                e[i] = b0.get(i, j) as i32;
            }
            e[n + j] = 1;
            e
        })
        .collect()
}

/// `x^g F(ŷ)` over the ambient ring.
pub fn x_from_g_and_f(b0: &ExchangeMatrix, g: &[i64], f: &Laurent) -> Laurent {
    let n = b0.n();
    let mut shift = vec![0i32; 2 * n];
    for i in 0..n {
        shift[i] = g[i] as i32;
    }
    f.substitute_monomials(&y_hat_initial_exponents(b0), 2 * n).mul_monomial(&shift)
}

/// `F(ŷ)` over the ambient ring.
pub fn f_at_y_hat(b0: &ExchangeMatrix, f: &Laurent) -> Laurent {
    f.substitute_monomials(&y_hat_initial_exponents(b0), 2 * b0.n())
}

/// `prod_j y_j^{e_j} prod_i F_i^{a_i}` with nonnegative exponents.
fn y_f_product(c: &[i64], fs: &[Laurent], a: &[i64]) -> Laurent {
    let n = c.len();
    let mut out = Laurent::monomial(c.iter().map(|&e| e as i32).collect(), 1);
    for i in 0..n {
        if a[i] > 0 {
            out = &out * &fs[i].pow(a[i] as u32);
        }
    }
    debug_assert_eq!(out.nvars(), n);
    out
}

/// The F-recurrence at the edge `t —k— t'`, from data at `t` only.
pub fn f_recurrence(btilde: &ExtendedMatrix, f: &[Laurent], k: usize) -> Result<Laurent> {
    let n = btilde.n();
    let kk = k - 1;
    let c = btilde.coefficient_column(kk);
    let col: Vec<i64> = (0..n).map(|i| btilde.get(i, kk)).collect();
    let plus = y_f_product(
        &c.iter().map(|&e| pos(e)).collect::<Vec<_>>(),
        f,
        &col.iter().map(|&e| pos(e)).collect::<Vec<_>>(),
    );
    let minus = y_f_product(
        &c.iter().map(|&e| pos(-e)).collect::<Vec<_>>(),
        f,
        &col.iter().map(|&e| pos(-e)).collect::<Vec<_>>(),
    );
    (&plus + &minus).exact_div_polynomial(&f[kk])
}

/// Both g-recurrence variants at the edge `t —k— t'`. Returns the common
/// value, or an error when they disagree.
pub fn g_recurrence(
    b0: &ExchangeMatrix,
    btilde: &ExtendedMatrix,
    g: &[Vec<i64>],
    k: usize,
) -> Result<Vec<i64>> {
    let n = b0.n();
    let kk = k - 1;
    let variant = |sign: i64| -> Vec<i64> {
        let mut out: Vec<i64> = g[kk].iter().map(|x| -x).collect();
        for i in 0..n {
            let b = pos(sign * btilde.get(i, kk));
            for r in 0..n {
                out[r] += b * g[i][r];
            }
        }
        for j in 0..n {
            let c = pos(sign * btilde.get(n + j, kk));
            for r in 0..n {
                out[r] -= c * b0.get(r, j);
            }
        }
        out
    };
    let first = variant(1);
    let second = variant(-1);
    // The two agree exactly when sum_i b_ik g_i = sum_j b_{n+j,k} b0_j.
    let lhs: Vec<i64> = (0..n)
        .map(|r| (0..n).map(|i| btilde.get(i, kk) * g[i][r]).sum())
        .collect();
    let rhs: Vec<i64> = (0..n)
        .map(|r| (0..n).map(|j| btilde.get(n + j, kk) * b0.get(r, j)).sum())
        .collect();
    if (first == second) != (lhs == rhs) {
        return Err(Error::CrossCheckFailure("g-recurrence identity inconsistent".into()));
    }
    if first != second {
        return Err(Error::CrossCheckFailure(format!(
            "g-recurrence variants disagree: {first:?} vs {second:?}"
        )));
    }
    Ok(first)
}

/// One mutation of a principal vertex with all per-step checks.
fn step(b0: &ExchangeMatrix, cur: &PrincipalVertex, k: usize) -> Result<PrincipalVertex> {
    let n = b0.n();
    let kk = k - 1;
    let seed = cur.seed.mutate(k)?;
    let x = &seed.x[kk];
    if x.terms().any(|(e, _)| e[n..].iter().any(|&a| a < 0)) {
        return Err(Error::CrossCheckFailure("negative y-exponent in X".into()));
    }

    let f = specialize_x(x, n);
    let f_rec = f_recurrence(&cur.seed.btilde, &cur.f, k)?;
    if f != f_rec {
        return Err(Error::CrossCheckFailure(format!(
            "F-recurrence disagrees at path {:?}+{k}",
            cur.path
        )));
    }
    if f.min_exponents().ok_or(Error::ZeroPolynomial)?.iter().any(|&e| e != 0) {
        return Err(Error::CrossCheckFailure("F divisible by some y_j".into()));
    }

    let g = homogeneous_degree(b0, x)?;
    let g_rec = g_recurrence(b0, &cur.seed.btilde, &cur.g, k)?;
    if g != g_rec {
        return Err(Error::CrossCheckFailure(format!(
            "g by degree {g:?} differs from recurrence {g_rec:?}"
        )));
    }
    if x_from_g_and_f(b0, &g, &f) != *x {
        return Err(Error::CrossCheckFailure("X differs from x^g F(ŷ)".into()));
    }

    let mut path = cur.path.clone();
    path.push(k);
    let mut fs = cur.f.clone();
    fs[kk] = f;
    let mut gs = cur.g.clone();
    gs[kk] = g;
    Ok(PrincipalVertex { path, seed, f: fs, g: gs })
}

/// `ŷ_{j;t} = prod_{i=1}^m slot_i^{b_ij}` for a geometric seed, where slots
/// are the cluster variables followed by the frozen generators.
pub fn y_hat(seed: &GeometricSeed) -> Result<Vec<RationalExpr>> {
    let n = seed.n();
    let m = seed.m();
    (0..n)
        .map(|j| {
            let mut acc = RationalExpr::one(m);
            for i in 0..m {
                let b = seed.btilde.get(i, j);
                if b == 0 {
                    continue;
                }
                let slot = if i < n { seed.x[i].clone() } else { Laurent::var(m, i) };
                acc = acc.mul(&RationalExpr::from_laurent(slot).pow(b)?);
            }
            Ok(acc)
        })
        .collect()
}

/// Checks that `ŷ` transforms by the Y-seed rule (with `⊕ = +`) under `μ_k`.
pub fn y_hat_mutation_check(seed: &GeometricSeed, k: usize) -> Result<()> {
    let sf = Universal::new(seed.default_vars());
    let before: Vec<_> = y_hat(seed)?.into_iter().map(|v| sf.value(v)).collect();
    let ys = YSeed::<Universal>::new(before, seed.btilde.principal())?.mutate(k, &sf);
    let after = y_hat(&seed.mutate(k)?)?;
    for (j, (a, b)) in ys.y.iter().zip(&after).enumerate() {
        if a.expr() != b {
            return Err(Error::CrossCheckFailure(format!("ŷ_{} mutation mismatch", j + 1)));
        }
    }
    Ok(())
}

/// `Y_{j;t} = y^{c_{j;t}} prod_i F_{i;t}^{b^t_ij}` in factored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredY {
    pub trop: Vec<i64>,
    pub f_exps: Vec<i64>,
}

impl FactoredY {
    /// Expand over `y1..yn` given the F-polynomials of the same vertex.
    pub fn expand(&self, f: &[Laurent]) -> RationalExpr {
        let n = self.trop.len();
        let split = |s: i64| -> Laurent {
            y_f_product(
                &self.trop.iter().map(|&e| pos(s * e)).collect::<Vec<_>>(),
                f,
                &self.f_exps.iter().map(|&e| pos(s * e)).collect::<Vec<_>>(),
            )
        };
        let hints = f.iter().filter(|p| p.num_terms() > 1).cloned().collect();
        debug_assert_eq!(f.len(), n);
        RationalExpr::with_hints(split(1), split(-1), hints).expect("F-polynomials are nonzero")
    }
}

/// Factored universal Y-values at a vertex, cross-checked against the direct
/// Y-seed walk in the universal semifield.
pub fn y_factored(vertex: &PrincipalVertex, b0: &ExchangeMatrix) -> Result<Vec<FactoredY>> {
    let n = vertex.n();
    let bt = vertex.b();
    let out: Vec<FactoredY> = (0..n)
        .map(|j| FactoredY {
            trop: vertex.c(j),
            f_exps: (0..n).map(|i| bt.get(i, j)).collect(),
        })
        .collect();
    let sf = Universal::new(Vars::indexed("y", n));
    let init = YSeed::<Universal>::new((0..n).map(|j| sf.generator(j)).collect(), b0.clone())?;
    let direct = init.walk(&vertex.path, &sf);
    for (j, fy) in out.iter().enumerate() {
        if fy.expand(&vertex.f) != *direct.y[j].expr() {
            return Err(Error::CrossCheckFailure(format!(
                "factored Y_{} differs from the direct Y-walk",
                j + 1
            )));
        }
    }
    Ok(out)
}

/// The separation formula evaluated over a coefficient semifield `S`.
#[derive(Clone, Debug)]
pub struct Separation {
    /// `x1..xn` followed by the generators of `S`.
    pub vars: Vars,
    pub value: RationalExpr,
}

/// `x_{l;t} = X_{l;t}(x; y) / F_{l;t}|_S(y)`, computed in two ways (direct
/// substitution into X, and `x^g F(ŷ)` with `ŷ_j = y_j prod x_i^{b0_ij}`)
/// which must agree. `y` are the initial coefficients in `S`; `l` is 0-based.
pub fn separation_evaluate<S: Semifield>(
    vertex: &PrincipalVertex,
    b0: &ExchangeMatrix,
    l: usize,
    sf: &S,
    y: &[S::Value],
) -> Result<Separation> {
    let n = vertex.n();
    let gens = sf.gens().clone();
    let vars = Vars::indexed("x", n).concat(&gens);
    let amb = vars.len();
    let embed = |r: &RationalExpr| -> Result<RationalExpr> {
        let map: Vec<Option<usize>> = (0..gens.len()).map(|i| Some(n + i)).collect();
        r.reindex(amb, &map)
    };
    let xs: Vec<RationalExpr> = (0..n).map(|i| RationalExpr::var(amb, i)).collect();
    let ys: Vec<RationalExpr> =
        y.iter().map(|v| embed(&sf.to_rational(v))).collect::<Result<_>>()?;

    let f = &vertex.f[l];
    let f_s = embed(&sf.to_rational(&sf.eval_positive(f, y)?))?;

    let images: Vec<RationalExpr> = xs.iter().chain(&ys).cloned().collect();
    let form_a = substitute_laurent(vertex.x(l), &images)?.div(&f_s)?;

    let y_hat: Vec<RationalExpr> = (0..n)
        .map(|j| {
            (0..n).try_fold(ys[j].clone(), |acc, i| Ok(acc.mul(&xs[i].pow(b0.get(i, j))?)))
        })
        .collect::<Result<_>>()?;
    let mut xg = RationalExpr::one(amb);
    for i in 0..n {
        xg = xg.mul(&xs[i].pow(vertex.g[l][i])?);
    }
    let form_b = substitute_laurent(f, &y_hat)?.mul(&xg).div(&f_s)?;
    if form_a != form_b {
        return Err(Error::CrossCheckFailure(format!(
            "separation forms disagree for x_{} at path {:?}",
            l + 1,
            vertex.path
        )));
    }
    Ok(Separation { vars, value: form_a })
}

/// Separation over `Trop(u_1..u_r)` against a direct geometric walk whose
/// coefficient rows are the exponent vectors of the initial `y`'s.
pub fn separation_check_geometric(
    pattern: &mut PrincipalPattern,
    path: &[usize],
    coeff_rows: &crate::matrix::IntMatrix,
) -> Result<()> {
    let b0 = pattern.b0().clone();
    let n = b0.n();
    let r = coeff_rows.rows();
    let sf = Tropical::new(Vars::indexed("u", r));
    let y: Vec<_> = (0..n).map(|j| sf.monomial(coeff_rows.column(j))).collect();
    let btilde = ExtendedMatrix::new(b0.matrix().vstack(coeff_rows))?;
    let geo = GeometricSeed::initial(btilde).walk(path)?;
    let v = pattern.vertex(path)?;
    for l in 0..n {
        let sep = separation_evaluate(&v, &b0, l, &sf, &y)?;
        if sep.value != RationalExpr::from_laurent(geo.x[l].clone()) {
            return Err(Error::CrossCheckFailure(format!(
                "separation differs from the geometric walk for x_{}",
                l + 1
            )));
        }
    }
    Ok(())
}

/// Separation over the universal semifield against the rational oracle.
pub fn separation_check_oracle(pattern: &mut PrincipalPattern, path: &[usize]) -> Result<Vec<RationalExpr>> {
    let b0 = pattern.b0().clone();
    let n = b0.n();
    let oracle = crate::mutation::RationalOracleSeed::initial(&b0)?.walk(path)?;
    let sf = Universal::new(Vars::indexed("y", n));
    let y: Vec<_> = (0..n).map(|j| sf.generator(j)).collect();
    let v = pattern.vertex(path)?;
    (0..n)
        .map(|l| {
            let sep = separation_evaluate(&v, &b0, l, &sf, &y)?;
            if sep.value != oracle.x[l] {
                return Err(Error::CrossCheckFailure(format!(
                    "separation differs from the oracle for x_{}",
                    l + 1
                )));
            }
            Ok(sep.value)
        })
        .collect()
}

/// Exponent of `F|_{Trop(u)}` at `y_j = u^{a_j}`.
pub fn trop_u(f: &Laurent, a: &[i64]) -> Result<i64> {
    let sf = Tropical::new(Vars::new(["u"]));
    let assign: Vec<_> = a.iter().map(|&e| sf.monomial(vec![e])).collect();
    Ok(trop_eval_positive_poly(f, &assign)?.exps()[0])
}

/// Exponent vector of `F|_{Trop(u_1..u_r)}` at `y_j = u^{a[j]}`.
pub fn trop_u_multi(f: &Laurent, a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let r = a.first().map_or(0, Vec::len);
    let sf = Tropical::new(Vars::indexed("u", r));
    let assign: Vec<_> = a.iter().map(|e| sf.monomial(e.clone())).collect();
    Ok(trop_eval_positive_poly(f, &assign)?.exps().to_vec())
}

/// `(u^{[s b_k1]_+}, ..., u^{-1}, ..., u^{[s b_kn]_+})` with `u^{-1}` at `k`.
fn h_argument(b0: &ExchangeMatrix, kk: usize, s: i64) -> Vec<i64> {
    (0..b0.n()).map(|j| if j == kk { -1 } else { pos(s * b0.get(kk, j)) }).collect()
}

/// Data of the g-vector transition for one cluster variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GTransition {
    /// g-vector with respect to `B0` at `t0`.
    pub g: Vec<i64>,
    /// g-vector with respect to `B1 = μ_k(B0)` at `t1`, solved from the rule.
    pub g_prime: Vec<i64>,
    pub h_k: i64,
    pub h_prime_k: i64,
}

/// Transfer the g-vector of `x_{l;t}` (0-based `l`) from `t0` to the adjacent
/// `t1 = μ_k(t0)`. `p0` and `p1` are patterns at `B0` and `μ_k(B0)`; the
/// tree vertex `t` is `path` from `t0` and `[k] ++ path` from `t1`.
pub fn g_transition(
    p0: &mut PrincipalPattern,
    p1: &mut PrincipalPattern,
    k: usize,
    path: &[usize],
    l: usize,
) -> Result<GTransition> {
    let b0 = p0.b0().clone();
    if *p1.b0() != b0.mutate(k) {
        return Err(Error::IncompatibleInputs("second pattern must start at μ_k(B0)".into()));
    }
    let n = b0.n();
    let kk = k - 1;
    let v0 = p0.vertex(path)?;
    let mut path1 = vec![k];
    path1.extend_from_slice(path);
    let v1 = p1.vertex(&path1)?;
    let g = v0.g[l].clone();
    let h_prime_k = trop_u(&v1.f[l], &h_argument(&b0, kk, 1))?;
    let h_k = trop_u(&v0.f[l], &h_argument(&b0, kk, -1))?;

    let mut g_prime = vec![0i64; n];
    g_prime[kk] = -g[kk];
    for i in (0..n).filter(|&i| i != kk) {
        g_prime[i] = g[i] - pos(-b0.get(i, kk)) * g_prime[kk] - b0.get(i, kk) * h_prime_k;
    }
    if g_prime != v1.g[l] {
        return Err(Error::CrossCheckFailure(format!(
            "transition gives {g_prime:?}, fresh walk gives {:?}",
            v1.g[l]
        )));
    }
    if g[kk] != h_k - h_prime_k {
        return Err(Error::CrossCheckFailure(format!(
            "g_k = {} but h_k - h'_k = {}",
            g[kk],
            h_k - h_prime_k
        )));
    }
    Ok(GTransition { g, g_prime, h_k, h_prime_k })
}

/// The conjectural transition rule for g-vectors of cluster variables.
pub fn g_transition_conjectural(b0: &ExchangeMatrix, k: usize, g: &[i64]) -> Vec<i64> {
    let kk = k - 1;
    (0..g.len())
        .map(|j| {
            if j == kk {
                -g[kk]
            } else {
                g[j] + pos(b0.get(j, kk)) * g[kk] - b0.get(j, kk) * g[kk].min(0)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::Tropical;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_walk() {
        let v = principal_walk(&a2(), &[2, 1]).unwrap();
        let yv = Vars::indexed("y", 2);
        assert_eq!(v.f[0].to_text(&yv), "y1*y2 + y1 + 1");
        assert_eq!(v.f[1].to_text(&yv), "y2 + 1");
        assert_eq!(v.g, vec![vec![-1, 0], vec![0, -1]]);
        let e = principal_walk(&a2(), &[]).unwrap();
        assert_eq!(e.g, vec![vec![1, 0], vec![0, 1]]);
        assert!(e.f.iter().all(Laurent::is_one));
    }

    #[test]
    fn memo_reuses_prefixes() {
        let mut p = PrincipalPattern::new(a2());
        p.vertex(&[2, 1, 2]).unwrap();
        assert_eq!(p.cached(), 4);
        p.vertex(&[2, 1]).unwrap();
        assert_eq!(p.cached(), 4);
    }

    #[test]
    fn y_hat_initial_and_mutation() {
        let seed = GeometricSeed::initial(a2().principal_extension());
        let vars = Vars::principal(2);
        let yh = y_hat(&seed).unwrap();
        assert_eq!(yh[0].to_laurent().unwrap().to_text(&vars), "x2^-1*y1");
        assert_eq!(yh[1].to_laurent().unwrap().to_text(&vars), "x1*y2");
        for k in 1..=2 {
            y_hat_mutation_check(&seed, k).unwrap();
        }
        let d = principal_degree(&a2(), &[0, -1, 1, 0]);
        assert_eq!(d, vec![0, 0]);
    }

    #[test]
    fn factored_y() {
        let v = principal_walk(&a2(), &[2]).unwrap();
        let fy = y_factored(&v, &a2()).unwrap();
        assert_eq!(fy[0], FactoredY { trop: vec![1, 0], f_exps: vec![0, 1] });
        let v = principal_walk(&a2(), &[2, 1]).unwrap();
        let fy = y_factored(&v, &a2()).unwrap();
        assert_eq!(fy[1].trop, vec![0, -1]);
        assert_eq!(fy[1].f_exps, vec![1, 0]);
        let yv = Vars::indexed("y", 2);
        assert_eq!(fy[1].expand(&v.f).to_text(&yv), "(y1*y2 + y1 + 1) / y2");
    }

    #[test]
    fn separation_forms() {
        let mut p = PrincipalPattern::new(a2());
        let v = p.vertex(&[2, 1]).unwrap();
        let sf = Tropical::new(Vars::indexed("y", 2));
        let y: Vec<_> = (0..2).map(|j| sf.generator(j)).collect();
        let s = separation_evaluate(&v, &a2(), 0, &sf, &y).unwrap();
        assert_eq!(s.value.to_text(&s.vars), "(x1*y1*y2 + x2 + y1) / (x1*x2)");
        let u = separation_check_oracle(&mut p, &[2, 1]).unwrap();
        assert_eq!(
            u[0].to_text(&Vars::principal(2)),
            "((x1*y1*y2 + x2 + y1) / (x1*x2)) / (y1*y2 + y1 + 1)"
        );
        let rows = crate::matrix::IntMatrix::from_rows(&[vec![1, 0], vec![2, -1], vec![0, 3]]).unwrap();
        separation_check_geometric(&mut p, &[2, 1, 2, 1], &rows).unwrap();
    }

    #[test]
    fn transition_a2() {
        let b0 = a2();
        let mut p0 = PrincipalPattern::new(b0.clone());
        let mut p1 = PrincipalPattern::new(b0.mutate(2));
        let t = g_transition(&mut p0, &mut p1, 2, &[2, 1], 0).unwrap();
        assert_eq!(t.g, vec![-1, 0]);
        assert_eq!(t.g_prime, g_transition_conjectural(&b0, 2, &t.g));
        let t = g_transition(&mut p0, &mut p1, 2, &[], 0).unwrap();
        assert_eq!(t.g_prime, vec![1, 0]);
    }
}
