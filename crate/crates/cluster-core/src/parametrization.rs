//! Denominator vectors and g-vectors of cluster variables and cluster
//! monomials.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::laurent::Laurent;
use crate::matrix::{pos, IntMatrix};
use crate::mutation::{ExchangeMatrix, ExtendedMatrix};
use crate::principal::{trop_u_multi, PrincipalPattern, PrincipalVertex};
use crate::rational::RationalExpr;

/// d-vectors of all cluster variables at the end of `path`, by the
/// max-recurrence on exchange matrices alone.
pub fn d_vectors_recurrence(b0: &ExchangeMatrix, path: &[usize]) -> Vec<Vec<i64>> {
    let n = b0.n();
    let mut d: Vec<Vec<i64>> = (0..n)
        .map(|l| (0..n).map(|i| if i == l { -1 } else { 0 }).collect())
        .collect();
    let mut b = b0.clone();
    for &k in path {
        let kk = k - 1;
        let mut plus = vec![0i64; n];
        let mut minus = vec![0i64; n];
        for i in 0..n {
            let bik = b.get(i, kk);
            for r in 0..n {
                plus[r] += pos(bik) * d[i][r];
                minus[r] += pos(-bik) * d[i][r];
            }
        }
        d[kk] = (0..n).map(|r| -d[kk][r] + plus[r].max(minus[r])).collect();
        b = b.mutate(k);
    }
    d
}

/// Denominator vector of `x_{l;t}` (0-based `l`), by extraction from the
/// Laurent expansion and by the recurrence; the two must agree.
pub fn d_vector(pattern: &mut PrincipalPattern, path: &[usize], l: usize) -> Result<Vec<i64>> {
    let n = pattern.n();
    let v = pattern.vertex(path)?;
    let extracted = v.x(l).denominator_vector(n)?;
    let rec = &d_vectors_recurrence(pattern.b0(), path)[l];
    if extracted != *rec {
        return Err(Error::CrossCheckFailure(format!(
            "d-vector {extracted:?} from the expansion, {rec:?} from the recurrence"
        )));
    }
    Ok(extracted)
}

/// `|det|` of the lattice spanned by `n` vectors in `Z^n`: the index of the
/// sublattice, or 0 when they are dependent.
pub fn lattice_index(vectors: &[Vec<i64>]) -> BigInt {
    let m = IntMatrix::from_rows(vectors).expect("vectors of equal length");
    m.determinant().abs()
}

/// g-vector of `z` with respect to the seed whose ambient generators are
/// `x_1..x_m` and whose extended matrix is `btilde`: the `a_1..a_n` of the
/// presentation `z = R(ŷ) x^a` with `R` primitive, where `ŷ_j = x^{b̃_j}`.
///
/// Numerator and denominator are each reduced separately, so both must lie
/// in the set of such presentations.
pub fn g_vector_general(btilde: &ExtendedMatrix, z: &RationalExpr) -> Result<Vec<i64>> {
    let n = btilde.n();
    let m = btilde.m();
    let rank = btilde.matrix().rank();
    if rank < n {
        return Err(Error::RankDeficient { rank, n });
    }
    if z.nvars() != m {
        return Err(Error::InvalidInput(format!("expected {m} ambient variables")));
    }
    let a_num = primitive_shift(btilde, z.num())?;
    let a_den = primitive_shift(btilde, z.den())?;
    Ok((0..n).map(|i| a_num[i] - a_den[i]).collect())
}

/// For `p = x^a P(ŷ)` with `P` a polynomial not divisible by any `u_j`,
/// return `a`. Errors when the exponents of `p` span more than one coset of
/// the column lattice of `btilde`.
fn primitive_shift(btilde: &ExtendedMatrix, p: &Laurent) -> Result<Vec<i64>> {
    let n = btilde.n();
    let terms = p.sorted_terms();
    let (e0, _) = *terms.first().ok_or(Error::ZeroPolynomial)?;
    let e0: Vec<i64> = e0.iter().map(|&e| e as i64).collect();
    let mut lo = vec![0i64; n];
    for (e, _) in &terms[1..] {
        let diff: Vec<i64> = e.iter().zip(&e0).map(|(&a, &b)| a as i64 - b).collect();
        let v = btilde
            .matrix()
            .solve_integral(&diff)
            .ok_or_else(|| Error::NotInM("exponents not in one coset of the ŷ-lattice".into()))?;
        for j in 0..n {
            lo[j] = lo[j].min(v[j]);
        }
    }
    let shift = btilde.matrix().mul_vec(&lo);
    Ok(e0.iter().zip(&shift).map(|(a, b)| a + b).collect())
}

/// A cluster monomial `prod_l x_{l;t}^{a_l}` at a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterMonomial {
    pub path: Vec<usize>,
    pub a: Vec<i64>,
}

impl ClusterMonomial {
    pub fn new(path: Vec<usize>, a: Vec<i64>) -> Result<Self> {
        if a.iter().any(|&e| e < 0) {
            return Err(Error::InvalidInput("cluster monomial exponents must be nonnegative".into()));
        }
        Ok(ClusterMonomial { path, a })
    }

    /// The Laurent expansion in the ambient ring of the pattern.
    pub fn expand(&self, vertex: &PrincipalVertex) -> Laurent {
        let mut out = Laurent::one(2 * vertex.n());
        for (l, &e) in self.a.iter().enumerate() {
            if e > 0 {
                out = &out * &vertex.x(l).pow(e as u32);
            }
        }
        out
    }
}

/// `(d, g)` of a cluster monomial as sums over its factors.
pub fn monomial_vectors(
    pattern: &mut PrincipalPattern,
    mono: &ClusterMonomial,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let n = pattern.n();
    if mono.a.len() != n {
        return Err(Error::InvalidInput(format!("expected {n} exponents")));
    }
    let v = pattern.vertex(&mono.path)?;
    let dl = d_vectors_recurrence(pattern.b0(), &mono.path);
    let mut d = vec![0i64; n];
    let mut g = vec![0i64; n];
    for l in 0..n {
        for r in 0..n {
            d[r] += mono.a[l] * dl[l][r];
            g[r] += mono.a[l] * v.g[l][r];
        }
    }
    Ok((d, g))
}

/// Recompute `(d, g)` of a cluster monomial from its Laurent expansion and
/// compare with the additive formulas.
pub fn monomial_vectors_checked(
    pattern: &mut PrincipalPattern,
    mono: &ClusterMonomial,
) -> Result<(Vec<i64>, Vec<i64>)> {
    let (d, g) = monomial_vectors(pattern, mono)?;
    let n = pattern.n();
    let v = pattern.vertex(&mono.path)?;
    let z = mono.expand(&v);
    let d2 = z.denominator_vector(n)?;
    let btilde = pattern.b0().principal_extension();
    let g2 = g_vector_general(&btilde, &RationalExpr::from_laurent(z.clone()))?;
    if d != d2 || g != g2 {
        return Err(Error::CrossCheckFailure(format!(
            "monomial vectors: sums ({d:?}, {g:?}), expansion ({d2:?}, {g2:?})"
        )));
    }
    if !leading_term_check(&z, &g, &btilde) {
        return Err(Error::CrossCheckFailure("leading-term property fails".into()));
    }
    Ok((d, g))
}

/// `z` contains `x^{(g, 0)}` and every other exponent is that plus a
/// nonnegative combination of the columns of `btilde`.
pub fn leading_term_check(z: &Laurent, g: &[i64], btilde: &ExtendedMatrix) -> bool {
    let m = btilde.m();
    let mut lead = vec![0i32; m];
    for (i, &x) in g.iter().enumerate() {
        lead[i] = x as i32;
    }
    if z.coeff(&lead) == BigInt::from(0) {
        return false;
    }
    z.terms().all(|(e, _)| {
        let diff: Vec<i64> = e.iter().zip(&lead).map(|(&a, &b)| (a - b) as i64).collect();
        matches!(btilde.matrix().solve_integral(&diff), Some(v) if v.iter().all(|&c| c >= 0))
    })
}

/// Outcome of the d/g relation check for one cluster variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgReport {
    pub d: Vec<i64>,
    pub g: Vec<i64>,
    /// `u^{-d-g} = F|_Trop(u)(prod_i u_i^{b0_i1}, ...)`.
    pub proposition: bool,
    /// `u^{-d} = F|_Trop(u)(u_1^{-1}, ...)`; `None` for initial variables.
    pub conjecture: Option<bool>,
}

pub fn d_g_relation_check(pattern: &mut PrincipalPattern, path: &[usize], l: usize) -> Result<DgReport> {
    let n = pattern.n();
    let b0 = pattern.b0().clone();
    let d = d_vector(pattern, path, l)?;
    let v = pattern.vertex(path)?;
    let g = v.g[l].clone();
    let f = &v.f[l];
    let cols: Vec<Vec<i64>> = (0..n).map(|j| b0.matrix().column(j)).collect();
    let lhs: Vec<i64> = (0..n).map(|i| -d[i] - g[i]).collect();
    let proposition = trop_u_multi(f, &cols)? == lhs;
    let initial = (0..n).any(|i| *v.x(l) == Laurent::var(2 * n, i));
    let conjecture = if initial {
        None
    } else {
        let inv: Vec<Vec<i64>> =
            (0..n).map(|j| (0..n).map(|i| if i == j { -1 } else { 0 }).collect()).collect();
        Some(trop_u_multi(f, &inv)? == d.iter().map(|x| -x).collect::<Vec<_>>())
    };
    Ok(DgReport { d, g, proposition, conjecture })
}
