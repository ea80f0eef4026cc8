//! Exchange matrices, seeds and the mutation rules.
//!
//! Directions `k` are 1-based throughout this module's public API.

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{Laurent, Vars};
use crate::matrix::{pos, IntMatrix};
use crate::rational::RationalExpr;
use crate::semifield::{Semifield, Universal};

/// Minimal positive integers `d` with `d_i b_ij = -d_j b_ji`, computed per
/// connected component.
pub fn skew_symmetrizer(b: &IntMatrix) -> Result<Vec<i64>> {
    if !b.is_square() {
        return Err(Error::NotSkewSymmetrizable("matrix is not square".into()));
    }
    let n = b.rows();
    for i in 0..n {
        if b[(i, i)] != 0 {
            return Err(Error::NotSkewSymmetrizable(format!("b[{0}][{0}] != 0", i + 1)));
        }
        for j in 0..n {
            let (x, y) = (b[(i, j)], b[(j, i)]);
            if (x == 0) != (y == 0) || (x != 0 && x.signum() == y.signum()) {
                return Err(Error::NotSkewSymmetrizable(format!(
                    "entries ({},{}) and ({},{}) violate the sign pattern",
                    i + 1,
                    j + 1,
                    j + 1,
                    i + 1
                )));
            }
        }
    }
    let mut d: Vec<Option<Ratio<i64>>> = vec![None; n];
    let mut out = vec![0i64; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(Ratio::from_integer(1));
        let mut comp = vec![root];
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].expect("visited");
            for j in 0..n {
                if b[(i, j)] == 0 {
                    continue;
                }
                // d_j = -d_i b_ij / b_ji
                let dj = di * Ratio::new(-b[(i, j)], b[(j, i)]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        comp.push(j);
                        stack.push(j);
                    }
                    Some(existing) if existing != dj => {
                        return Err(Error::NotSkewSymmetrizable(format!(
                            "inconsistent cycle through index {}",
                            j + 1
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let l = comp.iter().fold(1i64, |l, &i| l.lcm(d[i].expect("set").denom()));
        let ints: Vec<i64> = comp.iter().map(|&i| (d[i].expect("set") * l).to_integer()).collect();
        let g = ints.iter().fold(0i64, |g, &x| g.gcd(&x));
        for (&i, &v) in comp.iter().zip(&ints) {
            out[i] = v / g;
        }
    }
    Ok(out)
}

/// Matrix mutation of an `m x n` matrix in direction `k` (1-based), applied to
/// all rows.
pub fn mutate_matrix(b: &IntMatrix, k: usize) -> IntMatrix {
    let n = b.cols();
    assert!((1..=n).contains(&k), "direction {k} out of range 1..={n}");
    let k = k - 1;
    let mut out = b.clone();
    for i in 0..b.rows() {
        for j in 0..n {
            out[(i, j)] = if i == k || j == k {
                -b[(i, j)]
            } else {
                b[(i, j)] + b[(i, k)].signum() * pos(b[(i, k)] * b[(k, j)])
            };
        }
    }
    debug_assert_eq!(out, mutate_matrix_alt(b, k + 1), "mutation formulas disagree");
    out
}

/// The alternative form `b_ij + [-b_ik]_+ b_kj + b_ik [b_kj]_+`.
fn mutate_matrix_alt(b: &IntMatrix, k: usize) -> IntMatrix {
    let k = k - 1;
    let mut out = b.clone();
    for i in 0..b.rows() {
        for j in 0..b.cols() {
            out[(i, j)] = if i == k || j == k {
                -b[(i, j)]
            } else {
                b[(i, j)] + pos(-b[(i, k)]) * b[(k, j)] + b[(i, k)] * pos(b[(k, j)])
            };
        }
    }
    out
}

/// A skew-symmetrizable square matrix with its symmetrizer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct ExchangeMatrix {
    b: IntMatrix,
    d: Vec<i64>,
}

impl ExchangeMatrix {
    pub fn new(b: IntMatrix) -> Result<Self> {
        let d = skew_symmetrizer(&b)?;
        Ok(ExchangeMatrix { b, d })
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn n(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[(i, j)]
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.d
    }

    pub fn mutate(&self, k: usize) -> ExchangeMatrix {
        let b = mutate_matrix(&self.b, k);
        debug_assert!(
            (0..self.n()).all(|i| (0..self.n())
                .all(|j| self.d[i] * b[(i, j)] == -self.d[j] * b[(j, i)])),
            "symmetrizer not preserved"
        );
        ExchangeMatrix { b, d: self.d.clone() }
    }

    pub fn neg(&self) -> ExchangeMatrix {
        ExchangeMatrix { b: self.b.neg(), d: self.d.clone() }
    }

    pub fn principal_extension(&self) -> ExtendedMatrix {
        ExtendedMatrix { b: self.b.vstack(&IntMatrix::identity(self.n())), n: self.n() }
    }
}

impl TryFrom<IntMatrix> for ExchangeMatrix {
    type Error = Error;
    fn try_from(b: IntMatrix) -> Result<Self> {
        Self::new(b)
    }
}

impl From<ExchangeMatrix> for IntMatrix {
    fn from(e: ExchangeMatrix) -> IntMatrix {
        e.b
    }
}

/// An `m x n` matrix whose top `n x n` block is an exchange matrix; the
/// bottom rows encode geometric coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "IntMatrix", into = "IntMatrix")]
pub struct ExtendedMatrix {
    b: IntMatrix,
    n: usize,
}

impl ExtendedMatrix {
    pub fn new(b: IntMatrix) -> Result<Self> {
        let n = b.cols();
        if b.rows() < n {
            return Err(Error::InvalidInput("extended matrix needs m >= n rows".into()));
        }
        skew_symmetrizer(&b.row_block(0, n))?;
        Ok(ExtendedMatrix { b, n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.b.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.b[(i, j)]
    }

    pub fn principal(&self) -> ExchangeMatrix {
        ExchangeMatrix::new(self.b.row_block(0, self.n)).expect("checked at construction")
    }

    /// The coefficient rows `n+1..m`.
    pub fn coefficient_rows(&self) -> IntMatrix {
        self.b.row_block(self.n, self.m())
    }

    /// Column `j` (0-based) of the coefficient rows.
    pub fn coefficient_column(&self, j: usize) -> Vec<i64> {
        (self.n..self.m()).map(|i| self.b[(i, j)]).collect()
    }

    pub fn mutate(&self, k: usize) -> ExtendedMatrix {
        ExtendedMatrix { b: mutate_matrix(&self.b, k), n: self.n }
    }
}

impl TryFrom<IntMatrix> for ExtendedMatrix {
    type Error = Error;

    fn try_from(b: IntMatrix) -> Result<Self> {
        ExtendedMatrix::new(b)
    }
}

impl From<ExtendedMatrix> for IntMatrix {
    fn from(b: ExtendedMatrix) -> IntMatrix {
        b.b
    }
}

/// A labeled Y-seed `(y, B)` over a semifield.
#[derive(Clone, Debug, PartialEq)]
pub struct YSeed<S: Semifield> {
    pub y: Vec<S::Value>,
    pub b: ExchangeMatrix,
}

impl<S: Semifield> YSeed<S> {
    pub fn new(y: Vec<S::Value>, b: ExchangeMatrix) -> Result<Self> {
        if y.len() != b.n() {
            return Err(Error::InvalidInput("y-tuple length must equal n".into()));
        }
        Ok(YSeed { y, b })
    }

    /// `y'_k = y_k^{-1}`, `y'_j = y_j y_k^{[b_kj]_+} (y_k ⊕ 1)^{-b_kj}`.
    pub fn mutate(&self, k: usize, sf: &S) -> YSeed<S> {
        let n = self.b.n();
        assert!((1..=n).contains(&k), "direction {k} out of range 1..={n}");
        let kk = k - 1;
        let yk = &self.y[kk];
        let yk_plus_one = sf.oplus(yk, &sf.one());
        let y = (0..n)
            .map(|j| {
                if j == kk {
                    return sf.inv(yk);
                }
                let bkj = self.b.get(kk, j);
                if bkj == 0 {
                    return self.y[j].clone();
                }
                let t = sf.mul(&self.y[j], &sf.pow(yk, pos(bkj)));
                sf.mul(&t, &sf.pow(&yk_plus_one, -bkj))
            })
            .collect();
        YSeed { y, b: self.b.mutate(k) }
    }

    pub fn walk(&self, path: &[usize], sf: &S) -> YSeed<S> {
        path.iter().fold(self.clone(), |s, &k| s.mutate(k, sf))
    }
}

/// Free-function form of [`YSeed::mutate`].
pub fn mutate_y<S: Semifield>(ys: &YSeed<S>, k: usize, sf: &S) -> YSeed<S> {
    ys.mutate(k, sf)
}

/// A seed of geometric type: cluster variables are Laurent polynomials in the
/// `m` ambient variables `x_1..x_m`, where `x_{n+1}..x_m` are frozen.
#[derive(Clone, Debug, PartialEq)]
pub struct GeometricSeed {
    pub x: Vec<Laurent>,
    pub btilde: ExtendedMatrix,
}

impl GeometricSeed {
    pub fn initial(btilde: ExtendedMatrix) -> Self {
        let m = btilde.m();
        let x = (0..btilde.n()).map(|i| Laurent::var(m, i)).collect();
        GeometricSeed { x, btilde }
    }

    pub fn n(&self) -> usize {
        self.btilde.n()
    }

    pub fn m(&self) -> usize {
        self.btilde.m()
    }

    /// `x1..xn` followed by frozen names `x{n+1}..xm`.
    pub fn default_vars(&self) -> Vars {
        Vars::indexed("x", self.m())
    }

    /// The value of ambient slot `i`: a cluster variable for `i < n`, a
    /// frozen generator otherwise.
    fn slot(&self, i: usize) -> Laurent {
        if i < self.n() {
            self.x[i].clone()
        } else {
            Laurent::var(self.m(), i)
        }
    }

    /// The two monomials of the exchange relation in direction `k` (1-based):
    /// `(prod x_i^{[b_ik]_+}, prod x_i^{[-b_ik]_+})`.
    pub fn exchange_monomials(&self, k: usize) -> (Laurent, Laurent) {
        let kk = k - 1;
        let m = self.m();
        let mut plus = Laurent::one(m);
        let mut minus = Laurent::one(m);
        for i in 0..m {
            let b = self.btilde.get(i, kk);
            if b > 0 {
                plus = &plus * &self.slot(i).pow(b as u32);
            } else if b < 0 {
                minus = &minus * &self.slot(i).pow((-b) as u32);
            }
        }
        (plus, minus)
    }

    pub fn mutate(&self, k: usize) -> Result<GeometricSeed> {
        let n = self.n();
        if !(1..=n).contains(&k) {
            return Err(Error::InvalidInput(format!("direction {k} out of range 1..={n}")));
        }
        let (plus, minus) = self.exchange_monomials(k);
        let new_xk = (&plus + &minus).exact_div(&self.x[k - 1])?;
        let mut x = self.x.clone();
        x[k - 1] = new_xk;
        Ok(GeometricSeed { x, btilde: self.btilde.mutate(k) })
    }

    pub fn walk(&self, path: &[usize]) -> Result<GeometricSeed> {
        path.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// Free-function form of [`GeometricSeed::mutate`].
pub fn mutate_seed_geometric(seed: &GeometricSeed, k: usize) -> Result<GeometricSeed> {
    seed.mutate(k)
}

pub const ORACLE_MAX_RANK: usize = 3;
pub const ORACLE_MAX_STEPS: usize = 8;

/// Independent oracle: the general exchange relation evaluated literally over
/// rational functions in `x_1..x_n, y_1..y_n` with universal coefficients.
#[derive(Clone, Debug)]
pub struct RationalOracleSeed {
    pub x: Vec<RationalExpr>,
    pub ys: YSeed<Universal>,
    pub steps: usize,
    sf: Universal,
}

impl RationalOracleSeed {
    pub fn initial(b: &ExchangeMatrix) -> Result<Self> {
        let n = b.n();
        if n > ORACLE_MAX_RANK {
            return Err(Error::SizeGuardExceeded(format!("rank {n} > {ORACLE_MAX_RANK}")));
        }
        let sf = Universal::new(Vars::indexed("y", n));
        let x = (0..n).map(|i| RationalExpr::var(2 * n, i)).collect();
        let y = (0..n).map(|j| sf.generator(j)).collect();
        Ok(RationalOracleSeed { x, ys: YSeed::new(y, b.clone())?, steps: 0, sf })
    }

    pub fn vars(&self) -> Vars {
        Vars::principal(self.x.len())
    }

    pub fn semifield(&self) -> &Universal {
        &self.sf
    }

    /// A coefficient value moved into the ambient ring `(x, y)`.
    pub fn embed_y(&self, v: &RationalExpr) -> RationalExpr {
        let n = self.x.len();
        let map: Vec<Option<usize>> = (0..n).map(|j| Some(n + j)).collect();
        v.reindex(2 * n, &map).expect("nonzero denominator")
    }

    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.x.len();
        if self.steps >= ORACLE_MAX_STEPS {
            return Err(Error::SizeGuardExceeded(format!(
                "path length exceeds {ORACLE_MAX_STEPS}"
            )));
        }
        if !(1..=n).contains(&k) {
            return Err(Error::InvalidInput(format!("direction {k} out of range 1..={n}")));
        }
        let kk = k - 1;
        let one = RationalExpr::one(2 * n);
        let mut plus = one.clone();
        let mut minus = one.clone();
        for i in 0..n {
            let b = self.ys.b.get(i, kk);
            if b > 0 {
                plus = plus.mul(&self.x[i].pow(b)?);
            } else if b < 0 {
                minus = minus.mul(&self.x[i].pow(-b)?);
            }
        }
        let yk = self.embed_y(self.ys.y[kk].expr());
        let num = yk.mul(&plus).add(&minus);
        let den = yk.add(&one).mul(&self.x[kk]);
        let mut x = self.x.clone();
        x[kk] = num.div(&den)?;
        Ok(RationalOracleSeed {
            x,
            ys: self.ys.mutate(k, &self.sf),
            steps: self.steps + 1,
            sf: self.sf.clone(),
        })
    }

    pub fn walk(&self, path: &[usize]) -> Result<Self> {
        path.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }
}

/// Free-function form of [`RationalOracleSeed::mutate`].
pub fn mutate_seed_rational_oracle(seed: &RationalOracleSeed, k: usize) -> Result<RationalOracleSeed> {
    seed.mutate(k)
}

/// Signs `ε(i) ∈ {+1, -1}`.
pub type SignFunction = Vec<i64>;

/// `a_ii = 2`, `a_ij = -|b_ij|`.
pub fn cartan_counterpart(b: &ExchangeMatrix) -> IntMatrix {
    let n = b.n();
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = if i == j { 2 } else { -b.get(i, j).abs() };
        }
    }
    a
}

/// The sign function of a bipartite `B`: `b_ij > 0` forces `ε(i) = 1` and
/// `ε(j) = -1`. Isolated indices get `+1`. `None` if `B` is not bipartite.
pub fn bipartite_sign(b: &ExchangeMatrix) -> Option<SignFunction> {
    let n = b.n();
    let mut eps = vec![0i64; n];
    for i in 0..n {
        for j in 0..n {
            let v = b.get(i, j);
            if v == 0 {
                continue;
            }
            let want = if v > 0 { 1 } else { -1 };
            if eps[i] != 0 && eps[i] != want {
                return None;
            }
            eps[i] = want;
        }
    }
    for e in eps.iter_mut() {
        if *e == 0 {
            *e = 1;
        }
    }
    Some(eps)
}

pub fn cartan_counterpart_and_sign(b: &ExchangeMatrix) -> (IntMatrix, Option<SignFunction>) {
    (cartan_counterpart(b), bipartite_sign(b))
}

/// 2-colouring of the Coxeter graph of a Cartan matrix, with `ε = +1` on the
/// least index of each component. `None` if the graph has an odd cycle.
pub fn coxeter_graph_sign(a: &IntMatrix) -> Option<SignFunction> {
    let n = a.rows();
    let mut eps = vec![0i64; n];
    for root in 0..n {
        if eps[root] != 0 {
            continue;
        }
        eps[root] = 1;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || a[(i, j)] == 0 {
                    continue;
                }
                if eps[j] == 0 {
                    eps[j] = -eps[i];
                    stack.push(j);
                } else if eps[j] == eps[i] {
                    return None;
                }
            }
        }
    }
    Some(eps)
}

/// The bipartite exchange matrix `b_ij = -ε(i) a_ij` (`i ≠ j`).
pub fn bipartite_exchange(a: &IntMatrix, eps: &[i64]) -> Result<ExchangeMatrix> {
    let n = a.rows();
    let mut b = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                b[(i, j)] = -eps[i] * a[(i, j)];
            }
        }
    }
    ExchangeMatrix::new(b)
}

/// Symmetrizer of a Cartan matrix: minimal positive `d` with `d_i a_ij = d_j a_ji`.
pub fn cartan_symmetrizer(a: &IntMatrix) -> Result<Vec<i64>> {
    let n = a.rows();
    let mut b = IntMatrix::zeros(n, n);
    let eps = coxeter_graph_sign(a);
    // Any orientation works; use a sign-twisted copy that is skew-symmetric
    // in shape when the graph is bipartite, and fall back to a direct solve.
    if let Some(eps) = eps {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    b[(i, j)] = -eps[i] * a[(i, j)];
                }
            }
        }
        return skew_symmetrizer(&b);
    }
    for i in 0..n {
        for j in 0..n {
            if i < j {
                b[(i, j)] = -a[(i, j)];
            } else if i > j {
                b[(i, j)] = a[(i, j)];
            }
        }
    }
    skew_symmetrizer(&b).map_err(|_| Error::InvalidInput("Cartan matrix is not symmetrizable".into()))
}

/// Cartan matrix of a named type: `A<n>`, `B<n>`, `C<n>`, `D<n>`, `E6`, `E7`,
/// `E8`, `F4`, `G2`, `A1xA1`, or `rank2:b,c`. Convention:
/// `s_i(α_j) = α_j - a_ij α_i`; in `B_n` the last simple root is short.
pub fn named_cartan(name: &str) -> Result<IntMatrix> {
    let bad = || Error::InvalidInput(format!("unknown type {name:?}"));
    if let Some(rest) = name.strip_prefix("rank2:") {
        let parts: Vec<i64> = rest
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        if parts.len() != 2 || parts.iter().any(|&x| x < 0) || (parts[0] == 0) != (parts[1] == 0) {
            return Err(bad());
        }
        return IntMatrix::from_rows(&[vec![2, -parts[0]], vec![-parts[1], 2]]);
    }
    if name == "A1xA1" {
        return IntMatrix::from_rows(&[vec![2, 0], vec![0, 2]]);
    }
    let (family, rank) = name.split_at(1);
    let n: usize = rank.parse().map_err(|_| bad())?;
    let mut a = IntMatrix::identity(n);
    for i in 0..n {
        a[(i, i)] = 2;
    }
    let chain = |a: &mut IntMatrix| {
        for i in 0..n.saturating_sub(1) {
            a[(i, i + 1)] = -1;
            a[(i + 1, i)] = -1;
        }
    };
    match (family, n) {
        ("A", 1..) => chain(&mut a),
        ("B", 2..) => {
            chain(&mut a);
            a[(n - 1, n - 2)] = -2;
        }
        ("C", 2..) => {
            chain(&mut a);
            a[(n - 2, n - 1)] = -2;
        }
        ("D", 4..) => {
            chain(&mut a);
            a[(n - 1, n - 2)] = 0;
            a[(n - 2, n - 1)] = 0;
            a[(n - 1, n - 3)] = -1;
            a[(n - 3, n - 1)] = -1;
        }
        ("E", 6..=8) => {
            // Bourbaki numbering: 1-3-4-5-6(-7(-8)), with 2 attached to 4.
            let mut edges = vec![(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)];
            if n >= 7 {
                edges.push((6, 7));
            }
            if n == 8 {
                edges.push((7, 8));
            }
            for (i, j) in edges {
                a[(i - 1, j - 1)] = -1;
                a[(j - 1, i - 1)] = -1;
            }
        }
        ("F", 4) => {
            chain(&mut a);
            a[(2, 1)] = -2;
        }
        ("G", 2) => {
            a[(0, 1)] = -1;
            a[(1, 0)] = -3;
        }
        _ => return Err(bad()),
    }
    Ok(a)
}

/// Cartan matrix of the affine type `A_{n-1}^{(1)}`: an `n`-cycle.
pub fn affine_a_cartan(n: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(n, n);
    for i in 0..n {
        a[(i, i)] = 2;
        let j = (i + 1) % n;
        a[(i, j)] -= 1;
        a[(j, i)] -= 1;
    }
    a
}

/// The bipartite exchange matrix of a named type, with the sign convention of
/// [`coxeter_graph_sign`].
pub fn named_exchange(name: &str) -> Result<ExchangeMatrix> {
    let a = named_cartan(name)?;
    let eps = coxeter_graph_sign(&a).ok_or_else(|| Error::NotBipartite(name.into()))?;
    bipartite_exchange(&a, &eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semifield::{Tropical, UniversalValue};

    fn em(rows: &[&[i64]]) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn symmetrizers() {
        assert_eq!(em(&[&[0, 1], &[-1, 0]]).symmetrizer(), &[1, 1]);
        assert_eq!(em(&[&[0, 1], &[-2, 0]]).symmetrizer(), &[2, 1]);
        let bad = IntMatrix::from_rows(&[vec![0, 1], vec![2, 0]]).unwrap();
        assert!(matches!(skew_symmetrizer(&bad), Err(Error::NotSkewSymmetrizable(_))));
    }

    #[test]
    fn a2_matrix_mutation() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        assert_eq!(b.mutate(2).matrix().to_rows(), vec![vec![0, -1], vec![1, 0]]);
        let bt = b.principal_extension().mutate(2);
        assert_eq!(bt.matrix().to_rows(), vec![vec![0, -1], vec![1, 0], vec![1, 0], vec![0, -1]]);
        assert_eq!(b.mutate(1).mutate(1), b);
    }

    #[test]
    fn y_mutation_tropical_and_universal() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        let t = Tropical::new(Vars::indexed("y", 2));
        let ys = YSeed::new(vec![t.generator(0), t.generator(1)], b.clone()).unwrap();
        let m = ys.mutate(2, &t);
        assert_eq!(m.y, vec![t.monomial(vec![1, 0]), t.monomial(vec![0, -1])]);
        assert_eq!(m.mutate(2, &t), ys);
        let u = Universal::new(Vars::indexed("y", 2));
        let ys = YSeed::new(vec![u.generator(0), u.generator(1)], b).unwrap();
        let m = ys.mutate(2, &u);
        let text: Vec<String> = m.y.iter().map(UniversalValue::to_text).collect();
        assert_eq!(text, vec!["y1*y2 + y1", "1 / y2"]);
    }

    #[test]
    fn geometric_a2_principal() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        let s0 = GeometricSeed::initial(b.principal_extension());
        let v = Vars::principal(2);
        let s1 = s0.mutate(2).unwrap();
        assert_eq!(s1.x[1].to_fraction_text(&v), "(x1*y2 + 1) / x2");
        let s2 = s1.mutate(1).unwrap();
        assert_eq!(s2.x[0].to_fraction_text(&v), "(x1*y1*y2 + x2 + y1) / (x1*x2)");
        assert_eq!(s1.mutate(2).unwrap(), s0);
    }

    #[test]
    fn oracle_a2() {
        let b = em(&[&[0, 1], &[-1, 0]]);
        let o = RationalOracleSeed::initial(&b).unwrap();
        let v = o.vars();
        let o1 = o.mutate(2).unwrap();
        let want = crate::parse::parse_rational("(x1*y2 + 1)/(x2*(y2 + 1))", &v).unwrap();
        assert_eq!(o1.x[1], want);
        assert_eq!(o1.mutate(2).unwrap().x, o.x);
        let o2 = o1.mutate(1).unwrap();
        let want =
            crate::parse::parse_rational("(x1*y1*y2 + y1 + x2)/((y1*y2 + y1 + 1)*x1*x2)", &v)
                .unwrap();
        assert_eq!(o2.x[0], want);
        let long = o.walk(&[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert!(matches!(long.mutate(1), Err(Error::SizeGuardExceeded(_))));
    }

    #[test]
    fn cartan_and_sign() {
        let (a, eps) = cartan_counterpart_and_sign(&em(&[&[0, 1], &[-1, 0]]));
        assert_eq!(a.to_rows(), vec![vec![2, -1], vec![-1, 2]]);
        assert_eq!(eps, Some(vec![1, -1]));
        let cyc = em(&[&[0, 1, -1], &[-1, 0, 1], &[1, -1, 0]]);
        assert_eq!(bipartite_sign(&cyc), None);
        let z = em(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        let (a, eps) = cartan_counterpart_and_sign(&z);
        assert_eq!(a.to_rows(), vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        assert_eq!(eps, Some(vec![1, 1, 1]));
    }

    #[test]
    fn named_types() {
        assert_eq!(named_exchange("A2").unwrap().matrix().to_rows(), vec![vec![0, 1], vec![-1, 0]]);
        let b2 = named_exchange("B2").unwrap();
        assert_eq!(b2.matrix().to_rows(), vec![vec![0, 1], vec![-2, 0]]);
        assert_eq!(b2.symmetrizer(), &[2, 1]);
        for name in ["A1", "A3", "B3", "C3", "D4", "E6", "E7", "E8", "F4", "G2", "A1xA1", "rank2:2,2"] {
            let b = named_exchange(name).unwrap();
            let a = named_cartan(name).unwrap();
            assert_eq!(cartan_counterpart(&b), a, "{name}");
            assert_eq!(cartan_symmetrizer(&a).unwrap(), b.symmetrizer(), "{name}");
        }
    }
}
