//! Fast kernels for small Laurent polynomials: exponent vectors packed into
//! a `u128` and coefficients in `i128`. Every routine returns `None` when the
//! input does not fit or an intermediate overflows; callers then fall back
//! to the big-integer path.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

const LANES: usize = 8;
const BIAS: i32 = 1 << 15;
/// Inputs are limited so that sums of two exponents stay inside a lane.
const LIMIT: i32 = 1 << 13;

fn bias_all(nvars: usize) -> u128 {
    (0..nvars).fold(0u128, |acc, i| acc | ((BIAS as u128) << (16 * (LANES - 1 - i))))
}

pub fn pack(e: &[i32]) -> Option<u128> {
    if e.len() > LANES {
        return None;
    }
    let mut k = 0u128;
    for (i, &x) in e.iter().enumerate() {
        if !(-LIMIT..LIMIT).contains(&x) {
            return None;
        }
        k |= ((x + BIAS) as u128) << (16 * (LANES - 1 - i));
    }
    Some(k)
}

pub fn unpack(k: u128, nvars: usize) -> Vec<i32> {
    (0..nvars)
        .map(|i| ((k >> (16 * (LANES - 1 - i))) & 0xffff) as i32 - BIAS)
        .collect()
}

pub type Terms = Vec<(u128, i128)>;

pub fn to_packed<'a>(it: impl Iterator<Item = (&'a Vec<i32>, &'a BigInt)>) -> Option<Terms> {
    it.map(|(e, c)| Some((pack(e)?, c.to_i128()?))).collect()
}

/// Product; keys are summed lane-wise and one bias removed. Arithmetic is
/// modulo 2^128, which is exact because every result lane is in range.
pub fn mul(a: &Terms, b: &Terms, nvars: usize) -> Option<Terms> {
    let bias = bias_all(nvars);
    let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
    acc.reserve(a.len().max(b.len()) * 4);
    for &(ea, ca) in a {
        for &(eb, cb) in b {
            let c = ca.checked_mul(cb)?;
            let slot = acc.entry(ea.wrapping_add(eb).wrapping_sub(bias)).or_insert(0);
            *slot = slot.checked_add(c)?;
        }
    }
    let out: Terms = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    // Results must stay packable for the next operation.
    out.iter().all(|&(k, _)| unpack(k, nvars).iter().all(|x| (-LIMIT..LIMIT).contains(x))).then_some(out)
}

fn lane(k: u128, i: usize) -> i32 {
    ((k >> (16 * (LANES - 1 - i))) & 0xffff) as i32 - BIAS
}

fn degree(k: u128, nvars: usize) -> i32 {
    (0..nvars).map(|i| lane(k, i)).sum()
}

/// Quotient boxes up to this many cells are scanned directly.
const BOX_CELLS: u64 = 1 << 24;

/// Exact division by scanning the quotient box in decreasing lex order, which
/// is the order of packed keys. When cell `e` is reached, every quotient term
/// that can touch `e + lt` is already subtracted, so the remainder there is
/// final. The division is exact iff the remainder ends up zero.
fn exact_div_box(num: &Terms, q: &Terms, nvars: usize, lo: &[i32], hi: &[i32]) -> Option<Result<Terms, ()>> {
    let bias = bias_all(nvars);
    let &(lt_e, lt_c) = q.iter().max_by_key(|(k, _)| *k)?;
    let rest: Vec<(u128, i128)> = q.iter().copied().filter(|&(k, _)| k != lt_e).collect();
    let mut rem: FxHashMap<u128, i128> = FxHashMap::default();
    rem.reserve(num.len() * 2);
    for &(k, c) in num {
        rem.insert(k, c);
    }
    let mut quotient = Vec::new();
    let mut e: Vec<i32> = hi.to_vec();
    loop {
        let ek = pack(&e)?;
        let k = ek.wrapping_add(lt_e).wrapping_sub(bias);
        if let Some(&c) = rem.get(&k) {
            if c != 0 {
                if c % lt_c != 0 {
                    return Some(Err(()));
                }
                let qc = c / lt_c;
                rem.insert(k, 0);
                for &(te, tc) in &rest {
                    let slot = rem.entry(ek.wrapping_add(te).wrapping_sub(bias)).or_insert(0);
                    *slot = slot.checked_sub(qc.checked_mul(tc)?)?;
                }
                quotient.push((ek, qc));
            }
        }
        // Odometer step downwards, last lane fastest.
        let mut i = nvars;
        loop {
            if i == 0 {
                return Some(if rem.values().all(|&c| c == 0) { Ok(quotient) } else { Err(()) });
            }
            i -= 1;
            if e[i] > lo[i] {
                e[i] -= 1;
                break;
            }
            e[i] = hi[i];
        }
    }
}

/// Exact division by a polynomial `q` with no monomial factor, in graded-lex
/// order, with quotient exponents confined to `lo..=hi`. `Some(Err(()))`
/// signals a non-exact division.
pub fn exact_div(
    num: &Terms,
    q: &Terms,
    nvars: usize,
    lo: &[i32],
    hi: &[i32],
) -> Option<Result<Terms, ()>> {
    let cells = (0..nvars).try_fold(1u64, |acc, i| acc.checked_mul((hi[i] - lo[i] + 1).max(0) as u64));
    if matches!(cells, Some(c) if c <= BOX_CELLS) {
        return exact_div_box(num, q, nvars, lo, hi);
    }
    let bias = bias_all(nvars);
    let key = |k: u128| (degree(k, nvars), k);
    let &(lt_e, lt_c) = q.iter().max_by_key(|(k, _)| key(*k))?;
    let rest: Vec<(u128, i128)> = q.iter().copied().filter(|&(k, _)| k != lt_e).collect();
    let mut rem: BTreeMap<(i32, u128), i128> = num.iter().map(|&(k, c)| (key(k), c)).collect();
    let mut quotient = Vec::new();
    while let Some(((_, k), c)) = rem.pop_last() {
        // Lane-wise difference; no lane borrows since every lane of both
        // keys is within LIMIT of the bias.
        let ek = k.wrapping_add(bias).wrapping_sub(lt_e);
        let in_box = (0..nvars).all(|i| {
            let x = lane(ek, i);
            lo[i] <= x && x <= hi[i] && (-LIMIT..LIMIT).contains(&x)
        });
        if !in_box || c % lt_c != 0 {
            return Some(Err(()));
        }
        let qc = c / lt_c;
        for &(te, tc) in &rest {
            let kk = key(ek.wrapping_add(te).wrapping_sub(bias));
            let delta = qc.checked_mul(tc)?;
            match rem.entry(kk) {
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() = o.get().checked_sub(delta)?;
                    if *o.get() == 0 {
                        o.remove();
                    }
                }
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(delta.checked_neg()?);
                }
            }
        }
        quotient.push((ek, qc));
    }
    Some(Ok(quotient))
}
