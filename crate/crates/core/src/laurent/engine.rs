//! Pruned expansion of products of one-dimensional Laurent factors.
//!
//! Every weight in this crate is a product of factors `F(x^v)` where `x^v` is
//! a Laurent monomial (usually `x_i / x_j` or `x_i^{±1}`) and `F` is a short
//! Laurent polynomial with coefficients in `Z[q, q^-1]`. Only coefficients
//! whose exponent vectors land in a target box are wanted, so the expansion
//! keeps a term only while the factors still to come can carry it into the
//! box.
//!
//! Exponent vectors are packed into biased bit fields of a `u128`; shifting
//! a whole sorted term list by a fixed monomial is then one integer addition
//! per term and preserves order, so multiplying by a factor is a k-way merge.
//! Coefficients are dense `q`-vectors over `i128` when the l1 norm of the
//! product provably fits, and over `BigInt` otherwise.

use std::collections::BTreeMap;

use log::debug;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::{Exps, QPoly};
use crate::error::{Error, Result};

/// Sparse direction `v`: `(variable, exponent)` with the first exponent positive.
pub type Dir = Vec<(usize, i32)>;

/// A direction with its `(exponent, coefficient)` list.
type Factor = (Dir, Vec<(i32, QPoly)>);

/// A product of factors grouped by direction.
#[derive(Clone, Debug)]
pub struct Product {
    nvars: usize,
    lines: BTreeMap<Dir, BTreeMap<i32, QPoly>>,
}

/// Expansion switches.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ExpandOptions {
    /// Drop one variable whose target is exactly zero, using homogeneity of
    /// degree zero. Ignored when the product is not homogeneous.
    pub dehomogenize: bool,
}

fn canonical(dir: &[(usize, i32)]) -> (Dir, i32) {
    let mut d: Dir = dir.iter().copied().filter(|&(_, e)| e != 0).collect();
    d.sort_unstable();
    let sign = match d.first() {
        Some(&(_, e)) if e < 0 => -1,
        _ => 1,
    };
    for x in d.iter_mut() {
        x.1 *= sign;
    }
    (d, sign)
}

fn line_mul(a: &BTreeMap<i32, QPoly>, b: &BTreeMap<i32, QPoly>) -> BTreeMap<i32, QPoly> {
    let mut out: BTreeMap<i32, QPoly> = BTreeMap::new();
    for (ra, ca) in a {
        for (rb, cb) in b {
            let e = out.entry(ra + rb).or_default();
            *e = &*e + &(ca * cb);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl Product {
    pub fn new(nvars: usize) -> Self {
        Product {
            nvars,
            lines: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of distinct directions.
    pub fn line_count(&self) -> usize {
        self.lines.len()
    }

    /// Multiply by `sum_r terms[r] * (x^dir)^r`.
    pub fn push_line(&mut self, dir: &[(usize, i32)], terms: BTreeMap<i32, QPoly>) {
        let (d, sign) = canonical(dir);
        let terms: BTreeMap<i32, QPoly> = terms
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (r * sign, c))
            .collect();
        if d.is_empty() {
            let c: QPoly = terms.values().fold(QPoly::zero(), |a, b| &a + b);
            self.push_scalar(c);
            return;
        }
        let slot = self.lines.entry(d).or_insert_with(|| {
            let mut one = BTreeMap::new();
            one.insert(0, QPoly::one());
            one
        });
        *slot = line_mul(slot, &terms);
    }

    /// Multiply by a constant.
    pub fn push_scalar(&mut self, c: QPoly) {
        let mut t = BTreeMap::new();
        t.insert(0, c);
        let slot = self.lines.entry(Vec::new()).or_insert_with(|| {
            let mut one = BTreeMap::new();
            one.insert(0, QPoly::one());
            one
        });
        *slot = line_mul(slot, &t);
    }

    /// Multiply by `1 + c q^k x^dir`.
    pub fn push_binomial(&mut self, dir: &[(usize, i32)], c: i64, k: i64) {
        let mut t = BTreeMap::new();
        t.insert(0, QPoly::one());
        t.insert(1, QPoly::monomial(BigInt::from(c), k));
        self.push_line(dir, t);
    }

    /// Multiply by `(s q^k x^dir; q)_len`, where `s = ±1`.
    pub fn push_poch(&mut self, dir: &[(usize, i32)], s: i64, k: i64, len: usize) {
        for l in 0..len as i64 {
            self.push_binomial(dir, -s, k + l);
        }
    }

    fn factor_list(&self) -> (Vec<Factor>, QPoly) {
        let mut scalar = QPoly::one();
        let mut out = Vec::new();
        for (d, t) in &self.lines {
            if d.is_empty() {
                for c in t.values() {
                    scalar = &scalar * c;
                }
            } else {
                out.push((d.clone(), t.iter().map(|(r, c)| (*r, c.clone())).collect()));
            }
        }
        (out, scalar)
    }

    fn is_degree_zero(&self) -> bool {
        self.lines.keys().all(|d| d.iter().map(|&(_, e)| e).sum::<i32>() == 0)
    }

    /// Constant term of the product.
    pub fn constant_term(&self, opts: ExpandOptions) -> Result<QPoly> {
        let target = vec![(0, 0); self.nvars];
        let out = self.expand(&target, opts)?;
        Ok(out.into_iter().next().map(|(_, c)| c).unwrap_or_default())
    }

    /// Full expansion with no pruning.
    pub fn expand_all(&self) -> Result<Vec<(Exps, QPoly)>> {
        let (factors, _) = self.factor_list();
        let mut lo = vec![0; self.nvars];
        let mut hi = vec![0; self.nvars];
        for (d, t) in &factors {
            let (rmin, rmax) = (t.first().unwrap().0, t.last().unwrap().0);
            for &(v, e) in d {
                lo[v] += (rmin * e).min(rmax * e);
                hi[v] += (rmin * e).max(rmax * e);
            }
        }
        let target: Vec<(i32, i32)> = lo.into_iter().zip(hi).collect();
        self.expand(&target, ExpandOptions::default())
    }

    /// Coefficients of all monomials whose exponents lie in `target`
    /// (inclusive per-variable ranges), sorted by exponent vector.
    pub fn expand(&self, target: &[(i32, i32)], opts: ExpandOptions) -> Result<Vec<(Exps, QPoly)>> {
        if target.len() != self.nvars {
            return Err(Error::ExponentLength {
                expected: self.nvars,
                found: target.len(),
            });
        }
        if opts.dehomogenize && self.is_degree_zero() {
            if let Some(d) = (0..self.nvars).rev().find(|&i| target[i] == (0, 0)) {
                return self.expand_dehomogenized(d, target);
            }
        }
        let (factors, scalar) = self.factor_list();
        if scalar.is_zero() {
            return Ok(Vec::new());
        }
        let order = elimination_order(self.nvars, &factors, target);
        let factors: Vec<_> = order.into_iter().map(|i| factors[i].clone()).collect();
        let bound: f64 = factors
            .iter()
            .map(|(_, t)| {
                let l1: BigInt = t.iter().map(|(_, c)| c.l1_norm()).sum();
                l1.to_f64().unwrap_or(f64::INFINITY).log2()
            })
            .sum::<f64>()
            + scalar.l1_norm().to_f64().unwrap_or(f64::INFINITY).log2();
        let raw = if bound < 125.0 {
            run::<i128>(self.nvars, &factors, target)?
        } else {
            debug!("product engine: l1 bound 2^{bound:.1}, using BigInt coefficients");
            run::<BigInt>(self.nvars, &factors, target)?
        };
        Ok(raw
            .into_iter()
            .map(|(e, c)| (e, &c * &scalar))
            .filter(|(_, c)| !c.is_zero())
            .collect())
    }

    fn expand_dehomogenized(&self, d: usize, target: &[(i32, i32)]) -> Result<Vec<(Exps, QPoly)>> {
        let mut reduced = Product::new(self.nvars - 1);
        let remap = |v: usize| if v > d { v - 1 } else { v };
        for (dir, t) in &self.lines {
            let nd: Dir = dir
                .iter()
                .filter(|&&(v, _)| v != d)
                .map(|&(v, e)| (remap(v), e))
                .collect();
            reduced.push_line(&nd, t.clone());
        }
        // The dropped exponent is minus the sum of the others, so only the
        // sum range it allows has to be kept.
        let mut rt: Vec<(i32, i32)> = target.to_vec();
        rt.remove(d);
        let out = reduced.expand(&rt, ExpandOptions::default())?;
        let (tlo, thi) = target[d];
        Ok(out
            .into_iter()
            .filter_map(|(mut e, c)| {
                let ed = -e.iter().sum::<i32>();
                (tlo..=thi).contains(&ed).then(|| {
                    e.insert(d, ed);
                    (e, c)
                })
            })
            .collect())
    }
}

/// Greedy vertex elimination: close variables with the narrowest target
/// first, taking every remaining factor that touches the chosen variable.
fn elimination_order(nvars: usize, factors: &[(Dir, Vec<(i32, QPoly)>)], target: &[(i32, i32)]) -> Vec<usize> {
    let mut used = vec![false; factors.len()];
    let mut active = vec![false; nvars];
    let mut order = Vec::with_capacity(factors.len());
    let mut closed = vec![false; nvars];
    while order.len() < factors.len() {
        let pick = (0..nvars)
            .filter(|&v| !closed[v])
            .filter(|&v| {
                factors
                    .iter()
                    .enumerate()
                    .any(|(i, (d, _))| !used[i] && d.iter().any(|&(x, _)| x == v))
            })
            .min_by_key(|&v| {
                let width = target[v].1 - target[v].0;
                let touching = factors
                    .iter()
                    .enumerate()
                    .filter(|(i, (d, _))| !used[*i] && d.iter().any(|&(x, _)| x == v))
                    .count();
                (width, touching, v)
            })
            .expect("a variable touches the remaining factors");
        closed[pick] = true;
        let mut group: Vec<usize> = (0..factors.len())
            .filter(|&i| !used[i] && factors[i].0.iter().any(|&(x, _)| x == pick))
            .collect();
        group.sort_by_key(|&i| {
            let d = &factors[i].0;
            let fresh = d.iter().filter(|&&(x, _)| x != pick && !active[x]).count();
            (d.len(), fresh, d.clone())
        });
        for i in group {
            used[i] = true;
            for &(x, _) in &factors[i].0 {
                active[x] = true;
            }
            order.push(i);
        }
    }
    order
}

trait Num: Clone + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_big(b: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;
    fn mul_add(&mut self, a: &Self, b: &Self);
}

impl Num for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_big(b: &BigInt) -> Self {
        b.to_i128().expect("factor coefficient fits i128")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    #[inline]
    fn mul_add(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

impl Num for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_big(b: &BigInt) -> Self {
        b.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn mul_add(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }
}

/// Terms sorted by packed key; coefficient `i` is `data[starts[i]..starts[i+1]]`
/// times `q^lows[i]`.
struct State<N> {
    keys: Vec<u128>,
    lows: Vec<i32>,
    starts: Vec<usize>,
    data: Vec<N>,
}

impl<N: Num> State<N> {
    fn with_capacity(n: usize) -> Self {
        let mut starts = Vec::with_capacity(n + 1);
        starts.push(0);
        State {
            keys: Vec::with_capacity(n),
            lows: Vec::with_capacity(n),
            starts,
            data: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.keys.len()
    }

    fn coeff(&self, i: usize) -> &[N] {
        &self.data[self.starts[i]..self.starts[i + 1]]
    }

    /// Append a term from a scratch buffer covering `q^low ..`, trimming zeros.
    fn push_trimmed(&mut self, key: u128, low: i32, buf: &[N]) {
        let Some(first) = buf.iter().position(|c| !c.is_zero()) else {
            return;
        };
        let last = buf.iter().rposition(|c| !c.is_zero()).unwrap();
        self.keys.push(key);
        self.lows.push(low + first as i32);
        self.data.extend_from_slice(&buf[first..=last]);
        self.starts.push(self.data.len());
    }
}

struct Packing {
    width: u32,
    bias: i64,
}

impl Packing {
    fn field(&self, key: u128, v: usize) -> i32 {
        let mask = (1u128 << self.width) - 1;
        (((key >> (v as u32 * self.width)) & mask) as i64 - self.bias) as i32
    }

    fn pack(&self, e: &[i32]) -> u128 {
        e.iter().enumerate().fold(0u128, |acc, (v, &x)| {
            acc | (((x as i64 + self.bias) as u128) << (v as u32 * self.width))
        })
    }

    fn offset(&self, dir: &Dir, r: i32) -> u128 {
        let mut off: i128 = 0;
        for &(v, e) in dir {
            off += ((r * e) as i128) << (v as u32 * self.width);
        }
        off as u128
    }
}

fn run<N: Num>(
    nvars: usize,
    factors: &[(Dir, Vec<(i32, QPoly)>)],
    target: &[(i32, i32)],
) -> Result<Vec<(Exps, QPoly)>> {
    let nf = factors.len();
    // rem_lo[s][v], rem_hi[s][v]: exponent reach of factors s.. on variable v.
    let mut rem_lo = vec![vec![0i32; nvars]; nf + 1];
    let mut rem_hi = vec![vec![0i32; nvars]; nf + 1];
    for s in (0..nf).rev() {
        rem_lo[s] = rem_lo[s + 1].clone();
        rem_hi[s] = rem_hi[s + 1].clone();
        let (d, t) = &factors[s];
        let (rmin, rmax) = (t.first().unwrap().0, t.last().unwrap().0);
        for &(v, e) in d {
            rem_lo[s][v] += (rmin * e).min(rmax * e);
            rem_hi[s][v] += (rmin * e).max(rmax * e);
        }
    }
    let mut span: i64 = 1;
    for v in 0..nvars {
        let a = (target[v].0 as i64 - rem_hi[0][v] as i64).abs();
        let b = (target[v].1 as i64 - rem_lo[0][v] as i64).abs();
        span = span
            .max(a)
            .max(b)
            .max(target[v].0.abs() as i64)
            .max(target[v].1.abs() as i64);
    }
    let width = 64 - (2 * span + 1).leading_zeros() + 1;
    if nvars as u32 * width > 128 {
        return Err(Error::ExponentRange(span));
    }
    let pk = Packing {
        width,
        bias: 1i64 << (width - 1),
    };
    // Allowed exponent window for variable v once factors 0..s are applied.
    let allowed = |s: usize, v: usize| (target[v].0 - rem_hi[s][v], target[v].1 - rem_lo[s][v]);

    if (0..nvars).any(|v| {
        let (lo, hi) = allowed(0, v);
        lo > 0 || hi < 0
    }) {
        return Ok(Vec::new());
    }
    let mut state: State<N> = State::with_capacity(1);
    state.push_trimmed(pk.pack(&vec![0; nvars]), 0, &[N::from_big(&BigInt::one())]);

    let mut scratch: Vec<N> = Vec::new();
    for (s, (dir, terms)) in factors.iter().enumerate() {
        let coeffs: Vec<(u128, i32, Vec<N>)> = terms
            .iter()
            .map(|(r, c)| {
                (
                    pk.offset(dir, *r),
                    c.low() as i32,
                    c.coeffs().iter().map(N::from_big).collect(),
                )
            })
            .collect();
        let windows: Vec<(usize, i32, i32)> = dir
            .iter()
            .map(|&(v, _)| {
                let (lo, hi) = allowed(s + 1, v);
                (v, lo, hi)
            })
            .collect();
        let k = coeffs.len();
        let mut cursor = vec![0usize; k];
        let mut hits = vec![usize::MAX; k];
        let mut next = State::with_capacity(state.len() * 2);
        loop {
            let mut min: Option<u128> = None;
            for j in 0..k {
                if cursor[j] < state.len() {
                    let key = state.keys[cursor[j]].wrapping_add(coeffs[j].0);
                    if min.is_none_or(|m| key < m) {
                        min = Some(key);
                    }
                }
            }
            let Some(key) = min else { break };
            let keep = windows.iter().all(|&(v, lo, hi)| {
                let x = pk.field(key, v);
                lo <= x && x <= hi
            });
            let mut low = i32::MAX;
            let mut high = i32::MIN;
            hits.fill(usize::MAX);
            for j in 0..k {
                if cursor[j] < state.len() && state.keys[cursor[j]].wrapping_add(coeffs[j].0) == key {
                    if keep {
                        let i = cursor[j];
                        let len = (state.starts[i + 1] - state.starts[i]) as i32;
                        let l = state.lows[i] + coeffs[j].1;
                        low = low.min(l);
                        high = high.max(l + len + coeffs[j].2.len() as i32 - 2);
                        hits[j] = i;
                    }
                    cursor[j] += 1;
                }
            }
            if !keep {
                continue;
            }
            scratch.clear();
            scratch.resize((high - low + 1) as usize, N::zero());
            for j in 0..k {
                let i = hits[j];
                if i == usize::MAX {
                    continue;
                }
                let base = (state.lows[i] + coeffs[j].1 - low) as usize;
                let src = state.coeff(i);
                for (a, ca) in coeffs[j].2.iter().enumerate() {
                    if ca.is_zero() {
                        continue;
                    }
                    for (b, cb) in src.iter().enumerate() {
                        scratch[base + a + b].mul_add(ca, cb);
                    }
                }
            }
            next.push_trimmed(key, low, &scratch);
        }
        state = next;
        if state.len() == 0 {
            return Ok(Vec::new());
        }
    }
    let mut out = Vec::with_capacity(state.len());
    for i in 0..state.len() {
        let e: Exps = (0..nvars).map(|v| pk.field(state.keys[i], v)).collect();
        let c = QPoly::new(state.lows[i] as i64, state.coeff(i).iter().map(N::to_big).collect());
        out.push((e, c));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dyson(n: usize, lam: usize) -> Product {
        let mut p = Product::new(n);
        for j in 0..n {
            for k in j + 1..n {
                p.push_poch(&[(j, 1), (k, -1)], 1, 0, lam);
                p.push_poch(&[(k, 1), (j, -1)], 1, 1, lam);
            }
        }
        p
    }

    #[test]
    fn two_variable_andrews_weight() {
        let p = dyson(2, 1);
        let all = p.expand_all().unwrap();
        let text: Vec<String> = all.iter().map(|(e, c)| format!("{e:?}:{c}")).collect();
        assert_eq!(text, ["[-1, 1]:-q", "[0, 0]:1 + q", "[1, -1]:-1"]);
    }

    #[test]
    fn dyson_three_variables() {
        // [3]_q [2]_q = (1+q+q^2)(1+q)
        let ct = dyson(3, 1).constant_term(ExpandOptions::default()).unwrap();
        assert_eq!(ct, QPoly::from_i64s(0, &[1, 2, 2, 1]));
        let ct2 = dyson(3, 1).constant_term(ExpandOptions { dehomogenize: true }).unwrap();
        assert_eq!(ct, ct2);
    }

    #[test]
    fn box_target_matches_full_expansion() {
        let p = dyson(3, 2);
        let all = p.expand_all().unwrap();
        let boxed = p
            .expand(&[(-1, 1), (-1, 1), (-2, 2)], ExpandOptions::default())
            .unwrap();
        let want: Vec<_> = all
            .into_iter()
            .filter(|(e, _)| e[0].abs() <= 1 && e[1].abs() <= 1 && e[2].abs() <= 2)
            .collect();
        assert_eq!(boxed, want);
    }
}
