//! Exact counting of labeled digraphs behind the graded codimension
//! sequence.
//!
//! All quantities count digraphs on k labeled vertices with n labeled
//! edges (an assignment of each edge label to an ordered vertex pair):
//!
//! - `p`: balanced graphs, in-degree equal to out-degree everywhere;
//! - `gamma`: graphs with an Eulerian pseudo-path from the identity
//!   vertex, meaning the degree conditions hold but connectivity is not
//!   required; `gamma(k, n) = p(k, n+1) / k` exactly;
//! - `sd`: the strongly disconnected ones among those;
//! - `sc`: graphs whose edges cover all k vertices, connected, with an
//!   Eulerian path from the identity;
//! - `m = gamma - sd`: graphs with an actual Eulerian path from the
//!   identity. This is the graded codimension of the k-by-k matrices
//!   under any crossed-product grading, for every group of order k.
//!
//! Everything is exact arbitrary-precision arithmetic; the same numbers
//! are obtainable independently by brute-force enumeration
//! ([`enumerate_counts`]), by four formula routes for `p`
//! ([`PBalancedMethod`]), and for k = 2 by two closed forms
//! ([`c2_closed`], [`c2_divincenzo`]). A [`CountTable`] memoizes values
//! keyed by quantity, records how each value was obtained, and rejects
//! any attempt to record a conflicting value.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::Caps;

/// Exact binomial coefficient.
pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Exact 2^n.
pub fn pow2(n: u64) -> BigUint {
    BigUint::one() << n
}

/// `binom(2n+1, n) - 2^n + 1`, the closed form of the k = 2 codimension.
pub fn c2_closed(n: u64) -> BigUint {
    binomial(2 * n + 1, n) + BigUint::one() - pow2(n)
}

/// `1 + sum_{m=1}^{n} 2^(n-m) binom(n,m) binom(m, floor(m/2))`, the
/// weight-first count of the same graphs.
pub fn c2_divincenzo(n: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut c_nm = BigUint::from(n); // binom(n, m), starting at m = 1
    for m in 1..=n {
        acc += pow2(n - m) * &c_nm * binomial(m, m / 2);
        c_nm = &c_nm * (n - m) / (m + 1);
    }
    acc
}

/// The quantities a [`CountTable`] stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    /// Eulerian path from the identity (the codimension itself).
    M,
    /// Balanced.
    P,
    /// Eulerian pseudo-path from the identity.
    Gamma,
    /// Strongly disconnected with a pseudo-path from the identity.
    Sd,
    /// Connected on exactly k vertices with a path from the identity.
    Sc,
    /// k = 2 closed form.
    C2Closed,
    /// k = 2 weight-first form.
    C2Dv,
}

impl Quantity {
    pub fn as_str(self) -> &'static str {
        match self {
            Quantity::M => "m",
            Quantity::P => "p",
            Quantity::Gamma => "gamma",
            Quantity::Sd => "sd",
            Quantity::Sc => "sc",
            Quantity::C2Closed => "c2closed",
            Quantity::C2Dv => "c2dv",
        }
    }

    pub fn from_name(s: &str) -> Option<Quantity> {
        Some(match s {
            "m" => Quantity::M,
            "p" => Quantity::P,
            "gamma" => Quantity::Gamma,
            "sd" => Quantity::Sd,
            "sc" => Quantity::Sc,
            "c2closed" => Quantity::C2Closed,
            "c2dv" => Quantity::C2Dv,
            _ => return None,
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How a table entry was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodTag {
    Enumeration,
    Formula,
    /// Loaded from a cache file; provenance unknown.
    Cached,
}

const TAG_ENUM: u8 = 1;
const TAG_FORMULA: u8 = 2;
const TAG_CACHED: u8 = 4;

#[derive(Debug, Clone)]
struct Entry {
    value: BigUint,
    tags: u8,
}

/// The formula routes for the balanced count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PBalancedMethod {
    /// Nested sums over per-vertex degrees, a squared binomial per level.
    Nested,
    /// Sum of squared multinomial coefficients over compositions of n.
    Multinomial,
    /// Recursion on the vertex count.
    Recursion,
    /// Vertex-splitting recursion for `k = k1 + k2`.
    Split(usize, usize),
}

/// Memoized table of exact counts, with cross-method conflict detection
/// and a one-line-per-entry cache file format `quantity,k,n,value`.
#[derive(Debug, Default)]
pub struct CountTable {
    memo: HashMap<(Quantity, usize, usize), Entry>,
}

impl CountTable {
    pub fn new() -> CountTable {
        CountTable::default()
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn get(&self, q: Quantity, k: usize, n: usize) -> Option<&BigUint> {
        self.memo.get(&(q, k, n)).map(|e| &e.value)
    }

    /// Records a value, rejecting disagreement with anything already
    /// recorded for the same key (whatever the methods involved).
    pub fn record(
        &mut self,
        q: Quantity,
        k: usize,
        n: usize,
        value: BigUint,
        tag: MethodTag,
    ) -> Result<()> {
        let bit = match tag {
            MethodTag::Enumeration => TAG_ENUM,
            MethodTag::Formula => TAG_FORMULA,
            MethodTag::Cached => TAG_CACHED,
        };
        match self.memo.get_mut(&(q, k, n)) {
            Some(entry) => {
                if entry.value != value {
                    return Err(Error::TableConflict(format!(
                        "{q}({k},{n}): recorded {} vs new {value}",
                        entry.value
                    )));
                }
                entry.tags |= bit;
                Ok(())
            }
            None => {
                self.memo.insert((q, k, n), Entry { value, tags: bit });
                Ok(())
            }
        }
    }

    /// Methods that have produced the entry so far.
    pub fn methods(&self, q: Quantity, k: usize, n: usize) -> Vec<MethodTag> {
        let mut out = Vec::new();
        if let Some(e) = self.memo.get(&(q, k, n)) {
            if e.tags & TAG_ENUM != 0 {
                out.push(MethodTag::Enumeration);
            }
            if e.tags & TAG_FORMULA != 0 {
                out.push(MethodTag::Formula);
            }
            if e.tags & TAG_CACHED != 0 {
                out.push(MethodTag::Cached);
            }
        }
        out
    }

    /// Serializes all entries, one `quantity,k,n,value` line each, sorted.
    pub fn to_cache_string(&self) -> String {
        let mut keys: Vec<&(Quantity, usize, usize)> = self.memo.keys().collect();
        keys.sort_by_key(|(q, k, n)| (q.as_str(), *k, *n));
        let mut out = String::new();
        for key in keys {
            let (q, k, n) = key;
            out.push_str(&format!("{q},{k},{n},{}\n", self.memo[key].value));
        }
        out
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_cache_string())?;
        Ok(())
    }

    /// Loads entries from a cache file, conflict-checking against anything
    /// already present.
    pub fn load(&mut self, path: &Path) -> Result<usize> {
        let text = std::fs::read_to_string(path)?;
        let mut loaded = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',');
            let parse_err = || Error::Parse {
                pos: lineno + 1,
                msg: format!("bad cache line `{line}`"),
            };
            let q = parts
                .next()
                .and_then(Quantity::from_name)
                .ok_or_else(parse_err)?;
            let k: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(parse_err)?;
            let n: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(parse_err)?;
            let value: BigUint = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(parse_err)?;
            if parts.next().is_some() {
                return Err(parse_err());
            }
            self.record(q, k, n, value, MethodTag::Cached)?;
            loaded += 1;
        }
        Ok(loaded)
    }

    /// The balanced count by the requested route. The recursion route is
    /// memoized; the others recompute and are conflict-checked against the
    /// table.
    pub fn p_balanced(&mut self, k: usize, n: usize, method: PBalancedMethod) -> Result<BigUint> {
        if k == 0 {
            return Err(Error::EmptyGroup);
        }
        let value = match method {
            PBalancedMethod::Recursion => self.p_recursion(k, n),
            PBalancedMethod::Nested => {
                let mut total = BigUint::zero();
                nested_sum(n as u64, k, &BigUint::one(), &mut total);
                total
            }
            PBalancedMethod::Multinomial => {
                let mut total = BigUint::zero();
                multinomial_sum(n as u64, k, &BigUint::one(), &mut total);
                total
            }
            PBalancedMethod::Split(k1, k2) => {
                if k1 == 0 || k2 == 0 || k1 + k2 != k {
                    return Err(Error::InvalidSplit { k1, k2, k });
                }
                let mut total = BigUint::zero();
                let mut c = BigUint::one();
                for i in 0..=n {
                    let left = self.p_recursion(k1, i);
                    let right = self.p_recursion(k2, n - i);
                    total += &c * &c * left * right;
                    c = c * (n - i) as u64 / (i + 1) as u64;
                }
                total
            }
        };
        self.record(Quantity::P, k, n, value.clone(), MethodTag::Formula)?;
        Ok(value)
    }

    fn p_recursion(&mut self, k: usize, n: usize) -> BigUint {
        if let Some(v) = self.get(Quantity::P, k, n) {
            return v.clone();
        }
        let value = if k == 1 {
            BigUint::one()
        } else {
            let mut total = BigUint::zero();
            let mut c = BigUint::one(); // binom(n, i)
            for i in 0..=n {
                total += &c * &c * self.p_recursion(k - 1, i);
                c = c * (n - i) as u64 / (i + 1) as u64;
            }
            total
        };
        self.record(Quantity::P, k, n, value.clone(), MethodTag::Formula)
            .expect("fresh or equal");
        value
    }

    /// Pseudo-path count `gamma(k, n) = p(k, n+1) / k`, with the exact
    /// divisibility asserted.
    pub fn gamma(&mut self, k: usize, n: usize) -> Result<BigUint> {
        if let Some(v) = self.get(Quantity::Gamma, k, n) {
            return Ok(v.clone());
        }
        let p = self.p_recursion(k, n + 1);
        let kb = BigUint::from(k);
        if !(&p % &kb).is_zero() {
            return Err(Error::Divisibility {
                quantity: "p",
                k,
                n: n + 1,
                divisor: k,
            });
        }
        let q = p / kb;
        self.record(Quantity::Gamma, k, n, q.clone(), MethodTag::Formula)?;
        Ok(q)
    }

    /// Strongly disconnected pseudo-path count: sums, over the size j and
    /// edge count i of the connected component of the identity, the ways
    /// to choose its vertices and edges, its configurations `sc(j, i)`,
    /// and a balanced remainder `p(k-j, n-i)`.
    pub fn sd(&mut self, k: usize, n: usize) -> Result<BigUint> {
        if let Some(v) = self.get(Quantity::Sd, k, n) {
            return Ok(v.clone());
        }
        let mut total = BigUint::zero();
        for j in 1..k {
            let choose_vertices = binomial(k as u64 - 1, j as u64 - 1);
            let mut inner = BigUint::zero();
            let mut c = BigUint::one(); // binom(n, i)
            for i in 0..n {
                if i + 1 >= j {
                    // sc(j, i) vanishes below the tree bound i >= j-1
                    inner += &c * self.sc(j, i)? * self.p_recursion(k - j, n - i);
                }
                c = c * (n - i) as u64 / (i + 1) as u64;
            }
            total += choose_vertices * inner;
        }
        self.record(Quantity::Sd, k, n, total.clone(), MethodTag::Formula)?;
        Ok(total)
    }

    /// Connected count on exactly j vertices, by peeling isolated-vertex
    /// choices off the path count: `m(j, n) = sum_l binom(j-1, l-1) sc(l, n)`.
    pub fn sc(&mut self, j: usize, n: usize) -> Result<BigUint> {
        if let Some(v) = self.get(Quantity::Sc, j, n) {
            return Ok(v.clone());
        }
        let value = if j == 1 {
            BigUint::one()
        } else {
            let mut rest = BigUint::zero();
            for l in 1..j {
                rest += binomial(j as u64 - 1, l as u64 - 1) * self.sc(l, n)?;
            }
            let m = self.m_formula(j, n)?;
            if m < rest {
                return Err(Error::TableConflict(format!(
                    "sc({j},{n}) would be negative; counting bug"
                )));
            }
            m - rest
        };
        self.record(Quantity::Sc, j, n, value.clone(), MethodTag::Formula)?;
        Ok(value)
    }

    /// Path count by formula: `m(k, n) = gamma(k, n) - sd(k, n)`. Usable
    /// far beyond the enumeration budget.
    pub fn m_formula(&mut self, k: usize, n: usize) -> Result<BigUint> {
        if let Some(v) = self.get(Quantity::M, k, n) {
            return Ok(v.clone());
        }
        let gamma = self.gamma(k, n)?;
        let sd = self.sd(k, n)?;
        if gamma < sd {
            return Err(Error::TableConflict(format!(
                "m({k},{n}) would be negative; counting bug"
            )));
        }
        let value = gamma - sd;
        self.record(Quantity::M, k, n, value.clone(), MethodTag::Formula)?;
        Ok(value)
    }

    /// Records the k = 2 closed forms, cross-checking them against each
    /// other and anything else in the table.
    pub fn c2(&mut self, n: usize) -> Result<BigUint> {
        let closed = c2_closed(n as u64);
        let dv = c2_divincenzo(n as u64);
        self.record(Quantity::C2Closed, 2, n, closed.clone(), MethodTag::Formula)?;
        self.record(Quantity::C2Dv, 2, n, dv.clone(), MethodTag::Formula)?;
        if closed != dv {
            return Err(Error::TableConflict(format!(
                "c2 closed forms disagree at n={n}: {closed} vs {dv}"
            )));
        }
        Ok(closed)
    }
}

// Eq-(3) shape: a squared binomial at every level of the nest.
fn nested_sum(rem_n: u64, rem_k: usize, acc: &BigUint, total: &mut BigUint) {
    if rem_k == 1 {
        *total += acc;
        return;
    }
    let mut c = BigUint::one(); // binom(rem_n, nj)
    for nj in 0..=rem_n {
        nested_sum(rem_n - nj, rem_k - 1, &(acc * &c * &c), total);
        c = c * (rem_n - nj) / (nj + 1);
    }
}

// Eq-(4) shape: multinomial built along the composition, squared once.
fn multinomial_sum(rem_n: u64, rem_k: usize, acc: &BigUint, total: &mut BigUint) {
    if rem_k == 1 {
        let m = acc; // full multinomial: the last part is forced
        *total += m * m;
        return;
    }
    let mut c = BigUint::one();
    for nj in 0..=rem_n {
        multinomial_sum(rem_n - nj, rem_k - 1, &(acc * &c), total);
        c = c * (rem_n - nj) / (nj + 1);
    }
}

/// The four counts a brute-force sweep of all `(k^2)^n` edge assignments
/// produces in one pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumCounts {
    /// Eulerian path from the identity (= m).
    pub paths: BigUint,
    /// Degree conditions only (= gamma).
    pub pseudo: BigUint,
    /// Degree conditions but no path (= sd).
    pub disconnected: BigUint,
    /// Balanced (= p).
    pub balanced: BigUint,
}

#[derive(Clone, Copy, Default)]
struct RawCounts {
    paths: u64,
    pseudo: u64,
    disconnected: u64,
    balanced: u64,
}

struct EnumState {
    k: usize,
    n: usize,
    imb: Vec<i32>,
    edges: Vec<(usize, usize)>,
    counts: RawCounts,
}

impl EnumState {
    /// Lower bound on edges still needed to reach an acceptable final
    /// imbalance; each edge fixes at most one unit on each side.
    fn prunable(&self, remaining: usize) -> bool {
        let mut pos = 0i64; // excess out-degree to burn, identity allowed +1
        let mut neg = 0i64; // excess in-degree, one final -1 allowed anywhere
        for (v, &b) in self.imb.iter().enumerate() {
            let allow = if v == 0 { 1 } else { 0 };
            if b > allow {
                pos += (b - allow) as i64;
            }
            if b < 0 {
                neg += (-b) as i64;
            }
        }
        pos > remaining as i64 || neg > remaining as i64 + 1
    }

    fn leaf(&mut self) {
        let balanced = self.imb.iter().all(|&b| b == 0);
        let pseudo = balanced || {
            self.imb[0] == 1
                && self.imb.iter().filter(|&&b| b == -1).count() == 1
                && self.imb.iter().all(|&b| (-1..=1).contains(&b))
                && self.imb.iter().skip(1).all(|&b| b <= 0)
        };
        if balanced {
            self.counts.balanced += 1;
        }
        if !pseudo {
            return;
        }
        self.counts.pseudo += 1;
        // an actual path needs the edge support connected and containing
        // the identity vertex
        let mut parent: Vec<usize> = (0..self.k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut touched = vec![false; self.k];
        for &(s, d) in &self.edges {
            touched[s] = true;
            touched[d] = true;
            let (rs, rd) = (find(&mut parent, s), find(&mut parent, d));
            if rs != rd {
                parent[rs] = rd;
            }
        }
        let support_connected = {
            let mut root = None;
            let mut ok = true;
            for (v, _) in touched.iter().enumerate().filter(|(_, &t)| t) {
                {
                    let r = find(&mut parent, v);
                    match root {
                        None => root = Some(r),
                        Some(r0) if r0 != r => {
                            ok = false;
                            break;
                        }
                        _ => {}
                    }
                }
            }
            ok
        };
        if support_connected && touched[0] {
            self.counts.paths += 1;
        } else {
            self.counts.disconnected += 1;
        }
    }

    fn dfs(&mut self) {
        if self.edges.len() == self.n {
            self.leaf();
            return;
        }
        let remaining = self.n - self.edges.len() - 1;
        for s in 0..self.k {
            for d in 0..self.k {
                self.imb[s] += 1;
                self.imb[d] -= 1;
                self.edges.push((s, d));
                if !self.prunable(remaining) {
                    self.dfs();
                }
                self.edges.pop();
                self.imb[s] -= 1;
                self.imb[d] += 1;
            }
        }
    }
}

/// Brute-force sweep over every assignment of the n labeled edges to
/// ordered vertex pairs, counting all four quantities in one pass. Work
/// splits over the first edge's assignment; partial counts add up.
pub fn enumerate_counts(k: usize, n: usize, caps: &Caps) -> Result<EnumCounts> {
    if k == 0 {
        return Err(Error::EmptyGroup);
    }
    if n == 0 {
        return Ok(EnumCounts {
            paths: BigUint::one(),
            pseudo: BigUint::one(),
            disconnected: BigUint::zero(),
            balanced: BigUint::one(),
        });
    }
    let needed = (k as u128 * k as u128).checked_pow(n as u32);
    match needed {
        Some(x) if x <= caps.enum_budget => {}
        _ => {
            return Err(Error::BudgetExceeded {
                needed: needed.unwrap_or(u128::MAX),
                budget: caps.enum_budget,
            })
        }
    }
    let firsts: Vec<(usize, usize)> = (0..k).flat_map(|s| (0..k).map(move |d| (s, d))).collect();
    let total = firsts
        .into_par_iter()
        .map(|(s, d)| {
            let mut st = EnumState {
                k,
                n,
                imb: vec![0; k],
                edges: Vec::with_capacity(n),
                counts: RawCounts::default(),
            };
            st.imb[s] += 1;
            st.imb[d] -= 1;
            st.edges.push((s, d));
            if !st.prunable(n - 1) {
                st.dfs();
            }
            st.counts
        })
        .reduce(RawCounts::default, |a, b| RawCounts {
            paths: a.paths + b.paths,
            pseudo: a.pseudo + b.pseudo,
            disconnected: a.disconnected + b.disconnected,
            balanced: a.balanced + b.balanced,
        });
    Ok(EnumCounts {
        paths: total.paths.into(),
        pseudo: total.pseudo.into(),
        disconnected: total.disconnected.into(),
        balanced: total.balanced.into(),
    })
}

/// The codimension by brute force. The group argument fixes the vertex
/// labels only; the count depends on nothing but its order.
pub fn m_enum(group: &FiniteGroup, n: usize, caps: &Caps) -> Result<BigUint> {
    Ok(enumerate_counts(group.order(), n, caps)?.paths)
}

/// Records an enumeration's counts into a table under the enumeration
/// tag, so they conflict-check against formula values.
pub fn record_enumeration(
    table: &mut CountTable,
    k: usize,
    n: usize,
    counts: &EnumCounts,
) -> Result<()> {
    table.record(
        Quantity::M,
        k,
        n,
        counts.paths.clone(),
        MethodTag::Enumeration,
    )?;
    table.record(
        Quantity::Gamma,
        k,
        n,
        counts.pseudo.clone(),
        MethodTag::Enumeration,
    )?;
    table.record(
        Quantity::Sd,
        k,
        n,
        counts.disconnected.clone(),
        MethodTag::Enumeration,
    )?;
    table.record(
        Quantity::P,
        k,
        n,
        counts.balanced.clone(),
        MethodTag::Enumeration,
    )?;
    Ok(())
}
