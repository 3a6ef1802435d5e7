//! Finite groups given by Cayley tables.
//!
//! A group of order `k` stores its elements as indices `1..=k` with the
//! identity fixed at index 1, a `k`-by-`k` multiplication table, and a name
//! map. Construction validates the full set of group axioms (identity row
//! and column, Latin square, associativity, two-sided inverses), so every
//! value of [`FiniteGroup`] that exists is an actual group.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default limit on the group order. Everything downstream is exponential
/// in the order, so this is a guard rail, not a hard mathematical bound.
pub const DEFAULT_MAX_ORDER: usize = 24;

#[derive(Debug)]
struct GroupData {
    order: usize,
    /// `cayley[i][j]` is the 0-based index of `g_{i+1} * g_{j+1}`.
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    /// Display name per element; index 0 is the identity.
    names: Vec<String>,
    /// Every accepted spelling, including the canonical `g1..gk`.
    aliases: BTreeMap<String, usize>,
    label: String,
}

/// A finite group with a fixed ordering of its elements.
///
/// Cloning is cheap (the table is shared). Two handles compare equal when
/// they share storage or have identical Cayley tables, so elements of two
/// independently constructed copies of the same table interoperate.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

/// One element of a [`FiniteGroup`], tied to its group.
#[derive(Clone)]
pub struct GroupElement {
    group: FiniteGroup,
    pos: usize, // 0-based
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.cayley == other.data.cayley
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup({}, order {})",
            self.data.label, self.data.order
        )
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.data.label)
    }
}

fn name_is_valid(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '^')
}

impl FiniteGroup {
    /// Validates a 0-based table plus display names and builds the group.
    fn build(
        cayley: Vec<Vec<usize>>,
        names: Vec<String>,
        extra_aliases: &[(String, usize)],
        label: String,
        max_order: usize,
    ) -> Result<Self> {
        let k = cayley.len();
        if k == 0 {
            return Err(Error::EmptyGroup);
        }
        if k > max_order {
            return Err(Error::OrderLimit {
                order: k,
                limit: max_order,
            });
        }
        for (i, row) in cayley.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidGroup(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    k
                )));
            }
            if let Some(&bad) = row.iter().find(|&&v| v >= k) {
                return Err(Error::InvalidGroup(format!(
                    "row {} contains index {} outside 1..={}",
                    i + 1,
                    bad + 1,
                    k
                )));
            }
        }
        // Identity law: element 1 must act as a two-sided identity.
        for (j, row) in cayley.iter().enumerate() {
            if cayley[0][j] != j {
                return Err(Error::InvalidGroup(format!(
                    "element 1 is not a left identity: g1*g{} = g{}",
                    j + 1,
                    cayley[0][j] + 1
                )));
            }
            if row[0] != j {
                return Err(Error::InvalidGroup(format!(
                    "element 1 is not a right identity: g{}*g1 = g{}",
                    j + 1,
                    row[0] + 1
                )));
            }
        }
        // Latin square.
        for (i, row) in cayley.iter().enumerate() {
            let mut seen = vec![false; k];
            for &v in row {
                if seen[v] {
                    return Err(Error::InvalidGroup(format!(
                        "row {} is not a permutation of 1..={}",
                        i + 1,
                        k
                    )));
                }
                seen[v] = true;
            }
        }
        for j in 0..k {
            let mut seen = vec![false; k];
            for row in cayley.iter() {
                let v = row[j];
                if seen[v] {
                    return Err(Error::InvalidGroup(format!(
                        "column {} is not a permutation of 1..={}",
                        j + 1,
                        k
                    )));
                }
                seen[v] = true;
            }
        }
        // Associativity, exhaustively; k <= 24 keeps k^3 cheap.
        for a in 0..k {
            for b in 0..k {
                let ab = cayley[a][b];
                for c in 0..k {
                    if cayley[ab][c] != cayley[a][cayley[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on (g{},g{},g{})",
                            a + 1,
                            b + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        // Two-sided inverses (guaranteed by the axioms above; checked anyway).
        let mut inverse = vec![usize::MAX; k];
        for a in 0..k {
            let inv = (0..k).find(|&b| cayley[a][b] == 0 && cayley[b][a] == 0);
            match inv {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(Error::InvalidGroup(format!(
                        "element g{} has no two-sided inverse",
                        a + 1
                    )))
                }
            }
        }

        if names.len() != k {
            return Err(Error::InvalidGroup(format!(
                "{} names supplied for {} elements",
                names.len(),
                k
            )));
        }
        let mut aliases = BTreeMap::new();
        for (pos, name) in names.iter().enumerate() {
            if !name_is_valid(name) {
                return Err(Error::InvalidGroup(format!(
                    "invalid element name `{name}`"
                )));
            }
            if aliases
                .insert(name.clone(), pos)
                .is_some_and(|old| old != pos)
            {
                return Err(Error::InvalidGroup(format!(
                    "duplicate element name `{name}`"
                )));
            }
        }
        // Canonical handles always resolve, whatever the display names say.
        for pos in 0..k {
            let canon = format!("g{}", pos + 1);
            if let Some(&old) = aliases.get(&canon) {
                if old != pos {
                    return Err(Error::InvalidGroup(format!(
                        "name `{canon}` is reserved for element {}",
                        pos + 1
                    )));
                }
            }
            aliases.insert(canon, pos);
        }
        if !aliases.contains_key("e") {
            aliases.insert("e".to_string(), 0);
        }
        for (name, pos) in extra_aliases {
            if !name_is_valid(name) {
                return Err(Error::InvalidGroup(format!(
                    "invalid element name `{name}`"
                )));
            }
            if *pos >= k {
                return Err(Error::IndexOutOfRange {
                    index: pos + 1,
                    order: k,
                });
            }
            if let Some(&old) = aliases.get(name) {
                if old != *pos {
                    return Err(Error::InvalidGroup(format!(
                        "alias `{name}` maps to two different elements"
                    )));
                }
            }
            aliases.insert(name.clone(), *pos);
        }

        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                order: k,
                cayley,
                inverse,
                names,
                aliases,
                label,
            }),
        })
    }

    /// Builds a group from a 1-based Cayley table, rejecting non-groups with
    /// a diagnostic naming the failed axiom. Element 1 must be the identity.
    pub fn from_cayley_table(table: &[Vec<usize>]) -> Result<Self> {
        Self::from_cayley_table_with_limit(table, DEFAULT_MAX_ORDER)
    }

    /// Same as [`from_cayley_table`](Self::from_cayley_table) with an explicit order limit.
    pub fn from_cayley_table_with_limit(table: &[Vec<usize>], max_order: usize) -> Result<Self> {
        let k = table.len();
        let mut cayley = Vec::with_capacity(k);
        for (i, row) in table.iter().enumerate() {
            let mut r = Vec::with_capacity(row.len());
            for &v in row {
                if v == 0 || v > k {
                    return Err(Error::InvalidGroup(format!(
                        "row {} contains index {} outside 1..={}",
                        i + 1,
                        v,
                        k
                    )));
                }
                r.push(v - 1);
            }
            cayley.push(r);
        }
        let names = (1..=k).map(|i| format!("g{i}")).collect();
        Self::build(cayley, names, &[], format!("table[{k}]"), max_order)
    }

    /// The cyclic group C_k with aliases `e, s, s2, ..., s{k-1}`; element
    /// `i` is `s^(i-1)`.
    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::EmptyGroup);
        }
        let cayley = (0..k)
            .map(|i| (0..k).map(|j| (i + j) % k).collect())
            .collect();
        let names = (0..k)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "s".to_string(),
                _ => format!("s{i}"),
            })
            .collect();
        Self::build(cayley, names, &[], format!("C{k}"), DEFAULT_MAX_ORDER)
    }

    /// The dihedral group D_m of order 2m, generated by a rotation `r` of
    /// order m and a reflection `s` with `s r s = r^-1`. Elements are
    /// `e, r, .., r{m-1}, s, sr, .., sr{m-1}`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyGroup);
        }
        let k = 2 * m;
        // encode r^i as i, s r^i as m + i
        let mul = |a: usize, b: usize| -> usize {
            let (fa, ia) = (a >= m, a % m);
            let (fb, ib) = (b >= m, b % m);
            match (fa, fb) {
                (false, false) => (ia + ib) % m,
                (false, true) => m + (ib + m - ia) % m,
                (true, false) => m + (ia + ib) % m,
                (true, true) => (ib + m - ia) % m,
            }
        };
        let cayley = (0..k)
            .map(|a| (0..k).map(|b| mul(a, b)).collect())
            .collect();
        let mut names = Vec::with_capacity(k);
        for i in 0..m {
            names.push(match i {
                0 => "e".to_string(),
                1 => "r".to_string(),
                _ => format!("r{i}"),
            });
        }
        for i in 0..m {
            names.push(match i {
                0 => "s".to_string(),
                1 => "sr".to_string(),
                _ => format!("sr{i}"),
            });
        }
        Self::build(cayley, names, &[], format!("D{m}"), DEFAULT_MAX_ORDER)
    }

    /// The symmetric group S_m, m <= 5 (order up to 120, above the default
    /// order limit, which this constructor overrides). Elements are ordered
    /// lexicographically by one-line notation, so the identity comes first;
    /// non-identity elements are named `p` followed by their one-line images.
    pub fn symmetric(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::EmptyGroup);
        }
        if m > 5 {
            return Err(Error::OrderLimit {
                order: (1..=m).product(),
                limit: 120,
            });
        }
        let perms = all_permutations(m);
        let index: BTreeMap<Vec<usize>, usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let k = perms.len();
        let mut cayley = vec![vec![0usize; k]; k];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (pa ∘ pb)(x) = pa(pb(x))
                let prod: Vec<usize> = (0..m).map(|x| pa[pb[x]]).collect();
                cayley[a][b] = index[&prod];
            }
        }
        let names = perms
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i == 0 {
                    "e".to_string()
                } else {
                    let digits: String = p.iter().map(|v| (v + 1).to_string()).collect();
                    format!("p{digits}")
                }
            })
            .collect();
        Self::build(cayley, names, &[], format!("S{m}"), 120)
    }

    /// Direct product; element `(a, b)` has index `(a-1)*|H| + b`. Non-identity
    /// elements are named `<name in G>.<name in H>`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        let (kg, kh) = (g.order(), h.order());
        let k = kg * kh;
        let enc = |a: usize, b: usize| a * kh + b;
        let mut cayley = vec![vec![0usize; k]; k];
        for a1 in 0..kg {
            for b1 in 0..kh {
                for a2 in 0..kg {
                    for b2 in 0..kh {
                        cayley[enc(a1, b1)][enc(a2, b2)] =
                            enc(g.data.cayley[a1][a2], h.data.cayley[b1][b2]);
                    }
                }
            }
        }
        let mut names = Vec::with_capacity(k);
        for a in 0..kg {
            for b in 0..kh {
                if a == 0 && b == 0 {
                    names.push("e".to_string());
                } else {
                    names.push(format!("{}.{}", g.data.names[a], h.data.names[b]));
                }
            }
        }
        Self::build(
            cayley,
            names,
            &[],
            format!("{}x{}", g.data.label, h.data.label),
            DEFAULT_MAX_ORDER,
        )
    }

    /// Parses a named-group spec: `C<k>`, `D<m>`, `S<m>`, products joined
    /// with `x` such as `C2xC2`, or `table:<path>` for a Cayley-table file.
    pub fn from_spec(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if let Some(path) = spec.strip_prefix("table:") {
            let text = std::fs::read_to_string(Path::new(path))?;
            return Self::from_cayley_text(&text);
        }
        let mut parts = spec.split('x');
        let first = parts
            .next()
            .filter(|p| !p.is_empty())
            .ok_or_else(|| Error::UnknownGroupSpec(spec.to_string()))?;
        let mut acc = Self::from_atom(first, spec)?;
        for part in parts {
            let next = Self::from_atom(part, spec)?;
            acc = Self::direct_product(&acc, &next)?;
        }
        Ok(acc)
    }

    fn from_atom(atom: &str, whole: &str) -> Result<Self> {
        let err = || Error::UnknownGroupSpec(whole.to_string());
        let (kind, digits) = atom.split_at(1);
        let n: usize = digits.parse().map_err(|_| err())?;
        match kind {
            "C" | "c" => Self::cyclic(n),
            "D" | "d" => Self::dihedral(n),
            "S" | "s" => Self::symmetric(n),
            _ => Err(err()),
        }
    }

    /// Parses the Cayley-table file format: first line `k`, then `k` lines
    /// of `k` space-separated 1-based indices, then optional alias lines
    /// `name=index`.
    pub fn from_cayley_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        let k: usize = lines
            .next()
            .ok_or_else(|| Error::InvalidGroup("empty Cayley-table file".into()))?
            .trim()
            .parse()
            .map_err(|_| Error::InvalidGroup("first line must be the group order".into()))?;
        let mut table = Vec::with_capacity(k);
        for i in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::InvalidGroup(format!("missing table row {}", i + 1)))?;
            let row: std::result::Result<Vec<usize>, _> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect();
            let row =
                row.map_err(|_| Error::InvalidGroup(format!("row {} is not numeric", i + 1)))?;
            table.push(row);
        }
        let mut aliases: Vec<(String, usize)> = Vec::new();
        for line in lines {
            let line = line.trim();
            let (name, idx) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidGroup(format!("bad alias line `{line}`")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::InvalidGroup(format!("bad alias index in `{line}`")))?;
            if idx == 0 || idx > k {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    order: k,
                });
            }
            aliases.push((name.trim().to_string(), idx - 1));
        }
        // The first alias for an element becomes its display name.
        let mut names: Vec<String> = (1..=k).map(|i| format!("g{i}")).collect();
        let mut named = vec![false; k];
        for (name, pos) in &aliases {
            if !named[*pos] {
                names[*pos] = name.clone();
                named[*pos] = true;
            }
        }
        let base = Self::from_cayley_table(&table)?;
        Self::build(
            base.data.cayley.clone(),
            names,
            &aliases,
            format!("table[{k}]"),
            DEFAULT_MAX_ORDER,
        )
    }

    /// Renders the group in the Cayley-table file format accepted by
    /// [`from_cayley_text`](Self::from_cayley_text).
    pub fn to_cayley_text(&self) -> String {
        let k = self.order();
        let mut out = format!("{k}\n");
        for row in &self.data.cayley {
            let line: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        for (pos, name) in self.data.names.iter().enumerate() {
            if name != &format!("g{}", pos + 1) {
                out.push_str(&format!("{name}={}\n", pos + 1));
            }
        }
        for (name, pos) in &self.data.aliases {
            if name != &self.data.names[*pos] && name != &format!("g{}", pos + 1) {
                out.push_str(&format!("{name}={}\n", pos + 1));
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    /// Short label such as `C3` or `D4`; `table[k]` for raw tables.
    pub fn label(&self) -> &str {
        &self.data.label
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            pos: 0,
        }
    }

    /// Element by 1-based index.
    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index == 0 || index > self.order() {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order(),
            });
        }
        Ok(GroupElement {
            group: self.clone(),
            pos: index - 1,
        })
    }

    pub(crate) fn element_at(&self, pos: usize) -> GroupElement {
        debug_assert!(pos < self.order());
        GroupElement {
            group: self.clone(),
            pos,
        }
    }

    /// Element by any accepted name (`e`, `s2`, `g4`, ...).
    pub fn by_name(&self, name: &str) -> Result<GroupElement> {
        match self.data.aliases.get(name) {
            Some(&pos) => Ok(GroupElement {
                group: self.clone(),
                pos,
            }),
            None => Err(Error::UnknownElement(name.to_string())),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |pos| GroupElement {
            group: self.clone(),
            pos,
        })
    }

    /// Display name of the element with the given 1-based index.
    pub fn name(&self, index: usize) -> &str {
        &self.data.names[index - 1]
    }

    pub(crate) fn mul_pos(&self, a: usize, b: usize) -> usize {
        self.data.cayley[a][b]
    }

    pub(crate) fn inv_pos(&self, a: usize) -> usize {
        self.data.inverse[a]
    }

    /// The left regular representation: for each `g` the permutation
    /// `pi_g` of `{1..k}` with `pi_g(i) =` index of `g*g_i`. These
    /// permutations satisfy `pi_g ∘ pi_h = pi_{gh}`, and as permutation
    /// matrices they conjugate a diagonal `sum a_i e_{g_i}` to
    /// `sum a_i e_{g g_i}`.
    pub fn regular_representation(&self) -> Vec<Vec<usize>> {
        let k = self.order();
        (0..k)
            .map(|g| (0..k).map(|i| self.data.cayley[g][i] + 1).collect())
            .collect()
    }

    /// 1-based Cayley table row-major copy, mostly for interfaces.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.data
            .cayley
            .iter()
            .map(|row| row.iter().map(|v| v + 1).collect())
            .collect()
    }
}

fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; m];
    fn rec(m: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for v in 0..m {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(m, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(m, &mut cur, &mut used, &mut out);
    out
}

impl GroupElement {
    /// 1-based index within the group's element ordering.
    pub fn index(&self) -> usize {
        self.pos + 1
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn name(&self) -> &str {
        &self.group.data.names[self.pos]
    }

    pub fn is_identity(&self) -> bool {
        self.pos == 0
    }

    /// Table-lookup product; rejects elements of different groups.
    pub fn mul(&self, other: &GroupElement) -> Result<GroupElement> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupElement {
            group: self.group.clone(),
            pos: self.group.mul_pos(self.pos, other.pos),
        })
    }

    pub fn inv(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            pos: self.group.inv_pos(self.pos),
        }
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.pos == other.pos && self.group == other.group
    }
}

impl Eq for GroupElement {}

impl std::hash::Hash for GroupElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        // Group identity is not hashed; mixing groups in one map is the
        // caller's bug and still compares unequal.
        self.pos.hash(state);
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(g: &FiniteGroup) {
        let k = g.order();
        let e = g.identity();
        for a in g.elements() {
            assert_eq!(e.mul(&a).unwrap(), a);
            assert_eq!(a.mul(&e).unwrap(), a);
            assert_eq!(a.inv().mul(&a).unwrap(), e);
            assert_eq!(a.mul(&a.inv()).unwrap(), e);
        }
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let (ga, gb, gc) = (
                        g.element(a + 1).unwrap(),
                        g.element(b + 1).unwrap(),
                        g.element(c + 1).unwrap(),
                    );
                    assert_eq!(
                        ga.mul(&gb).unwrap().mul(&gc).unwrap(),
                        ga.mul(&gb.mul(&gc).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.cayley_table(), vec![vec![1]]);
    }

    #[test]
    fn cyclic_three_relations() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let s = g.by_name("s").unwrap();
        let s2 = g.by_name("s2").unwrap();
        // s*s2 = e, i.e. cayley[2][3] = 1
        assert!(s.mul(&s2).unwrap().is_identity());
        assert_eq!(g.cayley_table()[1][2], 1);
        check_axioms(&g);
    }

    #[test]
    fn cyclic_two_aliases() {
        let g = FiniteGroup::cyclic(2).unwrap();
        assert_eq!(g.by_name("e").unwrap().index(), 1);
        assert_eq!(g.by_name("s").unwrap().index(), 2);
        assert_eq!(g.by_name("g2").unwrap().index(), 2);
    }

    #[test]
    fn cyclic_zero_rejected() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::EmptyGroup)));
    }

    #[test]
    fn inverse_in_c3() {
        let g = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(g.by_name("s").unwrap().inv(), g.by_name("s2").unwrap());
    }

    #[test]
    fn double_inverse_in_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(g.order(), 6);
        for x in g.elements() {
            assert_eq!(x.inv().inv(), x);
        }
        check_axioms(&g);
    }

    #[test]
    fn klein_is_product_of_c2s() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&c2, &c2).unwrap();
        assert_eq!(klein.order(), 4);
        for x in klein.elements() {
            assert_eq!(x.mul(&x).unwrap(), klein.identity());
        }
        check_axioms(&klein);
    }

    #[test]
    fn dihedral_two_isomorphic_to_klein() {
        // exhaustive isomorphism search over the 4! relabelings
        let d2 = FiniteGroup::dihedral(2).unwrap();
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let klein = FiniteGroup::direct_product(&c2, &c2).unwrap();
        let ta = d2.cayley_table();
        let tb = klein.cayley_table();
        let found = super::all_permutations(4)
            .into_iter()
            .any(|phi| (0..4).all(|i| (0..4).all(|j| phi[ta[i][j] - 1] == tb[phi[i]][phi[j]] - 1)));
        assert!(found);
    }

    #[test]
    fn dihedral_relations() {
        let g = FiniteGroup::dihedral(4).unwrap();
        let r = g.by_name("r").unwrap();
        let s = g.by_name("s").unwrap();
        // s r s^-1 = r^-1
        assert_eq!(s.mul(&r).unwrap().mul(&s.inv()).unwrap(), r.inv());
        check_axioms(&g);
    }

    #[test]
    fn bad_table_rejected_with_diagnostic() {
        let err = FiniteGroup::from_cayley_table(&[vec![1, 2], vec![2, 2]]).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("row 2"), "unexpected diagnostic: {msg}");
    }

    #[test]
    fn non_identity_first_rejected() {
        // swap of rows makes element 1 not the identity
        let err = FiniteGroup::from_cayley_table(&[vec![2, 1], vec![1, 2]]).unwrap_err();
        assert!(err.to_string().contains("identity"));
    }

    #[test]
    fn nonassociative_latin_square_rejected() {
        // order-5 Latin square with identity that fails associativity
        let table = vec![
            vec![1, 2, 3, 4, 5],
            vec![2, 1, 4, 5, 3],
            vec![3, 5, 1, 2, 4],
            vec![4, 3, 5, 1, 2],
            vec![5, 4, 2, 3, 1],
        ];
        let err = FiniteGroup::from_cayley_table(&table).unwrap_err();
        assert!(err.to_string().contains("associativity"), "{err}");
    }

    #[test]
    fn regular_representation_c2_is_transposition() {
        let g = FiniteGroup::cyclic(2).unwrap();
        let rep = g.regular_representation();
        assert_eq!(rep[0], vec![1, 2]);
        assert_eq!(rep[1], vec![2, 1]);
    }

    #[test]
    fn regular_representation_is_homomorphism_s3() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let rep = g.regular_representation();
        let k = g.order();
        for a in 0..k {
            for b in 0..k {
                let ab = g.mul_pos(a, b);
                for i in 0..k {
                    // pi_a(pi_b(i)) = pi_{ab}(i)
                    assert_eq!(rep[a][rep[b][i] - 1], rep[ab][i]);
                }
            }
        }
        // injectivity
        for a in 0..k {
            for b in (a + 1)..k {
                assert_ne!(rep[a], rep[b]);
            }
        }
    }

    #[test]
    fn regular_representation_at_the_order_limit() {
        // S4 has order 24, the default limit
        let g = FiniteGroup::symmetric(4).unwrap();
        let rep = g.regular_representation();
        let k = g.order();
        for a in 0..k {
            for b in 0..k {
                let ab = g.mul_pos(a, b);
                for i in 0..k {
                    assert_eq!(rep[a][rep[b][i] - 1], rep[ab][i]);
                }
            }
        }
        let distinct: std::collections::BTreeSet<&Vec<usize>> = rep.iter().collect();
        assert_eq!(distinct.len(), k);
    }

    #[test]
    fn regular_representation_realizes_diagonal_action() {
        // applying pi_g to positions sends sum a_i e_{g_i} to sum a_i e_{g g_i}
        let g = FiniteGroup::symmetric(3).unwrap();
        let rep = g.regular_representation();
        let k = g.order();
        let a: Vec<i64> = (0..k as i64).map(|i| 10 + 3 * i).collect();
        for gp in 0..k {
            let mut lhs = vec![0i64; k];
            for i in 0..k {
                lhs[rep[gp][i] - 1] = a[i];
            }
            let mut rhs = vec![0i64; k];
            for i in 0..k {
                rhs[g.mul_pos(gp, i)] = a[i];
            }
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn group_mismatch_rejected() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let c3 = FiniteGroup::cyclic(3).unwrap();
        let a = c2.by_name("s").unwrap();
        let b = c3.by_name("s").unwrap();
        assert!(matches!(a.mul(&b), Err(Error::GroupMismatch)));
    }

    #[test]
    fn structurally_equal_groups_interoperate() {
        let g1 = FiniteGroup::cyclic(3).unwrap();
        let g2 = FiniteGroup::cyclic(3).unwrap();
        let a = g1.by_name("s").unwrap();
        let b = g2.by_name("s2").unwrap();
        assert!(a.mul(&b).unwrap().is_identity());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(FiniteGroup::from_spec("C4").unwrap().order(), 4);
        assert_eq!(FiniteGroup::from_spec("D3").unwrap().order(), 6);
        assert_eq!(FiniteGroup::from_spec("S4").unwrap().order(), 24);
        assert_eq!(FiniteGroup::from_spec("C2xC2").unwrap().order(), 4);
        assert_eq!(FiniteGroup::from_spec("C2xC2xC2").unwrap().order(), 8);
        assert!(FiniteGroup::from_spec("Q8").is_err());
    }

    #[test]
    fn cayley_text_round_trip() {
        let g = FiniteGroup::dihedral(3).unwrap();
        let text = g.to_cayley_text();
        let h = FiniteGroup::from_cayley_text(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(
            h.by_name("sr2").unwrap().index(),
            g.by_name("sr2").unwrap().index()
        );
        assert_eq!(h.name(2), "r");
    }

    #[test]
    fn symmetric_five_allowed_over_default_limit() {
        let g = FiniteGroup::symmetric(5).unwrap();
        assert_eq!(g.order(), 120);
    }

    #[test]
    fn order_limit_enforced_for_tables() {
        let big = FiniteGroup::cyclic(30);
        assert!(matches!(big, Err(Error::OrderLimit { .. })));
    }
}
