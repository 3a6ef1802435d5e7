//! Eulerian paths, prefix-product-preserving permutations, parity
//! statistics, and decomposition into basic segment swaps.
//!
//! For a monomial m of degree n and a permutation pi of 1..n, the
//! reordering pi(m) is equivalent to m exactly when pi preserves every
//! prefix product of the weight word, and exactly when reading the edges
//! of m's graph in the order pi(1), pi(2), ... is again an Eulerian path
//! from the identity vertex. The enumeration here walks the graph
//! directly (ascending edge label at every branch, so output order is
//! deterministic), converts each path back to a permutation, and tallies
//! parities. Every such permutation factors into swaps of two path
//! segments that share both endpoint vertices; `basic_decomposition`
//! constructs that factorization explicitly.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MonomialGraph;
use crate::group::{FiniteGroup, GroupElement};
use crate::monomial::Monomial;
use crate::Caps;

/// A permutation of 1..=n in image form, with its sign cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
            sign: 1,
        }
    }

    /// Builds from images `(pi(1), ..., pi(n))`, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(images.clone(), n));
            }
            seen[v - 1] = true;
        }
        let sign = sign_by_cycles(&images);
        Ok(Permutation { images, sign })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `pi(j)` for 1-based `j`.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// +1 for even, -1 for odd; computed by cycle decomposition.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_even(&self) -> bool {
        self.sign == 1
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                got: other.len(),
                want: self.len(),
            });
        }
        let images = (1..=self.len())
            .map(|j| self.image(other.image(j)))
            .collect();
        Ok(Permutation {
            images,
            sign: self.sign * other.sign,
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0usize; self.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation {
            images,
            sign: self.sign,
        }
    }
}

impl std::fmt::Debug for Permutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

fn sign_by_cycles(images: &[usize]) -> i8 {
    let n = images.len();
    let mut seen = vec![false; n];
    let mut transpositions = 0usize;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = images[at] - 1;
            len += 1;
        }
        transpositions += len - 1;
    }
    if transpositions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Streaming enumeration of the Eulerian paths of a graph from a fixed
/// start vertex: every ordering of all edges forming a walk, each edge
/// exactly once, in lexicographic order by edge label at every branch.
/// An edgeless graph yields exactly one empty path.
pub struct EulerianPaths {
    n: usize,
    /// per-vertex out-edges (label, dst), sorted by label
    adj: Vec<Vec<(u32, usize)>>,
    used: Vec<Vec<bool>>,
    /// (vertex, scan cursor); one frame per visited depth plus the tip
    frames: Vec<(usize, usize)>,
    /// (vertex, slot) chosen at each depth
    chosen: Vec<(usize, usize)>,
    done: bool,
}

impl EulerianPaths {
    pub fn new(graph: &MonomialGraph, start: &GroupElement) -> EulerianPaths {
        let k = graph.group().order();
        let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); k];
        for (&label, &(src, dst)) in graph.edge_map() {
            adj[src].push((label, dst));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let used = adj.iter().map(|l| vec![false; l.len()]).collect();
        let n = graph.edge_count();
        EulerianPaths {
            n,
            adj,
            used,
            frames: vec![(start.index() - 1, 0)],
            chosen: Vec::new(),
            done: false,
        }
    }
}

impl Iterator for EulerianPaths {
    /// Edge labels in traversal order.
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        if self.n == 0 {
            self.done = true;
            return Some(Vec::new());
        }
        loop {
            let Some(&(v, cursor)) = self.frames.last() else {
                self.done = true;
                return None;
            };
            let next_slot = (cursor..self.adj[v].len()).find(|&i| !self.used[v][i]);
            match next_slot {
                None => {
                    self.frames.pop();
                    if let Some((pv, slot)) = self.chosen.pop() {
                        self.used[pv][slot] = false;
                    }
                }
                Some(i) => {
                    self.frames.last_mut().unwrap().1 = i + 1;
                    self.used[v][i] = true;
                    self.chosen.push((v, i));
                    if self.chosen.len() == self.n {
                        let labels = self
                            .chosen
                            .iter()
                            .map(|&(pv, s)| self.adj[pv][s].0)
                            .collect();
                        let (pv, s) = self.chosen.pop().unwrap();
                        self.used[pv][s] = false;
                        return Some(labels);
                    }
                    self.frames.push((self.adj[v][i].1, 0));
                }
            }
        }
    }
}

/// Convenience constructor matching the mathematical phrasing.
pub fn eulerian_paths_from(graph: &MonomialGraph, start: &GroupElement) -> EulerianPaths {
    EulerianPaths::new(graph, start)
}

/// Tests whether `pi` preserves every prefix product of the weight word of
/// `m` (which also forces the total products to agree), by direct
/// prefix-product comparison.
pub fn is_ipp(m: &Monomial, pi: &Permutation) -> Result<bool> {
    let n = m.degree();
    if pi.len() != n {
        return Err(Error::LengthMismatch {
            got: pi.len(),
            want: n,
        });
    }
    let prefix = m.prefix_products();
    let mut acc = m.group().identity();
    for j in 1..=n {
        acc = acc.mul(m.weight(pi.image(j) - 1))?;
        if acc != prefix[pi.image(j)] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cap on how many permutations an [`IppReport`] retains in full.
pub const IPP_LIST_CAP: usize = 4096;

/// Census of the prefix-product-preserving permutations of one monomial.
#[derive(Debug, Clone)]
pub struct IppReport {
    pub monomial: Monomial,
    pub total: u64,
    pub even: u64,
    pub odd: u64,
    /// The permutations themselves, up to [`IPP_LIST_CAP`].
    pub permutations: Vec<Permutation>,
    pub truncated: bool,
}

impl IppReport {
    /// Equal number of even and odd permutations.
    pub fn balanced(&self) -> bool {
        self.even == self.odd
    }
}

/// Enumerates all Eulerian paths of m's graph from the identity and
/// converts each back to a permutation: the j-th traversed edge is m's
/// factor at position `pi(j)`. The identity permutation always appears.
pub fn ipp_permutations(m: &Monomial, caps: &Caps) -> Result<IppReport> {
    let n = m.degree();
    if n > caps.path_degree {
        return Err(Error::DegreeCap {
            degree: n,
            cap: caps.path_degree,
        });
    }
    let mut pos_of_label = std::collections::HashMap::new();
    for (j, (var, _)) in m.factors().iter().enumerate() {
        pos_of_label.insert(*var, j + 1);
    }
    let graph = MonomialGraph::of_monomial(m);
    let start = m.group().identity();
    let (mut total, mut even, mut odd) = (0u64, 0u64, 0u64);
    let mut permutations = Vec::new();
    let mut truncated = false;
    for labels in EulerianPaths::new(&graph, &start) {
        let images: Vec<usize> = labels.iter().map(|l| pos_of_label[l]).collect();
        let pi = Permutation::from_images(images).expect("paths yield permutations");
        total += 1;
        if pi.is_even() {
            even += 1;
        } else {
            odd += 1;
        }
        if permutations.len() < IPP_LIST_CAP {
            permutations.push(pi);
        } else {
            truncated = true;
        }
    }
    Ok(IppReport {
        monomial: m.clone(),
        total,
        even,
        odd,
        permutations,
        truncated,
    })
}

/// How a weight-word sweep picks its words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepMode {
    /// Every word in G^n.
    Exhaustive,
    /// `count` words drawn uniformly with a seeded generator.
    Sample { count: u64, seed: u64 },
}

/// Per-word tally for parity sweeps.
#[derive(Debug, Clone)]
pub struct WordTally {
    /// 1-based element indices of the weight word.
    pub word: Vec<usize>,
    pub total: u64,
    pub even: u64,
    pub odd: u64,
}

/// Outcome of a parity sweep over weight words.
#[derive(Debug, Clone)]
pub struct SwanReport {
    pub group: String,
    pub k: usize,
    pub n: usize,
    pub words_checked: u64,
    /// Whether the even/odd balance is asserted (degree at least twice the
    /// group order).
    pub asserted: bool,
    /// Words with unbalanced parity despite `asserted` (expected: none).
    pub violations: Vec<WordTally>,
    /// All per-word rows, kept only on request.
    pub rows: Option<Vec<WordTally>>,
}

fn word_from_index(mut idx: u128, k: usize, n: usize) -> Vec<usize> {
    let mut word = vec![0usize; n];
    for j in (0..n).rev() {
        word[j] = (idx % k as u128) as usize;
        idx /= k as u128;
    }
    word
}

fn tally_word(group: &FiniteGroup, word: &[usize], caps: &Caps) -> Result<WordTally> {
    let weights: Vec<GroupElement> = word.iter().map(|&p| group.element_at(p)).collect();
    let m = Monomial::from_weights(group, &weights)?;
    let report = ipp_permutations(&m, caps)?;
    Ok(WordTally {
        word: word.iter().map(|&p| p + 1).collect(),
        total: report.total,
        even: report.even,
        odd: report.odd,
    })
}

/// Sweeps weight words of length n over the group, tallying the
/// permutation census of each, and flags any word whose census is
/// unbalanced when `n >= 2k`. The per-word work is independent and runs
/// in parallel; the merged report does not depend on scheduling.
pub fn swan_check(
    group: &FiniteGroup,
    n: usize,
    mode: SweepMode,
    keep_rows: bool,
    caps: &Caps,
) -> Result<SwanReport> {
    let k = group.order();
    let asserted = n >= 2 * k;
    let indices: Vec<u128> = match mode {
        SweepMode::Exhaustive => {
            let total = (k as u128)
                .checked_pow(n as u32)
                .ok_or(Error::BudgetExceeded {
                    needed: u128::MAX,
                    budget: caps.enum_budget,
                })?;
            if total > caps.enum_budget {
                return Err(Error::BudgetExceeded {
                    needed: total,
                    budget: caps.enum_budget,
                });
            }
            (0..total).collect()
        }
        SweepMode::Sample { count, seed } => {
            if count as u128 > caps.enum_budget {
                return Err(Error::BudgetExceeded {
                    needed: count as u128,
                    budget: caps.enum_budget,
                });
            }
            let total = (k as u128).saturating_pow(n as u32);
            let mut state = seed;
            (0..count)
                .map(|_| {
                    // splitmix64 steps, reduced mod the word count
                    state = state.wrapping_add(0x9E3779B97F4A7C15);
                    let mut z = state as u128;
                    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
                    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
                    (z ^ (z >> 31)) % total
                })
                .collect()
        }
    };
    let tallies: Result<Vec<WordTally>> = indices
        .par_iter()
        .map(|&idx| tally_word(group, &word_from_index(idx, k, n), caps))
        .collect();
    let tallies = tallies?;
    let violations = if asserted {
        tallies
            .iter()
            .filter(|t| t.even != t.odd)
            .cloned()
            .collect()
    } else {
        Vec::new()
    };
    Ok(SwanReport {
        group: group.label().to_string(),
        k,
        n,
        words_checked: tallies.len() as u64,
        asserted,
        violations,
        rows: keep_rows.then_some(tallies),
    })
}

/// A swap of two path segments that share both endpoint vertices.
///
/// Positions are 1-based and inclusive, relative to the factor order of
/// the monomial the swap applies to; `seg1` ends before `seg2` starts.
/// Swapping the segments (the stretch between them stays put) yields
/// another Eulerian path of the same graph, so the induced rearrangement
/// is prefix-product-preserving.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSwap {
    /// Common start vertex of both segments.
    pub from: GroupElement,
    /// Common end vertex of both segments.
    pub to: GroupElement,
    pub seg1: (usize, usize),
    pub seg2: (usize, usize),
}

impl BasicSwap {
    /// The position rearrangement `rho` with `new[j] = old[rho(j)]`.
    pub fn rearrangement(&self, n: usize) -> Result<Permutation> {
        let (a1, b1) = self.seg1;
        let (a2, b2) = self.seg2;
        if !(1 <= a1 && a1 <= b1 && b1 < a2 && a2 <= b2 && b2 <= n) {
            return Err(Error::InvalidSwap(format!(
                "segments {:?} and {:?} are not ordered disjoint ranges in 1..={}",
                self.seg1, self.seg2, n
            )));
        }
        let mut images = Vec::with_capacity(n);
        images.extend(1..a1);
        images.extend(a2..=b2); // second segment moves forward
        images.extend(b1 + 1..a2); // middle stays
        images.extend(a1..=b1); // first segment moves back
        images.extend(b2 + 1..=n);
        Permutation::from_images(images)
    }

    /// Checks the swap against a monomial: ranges in bounds and both
    /// segments running from `self.from` to `self.to` along m's path.
    pub fn validate_for(&self, m: &Monomial) -> Result<()> {
        let n = m.degree();
        self.rearrangement(n)?; // range sanity
        let prefix = m.prefix_products();
        for (name, (a, b)) in [("segment1", self.seg1), ("segment2", self.seg2)] {
            if prefix[a - 1] != self.from {
                return Err(Error::InvalidSwap(format!(
                    "{name} starts at {} rather than {}",
                    prefix[a - 1].name(),
                    self.from.name()
                )));
            }
            if prefix[b] != self.to {
                return Err(Error::InvalidSwap(format!(
                    "{name} ends at {} rather than {}",
                    prefix[b].name(),
                    self.to.name()
                )));
            }
        }
        Ok(())
    }

    /// Validates and applies the swap, returning the reordered monomial.
    pub fn apply(&self, m: &Monomial) -> Result<Monomial> {
        self.validate_for(m)?;
        m.permuted(&self.rearrangement(m.degree())?)
    }
}

/// Factors a prefix-product-preserving permutation into basic swaps.
///
/// The returned swaps apply in order starting from `m` itself: swap 1
/// applies to m, swap 2 to the result, and so on; after the last swap the
/// factor order is exactly `pi(m)`. Each swap is valid (hence
/// prefix-product-preserving) for the monomial it is applied to. The
/// construction restores edge 1 to the front of the permuted path, then
/// recurses on the remaining suffix, so at most `degree` swaps come back;
/// the identity yields an empty sequence.
pub fn basic_decomposition(m: &Monomial, pi: &Permutation) -> Result<Vec<BasicSwap>> {
    if !is_ipp(m, pi)? {
        return Err(Error::NotIpp);
    }
    let n = m.degree();
    let prefix = m.prefix_products();
    // current path: factor positions of m in traversal order, 1-based
    let mut path: Vec<usize> = (1..=n).map(|j| pi.image(j)).collect();
    let mut reductions: Vec<BasicSwap> = Vec::new();

    for t in 1..=n {
        if path[t - 1] == t {
            continue;
        }
        let p1 = t
            + path[t..]
                .iter()
                .position(|&v| v == t)
                .expect("t occurs after slot t")
            + 1;
        let p2 = t + path[t - 1..]
            .iter()
            .position(|&v| v == t + 1)
            .expect("t+1 present");
        let (seg1, seg2) = if p2 < p1 {
            // edge t+1 comes before edge t: a segment from the window start
            // to edge t's endpoint already exists; swap it with edge t.
            if p2 > t {
                ((t, p2 - 1), (p1, p1))
            } else {
                // edge t is a loop; swap the closed walk before it with it
                ((t, p1 - 1), (p1, p1))
            }
        } else {
            // edge t+1 comes after edge t: take the smallest r whose edge
            // precedes edge t while edge r-1 follows it, and swap the two
            // segments ending at edge r-1's endpoint.
            let r = *path[t - 1..p1 - 1].iter().min().expect("nonempty");
            debug_assert!(r >= t + 2);
            let q = t + path[t - 1..]
                .iter()
                .position(|&v| v == r)
                .expect("r present");
            let q2 = t + path[t - 1..]
                .iter()
                .position(|&v| v == r - 1)
                .expect("r-1 present");
            debug_assert!(q < p1 && q2 > p1);
            if q > t {
                ((t, q - 1), (p1, q2))
            } else {
                ((t, p1 - 1), (p1, q2))
            }
        };
        let from = prefix[path[seg1.0 - 1] - 1].clone();
        let to = prefix[path[seg1.1 - 1]].clone();
        let swap = BasicSwap {
            from,
            to,
            seg1,
            seg2,
        };
        let rho = swap.rearrangement(n)?;
        path = (1..=n).map(|j| path[rho.image(j) - 1]).collect();
        debug_assert_eq!(path[t - 1], t);
        reductions.push(swap);
    }
    debug_assert!(path.iter().enumerate().all(|(i, &v)| v == i + 1));

    // Reverse each reduction into the swap that re-creates it, in reverse
    // order, so the output runs from m forward to pi(m).
    let mut out = Vec::with_capacity(reductions.len());
    for swap in reductions.into_iter().rev() {
        let (a1, b1) = swap.seg1;
        let (a2, b2) = swap.seg2;
        let (len1, len2) = (b1 - a1 + 1, b2 - a2 + 1);
        out.push(BasicSwap {
            from: swap.from,
            to: swap.to,
            seg1: (a1, a1 + len2 - 1),
            seg2: (b2 - len1 + 1, b2),
        });
    }
    Ok(out)
}
