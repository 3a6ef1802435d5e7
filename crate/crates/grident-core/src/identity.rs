//! Deciding graded identities, two independent ways.
//!
//! Route one partitions a polynomial's terms into equivalence classes
//! (same variable set, then same graph) and checks that every class's
//! coefficient sum vanishes. Route two substitutes `x[i,g] -> E_i P_g`,
//! where `E_i` is a diagonal matrix of fresh symbols and `P_g` comes from
//! the regular representation, and checks that the resulting symbolic
//! matrix is identically zero. The two verdicts must agree; the class
//! route is cheap, the oracle is exact brute force over exact rationals.
//!
//! Also here: the generator set for the T-ideal (the degree-2 commutator
//! in identity weights and, for each g, the degree-3 alternation in
//! weights g, g^-1, g), certificates classifying a basic swap against
//! those generators, graded specializations of the standard polynomial,
//! and monomial identities of elementary gradings with their witness
//! subsequences.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::MonomialGraph;
use crate::group::{FiniteGroup, GroupElement};
use crate::monomial::{GradedPolynomial, Monomial};
use crate::paths::{BasicSwap, Permutation, SweepMode};
use crate::Caps;

// ---------------------------------------------------------------------------
// sparse multivariate polynomials over Q, for the symbolic oracle
// ---------------------------------------------------------------------------

/// Variable identifier: symbol slot `j` of the diagonal matrix substituted
/// for the graded variable pair `(i, g)`. Identifiers are global, so
/// matrices from separate evaluations over the same group can be combined.
pub fn symbol_id(var_index: u32, weight_index: usize, slot: usize, k: usize) -> u64 {
    ((var_index as u64 - 1) * k as u64 + (weight_index as u64 - 1)) * k as u64 + slot as u64
}

/// A sparse multivariate polynomial with exact rational coefficients.
/// Exponent vectors are sorted `(variable, exponent)` lists; no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<(u64, u32)>, BigRational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(u64, u32)], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn add_term(&mut self, exps: Vec<(u64, u32)>, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            // cheap to find again; remove to keep the no-zeros invariant
            let key = self
                .terms
                .iter()
                .find(|(_, c)| c.is_zero())
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }
}

/// A k-by-k matrix of polynomials, the value of a graded polynomial under
/// the symbolic substitution.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymbolicMatrix {
    k: usize,
    entries: Vec<Poly>, // row-major
}

impl SymbolicMatrix {
    fn zero(k: usize) -> SymbolicMatrix {
        SymbolicMatrix {
            k,
            entries: vec![Poly::zero(); k * k],
        }
    }

    pub fn size(&self) -> usize {
        self.k
    }

    /// Entry at 1-based (row, col).
    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[(row - 1) * self.k + (col - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// 1-based positions of nonzero entries, row-major order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.k {
            for c in 0..self.k {
                if !self.entries[r * self.k + c].is_zero() {
                    out.push((r + 1, c + 1));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &SymbolicMatrix) -> Result<SymbolicMatrix> {
        if self.k != other.k {
            return Err(Error::LengthMismatch {
                got: other.k,
                want: self.k,
            });
        }
        let mut out = self.clone();
        for (mine, theirs) in out.entries.iter_mut().zip(&other.entries) {
            mine.add_assign(theirs);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigRational) -> SymbolicMatrix {
        SymbolicMatrix {
            k: self.k,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }
}

/// Substitutes `x[i,g] -> E_{(i,g)} P_g` with fresh diagonal symbols per
/// distinct variable pair and returns the exact symbolic value of `f`.
pub fn evaluate_symbolic(f: &GradedPolynomial, caps: &Caps) -> Result<SymbolicMatrix> {
    let group = f.group();
    let k = group.order();
    let mut pairs: BTreeSet<(u32, usize)> = BTreeSet::new();
    for (_, m) in f.terms() {
        for (var, w) in m.factors() {
            pairs.insert((*var, w.index()));
        }
    }
    let needed = pairs.len() * k;
    if needed > caps.oracle_vars {
        return Err(Error::OracleCap {
            needed,
            cap: caps.oracle_vars,
        });
    }

    // column permutation applied by each right factor: multiplying a
    // monomial matrix by E P_g sends the entry in column j to column
    // pi_g^{-1}(j), and pi_g^{-1} = pi_{g^{-1}}
    let rep = group.regular_representation();
    let inv_col: Vec<Vec<usize>> = (0..k)
        .map(|g| {
            let ginv = group.inv_pos(g);
            (0..k).map(|j| rep[ginv][j] - 1).collect()
        })
        .collect();

    let mut out = SymbolicMatrix::zero(k);
    for (coeff, m) in f.terms() {
        // product of diagonal-times-permutation factors has one entry per
        // row; track its column and symbol list
        let mut col: Vec<usize> = (0..k).collect();
        let mut syms: Vec<Vec<u64>> = vec![Vec::with_capacity(m.degree()); k];
        for (var, w) in m.factors() {
            for r in 0..k {
                syms[r].push(symbol_id(*var, w.index(), col[r], k));
                col[r] = inv_col[w.pos()][col[r]];
            }
        }
        for r in 0..k {
            let mut exps: Vec<(u64, u32)> = syms[r].iter().map(|&v| (v, 1)).collect();
            exps.sort_unstable();
            out.entries[r * k + col[r]].add_term(exps, coeff.clone());
        }
    }
    Ok(out)
}

/// Oracle verdict: does the symbolic value vanish identically?
pub fn is_identity_oracle(f: &GradedPolynomial, caps: &Caps) -> Result<bool> {
    Ok(evaluate_symbolic(f, caps)?.is_zero())
}

// ---------------------------------------------------------------------------
// equivalence-class decision
// ---------------------------------------------------------------------------

/// One equivalence class of a polynomial's terms: monomials on the same
/// variable set with the same graph.
#[derive(Debug, Clone)]
pub struct IdentityClass {
    pub representative: Monomial,
    pub size: usize,
    pub sum: BigRational,
}

/// Partition of a polynomial into equivalence classes with per-class
/// coefficient sums. The polynomial is an identity exactly when every
/// class sum is zero.
#[derive(Debug, Clone)]
pub struct ClassReport {
    pub classes: Vec<IdentityClass>,
    pub is_identity: bool,
}

/// Decides whether `f` is a graded identity by class sums. Terms are
/// grouped by variable set first (substitutions for different variable
/// sets are independent), then by graph within each set.
pub fn is_identity_classes(f: &GradedPolynomial) -> ClassReport {
    type Key = (Vec<(u32, usize)>, Vec<(u32, usize, usize)>);
    let mut index: HashMap<Key, usize> = HashMap::new();
    let mut classes: Vec<IdentityClass> = Vec::new();
    for (coeff, m) in f.terms() {
        let graph = MonomialGraph::of_monomial(m);
        let flat: Vec<(u32, usize, usize)> = graph
            .edge_map()
            .iter()
            .map(|(&l, &(s, d))| (l, s, d))
            .collect();
        let key = (m.sorted_factor_key(), flat);
        match index.get(&key) {
            Some(&i) => {
                classes[i].size += 1;
                classes[i].sum += coeff;
            }
            None => {
                index.insert(key, classes.len());
                classes.push(IdentityClass {
                    representative: m.clone(),
                    size: 1,
                    sum: coeff.clone(),
                });
            }
        }
    }
    let is_identity = classes.iter().all(|c| c.sum.is_zero());
    ClassReport {
        classes,
        is_identity,
    }
}

// ---------------------------------------------------------------------------
// generators and certificates
// ---------------------------------------------------------------------------

/// The generating set of the T-ideal of graded identities: the
/// identity-weight commutator `x[1,e]x[2,e] - x[2,e]x[1,e]` and, for each
/// group element g, `x[1,g]x[2,g^-1]x[3,g] - x[3,g]x[2,g^-1]x[1,g]`.
pub fn bd_generators(group: &FiniteGroup) -> Vec<GradedPolynomial> {
    let e = group.identity();
    let mut out = Vec::with_capacity(group.order() + 1);
    let type1 = Monomial::new(group, vec![(1, e.clone()), (2, e.clone())]).unwrap();
    out.push(
        GradedPolynomial::binomial(&type1, &Permutation::from_images(vec![2, 1]).unwrap()).unwrap(),
    );
    for g in group.elements() {
        let m = Monomial::new(group, vec![(1, g.clone()), (2, g.inv()), (3, g.clone())]).unwrap();
        out.push(
            GradedPolynomial::binomial(&m, &Permutation::from_images(vec![3, 2, 1]).unwrap())
                .unwrap(),
        );
    }
    out
}

/// Which generator shape a basic swap reduces to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    /// Both segments are loops at one vertex (generator type 1 territory).
    LoopSwap,
    /// Segments alternate between two distinct vertices (generator type 2).
    AlternatingSegments,
}

/// Classification of a basic swap, with its segment boundaries and the
/// weight products that witness the classification.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub from: GroupElement,
    pub to: GroupElement,
    /// `from^-1 * to`: the common weight product of both swapped segments.
    pub conjugator: GroupElement,
    pub seg1: (usize, usize),
    /// The stretch between the segments, when nonempty.
    pub middle: Option<(usize, usize)>,
    pub seg2: (usize, usize),
}

fn weight_product(m: &Monomial, range: (usize, usize)) -> GroupElement {
    let mut acc = m.group().identity();
    for j in range.0..=range.1 {
        acc = acc.mul(m.weight(j - 1)).expect("same group");
    }
    acc
}

/// Validates a basic swap against `m` and classifies it, recomputing all
/// three segment weight products as a consistency check.
pub fn certificate_from_basic(m: &Monomial, swap: &BasicSwap) -> Result<Certificate> {
    swap.validate_for(m)?;
    let conjugator = swap.from.inv().mul(&swap.to)?;
    let middle = (swap.seg1.1 + 1 < swap.seg2.0).then_some((swap.seg1.1 + 1, swap.seg2.0 - 1));
    for (name, range, want) in [
        ("segment1", Some(swap.seg1), conjugator.clone()),
        ("middle", middle, swap.to.inv().mul(&swap.from)?),
        ("segment2", Some(swap.seg2), conjugator.clone()),
    ] {
        if let Some(range) = range {
            let got = weight_product(m, range);
            if got != want {
                return Err(Error::InvalidSwap(format!(
                    "{name} weight product is {got} rather than {want}"
                )));
            }
        }
    }
    let kind = if swap.from == swap.to {
        CertificateKind::LoopSwap
    } else {
        CertificateKind::AlternatingSegments
    };
    Ok(Certificate {
        kind,
        from: swap.from.clone(),
        to: swap.to.clone(),
        conjugator,
        seg1: swap.seg1,
        middle,
        seg2: swap.seg2,
    })
}

// ---------------------------------------------------------------------------
// the standard polynomial
// ---------------------------------------------------------------------------

/// The graded specialization of the standard polynomial: the signed sum
/// over all reorderings of `x[1,w1] x[2,w2] ... x[n,wn]`.
pub fn standard_polynomial(
    n: usize,
    weights: &[GroupElement],
    caps: &Caps,
) -> Result<GradedPolynomial> {
    if weights.len() != n {
        return Err(Error::LengthMismatch {
            got: weights.len(),
            want: n,
        });
    }
    if n == 0 {
        return Err(Error::LengthMismatch { got: 0, want: 1 });
    }
    let group = weights[0].group().clone();
    let factorial: u128 = (1..=n as u128).product();
    if factorial > caps.enum_budget {
        return Err(Error::BudgetExceeded {
            needed: factorial,
            budget: caps.enum_budget,
        });
    }
    let base = Monomial::from_weights(&group, weights)?;
    let mut terms = Vec::with_capacity(factorial as usize);
    let mut images: Vec<usize> = (1..=n).collect();
    loop {
        let pi = Permutation::from_images(images.clone()).unwrap();
        let coeff = if pi.is_even() {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        terms.push((coeff, base.permuted(&pi)?));
        if !next_permutation(&mut images) {
            break;
        }
    }
    GradedPolynomial::new(&group, terms)
}

fn next_permutation(seq: &mut [usize]) -> bool {
    let n = seq.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && seq[i - 1] >= seq[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while seq[j] <= seq[i - 1] {
        j -= 1;
    }
    seq.swap(i - 1, j);
    seq[i..].reverse();
    true
}

/// Per-word verdicts for a standard-polynomial sweep.
#[derive(Debug, Clone)]
pub struct StandardReport {
    pub group: String,
    pub k: usize,
    pub n: usize,
    pub words_checked: u64,
    /// The balance is asserted when `n >= 2k`.
    pub asserted: bool,
    /// Weight words (1-based element indices) whose specialization is not
    /// an identity.
    pub failures: Vec<Vec<usize>>,
    /// True when every checked word gave an identity, i.e. the standard
    /// polynomial of this degree vanishes on the whole algebra as far as
    /// this sweep looked.
    pub all_identities: bool,
}

/// Sweeps weight words and checks, via class sums, whether the graded
/// specialization of the standard polynomial is an identity for each.
pub fn verify_amitsur_levitsky(
    group: &FiniteGroup,
    n: usize,
    mode: SweepMode,
    caps: &Caps,
) -> Result<StandardReport> {
    let k = group.order();
    let factorial: u128 = (1..=n as u128).product();
    let indices: Vec<u128> = match mode {
        SweepMode::Exhaustive => {
            let words = (k as u128)
                .checked_pow(n as u32)
                .ok_or(Error::BudgetExceeded {
                    needed: u128::MAX,
                    budget: caps.enum_budget,
                })?;
            let work = words.saturating_mul(factorial);
            if work > caps.enum_budget {
                return Err(Error::BudgetExceeded {
                    needed: work,
                    budget: caps.enum_budget,
                });
            }
            (0..words).collect()
        }
        SweepMode::Sample { count, seed } => {
            let work = (count as u128).saturating_mul(factorial);
            if work > caps.enum_budget {
                return Err(Error::BudgetExceeded {
                    needed: work,
                    budget: caps.enum_budget,
                });
            }
            let total = (k as u128).saturating_pow(n as u32);
            let mut state = seed;
            (0..count)
                .map(|_| {
                    state = state.wrapping_add(0x9E3779B97F4A7C15);
                    let mut z = state as u128;
                    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
                    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
                    (z ^ (z >> 31)) % total
                })
                .collect()
        }
    };
    let failures: Result<Vec<Option<Vec<usize>>>> = indices
        .par_iter()
        .map(|&idx| {
            let mut word = vec![0usize; n];
            let mut v = idx;
            for j in (0..n).rev() {
                word[j] = (v % k as u128) as usize;
                v /= k as u128;
            }
            let weights: Vec<GroupElement> = word.iter().map(|&p| group.element_at(p)).collect();
            let f = standard_polynomial(n, &weights, caps)?;
            let verdict = is_identity_classes(&f).is_identity;
            Ok((!verdict).then(|| word.iter().map(|&p| p + 1).collect()))
        })
        .collect();
    let failures: Vec<Vec<usize>> = failures?.into_iter().flatten().collect();
    Ok(StandardReport {
        group: group.label().to_string(),
        k,
        n,
        words_checked: indices.len() as u64,
        asserted: n >= 2 * k,
        all_identities: failures.is_empty(),
        failures,
    })
}

// ---------------------------------------------------------------------------
// elementary gradings and monomial identities
// ---------------------------------------------------------------------------

/// An elementary grading of the t-by-t matrices by a tuple of distinct
/// elements of an ambient group: the unit `e_{rs}` is homogeneous of
/// degree `tuple[r]^-1 * tuple[s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryGrading {
    group: FiniteGroup,
    tuple: Vec<GroupElement>,
}

impl ElementaryGrading {
    pub fn new(group: &FiniteGroup, tuple: Vec<GroupElement>) -> Result<Self> {
        if tuple.is_empty() {
            return Err(Error::InvalidGradingTuple);
        }
        let mut seen = BTreeSet::new();
        for x in &tuple {
            if x.group() != group || !seen.insert(x.index()) {
                return Err(Error::InvalidGradingTuple);
            }
        }
        Ok(ElementaryGrading {
            group: group.clone(),
            tuple: tuple.clone(),
        })
    }

    /// The tuple defining the crossed-product grading itself: all group
    /// elements in their canonical order.
    pub fn full(group: &FiniteGroup) -> Self {
        ElementaryGrading {
            group: group.clone(),
            tuple: group.elements().collect(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn tuple(&self) -> &[GroupElement] {
        &self.tuple
    }

    pub fn matrix_size(&self) -> usize {
        self.tuple.len()
    }

    /// Matrix units spanning the degree-g component, as 1-based (row, col)
    /// pairs: those with `tuple[r]^-1 * tuple[s] = g`.
    pub fn component_units(&self, g: &GroupElement) -> Result<Vec<(usize, usize)>> {
        if g.group() != &self.group {
            return Err(Error::GroupMismatch);
        }
        let t = self.tuple.len();
        let mut out = Vec::new();
        for r in 0..t {
            for s in 0..t {
                if self.tuple[r].inv().mul(&self.tuple[s])? == *g {
                    out.push((r + 1, s + 1));
                }
            }
        }
        Ok(out)
    }
}

/// Verdict and witness for a monomial over an elementary grading.
#[derive(Debug, Clone)]
pub struct ElementaryIdentityReport {
    pub is_identity: bool,
    /// Sizes of the running coset-intersection chain after each weight
    /// (index 0 is `|tuple|`, before any weight).
    pub chain_sizes: Vec<usize>,
    /// Kept weight positions `j_1 < ... < j_m` (1-based) whose reduced
    /// chain is already empty; present only for identities, length at most
    /// the tuple size.
    pub witness: Option<Vec<usize>>,
    /// Weights of the reduced degree-m monomial, itself an identity for
    /// this grading.
    pub reduced_weights: Option<Vec<GroupElement>>,
    /// Factorization point: the monomial splits as (identity prefix of
    /// this length) * (arbitrary tail).
    pub split: Option<usize>,
}

/// Decides whether `x[1,h1] ... x[u,hu]` is an identity for the elementary
/// grading via the coset-intersection chain, and extracts the greedy
/// witness subsequence when it is.
///
/// The chain tracks the admissible starting labels: after weight j the
/// survivors are the tuple entries x with `x * h1...hj` still in the
/// tuple, i.e. the running intersection of the right cosets
/// `E(h1...hj)^-1`. A weight is kept exactly when it strictly shrinks the
/// survivor set, which leaves the final intersection unchanged; an empty
/// final set means no chain of matrix units survives, so the monomial
/// vanishes identically.
pub fn elementary_monomial_identity(
    grading: &ElementaryGrading,
    weights: &[GroupElement],
) -> Result<ElementaryIdentityReport> {
    let group = grading.group();
    for h in weights {
        if h.group() != group {
            return Err(Error::GroupMismatch);
        }
    }
    let members: BTreeSet<usize> = grading.tuple().iter().map(|x| x.index()).collect();
    let mut survivors: BTreeSet<usize> = members.clone();
    let mut chain_sizes = vec![survivors.len()];
    let mut witness = Vec::new();
    let mut kept_products = Vec::new();
    let mut prefix = group.identity();
    for (j, h) in weights.iter().enumerate() {
        prefix = prefix.mul(h)?;
        let next: BTreeSet<usize> = survivors
            .iter()
            .copied()
            .filter(|&idx| {
                let x = group.element_at(idx - 1);
                members.contains(&x.mul(&prefix).expect("same group").index())
            })
            .collect();
        if next.len() < survivors.len() {
            witness.push(j + 1);
            kept_products.push(prefix.clone());
            survivors = next;
        }
        chain_sizes.push(survivors.len());
    }
    let is_identity = survivors.is_empty();
    if is_identity {
        // reduced monomial weights: consecutive quotients of the kept
        // prefix products
        let mut reduced = Vec::with_capacity(kept_products.len());
        let mut prev = group.identity();
        for y in &kept_products {
            reduced.push(prev.inv().mul(y)?);
            prev = y.clone();
        }
        let split = witness.last().copied();
        Ok(ElementaryIdentityReport {
            is_identity,
            chain_sizes,
            witness: Some(witness),
            reduced_weights: Some(reduced),
            split,
        })
    } else {
        Ok(ElementaryIdentityReport {
            is_identity,
            chain_sizes,
            witness: None,
            reduced_weights: None,
            split: None,
        })
    }
}

/// Independent check by brute force: substitutes every choice of matrix
/// units from the respective components and multiplies the matrices out.
/// Returns true when every product vanishes. A weight whose component is
/// empty makes the monomial vanish vacuously.
pub fn vanishes_on_matrix_units(
    grading: &ElementaryGrading,
    weights: &[GroupElement],
    caps: &Caps,
) -> Result<bool> {
    let t = grading.matrix_size();
    let mut unit_choices: Vec<Vec<(usize, usize)>> = Vec::with_capacity(weights.len());
    let mut tuples: u128 = 1;
    for h in weights {
        let units = grading.component_units(h)?;
        if units.is_empty() {
            return Ok(true);
        }
        tuples = tuples.saturating_mul(units.len() as u128);
        unit_choices.push(units);
    }
    if tuples > caps.enum_budget {
        return Err(Error::BudgetExceeded {
            needed: tuples,
            budget: caps.enum_budget,
        });
    }

    let unit_matrix = |r: usize, s: usize| -> Vec<bool> {
        let mut m = vec![false; t * t];
        m[(r - 1) * t + (s - 1)] = true;
        m
    };
    let mul = |a: &[bool], b: &[bool]| -> Vec<bool> {
        let mut out = vec![false; t * t];
        for i in 0..t {
            for l in 0..t {
                if a[i * t + l] {
                    for j in 0..t {
                        if b[l * t + j] {
                            out[i * t + j] = true;
                        }
                    }
                }
            }
        }
        out
    };

    let mut choice = vec![0usize; weights.len()];
    loop {
        let mut acc = unit_matrix(unit_choices[0][choice[0]].0, unit_choices[0][choice[0]].1);
        for (j, units) in unit_choices.iter().enumerate().skip(1) {
            let (r, s) = units[choice[j]];
            acc = mul(&acc, &unit_matrix(r, s));
        }
        if acc.iter().any(|&b| b) {
            return Ok(false);
        }
        // next choice vector
        let mut j = weights.len();
        loop {
            if j == 0 {
                return Ok(true);
            }
            j -= 1;
            choice[j] += 1;
            if choice[j] < unit_choices[j].len() {
                break;
            }
            choice[j] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::{basic_decomposition, ipp_permutations};

    fn caps() -> Caps {
        Caps::default()
    }

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2).unwrap()
    }

    fn c3() -> FiniteGroup {
        FiniteGroup::cyclic(3).unwrap()
    }

    fn c4() -> FiniteGroup {
        FiniteGroup::cyclic(4).unwrap()
    }

    #[test]
    fn identity_weight_commutator_is_identity() {
        for g in [c2(), c3(), FiniteGroup::symmetric(3).unwrap()] {
            let f = GradedPolynomial::parse("x[1,e]x[2,e] - x[2,e]x[1,e]", &g).unwrap();
            let report = is_identity_classes(&f);
            assert!(report.is_identity);
            assert_eq!(report.classes.len(), 1);
            assert!(is_identity_oracle(&f, &caps()).unwrap());
        }
    }

    #[test]
    fn degree_three_generator_over_c3() {
        let g = c3();
        let f = GradedPolynomial::parse("x[1,s]x[2,s2]x[3,s] - x[3,s]x[2,s2]x[1,s]", &g).unwrap();
        assert!(is_identity_classes(&f).is_identity);
        assert!(is_identity_oracle(&f, &caps()).unwrap());
    }

    #[test]
    fn loop_order_commutator_is_not_identity() {
        let g = c2();
        let f = GradedPolynomial::parse("x[1,e]x[2,s] - x[2,s]x[1,e]", &g).unwrap();
        let report = is_identity_classes(&f);
        assert!(!report.is_identity);
        assert_eq!(report.classes.len(), 2);
        let sums: Vec<i64> = report
            .classes
            .iter()
            .map(|c| c.sum.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(sums.iter().sum::<i64>(), 0);
        assert!(sums.contains(&1) && sums.contains(&-1));
        assert!(!is_identity_oracle(&f, &caps()).unwrap());
    }

    #[test]
    fn single_variable_evaluates_to_symbol_diagonal() {
        let g = c2();
        let f = GradedPolynomial::parse("x[1,e]", &g).unwrap();
        let m = evaluate_symbolic(&f, &caps()).unwrap();
        assert!(!m.is_zero());
        assert_eq!(m.nonzero_entries(), vec![(1, 1), (2, 2)]);
        assert_eq!(m.entry(1, 1).term_count(), 1);
        assert!(m.entry(1, 2).is_zero());
    }

    #[test]
    fn bd_generator_count_and_verdicts() {
        let gens = bd_generators(&c3());
        assert_eq!(gens.len(), 4);
        for f in &gens {
            assert!(is_identity_classes(f).is_identity);
            assert!(is_identity_oracle(f, &caps()).unwrap());
        }
    }

    #[test]
    fn standard_three_vanishes_on_diagonal_weights_but_not_everywhere() {
        let g = c2();
        let e = g.identity();
        let s = g.by_name("s").unwrap();
        // identity-weight substitutions are commuting diagonals, so the
        // alternating sum collapses
        let diag = standard_polynomial(3, &[e.clone(), e.clone(), e.clone()], &caps()).unwrap();
        assert!(is_identity_oracle(&diag, &caps()).unwrap());
        assert!(is_identity_classes(&diag).is_identity);
        // one loop weight plus two identity weights does not vanish
        let mixed = standard_polynomial(3, &[e.clone(), e.clone(), s], &caps()).unwrap();
        assert!(!is_identity_oracle(&mixed, &caps()).unwrap());
        assert!(!is_identity_classes(&mixed).is_identity);
    }

    #[test]
    fn standard_four_identity_for_m2_single_word() {
        let g = c2();
        let e = g.identity();
        let s = g.by_name("s").unwrap();
        let f =
            standard_polynomial(4, &[e.clone(), s.clone(), s.clone(), e.clone()], &caps()).unwrap();
        assert!(is_identity_classes(&f).is_identity);
        assert!(is_identity_oracle(&f, &caps()).unwrap());
    }

    #[test]
    fn al_sweep_degree_three_fails_somewhere() {
        let report = verify_amitsur_levitsky(&c2(), 3, SweepMode::Exhaustive, &caps()).unwrap();
        assert_eq!(report.words_checked, 8);
        assert!(!report.asserted);
        assert!(!report.all_identities);
        // the all-identity word does vanish, so not every word fails
        assert!(report.failures.len() < 8);
    }

    #[test]
    fn al_sweep_degree_four_all_identities() {
        let report = verify_amitsur_levitsky(&c2(), 4, SweepMode::Exhaustive, &caps()).unwrap();
        assert!(report.asserted);
        assert!(report.all_identities, "failures: {:?}", report.failures);
        assert_eq!(report.words_checked, 16);
    }

    #[test]
    fn symbolic_evaluation_is_linear() {
        let g = c3();
        let f = GradedPolynomial::parse("x[1,s]x[2,e] + 2 x[2,e]x[1,s]", &g).unwrap();
        let h = GradedPolynomial::parse("x[1,s]x[2,e] - x[3,s2]", &g).unwrap();
        let a = BigRational::new(3.into(), 2.into());
        let b = BigRational::from_integer((-2).into());
        let combo = f.scale(&a).add(&h.scale(&b)).unwrap();
        let lhs = evaluate_symbolic(&combo, &caps()).unwrap();
        let rhs = evaluate_symbolic(&f, &caps())
            .unwrap()
            .scale(&a)
            .add(&evaluate_symbolic(&h, &caps()).unwrap().scale(&b))
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn oracle_cap_enforced() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let weights: Vec<GroupElement> = (0..7).map(|_| g.identity()).collect();
        let m = Monomial::from_weights(&g, &weights).unwrap();
        let f = GradedPolynomial::new(&g, vec![(BigRational::one(), m)]).unwrap();
        assert!(matches!(
            is_identity_oracle(&f, &caps()),
            Err(Error::OracleCap {
                needed: 42,
                cap: 40
            })
        ));
    }

    #[test]
    fn certificate_for_segment_against_edge_swap() {
        let g = c3();
        let m = Monomial::parse("x[1,s] x[2,s] x[3,s] x[4,s2]", &g).unwrap();
        let pi = Permutation::from_images(vec![4, 3, 1, 2]).unwrap();
        let swaps = basic_decomposition(&m, &pi).unwrap();
        assert_eq!(swaps.len(), 1);
        let cert = certificate_from_basic(&m, &swaps[0]).unwrap();
        assert_eq!(cert.kind, CertificateKind::AlternatingSegments);
        assert_eq!(cert.conjugator.name(), "s2");
    }

    #[test]
    fn certificate_for_loop_swap() {
        let g = c2();
        let m = Monomial::parse("x[1,e] x[2,e]", &g).unwrap();
        let report = ipp_permutations(&m, &caps()).unwrap();
        let swapped = report
            .permutations
            .iter()
            .find(|p| !p.is_identity())
            .unwrap();
        let swaps = basic_decomposition(&m, swapped).unwrap();
        assert_eq!(swaps.len(), 1);
        let cert = certificate_from_basic(&m, &swaps[0]).unwrap();
        assert_eq!(cert.kind, CertificateKind::LoopSwap);
        assert!(cert.conjugator.is_identity());
    }

    #[test]
    fn invalid_swap_rejected() {
        let g = c2();
        let m = Monomial::parse("x[1,e] x[2,s]", &g).unwrap();
        let swap = BasicSwap {
            from: g.identity(),
            to: g.identity(),
            seg1: (1, 1),
            seg2: (2, 2),
        };
        assert!(certificate_from_basic(&m, &swap).is_err());
    }

    #[test]
    fn elementary_two_sigmas_is_identity_with_short_witness() {
        let g = c4();
        let s = g.by_name("s").unwrap();
        let grading = ElementaryGrading::new(&g, vec![g.identity(), s.clone()]).unwrap();
        let report = elementary_monomial_identity(&grading, &[s.clone(), s.clone()]).unwrap();
        assert!(report.is_identity);
        let witness = report.witness.unwrap();
        assert!(witness.len() <= 2);
        assert_eq!(witness, vec![1, 2]);
        assert!(vanishes_on_matrix_units(&grading, &[s.clone(), s], &caps()).unwrap());
    }

    #[test]
    fn elementary_sigma_squared_identity_with_empty_component() {
        let g = c4();
        let s2 = g.by_name("s2").unwrap();
        let grading =
            ElementaryGrading::new(&g, vec![g.identity(), g.by_name("s").unwrap()]).unwrap();
        assert!(grading.component_units(&s2).unwrap().is_empty());
        let report = elementary_monomial_identity(&grading, std::slice::from_ref(&s2)).unwrap();
        assert!(report.is_identity);
        assert_eq!(report.witness.unwrap().len(), 1);
        assert!(vanishes_on_matrix_units(&grading, &[s2], &caps()).unwrap());
    }

    #[test]
    fn full_tuple_never_gives_monomial_identities() {
        let g = c4();
        let grading = ElementaryGrading::full(&g);
        let s = g.by_name("s").unwrap();
        let s3 = g.by_name("s3").unwrap();
        for word in [
            vec![s.clone()],
            vec![s.clone(), s3.clone()],
            vec![s3.clone(), s3.clone()],
        ] {
            let report = elementary_monomial_identity(&grading, &word).unwrap();
            assert!(!report.is_identity);
            assert!(!vanishes_on_matrix_units(&grading, &word, &caps()).unwrap());
        }
    }

    #[test]
    fn reduced_monomial_is_itself_an_identity() {
        let g = c4();
        let s = g.by_name("s").unwrap();
        let e = g.identity();
        let grading = ElementaryGrading::new(&g, vec![e.clone(), s.clone()]).unwrap();
        // pad with harmless identity weights to force skipping
        let word = vec![e.clone(), s.clone(), e.clone(), s.clone()];
        let report = elementary_monomial_identity(&grading, &word).unwrap();
        assert!(report.is_identity);
        let reduced = report.reduced_weights.unwrap();
        assert!(reduced.len() <= 2);
        let again = elementary_monomial_identity(&grading, &reduced).unwrap();
        assert!(again.is_identity);
        assert!(vanishes_on_matrix_units(&grading, &reduced, &caps()).unwrap());
    }

    #[test]
    fn chain_matches_matrix_units_on_noncommutative_group() {
        let g = FiniteGroup::symmetric(3).unwrap();
        let elements: Vec<GroupElement> = g.elements().collect();
        for tuple in [
            vec![elements[0].clone(), elements[3].clone()],
            vec![elements[1].clone(), elements[4].clone(), elements[5].clone()],
        ] {
            let grading = ElementaryGrading::new(&g, tuple).unwrap();
            for a in &elements {
                for b in &elements {
                    for c in &elements {
                        let word = vec![a.clone(), b.clone(), c.clone()];
                        let chain = elementary_monomial_identity(&grading, &word)
                            .unwrap()
                            .is_identity;
                        let units =
                            vanishes_on_matrix_units(&grading, &word, &caps()).unwrap();
                        assert_eq!(chain, units, "word ({a}, {b}, {c})");
                    }
                }
            }
        }
    }
}
