//! Strongly multilinear monomials and rational combinations of them.
//!
//! A monomial is an ordered product `x[i1,w1] x[i2,w2] ...` of graded
//! variables with pairwise distinct numeric indices; the group element
//! `wj` is the weight of the j-th factor. The text grammar
//! (whitespace-insensitive) is:
//!
//! ```text
//! Poly     := [Sign] Term (Sign Term)*      Sign := "+" | "-"
//! Term     := [RATIONAL ["*"]] Monomial
//! Monomial := Factor+
//! Factor   := "x" "[" INT "," NAME "]"
//! RATIONAL := INT ["/" INT]
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupElement};
use crate::paths::Permutation;

/// A strongly multilinear monomial over a fixed group.
#[derive(Clone, PartialEq, Eq)]
pub struct Monomial {
    group: FiniteGroup,
    factors: Vec<(u32, GroupElement)>,
}

impl Monomial {
    /// Builds a monomial, rejecting repeated variable indices, index 0, and
    /// weights from a different group.
    pub fn new(group: &FiniteGroup, factors: Vec<(u32, GroupElement)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (var, w) in &factors {
            if *var == 0 {
                return Err(Error::Parse {
                    pos: 0,
                    msg: "variable index must be positive".into(),
                });
            }
            if !seen.insert(*var) {
                return Err(Error::RepeatedVariable(*var));
            }
            if w.group() != group {
                return Err(Error::GroupMismatch);
            }
        }
        Ok(Monomial {
            group: group.clone(),
            factors,
        })
    }

    /// The degree-0 monomial (empty product). Only meaningful where the
    /// empty-monomial convention is documented.
    pub fn empty(group: &FiniteGroup) -> Self {
        Monomial {
            group: group.clone(),
            factors: Vec::new(),
        }
    }

    /// `x[1,w1] x[2,w2] ... x[n,wn]` for a weight word.
    pub fn from_weights(group: &FiniteGroup, weights: &[GroupElement]) -> Result<Self> {
        let factors = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (i as u32 + 1, w.clone()))
            .collect();
        Self::new(group, factors)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[(u32, GroupElement)] {
        &self.factors
    }

    /// Weight of the j-th factor (0-based position).
    pub fn weight(&self, j: usize) -> &GroupElement {
        &self.factors[j].1
    }

    /// Prefix products `e, w1, w1w2, ..., w1..wn` (length degree+1).
    pub fn prefix_products(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.degree() + 1);
        let mut acc = self.group.identity();
        out.push(acc.clone());
        for (_, w) in &self.factors {
            acc = acc.mul(w).expect("same group by construction");
            out.push(acc.clone());
        }
        out
    }

    /// The reordered monomial whose j-th factor is this monomial's
    /// `pi(j)`-th factor.
    pub fn permuted(&self, pi: &Permutation) -> Result<Monomial> {
        if pi.len() != self.degree() {
            return Err(Error::LengthMismatch {
                got: pi.len(),
                want: self.degree(),
            });
        }
        let factors = (1..=self.degree())
            .map(|j| self.factors[pi.image(j) - 1].clone())
            .collect();
        Ok(Monomial {
            group: self.group.clone(),
            factors,
        })
    }

    /// Factor list sorted by variable index; two monomials are reorderings
    /// of each other exactly when these agree.
    pub fn sorted_factor_key(&self) -> Vec<(u32, usize)> {
        let mut key: Vec<(u32, usize)> =
            self.factors.iter().map(|(v, w)| (*v, w.index())).collect();
        key.sort_unstable();
        key
    }

    pub(crate) fn ordered_factor_key(&self) -> Vec<(u32, usize)> {
        self.factors.iter().map(|(v, w)| (*v, w.index())).collect()
    }

    /// Canonical text form, `x[3,s] x[2,s2] ...`.
    pub fn render(&self) -> String {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(v, w)| format!("x[{},{}]", v, w.name()))
            .collect();
        parts.join(" ")
    }

    /// Parses a monomial over the given group.
    pub fn parse(text: &str, group: &FiniteGroup) -> Result<Self> {
        let mut cur = Cursor::new(text, group);
        let m = cur.monomial()?;
        cur.end()?;
        Ok(m)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// A rational-coefficient combination of strongly multilinear monomials
/// over one group. Terms with identical factor sequences are merged and
/// zero coefficients dropped at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedPolynomial {
    group: FiniteGroup,
    terms: Vec<(BigRational, Monomial)>,
}

impl GradedPolynomial {
    pub fn new(group: &FiniteGroup, terms: Vec<(BigRational, Monomial)>) -> Result<Self> {
        let mut order: Vec<Vec<(u32, usize)>> = Vec::new();
        let mut merged: HashMap<Vec<(u32, usize)>, (BigRational, Monomial)> = HashMap::new();
        for (c, m) in terms {
            if m.group() != group {
                return Err(Error::GroupMismatch);
            }
            let key = m.ordered_factor_key();
            match merged.get_mut(&key) {
                Some((acc, _)) => *acc += c,
                None => {
                    order.push(key.clone());
                    merged.insert(key, (c, m));
                }
            }
        }
        let out = order
            .into_iter()
            .filter_map(|key| {
                let (c, m) = merged.remove(&key).unwrap();
                (!c.is_zero()).then_some((c, m))
            })
            .collect();
        Ok(GradedPolynomial {
            group: group.clone(),
            terms: out,
        })
    }

    pub fn zero(group: &FiniteGroup) -> Self {
        GradedPolynomial {
            group: group.clone(),
            terms: Vec::new(),
        }
    }

    /// The binomial `m - pi(m)`.
    pub fn binomial(m: &Monomial, pi: &Permutation) -> Result<Self> {
        let r = m.permuted(pi)?;
        Self::new(
            m.group(),
            vec![(BigRational::one(), m.clone()), (-BigRational::one(), r)],
        )
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn terms(&self) -> &[(BigRational, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GradedPolynomial) -> Result<GradedPolynomial> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self::new(&self.group, terms)
    }

    pub fn scale(&self, c: &BigRational) -> GradedPolynomial {
        if c.is_zero() {
            return Self::zero(&self.group);
        }
        GradedPolynomial {
            group: self.group.clone(),
            terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect(),
        }
    }

    /// Canonical text form; round-trips through [`parse`](Self::parse).
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push_str("- ");
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if !abs.is_one() {
                out.push_str(&format!("{} ", rational_text(&abs)));
            }
            out.push_str(&m.render());
        }
        out
    }

    /// Parses a polynomial over the given group. `"0"` denotes the zero
    /// polynomial.
    pub fn parse(text: &str, group: &FiniteGroup) -> Result<Self> {
        if text.trim() == "0" {
            return Ok(Self::zero(group));
        }
        let mut cur = Cursor::new(text, group);
        let p = cur.polynomial()?;
        cur.end()?;
        Ok(p)
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn rational_text(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    group: &'a FiniteGroup,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, group: &'a FiniteGroup) -> Self {
        Cursor {
            text: text.as_bytes(),
            pos: 0,
            group,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected `{}`, found `{}`", c as char, got as char)),
            None => self.err(format!("expected `{}`, found end of input", c as char)),
        }
    }

    fn integer(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer too large"))
    }

    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.text.len() && self.text[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
            while self.pos < self.text.len() {
                let b = self.text[self.pos];
                if b.is_ascii_alphanumeric() || b == b'_' || b == b'.' || b == b'^' {
                    self.pos += 1;
                } else {
                    break;
                }
            }
            Ok(std::str::from_utf8(&self.text[start..self.pos]).unwrap())
        } else {
            self.err("expected an element name")
        }
    }

    fn factor(&mut self) -> Result<(u32, GroupElement)> {
        self.skip_ws();
        match self.peek() {
            Some(b'x') => self.pos += 1,
            _ => return self.err("expected a factor `x[INT,NAME]`"),
        }
        self.expect(b'[')?;
        let var = self.integer()?;
        if var == 0 {
            return self.err("variable index must be positive");
        }
        if var > u32::MAX as u64 {
            return self.err("variable index too large");
        }
        self.expect(b',')?;
        let name_pos = self.pos;
        let name = self.name()?;
        let w = self.group.by_name(name).map_err(|_| Error::Parse {
            pos: name_pos,
            msg: format!("unknown element name `{name}`"),
        })?;
        self.expect(b']')?;
        Ok((var as u32, w))
    }

    fn monomial(&mut self) -> Result<Monomial> {
        let mut factors = vec![self.factor()?];
        while let Some(b'x') = self.peek() {
            factors.push(self.factor()?);
        }
        let pos = self.pos;
        Monomial::new(self.group, factors).map_err(|e| match e {
            Error::RepeatedVariable(v) => Error::Parse {
                pos,
                msg: format!("repeated variable index {v}"),
            },
            other => other,
        })
    }

    fn rational(&mut self) -> Result<BigRational> {
        let numer = self.integer()?;
        let mut value = BigRational::from(BigInt::from(numer));
        if let Some(b'/') = self.peek() {
            self.pos += 1;
            let denom = self.integer()?;
            if denom == 0 {
                return self.err("zero denominator");
            }
            value /= BigRational::from(BigInt::from(denom));
        }
        Ok(value)
    }

    fn term(&mut self) -> Result<(BigRational, Monomial)> {
        let coeff = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let c = self.rational()?;
                if let Some(b'*') = self.peek() {
                    self.pos += 1;
                }
                c
            }
            _ => BigRational::one(),
        };
        let m = self.monomial()?;
        Ok((coeff, m))
    }

    fn polynomial(&mut self) -> Result<GradedPolynomial> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -BigRational::one()
            }
            Some(b'+') => {
                self.pos += 1;
                BigRational::one()
            }
            _ => BigRational::one(),
        };
        loop {
            let (c, m) = self.term()?;
            terms.push((c * &sign, m));
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                _ => break,
            }
        }
        GradedPolynomial::new(self.group, terms)
    }

    fn end(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn c2() -> FiniteGroup {
        FiniteGroup::cyclic(2).unwrap()
    }

    fn c4() -> FiniteGroup {
        FiniteGroup::cyclic(4).unwrap()
    }

    #[test]
    fn parse_simple_monomial() {
        let g = c2();
        let m = Monomial::parse("x[1,s] x[2,e]", &g).unwrap();
        assert_eq!(m.degree(), 2);
        assert_eq!(m.factors()[0], (1, g.by_name("s").unwrap()));
        assert_eq!(m.factors()[1], (2, g.by_name("e").unwrap()));
    }

    #[test]
    fn repeated_index_rejected() {
        let g = c2();
        let err = Monomial::parse("x[1,s] x[1,e]", &g).unwrap_err();
        assert!(err.to_string().contains("repeated"), "{err}");
    }

    #[test]
    fn unknown_name_rejected_with_position() {
        let g = c2();
        let err = Monomial::parse("x[1,s] x[2,zz]", &g).unwrap_err();
        match err {
            Error::Parse { pos, msg } => {
                assert!(msg.contains("zz"));
                assert!(pos > 7);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn parse_two_term_polynomial() {
        let g = c4();
        let p =
            GradedPolynomial::parse("x[1,s] x[2,s3] x[3,s] - x[3,s] x[2,s3] x[1,s]", &g).unwrap();
        assert_eq!(p.terms().len(), 2);
        assert_eq!(p.terms()[0].0.to_i64(), Some(1));
        assert_eq!(p.terms()[1].0.to_i64(), Some(-1));
    }

    #[test]
    fn parse_rational_coefficients() {
        let g = c2();
        let p = GradedPolynomial::parse("3/2 x[1,e] + 2*x[2,s]x[1,e] - x[2,e]", &g).unwrap();
        assert_eq!(p.terms().len(), 3);
        assert_eq!(p.terms()[0].0, BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn malformed_rational_rejected() {
        let g = c2();
        assert!(GradedPolynomial::parse("3/0 x[1,e]", &g).is_err());
        assert!(GradedPolynomial::parse("3/ x[1,e]", &g).is_err());
    }

    #[test]
    fn duplicate_terms_merge_and_zero_drops() {
        let g = c2();
        let p = GradedPolynomial::parse("x[1,e]x[2,s] - x[1,e]x[2,s]", &g).unwrap();
        assert!(p.is_zero());
        let q = GradedPolynomial::parse("x[1,e]x[2,s] + 2 x[1,e]x[2,s]", &g).unwrap();
        assert_eq!(q.terms().len(), 1);
        assert_eq!(q.terms()[0].0.to_i64(), Some(3));
    }

    #[test]
    fn render_round_trips() {
        let g = c4();
        for text in [
            "x[1,s] x[2,s3] x[3,s]",
            "x[5,s2] x[1,e]",
            "x[1,s] x[2,s3] x[3,s] - x[3,s] x[2,s3] x[1,s]",
            "- 2 x[1,s] + 1/3 x[2,s2]x[3,e]",
        ] {
            let p = GradedPolynomial::parse(text, &g).unwrap();
            let again = GradedPolynomial::parse(&p.render(), &g).unwrap();
            assert_eq!(p, again, "render was `{}`", p.render());
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let g = c2();
        let a = GradedPolynomial::parse("x[1,s]x[2,e]-x[2,e]x[1,s]", &g).unwrap();
        let b = GradedPolynomial::parse("  x[ 1 , s ] x[2,e]  -  x[2,e] x[1,s] ", &g).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn prefix_products_track_weights() {
        let g = c4();
        let m = Monomial::parse("x[1,s] x[2,s] x[3,s2]", &g).unwrap();
        let pp = m.prefix_products();
        let names: Vec<&str> = pp.iter().map(|x| x.name()).collect();
        assert_eq!(names, ["e", "s", "s2", "e"]);
    }

    #[test]
    fn permuted_moves_factors_with_weights() {
        let g = c4();
        let m = Monomial::parse("x[1,s] x[2,s3] x[3,s]", &g).unwrap();
        let pi = Permutation::from_images(vec![3, 2, 1]).unwrap();
        let r = m.permuted(&pi).unwrap();
        assert_eq!(r.render(), "x[3,s] x[2,s3] x[1,s]");
    }
}
