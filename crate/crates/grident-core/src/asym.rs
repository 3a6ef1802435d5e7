//! Asymptotic codimension formulas, evaluated in log space.
//!
//! The counts grow like `k^(2n)`, far past any fixed-width float, so the
//! asymptotic expressions and the exact big-integer values are compared
//! through their natural logarithms at 192 bits of working precision.
//! The relative deviation reported for a pair is `exp(ln exact - ln
//! asymptotic) - 1`, which is where precision stops mattering and an f64
//! is enough.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigUint;
use num_traits::Zero;

use crate::codim::CountTable;
use crate::error::{Error, Result};

/// Working precision for log-space arithmetic, in mantissa bits.
pub const LOG_PRECISION: usize = 192;

/// Fixed-precision log-space evaluator with a shared constants cache.
pub struct LogSpace {
    prec: usize,
    rm: RoundingMode,
    cc: Consts,
}

impl Default for LogSpace {
    fn default() -> Self {
        Self::new()
    }
}

impl LogSpace {
    pub fn new() -> LogSpace {
        LogSpace {
            prec: LOG_PRECISION,
            rm: RoundingMode::ToEven,
            cc: Consts::new().expect("constants cache allocation"),
        }
    }

    pub fn precision_bits(&self) -> usize {
        self.prec
    }

    fn num(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.prec)
    }

    fn ln_u64(&mut self, v: u64) -> BigFloat {
        self.num(v).ln(self.prec, self.rm, &mut self.cc)
    }

    /// Natural log of an exact nonzero integer.
    pub fn ln_biguint(&mut self, x: &BigUint) -> Result<BigFloat> {
        if x.is_zero() {
            return Err(Error::AsymptoticAtZero);
        }
        let hex = format!("{:x}", x);
        let bf = BigFloat::parse(&hex, Radix::Hex, self.prec, self.rm, &mut self.cc);
        Ok(bf.ln(self.prec, self.rm, &mut self.cc))
    }

    /// `ln(4 pi n)`.
    fn ln_4pi_n(&mut self, n: u64) -> BigFloat {
        let pi = self.cc.pi(self.prec, self.rm);
        let arg = pi.mul(&self.num(4 * n), self.prec, self.rm);
        arg.ln(self.prec, self.rm, &mut self.cc)
    }

    /// `ln` of the codimension asymptotic
    /// `k^(k/2+1) (4 pi)^(-(k-1)/2) n^(-(k-1)/2) k^(2n)`, i.e.
    /// `(2n + k/2 + 1) ln k - ((k-1)/2) ln(4 pi n)`.
    pub fn asymptotic_value(&mut self, k: usize, n: usize) -> Result<BigFloat> {
        if n == 0 {
            return Err(Error::AsymptoticAtZero);
        }
        let ln_k = self.ln_u64(k as u64);
        let half = self.num(2);
        let first = ln_k
            .mul(&self.num(4 * n as u64 + k as u64 + 2), self.prec, self.rm)
            .div(&half, self.prec, self.rm);
        let second = self
            .ln_4pi_n(n as u64)
            .mul(&self.num(k as u64 - 1), self.prec, self.rm)
            .div(&half, self.prec, self.rm);
        Ok(first.sub(&second, self.prec, self.rm))
    }

    /// `ln` of the balanced-count asymptotic
    /// `k^(2n + k/2) (4 pi n)^((1-k)/2)`.
    pub fn richmond_shallit(&mut self, k: usize, n: usize) -> Result<BigFloat> {
        if n == 0 {
            return Err(Error::AsymptoticAtZero);
        }
        let ln_k = self.ln_u64(k as u64);
        let half = self.num(2);
        let first = ln_k
            .mul(&self.num(4 * n as u64 + k as u64), self.prec, self.rm)
            .div(&half, self.prec, self.rm);
        let second = self
            .ln_4pi_n(n as u64)
            .mul(&self.num(k as u64 - 1), self.prec, self.rm)
            .div(&half, self.prec, self.rm);
        Ok(first.sub(&second, self.prec, self.rm))
    }

    /// Log-space gap between the two spellings of the leading constant:
    /// `(2 pi)^(-(k-1)/2) 2^(-(k-1)/2) k^(k/2+1)` versus
    /// `(4 pi)^(-(k-1)/2) k^(k/2+1)`. Algebraically zero.
    pub fn constant_identity_gap(&mut self, k: usize) -> BigFloat {
        let half = self.num(2);
        let km1 = self.num(k as u64 - 1);
        let pi = self.cc.pi(self.prec, self.rm);
        let two_pi = pi.mul(&self.num(2), self.prec, self.rm);
        let ln_two_pi = two_pi.ln(self.prec, self.rm, &mut self.cc);
        let ln_two = self.ln_u64(2);
        let lhs = ln_two_pi
            .add(&ln_two, self.prec, self.rm)
            .mul(&km1, self.prec, self.rm)
            .div(&half, self.prec, self.rm);
        let four_pi = pi.mul(&self.num(4), self.prec, self.rm);
        let ln_four_pi = four_pi.ln(self.prec, self.rm, &mut self.cc);
        let rhs = ln_four_pi
            .mul(&km1, self.prec, self.rm)
            .div(&half, self.prec, self.rm);
        lhs.sub(&rhs, self.prec, self.rm).abs()
    }

    /// Whether the two constant spellings agree to far better than the
    /// advertised precision.
    pub fn constant_identity_holds(&mut self, k: usize) -> bool {
        to_f64(&self.constant_identity_gap(k)) < 1e-40
    }

    /// `exp(ln_exact - ln_asymptotic) - 1`.
    pub fn relative_deviation(&mut self, ln_exact: &BigFloat, ln_asymptotic: &BigFloat) -> f64 {
        let delta = ln_exact.sub(ln_asymptotic, self.prec, self.rm);
        let ratio = delta.exp(self.prec, self.rm, &mut self.cc);
        to_f64(&ratio.sub(&self.num(1), self.prec, self.rm))
    }
}

/// Rounds a log-space value to f64 for reporting.
pub fn to_f64(x: &BigFloat) -> f64 {
    format!("{x}").parse().unwrap_or(f64::NAN)
}

/// One exact-versus-asymptotic comparison.
#[derive(Debug, Clone)]
pub struct AsymRow {
    pub n: usize,
    pub exact: BigUint,
    pub ln_exact: f64,
    pub ln_asymptotic: f64,
    /// `exact / asymptotic - 1`.
    pub deviation: f64,
}

/// Exact codimensions against the asymptotic formula over a set of n.
#[derive(Debug, Clone)]
pub struct AsymptoticReport {
    pub k: usize,
    pub precision_bits: usize,
    /// The two spellings of the leading constant agree in log space.
    pub constant_identity_ok: bool,
    pub rows: Vec<AsymRow>,
}

/// Builds the comparison report, computing exact values through the
/// formula route of the table.
pub fn ratio_report(k: usize, ns: &[usize], table: &mut CountTable) -> Result<AsymptoticReport> {
    let mut ls = LogSpace::new();
    let mut rows = Vec::with_capacity(ns.len());
    for &n in ns {
        let exact = table.m_formula(k, n)?;
        let ln_exact = ls.ln_biguint(&exact)?;
        let ln_asym = ls.asymptotic_value(k, n)?;
        rows.push(AsymRow {
            n,
            deviation: ls.relative_deviation(&ln_exact, &ln_asym),
            ln_exact: to_f64(&ln_exact),
            ln_asymptotic: to_f64(&ln_asym),
            exact,
        });
    }
    Ok(AsymptoticReport {
        k,
        precision_bits: ls.precision_bits(),
        constant_identity_ok: ls.constant_identity_holds(k),
        rows,
    })
}
