//! Small-scale bundle of the cross-method invariants, suitable for CI:
//! enumeration equals formulas, the balanced-count routes agree, both
//! identity decisions concur on the generator set, the pseudo-path ledger
//! balances, and the log-space constant identity holds.

use std::process::ExitCode;

use grident_core::asym::LogSpace;
use grident_core::codim::{
    c2_closed, c2_divincenzo, enumerate_counts, record_enumeration, CountTable, PBalancedMethod,
};
use grident_core::identity::{bd_generators, is_identity_classes, is_identity_oracle};
use grident_core::paths::{swan_check, SweepMode};
use grident_core::{Caps, FiniteGroup};
use num_bigint::BigUint;

pub fn run(caps: &Caps) -> anyhow::Result<ExitCode> {
    let mut failures = 0usize;
    let mut check = |name: &str, ok: bool| {
        println!("selfcheck {name}: {}", if ok { "ok" } else { "FAILED" });
        if !ok {
            failures += 1;
        }
    };

    let mut table = CountTable::new();
    let mut enum_ok = true;
    for (k, n_max) in [(2usize, 6usize), (3, 4), (4, 3)] {
        for n in 0..=n_max {
            let counts = enumerate_counts(k, n, caps)?;
            if record_enumeration(&mut table, k, n, &counts).is_err() {
                enum_ok = false;
            }
            enum_ok &= counts.paths == table.m_formula(k, n)?;
            enum_ok &= counts.pseudo == table.gamma(k, n)?;
            enum_ok &= counts.balanced == table.p_balanced(k, n, PBalancedMethod::Recursion)?;
        }
    }
    check("enumeration-vs-formula", enum_ok);

    let mut p_ok = true;
    for k in 1..=4usize {
        for n in 0..=10usize {
            let a = table.p_balanced(k, n, PBalancedMethod::Recursion)?;
            p_ok &= a == table.p_balanced(k, n, PBalancedMethod::Nested)?;
            p_ok &= a == table.p_balanced(k, n, PBalancedMethod::Multinomial)?;
            for k1 in 1..k {
                p_ok &= a == table.p_balanced(k, n, PBalancedMethod::Split(k1, k - k1))?;
            }
        }
    }
    check("balanced-count-routes", p_ok);

    let mut ledger_ok = true;
    for k in 1..=4usize {
        for n in 0..=20usize {
            let gamma = table.gamma(k, n)?;
            let m = table.m_formula(k, n)?;
            let sd = table.sd(k, n)?;
            ledger_ok &= &m + &sd == gamma;
            ledger_ok &= gamma * BigUint::from(k)
                == table.p_balanced(k, n + 1, PBalancedMethod::Recursion)?;
        }
    }
    check("pseudo-path-ledger", ledger_ok);

    let mut closed_ok = true;
    for n in 0..=30usize {
        let closed = c2_closed(n as u64);
        closed_ok &= closed == c2_divincenzo(n as u64);
        closed_ok &= closed == table.m_formula(2, n)?;
    }
    check("k2-closed-forms", closed_ok);

    let mut gens_ok = true;
    for spec in ["C2", "C3", "C4", "C2xC2", "S3"] {
        let group = FiniteGroup::from_spec(spec)?;
        for f in bd_generators(&group) {
            gens_ok &= is_identity_classes(&f).is_identity;
            gens_ok &= is_identity_oracle(&f, caps)?;
        }
    }
    check("generator-identities", gens_ok);

    let swan = swan_check(
        &FiniteGroup::cyclic(2)?,
        4,
        SweepMode::Exhaustive,
        false,
        caps,
    )?;
    check(
        "parity-balance-c2-n4",
        swan.violations.is_empty() && swan.words_checked == 16,
    );

    let mut ls = LogSpace::new();
    check(
        "asymptotic-constant-identity",
        (2..=6).all(|k| ls.constant_identity_holds(k)),
    );

    if failures == 0 {
        println!("selfcheck: all bundles ok");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("selfcheck: {failures} bundle(s) FAILED");
        Ok(ExitCode::from(1))
    }
}
