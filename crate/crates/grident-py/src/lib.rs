//! Python bindings: groups, monomial graphs, identity decisions, and
//! exact/asymptotic codimension counts. Counts come back as Python ints,
//! no matter how large.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use grident_core::asym::ratio_report;
use grident_core::codim::{enumerate_counts, CountTable, PBalancedMethod};
use grident_core::graph::MonomialGraph;
use grident_core::identity::{
    self, elementary_monomial_identity, evaluate_symbolic, is_identity_classes,
    vanishes_on_matrix_units, verify_amitsur_levitsky, ElementaryGrading,
};
use grident_core::monomial::{GradedPolynomial, Monomial};
use grident_core::paths::{ipp_permutations, swan_check, SweepMode};
use grident_core::{Caps, FiniteGroup};

fn py_err(err: grident_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A finite group with a fixed element order; identity at index 1.
#[pyclass(frozen)]
struct Group {
    inner: FiniteGroup,
}

#[pymethods]
impl Group {
    /// Builds from a spec string: C<k>, D<m>, S<m>, products like C2xC2,
    /// or table:<path>.
    #[staticmethod]
    fn from_spec(spec: &str) -> PyResult<Group> {
        Ok(Group {
            inner: FiniteGroup::from_spec(spec).map_err(py_err)?,
        })
    }

    /// Builds from a 1-based Cayley table (element 1 must be the identity).
    #[staticmethod]
    fn from_table(table: Vec<Vec<usize>>) -> PyResult<Group> {
        Ok(Group {
            inner: FiniteGroup::from_cayley_table(&table).map_err(py_err)?,
        })
    }

    fn order(&self) -> usize {
        self.inner.order()
    }

    fn label(&self) -> String {
        self.inner.label().to_string()
    }

    fn element_names(&self) -> Vec<String> {
        self.inner
            .elements()
            .map(|x| x.name().to_string())
            .collect()
    }

    fn cayley_table(&self) -> Vec<Vec<usize>> {
        self.inner.cayley_table()
    }

    /// Product of two elements by name.
    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let a = self.inner.by_name(a).map_err(py_err)?;
        let b = self.inner.by_name(b).map_err(py_err)?;
        Ok(a.mul(&b).map_err(py_err)?.name().to_string())
    }

    fn inv(&self, a: &str) -> PyResult<String> {
        Ok(self
            .inner
            .by_name(a)
            .map_err(py_err)?
            .inv()
            .name()
            .to_string())
    }

    /// For each element, the permutation of 1..k it induces by left
    /// multiplication on the element order.
    fn regular_representation(&self) -> Vec<Vec<usize>> {
        self.inner.regular_representation()
    }

    fn __repr__(&self) -> String {
        format!(
            "Group({}, order {})",
            self.inner.label(),
            self.inner.order()
        )
    }
}

fn parse_mono(group: &Group, text: &str) -> PyResult<Monomial> {
    Monomial::parse(text, &group.inner).map_err(py_err)
}

/// Edges of the monomial's graph as (label, src, dst, weight) tuples, in
/// label order.
#[pyfunction]
fn graph_edges(group: &Group, monomial: &str) -> PyResult<Vec<(u32, String, String, String)>> {
    let m = parse_mono(group, monomial)?;
    let g = MonomialGraph::of_monomial(&m);
    Ok(g.edges()
        .map(|(label, src, dst)| {
            let weight = g.weight(label).unwrap().name().to_string();
            (
                label,
                src.name().to_string(),
                dst.name().to_string(),
                weight,
            )
        })
        .collect())
}

/// Deterministic DOT rendering of the monomial's graph.
#[pyfunction]
fn graph_dot(group: &Group, monomial: &str) -> PyResult<String> {
    Ok(MonomialGraph::of_monomial(&parse_mono(group, monomial)?).to_dot())
}

/// Whether two monomials are reorderings of each other with the same
/// graph (equivalently, their difference is a graded identity).
#[pyfunction]
fn equivalent(group: &Group, m1: &str, m2: &str) -> PyResult<bool> {
    let a = parse_mono(group, m1)?;
    let b = parse_mono(group, m2)?;
    grident_core::graph::equivalent(&a, &b).map_err(py_err)
}

/// Census of the prefix-product-preserving permutations of a monomial:
/// dict with total, even, odd, and the permutations in image form.
#[pyfunction]
fn ipp_census<'py>(py: Python<'py>, group: &Group, monomial: &str) -> PyResult<Bound<'py, PyDict>> {
    let m = parse_mono(group, monomial)?;
    let report = ipp_permutations(&m, &Caps::default()).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("total", report.total)?;
    out.set_item("even", report.even)?;
    out.set_item("odd", report.odd)?;
    let perms: Vec<Vec<usize>> = report
        .permutations
        .iter()
        .map(|p| p.images().to_vec())
        .collect();
    out.set_item("permutations", perms)?;
    Ok(out)
}

/// Sweeps all weight words of length n (or `samples` random ones) and
/// reports the even/odd balance of each census.
#[pyfunction]
#[pyo3(signature = (group, n, samples=None, seed=0))]
fn swan<'py>(
    py: Python<'py>,
    group: &Group,
    n: usize,
    samples: Option<u64>,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let mode = match samples {
        Some(count) => SweepMode::Sample { count, seed },
        None => SweepMode::Exhaustive,
    };
    let report = swan_check(&group.inner, n, mode, false, &Caps::default()).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("k", report.k)?;
    out.set_item("n", report.n)?;
    out.set_item("words_checked", report.words_checked)?;
    out.set_item("asserted", report.asserted)?;
    out.set_item("balanced_everywhere", report.violations.is_empty())?;
    Ok(out)
}

/// Decides whether a polynomial is a graded identity. `method` is
/// "classes", "oracle", or "both" (which also cross-checks agreement).
#[pyfunction]
#[pyo3(signature = (group, poly, method="classes"))]
fn is_identity(group: &Group, poly: &str, method: &str) -> PyResult<bool> {
    let f = GradedPolynomial::parse(poly, &group.inner).map_err(py_err)?;
    let caps = Caps::default();
    match method {
        "classes" => Ok(is_identity_classes(&f).is_identity),
        "oracle" => identity::is_identity_oracle(&f, &caps).map_err(py_err),
        "both" => {
            let classes = is_identity_classes(&f).is_identity;
            let oracle = identity::is_identity_oracle(&f, &caps).map_err(py_err)?;
            if classes != oracle {
                return Err(PyValueError::new_err(
                    "decision methods disagree; this is a bug",
                ));
            }
            Ok(classes)
        }
        other => Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
}

/// The equivalence classes of a polynomial: (representative, size, sum).
#[pyfunction]
fn identity_classes(group: &Group, poly: &str) -> PyResult<Vec<(String, usize, String)>> {
    let f = GradedPolynomial::parse(poly, &group.inner).map_err(py_err)?;
    Ok(is_identity_classes(&f)
        .classes
        .iter()
        .map(|c| (c.representative.render(), c.size, c.sum.to_string()))
        .collect())
}

/// Positions of nonzero entries in the symbolic value of the polynomial.
#[pyfunction]
fn oracle_nonzero_entries(group: &Group, poly: &str) -> PyResult<Vec<(usize, usize)>> {
    let f = GradedPolynomial::parse(poly, &group.inner).map_err(py_err)?;
    Ok(evaluate_symbolic(&f, &Caps::default())
        .map_err(py_err)?
        .nonzero_entries())
}

/// The generating identities for the group's crossed-product grading, in
/// text form.
#[pyfunction]
fn bd_generators(group: &Group) -> Vec<String> {
    identity::bd_generators(&group.inner)
        .iter()
        .map(|f| f.render())
        .collect()
}

/// Checks the degree-n standard polynomial across all weight words.
#[pyfunction]
fn al_verify<'py>(py: Python<'py>, group: &Group, n: usize) -> PyResult<Bound<'py, PyDict>> {
    let report = verify_amitsur_levitsky(&group.inner, n, SweepMode::Exhaustive, &Caps::default())
        .map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("words_checked", report.words_checked)?;
    out.set_item("asserted", report.asserted)?;
    out.set_item("all_identities", report.all_identities)?;
    out.set_item("failures", report.failures)?;
    Ok(out)
}

/// Monomial identity test for an elementary grading given by a tuple of
/// element names, with witness positions when it is one.
#[pyfunction]
fn elementary_identity<'py>(
    py: Python<'py>,
    group: &Group,
    tuple: Vec<String>,
    weights: Vec<String>,
) -> PyResult<Bound<'py, PyDict>> {
    let g = &group.inner;
    let tuple: Result<Vec<_>, _> = tuple.iter().map(|name| g.by_name(name)).collect();
    let word: Result<Vec<_>, _> = weights.iter().map(|name| g.by_name(name)).collect();
    let grading = ElementaryGrading::new(g, tuple.map_err(py_err)?).map_err(py_err)?;
    let word = word.map_err(py_err)?;
    let report = elementary_monomial_identity(&grading, &word).map_err(py_err)?;
    let units = vanishes_on_matrix_units(&grading, &word, &Caps::default()).map_err(py_err)?;
    let out = PyDict::new(py);
    out.set_item("identity", report.is_identity)?;
    out.set_item("chain_sizes", report.chain_sizes)?;
    out.set_item("witness", report.witness)?;
    out.set_item(
        "reduced_weights",
        report
            .reduced_weights
            .map(|ws| ws.iter().map(|x| x.name().to_string()).collect::<Vec<_>>()),
    )?;
    out.set_item("units_cross_check", units == report.is_identity)?;
    Ok(out)
}

/// Exact graded codimension of the k-by-k matrices at degree n.
/// `method` is "formula" (default), "enum", or "closed" (k = 2 only).
#[pyfunction]
#[pyo3(signature = (k, n, method="formula"))]
fn codim(k: usize, n: usize, method: &str) -> PyResult<BigUint> {
    let mut table = CountTable::new();
    match method {
        "formula" => table.m_formula(k, n).map_err(py_err),
        "closed" if k == 2 => table.c2(n).map_err(py_err),
        "closed" => Err(PyValueError::new_err("closed form applies to k=2 only")),
        "enum" => Ok(enumerate_counts(k, n, &Caps::default())
            .map_err(py_err)?
            .paths),
        other => Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
}

/// c_k(0..=n_max) by the formula route.
#[pyfunction]
fn codim_table(k: usize, n_max: usize) -> PyResult<Vec<BigUint>> {
    let mut table = CountTable::new();
    (0..=n_max)
        .map(|n| table.m_formula(k, n).map_err(py_err))
        .collect()
}

/// Balanced-graph count by the chosen route: "recursion", "nested",
/// "multinomial", or "split:<k1>" for the vertex split (k1, k-k1).
#[pyfunction]
#[pyo3(signature = (k, n, method="recursion"))]
fn p_balanced(k: usize, n: usize, method: &str) -> PyResult<BigUint> {
    let route = match method {
        "recursion" => PBalancedMethod::Recursion,
        "nested" => PBalancedMethod::Nested,
        "multinomial" => PBalancedMethod::Multinomial,
        other => match other
            .strip_prefix("split:")
            .and_then(|v| v.parse::<usize>().ok())
        {
            Some(k1) if k1 < k => PBalancedMethod::Split(k1, k - k1),
            _ => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
        },
    };
    CountTable::new().p_balanced(k, n, route).map_err(py_err)
}

/// Exact values against the asymptotic formula: a list of dicts with n,
/// exact, ln_exact, ln_asymptotic, and deviation = exact/asymptotic - 1.
#[pyfunction]
fn asym_report<'py>(
    py: Python<'py>,
    k: usize,
    ns: Vec<usize>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let mut table = CountTable::new();
    let report = ratio_report(k, &ns, &mut table).map_err(py_err)?;
    report
        .rows
        .iter()
        .map(|row| {
            let out = PyDict::new(py);
            out.set_item("n", row.n)?;
            out.set_item("exact", row.exact.clone())?;
            out.set_item("ln_exact", row.ln_exact)?;
            out.set_item("ln_asymptotic", row.ln_asymptotic)?;
            out.set_item("deviation", row.deviation)?;
            Ok(out)
        })
        .collect()
}

#[pymodule]
fn grident(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(graph_edges, m)?)?;
    m.add_function(wrap_pyfunction!(graph_dot, m)?)?;
    m.add_function(wrap_pyfunction!(equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(ipp_census, m)?)?;
    m.add_function(wrap_pyfunction!(swan, m)?)?;
    m.add_function(wrap_pyfunction!(is_identity, m)?)?;
    m.add_function(wrap_pyfunction!(identity_classes, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_nonzero_entries, m)?)?;
    m.add_function(wrap_pyfunction!(bd_generators, m)?)?;
    m.add_function(wrap_pyfunction!(al_verify, m)?)?;
    m.add_function(wrap_pyfunction!(elementary_identity, m)?)?;
    m.add_function(wrap_pyfunction!(codim, m)?)?;
    m.add_function(wrap_pyfunction!(codim_table, m)?)?;
    m.add_function(wrap_pyfunction!(p_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(asym_report, m)?)?;
    Ok(())
}
