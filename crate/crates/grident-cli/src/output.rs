//! Serializable views for every subcommand, plus plain-text rendering.
//! Big integers are always decimal strings in JSON.

use grident_core::asym::AsymptoticReport;
use grident_core::graph::MonomialGraph;
use grident_core::identity::{ClassReport, ElementaryGrading, SymbolicMatrix};
use grident_core::paths::{IppReport, SwanReport, WordTally};
use grident_core::{FiniteGroup, GroupElement};
use serde::Serialize;

pub trait TextView {
    fn text(&self) -> String;
}

#[derive(Serialize)]
pub struct GroupView {
    pub group: String,
    pub order: usize,
    pub elements: Vec<ElementView>,
    pub cayley: Vec<Vec<usize>>,
}

#[derive(Serialize)]
pub struct ElementView {
    pub index: usize,
    pub name: String,
    pub inverse: usize,
}

impl GroupView {
    pub fn new(g: &FiniteGroup) -> Self {
        GroupView {
            group: g.label().into(),
            order: g.order(),
            elements: g
                .elements()
                .map(|x| ElementView {
                    index: x.index(),
                    name: x.name().into(),
                    inverse: x.inv().index(),
                })
                .collect(),
            cayley: g.cayley_table(),
        }
    }
}

impl TextView for GroupView {
    fn text(&self) -> String {
        let mut out = format!("group {} of order {}\n", self.group, self.order);
        for e in &self.elements {
            out.push_str(&format!(
                "  {:>3} {}  (inverse {})\n",
                e.index, e.name, e.inverse
            ));
        }
        out.push_str("cayley:\n");
        for row in &self.cayley {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&format!("  {}\n", cells.join(" ")));
        }
        out
    }
}

#[derive(Serialize)]
pub struct GraphView {
    pub group: String,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeView>,
}

#[derive(Serialize)]
pub struct EdgeView {
    pub label: u32,
    pub src: String,
    pub dst: String,
    pub weight: String,
}

impl GraphView {
    pub fn new(g: &MonomialGraph) -> Self {
        GraphView {
            group: g.group().label().into(),
            vertices: g.group().elements().map(|x| x.name().to_string()).collect(),
            edges: g
                .edges()
                .map(|(label, src, dst)| EdgeView {
                    label,
                    src: src.name().into(),
                    dst: dst.name().into(),
                    weight: g.weight(label).unwrap().name().into(),
                })
                .collect(),
        }
    }
}

impl TextView for GraphView {
    fn text(&self) -> String {
        let mut out = format!("graph over {} ({} edges)\n", self.group, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!(
                "  {}: {} -> {}  (weight {})\n",
                e.label, e.src, e.dst, e.weight
            ));
        }
        out
    }
}

#[derive(Serialize)]
pub struct EquivView {
    pub group: String,
    pub equivalent: bool,
}

impl TextView for EquivView {
    fn text(&self) -> String {
        format!("equivalent: {}\n", self.equivalent)
    }
}

#[derive(Serialize)]
pub struct IppView {
    pub group: String,
    pub monomial: String,
    pub total: u64,
    pub even: u64,
    pub odd: u64,
    pub balanced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub permutations: Option<Vec<Vec<usize>>>,
    pub truncated: bool,
}

impl IppView {
    pub fn new(report: &IppReport, list: bool) -> Self {
        IppView {
            group: report.monomial.group().label().into(),
            monomial: report.monomial.render(),
            total: report.total,
            even: report.even,
            odd: report.odd,
            balanced: report.balanced(),
            permutations: list.then(|| {
                report
                    .permutations
                    .iter()
                    .map(|p| p.images().to_vec())
                    .collect()
            }),
            truncated: report.truncated,
        }
    }
}

impl TextView for IppView {
    fn text(&self) -> String {
        format!(
            "{}: {} prefix-product-preserving permutations ({} even, {} odd)\n",
            self.monomial, self.total, self.even, self.odd
        )
    }
}

#[derive(Serialize)]
pub struct WordView {
    pub word: Vec<String>,
    pub total: u64,
    pub even: u64,
    pub odd: u64,
}

impl WordView {
    fn new(group: &FiniteGroup, tally: &WordTally) -> Self {
        WordView {
            word: tally
                .word
                .iter()
                .map(|&i| group.name(i).to_string())
                .collect(),
            total: tally.total,
            even: tally.even,
            odd: tally.odd,
        }
    }
}

#[derive(Serialize)]
pub struct SwanView {
    pub group: String,
    pub k: usize,
    pub n: usize,
    pub words_checked: u64,
    pub asserted: bool,
    pub balanced_everywhere: bool,
    pub violations: Vec<WordView>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<WordView>>,
}

impl SwanView {
    pub fn new(group: &FiniteGroup, report: &SwanReport) -> Self {
        SwanView {
            group: report.group.clone(),
            k: report.k,
            n: report.n,
            words_checked: report.words_checked,
            asserted: report.asserted,
            balanced_everywhere: report.violations.is_empty(),
            violations: report
                .violations
                .iter()
                .map(|t| WordView::new(group, t))
                .collect(),
            rows: report
                .rows
                .as_ref()
                .map(|rows| rows.iter().map(|t| WordView::new(group, t)).collect()),
        }
    }
}

impl TextView for SwanView {
    fn text(&self) -> String {
        format!(
            "group {}, degree {}: {} words checked, balance {} ({} violations)\n",
            self.group,
            self.n,
            self.words_checked,
            if self.asserted {
                "asserted"
            } else {
                "not asserted (n < 2k)"
            },
            self.violations.len()
        )
    }
}

#[derive(Serialize)]
pub struct ClassView {
    pub repr: String,
    pub size: usize,
    pub sum: String,
}

#[derive(Serialize)]
pub struct IdentityView {
    pub group: String,
    pub poly: String,
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassView>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_nonzero_entries: Option<Vec<(usize, usize)>>,
}

impl IdentityView {
    pub fn new(group: &str, poly: &str) -> Self {
        IdentityView {
            group: group.into(),
            poly: poly.into(),
            verdict: false,
            classes: None,
            oracle_nonzero_entries: None,
        }
    }

    pub fn fill_classes(&mut self, report: &ClassReport) {
        self.classes = Some(
            report
                .classes
                .iter()
                .map(|c| ClassView {
                    repr: c.representative.render(),
                    size: c.size,
                    sum: c.sum.to_string(),
                })
                .collect(),
        );
    }

    pub fn fill_oracle(&mut self, value: &SymbolicMatrix) {
        self.oracle_nonzero_entries = Some(value.nonzero_entries());
    }
}

impl TextView for IdentityView {
    fn text(&self) -> String {
        let mut out = format!(
            "{} over {}: {}\n",
            self.poly,
            self.group,
            if self.verdict {
                "graded identity"
            } else {
                "not a graded identity"
            }
        );
        if let Some(classes) = &self.classes {
            for c in classes {
                out.push_str(&format!(
                    "  class [{}] size {} sum {}\n",
                    c.repr, c.size, c.sum
                ));
            }
        }
        if let Some(entries) = &self.oracle_nonzero_entries {
            out.push_str(&format!("  oracle nonzero entries: {entries:?}\n"));
        }
        out
    }
}

#[derive(Serialize)]
pub struct AlView {
    pub group: String,
    pub k: usize,
    pub n: usize,
    pub words_checked: u64,
    pub asserted: bool,
    pub all_identities: bool,
    pub failures: Vec<Vec<usize>>,
}

impl AlView {
    pub fn new(report: &grident_core::identity::StandardReport) -> Self {
        AlView {
            group: report.group.clone(),
            k: report.k,
            n: report.n,
            words_checked: report.words_checked,
            asserted: report.asserted,
            all_identities: report.all_identities,
            failures: report.failures.clone(),
        }
    }
}

impl TextView for AlView {
    fn text(&self) -> String {
        format!(
            "standard polynomial of degree {} over {}: {} ({} words checked)\n",
            self.n,
            self.group,
            if self.all_identities {
                "graded identity for every word"
            } else {
                "not an identity"
            },
            self.words_checked
        )
    }
}

#[derive(Serialize)]
pub struct ElemView {
    pub group: String,
    pub tuple: Vec<String>,
    pub weights: Vec<String>,
    pub identity: bool,
    pub chain_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reduced_weights: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split: Option<usize>,
    pub units_cross_check: bool,
}

impl ElemView {
    pub fn new(
        grading: &ElementaryGrading,
        word: &[GroupElement],
        report: &grident_core::identity::ElementaryIdentityReport,
        units_agree: bool,
    ) -> Self {
        ElemView {
            group: grading.group().label().into(),
            tuple: grading
                .tuple()
                .iter()
                .map(|x| x.name().to_string())
                .collect(),
            weights: word.iter().map(|x| x.name().to_string()).collect(),
            identity: report.is_identity,
            chain_sizes: report.chain_sizes.clone(),
            witness: report.witness.clone(),
            reduced_weights: report
                .reduced_weights
                .as_ref()
                .map(|ws| ws.iter().map(|x| x.name().to_string()).collect()),
            split: report.split,
            units_cross_check: units_agree,
        }
    }
}

impl TextView for ElemView {
    fn text(&self) -> String {
        let mut out = format!(
            "monomial with weights ({}) over tuple ({}): {}\n",
            self.weights.join(", "),
            self.tuple.join(", "),
            if self.identity {
                "identity"
            } else {
                "not an identity"
            }
        );
        if let Some(w) = &self.witness {
            out.push_str(&format!("  witness positions: {w:?}\n"));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CodimView {
    pub k: usize,
    pub n: usize,
    pub method: String,
    pub value: String,
}

impl TextView for CodimView {
    fn text(&self) -> String {
        format!(
            "c_{}({}) = {}  [{}]\n",
            self.k, self.n, self.value, self.method
        )
    }
}

#[derive(Serialize)]
pub struct CodimRow {
    pub k: usize,
    pub n: usize,
    pub value: String,
}

#[derive(Serialize)]
pub struct CodimTableView {
    pub k: usize,
    pub values: Vec<CodimRow>,
}

impl TextView for CodimTableView {
    fn text(&self) -> String {
        let mut out = String::new();
        for row in &self.values {
            out.push_str(&format!("c_{}({}) = {}\n", row.k, row.n, row.value));
        }
        out
    }
}

#[derive(Serialize)]
pub struct AsymRowView {
    pub n: usize,
    pub exact: String,
    pub ln_exact: f64,
    pub ln_asymptotic: f64,
    pub deviation: f64,
}

#[derive(Serialize)]
pub struct AsymView {
    pub k: usize,
    pub precision_bits: usize,
    pub constant_identity_ok: bool,
    pub rows: Vec<AsymRowView>,
}

impl AsymView {
    pub fn new(report: &AsymptoticReport) -> Self {
        AsymView {
            k: report.k,
            precision_bits: report.precision_bits,
            constant_identity_ok: report.constant_identity_ok,
            rows: report
                .rows
                .iter()
                .map(|r| AsymRowView {
                    n: r.n,
                    exact: r.exact.to_string(),
                    ln_exact: r.ln_exact,
                    ln_asymptotic: r.ln_asymptotic,
                    deviation: r.deviation,
                })
                .collect(),
        }
    }
}

impl TextView for AsymView {
    fn text(&self) -> String {
        let mut out = format!(
            "k = {} ({} bits of log-space precision)\n",
            self.k, self.precision_bits
        );
        for r in &self.rows {
            out.push_str(&format!(
                "  n = {:>5}: ln exact {:.6}, ln asymptotic {:.6}, deviation {:+.3e}\n",
                r.n, r.ln_exact, r.ln_asymptotic, r.deviation
            ));
        }
        out
    }
}
