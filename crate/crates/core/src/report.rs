//! Command reports in two renderings: sorted-key JSON and an indented text
//! form. Reports on catalog inputs carry claim annotations comparing a
//! reference value with the computed one.

use serde_json::{json, Map, Value};

use crate::algebra::{JordanAlgebra, JordanCheck};
use crate::bider::{
    centroid_space, derivation_space, ReductionReport, SolutionSpace, StageAction, Verdict,
};
use crate::catalog;
use crate::error::Result;
use crate::field::Scalar;
use crate::io::{bilinear_map_to_json, field_to_json, linear_map_to_json, vector_to_json, CatalogTag};
use crate::linalg::Subspace;
use crate::maps::LinearMap;
use crate::module::{JModule, ModuleCheck};
use crate::triple::{delta_f, SignClass, TripleHomReport};

/// A reference value for some quantity next to the computed one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub subject: String,
    pub expected: String,
    pub computed: String,
}

impl Claim {
    fn new(subject: &str, expected: impl ToString, computed: impl ToString) -> Self {
        Claim {
            subject: subject.into(),
            expected: expected.to_string(),
            computed: computed.to_string(),
        }
    }

    pub fn matches(&self) -> bool {
        self.expected == self.computed
    }

    pub fn status(&self) -> &'static str {
        if self.matches() {
            "MATCH"
        } else {
            "MISMATCH"
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// The command line that produced the report.
    pub command: String,
    pub result: Value,
    pub claims: Vec<Claim>,
    /// False when a verifier rejected the input.
    pub ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Report {
    fn new(command: &str, result: Value, ok: bool) -> Self {
        Report {
            command: command.into(),
            result,
            claims: Vec::new(),
            ok,
        }
    }

    pub fn claim(&self, subject: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.subject == subject)
    }

    pub fn to_json(&self) -> Value {
        let claims: Vec<Value> = self
            .claims
            .iter()
            .map(|c| {
                json!({
                    "subject": c.subject,
                    "expected": c.expected,
                    "computed": c.computed,
                    "status": c.status(),
                })
            })
            .collect();
        json!({
            "command": self.command,
            "result": self.result,
            "claims": claims,
            "ok": self.ok,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => crate::io::to_pretty(&self.to_json()),
            Format::Text => self.to_text(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command);
        render_text(&self.result, 0, &mut out);
        if !self.claims.is_empty() {
            out.push_str("claims:\n");
            for c in &self.claims {
                out.push_str(&format!(
                    "  {}: expected {}, computed {} [{}]\n",
                    c.subject,
                    c.expected,
                    c.computed,
                    c.status()
                ));
            }
        }
        out.push_str(&format!("status: {}\n", if self.ok { "ok" } else { "rejected" }));
        out
    }
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) => {
            let parts: Option<Vec<String>> = a
                .iter()
                .map(|x| if x.is_array() || x.is_object() { None } else { inline(x) })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        Value::Object(_) => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}

/// A vector as a combination of basis labels, e.g. `x2 - x3` or `1/2 e`.
pub fn describe_vector(v: &[Scalar], labels: &[String]) -> String {
    let field = v.first().map(Scalar::field);
    let mut out = String::new();
    for (x, l) in v.iter().zip(labels) {
        if x.is_zero() {
            continue;
        }
        let neg = field.is_some_and(|f| f.is_rational()) && x.to_string().starts_with('-');
        let mag = if neg { -x } else { x.clone() };
        let term = if mag.is_one() { l.clone() } else { format!("{mag} {l}") };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else {
            out.push_str(if neg { " - " } else { " + " });
            out.push_str(&term);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// `span{...}` over the echelon basis, `0` for the zero space.
pub fn describe_span(s: &Subspace, labels: &[String]) -> String {
    if s.is_zero() {
        return "0".into();
    }
    let parts: Vec<String> = s.basis_vectors().iter().map(|v| describe_vector(v, labels)).collect();
    format!("span{{{}}}", parts.join(", "))
}

pub fn subspace_json(s: &Subspace, labels: &[String]) -> Value {
    json!({
        "dimension": s.dim(),
        "basis": s.basis_vectors().iter().map(|v| vector_to_json(v)).collect::<Vec<_>>(),
        "span": describe_span(s, labels),
    })
}

fn verdict_json(v: &Verdict) -> Value {
    json!({ "holds": v.holds, "witness": v.witness })
}

fn opt_tuple<T: serde::Serialize>(t: Option<T>) -> Value {
    t.map_or(Value::Null, |t| json!(t))
}

fn algebra_summary(j: &JordanAlgebra) -> Value {
    json!({
        "field": field_to_json(j.field()),
        "dim": j.dim(),
        "basis": j.labels(),
    })
}

pub fn verify_report(command: &str, j: &JordanAlgebra, check: &JordanCheck) -> Report {
    let result = json!({
        "algebra": algebra_summary(j),
        "commutative": check.commutative,
        "commutativity_witness": opt_tuple(check.commutativity_witness),
        "jordan_identity": check.jordan_identity,
        "jordan_identity_witness": opt_tuple(check.identity_witness),
    });
    Report::new(command, result, check.passed())
}

pub fn verify_module_report(command: &str, j: &JordanAlgebra, m: &JModule, check: &ModuleCheck) -> Report {
    let result = json!({
        "algebra": algebra_summary(j),
        "module_dim": m.dim(),
        "axiom_i": check.axiom_i,
        "axiom_ii": check.axiom_ii,
        "axiom_ii_witness": opt_tuple(check.witness_ii),
        "axiom_iii": check.axiom_iii,
        "axiom_iii_witness": opt_tuple(check.witness_iii),
    });
    Report::new(command, result, check.passed())
}

/// Catalog algebras that are unital with zero center.
fn unital_zero_center(tag: &CatalogTag) -> bool {
    matches!(
        tag.name.as_str(),
        "matrix_jordan" | "sym_matrix_jordan" | "symplectic_jordan" | "spin_factor" | "diagonal_spin"
    )
}

fn is_sum_product(tag: &CatalogTag) -> bool {
    tag.name.starts_with("sum_product_")
}

/// The reference description of the center of the sum-product tables.
const SUM_PRODUCT_CENTER: &str = "span{x1}";

pub fn analyze_report(command: &str, j: &JordanAlgebra, tag: Option<&CatalogTag>) -> Result<Report> {
    let a = j.report();
    let labels = j.labels();
    let centroid = centroid_space(j, &JModule::regular(j), false)?;
    let derivations = derivation_space(j);
    let result = json!({
        "algebra": algebra_summary(j),
        "center": subspace_json(&a.center, labels),
        "derived": subspace_json(&a.derived, labels),
        "second_derived": subspace_json(&a.second_derived, labels),
        "perfect": a.perfect,
        "unit": a.unit.as_ref().map(|u| vector_to_json(u)),
        "centroid_dim": centroid.dim(),
        "derivation_dim": derivations.dim(),
    });
    let mut report = Report::new(command, result, true);
    if let Some(tag) = tag {
        let center = describe_span(&a.center, labels);
        match tag.name.as_str() {
            "dual_number_sum" => {
                report.claims.push(Claim::new("perfect", true, a.perfect));
                report.claims.push(Claim::new("center", "0", center));
            }
            _ if is_sum_product(tag) => {
                report.claims.push(Claim::new("center", SUM_PRODUCT_CENTER, center));
            }
            _ if unital_zero_center(tag) => {
                report.claims.push(Claim::new("center", "0", center));
                report.claims.push(Claim::new("unital", true, a.unit.is_some()));
            }
            _ => {}
        }
    }
    Ok(report)
}

pub fn solution_space_json(s: &SolutionSpace) -> Value {
    let basis: Vec<Value> = if s.is_bilinear() {
        s.bilinear_basis().iter().map(|d| bilinear_map_to_json(d)["table"].clone()).collect()
    } else {
        s.linear_basis().iter().map(|g| linear_map_to_json(g)["matrix"].clone()).collect()
    };
    json!({
        "kind": s.kind.name(),
        "source_dim": s.source_dim,
        "target_dim": s.target_dim,
        "dimension": s.dim(),
        "basis": basis,
    })
}

/// `regular` says whether the module is `J` acting on itself.
pub fn bider_report(
    command: &str,
    j: &JordanAlgebra,
    space: &SolutionSpace,
    regular: bool,
    tag: Option<&CatalogTag>,
) -> Report {
    let mut result = solution_space_json(space);
    result["algebra"] = algebra_summary(j);
    result["regular_module"] = json!(regular);
    let mut report = Report::new(command, result, true);
    let symmetric_c1 = matches!(
        space.kind,
        crate::bider::SpaceKind::Biderivation {
            symmetry: crate::maps::Symmetry::Symmetric,
            condition1: true
        }
    );
    if let Some(tag) = tag {
        if regular && symmetric_c1 && unital_zero_center(tag) {
            report.claims.push(Claim::new("dimension", 0, space.dim()));
        }
    }
    report
}

pub fn reduce_report(command: &str, r: &ReductionReport, tag: Option<&CatalogTag>) -> Report {
    let stages: Vec<Value> = r
        .stages
        .iter()
        .map(|s| {
            let labels = s.algebra.labels();
            let check = s.check.as_ref().map(|c| {
                json!({
                    "rank": c.rank,
                    "kernel_dim": c.kernel_dim,
                    "expected_kernel_dim": c.expected_kernel_dim,
                    "kernel_matches": c.kernel_matches,
                    "images_valid": c.images_valid,
                    "next_space_dim": c.next_space_dim,
                    "surjective": c.surjective(),
                })
            });
            json!({
                "depth": s.depth,
                "algebra_dim": s.algebra.dim(),
                "basis": labels,
                "center": subspace_json(&s.algebra.center(), labels),
                "perfect": s.perfect,
                "action": s.action.as_str(),
                "space_dim": s.space_dim,
                "check": check,
            })
        })
        .collect();
    let result = json!({
        "stages": stages,
        "complete": r.complete,
        "terminal": r.terminal.as_ref().map(solution_space_json),
        "direct_dim": r.direct_dim,
        "structural_dim": r.structural_dim,
        "agrees": r.agrees(),
        "kernels_match": r.kernels_match(),
        "lifts_surjective": r.lifts_surjective(),
    });
    let ok = r.kernels_match() && (!r.complete || r.agrees());
    let mut report = Report::new(command, result, ok);
    if tag.is_some_and(is_sum_product) {
        if let Some(first) = r.stages.first() {
            report.claims.push(Claim::new(
                "stage 1 center",
                SUM_PRODUCT_CENTER,
                describe_span(&first.algebra.center(), first.algebra.labels()),
            ));
            if first.action == StageAction::QuotientByCenter {
                if let Some(second) = r.stages.get(1) {
                    report.claims.push(Claim::new("quotient by the center is perfect", true, second.perfect));
                }
            }
        }
    }
    report
}

fn sign_json(sign: &SignClass) -> Value {
    match sign {
        SignClass::Mixed {
            plus_violation,
            minus_violation,
        } => json!({
            "class": sign.name(),
            "plus_violation": vector_to_json(plus_violation),
            "minus_violation": vector_to_json(minus_violation),
        }),
        _ => json!({ "class": sign.name() }),
    }
}

pub fn triple_report(
    command: &str,
    j1: &JordanAlgebra,
    j2: &JordanAlgebra,
    f: &LinearMap,
    r: &TripleHomReport,
    tag: Option<&CatalogTag>,
) -> Result<Report> {
    let delta = if r.hypotheses_hold() {
        Some(linear_map_to_json(&delta_f(j1, j2, f)?.map)["matrix"].clone())
    } else {
        None
    };
    let result = json!({
        "is_triple": verdict_json(&r.is_triple),
        "ann_f": subspace_json(&r.ann_f, j2.labels()),
        "ann_zero": r.ann_zero(),
        "source_perfect": r.source_perfect,
        "sign": sign_json(&r.sign),
        "basis_signs": r.basis_signs.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "is_hom": verdict_json(&r.is_hom),
        "special": r.special,
        "squared_identity": verdict_json(&r.squared_identity),
        "hypotheses_hold": r.hypotheses_hold(),
        "sign_consistent": r.sign_consistent(),
        "delta_f": delta,
    });
    let mut report = Report::new(command, result, r.is_triple.holds);
    if let Some(tag) = tag {
        if tag.name == "diagonal_spin" && j1 == j2 && *f == catalog::spin_sign_flip(j1) {
            report.claims.push(Claim::new("is_triple", true, r.is_triple.holds));
            report.claims.push(Claim::new("ann_zero", true, r.ann_zero()));
            report.claims.push(Claim::new("sign", "Minus", r.sign.name()));
        }
    }
    Ok(report)
}

pub fn enumerate_report(
    command: &str,
    j1: &JordanAlgebra,
    j2: &JordanAlgebra,
    maps: &[LinearMap],
    reports: &[TripleHomReport],
) -> Report {
    let entries: Vec<Value> = maps
        .iter()
        .zip(reports)
        .map(|(f, r)| {
            json!({
                "matrix": linear_map_to_json(f)["matrix"],
                "sign": r.sign.name(),
                "is_hom": r.is_hom.holds,
                "special": r.special,
                "ann_zero": r.ann_zero(),
            })
        })
        .collect();
    let mut result = Map::new();
    result.insert("source".into(), algebra_summary(j1));
    result.insert("target".into(), algebra_summary(j2));
    result.insert("count".into(), json!(maps.len()));
    result.insert("maps".into(), Value::Array(entries));
    Report::new(command, Value::Object(result), true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bider::{biderivation_space, reduction_pipeline};
    use crate::catalog::SumProductVariant;
    use crate::field::FieldSpec;
    use crate::maps::Symmetry;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    fn tag(name: &str) -> CatalogTag {
        CatalogTag {
            name: name.into(),
            params: Vec::new(),
        }
    }

    #[test]
    fn describes_vectors() {
        let labels: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let v = vec![q().zero(), q().one(), -q().one()];
        assert_eq!(describe_vector(&v, &labels), "x2 - x3");
        let w = vec![q().from_ratio(1, 2).unwrap(), q().zero(), q().from_i64(-3)];
        assert_eq!(describe_vector(&w, &labels), "1/2 x1 - 3 x3");
        assert_eq!(describe_vector(&q().vector_zero(3), &labels), "0");
    }

    #[test]
    fn empty_space_renders_dimension_zero() {
        let j = catalog::matrix_jordan(q(), 2).unwrap();
        let s = biderivation_space(&j, &JModule::regular(&j), Symmetry::Symmetric, true).unwrap();
        let r = bider_report("bider", &j, &s, true, Some(&tag("matrix_jordan")));
        let text = r.to_text();
        assert!(text.contains("dimension: 0\n"));
        assert!(text.contains("basis: []\n"));
        assert!(text.contains("[MATCH]"));
        assert_eq!(r.render(Format::Json), r.render(Format::Json));
    }

    #[test]
    fn json_keys_are_sorted() {
        let j = catalog::dual_number_sum(q());
        let r = analyze_report("analyze", &j, Some(&tag("dual_number_sum"))).unwrap();
        let text = r.render(Format::Json);
        let pos = |k: &str| text.find(&format!("\"{k}\"")).unwrap();
        assert!(pos("center") < pos("centroid_dim"));
        assert!(pos("centroid_dim") < pos("derivation_dim"));
        assert!(r.claims.iter().all(Claim::matches));
    }

    #[test]
    fn sum_product_claims() {
        let lit = catalog::sum_product(q(), SumProductVariant::Literal);
        let r = reduce_report("reduce", &reduction_pipeline(&lit, 5).unwrap(), Some(&tag("sum_product_literal")));
        assert_eq!(r.claim("stage 1 center").unwrap().status(), "MISMATCH");
        let off = catalog::sum_product(q(), SumProductVariant::OffDiagonal);
        let r = reduce_report("reduce", &reduction_pipeline(&off, 5).unwrap(), Some(&tag("sum_product_offdiag")));
        assert_eq!(r.claim("stage 1 center").unwrap().status(), "MATCH");
        assert_eq!(r.claim("quotient by the center is perfect").unwrap().status(), "MISMATCH");
        assert_eq!(r.result["stages"][0]["action"], "quotient_by_center");
        assert!(r.ok);
    }
}
