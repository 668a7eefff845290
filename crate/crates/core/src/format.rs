//! The JSON spec file format and JSON renderings of exact values.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{CycInt, MultiPoly, Ring, UniPoly};
use crate::cover::CoverSpec;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::group::AbelianGroup;

/// Version tag stamped on every report.
pub const SCHEMA: &str = "galois-trees/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub cyclic: Vec<i64>,
}

/// On-disk form of a cover spec. A document may instead carry `labels`
/// (edge id to base edge id) to describe an explicitly given cover graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub dilation: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub voltage: BTreeMap<String, Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<BTreeMap<String, String>>,
}

/// Parsed input: either a voltage spec or a labelled graph.
#[derive(Clone, Debug, PartialEq)]
pub enum Document {
    Spec(CoverSpec),
    Labelled(LabelledGraph),
}

/// A graph whose edges carry names of base edges.
#[derive(Clone, Debug, PartialEq)]
pub struct LabelledGraph {
    pub graph: Graph,
    /// `labels[e]` indexes into `names`.
    pub labels: Vec<usize>,
    /// Sorted distinct label names.
    pub names: Vec<String>,
}

fn parse_doc(text: &str) -> Result<SpecDoc> {
    serde_json::from_str(text).map_err(|e| Error::Spec(format!("invalid spec document: {e}")))
}

fn doc_graph(doc: &SpecDoc) -> Result<Graph> {
    Graph::new(
        doc.vertices.iter().cloned(),
        doc.edges.iter().map(|e| (e.id.clone(), e.src.clone(), e.tgt.clone())),
    )
}

/// Reads either kind of document.
pub fn parse_document(text: &str) -> Result<Document> {
    let doc = parse_doc(text)?;
    if doc.labels.is_some() {
        if doc.group.is_some() || !doc.dilation.is_empty() || !doc.voltage.is_empty() {
            return Err(Error::Spec("field `labels` cannot be combined with voltage data".into()));
        }
        labelled_from_doc(&doc).map(Document::Labelled)
    } else {
        spec_from_doc(&doc).map(Document::Spec)
    }
}

/// Reads a voltage spec.
pub fn parse_spec(text: &str) -> Result<CoverSpec> {
    match parse_document(text)? {
        Document::Spec(s) => Ok(s),
        Document::Labelled(_) => Err(Error::Spec("expected a voltage spec, found a labelled graph".into())),
    }
}

fn spec_from_doc(doc: &SpecDoc) -> Result<CoverSpec> {
    let base = doc_graph(doc)?;
    let group_doc = doc
        .group
        .as_ref()
        .ok_or_else(|| Error::Spec("missing field `group`".into()))?;
    let group = AbelianGroup::new(&group_doc.cyclic)?;
    let mut dilation = BTreeMap::new();
    for (v, gens) in &doc.dilation {
        base.vertex_index(v)?;
        let elements = gens.iter().map(|g| group.element(g)).collect::<Result<Vec<_>>>()?;
        dilation.insert(v.clone(), elements);
    }
    let mut voltage = BTreeMap::new();
    for (e, g) in &doc.voltage {
        voltage.insert(e.clone(), group.element(g)?);
    }
    CoverSpec::new(base, group, &dilation, &voltage)
}

fn labelled_from_doc(doc: &SpecDoc) -> Result<LabelledGraph> {
    let graph = doc_graph(doc)?;
    let table = doc.labels.as_ref().expect("labelled document");
    for id in table.keys() {
        graph.edge_index(id)?;
    }
    let mut names: Vec<String> = table.values().cloned().collect();
    names.sort();
    names.dedup();
    let labels = graph
        .edges()
        .iter()
        .map(|e| {
            let name = table
                .get(&e.id)
                .ok_or_else(|| Error::Spec(format!("edge `{}` has no label", e.id)))?;
            Ok(names.binary_search(name).expect("label collected above"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LabelledGraph { graph, labels, names })
}

/// The document form of a spec: nontrivial dilations as generator lists,
/// nonzero voltages only.
pub fn spec_to_doc(spec: &CoverSpec) -> SpecDoc {
    let base = spec.base();
    let to_raw = |g: &crate::group::GroupElement| g.0.iter().map(|&x| x as i64).collect::<Vec<_>>();
    let dilation = base
        .vertices()
        .iter()
        .zip(spec.dilations())
        .filter(|(_, d)| !d.is_trivial())
        .map(|(v, d)| (v.clone(), d.generators().iter().map(to_raw).collect()))
        .collect();
    let zero = spec.group().zero();
    let voltage = base
        .edges()
        .iter()
        .zip(spec.voltages())
        .filter(|(_, g)| **g != zero)
        .map(|(e, g)| (e.id.clone(), to_raw(g)))
        .collect();
    SpecDoc {
        vertices: base.vertices().to_vec(),
        edges: graph_edges(base),
        group: Some(GroupDoc {
            cyclic: spec.group().orders().iter().map(|&n| n as i64).collect(),
        }),
        dilation,
        voltage,
        labels: None,
    }
}

fn graph_edges(g: &Graph) -> Vec<EdgeDoc> {
    g.edges()
        .iter()
        .map(|e| EdgeDoc {
            id: e.id.clone(),
            src: g.vertices()[e.src].clone(),
            tgt: g.vertices()[e.tgt].clone(),
        })
        .collect()
}

/// Pretty-printed spec document.
pub fn serialize_spec(spec: &CoverSpec) -> String {
    serde_json::to_string_pretty(&spec_to_doc(spec)).expect("spec documents always serialize")
}

/// Vertices and edges as JSON.
pub fn graph_json(g: &Graph) -> Value {
    json!({ "vertices": g.vertices(), "edges": graph_edges(g) })
}

/// Integers fitting in 64 bits become JSON numbers, larger ones strings.
pub fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// A real number to 12 significant digits.
pub fn decimal(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let digits = (11 - x.abs().log10().floor() as i64).max(0) as usize;
    format!("{x:.digits$}")
}

/// Exact coefficient tuple in the power basis, conductor, and embedding.
pub fn cycint_json(z: &CycInt) -> Value {
    let (re, im) = z.to_complex();
    let mut v = json!({
        "tuple": z.coeffs().iter().map(bigint_json).collect::<Vec<_>>(),
        "conductor": z.conductor(),
        "decimal": decimal(re),
    });
    if im.abs() > 1e-9 * (1.0 + re.abs()) {
        v["imag"] = json!(decimal(im));
    }
    v
}

/// Terms as `{"coeff", "exps"}` records in canonical exponent order.
pub fn multipoly_json<R: Ring>(p: &MultiPoly<R>, coeff: impl Fn(&R) -> Value) -> Value {
    let vars = p.vars();
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, c)| {
            let named: BTreeMap<&str, u32> = vars
                .iter()
                .zip(exps)
                .filter(|(_, &k)| k > 0)
                .map(|(v, &k)| (v.as_str(), k))
                .collect();
            json!({ "coeff": coeff(c), "exps": named })
        })
        .collect();
    Value::Array(terms)
}

pub fn int_poly_json(p: &MultiPoly<BigInt>) -> Value {
    multipoly_json(p, bigint_json)
}

pub fn cyc_poly_json(p: &MultiPoly<CycInt>) -> Value {
    multipoly_json(p, cycint_json)
}

/// Coefficients in ascending powers of `s`.
pub fn unipoly_json(p: &UniPoly<BigInt>) -> Value {
    Value::Array(p.coeffs().iter().map(bigint_json).collect())
}

pub fn cyc_unipoly_json(p: &UniPoly<CycInt>) -> Value {
    Value::Array(p.coeffs().iter().map(cycint_json).collect())
}
