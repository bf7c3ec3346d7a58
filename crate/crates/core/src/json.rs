//! Wire formats.
//!
//! All numeric I/O is exact rational text: weights parse from `"p/q"` or
//! integer text (bare JSON integers are also accepted), relation values
//! additionally allow `"inf"`, and float literals are rejected everywhere.
//!
//! * operation: `{"domain": n, "arity": k, "table": [labels]}`, with the
//!   shorthand string `"e:k:i"` accepted wherever an operation is expected;
//! * weighting: `{"domain": n, "arity": k, "entries": [{"op": …, "weight":
//!   "p/q"}]}` — `domain` may be omitted when some entry carries a full
//!   operation object;
//! * weighted relation: `{"arity": m, "values": ["p/q" | "inf", …]}` in
//!   lexicographic tuple order (the domain size is recovered from the table
//!   length);
//! * matrix: `{"rows": n, "cols": m, "data": [["p/q", …], …]}`;
//! * instance: `{"domain": n, "num_vars": v, "relations": {name: relation},
//!   "constraints": [{"rel": name, "scope": [vars]}]}` with 0-based
//!   variable indices.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::ser::{SerializeMap, SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::certificate::ConstructionTree;
use crate::domain::FiniteDomain;
use crate::error::{Error, Result};
use crate::gordan::{GordanOutcome, QMatrix};
use crate::instance::{Constraint, VcspInstance};
use crate::ops::Operation;
use crate::rational::{parse_rational, ExtRational, Rational};
use crate::relation::{Language, WeightedRelation};
use crate::weighting::{ValidityReport, Weighting};

// ---------------------------------------------------------------------------
// rationals

struct QVisitor;

impl<'de> Visitor<'de> for QVisitor {
    type Value = Rational;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\" or integer text (floats are rejected)")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rational, E> {
        parse_rational(v).map_err(|e| E::custom(e.to_string()))
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v.into()))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Rational, E> {
        Ok(Rational::from_integer(v.into()))
    }
}

/// Field-level serde shim for [`Rational`], e.g.
/// `#[serde(with = "crate::json::qserde")]`.
pub mod qserde {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&q.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// Field-level serde shim for `Vec<Rational>`.
pub mod qserde_vec {
    use super::*;

    pub fn serialize<S: Serializer>(qs: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(qs.len()))?;
        for q in qs {
            seq.serialize_element(&q.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Vec<Rational>;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a sequence of rationals")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let mut out = Vec::new();
                while let Some(q) = seq.next_element::<QDe>()? {
                    out.push(q.0);
                }
                Ok(out)
            }
        }
        d.deserialize_seq(V)
    }
}

/// Deserializable rational wrapper used inside other visitors.
pub(crate) struct QDe(pub Rational);

impl<'de> Deserialize<'de> for QDe {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        d.deserialize_any(QVisitor).map(QDe)
    }
}

impl Serialize for ExtRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ExtRational;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"p/q\", integer text, or \"inf\"")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                ExtRational::from_str(v).map_err(|e| E::custom(e.to_string()))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(ExtRational::Finite(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(ExtRational::Finite(Rational::from_integer(v.into())))
            }
        }
        d.deserialize_any(V)
    }
}

// ---------------------------------------------------------------------------
// domains and operations

impl Serialize for FiniteDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u64(self.size() as u64)
    }
}

impl<'de> Deserialize<'de> for FiniteDomain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let size = usize::deserialize(d)?;
        FiniteDomain::new(size).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct OpDoc {
    domain: usize,
    arity: usize,
    table: Vec<usize>,
}

impl Serialize for Operation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        OpDoc {
            domain: self.domain().size(),
            arity: self.arity(),
            table: self.table().to_vec(),
        }
        .serialize(s)
    }
}

/// Parses the `"e:k:i"` projection shorthand; the domain comes from context.
pub fn projection_shorthand(s: &str, domain: FiniteDomain) -> Result<Operation> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["e", k, i] => {
            let arity: usize = k
                .parse()
                .map_err(|_| Error::input(format!("bad arity in shorthand {s:?}")))?;
            let index: usize = i
                .parse()
                .map_err(|_| Error::input(format!("bad index in shorthand {s:?}")))?;
            Operation::projection(domain, arity, index)
        }
        _ => Err(Error::input(format!(
            "operation shorthand must look like \"e:k:i\", got {s:?}"
        ))),
    }
}

/// An operation or a projection shorthand whose domain is not yet known.
#[derive(Clone, Debug)]
pub enum OpInput {
    Full(Operation),
    Shorthand(String),
}

impl OpInput {
    pub fn resolve(self, domain: Option<FiniteDomain>) -> Result<Operation> {
        match self {
            OpInput::Full(op) => {
                if let Some(d) = domain {
                    if op.domain() != d {
                        return Err(Error::input(format!(
                            "operation domain {} does not match the expected {}",
                            op.domain().size(),
                            d.size()
                        )));
                    }
                }
                Ok(op)
            }
            OpInput::Shorthand(s) => {
                let d = domain.ok_or_else(|| {
                    Error::input(format!(
                        "shorthand {s:?} needs a domain from context; \
                         supply a \"domain\" field or a full operation object"
                    ))
                })?;
                projection_shorthand(&s, d)
            }
        }
    }

    pub fn domain(&self) -> Option<FiniteDomain> {
        match self {
            OpInput::Full(op) => Some(op.domain()),
            OpInput::Shorthand(_) => None,
        }
    }
}

impl<'de> Deserialize<'de> for OpInput {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OpInput;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an operation object or an \"e:k:i\" shorthand")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                Ok(OpInput::Shorthand(v.to_owned()))
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let doc = OpDoc::deserialize(de::value::MapAccessDeserializer::new(map))?;
                let domain = FiniteDomain::new(doc.domain).map_err(de::Error::custom)?;
                Operation::new(domain, doc.arity, doc.table)
                    .map(OpInput::Full)
                    .map_err(de::Error::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl<'de> Deserialize<'de> for Operation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let input = OpInput::deserialize(d)?;
        input.resolve(None).map_err(de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// weightings

impl Serialize for Weighting {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct EntryDoc<'a> {
            op: &'a Operation,
            weight: String,
        }
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("domain", &self.domain().size())?;
        map.serialize_entry("arity", &self.arity())?;
        let entries: Vec<EntryDoc> = self
            .entries()
            .map(|(op, w)| EntryDoc {
                op,
                weight: w.to_string(),
            })
            .collect();
        map.serialize_entry("entries", &entries)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Weighting {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct EntryDoc {
            op: OpInput,
            weight: QDe,
        }
        #[derive(Deserialize)]
        struct WeightingDoc {
            domain: Option<usize>,
            arity: usize,
            entries: Vec<EntryDoc>,
        }
        let doc = WeightingDoc::deserialize(d)?;
        let mut domain = match doc.domain {
            Some(n) => Some(FiniteDomain::new(n).map_err(de::Error::custom)?),
            None => None,
        };
        if domain.is_none() {
            domain = doc.entries.iter().find_map(|e| e.op.domain());
        }
        let domain = domain.ok_or_else(|| {
            de::Error::custom(
                "weighting domain is not inferable: every entry is a shorthand \
                 and no \"domain\" field is present",
            )
        })?;
        let mut entries = Vec::with_capacity(doc.entries.len());
        for e in doc.entries {
            let op = e.op.resolve(Some(domain)).map_err(de::Error::custom)?;
            entries.push((op, e.weight.0));
        }
        Weighting::new(domain, doc.arity, entries).map_err(de::Error::custom)
    }
}

impl Serialize for ValidityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(5))?;
        map.serialize_entry("valid", &self.is_valid())?;
        map.serialize_entry("zero_sum", &self.zero_sum)?;
        map.serialize_entry("sum", &self.sum.to_string())?;
        map.serialize_entry("negative_non_projections", &self.negative_non_projections)?;
        map.serialize_entry("positive", &self.positive)?;
        map.end()
    }
}

// ---------------------------------------------------------------------------
// weighted relations, languages, instances

impl Serialize for WeightedRelation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("arity", &self.arity())?;
        map.serialize_entry("values", self.values())?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for WeightedRelation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct RelDoc {
            domain: Option<usize>,
            arity: usize,
            values: Vec<ExtRational>,
        }
        let doc = RelDoc::deserialize(d)?;
        let size = match doc.domain {
            Some(n) => n,
            None => infer_domain_size(doc.values.len(), doc.arity).map_err(de::Error::custom)?,
        };
        let domain = FiniteDomain::new(size).map_err(de::Error::custom)?;
        WeightedRelation::new(domain, doc.arity, doc.values).map_err(de::Error::custom)
    }
}

/// Recovers `|D|` from a value-table length `|D|^m`.
fn infer_domain_size(len: usize, arity: usize) -> Result<usize> {
    if arity == 0 {
        return Err(Error::input("relations must have positive arity"));
    }
    let approx = (len as f64).powf(1.0 / arity as f64).round() as usize;
    // the float is only a hint; the witness check below is exact
    for candidate in [approx.saturating_sub(1), approx, approx + 1] {
        if candidate >= 2 && candidate.checked_pow(arity as u32) == Some(len) {
            return Ok(candidate);
        }
    }
    Err(Error::input(format!(
        "value table length {len} is not |D|^{arity} for any domain size >= 2"
    )))
}

impl Serialize for Language {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("domain", &self.domain().size())?;
        let rels: BTreeMap<&str, &WeightedRelation> = self.relations().collect();
        map.serialize_entry("relations", &rels)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for Language {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct LangDoc {
            domain: usize,
            relations: BTreeMap<String, WeightedRelation>,
        }
        let doc = LangDoc::deserialize(d)?;
        let domain = FiniteDomain::new(doc.domain).map_err(de::Error::custom)?;
        Language::new(domain, doc.relations).map_err(de::Error::custom)
    }
}

/// On-disk instance document; resolve it to a [`VcspInstance`] with
/// [`InstanceDoc::into_instance`].
#[derive(Serialize, Deserialize)]
pub struct InstanceDoc {
    pub domain: usize,
    pub num_vars: usize,
    pub relations: BTreeMap<String, WeightedRelation>,
    pub constraints: Vec<ConstraintDoc>,
}

#[derive(Serialize, Deserialize)]
pub struct ConstraintDoc {
    pub rel: String,
    pub scope: Vec<usize>,
}

impl InstanceDoc {
    pub fn into_instance(self) -> Result<VcspInstance> {
        let domain = FiniteDomain::new(self.domain)?;
        let mut constraints = Vec::with_capacity(self.constraints.len());
        for c in self.constraints {
            let relation = self
                .relations
                .get(&c.rel)
                .ok_or_else(|| Error::input(format!("unknown relation name {:?}", c.rel)))?
                .clone();
            constraints.push(Constraint {
                relation,
                scope: c.scope,
            });
        }
        VcspInstance::new(domain, self.num_vars, constraints)
    }
}

// ---------------------------------------------------------------------------
// matrices and Gordan outcomes

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(3))?;
        map.serialize_entry("rows", &self.rows())?;
        map.serialize_entry("cols", &self.cols())?;
        let data: Vec<Vec<String>> = self
            .data()
            .iter()
            .map(|r| r.iter().map(Rational::to_string).collect())
            .collect();
        map.serialize_entry("data", &data)?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct MatrixDoc {
            rows: usize,
            cols: usize,
            data: Vec<Vec<QDe>>,
        }
        let doc = MatrixDoc::deserialize(d)?;
        let data: Vec<Vec<Rational>> = doc
            .data
            .into_iter()
            .map(|r| r.into_iter().map(|q| q.0).collect())
            .collect();
        let m = QMatrix::new(data).map_err(de::Error::custom)?;
        if m.rows() != doc.rows || m.cols() != doc.cols {
            return Err(de::Error::custom(format!(
                "matrix data is {}x{} but the header says {}x{}",
                m.rows(),
                m.cols(),
                doc.rows,
                doc.cols
            )));
        }
        Ok(m)
    }
}

impl Serialize for GordanOutcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        match self {
            GordanOutcome::Kernel(x) => {
                map.serialize_entry("outcome", "kernel")?;
                let xs: Vec<String> = x.iter().map(Rational::to_string).collect();
                map.serialize_entry("x", &xs)?;
            }
            GordanOutcome::Dual(y) => {
                map.serialize_entry("outcome", "dual")?;
                let ys: Vec<String> = y.iter().map(Rational::to_string).collect();
                map.serialize_entry("y", &ys)?;
            }
        }
        map.end()
    }
}

// ---------------------------------------------------------------------------
// construction trees

impl Serialize for ConstructionTree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(1))?;
        match self {
            ConstructionTree::Leaf(w) => map.serialize_entry("leaf", w)?,
            ConstructionTree::Scale(c, t) => {
                #[derive(Serialize)]
                struct ScaleDoc<'a> {
                    by: String,
                    of: &'a ConstructionTree,
                }
                map.serialize_entry(
                    "scale",
                    &ScaleDoc {
                        by: c.to_string(),
                        of: t,
                    },
                )?;
            }
            ConstructionTree::Add(a, b) => {
                map.serialize_entry("add", &[a.as_ref(), b.as_ref()])?;
            }
            ConstructionTree::Superpose(t, gs) => {
                #[derive(Serialize)]
                struct SuperposeDoc<'a> {
                    of: &'a ConstructionTree,
                    with: &'a [Operation],
                }
                map.serialize_entry("superpose", &SuperposeDoc { of: t, with: gs })?;
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ConstructionTree {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = ConstructionTree;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a construction-tree node object with one key")
            }
            fn visit_map<A: MapAccess<'de>>(
                self,
                mut map: A,
            ) -> std::result::Result<Self::Value, A::Error> {
                let key: String = map
                    .next_key()?
                    .ok_or_else(|| de::Error::custom("empty tree node"))?;
                let node = match key.as_str() {
                    "leaf" => ConstructionTree::Leaf(map.next_value()?),
                    "scale" => {
                        #[derive(Deserialize)]
                        struct ScaleDoc {
                            by: QDe,
                            of: ConstructionTree,
                        }
                        let doc: ScaleDoc = map.next_value()?;
                        ConstructionTree::scale(doc.by.0, doc.of)
                    }
                    "add" => {
                        let [a, b]: [ConstructionTree; 2] = map.next_value()?;
                        ConstructionTree::add(a, b)
                    }
                    "superpose" => {
                        #[derive(Deserialize)]
                        struct SuperposeDoc {
                            of: ConstructionTree,
                            with: Vec<Operation>,
                        }
                        let doc: SuperposeDoc = map.next_value()?;
                        ConstructionTree::superpose(doc.of, doc.with)
                    }
                    other => {
                        return Err(de::Error::custom(format!(
                            "unknown tree node kind {other:?}"
                        )))
                    }
                };
                if map.next_key::<String>()?.is_some() {
                    return Err(de::Error::custom("tree node must have exactly one key"));
                }
                Ok(node)
            }
        }
        d.deserialize_map(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn operation_round_trip_and_shorthand() {
        let min = fixtures::boolean_min();
        let text = serde_json::to_string(&min).unwrap();
        assert_eq!(text, r#"{"domain":2,"arity":2,"table":[0,0,0,1]}"#);
        let back: Operation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, min);

        let w: Weighting = serde_json::from_str(
            r#"{"domain": 2, "arity": 2, "entries": [
                {"op": "e:2:1", "weight": "-1"},
                {"op": {"domain": 2, "arity": 2, "table": [0,0,0,1]}, "weight": "1"}
            ]}"#,
        )
        .unwrap();
        assert_eq!(w.weight(&min), crate::rational::rational_from_int(1));
    }

    #[test]
    fn weighting_domain_inference() {
        // no explicit domain, but a full operation fixes it
        let w: Weighting = serde_json::from_str(
            r#"{"arity": 2, "entries": [
                {"op": {"domain": 2, "arity": 2, "table": [0,0,0,1]}, "weight": "1/2"},
                {"op": "e:2:1", "weight": "-1/2"}
            ]}"#,
        )
        .unwrap();
        assert_eq!(w.domain().size(), 2);

        // shorthand-only entries with no domain cannot be resolved
        let err = serde_json::from_str::<Weighting>(
            r#"{"arity": 2, "entries": [{"op": "e:2:1", "weight": "0"}]}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("domain"));
    }

    #[test]
    fn floats_are_rejected() {
        assert!(serde_json::from_str::<Weighting>(
            r#"{"domain": 2, "arity": 2, "entries": [{"op": "e:2:1", "weight": 0.5}]}"#,
        )
        .is_err());
        assert!(
            serde_json::from_str::<WeightedRelation>(r#"{"arity": 1, "values": [1.5, 0]}"#)
                .is_err()
        );
    }

    #[test]
    fn relation_round_trip_infers_domain() {
        let phi = fixtures::maxcut_gadget_relation();
        let text = serde_json::to_string(&phi).unwrap();
        let back: WeightedRelation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, phi);
        assert_eq!(back.domain().size(), 3);

        let eq = fixtures::equality_relation(fixtures::three_domain());
        let text = serde_json::to_string(&eq).unwrap();
        assert!(text.contains("inf"));
        let back: WeightedRelation = serde_json::from_str(&text).unwrap();
        assert_eq!(back, eq);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        // value table length must be a power of a domain size
        assert!(serde_json::from_str::<WeightedRelation>(
            r#"{"arity": 2, "values": ["0", "1", "2"]}"#
        )
        .is_err());
        // table entries must be labels of the declared domain
        assert!(
            serde_json::from_str::<Operation>(r#"{"domain": 2, "arity": 1, "table": [0, 7]}"#)
                .is_err()
        );
        // matrix header must match the data
        assert!(
            serde_json::from_str::<QMatrix>(r#"{"rows": 2, "cols": 1, "data": [["1"]]}"#).is_err()
        );
        // unknown relation names fail instance resolution
        let doc: InstanceDoc = serde_json::from_str(
            r#"{"domain": 2, "num_vars": 1, "relations": {},
                "constraints": [{"rel": "missing", "scope": [0]}]}"#,
        )
        .unwrap();
        assert!(doc.into_instance().is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let m = QMatrix::new(vec![vec![
            crate::rational::ratio(1, 2),
            crate::rational::ratio(-3, 1),
        ]])
        .unwrap();
        let text = serde_json::to_string(&m).unwrap();
        let back: QMatrix = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn instance_document_resolves_names() {
        let doc: InstanceDoc = serde_json::from_str(
            r#"{
                "domain": 2,
                "num_vars": 3,
                "relations": {"xor": {"arity": 2, "values": ["1", "0", "0", "1"]}},
                "constraints": [
                    {"rel": "xor", "scope": [0, 1]},
                    {"rel": "xor", "scope": [1, 2]},
                    {"rel": "xor", "scope": [0, 2]}
                ]
            }"#,
        )
        .unwrap();
        let inst = doc.into_instance().unwrap();
        assert_eq!(inst.num_vars(), 3);
        assert_eq!(inst.constraints().len(), 3);
    }

    #[test]
    fn tree_round_trip() {
        let w = fixtures::submodular_weighting();
        let t = ConstructionTree::add(
            ConstructionTree::scale(
                crate::rational::ratio(1, 2),
                ConstructionTree::leaf(w.clone()),
            ),
            ConstructionTree::superpose(
                ConstructionTree::leaf(w),
                vec![fixtures::boolean_min(), fixtures::boolean_max()],
            ),
        );
        let text = serde_json::to_string(&t).unwrap();
        let back: ConstructionTree = serde_json::from_str(&text).unwrap();
        assert_eq!(back, t);
    }
}
