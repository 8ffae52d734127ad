//! JSON file formats.
//!
//! Hypergraphs are `{"n": 4, "edges": [[0,1,2], ...]}` with every edge a
//! strictly increasing index list; tournaments are `{"n": 3, "arcs": [[0,1],
//! ...]}` with exactly one arc per pair. Every rejection carries the line and
//! column where it was detected.

use std::fmt;

use serde::de::{self, DeserializeSeed, Deserializer, IgnoredAny, MapAccess, SeqAccess, Visitor};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::realization::NonRealizabilityWitness;
use crate::tournament::Tournament;
use crate::vertex_set::{VertexSet, MAX_VERTICES};

fn parse_error(e: serde_json::Error) -> Error {
    let text = e.to_string();
    let message = match text.rsplit_once(" at line ") {
        Some((head, _)) => head.to_string(),
        None => text,
    };
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message,
    }
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph> {
    let mut de = serde_json::Deserializer::from_str(text);
    let (n, edges) = de.deserialize_map(Document::<EdgeList>::new("edges")).map_err(parse_error)?;
    de.end().map_err(parse_error)?;
    Hypergraph::new(n, edges)
}

pub fn parse_tournament(text: &str) -> Result<Tournament> {
    let mut de = serde_json::Deserializer::from_str(text);
    let (n, arcs) = de.deserialize_map(Document::<ArcList>::new("arcs")).map_err(parse_error)?;
    de.end().map_err(parse_error)?;
    Tournament::from_arcs(n, &arcs)
}

pub fn hypergraph_to_json(h: &Hypergraph) -> Value {
    json!({
        "n": h.order(),
        "edges": h.edges().iter().map(|e| e.to_vec()).collect::<Vec<_>>(),
    })
}

/// Arcs sorted by tail, then head.
pub fn tournament_to_json(t: &Tournament) -> Value {
    let mut arcs = t.arcs();
    arcs.sort_unstable();
    json!({
        "n": t.order(),
        "arcs": arcs.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
    })
}

pub fn witness_to_json(w: &NonRealizabilityWitness) -> Value {
    json!({
        "non_realizable": {
            "witness": w.witness.to_vec(),
            "stage": w.stage.name(),
        }
    })
}

/// A list payload validated element by element once `n` is known.
trait Payload: Sized {
    type Item;
    fn expecting() -> &'static str;
    fn new(order: Option<usize>) -> Self;
    fn check_item<E: de::Error>(&mut self, raw: Vec<usize>) -> Result<(), E>;
    /// Checks left for after both keys were read.
    fn finish<E: de::Error>(&mut self, order: usize) -> Result<(), E>;
    fn into_items(self) -> Vec<Self::Item>;
}

struct EdgeList {
    order: Option<usize>,
    edges: Vec<VertexSet>,
}

impl EdgeList {
    fn check_range<E: de::Error>(e: VertexSet, order: usize) -> Result<(), E> {
        match e.difference(VertexSet::full(order)).first() {
            Some(v) => Err(E::custom(format!("vertex {v} out of range for n = {order}"))),
            None => Ok(()),
        }
    }
}

impl Payload for EdgeList {
    type Item = VertexSet;

    fn expecting() -> &'static str {
        "a list of strictly increasing vertex lists"
    }

    fn new(order: Option<usize>) -> Self {
        EdgeList {
            order,
            edges: Vec::new(),
        }
    }

    fn check_item<E: de::Error>(&mut self, raw: Vec<usize>) -> Result<(), E> {
        if raw.len() < 2 {
            return Err(E::custom(format!("edge {raw:?} has fewer than two vertices")));
        }
        if raw.windows(2).any(|w| w[0] >= w[1]) {
            return Err(E::custom(format!("edge {raw:?} is not strictly increasing")));
        }
        if let Some(&v) = raw.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(E::custom(format!("vertex {v} out of range")));
        }
        let e: VertexSet = raw.iter().collect();
        if let Some(order) = self.order {
            Self::check_range(e, order)?;
        }
        self.edges.push(e);
        Ok(())
    }

    fn finish<E: de::Error>(&mut self, order: usize) -> Result<(), E> {
        self.edges.iter().try_for_each(|&e| Self::check_range(e, order))
    }

    fn into_items(self) -> Vec<VertexSet> {
        self.edges
    }
}

struct ArcList {
    order: Option<usize>,
    arcs: Vec<(usize, usize)>,
    out: Vec<VertexSet>,
}

impl ArcList {
    fn check_range<E: de::Error>(&self, (u, v): (usize, usize), order: usize) -> Result<(), E> {
        match [u, v].into_iter().find(|&w| w >= order) {
            Some(w) => Err(E::custom(format!("vertex {w} out of range for n = {order}"))),
            None => Ok(()),
        }
    }
}

impl Payload for ArcList {
    type Item = (usize, usize);

    fn expecting() -> &'static str {
        "a list of [tail, head] pairs"
    }

    fn new(order: Option<usize>) -> Self {
        ArcList {
            order,
            arcs: Vec::new(),
            out: vec![VertexSet::EMPTY; MAX_VERTICES],
        }
    }

    fn check_item<E: de::Error>(&mut self, raw: Vec<usize>) -> Result<(), E> {
        let &[u, v] = raw.as_slice() else {
            return Err(E::custom(format!("arc {raw:?} is not a pair")));
        };
        if u == v {
            return Err(E::custom(format!("self-loop at {u}")));
        }
        self.check_range((u, v), self.order.unwrap_or(MAX_VERTICES))?;
        if self.out[u].contains(v) || self.out[v].contains(u) {
            return Err(E::custom(format!("pair {{{u},{v}}} is oriented more than once")));
        }
        self.out[u].insert(v);
        self.arcs.push((u, v));
        Ok(())
    }

    fn finish<E: de::Error>(&mut self, order: usize) -> Result<(), E> {
        for &arc in &self.arcs {
            self.check_range(arc, order)?;
        }
        for u in 0..order {
            for v in u + 1..order {
                if !self.out[u].contains(v) && !self.out[v].contains(u) {
                    return Err(E::custom(format!("pair {{{u},{v}}} has no arc")));
                }
            }
        }
        Ok(())
    }

    fn into_items(self) -> Vec<(usize, usize)> {
        self.arcs
    }
}

struct Document<P> {
    key: &'static str,
    _payload: std::marker::PhantomData<P>,
}

impl<P> Document<P> {
    fn new(key: &'static str) -> Self {
        Document {
            key,
            _payload: std::marker::PhantomData,
        }
    }
}

impl<'de, P: Payload> Visitor<'de> for Document<P> {
    type Value = (usize, Vec<P::Item>);

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        write!(f, "an object with keys \"n\" and \"{}\"", self.key)
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Self::Value, A::Error> {
        let mut order: Option<usize> = None;
        let mut payload: Option<P> = None;
        while let Some(key) = map.next_key::<String>()? {
            if key == "n" {
                if order.is_some() {
                    return Err(de::Error::duplicate_field("n"));
                }
                let n: usize = map.next_value()?;
                if n > MAX_VERTICES {
                    return Err(de::Error::custom(format!(
                        "n = {n} exceeds the maximum of {MAX_VERTICES} vertices"
                    )));
                }
                order = Some(n);
            } else if key == self.key {
                if payload.is_some() {
                    return Err(de::Error::duplicate_field(self.key));
                }
                payload = Some(map.next_value_seed(ListSeed(P::new(order)))?);
            } else {
                map.next_value::<IgnoredAny>()?;
                return Err(de::Error::custom(format!(
                    "unknown field `{key}`, expected `n` or `{}`",
                    self.key
                )));
            }
        }
        let order = order.ok_or_else(|| de::Error::missing_field("n"))?;
        let mut payload = payload.ok_or_else(|| de::Error::missing_field(self.key))?;
        payload.finish(order)?;
        Ok((order, payload.into_items()))
    }
}

struct ListSeed<P>(P);

impl<'de, P: Payload> DeserializeSeed<'de> for ListSeed<P> {
    type Value = P;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> Result<P, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de, P: Payload> Visitor<'de> for ListSeed<P> {
    type Value = P;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(P::expecting())
    }

    fn visit_seq<A: SeqAccess<'de>>(mut self, mut seq: A) -> Result<P, A::Error> {
        while let Some(raw) = seq.next_element::<Vec<usize>>()? {
            self.0.check_item(raw)?;
        }
        Ok(self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realization::WitnessStage;

    fn parse_err(r: Result<impl fmt::Debug>) -> (usize, usize, String) {
        match r {
            Err(Error::Parse {
                line,
                column,
                message,
            }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn hypergraph_round_trip() {
        let h = parse_hypergraph(r#"{"n": 4, "edges": [[0,1,2],[1,2,3]]}"#).unwrap();
        assert_eq!(h.edge_count(), 2);
        let back = hypergraph_to_json(&h);
        assert_eq!(back, json!({"n": 4, "edges": [[0,1,2],[1,2,3]]}));
        assert_eq!(parse_hypergraph(&back.to_string()).unwrap(), h);
        // Keys in either order.
        let g = parse_hypergraph(r#"{"edges": [[0,1,2]], "n": 3}"#).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn hypergraph_errors_have_positions() {
        let (line, col, msg) = parse_err(parse_hypergraph("{\"n\": 4,\n \"edges\": [[0,2,1]]}"));
        assert_eq!(line, 2);
        assert!(col > 1);
        assert!(msg.contains("strictly increasing"), "{msg}");

        let (_, _, msg) = parse_err(parse_hypergraph(r#"{"n": 3, "edges": [[0,1,3]]}"#));
        assert!(msg.contains("out of range"), "{msg}");
        let (_, _, msg) = parse_err(parse_hypergraph(r#"{"edges": [[0,1,3]], "n": 3}"#));
        assert!(msg.contains("out of range"), "{msg}");
        let (_, _, msg) = parse_err(parse_hypergraph(r#"{"n": 3}"#));
        assert!(msg.contains("missing field"), "{msg}");
        let (_, _, msg) = parse_err(parse_hypergraph(r#"{"n": 3, "edges": [], "x": 1}"#));
        assert!(msg.contains("unknown field"), "{msg}");
        let (line, _, _) = parse_err(parse_hypergraph("{\n\n  \"n\": 3, \"edges\": [[0,1,2]"));
        assert_eq!(line, 3);
        parse_err(parse_hypergraph(r#"{"n": 3, "edges": [[0]]}"#));
        parse_err(parse_hypergraph(r#"{"n": 65, "edges": []}"#));
        parse_err(parse_hypergraph(r#"{"n": 3, "edges": []} trailing"#));
    }

    #[test]
    fn tournament_round_trip() {
        let text = r#"{"n": 3, "arcs": [[0,1],[1,2],[2,0]]}"#;
        let t = parse_tournament(text).unwrap();
        assert_eq!(t, Tournament::three_cycle());
        assert_eq!(parse_tournament(&tournament_to_json(&t).to_string()).unwrap(), t);
    }

    #[test]
    fn tournament_errors() {
        let (_, _, msg) = parse_err(parse_tournament(r#"{"n": 3, "arcs": [[0,1],[1,0],[1,2],[2,0]]}"#));
        assert!(msg.contains("more than once"), "{msg}");
        let (_, _, msg) = parse_err(parse_tournament(r#"{"n": 3, "arcs": [[0,1],[1,2]]}"#));
        assert!(msg.contains("no arc"), "{msg}");
        let (_, _, msg) = parse_err(parse_tournament(r#"{"n": 3, "arcs": [[0,0]]}"#));
        assert!(msg.contains("self-loop"), "{msg}");
        let (_, _, msg) = parse_err(parse_tournament(r#"{"n": 2, "arcs": [[0,1,1]]}"#));
        assert!(msg.contains("not a pair"), "{msg}");
        parse_err(parse_tournament(r#"{"n": 2, "arcs": [[0,5]]}"#));
    }

    #[test]
    fn witness_format() {
        let w = NonRealizabilityWitness {
            witness: [0, 1, 2, 3].iter().collect(),
            stage: WitnessStage::CriticalMismatch,
        };
        assert_eq!(
            witness_to_json(&w),
            json!({"non_realizable": {"witness": [0,1,2,3], "stage": "critical-mismatch"}})
        );
    }
}
