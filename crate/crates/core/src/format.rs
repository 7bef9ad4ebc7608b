//! Exchange formats. Rationals are always strings `"p/q"` or `"p"`; bare
//! JSON/TOML integers are accepted on input.
//!
//! - point sets: JSON array of `[x, y]` pairs
//! - line colorings: TOML `period`, `breaks`, `colors`
//! - plane colorings: TOML `kind = "horizontal" | "diagonal"` with a `[line]`
//!   table, or `kind = "grid"` with `cell = [w, h]` and `table`
//! - copy hypergraphs: JSON `{n, edges, triangle, points}`
//! - deduction obligations: JSON records `{points, expected, verified, note}`

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::deduction::Obligation;
use crate::geometry::{Point, PointSet, Triangle};
use crate::hypergraph::CopyHypergraph;
use crate::line::LineColoring;
use crate::plane::{lift, GridColoring, LiftAxis, PlaneColoring, PlaneKind};
use crate::scalar::{parse_scalar, Scalar};

/// Syntax or type error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    /// Well-formed input describing an invalid object.
    #[error("invalid {what}: {message}")]
    Invalid { what: &'static str, message: String },
}

fn invalid(what: &'static str, e: impl fmt::Display) -> FormatError {
    FormatError::Invalid { what, message: e.to_string() }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; keep only the cause.
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        ParseError { line: e.line(), column: e.column(), message }
    }
}

fn toml_error(src: &str, e: toml::de::Error) -> ParseError {
    let offset = e.span().map_or(0, |s| s.start).min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ParseError { line, column, message: e.message().to_string() }
}

/// A scalar carried as a string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exact<S>(pub S);

impl<S: Scalar> Serialize for Exact<S> {
    fn serialize<Ser: Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Exact<S> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<S>(PhantomData<S>);
        impl<S: Scalar> Visitor<'_> for V<S> {
            type Value = Exact<S>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_scalar(v).map(Exact).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(Exact(S::from_int(v)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                i64::try_from(v).map(|v| Exact(S::from_int(v))).map_err(E::custom)
            }
        }
        d.deserialize_any(V(PhantomData))
    }
}

pub fn point_to_pair<S: Scalar>(p: &Point<S>) -> [String; 2] {
    [p.x.to_string(), p.y.to_string()]
}

// ---------------------------------------------------------------------------
// Point sets

pub fn parse_point_set<S: Scalar>(src: &str) -> Result<PointSet<S>, FormatError> {
    let raw: Vec<[Exact<S>; 2]> = serde_json::from_str(src).map_err(ParseError::from)?;
    let points = raw.into_iter().map(|[x, y]| Point::new(x.0, y.0)).collect();
    PointSet::new(points).map_err(|e| invalid("point set", e))
}

pub fn point_set_to_json<S: Scalar>(set: &PointSet<S>) -> String {
    let pairs: Vec<[String; 2]> = set.points().iter().map(point_to_pair).collect();
    serde_json::to_string_pretty(&pairs).expect("strings serialize")
}

// ---------------------------------------------------------------------------
// Colorings

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "S: Scalar")]
struct LineDoc<S> {
    period: Exact<S>,
    breaks: Vec<Exact<S>>,
    colors: Vec<usize>,
}

impl<S: Scalar> LineDoc<S> {
    fn build(self) -> Result<LineColoring<S>, FormatError> {
        LineColoring::new(self.period.0, self.breaks.into_iter().map(|b| b.0).collect(), self.colors)
            .map_err(|e| invalid("line coloring", e))
    }

    fn from(c: &LineColoring<S>) -> Self {
        LineDoc {
            period: Exact(c.period().clone()),
            breaks: c.breaks().iter().cloned().map(Exact).collect(),
            colors: c.colors().to_vec(),
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum KindTag {
    Horizontal,
    Diagonal,
    Grid,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "S: Scalar")]
struct PlaneDoc<S> {
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    line: Option<LineDoc<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cell: Option<[Exact<S>; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
}

pub fn parse_line_coloring<S: Scalar>(src: &str) -> Result<LineColoring<S>, FormatError> {
    let doc: LineDoc<S> = toml::from_str(src).map_err(|e| toml_error(src, e))?;
    doc.build()
}

pub fn line_coloring_to_toml<S: Scalar>(c: &LineColoring<S>) -> String {
    toml::to_string(&LineDoc::from(c)).expect("line coloring serializes")
}

pub fn parse_plane_coloring<S: Scalar>(src: &str) -> Result<PlaneColoring<S>, FormatError> {
    let doc: PlaneDoc<S> = toml::from_str(src).map_err(|e| toml_error(src, e))?;
    let missing = |field: &str| invalid("plane coloring", format!("missing `{field}`"));
    match doc.kind {
        KindTag::Horizontal | KindTag::Diagonal => {
            let line = doc.line.ok_or_else(|| missing("line"))?.build()?;
            let axis = if doc.kind == KindTag::Horizontal { LiftAxis::Horizontal } else { LiftAxis::Diagonal };
            Ok(lift(&line, axis))
        }
        KindTag::Grid => {
            let [w, h] = doc.cell.ok_or_else(|| missing("cell"))?;
            let table = doc.table.ok_or_else(|| missing("table"))?;
            let grid = GridColoring::new(w.0, h.0, table).map_err(|e| invalid("plane coloring", e))?;
            Ok(PlaneColoring::grid(grid))
        }
    }
}

pub fn plane_coloring_to_toml<S: Scalar>(c: &PlaneColoring<S>) -> String {
    let doc = match c.kind() {
        PlaneKind::Horizontal(l) => {
            PlaneDoc { kind: KindTag::Horizontal, line: Some(LineDoc::from(l)), cell: None, table: None }
        }
        PlaneKind::Diagonal(l) => {
            PlaneDoc { kind: KindTag::Diagonal, line: Some(LineDoc::from(l)), cell: None, table: None }
        }
        PlaneKind::Grid(g) => PlaneDoc {
            kind: KindTag::Grid,
            line: None,
            cell: Some([Exact(g.cell_w().clone()), Exact(g.cell_h().clone())]),
            table: Some(g.table().to_vec()),
        },
    };
    toml::to_string(&doc).expect("plane coloring serializes")
}

// ---------------------------------------------------------------------------
// Hypergraphs

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, bound = "S: Scalar")]
struct HypergraphDoc<S> {
    n: usize,
    edges: Vec<[usize; 3]>,
    triangle: [Exact<S>; 3],
    points: Vec<[Exact<S>; 2]>,
}

pub fn parse_copy_hypergraph<S: Scalar>(src: &str) -> Result<CopyHypergraph<S>, FormatError> {
    let doc: HypergraphDoc<S> = serde_json::from_str(src).map_err(ParseError::from)?;
    let [a, b, c] = doc.triangle;
    let t = Triangle::new(a.0, b.0, c.0).map_err(|e| invalid("triangle", e))?;
    let points = doc.points.into_iter().map(|[x, y]| Point::new(x.0, y.0)).collect::<Vec<_>>();
    if points.len() != doc.n {
        return Err(invalid("hypergraph", format!("n = {} but {} points", doc.n, points.len())));
    }
    // Edges index the points in file order; reindex after sorting.
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].cmp(&points[j]));
    let mut rank = vec![0; points.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let set = PointSet::new(points).map_err(|e| invalid("point set", e))?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in doc.edges {
        if e.iter().any(|&v| v >= doc.n) {
            return Err(invalid("hypergraph", format!("edge {e:?} out of range")));
        }
        let mut r = e.map(|v| rank[v]);
        r.sort_unstable();
        edges.push(r);
    }
    CopyHypergraph::new(set, t, edges).map_err(|e| invalid("hypergraph", e))
}

pub fn copy_hypergraph_to_json<S: Scalar>(h: &CopyHypergraph<S>) -> serde_json::Value {
    let t = h.triangle();
    serde_json::json!({
        "n": h.vertex_count(),
        "edges": h.triples().collect::<Vec<_>>(),
        "triangle": [t.a().to_string(), t.b().to_string(), t.c().to_string()],
        "points": h.points().points().iter().map(point_to_pair).collect::<Vec<_>>(),
    })
}

// ---------------------------------------------------------------------------
// Deduction records

pub fn obligation_to_json<S: Scalar>(o: &Obligation<S>) -> serde_json::Value {
    serde_json::json!({
        "points": o.points.iter().map(point_to_pair).collect::<Vec<_>>(),
        "expected": o.expected,
        "verified": o.verified,
        "note": o.note,
    })
}

pub fn obligations_to_json<S: Scalar>(list: &[Obligation<S>]) -> serde_json::Value {
    serde_json::Value::Array(list.iter().map(obligation_to_json).collect())
}
