//! TOML algebra documents.
//!
//! ```toml
//! kind = "structure_constants"   # or "quiver"
//! p = 2
//! basis = ["e11", "e12", "e22"]
//! unit = "e11 + e22"
//!
//! [table]                        # products not listed are zero
//! "e11*e11" = "e11"
//! "e11*e12" = "e12"
//! "e12*e22" = "e12"
//! "e22*e22" = "e22"
//!
//! [elements]                     # optional names usable as selectors
//! top = "e11"
//! ```
//!
//! Quiver documents give `vertices`, `arrows` as `[source, target, label]`
//! triples, `relations` such as `"a.b"` and `nilpotency_cap`.

use std::collections::BTreeMap;
use std::ops::Range;
use std::sync::Arc;

use serde::Deserialize;
use toml::Spanned;

use crate::algebra::{parse_linear_combination, Algebra, Element};
use crate::builtins;
use crate::error::{Error, Result};
use crate::linalg::Fp;
use crate::quiver::{path_algebra, Arrow, QuiverPresentation};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    kind: Spanned<String>,
    p: Spanned<u32>,
    dim: Option<Spanned<usize>>,
    basis: Option<Spanned<Vec<Spanned<String>>>>,
    unit: Option<Spanned<String>>,
    table: Option<BTreeMap<Spanned<String>, Spanned<String>>>,
    vertices: Option<Spanned<Vec<Spanned<String>>>>,
    arrows: Option<Vec<Spanned<(String, String, String)>>>,
    relations: Option<Vec<Spanned<String>>>,
    nilpotency_cap: Option<Spanned<usize>>,
    #[serde(default)]
    elements: BTreeMap<Spanned<String>, Spanned<String>>,
}

/// A parsed algebra document.
#[derive(Clone, Debug)]
pub struct AlgebraSpec {
    pub algebra: Arc<Algebra>,
    /// Named elements, keyed by name.
    pub elements: BTreeMap<String, Element>,
}

impl AlgebraSpec {
    /// An element expression, where a bare name from `[elements]` is
    /// accepted as well as any combination of basis labels.
    pub fn element(&self, expr: &str) -> Result<Element> {
        if let Some(e) = self.elements.get(expr.trim()) {
            return Ok(e.clone());
        }
        let a = &self.algebra;
        let resolve = |name: &str| {
            if let Some(e) = self.elements.get(name) {
                Some(e.0.clone())
            } else {
                a.parse_element(name).ok().map(|e| e.0)
            }
        };
        parse_linear_combination(a.field(), a.dim(), expr, &resolve).map(Element)
    }
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn at(src: &str, span: Range<usize>, message: impl Into<String>) -> Error {
    let (line, column) = line_col(src, span.start);
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Attaches a location to errors from element parsing.
fn located<T>(src: &str, span: Range<usize>, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => at(src, span, other.to_string()),
    })
}

pub fn parse_algebra_toml(src: &str) -> Result<AlgebraSpec> {
    let raw: RawSpec = toml::from_str(src).map_err(|e| {
        let (line, column) = e.span().map_or((1, 1), |s| line_col(src, s.start));
        Error::Parse {
            line,
            column,
            message: e.message().to_string(),
        }
    })?;
    let p = *raw.p.get_ref();
    let field = located(src, raw.p.span(), Fp::new(p))?;
    let algebra = match raw.kind.get_ref().as_str() {
        "structure_constants" => structure_constants(src, &raw, field)?,
        "quiver" => quiver(src, &raw)?,
        other => return Err(at(src, raw.kind.span(), format!("unknown kind {other:?}"))),
    };
    let algebra = Arc::new(algebra);
    let mut elements = BTreeMap::new();
    for (name, expr) in &raw.elements {
        let e = located(src, expr.span(), algebra.parse_element(expr.get_ref()))?;
        elements.insert(name.get_ref().clone(), e);
    }
    Ok(AlgebraSpec { algebra, elements })
}

fn require<'a, T>(src: &str, v: &'a Option<T>, field: &str, kind_span: Range<usize>) -> Result<&'a T> {
    v.as_ref()
        .ok_or_else(|| at(src, kind_span, format!("missing field `{field}` for this kind")))
}

fn structure_constants(src: &str, raw: &RawSpec, field: Fp) -> Result<Algebra> {
    let ks = raw.kind.span();
    let basis = require(src, &raw.basis, "basis", ks.clone())?;
    let labels: Vec<String> = basis.get_ref().iter().map(|s| s.get_ref().clone()).collect();
    let dim = labels.len();
    for (k, l) in basis.get_ref().iter().enumerate() {
        if labels[..k].contains(l.get_ref()) {
            return Err(at(src, l.span(), format!("duplicate basis label {:?}", l.get_ref())));
        }
    }
    if let Some(d) = &raw.dim {
        if *d.get_ref() != dim {
            return Err(at(src, d.span(), format!("dim is {} but the basis has {dim} labels", d.get_ref())));
        }
    }
    let resolve = |name: &str| {
        labels.iter().position(|l| l == name).map(|i| {
            let mut v = vec![0; dim];
            v[i] = 1;
            v
        })
    };
    let unit = require(src, &raw.unit, "unit", ks.clone())?;
    let unit_vec = located(src, unit.span(), parse_linear_combination(field, dim, unit.get_ref(), &resolve))?;
    let mut table = vec![vec![vec![0u32; dim]; dim]; dim];
    let entries = require(src, &raw.table, "table", ks)?;
    for (key, value) in entries {
        let (l, r) = key
            .get_ref()
            .split_once('*')
            .ok_or_else(|| at(src, key.span(), "table keys have the form \"x*y\""))?;
        let i = resolve(l.trim()).ok_or_else(|| at(src, key.span(), format!("unknown label {:?}", l.trim())))?;
        let j = resolve(r.trim()).ok_or_else(|| at(src, key.span(), format!("unknown label {:?}", r.trim())))?;
        let (i, j) = (i.iter().position(|&x| x == 1).unwrap(), j.iter().position(|&x| x == 1).unwrap());
        table[i][j] = located(src, value.span(), parse_linear_combination(field, dim, value.get_ref(), &resolve))?;
    }
    Algebra::from_structure_constants(field.p(), labels, table, unit_vec)
}

fn quiver(src: &str, raw: &RawSpec) -> Result<Algebra> {
    let ks = raw.kind.span();
    let vertices = require(src, &raw.vertices, "vertices", ks.clone())?;
    let cap = require(src, &raw.nilpotency_cap, "nilpotency_cap", ks)?;
    let arrows = raw.arrows.clone().unwrap_or_default();
    let names: Vec<String> = vertices.get_ref().iter().map(|v| v.get_ref().clone()).collect();
    for a in &arrows {
        let (s, t, _) = a.get_ref();
        for v in [s, t] {
            if !names.contains(v) {
                return Err(at(src, a.span(), format!("arrow endpoint {v:?} is not a vertex")));
            }
        }
    }
    let q = QuiverPresentation {
        vertices: names,
        arrows: arrows
            .iter()
            .map(|a| {
                let (s, t, l) = a.get_ref().clone();
                Arrow {
                    source: s,
                    target: t,
                    label: l,
                }
            })
            .collect(),
        relations: raw.relations.iter().flatten().map(|r| r.get_ref().clone()).collect(),
        nilpotency_cap: *cap.get_ref(),
    };
    let first_relation = raw.relations.as_ref().and_then(|r| r.first()).map(|r| r.span());
    path_algebra(&q, *raw.p.get_ref()).map_err(|e| match (&e, first_relation) {
        (Error::UnknownLabel(_) | Error::Invalid(_), Some(span)) => at(src, span, e.to_string()),
        _ => e,
    })
}

/// A built-in name or a path to a TOML document.
pub fn load_algebra(source: &str) -> Result<AlgebraSpec> {
    if builtins::NAMES.contains(&source) {
        return Ok(AlgebraSpec {
            algebra: Arc::new(builtins::load(source)?),
            elements: BTreeMap::new(),
        });
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| Error::Invalid(format!("cannot read algebra {source:?}: {e} (built-ins: {})", builtins::NAMES.join(", "))))?;
    parse_algebra_toml(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const T2: &str = r#"
# upper triangular 2x2 matrices
kind = "structure_constants"
p = 2
basis = ["e11", "e12", "e22"]
unit = "e11 + e22"

[table]
"e11*e11" = "e11"
"e11*e12" = "e12"
"e12*e22" = "e12"
"e22*e22" = "e22"

[elements]
top = "e11"
"#;

    #[test]
    fn structure_constants_document() {
        let s = parse_algebra_toml(T2).unwrap();
        assert_eq!(s.algebra.dim(), 3);
        let e = s.element("top").unwrap();
        assert!(s.algebra.is_idempotent(&e));
        assert_eq!(s.element("top + e22").unwrap(), *s.algebra.unit());
    }

    #[test]
    fn quiver_document() {
        let src = "kind = \"quiver\"\np = 2\nvertices = [\"1\", \"2\", \"3\"]\narrows = [[\"1\", \"2\", \"a\"], [\"2\", \"3\", \"b\"]]\nrelations = [\"a.b\"]\nnilpotency_cap = 3\n";
        let s = parse_algebra_toml(src).unwrap();
        assert_eq!(s.algebra.dim(), 5);
        assert!(s.algebra.vertex_subset_idempotents().is_some());
    }

    #[test]
    fn errors_carry_positions() {
        let bad = "kind = \"structure_constants\"\np = 2\nbasis = [\"x\"\n";
        match parse_algebra_toml(bad) {
            Err(Error::Parse { line, .. }) => assert!(line >= 3),
            other => panic!("{other:?}"),
        }
        let bad = T2.replace("\"e11*e12\" = \"e12\"", "\"e11*e12\" = \"e13\"");
        match parse_algebra_toml(&bad) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (10, 13)),
            other => panic!("{other:?}"),
        }
        let bad = T2.replace("p = 2", "p = 4");
        assert!(matches!(parse_algebra_toml(&bad), Err(Error::Parse { line: 4, .. })));
        let bad = T2.replace("\"e12*e22\" = \"e12\"", "\"e12*e22\" = \"e11\"");
        assert!(matches!(parse_algebra_toml(&bad), Err(Error::NonAssociative { .. }) | Err(Error::BadUnit { .. })));
    }
}
