//! Path algebras of quivers modulo relations.
//!
//! Paths compose left to right: `a.b` is defined when the target of `a` is the
//! source of `b`. With right modules this makes e_v A the projective at v.

use std::collections::HashMap;

use crate::algebra::{Algebra, Element, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{Fp, Subspace};

const PATH_BUDGET: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: String,
    pub target: String,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    /// Each relation is a linear combination of paths, e.g. `a.b - c.d`.
    pub relations: Vec<String>,
    pub nilpotency_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl QuiverPresentation {
    pub fn new(vertices: &[&str], arrows: &[(&str, &str, &str)], relations: &[&str], nilpotency_cap: usize) -> Self {
        QuiverPresentation {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            arrows: arrows
                .iter()
                .map(|(s, t, l)| Arrow {
                    source: s.to_string(),
                    target: t.to_string(),
                    label: l.to_string(),
                })
                .collect(),
            relations: relations.iter().map(|s| s.to_string()).collect(),
            nilpotency_cap,
        }
    }

    fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownLabel(name.to_string()))
    }

    fn path_label(&self, path: &Path) -> String {
        if path.arrows.is_empty() {
            format!("e{}", self.vertices[path.source])
        } else {
            path.arrows.iter().map(|&a| self.arrows[a].label.as_str()).collect::<Vec<_>>().join(".")
        }
    }

    fn parse_path(&self, text: &str, arrow_index: &HashMap<&str, usize>) -> Result<Path> {
        let mut arrows = Vec::new();
        for name in text.split('.') {
            let name = name.trim();
            let &a = arrow_index.get(name).ok_or_else(|| Error::UnknownLabel(name.to_string()))?;
            arrows.push(a);
        }
        let source = self.vertex_index(&self.arrows[arrows[0]].source)?;
        let mut target = source;
        for (k, &a) in arrows.iter().enumerate() {
            let s = self.vertex_index(&self.arrows[a].source)?;
            if k > 0 && s != target {
                return Err(Error::Invalid(format!("path {text:?} is not composable")));
            }
            target = self.vertex_index(&self.arrows[a].target)?;
        }
        Ok(Path { source, target, arrows })
    }

    /// Parses a relation into (coefficient, path) terms.
    fn parse_relation(&self, text: &str, field: Fp, arrow_index: &HashMap<&str, usize>) -> Result<Vec<(u32, Path)>> {
        let mut terms = Vec::new();
        let mut sign = 1i64;
        let mut cur = String::new();
        let mut raw = Vec::new();
        for ch in text.chars() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() {
                raw.push((sign, cur.trim().to_string()));
                cur.clear();
                sign = if ch == '-' { -1 } else { 1 };
            } else if ch == '-' && cur.trim().is_empty() {
                sign = -sign;
            } else if ch != '+' {
                cur.push(ch);
            }
        }
        if cur.trim().is_empty() {
            return Err(Error::Invalid(format!("malformed relation {text:?}")));
        }
        raw.push((sign, cur.trim().to_string()));
        for (sign, term) in raw {
            let (coef, path) = match term.split_once('*') {
                Some((c, p)) => (
                    c.trim().parse::<i64>().map_err(|_| Error::Invalid(format!("bad coefficient in {term:?}")))?,
                    p.trim().to_string(),
                ),
                None => (1, term),
            };
            let path = self.parse_path(&path, arrow_index)?;
            terms.push((field.reduce(sign * coef), path));
        }
        let (s, t) = (terms[0].1.source, terms[0].1.target);
        if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
            return Err(Error::Invalid(format!("relation {text:?} mixes paths with different endpoints")));
        }
        Ok(terms)
    }
}

/// Builds kQ / (I + J^{cap+1}), requiring that every path of length cap+1
/// already vanishes modulo I + J^{cap+2}.
pub fn path_algebra(q: &QuiverPresentation, p: u32) -> Result<Algebra> {
    let field = Fp::new(p)?;
    if q.nilpotency_cap == 0 {
        return Err(Error::Invalid("nilpotency_cap must be positive".into()));
    }
    let mut names = std::collections::HashSet::new();
    for v in &q.vertices {
        if !names.insert(format!("e{v}")) {
            return Err(Error::Invalid(format!("duplicate vertex {v:?}")));
        }
    }
    let mut arrow_index = HashMap::new();
    for (i, a) in q.arrows.iter().enumerate() {
        q.vertex_index(&a.source)?;
        q.vertex_index(&a.target)?;
        if a.label.contains(['.', '+', '-', '*']) || a.label.is_empty() {
            return Err(Error::Invalid(format!("arrow label {:?} is empty or contains an operator", a.label)));
        }
        if !names.insert(a.label.clone()) || arrow_index.insert(a.label.as_str(), i).is_some() {
            return Err(Error::Invalid(format!("duplicate label {:?}", a.label)));
        }
    }
    let max_len = q.nilpotency_cap + 1;

    // All paths of length <= cap + 1, grouped by length.
    let mut paths: Vec<Path> = (0..q.vertices.len())
        .map(|v| Path {
            source: v,
            target: v,
            arrows: vec![],
        })
        .collect();
    let mut frontier: Vec<Path> = paths.clone();
    for _ in 0..max_len {
        let mut next = Vec::new();
        for path in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if q.vertex_index(&a.source)? == path.target {
                    let mut arrows = path.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        source: path.source,
                        target: q.vertex_index(&a.target)?,
                        arrows,
                    });
                }
            }
        }
        paths.extend(next.iter().cloned());
        if paths.len() > PATH_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "path enumeration".into(),
                needed: paths.len() as u128,
                budget: PATH_BUDGET as u128,
            });
        }
        frontier = next;
    }

    // Column order: longest paths first, so RREF pivots (the eliminated
    // coordinates) fall on long paths and short paths survive as the basis.
    let mut order: Vec<usize> = (0..paths.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(paths[i].arrows.len()), i));
    let mut column = vec![0; paths.len()];
    for (c, &i) in order.iter().enumerate() {
        column[i] = c;
    }
    let index: HashMap<&Path, usize> = paths.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let n = paths.len();

    let mut generators = Vec::new();
    for rel in &q.relations {
        let terms = q.parse_relation(rel, field, &arrow_index)?;
        let (s, t) = (terms[0].1.source, terms[0].1.target);
        for u in paths.iter().filter(|u| u.target == s) {
            for w in paths.iter().filter(|w| w.source == t) {
                let mut v = vec![0u32; n];
                let mut any = false;
                for (c, path) in &terms {
                    let len = u.arrows.len() + path.arrows.len() + w.arrows.len();
                    if len > max_len {
                        continue;
                    }
                    let arrows: Vec<usize> = u.arrows.iter().chain(&path.arrows).chain(&w.arrows).copied().collect();
                    let composite = Path {
                        source: u.source,
                        target: w.target,
                        arrows,
                    };
                    let col = column[index[&composite]];
                    v[col] = field.add(v[col], *c);
                    any = true;
                }
                if any {
                    generators.push(v);
                }
            }
        }
        if terms.iter().any(|(_, p)| p.arrows.is_empty()) {
            return Err(Error::Invalid(format!("relation {rel:?} involves a trivial path")));
        }
    }
    let ideal = Subspace::span(field, n, &generators);

    for (i, path) in paths.iter().enumerate() {
        if path.arrows.len() == max_len {
            let mut v = vec![0u32; n];
            v[column[i]] = 1;
            if !ideal.contains(&v) {
                return Err(Error::NotFiniteDimensional {
                    cap: q.nilpotency_cap,
                    path: q.path_label(path),
                });
            }
        }
    }

    // Basis: surviving columns, reordered by (length, enumeration order).
    let complement = ideal.complement_indices();
    let mut basis_paths: Vec<usize> = complement.iter().map(|&c| order[c]).collect();
    basis_paths.sort_by_key(|&i| (paths[i].arrows.len(), i));
    let dim = basis_paths.len();
    let coord_of_column: HashMap<usize, usize> = complement.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    // quotient coordinate k (complement order) -> basis position
    let mut position = vec![0; dim];
    for (pos, &pi) in basis_paths.iter().enumerate() {
        position[coord_of_column[&column[pi]]] = pos;
    }
    let residue = |v: &[u32]| -> Vec<u32> {
        let qc = ideal.quotient_coords(v);
        let mut out = vec![0; dim];
        for (k, c) in qc.into_iter().enumerate() {
            out[position[k]] = c;
        }
        out
    };

    let mut table = Vec::with_capacity(dim * dim * dim);
    for &x in &basis_paths {
        for &y in &basis_paths {
            let (px, py) = (&paths[x], &paths[y]);
            let mut v = vec![0u32; n];
            if px.target == py.source && px.arrows.len() + py.arrows.len() <= max_len {
                let arrows: Vec<usize> = px.arrows.iter().chain(&py.arrows).copied().collect();
                let composite = if px.arrows.is_empty() {
                    py.clone()
                } else {
                    Path {
                        source: px.source,
                        target: py.target,
                        arrows,
                    }
                };
                v[column[index[&composite]]] = 1;
            }
            table.extend(residue(&v));
        }
    }

    let vertex_vectors: Vec<Vec<u32>> = (0..q.vertices.len())
        .map(|vtx| {
            let mut v = vec![0u32; n];
            v[column[vtx]] = 1;
            residue(&v)
        })
        .collect();
    let unit = vertex_vectors.iter().fold(vec![0u32; dim], |acc, v| field.add_vec(&acc, v));
    let radical_rows: Vec<Vec<u32>> = basis_paths
        .iter()
        .filter(|&&i| !paths[i].arrows.is_empty())
        .map(|&i| {
            let mut v = vec![0u32; n];
            v[column[i]] = 1;
            residue(&v)
        })
        .collect();

    let labels: Vec<String> = basis_paths.iter().map(|&i| q.path_label(&paths[i])).collect();
    let presentation = Presentation {
        vertex_names: q.vertices.clone(),
        blocks: Some(vertex_vectors.into_iter().map(Element).collect()),
        radical: Some(Subspace::span(field, dim, &radical_rows)),
    };
    let a = Algebra::assemble(field, labels, table, Element(unit), presentation);
    a.validate()?;
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_is_upper_triangular() {
        let q = QuiverPresentation::new(&["1", "2"], &[("1", "2", "a")], &[], 2);
        let a = path_algebra(&q, 2).unwrap();
        assert_eq!(a.labels(), &["e1", "e2", "a"]);
        // e1 a = a, a e2 = a, everything else that mixes vertices vanishes
        assert_eq!(a.basis_product(0, 2), vec![0, 0, 1]);
        assert_eq!(a.basis_product(2, 1), vec![0, 0, 1]);
        assert_eq!(a.basis_product(2, 0), vec![0, 0, 0]);
        assert_eq!(a.basis_product(1, 2), vec![0, 0, 0]);
        assert_eq!(a.unit(), &Element(vec![1, 1, 0]));
    }

    #[test]
    fn dual_numbers() {
        let q = QuiverPresentation::new(&["1"], &[("1", "1", "x")], &["x.x"], 2);
        let a = path_algebra(&q, 2).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.basis_product(1, 1), vec![0, 0]);
    }

    #[test]
    fn a3_with_zero_relation() {
        let q = QuiverPresentation::new(&["1", "2", "3"], &[("1", "2", "a"), ("2", "3", "b")], &["a.b"], 3);
        assert_eq!(path_algebra(&q, 2).unwrap().dim(), 5);
        let free = QuiverPresentation::new(&["1", "2", "3"], &[("1", "2", "a"), ("2", "3", "b")], &[], 3);
        assert_eq!(path_algebra(&free, 2).unwrap().dim(), 6);
    }

    #[test]
    fn loop_without_relation_is_rejected() {
        let q = QuiverPresentation::new(&["1"], &[("1", "1", "x")], &[], 3);
        assert!(matches!(path_algebra(&q, 2), Err(Error::NotFiniteDimensional { .. })));
    }

    #[test]
    fn commutative_square() {
        let q = QuiverPresentation::new(
            &["1", "2", "3", "4"],
            &[("1", "2", "a"), ("2", "4", "b"), ("1", "3", "c"), ("3", "4", "d")],
            &["a.b - c.d"],
            2,
        );
        let a = path_algebra(&q, 3).unwrap();
        // 4 vertices + 4 arrows + 1 surviving length-2 path
        assert_eq!(a.dim(), 9);
    }

    #[test]
    fn bad_relations() {
        let q = QuiverPresentation::new(&["1", "2"], &[("1", "2", "a")], &["a.a"], 2);
        assert!(path_algebra(&q, 2).is_err());
        let q = QuiverPresentation::new(&["1", "2"], &[("1", "2", "a")], &["z"], 2);
        assert!(matches!(path_algebra(&q, 2), Err(Error::UnknownLabel(_))));
    }
}
