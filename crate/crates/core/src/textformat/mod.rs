//! Line-oriented input documents.
//!
//! ```text
//! field Q                      (or `field F 7`)
//! vertex 1
//! arrow x : 1 -> 1
//! potential
//!   1/3 * x x x
//! deformation
//!   phi x = 2 * x - 1 * e(1)
//! relations
//!   1 * x x
//! ```
//!
//! Paths are written right to left (`b a` applies `a` first), `e(v)` is the
//! trivial path at `v`, and every term carries an explicit `coeff *` unless
//! the coefficient is 1. Block contents are indented. `#` starts a comment.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar};
use crate::pbwengine::Deformation;
use crate::potentials::Potential;
use crate::quiverpath::{valid_id, Element, Path, Quiver};
use crate::vacualgebra::RelationSet;
use crate::zoo::ExampleInstance;

/// A parsed input document.
#[derive(Clone, Debug, PartialEq)]
pub struct InputDocument {
    pub field: FieldSpec,
    pub quiver: Quiver,
    pub potential: Option<Potential>,
    /// `φ(r_a)` for the arrows listed; unlisted arrows have `φ = 0`.
    pub deformation: Option<BTreeMap<usize, Element>>,
    pub relations: Option<Vec<Element>>,
}

impl InputDocument {
    pub fn new(field: FieldSpec, quiver: Quiver) -> Self {
        InputDocument {
            field,
            quiver,
            potential: None,
            deformation: None,
            relations: None,
        }
    }

    /// The instance's potential when it has one, its relations otherwise.
    pub fn from_instance(inst: &ExampleInstance) -> Self {
        let mut doc = InputDocument::new(inst.field(), inst.quiver.clone());
        match &inst.potential {
            Some(w) => doc.potential = Some(w.clone()),
            None => doc.relations = Some(inst.relations.relations().to_vec()),
        }
        doc
    }

    pub fn with_deformation(mut self, d: &Deformation) -> Self {
        self.deformation = Some(
            d.phi()
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(a, x)| (a, x.clone()))
                .collect(),
        );
        self
    }

    /// Degree of the top part of the potential.
    fn top_degree(&self) -> Result<usize> {
        let w = self.potential.as_ref().ok_or_else(|| Error::Invalid("document has no potential".into()))?;
        w.max_degree()
            .filter(|&d| d >= 2)
            .ok_or_else(|| Error::Invalid("potential must have degree at least 2".into()))
    }

    /// The homogeneous relations: the relations block when present, else the
    /// derivatives of the top-degree part of the potential.
    pub fn base_relations(&self) -> Result<RelationSet> {
        if let Some(rels) = &self.relations {
            let degree = rels
                .iter()
                .find_map(|r| r.max_degree())
                .ok_or_else(|| Error::Invalid("relations are all zero".into()))?;
            return RelationSet::new(&self.quiver, self.field, degree, rels.clone());
        }
        let w = self.potential.as_ref().ok_or_else(|| {
            Error::Invalid("document needs a potential or a relations block".into())
        })?;
        RelationSet::from_potential(&self.quiver, &w.homogeneous_part(self.top_degree()?))
    }

    /// Homogeneous potential, rejecting lower-degree terms.
    pub fn homogeneous_potential(&self) -> Result<Option<Potential>> {
        match &self.potential {
            None => Ok(None),
            Some(w) => {
                if w.homogeneous_degree().is_none() {
                    return Err(Error::Inhomogeneous("potential has terms of several degrees".into()));
                }
                Ok(Some(w.clone()))
            }
        }
    }

    /// Terms of the potential below the top degree.
    pub fn lower_potential(&self) -> Result<Potential> {
        let top = self.top_degree()?;
        Ok(self.potential.as_ref().expect("checked").lower_part(top))
    }

    pub fn deformation(&self) -> Result<Deformation> {
        let map = self
            .deformation
            .as_ref()
            .ok_or_else(|| Error::Invalid("document has no deformation block".into()))?;
        let base = self.base_relations()?;
        let phi = (0..self.quiver.arrow_count())
            .map(|a| map.get(&a).cloned().unwrap_or_else(|| Element::zero(self.field)))
            .collect();
        Deformation::new(&base, phi)
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut col = offset;
    let mut byte_start = 0;
    for (byte, ch) in text.char_indices() {
        col += 1;
        if ch.is_whitespace() {
            if let Some(c) = start.take() {
                out.push((c, &text[byte_start..byte]));
            }
        } else if start.is_none() {
            start = Some(col);
            byte_start = byte;
        }
    }
    if let Some(c) = start {
        out.push((c, &text[byte_start..]));
    }
    out
}

fn parse_path(q: &Quiver, toks: &[(usize, &str)], line: usize) -> Result<Path> {
    let column = toks.first().map_or(1, |t| t.0);
    if toks.is_empty() {
        return Err(err(line, column, "missing path"));
    }
    for &(c, t) in toks {
        if !t.starts_with("e(") && q.arrow_by_name(t).is_err() {
            return Err(err(line, c, format!("unknown arrow `{t}`")));
        }
    }
    let text: Vec<&str> = toks.iter().map(|t| t.1).collect();
    q.path(&text.join(" ")).map_err(|e| err(line, column, e.to_string()))
}

/// Terms `(coefficient, path, column)` of an element on one line.
fn parse_terms(
    q: &Quiver,
    field: FieldSpec,
    toks: &[(usize, &str)],
    line: usize,
) -> Result<Vec<(Scalar, Path, usize)>> {
    if toks.len() == 1 && toks[0].1 == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut sign = field.one();
    let parse_scalar = |c: usize, t: &str| field.parse_scalar(t).map_err(|e| err(line, c, e.to_string()));
    while i < toks.len() {
        let end = (i..toks.len()).find(|&j| j > i && matches!(toks[j].1, "+" | "-")).unwrap_or(toks.len());
        let term = &toks[i..end];
        let column = term[0].0;
        let (coeff, path_toks) = if term.len() >= 2 && term[1].1 == "*" {
            (parse_scalar(term[0].0, term[0].1)?, &term[2..])
        } else if term[0].1 == "-" && term.len() >= 3 && term[2].1 == "*" && i == 0 {
            (-&parse_scalar(term[1].0, term[1].1)?, &term[3..])
        } else {
            (field.one(), term)
        };
        if path_toks.is_empty() {
            return Err(err(line, column, "term has no path"));
        }
        out.push((&sign * &coeff, parse_path(q, path_toks, line)?, column));
        if end < toks.len() {
            sign = if toks[end].1 == "-" { -field.one() } else { field.one() };
            if end + 1 == toks.len() {
                return Err(err(line, toks[end].0, "dangling sign"));
            }
        }
        i = end + 1;
    }
    Ok(out)
}

/// Parses one element such as `2 * y x - 1/3 * e(v)`.
pub fn parse_element(q: &Quiver, field: FieldSpec, text: &str) -> Result<Element> {
    let toks = tokens(text, 0);
    let mut x = Element::zero(field);
    for (c, p, _) in parse_terms(q, field, &toks, 1)? {
        x.add_term(p, c);
    }
    Ok(x)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    None,
    Potential,
    Deformation,
    Relations,
}

struct RawLine<'a> {
    number: usize,
    offset: usize,
    text: &'a str,
}

pub fn parse(text: &str) -> Result<InputDocument> {
    let mut field = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    let mut blocks: Vec<(Block, usize, Vec<RawLine>)> = Vec::new();
    let mut current = Block::None;
    for (idx, raw) in text.lines().enumerate() {
        let number = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let indented = content.starts_with(char::is_whitespace);
        if indented {
            if current == Block::None {
                return Err(err(number, 1, "indented line outside a block"));
            }
            blocks.last_mut().expect("open block").2.push(RawLine {
                number,
                offset: 0,
                text: content,
            });
            continue;
        }
        let toks = tokens(content, 0);
        let (col, keyword) = toks[0];
        current = Block::None;
        match keyword {
            "field" => {
                if field.is_some() {
                    return Err(err(number, col, "field declared twice"));
                }
                field = Some(match toks.get(1..).unwrap_or(&[]) {
                    [(_, "Q")] => FieldSpec::Rationals,
                    [(_, "F"), (c, p)] => {
                        let p: u64 = p.parse().map_err(|_| err(number, *c, format!("bad characteristic `{p}`")))?;
                        FieldSpec::prime(p).map_err(|e| err(number, *c, e.to_string()))?
                    }
                    _ => return Err(err(number, col, "expected `field Q` or `field F <prime>`")),
                });
            }
            "vertex" => {
                let [_, (c, id)] = toks[..] else {
                    return Err(err(number, col, "expected `vertex <id>`"));
                };
                if !valid_id(id) {
                    return Err(err(number, c, format!("invalid vertex id `{id}`")));
                }
                if vertices.iter().any(|v| v == id) {
                    return Err(err(number, c, format!("duplicate vertex `{id}`")));
                }
                vertices.push(id.to_string());
            }
            "arrow" => {
                let [_, (c, id), (_, ":"), (cs, src), (_, "->"), (ct, tgt)] = toks[..] else {
                    return Err(err(number, col, "expected `arrow <id> : <source> -> <target>`"));
                };
                if !valid_id(id) || id.starts_with("e(") {
                    return Err(err(number, c, format!("invalid arrow id `{id}`")));
                }
                if arrows.iter().any(|a| a.0 == id) {
                    return Err(err(number, c, format!("duplicate arrow `{id}`")));
                }
                for (cv, v) in [(cs, src), (ct, tgt)] {
                    if !vertices.iter().any(|x| x == v) {
                        return Err(err(number, cv, format!("unknown vertex `{v}`")));
                    }
                }
                arrows.push((id.to_string(), src.to_string(), tgt.to_string()));
            }
            "potential" | "deformation" | "relations" => {
                if toks.len() > 1 {
                    return Err(err(number, toks[1].0, format!("unexpected text after `{keyword}`")));
                }
                current = match keyword {
                    "potential" => Block::Potential,
                    "deformation" => Block::Deformation,
                    _ => Block::Relations,
                };
                if blocks.iter().any(|b| b.0 == current) {
                    return Err(err(number, col, format!("`{keyword}` block given twice")));
                }
                blocks.push((current, number, Vec::new()));
            }
            other => return Err(err(number, col, format!("unknown keyword `{other}`"))),
        }
    }
    let field = field.ok_or_else(|| err(1, 1, "missing `field` line"))?;
    let quiver = Quiver::new(&vertices, &arrows).map_err(|e| err(1, 1, e.to_string()))?;
    let mut doc = InputDocument::new(field, quiver);
    for (block, start, lines) in blocks {
        let q = &doc.quiver;
        match block {
            Block::Potential => {
                let mut w = Potential::zero(field);
                for l in &lines {
                    for (c, p, col) in parse_terms(q, field, &tokens(l.text, l.offset), l.number)? {
                        if !p.is_cycle() || p.is_trivial() {
                            return Err(err(l.number, col, format!("term `{}` is not a cycle", p.display(q))));
                        }
                        w.add_cycle(q, c, &p).map_err(|e| err(l.number, col, e.to_string()))?;
                    }
                }
                doc.potential = Some(w);
            }
            Block::Deformation => {
                let mut map = BTreeMap::new();
                for l in &lines {
                    let toks = tokens(l.text, l.offset);
                    let (first_col, first) = toks[0];
                    if first != "phi" || toks.len() < 4 || toks[2].1 != "=" {
                        return Err(err(l.number, first_col, "expected `phi <arrow> = <element>`"));
                    }
                    let (ac, name) = toks[1];
                    let a = q.arrow_by_name(name).map_err(|_| err(l.number, ac, format!("unknown arrow `{name}`")))?;
                    let mut x = Element::zero(field);
                    for (c, p, _) in parse_terms(q, field, &toks[3..], l.number)? {
                        x.add_term(p, c);
                    }
                    if map.insert(a, x).is_some() {
                        return Err(err(l.number, ac, format!("phi({name}) given twice")));
                    }
                }
                doc.deformation = Some(map);
            }
            Block::Relations => {
                let mut rels = Vec::new();
                for l in &lines {
                    let mut x = Element::zero(field);
                    for (c, p, _) in parse_terms(q, field, &tokens(l.text, l.offset), l.number)? {
                        x.add_term(p, c);
                    }
                    rels.push(x);
                }
                if rels.is_empty() {
                    return Err(err(start, 1, "empty relations block"));
                }
                doc.relations = Some(rels);
            }
            Block::None => unreachable!("only blocks are recorded"),
        }
    }
    Ok(doc)
}

/// Canonical text of a document; `parse(&print(d)) == d`.
pub fn print(doc: &InputDocument) -> String {
    let q = &doc.quiver;
    let mut out = format!("field {}\n", doc.field);
    for v in q.vertex_names() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for a in q.arrows() {
        out.push_str(&format!(
            "arrow {} : {} -> {}\n",
            a.name,
            q.vertex_name(a.source),
            q.vertex_name(a.target)
        ));
    }
    if let Some(w) = &doc.potential {
        out.push_str("potential\n");
        for (k, c) in w.terms() {
            let term = Element::term(c.clone(), k.representative().clone());
            out.push_str(&format!("  {}\n", term.display(q)));
        }
    }
    if let Some(map) = &doc.deformation {
        out.push_str("deformation\n");
        for (a, x) in map {
            out.push_str(&format!("  phi {} = {}\n", q.arrow_name(*a), x.display(q)));
        }
    }
    if let Some(rels) = &doc.relations {
        out.push_str("relations\n");
        for r in rels {
            out.push_str(&format!("  {}\n", r.display(q)));
        }
    }
    out
}
