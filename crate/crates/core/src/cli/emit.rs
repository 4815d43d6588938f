//! JSON, TeX and text renderings of the engine's objects.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::algebroid::Tensor;
use crate::cohomology::{Class, DegreeCohomology};
use crate::exactalg::big_json::value as int;
use crate::exactalg::{FinAbGroup, GenTable, GradedPoly, IntMatrix, Monomial, Q};
use crate::thh::ExtElement;

pub const SCHEMA: &str = "fgl-thh/1";

pub fn rational(q: &Q) -> Value {
    if q.denom().is_one() {
        int(q.numer())
    } else {
        json!([int(q.numer()), int(q.denom())])
    }
}

pub fn mono(table: &GenTable, m: &Monomial) -> Value {
    let mut map = Map::new();
    for &(v, e) in m.exponents() {
        map.insert(table.name(v).to_string(), e.into());
    }
    Value::Object(map)
}

pub fn poly(p: &GradedPoly) -> Value {
    let t = p.table();
    let terms: Vec<Value> = p.terms().map(|(m, c)| json!({ "coeff": rational(c), "mono": mono(t, m) })).collect();
    json!({ "terms": terms })
}

pub fn ext(x: &ExtElement) -> Value {
    let t = x.base();
    let a = x.alphabet();
    let mut terms = Vec::new();
    for (s, c) in x.terms() {
        let names: Vec<String> = s.iter().map(|&i| a.symbol(i, false)).collect();
        for (m, q) in c.terms() {
            terms.push(json!({ "coeff": rational(q), "mono": mono(t, m), "ext": names }));
        }
    }
    json!({ "terms": terms })
}

pub fn tensor(x: &Tensor) -> Value {
    let t = x.table();
    let terms: Vec<Value> = x
        .terms()
        .map(|(k, c)| json!({ "coeff": rational(c), "factors": k.iter().map(|m| mono(t, m)).collect::<Vec<_>>() }))
        .collect();
    json!({ "terms": terms })
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn group(g: &FinAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank,
        "invariant_factors": ints(&g.invariant_factors),
        "primary": ints(&g.primary_factors()),
    })
}

fn class(c: &Class) -> Value {
    json!({ "order": int(&c.order), "element": ext(&c.element), "text": c.element.to_text() })
}

pub fn cohomology(h: &DegreeCohomology) -> Value {
    let mut g = group(&h.group);
    g["generators"] = Value::Array(h.classes().map(class).collect());
    g["summands"] = Value::Array(h.primary_classes().iter().map(class).collect());
    let parts: Vec<Value> = h
        .parts
        .iter()
        .map(|p| json!({ "q": p.q, "dimension": p.dimension, "group": group(&p.group) }))
        .collect();
    json!({ "degree": h.degree, "group": g, "parts": parts })
}

pub fn matrix(m: &IntMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows()).map(|i| ints(m.row(i))).collect();
    json!({ "rows": m.row_labels(), "cols": m.col_labels(), "entries": entries })
}

/// `Z/2 + Z/240` as `\mathbb{Z}/2 \oplus \mathbb{Z}/240`.
pub fn group_tex(g: &FinAbGroup) -> String {
    if g.is_zero() {
        return "0".into();
    }
    let mut parts = Vec::new();
    match g.free_rank {
        0 => {}
        1 => parts.push("\\mathbb{Z}".to_string()),
        r => parts.push(format!("\\mathbb{{Z}}^{{{r}}}")),
    }
    parts.extend(g.invariant_factors.iter().map(|d| format!("\\mathbb{{Z}}/{d}")));
    parts.join(" \\oplus ")
}

/// Cyclic summands with their generators.
pub fn classes_text(classes: &[Class], tex: bool) -> String {
    let parts: Vec<String> = classes
        .iter()
        .map(|c| {
            let z = if tex { "\\mathbb{Z}" } else { "Z" };
            let head = if c.order.is_zero() { z.to_string() } else { format!("{z}/{}", c.order) };
            if tex {
                format!("{head}\\{{{}\\}}", c.element.to_tex())
            } else {
                format!("{head}{{{}}}", c.element.to_text())
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(if tex { " \\oplus " } else { " + " })
    }
}

pub fn matrix_text(m: &IntMatrix) -> Vec<String> {
    let mut out = vec![format!("  from [{}]", m.col_labels().join(", ")), format!("  to   [{}]", m.row_labels().join(", "))];
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| format!("{x:>4}")).collect();
        out.push(format!("  ({})", row.join("")));
    }
    out
}

pub fn matrix_tex(m: &IntMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(ToString::to_string).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}

/// A titled block of `lhs = rhs` formulas in the three output styles.
#[derive(Clone, Debug, Default)]
pub struct Formulas {
    pub key: String,
    pub title: String,
    pub rows: Vec<FormulaRow>,
}

#[derive(Clone, Debug)]
pub struct FormulaRow {
    pub lhs: String,
    pub lhs_tex: String,
    pub rhs: String,
    pub rhs_tex: String,
    pub value: Value,
    pub extra: Option<(String, Value)>,
}

impl FormulaRow {
    pub fn poly(lhs: impl Into<String>, lhs_tex: impl Into<String>, p: &GradedPoly) -> Self {
        Self { lhs: lhs.into(), lhs_tex: lhs_tex.into(), rhs: p.to_text(), rhs_tex: p.to_tex(), value: poly(p), extra: None }
    }

    pub fn ext(lhs: impl Into<String>, lhs_tex: impl Into<String>, x: &ExtElement) -> Self {
        Self { lhs: lhs.into(), lhs_tex: lhs_tex.into(), rhs: x.to_text(), rhs_tex: x.to_tex(), value: ext(x), extra: None }
    }

    pub fn tensor(lhs: impl Into<String>, lhs_tex: impl Into<String>, t: &Tensor) -> Self {
        Self {
            lhs: lhs.into(),
            lhs_tex: lhs_tex.into(),
            rhs: t.render_grouped(false),
            rhs_tex: t.render_grouped(true),
            value: tensor(t),
            extra: None,
        }
    }

    pub fn with(mut self, key: &str, v: Value) -> Self {
        self.extra = Some((key.into(), v));
        self
    }

    pub fn text(&self) -> String {
        format!("{} = {}", self.lhs, self.rhs)
    }

    pub fn tex(&self) -> String {
        format!("{} = {}", self.lhs_tex, self.rhs_tex)
    }
}

impl Formulas {
    pub fn new(key: &str, title: &str) -> Self {
        Self { key: key.into(), title: title.into(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: FormulaRow) {
        self.rows.push(row);
    }

    pub fn json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut v = json!({ "lhs": r.lhs, "text": r.text(), "tex": r.tex(), "value": r.value });
                if let Some((k, x)) = &r.extra {
                    v[k] = x.clone();
                }
                v
            })
            .collect();
        json!({ "key": self.key, "title": self.title, "rows": rows })
    }

    pub fn text(&self) -> Vec<String> {
        let mut out = vec![format!("# {}", self.title)];
        out.extend(self.rows.iter().map(FormulaRow::text));
        out
    }

    pub fn tex(&self) -> Vec<String> {
        let mut out = vec![format!("% {}", self.title), "\\begin{align*}".to_string()];
        let n = self.rows.len();
        for (i, r) in self.rows.iter().enumerate() {
            let end = if i + 1 < n { " \\\\" } else { "" };
            out.push(format!("{} &= {}{end}", r.lhs_tex, r.rhs_tex));
        }
        out.push("\\end{align*}".into());
        out
    }
}
