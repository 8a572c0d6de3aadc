//! The JSON input format: a field plus named structure-constant objects.
//!
//! Every scalar is a string in the document's field. Parsing is strict: unknown
//! keys, out-of-range indices, unresolved names and composite moduli are rejected
//! with a JSON-pointer path to the offending value.

use std::collections::BTreeMap;
use std::fmt;

use lts_core::deformation::GradedCochain;
use lts_core::{
    Extension, FieldSpec, LieTripleSystem, Matrix, Multilinear, NonAbelianCocycle, Representation, Scalar, Vector,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum FieldDoc {
    Q,
    Fp { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coeff {
    pub l: usize,
    pub v: String,
}

/// One `(i, j, k)` row of a trilinear table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeffs: Vec<Coeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LtsDoc {
    pub dim: usize,
    #[serde(default)]
    pub bracket: Vec<BracketEntry>,
}

/// Entry `row, col` of the matrix `θ(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaEntry {
    pub i: usize,
    pub j: usize,
    pub row: usize,
    pub col: usize,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepDoc {
    pub lts: String,
    pub dim: usize,
    #[serde(default)]
    pub theta: Vec<ThetaEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoCoeff {
    pub c: usize,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RhoEntry {
    pub x: usize,
    pub a: usize,
    pub b: usize,
    pub coeffs: Vec<RhoCoeff>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub g: String,
    pub h: String,
    #[serde(default)]
    pub omega: Vec<BracketEntry>,
    #[serde(default)]
    pub theta: Vec<ThetaEntry>,
    #[serde(default)]
    pub rho: Vec<RhoEntry>,
}

/// `ĝ` by name, with `i: h → ĝ`, `p: ĝ → g` and an optional section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub hat: String,
    pub i: Vec<Vec<String>>,
    pub p: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub args: Vec<usize>,
    pub out: usize,
    pub v: String,
}

/// A graded cochain on `g ⊕ h`; the block sizes matter for the positive subcomplex and gauge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub degree: usize,
    pub dim_g: usize,
    pub dim_h: usize,
    #[serde(default)]
    pub entries: Vec<CochainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub field: FieldDoc,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub lts: BTreeMap<String, LtsDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rep: BTreeMap<String, RepDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycle: BTreeMap<String, CocycleDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extension: BTreeMap<String, ExtensionDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cochains: BTreeMap<String, CochainDoc>,
}

/// A schema or content error, located by a JSON pointer and, for syntax errors, a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocError {
    /// `syntax` for malformed JSON or schema violations, `composite_modulus`, or `invalid` for content errors.
    pub code: &'static str,
    pub path: String,
    pub line: Option<usize>,
    pub message: String,
}

impl DocError {
    fn at(path: impl Into<String>, message: impl fmt::Display) -> Self {
        DocError { code: "invalid", path: path.into(), line: None, message: message.to_string() }
    }
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}, {}: {}", self.path, self.message),
            None => write!(f, "{}: {}", self.path, self.message),
        }
    }
}

impl std::error::Error for DocError {}

type DocResult<T> = Result<T, DocError>;

/// Parses and validates a document, normalizing every scalar to canonical form.
pub fn parse(text: &str) -> DocResult<Document> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let mut doc: Document = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = pointer(&e.path().to_string());
        let inner = e.into_inner();
        DocError { code: "syntax", path, line: Some(inner.line()), message: inner.to_string() }
    })?;
    let field = doc.field_spec()?;
    doc.normalize(field)?;
    doc.validate(field)?;
    Ok(doc)
}

/// Pretty JSON with sorted object names.
pub fn emit(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

fn pointer(serde_path: &str) -> String {
    if serde_path == "." || serde_path.is_empty() {
        return "/".into();
    }
    let mut out = String::new();
    for part in serde_path.split('.') {
        let part = part.replace('[', ".").replace(']', "");
        for piece in part.split('.').filter(|p| !p.is_empty()) {
            out.push('/');
            out.push_str(piece);
        }
    }
    out
}

fn scalar(field: FieldSpec, text: &str, path: &str) -> DocResult<Scalar> {
    field.parse(text).map_err(|e| DocError::at(path, e))
}

fn check_index(value: usize, bound: usize, path: String) -> DocResult<()> {
    if value >= bound {
        return Err(DocError::at(path, format!("index {value} out of range for dimension {bound}")));
    }
    Ok(())
}

impl Document {
    pub fn new(field: FieldSpec) -> Self {
        Document {
            field: match field {
                FieldSpec::Rationals => FieldDoc::Q,
                FieldSpec::Prime(p) => FieldDoc::Fp { p },
            },
            lts: BTreeMap::new(),
            rep: BTreeMap::new(),
            cocycle: BTreeMap::new(),
            extension: BTreeMap::new(),
            matrices: BTreeMap::new(),
            cochains: BTreeMap::new(),
        }
    }

    pub fn field_spec(&self) -> DocResult<FieldSpec> {
        match self.field {
            FieldDoc::Q => Ok(FieldSpec::Rationals),
            FieldDoc::Fp { p } => FieldSpec::prime(p).map_err(|e| {
                let code = if matches!(e, lts_core::Error::NotPrime(_)) { "composite_modulus" } else { "invalid" };
                DocError { code, ..DocError::at("/field/p", e) }
            }),
        }
    }

    fn normalize(&mut self, field: FieldSpec) -> DocResult<()> {
        let norm = |v: &mut String, path: String| -> DocResult<()> {
            *v = scalar(field, v, &path)?.to_string();
            Ok(())
        };
        let norm_matrix = |m: &mut Vec<Vec<String>>, path: &str| -> DocResult<()> {
            for (r, row) in m.iter_mut().enumerate() {
                for (c, v) in row.iter_mut().enumerate() {
                    *v = scalar(field, v, &format!("{path}/{r}/{c}"))?.to_string();
                }
            }
            Ok(())
        };
        let norm_bracket = |entries: &mut Vec<BracketEntry>, path: &str| -> DocResult<()> {
            for (n, e) in entries.iter_mut().enumerate() {
                for (k, c) in e.coeffs.iter_mut().enumerate() {
                    norm(&mut c.v, format!("{path}/{n}/coeffs/{k}/v"))?;
                }
            }
            Ok(())
        };
        let norm_theta = |entries: &mut Vec<ThetaEntry>, path: &str| -> DocResult<()> {
            for (n, e) in entries.iter_mut().enumerate() {
                norm(&mut e.v, format!("{path}/{n}/v"))?;
            }
            Ok(())
        };
        for (name, l) in &mut self.lts {
            norm_bracket(&mut l.bracket, &format!("/lts/{name}/bracket"))?;
        }
        for (name, r) in &mut self.rep {
            norm_theta(&mut r.theta, &format!("/rep/{name}/theta"))?;
        }
        for (name, c) in &mut self.cocycle {
            norm_bracket(&mut c.omega, &format!("/cocycle/{name}/omega"))?;
            norm_theta(&mut c.theta, &format!("/cocycle/{name}/theta"))?;
            for (n, e) in c.rho.iter_mut().enumerate() {
                for (k, co) in e.coeffs.iter_mut().enumerate() {
                    norm(&mut co.v, format!("/cocycle/{name}/rho/{n}/coeffs/{k}/v"))?;
                }
            }
        }
        for (name, e) in &mut self.extension {
            norm_matrix(&mut e.i, &format!("/extension/{name}/i"))?;
            norm_matrix(&mut e.p, &format!("/extension/{name}/p"))?;
            if let Some(s) = &mut e.s {
                norm_matrix(s, &format!("/extension/{name}/s"))?;
            }
        }
        for (name, m) in &mut self.matrices {
            norm_matrix(m, &format!("/matrices/{name}"))?;
        }
        for (name, c) in &mut self.cochains {
            for (n, e) in c.entries.iter_mut().enumerate() {
                norm(&mut e.v, format!("/cochains/{name}/entries/{n}/v"))?;
            }
        }
        Ok(())
    }

    /// Builds every object once so that all references and indices are checked up front.
    fn validate(&self, field: FieldSpec) -> DocResult<()> {
        for name in self.lts.keys() {
            self.lts_named(field, name)?;
        }
        for name in self.rep.keys() {
            self.rep_named(field, name)?;
        }
        for name in self.cocycle.keys() {
            self.cocycle_named(field, name)?;
        }
        for name in self.extension.keys() {
            let e = &self.extension[name];
            let path = format!("/extension/{name}");
            self.lts_ref(&e.hat, &format!("{path}/hat"))?;
            matrix_from(field, &e.i, &format!("{path}/i"))?;
            matrix_from(field, &e.p, &format!("{path}/p"))?;
            if let Some(s) = &e.s {
                matrix_from(field, s, &format!("{path}/s"))?;
            }
        }
        for name in self.matrices.keys() {
            self.matrix_named(field, name)?;
        }
        for name in self.cochains.keys() {
            self.cochain_named(field, name)?;
        }
        Ok(())
    }

    fn lts_ref(&self, name: &str, path: &str) -> DocResult<&LtsDoc> {
        self.lts.get(name).ok_or_else(|| DocError::at(path, format!("no LTS named {name:?}")))
    }

    pub fn lts_named(&self, field: FieldSpec, name: &str) -> DocResult<LieTripleSystem> {
        let path = format!("/lts/{name}");
        let l = self.lts_ref(name, &path)?;
        let table = bracket_table(field, l.dim, l.dim, &l.bracket, &format!("{path}/bracket"))?;
        LieTripleSystem::new(table).map_err(|e| DocError::at(path, e))
    }

    pub fn rep_named(&self, field: FieldSpec, name: &str) -> DocResult<Representation> {
        let path = format!("/rep/{name}");
        let r = self.rep.get(name).ok_or_else(|| DocError::at(&path, format!("no representation named {name:?}")))?;
        self.lts_ref(&r.lts, &format!("{path}/lts"))?;
        let g = self.lts_named(field, &r.lts)?;
        let theta = theta_table(field, g.dim(), r.dim, &r.theta, &format!("{path}/theta"))?;
        Representation::new(g, theta).map_err(|e| DocError::at(path, e))
    }

    pub fn cocycle_named(&self, field: FieldSpec, name: &str) -> DocResult<NonAbelianCocycle> {
        let path = format!("/cocycle/{name}");
        let c = self.cocycle.get(name).ok_or_else(|| DocError::at(&path, format!("no cocycle named {name:?}")))?;
        self.lts_ref(&c.g, &format!("{path}/g"))?;
        self.lts_ref(&c.h, &format!("{path}/h"))?;
        let g = self.lts_named(field, &c.g)?;
        let h = self.lts_named(field, &c.h)?;
        let (m, n) = (g.dim(), h.dim());
        let omega = bracket_table(field, m, n, &c.omega, &format!("{path}/omega"))?;
        let theta = theta_table(field, m, n, &c.theta, &format!("{path}/theta"))?;
        let mut rho = Multilinear::zeros(field, vec![m, n, n], n);
        for (k, e) in c.rho.iter().enumerate() {
            let p = format!("{path}/rho/{k}");
            check_index(e.x, m, format!("{p}/x"))?;
            check_index(e.a, n, format!("{p}/a"))?;
            check_index(e.b, n, format!("{p}/b"))?;
            for (q, co) in e.coeffs.iter().enumerate() {
                check_index(co.c, n, format!("{p}/coeffs/{q}/c"))?;
                let v = scalar(field, &co.v, &format!("{p}/coeffs/{q}/v"))?;
                rho.set(&[e.x, e.a, e.b], co.c, v);
            }
        }
        NonAbelianCocycle::new(g, h, omega, theta, rho).map_err(|e| DocError::at(path, e))
    }

    pub fn extension_named(&self, field: FieldSpec, name: &str, section: Option<&str>) -> DocResult<Extension> {
        let path = format!("/extension/{name}");
        let e = self.extension.get(name).ok_or_else(|| DocError::at(&path, format!("no extension named {name:?}")))?;
        let hat = self.lts_named(field, &e.hat)?;
        let i = matrix_from(field, &e.i, &format!("{path}/i"))?;
        let p = matrix_from(field, &e.p, &format!("{path}/p"))?;
        let s = match section {
            Some(s) => Some(self.matrix_named(field, s)?),
            None => e.s.as_ref().map(|s| matrix_from(field, s, &format!("{path}/s"))).transpose()?,
        };
        Extension::new(hat, i, p, s).map_err(|err| DocError::at(path, err))
    }

    pub fn matrix_named(&self, field: FieldSpec, name: &str) -> DocResult<Matrix> {
        let path = format!("/matrices/{name}");
        let m = self.matrices.get(name).ok_or_else(|| DocError::at(&path, format!("no matrix named {name:?}")))?;
        matrix_from(field, m, &path)
    }

    /// The cochain together with `dim g`.
    pub fn cochain_named(&self, field: FieldSpec, name: &str) -> DocResult<(GradedCochain, usize)> {
        let path = format!("/cochains/{name}");
        let c = self.cochains.get(name).ok_or_else(|| DocError::at(&path, format!("no cochain named {name:?}")))?;
        let d = c.dim_g + c.dim_h;
        let arity = 2 * c.degree + 1;
        let mut t = Multilinear::zeros(field, vec![d; arity], d);
        for (k, e) in c.entries.iter().enumerate() {
            let p = format!("{path}/entries/{k}");
            if e.args.len() != arity {
                return Err(DocError::at(format!("{p}/args"), format!("expected {arity} arguments")));
            }
            for (q, &a) in e.args.iter().enumerate() {
                check_index(a, d, format!("{p}/args/{q}"))?;
            }
            check_index(e.out, d, format!("{p}/out"))?;
            t.set(&e.args, e.out, scalar(field, &e.v, &format!("{p}/v"))?);
        }
        let cochain = GradedCochain::new(c.degree, t).map_err(|e| DocError::at(&path, e))?;
        Ok((cochain, c.dim_g))
    }

    pub fn insert_lts(&mut self, name: &str, t: &LieTripleSystem) {
        self.lts.insert(name.into(), LtsDoc { dim: t.dim(), bracket: bracket_entries(t.bracket()) });
    }

    pub fn insert_rep(&mut self, name: &str, lts_name: &str, r: &Representation) {
        self.insert_lts(lts_name, r.lts());
        let doc = RepDoc { lts: lts_name.into(), dim: r.vdim(), theta: theta_entries(r.theta()) };
        self.rep.insert(name.into(), doc);
    }

    /// Stores the cocycle with its `g` and `h` under the given names.
    pub fn insert_cocycle(&mut self, name: &str, g_name: &str, h_name: &str, c: &NonAbelianCocycle) {
        self.insert_lts(g_name, c.g());
        self.insert_lts(h_name, c.h());
        let doc = CocycleDoc {
            g: g_name.into(),
            h: h_name.into(),
            omega: bracket_entries(c.omega()),
            theta: theta_entries(c.theta()),
            rho: c.rho().nonzero_entries().into_iter().fold(Vec::<RhoEntry>::new(), |mut acc, (idx, l, v)| {
                let coeff = RhoCoeff { c: l, v: v.to_string() };
                match acc.last_mut() {
                    Some(last) if [last.x, last.a, last.b] == idx[..] => last.coeffs.push(coeff),
                    _ => acc.push(RhoEntry { x: idx[0], a: idx[1], b: idx[2], coeffs: vec![coeff] }),
                }
                acc
            }),
        };
        self.cocycle.insert(name.into(), doc);
    }

    pub fn insert_extension(&mut self, name: &str, hat_name: &str, e: &Extension) {
        self.insert_lts(hat_name, e.hat());
        let doc = ExtensionDoc {
            hat: hat_name.into(),
            i: matrix_doc(e.i()),
            p: matrix_doc(e.p()),
            s: Some(matrix_doc(e.s())),
        };
        self.extension.insert(name.into(), doc);
    }

    pub fn insert_matrix(&mut self, name: &str, m: &Matrix) {
        self.matrices.insert(name.into(), matrix_doc(m));
    }

    pub fn insert_cochain(&mut self, name: &str, c: &GradedCochain, dim_g: usize) {
        let entries = c
            .table()
            .nonzero_entries()
            .into_iter()
            .map(|(args, out, v)| CochainEntry { args, out, v: v.to_string() })
            .collect();
        let doc = CochainDoc { degree: c.degree(), dim_g, dim_h: c.dim() - dim_g, entries };
        self.cochains.insert(name.into(), doc);
    }
}

fn bracket_table(
    field: FieldSpec,
    m: usize,
    out: usize,
    entries: &[BracketEntry],
    path: &str,
) -> DocResult<Multilinear> {
    let mut t = Multilinear::zeros(field, vec![m; 3], out);
    for (n, e) in entries.iter().enumerate() {
        let p = format!("{path}/{n}");
        check_index(e.i, m, format!("{p}/i"))?;
        check_index(e.j, m, format!("{p}/j"))?;
        check_index(e.k, m, format!("{p}/k"))?;
        for (q, c) in e.coeffs.iter().enumerate() {
            check_index(c.l, out, format!("{p}/coeffs/{q}/l"))?;
            t.set(&[e.i, e.j, e.k], c.l, scalar(field, &c.v, &format!("{p}/coeffs/{q}/v"))?);
        }
    }
    Ok(t)
}

fn theta_table(field: FieldSpec, m: usize, v: usize, entries: &[ThetaEntry], path: &str) -> DocResult<Multilinear> {
    let mut t = Multilinear::zeros(field, vec![m, m, v], v);
    for (n, e) in entries.iter().enumerate() {
        let p = format!("{path}/{n}");
        check_index(e.i, m, format!("{p}/i"))?;
        check_index(e.j, m, format!("{p}/j"))?;
        check_index(e.row, v, format!("{p}/row"))?;
        check_index(e.col, v, format!("{p}/col"))?;
        t.set(&[e.i, e.j, e.col], e.row, scalar(field, &e.v, &format!("{p}/v"))?);
    }
    Ok(t)
}

fn matrix_from(field: FieldSpec, rows: &[Vec<String>], path: &str) -> DocResult<Matrix> {
    let cols = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || cols == 0 {
        return Err(DocError::at(path, "matrix must have at least one row and one column"));
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for (r, row) in rows.iter().enumerate() {
        if row.len() != cols {
            return Err(DocError::at(format!("{path}/{r}"), format!("row has {} entries, expected {cols}", row.len())));
        }
        for (c, v) in row.iter().enumerate() {
            data.push(scalar(field, v, &format!("{path}/{r}/{c}"))?);
        }
    }
    Matrix::new(field, rows.len(), cols, data).map_err(|e| DocError::at(path, e))
}

pub fn matrix_doc(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect()).collect()
}

pub fn vector_doc(v: &Vector) -> Vec<String> {
    v.0.iter().map(Scalar::to_string).collect()
}

fn bracket_entries(t: &Multilinear) -> Vec<BracketEntry> {
    let mut out: Vec<BracketEntry> = Vec::new();
    for (idx, l, v) in t.nonzero_entries() {
        let coeff = Coeff { l, v: v.to_string() };
        match out.last_mut() {
            Some(last) if [last.i, last.j, last.k] == idx[..] => last.coeffs.push(coeff),
            _ => out.push(BracketEntry { i: idx[0], j: idx[1], k: idx[2], coeffs: vec![coeff] }),
        }
    }
    out
}

fn theta_entries(t: &Multilinear) -> Vec<ThetaEntry> {
    t.nonzero_entries()
        .into_iter()
        .map(|(idx, row, v)| ThetaEntry { i: idx[0], j: idx[1], row, col: idx[2], v: v.to_string() })
        .collect()
}
