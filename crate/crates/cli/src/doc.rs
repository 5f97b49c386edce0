//! The `.wdt` document format and the points file format.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use wdtk_core::families::{Domain, Family, SpecializationMap};
use wdtk_core::localfield::{LocalFieldData, RamificationDatum};
use wdtk_core::scalars::{parse_expr, Cyclo, LaurentPoly, Matrix, Scalar};
use wdtk_core::wdrep::WdRep;

pub const FORMAT: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocError(pub String);

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, DocError> {
    Err(DocError(msg.into()))
}

type RawMatrix = Vec<Vec<String>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    format: u32,
    #[serde(rename = "Phi")]
    phi: RawMatrix,
    #[serde(rename = "N_matrix")]
    n_matrix: RawMatrix,
    scalars: RawScalars,
    local_field: RawLocalField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    inertia: Option<RawInertia>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    rho: BTreeMap<String, RawMatrix>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScalars {
    cyclotomic_order: u32,
    #[serde(default)]
    variables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLocalField {
    ell: u64,
    f: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInertia {
    size: usize,
    mul_table: Vec<Vec<usize>>,
    chain: Vec<Vec<usize>>,
    frobenius_perm: Vec<usize>,
}

/// A parsed document: a family over its declared variables (constant when
/// there are none).
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub family: Family,
}

fn parse_matrix(raw: &RawMatrix, what: &str, domain: &Domain) -> Result<Matrix<LaurentPoly>, DocError> {
    let cols = raw.first().map_or(0, Vec::len);
    if raw.iter().any(|r| r.len() != cols) {
        return err(format!("{what}: rows have different lengths"));
    }
    let mut rows = Vec::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        let mut row = Vec::with_capacity(cols);
        for (j, s) in r.iter().enumerate() {
            let v = parse_expr(s, &domain.names, domain.order).map_err(|e| DocError(format!("{what}[{i}][{j}] `{s}`: {e}")))?;
            row.push(v);
        }
        rows.push(row);
    }
    Ok(Matrix::from_fn(raw.len(), cols, |i, j| rows[i][j].clone()))
}

fn render_matrix(m: &Matrix<LaurentPoly>, domain: &Domain) -> Result<RawMatrix, DocError> {
    m.to_rows()
        .iter()
        .map(|r| {
            r.iter()
                .map(|e| e.to_expr(&domain.names, domain.order).map_err(|e| DocError(e.to_string())))
                .collect()
        })
        .collect()
}

fn check_datum(inertia: &RawInertia) -> Result<(), DocError> {
    let n = inertia.size;
    if n == 0 {
        return err("inertia.size must be positive");
    }
    if inertia.mul_table.len() != n || inertia.mul_table.iter().any(|r| r.len() != n) {
        return err(format!("inertia.mul_table must be {n} x {n}"));
    }
    if inertia.frobenius_perm.len() != n {
        return err(format!("inertia.frobenius_perm must have {n} entries"));
    }
    let all = inertia
        .mul_table
        .iter()
        .flatten()
        .chain(inertia.chain.iter().flatten())
        .chain(&inertia.frobenius_perm);
    if let Some(bad) = all.copied().find(|&x| x >= n) {
        return err(format!("inertia: element {bad} out of range for a group of size {n}"));
    }
    if inertia.chain.is_empty() {
        return err("inertia.chain must list at least Gamma_0");
    }
    Ok(())
}

impl Document {
    pub fn parse(text: &str) -> Result<Document, DocError> {
        let raw: RawDocument = toml::from_str(text).map_err(|e| DocError(format!("parse error: {}", e.message())))?;
        if raw.format != FORMAT {
            return err(format!("unsupported format {}; expected {FORMAT}", raw.format));
        }
        if raw.scalars.cyclotomic_order == 0 {
            return err("scalars.cyclotomic_order must be positive");
        }
        let names = &raw.scalars.variables;
        for (i, v) in names.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && v != "z";
            if !ok {
                return err(format!("scalars.variables: `{v}` is not a valid variable name"));
            }
            if names[..i].contains(v) {
                return err(format!("scalars.variables: `{v}` declared twice"));
            }
        }
        let domain = Domain::new(names.clone(), raw.scalars.cyclotomic_order);
        let lf = LocalFieldData::new(raw.local_field.ell, raw.local_field.f).map_err(|e| DocError(format!("local_field: {e}")))?;
        let phi = parse_matrix(&raw.phi, "Phi", &domain)?;
        let n = parse_matrix(&raw.n_matrix, "N_matrix", &domain)?;
        let dim = phi.rows();
        if phi.cols() != dim || n.rows() != dim || n.cols() != dim {
            return err(format!("Phi and N_matrix must both be square of one size; got {}x{} and {}x{}", phi.rows(), phi.cols(), n.rows(), n.cols()));
        }
        let (datum, rho) = match &raw.inertia {
            None => {
                if raw.rho.keys().any(|k| k != "0") {
                    return err("rho lists elements but no [inertia] group is declared");
                }
                let r0 = match raw.rho.get("0") {
                    Some(m) => parse_matrix(m, "rho.0", &domain)?,
                    None => Matrix::identity(dim),
                };
                (RamificationDatum::trivial(), vec![r0])
            }
            Some(inertia) => {
                check_datum(inertia)?;
                let mut rho = Vec::with_capacity(inertia.size);
                for g in 0..inertia.size {
                    let key = g.to_string();
                    let m = match raw.rho.get(&key) {
                        Some(m) => parse_matrix(m, &format!("rho.{g}"), &domain)?,
                        None if g == 0 => Matrix::identity(dim),
                        None => return err(format!("rho: missing the image of element {g}")),
                    };
                    rho.push(m);
                }
                if let Some(k) = raw.rho.keys().find(|k| k.parse::<usize>().map_or(true, |g| g >= inertia.size)) {
                    return err(format!("rho: `{k}` is not an element of the group"));
                }
                let datum = RamificationDatum::new(inertia.mul_table.clone(), inertia.chain.clone(), inertia.frobenius_perm.clone());
                (datum, rho)
            }
        };
        if let Some(g) = rho.iter().position(|m| m.rows() != dim || m.cols() != dim) {
            return err(format!("rho.{g} must be {dim} x {dim}"));
        }
        let rep = WdRep::new(lf, Arc::new(datum), rho, phi, n);
        Ok(Document {
            family: Family::new(domain, rep),
        })
    }

    pub fn from_family(family: Family) -> Document {
        Document { family }
    }

    pub fn from_rep(w: &WdRep<Cyclo>) -> Document {
        Document::from_family(Family::constant(w))
    }

    pub fn domain(&self) -> &Domain {
        &self.family.domain
    }

    pub fn is_constant(&self) -> bool {
        self.family.domain.names.is_empty()
    }

    /// The representation over Q(zeta_N) when no variables are declared.
    pub fn constant_rep(&self) -> Option<WdRep<Cyclo>> {
        if !self.is_constant() {
            return None;
        }
        self.family.rep.try_map(|p| p.as_constant().ok_or(())).ok()
    }

    pub fn to_toml(&self) -> Result<String, DocError> {
        let rep = &self.family.rep;
        let domain = self.domain();
        let datum = rep.datum();
        let trivial = datum.order() == 1 && datum.chain().len() == 1;
        let mut rho = BTreeMap::new();
        if !trivial {
            for (g, m) in rep.rho().iter().enumerate().skip(1) {
                rho.insert(g.to_string(), render_matrix(m, domain)?);
            }
        }
        let raw = RawDocument {
            format: FORMAT,
            phi: render_matrix(rep.phi(), domain)?,
            n_matrix: render_matrix(rep.n(), domain)?,
            scalars: RawScalars {
                cyclotomic_order: domain.order,
                variables: domain.names.clone(),
            },
            local_field: RawLocalField {
                ell: rep.lf().ell(),
                f: rep.lf().f(),
            },
            inertia: (!trivial).then(|| RawInertia {
                size: datum.order(),
                mul_table: datum.mul_table().to_vec(),
                chain: datum.chain().to_vec(),
                frobenius_perm: datum.frobenius_perm().to_vec(),
            }),
            rho,
        };
        toml::to_string(&raw).map_err(|e| DocError(e.to_string()))
    }
}

/// One-line rendering `[[a, b], [c, d]]` of a matrix in the expression grammar.
pub fn matrix_line(m: &Matrix<LaurentPoly>, domain: &Domain) -> Result<String, DocError> {
    let rows = render_matrix(m, domain)?;
    let rows: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(", "))).collect();
    Ok(format!("[{}]", rows.join(", ")))
}

pub fn cyclo_matrix_line(m: &Matrix<Cyclo>, order: u32) -> Result<String, DocError> {
    matrix_line(&m.map(|c| LaurentPoly::constant(c.clone())), &Domain::new(Vec::new(), order))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoints {
    format: u32,
    #[serde(default)]
    point: Vec<RawPoint>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoint {
    #[serde(default)]
    label: String,
    order: Option<u32>,
    assignment: BTreeMap<String, String>,
}

/// Parses a points file; `default_order` applies to points without `order`.
pub fn parse_points(text: &str, default_order: u32) -> Result<Vec<SpecializationMap>, DocError> {
    let raw: RawPoints = toml::from_str(text).map_err(|e| DocError(format!("parse error: {}", e.message())))?;
    if raw.format != FORMAT {
        return err(format!("unsupported format {}; expected {FORMAT}", raw.format));
    }
    raw.point
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let order = p.order.unwrap_or(default_order);
            if order == 0 {
                return err(format!("point {i}: order must be positive"));
            }
            let mut values = Vec::with_capacity(p.assignment.len());
            for (name, src) in &p.assignment {
                let v = parse_expr(src, &[], order).map_err(|e| DocError(format!("point {i}, {name} = `{src}`: {e}")))?;
                let c = v
                    .as_constant()
                    .ok_or_else(|| DocError(format!("point {i}, {name}: value is not a constant")))?;
                values.push((name.clone(), c));
            }
            Ok(SpecializationMap::new(p.label.clone(), values))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const SP2: &str = r#"
format = 1
Phi = [["1", "0"], ["0", "1/3"]]
N_matrix = [["0", "0"], ["1", "0"]]

[scalars]
cyclotomic_order = 1

[local_field]
ell = 3
f = 1
"#;

    #[test]
    fn parses_and_round_trips() {
        let doc = Document::parse(SP2).unwrap();
        assert!(doc.is_constant());
        let w = doc.constant_rep().unwrap();
        assert_eq!(w.phi().get(1, 1), &Cyclo::rational(wdtk_core::scalars::rat(1, 3)));
        let again = Document::parse(&doc.to_toml().unwrap()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(Document::parse(&SP2.replace("format = 1", "format = 2")).is_err());
        assert!(Document::parse(&SP2.replace("\"1/3\"", "\"y\"")).is_err());
        assert!(Document::parse(&SP2.replace("[\"1\", \"0\"]]", "[\"1\"]]")).is_err());
        assert!(Document::parse(&SP2.replace("ell = 3", "ell = 4")).is_err());
        assert!(Document::parse(&format!("{SP2}\n[rho]\n\"1\" = [[\"1\"]]\n")).is_err());
    }

    #[test]
    fn family_documents_keep_variables() {
        let text = SP2.replace("\"1\", \"0\"], [\"0\", \"1/3\"", "\"x\", \"0\"], [\"0\", \"x/3\"").replace("cyclotomic_order = 1", "cyclotomic_order = 1\nvariables = [\"x\"]");
        let doc = Document::parse(&text).unwrap();
        assert!(!doc.is_constant() && doc.constant_rep().is_none());
        assert_eq!(Document::parse(&doc.to_toml().unwrap()).unwrap(), doc);
    }

    #[test]
    fn points_parse() {
        let pts = parse_points("format = 1\n[[point]]\nlabel = \"a\"\norder = 3\nassignment = { x = \"z\" }\n", 1).unwrap();
        assert_eq!(pts[0].assignment["x"], Cyclo::zeta(3));
        assert!(parse_points("format = 1\n[[point]]\nassignment = { x = \"y\" }\n", 1).is_err());
    }
}
