//! Versioned JSON documents for operators and curves.
//!
//! Rationals are written as `"num/den"` strings and every scalar as the pair
//! `a, b` of `a + b t`, `t^2 = d`, with `d` stored in the `session` block.

use serde::{Deserialize, Serialize};

use crate::coeffring::{
    format_rational, parse_rational, CoeffElem, QuadField, RingKind, Scalar, TruncatedLaurent,
    XPolynomial,
};
use crate::error::{Error, Result};
use crate::operator::{DiffOperator, MatrixS};
use crate::spectral::Curve;

pub const FORMAT_VERSION: &str = "1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SessionDoc {
    d: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RingDoc {
    Polynomial,
    Laurent { low: i64, trunc: Option<i64> },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    /// Absent means exact.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    trunc: Option<i64>,
    terms: Vec<(i64, String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    degree: u32,
    matrix: Vec<Vec<EntryDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OperatorDoc {
    #[serde(rename = "format-version")]
    format_version: String,
    session: SessionDoc,
    size: usize,
    ring: RingDoc,
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    #[serde(rename = "format-version")]
    format_version: String,
    session: SessionDoc,
    /// `(z-degree, w-degree, a, b)`.
    monomials: Vec<(u32, u32, String, String)>,
}

fn session_doc(session: Option<&QuadField>) -> SessionDoc {
    SessionDoc {
        d: session.map(|f| format_rational(f.d())),
    }
}

fn encode_scalar(c: &Scalar, session: Option<&QuadField>) -> Result<(String, String)> {
    if !c.is_rational() && c.field() != session {
        return Err(Error::MixedField);
    }
    Ok((format_rational(c.re()), format_rational(c.im())))
}

fn encode_entry(e: &CoeffElem, session: Option<&QuadField>) -> Result<EntryDoc> {
    let mut terms = Vec::new();
    for (exp, c) in e.terms() {
        if c.is_zero() {
            continue;
        }
        if let Some(id) = c.unknowns().next() {
            return Err(Error::UnboundUnknown(*id));
        }
        let (a, b) = encode_scalar(c.constant_part(), session)?;
        terms.push((exp, a, b));
    }
    Ok(EntryDoc {
        trunc: e.trunc(),
        terms,
    })
}

/// Renders `op` as a canonical document. Irrational entries must lie in
/// `session`.
pub fn render(op: &DiffOperator, session: Option<&QuadField>) -> Result<String> {
    let ring = match op.kind() {
        RingKind::Polynomial => RingDoc::Polynomial,
        RingKind::Laurent => RingDoc::Laurent {
            low: op
                .terms()
                .flat_map(|(_, m)| {
                    m.entries()
                        .filter_map(|(_, e)| e.terms().first().map(|t| t.0))
                        .collect::<Vec<_>>()
                })
                .min()
                .unwrap_or(0),
            trunc: op.min_trunc(),
        },
    };
    let mut terms = Vec::new();
    for (degree, m) in op.terms() {
        let matrix = (0..m.size())
            .map(|i| {
                (0..m.size())
                    .map(|j| encode_entry(m.get(i, j), session))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push(TermDoc { degree, matrix });
    }
    let doc = OperatorDoc {
        format_version: FORMAT_VERSION.to_string(),
        session: session_doc(session),
        size: op.size(),
        ring,
        terms,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
}

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn check_version(text: &str) -> Result<()> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_error)?;
    match value.get("format-version").and_then(|v| v.as_str()) {
        Some(FORMAT_VERSION) => Ok(()),
        Some(other) => Err(Error::VersionMismatch(other.to_string())),
        None => Err(Error::VersionMismatch("missing".to_string())),
    }
}

fn decode_session(s: &SessionDoc) -> Result<Option<QuadField>> {
    s.d.as_deref()
        .map(|d| QuadField::new(parse_rational(d)?))
        .transpose()
}

fn decode_scalar(a: &str, b: &str, session: Option<&QuadField>) -> Result<Scalar> {
    let (a, b) = (parse_rational(a)?, parse_rational(b)?);
    if num_traits::Zero::is_zero(&b) {
        return Ok(Scalar::rational(a));
    }
    let field = session.ok_or_else(|| Error::Parse {
        line: 0,
        column: 0,
        message: "irrational entry in a document without session field".into(),
    })?;
    Ok(field.element(a, b))
}

fn decode_entry(e: &EntryDoc, kind: RingKind, session: Option<&QuadField>) -> Result<CoeffElem> {
    let mut scalars = Vec::with_capacity(e.terms.len());
    for (exp, a, b) in &e.terms {
        scalars.push((*exp, decode_scalar(a, b, session)?));
    }
    match kind {
        RingKind::Polynomial => {
            if e.trunc.is_some() {
                return Err(Error::Parse {
                    line: 0,
                    column: 0,
                    message: "polynomial entries are exact and take no trunc".into(),
                });
            }
            let mut terms = Vec::with_capacity(scalars.len());
            for (exp, c) in scalars {
                let exp = u32::try_from(exp).map_err(|_| Error::Parse {
                    line: 0,
                    column: 0,
                    message: format!("negative exponent {exp} in a polynomial entry"),
                })?;
                terms.push((exp, c));
            }
            Ok(CoeffElem::Poly(XPolynomial::from_scalars(terms)))
        }
        RingKind::Laurent => Ok(CoeffElem::Laurent(TruncatedLaurent::from_scalars(
            scalars, e.trunc,
        ))),
    }
}

/// Inverse of [`render`]. Returns the operator and the session field.
pub fn parse(text: &str) -> Result<(DiffOperator, Option<QuadField>)> {
    check_version(text)?;
    let doc: OperatorDoc = serde_json::from_str(text).map_err(parse_error)?;
    let session = decode_session(&doc.session)?;
    let kind = match doc.ring {
        RingDoc::Polynomial => RingKind::Polynomial,
        RingDoc::Laurent { .. } => RingKind::Laurent,
    };
    let mut terms = Vec::new();
    for t in &doc.terms {
        if t.matrix.len() != doc.size || t.matrix.iter().any(|r| r.len() != doc.size) {
            return Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("degree {} matrix is not {}x{}", t.degree, doc.size, doc.size),
            });
        }
        let rows = t
            .matrix
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| decode_entry(e, kind, session.as_ref()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        terms.push((t.degree, MatrixS::from_rows(rows)?));
    }
    let op = if terms.is_empty() {
        DiffOperator::zero(doc.size, kind)
    } else {
        DiffOperator::from_terms(doc.size, kind, terms)?
    };
    Ok((op, session))
}

/// Renders a curve with monomials in ascending `(z-degree, w-degree)` order.
pub fn render_curve(curve: &Curve, session: Option<&QuadField>) -> Result<String> {
    let monomials = curve
        .terms()
        .map(|((a, b), c)| encode_scalar(c, session).map(|(x, y)| (a, b, x, y)))
        .collect::<Result<Vec<_>>>()?;
    let doc = CurveDoc {
        format_version: FORMAT_VERSION.to_string(),
        session: session_doc(session),
        monomials,
    };
    Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n")
}

/// Inverse of [`render_curve`]; the stored scaling is kept.
pub fn parse_curve(text: &str) -> Result<Curve> {
    check_version(text)?;
    let doc: CurveDoc = serde_json::from_str(text).map_err(parse_error)?;
    let session = decode_session(&doc.session)?;
    let monomials = doc
        .monomials
        .iter()
        .map(|(a, b, x, y)| decode_scalar(x, y, session.as_ref()).map(|c| ((*a, *b), c)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve::unnormalized(monomials))
}
