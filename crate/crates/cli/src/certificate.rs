//! JSON form of certificates. Polynomials use the text grammar, elements of
//! F_p are JSON integers and rationals are `num/den` strings; `p = 0` marks
//! the rationals.

use dirichlet_core::certify::{ClauseResult, CertClause, Conclusion, SnCertificate, TamenessCase};
use dirichlet_core::dirichlet::{CongruenceTrace, DirichletCertificate};
use dirichlet_core::field::{Field, PrimeField, Rationals};
use dirichlet_core::poly::Polynomial;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub deg_c1: Option<usize>,
    pub deg_c2: Option<usize>,
    pub deg_h1_0: Option<usize>,
    pub deg_h2_0: Option<usize>,
    pub deg_c_bar: Option<usize>,
    pub deg_s: usize,
    pub candidates_tried: u64,
}

impl From<CongruenceTrace> for TraceJson {
    fn from(t: CongruenceTrace) -> Self {
        TraceJson {
            deg_c1: t.deg_c1,
            deg_c2: t.deg_c2,
            deg_h1_0: t.deg_h1_0,
            deg_h2_0: t.deg_h2_0,
            deg_c_bar: t.deg_c_bar,
            deg_s: t.deg_s,
            candidates_tried: t.candidates_tried,
        }
    }
}

impl From<&TraceJson> for CongruenceTrace {
    fn from(t: &TraceJson) -> Self {
        CongruenceTrace {
            deg_c1: t.deg_c1,
            deg_c2: t.deg_c2,
            deg_h1_0: t.deg_h1_0,
            deg_h2_0: t.deg_h2_0,
            deg_c_bar: t.deg_c_bar,
            deg_s: t.deg_s,
            candidates_tried: t.candidates_tried,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub p: u64,
    pub n: usize,
    pub e: usize,
    pub a: String,
    pub b: String,
    pub c: String,
    pub alpha1: Value,
    pub alpha2: Value,
    pub gamma1: Value,
    pub gamma2: Value,
    pub p1: String,
    pub p2: String,
    pub h1: String,
    pub h2: String,
    #[serde(default)]
    pub trace: Option<TraceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseJson {
    pub clause: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tameness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnCertificateJson {
    #[serde(flatten)]
    pub certificate: CertificateJson,
    pub clauses: Vec<ClauseJson>,
    pub conclusion: String,
}

/// A certificate over either supported field.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyCertificate {
    Prime(DirichletCertificate<PrimeField>),
    Rational(DirichletCertificate<Rationals>),
}

fn element_json<K: Field>(k: &K, x: &K::Elem) -> Value {
    let s = k.element_to_string(x);
    match s.parse::<u64>() {
        Ok(v) if k.characteristic() > 0 => Value::from(v),
        _ => Value::String(s),
    }
}

fn element_from_json<K: Field>(k: &K, v: &Value, name: &str) -> Result<K::Elem, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(CliError::Parse(format!("{name}: expected a number or string"))),
    };
    k.parse_element(&text).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

fn poly_from_json<K: Field>(k: &K, s: &str, name: &str) -> Result<Polynomial<K>, CliError> {
    Polynomial::parse(k.clone(), s).map_err(|e| CliError::Parse(format!("{name}: {e}")))
}

pub fn encode<K: Field>(cert: &DirichletCertificate<K>) -> CertificateJson {
    let k = cert.field();
    CertificateJson {
        p: k.characteristic(),
        n: cert.n,
        e: cert.e,
        a: cert.a.to_string(),
        b: cert.b.to_string(),
        c: cert.c.to_string(),
        alpha1: element_json(k, &cert.alpha1),
        alpha2: element_json(k, &cert.alpha2),
        gamma1: element_json(k, &cert.gamma1),
        gamma2: element_json(k, &cert.gamma2),
        p1: cert.p1.to_string(),
        p2: cert.p2.to_string(),
        h1: cert.h1.to_string(),
        h2: cert.h2.to_string(),
        trace: cert.trace.map(TraceJson::from),
    }
}

fn decode_in<K: Field>(k: K, j: &CertificateJson) -> Result<DirichletCertificate<K>, CliError> {
    Ok(DirichletCertificate {
        a: poly_from_json(&k, &j.a, "a")?,
        b: poly_from_json(&k, &j.b, "b")?,
        c: poly_from_json(&k, &j.c, "c")?,
        n: j.n,
        e: j.e,
        alpha1: element_from_json(&k, &j.alpha1, "alpha1")?,
        alpha2: element_from_json(&k, &j.alpha2, "alpha2")?,
        gamma1: element_from_json(&k, &j.gamma1, "gamma1")?,
        gamma2: element_from_json(&k, &j.gamma2, "gamma2")?,
        p1: poly_from_json(&k, &j.p1, "p1")?,
        p2: poly_from_json(&k, &j.p2, "p2")?,
        h1: poly_from_json(&k, &j.h1, "h1")?,
        h2: poly_from_json(&k, &j.h2, "h2")?,
        trace: j.trace.as_ref().map(CongruenceTrace::from),
    })
}

pub fn decode(j: &CertificateJson) -> Result<AnyCertificate, CliError> {
    if j.p == 0 {
        return decode_in(Rationals, j).map(AnyCertificate::Rational);
    }
    let k = PrimeField::new(j.p).map_err(|e| CliError::Parse(format!("p: {e}")))?;
    decode_in(k, j).map(AnyCertificate::Prime)
}

pub fn encode_sn<K: Field>(sn: &SnCertificate<K>) -> SnCertificateJson {
    let clauses = sn
        .clauses
        .iter()
        .map(|c| ClauseJson {
            clause: c.clause.name().to_string(),
            passed: c.passed(),
            failure: c.failure.clone(),
            tameness: c.tameness.map(|t| t.name().to_string()),
        })
        .collect();
    SnCertificateJson { certificate: encode(&sn.certificate), clauses, conclusion: sn.conclusion.to_string() }
}

/// Recorded clauses and conclusion of an SnCertificate file.
pub fn decode_verdict(j: &SnCertificateJson) -> Result<(Vec<ClauseResult>, Conclusion), CliError> {
    let clauses = j
        .clauses
        .iter()
        .map(|c| {
            let clause =
                CertClause::from_name(&c.clause).ok_or_else(|| CliError::Parse(format!("unknown clause `{}`", c.clause)))?;
            let tameness = match &c.tameness {
                Some(t) => Some(TamenessCase::from_name(t).ok_or_else(|| CliError::Parse(format!("unknown tameness case `{t}`")))?),
                None => None,
            };
            if c.passed != c.failure.is_none() {
                return Err(CliError::Parse(format!("clause `{}`: passed disagrees with failure", c.clause)));
            }
            Ok(ClauseResult { clause, failure: c.failure.clone(), tameness })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let conclusion =
        Conclusion::parse(&j.conclusion).ok_or_else(|| CliError::Parse(format!("unknown conclusion `{}`", j.conclusion)))?;
    Ok((clauses, conclusion))
}

pub fn to_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Reads either a plain certificate or an SnCertificate (whose extra fields
/// are ignored).
pub fn parse_certificate(text: &str) -> Result<AnyCertificate, CliError> {
    let j: CertificateJson = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    decode(&j)
}

pub fn parse_sn_certificate(text: &str) -> Result<(AnyCertificate, Vec<ClauseResult>, Conclusion), CliError> {
    let j: SnCertificateJson = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let (clauses, conclusion) = decode_verdict(&j)?;
    Ok((decode(&j.certificate)?, clauses, conclusion))
}
