//! File formats for the command-line front end: the polynomial input
//! document and the result document, both JSON.
//!
//! A polynomial document stores ascending-order coefficients as `[re, im]`
//! pairs next to an explicit degree, which must match the coefficient count.
//! Parsing validates structure and finiteness before any value reaches the
//! numeric code; these entry points are the crate's untrusted-input surface
//! and have fuzz targets under `fuzz/`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::poly::UnivariatePoly;
use crate::recovery::{ApproxGcdResult, CandidateUsed};

/// On-disk polynomial: explicit degree plus ascending `[re, im]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyFile {
    pub degree: usize,
    pub coeffs: Vec<[f64; 2]>,
}

/// Errors produced while reading the JSON documents.
#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("coefficient count {count} does not match degree {degree}")]
    LengthMismatch { degree: usize, count: usize },
    #[error("non-finite coefficient at index {index}")]
    NonFinite { index: usize },
    #[error("field {field} must be finite and non-negative")]
    InvalidField { field: &'static str },
}

impl PolyFile {
    pub fn from_poly(p: &UnivariatePoly) -> Self {
        Self {
            degree: p.nominal_degree(),
            coeffs: p.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
    }

    pub fn to_poly(&self) -> Result<UnivariatePoly, ParseError> {
        if self.coeffs.len() != self.degree + 1 {
            return Err(ParseError::LengthMismatch {
                degree: self.degree,
                count: self.coeffs.len(),
            });
        }
        for (index, pair) in self.coeffs.iter().enumerate() {
            if !(pair[0].is_finite() && pair[1].is_finite()) {
                return Err(ParseError::NonFinite { index });
            }
        }
        Ok(UnivariatePoly::new(
            self.coeffs.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        ))
    }
}

/// Parses and validates a polynomial document.
pub fn parse_poly_file(text: &str) -> Result<UnivariatePoly, ParseError> {
    let file: PolyFile = serde_json::from_str(text)?;
    file.to_poly()
}

pub fn poly_to_json(p: &UnivariatePoly) -> String {
    serde_json::to_string(&PolyFile::from_poly(p)).expect("polynomial serializes")
}

/// Result document written by the `gcd` command.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GcdDocument {
    pub h: PolyFile,
    pub f_tilde: PolyFile,
    pub g_tilde: PolyFile,
    pub a: PolyFile,
    pub b: PolyFile,
    pub perturbation: f64,
    pub iterations: usize,
    pub residual_chosen: f64,
    pub candidate_used: CandidateUsed,
}

impl GcdDocument {
    pub fn from_result(r: &ApproxGcdResult) -> Self {
        Self {
            h: PolyFile::from_poly(&r.h),
            f_tilde: PolyFile::from_poly(&r.f_tilde),
            g_tilde: PolyFile::from_poly(&r.g_tilde),
            a: PolyFile::from_poly(&r.a),
            b: PolyFile::from_poly(&r.b),
            perturbation: r.perturbation,
            iterations: r.iterations,
            residual_chosen: r.residual_chosen,
            candidate_used: r.candidate_used,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    fn validate(&self) -> Result<(), ParseError> {
        for poly in [&self.h, &self.f_tilde, &self.g_tilde, &self.a, &self.b] {
            poly.to_poly()?;
        }
        if !self.perturbation.is_finite() || self.perturbation < 0.0 {
            return Err(ParseError::InvalidField { field: "perturbation" });
        }
        if !self.residual_chosen.is_finite() || self.residual_chosen < 0.0 {
            return Err(ParseError::InvalidField { field: "residual_chosen" });
        }
        Ok(())
    }
}

/// Parses and validates a result document.
pub fn parse_gcd_document(text: &str) -> Result<GcdDocument, ParseError> {
    let doc: GcdDocument = serde_json::from_str(text)?;
    doc.validate()?;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_round_trip() {
        let p = UnivariatePoly::from_pairs(&[(1.5, -2.0), (0.0, 0.25), (3.0, 0.0)]);
        let parsed = parse_poly_file(&poly_to_json(&p)).unwrap();
        assert_eq!(parsed, p);
    }

    #[test]
    fn rejects_length_mismatch() {
        let text = r#"{"degree": 3, "coeffs": [[1.0, 0.0]]}"#;
        match parse_poly_file(text) {
            Err(ParseError::LengthMismatch { degree, count }) => {
                assert_eq!(degree, 3);
                assert_eq!(count, 1);
            }
            other => panic!("expected length mismatch, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        // an exponent beyond the f64 range is rejected at the JSON layer
        let text = r#"{"degree": 0, "coeffs": [[1e999, 0.0]]}"#;
        assert!(matches!(parse_poly_file(text), Err(ParseError::Json(_))));

        // a document assembled in memory is caught by the finiteness check
        let file = PolyFile { degree: 1, coeffs: vec![[1.0, 0.0], [f64::INFINITY, 0.0]] };
        assert!(matches!(file.to_poly(), Err(ParseError::NonFinite { index: 1 })));
    }

    #[test]
    fn rejects_malformed_json() {
        assert!(matches!(parse_poly_file("{"), Err(ParseError::Json(_))));
        assert!(matches!(parse_poly_file(r#"{"degree": "x"}"#), Err(ParseError::Json(_))));
    }

    #[test]
    fn document_round_trip() {
        let p = UnivariatePoly::from_real(&[1.0, 2.0]);
        let doc = GcdDocument {
            h: PolyFile::from_poly(&p),
            f_tilde: PolyFile::from_poly(&p),
            g_tilde: PolyFile::from_poly(&p),
            a: PolyFile::from_poly(&p),
            b: PolyFile::from_poly(&p),
            perturbation: 1.25e-3,
            iterations: 4,
            residual_chosen: 1e-12,
            candidate_used: CandidateUsed::FromB,
        };
        let parsed = parse_gcd_document(&doc.to_json()).unwrap();
        assert_eq!(parsed.perturbation, doc.perturbation);
        assert_eq!(parsed.candidate_used, doc.candidate_used);
        assert_eq!(parsed.h, doc.h);
    }

    #[test]
    fn document_rejects_negative_perturbation() {
        let p = PolyFile { degree: 0, coeffs: vec![[1.0, 0.0]] };
        let doc = GcdDocument {
            h: p.clone(),
            f_tilde: p.clone(),
            g_tilde: p.clone(),
            a: p.clone(),
            b: p,
            perturbation: -1.0,
            iterations: 1,
            residual_chosen: 0.0,
            candidate_used: CandidateUsed::FromA,
        };
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(
            parse_gcd_document(&text),
            Err(ParseError::InvalidField { field: "perturbation" })
        ));
    }
}
