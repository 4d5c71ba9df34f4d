//! JSON wire formats for representations and realization results.
//!
//! A field element is a list of `[exponent, numerator, denominator]` triples
//! meaning the sum of (num/den) * zeta_n^exponent, with zero terms omitted
//! and exponents strictly increasing; the empty list is zero. The conductor
//! is carried by the enclosing object. Integers that fit in an i64 are
//! emitted as JSON numbers, anything larger as decimal strings; both forms
//! are accepted on input.
//!
//! Field order is fixed by the struct declarations, so serialization is
//! canonical: identical values produce byte-identical JSON.

use num::{BigInt, BigRational, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::group::Representation;
use crate::matrix::CycMatrix;
use crate::realify::RealizationResult;

type Triple = (u64, Value, Value);

fn int_to_value(i: &BigInt) -> Value {
    match i.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(i.to_string()),
    }
}

fn value_to_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| Error::ParseError(format!("non-integer coefficient {n}"))),
        Value::String(s) => s
            .parse::<BigInt>()
            .map_err(|e| Error::ParseError(format!("bad integer {s:?}: {e}"))),
        other => Err(Error::ParseError(format!(
            "expected integer or string, got {other}"
        ))),
    }
}

/// Serializes a field element as its triple list.
pub fn cyclotomic_to_wire(c: &Cyclotomic) -> Vec<Triple> {
    c.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .map(|(i, r)| (i as u64, int_to_value(r.numer()), int_to_value(r.denom())))
        .collect()
}

/// Parses a triple list into an element of Q(zeta_n). Exponents must be
/// distinct and below n; values up to n are accepted and reduced into the
/// power basis.
pub fn cyclotomic_from_wire(n: u64, triples: &[Triple]) -> Result<Cyclotomic> {
    let mut poly = vec![BigRational::zero(); n as usize];
    let mut last: Option<u64> = None;
    for (exp, num, den) in triples {
        if *exp >= n {
            return Err(Error::ParseError(format!(
                "exponent {exp} out of range for conductor {n}"
            )));
        }
        if last.is_some_and(|prev| prev >= *exp) {
            return Err(Error::ParseError(
                "exponents must be strictly increasing".into(),
            ));
        }
        last = Some(*exp);
        let num = value_to_int(num)?;
        let den = value_to_int(den)?;
        if den.is_zero() {
            return Err(Error::ParseError("zero denominator".into()));
        }
        poly[*exp as usize] = BigRational::new(num, den);
    }
    Ok(Cyclotomic::from_coeffs(n, poly))
}

/// Matrix wire form; the conductor comes from the parent object.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixWire {
    pub rows: usize,
    pub cols: usize,
    /// Row-major entry list; each entry is a triple list.
    pub entries: Vec<Vec<Triple>>,
}

pub fn matrix_to_wire(m: &CycMatrix) -> MatrixWire {
    MatrixWire {
        rows: m.rows(),
        cols: m.cols(),
        entries: m.entries().iter().map(cyclotomic_to_wire).collect(),
    }
}

pub fn matrix_from_wire(n: u64, w: &MatrixWire) -> Result<CycMatrix> {
    if w.entries.len() != w.rows * w.cols {
        return Err(Error::ParseError(format!(
            "matrix {}x{} carries {} entries",
            w.rows,
            w.cols,
            w.entries.len()
        )));
    }
    let entries = w
        .entries
        .iter()
        .map(|t| cyclotomic_from_wire(n, t))
        .collect::<Result<Vec<_>>>()?;
    CycMatrix::new(n, w.rows, w.cols, entries)
}

/// Representation wire form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationWire {
    pub conductor: u64,
    pub degree: usize,
    pub generators: Vec<MatrixWire>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub closure_cap: Option<usize>,
}

pub fn representation_to_wire(rep: &Representation) -> RepresentationWire {
    RepresentationWire {
        conductor: rep.conductor(),
        degree: rep.degree(),
        generators: rep.generators().iter().map(matrix_to_wire).collect(),
        closure_cap: None,
    }
}

pub fn representation_from_wire(w: &RepresentationWire) -> Result<Representation> {
    if w.conductor == 0 {
        return Err(Error::ParseError("conductor must be positive".into()));
    }
    let generators = w
        .generators
        .iter()
        .map(|m| matrix_from_wire(w.conductor, m))
        .collect::<Result<Vec<_>>>()?;
    Representation::new(w.conductor, w.degree, generators, w.closure_cap)
}

/// Diagnostics wire form; absent stages are omitted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagnosticsWire {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nu2: Option<i8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub mu: Option<Vec<Triple>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub xi: Option<Vec<Triple>>,
    pub xi_attempts: u32,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub norm_strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group_order: Option<usize>,
}

/// Realization result wire form; the conductor comes from the input
/// representation the result belongs to.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RealizationWire {
    #[serde(rename = "Q")]
    pub q: MatrixWire,
    pub generators_real: Vec<MatrixWire>,
    pub diagnostics: DiagnosticsWire,
}

pub fn realization_to_wire(result: &RealizationResult) -> RealizationWire {
    let d = &result.diagnostics;
    RealizationWire {
        q: matrix_to_wire(&result.q),
        generators_real: result.generators_real.iter().map(matrix_to_wire).collect(),
        diagnostics: DiagnosticsWire {
            nu2: d.nu2,
            mu: d.mu.as_ref().map(cyclotomic_to_wire),
            xi: d.xi.as_ref().map(cyclotomic_to_wire),
            xi_attempts: d.xi_attempts,
            norm_strategy: d.norm_solution.as_ref().map(|s| s.strategy.name().into()),
            group_order: d.group_order,
        },
    }
}

/// Extracts Q and the claimed conjugated generators from a result file.
pub fn realization_from_wire(
    conductor: u64,
    w: &RealizationWire,
) -> Result<(CycMatrix, Vec<CycMatrix>)> {
    let q = matrix_from_wire(conductor, &w.q)?;
    let generators = w
        .generators_real
        .iter()
        .map(|m| matrix_from_wire(conductor, m))
        .collect::<Result<Vec<_>>>()?;
    Ok((q, generators))
}

fn syntax_error(e: serde_json::Error) -> Error {
    Error::ParseError(e.to_string())
}

/// Parses a representation from JSON text.
pub fn parse_representation(text: &str) -> Result<Representation> {
    let wire: RepresentationWire = serde_json::from_str(text).map_err(syntax_error)?;
    representation_from_wire(&wire)
}

/// Canonical JSON for a representation.
pub fn representation_to_json(rep: &Representation) -> String {
    let mut s = serde_json::to_string_pretty(&representation_to_wire(rep))
        .expect("serialization cannot fail");
    s.push('\n');
    s
}

/// Parses a realization result from JSON text, in the field of the given
/// conductor.
pub fn parse_realization(text: &str, conductor: u64) -> Result<(CycMatrix, Vec<CycMatrix>)> {
    let wire: RealizationWire = serde_json::from_str(text).map_err(syntax_error)?;
    realization_from_wire(conductor, &wire)
}

/// Canonical JSON for a realization result.
pub fn realization_to_json(result: &RealizationResult) -> String {
    let mut s = serde_json::to_string_pretty(&realization_to_wire(result))
        .expect("serialization cannot fail");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Fixture;
    use crate::realify::realify;

    #[test]
    fn zero_serializes_to_empty_list() {
        assert!(cyclotomic_to_wire(&Cyclotomic::zero(8)).is_empty());
        let back = cyclotomic_from_wire(8, &[]).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn triples_skip_zero_terms_and_ascend() {
        let a = Cyclotomic::zeta_pow(8, 3)
            .checked_add(&Cyclotomic::from_integer(8, 5))
            .unwrap();
        let wire = cyclotomic_to_wire(&a);
        assert_eq!(wire.len(), 2);
        assert_eq!(wire[0].0, 0);
        assert_eq!(wire[1].0, 3);
        assert_eq!(cyclotomic_from_wire(8, &wire).unwrap(), a);
    }

    #[test]
    fn high_exponents_are_reduced_on_input() {
        // zeta5^4 is accepted and reduced into the power basis.
        let wire = vec![(4u64, Value::from(1), Value::from(1))];
        let parsed = cyclotomic_from_wire(5, &wire).unwrap();
        assert_eq!(parsed, Cyclotomic::zeta_pow(5, 4));
    }

    #[test]
    fn big_integers_round_trip_as_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let r = BigRational::new(big.clone(), BigInt::from(7));
        let a = Cyclotomic::from_rational(4, r.clone());
        let wire = cyclotomic_to_wire(&a);
        assert!(matches!(wire[0].1, Value::String(_)));
        let back = cyclotomic_from_wire(4, &wire).unwrap();
        assert_eq!(back.as_rational(), Some(r));
    }

    #[test]
    fn malformed_triples_are_rejected() {
        // Out of range exponent.
        let wire = vec![(9u64, Value::from(1), Value::from(1))];
        assert!(matches!(
            cyclotomic_from_wire(8, &wire),
            Err(Error::ParseError(_))
        ));
        // Duplicate exponent.
        let wire = vec![
            (1u64, Value::from(1), Value::from(1)),
            (1u64, Value::from(2), Value::from(1)),
        ];
        assert!(matches!(
            cyclotomic_from_wire(8, &wire),
            Err(Error::ParseError(_))
        ));
        // Zero denominator.
        let wire = vec![(0u64, Value::from(1), Value::from(0))];
        assert!(matches!(
            cyclotomic_from_wire(8, &wire),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn representation_round_trip() {
        let rep = Fixture::Dihedral(5).build().unwrap();
        let json = representation_to_json(&rep);
        let back = parse_representation(&json).unwrap();
        assert_eq!(back.conductor(), 5);
        assert_eq!(back.degree(), 2);
        assert_eq!(back.generators(), rep.generators());
    }

    #[test]
    fn representation_json_is_deterministic() {
        let rep = Fixture::Dihedral(8).build().unwrap();
        assert_eq!(representation_to_json(&rep), representation_to_json(&rep));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(
            parse_representation("{ not json"),
            Err(Error::ParseError(_))
        ));
        assert!(matches!(
            parse_representation("{\"conductor\": 4}"),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn wrong_entry_count_is_rejected() {
        let text = r#"{
            "conductor": 4, "degree": 2,
            "generators": [{"rows": 2, "cols": 2, "entries": [[[0, 1, 1]]]}]
        }"#;
        assert!(matches!(
            parse_representation(text),
            Err(Error::ParseError(_))
        ));
    }

    #[test]
    fn realization_round_trip() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let result = realify(&rep).unwrap();
        let json = realization_to_json(&result);
        let (q, gens) = parse_realization(&json, 4).unwrap();
        assert_eq!(q, result.q);
        assert_eq!(gens, result.generators_real);
        // Canonical output is byte-stable.
        assert_eq!(json, realization_to_json(&result));
    }

    #[test]
    fn realization_diagnostics_fields() {
        let rep = Fixture::Dihedral(4).build().unwrap();
        let result = realify(&rep).unwrap();
        let wire = realization_to_wire(&result);
        assert_eq!(wire.diagnostics.nu2, Some(1));
        assert_eq!(wire.diagnostics.xi_attempts, 3);
        assert_eq!(
            wire.diagnostics.norm_strategy.as_deref(),
            Some("rational_square")
        );
        assert_eq!(wire.diagnostics.group_order, Some(8));
    }
}
