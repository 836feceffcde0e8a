//! Named models: the two 4-dimensional families, fixed examples, the
//! 8-dimensional real algebras they correspond to, and the expected tables.

mod examples;
mod families;
mod nla;
pub mod tables;

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::linalg::Rational;
use crate::model::{ComplexModel, ModelError, ParseError};

pub use examples::{bigalke_rollenske, cfg_example, dim3_c1neg_example, iwasawa, torus, BigalkeRollenske};
pub use families::{theta, FamilyI, FamilyII, FamilyTuple, FAMILY_II_TEMPLATE, FAMILY_I_TEMPLATE};
pub use nla::{nla_record, Family, NlaRecord, NLA_RECORDS};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("invalid parameters: {0}")]
    InvalidTuple(String),
    #[error("not a Lie algebra: {0}")]
    NotLie(String),
    #[error("unknown catalog entry '{0}'")]
    Unknown(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// One listable entry.
#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
}

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry { name: "torus-N", params: &[], description: "abelian model of dimension N" },
    CatalogEntry { name: "iwasawa", params: &[], description: "Iwasawa manifold, d w3 = w12" },
    CatalogEntry { name: "family-I", params: &["eps", "nu", "a", "b", "delta"], description: "Family I, dimension 4" },
    CatalogEntry { name: "family-II", params: &["eps", "mu", "nu", "a", "b"], description: "Family II, dimension 4" },
    CatalogEntry { name: "bigalke-rollenske-N", params: &[], description: "dimension 4N-2 series with d_N nonzero, N >= 2" },
    CatalogEntry { name: "cfg-6", params: &[], description: "dimension 6, E3 != E4" },
    CatalogEntry { name: "dim3-c1neg", params: &[], description: "dimension 3 model with negative c1" },
];

fn suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

fn get(args: &BTreeMap<String, Rational>, key: &str) -> Result<Rational, CatalogError> {
    args.get(key).cloned().ok_or_else(|| CatalogError::InvalidTuple(format!("missing parameter {key}")))
}

fn small<T: TryFrom<i64>>(args: &BTreeMap<String, Rational>, key: &str) -> Result<T, CatalogError> {
    let v = get(args, key)?;
    v.is_integer()
        .then(|| v.to_integer().to_i64())
        .flatten()
        .and_then(|x| T::try_from(x).ok())
        .ok_or_else(|| CatalogError::InvalidTuple(format!("{key} must be a small integer, got {v}")))
}

/// Parse named family parameters into a tuple.
pub fn family_tuple(name: &str, args: &BTreeMap<String, Rational>) -> Result<FamilyTuple, CatalogError> {
    let t = match name {
        "family-I" => {
            FamilyTuple::I(FamilyI::new(small(args, "eps")?, small(args, "nu")?, get(args, "a")?, get(args, "b")?, small(args, "delta")?))
        }
        "family-II" => {
            FamilyTuple::II(FamilyII::new(small(args, "eps")?, small(args, "mu")?, small(args, "nu")?, get(args, "a")?, get(args, "b")?))
        }
        _ => return Err(CatalogError::Unknown(name.to_string())),
    };
    t.validate()?;
    Ok(t)
}

/// Build a catalog model by name. Family entries read their parameters
/// from `args`; the others ignore it.
pub fn emit(name: &str, args: &BTreeMap<String, Rational>) -> Result<ComplexModel, CatalogError> {
    match name {
        "iwasawa" => Ok(iwasawa()),
        "cfg-6" => Ok(cfg_example()),
        "dim3-c1neg" => Ok(dim3_c1neg_example()),
        "family-I" | "family-II" => family_tuple(name, args)?.model(),
        _ => {
            if let Some(n) = suffix(name, "torus-") {
                torus(n)
            } else if let Some(n) = suffix(name, "bigalke-rollenske-") {
                Ok(bigalke_rollenske(n)?.model)
            } else {
                Err(CatalogError::Unknown(name.to_string()))
            }
        }
    }
}

/// The parametrized model file for a family, if `name` is one.
pub fn template(name: &str) -> Option<&'static str> {
    match name {
        "family-I" => Some(FAMILY_I_TEMPLATE),
        "family-II" => Some(FAMILY_II_TEMPLATE),
        _ => None,
    }
}

/// Small models for cross-checks: tori, fixed examples, the first
/// Bigalke–Rollenske model and every table sample.
pub fn small_models() -> Vec<ComplexModel> {
    let mut out: Vec<ComplexModel> = (1..=3).map(|n| torus(n).expect("tori are valid")).collect();
    out.extend([iwasawa(), dim3_c1neg_example(), cfg_example()]);
    out.push(bigalke_rollenske(2).expect("n = 2 is valid").model);
    for row in tables::table1().into_iter().chain(tables::table2()) {
        for s in row.samples {
            out.push(s.tuple.model().expect("table samples are valid"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn emit_by_name() {
        let args: BTreeMap<String, Rational> =
            [("eps", 0), ("nu", 0), ("a", 1), ("b", 0), ("delta", 1)].iter().map(|(k, v)| (k.to_string(), rat(*v, 1))).collect();
        assert_eq!(emit("family-I", &args).unwrap().dim(), 4);
        assert_eq!(emit("torus-5", &args).unwrap().dim(), 5);
        assert_eq!(emit("bigalke-rollenske-3", &args).unwrap().dim(), 10);
        assert!(matches!(emit("nope", &args), Err(CatalogError::Unknown(_))));
        assert!(emit("family-II", &args).is_err());
        assert!(template("family-II").is_some());
    }
}
