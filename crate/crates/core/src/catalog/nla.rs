//! Real structure equations of the 8-dimensional nilpotent Lie algebras
//! with one-dimensional center that admit complex structures.
//!
//! Equations use the tuple shorthand: component `k` lists `d e^k` as a sum
//! of terms `c*ij` meaning `c e^i ∧ e^j`, e.g. `16+27-2*beta*25`.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::linalg::{GaussianRational, Rational};
use crate::model::{Cochains, Cursor, Scope};

use super::CatalogError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    I,
    II,
}

/// One algebra of the list, possibly with parameters.
#[derive(Clone, Copy, Debug)]
pub struct NlaRecord {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub equations: &'static str,
    /// Dimensions of the ascending central series.
    pub ascending: &'static [usize],
    pub family: Family,
    pub constraint: &'static str,
    check: fn(&[Rational]) -> bool,
}

fn bit(p: &[Rational]) -> bool {
    p[0].is_zero() || p[0].is_one()
}

fn any(_: &[Rational]) -> bool {
    true
}

fn g4_ok(p: &[Rational]) -> bool {
    let (a, b) = (&p[0], &p[1]);
    (!a.is_zero() && b.is_positive()) || (a.is_positive() && b.is_zero())
}

fn g11_ok(p: &[Rational]) -> bool {
    let (a, b) = (&p[0], &p[1]);
    (b.is_zero() && (a.is_zero() || a.is_one())) || (b.is_one() && !a.is_negative())
}

pub const NLA_RECORDS: &[NlaRecord] = &[
    NlaRecord {
        name: "g1",
        params: &["gamma"],
        equations: "0,0,0,0,0,13+15+24,14-23+25,16+27+gamma*34",
        ascending: &[1, 3, 8],
        family: Family::I,
        constraint: "gamma in {0,1}",
        check: bit,
    },
    NlaRecord {
        name: "g2",
        params: &["alpha"],
        equations: "0,0,0,0,12,13+15+24,14-23+25,16+27+alpha*34",
        ascending: &[1, 3, 6, 8],
        family: Family::I,
        constraint: "alpha real",
        check: any,
    },
    NlaRecord {
        name: "g3",
        params: &["gamma"],
        equations: "0,0,0,0,12,13+gamma*15+25,15+24+gamma*25,16+27",
        ascending: &[1, 3, 6, 8],
        family: Family::I,
        constraint: "gamma in {0,1}",
        check: bit,
    },
    NlaRecord {
        name: "g4",
        params: &["alpha", "beta"],
        equations: "0,0,0,0,12,15+(alpha+1)*24,(alpha-1)*14-23+(beta-1)*25,16+27+34-2*45",
        ascending: &[1, 3, 6, 8],
        family: Family::I,
        constraint: "alpha != 0 and beta > 0, or alpha > 0 and beta = 0",
        check: g4_ok,
    },
    NlaRecord {
        name: "g5",
        params: &[],
        equations: "0,0,0,0,2*12,14-23,13+24,16+27+35",
        ascending: &[1, 4, 8],
        family: Family::I,
        constraint: "",
        check: any,
    },
    NlaRecord {
        name: "g6",
        params: &[],
        equations: "0,0,0,0,2*12,14+15-23,13+24+25,16+27+35",
        ascending: &[1, 4, 6, 8],
        family: Family::I,
        constraint: "",
        check: any,
    },
    NlaRecord {
        name: "g7",
        params: &[],
        equations: "0,0,0,0,0,15,25,16+27+34",
        ascending: &[1, 5, 8],
        family: Family::I,
        constraint: "",
        check: any,
    },
    NlaRecord {
        name: "g8",
        params: &[],
        equations: "0,0,0,0,12,15,25,16+27+34",
        ascending: &[1, 5, 6, 8],
        family: Family::I,
        constraint: "",
        check: any,
    },
    NlaRecord {
        name: "g9",
        params: &["gamma"],
        equations: "0,0,0,13,23,35,gamma*12-34,16+27+45",
        ascending: &[1, 3, 5, 8],
        family: Family::II,
        constraint: "gamma in {0,1}",
        check: bit,
    },
    NlaRecord {
        name: "g10",
        params: &["gamma"],
        equations: "0,0,0,13,23,14+25,15+24,16+gamma*25+27",
        ascending: &[1, 3, 5, 8],
        family: Family::II,
        constraint: "gamma in {0,1}",
        check: bit,
    },
    NlaRecord {
        name: "g11",
        params: &["alpha", "beta"],
        equations: "0,0,0,13,23,14+25-35,alpha*12+15+24+34,16+27-45-2*beta*25-beta*35",
        ascending: &[1, 3, 5, 8],
        family: Family::II,
        constraint: "(alpha,beta) = (0,0), (1,0), or beta = 1 with alpha >= 0",
        check: g11_ok,
    },
    NlaRecord {
        name: "g12",
        params: &["gamma"],
        equations: "0,0,12,13,23,14+25,15+24,16+27+gamma*25",
        ascending: &[1, 3, 5, 6, 8],
        family: Family::II,
        constraint: "gamma in {0,1}",
        check: bit,
    },
];

pub fn nla_record(name: &str) -> Option<&'static NlaRecord> {
    NLA_RECORDS.iter().find(|r| r.name == name)
}

impl NlaRecord {
    /// The real Chevalley–Eilenberg complex at the given parameter values,
    /// listed in the order of `params`.
    pub fn real_model(&self, values: &[Rational]) -> Result<Cochains, CatalogError> {
        if values.len() != self.params.len() {
            return Err(CatalogError::InvalidTuple(format!("{} takes {} parameters, got {}", self.name, self.params.len(), values.len())));
        }
        if !(self.check)(values) {
            return Err(CatalogError::InvalidTuple(format!("{} requires {}", self.name, self.constraint)));
        }
        let declared: Vec<String> = self.params.iter().map(|s| s.to_string()).collect();
        let bound: BTreeMap<String, Rational> = declared.iter().cloned().zip(values.iter().cloned()).collect();
        let scope = Scope { declared: &declared, bound: &bound };
        let comps: Vec<&str> = self.equations.split(',').collect();
        let m = comps.len();
        let mut dgen = Vec::with_capacity(m);
        for comp in comps {
            let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
            for (c, i, j) in parse_component(comp, m, &scope)? {
                let (lo, hi, c) = if i < j { (i, j, c) } else { (j, i, -c) };
                *acc.entry((1u64 << (lo - 1)) | (1u64 << (hi - 1))).or_insert_with(Rational::zero) += c;
            }
            dgen.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, GaussianRational::from_real(c))).collect());
        }
        let cx = Cochains::new(m, dgen);
        if let Some(k) = cx.non_closed_squares().first() {
            return Err(CatalogError::NotLie(format!("{}: d(d e^{}) != 0", self.name, k + 1)));
        }
        Ok(cx)
    }
}

/// Split a component at top-level signs and read `c*ij` terms.
fn parse_component(s: &str, m: usize, scope: &Scope) -> Result<Vec<(Rational, usize, usize)>, CatalogError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 => {
                if !cur.is_empty() {
                    chunks.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        chunks.push((neg, cur));
    }
    let bad = |msg: String| CatalogError::InvalidTuple(msg);
    chunks
        .into_iter()
        .map(|(neg, chunk)| {
            let (coef, pair) = match chunk.rsplit_once('*') {
                Some((c, p)) => {
                    let mut cur = Cursor::new(c);
                    let v = cur.expr(scope).map_err(|e| bad(format!("in '{chunk}': {e}")))?;
                    if !cur.at_end() {
                        return Err(bad(format!("trailing input in '{chunk}'")));
                    }
                    (v, p)
                }
                None => (Rational::one(), chunk.as_str()),
            };
            let digits: Vec<usize> = pair.chars().filter_map(|c| c.to_digit(10).map(|d| d as usize)).collect();
            if pair.len() != 2 || digits.len() != 2 || digits[0] == digits[1] || digits.iter().any(|&d| d == 0 || d > m) {
                return Err(bad(format!("bad index pair '{pair}'")));
            }
            Ok((if neg { -coef } else { coef }, digits[0], digits[1]))
        })
        .collect()
}
