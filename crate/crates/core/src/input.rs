//! TOML input documents. Every section is optional and every field inside a
//! section is optional, so command-line flags can fill or override them;
//! `resolve_*` turns a section into validated library input.
//!
//! ```toml
//! [germ]
//! type = "E6"                  # or: polynomial = "y^2 - x^3"
//!
//! [covering]
//! degree = 3
//! d = 6
//! nodes = { s = 0, p = 0 }
//! cusps = { s = 0, p = 6 }
//! higher = { A3 = 1, E6 = 2 }
//!
//! [pair]
//! d_bar = 3
//! g1 = 4
//! n1 = 3
//! n2 = 3
//! delta0 = 0
//! nu_prime = 0
//! shared_invariants = true
//! nodes = { ss = 0, sp = 0, ps = 0, pp = 0 }
//! cusps = { ss = 0, sp = 0, ps = 0, pp = 6 }
//!
//! [mcanonical]
//! m = 3
//! k = 1
//! e = 41
//!
//! [monodromy]
//! degree = 6
//! cap = 8
//! ```

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chisini::{PairClassification, PairCounts};
use crate::invariants::{CoveringProfile, InvariantError, SingularityProfile};
use crate::resolution::{rational_germ, AdeType, CurveGerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("cannot parse input: {0}")]
    Syntax(String),
    #[error("missing section [{0}]")]
    MissingSection(&'static str),
    #[error("missing field {section}.{field}")]
    MissingField {
        section: &'static str,
        field: &'static str,
    },
    #[error("invalid value for {field}: {msg}")]
    Invalid { field: String, msg: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub germ: Option<GermInput>,
    pub covering: Option<CoveringInput>,
    pub pair: Option<PairInput>,
    pub mcanonical: Option<MCanonicalInput>,
    pub monodromy: Option<MonodromyInput>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GermInput {
    #[serde(rename = "type")]
    pub ade_type: Option<String>,
    pub polynomial: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitCounts {
    #[serde(default)]
    pub s: u64,
    #[serde(default)]
    pub p: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoveringInput {
    pub degree: Option<u64>,
    pub d: Option<u64>,
    pub nodes: Option<SplitCounts>,
    pub cusps: Option<SplitCounts>,
    pub higher: Option<BTreeMap<String, u64>>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourWay {
    #[serde(default)]
    pub ss: u64,
    #[serde(default)]
    pub sp: u64,
    #[serde(default)]
    pub ps: u64,
    #[serde(default)]
    pub pp: u64,
}

impl FourWay {
    pub fn to_array(self) -> [u64; 4] {
        [self.ss, self.sp, self.ps, self.pp]
    }

    /// Parses `"ss,sp,ps,pp"`.
    pub fn parse(src: &str) -> Result<FourWay, InputError> {
        let parts: Result<Vec<u64>, _> = src.split(',').map(|s| s.trim().parse::<u64>()).collect();
        match parts.as_deref() {
            Ok([ss, sp, ps, pp]) => Ok(FourWay {
                ss: *ss,
                sp: *sp,
                ps: *ps,
                pp: *pp,
            }),
            _ => Err(InputError::Invalid {
                field: "four-way counts".into(),
                msg: format!("expected ss,sp,ps,pp, got {src:?}"),
            }),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    pub d_bar: Option<u64>,
    pub g1: Option<i64>,
    pub g2: Option<i64>,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub delta0: Option<u64>,
    pub nu_prime: Option<u64>,
    pub shared_invariants: Option<bool>,
    pub nodes: Option<FourWay>,
    pub cusps: Option<FourWay>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MCanonicalInput {
    pub m: Option<u64>,
    pub k: Option<u64>,
    pub e: Option<i64>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonodromyInput {
    pub degree: Option<usize>,
    pub cap: Option<usize>,
}

impl InputDocument {
    pub fn parse(src: &str) -> Result<InputDocument, InputError> {
        toml::from_str(src).map_err(|e| InputError::Syntax(e.to_string()))
    }
}

fn need<T>(v: Option<T>, section: &'static str, field: &'static str) -> Result<T, InputError> {
    v.ok_or(InputError::MissingField { section, field })
}

pub fn parse_ade(src: &str) -> Result<AdeType, InputError> {
    src.parse::<AdeType>().map_err(|e| InputError::Invalid {
        field: "type".into(),
        msg: e.to_string(),
    })
}

/// A germ given by type uses the rational normal form of that type.
pub fn resolve_germ(g: &GermInput) -> Result<(CurveGerm, Option<AdeType>), InputError> {
    match (&g.ade_type, &g.polynomial) {
        (Some(_), Some(_)) => Err(InputError::Invalid {
            field: "germ".into(),
            msg: "give either type or polynomial, not both".into(),
        }),
        (Some(t), None) => {
            let t = parse_ade(t)?;
            Ok((rational_germ(t), Some(t)))
        }
        (None, Some(p)) => {
            CurveGerm::parse(p)
                .map(|g| (g, None))
                .map_err(|e| InputError::Invalid {
                    field: "polynomial".into(),
                    msg: e.to_string(),
                })
        }
        (None, None) => Err(InputError::MissingField {
            section: "germ",
            field: "type",
        }),
    }
}

pub fn resolve_covering(
    c: &CoveringInput,
) -> Result<Result<CoveringProfile, InvariantError>, InputError> {
    let degree = need(c.degree, "covering", "degree")?;
    let d = need(c.d, "covering", "d")?;
    let nodes = c.nodes.clone().unwrap_or_default();
    let cusps = c.cusps.clone().unwrap_or_default();
    let mut higher = SingularityProfile::new();
    for (name, count) in c.higher.iter().flatten() {
        higher.add(parse_ade(name)?, *count);
    }
    Ok(CoveringProfile::new(
        degree,
        d,
        (nodes.s, nodes.p),
        (cusps.s, cusps.p),
        higher,
    ))
}

pub fn resolve_pair(p: &PairInput) -> Result<PairClassification, InputError> {
    Ok(PairClassification {
        counts: PairCounts {
            nodes: p.nodes.unwrap_or_default().to_array(),
            cusps: p.cusps.unwrap_or_default().to_array(),
        },
        delta0: p.delta0.unwrap_or(0),
        nu_prime: p.nu_prime.unwrap_or(0),
        d_bar: need(p.d_bar, "pair", "d_bar")?,
        n1: need(p.n1, "pair", "n1")?,
        n2: need(p.n2, "pair", "n2")?,
        g1: BigInt::from(need(p.g1, "pair", "g1")?),
        g2: p.g2.map(BigInt::from),
        shared_invariants: p.shared_invariants.unwrap_or(false),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_document() {
        let doc = InputDocument::parse(
            r#"
            [germ]
            type = "E6"
            [covering]
            degree = 3
            d = 6
            cusps = { p = 6 }
            higher = { A3 = 1 }
            [pair]
            d_bar = 3
            g1 = 4
            n1 = 3
            n2 = 3
            cusps = { pp = 6 }
            [mcanonical]
            m = 3
            k = 1
            "#,
        )
        .unwrap();
        let (_, t) = resolve_germ(doc.germ.as_ref().unwrap()).unwrap();
        assert_eq!(t, Some(AdeType::e(6)));
        let prof = resolve_covering(doc.covering.as_ref().unwrap())
            .unwrap()
            .unwrap();
        assert_eq!(prof.cusp_split(), (0, 6));
        assert_eq!(prof.higher().count(AdeType::a(3)), 1);
        let pair = resolve_pair(doc.pair.as_ref().unwrap()).unwrap();
        assert_eq!(pair.counts.cusps, [0, 0, 0, 6]);
        assert_eq!(doc.mcanonical.unwrap().e, None);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(InputDocument::parse("[germ]\nkind = \"A2\"\n").is_err());
        assert!(InputDocument::parse("[other]\nx = 1\n").is_err());
        assert!(InputDocument::parse("[covering]\nnodes = { q = 1 }\n").is_err());
    }

    #[test]
    fn missing_fields_reported() {
        let c = CoveringInput {
            degree: Some(3),
            ..Default::default()
        };
        assert_eq!(
            resolve_covering(&c).unwrap_err(),
            InputError::MissingField {
                section: "covering",
                field: "d"
            }
        );
        assert!(resolve_germ(&GermInput::default()).is_err());
    }

    #[test]
    fn four_way_flag() {
        assert_eq!(FourWay::parse("1, 2,3,4").unwrap().to_array(), [1, 2, 3, 4]);
        assert!(FourWay::parse("1,2,3").is_err());
    }
}
