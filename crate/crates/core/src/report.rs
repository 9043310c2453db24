//! Stable JSON report shape shared by the CLI and the library consumers.

use serde::Serialize;

use crate::error::Result;
use crate::extension::{degdom, v_ext, ExtVal};
use crate::ratfunc::RatFunc;
use crate::sequences::PMSeq;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CutJson {
    pub bound: String,
    pub side: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LimitsJson {
    pub center: String,
    pub spread: String,
    pub empty: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct QueryJson {
    pub phi: String,
    pub lambda: i64,
    pub gamma: String,
    pub sign: String,
    #[serde(rename = "member_VE")]
    pub member_ve: bool,
    #[serde(rename = "member_ME")]
    pub member_me: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SequenceReport {
    pub sequence: String,
    pub kind: String,
    pub gauge_cut: CutJson,
    pub breadth: String,
    pub pseudo_limits: LimitsJson,
    pub queries: Vec<QueryJson>,
}

pub fn sign_name(s: i8) -> &'static str {
    match s {
        -1 => "negative",
        0 => "zero",
        _ => "positive",
    }
}

/// Builds the report for a sequence and a batch of rational functions.
pub fn sequence_report(seq: &PMSeq, phis: &[RatFunc]) -> Result<SequenceReport> {
    let f = seq.field();
    let cut = seq.gauge_cut();
    let mut queries = Vec::with_capacity(phis.len());
    for phi in phis {
        let q = if phi.is_zero() {
            QueryJson {
                phi: phi.to_string(),
                lambda: 0,
                gamma: "inf".into(),
                sign: "positive".into(),
                member_ve: true,
                member_me: true,
            }
        } else {
            let lambda = degdom(phi, seq)?;
            let ExtVal::Fin(v) = v_ext(phi, seq)? else {
                unreachable!("nonzero function")
            };
            let sign = v.sign(f)?;
            QueryJson {
                phi: phi.to_string(),
                lambda,
                gamma: v.gamma().to_string(),
                sign: sign_name(sign).into(),
                member_ve: sign >= 0,
                member_me: sign > 0,
            }
        };
        queries.push(q);
    }
    let center = seq
        .center()
        .map(|c| c.to_string())
        .unwrap_or_else(|| "?".into());
    Ok(SequenceReport {
        sequence: seq.to_string(),
        kind: seq.kind().to_string(),
        gauge_cut: CutJson {
            bound: cut.point.to_string(),
            side: cut.side.to_string(),
        },
        breadth: seq.breadth_ideal().to_string(),
        pseudo_limits: LimitsJson {
            center,
            spread: seq.breadth_ideal().to_string(),
            empty: seq.center().is_none(),
        },
        queries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_ratfunc, parse_sequence};

    #[test]
    fn report_shape_is_stable() {
        let seq = parse_sequence("pcv(alpha=0, breadth=\">=1\")", None).unwrap();
        let f = seq.field().clone();
        let phi = parse_ratfunc("(X-t)/t", &f).unwrap();
        let rep = sequence_report(&seq, &[phi]).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert!(json.contains("\"member_VE\":false"));
        assert!(json.contains("\"lambda\":1"));
        assert!(json.contains("\"gamma\":\"-1\""));
        assert!(json.contains("\"sign\":\"negative\""));
        // Reports serialize deterministically.
        let again = serde_json::to_string(&sequence_report(&seq, &[]).unwrap()).unwrap();
        let third = serde_json::to_string(&sequence_report(&seq, &[]).unwrap()).unwrap();
        assert_eq!(again, third);
    }
}
