//! Machine-readable classification report.

use serde::Serialize;

use crate::brauer::ker_b;
use crate::lie_data::CartanType;
use crate::number_field::NumberFieldProfile;
use crate::solitude::{ker_g_count, solitude_verdict, CspPolicy, Outcome, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Branches {
    pub if_csp_holds: String,
    pub if_csp_fails: String,
}

/// Everything `classify` prints. Field order is fixed, so the JSON rendering
/// is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: u32,
    pub field: String,
    pub fsp: bool,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<Branches>,
    pub witness: Option<String>,
    pub assumptions_used: Vec<String>,
    pub ker_b_count: u128,
    pub ker_g_count: u128,
}

fn witness_text(o: &Outcome) -> Option<String> {
    match o {
        Outcome::NotSolitary { witness } => Some(witness.description.clone()),
        Outcome::CspConditional { if_csp_holds, .. } => witness_text(if_csp_holds),
        _ => None,
    }
}

impl Report {
    pub fn from_verdict(t: CartanType, k: &NumberFieldProfile, v: &Verdict) -> Report {
        let (reason, branches) = match &v.outcome {
            Outcome::OutsideTheorems { reason } => (Some(reason.clone()), None),
            Outcome::CspConditional {
                if_csp_holds,
                if_csp_fails,
                reason,
            } => (
                Some(reason.clone()),
                Some(Branches {
                    if_csp_holds: if_csp_holds.shape(),
                    if_csp_fails: if_csp_fails.shape(),
                }),
            ),
            _ => (None, None),
        };
        Report {
            cartan_type: t.to_string(),
            rank: t.rank(),
            field: k.to_string(),
            fsp: v.fsp,
            outcome: v.outcome.name().to_string(),
            reason,
            branches,
            witness: witness_text(&v.outcome),
            assumptions_used: v.assumptions_used.clone(),
            ker_b_count: ker_b(t, k).total_count,
            ker_g_count: ker_g_count(t, k),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} over {}\n", self.cartan_type, self.field);
        out += &format!("fsp: {}\n", self.fsp);
        out += &format!("outcome: {}\n", self.outcome);
        if let Some(b) = &self.branches {
            out += &format!(
                "  if CSP holds: {}\n  if CSP fails: {}\n",
                b.if_csp_holds, b.if_csp_fails
            );
        }
        if let Some(r) = &self.reason {
            out += &format!("reason: {r}\n");
        }
        if let Some(w) = &self.witness {
            out += &format!("witness: {w}\n");
        }
        out += &format!(
            "ker b: {} elements\nker g: {} elements\n",
            self.ker_b_count, self.ker_g_count
        );
        for a in &self.assumptions_used {
            out += &format!("assumes: {a}\n");
        }
        out
    }
}

pub fn classify(t: CartanType, k: &NumberFieldProfile, policy: CspPolicy) -> Report {
    Report::from_verdict(t, k, &solitude_verdict(t, k, policy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::parse_profile;

    #[test]
    fn json_is_deterministic_and_complete() {
        let t: CartanType = "C2".parse().unwrap();
        let k = parse_profile("deg=2,r1=2,r2=0").unwrap();
        let a = classify(t, &k, CspPolicy::default()).to_json();
        assert_eq!(a, classify(t, &k, CspPolicy::default()).to_json());
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        for key in [
            "type",
            "rank",
            "field",
            "fsp",
            "outcome",
            "witness",
            "assumptions_used",
            "ker_b_count",
            "ker_g_count",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["outcome"], "NotSolitary");
        assert_eq!(v["ker_g_count"], 2);
    }

    #[test]
    fn conditional_reports_both_branches() {
        let r = classify(
            "F4".parse().unwrap(),
            &NumberFieldProfile::rationals(),
            CspPolicy::default(),
        );
        let b = r.branches.unwrap();
        assert_eq!(b.if_csp_holds, "NotSolitary");
        assert_eq!(b.if_csp_fails, "SolitaryOrNotGrothendieckRigid");
    }
}
