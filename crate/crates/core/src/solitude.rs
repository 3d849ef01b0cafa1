//! Finite splitting principle, `ker g` enumeration and solitude verdicts.
//!
//! An element of `ker g` (a `k`-form of `G` split at every finite place) is
//! modeled by an [`Assignment`]: one inner real form per real place whose
//! `H^2` invariants sum to zero. Complex places carry no choice.
//!
//! [`solitude_verdict`] runs the closed-form decision tree. [`oracle_verdict`]
//! recomputes the outcome from the enumerated assignments and a small table
//! of resolution rules for low-rank twists, and [`cross_validate`] compares
//! the two.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_data::{CartanType, Family};
use crate::number_field::{local_determinacy, LocalDeterminacy, NumberFieldProfile};
use crate::real_forms::{inner_real_forms, RealFormRecord};

/// Largest `r1` accepted by [`enumerate_ker_g`].
pub const MAX_ENUMERATION_R1: u32 = 8;
/// Largest rank accepted by [`cross_validate`].
pub const MAX_CROSSVAL_RANK: u32 = 8;

/// Whether the split `k`-group of type `t` satisfies the finite splitting
/// principle: `k` totally imaginary, or one real place and type `A_{2n+1}`
/// or `C_n`, or type `A_{2n}`.
pub fn finite_splitting_principle(t: CartanType, k: &NumberFieldProfile) -> bool {
    k.r1() == 0 || (k.r1() == 1 && (t.is_a_odd() || t.family() == Family::C)) || t.is_a_even()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CspAssumption {
    AssumeTrue,
    AssumeFalse,
    #[default]
    Unknown,
}

impl CspAssumption {
    pub const ALL: [CspAssumption; 3] = [
        CspAssumption::AssumeTrue,
        CspAssumption::AssumeFalse,
        CspAssumption::Unknown,
    ];
}

impl fmt::Display for CspAssumption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CspAssumption::AssumeTrue => "true",
            CspAssumption::AssumeFalse => "false",
            CspAssumption::Unknown => "unknown",
        })
    }
}

impl std::str::FromStr for CspAssumption {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "true" | "assume_true" => Ok(CspAssumption::AssumeTrue),
            "false" | "assume_false" => Ok(CspAssumption::AssumeFalse),
            "unknown" => Ok(CspAssumption::Unknown),
            other => Err(format!("expected true, false or unknown, got '{other}'")),
        }
    }
}

/// Assumptions about open cases of the congruence subgroup problem.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CspPolicy {
    /// CSP for anisotropic higher-rank `A_1` forms.
    pub serre_conjecture_a1: CspAssumption,
    /// CSP for lattices in `F4(-20)`.
    pub f4_rank_one_csp: CspAssumption,
}

impl CspPolicy {
    /// All nine combinations.
    pub fn all() -> Vec<CspPolicy> {
        CspAssumption::ALL
            .iter()
            .flat_map(|&a| {
                CspAssumption::ALL.iter().map(move |&f| CspPolicy {
                    serre_conjecture_a1: a,
                    f4_rank_one_csp: f,
                })
            })
            .collect()
    }
}

/// One inner real form per real place of `k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Assignment {
    pub forms: Vec<RealFormRecord>,
}

impl Assignment {
    pub fn is_trivial(&self) -> bool {
        self.forms.iter().all(|r| r.is_split)
    }

    /// Coordinatewise sum of the invariants over Z/2.
    pub fn invariant_sum(&self) -> Vec<u8> {
        let width = self.forms.first().map_or(0, |r| r.h2_invariant.len());
        let mut sum = vec![0u8; width];
        for r in &self.forms {
            for (s, b) in sum.iter_mut().zip(&r.h2_invariant) {
                *s ^= b;
            }
        }
        sum
    }

    pub fn is_realizable(&self) -> bool {
        self.invariant_sum().iter().all(|&b| b == 0)
    }

    /// Compact notation such as `[Sp(1,1), Sp(1,1), Sp(4,R)]`.
    pub fn describe(&self) -> String {
        let names: Vec<&str> = self.forms.iter().map(|r| r.name.as_str()).collect();
        format!("[{}]", names.join(", "))
    }
}

/// Lazily enumerates the realizable assignments in lexicographic order of
/// table indices (place 0 most significant), starting with the trivial one.
pub struct KerGIter {
    forms: Vec<RealFormRecord>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for KerGIter {
    type Item = Assignment;

    fn next(&mut self) -> Option<Assignment> {
        while !self.done {
            let candidate = Assignment {
                forms: self.digits.iter().map(|&i| self.forms[i].clone()).collect(),
            };
            // advance the odometer
            let mut pos = self.digits.len();
            loop {
                if pos == 0 {
                    self.done = true;
                    break;
                }
                pos -= 1;
                self.digits[pos] += 1;
                if self.digits[pos] < self.forms.len() {
                    break;
                }
                self.digits[pos] = 0;
            }
            if candidate.is_realizable() {
                return Some(candidate);
            }
        }
        None
    }
}

/// Unbounded lazy version of [`enumerate_ker_g`].
pub fn ker_g_assignments(t: CartanType, k: &NumberFieldProfile) -> KerGIter {
    KerGIter {
        forms: inner_real_forms(t),
        digits: vec![0; k.r1() as usize],
        done: false,
    }
}

/// All elements of the modeled `ker g`, trivial assignment first.
pub fn enumerate_ker_g(t: CartanType, k: &NumberFieldProfile) -> Result<Vec<Assignment>> {
    if k.r1() > MAX_ENUMERATION_R1 {
        return Err(Error::BoundExceeded(format!(
            "enumeration supports at most {MAX_ENUMERATION_R1} real places, field has {}",
            k.r1()
        )));
    }
    Ok(ker_g_assignments(t, k).collect())
}

/// Size of the modeled `ker g`, computed by counting invariant sums place by
/// place (no enumeration, no bound on `r1`). Saturates at `u128::MAX`.
pub fn ker_g_count(t: CartanType, k: &NumberFieldProfile) -> u128 {
    let forms = inner_real_forms(t);
    let width = forms[0].h2_invariant.len();
    let key = |bits: &[u8]| {
        bits.iter()
            .enumerate()
            .fold(0usize, |acc, (i, &b)| acc | (usize::from(b) << i))
    };
    let mut per_class = vec![0u128; 1 << width];
    for r in &forms {
        per_class[key(&r.h2_invariant)] += 1;
    }
    let mut counts = vec![0u128; 1 << width];
    counts[0] = 1;
    for _ in 0..k.r1() {
        let mut next = vec![0u128; 1 << width];
        for (s, &c) in counts.iter().enumerate() {
            for (x, &m) in per_class.iter().enumerate() {
                next[s ^ x] = next[s ^ x].saturating_add(c.saturating_mul(m));
            }
        }
        counts = next;
    }
    counts[0]
}

/// Sum of real ranks over the real places plus `rank(t)` per complex place.
pub fn archimedean_rank(a: &Assignment, t: CartanType, k: &NumberFieldProfile) -> u32 {
    a.forms.iter().map(|r| r.real_rank).sum::<u32>() + k.r2() * t.rank()
}

/// The split form at every real place.
pub fn trivial_assignment(t: CartanType, k: &NumberFieldProfile) -> Assignment {
    let split = inner_real_forms(t)
        .into_iter()
        .find(|r| r.is_split)
        .expect("every table has a split form");
    Assignment {
        forms: vec![split; k.r1() as usize],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A non-split `k`-form which is split at every finite place.
    InnerTwist,
    /// The split group of the same type over an arithmetically equivalent field.
    ArithmeticallyEquivalentField,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub description: String,
    pub assignment: Option<Assignment>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Outcome {
    SolitaryOrNotGrothendieckRigid,
    NotSolitary {
        witness: Witness,
    },
    #[serde(rename = "CSPConditional")]
    CspConditional {
        if_csp_holds: Box<Outcome>,
        if_csp_fails: Box<Outcome>,
        reason: String,
    },
    OutsideTheorems {
        reason: String,
    },
}

impl Outcome {
    pub fn name(&self) -> &'static str {
        match self {
            Outcome::SolitaryOrNotGrothendieckRigid => "SolitaryOrNotGrothendieckRigid",
            Outcome::NotSolitary { .. } => "NotSolitary",
            Outcome::CspConditional { .. } => "CSPConditional",
            Outcome::OutsideTheorems { .. } => "OutsideTheorems",
        }
    }

    /// The outcome with witnesses and reasons stripped, for comparisons.
    pub fn shape(&self) -> String {
        match self {
            Outcome::CspConditional {
                if_csp_holds,
                if_csp_fails,
                ..
            } => {
                format!(
                    "CSPConditional({}, {})",
                    if_csp_holds.shape(),
                    if_csp_fails.shape()
                )
            }
            other => other.name().to_string(),
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::NotSolitary { witness } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub fsp: bool,
    pub assumptions_used: Vec<String>,
}

const ASSUME_CSP: &str =
    "split and isotropic groups of archimedean rank >= 2 have finite congruence kernel";
const ASSUME_ISOTROPIC: &str =
    "inner twists of non-A_1 split groups with prescribed real forms are k-isotropic";
const ASSUME_A1_ANISOTROPIC: &str =
    "nontrivial A_1 twists are quaternion algebra groups, hence k-anisotropic";
const ASSUME_EXTRAPOLATED: &str =
    "B_3/D_4 witness construction extrapolated from the B_n/D_n Spin form swap";
const ASSUME_D_EVEN: &str = "D_2m: only the first Z/2 coordinate of H^2(R, Z(G)) is modeled";

fn determinacy_note(k: &NumberFieldProfile, ld: LocalDeterminacy) -> String {
    use crate::number_field::LdOverride;
    match (k.ld_override(), ld) {
        (LdOverride::Auto, LocalDeterminacy::Yes) => {
            "k is locally determined (degree at most 6)".into()
        }
        (LdOverride::Auto, LocalDeterminacy::No) => {
            format!(
                "k is listed as not locally determined ({})",
                k.label().unwrap_or("?")
            )
        }
        (LdOverride::Auto, LocalDeterminacy::Unknown) => "local determinacy of k is unknown".into(),
        (_, ld) => format!("local determinacy of k taken from the profile: {ld}"),
    }
}

fn field_name(k: &NumberFieldProfile) -> String {
    if k.is_rationals() {
        return "Q".into();
    }
    k.label().map_or_else(|| "k".into(), str::to_string)
}

fn record_named(t: CartanType, name: &str) -> RealFormRecord {
    inner_real_forms(t)
        .into_iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("{t} has no real form {name}"))
}

/// `form` at the listed real places, split at the others.
fn place_forms(
    t: CartanType,
    k: &NumberFieldProfile,
    form: &RealFormRecord,
    places: &[usize],
) -> Assignment {
    let mut a = trivial_assignment(t, k);
    for &i in places {
        a.forms[i] = form.clone();
    }
    a
}

fn where_clause(k: &NumberFieldProfile, places: &[usize]) -> String {
    let r1 = k.r1() as usize;
    match (places.len(), r1) {
        (n, m) if n == m && n == 1 => "at the real place".into(),
        (n, m) if n == m && n == 2 => "at both real places, split at finite places".into(),
        (n, m) if n == m => "at every real place, split at finite places".into(),
        _ => {
            let idx: Vec<String> = places.iter().map(|i| i.to_string()).collect();
            format!(
                "at real place(s) {}, split at the other real places and at finite places",
                idx.join(", ")
            )
        }
    }
}

/// Non-split `k`-form used as the witness for types other than `A_1`, or
/// `None` if the construction does not apply.
fn inner_twist_witness(t: CartanType, k: &NumberFieldProfile) -> Option<(Witness, bool)> {
    let r1 = k.r1() as usize;
    if r1 == 0 {
        return None;
    }
    let n = t.rank();
    let all: Vec<usize> = (0..r1).collect();
    let (form, places, description, extrapolated) = match t.family() {
        Family::B if n >= 5 || (n == 4 && !k.is_rationals()) => {
            let form = record_named(t, &format!("Spin({},{})", n + 4, n - 3));
            (
                form,
                all,
                format!("Spin({},{}) over {}", n - 3, n + 4, field_name(k)),
                false,
            )
        }
        Family::D if n >= 6 || (n == 5 && !k.is_rationals()) => {
            let form = record_named(t, &format!("Spin({},{})", n + 4, n - 4));
            (
                form,
                all,
                format!("Spin({},{}) over {}", n - 4, n + 4, field_name(k)),
                false,
            )
        }
        Family::B if n == 3 && !k.is_rationals() => {
            let form = record_named(t, "Spin(7,0)");
            (
                form,
                vec![0],
                format!("Spin(0,7) {}", where_clause(k, &[0])),
                true,
            )
        }
        Family::D if n == 4 && !k.is_rationals() => {
            let form = record_named(t, "Spin(8,0)");
            (
                form,
                vec![0],
                format!("Spin(0,8) {}", where_clause(k, &[0])),
                true,
            )
        }
        Family::E | Family::F | Family::G => {
            let form = inner_real_forms(t)
                .into_iter()
                .filter(|r| !r.is_split && r.has_zero_invariant())
                .max_by_key(|r| r.real_rank)?;
            if k.is_rationals() && form.real_rank < 2 {
                return None;
            }
            let d = format!("{} {}", form.name, where_clause(k, &[0]));
            (form, vec![0], d, false)
        }
        Family::A | Family::C
            if r1 >= 2 && !(t.is(Family::A, 1)) && (t.is_a_odd() || t.family() == Family::C) =>
        {
            // maximize real rank; among Sp(p,q) that is the largest q, and
            // (p, q) is then unique
            let form = inner_real_forms(t)
                .into_iter()
                .filter(|r| !r.is_split)
                .max_by_key(|r| (r.real_rank, std::cmp::Reverse(r.signature())))?;
            let d = format!("{} {}", form.name, where_clause(k, &[0, 1]));
            (form, vec![0, 1], d, false)
        }
        _ => return None,
    };
    let assignment = place_forms(t, k, &form, &places);
    Some((
        Witness {
            kind: WitnessKind::InnerTwist,
            description,
            assignment: Some(assignment),
        },
        extrapolated,
    ))
}

/// Anisotropic `A_1` twist of archimedean rank >= 2: compact at real places
/// 0 and 1, split elsewhere.
fn a1_anisotropic_witness(t: CartanType, k: &NumberFieldProfile) -> Option<Witness> {
    if !t.is(Family::A, 1) || k.r1() < 2 {
        return None;
    }
    let compact = inner_real_forms(t).into_iter().find(|r| !r.is_split)?;
    let assignment = place_forms(t, k, &compact, &[0, 1]);
    if archimedean_rank(&assignment, t, k) < 2 {
        return None;
    }
    let description = format!("anisotropic {} {}", compact.name, where_clause(k, &[0, 1]));
    Some(Witness {
        kind: WitnessKind::InnerTwist,
        description,
        assignment: Some(assignment),
    })
}

fn field_witness(t: CartanType, k: &NumberFieldProfile) -> Witness {
    Witness {
        kind: WitnessKind::ArithmeticallyEquivalentField,
        description: format!(
            "split {t} over a field arithmetically equivalent to {}",
            field_name(k)
        ),
        assignment: None,
    }
}

/// Which branch of the decision tree fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    SplitLacksCsp,
    NotLocallyDetermined,
    DeterminacyUnknown,
    FiniteSplitting,
    RationalLowRank,
    A1SmallSignature,
    F4OverQ,
    A1Open,
    Converse,
}

fn decision_step(t: CartanType, k: &NumberFieldProfile) -> (Step, LocalDeterminacy) {
    let ld = local_determinacy(k);
    let a1 = t.is(Family::A, 1);
    let step = if a1 && (k.is_rationals() || k.is_imaginary_quadratic()) {
        Step::SplitLacksCsp
    } else if ld == LocalDeterminacy::No {
        Step::NotLocallyDetermined
    } else if ld == LocalDeterminacy::Unknown {
        Step::DeterminacyUnknown
    } else if finite_splitting_principle(t, k) {
        // the A_1 exclusions of the first two cases were caught above
        Step::FiniteSplitting
    } else if k.is_rationals()
        && [
            (Family::B, 3),
            (Family::B, 4),
            (Family::D, 4),
            (Family::D, 5),
            (Family::G, 2),
        ]
        .iter()
        .any(|&(f, r)| t.is(f, r))
    {
        Step::RationalLowRank
    } else if a1 && [(2, 0), (3, 0), (2, 1)].contains(&k.signature()) {
        Step::A1SmallSignature
    } else if t.is(Family::F, 4) && k.is_rationals() {
        Step::F4OverQ
    } else if a1 {
        Step::A1Open
    } else {
        Step::Converse
    };
    (step, ld)
}

fn gate(assumption: CspAssumption, holds: Outcome, fails: Outcome, reason: &str) -> Outcome {
    match assumption {
        CspAssumption::AssumeTrue => holds,
        CspAssumption::AssumeFalse => fails,
        CspAssumption::Unknown => CspConditional(holds, fails, reason),
    }
}

#[allow(non_snake_case)]
fn CspConditional(holds: Outcome, fails: Outcome, reason: &str) -> Outcome {
    Outcome::CspConditional {
        if_csp_holds: Box::new(holds),
        if_csp_fails: Box::new(fails),
        reason: reason.to_string(),
    }
}

const F4_REASON: &str = "ker g contains a lattice in the rank one group F4(-20); the outcome depends on whether such lattices have CSP";
const A1_REASON: &str = "ker g contains anisotropic higher-rank A_1 forms; the outcome depends on Serre's CSP conjecture for them";

/// Profinite solitude verdict for the arithmetic subgroups of the split
/// simply-connected `k`-group of type `t`.
pub fn solitude_verdict(t: CartanType, k: &NumberFieldProfile, policy: CspPolicy) -> Verdict {
    let fsp = finite_splitting_principle(t, k);
    let (step, ld) = decision_step(t, k);
    let mut assumptions = Vec::new();
    if step != Step::SplitLacksCsp {
        assumptions.push(determinacy_note(k, ld));
    }
    let outcome = match step {
        Step::SplitLacksCsp => Outcome::OutsideTheorems {
            reason: "split group lacks CSP: A_1 over Q or an imaginary quadratic field has archimedean rank 1".into(),
        },
        Step::NotLocallyDetermined if t.is(Family::A, 1) => Outcome::OutsideTheorems {
            reason: "k is not locally determined and type A_1 is excluded from the converse construction".into(),
        },
        Step::NotLocallyDetermined => {
            assumptions.push(ASSUME_CSP.into());
            Outcome::NotSolitary { witness: field_witness(t, k) }
        }
        Step::DeterminacyUnknown => Outcome::OutsideTheorems {
            reason: "local determinacy of k is undecided; rerun with ld=yes or ld=no in the field profile".into(),
        },
        Step::FiniteSplitting => {
            assumptions.push(ASSUME_CSP.into());
            Outcome::SolitaryOrNotGrothendieckRigid
        }
        Step::RationalLowRank => {
            assumptions.push(ASSUME_CSP.into());
            assumptions.push("nontrivial twists are compact or rank-one Spin(n,1), which are excluded".into());
            Outcome::SolitaryOrNotGrothendieckRigid
        }
        Step::A1SmallSignature => {
            assumptions.push(ASSUME_CSP.into());
            assumptions.push(ASSUME_A1_ANISOTROPIC.into());
            Outcome::SolitaryOrNotGrothendieckRigid
        }
        Step::F4OverQ => {
            assumptions.push(ASSUME_CSP.into());
            assumptions.push(format!("policy: CSP for lattices in F4(-20) = {}", policy.f4_rank_one_csp));
            let (w, _) = inner_twist_witness_rank_one_f4(t, k);
            gate(policy.f4_rank_one_csp, Outcome::NotSolitary { witness: w }, Outcome::SolitaryOrNotGrothendieckRigid, F4_REASON)
        }
        Step::A1Open => {
            assumptions.push(ASSUME_CSP.into());
            assumptions.push(ASSUME_A1_ANISOTROPIC.into());
            assumptions.push(format!("policy: Serre's CSP conjecture for anisotropic A_1 forms = {}", policy.serre_conjecture_a1));
            let w = a1_anisotropic_witness(t, k).expect("open A_1 signatures have r1 >= 2 and enough places");
            let fails = Outcome::OutsideTheorems { reason: "anisotropic A_1 twists without CSP are not covered".into() };
            gate(policy.serre_conjecture_a1, Outcome::NotSolitary { witness: w }, fails, A1_REASON)
        }
        Step::Converse => {
            assumptions.push(ASSUME_CSP.into());
            assumptions.push(ASSUME_ISOTROPIC.into());
            let (w, extrapolated) = inner_twist_witness(t, k).expect("every converse case has a witness construction");
            if extrapolated {
                assumptions.push(ASSUME_EXTRAPOLATED.into());
            }
            Outcome::NotSolitary { witness: w }
        }
    };
    if t.family() == Family::D && t.rank().is_multiple_of(2) && step != Step::SplitLacksCsp {
        assumptions.push(ASSUME_D_EVEN.into());
    }
    Verdict {
        outcome,
        fsp,
        assumptions_used: assumptions,
    }
}

fn inner_twist_witness_rank_one_f4(t: CartanType, k: &NumberFieldProfile) -> (Witness, bool) {
    let form = record_named(t, "F4(-20)");
    let assignment = place_forms(t, k, &form, &[0]);
    let w = Witness {
        kind: WitnessKind::InnerTwist,
        description: format!(
            "F4(-20) {} (lattice in a rank one group)",
            where_clause(k, &[0])
        ),
        assignment: Some(assignment),
    };
    (w, false)
}

/// The witness group for a `NotSolitary` verdict that does not depend on a
/// CSP assumption.
pub fn witness_group(t: CartanType, k: &NumberFieldProfile) -> Result<Witness> {
    match decision_step(t, k).0 {
        Step::NotLocallyDetermined if !t.is(Family::A, 1) => Ok(field_witness(t, k)),
        Step::Converse => Ok(inner_twist_witness(t, k)
            .expect("every converse case has a witness construction")
            .0),
        _ => Err(Error::NoWitness(format!(
            "{t} over {} is not unconditionally NotSolitary",
            field_name(k)
        ))),
    }
}

/// How the enumeration oracle treats a nontrivial element of `ker g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "resolution")]
pub enum Resolution {
    /// Isotropic twist of archimedean rank >= 2: has CSP, so it is a
    /// profinitely commensurable but noncommensurable partner.
    Witness,
    /// Cannot occur as a partner; the reason names the argument.
    Excluded {
        reason: String,
    },
    /// Depends on an open CSP case.
    Conditional {
        gate: CspGate,
    },
    Unresolved,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CspGate {
    SerreA1,
    F4RankOne,
}

/// The resolution rule table for one nontrivial assignment.
pub fn resolve_assignment(a: &Assignment, t: CartanType, k: &NumberFieldProfile) -> Resolution {
    let rank = archimedean_rank(a, t, k);
    let excluded = |s: &str| Resolution::Excluded {
        reason: s.to_string(),
    };
    if t.is(Family::A, 1) {
        // quaternionic, hence anisotropic
        return match rank {
            0 => excluded("lattice in a compact group is finite"),
            1 if k.r2() == 0 => excluded("commensurable to a Fuchsian group, which has virtually positive first Betti number"),
            1 => excluded("commensurable to a non-elementary Kleinian group, which has virtually positive first Betti number"),
            _ => Resolution::Conditional { gate: CspGate::SerreA1 },
        };
    }
    match rank {
        0 => excluded("lattice in a compact group is finite"),
        1 => {
            let noncompact: Vec<&RealFormRecord> =
                a.forms.iter().filter(|r| r.real_rank > 0).collect();
            let [form] = noncompact[..] else {
                return Resolution::Unresolved;
            };
            if !k.is_rationals() {
                Resolution::Unresolved
            } else if form.signature().is_some_and(|(_, q)| q == 1)
                && form.name.starts_with("Spin(")
            {
                excluded("SO(n,1;Z) virtually retracts onto geometrically finite subgroups, contradicting CSP of the split group")
            } else if form.name == "F4(-20)" {
                Resolution::Conditional {
                    gate: CspGate::F4RankOne,
                }
            } else {
                Resolution::Unresolved
            }
        }
        _ => Resolution::Witness,
    }
}

/// Verdict outcome recomputed from the enumerated `ker g` and the resolution
/// rules alone.
pub fn oracle_verdict(t: CartanType, k: &NumberFieldProfile, policy: CspPolicy) -> Result<Outcome> {
    let trivial = trivial_assignment(t, k);
    if archimedean_rank(&trivial, t, k) < 2 {
        return Ok(Outcome::OutsideTheorems {
            reason: "split group has archimedean rank 1".into(),
        });
    }
    let mut witness = None;
    let mut gates = Vec::new();
    let mut unresolved = false;
    for a in enumerate_ker_g(t, k)?
        .into_iter()
        .filter(|a| !a.is_trivial())
    {
        match resolve_assignment(&a, t, k) {
            Resolution::Witness => {
                witness.get_or_insert(a);
            }
            Resolution::Conditional { gate } => gates.push((gate, a)),
            Resolution::Excluded { .. } => {}
            Resolution::Unresolved => unresolved = true,
        }
    }
    let as_witness = |a: Assignment| Witness {
        kind: WitnessKind::InnerTwist,
        description: format!("{} (from enumeration)", a.describe()),
        assignment: Some(a),
    };
    if let Some(a) = witness {
        return Ok(Outcome::NotSolitary {
            witness: as_witness(a),
        });
    }
    if unresolved {
        return Ok(Outcome::OutsideTheorems {
            reason: "a nontrivial element of ker g is not covered by the rule table".into(),
        });
    }
    if let Some((g, a)) = gates.into_iter().next() {
        let holds = Outcome::NotSolitary {
            witness: as_witness(a),
        };
        return Ok(match g {
            CspGate::F4RankOne => gate(
                policy.f4_rank_one_csp,
                holds,
                Outcome::SolitaryOrNotGrothendieckRigid,
                F4_REASON,
            ),
            CspGate::SerreA1 => gate(
                policy.serre_conjecture_a1,
                holds,
                Outcome::OutsideTheorems {
                    reason: "anisotropic A_1 twists without CSP are not covered".into(),
                },
                A1_REASON,
            ),
        });
    }
    Ok(Outcome::SolitaryOrNotGrothendieckRigid)
}

/// Compares [`solitude_verdict`] with [`oracle_verdict`]. Besides the outcome
/// shapes, every witness assignment of the decision tree must be an element
/// of the enumerated `ker g` that the rule table accepts as a witness (rank
/// at least 2) or as CSP-conditional (the rank one `F4(-20)` twist).
pub fn cross_validate(t: CartanType, k: &NumberFieldProfile, policy: CspPolicy) -> Result<bool> {
    if k.r1() > MAX_ENUMERATION_R1 {
        return Err(Error::Precondition(format!(
            "r1 = {} exceeds {MAX_ENUMERATION_R1}",
            k.r1()
        )));
    }
    if t.rank() > MAX_CROSSVAL_RANK {
        return Err(Error::Precondition(format!(
            "rank {} exceeds {MAX_CROSSVAL_RANK}",
            t.rank()
        )));
    }
    if local_determinacy(k) != LocalDeterminacy::Yes {
        return Err(Error::Precondition("k must be locally determined".into()));
    }
    let tree = solitude_verdict(t, k, policy).outcome;
    let oracle = oracle_verdict(t, k, policy)?;
    if tree.shape() != oracle.shape() {
        return Ok(false);
    }
    let kernel = enumerate_ker_g(t, k)?;
    Ok(tree_witnesses(&tree)
        .into_iter()
        .all(|w| match &w.assignment {
            Some(a) => {
                !a.is_trivial()
                    && kernel.contains(a)
                    && matches!(
                        resolve_assignment(a, t, k),
                        Resolution::Witness | Resolution::Conditional { .. }
                    )
            }
            None => w.kind == WitnessKind::ArithmeticallyEquivalentField,
        }))
}

fn tree_witnesses(o: &Outcome) -> Vec<&Witness> {
    match o {
        Outcome::NotSolitary { witness } => vec![witness],
        Outcome::CspConditional {
            if_csp_holds,
            if_csp_fails,
            ..
        } => {
            let mut v = tree_witnesses(if_csp_holds);
            v.extend(tree_witnesses(if_csp_fails));
            v
        }
        _ => Vec::new(),
    }
}
