//! Number field profiles: degree, signature and local determinacy.
//!
//! No field arithmetic happens here. A field enters every computation only
//! through its signature `(r1, r2)` and whether it is determined by its ring
//! of finite adeles. Finite places of a general field are abstract labels.
//!
//! Profile grammar: comma-separated `key=value` pairs with keys `deg`, `r1`,
//! `r2`, `ld` (`yes|no|unknown|auto`, default `auto`) and `label`. Since a
//! label may itself contain commas, everything after `label=` is taken
//! verbatim. One of `deg`, `r1`, `r2` may be omitted and is then derived
//! from `deg = r1 + 2*r2`.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const BUILTIN_REGISTRY: &str = include_str!("../data/ld_counterexamples.txt");

/// Fields of degree at most this are locally determined (they are determined
/// by their Dedekind zeta function).
pub const LOCALLY_DETERMINED_DEGREE: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalDeterminacy {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for LocalDeterminacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LocalDeterminacy::Yes => "yes",
            LocalDeterminacy::No => "no",
            LocalDeterminacy::Unknown => "unknown",
        })
    }
}

#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum LdOverride {
    Yes,
    No,
    Unknown,
    #[default]
    Auto,
}

impl FromStr for LdOverride {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "yes" => Ok(LdOverride::Yes),
            "no" => Ok(LdOverride::No),
            "unknown" => Ok(LdOverride::Unknown),
            "auto" => Ok(LdOverride::Auto),
            other => Err(Error::MalformedProfile {
                text: other.to_string(),
                reason: "ld must be one of yes, no, unknown, auto".into(),
            }),
        }
    }
}

impl fmt::Display for LdOverride {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LdOverride::Yes => "yes",
            LdOverride::No => "no",
            LdOverride::Unknown => "unknown",
            LdOverride::Auto => "auto",
        })
    }
}

/// Degree, signature and local-determinacy data of a number field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NumberFieldProfile {
    label: Option<String>,
    degree: u32,
    r1: u32,
    r2: u32,
    ld_override: LdOverride,
}

impl NumberFieldProfile {
    pub fn new(degree: u32, r1: u32, r2: u32) -> Result<Self> {
        if degree == 0 || degree != r1 + 2 * r2 {
            return Err(Error::SignatureMismatch { degree, r1, r2 });
        }
        Ok(NumberFieldProfile {
            label: None,
            degree,
            r1,
            r2,
            ld_override: LdOverride::Auto,
        })
    }

    /// Profile with signature `(r1, r2)`.
    pub fn with_signature(r1: u32, r2: u32) -> Result<Self> {
        Self::new(r1 + 2 * r2, r1, r2)
    }

    pub fn rationals() -> Self {
        Self::new(1, 1, 0).unwrap().with_label("Q")
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_ld(mut self, ld: LdOverride) -> Self {
        self.ld_override = ld;
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn r1(&self) -> u32 {
        self.r1
    }

    pub fn r2(&self) -> u32 {
        self.r2
    }

    pub fn signature(&self) -> (u32, u32) {
        (self.r1, self.r2)
    }

    pub fn ld_override(&self) -> LdOverride {
        self.ld_override
    }

    pub fn is_totally_imaginary(&self) -> bool {
        self.r1 == 0
    }

    /// Signature `(1, 0)`: the only such field is Q.
    pub fn is_rationals(&self) -> bool {
        self.signature() == (1, 0)
    }

    /// Signature `(0, 1)`.
    pub fn is_imaginary_quadratic(&self) -> bool {
        self.signature() == (0, 1)
    }

    pub fn real_places(&self) -> impl Iterator<Item = Place> {
        (0..self.r1).map(Place::Real)
    }

    pub fn complex_places(&self) -> impl Iterator<Item = Place> {
        (0..self.r2).map(Place::Complex)
    }

    /// Whether `place` can be a place of this field.
    pub fn has_place(&self, place: &Place) -> bool {
        match place {
            Place::Real(i) => *i < self.r1,
            Place::Complex(i) => *i < self.r2,
            Place::RationalPrime(p) => self.is_rationals() && is_prime(*p),
            Place::FiniteAbstract(_) => true,
        }
    }

    /// Short human-readable name: the label if present, else the signature.
    pub fn display_name(&self) -> String {
        match &self.label {
            Some(l) => l.clone(),
            None => format!(
                "deg {} field, signature ({},{})",
                self.degree, self.r1, self.r2
            ),
        }
    }
}

/// Canonical profile string; parses back to an equal profile.
impl fmt::Display for NumberFieldProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "deg={},r1={},r2={}", self.degree, self.r1, self.r2)?;
        if self.ld_override != LdOverride::Auto {
            write!(f, ",ld={}", self.ld_override)?;
        }
        if let Some(l) = &self.label {
            write!(f, ",label={l}")?;
        }
        Ok(())
    }
}

impl FromStr for NumberFieldProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_profile(s)
    }
}

/// Parses the `key=value` profile grammar described in the module docs.
pub fn parse_profile(text: &str) -> Result<NumberFieldProfile> {
    let malformed = |reason: String| Error::MalformedProfile {
        text: text.to_string(),
        reason,
    };
    let mut degree = None;
    let mut r1 = None;
    let mut r2 = None;
    let mut ld = None;
    let mut label = None;

    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(l) = rest.strip_prefix("label=") {
            if l.trim().is_empty() {
                return Err(malformed("empty label".into()));
            }
            label = Some(l.trim().to_string());
            break;
        }
        let (item, tail) = match rest.split_once(',') {
            Some((a, b)) => (a, b),
            None => (rest, ""),
        };
        rest = tail.trim_start();
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| malformed(format!("'{item}' is not key=value")))?;
        let (key, value) = (key.trim(), value.trim());
        let number = || {
            value
                .parse::<u32>()
                .map_err(|_| malformed(format!("'{value}' is not a nonnegative integer")))
        };
        let slot_taken = |taken: bool| {
            if taken {
                Err(malformed(format!("duplicate key '{key}'")))
            } else {
                Ok(())
            }
        };
        match key {
            "deg" => {
                slot_taken(degree.is_some())?;
                degree = Some(number()?);
            }
            "r1" => {
                slot_taken(r1.is_some())?;
                r1 = Some(number()?);
            }
            "r2" => {
                slot_taken(r2.is_some())?;
                r2 = Some(number()?);
            }
            "ld" => {
                slot_taken(ld.is_some())?;
                ld = Some(
                    value
                        .parse::<LdOverride>()
                        .map_err(|_| malformed(format!("bad ld value '{value}'")))?,
                );
            }
            other => return Err(malformed(format!("unknown key '{other}'"))),
        }
    }

    let (degree, r1, r2) = match (degree, r1, r2) {
        (Some(d), Some(a), Some(b)) => (d, a, b),
        (None, Some(a), Some(b)) => (a + 2 * b, a, b),
        (Some(d), None, Some(b)) => {
            let a = d.checked_sub(2 * b).ok_or(Error::SignatureMismatch {
                degree: d,
                r1: 0,
                r2: b,
            })?;
            (d, a, b)
        }
        (Some(d), Some(a), None) => {
            if d < a || (d - a) % 2 != 0 {
                return Err(Error::SignatureMismatch {
                    degree: d,
                    r1: a,
                    r2: 0,
                });
            }
            (d, a, (d - a) / 2)
        }
        _ => return Err(malformed("need at least two of deg, r1, r2".into())),
    };
    let mut p = NumberFieldProfile::new(degree, r1, r2)?;
    p.ld_override = ld.unwrap_or_default();
    p.label = label;
    Ok(p)
}

/// Labels of fields known not to be locally determined.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LdRegistry {
    labels: BTreeSet<String>,
}

impl LdRegistry {
    /// One label per line; blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Self {
        let labels = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        LdRegistry { labels }
    }

    pub fn builtin() -> Self {
        Self::parse(BUILTIN_REGISTRY)
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(Self::parse(&std::fs::read_to_string(path)?))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.labels.contains(label.trim())
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

/// Local determinacy with the built-in counterexample registry.
pub fn local_determinacy(p: &NumberFieldProfile) -> LocalDeterminacy {
    local_determinacy_with(p, &LdRegistry::builtin())
}

pub fn local_determinacy_with(p: &NumberFieldProfile, registry: &LdRegistry) -> LocalDeterminacy {
    match p.ld_override {
        LdOverride::Yes => return LocalDeterminacy::Yes,
        LdOverride::No => return LocalDeterminacy::No,
        LdOverride::Unknown => return LocalDeterminacy::Unknown,
        LdOverride::Auto => {}
    }
    if p.degree <= LOCALLY_DETERMINED_DEGREE {
        LocalDeterminacy::Yes
    } else if p.label.as_deref().is_some_and(|l| registry.contains(l)) {
        LocalDeterminacy::No
    } else {
        LocalDeterminacy::Unknown
    }
}

/// A place of a number field.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Place {
    Real(u32),
    Complex(u32),
    /// A prime of Q; only meaningful when the field is Q.
    RationalPrime(u64),
    FiniteAbstract(String),
}

impl Place {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Place::Real(_) | Place::Complex(_))
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real(i) => write!(f, "real{i}"),
            Place::Complex(i) => write!(f, "complex{i}"),
            Place::RationalPrime(p) => write!(f, "p={p}"),
            Place::FiniteAbstract(l) => write!(f, "v={l}"),
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let p = parse_profile("deg=2,r1=2,r2=0").unwrap();
        assert_eq!(p.signature(), (2, 0));
        assert_eq!(local_determinacy(&p), LocalDeterminacy::Yes);

        let p = parse_profile("deg=8,r1=2,r2=3,ld=no,label=Q(8throot7)").unwrap();
        assert_eq!(p.ld_override(), LdOverride::No);
        assert_eq!(p.label(), Some("Q(8throot7)"));
        assert_eq!(local_determinacy(&p), LocalDeterminacy::No);

        assert!(matches!(
            parse_profile("deg=2,r1=3,r2=0"),
            Err(Error::SignatureMismatch { .. })
        ));
    }

    #[test]
    fn malformed_profiles() {
        for bad in [
            "",
            "deg=2",
            "deg=x,r1=2,r2=0",
            "deg=2,r1=2,r2=0,ld=maybe",
            "deg=2,r1=2,r2=0,foo=1",
            "deg=2,deg=2,r1=2",
            "r1",
            "deg=0,r1=0,r2=0",
            "deg=3,r1=2",
        ] {
            assert!(parse_profile(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn derives_missing_component() {
        assert_eq!(parse_profile("r1=2,r2=1").unwrap().degree(), 4);
        assert_eq!(parse_profile("deg=4,r2=1").unwrap().r1(), 2);
        assert_eq!(parse_profile("deg=3,r1=1").unwrap().r2(), 1);
    }

    #[test]
    fn label_may_contain_commas() {
        let p = parse_profile("deg=2,r1=0,r2=1,label=Q(sqrt(-1), i)").unwrap();
        assert_eq!(p.label(), Some("Q(sqrt(-1), i)"));
        assert_eq!(parse_profile(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn determinacy_policy() {
        let cube_root = parse_profile("deg=3,r1=1,r2=1,label=Q(cuberoot2)").unwrap();
        assert_eq!(local_determinacy(&cube_root), LocalDeterminacy::Yes);
        // registry membership alone decides degree-8 fields
        let eighth = parse_profile("deg=8,r1=2,r2=3,label=Q(8throot7)").unwrap();
        assert_eq!(local_determinacy(&eighth), LocalDeterminacy::No);
        let twelve = parse_profile("deg=12,r1=0,r2=6").unwrap();
        assert_eq!(local_determinacy(&twelve), LocalDeterminacy::Unknown);
        let forced = twelve.clone().with_ld(LdOverride::Yes);
        assert_eq!(local_determinacy(&forced), LocalDeterminacy::Yes);
        // an empty registry turns the counterexample into an unknown
        assert_eq!(
            local_determinacy_with(&eighth, &LdRegistry::default()),
            LocalDeterminacy::Unknown
        );
    }

    #[test]
    fn places() {
        let q = NumberFieldProfile::rationals();
        assert!(q.has_place(&Place::RationalPrime(7)));
        assert!(!q.has_place(&Place::RationalPrime(9)));
        assert!(!q.has_place(&Place::Complex(0)));
        let k = NumberFieldProfile::with_signature(2, 1).unwrap();
        assert!(k.has_place(&Place::Real(1)) && !k.has_place(&Place::Real(2)));
        assert!(!k.has_place(&Place::RationalPrime(2)));
        assert_eq!(k.real_places().count(), 2);
    }

    proptest! {
        #[test]
        fn parsed_profiles_satisfy_signature_identity(deg in 0u32..40, r1 in 0u32..40, r2 in 0u32..20, ld in 0usize..4) {
            let lds = ["yes", "no", "unknown", "auto"];
            let text = format!("deg={deg},r1={r1},r2={r2},ld={}", lds[ld]);
            match parse_profile(&text) {
                Ok(p) => {
                    prop_assert_eq!(p.degree(), p.r1() + 2 * p.r2());
                    prop_assert!(p.degree() >= 1);
                    prop_assert_eq!(parse_profile(&p.to_string()).unwrap(), p);
                }
                Err(_) => prop_assert!(deg != r1 + 2 * r2 || deg == 0),
            }
        }

        #[test]
        fn determinacy_is_stable(deg in 1u32..20, r2 in 0u32..10) {
            prop_assume!(2 * r2 <= deg);
            let p = NumberFieldProfile::new(deg, deg - 2 * r2, r2).unwrap();
            let first = local_determinacy(&p);
            prop_assert_eq!(first, local_determinacy(&p));
            prop_assert_eq!(first == LocalDeterminacy::Yes, deg <= 6);
        }
    }
}
