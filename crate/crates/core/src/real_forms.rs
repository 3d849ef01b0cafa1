//! Inner real forms of split simple groups.
//!
//! For each type we list the real forms that occur as localizations at a
//! real place of `k`-forms which are split at every finite place, together
//! with their real rank and their image in `H^2(R, Z(G))` (a vector over
//! Z/2, one entry per cyclic factor of the center). A tuple of such forms,
//! one per real place, comes from a global class exactly when the
//! invariants sum to zero.
//!
//! Classical families are generated:
//!
//! * `A_{2n+1}`: split `SL_{2n+2}(R)` and `SL_{n+1}(H)` (rank `n`, invariant 1).
//! * `A_{2n}`: split only.
//! * `B_n`: `Spin(p,q)`, `p + q = 2n + 1`, `p >= q`, rank `q`.
//! * `C_n`: split `Sp(2n,R)` and `Sp(p,q)`, `p + q = n`, `p >= q >= 1`,
//!   rank `q`, invariant 1.
//! * `D_n`: `Spin(p,q)`, `p + q = 2n`, `p = q mod 4`, `p >= q`, rank `q`.
//!
//! For `Spin(p,q)` the invariant compares the real Hasse invariant of
//! `<1>^p + <-1>^q` with that of the split form. In odd dimension the form is
//! first rescaled by `-1` if needed so that its discriminant matches the
//! split one (`SO(Q) = SO(-Q)`). For `D_{2m}` the second coordinate is
//! always 0.
//!
//! Exceptional types come from `data/real_forms_exceptional.txt`, in the
//! fixture format `type;name;real_rank;inv_bits;is_split`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie_data::{center, CartanType, Family};
use crate::qforms::{local_invariants, DiagonalForm, RationalPlace};

const EXCEPTIONAL_FIXTURE: &str = include_str!("../data/real_forms_exceptional.txt");

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RealFormRecord {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub name: String,
    pub real_rank: u32,
    pub h2_invariant: Vec<u8>,
    pub is_split: bool,
}

impl RealFormRecord {
    pub fn is_compact(&self) -> bool {
        self.real_rank == 0
    }

    pub fn has_zero_invariant(&self) -> bool {
        self.h2_invariant.iter().all(|&b| b == 0)
    }

    /// `(p, q)` for records named `Spin(p,q)` or `Sp(p,q)`.
    pub fn signature(&self) -> Option<(u32, u32)> {
        let inner = self
            .name
            .strip_prefix("Spin(")
            .or_else(|| self.name.strip_prefix("Sp("))?
            .strip_suffix(')')?;
        let (p, q) = inner.split_once(',')?;
        Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
    }

    /// One line of the fixture format.
    pub fn to_fixture_line(&self) -> String {
        let bits: String = self
            .h2_invariant
            .iter()
            .map(|b| if *b == 0 { '0' } else { '1' })
            .collect();
        format!(
            "{};{};{};{};{}",
            self.cartan_type, self.name, self.real_rank, bits, self.is_split
        )
    }
}

/// Number of Z/2 coordinates of `H^2(R, Z(G))` tracked for `t`.
pub fn invariant_width(t: CartanType) -> usize {
    center(t).invariant_factors().len().max(1)
}

fn record(
    t: CartanType,
    name: String,
    real_rank: u32,
    first_bit: u8,
    is_split: bool,
) -> RealFormRecord {
    let mut h2_invariant = vec![0u8; invariant_width(t)];
    h2_invariant[0] = first_bit;
    RealFormRecord {
        cartan_type: t,
        name,
        real_rank,
        h2_invariant,
        is_split,
    }
}

fn real_hasse(p: u32, q: u32) -> i8 {
    let form = DiagonalForm::signed(p as usize, q as usize).expect("p + q > 0");
    local_invariants(&form, RationalPlace::Infinite).hasse
}

/// Invariant bit of `Spin(p,q)` relative to the split form of the same
/// dimension.
fn spin_invariant(p: u32, q: u32, split: (u32, u32)) -> u8 {
    let (p, q) = if (p + q) % 2 == 1 && q % 2 != split.1 % 2 {
        (q, p)
    } else {
        (p, q)
    };
    u8::from(real_hasse(p, q) != real_hasse(split.0, split.1))
}

fn spin_records(
    t: CartanType,
    dim: u32,
    split: (u32, u32),
    inner: impl Fn(u32, u32) -> bool,
) -> Vec<RealFormRecord> {
    let mut out = vec![record(
        t,
        format!("Spin({},{})", split.0, split.1),
        split.1,
        0,
        true,
    )];
    for q in 0..=dim / 2 {
        let p = dim - q;
        if (p, q) == split || !inner(p, q) {
            continue;
        }
        out.push(record(
            t,
            format!("Spin({p},{q})"),
            q,
            spin_invariant(p, q, split),
            false,
        ));
    }
    out
}

fn classical_forms(t: CartanType) -> Vec<RealFormRecord> {
    let n = t.rank();
    match t.family() {
        Family::A => {
            let mut out = vec![record(t, format!("SL_{}(R)", n + 1), n, 0, true)];
            if n % 2 == 1 {
                out.push(record(
                    t,
                    format!("SL_{}(H)", n.div_ceil(2)),
                    (n - 1) / 2,
                    1,
                    false,
                ));
            }
            out
        }
        Family::B => spin_records(t, 2 * n + 1, (n + 1, n), |_, _| true),
        Family::C => {
            let mut out = vec![record(t, format!("Sp({},R)", 2 * n), n, 0, true)];
            for q in 1..=n / 2 {
                out.push(record(t, format!("Sp({},{q})", n - q), q, 1, false));
            }
            out
        }
        Family::D => spin_records(t, 2 * n, (n, n), |p, q| (p + 4 - q % 4) % 4 == 0),
        _ => unreachable!("exceptional types are tabulated"),
    }
}

/// Parses fixture text into records grouped by type, validating each group.
/// Blank lines and `#` comments are ignored.
pub fn parse_table(text: &str) -> Result<BTreeMap<CartanType, Vec<RealFormRecord>>> {
    let mut table: BTreeMap<CartanType, Vec<RealFormRecord>> = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::MalformedTable {
            line: idx + 1,
            reason,
        };
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        let [ty, name, rank, bits, split] = fields[..] else {
            return Err(bad(format!("expected 5 fields, found {}", fields.len())));
        };
        let cartan_type: CartanType = ty.parse().map_err(|e: Error| bad(e.to_string()))?;
        let real_rank = rank
            .parse::<u32>()
            .map_err(|_| bad(format!("bad real rank '{rank}'")))?;
        let h2_invariant = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(0u8),
                '1' => Ok(1u8),
                _ => Err(bad(format!("bad invariant bits '{bits}'"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        let is_split = match split {
            "true" => true,
            "false" => false,
            _ => {
                return Err(bad(format!(
                    "is_split must be true or false, got '{split}'"
                )))
            }
        };
        if name.is_empty() {
            return Err(bad("empty name".into()));
        }
        table.entry(cartan_type).or_default().push(RealFormRecord {
            cartan_type,
            name: name.to_string(),
            real_rank,
            h2_invariant,
            is_split,
        });
    }
    for (t, records) in &table {
        validate_records(*t, records)?;
    }
    Ok(table)
}

/// Serializes records in the fixture format, one per line.
pub fn to_fixture(records: &[RealFormRecord]) -> String {
    let mut s = String::new();
    for r in records {
        let _ = writeln!(s, "{}", r.to_fixture_line());
    }
    s
}

/// Checks the table invariants for one type.
pub fn validate_records(t: CartanType, records: &[RealFormRecord]) -> Result<()> {
    let bad = |reason: String| Error::MalformedTable {
        line: 0,
        reason: format!("{t}: {reason}"),
    };
    let splits: Vec<&RealFormRecord> = records.iter().filter(|r| r.is_split).collect();
    if splits.len() != 1 {
        return Err(bad(format!("{} split records", splits.len())));
    }
    if splits[0].real_rank != t.rank() || !splits[0].has_zero_invariant() {
        return Err(bad(
            "split record must have full rank and zero invariant".into()
        ));
    }
    let width = invariant_width(t);
    let odd_center = center(t).order() % 2 == 1;
    for r in records {
        if r.cartan_type != t {
            return Err(bad(format!("record {} has type {}", r.name, r.cartan_type)));
        }
        if r.real_rank > t.rank() {
            return Err(bad(format!(
                "{} has real rank {} above {}",
                r.name,
                r.real_rank,
                t.rank()
            )));
        }
        if r.h2_invariant.len() != width {
            return Err(bad(format!(
                "{} has {} invariant bits, expected {width}",
                r.name,
                r.h2_invariant.len()
            )));
        }
        if odd_center && !r.has_zero_invariant() {
            return Err(bad(format!(
                "{} has a nonzero invariant but the center has odd order",
                r.name
            )));
        }
    }
    Ok(())
}

fn exceptional_table() -> &'static BTreeMap<CartanType, Vec<RealFormRecord>> {
    static TABLE: OnceLock<BTreeMap<CartanType, Vec<RealFormRecord>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        parse_table(EXCEPTIONAL_FIXTURE).expect("shipped exceptional table is valid")
    })
}

/// The inner real forms of `t`, split form first.
pub fn inner_real_forms(t: CartanType) -> Vec<RealFormRecord> {
    match t.family() {
        Family::E | Family::F | Family::G => {
            let mut rs = exceptional_table().get(&t).cloned().unwrap_or_default();
            rs.sort_by_key(|r| !r.is_split);
            rs
        }
        _ => classical_forms(t),
    }
}

/// Whether `H^1(R, G)` is trivial for the simply-connected split group, i.e.
/// no non-split form in the table has zero invariant.
pub fn h1_real_trivial(t: CartanType) -> bool {
    !inner_real_forms(t)
        .iter()
        .any(|r| !r.is_split && r.has_zero_invariant())
}
