//! Cartan-Killing types, Cartan matrices, centers and Dynkin diagram symmetries.
//!
//! Simple roots are numbered as in Bourbaki's tables:
//!
//! ```text
//! A_n  1 - 2 - ... - n
//! B_n  1 - 2 - ... - (n-1) => n        (n short)
//! C_n  1 - 2 - ... - (n-1) <= n        (n long)
//! D_n  1 - 2 - ... - (n-2) - (n-1)
//!                       \
//!                        n
//! E_n  1 - 3 - 4 - 5 - ... - n,  with 2 attached to 4
//! F_4  1 - 2 => 3 - 4                  (1, 2 long)
//! G_2  1 <= 2                          (1 short)
//! ```
//!
//! Entry `(i, j)` of the Cartan matrix is `<a_i^v, a_j> = 2(a_i, a_j)/(a_i, a_i)`,
//! so column `j` expresses the simple root `a_j` in the basis of fundamental
//! weights. The cokernel of this matrix is the fundamental group `P/Q`, which
//! for the simply-connected group is the center.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest rank accepted for the classical families.
pub const MAX_RANK: u32 = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::A,
        Family::B,
        Family::C,
        Family::D,
        Family::E,
        Family::F,
        Family::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    /// Admissible ranks of this family, capped at [`MAX_RANK`].
    pub fn ranks(self) -> Vec<u32> {
        match self {
            Family::A => (1..=MAX_RANK).collect(),
            // B_2 is the same root system as C_2 and is only accepted under C.
            Family::B => (3..=MAX_RANK).collect(),
            Family::C => (2..=MAX_RANK).collect(),
            // D_3 = A_3 is only accepted under A.
            Family::D => (4..=MAX_RANK).collect(),
            Family::E => vec![6, 7, 8],
            Family::F => vec![4],
            Family::G => vec![2],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            "E" => Ok(Family::E),
            "F" => Ok(Family::F),
            "G" => Ok(Family::G),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

/// The Cartan-Killing type of a split simple group. Construction validates
/// the rank, so every value of this type is admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CartanType {
    family: Family,
    rank: u32,
}

impl CartanType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let reject = |reason: &str| {
            Err(Error::InadmissibleType {
                family: family.letter(),
                rank,
                reason: reason.to_string(),
            })
        };
        match family {
            Family::A if rank == 0 => return reject("A_n needs n >= 1"),
            Family::B if rank == 2 => return reject("B_2 is written C_2"),
            Family::B if rank < 2 => return reject("B_n needs n >= 3 (B_2 is written C_2)"),
            Family::C if rank < 2 => return reject("C_n needs n >= 2"),
            Family::D if rank == 3 => return reject("D_3 is written A_3"),
            Family::D if rank < 4 => return reject("D_n needs n >= 4"),
            Family::E if !(6..=8).contains(&rank) => return reject("E_n needs n in {6, 7, 8}"),
            Family::F if rank != 4 => return reject("F_n needs n = 4"),
            Family::G if rank != 2 => return reject("G_n needs n = 2"),
            _ => {}
        }
        if rank > MAX_RANK {
            return reject("rank above the supported ceiling of 25");
        }
        Ok(CartanType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is(&self, family: Family, rank: u32) -> bool {
        self.family == family && self.rank == rank
    }

    /// Types `A_{2n}` (rank even).
    pub fn is_a_even(&self) -> bool {
        self.family == Family::A && self.rank.is_multiple_of(2)
    }

    /// Types `A_{2n+1}` (rank odd), including `A_1`.
    pub fn is_a_odd(&self) -> bool {
        self.family == Family::A && self.rank % 2 == 1
    }

    /// Every admissible type with rank at most `max_rank`, in `Ord` order.
    pub fn all_up_to_rank(max_rank: u32) -> Vec<CartanType> {
        Family::ALL
            .iter()
            .flat_map(|&f| f.ranks().into_iter().map(move |r| (f, r)))
            .filter(|&(_, r)| r <= max_rank)
            .map(|(f, r)| CartanType { family: f, rank: r })
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Accepts `B4`, `B_4` or `b4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::UnknownFamily(String::new()))?;
        let family: Family = letter.to_string().parse()?;
        let digits = chars.as_str().trim_start_matches('_');
        let rank = digits
            .parse::<u32>()
            .map_err(|_| Error::UnknownFamily(s.to_string()))?;
        CartanType::new(family, rank)
    }
}

/// A Cartan matrix of finite type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    /// Validates the generalized Cartan matrix axioms and positivity of the
    /// determinant.
    pub fn from_entries(entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidCartanMatrix("empty matrix".into()));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidCartanMatrix(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            for (j, &a) in row.iter().enumerate() {
                if i == j && a != 2 {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "diagonal entry ({i},{i}) is {a}"
                    )));
                }
                if i != j && a > 0 {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "entry ({i},{j}) is positive"
                    )));
                }
                if i != j && (a == 0) != (entries[j][i] == 0) {
                    return Err(Error::InvalidCartanMatrix(format!(
                        "zero pattern not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let m = CartanMatrix { entries };
        if m.determinant() <= 0 {
            return Err(Error::InvalidCartanMatrix(
                "determinant is not positive".into(),
            ));
        }
        Ok(m)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        bareiss_determinant(&self.entries)
    }
}

pub(crate) fn bareiss_determinant(entries: &[Vec<i64>]) -> i128 {
    let n = entries.len();
    let mut m: Vec<Vec<i128>> = entries
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// The Cartan matrix of `t` in Bourbaki numbering.
pub fn cartan_matrix(t: CartanType) -> CartanMatrix {
    let n = t.rank as usize;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match t.family {
        Family::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // a_{n-1} long, a_n short
            link(n - 2, n - 1, -1, -2);
        }
        Family::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            // a_{n-1} short, a_n long
            link(n - 2, n - 1, -2, -1);
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Family::G => {
            link(0, 1, -3, -1);
        }
    }
    CartanMatrix { entries: a }
}

/// A finite abelian group in invariant-factor form `Z/d_1 x ... x Z/d_s`
/// with `d_1 | d_2 | ... | d_s` and every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            invariant_factors: Vec::new(),
        }
    }

    /// Builds the group from arbitrary cyclic orders; factors equal to 1 are
    /// dropped and the rest must form a divisibility chain.
    pub fn from_invariant_factors(factors: &[u64]) -> Option<Self> {
        let fs: Vec<u64> = factors.iter().copied().filter(|&d| d != 1).collect();
        if fs.contains(&0) {
            return None;
        }
        if fs.windows(2).any(|w| w[1] % w[0] != 0) {
            return None;
        }
        Some(FiniteAbelianGroup {
            invariant_factors: fs,
        })
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// The largest invariant factor, or 1 for the trivial group.
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|d| format!("Z/{d}"))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Diagonal of the Smith normal form of a square integer matrix, as
/// nonnegative integers `d_1 | d_2 | ... | d_n`.
pub fn smith_normal_form_diagonal(entries: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = entries.len();
    let mut m: Vec<Vec<i64>> = entries.to_vec();
    for t in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| m[i][j] != 0)
                .min_by_key(|&(i, j)| m[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                // the remaining block is zero
                return Ok((0..n).map(|i| m[i][i].abs()).collect());
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = m[i][t] / p;
                if q != 0 {
                    for j in t..n {
                        m[i][j] = m[i][j]
                            .checked_sub(q.checked_mul(m[t][j]).ok_or(Error::Overflow)?)
                            .ok_or(Error::Overflow)?;
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..n {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] = row[j]
                            .checked_sub(q.checked_mul(row[t]).ok_or(Error::Overflow)?)
                            .ok_or(Error::Overflow)?;
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // the pivot must divide the rest of the block; otherwise fold the
            // offending row into row t and go again
            let offender = (t + 1..n).find(|&i| (t + 1..n).any(|j| m[i][j] % p != 0));
            match offender {
                Some(i) => {
                    for j in t..n {
                        m[t][j] = m[t][j].checked_add(m[i][j]).ok_or(Error::Overflow)?;
                    }
                }
                None => break,
            }
        }
    }
    Ok((0..n).map(|i| m[i][i].abs()).collect())
}

/// The center of the simply-connected split group of type `t`, computed as
/// the cokernel of the Cartan matrix.
pub fn center(t: CartanType) -> FiniteAbelianGroup {
    let diag = smith_normal_form_diagonal(cartan_matrix(t).entries())
        .expect("Cartan matrices of rank <= 25 have small entries");
    let factors: Vec<u64> = diag.into_iter().map(|d| d as u64).collect();
    FiniteAbelianGroup::from_invariant_factors(&factors)
        .expect("Smith normal form yields a divisibility chain")
}

/// All permutations `s` of the simple roots with `a[s(i)][s(j)] = a[i][j]`,
/// each given as the image list `[s(0), ..., s(n-1)]`, in lexicographic order.
pub fn dynkin_symmetries(t: CartanType) -> Vec<Vec<usize>> {
    let m = cartan_matrix(t);
    let n = m.size();
    let mut out = Vec::new();
    let mut image = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_symmetry(&m, &mut image, &mut used, &mut out);
    out
}

fn extend_symmetry(
    m: &CartanMatrix,
    image: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let n = m.size();
    let i = image.len();
    if i == n {
        out.push(image.clone());
        return;
    }
    for cand in 0..n {
        if used[cand] {
            continue;
        }
        let consistent = (0..i)
            .all(|j| m.get(image[j], cand) == m.get(j, i) && m.get(cand, image[j]) == m.get(i, j));
        if !consistent {
            continue;
        }
        used[cand] = true;
        image.push(cand);
        extend_symmetry(m, image, used, out);
        image.pop();
        used[cand] = false;
    }
}

/// Order of the group of Dynkin diagram symmetries.
pub fn dynkin_symmetry_order(t: CartanType) -> usize {
    dynkin_symmetries(t).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ty(s: &str) -> CartanType {
        s.parse().unwrap()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(cartan_matrix(ty("A1")).entries(), &[vec![2]]);
        assert_eq!(
            cartan_matrix(ty("A2")).entries(),
            &[vec![2, -1], vec![-1, 2]]
        );
        let g2 = cartan_matrix(ty("G2"));
        let mut off = [g2.get(0, 1), g2.get(1, 0)];
        off.sort();
        assert_eq!(off, [-3, -1]);
        assert_eq!(g2.determinant(), 1);
        assert_eq!(cartan_matrix(ty("A2")).determinant(), 3);
    }

    #[test]
    fn matrices_validate() {
        for t in CartanType::all_up_to_rank(MAX_RANK) {
            let m = cartan_matrix(t);
            CartanMatrix::from_entries(m.entries().to_vec()).unwrap_or_else(|e| panic!("{t}: {e}"));
        }
    }

    #[test]
    fn invalid_matrices_rejected() {
        assert!(CartanMatrix::from_entries(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::from_entries(vec![vec![2, 1], vec![1, 2]]).is_err());
        // affine A_1: determinant zero
        assert!(CartanMatrix::from_entries(vec![vec![2, -2], vec![-2, 2]]).is_err());
        assert!(CartanMatrix::from_entries(vec![vec![1]]).is_err());
    }

    #[test]
    fn inadmissible_ranks() {
        for (f, r) in [
            (Family::A, 0),
            (Family::B, 1),
            (Family::B, 2),
            (Family::C, 1),
            (Family::D, 3),
            (Family::E, 5),
            (Family::E, 9),
            (Family::F, 3),
            (Family::G, 3),
            (Family::A, 26),
        ] {
            assert!(CartanType::new(f, r).is_err(), "{f}{r}");
        }
        assert!("X3".parse::<CartanType>().is_err());
        assert!("A".parse::<CartanType>().is_err());
        assert_eq!(ty("d_4"), CartanType::new(Family::D, 4).unwrap());
    }

    #[test]
    fn centers() {
        assert_eq!(center(ty("A3")).invariant_factors(), &[4]);
        assert_eq!(center(ty("D4")).invariant_factors(), &[2, 2]);
        assert_eq!(center(ty("D5")).invariant_factors(), &[4]);
        assert_eq!(center(ty("E6")).invariant_factors(), &[3]);
        assert_eq!(center(ty("E7")).invariant_factors(), &[2]);
        for s in ["E8", "F4", "G2"] {
            assert!(center(ty(s)).is_trivial(), "{s}");
        }
        assert_eq!(center(ty("D4")).to_string(), "Z/2 x Z/2");
        assert_eq!(center(ty("G2")).to_string(), "trivial");
    }

    #[test]
    fn snf_handles_non_diagonalizable_pivot() {
        // diag(2, 3) has invariant factors 1, 6
        assert_eq!(
            smith_normal_form_diagonal(&[vec![2, 0], vec![0, 3]]).unwrap(),
            vec![1, 6]
        );
        assert_eq!(
            smith_normal_form_diagonal(&[vec![0, 0], vec![0, 0]]).unwrap(),
            vec![0, 0]
        );
    }

    #[test]
    fn symmetry_orders() {
        assert_eq!(dynkin_symmetry_order(ty("A1")), 1);
        assert_eq!(dynkin_symmetry_order(ty("A4")), 2);
        assert_eq!(dynkin_symmetry_order(ty("D4")), 6);
        assert_eq!(dynkin_symmetry_order(ty("D5")), 2);
        assert_eq!(dynkin_symmetry_order(ty("E6")), 2);
        assert_eq!(dynkin_symmetry_order(ty("A25")), 2);
        for s in ["B3", "C5", "F4", "G2", "E7", "E8"] {
            assert_eq!(dynkin_symmetry_order(ty(s)), 1, "{s}");
        }
    }

    #[test]
    fn finite_abelian_group_chain() {
        assert!(FiniteAbelianGroup::from_invariant_factors(&[2, 3]).is_none());
        let g = FiniteAbelianGroup::from_invariant_factors(&[1, 2, 4]).unwrap();
        assert_eq!(g.invariant_factors(), &[2, 4]);
        assert_eq!(g.order(), 8);
        assert_eq!(g.exponent(), 4);
        assert!(!g.is_cyclic());
    }
}
