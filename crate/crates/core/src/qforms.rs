//! Local invariants of diagonal quadratic forms over Q.
//!
//! A nondegenerate form over `Q_p` is classified by its dimension,
//! discriminant in `Q_p^*/Q_p^*2` and Hasse invariant; over `R` by its
//! signature. Everything here depends on coefficients only through their
//! square classes, which are represented by squarefree integers with sign.
//!
//! Hasse invariant convention: `prod_{i<j} (a_i, a_j)_v`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::number_field::{is_prime, Place};

pub type Rational = Ratio<i64>;

/// A place of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RationalPlace {
    Infinite,
    Prime(u64),
}

impl RationalPlace {
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(RationalPlace::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }
}

impl TryFrom<&Place> for RationalPlace {
    type Error = Error;

    /// `Real(0)` is the infinite place of Q; rational primes map to themselves.
    fn try_from(place: &Place) -> Result<Self> {
        match place {
            Place::Real(0) => Ok(RationalPlace::Infinite),
            Place::RationalPrime(p) => RationalPlace::prime(*p),
            other => Err(Error::NotRationalPlace(other.to_string())),
        }
    }
}

impl fmt::Display for RationalPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalPlace::Infinite => write!(f, "inf"),
            RationalPlace::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// Squarefree part of a nonzero integer, keeping the sign.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "squarefree_part of zero");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut out = 1u64;
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= d;
        }
        d += 1;
    }
    out *= m;
    sign * out as i64
}

/// Squarefree integer representing the square class of a nonzero rational.
pub fn square_class(r: Rational) -> Result<i64> {
    if *r.numer() == 0 {
        return Err(Error::ZeroInput);
    }
    let a = squarefree_part(*r.numer());
    let b = squarefree_part(*r.denom());
    Ok(product_class(a, b))
}

/// Square class of the product of two squarefree integers.
fn product_class(a: i64, b: i64) -> i64 {
    let g = a.gcd(&b);
    (a / g) * (b / g)
}

fn valuation(mut n: i64, p: i64) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Legendre symbol `(a | p)` for an odd prime `p` not dividing `a`.
fn legendre(a: i64, p: u64) -> i8 {
    let r = a.rem_euclid(p as i64) as u64;
    if pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// Hilbert symbol of two squarefree (or arbitrary nonzero) integers.
fn hilbert_integers(a: i64, b: i64, v: RationalPlace) -> i8 {
    match v {
        RationalPlace::Infinite => {
            if a < 0 && b < 0 {
                -1
            } else {
                1
            }
        }
        RationalPlace::Prime(2) => {
            let (alpha, beta) = (valuation(a, 2), valuation(b, 2));
            let u = (a >> alpha).rem_euclid(8);
            let w = (b >> beta).rem_euclid(8);
            let eps = |x: i64| ((x - 1) / 2) % 2;
            let omega = |x: i64| ((x * x - 1) / 8) % 2;
            let e = eps(u) * eps(w) + alpha as i64 * omega(w) + beta as i64 * omega(u);
            if e % 2 == 0 {
                1
            } else {
                -1
            }
        }
        RationalPlace::Prime(p) => {
            let pi = p as i64;
            let (alpha, beta) = (valuation(a, pi), valuation(b, pi));
            let u = a / pi.pow(alpha);
            let w = b / pi.pow(beta);
            let mut s: i8 = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && (p - 1) / 2 % 2 == 1 {
                s = -s;
            }
            if beta % 2 == 1 {
                s *= legendre(u, p);
            }
            if alpha % 2 == 1 {
                s *= legendre(w, p);
            }
            s
        }
    }
}

/// `(a, b)_v`: `+1` iff `z^2 = a x^2 + b y^2` has a nontrivial solution over
/// the completion of Q at `v`.
pub fn hilbert_symbol(a: Rational, b: Rational, v: RationalPlace) -> Result<i8> {
    if let RationalPlace::Prime(p) = v {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
    }
    Ok(hilbert_integers(square_class(a)?, square_class(b)?, v))
}

/// Same as [`hilbert_symbol`] with a generic [`Place`].
pub fn hilbert_symbol_at(a: Rational, b: Rational, v: &Place) -> Result<i8> {
    hilbert_symbol(a, b, RationalPlace::try_from(v)?)
}

/// Whether the squarefree integer class `d` is a square in `Q_v`, by
/// valuation and unit tests.
pub fn is_local_square(d: i64, v: RationalPlace) -> bool {
    let d = squarefree_part(d);
    match v {
        RationalPlace::Infinite => d > 0,
        RationalPlace::Prime(p) => {
            if d % p as i64 == 0 {
                return false;
            }
            if p == 2 {
                d.rem_euclid(8) == 1
            } else {
                legendre(d, p) == 1
            }
        }
    }
}

/// Whether two square classes agree in `Q_v^*/Q_v^*2`.
pub fn same_local_square_class(d1: i64, d2: i64, v: RationalPlace) -> bool {
    is_local_square(product_class(squarefree_part(d1), squarefree_part(d2)), v)
}

/// A nondegenerate diagonal form `<a_1, ..., a_n>` over Q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiagonalForm {
    coefficients: Vec<Rational>,
}

impl DiagonalForm {
    pub fn new(coefficients: Vec<Rational>) -> Result<Self> {
        if coefficients.is_empty() {
            return Err(Error::EmptyForm);
        }
        if coefficients.iter().any(|c| *c.numer() == 0) {
            return Err(Error::ZeroInput);
        }
        Ok(DiagonalForm { coefficients })
    }

    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Self::new(
            coefficients
                .iter()
                .map(|&c| Rational::from_integer(c))
                .collect(),
        )
    }

    /// `<1>^p + <-1>^q`.
    pub fn signed(p: usize, q: usize) -> Result<Self> {
        let mut c = vec![1i64; p];
        c.extend(std::iter::repeat_n(-1, q));
        Self::from_integers(&c)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn dim(&self) -> usize {
        self.coefficients.len()
    }

    fn classes(&self) -> Vec<i64> {
        self.coefficients
            .iter()
            .map(|&c| square_class(c).expect("coefficients are nonzero"))
            .collect()
    }

    /// Squarefree representative of the product of the coefficients.
    pub fn disc_class(&self) -> i64 {
        self.classes().into_iter().fold(1, product_class)
    }
}

impl FromStr for DiagonalForm {
    type Err = Error;

    /// Comma-separated rationals such as `1,-1,2/3`.
    fn from_str(s: &str) -> Result<Self> {
        let coefficients = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<Rational>()
                    .map_err(|_| Error::InvalidRational(t.trim().to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(coefficients)
    }
}

impl fmt::Display for DiagonalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|c| c.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LocalInvariantTriple {
    pub dim: usize,
    pub disc_class: i64,
    pub hasse: i8,
}

pub fn local_invariants(q: &DiagonalForm, v: RationalPlace) -> LocalInvariantTriple {
    let cls = q.classes();
    let mut hasse = 1i8;
    for i in 0..cls.len() {
        for j in i + 1..cls.len() {
            hasse *= hilbert_integers(cls[i], cls[j], v);
        }
    }
    LocalInvariantTriple {
        dim: q.dim(),
        disc_class: q.disc_class(),
        hasse,
    }
}

/// Counts of positive and negative coefficients.
pub fn signature(q: &DiagonalForm) -> (usize, usize) {
    let pos = q.coefficients.iter().filter(|c| *c.numer() > 0).count();
    (pos, q.dim() - pos)
}

pub fn locally_isometric(q1: &DiagonalForm, q2: &DiagonalForm, v: RationalPlace) -> bool {
    if q1.dim() != q2.dim() {
        return false;
    }
    match v {
        RationalPlace::Infinite => signature(q1) == signature(q2),
        RationalPlace::Prime(_) => {
            let (a, b) = (local_invariants(q1, v), local_invariants(q2, v));
            a.hasse == b.hasse && same_local_square_class(a.disc_class, b.disc_class, v)
        }
    }
}

/// 2 and every odd prime dividing a numerator or denominator of a
/// coefficient of either form, ascending.
pub fn relevant_primes(forms: &[&DiagonalForm]) -> Vec<u64> {
    let mut ps = vec![2u64];
    for q in forms {
        for c in q.coefficients() {
            for n in [*c.numer(), *c.denom()] {
                ps.extend(prime_factors(n.unsigned_abs()));
            }
        }
    }
    ps.sort_unstable();
    ps.dedup();
    ps
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Whether `q1` and `q2` are isometric over `Q_p` for every prime `p`.
///
/// Only finitely many primes need an explicit check. If the global
/// discriminant classes differ, their ratio is not a rational square, and a
/// nonsquare rational is a nonsquare in `Q_p` for infinitely many `p`, so
/// the answer is `false`. If they agree, the local discriminants agree
/// everywhere. At an odd prime dividing no numerator or denominator every
/// coefficient is a `p`-adic unit, so every pairwise Hilbert symbol is `+1`
/// and both Hasse invariants are `+1`. What remains is comparing Hasse
/// invariants at the primes of [`relevant_primes`].
pub fn isometric_at_all_finite(q1: &DiagonalForm, q2: &DiagonalForm) -> bool {
    if q1.dim() != q2.dim() || q1.disc_class() != q2.disc_class() {
        return false;
    }
    relevant_primes(&[q1, q2])
        .into_iter()
        .all(|p| locally_isometric(q1, q2, RationalPlace::Prime(p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn hs(a: i64, b: i64, v: RationalPlace) -> i8 {
        hilbert_symbol(r(a), r(b), v).unwrap()
    }

    #[test]
    fn symbol_examples() {
        for v in [
            RationalPlace::Infinite,
            RationalPlace::Prime(2),
            RationalPlace::Prime(3),
            RationalPlace::Prime(7),
        ] {
            assert_eq!(hs(1, -5, v), 1);
        }
        assert_eq!(hs(-1, -1, RationalPlace::Infinite), -1);
        assert_eq!(hs(-1, -1, RationalPlace::Prime(2)), -1);
        assert_eq!(hs(-1, -1, RationalPlace::Prime(3)), 1);
        assert_eq!(hs(2, 5, RationalPlace::Prime(5)), -1);
        assert_eq!(hs(2, 7, RationalPlace::Prime(2)), 1);
        assert_eq!(hs(2, 3, RationalPlace::Prime(2)), -1);
        assert_eq!(hs(3, 3, RationalPlace::Prime(3)), -1);
        assert_eq!(hs(5, 5, RationalPlace::Prime(5)), 1);
    }

    #[test]
    fn errors() {
        assert_eq!(
            hilbert_symbol(r(0), r(1), RationalPlace::Prime(3)),
            Err(Error::ZeroInput)
        );
        assert_eq!(
            hilbert_symbol(r(1), r(1), RationalPlace::Prime(9)),
            Err(Error::NotPrime(9))
        );
        assert!(hilbert_symbol_at(r(1), r(1), &Place::Complex(0)).is_err());
        assert!(DiagonalForm::from_integers(&[]).is_err());
        assert!(DiagonalForm::from_integers(&[1, 0]).is_err());
        assert!("1,x".parse::<DiagonalForm>().is_err());
    }

    #[test]
    fn rationals_reduce_to_square_classes() {
        assert_eq!(square_class(Rational::new(8, 9)).unwrap(), 2);
        assert_eq!(square_class(Rational::new(-3, 12)).unwrap(), -1);
        assert_eq!(square_class(Rational::new(2, 3)).unwrap(), 6);
        let half = Rational::new(1, 2);
        assert_eq!(
            hilbert_symbol(half, r(5), RationalPlace::Prime(5)).unwrap(),
            hs(2, 5, RationalPlace::Prime(5))
        );
    }

    #[test]
    fn invariant_examples() {
        let plus: DiagonalForm = "1,1,1,1".parse().unwrap();
        let minus: DiagonalForm = "-1,-1,-1,-1".parse().unwrap();
        for v in [
            RationalPlace::Infinite,
            RationalPlace::Prime(2),
            RationalPlace::Prime(3),
        ] {
            assert_eq!(
                local_invariants(&plus, v),
                LocalInvariantTriple {
                    dim: 4,
                    disc_class: 1,
                    hasse: 1
                }
            );
        }
        let expect = LocalInvariantTriple {
            dim: 4,
            disc_class: 1,
            hasse: 1,
        };
        assert_eq!(local_invariants(&minus, RationalPlace::Prime(3)), expect);
        assert_eq!(local_invariants(&minus, RationalPlace::Infinite), expect);
        assert_eq!(signature(&minus), (0, 4));
    }

    #[test]
    fn isometry_examples() {
        let plus: DiagonalForm = "1,1,1,1".parse().unwrap();
        let minus: DiagonalForm = "-1,-1,-1,-1".parse().unwrap();
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(locally_isometric(&plus, &minus, RationalPlace::Prime(p)));
        }
        assert!(!locally_isometric(&plus, &minus, RationalPlace::Infinite));
        assert!(isometric_at_all_finite(&plus, &minus));

        let split = DiagonalForm::signed(6, 5).unwrap();
        let twisted = DiagonalForm::signed(2, 9).unwrap();
        assert!(isometric_at_all_finite(&split, &twisted));
        assert_eq!(signature(&twisted), (2, 9));

        let a: DiagonalForm = "1,1".parse().unwrap();
        let b: DiagonalForm = "1,-1".parse().unwrap();
        assert!(!isometric_at_all_finite(&a, &b));
        assert!(isometric_at_all_finite(&a, &a));
        assert!(!isometric_at_all_finite(&a, &plus));
    }

    #[test]
    fn isometry_detects_hasse_difference() {
        // same discriminant, Hasse invariants differ at 3 and 5
        let a: DiagonalForm = "1,15".parse().unwrap();
        let b: DiagonalForm = "3,5".parse().unwrap();
        assert_eq!(a.disc_class(), b.disc_class());
        assert!(!isometric_at_all_finite(&a, &b));
        assert_eq!(relevant_primes(&[&a, &b]), vec![2, 3, 5]);
    }

    #[test]
    fn local_square_tests() {
        assert!(is_local_square(17, RationalPlace::Prime(2)));
        assert!(!is_local_square(5, RationalPlace::Prime(2)));
        assert!(is_local_square(-1, RationalPlace::Prime(5)));
        assert!(!is_local_square(-1, RationalPlace::Prime(3)));
        assert!(!is_local_square(3, RationalPlace::Prime(3)));
        assert!(is_local_square(4, RationalPlace::Infinite));
    }
}
