//! Supported coefficient fields and their square-class groups.
//!
//! The calculator works over fields whose Grothendieck-Witt ring has a
//! decidable canonical form: quadratically closed fields (classified by
//! rank), real closed fields (rank and signature), and finite fields of odd
//! characteristic (rank and discriminant).

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// One of the supported base fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    QuadraticallyClosed,
    RealClosed,
    Finite { q: u64 },
}

impl FieldDescriptor {
    /// A finite field of order `q`; `q` must be an odd prime power.
    pub fn finite(q: u64) -> Result<Self> {
        match prime_power_base(q) {
            Some(p) if p != 2 => Ok(FieldDescriptor::Finite { q }),
            _ => Err(Error::InvalidFieldOrder(q)),
        }
    }

    pub fn is_real_closed(&self) -> bool {
        matches!(self, FieldDescriptor::RealClosed)
    }

    /// Whether -1 is a square: true over a quadratically closed field and
    /// over F_q with q = 1 (mod 4).
    pub fn minus_one_is_square(&self) -> bool {
        match self {
            FieldDescriptor::QuadraticallyClosed => true,
            FieldDescriptor::RealClosed => false,
            FieldDescriptor::Finite { q } => q % 4 == 1,
        }
    }

    pub(crate) fn check_same(&self, other: &FieldDescriptor) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::QuadraticallyClosed => write!(f, "quadratically closed"),
            FieldDescriptor::RealClosed => write!(f, "real closed"),
            FieldDescriptor::Finite { q } => write!(f, "F_{q}"),
        }
    }
}

/// Canonical square-class token. Over a quadratically closed field there is a
/// unique class; over a real closed field the classes are the two signs; over
/// F_q (q odd) the classes are square / nonsquare.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SquareClassToken {
    Unique,
    Sign(i8),
    Square,
    NonSquare,
}

/// A square class of a specific field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareClass {
    field: FieldDescriptor,
    token: SquareClassToken,
}

impl SquareClass {
    pub fn new(field: FieldDescriptor, token: SquareClassToken) -> Result<Self> {
        let ok = matches!(
            (field, token),
            (FieldDescriptor::QuadraticallyClosed, SquareClassToken::Unique)
                | (FieldDescriptor::RealClosed, SquareClassToken::Sign(1))
                | (FieldDescriptor::RealClosed, SquareClassToken::Sign(-1))
                | (FieldDescriptor::Finite { .. }, SquareClassToken::Square)
                | (FieldDescriptor::Finite { .. }, SquareClassToken::NonSquare)
        );
        if ok {
            Ok(SquareClass { field, token })
        } else {
            Err(Error::InvalidSquareClass {
                field: field.to_string(),
                token: format!("{token:?}"),
            })
        }
    }

    /// The class of 1.
    pub fn one(field: FieldDescriptor) -> Self {
        let token = match field {
            FieldDescriptor::QuadraticallyClosed => SquareClassToken::Unique,
            FieldDescriptor::RealClosed => SquareClassToken::Sign(1),
            FieldDescriptor::Finite { .. } => SquareClassToken::Square,
        };
        SquareClass { field, token }
    }

    /// The canonical nonsquare class, if the field has one.
    pub fn nonsquare(field: FieldDescriptor) -> Result<Self> {
        match field {
            FieldDescriptor::QuadraticallyClosed => Err(Error::InvalidSquareClass {
                field: field.to_string(),
                token: "nonsquare".into(),
            }),
            FieldDescriptor::RealClosed => SquareClass::new(field, SquareClassToken::Sign(-1)),
            FieldDescriptor::Finite { .. } => SquareClass::new(field, SquareClassToken::NonSquare),
        }
    }

    /// Parses the canonical token strings used in input records:
    /// `+1`/`-1` over a real closed field, `sq`/`nonsq` over a finite field,
    /// `sq` over a quadratically closed field.
    pub fn parse_token(field: FieldDescriptor, token: &str) -> Result<Self> {
        let parsed = match (field, token) {
            (FieldDescriptor::RealClosed, "+1") => Some(SquareClassToken::Sign(1)),
            (FieldDescriptor::RealClosed, "-1") => Some(SquareClassToken::Sign(-1)),
            (FieldDescriptor::Finite { .. }, "sq") => Some(SquareClassToken::Square),
            (FieldDescriptor::Finite { .. }, "nonsq") => Some(SquareClassToken::NonSquare),
            (FieldDescriptor::QuadraticallyClosed, "sq") => Some(SquareClassToken::Unique),
            _ => None,
        };
        match parsed {
            Some(token) => SquareClass::new(field, token),
            None => Err(Error::InvalidSquareClass {
                field: field.to_string(),
                token: token.into(),
            }),
        }
    }

    /// The square class of a nonzero integer viewed in the field.
    ///
    /// Over F_{p^e} the integer is reduced mod p and classified by the Euler
    /// criterion n^((q-1)/2) = 1 in F_q.
    pub fn of_integer(field: FieldDescriptor, n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSquareClass {
                field: field.to_string(),
                token: "0".into(),
            });
        }
        let token = match field {
            FieldDescriptor::QuadraticallyClosed => SquareClassToken::Unique,
            FieldDescriptor::RealClosed => SquareClassToken::Sign(if n > 0 { 1 } else { -1 }),
            FieldDescriptor::Finite { q } => {
                let p = prime_power_base(q).expect("validated at construction");
                let r = n.rem_euclid(p as i64) as u64;
                if r == 0 {
                    return Err(Error::InvalidSquareClass {
                        field: field.to_string(),
                        token: format!("{n} (not a unit)"),
                    });
                }
                if is_square_in_fq(r, p, q) {
                    SquareClassToken::Square
                } else {
                    SquareClassToken::NonSquare
                }
            }
        };
        Ok(SquareClass { field, token })
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn token(&self) -> SquareClassToken {
        self.token
    }

    pub fn is_one(&self) -> bool {
        *self == SquareClass::one(self.field)
    }

    /// Product of square classes.
    pub fn product(&self, other: &SquareClass) -> Result<Self> {
        self.field.check_same(&other.field)?;
        let token = match (self.token, other.token) {
            (SquareClassToken::Unique, SquareClassToken::Unique) => SquareClassToken::Unique,
            (SquareClassToken::Sign(a), SquareClassToken::Sign(b)) => SquareClassToken::Sign(a * b),
            (SquareClassToken::Square, t) | (t, SquareClassToken::Square) => t,
            (SquareClassToken::NonSquare, SquareClassToken::NonSquare) => SquareClassToken::Square,
            _ => unreachable!("tokens validated against a common field"),
        };
        Ok(SquareClass {
            field: self.field,
            token,
        })
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.token {
            SquareClassToken::Unique | SquareClassToken::Square => write!(f, "sq"),
            SquareClassToken::Sign(s) => write!(f, "{}", if s > 0 { "+1" } else { "-1" }),
            SquareClassToken::NonSquare => write!(f, "nonsq"),
        }
    }
}

/// Euler criterion for an element of the prime subfield of F_q, q = p^e.
fn is_square_in_fq(n: u64, p: u64, q: u64) -> bool {
    // n^((q-1)/2) in F_q for n in F_p: reduce the exponent mod ord(n) | p-1.
    let e = ((q - 1) / 2) % (p - 1);
    mod_pow(n, e, p) == 1
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc: u128 = 1;
    let m = modulus as u128;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// If `q` is a prime power p^e (e >= 1), return p.
pub(crate) fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    // Small factor search covers every exponent e >= 2 with p <= 10^6;
    // beyond that only e <= 3 is possible within u64, handled via roots.
    let mut d = 2u64;
    while d <= 1_000_000 && d.saturating_mul(d) <= q {
        if q.is_multiple_of(d) {
            let mut m = q;
            while m.is_multiple_of(d) {
                m /= d;
            }
            return (m == 1 && is_prime_u64(d)).then_some(d);
        }
        d += 1;
    }
    if is_prime_u64(q) {
        return Some(q);
    }
    for e in [2u32, 3] {
        if let Some(r) = integer_root(q, e) {
            if r.checked_pow(e) == Some(q) && is_prime_u64(r) {
                return Some(r);
            }
        }
    }
    None
}

fn integer_root(q: u64, e: u32) -> Option<u64> {
    let mut r = (q as f64).powf(1.0 / e as f64).round() as u64;
    // float round-off guard
    while r > 1 && r.checked_pow(e).map(|v| v > q).unwrap_or(true) {
        r -= 1;
    }
    while r.checked_pow(e).map(|v| v < q).unwrap_or(false) {
        r += 1;
    }
    (r.checked_pow(e) == Some(q)).then_some(r)
}

/// Deterministic Miller-Rabin for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
