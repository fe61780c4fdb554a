//! Exact arithmetic in Grothendieck-Witt rings of the supported fields.
//!
//! Elements are stored in canonical form, which is a complete invariant:
//! rank over a quadratically closed field, (rank, signature) over a real
//! closed field, and (rank, discriminant bit) over F_q with q odd. All ring
//! operations act directly on these invariants.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, SquareClass, SquareClassToken};

/// An element of GW(k) in canonical form.
///
/// `sig` is meaningful only over the real closed field (zero otherwise) and
/// `disc` only over finite fields (false otherwise), so that plain `==` on
/// the struct is equality in the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GwElement {
    field: FieldDescriptor,
    rank: i64,
    sig: i64,
    disc: bool,
}

impl GwElement {
    pub fn zero(field: FieldDescriptor) -> Self {
        GwElement {
            field,
            rank: 0,
            sig: 0,
            disc: false,
        }
    }

    /// The rank-one form `<a>` for a square class `a`.
    pub fn form(class: SquareClass) -> Self {
        let field = class.field();
        match class.token() {
            SquareClassToken::Unique => GwElement {
                field,
                rank: 1,
                sig: 0,
                disc: false,
            },
            SquareClassToken::Sign(s) => GwElement {
                field,
                rank: 1,
                sig: s as i64,
                disc: false,
            },
            SquareClassToken::Square => GwElement {
                field,
                rank: 1,
                sig: 0,
                disc: false,
            },
            SquareClassToken::NonSquare => GwElement {
                field,
                rank: 1,
                sig: 0,
                disc: true,
            },
        }
    }

    /// `<1>`, the multiplicative unit.
    pub fn one(field: FieldDescriptor) -> Self {
        GwElement::form(SquareClass::one(field))
    }

    /// `<n>` for a nonzero integer `n`.
    pub fn form_of_integer(field: FieldDescriptor, n: i64) -> Result<Self> {
        Ok(GwElement::form(SquareClass::of_integer(field, n)?))
    }

    /// The hyperbolic plane `H = <1> + <-1>`.
    pub fn hyperbolic(field: FieldDescriptor) -> Self {
        GwElement::one(field) + GwElement::form_of_integer(field, -1).expect("-1 is a unit")
    }

    /// `n_eps = sum_{i=1..n} <(-1)^(i+1)>`; the empty sum for n = 0.
    pub fn n_epsilon(n: u64, field: FieldDescriptor) -> Self {
        let mut acc = GwElement::zero(field);
        let minus_one = GwElement::form_of_integer(field, -1).expect("-1 is a unit");
        for i in 1..=n {
            acc = acc + if i % 2 == 1 { GwElement::one(field) } else { minus_one };
        }
        acc
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    /// Signature; only meaningful over the real closed field.
    pub fn signature(&self) -> i64 {
        self.sig
    }

    /// Discriminant bit (coefficient of `<u>` mod 2); only meaningful over F_q.
    pub fn disc_bit(&self) -> bool {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.sig == 0 && !self.disc
    }

    /// Units of GW(k) are exactly the forms `+-<a>`.
    pub fn is_unit(&self) -> bool {
        match self.field {
            FieldDescriptor::QuadraticallyClosed => self.rank.abs() == 1,
            FieldDescriptor::RealClosed => self.rank.abs() == 1 && self.sig.abs() == 1,
            FieldDescriptor::Finite { .. } => self.rank.abs() == 1,
        }
    }

    /// Multiplicative inverse of a unit. Every unit squares to `<1>`, so a
    /// unit is its own inverse.
    pub fn unit_inverse(&self) -> Option<Self> {
        self.is_unit().then_some(*self)
    }

    pub fn scalar_mul(&self, n: i64) -> Self {
        let mut out = *self;
        out.rank *= n;
        out.sig *= n;
        out.disc = self.disc && n % 2 != 0;
        out
    }

    pub(crate) fn from_invariants(field: FieldDescriptor, rank: i64, sig: i64, disc: bool) -> Self {
        let el = GwElement {
            field,
            rank,
            sig,
            disc,
        };
        debug_assert!(el.invariants_consistent());
        el
    }

    fn invariants_consistent(&self) -> bool {
        match self.field {
            FieldDescriptor::QuadraticallyClosed => self.sig == 0 && !self.disc,
            FieldDescriptor::RealClosed => (self.rank - self.sig) % 2 == 0 && !self.disc,
            FieldDescriptor::Finite { .. } => self.sig == 0,
        }
    }
}

impl Add for GwElement {
    type Output = GwElement;
    fn add(self, rhs: GwElement) -> GwElement {
        assert_eq!(self.field, rhs.field, "GW elements over different fields");
        GwElement {
            field: self.field,
            rank: self.rank + rhs.rank,
            sig: self.sig + rhs.sig,
            disc: self.disc ^ rhs.disc,
        }
    }
}

impl Sub for GwElement {
    type Output = GwElement;
    fn sub(self, rhs: GwElement) -> GwElement {
        self + (-rhs)
    }
}

impl Neg for GwElement {
    type Output = GwElement;
    fn neg(self) -> GwElement {
        GwElement {
            field: self.field,
            rank: -self.rank,
            sig: -self.sig,
            disc: self.disc,
        }
    }
}

impl Mul for GwElement {
    type Output = GwElement;
    fn mul(self, rhs: GwElement) -> GwElement {
        assert_eq!(self.field, rhs.field, "GW elements over different fields");
        GwElement {
            field: self.field,
            rank: self.rank * rhs.rank,
            sig: self.sig * rhs.sig,
            // bit of (m<1> + n<u>)(m'<1> + n'<u>) is mn' + nm' = r*c' + r'*c (mod 2)
            disc: (self.rank % 2 != 0 && rhs.disc) ^ (rhs.rank % 2 != 0 && self.disc),
        }
    }
}

impl fmt::Display for GwElement {
    /// Renders the canonical decomposition into rank-one generators, e.g.
    /// `<1> + <-1>` prints as `H` and `(rank 2, sig 2)` as `2<1>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i64, &str)> = match self.field {
            FieldDescriptor::QuadraticallyClosed => vec![(self.rank, "<1>")],
            FieldDescriptor::RealClosed => {
                let a = (self.rank + self.sig) / 2;
                let b = (self.rank - self.sig) / 2;
                if a == b {
                    vec![(a, "H")]
                } else {
                    vec![(a, "<1>"), (b, "<-1>")]
                }
            }
            FieldDescriptor::Finite { .. } => {
                let c = self.disc as i64;
                vec![(self.rank - c, "<1>"), (c, "<u>")]
            }
        };
        let mut first = true;
        for (mult, sym) in terms {
            if mult == 0 {
                continue;
            }
            if first {
                if mult < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if mult < 0 { "-" } else { "+" })?;
            }
            if mult.abs() != 1 {
                write!(f, "{}", mult.abs())?;
            }
            write!(f, "{sym}")?;
            first = false;
        }
        Ok(())
    }
}

/// Canonical record form of a GW element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GwElementRecord {
    pub field: FieldDescriptor,
    pub rank: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sig: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub disc_bit: Option<u8>,
}

impl From<GwElement> for GwElementRecord {
    fn from(x: GwElement) -> Self {
        GwElementRecord {
            field: x.field,
            rank: x.rank,
            sig: x.field.is_real_closed().then_some(x.sig),
            disc_bit: matches!(x.field, FieldDescriptor::Finite { .. }).then_some(x.disc as u8),
        }
    }
}

impl TryFrom<GwElementRecord> for GwElement {
    type Error = Error;
    fn try_from(r: GwElementRecord) -> Result<GwElement> {
        let (sig, disc) = match r.field {
            FieldDescriptor::QuadraticallyClosed => {
                if r.sig.is_some() || r.disc_bit.is_some() {
                    return Err(Error::validation(
                        "gw_element",
                        "sig/disc_bit are not valid over a quadratically closed field",
                    ));
                }
                (0, false)
            }
            FieldDescriptor::RealClosed => {
                let sig = r.sig.ok_or_else(|| Error::validation("gw_element.sig", "missing"))?;
                if (r.rank - sig) % 2 != 0 {
                    return Err(Error::validation(
                        "gw_element.sig",
                        "rank and signature must have equal parity",
                    ));
                }
                (sig, false)
            }
            FieldDescriptor::Finite { .. } => {
                let bit = r
                    .disc_bit
                    .ok_or_else(|| Error::validation("gw_element.disc_bit", "missing"))?;
                if bit > 1 {
                    return Err(Error::validation("gw_element.disc_bit", "must be 0 or 1"));
                }
                (0, bit == 1)
            }
        };
        Ok(GwElement::from_invariants(r.field, r.rank, sig, disc))
    }
}

/// A factor of a finite etale algebra over the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaleFactor {
    Rational,
    Quadratic(SquareClass),
}

impl EtaleFactor {
    pub fn degree(&self) -> i64 {
        match self {
            EtaleFactor::Rational => 1,
            EtaleFactor::Quadratic(_) => 2,
        }
    }
}

/// A finite etale algebra presented as a product of the base field and
/// quadratic extensions k(sqrt(d)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaleAlgebra {
    field: FieldDescriptor,
    factors: Vec<EtaleFactor>,
}

impl EtaleAlgebra {
    pub fn new(field: FieldDescriptor, factors: Vec<EtaleFactor>) -> Result<Self> {
        for factor in &factors {
            if let EtaleFactor::Quadratic(d) = factor {
                field.check_same(&d.field())?;
                if d.is_one() {
                    return Err(Error::SplitQuadraticFactor);
                }
            }
        }
        Ok(EtaleAlgebra { field, factors })
    }

    pub fn rational(field: FieldDescriptor) -> Self {
        EtaleAlgebra {
            field,
            factors: vec![EtaleFactor::Rational],
        }
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn factors(&self) -> &[EtaleFactor] {
        &self.factors
    }

    pub fn degree(&self) -> i64 {
        self.factors.iter().map(EtaleFactor::degree).sum()
    }
}

/// Euler class of O(d) on the projective line, for even `d`: (d/2) * H.
///
/// Odd degrees are rejected; the splitting the quadratic pipeline relies on
/// exists only for even line bundles.
pub fn euler_class_p1_bundle(d: i64, field: FieldDescriptor) -> Result<GwElement> {
    if d % 2 != 0 {
        return Err(Error::OddDegree(d));
    }
    Ok(GwElement::hyperbolic(field).scalar_mul(d / 2))
}

/// Trace form class of a finite etale algebra: `<1>` per rational factor and
/// `<2> + <2d>` per quadratic factor k(sqrt(d)) (Gram matrix in basis {1, sqrt(d)}).
pub fn trace_form_class(algebra: &EtaleAlgebra) -> GwElement {
    let field = algebra.field();
    let mut acc = GwElement::zero(field);
    for factor in algebra.factors() {
        acc = acc
            + match factor {
                EtaleFactor::Rational => GwElement::one(field),
                EtaleFactor::Quadratic(d) => {
                    let two = SquareClass::of_integer(field, 2).expect("2 is a unit in odd characteristic");
                    let two_d = two.product(d).expect("same field");
                    GwElement::form(two) + GwElement::form(two_d)
                }
            };
    }
    acc
}

/// Quadratic intersection degree: sum over intersection points of
/// `(m_x)_eps * tau_x` with `m_x` the multiplicity and `tau_x` the trace form
/// class of the residue algebra. The empty sum is zero (disjoint curves).
pub fn quadratic_intersection_degree(
    field: FieldDescriptor,
    points: &[(u64, EtaleAlgebra)],
) -> Result<GwElement> {
    let mut acc = GwElement::zero(field);
    for (m, algebra) in points {
        field.check_same(&algebra.field())?;
        acc = acc + GwElement::n_epsilon(*m, field) * trace_form_class(algebra);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(q: u64) -> FieldDescriptor {
        FieldDescriptor::finite(q).unwrap()
    }

    const RC: FieldDescriptor = FieldDescriptor::RealClosed;
    const QC: FieldDescriptor = FieldDescriptor::QuadraticallyClosed;

    #[test]
    fn n_epsilon_small_values() {
        let zero = GwElement::n_epsilon(0, RC);
        assert!(zero.is_zero());
        let two = GwElement::n_epsilon(2, RC);
        assert_eq!((two.rank(), two.signature()), (2, 0));
        assert_eq!(two, GwElement::hyperbolic(RC));
        let three = GwElement::n_epsilon(3, RC);
        assert_eq!((three.rank(), three.signature()), (3, 1));
    }

    #[test]
    fn hyperbolic_invariants() {
        assert_eq!(GwElement::hyperbolic(RC).signature(), 0);
        assert_eq!(GwElement::hyperbolic(QC).rank(), 2);
        let h3 = GwElement::hyperbolic(fq(3));
        // -1 is a nonsquare mod 3, so the disc bit of <1> + <-1> is set
        assert_eq!((h3.rank(), h3.disc_bit()), (2, true));
        let h5 = GwElement::hyperbolic(fq(5));
        assert_eq!((h5.rank(), h5.disc_bit()), (2, false));
    }

    #[test]
    fn euler_class_even_degrees() {
        assert_eq!(euler_class_p1_bundle(2, RC).unwrap(), GwElement::hyperbolic(RC));
        assert_eq!(
            euler_class_p1_bundle(-2, RC).unwrap(),
            -GwElement::hyperbolic(RC)
        );
        assert!(euler_class_p1_bundle(0, RC).unwrap().is_zero());
        assert_eq!(euler_class_p1_bundle(1, RC), Err(Error::OddDegree(1)));
    }

    #[test]
    fn trace_forms() {
        // split algebra: diagonal identity Gram matrix
        let split = EtaleAlgebra::new(RC, vec![EtaleFactor::Rational, EtaleFactor::Rational]).unwrap();
        assert_eq!(trace_form_class(&split), GwElement::one(RC) + GwElement::one(RC));

        // k(sqrt(-1)) over a real closed field: Gram diag(2, -2) = H
        let c = EtaleAlgebra::new(
            RC,
            vec![EtaleFactor::Quadratic(SquareClass::of_integer(RC, -1).unwrap())],
        )
        .unwrap();
        assert_eq!(trace_form_class(&c), GwElement::hyperbolic(RC));

        // F_9 over F_3: Gram diag(2, 2u), disc class 4u ~ u
        let f3 = fq(3);
        let ext = EtaleAlgebra::new(
            f3,
            vec![EtaleFactor::Quadratic(SquareClass::nonsquare(f3).unwrap())],
        )
        .unwrap();
        let t = trace_form_class(&ext);
        assert_eq!((t.rank(), t.disc_bit()), (2, true));
    }

    #[test]
    fn quadratic_factor_must_not_split() {
        assert_eq!(
            EtaleAlgebra::new(RC, vec![EtaleFactor::Quadratic(SquareClass::one(RC))]),
            Err(Error::SplitQuadraticFactor)
        );
    }

    #[test]
    fn intersection_degrees() {
        let pt = |m| (m, EtaleAlgebra::rational(RC));
        assert_eq!(
            quadratic_intersection_degree(RC, &[pt(1)]).unwrap(),
            GwElement::one(RC)
        );
        assert_eq!(
            quadratic_intersection_degree(RC, &[pt(2)]).unwrap(),
            GwElement::hyperbolic(RC)
        );
        let two_points = quadratic_intersection_degree(RC, &[pt(1), pt(1)]).unwrap();
        assert_eq!((two_points.rank(), two_points.signature()), (2, 2));
        assert!(quadratic_intersection_degree(RC, &[]).unwrap().is_zero());
    }

    #[test]
    fn units() {
        assert!(GwElement::one(RC).is_unit());
        assert!(!GwElement::hyperbolic(RC).is_unit());
        let neg_neg_one = -GwElement::form_of_integer(RC, -1).unwrap();
        assert!(neg_neg_one.is_unit());
        // rank 1 but signature -3 is not +-<a>
        let odd = GwElement::from_invariants(RC, 1, -3, false);
        assert!(!odd.is_unit());
        // every unit is its own inverse
        for u in [
            GwElement::one(fq(7)),
            GwElement::form(SquareClass::nonsquare(fq(7)).unwrap()),
            -GwElement::one(fq(7)),
        ] {
            assert_eq!(u * u.unit_inverse().unwrap(), GwElement::one(fq(7)));
        }
    }

    #[test]
    fn hyperbolic_absorption() {
        for field in [RC, QC, fq(3), fq(5)] {
            let h = GwElement::hyperbolic(field);
            let x = GwElement::n_epsilon(3, field) + GwElement::hyperbolic(field);
            assert_eq!(h * x, h.scalar_mul(x.rank()));
        }
    }

    #[test]
    fn record_round_trip() {
        for x in [
            GwElement::hyperbolic(RC),
            GwElement::n_epsilon(5, fq(7)),
            GwElement::zero(QC),
            -GwElement::one(RC),
        ] {
            let rec = GwElementRecord::from(x);
            assert_eq!(GwElement::try_from(rec).unwrap(), x);
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(GwElement::hyperbolic(RC).to_string(), "H");
        assert_eq!((GwElement::one(RC) + GwElement::one(RC)).to_string(), "2<1>");
        assert_eq!((-GwElement::hyperbolic(RC).scalar_mul(2)).to_string(), "-2H");
        assert_eq!(GwElement::zero(QC).to_string(), "0");
        let x = GwElement::n_epsilon(3, fq(3));
        assert_eq!(x.to_string(), "2<1> + <u>");
    }
}
