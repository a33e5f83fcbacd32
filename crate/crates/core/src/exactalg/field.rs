use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Rationals,
    Prime(u64),
}

/// The coefficient field: either ℚ or a prime field F_p with p ≥ 5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

impl FieldSpec {
    pub const fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    /// F_p. Rejects composites and p < 5 since jets divide by 2 and 3.
    pub fn prime(p: u64) -> Result<Self> {
        if p < 5 {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is too small (need p >= 5)"
            )));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidField(format!(
                "characteristic {p} exceeds 2^32"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec(Kind::Prime(p)))
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some(p),
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self.0, Kind::Prime(_))
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.0 {
            Kind::Rationals => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(n)))),
            Kind::Prime(p) => Scalar(Repr::Fp {
                value: n.rem_euclid(p as i64) as u64,
                modulus: p,
            }),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self.0 {
            Kind::Rationals => Scalar(Repr::Q(BigRational::from_integer(n.clone()))),
            Kind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::residue(r.to_u64().expect("residue fits"), p)
            }
        }
    }

    /// The residue `value mod p` (for ℚ, the integer itself).
    pub fn from_u64(&self, value: u64) -> Scalar {
        match self.0 {
            Kind::Rationals => Scalar(Repr::Q(BigRational::from_integer(BigInt::from(value)))),
            Kind::Prime(p) => Scalar::residue(value % p, p),
        }
    }

    /// `num / den` mapped into the field. `None` when `den` is zero in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return None;
        }
        Some(&self.from_bigint(num) * &d.inv().expect("nonzero"))
    }

    /// All elements of a prime field in residue order; `None` for ℚ.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self.0 {
            Kind::Rationals => None,
            Kind::Prime(p) => Some((0..p).map(move |v| Scalar::residue(v, p))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q` or `Fp:<prime>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldSpec::rationals());
        }
        let p = s
            .strip_prefix("Fp:")
            .ok_or_else(|| Error::InvalidField(format!("`{s}` (expected Q or Fp:<prime>)")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::InvalidField(format!("`{s}` has a non-integer characteristic")))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(n: u64) -> bool {
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

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Q(BigRational),
    Fp { value: u64, modulus: u64 },
}

/// An exact field element: an arbitrary-precision rational or a residue mod p.
///
/// Mixing elements of different fields in one operation is a logic error
/// and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub(crate) fn residue(value: u64, modulus: u64) -> Self {
        debug_assert!(value < modulus);
        Scalar(Repr::Fp { value, modulus })
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Q(_) => FieldSpec::rationals(),
            Repr::Fp { modulus, .. } => FieldSpec(Kind::Prime(*modulus)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_zero(),
            Repr::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_one(),
            Repr::Fp { value, .. } => *value == 1,
        }
    }

    /// Residue in `[0, p)` for prime fields.
    pub fn residue_value(&self) -> Option<u64> {
        match &self.0 {
            Repr::Q(_) => None,
            Repr::Fp { value, .. } => Some(*value),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Q(q) => Some(q),
            Repr::Fp { .. } => None,
        }
    }

    /// An integer representative: the integer itself over ℚ (if integral),
    /// the symmetric residue in `(-p/2, p/2]` over F_p.
    pub fn to_integer(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Q(q) => q.is_integer().then(|| q.to_integer()),
            Repr::Fp { value, modulus } => {
                let v = *value as i64;
                let p = *modulus as i64;
                Some(BigInt::from(if v > p / 2 { v - p } else { v }))
            }
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Q(q) => Scalar(Repr::Q(q.recip())),
            Repr::Fp { value, modulus } => {
                Scalar::residue(pow_mod(*value, modulus - 2, *modulus), *modulus)
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    // p < 2^32, so the product fits in u64
    (a * b) % m
}

fn same_modulus(a: u64, b: u64) -> u64 {
    assert_eq!(a, b, "scalars from different fields");
    a
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a + b)),
            (
                Repr::Fp {
                    value: a,
                    modulus: p,
                },
                Repr::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::residue((a + b) % p, p)
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a - b)),
            (
                Repr::Fp {
                    value: a,
                    modulus: p,
                },
                Repr::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::residue((a + p - b) % p, p)
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Q(a), Repr::Q(b)) => Scalar(Repr::Q(a * b)),
            (
                Repr::Fp {
                    value: a,
                    modulus: p,
                },
                Repr::Fp {
                    value: b,
                    modulus: q,
                },
            ) => {
                let p = same_modulus(*p, *q);
                Scalar::residue(mul_mod(*a, *b, p), p)
            }
            _ => panic!("scalars from different fields"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Q(a) => Scalar(Repr::Q(-a)),
            Repr::Fp { value, modulus } => Scalar::residue((modulus - value) % modulus, *modulus),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    /// Rationals print as `n` or `n/d`; residues print as their symmetric
    /// representative so that `-1` reads as `-1` rather than `p - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Fp { .. } => write!(f, "{}", self.to_integer().expect("residue")),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Q(_) => write!(f, "{self}"),
            Repr::Fp { value, modulus } => write!(f, "{value}_F{modulus}"),
        }
    }
}

impl Scalar {
    pub fn is_negative_representative(&self) -> bool {
        match &self.0 {
            Repr::Q(q) => q.is_negative(),
            Repr::Fp { value, modulus } => *value > modulus / 2,
        }
    }
}
