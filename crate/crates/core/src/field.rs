//! Exact ground fields: the rationals and prime fields GF(p).
//!
//! Field arithmetic is exposed through the [`Field`] trait so every algebraic
//! structure in the crate is generic over the coefficient field. Elements are
//! plain values; operations take the field as context (needed for the modulus).

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Which field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Rationals,
    Prime(u32),
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Rationals => write!(f, "Q"),
            FieldDescriptor::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Text syntax: `a/b` or `a` over Q; an integer literal reduced mod p over GF(p).
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// Size heuristic used to pick elimination pivots; smaller is cheaper.
    fn pivot_cost(&self, a: &Self::Elem) -> u64;
    fn characteristic(&self) -> u64;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sign(&self, negative: bool) -> Self::Elem {
        if negative {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }

    /// `(-1)^k`.
    fn parity_sign(&self, k: usize) -> Self::Elem {
        self.sign(k % 2 == 1)
    }
}

// ---------------------------------------------------------------------------
// Rationals

/// An exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in `i64` are kept inline;
/// anything larger spills to a heap-allocated big rational. The two variants
/// never overlap, so derived equality and hashing are canonical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Rational {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn fits(v: i128) -> bool {
    v > i64::MIN as i128 && v <= i64::MAX as i128
}

impl Rational {
    pub fn integer(n: i64) -> Self {
        Rational::from_i128(n as i128, 1)
    }

    pub fn new(num: i64, den: i64) -> Option<Self> {
        if den == 0 {
            return None;
        }
        Some(Rational::from_i128(num as i128, den as i128))
    }

    fn from_i128(num: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        if fits(n) && fits(d) {
            Rational::Small(n as i64, d as i64)
        } else {
            Rational::from_big(BigRational::new(BigInt::from(n), BigInt::from(d)))
        }
    }

    fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN && d != i64::MIN {
                return Rational::Small(n, d);
            }
        }
        Rational::Big(Box::new(r))
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rational::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rational::Big(b) => (**b).clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small(0, _))
    }

    pub fn numer_denom_strings(&self) -> (String, String) {
        match self {
            Rational::Small(n, d) => (n.to_string(), d.to_string()),
            Rational::Big(b) => (b.numer().to_string(), b.denom().to_string()),
        }
    }

    fn bits(&self) -> u64 {
        match self {
            Rational::Small(n, d) => (64 - n.unsigned_abs().leading_zeros()) as u64 + (64 - d.leading_zeros()) as u64,
            Rational::Big(b) => b.numer().bits() + b.denom().bits(),
        }
    }

    pub fn add(&self, other: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == d {
                return Rational::from_i128(a + c, b);
            }
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let (Some(n), Some(den)) = (x.checked_add(y), b.checked_mul(d)) {
                    return Rational::from_i128(n, den);
                }
            }
        }
        Rational::from_big(self.to_big() + other.to_big())
    }

    pub fn neg(&self) -> Rational {
        match self {
            Rational::Small(n, d) => Rational::Small(-n, *d),
            Rational::Big(b) => Rational::from_big(-(**b).clone()),
        }
    }

    pub fn sub(&self, other: &Rational) -> Rational {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Rational) -> Rational {
        if let (Rational::Small(a, b), Rational::Small(c, d)) = (self, other) {
            if *a == 0 || *c == 0 {
                return Rational::Small(0, 1);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Rational::from_i128(a * c, b * d);
        }
        Rational::from_big(self.to_big() * other.to_big())
    }

    pub fn inv(&self) -> Option<Rational> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small(n, d) => Rational::from_i128(*d as i128, *n as i128),
            Rational::Big(b) => Rational::from_big(b.recip()),
        })
    }

    pub fn parse(s: &str) -> Result<Rational> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = den.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Rational::from_big(BigRational::new(n, d)))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.numer_denom_strings();
        if d == "1" {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Rationals
    }
    fn zero(&self) -> Rational {
        Rational::Small(0, 1)
    }
    fn one(&self) -> Rational {
        Rational::Small(1, 1)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a.add(b)
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a.sub(b)
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a.mul(b)
    }
    fn neg(&self, a: &Rational) -> Rational {
        a.neg()
    }
    fn inv(&self, a: &Rational) -> Option<Rational> {
        a.inv()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::integer(n)
    }
    fn parse(&self, s: &str) -> Result<Rational> {
        Rational::parse(s)
    }
    fn format(&self, a: &Rational) -> String {
        a.to_string()
    }
    fn pivot_cost(&self, a: &Rational) -> u64 {
        a.bits()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

// ---------------------------------------------------------------------------
// Prime fields

/// GF(p) for a prime p < 2^31. Elements are residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::Input(format!("modulus {p} outside [2, 2^31)")));
        }
        if !is_prime(p) {
            return Err(Error::Input(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, n: i64) -> u32 {
        n.rem_euclid(self.p as i64) as u32
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= n as u64 {
        if (n as u64).is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Prime(self.p)
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + (self.p - *b) as u64;
        (s % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // Fermat: a^(p-2)
        let (mut base, mut exp, mut acc) = (*a as u64, self.p as u64 - 2, 1u64);
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u32)
    }
    fn from_i64(&self, n: i64) -> u32 {
        self.reduce(n)
    }
    fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("invalid integer literal {s:?} for GF({})", self.p)))?;
        let r = n.mod_floor(&BigInt::from(self.p));
        Ok(r.to_u32().expect("residue fits"))
    }
    fn format(&self, a: &u32) -> String {
        a.to_string()
    }
    fn pivot_cost(&self, _a: &u32) -> u64 {
        0
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
}

/// Parse a rational literal and map it into any field (used for structure
/// constants written over Q but loaded over GF(p)).
pub fn rational_into<F: Field>(field: &F, r: &Rational) -> Result<F::Elem> {
    let (n, d) = r.numer_denom_strings();
    let n = field.parse(&n)?;
    let d = field.parse(&d)?;
    let dinv = field.inv(&d).ok_or_else(|| Error::Input(format!("denominator of {r} vanishes in {}", field.descriptor())))?;
    Ok(field.mul(&n, &dinv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rationals_are_canonical() {
        let q = Rationals;
        let a = Rational::new(2, -4).unwrap();
        assert_eq!(a, Rational::new(-1, 2).unwrap());
        assert_eq!(q.add(&a, &Rational::new(1, 2).unwrap()), q.zero());
        assert_eq!(q.parse("6/-8").unwrap().to_string(), "-3/4");
        assert!(q.parse("1/0").is_err());
    }

    #[test]
    fn rational_overflow_spills_to_big_and_back() {
        let q = Rationals;
        let big = Rational::integer(i64::MAX);
        let sq = q.mul(&big, &big);
        assert!(matches!(sq, Rational::Big(_)));
        let back = q.mul(&sq, &q.inv(&big).unwrap());
        assert_eq!(back, big);
    }

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.parse("-1").unwrap(), 6);
        assert_eq!(f.parse("15").unwrap(), 1);
        assert_eq!(f.mul(&3, &f.inv(&3).unwrap()), 1);
        assert!(PrimeField::new(8).is_err());
        assert!(PrimeField::new(1 << 31).is_err());
    }

    #[test]
    fn rational_into_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let r = Rational::new(1, 2).unwrap();
        assert_eq!(rational_into(&f, &r).unwrap(), 4);
        assert!(rational_into(&f, &Rational::new(1, 7).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn rational_field_laws(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let q = Rationals;
            let x = Rational::new(a, b).unwrap();
            let y = Rational::new(c, d).unwrap();
            prop_assert_eq!(q.sub(&q.add(&x, &y), &y), x.clone());
            if !y.is_zero() {
                prop_assert_eq!(q.mul(&q.mul(&x, &y), &q.inv(&y).unwrap()), x);
            }
        }

        #[test]
        fn prime_field_inverse(a in 1u32..1_000_003u32) {
            let f = PrimeField::new(1_000_003).unwrap();
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
    }
}
