//! Small finite fields: GF(2), GF(3) and their quadratic extensions GF(4), GF(9).
//!
//! Every field element fits in one byte and is identified with its canonical
//! index `0..q`. For prime fields the index is the residue; for the quadratic
//! extension `F_p[x]/(x^2 + a x + b)` the element `c0 + c1 x` has index
//! `c0 + p * c1`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Scalar type of every matrix, module and complex in the crate.
pub trait Field:
    Copy
    + Eq
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// The prime `p`.
    const CHARACTERISTIC: u32;
    /// Degree over the prime field.
    const DEGREE: u32;
    /// Field size `p^d`.
    const ORDER: u32;

    fn from_index(i: u32) -> Self;
    fn index(self) -> u32;

    /// Multiplicative inverse; `None` for zero.
    fn inv(self) -> Option<Self>;

    /// Coefficients `(a, b)` of the defining polynomial `x^2 + a x + b` for
    /// extension fields.
    fn modulus() -> Option<(u32, u32)> {
        None
    }

    /// Image of an integer under the canonical map `Z -> F`.
    fn from_int(n: i64) -> Self {
        let p = Self::CHARACTERISTIC as i64;
        Self::from_index(n.rem_euclid(p) as u32)
    }

    fn elements() -> Vec<Self> {
        (0..Self::ORDER).map(Self::from_index).collect()
    }

    /// Nonzero elements up to scalar multiples by the prime field are not
    /// needed anywhere; this lists the nonzero elements.
    fn units() -> Vec<Self> {
        (1..Self::ORDER).map(Self::from_index).collect()
    }

    /// Parse a canonical element name (`0`, `1`, `2`, `x`, `x+1`, `2x+2`, ...).
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        Self::elements()
            .into_iter()
            .find(|e| e.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("`{s}` is not an element of GF({})", Self::ORDER)))
    }

    fn is_zero_elem(self) -> bool {
        self.index() == 0
    }
}

/// The prime field `Z/pZ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fp<const P: u8>(u8);

impl<const P: u8> Fp<P> {
    pub const fn new(v: u8) -> Self {
        Fp(v % P)
    }
    pub const fn value(self) -> u8 {
        self.0
    }
}

impl<const P: u8> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u8> Add for Fp<P> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u8> Sub for Fp<P> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u8> Mul for Fp<P> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u16 * rhs.0 as u16) % P as u16) as u8)
    }
}

impl<const P: u8> Neg for Fp<P> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u8> AddAssign for Fp<P> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u8> SubAssign for Fp<P> {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u8> MulAssign for Fp<P> {
    #[inline]
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u8> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u8> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u8> Field for Fp<P> {
    const CHARACTERISTIC: u32 = P as u32;
    const DEGREE: u32 = 1;
    const ORDER: u32 = P as u32;

    #[inline]
    fn from_index(i: u32) -> Self {
        Fp((i % P as u32) as u8)
    }
    #[inline]
    fn index(self) -> u32 {
        self.0 as u32
    }
    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        (1..P).map(Fp).find(|&y| (self * y).0 == 1)
    }
}

/// Quadratic extension `F_p[x]/(x^2 + A x + B)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Quad<const P: u8, const A: u8, const B: u8>(u8);

impl<const P: u8, const A: u8, const B: u8> Quad<P, A, B> {
    pub const fn from_coeffs(c0: u8, c1: u8) -> Self {
        Quad(c0 % P + P * (c1 % P))
    }
    pub const fn coeffs(self) -> (u8, u8) {
        (self.0 % P, self.0 / P)
    }
    /// The class of `x`.
    pub const fn generator() -> Self {
        Quad(P)
    }
}

impl<const P: u8, const A: u8, const B: u8> fmt::Display for Quad<P, A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c0, c1) = self.coeffs();
        match (c0, c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => write!(f, "x"),
            (0, c1) => write!(f, "{c1}x"),
            (c0, 1) => write!(f, "x+{c0}"),
            (c0, c1) => write!(f, "{c1}x+{c0}"),
        }
    }
}

impl<const P: u8, const A: u8, const B: u8> fmt::Debug for Quad<P, A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<const P: u8, const A: u8, const B: u8> Add for Quad<P, A, B> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (a0, a1) = self.coeffs();
        let (b0, b1) = rhs.coeffs();
        Self::from_coeffs((a0 + b0) % P, (a1 + b1) % P)
    }
}

impl<const P: u8, const A: u8, const B: u8> Neg for Quad<P, A, B> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        let (a0, a1) = self.coeffs();
        Self::from_coeffs((P - a0) % P, (P - a1) % P)
    }
}

impl<const P: u8, const A: u8, const B: u8> Sub for Quad<P, A, B> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u8, const A: u8, const B: u8> Mul for Quad<P, A, B> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let p = P as u32;
        let (a0, a1) = self.coeffs();
        let (b0, b1) = rhs.coeffs();
        let (a0, a1, b0, b1) = (a0 as u32, a1 as u32, b0 as u32, b1 as u32);
        // x^2 = -A x - B
        let top = a1 * b1;
        let c0 = a0 * b0 + top * (p - B as u32 % p);
        let c1 = a0 * b1 + a1 * b0 + top * (p - A as u32 % p);
        Self::from_coeffs((c0 % p) as u8, (c1 % p) as u8)
    }
}

impl<const P: u8, const A: u8, const B: u8> AddAssign for Quad<P, A, B> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u8, const A: u8, const B: u8> SubAssign for Quad<P, A, B> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u8, const A: u8, const B: u8> MulAssign for Quad<P, A, B> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u8, const A: u8, const B: u8> Zero for Quad<P, A, B> {
    fn zero() -> Self {
        Quad(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u8, const A: u8, const B: u8> One for Quad<P, A, B> {
    fn one() -> Self {
        Quad(1)
    }
}

impl<const P: u8, const A: u8, const B: u8> Field for Quad<P, A, B> {
    const CHARACTERISTIC: u32 = P as u32;
    const DEGREE: u32 = 2;
    const ORDER: u32 = P as u32 * P as u32;

    fn from_index(i: u32) -> Self {
        Quad((i % Self::ORDER) as u8)
    }
    fn index(self) -> u32 {
        self.0 as u32
    }
    fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        (1..Self::ORDER)
            .map(Self::from_index)
            .find(|&y| (self * y).0 == 1)
    }
    fn modulus() -> Option<(u32, u32)> {
        Some((A as u32, B as u32))
    }
}

/// True when `x^2 + a x + b` has no root in `F_p`.
pub fn quadratic_is_irreducible(p: u32, a: u32, b: u32) -> bool {
    (0..p).all(|t| (t * t + a * t + b) % p != 0)
}

pub type Gf2 = Fp<2>;
pub type Gf3 = Fp<3>;
/// `F_2[x]/(x^2 + x + 1)`.
pub type Gf4 = Quad<2, 1, 1>;
/// `F_3[x]/(x^2 + 1)`.
pub type Gf9 = Quad<3, 0, 1>;

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms<F: Field>() {
        let els = F::elements();
        assert_eq!(els.len() as u32, F::ORDER);
        for &a in &els {
            assert_eq!(a + F::zero(), a);
            assert_eq!(a * F::one(), a);
            assert_eq!(a + (-a), F::zero());
            if a != F::zero() {
                assert_eq!(a * a.inv().unwrap(), F::one());
            }
            for &b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!((a - b) + b, a);
                for &c in &els {
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
        assert!(F::zero().inv().is_none());
        let p = F::CHARACTERISTIC as i64;
        assert_eq!(F::from_int(p), F::zero());
        assert_eq!(F::from_int(-1), -F::one());
    }

    #[test]
    fn field_axioms_exhaustive() {
        check_axioms::<Gf2>();
        check_axioms::<Gf3>();
        check_axioms::<Gf4>();
        check_axioms::<Gf9>();
    }

    #[test]
    fn moduli_are_irreducible() {
        let (a, b) = Gf4::modulus().unwrap();
        assert!(quadratic_is_irreducible(2, a, b));
        let (a, b) = Gf9::modulus().unwrap();
        assert!(quadratic_is_irreducible(3, a, b));
        assert!(!quadratic_is_irreducible(3, 0, 2));
    }

    #[test]
    fn x_squared_in_gf9() {
        let x = Gf9::generator();
        assert_eq!(x * x, Gf9::from_int(2));
        let w = Gf4::generator();
        assert_eq!(w * w, w + Gf4::one());
    }

    #[test]
    fn names_round_trip() {
        for e in Gf9::elements() {
            assert_eq!(Gf9::parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(Gf9::parse("x+1").unwrap(), Gf9::from_coeffs(1, 1));
        assert_eq!(Gf4::parse("x").unwrap(), Gf4::generator());
        assert!(Gf3::parse("3").is_err());
    }
}
