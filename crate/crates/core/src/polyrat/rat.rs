use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed};

use super::poly::Poly2;
use crate::error::{Error, Result};

/// A quotient of two polynomials in `ℤ[t, x]`.
///
/// Values are kept in a light normal form: the integer content common to
/// numerator and denominator is divided out and the least term of the
/// denominator (in display order) is positive. No polynomial gcd is taken, so
/// two equal functions may have different representations; compare with
/// [`RatFun2::rat_eq`].
#[derive(Clone)]
pub struct RatFun2 {
    num: Poly2,
    den: Poly2,
}

impl RatFun2 {
    pub fn new(num: Poly2, den: Poly2) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly2) -> Self {
        RatFun2 { num: p, den: Poly2::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly2::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly2::one())
    }

    fn normalized(num: Poly2, den: Poly2) -> Self {
        if num.is_zero() {
            return RatFun2 { num, den: Poly2::one() };
        }
        let g = num.content().gcd(&den.content());
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.div_scalar_exact(&g), den.div_scalar_exact(&g)) };
        if den.least_display_term().is_some_and(|(_, c)| c.is_negative()) {
            num = -num;
            den = -den;
        }
        RatFun2 { num, den }
    }

    pub fn num(&self) -> &Poly2 {
        &self.num
    }

    pub fn den(&self) -> &Poly2 {
        &self.den
    }

    pub fn into_parts(self) -> (Poly2, Poly2) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RatFun2) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::normalized(self.num.pow(e), self.den.pow(e))
    }

    /// Equality of rational functions by cross multiplication.
    pub fn rat_eq(&self, other: &RatFun2) -> bool {
        if self.num.is_zero() || other.num.is_zero() {
            return self.num.is_zero() && other.num.is_zero();
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        // A nonzero modular evaluation difference settles inequality cheaply.
        if let (Some(a), Some(b)) = (self.fingerprint(), other.fingerprint()) {
            if a != b {
                return false;
            }
        }
        &self.num * &other.den == &other.num * &self.den
    }

    /// Value modulo a large prime at a fixed pseudo-random point, or `None`
    /// when the denominator vanishes there. Equal functions have equal
    /// fingerprints whenever both are defined.
    pub fn fingerprint(&self) -> Option<u64> {
        const P: u64 = (1 << 61) - 1;
        const T0: u64 = 1_234_567_891_011;
        const X0: u64 = 987_654_321_987;
        let d = self.den.eval_mod(T0, X0, P);
        if d == 0 {
            return None;
        }
        let n = self.num.eval_mod(T0, X0, P);
        Some(mul_mod(n, pow_mod(d, P - 2, P), P))
    }

    /// Removes the factor `f` from numerator and denominator as many times
    /// as it divides both exactly. Cosmetic; never changes the value.
    pub fn cancel_factor(&self, f: &Poly2) -> Self {
        let (mut num, mut den) = (self.num.clone(), self.den.clone());
        if f.is_zero() || num.is_zero() {
            return self.clone();
        }
        loop {
            match (num.div_exact(f), den.div_exact(f)) {
                (Some(n), Some(d)) => {
                    num = n;
                    den = d;
                }
                _ => break,
            }
        }
        Self::normalized(num, den)
    }

    /// Cancels powers of `t`, `x`, `1 - x`, `1 - x - t x` and any extra
    /// candidate factors that divide both sides.
    pub fn simplify_with(&self, extra: &[Poly2]) -> Self {
        let mut r = self.clone();
        let base = [Poly2::t(), Poly2::x(), Poly2::one_minus_x(), Poly2::one_minus_x() - Poly2::t() * Poly2::x()];
        for f in base.iter().chain(extra) {
            r = r.cancel_factor(f);
        }
        r
    }

    pub fn simplify(&self) -> Self {
        self.simplify_with(&[])
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    r
}

impl From<Poly2> for RatFun2 {
    fn from(p: Poly2) -> Self {
        RatFun2::from_poly(p)
    }
}

impl Add for &RatFun2 {
    type Output = RatFun2;
    fn add(self, rhs: &RatFun2) -> RatFun2 {
        if self.den == rhs.den {
            return RatFun2::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFun2::normalized(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun2 {
    type Output = RatFun2;
    fn sub(self, rhs: &RatFun2) -> RatFun2 {
        self + &(-rhs)
    }
}

impl Mul for &RatFun2 {
    type Output = RatFun2;
    fn mul(self, rhs: &RatFun2) -> RatFun2 {
        RatFun2::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFun2 {
    type Output = RatFun2;
    fn neg(self) -> RatFun2 {
        RatFun2 { num: -&self.num, den: self.den.clone() }
    }
}

impl Add for RatFun2 {
    type Output = RatFun2;
    fn add(self, rhs: RatFun2) -> RatFun2 {
        &self + &rhs
    }
}

impl Sub for RatFun2 {
    type Output = RatFun2;
    fn sub(self, rhs: RatFun2) -> RatFun2 {
        &self - &rhs
    }
}

impl Mul for RatFun2 {
    type Output = RatFun2;
    fn mul(self, rhs: RatFun2) -> RatFun2 {
        &self * &rhs
    }
}

impl Neg for RatFun2 {
    type Output = RatFun2;
    fn neg(self) -> RatFun2 {
        -&self
    }
}

/// Renders in the expression grammar accepted by
/// [`parse_expr`](super::expr::parse_expr): `(num)/(den)` with both sides
/// expanded, or just the numerator when the denominator is `1`.
impl fmt::Display for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let n = self.num.to_string();
        if self.num.num_terms() == 1 && !n.starts_with('-') {
            write!(f, "{n}/({})", self.den)
        } else {
            write!(f, "({n})/({})", self.den)
        }
    }
}

impl fmt::Debug for RatFun2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `num / den`; panics on a zero denominator.
pub fn ratio(num: Poly2, den: Poly2) -> RatFun2 {
    RatFun2::new(num, den).expect("nonzero denominator")
}
