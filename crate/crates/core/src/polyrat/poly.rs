use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent pair `(deg_t, deg_x)`.
pub type Monomial = (u32, u32);

/// A polynomial in `ℤ[t, x]`. Zero coefficients are never stored; the zero
/// polynomial is the empty map. Keys are ordered lexicographically with `t`
/// dominant, which is the order used for exact division.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial<C: Into<BigInt>>(c: C, t: u32, x: u32) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((t, x), c);
        }
        Poly2 { terms }
    }

    pub fn t() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// `1 - x`, the denominator of every infinite tail.
    pub fn one_minus_x() -> Self {
        Self::one() - Self::x()
    }

    /// `[k]_x = 1 + x + ... + x^{k-1}`; zero for `k = 0`.
    pub fn q_integer(k: u32) -> Self {
        (0..k).map(|i| Self::monomial(1, 0, i)).fold(Self::zero(), |a, b| a + b)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(it: I) -> Self {
        let mut p = Poly2::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, t: u32, x: u32) -> BigInt {
        self.terms.get(&(t, x)).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0, 0)
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|m| m.0).max().unwrap_or(0)
    }

    pub fn degree_x(&self) -> u32 {
        self.terms.keys().map(|m| m.1).max().unwrap_or(0)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Multiplies by `t^dt x^dx`.
    pub fn shift(&self, dt: u32, dx: u32) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(m, v)| ((m.0 + dt, m.1 + dx), v.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut result = Poly2::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Gcd of all coefficients (nonnegative); zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `c`, which must divide all of them.
    pub fn div_scalar_exact(&self, c: &BigInt) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| {
                    debug_assert!((v % c).is_zero());
                    (*m, v / c)
                })
                .collect(),
        }
    }

    /// Leading term in the lexicographic (`t` first) order.
    fn leading(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self` in
    /// `ℤ[t, x]`. Division by zero yields `None`.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        let (&(dt, dx), dc) = d.leading()?;
        if self.is_zero() {
            return Some(Poly2::zero());
        }
        if d.terms.len() == 1 {
            let mut q = BTreeMap::new();
            for (&(t, x), c) in &self.terms {
                if t < dt || x < dx {
                    return None;
                }
                let (qc, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                q.insert((t - dt, x - dx), qc);
            }
            return Some(Poly2 { terms: q });
        }
        // Dense long division: leading terms are visited in decreasing lex
        // order and each subtraction only touches smaller positions.
        let wx = self.degree_x() as usize + 1;
        let wt = self.degree_t() as usize + 1;
        if (dt as usize) >= wt || (dx as usize) >= wx || wx.saturating_mul(wt) > 1 << 24 {
            return self.div_exact_sparse(d);
        }
        let mut rem: Vec<BigInt> = vec![BigInt::zero(); wx * wt];
        for (&(t, x), c) in &self.terms {
            rem[t as usize * wx + x as usize] = c.clone();
        }
        let divisor: Vec<(usize, usize, &BigInt)> =
            d.terms.iter().map(|(&(t, x), c)| ((dt - t) as usize, x as usize, c)).collect();
        let mut quot = BTreeMap::new();
        for idx in (0..rem.len()).rev() {
            if rem[idx].is_zero() {
                continue;
            }
            let (rt, rx) = (idx / wx, idx % wx);
            if rt < dt as usize || rx < dx as usize {
                return None;
            }
            let (qc, r) = rem[idx].div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let (qt, qx) = (rt - dt as usize, rx - dx as usize);
            for &(back, x, c) in &divisor {
                let pos = (rt - back) * wx + qx + x;
                if x + qx >= wx {
                    return None;
                }
                rem[pos] -= c * &qc;
            }
            quot.insert((qt as u32, qx as u32), qc);
        }
        Some(Poly2 { terms: quot })
    }

    fn div_exact_sparse(&self, d: &Poly2) -> Option<Poly2> {
        let (&(dt, dx), dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some((&(rt, rx), rc)) = rem.leading() {
            if rt < dt || rx < dx {
                return None;
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            let (qt, qx) = (rt - dt, rx - dx);
            for (&(t, x), c) in &d.terms {
                rem.add_term((t + qt, x + qx), -(c * &qc));
            }
            quot.add_term((qt, qx), qc);
        }
        Some(quot)
    }

    /// Evaluates at integer arguments.
    pub fn eval(&self, t: &BigInt, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            acc += c * num_traits::pow(t.clone(), a as usize) * num_traits::pow(x.clone(), b as usize);
        }
        acc
    }

    /// Evaluation modulo a prime, used for cheap inequality fingerprints.
    pub fn eval_mod(&self, t: u64, x: u64, p: u64) -> u64 {
        let p128 = p as u128;
        let mut acc: u128 = 0;
        for (&(a, b), c) in &self.terms {
            let cm = c.mod_floor(&BigInt::from(p));
            let cm: u64 = cm.try_into().expect("reduced mod p");
            let term = (cm as u128) * pow_mod(t, a as u64, p) as u128 % p128 * pow_mod(x, b as u64, p) as u128 % p128;
            acc = (acc + term) % p128;
        }
        acc as u64
    }

    /// Terms in display order: ascending total degree, then degree in `t`.
    pub fn display_terms(&self) -> Vec<(Monomial, BigInt)> {
        let mut v: Vec<(Monomial, BigInt)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by_key(|((t, x), _)| (t + x, *t));
        v
    }

    /// Least term in display order (the constant term when present).
    pub fn least_display_term(&self) -> Option<(Monomial, BigInt)> {
        self.terms
            .iter()
            .min_by_key(|((t, x), _)| (t + x, *t))
            .map(|(m, c)| (*m, c.clone()))
    }

    pub(crate) fn mul_ref(&self, other: &Poly2) -> Poly2 {
        if self.is_zero() || other.is_zero() {
            return Poly2::zero();
        }
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        if small.terms.len() == 1 {
            let (&(a, b), c) = small.terms.iter().next().unwrap();
            if c.is_one() {
                return large.shift(a, b);
            }
            return Poly2 { terms: large.terms.iter().map(|(&(t, x), v)| ((t + a, x + b), v * c)).collect() };
        }
        // Dense accumulation over the exponent box of the product.
        let wx = (self.degree_x() + other.degree_x() + 1) as usize;
        let wt = (self.degree_t() + other.degree_t() + 1) as usize;
        if wx.saturating_mul(wt) <= 1 << 22 {
            let mut acc: Vec<BigInt> = vec![BigInt::zero(); wx * wt];
            for (&(a, b), c) in &small.terms {
                for (&(t, x), d) in &large.terms {
                    acc[(a + t) as usize * wx + (b + x) as usize] += c * d;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (((i / wx) as u32, (i % wx) as u32), c))
                .collect();
            return Poly2 { terms };
        }
        let mut out = Poly2::zero();
        for (&(a, b), c) in &small.terms {
            for (&(t, x), d) in &large.terms {
                out.add_term((a + t, b + x), c * d);
            }
        }
        out
    }
}

fn pow_mod(base: u64, mut e: u64, p: u64) -> u64 {
    let mut r: u128 = 1;
    let mut b = (base % p) as u128;
    let p = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u64
}

/// `(p·a - f·b) / prev`, the update step of fraction-free elimination.
/// Returns `None` when `prev` does not divide the difference. Works on a
/// dense `i128` grid when every intermediate value fits, otherwise on
/// `BigInt`s.
pub fn cross_diff_div(p: &Poly2, a: &Poly2, f: &Poly2, b: &Poly2, prev: &Poly2) -> Option<Poly2> {
    if let Some(small) = small::cross_diff_div(p, a, f, b, prev) {
        return small;
    }
    let mut v = if a.is_zero() || p.is_zero() { Poly2::zero() } else { p * a };
    if !f.is_zero() && !b.is_zero() {
        v = v - f * b;
    }
    if prev.is_one() {
        Some(v)
    } else {
        v.div_exact(prev)
    }
}

mod small {
    use super::{Monomial, Poly2};
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    fn to_small(p: &Poly2) -> Option<Vec<(Monomial, i128)>> {
        p.terms.iter().map(|(m, c)| c.to_i64().map(|v| (*m, v as i128))).collect()
    }

    /// Outer `None`: the small path cannot decide (overflow or huge grid).
    /// Inner `None`: not divisible.
    pub(super) fn cross_diff_div(p: &Poly2, a: &Poly2, f: &Poly2, b: &Poly2, prev: &Poly2) -> Option<Option<Poly2>> {
        let (p, a, f, b, d) = (to_small(p)?, to_small(a)?, to_small(f)?, to_small(b)?, to_small(prev)?);
        let prods = [(&p, &a, 1i128), (&f, &b, -1i128)];
        let mut wt = 1usize;
        let mut wx = 1usize;
        for (l, r, _) in prods {
            if l.is_empty() || r.is_empty() {
                continue;
            }
            let lt = l.iter().map(|m| m.0 .0).max().unwrap() + r.iter().map(|m| m.0 .0).max().unwrap();
            let lx = l.iter().map(|m| m.0 .1).max().unwrap() + r.iter().map(|m| m.0 .1).max().unwrap();
            wt = wt.max(lt as usize + 1);
            wx = wx.max(lx as usize + 1);
        }
        if wt.saturating_mul(wx) > 1 << 22 {
            return None;
        }
        let mut acc = vec![0i128; wt * wx];
        for (l, r, sign) in prods {
            for &((lt, lx), lc) in l {
                for &((rt, rx), rc) in r {
                    let i = (lt + rt) as usize * wx + (lx + rx) as usize;
                    acc[i] = acc[i].checked_add(lc.checked_mul(rc)? * sign)?;
                }
            }
        }
        let (&((dt, dx), dc), _) = d.split_last()?;
        let (dt, dx) = (dt as usize, dx as usize);
        let mut quot = Vec::new();
        if d.len() == 1 && dt == 0 && dx == 0 && dc == 1 {
            quot = acc.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (i, *c)).collect();
        } else {
            for idx in (0..acc.len()).rev() {
                let c = acc[idx];
                if c == 0 {
                    continue;
                }
                let (rt, rx) = (idx / wx, idx % wx);
                if rt < dt || rx < dx || c % dc != 0 {
                    return Some(None);
                }
                let q = c / dc;
                let (qt, qx) = (rt - dt, rx - dx);
                for &((t, x), e) in &d {
                    let (pt, px) = (t as usize + qt, x as usize + qx);
                    if px >= wx {
                        return Some(None);
                    }
                    let j = pt * wx + px;
                    acc[j] = acc[j].checked_sub(e.checked_mul(q)?)?;
                }
                quot.push((qt * wx + qx, q));
            }
        }
        let terms = quot
            .into_iter()
            .map(|(i, c)| (((i / wx) as u32, (i % wx) as u32), BigInt::from(c)))
            .collect();
        Some(Some(Poly2 { terms }))
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, ((t, x), c)) in self.display_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || (t == 0 && x == 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("t", t), ("x", x)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        self.mul_ref(rhs)
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: Poly2) -> Poly2 {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly2> for Poly2 {
            type Output = Poly2;
            fn $method(self, rhs: &Poly2) -> Poly2 {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}
