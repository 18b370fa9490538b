use crate::error::{Error, Result};
use crate::polyrat::{Poly2, RatFun2};

/// `S(12…n)` from the `B_n` recursion:
/// `B_2 = t x (1-x)^2`, `B_{n+1} = t x^{n+1} B_n + t x (1-x)^n (1 - x^n)`,
/// `S = t^n x^{n(n+1)/2} / ((1-x)^n - B_n)`.
pub fn closed_form_increasing(n: u32) -> Result<RatFun2> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("n = {n}, need n >= 2")));
    }
    let omx = Poly2::one_minus_x();
    let mut b = Poly2::monomial(1, 1, 1) * omx.pow(2);
    for k in 2..n {
        b = Poly2::monomial(1, 1, k + 1) * b + Poly2::monomial(1, 1, 1) * omx.pow(k) * (Poly2::one() - Poly2::x().pow(k));
    }
    RatFun2::new(Poly2::monomial(1, n, n * (n + 1) / 2), omx.pow(n) - b)
}

/// `S(1^k b^l) = t^{k+l} x^{k+bl} / ((1-x)^{k+1} D)` with
/// `D = (t x^b)^{l-1} (1 - t x [b-1]_x) + (1-x-tx) Σ_{i=0}^{l-2} (1-x)^i (t x^b)^{l-2-i}`.
pub fn closed_form_one_k_b_l(k: u32, b: u32, l: u32) -> Result<RatFun2> {
    if b < 2 || l < 1 {
        return Err(Error::InvalidParameter(format!("need b >= 2 and l >= 1, got b = {b}, l = {l}")));
    }
    let omx = Poly2::one_minus_x();
    let txb = Poly2::monomial(1, 1, b);
    let mut d = txb.pow(l - 1) * (Poly2::one() - Poly2::monomial(1, 1, 1) * Poly2::q_integer(b - 1));
    let mut sum = Poly2::zero();
    for i in 0..l.saturating_sub(1) {
        sum = sum + omx.pow(i) * txb.pow(l - 2 - i);
    }
    d = d + (&omx - &Poly2::monomial(1, 1, 1)) * sum;
    RatFun2::new(Poly2::monomial(1, k + l, k + b * l), omx.pow(k + 1) * d)
}
