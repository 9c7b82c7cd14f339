//! Cyclotomic polynomials, homogeneous values, p-adic valuation rules,
//! primitive prime divisors, and the contribution bounds used by the
//! order analysis.
//!
//! Polynomials are computed by the exact-division recurrence
//! `x^n - 1 = prod_{d | n} Phi_d(x)`; a small memo table keeps repeated
//! indices cheap and is invisible to callers.

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{factorize, is_prime_u64};

/// Dense integer polynomial, coefficients lowest degree first, with no
/// trailing zero (the zero polynomial is the empty vector).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// x^n - 1.
    pub fn power_minus_one(n: u32) -> Self {
        let mut coeffs = vec![BigInt::zero(); n as usize + 1];
        coeffs[0] = -BigInt::one();
        coeffs[n as usize] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        if self.coeffs.is_empty() {
            0
        } else {
            self.coeffs.len() - 1
        }
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial { coeffs: Vec::new() };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    /// Exact division; None when the divisor does not divide evenly
    /// over the integers.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial { coeffs: Vec::new() });
        }
        if self.coeffs.len() < divisor.coeffs.len() {
            return None;
        }
        let lead = divisor.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - divisor.coeffs.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = rem[k + divisor.coeffs.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = c.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::from_coeffs(quot))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Homogeneous value `b^deg * P(a/b)`.
    pub fn eval_homogeneous(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let deg = self.degree();
        let mut acc = BigInt::zero();
        let mut b_pow = BigInt::one();
        // sum c_i a^i b^{deg - i}, Horner in a with a running power of b.
        for i in (0..=deg).rev() {
            acc = acc * a + self.coeff(i) * &b_pow;
            if i > 0 {
                b_pow *= b;
            }
        }
        acc
    }
}

/// Euler's totient via the factorization of n.
pub fn euler_totient(n: u64) -> u64 {
    assert!(n >= 1, "totient requires n >= 1");
    let mut phi = 1u64;
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut pk = 1u64;
            m /= p;
            while m.is_multiple_of(p) {
                m /= p;
                pk *= p;
            }
            phi *= pk * (p - 1);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        phi *= m - 1;
    }
    phi
}

/// Sorted list of divisors of n >= 1.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 1u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

fn cyclotomic_cache() -> &'static Mutex<BTreeMap<u32, IntPolynomial>> {
    static CACHE: OnceLock<Mutex<BTreeMap<u32, IntPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The n-th cyclotomic polynomial, exact integer coefficients.
pub fn cyclotomic_polynomial(n: u32) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be >= 1");
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let result = if n == 1 {
        IntPolynomial::from_coeffs(vec![-BigInt::one(), BigInt::one()])
    } else {
        let mut quotient = IntPolynomial::power_minus_one(n);
        for d in divisors(n) {
            if d < n {
                let phi_d = cyclotomic_polynomial(d);
                quotient = quotient
                    .div_exact(&phi_d)
                    .expect("cyclotomic recurrence divides exactly");
            }
        }
        quotient
    };
    debug_assert_eq!(result.degree() as u64, euler_totient(u64::from(n)));
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(n, result.clone());
    result
}

/// Homogeneous cyclotomic value `Phi_n(a, b) = b^phi(n) Phi_n(a/b)`.
pub fn cyclotomic_value(n: u32, a: &BigInt, b: &BigInt) -> BigInt {
    cyclotomic_polynomial(n).eval_homogeneous(a, b)
}

/// `Phi_n(q)` at a nonnegative point, as an unsigned integer.
/// Positive for q >= 2; `Phi_1(1) = 0` is rejected by the q >= 2 contract.
pub fn cyclotomic_value_at(n: u32, q: &BigUint) -> BigUint {
    let v = cyclotomic_polynomial(n).eval(&BigInt::from_biguint(Sign::Plus, q.clone()));
    v.to_biguint().expect("cyclotomic value positive for q >= 2")
}

/// Splits `q^d - 1` as the product of `Phi_n(q)` over divisors n of d.
pub fn factor_power_difference(q: &BigUint, d: u32) -> BTreeMap<u32, BigUint> {
    assert!(q >= &BigUint::from(2u32), "requires q >= 2");
    assert!(d >= 1, "requires d >= 1");
    divisors(d)
        .into_iter()
        .map(|n| (n, cyclotomic_value_at(n, q)))
        .collect()
}

/// Inputs for the valuation rules: a prime p, coprime integers a, b with
/// `|a| >= |b| + 1 >= 2` and p dividing neither, and f the multiplicative
/// order of a b^{-1} modulo p.
#[derive(Clone, Debug)]
pub struct ValuationContext {
    p: u64,
    a: i64,
    b: i64,
    f: u32,
}

impl ValuationContext {
    pub fn new(p: u64, a: i64, b: i64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidValuationContext(format!("p = {p} is not prime")));
        }
        let (abs_a, abs_b) = (a.unsigned_abs(), b.unsigned_abs());
        if abs_a.gcd(&abs_b) != 1 {
            return Err(Error::InvalidValuationContext(format!(
                "gcd({a}, {b}) != 1"
            )));
        }
        if !(abs_a > abs_b && abs_b + 1 >= 2) {
            return Err(Error::InvalidValuationContext(format!(
                "need |a| >= |b| + 1 >= 2, got a = {a}, b = {b}"
            )));
        }
        let p_i = p as i64;
        if a.rem_euclid(p_i) == 0 || b.rem_euclid(p_i) == 0 {
            return Err(Error::InvalidValuationContext(format!(
                "p = {p} divides a or b"
            )));
        }
        let residue = mod_div(a.rem_euclid(p_i) as u64, b.rem_euclid(p_i) as u64, p);
        let f = multiplicative_order(residue, p);
        Ok(ValuationContext { p, a, b, f })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    /// Order of `a b^{-1}` modulo p.
    pub fn order_f(&self) -> u32 {
        self.f
    }
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % m as u128) as u64;
        }
        base = (base as u128 * base as u128 % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// a / b modulo prime p.
fn mod_div(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * powmod(b, p - 2, p) as u128 % p as u128) as u64
}

/// Multiplicative order of r modulo prime p (r nonzero mod p).
fn multiplicative_order(r: u64, p: u64) -> u32 {
    debug_assert!(!r.is_multiple_of(p));
    for d in divisors(u32::try_from(p - 1).expect("desk-scale prime")) {
        if powmod(r, u64::from(d), p) == 1 {
            return d;
        }
    }
    unreachable!("order divides p - 1")
}

/// p-adic valuation of the absolute value of a nonzero integer.
fn ord_p(value: &BigInt, p: u64) -> u32 {
    debug_assert!(!value.is_zero());
    let mut m = value.abs().to_biguint().unwrap();
    let big_p = BigUint::from(p);
    let mut e = 0u32;
    while (&m % &big_p).is_zero() {
        m /= &big_p;
        e += 1;
    }
    e
}

fn direct_ord_cyclotomic(ctx: &ValuationContext, n: u32) -> u32 {
    let v = cyclotomic_value(n, &BigInt::from(ctx.a), &BigInt::from(ctx.b));
    ord_p(&v, ctx.p)
}

/// Exact p-adic valuation of `Phi_n(a, b)` following the valuation rules:
/// for odd p the value is nonzero only at n = f p^i, equal to 1 for
/// i >= 1, and computed directly at n = f; for p = 2 the power-of-two
/// rules apply, with the unpinned index computed directly.
pub fn ordp_cyclotomic(ctx: &ValuationContext, n: u32) -> u32 {
    assert!(n >= 1);
    if ctx.p != 2 {
        let f = ctx.f;
        if !n.is_multiple_of(f) {
            return 0;
        }
        let p32 = u32::try_from(ctx.p).expect("desk-scale prime");
        let mut m = n / f;
        let mut i = 0u32;
        while m.is_multiple_of(p32) {
            m /= p32;
            i += 1;
        }
        if m != 1 {
            return 0;
        }
        if i >= 1 {
            1
        } else {
            direct_ord_cyclotomic(ctx, n)
        }
    } else {
        // p = 2 forces f = 1 and a, b odd; exactly one of a - b, a + b
        // is divisible by 4.
        if !n.is_power_of_two() {
            return 0;
        }
        let i = n.trailing_zeros();
        if (ctx.a - ctx.b).rem_euclid(4) == 0 {
            if i >= 1 {
                1
            } else {
                direct_ord_cyclotomic(ctx, 1)
            }
        } else {
            debug_assert_eq!((ctx.a + ctx.b).rem_euclid(4), 0);
            if i == 1 {
                direct_ord_cyclotomic(ctx, 2)
            } else {
                1
            }
        }
    }
}

/// Exact p-adic valuation of `a^n - b^n`: zero when f does not divide n,
/// otherwise `ord_p(a^f - b^f) + ord_p(n)` for odd p, with the usual
/// correction in the p = 2 case (where the even-n valuation picks up
/// both `a - b` and `a + b`).
pub fn ordp_power_difference(ctx: &ValuationContext, n: u32) -> u32 {
    assert!(n >= 1);
    let a = BigInt::from(ctx.a);
    let b = BigInt::from(ctx.b);
    if ctx.p != 2 {
        if !n.is_multiple_of(ctx.f) {
            return 0;
        }
        let base = a.pow(ctx.f) - b.pow(ctx.f);
        ord_p(&base, ctx.p) + ord_small(n, ctx.p)
    } else if n % 2 == 1 {
        ord_p(&(a - b), 2)
    } else {
        ord_p(&(&a - &b), 2) + ord_p(&(a + b), 2) + n.trailing_zeros() - 1
    }
}

fn ord_small(n: u32, p: u64) -> u32 {
    let mut m = u64::from(n);
    let mut e = 0;
    while m % p == 0 {
        m /= p;
        e += 1;
    }
    e
}

/// Smallest prime dividing `Phi_n(a)` but no `Phi_i(a)` with i < n.
/// Absent exactly in the exceptional case n = 6, a = 2.
pub fn primitive_divisor(a: u64, n: u32) -> Result<Option<BigUint>> {
    if a <= 1 || n <= 2 {
        return Err(Error::PrimitiveDivisorDomain { a, n });
    }
    let a_big = BigInt::from(a);
    let one = BigInt::one();
    let value = cyclotomic_value(n, &a_big, &one)
        .to_biguint()
        .expect("positive for a >= 2");
    let earlier: Vec<BigUint> = (1..n)
        .map(|i| {
            cyclotomic_value(i, &a_big, &one)
                .to_biguint()
                .expect("positive for a >= 2")
        })
        .collect();
    let fac = factorize(&value)?;
    for (p, _) in fac.iter() {
        if earlier.iter().all(|v| !(v % p).is_zero()) {
            return Ok(Some(p.clone()));
        }
    }
    Ok(None)
}

/// Which shape of `a` the contribution bound is taken for.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ContributionKind {
    /// a = q or a = -q: bound 2^l (q + 1)^l.
    PlusMinusQ,
    /// a = q^2: bound 4^l (q + 1)^l.
    QSquared,
}

/// Upper bound for a single prime's contribution to
/// `(a - 1)(a^2 - 1) ... (a^l - 1)`.
pub fn contribution_bound(kind: ContributionKind, q: u64, l: u32) -> BigUint {
    let base = match kind {
        ContributionKind::PlusMinusQ => 2u32,
        ContributionKind::QSquared => 4u32,
    };
    BigUint::from(base).pow(l) * BigUint::from(q + 1).pow(l)
}
