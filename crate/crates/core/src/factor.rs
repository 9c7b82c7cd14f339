//! Exact integer factorization and prime-power bookkeeping.
//!
//! Deterministic throughout: Miller-Rabin with a fixed base set, trial
//! division against a sieved prime table, and Brent's variant of the rho
//! method driven by a seeded xorshift generator. Group orders are not
//! factored blindly; `factor_group_order` first splits them along the
//! cyclotomic factorization of each `q^d - 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::cyclotomic_value_at;
use crate::error::{Error, Result};
use crate::lie::{PrimePowerField, SemisimpleGroup};

/// Default seed for the rho method; reproducible runs by construction.
pub const DEFAULT_RHO_SEED: u64 = 0x73736f7264657273; // "ssorders"

static RHO_SEED: AtomicU64 = AtomicU64::new(DEFAULT_RHO_SEED);

/// Overrides the process-wide rho seed (the CLI `--seed` flag).
pub fn set_rho_seed(seed: u64) {
    RHO_SEED.store(seed, Ordering::Relaxed);
}

pub fn rho_seed() -> u64 {
    RHO_SEED.load(Ordering::Relaxed)
}

/// Limits that keep factorization from running unbounded.
#[derive(Clone, Debug)]
pub struct FactorBudget {
    /// Trial-divide by all primes up to this bound first.
    pub trial_bound: u64,
    /// Refuse inputs with more decimal digits than this.
    pub max_digits: usize,
    /// Rho restarts (fresh polynomial constant) before giving up.
    pub rho_retries: u32,
    /// Iterations per rho attempt.
    pub rho_iterations: u64,
}

impl Default for FactorBudget {
    fn default() -> Self {
        FactorBudget {
            trial_bound: 100_000,
            max_digits: 400,
            rho_retries: 48,
            rho_iterations: 1 << 22,
        }
    }
}

fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let bound = 100_000usize;
        let mut sieve = vec![true; bound + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2usize;
        while i * i <= bound {
            if sieve[i] {
                let mut j = i * i;
                while j <= bound {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        (2..=bound as u64).filter(|&n| sieve[n as usize]).collect()
    })
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64; the base set below is proven
/// sufficient for all inputs under 3.3 * 10^24.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const MR_BASES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Deterministic primality check for arbitrary-precision integers.
///
/// Inputs that fit in 64 bits go through the proven Miller-Rabin base
/// set. Larger inputs use the same fixed witnesses extended to 47, which
/// is exact far beyond the sizes this crate produces.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime together with its exponent in some factorization.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrimePower {
    pub prime: BigUint,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> BigUint {
        self.prime.pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime)
        } else {
            write!(f, "{}^{}", self.prime, self.exponent)
        }
    }
}

/// Map prime -> exponent whose reassembled product is `value`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Factorization {
    factors: BTreeMap<BigUint, u32>,
    value: BigUint,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            factors: BTreeMap::new(),
            value: BigUint::one(),
        }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &BTreeMap<BigUint, u32> {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BigUint, u32)> {
        self.factors.iter().map(|(p, &e)| (p, e))
    }

    /// Multiplies a prime power into the factorization.
    pub fn push_prime_power(&mut self, prime: BigUint, exponent: u32) {
        if exponent == 0 {
            return;
        }
        debug_assert!(is_prime(&prime), "push_prime_power requires a prime");
        self.value *= prime.pow(exponent);
        *self.factors.entry(prime).or_insert(0) += exponent;
    }

    /// Multiplies `other^k` into the factorization.
    pub fn push_pow(&mut self, other: &Factorization, k: u32) {
        for (p, e) in other.iter() {
            self.push_prime_power(p.clone(), e * k);
        }
    }

    /// Reassembles the product from the factor map alone.
    pub fn reassemble(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * p.pow(e))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .iter()
            .map(|(p, e)| PrimePower { prime: p.clone(), exponent: e }.to_string())
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

/// Brent-cycle rho; returns a nontrivial factor of composite odd `n`,
/// or None if this attempt stalls.
fn rho_brent(n: &BigUint, c: &BigUint, max_iter: u64) -> Option<BigUint> {
    let one = BigUint::one();
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let mut y = BigUint::from(2u32);
    let mut r: u64 = 1;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let batch: u64 = 128;
    let mut used: u64 = 0;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = (&y * &y + c) % n;
        }
        let mut k: u64 = 0;
        while k < r && g == one {
            ys = y.clone();
            let m = batch.min(r - k);
            for _ in 0..m {
                y = (&y * &y + c) % n;
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            used += m;
            if used > max_iter {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        // Backtrack one step at a time.
        loop {
            ys = (&ys * &ys + c) % n;
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g > one {
                break;
            }
            used += 1;
            if used > max_iter {
                return None;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Complete factorization of `n >= 1` under the default budget.
pub fn factorize(n: &BigUint) -> Result<Factorization> {
    factorize_with(n, &FactorBudget::default(), rho_seed())
}

pub fn factorize_with(n: &BigUint, budget: &FactorBudget, seed: u64) -> Result<Factorization> {
    if n.is_zero() {
        return Err(Error::Domain("factorize requires n >= 1".into()));
    }
    let digits = n.to_string().len();
    if digits > budget.max_digits {
        return Err(Error::FactorBudgetExceeded(format!(
            "{digits} digits exceeds the {} digit limit",
            budget.max_digits
        )));
    }
    let mut fac = Factorization::one();
    let mut m = n.clone();
    for &p in small_primes() {
        if p > budget.trial_bound {
            break;
        }
        if &BigUint::from(p) * &BigUint::from(p) > m {
            break;
        }
        let big_p = BigUint::from(p);
        let mut e = 0u32;
        while (&m % &big_p).is_zero() {
            m /= &big_p;
            e += 1;
        }
        if e > 0 {
            fac.push_prime_power(big_p, e);
        }
        if m.is_one() {
            break;
        }
    }
    if !m.is_one() {
        let mut stack = vec![m];
        let mut rng = XorShift(seed | 1);
        while let Some(x) = stack.pop() {
            if x.is_one() {
                continue;
            }
            if is_prime(&x) {
                fac.push_prime_power(x, 1);
                continue;
            }
            // Perfect powers defeat rho's gcd trick; peel them first.
            if let Some((root, k)) = perfect_power(&x) {
                for _ in 0..k {
                    stack.push(root.clone());
                }
                continue;
            }
            let mut found = None;
            for _ in 0..budget.rho_retries {
                let c = BigUint::from(rng.next() % 0xffff + 1) % &x;
                if let Some(d) = rho_brent(&x, &c, budget.rho_iterations) {
                    if !d.is_one() && d != x {
                        found = Some(d);
                        break;
                    }
                }
            }
            match found {
                Some(d) => {
                    stack.push(&x / &d);
                    stack.push(d);
                }
                None => {
                    return Err(Error::FactorBudgetExceeded(format!(
                        "rho retries exhausted on a {} digit cofactor",
                        x.to_string().len()
                    )))
                }
            }
        }
    }
    debug_assert_eq!(&fac.reassemble(), n);
    Ok(fac)
}

/// Exact k with n = root^k for the largest k >= 2, if any.
fn perfect_power(n: &BigUint) -> Option<(BigUint, u32)> {
    for k in (2..=n.bits() as u32).rev() {
        let r = n.nth_root(k);
        if &r.pow(k) == n && r > BigUint::one() {
            return Some((r, k));
        }
    }
    None
}

/// Factorization of |H(F_q)|, splitting each `q^d - 1` into cyclotomic
/// values first so that only small pieces reach the generic machinery.
pub fn factor_group_order(g: &SemisimpleGroup, f: &PrimePowerField) -> Result<Factorization> {
    let mut out = Factorization::one();
    let n = g.exponent() * u64::from(f.t());
    if n > 0 {
        out.push_prime_power(f.p().clone(), u32::try_from(n).expect("exponent fits u32"));
    }
    // Exponent of each cyclotomic index across all degrees.
    let mut counts: BTreeMap<u32, u32> = BTreeMap::new();
    for d in g.degrees().iter() {
        for e in 1..=d {
            if d % e == 0 {
                *counts.entry(e).or_insert(0) += 1;
            }
        }
    }
    for (e, mult) in counts {
        let value = cyclotomic_value_at(e, f.q());
        let fac = factor_cyclotomic_value(&value, e)?;
        out.push_pow(&fac, mult);
    }
    debug_assert_eq!(out.value(), &g.order(f));
    Ok(out)
}

/// Factors a value of the n-th cyclotomic polynomial at an integer point.
/// Prime divisors are either congruent to 1 mod n or divide n, which cuts
/// trial division to those residue classes; anything left over falls back
/// to the generic routine.
fn factor_cyclotomic_value(value: &BigUint, n: u32) -> Result<Factorization> {
    let mut fac = Factorization::one();
    let mut m = value.clone();
    if m.is_one() {
        return Ok(fac);
    }
    let n64 = u64::from(n);
    for &p in small_primes() {
        if n > 1 && n64 % p != 0 && p % n64 != 1 {
            continue;
        }
        let big_p = BigUint::from(p);
        if &big_p * &big_p > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &big_p).is_zero() {
            m /= &big_p;
            e += 1;
        }
        if e > 0 {
            fac.push_prime_power(big_p, e);
        }
        if m.is_one() {
            return Ok(fac);
        }
    }
    if m.is_one() {
        return Ok(fac);
    }
    if is_prime(&m) {
        fac.push_prime_power(m, 1);
        return Ok(fac);
    }
    let rest = factorize(&m)?;
    fac.push_pow(&rest, 1);
    Ok(fac)
}

/// The prime powers p^e of a factorization ranked by numeric size:
/// the largest, and the second largest if the value has two prime
/// divisors. Ties are broken toward the smaller prime (distinct primes
/// cannot give equal powers, but the rule is fixed anyway).
pub fn largest_prime_power_contribution(
    fac: &Factorization,
) -> Result<(PrimePower, Option<PrimePower>)> {
    if fac.is_one() {
        return Err(Error::UnitFactorization);
    }
    let mut ranked: Vec<PrimePower> = fac
        .iter()
        .map(|(p, e)| PrimePower { prime: p.clone(), exponent: e })
        .collect();
    ranked.sort_by(|x, y| {
        y.value()
            .cmp(&x.value())
            .then_with(|| x.prime.cmp(&y.prime))
    });
    let mut it = ranked.into_iter();
    let largest = it.next().expect("nonempty");
    Ok((largest, it.next()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::SimpleType;

    fn fac_map(pairs: &[(u64, u32)]) -> BTreeMap<BigUint, u32> {
        pairs.iter().map(|&(p, e)| (BigUint::from(p), e)).collect()
    }

    #[test]
    fn primality_small() {
        let primes = [2u64, 3, 5, 7, 97, 7919, 2_147_483_647];
        for p in primes {
            assert!(is_prime_u64(p), "{p}");
        }
        let composites = [0u64, 1, 4, 9, 91, 561, 25326001, 3215031751];
        for c in composites {
            assert!(!is_prime_u64(c), "{c}");
        }
    }

    #[test]
    fn factorize_720() {
        let f = factorize(&BigUint::from(720u32)).unwrap();
        assert_eq!(f.factors(), &fac_map(&[(2, 4), (3, 2), (5, 1)]));
        assert_eq!(f.value(), &BigUint::from(720u32));
    }

    #[test]
    fn factorize_one_is_empty() {
        let f = factorize(&BigUint::one()).unwrap();
        assert!(f.is_one());
    }

    #[test]
    fn factorize_mersenne_61() {
        let m61 = (BigUint::one() << 61u32) - BigUint::one();
        let f = factorize(&m61).unwrap();
        assert_eq!(f.factors().len(), 1);
        assert_eq!(f.exponent_of(&m61), 1);
    }

    #[test]
    fn factorize_zero_is_domain_error() {
        assert!(matches!(
            factorize(&BigUint::zero()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn digit_budget_is_enforced() {
        let huge = BigUint::from(10u32).pow(500u32);
        assert!(matches!(
            factorize(&huge),
            Err(Error::FactorBudgetExceeded(_))
        ));
    }

    #[test]
    fn factor_group_orders() {
        let f3 = PrimePowerField::new(3u32, 1).unwrap();
        let b2 = SemisimpleGroup::simple(SimpleType::b(2));
        let f = factor_group_order(&b2, &f3).unwrap();
        assert_eq!(f.factors(), &fac_map(&[(2, 7), (3, 4), (5, 1)]));

        let f9 = PrimePowerField::new(3u32, 2).unwrap();
        let a1 = SemisimpleGroup::simple(SimpleType::a(1));
        let f = factor_group_order(&a1, &f9).unwrap();
        assert_eq!(f.factors(), &fac_map(&[(2, 4), (3, 2), (5, 1)]));

        let f2 = PrimePowerField::new(2u32, 1).unwrap();
        let g2 = SemisimpleGroup::simple(SimpleType::g2());
        let f = factor_group_order(&g2, &f2).unwrap();
        assert_eq!(f.factors(), &fac_map(&[(2, 6), (3, 3), (7, 1)]));
    }

    #[test]
    fn contribution_ranking() {
        let f = factorize(&BigUint::from(720u32)).unwrap();
        let (largest, second) = largest_prime_power_contribution(&f).unwrap();
        assert_eq!(largest.to_string(), "2^4");
        assert_eq!(second.unwrap().to_string(), "3^2");

        let f = factorize(&BigUint::from(51840u32)).unwrap();
        let (largest, second) = largest_prime_power_contribution(&f).unwrap();
        assert_eq!(largest.to_string(), "2^7");
        assert_eq!(second.unwrap().to_string(), "3^4");

        let f = factorize(&BigUint::from(7u32)).unwrap();
        let (largest, second) = largest_prime_power_contribution(&f).unwrap();
        assert_eq!(largest.to_string(), "7");
        assert!(second.is_none());

        let f = factorize(&BigUint::one()).unwrap();
        assert!(matches!(
            largest_prime_power_contribution(&f),
            Err(Error::UnitFactorization)
        ));
    }

    #[test]
    fn rho_splits_semiprime() {
        // Both factors sit beyond the trial bound, so only rho finds them.
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let f = factorize(&n).unwrap();
        assert_eq!(f.factors(), &fac_map(&[(1_000_003, 1), (1_000_033, 1)]));
    }

    #[test]
    fn perfect_power_is_peeled() {
        let p = BigUint::from(1_000_003u64);
        let n = p.pow(3u32);
        let f = factorize(&n).unwrap();
        assert_eq!(f.exponent_of(&p), 3);
    }
}
