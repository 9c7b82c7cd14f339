//! Group symbols, Weyl-degree tables, and exact order evaluation.
//!
//! A split semisimple group is a multiset of simple factors. Types `B_n`
//! and `C_n` have the same order over every finite field, so `C` is
//! accepted on input and stored as `B`; `B_1` normalizes to `A_1`.
//! Orders are evaluated exactly as
//! `q^N * (q^{d_1} - 1) * ... * (q^{d_n} - 1)` where the `d_i` are the
//! fundamental degrees of the Weyl group and `N` is the sum of `d_i - 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factor::is_prime;

/// Simple-group families, in canonical sort order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    A,
    B,
    D,
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Family {
    pub fn letter(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::G2 => "G",
            Family::F4 => "F",
            Family::E6 | Family::E7 | Family::E8 => "E",
        }
    }
}

/// One simple-group symbol: family letter plus rank.
///
/// Construction is validated, so every value of this type names a real
/// split simple group (with the B/C identification built in).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SimpleType {
    family: Family,
    rank: u32,
}

impl SimpleType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B => rank >= 2,
            Family::D => rank >= 4,
            Family::G2 => rank == 2,
            Family::F4 => rank == 4,
            Family::E6 => rank == 6,
            Family::E7 => rank == 7,
            Family::E8 => rank == 8,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: match family {
                    Family::A => "A",
                    Family::B => "B",
                    Family::D => "D",
                    Family::G2 => "G2",
                    Family::F4 => "F4",
                    Family::E6 => "E6",
                    Family::E7 => "E7",
                    Family::E8 => "E8",
                },
                rank,
            })
        }
    }

    pub fn a(rank: u32) -> Self {
        Self::new(Family::A, rank).expect("A_n requires n >= 1")
    }

    pub fn b(rank: u32) -> Self {
        Self::new(Family::B, rank).expect("B_n requires n >= 2")
    }

    /// `B_n` with the `B_1 = A_1` convention applied.
    pub fn b_normalized(rank: u32) -> Self {
        if rank == 1 {
            Self::a(1)
        } else {
            Self::b(rank)
        }
    }

    pub fn d(rank: u32) -> Self {
        Self::new(Family::D, rank).expect("D_n requires n >= 4")
    }

    pub fn g2() -> Self {
        SimpleType { family: Family::G2, rank: 2 }
    }

    pub fn f4() -> Self {
        SimpleType { family: Family::F4, rank: 4 }
    }

    pub fn e6() -> Self {
        SimpleType { family: Family::E6, rank: 6 }
    }

    pub fn e7() -> Self {
        SimpleType { family: Family::E7, rank: 7 }
    }

    pub fn e8() -> Self {
        SimpleType { family: Family::E8, rank: 8 }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Fundamental degrees of the Weyl group, as a sorted multiset.
    pub fn degrees(&self) -> DegreeMultiset {
        let n = self.rank;
        let degs: Vec<u32> = match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut v: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                v.push(n);
                v
            }
            Family::G2 => vec![2, 6],
            Family::F4 => vec![2, 6, 8, 12],
            Family::E6 => vec![2, 5, 6, 8, 9, 12],
            Family::E7 => vec![2, 6, 8, 10, 12, 14, 18],
            Family::E8 => vec![2, 8, 12, 14, 18, 20, 24, 30],
        };
        DegreeMultiset::from_iter(degs)
    }

    /// Largest fundamental degree, without building the whole multiset.
    pub fn max_degree(&self) -> u32 {
        match self.family {
            Family::A => self.rank + 1,
            Family::B => 2 * self.rank,
            Family::D => 2 * self.rank - 2,
            Family::G2 => 6,
            Family::F4 => 12,
            Family::E6 => 12,
            Family::E7 => 18,
            Family::E8 => 30,
        }
    }

    /// Exponent of q in the order formula for this factor alone.
    pub fn exponent(&self) -> u64 {
        self.degrees().iter().map(|d| u64::from(d) - 1).sum()
    }

    /// All simple types of rank at most `max_rank`, in canonical order.
    pub fn all_with_rank_at_most(max_rank: u32) -> Vec<SimpleType> {
        let mut out = Vec::new();
        for n in 1..=max_rank {
            out.push(SimpleType::a(n));
        }
        for n in 2..=max_rank {
            out.push(SimpleType::b(n));
        }
        for n in 4..=max_rank {
            out.push(SimpleType::d(n));
        }
        if max_rank >= 2 {
            out.push(SimpleType::g2());
        }
        if max_rank >= 4 {
            out.push(SimpleType::f4());
        }
        if max_rank >= 6 {
            out.push(SimpleType::e6());
        }
        if max_rank >= 7 {
            out.push(SimpleType::e7());
        }
        if max_rank >= 8 {
            out.push(SimpleType::e8());
        }
        out.sort();
        out
    }

    /// All simple types whose largest degree equals `m`, in canonical order.
    pub fn all_with_max_degree(m: u32) -> Vec<SimpleType> {
        let mut out = Vec::new();
        if m >= 2 {
            out.push(SimpleType::a(m - 1));
        }
        if m >= 4 && m.is_multiple_of(2) {
            out.push(SimpleType::b(m / 2));
            if m / 2 + 1 >= 4 {
                out.push(SimpleType::d(m / 2 + 1));
            }
        }
        match m {
            6 => out.push(SimpleType::g2()),
            12 => {
                out.push(SimpleType::f4());
                out.push(SimpleType::e6());
            }
            18 => out.push(SimpleType::e7()),
            30 => out.push(SimpleType::e8()),
            _ => {}
        }
        out.sort();
        out
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::MalformedToken(s.to_string()))?;
        let rest: &str = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::MalformedToken(s.to_string()));
        }
        let rank: u32 = rest
            .parse()
            .map_err(|_| Error::MalformedToken(s.to_string()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            // C_n and B_n have the same order; stored as B.
            'B' | 'C' => Family::B,
            'D' => Family::D,
            'G' => Family::G2,
            'F' => Family::F4,
            'E' => match rank {
                6 => Family::E6,
                7 => Family::E7,
                8 => Family::E8,
                _ => return Err(Error::InvalidRank { family: "E", rank }),
            },
            _ => return Err(Error::MalformedToken(s.to_string())),
        };
        if family == Family::B && rank == 1 {
            return Ok(SimpleType::a(1));
        }
        SimpleType::new(family, rank)
    }
}

/// Sorted multiset of Weyl-group degrees (every member is at least 2).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct DegreeMultiset(Vec<u32>);

impl FromIterator<u32> for DegreeMultiset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        let mut v: Vec<u32> = iter.into_iter().collect();
        v.sort_unstable();
        DegreeMultiset(v)
    }
}

impl DegreeMultiset {
    pub fn empty() -> Self {
        DegreeMultiset(Vec::new())
    }

    pub fn union(&self, other: &DegreeMultiset) -> DegreeMultiset {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        DegreeMultiset(v)
    }

    /// Multiset difference, or `None` if `other` is not contained in `self`.
    pub fn subtract(&self, other: &DegreeMultiset) -> Option<DegreeMultiset> {
        let mut rest = self.0.clone();
        for d in &other.0 {
            let pos = rest.iter().position(|x| x == d)?;
            rest.remove(pos);
        }
        Some(DegreeMultiset(rest))
    }

    pub fn contains_subset(&self, other: &DegreeMultiset) -> bool {
        self.subtract(other).is_some()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().copied()
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.0.last().copied()
    }

    pub fn multiplicity(&self, d: u32) -> usize {
        self.0.iter().filter(|&&x| x == d).count()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A split semisimple group: a canonically ordered multiset of simple
/// factors. The empty multiset is the trivial group.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct SemisimpleGroup {
    factors: Vec<SimpleType>,
}

impl SemisimpleGroup {
    pub fn trivial() -> Self {
        SemisimpleGroup { factors: Vec::new() }
    }

    pub fn new<I: IntoIterator<Item = SimpleType>>(factors: I) -> Self {
        let mut factors: Vec<SimpleType> = factors.into_iter().collect();
        factors.sort();
        SemisimpleGroup { factors }
    }

    pub fn simple(t: SimpleType) -> Self {
        SemisimpleGroup { factors: vec![t] }
    }

    pub fn factors(&self) -> &[SimpleType] {
        &self.factors
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn rank(&self) -> u32 {
        self.factors.iter().map(|t| t.rank()).sum()
    }

    /// Direct product: multiset union of the factors.
    pub fn product(&self, other: &SemisimpleGroup) -> SemisimpleGroup {
        SemisimpleGroup::new(self.factors.iter().chain(other.factors.iter()).copied())
    }

    /// Degrees of the product Weyl group: the multiset union over factors.
    pub fn degrees(&self) -> DegreeMultiset {
        self.factors
            .iter()
            .fold(DegreeMultiset::empty(), |acc, t| acc.union(&t.degrees()))
    }

    /// The exponent `N` of q in the order formula: the sum of `d - 1`
    /// over all degrees.
    pub fn exponent(&self) -> u64 {
        self.degrees().iter().map(|d| u64::from(d) - 1).sum()
    }

    /// The data `(N, {d_i})` determining the order as a function of q.
    pub fn order_polynomial(&self) -> (u64, DegreeMultiset) {
        (self.exponent(), self.degrees())
    }

    /// Exact order of the group of F_q-points.
    pub fn order(&self, field: &PrimePowerField) -> BigUint {
        self.order_at(field.q())
    }

    /// All nontrivial semisimple groups of rank at most `max_rank`,
    /// canonically ordered. Grows quickly with the bound.
    pub fn all_with_rank_at_most(max_rank: u32) -> Vec<SemisimpleGroup> {
        fn go(
            types: &[SimpleType],
            from: usize,
            rank_left: u32,
            stack: &mut Vec<SimpleType>,
            out: &mut Vec<SemisimpleGroup>,
        ) {
            if !stack.is_empty() {
                out.push(SemisimpleGroup::new(stack.iter().copied()));
            }
            for (i, &t) in types.iter().enumerate().skip(from) {
                if t.rank() > rank_left {
                    continue;
                }
                stack.push(t);
                go(types, i, rank_left - t.rank(), stack, out);
                stack.pop();
            }
        }
        let types = SimpleType::all_with_rank_at_most(max_rank);
        let mut out = Vec::new();
        go(&types, 0, max_rank, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Order formula evaluated at an arbitrary integer `q >= 2`
    /// (or q = 1 giving 0 for nontrivial groups; callers pass q >= 2).
    pub fn order_at(&self, q: &BigUint) -> BigUint {
        let n = self.exponent();
        let n32 = u32::try_from(n).expect("exponent fits u32 at desk scale");
        let mut acc = q.pow(n32);
        for d in self.degrees().iter() {
            acc *= q.pow(d) - BigUint::one();
        }
        acc
    }
}

impl fmt::Display for SemisimpleGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl FromStr for SemisimpleGroup {
    type Err = Error;

    /// Parses the group grammar `factor ("*" factor)*`; the empty string
    /// denotes the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SemisimpleGroup::trivial());
        }
        let mut factors = Vec::new();
        for token in s.split('*') {
            factors.push(token.parse::<SimpleType>()?);
        }
        Ok(SemisimpleGroup::new(factors))
    }
}

/// A finite field size q = p^t with p a validated prime.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PrimePowerField {
    p: BigUint,
    t: u32,
    q: BigUint,
}

impl PrimePowerField {
    pub fn new(p: impl Into<BigUint>, t: u32) -> Result<Self> {
        let p: BigUint = p.into();
        if t == 0 {
            return Err(Error::Domain("field exponent t must be >= 1".into()));
        }
        if !is_prime(&p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let q = p.pow(t);
        Ok(PrimePowerField { p, t, q })
    }

    /// Recognizes q as p^t, taking the largest possible exponent.
    pub fn from_q(q: &BigUint) -> Result<Self> {
        let two = BigUint::from(2u32);
        if q < &two {
            return Err(Error::NotPrimePower(q.to_string()));
        }
        for k in (1..=q.bits() as u32).rev() {
            let r = q.nth_root(k);
            if &r.pow(k) == q && is_prime(&r) {
                return Ok(PrimePowerField { p: r, t: k, q: q.clone() });
            }
        }
        Err(Error::NotPrimePower(q.to_string()))
    }

    pub fn p(&self) -> &BigUint {
        &self.p
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// The degree-k extension field, q' = q^k.
    pub fn extension(&self, k: u32) -> PrimePowerField {
        PrimePowerField {
            p: self.p.clone(),
            t: self.t * k,
            q: self.q.pow(k),
        }
    }

    /// All prime powers q with 2 <= q <= limit, ordered by q.
    pub fn all_up_to(limit: u64) -> Vec<PrimePowerField> {
        let mut out = Vec::new();
        for q in 2..=limit {
            if let Ok(f) = PrimePowerField::from_q(&BigUint::from(q)) {
                out.push(f);
            }
        }
        out
    }
}

impl fmt::Display for PrimePowerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.t == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.t)
        }
    }
}

/// |PSL_n(F_q)| = |SL_n(F_q)| / gcd(n, q - 1), for n >= 2.
pub fn psl_order(n: u32, field: &PrimePowerField) -> BigUint {
    use num_integer::Integer;
    let sl = SemisimpleGroup::simple(SimpleType::a(n - 1)).order(field);
    let center = BigUint::from(n).gcd(&(field.q() - BigUint::one()));
    sl / center
}

/// |PSp_2n(F_q)| = |Sp_2n(F_q)| / gcd(2, q - 1), for n >= 1.
pub fn psp_order(n: u32, field: &PrimePowerField) -> BigUint {
    use num_integer::Integer;
    let sp = SemisimpleGroup::simple(SimpleType::b_normalized(n)).order(field);
    let center = BigUint::from(2u32).gcd(&(field.q() - BigUint::one()));
    sp / center
}

/// Order of the simple quotient of the odd orthogonal group,
/// |Spin_2n+1(F_q)| / gcd(2, q - 1). Equal to `psp_order(n, field)`
/// because the B and C order formulas coincide.
pub fn pso_odd_order(n: u32, field: &PrimePowerField) -> BigUint {
    psp_order(n, field)
}
