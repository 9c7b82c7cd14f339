//! The group of order coincidences: reduced pairs of semisimple groups
//! with equal degree multisets, under componentwise product with
//! cancellation.
//!
//! The canonical model is a signed multiset of simple types (positive
//! counts on the left, negative on the right). The group laws are then
//! structural: composition is addition, inversion is negation, and
//! torsion-freeness is automatic. Degree balance is the membership test,
//! and it is equivalent to equality of orders over every finite field.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::{SemisimpleGroup, SimpleType};

/// A reduced ordered pair of semisimple groups with equal degree
/// multisets, stored as the signed multiset of their simple factors.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct CoincidenceClass {
    delta: BTreeMap<SimpleType, i64>,
}

impl CoincidenceClass {
    pub fn identity() -> Self {
        CoincidenceClass::default()
    }

    /// Builds the class of `(left, right)`: cancels common factors, then
    /// validates that the two sides have the same degree multiset.
    pub fn new(left: &SemisimpleGroup, right: &SemisimpleGroup) -> Result<Self> {
        let mut delta: BTreeMap<SimpleType, i64> = BTreeMap::new();
        for t in left.factors() {
            *delta.entry(*t).or_insert(0) += 1;
        }
        for t in right.factors() {
            *delta.entry(*t).or_insert(0) -= 1;
        }
        delta.retain(|_, c| *c != 0);
        let class = CoincidenceClass { delta };
        if !class.is_degree_balanced() {
            return Err(Error::NotACoincidence {
                left: left.to_string(),
                right: right.to_string(),
            });
        }
        Ok(class)
    }

    fn from_delta_unchecked(mut delta: BTreeMap<SimpleType, i64>) -> Self {
        delta.retain(|_, c| *c != 0);
        let class = CoincidenceClass { delta };
        debug_assert!(class.is_degree_balanced());
        class
    }

    fn is_degree_balanced(&self) -> bool {
        let mut balance: BTreeMap<u32, i64> = BTreeMap::new();
        for (t, &count) in &self.delta {
            for d in t.degrees().iter() {
                *balance.entry(d).or_insert(0) += count;
            }
        }
        balance.values().all(|&v| v == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.delta.is_empty()
    }

    pub fn delta(&self) -> &BTreeMap<SimpleType, i64> {
        &self.delta
    }

    /// The left side: factors with positive signed count.
    pub fn left(&self) -> SemisimpleGroup {
        SemisimpleGroup::new(self.delta.iter().flat_map(|(t, &c)| {
            std::iter::repeat_n(*t, c.max(0) as usize)
        }))
    }

    /// The right side: factors with negative signed count.
    pub fn right(&self) -> SemisimpleGroup {
        SemisimpleGroup::new(self.delta.iter().flat_map(|(t, &c)| {
            std::iter::repeat_n(*t, (-c).max(0) as usize)
        }))
    }

    /// Signed-multiset addition, re-reduced.
    pub fn compose(&self, other: &CoincidenceClass) -> CoincidenceClass {
        let mut delta = self.delta.clone();
        for (t, &c) in &other.delta {
            *delta.entry(*t).or_insert(0) += c;
        }
        CoincidenceClass::from_delta_unchecked(delta)
    }

    pub fn inverse(&self) -> CoincidenceClass {
        CoincidenceClass::from_delta_unchecked(
            self.delta.iter().map(|(t, &c)| (*t, -c)).collect(),
        )
    }

    pub fn power(&self, k: i64) -> CoincidenceClass {
        CoincidenceClass::from_delta_unchecked(
            self.delta.iter().map(|(t, &c)| (*t, c * k)).collect(),
        )
    }

    /// The largest degree appearing on either side (None for the identity).
    pub fn max_degree(&self) -> Option<u32> {
        self.delta.keys().map(|t| t.max_degree()).max()
    }

    /// Deterministic orientation: the structurally smaller side on the
    /// left. Searches report classes in this form.
    pub fn canonical_orientation(&self) -> CoincidenceClass {
        let (l, r) = (self.left(), self.right());
        if r < l {
            self.inverse()
        } else {
            self.clone()
        }
    }
}

impl fmt::Display for CoincidenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.left(), self.right())
    }
}

impl FromStr for CoincidenceClass {
    type Err = Error;

    /// Pair grammar `LEFT|RIGHT`; an empty side is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let Some((l, r)) = s.split_once('|') else {
            return Err(Error::MalformedToken(s.to_string()));
        };
        let left: SemisimpleGroup = l.parse()?;
        let right: SemisimpleGroup = r.parse()?;
        CoincidenceClass::new(&left, &right)
    }
}

/// The seven generator families of the coincidence group.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Generator {
    B(u32),
    D(u32),
    G2,
    F4,
    E6,
    E7,
    E8,
}

impl Generator {
    /// The generator's defining coincidence class.
    pub fn class(&self) -> Result<CoincidenceClass> {
        let pair = |l: &[SimpleType], r: &[SimpleType]| {
            CoincidenceClass::new(
                &SemisimpleGroup::new(l.iter().copied()),
                &SemisimpleGroup::new(r.iter().copied()),
            )
            .expect("generator tables are degree-balanced")
        };
        use SimpleType as T;
        Ok(match *self {
            Generator::B(n) => {
                if n < 2 {
                    return Err(Error::InvalidGenerator(format!("B{n} requires n >= 2")));
                }
                pair(
                    &[T::a(2 * n - 2), T::b(n)],
                    &[T::a(2 * n - 1), T::b_normalized(n - 1)],
                )
            }
            Generator::D(n) => {
                if n < 4 {
                    return Err(Error::InvalidGenerator(format!("D{n} requires n >= 4")));
                }
                pair(&[T::a(n - 2), T::d(n)], &[T::a(n - 1), T::b(n - 1)])
            }
            Generator::G2 => pair(&[T::a(2), T::b(3)], &[T::a(3), T::g2()]),
            Generator::F4 => pair(&[T::a(1), T::b(4), T::b(6)], &[T::b(2), T::b(5), T::f4()]),
            Generator::E6 => pair(
                &[T::a(4), T::g2(), T::a(8), T::b(6)],
                &[T::a(3), T::a(6), T::b(5), T::e6()],
            ),
            Generator::E7 => pair(&[T::a(1), T::b(7), T::b(9)], &[T::b(2), T::b(8), T::e7()]),
            Generator::E8 => pair(
                &[T::a(1), T::b(4), T::b(7), T::b(10), T::b(12), T::b(15)],
                &[T::b(3), T::b(5), T::b(8), T::b(11), T::b(14), T::e8()],
            ),
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::B(n) => write!(f, "B{n}"),
            Generator::D(n) => write!(f, "D{n}"),
            Generator::G2 => write!(f, "G2"),
            Generator::F4 => write!(f, "F4"),
            Generator::E6 => write!(f, "E6"),
            Generator::E7 => write!(f, "E7"),
            Generator::E8 => write!(f, "E8"),
        }
    }
}

/// A finitely supported word over the generators, written additively.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GeneratorWord {
    exponents: BTreeMap<Generator, i64>,
}

impl GeneratorWord {
    pub fn identity() -> Self {
        GeneratorWord::default()
    }

    pub fn single(g: Generator, k: i64) -> Self {
        let mut w = GeneratorWord::identity();
        w.add(g, k);
        w
    }

    pub fn add(&mut self, g: Generator, k: i64) {
        let entry = self.exponents.entry(g).or_insert(0);
        *entry += k;
        if *entry == 0 {
            self.exponents.remove(&g);
        }
    }

    pub fn compose(&self, other: &GeneratorWord) -> GeneratorWord {
        let mut out = self.clone();
        for (&g, &k) in &other.exponents {
            out.add(g, k);
        }
        out
    }

    pub fn inverse(&self) -> GeneratorWord {
        GeneratorWord {
            exponents: self.exponents.iter().map(|(&g, &k)| (g, -k)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &BTreeMap<Generator, i64> {
        &self.exponents
    }
}

impl fmt::Display for GeneratorWord {
    /// `G2^1 * D4^-1` style; positive exponents first, canonical
    /// generator order within each sign block; identity is empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .exponents
            .iter()
            .filter(|(_, &k)| k > 0)
            .map(|(g, k)| format!("{g}^{k}"))
            .collect();
        parts.extend(
            self.exponents
                .iter()
                .filter(|(_, &k)| k < 0)
                .map(|(g, k)| format!("{g}^{k}")),
        );
        write!(f, "{}", parts.join(" * "))
    }
}

/// Folds the word's generator powers into a single class.
pub fn evaluate_word(word: &GeneratorWord) -> Result<CoincidenceClass> {
    let mut acc = CoincidenceClass::identity();
    for (g, &k) in word.exponents() {
        acc = acc.compose(&g.class()?.power(k));
    }
    Ok(acc)
}

/// The connector table: a word whose class carries `t1` on the left,
/// `t2` on the right, and all other factors of strictly smaller maximal
/// degree. Defined whenever `t1 != t2` share their maximal degree.
pub fn connector(t1: &SimpleType, t2: &SimpleType) -> Result<GeneratorWord> {
    let fail = || Error::NoConnector {
        t1: t1.to_string(),
        t2: t2.to_string(),
    };
    if t1 == t2 || t1.max_degree() != t2.max_degree() {
        return Err(fail());
    }
    if let Some(word) = oriented_connector(t1, t2) {
        return Ok(word);
    }
    if let Some(word) = oriented_connector(t2, t1) {
        return Ok(word.inverse());
    }
    Err(fail())
}

/// Table rows in their given orientation (left type, right type).
fn oriented_connector(l: &SimpleType, r: &SimpleType) -> Option<GeneratorWord> {
    use crate::lie::Family;
    let n = l.max_degree();
    let m = n / 2;
    let word = |terms: &[(Generator, i64)]| {
        let mut w = GeneratorWord::identity();
        for &(g, k) in terms {
            w.add(g, k);
        }
        Some(w)
    };
    let is = |t: &SimpleType, fam: Family, rank: u32| t.family() == fam && t.rank() == rank;
    if !n.is_multiple_of(2) {
        return None;
    }
    // Generic even-degree entries.
    if m >= 2 {
        if is(l, Family::B, m) && is(r, Family::A, 2 * m - 1) {
            return word(&[(Generator::B(m), 1)]);
        }
        if m + 1 >= 4 {
            if is(l, Family::D, m + 1) && is(r, Family::B, m) {
                return word(&[(Generator::D(m + 1), 1)]);
            }
            if is(l, Family::D, m + 1) && is(r, Family::A, 2 * m - 1) {
                return word(&[(Generator::D(m + 1), 1), (Generator::B(m), 1)]);
            }
        }
    }
    // Exceptional-degree entries.
    let exceptional: &[(u32, SimpleType, Generator)] = &[
        (6, SimpleType::g2(), Generator::G2),
        (12, SimpleType::f4(), Generator::F4),
        (12, SimpleType::e6(), Generator::E6),
        (18, SimpleType::e7(), Generator::E7),
        (30, SimpleType::e8(), Generator::E8),
    ];
    for &(deg, exc, gen) in exceptional {
        if n != deg || r != &exc {
            continue;
        }
        if is(l, Family::B, m) {
            return word(&[(gen, 1)]);
        }
        if is(l, Family::D, m + 1) {
            return word(&[(Generator::D(m + 1), 1), (gen, 1)]);
        }
        if is(l, Family::A, 2 * m - 1) {
            return word(&[(gen, 1), (Generator::B(m), -1)]);
        }
        if n == 12 && is(l, Family::F4, 4) && exc == SimpleType::e6() {
            return word(&[(Generator::E6, 1), (Generator::F4, -1)]);
        }
    }
    None
}

/// Expresses a class as a generator word; the result always recomposes
/// to the input (checked), though words are not claimed minimal.
///
/// While the class is not the identity, the factor of maximal degree on
/// each side (canonically smallest when tied) is cancelled through its
/// connector; each step strictly reduces the number of maximal-degree
/// factors, so the loop terminates.
pub fn reduce_to_word(class: &CoincidenceClass) -> GeneratorWord {
    let mut current = class.clone();
    let mut word = GeneratorWord::identity();
    while let Some(n) = current.max_degree() {
        let pick = |side: &SemisimpleGroup| {
            side.factors()
                .iter()
                .copied()
                .find(|t| t.max_degree() == n)
                .expect("balanced class has the max degree on both sides")
        };
        let k1 = pick(&current.left());
        let k2 = pick(&current.right());
        let step = connector(&k1, &k2).expect("connector exists for equal max degrees");
        let element = evaluate_word(&step).expect("connector words use valid generators");
        current = current.compose(&element.inverse());
        word = word.compose(&step);
    }
    debug_assert_eq!(&evaluate_word(&word).unwrap(), class);
    word
}

/// All coincidence classes with exactly two simple factors on each side,
/// no common factor, and all degrees at most `max_degree`. Found by a
/// hash join on degree multisets; output canonically oriented and sorted.
pub fn search_two_factor_pairs(max_degree: u32) -> Vec<CoincidenceClass> {
    let types = simple_types_with_degree_at_most(max_degree);
    let mut buckets: HashMap<Vec<u32>, Vec<(SimpleType, SimpleType)>> = HashMap::new();
    for (i, &s) in types.iter().enumerate() {
        for &t in &types[i..] {
            let key: Vec<u32> = s.degrees().union(&t.degrees()).iter().collect();
            buckets.entry(key).or_default().push((s, t));
        }
    }
    let mut out = BTreeSet::new();
    for pairs in buckets.values() {
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, d) in &pairs[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let left = SemisimpleGroup::new([a, b]);
                let right = SemisimpleGroup::new([c, d]);
                let class = CoincidenceClass::new(&left, &right)
                    .expect("equal degree keys are balanced");
                out.insert(class.canonical_orientation());
            }
        }
    }
    out.into_iter().collect()
}

/// The closed-form classification of two-factor coincidences truncated
/// to `max_degree`: the B and D generator families, the third family
/// `(B_{n-1} D_2n | B_{2n-1} B_n)`, and the five sporadic pairs. The
/// exhaustive search must reproduce exactly this list.
pub fn two_factor_family_classes(max_degree: u32) -> Vec<CoincidenceClass> {
    let mut out = BTreeSet::new();
    let mut push = |c: CoincidenceClass| {
        if c.max_degree().unwrap_or(0) <= max_degree {
            out.insert(c.canonical_orientation());
        }
    };
    let mut n = 2;
    while 2 * n <= max_degree {
        push(Generator::B(n).class().expect("n >= 2"));
        n += 1;
    }
    let mut n = 4;
    while 2 * n - 2 <= max_degree {
        push(Generator::D(n).class().expect("n >= 4"));
        n += 1;
    }
    let mut n = 2;
    while 4 * n - 2 <= max_degree {
        let left = SemisimpleGroup::new([SimpleType::b_normalized(n - 1), SimpleType::d(2 * n)]);
        let right = SemisimpleGroup::new([SimpleType::b(2 * n - 1), SimpleType::b(n)]);
        push(CoincidenceClass::new(&left, &right).expect("family is balanced"));
        n += 1;
    }
    for pair in [
        "A1*A5|A4*G2",
        "A1*B3|B2*G2",
        "A1*D6|B5*G2",
        "A2*B3|A3*G2",
        "B3*B3|D4*G2",
    ] {
        push(pair.parse().expect("sporadic pairs are balanced"));
    }
    out.into_iter().collect()
}

fn simple_types_with_degree_at_most(max_degree: u32) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for m in 2..=max_degree {
        out.extend(SimpleType::all_with_max_degree(m));
    }
    out.sort();
    out
}

/// Bounded general search: all reduced classes whose sides have at most
/// `max_factors` simple factors and rank at most `max_rank`. The
/// enumeration over factor multisets grows quickly with the bounds; the
/// budget below caps it.
pub fn search_coincidences(max_rank: u32, max_factors: u32) -> Result<Vec<CoincidenceClass>> {
    const PRODUCT_BUDGET: usize = 2_000_000;
    let types = SimpleType::all_with_rank_at_most(max_rank);
    let mut products: Vec<SemisimpleGroup> = Vec::new();
    let mut stack: Vec<SimpleType> = Vec::new();
    if !enumerate_products(&types, 0, max_rank, max_factors, &mut stack, &mut products) {
        return Err(Error::FactorBudgetExceeded(format!(
            "more than {PRODUCT_BUDGET} candidate products in the search"
        )));
    }
    let mut buckets: HashMap<Vec<u32>, Vec<&SemisimpleGroup>> = HashMap::new();
    for g in &products {
        buckets
            .entry(g.degrees().iter().collect())
            .or_default()
            .push(g);
    }
    let mut out = BTreeSet::new();
    for bucket in buckets.values() {
        for (i, &a) in bucket.iter().enumerate() {
            for &b in &bucket[i + 1..] {
                if share_factor(a, b) {
                    continue;
                }
                let class =
                    CoincidenceClass::new(a, b).expect("equal degree keys are balanced");
                out.insert(class.canonical_orientation());
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Returns false when the product budget is exhausted.
fn enumerate_products(
    types: &[SimpleType],
    from: usize,
    rank_left: u32,
    slots_left: u32,
    stack: &mut Vec<SimpleType>,
    out: &mut Vec<SemisimpleGroup>,
) -> bool {
    if !stack.is_empty() {
        if out.len() >= 2_000_000 {
            return false;
        }
        out.push(SemisimpleGroup::new(stack.iter().copied()));
    }
    if slots_left == 0 {
        return true;
    }
    for (i, &t) in types.iter().enumerate().skip(from) {
        if t.rank() > rank_left {
            continue;
        }
        stack.push(t);
        let ok = enumerate_products(types, i, rank_left - t.rank(), slots_left - 1, stack, out);
        stack.pop();
        if !ok {
            return false;
        }
    }
    true
}

fn share_factor(a: &SemisimpleGroup, b: &SemisimpleGroup) -> bool {
    // Both factor lists are sorted.
    let (mut i, mut j) = (0, 0);
    let (fa, fb) = (a.factors(), b.factors());
    while i < fa.len() && j < fb.len() {
        match fa[i].cmp(&fb[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Structural facts about a class: equal ranks, equal factor counts, and
/// the impossibility of a simple-versus-simple reduced coincidence.
#[derive(Clone, Debug)]
pub struct Remark41Report {
    pub rank_left: u32,
    pub rank_right: u32,
    pub factors_left: usize,
    pub factors_right: usize,
    pub ranks_equal: bool,
    pub counts_equal: bool,
    pub simple_vs_simple_excluded: bool,
}

impl Remark41Report {
    pub fn passed(&self) -> bool {
        self.ranks_equal && self.counts_equal && self.simple_vs_simple_excluded
    }
}

pub fn check_remark_41(class: &CoincidenceClass) -> Remark41Report {
    let (l, r) = (class.left(), class.right());
    Remark41Report {
        rank_left: l.rank(),
        rank_right: r.rank(),
        factors_left: l.num_factors(),
        factors_right: r.num_factors(),
        ranks_equal: l.rank() == r.rank(),
        counts_equal: l.num_factors() == r.num_factors(),
        simple_vs_simple_excluded: class.is_identity() || l.num_factors() != 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(s: &str) -> CoincidenceClass {
        s.parse().unwrap()
    }

    #[test]
    fn make_class_examples() {
        let c = class("A2*B3|A3*G2");
        assert_eq!(c.left().to_string(), "A2*B3");
        assert_eq!(c.right().to_string(), "A3*G2");

        let id = class("A1*B2|A1*B2");
        assert!(id.is_identity());

        assert!(matches!(
            "A2|B2".parse::<CoincidenceClass>(),
            Err(Error::NotACoincidence { .. })
        ));
    }

    #[test]
    fn compose_and_inverse() {
        let d4 = Generator::D(4).class().unwrap();
        let g2 = Generator::G2.class().unwrap();
        let composed = d4.inverse().compose(&g2);
        assert_eq!(composed.to_string(), "B3*B3|D4*G2");

        let c = class("A1*D6|B5*G2");
        assert!(c.compose(&c.inverse()).is_identity());

        let b2 = Generator::B(2).class().unwrap();
        assert_eq!(b2.inverse().compose(&g2).to_string(), "A1*B3|B2*G2");
    }

    #[test]
    fn generator_tables() {
        assert_eq!(Generator::B(2).class().unwrap().to_string(), "A2*B2|A1*A3");
        assert_eq!(
            Generator::F4.class().unwrap().to_string(),
            "A1*B4*B6|B2*B5*F4"
        );
        assert_eq!(
            Generator::E8.class().unwrap().to_string(),
            "A1*B4*B7*B10*B12*B15|B3*B5*B8*B11*B14*E8"
        );
        assert!(Generator::B(1).class().is_err());
        assert!(Generator::D(3).class().is_err());
    }

    #[test]
    fn connector_examples() {
        let w = connector(&SimpleType::b(6), &SimpleType::f4()).unwrap();
        assert_eq!(w.to_string(), "F4^1");

        let w = connector(&SimpleType::a(11), &SimpleType::e6()).unwrap();
        assert_eq!(w.to_string(), "E6^1 * B6^-1");

        let w = connector(&SimpleType::d(7), &SimpleType::a(11)).unwrap();
        assert_eq!(w.to_string(), "B6^1 * D7^1");

        assert!(connector(&SimpleType::a(3), &SimpleType::a(3)).is_err());
        assert!(connector(&SimpleType::a(2), &SimpleType::b(2)).is_err());
    }

    #[test]
    fn connector_postcondition_holds_for_all_pairs() {
        // Every unordered pair of distinct types sharing a max degree
        // up to 30 must produce a verifying connector.
        for n in 2..=30u32 {
            let types = SimpleType::all_with_max_degree(n);
            for (i, &t1) in types.iter().enumerate() {
                for &t2 in &types[i + 1..] {
                    let w = connector(&t1, &t2).unwrap();
                    let c = evaluate_word(&w).unwrap();
                    let left = c.left();
                    let right = c.right();
                    assert!(left.factors().contains(&t1), "{t1} {t2}");
                    assert!(right.factors().contains(&t2), "{t1} {t2}");
                    for t in left.factors().iter().chain(right.factors()) {
                        if *t != t1 && *t != t2 {
                            assert!(t.max_degree() < n, "{t1} {t2}: stray {t}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let w = reduce_to_word(&class("A2*B3|A3*G2"));
        assert_eq!(w.to_string(), "G2^1");

        let w = reduce_to_word(&CoincidenceClass::identity());
        assert!(w.is_identity());

        let w = reduce_to_word(&class("A1*D6|B5*G2"));
        let mut expected = GeneratorWord::identity();
        expected.add(Generator::G2, 1);
        expected.add(Generator::B(2), -1);
        expected.add(Generator::B(3), -1);
        expected.add(Generator::D(6), 1);
        assert_eq!(w, expected);
    }

    #[test]
    fn evaluate_word_examples() {
        let mut w = GeneratorWord::identity();
        w.add(Generator::G2, 1);
        w.add(Generator::D(4), -1);
        assert_eq!(evaluate_word(&w).unwrap().to_string(), "B3*B3|D4*G2");

        assert!(evaluate_word(&GeneratorWord::identity())
            .unwrap()
            .is_identity());

        let w = GeneratorWord::single(Generator::B(3), 1);
        assert_eq!(evaluate_word(&w).unwrap().to_string(), "A4*B3|A5*B2");
    }

    #[test]
    fn two_factor_search_degree_six() {
        let found = search_two_factor_pairs(6);
        let expected: Vec<CoincidenceClass> = [
            "A2*B2|A1*A3",
            "A4*B3|A5*B2",
            "A2*D4|A3*B3",
            "A1*D4|B2*B3",
            "A2*B3|A3*G2",
            "A1*B3|B2*G2",
            "A1*A5|A4*G2",
            "B3*B3|D4*G2",
        ]
        .iter()
        .map(|s| class(s).canonical_orientation())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
        assert_eq!(found, expected);
    }

    #[test]
    fn two_factor_search_small_degrees() {
        let found4 = search_two_factor_pairs(4);
        assert_eq!(found4.len(), 1);
        assert_eq!(found4[0], class("A2*B2|A1*A3").canonical_orientation());
        assert_eq!(search_two_factor_pairs(5), found4);
    }

    #[test]
    fn general_search_bounds() {
        let found = search_coincidences(4, 2).unwrap();
        assert!(found.contains(&class("A2*B2|A1*A3").canonical_orientation()));
        assert!(found.iter().all(|c| c.left().num_factors() > 1));

        assert!(search_coincidences(2, 4).unwrap().is_empty());

        let found = search_coincidences(7, 2).unwrap();
        assert!(found.contains(&class("A1*D4|B2*B3").canonical_orientation()));
    }

    #[test]
    fn remark_41_reports() {
        let r = check_remark_41(&class("A2*B3|A3*G2"));
        assert!(r.passed());
        assert_eq!((r.rank_left, r.rank_right), (5, 5));
        assert_eq!((r.factors_left, r.factors_right), (2, 2));

        assert!(check_remark_41(&CoincidenceClass::identity()).passed());

        let r = check_remark_41(&class("A1*D6|B5*G2"));
        assert!(r.passed());
        assert_eq!(r.rank_left, 7);
    }

    #[test]
    fn family_list_matches_search_at_small_degrees() {
        for d in [4, 5, 6, 8, 12] {
            assert_eq!(two_factor_family_classes(d), search_two_factor_pairs(d), "degree {d}");
        }
    }

    #[test]
    fn word_display_order() {
        let mut w = GeneratorWord::identity();
        w.add(Generator::D(4), -1);
        w.add(Generator::G2, 1);
        assert_eq!(w.to_string(), "G2^1 * D4^-1");
        assert_eq!(GeneratorWord::identity().to_string(), "");
    }
}
