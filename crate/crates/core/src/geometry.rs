//! Transitive-action triples of compact Lie groups and the order
//! identity they induce on split forms.
//!
//! A triple (H, H_1, H_2) with H_2 acting transitively on H/H_1
//! satisfies `|H| * |H_1 cap H_2| = |H_1| * |H_2|` on F_q-points of the
//! split forms. The catalog of such triples with H simple is fixed data;
//! each row maps to a coincidence class. Compact symbols are mapped to
//! split types purely for point counting (SO and Spin of equal dimension
//! have equal-order split forms, so the distinction survives only in the
//! catalog itself).

use std::fmt;
use std::str::FromStr;

use crate::coincidence::CoincidenceClass;
use crate::error::{Error, Result};
use crate::lie::{PrimePowerField, SemisimpleGroup, SimpleType};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Series {
    SU,
    Sp,
    SO,
    Spin,
    G2,
    F4,
    E6,
}

/// A compact-group symbol appearing in the catalog (e.g. `SU4`, `Spin7`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CompactGroupSymbol {
    series: Series,
    parameter: u32,
}

impl CompactGroupSymbol {
    pub fn su(n: u32) -> Self {
        CompactGroupSymbol { series: Series::SU, parameter: n }
    }

    pub fn sp(n: u32) -> Self {
        CompactGroupSymbol { series: Series::Sp, parameter: n }
    }

    pub fn so(n: u32) -> Self {
        CompactGroupSymbol { series: Series::SO, parameter: n }
    }

    pub fn spin(n: u32) -> Self {
        CompactGroupSymbol { series: Series::Spin, parameter: n }
    }

    pub fn g2() -> Self {
        CompactGroupSymbol { series: Series::G2, parameter: 2 }
    }

    pub fn f4() -> Self {
        CompactGroupSymbol { series: Series::F4, parameter: 4 }
    }

    pub fn e6() -> Self {
        CompactGroupSymbol { series: Series::E6, parameter: 6 }
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn parameter(&self) -> u32 {
        self.parameter
    }

    /// The split form used for point counting.
    pub fn split_form(&self) -> Result<SemisimpleGroup> {
        let missing = || Error::UnknownCompactSymbol(self.to_string());
        let simple = |t: SimpleType| Ok(SemisimpleGroup::simple(t));
        match (self.series, self.parameter) {
            (Series::SU, 1) | (Series::Sp, 0) => Ok(SemisimpleGroup::trivial()),
            (Series::SU, n) if n >= 2 => simple(SimpleType::a(n - 1)),
            (Series::Sp, n) if n >= 1 => simple(SimpleType::b_normalized(n)),
            (Series::SO | Series::Spin, n) if n >= 3 && n % 2 == 1 => {
                simple(SimpleType::b_normalized((n - 1) / 2))
            }
            // Even orthogonal: SO_6 is type A_3; SO_4 is not simple and
            // stays outside the dictionary.
            (Series::SO | Series::Spin, 6) => simple(SimpleType::a(3)),
            (Series::SO | Series::Spin, n) if n >= 8 && n % 2 == 0 => {
                simple(SimpleType::d(n / 2))
            }
            (Series::G2, 2) => simple(SimpleType::g2()),
            (Series::F4, 4) => simple(SimpleType::f4()),
            (Series::E6, 6) => simple(SimpleType::e6()),
            _ => Err(missing()),
        }
    }
}

impl fmt::Display for CompactGroupSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.series {
            Series::SU => write!(f, "SU{}", self.parameter),
            Series::Sp => write!(f, "Sp{}", self.parameter),
            Series::SO => write!(f, "SO{}", self.parameter),
            Series::Spin => write!(f, "Spin{}", self.parameter),
            Series::G2 => write!(f, "G2"),
            Series::F4 => write!(f, "F4"),
            Series::E6 => write!(f, "E6"),
        }
    }
}

impl FromStr for CompactGroupSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, digits) = s.split_at(split);
        let param: Option<u32> = if digits.is_empty() {
            None
        } else {
            digits.parse().ok()
        };
        match (name, param) {
            ("SU", Some(n)) => Ok(CompactGroupSymbol::su(n)),
            ("Sp", Some(n)) => Ok(CompactGroupSymbol::sp(n)),
            ("SO", Some(n)) => Ok(CompactGroupSymbol::so(n)),
            ("Spin", Some(n)) => Ok(CompactGroupSymbol::spin(n)),
            ("G", Some(2)) | ("G2", None) => Ok(CompactGroupSymbol::g2()),
            ("F", Some(4)) | ("F4", None) => Ok(CompactGroupSymbol::f4()),
            ("E", Some(6)) | ("E6", None) => Ok(CompactGroupSymbol::e6()),
            _ => Err(Error::UnknownCompactSymbol(s.to_string())),
        }
    }
}

/// An inclusion of transitive actions: `sub2` acts transitively on
/// `ambient / sub1`, with the stated intersection.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TransitiveTriple {
    pub ambient: CompactGroupSymbol,
    pub sub1: CompactGroupSymbol,
    pub sub2: CompactGroupSymbol,
    pub intersection: CompactGroupSymbol,
}

impl TransitiveTriple {
    fn new(
        ambient: CompactGroupSymbol,
        sub1: CompactGroupSymbol,
        sub2: CompactGroupSymbol,
        intersection: CompactGroupSymbol,
    ) -> Self {
        TransitiveTriple { ambient, sub1, sub2, intersection }
    }
}

impl fmt::Display for TransitiveTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {}; {})",
            self.ambient, self.sub1, self.sub2, self.intersection
        )
    }
}

/// All catalog rows with family parameter at most `n_max`.
pub fn triple_catalog(n_max: u32) -> Vec<TransitiveTriple> {
    use CompactGroupSymbol as C;
    let mut rows = Vec::new();
    for n in 2..=n_max {
        rows.push(TransitiveTriple::new(
            C::su(2 * n),
            C::sp(n),
            C::su(2 * n - 1),
            C::sp(n - 1),
        ));
    }
    for n in 2..=n_max {
        rows.push(TransitiveTriple::new(
            C::so(4 * n),
            C::so(4 * n - 1),
            C::sp(n),
            C::sp(n - 1),
        ));
    }
    rows.push(TransitiveTriple::new(C::so(7), C::g2(), C::so(6), C::su(3)));
    rows.push(TransitiveTriple::new(C::so(7), C::g2(), C::so(5), C::su(2)));
    rows.push(TransitiveTriple::new(
        C::so(16),
        C::so(15),
        C::spin(9),
        C::spin(7),
    ));
    for n in 4..=n_max {
        rows.push(TransitiveTriple::new(
            C::so(2 * n),
            C::so(2 * n - 1),
            C::su(n),
            C::su(n - 1),
        ));
    }
    rows.push(TransitiveTriple::new(C::so(8), C::spin(7), C::so(7), C::g2()));
    rows.push(TransitiveTriple::new(C::so(8), C::spin(7), C::so(6), C::su(3)));
    rows.push(TransitiveTriple::new(C::so(8), C::spin(7), C::so(5), C::su(2)));
    rows
}

/// Exact check of `|H| * |H_1 cap H_2| = |H_1| * |H_2|` on split forms.
pub fn verify_triple(triple: &TransitiveTriple, field: &PrimePowerField) -> Result<bool> {
    let lhs = triple.ambient.split_form()?.order(field)
        * triple.intersection.split_form()?.order(field);
    let rhs = triple.sub1.split_form()?.order(field) * triple.sub2.split_form()?.order(field);
    Ok(lhs == rhs)
}

/// The coincidence class of a catalog row:
/// `(split(H) x split(H_1 cap H_2) | split(H_1) x split(H_2))`.
pub fn triple_to_class(triple: &TransitiveTriple) -> Result<CoincidenceClass> {
    let left = triple
        .ambient
        .split_form()?
        .product(&triple.intersection.split_form()?);
    let right = triple
        .sub1
        .split_form()?
        .product(&triple.sub2.split_form()?);
    CoincidenceClass::new(&left, &right)
}

/// One maximal-exponent subgroup pair, with the two maximal degrees.
#[derive(Clone, Debug)]
pub struct MaxExponentPair {
    pub subgroup: CompactGroupSymbol,
    pub ambient: CompactGroupSymbol,
    pub subgroup_max_degree: u32,
    pub ambient_max_degree: u32,
}

impl MaxExponentPair {
    pub fn matches(&self) -> bool {
        self.subgroup_max_degree == self.ambient_max_degree
    }
}

/// Checks, for every pair in the maximal-exponent catalog, that the
/// split forms of subgroup and ambient group share their largest degree.
/// The two parameterized families are checked for parameters up to 16.
pub fn verify_maximal_exponent_pairs() -> Result<Vec<MaxExponentPair>> {
    use CompactGroupSymbol as C;
    let mut pairs: Vec<(C, C)> = Vec::new();
    for n in 2..=16 {
        pairs.push((C::sp(n), C::su(2 * n)));
    }
    pairs.push((C::g2(), C::so(7)));
    for n in 4..=16 {
        pairs.push((C::so(2 * n - 1), C::so(2 * n)));
    }
    pairs.push((C::spin(7), C::so(8)));
    pairs.push((C::g2(), C::so(8)));
    pairs.push((C::f4(), C::e6()));
    pairs
        .into_iter()
        .map(|(sub, amb)| {
            let sub_deg = sub
                .split_form()?
                .degrees()
                .max_degree()
                .expect("nontrivial");
            let amb_deg = amb
                .split_form()?
                .degrees()
                .max_degree()
                .expect("nontrivial");
            Ok(MaxExponentPair {
                subgroup: sub,
                ambient: amb,
                subgroup_max_degree: sub_deg,
                ambient_max_degree: amb_deg,
            })
        })
        .collect()
}
