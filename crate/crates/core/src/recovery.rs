//! Inverting an order: counterexample classification, characteristic
//! recovery, and full enumeration of the `(group, field)` pairs matching
//! a given order.
//!
//! The characteristic of F_q contributes the largest prime power to
//! `|H(F_q)|` except for a short list of small groups; recovery therefore
//! never trusts the largest-contribution heuristic alone and instead
//! enumerates candidates across every characteristic, peeling degrees
//! off the cofactor of the q-part with full backtracking.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::factor::{
    factor_group_order, factorize, largest_prime_power_contribution, is_prime, PrimePower,
};
use crate::lie::{DegreeMultiset, Family, PrimePowerField, SemisimpleGroup, SimpleType};

/// Membership in the exceptional set where the defining characteristic
/// does not give the largest prime-power divisor of the order: `A_1`
/// over q in {8, 9}, q = 2^r with 2^r + 1 prime, or q a prime of the
/// form 2^s +- 1; and `B_2` over q = 3.
pub fn is_counterexample(t: &SimpleType, field: &PrimePowerField) -> bool {
    let q = field.q();
    match (t.family(), t.rank()) {
        (Family::A, 1) => {
            let eight = BigUint::from(8u32);
            let nine = BigUint::from(9u32);
            if *q == eight || *q == nine {
                return true;
            }
            if q.count_ones() == 1 && is_prime(&(q + BigUint::one())) {
                return true;
            }
            if field.t() == 1 {
                let below = q - BigUint::one();
                let above = q + BigUint::one();
                return below.count_ones() == 1 || above.count_ones() == 1;
            }
            false
        }
        (Family::B, 2) => *q == BigUint::from(3u32),
        _ => false,
    }
}

/// One row of the classification scan.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub group: SimpleType,
    pub field: PrimePowerField,
    pub largest: PrimePower,
    pub second: Option<PrimePower>,
    pub expected_counterexample: bool,
    /// Whether this row matches the classification: the characteristic
    /// contributes the largest prime power exactly when the row is not a
    /// counterexample, and the second largest when it is.
    pub consistent: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ClassificationReport {
    pub rows: Vec<ScanRow>,
    pub counterexamples: Vec<(SimpleType, PrimePowerField)>,
    pub all_consistent: bool,
}

/// Scans every simple type within the bounds against the counterexample
/// classification and returns the full table.
pub fn verify_counterexample_classification(
    max_rank: u32,
    q_max: u64,
) -> Result<ClassificationReport> {
    let mut report = ClassificationReport {
        all_consistent: true,
        ..Default::default()
    };
    for t in SimpleType::all_with_rank_at_most(max_rank) {
        for field in PrimePowerField::all_up_to(q_max) {
            let group = SemisimpleGroup::simple(t);
            let fac = factor_group_order(&group, &field)?;
            let (largest, second) = largest_prime_power_contribution(&fac)?;
            let expected = is_counterexample(&t, &field);
            let char_is_largest = &largest.prime == field.p();
            let char_is_second = second
                .as_ref()
                .map(|s| &s.prime == field.p())
                .unwrap_or(false);
            let consistent = if expected {
                !char_is_largest && char_is_second
            } else {
                char_is_largest
            };
            if expected {
                report.counterexamples.push((t, field.clone()));
            }
            report.all_consistent &= consistent;
            report.rows.push(ScanRow {
                group: t,
                field,
                largest,
                second,
                expected_counterexample: expected,
                consistent,
            });
        }
    }
    Ok(report)
}

/// The prime with the largest prime-power contribution. Correct whenever
/// no counterexample factor is present; the 720 = |A_1(F_9)| case shows
/// the answer can be wrong otherwise.
pub fn recover_characteristic(fac: &crate::factor::Factorization) -> Result<BigUint> {
    let (largest, _) = largest_prime_power_contribution(fac)?;
    Ok(largest.prime)
}

/// A group and field whose order matches a queried value. The field is
/// absent only for the trivial group (order 1 over any field).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct RecoveryCandidate {
    pub group: SemisimpleGroup,
    pub field: Option<PrimePowerField>,
}

/// Largest q any nontrivial group over F_q can have at order `n`:
/// the smallest nontrivial order is `|A_1(F_q)| = q(q^2 - 1)`.
pub fn effective_field_bound(n: &BigUint, q_max: Option<&BigUint>) -> BigUint {
    let mut bound = n.cbrt() + BigUint::one();
    let one = BigUint::one();
    while bound >= BigUint::from(2u32) {
        let order = &bound * (&bound * &bound - &one);
        if &order <= n {
            break;
        }
        bound -= &one;
    }
    match q_max {
        Some(q) if q < &bound => q.clone(),
        _ => bound,
    }
}

/// Every `(H, q)` with `rank(H) <= max_rank`, `q <= q_max` (default: the
/// structural bound above) and `|H(F_q)|` equal to `n`, across all
/// characteristics. Sorted canonically.
pub fn recover_candidates(
    n: &BigUint,
    max_rank: u32,
    q_max: Option<&BigUint>,
) -> Result<Vec<RecoveryCandidate>> {
    if n.is_one() {
        return Ok(vec![RecoveryCandidate {
            group: SemisimpleGroup::trivial(),
            field: None,
        }]);
    }
    let fac = factorize(n)?;
    let q_bound = effective_field_bound(n, q_max);
    let mut found: BTreeSet<RecoveryCandidate> = BTreeSet::new();
    for (p, ord) in fac.iter() {
        let mut q = p.clone();
        let mut t = 1u32;
        while q <= q_bound {
            if ord % t == 0 {
                let target_exponent = u64::from(ord / t);
                let cofactor = n / p.pow(ord);
                for degrees in peel_degree_multisets(&cofactor, &q, target_exponent, max_rank) {
                    for group in groups_with_degrees(&degrees) {
                        let field = PrimePowerField::new(p.clone(), t)?;
                        debug_assert_eq!(&group.order(&field), n);
                        found.insert(RecoveryCandidate {
                            group,
                            field: Some(field),
                        });
                    }
                }
            }
            t += 1;
            q *= p;
        }
    }
    Ok(found.into_iter().collect())
}

/// All degree multisets D with `prod_{d in D} (q^d - 1) = r`,
/// `sum (d - 1) = target` and at most `max_count` members. Every member
/// of a solution divides r, so candidates are tried largest-first with
/// full backtracking (which absorbs the characteristic-2 ambiguity
/// coming from Phi_6(2) = Phi_2(2) = 3).
fn peel_degree_multisets(
    r: &BigUint,
    q: &BigUint,
    target: u64,
    max_count: u32,
) -> Vec<DegreeMultiset> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    peel(r, q, u32::MAX, target, max_count, &mut current, &mut out);
    out
}

fn peel(
    r: &BigUint,
    q: &BigUint,
    max_d: u32,
    remaining_sum: u64,
    remaining_count: u32,
    current: &mut Vec<u32>,
    out: &mut Vec<DegreeMultiset>,
) {
    if r.is_one() {
        if remaining_sum == 0 {
            out.push(DegreeMultiset::from_iter(current.iter().copied()));
        }
        return;
    }
    if remaining_sum == 0 || remaining_count == 0 {
        return;
    }
    let cap = u64::from(max_d).min(remaining_sum + 1);
    let one = BigUint::one();
    let mut d = 2u32;
    let mut power = q * q;
    // Walk powers upward once, then try candidate degrees downward.
    let mut candidates = Vec::new();
    while u64::from(d) <= cap {
        let value = &power - &one;
        if value > *r {
            break;
        }
        if (r % &value).is_zero() {
            candidates.push((d, value));
        }
        d += 1;
        power *= q;
    }
    for (d, value) in candidates.into_iter().rev() {
        current.push(d);
        peel(
            &(r / &value),
            q,
            d,
            remaining_sum - u64::from(d - 1),
            remaining_count - 1,
            current,
            out,
        );
        current.pop();
    }
}

/// All multisets of simple types whose degree multisets union to `d`.
/// Coincidences make multiple decompositions possible; all are returned,
/// canonically ordered.
pub fn groups_with_degrees(d: &DegreeMultiset) -> Vec<SemisimpleGroup> {
    let mut out = BTreeSet::new();
    let mut acc = Vec::new();
    decompose(d, &mut acc, &mut out);
    out.into_iter().collect()
}

fn decompose(
    remaining: &DegreeMultiset,
    acc: &mut Vec<SimpleType>,
    out: &mut BTreeSet<SemisimpleGroup>,
) {
    let Some(max) = remaining.max_degree() else {
        out.insert(SemisimpleGroup::new(acc.iter().copied()));
        return;
    };
    for t in SimpleType::all_with_max_degree(max) {
        if let Some(rest) = remaining.subtract(&t.degrees()) {
            acc.push(t);
            decompose(&rest, acc, out);
            acc.pop();
        }
    }
}

/// Executable witness for extension persistence: given equal orders over
/// F_q, checks the orders also agree over q^2, ..., q^k.
pub fn check_extension_persistence(
    g1: &SemisimpleGroup,
    g2: &SemisimpleGroup,
    field: &PrimePowerField,
    k: u32,
) -> Result<bool> {
    let o1 = g1.order(field);
    let o2 = g2.order(field);
    if o1 != o2 {
        return Err(Error::BaseOrdersDiffer {
            q: field.q().to_string(),
            left: o1.to_string(),
            right: o2.to_string(),
        });
    }
    for j in 2..=k {
        let ext = field.extension(j);
        if g1.order(&ext) != g2.order(&ext) {
            return Ok(false);
        }
    }
    Ok(true)
}
