//! Candidate fixed point portraits and the four admissibility conditions:
//! every set is a rotation set (P1), sets are pairwise disjoint and unlinked
//! (P2), the zero-rotation sets cover exactly the fixed angles (P3), and
//! distinct nonzero-rotation sets are separated by a zero-rotation set (P4).

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::angle::{fixed_angles, Angle, Degree};
use crate::error::{Error, Result};
use crate::rotation::{check_sorted, classify_rotation_set, enumerate_rotation_sets, fmt_angles, RotationSet};

/// A degree and a family of angle sets, each sorted, the family sorted
/// lexicographically. Not necessarily admissible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Portrait {
    degree: Degree,
    sets: Vec<Vec<Angle>>,
}

impl Portrait {
    /// Sorts each set and the family. Duplicates within a set are rejected.
    pub fn new(degree: Degree, sets: Vec<Vec<Angle>>) -> Result<Portrait> {
        let mut sets: Vec<Vec<Angle>> = sets
            .into_iter()
            .map(|mut s| {
                s.sort();
                check_sorted(&s).map(|_| s)
            })
            .collect::<Result<_>>()?;
        sets.sort();
        Ok(Portrait { degree, sets })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn sets(&self) -> &[Vec<Angle>] {
        &self.sets
    }
}

impl fmt::Display for Portrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|s| fmt_angles(s)).collect();
        write!(f, "d={} [{}]", self.degree, parts.join(", "))
    }
}

/// A portrait that passed every condition. Only these can be realized as trees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidPortrait {
    degree: Degree,
    sets: Vec<RotationSet>,
}

impl ValidPortrait {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn sets(&self) -> &[RotationSet] {
        &self.sets
    }

    pub fn portrait(&self) -> Portrait {
        Portrait {
            degree: self.degree,
            sets: self.sets.iter().map(|s| s.angles().to_vec()).collect(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ViolationCode {
    #[serde(rename = "P1")]
    P1,
    #[serde(rename = "P2-linked")]
    P2Linked,
    #[serde(rename = "P2-not-disjoint")]
    P2NotDisjoint,
    #[serde(rename = "P3-missing")]
    P3Missing,
    #[serde(rename = "P3-extra")]
    P3Extra,
    #[serde(rename = "P4")]
    P4,
}

impl fmt::Display for ViolationCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationCode::P1 => "P1",
            ViolationCode::P2Linked => "P2-linked",
            ViolationCode::P2NotDisjoint => "P2-not-disjoint",
            ViolationCode::P3Missing => "P3-missing",
            ViolationCode::P3Extra => "P3-extra",
            ViolationCode::P4 => "P4",
        })
    }
}

/// A failed condition with the data that witnesses it: the indices of the
/// offending sets (0-based, canonical order) and any offending angles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub sets: Vec<usize>,
    pub angles: Vec<Angle>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)?;
        if !self.sets.is_empty() {
            let names: Vec<String> = self.sets.iter().map(|i| format!("T{}", i + 1)).collect();
            write!(f, " sets {}", names.join(" "))?;
        }
        if !self.angles.is_empty() {
            let angles: Vec<String> = self.angles.iter().map(Angle::to_string).collect();
            write!(f, " angles {}", angles.join(" "))?;
        }
        Ok(())
    }
}

/// Outcome of a failed validation: all violations found, plus the checks
/// that were skipped because an earlier failure made them meaningless.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Validation {
    pub violations: Vec<Violation>,
    pub skipped: Vec<String>,
}

impl Validation {
    pub fn codes(&self) -> Vec<ViolationCode> {
        self.violations.iter().map(|v| v.code).collect()
    }
}

/// Index of the component of `R/Z − set` containing `theta`, with gap `i`
/// being `(set[i], set[i+1])` and the last gap wrapping through 0.
/// `theta` must not lie in `set`.
pub(crate) fn gap_index(set: &[Angle], theta: Angle) -> usize {
    let below = set.partition_point(|&t| t < theta);
    if below == 0 {
        set.len() - 1
    } else {
        below - 1
    }
}

fn disjoint(t: &[Angle], u: &[Angle]) -> bool {
    u.iter().all(|x| t.binary_search(x).is_err())
}

fn common_gap(t: &[Angle], u: &[Angle]) -> Option<usize> {
    let first = gap_index(t, u[0]);
    u.iter().all(|&x| gap_index(t, x) == first).then_some(first)
}

/// True iff the sets are disjoint and `u` lies in a single gap of `t`.
/// Inputs must be sorted and non-empty.
pub fn unlinked(t: &[Angle], u: &[Angle]) -> bool {
    disjoint(t, u) && common_gap(t, u).is_some()
}

/// True iff `ti` and `tj` lie in different gaps of `tl`.
pub fn separates(tl: &[Angle], ti: &[Angle], tj: &[Angle]) -> Result<bool> {
    if ti == tj {
        return Err(Error::Precondition("separated sets must be distinct".into()));
    }
    match (common_gap(tl, ti), common_gap(tl, tj)) {
        (Some(a), Some(b)) if disjoint(tl, ti) && disjoint(tl, tj) => Ok(a != b),
        _ => Err(Error::Precondition("sets must be unlinked from the separator".into())),
    }
}

pub fn validate_portrait(p: &Portrait) -> std::result::Result<ValidPortrait, Validation> {
    let d = p.degree;
    let mut out = Validation::default();
    let sets = &p.sets;
    if sets.is_empty() {
        out.violations.push(Violation {
            code: ViolationCode::P3Missing,
            sets: vec![],
            angles: fixed_angles(d),
        });
        return Err(out);
    }

    // P1
    let mut shifts = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        match classify_rotation_set(s, d) {
            Ok(Some((m, _))) => shifts.push(Some(m)),
            _ => {
                shifts.push(None);
                out.violations.push(Violation {
                    code: ViolationCode::P1,
                    sets: vec![i],
                    angles: s.clone(),
                });
            }
        }
    }

    // P2
    let mut p2_ok = true;
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let (a, b) = (&sets[i], &sets[j]);
            if !disjoint(a, b) {
                p2_ok = false;
                out.violations.push(Violation {
                    code: ViolationCode::P2NotDisjoint,
                    sets: vec![i, j],
                    angles: a.iter().filter(|x| b.contains(x)).copied().collect(),
                });
            } else if !unlinked(a, b) {
                p2_ok = false;
                out.violations.push(Violation {
                    code: ViolationCode::P2Linked,
                    sets: vec![i, j],
                    angles: vec![],
                });
            }
        }
    }

    if shifts.iter().any(Option::is_none) {
        out.skipped.push("P3 and P4 skipped: rotation numbers unknown after P1 failure".into());
        return Err(out);
    }
    let shifts: Vec<usize> = shifts.into_iter().flatten().collect();

    // P3
    let fixed: BTreeSet<Angle> = fixed_angles(d).into_iter().collect();
    let covered: BTreeSet<Angle> = sets
        .iter()
        .zip(&shifts)
        .filter(|(_, &m)| m == 0)
        .flat_map(|(s, _)| s.iter().copied())
        .collect();
    let missing: Vec<Angle> = fixed.difference(&covered).copied().collect();
    if !missing.is_empty() {
        out.violations.push(Violation { code: ViolationCode::P3Missing, sets: vec![], angles: missing });
    }
    let extra: Vec<Angle> = covered.difference(&fixed).copied().collect();
    if !extra.is_empty() {
        out.violations.push(Violation { code: ViolationCode::P3Extra, sets: vec![], angles: extra });
    }

    // P4
    if !p2_ok {
        out.skipped.push("P4 skipped: gaps undefined for linked or overlapping sets".into());
    } else {
        let zero: Vec<usize> = (0..sets.len()).filter(|&i| shifts[i] == 0).collect();
        let nonzero: Vec<usize> = (0..sets.len()).filter(|&i| shifts[i] != 0).collect();
        for (x, &i) in nonzero.iter().enumerate() {
            for &j in &nonzero[x + 1..] {
                let separated = zero
                    .iter()
                    .any(|&l| separates(&sets[l], &sets[i], &sets[j]).unwrap_or(false));
                if !separated {
                    out.violations.push(Violation {
                        code: ViolationCode::P4,
                        sets: vec![i, j],
                        angles: vec![],
                    });
                }
            }
        }
    }

    if !out.violations.is_empty() {
        return Err(out);
    }
    let sets = sets
        .iter()
        .zip(shifts)
        .map(|(s, _)| RotationSet::new(s.clone(), d))
        .collect::<Result<Vec<_>>>()
        .expect("P1 already checked");
    Ok(ValidPortrait { degree: d, sets })
}

fn set_partitions(items: &[Angle]) -> Vec<Vec<Vec<Angle>>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for partition in set_partitions(rest) {
        for i in 0..partition.len() {
            let mut p = partition.clone();
            p[i].insert(0, first);
            out.push(p);
        }
        let mut p = partition;
        p.push(vec![first]);
        out.push(p);
    }
    out
}

/// All admissible portraits of degree `d` built from rotation sets whose
/// elements have period at most `max_period`, in canonical order.
pub fn enumerate_portraits(d: Degree, max_period: u32) -> Result<Vec<Portrait>> {
    let bound = (d.get() as usize - 1) * max_period as usize;
    let nonzero: Vec<RotationSet> = enumerate_rotation_sets(d, bound, max_period)?
        .into_iter()
        .filter(|s| !s.is_zero_rotation())
        .collect();
    let mut out = Vec::new();
    for zero in set_partitions(&fixed_angles(d)) {
        let zero: Vec<Vec<Angle>> = zero
            .into_iter()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        let noncrossing = zero
            .iter()
            .enumerate()
            .all(|(i, a)| zero[i + 1..].iter().all(|b| unlinked(a, b)));
        if !noncrossing {
            continue;
        }
        let candidates: Vec<&[Angle]> = nonzero
            .iter()
            .map(RotationSet::angles)
            .filter(|s| zero.iter().all(|z| unlinked(z, s)))
            .collect();
        let compatible = |a: &[Angle], b: &[Angle]| {
            unlinked(a, b) && zero.iter().any(|z| separates(z, a, b).unwrap_or(false))
        };
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, vec![])];
        while let Some((next, chosen)) = stack.pop() {
            let mut sets = zero.clone();
            sets.extend(chosen.iter().map(|&c| candidates[c].to_vec()));
            out.push(Portrait::new(d, sets)?);
            for c in next..candidates.len() {
                if chosen.iter().all(|&o| compatible(candidates[o], candidates[c])) {
                    let mut more = chosen.clone();
                    more.push(c);
                    stack.push((c + 1, more));
                }
            }
        }
    }
    out.sort_by(|a, b| a.sets.cmp(&b.sets));
    Ok(out)
}
