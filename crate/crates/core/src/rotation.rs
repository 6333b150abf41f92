//! Degree-`d` rotation sets: finite sets that `θ ↦ dθ` permutes as a cyclic
//! shift of their sorted elements.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::angle::{map_angle, Angle, Degree};
use crate::error::{invariant, Error, Result};

/// A validated rotation set. `angles` is strictly increasing and
/// `f_d(angles[i]) == angles[(i + shift) % n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RotationSet {
    degree: Degree,
    angles: Vec<Angle>,
    shift: usize,
}

/// Counts of elements in each interval `[i/(d-1), (i+1)/(d-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DeploymentVector(pub Vec<usize>);

impl DeploymentVector {
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for DeploymentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub(crate) fn check_sorted(angles: &[Angle]) -> Result<()> {
    if angles.is_empty() {
        return Err(Error::MalformedSet("empty angle set".into()));
    }
    if let Some(w) = angles.windows(2).find(|w| w[0] >= w[1]) {
        return Err(Error::MalformedSet(format!(
            "angles not strictly increasing at {} then {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// The shift `m` making `angles` a degree-`d` rotation set with `n = angles.len()`,
/// or `None` if `f_d` does not act on it as a cyclic shift.
pub fn classify_rotation_set(angles: &[Angle], d: Degree) -> Result<Option<(usize, usize)>> {
    check_sorted(angles)?;
    let n = angles.len();
    let image0 = map_angle(angles[0], d)?;
    let Ok(shift) = angles.binary_search(&image0) else {
        return Ok(None);
    };
    for (i, &theta) in angles.iter().enumerate().skip(1) {
        if map_angle(theta, d)? != angles[(i + shift) % n] {
            return Ok(None);
        }
    }
    Ok(Some((shift, n)))
}

impl RotationSet {
    pub fn new(angles: Vec<Angle>, degree: Degree) -> Result<RotationSet> {
        match classify_rotation_set(&angles, degree)? {
            Some((shift, _)) => Ok(RotationSet { degree, angles, shift }),
            None => Err(Error::MalformedSet(format!(
                "{} is not a degree {degree} rotation set",
                fmt_angles(&angles)
            ))),
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn cardinality(&self) -> usize {
        self.angles.len()
    }

    pub fn is_zero_rotation(&self) -> bool {
        self.shift == 0
    }

    /// Rotation number `m/n` as an angle (reduced, so `n` is lost).
    pub fn rotation_number(&self) -> Angle {
        Angle::new(self.shift as i128, self.cardinality() as u128).expect("n >= 1")
    }

    /// Common period of the elements under `f_d`: `n / gcd(m, n)`.
    pub fn period(&self) -> usize {
        let n = self.cardinality();
        let (mut a, mut b) = (self.shift, n);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        n / a
    }

    pub fn deployment(&self) -> DeploymentVector {
        deployment_vector(self)
    }
}

impl fmt::Display for RotationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_angles(&self.angles))
    }
}

pub(crate) fn fmt_angles(angles: &[Angle]) -> String {
    let parts: Vec<String> = angles.iter().map(Angle::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn deployment_vector(set: &RotationSet) -> DeploymentVector {
    let q = set.degree.get() as u128 - 1;
    let mut counts = vec![0; q as usize];
    for theta in &set.angles {
        // floor(θ·(d-1)) picks the half-open interval
        let idx = theta.numerator() as u128 * q / theta.denominator() as u128;
        counts[idx as usize] += 1;
    }
    DeploymentVector(counts)
}

/// Orbits of `f_d` whose exact period is `p`, each sorted, in lexicographic order.
fn orbits_of_period(d: Degree, p: u32) -> Result<Vec<Vec<Angle>>> {
    let q = d.periodic_denominator(p)?;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for k in 0..q {
        let start = Angle::new(k as i128, q as u128)?;
        if seen.contains(&start) {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = map_angle(start, d)?;
        while cur != start {
            orbit.push(cur);
            cur = map_angle(cur, d)?;
        }
        seen.extend(orbit.iter().copied());
        if orbit.len() == p as usize {
            orbit.sort();
            orbits.push(orbit);
        }
    }
    orbits.sort();
    Ok(orbits)
}

/// Every rotation set whose elements have exact period `p`, with at most
/// `max_cardinality` elements. Such a set is a union of period-`p` orbits,
/// and any sub-union of a rotation set is again one, so a depth-first
/// search over orbit unions can prune as soon as a union fails.
fn rotation_sets_of_period(d: Degree, p: u32, max_cardinality: usize) -> Result<Vec<RotationSet>> {
    let orbits = orbits_of_period(d, p)?;
    let mut found = Vec::new();
    let mut stack: Vec<(usize, Vec<Angle>)> = Vec::new();
    for (i, orbit) in orbits.iter().enumerate() {
        if orbit.len() <= max_cardinality {
            stack.push((i, orbit.clone()));
        }
    }
    while let Some((last, angles)) = stack.pop() {
        let Some((shift, _)) = classify_rotation_set(&angles, d)? else {
            continue;
        };
        for (j, orbit) in orbits.iter().enumerate().skip(last + 1) {
            if angles.len() + orbit.len() <= max_cardinality {
                let mut union = angles.clone();
                union.extend_from_slice(orbit);
                union.sort();
                stack.push((j, union));
            }
        }
        found.push(RotationSet { degree: d, angles, shift });
    }
    Ok(found)
}

/// All degree-`d` rotation sets with at most `max_cardinality` elements whose
/// elements have period at most `max_period`, sorted lexicographically by
/// their angle lists.
pub fn enumerate_rotation_sets(
    d: Degree,
    max_cardinality: usize,
    max_period: u32,
) -> Result<Vec<RotationSet>> {
    if max_cardinality == 0 || max_period == 0 {
        return Err(Error::Precondition(
            "max_cardinality and max_period must be positive".into(),
        ));
    }
    d.periodic_denominator(max_period)?;
    let mut all = Vec::new();
    for p in 1..=max_period {
        all.extend(rotation_sets_of_period(d, p, max_cardinality)?);
    }
    all.sort_by(|a, b| a.angles.cmp(&b.angles));
    all.dedup();
    Ok(all)
}

/// The unique rotation set with the given cardinality, shift and deployment,
/// found by exhaustive search. Two matches would contradict the uniqueness
/// of rotation sets and are reported as an invariant violation.
pub fn generate_rotation_set(
    d: Degree,
    cardinality: usize,
    shift: usize,
    deployment: &DeploymentVector,
) -> Result<Option<RotationSet>> {
    if cardinality == 0 || shift >= cardinality {
        return Err(Error::Precondition(format!(
            "need 0 <= m < n, got m={shift}, n={cardinality}"
        )));
    }
    if deployment.0.len() != d.get() as usize - 1 {
        return Err(Error::Precondition(format!(
            "deployment {deployment} must have {} entries",
            d.get() - 1
        )));
    }
    if deployment.total() != cardinality {
        return Ok(None);
    }
    let mut g = cardinality;
    let mut r = shift;
    while r != 0 {
        (g, r) = (r, g % r);
    }
    let period = u32::try_from(cardinality / g)
        .map_err(|_| Error::Capacity(format!("period of {cardinality} elements")))?;
    let mut matches = rotation_sets_of_period(d, period, cardinality)?
        .into_iter()
        .filter(|s| {
            s.cardinality() == cardinality && s.shift == shift && &s.deployment() == deployment
        });
    let first = matches.next();
    if let Some(second) = matches.next() {
        return Err(invariant(format!(
            "two rotation sets {} and {} share n={cardinality}, m={shift}, deployment {deployment}",
            first.expect("first exists"),
            second
        )));
    }
    Ok(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::fixed_angles;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn angles(xs: &[&str]) -> Vec<Angle> {
        xs.iter().map(|s| a(s)).collect()
    }

    fn deg(d: i64) -> Degree {
        Degree::new(d).unwrap()
    }

    #[test]
    fn classifies() {
        assert_eq!(classify_rotation_set(&angles(&["1/8", "5/8"]), deg(5)).unwrap(), Some((1, 2)));
        assert_eq!(classify_rotation_set(&angles(&["0", "3/4"]), deg(5)).unwrap(), Some((0, 2)));
        assert_eq!(classify_rotation_set(&angles(&["1/8", "1/4"]), deg(5)).unwrap(), None);
        assert!(matches!(
            classify_rotation_set(&angles(&["1/4", "1/8"]), deg(5)),
            Err(Error::MalformedSet(_))
        ));
        assert!(matches!(
            classify_rotation_set(&angles(&["1/4", "1/4"]), deg(5)),
            Err(Error::MalformedSet(_))
        ));
    }

    #[test]
    fn deployments() {
        let s = RotationSet::new(angles(&["1/8", "5/8"]), deg(5)).unwrap();
        assert_eq!(s.deployment(), DeploymentVector(vec![1, 0, 1, 0]));
        let s = RotationSet::new(angles(&["0", "1/4", "1/2", "3/4"]), deg(5)).unwrap();
        assert_eq!(s.deployment(), DeploymentVector(vec![1, 1, 1, 1]));
        let s = RotationSet::new(angles(&["1/3", "2/3"]), deg(2)).unwrap();
        assert_eq!(s.deployment(), DeploymentVector(vec![2]));
    }

    #[test]
    fn enumerates_by_rotation_number() {
        let half: Vec<_> = enumerate_rotation_sets(deg(2), 2, 2)
            .unwrap()
            .into_iter()
            .filter(|s| s.rotation_number() == a("1/2"))
            .collect();
        assert_eq!(half.len(), 1);
        assert_eq!(half[0].angles(), angles(&["1/3", "2/3"]).as_slice());

        let third = enumerate_rotation_sets(deg(2), 3, 3).unwrap();
        assert!(third
            .iter()
            .any(|s| s.angles() == angles(&["1/7", "2/7", "4/7"]).as_slice()
                && s.rotation_number() == a("1/3")));

        let zero: Vec<_> = enumerate_rotation_sets(deg(3), 2, 1)
            .unwrap()
            .into_iter()
            .filter(|s| s.is_zero_rotation())
            .map(|s| s.angles().to_vec())
            .collect();
        assert_eq!(zero, vec![angles(&["0"]), angles(&["0", "1/2"]), angles(&["1/2"])]);
    }

    #[test]
    fn generates_unique_sets() {
        let dep = DeploymentVector(vec![1, 0, 1, 0]);
        let s = generate_rotation_set(deg(5), 2, 1, &dep).unwrap().unwrap();
        assert_eq!(s.angles(), angles(&["1/8", "5/8"]).as_slice());
        let s = generate_rotation_set(deg(2), 2, 1, &DeploymentVector(vec![2])).unwrap().unwrap();
        assert_eq!(s.angles(), angles(&["1/3", "2/3"]).as_slice());
        let bad = DeploymentVector(vec![3, 0, 0, 0]);
        assert_eq!(generate_rotation_set(deg(5), 2, 1, &bad).unwrap(), None);
        assert!(generate_rotation_set(deg(5), 2, 2, &dep).is_err());
    }

    #[test]
    fn zero_shift_means_fixed() {
        for d in 2..=4 {
            let d = deg(d);
            let fixed = fixed_angles(d);
            for s in enumerate_rotation_sets(d, 4, 3).unwrap() {
                let all_fixed = s.angles().iter().all(|t| fixed.contains(t));
                assert_eq!(s.is_zero_rotation(), all_fixed, "{s}");
                if s.cardinality() == 1 {
                    assert!(s.is_zero_rotation());
                }
            }
        }
    }

    #[test]
    fn period_matches_shift() {
        let s = RotationSet::new(angles(&["1/7", "2/7", "4/7"]), deg(2)).unwrap();
        assert_eq!((s.shift(), s.period()), (1, 3));
        let s = RotationSet::new(angles(&["0", "1/2"]), deg(3)).unwrap();
        assert_eq!(s.period(), 1);
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(enumerate_rotation_sets(deg(2), 0, 2).is_err());
        assert!(matches!(enumerate_rotation_sets(deg(9), 3, 30), Err(Error::Capacity(_))));
    }
}
