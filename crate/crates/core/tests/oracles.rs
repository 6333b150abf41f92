//! Brute-force oracles, independent of the implementation paths they check.

use std::collections::BTreeSet;

use portrait_core::*;

/// Plain fraction `(num, den)` reduced, used only by the oracles.
type Frac = (u64, u64);

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn frac(p: u64, q: u64) -> Frac {
    let p = p % q;
    let g = gcd(p, q);
    if p == 0 {
        (0, 1)
    } else {
        (p / g, q / g)
    }
}

fn less(a: Frac, b: Frac) -> bool {
    (a.0 as u128) * (b.1 as u128) < (b.0 as u128) * (a.1 as u128)
}

fn times(a: Frac, d: u64) -> Frac {
    frac(a.0 * d, a.1)
}

fn to_angle(a: Frac) -> Angle {
    Angle::new(a.0 as i128, a.1 as u128).unwrap()
}

/// Direct reading of the definition: some shift `m` with `f(θ_i) = θ_{i+m}` for all `i`.
fn oracle_shift(sorted: &[Frac], d: u64) -> Option<usize> {
    let n = sorted.len();
    (0..n).find(|&m| (0..n).all(|i| times(sorted[i], d) == sorted[(i + m) % n]))
}

fn subsets_up_to(items: &[Frac], max: usize) -> Vec<Vec<Frac>> {
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<Frac>)> = vec![(0, vec![])];
    while let Some((next, cur)) = stack.pop() {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == max {
            continue;
        }
        for (i, &item) in items.iter().enumerate().skip(next) {
            let mut more = cur.clone();
            more.push(item);
            stack.push((i + 1, more));
        }
    }
    out
}

/// All rotation sets of cardinality `<= max_card` among angles of period `<= max_period`,
/// found by testing every subset.
fn brute_force_rotation_sets(d: u64, max_card: usize, max_period: u32) -> BTreeSet<Vec<Angle>> {
    let mut angles = BTreeSet::new();
    for p in 1..=max_period {
        let q = d.pow(p) - 1;
        for k in 0..q {
            angles.insert(frac(k, q));
        }
    }
    let mut items: Vec<Frac> = angles.into_iter().collect();
    items.sort_by(|a, b| {
        if less(*a, *b) {
            std::cmp::Ordering::Less
        } else if a == b {
            std::cmp::Ordering::Equal
        } else {
            std::cmp::Ordering::Greater
        }
    });
    subsets_up_to(&items, max_card)
        .into_iter()
        .filter(|s| oracle_shift(s, d).is_some())
        .map(|s| s.into_iter().map(to_angle).collect())
        .collect()
}

#[test]
fn enumeration_matches_subset_search() {
    for (d, card, period) in [(2, 4, 4), (3, 4, 3), (4, 5, 2), (5, 3, 2)] {
        let oracle = brute_force_rotation_sets(d, card, period);
        let found: BTreeSet<Vec<Angle>> = enumerate_rotation_sets(Degree::new(d as i64).unwrap(), card, period)
            .unwrap()
            .into_iter()
            .map(|s| s.angles().to_vec())
            .collect();
        assert_eq!(found, oracle, "d={d} card<={card} period<={period}");
    }
}

#[test]
fn enumeration_examples_from_subset_search() {
    let half: Vec<_> = brute_force_rotation_sets(2, 2, 2)
        .into_iter()
        .filter(|s| s.len() == 2)
        .collect();
    assert_eq!(half, vec![vec![to_angle((1, 3)), to_angle((2, 3))]]);
    let generated = generate_rotation_set(Degree::new(2).unwrap(), 2, 1, &DeploymentVector(vec![2]))
        .unwrap()
        .unwrap();
    assert_eq!(generated.angles(), half[0].as_slice());

    let third = brute_force_rotation_sets(2, 3, 3);
    assert!(third.contains(&vec![to_angle((1, 7)), to_angle((2, 7)), to_angle((4, 7))]));

    let not_rotation: Vec<Frac> = vec![(1, 8), (1, 4)];
    assert_eq!(oracle_shift(&not_rotation, 5), None);
}

#[test]
fn fixed_angles_exhaustive() {
    for d in 2..=6u64 {
        let fixed: BTreeSet<Angle> = fixed_angles(Degree::new(d as i64).unwrap()).into_iter().collect();
        for q in 1..=64u64 {
            for p in 0..q {
                let a = frac(p, q);
                let is_fixed = times(a, d) == a;
                assert_eq!(fixed.contains(&to_angle(a)), is_fixed, "d={d} {p}/{q}");
                let mapped = map_angle(to_angle(a), Degree::new(d as i64).unwrap()).unwrap();
                assert_eq!(mapped, to_angle(times(a, d)));
            }
        }
    }
}

#[test]
fn preimages_number_d() {
    for d in 2..=5u64 {
        let deg = Degree::new(d as i64).unwrap();
        for q in 1..=20u64 {
            for p in 0..q {
                let target = to_angle(frac(p, q));
                let dq = d * q;
                let count = (0..dq)
                    .filter(|&k| map_angle(to_angle(frac(k, dq)), deg).unwrap() == target)
                    .count();
                assert_eq!(count, d as usize);
            }
        }
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Two open arcs lie in the same gap of `set` iff no element of `set`
/// lies on the counterclockwise path between their start points that
/// stays strictly between them. Uses only the circular order predicate.
fn same_gap(set: &[Angle], a: ElementaryArc, b: ElementaryArc) -> bool {
    if set.len() == 1 || a.start == b.start {
        return true;
    }
    // going ccw from inside a to inside b crosses (a.start, b.start]
    let separates_forward = set
        .iter()
        .any(|&t| t == b.start || in_open_arc(t, a.start, b.start).unwrap());
    let separates_back = set
        .iter()
        .any(|&t| t == a.start || in_open_arc(t, b.start, a.start).unwrap());
    !(separates_forward && separates_back)
}

#[test]
fn regions_match_union_find() {
    for d in [2, 3, 4] {
        for p in enumerate_portraits(Degree::new(d).unwrap(), if d == 4 { 2 } else { 3 }).unwrap() {
            let valid = validate_portrait(&p).unwrap();
            let arcs = elementary_arcs(&valid);
            let mut uf = UnionFind((0..arcs.len()).collect());
            for i in 0..arcs.len() {
                for j in i + 1..arcs.len() {
                    if p.sets().iter().all(|s| same_gap(s, arcs[i], arcs[j])) {
                        uf.union(i, j);
                    }
                }
            }
            let mut oracle: Vec<Vec<usize>> = {
                let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
                for i in 0..arcs.len() {
                    let r = uf.find(i);
                    by_root.entry(r).or_default().push(i);
                }
                by_root.into_values().collect()
            };
            oracle.sort();
            let mut found: Vec<Vec<usize>> = build_regions(&valid).unwrap().into_iter().map(|r| r.arcs).collect();
            found.sort();
            assert_eq!(found, oracle, "{p}");
        }
    }
}

#[test]
fn degree5_regions_against_union_find() {
    let p = parse_portrait("degree 5\nset 0 3/4\nset 1/8 5/8\nset 1/4\nset 1/2\n").unwrap();
    let valid = validate_portrait(&p).unwrap();
    let arcs = elementary_arcs(&valid);
    let a = |s: &str| -> Angle { s.parse().unwrap() };
    let expect: BTreeSet<BTreeSet<(Angle, Angle)>> = [
        vec![("5/8", "3/4"), ("0", "1/8")],
        vec![("3/4", "0")],
        vec![("1/8", "1/4"), ("1/4", "1/2"), ("1/2", "5/8")],
    ]
    .into_iter()
    .map(|r| r.into_iter().map(|(s, e)| (a(s), a(e))).collect())
    .collect();
    let found: BTreeSet<BTreeSet<(Angle, Angle)>> = build_regions(&valid)
        .unwrap()
        .into_iter()
        .map(|r| r.arcs.iter().map(|&i| (arcs[i].start, arcs[i].end)).collect())
        .collect();
    assert_eq!(found, expect);
}

#[test]
fn p4_example_by_gap_enumeration() {
    // the only separators are singletons, whose complement is one gap
    let zero = [vec![Angle::ZERO], vec!["1/2".parse().unwrap()]];
    let ti: Vec<Angle> = vec!["1/8".parse().unwrap(), "3/8".parse().unwrap()];
    let tj: Vec<Angle> = vec!["5/8".parse().unwrap(), "7/8".parse().unwrap()];
    for z in &zero {
        let x = z[0];
        let probe = |t: &[Angle]| t.iter().all(|&y| y != x);
        assert!(probe(&ti) && probe(&tj));
        assert!(!separates(z, &ti, &tj).unwrap());
    }
    let chord: Vec<Angle> = vec![Angle::ZERO, "1/2".parse().unwrap()];
    let gap = |t: &Angle| in_open_arc(*t, chord[0], chord[1]).unwrap();
    assert!(ti.iter().all(gap) && tj.iter().all(|t| !gap(t)));
    assert!(separates(&chord, &ti, &tj).unwrap());
}

#[test]
fn tree_examples() {
    let p = parse_portrait("degree 5\nset 0 3/4\nset 1/8 5/8\nset 1/4\nset 1/2\n").unwrap();
    let ct = assemble_tree(&validate_portrait(&p).unwrap()).unwrap();
    let t = &ct.tree;
    // region holding arc (0, 1/8) touches T1 and T2; its partner is swapped with it
    let ua = ct.fatou_vertex[0];
    let uc = t.tau(ua);
    let (v1, v2) = (ct.julia_vertex[0], ct.julia_vertex[1]);
    let e = t.edges().iter().position(|&(a, b)| (a, b) == (v1, ua) || (a, b) == (ua, v1)).unwrap();
    let image = edge_image_path(t, e);
    assert!(image == vec![uc, v2, ua, v1] || image == vec![v1, ua, v2, uc], "{image:?}");

    // both edges at the swapped w map onto paths starting with the same germ
    let rot = t.rotation(ua);
    assert_eq!(rot.len(), 2);
    assert_eq!(t.angle(ua, rot[0], rot[1]).unwrap().to_string(), "1/2");
    assert_eq!(t.delta(ua), 2);
    assert!(check_degree_angle(t).is_empty());

    let b = parse_portrait("degree 2\nset 0\nset 1/3 2/3\n").unwrap();
    let ct = assemble_tree(&validate_portrait(&b).unwrap()).unwrap();
    let t = &ct.tree;
    let (v2, w1, w2) = (ct.julia_vertex[1], ct.fatou_vertex[0], ct.fatou_vertex[1]);
    let e = t.edges().iter().position(|&(a, b)| (a, b) == (v2, w1)).unwrap();
    assert_eq!(edge_image_path(t, e), vec![v2, w2]);
    let class = classify_vertices(t);
    assert_eq!(class.kind[w1], VertexKind::Fatou);
    assert_eq!(class.kind[w2], VertexKind::Fatou);
}
