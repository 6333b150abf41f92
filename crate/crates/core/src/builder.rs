//! Realizing an admissible portrait as an angled tree.
//!
//! The circle minus all portrait angles splits into elementary arcs. Two
//! arcs bound the same complementary region of the disk minus the stars
//! (segments from each angle to its set's baricenter) exactly when they lie
//! in the same gap of every set, so regions are computed as classes of arcs
//! with equal gap signatures. The tree has one Julia vertex per set, one
//! Fatou vertex per region, and an edge wherever a set touches a region.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::angle::{map_angle, Angle};
use crate::error::{invariant, Result};
use crate::portrait::ValidPortrait;
use crate::tree::{AngledTree, EdgeId, VertexId, VertexSpec};

/// Open counterclockwise arc between circularly consecutive portrait angles.
/// `start == end` only when the portrait has a single angle, and then the
/// arc is the whole circle minus that point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ElementaryArc {
    pub start: Angle,
    pub end: Angle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Region {
    /// Indices into [`elementary_arcs`], ascending (so circularly ordered from the least start).
    pub arcs: Vec<usize>,
    /// Sets touching the region, in counterclockwise order around it.
    pub boundary_sets: Vec<usize>,
    /// Number of zero-rotation boundary sets.
    pub cc: usize,
}

/// An angle's position among all portrait angles: owning set and index in it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Owner {
    set: usize,
    index: usize,
}

/// A sector at a vertex: the wedge counterclockwise from `rotation[index]`
/// to `rotation[index + 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Sector {
    pub vertex: VertexId,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructedTree {
    pub tree: AngledTree,
    /// `julia_vertex[j]` is the vertex `v(T_j)`.
    pub julia_vertex: Vec<VertexId>,
    /// `fatou_vertex[i]` is the vertex `w(U_i)`.
    pub fatou_vertex: Vec<VertexId>,
    /// Per set `j`, the angle whose spoke lies in sector `g` of `v(T_j)`.
    /// Used for drawing only.
    pub spoke_anchor: Vec<Vec<Angle>>,
    /// The sector of the vertex owning angle 0 that contains the spoke to 0.
    pub marked_sector: Sector,
}

struct Layout {
    union: Vec<Angle>,
    owners: Vec<Owner>,
}

impl Layout {
    fn new(p: &ValidPortrait) -> Layout {
        let mut tagged: Vec<(Angle, Owner)> = p
            .sets()
            .iter()
            .enumerate()
            .flat_map(|(set, s)| {
                s.angles().iter().enumerate().map(move |(index, &a)| (a, Owner { set, index }))
            })
            .collect();
        tagged.sort_by_key(|&(a, _)| a);
        let (union, owners) = tagged.into_iter().unzip();
        Layout { union, owners }
    }

    fn position(&self, theta: Angle) -> Result<usize> {
        self.union
            .binary_search(&theta)
            .map_err(|_| invariant(format!("{theta} is not a portrait angle")))
    }

    /// Index of the arc that starts at `theta`.
    fn arc_after(&self, theta: Angle) -> Result<usize> {
        self.position(theta)
    }

    /// Index of the arc that ends at `theta`.
    fn arc_before(&self, theta: Angle) -> Result<usize> {
        let n = self.union.len();
        Ok((self.position(theta)? + n - 1) % n)
    }
}

pub fn elementary_arcs(p: &ValidPortrait) -> Vec<ElementaryArc> {
    let union = Layout::new(p).union;
    let n = union.len();
    (0..n)
        .map(|i| ElementaryArc { start: union[i], end: union[(i + 1) % n] })
        .collect()
}

/// Gap of `set` containing the open arc starting at `start`.
fn arc_gap(set: &[Angle], start: Angle) -> usize {
    let at_or_below = set.partition_point(|&t| t <= start);
    if at_or_below == 0 {
        set.len() - 1
    } else {
        at_or_below - 1
    }
}

pub fn build_regions(p: &ValidPortrait) -> Result<Vec<Region>> {
    let layout = Layout::new(p);
    let arcs = elementary_arcs(p);
    let mut classes: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for (i, arc) in arcs.iter().enumerate() {
        let signature = p.sets().iter().map(|s| arc_gap(s.angles(), arc.start)).collect();
        classes.entry(signature).or_default().push(i);
    }
    let mut regions: Vec<Region> = Vec::with_capacity(classes.len());
    for arc_ids in classes.into_values() {
        // walk the region boundary counterclockwise: after each arc, cross the
        // star of the set owning its end point to reach the next arc
        let mut crossings = Vec::with_capacity(arc_ids.len());
        for (k, &a) in arc_ids.iter().enumerate() {
            let next = arc_ids[(k + 1) % arc_ids.len()];
            let end_owner = layout.owners[(a + 1) % arcs.len()].set;
            let start_owner = layout.owners[next].set;
            if end_owner != start_owner {
                return Err(invariant(format!(
                    "region arcs {:?} and {:?} are not joined by one star",
                    arcs[a], arcs[next]
                )));
            }
            crossings.push(end_owner);
        }
        let mut sorted = crossings.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != crossings.len() {
            return Err(invariant(format!("region boundary meets a star twice: {crossings:?}")));
        }
        let nonzero = crossings.iter().filter(|&&j| !p.sets()[j].is_zero_rotation()).count();
        if nonzero > 1 {
            return Err(invariant(format!(
                "region touches {nonzero} nonzero-rotation sets: {crossings:?}"
            )));
        }
        let cc = crossings.len() - nonzero;
        regions.push(Region { arcs: arc_ids, boundary_sets: crossings, cc });
    }
    regions.sort_by_key(|r| r.arcs[0]);

    let k = p.sets().len();
    let d = p.degree().get() as usize;
    let ell: usize = p.sets().iter().filter(|s| !s.is_zero_rotation()).map(|s| s.cardinality()).sum();
    let by_lemma = ell + d - k;
    let by_sets = 1 + p.sets().iter().map(|s| s.cardinality() - 1).sum::<usize>();
    if by_lemma != by_sets || by_sets != regions.len() {
        return Err(invariant(format!(
            "region count {} disagrees with formulas ℓ+d−k = {by_lemma}, 1+Σ(|T|−1) = {by_sets}",
            regions.len()
        )));
    }
    Ok(regions)
}

/// Per-region critical capacity; they must sum to `d - 1`.
pub fn critical_capacities(p: &ValidPortrait, regions: &[Region]) -> Result<Vec<usize>> {
    let caps: Vec<usize> = regions.iter().map(|r| r.cc).collect();
    let d = p.degree().get() as usize;
    if caps.iter().sum::<usize>() != d - 1 {
        return Err(invariant(format!("critical capacities {caps:?} do not sum to {}", d - 1)));
    }
    Ok(caps)
}

fn region_of_arcs(regions: &[Region], arc_count: usize) -> Vec<usize> {
    let mut of = vec![usize::MAX; arc_count];
    for (i, r) in regions.iter().enumerate() {
        for &a in &r.arcs {
            of[a] = i;
        }
    }
    of
}

/// Region index in gap `g` of set `j`, checking that both arcs flanking the
/// gap's end points agree.
fn region_in_gap(
    layout: &Layout,
    region_of: &[usize],
    set: &[Angle],
    g: usize,
) -> Result<usize> {
    let after = region_of[layout.arc_after(set[g])?];
    let before = region_of[layout.arc_before(set[(g + 1) % set.len()])?];
    if after != before {
        return Err(invariant(format!(
            "gap ({}, {}) is split between regions {after} and {before}",
            set[g],
            set[(g + 1) % set.len()]
        )));
    }
    Ok(after)
}

/// `τ` on regions: a region bordering a nonzero-rotation set `T` in the gap
/// `(θ, θ′)` maps to the region bordering `T` in the gap `(dθ, dθ′)`;
/// every other region is fixed. Returned as region indices.
pub fn region_dynamics(p: &ValidPortrait, regions: &[Region]) -> Result<Vec<usize>> {
    let layout = Layout::new(p);
    let region_of = region_of_arcs(regions, layout.union.len());
    let d = p.degree();
    let mut image: Vec<usize> = (0..regions.len()).collect();
    for (i, r) in regions.iter().enumerate() {
        let mut nonzero = r.boundary_sets.iter().filter(|&&j| !p.sets()[j].is_zero_rotation());
        let Some(&l) = nonzero.next() else { continue };
        if nonzero.next().is_some() {
            return Err(invariant(format!("region {i} has two nonzero-rotation boundary sets")));
        }
        let set = p.sets()[l].angles();
        let g = arc_gap(set, layout.union[r.arcs[0]]);
        let theta = set[g];
        let theta2 = set[(g + 1) % set.len()];
        let ccw = region_of[layout.arc_after(map_angle(theta, d)?)?];
        let cw = region_of[layout.arc_before(map_angle(theta2, d)?)?];
        if ccw != cw {
            return Err(invariant(format!(
                "images of region {i} land in regions {ccw} and {cw}"
            )));
        }
        image[i] = ccw;
    }
    Ok(image)
}

/// Vertex dynamics on an assembled tree: Julia vertices fixed, Fatou
/// vertices moved by [`region_dynamics`].
pub fn vertex_dynamics(p: &ValidPortrait, regions: &[Region], ct: &ConstructedTree) -> Result<Vec<VertexId>> {
    let mut tau: Vec<VertexId> = (0..ct.tree.vertex_count()).collect();
    for (i, &target) in region_dynamics(p, regions)?.iter().enumerate() {
        tau[ct.fatou_vertex[i]] = ct.fatou_vertex[target];
    }
    Ok(tau)
}

/// Builds the tree: vertices `v1..vk` for the sets then `w1..wr` for the
/// regions, δ(v) = 1, δ(w) = cc + 1, consecutive angles `1/m` everywhere.
pub fn assemble_tree(p: &ValidPortrait) -> Result<ConstructedTree> {
    let regions = build_regions(p)?;
    critical_capacities(p, &regions)?;
    let layout = Layout::new(p);
    let region_of = region_of_arcs(&regions, layout.union.len());
    let k = p.sets().len();
    let julia_vertex: Vec<VertexId> = (0..k).collect();
    let fatou_vertex: Vec<VertexId> = (k..k + regions.len()).collect();

    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut edge_index: BTreeMap<(usize, usize), EdgeId> = BTreeMap::new();
    let mut fatou_rotation = Vec::with_capacity(regions.len());
    for (i, r) in regions.iter().enumerate() {
        let mut rot = Vec::with_capacity(r.boundary_sets.len());
        for &j in &r.boundary_sets {
            edge_index.insert((j, i), edges.len());
            rot.push(edges.len());
            edges.push((julia_vertex[j], fatou_vertex[i]));
        }
        fatou_rotation.push(rot);
    }

    let mut julia_rotation = Vec::with_capacity(k);
    let mut spoke_anchor = Vec::with_capacity(k);
    for (j, s) in p.sets().iter().enumerate() {
        let set = s.angles();
        let mut rot = Vec::with_capacity(set.len());
        for g in 0..set.len() {
            let i = region_in_gap(&layout, &region_of, set, g)?;
            let e = *edge_index
                .get(&(j, i))
                .ok_or_else(|| invariant(format!("set {j} borders region {i} without an edge")))?;
            if rot.contains(&e) {
                return Err(invariant(format!("set {j} meets region {i} in two gaps")));
            }
            rot.push(e);
        }
        julia_rotation.push(rot);
        spoke_anchor.push((0..set.len()).map(|g| set[(g + 1) % set.len()]).collect());
    }

    let zero_owner = layout.owners[layout.position(Angle::ZERO)?];
    let owner_len = p.sets()[zero_owner.set].cardinality();
    let marked_sector = Sector {
        vertex: julia_vertex[zero_owner.set],
        index: (zero_owner.index + owner_len - 1) % owner_len,
    };

    let equal_gaps = |m: usize| vec![Angle::new(1, m as u128).expect("m >= 1"); m];
    let mut specs: Vec<VertexSpec> = Vec::with_capacity(k + regions.len());
    for (j, rot) in julia_rotation.into_iter().enumerate() {
        specs.push(VertexSpec {
            name: format!("v{}", j + 1),
            gaps: equal_gaps(rot.len()),
            rotation: rot,
            tau: julia_vertex[j],
            delta: 1,
        });
    }
    for (i, rot) in fatou_rotation.into_iter().enumerate() {
        specs.push(VertexSpec {
            name: format!("w{}", i + 1),
            gaps: equal_gaps(rot.len()),
            rotation: rot,
            tau: fatou_vertex[i],
            delta: regions[i].cc as u32 + 1,
        });
    }
    let tree = AngledTree::new(specs.clone(), edges.clone())?;
    let mut ct = ConstructedTree { tree, julia_vertex, fatou_vertex, spoke_anchor, marked_sector };
    let tau = vertex_dynamics(p, &regions, &ct)?;
    for (spec, t) in specs.iter_mut().zip(tau) {
        spec.tau = t;
    }
    ct.tree = AngledTree::new(specs, edges)?;

    if ct.tree.edge_count() + 1 != ct.tree.vertex_count() {
        return Err(invariant(format!(
            "{} edges on {} vertices is not a tree",
            ct.tree.edge_count(),
            ct.tree.vertex_count()
        )));
    }
    if ct.tree.total_degree() != p.degree().get() as u64 {
        return Err(invariant(format!(
            "total degree {} differs from portrait degree {}",
            ct.tree.total_degree(),
            p.degree()
        )));
    }
    Ok(ct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angle::Degree;
    use crate::portrait::{validate_portrait, Portrait};

    fn valid(d: i64, sets: &[&[&str]]) -> ValidPortrait {
        let sets = sets.iter().map(|s| s.iter().map(|x| x.parse().unwrap()).collect()).collect();
        validate_portrait(&Portrait::new(Degree::new(d).unwrap(), sets).unwrap()).unwrap()
    }

    fn arc(s: &str, e: &str) -> ElementaryArc {
        ElementaryArc { start: s.parse().unwrap(), end: e.parse().unwrap() }
    }

    fn degree5() -> ValidPortrait {
        valid(5, &[&["0", "3/4"], &["1/8", "5/8"], &["1/4"], &["1/2"]])
    }

    fn basilica() -> ValidPortrait {
        valid(2, &[&["0"], &["1/3", "2/3"]])
    }

    #[test]
    fn arcs() {
        assert_eq!(
            elementary_arcs(&degree5()),
            vec![
                arc("0", "1/8"),
                arc("1/8", "1/4"),
                arc("1/4", "1/2"),
                arc("1/2", "5/8"),
                arc("5/8", "3/4"),
                arc("3/4", "0"),
            ]
        );
        assert_eq!(elementary_arcs(&basilica()).len(), 3);
        assert_eq!(elementary_arcs(&valid(2, &[&["0"]])), vec![arc("0", "0")]);
    }

    #[test]
    fn degree5_regions() {
        let p = degree5();
        let regions = build_regions(&p).unwrap();
        let arcs: Vec<Vec<usize>> = regions.iter().map(|r| r.arcs.clone()).collect();
        assert_eq!(arcs, vec![vec![0, 4], vec![1, 2, 3], vec![5]]);
        assert_eq!(critical_capacities(&p, &regions).unwrap(), vec![1, 2, 1]);
        assert_eq!(regions[1].boundary_sets, vec![2, 3, 1]);
        assert_eq!(region_dynamics(&p, &regions).unwrap(), vec![1, 0, 2]);
    }

    #[test]
    fn basilica_regions() {
        let p = basilica();
        let regions = build_regions(&p).unwrap();
        let arcs: Vec<Vec<usize>> = regions.iter().map(|r| r.arcs.clone()).collect();
        assert_eq!(arcs, vec![vec![0, 2], vec![1]]);
        assert_eq!(critical_capacities(&p, &regions).unwrap(), vec![1, 0]);
        assert_eq!(region_dynamics(&p, &regions).unwrap(), vec![1, 0]);
    }

    #[test]
    fn single_angle() {
        let p = valid(2, &[&["0"]]);
        let regions = build_regions(&p).unwrap();
        assert_eq!(critical_capacities(&p, &regions).unwrap(), vec![1]);
        let ct = assemble_tree(&p).unwrap();
        assert_eq!((ct.tree.vertex_count(), ct.tree.edge_count()), (2, 1));
        assert_eq!(ct.tree.fixed_points(), vec![0, 1]);
        assert_eq!(ct.marked_sector, Sector { vertex: 0, index: 0 });
    }

    #[test]
    fn degree5_tree() {
        let ct = assemble_tree(&degree5()).unwrap();
        let t = &ct.tree;
        assert_eq!((t.vertex_count(), t.edge_count()), (7, 6));
        let deltas: Vec<u32> = (0..7).map(|v| t.delta(v)).collect();
        assert_eq!(deltas, vec![1, 1, 1, 1, 2, 3, 2]);
        assert_eq!(t.total_degree(), 5);
        let taus: Vec<VertexId> = (0..7).map(|v| t.tau(v)).collect();
        assert_eq!(taus, vec![0, 1, 2, 3, 5, 4, 6]);
        for (j, &v) in ct.julia_vertex.iter().enumerate() {
            assert_eq!(t.degree(v), [2, 2, 1, 1][j]);
        }
        assert_eq!(ct.marked_sector, Sector { vertex: 0, index: 1 });
    }

    #[test]
    fn only_zero_rotation_means_identity() {
        let p = valid(4, &[&["0", "2/3"], &["1/3"]]);
        let ct = assemble_tree(&p).unwrap();
        assert_eq!(ct.tree.fixed_points().len(), ct.tree.vertex_count());
    }
}
