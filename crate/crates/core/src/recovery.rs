//! Reading the portrait back off a constructed tree.
//!
//! Each sector at a periodic Julia vertex carries exactly one landing ray,
//! and rays map along with sectors. Walking counterclockwise around the
//! planar tree from the marked sector visits the rays in increasing angle,
//! which pins down the fixed rays directly and gives every other fixed
//! vertex's rays as a rotation set known by cardinality, shift and
//! deployment. That data determines the set uniquely.

use std::collections::{BTreeMap, HashMap};

use crate::angle::{Angle, Degree};
use crate::builder::{ConstructedTree, Sector};
use crate::error::{invariant, Result};
use crate::portrait::Portrait;
use crate::rotation::{generate_rotation_set, DeploymentVector};
use crate::tree::{classify_vertices, image_germ, AngledTree, VertexId, VertexKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryWalk {
    /// Sectors in the order visited; starts at the marked sector.
    pub sectors: Vec<Sector>,
    pub marked: usize,
}

impl BoundaryWalk {
    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }
}

fn walk_from(tree: &AngledTree, start: Sector) -> Result<Vec<Sector>> {
    let expected = 2 * tree.edge_count();
    let mut sectors = Vec::with_capacity(expected);
    let mut cur = start;
    loop {
        sectors.push(cur);
        if sectors.len() > expected {
            break;
        }
        let rot = tree.rotation(cur.vertex);
        let leave = rot[(cur.index + 1) % rot.len()];
        let next = tree.other_end(leave, cur.vertex);
        let index = tree.position(next, leave).expect("edge is incident to its endpoint");
        cur = Sector { vertex: next, index };
        if cur == start {
            break;
        }
    }
    if sectors.len() != expected {
        return Err(invariant(format!(
            "boundary walk has {} sectors, expected {expected}",
            sectors.len()
        )));
    }
    Ok(sectors)
}

/// Counterclockwise traversal of the outer face: arriving at a vertex along
/// an edge, leave along its counterclockwise successor.
pub fn boundary_walk(ct: &ConstructedTree) -> Result<BoundaryWalk> {
    let sectors = walk_from(&ct.tree, ct.marked_sector)?;
    Ok(BoundaryWalk { sectors, marked: 0 })
}

/// Image of a sector at a Julia vertex: the sector at `τ(v)` bounded by the
/// germs of the images of its two bounding edges.
pub fn sector_map(ct: &ConstructedTree, s: Sector) -> Result<Sector> {
    let t = &ct.tree;
    let v = s.vertex;
    let rot = t.rotation(v);
    let m = rot.len();
    let image = t.tau(v);
    let germ = |e| {
        image_germ(t, v, e).ok_or_else(|| invariant(format!("edge e{e} at {} collapses", t.name(v))))
    };
    let g = germ(rot[s.index])?;
    let g2 = germ(rot[(s.index + 1) % m])?;
    let p = t.position(image, g).expect("germ is incident to the image vertex");
    let p2 = t.position(image, g2).expect("germ is incident to the image vertex");
    let m2 = t.degree(image);
    let consecutive = if m == 1 { m2 == 1 } else { p2 == (p + 1) % m2 && p != p2 };
    if !consecutive {
        return Err(invariant(format!(
            "sector {} of {} does not map to a sector of {}",
            s.index,
            t.name(v),
            t.name(image)
        )));
    }
    Ok(Sector { vertex: image, index: p })
}

/// Rebuilds the portrait from the tree, using only its combinatorics, the
/// marked sector, and the uniqueness of rotation sets.
pub fn recover_portrait(ct: &ConstructedTree) -> Result<Portrait> {
    let t = &ct.tree;
    let d = Degree::new(t.total_degree() as i64)?;
    let class = classify_vertices(t);
    let walk = boundary_walk(ct)?;
    let position: HashMap<Sector, usize> =
        walk.sectors.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    let fixed_julia: Vec<VertexId> = (0..t.vertex_count())
        .filter(|&v| t.tau(v) == v && class.kind[v] == VertexKind::Julia)
        .collect();

    let mut zero_vertices = Vec::new();
    let mut rotating = Vec::new();
    for &v in &fixed_julia {
        let sectors: Vec<Sector> = (0..t.degree(v)).map(|index| Sector { vertex: v, index }).collect();
        let images = sectors.iter().map(|&s| sector_map(ct, s)).collect::<Result<Vec<_>>>()?;
        let fixed = sectors.iter().zip(&images).filter(|(s, i)| s == i).count();
        if fixed == sectors.len() {
            zero_vertices.push(v);
        } else if fixed == 0 {
            rotating.push((v, sectors, images));
        } else {
            return Err(invariant(format!("{} has only some sectors fixed", t.name(v))));
        }
    }

    // fixed rays in walk order, the marked sector first
    let mut fixed_sectors: Vec<Sector> = walk
        .sectors
        .iter()
        .copied()
        .filter(|s| zero_vertices.contains(&s.vertex))
        .collect();
    let q = d.get() as usize - 1;
    if fixed_sectors.len() != q {
        return Err(invariant(format!(
            "found {} fixed-ray sectors, expected d - 1 = {q}",
            fixed_sectors.len()
        )));
    }
    if fixed_sectors.first() != Some(&ct.marked_sector) {
        return Err(invariant("marked sector does not carry a fixed ray"));
    }
    let mut by_vertex: BTreeMap<VertexId, Vec<Angle>> = BTreeMap::new();
    for (i, s) in fixed_sectors.drain(..).enumerate() {
        by_vertex.entry(s.vertex).or_default().push(Angle::new(i as i128, q as u128)?);
    }
    let fixed_positions: Vec<usize> = walk
        .sectors
        .iter()
        .enumerate()
        .filter(|(_, s)| zero_vertices.contains(&s.vertex))
        .map(|(i, _)| i)
        .collect();

    let mut sets: Vec<Vec<Angle>> = by_vertex.into_values().collect();
    for (v, mut sectors, images) in rotating {
        let image_of: HashMap<Sector, Sector> = sectors.iter().copied().zip(images).collect();
        sectors.sort_by_key(|s| position[s]);
        let n = sectors.len();
        let shift = sectors
            .iter()
            .position(|s| *s == image_of[&sectors[0]])
            .ok_or_else(|| invariant(format!("sectors of {} leave the vertex", t.name(v))))?;
        for (i, s) in sectors.iter().enumerate() {
            if image_of[s] != sectors[(i + shift) % n] {
                return Err(invariant(format!("sectors of {} are not rotated rigidly", t.name(v))));
            }
        }
        let mut counts = vec![0; q];
        for s in &sectors {
            let before = fixed_positions.partition_point(|&p| p < position[s]);
            counts[before - 1] += 1;
        }
        let deployment = DeploymentVector(counts);
        let set = generate_rotation_set(d, n, shift, &deployment)?.ok_or_else(|| {
            invariant(format!(
                "no rotation set with n={n}, m={shift}, deployment {deployment} at {}",
                t.name(v)
            ))
        })?;
        sets.push(set.angles().to_vec());
    }
    Portrait::new(d, sets)
}
