//! Angled trees with vertex dynamics and local degree, and the checks that
//! make one an expanding abstract Hubbard tree.
//!
//! Angles are stored per vertex as a counterclockwise edge order together
//! with the angle between each edge and its successor. The angle between
//! any two incident edges is the sum of the gaps between them, so
//! additivity holds whenever the gaps close up to a whole turn.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::angle::Angle;
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngledTree {
    names: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    rotation: Vec<Vec<EdgeId>>,
    gaps: Vec<Vec<Angle>>,
    tau: Vec<VertexId>,
    delta: Vec<u32>,
}

/// Builder input for [`AngledTree::new`]: one entry per vertex.
#[derive(Clone, Debug)]
pub struct VertexSpec {
    pub name: String,
    /// Incident edges in counterclockwise order.
    pub rotation: Vec<EdgeId>,
    /// `gaps[i]` is the angle from `rotation[i]` to `rotation[i + 1]` (cyclically).
    pub gaps: Vec<Angle>,
    pub tau: VertexId,
    pub delta: u32,
}

impl AngledTree {
    /// Assembles a tree from its parts. Only structural consistency is
    /// enforced here (indices in range, each edge listed exactly at its two
    /// endpoints); the tree axioms are left to [`check_tree_axioms`].
    pub fn new(vertices: Vec<VertexSpec>, edges: Vec<(VertexId, VertexId)>) -> Result<AngledTree> {
        let n = vertices.len();
        let malformed = |m: String| Error::Precondition(format!("malformed tree: {m}"));
        let mut seen = vec![0usize; edges.len()];
        for (v, spec) in vertices.iter().enumerate() {
            if spec.tau >= n {
                return Err(malformed(format!("tau({}) out of range", spec.name)));
            }
            if spec.delta == 0 {
                return Err(malformed(format!("delta({}) must be positive", spec.name)));
            }
            if spec.rotation.len() != spec.gaps.len() {
                return Err(malformed(format!("{}: one gap per incident edge", spec.name)));
            }
            for &e in &spec.rotation {
                let (a, b) = *edges
                    .get(e)
                    .ok_or_else(|| malformed(format!("edge {e} out of range")))?;
                if a != v && b != v {
                    return Err(malformed(format!("edge {e} not incident to {}", spec.name)));
                }
                seen[e] += 1;
            }
        }
        for (e, &(a, b)) in edges.iter().enumerate() {
            if a >= n || b >= n {
                return Err(malformed(format!("edge {e} endpoint out of range")));
            }
            let expected = if a == b { 1 } else { 2 };
            if seen[e] != expected {
                return Err(malformed(format!("edge {e} listed {} times", seen[e])));
            }
        }
        let mut names = Vec::with_capacity(n);
        let mut rotation = Vec::with_capacity(n);
        let mut gaps = Vec::with_capacity(n);
        let mut tau = Vec::with_capacity(n);
        let mut delta = Vec::with_capacity(n);
        for spec in vertices {
            names.push(spec.name);
            rotation.push(spec.rotation);
            gaps.push(spec.gaps);
            tau.push(spec.tau);
            delta.push(spec.delta);
        }
        Ok(AngledTree { names, edges, rotation, gaps, tau, delta })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// Incident edges of `v` in counterclockwise order.
    pub fn rotation(&self, v: VertexId) -> &[EdgeId] {
        &self.rotation[v]
    }

    pub fn gaps(&self, v: VertexId) -> &[Angle] {
        &self.gaps[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation[v].len()
    }

    pub fn tau(&self, v: VertexId) -> VertexId {
        self.tau[v]
    }

    pub fn delta(&self, v: VertexId) -> u32 {
        self.delta[v]
    }

    pub fn other_end(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn position(&self, v: VertexId, e: EdgeId) -> Option<usize> {
        self.rotation[v].iter().position(|&x| x == e)
    }

    /// `∠_v(e, e2)`: the counterclockwise angle from `e` to `e2` at `v`.
    pub fn angle(&self, v: VertexId, e: EdgeId, e2: EdgeId) -> Result<Angle> {
        let not_incident = |x: EdgeId| Error::Precondition(format!("edge {x} not at {}", self.names[v]));
        let a = self.position(v, e).ok_or_else(|| not_incident(e))?;
        let b = self.position(v, e2).ok_or_else(|| not_incident(e2))?;
        let m = self.degree(v);
        let mut total = Angle::ZERO;
        let mut i = a;
        while i != b {
            total = total.checked_add(self.gaps[v][i])?;
            i = (i + 1) % m;
        }
        Ok(total)
    }

    /// `d(δ) = 1 + Σ (δ(v) − 1)`.
    pub fn total_degree(&self) -> u64 {
        1 + self.delta.iter().map(|&x| x as u64 - 1).sum::<u64>()
    }

    pub fn is_critical(&self, v: VertexId) -> bool {
        self.delta[v] > 1
    }

    fn bfs_parents(&self, root: VertexId) -> Vec<Option<(VertexId, EdgeId)>> {
        let mut parent = vec![None; self.vertex_count()];
        let mut seen = vec![false; self.vertex_count()];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &e in &self.rotation[v] {
                let u = self.other_end(e, v);
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some((v, e));
                    queue.push_back(u);
                }
            }
        }
        parent
    }

    /// Edges of the unique path from `from` to `to`, in order. Requires a tree.
    pub fn path_edges(&self, from: VertexId, to: VertexId) -> Vec<EdgeId> {
        let parent = self.bfs_parents(from);
        let mut edges = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, e) = parent[cur].expect("tree is connected");
            edges.push(e);
            cur = p;
        }
        edges.reverse();
        edges
    }

    /// Vertices of the unique path from `from` to `to`, endpoints included.
    pub fn path(&self, from: VertexId, to: VertexId) -> Vec<VertexId> {
        let mut out = vec![from];
        let mut cur = from;
        for e in self.path_edges(from, to) {
            cur = self.other_end(e, cur);
            out.push(cur);
        }
        out
    }

    pub fn distance(&self, from: VertexId, to: VertexId) -> usize {
        self.path_edges(from, to).len()
    }

    pub fn fixed_points(&self) -> Vec<VertexId> {
        (0..self.vertex_count()).filter(|&v| self.tau[v] == v).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum TreeCheck {
    Connected,
    Acyclic,
    AngleSkew,
    AngleZero,
    AngleAdditive,
    Adjacency,
    TotalDegree,
    DegreeAngle,
    JuliaNormalization,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeViolation {
    pub check: TreeCheck,
    pub detail: String,
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.check, self.detail)
    }
}

fn violation(check: TreeCheck, detail: impl Into<String>) -> TreeViolation {
    TreeViolation { check, detail: detail.into() }
}

/// Connectivity, acyclicity, the angle axioms, the adjacency condition on
/// `τ`, and `d(δ) ≥ 2`. Returns every failure found.
pub fn check_tree_axioms(t: &AngledTree) -> Vec<TreeViolation> {
    let mut out = Vec::new();
    let n = t.vertex_count();
    if n == 0 {
        out.push(violation(TreeCheck::Connected, "tree has no vertices"));
        return out;
    }
    let parent = t.bfs_parents(0);
    let unreached: Vec<&str> = (1..n).filter(|&v| parent[v].is_none()).map(|v| t.name(v)).collect();
    if !unreached.is_empty() {
        out.push(violation(TreeCheck::Connected, format!("unreachable: {}", unreached.join(" "))));
    }
    if let Some(e) = t.edges.iter().position(|&(a, b)| a == b) {
        out.push(violation(TreeCheck::Acyclic, format!("edge {e} is a loop")));
    } else if t.edge_count() + 1 != n {
        out.push(violation(
            TreeCheck::Acyclic,
            format!("{} edges on {n} vertices", t.edge_count()),
        ));
    }

    for v in 0..n {
        let rot = t.rotation(v);
        for &a in rot {
            for &b in rot {
                let (Ok(ab), Ok(ba)) = (t.angle(v, a, b), t.angle(v, b, a)) else {
                    out.push(violation(TreeCheck::AngleAdditive, format!("angle overflow at {}", t.name(v))));
                    continue;
                };
                if ab != -ba {
                    out.push(violation(
                        TreeCheck::AngleSkew,
                        format!("at {}: ∠(e{a},e{b})={ab} but ∠(e{b},e{a})={ba}", t.name(v)),
                    ));
                }
                if (a == b) != ab.is_zero() {
                    out.push(violation(
                        TreeCheck::AngleZero,
                        format!("at {}: ∠(e{a},e{b})={ab}", t.name(v)),
                    ));
                }
                for &c in rot {
                    let sum = t.angle(v, b, c).and_then(|bc| ab.checked_add(bc));
                    if sum.ok() != t.angle(v, a, c).ok() {
                        out.push(violation(
                            TreeCheck::AngleAdditive,
                            format!("at {}: edges e{a}, e{b}, e{c}", t.name(v)),
                        ));
                    }
                }
            }
        }
    }

    for (e, &(a, b)) in t.edges.iter().enumerate() {
        if t.tau(a) == t.tau(b) {
            out.push(violation(
                TreeCheck::Adjacency,
                format!("edge {e} ({}, {}) collapses to {}", t.name(a), t.name(b), t.name(t.tau(a))),
            ));
        }
    }

    if t.total_degree() < 2 {
        out.push(violation(TreeCheck::TotalDegree, "d(δ) = 1: no critical vertex"));
    }
    out
}

/// The image of edge `e` under the path extension of `τ`: the vertices of
/// the shortest path from `τ(a)` to `τ(b)`.
pub fn edge_image_path(t: &AngledTree, e: EdgeId) -> Vec<VertexId> {
    let (a, b) = t.edge(e);
    t.path(t.tau(a), t.tau(b))
}

/// First edge at `τ(v)` of the image of the incident edge `e`.
pub fn image_germ(t: &AngledTree, v: VertexId, e: EdgeId) -> Option<EdgeId> {
    let u = t.other_end(e, v);
    t.path_edges(t.tau(v), t.tau(u)).first().copied()
}

/// `∠_{τ(v)}(τℓ, τℓ′) = δ(v)·∠_v(ℓ, ℓ′)` for all incident pairs, measured on germs.
pub fn check_degree_angle(t: &AngledTree) -> Vec<TreeViolation> {
    let mut out = Vec::new();
    for v in 0..t.vertex_count() {
        let image = t.tau(v);
        let germs: Vec<Option<EdgeId>> = t.rotation(v).iter().map(|&e| image_germ(t, v, e)).collect();
        for (i, &l) in t.rotation(v).iter().enumerate() {
            for (j, &l2) in t.rotation(v).iter().enumerate() {
                let (Some(g), Some(g2)) = (germs[i], germs[j]) else {
                    out.push(violation(TreeCheck::DegreeAngle, format!("degenerate image at {}", t.name(v))));
                    continue;
                };
                let lhs = t.angle(image, g, g2);
                let rhs = t.angle(v, l, l2).and_then(|x| x.times(t.delta(v) as u64));
                if lhs.is_err() || lhs != rhs {
                    out.push(violation(
                        TreeCheck::DegreeAngle,
                        format!(
                            "at {}: edges e{l}, e{l2} map to germs e{g}, e{g2} at {}",
                            t.name(v),
                            t.name(image)
                        ),
                    ));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum VertexKind {
    Fatou,
    Julia,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Fatou => "fatou",
            VertexKind::Julia => "julia",
        })
    }
}

/// Orbit bookkeeping per vertex. `cycle` is the smallest vertex id on the
/// cycle the orbit falls into.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub kind: Vec<VertexKind>,
    pub cycle: Vec<VertexId>,
    pub preperiod: Vec<usize>,
    pub period: Vec<usize>,
}

impl VertexClass {
    pub fn is_periodic(&self, v: VertexId) -> bool {
        self.preperiod[v] == 0
    }

    pub fn count(&self, kind: VertexKind) -> usize {
        self.kind.iter().filter(|&&k| k == kind).count()
    }
}

pub fn classify_vertices(t: &AngledTree) -> VertexClass {
    let n = t.vertex_count();
    let mut class = VertexClass {
        kind: Vec::with_capacity(n),
        cycle: Vec::with_capacity(n),
        preperiod: Vec::with_capacity(n),
        period: Vec::with_capacity(n),
    };
    for v in 0..n {
        let mut step = vec![usize::MAX; n];
        let mut cur = v;
        let mut k = 0;
        while step[cur] == usize::MAX {
            step[cur] = k;
            cur = t.tau(cur);
            k += 1;
        }
        let preperiod = step[cur];
        let period = k - preperiod;
        let mut cycle = Vec::with_capacity(period);
        let mut c = cur;
        for _ in 0..period {
            cycle.push(c);
            c = t.tau(c);
        }
        let critical = cycle.iter().any(|&c| t.is_critical(c));
        class.kind.push(if critical { VertexKind::Fatou } else { VertexKind::Julia });
        class.cycle.push(*cycle.iter().min().expect("cycle is non-empty"));
        class.preperiod.push(preperiod);
        class.period.push(period);
    }
    class
}

/// Every Julia–Julia edge is eventually stretched to distance > 1.
/// On failure returns the first edge that never separates.
pub fn check_expanding(t: &AngledTree, class: &VertexClass) -> std::result::Result<(), EdgeId> {
    let n = t.vertex_count();
    let bound = n * n;
    for (e, &(a, b)) in t.edges().iter().enumerate() {
        if class.kind[a] != VertexKind::Julia || class.kind[b] != VertexKind::Julia {
            continue;
        }
        let (mut x, mut y) = (a, b);
        let mut stretched = false;
        for _ in 0..bound {
            x = t.tau(x);
            y = t.tau(y);
            if t.distance(x, y) > 1 {
                stretched = true;
                break;
            }
        }
        if !stretched {
            return Err(e);
        }
    }
    Ok(())
}

/// At each periodic Julia vertex with `m` edges all angles are multiples of `1/m`.
pub fn check_julia_normalization(t: &AngledTree, class: &VertexClass) -> Vec<TreeViolation> {
    let mut out = Vec::new();
    for v in 0..t.vertex_count() {
        if class.kind[v] != VertexKind::Julia || !class.is_periodic(v) {
            continue;
        }
        let m = t.degree(v) as u64;
        for &a in t.rotation(v) {
            for &b in t.rotation(v) {
                match t.angle(v, a, b) {
                    Ok(x) if x.is_multiple_of_inverse(m) => {}
                    other => out.push(violation(
                        TreeCheck::JuliaNormalization,
                        format!("at {}: ∠(e{a},e{b}) = {other:?} with {m} edges", t.name(v)),
                    )),
                }
            }
        }
    }
    out
}

pub fn count_fixed_points(t: &AngledTree) -> usize {
    t.fixed_points().len()
}
