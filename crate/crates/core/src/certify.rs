//! End-to-end certification of one portrait: validate, construct, run every
//! tree check, recover, and compare. The result is a [`Report`] that renders
//! as line-oriented text or JSON with the same content.

use std::fmt::Write as _;

use serde::Serialize;

use crate::angle::Angle;
use crate::builder::{assemble_tree, build_regions, elementary_arcs, ConstructedTree, ElementaryArc, Region};
use crate::portrait::{validate_portrait, Portrait, ValidPortrait, Violation};
use crate::recovery::recover_portrait;
use crate::tree::{
    check_degree_angle, check_expanding, check_julia_normalization, check_tree_axioms,
    classify_vertices, TreeViolation, VertexKind,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionRow {
    pub name: String,
    pub arcs: Vec<ElementaryArc>,
    pub boundary: Vec<String>,
    pub cc: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexRow {
    pub name: String,
    pub kind: VertexKind,
    pub delta: u32,
    pub tau: String,
    pub period: usize,
    /// Neighbours in counterclockwise order.
    pub order: Vec<String>,
    /// Angle from each neighbour's edge to the next.
    pub angles: Vec<Angle>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPoints {
    pub total: usize,
    pub julia: usize,
    pub fatou: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub degree: u32,
    pub sets: Vec<Vec<Angle>>,
    pub valid: bool,
    pub violations: Vec<Violation>,
    pub skipped: Vec<String>,
    pub construction_error: Option<String>,
    pub regions: Vec<RegionRow>,
    pub vertices: Vec<VertexRow>,
    pub edges: Vec<(String, String)>,
    pub total_degree: Option<u64>,
    pub fixed_points: Option<FixedPoints>,
    pub checks: Vec<CheckRow>,
    pub recovered: Option<Vec<Vec<Angle>>>,
    pub round_trip: Option<bool>,
}

impl Report {
    /// Valid, constructed, every check passed, and recovery reproduced the input.
    pub fn passed(&self) -> bool {
        self.valid
            && self.construction_error.is_none()
            && self.checks.iter().all(|c| c.passed)
            && self.round_trip == Some(true)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report is serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "degree {}", self.degree);
        for (j, set) in self.sets.iter().enumerate() {
            let _ = writeln!(s, "T{} {}", j + 1, join(set));
        }
        if self.valid {
            let _ = writeln!(s, "validation: ok");
        } else {
            let _ = writeln!(s, "validation: failed");
            for v in &self.violations {
                let _ = writeln!(s, "  violation {v}");
            }
            for note in &self.skipped {
                let _ = writeln!(s, "  note {note}");
            }
        }
        if let Some(err) = &self.construction_error {
            let _ = writeln!(s, "construction: failed: {err}");
        }
        if !self.regions.is_empty() {
            let _ = writeln!(s, "regions:");
            for r in &self.regions {
                let arcs: Vec<String> = r.arcs.iter().map(|a| format!("({}, {})", a.start, a.end)).collect();
                let _ = writeln!(
                    s,
                    "  {} arcs {} boundary {} cc {}",
                    r.name,
                    arcs.join(" "),
                    r.boundary.join(" "),
                    r.cc
                );
            }
        }
        if !self.vertices.is_empty() {
            let _ = writeln!(s, "vertices:");
            for v in &self.vertices {
                let _ = writeln!(
                    s,
                    "  {} {} delta {} tau {} period {} order {} angles {}",
                    v.name,
                    v.kind,
                    v.delta,
                    v.tau,
                    v.period,
                    v.order.join(" "),
                    join(&v.angles)
                );
            }
            let _ = writeln!(s, "edges:");
            for (a, b) in &self.edges {
                let _ = writeln!(s, "  {a} {b}");
            }
        }
        if let Some(d) = self.total_degree {
            let _ = writeln!(s, "total degree: {d}");
        }
        if let Some(f) = &self.fixed_points {
            let _ = writeln!(s, "fixed points: {} (julia {}, fatou {})", f.total, f.julia, f.fatou);
        }
        for c in &self.checks {
            let _ = writeln!(s, "check {}: {}", c.name, if c.passed { "ok" } else { "FAILED" });
            for d in &c.details {
                let _ = writeln!(s, "  {d}");
            }
        }
        if let Some(rec) = &self.recovered {
            let sets: Vec<String> = rec.iter().map(|x| format!("{{{}}}", join(x))).collect();
            let _ = writeln!(s, "recovered: {}", sets.join(" "));
        }
        match self.round_trip {
            Some(true) => s.push_str("round trip: identical\n"),
            Some(false) => s.push_str("round trip: MISMATCH\n"),
            None => {}
        }
        let _ = writeln!(s, "result: {}", if self.passed() { "pass" } else { "fail" });
        s
    }
}

fn join(angles: &[Angle]) -> String {
    angles.iter().map(Angle::to_string).collect::<Vec<_>>().join(" ")
}

fn check_row(name: &str, violations: Vec<TreeViolation>) -> CheckRow {
    CheckRow {
        name: name.into(),
        passed: violations.is_empty(),
        details: violations.iter().map(ToString::to_string).collect(),
    }
}

fn fill_construction(report: &mut Report, p: &ValidPortrait, regions: &[Region], ct: &ConstructedTree) {
    let t = &ct.tree;
    let arcs = elementary_arcs(p);
    report.regions = regions
        .iter()
        .enumerate()
        .map(|(i, r)| RegionRow {
            name: format!("U{}", i + 1),
            arcs: r.arcs.iter().map(|&a| arcs[a]).collect(),
            boundary: r.boundary_sets.iter().map(|j| format!("T{}", j + 1)).collect(),
            cc: r.cc,
        })
        .collect();

    let class = classify_vertices(t);
    report.vertices = (0..t.vertex_count())
        .map(|v| VertexRow {
            name: t.name(v).to_string(),
            kind: class.kind[v],
            delta: t.delta(v),
            tau: t.name(t.tau(v)).to_string(),
            period: class.period[v],
            order: t.rotation(v).iter().map(|&e| t.name(t.other_end(e, v)).to_string()).collect(),
            angles: t.gaps(v).to_vec(),
        })
        .collect();
    report.edges = t
        .edges()
        .iter()
        .map(|&(a, b)| (t.name(a).to_string(), t.name(b).to_string()))
        .collect();
    report.total_degree = Some(t.total_degree());

    let fixed = t.fixed_points();
    let julia = fixed.iter().filter(|&&v| class.kind[v] == VertexKind::Julia).count();
    let counts = FixedPoints { total: fixed.len(), julia, fatou: fixed.len() - julia };
    let d = p.degree().get() as usize;
    let k = p.sets().len();
    let mut lemma = Vec::new();
    if counts.total != d || counts.julia != k || counts.fatou != d - k {
        lemma.push(format!(
            "expected {d} fixed points ({k} julia, {} fatou), found {} ({}, {})",
            d - k,
            counts.total,
            counts.julia,
            counts.fatou
        ));
    }
    report.fixed_points = Some(counts);

    let axioms = check_tree_axioms(t);
    let axioms_ok = axioms.is_empty();
    report.checks.push(check_row("tree-axioms", axioms));
    if axioms_ok {
        report.checks.push(check_row("degree-angle", check_degree_angle(t)));
        report.checks.push(check_row("julia-normalization", check_julia_normalization(t, &class)));
        report.checks.push(CheckRow {
            name: "expanding".into(),
            passed: check_expanding(t, &class).is_ok(),
            details: match check_expanding(t, &class) {
                Ok(()) => vec![],
                Err(e) => {
                    let (a, b) = t.edge(e);
                    vec![format!("edge {} {} is never stretched", t.name(a), t.name(b))]
                }
            },
        });
    }
    report.checks.push(CheckRow { name: "fixed-points".into(), passed: lemma.is_empty(), details: lemma });
}

pub fn certify(p: &Portrait) -> Report {
    let mut report = Report {
        degree: p.degree().get(),
        sets: p.sets().to_vec(),
        valid: false,
        violations: vec![],
        skipped: vec![],
        construction_error: None,
        regions: vec![],
        vertices: vec![],
        edges: vec![],
        total_degree: None,
        fixed_points: None,
        checks: vec![],
        recovered: None,
        round_trip: None,
    };
    let valid = match validate_portrait(p) {
        Ok(v) => v,
        Err(v) => {
            report.violations = v.violations;
            report.skipped = v.skipped;
            return report;
        }
    };
    report.valid = true;
    let built = build_regions(&valid).and_then(|regions| Ok((assemble_tree(&valid)?, regions)));
    let (ct, regions) = match built {
        Ok(x) => x,
        Err(e) => {
            report.construction_error = Some(e.to_string());
            return report;
        }
    };
    fill_construction(&mut report, &valid, &regions, &ct);
    if !report.checks.iter().all(|c| c.passed) {
        return report;
    }
    match recover_portrait(&ct) {
        Ok(rec) => {
            report.round_trip = Some(&rec == p);
            report.recovered = Some(rec.sets().to_vec());
        }
        Err(e) => {
            report.checks.push(CheckRow { name: "recovery".into(), passed: false, details: vec![e.to_string()] });
            report.round_trip = Some(false);
        }
    }
    report
}
