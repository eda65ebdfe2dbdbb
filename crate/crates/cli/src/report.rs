//! JSON records and human-readable renderings of command results.

use std::fmt::Write as _;

use mwb_core::blowup::MultiWeightedBlowup;
use mwb_core::groebner;
use mwb_core::invariant::{monomial_ideal_string, Center, Invariant, LogOrder};
use mwb_core::lattice::{normal_fan, RayId};
use mwb_core::monomial::MonomialIdeal;
use mwb_core::nondegenerate::{NondegeneracyReport, OneStepReport};
use mwb_core::poly::{monomial_string, rational_string, LogAmbient, PolyIdeal, Polynomial, Rational, VarKind};
use mwb_core::resolve::{slice, ReembedReport, ResolutionNode, ResolutionTree};
use serde::Serialize;
use serde_json::{json, Value};

use crate::TransformKind;

/// Rendered result of a command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub ambient: Value,
    pub text: String,
}

impl Report {
    fn new(command: &'static str, ambient: &LogAmbient, result: impl Serialize, text: String) -> Self {
        Report {
            command,
            result: serde_json::to_value(result).expect("serializable report"),
            ambient: ambient_json(ambient),
            text,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&json!({
            "command": self.command,
            "ambient": self.ambient,
            "result": self.result,
        }))
        .expect("serializable report")
    }
}

pub fn error_json(e: &mwb_core::Error) -> String {
    serde_json::to_string_pretty(&json!({
        "error": { "code": e.code(), "message": e.to_string() }
    }))
    .expect("serializable error")
}

fn ambient_json(a: &LogAmbient) -> Value {
    json!({
        "ordinary": a.vars.iter().filter(|v| !v.kind.is_log()).map(|v| &v.name).collect::<Vec<_>>(),
        "monomial": a.vars.iter().filter(|v| v.kind.is_log()).map(|v| &v.name).collect::<Vec<_>>(),
    })
}

#[derive(Serialize)]
struct VarJson {
    name: String,
    kind: &'static str,
}

fn kind_str(k: VarKind) -> &'static str {
    match k {
        VarKind::Ordinary => "ordinary",
        VarKind::Monomial => "monomial",
        VarKind::Exceptional => "exceptional",
    }
}

fn vars_json(a: &LogAmbient) -> Vec<VarJson> {
    a.vars
        .iter()
        .map(|v| VarJson {
            name: v.name.clone(),
            kind: kind_str(v.kind),
        })
        .collect()
}

fn tuple(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn rats(p: &[Rational]) -> Vec<String> {
    p.iter().map(rational_string).collect()
}

#[derive(Serialize)]
struct FacetJson {
    normal: Vec<i64>,
    level: i64,
    exceptional: bool,
}

#[derive(Serialize)]
struct ConeJson {
    vertex: Vec<i64>,
    rays: Vec<usize>,
}

#[derive(Serialize)]
struct NewtonJson {
    ideal: String,
    vertices: Vec<Vec<i64>>,
    facets: Vec<FacetJson>,
    cones: Vec<ConeJson>,
}

pub fn newton(amb: &LogAmbient, a: &MonomialIdeal) -> mwb_core::Result<Report> {
    let names = amb.names();
    let p = a.newton_polyhedron()?;
    let fan = normal_fan(&p);
    let facets: Vec<FacetJson> = fan
        .rays
        .iter()
        .map(|r| FacetJson {
            normal: r.direction.clone(),
            level: r.level,
            exceptional: matches!(r.id, RayId::Exceptional(_)),
        })
        .collect();
    let cones: Vec<ConeJson> = fan
        .maximal_cones
        .iter()
        .map(|c| ConeJson {
            vertex: c.vertex.clone(),
            rays: c.rays.clone(),
        })
        .collect();
    let ideal = monomial_ideal_string(a, &names);
    let mut t = String::new();
    let _ = writeln!(t, "ideal {ideal}");
    let verts: Vec<String> = p.vertices.iter().map(|v| tuple(v)).collect();
    let _ = writeln!(t, "vertices {}", verts.join(" "));
    let _ = writeln!(t, "facets");
    for f in &facets {
        let tag = if f.exceptional { "  exceptional" } else { "" };
        let _ = writeln!(t, "  {} >= {}{tag}", tuple(&f.normal), f.level);
    }
    let _ = writeln!(t, "maximal cones");
    for c in &cones {
        let rays: Vec<String> = c.rays.iter().map(|r| tuple(&fan.rays[*r].direction)).collect();
        let _ = writeln!(t, "  {}: {}", tuple(&c.vertex), rays.join(" "));
    }
    Ok(Report::new(
        "newton",
        amb,
        NewtonJson {
            ideal,
            vertices: p.vertices.clone(),
            facets,
            cones,
        },
        t,
    ))
}

#[derive(Serialize)]
struct RayJson {
    direction: Vec<i64>,
    level: i64,
    weight: u64,
    variable: String,
    exceptional: bool,
}

#[derive(Serialize)]
struct SubJson {
    variable: String,
    image: String,
}

#[derive(Serialize)]
struct ChartJson {
    label: String,
    vertex: Vec<i64>,
    inverted: Vec<String>,
}

#[derive(Serialize)]
struct BlowupJson {
    center: String,
    root: Option<u64>,
    rays: Vec<RayJson>,
    cox: Vec<VarJson>,
    pullback: Vec<SubJson>,
    grading: Vec<Vec<i64>>,
    irrelevant: Vec<String>,
    charts: Vec<ChartJson>,
}

fn blowup_json(b: &MultiWeightedBlowup, center: String, root: Option<u64>) -> BlowupJson {
    let cox = b.cox.names();
    let src = b.source.names();
    BlowupJson {
        center,
        root,
        rays: b
            .fan
            .rays
            .iter()
            .enumerate()
            .map(|(r, ray)| RayJson {
                direction: ray.direction.clone(),
                level: ray.level,
                weight: b.weights[r],
                variable: cox[r].clone(),
                exceptional: matches!(ray.id, RayId::Exceptional(_)),
            })
            .collect(),
        cox: vars_json(&b.cox),
        pullback: b
            .pullback
            .iter()
            .enumerate()
            .map(|(i, p)| SubJson {
                variable: src[i].clone(),
                image: p.display(&cox),
            })
            .collect(),
        grading: b.grading(),
        irrelevant: b
            .irrelevant()
            .iter()
            .map(|e| {
                let s = monomial_string(e, &cox);
                if s.is_empty() {
                    "1".into()
                } else {
                    s
                }
            })
            .collect(),
        charts: b
            .charts
            .iter()
            .enumerate()
            .map(|(c, ch)| ChartJson {
                label: b.chart_label(c),
                vertex: ch.vertex.clone(),
                inverted: ch.inverted.iter().map(|&r| cox[r].clone()).collect(),
            })
            .collect(),
    }
}

fn blowup_text(j: &BlowupJson, t: &mut String) {
    let root = j.root.map(|r| format!("^{{1/{r}}}")).unwrap_or_default();
    let _ = writeln!(t, "center {}{root}", j.center);
    let _ = writeln!(t, "rays");
    for r in &j.rays {
        let tag = if r.exceptional { "  exceptional" } else { "" };
        let _ = writeln!(
            t,
            "  {}: {} >= {}  weight {}{tag}",
            r.variable,
            tuple(&r.direction),
            r.level,
            r.weight
        );
    }
    let _ = writeln!(t, "pullback");
    for s in &j.pullback {
        let _ = writeln!(t, "  {} = {}", s.variable, s.image);
    }
    let _ = writeln!(t, "grading");
    for (v, row) in j.cox.iter().zip(&j.grading) {
        let _ = writeln!(t, "  {}: {}", v.name, tuple(row));
    }
    let _ = writeln!(t, "irrelevant ideal ({})", j.irrelevant.join(", "));
    let labels: Vec<&str> = j.charts.iter().map(|c| c.label.as_str()).collect();
    let _ = writeln!(t, "charts {}", labels.join(" "));
}

pub fn blowup(amb: &LogAmbient, b: &MultiWeightedBlowup, root: Option<u64>) -> Report {
    let names = amb.names();
    let center = monomial_ideal_string(&MonomialIdeal::new(amb.len(), &b.polyhedron.vertices), &names);
    let j = blowup_json(b, center, root);
    let mut t = String::new();
    blowup_text(&j, &mut t);
    Report::new("blowup", amb, j, t)
}

#[derive(Serialize)]
struct MultJson {
    variable: String,
    k: u64,
}

#[derive(Serialize)]
struct ChartUnitJson {
    label: String,
    unit: bool,
}

#[derive(Serialize)]
struct TransformJson {
    kind: &'static str,
    ideal: String,
    blowup: BlowupJson,
    transform: Vec<String>,
    multiplicities: Vec<MultJson>,
    charts: Vec<ChartUnitJson>,
}

pub fn transform(
    amb: &LogAmbient,
    b: &MultiWeightedBlowup,
    i: &PolyIdeal,
    kind: TransformKind,
    t: &PolyIdeal,
    mult: &[(usize, u64)],
) -> Report {
    let cox = b.cox.names();
    let names = amb.names();
    let center = monomial_ideal_string(&MonomialIdeal::new(amb.len(), &b.polyhedron.vertices), &names);
    let kind_s = match kind {
        TransformKind::Total => "total",
        TransformKind::Weak => "weak",
        TransformKind::Proper => "proper",
    };
    let charts: Vec<ChartUnitJson> = b
        .charts
        .iter()
        .enumerate()
        .map(|(c, ch)| {
            let (s, _) = slice(t, &ch.inverted);
            ChartUnitJson {
                label: b.chart_label(c),
                unit: groebner::is_unit(&s.generators, s.nvars()),
            }
        })
        .collect();
    let j = TransformJson {
        kind: kind_s,
        ideal: i.display(),
        blowup: blowup_json(b, center, None),
        transform: t.generators.iter().map(|g| g.display(&cox)).collect(),
        multiplicities: mult
            .iter()
            .map(|&(r, k)| MultJson {
                variable: cox[r].clone(),
                k,
            })
            .collect(),
        charts,
    };
    let mut s = String::new();
    let _ = writeln!(s, "{kind_s} transform of {}", j.ideal);
    blowup_text(&j.blowup, &mut s);
    let _ = writeln!(s, "transform {}", t.display());
    for m in &j.multiplicities {
        let _ = writeln!(s, "  K({}) = {}", m.variable, m.k);
    }
    for c in &j.charts {
        let _ = writeln!(s, "  chart {}: {}", c.label, if c.unit { "unit" } else { "not unit" });
    }
    Report::new("transform", amb, j, s)
}

#[derive(Serialize)]
struct InvariantJson {
    ideal: String,
    point: Vec<String>,
    logord: String,
    invariant: String,
    entries: Vec<String>,
}

pub fn invariant(amb: &LogAmbient, i: &PolyIdeal, p: &[Rational], inv: &Invariant, ord: LogOrder) -> Report {
    let j = InvariantJson {
        ideal: i.display(),
        point: rats(p),
        logord: ord.to_string(),
        invariant: inv.to_string(),
        entries: inv.0.iter().map(|e| e.to_string()).collect(),
    };
    let t = format!("{inv}\n");
    Report::new("invariant", amb, j, t)
}

#[derive(Serialize)]
struct CenterJson {
    ideal: String,
    point: Vec<String>,
    invariant: String,
    contacts: Vec<String>,
    exponents: Vec<String>,
    monomial_part: String,
    d: String,
    ell: String,
    weights: Vec<String>,
    center: String,
    reduced_center: String,
    center_ideal: String,
}

pub fn center(amb: &LogAmbient, i: &PolyIdeal, inv: &Invariant, c: &Center) -> mwb_core::Result<Report> {
    let names = amb.names();
    let r = c.reduced()?;
    let j = CenterJson {
        ideal: i.display(),
        point: rats(&c.point),
        invariant: inv.to_string(),
        contacts: c.contacts.iter().map(|h| h.display(&names)).collect(),
        exponents: rats(&c.exponents),
        monomial_part: monomial_ideal_string(&c.q, &names),
        d: r.d.to_string(),
        ell: r.ell.to_string(),
        weights: r.weights.iter().map(|w| w.to_string()).collect(),
        center: c.display(),
        reduced_center: c.display_reduced()?,
        center_ideal: c.display_ideal()?,
    };
    let mut t = String::new();
    let _ = writeln!(t, "invariant {}", j.invariant);
    let _ = writeln!(t, "center {}", j.center);
    let _ = writeln!(t, "reduced center {}", j.reduced_center);
    let root = if j.ell == "1" {
        String::new()
    } else {
        format!("^{{1/{}}}", j.ell)
    };
    let _ = writeln!(t, "center ideal {}{root}", j.center_ideal);
    let _ = writeln!(t, "d = {}, ell = {}, weights ({})", j.d, j.ell, j.weights.join(", "));
    Ok(Report::new("center", amb, j, t))
}

#[derive(Serialize)]
struct StepJson {
    point: Vec<String>,
    center: String,
    reduced_center: String,
    coordinate_change: Vec<SubJson>,
    center_ideal: String,
    root: u64,
    exceptional: Vec<String>,
    pullback: Vec<SubJson>,
    multiplicities: Vec<MultJson>,
    transform: Vec<String>,
    center_identities: String,
}

#[derive(Serialize)]
struct NodeJson {
    chart: String,
    path: String,
    ambient: Vec<VarJson>,
    inverted: Vec<String>,
    ideal: Vec<String>,
    factor: String,
    invariant: String,
    status: Option<&'static str>,
    step: Option<StepJson>,
    children: Vec<NodeJson>,
}

fn node_json(n: &ResolutionNode) -> NodeJson {
    let names = n.ambient.names();
    let step = n.step.as_ref().map(|s| {
        let cox = s.blowup.cox.names();
        let src = s.blowup.source.names();
        StepJson {
            point: rats(&s.point),
            center: s.center.clone(),
            reduced_center: s.reduced_center.clone(),
            coordinate_change: s
                .coordinate_change
                .iter()
                .map(|(v, i)| SubJson {
                    variable: v.clone(),
                    image: i.clone(),
                })
                .collect(),
            center_ideal: s.center_ideal.display(&src),
            root: s.center_ideal.root,
            exceptional: s.blowup.exceptional.iter().map(|&r| cox[r].clone()).collect(),
            pullback: s
                .blowup
                .pullback
                .iter()
                .enumerate()
                .filter(|(i, p)| p.display(&cox) != src[*i])
                .map(|(i, p)| SubJson {
                    variable: src[i].clone(),
                    image: p.display(&cox),
                })
                .collect(),
            multiplicities: s
                .multiplicities
                .iter()
                .map(|&(r, k)| MultJson {
                    variable: cox[r].clone(),
                    k,
                })
                .collect(),
            transform: s.transform.generators.iter().map(|g| g.display(&cox)).collect(),
            center_identities: s.identity_failure.clone().unwrap_or_else(|| "ok".into()),
        }
    });
    NodeJson {
        chart: n.chart.clone(),
        path: n.path(),
        ambient: vars_json(&n.ambient),
        inverted: n.inverted.iter().map(|&k| names[k].clone()).collect(),
        ideal: n.ideal.generators.iter().map(|g| g.display(&names)).collect(),
        factor: n.factor_string(),
        invariant: n.invariant.to_string(),
        status: n.status.as_ref().map(|s| s.code()),
        step,
        children: n.children.iter().map(node_json).collect(),
    }
}

fn node_text(n: &NodeJson, depth: usize, trace: bool, t: &mut String) {
    let pad = "  ".repeat(depth);
    let status = n.status.map(|s| format!("  {s}")).unwrap_or_default();
    let _ = writeln!(t, "{pad}[{}] inv {}  factor {}{status}", n.chart, n.invariant, n.factor);
    if trace {
        let _ = writeln!(t, "{pad}  ideal ({})", n.ideal.join(", "));
        if !n.inverted.is_empty() {
            let _ = writeln!(t, "{pad}  inverted {}", n.inverted.join(" "));
        }
    }
    if let Some(s) = &n.step {
        for c in &s.coordinate_change {
            let _ = writeln!(t, "{pad}  substitute {} = {}", c.variable, c.image);
        }
        let root = if s.root == 1 {
            String::new()
        } else {
            format!("^{{1/{}}}", s.root)
        };
        let _ = writeln!(
            t,
            "{pad}  center {}  reduced {}  ideal {}{root}",
            s.center, s.reduced_center, s.center_ideal
        );
        let pb: Vec<String> = s
            .pullback
            .iter()
            .map(|p| format!("{} = {}", p.variable, p.image))
            .collect();
        let pb = if pb.is_empty() {
            "identity".to_string()
        } else {
            pb.join(", ")
        };
        let _ = writeln!(t, "{pad}  pullback {pb}");
        let m: Vec<String> = s
            .multiplicities
            .iter()
            .map(|m| format!("{}^{}", m.variable, m.k))
            .collect();
        let e = if s.exceptional.is_empty() {
            "none".to_string()
        } else {
            s.exceptional.join(" ")
        };
        let _ = writeln!(t, "{pad}  exceptional {e}  multiplicities {}", m.join(" "));
        let _ = writeln!(t, "{pad}  transform ({})", s.transform.join(", "));
        if trace || s.center_identities != "ok" {
            let _ = writeln!(t, "{pad}  center identities {}", s.center_identities);
        }
    }
    for c in &n.children {
        node_text(c, depth + 1, trace, t);
    }
}

#[derive(Serialize)]
struct TreeJson {
    mode: &'static str,
    ideal: String,
    steps: usize,
    leaves: usize,
    tree: NodeJson,
}

pub fn tree(amb: &LogAmbient, i: &PolyIdeal, tree: &ResolutionTree, trace: bool) -> Report {
    let (command, mode) = match tree.mode {
        mwb_core::resolve::Mode::Resolve => ("resolve", "resolve"),
        mwb_core::resolve::Mode::Principalize => ("principalize", "principalize"),
    };
    let j = TreeJson {
        mode,
        ideal: i.display(),
        steps: tree.steps(),
        leaves: tree.leaves().len(),
        tree: node_json(&tree.root),
    };
    let mut t = String::new();
    let _ = writeln!(t, "{mode} {}: N = {}", j.ideal, j.steps);
    node_text(&j.tree, 0, trace, &mut t);
    Report::new(command, amb, j, t)
}

#[derive(Serialize)]
struct FaceJson {
    dim: usize,
    vertices: Vec<Vec<i64>>,
    recession: Vec<String>,
    polynomial: String,
    smooth_on_torus: bool,
}

#[derive(Serialize)]
struct NondegJson {
    polynomial: String,
    nondegenerate: bool,
    faces: Vec<FaceJson>,
}

pub fn nondegenerate(amb: &LogAmbient, f: &Polynomial, r: &NondegeneracyReport) -> Report {
    let names = amb.names();
    let j = NondegJson {
        polynomial: f.display(&names),
        nondegenerate: r.nondegenerate(),
        faces: r
            .faces
            .iter()
            .map(|c| FaceJson {
                dim: c.face.dim,
                vertices: c.face.vertices.clone(),
                recession: c.face.recession.iter().map(|&i| names[i].clone()).collect(),
                polynomial: c.polynomial.display(&names),
                smooth_on_torus: c.smooth_on_torus,
            })
            .collect(),
    };
    let mut t = String::new();
    let _ = writeln!(
        t,
        "{}: {}",
        j.polynomial,
        if j.nondegenerate {
            "non-degenerate"
        } else {
            "degenerate"
        }
    );
    for f in &j.faces {
        let v: Vec<String> = f.vertices.iter().map(|x| tuple(x)).collect();
        let _ = writeln!(
            t,
            "  dim {} [{}]: {}  {}",
            f.dim,
            v.join(" "),
            f.polynomial,
            if f.smooth_on_torus { "smooth" } else { "singular" }
        );
    }
    Report::new("nondegenerate", amb, j, t)
}

#[derive(Serialize)]
struct ChartCheckJson {
    label: String,
    d1_unit: bool,
}

#[derive(Serialize)]
struct OrbitJson {
    face: usize,
    ok: bool,
}

#[derive(Serialize)]
struct OneStepJson {
    polynomial: String,
    passed: bool,
    blowup: BlowupJson,
    transform: String,
    charts: Vec<ChartCheckJson>,
    orbits: Vec<OrbitJson>,
}

pub fn one_step(amb: &LogAmbient, f: &Polynomial, r: &OneStepReport) -> Report {
    let names = amb.names();
    let cox = r.blowup.cox.names();
    let center = monomial_ideal_string(&MonomialIdeal::new(amb.len(), &r.blowup.polyhedron.vertices), &names);
    let j = OneStepJson {
        polynomial: f.display(&names),
        passed: r.passed(),
        blowup: blowup_json(&r.blowup, center, None),
        transform: r.transform.display(&cox),
        charts: r
            .charts
            .iter()
            .map(|(l, ok)| ChartCheckJson {
                label: l.clone(),
                d1_unit: *ok,
            })
            .collect(),
        orbits: r.orbits.iter().map(|&(face, ok)| OrbitJson { face, ok }).collect(),
    };
    let mut t = String::new();
    let _ = writeln!(t, "{}: {}", j.polynomial, if j.passed { "passed" } else { "failed" });
    let _ = writeln!(t, "transform {}", j.transform);
    for c in &j.charts {
        let _ = writeln!(
            t,
            "  chart {}: D<=1 {}",
            c.label,
            if c.d1_unit { "unit" } else { "not unit" }
        );
    }
    let ok = j.orbits.iter().filter(|o| o.ok).count();
    let _ = writeln!(t, "  orbit restrictions {ok}/{} agree", j.orbits.len());
    Report::new("one-step-check", amb, j, t)
}

#[derive(Serialize)]
struct ChartEqJson {
    label: String,
    equal: bool,
}

#[derive(Serialize)]
struct ReembedJson {
    ideal: String,
    original: String,
    extended: String,
    ok: bool,
    charts: Vec<ChartEqJson>,
    mismatches: Vec<String>,
}

pub fn reembed(amb: &LogAmbient, i: &PolyIdeal, r: &ReembedReport) -> Report {
    let j = ReembedJson {
        ideal: i.display(),
        original: r.original.to_string(),
        extended: r.extended.to_string(),
        ok: r.ok(),
        charts: r
            .charts
            .iter()
            .map(|(l, e)| ChartEqJson {
                label: l.clone(),
                equal: *e,
            })
            .collect(),
        mismatches: r.mismatches.clone(),
    };
    let mut t = String::new();
    let _ = writeln!(t, "original {}  extended {}", j.original, j.extended);
    for c in &j.charts {
        let _ = writeln!(t, "  chart {}: {}", c.label, if c.equal { "equal" } else { "differs" });
    }
    for m in &j.mismatches {
        let _ = writeln!(t, "  mismatch: {m}");
    }
    Report::new("reembed-check", amb, j, t)
}
