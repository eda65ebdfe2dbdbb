//! Resolution and principalization driver on trees of blow-up charts.

use num_traits::Zero;

use crate::blowup::{center_to_blowup, check_center_identities, CenterIdeal, MultiWeightedBlowup};
use crate::error::{Error, Result};
use crate::groebner;
use crate::invariant::{self, compare, max_logord, Center, Invariant, LogOrder};
use crate::monomial::MonomialIdeal;
use crate::poly::{monomial_string, LogAmbient, PolyIdeal, Polynomial, Rational};

/// Default bound on the depth of a resolution tree.
pub const DEFAULT_DEPTH_LIMIT: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Proper transforms until smooth.
    Resolve,
    /// Weak transforms until the unit ideal.
    Principalize,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub mode: Mode,
    pub depth_limit: usize,
    /// Marked points of the root ambient; the origin when empty.
    pub marks: Vec<Vec<Rational>>,
}

impl Options {
    pub fn new(mode: Mode) -> Self {
        Options {
            mode,
            depth_limit: DEFAULT_DEPTH_LIMIT,
            marks: Vec::new(),
        }
    }
}

/// Terminal state of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LeafStatus {
    /// Transform is smooth toroidal: chart-wide for hypersurfaces, else at the marked points.
    /// For principalization, a weak transform defining a smooth divisor snc with the boundary.
    SmoothToroidal,
    /// Transform is the unit ideal on the chart.
    ExceptionalUnit,
    /// Invariant `(0)` at every marked point without the transform being the unit ideal.
    InvariantFloor,
    /// A computation limit was hit.
    Error(String),
}

impl LeafStatus {
    pub fn code(&self) -> &'static str {
        match self {
            LeafStatus::SmoothToroidal => "smooth-toroidal",
            LeafStatus::ExceptionalUnit => "exceptional-unit",
            LeafStatus::InvariantFloor => "invariant-floor",
            LeafStatus::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HistoryEntry {
    pub step: usize,
    pub chart: String,
    pub center: String,
    pub multiplicities: Vec<(String, u64)>,
}

/// Data of one blow-up performed at a node.
#[derive(Debug, Clone)]
pub struct StepRecord {
    /// Point of the chart slice with the largest invariant.
    pub point: Vec<Rational>,
    /// Center `(x_i^{a_i}, Q^{1/d})` in slice coordinates before any coordinate change.
    pub center: String,
    pub reduced_center: String,
    /// `(variable, image)` substitutions making the contacts coordinates.
    pub coordinate_change: Vec<(String, String)>,
    /// Center in Cox coordinates and its root.
    pub center_ideal: CenterIdeal,
    pub blowup: MultiWeightedBlowup,
    /// Transform of the node ideal, shared by all charts.
    pub transform: PolyIdeal,
    /// `(exceptional ray, K_ρ)`.
    pub multiplicities: Vec<(usize, u64)>,
    /// Failure of the numerical center identities, if any.
    pub identity_failure: Option<String>,
}

#[derive(Debug, Clone)]
pub struct ResolutionNode {
    /// `root` or the label of the inverted chart variables.
    pub chart: String,
    pub depth: usize,
    pub ambient: LogAmbient,
    pub ideal: PolyIdeal,
    /// Cox variables inverted on this chart.
    pub inverted: Vec<usize>,
    /// Exponents of the accumulated exceptional monomial.
    pub factor: Vec<u32>,
    /// Points of the chart slice.
    pub marked_points: Vec<Vec<Rational>>,
    pub history: Vec<HistoryEntry>,
    pub invariant: Invariant,
    pub status: Option<LeafStatus>,
    pub step: Option<StepRecord>,
    pub children: Vec<ResolutionNode>,
}

impl ResolutionNode {
    pub fn is_leaf(&self) -> bool {
        self.status.is_some()
    }

    pub fn factor_string(&self) -> String {
        let s = monomial_string(&self.factor, &self.ambient.names());
        if s.is_empty() {
            "1".into()
        } else {
            s
        }
    }

    /// Ideal with the inverted variables set to one and the map from slice to Cox indices.
    pub fn slice(&self) -> (PolyIdeal, Vec<usize>) {
        slice(&self.ideal, &self.inverted)
    }

    /// Preorder traversal.
    pub fn nodes(&self) -> Vec<&ResolutionNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.nodes());
        }
        out
    }

    /// Chart path below the root, e.g. `z' / x''`.
    pub fn path(&self) -> String {
        self.history
            .iter()
            .map(|h| h.chart.as_str())
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

#[derive(Debug, Clone)]
pub struct ResolutionTree {
    pub mode: Mode,
    pub root: ResolutionNode,
}

impl ResolutionTree {
    /// Length of the longest chain of blow-ups.
    pub fn steps(&self) -> usize {
        self.root.nodes().iter().map(|n| n.history.len()).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> Vec<&ResolutionNode> {
        self.root.nodes().into_iter().filter(|n| n.is_leaf()).collect()
    }

    /// `(parent, child)` pairs.
    pub fn edges(&self) -> Vec<(&ResolutionNode, &ResolutionNode)> {
        self.root
            .nodes()
            .into_iter()
            .flat_map(|p| p.children.iter().map(move |c| (p, c)))
            .collect()
    }

    /// Centers blown up, in preorder.
    pub fn steps_taken(&self) -> Vec<&StepRecord> {
        self.root.nodes().into_iter().filter_map(|n| n.step.as_ref()).collect()
    }
}

/// Ideal with the variables `inverted` set to one, on the remaining variables.
pub fn slice(i: &PolyIdeal, inverted: &[usize]) -> (PolyIdeal, Vec<usize>) {
    let n = i.nvars();
    let map: Vec<usize> = (0..n).filter(|k| !inverted.contains(k)).collect();
    let mut ambient = i.ambient.clone();
    let mut gens = i.generators.clone();
    let mut sorted = inverted.to_vec();
    sorted.sort_unstable();
    for &k in sorted.iter().rev() {
        gens = gens
            .iter()
            .map(|g| g.specialize(k, &Rational::from_integer(1.into())).drop_var(k))
            .collect();
        ambient = ambient.drop_var(k);
    }
    let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
    (
        PolyIdeal {
            ambient,
            generators: gens,
        },
        map,
    )
}

struct Evaluation {
    invariant: Invariant,
    status: Option<LeafStatus>,
    worst: usize,
}

fn evaluate(ideal: &PolyIdeal, inverted: &[usize], marks: &[Vec<Rational>], mode: Mode) -> Result<Evaluation> {
    let (s, _) = slice(ideal, inverted);
    let leaf = |invariant, status| Evaluation {
        invariant,
        status: Some(status),
        worst: 0,
    };
    if s.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    if groebner::is_unit(&s.generators, s.nvars()) {
        return Ok(leaf(Invariant::from_ints(&[0]), LeafStatus::ExceptionalUnit));
    }
    let smooth = s.generators.len() == 1 && max_logord(&s) <= LogOrder::Finite(1);
    let mut best: Option<(Invariant, usize)> = None;
    for (k, p) in marks.iter().enumerate() {
        let inv = match invariant::invariant_at(&s, p) {
            Ok((inv, _)) => inv,
            Err(Error::ComputationLimit(_)) if smooth => {
                return Ok(leaf(Invariant::from_ints(&[1]), LeafStatus::SmoothToroidal));
            }
            Err(Error::ComputationLimit(m)) => return Ok(leaf(Invariant(Vec::new()), LeafStatus::Error(m))),
            Err(e) => return Err(e),
        };
        if best.as_ref().is_none_or(|(b, _)| compare(&inv, b).is_gt()) {
            best = Some((inv, k));
        }
    }
    let (inv, worst) = best.ok_or_else(|| Error::Precondition("no marked points".into()))?;
    let status = if smooth {
        Some(LeafStatus::SmoothToroidal)
    } else if inv.is_zero() {
        Some(LeafStatus::InvariantFloor)
    } else if mode == Mode::Resolve && inv.is_ones(invariant::height(&s)) {
        Some(LeafStatus::SmoothToroidal)
    } else {
        None
    };
    Ok(Evaluation {
        invariant: inv,
        status,
        worst,
    })
}

/// Node with invariant and status evaluated.
#[allow(clippy::too_many_arguments)]
fn make_node(
    chart: String,
    depth: usize,
    ideal: PolyIdeal,
    inverted: Vec<usize>,
    factor: Vec<u32>,
    marks: Vec<Vec<Rational>>,
    history: Vec<HistoryEntry>,
    mode: Mode,
) -> Result<(ResolutionNode, usize)> {
    let ev = evaluate(&ideal, &inverted, &marks, mode)?;
    Ok((
        ResolutionNode {
            chart,
            depth,
            ambient: ideal.ambient.clone(),
            ideal,
            inverted,
            factor,
            marked_points: marks,
            history,
            invariant: ev.invariant,
            status: ev.status,
            step: None,
            children: Vec::new(),
        },
        ev.worst,
    ))
}

fn worst_point(node: &ResolutionNode, mode: Mode) -> Result<usize> {
    Ok(evaluate(&node.ideal, &node.inverted, &node.marked_points, mode)?.worst)
}

/// Generators after a coordinate change, with the `(variable, image)` substitutions.
type Flattened = (Vec<Polynomial>, Vec<(String, String)>);

/// Coordinate change of the Cox ideal turning the contacts into coordinates at the origin.
fn flatten(node: &ResolutionNode, map: &[usize], center: &Center) -> Result<Flattened> {
    let m = node.ambient.len();
    let names = node.ambient.names();
    let p = &center.point;
    let mut gens = node.ideal.generators.clone();
    let mut changes = Vec::new();
    let n = p.len();
    let mut images: Vec<Polynomial> = (0..m).map(|k| Polynomial::var(m, k)).collect();
    for k in 0..n {
        if p[k].is_zero() {
            continue;
        }
        let v = map[k];
        if node.ambient.kind(v).is_log() {
            return Err(Error::HypothesisViolated(format!(
                "point has nonzero monomial coordinate {}",
                names[v]
            )));
        }
        images[v] = &Polynomial::var(m, v) + &Polynomial::constant(m, p[k].clone());
        changes.push((names[v].clone(), images[v].display(&names)));
    }
    gens = gens.iter().map(|g| g.substitute(&images, m)).collect();
    for (h, &j) in center.contacts.iter().zip(&center.contact_vars) {
        if j == usize::MAX {
            return Err(Error::NoRectifiableContact);
        }
        let h = h.translate(p);
        let parts = h.parts_in(j);
        if parts.len() != 2 || parts[0].is_zero() {
            continue;
        }
        let v = map[j];
        let coeff = parts[1].remap(map, m);
        let num = &Polynomial::var(m, v) - &parts[0].remap(map, m);
        changes.push((names[v].clone(), fraction_string(&num, &coeff, &names)));
        gens = gens.iter().map(|g| g.substitute_fraction(v, &num, &coeff)).collect();
        if !coeff.is_constant() {
            gens = groebner::saturate(&gens, m, &coeff);
        }
    }
    Ok((gens, changes))
}

fn fraction_string(num: &Polynomial, den: &Polynomial, names: &[String]) -> String {
    if den.is_constant() {
        return num.scale(&den.constant_term().recip()).display(names);
    }
    format!("({})/({})", num.display(names), den.display(names))
}

fn center_in_cox(center: &Center, map: &[usize], m: usize) -> Result<CenterIdeal> {
    let s = center.minimal_scale();
    let r = center.reduced_at(&s)?;
    let q = center.monomial_ideal(&s);
    let mut ordinary = Vec::new();
    for (&j, e) in center.contact_vars.iter().zip(&r.exponents) {
        if j == usize::MAX {
            return Err(Error::NoRectifiableContact);
        }
        ordinary.push((map[j], invariant::to_i64(e, "center exponent")? as u64));
    }
    let gens: Vec<Vec<i64>> = q
        .generators
        .iter()
        .map(|g| {
            let mut v = vec![0i64; m];
            for (k, &x) in g.iter().enumerate() {
                v[map[k]] = x;
            }
            v
        })
        .collect();
    let monomial = if q.is_zero() {
        MonomialIdeal::zero(m)
    } else {
        MonomialIdeal::new(m, &gens)
    };
    Ok(CenterIdeal {
        ordinary,
        monomial,
        root: invariant::to_i64(&r.ell, "center root")? as u64,
    })
}

/// The node restricted to its chart slice, with no inverted variables.
fn slice_node(node: &ResolutionNode, s: PolyIdeal, map: &[usize]) -> ResolutionNode {
    ResolutionNode {
        ambient: s.ambient.clone(),
        ideal: s,
        inverted: Vec::new(),
        factor: map.iter().map(|&k| node.factor[k]).collect(),
        children: Vec::new(),
        step: None,
        ..node.clone()
    }
}

/// One blow-up at a non-terminal node: children per chart with evaluated invariants.
pub fn resolve_step(node: &ResolutionNode, mode: Mode) -> Result<(Vec<ResolutionNode>, StepRecord)> {
    if node.is_leaf() {
        return Err(Error::Precondition(format!(
            "node with invariant {} is terminal",
            node.invariant
        )));
    }
    let worst = worst_point(node, mode)?;
    let (s, map) = node.slice();
    let point = node.marked_points[worst].clone();
    let (inv, center) = invariant::invariant_at(&s, &point)?;
    if center.is_empty() {
        return Err(Error::Precondition(format!("invariant {inv} has an empty center")));
    }
    // Coordinate changes are made on the affine slice of the chart.
    let sliced;
    let (node, map) = if center.is_coordinate() || node.inverted.is_empty() {
        (node, map)
    } else {
        sliced = slice_node(node, s, &map);
        let m = sliced.ambient.len();
        (&sliced, (0..m).collect())
    };
    let m = node.ambient.len();
    let (gens, coordinate_change) = if center.is_coordinate() {
        (node.ideal.generators.clone(), Vec::new())
    } else {
        flatten(node, &map, &center)?
    };
    let ideal = PolyIdeal::new(node.ambient.clone(), gens)?;
    let ci = center_in_cox(&center, &map, m)?;
    let b = center_to_blowup(&ci, &node.ambient)?;
    let identity_failure = check_center_identities(&ci, &b).err();
    let (weak, mult) = b.weak_transform(&ideal)?;
    let transform = match mode {
        Mode::Resolve => b.proper_transform(&ideal)?,
        Mode::Principalize => weak,
    };

    let mut factor = vec![0u32; b.cox.len()];
    for (i, &f) in node.factor.iter().enumerate() {
        if f == 0 {
            continue;
        }
        let (e, _) = b.pullback[i].terms().next().expect("monomial pullback");
        for (k, &x) in e.iter().enumerate() {
            factor[k] += x * f;
        }
    }
    for &(r, k) in &mult {
        factor[r] += k as u32;
    }

    let cox_names = b.cox.names();
    let center_str = center.display();
    let multiplicities: Vec<(String, u64)> = mult.iter().map(|&(r, k)| (cox_names[r].clone(), k)).collect();
    let mut children = Vec::new();
    for (c, chart) in b.charts.iter().enumerate() {
        let mut inverted = chart.inverted.clone();
        for &k in &node.inverted {
            let r = b.fan.standard(k);
            if !inverted.contains(&r) {
                inverted.push(r);
            }
        }
        inverted.sort_unstable();
        let label = b.chart_label(c);
        let mut history = node.history.clone();
        history.push(HistoryEntry {
            step: node.depth + 1,
            chart: label.clone(),
            center: ci.display(&node.ambient.names()),
            multiplicities: multiplicities.clone(),
        });
        let origin = vec![Rational::zero(); b.cox.len() - inverted.len()];
        let (child, _) = make_node(
            label.clone(),
            node.depth + 1,
            transform.clone(),
            inverted,
            factor.clone(),
            vec![origin],
            history,
            mode,
        )?;
        if !matches!(child.status, Some(LeafStatus::Error(_))) && !compare(&child.invariant, &node.invariant).is_lt() {
            return Err(Error::InvariantNotDropped {
                parent: node.invariant.to_string(),
                child: child.invariant.to_string(),
                chart: label,
            });
        }
        children.push(child);
    }
    let record = StepRecord {
        point,
        center: center_str,
        reduced_center: center.display_reduced()?,
        coordinate_change,
        center_ideal: ci,
        blowup: b,
        transform,
        multiplicities: mult,
        identity_failure,
    };
    Ok((children, record))
}

fn expand(node: &mut ResolutionNode, mode: Mode, limit: usize) -> Result<()> {
    if node.is_leaf() {
        return Ok(());
    }
    if node.depth >= limit {
        return Err(Error::DepthExceeded(limit));
    }
    let (children, record) = resolve_step(node, mode)?;
    node.children = children;
    node.step = Some(record);
    for c in &mut node.children {
        expand(c, mode, limit)?;
    }
    Ok(())
}

/// Tree of blow-ups until every chart is terminal.
pub fn run(i: &PolyIdeal, opts: &Options) -> Result<ResolutionTree> {
    if i.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    let n = i.nvars();
    let marks = if opts.marks.is_empty() {
        vec![vec![Rational::zero(); n]]
    } else {
        opts.marks.clone()
    };
    if let Some(p) = marks.iter().find(|p| p.len() != n) {
        return Err(Error::AmbientMismatch(format!(
            "marked point of length {} in {n} variables",
            p.len()
        )));
    }
    let (mut root, _) = make_node(
        "root".into(),
        0,
        i.clone(),
        Vec::new(),
        vec![0; n],
        marks,
        Vec::new(),
        opts.mode,
    )?;
    expand(&mut root, opts.mode, opts.depth_limit)?;
    Ok(ResolutionTree { mode: opts.mode, root })
}

pub fn resolve(i: &PolyIdeal, opts: &Options) -> Result<ResolutionTree> {
    run(
        i,
        &Options {
            mode: Mode::Resolve,
            ..opts.clone()
        },
    )
}

pub fn principalize(i: &PolyIdeal, opts: &Options) -> Result<ResolutionTree> {
    run(
        i,
        &Options {
            mode: Mode::Principalize,
            ..opts.clone()
        },
    )
}

/// Outcome of comparing a pair with its extension by one ordinary variable.
#[derive(Debug, Clone)]
pub struct ReembedReport {
    pub original: Invariant,
    pub extended: Invariant,
    /// Per chart of the original blow-up: whether the restricted extended transform agrees.
    pub charts: Vec<(String, bool)>,
    pub mismatches: Vec<String>,
}

impl ReembedReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn fresh_name(ambient: &LogAmbient) -> String {
    let names = ambient.names();
    ["x0", "t0", "w0", "e0"]
        .iter()
        .find(|c| !names.iter().any(|n| n == *c))
        .map_or_else(|| "x00".into(), |s| s.to_string())
}

/// Checks the invariant law for `(x_0) + I` on the ambient with a new first ordinary variable,
/// and that the first blow-up of the extension restricts to the first blow-up of `I` on `V(x_0')`.
pub fn reembed_check(i: &PolyIdeal, point: Option<&[Rational]>) -> Result<ReembedReport> {
    let n = i.nvars();
    let origin = vec![Rational::zero(); n];
    let p = point.unwrap_or(&origin);
    let (inv, center) = invariant::invariant_at(i, p)?;

    let mut vars = vec![crate::poly::Variable {
        name: fresh_name(&i.ambient),
        kind: crate::poly::VarKind::Ordinary,
    }];
    vars.extend(i.ambient.vars.iter().cloned());
    let ext_amb = LogAmbient::new(vars)?;
    let mut gens = vec![Polynomial::var(n + 1, 0)];
    gens.extend(i.generators.iter().map(|g| g.insert_var(0)));
    let ext = PolyIdeal::new(ext_amb.clone(), gens)?;
    let mut ext_point = vec![Rational::zero()];
    ext_point.extend(p.iter().cloned());
    let (ext_inv, ext_center) = invariant::invariant_at(&ext, &ext_point)?;

    let mut mismatches = Vec::new();
    let mut expected = vec![invariant::Entry::int(1)];
    expected.extend(inv.0.iter().cloned());
    if ext_inv.0 != expected {
        mismatches.push(format!("extended invariant {ext_inv}, expected (1, ...) over {inv}"));
    }
    let mut charts = Vec::new();
    if center.is_empty() || !center.is_coordinate() || !ext_center.is_coordinate() {
        return Ok(ReembedReport {
            original: inv,
            extended: ext_inv,
            charts,
            mismatches,
        });
    }
    let identity: Vec<usize> = (0..n).collect();
    let ci = center_in_cox(&center, &identity, n)?;
    let ext_map: Vec<usize> = (0..=n).collect();
    let ext_ci = center_in_cox(&ext_center, &ext_map, n + 1)?;
    let (restricted, _, rb) = crate::blowup::restrict_blowup(&ext_ci, &ext_amb)?;
    let ob = center_to_blowup(&ci, &i.ambient)?;
    if restricted != ci {
        mismatches.push(format!(
            "restricted center {} differs from {}",
            restricted.display(&i.ambient.names()),
            ci.display(&i.ambient.names())
        ));
    }
    if rb.fan.rays.len() != ob.fan.rays.len() || rb.charts.len() != ob.charts.len() {
        mismatches.push("restricted blow-up has a different fan".into());
        return Ok(ReembedReport {
            original: inv,
            extended: ext_inv,
            charts,
            mismatches,
        });
    }
    // Restrict the extended proper transform to V(x_0'): x_0' is Cox variable 0.
    let eb = center_to_blowup(&ext_ci, &ext_amb)?;
    let ext_pt = eb.proper_transform(&ext)?;
    let x0 = eb.fan.standard(0);
    let restricted_gens: Vec<Polynomial> = ext_pt
        .generators
        .iter()
        .map(|g| g.specialize(x0, &Rational::zero()).drop_var(x0))
        .filter(|g| !g.is_zero())
        .collect();
    let orig_pt = ob.proper_transform(i)?;
    for (c, chart) in ob.charts.iter().enumerate() {
        let label = ob.chart_label(c);
        let matched = eb.charts.iter().any(|ec| {
            let mut inv: Vec<usize> = ec
                .inverted
                .iter()
                .filter(|&&r| r != x0)
                .map(|&r| if r > x0 { r - 1 } else { r })
                .collect();
            inv.sort_unstable();
            inv == chart.inverted
        });
        if !matched {
            mismatches.push(format!("no extended chart over {label}"));
            charts.push((label, false));
            continue;
        }
        let (a, _) = slice(
            &PolyIdeal {
                ambient: ob.cox.clone(),
                generators: orig_pt.generators.clone(),
            },
            &chart.inverted,
        );
        let (b, _) = slice(
            &PolyIdeal {
                ambient: ob.cox.clone(),
                generators: restricted_gens.clone(),
            },
            &chart.inverted,
        );
        let same = groebner::ideal_eq(&a.generators, &b.generators, a.nvars());
        if !same {
            mismatches.push(format!("proper transforms differ on chart {label}"));
        }
        charts.push((label, same));
    }
    Ok(ReembedReport {
        original: inv,
        extended: ext_inv,
        charts,
        mismatches,
    })
}
