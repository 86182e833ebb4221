//! Tables and cones printed by the `table` and `cone` commands.

use serde::{Deserialize, Serialize};

use super::interp::Interp;
use super::model::{ConeDisplay, ScenarioSpec, TableDisplay};
use super::probe::row_reduced;
use super::{RunN, ScenarioError};
use crate::curves::{intersect, mori_propagate, restriction_kernel};
use crate::kernel::{kernel_basis, sample_points, to_poly_vec, ParamPoly, Rat};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub label: String,
    pub entries: Vec<ParamPoly>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableOutput {
    pub scenario: String,
    pub n: RunN,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl TableOutput {
    /// Column-aligned text.
    pub fn render_text(&self) -> String {
        let cells: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.entries.iter().map(|e| e.pretty()).collect()).collect();
        let label_w = self.rows.iter().map(|r| r.label.chars().count()).max().unwrap_or(0);
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| cells.iter().map(|r| r[j].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
            .collect();
        let pad = |s: &str, w: usize| format!("{}{}", " ".repeat(w.saturating_sub(s.chars().count())), s);
        let mut out = format!("{} ({} at n = {})\n", self.title, self.scenario, self.n);
        let header: Vec<String> = self.columns.iter().zip(&widths).map(|(c, w)| pad(c, *w)).collect();
        out.push_str(&format!("{}  {}\n", " ".repeat(label_w), header.join("  ")));
        for (row, cells) in self.rows.iter().zip(&cells) {
            let body: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| pad(c, *w)).collect();
            let gap = " ".repeat(label_w - row.label.chars().count());
            out.push_str(&format!("{}{gap}  {}\n", row.label, body.join("  ")));
        }
        for note in &self.notes {
            out.push_str(note);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeGeneratorOut {
    pub label: String,
    pub vector: Vec<ParamPoly>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisOut {
    pub step: String,
    pub condition: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConeOutput {
    pub scenario: String,
    pub n: RunN,
    pub space: String,
    /// Intersection vectors against the Picard generators listed here.
    pub generators_of_picard: Vec<String>,
    pub generators: Vec<ConeGeneratorOut>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub hypotheses: Vec<HypothesisOut>,
}

impl ConeOutput {
    pub fn render_text(&self) -> String {
        let mut out = format!(
            "cone of curves of {} ({} at n = {}), pairings against ({})\n",
            self.space,
            self.scenario,
            self.n,
            self.generators_of_picard.join(", ")
        );
        let terms: Vec<String> = self
            .generators
            .iter()
            .map(|g| format!("R+{}({})", g.label, g.vector.iter().map(|p| p.pretty()).collect::<Vec<_>>().join(", ")))
            .collect();
        out.push_str(&format!("  {}\n", terms.join(" + ")));
        for h in &self.hypotheses {
            out.push_str(&format!("  [{}] {}: {}\n", if h.holds { "ok" } else { "FAILED" }, h.step, h.condition));
        }
        out
    }
}

fn points(n: &RunN) -> Vec<Rat> {
    match n {
        RunN::At(k) => vec![Rat::from_int(*k)],
        RunN::Symbolic => sample_points().into_iter().map(Rat::from_int).collect(),
    }
}

fn specialize(v: &[ParamPoly], n: &RunN) -> Vec<ParamPoly> {
    match n.rat() {
        Some(at) => v.iter().map(|p| ParamPoly::constant(p.eval(&at))).collect(),
        None => v.to_vec(),
    }
}

/// The same value at every sample point, or an error naming the dependence.
fn stable<T: PartialEq>(values: Vec<T>, what: &str) -> Result<T, ScenarioError> {
    let mut it = values.into_iter();
    let first = it.next().expect("at least one point");
    if it.any(|v| v != first) {
        return Err(ScenarioError::Engine(format!("the {what} depends on n; run at a fixed n")));
    }
    Ok(first)
}

fn combination(labels: &[String], coeffs: &[Rat]) -> String {
    let mut parts = Vec::new();
    for (l, c) in labels.iter().zip(&to_poly_vec(coeffs)) {
        if c.is_zero() {
            continue;
        }
        let c = c.pretty();
        let term = match c.as_str() {
            "1" => l.clone(),
            "-1" => format!("-{l}"),
            _ => format!("{c}·{l}"),
        };
        parts.push(term);
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

pub(crate) fn table(spec: &ScenarioSpec, t: &TableDisplay, n: &RunN) -> Result<TableOutput, ScenarioError> {
    let mut me = Interp::new(spec);
    match t {
        TableDisplay::Pairing { curves, divisors } => {
            let cs = me.curve_list(curves)?;
            let ds = divisors.iter().map(|d| me.class_expr(&d.class)).collect::<Result<Vec<_>, _>>()?;
            let rows = cs
                .iter()
                .map(|c| {
                    let entries = ds.iter().map(|d| intersect(c, d)).collect::<Result<Vec<_>, _>>()?;
                    Ok(TableRow { label: c.label.clone(), entries: specialize(&entries, n) })
                })
                .collect::<Result<Vec<_>, ScenarioError>>()?;
            Ok(TableOutput {
                scenario: spec.name.clone(),
                n: n.clone(),
                title: "intersection table".into(),
                columns: divisors.iter().map(|d| d.label.clone()).collect(),
                rows,
                notes: vec![],
            })
        }
        TableDisplay::Kernel { map, curves } => {
            let m = me.map(map)?;
            let cs = me.curve_list(curves)?;
            let gens = me.tower.space(m.source).generators().to_vec();
            let pts = points(n);
            let kernels = pts.iter().map(|at| row_reduced(&kernel_basis(&m.generator_matrix().eval(at)))).collect();
            let kernel = stable(kernels, "kernel")?;
            let perps = pts
                .iter()
                .map(|at| Ok(row_reduced(&restriction_kernel(&m, &cs, at)?.perp)))
                .collect::<Result<Vec<_>, ScenarioError>>()?;
            let perp = stable(perps, "annihilator")?;
            let labels: Vec<String> = cs.iter().map(|c| c.label.clone()).collect();
            let mut notes: Vec<String> =
                kernel.iter().map(|k| format!("kernel generator: {}", combination(&gens, k))).collect();
            notes.extend(perp.iter().map(|p| format!("orthogonal to the kernel: {}", combination(&labels, p))));
            Ok(TableOutput {
                scenario: spec.name.clone(),
                n: n.clone(),
                title: format!("kernel of {map}"),
                columns: gens,
                rows: kernel
                    .iter()
                    .enumerate()
                    .map(|(i, k)| TableRow { label: format!("kernel {}", i + 1), entries: to_poly_vec(k) })
                    .collect(),
                notes,
            })
        }
    }
}

pub(crate) fn cone(spec: &ScenarioSpec, c: &ConeDisplay, n: &RunN) -> Result<ConeOutput, ScenarioError> {
    let mut me = Interp::new(spec);
    let (space, curves, hypotheses) = match c {
        ConeDisplay::Curves(names) => {
            let cs = me.curve_list(names)?;
            let space = cs.first().ok_or_else(|| ScenarioError::Engine("empty cone".into()))?.space;
            (space, cs, vec![])
        }
        ConeDisplay::Chain(name) => {
            let mut reports = Vec::new();
            for at in points(n) {
                let chain = me.chain(name, &at)?;
                let out = mori_propagate(&me.tower, &chain, &at)?;
                reports.push(out.steps);
            }
            let steps = stable(reports, "list of hypotheses")?;
            let chain = me.chain(name, &Rat::from_int(3))?;
            let last = chain.steps.last().ok_or_else(|| ScenarioError::Engine(format!("chain {name} has no steps")))?;
            let hyps = steps
                .into_iter()
                .flat_map(|s| {
                    let step = s.step;
                    s.conditions.into_iter().map(move |(condition, holds)| HypothesisOut { step: step.clone(), condition, holds })
                })
                .collect();
            (last.space, last.curves.clone(), hyps)
        }
    };
    Ok(ConeOutput {
        scenario: spec.name.clone(),
        n: n.clone(),
        space: me.tower.name(space).to_string(),
        generators_of_picard: me.tower.space(space).generators().to_vec(),
        generators: curves
            .iter()
            .map(|c| ConeGeneratorOut { label: c.label.clone(), vector: specialize(&c.vector, n) })
            .collect(),
        hypotheses,
    })
}
