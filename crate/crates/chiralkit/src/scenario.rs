//! Declarative scenario runner: loads a TOML file naming maps, morphisms,
//! observables, two-forms and models, executes check directives in order,
//! and renders one report record per directive.
//!
//! Rational literals are strings `"p/q"`; interval endpoints allow `"-inf"`
//! and `"+inf"`. Maps serialize as piece lists `{cell, matrix}` over a
//! tiling of the line, circle lifts as one period, functions as
//! `{pieces: [{cell, coeffs}]}`, morphisms as `{kind, plus, minus}`.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::aqft::{
    check_einstein_causality, check_functoriality, check_time_slice, check_unit_identity,
    counit_and_chirality, pullback_model, AqftModel, ChiralityVerdict, CorruptedModel, PiFunctor,
    Report, Skel2Cat, TrivialModel,
};
use crate::current::{
    causal_propagator_minkowski, chiral_component_model, current_model, tau_same_ambient,
    weyl::WeylElement, CircleFn, LineFn, Observable, OneFormPair, Poly, TwoForm,
};
use crate::geometry::{ExtendedRational, Finite};
use crate::maps1d::{BoundedLineEmbedding, CircleMapLift, LineEmbedding};
use crate::rat::{format_rat, parse_rat, Rat};
use crate::sampling;
use crate::scalar::Tolerance;
use crate::skelcat::{build_zigzag, orthogonal2, ChiralSign, SkelMorphism2, SkelObject2};

/// Errors before any check runs: malformed files or dangling references.
/// These map to exit status 2; check failures surface in the report and map
/// to exit status 1.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("resolution error: {0}")]
    Resolve(String),
}

#[derive(Debug, Deserialize)]
struct ScenarioFile {
    seed: Option<u64>,
    tolerance: Option<f64>,
    #[serde(default)]
    maps: BTreeMap<String, MapSpec>,
    #[serde(default)]
    lifts: BTreeMap<String, MapSpec>,
    #[serde(default)]
    morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default)]
    observables: BTreeMap<String, ObservableSpec>,
    #[serde(default)]
    forms: BTreeMap<String, FormSpec>,
    #[serde(default)]
    models: BTreeMap<String, ModelSpec>,
    #[serde(default)]
    checks: Vec<CheckSpec>,
}

#[derive(Debug, Deserialize)]
struct MapSpec {
    pieces: Vec<PieceSpec>,
}

#[derive(Debug, Deserialize)]
struct PieceSpec {
    cell: [String; 2],
    matrix: [String; 4],
}

#[derive(Debug, Deserialize)]
struct MorphismSpec {
    kind: String,
    plus: String,
    minus: String,
}

#[derive(Debug, Deserialize)]
struct ObservableSpec {
    ambient: String,
    plus: FnSpec,
    minus: FnSpec,
}

#[derive(Debug, Deserialize, Default)]
struct FnSpec {
    #[serde(default)]
    pieces: Vec<FnPieceSpec>,
}

#[derive(Debug, Deserialize)]
struct FnPieceSpec {
    cell: [String; 2],
    coeffs: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct FormSpec {
    plus: FnSpec,
    minus: FnSpec,
}

#[derive(Debug, Deserialize)]
struct ModelSpec {
    kind: String,
}

#[derive(Debug, Deserialize)]
struct CheckSpec {
    kind: String,
    #[serde(default)]
    pairs: Vec<[String; 2]>,
    expect: Option<toml::Value>,
    model: Option<String>,
    sign: Option<String>,
    left: Option<String>,
    right: Option<String>,
    h: Option<String>,
    f1: Option<String>,
    f2: Option<String>,
    sample: Option<usize>,
    point: Option<[String; 2]>,
    form: Option<String>,
    tolerance: Option<f64>,
}

/// Builtin model constructions nameable in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Current,
    CorruptedCurrent,
    Trivial,
    PullbackPlus,
    PullbackMinus,
}

/// A parsed and resolved scenario.
pub struct Scenario {
    pub seed: u64,
    pub tolerance: f64,
    maps: BTreeMap<String, LineEmbedding>,
    lifts: BTreeMap<String, CircleMapLift>,
    morphisms: BTreeMap<String, SkelMorphism2>,
    observables: BTreeMap<String, Observable>,
    forms: BTreeMap<String, TwoForm>,
    models: BTreeMap<String, ModelKind>,
    checks: Vec<CheckSpec>,
}

/// Seed and tolerance overrides from the command line or the environment.
#[derive(Debug, Default, Clone, Copy)]
pub struct RunOptions {
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
}

fn parse_endpoint(s: &str) -> Result<ExtendedRational, ScenarioError> {
    ExtendedRational::parse(s).map_err(|e| ScenarioError::Parse(e.to_string()))
}

fn parse_rational(s: &str) -> Result<Rat, ScenarioError> {
    parse_rat(s).map_err(|e| ScenarioError::Parse(e.to_string()))
}

fn build_line_map(name: &str, spec: &MapSpec) -> Result<LineEmbedding, ScenarioError> {
    let mut cells: Vec<(ExtendedRational, ExtendedRational, [Rat; 4])> = Vec::new();
    for p in &spec.pieces {
        let lo = parse_endpoint(&p.cell[0])?;
        let hi = parse_endpoint(&p.cell[1])?;
        let m = [
            parse_rational(&p.matrix[0])?,
            parse_rational(&p.matrix[1])?,
            parse_rational(&p.matrix[2])?,
            parse_rational(&p.matrix[3])?,
        ];
        cells.push((lo, hi, m));
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    let tiling_err = || ScenarioError::Parse(format!("map `{name}`: cells must tile the line"));
    if cells.is_empty()
        || cells.first().map(|c| &c.0) != Some(&ExtendedRational::NegInf)
        || cells.last().map(|c| &c.1) != Some(&ExtendedRational::PosInf)
    {
        return Err(tiling_err());
    }
    let mut breakpoints = Vec::new();
    for w in cells.windows(2) {
        if w[0].1 != w[1].0 {
            return Err(tiling_err());
        }
        match &w[0].1 {
            Finite(r) => breakpoints.push(r.clone()),
            _ => return Err(tiling_err()),
        }
    }
    let matrices = cells.into_iter().map(|c| c.2).collect();
    LineEmbedding::new(breakpoints, matrices)
        .map_err(|e| ScenarioError::Parse(format!("map `{name}`: {e}")))
}

fn build_lift(name: &str, spec: &MapSpec) -> Result<CircleMapLift, ScenarioError> {
    let mut cells: Vec<(Rat, Rat, [Rat; 4])> = Vec::new();
    for p in &spec.pieces {
        cells.push((
            parse_rational(&p.cell[0])?,
            parse_rational(&p.cell[1])?,
            [
                parse_rational(&p.matrix[0])?,
                parse_rational(&p.matrix[1])?,
                parse_rational(&p.matrix[2])?,
                parse_rational(&p.matrix[3])?,
            ],
        ));
    }
    cells.sort_by(|a, b| a.0.cmp(&b.0));
    let tiling_err = || ScenarioError::Parse(format!("lift `{name}`: cells must tile one period"));
    if cells.is_empty() {
        return Err(tiling_err());
    }
    for w in cells.windows(2) {
        if w[0].1 != w[1].0 {
            return Err(tiling_err());
        }
    }
    let anchor = cells[0].0.clone();
    let wrap = cells.last().expect("nonempty").1.clone();
    if wrap != &anchor + crate::rat::int(1) {
        return Err(tiling_err());
    }
    let breakpoints = cells.iter().map(|c| c.0.clone()).collect();
    let matrices = cells.into_iter().map(|c| c.2).collect();
    CircleMapLift::new(breakpoints, matrices)
        .map_err(|e| ScenarioError::Parse(format!("lift `{name}`: {e}")))
}

fn build_line_fn(name: &str, spec: &FnSpec) -> Result<LineFn, ScenarioError> {
    let mut out = LineFn::zero();
    for p in &spec.pieces {
        let lo = parse_rational(&p.cell[0])?;
        let hi = parse_rational(&p.cell[1])?;
        let coeffs = p
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        let piece = LineFn::piece(lo, hi, Poly::from_coeffs(coeffs))
            .map_err(|e| ScenarioError::Parse(format!("function `{name}`: {e}")))?;
        out = out.add(&piece);
    }
    Ok(out)
}

fn build_circle_fn(name: &str, spec: &FnSpec) -> Result<CircleFn, ScenarioError> {
    let mut out = CircleFn::zero();
    for p in &spec.pieces {
        let lo = parse_rational(&p.cell[0])?;
        let hi = parse_rational(&p.cell[1])?;
        let coeffs = p
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>, _>>()?;
        let line = LineFn::piece(lo, hi, Poly::from_coeffs(coeffs))
            .map_err(|e| ScenarioError::Parse(format!("function `{name}`: {e}")))?;
        let circ = crate::current::line_to_circle(&line)
            .map_err(|e| ScenarioError::Parse(format!("function `{name}`: {e}")))?;
        out = out.add(&circ);
    }
    Ok(out)
}

/// Parses a scenario from TOML text.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let file: ScenarioFile =
        toml::from_str(text).map_err(|e| ScenarioError::Parse(e.to_string()))?;
    let mut maps = BTreeMap::new();
    for (name, spec) in &file.maps {
        maps.insert(name.clone(), build_line_map(name, spec)?);
    }
    let mut lifts = BTreeMap::new();
    for (name, spec) in &file.lifts {
        lifts.insert(name.clone(), build_lift(name, spec)?);
    }
    let mut morphisms = BTreeMap::new();
    for (name, spec) in &file.morphisms {
        let resolve_map = |key: &String| {
            maps.get(key).cloned().ok_or_else(|| {
                ScenarioError::Resolve(format!("morphism `{name}` references unknown map `{key}`"))
            })
        };
        let resolve_lift = |key: &String| {
            lifts.get(key).cloned().ok_or_else(|| {
                ScenarioError::Resolve(format!("morphism `{name}` references unknown lift `{key}`"))
            })
        };
        let m = match spec.kind.as_str() {
            "m_to_m" => SkelMorphism2::m_to_m(resolve_map(&spec.plus)?, resolve_map(&spec.minus)?),
            "m_to_cyl" => {
                let bounded = |f: LineEmbedding| {
                    BoundedLineEmbedding::new(f)
                        .map_err(|e| ScenarioError::Parse(format!("morphism `{name}`: {e}")))
                };
                SkelMorphism2::m_to_cyl(
                    bounded(resolve_map(&spec.plus)?)?,
                    bounded(resolve_map(&spec.minus)?)?,
                )
            }
            "cyl_to_cyl" => {
                SkelMorphism2::cyl_to_cyl(resolve_lift(&spec.plus)?, resolve_lift(&spec.minus)?)
            }
            other => {
                return Err(ScenarioError::Parse(format!(
                    "morphism `{name}`: unknown kind `{other}`"
                )))
            }
        };
        morphisms.insert(name.clone(), m);
    }
    let mut observables = BTreeMap::new();
    for (name, spec) in &file.observables {
        let o = match spec.ambient.as_str() {
            "minkowski" => Observable::minkowski(
                build_line_fn(name, &spec.plus)?,
                build_line_fn(name, &spec.minus)?,
            ),
            "cylinder" => Observable::cylinder(
                build_circle_fn(name, &spec.plus)?,
                build_circle_fn(name, &spec.minus)?,
            ),
            other => {
                return Err(ScenarioError::Parse(format!(
                    "observable `{name}`: unknown ambient `{other}`"
                )))
            }
        };
        observables.insert(name.clone(), o);
    }
    let mut forms = BTreeMap::new();
    for (name, spec) in &file.forms {
        forms.insert(
            name.clone(),
            TwoForm::separable(
                build_line_fn(name, &spec.plus)?,
                build_line_fn(name, &spec.minus)?,
            ),
        );
    }
    let mut models = BTreeMap::new();
    for (name, spec) in &file.models {
        let kind = match spec.kind.as_str() {
            "current" => ModelKind::Current,
            "corrupted_current" => ModelKind::CorruptedCurrent,
            "trivial" => ModelKind::Trivial,
            "pullback_plus" => ModelKind::PullbackPlus,
            "pullback_minus" => ModelKind::PullbackMinus,
            other => {
                return Err(ScenarioError::Parse(format!(
                    "model `{name}`: unknown kind `{other}`"
                )))
            }
        };
        models.insert(name.clone(), kind);
    }
    Ok(Scenario {
        seed: file.seed.unwrap_or(0),
        tolerance: file.tolerance.unwrap_or(1e-9),
        maps,
        lifts,
        morphisms,
        observables,
        forms,
        models,
        checks: file.checks,
    })
}

/// Loads and parses a scenario file.
pub fn load_scenario(path: &std::path::Path) -> Result<Scenario, ScenarioError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ScenarioError::Parse(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

impl Scenario {
    pub fn morphism(&self, name: &str) -> Result<&SkelMorphism2, ScenarioError> {
        self.morphisms
            .get(name)
            .ok_or_else(|| ScenarioError::Resolve(format!("unknown morphism `{name}`")))
    }

    pub fn observable(&self, name: &str) -> Result<&Observable, ScenarioError> {
        self.observables
            .get(name)
            .ok_or_else(|| ScenarioError::Resolve(format!("unknown observable `{name}`")))
    }

    pub fn map(&self, name: &str) -> Result<&LineEmbedding, ScenarioError> {
        self.maps
            .get(name)
            .ok_or_else(|| ScenarioError::Resolve(format!("unknown map `{name}`")))
    }

    pub fn form(&self, name: &str) -> Result<&TwoForm, ScenarioError> {
        self.forms
            .get(name)
            .ok_or_else(|| ScenarioError::Resolve(format!("unknown form `{name}`")))
    }

    pub fn model(&self, name: &str) -> Result<ModelKind, ScenarioError> {
        self.models
            .get(name)
            .copied()
            .ok_or_else(|| ScenarioError::Resolve(format!("unknown model `{name}`")))
    }

    pub fn lift(&self, name: &str) -> Result<&CircleMapLift, ScenarioError> {
        self.lifts
            .get(name)
            .ok_or_else(|| ScenarioError::Resolve(format!("unknown lift `{name}`")))
    }

    pub fn bounded_map(&self, name: &str) -> Result<BoundedLineEmbedding, ScenarioError> {
        BoundedLineEmbedding::new(self.map(name)?.clone())
            .map_err(|e| ScenarioError::Resolve(format!("map `{name}` is not bounded: {e}")))
    }

    pub fn pair_table(&self) -> Vec<[String; 2]> {
        self.checks
            .iter()
            .filter(|c| c.kind == "orthogonality")
            .flat_map(|c| c.pairs.clone())
            .collect()
    }
}

/// Executes every directive in order and returns the merged report.
pub fn run_scenario(scenario: &Scenario, options: RunOptions) -> Result<Report, ScenarioError> {
    let seed = options.seed.unwrap_or(scenario.seed);
    let tol_value = options.tolerance.unwrap_or(scenario.tolerance);
    let mut report = Report::new();
    for (idx, check) in scenario.checks.iter().enumerate() {
        let tol = match check.tolerance {
            Some(t) => Tolerance::Abs(t),
            None => Tolerance::Exact,
        };
        let sub = run_check(scenario, idx, check, seed, tol_value, &tol)?;
        report.merge(sub);
    }
    Ok(report)
}

fn expect_bools(spec: &CheckSpec) -> Option<Vec<bool>> {
    match &spec.expect {
        Some(toml::Value::Array(items)) => Some(items.iter().filter_map(|v| v.as_bool()).collect()),
        _ => None,
    }
}

fn expect_string(spec: &CheckSpec) -> Option<String> {
    match &spec.expect {
        Some(toml::Value::String(s)) => Some(s.clone()),
        _ => None,
    }
}

fn sign_of(spec: &CheckSpec) -> Result<ChiralSign, ScenarioError> {
    match spec.sign.as_deref() {
        Some("plus") => Ok(ChiralSign::Plus),
        Some("minus") => Ok(ChiralSign::Minus),
        other => Err(ScenarioError::Parse(format!(
            "expected sign plus|minus, got {other:?}"
        ))),
    }
}

fn run_check(
    scenario: &Scenario,
    idx: usize,
    check: &CheckSpec,
    seed: u64,
    tol_value: f64,
    tol: &Tolerance,
) -> Result<Report, ScenarioError> {
    let mut report = Report::new();
    let label = format!("directive {idx}");
    match check.kind.as_str() {
        "orthogonality" => {
            let expected = expect_bools(check);
            for (pair_idx, [a, b]) in check.pairs.iter().enumerate() {
                let ma = scenario.morphism(a)?;
                let mb = scenario.morphism(b)?;
                let value = orthogonal2(ma, mb)
                    .map_err(|e| ScenarioError::Resolve(format!("{label}: {e}")))?;
                let inputs = format!("{a} perp {b}");
                match expected.as_ref().and_then(|v| v.get(pair_idx)) {
                    Some(want) if *want != value => report.fail(
                        "orthogonality",
                        inputs,
                        format!("got {value}, expected {want}"),
                    ),
                    _ => report.pass("orthogonality", format!("{inputs} = {value}")),
                }
            }
        }
        "functoriality" | "einstein_causality" | "time_slice" => {
            let name = check
                .model
                .as_deref()
                .ok_or_else(|| ScenarioError::Parse(format!("{label}: `model` is required")))?;
            let kind = scenario.model(name)?;
            let sample = check.sample.unwrap_or(20);
            let sub = with_skel2_model(kind, |model| {
                model.law_suite(&check.kind, sample, seed, tol)
            })
            .map_err(|e| ScenarioError::Resolve(format!("{label}: {e}")))?;
            report.merge(sub);
        }
        "chirality" => {
            let name = check
                .model
                .as_deref()
                .ok_or_else(|| ScenarioError::Parse(format!("{label}: `model` is required")))?;
            let kind = scenario.model(name)?;
            let sign = sign_of(check)?;
            let mut witnesses =
                sampling::witnesses_for_object(sign, SkelObject2::Minkowski, 10, seed);
            witnesses.extend(sampling::witnesses_for_object(
                sign,
                SkelObject2::Cylinder,
                10,
                seed ^ 1,
            ));
            let verdict = with_skel2_model(kind, |model| model.chirality(sign, &witnesses, tol))
                .map_err(|e| ScenarioError::Resolve(format!("{label}: {e}")))?;
            let inputs = format!("model {name}, sign {sign}");
            match expect_string(check).as_deref() {
                Some("chiral") if !matches!(verdict, ChiralityVerdict::Chiral { .. }) => {
                    report.fail("chirality", inputs, verdict.to_string())
                }
                Some("not_chiral") if !matches!(verdict, ChiralityVerdict::NotChiral { .. }) => {
                    report.fail("chirality", inputs, verdict.to_string())
                }
                _ => report.pass("chirality", format!("{inputs}: {verdict}")),
            }
        }
        "unit_identity" => {
            let sign = sign_of(check)?;
            let chiral = chiral_component_model(sign);
            let pulled = pullback_model(&chiral, PiFunctor { sign });
            let sub = check_unit_identity(&chiral, &pulled, sign, 8, seed, tol)
                .map_err(|e| ScenarioError::Resolve(format!("{label}: {e}")))?;
            report.merge(sub);
        }
        "commutator" => {
            let left = check
                .left
                .as_deref()
                .ok_or_else(|| ScenarioError::Parse(format!("{label}: `left` is required")))?;
            let right = check
                .right
                .as_deref()
                .ok_or_else(|| ScenarioError::Parse(format!("{label}: `right` is required")))?;
            let a = scenario.observable(left)?;
            let b = scenario.observable(right)?;
            if a.ambient() != b.ambient() {
                return Err(ScenarioError::Resolve(format!(
                    "{label}: observables live on different objects"
                )));
            }
            let value = commutator_coefficient(a, b);
            let rendered = format!("{} i", format_rat(&value));
            let inputs = format!("[{left}, {right}]");
            match expect_string(check) {
                Some(want) if want != format_rat(&value) => report.fail(
                    "commutator",
                    inputs,
                    format!("got {rendered}, expected {want} i"),
                ),
                _ => report.pass("commutator", format!("{inputs} = {rendered}")),
            }
        }
        "zigzag" => {
            let need = |field: &Option<String>, what: &str| {
                field
                    .clone()
                    .ok_or_else(|| ScenarioError::Parse(format!("{label}: `{what}` is required")))
            };
            let h = scenario.bounded_map(&need(&check.h, "h")?)?;
            let f1 = scenario.bounded_map(&need(&check.f1, "f1")?)?;
            let f2 = scenario.bounded_map(&need(&check.f2, "f2")?)?;
            let zz = build_zigzag(&h, &f1, &f2)
                .map_err(|e| ScenarioError::Resolve(format!("{label}: {e}")))?;
            let structural = zz
                .cells_commute_structurally()
                .map_err(|e| ScenarioError::Resolve(format!("{label}: {e}")))?;
            let mut rng = sampling::seeded(seed);
            let sampled = zz.cells_commute_sampled(50, &mut rng);
            if structural && sampled {
                report.pass("zigzag", "commutes: yes".into());
            } else {
                report.fail("zigzag", "diagram".into(), "a cell fails to commute".into());
            }
        }
        "tau_consistency" => {
            let sample = check.sample.unwrap_or(20);
            let eps = check.tolerance.unwrap_or_else(|| tol_value.max(1e-8));
            let mut rng = sampling::seeded(seed);
            use rand::Rng;
            let mut worst: f64 = 0.0;
            for _ in 0..sample {
                let bump = |rng: &mut rand_chacha::ChaCha8Rng| {
                    let lo = crate::rat::rat(rng.gen_range(-8..6), 4);
                    let hi = &lo + crate::rat::rat(rng.gen_range(2..6), 4);
                    LineFn::triangle(lo, hi, crate::rat::rat(rng.gen_range(1..4), 2))
                        .expect("valid bump")
                };
                let sd1 = rng.gen_bool(0.5);
                let sd2 = rng.gen_bool(0.5);
                let mk = |self_dual: bool, rng: &mut rand_chacha::ChaCha8Rng| {
                    let p = bump(rng);
                    let m = bump(rng);
                    if self_dual {
                        OneFormPair::self_dual(p, m)
                    } else {
                        OneFormPair::anti_self_dual(p, m)
                    }
                };
                let alpha = mk(sd1, &mut rng);
                let beta = mk(sd2, &mut rng);
                let numeric = crate::current::tau_via_propagator(&alpha, &beta);
                let (ap, am) = alpha.to_observable_slots();
                let (bp, bm) = beta.to_observable_slots();
                let exact = crate::rat::rat_to_f64(
                    &(crate::current::tau_line(&ap, &bp) + crate::current::tau_line(&am, &bm)),
                );
                worst = worst.max((numeric - exact).abs());
            }
            if worst <= eps {
                report.pass(
                    "tau-consistency",
                    format!("{sample} separable cases, max deviation {worst:.12e}"),
                );
            } else {
                report.fail(
                    "tau-consistency",
                    format!("{sample} separable cases"),
                    format!("max deviation {worst:.12e} exceeds {eps:.1e}"),
                );
            }
        }
        "propagator_point" => {
            let form_name = check
                .form
                .as_deref()
                .ok_or_else(|| ScenarioError::Parse(format!("{label}: `form` is required")))?;
            let form = scenario.form(form_name)?;
            let point = check
                .point
                .as_ref()
                .ok_or_else(|| ScenarioError::Parse(format!("{label}: `point` is required")))?;
            let p = (parse_rational(&point[0])?, parse_rational(&point[1])?);
            let value = causal_propagator_minkowski(form, &p);
            let inputs = format!("{form_name} at ({}, {})", point[0], point[1]);
            match expect_string(check) {
                Some(want) if want != format_rat(&value) => report.fail(
                    "propagator-point",
                    inputs,
                    format!("got {}, expected {want}", format_rat(&value)),
                ),
                _ => report.pass(
                    "propagator-point",
                    format!("{inputs} = {}", format_rat(&value)),
                ),
            }
        }
        other => {
            return Err(ScenarioError::Parse(format!(
                "{label}: unknown check kind `{other}`"
            )))
        }
    }
    Ok(report)
}

/// Degree-one commutator coefficient: `[a, b] = i tau(a, b) 1`.
pub fn commutator_coefficient(a: &Observable, b: &Observable) -> Rat {
    let fa = WeylElement::generator(a.clone());
    let fb = WeylElement::generator(b.clone());
    let comm = fa.commutator(&fb, &tau_same_ambient);
    comm.coefficient(&[]).im
}

/// Runs a closure against the named builtin model, all of which live on the
/// two-dimensional skeletal category.
pub fn with_skel2_model<T>(
    kind: ModelKind,
    run: impl Fn(&dyn DynSkel2Model) -> Result<T, String>,
) -> Result<T, String> {
    match kind {
        ModelKind::Current => run(&current_model()),
        ModelKind::CorruptedCurrent => {
            let inner = current_model();
            run(&CorruptedModel { inner: &inner })
        }
        ModelKind::Trivial => run(&TrivialModel),
        ModelKind::PullbackPlus => {
            let chiral = chiral_component_model(ChiralSign::Plus);
            run(&pullback_model(
                &chiral,
                PiFunctor {
                    sign: ChiralSign::Plus,
                },
            ))
        }
        ModelKind::PullbackMinus => {
            let chiral = chiral_component_model(ChiralSign::Minus);
            run(&pullback_model(
                &chiral,
                PiFunctor {
                    sign: ChiralSign::Minus,
                },
            ))
        }
    }
}

/// Object-safe view of a model on the two-dimensional skeletal category,
/// so directives can dispatch on the model name at runtime.
pub trait DynSkel2Model {
    fn law_suite(
        &self,
        which: &str,
        sample: usize,
        seed: u64,
        tol: &Tolerance,
    ) -> Result<Report, String>;

    fn chirality(
        &self,
        sign: ChiralSign,
        witnesses: &[SkelMorphism2],
        tol: &Tolerance,
    ) -> Result<ChiralityVerdict, String>;
}

impl<M: AqftModel<Cat = Skel2Cat>> DynSkel2Model for M {
    fn law_suite(
        &self,
        which: &str,
        sample: usize,
        seed: u64,
        tol: &Tolerance,
    ) -> Result<Report, String> {
        let mut rng = sampling::seeded(seed);
        match which {
            "functoriality" => {
                let pairs: Vec<_> = (0..sample)
                    .map(|_| sampling::composable_pair2(&mut rng))
                    .collect();
                check_functoriality(self, &pairs, tol).map_err(|e| e.to_string())
            }
            "einstein_causality" => {
                let pairs: Vec<_> = (0..sample)
                    .map(|_| sampling::orthogonal_pair2(&mut rng))
                    .collect();
                check_einstein_causality(self, &pairs, tol).map_err(|e| e.to_string())
            }
            "time_slice" => {
                let morphisms: Vec<_> = (0..sample)
                    .map(|_| sampling::cauchy_morphism2(&mut rng))
                    .collect();
                check_time_slice(self, &morphisms, tol).map_err(|e| e.to_string())
            }
            other => Err(format!("unknown law suite `{other}`")),
        }
    }

    fn chirality(
        &self,
        sign: ChiralSign,
        witnesses: &[SkelMorphism2],
        tol: &Tolerance,
    ) -> Result<ChiralityVerdict, String> {
        counit_and_chirality(self, sign, witnesses, tol).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
# the skeletal relation examples and the worked commutator
seed = 0

[maps.onto_01]
pieces = [
  { cell = ["-inf", "0"], matrix = ["0", "-1", "2", "-2"] },
  { cell = ["0", "+inf"], matrix = ["2", "1", "2", "2"] },
]

[maps.onto_23]
pieces = [
  { cell = ["-inf", "0"], matrix = ["-4", "5", "-2", "2"] },
  { cell = ["0", "+inf"], matrix = ["6", "5", "2", "2"] },
]

[maps.onto_m3m2]
pieces = [
  { cell = ["-inf", "0"], matrix = ["6", "-5", "-2", "2"] },
  { cell = ["0", "+inf"], matrix = ["4", "5", "-2", "-2"] },
]

[morphisms.left]
kind = "m_to_m"
plus = "onto_01"
minus = "onto_01"

[morphisms.spacelike]
kind = "m_to_m"
plus = "onto_23"
minus = "onto_m3m2"

[morphisms.timelike]
kind = "m_to_m"
plus = "onto_23"
minus = "onto_23"

[observables.phi]
ambient = "minkowski"
plus = { pieces = [ { cell = ["0", "1"], coeffs = ["0", "1"] }, { cell = ["1", "2"], coeffs = ["2", "-1"] } ] }
minus = { pieces = [] }

[observables.psi]
ambient = "minkowski"
plus = { pieces = [ { cell = ["1", "2"], coeffs = ["-1", "1"] }, { cell = ["2", "3"], coeffs = ["3", "-1"] } ] }
minus = { pieces = [] }

[[checks]]
kind = "orthogonality"
pairs = [["left", "spacelike"], ["left", "timelike"]]
expect = [true, false]

[[checks]]
kind = "commutator"
left = "phi"
right = "psi"
expect = "-1/4"
"#;

    #[test]
    fn small_scenario_parses_and_passes() {
        let scenario = parse_scenario(SMALL).unwrap();
        let report = run_scenario(&scenario, RunOptions::default()).unwrap();
        assert!(report.passed(), "{}", report.render());
        assert_eq!(report.records.len(), 3);
    }

    #[test]
    fn chart_map_serialization_matches_the_canonical_chart() {
        let scenario = parse_scenario(SMALL).unwrap();
        let m = scenario.map("onto_01").unwrap();
        assert_eq!(
            *m,
            crate::maps1d::chart_onto(
                &crate::geometry::Interval::bounded(crate::rat::int(0), crate::rat::int(1))
                    .unwrap()
            )
        );
    }

    #[test]
    fn malformed_and_dangling_inputs_error() {
        assert!(matches!(
            parse_scenario("seed = ["),
            Err(ScenarioError::Parse(_))
        ));
        let dangling = r#"
[morphisms.bad]
kind = "m_to_m"
plus = "nope"
minus = "nope"
"#;
        assert!(matches!(
            parse_scenario(dangling),
            Err(ScenarioError::Resolve(_))
        ));
        let unknown_model = r#"
[[checks]]
kind = "functoriality"
model = "ghost"
"#;
        let scenario = parse_scenario(unknown_model).unwrap();
        assert!(matches!(
            run_scenario(&scenario, RunOptions::default()),
            Err(ScenarioError::Resolve(_))
        ));
    }

    #[test]
    fn corrupted_model_fails_and_report_is_deterministic() {
        let text = r#"
seed = 3
[models.bad]
kind = "corrupted_current"
[[checks]]
kind = "functoriality"
model = "bad"
sample = 4
"#;
        let scenario = parse_scenario(text).unwrap();
        let report = run_scenario(&scenario, RunOptions::default()).unwrap();
        assert!(!report.passed());
        let again = run_scenario(&scenario, RunOptions::default()).unwrap();
        assert_eq!(report.render(), again.render(), "byte-identical reruns");
    }
}
