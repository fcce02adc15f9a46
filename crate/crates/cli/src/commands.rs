use eraser_core::audit::{check_isometry, no_signal_gap, IsometryVerdict, SignalingVerdict};
use eraser_core::scenario::{evolution_map, evolve};
use eraser_core::screen::{fringe_spacing, fringe_warning};
use eraser_core::{compute_pattern, visibility_from_coherence, Evolution, ScenarioConfig};
use serde::Serialize;
use serde_json::Value;

use crate::args::SweepArgs;
use crate::config::ConfigBuilder;
use crate::error::CliError;
use crate::output::{fmt_f64, pattern_csv, OutputDir};

/// What a command reports back for the summary and manifest.
#[derive(Default)]
pub struct Outcome {
    pub rows: Vec<(String, String)>,
    pub warnings: Vec<String>,
    /// Set when a correct evolution produced a forbidden result.
    pub violation: Option<String>,
}

impl Outcome {
    fn row(&mut self, key: &str, value: impl ToString) {
        self.rows.push((key.to_owned(), value.to_string()));
    }
}

fn overlap_rows(out: &mut Outcome, cfg: &ScenarioConfig) -> Result<(), CliError> {
    out.row("evolution", cfg.evolution.name());
    out.row("s_phi", fmt_f64(cfg.s_phi()?));
    out.row("s_gamma", fmt_f64(cfg.s_gamma()?));
    Ok(())
}

fn common_warnings(cfg: &ScenarioConfig) -> Vec<String> {
    let mut w = Vec::new();
    if let Some(msg) = fringe_warning(cfg) {
        w.push(msg);
    }
    if let Some(tag) = cfg.evolution.tag() {
        w.push(format!("evolution {:?} is a {tag}", cfg.evolution.name()));
    }
    w
}

#[derive(Serialize)]
struct VisibilitySidecar {
    visibility: f64,
    coherence_visibility: f64,
    single_source: bool,
    grid_contrast: f64,
    fringe_spacing: f64,
    s_phi: f64,
    s_gamma: f64,
    evolution: &'static str,
    fixture_tag: Option<&'static str>,
}

pub fn pattern(cfg: &ScenarioConfig, dir: &mut OutputDir) -> Result<Outcome, CliError> {
    let state = evolve(cfg)?;
    let p = compute_pattern(&state, cfg)?;
    let coherence = visibility_from_coherence(&state)?;
    dir.write("pattern.csv", &pattern_csv(&p))?;
    dir.write_json(
        "visibility.json",
        &VisibilitySidecar {
            visibility: p.visibility,
            coherence_visibility: coherence.value,
            single_source: coherence.single_source,
            grid_contrast: p.grid_contrast(),
            fringe_spacing: fringe_spacing(cfg),
            s_phi: cfg.s_phi()?,
            s_gamma: cfg.s_gamma()?,
            evolution: cfg.evolution.name(),
            fixture_tag: cfg.evolution.tag(),
        },
    )?;
    let mut out = Outcome { warnings: common_warnings(cfg), ..Outcome::default() };
    overlap_rows(&mut out, cfg)?;
    out.row("alice_pulse", cfg.alice_pulse);
    out.row("visibility", fmt_f64(p.visibility));
    out.row("coherence_visibility", fmt_f64(coherence.value));
    Ok(out)
}

pub fn audit_unitarity(cfg: &ScenarioConfig, dir: &mut OutputDir) -> Result<Outcome, CliError> {
    let report = check_isometry(&evolution_map(cfg)?)?;
    dir.write_json("isometry.json", &report)?;
    let mut out = Outcome { warnings: common_warnings(cfg), ..Outcome::default() };
    overlap_rows(&mut out, cfg)?;
    out.row("map", &report.map_label);
    out.row("basis_size", report.gram_in.len());
    out.row("max_deviation", fmt_f64(report.max_deviation));
    out.row("verdict", verdict_name(&report.verdict));
    if cfg.evolution == Evolution::Correct && report.verdict == IsometryVerdict::Violation {
        out.violation = Some(format!("correct evolution is not isometric (deviation {:e})", report.max_deviation));
    }
    Ok(out)
}

pub fn audit_signaling(cfg: &ScenarioConfig, dir: &mut OutputDir) -> Result<Outcome, CliError> {
    let report = no_signal_gap(cfg)?;
    dir.write_json("signaling.json", &report)?;
    dir.write("pattern_pulse.csv", &pattern_csv(&report.pattern_pulse))?;
    dir.write("pattern_nopulse.csv", &pattern_csv(&report.pattern_nopulse))?;
    let mut out = Outcome { warnings: common_warnings(cfg), ..Outcome::default() };
    overlap_rows(&mut out, cfg)?;
    out.row("visibility_pulse", fmt_f64(report.pattern_pulse.visibility));
    out.row("visibility_nopulse", fmt_f64(report.pattern_nopulse.visibility));
    out.row("visibility_gap", fmt_f64(report.visibility_gap));
    out.row("max_gap", fmt_f64(report.max_gap));
    out.row("verdict", verdict_name(&report.verdict));
    if cfg.evolution == Evolution::Correct && report.verdict == SignalingVerdict::Signaling {
        out.violation = Some(format!("correct evolution signals (max gap {:e})", report.max_gap));
    }
    Ok(out)
}

/// `steps` evenly spaced values from `from` to `to`, both ends exact.
pub fn sweep_values(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        n => (0..n).map(|i| if i == n - 1 { to } else { from + (to - from) * i as f64 / (n - 1) as f64 }).collect(),
    }
}

/// Runs the sweep. `base` is the builder holding the file and flag layers;
/// each point overrides the swept key on a copy.
pub fn sweep(
    args: &SweepArgs,
    base: impl Fn() -> Result<ConfigBuilder, CliError>,
    dir: &mut OutputDir,
) -> Result<(Outcome, ScenarioConfig), CliError> {
    if args.steps == 0 {
        return Err(CliError::Config("--steps must be at least 1".into()));
    }
    let values = sweep_values(args.from, args.to, args.steps);
    let configs = values
        .iter()
        .map(|&v| {
            let mut b = base()?;
            b.set(args.param.config_key(), Value::from(v))?;
            b.build()
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut csv = format!("{},visibility,max_gap\n", args.param.column());
    let mut worst_gap = 0.0f64;
    let mut violation = None;
    for (v, cfg) in values.iter().zip(&configs) {
        let report = no_signal_gap(cfg)?;
        let shown = if cfg.alice_pulse { &report.pattern_pulse } else { &report.pattern_nopulse };
        csv.push_str(&format!("{},{},{}\n", fmt_f64(*v), fmt_f64(shown.visibility), fmt_f64(report.max_gap)));
        worst_gap = worst_gap.max(report.max_gap);
        if cfg.evolution == Evolution::Correct && report.verdict == SignalingVerdict::Signaling && violation.is_none() {
            violation = Some(format!(
                "correct evolution signals at {} = {} (max gap {:e})",
                args.param.column(),
                fmt_f64(*v),
                report.max_gap
            ));
        }
    }
    dir.write("sweep.csv", &csv)?;

    let first = configs[0].clone();
    let mut out = Outcome { warnings: common_warnings(&first), violation, ..Outcome::default() };
    out.row("evolution", first.evolution.name());
    out.row("param", args.param.column());
    out.row("range", format!("{} .. {}", fmt_f64(args.from), fmt_f64(args.to)));
    out.row("steps", args.steps);
    out.row("worst_max_gap", fmt_f64(worst_gap));
    Ok((out, first))
}

fn verdict_name<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}
