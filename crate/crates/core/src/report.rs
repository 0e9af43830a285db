//! Machine-readable experiment reports and the commands that produce them.
//!
//! A report is deterministic given its command, parameters, seed and crate
//! version: maps are ordered, floats use shortest round-trip formatting and
//! exact rationals are rendered as `"p/q"` strings. Wall-clock time never
//! enters a report.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chain::{
    classical_chain_error, composition_law_value, default_chain_coloring, exact_chain_error, make_chain,
    quantum_chain_error, quantum_density_bound, simulate_chain, ChainInput, ChainMode, ChainSpec,
};
use crate::classical::{
    best_code_assignment, classical_lower_bound, evaluate_coloring, evaluate_trit, search_optimal, trit_coloring,
    Coloring, SearchLimits, SearchOutcome, TritColour,
};
use crate::error::{Error, Result};
use crate::game::{solve_minimax, MinimaxOptions};
use crate::quantum::{average_error_uniform, link_error_probability, run_two_party_mc, worst_case_bound, worst_case_error};
use crate::ring::{Offset, PromiseClass, PromisePair, Ring};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// `"p/q"`, also for integers.
pub fn render_rational(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn to_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// A reported number together with the operation that produced it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: Value,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: BTreeMap<String, Quantity>,
    pub seed: Option<u64>,
    pub version: String,
}

impl ExperimentReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            results: BTreeMap::new(),
            seed: None,
            version: VERSION.to_string(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>, source: &str) -> &mut Self {
        self.results.insert(
            key.to_string(),
            Quantity {
                value: value.into(),
                source: source.to_string(),
            },
        );
        self
    }

    pub fn put_rational(&mut self, key: &str, value: Rational64, source: &str) -> &mut Self {
        self.put(key, render_rational(value), source)
    }

    pub fn value(&self, key: &str) -> Option<&Value> {
        self.results.get(key).map(|q| &q.value)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One `name = value` line per result, for humans.
    pub fn summary(&self) -> String {
        let mut out = format!("{} (v{})\n", self.command, self.version);
        for (k, v) in &self.parameters {
            out.push_str(&format!("  {k}: {}\n", plain(v)));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("  seed: {seed}\n"));
        }
        for (k, q) in &self.results {
            out.push_str(&format!("  {k} = {}\n", plain(&q.value)));
        }
        out
    }
}

/// Strings without quotes, everything else as JSON text.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn mc_fields(report: &mut ExperimentReport, est: &crate::quantum::McEstimate, source: &str) {
    report
        .put("mc_mean", est.mean, source)
        .put("mc_std_error", est.std_error, source)
        .put("mc_errors", est.errors, source)
        .put("mc_trials", est.trials, source);
}

/// Monte Carlo request: trial count and the seed to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MonteCarlo {
    pub trials: u64,
    pub seed: u64,
}

/// The worst-case pair: `x` one dot from `y = 0`.
pub fn default_pair(ring: Ring) -> PromisePair {
    PromisePair::from_offset(ring.wrap(0), Offset::new(PromiseClass::NoJump, 1))
}

pub fn cmd_two_party(n: u32, pair: Option<(u32, u32)>, mc: Option<MonteCarlo>) -> Result<ExperimentReport> {
    let ring = Ring::new(n)?;
    let mut report = ExperimentReport::new("two-party");
    report.param("n", n);
    report
        .put("worst_case_error", worst_case_error(ring), "quantum::worst_case_error")
        .put("worst_case_bound", worst_case_bound(ring), "quantum::worst_case_bound")
        .put("average_error_uniform", average_error_uniform(ring), "quantum::average_error_uniform");
    let pair = match pair {
        Some((x, y)) => Some(PromisePair::new(ring.point(x)?, ring.point(y)?)?),
        None => mc.map(|_| default_pair(ring)),
    };
    if let Some(pair) = pair {
        report.param("x", pair.x().value()).param("y", pair.y().value());
        report
            .put("pair_class", pair.class().to_string(), "ring::PromisePair::new")
            .put("link_error", link_error_probability(&pair), "quantum::link_error_probability");
    }
    if let (Some(pair), Some(mc)) = (pair, mc) {
        report.param("trials", mc.trials);
        report.seed = Some(mc.seed);
        let est = run_two_party_mc(&pair, mc.trials, mc.seed)?;
        mc_fields(&mut report, &est, "quantum::run_two_party_mc");
    }
    Ok(report)
}

/// Returns the report and the search outcome; callers time the search
/// themselves.
pub fn cmd_classical_search(n: u32, use_symmetry: bool, limits: SearchLimits) -> Result<(ExperimentReport, SearchOutcome)> {
    let ring = Ring::new(n)?;
    let outcome = search_optimal(ring, use_symmetry, limits)?;
    let bound = classical_lower_bound(ring);
    let mut report = ExperimentReport::new("classical-search");
    report.param("n", n).param("symmetry", use_symmetry);
    let src = "classical::search_optimal";
    report
        .put_rational("min_error", outcome.min_error, src)
        .put("min_error_decimal", to_f64(outcome.min_error), src)
        .put_rational("lower_bound", bound, "classical::classical_lower_bound")
        .put("bound_holds", outcome.min_error >= bound, src)
        .put("minimizer", outcome.minimizers[0].to_string(), src)
        .put("minimizer_orbits", outcome.minimizers.len(), src)
        .put("evaluated", outcome.evaluated, src)
        .put("covered", outcome.covered, src);
    Ok((report, outcome))
}

pub fn cmd_trit(n: u32) -> Result<ExperimentReport> {
    let ring = Ring::new(n)?;
    let coloring = trit_coloring(ring);
    let error = evaluate_trit(&coloring);
    let (assignment, length) = best_code_assignment(&coloring);
    let mut report = ExperimentReport::new("trit");
    report.param("n", n);
    let codes: BTreeMap<String, Value> = TritColour::ALL
        .iter()
        .map(|&c| (c.symbol().to_string(), Value::from(assignment.codeword(c).bits())))
        .collect();
    report
        .put("coloring", coloring.to_string(), "classical::trit_coloring")
        .put_rational("error", error, "classical::evaluate_trit")
        .put("zero_error", *error.numer() == 0, "classical::evaluate_trit")
        .put_rational("expected_code_length", length, "classical::best_code_assignment")
        .put("expected_code_length_decimal", to_f64(length), "classical::best_code_assignment")
        .put("codewords", Value::Object(codes.into_iter().collect()), "classical::best_code_assignment");
    Ok(report)
}

/// Also returns whether the solver converged.
pub fn cmd_minimax(n: u32, options: MinimaxOptions) -> Result<(ExperimentReport, bool)> {
    let ring = Ring::new(n)?;
    let sol = solve_minimax(ring, options)?;
    let mut report = ExperimentReport::new("minimax");
    report
        .param("n", n)
        .param("max_iterations", options.max_iterations)
        .param("tolerance", options.tolerance);
    let src = "game::solve_minimax";
    let adversary_support = sol.adversary_dist.weights().iter().filter(|&&w| w > 0.0).count();
    let history: Vec<Value> = sol
        .history
        .iter()
        .map(|s| json!({"iteration": s.iteration, "lower": s.lower, "upper": s.upper}))
        .collect();
    let mix: BTreeMap<String, Value> = sol
        .protocol_mix
        .support()
        .iter()
        .map(|(c, p)| (c.to_string(), Value::from(*p)))
        .collect();
    report
        .put("value", sol.value, src)
        .put("lower", sol.lower, src)
        .put("upper", sol.upper, src)
        .put("gap", sol.gap, src)
        .put("iterations", sol.iterations, src)
        .put("converged", sol.converged, src)
        .put("protocol_support", sol.protocol_mix.support().len(), src)
        .put("protocol_mix", Value::Object(mix.into_iter().collect()), src)
        .put("adversary_support", adversary_support, src)
        .put("history", history, src);
    Ok((report, sol.converged))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Quantum,
    Classical,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Quantum => "quantum",
            Mode::Classical => "classical",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quantum" => Ok(Mode::Quantum),
            "classical" => Ok(Mode::Classical),
            other => Err(Error::Parse(format!("mode must be quantum or classical, got {other:?}"))),
        }
    }
}

/// Where the chain comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ChainSource {
    Generated { m: usize, n: u32, seed: u64 },
    File { path: String, text: String },
}

pub struct ChainRequest {
    pub source: ChainSource,
    pub mode: Mode,
    /// Per-link colouring for classical mode; the default strategy if absent.
    pub coloring: Option<String>,
    pub mc: Option<MonteCarlo>,
}

pub fn cmd_chain(req: &ChainRequest) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("chain");
    let spec = match &req.source {
        ChainSource::Generated { m, n, seed } => {
            report.seed = Some(*seed);
            make_chain(*m, Ring::new(*n)?, ChainInput::Seeded(*seed))?
        }
        ChainSource::File { path, text } => {
            report.param("links_file", path.as_str());
            ChainSpec::from_json(text)?
        }
    };
    let ring = spec.ring();
    let c = spec.density();
    report
        .param("m", spec.parties())
        .param("n", ring.half())
        .param("mode", req.mode.to_string());

    let quantum = quantum_chain_error(&spec);
    report
        .put("true_parity", serde_json::to_value(spec.true_parity()).expect("parity"), "chain::make_chain")
        .put("c", c, "chain::ChainSpec::density")
        .put("quantum_density_bound", quantum_density_bound(c, ring), "chain::quantum_density_bound")
        .put(
            "classical_small_c_bound",
            (spec.parties() - 1) as f64 / (3.0 * f64::from(ring.half())),
            "chain::classical_chain_error",
        )
        .put(
            "classical_big_n_formula",
            crate::chain::classical_chain_big_n_formula(c)?,
            "chain::classical_chain_big_n_formula",
        );

    let coloring = match req.mode {
        Mode::Quantum => None,
        Mode::Classical => Some(match &req.coloring {
            Some(s) => Coloring::parse(ring, s)?,
            None => default_chain_coloring(ring, SearchLimits::default()),
        }),
    };
    let mode = match &coloring {
        None => {
            report
                .put("exact", quantum.exact, "chain::quantum_chain_error")
                .put("union_bound", quantum.union_bound, "chain::quantum_chain_error")
                .put("worst_links", quantum.worst_links, "chain::quantum_chain_error");
            ChainMode::Quantum
        }
        Some(coloring) => {
            let classical = classical_chain_error(&spec, coloring)?;
            let eps = evaluate_coloring(coloring).total_error;
            report.param("coloring", coloring.to_string());
            report
                .put("exact", classical.exact, "chain::classical_chain_error")
                .put("union_bound", classical.union_sum, "chain::classical_chain_error")
                .put_rational("link_error_uniform", eps, "classical::evaluate_coloring")
                .put(
                    "composition_law_value",
                    composition_law_value(c, to_f64(eps), ring),
                    "chain::composition_law_value",
                );
            ChainMode::Classical(coloring)
        }
    };
    if let Some(mc) = req.mc {
        report.param("trials", mc.trials);
        report.seed = Some(mc.seed);
        let est = simulate_chain(&spec, mode, mc.trials, mc.seed)?;
        mc_fields(&mut report, &est, "chain::simulate_chain");
        report.put(
            "mc_within_3_sigma",
            est.agrees_with(exact_chain_error(&spec, mode)?, 3.0),
            "quantum::McEstimate::agrees_with",
        );
    }
    Ok(report)
}

/// A sweep grid. Every list key is a grid axis; scalars apply to all cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n: Vec<u32>,
    #[serde(default = "default_m")]
    pub m: Vec<usize>,
    #[serde(default = "default_modes")]
    pub mode: Vec<Mode>,
    /// `0` skips Monte Carlo.
    #[serde(default)]
    pub trials: Vec<u64>,
    pub seed: u64,
}

fn default_m() -> Vec<usize> {
    vec![2]
}

fn default_modes() -> Vec<Mode> {
    vec![Mode::Quantum, Mode::Classical]
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: SweepConfig = toml::from_str(text).map_err(|e| Error::Parse(format!("sweep config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        let bad = |key: &str, why: &str| Err(Error::Parse(format!("sweep config key `{key}`: {why}")));
        if self.n.is_empty() {
            return bad("n", "must list at least one ring size");
        }
        if let Some(n) = self.n.iter().find(|&&n| n < 3) {
            return bad("n", &format!("ring size {n} is below 3"));
        }
        if self.m.is_empty() {
            return bad("m", "must list at least one party count");
        }
        if let Some(m) = self.m.iter().find(|&&m| m < 2) {
            return bad("m", &format!("party count {m} is below 2"));
        }
        if self.mode.is_empty() {
            return bad("mode", "must list at least one mode");
        }
        Ok(())
    }

    fn trial_axis(&self) -> Vec<u64> {
        if self.trials.is_empty() {
            vec![0]
        } else {
            self.trials.clone()
        }
    }
}

/// Column order of the sweep CSV.
pub const SWEEP_COLUMNS: [&str; 16] = [
    "n",
    "m",
    "mode",
    "trials",
    "seed",
    "quantum_worst_case",
    "quantum_bound",
    "classical_min_error",
    "classical_min_error_decimal",
    "classical_lower_bound",
    "quantum_beats_classical",
    "chain_exact",
    "chain_union_bound",
    "mc_mean",
    "mc_std_error",
    "mc_within_3_sigma",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepOutput {
    pub config: SweepConfig,
    pub version: String,
    pub reports: Vec<ExperimentReport>,
}

/// Per-link classical strategy for a ring: the searched optimum within the
/// search cap, otherwise the default chain colouring.
fn classical_optimum(ring: Ring) -> (Option<Rational64>, Coloring) {
    match search_optimal(ring, true, SearchLimits::default()) {
        Ok(found) => (Some(found.min_error), found.minimizers[0].clone()),
        Err(_) => (None, default_chain_coloring(ring, SearchLimits::default())),
    }
}

/// Runs every cell of the grid, in the order `n`, `m`, `mode`, `trials`.
pub fn cmd_sweep(config: &SweepConfig) -> Result<SweepOutput> {
    config.validate()?;
    let mut optimum: HashMap<u32, (Option<Rational64>, Coloring)> = HashMap::new();
    let mut reports = Vec::new();
    for &n in &config.n {
        let ring = Ring::new(n)?;
        let (min_error, coloring) = optimum.entry(n).or_insert_with(|| classical_optimum(ring)).clone();
        let worst = worst_case_error(ring);
        for &m in &config.m {
            let spec = make_chain(m, ring, ChainInput::Seeded(config.seed))?;
            for &mode in &config.mode {
                for trials in config.trial_axis() {
                    let mut r = ExperimentReport::new("sweep");
                    r.seed = Some(config.seed);
                    r.param("n", n).param("m", m).param("mode", mode.to_string()).param("trials", trials);
                    r.put("quantum_worst_case", worst, "quantum::worst_case_error")
                        .put("quantum_bound", worst_case_bound(ring), "quantum::worst_case_bound")
                        .put_rational("classical_lower_bound", classical_lower_bound(ring), "classical::classical_lower_bound");
                    match min_error {
                        Some(e) => {
                            r.put_rational("classical_min_error", e, "classical::search_optimal")
                                .put("classical_min_error_decimal", to_f64(e), "classical::search_optimal")
                                .put("quantum_beats_classical", worst < to_f64(e), "classical::search_optimal");
                        }
                        None => {
                            r.put("classical_min_error", Value::Null, "classical::search_optimal")
                                .put("classical_min_error_decimal", Value::Null, "classical::search_optimal")
                                .put("quantum_beats_classical", Value::Null, "classical::search_optimal");
                        }
                    }
                    let chain_mode = match mode {
                        Mode::Quantum => ChainMode::Quantum,
                        Mode::Classical => ChainMode::Classical(&coloring),
                    };
                    let (exact, union) = match mode {
                        Mode::Quantum => {
                            let q = quantum_chain_error(&spec);
                            (q.exact, q.union_bound)
                        }
                        Mode::Classical => {
                            let cl = classical_chain_error(&spec, &coloring)?;
                            (cl.exact, cl.union_sum)
                        }
                    };
                    r.put("chain_exact", exact, "chain::exact_chain_error")
                        .put("chain_union_bound", union, "chain::exact_chain_error");
                    if trials > 0 {
                        let est = simulate_chain(&spec, chain_mode, trials, config.seed)?;
                        r.put("mc_mean", est.mean, "chain::simulate_chain")
                            .put("mc_std_error", est.std_error, "chain::simulate_chain")
                            .put("mc_within_3_sigma", est.agrees_with(exact, 3.0), "quantum::McEstimate::agrees_with");
                    } else {
                        for key in ["mc_mean", "mc_std_error", "mc_within_3_sigma"] {
                            r.put(key, Value::Null, "chain::simulate_chain");
                        }
                    }
                    reports.push(r);
                }
            }
        }
    }
    Ok(SweepOutput {
        config: config.clone(),
        version: VERSION.to_string(),
        reports,
    })
}

impl SweepOutput {
    /// One CSV row per report; a cell is the JSON value's text with string
    /// quotes removed and `null` left empty.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Invalid(format!("csv: {e}"));
        let mut w = csv::Writer::from_writer(out);
        w.write_record(SWEEP_COLUMNS).map_err(io)?;
        for r in &self.reports {
            let row = SWEEP_COLUMNS.iter().map(|&col| match col {
                "seed" => r.seed.map(|s| s.to_string()).unwrap_or_default(),
                _ => r
                    .parameters
                    .get(col)
                    .or_else(|| r.value(col))
                    .map(plain)
                    .unwrap_or_default(),
            });
            w.write_record(row).map_err(io)?;
        }
        w.flush().map_err(|e| Error::Invalid(format!("csv: {e}")))?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep output serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(r: &ExperimentReport, key: &str) -> f64 {
        r.value(key).and_then(Value::as_f64).unwrap()
    }

    #[test]
    fn rationals_render_as_fractions() {
        assert_eq!(render_rational(Rational64::new(2, 12)), "1/6");
        assert_eq!(render_rational(Rational64::from_integer(0)), "0/1");
    }

    #[test]
    fn two_party_report() {
        let r = cmd_two_party(3, None, None).unwrap();
        assert!((num(&r, "worst_case_error") - 0.25).abs() < 1e-12);
        assert!((num(&r, "worst_case_bound") - 0.274156).abs() < 1e-6);
        assert!(r.value("mc_mean").is_none());
        assert!(cmd_two_party(2, None, None).is_err());
        assert!(matches!(cmd_two_party(4, Some((2, 0)), None), Err(Error::PromiseViolated { .. })));
        let mc = Some(MonteCarlo { trials: 1000, seed: 5 });
        assert_eq!(cmd_two_party(5, None, mc).unwrap().to_json(), cmd_two_party(5, None, mc).unwrap().to_json());
    }

    #[test]
    fn search_report() {
        let (r, _) = cmd_classical_search(3, true, SearchLimits::default()).unwrap();
        assert_eq!(r.value("min_error").unwrap(), "2/9");
        assert_eq!(r.value("lower_bound").unwrap(), "1/9");
        assert_eq!(r.value("bound_holds").unwrap(), true);
        let (full, _) = cmd_classical_search(3, false, SearchLimits::default()).unwrap();
        assert_eq!(full.value("min_error"), r.value("min_error"));
        assert!(matches!(
            cmd_classical_search(13, true, SearchLimits::default()),
            Err(Error::ResourceCap(_))
        ));
    }

    #[test]
    fn trit_report() {
        let r = cmd_trit(8).unwrap();
        assert_eq!(r.value("error").unwrap(), "0/1");
        assert_eq!(r.value("expected_code_length").unwrap(), "13/8");
        assert_eq!(num(&r, "expected_code_length_decimal"), 1.625);
    }

    #[test]
    fn minimax_report() {
        let (r, converged) = cmd_minimax(3, MinimaxOptions::default()).unwrap();
        assert!(converged);
        assert!(num(&r, "gap") <= 1e-3);
        assert!(num(&r, "lower") <= num(&r, "upper"));
        assert!(matches!(cmd_minimax(6, MinimaxOptions::default()), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn chain_report_reduces_to_two_party() {
        let req = ChainRequest {
            source: ChainSource::Generated { m: 2, n: 5, seed: 4 },
            mode: Mode::Quantum,
            coloring: None,
            mc: None,
        };
        let chain = cmd_chain(&req).unwrap();
        let spec = make_chain(2, Ring::new(5).unwrap(), ChainInput::Seeded(4)).unwrap();
        let link = &spec.links()[0];
        let two = cmd_two_party(5, Some((link.x().value(), link.y().value())), None).unwrap();
        assert!((num(&chain, "exact") - num(&two, "link_error")).abs() < 1e-15);
        assert_eq!(num(&chain, "union_bound"), num(&chain, "exact"));
    }

    #[test]
    fn sweep_config_errors_name_the_key() {
        let err = SweepConfig::from_toml("n = [3]\nseed = 1\nbogus = 2\n").unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = SweepConfig::from_toml("n = [2, 3]\nseed = 1\n").unwrap_err();
        assert!(err.to_string().contains("`n`"), "{err}");
        let err = SweepConfig::from_toml("n = [3]\nseed = 1\nmode = [\"psychic\"]\n").unwrap_err();
        assert!(err.to_string().contains("mode"), "{err}");
        let err = SweepConfig::from_toml("n = [3]\n").unwrap_err();
        assert!(err.to_string().contains("seed"), "{err}");
    }

    #[test]
    fn sweep_csv_matches_json() {
        let config = SweepConfig::from_toml("n = [3, 4]\nm = [2, 5]\nmode = [\"quantum\", \"classical\"]\ntrials = [0, 500]\nseed = 9\n").unwrap();
        let out = cmd_sweep(&config).unwrap();
        assert_eq!(out.reports.len(), 16);
        let mut buf = Vec::new();
        out.write_csv(&mut buf).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
        assert_eq!(rows.len(), out.reports.len());
        for (row, report) in rows.iter().zip(&out.reports) {
            for (i, col) in SWEEP_COLUMNS.iter().enumerate() {
                let json = match *col {
                    "seed" => report.seed.map(Value::from).unwrap(),
                    _ => report.parameters.get(*col).or_else(|| report.value(col)).cloned().unwrap(),
                };
                match json {
                    Value::Null => assert_eq!(&row[i], ""),
                    Value::Number(n) => assert_eq!(row[i].parse::<f64>().unwrap(), n.as_f64().unwrap(), "{col}"),
                    Value::String(s) => assert_eq!(&row[i], s),
                    Value::Bool(b) => assert_eq!(row[i].parse::<bool>().unwrap(), b),
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }
}
