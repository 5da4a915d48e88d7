//! Command pipelines behind the `torich` binary.
//!
//! [`run`] writes every artifact to the given writer and returns the exit
//! status: 0 when all checks pass, 1 when a check finds a counterexample,
//! 2 for invalid input.

use std::io::Write;

use anyhow::Context;
use rayon::prelude::*;
use serde::Serialize;

use toric_richardson::classify::{
    all_intervals, classify_batch, classify_toric, sample_intervals, sample_toric_intervals,
    ToricVerdict,
};
use toric_richardson::families::{
    even_family, hypercube_perms, verify_even_family, verify_hypercube,
};
use toric_richardson::geometry::face_lattice;
use toric_richardson::io::{
    hasse_dot, plabic_dot, polytope_to_off, wiring_dot, MinorJson, PolytopeJson,
};
use toric_richardson::moment::{moment_polytope, structure_report};
use toric_richardson::mrgraph::{default_reduced_word, flag_minor, ReducedWord};
use toric_richardson::perm::interval;
use toric_richardson::plabic::{
    family_star_graph, hypercube_graph, positroid_from_graph, PlabicGraph,
};
use toric_richardson::positroid::constituents;
use toric_richardson::{Error, Permutation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Output {
    Json,
    Dot,
    Off,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Even,
    Hypercube,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    /// `all_tests` keeps the individual predicate results in the verdict.
    Classify {
        all_tests: bool,
    },
    /// Every comparable pair of `S_n`, one verdict per line.
    ClassifyAll {
        all_tests: bool,
    },
    Polytope,
    Summands,
    Plabic {
        family: FamilyKind,
        k: usize,
    },
    Family {
        family: FamilyKind,
        k: Option<usize>,
        verify: bool,
    },
    VerifyAll,
}

/// Parsed and validated command line. `v`, `w` and `word` are raw strings
/// until [`run`] validates them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub mode: Mode,
    pub n: Option<usize>,
    pub v: Option<String>,
    pub w: Option<String>,
    pub word: Option<String>,
    pub output: Output,
    pub seed: u64,
}

/// Failures that map to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

/// Library errors caused by bad input are usage errors; the rest signal a
/// failed mathematical check.
fn classify_error(e: Error) -> anyhow::Error {
    match e {
        Error::InvalidPermutation(_)
        | Error::SizeMismatch { .. }
        | Error::NonemptyIntervalRequired { .. }
        | Error::InvalidWord(_)
        | Error::NotToric { .. }
        | Error::FaceLatticeGate { .. }
        | Error::InvalidParameter(_) => usage(e.to_string()),
        other => anyhow::Error::new(other),
    }
}

fn parse_pair(cfg: &RunConfig) -> anyhow::Result<(Permutation, Permutation)> {
    let v = cfg.v.as_deref().ok_or_else(|| usage("--v is required"))?;
    let w = cfg.w.as_deref().ok_or_else(|| usage("--w is required"))?;
    let v = Permutation::parse(v).map_err(classify_error)?;
    let w = Permutation::parse(w).map_err(classify_error)?;
    if v.n() != w.n() {
        return Err(classify_error(Error::SizeMismatch {
            left: v.n(),
            right: w.n(),
        }));
    }
    Ok((v, w))
}

fn parse_word(cfg: &RunConfig, w: &Permutation) -> anyhow::Result<ReducedWord> {
    match &cfg.word {
        Some(text) => ReducedWord::parse(w, text).map_err(classify_error),
        None => Ok(default_reduced_word(w)),
    }
}

fn require_n(cfg: &RunConfig, allowed: std::ops::RangeInclusive<usize>) -> anyhow::Result<usize> {
    let n = cfg.n.ok_or_else(|| usage("--n is required"))?;
    if !allowed.contains(&n) {
        return Err(usage(format!(
            "n must lie in {}..={}, got {n}",
            allowed.start(),
            allowed.end()
        )));
    }
    Ok(n)
}

fn json(out: &mut dyn Write, value: &impl Serialize) -> anyhow::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn unsupported(output: Output, mode: &str) -> anyhow::Error {
    usage(format!("--output {output:?} is not available for {mode}").to_lowercase())
}

/// Runs one command; returns the exit status. Usage errors are reported on
/// `err` with status 2.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cfg, out) {
        Ok(status) => status,
        Err(e) if e.is::<UsageError>() => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "check failed: {e:#}");
            EXIT_COUNTEREXAMPLE
        }
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    match &cfg.mode {
        Mode::Classify { all_tests } => classify_one(cfg, *all_tests, out),
        Mode::ClassifyAll { all_tests } => classify_all(cfg, *all_tests, out),
        Mode::Polytope => polytope(cfg, out),
        Mode::Summands => summands(cfg, out),
        Mode::Plabic { family, k } => plabic(cfg, *family, *k, out),
        Mode::Family { family, k, verify } => family_cmd(cfg, *family, *k, *verify, out),
        Mode::VerifyAll => verify_all(cfg, out),
    }
}

const PREDICATE_KEYS: [&str; 4] = [
    "by_two_crown",
    "by_lattice",
    "by_interval_poset_lattice",
    "by_r_poly",
];

fn verdict_value(verdict: &ToricVerdict, all_tests: bool) -> serde_json::Value {
    let mut value = serde_json::to_value(verdict).expect("verdicts serialize");
    if !all_tests {
        let map = value.as_object_mut().expect("verdict is an object");
        for key in PREDICATE_KEYS {
            map.remove(key);
        }
    }
    value
}

fn classify_one(cfg: &RunConfig, all_tests: bool, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (v, w) = parse_pair(cfg)?;
    let verdict = classify_toric(&v, &w).map_err(classify_error)?;
    match cfg.output {
        Output::Json => json(out, &verdict_value(&verdict, all_tests))?,
        Output::Text => writeln!(out, "[{v},{w}] d={} toric={}", verdict.d, verdict.is_toric)?,
        Output::Dot => write!(
            out,
            "{}",
            hasse_dot(&interval(&v, &w).map_err(classify_error)?)
        )?,
        other => return Err(unsupported(other, "classify")),
    }
    Ok(EXIT_OK)
}

fn classify_all(cfg: &RunConfig, all_tests: bool, out: &mut dyn Write) -> anyhow::Result<i32> {
    let n = require_n(cfg, 1..=5)?;
    let pairs = all_intervals(n);
    let verdicts = classify_batch(&pairs)
        .into_iter()
        .collect::<Result<Vec<_>, _>>()
        .map_err(classify_error)?;
    match cfg.output {
        Output::Json => {
            for v in &verdicts {
                serde_json::to_writer(&mut *out, &verdict_value(v, all_tests))?;
                writeln!(out)?;
            }
        }
        Output::Text => {
            for v in &verdicts {
                writeln!(out, "{} {} d={} toric={}", v.v, v.w, v.d, v.is_toric)?;
            }
            let toric = verdicts.iter().filter(|v| v.is_toric).count();
            writeln!(out, "{} intervals, {toric} toric", verdicts.len())?;
        }
        other => return Err(unsupported(other, "classify --enumerate")),
    }
    Ok(EXIT_OK)
}

fn polytope(cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (v, w) = parse_pair(cfg)?;
    let word = parse_word(cfg, &w)?;
    let mp = moment_polytope(&v, &w, &word).map_err(classify_error)?;
    match cfg.output {
        Output::Json => json(
            out,
            &PolytopeJson::new(&mp.polytope).map_err(classify_error)?,
        )?,
        Output::Off => write!(
            out,
            "{}",
            polytope_to_off(&mp.polytope).map_err(classify_error)?
        )?,
        Output::Dot => write!(out, "{}", hasse_dot(&mp.interval))?,
        Output::Text => {
            writeln!(
                out,
                "interval [{v},{w}], word {:?}, d = {}",
                word.letters,
                mp.graph.d()
            )?;
            let f = face_lattice(&mp.polytope).map(|l| l.f_vector()).ok();
            writeln!(
                out,
                "vertices {}, facets {}, f-vector {f:?}",
                mp.polytope.num_vertices(),
                mp.polytope.facets().len()
            )?;
            for (u, x) in mp.interval.elements().zip(&mp.points) {
                writeln!(out, "X_{u} = {x:?}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct SummandJson {
    k: usize,
    constituent: toric_richardson::positroid::Constituent,
    labels: Vec<SummandLabel>,
    polytope: PolytopeJson,
}

#[derive(Serialize)]
struct SummandLabel {
    basis: toric_richardson::Subset,
    vector: Vec<i64>,
}

#[derive(Serialize)]
struct SummandsJson {
    v: Permutation,
    w: Permutation,
    word: Vec<usize>,
    bridges: Vec<usize>,
    summands: Vec<SummandJson>,
    minors: Vec<MinorJson>,
}

fn summands(cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (v, w) = parse_pair(cfg)?;
    let word = parse_word(cfg, &w)?;
    let mp = moment_polytope(&v, &w, &word).map_err(classify_error)?;
    match cfg.output {
        Output::Json => {
            let cons = constituents(&mp.interval);
            let summands = mp
                .summands
                .iter()
                .zip(cons)
                .map(|(s, c)| SummandJson {
                    k: s.k,
                    constituent: c,
                    labels: s
                        .labels
                        .iter()
                        .map(|(b, m)| SummandLabel {
                            basis: *b,
                            vector: m.clone(),
                        })
                        .collect(),
                    polytope: PolytopeJson::without_faces(&s.polytope),
                })
                .collect();
            let minors = mp
                .summands
                .iter()
                .flat_map(|s| s.labels.keys())
                .map(|&b| MinorJson::new(&mp.graph, b, &flag_minor(&mp.graph, b)))
                .collect();
            let doc = SummandsJson {
                v: v.clone(),
                w: w.clone(),
                word: word.letters.clone(),
                bridges: mp.graph.pds.jcirc.clone(),
                summands,
                minors,
            };
            json(out, &doc)?;
        }
        Output::Text => {
            writeln!(out, "bridges at word positions {:?}", mp.graph.pds.jcirc)?;
            for s in &mp.summands {
                let items: Vec<String> = s
                    .labels
                    .iter()
                    .map(|(b, m)| {
                        format!("{}[{b}]", m.iter().map(i64::to_string).collect::<String>())
                    })
                    .collect();
                writeln!(out, "k={}: {}", s.k, items.join(" "))?;
            }
        }
        Output::Dot => write!(out, "{}", wiring_dot(&mp.graph))?,
        other => return Err(unsupported(other, "summands")),
    }
    Ok(EXIT_OK)
}

fn family_graph(cfg: &RunConfig, family: FamilyKind, k: usize) -> anyhow::Result<PlabicGraph> {
    match family {
        FamilyKind::Even => {
            let n = require_n(cfg, 4..=64)?;
            family_star_graph(n, k).map_err(classify_error)
        }
        FamilyKind::Hypercube => {
            let n = require_n(cfg, 1..=6)?;
            hypercube_graph(n, k).map_err(classify_error)
        }
    }
}

#[derive(Serialize)]
struct PlabicJson {
    graph: PlabicGraph,
    is_forest: bool,
    positroid: Option<Vec<toric_richardson::Subset>>,
}

fn plabic(
    cfg: &RunConfig,
    family: FamilyKind,
    k: usize,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    let graph = family_graph(cfg, family, k)?;
    match cfg.output {
        Output::Dot => write!(out, "{}", plabic_dot(&graph))?,
        Output::Json | Output::Text => {
            // source sets are listed only while they stay small
            let positroid = (graph.boundary <= 16)
                .then(|| positroid_from_graph(&graph).map(|s| s.into_iter().collect::<Vec<_>>()))
                .transpose()
                .map_err(classify_error)?;
            let doc = PlabicJson {
                is_forest: graph.is_planar_forest(),
                graph,
                positroid,
            };
            if cfg.output == Output::Json {
                json(out, &doc)?;
            } else {
                writeln!(
                    out,
                    "boundary {}, internal {}, edges {}",
                    doc.graph.boundary,
                    doc.graph.colors.len(),
                    doc.graph.edges.len()
                )?;
                writeln!(out, "planar forest: {}", doc.is_forest)?;
                if let Some(p) = &doc.positroid {
                    let labels: Vec<String> = p.iter().map(ToString::to_string).collect();
                    writeln!(out, "positroid ({}): {}", p.len(), labels.join(" "))?;
                }
            }
        }
        other => return Err(unsupported(other, "plabic")),
    }
    Ok(EXIT_OK)
}

fn family_cmd(
    cfg: &RunConfig,
    family: FamilyKind,
    k: Option<usize>,
    verify: bool,
    out: &mut dyn Write,
) -> anyhow::Result<i32> {
    if !matches!(cfg.output, Output::Json | Output::Text) {
        return Err(unsupported(cfg.output, "family"));
    }
    match family {
        FamilyKind::Even => {
            let n = require_n(cfg, 4..=8)?;
            if !verify {
                let fam = even_family(n).map_err(classify_error)?;
                match cfg.output {
                    Output::Json => json(out, &fam)?,
                    _ => writeln!(
                        out,
                        "v={} w={} word={:?} d={}",
                        fam.v,
                        fam.w,
                        fam.word.letters,
                        fam.d()
                    )?,
                }
                return Ok(EXIT_OK);
            }
            let report = verify_even_family(n, 20, cfg.seed).map_err(classify_error)?;
            match cfg.output {
                Output::Json => json(out, &report)?,
                _ => {
                    writeln!(
                        out,
                        "even family n={n}: v={} w={} d={}",
                        report.v, report.w, report.d
                    )?;
                    writeln!(out, "minors checked: {}", report.minors_checked)?;
                    for s in &report.structures {
                        writeln!(
                            out,
                            "k={} {}: f-vector {:?}",
                            s.k, s.shape, s.positroid_f_vector
                        )?;
                    }
                    writeln!(out, "z relations at {} points", report.z_points)?;
                    for f in &report.failures {
                        writeln!(out, "FAIL {f}")?;
                    }
                    writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" })?;
                }
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
        FamilyKind::Hypercube => {
            let n = require_n(cfg, 1..=6)?;
            if !verify {
                let fam = hypercube_perms(n).map_err(classify_error)?;
                match cfg.output {
                    Output::Json => json(out, &fam)?,
                    _ => writeln!(out, "v={} w={} rank={}", fam.v, fam.w, fam.rank())?,
                }
                return Ok(EXIT_OK);
            }
            if n > 4 {
                return Err(usage("hypercube verification is limited to n <= 4"));
            }
            let report = verify_hypercube(n, k, if n <= 3 { 1000 } else { 0 }, cfg.seed)
                .map_err(classify_error)?;
            match cfg.output {
                Output::Json => json(out, &report)?,
                _ => {
                    writeln!(out, "hypercube n={n}: v={} w={}", report.v, report.w)?;
                    if let Some(size) = report.interval_size {
                        writeln!(
                            out,
                            "interval size {size}, rank sizes {:?}",
                            report.rank_sizes.clone().unwrap_or_default()
                        )?;
                    }
                    writeln!(out, "bases checked: {}", report.bases_checked)?;
                    for f in &report.failures {
                        writeln!(out, "FAIL {f}")?;
                    }
                    writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" })?;
                }
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_COUNTEREXAMPLE
            })
        }
    }
}

#[derive(Debug, Serialize)]
struct VerifySummary {
    n: usize,
    seed: u64,
    classified: usize,
    toric: usize,
    structure_checked: usize,
    failures: Vec<String>,
}

fn verify_all(cfg: &RunConfig, out: &mut dyn Write) -> anyhow::Result<i32> {
    let n = require_n(cfg, 2..=6)?;
    let exhaustive = n <= 4;
    let pairs = if exhaustive {
        all_intervals(n)
    } else {
        sample_intervals(n, 500, cfg.seed)
    };
    let mut failures = Vec::new();
    let mut toric_pairs = Vec::new();
    for (r, (v, w)) in classify_batch(&pairs).into_iter().zip(&pairs) {
        match r {
            Ok(verdict) if verdict.is_toric => toric_pairs.push((v.clone(), w.clone())),
            Ok(_) => {}
            Err(e) => failures.push(format!("[{v},{w}]: {e}")),
        }
    }
    let toric = toric_pairs.len();
    let structure_set = if exhaustive {
        toric_pairs
    } else {
        sample_toric_intervals(n, 25, 2, cfg.seed)
    };
    let mut structure_failures: Vec<String> = structure_set
        .par_iter()
        .filter_map(|(v, w)| {
            let mp = match moment_polytope(v, w, &default_reduced_word(w)) {
                Ok(mp) => mp,
                Err(e) => return Some(format!("[{v},{w}]: {e}")),
            };
            structure_report(&mp)
                .err()
                .map(|e| format!("[{v},{w}]: {e}"))
        })
        .collect();
    structure_failures.sort();
    failures.extend(structure_failures);
    let summary = VerifySummary {
        n,
        seed: cfg.seed,
        classified: pairs.len(),
        toric,
        structure_checked: structure_set.len(),
        failures,
    };
    match cfg.output {
        Output::Json => json(out, &summary)?,
        Output::Text => {
            writeln!(
                out,
                "S_{n}: {} intervals classified, {} toric",
                summary.classified, summary.toric
            )?;
            writeln!(
                out,
                "structure checks on {} toric intervals",
                summary.structure_checked
            )?;
            for f in &summary.failures {
                writeln!(out, "FAIL {f}")?;
            }
            writeln!(
                out,
                "{}",
                if summary.failures.is_empty() {
                    "all checks pass"
                } else {
                    "FAILURES FOUND"
                }
            )?;
        }
        other => return Err(unsupported(other, "verify-all")),
    }
    out.flush().context("flushing output")?;
    Ok(if summary.failures.is_empty() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(mode: Mode, v: &str, w: &str, output: Output) -> RunConfig {
        RunConfig {
            mode,
            n: None,
            v: Some(v.into()),
            w: Some(w.into()),
            word: None,
            output,
            seed: 0,
        }
    }

    fn capture(c: &RunConfig) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(c, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classify_text() {
        let (code, out, _) = capture(&cfg(
            Mode::Classify { all_tests: false },
            "2143",
            "4231",
            Output::Text,
        ));
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "[2143,4231] d=3 toric=true\n");
    }

    #[test]
    fn predicates_only_with_all_tests() {
        let verdict = classify_toric(
            &Permutation::parse("1324").unwrap(),
            &Permutation::parse("4231").unwrap(),
        )
        .unwrap();
        assert!(verdict_value(&verdict, false).get("by_r_poly").is_none());
        assert_eq!(verdict_value(&verdict, true)["by_r_poly"], true);
    }

    #[test]
    fn not_toric_is_a_usage_error() {
        let (code, out, err) = capture(&cfg(Mode::Polytope, "123", "321", Output::Json));
        assert_eq!(code, EXIT_USAGE);
        assert!(out.is_empty());
        assert!(err.contains("not toric"));
    }

    #[test]
    fn off_is_rejected_for_classify() {
        let (code, _, err) = capture(&cfg(
            Mode::Classify { all_tests: false },
            "2143",
            "4231",
            Output::Off,
        ));
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("off"));
    }

    #[test]
    fn missing_n_is_a_usage_error() {
        let c = RunConfig {
            mode: Mode::VerifyAll,
            n: None,
            v: None,
            w: None,
            word: None,
            output: Output::Text,
            seed: 0,
        };
        assert_eq!(capture(&c).0, EXIT_USAGE);
    }

    #[test]
    fn counterexamples_map_to_exit_one() {
        let e = classify_error(Error::MultipleCollections("13".into()));
        assert!(!e.is::<UsageError>());
        let e = classify_error(Error::NotToric {
            v: "123".into(),
            w: "321".into(),
        });
        assert!(e.is::<UsageError>());
    }
}
