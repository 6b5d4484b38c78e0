use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use uba_core::constructions::{build as construct, Algorithm};
use uba_core::error::ConstructionError;
use uba_core::harness::{self, letters, CampaignParams, CampaignRecord, CheckConfig};
use uba_core::io::{parse_awa, parse_hoa, print_hoa, stats_json, AwaDocument};
use uba_core::semantics::{distance_profile, preorders_from_distances, unique_sequence};
use uba_core::verification::{
    ambiguity_check_limited, bounded_language_diff, enumerate_lasso_macroruns, DiffVerdict,
    DEFAULT_RUN_LIMIT,
};
use uba_core::{Awa, LassoWord, Nba};

use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_awa(path: &Path) -> Result<AwaDocument> {
    parse_awa(&read_input(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn parse_lasso(text: &str, a: &Awa) -> Result<LassoWord> {
    LassoWord::parse(text, a.alphabet())
        .map_err(|e| CliError::Usage(format!("lasso `{text}`: {e}")))
}

fn build_nba(a: &Awa, algo: Algorithm, limit: usize) -> Result<Nba<String>> {
    construct(a, algo, limit).map_err(|e| match e {
        ConstructionError::TooLarge(_) => CliError::Resource(e.to_string()),
        _ => CliError::Usage(format!("{algo}: {e}")),
    })
}

fn write_output(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn build(
    algo: Algorithm,
    input: &Path,
    output: Option<&Path>,
    stats: bool,
    names: bool,
    state_limit: usize,
) -> Result<()> {
    let doc = read_awa(input)?;
    let b = build_nba(&doc.awa, algo, state_limit)?;
    let hoa = print_hoa(&b, names);
    match output {
        Some(path) => {
            write_output(path, &hoa)?;
            if stats {
                println!("{}", stats_json(&b, &doc.awa));
            }
        }
        None => {
            print!("{hoa}");
            if stats {
                eprintln!("{}", stats_json(&b, &doc.awa));
            }
        }
    }
    Ok(())
}

pub fn eval(input: &Path, state: Option<usize>, lasso: &str) -> Result<()> {
    let a = read_awa(input)?.awa;
    let q = state.unwrap_or(a.initial());
    if q >= a.state_count() {
        return Err(CliError::Usage(format!(
            "state {q} out of range, automaton has {} states",
            a.state_count()
        )));
    }
    let w = parse_lasso(lasso, &a)?;
    let verdict = if uba_core::semantics::awa_accepts(&a, q, &w) {
        "accept"
    } else {
        "reject"
    };
    println!("{verdict}");
    Ok(())
}

pub fn trace(input: &Path, lasso: &str, state_limit: usize) -> Result<()> {
    let a = read_awa(input)?.awa;
    let w = parse_lasso(lasso, &a)?;
    let alphabet = a.alphabet();
    let analysis = a
        .scc_analysis()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let rw = unique_sequence(&a, &w);
    let d = distance_profile(&a, &w, &rw).map_err(|e| CliError::Check(e.to_string()))?;
    let po = preorders_from_distances(&analysis, &d);
    println!(
        "lasso {} (period starts at position {})",
        w.display(alphabet),
        w.prefix().len()
    );
    for i in 0..w.len() {
        let dist: Vec<String> = d.get(i).iter().map(|(q, k)| format!("{q}:{k}")).collect();
        let orders: Vec<String> = po.get(i).iter().map(ToString::to_string).collect();
        println!(
            "{i:>3} {:<4} R={}  d={{{}}}  preorders=[{}]",
            alphabet[w.letter(i)],
            rw.get(i),
            dist.join(", "),
            orders.join(", ")
        );
    }
    if !rw.get(0).contains(a.initial()) {
        println!("rejected: no accepting run");
        return Ok(());
    }
    let b = build_nba(&a, Algorithm::Auto, state_limit)?;
    let runs = enumerate_lasso_macroruns(&b, &w, true, DEFAULT_RUN_LIMIT)
        .map_err(|e| CliError::Check(format!("run enumeration: {e}")))?;
    let [run] = runs.as_slice() else {
        return Err(CliError::Check(format!(
            "expected exactly one accepting run, found {}",
            runs.len()
        )));
    };
    let resolved = Algorithm::Auto.resolve(&a).expect("weak after parsing");
    let horizon = run.horizon(&w);
    println!(
        "accepting run of {resolved} ({} macrostates):",
        b.state_count()
    );
    for t in 0..=horizon {
        let s = run.state_at(t);
        let mark = if b.is_accepting(s) { "*" } else { " " };
        let letter = if t < horizon {
            alphabet[w.at(t)].as_str()
        } else {
            ""
        };
        println!("{t:>3} {mark} {:<6} {}", s, b.payload(s));
        if !letter.is_empty() {
            println!("      --{letter}-->");
        }
    }
    println!(
        "(repeats from step {})",
        run.stem.len().max(w.prefix().len())
    );
    Ok(())
}

pub fn check_unambiguous(
    input: &Path,
    algo: Algorithm,
    state_limit: usize,
    product_limit: usize,
) -> Result<()> {
    let is_hoa = input.extension().is_some_and(|e| e == "hoa");
    let b = if is_hoa {
        parse_hoa(&read_input(input)?)
            .map_err(|e| CliError::Usage(format!("{}: {e}", input.display())))?
    } else {
        build_nba(&read_awa(input)?.awa, algo, state_limit)?
    };
    match ambiguity_check_limited(&b, product_limit) {
        Err(e) => Err(CliError::Resource(e.to_string())),
        Ok(None) => {
            println!("unambiguous ({} states)", b.state_count());
            Ok(())
        }
        Ok(Some(wit)) => {
            println!("ambiguous on {}", wit.word.display(b.alphabet()));
            println!("  run 1: {}", render_run(&wit.run1.stem, &wit.run1.cycle));
            println!("  run 2: {}", render_run(&wit.run2.stem, &wit.run2.cycle));
            Err(CliError::Check("automaton is ambiguous".into()))
        }
    }
}

fn render_run(stem: &[usize], cycle: &[usize]) -> String {
    let join = |xs: &[usize]| {
        xs.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{} ({})^w", join(stem), join(cycle))
}

pub fn diff(
    input: &Path,
    algo: Algorithm,
    max_prefix: usize,
    max_period: usize,
    state_limit: usize,
    json: bool,
) -> Result<()> {
    let a = read_awa(input)?.awa;
    let b = build_nba(&a, algo, state_limit)?;
    let report = bounded_language_diff(&a, &b, max_prefix, max_period);
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report serializes")
        );
    }
    match &report.verdict {
        DiffVerdict::EquivalentOnGrid => {
            if !json {
                println!(
                    "equivalent on {} lassos (|u| <= {max_prefix}, |v| <= {max_period})",
                    report.lassos
                );
            }
            Ok(())
        }
        DiffVerdict::Witness { word, accepted_by } => {
            let side = serde_json::to_value(accepted_by).expect("side serializes");
            let msg = format!(
                "languages differ on {}: only the {} accepts",
                word.display(a.alphabet()),
                side.as_str().unwrap_or("?")
            );
            if !json {
                println!("{msg}");
            }
            Err(CliError::Check(msg))
        }
    }
}

pub struct CampaignArgs {
    pub seed: u64,
    pub count: usize,
    pub max_states: usize,
    pub alphabet_size: usize,
    pub algos: Vec<Algorithm>,
    pub samples: usize,
    pub max_prefix: usize,
    pub max_period: usize,
    pub state_limit: usize,
    pub out: Option<PathBuf>,
    pub artifacts: Option<PathBuf>,
    pub expect_brv_ambiguity: bool,
}

pub fn campaign(args: CampaignArgs) -> Result<()> {
    if args.expect_brv_ambiguity && !args.algos.contains(&Algorithm::Brv) {
        return Err(CliError::Usage(
            "--expect-brv-ambiguity needs brv among --algos".into(),
        ));
    }
    let params = CampaignParams {
        seed: args.seed,
        count: args.count,
        max_states: args.max_states,
        alphabet_size: args.alphabet_size,
        config: CheckConfig {
            algorithms: args.algos,
            max_prefix: args.max_prefix,
            max_period: args.max_period,
            samples: args.samples,
            state_limit: args.state_limit,
            ..CheckConfig::default()
        },
    };
    let report = harness::campaign(&params);
    println!(
        "records {}, failed {}, resource-limited {}, single-SCC {}, very weak {}, BRV ambiguous {}",
        report.records.len(),
        report.failed_records,
        report.resource_limited,
        report.single_scc,
        report.very_weak,
        report.brv_ambiguous
    );
    let alphabet = letters(args.alphabet_size);
    for r in report.failing() {
        print_failures(r, &alphabet);
    }
    if let Some(out) = &args.out {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        write_output(out, &json)?;
    }
    if let Some(dir) = &args.artifacts {
        let written = harness::write_artifacts(&report, dir)
            .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
        for d in written {
            println!("artifact {}", d.display());
        }
    }
    if !report.passed {
        return Err(CliError::Check(format!(
            "{} records failed",
            report.failed_records
        )));
    }
    if args.expect_brv_ambiguity && report.brv_ambiguous == 0 {
        return Err(CliError::Check("no ambiguous BRV result found".into()));
    }
    Ok(())
}

fn print_failures(r: &CampaignRecord, alphabet: &[String]) {
    for f in &r.failures {
        match &f.lasso {
            Some(w) if w.letters_below(alphabet.len()) => println!(
                "record {}: {}: {} on {}",
                r.index,
                f.check,
                f.detail,
                w.display(alphabet)
            ),
            _ => println!("record {}: {}: {}", r.index, f.check, f.detail),
        }
    }
}

pub fn replay(dir: &Path) -> Result<()> {
    let outcome =
        harness::replay(dir).map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?;
    let verdict = |r: &CampaignRecord| if r.passed() { "pass" } else { "fail" };
    println!("original: {}", verdict(&outcome.original));
    println!("replayed: {}", verdict(&outcome.replayed));
    if let Some(regen) = outcome.regenerates {
        println!(
            "generator reproduces input: {}",
            if regen { "yes" } else { "no" }
        );
    }
    println!(
        "same failures: {}",
        if outcome.reproduces() { "yes" } else { "no" }
    );
    let alphabet = parse_awa(&outcome.replayed.awa)
        .map(|d| d.awa.alphabet().to_vec())
        .unwrap_or_default();
    print_failures(&outcome.replayed, &alphabet);
    if outcome.replayed.passed() {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "record {} fails on replay",
            outcome.replayed.index
        )))
    }
}
