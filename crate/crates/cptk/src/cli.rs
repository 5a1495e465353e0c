//! Command-line front end. Every run is a pure function of (argv, seed):
//! randomized probes are seeded explicitly and reports serialize with
//! fixed field order.

use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::coarse::{make_window, parse_ratio, SearchBudget};
use crate::dot;
use crate::embed::lamplighter::{lamplighter_compose, LamplighterElement};
use crate::embed::perm_module::{act_word, word_module};
use crate::embed::wobble::embed_f2;
use crate::error::{Error, Result};
use crate::forest::{eliminate_periodic, forest_json, verify_forest};
use crate::free_group::{enumerate_ball, standard_paradox};
use crate::harem::{harem_matching, verify_harem};
use crate::paradox::{
    lift_quotient, paradox_from_json, paradox_to_json, transfer_paradox, verify_paradoxical,
    GroupModel, ModelElement, ParadoxJson, PiecewiseTranslation, PsiMap,
};
use crate::suite::run_suite;
use crate::{EntourageRel, ReducedWord};

#[derive(Debug, Parser)]
#[command(
    name = "cptk",
    version,
    about = "desk-scale coarse-space and paradox toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WindowArgs {
    /// Gallery space: `line`, `grid`, `tree4`, `interval:<k>`, `schreier:<n>`, `halfline`.
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub radius: u64,
}

impl WindowArgs {
    fn build(&self) -> Result<crate::CoarseWindow> {
        make_window(self.space.parse()?, self.radius)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a gallery window and export it.
    Space {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact expansion ratio |E\[F\]|/|F| of an interior point set.
    Expansion {
        #[command(flatten)]
        window: WindowArgs,
        /// Comma-separated point indices.
        #[arg(long, conflicts_with = "ball")]
        set: Option<String>,
        /// Use the n-step ball around the basepoint as F.
        #[arg(long)]
        ball: Option<u32>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search for F with |E\[F\]| ≤ θ|F|.
    Folner {
        #[command(flatten)]
        window: WindowArgs,
        /// Exact rational like 3/2.
        #[arg(long)]
        theta: String,
        #[arg(long)]
        exhaustive_size: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fiber-exact matching along the one-step relation.
    Harem {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Full pipeline: matching, periodic-point elimination, forest check.
    Whyte {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 4)]
        d: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Permutation module of a single word, with optional sweep checks.
    Lemma42 {
        /// Word over a, b, A, B (A = a⁻¹).
        #[arg(long)]
        word: String,
        /// Also check displacement bounds for all words up to this length.
        #[arg(long)]
        check_all_len: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Carry F(a, b) into the bounded permutations of a window.
    Embed {
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Seeded homomorphism and displacement checks for Sym(n) ≀ Z.
    Lamplighter {
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 100)]
        zmax: i64,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build, transfer, and verify paradoxical decompositions.
    Paradox {
        #[command(subcommand)]
        action: ParadoxAction,
    },
    /// Component growth probe plus the longest injective path.
    Asdim {
        #[command(flatten)]
        window: WindowArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a verification suite (`all` for every suite).
    Suite {
        id: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum ParadoxAction {
    /// The classical four-piece decomposition of F₂.
    Build {
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Transfer it to F₂ × C_n along the lifted translations.
    Transfer {
        #[arg(long, default_value_t = 3)]
        n: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a decomposition exhaustively up to a word length.
    Verify {
        /// `f2` or `f2xc<n>`; ignored when `--input` is given with `--model f2`.
        #[arg(long, default_value = "f2")]
        model: String,
        #[arg(long, default_value_t = 8)]
        maxlen: usize,
        /// Read the decomposition from a JSON file instead of rebuilding.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// Entry point used by the binary; returns the process exit code.
/// 0 = success/PASS, 1 = a verification failed (witness printed),
/// 2 = usage or precondition error.
pub fn cmd_dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(pass) => {
            if pass {
                0
            } else {
                1
            }
        }
        // infeasibility is a failed verification carrying its witness,
        // not a usage error
        Err(e @ Error::HaremInfeasible { .. }) => {
            eprintln!("FAIL: {e}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn env_budget() -> SearchBudget {
    let mut budget = SearchBudget::default();
    let read = |name: &str| std::env::var(name).ok().and_then(|v| v.parse().ok());
    if let Some(v) = read("CPTK_BUDGET_EXHAUSTIVE") {
        budget.exhaustive_size = v;
    }
    if let Some(v) = read("CPTK_BUDGET_DFS_NODES") {
        budget.dfs_nodes = v;
    }
    if let Some(v) = read("CPTK_BUDGET_SAMPLES") {
        budget.samples = v;
    }
    budget
}

fn emit(
    output: &OutputArgs,
    text: String,
    jsonv: serde_json::Value,
    dotv: Option<String>,
) -> Result<()> {
    let body = match output.format {
        Format::Text => text,
        Format::Json => serde_json::to_string_pretty(&jsonv)? + "\n",
        Format::Dot => {
            dotv.ok_or_else(|| Error::UnsupportedDot("no DOT view for this report".into()))?
        }
    };
    match &output.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

fn parse_point_set(window: &crate::CoarseWindow, spec: &str) -> Result<BTreeSet<usize>> {
    let mut set = BTreeSet::new();
    for part in spec.split(',') {
        let p: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::BadJson(format!("bad point index `{part}`")))?;
        if p >= window.len() {
            return Err(Error::PointOutOfRange {
                point: p,
                size: window.len(),
            });
        }
        set.insert(p);
    }
    Ok(set)
}

fn run(cli: Cli) -> Result<bool> {
    let budget = env_budget();
    match cli.command {
        Command::Space { window, output } => {
            let w = window.build()?;
            let j = w.to_json();
            emit(
                &output,
                format!("{w}\n"),
                serde_json::to_value(&j)?,
                Some(dot::window_dot(&w)),
            )?;
            Ok(true)
        }
        Command::Expansion {
            window,
            set,
            ball,
            output,
        } => {
            let w = window.build()?;
            let f = match (&set, ball) {
                (Some(spec), _) => parse_point_set(&w, spec)?,
                (None, Some(n)) => w.neighborhood(n, &BTreeSet::from([w.basepoint()])).points,
                (None, None) => BTreeSet::from([w.basepoint()]),
            };
            let ratio = w.expansion_ratio(&f)?;
            let nb = w.neighborhood(1, &f);
            let text = format!(
                "|F| = {}, |E[F]| = {}, ratio = {}/{}\n",
                f.len(),
                nb.points.len(),
                ratio.numer(),
                ratio.denom()
            );
            let jsonv = json!({
                "set": f.iter().collect::<Vec<_>>(),
                "neighborhood_size": nb.points.len(),
                "ratio": [ratio.numer(), ratio.denom()],
                "certified": nb.certified,
            });
            emit(&output, text, jsonv, None)?;
            Ok(true)
        }
        Command::Folner {
            window,
            theta,
            exhaustive_size,
            output,
        } => {
            let w = window.build()?;
            let theta = parse_ratio(&theta)?;
            let mut budget = budget;
            if let Some(size) = exhaustive_size {
                budget.exhaustive_size = size;
            }
            let report = w.folner_search(theta, &budget)?;
            let text = match &report.witness {
                Some(witness) => format!(
                    "witness of size {} with |E[F]| = {} (ratio {}/{})\n",
                    witness.set.len(),
                    witness.neighborhood_size,
                    witness.ratio.0,
                    witness.ratio.1
                ),
                None => format!(
                    "no witness within budget (connected subsets ≤ {}, greedy from {} seeds)\n",
                    report.exhausted_connected_size, report.greedy_seeds
                ),
            };
            // a completed search is a success either way; the report
            // carries the witness-or-exhausted outcome
            emit(&output, text, serde_json::to_value(&report)?, None)?;
            Ok(true)
        }
        Command::Harem { window, d, output } => {
            let w = window.build()?;
            let rel = EntourageRel::generator_minus_diagonal(&w);
            let f = harem_matching(&w, &rel, d)?;
            let report = verify_harem(&f);
            let text = format!(
                "matching on {} points, {} certified fibers of size {}; verification {}\n",
                w.len(),
                f.certified.len(),
                f.fiber_target,
                if report.pass { "PASS" } else { "FAIL" }
            );
            let jsonv = json!({
                "harem": serde_json::to_value(f.to_json())?,
                "verification": serde_json::to_value(&report)?,
            });
            emit(&output, text, jsonv, None)?;
            Ok(report.pass)
        }
        Command::Whyte { window, d, output } => {
            let w = window.build()?;
            let rel = EntourageRel::generator_minus_diagonal(&w);
            let f = harem_matching(&w, &rel, d)?;
            let extraction = eliminate_periodic(&w, &f);
            let report = verify_forest(&w, &extraction.f_star, d, &extraction.certified);
            let text = format!(
                "forest on {} points, certified region {}: {}\n",
                w.len(),
                extraction.certified.len(),
                if report.pass { "PASS" } else { "FAIL" }
            );
            let jsonv = serde_json::to_value(forest_json(&extraction, d, &report))?;
            let dotv = dot::forest_dot(&w, &extraction.f_star, &extraction.certified);
            emit(&output, text, jsonv, Some(dotv))?;
            Ok(report.pass)
        }
        Command::Lemma42 {
            word,
            check_all_len,
            output,
        } => {
            let w: ReducedWord = word.parse()?;
            let pair = word_module(&w)?;
            let reached = act_word(&pair, &w, 0)?;
            let mut pass = reached == 2 * w.len();
            let mut sweep_note = String::new();
            if let Some(max_len) = check_all_len {
                let mut checked = 0;
                'sweep: for v in enumerate_ball(max_len) {
                    for i in 0..pair.module_size() {
                        let j = act_word(&pair, &v, i)?;
                        if i.abs_diff(j) > 2 * v.len() {
                            pass = false;
                            sweep_note = format!("; displacement bound fails for {v}");
                            break 'sweep;
                        }
                    }
                    checked += 1;
                }
                if sweep_note.is_empty() {
                    sweep_note = format!("; {checked} words within displacement bounds");
                }
            }
            let text = format!(
                "module size {}, word reaches {reached} (expected {}){sweep_note}\n",
                pair.module_size(),
                2 * w.len()
            );
            let jsonv = json!({
                "word": w.to_string(),
                "module_size": pair.module_size(),
                "phi_a": pair.phi_a,
                "phi_b": pair.phi_b,
                "reaches": reached,
            });
            emit(&output, text, jsonv, None)?;
            Ok(pass)
        }
        Command::Embed {
            window,
            max_len,
            output,
        } => {
            let w = window.build()?;
            let embedding = embed_f2(&w, max_len, budget.dfs_nodes)?;
            let all_within = embedding.certificates.iter().all(|c| {
                c.witness != c.witness_image && c.max_displacement <= c.displacement_bound
            });
            let text = format!(
                "{} words certified on {}; generator displacement ≤ {}\n",
                embedding.certificates.len(),
                w,
                embedding
                    .gen_a
                    .displacement_power
                    .max(embedding.gen_b.displacement_power)
            );
            let jsonv = json!({
                "gen_a": embedding.gen_a.to_json(),
                "gen_b": embedding.gen_b.to_json(),
                "certificates": serde_json::to_value(&embedding.certificates)?,
            });
            let dotv = dot::permutation_dot(&w, &embedding.gen_a);
            emit(&output, text, jsonv, Some(dotv))?;
            Ok(all_within)
        }
        Command::Lamplighter {
            n,
            samples,
            zmax,
            seed,
            output,
        } => {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0usize;
            for _ in 0..samples {
                let make = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<LamplighterElement> {
                    let mut e = LamplighterElement::shift(n, rng.random_range(-4..=4));
                    for pos in -5..=5i64 {
                        if rng.random_range(0..3) == 0 {
                            let mut perm: Vec<u32> = (0..n as u32).collect();
                            for i in (1..perm.len()).rev() {
                                perm.swap(i, rng.random_range(0..=i));
                            }
                            e = e.with_lamp(pos, perm)?;
                        }
                    }
                    Ok(e)
                };
                let g = make(&mut rng)?;
                let h = make(&mut rng)?;
                let z: i64 = rng.random_range(-zmax..=zmax);
                let gh = lamplighter_compose(&g, &h)?;
                let hom = gh.act(z) == g.act(h.act(z));
                let disp = z.abs_diff(g.act(z)) <= g.displacement_bound();
                if !(hom && disp) {
                    failures += 1;
                }
            }
            let text = format!("{samples} seeded triples, {failures} failures (seed {seed})\n");
            let jsonv = json!({
                "n": n, "samples": samples, "failures": failures, "seed": seed,
            });
            emit(&output, text, jsonv, None)?;
            Ok(failures == 0)
        }
        Command::Paradox { action } => run_paradox(action),
        Command::Asdim { window, output } => {
            let w = window.build()?;
            let report = w.asdim_zero_probe()?;
            let path = w.longest_injective_path(None, &BTreeSet::new(), budget.dfs_nodes)?;
            let text = format!(
                "components: max {} of {:?} (vs {} at radius {}); verdict {:?}; longest injective path {} points\n",
                report.max_component,
                report.component_sizes,
                report.comparison_max_component,
                report.comparison_radius,
                report.verdict,
                path.path.len()
            );
            let jsonv = json!({
                "probe": serde_json::to_value(&report)?,
                "longest_path": path.path,
                "path_complete": path.complete,
            });
            emit(&output, text, jsonv, None)?;
            Ok(true)
        }
        Command::Suite { id, seed, output } => {
            let reports = run_suite(&id, seed)?;
            let mut text = String::new();
            let mut all_pass = true;
            for r in &reports {
                all_pass &= r.pass;
                text.push_str(&format!(
                    "{} — {}: {}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.id,
                    r.detail
                ));
            }
            emit(&output, text, serde_json::to_value(&reports)?, None)?;
            Ok(all_pass)
        }
    }
}

fn run_paradox(action: ParadoxAction) -> Result<bool> {
    match action {
        ParadoxAction::Build { output } => {
            let pdec = standard_paradox();
            let j = paradox_to_json(&pdec);
            let text = format!(
                "four-piece decomposition of F2: {} P-pieces, {} Q-pieces\n",
                pdec.p_family.len(),
                pdec.q_family.len()
            );
            emit(&output, text, serde_json::to_value(&j)?, None)?;
            Ok(true)
        }
        ParadoxAction::Transfer { n, output } => {
            let model = GroupModel::Free2TimesCyclic { n };
            let phi_a = lift_quotient(
                n,
                &PiecewiseTranslation::translation(ModelElement::word("a".parse()?)),
            )?;
            let phi_b = lift_quotient(
                n,
                &PiecewiseTranslation::translation(ModelElement::word("b".parse()?)),
            )?;
            let pdec = transfer_paradox(
                &model,
                &phi_a,
                &phi_b,
                PsiMap::FirstCoordinate,
                &standard_paradox(),
                4,
            )?;
            let j = paradox_to_json(&pdec);
            let text = format!(
                "transferred to F2 x C{n}: {} P-pieces, {} Q-pieces\n",
                pdec.p_family.len(),
                pdec.q_family.len()
            );
            emit(&output, text, serde_json::to_value(&j)?, None)?;
            Ok(true)
        }
        ParadoxAction::Verify {
            model,
            maxlen,
            input,
            output,
        } => {
            let group_model = parse_model(&model)?;
            let pdec = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)?;
                    let j: ParadoxJson = serde_json::from_str(&text)?;
                    paradox_from_json(&j)?
                }
                None => match &group_model {
                    GroupModel::Free2 => standard_paradox(),
                    GroupModel::Free2TimesCyclic { n } => {
                        let phi_a = lift_quotient(
                            *n,
                            &PiecewiseTranslation::translation(ModelElement::word("a".parse()?)),
                        )?;
                        let phi_b = lift_quotient(
                            *n,
                            &PiecewiseTranslation::translation(ModelElement::word("b".parse()?)),
                        )?;
                        transfer_paradox(
                            &group_model,
                            &phi_a,
                            &phi_b,
                            PsiMap::FirstCoordinate,
                            &standard_paradox(),
                            4,
                        )?
                    }
                    GroupModel::FiniteAction(_) => {
                        return Err(Error::ModelMismatch(
                            "finite actions carry no decompositions".into(),
                        ))
                    }
                },
            };
            let report = verify_paradoxical(&pdec, &group_model, maxlen)?;
            let text = format!(
                "{}: {} elements checked to length {}{}\n",
                if report.pass { "PASS" } else { "FAIL" },
                report.checked_elements,
                report.max_len_checked,
                if report.pass {
                    String::new()
                } else {
                    format!("; first defect {:?}", report.defects.first())
                }
            );
            emit(&output, text, serde_json::to_value(&report)?, None)?;
            Ok(report.pass)
        }
    }
}

fn parse_model(s: &str) -> Result<GroupModel> {
    let lower = s.to_ascii_lowercase();
    if lower == "f2" || lower == "free2" {
        return Ok(GroupModel::Free2);
    }
    if let Some(rest) = lower.strip_prefix("f2xc") {
        let n: u64 = rest
            .parse()
            .map_err(|_| Error::ModelMismatch(format!("unknown model `{s}`")))?;
        return Ok(GroupModel::Free2TimesCyclic { n });
    }
    Err(Error::ModelMismatch(format!("unknown model `{s}`")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> i32 {
        cmd_dispatch(std::iter::once("cptk").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["space", "--space", "line", "--radius", "4"]), 0);
        assert_eq!(run_args(&["space", "--space", "mars", "--radius", "4"]), 2);
        assert_eq!(
            run_args(&["paradox", "verify", "--model", "f2", "--maxlen", "4"]),
            0
        );
        // expansion over a non-interior point is a precondition error
        assert_eq!(
            run_args(&[
                "expansion",
                "--space",
                "line",
                "--radius",
                "3",
                "--set",
                "0"
            ]),
            2
        );
        // an infeasible matching is a verification failure, witness printed
        assert_eq!(
            run_args(&["harem", "--space", "line", "--radius", "8", "--d", "4"]),
            1
        );
    }

    #[test]
    fn json_output_is_deterministic() {
        let dir = std::env::temp_dir();
        for (tag, args) in [
            ("whyte", vec!["whyte", "--space", "tree4", "--radius", "4", "--d", "4"]),
            ("suite", vec!["suite", "tree-isoperimetry", "--seed", "5"]),
        ] {
            let p1 = dir.join(format!("cptk_test_{tag}_1.json"));
            let p2 = dir.join(format!("cptk_test_{tag}_2.json"));
            for p in [&p1, &p2] {
                let mut argv = args.clone();
                argv.extend(["--format", "json", "--out", p.to_str().unwrap()]);
                assert_eq!(run_args(&argv), 0);
            }
            let a = std::fs::read(&p1).unwrap();
            let b = std::fs::read(&p2).unwrap();
            assert_eq!(a, b, "{tag} output differs between runs");
            let _ = std::fs::remove_file(p1);
            let _ = std::fs::remove_file(p2);
        }
    }

    #[test]
    fn model_parsing() {
        assert!(matches!(parse_model("f2"), Ok(GroupModel::Free2)));
        assert!(matches!(
            parse_model("f2xc3"),
            Ok(GroupModel::Free2TimesCyclic { n: 3 })
        ));
        assert!(parse_model("so3").is_err());
    }
}
