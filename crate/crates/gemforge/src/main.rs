//! Command-line surface: graph construction, censuses, gem checks,
//! isomorphism and homeomorphism classification, homology, the covering
//! dictionary and the exhaustive survey.
//!
//! Exit codes: 0 success, 2 usage/parameter error, 3 disagreement between
//! the brute-force oracle and the arithmetic classifier.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use gemforge::classify::{classify_pair, m_classes};
use gemforge::coverings::{geometry, lm_to_covering, spaces_homeomorphic, LmCovering};
use gemforge::graph::COLOR_PAIRS;
use gemforge::homology::h1;
use gemforge::iso::are_isomorphic;
use gemforge::lins_mandel::{build, is_gem_parametric, predicted_census, LmParams};
use gemforge::survey::{run_survey, SurveyRange};

const DEFAULT_CEILING: u32 = 8;

#[derive(Parser)]
#[command(
    name = "gemforge",
    about = "Lins-Mandel coloured graphs: construction, isomorphism, homology, coverings",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the involution tables of G(n,p,q,m)
    Build { n: u32, p: u32, q: i64, m: i64 },
    /// Residue census of G(n,p,q,m), checked against the parameter
    /// prediction when gcd(p,q)=1
    Census { n: u32, p: u32, q: i64, m: i64 },
    /// Decide gem-ness by the parametric criterion and the direct oracle
    GemCheck { n: u32, p: u32, q: i64, m: i64 },
    /// Decide isomorphism of two graphs by brute force and by arithmetic
    Iso {
        n: u32,
        p: u32,
        q: i64,
        m: i64,
        n2: u32,
        p2: u32,
        q2: i64,
        m2: i64,
    },
    /// With 8 integers n p q m n' p' q' m': the pair criterion.
    /// With 3 integers n p q (p even): the partition of m into classes.
    Classify {
        #[arg(num_args = 3..=8)]
        args: Vec<i64>,
    },
    /// First homology of the encoded manifold
    Homology { n: u32, p: u32, q: i64, m: i64 },
    /// Branched-covering dictionary, covering type and geometry; with a
    /// trailing m' also the homeomorphism criterion against S(n,p,q,m')
    Covering {
        n: u32,
        p: u32,
        q: i64,
        m: i64,
        m2: Option<i64>,
    },
    /// Exhaustive cross-validation up to the given bounds (inclusive)
    Survey {
        n_max: Option<u32>,
        p_max: Option<u32>,
        /// Bound on n (alternative to the positional argument)
        #[arg(long)]
        max_n: Option<u32>,
        /// Bound on p (alternative to the positional argument)
        #[arg(long)]
        max_p: Option<u32>,
        /// Write the JSON report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn params(n: u32, p: u32, q: i64, m: i64) -> Result<LmParams, String> {
    LmParams::new(n, p, q, m).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let format = cli.format;
    match cli.command {
        Command::Build { n, p, q, m } => cmd_build(&params(n, p, q, m)?, format),
        Command::Census { n, p, q, m } => cmd_census(&params(n, p, q, m)?, format),
        Command::GemCheck { n, p, q, m } => cmd_gem_check(&params(n, p, q, m)?, format),
        Command::Iso {
            n,
            p,
            q,
            m,
            n2,
            p2,
            q2,
            m2,
        } => cmd_iso(&params(n, p, q, m)?, &params(n2, p2, q2, m2)?, format),
        Command::Classify { args } => cmd_classify(&args, format),
        Command::Homology { n, p, q, m } => cmd_homology(&params(n, p, q, m)?, format),
        Command::Covering { n, p, q, m, m2 } => cmd_covering(&params(n, p, q, m)?, m2, format),
        Command::Survey {
            n_max,
            p_max,
            max_n,
            max_p,
            out,
        } => {
            let n_max = max_n
                .or(n_max)
                .ok_or("survey needs an n bound (positional or --max-n)")?;
            let p_max = max_p
                .or(p_max)
                .ok_or("survey needs a p bound (positional or --max-p)")?;
            cmd_survey(n_max, p_max, out, format)
        }
    }
}

fn emit(format: Format, value: serde_json::Value, text: String) -> Result<ExitCode, String> {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        Format::Text => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_build(pr: &LmParams, format: Format) -> Result<ExitCode, String> {
    let g = build(pr);
    let tables: Vec<&[u32]> = (0..4).map(|c| g.involution(c)).collect();
    let mut text = format!("{pr}: {} vertices\n", g.vertex_count());
    for (c, table) in tables.iter().enumerate() {
        text.push_str(&format!("colour {c}: {table:?}\n"));
    }
    emit(
        format,
        json!({ "params": pr, "vertex_count": g.vertex_count(), "involutions": tables }),
        text,
    )
}

fn cmd_census(pr: &LmParams, format: Format) -> Result<ExitCode, String> {
    let census = build(pr).census();
    let predicted_match = pr
        .coprime_pq()
        .then(|| predicted_census(pr).expect("coprime checked") == census);
    let mut text = format!("{pr} residue census\n{census}");
    match predicted_match {
        Some(ok) => text.push_str(&format!("matches parameter prediction: {ok}\n")),
        None => text.push_str("parameter prediction undefined (gcd(p,q) != 1)\n"),
    }
    let pairs: Vec<serde_json::Value> = COLOR_PAIRS
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| json!({ "pair": [a, b], "lengths": census.lengths[i] }))
        .collect();
    emit(
        format,
        json!({ "params": pr, "census": pairs, "predicted_match": predicted_match }),
        text,
    )
}

fn cmd_gem_check(pr: &LmParams, format: Format) -> Result<ExitCode, String> {
    let parametric = is_gem_parametric(pr);
    let direct = build(pr).is_gem().map_err(|e| e.to_string())?;
    let text = format!("{pr} gem: {parametric} (parametric), {direct} (direct)\n");
    emit(
        format,
        json!({ "params": pr, "parametric": parametric, "direct": direct }),
        text,
    )
}

fn cmd_iso(a: &LmParams, b: &LmParams, format: Format) -> Result<ExitCode, String> {
    let ga = build(a);
    let gb = build(b);
    let witness = are_isomorphic(&ga, &gb).map_err(|e| e.to_string())?;
    let brute = witness.is_some();
    let verdict = classify_pair(a, b);
    let (classifier_text, classifier_json, decided) = match &verdict {
        Ok(v) => (
            format!("{:?} [{:?}: {}]", v.isomorphic, v.rule, v.matched_condition),
            serde_json::to_value(v).unwrap(),
            v.isomorphic,
        ),
        Err(e) => (
            format!("not applicable ({e})"),
            json!({ "error": e.to_string() }),
            None,
        ),
    };
    let disagreement = decided.is_some_and(|c| c != brute);
    let mut text = format!("{a} vs {b}\nbrute force: {brute}\nclassifier: {classifier_text}\n");
    if let Some(w) = &witness {
        text.push_str(&format!("witness phi: {:?}\nwitness f: {:?}\n", w.phi, w.f));
    }
    if disagreement {
        text.push_str("DISAGREEMENT between brute force and classifier\n");
    }
    emit(
        format,
        json!({
            "a": a, "b": b,
            "brute_force": brute,
            "witness": witness,
            "classifier": classifier_json,
            "disagreement": disagreement,
        }),
        text,
    )?;
    Ok(if disagreement {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    })
}

fn cmd_classify(args: &[i64], format: Format) -> Result<ExitCode, String> {
    let as_u32 = |x: i64, name: &str| -> Result<u32, String> {
        u32::try_from(x).map_err(|_| format!("{name} must be nonnegative"))
    };
    match args.len() {
        8 => {
            let a = params(
                as_u32(args[0], "n")?,
                as_u32(args[1], "p")?,
                args[2],
                args[3],
            )?;
            let b = params(
                as_u32(args[4], "n'")?,
                as_u32(args[5], "p'")?,
                args[6],
                args[7],
            )?;
            let verdict = classify_pair(&a, &b).map_err(|e| e.to_string())?;
            let text = format!(
                "{a} vs {b}: {:?} [{:?}: {}]\n",
                verdict.isomorphic, verdict.rule, verdict.matched_condition
            );
            emit(format, json!({ "a": a, "b": b, "verdict": verdict }), text)
        }
        3 => {
            let n = as_u32(args[0], "n")?;
            let p = as_u32(args[1], "p")?;
            let q = as_u32(args[2], "q")?;
            let classes = m_classes(n, p, q).map_err(|e| e.to_string())?;
            let mut text = format!("isomorphism classes of m for (n,p,q)=({n},{p},{q})\n");
            for class in &classes {
                text.push_str(&format!("  {class:?}\n"));
            }
            emit(
                format,
                json!({ "n": n, "p": p, "q": q, "classes": classes }),
                text,
            )
        }
        k => Err(format!(
            "classify takes 8 integers (pair) or 3 integers (m-classes), got {k}"
        )),
    }
}

fn cmd_homology(pr: &LmParams, format: Format) -> Result<ExitCode, String> {
    let group = h1(&build(pr)).map_err(|e| e.to_string())?;
    let text = format!("H1 of the space of {pr}: {group}\n");
    emit(format, json!({ "params": pr, "h1": group }), text)
}

fn cmd_covering(pr: &LmParams, m2: Option<i64>, format: Format) -> Result<ExitCode, String> {
    let record = lm_to_covering(pr).map_err(|e| e.to_string())?;
    let geom = geometry(pr).map_err(|e| e.to_string())?;
    let mut text = format!("{pr} -> ");
    let type_json = match &record.covering {
        LmCovering::Link(desc) => {
            let ladder = desc.covering_type();
            text.push_str(&format!(
                "{desc}: {}-fold covering of the two-bridge link {} ({ladder:?})\n",
                desc.fold, desc.link
            ));
            json!(ladder)
        }
        LmCovering::Knot { fold, link } => {
            text.push_str(&format!(
                "{fold}-fold cyclic covering of the two-bridge knot {link}\n"
            ));
            json!("strictly-cyclic")
        }
    };
    if record.normalized != *pr {
        text.push_str(&format!("normalized parameters: {}\n", record.normalized));
    }
    text.push_str(&format!("geometry: {geom}\n"));

    let homeo = m2.map(|m2| {
        let norm = record.normalized;
        spaces_homeomorphic(norm.n, norm.p, norm.q, norm.m as i64, m2)
    });
    let homeo_json = match &homeo {
        None => serde_json::Value::Null,
        Some(Ok(v)) => {
            text.push_str(&format!(
                "homeomorphic to the m'={} space: {v}\n",
                m2.unwrap()
            ));
            json!(v)
        }
        Some(Err(e)) => {
            text.push_str(&format!("homeomorphism criterion not applicable: {e}\n"));
            json!({ "error": e.to_string() })
        }
    };
    emit(
        format,
        json!({
            "params": pr,
            "normalized": record.normalized,
            "covering": record.covering,
            "covering_type": type_json,
            "geometry": geom,
            "homeomorphic_to_m2": homeo_json,
        }),
        text,
    )
}

fn survey_ceiling() -> u32 {
    std::env::var("GEMFORGE_CEILING")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_CEILING)
}

fn cmd_survey(
    n_max: u32,
    p_max: u32,
    out: Option<PathBuf>,
    format: Format,
) -> Result<ExitCode, String> {
    let ceiling = survey_ceiling();
    if n_max > ceiling || p_max > ceiling {
        return Err(format!(
            "survey bounds ({n_max},{p_max}) exceed the ceiling {ceiling}; raise GEMFORGE_CEILING to override"
        ));
    }
    let report = run_survey(SurveyRange { n_max, p_max });
    let json_body = report.to_json();
    if let Some(path) = &out {
        std::fs::write(path, &json_body).map_err(|e| format!("writing {}: {e}", path.display()))?;
    }
    match format {
        Format::Json => print!("{json_body}"),
        Format::Text => print!("{}", report.summary()),
    }
    Ok(if report.discrepancies.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
