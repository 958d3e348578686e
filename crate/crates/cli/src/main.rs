use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cliffk::abgroup::{solve_exact, Assignment, ExactnessReport, DEFAULT_SEARCH_CEILING};
use cliffk::ktheory::{fiber_twist_check, point_k, reduced_k_rpn, thom_report, Theory};
use cliffk::rep::{paper_iso_report, untwist_report};
use cliffk::{classify, ScalarField, Signature};
use cliffk_cli::seqfile::{self, format_rows, matrix_to_rows, SequenceFile, TermValue};
use num::BigInt;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cliffk", version, about = "Clifford algebras, their modules and K-groups of a point")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    R,
    C,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoryArg {
    Ko,
    Ku,
}

impl From<TheoryArg> for Theory {
    fn from(t: TheoryArg) -> Theory {
        match t {
            TheoryArg::Ko => Theory::KO,
            TheoryArg::Ku => Theory::KU,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Morita,
    Untwist,
    Thom,
    Fiber,
}

#[derive(Subcommand)]
enum Command {
    /// Wedderburn type of C^{p,q}
    Classify {
        p: usize,
        q: usize,
        #[arg(long, value_enum, default_value_t = Field::R)]
        field: Field,
    },
    /// Reduced K-theory of real projective space RP^n
    Rpn {
        n: usize,
        #[arg(long, value_enum, default_value_t = TheoryArg::Ko)]
        theory: TheoryArg,
    },
    /// Table of K^{-i} of a point for i = 0..=max
    Bott {
        #[arg(long, default_value_t = 7)]
        max: usize,
        #[arg(long, value_enum, default_value_t = TheoryArg::Ko)]
        theory: TheoryArg,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Check or solve a sequence file
    Seq {
        file: PathBuf,
        /// Largest number of candidate assignments a solve may visit
        #[arg(long, default_value_t = DEFAULT_SEARCH_CEILING)]
        ceiling: u64,
    },
}

/// What a command produced: text lines, the JSON form, and whether it passed.
struct Output {
    text: Vec<String>,
    json: Value,
    passed: bool,
}

fn ok(text: Vec<String>, json: Value) -> Output {
    Output {
        text,
        json,
        passed: true,
    }
}

fn classify_cmd(p: usize, q: usize, field: Field) -> Output {
    let sig = Signature::new(p, q);
    let field = match field {
        Field::R => ScalarField::Real,
        Field::C => ScalarField::Complex,
    };
    let d = classify(sig, field);
    let lhs = match field {
        ScalarField::Real => sig.to_string(),
        ScalarField::Complex => format!("{sig} ⊗ C"),
    };
    let full = d.matrix_notation();
    let short = d.short_notation();
    let rhs = if full == short { full.clone() } else { format!("{full} = {short}") };
    ok(
        vec![format!("{lhs} ≅ {rhs} (dim {})", d.dim())],
        json!({
            "p": p,
            "q": q,
            "field": field.symbol(),
            "factors": d.factors,
            "matrix_size": d.matrix_size,
            "ring": d.ring.symbol(),
            "notation": full,
            "short": short,
            "dim": d.dim(),
        }),
    )
}

fn rpn_cmd(n: usize, theory: Theory) -> cliffk::Result<Output> {
    let r = reduced_k_rpn(n, theory)?;
    let map = r.derivation.as_ref().map(|d| d.map.matrix().to_string()).unwrap_or_default();
    Ok(ok(
        vec![format!(
            "reduced {theory}(RP^{n}) = {}   (cokernel of K(C^{{{n},0}}) → K(C^{{0,0}}), matrix {map})",
            r.group
        )],
        json!({"n": n, "theory": theory.to_string(), "group": r.group.to_string(), "map": map}),
    ))
}

fn bott_cmd(max: usize, theory: Theory) -> cliffk::Result<Output> {
    let groups = (0..=max)
        .map(|i| point_k(i, theory).map(|r| r.group.to_string()))
        .collect::<cliffk::Result<Vec<_>>>()?;
    let mut text = vec![format!("{theory}^-i(pt)"), "i  group".to_string()];
    text.extend(groups.iter().enumerate().map(|(i, g)| format!("{i:<2} {g}")));
    text.push(format!("row: ({})", groups.join(", ")));
    Ok(ok(text, json!({"theory": theory.to_string(), "groups": groups})))
}

fn verdict(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn verify_cmd(suite: Suite) -> cliffk::Result<Output> {
    let mut text = Vec::new();
    let mut items = Vec::new();
    let mut all = true;
    match suite {
        Suite::Morita => {
            for m in 0..=5 {
                let r = paper_iso_report(m)?;
                all &= r.passed();
                text.push(format!(
                    "C^{{0,{}}} → C^{{{m},0}} ⊗ C^{{0,2}}: relations {}, rank {}/{}  {}",
                    m + 2,
                    if r.relations_ok { "ok" } else { "broken" },
                    r.rank,
                    r.expected_rank,
                    verdict(r.passed())
                ));
                items.push(json!({"m": m, "relations_ok": r.relations_ok, "rank": r.rank,
                    "expected_rank": r.expected_rank, "passed": r.passed()}));
            }
        }
        Suite::Untwist => {
            for n in 0..=6 {
                let r = untwist_report(n)?;
                all &= r.passed();
                text.push(format!(
                    "n = {n}: involution {}, central {}, corners {}+{} (expect {}), corner relations {}  {}",
                    r.involution,
                    r.central,
                    r.corner_dims.0,
                    r.corner_dims.1,
                    r.expected_corner_dim,
                    r.corner_relations,
                    verdict(r.passed())
                ));
                items.push(json!({"n": n, "involution": r.involution, "central": r.central,
                    "corner_dims": [r.corner_dims.0, r.corner_dims.1], "passed": r.passed()}));
            }
        }
        Suite::Thom => {
            for n in 0..=2 {
                let r = thom_report(n, 3)?;
                all &= r.passed();
                for c in &r.comparisons {
                    text.push(format!(
                        "n = {n}, r = {}: ({}, {}) vs r+8: ({}, {})  {}",
                        c.r,
                        c.low.0,
                        c.low.1,
                        c.high.0,
                        c.high.1,
                        verdict(c.matches())
                    ));
                    items.push(json!({"n": n, "r": c.r, "residue": c.residue,
                        "coker": c.low.0.to_string(), "ker": c.low.1.to_string(),
                        "coker_r_plus_8": c.high.0.to_string(), "ker_r_plus_8": c.high.1.to_string(),
                        "passed": c.matches()}));
                }
            }
        }
        Suite::Fiber => {
            let r = fiber_twist_check()?;
            all &= r.passed();
            for c in &r.checks {
                text.push(format!("{}: {}  {}", c.name, c.detail, verdict(c.passed)));
                items.push(json!({"name": c.name, "detail": c.detail, "passed": c.passed}));
            }
        }
    }
    text.push(format!("suite {}", if all { "passed" } else { "FAILED" }));
    Ok(Output {
        text,
        json: json!({"checks": items, "passed": all}),
        passed: all,
    })
}

fn index_text(x: &Option<BigInt>) -> String {
    x.as_ref().map_or_else(|| "infinite".to_string(), BigInt::to_string)
}

fn describe(name: &str, r: &ExactnessReport) -> String {
    if r.exact() {
        format!("exact at {name}")
    } else if r.composite_zero {
        format!(
            "not exact at {name}: image index {}, kernel index {}",
            index_text(&r.image_index),
            index_text(&r.kernel_index)
        )
    } else {
        format!(
            "not exact at {name}: composite map is nonzero (image index {}, kernel index {})",
            index_text(&r.image_index),
            index_text(&r.kernel_index)
        )
    }
}

fn solution_json(file: &SequenceFile, a: &Assignment) -> Value {
    let terms: serde_json::Map<String, Value> = file
        .terms
        .iter()
        .zip(&a.terms)
        .map(|(t, g)| (t.name.clone(), json!(g.to_string())))
        .collect();
    let maps: serde_json::Map<String, Value> = file
        .maps
        .iter()
        .zip(&a.maps)
        .map(|(m, h)| (m.name.clone(), json!(format_rows(&matrix_to_rows(h.matrix())))))
        .collect();
    json!({"terms": terms, "maps": maps})
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("parse error: {0}")]
    Parse(seqfile::ParseError),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Lib(#[from] cliffk::Error),
    #[error("{0}")]
    Usage(String),
}

fn seq_cmd(path: &PathBuf, ceiling: u64) -> Result<Output, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let file = seqfile::parse(&text).map_err(CliError::Parse)?;
    let seq = file.to_sequence()?;
    let names: Vec<&str> = file.terms.iter().map(|t| t.name.as_str()).collect();

    if !file.is_template() {
        let bound = seq.bind()?;
        let mut lines = Vec::new();
        let mut positions = Vec::new();
        let mut all = true;
        for &at in seq.checks() {
            let r = bound.report_at(at)?;
            all &= r.exact();
            lines.push(describe(names[at], &r));
            positions.push(json!({
                "term": names[at],
                "exact": r.exact(),
                "composite_zero": r.composite_zero,
                "image_index": r.image_index.as_ref().map(BigInt::to_string),
                "kernel_index": r.kernel_index.as_ref().map(BigInt::to_string),
                "defect": r.defect.as_ref().map(ToString::to_string),
            }));
        }
        if all {
            lines.push("exact at all checked positions".to_string());
        }
        return Ok(Output {
            text: lines,
            json: json!({"mode": "check", "positions": positions, "exact": all}),
            passed: all,
        });
    }

    let bound = file
        .bound
        .ok_or_else(|| CliError::Usage("the sequence has unknowns; add a 'solve bound = N' line".into()))?;
    let solutions = solve_exact(&seq, bound, ceiling)?;
    let mut lines = vec![format!("bound {bound}: {} exact assignment(s)", solutions.len())];
    for (k, a) in solutions.iter().enumerate() {
        lines.push(format!("solution {}:", k + 1));
        for (t, g) in file.terms.iter().zip(&a.terms) {
            if matches!(t.value, TermValue::Unknown(_)) {
                lines.push(format!("  term {} = {g}", t.name));
            }
        }
        for (m, h) in file.maps.iter().zip(&a.maps) {
            lines.push(format!("  map {} = {}", m.name, format_rows(&matrix_to_rows(h.matrix()))));
        }
    }
    Ok(Output {
        text: lines,
        json: json!({
            "mode": "solve",
            "bound": bound,
            "count": solutions.len(),
            "solutions": solutions.iter().map(|a| solution_json(&file, a)).collect::<Vec<_>>(),
        }),
        passed: !solutions.is_empty(),
    })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classify { p, q, field } => Ok(classify_cmd(*p, *q, *field)),
        Command::Rpn { n, theory } => Ok(rpn_cmd(*n, (*theory).into())?),
        Command::Bott { max, theory } => Ok(bott_cmd(*max, (*theory).into())?),
        Command::Verify { suite } => Ok(verify_cmd(*suite)?),
        Command::Seq { file, ceiling } => seq_cmd(file, *ceiling),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => out.text.iter().for_each(|l| println!("{l}")),
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("json")),
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => println!("{}", json!({"error": e.to_string()})),
            }
            ExitCode::from(2)
        }
    }
}
