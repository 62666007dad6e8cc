use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadlin_core::curvetorsion::{excess_identity, fixed_classes, section_count_identity};
use quadlin_core::pencil::fixed_points_on_x;
use quadlin_core::report::{
    emit, fixtures, invariant_line_stage, parse_job, parse_lift_job, run_dp4, run_lift, run_report, Dp4Job, Format,
    JobSpec,
};
use quadlin_core::{CycNum, Error, Permutation};

#[derive(Parser)]
#[command(name = "quadlin", version, about = "Linearizability checks for intersections of two quadrics")]
struct Cli {
    #[arg(long, value_enum, global = true, default_value_t = OutFormat::Human)]
    format: OutFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Human,
    Json,
}

#[derive(Args)]
struct Input {
    /// Job file.
    file: Option<PathBuf>,
    /// Use a shipped job file instead.
    #[arg(long, conflicts_with = "file")]
    fixture: Option<String>,
    /// Override the closure cap.
    #[arg(long)]
    max_closure: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Full verdict for a job.
    Report(Input),
    /// Degeneracy form, branch points and branch permutations.
    Branch(Input),
    /// Points of X fixed by the group.
    FixedPoints(Input),
    /// Invariant lines on X.
    InvariantLines(Input),
    /// Two-torsion classes fixed by permutations of the branch points.
    Theta {
        #[command(flatten)]
        input: Input,
        /// Genus, when permutations are given directly.
        #[arg(long)]
        g: Option<usize>,
        /// Permutation in cycle notation, e.g. "(3456)"; may repeat.
        #[arg(long = "perm")]
        perms: Vec<String>,
        #[arg(long, value_enum, default_value_t = Parity::Odd)]
        parity: Parity,
    },
    /// Quartic del Pezzo queries.
    Dp4(Input),
    /// Counting identities for two-torsion classes.
    Identities {
        #[arg(long, default_value_t = 6)]
        g_max: usize,
    },
    /// Scalar lifting search for projective representations.
    Lift(Input),
}

#[derive(Clone, Copy, ValueEnum)]
enum Parity {
    Even,
    Odd,
}

enum Failure {
    Input(String),
    Unsupported(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_unsupported() {
            Failure::Unsupported(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

type Outcome = Result<String, Failure>;

fn read(input: &Input) -> Result<String, Failure> {
    match (&input.file, &input.fixture) {
        (Some(p), _) => std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        (None, Some(name)) => fixtures::fixture(name).map(str::to_owned).ok_or_else(|| {
            Failure::Input(format!("unknown fixture `{name}`; known: {}", fixtures::NAMES.join(", ")))
        }),
        (None, None) => Err(Failure::Input("give a job file or --fixture".into())),
    }
}

fn job(input: &Input) -> Result<JobSpec, Failure> {
    let mut j = parse_job(&read(input)?)?;
    if input.max_closure.is_some() {
        j.max_closure = input.max_closure;
    }
    Ok(j)
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn vector(v: &[CycNum]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn span(basis: &[Vec<CycNum>]) -> String {
    let parts: Vec<String> = basis.iter().map(|b| vector(b)).collect();
    format!("span({})", parts.join(", "))
}

fn branch(j: &JobSpec, format: OutFormat) -> Outcome {
    let form = j.pencil.degeneracy_form();
    let mut out = json!({
        "smooth": j.pencil.is_smooth(),
        "degeneracy_form": form.coeffs(),
    });
    let syms = j.pencil.symmetries(&j.group()?)?;
    match j.branch_config()? {
        Some(b) => {
            let perms = j.branch_permutations(&b)?;
            out["branch_points"] = json!(b.roots);
            out["permutations"] = syms
                .iter()
                .zip(&perms)
                .map(|(s, p)| json!({"label": s.label, "action": s.action2x2, "permutation": p.to_cycle_string()}))
                .collect();
        }
        None => {
            out["permutations"] = syms
                .iter()
                .map(|s| json!({"label": s.label, "action": s.action2x2}))
                .collect();
        }
    }
    Ok(match format {
        OutFormat::Json => pretty(&out),
        OutFormat::Human => {
            let mut s = format!("smooth: {}\n", j.pencil.is_smooth());
            let coeffs: Vec<String> = form.coeffs().iter().map(ToString::to_string).collect();
            s += &format!("degeneracy form coefficients: [{}]\n", coeffs.join(", "));
            if let Some(b) = j.branch_config()? {
                for (i, p) in b.roots.iter().enumerate() {
                    s += &format!("b{}: ({} : {})\n", i + 1, p[0], p[1]);
                }
            }
            for p in out["permutations"].as_array().expect("array") {
                s += &format!(
                    "{}: {}\n",
                    p["label"].as_str().unwrap_or_default(),
                    p.get("permutation").and_then(Value::as_str).unwrap_or("(no branch labels)")
                );
            }
            s
        }
    })
}

fn fixed_points(j: &JobSpec, format: OutFormat) -> Outcome {
    let rep = fixed_points_on_x(&j.pencil, &j.group()?)?;
    Ok(match format {
        OutFormat::Json => pretty(&rep),
        OutFormat::Human => {
            let mut s = String::new();
            if rep.is_empty() {
                s += "no fixed points on X\n";
            }
            for p in &rep.points {
                s += &format!("point {}\n", vector(p));
            }
            for l in &rep.lines {
                s += &format!("fixed line {}\n", span(&l.basis_vectors()));
            }
            for c in &rep.symbolic {
                s += &format!("fixed subspace of dimension {} (X cut out by restricted forms)\n", c.space.dim());
            }
            s
        }
    })
}

fn invariant_lines(j: &JobSpec, format: OutFormat) -> Outcome {
    let st = invariant_line_stage(&j.pencil, &j.group()?, j.closure_cap())?;
    let lines: Vec<Value> = st.lines.iter().map(|l| json!(l.plane.basis_vectors())).collect();
    let out = json!({
        "complete": st.complete,
        "bounded_by": st.bounded_by,
        "lines": lines,
        "notices": st.notices,
    });
    Ok(match format {
        OutFormat::Json => pretty(&out),
        OutFormat::Human => {
            let mut s = format!(
                "{} invariant line(s); search {}\n",
                st.lines.len(),
                if st.complete { "complete" } else { "incomplete" }
            );
            for l in &st.lines {
                s += &format!("{}\n", span(&l.plane.basis_vectors()));
            }
            for n in &st.notices {
                s += &format!("note: {n}\n");
            }
            s
        }
    })
}

fn theta(input: &Input, g: Option<usize>, perms: &[String], parity: Parity, format: OutFormat) -> Outcome {
    let (g, perms) = if perms.is_empty() {
        let j = job(input)?;
        let b = j
            .branch_config()?
            .ok_or_else(|| Failure::Input("job has no branch labels and the pencil is not diagonal".into()))?;
        (j.pencil.genus(), j.branch_permutations(&b)?)
    } else {
        let g = g.ok_or_else(|| Failure::Input("--perm needs --g".into()))?;
        let ps = perms
            .iter()
            .map(|p| Permutation::parse(2 * g + 2, p))
            .collect::<Result<Vec<_>, _>>()?;
        (g, ps)
    };
    let parity = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let classes = fixed_classes(g, &perms, parity)?;
    let names: Vec<String> = perms.iter().map(Permutation::to_cycle_string).collect();
    Ok(match format {
        OutFormat::Json => pretty(&json!({"g": g, "permutations": names, "parity": parity, "fixed": classes})),
        OutFormat::Human => {
            let list: Vec<String> = classes.iter().map(ToString::to_string).collect();
            format!(
                "classes of parity {parity} fixed by {}: {}\n",
                names.join(", "),
                if list.is_empty() { "none".into() } else { list.join(" ") }
            )
        }
    })
}

fn identities(g_max: usize, format: OutFormat) -> Outcome {
    let counts = (1..=g_max).map(section_count_identity).collect::<Result<Vec<_>, _>>()?;
    let excess = (2..=g_max.max(2)).map(excess_identity).collect::<Result<Vec<_>, _>>()?;
    Ok(match format {
        OutFormat::Json => pretty(&json!({"section_counts": counts, "excess": excess})),
        OutFormat::Human => {
            let mut s = String::from("g  4^g  C(2g+2,g)  rhs  holds\n");
            for c in &counts {
                s += &format!("{}  {}  {}  {}  {}\n", c.g, c.lhs, c.main, c.rhs(), c.holds);
            }
            s += "g  series  bilinear  closed form\n";
            for e in &excess {
                s += &format!("{}  {}  {}  {}\n", e.g, e.series, e.bilinear, e.closed_form);
            }
            s
        }
    })
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    match &cli.command {
        Command::Report(i) => {
            let v = run_report(&job(i)?)?;
            Ok(emit(
                &v,
                match format {
                    OutFormat::Human => Format::Human,
                    OutFormat::Json => Format::Json,
                },
            ))
        }
        Command::Branch(i) => branch(&job(i)?, format),
        Command::FixedPoints(i) => fixed_points(&job(i)?, format),
        Command::InvariantLines(i) => invariant_lines(&job(i)?, format),
        Command::Theta {
            input,
            g,
            perms,
            parity,
        } => theta(input, *g, perms, *parity, format),
        Command::Dp4(i) => {
            let rep = run_dp4(&Dp4Job::parse(&read(i)?)?)?;
            Ok(pretty(&rep))
        }
        Command::Identities { g_max } => identities(*g_max, format),
        Command::Lift(i) => {
            let mut j = parse_lift_job(&read(i)?)?;
            if i.max_closure.is_some() {
                j.max_closure = i.max_closure;
            }
            Ok(pretty(&run_lift(&j)?))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Unsupported(m)) => {
            eprintln!("unsupported: {m}");
            ExitCode::from(3)
        }
    }
}
