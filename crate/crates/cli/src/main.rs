use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use stallings::egen::egen_table;
use stallings::identities::{verify_nfp_identities, verify_onee_reductions};
use stallings::pipeline::{far_base, random_band_expression, random_gamma1_loop, x_ball};
use stallings::vankampen::{realize, to_dot, to_svg};
use stallings::{
    build_diagram, extract_bands, f2p_rewrite, run_ends_experiment, run_main_pipeline, run_reduce_demo, s_normalize, Ball, Certificate,
    ComplexKind, ConjugateExpression, Diagram, EdgePath, ForbiddenRegion, SElement, SWord, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "stallings", version, about = "Computations in the Bieri-Stallings groups B2 and B3")]
struct Cli {
    /// Vertex budget for ball growth and searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for the random batch generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Check the normal form identities and the one-endedness reductions.
    VerifyIdentities,
    /// Essential components of ball(*, R) minus N(*, r).
    Ends {
        #[arg(long, default_value_t = 1)]
        inner: usize,
        #[arg(long, default_value_t = 3)]
        outer: usize,
    },
    /// Grow a ball in one of the complexes.
    Ball {
        #[arg(long, default_value = "Gamma1")]
        complex: ComplexKind,
        #[arg(long, default_value = "")]
        center: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
    /// Rewrite a zero-sum path far from the identity into a K-path.
    F2p {
        #[arg(long)]
        base: String,
        #[arg(long)]
        word: String,
        #[arg(long)]
        m: usize,
    },
    /// Van Kampen diagrams of products of conjugates of relators.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
    /// Contract the boundary loop of a diagram band by band.
    ReduceDemo {
        #[command(flatten)]
        input: DiagramInput,
        /// Base point; random and far from the region when omitted.
        #[arg(long)]
        base: Option<String>,
        /// Run this many random two-band loops instead.
        #[arg(long, conflicts_with_all = ["expr", "file"])]
        random: Option<usize>,
        #[command(flatten)]
        forbid: Forbid,
    },
    /// Contract a Gamma1-loop by a homotopy in X avoiding the region.
    Pipeline {
        #[arg(long, requires = "word")]
        base: Option<String>,
        #[arg(long)]
        word: Option<String>,
        /// Run this many random loops of length at most 8 outside N(*, 3) instead.
        #[arg(long, conflicts_with = "word")]
        random: Option<usize>,
        #[command(flatten)]
        forbid: Forbid,
    },
    /// Print the 24 e-generators and their words.
    DumpEgenTable,
    /// Replay a certificate from a JSON file.
    VerifyCert {
        file: PathBuf,
        #[command(flatten)]
        forbid: Forbid,
    },
    /// Normal form of a word in a, b, c, d, s.
    Normalize { word: String },
}

#[derive(Subcommand)]
enum DiagramAction {
    /// Fold the wedge of relator cells into a planar diagram.
    Build {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Extract and check the s-bands.
    Bands {
        #[command(flatten)]
        input: DiagramInput,
    },
    /// Draw the diagram: DOT realized at a base point, or SVG.
    Render {
        #[command(flatten)]
        input: DiagramInput,
        #[arg(long, default_value = "")]
        base: String,
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Args)]
struct DiagramInput {
    /// Expression such as "S:[s,e1]; ab:[a,c]^-1".
    #[arg(long, conflicts_with = "file")]
    expr: Option<String>,
    /// Diagram JSON written by `diagram build`.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Forbid {
    /// Radius of the forbidden ball about the identity.
    #[arg(long, default_value_t = 0)]
    forbid_radius: usize,
    /// Complex whose metric defines the ball.
    #[arg(long, default_value = "X")]
    forbid_complex: ComplexKind,
    /// JSON list of forbidden vertices; overrides the ball.
    #[arg(long)]
    forbid_file: Option<PathBuf>,
}

impl Forbid {
    fn region(&self, budget: usize) -> Result<ForbiddenRegion> {
        if let Some(f) = &self.forbid_file {
            let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
            return Ok(serde_json::from_str(&text)?);
        }
        Ok(match self.forbid_complex {
            ComplexKind::Gamma1 => ForbiddenRegion::gamma1_ball(self.forbid_radius),
            ComplexKind::X => x_ball(self.forbid_radius, budget)?,
            k => ForbiddenRegion::from_vertices([SElement::identity()]).dilate(self.forbid_radius, k, budget)?,
        })
    }
}

impl DiagramInput {
    fn expression(&self) -> Result<Option<ConjugateExpression>> {
        Ok(match &self.expr {
            Some(e) => Some(e.parse()?),
            None => None,
        })
    }

    fn diagram(&self) -> Result<Diagram> {
        if let Some(e) = self.expression()? {
            return Ok(build_diagram(&e)?);
        }
        let Some(f) = &self.file else { bail!("give --expr or --file") };
        let text = fs::read_to_string(f).with_context(|| format!("reading {}", f.display()))?;
        Ok(Diagram::from_json(&text)?)
    }
}

/// A report and whether everything in it verified.
struct Outcome {
    body: String,
    ok: bool,
}

impl Outcome {
    fn json(v: &impl serde::Serialize, ok: bool) -> Result<Outcome> {
        Ok(Outcome {
            body: serde_json::to_string_pretty(v)? + "\n",
            ok,
        })
    }
}

fn element(s: &str) -> Result<SElement> {
    Ok(SElement::parse(s)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let budget = cli.budget;
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let dot = cli.format == Format::Dot;
    match &cli.command {
        Command::VerifyIdentities => {
            let nfp = verify_nfp_identities();
            let onee = verify_onee_reductions();
            let ok = nfp.all_pass && onee.all_pass;
            Outcome::json(&json!({ "normal_form": nfp, "one_ended": onee, "all_pass": ok }), ok)
        }
        Command::Ends { inner, outer } => {
            let rows = run_ends_experiment(*inner, *outer, budget)?;
            Outcome::json(&rows, true)
        }
        Command::Ball { complex, center, radius } => {
            let ball = Ball::build(element(center)?, *radius, *complex, budget)?;
            if dot {
                return Ok(Outcome { body: ball.to_dot(), ok: true });
            }
            let vertices: Vec<String> = ball.vertices().iter().map(|v| v.to_word().to_string()).collect();
            Outcome::json(
                &json!({ "complex": complex, "radius": radius, "sphere_sizes": ball.sphere_sizes(), "vertices": vertices }),
                true,
            )
        }
        Command::F2p { base, word, m } => {
            let r = f2p_rewrite(&EdgePath::parse(base, word)?, *m)?;
            let v = r.certificate.verify(&ForbiddenRegion::gamma1_ball(*m));
            let ok = v.ok;
            Outcome::json(&json!({ "result": r, "verification": v }), ok)
        }
        Command::Diagram { action } => diagram(action, dot),
        Command::ReduceDemo { input, base, random, forbid } => {
            let c = forbid.region(budget)?;
            let radius = c.gamma1_radius().unwrap_or(0);
            let exprs = match random {
                Some(n) => (0..*n).map(|_| random_band_expression(&mut rng, 2)).collect(),
                None => vec![input.expression()?.context("give --expr or --random")?],
            };
            let mut reports = Vec::new();
            for e in &exprs {
                let b = match base {
                    Some(b) => element(b)?,
                    None => far_base(&mut rng, e, radius),
                };
                reports.push(run_reduce_demo(e, &b, &c, budget)?);
            }
            let ok = reports.iter().all(|r| r.verified);
            Outcome::json(&json!({ "reports": reports, "verified": ok }), ok)
        }
        Command::Pipeline { base, word, random, forbid } => {
            let c = forbid.region(budget)?;
            let loops = match (random, word) {
                (Some(n), _) => (0..*n).map(|_| random_gamma1_loop(&mut rng, 8, 4, 3)).collect(),
                (None, Some(w)) => vec![EdgePath::parse(base.as_deref().unwrap_or(""), w)?],
                (None, None) => bail!("give --word or --random"),
            };
            let reports = loops.iter().map(|t| run_main_pipeline(t, &c)).collect::<stallings::Result<Vec<_>>>()?;
            let ok = reports.iter().all(|r| r.verified);
            Outcome::json(&json!({ "reports": reports, "verified": ok }), ok)
        }
        Command::DumpEgenTable => Outcome::json(&egen_table(), true),
        Command::VerifyCert { file, forbid } => {
            let text = fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let cert = Certificate::from_json(&text)?;
            let v = cert.verify(&forbid.region(budget)?);
            let ok = v.ok;
            Outcome::json(&v, ok)
        }
        Command::Normalize { word } => {
            let x = s_normalize(&SWord::parse(word)?);
            Outcome::json(&json!({ "input": word, "normal_form": x.to_word().to_string(), "element": x }), true)
        }
    }
}

fn diagram(action: &DiagramAction, dot: bool) -> Result<Outcome> {
    match action {
        DiagramAction::Build { input } => {
            let d = input.diagram()?;
            if dot {
                return Ok(Outcome { body: to_dot(&d, None), ok: true });
            }
            Ok(Outcome {
                body: d.to_json()? + "\n",
                ok: true,
            })
        }
        DiagramAction::Bands { input } => {
            let d = input.diagram()?;
            let bands = extract_bands(&d)?;
            let check = bands.check(&d);
            let ok = check.is_ok();
            Outcome::json(
                &json!({ "bands": bands, "valid": ok, "error": check.err().map(|e| e.to_string()) }),
                ok,
            )
        }
        DiagramAction::Render { input, base, svg } => {
            let d = input.diagram()?;
            let body = if *svg {
                to_svg(&d)
            } else {
                let r = realize(&d, &element(base)?)?;
                to_dot(&d, Some(&r))
            };
            Ok(Outcome { body, ok: true })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.out {
        Some(p) => fs::write(p, &outcome.body).with_context(|| format!("writing {}", p.display())),
        None => std::io::stdout().write_all(outcome.body.as_bytes()).map_err(Into::into),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
