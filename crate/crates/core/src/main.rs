use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use signed_inertia::enumeration::{verify_theorem, Constraints, EnumerationReport, OrderBound};
use signed_inertia::families::{
    gen_canonical_unicyclic, gen_cycle, gen_gamma, gen_kjoin_family, gen_path, gen_star, gen_theta, Family,
    FamilyParams, FamilySpec, JoinKind, Reading, ThetaSpec,
};
use signed_inertia::inertia::negative_inertia;
use signed_inertia::io::{graph_digest, invariant_block, parse_edge_list, serialize_edge_list, Meta, Report};
use signed_inertia::predicates::{hypothesis_check, thm31_predicate, thm32_classify, thm33_classify, Theorem};
use signed_inertia::sgraph::{Sign, SignedGraph};

const EXIT_INPUT: u8 = 2;
const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sginertia",
    version,
    about = "Exact inertia and girth invariants of signed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Girth, balance, exact inertia and determinant of an edge-list file.
    Compute {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// Also run the applicable classifiers.
        #[arg(long)]
        classify: bool,
        #[arg(long, value_enum, default_value_t = ReadingArg::Proof)]
        reading: ReadingArg,
        #[arg(long)]
        no_meta: bool,
    },
    /// Generate a family member as an edge-list file.
    Generate {
        #[command(subcommand)]
        family: GenFamily,
        /// Output file (stdout if omitted).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Exhaustively check a theorem's biconditional in a bounded range.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    Statement,
    Proof,
}

impl From<ReadingArg> for Reading {
    fn from(r: ReadingArg) -> Reading {
        match r {
            ReadingArg::Statement => Reading::Statement,
            ReadingArg::Proof => Reading::Proof,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum JoinArg {
    Pendant,
    Cycle,
}

#[derive(Subcommand)]
enum GenFamily {
    Cycle {
        n: usize,
        #[arg(long)]
        unbalanced: bool,
    },
    Path {
        n: usize,
    },
    Star {
        t: usize,
    },
    /// Theta graph B(a, b, c); the a and b paths form the base cycle.
    Theta {
        a: usize,
        b: usize,
        c: usize,
        /// Outer path signs from y1, e.g. "+-+++".
        #[arg(long, conflicts_with = "negative")]
        outer_signs: Option<String>,
        /// Negate the outer edge at y1.
        #[arg(long)]
        negative: bool,
    },
    /// Canonical unicyclic graph; stars given as POSITION:COUNT.
    Unicyclic {
        girth: usize,
        #[arg(long = "star", value_parser = parse_pair)]
        stars: Vec<(usize, usize)>,
        #[arg(long)]
        unbalanced: bool,
    },
    /// Attachment family: 1, 2, 3, 5..11, or theta445-neg.
    Gamma {
        id: String,
        /// Pendant counts as LETTER=COUNT; `t=COUNT` sets the far star.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(char, usize)>,
        #[arg(long, value_enum, default_value_t = ReadingArg::Proof)]
        reading: ReadingArg,
    },
    /// Star K_{1,t} joined to a base graph read from an edge-list file.
    Kjoin {
        #[arg(value_enum)]
        kind: JoinArg,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        base: PathBuf,
        #[arg(long = "target", required = true)]
        targets: Vec<usize>,
    },
    /// Any family from a JSON description.
    Spec {
        path: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// 3.1, 3.2 or 3.3.
    theorem: String,
    /// Largest order.
    #[arg(long, conflicts_with = "above_girth")]
    max_n: Option<usize>,
    /// Largest order as girth plus this many vertices.
    #[arg(long)]
    above_girth: Option<usize>,
    /// Girth or girth range, e.g. 6 or 5-9.
    #[arg(long)]
    girth: Option<String>,
    #[arg(long)]
    cyclomatic: Option<usize>,
    /// Largest pendant count per star (3.1 only).
    #[arg(long, default_value_t = 3)]
    multiplicity: usize,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write each counterexample as an edge-list file in this directory.
    #[arg(long)]
    dump_dir: Option<PathBuf>,
    #[arg(long)]
    no_meta: bool,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected POSITION:COUNT")?;
    Ok((
        a.parse().map_err(|_| "bad position")?,
        b.parse().map_err(|_| "bad count")?,
    ))
}

fn parse_param(s: &str) -> Result<(char, usize), String> {
    let (k, v) = s.split_once('=').ok_or("expected LETTER=COUNT")?;
    let mut chars = k.chars();
    let (Some(c), None) = (chars.next(), chars.next()) else {
        return Err(format!("parameter name must be one letter, got '{k}'"));
    };
    Ok((c, v.parse().map_err(|_| format!("bad count '{v}'"))?))
}

fn parse_girth(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("bad girth '{s}'");
    match s.split_once('-') {
        Some((a, b)) => Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?)),
        None => {
            let g = s.parse().map_err(|_| bad())?;
            Ok((g, g))
        }
    }
}

struct Failure(u8, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_INPUT, e.to_string())
    }
}

fn read_graph(path: &Path) -> Result<SignedGraph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn compute(path: &Path, json: bool, classify: bool, reading: Reading, no_meta: bool) -> Result<(), Failure> {
    let g = read_graph(path)?;
    let inv = invariant_block(&g);
    let mut classes = Vec::new();
    if classify && g.is_connected() {
        for th in [Theorem::FarVertex, Theorem::NearVertices] {
            if hypothesis_check(&g, th).is_ok_and(|h| h.satisfied) {
                let c = match th {
                    Theorem::FarVertex => thm32_classify(&g),
                    _ => thm33_classify(&g, reading),
                };
                classes.extend(c.ok());
            }
        }
    }
    if json {
        let mut r = Report::new();
        r.input_digest = Some(graph_digest(&g));
        r.invariants = Some(inv);
        r.classification = classes;
        if !no_meta {
            r.meta = Some(Meta::now(None));
        }
        println!("{}", r.to_json());
        return Ok(());
    }
    let girth = inv.girth.map_or("none (acyclic)".to_string(), |x| x.to_string());
    let bal = if inv.balance.balanced { "balanced" } else { "unbalanced" };
    let t = inv.inertia;
    println!(
        "girth {girth}, {bal}, inertia ({},{},{})",
        t.i_plus, t.i_minus, t.nullity
    );
    println!("det {} (sign {})", inv.det, inv.det_sign);
    if let Some(c) = &inv.balance.negative_cycle {
        println!("negative cycle {c:?}");
    }
    if let Some(s) = &inv.balance.switching_negative_set {
        println!("switching set {s:?}");
    }
    if !inv.float_agrees {
        println!("warning: floating-point eigensolver disagrees");
    }
    if classify {
        if let Ok(v) = thm31_predicate(&g) {
            println!(
                "canonical unicyclic: segments {:?}, predicate {}",
                v.decomposition.segments, v.holds
            );
        }
        for c in &classes {
            let tag = c.tag.map_or("none".to_string(), |t| t.to_string());
            println!(
                "theorem {}: tag {tag} {:?} (i- = {}, target {})",
                c.theorem, c.parameters, c.i_minus, c.target
            );
        }
    }
    Ok(())
}

fn family_from_id(id: &str) -> Result<Family, Failure> {
    if id == "theta445-neg" {
        return Ok(Family::Theta445Neg);
    }
    id.trim_start_matches("gamma")
        .parse()
        .ok()
        .and_then(Family::from_index)
        .ok_or_else(|| Failure(EXIT_INPUT, format!("unknown family '{id}'")))
}

fn parse_signs(s: &str) -> Result<Vec<Sign>, Failure> {
    s.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Pos),
            '-' => Ok(Sign::Neg),
            _ => Err(Failure(EXIT_INPUT, format!("bad sign '{c}' (use + or -)"))),
        })
        .collect()
}

fn generate(family: &GenFamily, out: Option<&Path>) -> Result<(), Failure> {
    let g = match family {
        GenFamily::Cycle { n, unbalanced } => gen_cycle(*n, !unbalanced)?,
        GenFamily::Path { n } => gen_path(*n, &vec![Sign::Pos; n.saturating_sub(1)])?,
        GenFamily::Star { t } => gen_star(*t)?,
        GenFamily::Theta {
            a,
            b,
            c,
            outer_signs,
            negative,
        } => {
            let spec = match outer_signs {
                Some(s) => ThetaSpec::with_outer(*a, *b, *c, parse_signs(s)?),
                None if *negative => ThetaSpec::class(*a, *b, *c, signed_inertia::families::ThetaClass::Negative),
                None => ThetaSpec::positive(*a, *b, *c),
            };
            gen_theta(&spec)?
        }
        GenFamily::Unicyclic {
            girth,
            stars,
            unbalanced,
        } => gen_canonical_unicyclic(*girth, stars, !unbalanced)?,
        GenFamily::Gamma { id, params, reading } => {
            let f = family_from_id(id)?;
            let mut p = FamilyParams::default();
            for &(k, v) in params {
                if k == 't' {
                    p.t = v;
                } else {
                    p.counts.insert(k, v);
                }
            }
            gen_gamma(f, &p, (*reading).into())?
        }
        GenFamily::Kjoin { kind, t, base, targets } => {
            let kind = match kind {
                JoinArg::Pendant => JoinKind::AtPendant,
                JoinArg::Cycle => JoinKind::AtCycle,
            };
            gen_kjoin_family(kind, *t, &read_graph(base)?, targets)?
        }
        GenFamily::Spec { path } => {
            let text = fs::read_to_string(path)?;
            let spec: FamilySpec = serde_json::from_str(&text)?;
            spec.build()?
        }
    };
    let i = negative_inertia(&g);
    let text = format!("# i- = {i}\n{}", serialize_edge_list(&g));
    emit(out, &text)?;
    if let Some(p) = out {
        println!("wrote {} (n = {}, m = {}, i- = {i})", p.display(), g.order(), g.size());
    }
    Ok(())
}

fn default_girths(th: Theorem) -> (usize, usize) {
    match th {
        Theorem::CanonicalUnicyclic => (5, 9),
        _ => (6, 7),
    }
}

fn summary(r: &EnumerationReport) -> String {
    let mut s = format!(
        "theorem {}: {} underlying, {} signed, {} satisfy the hypotheses\n",
        r.theorem, r.underlying_graphs, r.signed_graphs, r.hypothesis_graphs
    );
    for c in &r.cells {
        s += &format!("  girth {} i- {}: {}\n", c.girth, c.i_minus, c.count);
    }
    for (tag, n) in &r.tags {
        s += &format!("  tag {tag}: {n}\n");
    }
    for o in &r.readings {
        s += &format!("  reading {:?}: {} mismatches\n", o.reading, o.mismatches);
    }
    if let Some(p) = r.preferred_reading {
        s += &format!(
            "  preferred reading {p:?} ({} discriminating instances)\n",
            r.discriminating_instances
        );
    }
    if let Some(sel) = r.selected_reading {
        s += &format!("  selected reading {sel:?}\n");
    }
    s += &format!(
        "  {} counterexamples: {}\n",
        r.counterexamples.len(),
        if r.confirmed { "confirmed" } else { "NOT confirmed" }
    );
    s
}

fn verify(a: &VerifyArgs) -> Result<bool, Failure> {
    let th: Theorem = a.theorem.parse().map_err(|e: String| Failure(EXIT_INPUT, e))?;
    let (gmin, gmax) = match &a.girth {
        Some(s) => parse_girth(s).map_err(|e| Failure(EXIT_INPUT, e))?,
        None => default_girths(th),
    };
    let n_max = match (a.max_n, a.above_girth) {
        (Some(n), _) => OrderBound::Absolute(n),
        (None, Some(k)) => OrderBound::AboveGirth(k),
        (None, None) if th == Theorem::CanonicalUnicyclic => OrderBound::AboveGirth(6),
        (None, None) => OrderBound::Absolute(10),
    };
    let constraints = Constraints {
        girth_min: gmin,
        girth_max: gmax,
        n_max,
        cyclomatic_max: a.cyclomatic,
        multiplicity_max: a.multiplicity,
    };
    let run = || verify_theorem(th, &constraints);
    let mut report = match a.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()?
            .install(run)?,
        None => run()?,
    };
    let elapsed = report.elapsed_ms.take();
    if let Some(dir) = &a.dump_dir {
        fs::create_dir_all(dir)?;
        for (i, c) in report.counterexamples.iter().enumerate() {
            let g = c.graph();
            let head = format!("# i- = {}, target {}, predicate {}\n", c.i_minus, c.target, c.predicate);
            fs::write(
                dir.join(format!("counterexample-{i:04}.txt")),
                head + &serialize_edge_list(&g),
            )?;
        }
    }
    let ok = report.confirmed;
    let text = if a.json {
        let mut r = Report::new();
        r.enumeration = Some(report);
        if !a.no_meta {
            r.meta = Some(Meta::now(elapsed));
        }
        r.to_json() + "\n"
    } else {
        summary(&report)
    };
    emit(a.out.as_deref(), &text)?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute {
            path,
            json,
            classify,
            reading,
            no_meta,
        } => compute(path, *json, *classify, (*reading).into(), *no_meta).map(|_| true),
        Command::Generate { family, out } => generate(family, out.as_deref()).map(|_| true),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_COUNTEREXAMPLE),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
