//! `parcoh`: parabolic cohomology of tuples, braid actions and the scenarios.
//!
//! Exit status: 0 on success or PASS, 1 when a scenario check fails, 2 on usage or
//! input errors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde_json::json;

use parcoh::braidact::{monodromy, tuple_act, BraidWord, MoveSpec};
use parcoh::exactla::{classify_rank2, Vector};
use parcoh::fingrp::{group_closure, GroupFile};
use parcoh::hurworb::{
    braid_orbit, cover_analysis, cusp_generators, enumerate_type, one_line, parse_type, CuspRow,
    OrbitReport,
};
use parcoh::locsys::{expected_dim, GTuple, ParabolicSpace};
use parcoh::scenarios::{scenario_picard, scenario_psl2, Psl2Options, ScenarioReport};

#[derive(Parser)]
#[command(
    name = "parcoh",
    version,
    about = "Parabolic cohomology, braid actions and monodromy"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimensions and bases of H, E and W for a tuple.
    Wg {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply a braid word to a tuple.
    BraidAct {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Monodromy matrices on W for a list of moves.
    Monodromy {
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        moves: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Reduced Nielsen classes of a type, the braid orbit and the cover it defines.
    Orbit {
        #[arg(long)]
        group: PathBuf,
        /// Comma-separated class labels, e.g. 2a0,2a0,3a1,3a2.
        #[arg(long = "type")]
        type_spec: String,
        /// Write the orbit graph in Graphviz format to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        par: Parallel,
    },
    /// End-to-end scenarios.
    Scenario {
        #[command(subcommand)]
        which: Scenario,
    },
}

#[derive(Args, Clone, Copy)]
struct Parallel {
    /// Upper bound on worker threads.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Scenario {
    /// Monodromy of the Picard–Euler family.
    Picard {
        #[arg(long)]
        json: bool,
    },
    /// Orbit, cusp matrices and residual images for PSL₂(7) × Z/3.
    Psl2 {
        #[arg(long, default_value_t = 199)]
        pmax: u64,
        /// Prime for the full residual image check; 0 skips it.
        #[arg(long, default_value_t = 11)]
        full_image_p: u64,
        /// Seed of the factorization PRNG.
        #[arg(long, default_value_t = parcoh::exactnum::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        par: Parallel,
    },
}

/// An input or precondition error, reported with its location.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn pretty(v: &impl serde::Serialize) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn show_vectors(out: &mut String, name: &str, vs: &[Vector]) {
    let _ = writeln!(out, "{name}:");
    for v in vs {
        let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "  ({})", s.join(", "));
    }
}

fn wg(tuple: &Path, as_json: bool) -> Result<String, Failure> {
    let g: GTuple = read_json(tuple)?;
    let sp = ParabolicSpace::new(&g);
    let ed = expected_dim(&g);
    if as_json {
        return pretty(&json!({
            "dim_h": sp.dim_h(),
            "dim_e": sp.dim_e(),
            "dim_w": sp.dim_w(),
            "expected": ed,
            "h_basis": sp.h_basis(),
            "e_basis": sp.e_basis(),
            "w_representatives": sp.representatives(),
        }));
    }
    let mut out = String::new();
    let _ = writeln!(out, "dim H = {}", sp.dim_h());
    let _ = writeln!(out, "dim E = {}", sp.dim_e());
    let _ = writeln!(out, "dim W = {}", sp.dim_w());
    let _ = writeln!(
        out,
        "formula (r-2)*dim V - sum dim Ker(g_i - 1) = {} (kernel dims {:?}; invariants vanish: {})",
        ed.value, ed.kernel_dims, ed.applicable
    );
    show_vectors(&mut out, "H basis", sp.h_basis());
    show_vectors(&mut out, "E basis", sp.e_basis());
    show_vectors(&mut out, "W representatives", sp.representatives());
    Ok(out)
}

fn braid_act(tuple: &Path, word: &str) -> Result<String, Failure> {
    let g: GTuple = read_json(tuple)?;
    let w = BraidWord::parse(word, g.len()).map_err(|e| Failure(format!("--word: {e}")))?;
    pretty(&tuple_act(&g, &w)?)
}

fn run_monodromy(tuple: &Path, moves: &Path, as_json: bool) -> Result<String, Failure> {
    let g: GTuple = read_json(tuple)?;
    let specs: Vec<MoveSpec> = read_json(moves)?;
    let mvs = specs
        .iter()
        .enumerate()
        .map(|(j, s)| {
            s.resolve(&g)
                .map_err(|e| Failure(format!("{}: move {j}: {e}", moves.display())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let sp = ParabolicSpace::new(&g);
    let etas = monodromy(&sp, &mvs)?;
    if as_json {
        return pretty(&etas);
    }
    let mut out = String::new();
    for (j, m) in etas.iter().enumerate() {
        let class = if m.rows() == 2 {
            format!(" [{}]", classify_rank2(m)?)
        } else {
            String::new()
        };
        let _ = writeln!(out, "eta_{}{class}:\n{m}", j + 1);
    }
    Ok(out)
}

fn orbit(
    group: &Path,
    type_spec: &str,
    dot: Option<&Path>,
    as_json: bool,
    threads: usize,
) -> Result<String, Failure> {
    let file: GroupFile = read_json(group)?;
    let g = group_closure(&file.gens, file.bound)
        .map_err(|e| Failure(format!("{}: {e}", group.display())))?;
    let classes = parse_type(&g, type_spec).map_err(|e| Failure(format!("--type: {e}")))?;
    let reduced = classes.len() == 4;
    let all = enumerate_type(&g, &classes, reduced, threads)?;
    let Some(seed) = all.first() else {
        return Err(Failure(format!(
            "--type: no generating tuple of type {type_spec}"
        )));
    };
    let orb = braid_orbit(&g, &seed.rep, reduced)?;
    if let Some(path) = dot {
        std::fs::write(path, orb.to_dot())
            .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    let cover = if orb.deltas.is_some() {
        Some(cover_analysis(&orb)?)
    } else {
        None
    };
    let (cusps, cusp_note) = match orb.deltas.as_ref().map(|_| cusp_generators(&g, &orb)) {
        Some(Ok(cg)) => {
            let rows = (0..cg.words.len())
                .map(|j| CuspRow {
                    width: cg.widths[j],
                    word: cg.words[j].to_string(),
                    braid_word: cg.braid_words[j].to_string(),
                    h: cg.twists[j],
                })
                .collect();
            (rows, None)
        }
        Some(Err(e)) => (vec![], Some(format!("no cusp generators: {e}"))),
        None => (vec![], None),
    };
    let report = OrbitReport {
        size: orb.len(),
        enumerated: all.len(),
        transitive: orb.len() == all.len(),
        generators: orb.beta.iter().map(|p| one_line(p)).collect(),
        cover,
        cusps,
        cusp_note,
    };
    if as_json {
        return pretty(&report);
    }
    let mut out = String::new();
    let _ = writeln!(out, "group order {}", g.order());
    let _ = writeln!(out, "classes of type {type_spec}: {}", report.enumerated);
    let _ = writeln!(
        out,
        "orbit size {} (transitive: {})",
        report.size, report.transitive
    );
    for (i, p) in report.generators.iter().enumerate() {
        let _ = writeln!(out, "b{} = {p}", i + 1);
    }
    if let Some(c) = &report.cover {
        let _ = writeln!(out, "cusps {} with widths {:?}", c.cusps.len(), c.widths());
        let _ = writeln!(out, "genus {}", c.genus);
        let _ = writeln!(
            out,
            "fixed points: d0 {}, d1728 {}",
            c.fixed_points_d0, c.fixed_points_d1728
        );
    }
    if let Some(note) = &report.cusp_note {
        let _ = writeln!(out, "{note}");
    }
    for (j, r) in report.cusps.iter().enumerate() {
        let _ = writeln!(
            out,
            "gamma_{} width {} h {}: {}  ->  {}",
            j + 1,
            r.width,
            r.h,
            r.word,
            r.braid_word
        );
    }
    Ok(out)
}

fn scenario_out(
    rep: &ScenarioReport,
    as_json: bool,
    started: Instant,
) -> Result<(String, bool), Failure> {
    eprintln!("elapsed {:.2}s", started.elapsed().as_secs_f64());
    let text = if as_json {
        pretty(rep)?
    } else {
        rep.to_string()
    };
    Ok((text, rep.passed()))
}

fn dispatch(cmd: Cmd) -> Result<(String, bool), Failure> {
    let ok = |s: String| Ok((s, true));
    match cmd {
        Cmd::Wg { tuple, json } => ok(wg(&tuple, json)?),
        Cmd::BraidAct { tuple, word } => ok(braid_act(&tuple, &word)?),
        Cmd::Monodromy { tuple, moves, json } => ok(run_monodromy(&tuple, &moves, json)?),
        Cmd::Orbit {
            group,
            type_spec,
            dot,
            json,
            par,
        } => ok(orbit(
            &group,
            &type_spec,
            dot.as_deref(),
            json,
            par.threads.max(1),
        )?),
        Cmd::Scenario { which } => {
            let started = Instant::now();
            match which {
                Scenario::Picard { json } => scenario_out(&scenario_picard(), json, started),
                Scenario::Psl2 {
                    pmax,
                    full_image_p,
                    seed,
                    json,
                    par,
                } => {
                    if pmax < 11 {
                        return Err(Failure("--pmax must be at least 11".into()));
                    }
                    if full_image_p != 0 && !parcoh::exactnum::is_prime(full_image_p) {
                        return Err(Failure(format!(
                            "--full-image-p: {full_image_p} is not a prime"
                        )));
                    }
                    let opts = Psl2Options {
                        pmax,
                        full_image_p: (full_image_p != 0).then_some(full_image_p),
                        threads: par.threads.max(1),
                        seed,
                    };
                    scenario_out(&scenario_psl2(&opts), json, started)
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok((text, pass)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
