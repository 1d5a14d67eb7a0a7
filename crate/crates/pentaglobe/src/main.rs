use clap::{Parser, Subcommand};
use pentaglobe::earthmap::{
    build_family_graph, classify_families, enumerate_closed, enumerate_timezone_tilings,
    families_of,
};
use pentaglobe::mesh::{min_timezones, MeshError};
use pentaglobe::neighborhood::{classify_neighborhoods, propagation, PropagationCell};
use pentaglobe::patterns::EdgePattern;
use pentaglobe::render;
use pentaglobe::search::orbit_reduce;
use pentaglobe::verify;
use serde_json::json;
use std::process::ExitCode;

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Enumeration and verification of edge congruent pentagonal earth map
/// tilings of the sphere.
#[derive(Parser)]
#[command(name = "pentaglobe", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the neighborhood tilings of a pattern.
    Neighborhoods {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Print the propagation table of a pattern.
    Propagation {
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Enumerate timezone tilings at a distance.
    Timezones {
        #[arg(long)]
        distance: u8,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "text")]
        format: String,
        /// Report symmetry-reduced representatives instead of raw tilings.
        #[arg(long)]
        up_to_symmetry: bool,
    },
    /// Classify families at a distance.
    Families {
        #[arg(long)]
        distance: u8,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Enumerate all closed earth map labelings directly.
    ClosedEnum {
        #[arg(long)]
        distance: u8,
        #[arg(long)]
        timezones: u32,
        #[arg(long)]
        pattern: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run the full verification suite.
    VerifyAll {
        /// Closed-enumeration bound for the emptiness checks.
        #[arg(long, default_value_t = 6)]
        max_n: u32,
    },
    /// Render a subject as SVG (neighborhoods, timezone tilings) or a family
    /// graph as SVG/DOT.
    Render {
        /// One of: neighborhood, timezone, graph.
        #[arg(long)]
        subject: String,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        distance: Option<u8>,
        #[arg(long, default_value = "svg")]
        format: String,
        /// Index of the neighborhood type or timezone tiling to render.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
}

fn parse_pattern(name: &str) -> Result<EdgePattern, u8> {
    EdgePattern::from_name(name).ok_or_else(|| {
        eprintln!("unknown pattern {name:?}; expected one of a5, a4b, a2b2c, a3bc, a3b2");
        EXIT_USAGE
    })
}

fn check_distance(d: u8) -> Result<(), u8> {
    if (1..=5).contains(&d) {
        Ok(())
    } else {
        eprintln!("distance {d} out of range 1..=5");
        Err(EXIT_USAGE)
    }
}

fn emit(out: &Option<std::path::PathBuf>, content: &str) -> Result<(), u8> {
    match out {
        None => {
            print!("{content}");
            Ok(())
        }
        Some(path) => std::fs::write(path, content).map_err(|e| {
            eprintln!("cannot write {}: {e}", path.display());
            EXIT_IO
        }),
    }
}

fn mesh_error(e: MeshError) -> u8 {
    eprintln!("{e}");
    EXIT_USAGE
}

fn cell_to_string(cell: &PropagationCell) -> String {
    match cell {
        PropagationCell::Blocked => "x".into(),
        PropagationCell::Types(v) => v.join(","),
    }
}

fn labeling_word(lab: &pentaglobe::search::Labeling) -> String {
    lab.labels
        .iter()
        .map(|l| l.map_or('?', |x| x.as_char()))
        .collect()
}

fn labeling_json(lab: &pentaglobe::search::Labeling) -> serde_json::Value {
    let labels: serde_json::Map<String, serde_json::Value> = lab
        .labels
        .iter()
        .enumerate()
        .filter_map(|(e, l)| l.map(|x| (e.to_string(), json!(x.as_char().to_string()))))
        .collect();
    json!({ "pattern": lab.pattern.name(), "labels": labels })
}

fn run(cli: Cli) -> Result<(), u8> {
    match cli.command {
        Command::Neighborhoods { pattern, format } => {
            let pattern = parse_pattern(&pattern)?;
            let types = classify_neighborhoods(pattern);
            match format.as_str() {
                "json" => {
                    let rows: Vec<_> = types
                        .iter()
                        .map(|t| {
                            json!({
                                "type": t.published_label,
                                "multiplicity": t.multiplicity,
                                "forced_vertices": t.forced,
                                "labels": labeling_word(&t.as_drawn),
                            })
                        })
                        .collect();
                    emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()))
                }
                "svg" => {
                    let svgs: Vec<String> = types
                        .iter()
                        .map(|t| render::svg_neighborhood(&t.as_drawn.labels))
                        .collect();
                    emit(&cli.out, &svgs.join("\n"))
                }
                "text" => {
                    let mut s = format!("{} tilings\n", types.len());
                    for t in &types {
                        s.push_str(&format!(
                            "type {:>3}  x{:<2} forced vertices: {:?}\n",
                            t.published_label, t.multiplicity, t.forced
                        ));
                    }
                    emit(&cli.out, &s)
                }
                other => {
                    eprintln!("unsupported format {other:?} for neighborhoods");
                    Err(EXIT_USAGE)
                }
            }
        }
        Command::Propagation { pattern, format } => {
            let pattern = parse_pattern(&pattern)?;
            let table = propagation(pattern);
            match format.as_str() {
                "json" => {
                    let rows: serde_json::Map<String, serde_json::Value> = table
                        .types
                        .iter()
                        .zip(table.rows.iter())
                        .map(|(t, row)| {
                            let cells: Vec<serde_json::Value> = row
                                .iter()
                                .map(|c| match c {
                                    PropagationCell::Blocked => json!("x"),
                                    PropagationCell::Types(v) => json!(v),
                                })
                                .collect();
                            (t.clone(), json!(cells))
                        })
                        .collect();
                    emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()))
                }
                "text" => {
                    let mut s = String::new();
                    for (t, row) in table.types.iter().zip(table.rows.iter()) {
                        let cells: Vec<String> = row.iter().map(cell_to_string).collect();
                        s.push_str(&format!("{t:>4}: {}\n", cells.join(" | ")));
                    }
                    emit(&cli.out, &s)
                }
                other => {
                    eprintln!("unsupported format {other:?} for propagation");
                    Err(EXIT_USAGE)
                }
            }
        }
        Command::Timezones {
            distance,
            pattern,
            format,
            up_to_symmetry,
        } => {
            check_distance(distance)?;
            let pattern = parse_pattern(&pattern)?;
            let tz = enumerate_timezone_tilings(distance, pattern).map_err(mesh_error)?;
            match format.as_str() {
                "json" => {
                    let value = if up_to_symmetry {
                        let reps: Vec<_> = tz
                            .reduced
                            .iter()
                            .map(|r| {
                                json!({
                                    "multiplicity": r.multiplicity,
                                    "labeling": labeling_json(&r.labeling),
                                })
                            })
                            .collect();
                        json!({
                            "distance": distance,
                            "pattern": pattern.name(),
                            "representatives": reps,
                        })
                    } else {
                        let pairs: Vec<_> = tz
                            .by_signature
                            .iter()
                            .map(|((l, r), v)| json!({ "left": l, "right": r, "count": v.len() }))
                            .collect();
                        json!({
                            "distance": distance,
                            "pattern": pattern.name(),
                            "total": tz.raw.len(),
                            "by_signature": pairs,
                        })
                    };
                    emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&value).unwrap()))
                }
                "text" => {
                    let mut s = format!(
                        "{} timezone tilings ({} up to symmetry)\n",
                        tz.raw.len(),
                        tz.reduced.len()
                    );
                    if up_to_symmetry {
                        for r in &tz.reduced {
                            s.push_str(&format!(
                                "x{:<3} {}\n",
                                r.multiplicity,
                                labeling_word(&r.labeling)
                            ));
                        }
                    } else {
                        for ((l, r), v) in &tz.by_signature {
                            s.push_str(&format!("{l} | {r}: {}\n", v.len()));
                        }
                    }
                    emit(&cli.out, &s)
                }
                other => {
                    eprintln!("unsupported format {other:?} for timezones");
                    Err(EXIT_USAGE)
                }
            }
        }
        Command::Families {
            distance,
            pattern,
            format,
        } => {
            check_distance(distance)?;
            let pattern = parse_pattern(&pattern)?;
            match format.as_str() {
                "json" => {
                    let families = classify_families(distance, pattern).map_err(mesh_error)?;
                    let rows: Vec<_> = families
                        .iter()
                        .map(|f| {
                            json!({
                                "nodes": f.nodes,
                                "arrows": f.arrows.len(),
                                "descriptor": f.descriptor,
                            })
                        })
                        .collect();
                    emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&rows).unwrap()))
                }
                "dot" => {
                    let graph = build_family_graph(distance, pattern).map_err(mesh_error)?;
                    emit(&cli.out, &render::dot_family_graph(&graph))
                }
                "text" => {
                    let families = classify_families(distance, pattern).map_err(mesh_error)?;
                    let mut s = format!("{} families\n", families.len());
                    for (i, f) in families.iter().enumerate() {
                        s.push_str(&format!(
                            "family {}: nodes {:?}, {} member arrows, poles {:?}\n",
                            i + 1,
                            f.nodes,
                            f.arrows.len(),
                            f.descriptor
                        ));
                    }
                    emit(&cli.out, &s)
                }
                other => {
                    eprintln!("unsupported format {other:?} for families");
                    Err(EXIT_USAGE)
                }
            }
        }
        Command::ClosedEnum {
            distance,
            timezones,
            pattern,
            format,
        } => {
            check_distance(distance)?;
            let pattern = parse_pattern(&pattern)?;
            if timezones < min_timezones(distance) {
                eprintln!(
                    "timezone count {timezones} below the minimum {} for distance {distance}",
                    min_timezones(distance)
                );
                return Err(EXIT_USAGE);
            }
            let closed = enumerate_closed(distance, timezones, pattern).map_err(mesh_error)?;
            match format.as_str() {
                "json" => {
                    let value = json!({
                        "distance": distance,
                        "timezones": timezones,
                        "pattern": pattern.name(),
                        "raw": closed.raw.len(),
                        "up_to_symmetry": closed.reduced.len(),
                    });
                    emit(&cli.out, &format!("{}\n", serde_json::to_string_pretty(&value).unwrap()))
                }
                "text" => emit(
                    &cli.out,
                    &format!(
                        "{} labelings, {} up to symmetry\n",
                        closed.raw.len(),
                        closed.reduced.len()
                    ),
                ),
                other => {
                    eprintln!("unsupported format {other:?} for closed-enum");
                    Err(EXIT_USAGE)
                }
            }
        }
        Command::VerifyAll { max_n } => {
            let results = verify::run_all(max_n);
            let mut s = String::new();
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.pass;
                s.push_str(&format!(
                    "[{}] {:<26} ({}) {}ms\n    {}\n",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.name,
                    r.reference,
                    r.millis,
                    r.detail
                ));
            }
            s.push_str(&format!(
                "{}/{} checks passed\n",
                results.iter().filter(|r| r.pass).count(),
                results.len()
            ));
            emit(&cli.out, &s)?;
            if all_pass {
                Ok(())
            } else {
                Err(EXIT_MISMATCH)
            }
        }
        Command::Render {
            subject,
            pattern,
            distance,
            format,
            index,
        } => {
            if subject != "graph" && format != "svg" {
                eprintln!("unsupported format {format:?} for {subject}");
                return Err(EXIT_USAGE);
            }
            let content = match subject.as_str() {
                "neighborhood" => {
                    let pattern = parse_pattern(pattern.as_deref().unwrap_or("a2b2c"))?;
                    let types = classify_neighborhoods(pattern);
                    let t = types.get(index).ok_or_else(|| {
                        eprintln!("index {index} out of range ({} types)", types.len());
                        EXIT_USAGE
                    })?;
                    render::svg_neighborhood(&t.as_drawn.labels)
                }
                "timezone" => {
                    let d = distance.ok_or_else(|| {
                        eprintln!("--distance required for timezone rendering");
                        EXIT_USAGE
                    })?;
                    check_distance(d)?;
                    let pattern = parse_pattern(pattern.as_deref().unwrap_or("a4b"))?;
                    let tz = enumerate_timezone_tilings(d, pattern).map_err(mesh_error)?;
                    let reps = orbit_reduce(
                        &tz.raw.iter().map(|t| t.labeling.clone()).collect::<Vec<_>>(),
                        &tz.template.symmetry,
                    );
                    match reps.get(index) {
                        Some(r) => render::svg_timezone(d, &r.labeling.labels, None),
                        None if reps.is_empty() => render::svg_timezone(
                            d,
                            &vec![None; tz.template.fragment.edge_count()],
                            Some("no tilings"),
                        ),
                        None => {
                            eprintln!("index {index} out of range ({} tilings)", reps.len());
                            return Err(EXIT_USAGE);
                        }
                    }
                }
                "graph" => {
                    let d = distance.ok_or_else(|| {
                        eprintln!("--distance required for graph rendering");
                        EXIT_USAGE
                    })?;
                    check_distance(d)?;
                    let pattern = parse_pattern(pattern.as_deref().unwrap_or("a4b"))?;
                    let graph = build_family_graph(d, pattern).map_err(mesh_error)?;
                    let _ = families_of(&graph);
                    if format == "dot" {
                        render::dot_family_graph(&graph)
                    } else {
                        render::svg_family_graph(&graph)
                    }
                }
                other => {
                    eprintln!("unsupported render subject {other:?}");
                    return Err(EXIT_USAGE);
                }
            };
            emit(&cli.out, &content)
        }
    }
}

fn main() -> ExitCode {
    // Cap verification parallelism; enumeration itself is single threaded.
    if let Ok(threads) = std::env::var("PENTAGLOBE_THREADS") {
        if let Ok(threads) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads.max(1))
                .build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => ExitCode::from(code),
    }
}
