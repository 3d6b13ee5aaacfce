use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use orbifolder::catalog::{self, FixtureSpec};
use orbifolder::exact::{format_rational, parse_rational};
use orbifolder::isometry::{Fixture, Isometry};
use orbifolder::lattice::Lattice;
use orbifolder::orbifold::{self, OrbifoldReport};
use orbifolder::search::{self, Execution, SearchOptions, SearchResult};
use orbifolder::{IntMatrix, Rational};

#[derive(Parser)]
#[command(name = "orbifolder", version, about = "Short automorphisms of Niemeier lattice VOAs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect the Niemeier lattices and the eleven Frame-shape families
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Analyse one automorphism given as a JSON spec
    Analyze {
        spec: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Find the short automorphisms lifting a fixture isometry
    Search(SearchArgs),
    /// Compare searches with the tabulated class counts
    #[command(subcommand)]
    Table(TableCmd),
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        #[arg(long)]
        json: bool,
    },
    Info {
        label: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    lattice: String,
    /// Fixture name (see `catalog list`) or path to a fixture JSON file
    #[arg(long)]
    fixture: String,
    /// JSON file with a list of extra centraliser matrices
    #[arg(long)]
    dedup_gens: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially
    #[arg(long)]
    jobs: Option<usize>,
    /// Also write the JSON result to this file
    #[arg(long)]
    results: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum TableCmd {
    Reproduce {
        #[arg(long)]
        family: String,
        /// Comma-separated column keys or lattice labels
        #[arg(long, value_delimiter = ',')]
        cells: Option<Vec<String>>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

/// Failure categories mapped to exit codes.
enum Failure {
    /// Exit 1: the computation ran but disagrees with the tables.
    Mismatch(String),
    /// Exit 2: invalid input.
    Input(String),
}

impl From<orbifolder::Error> for Failure {
    fn from(e: orbifolder::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Catalog(CatalogCmd::List { json }) => catalog_list(json),
        Command::Catalog(CatalogCmd::Info { label, json }) => catalog_info(&label, json),
        Command::Analyze { spec, json } => analyze(&spec, json),
        Command::Search(args) => run_search(&args),
        Command::Table(TableCmd::Reproduce { family, cells, jobs, json }) => table(&family, cells, jobs, json),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(m)) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(v: &T) -> Outcome {
    let s = serde_json::to_string_pretty(v).map_err(|e| Failure::Input(e.to_string()))?;
    println!("{s}");
    Ok(())
}

fn execution(jobs: Option<usize>) -> Execution {
    match jobs {
        Some(1) => Execution::Sequential,
        Some(k) => Execution::Parallel { jobs: k },
        None => Execution::default(),
    }
}

fn catalog_list(as_json: bool) -> Outcome {
    let mut lattices = Vec::new();
    for label in catalog::niemeier_labels() {
        let n = catalog::niemeier(&label)?;
        lattices.push(json!({
            "label": label,
            "root_system": catalog::format_root_system(&n.roots.components),
            "roots": n.roots.roots.len(),
        }));
    }
    let families: Vec<Value> = catalog::frame_classes()?
        .iter()
        .map(|c| {
            json!({
                "family": c.family.to_string(),
                "frame_shape": c.frame_shape.to_string(),
                "order": c.order,
                "order_doubling": c.order_doubling,
                "genus": c.genus,
                "class_number": c.class_number,
                "voa_count": c.voa_count,
            })
        })
        .collect();
    let fixtures = catalog::fixture_names()?;
    if as_json {
        return print_json(&json!({ "lattices": lattices, "families": families, "fixtures": fixtures }));
    }
    for l in &lattices {
        println!("{:<4} {:<12} {:>5} roots", l["label"].as_str().unwrap_or(""), l["root_system"].as_str().unwrap_or(""), l["roots"]);
    }
    println!();
    for f in &families {
        println!(
            "{} {:<16} order {:>2} doubling {:<5} VOAs {}",
            f["family"].as_str().unwrap_or(""),
            f["frame_shape"].as_str().unwrap_or(""),
            f["order"],
            f["order_doubling"],
            f["voa_count"]
        );
    }
    println!();
    println!("fixtures: {}", fixtures.join(", "));
    Ok(())
}

fn catalog_info(label: &str, as_json: bool) -> Outcome {
    let n = catalog::niemeier(label)?;
    let l = &n.lattice;
    let disc = l.discriminant_group();
    let gram: Vec<Vec<String>> = (0..l.rank()).map(|i| l.gram().row(i).iter().map(|x| x.to_string()).collect()).collect();
    let info = json!({
        "label": label,
        "rank": l.rank(),
        "det": l.det().to_string(),
        "even": (0..l.rank()).all(|i| l.gram()[(i, i)].clone() % 2 == 0.into()),
        "discriminant_group": disc.divisors.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
        "root_system": catalog::format_root_system(&n.roots.components),
        "roots": n.roots.roots.len(),
        "gram": gram,
    });
    if as_json {
        return print_json(&info);
    }
    println!("lattice      {label}");
    println!("rank         {}", l.rank());
    println!("det          {}", l.det());
    println!("discriminant {}", if disc.divisors.is_empty() { "trivial".to_string() } else { format!("{:?}", info["discriminant_group"]) });
    println!("root system  {}", info["root_system"].as_str().unwrap_or(""));
    println!("roots        {}", n.roots.roots.len());
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn int_matrix(v: &Value, what: &str) -> Result<IntMatrix, Failure> {
    let rows = v.as_array().ok_or_else(|| Failure::Input(format!("{what} must be an array of rows")))?;
    let mut out = Vec::new();
    for r in rows {
        let r = r.as_array().ok_or_else(|| Failure::Input(format!("{what} must be an array of rows")))?;
        let mut row = Vec::new();
        for x in r {
            let s = match x {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(Failure::Input(format!("{what}: entries must be integers"))),
            };
            row.push(s.parse().map_err(|_| Failure::Input(format!("{what}: bad integer {s}")))?);
        }
        out.push(row);
    }
    Ok(IntMatrix::from_rows(&out))
}

fn rational_vec(v: &Value, what: &str) -> Result<Vec<Rational>, Failure> {
    let items = v.as_array().ok_or_else(|| Failure::Input(format!("{what} must be an array")))?;
    items
        .iter()
        .map(|x| {
            let s = match x {
                Value::Number(n) => n.to_string(),
                Value::String(s) => s.clone(),
                _ => String::new(),
            };
            parse_rational(&s).ok_or_else(|| Failure::Input(format!("{what}: bad rational {x}")))
        })
        .collect()
}

/// Spec format: `{"lattice": label}` or `{"gram": [[..]]}`, an optional
/// `"matrix"` (identity when absent), and an optional `"h"` (zero when
/// absent), with rationals as numbers or `"p/q"` strings.
fn analyze(path: &Path, as_json: bool) -> Outcome {
    let spec = read_json(path)?;
    let (lattice, roots, label) = if let Some(label) = spec.get("lattice").and_then(Value::as_str) {
        let n = catalog::niemeier(label)?;
        (n.lattice.clone(), Some(n.roots.clone()), Some(label.to_string()))
    } else if let Some(g) = spec.get("gram") {
        (Lattice::new(int_matrix(g, "gram")?, None)?, None, None)
    } else {
        return Err(Failure::Input("spec needs \"lattice\" or \"gram\"".into()));
    };
    let nu = match spec.get("matrix") {
        Some(m) => Isometry::new(lattice.clone(), int_matrix(m, "matrix")?)?,
        None => Isometry::identity(lattice.clone()),
    };
    let h = match spec.get("h") {
        Some(h) => rational_vec(h, "h")?,
        None => vec![Rational::from_integer(0.into()); lattice.rank()],
    };
    if h.len() != lattice.rank() {
        return Err(Failure::Input(format!("h has length {}, lattice rank {}", h.len(), lattice.rank())));
    }
    if !nu.fixes(&h) {
        return Err(Failure::Input("h not fixed by the isometry".into()));
    }
    if !lattice.is_unimodular() {
        return Err(Failure::Input("the lattice must be unimodular".into()));
    }
    let report = orbifold::analyze(nu, h, roots, label)?;
    if as_json {
        return print_json(&report);
    }
    print_report(&report);
    Ok(())
}

fn print_report(r: &OrbifoldReport) {
    let weights: Vec<String> = r.conformal_weights.iter().map(|w| format_rational(&w.rho)).collect();
    let dims: Vec<String> = r.fixed_dims.iter().map(|f| format!("{}:{}", f.power, f.dim)).collect();
    println!("frame shape    {}", r.frame_shape);
    println!("order          {} (ν has order {}{})", r.order, r.nu_order, if r.order_doubling { ", doubling" } else { "" });
    println!("type           {}", r.type_residue);
    println!("vacuum anomaly {}", format_rational(&r.vacuum_anomaly));
    println!("weights ρ      [{}]", weights.join(", "));
    println!("fixed dims     [{}]", dims.join(", "));
    println!("short          {}{}", r.short.is_short, if r.short.reasons.is_empty() { String::new() } else { format!(" ({})", r.short.reasons.join("; ")) });
    println!("gdh            {}", r.gdh_certificate);
    println!("orbifold       dim {} rank {}", r.orbifold_dim, r.orbifold_rank.map_or("?".to_string(), |k| k.to_string()));
    match (r.identification.resolved, &r.identification.lie) {
        (Some(e), Some(lie)) => println!("entry          {e} ({lie}, {})", r.identification.method),
        _ => println!("candidates     {:?}", r.identification.candidates),
    }
}

// ---------------------------------------------------------------------------
// search

fn load_fixture(lattice: &str, name: &str) -> Result<Fixture, Failure> {
    let p = Path::new(name);
    let spec = if p.extension().is_some_and(|e| e == "json") || p.exists() {
        let text = std::fs::read_to_string(p).map_err(|e| Failure::Input(format!("{name}: {e}")))?;
        let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        FixtureSpec::from_json(&stem, &text)?
    } else if name == "identity" {
        return Ok(Fixture::identity(lattice)?);
    } else {
        catalog::fixture(name)?
    };
    if spec.lattice != lattice {
        return Err(Failure::Input(format!("fixture is for lattice {}, not {lattice}", spec.lattice)));
    }
    Ok(Fixture::from_spec(spec)?)
}

fn run_search(args: &SearchArgs) -> Outcome {
    let fixture = load_fixture(&args.lattice, &args.fixture)?;
    let mut gens = Vec::new();
    if let Some(path) = &args.dedup_gens {
        let v = read_json(path)?;
        let items = v.as_array().ok_or_else(|| Failure::Input("dedup generators must be a list of matrices".into()))?;
        for m in items {
            gens.push(Isometry::new(fixture.niemeier.lattice.clone(), int_matrix(m, "generator")?)?);
        }
    }
    let options = SearchOptions { execution: execution(args.jobs), dedup_generators: gens };
    let result = search::find_short(&fixture, &options)?;
    let comparison = compare(&fixture, &result)?;
    let out = json!({ "result": result, "comparison": comparison });
    if let Some(path) = &args.results {
        let s = serde_json::to_string_pretty(&out).map_err(|e| Failure::Input(e.to_string()))?;
        std::fs::write(path, s + "\n").map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if args.json {
        print_json(&out)?;
    } else {
        print_search(&result, &comparison);
    }
    match comparison.get("ok").and_then(Value::as_bool) {
        Some(false) => Err(Failure::Mismatch(format!("{} does not match the tables", fixture.spec.name))),
        _ => Ok(()),
    }
}

fn compare(fixture: &Fixture, result: &SearchResult) -> Result<Value, Failure> {
    let Some(family) = fixture.family() else { return Ok(json!({ "covered": false })) };
    let table = catalog::golden_table(family)?;
    let column = fixture.spec.column.clone().unwrap_or_else(|| fixture.spec.lattice.clone());
    if table.column_index(&column).is_none() {
        return Ok(json!({ "covered": false }));
    }
    let hits = table.cell(&column)?;
    let expected: usize = hits.iter().map(|h| h.multiplicity as usize).sum();
    let expected_entries: Vec<u32> = hits.iter().map(|h| h.entry).collect();
    let found: Vec<Option<u32>> =
        search::classes_by_fingerprint(result).iter().map(|c| c.report.identification.resolved).collect();
    let entries_ok = found.iter().all(|e| e.is_some_and(|e| expected_entries.contains(&e)))
        && expected_entries.iter().all(|e| found.contains(&Some(*e)));
    let ok = result.count.matches(expected) && entries_ok;
    Ok(json!({
        "covered": true,
        "family": family.to_string(),
        "column": column,
        "expected_count": expected,
        "expected_entries": expected_entries,
        "found_entries": found,
        "ok": ok,
    }))
}

fn print_search(r: &SearchResult, cmp: &Value) {
    println!("{} on {}: Frame shape {} (order {})", r.fixture, r.lattice, r.frame_shape, r.order);
    println!(
        "candidates {}  coset order {}  order {}  type 0 {}",
        r.filters.candidates, r.filters.coset_order, r.filters.order, r.filters.type_zero
    );
    let status = if r.count.exact { "exact".to_string() } else { format!("bounds {}..{}", r.count.lower, r.count.upper) };
    println!("classes {} ({status})", r.count.upper);
    for c in search::classes_by_fingerprint(r) {
        let f = &c.report.fingerprint;
        println!(
            "  entry {:<4} {:<20} dim {:<4} fixed dim {:<4} orbit size {}",
            c.report.identification.resolved.map_or("?".into(), |e| e.to_string()),
            c.report.identification.lie.clone().unwrap_or_default(),
            c.report.orbifold_dim,
            f.fixed_dim,
            c.orbit_size
        );
    }
    if cmp["covered"].as_bool() == Some(true) {
        println!(
            "table {} column {}: expected {} class(es) {}, {}",
            cmp["family"].as_str().unwrap_or(""),
            cmp["column"].as_str().unwrap_or(""),
            cmp["expected_count"],
            cmp["expected_entries"],
            if cmp["ok"].as_bool() == Some(true) { "match" } else { "MISMATCH" }
        );
    }
}

// ---------------------------------------------------------------------------
// table

fn table(family: &str, cells: Option<Vec<String>>, jobs: Option<usize>, as_json: bool) -> Outcome {
    let mut chars = family.chars();
    let (Some(f), None) = (chars.next(), chars.next()) else {
        return Err(Failure::Input(format!("unknown family {family}")));
    };
    let f = f.to_ascii_uppercase();
    if !catalog::FAMILIES.contains(&f) {
        return Err(Failure::Input(format!("unknown family {family}")));
    }
    let report = search::reproduce_table(f, cells.as_deref(), execution(jobs))?;
    if as_json {
        print_json(&report)?;
    } else {
        for c in &report.cells {
            let count = c.count.as_ref().map_or("-".into(), |k| {
                if k.exact {
                    k.upper.to_string()
                } else {
                    format!("{}..{}", k.lower, k.upper)
                }
            });
            println!(
                "{:<6} {:<7} expected {:<2} found {:<6} {}",
                c.column,
                c.status,
                c.expected_count,
                count,
                c.notes.join("; ")
            );
        }
        println!("{}: {} pass, {} fail, {} skipped", report.family, report.passed, report.failed, report.skipped);
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} cell(s) failed", report.failed)))
    }
}
