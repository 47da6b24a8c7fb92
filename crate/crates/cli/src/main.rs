//! `kq`: catalog queries, K-theoretic Gromov-Witten invariants, verification
//! suites and fibration data from the command line.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use kq_core::bundles::{fibration_data, FibrationData};
use kq_core::catalog::{consistency_report, default_catalog, load_catalog, Catalog, SpaceDescriptor};
use kq_core::charring::LaurentPoly;
use kq_core::ktheory::{for_each_schubert_class, FIXED_POINT_CAP};
use kq_core::qc_evaluator::{invariant_table, invariant_with_cap, parse_label, space_of, InvariantQuery, TableOptions};
use kq_core::root_system::RootSystem;
use kq_core::veronese::dim_identity_check;
use kq_core::weyl::ParabolicSubset;
use kq_core::{KqError, Result};

#[global_allocator]
static GLOBAL: mimalloc::MiMalloc = mimalloc::MiMalloc;

const SCHEMA: &str = "kq/1";

#[derive(Parser)]
#[command(name = "kq", version, about = "K-theoretic quantum-to-classical computations on homogeneous spaces")]
struct Cli {
    /// Catalog file (default: $KQ_CATALOG, else the built-in catalog).
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Format {
    /// Machine-readable JSON output.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Comma-separated output, where tabular.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// The degree table, or the data of one space.
    Catalog {
        #[arg(long)]
        space: Option<String>,
        #[command(flatten)]
        format: Format,
    },
    /// One three-point invariant I_d(a, b, c).
    Invariant {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: u32,
        /// Three comma-separated labels: `pt`, `X` or reduced words like `s1.s3`.
        #[arg(long)]
        labels: String,
        /// Evaluate characters at 1 (non-equivariant invariant).
        #[arg(long)]
        specialize: bool,
        /// Largest number of torus-fixed points per space.
        #[arg(long, default_value_t = FIXED_POINT_CAP)]
        cap: u128,
        #[command(flatten)]
        format: Format,
    },
    /// All invariants of one degree, over label triples in lexicographic order.
    Table {
        #[arg(long)]
        space: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        specialize: bool,
        #[arg(long, default_value_t = FIXED_POINT_CAP)]
        cap: u128,
        /// Largest number of triples; larger tables are refused unless `--sample`.
        #[arg(long, default_value_t = 100_000)]
        limit: usize,
        /// Evaluate a strided sample of at most `--limit` triples.
        #[arg(long)]
        sample: bool,
        #[command(flatten)]
        format: Format,
    },
    /// Runs a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Space for the `chi-unit` suite.
        #[arg(long)]
        space: Option<String>,
        #[arg(long, default_value_t = FIXED_POINT_CAP)]
        cap: u128,
        #[command(flatten)]
        format: Format,
    },
    /// The vector-bundle fibration of G/P defined by Q (JSON).
    Fibration {
        /// Root-system type, e.g. `E6` or `D5`.
        #[arg(long = "type")]
        group: String,
        /// Comma-separated one-based nodes of Sigma(P).
        #[arg(long)]
        sigma_p: String,
        /// The one-based node of Sigma(Q).
        #[arg(long)]
        sigma_q: String,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Suite {
    /// The parameter-count identity over the (a, n, d) grid.
    DimIdentities,
    /// The consistency report of the catalog.
    Consistency,
    /// chi([O_X(w)]) = 1 for every Schubert class of `--space`.
    ChiUnit,
}

/// Output of a command: text for humans, a JSON value, or CSV rows.
struct Output {
    text: String,
    json: Value,
    csv: Option<String>,
}

impl Output {
    fn render(&self, format: Format) -> String {
        if format.json {
            let mut v = self.json.clone();
            if let Value::Object(map) = &mut v {
                map.insert("schema".into(), json!(SCHEMA));
            }
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        } else if format.csv {
            self.csv.clone().unwrap_or_else(|| self.text.clone())
        } else {
            self.text.clone()
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok((text, ok)) => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn open_catalog(path: Option<PathBuf>) -> Result<Catalog> {
    match path.or_else(|| std::env::var_os("KQ_CATALOG").map(PathBuf::from)) {
        Some(p) => load_catalog(&p),
        None => default_catalog(),
    }
}

/// Runs a command; the flag is false when a verification suite failed.
fn run(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Catalog { space, format } => {
            let catalog = open_catalog(cli.catalog)?;
            let out = match space {
                None => catalog_overview(&catalog),
                Some(name) => space_details(&catalog.space(&name)?)?,
            };
            Ok((out.render(format), true))
        }
        Command::Invariant {
            space,
            degree,
            labels,
            specialize,
            cap,
            format,
        } => {
            let labels: Vec<&str> = labels.split(',').collect();
            let [a, b, c] = labels[..] else {
                return Err(KqError::InvalidArgument(format!(
                    "--labels needs three comma-separated labels, got {}",
                    labels.len()
                )));
            };
            let desc = open_catalog(cli.catalog)?.space(&space)?;
            let parsed = [parse_label(&desc, a)?, parse_label(&desc, b)?, parse_label(&desc, c)?];
            desc.degree(degree)?;
            let query = InvariantQuery {
                space: &desc,
                d: degree,
                labels: parsed,
                equivariant: !specialize,
            };
            let value = invariant_with_cap(&query, cap)?;
            let out = Output {
                text: format!("{}\n", show_value(&value, specialize)?),
                json: json!({
                    "space": desc.name,
                    "degree": degree,
                    "labels": [a, b, c],
                    "value": value_json(&value, specialize)?,
                }),
                csv: None,
            };
            Ok((out.render(format), true))
        }
        Command::Table {
            space,
            degree,
            specialize,
            cap,
            limit,
            sample,
            format,
        } => {
            let desc = open_catalog(cli.catalog)?.space(&space)?;
            let opts = TableOptions {
                equivariant: !specialize,
                limit,
                sample,
                cap,
            };
            let table = invariant_table(&desc, degree, &opts)?;
            let names: Vec<String> = table.labels.iter().map(|w| w.word_string()).collect();
            let mut text = String::new();
            let mut csv = String::from("a,b,c,value\n");
            let mut rows = Vec::new();
            for e in &table.entries {
                let [a, b, c] = e.labels.map(|i| names[i].as_str());
                let shown = show_value(&e.value, specialize)?;
                text.push_str(&format!("{a} {b} {c}\t{shown}\n"));
                csv.push_str(&format!("{a},{b},{c},\"{shown}\"\n"));
                rows.push(json!({"labels": [a, b, c], "value": value_json(&e.value, specialize)?}));
            }
            if !table.complete {
                text.push_str(&format!("# sampled {} triples\n", table.entries.len()));
            }
            let out = Output {
                text,
                json: json!({
                    "space": desc.name,
                    "degree": degree,
                    "complete": table.complete,
                    "entries": rows,
                }),
                csv: Some(csv),
            };
            Ok((out.render(format), true))
        }
        Command::Verify {
            suite,
            space,
            cap,
            format,
        } => {
            let (out, ok) = match suite {
                Suite::DimIdentities => verify_dim_identities(),
                Suite::Consistency => verify_consistency(&open_catalog(cli.catalog)?),
                Suite::ChiUnit => {
                    let name = space
                        .ok_or_else(|| KqError::InvalidArgument("the chi-unit suite needs --space".into()))?;
                    verify_chi_unit(&open_catalog(cli.catalog)?.space(&name)?, cap)?
                }
            };
            Ok((out.render(format), ok))
        }
        Command::Fibration { group, sigma_p, sigma_q } => {
            let rs = parse_group(&group)?;
            let p = ParabolicSubset::from_one_based(rs.rank(), &parse_nodes(&sigma_p)?)?;
            let q = ParabolicSubset::from_one_based(rs.rank(), &parse_nodes(&sigma_q)?)?;
            let data = fibration_data(&rs, &p, &q)?;
            Ok((fibration_json(&data), true))
        }
    }
}

fn parse_group(s: &str) -> Result<RootSystem> {
    let s = s.trim();
    let mut chars = s.chars();
    let letter = chars
        .next()
        .ok_or_else(|| KqError::InvalidArgument("empty --type".into()))?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| KqError::InvalidArgument(format!("`{s}` is not a type such as E6 or D5")))?;
    RootSystem::new(letter, rank)
}

fn parse_nodes(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| KqError::InvalidArgument(format!("`{t}` is not a node number")))
        })
        .collect()
}

/// A character as a sorted list of (weight coordinates, coefficient).
fn terms(p: &LaurentPoly) -> Vec<(Vec<i64>, i64)> {
    let mut t: Vec<(Vec<i64>, i64)> = p.terms().map(|(w, c)| (w.0, c)).collect();
    t.sort();
    t
}

fn show_value(p: &LaurentPoly, specialize: bool) -> Result<String> {
    if specialize {
        return Ok(p.evaluate_at_one()?.to_string());
    }
    let parts: Vec<String> = terms(p)
        .into_iter()
        .map(|(w, c)| {
            let coords: Vec<String> = w.iter().map(ToString::to_string).collect();
            format!("(({}), {c})", coords.join(","))
        })
        .collect();
    Ok(format!("[{}]", parts.join(", ")))
}

fn value_json(p: &LaurentPoly, specialize: bool) -> Result<Value> {
    if specialize {
        // Integers beyond 64 bits are written as strings to stay exact.
        let v = p.evaluate_at_one()?;
        return Ok(match i64::try_from(v) {
            Ok(x) => json!(x),
            Err(_) => json!(v.to_string()),
        });
    }
    Ok(json!(terms(p)))
}

fn catalog_overview(catalog: &Catalog) -> Output {
    let mut text = String::new();
    let mut csv = String::from("space,dim,c1,d_max,D_max\n");
    let mut spaces = Vec::new();
    for line in &catalog.table {
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&format!("checksum {}\n", catalog.table_checksum));
    for s in &catalog.spaces {
        csv.push_str(&format!("{},{},{},{},{}\n", s.name, s.dim_x, s.c1, s.d_max, s.d_max_three));
        spaces.push(json!({
            "name": s.name,
            "dim": s.dim_x,
            "c1": s.c1,
            "d_max": s.d_max,
            "D_max": s.d_max_three,
        }));
    }
    let report = consistency_report(catalog);
    let flagged: Vec<Value> = report
        .flagged()
        .iter()
        .map(|i| json!({"space": i.space, "check": i.check, "detail": i.detail}))
        .collect();
    for i in report.flagged() {
        text.push_str(&format!("flagged {}: {}: {}\n", i.space, i.check, i.detail));
    }
    Output {
        text,
        json: json!({
            "table_checksum": catalog.table_checksum,
            "spaces": spaces,
            "flagged": flagged,
        }),
        csv: Some(csv),
    }
}

fn space_details(s: &SpaceDescriptor) -> Result<Output> {
    let mut text = format!(
        "{} ({}, nodes {:?})\ndim {}\nc1 {}\nd_max {}\nD_max {}\n",
        s.name,
        s.rs.cartan_type,
        s.sigma_p.one_based(),
        s.dim_x,
        s.c1,
        s.d_max,
        s.d_max_three
    );
    let mut csv = String::from("d,w_d,sigma_q,homogeneous,provenance\n");
    let mut degrees = Vec::new();
    for (d, data) in &s.degree_data {
        let sigma = data.sigma_q.one_based();
        text.push_str(&format!(
            "d={d} w_d={} Sigma(Q_d)={sigma:?} homogeneous={} [{}]\n",
            data.w_d.word_string(),
            data.zd_homogeneous,
            data.provenance
        ));
        let sigma_s: Vec<String> = sigma.iter().map(ToString::to_string).collect();
        csv.push_str(&format!(
            "{d},{},{},{},{}\n",
            data.w_d.word_string(),
            sigma_s.join(" "),
            data.zd_homogeneous,
            data.provenance
        ));
        degrees.push(json!({
            "d": d,
            "w_d": data.w_d.word_string(),
            "sigma_q": sigma,
            "homogeneous": data.zd_homogeneous,
            "provenance": data.provenance.to_string(),
        }));
    }
    Ok(Output {
        text,
        json: json!({
            "name": s.name,
            "type": s.rs.cartan_type.to_string(),
            "sigma_p": s.sigma_p.one_based(),
            "dim": s.dim_x,
            "c1": s.c1,
            "d_max": s.d_max,
            "D_max": s.d_max_three,
            "degrees": degrees,
        }),
        csv: Some(csv),
    })
}

fn verify_dim_identities() -> (Output, bool) {
    let mut failures = Vec::new();
    let mut cases = 0;
    for a in 1..=8 {
        for n in 2..=12 {
            for d in n..=20 {
                cases += 1;
                if !dim_identity_check(a, n, d) {
                    failures.push(json!([a, n, d]));
                }
            }
        }
    }
    let ok = failures.is_empty();
    let verdict = if ok { "PASS" } else { "FAIL" };
    let out = Output {
        text: format!("{verdict} dim-identities: {} of {cases} cases hold\n", cases - failures.len()),
        json: json!({"suite": "dim-identities", "pass": ok, "cases": cases, "failures": failures}),
        csv: None,
    };
    (out, ok)
}

fn verify_consistency(catalog: &Catalog) -> (Output, bool) {
    let report = consistency_report(catalog);
    let mut text = String::new();
    for i in &report.items {
        let mark = if i.flagged { "FLAG" } else { "ok" };
        text.push_str(&format!("{mark} {}: {}: {}\n", i.space, i.check, i.detail));
    }
    let out = Output {
        text,
        json: json!({"suite": "consistency", "items": report.items}),
        csv: None,
    };
    // Flags are findings about the source table, not failures.
    (out, true)
}

fn verify_chi_unit(desc: &SpaceDescriptor, cap: u128) -> Result<(Output, bool)> {
    let x = space_of(desc, cap)?;
    let mut bad = Vec::new();
    let mut count = 0;
    for_each_schubert_class(&x, |w, class| {
        count += 1;
        if !class.euler_char()?.is_one() {
            bad.push(x.fixed_points()[w].word_string());
        }
        Ok(())
    })?;
    let ok = bad.is_empty();
    let verdict = if ok { "PASS" } else { "FAIL" };
    let out = Output {
        text: format!("{verdict} chi-unit {}: {} of {count} classes have chi = 1\n", desc.name, count - bad.len()),
        json: json!({"suite": "chi-unit", "space": desc.name, "pass": ok, "classes": count, "failures": bad}),
        csv: None,
    };
    Ok((out, ok))
}

fn fibration_json(f: &FibrationData) -> String {
    let mut v = serde_json::to_value(f).expect("fibration data serialises");
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
}
