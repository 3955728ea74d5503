//! `symwald`: build, cache and verify the group, invariant and Waldschmidt
//! computations from the command line.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use symwald_core::configs::{
    build_config, collinear_triples, dual_planes, incidence, plane_section_geometry, three_point_lines, ConfigName,
};
use symwald_core::graded::{table2_differences, table2_markdown, table2_report, verify_main_theorem, HilbertSeries};
use symwald_core::group::base_point;
use symwald_core::invariants::InvariantName;
use symwald_core::pipeline::{verify_all, Pipeline, Ranges, SCHEMA};
use symwald_core::waldschmidt::{alpha_symbolic_power, f4_reduction_ledger};
use symwald_core::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Parser, Debug)]
#[command(name = "symwald", version, about = "Invariants, bigraded rings and Waldschmidt constants of D4, B4, F4, H4")]
struct Cli {
    /// Directory for cached groups and invariants.
    #[arg(long, global = true, env = "SYMWALD_CACHE_DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads.
    #[arg(long, global = true, env = "SYMWALD_WORKERS", value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,

    /// Largest degree checked (Hilbert series; degree search for `alpha`).
    #[arg(long, global = true, env = "SYMWALD_DMAX", value_parser = clap::value_parser!(u32).range(1..))]
    dmax: Option<u32>,

    /// Largest order checked.
    #[arg(long, global = true, env = "SYMWALD_MMAX", value_parser = clap::value_parser!(u32).range(1..))]
    mmax: Option<u32>,

    /// Largest degree for the rank oracle on the `T` side.
    #[arg(long, global = true, env = "SYMWALD_HEAVY_DMAX", value_parser = clap::value_parser!(u32).range(1..))]
    heavy_dmax: Option<u32>,

    /// Largest multiplicity for interpolation evidence.
    #[arg(long, global = true, env = "SYMWALD_M_CHECK", value_parser = clap::value_parser!(u32).range(1..))]
    m_check: Option<u32>,

    #[arg(long, global = true, env = "SYMWALD_FORMAT", value_enum, default_value = "json")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Orders of W(H4) and W(F4), the stabilizer of p and the orbits.
    Group,
    /// Points, lines and incidences of a configuration.
    Config { name: ConfigName },
    /// Fundamental and derived invariants of W(H4), and their leading forms
    #[command(subcommand)]
    Invariants(InvariantsCmd),
    /// Hilbert series and dimension table of the ring of leading forms
    #[command(subcommand)]
    Gradedring(GradedCmd),
    /// Initial degrees, constant certificates and the F4 reduction
    #[command(subcommand)]
    Waldschmidt(WaldschmidtCmd),
    /// Every acceptance check; exit status 1 on any failure.
    VerifyAll {
        /// Table 2 through m = 30.
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Subcommand, Debug)]
enum InvariantsCmd {
    /// Build and cache the fundamental and derived invariants.
    Build,
    /// Leading forms of the twelve generators at p.
    VerifyTable1,
    /// One invariant as a polynomial in x, y, z, w.
    Show { name: InvariantName },
}

#[derive(Subcommand, Debug)]
enum GradedCmd {
    /// Series, R' and R dimensions on the configured range.
    Hilbert,
    /// Degrees where dim R_{d,m} grows, per order m.
    Table2 {
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Subcommand, Debug)]
enum WaldschmidtCmd {
    /// Least degree of a form vanishing to order m at every point.
    Alpha {
        config: ConfigName,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
    },
    /// Certificate for the Waldschmidt constant.
    Certify { config: ConfigName },
    /// Reduction ledger.
    Ledger {
        #[arg(value_enum, ignore_case = true)]
        config: LedgerConfig,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LedgerConfig {
    F4,
}

/// A rendered command result.
struct Output {
    json: Value,
    markdown: String,
    csv: Option<String>,
    ok: bool,
}

impl Output {
    fn new(command: &str, payload: impl Serialize, markdown: String, ok: bool) -> Self {
        let mut json = json!({ "schema": SCHEMA, "command": command });
        let body = serde_json::to_value(payload).expect("serializable");
        if let (Some(obj), Value::Object(extra)) = (json.as_object_mut(), body) {
            obj.extend(extra);
        }
        Output { json, markdown, csv: None, ok }
    }

    fn with_csv(mut self, csv: String) -> Self {
        self.csv = Some(csv);
        self
    }
}

fn failure_report(command: &str, message: &str) -> String {
    serde_json::to_string_pretty(&json!({ "schema": SCHEMA, "command": command, "passed": false, "error": message }))
        .expect("serializable")
}

fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut s = format!("| {} |\n|{}|\n", header.join(" | "), header.iter().map(|_| "---").collect::<Vec<_>>().join("|"));
    for r in rows {
        s.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    s
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let quote = |f: &String| if f.contains([',', '"']) { format!("\"{}\"", f.replace('"', "\"\"")) } else { f.clone() };
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.iter().map(quote).collect::<Vec<_>>().join(","));
        s.push('\n');
    }
    s
}

fn known_value(c: ConfigName) -> Rational {
    match c {
        ConfigName::D4 | ConfigName::B4 => Rational::from_integer(2.into()),
        ConfigName::F4 => Rational::new(8.into(), 3.into()),
        ConfigName::H4 => Rational::new(18.into(), 5.into()),
    }
}

fn ranges(cli: &Cli) -> Ranges {
    let d = Ranges::default();
    Ranges {
        d_max: cli.dmax.unwrap_or(d.d_max),
        m_max: cli.mmax.unwrap_or(d.m_max),
        heavy_d_max: cli.heavy_dmax.unwrap_or(d.heavy_d_max),
        m_check: cli.m_check.unwrap_or(d.m_check),
    }
}

fn cmd_group(p: &mut Pipeline) -> symwald_core::Result<Output> {
    let h4 = p.h4_group()?.clone();
    let f4 = p.f4_group()?.clone();
    let stab = h4.stabilizer(&base_point());
    let orbit = h4.orbit_projective(&base_point())?;
    let f4_pts = build_config(ConfigName::F4).points;
    let f4_orbits = [f4.orbit_projective(f4_pts[0].coords())?.len(), f4.orbit_projective(f4_pts[12].coords())?.len()];
    let payload = json!({
        "h4": { "order": h4.order(), "stabilizer_order": stab.order(), "projective_orbit": orbit.len() },
        "f4": { "order": f4.order(), "orbit_sizes": f4_orbits },
    });
    let rows = vec![
        vec!["W(H4)".into(), h4.order().to_string()],
        vec!["Stab(p)".into(), stab.order().to_string()],
        vec!["H4 orbit of p".into(), orbit.len().to_string()],
        vec!["W(F4)".into(), f4.order().to_string()],
        vec!["F4 orbits".into(), format!("{} + {}", f4_orbits[0], f4_orbits[1])],
    ];
    Ok(Output::new("group", payload, md_table(&["quantity", "value"], &rows), true).with_csv(csv_table(&["quantity", "value"], &rows)))
}

fn cmd_config(name: ConfigName) -> symwald_core::Result<Output> {
    let c = build_config(name);
    let points: Vec<String> = c.points.iter().map(|p| p.to_string()).collect();
    let lines = if name == ConfigName::F4 { three_point_lines(&c) } else { collinear_triples(&c) };
    let all_lines = collinear_triples(&c);
    let mut payload = json!({
        "config": name.to_string(),
        "size": c.len(),
        "points": points,
        "lines": lines.iter().map(|l| &l.points).collect::<Vec<_>>(),
        "collinear_sets": all_lines.iter().map(|l| &l.points).collect::<Vec<_>>(),
    });
    let mut md = format!("## {name}: {} points\n\n", c.len());
    let rows: Vec<Vec<String>> = points.iter().enumerate().map(|(i, p)| vec![format!("P{}", i + 1), p.clone()]).collect();
    md.push_str(&md_table(&["point", "coordinates"], &rows));
    md.push_str(&format!("\n{} lines with exactly 3 points, {} maximal collinear sets\n", lines.len(), all_lines.len()));
    if name == ConfigName::F4 {
        let inc = incidence(&c.points, &dual_planes(&c));
        let geo = plane_section_geometry()?;
        md.push_str(&format!(
            "\ndual planes per point: {:?}\n\nplane w=0: nu(sigma) = {}, nu(tau) = {}, nu(phi) = {}, Z = {}\n",
            inc.uniform_planes_per_point(),
            geo.nu_sigma,
            geo.nu_tau,
            geo.nu_phi,
            geo.z_points.join(", ")
        ));
        let obj = payload.as_object_mut().expect("object");
        obj.insert("dual_plane_incidence".into(), json!({ "planes_per_point": inc.planes_per_point, "total": inc.total_incidences }));
        obj.insert("plane_section".into(), serde_json::to_value(&geo).expect("serializable"));
    }
    Ok(Output::new("config", payload, md, true).with_csv(csv_table(&["point", "coordinates"], &rows)))
}

fn cmd_invariants(p: &mut Pipeline, cmd: &InvariantsCmd) -> symwald_core::Result<Output> {
    match cmd {
        InvariantsCmd::Build => {
            let mut rows = Vec::new();
            let mut list = Vec::new();
            for name in InvariantName::ALL {
                let f = p.invariant(name)?;
                rows.push(vec![name.to_string(), name.degree().to_string(), name.order().to_string(), f.num_terms().to_string()]);
                list.push(json!({ "name": name.to_string(), "degree": name.degree(), "order": name.order(), "terms": f.num_terms() }));
            }
            let checks = p.fundamentals()?.verify(&symwald_core::group::h4_generators())?;
            let header = ["invariant", "degree", "order at p", "terms"];
            Ok(Output::new("invariants build", json!({ "invariants": list, "checks": checks, "passed": true }), md_table(&header, &rows), true)
                .with_csv(csv_table(&header, &rows)))
        }
        InvariantsCmd::VerifyTable1 => {
            let r = p.table1()?.clone();
            let header = ["f", "(d, m)", "leading form", "scalar", "table expression"];
            let rows: Vec<Vec<String>> = r
                .rows
                .iter()
                .map(|row| {
                    vec![row.name.clone(), format!("({}, {})", row.degree, row.order), row.s_expression.clone(), row.scalar.clone(), row.table_expression.clone()]
                })
                .collect();
            let ok = r.passed;
            Ok(Output::new("invariants verify-table1", &r, md_table(&header, &rows), ok).with_csv(csv_table(&header, &rows)))
        }
        InvariantsCmd::Show { name } => {
            let f = p.invariant(*name)?;
            let text = f.to_text();
            let expression = name.expression().to_text();
            let md = format!("## {name}\n\ndegree {}, order {} at p, {} terms\n\n```\n{text}```\n", name.degree(), name.order(), f.num_terms());
            let payload = json!({
                "name": name.to_string(),
                "degree": name.degree(),
                "order": name.order(),
                "terms": f.num_terms(),
                "expression": expression,
                "polynomial": text,
            });
            Ok(Output::new("invariants show", payload, md, true))
        }
    }
}

fn cmd_graded(p: &mut Pipeline, cmd: &GradedCmd, r: &Ranges) -> symwald_core::Result<Output> {
    let gens = p.generator_set()?;
    match cmd {
        GradedCmd::Hilbert => {
            let mut t = p.t_side()?;
            let rep = verify_main_theorem(&gens, Some(&mut t), r.d_max, r.m_max, r.heavy_d_max)?;
            let series = HilbertSeries::stated().expand(r.d_max, r.m_max)?;
            let mut header: Vec<String> = vec!["d".into()];
            header.extend((0..=r.m_max).map(|m| format!("m={m}")));
            let rows: Vec<Vec<String>> = (0..=r.d_max)
                .step_by(2)
                .map(|d| {
                    let mut row = vec![d.to_string()];
                    row.extend((0..=r.m_max).map(|m| series.get(d, m).to_string()));
                    row
                })
                .collect();
            let h: Vec<&str> = header.iter().map(String::as_str).collect();
            let mut md = format!(
                "series = R' on {} cells, = R on {} cells; passed: {}\n\n",
                rep.cells_checked_rprime, rep.cells_checked_r, rep.passed
            );
            md.push_str(&md_table(&h, &rows));
            let ok = rep.passed;
            Ok(Output::new("gradedring hilbert", &rep, md, ok).with_csv(csv_table(&h, &rows)))
        }
        GradedCmd::Table2 { extended } => {
            let m_max = if *extended { 30 } else { p_mmax(r.m_max) };
            let rows = table2_report(&gens, m_max)?;
            let diffs = table2_differences(&rows);
            let md = table2_markdown(&rows);
            let csv_rows: Vec<Vec<String>> = rows
                .iter()
                .map(|row| {
                    let ds: Vec<String> = row.degrees.iter().zip(&row.generator).map(|(d, g)| if *g { format!("{d}*") } else { d.to_string() }).collect();
                    vec![row.m.to_string(), ds.join(" ")]
                })
                .collect();
            let ok = diffs.is_empty();
            Ok(Output::new("gradedring table2", json!({ "m_max": m_max, "rows": rows, "differences": diffs, "passed": ok }), md, ok)
                .with_csv(csv_table(&["m", "degrees"], &csv_rows)))
        }
    }
}

/// Table 2 rows are even; odd requests round down.
fn p_mmax(m: u32) -> u32 {
    m - m % 2
}

fn cmd_waldschmidt(p: &mut Pipeline, cmd: &WaldschmidtCmd, cli: &Cli, r: &Ranges) -> symwald_core::Result<Output> {
    match cmd {
        WaldschmidtCmd::Alpha { config, m } => {
            let c = build_config(*config);
            let bound = known_value(*config) * Rational::from_integer((*m).into());
            let default_dmax = bound.ceil().to_integer().try_into().unwrap_or(u32::MAX);
            let d_max = cli.dmax.unwrap_or(default_dmax);
            let res = alpha_symbolic_power(&c.points, *m, d_max);
            let header = ["degree", "nullity"];
            let rows: Vec<Vec<String>> = res.nullities.iter().map(|(d, k)| vec![d.to_string(), k.to_string()]).collect();
            let md = format!(
                "alpha(I^({m})) for {config}: {}\n\n{}",
                res.alpha.map_or(format!("> {d_max}"), |a| a.to_string()),
                md_table(&header, &rows)
            );
            Ok(Output::new("waldschmidt alpha", json!({ "config": config.to_string(), "result": res }), md, true).with_csv(csv_table(&header, &rows)))
        }
        WaldschmidtCmd::Certify { config } => {
            let cert = p.certificate(*config, r.m_check)?;
            let mut md = format!(
                "## {}: {}/{}\n\nupper: {} (degree {}, multiplicity {})\n\nlower: {} [{}]\n\n",
                cert.config, cert.value_num, cert.value_den, cert.upper.witness, cert.upper.degree, cert.upper.multiplicity, cert.lower.method, cert.lower.class
            );
            let rows: Vec<Vec<String>> = cert.evidence.iter().map(|e| vec![e.kind.clone(), e.description.clone(), e.passed.to_string()]).collect();
            md.push_str(&md_table(&["kind", "evidence", "passed"], &rows));
            let ok = cert.passed();
            Ok(Output::new("waldschmidt certify", &cert, md, ok).with_csv(csv_table(&["kind", "evidence", "passed"], &rows)))
        }
        WaldschmidtCmd::Ledger { config: LedgerConfig::F4 } => {
            let l = f4_reduction_ledger()?;
            let rows: Vec<Vec<String>> = l.steps.iter().map(|s| vec![s.statement.clone(), s.holds.to_string()]).collect();
            let md = format!("terminal nu(Sigma) = {}\n\n{}", l.terminal, md_table(&["step", "holds"], &rows));
            let ok = l.passed;
            Ok(Output::new("waldschmidt ledger", &l, md, ok).with_csv(csv_table(&["step", "holds"], &rows)))
        }
    }
}

fn cmd_verify_all(p: &mut Pipeline, r: &Ranges, extended: bool) -> symwald_core::Result<Output> {
    let rep = verify_all(p, r, if extended { 30 } else { 18 })?;
    let rows: Vec<Vec<String>> = rep
        .criteria
        .iter()
        .map(|c| vec![c.id.to_string(), c.name.clone(), if c.passed { "pass".into() } else { "FAIL".into() }, format!("{:.1}", c.seconds)])
        .collect();
    let header = ["criterion", "name", "result", "seconds"];
    let ok = rep.passed;
    Ok(Output::new("verify-all", &rep, md_table(&header, &rows), ok).with_csv(csv_table(&header, &rows)))
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(s: &str) -> io::Result<()> {
    match io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => r,
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Group => "group",
        Command::Config { .. } => "config",
        Command::Invariants(_) => "invariants",
        Command::Gradedring(_) => "gradedring",
        Command::Waldschmidt(_) => "waldschmidt",
        Command::VerifyAll { .. } => "verify-all",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global() {
            eprintln!("warning: could not set worker count: {e}");
        }
    }
    let r = ranges(&cli);
    let mut p = Pipeline::new(cli.cache_dir.clone());
    let name = command_name(&cli.command);
    let result = match &cli.command {
        Command::Group => cmd_group(&mut p),
        Command::Config { name } => cmd_config(*name),
        Command::Invariants(c) => cmd_invariants(&mut p, c),
        Command::Gradedring(c) => cmd_graded(&mut p, c, &r),
        Command::Waldschmidt(c) => cmd_waldschmidt(&mut p, c, &cli, &r),
        Command::VerifyAll { extended } => cmd_verify_all(&mut p, &r, *extended),
    };
    for w in &p.warnings {
        eprintln!("warning: {w}");
    }
    let out = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = emit(&format!("{}\n", failure_report(name, &e.to_string())));
            return ExitCode::from(1);
        }
    };
    let text = match cli.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable")),
        Format::Markdown => out.markdown.clone(),
        Format::Csv => match &out.csv {
            Some(s) => s.clone(),
            None => {
                eprintln!("error: csv output is not available for this command");
                return ExitCode::from(2);
            }
        },
    };
    if let Err(e) = emit(&text) {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    if out.ok {
        ExitCode::SUCCESS
    } else {
        if cli.format != Format::Json {
            eprintln!("{}", failure_report(name, "verification failed"));
        }
        ExitCode::from(1)
    }
}
