//! Command-line front end for the mirror-quintic engine.
//!
//! Exit codes: 0 on success / all checks passing, 1 on a check failure,
//! 2 on usage errors.  The `MQE_D5MAX` environment variable overrides the
//! default truncation; `--order N` (a degree bound, `d5max = 5N`) takes
//! precedence over both.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mirror_quintic::amodel::{
    self, check_recursion, extract_mirror_data, AModelError, EquivariantContext,
};
use mirror_quintic::bmodel::{self, derive_pf};
use mirror_quintic::rings::{parse_rational, CohomologySeries, Rational};
use mirror_quintic::sectors::{Sector, Space};
use mirror_quintic::verify;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "mq", about = "Exact mirror-quintic series and operator engine")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List sectors of the ambient (y) or hypersurface (w) orbifold.
    Sectors {
        #[arg(long, default_value = "w")]
        space: String,
        /// Only sectors of this age.
        #[arg(long)]
        age: Option<u32>,
    },
    /// Print the ambient J-series row of a sector.
    Jy {
        #[arg(long)]
        sector: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Print the A-side I-series of a sector.
    Ia {
        #[arg(long)]
        sector: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Print the closed-form B-side I-series of a sector.
    Ib {
        #[arg(long)]
        sector: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Print the normalized hypersurface J-series of a sector.
    Jw {
        #[arg(long)]
        sector: String,
        #[arg(long)]
        order: Option<u32>,
    },
    /// Print the mirror-map data: F0, G0, the G_g, and tau - t.
    MirrorMap {
        #[arg(long)]
        order: Option<u32>,
    },
    /// Picard-Fuchs operators.
    Pf {
        #[command(subcommand)]
        action: PfCmd,
    },
    /// Compare the A- and B-side I-series for every representative shape.
    Compare {
        #[arg(long)]
        order: Option<u32>,
    },
    /// Verification suites.
    Check {
        #[command(subcommand)]
        what: CheckCmd,
    },
    /// Check the equivariant fixed-point recursion for a sector.
    Recursion {
        #[arg(long)]
        sector: String,
        /// Five comma-separated rational weights (default 0,1,2,3,4).
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = 10)]
        cmax: u32,
        /// Seed for retry weights when a configuration is singular.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum PfCmd {
    /// Derive the operator of a sector by period reduction.
    Derive {
        #[arg(long)]
        sector: String,
    },
    /// Derive the operator, match it against its closed form, and check
    /// that it annihilates the B-side I-series.
    Verify {
        #[arg(long)]
        sector: String,
        #[arg(long)]
        order: Option<u32>,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Run every check in the suite.
    All {
        #[arg(long)]
        order: Option<u32>,
    },
}

fn d5max_for(order: Option<u32>) -> u32 {
    if let Some(n) = order {
        return 5 * n;
    }
    if let Ok(v) = std::env::var("MQE_D5MAX") {
        if let Ok(n) = v.parse::<u32>() {
            return n;
        }
        eprintln!("warning: ignoring unparsable MQE_D5MAX={:?}", v);
    }
    50
}

fn parse_sector(s: &str) -> Result<Sector, ExitCode> {
    s.parse::<Sector>().map_err(|e| {
        eprintln!("error: invalid sector {:?}: {}", s, e);
        ExitCode::from(2)
    })
}

fn print_series(format: Format, s: &CohomologySeries) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&s.to_json()).unwrap()),
        Format::Text => {
            for (&(g, d5, p), v) in s.iter() {
                println!("sector={}  d5={}  H^{}:  {}", g, d5, p, v);
            }
        }
    }
}

fn print_reports(format: Format, reports: &[verify::VerificationReport]) -> bool {
    let all_pass = reports.iter().all(|r| r.passed());
    match format {
        Format::Json => {
            let v: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
            println!("{}", serde_json::to_string_pretty(&Value::Array(v)).unwrap());
        }
        Format::Text => {
            for r in reports {
                println!("{}: {}", r.check, if r.passed() { "pass" } else { "FAIL" });
                for m in &r.mismatches {
                    println!("  {}: expected {}, got {}", m.location, m.expected, m.actual);
                }
            }
        }
    }
    all_pass
}

fn series_cmd(
    format: Format,
    sector: &str,
    order: Option<u32>,
    f: impl Fn(&Sector, u32) -> Result<CohomologySeries, String>,
) -> ExitCode {
    let g = match parse_sector(sector) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match f(&g, d5max_for(order)) {
        Ok(s) => {
            print_series(format, &s);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn parse_weights(s: &str) -> Result<[Rational; 5], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 5 {
        return Err(format!("expected 5 comma-separated weights, got {}", parts.len()));
    }
    let mut out = [
        Rational::default(),
        Rational::default(),
        Rational::default(),
        Rational::default(),
        Rational::default(),
    ];
    for (i, p) in parts.iter().enumerate() {
        out[i] = parse_rational(p.trim()).ok_or_else(|| format!("bad weight {:?}", p))?;
    }
    Ok(out)
}

/// Deterministic distinct weights from a seed, for retrying singular
/// configurations.
fn seeded_weights(seed: u64, attempt: u64) -> [Rational; 5] {
    let mut state = seed
        .wrapping_mul(0x9e37_79b9_7f4a_7c15)
        .wrapping_add(attempt);
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 33) as i64
    };
    loop {
        let vals = [0; 5].map(|_| Rational::new((next() % 100_000).into(), (1 + next() % 997).into()));
        let mut sorted = vals.clone();
        sorted.sort();
        if sorted.windows(2).all(|w| w[0] != w[1]) {
            return vals;
        }
    }
}

fn recursion_cmd(
    format: Format,
    sector: &str,
    weights: Option<&str>,
    cmax: u32,
    seed: u64,
) -> ExitCode {
    let g = match parse_sector(sector) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let explicit = weights.is_some();
    let mut lambdas = match weights {
        Some(w) => match parse_weights(w) {
            Ok(l) => l,
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
        },
        None => [0i64, 1, 2, 3, 4].map(|v| Rational::from_integer(v.into())),
    };
    let mut attempt = 0u64;
    loop {
        let outcome = EquivariantContext::new(lambdas.clone())
            .and_then(|ctx| check_recursion(&g, &ctx, cmax));
        match outcome {
            Ok(ok) => {
                let weights_str = lambdas
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                match format {
                    Format::Json => println!(
                        "{}",
                        json!({
                            "check": format!("recursion[{}]", g),
                            "status": if ok { "pass" } else { "fail" },
                            "cmax": cmax,
                            "weights": weights_str,
                        })
                    ),
                    Format::Text => println!(
                        "recursion[{}] cmax={} weights=({}): {}",
                        g,
                        cmax,
                        weights_str,
                        if ok { "pass" } else { "FAIL" }
                    ),
                }
                return if ok { ExitCode::SUCCESS } else { ExitCode::from(1) };
            }
            Err(AModelError::SingularWeights(msg)) if !explicit && attempt < 16 => {
                eprintln!("note: singular weights ({}); retrying with seeded weights", msg);
                attempt += 1;
                lambdas = seeded_weights(seed, attempt);
            }
            Err(e) => {
                eprintln!("error: {}", e);
                return ExitCode::from(2);
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match cli.cmd {
        Cmd::Sectors { space, age } => {
            let space = match space.as_str() {
                "y" => Space::Y,
                "w" => Space::W,
                other => {
                    eprintln!("error: unknown space {:?} (expected y or w)", other);
                    return ExitCode::from(2);
                }
            };
            let sectors: Vec<Sector> = Sector::enumerate(space)
                .into_iter()
                .filter(|g| age.map_or(true, |a| g.age() == a))
                .collect();
            match format {
                Format::Json => {
                    let items: Vec<Value> = sectors
                        .iter()
                        .map(|g| {
                            json!({
                                "sector": g.to_string(),
                                "age": g.age(),
                                "dim": g.dim_in(space),
                            })
                        })
                        .collect();
                    println!("{}", serde_json::to_string_pretty(&Value::Array(items)).unwrap());
                }
                Format::Text => {
                    for g in &sectors {
                        println!(
                            "{}  age={}  dim={}",
                            g,
                            g.age(),
                            g.dim_in(space).expect("enumerated in space")
                        );
                    }
                    println!("total: {}", sectors.len());
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Jy { sector, order } => series_cmd(format, &sector, order, |g, n| {
            amodel::jy(g, n).map_err(|e| e.to_string())
        }),
        Cmd::Ia { sector, order } => series_cmd(format, &sector, order, |g, n| {
            amodel::ia(g, n).map_err(|e| e.to_string())
        }),
        Cmd::Ib { sector, order } => series_cmd(format, &sector, order, |g, n| {
            bmodel::ib(g, n).map_err(|e| e.to_string())
        }),
        Cmd::Jw { sector, order } => series_cmd(format, &sector, order, |g, n| {
            amodel::jw(g, n).map_err(|e| e.to_string())
        }),
        Cmd::MirrorMap { order } => {
            let data = extract_mirror_data(d5max_for(order));
            match format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&data.to_json()).unwrap())
                }
                Format::Text => {
                    println!("F0 = {}", data.f0);
                    println!("G0 = {}", data.g0);
                    for (g, s) in &data.gg {
                        println!("G[{}] = {}", g, s);
                    }
                    println!("tau - t = {}", data.tau);
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Pf { action } => match action {
            PfCmd::Derive { sector } => {
                let g = match parse_sector(&sector) {
                    Ok(g) => g,
                    Err(code) => return code,
                };
                match derive_pf(&g, 6) {
                    Ok(pf) => {
                        match format {
                            Format::Json => println!(
                                "{}",
                                serde_json::to_string_pretty(&pf.to_json()).unwrap()
                            ),
                            Format::Text => {
                                println!("sector: {}", pf.sector);
                                println!("order: {}", pf.order);
                                println!("operator (t): {}", pf.operator_t);
                            }
                        }
                        ExitCode::SUCCESS
                    }
                    Err(e) => {
                        eprintln!("error: {}", e);
                        ExitCode::from(2)
                    }
                }
            }
            PfCmd::Verify { sector, order } => {
                let g = match parse_sector(&sector) {
                    Ok(g) => g,
                    Err(code) => return code,
                };
                let d5max = d5max_for(order);
                match derive_pf(&g, 6) {
                    Ok(pf) => {
                        let reports = vec![
                            verify::match_closed_form(&pf),
                            verify::pf_annihilates(&pf.operator_t, &g, d5max),
                        ];
                        if print_reports(format, &reports) {
                            ExitCode::SUCCESS
                        } else {
                            ExitCode::from(1)
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {}", e);
                        ExitCode::from(2)
                    }
                }
            }
        },
        Cmd::Compare { order } => {
            let d5max = d5max_for(order);
            let reports: Vec<_> = verify::representative_sectors()
                .iter()
                .map(|g| verify::compare_ab(g, d5max))
                .collect();
            if print_reports(format, &reports) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Cmd::Check { what } => match what {
            CheckCmd::All { order } => {
                let reports = verify::run_all(d5max_for(order));
                if print_reports(format, &reports) {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
        },
        Cmd::Recursion {
            sector,
            weights,
            cmax,
            seed,
        } => recursion_cmd(format, &sector, weights.as_deref(), cmax, seed),
    }
}
