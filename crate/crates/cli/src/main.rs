//! Command-line front-end: one subcommand per verification, with
//! deterministic text or JSON reports and exit codes
//! 0 = verified/computed, 1 = mismatch found, 2 = usage error.

use clap::{Args, Parser, Subcommand};
use minmod_core::characters::{feigin_fuchs, gordon_lhs, gordon_rhs, nahm_refined, ModelParams};
use minmod_core::filtration::{gordon_basis_check, pbw_refined_irr, BigradedTable};
use minmod_core::jets::{freeness_module, freeness_vertexalg, jet_quotient_bigraded, FreenessVerdict};
use minmod_core::modes::vacuum_singular;
use minmod_core::partition::Partition;
use minmod_core::series::restricted_product;
use minmod_core::verma::{ModeContext, ModuleKind, PbwVector};
use minmod_core::Rat;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "minmod", about = "Exact finite-truncation checks for boundary Virasoro minimal models")]
struct Cli {
    /// Output format
    #[arg(long, global = true, default_value = "text", value_parser = ["text", "json"])]
    format: String,
    /// Write the report to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BoundaryArgs {
    #[arg(long)]
    s: u32,
    #[arg(long)]
    i: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the fermionic sum and congruence product sides of the
    /// Andrews-Gordon identity
    Gordon {
        #[command(flatten)]
        si: BoundaryArgs,
        #[arg(long = "N", default_value_t = 20)]
        n_trunc: u32,
    },
    /// Minimal-model character; for p = 2 it is also checked against the
    /// restricted product
    Character {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long = "N", default_value_t = 20)]
        n_trunc: u32,
    },
    /// Length-refined character: Gram-rank oracle vs the Nahm sum
    Refined {
        #[command(flatten)]
        si: BoundaryArgs,
        #[arg(long = "N", default_value_t = 10)]
        n_trunc: u32,
        #[arg(long = "T")]
        t_trunc: Option<u32>,
    },
    /// Weight-by-weight basis verification (Gram block and standard
    /// monomials)
    Basis {
        #[command(flatten)]
        si: BoundaryArgs,
        #[arg(long = "N", default_value_t = 10)]
        n_trunc: u32,
    },
    /// Print the generating singular vector of the vacuum module at
    /// c_{p,q}, re-verified against L_1 and L_2
    Singular {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
    /// Classical freeness of the simple vertex algebra at c_{p,q}
    Freeness {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        #[arg(long = "N", default_value_t = 10)]
        n_trunc: u32,
        #[arg(long = "T")]
        t_trunc: Option<u32>,
    },
    /// Classical freeness of the boundary-model irreducible module
    FreenessModule {
        #[command(flatten)]
        si: BoundaryArgs,
        #[arg(long = "N", default_value_t = 10)]
        n_trunc: u32,
        #[arg(long = "T")]
        t_trunc: Option<u32>,
    },
    /// Bigraded dimensions of the jet quotient of C[x]/(x^t)
    JetDims {
        #[arg(long)]
        t: u32,
        #[arg(long = "N", default_value_t = 10)]
        n_trunc: u32,
        #[arg(long = "T")]
        t_trunc: Option<u32>,
    },
}

#[derive(Serialize, Deserialize)]
struct Truncation {
    #[serde(rename = "T")]
    t: u32,
    #[serde(rename = "N")]
    n: u32,
}

#[derive(Serialize, Deserialize)]
struct Mismatch {
    weight: u32,
    degree: u32,
    lhs: String,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct Report {
    command: String,
    params: BTreeMap<String, String>,
    truncation: Truncation,
    status: String,
    first_mismatch: Option<Mismatch>,
    payload: Option<String>,
    elapsed_ms: u64,
}

impl Report {
    fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for (k, v) in &self.params {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out.push_str(&format!(
            "truncation: T={}, N={}\n",
            self.truncation.t, self.truncation.n
        ));
        out.push_str(&format!("status: {}\n", self.status));
        if let Some(m) = &self.first_mismatch {
            out.push_str(&format!(
                "first mismatch: weight {}, degree {}: {} != {}\n",
                m.weight, m.degree, m.lhs, m.rhs
            ));
        }
        if let Some(p) = &self.payload {
            out.push_str(p);
            if !p.ends_with('\n') {
                out.push('\n');
            }
        }
        out.push_str(&format!("elapsed_ms: {}\n", self.elapsed_ms));
        out
    }
}

fn rat_str(r: &Rat) -> String {
    format!("{r}")
}

fn render_vector(v: &PbwVector) -> String {
    let mut keys: Vec<&Partition> = v.terms.keys().collect();
    keys.sort_by(|a, b| b.pbw_cmp(a));
    let mut out = String::new();
    for (idx, k) in keys.iter().enumerate() {
        let c = v.coeff(k);
        if idx > 0 {
            out.push_str(if c < minmod_core::rational::zero() { " - " } else { " + " });
        }
        let mag = if idx > 0 {
            if c < minmod_core::rational::zero() { -c } else { c }
        } else {
            c
        };
        out.push_str(&format!("{}*{}", rat_str(&mag), k));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn render_table(t: &BigradedTable) -> String {
    let width = 1 + t
        .entries
        .values()
        .map(|d| d.to_string().len())
        .max()
        .unwrap_or(1);
    let mut out = String::from("weight | dims by degree 0..T\n");
    for n in 0..=t.q_trunc {
        out.push_str(&format!("{n:>6} |"));
        for p in 0..=t.t_trunc {
            out.push_str(&format!("{:>width$}", t.get(p, n)));
        }
        out.push('\n');
    }
    out
}

struct Outcome {
    status: &'static str,
    first_mismatch: Option<Mismatch>,
    payload: Option<String>,
}

fn verdict_outcome(v: &FreenessVerdict, table: &BigradedTable) -> Outcome {
    match &v.first_deficit {
        None => Outcome {
            status: "verified",
            first_mismatch: None,
            payload: Some(render_table(table)),
        },
        Some(d) => Outcome {
            status: "mismatch",
            first_mismatch: Some(Mismatch {
                weight: d.weight,
                degree: d.li_degree,
                lhs: d.jet_dim.to_string(),
                rhs: d.gr_dim.to_string(),
            }),
            payload: Some(render_table(table)),
        },
    }
}

fn run(cmd: &Command) -> Result<(String, BTreeMap<String, String>, Truncation, Outcome), String> {
    let mut params = BTreeMap::new();
    match cmd {
        Command::Gordon { si, n_trunc } => {
            if si.i == 0 || si.i > si.s {
                return Err(format!("need 1 <= i <= s, got i={}, s={}", si.i, si.s));
            }
            params.insert("s".into(), si.s.to_string());
            params.insert("i".into(), si.i.to_string());
            let lhs = gordon_lhs(si.s, si.i, *n_trunc);
            let rhs = gordon_rhs(si.s, si.i, *n_trunc);
            let outcome = match lhs.first_mismatch(&rhs) {
                None => Outcome {
                    status: "verified",
                    first_mismatch: None,
                    payload: Some(format!("{lhs}")),
                },
                Some(n) => Outcome {
                    status: "mismatch",
                    first_mismatch: Some(Mismatch {
                        weight: n,
                        degree: 0,
                        lhs: rat_str(lhs.coeff(n)),
                        rhs: rat_str(rhs.coeff(n)),
                    }),
                    payload: None,
                },
            };
            Ok((
                "gordon".into(),
                params,
                Truncation { t: 0, n: *n_trunc },
                outcome,
            ))
        }
        Command::Character { p, q, m, n, n_trunc } => {
            let model = ModelParams::new(*p, *q, *m, *n).map_err(|e| e.to_string())?;
            params.insert("p".into(), p.to_string());
            params.insert("q".into(), q.to_string());
            params.insert("m".into(), m.to_string());
            params.insert("n".into(), n.to_string());
            let ch = feigin_fuchs(*p, *q, *m, *n, *n_trunc).map_err(|e| e.to_string())?;
            let s = (*q - 1) / 2;
            let outcome = if *p == 2 && *n <= s {
                let prod = restricted_product(s, *n, *n_trunc).with_offset(model.h.clone());
                match ch.first_mismatch(&prod) {
                    None => Outcome {
                        status: "verified",
                        first_mismatch: None,
                        payload: Some(format!("{ch}")),
                    },
                    Some(k) => Outcome {
                        status: "mismatch",
                        first_mismatch: Some(Mismatch {
                            weight: k,
                            degree: 0,
                            lhs: rat_str(ch.coeff(k)),
                            rhs: rat_str(prod.coeff(k)),
                        }),
                        payload: None,
                    },
                }
            } else {
                Outcome {
                    status: "verified",
                    first_mismatch: None,
                    payload: Some(format!("{ch}")),
                }
            };
            Ok((
                "character".into(),
                params,
                Truncation { t: 0, n: *n_trunc },
                outcome,
            ))
        }
        Command::Refined { si, n_trunc, t_trunc } => {
            let model = ModelParams::boundary(si.s, si.i).map_err(|e| e.to_string())?;
            params.insert("s".into(), si.s.to_string());
            params.insert("i".into(), si.i.to_string());
            let t = t_trunc.unwrap_or(*n_trunc);
            let oracle = pbw_refined_irr(&model.c, &model.h, t, *n_trunc);
            let series = nahm_refined(si.s, si.i, t, *n_trunc);
            let outcome = match oracle.first_mismatch_vs(&series) {
                None => Outcome {
                    status: "verified",
                    first_mismatch: None,
                    payload: Some(render_table(&oracle)),
                },
                Some((p, n, lhs, rhs)) => Outcome {
                    status: "mismatch",
                    first_mismatch: Some(Mismatch {
                        weight: n,
                        degree: p,
                        lhs: rat_str(&lhs),
                        rhs: rat_str(&rhs),
                    }),
                    payload: None,
                },
            };
            Ok((
                "refined".into(),
                params,
                Truncation { t, n: *n_trunc },
                outcome,
            ))
        }
        Command::Basis { si, n_trunc } => {
            ModelParams::boundary(si.s, si.i).map_err(|e| e.to_string())?;
            params.insert("s".into(), si.s.to_string());
            params.insert("i".into(), si.i.to_string());
            let mut failed = None;
            for n in 0..=*n_trunc {
                if !gordon_basis_check(si.s, si.i, n).map_err(|e| e.to_string())? {
                    failed = Some(n);
                    break;
                }
            }
            let outcome = match failed {
                None => Outcome {
                    status: "verified",
                    first_mismatch: None,
                    payload: Some(format!(
                        "basis verified at every weight 0..={n_trunc}\n"
                    )),
                },
                Some(n) => Outcome {
                    status: "mismatch",
                    first_mismatch: Some(Mismatch {
                        weight: n,
                        degree: 0,
                        lhs: "basis-check failed".into(),
                        rhs: "basis-check expected".into(),
                    }),
                    payload: None,
                },
            };
            Ok((
                "basis".into(),
                params,
                Truncation { t: 0, n: *n_trunc },
                outcome,
            ))
        }
        Command::Singular { p, q } => {
            params.insert("p".into(), p.to_string());
            params.insert("q".into(), q.to_string());
            let a = vacuum_singular(*p, *q).map_err(|e| e.to_string())?;
            let ctx = ModeContext::new(a.c.clone(), minmod_core::rational::zero(), ModuleKind::Vacuum);
            if !ctx.apply(1, &a).is_zero() || !ctx.apply(2, &a).is_zero() {
                return Err("computed vector is not singular".into());
            }
            let weight = (*p - 1) * (*q - 1);
            Ok((
                "singular".into(),
                params,
                Truncation { t: 0, n: weight },
                Outcome {
                    status: "verified",
                    first_mismatch: None,
                    payload: Some(format!("{}\n", render_vector(&a))),
                },
            ))
        }
        Command::Freeness { p, q, n_trunc, t_trunc } => {
            params.insert("p".into(), p.to_string());
            params.insert("q".into(), q.to_string());
            let t = t_trunc.unwrap_or(*n_trunc);
            let v = freeness_vertexalg(*p, *q, t, *n_trunc).map_err(|e| e.to_string())?;
            let exp = (*p - 1) * (*q - 1) / 2;
            let jet = jet_quotient_bigraded(exp, t, *n_trunc);
            Ok((
                "freeness".into(),
                params,
                Truncation { t, n: *n_trunc },
                verdict_outcome(&v, &jet),
            ))
        }
        Command::FreenessModule { si, n_trunc, t_trunc } => {
            params.insert("s".into(), si.s.to_string());
            params.insert("i".into(), si.i.to_string());
            let t = t_trunc.unwrap_or(*n_trunc);
            let v = freeness_module(si.s, si.i, t, *n_trunc).map_err(|e| e.to_string())?;
            let jet = minmod_core::jets::jet_module_bigraded(si.s, si.i, t, *n_trunc)
                .map_err(|e| e.to_string())?;
            Ok((
                "freeness-module".into(),
                params,
                Truncation { t, n: *n_trunc },
                verdict_outcome(&v, &jet),
            ))
        }
        Command::JetDims { t: exp, n_trunc, t_trunc } => {
            params.insert("t".into(), exp.to_string());
            let t = t_trunc.unwrap_or(*n_trunc);
            let table = jet_quotient_bigraded(*exp, t, *n_trunc);
            Ok((
                "jet-dims".into(),
                params,
                Truncation { t, n: *n_trunc },
                Outcome {
                    status: "verified",
                    first_mismatch: None,
                    payload: Some(render_table(&table)),
                },
            ))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, params, truncation, outcome) = match run(&cli.command) {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = Report {
        command,
        params,
        truncation,
        status: outcome.status.into(),
        first_mismatch: outcome.first_mismatch,
        payload: outcome.payload,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let rendered = if cli.format == "json" {
        let mut s = serde_json::to_string_pretty(&report).expect("serializable report");
        s.push('\n');
        s
    } else {
        report.render_text()
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.status == "mismatch" {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
