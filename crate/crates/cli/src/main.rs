//! Batch command-line surface for the weilrep engine: verification suites
//! and tables with machine-readable JSON output.
//!
//! Every subcommand prints one JSON document (schema 1) to stdout and exits
//! 0 when all asserted properties pass, 1 on a property failure (with a
//! reproducer seed in the report), 2 on invalid configuration. Exact scalars
//! are emitted as fraction strings or residue integers, never floats.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use weilrep_core::coeff::{CoeffField, CoeffMode, CoeffScalar};
use weilrep_core::field::{Field, Rat};
use weilrep_core::finitefield::{AdditiveCharacter, FqField};
use weilrep_core::heisenberg::{commutant_dim, induced_rep_multiplicity, Heisenberg, SchrodingerModel};

use weilrep_core::matrix::Matrix;
use weilrep_core::padic::{
    cocycle_identity_check, hilbert_symbol, omega_factor, splitting_census, LocalField,
    SquareClass,
};
use weilrep_core::rng::SplitMix64;
use weilrep_core::symplectic::random_sp;
use weilrep_core::theta::theta_table;
use weilrep_core::weil::{cocycle_extract, enumerate_sp_group, weil_character, WeilContext};

#[derive(Parser)]
#[command(name = "weilrep", version, about = "exact Weil-representation verification suites")]
struct Cli {
    /// Write the JSON document to this path as well as stdout. Relative
    /// paths resolve against WEILREP_OUT_DIR when that variable is set.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CoeffArgs {
    /// Coefficient mode: char0 (cyclotomic) or charl (finite extension of F_l)
    #[arg(long, default_value = "char0")]
    mode: String,
    /// l for charl mode
    #[arg(long)]
    ell: Option<u64>,
}

impl CoeffArgs {
    fn mode(&self) -> Result<CoeffMode, String> {
        match self.mode.as_str() {
            "char0" => Ok(CoeffMode::Char0),
            "charl" => self
                .ell
                .map(CoeffMode::CharL)
                .ok_or_else(|| "charl mode needs --ell".into()),
            other => Err(format!("unknown coefficient mode '{other}'")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Stone-von Neumann checks: Schur commutant and induced multiplicity
    SvnCheck {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[command(flatten)]
        coeff: CoeffArgs,
    },
    /// Character table of the Weil representation of Sp(2m, F_q)
    WeilChar {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Cocycle audits: finite-field multiplicativity or p-adic identity
    CocycleAudit {
        /// finite-field multiplicativity of the normalized section
        #[arg(long, conflicts_with = "padic")]
        finite: bool,
        /// p-adic 2-cocycle identity for the closed formula
        #[arg(long)]
        padic: bool,
        /// prime (residual characteristic); or give --q for finite audits
        #[arg(long, required_unless_present = "q")]
        p: Option<u64>,
        /// finite field size q = p^k, alternative to --p/--k
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        pairs: u32,
        #[arg(long, default_value_t = 100)]
        triples: u32,
        /// randomized suites require an explicit seed
        #[arg(long)]
        seed: u64,
        #[command(flatten)]
        coeff: CoeffArgs,
    },
    /// Hilbert symbol (a, b) over Q_p
    Hilbert {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// Non-normalized Weil factor Omega(psi . a x^2) at a truncation level
    Omega {
        #[arg(long)]
        p: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = 0)]
        level: i64,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Exhaustive parabolic splitting census over Q_p (p odd)
    SplittingCensus {
        #[arg(long)]
        p: u64,
    },
    /// Theta table of a rank-1 type-I dual pair, e.g. --pair sp2-o1:a=1
    Theta {
        #[arg(long)]
        q: u64,
        #[arg(long, default_value = "sp2-o1:a=1")]
        pair: String,
    },
}

fn scalar_json(x: &CoeffScalar) -> Value {
    json!({
        "coords": x.coord_strings(),
        "basis": "ascending powers of zeta_N",
        "conductor": x.field().conductor(),
    })
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    Rat::from_str(s).map_err(|e| format!("invalid rational '{s}': {e}"))
}

fn run(cli: &Cli) -> Result<(Value, bool), String> {
    match &cli.command {
        Command::SvnCheck { p, k, m, coeff } => {
            let mode = coeff.mode()?;
            let fq = FqField::new(*p, *k).map_err(|e| format!("{e:?}"))?;
            let cf = CoeffField::make_field(*p, *p, mode).map_err(|e| format!("{e:?}"))?;
            let psi = AdditiveCharacter::new(&fq, &cf);
            let h = Heisenberg::new(&fq, *m);
            let model = SchrodingerModel::new(&h, &psi);
            let gens: Vec<Matrix<CoeffScalar>> =
                h.generators().iter().map(|g| model.action(g)).collect();
            let cdim = commutant_dim(&gens);
            let mult = induced_rep_multiplicity(&h, &psi);
            let expected = (fq.q() as usize).pow(*m as u32);
            let pass = cdim == 1 && mult == expected;
            Ok((
                json!({
                    "commutant_dim": cdim,
                    "induced_multiplicity": mult,
                    "expected_multiplicity": expected,
                    "model_dim": model.dim(),
                }),
                pass,
            ))
        }
        Command::WeilChar { p, k, m } => {
            let fq = FqField::new(*p, *k).map_err(|e| format!("{e:?}"))?;
            let cf = CoeffField::make_field(*p, *p, CoeffMode::Char0).map_err(|e| format!("{e:?}"))?;
            let psi = AdditiveCharacter::new(&fq, &cf);
            let h = Heisenberg::new(&fq, *m);
            let ctx = WeilContext::new(&SchrodingerModel::new(&h, &psi));
            let group = enumerate_sp_group(&fq, *m, 1_000_000).map_err(|e| format!("{e:?}"))?;
            let chi = weil_character(&ctx, &group).map_err(|e| format!("{e:?}"))?;
            let classes: Vec<Value> = chi
                .class_reps
                .iter()
                .zip(chi.class_sizes.iter())
                .zip(chi.traces.iter())
                .map(|((rep, size), tr)| {
                    let g = &group[*rep];
                    let entries: Vec<Vec<Vec<u64>>> = (0..g.rows())
                        .map(|r| {
                            (0..g.cols())
                                .map(|c| g.at(r, c).coords().to_vec())
                                .collect()
                        })
                        .collect();
                    json!({
                        "representative": entries,
                        "class_size": size,
                        "trace": scalar_json(tr),
                    })
                })
                .collect();
            Ok((
                json!({
                    "group_order": group.len(),
                    "classes": classes,
                    "character_norm": scalar_json(&chi.norm),
                }),
                true,
            ))
        }
        Command::CocycleAudit {
            finite,
            padic,
            p,
            q,
            k,
            m,
            pairs,
            triples,
            seed,
            coeff,
        } => {
            let (p, k) = match (p, q) {
                (Some(p), None) => (*p, *k),
                (None, Some(q)) => factor_prime_power(*q).ok_or("q must be a prime power")?,
                _ => return Err("give exactly one of --p or --q".into()),
            };
            let (p, k) = (&p, &k);
            if *finite {
                let mode = coeff.mode()?;
                let fq = FqField::new(*p, *k).map_err(|e| format!("{e:?}"))?;
                let cf =
                    CoeffField::make_field(*p, *p, mode).map_err(|e| format!("{e:?}"))?;
                let psi = AdditiveCharacter::new(&fq, &cf);
                let h = Heisenberg::new(&fq, *m);
                let ctx = WeilContext::new(&SchrodingerModel::new(&h, &psi));
                let q = fq.q();
                let mut rng = SplitMix64::new(*seed);
                let fq2 = fq.clone();
                let mut rs =
                    move |r: &mut SplitMix64| fq2.element_of_index(r.below(q) as usize);
                let mut failures: Vec<u64> = Vec::new();
                for trial in 0..*pairs {
                    let g1 = random_sp(*m, &fq.zero(), &mut rng, &mut rs, 8);
                    let g2 = random_sp(*m, &fq.zero(), &mut rng, &mut rs, 8);
                    let lam = cocycle_extract(
                        &ctx.sigma(&g1),
                        &ctx.sigma(&g2),
                        &ctx.sigma(&g1.mul(&g2)),
                    );
                    match lam {
                        Ok(l) if l == cf.one() => {}
                        _ => failures.push(seed.wrapping_add(trial as u64)),
                    }
                }
                let pass = failures.is_empty();
                Ok((
                    json!({
                        "kind": "finite multiplicativity",
                        "q": q, "m": m, "pairs": pairs, "seed": seed,
                        "all_trivial": pass,
                        "failure_reproducers": failures,
                    }),
                    pass,
                ))
            } else if *padic {
                let field = LocalField::qp(*p);
                let report = cocycle_identity_check(&field, *m, *triples, *seed)
                    .map_err(|e| format!("{e:?}"))?;
                let pass = report.failures.is_empty();
                Ok((
                    json!({
                        "kind": "p-adic 2-cocycle identity",
                        "p": p, "m": m, "triples": report.trials, "seed": report.seed,
                        "failure_reproducers": report.failures,
                    }),
                    pass,
                ))
            } else {
                Err("cocycle-audit requires --finite or --padic".into())
            }
        }
        Command::Hilbert { p, a, b } => {
            let field = LocalField::qp(*p);
            let ar = parse_rat(a)?;
            let br = parse_rat(b)?;
            if ar.is_zero() || br.is_zero() {
                return Err("Hilbert symbol arguments must be nonzero".into());
            }
            let ca = SquareClass::from_rational(&field, &ar);
            let cb = SquareClass::from_rational(&field, &br);
            let v = hilbert_symbol(&ca, &cb);
            Ok((
                json!({
                    "p": p, "a": a, "b": b,
                    "class_a": ca.label(), "class_b": cb.label(),
                    "symbol": v,
                }),
                true,
            ))
        }
        Command::Omega { p, a, level, m } => {
            let ar = parse_rat(a)?;
            if ar.is_zero() {
                return Err("omega requires a nonzero coefficient".into());
            }
            let o = omega_factor(*p, &ar, *level, *m);
            Ok((
                json!({
                    "p": p, "a": a, "psi_level": level, "truncation": m,
                    "value": scalar_json(&o.value),
                    "stabilized": o.stabilized,
                }),
                o.stabilized,
            ))
        }
        Command::SplittingCensus { p } => {
            if *p == 2 {
                return Err("the census is for odd residue characteristic".into());
            }
            let field = LocalField::qp(*p);
            let census = splitting_census(&field);
            let witnesses: Vec<Value> = census
                .witnesses
                .iter()
                .map(|w| {
                    Value::Object(
                        census
                            .labels
                            .iter()
                            .cloned()
                            .zip(w.iter().map(|s| json!(s)))
                            .collect(),
                    )
                })
                .collect();
            let pass = census.count == 4;
            Ok((
                json!({
                    "p": p,
                    "count": census.count,
                    "expected": 4,
                    "witnesses": witnesses,
                }),
                pass,
            ))
        }
        Command::Theta { q, pair } => {
            let (m1, a_val) = parse_pair_spec(pair)?;
            if m1 != 1 {
                return Err("only sp2-o1 pairs are tabulated".into());
            }
            let (p, k) = factor_prime_power(*q).ok_or("q must be an odd prime power")?;
            let fq = FqField::new(p, k).map_err(|e| format!("{e:?}"))?;
            let cf = CoeffField::make_field(p, p, CoeffMode::Char0).map_err(|e| format!("{e:?}"))?;
            let psi = AdditiveCharacter::new(&fq, &cf);
            let a = fq.from_i64(a_val);
            if a.is_zero() {
                return Err("the orthogonal form must be nondegenerate".into());
            }
            let table = theta_table(&fq, &a, &psi).map_err(|e| format!("{e:?}"))?;
            let reports: Vec<Value> = table
                .reports
                .iter()
                .map(|r| {
                    json!({
                        "pi1": r.pi1_label,
                        "pi1_dim": r.pi1_dim,
                        "theta_dim": r.theta_dim,
                        "quotient_dim": r.quotient_dim,
                        "nonzero": r.nonzero,
                    })
                })
                .collect();
            let pass = table.two_sided_consistent;
            Ok((
                json!({
                    "q": q, "pair": pair,
                    "omega_dim": table.omega_dim,
                    "reports": reports,
                    "two_sided_consistent": table.two_sided_consistent,
                }),
                pass,
            ))
        }
    }
}

fn parse_pair_spec(spec: &str) -> Result<(usize, i64), String> {
    // format: sp2-o1:a=1
    let (head, tail) = spec
        .split_once(':')
        .ok_or_else(|| format!("bad pair spec '{spec}'"))?;
    if head != "sp2-o1" {
        return Err(format!("unsupported pair '{head}'"));
    }
    let a = tail
        .strip_prefix("a=")
        .ok_or_else(|| format!("bad pair parameters '{tail}'"))?;
    let a: i64 = a.parse().map_err(|e| format!("bad a: {e}"))?;
    Ok((1, a))
}

fn factor_prime_power(q: u64) -> Option<(u64, usize)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut m = q;
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
    }
    None
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command_name = match &cli.command {
        Command::SvnCheck { .. } => "svn-check",
        Command::WeilChar { .. } => "weil-char",
        Command::CocycleAudit { .. } => "cocycle-audit",
        Command::Hilbert { .. } => "hilbert",
        Command::Omega { .. } => "omega",
        Command::SplittingCensus { .. } => "splitting-census",
        Command::Theta { .. } => "theta",
    };
    match run(&cli) {
        Ok((results, pass)) => {
            let doc = json!({
                "schema": 1,
                "command": command_name,
                "results": results,
                "pass": pass,
            });
            let rendered = serde_json::to_string_pretty(&doc).expect("serializable");
            {
                // tolerate closed pipes (e.g. | head) instead of panicking
                use std::io::Write;
                let mut stdout = std::io::stdout();
                let _ = writeln!(stdout, "{rendered}");
                let _ = stdout.flush();
            }
            if let Some(out) = &cli.out {
                let path = if out.is_relative() {
                    match std::env::var_os("WEILREP_OUT_DIR") {
                        Some(dir) => PathBuf::from(dir).join(out),
                        None => out.clone(),
                    }
                } else {
                    out.clone()
                };
                if let Err(e) = std::fs::write(&path, rendered) {
                    eprintln!("error: could not write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
