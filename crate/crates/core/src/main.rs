use std::collections::BTreeMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use qspheres::oddspheres;
use qspheres::opalg::AlgebraWord;
use qspheres::podles::{self, PodlesParams};
use qspheres::qcore::{DeformationParam, HalfInt};
use qspheres::s4q;
use qspheres::verify::{verify, Algebra, VerifyParams};
use qspheres::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qspheres",
    version,
    about = "Index pairings, Haar states and residues on q-deformed spheres"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// podles, s4q-scalar, s4q-chiral, s4q-chiral+, s4q-chiral-, s4q-fock, odd
    #[arg(long, global = true, default_value = "podles")]
    algebra: String,
    #[arg(long, global = true, default_value_t = 0.5)]
    q: f64,
    #[arg(long, global = true, default_value_t = 1.0)]
    s: f64,
    /// Spinor charge, for instance 1/2 or -3/2
    #[arg(
        long = "N",
        global = true,
        default_value = "1/2",
        allow_hyphen_values = true
    )]
    n: String,
    #[arg(long, global = true, default_value_t = 2)]
    ell: usize,
    /// Truncation cutoff (half-integers allowed); defaults depend on the algebra
    #[arg(long, global = true)]
    cutoff: Option<String>,
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks; recorded in the output
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for trace evaluation (0 = rayon default)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Scale one generator by 1 + perturb before verifying
    #[arg(long, global = true, default_value_t = 0.0)]
    perturb: f64,
    /// Also append records to this file
    #[arg(long, global = true)]
    out: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Relation and adjoint residuals on interior labels
    Verify,
    /// Fredholm index (podles, s4q-chiral, s4q-fock)
    Index,
    /// Twisted index pairing (podles, s4q-chiral)
    Qindex,
    /// Haar state of a monomial x0^{2j} x1^k x1*^k or of a word
    Haar {
        #[arg(long, default_value_t = 0)]
        j: u32,
        #[arg(long, default_value_t = 0)]
        k: u32,
        #[arg(long)]
        word: Option<String>,
    },
    /// Partial trace of |D|^{-s} against its closed form
    Zeta {
        #[arg(long = "exponent")]
        exponent: f64,
    },
    /// Leading zeta residue of a word (podles, s4q)
    Residue {
        #[arg(long)]
        word: String,
    },
    /// Gelfand-Tsetlin tableaux at fixed (n, h)
    Tableaux {
        #[arg(long = "n", id = "tableau_n")]
        n: i64,
        #[arg(long = "h", id = "tableau_h")]
        h: i64,
    },
    /// Noncommutative integral of a word on the odd sphere
    Ncintegral {
        #[arg(long)]
        word: String,
    },
}

#[derive(Serialize)]
struct ResultRecord {
    command: String,
    algebra: String,
    params: BTreeMap<String, Value>,
    quantity: String,
    value: Value,
    est_error: Option<f64>,
    pass: Option<bool>,
    wall_time_s: f64,
}

struct Ctx {
    common: Common,
    command: &'static str,
    algebra: String,
    start: Instant,
    records: Vec<ResultRecord>,
}

impl Ctx {
    fn params(&self) -> BTreeMap<String, Value> {
        let c = &self.common;
        let mut m = BTreeMap::new();
        m.insert("q".into(), json!(c.q));
        m.insert("s".into(), json!(c.s));
        m.insert("N".into(), json!(c.n));
        m.insert("ell".into(), json!(c.ell));
        m.insert("cutoff".into(), json!(c.cutoff));
        m.insert("tol".into(), json!(c.tol));
        m.insert("seed".into(), json!(c.seed));
        m
    }

    fn push(&mut self, quantity: &str, value: Value, est_error: Option<f64>, pass: Option<bool>) {
        let rec = ResultRecord {
            command: self.command.into(),
            algebra: self.algebra.clone(),
            params: self.params(),
            quantity: quantity.into(),
            value,
            est_error,
            pass,
            wall_time_s: self.start.elapsed().as_secs_f64(),
        };
        self.records.push(rec);
    }

    fn check(&mut self, quantity: &str, value: f64, expected: f64, est_error: Option<f64>) {
        let pass = (value - expected).abs() <= self.common.tol;
        self.push(quantity, json!(value), est_error, Some(pass));
    }
}

fn cutoff(c: &Common, default: HalfInt) -> Result<HalfInt> {
    c.cutoff.as_deref().map_or(Ok(default), str::parse)
}

fn podles_params(c: &Common) -> Result<PodlesParams> {
    PodlesParams::new(c.q, c.s, c.n.parse()?)
}

fn step_back(l: HalfInt) -> HalfInt {
    HalfInt::from_twice(l.twice - 4)
}

fn unsupported(cmd: &str, alg: Algebra) -> Error {
    Error::InvalidParam(format!("`{cmd}` is not available for {alg}"))
}

fn run(ctx: &mut Ctx, cmd: &Cmd) -> Result<()> {
    let c = ctx.common.clone();
    let alg: Algebra = c.algebra.parse()?;
    let q = DeformationParam::new(c.q)?;
    match cmd {
        Cmd::Verify => {
            let p = VerifyParams {
                q: c.q,
                s: c.s,
                n: c.n.parse()?,
                ell: c.ell,
                cutoff: cutoff(&c, alg.default_cutoff())?,
                perturb: c.perturb,
            };
            let r = verify(alg, &p)?;
            ctx.check("relation_residual", r.relation, 0.0, None);
            ctx.check("adjoint_residual", r.adjoint, 0.0, None);
            ctx.push("labels", json!(r.labels), None, None);
        }
        Cmd::Index => match alg {
            Algebra::Podles => {
                let p = podles_params(&c)?;
                let l = cutoff(&c, HalfInt::from_int(40))?;
                let v = podles::fredholm_index(&p, l)?;
                let e = (v - podles::fredholm_index(&p, step_back(l))?).abs();
                ctx.check("fredholm_index", v, 2.0 * p.n.to_f64(), Some(e));
            }
            Algebra::S4Chiral | Algebra::S4ChiralPlus | Algebra::S4Scalar => {
                let l = cutoff(&c, HalfInt::from_int(25))?;
                let v = s4q::chiral_index(q, l)?;
                let e = (v - s4q::chiral_index(q, step_back(l))?).abs();
                ctx.check("chiral_index", v, 1.0, Some(e));
            }
            Algebra::S4Fock => {
                let l = cutoff(&c, HalfInt::from_int(30))?;
                let k = u32::try_from(l.twice / 2)
                    .map_err(|_| Error::InvalidParam("negative cutoff".into()))?;
                let v = s4q::fock_index(q, k)?;
                let e = (v - s4q::fock_index(q, k.saturating_sub(2))?).abs();
                ctx.check("fock_index", v, 1.0, Some(e));
            }
            other => return Err(unsupported("index", other)),
        },
        Cmd::Qindex => match alg {
            Algebra::Podles => {
                let p = podles_params(&c)?;
                let l = cutoff(&c, HalfInt::from_int(40))?;
                let v = podles::twisted_q_index(&p, l)?;
                let e = (v - podles::twisted_q_index(&p, step_back(l))?).abs();
                let n = p.n;
                let expected = n.sign() as f64 * p.q.num(2.0 * n.abs().to_f64());
                ctx.check("twisted_q_index", v, expected, Some(e));
            }
            Algebra::S4Chiral | Algebra::S4ChiralPlus | Algebra::S4Scalar => {
                let l = cutoff(&c, HalfInt::from_int(15))?;
                let v = s4q::twisted_pairing4(q, l)?;
                let e = (v - s4q::twisted_pairing4(q, step_back(l))?).abs();
                ctx.check("twisted_pairing", v, 2.0, Some(e));
            }
            other => return Err(unsupported("qindex", other)),
        },
        Cmd::Haar { j, k, word } => {
            let w = match word {
                Some(w) => AlgebraWord::parse(w)?,
                None => s4q::monomial_word(2 * j, *k, *k, 0),
            };
            ctx.push("haar_gns", json!(s4q::haar_gns(&w, q)?), None, None);
            if word.is_none() {
                ctx.push(
                    "haar_formula",
                    json!(s4q::haar_formula(*j, *k, q)?),
                    None,
                    None,
                );
                ctx.push(
                    "haar_formula_corrected",
                    json!(s4q::haar_formula_corrected(*j, *k, q)?),
                    None,
                    None,
                );
            }
        }
        Cmd::Zeta { exponent } => {
            let s = *exponent;
            let (partial, closed, tail) = match alg {
                Algebra::Podles => {
                    let p = podles_params(&c)?;
                    let l = cutoff(&c, HalfInt::from_int(200))?;
                    (
                        podles::zeta_partial(None, s, &p, l)?,
                        podles::zeta_closed_form(s, &p)?,
                        podles::zeta_tail_bound(s, &p, l),
                    )
                }
                Algebra::S4Scalar
                | Algebra::S4Chiral
                | Algebra::S4ChiralPlus
                | Algebra::S4ChiralMinus => {
                    let l = cutoff(&c, HalfInt::from_twice(2001))?;
                    (
                        s4q::zeta4(s, l)?,
                        s4q::zeta4_closed(s)?,
                        s4q::zeta4_tail_bound(s, l),
                    )
                }
                other => return Err(unsupported("zeta", other)),
            };
            ctx.push(
                "zeta_partial",
                json!(partial),
                Some(tail),
                Some(closed - partial <= tail + c.tol),
            );
            ctx.push("zeta_closed", json!(closed), None, None);
        }
        Cmd::Residue { word } => {
            let w = AlgebraWord::parse(word)?;
            let v = match alg {
                Algebra::Podles => podles::top_residue(&w, &podles_params(&c)?)?,
                Algebra::S4Scalar
                | Algebra::S4Chiral
                | Algebra::S4ChiralPlus
                | Algebra::S4ChiralMinus => s4q::top_residue4(&w)?,
                other => return Err(unsupported("residue", other)),
            };
            ctx.push("top_residue", json!(v), None, None);
        }
        Cmd::Tableaux { n, h } => {
            if *n < 0 || *h < 0 {
                return Err(Error::InvalidParam("n and h must be non-negative".into()));
            }
            let labels = oddspheres::labels_at(c.ell, *n, *h);
            let rows: Vec<&Vec<Vec<i64>>> = labels.iter().map(|l| &l.tableau.rows).collect();
            let mut lambda = vec![0u64; c.ell];
            lambda[0] += *n as u64;
            lambda[c.ell - 1] += *h as u64;
            let weyl = oddspheres::weyl_dimension(&lambda);
            ctx.push("tableaux", json!(rows), None, None);
            ctx.push(
                "count",
                json!(labels.len()),
                None,
                Some(labels.len() as u128 == weyl),
            );
        }
        Cmd::Ncintegral { word } => {
            let w = AlgebraWord::parse(word)?;
            let v = oddspheres::nc_integral(&w, c.ell, q)?;
            ctx.push("nc_integral", json!(v.re), None, None);
        }
    }
    Ok(())
}

fn csv_line(r: &ResultRecord) -> String {
    let value = match &r.value {
        Value::String(s) => s.clone(),
        v => v.to_string(),
    };
    let esc = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
    format!(
        "{},{},{},{},{},{},{}",
        r.command,
        r.algebra,
        r.quantity,
        esc(&value),
        r.est_error.map_or(String::new(), |e| e.to_string()),
        r.pass.map_or(String::new(), |p| p.to_string()),
        r.wall_time_s
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.common.threads > 0 {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.common.threads)
            .build_global();
    }
    let command = match cli.cmd {
        Cmd::Verify => "verify",
        Cmd::Index => "index",
        Cmd::Qindex => "qindex",
        Cmd::Haar { .. } => "haar",
        Cmd::Zeta { .. } => "zeta",
        Cmd::Residue { .. } => "residue",
        Cmd::Tableaux { .. } => "tableaux",
        Cmd::Ncintegral { .. } => "ncintegral",
    };
    let mut ctx = Ctx {
        algebra: cli.common.algebra.clone(),
        common: cli.common.clone(),
        command,
        start: Instant::now(),
        records: Vec::new(),
    };
    if let Err(e) = run(&mut ctx, &cli.cmd) {
        eprintln!("error: {e}");
        eprintln!("run `qspheres {command} --help` for usage");
        return ExitCode::from(2);
    }
    let lines: Vec<String> = ctx
        .records
        .iter()
        .map(|r| match cli.common.format {
            Format::Json => serde_json::to_string(r).expect("records serialize"),
            Format::Csv => csv_line(r),
        })
        .collect();
    let mut text = String::new();
    if cli.common.format == Format::Csv {
        text.push_str("command,algebra,quantity,value,est_error,pass,wall_time_s\n");
    }
    for l in &lines {
        text.push_str(l);
        text.push('\n');
    }
    print!("{text}");
    if let Some(path) = &cli.common.out {
        let written = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .and_then(|mut f| f.write_all(text.as_bytes()));
        if let Err(e) = written {
            eprintln!("error: cannot write {path}: {e}");
            return ExitCode::from(2);
        }
    }
    if ctx.records.iter().any(|r| r.pass == Some(false)) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
