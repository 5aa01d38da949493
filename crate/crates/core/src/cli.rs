//! The `verify` driver: configuration, the check registry, parallel execution
//! and text/JSON reporting.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use rayon::prelude::*;

use crate::autom::verify_f_suite;
use crate::coeff::{Params, QContext, RationalQ};
use crate::crossed::{verify_involution_and_tetra, verify_tetrahedron, FChoice, RForm, RSpec};
use crate::report::{CheckReport, Mutation};
use crate::rtt::{
    verify_centralizer, verify_conjugation, verify_intertwine_a, verify_intertwine_t, verify_rtt_a, verify_rtt_t,
    verify_w_identities, verify_ybe,
};
use crate::series::{verify_dilog_basics, verify_pent_tetr_family};
use crate::uttalg::{verify_algebra_laws, verify_phi_homs};
use crate::Error;

#[derive(Clone, Debug, PartialEq)]
pub enum QSpec {
    Symbolic,
    Numeric(BigRational),
}

impl FromStr for QSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "symbolic" {
            return Ok(QSpec::Symbolic);
        }
        let v = s
            .strip_prefix("num:")
            .ok_or_else(|| Error::Invalid(format!("q must be `symbolic` or `num:<p>/<q>`, got `{s}`")))?;
        let q = BigRational::from_str(v).map_err(|_| Error::Invalid(format!("bad rational `{v}`")))?;
        QContext::numeric(q.clone())?;
        Ok(QSpec::Numeric(q))
    }
}

/// Settings for one `verify` run. Unset sweep parameters fall back to each check's defaults.
#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub checks: Vec<String>,
    pub q: Option<QSpec>,
    pub r: Option<Vec<i32>>,
    pub s: Option<Vec<i32>>,
    pub order: Option<u32>,
    pub m: Option<Vec<u32>>,
    pub k: Option<Vec<i32>>,
    pub mhat: Option<Vec<u32>>,
    pub l: Option<i32>,
    pub exponents: Option<[i32; 6]>,
    pub f_menu: Option<Vec<FChoice>>,
    pub mutation: Option<Mutation>,
    pub json: Option<PathBuf>,
    pub jobs: usize,
}

fn list<T: FromStr>(key: &str, v: &str) -> Result<Vec<T>, Error> {
    v.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|_| Error::Invalid(format!("bad value `{x}` for {key}")))
        })
        .collect()
}

fn one<T: FromStr>(key: &str, v: &str) -> Result<T, Error> {
    v.trim()
        .parse::<T>()
        .map_err(|_| Error::Invalid(format!("bad value `{v}` for {key}")))
}

impl VerifyConfig {
    /// Builds a config from `key=value` settings.
    pub fn from_pairs(pairs: &BTreeMap<String, String>) -> Result<Self, Error> {
        let mut cfg = VerifyConfig {
            checks: vec!["all".into()],
            jobs: 1,
            ..Default::default()
        };
        for (key, v) in pairs {
            match key.as_str() {
                "check" => cfg.checks = list(key, v)?,
                "q" => cfg.q = Some(v.trim().parse()?),
                "r" => cfg.r = Some(list(key, v)?),
                "s" => cfg.s = Some(list(key, v)?),
                "order" => cfg.order = Some(one(key, v)?),
                "m" => cfg.m = Some(list(key, v)?),
                "k" => cfg.k = Some(list(key, v)?),
                "mhat" => cfg.mhat = Some(list(key, v)?),
                "l" => cfg.l = Some(one(key, v)?),
                "exponents" => {
                    let e: Vec<i32> = list(key, v)?;
                    let arr: [i32; 6] = e
                        .try_into()
                        .map_err(|_| Error::Invalid("exponents needs six integers".into()))?;
                    cfg.exponents = Some(arr);
                }
                "f-menu" | "f_menu" => {
                    let fs = v
                        .split(',')
                        .map(|x| FChoice::parse(x.trim()).ok_or_else(|| Error::Invalid(format!("unknown f `{x}`"))))
                        .collect::<Result<Vec<_>, _>>()?;
                    cfg.f_menu = Some(fs);
                }
                "mutate" => {
                    cfg.mutation = Some(
                        Mutation::parse(v.trim()).ok_or_else(|| Error::Invalid(format!("unknown mutation `{v}`")))?,
                    )
                }
                "json" => cfg.json = Some(PathBuf::from(v.trim())),
                "jobs" => cfg.jobs = one::<usize>(key, v)?.max(1),
                _ => return Err(Error::Invalid(format!("unknown setting `{key}`"))),
            }
        }
        if cfg.r.iter().flatten().any(|&r| r == -1) {
            return Err(Error::Invalid("r = -1 is excluded".into()));
        }
        if cfg.m.iter().chain(cfg.mhat.iter()).flatten().any(|&m| m == 0) {
            return Err(Error::Invalid("m and mhat must be positive".into()));
        }
        for name in &cfg.checks {
            if name != "all" && !REGISTRY.iter().any(|d| d.name == name) {
                return Err(Error::Invalid(format!("unknown check `{name}`")));
            }
        }
        if let Some(mu) = cfg.mutation {
            for d in REGISTRY.iter().filter(|d| cfg.checks.iter().any(|c| c == d.name)) {
                if !d.mutations.contains(&mu) {
                    return Err(Error::Invalid(format!(
                        "check `{}` has no mutation `{}`",
                        d.name,
                        mu.tag()
                    )));
                }
            }
        }
        Ok(cfg)
    }

    /// Parses `key=value` lines; blank lines and `#` comments are ignored.
    pub fn parse_file(text: &str) -> Result<BTreeMap<String, String>, Error> {
        let mut out = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("config line {}: expected key=value", i + 1)))?;
            out.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(out)
    }

    fn selected(&self) -> Vec<&'static CheckDef> {
        let all = self.checks.iter().any(|c| c == "all");
        REGISTRY
            .iter()
            .filter(|d| all || self.checks.iter().any(|c| c == d.name))
            .filter(|d| self.mutation.is_none_or(|m| d.mutations.contains(&m)))
            .collect()
    }

    fn light_r(&self) -> Vec<i32> {
        self.r.clone().unwrap_or_else(|| vec![0, 1, 2])
    }

    fn light_s(&self) -> Vec<i32> {
        self.s.clone().unwrap_or_else(|| vec![-1, 0, 1, 2])
    }

    fn heavy_r(&self) -> Vec<i32> {
        self.r.clone().unwrap_or_else(|| vec![1])
    }

    fn heavy_s(&self) -> Vec<i32> {
        self.s.clone().unwrap_or_else(|| vec![0])
    }

    fn menu(&self) -> Vec<FChoice> {
        self.f_menu.clone().unwrap_or_else(|| FChoice::MENU.to_vec())
    }

    fn first_m(&self) -> u32 {
        self.m.as_ref().and_then(|v| v.first().copied()).unwrap_or(1)
    }

    fn first_k(&self) -> i32 {
        self.k.as_ref().and_then(|v| v.first().copied()).unwrap_or(1)
    }
}

#[derive(Clone)]
enum Ctx {
    Sym(Arc<QContext<RationalQ>>),
    Num(Arc<QContext<BigRational>>),
}

macro_rules! with_ctx {
    ($ctx:expr, |$c:ident| $body:expr) => {
        match $ctx {
            Ctx::Sym($c) => $body,
            Ctx::Num($c) => $body,
        }
    };
}

type Task = Box<dyn FnOnce() -> CheckReport + Send>;

fn task(f: impl FnOnce() -> CheckReport + Send + 'static) -> Task {
    Box::new(f)
}

/// One registry entry: heavy checks default to numeric `q = 2` and a single `(r, s)`.
pub struct CheckDef {
    pub name: &'static str,
    pub heavy: bool,
    pub mutations: &'static [Mutation],
    tasks: fn(&VerifyConfig, &Ctx) -> Vec<Task>,
}

fn ctx_for(cfg: &VerifyConfig, heavy: bool) -> Result<Ctx, Error> {
    Ok(match &cfg.q {
        Some(QSpec::Symbolic) => Ctx::Sym(QContext::symbolic()),
        Some(QSpec::Numeric(q)) => Ctx::Num(QContext::numeric(q.clone())?),
        None if heavy => Ctx::Num(QContext::numeric(BigRational::from_integer(2.into()))?),
        None => Ctx::Sym(QContext::symbolic()),
    })
}

use Mutation as M;

pub static REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: "dilog_basics",
        heavy: false,
        mutations: &[M::BasePlusOne, M::Perturb],
        tasks: |cfg, ctx| {
            let (order, mu, ctx) = (cfg.order.unwrap_or(12), cfg.mutation, ctx.clone());
            vec![task(move || with_ctx!(&ctx, |c| verify_dilog_basics(c, order, mu)))]
        },
    },
    CheckDef {
        name: "pent_tetr_family",
        heavy: false,
        mutations: &[M::BasePlusOne, M::BaseTimesTwo],
        tasks: |cfg, ctx| {
            let ms = cfg.m.clone().unwrap_or_else(|| vec![1, 2, 3]);
            let ks = cfg.k.clone().unwrap_or_else(|| vec![-1, 1, 2]);
            let order = cfg.order.unwrap_or(6);
            let mut out = Vec::new();
            for &m in &ms {
                for &k in &ks {
                    let (mu, ctx) = (cfg.mutation, ctx.clone());
                    out.push(task(move || {
                        with_ctx!(&ctx, |c| verify_pent_tetr_family(c, m, k, order, 2, mu))
                    }));
                }
            }
            out
        },
    },
    CheckDef {
        name: "F_suite",
        heavy: false,
        mutations: &[M::FB2, M::FMinus],
        tasks: |cfg, ctx| {
            cfg.light_r()
                .into_iter()
                .map(|r| {
                    let (mu, ctx) = (cfg.mutation, ctx.clone());
                    task(move || with_ctx!(&ctx, |c| verify_f_suite(c, r, mu)))
                })
                .collect()
        },
    },
    CheckDef {
        name: "w_identities",
        heavy: false,
        mutations: &[],
        tasks: |cfg, ctx| {
            sweep(cfg.light_r(), cfg.light_s(), ctx, |c, r, s| {
                with_ctx!(c, |c| verify_w_identities(c, s, r))
            })
        },
    },
    CheckDef {
        name: "conjugation",
        heavy: false,
        mutations: &[M::BaseR],
        tasks: |cfg, ctx| {
            let (order, menu, mu) = (cfg.order.unwrap_or(6), cfg.menu(), cfg.mutation);
            sweep(cfg.light_r(), cfg.light_s(), ctx, move |c, r, s| {
                with_ctx!(c, |c| verify_conjugation(c, s, r, order, &menu, mu))
            })
        },
    },
    CheckDef {
        name: "intertwine_T",
        heavy: false,
        mutations: &[M::SwapW, M::BaseR, M::BasePlusOne, M::BaseTimesTwo],
        tasks: |cfg, ctx| {
            let (order, menu, mu) = (cfg.order.unwrap_or(6), cfg.menu(), cfg.mutation);
            sweep(cfg.light_r(), cfg.light_s(), ctx, move |c, r, s| {
                with_ctx!(c, |c| verify_intertwine_t(c, s, r, order, &menu, mu))
            })
        },
    },
    CheckDef {
        name: "rtt_T",
        heavy: false,
        mutations: &[M::SignFlip],
        tasks: |cfg, ctx| {
            let mu = cfg.mutation;
            sweep(cfg.light_r(), cfg.light_s(), ctx, move |c, r, s| {
                with_ctx!(c, |c| verify_rtt_t(c, r, s, mu))
            })
        },
    },
    CheckDef {
        name: "rtt_A",
        heavy: true,
        mutations: &[],
        tasks: |cfg, ctx| {
            sweep(cfg.heavy_r(), cfg.heavy_s(), ctx, |c, r, s| {
                with_ctx!(c, |c| verify_rtt_a(c, r, s))
            })
        },
    },
    CheckDef {
        name: "intertwine_A",
        heavy: true,
        mutations: &[M::SwapW, M::BaseR, M::BasePlusOne, M::BaseTimesTwo],
        tasks: |cfg, ctx| {
            let (order, mu) = (cfg.order.unwrap_or(3), cfg.mutation);
            let menu = cfg.f_menu.clone().unwrap_or_else(|| vec![FChoice::Const]);
            let mut out = Vec::new();
            for f in menu {
                out.extend(sweep(cfg.heavy_r(), cfg.heavy_s(), ctx, move |c, r, s| {
                    with_ctx!(c, |c| verify_intertwine_a(c, s, r, order, f, mu))
                }));
            }
            out
        },
    },
    CheckDef {
        name: "tetra_Rgl",
        heavy: true,
        mutations: &[M::BasePlusOne, M::BaseTimesTwo],
        tasks: |cfg, ctx| {
            let e = cfg.exponents.unwrap_or([-1, 1, 0, 1, 0, -1]);
            let pairs: Vec<(u32, i32)> = if cfg.m.is_some() || cfg.k.is_some() {
                let ms = cfg.m.clone().unwrap_or_else(|| vec![1]);
                let ks = cfg.k.clone().unwrap_or_else(|| vec![1]);
                ms.iter().flat_map(|&m| ks.iter().map(move |&k| (m, k))).collect()
            } else {
                vec![(1, 1), (2, 1), (1, 2)]
            };
            let order = cfg.order.unwrap_or(4);
            pairs
                .into_iter()
                .map(|(m, k)| {
                    let form = RForm::Rgl {
                        alpha: [e[0], e[1], e[2]],
                        beta: [e[3], e[4], e[5]],
                        m,
                        k,
                    };
                    tetra_task(ctx, "tetra_Rgl", form, cfg.mutation, order)
                })
                .collect()
        },
    },
    CheckDef {
        name: "tetra_Rgfl",
        heavy: true,
        mutations: &[M::BasePlusOne, M::BaseTimesTwo],
        tasks: |cfg, ctx| {
            let (m, k) = (cfg.first_m(), cfg.first_k());
            let mhat = cfg.mhat.as_ref().and_then(|v| v.first().copied()).unwrap_or(1);
            let l = cfg.l.unwrap_or(1);
            let order = cfg.order.unwrap_or(4);
            let forms: Vec<RForm> = match cfg.exponents {
                Some(e) => vec![RForm::Rgfl {
                    g: [e[0], e[1], e[2]],
                    f: [e[3], e[4], e[5]],
                    m,
                    k,
                    mhat,
                    l,
                }],
                None => cfg
                    .heavy_r()
                    .into_iter()
                    .flat_map(|r| cfg.heavy_s().into_iter().map(move |s| RForm::wwab(s, r, m, k, mhat, l)))
                    .collect(),
            };
            forms
                .into_iter()
                .map(|f| tetra_task(ctx, "tetra_Rgfl", f, cfg.mutation, order))
                .collect()
        },
    },
    CheckDef {
        name: "tetra_paper_R",
        heavy: true,
        mutations: &[M::BaseR],
        tasks: |cfg, ctx| {
            let mhats = cfg.mhat.clone().unwrap_or_else(|| vec![1, 2]);
            let l = cfg.l.unwrap_or(1);
            let order = cfg.order.unwrap_or(4);
            let mut out = Vec::new();
            for r in cfg.heavy_r() {
                for s in cfg.heavy_s() {
                    for &mhat in &mhats {
                        let f = FChoice::Ru3 { mhat, l };
                        let form = RForm::Rffs { s, r, f, left: false };
                        out.push(tetra_task(ctx, "tetra_paper_R", form, cfg.mutation, order));
                    }
                }
            }
            out
        },
    },
    CheckDef {
        name: "involution",
        heavy: true,
        mutations: &[M::FOne],
        tasks: |cfg, ctx| {
            let (order, mu) = (cfg.order.unwrap_or(4), cfg.mutation);
            let mut out = Vec::new();
            for sign in [1i8, -1] {
                out.extend(sweep(cfg.heavy_r(), cfg.heavy_s(), ctx, move |c, r, s| {
                    with_ctx!(c, |c| verify_involution_and_tetra(c, s, r, sign, order, mu))
                }));
            }
            out
        },
    },
    CheckDef {
        name: "algebra_laws",
        heavy: false,
        mutations: &[M::C1Q2],
        tasks: |cfg, _| {
            let rs = cfg.r.clone().unwrap_or_else(|| vec![-2, 0, 1, 2, 3]);
            let mut out = Vec::new();
            for n in [2usize, 3, 4] {
                for &r in &rs {
                    let mu = cfg.mutation;
                    if mu.is_some() && n != 3 {
                        continue;
                    }
                    out.push(task(move || verify_algebra_laws(n, r, mu)));
                }
            }
            out
        },
    },
    CheckDef {
        name: "phi_homs",
        heavy: false,
        mutations: &[M::Phi13],
        tasks: |cfg, ctx| {
            let mu = cfg.mutation;
            sweep(cfg.light_r(), cfg.light_s(), ctx, move |c, r, s| {
                with_ctx!(c, |c| verify_phi_homs(c, r, s, mu))
            })
        },
    },
    CheckDef {
        name: "centralizer_lattice",
        heavy: false,
        mutations: &[],
        tasks: |cfg, ctx| {
            sweep(cfg.light_r(), cfg.light_s(), ctx, |c, r, s| {
                with_ctx!(c, |c| verify_centralizer(c, r, s))
            })
        },
    },
    CheckDef {
        name: "ybe",
        heavy: false,
        mutations: &[],
        tasks: |cfg, ctx| {
            let mut out = Vec::new();
            for n in [2usize, 3] {
                for r in cfg.light_r() {
                    let ctx = ctx.clone();
                    out.push(task(move || with_ctx!(&ctx, |c| verify_ybe(c, n, r))));
                }
            }
            out
        },
    },
];

fn sweep<F>(rs: Vec<i32>, ss: Vec<i32>, ctx: &Ctx, f: F) -> Vec<Task>
where
    F: Fn(&Ctx, i32, i32) -> CheckReport + Clone + Send + 'static,
{
    let mut out = Vec::new();
    for &r in &rs {
        for &s in &ss {
            let (f, ctx) = (f.clone(), ctx.clone());
            out.push(task(move || f(&ctx, r, s)));
        }
    }
    out
}

fn tetra_task(ctx: &Ctx, name: &'static str, form: RForm, mutation: Option<Mutation>, order: u32) -> Task {
    let ctx = ctx.clone();
    task(move || {
        let mut spec = RSpec::new((1, 2, 3), Params::ONE, form);
        spec.mutation = mutation;
        with_ctx!(&ctx, |c| verify_tetrahedron(c, name, spec, order))
    })
}

/// Runs the selected checks on a pool of `cfg.jobs` threads; reports come back in registry order.
pub fn run(cfg: &VerifyConfig) -> Result<Vec<CheckReport>, Error> {
    let mut tasks = Vec::new();
    for d in cfg.selected() {
        let ctx = ctx_for(cfg, d.heavy)?;
        tasks.extend((d.tasks)(cfg, &ctx));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| Error::Invalid(e.to_string()))?;
    Ok(pool.install(|| tasks.into_par_iter().map(|t| t()).collect()))
}

fn brief_params(rep: &CheckReport) -> String {
    rep.params
        .iter()
        .filter(|(k, _)| k.as_str() != "subchecks" && k.as_str() != "notes")
        .map(|(k, v)| match v.as_str() {
            Some(s) => format!("{k}={s}"),
            None => format!("{k}={v}"),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Fixed-width table, with the witness under each failed row.
pub fn render_table(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<20} {:<6} {:>5} {:>10} {:>9}  PARAMS",
        "CHECK", "STATUS", "ORDER", "TERMS", "MS"
    );
    for rep in reports {
        let order = rep.order.map_or("-".to_string(), |o| o.to_string());
        let _ = writeln!(
            out,
            "{:<20} {:<6} {:>5} {:>10} {:>9}  {}",
            rep.check,
            rep.status.to_string(),
            order,
            rep.terms,
            rep.ms,
            brief_params(rep)
        );
        if let Some(w) = &rep.witness {
            let deg = w.degree.map_or("-".to_string(), |d| d.to_string());
            let _ = writeln!(
                out,
                "    witness: {} at {} [{} {}] degree {}: expected {} got {}",
                w.label, w.key, w.param, w.gen, deg, w.expected, w.actual
            );
        }
    }
    let pass = reports.iter().filter(|r| r.passed()).count();
    let _ = writeln!(out, "{pass}/{} passed", reports.len());
    out
}

#[derive(Parser)]
#[command(
    name = "tetra",
    about = "Exact verifier for quantum-dilogarithm, RTT and tetrahedron identities"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run registry checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Check names (comma separated) or `all`.
    #[arg(long)]
    check: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// `symbolic` or `num:<p>/<q>`.
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    order: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    k: Option<String>,
    #[arg(long)]
    mhat: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    l: Option<String>,
    /// Six comma-separated exponents for `tetra_Rgl` or `tetra_Rgfl`.
    #[arg(long, allow_hyphen_values = true)]
    exponents: Option<String>,
    #[arg(long = "f-menu")]
    f_menu: Option<String>,
    /// Negative-control mutation tag.
    #[arg(long)]
    mutate: Option<String>,
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    jobs: Option<String>,
    /// File of `key=value` lines; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl VerifyArgs {
    fn pairs(&self) -> Result<BTreeMap<String, String>, Error> {
        let mut pairs = match &self.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", p.display())))?;
                VerifyConfig::parse_file(&text)?
            }
            None => BTreeMap::new(),
        };
        let flags = [
            ("check", &self.check),
            ("r", &self.r),
            ("s", &self.s),
            ("q", &self.q),
            ("order", &self.order),
            ("m", &self.m),
            ("k", &self.k),
            ("mhat", &self.mhat),
            ("l", &self.l),
            ("exponents", &self.exponents),
            ("f-menu", &self.f_menu),
            ("mutate", &self.mutate),
            ("jobs", &self.jobs),
        ];
        if pairs.contains_key("f_menu") && self.f_menu.is_some() {
            pairs.remove("f_menu");
        }
        for (k, v) in flags {
            if let Some(v) = v {
                pairs.insert(k.to_string(), v.clone());
            }
        }
        if let Some(j) = &self.json {
            pairs.insert("json".into(), j.display().to_string());
        }
        Ok(pairs)
    }
}

/// Entry point; returns the process exit code (0 all pass, 1 any failure, 2 usage error).
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let Cmd::Verify(args) = cli.cmd;
    let cfg = match args.pairs().and_then(|p| VerifyConfig::from_pairs(&p)) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let reports = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    print!("{}", render_table(&reports));
    if let Some(path) = &cfg.json {
        let written = serde_json::to_string_pretty(&reports)
            .map_err(|e| e.to_string())
            .and_then(|s| std::fs::write(path, s).map_err(|e| e.to_string()));
        if let Err(e) = written {
            eprintln!("error: cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if reports.iter().all(|r| r.passed()) {
        0
    } else {
        1
    }
}
