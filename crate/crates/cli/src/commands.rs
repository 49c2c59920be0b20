use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use speclab::beckmann::{consistency_check, predict};
use speclab::bounds::{
    abc_exponent, abc_exponent_best, bcl_cyclic_check, beta_exponent, condition_eq1, condition_eq2,
    corollary_case_classifier, malle_alpha, rh_genus, GroupDescriptor, RamificationType,
};
use speclab::census::{
    count_poly_sets, fit_series, local_global_ratio_series, quad_field_census, s3_survey, twist_density_series,
    DensitySeries,
};
use speclab::covers::{quad_cover, CubicCover, GaloisCover, QuadraticCover};
use speclab::polynomial::{parse_bivariate, parse_poly};
use speclab::twistlab::{
    admissible_prime_scan, build_curve, default_base_point, everywhere_locally_soluble, hasse_failure_candidates,
    local_solubility, obstruction_certificate, LocalOutcome, Place, TwistedCurve, Verdict,
};
use speclab::{BigInt, ProjectivePoint};

const SCHEMAS: &str = "\
Output is JSON unless --format csv is given.
CSV schemas:
  density     x,numerator,denominator,unknown,lower,upper
  lgratio     x,denominator,global,global_unknown,local,local_unknown,gap
  beckmann    t0,prime,orbit,i_p,predicted_order,actual_ramified  (sampling mode)
  exponent    order,indices,r,e,alpha,beta,genus,eq1,eq1_cases,eq2,eq2_cases
With --out, a manifest is written next to the output (or to --manifest) and
`speclab replay MANIFEST` reproduces the output byte for byte.
Exit status: 0 success, 2 result contains unknowns, 1 usage or input error.
Config files hold one `flag = value` per line, flags without the leading dashes.";

#[derive(Parser, Debug)]
#[command(name = "speclab", version, about = "Specialization, twist and density experiments over Q", after_help = SCHEMAS)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file mirroring the flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Manifest path; defaults to `<out>.manifest.json`.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Invariants of the specialized field at t0.
    Specialize {
        /// `P(T)` for `Y^2 = P(T)`, or a monic cubic in Y.
        #[arg(long)]
        cover: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: String,
    },
    /// Predicted ramification at one point, or a sampled consistency check.
    Beckmann {
        #[arg(long)]
        cover: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
        #[arg(long, default_value_t = 1000)]
        sample: usize,
        #[arg(long, default_value_t = 100)]
        height: i64,
        #[arg(long, env = "SPECLAB_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Admissible prime twists `d = m0 p` of a rootless even-degree quadratic cover.
    TwistScan {
        #[arg(long)]
        cover: String,
        #[arg(long, allow_hyphen_values = true)]
        t0: Option<String>,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Local solubility of `y^n = d P(t)` at one place, or everywhere.
    Local {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        d: String,
        /// A prime or `inf`; all places when absent.
        #[arg(long)]
        place: Option<String>,
        /// p-adic precision cap.
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Valuation obstruction for `y^n = d P(t)`.
    Certify {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long)]
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Locally soluble twists without a point up to the search height.
    HasseScan {
        #[arg(long)]
        cover: String,
        #[arg(long, default_value_t = 1000)]
        x: u64,
        #[arg(long, default_value_t = 10_000)]
        height: u64,
    },
    /// Share of quadratic fields that are specializations of `Y^2 = P(T)`.
    Density {
        #[arg(long)]
        cover: String,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "16,64,256")]
        schedule: Vec<u64>,
    },
    /// Flag proportions over monic cubics in Y with coefficients of degree <= D and height <= H.
    S3Survey {
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        height: u64,
        #[arg(long, default_value_t = 10_000)]
        sample: u64,
        #[arg(long, env = "SPECLAB_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Exponents and admissibility conditions for a group order and branch indices.
    Exponent {
        #[arg(long)]
        order: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        indices: Vec<u64>,
        /// Prime for the central-element exponent; the least prime of the order by default.
        #[arg(long)]
        q: Option<u64>,
        /// Treat the group as Z/order.
        #[arg(long, conflicts_with = "abelian")]
        cyclic: bool,
        /// Invariant factors of an abelian group of the given order.
        #[arg(long, value_delimiter = ',')]
        abelian: Option<Vec<u64>>,
        /// Sub-multisets to optimize over, `;`-separated, e.g. `2,2,2,2,2;2,2,2,2,2,2`.
        #[arg(long)]
        subsets: Option<String>,
    },
    /// Polynomial set counts, or the quadratic fields with |d_F| <= fields.
    Census {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long = "big-n", requires = "height")]
        big_n: Option<usize>,
        #[arg(long)]
        height: Option<u64>,
        #[arg(long, conflicts_with = "big_n")]
        fields: Option<u64>,
    },
    /// Global against everywhere-local specializations of a rootless quadratic cover.
    Lgratio {
        #[arg(long)]
        cover: String,
        #[arg(long, value_delimiter = ',', required = true)]
        grid: Vec<u64>,
        #[arg(long, default_value_t = 256)]
        height: u64,
    },
    /// Re-run a recorded manifest.
    Replay { path: PathBuf },
}

impl Command {
    pub fn seed(&self) -> Option<u64> {
        match self {
            Command::Beckmann { seed, t0: None, .. } | Command::S3Survey { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// Polynomial texts given on the command line.
    pub fn inputs(&self) -> Vec<String> {
        match self {
            Command::Specialize { cover, .. }
            | Command::Beckmann { cover, .. }
            | Command::TwistScan { cover, .. }
            | Command::HasseScan { cover, .. }
            | Command::Density { cover, .. }
            | Command::Lgratio { cover, .. } => vec![cover.clone()],
            Command::Local { poly, .. } | Command::Certify { poly, .. } => vec![poly.clone()],
            _ => vec![],
        }
    }
}

pub struct Output {
    pub body: String,
    pub summary: String,
    pub unknown: bool,
}

fn json_body<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

enum AnyCover {
    Quadratic(QuadraticCover),
    Cubic(CubicCover),
}

impl AnyCover {
    fn as_dyn(&self) -> &dyn GaloisCover {
        match self {
            AnyCover::Quadratic(c) => c,
            AnyCover::Cubic(c) => c,
        }
    }
}

fn parse_cover(src: &str) -> Result<AnyCover> {
    if src.contains(['Y', 'y']) {
        Ok(AnyCover::Cubic(CubicCover::new(&parse_bivariate(src)?)?))
    } else {
        Ok(AnyCover::Quadratic(quad_cover(&parse_poly(src)?)?))
    }
}

fn parse_quadratic(src: &str) -> Result<QuadraticCover> {
    match parse_cover(src)? {
        AnyCover::Quadratic(c) => Ok(c),
        AnyCover::Cubic(_) => bail!("expected a polynomial in T for Y^2 = P(T)"),
    }
}

fn parse_point(s: &str) -> Result<ProjectivePoint> {
    Ok(s.parse()?)
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse().map_err(|_| anyhow!("bad integer '{s}'"))
}

fn twist(n: u32, poly: &str, d: &str) -> Result<TwistedCurve> {
    Ok(TwistedCurve::new(build_curve(n, &parse_poly(poly)?)?, parse_int(d)?)?)
}

fn json_only(format: Format, name: &str) -> Result<()> {
    if format == Format::Csv {
        bail!("{name} has no CSV output");
    }
    Ok(())
}

fn series_summary(s: &DensitySeries) -> String {
    match s.len().checked_sub(1) {
        Some(i) => format!(
            "x = {}: {}/{} found, {} unknown, envelope [{:.6}, {:.6}]",
            s.x[i],
            s.numerator[i],
            s.denominator[i],
            s.unknown[i],
            s.lower(i).unwrap_or(0.0),
            s.upper(i).unwrap_or(0.0)
        ),
        None => "empty grid".into(),
    }
}

pub fn execute(cmd: &Command, format: Format) -> Result<Output> {
    match cmd {
        Command::Specialize { cover, t0 } => {
            json_only(format, "specialize")?;
            let c = parse_cover(cover)?;
            let rep = c.as_dyn().specialize(&parse_point(t0)?)?;
            let m = rep.m.as_ref().map_or("-".into(), |m| m.to_string());
            Ok(Output { summary: format!("group {}, m = {m}, dF = {}", rep.group, rep.d_f), body: json_body(&rep)?, unknown: false })
        }
        Command::Beckmann { cover, t0, sample, height, seed } => {
            let c = parse_cover(cover)?;
            let c = c.as_dyn();
            match t0 {
                Some(t0) => {
                    json_only(format, "beckmann --t0")?;
                    let t0 = parse_point(t0)?;
                    let pred = predict(c, &t0)?;
                    let spec = c.specialize(&t0)?;
                    let summary = format!("{} predicted ramified primes", pred.predicted_ramified().len());
                    Ok(Output { body: json_body(&json!({ "prediction": pred, "specialization": spec }))?, summary, unknown: false })
                }
                None => {
                    let stats = consistency_check(c, *sample, *height, *seed);
                    let summary = format!("checked {}, matches {}, mismatches {}", stats.checked, stats.matches, stats.mismatches.len());
                    let body = match format {
                        Format::Json => json_body(&stats)?,
                        Format::Csv => {
                            let mut s = String::from("t0,prime,orbit,i_p,predicted_order,actual_ramified\n");
                            for r in &stats.rows {
                                let orbit = r.orbit.map_or(String::new(), |o| o.to_string());
                                writeln!(s, "{},{},{},{},{},{}", r.t0, r.prime, orbit, r.i_p, r.predicted_order, r.actual_ramified)?;
                            }
                            s
                        }
                    };
                    Ok(Output { body, summary, unknown: false })
                }
            }
        }
        Command::TwistScan { cover, t0, bound } => {
            json_only(format, "twist-scan")?;
            let c = parse_quadratic(cover)?;
            let t0 = match t0 {
                Some(t) => parse_point(t)?,
                None => default_base_point(&c),
            };
            let rep = admissible_prime_scan(&c, &t0, *bound)?;
            let summary = format!("t0 = {}, m0 = {}, {} admissible twists", rep.t0, rep.m0, rep.twists.len());
            Ok(Output { body: json_body(&rep)?, summary, unknown: false })
        }
        Command::Local { n, poly, d, place, cap } => {
            json_only(format, "local")?;
            let c = twist(*n, poly, d)?;
            match place {
                Some(p) => {
                    let place = if p.eq_ignore_ascii_case("inf") { Place::Infinity } else { Place::Prime(parse_int(p)?) };
                    let out = local_solubility(&c, &place, *cap);
                    let unknown = out == LocalOutcome::Unknown;
                    let body = json_body(&json!({ "curve": c.to_string(), "place": place, "outcome": out }))?;
                    let state = if out.is_soluble() { "soluble" } else if out.is_insoluble() { "insoluble" } else { "unknown" };
                    Ok(Output { body, summary: format!("{c} at {place}: {state}"), unknown })
                }
                None => {
                    let rep = everywhere_locally_soluble(&c)?;
                    let unknown = rep.verdict == Verdict::Unknown;
                    let summary = format!("{c}: everywhere locally soluble = {:?}", rep.verdict);
                    Ok(Output { body: json_body(&json!({ "curve": c.to_string(), "report": rep }))?, summary, unknown })
                }
            }
        }
        Command::Certify { n, poly, d } => {
            json_only(format, "certify")?;
            let c = twist(*n, poly, d)?;
            let cert = obstruction_certificate(&c)?;
            let summary = match &cert {
                Some(cert) => format!("{c}: obstructed at p = {}", cert.p),
                None => format!("{c}: no certificate"),
            };
            Ok(Output { body: json_body(&json!({ "curve": c.to_string(), "certificate": cert }))?, summary, unknown: false })
        }
        Command::HasseScan { cover, x, height } => {
            json_only(format, "hasse-scan")?;
            let c = parse_quadratic(cover)?;
            let cands = hasse_failure_candidates(&c, *x, *height)?;
            let summary = format!("{} candidates, none searched beyond height {height}", cands.len());
            Ok(Output { body: json_body(&cands)?, summary, unknown: false })
        }
        Command::Density { cover, grid, schedule } => {
            let c = parse_quadratic(cover)?;
            let s = twist_density_series(&c, grid, schedule)?;
            let unknown = s.unknown.iter().any(|&u| u > 0);
            let summary = series_summary(&s);
            let body = match format {
                Format::Csv => s.to_csv(),
                Format::Json => {
                    let fit = fit_series(&s).ok();
                    json_body(&json!({ "series": s, "fit": fit }))?
                }
            };
            Ok(Output { body, summary, unknown })
        }
        Command::S3Survey { degree, height, sample, seed } => {
            json_only(format, "s3-survey")?;
            let rep = s3_survey(*degree, *height, *sample, *seed)?;
            let summary = format!("all flags {}/{} = {:.4}", rep.all_flags.hits, rep.all_flags.total, rep.all_flags.value);
            Ok(Output { body: json_body(&rep)?, summary, unknown: false })
        }
        Command::Exponent { order, indices, q, cyclic, abelian, subsets } => exponent(*order, indices, *q, *cyclic, abelian.as_deref(), subsets.as_deref(), format),
        Command::Census { n, big_n, height, fields } => {
            json_only(format, "census")?;
            match (big_n, height, fields) {
                (_, _, Some(x)) => {
                    let f = quad_field_census(*x);
                    Ok(Output { summary: format!("{} quadratic fields with |d_F| <= {x}", f.len()), body: json_body(&f)?, unknown: false })
                }
                (Some(big_n), Some(h), None) => {
                    let c = count_poly_sets(*n, *big_n, *h)?;
                    Ok(Output { summary: format!("|P| = {}, |P_2| = {}", c.p, c.p2), body: json_body(&c)?, unknown: false })
                }
                _ => bail!("census needs --big-n with --height, or --fields"),
            }
        }
        Command::Lgratio { cover, grid, height } => {
            let c = parse_quadratic(cover)?;
            let s = local_global_ratio_series(&c, grid, *height)?;
            let unknown = s.global.unknown.iter().chain(&s.local.unknown).any(|&u| u > 0);
            let gap = s.gap();
            let summary = match gap.last() {
                Some(g) => format!("x = {}: {} locally soluble without a found point", grid.last().unwrap(), g),
                None => "empty grid".into(),
            };
            let body = match format {
                Format::Csv => {
                    let mut out = String::from("x,denominator,global,global_unknown,local,local_unknown,gap\n");
                    for i in 0..s.global.len() {
                        writeln!(
                            out,
                            "{},{},{},{},{},{},{}",
                            s.global.x[i], s.global.denominator[i], s.global.numerator[i], s.global.unknown[i], s.local.numerator[i], s.local.unknown[i], gap[i]
                        )?;
                    }
                    out
                }
                Format::Json => json_body(&json!({ "series": s, "gap": gap }))?,
            };
            Ok(Output { body, summary, unknown })
        }
        Command::Replay { .. } => bail!("nested replay"),
    }
}

fn exponent(
    order: u64,
    indices: &[u64],
    q: Option<u64>,
    cyclic: bool,
    abelian: Option<&[u64]>,
    subsets: Option<&str>,
    format: Format,
) -> Result<Output> {
    let g = match abelian {
        Some(f) => {
            let g = GroupDescriptor::abelian(f)?;
            if g.order != order {
                bail!("invariant factors multiply to {}, not {order}", g.order);
            }
            g
        }
        None if cyclic => GroupDescriptor::cyclic(order)?,
        None => GroupDescriptor::new(order)?,
    };
    let rt = RamificationType::new(indices.to_vec())?;
    if !rt.fits(order) {
        bail!("{}", speclab::Error::InconsistentRamification);
    }
    let alpha = malle_alpha(&g)?;
    let e = abc_exponent(&rt, order).ok();
    let beta = beta_exponent(q.unwrap_or(g.least_prime), order)?;
    let genus = rh_genus(order, &rt).ok();
    let eq1 = condition_eq1(&rt);
    let eq2 = condition_eq2(&rt, &g);
    let show = |v: &Option<speclab::BigRational>| v.as_ref().map_or(String::new(), |x| x.to_string());
    let idx: Vec<String> = indices.iter().map(u64::to_string).collect();

    let mut doc = json!({
        "order": order,
        "indices": indices,
        "r": rt.r(),
        "e0": rt.e0(),
        "q0": rt.q0(),
        "p": g.least_prime,
        "alpha": alpha.to_string(),
        "e": e.as_ref().map(|x| x.to_string()),
        "beta": beta,
        "genus": genus,
        "eq1": eq1,
        "eq2": eq2,
    });
    if cyclic {
        doc["bcl"] = serde_json::to_value(bcl_cyclic_check(order, indices))?;
    }
    if cyclic || abelian.is_some() {
        doc["corollaries"] = serde_json::to_value(corollary_case_classifier(&g)?)?;
    }
    if let Some(src) = subsets {
        let sets = src
            .split(';')
            .map(|s| {
                let v = s.split(',').map(|x| x.trim().parse::<u64>()).collect::<std::result::Result<Vec<_>, _>>()?;
                Ok(RamificationType::new(v)?)
            })
            .collect::<Result<Vec<_>>>()
            .context("bad --subsets")?;
        let best = abc_exponent_best(&sets, order).ok().map(|(i, e)| json!({ "subset": sets[i].indices, "e": e.to_string() }));
        doc["best_subset"] = best.unwrap_or(Value::Null);
    }
    let summary = format!(
        "r = {}, e = {}, alpha = {alpha}, beta = {}, g = {}",
        rt.r(),
        e.as_ref().map_or("undefined".into(), |x| x.to_string()),
        beta.beta,
        genus.map_or("-".into(), |g| g.to_string())
    );
    let body = match format {
        Format::Json => json_body(&doc)?,
        Format::Csv => format!(
            "order,indices,r,e,alpha,beta,genus,eq1,eq1_cases,eq2,eq2_cases\n{},{},{},{},{},{},{},{},{},{},{}\n",
            order,
            idx.join(" "),
            rt.r(),
            show(&e),
            alpha,
            beta.beta,
            genus.map_or(String::new(), |g| g.to_string()),
            eq1.holds,
            eq1.cases.join(" "),
            eq2.holds,
            eq2.cases.join(" ")
        ),
    };
    Ok(Output { body, summary, unknown: false })
}
