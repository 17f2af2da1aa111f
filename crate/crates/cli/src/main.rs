use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use padic_hg::formal::hgformal::{euler_residual, oi_formula_check, v01_residuals, vinf1_residuals};
use padic_hg::formal::kz::kz_ode_residual;
use padic_hg::formal::mpl::{mpl_coefficients, mpl_coefficients_ode};
use padic_hg::formal::series::{Caps, TruncSeries};
use padic_hg::formal::word::compositions;
use padic_hg::gamma::{gauss_rhs, morita_gamma};
use padic_hg::hypergeom::{
    classify, connection_ratios, disk1_basis, fit_connection_constants, hg_disk0_eval, hg_disk1_eval,
    hg_diskinfty_basis, hg_polynomial_value, radius_report, Disk, HGParams,
};
use padic_hg::{parse_rational, Branch, Error, PAdic, PrimeContext, Rational};

#[derive(Parser)]
#[command(name = "padic-hg", version, about = "p-adic hypergeometric functions in exact arithmetic")]
struct Cli {
    /// Emit one `key=value` record per line instead of the human layout.
    #[arg(long, global = true)]
    records: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate F(a,b;c;z) on the residue disk containing z.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        z: Rational,
    },
    /// Morita's p-adic gamma function at a point of Z_p.
    Gamma {
        #[command(flatten)]
        ctx: CtxArgs,
        #[arg(long, value_parser = rational, allow_hyphen_values = true)]
        x: Rational,
    },
    /// The gamma-ratio product of the p-adic Gauss theorem and its reciprocal.
    GaussRhs {
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Convergence data around 0 as CSV.
    Radius {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 100)]
        nmax: u64,
    },
    /// Residual checks of the formal identities.
    Verify {
        #[arg(long, value_enum)]
        check: Check,
        /// Weight of the KZ solution, which is also the parameter degree cap.
        #[arg(long, default_value_t = 4)]
        wmax: u32,
        /// Order in the disk coordinate.
        #[arg(long, default_value_t = 8)]
        order: u32,
    },
    /// Fit lhs = c1 f1 + c2 f2 on the disk around 1 for a terminating series.
    FitConstants {
        #[command(flatten)]
        params: ParamArgs,
        /// Sample points, repeated or comma-separated; at least three, all on the disk around 1.
        #[arg(long = "z", value_parser = rational, value_delimiter = ',', required = true, allow_hyphen_values = true)]
        zs: Vec<Rational>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Oi,
    KzOde,
    Euler,
    Kummer01,
    KummerInf1,
    MplOde,
}

#[derive(Args)]
struct CtxArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 8)]
    prec: u32,
    /// The value of Log(p).
    #[arg(long, value_parser = rational, default_value = "0", allow_hyphen_values = true)]
    branch: Rational,
}

#[derive(Args)]
struct ParamArgs {
    #[command(flatten)]
    ctx: CtxArgs,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    b: Rational,
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    c: Rational,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Ordered fields of one output record.
struct Record {
    fields: Vec<(String, String)>,
}

impl Record {
    fn new(kind: &str) -> Self {
        Record { fields: vec![("kind".into(), kind.into())] }
    }

    fn with_ctx(kind: &str, ctx: &CtxArgs) -> Self {
        let mut r = Record::new(kind);
        r.push("p", ctx.p);
        r.push("prec", ctx.prec);
        r.push("branch", &ctx.branch);
        r
    }

    fn push(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.fields.push((k.into(), v.to_string()));
        self
    }

    fn emit(&self, records: bool) {
        if records {
            let line: Vec<String> = self
                .fields
                .iter()
                .map(|(k, v)| if v.contains(' ') { format!("{k}=\"{v}\"") } else { format!("{k}={v}") })
                .collect();
            println!("{}", line.join(" "));
        } else {
            let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in &self.fields {
                println!("{k:>width$}  {v}");
            }
            println!();
        }
    }
}

impl ParamArgs {
    fn build(&self) -> Result<(HGParams, PrimeContext, Branch), Error> {
        let params = HGParams::new(self.ctx.p, self.a.clone(), self.b.clone(), self.c.clone())?;
        let ctx = PrimeContext::new(self.ctx.p, self.ctx.prec)?;
        Ok((params, ctx, Branch::new(self.ctx.branch.clone())))
    }

    fn record(&self, kind: &str) -> Record {
        let mut r = Record::with_ctx(kind, &self.ctx);
        r.push("a", &self.a).push("b", &self.b).push("c", &self.c);
        r
    }
}

fn push_hypotheses(r: &mut Record, params: &HGParams, branch: &Branch) {
    for (h, ok) in params.hypothesis_record(branch) {
        r.push(&format!("hyp.{}", h.name()), ok);
    }
}

fn eval(params: &ParamArgs, z: &Rational, records: bool) -> Result<(), Error> {
    let (hp, ctx, branch) = params.build()?;
    let zp = PAdic::from_rational(z, ctx);
    let disk = classify(&zp);
    let mut r = params.record("eval");
    r.push("z", z).push("disk", disk.name());
    push_hypotheses(&mut r, &hp, &branch);
    match disk {
        Disk::Zero => {
            r.push("value", hg_disk0_eval(&hp, &zp)?);
        }
        Disk::One => {
            let v = hg_disk1_eval(&hp, &zp, &branch)?;
            r.push("value", v.value).push("addend1", v.addend1).push("addend2", v.addend2);
            r.push("r1", v.r1).push("r2", v.r2);
        }
        Disk::Infinity => {
            let (f1, f2) = hg_diskinfty_basis(&hp, &zp, &branch)?;
            r.push("basis1", f1).push("basis2", f2);
        }
        Disk::RootOfUnity => {
            return Err(Error::UnsupportedDisk(
                zp.to_string(),
                "only the disks around 0, 1 and infinity carry a series expansion here",
            ))
        }
    }
    r.emit(records);
    Ok(())
}

fn radius(params: &ParamArgs, nmax: u64, records: bool) -> Result<(), Error> {
    let (hp, _, _) = params.build()?;
    let rep = radius_report(&hp, nmax)?;
    let mut head = params.record("radius");
    head.push("nmax", nmax)
        .push("closed_form_matches", rep.closed_form_matches())
        .push("s_limit", &rep.s_limit)
        .push("radius_exponent", &rep.radius_exponent);
    head.emit(records);
    println!("n,ord_term,l_n,big_l_n,m_n,ord_gamma_direct,ord_gamma_closed,partial_s");
    let opt = |x: Option<String>| x.unwrap_or_default();
    for row in &rep.rows {
        println!(
            "{},{},{},{},{},{},{},{}",
            row.n,
            opt(row.ord_term.map(|v| v.to_string())),
            row.l_n,
            row.big_l_n,
            row.m_n,
            row.ord_gamma_direct,
            row.ord_gamma_closed,
            opt(row.partial_s.as_ref().map(|s| s.to_string())),
        );
    }
    Ok(())
}

fn fit(params: &ParamArgs, zs: &[Rational], records: bool) -> Result<(), Error> {
    let (hp, ctx, branch) = params.build()?;
    let values: Vec<(PAdic, PAdic)> = zs
        .iter()
        .map(|z| {
            let v = hg_polynomial_value(hp.alpha(), hp.beta(), hp.gamma(), z)?;
            Ok((PAdic::from_rational(z, ctx), PAdic::from_rational(&v, ctx)))
        })
        .collect::<Result<_, Error>>()?;
    let lookup = |z: &PAdic| -> Result<PAdic, Error> {
        values
            .iter()
            .find(|(p, _)| p == z)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Invalid(format!("{z} is not a sample point")))
    };
    let f1 = |z: &PAdic| disk1_basis(&hp, z, &branch).map(|b| b.0);
    let f2 = |z: &PAdic| disk1_basis(&hp, z, &branch).map(|b| b.1);
    let points: Vec<PAdic> = values.iter().map(|(p, _)| p.clone()).collect();
    let fit = fit_connection_constants(&lookup, &f1, &f2, &points)?;
    let (r1, r2) = connection_ratios(&hp, ctx)?;
    let mut r = params.record("fit");
    push_hypotheses(&mut r, &hp, &branch);
    let show = |v: Option<i64>| v.map_or("exact".to_string(), |v| v.to_string());
    r.push("c1", &fit.c1).push("c2", &fit.c2);
    r.push("residual_valuation", show(fit.residual_valuation()));
    r.push("det_valuation", fit.det_valuation);
    r.push("r1", &r1).push("r2", &r2);
    r.push("c1_minus_r1_valuation", show(fit.c1.distance_valuation(&r1)?));
    r.push("c2_minus_r2_valuation", show(fit.c2.distance_valuation(&r2)?));
    r.emit(records);
    Ok(())
}

fn verify(check: Check, wmax: u32, order: u32, records: bool) -> Result<bool, Error> {
    let caps = Caps::new(wmax, order, wmax);
    let mut residuals: Vec<(String, TruncSeries)> = Vec::new();
    let mut mpl_bad: Option<Vec<u32>> = None;
    let name = match check {
        Check::Oi => {
            let r = oi_formula_check(caps)?;
            residuals.push(("kz_minus_hg".into(), r.kz_minus_hg));
            residuals.push(("hg_minus_oi".into(), r.hg_minus_oi));
            "oi"
        }
        Check::KzOde => {
            for (w, r) in kz_ode_residual(wmax as usize, Caps::new(0, order, wmax))? {
                residuals.push((w.to_string(), r));
            }
            "kz-ode"
        }
        Check::Euler => {
            residuals.push(("euler".into(), euler_residual(caps)?));
            "euler"
        }
        Check::Kummer01 => {
            let (a, b) = v01_residuals(caps)?;
            residuals.push(("entry_11".into(), a));
            residuals.push(("entry_12".into(), b));
            "kummer01"
        }
        Check::KummerInf1 => {
            let (a, b) = vinf1_residuals(caps)?;
            residuals.push(("entry_1".into(), a));
            residuals.push(("entry_2".into(), b));
            "kummer-inf1"
        }
        Check::MplOde => {
            for wt in 1..=wmax {
                for k in compositions(wt) {
                    if mpl_bad.is_none() && mpl_coefficients(&k, order) != mpl_coefficients_ode(&k, order) {
                        mpl_bad = Some(k);
                    }
                }
            }
            "mpl-ode"
        }
    };
    let mut r = Record::new("verify");
    r.push("check", name).push("wmax", wmax).push("order", order);
    let offender = residuals.iter().find_map(|(n, s)| s.first_term().map(|(m, c)| (n.clone(), m, c)));
    let ok = offender.is_none() && mpl_bad.is_none();
    r.push("status", if ok { "ok" } else { "nonzero" });
    if let Some((n, m, c)) = offender {
        r.push("component", n).push("monomial", m).push("coefficient", c);
    }
    if let Some(k) = mpl_bad {
        r.push("index", format!("{k:?}").replace(' ', ""));
    }
    r.emit(records);
    Ok(ok)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Hypothesis { .. } => 2,
        Error::UnsupportedDisk(..) => 3,
        Error::PrecisionExhausted(_) | Error::DepthExhausted(_) => 4,
        _ => 1,
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let records = cli.records;
    match &cli.command {
        Command::Eval { params, z } => eval(params, z, records)?,
        Command::Gamma { ctx, x } => {
            let c = PrimeContext::new(ctx.p, ctx.prec)?;
            let g = morita_gamma(&PAdic::from_rational(x, c))?;
            let mut r = Record::with_ctx("gamma", ctx);
            r.push("x", x).push("precision", g.abs_prec().unwrap_or(0)).push("value", g);
            r.emit(records);
        }
        Command::GaussRhs { params } => {
            let (hp, ctx, branch) = params.build()?;
            let g = gauss_rhs(&hp, ctx)?;
            let mut r = params.record("gauss_rhs");
            push_hypotheses(&mut r, &hp, &branch);
            r.push("product", g.product).push("reciprocal", g.reciprocal);
            r.emit(records);
        }
        Command::Radius { params, nmax } => radius(params, *nmax, records)?,
        Command::Verify { check, wmax, order } => return verify(*check, *wmax, *order, records),
        Command::FitConstants { params, zs } => fit(params, zs, records)?,
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Usage errors exit 1 so that 2 stays reserved for hypothesis violations.
            let _ = e.print();
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
