use std::fmt::Write as _;

use hurwitz::counting::{
    cd_quantities, g_rho, g_rho_exhaustive, sandwich_series, x_rho_chunked, ApproxRecord,
    CDParams, GCount, Method, SandwichReport, Witness,
};
use hurwitz::diophantine::{rows_csv, CheckRow};
use hurwitz::engine::{classical_expand, convergents, hurwitz_expand, to_negative, PartialQuotientSeq};
use hurwitz::real::{parse_literal, ParseOptions};
use hurwitz::report::{decimal_enclosure, SCHEMA_VERSION};
use hurwitz::transform::{classical_to_hurwitz, omitted_indices};
use hurwitz::verify::{self, Prop};
use hurwitz::{Error, ExactReal, Kind, Rational};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::config::{Algo, Command, CountCommand, CountMethod, Format, Global, Render, RunConfig};

/// Decimal places used when an exact value is shown as an enclosure.
const SHOWN_DIGITS: u32 = 20;

/// The rendered output and whether every requested check passed.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Precision(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Precision(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Precision(m) => f.write_str(m),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn core_err(e: Error) -> CliError {
    match e {
        Error::PrecisionExhausted { bits } => CliError::Precision(format!(
            "precision exhausted at {bits} bits; raise --precision-bits or the @bits of the dec: literal"
        )),
        other => CliError::Usage(other.to_string()),
    }
}

struct Ctx<'a> {
    g: &'a Global,
    opts: ParseOptions,
}

impl Ctx<'_> {
    fn real(&self, what: &str, text: &str) -> CliResult<ExactReal> {
        parse_literal(text, &self.opts).map_err(|e| CliError::Usage(format!("--{what} {text:?}: {e}")))
    }

    fn rational(&self, what: &str, text: &str) -> CliResult<Rational> {
        match self.real(what, text)? {
            ExactReal::Rational(r) => Ok(r),
            _ => Err(CliError::Usage(format!("--{what} must be rational, got {text:?}"))),
        }
    }

    fn integer(&self, what: &str, text: &str) -> CliResult<BigInt> {
        let r = self.rational(what, text)?;
        if r.is_integer() {
            Ok(r.to_integer())
        } else {
            Err(CliError::Usage(format!("--{what} must be an integer, got {text:?}")))
        }
    }
}

fn int_list(what: &str, text: &str) -> CliResult<Vec<BigInt>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Usage(format!("--{what}: {t:?} is not an integer")))
        })
        .collect()
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|b| b.to_string()).collect()
}

fn json_text(mut v: Value) -> String {
    if let Value::Object(m) = &mut v {
        m.insert("schema".into(), json!(SCHEMA_VERSION));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

pub fn run(config: &RunConfig) -> CliResult<Outcome> {
    let ctx = Ctx {
        g: &config.global,
        opts: ParseOptions {
            precision_bits: config.global.precision_bits,
            ..ParseOptions::default()
        },
    };
    match &config.command {
        Command::Expand { algo, x, terms, negative } => expand(&ctx, *algo, x, *terms, *negative),
        Command::Transform { x, b, terms, prefix } => transform(&ctx, x.as_deref(), b.as_deref(), *terms, *prefix),
        Command::Verify { prop, x, terms, n, rho, classical_terms, delta } => verify_cmd(
            &ctx,
            *prop,
            x.as_deref(),
            terms.as_deref(),
            *n,
            *rho,
            classical_terms.unwrap_or(4 * n),
            delta,
        ),
        Command::Count(c) => count(&ctx, c),
        Command::Replay { path } => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            let inner = RunConfig::from_json(&text)
                .map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
            if matches!(inner.command, Command::Replay { .. }) {
                return Err(CliError::Usage("a replayed config cannot itself be a replay".into()));
            }
            run(&inner)
        }
    }
}

fn expand(ctx: &Ctx, algo: Algo, x: &str, terms: usize, negative: bool) -> CliResult<Outcome> {
    let v = ctx.real("x", x)?;
    let mut seq = match algo {
        Algo::Hurwitz => hurwitz_expand(&v, terms),
        Algo::Classical => classical_expand(&v, terms),
    }
    .map_err(core_err)?;
    if negative {
        if algo != Algo::Hurwitz {
            return Err(CliError::Usage("--negative applies to --algo hurwitz only".into()));
        }
        seq = to_negative(&seq).map_err(core_err)?;
    }
    let conv = convergents(&seq, seq.len()).map_err(core_err)?;
    let text = match ctx.g.format {
        Format::Json => json_text(json!({
            "x": v.to_string(),
            "kind": seq.kind(),
            "terms": strings(seq.terms()),
            "finite": seq.is_finite(),
            "convergents": to_value(&conv),
        })),
        Format::Csv => {
            let mut s = String::from("n,a_n,p_n,q_n\n");
            for (a, c) in seq.terms().iter().zip(&conv) {
                let _ = writeln!(s, "{},{},{},{}", c.index, a, c.p, c.q);
            }
            s
        }
        Format::Plain => {
            let mut s = format!(
                "{} expansion of {}: [{}]{}\n",
                seq.kind(),
                v,
                strings(seq.terms()).join(", "),
                if seq.is_finite() { " (finite)" } else { "" }
            );
            for c in &conv {
                let _ = writeln!(s, "  p_{0}/q_{0} = {1}/{2}", c.index, c.p, c.q);
            }
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

fn transform(ctx: &Ctx, x: Option<&str>, b: Option<&str>, terms: usize, prefix: bool) -> CliResult<Outcome> {
    let (source, seq) = match (x, b) {
        (Some(x), _) => {
            let v = ctx.real("x", x)?;
            (v.to_string(), classical_expand(&v, terms).map_err(core_err)?)
        }
        (None, Some(b)) => {
            let list = int_list("b", b)?;
            (b.to_string(), PartialQuotientSeq::new(Kind::Classical, list, !prefix))
        }
        (None, None) => return Err(CliError::Usage("give --x or --b".into())),
    };
    let t = classical_to_hurwitz(&seq).map_err(core_err)?;
    let omitted = omitted_indices(&t.trace);
    let sel = &t.trace.selection;
    let text = match ctx.g.format {
        Format::Json => json_text(json!({
            "input": source,
            "classical": strings(seq.terms()),
            "finite": seq.is_finite(),
            "S": sel.s,
            "S_prime": sel.s_prime,
            "provisional": sel.provisional,
            "funny_form": to_value(&t.funny),
            "signed_quotients": strings(&t.funny.signed_quotients()),
            "hurwitz": strings(t.hurwitz.terms()),
            "omitted": omitted,
            "tie_normalized": t.trace.tie_normalized,
            "steps": to_value(&t.trace.steps),
        })),
        Format::Csv => t.trace.json_lines(),
        Format::Plain => {
            let mut s = String::new();
            let _ = writeln!(s, "classical: [{}]", strings(seq.terms()).join(", "));
            let _ = writeln!(s, "S  = {:?}", sel.s);
            let _ = writeln!(s, "S' = {:?}{}", sel.s_prime, if sel.provisional { " (last block provisional)" } else { "" });
            let _ = writeln!(s, "hurwitz: [{}]", strings(t.hurwitz.terms()).join(", "));
            let _ = writeln!(s, "omitted classical convergents: {omitted:?}");
            s
        }
    };
    Ok(Outcome { text, ok: true })
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    ctx: &Ctx,
    prop: Prop,
    x: Option<&str>,
    terms: Option<&str>,
    n: usize,
    rho: u64,
    classical_terms: usize,
    deltas: &str,
) -> CliResult<Outcome> {
    let need_x = || -> CliResult<ExactReal> {
        match x {
            Some(x) => ctx.real("x", x),
            None => Err(CliError::Usage(format!("{prop} needs --x"))),
        }
    };
    let quotients = || -> CliResult<Vec<BigInt>> {
        match (terms, x) {
            (Some(t), _) => int_list("terms", t),
            (None, Some(_)) => Ok(hurwitz_expand(&need_x()?, n + 1).map_err(core_err)?.into_terms()),
            (None, None) => Err(CliError::Usage(format!("{prop} needs --terms or --x"))),
        }
    };
    let rows: Vec<CheckRow> = match prop {
        Prop::Convergents => verify::convergent_checks(&need_x()?, n, classical_terms, rho),
        Prop::Validity => verify::validity_checks(&quotients()?),
        Prop::Fold => verify::fold_checks(&quotients()?),
        Prop::ErrorSign => verify::error_sign_checks(&need_x()?, n),
        Prop::Growth => verify::growth_checks(&need_x()?, n),
        Prop::Bounds => verify::bound_checks(&need_x()?, n),
        Prop::Sandwich => {
            let ds = deltas
                .split(',')
                .map(|d| ctx.rational("delta", d.trim()))
                .collect::<CliResult<Vec<_>>>()?;
            verify::sandwich_checks(&need_x()?, &ds, n)
        }
    }
    .map_err(core_err)?;
    let ok = verify::all_pass(&rows);
    let text = match ctx.g.format {
        Format::Json => json_text(json!({
            "prop": prop,
            "pass": ok,
            "rows": to_value(&rows),
        })),
        Format::Csv => rows_csv(&rows),
        Format::Plain => {
            let mut s = String::new();
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{:>4} {:<24} {} | {} {}",
                    r.n,
                    r.check,
                    r.lhs,
                    r.rhs,
                    if r.pass { "ok" } else { "FAIL" }
                );
            }
            let failed = rows.iter().filter(|r| !r.pass).count();
            let _ = writeln!(s, "{prop}: {} rows, {failed} failed", rows.len());
            s
        }
    };
    Ok(Outcome { text, ok })
}

fn quality_text(ctx: &Ctx, q: &ExactReal, render: Render) -> CliResult<String> {
    Ok(match render {
        Render::Surd => q.to_string(),
        Render::Decimal => {
            let e = q
                .enclosure(ctx.g.precision_bits.max(4 * SHOWN_DIGITS))
                .ok_or_else(|| core_err(Error::PrecisionExhausted { bits: ctx.g.precision_bits }))?;
            format!("\"{}\"", decimal_enclosure(&e, SHOWN_DIGITS))
        }
    })
}

fn records_csv(ctx: &Ctx, records: &[ApproxRecord], render: Render) -> CliResult<String> {
    let mut s = String::from("p,q,quality\n");
    for r in records {
        let _ = writeln!(s, "{},{},{}", r.p, r.q, quality_text(ctx, &r.quality, render)?);
    }
    Ok(s)
}

fn witnesses_csv(ctx: &Ctx, ws: &[Witness], render: Render) -> CliResult<String> {
    let mut s = String::from("p,q,form\n");
    for w in ws {
        let _ = writeln!(s, "{},{},{}", w.p, w.q, quality_text(ctx, &w.form, render)?);
    }
    Ok(s)
}

fn sandwich_csv(series: &[SandwichReport]) -> String {
    let mut s = String::from(
        "n,delta,count_lower,count_mid,count_upper,logsum_lower_lo,logsum_lower_hi,log_qn_lo,log_qn_hi,logsum_upper_lo,logsum_upper_hi,pass\n",
    );
    for r in series {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.n,
            r.delta,
            r.count_lower,
            r.count_mid,
            r.count_upper,
            r.logsum_lower.lo,
            r.logsum_lower.hi,
            r.log_qn.lo,
            r.log_qn.hi,
            r.logsum_upper.lo,
            r.logsum_upper.hi,
            r.holds()
        );
    }
    s
}

fn count(ctx: &Ctx, c: &CountCommand) -> CliResult<Outcome> {
    match c {
        CountCommand::Xrho { x, delta, rho, method, witnesses, render } => {
            let v = ctx.real("x", x)?;
            let d = ctx.rational("delta", delta)?;
            let r = ctx.integer("rho", rho)?;
            let m = match method {
                CountMethod::Convergent => Method::Convergent,
                CountMethod::Oracle => Method::Oracle,
            };
            let res = x_rho_chunked(&v, &d, &r, m, ctx.g.chunk_size).map_err(core_err)?;
            let text = match ctx.g.format {
                Format::Json => {
                    let mut o = json!({
                        "x": v.to_string(),
                        "delta": d.to_string(),
                        "rho": r.to_string(),
                        "method": res.method,
                        "count": res.count.to_string(),
                        "log_rho": to_value(&res.log_rho),
                        "value": to_value(&res.value),
                    });
                    if *witnesses {
                        o["witnesses"] = to_value(&res.records);
                    }
                    json_text(o)
                }
                Format::Csv => records_csv(ctx, &res.records, *render)?,
                Format::Plain => {
                    let mut s = format!(
                        "X_rho count {} for rho = {r}, delta = {d}; count / ln rho in {}\n",
                        res.count,
                        decimal_enclosure(&res.value, SHOWN_DIGITS)
                    );
                    if *witnesses {
                        for w in &res.records {
                            let _ = writeln!(s, "  {}/{}  quality {}", w.p, w.q, quality_text(ctx, &w.quality, *render)?);
                        }
                    }
                    s
                }
            };
            Ok(Outcome { text, ok: true })
        }
        CountCommand::Sandwich { x, delta, n } => {
            let v = ctx.real("x", x)?;
            let d = ctx.rational("delta", delta)?;
            let series = sandwich_series(&v, &d, *n).map_err(core_err)?;
            let ok = series.iter().all(SandwichReport::holds);
            let text = match ctx.g.format {
                Format::Json => json_text(json!({
                    "x": v.to_string(),
                    "delta": d.to_string(),
                    "n": n,
                    "pass": ok,
                    "series": to_value(&series),
                })),
                Format::Csv => sandwich_csv(&series),
                Format::Plain => match series.last() {
                    Some(s) => format!(
                        "n = {}: counts ({}, {}, {}), log sandwich {}, {}\n",
                        s.n,
                        s.count_lower,
                        s.count_mid,
                        s.count_upper,
                        if s.logs_hold() { "holds" } else { "FAILS" },
                        if ok { "all indices pass" } else { "some index FAILS" }
                    ),
                    None => "no indices\n".into(),
                },
            };
            Ok(Outcome { text, ok })
        }
        CountCommand::Cd { x, delta, n } => {
            let v = ctx.real("x", x)?;
            let d = ctx.rational("delta", delta)?;
            let cd = cd_quantities(&v, &d, *n).map_err(core_err)?;
            let text = match ctx.g.format {
                Format::Json => {
                    let mut o = to_value(&cd);
                    o["x"] = json!(v.to_string());
                    json_text(o)
                }
                Format::Csv => format!(
                    "n,delta,alpha_lo,alpha_hi,e_n,f_n\n{},{},{},{},{},{}\n",
                    cd.n, cd.delta, cd.alpha.lo, cd.alpha.hi, cd.e_n, cd.f_n
                ),
                Format::Plain => format!(
                    "n = {}, delta = {}: alpha in {}, e_n = {}, f_n = {}\n",
                    cd.n,
                    cd.delta,
                    decimal_enclosure(&cd.alpha, SHOWN_DIGITS),
                    cd.e_n,
                    cd.f_n
                ),
            };
            Ok(Outcome { text, ok: true })
        }
        CountCommand::Gform { a, b, c, d, delta, kappa, rho, witnesses, exhaustive, render } => {
            let params = CDParams::new(
                ctx.real("a", a)?,
                ctx.real("b", b)?,
                ctx.real("c", c)?,
                ctx.real("d", d)?,
                ctx.rational("delta", delta)?,
                ctx.rational("kappa", kappa)?,
            )
            .map_err(core_err)?;
            let r = ctx.integer("rho", rho)?;
            let g: GCount = if *exhaustive {
                g_rho_exhaustive(&params, &r)
            } else {
                g_rho(&params, &r)
            }
            .map_err(core_err)?;
            let text = match ctx.g.format {
                Format::Json => {
                    let mut o = json!({
                        "a": params.a().to_string(),
                        "b": params.b().to_string(),
                        "c": params.c().to_string(),
                        "d": params.d().to_string(),
                        "delta": params.delta().to_string(),
                        "kappa": params.kappa().to_string(),
                        "rho": r.to_string(),
                        "count": g.count.to_string(),
                    });
                    if *witnesses {
                        o["witnesses"] = to_value(&g.witnesses);
                    }
                    json_text(o)
                }
                Format::Csv => witnesses_csv(ctx, &g.witnesses, *render)?,
                Format::Plain => {
                    let mut s = format!("G({r}) = {}\n", g.count);
                    if *witnesses {
                        for w in &g.witnesses {
                            let _ = writeln!(s, "  (p, q) = ({}, {})  Q = {}", w.p, w.q, quality_text(ctx, &w.form, *render)?);
                        }
                    }
                    s
                }
            };
            Ok(Outcome { text, ok: true })
        }
    }
}
