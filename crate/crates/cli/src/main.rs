//! Command-line front end: parse matrix/block/scroll specifications, run the
//! analyses, and emit structured JSON reports.
//!
//! Exit codes: 0 when the command's verdict passes (or the command only
//! reports), 1 when a verdict is refuted, 2 on input or bounds errors (with a
//! machine-readable error object on stderr).

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use kw_koszul::filtration::{
    verify_koszul_filtration, verify_structural_identities, FiltrationBounds,
};
use kw_koszul::homology::{nonkoszul_witness, HomologyBounds};
use kw_koszul::invariants::{
    classify_scroll, hilbert_correction, koszul_verdict, regularity_formula, LengthSequence,
};
use kw_koszul::pencil::{
    kw_normal_form, section, verify_certificate, KWForm, LinearForm, LinearFormMatrix,
};
use kw_koszul::rational::Rational;
use kw_koszul::ringmodel::{
    groebner_check_degreewise, hilbert_function, quotient_res_betti, scroll_term_order,
    two_minors, BettiBounds, GeneratorSet, Poly, PolyRing,
};
use kw_koszul::schema::{blocks_to_value, matrix_to_value, parse_input, Input};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::time::Instant;

const REPORT_SCHEMA: &str = "kwk-report-v1";

#[derive(Parser)]
#[command(name = "kwk")]
#[command(about = "Kronecker-Weierstrass normal forms and Koszul certification for determinantal rings of 2xe matrices of linear forms")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct IoArgs {
    /// Path of a JSON input object ({"kind": "matrix" | "blocks" | "scroll"}).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline JSON input object.
    #[arg(long)]
    inline: Option<String>,
    /// Degree bound for all degreewise verdicts.
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Bounds overrides as key=value (betti-vars, betti-degree, interval,
    /// target-degree, filt-vars, filt-scroll-blocks, filt-scroll-length).
    #[arg(long = "bounds")]
    bounds: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Kronecker-Weierstrass normal form with an exact certificate.
    NormalForm {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Cut by linear forms, then compute the normal form of the section.
    Section {
        #[command(flatten)]
        io: IoArgs,
        /// JSON array of linear forms, each {variable: coefficient, ...}.
        #[arg(long)]
        forms: String,
    },
    /// Length sequence, Koszul verdict, regularity, Hilbert correction.
    Analyze {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Hilbert function: closed formula against the degreewise oracle.
    Hilbert {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Koszul filtration construction and verification.
    Filtration {
        #[command(subcommand)]
        sub: FiltrationCmd,
    },
    /// Degreewise Groebner-basis check for the 2-minors.
    GroebnerCheck {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Classification predicates of a rational normal scroll type.
    Classify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Non-Koszulness witness via relative simplicial homology.
    HomologyWitness {
        /// Nilpotent length of the section (long block of the scroll).
        #[arg(long)]
        m: u32,
        /// Scroll length (short block).
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "bounds")]
        bounds: Vec<String>,
    },
    /// Graded Betti numbers of the residue field over the quotient ring.
    Betti {
        #[command(flatten)]
        io: IoArgs,
        /// Comma-separated variables adjoined to the ideal as linear generators.
        #[arg(long)]
        mod_vars: Option<String>,
        #[arg(long, default_value_t = 3)]
        imax: usize,
        #[arg(long, default_value_t = 5)]
        jmax: u32,
    },
}

#[derive(Subcommand)]
enum FiltrationCmd {
    /// Verify every colon condition of the filtration degreewise.
    Verify {
        #[command(flatten)]
        io: IoArgs,
    },
    /// Check the product and colon-containment identities of the ring.
    Identities {
        #[command(flatten)]
        io: IoArgs,
    },
}

#[derive(Debug, Clone, Copy)]
struct BoundsOverrides {
    betti_vars: Option<usize>,
    betti_degree: Option<u32>,
    interval: Option<usize>,
    target_degree: Option<u32>,
    filt_vars: Option<usize>,
    filt_scroll_blocks: Option<usize>,
    filt_scroll_length: Option<usize>,
}

impl BoundsOverrides {
    fn parse(specs: &[String]) -> Result<Self> {
        let mut b = BoundsOverrides {
            betti_vars: None,
            betti_degree: None,
            interval: None,
            target_degree: None,
            filt_vars: None,
            filt_scroll_blocks: None,
            filt_scroll_length: None,
        };
        for s in specs {
            let (key, value) = s
                .split_once('=')
                .ok_or_else(|| anyhow!("bounds override `{s}` is not key=value"))?;
            let v: u64 = value.parse().context("bounds value must be an integer")?;
            match key {
                "betti-vars" => b.betti_vars = Some(v as usize),
                "betti-degree" => b.betti_degree = Some(v as u32),
                "interval" => b.interval = Some(v as usize),
                "target-degree" => b.target_degree = Some(v as u32),
                "filt-vars" => b.filt_vars = Some(v as usize),
                "filt-scroll-blocks" => b.filt_scroll_blocks = Some(v as usize),
                "filt-scroll-length" => b.filt_scroll_length = Some(v as usize),
                other => bail!("unknown bounds key `{other}`"),
            }
        }
        Ok(b)
    }

    fn filtration(&self) -> FiltrationBounds {
        let mut f = FiltrationBounds::default();
        if let Some(v) = self.filt_vars {
            f.max_variables = v;
        }
        if let Some(v) = self.filt_scroll_blocks {
            f.max_scroll_blocks = v;
        }
        if let Some(v) = self.filt_scroll_length {
            f.max_scroll_length = v;
        }
        f
    }

    fn homology(&self) -> HomologyBounds {
        let mut h = HomologyBounds::default();
        if let Some(v) = self.interval {
            h.max_interval = v;
        }
        if let Some(v) = self.target_degree {
            h.max_target_degree = v;
        }
        h
    }

    fn betti(&self) -> BettiBounds {
        let mut b = BettiBounds::resolution_default();
        if let Some(v) = self.betti_vars {
            b.max_vars = v;
        }
        if let Some(v) = self.betti_degree {
            b.max_degree = v;
        }
        b
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            let err = json!({"error": {"message": format!("{e:#}")}});
            eprintln!("{}", err);
            std::process::exit(2);
        }
    }
}

fn read_input(io: &IoArgs) -> Result<Input> {
    let text = match (&io.input, &io.inline) {
        (Some(path), None) => std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?,
        (None, Some(inline)) => inline.clone(),
        _ => bail!("provide exactly one of --input or --inline"),
    };
    let value: Value = serde_json::from_str(&text).context("input is not valid JSON")?;
    Ok(parse_input(&value)?)
}

fn input_matrix(input: &Input) -> Result<LinearFormMatrix> {
    match input {
        Input::Matrix(x) => Ok(x.clone()),
        Input::Blocks(form) => Ok(form.to_matrix()),
        Input::Scroll(t) => {
            let blocks = t
                .0
                .iter()
                .map(|&n| kw_koszul::pencil::KWBlock::Scroll { length: n })
                .collect();
            Ok(KWForm::new(blocks).to_matrix())
        }
    }
}

/// Builds a report and writes it; `verdict` drives the exit code.
fn finish(
    io_out: &Option<PathBuf>,
    subcommand: &str,
    inputs: Value,
    results: Value,
    verdict: Option<bool>,
    start: Instant,
) -> Result<i32> {
    let mut report = Map::new();
    report.insert("schema".into(), json!(REPORT_SCHEMA));
    report.insert("subcommand".into(), json!(subcommand));
    report.insert("inputs".into(), inputs);
    report.insert("results".into(), results);
    if let Some(v) = verdict {
        report.insert("verdict".into(), json!(v));
    }
    report.insert(
        "timing_ms".into(),
        json!(start.elapsed().as_millis() as u64),
    );
    let text = serde_json::to_string_pretty(&Value::Object(report))?;
    match io_out {
        Some(path) => std::fs::write(path, text + "\n")
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{}", text),
    }
    Ok(match verdict {
        Some(false) => 1,
        _ => 0,
    })
}

fn form_result(form: &KWForm, cert_ok: bool, trivial_mix: bool) -> Value {
    let seq = LengthSequence::from_form(form);
    json!({
        "normal_form": blocks_to_value(form),
        "length_sequence": {
            "nilpotent": seq.nilpotent,
            "scroll": seq.scroll,
            "jordan": seq.jordan.iter().map(|(ev, lens)| json!({
                "eigenvalue": ev.to_string(),
                "lengths": lens,
            })).collect::<Vec<_>>(),
        },
        "certificate_verified": cert_ok,
        "row_basis_changed": !trivial_mix,
    })
}

fn run(cli: Cli) -> Result<i32> {
    let start = Instant::now();
    match cli.cmd {
        Cmd::NormalForm { io } => {
            let input = read_input(&io)?;
            let x = input_matrix(&input)?;
            let p = x.to_pencil();
            let (form, cert) = kw_normal_form(&p)?;
            let ok = verify_certificate(&p, &form, &cert);
            let results = form_result(&form, ok, cert.is_trivial_mix());
            finish(
                &io.out,
                "normal-form",
                matrix_to_value(&x),
                results,
                Some(ok),
                start,
            )
        }
        Cmd::Section { io, forms } => {
            let input = read_input(&io)?;
            let x = input_matrix(&input)?;
            let forms_value: Value =
                serde_json::from_str(&forms).context("--forms is not valid JSON")?;
            let fl = parse_forms(&forms_value, &x)?;
            let cut = section(&x, &fl)?;
            let p = cut.to_pencil();
            let (form, cert) = kw_normal_form(&p)?;
            let ok = verify_certificate(&p, &form, &cert);
            let mut results = form_result(&form, ok, cert.is_trivial_mix());
            results["section_matrix"] = matrix_to_value(&cut);
            finish(
                &io.out,
                "section",
                json!({"matrix": matrix_to_value(&x), "forms": forms_value}),
                results,
                Some(ok),
                start,
            )
        }
        Cmd::Analyze { io } => {
            let input = read_input(&io)?;
            let (form, inputs) = match &input {
                Input::Blocks(f) => (f.clone(), blocks_to_value(f)),
                _ => {
                    let x = input_matrix(&input)?;
                    let (f, _) = kw_normal_form(&x.to_pencil())?;
                    (f, matrix_to_value(&x))
                }
            };
            let seq = LengthSequence::from_form(&form);
            let results = json!({
                "normal_form": blocks_to_value(&form),
                "koszul": koszul_verdict(&seq),
                "regularity": regularity_formula(&seq),
                "hilbert_correction": hilbert_correction(&seq).to_string(),
            });
            finish(&io.out, "analyze", inputs, results, None, start)
        }
        Cmd::Hilbert { io } => {
            let input = read_input(&io)?;
            let Input::Blocks(form) = &input else {
                bail!("hilbert expects a blocks input");
            };
            let seq = LengthSequence::from_form(form);
            let correction = hilbert_correction(&seq);
            let x = form.to_matrix();
            let ring = PolyRing::new(x.variables.clone());
            let gens = two_minors(&x);
            // Oracle for the scroll-and-Jordan part.
            let reduced: Vec<_> = form
                .blocks
                .iter()
                .filter(|b| !matches!(b, kw_koszul::pencil::KWBlock::Nilpotent { .. }))
                .cloned()
                .collect();
            let mut rows = Vec::new();
            let mut all_match = true;
            for d in 0..=io.max_degree {
                let oracle = hilbert_function(&ring, &gens, d);
                let part = if reduced.is_empty() {
                    if d == 0 {
                        1
                    } else {
                        0
                    }
                } else {
                    let px = KWForm::new(reduced.clone()).to_matrix();
                    let pring = PolyRing::new(px.variables.clone());
                    hilbert_function(&pring, &two_minors(&px), d)
                };
                let coeff = correction.coeff(d as usize);
                let formula = Rational::from_int(part as i64) + coeff.clone();
                let matches = formula == Rational::from_int(oracle as i64);
                all_match = all_match && matches;
                rows.push(json!({
                    "degree": d,
                    "oracle": oracle,
                    "formula": formula.to_string(),
                    "match": matches,
                }));
            }
            let results = json!({
                "correction": correction.to_string(),
                "table": rows,
                "checked_to_degree": io.max_degree,
            });
            finish(
                &io.out,
                "hilbert",
                blocks_to_value(form),
                results,
                Some(all_match),
                start,
            )
        }
        Cmd::Filtration { sub } => match sub {
            FiltrationCmd::Verify { io } => {
                let input = read_input(&io)?;
                let Input::Blocks(form) = &input else {
                    bail!("filtration verify expects a blocks input");
                };
                let b = BoundsOverrides::parse(&io.bounds)?;
                let rep = verify_koszul_filtration(form, io.max_degree, &b.filtration())?;
                let steps: Vec<Value> = rep
                    .steps
                    .iter()
                    .map(|s| {
                        json!({
                            "ideal": s.ideal,
                            "smaller": s.smaller,
                            "x": s.x,
                            "colon": s.colon,
                            "ok": s.structural_ok && s.colon_ok,
                            "first_failure_degree": s.first_failure_degree,
                        })
                    })
                    .collect();
                let results = json!({
                    "members": rep.members,
                    "checked_to_degree": rep.checked_to_degree,
                    "steps": steps,
                });
                finish(
                    &io.out,
                    "filtration verify",
                    blocks_to_value(form),
                    results,
                    Some(rep.verdict),
                    start,
                )
            }
            FiltrationCmd::Identities { io } => {
                let input = read_input(&io)?;
                let Input::Blocks(form) = &input else {
                    bail!("filtration identities expects a blocks input");
                };
                let rep = verify_structural_identities(form);
                let failures: Vec<&str> = rep
                    .checks
                    .iter()
                    .filter(|c| !c.ok)
                    .map(|c| c.description.as_str())
                    .collect();
                let results = json!({
                    "checks": rep.checks.len(),
                    "failures": failures,
                });
                finish(
                    &io.out,
                    "filtration identities",
                    blocks_to_value(form),
                    results,
                    Some(rep.verdict),
                    start,
                )
            }
        },
        Cmd::GroebnerCheck { io } => {
            let input = read_input(&io)?;
            let Input::Blocks(form) = &input else {
                bail!("groebner-check expects a blocks input");
            };
            let ord = scroll_term_order(form)?;
            let x = form.to_matrix();
            let v = groebner_check_degreewise(&x, &ord, io.max_degree);
            let results = json!({
                "ok": v.ok,
                "checked_to_degree": v.checked_to_degree,
                "first_failure": v.first_failure,
            });
            finish(
                &io.out,
                "groebner-check",
                blocks_to_value(form),
                results,
                Some(v.ok),
                start,
            )
        }
        Cmd::Classify { io } => {
            let input = read_input(&io)?;
            let Input::Scroll(t) = &input else {
                bail!("classify expects a scroll input");
            };
            let c = classify_scroll(t);
            let results = json!({
                "type": t.0,
                "balanced": c.balanced_regularity,
                "linearly_koszul": c.linearly_koszul,
                "strongly_koszul": c.strongly_koszul,
                "ul_koszul": c.ul_koszul,
                "universal_regularity": c.universal_regularity,
            });
            finish(&io.out, "classify", json!({"type": t.0}), results, None, start)
        }
        Cmd::HomologyWitness { m, n, out, bounds } => {
            let b = BoundsOverrides::parse(&bounds)?;
            if m < 2 * n + 1 {
                bail!("the witness needs m >= 2n + 1 (got m = {m}, n = {n})");
            }
            let rep = nonkoszul_witness(m, n, &b.homology())?;
            let results = json!({
                "mu": kw_koszul::homology::format_element(&rep.mu),
                "a": rep.a,
                "interval_size": rep.interval_size,
                "components_of_subcomplex": rep.components_sub,
                "components_of_complex": rep.components_full,
                "betti3": rep.betti3,
                "witness": rep.witness,
            });
            finish(
                &out,
                "homology-witness",
                json!({"m": m, "n": n}),
                results,
                Some(rep.witness),
                start,
            )
        }
        Cmd::Betti {
            io,
            mod_vars,
            imax,
            jmax,
        } => {
            let input = read_input(&io)?;
            let x = input_matrix(&input)?;
            let ring = PolyRing::new(x.variables.clone());
            let mut gens = two_minors(&x);
            let mut killed = Vec::new();
            if let Some(spec) = &mod_vars {
                for name in spec.split(',').filter(|s| !s.is_empty()) {
                    let idx = ring
                        .var_index(name.trim())
                        .ok_or_else(|| anyhow!("unknown variable `{name}`"))?;
                    gens = gens.extend(&GeneratorSet::new(vec![Poly::variable(
                        ring.num_vars(),
                        idx,
                    )]));
                    killed.push(name.trim().to_string());
                }
            }
            let b = BoundsOverrides::parse(&io.bounds)?;
            let table = quotient_res_betti(&ring, &gens, imax, jmax, &b.betti())?;
            let entries: Vec<Value> = table
                .entries
                .iter()
                .filter(|(_, &v)| v > 0)
                .map(|(&(i, j), &v)| json!({"i": i, "j": j, "beta": v}))
                .collect();
            let results = json!({
                "betti": entries,
                "imax": imax,
                "jmax": jmax,
                "max_slope": table.max_slope(),
            });
            finish(
                &io.out,
                "betti",
                json!({"matrix": matrix_to_value(&x), "mod_vars": killed}),
                results,
                None,
                start,
            )
        }
    }
}

fn parse_forms(value: &Value, x: &LinearFormMatrix) -> Result<Vec<LinearForm>> {
    let arr = value
        .as_array()
        .ok_or_else(|| anyhow!("--forms must be a JSON array"))?;
    let n = x.num_vars();
    let mut out = Vec::new();
    for (i, item) in arr.iter().enumerate() {
        let map = item
            .as_object()
            .ok_or_else(|| anyhow!("form {i} must be an object of variable: coefficient"))?;
        let mut form = LinearForm::zero(n);
        for (name, coeff) in map {
            let idx = x
                .variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| anyhow!("form {i}: unknown variable `{name}`"))?;
            let c: Rational = match coeff {
                Value::String(s) => s
                    .parse()
                    .map_err(|e| anyhow!("form {i}, `{name}`: {e}"))?,
                Value::Number(num) => Rational::from_int(
                    num.as_i64()
                        .ok_or_else(|| anyhow!("form {i}, `{name}`: not an integer"))?,
                ),
                _ => bail!("form {i}, `{name}`: expected integer or \"p/q\""),
            };
            form.coeffs[idx] = c;
        }
        if form.is_zero() {
            bail!("form {i} is zero");
        }
        out.push(form);
    }
    Ok(out)
}
