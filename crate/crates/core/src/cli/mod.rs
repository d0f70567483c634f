//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so it can be driven from tests.

pub mod output;
pub mod parse;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::galois::{splitting_ambient, FieldTower, GaloisContext};
use crate::gchar::{decompose_char, tensor_mult_g, CharEngine, Character, DiskCache};
use crate::lchar::{
    characteristic_consistent, decompose_lchar_F, mul_lchar, simple_lchar_F,
    simple_lchar_K, weyl_lchar_F, weyl_lchar_K, ClassLChar, LChar,
};
use crate::lweight::{relatively_prime, LWeight};
use crate::mult::{
    cg_F, cg_K, cg_K_table, dim_simple_F, dim_simple_K, dim_weyl_F, tensor_K_irreducible,
    weyl_mult_F, weyl_mult_K, weyl_mult_K_table, MultReport,
};
use crate::oracle::{brute_tensor_weight_mult, verify_degree_suite, verify_lambda_suite, verify_tensor_suite};
use crate::rootsys::{Family, LieType, Weight};
use output::{checks_string, field_info, lweight_value, method_name, poly_string, render_table, report_value};
use parse::{parse_field_spec, parse_lweight_polys, BiPoly, GRAMMAR};

const CONDITIONAL_NOTE: &str = "characteristic-p Weyl module multiplicities assume the conjectured description of Weyl module characters in positive characteristic";

#[derive(Parser, Debug)]
#[command(
    name = "loopmult",
    version,
    about = "Multiplicities for representations of hyper loop algebras over finite fields"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Cartan type, e.g. A2 or G2 (default: A_n with n the number of coordinates)
    #[arg(long = "type", global = true)]
    lie_type: Option<String>,
    /// Base field K = F_q written p^k
    #[arg(long, global = true)]
    field: Option<String>,
    /// Computation field exponent N, so arithmetic happens in F_{q^N}
    #[arg(long, global = true)]
    ambient: Option<u32>,
    /// Characteristic of the g-character engine: 0, p, or a prime
    #[arg(long = "char", global = true)]
    characteristic: Option<String>,
    /// Accept an engine characteristic different from the field's
    #[arg(long, global = true)]
    allow_char_mismatch: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Size of the internal thread pool
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// JSON file {"simple": [...], "fundamentals": [...]} of g-characters
    #[arg(long, global = true)]
    char_table: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Over {
    #[value(name = "K")]
    K,
    #[value(name = "F")]
    F,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModuleKind {
    Simple,
    Weyl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Lambda,
    Degree,
    Tensor,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clebsch-Gordan multiplicities of V(ϖ) ⊗ V(π)
    Cg {
        #[arg(long = "w")]
        varpi: String,
        #[arg(long = "p")]
        pi: String,
        /// Report only this constituent
        #[arg(long)]
        omega: Option<String>,
        #[arg(long, value_enum, default_value_t = Over::K)]
        over: Over,
    },
    /// ℓ-character of a simple or Weyl module
    Lchar {
        #[arg(long)]
        lw: String,
        #[arg(long, value_enum, default_value_t = ModuleKind::Simple)]
        module: ModuleKind,
        #[arg(long, value_enum, default_value_t = Over::K)]
        over: Over,
    },
    /// Jordan-Hölder multiplicities of a Weyl module
    WeylMult {
        #[arg(long)]
        lw: String,
        /// Report only this constituent
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_enum, default_value_t = Over::K)]
        over: Over,
    },
    /// Conjugacy class, degree and inseparability degree
    Orbit {
        #[arg(long)]
        lw: String,
    },
    /// Decompose a g-character, or a tensor product of two simple g-modules
    Decompose {
        /// Character JSON file {"type": ..., "char": {...}}
        #[arg(long, conflicts_with = "tensor")]
        input: Option<PathBuf>,
        /// Two highest weights, e.g. --tensor "[1,0]" "[0,1]"
        #[arg(long, num_args = 2, value_names = ["LAMBDA", "MU"])]
        tensor: Option<Vec<String>>,
    },
    /// Whether V_K(ϖ) ⊗ V_K(π) is simple by the degree criterion
    Irreducible {
        #[arg(long = "w")]
        varpi: String,
        #[arg(long = "p")]
        pi: String,
    },
    /// Run a built-in oracle suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let result = match cli.common.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(Error::Io(e.to_string())),
        },
        None => dispatch(&cli),
    };
    match result {
        Ok((body, code)) => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
        Err(e) => {
            let mut msg = format!("error: {e}\n");
            if matches!(e, Error::Parse(_)) {
                msg.push_str(&format!("ℓ-weight grammar:\n{GRAMMAR}\n"));
            }
            Outcome {
                code: if e.is_contract_violation() { 2 } else { 1 },
                stdout: String::new(),
                stderr: msg,
            }
        }
    }
}

/// Field, type, engine and parsed ℓ-weights shared by the field commands.
struct Setup {
    tower: Arc<FieldTower>,
    ctx: GaloisContext,
    engine: CharEngine,
    lweights: Vec<LWeight>,
    consistent: bool,
}

#[derive(Deserialize)]
struct CharTable {
    #[serde(default)]
    simple: Vec<Character>,
    #[serde(default)]
    fundamentals: Vec<Character>,
}

fn parse_type(s: &str) -> Result<LieType> {
    s.parse()
}

fn resolve_characteristic(common: &Common, field_p: Option<u32>) -> Result<u64> {
    match common.characteristic.as_deref() {
        None => Ok(field_p.unwrap_or(0) as u64),
        Some("p") => field_p
            .map(u64::from)
            .ok_or_else(|| Error::Parse("--char p needs --field".into())),
        Some(s) => s
            .parse()
            .map_err(|_| Error::Parse(format!("bad characteristic '{s}'"))),
    }
}

fn build_engine(common: &Common, t: LieType, characteristic: u64) -> Result<CharEngine> {
    let mut engine = match &common.char_table {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            let table: CharTable = serde_json::from_str(&text)?;
            let mut engine = if table.simple.is_empty() {
                CharEngine::new(t, characteristic)?
            } else {
                CharEngine::with_table(t, characteristic, table.simple)?
            };
            if !table.fundamentals.is_empty() {
                engine = engine.with_fundamentals(table.fundamentals)?;
            }
            engine
        }
        None => CharEngine::new(t, characteristic)?,
    };
    if let Some(cache) = DiskCache::from_env() {
        engine = engine.with_disk_cache(cache);
    }
    Ok(engine.allowing_char_mismatch(common.allow_char_mismatch))
}

fn setup(common: &Common, inputs: &[&str]) -> Result<Setup> {
    let field = common
        .field
        .as_deref()
        .ok_or_else(|| Error::Parse("--field p^k is required".into()))?;
    let (p, k) = parse_field_spec(field)?;
    let parsed: Vec<Vec<BiPoly>> = inputs
        .iter()
        .map(|s| parse_lweight_polys(s, p))
        .collect::<Result<_>>()?;
    let ambient = match common.ambient {
        Some(n) => n,
        None => {
            if parsed.iter().flatten().any(BiPoly::uses_generator) {
                return Err(Error::Parse(
                    "coefficients use g, so --ambient must be given".into(),
                ));
            }
            let polys: Vec<Vec<u32>> = parsed.iter().flatten().map(BiPoly::prime_field_coeffs).collect();
            splitting_ambient(p, k, &polys)
        }
    };
    let tower = FieldTower::new(p, k, ambient)?;
    let t = match &common.lie_type {
        Some(s) => parse_type(s)?,
        None => {
            let n = parsed.first().map(Vec::len).unwrap_or(1);
            LieType::new(Family::A, n)?
        }
    };
    let lweights = parsed
        .iter()
        .map(|polys| {
            let coeffs: Vec<_> = polys.iter().map(|b| b.to_field(&tower)).collect();
            LWeight::from_poly_tuple(t, &tower, &coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    let characteristic = resolve_characteristic(common, Some(p))?;
    let engine = build_engine(common, t, characteristic)?;
    let ctx = GaloisContext::finite_field(tower.clone());
    let consistent = characteristic_consistent(&ctx, &engine)?;
    Ok(Setup {
        tower,
        ctx,
        engine,
        lweights,
        consistent,
    })
}

fn header(command: &str, s: &Setup) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("command".into(), json!(command));
    m.insert("type".into(), json!(s.engine.lie_type().to_string()));
    m.insert("field".into(), field_info(&s.tower));
    m.insert("characteristic".into(), json!(s.engine.characteristic()));
    m.insert("inconsistent_characteristic".into(), json!(!s.consistent));
    m
}

fn notes(s: &Setup, conditional: bool) -> Vec<String> {
    let mut out = Vec::new();
    if conditional {
        out.push(CONDITIONAL_NOTE.to_string());
    }
    if !s.consistent {
        out.push(format!(
            "engine characteristic {} differs from field characteristic {}; results are formally inconsistent",
            s.engine.characteristic(),
            s.tower.p()
        ));
    }
    out
}

fn finish(
    format: Format,
    mut json_body: serde_json::Map<String, Value>,
    notes: Vec<String>,
    text: String,
) -> String {
    match format {
        Format::Json => {
            json_body.insert("notes".into(), json!(notes));
            serde_json::to_string_pretty(&Value::Object(json_body)).expect("json") + "\n"
        }
        Format::Text => {
            let mut out = text;
            for n in notes {
                out.push_str(&format!("\nnote: {n}"));
            }
            out + "\n"
        }
    }
}

fn wt_key(w: &LWeight) -> (Weight, LWeight) {
    (w.wt(), w.clone())
}

struct Row {
    lw: LWeight,
    deg: u64,
    dim: u64,
    report: MultReport,
}

fn constituent_rows(rows: &[Row], key: &str) -> (Vec<Value>, String) {
    let json_rows = rows
        .iter()
        .map(|r| {
            json!({
                key: lweight_value(&r.lw),
                "poly": poly_string(&r.lw),
                "wt": r.lw.wt(),
                "deg": r.deg,
                "dim": r.dim,
                "mult": report_value(&r.report),
            })
        })
        .collect();
    let text_rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                poly_string(&r.lw),
                r.lw.wt().to_string(),
                r.deg.to_string(),
                r.dim.to_string(),
                r.report.value.to_string(),
                method_name(&r.report),
                checks_string(&r.report),
            ]
        })
        .collect();
    let text = render_table(
        &[key, "wt", "deg", "dim", "mult", "method", "cross_checks"],
        &text_rows,
    );
    (json_rows, text)
}

fn dispatch(cli: &Cli) -> Result<(String, i32)> {
    let common = &cli.common;
    match &cli.command {
        Command::Cg {
            varpi,
            pi,
            omega,
            over,
        } => {
            let mut inputs = vec![varpi.as_str(), pi.as_str()];
            if let Some(o) = omega {
                inputs.push(o);
            }
            let s = setup(common, &inputs)?;
            cmd_cg(common.format, &s, *over, omega.is_some()).map(|b| (b, 0))
        }
        Command::Lchar { lw, module, over } => {
            let s = setup(common, &[lw])?;
            cmd_lchar(common.format, &s, *module, *over).map(|b| (b, 0))
        }
        Command::WeylMult { lw, target, over } => {
            let mut inputs = vec![lw.as_str()];
            if let Some(t) = target {
                inputs.push(t);
            }
            let s = setup(common, &inputs)?;
            cmd_weyl(common.format, &s, *over, target.is_some()).map(|b| (b, 0))
        }
        Command::Orbit { lw } => {
            let s = setup(common, &[lw])?;
            cmd_orbit(common.format, &s).map(|b| (b, 0))
        }
        Command::Irreducible { varpi, pi } => {
            let s = setup(common, &[varpi, pi])?;
            cmd_irreducible(common.format, &s).map(|b| (b, 0))
        }
        Command::Decompose { input, tensor } => cmd_decompose(common, input.as_ref(), tensor.as_deref()),
        Command::Verify { suite, seed, count } => cmd_verify(common.format, *suite, *seed, *count),
    }
}

fn cmd_cg(format: Format, s: &Setup, over: Over, single: bool) -> Result<String> {
    let (varpi, pi) = (&s.lweights[0], &s.lweights[1]);
    let e = &s.engine;
    let mut body = header("cg", s);
    body.insert("over".into(), json!(if over == Over::K { "K" } else { "F" }));
    body.insert("varpi".into(), lweight_value(varpi));
    body.insert("pi".into(), lweight_value(pi));
    let mut rows = Vec::new();
    match over {
        Over::K => {
            if single {
                let omega = &s.lweights[2];
                let report = cg_K(&s.ctx, e, omega, varpi, pi)?;
                rows.push(Row {
                    lw: s.ctx.class_rep(omega)?,
                    deg: s.ctx.deg(omega)?,
                    dim: dim_simple_K(&s.ctx, e, omega)?,
                    report,
                });
            } else {
                for (rep, report) in cg_K_table(&s.ctx, e, varpi, pi)? {
                    rows.push(Row {
                        deg: s.ctx.deg(&rep)?,
                        dim: dim_simple_K(&s.ctx, e, &rep)?,
                        lw: rep,
                        report,
                    });
                }
            }
        }
        Over::F => {
            if single {
                let omega = &s.lweights[2];
                rows.push(Row {
                    lw: omega.clone(),
                    deg: 1,
                    dim: dim_simple_F(e, omega)?,
                    report: cg_F(e, omega, varpi, pi)?,
                });
            } else {
                let product = mul_lchar(&simple_lchar_F(e, varpi)?, &simple_lchar_F(e, pi)?)?;
                for omega in decompose_lchar_F(e, &product)?.keys() {
                    rows.push(Row {
                        lw: omega.clone(),
                        deg: 1,
                        dim: dim_simple_F(e, omega)?,
                        report: cg_F(e, omega, varpi, pi)?,
                    });
                }
            }
        }
    }
    rows.sort_by_key(|r| wt_key(&r.lw));
    let (dim_left, dim_right) = match over {
        Over::K => (dim_simple_K(&s.ctx, e, varpi)?, dim_simple_K(&s.ctx, e, pi)?),
        Over::F => (dim_simple_F(e, varpi)?, dim_simple_F(e, pi)?),
    };
    let expected = dim_left * dim_right;
    let mut text = format!(
        "cg over {}: {} x {}\n",
        if over == Over::K { "K" } else { "F" },
        poly_string(varpi),
        poly_string(pi)
    );
    let key = if over == Over::K { "class" } else { "lweight" };
    let (json_rows, table) = constituent_rows(&rows, key);
    text.push_str(&table);
    if !single {
        let total: u64 = rows.iter().map(|r| r.report.value * r.dim).sum();
        if total != expected {
            return Err(Error::FormulaDisagreement(format!(
                "dimension sum {total} differs from {expected}"
            )));
        }
        body.insert("dimension_sum".into(), json!(total));
        text.push_str(&format!("\ndimension sum {total} = {dim_left} * {dim_right}"));
    }
    body.insert("expected_dimension".into(), json!(expected));
    body.insert("constituents".into(), Value::Array(json_rows));
    Ok(finish(format, body, notes(s, false), text))
}

fn lchar_rows<'a>(
    terms: impl Iterator<Item = (&'a LWeight, &'a i64)>,
    key: &str,
) -> (Vec<Value>, String) {
    let mut entries: Vec<(&LWeight, i64)> = terms.map(|(w, c)| (w, *c)).collect();
    entries.sort_by_key(|(w, _)| wt_key(w));
    let json_rows = entries
        .iter()
        .map(|(w, c)| {
            json!({
                key: lweight_value(w),
                "poly": poly_string(w),
                "wt": w.wt(),
                "coeff": c,
            })
        })
        .collect();
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|(w, c)| vec![poly_string(w), w.wt().to_string(), c.to_string()])
        .collect();
    (json_rows, render_table(&[key, "wt", "coeff"], &rows))
}

fn cmd_lchar(format: Format, s: &Setup, module: ModuleKind, over: Over) -> Result<String> {
    let omega = &s.lweights[0];
    let e = &s.engine;
    let mut body = header("lchar", s);
    body.insert("lweight".into(), lweight_value(omega));
    body.insert(
        "module".into(),
        json!(if module == ModuleKind::Simple { "simple" } else { "weyl" }),
    );
    body.insert("over".into(), json!(if over == Over::K { "K" } else { "F" }));
    let conditional = module == ModuleKind::Weyl && e.characteristic() > 0;
    body.insert("conditional".into(), json!(conditional));
    let (json_rows, table, mass) = match over {
        Over::F => {
            let ch: LChar = match module {
                ModuleKind::Simple => simple_lchar_F(e, omega)?,
                ModuleKind::Weyl => weyl_lchar_F(e, omega)?,
            };
            let (j, t) = lchar_rows(ch.terms().iter(), "lweight");
            (j, t, ch.mass())
        }
        Over::K => {
            let ch: ClassLChar = match module {
                ModuleKind::Simple => simple_lchar_K(&s.ctx, e, omega)?,
                ModuleKind::Weyl => weyl_lchar_K(&s.ctx, e, omega)?,
            };
            let (j, t) = lchar_rows(ch.terms().iter(), "class");
            (j, t, ch.mass())
        }
    };
    body.insert("terms".into(), Value::Array(json_rows));
    body.insert("mass".into(), json!(mass));
    let text = format!("ℓ-character of {}\n{table}\nmass {mass}", poly_string(omega));
    Ok(finish(format, body, notes(s, conditional), text))
}

fn cmd_weyl(format: Format, s: &Setup, over: Over, single: bool) -> Result<String> {
    let omega = &s.lweights[0];
    let e = &s.engine;
    let mut body = header("weyl-mult", s);
    body.insert("lweight".into(), lweight_value(omega));
    body.insert("over".into(), json!(if over == Over::K { "K" } else { "F" }));
    let mut rows = Vec::new();
    match (over, single) {
        (Over::K, true) => {
            let target = &s.lweights[1];
            rows.push(Row {
                lw: s.ctx.class_rep(target)?,
                deg: s.ctx.deg(target)?,
                dim: dim_simple_K(&s.ctx, e, target)?,
                report: weyl_mult_K(&s.ctx, e, omega, target)?,
            });
        }
        (Over::K, false) => {
            for (rep, report) in weyl_mult_K_table(&s.ctx, e, omega)? {
                rows.push(Row {
                    deg: s.ctx.deg(&rep)?,
                    dim: dim_simple_K(&s.ctx, e, &rep)?,
                    lw: rep,
                    report,
                });
            }
        }
        (Over::F, true) => {
            let target = &s.lweights[1];
            rows.push(Row {
                lw: target.clone(),
                deg: 1,
                dim: dim_simple_F(e, target)?,
                report: weyl_mult_F(e, omega, target)?,
            });
        }
        (Over::F, false) => {
            for target in decompose_lchar_F(e, &weyl_lchar_F(e, omega)?)?.keys() {
                rows.push(Row {
                    lw: target.clone(),
                    deg: 1,
                    dim: dim_simple_F(e, target)?,
                    report: weyl_mult_F(e, omega, target)?,
                });
            }
        }
    }
    rows.sort_by_key(|r| wt_key(&r.lw));
    let conditional = e.characteristic() > 0;
    body.insert("conditional".into(), json!(conditional));
    let key = if over == Over::K { "class" } else { "lweight" };
    let (json_rows, table) = constituent_rows(&rows, key);
    let mut text = format!("Weyl module {} over {}\n{table}", poly_string(omega), if over == Over::K { "K" } else { "F" });
    let expected = match over {
        Over::K => s.ctx.deg(omega)? * dim_weyl_F(e, omega)?,
        Over::F => dim_weyl_F(e, omega)?,
    };
    if !single {
        let total: u64 = rows.iter().map(|r| r.report.value * r.dim).sum();
        if total != expected {
            return Err(Error::FormulaDisagreement(format!(
                "dimension sum {total} differs from {expected}"
            )));
        }
        body.insert("dimension_sum".into(), json!(total));
        text.push_str(&format!("\ndimension sum {total}"));
    }
    body.insert("expected_dimension".into(), json!(expected));
    body.insert("constituents".into(), Value::Array(json_rows));
    Ok(finish(format, body, notes(s, conditional), text))
}

fn cmd_orbit(format: Format, s: &Setup) -> Result<String> {
    let w = &s.lweights[0];
    let class = s.ctx.orbit(w)?;
    let deg = s.ctx.deg(w)?;
    let indeg = s.ctx.indeg(w)?;
    let mut body = header("orbit", s);
    body.insert("lweight".into(), lweight_value(w));
    body.insert("rep".into(), lweight_value(class.rep()));
    body.insert(
        "members".into(),
        Value::Array(class.members().iter().map(lweight_value).collect()),
    );
    body.insert(
        "member_polys".into(),
        json!(class.members().iter().map(poly_string).collect::<Vec<_>>()),
    );
    body.insert("size".into(), json!(class.len()));
    body.insert("deg".into(), json!(deg));
    body.insert("indeg".into(), json!(indeg));
    let mut text = format!("class of {}\n", poly_string(w));
    for m in class.members() {
        text.push_str(&format!("  {}\n", poly_string(m)));
    }
    text.push_str(&format!("size {}  deg {deg}  indeg {indeg}", class.len()));
    Ok(finish(format, body, notes(s, false), text))
}

fn cmd_irreducible(format: Format, s: &Setup) -> Result<String> {
    let (varpi, pi) = (&s.lweights[0], &s.lweights[1]);
    let e = &s.engine;
    let prod = varpi.mul(pi)?;
    let irreducible = tensor_K_irreducible(&s.ctx, e, varpi, pi)?;
    let mut body = header("irreducible", s);
    body.insert("varpi".into(), lweight_value(varpi));
    body.insert("pi".into(), lweight_value(pi));
    body.insert("irreducible".into(), json!(irreducible));
    body.insert("relatively_prime".into(), json!(relatively_prime(varpi, pi)));
    let degs = [s.ctx.deg(varpi)?, s.ctx.deg(pi)?, s.ctx.deg(&prod)?];
    body.insert("deg".into(), json!({"varpi": degs[0], "pi": degs[1], "product": degs[2]}));
    let dims = [
        dim_simple_K(&s.ctx, e, varpi)?,
        dim_simple_K(&s.ctx, e, pi)?,
        dim_simple_K(&s.ctx, e, &prod)?,
    ];
    body.insert("dim".into(), json!({"varpi": dims[0], "pi": dims[1], "product": dims[2]}));
    let text = format!(
        "{} x {}: {}\ndeg {} {} {}  dim {} {} {}",
        poly_string(varpi),
        poly_string(pi),
        if irreducible { "irreducible" } else { "not covered by the criterion" },
        degs[0],
        degs[1],
        degs[2],
        dims[0],
        dims[1],
        dims[2]
    );
    Ok(finish(format, body, notes(s, false), text))
}

fn cmd_decompose(common: &Common, input: Option<&PathBuf>, tensor: Option<&[String]>) -> Result<(String, i32)> {
    let field_p = match &common.field {
        Some(f) => Some(parse_field_spec(f)?.0),
        None => None,
    };
    let characteristic = resolve_characteristic(common, field_p)?;
    let (t, chi, source) = match (input, tensor) {
        (Some(path), None) => {
            let ch: Character = serde_json::from_str(&std::fs::read_to_string(path)?)?;
            if let Some(s) = &common.lie_type {
                let t = parse_type(s)?;
                if t != ch.lie_type() {
                    return Err(Error::TypeMismatch(t.to_string(), ch.lie_type().to_string()));
                }
            }
            (ch.lie_type(), Some(ch), None)
        }
        (None, Some(pair)) => {
            let lambda: Weight = pair[0].parse()?;
            let mu: Weight = pair[1].parse()?;
            let t = match &common.lie_type {
                Some(s) => parse_type(s)?,
                None => LieType::new(Family::A, lambda.rank())?,
            };
            (t, None, Some((lambda, mu)))
        }
        _ => return Err(Error::Parse("pass exactly one of --input or --tensor".into())),
    };
    let e = build_engine(common, t, characteristic)?;
    let (mults, mut body) = match (chi, source) {
        (Some(ch), _) => {
            let mut body = serde_json::Map::new();
            body.insert("input".into(), serde_json::to_value(&ch)?);
            (decompose_char(&e, &ch)?, body)
        }
        (None, Some((lambda, mu))) => {
            let fast = tensor_mult_g(&e, &lambda, &mu)?;
            let slow = brute_tensor_weight_mult(&e, &lambda, &mu)?;
            if fast != slow {
                return Err(Error::FormulaDisagreement(
                    "weight-multiset decomposition disagrees".into(),
                ));
            }
            let mut body = serde_json::Map::new();
            body.insert("tensor".into(), json!([lambda, mu]));
            (fast, body)
        }
        _ => unreachable!(),
    };
    body.insert("command".into(), json!("decompose"));
    body.insert("type".into(), json!(t.to_string()));
    body.insert("characteristic".into(), json!(characteristic));
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for (w, m) in &mults {
        let dim = e.simple_dim(w)?;
        json_rows.push(json!({"weight": w, "mult": m, "dim": dim}));
        rows.push(vec![w.to_string(), m.to_string(), dim.to_string()]);
    }
    body.insert("constituents".into(), Value::Array(json_rows));
    let text = render_table(&["weight", "mult", "dim"], &rows);
    let out = match common.format {
        Format::Json => serde_json::to_string_pretty(&Value::Object(body)).expect("json") + "\n",
        Format::Text => text + "\n",
    };
    Ok((out, 0))
}

fn cmd_verify(format: Format, suite: Suite, seed: u64, count: usize) -> Result<(String, i32)> {
    let report = match suite {
        Suite::Lambda => verify_lambda_suite(),
        Suite::Degree => verify_degree_suite(seed, count)?,
        Suite::Tensor => verify_tensor_suite(3)?,
    };
    let passed = report.passed();
    let out = match format {
        Format::Json => {
            let mut v = serde_json::to_value(&report)?;
            v["command"] = json!("verify");
            v["passed"] = json!(passed);
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Text => {
            let mut t = format!(
                "suite {}: {} cases, {} failures",
                report.suite,
                report.cases,
                report.failures.len()
            );
            for f in &report.failures {
                t.push_str(&format!("\n  {f}"));
            }
            t + "\n"
        }
    };
    Ok((out, if passed { 0 } else { 2 }))
}
