//! Command-line surface. Every command renders its output to a string and
//! an exit code (0 success or all laws hold, 1 law violation, 2 usage or
//! parse error) so it can be driven from tests without a subprocess.

pub mod normscan;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::algebra::{AlgebraElement, Context, ExactElement, FloatElement, FourierForm};
use crate::cayley_dickson::{blade_factor_cd, quaternion_triplets};
use crate::clifford::BladeExpression;
use crate::error::{Error, Result};
use crate::groups::GroupSpec;
use crate::scalar::{parse_rational, Scalar};
use crate::search::{
    classify, enumerate_proper_twists, find_zero_divisor, verify_twist_group, ZeroDivisorScope,
    DEFAULT_NODE_BUDGET,
};
use crate::twists::{PropertyReport, TwistKind, TwistTable};

pub use normscan::{norm_scan, NormScanReport};

#[derive(Debug, Parser)]
#[command(name = "tga", version, about = "Twisted group algebra toolkit")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Emit CSV where supported (tables).
    #[arg(long, global = true)]
    pub csv: bool,
    /// RNG seed for randomized commands.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Sample count for randomized commands.
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    /// Write the output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a twist table, e.g. `table cayley_dickson 4 --csv`.
    Table {
        kind: String,
        /// Exponent N for xor groups, or a group descriptor (`cyclic:5`).
        size: String,
    },
    /// Check twist laws, e.g. `check clifford:4 associative proper`.
    Check {
        /// `kind:N`, `kind:<group>`, or a path to a JSON/CSV table.
        twist: String,
        /// commutative, associative, invertive, proper, unital or all.
        #[arg(default_value = "all")]
        laws: Vec<String>,
    },
    /// Multiply two elements, e.g. `mul cayley_dickson:1 i1 i1`.
    Mul {
        context: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
        /// Also run the matrix and Fourier paths and require agreement.
        #[arg(long)]
        verify: bool,
        /// Use f64 coefficients instead of exact rationals.
        #[arg(long)]
        float: bool,
    },
    /// Clifford blade arithmetic.
    Blade {
        #[command(subcommand)]
        op: BladeOp,
    },
    /// Monte Carlo scan of |xy|/(|x||y|).
    Normscan {
        exponent: u32,
        #[arg(long, default_value = "cayley_dickson")]
        twist: String,
        #[arg(long, default_value_t = 20)]
        bins: usize,
    },
    /// Enumerate proper twists on a group, e.g. `enumerate cyclic:5`.
    Enumerate {
        group: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Search for zero divisors, e.g. `zerodiv hadamard:2`.
    Zerodiv {
        twist: String,
        /// Random search instead of the exhaustive basis-pair scan.
        #[arg(long)]
        random: bool,
        /// Exit with status 1 if a witness is found.
        #[arg(long)]
        expect_none: bool,
    },
    /// Quaternion triplets (p, q, pq) of the Cayley-Dickson twist.
    Triplets { exponent: u32 },
    /// Factor i_p into Cayley-Dickson 1-blades.
    Cdfactor { p: usize },
}

#[derive(Debug, Subcommand)]
pub enum BladeOp {
    /// `blade mul e134 e23` prints `-e124`.
    Mul {
        a: String,
        b: String,
    },
    Conj {
        a: String,
    },
    /// e-notation to i-notation.
    Toi {
        a: String,
    },
    /// i-notation (integer) to e-notation.
    Toe {
        p: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub code: i32,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput { text, code: 0 }
    }

    fn status(text: String, success: bool) -> Self {
        CommandOutput {
            text,
            code: if success { 0 } else { 1 },
        }
    }
}

pub fn run(cli: &Cli) -> Result<CommandOutput> {
    match &cli.command {
        Command::Table { kind, size } => cmd_table(cli, kind, size),
        Command::Check { twist, laws } => cmd_check(cli, twist, laws),
        Command::Mul {
            context,
            x,
            y,
            verify,
            float,
        } => {
            if *float {
                cmd_mul::<f64>(context, x, y, *verify)
            } else {
                cmd_mul::<BigRational>(context, x, y, *verify)
            }
        }
        Command::Blade { op } => cmd_blade(cli, op),
        Command::Normscan {
            exponent,
            twist,
            bins,
        } => cmd_normscan(cli, *exponent, twist, *bins),
        Command::Enumerate { group, budget } => cmd_enumerate(cli, group, *budget),
        Command::Zerodiv {
            twist,
            random,
            expect_none,
        } => cmd_zerodiv(cli, twist, *random, *expect_none),
        Command::Triplets { exponent } => cmd_triplets(cli, *exponent),
        Command::Cdfactor { p } => cmd_cdfactor(cli, *p),
    }
}

/// Parses `kind:N`, `kind:xor:N`, `kind:cyclic:n`, or a table file path.
pub fn parse_twist(desc: &str) -> Result<TwistTable> {
    if let Some((kind, rest)) = desc.split_once(':') {
        if let Ok(kind) = kind.parse::<TwistKind>() {
            let group = if rest.contains(':') {
                rest.parse::<GroupSpec>()?
            } else {
                let n = rest
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad twist size in `{desc}`")))?;
                GroupSpec::xor(n)?
            };
            return TwistTable::named(kind, group);
        }
    }
    let path = Path::new(desc);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{desc}: {e}")))?;
        return if text.trim_start().starts_with('{') {
            TwistTable::from_json(&text)
        } else {
            TwistTable::from_csv_inferred(&text)
        };
    }
    Err(Error::Parse(format!("unrecognized twist `{desc}`")))
}

/// Accepts element JSON (inline or as a file) or a linear combination such
/// as `2*i1 - 1/2*i3 + 1` where a bare coefficient multiplies `i0`.
pub fn parse_element<S: Scalar>(ctx: &Arc<Context>, text: &str) -> Result<AlgebraElement<S>> {
    let t = text.trim();
    if t.starts_with('{') {
        let v: Value = serde_json::from_str(t).map_err(|e| Error::Parse(e.to_string()))?;
        return AlgebraElement::from_json_in(ctx, &v);
    }
    if Path::new(t).is_file() {
        let body = fs::read_to_string(t).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
        return parse_element(ctx, &body);
    }
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = compact.as_bytes();
    for k in 1..bytes.len() {
        if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'*' | b'/') {
            terms.push(&compact[start..k]);
            start = k;
        }
    }
    terms.push(&compact[start..]);

    let mut coeffs = vec![BigRational::from_integer(0.into()); ctx.order()];
    for term in terms {
        let (negative, body) = match term.as_bytes()[0] {
            b'-' => (true, &term[1..]),
            b'+' => (false, &term[1..]),
            _ => (false, term),
        };
        let (coef, index) = match body.split_once('i') {
            Some((c, idx)) => {
                let c = c.strip_suffix('*').unwrap_or(c);
                let c = if c.is_empty() {
                    BigRational::from_integer(1.into())
                } else {
                    parse_rational(c)?
                };
                let idx: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad basis index in `{term}`")))?;
                (c, idx)
            }
            None => (parse_rational(body)?, 0),
        };
        ctx.group().check(index)?;
        let c = if negative { -coef } else { coef };
        coeffs[index] = coeffs[index].clone() + c;
    }
    AlgebraElement::new(ctx, coeffs.iter().map(S::from_rational).collect())
}

fn cmd_table(cli: &Cli, kind: &str, size: &str) -> Result<CommandOutput> {
    let table = parse_twist(&format!("{kind}:{size}"))?;
    Ok(CommandOutput::ok(if cli.json {
        table.to_json() + "\n"
    } else {
        table.to_csv()
    }))
}

fn expand_laws(laws: &[String]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for law in laws {
        match law.as_str() {
            "all" => out.extend([
                "unital",
                "commutative",
                "associative",
                "invertive",
                "proper",
            ]),
            "commutative" => out.push("commutative"),
            "associative" => out.push("associative"),
            "invertive" => out.push("invertive"),
            "proper" => out.push("proper"),
            "unital" => out.push("unital"),
            other => return Err(Error::Parse(format!("unknown law `{other}`"))),
        }
    }
    Ok(out)
}

fn cmd_check(cli: &Cli, twist: &str, laws: &[String]) -> Result<CommandOutput> {
    let table = parse_twist(twist)?;
    let mut reports: Vec<PropertyReport> = Vec::new();
    for law in expand_laws(laws)? {
        match law {
            "unital" => reports.push(table.check_unital()),
            "commutative" => reports.push(table.check_commutative()),
            "associative" => reports.push(table.check_associative()),
            "invertive" => reports.push(table.check_invertive()),
            _ => {
                let p = table.check_proper();
                reports.push(p.first);
                reports.push(p.second);
            }
        }
    }
    let all_hold = reports.iter().all(|r| r.holds);
    let text = if cli.json {
        serde_json::to_string(&json!({
            "group": table.group(),
            "name": table.kind(),
            "reports": reports,
        }))
        .expect("reports serialize")
            + "\n"
    } else {
        reports.iter().map(|r| format!("{r}\n")).collect()
    };
    Ok(CommandOutput::status(text, all_hold))
}

fn cmd_mul<S: Scalar>(context: &str, x: &str, y: &str, verify: bool) -> Result<CommandOutput> {
    let ctx = Context::new(parse_twist(context)?);
    let x: AlgebraElement<S> = parse_element(&ctx, x)?;
    let y: AlgebraElement<S> = parse_element(&ctx, y)?;
    let product = x.multiply(&y)?;
    let mut agree = true;
    if verify {
        agree &= x.multiply_via_matrix(&y)?.approx_eq(&product);
        if ctx.is_proper() {
            for form in [FourierForm::Left, FourierForm::Right] {
                agree &= x.multiply_via_fourier(&y, form)?.approx_eq(&product);
            }
        }
    }
    let mut text = serde_json::to_string(&product.to_json_value()).expect("element serializes");
    text.push('\n');
    Ok(CommandOutput::status(text, agree))
}

fn cmd_blade(cli: &Cli, op: &BladeOp) -> Result<CommandOutput> {
    let render = |b: &BladeExpression| {
        if cli.json {
            serde_json::to_string(b).expect("blade serializes") + "\n"
        } else {
            format!("{b}\n")
        }
    };
    let text = match op {
        BladeOp::Mul { a, b } => {
            let a: BladeExpression = a.parse()?;
            let b: BladeExpression = b.parse()?;
            render(&a.multiply(&b))
        }
        BladeOp::Conj { a } => render(&a.parse::<BladeExpression>()?.conjugate()),
        BladeOp::Toi { a } => {
            let (sign, p) = a.parse::<BladeExpression>()?.to_index();
            if cli.json {
                format!("{}\n", json!({ "sign": sign, "index": p }))
            } else {
                format!("{}i{p}\n", if sign < 0 { "-" } else { "" })
            }
        }
        BladeOp::Toe { p } => render(&BladeExpression::from_index(*p)),
    };
    Ok(CommandOutput::ok(text))
}

fn cmd_normscan(cli: &Cli, exponent: u32, twist: &str, bins: usize) -> Result<CommandOutput> {
    let kind: TwistKind = twist.parse()?;
    let samples = cli.samples.unwrap_or(1000);
    let seed = cli.seed.unwrap_or(42);
    let report = norm_scan(kind, exponent, samples, seed, bins)?;
    let text = if cli.json {
        serde_json::to_string(&report).expect("report serializes") + "\n"
    } else {
        format!(
            "{} on {}: {} samples, seed {}\nmax ratio {:.12}\nmin ratio {:.12}\nmean ratio {:.12}\nwedderburn bound {:.12}\nhistogram [0, {:.4}] {:?}\nrng {}\n",
            report.twist,
            report.group,
            report.samples,
            report.seed,
            report.max_ratio,
            report.min_ratio,
            report.mean_ratio,
            report.wedderburn_bound,
            report.histogram.hi,
            report.histogram.counts,
            report.rng,
        )
    };
    Ok(CommandOutput::status(text, report.within_wedderburn()))
}

fn cmd_enumerate(cli: &Cli, group: &str, budget: u64) -> Result<CommandOutput> {
    let group: GroupSpec = group.parse()?;
    let result = enumerate_proper_twists(group, budget)?;
    let flags = classify(&result);
    let twist_group = verify_twist_group(&result).ok();
    let text = if cli.json {
        let twists: Vec<Value> = result
            .twists
            .iter()
            .zip(&flags)
            .map(|(t, f)| {
                let mut v = serde_json::to_value(t).expect("table serializes");
                v["flags"] = serde_json::to_value(f).expect("flags serialize");
                v
            })
            .collect();
        serde_json::to_string(&json!({
            "group": group,
            "complete": result.complete,
            "stats": result.stats,
            "twists": twists,
            "twist_group": twist_group,
        }))
        .expect("result serializes")
            + "\n"
    } else {
        let mut s = format!(
            "{group}: {} proper twists ({}), explored {}, pruned {}, forced {}\n",
            result.twists.len(),
            if result.complete {
                "complete"
            } else {
                "incomplete"
            },
            result.stats.explored,
            result.stats.pruned,
            result.stats.forced,
        );
        s += &format!(
            "all commutative: {}\nall associative: {}\n",
            flags.iter().all(|f| f.commutative),
            flags.iter().all(|f| f.associative)
        );
        if let Some(tg) = &twist_group {
            s += &format!(
                "P(G) is an abelian group of order {}: {}\n",
                tg.order,
                if tg.holds() { "holds" } else { "fails" }
            );
        }
        s
    };
    let ok = result.complete && twist_group.as_ref().is_some_and(|t| t.holds());
    Ok(CommandOutput::status(text, ok))
}

fn cmd_zerodiv(cli: &Cli, twist: &str, random: bool, expect_none: bool) -> Result<CommandOutput> {
    let ctx = Context::new(parse_twist(twist)?);
    let scope = if random {
        ZeroDivisorScope::Random {
            samples: cli.samples.unwrap_or(100_000),
            seed: cli.seed.unwrap_or(42),
        }
    } else {
        ZeroDivisorScope::BasisPairs
    };
    let found = find_zero_divisor(&ctx, scope);
    let text = if cli.json {
        let witness = found
            .witness
            .as_ref()
            .map(|(x, y)| json!({ "x": x.to_json_value(), "y": y.to_json_value() }));
        serde_json::to_string(&json!({
            "twist": ctx.table().kind(),
            "group": ctx.group(),
            "scope": if random { "random" } else { "basis_pairs" },
            "witness": witness,
            "candidates_checked": found.candidates_checked,
            "exhaustive": found.exhaustive,
        }))
        .expect("result serializes")
            + "\n"
    } else {
        match &found.witness {
            Some((x, y)) => format!("zero divisor: ({x}) * ({y}) = 0\n"),
            None => format!(
                "no zero divisor found ({} candidate pairs{})\n",
                found.candidates_checked,
                if found.exhaustive { ", exhaustive" } else { "" }
            ),
        }
    };
    Ok(CommandOutput::status(
        text,
        !(expect_none && found.witness.is_some()),
    ))
}

fn cmd_triplets(cli: &Cli, exponent: u32) -> Result<CommandOutput> {
    if exponent > crate::groups::MAX_XOR_EXPONENT.min(13) {
        return Err(Error::GroupTooLarge {
            order: 1usize << exponent.min(63),
            limit: 1 << 13,
        });
    }
    let triplets = quaternion_triplets(exponent);
    Ok(CommandOutput::ok(if cli.json {
        serde_json::to_string(&triplets).expect("triplets serialize") + "\n"
    } else {
        triplets
            .iter()
            .map(|(p, q, r)| format!("({p},{q},{r})\n"))
            .collect()
    }))
}

fn cmd_cdfactor(cli: &Cli, p: usize) -> Result<CommandOutput> {
    let f = blade_factor_cd(p);
    let text = if cli.json {
        let mut v = serde_json::to_value(&f).expect("factors serialize");
        v["e_indices"] = json!(f.e_indices());
        v["expression"] = json!(f.nested_expression());
        serde_json::to_string(&v).expect("factors serialize") + "\n"
    } else {
        format!(
            "i{p} = {}{}\n",
            if f.sign < 0 { "-" } else { "" },
            f.nested_expression()
        )
    };
    Ok(CommandOutput::ok(text))
}

/// Convenience for callers that only need the default exact element type.
pub fn parse_exact(ctx: &Arc<Context>, text: &str) -> Result<ExactElement> {
    parse_element(ctx, text)
}

pub fn parse_float(ctx: &Arc<Context>, text: &str) -> Result<FloatElement> {
    parse_element(ctx, text)
}
