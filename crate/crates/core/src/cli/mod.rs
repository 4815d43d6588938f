//! The `fgl-thh` command line: argument parsing, dispatch and output.
//!
//! Exit status is 0 when every internal contract held, 1 when one failed
//! (the failing identity goes to stderr) and 2 on usage errors.

pub mod emit;
mod verify;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebroid::{CoordFlavor, MuAlgebroid, TypicalAlgebroid};
use crate::cohomology::{
    bar_tor_check, bp_range, cohomology_groups, de_rham_cohomology, de_rham_comparison,
    thread_pool, Coalgebra, ThhComplex, DESK_PRIMES,
};
use crate::exactalg::{Error, GradedPoly, Q};
use crate::fgl::{is_prime, GeneratorSource, LazardBasis, TypicalBasis};
use crate::thh::{lambda_prime_in_e, Hurewicz, SigmaTable};
use emit::{FormulaRow, Formulas, SCHEMA};
pub use verify::{verify_suite, Check};

#[derive(Parser, Debug)]
#[command(name = "fgl-thh", version, about = "Formal group law Hopf algebroids and sigma on THH(MU), THH(BP)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    MuMoving,
    MuSplit,
    Bp,
}

#[derive(Args, Debug, Clone)]
pub struct FlavorOpts {
    #[arg(long, value_enum, default_value_t = FlavorArg::MuMoving)]
    pub flavor: FlavorArg,
    /// The prime, for `--flavor bp`.
    #[arg(long)]
    pub prime: Option<u32>,
    /// Allow primes beyond 2, 3, 5.
    #[arg(long)]
    pub unsafe_large_prime: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Right units, conjugation, coproduct and moving coordinates.
    StructureMaps {
        #[command(flatten)]
        flavor: FlavorOpts,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
        /// Generators above weight 4 (and optionally below) chosen automatically.
        #[arg(long)]
        auto_generators: bool,
    },
    /// The sigma operator on generators.
    Sigma {
        #[command(flatten)]
        flavor: FlavorOpts,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Cohomology tables `H(pi_* THH, sigma)`.
    Cohomology {
        #[command(flatten)]
        flavor: FlavorOpts,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Polynomial generators through this weight (MU only, default 12).
        #[arg(long)]
        truncation: Option<usize>,
        /// Also print the labelled differentials.
        #[arg(long)]
        matrices: bool,
    },
    /// `Tor` of a polynomial algebra from its normalized bar complex.
    BarTor {
        #[arg(long, value_enum, default_value_t = AlgebraArg::C)]
        algebra: AlgebraArg,
        #[arg(long)]
        prime: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_weight: u32,
        #[arg(long, default_value_t = 3)]
        max_q: usize,
    },
    /// Algebraic de Rham cohomology, optionally compared with THH(MU).
    DeRham {
        /// Comma-separated generator weights.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        weights: Vec<u32>,
        #[arg(long, default_value_t = 12)]
        max_degree: u32,
        /// Check the maps Omega_L -> THH(MU) -> Omega_C instead.
        #[arg(long)]
        compare: bool,
    },
    /// Runs the invariant suite.
    Verify {
        #[command(flatten)]
        flavor: FlavorOpts,
        #[arg(long)]
        max_degree: Option<u32>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgebraArg {
    C,
    B,
    T,
}

/// Polynomial generators through this weight unless `--truncation` says
/// otherwise; enough for every table up to degree 24.
pub const DEFAULT_TRUNCATION: usize = 12;

/// What a run produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A rendered result.
struct Doc {
    json: Value,
    text: Vec<String>,
    tex: Vec<String>,
    failures: Vec<String>,
}

impl Doc {
    fn new(json: Value) -> Self {
        Self { json, text: Vec::new(), tex: Vec::new(), failures: Vec::new() }
    }
}

enum Failure {
    Usage(String),
    Contract(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Contract(e.to_string())
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let msg = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: msg, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: msg }
            };
        }
    };
    if let Err(e) = thread_pool() {
        return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") };
    }
    let (config, result) = dispatch(&cli.command);
    let doc = match result {
        Ok(d) => d,
        Err(Failure::Usage(m)) => return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Contract(m)) => {
            return Outcome { code: 1, stdout: String::new(), stderr: format!("contract violated: {m}\n") }
        }
    };
    let body = render(&cli, config, &doc);
    let mut out = Outcome { code: i32::from(!doc.failures.is_empty()), ..Outcome::default() };
    for f in &doc.failures {
        out.stderr.push_str(&format!("FAILED: {f}\n"));
    }
    match &cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                out.code = 1;
                out.stderr.push_str(&format!("cannot write {}: {e}\n", path.display()));
            }
        }
        None => out.stdout = body,
    }
    out
}

fn render(cli: &Cli, config: Value, doc: &Doc) -> String {
    match cli.format {
        Format::Json => {
            let v = json!({ "schema": SCHEMA, "command": config["command"].clone(), "config": config, "result": doc.json });
            let mut s = serde_json::to_string_pretty(&v).expect("JSON values serialize");
            s.push('\n');
            s
        }
        Format::Text => doc.text.iter().map(|l| format!("{l}\n")).collect(),
        Format::Tex => doc.tex.iter().map(|l| format!("{l}\n")).collect(),
    }
}

fn flavor_of(f: &FlavorOpts) -> Result<CoordFlavor, Failure> {
    match f.flavor {
        FlavorArg::MuMoving => Ok(CoordFlavor::MovingC),
        FlavorArg::MuSplit => Ok(CoordFlavor::AbsoluteB),
        FlavorArg::Bp => Ok(CoordFlavor::TypicalT(check_prime(f.prime, f.unsafe_large_prime)?)),
    }
}

fn check_prime(p: Option<u32>, unsafe_large: bool) -> Result<u32, Failure> {
    let p = p.ok_or_else(|| Failure::Usage("--prime is required here".into()))?;
    if !is_prime(p) {
        return Err(Failure::Usage(format!("{p} is not prime")));
    }
    if !unsafe_large && !DESK_PRIMES.contains(&p) {
        return Err(Failure::Usage(format!("prime {p} outside {DESK_PRIMES:?}; pass --unsafe-large-prime")));
    }
    Ok(p)
}

fn flavor_name(f: CoordFlavor) -> &'static str {
    match f {
        CoordFlavor::MovingC => "mu-moving",
        CoordFlavor::AbsoluteB => "mu-split",
        CoordFlavor::TypicalT(_) => "bp",
    }
}

fn flavor_arg(f: FlavorArg) -> &'static str {
    match f {
        FlavorArg::MuMoving => "mu-moving",
        FlavorArg::MuSplit => "mu-split",
        FlavorArg::Bp => "bp",
    }
}

fn flavor_json(f: CoordFlavor) -> Value {
    match f {
        CoordFlavor::TypicalT(p) => json!({ "flavor": "bp", "prime": p }),
        _ => json!({ "flavor": flavor_name(f) }),
    }
}

fn dispatch(cmd: &Command) -> (Value, Result<Doc, Failure>) {
    match cmd {
        Command::StructureMaps { flavor, max_n, auto_generators } => {
            let cfg = json!({ "command": "structure-maps", "flavor": flavor_arg(flavor.flavor), "prime": flavor.prime, "max_n": max_n, "auto_generators": auto_generators });
            (cfg, structure_maps(flavor, *max_n, *auto_generators))
        }
        Command::Sigma { flavor, max_n } => {
            let cfg = json!({ "command": "sigma", "flavor": flavor_arg(flavor.flavor), "prime": flavor.prime, "max_n": max_n });
            (cfg, sigma(flavor, *max_n))
        }
        Command::Cohomology { flavor, max_degree, truncation, matrices } => {
            let cfg = json!({ "command": "cohomology", "flavor": flavor_arg(flavor.flavor), "prime": flavor.prime, "max_degree": max_degree, "truncation": if flavor.flavor == FlavorArg::Bp { None } else { Some(truncation.unwrap_or(DEFAULT_TRUNCATION)) }, "matrices": matrices });
            (cfg, cohomology(flavor, *max_degree, *truncation, *matrices))
        }
        Command::BarTor { algebra, prime, max_weight, max_q } => {
            let cfg = json!({ "command": "bar-tor", "algebra": format!("{algebra:?}").to_lowercase(), "prime": prime, "max_weight": max_weight, "max_q": max_q });
            (cfg, bar_tor(*algebra, *prime, *max_weight, *max_q))
        }
        Command::DeRham { weights, max_degree, compare } => {
            let cfg = json!({ "command": "de-rham", "weights": weights, "max_degree": max_degree, "compare": compare });
            (cfg, de_rham(weights, *max_degree, *compare))
        }
        Command::Verify { flavor, max_degree } => {
            let cfg = json!({ "command": "verify", "flavor": flavor_arg(flavor.flavor), "prime": flavor.prime, "max_degree": max_degree });
            (cfg, verify(flavor, *max_degree))
        }
    }
}

fn idx_tex(name: &str, n: usize) -> String {
    if n < 10 {
        format!("{name}_{n}")
    } else {
        format!("{name}_{{{n}}}")
    }
}

fn assemble(sections: Vec<Formulas>, extra: Value) -> Doc {
    let mut doc = Doc::new(json!({ "sections": sections.iter().map(Formulas::json).collect::<Vec<_>>() }));
    if let Value::Object(m) = extra {
        for (k, v) in m {
            doc.json[k] = v;
        }
    }
    for (i, s) in sections.iter().enumerate() {
        if i > 0 {
            doc.text.push(String::new());
            doc.tex.push(String::new());
        }
        doc.text.extend(s.text());
        doc.tex.extend(s.tex());
    }
    doc
}

fn structure_maps(f: &FlavorOpts, max_n: usize, auto: bool) -> Result<Doc, Failure> {
    if max_n == 0 {
        let extra = match f.flavor {
            FlavorArg::Bp => json!({ "flavor": "bp", "prime": check_prime(f.prime, f.unsafe_large_prime)? }),
            _ => json!({ "flavor": "mu" }),
        };
        return Ok(assemble(Vec::new(), extra));
    }
    if f.flavor == FlavorArg::Bp {
        return typical_structure_maps(check_prime(f.prime, f.unsafe_large_prime)?, max_n);
    }
    if max_n > 8 {
        return Err(Failure::Usage("--max-n above 8 is beyond desk scale for structure maps".into()));
    }
    let source = if auto { GeneratorSource::Auto } else { GeneratorSource::Standard };
    let basis = LazardBasis::new(max_n + 1, source)?;
    let a = MuAlgebroid::new(basis, max_n)?;
    let mut sections = Vec::new();

    let mut s = Formulas::new("x_in_m", "Lazard generators in the logarithm coefficients");
    for n in 1..=max_n {
        let prov = format!("{:?}", a.basis().provenance(n));
        s.push(FormulaRow::poly(format!("x_{n}"), idx_tex("x", n), a.basis().x_in_m(n)).with("provenance", json!(prov)));
    }
    sections.push(s);

    let mut s = Formulas::new("eta_r_x", "Right unit on the Lazard generators");
    for n in 1..=max_n {
        s.push(FormulaRow::poly(format!("eta_R(x_{n})"), format!("\\eta_R({})", idx_tex("x", n)), &a.eta_r_x(n)?));
    }
    sections.push(s);

    let mut s = Formulas::new("moving_coordinates", "Moving coordinates");
    for n in 1..=max_n {
        s.push(FormulaRow::poly(format!("c_{n}"), idx_tex("c", n), &a.moving_coordinate(n)?));
    }
    sections.push(s);

    let mut s = Formulas::new("eta_r_x_moving", "Right unit in moving coordinates");
    for n in 1..=max_n {
        s.push(FormulaRow::poly(format!("eta_R(x_{n})"), format!("\\eta_R({})", idx_tex("x", n)), &a.eta_r_x_moving(n)?));
    }
    sections.push(s);

    let mut s = Formulas::new("conjugation", "Conjugation");
    for n in 1..=max_n {
        s.push(FormulaRow::poly(format!("chi(b_{n})"), format!("\\chi({})", idx_tex("b", n)), a.conjugation_chi(n)?));
    }
    sections.push(s);

    let mut s = Formulas::new("exp_coefficients", "Coefficients of the exponential");
    for n in 1..=max_n {
        s.push(FormulaRow::poly(format!("mbar_{n}"), format!("\\bar{{m}}_{{{n}}}"), &a.exp_coefficient(n)?));
    }
    sections.push(s);

    let mut s = Formulas::new("coproduct", "Coproduct");
    for n in 1..=max_n {
        s.push(FormulaRow::tensor(format!("psi(b_{n})"), format!("\\psi({})", idx_tex("b", n)), &a.coproduct_psi(n)?));
    }
    sections.push(s);

    let mut s = Formulas::new("eta_r_a", "Right unit on the coefficients of the universal law");
    for total in 2..=max_n + 1 {
        for i in 1..total {
            let j = total - i;
            if i > j {
                continue;
            }
            s.push(FormulaRow::poly(format!("eta_R(a_{{{i},{j}}})"), format!("\\eta_R(a_{{{i}{j}}})"), &a.eta_r_a(i, j)?));
        }
    }
    sections.push(s);

    let mut s = Formulas::new("lambda_prime_in_e", "Moving exterior classes in absolute ones");
    for (v, row) in lambda_prime_in_e(a.basis(), max_n)?.iter().enumerate() {
        s.push(FormulaRow::ext(format!("lambda'_{}", v + 1), idx_tex("\\lambda'", v + 1), row));
    }
    sections.push(s);

    let mut s = Formulas::new("hurewicz", "Hurewicz images");
    let h = Hurewicz::Mu(a.basis(), CoordFlavor::MovingC);
    for n in 1..=max_n {
        let (img, ok) = h.apply(&GradedPoly::var(a.basis().x_table(), (n - 1) as u16))?;
        if !ok {
            return Err(Failure::Contract(format!("h(x_{n}) = {img} is not integral")));
        }
        s.push(FormulaRow::poly(format!("h(x_{n})"), format!("h({})", idx_tex("x", n)), &img));
    }
    sections.push(s);
    Ok(assemble(sections, json!({ "flavor": "mu" })))
}

fn typical_structure_maps(p: u32, max_n: usize) -> Result<Doc, Failure> {
    if max_n > 4 {
        return Err(Failure::Usage("--max-n above 4 is beyond desk scale for BP".into()));
    }
    let basis = TypicalBasis::hazewinkel(p, max_n)?;
    let mut sections = Vec::new();
    let mut s = Formulas::new("hazewinkel", "Hazewinkel generators");
    for n in 1..=max_n {
        if !basis.recursion_residual(n).is_zero() {
            return Err(Failure::Contract(format!("Hazewinkel recursion fails at n = {n}")));
        }
        let pn = p.pow(n as u32);
        let scaled = basis.ell_in_v(n).scale(&Q::from_integer(pn.into()));
        if !scaled.is_integral() {
            return Err(Failure::Contract(format!("p^{n} l_{n} = {scaled} is not integral")));
        }
        let lhs = if n == 1 { format!("{p}*l_1") } else { format!("{p}^{n}*l_{n}") };
        let lhs_tex = if n == 1 { format!("{p} \\ell_1") } else { format!("{p}^{{{n}}} \\ell_{n}") };
        s.push(FormulaRow::poly(lhs, lhs_tex, &scaled));
    }
    sections.push(s);
    let t = TypicalAlgebroid::new(basis.clone());
    let mut s = Formulas::new("eta_r_ell", "Right unit on the logarithm coefficients");
    for n in 1..=max_n {
        s.push(FormulaRow::poly(format!("eta_R(l_{n})"), format!("\\eta_R(\\ell_{n})"), &t.eta_r_typical(n)?));
    }
    sections.push(s);
    let mut s = Formulas::new("eta_r_v", "Right unit on the Hazewinkel generators");
    for n in 1..=max_n.min(3) {
        let (e, ok) = t.eta_r_v(n)?;
        if !ok {
            return Err(Failure::Contract(format!("eta_R(v_{n}) is not {p}-integral")));
        }
        s.push(FormulaRow::poly(format!("eta_R(v_{n})"), format!("\\eta_R(v_{n})"), &e));
    }
    sections.push(s);
    let mut s = Formulas::new("hurewicz", "Hurewicz images");
    for n in 1..=max_n {
        let (img, ok) = Hurewicz::Bp(&basis).apply(&GradedPoly::var(basis.v_table(), (n - 1) as u16))?;
        if !ok {
            return Err(Failure::Contract(format!("h(v_{n}) is not {p}-integral")));
        }
        s.push(FormulaRow::poly(format!("h(v_{n})"), format!("h(v_{n})"), &img));
    }
    sections.push(s);
    Ok(assemble(sections, json!({ "flavor": "bp", "prime": p })))
}

fn sigma_table(flavor: CoordFlavor, max_n: usize) -> Result<SigmaTable, Failure> {
    Ok(match flavor {
        CoordFlavor::TypicalT(p) => {
            if max_n > 4 {
                return Err(Failure::Usage("--max-n above 4 is beyond desk scale for BP".into()));
            }
            SigmaTable::bp(&TypicalBasis::hazewinkel(p, max_n)?)?
        }
        f => {
            if max_n > 12 {
                return Err(Failure::Usage("--max-n above 12 is beyond desk scale".into()));
            }
            let basis = LazardBasis::new(max_n, GeneratorSource::Standard)?;
            if f == CoordFlavor::MovingC {
                SigmaTable::mu_moving(&basis, max_n)?
            } else {
                SigmaTable::mu_split(&basis, max_n)?
            }
        }
    })
}

fn sigma(f: &FlavorOpts, max_n: Option<usize>) -> Result<Doc, Failure> {
    let flavor = flavor_of(f)?;
    let max_n = max_n.unwrap_or(if f.flavor == FlavorArg::Bp { 3 } else { 4 });
    if max_n == 0 {
        return Ok(assemble(Vec::new(), flavor_json(flavor)));
    }
    let table = sigma_table(flavor, max_n)?;
    let mut s = Formulas::new("sigma", "The sigma operator on generators");
    let ext = table.alphabet();
    for n in 1..=table.max_n() {
        let g = table.base_table().gen((n - 1) as u16);
        s.push(FormulaRow::ext(format!("sigma({})", g.name), format!("\\sigma({})", g.tex), table.on_base(n)));
    }
    for n in 1..=table.max_n() {
        let i = (n - 1) as u16;
        let (name, tex) = (ext.symbol(i, false), ext.symbol(i, true));
        s.push(FormulaRow::ext(format!("sigma({name})"), format!("\\sigma({tex})"), table.on_ext(n)));
    }
    let mut sections = vec![s];
    if flavor == CoordFlavor::AbsoluteB {
        let basis = LazardBasis::new(max_n, GeneratorSource::Standard)?;
        let mut s = Formulas::new("lambda_prime_in_e", "Moving exterior classes in absolute ones");
        for (v, row) in lambda_prime_in_e(&basis, max_n)?.iter().enumerate() {
            s.push(FormulaRow::ext(format!("lambda'_{}", v + 1), idx_tex("\\lambda'", v + 1), row));
        }
        sections.push(s);
    }
    Ok(assemble(sections, flavor_json(flavor)))
}

fn cohomology(f: &FlavorOpts, max_degree: Option<u32>, truncation: Option<usize>, matrices: bool) -> Result<Doc, Failure> {
    let flavor = flavor_of(f)?;
    let (complex, table) = match flavor {
        CoordFlavor::TypicalT(p) => {
            let d = max_degree.unwrap_or(bp_range(p));
            if d > bp_range(p) {
                return Err(Failure::Usage(format!("BP tables stop at degree {}", bp_range(p))));
            }
            cohomology_groups(flavor, d)?
        }
        _ => {
            let d = max_degree.unwrap_or(10);
            let n = truncation.unwrap_or(DEFAULT_TRUNCATION);
            if 2 * n < d as usize {
                return Err(Failure::Usage(format!("truncation {n} below ceil({d}/2)")));
            }
            if d > 24 {
                return Err(Failure::Usage("degrees above 24 are beyond desk scale".into()));
            }
            let c = ThhComplex::mu(flavor, n.max(1))?;
            let t = c.cohomology_table(d)?;
            (c, t)
        }
    };
    let degrees: Vec<Value> = table
        .iter()
        .map(|h| {
            let mut v = emit::cohomology(h);
            if matrices {
                let ms: Vec<Value> = complex
                    .q_range(h.degree)
                    .filter(|&q| !complex.basis(h.degree, q).is_empty())
                    .map(|q| {
                        let m = complex.differential(h.degree, q).expect("assembled above");
                        json!({ "q": q, "matrix": emit::matrix(&m) })
                    })
                    .collect();
                v["differentials"] = Value::Array(ms);
            }
            v
        })
        .collect();
    let mut doc = Doc::new(json!({
        "flavor": flavor_json(flavor),
        "localized_at": table.first().and_then(|h| h.localized_at),
        "degrees": degrees,
    }));
    let localized = table.first().and_then(|h| h.localized_at);
    let title = match localized {
        Some(p) => format!("H(pi_* THH(BP), sigma) at p = {p}"),
        None => format!("H(pi_* THH(MU), sigma), {}", flavor_name(flavor)),
    };
    doc.text.push(format!("# {title}"));
    doc.tex.push(format!("% {title}"));
    doc.tex.push("\\begin{align*}".into());
    for (i, h) in table.iter().enumerate() {
        let primary = h.group.primary_factors();
        let prim: Vec<String> = primary.iter().map(|d| format!("Z/{d}")).collect();
        let mut line = format!("H^{} = {}", h.degree, h.group);
        if h.group.invariant_factors.len() > 1 || primary.len() > h.group.invariant_factors.len() {
            line.push_str(&format!("  [primary: {}]", prim.join(" + ")));
        }
        doc.text.push(line);
        let classes: Vec<_> = h.classes().cloned().collect();
        if !classes.is_empty() {
            doc.text.push(format!("  {}", emit::classes_text(&classes, false)));
        }
        let end = if i + 1 < table.len() { " \\\\" } else { "" };
        doc.tex.push(format!("H^{{{}}} &= {}{end}", h.degree, emit::classes_text(&classes, true)));
        if matrices {
            for q in complex.q_range(h.degree) {
                if complex.basis(h.degree, q).is_empty() {
                    continue;
                }
                let m = complex.differential(h.degree, q)?;
                if m.rows() > 0 && m.cols() > 0 {
                    doc.text.push(format!("  d({}, q={q}):", h.degree));
                    doc.text.extend(emit::matrix_text(&m));
                }
            }
        }
    }
    doc.tex.push("\\end{align*}".into());
    Ok(doc)
}

fn bar_tor(algebra: AlgebraArg, prime: Option<u32>, max_weight: u32, max_q: usize) -> Result<Doc, Failure> {
    let coalgebra = match algebra {
        AlgebraArg::C => Coalgebra::C,
        AlgebraArg::B => Coalgebra::B,
        AlgebraArg::T => Coalgebra::T(check_prime(prime, false)?),
    };
    if max_weight > 8 || max_q > 3 {
        return Err(Failure::Usage("bar-tor runs through weight 8 and q <= 3".into()));
    }
    let r = bar_tor_check(coalgebra, max_weight, max_q)?;
    let mut doc = Doc::new(serde_json::to_value(&r).expect("report serializes"));
    doc.text.push(format!("# Tor of {coalgebra:?} from the normalized bar complex"));
    doc.tex.push("\\begin{tabular}{rrrrr}".into());
    doc.tex.push("$q$ & weight & chains & rank & expected \\\\".into());
    for row in &r.rows {
        doc.text.push(format!(
            "q={} weight={} chains={} rank={} torsion={:?} expected={} {}",
            row.q,
            row.weight,
            row.chain_rank,
            row.rank,
            row.torsion.iter().map(ToString::to_string).collect::<Vec<_>>(),
            row.expected_rank,
            if row.ok { "ok" } else { "MISMATCH" }
        ));
        doc.tex.push(format!("{} & {} & {} & {} & {} \\\\", row.q, row.weight, row.chain_rank, row.rank, row.expected_rank));
        if !row.ok {
            doc.failures.push(format!("bar-Tor at q={}, weight={}", row.q, row.weight));
        }
    }
    doc.tex.push("\\end{tabular}".into());
    Ok(doc)
}

fn de_rham(weights: &[u32], max_degree: u32, compare: bool) -> Result<Doc, Failure> {
    if max_degree > 24 {
        return Err(Failure::Usage("degrees above 24 are beyond desk scale".into()));
    }
    if compare {
        if max_degree > 12 {
            return Err(Failure::Usage("the comparison runs through degree 12".into()));
        }
        let r = de_rham_comparison(max_degree)?;
        let mut doc = Doc::new(serde_json::to_value(&r).expect("report serializes"));
        doc.text.push("# Omega_L -> THH(MU) -> Omega_C".into());
        doc.text.push(format!("chain map residuals: {} and {}", r.first_residuals, r.second_residuals));
        doc.tex.push("\\begin{tabular}{rlll}".into());
        for d in 0..=max_degree as usize {
            doc.text.push(format!(
                "degree {d}: {} -> {} -> {}   image orders {:?} / {:?}",
                r.lazard[d],
                r.thh[d],
                r.homology[d],
                r.first_induced[d].image_orders.iter().map(ToString::to_string).collect::<Vec<_>>(),
                r.second_induced[d].image_orders.iter().map(ToString::to_string).collect::<Vec<_>>()
            ));
            doc.tex.push(format!("{d} & ${}$ & ${}$ & ${}$ \\\\", r.lazard[d], r.thh[d], r.homology[d]));
        }
        doc.tex.push("\\end{tabular}".into());
        if !r.chain_maps_hold() {
            doc.failures.push("comparison maps are not chain maps".into());
        }
        return Ok(doc);
    }
    if weights.is_empty() || weights.contains(&0) {
        return Err(Failure::Usage("--weights must be positive".into()));
    }
    let (_, table) = de_rham_cohomology(weights, max_degree)?;
    let mut doc = Doc::new(json!({ "weights": weights, "degrees": table.iter().map(emit::cohomology).collect::<Vec<_>>() }));
    doc.text.push(format!("# de Rham cohomology, generator weights {weights:?}"));
    doc.tex.push("\\begin{align*}".into());
    for (i, h) in table.iter().enumerate() {
        let classes: Vec<_> = h.classes().cloned().collect();
        doc.text.push(format!("H^{} = {}", h.degree, emit::classes_text(&classes, false)));
        let end = if i + 1 < table.len() { " \\\\" } else { "" };
        doc.tex.push(format!("H^{{{}}}_{{dR}} &= {}{end}", h.degree, emit::classes_text(&classes, true)));
    }
    doc.tex.push("\\end{align*}".into());
    Ok(doc)
}

fn verify(f: &FlavorOpts, max_degree: Option<u32>) -> Result<Doc, Failure> {
    let flavor = flavor_of(f)?;
    let d = match flavor {
        CoordFlavor::TypicalT(p) => {
            let d = max_degree.unwrap_or(bp_range(p));
            if d > bp_range(p) {
                return Err(Failure::Usage(format!("BP checks stop at degree {}", bp_range(p))));
            }
            d
        }
        _ => {
            let d = max_degree.unwrap_or(10);
            if d > 20 {
                return Err(Failure::Usage("verify runs through degree 20".into()));
            }
            d
        }
    };
    let checks = verify_suite(flavor, d)?;
    let mut doc = Doc::new(json!({ "flavor": flavor_json(flavor), "max_degree": d, "checks": serde_json::to_value(&checks).expect("checks serialize") }));
    for c in &checks {
        let line = format!("{} {}{}", if c.ok { "ok  " } else { "FAIL" }, c.name, if c.detail.is_empty() { String::new() } else { format!(": {}", c.detail) });
        doc.tex.push(format!("% {line}"));
        doc.text.push(line);
        if !c.ok {
            doc.failures.push(format!("{}: {}", c.name, c.detail));
        }
    }
    Ok(doc)
}
