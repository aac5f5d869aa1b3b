//! The `gammares` command-line tool.
//!
//! Exit codes: 0 when every check passes, 1 when some check reports a
//! violation, 2 for input or usage errors.

mod input;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

pub use input::{is_input_spec, parse_input, parse_input_str, parse_input_value, InputSpec};

use crate::chainmaps::{comparison_map, inclusion_map, taylor_iso, ChainMap, MapProperty};
use crate::complex::json::{canonical_string, export_algebra, export_complex, import, Document};
use crate::complex::{verify_resolution, Construction, FreeComplex, StrandMode, DEFAULT_BOX_CELL_CAP};
use crate::constructions::{
    build_factors, check_slot_independence, koszul_principal, star_product, taylor, tensor_product, BuildOptions,
    SignMode,
};
use crate::dg::{check_dg_axiom, check_gamma_axiom, CheckBudget, DGGammaAlgebra, DgAxiom, DEFAULT_MAX_DIVIDED_POWER};
use crate::error::{Error, Result};
use crate::report::{Check, Report, Violation};
use crate::scarf::{check_scarf_gamma, scarf_subcomplex};

#[derive(Debug, Parser)]
#[command(name = "gammares", version, about = "Resolutions of monomial ideals with DG and divided-power structure")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Build a resolution and write it as JSON.
    Build,
    /// Build or load a resolution and run checks on it.
    Verify,
    /// Extract the Scarf subcomplex of a Taylor resolution and check it.
    Scarf,
    /// Compare the Taylor resolution with the star product of Koszul resolutions.
    Compare,
    /// Write a complex as canonical JSON.
    Export,
    /// Run the corrected and unsigned star products side by side.
    DemoSign,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Verify => "verify",
            Command::Scarf => "scarf",
            Command::Compare => "compare",
            Command::Export => "export",
            Command::DemoSign => "demo-sign",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    Taylor,
    Koszul,
    Tensor,
    GenTaylor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FactorArg {
    Taylor,
    Koszul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Corrected,
    Unsigned,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrandArg {
    Lattice,
    Box,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Opts {
    /// Input spec `{"variables": [...], "ideals": [[...]]}` or an exported complex.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the complex (or map) JSON; stdout when omitted for build/export.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Where to write the JSON report.
    #[arg(long, global = true)]
    pub report: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub construction: Option<ConstructionArg>,
    /// Resolution used for each ideal in tensor and gen-taylor builds; one
    /// value applies to every ideal.
    #[arg(long, global = true, value_enum, value_delimiter = ',')]
    pub factor_resolution: Vec<FactorArg>,
    /// Comma-separated: d2, resolution, dg, gamma, maps, scarf, all.
    #[arg(long, global = true, value_delimiter = ',', default_value = "all")]
    pub checks: Vec<String>,
    #[arg(long, global = true, value_enum, default_value = "corrected")]
    pub sign_mode: SignArg,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DIVIDED_POWER)]
    pub max_divided_power: usize,
    #[arg(long, global = true, value_enum, default_value = "lattice")]
    pub strand_mode: StrandArg,
    /// Componentwise bound for box mode, as a monomial such as `x^3*y^4`.
    #[arg(long, global = true)]
    pub box_bound: Option<String>,
}

const CHECK_GROUPS: [&str; 6] = ["d2", "resolution", "dg", "gamma", "maps", "scarf"];

struct Ctx<'a> {
    opts: &'a Opts,
    build: BuildOptions,
    budget: CheckBudget,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn say(&mut self, text: impl AsRef<str>) -> Result<()> {
        writeln!(self.out, "{}", text.as_ref())?;
        Ok(())
    }

    fn sign(&self) -> SignMode {
        match self.opts.sign_mode {
            SignArg::Corrected => SignMode::Corrected,
            SignArg::Unsigned => SignMode::Unsigned,
        }
    }

    fn groups(&self) -> Result<Vec<&'static str>> {
        let mut out = Vec::new();
        for c in &self.opts.checks {
            let c = c.trim();
            if c == "all" {
                return Ok(CHECK_GROUPS.to_vec());
            }
            let g = CHECK_GROUPS
                .iter()
                .find(|g| **g == c)
                .ok_or_else(|| Error::Input(format!("unknown check group `{c}`")))?;
            if !out.contains(g) {
                out.push(*g);
            }
        }
        Ok(out)
    }

    fn strand_mode(&self, cx: &FreeComplex) -> Result<StrandMode> {
        match self.opts.strand_mode {
            StrandArg::Lattice => Ok(StrandMode::Lattice),
            StrandArg::Box => {
                let text = self
                    .opts
                    .box_bound
                    .as_deref()
                    .ok_or_else(|| Error::Input("--strand-mode box needs --box-bound".into()))?;
                Ok(StrandMode::Box {
                    bound: cx.ctx().parse(text)?,
                    cap: DEFAULT_BOX_CELL_CAP,
                })
            }
        }
    }

    fn input_value(&self) -> Result<serde_json::Value> {
        let path = self
            .opts
            .input
            .as_deref()
            .ok_or_else(|| Error::Input("--input is required".into()))?;
        let text = read(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    fn spec(&self) -> Result<InputSpec> {
        parse_input_value(&self.input_value()?)
    }

    fn factor_choice(&self, i: usize, n: usize) -> Result<FactorArg> {
        match self.opts.factor_resolution.as_slice() {
            [] => Ok(FactorArg::Taylor),
            [one] => Ok(*one),
            many if many.len() == n => Ok(many[i]),
            many => Err(Error::Input(format!(
                "--factor-resolution lists {} values for {n} ideals",
                many.len()
            ))),
        }
    }

    fn factors(&self, spec: &InputSpec) -> Result<Vec<DGGammaAlgebra>> {
        let n = spec.ideals.len();
        spec.ideals
            .iter()
            .enumerate()
            .map(|(i, gens)| match self.factor_choice(i, n)? {
                FactorArg::Taylor => taylor(&spec.ctx, gens, &self.build),
                FactorArg::Koszul => match gens.as_slice() {
                    [u] => koszul_principal(&spec.ctx, u, &self.build),
                    _ => Err(Error::Input(format!(
                        "ideal {} has {} generators; koszul needs a principal ideal",
                        i + 1,
                        gens.len()
                    ))),
                },
            })
            .collect()
    }

    fn build_from_spec(&self, spec: &InputSpec) -> Result<DGGammaAlgebra> {
        let default = if spec.ideals.len() == 1 {
            ConstructionArg::Taylor
        } else {
            ConstructionArg::GenTaylor
        };
        match self.opts.construction.unwrap_or(default) {
            ConstructionArg::Taylor => taylor(&spec.ctx, &spec.all_generators(), &self.build),
            ConstructionArg::Koszul => match spec.all_generators().as_slice() {
                [u] => koszul_principal(&spec.ctx, u, &self.build),
                _ => Err(Error::Input("koszul needs a single principal ideal".into())),
            },
            ConstructionArg::Tensor => tensor_product(&self.factors(spec)?, &self.build),
            ConstructionArg::GenTaylor => star_product(&self.factors(spec)?, self.sign(), &self.build),
        }
    }

    /// The input as a document: built from a spec, or imported.
    fn load(&self) -> Result<Document> {
        let v = self.input_value()?;
        if is_input_spec(&v) {
            Ok(Document::Algebra(self.build_from_spec(&parse_input_value(&v)?)?))
        } else {
            import(&serde_json::to_string(&v)?)
        }
    }

    fn finish(&mut self, report: &Report) -> Result<i32> {
        for c in &report.checks {
            writeln!(self.out, "{c}")?;
        }
        let failed = report.failed().count();
        writeln!(
            self.out,
            "{}: {} checks, {} failed (seed {})",
            report.command,
            report.checks.len(),
            failed,
            report.seed
        )?;
        if let Some(path) = &self.opts.report {
            write(path, &canonical_string(report)?)?;
        }
        Ok(if report.all_passed() { 0 } else { 1 })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn prefixed(prefix: &str, mut c: Check) -> Check {
    c.name = format!("{prefix}.{}", c.name);
    c
}

fn map_checks(report: &mut Report, prefix: &str, map: &ChainMap, props: &[MapProperty], budget: &CheckBudget) -> Result<()> {
    for &p in props {
        report.push(prefixed(prefix, Check::timed(|| map.check(p, budget))?));
    }
    Ok(())
}

fn algebra_checks(report: &mut Report, alg: &DGGammaAlgebra, groups: &[&str], budget: &CheckBudget) -> Result<()> {
    if groups.contains(&"dg") {
        for a in DgAxiom::ALL {
            report.push(Check::timed(|| check_dg_axiom(alg, a, budget))?);
        }
    }
    if groups.contains(&"gamma") {
        for w in 1..=6 {
            report.push(Check::timed(|| check_gamma_axiom(alg, w, budget))?);
        }
    }
    Ok(())
}

/// Map checks appropriate to how `alg` was constructed.
fn construction_map_checks(c: &mut Ctx, report: &mut Report, alg: &DGGammaAlgebra) -> Result<()> {
    let cx = alg.complex();
    let budget = c.budget.clone();
    match cx.construction() {
        Some(Construction::Star { factors, sign_mode }) => {
            let fs = build_factors(cx.ctx(), factors, &c.build)?;
            let tensor = tensor_product(&fs, &c.build)?;
            let phi = comparison_map(&tensor, alg)?;
            map_checks(
                report,
                "phi",
                &phi,
                &[
                    MapProperty::Chain,
                    MapProperty::Multiplicative,
                    MapProperty::LocInvertible,
                    MapProperty::Gamma,
                ],
                &budget,
            )?;
            for (i, f) in fs.iter().enumerate() {
                let iota = inclusion_map(f, alg, i)?;
                map_checks(
                    report,
                    &format!("iota_{}", i + 1),
                    &iota,
                    &[MapProperty::Chain, MapProperty::Multiplicative, MapProperty::Gamma],
                    &budget,
                )?;
            }
            report.push(check_slot_independence(&fs, alg, c.build.max_divided_power)?);
            let gens: Option<Vec<_>> = factors
                .iter()
                .map(|f| match f {
                    Construction::Koszul { generator } => Some(generator.clone()),
                    _ => None,
                })
                .collect();
            if let (Some(gens), SignMode::Corrected) = (gens, sign_mode) {
                let t = taylor(cx.ctx(), &gens, &c.build)?;
                let iso = taylor_iso(&t, alg)?;
                map_checks(report, "Phi", &iso, &MapProperty::ALL, &budget)?;
            }
        }
        Some(Construction::Tensor { factors }) => {
            let fs = build_factors(cx.ctx(), factors, &c.build)?;
            for (i, f) in fs.iter().enumerate() {
                let iota = inclusion_map(f, alg, i)?;
                map_checks(
                    report,
                    &format!("iota_{}", i + 1),
                    &iota,
                    &[MapProperty::Chain, MapProperty::Multiplicative, MapProperty::Gamma],
                    &budget,
                )?;
            }
        }
        _ => {}
    }
    Ok(())
}

fn cmd_build(c: &mut Ctx) -> Result<i32> {
    let spec = c.spec()?;
    let alg = c.build_from_spec(&spec)?;
    let ranks = alg.complex().ranks();
    let text = export_algebra(&alg)?;
    match c.opts.out.clone() {
        Some(p) => {
            write(&p, &text)?;
            c.say(format!("ranks {ranks:?}; wrote {}", p.display()))?;
        }
        None => c.out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_export(c: &mut Ctx) -> Result<i32> {
    let doc = c.load()?;
    let text = doc.to_json()?;
    match c.opts.out.clone() {
        Some(p) => {
            write(&p, &text)?;
            c.say(format!("wrote {}", p.display()))?;
        }
        None => c.out.write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn cmd_verify(c: &mut Ctx) -> Result<i32> {
    let groups = c.groups()?;
    let explicit = !c.opts.checks.iter().any(|s| s == "all");
    let doc = c.load()?;
    let cx = doc.complex().clone();
    let mut report = Report::new("verify", c.opts.seed);
    c.say(format!("{}: ranks {:?}", crate::chainmaps::construction_ref(&cx), cx.ranks()))?;
    if groups.contains(&"d2") {
        report.push(Check::timed(|| cx.check_d_squared())?);
    }
    if groups.contains(&"resolution") {
        let mode = c.strand_mode(&cx)?;
        report.push(Check::timed(|| verify_resolution(&cx, &mode))?);
    }
    match &doc {
        Document::Algebra(alg) => {
            let budget = c.budget.clone();
            algebra_checks(&mut report, alg, &groups, &budget)?;
            if groups.contains(&"maps") {
                construction_map_checks(c, &mut report, alg)?;
            }
            if groups.contains(&"scarf") && matches!(cx.construction(), Some(Construction::Taylor { .. })) {
                let s = scarf_subcomplex(alg)?;
                report.push(prefixed("scarf", Check::timed(|| s.induced().check_d_squared())?));
                report.push(Check::timed(|| check_scarf_gamma(&s))?);
            }
        }
        Document::Complex(_) => {
            let needs_algebra = groups.iter().any(|g| ["dg", "gamma", "maps", "scarf"].contains(g));
            if explicit && needs_algebra {
                return Err(Error::Input(
                    "the input complex has no product table; only d2 and resolution apply".into(),
                ));
            }
        }
    }
    c.finish(&report)
}

fn cmd_scarf(c: &mut Ctx) -> Result<i32> {
    let doc = c.load()?;
    let Document::Algebra(t) = doc else {
        return Err(Error::Input("scarf needs a Taylor resolution".into()));
    };
    let t = if matches!(t.complex().construction(), Some(Construction::Taylor { .. })) {
        t
    } else {
        let spec = c.spec()?;
        taylor(&spec.ctx, &spec.all_generators(), &c.build)?
    };
    let s = scarf_subcomplex(&t)?;
    let ind = s.induced();
    let names: Vec<&str> = ind.basis().iter().map(|b| b.name.as_str()).collect();
    c.say(format!("Scarf basis {}; ranks {:?}", names.join(" "), ind.ranks()))?;
    let mut report = Report::new("scarf", c.opts.seed);
    report.push(Check::timed(|| ind.check_d_squared())?);
    let mode = c.strand_mode(ind)?;
    report.push(Check::timed(|| verify_resolution(ind, &mode))?);
    report.push(Check::timed(|| check_scarf_gamma(&s))?);
    if let Some(p) = c.opts.out.clone() {
        write(&p, &export_complex(ind)?)?;
    }
    c.finish(&report)
}

fn cmd_compare(c: &mut Ctx) -> Result<i32> {
    let spec = c.spec()?;
    let gens = spec.all_generators();
    let t = taylor(&spec.ctx, &gens, &c.build)?;
    let ks = gens
        .iter()
        .map(|u| koszul_principal(&spec.ctx, u, &c.build))
        .collect::<Result<Vec<_>>>()?;
    let s = star_product(&ks, SignMode::Corrected, &c.build)?;
    c.say(format!(
        "taylor ranks {:?}; star of Koszul ranks {:?}",
        t.complex().ranks(),
        s.complex().ranks()
    ))?;
    let mut report = Report::new("compare", c.opts.seed);
    let ranks_equal = t.complex().ranks() == s.complex().ranks();
    report.push(Check::new(
        "ranks",
        if ranks_equal {
            vec![]
        } else {
            vec![Violation::new(
                "ranks",
                format!("{:?}", t.complex().ranks()),
                format!("{:?}", s.complex().ranks()),
            )]
        },
    ));
    let phi = taylor_iso(&t, &s)?;
    let budget = c.budget.clone();
    map_checks(&mut report, "Phi", &phi, &MapProperty::ALL, &budget)?;
    let identity = phi.inverse().and_then(|inv| phi.then(&inv)).map(|m| m.is_identity());
    report.push(Check::new(
        "Phi.inverse_identity",
        match identity {
            Ok(true) => vec![],
            Ok(false) => vec![Violation::new("Phi^-1 Phi", "not the identity", "identity")],
            Err(e) => vec![Violation::new("Phi^-1", e.to_string(), "an inverse")],
        },
    ));
    if let Some(p) = c.opts.out.clone() {
        let names: Vec<&str> = MapProperty::ALL.iter().map(|p| p.name()).collect();
        write(&p, &phi.to_json(&names)?)?;
    }
    c.finish(&report)
}

fn cmd_demo_sign(c: &mut Ctx) -> Result<i32> {
    let spec = match &c.opts.input {
        Some(_) => c.spec()?,
        None => parse_input_str(r#"{"variables":["x","y","z","w"],"ideals":[["x*y","y*z"],["z*w","w*x"]]}"#)?,
    };
    if spec.ideals.len() < 2 {
        return Err(Error::Input("demo-sign needs at least two ideals".into()));
    }
    let fs = c.factors(&spec)?;
    let corrected = star_product(&fs, SignMode::Corrected, &c.build)?;
    let unsigned = star_product(&fs, SignMode::Unsigned, &c.build)?;
    let budget = c.budget.clone();
    let mut report = Report::new("demo-sign", c.opts.seed);
    let mut outcome = Vec::new();
    for (label, alg) in [("corrected", &corrected), ("unsigned", &unsigned)] {
        let mut passed = true;
        for a in [DgAxiom::GradedComm, DgAxiom::Leibniz] {
            let check = prefixed(label, Check::timed(|| check_dg_axiom(alg, a, &budget))?);
            passed &= check.passed();
            report.push(check);
        }
        outcome.push(passed);
    }

    // The first odd basis element of the first two factors, placed in
    // their own slots.
    let cx = corrected.complex();
    let odd = |f: &DGGammaAlgebra| f.complex().basis().iter().find(|b| b.hdeg % 2 == 1).map(|b| b.id);
    if let (Some(a1), Some(a2)) = (odd(&fs[0]), odd(&fs[1])) {
        let unit = |slot: usize, id: usize| -> Vec<usize> {
            fs.iter()
                .enumerate()
                .map(|(i, f)| if i == slot { id } else { f.unit_id() })
                .collect()
        };
        let find = |t: Vec<usize>| {
            cx.basis()
                .iter()
                .find(|b| b.label == crate::complex::Label::Tuple(t.clone()))
                .map(|b| b.id)
        };
        if let (Some(x), Some(y)) = (find(unit(0, a1)), find(unit(1, a2))) {
            let (nx, ny) = (&cx.basis()[x].name, &cx.basis()[y].name);
            for (label, alg) in [("corrected", &corrected), ("unsigned", &unsigned)] {
                let xy = alg.basis_product(x, y);
                let yx = alg.basis_product(y, x);
                c.say(format!(
                    "{label}: {nx}·{ny} = {}, {ny}·{nx} = {}",
                    cx.format_element(&xy),
                    cx.format_element(&yx)
                ))?;
            }
        }
    }
    let ok = outcome == [true, false];
    c.say(if ok {
        "corrected signs pass; unsigned products violate the DG axioms"
    } else {
        "unexpected outcome: corrected signs should pass and unsigned should fail"
    })?;
    c.finish(&report)?;
    Ok(if ok { 0 } else { 1 })
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let opts = &cli.opts;
    if opts.max_divided_power < 1 {
        return Err(Error::Input("--max-divided-power must be at least 1".into()));
    }
    let mut c = Ctx {
        opts,
        build: BuildOptions {
            max_divided_power: opts.max_divided_power,
            ..BuildOptions::default()
        },
        budget: CheckBudget {
            seed: opts.seed,
            samples: opts.samples,
            max_map_power: opts.max_divided_power.min(3),
            ..CheckBudget::default()
        },
        out,
    };
    c.groups()?;
    match cli.command {
        Command::Build => cmd_build(&mut c),
        Command::Verify => cmd_verify(&mut c),
        Command::Scarf => cmd_scarf(&mut c),
        Command::Compare => cmd_compare(&mut c),
        Command::Export => cmd_export(&mut c),
        Command::DemoSign => cmd_demo_sign(&mut c),
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the exit code. Errors are printed to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {} failed: {e}", cli.command.name());
            2
        }
    }
}
