//! `rrb`: validate, enumerate, and compute cohomology and Wells data for
//! finite relative Rota-Baxter groups described in JSON files.
//!
//! Exit codes: 0 success, 1 parse error, 2 invalid input, 3 bound or
//! budget exceeded.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use rrb_core::cohomology::Cohomology;
use rrb_core::extension::{module_of, Extension, ExtensionError};
use rrb_core::groupkit::{FiniteGroup, GroupError, DEFAULT_MAX_ORDER};
use rrb_core::json::{Document, FactorSystemJson, JsonError};
use rrb_core::module::{validate_module, ModuleError};
use rrb_core::rrb::{enumerate_rrb_operators, RrbError};
use rrb_core::wells::{is_compatible, MapPair, WellsContext, WellsError, WellsReport};

#[derive(Parser, Debug)]
#[command(name = "rrb", version, about = "Finite relative Rota-Baxter groups and their extensions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Largest group order for automorphism enumeration.
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER as u64, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_order: u64,
    /// Cap on axiom evaluations during operator enumeration (also `RRB_BUDGET`).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    budget: Option<u64>,
    /// Seed for randomized sweeps; no current command draws random numbers.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a group, RRB group, module or extension document.
    Validate { path: PathBuf },
    /// List every Rota-Baxter operator H -> G for the given action.
    Enumerate {
        h: PathBuf,
        g: PathBuf,
        /// JSON array of permutations of H, one per element of G; trivial if omitted.
        #[arg(long)]
        phi: Option<PathBuf>,
    },
    /// Invariant factors of Z1, Z2, B2 and H2 of a module.
    Cohomology {
        path: PathBuf,
        /// Also list one representative cocycle per class.
        #[arg(long)]
        representatives: bool,
    },
    /// Wells exact sequence report for an abelian extension.
    Wells { path: PathBuf },
    /// Decide whether a pair of automorphisms lifts to the extension.
    Inducible { extension: PathBuf, pair: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Parse(String),
    Invalid { message: String, witness: String },
    Bound(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 1,
            Failure::Invalid { .. } => 2,
            Failure::Bound(_) => 3,
        }
    }

    fn invalid(message: impl ToString, witness: impl std::fmt::Debug) -> Self {
        Failure::Invalid { message: message.to_string(), witness: format!("{witness:?}") }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::OrderTooLarge { .. } => Failure::Bound(e.to_string()),
            e => Failure::invalid(&e, &e),
        }
    }
}

impl From<RrbError> for Failure {
    fn from(e: RrbError) -> Self {
        match e {
            RrbError::Group(g) => g.into(),
            RrbError::BudgetExceeded(_) => Failure::Bound(e.to_string()),
            e => Failure::invalid(&e, &e),
        }
    }
}

impl From<ModuleError> for Failure {
    fn from(e: ModuleError) -> Self {
        match e {
            ModuleError::Group(g) => g.into(),
            ModuleError::ModuleInvalid(v) => Failure::invalid(&e, v),
            e => Failure::invalid(&e, &e),
        }
    }
}

impl From<ExtensionError> for Failure {
    fn from(e: ExtensionError) -> Self {
        match e {
            ExtensionError::Group(g) => g.into(),
            ExtensionError::Rrb(r) => r.into(),
            ExtensionError::Module(m) => m.into(),
            e => Failure::invalid(&e, &e),
        }
    }
}

impl From<WellsError> for Failure {
    fn from(e: WellsError) -> Self {
        match e {
            WellsError::Rrb(r) => r.into(),
            WellsError::Extension(x) => x.into(),
            WellsError::Module(m) => m.into(),
            e => Failure::invalid(&e, &e),
        }
    }
}

impl From<JsonError> for Failure {
    fn from(e: JsonError) -> Self {
        match e {
            JsonError::Parse(m) => Failure::Parse(m),
            JsonError::Group(g) => g.into(),
            JsonError::Rrb(r) => r.into(),
            JsonError::Module(m) => m.into(),
            JsonError::Extension(x) => x.into(),
            JsonError::Wells(w) => w.into(),
            e => Failure::invalid(&e, &e),
        }
    }
}

struct Output {
    json: Value,
    text: String,
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    Document::parse(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn read_group(path: &Path) -> Result<FiniteGroup, Failure> {
    match read_document(path)? {
        Document::Group(g) => Ok(g.to_group()?),
        other => Err(Failure::Parse(format!("{}: expected a group, found {}", path.display(), other.kind()))),
    }
}

fn read_extension(path: &Path) -> Result<Extension, Failure> {
    match read_document(path)? {
        Document::Extension(e) => Ok(e.to_extension()?),
        other => Err(Failure::Parse(format!("{}: expected an extension, found {}", path.display(), other.kind()))),
    }
}

fn budget(cli: &Cli) -> Result<Option<u64>, Failure> {
    if cli.budget.is_some() {
        return Ok(cli.budget);
    }
    match std::env::var("RRB_BUDGET") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&b| b > 0)
            .map(Some)
            .ok_or_else(|| Failure::Parse(format!("RRB_BUDGET must be a positive integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

/// Result of validating a payload: `Ok(summary)` or the invalidity failure.
fn check_document(doc: &Document) -> Result<Value, Failure> {
    match doc {
        Document::Group(g) => {
            let g = g.to_group()?;
            Ok(json!({ "order": g.order(), "abelian": g.is_abelian() }))
        }
        Document::Rrb(r) => {
            let r = r.to_rrb()?;
            Ok(json!({
                "h_order": r.h().order(),
                "g_order": r.g().order(),
                "trivial": rrb_core::rrb::is_trivial(&r),
            }))
        }
        Document::Module(m) => {
            let quotient = m.quotient.to_rrb()?;
            let kernel = m.kernel.to_rrb()?;
            if let Some(v) = validate_module(&quotient, &kernel, &m.action)? {
                return Err(Failure::invalid(ModuleError::ModuleInvalid(v), v));
            }
            let m = m.to_module()?;
            let (na, nb, nk, nl) = m.shape();
            Ok(json!({ "shape": [na, nb, nk, nl] }))
        }
        Document::Extension(e) => {
            let e = e.to_extension()?;
            Ok(json!({
                "total_orders": [e.total().h().order(), e.total().g().order()],
                "abelian": e.is_abelian(),
            }))
        }
        Document::FactorSystem(fs) => {
            let (na, nb) = fs.to_factor_system()?.shape();
            Ok(json!({ "shape": [na, nb], "checked": "structure" }))
        }
        Document::Pair(_) => Ok(json!({ "checked": "structure" })),
    }
}

fn cmd_validate(path: &Path) -> Result<(Output, u8), Failure> {
    let doc = read_document(path)?;
    let kind = doc.kind();
    match check_document(&doc) {
        Ok(summary) => {
            let text = format!("{kind}: valid {summary}");
            Ok((Output { json: json!({ "type": kind, "valid": true, "summary": summary }), text }, 0))
        }
        Err(Failure::Invalid { message, witness }) => {
            let text = format!("{kind}: invalid: {witness}\n{message}");
            let json = json!({ "type": kind, "valid": false, "error": message, "witness": witness });
            Ok((Output { json, text }, 2))
        }
        Err(other) => Err(other),
    }
}

fn cmd_enumerate(cli: &Cli, h: &Path, g: &Path, phi: Option<&Path>) -> Result<Output, Failure> {
    let hg = read_group(h)?;
    let gg = read_group(g)?;
    let phi: Vec<Vec<usize>> = match phi {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", p.display())))?
        }
        None => vec![hg.elements().collect(); gg.order()],
    };
    let ops = enumerate_rrb_operators(&hg, &gg, &phi, budget(cli)?)?;
    let mut text = format!("{} operators", ops.len());
    for r in &ops {
        text.push_str(&format!("\n{r:?}"));
    }
    Ok(Output { json: json!({ "count": ops.len(), "operators": ops }), text })
}

fn cmd_cohomology(path: &Path, representatives: bool) -> Result<Output, Failure> {
    let module = match read_document(path)? {
        Document::Module(m) => m.to_module()?,
        Document::Extension(e) => module_of(&e.to_extension()?)?,
        other => return Err(Failure::Parse(format!("{}: expected a module, found {}", path.display(), other.kind()))),
    };
    let coh = Cohomology::new(&module);
    let mut json = json!({
        "z1": coh.z1().factors(),
        "z2": coh.z2().factors(),
        "b2": coh.b2().factors(),
        "h2": coh.h2().factors(),
        "orders": {
            "z1": coh.z1().order().to_string(),
            "z2": coh.z2().order().to_string(),
            "b2": coh.b2().order().to_string(),
            "h2": coh.h2().order().to_string(),
        },
    });
    let mut text = format!(
        "Z1 {:?} (order {})\nZ2 {:?} (order {})\nB2 {:?} (order {})\nH2 {:?} (order {})",
        coh.z1().factors(),
        coh.z1().order(),
        coh.z2().factors(),
        coh.z2().order(),
        coh.b2().factors(),
        coh.b2().order(),
        coh.h2().factors(),
        coh.h2().order()
    );
    if representatives {
        let reps: Vec<Value> = coh
            .class_representatives()
            .into_iter()
            .map(|c| json!({ "class": c.coords, "factor_system": FactorSystemJson::of(&module, &c.representative) }))
            .collect();
        for r in &reps {
            text.push_str(&format!("\n{r}"));
        }
        json["witnesses"] = Value::Array(reps);
    }
    Ok(Output { json, text })
}

fn wells_text(r: &WellsReport) -> String {
    let e = &r.exactness;
    let mut t = format!(
        "H2 {:?}, class {:?}\n|Z1| = {}, |Aut^(A,K)(H)| = {}, |Aut_K(H)| = {}, |C| = {}\n\
         eta injective: {}\nker rho = im eta: {}\nker omega = im rho: {}\nomega derivation: {}\nomega homomorphism: {}",
        r.h2,
        r.class,
        r.z1_order,
        r.aut_ak_order,
        r.aut_k_order,
        r.c_order,
        e.eta_injective,
        e.ker_rho_eq_im_eta,
        e.ker_omega_eq_im_rho,
        e.omega_derivation,
        r.omega_is_homomorphism
    );
    for p in &r.pairs {
        t.push_str(&format!(
            "\npsi {:?}/{:?} theta {:?}/{:?}: {}",
            p.psi.psi,
            p.psi.eta,
            p.theta.psi,
            p.theta.eta,
            match (&p.omega, p.inducible) {
                (None, _) => "not compatible".to_string(),
                (Some(w), true) => format!("omega {w:?}, inducible"),
                (Some(w), false) => format!("omega {w:?}, not inducible"),
            }
        ));
    }
    for f in &r.failures {
        t.push_str(&format!("\nfailure: {f}"));
    }
    t
}

fn cmd_wells(cli: &Cli, path: &Path) -> Result<Output, Failure> {
    let ext = read_extension(path)?;
    let ctx = WellsContext::new(&ext, cli.max_order as usize)?;
    let report = ctx.verify_exactness()?;
    let json = serde_json::to_value(&report).expect("serializable");
    Ok(Output { text: wells_text(&report), json })
}

fn cmd_inducible(cli: &Cli, ext_path: &Path, pair_path: &Path) -> Result<Output, Failure> {
    let ext = read_extension(ext_path)?;
    let pair = match read_document(pair_path)? {
        Document::Pair(p) => p.to_pair(ext.quotient(), ext.kernel())?,
        other => return Err(Failure::Parse(format!("{}: expected a pair, found {}", pair_path.display(), other.kind()))),
    };
    let ctx = WellsContext::new(&ext, cli.max_order as usize)?;
    let in_c = is_compatible(ctx.module(), &pair);
    let omega = if in_c { Some(ctx.wells_map(&pair)?.coords) } else { None };
    let verdict = ctx.is_inducible(&pair);
    let criterion = ctx.inducible_by_module_criterion(&pair)?;
    let witness = verdict.witness.as_ref().map(MapPair::of);
    let json = json!({
        "in_C": in_c,
        "omega": omega,
        "inducible": verdict.inducible,
        "module_criterion": criterion,
        "agree": verdict.inducible == criterion,
        "witness": witness,
    });
    let mut text = format!(
        "compatible: {in_c}\nomega: {omega:?}\ninducible: {}\nmodule criterion: {criterion}\nagree: {}",
        verdict.inducible,
        verdict.inducible == criterion
    );
    if let Some(w) = &witness {
        text.push_str(&format!("\nwitness: {:?}/{:?}", w.psi, w.eta));
    }
    Ok(Output { json, text })
}

fn run(cli: &Cli) -> Result<(Output, u8), Failure> {
    match &cli.command {
        Command::Validate { path } => cmd_validate(path),
        Command::Enumerate { h, g, phi } => cmd_enumerate(cli, h, g, phi.as_deref()).map(|o| (o, 0)),
        Command::Cohomology { path, representatives } => cmd_cohomology(path, *representatives).map(|o| (o, 0)),
        Command::Wells { path } => cmd_wells(cli, path).map(|o| (o, 0)),
        Command::Inducible { extension, pair } => cmd_inducible(cli, extension, pair).map(|o| (o, 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, code)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => println!("{}", out.text),
            }
            ExitCode::from(code)
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Parse(m) => eprintln!("parse error: {m}"),
                Failure::Bound(m) => eprintln!("bound exceeded: {m}"),
                Failure::Invalid { message, witness } => {
                    eprintln!("invalid: {message}");
                    match cli.format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string_pretty(&json!({ "valid": false, "error": message, "witness": witness }))
                                .expect("serializable")
                        ),
                        Format::Text => println!("invalid: {witness}"),
                    }
                }
            }
            ExitCode::from(code)
        }
    }
}
