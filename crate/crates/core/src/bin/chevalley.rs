use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use chevalley::examples::{builtin_examples, load_examples, run_examples, NamedExample};
use chevalley::lie_data::{CartanType, Family};
use chevalley::number_field::{parse_profile, LdOverride, NumberFieldProfile};
use chevalley::qforms::{
    isometric_at_all_finite, locally_isometric, relevant_primes, signature, DiagonalForm,
    RationalPlace,
};
use chevalley::report::classify;
use chevalley::solitude::{
    cross_validate, finite_splitting_principle, oracle_verdict, solitude_verdict, CspAssumption,
    CspPolicy, Outcome,
};
use chevalley::{ker_b, Error};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_MISSING_DATA: u8 = 3;

#[derive(Parser)]
#[command(
    name = "chevalley",
    version,
    about = "Profinite solitude of Chevalley groups over number fields"
)]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Assumption on Serre's CSP conjecture for anisotropic A_1 forms
    #[arg(long, global = true, default_value = "unknown")]
    policy_a1: CspAssumption,
    /// Assumption on CSP for lattices in F4(-20)
    #[arg(long, global = true, default_value = "unknown")]
    policy_f4: CspAssumption,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GroupArgs {
    /// Cartan-Killing family, A to G
    #[arg(long = "type")]
    family: Family,
    #[arg(long)]
    rank: u32,
    /// Field profile such as deg=2,r1=2,r2=0 (optionally ld=... and label=...)
    #[arg(long, default_value = "deg=1,r1=1,r2=0")]
    field: String,
}

#[derive(Subcommand)]
enum Command {
    /// Solitude verdict with FSP and kernel counts
    Classify(GroupArgs),
    /// Finite splitting principle
    Fsp(GroupArgs),
    /// Kernel of the localization map on H^2(k, Z(G))
    Kerb(GroupArgs),
    /// Witness group of a NotSolitary verdict
    Witness(GroupArgs),
    /// Classify the bundled named examples
    Examples {
        /// Alternative fixture file
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
    /// Compare two diagonal forms over Q_p for all p and over R
    #[command(name = "qform-check")]
    QformCheck {
        #[arg(allow_hyphen_values = true)]
        first: String,
        #[arg(allow_hyphen_values = true)]
        second: String,
    },
    /// Compare the decision tree with the enumeration oracle
    Crossval {
        #[command(flatten)]
        group: Option<GroupArgs>,
        /// Run the full sweep: rank <= 8, fixed signatures, all policies
        #[arg(long, conflicts_with_all = ["family", "rank", "field"])]
        sweep: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoWitness(_) | Error::Precondition(_) | Error::BoundExceeded(_) => EXIT_FAILURE,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

impl GroupArgs {
    fn resolve(&self) -> Result<(CartanType, NumberFieldProfile), Failure> {
        Ok((
            CartanType::new(self.family, self.rank)?,
            parse_profile(&self.field)?,
        ))
    }
}

fn emit(json: bool, value: serde_json::Value, text: String) {
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&value).expect("value serializes")
        );
    } else {
        print!("{text}");
    }
}

fn cmd_classify(cli: &Cli, g: &GroupArgs, policy: CspPolicy) -> CmdResult {
    let (t, k) = g.resolve()?;
    let report = classify(t, &k, policy);
    if cli.json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(0)
}

fn cmd_fsp(cli: &Cli, g: &GroupArgs) -> CmdResult {
    let (t, k) = g.resolve()?;
    let fsp = finite_splitting_principle(t, &k);
    emit(
        cli.json,
        json!({"type": t.to_string(), "field": k.to_string(), "fsp": fsp}),
        format!("{t} over {k}: fsp {fsp}\n"),
    );
    Ok(0)
}

fn cmd_kerb(cli: &Cli, g: &GroupArgs) -> CmdResult {
    let (t, k) = g.resolve()?;
    let d = ker_b(t, &k);
    let mut text = format!(
        "{t} over {k}\ncount: {} ({} nontrivial)\ncoordinates: {}\nF2-dimension per coordinate: {}\n",
        d.total_count,
        d.nontrivial_count(),
        d.coordinate_count,
        d.f2_dimension_per_coordinate
    );
    for gen in &d.generators {
        let places: Vec<String> = gen.support.iter().map(|i| format!("real{i}")).collect();
        text += &format!(
            "generator: coordinate {}, 1/2 at {}\n",
            gen.coordinate,
            places.join(" and ")
        );
    }
    let mut value = serde_json::to_value(&d).expect("ker b serializes");
    value["type"] = json!(t.to_string());
    value["field"] = json!(k.to_string());
    value["nontrivial_count"] = json!(d.nontrivial_count());
    emit(cli.json, value, text);
    Ok(0)
}

fn cmd_witness(cli: &Cli, g: &GroupArgs, policy: CspPolicy) -> CmdResult {
    let (t, k) = g.resolve()?;
    let outcome = solitude_verdict(t, &k, policy).outcome;
    let Outcome::NotSolitary { witness } = outcome else {
        return Err(Failure {
            code: EXIT_FAILURE,
            message: format!(
                "{t} over {k} is not NotSolitary (verdict {})",
                outcome.shape()
            ),
        });
    };
    let mut text = format!("witness: {}\n", witness.description);
    if let Some(a) = &witness.assignment {
        text += &format!("real places: {}\n", a.describe());
    }
    emit(
        cli.json,
        serde_json::to_value(&witness).expect("witness serializes"),
        text,
    );
    Ok(0)
}

fn cmd_examples(cli: &Cli, fixtures: Option<&PathBuf>, policy: CspPolicy) -> CmdResult {
    let examples: Vec<NamedExample> = match fixtures {
        None => builtin_examples(),
        Some(path) if !path.exists() => {
            return Err(Failure {
                code: EXIT_MISSING_DATA,
                message: format!("fixture file {} not found", path.display()),
            })
        }
        Some(path) => load_examples(path)?,
    };
    if examples.is_empty() {
        return Err(Failure {
            code: EXIT_MISSING_DATA,
            message: "fixture file has no examples".into(),
        });
    }
    let results = run_examples(&examples, policy);
    let failed = results.iter().filter(|r| !r.pass).count();
    let width = examples
        .iter()
        .map(|e| e.display_name.len())
        .max()
        .unwrap_or(0);
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &results {
        let status = if r.pass { "PASS" } else { "FAIL" };
        let e = &r.example;
        text += &format!(
            "{status}  {:<width$}  {:<5} expected {:<16} got {}\n",
            e.display_name,
            e.cartan_type.to_string(),
            e.expected.to_string(),
            r.outcome.shape()
        );
        rows.push(json!({
            "name": e.display_name,
            "type": e.cartan_type.to_string(),
            "field": e.field.to_string(),
            "expected": e.expected.to_string(),
            "outcome": r.outcome.shape(),
            "pass": r.pass,
        }));
    }
    text += &format!(
        "{} examples, {} passed, {} failed\n",
        results.len(),
        results.len() - failed,
        failed
    );
    emit(
        cli.json,
        json!({"examples": rows, "passed": results.len() - failed, "failed": failed}),
        text,
    );
    Ok(if failed == 0 { 0 } else { EXIT_FAILURE })
}

fn cmd_qform_check(cli: &Cli, first: &str, second: &str) -> CmdResult {
    let q1: DiagonalForm = first.parse()?;
    let q2: DiagonalForm = second.parse()?;
    let finite = isometric_at_all_finite(&q1, &q2);
    let real = locally_isometric(&q1, &q2, RationalPlace::Infinite);
    let primes = relevant_primes(&[&q1, &q2]);
    let text = format!(
        "{q1} vs {q2}\nsignatures: {:?} vs {:?}\nfinite-isometric: {finite}\nreal-isometric: {real}\n",
        signature(&q1),
        signature(&q2)
    );
    let value = json!({
        "first": q1.to_string(),
        "second": q2.to_string(),
        "signatures": [signature(&q1), signature(&q2)],
        "relevant_primes": primes,
        "finite_isometric": finite,
        "real_isometric": real,
    });
    emit(cli.json, value, text);
    Ok(0)
}

fn cmd_crossval(cli: &Cli, group: Option<&GroupArgs>, sweep: bool, policy: CspPolicy) -> CmdResult {
    let cases: Vec<(CartanType, NumberFieldProfile, CspPolicy)> = if sweep {
        let signatures = [
            (0, 1),
            (0, 2),
            (1, 0),
            (1, 1),
            (2, 0),
            (2, 1),
            (3, 0),
            (4, 0),
            (4, 2),
        ];
        CartanType::all_up_to_rank(8)
            .into_iter()
            .flat_map(|t| {
                signatures.into_iter().flat_map(move |(r1, r2)| {
                    let k = NumberFieldProfile::with_signature(r1, r2)
                        .expect("sweep signature")
                        .with_ld(LdOverride::Yes);
                    CspPolicy::all().into_iter().map(move |p| (t, k.clone(), p))
                })
            })
            .collect()
    } else {
        let Some(g) = group else {
            return Err(Failure {
                code: EXIT_USAGE,
                message: "crossval needs --type and --rank, or --sweep".into(),
            });
        };
        let (t, k) = g.resolve()?;
        vec![(t, k, policy)]
    };
    let mut disagreements = Vec::new();
    for (t, k, p) in &cases {
        if !cross_validate(*t, k, *p)? {
            let tree = solitude_verdict(*t, k, *p).outcome.shape();
            let oracle = oracle_verdict(*t, k, *p)?.shape();
            disagreements.push(json!({"type": t.to_string(), "field": k.to_string(), "tree": tree, "oracle": oracle}));
        }
    }
    let agree = disagreements.is_empty();
    let mut text = format!(
        "{} case(s) checked, {} disagreement(s)\n",
        cases.len(),
        disagreements.len()
    );
    for d in &disagreements {
        text += &format!(
            "disagree: {} over {}: tree {} oracle {}\n",
            d["type"], d["field"], d["tree"], d["oracle"]
        );
    }
    emit(
        cli.json,
        json!({"checked": cases.len(), "agree": agree, "disagreements": disagreements}),
        text,
    );
    Ok(if agree { 0 } else { EXIT_FAILURE })
}

fn run(cli: &Cli) -> CmdResult {
    let policy = CspPolicy {
        serre_conjecture_a1: cli.policy_a1,
        f4_rank_one_csp: cli.policy_f4,
    };
    match &cli.command {
        Command::Classify(g) => cmd_classify(cli, g, policy),
        Command::Fsp(g) => cmd_fsp(cli, g),
        Command::Kerb(g) => cmd_kerb(cli, g),
        Command::Witness(g) => cmd_witness(cli, g, policy),
        Command::Examples { fixtures } => cmd_examples(cli, fixtures.as_ref(), policy),
        Command::QformCheck { first, second } => cmd_qform_check(cli, first, second),
        Command::Crossval { group, sweep } => cmd_crossval(cli, group.as_ref(), *sweep, policy),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
