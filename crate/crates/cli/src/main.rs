use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use slq_core::decomp::{
    self, j_decomposition, jstar_decomposition, semilattice_form, slices, star_ideal_check,
    Decomposition, DecompositionFile,
};
use slq_core::green;
use slq_core::orders::{
    check_abundant, check_completely_0_simple, check_completely_semisimple, check_ic,
    check_left_order, check_zero_lemmas, harness_fully_stratified, harness_semilattice,
    harness_semisimple, harness_slicing, Embedding, SemilatticeTarget,
};
use slq_core::search::{
    enumerate_semigroups, find_quotient_semigroup, stream_to_string, SearchBudget,
};
use slq_core::starpair::{
    check_embeddable, check_g_conditions, check_theorem54_ii, green_pair, identity_pair,
    induced_star_pair, make_star_pair, starred_pair, StarPair, Verdict,
};
use slq_core::{FiniteSemigroup, Relation, SgError};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const SCHEMA: &str = "slq-report/1";

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "slq", about = "Finite semigroup and left-order analysis", version)]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct BudgetArgs {
    /// largest order brute-force searches may visit
    #[arg(long, value_name = "N")]
    budget_order: Option<usize>,
    /// largest number of candidate tables brute-force searches may visit
    #[arg(long, value_name = "N")]
    budget_tables: Option<u64>,
}

impl BudgetArgs {
    fn build(&self, base: SearchBudget) -> SearchBudget {
        let mut b = base;
        if let Some(n) = self.budget_order {
            b = b.with_max_order(n);
        }
        if let Some(t) = self.budget_tables {
            b = b.with_max_tables(t);
        }
        b
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum PairKind {
    Starred,
    Green,
    Identity,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Theorem {
    #[value(name = "1.3")]
    T13,
    #[value(name = "2.x")]
    T2x,
    #[value(name = "4")]
    T4,
    #[value(name = "5.4")]
    T54,
    #[value(name = "6.1")]
    T61,
    #[value(name = "7.1")]
    T71,
    #[value(name = "8.1")]
    T81,
}

#[derive(Subcommand)]
enum Command {
    /// Print relations, distinguished subsets and structural flags of a table
    Analyze { table: PathBuf },
    /// Check whether S (a subset file) is a left order in Q
    CheckOrder {
        q_table: PathBuf,
        subset: PathBuf,
        #[arg(long)]
        straight: bool,
        #[arg(long)]
        fully_stratified: bool,
    },
    /// Check the embeddability conditions for a pair of preorders
    CheckStarpair {
        table: PathBuf,
        #[arg(long, value_enum, default_value = "starred")]
        pair: PairKind,
        /// relation matrix file overriding the left preorder
        #[arg(long, value_name = "FILE", requires = "leq_r")]
        leq_l: Option<PathBuf>,
        /// relation matrix file overriding the right preorder
        #[arg(long, value_name = "FILE", requires = "leq_l")]
        leq_r: Option<PathBuf>,
    },
    /// Decompose a semigroup over a partial order and print its slices
    Decompose {
        table: PathBuf,
        /// j, jstar, or a relation matrix file holding a compatible preorder
        #[arg(long, default_value = "j")]
        by: String,
        /// validate a decomposition JSON file instead of computing one
        #[arg(long, value_name = "FILE")]
        check: Option<PathBuf>,
    },
    /// Run a theorem harness over every table in a corpus directory
    Harness {
        #[arg(long, value_name = "DIR")]
        corpus: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Enumerate all semigroup tables of a given order
    Enumerate {
        n: usize,
        /// emit one representative per isomorphism class
        #[arg(long)]
        dedup: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for a semigroup of left quotients inducing a given pair
    FindQuotient {
        table: PathBuf,
        #[arg(long, value_enum, default_value = "starred")]
        pair: PairKind,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

fn read_table(path: &Path) -> Result<FiniteSemigroup, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
    FiniteSemigroup::from_table_text(&text)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))
}

fn read_subset(path: &Path) -> Result<Vec<usize>, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for w in line.split_whitespace() {
            out.push(w.parse().map_err(|_| {
                CmdError::input(format!("{}: bad index {w:?}", path.display()))
            })?);
        }
    }
    if out.is_empty() {
        return Err(CmdError::input(format!("{}: empty subset", path.display())));
    }
    Ok(out)
}

fn read_relation(path: &Path) -> Result<Relation, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
    Relation::from_matrix_text(&text)
        .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))
}

fn build_pair(
    s: &FiniteSemigroup,
    kind: PairKind,
    leq_l: &Option<PathBuf>,
    leq_r: &Option<PathBuf>,
) -> Result<StarPair, CmdError> {
    match (leq_l, leq_r) {
        (Some(l), Some(r)) => {
            make_star_pair(s, read_relation(l)?, read_relation(r)?).map_err(CmdError::from)
        }
        _ => match kind {
            PairKind::Starred => starred_pair(s).map_err(CmdError::from),
            PairKind::Green => green_pair(s).map_err(CmdError::from),
            PairKind::Identity => identity_pair(s).map_err(CmdError::from),
        },
    }
}

struct CmdError {
    code: u8,
    msg: String,
}

impl CmdError {
    fn input(msg: String) -> CmdError {
        CmdError {
            code: EXIT_INPUT,
            msg,
        }
    }
}

impl From<SgError> for CmdError {
    fn from(e: SgError) -> CmdError {
        let code = match e {
            SgError::Exhausted(_) | SgError::IsoCapExceeded(..) => EXIT_BUDGET,
            _ => EXIT_INPUT,
        };
        CmdError {
            code,
            msg: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    schema: &'static str,
    #[serde(flatten)]
    body: T,
}

// tolerate a closed pipe (e.g. piping into head)
fn out(text: &str) {
    use std::io::Write;
    let _ = write!(std::io::stdout(), "{text}");
}

fn emit<T: Serialize>(format: Format, body: T, text: impl FnOnce(&T) -> String) {
    match format {
        Format::Json => {
            let r = Report {
                schema: SCHEMA,
                body,
            };
            out(&format!("{}\n", serde_json::to_string_pretty(&r).unwrap()));
        }
        Format::Text => out(&format!("{}\n", text(&body).trim_end())),
    }
}

fn verdict_lines(verdicts: &[Verdict]) -> String {
    verdicts
        .iter()
        .map(|v| {
            format!(
                "{:24} {} {}{}",
                v.condition,
                if v.holds { "holds" } else { "FAILS" },
                match &v.witness {
                    Some(w) => format!("witness {w:?} "),
                    None => String::new(),
                },
                v.note
            )
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[derive(Serialize)]
struct AnalyzeBody {
    order: usize,
    idempotents: Vec<usize>,
    green: PartitionSet,
    starred: PartitionSet,
    square_cancellable: Vec<usize>,
    regular: bool,
    abundant: bool,
    ic_abundant: Option<bool>,
    completely_regular: bool,
    completely_0_simple: Verdict,
    completely_semisimple: Verdict,
}

#[derive(Serialize)]
struct PartitionSet {
    l: Vec<Vec<usize>>,
    r: Vec<Vec<usize>>,
    h: Vec<Vec<usize>>,
    d: Vec<Vec<usize>>,
    j: Vec<Vec<usize>>,
}

fn cmd_analyze(format: Format, table: &Path) -> Result<u8, CmdError> {
    let s = read_table(table)?;
    let eq = green::green_equivalences(&s)?;
    let st = green::starred_equivalences(&s)?;
    let jstar = green::jstar_preorder(&s)?;
    let abundant = check_abundant(&s)?;
    let ic = if abundant.holds {
        Some(check_ic(&s)?.holds)
    } else {
        None
    };
    let body = AnalyzeBody {
        order: s.order(),
        idempotents: s.idempotents(),
        green: PartitionSet {
            l: eq.l.classes(),
            r: eq.r.classes(),
            h: eq.h.classes(),
            d: eq.d.classes(),
            j: eq.j.classes(),
        },
        starred: PartitionSet {
            l: st.lstar.classes(),
            r: st.rstar.classes(),
            h: st.hstar.classes(),
            d: st.dstar.classes(),
            j: jstar.intersect(&jstar.converse()).classes(),
        },
        square_cancellable: green::square_cancellable(&s)?,
        regular: s.is_regular(),
        abundant: abundant.holds,
        ic_abundant: ic,
        completely_regular: green::is_completely_regular(&s)?,
        completely_0_simple: check_completely_0_simple(&s)?,
        completely_semisimple: check_completely_semisimple(&s)?,
    };
    emit(format, body, |b| {
        let part = |p: &Vec<Vec<usize>>| {
            p.iter()
                .map(|c| format!("{{{}}}", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut out = format!("order {}\nidempotents {:?}\n", b.order, b.idempotents);
        out += &format!(
            "L  {}\nR  {}\nH  {}\nD  {}\nJ  {}\n",
            part(&b.green.l),
            part(&b.green.r),
            part(&b.green.h),
            part(&b.green.d),
            part(&b.green.j)
        );
        out += &format!(
            "L* {}\nR* {}\nH* {}\nD* {}\nJ* {}\n",
            part(&b.starred.l),
            part(&b.starred.r),
            part(&b.starred.h),
            part(&b.starred.d),
            part(&b.starred.j)
        );
        out += &format!("S(S) {:?}\n", b.square_cancellable);
        out += &format!(
            "regular {}  abundant {}  IC {}  completely regular {}\n",
            b.regular,
            b.abundant,
            b.ic_abundant.map_or("n/a".into(), |v| v.to_string()),
            b.completely_regular
        );
        out += &verdict_lines(&[b.completely_0_simple.clone(), b.completely_semisimple.clone()]);
        out
    });
    Ok(0)
}

fn cmd_check_order(
    format: Format,
    q_table: &Path,
    subset: &Path,
    straight: bool,
    fully_stratified: bool,
) -> Result<u8, CmdError> {
    let q = read_table(q_table)?;
    let members = read_subset(subset)?;
    let e = Embedding::new(q, &members)?;
    let report = check_left_order(&e)?;
    emit(format, report.clone(), |r| {
        format!(
            "weak {}  left-order {}  straight {}  fully-stratified {}  stratified {}\nwitnesses {:?}\nfailures {:?}",
            r.is_weak_left_order,
            r.is_left_order,
            r.is_straight,
            r.is_fully_stratified,
            r.is_stratified,
            r.witnesses,
            r.failures
        )
    });
    let ok = report.is_left_order
        && (!straight || report.is_straight)
        && (!fully_stratified || report.is_fully_stratified);
    Ok(if ok { 0 } else { EXIT_FAIL })
}

fn cmd_check_starpair(
    format: Format,
    table: &Path,
    kind: PairKind,
    leq_l: &Option<PathBuf>,
    leq_r: &Option<PathBuf>,
) -> Result<u8, CmdError> {
    let s = read_table(table)?;
    let pair = build_pair(&s, kind, leq_l, leq_r)?;
    let mut verdicts = check_embeddable(&pair)?;
    verdicts.extend(check_g_conditions(&pair)?);
    verdicts.push(check_theorem54_ii(&pair)?);
    let all = verdicts.iter().all(|v| v.holds);
    #[derive(Serialize)]
    struct Verdicts {
        verdicts: Vec<Verdict>,
    }
    emit(format, Verdicts { verdicts }, |v| verdict_lines(&v.verdicts));
    Ok(if all { 0 } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct DecomposeBody {
    decomposition: DecompositionFile,
    slice_tables: Vec<String>,
    star_ideal_checks: Vec<Verdict>,
    semilattice_form: Verdict,
}

fn cmd_decompose(
    format: Format,
    table: &Path,
    by: &str,
    check: &Option<PathBuf>,
) -> Result<u8, CmdError> {
    let s = read_table(table)?;
    let d: Decomposition = if let Some(path) = check {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
        let file: DecompositionFile = serde_json::from_str(&text)
            .map_err(|e| CmdError::input(format!("{}: {e}", path.display())))?;
        file.into_decomposition(&s)?
    } else {
        match by {
            "j" => j_decomposition(&s)?,
            "jstar" => jstar_decomposition(&s)?,
            path => decomp::from_preorder(&s, &read_relation(Path::new(path))?)?,
        }
    };
    let slice_tables: Vec<String> = slices(&d)?
        .iter()
        .map(|sl| sl.quotient.quotient.to_table_text())
        .collect();
    let star_ideal_checks: Vec<Verdict> = (0..d.classes().len())
        .map(|alpha| star_ideal_check(&d, alpha))
        .collect::<Result<_, _>>()?;
    let body = DecomposeBody {
        decomposition: DecompositionFile::from_decomposition(&d),
        slice_tables,
        star_ideal_checks,
        semilattice_form: semilattice_form(&d)?,
    };
    emit(format, body, |b| {
        let mut out = serde_json::to_string(&b.decomposition).unwrap();
        out.push('\n');
        for (alpha, t) in b.slice_tables.iter().enumerate() {
            out += &format!("slice {alpha}:\n{t}");
        }
        out += &verdict_lines(&b.star_ideal_checks);
        out.push('\n');
        out += &verdict_lines(&[b.semilattice_form.clone()]);
        out
    });
    Ok(0)
}

struct InstanceOutcome {
    name: String,
    verdicts: Vec<Verdict>,
    skipped: Option<String>,
}

fn run_theorem(
    s: &FiniteSemigroup,
    theorem: Theorem,
    budget: &SearchBudget,
) -> Result<Option<Vec<Verdict>>, SgError> {
    let e = Embedding::full(s);
    let skip_hypothesis = |r: Result<Vec<Verdict>, SgError>| match r {
        Err(SgError::HypothesisNotMet(_)) | Err(SgError::NotAbundant) => Ok(None),
        other => other.map(Some),
    };
    match theorem {
        Theorem::T13 => {
            if !check_left_order(&e)?.is_straight {
                return Ok(None);
            }
            let pair = induced_star_pair(e.q(), e.s())?;
            let mut v = check_embeddable(&pair)?;
            v.extend(check_g_conditions(&pair)?);
            Ok(Some(v))
        }
        Theorem::T2x => {
            if !check_left_order(&e)?.is_straight {
                return Ok(None);
            }
            Ok(Some(check_zero_lemmas(&e)?))
        }
        Theorem::T4 => {
            let dq = j_decomposition(s)?;
            skip_hypothesis(harness_slicing(&e, &dq))
        }
        Theorem::T54 => {
            let pair = starred_pair(s)?;
            let mut v = check_embeddable(&pair)?;
            v.extend(check_g_conditions(&pair)?);
            let premises = v
                .iter()
                .filter(|x| x.condition != "Gii")
                .all(|x| x.holds);
            if !premises {
                return Ok(None);
            }
            v.push(check_theorem54_ii(&pair)?);
            Ok(Some(v))
        }
        Theorem::T61 => {
            let d = j_decomposition(s)?;
            if !semilattice_form(&d)?.holds {
                return Ok(None);
            }
            let targets: Vec<SemilatticeTarget> = (0..d.poset().size())
                .map(|alpha| SemilatticeTarget::identity(&d, alpha))
                .collect::<Result<_, _>>()?;
            skip_hypothesis(harness_semilattice(s, &d, &targets, budget))
        }
        Theorem::T71 => {
            let d = jstar_decomposition(s)?;
            skip_hypothesis(harness_fully_stratified(s, &d, Some((&e, &d)), budget))
        }
        Theorem::T81 => {
            let pair = green_pair(s)?;
            Ok(Some(harness_semisimple(s, &pair, Some(&e), budget)?))
        }
    }
}

#[derive(Serialize)]
struct HarnessBody {
    theorem: String,
    instances: usize,
    applicable: usize,
    passed: usize,
    hard_failures: usize,
    exhausted: usize,
    details: Vec<String>,
}

fn cmd_harness(
    format: Format,
    corpus: &Path,
    theorem: Theorem,
    budget: &SearchBudget,
) -> Result<u8, CmdError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(corpus)
        .map_err(|e| CmdError::input(format!("{}: {e}", corpus.display())))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "tbl"))
        .collect();
    paths.sort();
    let mut outcomes = Vec::new();
    for path in &paths {
        let name = path
            .file_name()
            .map(|f| f.to_string_lossy().into_owned())
            .unwrap_or_default();
        let s = read_table(path)?;
        let outcome = match run_theorem(&s, theorem, budget) {
            Ok(Some(verdicts)) => InstanceOutcome {
                name,
                verdicts,
                skipped: None,
            },
            Ok(None) => InstanceOutcome {
                name,
                verdicts: Vec::new(),
                skipped: Some("hypotheses not met".into()),
            },
            Err(SgError::Exhausted(why)) => InstanceOutcome {
                name,
                verdicts: Vec::new(),
                skipped: Some(format!("budget exhausted: {why}")),
            },
            Err(e) => return Err(e.into()),
        };
        outcomes.push(outcome);
    }
    let applicable = outcomes.iter().filter(|o| o.skipped.is_none()).count();
    let exhausted = outcomes
        .iter()
        .filter(|o| o.skipped.as_deref().is_some_and(|s| s.starts_with("budget")))
        .count();
    // 7.1 and 8.1 are equivalences: individual conditions may legitimately
    // fail together, so only the verdicts asserting the equivalence itself
    // count as claims there. Everything else always has to hold.
    let is_claim = |v: &Verdict| match theorem {
        Theorem::T81 => matches!(
            v.condition.as_str(),
            "Theorem-8.1-implications" | "Theorem-8.1-ii-to-i"
        ),
        Theorem::T71 => v.condition != "Theorem-7.1-criterion",
        _ => true,
    };
    let hard_failures: usize = outcomes
        .iter()
        .flat_map(|o| &o.verdicts)
        .filter(|v| is_claim(v) && !v.holds)
        .count();
    let passed = outcomes
        .iter()
        .filter(|o| {
            o.skipped.is_none() && o.verdicts.iter().all(|v| v.holds || !is_claim(v))
        })
        .count();
    let theorem_name = match theorem {
        Theorem::T13 => "1.3",
        Theorem::T2x => "2.x",
        Theorem::T4 => "4",
        Theorem::T54 => "5.4",
        Theorem::T61 => "6.1",
        Theorem::T71 => "7.1",
        Theorem::T81 => "8.1",
    }
    .to_string();
    let details: Vec<String> = outcomes
        .iter()
        .map(|o| match &o.skipped {
            Some(why) => format!("{}: skipped ({why})", o.name),
            None => {
                let bad: Vec<&str> = o
                    .verdicts
                    .iter()
                    .filter(|v| is_claim(v) && !v.holds)
                    .map(|v| v.condition.as_str())
                    .collect();
                let info: Vec<&str> = o
                    .verdicts
                    .iter()
                    .filter(|v| !is_claim(v) && !v.holds)
                    .map(|v| v.condition.as_str())
                    .collect();
                if !bad.is_empty() {
                    format!("{}: FAIL {:?}", o.name, bad)
                } else if !info.is_empty() {
                    format!("{}: pass (conditions {:?} fail jointly)", o.name, info)
                } else {
                    format!("{}: pass ({} verdicts)", o.name, o.verdicts.len())
                }
            }
        })
        .collect();
    let body = HarnessBody {
        theorem: theorem_name,
        instances: outcomes.len(),
        applicable,
        passed,
        hard_failures,
        exhausted,
        details,
    };
    emit(format, body, |b| {
        let mut out = b.details.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out += &format!(
            "{} instances, {} applicable, {} passed, {} hard failures, {} exhausted",
            b.instances, b.applicable, b.passed, b.hard_failures, b.exhausted
        );
        out
    });
    Ok(if hard_failures == 0 { 0 } else { EXIT_FAIL })
}

fn cmd_enumerate(n: usize, dedup: bool, budget: &SearchBudget) -> Result<u8, CmdError> {
    let list = enumerate_semigroups(n, budget, dedup)?;
    out(&stream_to_string(&list, budget, true));
    Ok(0)
}

fn cmd_find_quotient(
    format: Format,
    table: &Path,
    kind: PairKind,
    budget: &SearchBudget,
) -> Result<u8, CmdError> {
    let s = read_table(table)?;
    let pair = build_pair(&s, kind, &None, &None)?;
    match find_quotient_semigroup(&s, &pair, budget)? {
        Some(e) => {
            #[derive(Serialize)]
            struct Found {
                found: bool,
                q_table: String,
                s_members: Vec<usize>,
            }
            let body = Found {
                found: true,
                q_table: e.q().to_table_text(),
                s_members: e.s().members().to_vec(),
            };
            emit(format, body, |b| {
                format!("found quotient of order {}\n{}", b.q_table.lines().next().unwrap_or(""), b.q_table)
            });
            Ok(0)
        }
        None => {
            #[derive(Serialize)]
            struct NotFound {
                found: bool,
                max_order: usize,
            }
            emit(
                format,
                NotFound {
                    found: false,
                    max_order: budget.max_order,
                },
                |b| format!("no quotient up to order {}", b.max_order),
            );
            Ok(EXIT_FAIL)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CmdError> {
    match &cli.command {
        Command::Analyze { table } => cmd_analyze(cli.format, table),
        Command::CheckOrder {
            q_table,
            subset,
            straight,
            fully_stratified,
        } => cmd_check_order(cli.format, q_table, subset, *straight, *fully_stratified),
        Command::CheckStarpair {
            table,
            pair,
            leq_l,
            leq_r,
        } => cmd_check_starpair(cli.format, table, *pair, leq_l, leq_r),
        Command::Decompose { table, by, check } => cmd_decompose(cli.format, table, by, check),
        Command::Harness {
            corpus,
            theorem,
            budget,
        } => cmd_harness(
            cli.format,
            corpus,
            *theorem,
            &budget.build(SearchBudget::extension()),
        ),
        Command::Enumerate { n, dedup, budget } => {
            cmd_enumerate(*n, *dedup, &budget.build(SearchBudget::free()))
        }
        Command::FindQuotient {
            table,
            pair,
            budget,
        } => cmd_find_quotient(
            cli.format,
            table,
            *pair,
            &budget.build(SearchBudget::extension()),
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
