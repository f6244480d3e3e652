//! Command-line front end: a REPL, a script runner, and one-shot solve
//! and check commands over the σ-set language.

use std::fs;
use std::io::{self, BufRead, Write as _};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sigmaset::lang::{
    fusion_operands, parse, CheckKind, CheckReport, EvalError, Expr, Outcome, Session, Statement,
};
use sigmaset::{is_locally_associative, SigmaSet, SolveStatus};

/// Exit codes: 1 parse or evaluation failure, 2 a strict check came back
/// false, 3 a solve found no solution, 4 a solve left the supported
/// universe size.
const EXIT_ERROR: u8 = 1;
const EXIT_CHECK_FAILED: u8 = 2;
const EXIT_NO_SOLUTION: u8 = 3;
const EXIT_INFEASIBLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "sigmaset",
    version,
    about = "Evaluate fusion expressions over σ-sets, solve fusion equations, \
             and check associativity and group properties"
)]
struct Cli {
    /// Emit one JSON record per statement instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    /// Treat order-sensitive fusion chains as errors and false check
    /// verdicts as failures.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Read statements interactively; errors keep the session alive.
    Repl,
    /// Run every statement in a script file.
    Eval { file: PathBuf },
    /// Solve fuse(a, X) = b for X.
    Solve {
        /// Expression for the known operand a.
        #[arg(long)]
        a: String,
        /// Expression for the target b.
        #[arg(long)]
        b: String,
    },
    /// Run one named check over the given expressions.
    Check {
        kind: CheckKindArg,
        #[arg(required = true)]
        exprs: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKindArg {
    Assoc,
    Localassoc,
    Group,
    Af,
}

impl From<CheckKindArg> for CheckKind {
    fn from(kind: CheckKindArg) -> CheckKind {
        match kind {
            CheckKindArg::Assoc => CheckKind::Assoc,
            CheckKindArg::Localassoc => CheckKind::LocalAssoc,
            CheckKindArg::Group => CheckKind::Group,
            CheckKindArg::Af => CheckKind::Af,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are successes; real usage
            // errors share the generic failure code.
            let code = if err.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let reporter = Reporter {
        json: cli.json,
        strict: cli.strict,
    };
    let code = match cli.command {
        Command::Repl => repl(&reporter),
        Command::Eval { file } => eval_file(&file, &reporter),
        Command::Solve { a, b } => one_shot_solve(&a, &b, &reporter),
        Command::Check { kind, exprs } => one_shot_check(kind.into(), &exprs, &reporter),
    };
    ExitCode::from(code)
}

/// Output routing shared by every subcommand. JSON records go to stdout
/// one per line; warnings and human-mode errors go to stderr.
struct Reporter {
    json: bool,
    strict: bool,
}

impl Reporter {
    fn outcome(&self, input: &str, outcome: &Outcome) {
        if self.json {
            println!("{}", outcome_record(input, outcome));
            return;
        }
        // Bindings are silent in plain mode, like shell assignments.
        if !matches!(outcome, Outcome::Bound { .. }) {
            println!("{outcome}");
        }
    }

    fn error(&self, input: &str, message: &str) {
        if self.json {
            println!(
                "{}",
                json!({
                    "kind": "error",
                    "input": input,
                    "ok": false,
                    "result": Value::Null,
                    "error": message,
                })
            );
        }
        eprintln!("error: {message}");
    }

    /// Reports order-sensitive fusion chains in `statement`. Returns
    /// false when strict mode must abort the statement.
    fn scan_chains(&self, session: &Session, statement: &Statement) -> bool {
        let mut clean = true;
        for warning in chain_warnings(session, statement) {
            if self.strict {
                self.error(&statement.to_string(), &warning);
                clean = false;
            } else {
                eprintln!("warning: {warning}");
            }
        }
        clean
    }
}

/// A fusion chain of three or more terms is evaluated left to right,
/// but that is only one of its readings. Any term triple that is not
/// locally associative makes the written order load-bearing.
fn chain_warnings(session: &Session, statement: &Statement) -> Vec<String> {
    let exprs: Vec<&Expr> = match statement {
        Statement::Expr(expr) => vec![expr],
        Statement::Binding { expr, .. } => vec![expr],
        Statement::Solve { lhs, rhs, .. } => vec![lhs, rhs],
        Statement::Check { args, .. } => args.iter().collect(),
    };
    let mut warnings = Vec::new();
    for expr in exprs {
        let operands = fusion_operands(expr);
        if operands.len() < 3 {
            continue;
        }
        // Unevaluable operands are the evaluator's error to report.
        let Ok(terms) = operands
            .iter()
            .map(|op| session.eval_expr(op))
            .collect::<Result<Vec<_>, _>>()
        else {
            continue;
        };
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                for k in j + 1..terms.len() {
                    if !is_locally_associative(&terms[i], &terms[j], &terms[k]) {
                        warnings.push(format!(
                            "fusion chain `{expr}` is order-sensitive: terms {}, {} and {} \
                             ({}, {}, {}) are not locally associative",
                            i + 1,
                            j + 1,
                            k + 1,
                            terms[i],
                            terms[j],
                            terms[k],
                        ));
                    }
                }
            }
        }
    }
    warnings
}

fn repl(reporter: &Reporter) -> u8 {
    let mut session = Session::new();
    let stdin = io::stdin();
    let mut line = String::new();
    loop {
        eprint!("σ> ");
        let _ = io::stderr().flush();
        line.clear();
        match stdin.lock().read_line(&mut line) {
            Ok(0) | Err(_) => break,
            Ok(_) => {}
        }
        let statements = match parse(&line) {
            Ok(statements) => statements,
            Err(err) => {
                reporter.error(line.trim(), &err.to_string());
                continue;
            }
        };
        for statement in &statements {
            if !reporter.scan_chains(&session, statement) {
                continue;
            }
            let input = statement.to_string();
            match session.eval_statement(statement) {
                Ok(outcome) => reporter.outcome(&input, &outcome),
                Err(err) => reporter.error(&input, &err.to_string()),
            }
        }
    }
    0
}

fn eval_file(path: &PathBuf, reporter: &Reporter) -> u8 {
    let source = match fs::read_to_string(path) {
        Ok(source) => source,
        Err(err) => {
            reporter.error(&path.display().to_string(), &format!("{}: {err}", path.display()));
            return EXIT_ERROR;
        }
    };
    let statements = match parse(&source) {
        Ok(statements) => statements,
        Err(err) => {
            let offending = source.lines().nth(err.line - 1).unwrap_or("").trim();
            reporter.error(offending, &err.to_string());
            return EXIT_ERROR;
        }
    };
    let mut session = Session::new();
    for statement in &statements {
        if !reporter.scan_chains(&session, statement) {
            return EXIT_ERROR;
        }
        let input = statement.to_string();
        match session.eval_statement(statement) {
            Ok(outcome) => reporter.outcome(&input, &outcome),
            Err(err) => {
                let code = eval_error_code(&err);
                reporter.error(&input, &err.to_string());
                return code;
            }
        }
    }
    0
}

fn one_shot_solve(a: &str, b: &str, reporter: &Reporter) -> u8 {
    let session = Session::new();
    let (Some(a_expr), Some(b_expr)) = (
        parse_single_expr(a, "--a", reporter),
        parse_single_expr(b, "--b", reporter),
    ) else {
        return EXIT_ERROR;
    };
    // Both operands are evaluated up front; the equation is over their
    // values, not over the expressions that produced them.
    let mut terms = Vec::new();
    for (expr, input) in [(&a_expr, a), (&b_expr, b)] {
        if !reporter.scan_chains(&session, &Statement::Expr(expr.clone())) {
            return EXIT_ERROR;
        }
        match session.eval_expr(expr) {
            Ok(value) => terms.push(value),
            Err(err) => {
                reporter.error(input, &err.to_string());
                return eval_error_code(&err);
            }
        }
    }
    let b_value = terms.pop().expect("two operands were pushed");
    let a_value = terms.pop().expect("two operands were pushed");
    let var = fresh_var(&[&a_expr, &b_expr]);
    let statement = Statement::Solve {
        var: var.clone(),
        lhs: Expr::Fuse(
            Box::new(Expr::SetLit(a_value.iter().cloned().collect())),
            Box::new(Expr::Var(var)),
        ),
        rhs: Expr::SetLit(b_value.iter().cloned().collect()),
    };
    let input = statement.to_string();
    let mut session = session;
    match session.eval_statement(&statement) {
        Ok(outcome) => {
            reporter.outcome(&input, &outcome);
            match &outcome {
                Outcome::Solve(report) if report.result.status == SolveStatus::NoSolution => {
                    EXIT_NO_SOLUTION
                }
                _ => 0,
            }
        }
        Err(err) => {
            let code = eval_error_code(&err);
            reporter.error(&input, &err.to_string());
            code
        }
    }
}

fn one_shot_check(kind: CheckKind, exprs: &[String], reporter: &Reporter) -> u8 {
    let arity_ok = match kind {
        CheckKind::Assoc | CheckKind::LocalAssoc => exprs.len() == 3,
        CheckKind::Group | CheckKind::Af => !exprs.is_empty(),
    };
    if !arity_ok {
        reporter.error(
            &exprs.join(" "),
            &format!("{kind} takes exactly 3 arguments, found {}", exprs.len()),
        );
        return EXIT_ERROR;
    }
    let mut args = Vec::new();
    for expr in exprs {
        match parse_single_expr(expr, "argument", reporter) {
            Some(parsed) => args.push(parsed),
            None => return EXIT_ERROR,
        }
    }
    let statement = Statement::Check { kind, args };
    let mut session = Session::new();
    if !reporter.scan_chains(&session, &statement) {
        return EXIT_ERROR;
    }
    let input = statement.to_string();
    match session.eval_statement(&statement) {
        Ok(outcome) => {
            reporter.outcome(&input, &outcome);
            match &outcome {
                Outcome::Check(report) if !report.ok() && reporter.strict => EXIT_CHECK_FAILED,
                _ => 0,
            }
        }
        Err(err) => {
            let code = eval_error_code(&err);
            reporter.error(&input, &err.to_string());
            code
        }
    }
}

fn eval_error_code(err: &EvalError) -> u8 {
    if matches!(err, EvalError::Infeasible(_)) {
        EXIT_INFEASIBLE
    } else {
        EXIT_ERROR
    }
}

/// Parses one command-line operand as a bare expression.
fn parse_single_expr(text: &str, role: &str, reporter: &Reporter) -> Option<Expr> {
    match parse(text) {
        Ok(statements) => {
            let mut exprs = statements.into_iter().filter_map(|statement| match statement {
                Statement::Expr(expr) => Some(expr),
                _ => None,
            });
            match (exprs.next(), exprs.next()) {
                (Some(expr), None) => Some(expr),
                _ => {
                    reporter.error(text, &format!("{role} must be a single expression"));
                    None
                }
            }
        }
        Err(err) => {
            reporter.error(text, &format!("{role}: {err}"));
            None
        }
    }
}

/// A variable name not used by either operand expression.
fn fresh_var(exprs: &[&Expr]) -> String {
    fn collect(expr: &Expr, used: &mut Vec<String>) {
        match expr {
            Expr::Var(name) => used.push(name.clone()),
            Expr::SetLit(_) => {}
            Expr::Fuse(l, r) | Expr::StarDiff(l, r) | Expr::HatIntersect(l, r) => {
                collect(l, used);
                collect(r, used);
            }
            Expr::Anti(inner) => collect(inner, used),
        }
    }
    let mut used = Vec::new();
    for expr in exprs {
        collect(expr, &mut used);
    }
    if !used.iter().any(|name| name == "X") {
        return "X".into();
    }
    (0..)
        .map(|i| format!("X{i}"))
        .find(|candidate| !used.contains(candidate))
        .expect("the candidate space is unbounded")
}

/// One schema-stable record per statement: every record carries `kind`,
/// `input`, `ok`, and `result`.
fn outcome_record(input: &str, outcome: &Outcome) -> Value {
    match outcome {
        Outcome::Value(value) => json!({
            "kind": "expr",
            "input": input,
            "ok": true,
            "result": value.to_string(),
        }),
        Outcome::Bound { name, value } => json!({
            "kind": "binding",
            "input": input,
            "ok": true,
            "name": name,
            "result": value.to_string(),
        }),
        Outcome::Solve(report) => {
            let solved = report.result.status == SolveStatus::Solved;
            json!({
                "kind": "solve",
                "input": input,
                "ok": solved,
                "status": if solved { "solved" } else { "no_solution" },
                "var": report.var,
                "result": if solved {
                    Value::String(report.result.candidate.to_string())
                } else {
                    Value::Null
                },
                "candidate": report.result.candidate.to_string(),
                "residual": report.result.residual.to_string(),
            })
        }
        Outcome::Check(report) => {
            let mut record = json!({
                "kind": "check",
                "check": report.kind().name(),
                "input": input,
                "ok": report.ok(),
                "result": report.ok(),
                "details": check_details(report),
            });
            if let Some(witness) = report.witness() {
                record["witness"] = json!({
                    "description": witness.description,
                    "replay": witness.replay,
                });
            }
            record
        }
    }
}

fn check_details(report: &CheckReport) -> Value {
    fn strings(sets: &[SigmaSet]) -> Vec<String> {
        sets.iter().map(ToString::to_string).collect()
    }
    match report {
        CheckReport::Assoc { sets, residue, .. } => json!({
            "sets": strings(sets),
            "residue": residue.to_string(),
        }),
        CheckReport::LocalAssoc { sets, report, .. } => {
            let orders: serde_json::Map<String, Value> = report
                .per_order_verdicts
                .iter()
                .map(|(order, ok)| (order.to_string(), Value::Bool(*ok)))
                .collect();
            json!({
                "sets": strings(sets),
                "e_x": report.e_x.to_string(),
                "e_y": report.e_y.to_string(),
                "e_z": report.e_z.to_string(),
                "orders": orders,
            })
        }
        CheckReport::Group { context, .. } => json!({
            "members": strings(context.members()),
            "has_identity": context.has_identity,
            "closed_under_antiset": context.closed_under_antiset,
            "closed_under_fusion": context.closed_under_fusion,
            "all_triples_locally_associative": context.all_triples_locally_associative,
        }),
        CheckReport::Af { members, .. } => json!({
            "members": strings(members),
        }),
    }
}
