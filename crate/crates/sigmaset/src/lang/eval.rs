//! Statement evaluation: environments, solve dispatch, check reports.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::assoc::{eval_chain, is_assoc_order, triad_system, TriadOrder, TriadReport};
use crate::group::{
    check_group, solve_fusion_equation, GroupContext, GroupDefect, SolveInfeasible, SolveResult,
    SolveStatus,
};
use crate::set::{is_antielement_free_family, SigmaSet};

use super::{fusion_operands, CheckKind, Expr, Statement};

/// Why a statement could not be evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("the unknown `{var}` appears {count} times on the left side; it must appear exactly once")]
    SolveVariableCount { var: String, count: usize },
    #[error("the unknown `{var}` must be a direct operand of the outermost fusion on the left side")]
    SolveVariableNested { var: String },
    #[error(
        "the left side fuses {count} known operands with the unknown; fusion is not \
         associative, so folding them into one operand first would change the equation"
    )]
    SolveExtraOperands { count: usize },
    #[error("the unknown `{var}` may not appear on the right side")]
    SolveVariableOnRight { var: String },
    #[error(transparent)]
    Infeasible(#[from] SolveInfeasible),
}

/// Result of one statement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// An expression's value.
    Value(SigmaSet),
    /// A binding took effect.
    Bound { name: String, value: SigmaSet },
    Solve(SolveReport),
    Check(CheckReport),
}

/// A solve statement, fully evaluated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub var: String,
    /// The evaluated known side `a` of `fuse(a, X) = b`.
    pub a: SigmaSet,
    /// The evaluated right side `b`.
    pub b: SigmaSet,
    pub result: SolveResult,
}

/// A check statement, fully evaluated. Each variant keeps the evaluated
/// inputs so the verdict can be reproduced from the report alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckReport {
    Assoc {
        sets: [SigmaSet; 3],
        /// The associativity residue of the ordered triple.
        residue: SigmaSet,
        ok: bool,
    },
    LocalAssoc {
        sets: [SigmaSet; 3],
        report: TriadReport,
        ok: bool,
    },
    Group { context: GroupContext, ok: bool },
    Af {
        members: Vec<SigmaSet>,
        /// First ordered pair whose hat intersection is non-empty.
        witness: Option<(SigmaSet, SigmaSet)>,
        ok: bool,
    },
}

/// A failure witness, phrased as source text so it can be replayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub description: String,
    /// Statements or expressions that reproduce the failure when fed
    /// back to the evaluator.
    pub replay: Vec<String>,
}

impl CheckReport {
    pub fn kind(&self) -> CheckKind {
        match self {
            CheckReport::Assoc { .. } => CheckKind::Assoc,
            CheckReport::LocalAssoc { .. } => CheckKind::LocalAssoc,
            CheckReport::Group { .. } => CheckKind::Group,
            CheckReport::Af { .. } => CheckKind::Af,
        }
    }

    pub fn ok(&self) -> bool {
        match self {
            CheckReport::Assoc { ok, .. }
            | CheckReport::LocalAssoc { ok, .. }
            | CheckReport::Group { ok, .. }
            | CheckReport::Af { ok, .. } => *ok,
        }
    }

    /// The replayable witness, present exactly when the verdict is false.
    pub fn witness(&self) -> Option<Witness> {
        if self.ok() {
            return None;
        }
        match self {
            CheckReport::Assoc { sets: [a, b, c], .. } => Some(Witness {
                description: format!(
                    "the two bracketings evaluate to {} and {}",
                    a.fuse(b).fuse(c),
                    a.fuse(&b.fuse(c))
                ),
                replay: vec![
                    format!("({a} + {b}) + {c}"),
                    format!("{a} + ({b} + {c})"),
                ],
            }),
            CheckReport::LocalAssoc { sets: [x, y, z], report, .. } => {
                let order = report
                    .first_failing_order()
                    .expect("a false verdict has a failing order");
                let (a, b, c) = order.arrange(x, y, z);
                Some(Witness {
                    description: format!("ordering {order} is not associative"),
                    replay: vec![format!("assoc({a}, {b}, {c})")],
                })
            }
            CheckReport::Group { context, .. } => {
                let defect = context
                    .failing_witness
                    .as_ref()
                    .expect("a false verdict has a defect");
                Some(match defect {
                    GroupDefect::MissingIdentity => Witness {
                        description: "the identity {} is not a member".into(),
                        replay: Vec::new(),
                    },
                    GroupDefect::AntisetEscapes { member } => Witness {
                        description: format!(
                            "anti({member}) = {} is not a member",
                            member.antiset()
                        ),
                        replay: vec![format!("anti({member})")],
                    },
                    GroupDefect::FusionEscapes { left, right } => Witness {
                        description: format!(
                            "{left} + {right} = {} is not a member",
                            left.fuse(right)
                        ),
                        replay: vec![format!("{left} + {right}")],
                    },
                    GroupDefect::NonAssociativeTriple { first, second, third } => Witness {
                        description: "a member triple is not locally associative".into(),
                        replay: vec![format!("localassoc({first}, {second}, {third})")],
                    },
                })
            }
            CheckReport::Af { witness, .. } => {
                let (x, y) = witness.as_ref().expect("a false verdict has a pair");
                Some(Witness {
                    description: format!("{x} meets antielements in {y}"),
                    replay: vec![format!("{x} & {y}")],
                })
            }
        }
    }
}

/// Evaluation state: the bindings accumulated so far.
#[derive(Debug, Clone, Default)]
pub struct Session {
    env: BTreeMap<String, SigmaSet>,
}

impl Session {
    pub fn new() -> Session {
        Session::default()
    }

    /// Current bindings, in name order.
    pub fn bindings(&self) -> impl Iterator<Item = (&str, &SigmaSet)> {
        self.env.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Evaluates an expression against the current bindings.
    pub fn eval_expr(&self, expr: &Expr) -> Result<SigmaSet, EvalError> {
        match expr {
            Expr::SetLit(atoms) => Ok(SigmaSet::from_atoms(atoms.iter().cloned())),
            Expr::Var(name) => self
                .env
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnboundVariable(name.clone())),
            Expr::Fuse(l, r) => Ok(self.eval_expr(l)?.fuse(&self.eval_expr(r)?)),
            Expr::StarDiff(l, r) => Ok(self.eval_expr(l)?.star_diff(&self.eval_expr(r)?)),
            Expr::HatIntersect(l, r) => {
                Ok(self.eval_expr(l)?.hat_intersect(&self.eval_expr(r)?))
            }
            Expr::Anti(inner) => Ok(self.eval_expr(inner)?.antiset()),
        }
    }

    /// Evaluates one statement, updating bindings on success.
    pub fn eval_statement(&mut self, statement: &Statement) -> Result<Outcome, EvalError> {
        match statement {
            Statement::Expr(expr) => Ok(Outcome::Value(self.eval_expr(expr)?)),
            Statement::Binding { name, expr } => {
                let value = self.eval_expr(expr)?;
                self.env.insert(name.clone(), value.clone());
                Ok(Outcome::Bound {
                    name: name.clone(),
                    value,
                })
            }
            Statement::Solve { var, lhs, rhs } => {
                Ok(Outcome::Solve(self.solve(var, lhs, rhs)?))
            }
            Statement::Check { kind, args } => Ok(Outcome::Check(self.check(*kind, args)?)),
        }
    }

    /// Validates the `fuse(a, X) = b` shape and dispatches the solver.
    /// The unknown must be a direct operand of the left side's outermost
    /// fusion, alone among at most one known operand; anything else
    /// cannot be reduced to the solved form without assuming
    /// associativity.
    fn solve(&self, var: &str, lhs: &Expr, rhs: &Expr) -> Result<SolveReport, EvalError> {
        let occurrences = count_var(lhs, var);
        if occurrences != 1 {
            return Err(EvalError::SolveVariableCount {
                var: var.to_owned(),
                count: occurrences,
            });
        }
        let operands = fusion_operands(lhs);
        let known: Vec<&Expr> = operands
            .iter()
            .copied()
            .filter(|op| !matches!(op, Expr::Var(name) if name == var))
            .collect();
        if known.len() == operands.len() {
            // The single occurrence is buried inside an operand.
            return Err(EvalError::SolveVariableNested {
                var: var.to_owned(),
            });
        }
        if known.len() > 1 {
            return Err(EvalError::SolveExtraOperands { count: known.len() });
        }
        if count_var(rhs, var) > 0 {
            return Err(EvalError::SolveVariableOnRight {
                var: var.to_owned(),
            });
        }
        let a = match known.first() {
            Some(expr) => self.eval_expr(expr)?,
            None => SigmaSet::empty(),
        };
        let b = self.eval_expr(rhs)?;
        let result = solve_fusion_equation(&a, &b)?;
        Ok(SolveReport {
            var: var.to_owned(),
            a,
            b,
            result,
        })
    }

    fn check(&self, kind: CheckKind, args: &[Expr]) -> Result<CheckReport, EvalError> {
        let sets = args
            .iter()
            .map(|arg| self.eval_expr(arg))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match kind {
            CheckKind::Assoc => {
                let [a, b, c]: [SigmaSet; 3] =
                    sets.try_into().expect("parser enforces three arguments");
                let ok = is_assoc_order(&a, &b, &c);
                CheckReport::Assoc {
                    residue: eval_chain(&a, &b, &c),
                    sets: [a, b, c],
                    ok,
                }
            }
            CheckKind::LocalAssoc => {
                let [x, y, z]: [SigmaSet; 3] =
                    sets.try_into().expect("parser enforces three arguments");
                let report = triad_system(&x, &y, &z);
                let ok = report.locally_associative;
                CheckReport::LocalAssoc {
                    sets: [x, y, z],
                    report,
                    ok,
                }
            }
            CheckKind::Group => {
                let context =
                    check_group(sets).expect("parser enforces at least one argument");
                let ok = context.is_group();
                CheckReport::Group { context, ok }
            }
            CheckKind::Af => {
                let ok = is_antielement_free_family(&sets);
                let witness = sets
                    .iter()
                    .flat_map(|x| sets.iter().map(move |y| (x, y)))
                    .find(|(x, y)| !x.hat_intersect(y).is_empty())
                    .map(|(x, y)| (x.clone(), y.clone()));
                CheckReport::Af {
                    members: sets,
                    witness,
                    ok,
                }
            }
        })
    }
}

impl fmt::Display for SolveReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.result.status {
            SolveStatus::Solved => {
                writeln!(f, "status: solved")?;
                write!(f, "{} = {}", self.var, self.result.candidate)
            }
            SolveStatus::NoSolution => {
                writeln!(f, "status: no solution")?;
                writeln!(f, "candidate: {}", self.result.candidate)?;
                write!(f, "residual: {}", self.result.residual)
            }
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "check: {}", self.kind())?;
        write!(f, "ok: {}", self.ok())?;
        match self {
            CheckReport::Assoc { residue, .. } => {
                write!(f, "\nresidue: {residue}")?;
            }
            CheckReport::LocalAssoc { report, .. } => {
                write!(f, "\ne_x: {}\ne_y: {}\ne_z: {}", report.e_x, report.e_y, report.e_z)?;
                let orders = TriadOrder::ALL
                    .into_iter()
                    .map(|order| {
                        let verdict = if report.per_order_verdicts[&order] {
                            "ok"
                        } else {
                            "fail"
                        };
                        format!("{order} {verdict}")
                    })
                    .collect::<Vec<_>>()
                    .join(", ");
                write!(f, "\norders: {orders}")?;
            }
            CheckReport::Group { context, .. } => {
                write!(f, "\nmembers: {}", context.members().len())?;
                write!(f, "\nhas_identity: {}", context.has_identity)?;
                write!(f, "\nclosed_under_antiset: {}", context.closed_under_antiset)?;
                write!(f, "\nclosed_under_fusion: {}", context.closed_under_fusion)?;
                write!(
                    f,
                    "\nall_triples_locally_associative: {}",
                    context.all_triples_locally_associative
                )?;
            }
            CheckReport::Af { .. } => {}
        }
        if let Some(witness) = self.witness() {
            write!(f, "\nwitness: {}", witness.description)?;
            for replay in &witness.replay {
                write!(f, "\nreplay: {replay}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Outcome {
    /// Stable key-value rendering; σ-set values print as literals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Value(value) => write!(f, "{value}"),
            Outcome::Bound { name, value } => write!(f, "{name} = {value}"),
            Outcome::Solve(report) => write!(f, "{report}"),
            Outcome::Check(report) => write!(f, "{report}"),
        }
    }
}

fn count_var(expr: &Expr, var: &str) -> usize {
    match expr {
        Expr::SetLit(_) => 0,
        Expr::Var(name) => usize::from(name == var),
        Expr::Fuse(l, r) | Expr::StarDiff(l, r) | Expr::HatIntersect(l, r) => {
            count_var(l, var) + count_var(r, var)
        }
        Expr::Anti(inner) => count_var(inner, var),
    }
}
