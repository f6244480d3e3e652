//! The expression language: statements over σ-set expressions.
//!
//! Scripts are sequences of statements terminated by newlines or `;`,
//! with `#` line comments. A statement binds a name, solves a fusion
//! equation for one unknown, runs a named check, or just evaluates an
//! expression. Operators, tightest first: `&` (hat intersection), `\`
//! (star difference), `+` (fusion, with `∪` as a synonym), all
//! left-associative. `anti(...)` is the antiset, `{a, b*}` a literal,
//! `{}` and `0` the empty set. The caret of an atom, `*`, is legal only
//! inside literals.
//!
//! Rendering is canonical: [`Statement`] and [`Expr`] display as source
//! text that parses back to the same tree, and σ-set values print as
//! literals that evaluate to the same set. Witnesses and JSON records
//! lean on that round trip.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

use crate::atom::Atom;

pub use eval::{CheckReport, EvalError, Outcome, Session, SolveReport, Witness};
pub use parser::parse;

/// One statement of the language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    /// `name = expr`
    Binding { name: String, expr: Expr },
    /// A bare expression.
    Expr(Expr),
    /// `solve var in lhs = rhs`
    Solve { var: String, lhs: Expr, rhs: Expr },
    /// `assoc(...)`, `localassoc(...)`, `group(...)`, or `af(...)`.
    Check { kind: CheckKind, args: Vec<Expr> },
}

/// The four named checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    Assoc,
    LocalAssoc,
    Group,
    Af,
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Assoc => "assoc",
            CheckKind::LocalAssoc => "localassoc",
            CheckKind::Group => "group",
            CheckKind::Af => "af",
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A σ-set expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// A literal `{a, b*}`. Atoms are kept as written; annihilation of
    /// `{x, x*}` happens at evaluation, not at parse time.
    SetLit(Vec<Atom>),
    Var(String),
    Fuse(Box<Expr>, Box<Expr>),
    HatIntersect(Box<Expr>, Box<Expr>),
    StarDiff(Box<Expr>, Box<Expr>),
    Anti(Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Fuse(..) => 1,
            Expr::StarDiff(..) => 2,
            Expr::HatIntersect(..) => 3,
            Expr::SetLit(_) | Expr::Var(_) | Expr::Anti(_) => 4,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let prec = self.precedence();
        let parens = prec < min;
        if parens {
            write!(f, "(")?;
        }
        match self {
            Expr::SetLit(atoms) => {
                write!(f, "{{")?;
                for (i, atom) in atoms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{atom}")?;
                }
                write!(f, "}}")?;
            }
            Expr::Var(name) => write!(f, "{name}")?,
            Expr::Anti(inner) => {
                write!(f, "anti(")?;
                inner.fmt_prec(f, 0)?;
                write!(f, ")")?;
            }
            Expr::Fuse(l, r) | Expr::StarDiff(l, r) | Expr::HatIntersect(l, r) => {
                let op = match self {
                    Expr::Fuse(..) => "+",
                    Expr::StarDiff(..) => "\\",
                    _ => "&",
                };
                // Left-associative: an equal-precedence right child needs
                // parentheses to re-parse into the same tree.
                l.fmt_prec(f, prec)?;
                write!(f, " {op} ")?;
                r.fmt_prec(f, prec + 1)?;
            }
        }
        if parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Binding { name, expr } => write!(f, "{name} = {expr}"),
            Statement::Expr(expr) => write!(f, "{expr}"),
            Statement::Solve { var, lhs, rhs } => write!(f, "solve {var} in {lhs} = {rhs}"),
            Statement::Check { kind, args } => {
                write!(f, "{kind}(")?;
                for (i, arg) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{arg}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// The operands of the outermost fusion chain: `a + b + c` yields
/// `[a, b, c]`, and a non-fusion expression is its own single operand.
pub fn fusion_operands(expr: &Expr) -> Vec<&Expr> {
    fn walk<'a>(expr: &'a Expr, out: &mut Vec<&'a Expr>) {
        match expr {
            Expr::Fuse(l, r) => {
                walk(l, out);
                out.push(r);
            }
            other => out.push(other),
        }
    }
    let mut out = Vec::new();
    walk(expr, &mut out);
    out
}

/// Syntax error with source position. `expected` lists the token kinds
/// that would have been accepted, when that set is known.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}: {}",
            self.line, self.column, self.message
        )
    }
}
