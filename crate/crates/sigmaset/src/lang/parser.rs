//! Recursive-descent parser for statements and expressions.

use crate::atom::{Atom, Polarity};

use super::lexer::{lex, Kw, Token, Tok};
use super::{CheckKind, Expr, ParseError, Statement};

/// Parses a whole source text into statements. Statements end at
/// newlines or `;`; blank statements are skipped.
pub fn parse(source: &str) -> Result<Vec<Statement>, ParseError> {
    let tokens = lex(source)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: end_position(source),
    };
    parser.program()
}

/// Line and column just past the end of the source, for errors at EOF.
fn end_position(source: &str) -> (usize, usize) {
    let line = source.chars().filter(|&c| c == '\n').count() + 1;
    let column = source
        .rsplit_once('\n')
        .map_or(source, |(_, tail)| tail)
        .chars()
        .count()
        + 1;
    (line, column)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.tokens.get(self.pos + 1).map(|t| &t.tok)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.column))
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".into(), Tok::describe)
    }

    fn err_expected(&self, expected: &[&str]) -> ParseError {
        let (line, column) = self.here();
        ParseError {
            line,
            column,
            message: format!("expected {}, found {}", expected.join(" or "), self.found()),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn err_here(&self, message: String) -> ParseError {
        let (line, column) = self.here();
        ParseError {
            line,
            column,
            message,
            expected: Vec::new(),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.err_expected(&[name]))
        }
    }

    fn skip_terminators(&mut self) {
        while self.eat(&Tok::Term) {}
    }

    fn program(&mut self) -> Result<Vec<Statement>, ParseError> {
        let mut statements = Vec::new();
        loop {
            self.skip_terminators();
            if self.peek().is_none() {
                return Ok(statements);
            }
            statements.push(self.statement()?);
            match self.peek() {
                None | Some(Tok::Term) => {}
                Some(_) => return Err(self.err_expected(&["end of statement"])),
            }
        }
    }

    fn statement(&mut self) -> Result<Statement, ParseError> {
        // A keyword in binding position is the most common slip; give it
        // a dedicated message instead of a generic expectation list.
        if let Some(Tok::Kw(kw)) = self.peek() {
            if self.peek2() == Some(&Tok::Eq) {
                let kw = *kw;
                return Err(
                    self.err_here(format!("cannot bind reserved word `{}`", kw.as_str()))
                );
            }
        }
        match self.peek() {
            Some(Tok::Kw(Kw::Solve)) => self.solve_statement(),
            Some(Tok::Kw(Kw::Assoc)) => self.check_statement(CheckKind::Assoc),
            Some(Tok::Kw(Kw::LocalAssoc)) => self.check_statement(CheckKind::LocalAssoc),
            Some(Tok::Kw(Kw::Group)) => self.check_statement(CheckKind::Group),
            Some(Tok::Kw(Kw::Af)) => self.check_statement(CheckKind::Af),
            Some(Tok::Word { ident_like: true, .. }) if self.peek2() == Some(&Tok::Eq) => {
                let name = match self.bump().map(|t| t.tok) {
                    Some(Tok::Word { text, .. }) => text,
                    _ => unreachable!("peeked an identifier"),
                };
                self.bump();
                let expr = self.expr()?;
                Ok(Statement::Binding { name, expr })
            }
            _ => Ok(Statement::Expr(self.expr()?)),
        }
    }

    fn solve_statement(&mut self) -> Result<Statement, ParseError> {
        self.bump();
        let var = match self.peek() {
            Some(Tok::Word { ident_like: true, .. }) => match self.bump().map(|t| t.tok) {
                Some(Tok::Word { text, .. }) => text,
                _ => unreachable!("peeked an identifier"),
            },
            _ => return Err(self.err_expected(&["a variable name"])),
        };
        self.expect(Tok::Kw(Kw::In), "`in`")?;
        let lhs = self.expr()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.expr()?;
        Ok(Statement::Solve { var, lhs, rhs })
    }

    fn check_statement(&mut self, kind: CheckKind) -> Result<Statement, ParseError> {
        self.bump();
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.expr()?];
        while self.eat(&Tok::Comma) {
            args.push(self.expr()?);
        }
        self.expect(Tok::RParen, "`)`")?;
        if matches!(kind, CheckKind::Assoc | CheckKind::LocalAssoc) && args.len() != 3 {
            return Err(self.err_here(format!(
                "{kind} takes exactly 3 arguments, found {}",
                args.len()
            )));
        }
        Ok(Statement::Check { kind, args })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.diff()?;
        while self.eat(&Tok::Plus) {
            let rhs = self.diff()?;
            lhs = Expr::Fuse(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn diff(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.hat()?;
        while self.eat(&Tok::Backslash) {
            let rhs = self.hat()?;
            lhs = Expr::StarDiff(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn hat(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Expr::HatIntersect(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat(&Tok::Kw(Kw::Anti)) {
            self.expect(Tok::LParen, "`(`")?;
            let inner = self.expr()?;
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Expr::Anti(Box::new(inner)));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Word { text, ident_like }) => {
                let expr = if *ident_like {
                    Expr::Var(text.clone())
                } else if text == "0" {
                    Expr::SetLit(Vec::new())
                } else {
                    return Err(self.err_expected(&[
                        "a set literal",
                        "a variable",
                        "`(`",
                        "`anti`",
                    ]));
                };
                self.bump();
                Ok(expr)
            }
            Some(Tok::LBrace) => self.set_literal(),
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => Err(self.err_expected(&["a set literal", "a variable", "`(`", "`anti`"])),
        }
    }

    fn set_literal(&mut self) -> Result<Expr, ParseError> {
        self.expect(Tok::LBrace, "`{`")?;
        let mut atoms = Vec::new();
        if !self.eat(&Tok::RBrace) {
            loop {
                atoms.push(self.atom()?);
                if !self.eat(&Tok::Comma) {
                    break;
                }
            }
            self.expect(Tok::RBrace, "`}` or `,`")?;
        }
        Ok(Expr::SetLit(atoms))
    }

    fn atom(&mut self) -> Result<Atom, ParseError> {
        let base = match self.peek() {
            Some(Tok::Word { text, .. }) => text.clone(),
            // Inside a literal nothing but atoms can occur, so reserved
            // words are plain symbols here; this keeps every set
            // printable and re-parseable.
            Some(Tok::Kw(kw)) => kw.as_str().to_owned(),
            _ => return Err(self.err_expected(&["an atom"])),
        };
        self.bump();
        let polarity = if self.eat(&Tok::Star) {
            Polarity::Anti
        } else {
            Polarity::Plain
        };
        Atom::new(base, polarity).map_err(|err| self.err_here(err.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_one(source: &str) -> Statement {
        let mut statements = parse(source).unwrap();
        assert_eq!(statements.len(), 1, "expected one statement");
        statements.pop().unwrap()
    }

    fn parse_expr(source: &str) -> Expr {
        match parse_one(source) {
            Statement::Expr(expr) => expr,
            other => panic!("expected an expression, got {other:?}"),
        }
    }

    #[test]
    fn literals_variables_and_anti() {
        let expr = parse_expr("{1, 2} + anti({1, 2})");
        match &expr {
            Expr::Fuse(l, r) => {
                assert!(matches!(**l, Expr::SetLit(ref atoms) if atoms.len() == 2));
                assert!(matches!(**r, Expr::Anti(_)));
            }
            other => panic!("unexpected tree {other:?}"),
        }
        assert_eq!(parse_expr("0"), Expr::SetLit(Vec::new()));
        assert_eq!(parse_expr("{}"), Expr::SetLit(Vec::new()));
        assert_eq!(parse_expr("A"), Expr::Var("A".into()));
    }

    #[test]
    fn fusion_chains_nest_left() {
        let expr = parse_expr("A + B + C");
        assert_eq!(
            expr.to_string(),
            "A + B + C",
            "round trip keeps the flat rendering"
        );
        match expr {
            Expr::Fuse(l, _) => assert!(matches!(*l, Expr::Fuse(..))),
            other => panic!("expected fusion, got {other:?}"),
        }
    }

    #[test]
    fn precedence_hat_diff_fuse() {
        // & binds tighter than \ binds tighter than +.
        let expr = parse_expr("A + B \\ C & D");
        assert_eq!(expr.to_string(), "A + B \\ C & D");
        match expr {
            Expr::Fuse(_, r) => match *r {
                Expr::StarDiff(_, r) => assert!(matches!(*r, Expr::HatIntersect(..))),
                other => panic!("expected star diff, got {other:?}"),
            },
            other => panic!("expected fusion, got {other:?}"),
        }
        assert_eq!(parse_expr("(A + B) & C").to_string(), "(A + B) & C");
    }

    #[test]
    fn union_sign_is_a_fusion_synonym() {
        assert_eq!(parse_expr("A ∪ B"), parse_expr("A + B"));
    }

    #[test]
    fn statements_split_on_terminators() {
        let statements = parse("A = {1}\nB = {2}; A + B\n# comment only\n").unwrap();
        assert_eq!(statements.len(), 3);
        assert_eq!(statements[2].to_string(), "A + B");
    }

    #[test]
    fn solve_statement_shape() {
        let stmt = parse_one("solve X in A + X = B");
        assert_eq!(
            stmt,
            Statement::Solve {
                var: "X".into(),
                lhs: Expr::Fuse(
                    Box::new(Expr::Var("A".into())),
                    Box::new(Expr::Var("X".into()))
                ),
                rhs: Expr::Var("B".into()),
            }
        );
        assert_eq!(stmt.to_string(), "solve X in A + X = B");
    }

    #[test]
    fn check_statements_and_arity() {
        assert_eq!(
            parse_one("assoc({1}, {2}, {3})").to_string(),
            "assoc({1}, {2}, {3})"
        );
        assert!(matches!(
            parse_one("group({}, {1})"),
            Statement::Check { kind: CheckKind::Group, ref args } if args.len() == 2
        ));
        let err = parse("localassoc({1}, {2})").unwrap_err();
        assert!(err.message.contains("exactly 3"));
        assert!(parse("af()").is_err(), "checks need at least one argument");
    }

    #[test]
    fn reserved_words_cannot_be_bound_but_are_atoms() {
        let err = parse("anti = {1}").unwrap_err();
        assert!(err.message.contains("reserved word `anti`"));
        let err = parse("solve = {1}").unwrap_err();
        assert!(err.message.contains("reserved word `solve`"));
        // Inside a literal they are ordinary symbols.
        assert_eq!(parse_expr("{anti, af*}").to_string(), "{anti, af*}");
    }

    #[test]
    fn star_is_only_legal_inside_literals() {
        let err = parse("A* + B").unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        assert!(parse("{a}*").is_err());
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let err = parse("A = {1, }").unwrap_err();
        assert_eq!((err.line, err.column), (1, 9));
        assert_eq!(err.expected, vec!["an atom"]);

        let err = parse("B = ({1} + {2}").unwrap_err();
        assert!(err.expected.contains(&"`)`".to_string()));

        let err = parse("A =\n{1}").unwrap_err();
        assert_eq!(err.line, 1, "newline ends the statement mid-expression");
    }

    #[test]
    fn digit_words_are_atoms_not_expressions() {
        assert!(parse("{1m, 2m}").is_ok());
        let err = parse("12 + {1}").unwrap_err();
        assert!(err.message.contains("`12`"));
    }
}
