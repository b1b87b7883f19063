//! Recursive-descent parser for the ASCII formula syntax.
//!
//! Grammar, loosest to tightest binding (`->` is right-associative, a
//! quantifier's body extends maximally to the right):
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*
//! imp     := or ("->" imp)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "!" unary | ("forall"|"exists") VAR "." formula | "(" formula ")" | atom
//! atom    := IDENT | IDENT "(" term ("," term)* ")"
//! ```
//!
//! UTF-8 aliases `¬ ∧ ∨ → ↔ ∀ ∃` are accepted for `! & | -> <-> forall exists`.

use super::ast::{Formula, Term};
use super::vocab::{is_valid_ident, Vocabulary};
use super::FormulaError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Comma,
    Dot,
    Not,
    And,
    Or,
    Arrow,
    Iff,
    Forall,
    Exists,
    Ident(String),
    Eof,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::Comma => "`,`".into(),
            Token::Dot => "`.`".into(),
            Token::Not => "`!`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::Iff => "`<->`".into(),
            Token::Forall => "`forall`".into(),
            Token::Exists => "`exists`".into(),
            Token::Ident(name) => format!("`{name}`"),
            Token::Eof => "end of input".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Token, usize)>, FormulaError> {
    let mut tokens = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '(' => {
                chars.next();
                tokens.push((Token::LParen, pos));
            }
            ')' => {
                chars.next();
                tokens.push((Token::RParen, pos));
            }
            ',' => {
                chars.next();
                tokens.push((Token::Comma, pos));
            }
            '.' => {
                chars.next();
                tokens.push((Token::Dot, pos));
            }
            '!' | '¬' => {
                chars.next();
                tokens.push((Token::Not, pos));
            }
            '&' | '∧' => {
                chars.next();
                tokens.push((Token::And, pos));
            }
            '|' | '∨' => {
                chars.next();
                tokens.push((Token::Or, pos));
            }
            '→' => {
                chars.next();
                tokens.push((Token::Arrow, pos));
            }
            '↔' => {
                chars.next();
                tokens.push((Token::Iff, pos));
            }
            '∀' => {
                chars.next();
                tokens.push((Token::Forall, pos));
            }
            '∃' => {
                chars.next();
                tokens.push((Token::Exists, pos));
            }
            '-' => {
                chars.next();
                match chars.peek() {
                    Some(&(_, '>')) => {
                        chars.next();
                        tokens.push((Token::Arrow, pos));
                    }
                    _ => {
                        return Err(FormulaError::Syntax {
                            position: pos,
                            expected: "`->`".into(),
                            found: "`-`".into(),
                        })
                    }
                }
            }
            '<' => {
                chars.next();
                let ok = matches!(chars.peek(), Some(&(_, '-')));
                if ok {
                    chars.next();
                }
                if ok && matches!(chars.peek(), Some(&(_, '>'))) {
                    chars.next();
                    tokens.push((Token::Iff, pos));
                } else {
                    return Err(FormulaError::Syntax {
                        position: pos,
                        expected: "`<->`".into(),
                        found: "`<`".into(),
                    });
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = pos;
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let token = match name.as_str() {
                    "forall" => Token::Forall,
                    "exists" => Token::Exists,
                    _ => Token::Ident(name),
                };
                tokens.push((token, start));
            }
            other => {
                return Err(FormulaError::Syntax {
                    position: pos,
                    expected: "a formula token".into(),
                    found: format!("`{other}`"),
                })
            }
        }
    }
    tokens.push((Token::Eof, text.len()));
    Ok(tokens)
}

struct Parser<'a> {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    vocab: &'a Vocabulary,
    scope: Vec<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos].0
    }

    fn position(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].0.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, token: Token) -> Result<(), FormulaError> {
        if *self.peek() == token {
            self.bump();
            Ok(())
        } else {
            Err(self.syntax_error(&token.describe()))
        }
    }

    fn syntax_error(&self, expected: &str) -> FormulaError {
        FormulaError::Syntax {
            position: self.position(),
            expected: expected.into(),
            found: self.peek().describe(),
        }
    }

    fn formula(&mut self) -> Result<Formula, FormulaError> {
        self.iff()
    }

    fn iff(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.imp()?;
        while *self.peek() == Token::Iff {
            self.bump();
            let right = self.imp()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula, FormulaError> {
        let left = self.or()?;
        if *self.peek() == Token::Arrow {
            self.bump();
            let right = self.imp()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.and()?;
        while *self.peek() == Token::Or {
            self.bump();
            let right = self.and()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula, FormulaError> {
        let mut left = self.unary()?;
        while *self.peek() == Token::And {
            self.bump();
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, FormulaError> {
        match self.peek().clone() {
            Token::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::Forall | Token::Exists => self.quantifier(),
            Token::LParen => {
                self.bump();
                let inner = self.formula()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            Token::Ident(_) => self.atom(),
            _ => Err(self.syntax_error("a formula")),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, FormulaError> {
        let is_forall = matches!(self.peek(), Token::Forall);
        self.bump();
        let var = match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                name
            }
            _ => return Err(self.syntax_error("a variable name")),
        };
        if self.vocab.is_proposition(&var)
            || self.vocab.predicate(&var).is_some()
            || self.vocab.is_constant(&var)
        {
            return Err(FormulaError::ShadowsSymbol { name: var });
        }
        if self.scope.contains(&var) {
            return Err(FormulaError::RebindsVariable { name: var });
        }
        self.expect(Token::Dot)?;
        self.scope.push(var.clone());
        let body = self.formula()?;
        self.scope.pop();
        Ok(if is_forall {
            Formula::forall(var, body)
        } else {
            Formula::exists(var, body)
        })
    }

    fn atom(&mut self) -> Result<Formula, FormulaError> {
        let name = match self.bump() {
            Token::Ident(name) => name,
            _ => unreachable!("atom is entered on an identifier"),
        };
        if *self.peek() == Token::LParen {
            self.bump();
            let mut args = vec![self.term()?];
            while *self.peek() == Token::Comma {
                self.bump();
                args.push(self.term()?);
            }
            self.expect(Token::RParen)?;
            let pred = self
                .vocab
                .predicate(&name)
                .ok_or(FormulaError::UnknownSymbol { name: name.clone() })?;
            if pred.arity != args.len() {
                return Err(FormulaError::ArityMismatch {
                    name,
                    expected: pred.arity,
                    found: args.len(),
                });
            }
            Ok(Formula::Atom { name, args })
        } else if self.vocab.is_proposition(&name) {
            Ok(Formula::prop(name))
        } else if let Some(pred) = self.vocab.predicate(&name) {
            Err(FormulaError::ArityMismatch {
                name,
                expected: pred.arity,
                found: 0,
            })
        } else {
            Err(FormulaError::UnknownSymbol { name })
        }
    }

    fn term(&mut self) -> Result<Term, FormulaError> {
        match self.peek().clone() {
            Token::Ident(name) => {
                self.bump();
                if self.vocab.is_constant(&name) {
                    Ok(Term::Constant(name))
                } else if self.scope.contains(&name) {
                    Ok(Term::Variable(name))
                } else if is_valid_ident(&name) {
                    Err(FormulaError::UnboundVariable { name })
                } else {
                    Err(FormulaError::UnknownSymbol { name })
                }
            }
            _ => Err(self.syntax_error("a constant or variable")),
        }
    }
}

/// Parses `text` into a closed, vocabulary-checked formula.
pub fn parse(text: &str, vocab: &Vocabulary) -> Result<Formula, FormulaError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        vocab,
        scope: Vec::new(),
    };
    let formula = parser.formula()?;
    if *parser.peek() != Token::Eof {
        return Err(parser.syntax_error("end of input"));
    }
    super::eval::validate(&formula, vocab)?;
    Ok(formula)
}

#[cfg(test)]
mod tests {
    use super::super::vocab::Predicate;
    use super::*;
    use std::sync::Arc;

    fn rain_wet() -> Arc<Vocabulary> {
        Vocabulary::propositional(["rain", "wet"]).unwrap()
    }

    fn blames() -> Arc<Vocabulary> {
        Vocabulary::new(
            vec![],
            vec![Predicate {
                name: "blames".into(),
                arity: 2,
            }],
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    #[test]
    fn parses_implication() {
        let f = parse("rain -> wet", &rain_wet()).unwrap();
        assert_eq!(
            f,
            Formula::implies(Formula::prop("rain"), Formula::prop("wet"))
        );
    }

    #[test]
    fn negation_binds_tighter_than_and() {
        let f = parse("!rain & wet", &rain_wet()).unwrap();
        assert_eq!(
            f,
            Formula::and(Formula::not(Formula::prop("rain")), Formula::prop("wet"))
        );
    }

    #[test]
    fn parses_quantified_predicate() {
        let f = parse("forall x. blames(x,a)", &blames()).unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Formula::pred(
                    "blames",
                    [Term::Variable("x".into()), Term::Constant("a".into())]
                )
            )
        );
    }

    #[test]
    fn arity_mismatch_is_reported() {
        assert_eq!(
            parse("blames(a)", &blames()).unwrap_err(),
            FormulaError::ArityMismatch {
                name: "blames".into(),
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn unknown_symbol_and_unbound_variable() {
        assert_eq!(
            parse("snow", &rain_wet()).unwrap_err(),
            FormulaError::UnknownSymbol {
                name: "snow".into()
            }
        );
        assert_eq!(
            parse("blames(x,a)", &blames()).unwrap_err(),
            FormulaError::UnboundVariable { name: "x".into() }
        );
    }

    #[test]
    fn quantifier_body_extends_maximally_right() {
        let v = Vocabulary::new(
            vec!["q".into()],
            vec![Predicate {
                name: "p".into(),
                arity: 1,
            }],
            vec!["a".into()],
        )
        .unwrap();
        let f = parse("forall x. p(x) & q", &v).unwrap();
        assert_eq!(
            f,
            Formula::forall(
                "x",
                Formula::and(
                    Formula::pred("p", [Term::Variable("x".into())]),
                    Formula::prop("q")
                )
            )
        );
    }

    #[test]
    fn utf8_aliases_accepted() {
        let f = parse("¬rain ∧ wet", &rain_wet()).unwrap();
        assert_eq!(f, parse("!rain & wet", &rain_wet()).unwrap());
        let g = parse("∀x. blames(x,a)", &blames()).unwrap();
        assert_eq!(g, parse("forall x. blames(x,a)", &blames()).unwrap());
    }

    #[test]
    fn syntax_error_carries_position() {
        match parse("rain ->", &rain_wet()).unwrap_err() {
            FormulaError::Syntax { position, .. } => assert_eq!(position, 7),
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn iff_chains_left() {
        let v = Vocabulary::propositional(["a", "b", "c"]).unwrap();
        let f = parse("a <-> b <-> c", &v).unwrap();
        assert_eq!(
            f,
            Formula::iff(
                Formula::iff(Formula::prop("a"), Formula::prop("b")),
                Formula::prop("c")
            )
        );
    }
}
