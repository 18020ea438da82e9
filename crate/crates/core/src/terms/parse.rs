use std::collections::BTreeSet;

use super::{natural_cmp, Identity, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    Plus,
    Star,
    LParen,
    RParen,
    Eq,
    End,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

fn syntax(column: usize, message: impl Into<String>) -> TermError {
    TermError::Syntax { column, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, TermError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => {}
            '+' => out.push((Tok::Plus, col)),
            '*' => out.push((Tok::Star, col)),
            '(' => out.push((Tok::LParen, col)),
            ')' => out.push((Tok::RParen, col)),
            '=' => out.push((Tok::Eq, col)),
            'a'..='z' => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_lowercase() || chars[i + 1].is_ascii_digit()) {
                    i += 1;
                }
                out.push((Tok::Var(chars[start..=i].iter().collect()), col));
            }
            other => return Err(syntax(col, format!("unexpected character {other:?}"))),
        }
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// Parsed tree before variables are numbered.
enum Raw {
    Var(String),
    Product(Vec<Raw>),
    Sum(Vec<Raw>),
}

impl Lexer {
    fn peek(&self) -> &(Tok, usize) {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        self.pos += 1;
        t
    }

    fn sum(&mut self) -> Result<Raw, TermError> {
        let mut parts = vec![self.product()?];
        while self.peek().0 == Tok::Plus {
            self.bump();
            parts.push(self.product()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Raw::Sum(parts) })
    }

    fn product(&mut self) -> Result<Raw, TermError> {
        let mut parts = vec![self.atom()?];
        while self.peek().0 == Tok::Star {
            self.bump();
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Raw::Product(parts) })
    }

    fn atom(&mut self) -> Result<Raw, TermError> {
        match self.bump() {
            (Tok::Var(name), _) => {
                if let (Tok::Var(_) | Tok::LParen, col) = self.peek() {
                    return Err(syntax(*col, "expected an operator; juxtaposition is not multiplication"));
                }
                Ok(Raw::Var(name))
            }
            (Tok::LParen, _) => {
                let inner = self.sum()?;
                match self.bump() {
                    (Tok::RParen, _) => {
                        if let (Tok::Var(_) | Tok::LParen, col) = self.peek() {
                            return Err(syntax(*col, "expected an operator; juxtaposition is not multiplication"));
                        }
                        Ok(inner)
                    }
                    (_, col) => Err(syntax(col, "expected `)`")),
                }
            }
            (Tok::End, col) => Err(syntax(col, "unexpected end of input, expected a term")),
            (t, col) => Err(syntax(col, format!("expected a variable or `(`, found {}", describe(&t)))),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::Var(_) => "a variable",
        Tok::Plus => "`+`",
        Tok::Star => "`*`",
        Tok::LParen => "`(`",
        Tok::RParen => "`)`",
        Tok::Eq => "`=`",
        Tok::End => "end of input",
    }
}

fn names(r: &Raw, out: &mut BTreeSet<String>) {
    match r {
        Raw::Var(n) => {
            out.insert(n.clone());
        }
        Raw::Product(ts) | Raw::Sum(ts) => ts.iter().for_each(|t| names(t, out)),
    }
}

fn number(r: Raw, vars: &[String]) -> Term {
    match r {
        Raw::Var(n) => Term::Var(vars.iter().position(|v| *v == n).expect("collected")),
        Raw::Product(ts) => Term::Product(ts.into_iter().map(|t| number(t, vars)).collect()),
        Raw::Sum(ts) => Term::Sum(ts.into_iter().map(|t| number(t, vars)).collect()),
    }
}

/// Parses `sum = sum`, where sums are `+`-separated products of `*`-joined
/// variables or parenthesized sums.
pub fn parse_identity(text: &str) -> Result<Identity, TermError> {
    let mut lx = Lexer { toks: lex(text)?, pos: 0 };
    let lhs = lx.sum()?;
    match lx.bump() {
        (Tok::Eq, _) => {}
        (t, col) => return Err(syntax(col, format!("expected `=`, found {}", describe(&t)))),
    }
    let rhs = lx.sum()?;
    match lx.bump() {
        (Tok::End, _) => {}
        (t, col) => return Err(syntax(col, format!("expected end of input, found {}", describe(&t)))),
    }
    let mut set = BTreeSet::new();
    names(&lhs, &mut set);
    names(&rhs, &mut set);
    let mut variables: Vec<String> = set.into_iter().collect();
    variables.sort_by(|a, b| natural_cmp(a, b));
    Ok(Identity {
        lhs: number(lhs, &variables).normalized(),
        rhs: number(rhs, &variables).normalized(),
        variables,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle_identity() {
        let id = parse_identity("x1*x2*x3 + x3*x4*x5 + x5*x6*x1 = (x1+x4)*(x2+x5)*(x3+x6)").unwrap();
        assert_eq!(id.variables, vec!["x1", "x2", "x3", "x4", "x5", "x6"]);
        match &id.lhs {
            Term::Sum(ts) => {
                assert_eq!(ts.len(), 3);
                assert_eq!(ts[0], Term::Product(vec![Term::Var(0), Term::Var(1), Term::Var(2)]));
            }
            other => panic!("lhs should be a sum, got {other:?}"),
        }
        assert!(matches!(&id.rhs, Term::Product(ts) if ts.len() == 3));
        assert_eq!(id.to_string(), "x1*x2*x3 + x3*x4*x5 + x5*x6*x1 = (x1 + x4)*(x2 + x5)*(x3 + x6)");
    }

    #[test]
    fn parses_four_letter_identity() {
        let id = parse_identity("x1*x2*x3*x4 = y1*y2*y3*y4").unwrap();
        assert_eq!(id.var_count(), 8);
        assert_eq!(id.variables[4], "y1");
    }

    #[test]
    fn flattening() {
        let id = parse_identity("(x + (y + z)) = ((x*y)*z)").unwrap();
        assert_eq!(id.lhs, Term::Sum(vec![Term::Var(0), Term::Var(1), Term::Var(2)]));
        assert_eq!(id.rhs, Term::Product(vec![Term::Var(0), Term::Var(1), Term::Var(2)]));
        let single = parse_identity("((x)) = x").unwrap();
        assert_eq!(single.lhs, Term::Var(0));
    }

    #[test]
    fn syntax_errors_carry_columns() {
        match parse_identity("x1 + = x2") {
            Err(TermError::Syntax { column, .. }) => assert_eq!(column, 6),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_identity("x y = x"), Err(TermError::Syntax { column: 3, .. })));
        assert!(matches!(parse_identity("x = y = z"), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_identity("(x = y"), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_identity("X = y"), Err(TermError::Syntax { column: 1, .. })));
        assert!(matches!(parse_identity("x ="), Err(TermError::Syntax { .. })));
        assert!(matches!(parse_identity("1x = y"), Err(TermError::Syntax { .. })));
    }
}
