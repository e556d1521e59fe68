use std::collections::HashMap;

use super::{BooleanExpr, BooleanNetwork, NodeId};
use crate::{Error, Result};

/// Parses a model file.
///
/// Two layouts are accepted. The native one has one `name = expr` definition
/// per line. The BoolNet layout starts with a `targets, factors` header and
/// continues with `name, expr` lines. In both, `#` starts a comment and blank
/// lines are skipped. Expressions use `!`, `&`, `|`, parentheses and the
/// constants `0` and `1`.
pub fn parse_network(text: &str) -> Result<BooleanNetwork> {
    let mut definitions = Vec::new();
    let mut boolnet = false;
    let mut first = true;
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        if first {
            first = false;
            if is_boolnet_header(line) {
                boolnet = true;
                continue;
            }
        }
        let separator = if boolnet { ',' } else { '=' };
        let Some(split) = line.find(separator) else {
            return Err(Error::Syntax {
                line: line_no,
                column: line.len() + 1,
                message: format!("expected `{separator}` after the node name"),
            });
        };
        let lhs = &line[..split];
        let name = lhs.trim();
        let name_column = lhs.len() - lhs.trim_start().len() + 1;
        if !is_identifier(name) {
            return Err(Error::Syntax {
                line: line_no,
                column: name_column,
                message: format!("`{name}` is not a valid node name"),
            });
        }
        definitions.push(Definition {
            line: line_no,
            name: name.to_string(),
            body: &line[split + 1..],
            body_offset: split + 1,
        });
    }

    let mut index = HashMap::new();
    for (i, d) in definitions.iter().enumerate() {
        if index.insert(d.name.clone(), NodeId(i)).is_some() {
            return Err(Error::DuplicateNode {
                name: d.name.clone(),
                line: d.line,
            });
        }
    }
    if definitions.is_empty() {
        return Err(Error::EmptyNetwork);
    }

    let mut functions = Vec::with_capacity(definitions.len());
    for d in &definitions {
        let tokens = tokenize(d.body, d.line, d.body_offset)?;
        let mut parser = ExprParser {
            tokens: &tokens,
            pos: 0,
            line: d.line,
            end_column: d.body_offset + d.body.len() + 1,
            index: &index,
        };
        let expr = parser.or()?;
        if let Some(t) = parser.peek() {
            return Err(Error::Syntax {
                line: d.line,
                column: t.column,
                message: format!("unexpected `{}`", t.kind),
            });
        }
        functions.push(expr);
    }
    let names = definitions.into_iter().map(|d| d.name).collect();
    BooleanNetwork::new(names, functions)
}

struct Definition<'a> {
    line: usize,
    name: String,
    body: &'a str,
    body_offset: usize,
}

fn is_boolnet_header(line: &str) -> bool {
    let mut parts = line.split(',').map(|p| p.trim().to_ascii_lowercase());
    parts.next().as_deref() == Some("targets")
        && parts.next().as_deref() == Some("factors")
        && parts.next().is_none()
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Ident(String),
    Const(bool),
    Not,
    And,
    Or,
    Open,
    Close,
}

impl std::fmt::Display for TokenKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TokenKind::Ident(s) => f.write_str(s),
            TokenKind::Const(v) => write!(f, "{}", *v as u8),
            TokenKind::Not => f.write_str("!"),
            TokenKind::And => f.write_str("&"),
            TokenKind::Or => f.write_str("|"),
            TokenKind::Open => f.write_str("("),
            TokenKind::Close => f.write_str(")"),
        }
    }
}

#[derive(Debug)]
struct Token {
    kind: TokenKind,
    column: usize,
}

fn tokenize(body: &str, line: usize, offset: usize) -> Result<Vec<Token>> {
    let bytes = body.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let column = offset + i + 1;
        let simple = match c {
            '!' => Some(TokenKind::Not),
            '&' => Some(TokenKind::And),
            '|' => Some(TokenKind::Or),
            '(' => Some(TokenKind::Open),
            ')' => Some(TokenKind::Close),
            _ => None,
        };
        if let Some(kind) = simple {
            tokens.push(Token { kind, column });
            i += 1;
        } else if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_alphanumeric() || c == '_' {
            let start = i;
            while i < bytes.len()
                && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
            {
                i += 1;
            }
            let word = &body[start..i];
            let kind = match word {
                "0" => TokenKind::Const(false),
                "1" => TokenKind::Const(true),
                w if is_identifier(w) => TokenKind::Ident(w.to_string()),
                w => {
                    return Err(Error::Syntax {
                        line,
                        column,
                        message: format!("`{w}` is neither a constant nor an identifier"),
                    })
                }
            };
            tokens.push(Token { kind, column });
        } else {
            let ch = body[i..].chars().next().unwrap_or(c);
            return Err(Error::Syntax {
                line,
                column,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    Ok(tokens)
}

struct ExprParser<'a> {
    tokens: &'a [Token],
    pos: usize,
    line: usize,
    end_column: usize,
    index: &'a HashMap<String, NodeId>,
}

impl ExprParser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, kind: &TokenKind) -> bool {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<BooleanExpr> {
        let mut items = vec![self.and()?];
        while self.eat(&TokenKind::Or) {
            items.push(self.and()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            BooleanExpr::Or(items)
        })
    }

    fn and(&mut self) -> Result<BooleanExpr> {
        let mut items = vec![self.unary()?];
        while self.eat(&TokenKind::And) {
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            BooleanExpr::And(items)
        })
    }

    fn unary(&mut self) -> Result<BooleanExpr> {
        if self.eat(&TokenKind::Not) {
            return Ok(BooleanExpr::negate(self.unary()?));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<BooleanExpr> {
        let Some(token) = self.tokens.get(self.pos) else {
            return Err(Error::Syntax {
                line: self.line,
                column: self.end_column,
                message: "unexpected end of expression".into(),
            });
        };
        self.pos += 1;
        match &token.kind {
            TokenKind::Const(v) => Ok(BooleanExpr::Const(*v)),
            TokenKind::Ident(name) => match self.index.get(name) {
                Some(id) => Ok(BooleanExpr::Var(*id)),
                None => Err(Error::UndeclaredVariable {
                    name: name.clone(),
                    line: self.line,
                    column: token.column,
                }),
            },
            TokenKind::Open => {
                let inner = self.or()?;
                if !self.eat(&TokenKind::Close) {
                    let column = self.peek().map_or(self.end_column, |t| t.column);
                    return Err(Error::Syntax {
                        line: self.line,
                        column,
                        message: "expected `)`".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::Syntax {
                line: self.line,
                column: token.column,
                message: format!("unexpected `{other}`"),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::State;

    #[test]
    fn example_network() {
        let g = parse_network("x1 = x2\nx2 = x1\nx3 = x2 & x3").unwrap();
        assert_eq!(g.names(), ["x1", "x2", "x3"]);
        assert_eq!(g.function(NodeId(0)), &BooleanExpr::var(1));
        assert_eq!(
            g.function(NodeId(2)),
            &BooleanExpr::And(vec![BooleanExpr::var(1), BooleanExpr::var(2)])
        );
    }

    #[test]
    fn constant_network() {
        let g = parse_network("a = 1").unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g.function(NodeId(0)), &BooleanExpr::Const(true));
    }

    #[test]
    fn undeclared_variable() {
        let err = parse_network("a = b").unwrap_err();
        assert_eq!(
            err,
            Error::UndeclaredVariable {
                name: "b".into(),
                line: 1,
                column: 5
            }
        );
    }

    #[test]
    fn duplicate_definition() {
        let err = parse_network("a = 1\n# again\na = 0\n").unwrap_err();
        assert_eq!(
            err,
            Error::DuplicateNode {
                name: "a".into(),
                line: 3
            }
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_network("a = a &\n").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (1, 8)),
            e => panic!("unexpected {e:?}"),
        }
        match parse_network("a = 1\nb = (a | 1\n").unwrap_err() {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        match parse_network("a = a $ a").unwrap_err() {
            Error::Syntax { column, .. } => assert_eq!(column, 7),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(parse_network("a b"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_network("2a = 1"), Err(Error::Syntax { .. })));
        assert_eq!(parse_network("# nothing\n\n"), Err(Error::EmptyNetwork));
    }

    #[test]
    fn precedence() {
        let g = parse_network("a = !a | a & 0").unwrap();
        let expected = BooleanExpr::Or(vec![
            BooleanExpr::negate(BooleanExpr::var(0)),
            BooleanExpr::And(vec![BooleanExpr::var(0), BooleanExpr::Const(false)]),
        ]);
        assert_eq!(g.function(NodeId(0)), &expected);
    }

    #[test]
    fn boolnet_layout() {
        let text = "targets, factors\nx1, x2\nx2, x1\nx3, x2 & x3\n";
        let native = parse_network("x1 = x2\nx2 = x1\nx3 = x2 & x3").unwrap();
        assert_eq!(parse_network(text).unwrap(), native);
    }

    #[test]
    fn forward_references_and_comments() {
        let g = parse_network("# header\na = b # trailing\n\nb = !a\n").unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.function(NodeId(0)).evaluate(State::parse("01").unwrap()));
    }

    #[test]
    fn print_then_parse() {
        let g = parse_network("a = !(a & b) | (b | c) & !c\nb = ((a))\nc = 0 | 1 & a").unwrap();
        assert_eq!(parse_network(&g.to_string()).unwrap(), g);
    }
}
