use std::collections::BTreeSet;
use std::fmt;

use super::{NodeId, State};

/// Update function of a node, as an expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BooleanExpr {
    Const(bool),
    Var(NodeId),
    Not(Box<BooleanExpr>),
    And(Vec<BooleanExpr>),
    Or(Vec<BooleanExpr>),
}

impl BooleanExpr {
    pub fn var(index: usize) -> BooleanExpr {
        BooleanExpr::Var(NodeId(index))
    }

    pub fn negate(inner: BooleanExpr) -> BooleanExpr {
        BooleanExpr::Not(Box::new(inner))
    }

    pub fn evaluate(&self, s: State) -> bool {
        match self {
            BooleanExpr::Const(v) => *v,
            BooleanExpr::Var(id) => s.get(*id),
            BooleanExpr::Not(e) => !e.evaluate(s),
            BooleanExpr::And(es) => es.iter().all(|e| e.evaluate(s)),
            BooleanExpr::Or(es) => es.iter().any(|e| e.evaluate(s)),
        }
    }

    /// Nodes the expression mentions syntactically.
    pub fn variables(&self) -> BTreeSet<NodeId> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<NodeId>) {
        match self {
            BooleanExpr::Const(_) => {}
            BooleanExpr::Var(id) => {
                out.insert(*id);
            }
            BooleanExpr::Not(e) => e.collect_variables(out),
            BooleanExpr::And(es) | BooleanExpr::Or(es) => {
                for e in es {
                    e.collect_variables(out);
                }
            }
        }
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> ExprDisplay<'a> {
        ExprDisplay { expr: self, names }
    }
}

/// Renders an expression in the model grammar, using node names.
pub struct ExprDisplay<'a> {
    expr: &'a BooleanExpr,
    names: &'a [String],
}

impl ExprDisplay<'_> {
    fn write(&self, f: &mut fmt::Formatter<'_>, e: &BooleanExpr) -> fmt::Result {
        match e {
            BooleanExpr::Const(v) => write!(f, "{}", *v as u8),
            BooleanExpr::Var(id) => f.write_str(&self.names[id.0]),
            BooleanExpr::Not(inner) => {
                f.write_str("!")?;
                self.child(
                    f,
                    inner,
                    matches!(**inner, BooleanExpr::And(_) | BooleanExpr::Or(_)),
                )
            }
            BooleanExpr::And(es) => self.join(f, es, " & ", |c| {
                matches!(c, BooleanExpr::And(_) | BooleanExpr::Or(_))
            }),
            BooleanExpr::Or(es) => self.join(f, es, " | ", |c| matches!(c, BooleanExpr::Or(_))),
        }
    }

    fn join(
        &self,
        f: &mut fmt::Formatter<'_>,
        es: &[BooleanExpr],
        sep: &str,
        needs_parens: impl Fn(&BooleanExpr) -> bool,
    ) -> fmt::Result {
        for (i, c) in es.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            self.child(f, c, needs_parens(c))?;
        }
        if es.is_empty() {
            // Empty AND is true, empty OR is false; neither is produced by the parser.
            return Err(fmt::Error);
        }
        Ok(())
    }

    fn child(&self, f: &mut fmt::Formatter<'_>, e: &BooleanExpr, parens: bool) -> fmt::Result {
        if parens {
            f.write_str("(")?;
            self.write(f, e)?;
            f.write_str(")")
        } else {
            self.write(f, e)
        }
    }
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.expr)
    }
}
