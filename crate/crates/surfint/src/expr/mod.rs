//! Parsed scalar expressions with exact second-order derivatives.
//!
//! An [`Expression`] is a closed-form formula in a fixed list of named
//! variables, e.g. `"sin(u)*cos(v)"` in `["u", "v"]`. Evaluation produces a
//! [`Jet2`]: the value together with the full gradient and Hessian at the
//! point, computed by forward-mode automatic differentiation rather than
//! finite differences, so derivatives are exact to rounding.
//!
//! Supported syntax: `+ - * /`, unary minus, integer powers (`r^2`,
//! `x^-3`), parentheses, the functions `sin cos tan exp log sqrt atan`, and
//! decimal literals (including scientific notation). See the crate README
//! for the full grammar.

mod ast;
mod jet;
mod parser;

pub use ast::{Ast, Func};
pub use jet::Jet2;

use std::fmt;
use thiserror::Error;

/// Parse- or evaluation-time failure for an [`Expression`].
///
/// Positions are zero-based byte offsets into the source string; messages
/// report them as one-based columns (expressions are ASCII in practice).
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ExprError {
    #[error("unexpected character '{ch}' at column {}", pos + 1)]
    UnexpectedChar { pos: usize, ch: char },
    #[error("invalid number '{text}' at column {}", pos + 1)]
    InvalidNumber { pos: usize, text: String },
    #[error("unexpected {found} at column {}: expected {expected}", pos + 1)]
    UnexpectedToken {
        pos: usize,
        found: String,
        expected: &'static str,
    },
    #[error("expression ends at column {}: expected {expected}", pos + 1)]
    UnexpectedEnd { pos: usize, expected: &'static str },
    #[error("unclosed '(' opened at column {}", pos + 1)]
    UnclosedParen { pos: usize },
    #[error("unknown function '{name}' at column {} (supported: sin, cos, tan, exp, log, sqrt, atan)", pos + 1)]
    UnknownFunction { pos: usize, name: String },
    #[error("unknown variable '{name}' at column {} (available: {available})", pos + 1)]
    UnknownVariable {
        pos: usize,
        name: String,
        available: String,
    },
    #[error("function '{name}' takes exactly one argument (',' at column {})", pos + 1)]
    FunctionArity { pos: usize, name: String },
    #[error("exponent at column {} must be an integer literal, e.g. ^2 or ^-3", pos + 1)]
    ExponentNotInteger { pos: usize },
    #[error("expression is empty")]
    EmptyInput,
    #[error("cannot evaluate '{subexpr}' at the requested point: {reason}")]
    Domain {
        /// Operator or function that failed (`/`, `^`, `log`, `sqrt`).
        op: &'static str,
        reason: &'static str,
        /// Pretty-printed offending subexpression.
        subexpr: String,
    },
}

/// A parsed formula over a fixed, ordered set of variables.
///
/// ```
/// use surfint::expr::Expression;
///
/// let f = Expression::parse("u^2*v + sin(v)", &["u", "v"]).unwrap();
/// let jet = f.eval_jet2(&[2.0, 0.0]).unwrap();
/// assert_eq!(jet.value(), 0.0);
/// assert_eq!(jet.grad(0), 0.0);      // ∂f/∂u = 2uv
/// assert_eq!(jet.grad(1), 5.0);      // ∂f/∂v = u² + cos(v)
/// assert_eq!(jet.hess(0, 1), 4.0);   // ∂²f/∂u∂v = 2u
/// ```
#[derive(Debug, Clone)]
pub struct Expression {
    source: String,
    ast: Ast,
    vars: Vec<String>,
}

impl Expression {
    /// Parses `source` with the given variable names (their order fixes the
    /// argument order of [`eval_jet2`](Self::eval_jet2)).
    pub fn parse(source: &str, vars: &[&str]) -> Result<Expression, ExprError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let ast = parser::parse(source, &vars)?;
        Ok(Expression {
            source: source.to_string(),
            ast,
            vars,
        })
    }

    /// The original source text as given to [`parse`](Self::parse).
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Variable names, in argument order.
    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    /// Evaluates the expression and its first and second derivatives at the
    /// given point. `values` must match [`variables`](Self::variables) in
    /// length and order.
    pub fn eval_jet2(&self, values: &[f64]) -> Result<Jet2, ExprError> {
        assert_eq!(
            values.len(),
            self.vars.len(),
            "expression in {:?} evaluated with {} value(s)",
            self.vars,
            values.len()
        );
        eval_ast(&self.ast, values, &self.vars)
    }

    /// Evaluates just the value (derivatives are still computed internally;
    /// this is a convenience, not a fast path).
    pub fn eval(&self, values: &[f64]) -> Result<f64, ExprError> {
        Ok(self.eval_jet2(values)?.value())
    }
}

/// Prints a canonical form that parses back to the same tree.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ast::write_ast(f, &self.ast, &self.vars)
    }
}

/// Structural equality of the parsed trees (ignores source spelling, so
/// `"u + v"` equals `"u+v"` but not `"v+u"`).
impl PartialEq for Expression {
    fn eq(&self, other: &Self) -> bool {
        self.ast == other.ast && self.vars == other.vars
    }
}

struct AstDisplay<'a> {
    ast: &'a Ast,
    vars: &'a [String],
}

impl fmt::Display for AstDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        ast::write_ast(f, self.ast, self.vars)
    }
}

fn eval_ast(ast: &Ast, values: &[f64], vars: &[String]) -> Result<Jet2, ExprError> {
    let n = vars.len();
    let domain = |issue: jet::DomainIssue, node: &Ast| ExprError::Domain {
        op: issue.op,
        reason: issue.reason,
        subexpr: AstDisplay { ast: node, vars }.to_string(),
    };
    match ast {
        Ast::Const(c) => Ok(Jet2::constant(*c, n)),
        Ast::Var(i) => Ok(Jet2::variable(values[*i], *i, n)),
        Ast::Neg(a) => Ok(eval_ast(a, values, vars)?.neg()),
        Ast::Add(a, b) => Ok(eval_ast(a, values, vars)?.add(&eval_ast(b, values, vars)?)),
        Ast::Sub(a, b) => Ok(eval_ast(a, values, vars)?.sub(&eval_ast(b, values, vars)?)),
        Ast::Mul(a, b) => Ok(eval_ast(a, values, vars)?.mul(&eval_ast(b, values, vars)?)),
        Ast::Div(a, b) => eval_ast(a, values, vars)?
            .div(&eval_ast(b, values, vars)?)
            .map_err(|issue| domain(issue, ast)),
        Ast::Pow(a, k) => eval_ast(a, values, vars)?
            .powi(*k)
            .map_err(|issue| domain(issue, ast)),
        Ast::Call(func, a) => {
            let arg = eval_ast(a, values, vars)?;
            match func {
                Func::Sin => Ok(arg.sin()),
                Func::Cos => Ok(arg.cos()),
                Func::Tan => Ok(arg.tan()),
                Func::Exp => Ok(arg.exp()),
                Func::Atan => Ok(arg.atan()),
                Func::Log => arg.ln().map_err(|issue| domain(issue, ast)),
                Func::Sqrt => arg.sqrt().map_err(|issue| domain(issue, ast)),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_uv(src: &str) -> Expression {
        Expression::parse(src, &["u", "v"]).unwrap()
    }

    #[test]
    fn polynomial_jet_matches_hand_computation() {
        // f = u²v at (2, 3): value 12, grad (12, 4), hess [[6, 4], [4, 0]]
        let f = parse_uv("u*u*v");
        let jet = f.eval_jet2(&[2.0, 3.0]).unwrap();
        assert_eq!(jet.value(), 12.0);
        assert_eq!(jet.grad(0), 12.0);
        assert_eq!(jet.grad(1), 4.0);
        assert_eq!(jet.hess(0, 0), 6.0);
        assert_eq!(jet.hess(0, 1), 4.0);
        assert_eq!(jet.hess(1, 1), 0.0);
    }

    #[test]
    fn powers_and_functions_compose() {
        // f = exp(u*v) at (1, 1)
        let f = parse_uv("exp(u*v)");
        let jet = f.eval_jet2(&[1.0, 1.0]).unwrap();
        let e = std::f64::consts::E;
        assert!((jet.value() - e).abs() < 1e-14);
        assert!((jet.grad(0) - e).abs() < 1e-14);
        assert!((jet.grad(1) - e).abs() < 1e-14);
        assert!((jet.hess(0, 0) - e).abs() < 1e-13);
        assert!((jet.hess(0, 1) - 2.0 * e).abs() < 1e-13);
    }

    #[test]
    fn precedence_matches_convention() {
        let f = parse_uv("1 + u*v^2");
        // 1 + u·v² at (2, 3) = 19, not (1+u)·v² or (uv)² variants
        assert_eq!(f.eval(&[2.0, 3.0]).unwrap(), 19.0);
        let g = parse_uv("-u^2");
        // unary minus binds looser than '^'
        assert_eq!(g.eval(&[3.0, 0.0]).unwrap(), -9.0);
        let h = parse_uv("(-u)^2");
        assert_eq!(h.eval(&[3.0, 0.0]).unwrap(), 9.0);
        let d = parse_uv("u - v - 1");
        // left-associative subtraction
        assert_eq!(d.eval(&[10.0, 3.0]).unwrap(), 6.0);
    }

    #[test]
    fn negative_and_fractional_literals() {
        let f = parse_uv("2^-2 + 0.5 + 1e-1*u");
        assert!((f.eval(&[1.0, 0.0]).unwrap() - 0.85).abs() < 1e-15);
        let g = parse_uv("-3");
        assert_eq!(g.eval(&[0.0, 0.0]).unwrap(), -3.0);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = Expression::parse("u +", &["u", "v"]).unwrap_err();
        assert_eq!(
            err,
            ExprError::UnexpectedEnd {
                pos: 3,
                expected: "a number, variable, function call, or '('"
            }
        );

        let err = Expression::parse("u + $", &["u", "v"]).unwrap_err();
        assert_eq!(err, ExprError::UnexpectedChar { pos: 4, ch: '$' });

        let err = Expression::parse("sin(u", &["u"]).unwrap_err();
        assert_eq!(err, ExprError::UnclosedParen { pos: 3 });

        let err = Expression::parse("u^v", &["u", "v"]).unwrap_err();
        assert_eq!(err, ExprError::ExponentNotInteger { pos: 2 });

        let err = Expression::parse("atan2(u, v)", &["u", "v"]).unwrap_err();
        assert!(matches!(err, ExprError::UnknownFunction { pos: 0, .. }));

        let err = Expression::parse("sin(u, v)", &["u", "v"]).unwrap_err();
        assert!(matches!(err, ExprError::FunctionArity { pos: 5, .. }));

        let err = Expression::parse("u + w", &["u", "v"]).unwrap_err();
        assert!(matches!(err, ExprError::UnknownVariable { pos: 4, .. }));

        let err = Expression::parse("u v", &["u", "v"]).unwrap_err();
        assert!(matches!(
            err,
            ExprError::UnexpectedToken {
                pos: 2,
                expected: "end of expression",
                ..
            }
        ));
    }

    #[test]
    fn domain_errors_name_the_subexpression() {
        let f = parse_uv("1/(u - v)");
        let err = f.eval_jet2(&[1.0, 1.0]).unwrap_err();
        match err {
            ExprError::Domain { op, subexpr, .. } => {
                assert_eq!(op, "/");
                assert_eq!(subexpr, "1/(u - v)");
            }
            other => panic!("expected domain error, got {other:?}"),
        }

        let g = parse_uv("log(u) + v");
        let err = g.eval_jet2(&[-1.0, 0.0]).unwrap_err();
        match err {
            ExprError::Domain { op, subexpr, .. } => {
                assert_eq!(op, "log");
                assert_eq!(subexpr, "log(u)");
            }
            other => panic!("expected domain error, got {other:?}"),
        }
    }

    #[test]
    fn display_round_trips_to_equal_tree() {
        for src in [
            "u + v",
            "u - (v - 1)",
            "(u + v)*(u - v)",
            "u/v/2",
            "u/(v/2)",
            "-u^2 + (-v)^2",
            "-(u + v)",
            "2^-3*u",
            "sin(u)*cos(v) + exp(u*v)",
            "sqrt(u^2 + v^2)",
            "u - -v",
            "3.5e-2 + u",
        ] {
            let parsed = parse_uv(src);
            let printed = parsed.to_string();
            let reparsed = parse_uv(&printed);
            assert_eq!(parsed, reparsed, "{src:?} printed as {printed:?}");
        }
    }

    #[test]
    fn display_is_stable_under_reprinting() {
        let once = parse_uv("-(u + v)*sin(u)^2/(1 - v)").to_string();
        let twice = parse_uv(&once).to_string();
        assert_eq!(once, twice);
    }
}
