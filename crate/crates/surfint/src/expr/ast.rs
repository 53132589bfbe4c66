//! Expression tree and precedence-aware pretty printer.

use std::fmt;

/// Elementary functions accepted in expressions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Log,
    Sqrt,
    Atan,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Atan => "atan",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            "atan" => Func::Atan,
            _ => return None,
        })
    }
}

/// Parsed expression tree. Variables are indices into the owning
/// expression's variable list.
#[derive(Debug, Clone, PartialEq)]
pub enum Ast {
    Const(f64),
    Var(usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    /// Integer power; the exponent is restricted to literals so derivatives
    /// stay exact and ordinary powers never leave the real line.
    Pow(Box<Ast>, i32),
    Call(Func, Box<Ast>),
}

/// Binding strength, used both by the printer (to decide parentheses) and in
/// tests. Higher binds tighter.
fn precedence(ast: &Ast) -> u8 {
    match ast {
        Ast::Add(..) | Ast::Sub(..) => 1,
        Ast::Mul(..) | Ast::Div(..) => 2,
        // A negative literal prints with a leading '-', so treat it like a
        // unary negation for parenthesization.
        Ast::Const(c) if *c < 0.0 => 3,
        Ast::Neg(..) => 3,
        Ast::Pow(..) => 4,
        Ast::Const(_) | Ast::Var(_) | Ast::Call(..) => 5,
    }
}

/// Formats `ast` so that re-parsing the output yields the same tree.
///
/// Parentheses are inserted when a child binds no tighter than its context
/// requires; the right operands of `-`, `/` additionally need them at equal
/// precedence because the grammar is left-associative (`a - (b - c)` must
/// not print as `a - b - c`). The same rule is applied to the right operands
/// of `+`, `*` so the printed form reassociates to an identical tree rather
/// than merely an equivalent one.
pub fn write_ast(f: &mut fmt::Formatter<'_>, ast: &Ast, vars: &[String]) -> fmt::Result {
    fn child(
        f: &mut fmt::Formatter<'_>,
        ast: &Ast,
        vars: &[String],
        min: u8,
        strict: bool,
    ) -> fmt::Result {
        let p = precedence(ast);
        let need = if strict { p <= min } else { p < min };
        if need {
            write!(f, "(")?;
            write_ast(f, ast, vars)?;
            write!(f, ")")
        } else {
            write_ast(f, ast, vars)
        }
    }

    match ast {
        Ast::Const(c) => {
            if *c == c.trunc() && c.abs() < 1e15 {
                write!(f, "{c:.0}")
            } else {
                // Shortest representation that round-trips through f64.
                write!(f, "{c}")
            }
        }
        Ast::Var(i) => write!(f, "{}", vars[*i]),
        Ast::Neg(a) => {
            write!(f, "-")?;
            child(f, a, vars, 3, false)
        }
        Ast::Add(a, b) => {
            child(f, a, vars, 1, false)?;
            write!(f, " + ")?;
            child(f, b, vars, 1, true)
        }
        Ast::Sub(a, b) => {
            child(f, a, vars, 1, false)?;
            write!(f, " - ")?;
            child(f, b, vars, 1, true)
        }
        Ast::Mul(a, b) => {
            child(f, a, vars, 2, false)?;
            write!(f, "*")?;
            child(f, b, vars, 2, true)
        }
        Ast::Div(a, b) => {
            child(f, a, vars, 2, false)?;
            write!(f, "/")?;
            child(f, b, vars, 2, true)
        }
        Ast::Pow(base, k) => {
            // The base must bind tighter than '^' itself: '^' is
            // right-grouping on its base side in the grammar, and unary
            // minus binds looser ("-u^2" parses as "-(u^2)").
            child(f, base, vars, 4, true)?;
            write!(f, "^{k}")
        }
        Ast::Call(func, a) => {
            write!(f, "{}(", func.name())?;
            write_ast(f, a, vars)?;
            write!(f, ")")
        }
    }
}
