//! Parse expressions and evaluate them with exact first and second
//! derivatives.
//!
//! ```bash
//! cargo run --example parse_and_autodiff
//! ```

use surfint::expr::Expression;

fn main() {
    // Any expression in the declared variables: arithmetic, powers with
    // integer exponents, sin/cos/tan/exp/log/sqrt/atan.
    let expr = Expression::parse("exp(x)*sin(y) + z^3/(1 + x^2)", &["x", "y", "z"]).unwrap();
    let at = [0.5, 1.2, -0.7];

    // One evaluation produces the value, the gradient, and the full
    // symmetric Hessian, all exact to machine precision (forward-mode
    // second-order jets, not finite differences).
    let jet = expr.eval_jet2(&at).unwrap();
    println!("f(x, y, z) = {}", expr.source());
    println!("at (x, y, z) = {at:?}");
    println!();
    println!("value     {:+.12}", jet.value());
    println!(
        "gradient  ({:+.12}, {:+.12}, {:+.12})",
        jet.grad(0),
        jet.grad(1),
        jet.grad(2)
    );
    println!("hessian");
    for i in 0..3 {
        println!(
            "          ({:+.12}, {:+.12}, {:+.12})",
            jet.hess(i, 0),
            jet.hess(i, 1),
            jet.hess(i, 2)
        );
    }

    // Syntax errors carry 1-based column positions.
    let broken = Expression::parse("x + * y", &["x", "y"]).unwrap_err();
    println!("\nsyntax error: {broken}");

    // Domain violations (division by zero, log of a nonpositive number,
    // square roots of negatives) are reported, not silently NaN.
    let fragile = Expression::parse("1/(x - 1)", &["x"]).unwrap();
    let domain = fragile.eval_jet2(&[1.0]).unwrap_err();
    println!("domain error: {domain}");
}
