//! Second-order forward-mode jets.
//!
//! A [`Jet2`] carries a value, a gradient, and a symmetric Hessian with
//! respect to a fixed list of `n` independent variables, and propagates all
//! three exactly (to rounding) through arithmetic and the supported
//! elementary functions. The Hessian is stored as a packed upper triangle so
//! symmetry holds by construction.

use smallvec::{smallvec, SmallVec};

/// Gradient storage: inline for up to three variables (charts use two,
/// ambient fields three), heap beyond that.
type Grad = SmallVec<[f64; 3]>;
/// Packed upper-triangle Hessian storage: n(n+1)/2 entries, inline for n ≤ 3.
type Hess = SmallVec<[f64; 6]>;

/// Value, gradient, and symmetric Hessian of a scalar quantity at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct Jet2 {
    nvars: usize,
    value: f64,
    grad: Grad,
    hess: Hess,
}

/// Outcome of applying an elementary function outside its real domain (or at
/// a point where its derivative is unbounded). The caller decorates this
/// with the offending subexpression.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DomainIssue {
    pub op: &'static str,
    pub reason: &'static str,
}

fn packed(n: usize) -> usize {
    n * (n + 1) / 2
}

/// Index of `(i, j)` with `i <= j` in the packed upper triangle.
fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

impl Jet2 {
    /// Jet of a constant: zero gradient and Hessian.
    pub fn constant(value: f64, nvars: usize) -> Jet2 {
        Jet2 {
            nvars,
            value,
            grad: smallvec![0.0; nvars],
            hess: smallvec![0.0; packed(nvars)],
        }
    }

    /// Jet of the `index`-th independent variable: unit gradient entry.
    pub fn variable(value: f64, index: usize, nvars: usize) -> Jet2 {
        let mut jet = Jet2::constant(value, nvars);
        jet.grad[index] = 1.0;
        jet
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// Partial derivative with respect to variable `i`.
    pub fn grad(&self, i: usize) -> f64 {
        self.grad[i]
    }

    pub fn grad_slice(&self) -> &[f64] {
        &self.grad
    }

    /// Second partial `∂²/∂x_i ∂x_j`; symmetric in `(i, j)` by storage.
    pub fn hess(&self, i: usize, j: usize) -> f64 {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        self.hess[upper_index(self.nvars, a, b)]
    }

    fn zip(&self, rhs: &Jet2, f: impl Fn(f64, f64) -> f64) -> Jet2 {
        debug_assert_eq!(self.nvars, rhs.nvars);
        Jet2 {
            nvars: self.nvars,
            value: f(self.value, rhs.value),
            grad: self
                .grad
                .iter()
                .zip(&rhs.grad)
                .map(|(a, b)| f(*a, *b))
                .collect(),
            hess: self
                .hess
                .iter()
                .zip(&rhs.hess)
                .map(|(a, b)| f(*a, *b))
                .collect(),
        }
    }

    pub fn add(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Jet2) -> Jet2 {
        self.zip(rhs, |a, b| a - b)
    }

    pub fn neg(&self) -> Jet2 {
        Jet2 {
            nvars: self.nvars,
            value: -self.value,
            grad: self.grad.iter().map(|a| -a).collect(),
            hess: self.hess.iter().map(|a| -a).collect(),
        }
    }

    /// Product rule through second order:
    /// `(fg)'' = f''g + f'g' + g'f' + fg''`.
    pub fn mul(&self, rhs: &Jet2) -> Jet2 {
        let n = self.nvars;
        let mut out = Jet2::constant(self.value * rhs.value, n);
        for i in 0..n {
            out.grad[i] = self.grad[i] * rhs.value + self.value * rhs.grad[i];
        }
        for i in 0..n {
            for j in i..n {
                let k = upper_index(n, i, j);
                out.hess[k] = self.hess[k] * rhs.value
                    + self.grad[i] * rhs.grad[j]
                    + self.grad[j] * rhs.grad[i]
                    + self.value * rhs.hess[k];
            }
        }
        out
    }

    /// Quotient via `f / g = f · (1/g)`.
    pub fn div(&self, rhs: &Jet2) -> Result<Jet2, DomainIssue> {
        if rhs.value == 0.0 {
            return Err(DomainIssue {
                op: "/",
                reason: "division by zero",
            });
        }
        let v = rhs.value;
        Ok(self.mul(&rhs.compose(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))))
    }

    /// Chain rule for a scalar function `g` with `g(f)`, `g'(f)`, `g''(f)`
    /// supplied at `f = self.value`:
    /// grad: `g'·f_i`; Hessian: `g''·f_i f_j + g'·f_ij`.
    fn compose(&self, g0: f64, g1: f64, g2: f64) -> Jet2 {
        let n = self.nvars;
        let mut out = Jet2::constant(g0, n);
        for i in 0..n {
            out.grad[i] = g1 * self.grad[i];
        }
        for i in 0..n {
            for j in i..n {
                let k = upper_index(n, i, j);
                out.hess[k] = g2 * self.grad[i] * self.grad[j] + g1 * self.hess[k];
            }
        }
        out
    }

    /// Integer power. Negative exponents require a nonzero base.
    pub fn powi(&self, k: i32) -> Result<Jet2, DomainIssue> {
        if k < 0 && self.value == 0.0 {
            return Err(DomainIssue {
                op: "^",
                reason: "zero base with negative exponent",
            });
        }
        let v = self.value;
        let (g0, g1, g2) = match k {
            0 => (1.0, 0.0, 0.0),
            1 => return Ok(self.clone()),
            _ => (
                v.powi(k),
                f64::from(k) * v.powi(k - 1),
                f64::from(k) * f64::from(k - 1) * v.powi(k - 2),
            ),
        };
        Ok(self.compose(g0, g1, g2))
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.compose(s, c, -s)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.compose(c, -s, -c)
    }

    pub fn tan(&self) -> Jet2 {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.compose(t, sec2, 2.0 * t * sec2)
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.value.exp();
        self.compose(e, e, e)
    }

    pub fn ln(&self) -> Result<Jet2, DomainIssue> {
        if self.value <= 0.0 {
            return Err(DomainIssue {
                op: "log",
                reason: "argument must be positive",
            });
        }
        let v = self.value;
        Ok(self.compose(v.ln(), 1.0 / v, -1.0 / (v * v)))
    }

    /// Square root. Rejected at zero as well as below it: the derivative of
    /// `√x` is unbounded at `x = 0`, so a jet there would be meaningless.
    pub fn sqrt(&self) -> Result<Jet2, DomainIssue> {
        if self.value < 0.0 {
            return Err(DomainIssue {
                op: "sqrt",
                reason: "argument is negative",
            });
        }
        if self.value == 0.0 {
            return Err(DomainIssue {
                op: "sqrt",
                reason: "derivative unbounded at zero argument",
            });
        }
        let r = self.value.sqrt();
        Ok(self.compose(r, 0.5 / r, -0.25 / (r * r * r)))
    }

    pub fn atan(&self) -> Jet2 {
        let v = self.value;
        let d = 1.0 + v * v;
        self.compose(v.atan(), 1.0 / d, -2.0 * v / (d * d))
    }
}
