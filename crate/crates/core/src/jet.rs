//! Second-order forward-mode jets over the four chart coordinates.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Position of `∂_i∂_j` in the packed upper triangle.
const HESS_INDEX: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 4, 5, 6], [2, 5, 7, 8], [3, 6, 8, 9]];

/// Value, gradient and Hessian of a scalar function of `(x^0..x^3)`.
///
/// The Hessian is stored as its 10 independent entries, so it is symmetric
/// by construction.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 4],
    hess: [f64; 10],
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Jet2 {
            value,
            grad: [0.0; 4],
            hess: [0.0; 10],
        }
    }

    /// The coordinate function `x^i` evaluated at `value`.
    pub fn variable(i: usize, value: f64) -> Self {
        let mut grad = [0.0; 4];
        grad[i] = 1.0;
        Jet2 {
            value,
            grad,
            hess: [0.0; 10],
        }
    }

    pub fn hess(&self, i: usize, j: usize) -> f64 {
        self.hess[HESS_INDEX[i][j]]
    }

    pub fn hessian(&self) -> [[f64; 4]; 4] {
        let mut h = [[0.0; 4]; 4];
        for (i, row) in h.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.hess(i, j);
            }
        }
        h
    }

    pub fn is_constant(&self) -> bool {
        self.grad.iter().all(|&g| g == 0.0) && self.hess.iter().all(|&h| h == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|g| g.is_finite())
            && self.hess.iter().all(|h| h.is_finite())
    }

    /// Directional derivative `v^μ ∂_μ`.
    pub fn directional(&self, v: &[f64; 4]) -> f64 {
        (0..4).map(|i| v[i] * self.grad[i]).sum()
    }

    /// `f(self)` given `f(u0)`, `f'(u0)`, `f''(u0)`.
    pub fn chain(&self, f0: f64, f1: f64, f2: f64) -> Jet2 {
        let mut out = Jet2::constant(f0);
        for i in 0..4 {
            out.grad[i] = f1 * self.grad[i];
        }
        for i in 0..4 {
            for j in i..4 {
                let k = HESS_INDEX[i][j];
                out.hess[k] = f1 * self.hess[k] + f2 * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Jet2 {
        let mut out = *self;
        out.value *= s;
        out.grad.iter_mut().for_each(|g| *g *= s);
        out.hess.iter_mut().for_each(|h| *h *= s);
        out
    }

    pub fn recip(&self) -> Jet2 {
        let v = self.value;
        self.chain(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v))
    }

    pub fn sin(&self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(&self) -> Jet2 {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(&self) -> Jet2 {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(&self) -> Jet2 {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(&self) -> Jet2 {
        let (s, c) = (self.value.sinh(), self.value.cosh());
        self.chain(c, s, c)
    }

    pub fn tanh(&self) -> Jet2 {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn exp(&self) -> Jet2 {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(&self) -> Jet2 {
        let v = self.value;
        self.chain(v.ln(), 1.0 / v, -1.0 / (v * v))
    }

    pub fn sqrt(&self) -> Jet2 {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * r * r))
    }

    pub fn atan(&self) -> Jet2 {
        let v = self.value;
        let d = 1.0 / (1.0 + v * v);
        self.chain(v.atan(), d, -2.0 * v * d * d)
    }

    /// Integer power by repeated squaring of jets.
    pub fn powi(&self, n: i64) -> Jet2 {
        let mut base = *self;
        let mut e = n.unsigned_abs();
        let mut acc = Jet2::constant(1.0);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, rhs: Jet2) -> Jet2 {
        let mut out = self;
        out.value += rhs.value;
        for i in 0..4 {
            out.grad[i] += rhs.grad[i];
        }
        for k in 0..10 {
            out.hess[k] += rhs.hess[k];
        }
        out
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, rhs: Jet2) -> Jet2 {
        self + (-rhs)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: Jet2) -> Jet2 {
        let (u, v) = (self, rhs);
        let mut out = Jet2::constant(u.value * v.value);
        for i in 0..4 {
            out.grad[i] = u.value * v.grad[i] + v.value * u.grad[i];
        }
        for i in 0..4 {
            for j in i..4 {
                let k = HESS_INDEX[i][j];
                out.hess[k] = u.value * v.hess[k]
                    + v.value * u.hess[k]
                    + u.grad[i] * v.grad[j]
                    + u.grad[j] * v.grad[i];
            }
        }
        out
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    fn div(self, rhs: Jet2) -> Jet2 {
        self * rhs.recip()
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, rhs: f64) -> Jet2 {
        self.scale(rhs)
    }
}
