//! Double-double evaluation of a realization along the ray `(1 - t) tau`.
//!
//! On the ray `I_Y((1 - t) tau) = (1 - t) 1` exactly, so the state depends on
//! the colligation alone: `v = (1 - r A)^-1 B`, `phi = D + r C v` with `r = 1 - t`.
//! Near `tau` the quantity `1 - |phi|^2` is of size `t ||v||^2` and loses all
//! but a few digits in plain `f64`; here it is carried to about 30 digits.
//!
//! The same arithmetic polishes generated unitaries so that their isometry
//! defect is at the level of the final rounding to `f64`.

use std::ops::{Add, Mul, Sub};

use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, C64};
use crate::realization::Colligation;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Dd(TwoFloat);

impl Dd {
    fn from_f64(x: f64) -> Self {
        Dd(TwoFloat::from(x))
    }

    fn to_f64(self) -> f64 {
        f64::from(self.0)
    }

    /// Quotient with one Newton correction: `q + (a - q b) / b`.
    fn div(self, b: Dd) -> Dd {
        let q = Dd::from_f64(self.to_f64() / b.to_f64());
        let rem = self - q * b;
        q + Dd::from_f64(rem.to_f64() / b.to_f64())
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        Dd(self.0 + o.0)
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        Dd(self.0 - o.0)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        Dd(self.0 * o.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    fn from_c64(z: C64) -> Self {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    fn zero() -> Self {
        Self::from_c64(C64::new(0.0, 0.0))
    }

    fn scale(self, s: Dd) -> Self {
        Cdd {
            re: self.re * s,
            im: self.im * s,
        }
    }

    fn norm_sqr(self) -> Dd {
        self.re * self.re + self.im * self.im
    }

    fn magnitude(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    fn div(self, b: Cdd) -> Cdd {
        let den = b.norm_sqr();
        let num = self * Cdd { re: b.re, im: Dd(-b.im.0) };
        Cdd {
            re: num.re.div(den),
            im: num.im.div(den),
        }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Sub for Cdd {
    type Output = Cdd;
    fn sub(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re - o.re,
            im: self.im - o.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, o: Cdd) -> Cdd {
        Cdd {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

/// `||v||^2` and `1 - |phi|^2` at `(1 - t) tau`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayState {
    pub v_norm_sq: f64,
    pub phi_defect: f64,
    pub phi: C64,
}

/// Solves `(1 - r A) v = B` by Gaussian elimination with partial pivoting in
/// double-double arithmetic and evaluates `phi = D + r C v`.
pub fn ray_state(col: &Colligation, t: f64) -> Result<RayState> {
    let n = col.state_dim();
    let one = Dd::from_f64(1.0);
    let r = one - Dd::from_f64(t);
    let a = col.a();
    let mut m: Vec<Vec<Cdd>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let rij = Cdd::from_c64(a[(i, j)]).scale(r);
                    let diag = if i == j { Cdd::from_c64(C64::new(1.0, 0.0)) } else { Cdd::zero() };
                    diag - rij
                })
                .collect()
        })
        .collect();
    let mut rhs: Vec<Cdd> = col.b().iter().map(|&z| Cdd::from_c64(z)).collect();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[i][k].magnitude().total_cmp(&m[j][k].magnitude()))
            .expect("nonempty");
        if m[p][k].magnitude() == 0.0 {
            return Err(Error::SingularResolvent);
        }
        m.swap(k, p);
        rhs.swap(k, p);
        for i in k + 1..n {
            let f = m[i][k].div(m[k][k]);
            for j in k..n {
                let sub = f * m[k][j];
                m[i][j] = m[i][j] - sub;
            }
            let sub = f * rhs[k];
            rhs[i] = rhs[i] - sub;
        }
    }
    let mut v = vec![Cdd::zero(); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s = s - m[i][j] * v[j];
        }
        v[i] = s.div(m[i][i]);
    }
    let mut phi = Cdd::from_c64(col.d());
    for (cj, vj) in col.c().iter().zip(&v) {
        phi = phi + (Cdd::from_c64(*cj) * *vj).scale(r);
    }
    let v_norm_sq = v.iter().fold(Dd::from_f64(0.0), |acc, z| acc + z.norm_sqr());
    Ok(RayState {
        v_norm_sq: v_norm_sq.to_f64(),
        phi_defect: (one - phi.norm_sqr()).to_f64(),
        phi: C64::new(phi.re.to_f64(), phi.im.to_f64()),
    })
}

type DdMatrix = Vec<Vec<Cdd>>;

fn to_dd(m: &ComplexMatrix) -> DdMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Cdd::from_c64(m[(i, j)])).collect())
        .collect()
}

fn adjoint_mul(x: &DdMatrix, y: &DdMatrix) -> DdMatrix {
    let (k, n, p) = (x.len(), x[0].len(), y[0].len());
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| {
                    (0..k).fold(Cdd::zero(), |acc, l| {
                        let xc = Cdd {
                            re: x[l][i].re,
                            im: Dd(-x[l][i].im.0),
                        };
                        acc + xc * y[l][j]
                    })
                })
                .collect()
        })
        .collect()
}

fn mul(x: &DdMatrix, y: &DdMatrix) -> DdMatrix {
    let (n, k, p) = (x.len(), y.len(), y[0].len());
    (0..n)
        .map(|i| (0..p).map(|j| (0..k).fold(Cdd::zero(), |acc, l| acc + x[i][l] * y[l][j])).collect())
        .collect()
}

/// Frobenius norm of `M* M - 1` with the product formed exactly enough that
/// defects far below `f64` epsilon remain visible.
pub fn isometry_defect(m: &ComplexMatrix) -> f64 {
    let x = to_dd(m);
    let g = adjoint_mul(&x, &x);
    let mut sum = Dd::from_f64(0.0);
    for (i, row) in g.iter().enumerate() {
        for (j, z) in row.iter().enumerate() {
            let diag = if i == j { Cdd::from_c64(C64::new(1.0, 0.0)) } else { Cdd::zero() };
            sum = sum + (*z - diag).norm_sqr();
        }
    }
    sum.to_f64().sqrt()
}

/// Newton-Schulz steps `X <- X (3 - X* X) / 2` in double-double, rounded back
/// to `f64`. Requires `||X* X - 1|| < 1`; two steps take `1e-14` to below `1e-30`.
pub fn polish_isometry(m: &ComplexMatrix) -> ComplexMatrix {
    let mut x = to_dd(m);
    let half = Dd::from_f64(0.5);
    for _ in 0..2 {
        let mut g = adjoint_mul(&x, &x);
        for (i, row) in g.iter_mut().enumerate() {
            for (j, z) in row.iter_mut().enumerate() {
                let diag = if i == j { Cdd::from_c64(C64::new(3.0, 0.0)) } else { Cdd::zero() };
                *z = (diag - *z).scale(half);
            }
        }
        x = mul(&x, &g);
    }
    let data = x
        .iter()
        .flat_map(|row| row.iter().map(|z| C64::new(z.re.to_f64(), z.im.to_f64())))
        .collect();
    ComplexMatrix::from_vec(m.rows(), m.cols(), data).expect("same shape")
}
