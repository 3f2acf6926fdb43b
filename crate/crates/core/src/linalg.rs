//! Exact integer linear algebra: Bareiss determinants, Faddeev–LeVerrier
//! characteristic polynomials, and spanning-tree counts.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::GaussianInt;

/// Square matrix over the integers, row-major.
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn to_big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Fraction-free Gaussian elimination; every division is exact.
pub fn bareiss_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: IntMatrix = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_floor(&prev);
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// [`bareiss_det`] in machine integers; `None` on overflow.
pub fn bareiss_det_small(m: &[Vec<i128>]) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut a = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&r| a[r][k] != 0) else {
                return Some(0);
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .checked_mul(a[k][k])?
                    .checked_sub(a[i][k].checked_mul(a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    Some(sign * a[n - 1][n - 1])
}

/// Polynomial in `x` with integer coefficients, stored in ascending degree
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn eval_gaussian(&self, z: &GaussianInt) -> GaussianInt {
        let mut acc = GaussianInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * z;
            acc = acc + GaussianInt::new(c.clone(), 0);
        }
        acc
    }

    /// Ascending degree, e.g. `-6x^3 - x^5`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let body = match (k, mag.is_one()) {
                (0, _) => format!("{mag}"),
                (1, true) => "x".into(),
                (1, false) => format!("{mag}x"),
                (_, true) => format!("x^{k}"),
                (_, false) => format!("{mag}x^{k}"),
            };
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self.render())
    }
}

/// `det(xI − M)` by Faddeev–LeVerrier. The divisions by `k` are exact for
/// integer matrices.
pub fn faddeev_leverrier(m: &[Vec<BigInt>]) -> IntPoly {
    let n = m.len();
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk: IntMatrix = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{n−k+1}·I
        let mut next = mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[n - k + 1];
        }
        mk = next;
        let am = mul(m, &mk);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let kk = BigInt::from(k);
        debug_assert!((&trace % &kk).is_zero());
        c[n - k] = -(trace / kk);
    }
    IntPoly::from_coeffs(c)
}

/// `det(M − xI) = (−1)^n det(xI − M)`.
pub fn char_poly_m_minus_x(m: &[Vec<BigInt>]) -> IntPoly {
    let p = faddeev_leverrier(m);
    if m.len() % 2 == 1 {
        p.neg()
    } else {
        p
    }
}

fn mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// Spanning trees of a multigraph on `vertices` vertices (loops ignored),
/// by the matrix-tree theorem.
pub fn spanning_tree_count(vertices: usize, edges: &[(usize, usize)]) -> BigInt {
    if vertices <= 1 {
        return BigInt::one();
    }
    let mut lap = vec![vec![0i64; vertices]; vertices];
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        lap[u][u] += 1;
        lap[v][v] += 1;
        lap[u][v] -= 1;
        lap[v][u] -= 1;
    }
    let minor: Vec<Vec<i64>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss_det(&to_big(&minor))
}
