//! Point values of `H_r(m, n, λ)` from the convolution recursion
//! `Σ_{k=0}^{r} H_{r−k} F_k = r F_r` with `F_0 = 1`, `H_0 = 0`.
//!
//! The special-case recursions at `(1, m, n)`, `(1, 1, m)` and `(1, 1, 1)` use
//! only closed-form rising factorials and never touch [`crate::fseries`], so
//! they act as independent checks on the general path.

use std::collections::HashMap;
use std::sync::RwLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactmath::{as_integer, factorial, rat, rising_factorial, BigInt, BigRat};
use crate::fseries::{f_r, FGrid};

/// Cache of `H_k(m, n, λ)`, keyed with `m ≤ n`.
#[derive(Debug, Default)]
pub struct HGrid {
    values: RwLock<HashMap<(u32, u32, u32, u32), BigInt>>,
}

impl HGrid {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, k: u32, m: u32, n: u32, lambda: u32) -> Option<BigInt> {
        if k == 0 {
            return Some(BigInt::zero());
        }
        self.values
            .read()
            .unwrap()
            .get(&(k, m.min(n), m.max(n), lambda))
            .cloned()
    }

    fn insert(&self, k: u32, m: u32, n: u32, lambda: u32, value: BigInt) {
        self.values
            .write()
            .unwrap()
            .insert((k, m.min(n), m.max(n), lambda), value);
    }

    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `H_r(m, n, λ)`, computing and caching `H_1 … H_r` at this point as needed.
///
/// `m` and `n` are swapped into `m ≤ n` before consulting the series; `λ` is
/// passed through as given.
pub fn h_r_point(
    r: u32,
    m: u32,
    n: u32,
    lambda: u32,
    fgrid: &FGrid,
    hgrid: &HGrid,
) -> Result<BigInt> {
    if let Some(v) = hgrid.get(r, m, n, lambda) {
        return Ok(v);
    }
    let (m, n) = (m.min(n), m.max(n));
    let f: Vec<BigRat> = (0..=r).map(|k| f_r(k, m, n, lambda, fgrid)).collect();
    let mut h: Vec<BigInt> = vec![BigInt::zero()];
    for j in 1..=r {
        let value = match hgrid.get(j, m, n, lambda) {
            Some(v) => v,
            None => {
                let v = convolution_step(j, &f, &h);
                let v = as_integer(&v).ok_or(Error::NonIntegerResult {
                    darts: j,
                    m,
                    n,
                    lambda,
                    value: v,
                })?;
                hgrid.insert(j, m, n, lambda, v.clone());
                v
            }
        };
        h.push(value);
    }
    Ok(h.pop().unwrap())
}

/// `H_1 … H_r` at one point from a precomputed `F_0 … F_r` series.
pub fn h_series(f: &[BigRat], m: u32, n: u32, lambda: u32) -> Result<Vec<BigInt>> {
    let r = f.len() as u32 - 1;
    let mut h: Vec<BigInt> = vec![BigInt::zero()];
    for j in 1..=r {
        let v = convolution_step(j, f, &h);
        let v = as_integer(&v).ok_or(Error::NonIntegerResult {
            darts: j,
            m,
            n,
            lambda,
            value: v,
        })?;
        h.push(v);
    }
    h.remove(0);
    Ok(h)
}

/// `H_j = j F_j − Σ_{k=1}^{j−1} F_k H_{j−k}` given `H_0 … H_{j−1}`.
fn convolution_step(j: u32, f: &[BigRat], h: &[BigInt]) -> BigRat {
    let mut acc = &f[j as usize] * rat(j);
    for k in 1..j {
        acc -= &f[k as usize] * rat(h[(j - k) as usize].clone());
    }
    acc
}

/// `H_r(1, m, n)` by its dedicated recursion:
/// `H_r = rising(m,r) rising(n,r)/(r−1)! − Σ_{k<r} rising(m,k) rising(n,k)/k! · H_{r−k}`.
pub fn h_r_special_1mn(r: u32, m: u32, n: u32) -> BigInt {
    // rising(m,k)·rising(n,k)/k! is an integer: rising(n,k)/k! = C(n+k−1, k).
    let weight = |k: u32| rising_factorial(m, k) * rising_factorial(n, k) / factorial(k);
    let mut h = vec![BigInt::zero()];
    for j in 1..=r {
        let mut v = weight(j) * j;
        for k in 1..j {
            v -= weight(k) * &h[(j - k) as usize];
        }
        h.push(v);
    }
    h.pop().unwrap()
}

/// `H_r(1, 1, m) = r · rising(m, r) − Σ_{k<r} rising(m, k) H_{r−k}(1, 1, m)`.
pub fn h_r_special_11m(r: u32, m: u32) -> BigInt {
    let mut h = vec![BigInt::zero()];
    for j in 1..=r {
        let mut v = rising_factorial(m, j) * j;
        for k in 1..j {
            v -= rising_factorial(m, k) * &h[(j - k) as usize];
        }
        h.push(v);
    }
    h.pop().unwrap()
}

/// Total rooted hypermaps for `r = 1 ..= r_max`:
/// `H_r(1,1,1) = r · r! − Σ_{k<r} k! H_{r−k}(1,1,1)`.
pub fn totals(r_max: u32) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero()];
    for r in 1..=r_max {
        let mut v = factorial(r) * r;
        for k in 1..r {
            v -= factorial(k) * &h[(r - k) as usize];
        }
        h.push(v);
    }
    h.remove(0);
    h
}
