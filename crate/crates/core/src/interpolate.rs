//! Recovery of the coefficient table of `H_r` from point values.
//!
//! `H_r` has degree at most `r` in each variable and vanishes whenever an
//! argument is zero, so the node set `{0, …, r}` per axis determines it and
//! the boundary costs nothing. Only sorted interior triples
//! `1 ≤ m ≤ n ≤ λ ≤ r` are ever handed to the evaluator.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{as_integer, rat, sort_triple, triple_orbit, BigInt, BigRat, PolySym3};
use crate::exec::Exec;

pub use crate::exactmath::Triple;

/// Counts `H_{vefr}` for one dart count, stored under sorted `(v ≤ e ≤ f)`.
///
/// `v` counts vertices, `e` edges and `f` faces. Because `H_r` is fully
/// symmetric the labels only matter for presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffTable {
    darts: u32,
    entries: BTreeMap<Triple, BigInt>,
}

impl CoeffTable {
    /// Builds a table from canonical entries; keys are sorted and zero
    /// counts dropped.
    pub fn new<I>(darts: u32, entries: I) -> Self
    where
        I: IntoIterator<Item = (Triple, BigInt)>,
    {
        let entries = entries
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(t, c)| (sort_triple(t), c))
            .collect();
        CoeffTable { darts, entries }
    }

    pub fn darts(&self) -> u32 {
        self.darts
    }

    /// Canonical entries in ascending lexicographic order.
    pub fn entries(&self) -> impl Iterator<Item = (&Triple, &BigInt)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Count for any ordering of `(v, e, f)`.
    pub fn get(&self, t: Triple) -> BigInt {
        self.entries
            .get(&sort_triple(t))
            .cloned()
            .unwrap_or_default()
    }

    /// Sum over all `(v, e, f)` including symmetric images, i.e. `H_r(1,1,1)`.
    pub fn total(&self) -> BigInt {
        self.entries
            .iter()
            .map(|(&t, c)| c * triple_orbit(t).len())
            .sum()
    }

    /// Entries breaking `v + e + f ≤ r + 2`, `v + e + f ≡ r (mod 2)`,
    /// `v, e, f ≥ 1` or nonnegativity.
    pub fn invariant_violations(&self) -> Vec<Triple> {
        let r = self.darts;
        self.entries
            .iter()
            .filter(|(&(v, e, f), c)| {
                let s = v + e + f;
                v == 0 || s > r + 2 || s % 2 != r % 2 || c.is_negative()
            })
            .map(|(&t, _)| t)
            .collect()
    }

    pub fn to_poly(&self) -> PolySym3 {
        table_to_poly(self)
    }
}

impl fmt::Display for CoeffTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "r={}", self.darts)?;
        for (&(v, e, fa), c) in &self.entries {
            writeln!(f, "{v} {e} {fa} {c}")?;
        }
        Ok(())
    }
}

/// Expands every canonical entry over all its distinct permutations.
pub fn table_to_poly(t: &CoeffTable) -> PolySym3 {
    PolySym3::from_canonical(t.darts.max(1), t.entries.iter())
}

/// Wraps a point function so arguments are sorted before evaluation and each
/// sorted triple is evaluated once.
pub struct SymmetricMemo<F> {
    inner: F,
    cache: RwLock<HashMap<Triple, BigInt>>,
    misses: AtomicUsize,
}

impl<F> SymmetricMemo<F>
where
    F: Fn(u32, u32, u32) -> Result<BigInt> + Sync,
{
    pub fn new(inner: F) -> Self {
        SymmetricMemo {
            inner,
            cache: RwLock::new(HashMap::new()),
            misses: AtomicUsize::new(0),
        }
    }

    pub fn eval(&self, m: u32, n: u32, lambda: u32) -> Result<BigInt> {
        let key = sort_triple((m, n, lambda));
        if let Some(v) = self.cache.read().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = (self.inner)(key.0, key.1, key.2)?;
        let mut cache = self.cache.write().unwrap();
        cache.entry(key).or_insert_with(|| {
            self.misses.fetch_add(1, Ordering::Relaxed);
            v.clone()
        });
        Ok(v)
    }

    /// Distinct sorted triples actually handed to the wrapped function.
    pub fn evaluations(&self) -> usize {
        self.misses.load(Ordering::Relaxed)
    }
}

/// Result of [`interpolate_table_counted`].
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub table: CoeffTable,
    /// Distinct expensive evaluations performed.
    pub evaluations: usize,
}

/// Interpolates `H_r` from an exact point evaluator.
pub fn interpolate_table<F>(r: u32, evaluator: F, exec: Exec) -> Result<CoeffTable>
where
    F: Fn(u32, u32, u32) -> Result<BigInt> + Sync,
{
    interpolate_table_counted(r, evaluator, exec).map(|i| i.table)
}

pub fn interpolate_table_counted<F>(r: u32, evaluator: F, exec: Exec) -> Result<Interpolation>
where
    F: Fn(u32, u32, u32) -> Result<BigInt> + Sync,
{
    if r == 0 {
        return Err(Error::Unsupported("dart count must be positive".into()));
    }
    let memo = SymmetricMemo::new(evaluator);
    let points = sorted_triples(r);
    exec.try_map(&points, |&(a, b, c)| memo.eval(a, b, c))?;
    let values = node_values(r, |m, n, l| memo.eval(m, n, l))?;
    let coeffs = interpolate_coefficients(r, &values);
    let table = coefficients_to_table(r, &coeffs)?;
    Ok(Interpolation {
        table,
        evaluations: memo.evaluations(),
    })
}

/// All `1 ≤ a ≤ b ≤ c ≤ r`; there are `C(r + 2, 3)` of them.
pub fn sorted_triples(r: u32) -> Vec<Triple> {
    let mut out = Vec::new();
    for a in 1..=r {
        for b in a..=r {
            for c in b..=r {
                out.push((a, b, c));
            }
        }
    }
    out
}

/// Values on `{0..=r}³`, row-major `[m][n][λ]`, zero on the coordinate planes.
pub fn node_values<G>(r: u32, mut eval: G) -> Result<Vec<BigInt>>
where
    G: FnMut(u32, u32, u32) -> Result<BigInt>,
{
    let side = r + 1;
    let mut out = Vec::with_capacity((side * side * side) as usize);
    for m in 0..side {
        for n in 0..side {
            for l in 0..side {
                if m == 0 || n == 0 || l == 0 {
                    out.push(BigInt::zero());
                } else {
                    out.push(eval(m, n, l)?);
                }
            }
        }
    }
    Ok(out)
}

/// Monomial coefficients `c[i][j][k]` of the unique polynomial with degree
/// `≤ r` per variable matching `values` on `{0..=r}³`.
pub fn interpolate_coefficients(r: u32, values: &[BigInt]) -> Vec<BigRat> {
    let side = (r + 1) as usize;
    assert_eq!(values.len(), side * side * side);
    let mut data: Vec<BigRat> = values.iter().cloned().map(rat).collect();
    let strides = [side * side, side, 1];
    for &stride in &strides {
        for start in 0..data.len() {
            // visit each line along this axis once, from its first node
            if (start / stride) % side != 0 {
                continue;
            }
            let idx: Vec<usize> = (0..side).map(|t| start + t * stride).collect();
            let line: Vec<BigRat> = idx.iter().map(|&i| data[i].clone()).collect();
            let mono = newton_to_monomial(&divided_differences(&line));
            for (&i, v) in idx.iter().zip(mono) {
                data[i] = v;
            }
        }
    }
    data
}

/// Newton coefficients for nodes `0, 1, …, len−1`.
fn divided_differences(values: &[BigRat]) -> Vec<BigRat> {
    let mut d = values.to_vec();
    for j in 1..d.len() {
        let step = rat(j as i64);
        for i in (j..d.len()).rev() {
            d[i] = (&d[i] - &d[i - 1]) / &step;
        }
    }
    d
}

/// Expands `Σ_t d_t ∏_{s<t} (x − s)` into monomial coefficients.
fn newton_to_monomial(d: &[BigRat]) -> Vec<BigRat> {
    let len = d.len();
    let mut poly = vec![BigRat::zero(); len];
    for t in (0..len).rev() {
        // poly ← poly · (x − t) + d_t
        let shift = rat(t as i64);
        for i in (0..len).rev() {
            let lower = if i > 0 {
                poly[i - 1].clone()
            } else {
                BigRat::zero()
            };
            poly[i] = lower - &poly[i] * &shift;
        }
        poly[0] += &d[t];
    }
    poly
}

/// Checks integrality, sign and symmetry and folds onto sorted triples.
pub fn coefficients_to_table(r: u32, coeffs: &[BigRat]) -> Result<CoeffTable> {
    let side = r + 1;
    let mut poly = PolySym3::new(r);
    for i in 0..side {
        for j in 0..side {
            for k in 0..side {
                let q = &coeffs[((i * side + j) * side + k) as usize];
                if q.is_zero() {
                    continue;
                }
                let c = as_integer(q).ok_or_else(|| Error::NonIntegerCoefficient {
                    v: i,
                    e: j,
                    f: k,
                    value: q.clone(),
                })?;
                if c.is_negative() {
                    return Err(Error::NegativeCoefficient {
                        v: i,
                        e: j,
                        f: k,
                        value: c,
                    });
                }
                poly.add_term((i, j, k), c);
            }
        }
    }
    let entries = poly.canonical_entries()?;
    Ok(CoeffTable::new(r, entries))
}
