//! Exact scalars, factorial-family tables and trivariate polynomials.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact rational, always in lowest terms with a positive denominator.
pub type BigRat = num_rational::BigRational;

/// An exponent triple `(i, j, k)` for the monomial `m^i n^j λ^k`.
pub type Triple = (u32, u32, u32);

/// `base · (base+1) ⋯ (base+k-1)`, i.e. `Γ(base+k)/Γ(base)`.
pub fn rising_factorial(base: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= base + t;
    }
    acc
}

pub fn factorial(k: u32) -> BigInt {
    rising_factorial(1, k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    rising_factorial(n - k + 1, k) / factorial(k)
}

/// Rising factorials `Γ(base+k)/Γ(base)` for one base and `0 ≤ k ≤ kmax`.
#[derive(Clone, Debug)]
pub struct RisingFactorialTable {
    base: u32,
    values: Vec<BigInt>,
}

impl RisingFactorialTable {
    pub fn new(base: u32, kmax: u32) -> Self {
        assert!(base >= 1, "rising factorial base must be positive");
        let mut values = Vec::with_capacity(kmax as usize + 1);
        values.push(BigInt::one());
        let mut table = RisingFactorialTable { base, values };
        table.grow(kmax);
        table
    }

    fn grow(&mut self, kmax: u32) {
        while self.values.len() <= kmax as usize {
            let k = self.values.len() as u32;
            let next = &self.values[k as usize - 1] * (self.base + k - 1);
            self.values.push(next);
        }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn kmax(&self) -> u32 {
        self.values.len() as u32 - 1
    }

    /// Panics if `k` exceeds the table's range.
    pub fn get(&self, k: u32) -> &BigInt {
        &self.values[k as usize]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

/// Lazily grown rising-factorial tables keyed by base.
///
/// Lookups take a read lock; a table is only rebuilt when a caller needs a
/// longer one, so after a warm-up phase concurrent readers never contend.
#[derive(Debug, Default)]
pub struct RisingFactorials {
    tables: RwLock<HashMap<u32, Arc<RisingFactorialTable>>>,
}

impl RisingFactorials {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self, base: u32, kmax: u32) -> Arc<RisingFactorialTable> {
        if let Some(t) = self.tables.read().unwrap().get(&base) {
            if t.kmax() >= kmax {
                return Arc::clone(t);
            }
        }
        let mut tables = self.tables.write().unwrap();
        let entry = tables
            .entry(base)
            .or_insert_with(|| Arc::new(RisingFactorialTable::new(base, kmax)));
        if entry.kmax() < kmax {
            let mut grown = (**entry).clone();
            grown.grow(kmax);
            *entry = Arc::new(grown);
        }
        Arc::clone(entry)
    }

    pub fn get(&self, base: u32, k: u32) -> BigInt {
        self.table(base, k).get(k).clone()
    }
}

/// Checked `u128` binomial coefficient, `None` on overflow.
pub(crate) fn binomial_u128(n: u32, k: u32) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        // acc * (n - t) / (t + 1) stays integral at every step.
        acc = acc.checked_mul(u128::from(n - t))? / u128::from(t + 1);
    }
    Some(acc)
}

pub fn rat(n: impl Into<BigInt>) -> BigRat {
    BigRat::from_integer(n.into())
}

/// Returns the numerator if `q` is an integer.
pub fn as_integer(q: &BigRat) -> Option<BigInt> {
    q.is_integer().then(|| q.numer().clone())
}

/// All distinct permutations of an exponent triple, in ascending order.
pub fn triple_orbit((a, b, c): Triple) -> Vec<Triple> {
    let mut orbit = vec![
        (a, b, c),
        (a, c, b),
        (b, a, c),
        (b, c, a),
        (c, a, b),
        (c, b, a),
    ];
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

pub fn sort_triple((a, b, c): Triple) -> Triple {
    let mut t = [a, b, c];
    t.sort_unstable();
    (t[0], t[1], t[2])
}

/// Integer polynomial in `(m, n, λ)` stored as a full sparse coefficient map.
///
/// Symmetry is never assumed: [`PolySym3::is_symmetric`] checks it and
/// [`PolySym3::canonical_entries`] refuses to fold an asymmetric polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolySym3 {
    degree_bound: u32,
    coeffs: BTreeMap<Triple, BigInt>,
}

impl PolySym3 {
    pub fn new(degree_bound: u32) -> Self {
        PolySym3 {
            degree_bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// Expands canonical `(i ≤ j ≤ k)` entries into every distinct permutation.
    pub fn from_canonical<'a, I>(degree_bound: u32, entries: I) -> Self
    where
        I: IntoIterator<Item = (&'a Triple, &'a BigInt)>,
    {
        let mut p = PolySym3::new(degree_bound);
        for (&t, c) in entries {
            for image in triple_orbit(t) {
                p.add_term(image, c.clone());
            }
        }
        p
    }

    pub fn degree_bound(&self) -> u32 {
        self.degree_bound
    }

    pub fn add_term(&mut self, (i, j, k): Triple, c: BigInt) {
        assert!(
            i <= self.degree_bound && j <= self.degree_bound && k <= self.degree_bound,
            "monomial ({i}, {j}, {k}) exceeds degree bound {}",
            self.degree_bound
        );
        let slot = self.coeffs.entry((i, j, k)).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&(i, j, k));
        }
    }

    pub fn coeff(&self, t: Triple) -> BigInt {
        self.coeffs.get(&t).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Triple, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, m: i64, n: i64, lambda: i64) -> BigInt {
        self.eval_big(&BigInt::from(m), &BigInt::from(n), &BigInt::from(lambda))
    }

    pub fn eval_big(&self, m: &BigInt, n: &BigInt, lambda: &BigInt) -> BigInt {
        let powers = |x: &BigInt| {
            let mut p = Vec::with_capacity(self.degree_bound as usize + 1);
            p.push(BigInt::one());
            for d in 1..=self.degree_bound as usize {
                let next = &p[d - 1] * x;
                p.push(next);
            }
            p
        };
        let (pm, pn, pl) = (powers(m), powers(n), powers(lambda));
        self.coeffs
            .iter()
            .map(|(&(i, j, k), c)| c * &pm[i as usize] * &pn[j as usize] * &pl[k as usize])
            .sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&t, c)| {
            triple_orbit(t)
                .into_iter()
                .all(|image| self.coeffs.get(&image) == Some(c))
        })
    }

    /// Folds a symmetric polynomial onto its sorted exponent triples.
    pub fn canonical_entries(&self) -> Result<BTreeMap<Triple, BigInt>> {
        let mut out = BTreeMap::new();
        for (&t, c) in &self.coeffs {
            for image in triple_orbit(t) {
                let found = self.coeff(image);
                if found != *c {
                    return Err(Error::AsymmetryDetected {
                        v: image.0,
                        e: image.1,
                        f: image.2,
                        found,
                        expected: c.clone(),
                    });
                }
            }
            if t == sort_triple(t) {
                out.insert(t, c.clone());
            }
        }
        Ok(out)
    }

    pub fn has_negative_coefficient(&self) -> bool {
        self.coeffs.values().any(Signed::is_negative)
    }
}
