//! Coefficients `F_r(m, n, λ)` of the auxiliary series `F(m, n, λ; x)`.
//!
//! For `m ≤ n` the coefficient is a finite sum over length-`m` compositions
//! `a` of `r`:
//!
//! ```text
//! F_r = Σ_a  ∏_{i<j} ((a_i − a_j)/(j − i) + 1) · ∏_s rising(λ, a_s) · rising(n − s, a_s) / a_s!
//! ```
//!
//! [`f_term`] evaluates one summand literally in rationals and is kept as the
//! reference. The production path ([`WeightTable`]) rewrites the Vandermonde
//! quotient with `c_s = a_s − s` as `∏_{i<j} (c_i − c_j)/(j − i)`, which is
//! `±` the dimension of a `GL_m` irreducible and therefore an integer. Every
//! summand is then an integer, so the hot loop runs in checked `u128`/`i128`
//! with a `BigInt` fallback. The quotient vanishes as soon as two `c_s`
//! coincide, which prunes whole subtrees of the enumeration.
//!
//! The `λ` dependence only enters through the multiset of parts, so summands
//! are bucketed by that multiset once per `(m, n)`; afterwards any `λ` costs a
//! handful of big-integer products.

use std::collections::{BTreeMap, HashMap};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactmath::{
    binomial_u128, factorial, rat, rising_factorial, BigInt, BigRat, RisingFactorialTable,
    RisingFactorials,
};
use crate::exec::Exec;

/// Ordered parts `a_0, …, a_{m-1}` summing to the weight.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u32>,
}

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// True if some pair `i < j` has `a_j − a_i = j − i`, which zeroes the
    /// Vandermonde quotient.
    pub fn vanishes(&self) -> bool {
        let c: Vec<i64> = self
            .parts
            .iter()
            .enumerate()
            .map(|(s, &a)| i64::from(a) - s as i64)
            .collect();
        (0..c.len()).any(|i| (i + 1..c.len()).any(|j| c[i] == c[j]))
    }
}

/// All compositions of `weight` into exactly `len` parts, in colexicographic
/// order (last part most significant), starting at `(weight, 0, …, 0)`.
#[derive(Clone, Debug)]
pub struct Compositions {
    current: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(len: usize, weight: u32) -> Self {
        let current = match len {
            0 if weight == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut first = vec![0; len];
                first[0] = weight;
                Some(first)
            }
        };
        Compositions { current }
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        let cur = self.current.take()?;
        let out = Composition::new(cur.clone());
        // Successor: move one unit from the lowest nonzero part up one slot
        // and pile whatever remains of that part back onto slot 0.
        let mut next = cur;
        if let Some(z) = next.iter().position(|&a| a > 0) {
            if z + 1 < next.len() {
                let rest = next[z] - 1;
                next[z] = 0;
                next[z + 1] += 1;
                next[0] = rest;
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// One summand, evaluated literally. Requires `a.len() == m ≤ n`.
pub fn f_term(a: &Composition, m: u32, n: u32, lambda: u32) -> BigRat {
    assert_eq!(a.len(), m as usize, "composition length must equal m");
    assert!(m <= n, "summand formula requires m ≤ n");
    let parts = a.parts();
    let mut acc = BigRat::one();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let diff = i64::from(parts[i]) - i64::from(parts[j]);
            acc *= BigRat::new(diff.into(), ((j - i) as i64).into()) + BigRat::one();
        }
    }
    for (s, &part) in parts.iter().enumerate() {
        let num = rising_factorial(lambda, part) * rising_factorial(n - s as u32, part);
        acc *= BigRat::new(num, factorial(part));
    }
    acc
}

/// Reference evaluation of `F_r` by summing [`f_term`] over every
/// composition. With `prune` set, vanishing compositions are skipped.
pub fn f_r_reference(r: u32, m: u32, n: u32, lambda: u32, prune: bool) -> BigRat {
    if r == 0 {
        return BigRat::one();
    }
    let (m, n) = (m.min(n), m.max(n));
    Compositions::new(m as usize, r)
        .filter(|a| !(prune && a.vanishes()))
        .map(|a| f_term(&a, m, n, lambda))
        .sum()
}

/// `F_r(1, m, n) = rising(m, r) · rising(n, r) / r!`.
pub fn f_r_m1_closed(r: u32, m: u32, n: u32) -> BigRat {
    BigRat::new(
        rising_factorial(m, r) * rising_factorial(n, r),
        factorial(r),
    )
}

/// `F_r(m, n, λ)`, cached in `grid` when `r` is within its range.
pub fn f_r(r: u32, m: u32, n: u32, lambda: u32, grid: &FGrid) -> BigRat {
    if r == 0 {
        return BigRat::one();
    }
    if r > grid.max_darts() {
        let (m, n) = (m.min(n), m.max(n));
        let table = WeightTable::build(m, n, r, Exec::Sequential);
        let lam = RisingFactorialTable::new(lambda, r);
        return rat(table.f_value(r, &lam));
    }
    grid.value(r, m, n, lambda)
}

/// Canonical cache key; `m ≤ n` always holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FKey {
    pub k: u32,
    pub m: u32,
    pub n: u32,
    pub lambda: u32,
}

impl FKey {
    pub fn new(k: u32, m: u32, n: u32, lambda: u32) -> Self {
        FKey {
            k,
            m: m.min(n),
            n: m.max(n),
            lambda,
        }
    }
}

/// Counters exposed for instrumentation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FGridStats {
    /// `(m, n)` weight tables built by enumeration.
    pub tables_built: usize,
    /// `(m, n, λ)` points whose coefficients were computed, not loaded.
    pub points_computed: usize,
    /// Nonvanishing compositions visited while building tables.
    pub terms_visited: u64,
}

type TableSlot = Arc<OnceLock<Arc<WeightTable>>>;

/// Cache of `F_k(m, n, λ)` for `1 ≤ k ≤ max_darts`.
///
/// Values are stored under `m ≤ n`, so `F_k(m, n, λ)` and `F_k(n, m, λ)`
/// share an entry. Weight tables are built at most once per `(m, n)`.
#[derive(Debug)]
pub struct FGrid {
    max_darts: u32,
    values: RwLock<HashMap<FKey, BigRat>>,
    tables: Mutex<HashMap<(u32, u32), TableSlot>>,
    rising: RisingFactorials,
    tables_built: AtomicUsize,
    points_computed: AtomicUsize,
    terms_visited: AtomicUsize,
}

impl FGrid {
    pub fn new(max_darts: u32) -> Self {
        FGrid {
            max_darts,
            values: RwLock::new(HashMap::new()),
            tables: Mutex::new(HashMap::new()),
            rising: RisingFactorials::new(),
            tables_built: AtomicUsize::new(0),
            points_computed: AtomicUsize::new(0),
            terms_visited: AtomicUsize::new(0),
        }
    }

    pub fn max_darts(&self) -> u32 {
        self.max_darts
    }

    pub fn stats(&self) -> FGridStats {
        FGridStats {
            tables_built: self.tables_built.load(Ordering::Relaxed),
            points_computed: self.points_computed.load(Ordering::Relaxed),
            terms_visited: self.terms_visited.load(Ordering::Relaxed) as u64,
        }
    }

    pub fn get(&self, k: u32, m: u32, n: u32, lambda: u32) -> Option<BigRat> {
        if k == 0 {
            return Some(BigRat::one());
        }
        self.values
            .read()
            .unwrap()
            .get(&FKey::new(k, m, n, lambda))
            .cloned()
    }

    /// Seeds a value, e.g. from a persisted cache. Existing entries win.
    pub fn insert(&self, key: FKey, value: BigRat) {
        let key = FKey::new(key.k, key.m, key.n, key.lambda);
        self.values.write().unwrap().entry(key).or_insert(value);
    }

    /// Every cached value, sorted by key.
    pub fn entries(&self) -> Vec<(FKey, BigRat)> {
        let mut out: Vec<_> = self
            .values
            .read()
            .unwrap()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        out.sort_by_key(|a| a.0);
        out
    }

    pub fn len(&self) -> usize {
        self.values.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when `F_1 … F_upto` are all cached at this point.
    pub fn has_point(&self, m: u32, n: u32, lambda: u32, upto: u32) -> bool {
        let values = self.values.read().unwrap();
        (1..=upto).all(|k| values.contains_key(&FKey::new(k, m, n, lambda)))
    }

    /// `F_k(m, n, λ)` for `k ≤ max_darts`, computing and caching the whole
    /// `k`-range at this point on a miss.
    pub fn value(&self, k: u32, m: u32, n: u32, lambda: u32) -> BigRat {
        assert!(k <= self.max_darts, "k = {k} exceeds grid range");
        if let Some(v) = self.get(k, m, n, lambda) {
            return v;
        }
        let (m, n) = (m.min(n), m.max(n));
        let table = self.weight_table(m, n);
        self.fill_point(&table, lambda);
        self.get(k, m, n, lambda).expect("point was just filled")
    }

    /// Coefficients `F_0 … F_max_darts` at one point.
    pub fn series(&self, m: u32, n: u32, lambda: u32) -> Vec<BigRat> {
        (0..=self.max_darts)
            .map(|k| self.value(k, m, n, lambda))
            .collect()
    }

    /// Computes every missing point in `points` (each `(m, n, λ)`).
    ///
    /// Weight tables for distinct `(m, n)` pairs are built concurrently first,
    /// then all points are filled; no lock is held while work runs under
    /// `exec`.
    pub fn prefill(&self, points: &[(u32, u32, u32)], exec: Exec) {
        let missing: Vec<(u32, u32, u32)> = points
            .iter()
            .map(|&(m, n, l)| (m.min(n), m.max(n), l))
            .filter(|&(m, n, l)| !self.has_point(m, n, l, self.max_darts))
            .collect();
        let mut pairs: Vec<(u32, u32)> = missing.iter().map(|&(m, n, _)| (m, n)).collect();
        pairs.sort_unstable();
        pairs.dedup();
        pairs.retain(|&pair| self.cached_table(pair).is_none());
        // Largest pairs first so the long enumerations start early.
        pairs.sort_by_key(|&(m, n)| std::cmp::Reverse((m, n)));
        let built = exec.map(&pairs, |&(m, n)| {
            WeightTable::build(m, n, self.max_darts, exec)
        });
        for table in built {
            self.install_table(table);
        }
        for &(_, _, l) in &missing {
            self.rising.table(l, self.max_darts);
        }
        exec.map(&missing, |&(m, n, l)| {
            let table = self.weight_table(m, n);
            self.fill_point(&table, l);
        });
    }

    fn cached_table(&self, pair: (u32, u32)) -> Option<Arc<WeightTable>> {
        let tables = self.tables.lock().unwrap();
        tables.get(&pair).and_then(|cell| cell.get().cloned())
    }

    fn install_table(&self, table: WeightTable) {
        let cell = {
            let mut tables = self.tables.lock().unwrap();
            Arc::clone(tables.entry((table.m, table.n)).or_default())
        };
        let visited = table.terms_visited;
        if cell.set(Arc::new(table)).is_ok() {
            self.tables_built.fetch_add(1, Ordering::Relaxed);
            self.terms_visited
                .fetch_add(visited as usize, Ordering::Relaxed);
        }
    }

    /// Compute-once lookup. Builds sequentially: the builder may run on a
    /// rayon worker, and nested parallel work inside a once-cell initializer
    /// could steal a task that waits on the same cell.
    fn weight_table(&self, m: u32, n: u32) -> Arc<WeightTable> {
        let cell = {
            let mut tables = self.tables.lock().unwrap();
            Arc::clone(tables.entry((m, n)).or_default())
        };
        Arc::clone(cell.get_or_init(|| {
            let table = WeightTable::build(m, n, self.max_darts, Exec::Sequential);
            self.tables_built.fetch_add(1, Ordering::Relaxed);
            self.terms_visited
                .fetch_add(table.terms_visited as usize, Ordering::Relaxed);
            Arc::new(table)
        }))
    }

    fn fill_point(&self, table: &WeightTable, lambda: u32) {
        let lam = self.rising.table(lambda, self.max_darts);
        let computed: Vec<(FKey, BigRat)> = (1..=self.max_darts)
            .map(|k| {
                (
                    FKey::new(k, table.m, table.n, lambda),
                    rat(table.f_value(k, &lam)),
                )
            })
            .collect();
        let mut values = self.values.write().unwrap();
        let mut fresh = false;
        for (key, v) in computed {
            if let std::collections::hash_map::Entry::Vacant(slot) = values.entry(key) {
                slot.insert(v);
                fresh = true;
            }
        }
        if fresh {
            self.points_computed.fetch_add(1, Ordering::Relaxed);
        }
    }
}

/// For fixed `(m, n)`, the sum of all summands sharing a multiset of parts,
/// with the `λ`-dependent factor stripped off:
///
/// ```text
/// W(ν) = Σ_{a : parts(a) = ν}  ±dim(c(a)) · ∏_s C(n − s + a_s − 1, a_s)
/// F_k(m, n, λ) = Σ_{|ν| = k} W(ν) · ∏_{p ∈ ν} rising(λ, p)
/// ```
#[derive(Clone, Debug)]
pub struct WeightTable {
    m: u32,
    n: u32,
    max_weight: u32,
    /// Indexed by weight; each bucket lists (nonzero parts, W).
    by_weight: Vec<Vec<(Vec<u32>, BigInt)>>,
    terms_visited: u64,
}

impl WeightTable {
    /// Enumerates all length-`m` compositions of weight `≤ max_weight`.
    pub fn build(m: u32, n: u32, max_weight: u32, exec: Exec) -> Self {
        assert!(m >= 1 && m <= n, "weight table needs 1 ≤ m ≤ n");
        let (buckets, visited) = if (max_weight + m) < 127 {
            match Enumerator::<u128>::new(m, n, max_weight).and_then(|e| e.run(exec)) {
                Some(result) => result,
                None => Enumerator::<BigInt>::new(m, n, max_weight)
                    .and_then(|e| e.run(exec))
                    .expect("big-integer enumeration cannot overflow"),
            }
        } else {
            reference_buckets(m, n, max_weight)
        };
        let mut by_weight = vec![Vec::new(); max_weight as usize + 1];
        for (parts, w) in buckets {
            if w.is_zero() {
                continue;
            }
            let k: u32 = parts.iter().sum();
            by_weight[k as usize].push((parts, w));
        }
        WeightTable {
            m,
            n,
            max_weight,
            by_weight,
            terms_visited: visited,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms_visited(&self) -> u64 {
        self.terms_visited
    }

    /// `F_k(m, n, λ)` given rising factorials of `λ` up to at least `k`.
    pub fn f_value(&self, k: u32, lambda: &RisingFactorialTable) -> BigInt {
        if k == 0 {
            return BigInt::one();
        }
        assert!(k <= self.max_weight);
        self.by_weight[k as usize]
            .iter()
            .map(|(parts, w)| parts.iter().fold(w.clone(), |acc, &p| acc * lambda.get(p)))
            .sum()
    }
}

/// Slow path for sizes outside the fast enumerator's bit budget.
fn reference_buckets(m: u32, n: u32, max_weight: u32) -> (BTreeMap<Vec<u32>, BigInt>, u64) {
    let mut out: BTreeMap<Vec<u32>, BigRat> = BTreeMap::new();
    let mut visited = 0;
    for k in 0..=max_weight {
        for a in Compositions::new(m as usize, k) {
            if a.vanishes() {
                continue;
            }
            visited += 1;
            // Strip the λ factor: evaluate at λ = 1 and divide by ∏ a_s!.
            let strip: BigInt = a.parts().iter().map(|&p| factorial(p)).product();
            let term = f_term(&a, m, n, 1) / rat(strip);
            let mut parts: Vec<u32> = a.parts().iter().copied().filter(|&p| p > 0).collect();
            parts.sort_unstable_by(|x, y| y.cmp(x));
            *out.entry(parts).or_insert_with(BigRat::zero) += term;
        }
    }
    let out = out
        .into_iter()
        .map(|(k, v)| {
            assert!(v.is_integer(), "weight bucket must be integral");
            (k, v.to_integer())
        })
        .collect();
    (out, visited)
}

/// Arithmetic used by the enumerator; `u128` reports overflow as `None`.
trait Kernel: Clone + Send + Sync + Sized {
    fn unit() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn times(&self, other: &Self) -> Option<Self>;
    /// Adds `±self` into the accumulator.
    fn accumulate(&self, negative: bool, acc: &mut Acc) -> Option<()>;
}

impl Kernel for u128 {
    fn unit() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_u128()
    }
    fn times(&self, other: &Self) -> Option<Self> {
        self.checked_mul(*other)
    }
    fn accumulate(&self, negative: bool, acc: &mut Acc) -> Option<()> {
        let v = i128::try_from(*self).ok()?;
        acc.add_small(if negative { -v } else { v });
        Some(())
    }
}

impl Kernel for BigInt {
    fn unit() -> Self {
        BigInt::one()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn times(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn accumulate(&self, negative: bool, acc: &mut Acc) -> Option<()> {
        if negative {
            acc.big -= self;
        } else {
            acc.big += self;
        }
        Some(())
    }
}

/// `i128` running sum that spills into a `BigInt` instead of overflowing.
#[derive(Clone, Debug, Default)]
struct Acc {
    small: i128,
    big: BigInt,
}

impl Acc {
    fn add_small(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                self.big += self.small;
                self.small = v;
            }
        }
    }

    fn total(self) -> BigInt {
        self.big + self.small
    }
}

fn primes(count: usize) -> Vec<u128> {
    let mut out: Vec<u128> = Vec::with_capacity(count);
    let mut candidate = 2u128;
    while out.len() < count {
        if out
            .iter()
            .take_while(|&&p| p * p <= candidate)
            .all(|&p| !candidate.is_multiple_of(p))
        {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

/// Depth-first enumeration of compositions from the last part inward
/// (colexicographic within each weight), carrying the prefix's binomial
/// product, occupied-`c` bitmask, inversion count and multiset key.
struct Enumerator<K: Kernel> {
    m: u32,
    max_weight: u32,
    /// `binom[s][a] = C(n − s + a − 1, a)`.
    binom: Vec<Vec<K>>,
    /// `prime[a]` encodes a part of size `a` in the multiset key (`prime[0] = 1`).
    prime: Vec<u128>,
    /// `∏_{i<j} (j − i)` for the dimension formula.
    superfactorial: BigInt,
}

/// Per-task state: local buckets and a memo of dimensions by bitmask.
struct Worker<K> {
    buckets: HashMap<u128, Acc>,
    dims: HashMap<u128, K>,
    visited: u64,
    overflow: bool,
}

impl<K: Kernel> Enumerator<K> {
    fn new(m: u32, n: u32, max_weight: u32) -> Option<Self> {
        let mut binom = Vec::with_capacity(m as usize);
        for s in 0..m {
            let base = n - s;
            let row = (0..=max_weight)
                .map(|a| {
                    let c = binomial_u128(base + a - 1, a)
                        .map(BigInt::from)
                        .unwrap_or_else(|| crate::exactmath::binomial(base + a - 1, a));
                    K::from_big(&c)
                })
                .collect::<Option<Vec<K>>>()?;
            binom.push(row);
        }
        let mut prime = vec![1u128];
        prime.extend(primes(max_weight as usize));
        let superfactorial = (0..m).map(factorial).product();
        Some(Enumerator {
            m,
            max_weight,
            binom,
            prime,
            superfactorial,
        })
    }

    /// Returns `None` if `K` overflowed anywhere.
    fn run(&self, exec: Exec) -> Option<(BTreeMap<Vec<u32>, BigInt>, u64)> {
        // Split on the values of the last two parts.
        let mut prefixes: Vec<(u32, u32)> = Vec::new();
        if self.m >= 2 {
            for a_last in 0..=self.max_weight {
                for a_prev in 0..=self.max_weight - a_last {
                    prefixes.push((a_last, a_prev));
                }
            }
        } else {
            prefixes.push((0, 0));
        }
        let workers = exec.map(&prefixes, |&(a_last, a_prev)| {
            let mut w = Worker {
                buckets: HashMap::new(),
                dims: HashMap::new(),
                visited: 0,
                overflow: false,
            };
            if self.m >= 2 {
                self.seed(&mut w, a_last, a_prev);
            } else {
                self.descend(&mut w, 0, self.max_weight, 0, 0, K::unit(), 1);
            }
            w
        });
        let mut merged: HashMap<u128, Acc> = HashMap::new();
        let mut visited = 0;
        for w in workers {
            if w.overflow {
                return None;
            }
            visited += w.visited;
            for (key, acc) in w.buckets {
                let slot = merged.entry(key).or_default();
                slot.big += acc.total();
            }
        }
        let out = merged
            .into_iter()
            .map(|(key, acc)| (self.decode(key), acc.total()))
            .collect();
        Some((out, visited))
    }

    fn bit(&self, s: u32, a: u32) -> u32 {
        a + (self.m - 1 - s)
    }

    fn seed(&self, w: &mut Worker<K>, a_last: u32, a_prev: u32) {
        let s_last = self.m - 1;
        let s_prev = self.m - 2;
        let b_last = self.bit(s_last, a_last);
        let b_prev = self.bit(s_prev, a_prev);
        if b_last == b_prev {
            return;
        }
        let mask = (1u128 << b_last) | (1u128 << b_prev);
        let inversions = u32::from(b_last > b_prev);
        let Some(prod) = self.binom[s_last as usize][a_last as usize]
            .times(&self.binom[s_prev as usize][a_prev as usize])
        else {
            w.overflow = true;
            return;
        };
        let key = self.prime[a_last as usize] * self.prime[a_prev as usize];
        let remaining = self.max_weight - a_last - a_prev;
        if self.m == 2 {
            self.leaf(w, mask, inversions, &prod, key);
        } else {
            self.descend(w, s_prev - 1, remaining, mask, inversions, prod, key);
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        w: &mut Worker<K>,
        s: u32,
        remaining: u32,
        mask: u128,
        inversions: u32,
        prod: K,
        key: u128,
    ) {
        for a in 0..=remaining {
            let bit = self.bit(s, a);
            if mask & (1u128 << bit) != 0 {
                continue;
            }
            // Already-placed positions j > s with c_j > c_s form inversions.
            let above = (mask >> bit >> 1).count_ones();
            let Some(next) = prod.times(&self.binom[s as usize][a as usize]) else {
                w.overflow = true;
                return;
            };
            let mask = mask | (1u128 << bit);
            let key = key * self.prime[a as usize];
            if s == 0 {
                self.leaf(w, mask, inversions + above, &next, key);
            } else {
                self.descend(w, s - 1, remaining - a, mask, inversions + above, next, key);
            }
            if w.overflow {
                return;
            }
        }
    }

    fn leaf(&self, w: &mut Worker<K>, mask: u128, inversions: u32, prod: &K, key: u128) {
        w.visited += 1;
        let dim = match w.dims.get(&mask) {
            Some(d) => d.clone(),
            None => match K::from_big(&self.dimension(mask)) {
                Some(d) => {
                    w.dims.insert(mask, d.clone());
                    d
                }
                None => {
                    w.overflow = true;
                    return;
                }
            },
        };
        let acc = w.buckets.entry(key).or_default();
        let ok = dim
            .times(prod)
            .and_then(|v| v.accumulate(inversions % 2 == 1, acc));
        if ok.is_none() {
            w.overflow = true;
        }
    }

    /// `∏_{i<j} (ℓ_i − ℓ_j) / (j − i)` over the set bits in descending order.
    fn dimension(&self, mask: u128) -> BigInt {
        let bits: Vec<i64> = (0..128)
            .rev()
            .filter(|b| mask & (1u128 << b) != 0)
            .map(i64::from)
            .collect();
        let mut num = BigInt::one();
        for i in 0..bits.len() {
            for j in i + 1..bits.len() {
                num *= bits[i] - bits[j];
            }
        }
        let (q, rem) = num.div_rem(&self.superfactorial);
        assert!(rem.is_zero(), "dimension formula must be integral");
        q
    }

    fn decode(&self, mut key: u128) -> Vec<u32> {
        let mut parts = Vec::new();
        for a in (1..self.prime.len()).rev() {
            while key.is_multiple_of(self.prime[a]) {
                key /= self.prime[a];
                parts.push(a as u32);
            }
        }
        debug_assert_eq!(key, 1);
        parts
    }
}
