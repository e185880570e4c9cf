//! Brute-force checks that share no code with the generating-function path.
//!
//! Rooted hypermaps with `r` darts are counted directly as transitive pairs
//! `(ξ, η)` in `Sym_r²`. Relabelling by permutations fixing the root dart
//! acts freely on such pairs, so each rooted class is an orbit of exactly
//! `(r − 1)!` pairs.

mod perm;
mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{factorial, rat, rising_factorial, triple_orbit, BigRat, Triple};
use crate::exec::Exec;
use crate::interpolate::CoeffTable;

pub use perm::{Constellation, Perm};
pub use series::{neg_log_one_minus, TruncatedSeries};

use perm::{cycle_count, generates_transitive};

/// Largest dart count the pair scan accepts (`8!² ≈ 1.6·10⁹` pairs).
pub const MAX_BRUTE_FORCE_DARTS: u32 = 8;

/// Transitive `(ξ, η)` pairs bucketed by `(cyc χ, cyc η, cyc ξ)`, i.e. by
/// `(vertices, edges, faces)`, before dividing out relabellings.
pub fn transitive_pair_counts(r: u32, exec: Exec) -> Result<BTreeMap<Triple, u64>> {
    if r == 0 || r > MAX_BRUTE_FORCE_DARTS {
        return Err(Error::Unsupported(format!(
            "brute force needs 1 ≤ r ≤ {MAX_BRUTE_FORCE_DARTS}, got {r}"
        )));
    }
    let perms = Perm::all(r as usize);
    let cycles: Vec<u32> = perms.iter().map(Perm::cycle_count).collect();
    let side = r as usize + 1;
    let index = |v: u32, e: u32, f: u32| (v as usize * side + e as usize) * side + f as usize;
    let ranks: Vec<usize> = (0..perms.len()).collect();
    let buckets = exec.map_reduce(
        &ranks,
        |&x| {
            let xi = perms[x].images();
            let mut local = vec![0u64; side * side * side];
            let mut product = vec![0u8; r as usize];
            for (y, eta) in perms.iter().enumerate() {
                let eta = eta.images();
                if !generates_transitive(xi, eta) {
                    continue;
                }
                for (slot, &e) in product.iter_mut().zip(eta) {
                    *slot = xi[e as usize];
                }
                // χ = (ξ∘η)⁻¹ has as many cycles as ξ∘η
                local[index(cycle_count(&product), cycles[y], cycles[x])] += 1;
            }
            local
        },
        || vec![0u64; side * side * side],
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    );
    let mut out = BTreeMap::new();
    for v in 0..side as u32 {
        for e in 0..side as u32 {
            for f in 0..side as u32 {
                let c = buckets[index(v, e, f)];
                if c > 0 {
                    out.insert((v, e, f), c);
                }
            }
        }
    }
    Ok(out)
}

/// Rooted hypermap counts by `(v, e, f)` over every ordering of the profile.
pub fn brute_force_counts(r: u32, exec: Exec) -> Result<BTreeMap<Triple, BigInt>> {
    let pairs = transitive_pair_counts(r, exec)?;
    let divisor: u64 = (1..u64::from(r)).product();
    pairs
        .into_iter()
        .map(|((v, e, f), count)| {
            if count % divisor != 0 {
                return Err(Error::NonDivisibleBucket {
                    v,
                    e,
                    f,
                    count,
                    divisor,
                });
            }
            Ok(((v, e, f), BigInt::from(count / divisor)))
        })
        .collect()
}

/// Coefficient table by exhaustive enumeration of 3-constellations.
pub fn brute_force_table(r: u32, exec: Exec) -> Result<CoeffTable> {
    let counts = brute_force_counts(r, exec)?;
    for (&t, c) in &counts {
        for image in triple_orbit(t) {
            let other = counts.get(&image).cloned().unwrap_or_default();
            if &other != c {
                return Err(Error::AsymmetryDetected {
                    v: image.0,
                    e: image.1,
                    f: image.2,
                    found: other,
                    expected: c.clone(),
                });
            }
        }
    }
    Ok(CoeffTable::new(
        r,
        counts
            .into_iter()
            .filter(|&((v, e, f), _)| v <= e && e <= f),
    ))
}

fn cycle_histogram(xi: &Perm, connected_only: bool) -> BTreeMap<(u32, u32), u64> {
    let mut hist = BTreeMap::new();
    for eta in Perm::all(xi.len()) {
        if connected_only && !generates_transitive(xi.images(), eta.images()) {
            continue;
        }
        let key = (eta.cycle_count(), xi.compose(&eta).cycle_count());
        *hist.entry(key).or_insert(0) += 1;
    }
    hist
}

fn evaluate_histogram(hist: &BTreeMap<(u32, u32), u64>, m: u32, n: u32) -> BigInt {
    hist.iter()
        .map(|(&(a, b), &c)| BigInt::from(c) * BigInt::from(m).pow(a) * BigInt::from(n).pow(b))
        .sum()
}

/// `Σ_{η ∈ Sym_r} m^{cyc(η)} n^{cyc(ξη)}` for a given `ξ`.
pub fn p_sum_for(xi: &Perm, m: u32, n: u32) -> BigInt {
    if xi.is_empty() {
        return BigInt::one();
    }
    evaluate_histogram(&cycle_histogram(xi, false), m, n)
}

/// The same sum restricted to `η` with `⟨ξ, η⟩` transitive.
pub fn p_bar_sum_for(xi: &Perm, m: u32, n: u32) -> BigInt {
    evaluate_histogram(&cycle_histogram(xi, true), m, n)
}

/// [`p_sum_for`] with `ξ` the canonical permutation of the given cycle type.
/// The empty cycle type gives `1`.
pub fn p_sum(cycle_type: &[u32], m: u32, n: u32) -> BigInt {
    p_sum_for(&Perm::from_cycle_type(cycle_type), m, n)
}

pub fn p_bar_sum(cycle_type: &[u32], m: u32, n: u32) -> BigInt {
    p_bar_sum_for(&Perm::from_cycle_type(cycle_type), m, n)
}

/// Checks `P_{r r₁…r_N} = Σ_{u ⊔ v = {r₁…r_N}} P̄_{r u} P_v` where the first
/// entry of `cycle_type` is the distinguished loop `r`.
pub fn check_factorization(cycle_type: &[u32], m: u32, n: u32) -> bool {
    let Some((&root, rest)) = cycle_type.split_first() else {
        return false;
    };
    let lhs = p_sum(cycle_type, m, n);
    let mut rhs = BigInt::zero();
    for subset in 0u32..(1 << rest.len()) {
        let mut with_root = vec![root];
        let mut others = Vec::new();
        for (i, &part) in rest.iter().enumerate() {
            if subset & (1 << i) != 0 {
                with_root.push(part);
            } else {
                others.push(part);
            }
        }
        rhs += p_bar_sum(&with_root, m, n) * p_sum(&others, m, n);
    }
    lhs == rhs
}

/// Compares, to order `K`,
/// `exp(λ Σ_j Σ_r q_j^r x^r / r)` against `∏_j Σ_a rising(λ, a)/a! · q_j^a x^a`.
pub fn check_nested_series(m: u32, lambda: u32, q: &[i64], order: usize) -> bool {
    assert_eq!(q.len(), m as usize, "need one q component per dimension");
    let inner = q.iter().fold(TruncatedSeries::zero(order), |acc, &qj| {
        &acc + &neg_log_one_minus(qj, order)
    });
    let lhs = inner.scale(&rat(lambda)).exp();
    let rhs = q.iter().fold(TruncatedSeries::one(order), |acc, &qj| {
        let coeffs = (0..=order as u32)
            .map(|a| {
                BigRat::new(rising_factorial(lambda, a), factorial(a))
                    * rat(BigInt::from(qj).pow(a))
            })
            .collect();
        &acc * &TruncatedSeries::from_coeffs(order, coeffs)
    });
    lhs == rhs
}
