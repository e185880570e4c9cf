//! Small permutations and 3-constellations.
//!
//! Darts are labelled `0..r` internally; dart `0` is the root.

use std::fmt;

/// A bijection on `0..len`, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(len: usize) -> Self {
        assert!(len <= u8::MAX as usize);
        Perm {
            images: (0..len as u8).collect(),
        }
    }

    /// Returns `None` unless `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen.get_mut(i as usize)?;
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(Perm { images })
    }

    /// The canonical permutation with consecutive cycles of the given
    /// lengths: `(0 … r₁−1)(r₁ … r₁+r₂−1)…`.
    pub fn from_cycle_type(lengths: &[u32]) -> Self {
        let total: u32 = lengths.iter().sum();
        let mut images = Vec::with_capacity(total as usize);
        let mut start = 0u8;
        for &len in lengths {
            assert!(len >= 1, "cycle lengths must be positive");
            let len = len as u8;
            for i in 0..len {
                images.push(start + (i + 1) % len);
            }
            start += len;
        }
        Perm { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Perm { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, &j)| i == j as usize)
    }

    pub fn cycle_count(&self) -> u32 {
        cycle_count(&self.images)
    }

    /// Sorted descending cycle lengths.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    /// Every permutation of `0..len` in lexicographic order of image arrays.
    pub fn all(len: usize) -> Vec<Perm> {
        let mut cur: Vec<u8> = (0..len as u8).collect();
        let mut out = vec![Perm {
            images: cur.clone(),
        }];
        while next_permutation(&mut cur) {
            out.push(Perm {
                images: cur.clone(),
            });
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

pub(crate) fn cycle_count(images: &[u8]) -> u32 {
    let mut seen = 0u64;
    let mut cycles = 0;
    for start in 0..images.len() {
        if seen & (1 << start) != 0 {
            continue;
        }
        cycles += 1;
        let mut j = start;
        while seen & (1 << j) == 0 {
            seen |= 1 << j;
            j = images[j] as usize;
        }
    }
    cycles
}

fn next_permutation(v: &mut [u8]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Union–find over at most 64 darts, seeded with the edges `i → ξ(i)` and
/// `i → η(i)`.
pub(crate) fn generates_transitive(a: &[u8], b: &[u8]) -> bool {
    let len = a.len();
    let mut parent = [0u8; 64];
    for (i, p) in parent.iter_mut().enumerate().take(len) {
        *p = i as u8;
    }
    fn find(parent: &mut [u8; 64], mut x: u8) -> u8 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut components = len;
    for i in 0..len {
        for &j in [a[i], b[i]].iter() {
            let (ri, rj) = (find(&mut parent, i as u8), find(&mut parent, j));
            if ri != rj {
                parent[ri as usize] = rj;
                components -= 1;
            }
        }
    }
    components <= 1
}

/// A triple `(ξ, η, χ)` with `ξ ∘ η ∘ χ = id` generating a transitive group.
///
/// Faces, edges and vertices are the cycles of `ξ`, `η` and `χ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constellation {
    xi: Perm,
    eta: Perm,
    chi: Perm,
}

impl Constellation {
    /// Completes `(ξ, η)` with `χ = (ξ ∘ η)⁻¹`; `None` if not transitive.
    pub fn new(xi: Perm, eta: Perm) -> Option<Self> {
        if !generates_transitive(xi.images(), eta.images()) {
            return None;
        }
        let chi = xi.compose(&eta).inverse();
        Some(Constellation { xi, eta, chi })
    }

    pub fn from_parts(xi: Perm, eta: Perm, chi: Perm) -> Option<Self> {
        let c = Constellation { xi, eta, chi };
        c.is_valid().then_some(c)
    }

    pub fn is_valid(&self) -> bool {
        self.xi.compose(&self.eta).compose(&self.chi).is_identity()
            && generates_transitive(self.xi.images(), self.eta.images())
    }

    pub fn darts(&self) -> usize {
        self.xi.len()
    }

    pub fn xi(&self) -> &Perm {
        &self.xi
    }

    pub fn eta(&self) -> &Perm {
        &self.eta
    }

    pub fn chi(&self) -> &Perm {
        &self.chi
    }

    /// `(vertices, edges, faces)`.
    pub fn profile(&self) -> (u32, u32, u32) {
        (
            self.chi.cycle_count(),
            self.eta.cycle_count(),
            self.xi.cycle_count(),
        )
    }

    /// `(ξ, η, χ) ↦ (η, χ, ξ)`; rotates the profile.
    pub fn rotate(&self) -> Self {
        Constellation {
            xi: self.eta.clone(),
            eta: self.chi.clone(),
            chi: self.xi.clone(),
        }
    }

    /// `(ξ, η, χ) ↦ (χ⁻¹, η⁻¹, ξ⁻¹)`; swaps vertex and face counts.
    pub fn reverse(&self) -> Self {
        Constellation {
            xi: self.chi.inverse(),
            eta: self.eta.inverse(),
            chi: self.xi.inverse(),
        }
    }
}
