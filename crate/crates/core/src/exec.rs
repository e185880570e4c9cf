//! Execution policy for the data-parallel phases.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] fans work
//! out over the current rayon pool. Without it both policies run on the
//! calling thread, so callers never need their own `cfg` switches.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    /// True when this policy will actually use more than the calling thread.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Order-preserving map over a slice.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Fallible order-preserving map; the first error (in item order for the
    /// sequential policy, any error for the parallel one) is returned.
    pub fn try_map<T, R, E, F>(self, items: &[T], f: F) -> Result<Vec<R>, E>
    where
        T: Sync,
        R: Send,
        E: Send,
        F: Fn(&T) -> Result<R, E> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Map each item to a partial result and fold the partials together.
    /// `combine` must be associative and `identity` its neutral element.
    pub fn map_reduce<T, R, F, I, C>(self, items: &[T], map: F, identity: I, combine: C) -> R
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
        I: Fn() -> R + Sync + Send,
        C: Fn(R, R) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self == Exec::Parallel {
            return items.par_iter().map(map).reduce(identity, combine);
        }
        items.iter().map(map).fold(identity(), combine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies_agree() {
        let xs: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.map(&xs, |x| x * x);
        let par = Exec::Parallel.map(&xs, |x| x * x);
        assert_eq!(seq, par);
        let s1 = Exec::Sequential.map_reduce(&xs, |x| *x, || 0, |a, b| a + b);
        let s2 = Exec::Parallel.map_reduce(&xs, |x| *x, || 0, |a, b| a + b);
        assert_eq!(s1, 499_500);
        assert_eq!(s1, s2);
    }

    #[test]
    fn try_map_surfaces_errors() {
        let xs = [1, 2, 3];
        let r: Result<Vec<i32>, String> =
            Exec::Parallel.try_map(&xs, |&x| if x == 2 { Err("two".into()) } else { Ok(x) });
        assert_eq!(r, Err("two".to_string()));
    }
}
