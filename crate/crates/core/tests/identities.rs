use hypermap_core::henum::{h_r_point, h_r_special_11m, h_r_special_1mn, totals};
use hypermap_core::oracle::{check_factorization, check_nested_series};
use hypermap_core::{FGrid, HGrid};

fn partitions(r: u32, max: u32) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=r.min(max)).rev() {
        for mut rest in partitions(r - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn partition_counts() {
    let counts: Vec<usize> = (1..=6).map(|r| partitions(r, r).len()).collect();
    assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
}

#[test]
fn factorization_for_every_partition_up_to_5() {
    for r in 1..=5 {
        for p in partitions(r, r) {
            let mut roots = p.clone();
            roots.dedup();
            for root in roots {
                let i = p.iter().position(|&x| x == root).unwrap();
                let mut ordered = p.clone();
                let part = ordered.remove(i);
                ordered.insert(0, part);
                for m in 1..=3 {
                    for n in 1..=3 {
                        assert!(
                            check_factorization(&ordered, m, n),
                            "{ordered:?} at ({m},{n})"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn nested_series_identity() {
    for m in 1..=3u32 {
        for lambda in 0..=3 {
            let mut q = vec![0i64; m as usize];
            loop {
                assert!(check_nested_series(m, lambda, &q, 10), "{m} {lambda} {q:?}");
                let Some(i) = q.iter().position(|&x| x < 3) else {
                    break;
                };
                q[i] += 1;
                q[..i].iter_mut().for_each(|x| *x = 0);
            }
        }
    }
}

#[test]
fn special_cases_agree_with_general_path() {
    let f = FGrid::new(9);
    let h = HGrid::new();
    for r in 1..=9 {
        for m in 1..=9 {
            assert_eq!(
                h_r_special_11m(r, m),
                h_r_point(r, 1, 1, m, &f, &h).unwrap()
            );
            for n in 1..=9 {
                let want = h_r_point(r, 1, m, n, &f, &h).unwrap();
                assert_eq!(h_r_special_1mn(r, m, n), want, "r={r} m={m} n={n}");
                // argument order does not matter
                assert_eq!(h_r_point(r, n, 1, m, &f, &h).unwrap(), want);
            }
        }
    }
}

#[test]
fn totals_prefix() {
    let t: Vec<String> = totals(13).iter().map(ToString::to_string).collect();
    assert_eq!(&t[..5], ["1", "3", "13", "71", "461"]);
    assert_eq!(t[12], "73943424413");
}
