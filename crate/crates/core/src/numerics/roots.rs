/// Bracket width at which bisection stops.
pub const BISECTION_TOL: f64 = 1e-10;

const MIN_SEPARATION: f64 = 1e-8;
const MAX_BISECTIONS: usize = 200;

/// Finds every sign change of `f` on a uniform grid of `n_scan` points over
/// `[lo, hi]` and refines each by bisection. Returns roots in ascending order,
/// with roots closer than 1e-8 merged.
///
/// Panics if `lo >= hi` or `n_scan < 2`.
pub fn bracket_roots<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n_scan: usize) -> Vec<f64> {
    assert!(lo < hi, "bracket_roots needs lo < hi");
    assert!(n_scan >= 2, "bracket_roots needs at least two scan points");

    let step = (hi - lo) / (n_scan - 1) as f64;
    let grid = |i: usize| if i == n_scan - 1 { hi } else { lo + step * i as f64 };

    let mut roots = Vec::new();
    let mut a = lo;
    let mut fa = f(a);
    for i in 1..n_scan {
        let b = grid(i);
        let fb = f(b);
        if fa == 0.0 {
            roots.push(a);
        } else if fb != 0.0 && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(&f, a, b, fa));
        }
        a = b;
        fa = fb;
    }
    if fa == 0.0 {
        roots.push(a);
    }

    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|b, a| (*b - *a).abs() < MIN_SEPARATION);
    roots
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..MAX_BISECTIONS {
        if b - a <= BISECTION_TOL {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn linear_root() {
        let r = bracket_roots(|x| x - 1.0, 0.0, 2.0, 10);
        assert_eq!(r.len(), 1);
        assert!((r[0] - 1.0).abs() <= BISECTION_TOL);
    }

    #[test]
    fn no_real_roots() {
        assert!(bracket_roots(|x| x * x + 1.0, -3.0, 3.0, 100).is_empty());
    }

    #[test]
    fn root_on_grid_point_counted_once() {
        let r = bracket_roots(|x| x - 1.0, 0.0, 2.0, 3);
        assert_eq!(r, vec![1.0]);
        let r = bracket_roots(|x| x, 0.0, 1.0, 5);
        assert_eq!(r, vec![0.0]);
    }

    #[test]
    fn several_roots_sorted() {
        let r = bracket_roots(f64::sin, 0.5, 10.0, 200);
        assert_eq!(r.len(), 3);
        for (got, k) in r.iter().zip(1..) {
            assert!((got - k as f64 * std::f64::consts::PI).abs() <= 1e-9);
        }
    }

    proptest! {
        #[test]
        fn cubic_roots_found(a in -4.0f64..-0.5, b in -0.3f64..0.3, c in 0.5f64..4.0) {
            let r = bracket_roots(|x| (x - a) * (x - b) * (x - c), -5.0, 5.0, 101);
            prop_assert_eq!(r.len(), 3);
            prop_assert!(r.windows(2).all(|w| w[1] - w[0] >= 1e-8));
            for (got, want) in r.iter().zip([a, b, c]) {
                prop_assert!((got - want).abs() <= 1e-9);
            }
        }
    }
}
