//! Scalar maximization by golden-section search.

use crate::{Error, Result};

const INV_PHI: f64 = 0.618_033_988_749_894_8;
const MAX_ITERATIONS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Maximum {
    pub x: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Maximizes a unimodal `f` on `[lo, hi]`, stopping once the bracket is
/// narrower than `rel_tol` times the bracket midpoint.
pub fn golden_section_max<F>(mut f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<Maximum>
where
    F: FnMut(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidArgument(format!("bad bracket [{lo}, {hi}]")));
    }
    if !(rel_tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be > 0, got {rel_tol}")));
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while (b - a) > rel_tol * (0.5 * (a + b)).abs() && iterations < MAX_ITERATIONS {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let (x, value) = if fc >= fd { (c, fc) } else { (d, fd) };
    Ok(Maximum { x, value, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_parabola_peak() {
        let m = golden_section_max(|x| -(x - 1.3).powi(2), 0.0, 5.0, 1e-9).unwrap();
        assert!((m.x - 1.3).abs() < 1e-8);
    }

    #[test]
    fn peak_at_boundary() {
        let m = golden_section_max(|x| x, 0.0, 2.0, 1e-8).unwrap();
        assert!((m.x - 2.0).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_brackets() {
        assert!(golden_section_max(|x| x, 1.0, 1.0, 1e-6).is_err());
        assert!(golden_section_max(|x| x, 0.0, f64::INFINITY, 1e-6).is_err());
        assert!(golden_section_max(|x| x, 0.0, 1.0, 0.0).is_err());
    }
}
