//! Kahan compensated summation.
//!
//! The identity sums and DFT eigenvalue sums in this crate cancel heavily;
//! compensated summation keeps their error near one ulp of the result instead
//! of growing with the number of terms.

use num_complex::Complex64;

/// Running compensated sum of `f64` terms.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub(crate) fn add(&mut self, term: f64) {
        let y = term - self.compensation;
        let t = self.sum + y;
        self.compensation = (t - self.sum) - y;
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum
    }
}

/// Compensated sum of complex terms (independent real/imaginary accumulators).
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanComplexSum {
    re: KahanSum,
    im: KahanSum,
}

impl KahanComplexSum {
    pub(crate) fn add(&mut self, term: Complex64) {
        self.re.add(term.re);
        self.im.add(term.im);
    }

    pub(crate) fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}
