//! Circulant matrices and the interaction matrix of the regular polygon.
//!
//! A circulant matrix is determined by its first row c = (c_1, ..., c_n):
//! entry (k, j) is c_{(j−k) mod n}. Its eigenvectors are the Fourier vectors
//! ν_k with components (ν_k)_j = exp(2πi(k−1)j/n), j = 1..n, independent of
//! the entries; the matching eigenvalues are DFT sums of the first row. All
//! spectra here are computed by those explicit sums — no general-purpose
//! eigensolver is involved, which is what makes the spectral checks in this
//! crate independent oracles rather than black boxes.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::unity_root;
use crate::kahan::KahanComplexSum;

/// Eigenvalues below this magnitude count as the structural zero mode.
pub const SPECTRUM_ZERO_TOLERANCE: f64 = 1e-10;
/// Eigenvalues above this magnitude count as genuinely nonzero.
pub const SPECTRUM_NONZERO_TOLERANCE: f64 = 1e-6;

/// Largest n for which a dense n×n materialization is allowed.
const DENSE_LIMIT: usize = 64;

/// A circulant matrix stored by its first row.
#[derive(Debug, Clone)]
pub struct CirculantMatrix {
    first_row: Vec<Complex64>,
}

impl CirculantMatrix {
    pub fn new(first_row: Vec<Complex64>) -> Result<Self> {
        if first_row.len() < 2 {
            return Err(Error::domain(format!(
                "circulant matrix needs order at least 2, got {}",
                first_row.len()
            )));
        }
        if first_row
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::domain(
                "circulant first row contains a non-finite entry",
            ));
        }
        Ok(CirculantMatrix { first_row })
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[Complex64] {
        &self.first_row
    }

    /// Entry (k, j), 1-based: first_row[(j − k) mod n].
    pub fn entry(&self, k: usize, j: usize) -> Result<Complex64> {
        let n = self.n();
        if k < 1 || k > n || j < 1 || j > n {
            return Err(Error::domain(format!(
                "entry ({k}, {j}) out of range for order {n}"
            )));
        }
        let offset = (j as i64 - k as i64).rem_euclid(n as i64) as usize;
        Ok(self.first_row[offset])
    }

    /// Eigenvalue λ_k = Σ_{j=1}^{n} c_{1,j} exp(2πi(k−1)(j−1)/n), 1-based k.
    pub fn eigenvalue(&self, k: usize) -> Result<Complex64> {
        let n = self.n();
        if k < 1 || k > n {
            return Err(Error::domain(format!(
                "eigenvalue index {k} out of range for order {n}"
            )));
        }
        let mut sum = KahanComplexSum::default();
        for (j, c) in self.first_row.iter().enumerate() {
            sum.add(c * unity_root(n, ((k - 1) * j) as i64));
        }
        Ok(sum.value())
    }

    /// All eigenvalues λ_1..λ_n in index order.
    pub fn spectrum(&self) -> Vec<Complex64> {
        (1..=self.n())
            .map(|k| self.eigenvalue(k).expect("k in range"))
            .collect()
    }

    /// Matrix–vector product, O(n²) directly from the circulant structure.
    pub fn mul_vec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n();
        if v.len() != n {
            return Err(Error::domain(format!(
                "vector length {} does not match order {n}",
                v.len()
            )));
        }
        Ok((0..n)
            .map(|k| {
                let mut sum = KahanComplexSum::default();
                for (j, x) in v.iter().enumerate() {
                    let offset = (j as i64 - k as i64).rem_euclid(n as i64) as usize;
                    sum.add(self.first_row[offset] * x);
                }
                sum.value()
            })
            .collect())
    }

    /// Dense n×n materialization, for inspection only (n ≤ 64).
    pub fn to_dense(&self) -> Result<Vec<Vec<Complex64>>> {
        let n = self.n();
        if n > DENSE_LIMIT {
            return Err(Error::domain(format!(
                "dense materialization is limited to order {DENSE_LIMIT}, got {n}"
            )));
        }
        Ok((1..=n)
            .map(|k| {
                (1..=n)
                    .map(|j| self.entry(k, j).expect("in range"))
                    .collect()
            })
            .collect())
    }

    /// Spectrum plus the Fourier coefficients of `v` in the eigenbasis.
    pub fn decompose(&self, v: &[Complex64]) -> Result<SpectralDecomposition> {
        let coefficients = fourier_coefficients(self.n(), v)?;
        Ok(SpectralDecomposition {
            eigenvalues: self.spectrum(),
            coefficients: Some(coefficients),
        })
    }
}

/// Eigenvalues of a circulant matrix, optionally with the coefficients of a
/// vector expanded in the shared Fourier eigenbasis.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub coefficients: Option<Vec<Complex64>>,
}

/// Fourier eigenvector ν_k of order n: components exp(2πi(k−1)j/n), j = 1..n.
/// ν_1 is the all-ones vector; the last component of every ν_k is 1.
pub fn eigenvector(n: usize, k: usize) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::domain(format!("order must be at least 2, got {n}")));
    }
    if k < 1 || k > n {
        return Err(Error::domain(format!(
            "eigenvector index {k} out of range for order {n}"
        )));
    }
    Ok((1..=n)
        .map(|j| unity_root(n, ((k - 1) * j) as i64))
        .collect())
}

/// Coefficients α_k = ν̄_kᵀ v / n of `v` in the Fourier basis, so that
/// v = Σ_k α_k ν_k.
pub fn fourier_coefficients(n: usize, v: &[Complex64]) -> Result<Vec<Complex64>> {
    if n < 2 {
        return Err(Error::domain(format!("order must be at least 2, got {n}")));
    }
    if v.len() != n {
        return Err(Error::domain(format!(
            "vector length {} does not match order {n}",
            v.len()
        )));
    }
    Ok((1..=n)
        .map(|k| {
            let mut sum = KahanComplexSum::default();
            for (j, x) in v.iter().enumerate() {
                // conj((ν_k)_{j+1}) = exp(−2πi(k−1)(j+1)/n)
                sum.add(x * unity_root(n, -((k - 1) as i64) * (j as i64 + 1)));
            }
            sum.value() / n as f64
        })
        .collect())
}

/// Inverse of [`fourier_coefficients`]: v_j = Σ_k α_k (ν_k)_j.
pub fn reconstruct(coefficients: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = coefficients.len();
    if n < 2 {
        return Err(Error::domain(format!("order must be at least 2, got {n}")));
    }
    Ok((1..=n)
        .map(|j| {
            let mut sum = KahanComplexSum::default();
            for (k, alpha) in coefficients.iter().enumerate() {
                sum.add(alpha * unity_root(n, (k * j) as i64));
            }
            sum.value()
        })
        .collect())
}

/// The interaction matrix A of the regular unit n-gon: circulant with first
/// row a_{1,1} = 0 and a_{1,m+1} = (1 − q_m)/|1 − q_m|³ for m = 1..n−1, where
/// q_m = exp(2πim/n).
///
/// Its leading eigenvalue λ_1 equals the cosecant sum (1/4)Σ_{j=1}^{n-1}
/// csc(jπ/n), which ties the spectral code to the scalar identities; for odd
/// n the eigenvalue of index (n+1)/2 vanishes identically.
pub fn interaction_matrix(n: usize) -> Result<CirculantMatrix> {
    if n < 2 {
        return Err(Error::domain(format!(
            "polygon needs at least 2 vertices, got {n}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let mut first_row = vec![Complex64::new(0.0, 0.0)];
    for m in 1..n {
        let d = one - unity_root(n, m as i64);
        first_row.push(d / d.norm().powi(3));
    }
    CirculantMatrix::new(first_row)
}

/// One eigenvalue of the interaction matrix together with its expected and
/// observed classification.
#[derive(Debug, Clone)]
pub struct SpectrumEntry {
    pub k: usize,
    pub eigenvalue: Complex64,
    /// True when the structure forces λ_k = 0 (odd n, k = (n+1)/2).
    pub expect_zero: bool,
    pub pass: bool,
}

/// Classification of λ_1..λ_{n−1} of the interaction matrix.
#[derive(Debug, Clone)]
pub struct SpectrumCheck {
    pub n: usize,
    pub entries: Vec<SpectrumEntry>,
    pub pass: bool,
}

/// Checks the interaction-matrix spectrum for n ≥ 4: λ_k for k = 1..n−1 must
/// be nonzero (magnitude above [`SPECTRUM_NONZERO_TOLERANCE`]) except the
/// structural zero at k = (n+1)/2 for odd n (magnitude below
/// [`SPECTRUM_ZERO_TOLERANCE`]).
pub fn interaction_spectrum_check(n: usize) -> Result<SpectrumCheck> {
    if n < 4 {
        return Err(Error::domain(format!(
            "spectrum classification is defined for n >= 4, got {n}"
        )));
    }
    let a = interaction_matrix(n)?;
    let entries: Vec<SpectrumEntry> = (1..n)
        .map(|k| {
            let eigenvalue = a.eigenvalue(k).expect("k in range");
            let expect_zero = n % 2 == 1 && k == n.div_ceil(2);
            let pass = if expect_zero {
                eigenvalue.norm() < SPECTRUM_ZERO_TOLERANCE
            } else {
                eigenvalue.norm() > SPECTRUM_NONZERO_TOLERANCE
            };
            SpectrumEntry {
                k,
                eigenvalue,
                expect_zero,
                pass,
            }
        })
        .collect();
    let pass = entries.iter().all(|e| e.pass);
    Ok(SpectrumCheck { n, entries, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn leading_eigenvalue_is_the_row_sum() {
        let m = CirculantMatrix::new(vec![c(2.0, 0.0), c(-1.0, 0.5), c(0.25, 0.0)]).unwrap();
        let expect = c(2.0, 0.0) + c(-1.0, 0.5) + c(0.25, 0.0);
        assert!((m.eigenvalue(1).unwrap() - expect).norm() < 1e-15);
    }

    #[test]
    fn shift_matrix_spectrum_is_the_unit_circle() {
        // First row (0, 1, 0, 0): eigenvalues are the fourth roots of unity
        // taken at exponent k-1, so λ_3 = exp(2πi·2·1/4) = -1.
        let m =
            CirculantMatrix::new(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((m.eigenvalue(3).unwrap() - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((m.eigenvalue(2).unwrap() - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn entry_uses_the_difference_mod_n() {
        let m = CirculantMatrix::new(vec![c(10.0, 0.0), c(20.0, 0.0), c(30.0, 0.0)]).unwrap();
        assert_eq!(m.entry(1, 1).unwrap(), c(10.0, 0.0));
        assert_eq!(m.entry(2, 1).unwrap(), c(30.0, 0.0)); // (1-2) mod 3 = 2
        assert_eq!(m.entry(3, 1).unwrap(), c(20.0, 0.0));
        assert!(m.entry(0, 1).is_err());
        assert!(m.entry(1, 4).is_err());
    }

    #[test]
    fn dense_form_matches_entry_and_respects_the_size_cap() {
        let m = CirculantMatrix::new(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
        let dense = m.to_dense().unwrap();
        for k in 1..=3 {
            for j in 1..=3 {
                assert_eq!(dense[k - 1][j - 1], m.entry(k, j).unwrap());
            }
        }
        let big = CirculantMatrix::new(vec![c(0.0, 0.0); 65]).unwrap();
        assert!(matches!(big.to_dense(), Err(Error::Domain(_))));
    }

    #[test]
    fn first_eigenvector_is_all_ones() {
        let v = eigenvector(4, 1).unwrap();
        assert!(v.iter().all(|x| (x - c(1.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn second_eigenvector_of_order_four() {
        // ν_2 components exp(2πij/4) for j = 1..4: (i, -1, -i, 1).
        let v = eigenvector(4, 2).unwrap();
        assert!((v[0] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((v[1] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!((v[2] - c(0.0, -1.0)).norm() < 1e-15);
        assert_eq!(v[3], c(1.0, 0.0));
    }

    #[test]
    fn eigenvectors_are_orthogonal() {
        let n = 6;
        for k in 1..=n {
            for l in (k + 1)..=n {
                let a = eigenvector(n, k).unwrap();
                let b = eigenvector(n, l).unwrap();
                let dot: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
                assert!(dot.norm() < 1e-13, "k={k} l={l} dot={dot}");
            }
        }
    }

    #[test]
    fn coefficients_of_an_eigenvector_are_a_basis_vector() {
        let n = 5;
        let alpha = fourier_coefficients(n, &eigenvector(n, 2).unwrap()).unwrap();
        for (i, a) in alpha.iter().enumerate() {
            let expect = if i == 1 { 1.0 } else { 0.0 };
            assert!((a - c(expect, 0.0)).norm() < 1e-14, "component {i}: {a}");
        }
        let ones = fourier_coefficients(6, &[c(1.0, 0.0); 6]).unwrap();
        assert!((ones[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(ones[1..].iter().all(|a| a.norm() < 1e-14));
    }

    #[test]
    fn alternating_vector_splits_into_mean_and_sign_mode() {
        // v = (3,1,3,1) over order 4. Direct inner products with the explicit
        // eigenvectors ν_1 = (1,1,1,1), ν_2 = (i,-1,-i,1), ν_3 = (-1,1,-1,1),
        // ν_4 = (-i,-1,i,1) give α = (2, 0, -1, 0): v = 2ν_1 − ν_3.
        let v = vec![c(3.0, 0.0), c(1.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)];
        let alpha = fourier_coefficients(4, &v).unwrap();
        assert!((alpha[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!(alpha[1].norm() < 1e-15);
        assert!((alpha[2] - c(-1.0, 0.0)).norm() < 1e-15);
        assert!(alpha[3].norm() < 1e-15);
        // And explicitly: 2ν_1 − ν_3 reproduces v.
        let nu1 = eigenvector(4, 1).unwrap();
        let nu3 = eigenvector(4, 3).unwrap();
        for j in 0..4 {
            assert!((2.0 * nu1[j] - nu3[j] - v[j]).norm() < 1e-15);
        }
    }

    #[test]
    fn decompose_carries_both_spectrum_and_coefficients() {
        let m =
            CirculantMatrix::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let v = vec![c(3.0, 0.0), c(1.0, 0.0), c(3.0, 0.0), c(1.0, 0.0)];
        let d = m.decompose(&v).unwrap();
        assert_eq!(d.eigenvalues.len(), 4);
        let alpha = d.coefficients.unwrap();
        assert!((alpha[0] - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn interaction_matrix_of_the_digon() {
        // n = 2: the only off-diagonal distance is 2, so the first row is
        // (0, 2/8) = (0, 1/4).
        let a = interaction_matrix(2).unwrap();
        assert!(a.first_row()[0].norm() < 1e-15);
        assert!((a.first_row()[1] - c(0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn interaction_matrix_entries_of_the_square() {
        let a = interaction_matrix(4).unwrap();
        // (1,3): opposite vertices, distance 2, direction (1 - q_2) = (2, 0).
        assert!((a.entry(1, 3).unwrap() - c(0.25, 0.0)).norm() < 1e-15);
        // (1,2): 1 - q_1 = (1, -1), |.| = √2, so (1,-1)/(2√2).
        let s = 1.0 / (2.0 * 2f64.sqrt());
        assert!((a.entry(1, 2).unwrap() - c(s, -s)).norm() < 1e-15);
    }

    #[test]
    fn leading_interaction_eigenvalue_is_real_and_matches_the_cosecant_sum() {
        for n in 2..=32 {
            let lambda = interaction_matrix(n).unwrap().eigenvalue(1).unwrap();
            let csc: f64 = (1..n)
                .map(|j| 1.0 / (j as f64 * std::f64::consts::PI / n as f64).sin())
                .sum::<f64>()
                / 4.0;
            assert!((lambda.re - csc).abs() < 1e-12, "n={n}");
            assert!(lambda.im.abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn odd_polygons_have_one_structural_zero_mode() {
        let a5 = interaction_matrix(5).unwrap();
        assert!(a5.eigenvalue(3).unwrap().norm() < 1e-13);
        for k in [1, 2, 4] {
            assert!(a5.eigenvalue(k).unwrap().norm() > 1e-3, "k={k}");
        }
        let a7 = interaction_matrix(7).unwrap();
        assert!(a7.eigenvalue(4).unwrap().norm() < 1e-12);
    }

    #[test]
    fn spectrum_check_classifies_odd_and_even_orders() {
        let five = interaction_spectrum_check(5).unwrap();
        assert!(five.pass);
        assert_eq!(five.entries.len(), 4);
        assert!(five.entries[2].expect_zero); // k = 3
        assert!(!five.entries[0].expect_zero);

        let four = interaction_spectrum_check(4).unwrap();
        assert!(four.pass);
        assert!(four.entries.iter().all(|e| !e.expect_zero));
        assert!(four.entries.iter().all(|e| e.eigenvalue.norm() > 1e-3));

        assert!(matches!(
            interaction_spectrum_check(3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn spectrum_check_passes_for_a_range_of_orders() {
        for n in 4..=24 {
            assert!(interaction_spectrum_check(n).unwrap().pass, "n={n}");
        }
    }

    #[test]
    fn mul_vec_matches_the_dense_product() {
        let m = CirculantMatrix::new(vec![c(1.0, 0.5), c(-2.0, 0.0), c(0.0, 3.0), c(0.5, 0.0)])
            .unwrap();
        let v = vec![c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 2.0), c(3.0, -1.0)];
        let fast = m.mul_vec(&v).unwrap();
        let dense = m.to_dense().unwrap();
        for k in 0..4 {
            let direct: Complex64 = (0..4).map(|j| dense[k][j] * v[j]).sum();
            assert!((fast[k] - direct).norm() < 1e-14);
        }
        assert!(m.mul_vec(&v[..3]).is_err());
    }

    proptest! {
        #[test]
        fn eigen_equation_holds_for_random_circulants(
            n in 2usize..=16,
            seed in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 16),
        ) {
            let first_row: Vec<Complex64> =
                seed.iter().take(n).map(|(re, im)| c(*re, *im)).collect();
            let m = CirculantMatrix::new(first_row).unwrap();
            let scale: f64 = m.first_row().iter().map(|x| x.norm()).sum::<f64>().max(1.0);
            for k in 1..=n {
                let nu = eigenvector(n, k).unwrap();
                let lambda = m.eigenvalue(k).unwrap();
                let product = m.mul_vec(&nu).unwrap();
                for j in 0..n {
                    prop_assert!((product[j] - lambda * nu[j]).norm() < 1e-11 * scale);
                }
            }
        }

        #[test]
        fn decomposition_round_trips(
            n in 2usize..=12,
            seed in proptest::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 12),
        ) {
            let v: Vec<Complex64> = seed.iter().take(n).map(|(re, im)| c(*re, *im)).collect();
            let alpha = fourier_coefficients(n, &v).unwrap();
            let back = reconstruct(&alpha).unwrap();
            let scale: f64 = v.iter().map(|x| x.norm()).fold(1.0, f64::max);
            for j in 0..n {
                prop_assert!((back[j] - v[j]).norm() < 1e-12 * scale);
            }
        }

        #[test]
        fn spectral_multiply_matches_direct_multiply(
            n in 2usize..=10,
            row_seed in proptest::collection::vec(-3.0f64..3.0, 10),
            vec_seed in proptest::collection::vec(-3.0f64..3.0, 10),
        ) {
            // Multiplying through the eigenbasis (scale coefficients by the
            // eigenvalues, reconstruct) must agree with direct multiplication.
            let m = CirculantMatrix::new(
                row_seed.iter().take(n).map(|x| c(*x, 0.0)).collect()
            ).unwrap();
            let v: Vec<Complex64> = vec_seed.iter().take(n).map(|x| c(*x, 0.0)).collect();
            let direct = m.mul_vec(&v).unwrap();
            let alpha = fourier_coefficients(n, &v).unwrap();
            let scaled: Vec<Complex64> = alpha
                .iter()
                .zip(m.spectrum())
                .map(|(a, l)| a * l)
                .collect();
            let via_basis = reconstruct(&scaled).unwrap();
            let scale: f64 = direct.iter().map(|x| x.norm()).fold(1.0, f64::max);
            for j in 0..n {
                prop_assert!((via_basis[j] - direct[j]).norm() < 1e-12 * scale);
            }
        }
    }
}
