//! Linear companion problem `h^{s+1} = M h^s` with zero boundary, where `M`
//! averages the `2d` axis neighbours.
//!
//! The discrete sine modes `prod_k sin(m_k pi n_k / N_k)` indexed by interior
//! multi-indices `m` are eigenvectors of `M` with eigenvalues
//! `c_m = (1/d) sum_k cos(m_k pi / N_k)`, so
//!
//! ```text
//! h^s_n = sum_m B_m c_m^s prod_k sin(m_k pi n_k / N_k).
//! ```
//!
//! Coefficients are recovered by orthogonality,
//! `sum_{n=1}^{N-1} sin(m pi n / N) sin(m' pi n / N) = (N/2) delta_{m m'}`,
//! applied axis by axis. Transforms are plain `O(M^2)` matrix applications.

use crate::domain::{BoxDomain, Site};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::scalar::Scalar;

/// `sin(r pi / n)` with the exact zeros, ones and sign symmetries of the sine.
fn sin_pi_frac<T: Scalar>(r: usize, n: usize) -> T {
    let r = r % (2 * n);
    if r >= n {
        return -sin_pi_frac::<T>(r - n, n);
    }
    if r == 0 {
        return T::zero();
    }
    if 2 * r == n {
        return T::one();
    }
    let r = if 2 * r > n { n - r } else { r };
    (T::PI() * T::of_usize(r) / T::of_usize(n)).sin()
}

/// `cos(m pi / n)` for `0 < m < n`, exactly antisymmetric about `m = n/2`.
fn cos_pi_frac<T: Scalar>(m: usize, n: usize) -> T {
    if 2 * m == n {
        T::zero()
    } else if 2 * m > n {
        -cos_pi_frac::<T>(n - m, n)
    } else {
        (T::PI() * T::of_usize(m) / T::of_usize(n)).cos()
    }
}

/// Eigenvalue `c_m = (1/d) sum_k cos(m_k pi / N_k)` of the averaging operator.
pub fn eigenvalue<T: Scalar>(domain: &BoxDomain, mode: &[usize]) -> Result<T> {
    domain.require_interior(mode)?;
    Ok(eigenvalue_unchecked(domain, mode))
}

fn eigenvalue_unchecked<T: Scalar>(domain: &BoxDomain, mode: &[usize]) -> T {
    let sum = mode
        .iter()
        .zip(domain.extents())
        .fold(T::zero(), |acc, (&m, &n)| acc + cos_pi_frac::<T>(m, n));
    sum / T::of_usize(domain.dims())
}

/// Coefficients `B_m` of a field in the sine basis, one per interior mode in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs<T> {
    domain: BoxDomain,
    coeffs: Vec<T>,
}

impl<T: Scalar> SpectralCoeffs<T> {
    pub fn new(domain: &BoxDomain, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != domain.interior_count() {
            return Err(Error::ShapeMismatch {
                expected: domain.interior_count(),
                got: coeffs.len(),
            });
        }
        Ok(Self {
            domain: domain.clone(),
            coeffs,
        })
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn as_slice(&self) -> &[T] {
        &self.coeffs
    }

    pub fn get(&self, mode: &[usize]) -> Result<T> {
        self.domain.require_interior(mode)?;
        let pos = self
            .domain
            .interior_flat()
            .binary_search(&self.domain.index_of(mode)?)
            .expect("interior site is enumerated");
        Ok(self.coeffs[pos])
    }

    /// `max_m |B_m|`.
    pub fn b_max(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |m, b| m.max(b.abs()))
    }
}

/// Eigenvalues and sine tables for one domain.
#[derive(Debug, Clone)]
pub struct ModeTable<T> {
    domain: BoxDomain,
    /// Interior multi-indices; these double as the mode labels.
    sites: Vec<Site>,
    eigenvalues: Vec<T>,
    /// Per axis, `sines[k][m * (N_k + 1) + n] = sin(m pi n / N_k)`.
    sines: Vec<Vec<T>>,
    normalization: T,
}

impl<T: Scalar> ModeTable<T> {
    pub fn new(domain: &BoxDomain) -> Self {
        let sites = domain.interior_sites();
        let eigenvalues = sites
            .iter()
            .map(|m| eigenvalue_unchecked(domain, m))
            .collect();
        let sines = domain
            .extents()
            .iter()
            .map(|&n| {
                let mut table = Vec::with_capacity((n + 1) * (n + 1));
                for m in 0..=n {
                    for j in 0..=n {
                        table.push(sin_pi_frac::<T>(m * j, n));
                    }
                }
                table
            })
            .collect();
        let normalization = domain
            .extents()
            .iter()
            .fold(T::one(), |acc, &n| acc * T::of(2.0) / T::of_usize(n));
        Self {
            domain: domain.clone(),
            sites,
            eigenvalues,
            sines,
            normalization,
        }
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    /// Mode labels in lexicographic order.
    pub fn modes(&self) -> &[Site] {
        &self.sites
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    /// `max_m |c_m|`, strictly below 1.
    pub fn spectral_radius(&self) -> T {
        self.eigenvalues
            .iter()
            .fold(T::zero(), |m, c| m.max(c.abs()))
    }

    /// `prod_k sin(mode_k pi site_k / N_k)`.
    #[inline]
    fn basis(&self, mode: &[usize], site: &[usize]) -> T {
        let mut v = T::one();
        for (k, table) in self.sines.iter().enumerate() {
            let stride = self.domain.extents()[k] + 1;
            v = v * table[mode[k] * stride + site[k]];
        }
        v
    }

    /// The field of a single sine mode (zero boundary).
    pub fn mode_field(&self, mode: &[usize]) -> Result<Field<T>> {
        self.domain.require_interior(mode)?;
        Ok(Field::from_interior_fn(&self.domain, |site| {
            self.basis(mode, site)
        }))
    }

    /// Coefficients `B` with `a_n = sum_m B_m prod_k sin(m_k pi n_k / N_k)` on the interior.
    ///
    /// Boundary values of `a` are ignored. The interpolation residual is
    /// checked after the transform.
    pub fn analyze(&self, a: &Field<T>) -> Result<SpectralCoeffs<T>> {
        self.domain.require_same(a.domain())?;
        a.require_finite()?;
        let interior = a.interior_values();
        let coeffs: Vec<T> = self
            .sites
            .iter()
            .map(|mode| {
                let dot = self
                    .sites
                    .iter()
                    .zip(&interior)
                    .fold(T::zero(), |acc, (site, &v)| {
                        acc + v * self.basis(mode, site)
                    });
                dot * self.normalization
            })
            .collect();
        let coeffs = SpectralCoeffs::new(&self.domain, coeffs)?;

        let scale = interior.iter().fold(T::one(), |m, v| m.max(v.abs()));
        let tolerance = T::epsilon() * T::of(1024.0) * T::of_usize(self.len()) * scale;
        let rebuilt = self.synthesize_interior(&coeffs, 0);
        let residual = rebuilt
            .iter()
            .zip(&interior)
            .fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()));
        if residual.is_nan() || residual > tolerance {
            return Err(Error::SingularTransform {
                residual: residual.as_f64(),
                tolerance: tolerance.as_f64(),
            });
        }
        Ok(coeffs)
    }

    /// Closed-form linear solution `h^s` from its coefficients.
    pub fn synthesize(&self, coeffs: &SpectralCoeffs<T>, s: usize) -> Result<Field<T>> {
        self.domain.require_same(coeffs.domain())?;
        Field::from_interior(&self.domain, &self.synthesize_interior(coeffs, s))
    }

    fn synthesize_interior(&self, coeffs: &SpectralCoeffs<T>, s: usize) -> Vec<T> {
        let weights: Vec<T> = coeffs
            .as_slice()
            .iter()
            .zip(&self.eigenvalues)
            .map(|(&b, &c)| b * c.pow_step(s))
            .collect();
        self.sites
            .iter()
            .map(|site| {
                self.sites
                    .iter()
                    .zip(&weights)
                    .fold(T::zero(), |acc, (mode, &w)| {
                        acc + w * self.basis(mode, site)
                    })
            })
            .collect()
    }
}

/// One application of the averaging operator; the boundary stays zero.
pub fn apply_m<T: Scalar>(h: &Field<T>) -> Result<Field<T>> {
    h.require_zero_boundary()?;
    Ok(apply_m_unchecked(h))
}

pub(crate) fn apply_m_unchecked<T: Scalar>(h: &Field<T>) -> Field<T> {
    let domain = h.domain();
    let mut next = Field::zeros(domain);
    for &flat in domain.interior_flat() {
        *next.at_mut(flat) = h.neighbor_average_flat(flat);
    }
    next
}

/// `steps` applications of [`apply_m`].
pub fn step_linear_direct<T: Scalar>(a: &Field<T>, steps: usize) -> Result<Field<T>> {
    a.require_zero_boundary()?;
    let mut h = a.clone();
    for _ in 0..steps {
        h = apply_m_unchecked(&h);
    }
    Ok(h)
}
