use crate::domain::{BoxDomain, Site};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Real-valued function on every site of a [`BoxDomain`], boundary included.
#[derive(Debug, Clone, PartialEq)]
pub struct Field<T> {
    domain: BoxDomain,
    values: Vec<T>,
}

impl<T: Scalar> Field<T> {
    pub fn zeros(domain: &BoxDomain) -> Self {
        Self {
            domain: domain.clone(),
            values: vec![T::zero(); domain.site_count()],
        }
    }

    /// Wraps a flat value array in lexicographic site order.
    pub fn from_values(domain: &BoxDomain, values: Vec<T>) -> Result<Self> {
        if values.len() != domain.site_count() {
            return Err(Error::ShapeMismatch {
                expected: domain.site_count(),
                got: values.len(),
            });
        }
        Ok(Self {
            domain: domain.clone(),
            values,
        })
    }

    /// Zero on the boundary, `interior[i]` at the i-th interior site.
    pub fn from_interior(domain: &BoxDomain, interior: &[T]) -> Result<Self> {
        if interior.len() != domain.interior_count() {
            return Err(Error::ShapeMismatch {
                expected: domain.interior_count(),
                got: interior.len(),
            });
        }
        let mut field = Self::zeros(domain);
        for (&flat, &v) in domain.interior_flat().iter().zip(interior) {
            field.values[flat] = v;
        }
        Ok(field)
    }

    /// Evaluates `f` at every site, boundary included.
    pub fn from_fn(domain: &BoxDomain, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let values = domain.sites().map(|site| f(&site)).collect();
        Self {
            domain: domain.clone(),
            values,
        }
    }

    /// Evaluates `f` on interior sites only; the boundary is zero.
    pub fn from_interior_fn(domain: &BoxDomain, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut field = Self::zeros(domain);
        for &flat in domain.interior_flat() {
            field.values[flat] = f(&domain.site_of(flat));
        }
        field
    }

    pub fn domain(&self) -> &BoxDomain {
        &self.domain
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    /// Interior values in lexicographic order.
    pub fn interior_values(&self) -> Vec<T> {
        self.domain
            .interior_flat()
            .iter()
            .map(|&i| self.values[i])
            .collect()
    }

    pub fn get(&self, site: &[usize]) -> Result<T> {
        Ok(self.values[self.domain.index_of(site)?])
    }

    pub fn set(&mut self, site: &[usize], value: T) -> Result<()> {
        let i = self.domain.index_of(site)?;
        self.values[i] = value;
        Ok(())
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, flat: usize) -> &mut T {
        &mut self.values[flat]
    }

    /// Maximum over all of the box (0 for an all-zero field).
    pub fn max_value(&self) -> T {
        self.values.iter().copied().fold(T::neg_infinity(), T::max)
    }

    /// Maximum over interior sites.
    pub fn max_interior(&self) -> T {
        self.domain
            .interior_flat()
            .iter()
            .map(|&i| self.values[i])
            .fold(T::neg_infinity(), T::max)
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    /// Pointwise `factor * self`.
    pub fn scaled(&self, factor: T) -> Self {
        Self {
            domain: self.domain.clone(),
            values: self.values.iter().map(|&v| v * factor).collect(),
        }
    }

    /// `max |self - other|` over the whole box.
    pub fn max_abs_diff(&self, other: &Field<T>) -> Result<T> {
        self.domain.require_same(&other.domain)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs())))
    }

    /// Mean of the `2d` axis neighbours of an interior site.
    pub fn neighbor_average(&self, site: &[usize]) -> Result<T> {
        let flat = self.domain.require_interior(site)?;
        Ok(self.neighbor_average_flat(flat))
    }

    /// Same as [`Self::neighbor_average`] for a flat interior index.
    #[inline]
    pub(crate) fn neighbor_average_flat(&self, flat: usize) -> T {
        let strides = self.domain.strides();
        let sum = strides.iter().fold(T::zero(), |acc, &s| {
            acc + self.values[flat + s] + self.values[flat - s]
        });
        sum / T::of_usize(2 * strides.len())
    }

    pub fn require_zero_boundary(&self) -> Result<()> {
        for (flat, &v) in self.values.iter().enumerate() {
            if !self.domain.is_interior_flat(flat) && v != T::zero() {
                return Err(Error::NonzeroBoundary {
                    site: self.domain.site_of(flat),
                    value: v.as_f64(),
                });
            }
        }
        Ok(())
    }

    pub fn require_finite(&self) -> Result<()> {
        match self.values.iter().position(|v| !v.is_finite()) {
            Some(flat) => Err(Error::NonFinite {
                site: self.domain.site_of(flat),
                value: self.values[flat].as_f64(),
            }),
            None => Ok(()),
        }
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        match self.values.iter().position(|&v| v < T::zero()) {
            Some(flat) => Err(Error::NegativeValue {
                site: self.domain.site_of(flat),
                value: self.values[flat].as_f64(),
            }),
            None => Ok(()),
        }
    }

    /// Zero boundary, finite and nonnegative: admissible state of the dynamics.
    pub fn require_admissible(&self) -> Result<()> {
        self.require_finite()?;
        self.require_zero_boundary()?;
        self.require_nonnegative()
    }

    /// Sites and values in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Site, T)> + '_ {
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &v)| (self.domain.site_of(i), v))
    }
}
