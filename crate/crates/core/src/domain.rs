//! The box lattice `{n in Z^d : 0 <= n_k <= N_k}` and its site bookkeeping.
//!
//! Sites are stored in lexicographic order over `(n_1, ..., n_d)`: the last
//! axis varies fastest. Interior enumeration, field storage, coefficient
//! vectors and file output all share this order.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Multi-index of a lattice site, one coordinate per axis.
pub type Site = Vec<usize>;

#[derive(Debug)]
struct Layout {
    extents: Vec<usize>,
    strides: Vec<usize>,
    site_count: usize,
    interior: Vec<usize>,
    is_interior: Vec<bool>,
}

/// Box lattice with extents `N_1..N_d`, each at least 2.
///
/// Cloning is cheap; the precomputed layout is shared.
#[derive(Clone)]
pub struct BoxDomain {
    layout: Arc<Layout>,
}

impl BoxDomain {
    pub fn new(extents: impl Into<Vec<usize>>) -> Result<Self> {
        let extents = extents.into();
        if extents.is_empty() {
            return Err(Error::InvalidDomain("at least one axis is required".into()));
        }
        if let Some((axis, &n)) = extents.iter().enumerate().find(|(_, &n)| n < 2) {
            return Err(Error::InvalidDomain(format!(
                "extent N_{} = {n} must be at least 2",
                axis + 1
            )));
        }

        let d = extents.len();
        let mut strides = vec![1usize; d];
        for k in (0..d - 1).rev() {
            strides[k] = strides[k + 1]
                .checked_mul(extents[k + 1] + 1)
                .ok_or_else(|| Error::InvalidDomain("site count overflows".into()))?;
        }
        let site_count = strides[0]
            .checked_mul(extents[0] + 1)
            .ok_or_else(|| Error::InvalidDomain("site count overflows".into()))?;

        let mut is_interior = vec![false; site_count];
        let mut interior = Vec::with_capacity(extents.iter().map(|n| n - 1).product());
        let mut site = vec![0usize; d];
        for (flat, slot) in is_interior.iter_mut().enumerate() {
            if site.iter().zip(&extents).all(|(&c, &n)| c > 0 && c < n) {
                *slot = true;
                interior.push(flat);
            }
            advance(&mut site, &extents);
        }

        Ok(Self {
            layout: Arc::new(Layout {
                extents,
                strides,
                site_count,
                interior,
                is_interior,
            }),
        })
    }

    /// Number of axes `d`.
    pub fn dims(&self) -> usize {
        self.layout.extents.len()
    }

    pub fn extents(&self) -> &[usize] {
        &self.layout.extents
    }

    /// Flat-index distance between neighbours along each axis.
    pub fn strides(&self) -> &[usize] {
        &self.layout.strides
    }

    /// `|Omega_D| = prod (N_k + 1)`.
    pub fn site_count(&self) -> usize {
        self.layout.site_count
    }

    /// `|interior| = prod (N_k - 1)`.
    pub fn interior_count(&self) -> usize {
        self.layout.interior.len()
    }

    /// Flat indices of the interior sites, in lexicographic order.
    pub fn interior_flat(&self) -> &[usize] {
        &self.layout.interior
    }

    pub fn contains(&self, site: &[usize]) -> bool {
        site.len() == self.dims() && site.iter().zip(self.extents()).all(|(&c, &n)| c <= n)
    }

    pub fn is_interior(&self, site: &[usize]) -> bool {
        self.contains(site)
            && site
                .iter()
                .zip(self.extents())
                .all(|(&c, &n)| c > 0 && c < n)
    }

    pub fn is_boundary(&self, site: &[usize]) -> bool {
        self.contains(site) && !self.is_interior(site)
    }

    pub(crate) fn is_interior_flat(&self, flat: usize) -> bool {
        self.layout.is_interior[flat]
    }

    /// Flat storage index of `site`.
    pub fn index_of(&self, site: &[usize]) -> Result<usize> {
        if !self.contains(site) {
            return Err(Error::OutOfDomain {
                site: site.to_vec(),
                extents: self.extents().to_vec(),
            });
        }
        Ok(site.iter().zip(self.strides()).map(|(c, s)| c * s).sum())
    }

    /// Multi-index of the site stored at `flat`.
    pub fn site_of(&self, flat: usize) -> Site {
        debug_assert!(flat < self.site_count());
        self.strides()
            .iter()
            .zip(self.extents())
            .map(|(&stride, &n)| (flat / stride) % (n + 1))
            .collect()
    }

    /// Every site of the box, in lexicographic order.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.site_count()).map(move |i| self.site_of(i))
    }

    /// Interior sites `0 < n_k < N_k`, in lexicographic order.
    pub fn interior_sites(&self) -> Vec<Site> {
        self.interior_flat()
            .iter()
            .map(|&i| self.site_of(i))
            .collect()
    }

    pub(crate) fn require_interior(&self, site: &[usize]) -> Result<usize> {
        if self.is_interior(site) {
            self.index_of(site)
        } else {
            Err(Error::NotInterior {
                site: site.to_vec(),
                extents: self.extents().to_vec(),
            })
        }
    }

    pub(crate) fn require_same(&self, other: &BoxDomain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch {
                left: self.extents().to_vec(),
                right: other.extents().to_vec(),
            })
        }
    }
}

/// Lexicographic successor of `site` (last axis fastest); wraps to all zeros.
fn advance(site: &mut [usize], extents: &[usize]) {
    for k in (0..site.len()).rev() {
        if site[k] < extents[k] {
            site[k] += 1;
            return;
        }
        site[k] = 0;
    }
}

impl PartialEq for BoxDomain {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.layout, &other.layout) || self.extents() == other.extents()
    }
}

impl Eq for BoxDomain {}

impl fmt::Debug for BoxDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoxDomain")
            .field("extents", &self.extents())
            .finish()
    }
}
