#![allow(dead_code)]

use latblow::{BoxDomain, Field64, SeededRng};

/// Solves `m x = rhs` by Gaussian elimination with partial pivoting.
pub fn dense_solve(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Vec<f64> {
    let n = rhs.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        assert!(m[pivot][col].abs() > 1e-12, "singular sine system");
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..n {
            let factor = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let tail: f64 = (row + 1..n).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - tail) / m[row][row];
    }
    x
}

/// Sine interpolation matrix `S[site][mode] = prod_k sin(mode_k pi site_k / N_k)`
/// built straight from `f64::sin`.
pub fn sine_matrix(domain: &BoxDomain) -> Vec<Vec<f64>> {
    let sites = domain.interior_sites();
    sites
        .iter()
        .map(|site| {
            sites
                .iter()
                .map(|mode| {
                    mode.iter()
                        .zip(site)
                        .zip(domain.extents())
                        .map(|((&m, &n), &big_n)| {
                            (std::f64::consts::PI * (m * n) as f64 / big_n as f64).sin()
                        })
                        .product()
                })
                .collect()
        })
        .collect()
}

/// Coefficients of `a` from a dense solve of the interpolation system.
pub fn coefficients_by_dense_solve(a: &Field64) -> Vec<f64> {
    dense_solve(sine_matrix(a.domain()), a.interior_values())
}

/// `(1/d) sum_k cos(m_k pi / N_k)` straight from `f64::cos`.
pub fn naive_eigenvalue(domain: &BoxDomain, mode: &[usize]) -> f64 {
    mode.iter()
        .zip(domain.extents())
        .map(|(&m, &n)| (std::f64::consts::PI * m as f64 / n as f64).cos())
        .sum::<f64>()
        / domain.dims() as f64
}

/// Linear step written out site by site from the stencil definition.
pub fn naive_average_step(h: &Field64) -> Field64 {
    let d = h.domain().clone();
    Field64::from_interior_fn(&d, |site| {
        let mut sum = 0.0;
        for k in 0..site.len() {
            let mut up = site.to_vec();
            up[k] += 1;
            let mut down = site.to_vec();
            down[k] -= 1;
            sum += h.get(&up).unwrap() + h.get(&down).unwrap();
        }
        sum / (2 * site.len()) as f64
    })
}

pub fn random_domain(rng: &mut SeededRng, max_dims: usize, max_extent: usize) -> BoxDomain {
    let d = rng.int_in(1, max_dims);
    let extents: Vec<usize> = (0..d).map(|_| rng.int_in(2, max_extent)).collect();
    BoxDomain::new(extents).unwrap()
}

/// Random field with values uniform in `[lo, hi)` on every interior site.
pub fn random_interior(domain: &BoxDomain, rng: &mut SeededRng, lo: f64, hi: f64) -> Field64 {
    Field64::from_interior_fn(domain, |_| rng.uniform_in(lo, hi))
}
