use crate::error::{structural, Result};
use crate::points::dot;

/// Orthogonal projection G onto span{y_1, ..., y_k} together with the test
/// function H(x) = (1 + |G(x)|²)^(-1/2).
#[derive(Debug, Clone, PartialEq)]
pub struct SubspaceProjector {
    dim: usize,
    basis: Vec<Vec<f64>>,
}

const ORTHONORMAL_TOL: f64 = 1e-10;

impl SubspaceProjector {
    /// Validates orthonormality to 1e-10 and requires k ≥ 3.
    pub fn new(basis: Vec<Vec<f64>>) -> Result<Self> {
        let proj = Self::new_any_rank(basis)?;
        if proj.rank() < 3 {
            return Err(structural(format!("subspace rank k = {} is below 3", proj.rank())));
        }
        Ok(proj)
    }

    /// Same as [`SubspaceProjector::new`] without the k ≥ 3 requirement.
    pub fn new_any_rank(basis: Vec<Vec<f64>>) -> Result<Self> {
        let Some(first) = basis.first() else {
            return Err(structural("empty basis"));
        };
        let dim = first.len();
        if dim == 0 {
            return Err(structural("basis vectors must be nonempty"));
        }
        if basis.len() > dim {
            return Err(structural(format!("{} vectors cannot be orthonormal in R^{dim}", basis.len())));
        }
        for (i, y) in basis.iter().enumerate() {
            if y.len() != dim {
                return Err(structural(format!("basis vector {i} has length {} != {dim}", y.len())));
            }
            for (j, z) in basis.iter().enumerate().take(i + 1) {
                let target = if i == j { 1.0 } else { 0.0 };
                let ip = dot(y, z);
                if (ip - target).abs() > ORTHONORMAL_TOL {
                    return Err(structural(format!(
                        "basis is not orthonormal: <y_{i}, y_{j}> = {ip}"
                    )));
                }
            }
        }
        Ok(Self { dim, basis })
    }

    /// First `k` standard basis vectors of R^d.
    pub fn coordinate(d: usize, k: usize) -> Result<Self> {
        Self::new(
            (0..k)
                .map(|j| {
                    let mut e = vec![0.0; d];
                    if j < d {
                        e[j] = 1.0;
                    }
                    e
                })
                .collect(),
        )
    }

    /// Basis whose first vector is `direction / |direction|`, completed by
    /// Gram–Schmidt over the standard basis.
    pub fn with_leading(direction: &[f64], k: usize) -> Result<Self> {
        let d = direction.len();
        let n = crate::points::norm(direction);
        if n == 0.0 {
            return Err(structural("leading direction is zero"));
        }
        let mut basis: Vec<Vec<f64>> = vec![direction.iter().map(|v| v / n).collect()];
        for j in 0..d {
            if basis.len() == k {
                break;
            }
            let mut e = vec![0.0; d];
            e[j] = 1.0;
            for b in &basis {
                let c = dot(&e, b);
                e.iter_mut().zip(b).for_each(|(v, w)| *v -= c * w);
            }
            let en = crate::points::norm(&e);
            if en > 1e-6 {
                e.iter_mut().for_each(|v| *v /= en);
                basis.push(e);
            }
        }
        Self::new(basis)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<f64>] {
        &self.basis
    }

    /// Coordinates <y_j, x>.
    pub fn coefficients(&self, x: &[f64]) -> Vec<f64> {
        self.basis.iter().map(|y| dot(y, x)).collect()
    }

    /// G(x) as a vector of R^d.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let mut g = vec![0.0; self.dim];
        for y in &self.basis {
            let c = dot(y, x);
            g.iter_mut().zip(y).for_each(|(v, w)| *v += c * w);
        }
        g
    }

    /// |G(x)|².
    pub fn projected_sq_norm(&self, x: &[f64]) -> f64 {
        self.basis.iter().map(|y| dot(y, x).powi(2)).sum()
    }

    /// H(x) = (1 + |G(x)|²)^(-1/2) in (0, 1].
    pub fn h(&self, x: &[f64]) -> f64 {
        (1.0 + self.projected_sq_norm(x)).sqrt().recip()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_is_one_at_origin_and_bounded() {
        let p = SubspaceProjector::coordinate(5, 3).unwrap();
        assert_eq!(p.h(&[0.0; 5]), 1.0);
        let x = [3.0, 4.0, 0.0, 100.0, -7.0];
        assert!((p.h(&x) - 1.0 / 26f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn non_orthonormal_basis_is_structural() {
        let b = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.5, 1.0]];
        assert!(matches!(SubspaceProjector::new(b), Err(crate::Error::Structural(_))));
    }

    #[test]
    fn rank_two_is_rejected() {
        assert!(SubspaceProjector::coordinate(4, 2).is_err());
    }

    #[test]
    fn leading_direction_is_first_vector() {
        let p = SubspaceProjector::with_leading(&[1.0, 1.0, 0.0, 0.0], 3).unwrap();
        let s = 0.5f64.sqrt();
        assert!((p.basis()[0][0] - s).abs() < 1e-15 && (p.basis()[0][1] - s).abs() < 1e-15);
        assert_eq!(p.rank(), 3);
    }
}
