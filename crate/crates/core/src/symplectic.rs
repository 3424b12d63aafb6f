//! Linear symplectic machinery.
//!
//! Phase-space vectors are ordered `(q_1, …, q_n, p_1, …, p_n)` and the
//! canonical form is `Ω = [[0, I], [-I, 0]]`. A matrix `M` is symplectic
//! iff `Mᵀ Ω M = Ω`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

pub type SquareMatrix = DMatrix<f64>;

/// The canonical symplectic form in dimension `dim` (must be even).
pub fn canonical_form(dim: usize) -> Result<SquareMatrix> {
    if dim == 0 || !dim.is_multiple_of(2) {
        return Err(Error::InvalidDimension(dim));
    }
    let n = dim / 2;
    let mut omega = SquareMatrix::zeros(dim, dim);
    for i in 0..n {
        omega[(i, n + i)] = 1.0;
        omega[(n + i, i)] = -1.0;
    }
    Ok(omega)
}

/// Max-norm of `Mᵀ Ω M − Ω`; zero iff `m` is symplectic.
pub fn symplectic_defect(m: &SquareMatrix) -> Result<f64> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidDimension(m.nrows()));
    }
    let omega = canonical_form(m.nrows())?;
    let pulled = m.transpose() * &omega * m;
    Ok((pulled - omega).amax())
}

/// Matrix of the linear change to relative / weighted-centre coordinates
/// `(z1, z2) ↦ (z1 − z2, (1−μ) z1 + μ z2)` together with the momentum
/// block `(p1, p2) ↦ (μ p1 − (1−μ) p2, p1 + p2)`.
pub fn build_relative_map(mu: f64) -> Result<SquareMatrix> {
    if !(mu > 0.0 && mu <= 0.5) {
        return Err(Error::param("mu", mu, "must lie in (0, 1/2]"));
    }
    let nu = 1.0 - mu;
    #[rustfmt::skip]
    let m = SquareMatrix::from_row_slice(4, 4, &[
        1.0, -1.0, 0.0, 0.0,
        nu,  mu,   0.0, 0.0,
        0.0, 0.0,  mu,  -nu,
        0.0, 0.0,  1.0, 1.0,
    ]);
    Ok(m)
}

/// Euler transformation `(Q, P) ↦ (Q²/2, P/Q)`.
pub fn euler_forward(big_q: f64, big_p: f64) -> Result<(f64, f64)> {
    if big_q == 0.0 {
        return Err(Error::Domain(
            "Euler transformation undefined at Q = 0 (collision point)".into(),
        ));
    }
    Ok((0.5 * big_q * big_q, big_p / big_q))
}

/// Positive-branch inverse of [`euler_forward`]: `Q = √(2q)`, `P = p Q`.
pub fn euler_inverse(q: f64, p: f64) -> Result<(f64, f64)> {
    if !(q > 0.0) {
        return Err(Error::Domain(format!(
            "Euler inverse requires q > 0, got {q}"
        )));
    }
    let big_q = (2.0 * q).sqrt();
    Ok((big_q, p * big_q))
}

/// Exact Jacobian of [`euler_forward`] at `(Q, P)`.
pub fn euler_jacobian(big_q: f64, big_p: f64) -> Result<SquareMatrix> {
    if big_q == 0.0 {
        return Err(Error::Domain("Euler Jacobian undefined at Q = 0".into()));
    }
    Ok(SquareMatrix::from_row_slice(
        2,
        2,
        &[big_q, 0.0, -big_p / (big_q * big_q), 1.0 / big_q],
    ))
}

pub const DEFAULT_FD_STEP: f64 = 1e-6;

/// Central-difference Jacobian of `map` at `x`.
pub fn fd_jacobian<F>(map: F, x: &[f64], step: f64) -> Result<SquareMatrix>
where
    F: Fn(&[f64]) -> Result<Vec<f64>>,
{
    if !(step > 0.0) {
        return Err(Error::param("step", step, "must be positive"));
    }
    let n = x.len();
    let mut jac = SquareMatrix::zeros(n, n);
    let mut probe = x.to_vec();
    for j in 0..n {
        let wrap = |e| Error::Evaluation {
            coordinate: j,
            source: Box::new(e),
        };
        probe[j] = x[j] + step;
        let plus = map(&probe).map_err(wrap)?;
        probe[j] = x[j] - step;
        let minus = map(&probe).map_err(wrap)?;
        probe[j] = x[j];
        if plus.len() != n || minus.len() != n {
            return Err(Error::InvalidDimension(plus.len()));
        }
        for i in 0..n {
            jac[(i, j)] = (plus[i] - minus[i]) / (2.0 * step);
        }
    }
    Ok(jac)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn identity_and_scaled_identity() {
        let id = SquareMatrix::identity(4, 4);
        assert_eq!(symplectic_defect(&id).unwrap(), 0.0);
        let two = &id * 2.0;
        assert_relative_eq!(symplectic_defect(&two).unwrap(), 3.0);
    }

    #[test]
    fn odd_dimension_rejected() {
        let m = SquareMatrix::identity(3, 3);
        assert!(matches!(
            symplectic_defect(&m),
            Err(Error::InvalidDimension(3))
        ));
    }

    #[test]
    fn relative_map_at_half() {
        let b = build_relative_map(0.5).unwrap();
        #[rustfmt::skip]
        let expected = SquareMatrix::from_row_slice(4, 4, &[
            1.0, -1.0, 0.0, 0.0,
            0.5, 0.5, 0.0, 0.0,
            0.0, 0.0, 0.5, -0.5,
            0.0, 0.0, 1.0, 1.0,
        ]);
        assert_eq!(b, expected);
        assert!(symplectic_defect(&build_relative_map(0.3).unwrap()).unwrap() < 1e-15);
    }

    #[test]
    fn relative_map_rejects_bad_mu() {
        for mu in [0.0, -0.1, 0.51, f64::NAN] {
            assert!(build_relative_map(mu).is_err());
        }
    }

    #[test]
    fn euler_examples() {
        assert_eq!(euler_forward(2.0, 3.0).unwrap(), (2.0, 1.5));
        assert_eq!(euler_forward(1.0, 0.0).unwrap(), (0.5, 0.0));
        assert_eq!(euler_forward(-2.0, 3.0).unwrap(), (2.0, -1.5));
        assert!(euler_forward(0.0, 1.0).is_err());
        assert_eq!(euler_inverse(8.0, 1.0).unwrap(), (4.0, 4.0));
        assert_eq!(euler_inverse(0.5, 0.0).unwrap(), (1.0, 0.0));
        assert!(euler_inverse(0.0, 1.0).is_err());
        assert!(euler_inverse(-1.0, 1.0).is_err());
    }

    #[test]
    fn euler_jacobian_is_unimodular() {
        for &(q, p) in &[(0.3, -2.0), (-1.7, 0.4), (5.0, 5.0)] {
            let j = euler_jacobian(q, p).unwrap();
            assert_relative_eq!(j.determinant(), 1.0, epsilon = 1e-14);
            assert!(symplectic_defect(&j).unwrap() < 1e-14);
        }
    }

    #[test]
    fn fd_jacobian_of_linear_map() {
        let b = build_relative_map(0.2).unwrap();
        let map = |x: &[f64]| Ok((&b * nalgebra::DVector::from_column_slice(x)).as_slice().to_vec());
        let jac = fd_jacobian(map, &[0.3, -1.0, 2.0, 0.1], 1e-6).unwrap();
        assert!((jac - &b).amax() < 1e-9);
        let id = fd_jacobian(|x: &[f64]| Ok(x.to_vec()), &[1.0, 2.0], 1e-6).unwrap();
        assert!((id - SquareMatrix::identity(2, 2)).amax() < 1e-9);
    }

    #[test]
    fn fd_jacobian_reports_coordinate() {
        let map = |x: &[f64]| euler_forward(x[0], x[1]).map(|(a, b)| vec![a, b]);
        // Probing Q = 1e-7 ± 1e-7 lands exactly on Q = 0.
        let err = fd_jacobian(map, &[1e-7, 0.0], 1e-7).unwrap_err();
        assert!(matches!(err, Error::Evaluation { coordinate: 0, .. }));
    }
}
