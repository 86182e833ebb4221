//! Exact Gaussian elimination: rank, kernels, solves and inverses.
//!
//! Systems with entries in `ℚ[n]` are handled by the sample-and-interpolate
//! policy: solve over `ℚ` at `DEGREE_CAP + 1` integer values `n >= 3`,
//! interpolate each coordinate, then confirm the interpolant symbolically.

use super::{KernelError, ParamPoly, PolyMatrix, Rat, RatMatrix, DEGREE_CAP};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        if p != row {
            for c in 0..m.cols() {
                let tmp = m.get(p, c).clone();
                m.set(p, c, m.get(row, c).clone());
                m.set(row, c, tmp);
            }
        }
        let inv = m.get(row, col).recip().expect("pivot is nonzero");
        for c in 0..m.cols() {
            let v = m.get(row, c) * &inv;
            m.set(row, c, v);
        }
        for r in 0..m.rows() {
            if r == row || m.get(r, col).is_zero() {
                continue;
            }
            let factor = m.get(r, col).clone();
            for c in 0..m.cols() {
                let v = m.get(r, c) - &(&factor * m.get(row, c));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).1.len()
}

/// A basis of `{x : A·x = 0}`; each vector has a single 1 in its free
/// coordinate and zeros in the other free coordinates.
pub fn kernel_basis(a: &RatMatrix) -> Vec<Vec<Rat>> {
    let (r, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); a.cols()];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(i, f);
            }
            v
        })
        .collect()
}

/// Solves `A·x = b` exactly.
///
/// Returns the unique solution, [`KernelError::NoSolution`] for an
/// inconsistent system, or [`KernelError::Underdetermined`] carrying the
/// kernel basis when solutions are not unique.
pub fn solve_linear(a: &RatMatrix, b: &[Rat]) -> Result<Vec<Rat>, KernelError> {
    if a.rows() != b.len() {
        return Err(KernelError::Shape(format!(
            "system has {} equations but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let mut aug = RatMatrix::zeros(a.rows(), a.cols() + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..a.cols() {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, a.cols(), rhs.clone());
    }
    let (red, pivots) = rref(&aug);
    if pivots.contains(&a.cols()) {
        return Err(KernelError::NoSolution);
    }
    if pivots.len() < a.cols() {
        return Err(KernelError::Underdetermined { kernel: kernel_basis(a) });
    }
    let mut x = vec![Rat::zero(); a.cols()];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red.get(i, a.cols()).clone();
    }
    if cfg!(debug_assertions) {
        let check = a.mul_vec(&x)?;
        debug_assert_eq!(check, b, "re-substitution failed");
    }
    Ok(x)
}

/// Exact inverse of a square matrix.
pub fn inverse(a: &RatMatrix) -> Result<RatMatrix, KernelError> {
    if !a.is_square() {
        return Err(KernelError::Shape("only square matrices can be inverted".into()));
    }
    let size = a.rows();
    let mut aug = RatMatrix::zeros(size, 2 * size);
    for r in 0..size {
        for c in 0..size {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, size + r, Rat::one());
    }
    let (red, pivots) = rref(&aug);
    if pivots.len() < size || pivots[size - 1] >= size {
        return Err(KernelError::Singular);
    }
    let mut inv = RatMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            inv.set(r, c, red.get(r, size + c).clone());
        }
    }
    Ok(inv)
}

/// Sample points used to certify identities that are generic in `n`.
pub fn sample_points() -> Vec<i64> {
    (3..3 + DEGREE_CAP as i64 + 1).collect()
}

/// Solves `A·x = b` over `ℚ[n]`, returning a polynomial solution.
///
/// Constant systems are solved directly. Otherwise the system is solved at
/// each sample point, interpolated, and the interpolant is checked by exact
/// symbolic substitution; a failure there means the solution is not a
/// polynomial of bounded degree.
pub fn solve_linear_poly(a: &PolyMatrix, b: &[ParamPoly]) -> Result<Vec<ParamPoly>, KernelError> {
    let constant = a.is_constant() && b.iter().all(ParamPoly::is_constant);
    if constant {
        let x = solve_linear(&a.eval(&Rat::zero()), &eval_vec(b, &Rat::zero()))?;
        return Ok(x.into_iter().map(ParamPoly::constant).collect());
    }
    let samples = sample_points();
    let mut per_coord: Vec<Vec<(Rat, Rat)>> = vec![Vec::new(); a.cols()];
    for &k in &samples {
        let at = Rat::from_int(k);
        let x = solve_linear(&a.eval(&at), &eval_vec(b, &at))?;
        for (i, v) in x.into_iter().enumerate() {
            per_coord[i].push((at.clone(), v));
        }
    }
    let x: Vec<ParamPoly> =
        per_coord.iter().map(|pts| ParamPoly::interpolate(pts)).collect::<Result<_, _>>()?;
    let check = a.mul_vec(&x)?;
    if check != b {
        return Err(KernelError::Interpolation(
            "solution is not polynomial in n within the degree cap".into(),
        ));
    }
    Ok(x)
}

/// Inverse over `ℚ[n]` by the same sample-and-interpolate policy.
pub fn inverse_poly(a: &PolyMatrix) -> Result<PolyMatrix, KernelError> {
    if a.is_constant() {
        return Ok(inverse(&a.eval(&Rat::zero()))?.to_poly());
    }
    let size = a.rows();
    let mut cols = Vec::with_capacity(size);
    for j in 0..size {
        let mut e = vec![ParamPoly::zero(); size];
        e[j] = ParamPoly::one();
        cols.push(solve_linear_poly(a, &e).map_err(|err| match err {
            KernelError::Underdetermined { .. } | KernelError::NoSolution => KernelError::Singular,
            other => other,
        })?);
    }
    PolyMatrix::from_cols_with_height(size, cols)
}

pub fn eval_vec(v: &[ParamPoly], at: &Rat) -> Vec<Rat> {
    v.iter().map(|p| p.eval(at)).collect()
}

pub fn to_poly_vec(v: &[Rat]) -> Vec<ParamPoly> {
    v.iter().cloned().map(ParamPoly::constant).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Matrix;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect())
            .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from_int(x)).collect()
    }

    #[test]
    fn solve_examples() {
        assert_eq!(solve_linear(&RatMatrix::identity(4), &v(&[0, 1, 0, 0])).unwrap(), v(&[0, 1, 0, 0]));
        let x = solve_linear(&m(&[&[2, 0], &[0, 3]]), &v(&[1, 1])).unwrap();
        assert_eq!(x, vec![Rat::new(1, 2).unwrap(), Rat::new(1, 3).unwrap()]);
        assert!(matches!(
            solve_linear(&m(&[&[1, 1], &[2, 2]]), &v(&[1, 3])),
            Err(KernelError::NoSolution)
        ));
    }

    #[test]
    fn underdetermined_carries_kernel() {
        match solve_linear(&m(&[&[1, 1], &[2, 2]]), &v(&[1, 2])) {
            Err(KernelError::Underdetermined { kernel }) => {
                assert_eq!(kernel, vec![v(&[-1, 1])]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn kernel_and_rank() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&a), 1);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 2);
        for vec in &k {
            assert!(a.mul_vec(vec).unwrap().iter().all(Rat::is_zero));
        }
    }

    #[test]
    fn inverse_round_trip() {
        let a = m(&[&[1, 1, -1, -1], &[0, 1, -1, -2], &[0, 1, -2, -1], &[0, 1, -2, -2]]);
        let inv = inverse(&a).unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(matches!(inverse(&m(&[&[1, 2], &[2, 4]])), Err(KernelError::Singular)));
    }

    #[test]
    fn polynomial_solve_interpolates() {
        // [[1, 0], [0, 2]] x = (2n - 4, 2n) has the polynomial solution (2n - 4, n).
        let a = RatMatrix::identity(2).scale(&Rat::one()).unwrap().to_poly();
        let mut a = a;
        a.set(1, 1, ParamPoly::int(2));
        let b = vec![ParamPoly::lin(-4, 2), ParamPoly::lin(0, 2)];
        let x = solve_linear_poly(&a, &b).unwrap();
        assert_eq!(x, vec![ParamPoly::lin(-4, 2), ParamPoly::n()]);
        // n·x = 1 has no polynomial solution.
        let a = PolyMatrix::from_rows(vec![vec![ParamPoly::n()]]).unwrap();
        assert!(solve_linear_poly(&a, &[ParamPoly::one()]).is_err());
    }
}
