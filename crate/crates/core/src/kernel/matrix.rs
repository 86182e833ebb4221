//! Dense exact matrices over [`Rat`] or [`ParamPoly`].
//!
//! Convention used throughout the crate: a matrix describing a linear map has
//! one column per source basis vector, holding that vector's image.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{KernelError, ParamPoly, Rat};

/// The exact scalar types matrices may hold.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplication; the polynomial instance fails past the degree cap.
    fn try_mul(&self, other: &Self) -> Result<Self, KernelError>;
}

impl Scalar for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_mul(&self, other: &Self) -> Result<Self, KernelError> {
        Ok(self * other)
    }
}

impl Scalar for ParamPoly {
    fn zero() -> Self {
        ParamPoly::zero()
    }
    fn one() -> Self {
        ParamPoly::one()
    }
    fn is_zero(&self) -> bool {
        ParamPoly::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn try_mul(&self, other: &Self) -> Result<Self, KernelError> {
        self.checked_mul(other)
    }
}

/// A rectangular matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rat>;
pub type PolyMatrix = Matrix<ParamPoly>;

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Matrix::zeros(size, size);
        for i in 0..size {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds from explicit rows; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, KernelError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(KernelError::Shape("rows of unequal length".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    /// Builds from explicit columns (images of basis vectors).
    pub fn from_cols(cols: Vec<Vec<T>>) -> Result<Self, KernelError> {
        Ok(Matrix::from_rows(cols)?.transpose())
    }

    /// Builds a matrix with `rows` rows from columns, allowing zero columns.
    pub fn from_cols_with_height(rows: usize, cols: Vec<Vec<T>>) -> Result<Self, KernelError> {
        if cols.iter().any(|c| c.len() != rows) {
            return Err(KernelError::Shape(format!("every column must have length {rows}")));
        }
        let mut m = Matrix::zeros(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, v) in col.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<T> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.get(r, c).clone());
            }
        }
        m
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn mul(&self, other: &Matrix<T>) -> Result<Matrix<T>, KernelError> {
        if self.cols != other.rows {
            return Err(KernelError::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = T::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).try_mul(other.get(k, j))?);
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn mul_vec(&self, v: &[T]) -> Result<Vec<T>, KernelError> {
        if self.cols != v.len() {
            return Err(KernelError::Shape(format!(
                "cannot apply {}x{} matrix to a vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (k, x) in v.iter().enumerate() {
                    acc = acc.add(&self.get(i, k).try_mul(x)?);
                }
                Ok(acc)
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix<T>) -> Result<Matrix<T>, KernelError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(KernelError::Shape("cannot add matrices of different shapes".into()));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn scale(&self, c: &T) -> Result<Matrix<T>, KernelError> {
        let data = self.data.iter().map(|x| x.try_mul(c)).collect::<Result<_, _>>()?;
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        *v == T::one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> Matrix<T> {
        let rows = keep.iter().map(|&r| self.row(r)).collect::<Vec<_>>();
        let mut m = Matrix::zeros(rows.len(), self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }
}

impl PolyMatrix {
    /// Substitutes a concrete value of `n` in every entry.
    pub fn eval(&self, n: &Rat) -> RatMatrix {
        self.map(|p| p.eval(n))
    }

    pub fn is_constant(&self) -> bool {
        self.data.iter().all(ParamPoly::is_constant)
    }

    pub fn max_degree(&self) -> u32 {
        self.data.iter().filter_map(ParamPoly::degree).max().unwrap_or(0)
    }
}

impl RatMatrix {
    pub fn to_poly(&self) -> PolyMatrix {
        self.map(|r| ParamPoly::constant(r.clone()))
    }
}

/// True iff `a · b` is the identity; both must be square of the same size.
pub fn matrix_product_is_identity<T: Scalar>(
    a: &Matrix<T>,
    b: &Matrix<T>,
) -> Result<bool, KernelError> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(KernelError::Shape(format!(
            "identity test needs equal square sizes, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(a.mul(b)?.is_identity())
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_rows())
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    /// Right-aligned columns, one row per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = self
            .to_rows()
            .into_iter()
            .map(|row| row.iter().map(ToString::to_string).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl<T: Scalar + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<T>>::deserialize(d)?;
        Matrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> RatMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rat::from_int(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_products() {
        let i = RatMatrix::identity(3);
        assert!(matrix_product_is_identity(&i, &i).unwrap());
        let two = i.scale(&Rat::from_int(2)).unwrap();
        assert!(!matrix_product_is_identity(&i, &two).unwrap());
        assert!(matrix_product_is_identity(&i, &RatMatrix::identity(2)).is_err());
    }

    #[test]
    fn columns_are_images() {
        let a = Matrix::from_cols(vec![
            vec![Rat::from_int(1), Rat::from_int(2)],
            vec![Rat::from_int(3), Rat::from_int(4)],
        ])
        .unwrap();
        assert_eq!(a, m(&[&[1, 3], &[2, 4]]));
        let e1 = vec![Rat::one(), Rat::zero()];
        assert_eq!(a.mul_vec(&e1).unwrap(), vec![Rat::from_int(1), Rat::from_int(2)]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![Rat::one()], vec![Rat::one(), Rat::zero()]];
        assert!(RatMatrix::from_rows(rows).is_err());
    }

    #[test]
    fn serde_rows() {
        let a = m(&[&[1, -2], &[0, 3]]);
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, r#"[["1","-2"],["0","3"]]"#);
        assert_eq!(serde_json::from_str::<RatMatrix>(&js).unwrap(), a);
    }
}
