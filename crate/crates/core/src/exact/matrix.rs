use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ExactError, ExactRing};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self, ExactError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(ExactError::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        Ok(IntMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data
            .chunks(self.cols.max(1))
            .map(<[BigInt]>::to_vec)
            .collect()
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading_minor(&self, k: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn determinant(&self) -> Result<BigInt, ExactError> {
        if !self.is_square() {
            return Err(ExactError::DimensionMismatch(format!(
                "determinant of {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(BigInt::one());
        }
        bareiss_determinant(self.to_rows())
    }

    /// Sylvester's criterion applied to `-M`: every leading minor of order
    /// `k` has sign `(-1)^k`.
    pub fn is_negative_definite(&self) -> bool {
        if !self.is_symmetric() || self.rows == 0 {
            return false;
        }
        (1..=self.rows).all(|k| {
            let det = self
                .leading_minor(k)
                .determinant()
                .expect("square by construction");
            if k % 2 == 0 {
                det.is_positive()
            } else {
                det.is_negative()
            }
        })
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect())
    }

    pub fn mul_rat_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>, ExactError> {
        if v.len() != self.cols {
            return Err(ExactError::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| BigRational::from_integer(self.get(i, j).clone()) * &v[j])
                    .fold(BigRational::zero(), |a, b| a + b)
            })
            .collect())
    }

    /// `v^T M v`.
    pub fn quadratic_form(&self, v: &[BigInt]) -> Result<BigInt, ExactError> {
        let mv = self.mul_vec(v)?;
        Ok(v.iter().zip(&mv).map(|(a, b)| a * b).sum())
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// Determinant by Bareiss' fraction-free elimination. Every intermediate
/// entry is a minor of the input, so the divisions are exact in any
/// integral domain.
pub fn bareiss_determinant<R: ExactRing>(mut a: Vec<Vec<R>>) -> Result<R, ExactError> {
    let n = a.len();
    if n == 0 {
        return Err(ExactError::DimensionMismatch("empty matrix".into()));
    }
    if a.iter().any(|row| row.len() != n) {
        return Err(ExactError::DimensionMismatch("matrix is not square".into()));
    }
    let one = a[0][0].one_like();
    let mut sign_flip = false;
    let mut prev = one.clone();
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(one.zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j]
                    .mul_ref(&a[k][k])
                    .sub_ref(&a[i][k].mul_ref(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if sign_flip { det.neg_ref() } else { det })
}

/// Solves `m * x = rhs` exactly. Forward elimination is fraction-free
/// (Bareiss on the augmented matrix); back substitution is done in
/// rationals.
pub fn solve_linear_exact(m: &IntMatrix, rhs: &[BigInt]) -> Result<Vec<BigRational>, ExactError> {
    if !m.is_square() {
        return Err(ExactError::DimensionMismatch(format!(
            "system matrix is {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if rhs.len() != n {
        return Err(ExactError::DimensionMismatch(format!(
            "{n} equations but right-hand side of length {}",
            rhs.len()
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigInt> = (0..n).map(|j| m.get(i, j).clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let i = (k + 1..n)
                .find(|&i| !a[i][k].is_zero())
                .ok_or(ExactError::SingularMatrix)?;
            a.swap(k, i);
        }
        for i in k + 1..n {
            for j in k + 1..=n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(a[i][i].clone());
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn one_by_one_cartan() {
        let m = IntMatrix::from_rows(&[vec![-2]]).unwrap();
        assert_eq!(
            solve_linear_exact(&m, &ints(&[-2])).unwrap(),
            vec![rat(1, 1)]
        );
    }

    #[test]
    fn identity_returns_rhs() {
        let m = IntMatrix::identity(4);
        let v = ints(&[3, -1, 0, 7]);
        let x = solve_linear_exact(&m, &v).unwrap();
        assert_eq!(
            x,
            v.iter()
                .map(|a| BigRational::from_integer(a.clone()))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn a2_cartan() {
        let m = IntMatrix::from_rows(&[vec![-2, 1], vec![1, -2]]).unwrap();
        let x = solve_linear_exact(&m, &ints(&[-1, -1])).unwrap();
        assert_eq!(x, vec![rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn needs_pivoting() {
        let m = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        let x = solve_linear_exact(&m, &ints(&[5, 7])).unwrap();
        assert_eq!(x, vec![rat(7, 1), rat(5, 1)]);
    }

    #[test]
    fn singular_is_rejected() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(
            solve_linear_exact(&m, &ints(&[1, 1])),
            Err(ExactError::SingularMatrix)
        );
    }

    #[test]
    fn dimension_mismatch() {
        let m = IntMatrix::identity(2);
        assert!(matches!(
            solve_linear_exact(&m, &ints(&[1])),
            Err(ExactError::DimensionMismatch(_))
        ));
        let r = IntMatrix::from_rows(&[vec![1, 2, 3]]).unwrap();
        assert!(matches!(
            solve_linear_exact(&r, &ints(&[1])),
            Err(ExactError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinants() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap(), int(6));
        let p = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(p.determinant().unwrap(), int(-1));
    }

    #[test]
    fn cartan_e8_is_negative_definite() {
        // E8 chain 0-1-2-3-4-5-6 with vertex 7 on vertex 4
        let mut m = IntMatrix::zeros(8, 8);
        for i in 0..8 {
            m.set(i, i, int(-2));
        }
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)] {
            m.set(a, b, int(1));
            m.set(b, a, int(1));
        }
        assert!(m.is_negative_definite());
        assert_eq!(m.determinant().unwrap(), int(1));
        let mut bad = m.clone();
        bad.set(0, 0, int(-1));
        bad.set(1, 1, int(-1));
        assert!(!bad.is_negative_definite());
    }
}
