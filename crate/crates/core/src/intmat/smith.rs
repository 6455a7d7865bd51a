use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, MatrixError};

/// `U * source * V = S` with `S = diag(s_1, .., s_n)`, `s_i > 0`, `s_i | s_{i+1}`.
///
/// `S` is unique; `U` and `V` are not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
    /// Determinantal divisors `d_1..d_n`.
    pub divisors: Vec<BigInt>,
    /// Invariant factors `s_1..s_n`.
    pub factors: Vec<BigInt>,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    n: usize,
}

impl Work {
    /// Row operation `(r_a, r_b) <- (p r_a + q r_b, r r_a + s r_b)` on A and U.
    fn rows(&mut self, ra: usize, rb: usize, c: [&BigInt; 4]) {
        for m in [&mut self.a, &mut self.u] {
            for t in 0..self.n {
                let (x, y) = (m[ra][t].clone(), m[rb][t].clone());
                m[ra][t] = c[0] * &x + c[1] * &y;
                m[rb][t] = c[2] * &x + c[3] * &y;
            }
        }
    }

    /// Column operation on A and V.
    fn cols(&mut self, ca: usize, cb: usize, c: [&BigInt; 4]) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let (x, y) = (row[ca].clone(), row[cb].clone());
                row[ca] = c[0] * &x + c[1] * &y;
                row[cb] = c[2] * &x + c[3] * &y;
            }
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// Moves the smallest nonzero entry of the trailing block to `(t, t)`.
    fn bring_pivot(&mut self, t: usize) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.n {
            for j in t..self.n {
                let e = &self.a[i][j];
                if e.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| e.abs() < self.a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let (i, j) = best.expect("nonsingular matrix has a nonzero trailing block");
        self.swap_rows(t, i);
        self.swap_cols(t, j);
    }

    fn clear_column(&mut self, t: usize) {
        for i in t + 1..self.n {
            if self.a[i][t].is_zero() {
                continue;
            }
            let (x, y) = (self.a[t][t].clone(), self.a[i][t].clone());
            let (p, q, r, s) = step(&x, &y);
            self.rows(t, i, [&p, &q, &r, &s]);
        }
    }

    fn clear_row(&mut self, t: usize) {
        for j in t + 1..self.n {
            if self.a[t][j].is_zero() {
                continue;
            }
            let (x, y) = (self.a[t][t].clone(), self.a[t][j].clone());
            let (p, q, r, s) = step(&x, &y);
            self.cols(t, j, [&p, &q, &r, &s]);
        }
    }

    fn first_non_multiple(&self, t: usize) -> Option<usize> {
        let p = &self.a[t][t];
        (t + 1..self.n).find(|&i| (t + 1..self.n).any(|j| !self.a[i][j].is_multiple_of(p)))
    }
}

/// Unimodular 2x2 step sending `(x, y)` to `(gcd, 0)`. When `x | y` the pivot
/// line is left untouched, so a cleared line is never refilled without the
/// pivot shrinking.
fn step(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
    if y.is_multiple_of(x) {
        return (BigInt::one(), BigInt::zero(), -(y / x), BigInt::one());
    }
    let eg = x.extended_gcd(y);
    let (r, s) = (-(y / &eg.gcd), x / &eg.gcd);
    (eg.x, eg.y, r, s)
}

pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithDecomposition, MatrixError> {
    if m.det()?.is_zero() {
        return Err(MatrixError::SingularMatrix);
    }
    let n = m.rows();
    let id = IntMatrix::identity(n);
    let mut w = Work {
        a: (0..n).map(|i| m.row(i).to_vec()).collect(),
        u: (0..n).map(|i| id.row(i).to_vec()).collect(),
        v: (0..n).map(|i| id.row(i).to_vec()).collect(),
        n,
    };

    for t in 0..n {
        w.bring_pivot(t);
        loop {
            w.clear_column(t);
            w.clear_row(t);
            if (t + 1..n).any(|i| !w.a[i][t].is_zero()) {
                continue;
            }
            // Divisibility repair: fold an offending row into the pivot row.
            match w.first_non_multiple(t) {
                Some(i) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    w.rows(t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            for x in w.a[t].iter_mut().chain(w.u[t].iter_mut()) {
                *x = -std::mem::take(x);
            }
        }
    }

    let u = IntMatrix::from_rows(&w.u)?;
    let v = IntMatrix::from_rows(&w.v)?;
    let s = IntMatrix::from_rows(&w.a)?;
    Ok(SmithDecomposition::assemble(u, s, v, m.clone()))
}

impl SmithDecomposition {
    fn assemble(u: IntMatrix, s: IntMatrix, v: IntMatrix, source: IntMatrix) -> Self {
        let factors = s.diagonal();
        let mut acc = BigInt::one();
        let divisors = factors
            .iter()
            .map(|f| {
                acc *= f;
                acc.clone()
            })
            .collect();
        SmithDecomposition {
            u,
            s,
            v,
            source,
            divisors,
            factors,
        }
    }

    /// Accepts externally supplied transforms `U`, `V` for `source`.
    ///
    /// `U * source * V` must be diagonal with entries equal to the invariant
    /// factors up to sign; negative entries are fixed by negating the matching
    /// column of `V`.
    pub fn from_transforms(
        source: &IntMatrix,
        u: IntMatrix,
        mut v: IntMatrix,
    ) -> Result<Self, MatrixError> {
        for t in [&u, &v] {
            if !t.det()?.abs().is_one() {
                return Err(MatrixError::NotUnimodular(t.det()?.abs()));
            }
        }
        let prod = u.try_mul(source)?.try_mul(&v)?;
        if !prod.is_diagonal() {
            return Err(MatrixError::InvalidDecomposition(format!(
                "U * M * V = {prod} is not diagonal"
            )));
        }
        let expected = invariant_factors(source)?;
        let n = source.rows();
        for i in 0..n {
            if prod.get(i, i).abs() != expected[i] {
                return Err(MatrixError::InvalidDecomposition(format!(
                    "diagonal entry {} does not match invariant factor {}",
                    prod.get(i, i),
                    expected[i]
                )));
            }
            if prod.get(i, i).is_negative() {
                for r in 0..n {
                    let x = -v.get(r, i).clone();
                    v.set(r, i, x);
                }
            }
        }
        let s = IntMatrix::diag(&expected);
        Ok(Self::assemble(u, s, v, source.clone()))
    }

    pub fn validate(&self) -> Result<(), String> {
        let prod = &(&self.u * &self.source) * &self.v;
        if prod != self.s {
            return Err("U * M * V != S".into());
        }
        for (name, t) in [("U", &self.u), ("V", &self.v)] {
            if !t.det().map_err(|e| e.to_string())?.abs().is_one() {
                return Err(format!("{name} is not unimodular"));
            }
        }
        if !self.s.is_diagonal() {
            return Err("S is not diagonal".into());
        }
        for w in self.factors.windows(2) {
            if !w[1].is_multiple_of(&w[0]) {
                return Err(format!("{} does not divide {}", w[0], w[1]));
            }
        }
        if self.factors.iter().any(|f| !f.is_positive()) {
            return Err("non-positive invariant factor".into());
        }
        let det = self.source.det().map_err(|e| e.to_string())?.abs();
        if self.factors.iter().product::<BigInt>() != det {
            return Err("product of invariant factors != |det M|".into());
        }
        Ok(())
    }
}

pub fn invariant_factors(m: &IntMatrix) -> Result<Vec<BigInt>, MatrixError> {
    Ok(smith_normal_form(m)?.factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::big_vec;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn diag_223() {
        let sd = smith_normal_form(&IntMatrix::diag(&[2, 2, 3])).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.s, IntMatrix::diag(&[1, 2, 6]));
        assert_eq!(sd.factors, big_vec(&[1, 2, 6]));
        assert_eq!(sd.divisors, big_vec(&[1, 2, 12]));
    }

    #[test]
    fn identity() {
        let sd = smith_normal_form(&IntMatrix::identity(3)).unwrap();
        assert_eq!(sd.s, IntMatrix::identity(3));
        assert_eq!(sd.u, IntMatrix::identity(3));
        assert_eq!(sd.v, IntMatrix::identity(3));
    }

    #[test]
    fn symmetric_example() {
        let sd = smith_normal_form(&mat(&[&[4, 2], &[2, 4]])).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.factors, big_vec(&[2, 6]));
    }

    #[test]
    fn needs_divisibility_repair() {
        // diag(2, 3) is diagonal but 2 does not divide 3
        let sd = smith_normal_form(&IntMatrix::diag(&[2, 3])).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.factors, big_vec(&[1, 6]));
        let sd = smith_normal_form(&IntMatrix::diag(&[4, 6, 10])).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.factors, big_vec(&[2, 2, 60]));
    }

    #[test]
    fn negative_determinant() {
        let sd = smith_normal_form(&mat(&[&[0, -3], &[-2, 0]])).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.factors, big_vec(&[1, 6]));
        let sd = smith_normal_form(&mat(&[&[-5]])).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.factors, big_vec(&[5]));
    }

    #[test]
    fn supplied_transforms_with_sign_fix() {
        let m = IntMatrix::diag(&[2, 2, 3]);
        let u = mat(&[&[-1, 0, 1], &[0, 1, 0], &[-3, 0, 2]]);
        let v = mat(&[&[1, 0, 3], &[0, 1, 0], &[1, 0, 2]]);
        // the product is diag(1, 2, -6)
        assert_eq!(&(&u * &m) * &v, IntMatrix::diag(&[1, 2, -6]));
        let sd = SmithDecomposition::from_transforms(&m, u.clone(), v).unwrap();
        sd.validate().unwrap();
        assert_eq!(sd.u, u);
        assert_eq!(sd.s, IntMatrix::diag(&[1, 2, 6]));
    }

    #[test]
    fn supplied_transforms_rejected() {
        let m = IntMatrix::diag(&[2, 3]);
        let err = SmithDecomposition::from_transforms(&m, IntMatrix::identity(2), IntMatrix::identity(2));
        assert!(matches!(err, Err(MatrixError::InvalidDecomposition(_))));
    }
}
