use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{IntMatrix, MatrixError};

/// Column-style Hermite normal form `source * V = H` of a nonsingular matrix.
///
/// `H` is upper triangular with `h_ii > 0` and `0 <= h_ij < h_ii` for `j > i`,
/// which makes it unique for the lattice spanned by the columns of `source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub v: IntMatrix,
    pub source: IntMatrix,
}

/// Hermite basis of the lattice spanned by the columns of an `n x k` matrix
/// `A` of full row rank: `A * T = [0 | H]` with `T` a `k x k` unimodular matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeHermite {
    pub h: IntMatrix,
    pub transform: IntMatrix,
}

impl LatticeHermite {
    /// Index of the lattice in `Z^n`, i.e. `|det H|`.
    pub fn index(&self) -> BigInt {
        self.h.diagonal().into_iter().product()
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> Result<HermiteDecomposition, MatrixError> {
    m.require_square()?;
    let LatticeHermite { h, transform } = lattice_hermite(m)?;
    Ok(HermiteDecomposition {
        h,
        v: transform,
        source: m.clone(),
    })
}

/// Computes the Hermite basis of the column lattice of `a`.
///
/// Rows are processed bottom-up; for each row the still-active columns are
/// merged pairwise with extended-gcd steps until a single pivot remains, which
/// is then frozen at the right end.
pub fn lattice_hermite(a: &IntMatrix) -> Result<LatticeHermite, MatrixError> {
    let n = a.rows();
    let k = a.cols();
    if k < n {
        return Err(MatrixError::SingularMatrix);
    }
    let mut cols: Vec<Vec<BigInt>> = (0..k).map(|j| a.column(j)).collect();
    let mut tr: Vec<Vec<BigInt>> = (0..k).map(|j| IntMatrix::identity(k).column(j)).collect();

    let mut active = k;
    for i in (0..n).rev() {
        let piv = active - 1;
        for j in 0..piv {
            if cols[j][i].is_zero() {
                continue;
            }
            if cols[piv][i].is_zero() {
                cols.swap(j, piv);
                tr.swap(j, piv);
                continue;
            }
            let x = cols[piv][i].clone();
            let y = cols[j][i].clone();
            let eg = x.extended_gcd(&y);
            let (p, q) = (eg.x, eg.y);
            let (ry, rx) = (-(&y / &eg.gcd), &x / &eg.gcd);
            combine(&mut cols, piv, j, &p, &q, &ry, &rx);
            combine(&mut tr, piv, j, &p, &q, &ry, &rx);
        }
        if cols[piv][i].is_zero() {
            return Err(MatrixError::SingularMatrix);
        }
        if cols[piv][i].is_negative() {
            negate(&mut cols[piv]);
            negate(&mut tr[piv]);
        }
        active -= 1;
    }

    // Reduce entries above the diagonal into [0, h_ii).
    let off = k - n;
    for j in 0..n {
        for i in (0..j).rev() {
            let q = cols[off + j][i].div_floor(&cols[off + i][i]);
            if q.is_zero() {
                continue;
            }
            axpy(&mut cols, off + j, off + i, &q);
            axpy(&mut tr, off + j, off + i, &q);
        }
    }

    let h = IntMatrix::from_columns(n, &cols[off..])?;
    let transform = IntMatrix::from_columns(k, &tr)?;
    Ok(LatticeHermite { h, transform })
}

/// `(c_a, c_b) <- (p c_a + q c_b, r c_a + s c_b)`.
fn combine(
    cols: &mut [Vec<BigInt>],
    a: usize,
    b: usize,
    p: &BigInt,
    q: &BigInt,
    r: &BigInt,
    s: &BigInt,
) {
    for t in 0..cols[a].len() {
        let (x, y) = (cols[a][t].clone(), cols[b][t].clone());
        cols[a][t] = p * &x + q * &y;
        cols[b][t] = r * &x + s * &y;
    }
}

/// `c_dst <- c_dst - q c_src`.
fn axpy(cols: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for t in 0..cols[dst].len() {
        let d = q * &cols[src][t];
        cols[dst][t] -= d;
    }
}

fn negate(col: &mut [BigInt]) {
    for x in col.iter_mut() {
        *x = -std::mem::take(x);
    }
}

impl HermiteDecomposition {
    /// Checks every defining property; used by tests and sweeps.
    pub fn validate(&self) -> Result<(), String> {
        let h = &self.h;
        if &self.source * &self.v != *h {
            return Err("source * V != H".into());
        }
        if !self.v.det().map_err(|e| e.to_string())?.abs().is_one() {
            return Err("V is not unimodular".into());
        }
        if !h.is_upper_triangular() {
            return Err("H is not upper triangular".into());
        }
        for i in 0..h.rows() {
            let d = h.get(i, i);
            if !d.is_positive() {
                return Err(format!("h_{i}{i} = {d} is not positive"));
            }
            for j in i + 1..h.cols() {
                let e = h.get(i, j);
                if e.is_negative() || e >= d {
                    return Err(format!("h_{i}{j} = {e} not in [0, {d})"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intmat::big_vec;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Is `v` an integer combination of the columns of the nonsingular `basis`?
    /// Solved exactly with the adjugate, independent of the HNF code.
    fn in_lattice(basis: &IntMatrix, v: &[BigInt]) -> bool {
        let det = basis.det().unwrap();
        let y = basis.adjugate().unwrap().mul_vec(v).unwrap();
        y.iter().all(|c| c.is_multiple_of(&det))
    }

    fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
        (0..a.cols()).all(|j| in_lattice(b, &a.column(j)))
            && (0..b.cols()).all(|j| in_lattice(a, &b.column(j)))
    }

    #[test]
    fn diagonal_is_already_normal() {
        let d = IntMatrix::diag(&[2, 2, 3]);
        let hd = hermite_normal_form(&d).unwrap();
        assert_eq!(hd.h, d);
        assert_eq!(hd.v, IntMatrix::identity(3));
        let id = hermite_normal_form(&IntMatrix::identity(4)).unwrap();
        assert_eq!(id.h, IntMatrix::identity(4));
        assert_eq!(id.v, IntMatrix::identity(4));
    }

    #[test]
    fn small_upper_triangular_example() {
        let m = mat(&[&[2, 1], &[0, 3]]);
        let hd = hermite_normal_form(&m).unwrap();
        hd.validate().unwrap();
        assert_eq!(hd.h.get(0, 0) * hd.h.get(1, 1), BigInt::from(6));
        assert!(same_lattice(&m, &hd.h));
        // already in normal form: 0 <= 1 < 2
        assert_eq!(hd.h, m);
    }

    #[test]
    fn non_triangular_input() {
        let m = mat(&[&[3, 1], &[1, 2]]);
        let hd = hermite_normal_form(&m).unwrap();
        hd.validate().unwrap();
        assert!(same_lattice(&m, &hd.h));
        // bottom row has gcd 1, so h_22 = 1, h_11 = 5, and (3,1) in the lattice forces h_12 = 3
        assert_eq!(hd.h, mat(&[&[5, 3], &[0, 1]]));
    }

    #[test]
    fn singular_rejected() {
        assert_eq!(
            hermite_normal_form(&mat(&[&[2, 1], &[4, 2]])),
            Err(MatrixError::SingularMatrix)
        );
    }

    #[test]
    fn rectangular_lattice_index() {
        // lattice spanned by 6Z and 4Z is 2Z
        let a = mat(&[&[6, 4]]);
        let lh = lattice_hermite(&a).unwrap();
        assert_eq!(lh.h, mat(&[&[2]]));
        assert_eq!(lh.index(), BigInt::from(2));
        let prod = &a * &lh.transform;
        assert_eq!(prod.column(0), big_vec(&[0]));
        assert_eq!(prod.column(1), big_vec(&[2]));
    }
}
