//! Fraction-free (Bareiss) elimination over any [`Field`].

use crate::field::Field;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("system is inconsistent")]
    Inconsistent,
    #[error("kernel has dimension {0}, expected 1")]
    KernelDimension(usize),
    #[error("normalizing coordinate of the kernel vector vanishes")]
    ZeroNormalization,
    #[error("shape mismatch")]
    Shape,
}

pub type Matrix<F> = Vec<Vec<F>>;

/// In-place Bareiss forward elimination. Returns the pivot columns and the
/// parity of the row swaps performed.
pub fn echelon<F: Field>(m: &mut Matrix<F>) -> (Vec<usize>, bool) {
    let rows = m.len();
    if rows == 0 {
        return (Vec::new(), false);
    }
    let cols = m[0].len();
    let mut prev = F::one();
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut odd = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = (r..rows).filter(|&i| !m[i][c].is_zero()).min_by_key(|&i| m[i][c].size_hint());
        let Some(p) = piv else { continue };
        if p != r {
            m.swap(r, p);
            odd = !odd;
        }
        let pv = m[r][c].clone();
        let prev_inv = prev.finv().expect("Bareiss pivot is nonzero");
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let f = row[c].clone();
            for j in (c + 1)..cols {
                let mut x = row[j].fmul(&pv);
                if !f.is_zero() && !pivot_row[j].is_zero() {
                    x = x.fsub(&pivot_row[j].fmul(&f));
                }
                row[j] = if prev.is_one() { x } else { x.fmul(&prev_inv) };
            }
            row[c] = F::zero();
        }
        prev = pv;
        pivots.push(c);
        r += 1;
    }
    (pivots, odd)
}

/// Determinant by Bareiss elimination.
pub fn det<F: Field>(m: &Matrix<F>) -> F {
    let n = m.len();
    if n == 0 {
        return F::one();
    }
    let mut a = m.clone();
    let (piv, odd) = echelon(&mut a);
    if piv.len() < n {
        return F::zero();
    }
    let d = a[n - 1][n - 1].clone();
    if odd {
        d.fneg()
    } else {
        d
    }
}

fn back_substitute<F: Field>(a: &Matrix<F>, pivots: &[usize], x: &mut [F]) {
    for (r, &c) in pivots.iter().enumerate().rev() {
        let mut acc = F::zero();
        for j in (c + 1)..x.len() {
            if !a[r][j].is_zero() && !x[j].is_zero() {
                acc = acc.fadd(&a[r][j].fmul(&x[j]));
            }
        }
        x[c] = acc.fneg().fdiv(&a[r][c]).expect("pivot is nonzero");
    }
}

/// Unique solution of the square system `m x = b`.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Result<Vec<F>, LinalgError> {
    let n = m.len();
    if b.len() != n || m.iter().any(|r| r.len() != n) {
        return Err(LinalgError::Shape);
    }
    let mut a: Matrix<F> = m.iter().zip(b).map(|(r, bi)| {
        let mut row = r.clone();
        row.push(bi.fneg());
        row
    }).collect();
    let (piv, _) = echelon(&mut a);
    if piv.len() < n || piv[..n].iter().enumerate().any(|(i, &c)| c != i) {
        return Err(if piv.contains(&n) { LinalgError::Inconsistent } else { LinalgError::Singular });
    }
    let mut x = vec![F::zero(); n + 1];
    x[n] = F::one();
    back_substitute(&a, &piv, &mut x);
    x.truncate(n);
    Ok(x)
}

/// Rank of a matrix.
pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut a = m.clone();
    echelon(&mut a).0.len()
}

/// Basis of the right kernel, one vector per free column.
pub fn kernel<F: Field>(m: &Matrix<F>, ncols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    if a.is_empty() {
        return (0..ncols)
            .map(|i| (0..ncols).map(|j| if i == j { F::one() } else { F::zero() }).collect())
            .collect();
    }
    let (piv, _) = echelon(&mut a);
    let free: Vec<usize> = (0..ncols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![F::zero(); ncols];
            x[f] = F::one();
            back_substitute(&a, &piv, &mut x);
            x
        })
        .collect()
}

/// The unique (up to scale) kernel vector, scaled so that coordinate `fix` is 1.
pub fn normalized_kernel_vector<F: Field>(m: &Matrix<F>, ncols: usize, fix: usize) -> Result<Vec<F>, LinalgError> {
    let k = kernel(m, ncols);
    if k.len() != 1 {
        return Err(LinalgError::KernelDimension(k.len()));
    }
    let v = &k[0];
    let s = v[fix].finv().ok_or(LinalgError::ZeroNormalization)?;
    Ok(v.iter().map(|x| x.fmul(&s)).collect())
}

/// Matrix inverse by column solves.
pub fn inverse<F: Field>(m: &Matrix<F>) -> Result<Matrix<F>, LinalgError> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<F> = (0..n).map(|i| if i == j { F::one() } else { F::zero() }).collect();
        cols.push(solve(m, &e)?);
    }
    Ok((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

pub fn mat_mul<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let mut acc = F::zero();
                    for l in 0..k {
                        if !a[i][l].is_zero() && !b[l][j].is_zero() {
                            acc = acc.fadd(&a[i][l].fmul(&b[l][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn transpose<F: Field>(a: &Matrix<F>) -> Matrix<F> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Q;

    fn q(n: i64) -> Q {
        Q::new(n, 1)
    }

    #[test]
    fn det_solve_kernel() {
        let m = vec![vec![q(2), q(1)], vec![q(4), q(3)]];
        assert_eq!(det(&m), q(2));
        assert_eq!(solve(&m, &[q(3), q(7)]).unwrap(), vec![q(1), q(1)]);
        let s = vec![vec![q(1), q(2)], vec![q(2), q(4)]];
        assert_eq!(det(&s), q(0));
        assert_eq!(normalized_kernel_vector(&s, 2, 1).unwrap(), vec![q(-2), q(1)]);
        assert!(solve(&s, &[q(1), q(0)]).is_err());
    }

    #[test]
    fn inverse_times_matrix() {
        let m = vec![vec![q(1), q(2), q(0)], vec![q(0), q(1), q(3)], vec![q(4), q(0), q(1)]];
        let i = inverse(&m).unwrap();
        let id = mat_mul(&m, &i);
        for (r, row) in id.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                assert_eq!(*x, if r == c { q(1) } else { q(0) });
            }
        }
    }
}
