//! Exact linear algebra over a field, generic in the scalar type.

use std::ops::{Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Field operations needed by the elimination routines.
pub trait Field:
    Clone + PartialEq + Zero + One + Neg<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Div<Output = Self>
{
}

impl<T> Field for T where
    T: Clone + PartialEq + Zero + One + Neg<Output = T> + Sub<Output = T> + Mul<Output = T> + Div<Output = T>
{
}

/// A growing set of linearly independent vectors kept in echelon form.
///
/// Each stored vector remembers how it was built from the inserted columns,
/// so membership of a target vector yields explicit coefficients.
#[derive(Clone, Debug)]
pub struct EchelonSpan<T> {
    dim: usize,
    /// (pivot index, reduced vector, combination of inserted columns)
    rows: Vec<(usize, Vec<T>, Vec<T>)>,
    inserted: usize,
}

impl<T: Field> EchelonSpan<T> {
    pub fn new(dim: usize) -> Self {
        EchelonSpan {
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns accepted so far (independent ones only).
    pub fn columns(&self) -> usize {
        self.inserted
    }

    /// Reduces `v` against the stored rows; returns the remainder and the
    /// combination of inserted columns that was subtracted.
    fn reduce(&self, v: &[T]) -> (Vec<T>, Vec<T>) {
        let mut r = v.to_vec();
        let mut combo = vec![T::zero(); self.inserted];
        for (piv, row, expr) in &self.rows {
            if r[*piv].is_zero() {
                continue;
            }
            let f = r[*piv].clone() / row[*piv].clone();
            for i in 0..self.dim {
                if !row[i].is_zero() {
                    r[i] = r[i].clone() - f.clone() * row[i].clone();
                }
            }
            for (j, e) in expr.iter().enumerate() {
                if !e.is_zero() {
                    combo[j] = combo[j].clone() + f.clone() * e.clone();
                }
            }
        }
        (r, combo)
    }

    /// Adds `v` if it is independent of the span; returns whether it was added.
    pub fn insert(&mut self, v: &[T]) -> bool {
        assert_eq!(v.len(), self.dim);
        let (r, combo) = self.reduce(v);
        let Some(piv) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // new row = v − Σ combo_j col_j, expressed over the inserted columns plus v itself
        let mut expr: Vec<T> = combo.into_iter().map(|c| -c).collect();
        expr.push(T::one());
        for (_, _, e) in &mut self.rows {
            e.push(T::zero());
        }
        self.inserted += 1;
        self.rows.push((piv, r, expr));
        true
    }

    /// Coefficients `x` over the inserted columns with `Σ x_j col_j = target`, if any.
    pub fn solve(&self, target: &[T]) -> Option<Vec<T>> {
        let (r, combo) = self.reduce(target);
        r.iter().all(Zero::is_zero).then_some(combo)
    }
}

/// One solution of `A x = b` (free variables set to zero), by Gaussian elimination.
pub fn solve<T: Field>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(pr) = (row..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = T::one() / m[row][col].clone();
        for j in col..=cols {
            m[row][j] = m[row][j].clone() * inv.clone();
        }
        for i in 0..rows {
            if i != row && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                for j in col..=cols {
                    let t = f.clone() * m[row][j].clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    if m[row..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = vec![T::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn solve_small_system() {
        let a = vec![vec![r(2, 1), r(1, 1)], vec![r(1, 1), r(3, 1)]];
        let x = solve(&a, &[r(3, 1), r(5, 1)]).unwrap();
        assert_eq!(x, vec![r(4, 5), r(7, 5)]);
        let sing = vec![vec![r(1, 1), r(2, 1)], vec![r(2, 1), r(4, 1)]];
        assert!(solve(&sing, &[r(1, 1), r(3, 1)]).is_none());
    }

    #[test]
    fn span_tracks_combinations() {
        let mut s = EchelonSpan::<BigRational>::new(3);
        assert!(s.insert(&[r(1, 1), r(1, 1), r(0, 1)]));
        assert!(!s.insert(&[r(2, 1), r(2, 1), r(0, 1)]));
        assert!(s.insert(&[r(0, 1), r(1, 1), r(1, 1)]));
        let x = s.solve(&[r(1, 1), r(3, 1), r(2, 1)]).unwrap();
        assert_eq!(x, vec![r(1, 1), r(2, 1)]);
        assert!(s.solve(&[r(0, 1), r(0, 1), r(1, 1)]).is_none());
    }

    #[test]
    fn works_over_f64() {
        let x = solve(&[vec![4.0, 0.0], vec![0.0, 2.0]], &[2.0, 1.0]).unwrap();
        assert_eq!(x, vec![0.5, 0.5]);
    }
}
