//! Dense matrices over `F_p`: just enough Gaussian elimination for ranks of
//! graded pieces.

use alloc::vec::Vec;

use crate::field::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        DenseMatrix { rows, cols, data: alloc::vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: u32, f: &PrimeField) {
        let i = r * self.cols + c;
        self.data[i] = f.add(self.data[i], v);
    }

    /// Rank by row reduction (consumes a copy).
    pub fn rank(&self, f: &PrimeField) -> usize {
        let mut m = self.clone();
        m.row_reduce(f)
    }

    /// In-place reduction to row echelon form; returns the rank.
    pub fn row_reduce(&mut self, f: &PrimeField) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| self.get(r, c) != 0) else {
                continue;
            };
            if p != rank {
                for k in 0..self.cols {
                    self.data.swap(p * self.cols + k, rank * self.cols + k);
                }
            }
            let inv = f.inv(self.get(rank, c));
            for k in c..self.cols {
                let v = f.mul(self.get(rank, k), inv);
                self.set(rank, k, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, c);
                if factor == 0 {
                    continue;
                }
                for k in c..self.cols {
                    let v = f.sub(self.get(r, k), f.mul(factor, self.get(rank, k)));
                    self.set(r, k, v);
                }
            }
            rank += 1;
        }
        rank
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let f = PrimeField::new(7).unwrap();
        let mut m = DenseMatrix::zeros(3, 3);
        for (r, row) in [[1, 2, 3], [2, 4, 6], [0, 1, 1]].iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, *v);
            }
        }
        assert_eq!(m.rank(&f), 2);
        assert_eq!(DenseMatrix::zeros(0, 4).rank(&f), 0);
        assert_eq!(DenseMatrix::zeros(3, 3).rank(&f), 0);
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // [[1,1],[1,-1]] has determinant -2
        let mut m = DenseMatrix::zeros(2, 2);
        m.set(0, 0, 1);
        m.set(0, 1, 1);
        m.set(1, 0, 1);
        let f2 = PrimeField::new(2).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        m.set(1, 1, 1);
        assert_eq!(m.rank(&f2), 1);
        m.set(1, 1, 4);
        assert_eq!(m.rank(&f5), 2);
    }
}
