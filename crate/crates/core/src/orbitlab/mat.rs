//! Dense matrices over a prime field.

use super::field::Fp;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub n: usize, // rows
    pub m: usize, // cols
    pub a: Vec<u32>,
}

impl Mat {
    pub fn zero(n: usize, m: usize) -> Self {
        Mat {
            n,
            m,
            a: vec![0; n * m],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut out = Self::zero(n, n);
        for i in 0..n {
            out.a[i * n + i] = 1;
        }
        out
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.a[i * self.m + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.a[i * self.m + j] = v;
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        let n = rows.len();
        let m = if n == 0 { 0 } else { rows[0].len() };
        Mat {
            n,
            m,
            a: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    pub fn mul(&self, other: &Mat, f: Fp) -> Mat {
        assert_eq!(self.m, other.n);
        let mut out = Mat::zero(self.n, other.m);
        for i in 0..self.n {
            for k in 0..self.m {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..other.m {
                    let v = f.add(out.get(i, j), f.mul(x, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// `self * v` for a column vector.
    pub fn mul_vec(&self, v: &[u32], f: Fp) -> Vec<u32> {
        assert_eq!(self.m, v.len());
        (0..self.n)
            .map(|i| {
                let mut s = 0u32;
                for j in 0..self.m {
                    s = f.add(s, f.mul(self.get(i, j), v[j]));
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.m, self.n);
        for i in 0..self.n {
            for j in 0..self.m {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn rank(&self, f: Fp) -> usize {
        let mut rows: Vec<Vec<u32>> = (0..self.n)
            .map(|i| self.a[i * self.m..(i + 1) * self.m].to_vec())
            .collect();
        let mut rank = 0;
        for col in 0..self.m {
            let pivot = (rank..rows.len()).find(|&r| rows[r][col] != 0);
            if let Some(p) = pivot {
                rows.swap(rank, p);
                let inv = f.inv(rows[rank][col]);
                for j in 0..self.m {
                    rows[rank][j] = f.mul(rows[rank][j], inv);
                }
                for r in 0..rows.len() {
                    if r != rank && rows[r][col] != 0 {
                        let factor = rows[r][col];
                        for j in 0..self.m {
                            let s = f.sub(rows[r][j], f.mul(factor, rows[rank][j]));
                            rows[r][j] = s;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn inverse(&self, f: Fp) -> Option<Mat> {
        assert_eq!(self.n, self.m);
        let n = self.n;
        let mut a: Vec<Vec<u32>> = (0..n).map(|i| self.a[i * n..(i + 1) * n].to_vec()).collect();
        let mut inv: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let pinv = f.inv(a[col][col]);
            for j in 0..n {
                a[col][j] = f.mul(a[col][j], pinv);
                inv[col][j] = f.mul(inv[col][j], pinv);
            }
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let factor = a[r][col];
                    for j in 0..n {
                        a[r][j] = f.sub(a[r][j], f.mul(factor, a[col][j]));
                        inv[r][j] = f.sub(inv[r][j], f.mul(factor, inv[col][j]));
                    }
                }
            }
        }
        Some(Mat::from_rows(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let f = Fp::new(5).unwrap();
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![0, 1, 3], vec![4, 0, 2]]);
        let inv = m.inverse(f).unwrap();
        assert_eq!(m.mul(&inv, f), Mat::identity(3));
        assert_eq!(inv.mul(&m, f), Mat::identity(3));
        let singular = Mat::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse(f).is_none());
        assert_eq!(singular.rank(f), 1);
    }

    #[test]
    fn mul_vec_matches_mul() {
        let f = Fp::new(7).unwrap();
        let m = Mat::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(m.mul_vec(&[5, 6], f), vec![3, 4]);
    }
}
