//! Dense LU factorisation with partial pivoting.

/// Row-major `n x n` LU factors of `P A = L U`, unit lower triangle implied.
#[derive(Debug, Clone)]
pub struct Lu {
    n: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
}

/// Raised when a pivot is zero or the factorisation produced a non-finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Singular;

impl Lu {
    pub fn factor(mut a: Vec<f64>, n: usize) -> Result<Lu, Singular> {
        assert_eq!(a.len(), n * n);
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].abs();
            for r in (k + 1)..n {
                let v = a[r * n + k].abs();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Singular);
            }
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let pivot = a[k * n + k];
            let (upper, lower) = a.split_at_mut((k + 1) * n);
            let row_k = &upper[k * n..];
            for row in lower.chunks_mut(n) {
                let factor = row[k] / pivot;
                if factor == 0.0 {
                    continue;
                }
                row[k] = factor;
                for c in (k + 1)..n {
                    row[c] -= factor * row_k[c];
                }
            }
        }
        Ok(Lu { n, lu: a, perm })
    }

    /// Solves `A x = b`, returning `x`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s: f64 = row.iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let s: f64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(u, y)| u * y).sum();
            x[i] = (x[i] - s) / row[i];
        }
        x
    }

    /// Full inverse, row-major.
    pub fn inverse(&self) -> Vec<f64> {
        let n = self.n;
        let mut inv = vec![0.0; n * n];
        let mut e = vec![0.0; n];
        for c in 0..n {
            e[c] = 1.0;
            let col = self.solve(&e);
            e[c] = 0.0;
            for r in 0..n {
                inv[r * n + c] = col[r];
            }
        }
        inv
    }
}
