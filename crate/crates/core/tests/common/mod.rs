#![allow(dead_code)]

use llc_tune::{Complex, Matrix, Spectrum};
use rand::Rng;

pub fn random_matrix<R: Rng>(n: usize, rng: &mut R) -> Matrix {
    let data = (0..n * n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    Matrix::new(n, n, data).unwrap()
}

/// det(m - lambda I) by complex Gaussian elimination with partial pivoting.
pub fn shifted_determinant(m: &Matrix, lambda: Complex) -> Complex {
    let n = m.rows();
    let mut a: Vec<Complex> = m.data().iter().map(|&v| Complex::new(v, 0.0)).collect();
    for i in 0..n {
        a[i * n + i] -= lambda;
    }
    let mut det = Complex::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[x * n + k].norm().total_cmp(&a[y * n + k].norm()))
            .unwrap();
        if a[p * n + k].norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        if p != k {
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            for j in k..n {
                let t = a[k * n + j];
                a[i * n + j] -= f * t;
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let mut a = m.to_rows();
    let mut inv = Matrix::identity(n).to_rows();
    for k in 0..n {
        let p = (k..n).max_by(|&x, &y| a[x][k].abs().total_cmp(&a[y][k].abs()))?;
        if a[p][k].abs() < 1e-300 {
            return None;
        }
        a.swap(k, p);
        inv.swap(k, p);
        let d = a[k][k];
        for j in 0..n {
            a[k][j] /= d;
            inv[k][j] /= d;
        }
        for i in 0..n {
            if i != k {
                let f = a[i][k];
                for j in 0..n {
                    a[i][j] -= f * a[k][j];
                    inv[i][j] -= f * inv[k][j];
                }
            }
        }
    }
    Matrix::from_rows(&inv).ok()
}

pub fn condition_inf(p: &Matrix) -> f64 {
    inverse(p).map_or(f64::INFINITY, |inv| p.norm_inf() * inv.norm_inf())
}

/// Every non-real eigenvalue has a distinct conjugate partner.
pub fn conjugate_pairs_close(s: &Spectrum) -> bool {
    let values: Vec<Complex> = s.iter().copied().filter(|l| l.im != 0.0).collect();
    let mut used = vec![false; values.len()];
    for i in 0..values.len() {
        if used[i] {
            continue;
        }
        let target = values[i].conj();
        let tol = 1e-9 * values[i].norm().max(1.0);
        let partner = (0..values.len())
            .filter(|&j| j != i && !used[j])
            .find(|&j| (values[j] - target).norm() <= tol);
        match partner {
            Some(j) => {
                used[i] = true;
                used[j] = true;
            }
            None => return false,
        }
    }
    true
}

/// Largest distance between spectra after nearest-unused pairing.
pub fn spectrum_distance(a: &Spectrum, b: &Spectrum) -> f64 {
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for x in a.iter() {
        let (j, d) = b
            .iter()
            .enumerate()
            .filter(|(j, _)| !used[*j])
            .map(|(j, y)| (j, (x - y).norm()))
            .min_by(|p, q| p.1.total_cmp(&q.1))
            .unwrap();
        used[j] = true;
        worst = worst.max(d);
    }
    worst
}

pub fn product(s: &Spectrum) -> Complex {
    s.iter().fold(Complex::new(1.0, 0.0), |acc, l| acc * l)
}

pub fn sum(s: &Spectrum) -> Complex {
    s.iter().fold(Complex::new(0.0, 0.0), |acc, l| acc + l)
}
