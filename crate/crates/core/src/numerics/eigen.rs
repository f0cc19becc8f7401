use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::{Complex, Matrix, NumericsError};

const MAX_DIMENSION: usize = 64;
const DEFLATION_TOLERANCE: f64 = 1e-12;
const SWEEPS_PER_ROW: usize = 40;

/// Eigenvalues of a real matrix, sorted by real part then imaginary part.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    #[serde(with = "complex_list")]
    eigenvalues: Vec<Complex>,
}

impl Spectrum {
    /// Sorts `eigenvalues` into canonical order.
    pub fn new(mut eigenvalues: Vec<Complex>) -> Self {
        eigenvalues.sort_by(compare);
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[Complex] {
        &self.eigenvalues
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex> {
        self.eigenvalues.iter()
    }

    /// Largest eigenvalue modulus, 0 for an empty spectrum.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|l| l.norm()).fold(0.0, f64::max)
    }
}

fn compare(a: &Complex, b: &Complex) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

mod complex_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Complex;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        re: f64,
        im: f64,
    }

    pub fn serialize<S: Serializer>(v: &[Complex], s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = v.iter().map(|c| Entry { re: c.re, im: c.im }).collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| Complex::new(e.re, e.im)).collect())
    }
}

/// All eigenvalues of a real square matrix, with multiplicity.
///
/// Balances, reduces to upper Hessenberg form with Householder reflections and
/// runs Francis double-shift QR. Fails after `40 n` sweeps in total.
pub fn eigenvalues(m: &Matrix) -> Result<Spectrum, NumericsError> {
    if !m.is_square() {
        return Err(NumericsError::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if n > MAX_DIMENSION {
        return Err(NumericsError::TooLarge(n));
    }
    if n == 0 {
        return Ok(Spectrum::new(Vec::new()));
    }
    let mut h = Work::new(m);
    h.balance();
    h.reduce_to_hessenberg();
    let values = h.hessenberg_qr()?;
    if values.iter().any(|l| !l.re.is_finite() || !l.im.is_finite()) {
        return Err(NumericsError::ConvergenceFailure {
            sweeps: SWEEPS_PER_ROW * n,
        });
    }
    Ok(Spectrum::new(values))
}

/// Square scratch matrix the reductions operate on in place.
struct Work {
    n: usize,
    a: Vec<f64>,
}

impl Work {
    fn new(m: &Matrix) -> Self {
        Self {
            n: m.rows(),
            a: m.data().to_vec(),
        }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    #[inline]
    fn at_mut(&mut self, i: usize, j: usize) -> &mut f64 {
        &mut self.a[i * self.n + j]
    }

    /// Diagonal similarity by powers of two so that row and column norms are
    /// comparable. Exact in floating point.
    fn balance(&mut self) {
        const RADIX: f64 = 2.0;
        let n = self.n;
        loop {
            let mut converged = true;
            for i in 0..n {
                let mut c = 0.0;
                let mut r = 0.0;
                for j in (0..n).filter(|&j| j != i) {
                    c += self.at(j, i).abs();
                    r += self.at(i, j).abs();
                }
                if c == 0.0 || r == 0.0 {
                    continue;
                }
                let s = c + r;
                let mut f = 1.0;
                let mut g = r / RADIX;
                while c < g {
                    f *= RADIX;
                    c *= RADIX * RADIX;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= RADIX * RADIX;
                }
                if (c + r) / f < 0.95 * s {
                    converged = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        *self.at_mut(i, j) *= g;
                        *self.at_mut(j, i) *= f;
                    }
                }
            }
            if converged {
                break;
            }
        }
    }

    fn reduce_to_hessenberg(&mut self) {
        let n = self.n;
        if n < 3 {
            return;
        }
        let mut v = vec![0.0; n];
        for m in 1..n - 1 {
            let scale: f64 = (m..n).map(|i| self.at(i, m - 1).abs()).sum();
            if scale == 0.0 {
                continue;
            }
            let mut h = 0.0;
            for i in (m..n).rev() {
                v[i] = self.at(i, m - 1) / scale;
                h += v[i] * v[i];
            }
            let mut g = h.sqrt();
            if v[m] > 0.0 {
                g = -g;
            }
            h -= v[m] * g;
            v[m] -= g;

            // A <- (I - v v'/h) A
            for j in m..n {
                let f = (m..n).rev().map(|i| v[i] * self.at(i, j)).sum::<f64>() / h;
                for i in m..n {
                    *self.at_mut(i, j) -= f * v[i];
                }
            }
            // A <- A (I - v v'/h)
            for i in 0..n {
                let f = (m..n).rev().map(|j| v[j] * self.at(i, j)).sum::<f64>() / h;
                for j in m..n {
                    *self.at_mut(i, j) -= f * v[j];
                }
            }
            *self.at_mut(m, m - 1) = scale * g;
            for i in m + 1..n {
                *self.at_mut(i, m - 1) = 0.0;
            }
        }
    }

    /// Francis double-shift QR on an upper Hessenberg matrix. Eigenvalues only.
    fn hessenberg_qr(&mut self) -> Result<Vec<Complex>, NumericsError> {
        let size = self.n;
        let budget = SWEEPS_PER_ROW * size;
        let mut values = vec![Complex::new(0.0, 0.0); size];

        let mut norm = 0.0;
        for i in 0..size {
            for j in i.saturating_sub(1)..size {
                norm += self.at(i, j).abs();
            }
        }

        let mut exshift = 0.0;
        let mut iter = 0usize;
        let mut sweeps = 0usize;
        let (mut p, mut q, mut r, mut s, mut z);
        let (mut w, mut x, mut y);

        // `hi` is the active bottom row; signed so it can step past zero.
        let mut hi = size as isize - 1;
        while hi >= 0 {
            let n = hi as usize;

            // Find the lowest negligible subdiagonal.
            let mut l = n;
            while l > 0 {
                s = self.at(l - 1, l - 1).abs() + self.at(l, l).abs();
                if s == 0.0 {
                    s = norm;
                }
                if self.at(l, l - 1).abs() <= DEFLATION_TOLERANCE * s {
                    break;
                }
                l -= 1;
            }

            if l == n {
                // One real root.
                values[n] = Complex::new(self.at(n, n) + exshift, 0.0);
                hi -= 1;
                iter = 0;
            } else if l + 1 == n {
                // Trailing 2x2 block.
                w = self.at(n, n - 1) * self.at(n - 1, n);
                p = (self.at(n - 1, n - 1) - self.at(n, n)) / 2.0;
                q = p * p + w;
                z = q.abs().sqrt();
                x = self.at(n, n) + exshift;
                if q >= 0.0 {
                    z = if p >= 0.0 { p + z } else { p - z };
                    let first = x + z;
                    let second = if z != 0.0 { x - w / z } else { first };
                    values[n - 1] = Complex::new(first, 0.0);
                    values[n] = Complex::new(second, 0.0);
                } else {
                    values[n - 1] = Complex::new(x + p, z);
                    values[n] = Complex::new(x + p, -z);
                }
                hi -= 2;
                iter = 0;
            } else {
                sweeps += 1;
                if sweeps > budget {
                    return Err(NumericsError::ConvergenceFailure { sweeps: budget });
                }

                x = self.at(n, n);
                y = self.at(n - 1, n - 1);
                w = self.at(n, n - 1) * self.at(n - 1, n);

                // Exceptional shifts break cycles.
                if iter == 10 {
                    exshift += x;
                    for i in 0..=n {
                        *self.at_mut(i, i) -= x;
                    }
                    s = self.at(n, n - 1).abs() + self.at(n - 1, n - 2).abs();
                    x = 0.75 * s;
                    y = x;
                    w = -0.4375 * s * s;
                }
                if iter == 30 {
                    s = (y - x) / 2.0;
                    s = s * s + w;
                    if s > 0.0 {
                        s = s.sqrt();
                        if y < x {
                            s = -s;
                        }
                        s = x - w / ((y - x) / 2.0 + s);
                        for i in 0..=n {
                            *self.at_mut(i, i) -= s;
                        }
                        exshift += s;
                        x = 0.964;
                        y = x;
                        w = x;
                    }
                }
                iter += 1;

                // Look for two consecutive small subdiagonal elements.
                let mut m = n - 2;
                loop {
                    z = self.at(m, m);
                    r = x - z;
                    s = y - z;
                    p = (r * s - w) / self.at(m + 1, m) + self.at(m, m + 1);
                    q = self.at(m + 1, m + 1) - z - r - s;
                    r = self.at(m + 2, m + 1);
                    s = p.abs() + q.abs() + r.abs();
                    p /= s;
                    q /= s;
                    r /= s;
                    if m == l {
                        break;
                    }
                    let lhs = self.at(m, m - 1).abs() * (q.abs() + r.abs());
                    let rhs = f64::EPSILON
                        * (p.abs()
                            * (self.at(m - 1, m - 1).abs() + z.abs() + self.at(m + 1, m + 1).abs()));
                    if lhs < rhs {
                        break;
                    }
                    m -= 1;
                }

                for i in m + 2..=n {
                    *self.at_mut(i, i - 2) = 0.0;
                    if i > m + 2 {
                        *self.at_mut(i, i - 3) = 0.0;
                    }
                }

                // Double QR step on rows l..=n and columns m..=n.
                for k in m..n {
                    let notlast = k != n - 1;
                    if k != m {
                        p = self.at(k, k - 1);
                        q = self.at(k + 1, k - 1);
                        r = if notlast { self.at(k + 2, k - 1) } else { 0.0 };
                        x = p.abs() + q.abs() + r.abs();
                        if x == 0.0 {
                            continue;
                        }
                        p /= x;
                        q /= x;
                        r /= x;
                    } else {
                        x = 0.0;
                    }
                    s = (p * p + q * q + r * r).sqrt();
                    if p < 0.0 {
                        s = -s;
                    }
                    if s == 0.0 {
                        continue;
                    }
                    if k != m {
                        *self.at_mut(k, k - 1) = -s * x;
                    } else if l != m {
                        *self.at_mut(k, k - 1) = -self.at(k, k - 1);
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    for j in k..size {
                        let mut t = self.at(k, j) + q * self.at(k + 1, j);
                        if notlast {
                            t += r * self.at(k + 2, j);
                            *self.at_mut(k + 2, j) -= t * z;
                        }
                        *self.at_mut(k, j) -= t * x;
                        *self.at_mut(k + 1, j) -= t * y;
                    }
                    for i in 0..=n.min(k + 3) {
                        let mut t = x * self.at(i, k) + y * self.at(i, k + 1);
                        if notlast {
                            t += z * self.at(i, k + 2);
                            *self.at_mut(i, k + 2) -= t * r;
                        }
                        *self.at_mut(i, k) -= t;
                        *self.at_mut(i, k + 1) -= t * q;
                    }
                }
            }
        }
        Ok(values)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex, re: f64, im: f64, tol: f64) -> bool {
        (a.re - re).abs() <= tol && (a.im - im).abs() <= tol
    }

    #[test]
    fn identity_has_unit_eigenvalues() {
        let s = eigenvalues(&Matrix::identity(2)).unwrap();
        assert_eq!(s.eigenvalues(), &[Complex::new(1.0, 0.0), Complex::new(1.0, 0.0)]);
    }

    #[test]
    fn rotation_has_imaginary_pair() {
        let m = Matrix::from_rows(&[[0.0, 1.0], [-1.0, 0.0]]).unwrap();
        let s = eigenvalues(&m).unwrap();
        assert!(close(s.eigenvalues()[0], 0.0, -1.0, 1e-14));
        assert!(close(s.eigenvalues()[1], 0.0, 1.0, 1e-14));
    }

    #[test]
    fn reference_plant_open_loop() {
        let s = eigenvalues(&crate::control::reference_plant_matrix()).unwrap();
        let expected = [
            (-10.3932, -3.2910),
            (-10.3932, 3.2910),
            (0.2954, -4.9577),
            (0.2954, 4.9577),
        ];
        for (l, (re, im)) in s.iter().zip(expected) {
            assert!(close(*l, re, im, 1e-3), "{l} vs {re}+{im}i");
        }
    }

    #[test]
    fn upper_triangular_is_exact() {
        let m = Matrix::from_rows(&[
            [3.0, 1.0, 4.0, 1.0],
            [0.0, -5.0, 9.0, 2.0],
            [0.0, 0.0, 6.0, 5.0],
            [0.0, 0.0, 0.0, 0.25],
        ])
        .unwrap();
        let s = eigenvalues(&m).unwrap();
        let re: Vec<f64> = s.iter().map(|l| l.re).collect();
        assert_eq!(re, vec![-5.0, 0.25, 3.0, 6.0]);
        assert!(s.iter().all(|l| l.im == 0.0));
    }

    #[test]
    fn ordering_is_by_real_then_imaginary() {
        let s = Spectrum::new(vec![
            Complex::new(1.0, 2.0),
            Complex::new(-1.0, 0.0),
            Complex::new(1.0, -2.0),
        ]);
        assert_eq!(s.eigenvalues()[0], Complex::new(-1.0, 0.0));
        assert_eq!(s.eigenvalues()[1], Complex::new(1.0, -2.0));
    }

    #[test]
    fn degenerate_shapes() {
        assert!(eigenvalues(&Matrix::zeros(0, 0)).unwrap().is_empty());
        let s = eigenvalues(&Matrix::from_rows(&[[7.5]]).unwrap()).unwrap();
        assert_eq!(s.eigenvalues(), &[Complex::new(7.5, 0.0)]);
        assert!(matches!(
            eigenvalues(&Matrix::zeros(2, 3)),
            Err(NumericsError::NonSquare { .. })
        ));
        assert!(matches!(
            eigenvalues(&Matrix::zeros(65, 65)),
            Err(NumericsError::TooLarge(65))
        ));
    }

    #[test]
    fn zero_matrix_and_nilpotent() {
        let s = eigenvalues(&Matrix::zeros(5, 5)).unwrap();
        assert!(s.iter().all(|l| l.norm() == 0.0));
        let j = Matrix::from_rows(&[[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]]).unwrap();
        assert!(eigenvalues(&j).unwrap().iter().all(|l| l.norm() < 1e-12));
    }

    #[test]
    fn companion_matrix_roots() {
        // x^4 - 10x^3 + 35x^2 - 50x + 24 = (x-1)(x-2)(x-3)(x-4)
        let c = Matrix::from_rows(&[
            [10.0, -35.0, 50.0, -24.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let s = eigenvalues(&c).unwrap();
        for (l, want) in s.iter().zip([1.0, 2.0, 3.0, 4.0]) {
            assert!(close(*l, want, 0.0, 1e-9), "{l}");
        }
    }

    #[test]
    fn spectrum_serializes_as_re_im_pairs() {
        let s = Spectrum::new(vec![Complex::new(-1.0, 2.0)]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"eigenvalues":[{"re":-1.0,"im":2.0}]}"#);
        let back: Spectrum = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
