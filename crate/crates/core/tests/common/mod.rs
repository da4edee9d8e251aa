//! Reference computations that avoid the library's code paths: dense
//! Kronecker-product operators, explicit matrix products and closed forms.
#![allow(dead_code)]

use num_complex::Complex64;

pub type C = Complex64;
pub type Mat = Vec<Vec<C>>;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) })
                .collect()
        })
        .collect()
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
    let mut out = vec![vec![c(0.0, 0.0); ca * cb]; ra * rb];
    for i in 0..ra {
        for j in 0..ca {
            for k in 0..rb {
                for l in 0..cb {
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn kron_vec(a: &[C], b: &[C]) -> Vec<C> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x * y))
        .collect()
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn matvec(a: &Mat, v: &[C]) -> Vec<C> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn outer(a: &[C], b: &[C]) -> Mat {
    a.iter()
        .map(|x| b.iter().map(|y| x * y.conj()).collect())
        .collect()
}

pub fn trace(a: &Mat) -> C {
    (0..a.len()).map(|i| a[i][i]).sum()
}

/// |i⟩⟨j| on one qubit.
pub fn unit(i: usize, j: usize) -> Mat {
    let mut m = vec![vec![c(0.0, 0.0); 2]; 2];
    m[i][j] = c(1.0, 0.0);
    m
}

/// Dense operator of a one- or two-qubit gate on an n-qubit register,
/// built as a sum of Kronecker products of single-qubit operators.
pub fn embed(gate: &[C], targets: &[usize], n: usize) -> Mat {
    let local = 1 << targets.len();
    let dim = 1 << n;
    let mut total = vec![vec![c(0.0, 0.0); dim]; dim];
    for r in 0..local {
        for col in 0..local {
            let g = gate[r * local + col];
            if g == c(0.0, 0.0) {
                continue;
            }
            let mut term = vec![vec![c(1.0, 0.0)]];
            for q in 0..n {
                let factor = match targets.iter().position(|&t| t == q) {
                    Some(pos) => {
                        let shift = targets.len() - 1 - pos;
                        unit(r >> shift & 1, col >> shift & 1)
                    }
                    None => identity(2),
                };
                term = kron(&term, &factor);
            }
            for i in 0..dim {
                for j in 0..dim {
                    total[i][j] += g * term[i][j];
                }
            }
        }
    }
    total
}

pub fn pauli_x() -> Mat {
    vec![
        vec![c(0.0, 0.0), c(1.0, 0.0)],
        vec![c(1.0, 0.0), c(0.0, 0.0)],
    ]
}

pub fn pauli_y() -> Mat {
    vec![
        vec![c(0.0, 0.0), c(0.0, -1.0)],
        vec![c(0.0, 1.0), c(0.0, 0.0)],
    ]
}

pub fn pauli_z() -> Mat {
    vec![
        vec![c(1.0, 0.0), c(0.0, 0.0)],
        vec![c(0.0, 0.0), c(-1.0, 0.0)],
    ]
}

/// Roots of λ² − Tr(ρ)λ + det(ρ) for a 2×2 matrix, larger first.
pub fn char_poly_roots(m: &Mat) -> (f64, f64) {
    let tr = trace(m).re;
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
    ((tr + disc) / 2.0, (tr - disc) / 2.0)
}

pub fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_diff_mat(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| max_diff(x, y))
        .fold(0.0, f64::max)
}

/// Rotation of a 3-vector about the y-axis by `angle` (right-handed).
pub fn rotate_about_y(v: [f64; 3], angle: f64) -> [f64; 3] {
    let (s, co) = angle.sin_cos();
    [co * v[0] + s * v[2], v[1], -s * v[0] + co * v[2]]
}
