use std::os::raw::{c_char, c_int};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::Error;

use super::basis::{BasisSpec, SymMatrix};

/// Above this size, and when few levels are wanted, the iterative solver is used.
pub const DENSE_MAX: usize = 3000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    Dense,
    Lanczos,
}

/// All eigenvalues, ascending (LAPACK dsyevd, no vectors).
pub fn dense_eigenvalues(h: &SymMatrix) -> Result<Vec<f64>, Error> {
    let n = h.n as c_int;
    let mut a = h.data.clone();
    let mut w = vec![0.0; h.n];
    let (jobz, uplo) = (b'N' as c_char, b'L' as c_char);
    let mut info: c_int = 0;
    let (mut wq, mut iwq) = (0.0f64, 0 as c_int);
    let query: c_int = -1;
    // SAFETY: buffers sized per the LAPACK contract; workspace query first.
    unsafe {
        lapack_sys::dsyevd_(&jobz, &uplo, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(), &mut wq, &query, &mut iwq, &query, &mut info);
    }
    if info != 0 {
        return Err(Error::Numeric(format!("dsyevd workspace query failed, info = {info}")));
    }
    let (lwork, liwork) = (wq as c_int, iwq);
    let mut work = vec![0.0; lwork.max(1) as usize];
    let mut iwork = vec![0 as c_int; liwork.max(1) as usize];
    unsafe {
        lapack_sys::dsyevd_(
            &jobz, &uplo, &n, a.as_mut_ptr(), &n, w.as_mut_ptr(), work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(Error::Numeric(format!("dsyevd did not converge, info = {info}")));
    }
    Ok(w)
}

/// Eigenvalues and eigenvectors (column-major, n×n) of a symmetric tridiagonal matrix.
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>), Error> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.resize(n.max(1), 0.0);
    let mut z = vec![0.0; n * n];
    let mut work = vec![0.0; (2 * n).max(1)];
    let (jobz, nn) = (b'V' as c_char, n as c_int);
    let mut info: c_int = 0;
    unsafe {
        lapack_sys::dstev_(&jobz, &nn, d.as_mut_ptr(), e.as_mut_ptr(), z.as_mut_ptr(), &nn, work.as_mut_ptr(), &mut info);
    }
    if info != 0 {
        return Err(Error::Numeric(format!("dstev did not converge, info = {info}")));
    }
    Ok((d, z))
}

/// Lowest `count` eigenvalues by Lanczos with full reorthogonalization.
pub fn lanczos_lowest(h: &SymMatrix, count: usize, tol: f64, seed: u64) -> Result<Vec<f64>, Error> {
    let n = h.n;
    let count = count.min(n);
    let mut steps = (3 * count + 40).min(n);
    let mut last_residual = f64::INFINITY;
    for _ in 0..4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut q: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
        normalize(&mut q);
        let mut basis: Vec<Vec<f64>> = Vec::with_capacity(steps);
        let (mut alpha, mut beta) = (Vec::new(), Vec::new());
        let mut w = vec![0.0; n];
        for j in 0..steps {
            h.matvec(&q, &mut w);
            let a = dot(&q, &w);
            alpha.push(a);
            basis.push(q.clone());
            for v in &basis {
                let c = dot(v, &w);
                axpy(-c, v, &mut w);
            }
            for v in &basis {
                let c = dot(v, &w);
                axpy(-c, v, &mut w);
            }
            let b = norm(&w);
            if j + 1 == steps || b < 1e-14 * a.abs().max(1.0) {
                beta.push(b);
                break;
            }
            beta.push(b);
            q = w.iter().map(|x| x / b).collect();
        }
        let m = alpha.len();
        let (theta, z) = tridiagonal_eigen(&alpha, &beta[..m - 1])?;
        let bm = beta[m - 1];
        let want = count.min(m);
        let worst = (0..want)
            .map(|i| (bm * z[i * m + m - 1]).abs() / theta[i].abs().max(1.0))
            .fold(0.0, f64::max);
        last_residual = worst;
        if worst < tol || m == n {
            return Ok(theta[..want].to_vec());
        }
        steps = (2 * steps).min(n);
    }
    Err(Error::Numeric(format!("Lanczos did not converge: worst relative residual {last_residual:e} > {tol:e}")))
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn normalize(a: &mut [f64]) {
    let s = norm(a);
    a.iter_mut().for_each(|x| *x /= s);
}

fn axpy(c: f64, x: &[f64], y: &mut [f64]) {
    y.iter_mut().zip(x).for_each(|(yi, xi)| *yi += c * xi);
}

/// Eigenvalues ascending with a per-level convergence estimate (filled by comparison).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub basis: Option<BasisSpec>,
    pub eigenvalues: Vec<f64>,
    pub convergence: Vec<Option<f64>>,
    pub solver: Option<Solver>,
    /// Levels below this energy are trusted; above it the tail model takes over.
    pub reliable_below: Option<f64>,
}

impl Spectrum {
    pub fn from_levels(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        let n = eigenvalues.len();
        Spectrum { basis: None, eigenvalues, convergence: vec![None; n], solver: None, reliable_below: None }
    }

    /// Fills per-level differences against a second basis.
    pub fn with_convergence(mut self, other: &Spectrum) -> Self {
        for (i, c) in self.convergence.iter_mut().enumerate() {
            *c = other.eigenvalues.get(i).map(|e| (e - self.eigenvalues[i]).abs());
        }
        self
    }

    pub fn ground(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }
}

/// Lowest `count` levels; dense when small or when many levels are requested.
pub fn eigen_spectrum(h: &SymMatrix, count: usize) -> Result<Spectrum, Error> {
    if h.max_asymmetry() > 1e-12 * h.data.iter().fold(0.0f64, |m, x| m.max(x.abs())) {
        return Err(Error::InvalidArgument("matrix is not symmetric".into()));
    }
    let count = count.min(h.n);
    let (levels, solver) = if h.n <= DENSE_MAX || count > h.n / 10 {
        let mut w = dense_eigenvalues(h)?;
        w.truncate(count);
        (w, Solver::Dense)
    } else {
        (lanczos_lowest(h, count, 1e-10, 7)?, Solver::Lanczos)
    };
    let mut s = Spectrum::from_levels(levels);
    s.solver = Some(solver);
    Ok(s)
}
