use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::Error;

/// 2 GiB of f64 matrix storage.
pub const DEFAULT_MEMORY_BUDGET: usize = 2 << 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Exchange {
    Symmetric,
    Antisymmetric,
}

/// Symmetry block: parities in x and y, and x↔y exchange when the parities agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sector {
    pub parity_x: Parity,
    pub parity_y: Parity,
    pub exchange: Option<Exchange>,
}

impl Sector {
    pub fn new(parity_x: Parity, parity_y: Parity, exchange: Option<Exchange>) -> Result<Self, Error> {
        if exchange.is_some() && parity_x != parity_y {
            return Err(Error::InvalidArgument("exchange symmetry needs equal parities".into()));
        }
        Ok(Sector { parity_x, parity_y, exchange })
    }

    /// Blocks that partition the full space, each with its degeneracy: (e,o) stands for (o,e) too.
    pub fn partition() -> Vec<(Sector, u32)> {
        use Exchange::*;
        use Parity::*;
        vec![
            (Sector { parity_x: Even, parity_y: Even, exchange: Some(Symmetric) }, 1),
            (Sector { parity_x: Even, parity_y: Even, exchange: Some(Antisymmetric) }, 1),
            (Sector { parity_x: Odd, parity_y: Odd, exchange: Some(Symmetric) }, 1),
            (Sector { parity_x: Odd, parity_y: Odd, exchange: Some(Antisymmetric) }, 1),
            (Sector { parity_x: Even, parity_y: Odd, exchange: None }, 2),
        ]
    }

    /// The four parity blocks without exchange.
    pub fn parity_blocks() -> Vec<Sector> {
        use Parity::*;
        [(Even, Even), (Even, Odd), (Odd, Even), (Odd, Odd)]
            .into_iter()
            .map(|(parity_x, parity_y)| Sector { parity_x, parity_y, exchange: None })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BasisKind {
    /// Harmonic-oscillator states n < size in each direction.
    OscillatorProduct { size: usize, omega: f64 },
    /// Sinc grid at (j+½)h, |x|,|y| < extent, points with V > vcut dropped.
    Grid { spacing: f64, extent: f64, vcut: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    pub kind: BasisKind,
    /// None means the full, unsymmetrized product space.
    pub sector: Option<Sector>,
}

impl BasisSpec {
    pub fn oscillator_product(size: usize, omega: f64, sector: Option<Sector>) -> Result<Self, Error> {
        if size < 1 || !(omega > 0.0) {
            return Err(Error::InvalidArgument(format!("oscillator basis needs size ≥ 1, ω > 0 (got {size}, {omega})")));
        }
        Ok(BasisSpec { kind: BasisKind::OscillatorProduct { size, omega }, sector })
    }

    pub fn grid(spacing: f64, extent: f64, vcut: f64, sector: Option<Sector>) -> Result<Self, Error> {
        if !(spacing > 0.0 && extent > spacing && vcut > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "grid needs 0 < h < L and vcut > 0 (got h={spacing}, L={extent}, vcut={vcut})"
            )));
        }
        Ok(BasisSpec { kind: BasisKind::Grid { spacing, extent, vcut }, sector })
    }

    pub fn with_sector(&self, sector: Option<Sector>) -> Self {
        BasisSpec { sector, ..*self }
    }
}

/// Dense symmetric matrix, row-major and fully stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    pub n: usize,
    pub data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let row = &self.data[i * self.n..(i + 1) * self.n];
            *yi = row.iter().zip(x).map(|(a, b)| a * b).sum();
        }
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..i {
                m = m.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        m
    }
}

/// One direction: kinetic matrix and position-squared matrix in a parity-adapted basis.
struct OneDim {
    kinetic: Vec<Vec<f64>>,
    x2: Vec<Vec<f64>>,
    x2_diagonal: bool,
    /// Grid coordinates, empty for oscillator states.
    coords: Vec<f64>,
}

fn oscillator_1d(size: usize, omega: f64, hbar: f64, parity: Option<Parity>) -> OneDim {
    let idx: Vec<usize> = (0..size)
        .filter(|n| match parity {
            None => true,
            Some(Parity::Even) => n % 2 == 0,
            Some(Parity::Odd) => n % 2 == 1,
        })
        .collect();
    let m = idx.len();
    let mut kinetic = vec![vec![0.0; m]; m];
    let mut x2 = vec![vec![0.0; m]; m];
    for (a, &n) in idx.iter().enumerate() {
        for (b, &k) in idx.iter().enumerate() {
            let (diag, off) = if n == k {
                (2.0 * n as f64 + 1.0, 0.0)
            } else if k == n + 2 {
                (0.0, ((n + 1) as f64 * (n + 2) as f64).sqrt())
            } else if n == k + 2 {
                (0.0, ((k + 1) as f64 * (k + 2) as f64).sqrt())
            } else {
                continue;
            };
            // x² = (ħ/2ω)(2n+1 ± ...), p²/2 = (ħω/4)(2n+1 ∓ ...)
            x2[a][b] = hbar / (2.0 * omega) * (diag + off);
            kinetic[a][b] = hbar * omega / 4.0 * (diag - off);
        }
    }
    OneDim { kinetic, x2, x2_diagonal: false, coords: Vec::new() }
}

fn sinc_t(h: f64, d: i64, hbar: f64) -> f64 {
    let c = hbar * hbar / (h * h);
    if d == 0 {
        c * PI * PI / 6.0
    } else {
        let s = if d % 2 == 0 { 1.0 } else { -1.0 };
        c * s / (d * d) as f64
    }
}

fn grid_1d(h: f64, extent: f64, hbar: f64, parity: Option<Parity>) -> OneDim {
    let half = (extent / h).floor() as i64;
    let (coords, kinetic): (Vec<f64>, Vec<Vec<f64>>) = match parity {
        Some(p) => {
            let pts: Vec<i64> = (0..half).collect();
            let k = pts
                .iter()
                .map(|&i| pts.iter().map(|&j| sinc_t(h, i - j, hbar) + p.sign() * sinc_t(h, i + j + 1, hbar)).collect())
                .collect();
            (pts.iter().map(|&j| (j as f64 + 0.5) * h).collect(), k)
        }
        None => {
            let pts: Vec<i64> = (-half..half).collect();
            let k = pts.iter().map(|&i| pts.iter().map(|&j| sinc_t(h, i - j, hbar)).collect()).collect();
            (pts.iter().map(|&j| (j as f64 + 0.5) * h).collect(), k)
        }
    };
    let m = coords.len();
    let mut x2 = vec![vec![0.0; m]; m];
    for i in 0..m {
        x2[i][i] = coords[i] * coords[i];
    }
    OneDim { kinetic, x2, x2_diagonal: true, coords }
}

/// Product states kept in a sector, with their normalization.
fn sector_states(dx: &OneDim, dy: &OneDim, keep: &dyn Fn(usize, usize) -> bool, ex: Option<Exchange>) -> Vec<(usize, usize, f64)> {
    let mut out = Vec::new();
    for a in 0..dx.kinetic.len() {
        for b in 0..dy.kinetic.len() {
            if !keep(a, b) {
                continue;
            }
            match ex {
                None => out.push((a, b, 1.0)),
                Some(Exchange::Symmetric) if a >= b => out.push((a, b, if a == b { 0.5f64.sqrt() } else { 1.0 })),
                Some(Exchange::Antisymmetric) if a > b => out.push((a, b, 1.0)),
                _ => {}
            }
        }
    }
    out
}

/// Matrix of −(ħ²/2)∇² + (g²/2)x²y² in the requested basis and sector.
pub fn build_hamiltonian_2d(g: f64, hbar: f64, basis: &BasisSpec, budget_bytes: usize) -> Result<SymMatrix, Error> {
    if !(g > 0.0 && hbar > 0.0) {
        return Err(Error::InvalidArgument(format!("g and ħ must be positive (got {g}, {hbar})")));
    }
    let (px, py, ex) = match basis.sector {
        Some(s) => (Some(s.parity_x), Some(s.parity_y), s.exchange),
        None => (None, None, None),
    };
    let (dx, dy) = match basis.kind {
        BasisKind::OscillatorProduct { size, omega } => {
            (oscillator_1d(size, omega, hbar, px), oscillator_1d(size, omega, hbar, py))
        }
        BasisKind::Grid { spacing, extent, .. } => (grid_1d(spacing, extent, hbar, px), grid_1d(spacing, extent, hbar, py)),
    };
    let g2 = g * g;
    let keep: Box<dyn Fn(usize, usize) -> bool> = match basis.kind {
        BasisKind::Grid { vcut, .. } => {
            let (cx, cy) = (dx.coords.clone(), dy.coords.clone());
            Box::new(move |a, b| 0.5 * g2 * (cx[a] * cy[b]).powi(2) <= vcut)
        }
        _ => Box::new(|_, _| true),
    };
    let states = sector_states(&dx, &dy, keep.as_ref(), ex);
    let m = states.len();
    let needed = m.saturating_mul(m).saturating_mul(8);
    if needed > budget_bytes {
        return Err(Error::MemoryBudget { needed, budget: budget_bytes });
    }
    if m == 0 {
        return Err(Error::InvalidArgument("basis has no states".into()));
    }
    let diag_v = dx.x2_diagonal;
    let elem = |a: usize, b: usize, c: usize, d: usize| -> f64 {
        let mut v = 0.0;
        if b == d {
            v += dx.kinetic[a][c];
        }
        if a == c {
            v += dy.kinetic[b][d];
        }
        if !diag_v || (a == c && b == d) {
            v += 0.5 * g2 * dx.x2[a][c] * dy.x2[b][d];
        }
        v
    };
    let s = match ex {
        Some(Exchange::Antisymmetric) => -1.0,
        _ => 1.0,
    };
    let mut h = SymMatrix::zeros(m);
    for i in 0..m {
        let (a, b, na) = states[i];
        for j in 0..=i {
            let (c, d, nc) = states[j];
            let mut v = elem(a, b, c, d);
            if ex.is_some() {
                v += s * elem(a, b, d, c);
            }
            let v = v * na * nc;
            if v != 0.0 {
                h.set(i, j, v);
            }
        }
    }
    Ok(h)
}

/// Number of sector states without building the matrix.
pub fn basis_dimension(g: f64, hbar: f64, basis: &BasisSpec) -> usize {
    let (px, py, ex) = match basis.sector {
        Some(s) => (Some(s.parity_x), Some(s.parity_y), s.exchange),
        None => (None, None, None),
    };
    match basis.kind {
        BasisKind::OscillatorProduct { size, omega } => {
            let (dx, dy) = (oscillator_1d(size, omega, hbar, px), oscillator_1d(size, omega, hbar, py));
            sector_states(&dx, &dy, &|_, _| true, ex).len()
        }
        BasisKind::Grid { spacing, extent, vcut } => {
            let (dx, dy) = (grid_1d(spacing, extent, hbar, px), grid_1d(spacing, extent, hbar, py));
            let g2 = g * g;
            let keep = |a: usize, b: usize| 0.5 * g2 * (dx.coords[a] * dy.coords[b]).powi(2) <= vcut;
            sector_states(&dx, &dy, &keep, ex).len()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillator_moments() {
        let (hbar, omega) = (1.3, 0.7);
        let b = BasisSpec::oscillator_product(4, omega, None).unwrap();
        let h = build_hamiltonian_2d(1.0, hbar, &b, DEFAULT_MEMORY_BUDGET).unwrap();
        // state |00> is index 0: <p²/2> twice plus (g²/2)<x²>²
        let expect = 2.0 * hbar * omega / 4.0 + 0.5 * (hbar / (2.0 * omega)).powi(2);
        assert!((h.get(0, 0) - expect).abs() < 1e-14);
        let d = oscillator_1d(6, omega, hbar, None);
        for n in 0..6 {
            assert!((d.kinetic[n][n] - hbar * omega / 2.0 * (n as f64 + 0.5)).abs() < 1e-14);
        }
        assert_eq!(h.max_asymmetry(), 0.0);
    }

    #[test]
    fn sector_sizes_partition_basis() {
        for kind in [
            BasisSpec::oscillator_product(9, 1.0, None).unwrap(),
            BasisSpec::grid(0.4, 6.0, 30.0, None).unwrap(),
        ] {
            let full = basis_dimension(1.0, 1.0, &kind);
            let split: usize =
                Sector::partition().iter().map(|(s, mult)| *mult as usize * basis_dimension(1.0, 1.0, &kind.with_sector(Some(*s)))).sum();
            assert_eq!(full, split);
        }
    }

    #[test]
    fn memory_budget() {
        let b = BasisSpec::oscillator_product(20, 1.0, None).unwrap();
        assert!(matches!(build_hamiltonian_2d(1.0, 1.0, &b, 1000), Err(Error::MemoryBudget { .. })));
        assert!(Sector::new(Parity::Even, Parity::Odd, Some(Exchange::Symmetric)).is_err());
    }
}
