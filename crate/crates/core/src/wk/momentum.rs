use crate::exactalg::{big, odd_double_factorial, MultiPoly, Symbol};

/// Gaussian momentum average against e^{-t p²/2}: p^{2k} -> (2k-1)!! t^{-k},
/// odd powers -> 0, factorized per momentum symbol. The normalization
/// (2π/t)^{dims/2} is not included here; see [`GaussianPrefactor`].
pub fn reduce_momentum(w: &MultiPoly, dims: usize) -> MultiPoly {
    reduce_momenta(w, Symbol::momenta(dims))
}

/// Same average, over the listed momenta only.
pub fn reduce_momenta(w: &MultiPoly, momenta: &[Symbol]) -> MultiPoly {
    let mut out = MultiPoly::zero();
    'terms: for (m, c) in w.terms() {
        let mut mono = *m;
        let mut c = c.clone();
        for &p in momenta {
            let e = m.exp(p);
            if e % 2 != 0 {
                continue 'terms;
            }
            c = c.scale(&big(&odd_double_factorial((e / 2) as u32)));
            mono = mono.with(p, 0).with(Symbol::T, mono.exp(Symbol::T) - e / 2);
        }
        out.add_term(mono, &c);
    }
    out
}

/// The factor (2π/t)^{dims/2} produced by the momentum integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussianPrefactor {
    pub dims: usize,
}

impl GaussianPrefactor {
    pub fn value(&self, t: f64) -> f64 {
        (2.0 * std::f64::consts::PI / t).powf(self.dims as f64 / 2.0)
    }
}
