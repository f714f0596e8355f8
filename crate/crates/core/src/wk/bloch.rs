use serde::{Deserialize, Serialize};

use crate::exactalg::{int, GaussRational, MultiPoly, Symbol};

use super::recursion::WkSequence;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochEntry {
    pub order: usize,
    pub residual_zero: bool,
    pub vanishes_at_t0: bool,
    pub residual_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochReport {
    pub w0_is_one: bool,
    pub entries: Vec<BlochEntry>,
}

impl BlochReport {
    pub fn passed(&self) -> bool {
        self.w0_is_one && self.entries.iter().all(|e| e.residual_zero && e.vanishes_at_t0)
    }

    pub fn failing_orders(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|e| !(e.residual_zero && e.vanishes_at_t0))
            .map(|e| e.order)
            .collect()
    }
}

/// Re-checks every order against the covariant form
/// dW_k/dt = 1/2 [D² W_{k-2} + 2i p·D W_{k-1}],  D = ∇ - t∇V.
pub fn verify_bloch(seq: &WkSequence) -> BlochReport {
    let dims = seq.potential.dims();
    let pos = Symbol::positions(dims);
    let grad = seq.potential.grad();
    let t = MultiPoly::var(Symbol::T);
    let cov = |f: &MultiPoly, j: usize| &f.diff(pos[j]) - &(&(&t * &grad[j]) * f);

    let mut entries = Vec::new();
    for k in 1..seq.orders.len() {
        let mut rhs = MultiPoly::zero();
        if k >= 2 {
            for j in 0..dims {
                rhs = &rhs + &cov(&cov(&seq.orders[k - 2], j), j);
            }
        }
        let two_i = MultiPoly::constant(GaussRational::new(int(0), int(2)));
        for j in 0..dims {
            let p = MultiPoly::var(pos[j].conjugate().expect("position symbol"));
            rhs = &rhs + &(&(&two_i * &p) * &cov(&seq.orders[k - 1], j));
        }
        let rhs = rhs.scale_rational(&crate::exactalg::rat(1, 2));
        let residual = &seq.orders[k].diff(Symbol::T) - &rhs;
        let vanishes_at_t0 = seq.orders[k].at_zero(Symbol::T).map(|p| p.is_zero()).unwrap_or(false);
        entries.push(BlochEntry {
            order: k,
            residual_zero: residual.is_zero(),
            vanishes_at_t0,
            residual_terms: residual.len(),
        });
    }
    BlochReport { w0_is_one: seq.orders.first() == Some(&MultiPoly::one()), entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, Monomial};
    use crate::wk::{wk_sequence, PotentialSpec};

    #[test]
    fn clean_sequences_pass() {
        for (p, k) in [(PotentialSpec::quartic_xy(), 4), (PotentialSpec::linear_alpha(), 8)] {
            let r = verify_bloch(&wk_sequence(&p, k).unwrap());
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn corrupted_w2_is_caught() {
        let mut s = wk_sequence(&PotentialSpec::quartic_xy(), 3).unwrap();
        let (m, _) = s.orders[2].terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
        s.orders[2].add_term(m, &GaussRational::real(rat(1, 7)));
        let r = verify_bloch(&s);
        assert!(!r.passed());
        assert!(r.failing_orders().contains(&2));
        let _ = Monomial::one();
    }
}
