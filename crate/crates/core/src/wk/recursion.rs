use crate::exactalg::{GaussRational, MultiPoly, Symbol};
use crate::Error;

use super::potential::PotentialSpec;

/// W_0 .. W_kmax for one potential.
#[derive(Clone, Debug, PartialEq)]
pub struct WkSequence {
    pub potential: PotentialSpec,
    pub orders: Vec<MultiPoly>,
}

impl WkSequence {
    pub fn kmax(&self) -> usize {
        self.orders.len() - 1
    }

    pub fn order(&self, k: usize) -> Option<&MultiPoly> {
        self.orders.get(k)
    }

    /// One polynomial per line, W_0 first.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for w in &self.orders {
            s.push_str(&w.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(potential: PotentialSpec, text: &str) -> Result<Self, Error> {
        let orders = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.parse())
            .collect::<Result<Vec<MultiPoly>, _>>()?;
        if orders.is_empty() {
            return Err(Error::Parse("empty sequence".into()));
        }
        Ok(WkSequence { potential, orders })
    }
}

/// Runs the recursion
///
/// dW_k/dt = 1/2 [Δ - tΔV + t²(∇V)² - 2t ∇V·∇] W_{k-2} + i p·[∇ - t∇V] W_{k-1}
///
/// with W_0 = 1 and zero integration constants.
pub fn wk_sequence(potential: &PotentialSpec, kmax: usize) -> Result<WkSequence, Error> {
    let pos = Symbol::positions(potential.dims());
    let grad = potential.grad();
    let lap_v = potential.laplacian();
    let grad_sq = grad.iter().fold(MultiPoly::zero(), |acc, g| &acc + &(g * g));
    let t = MultiPoly::var(Symbol::T);
    let t2 = &t * &t;
    let half = GaussRational::real(crate::exactalg::rat(1, 2));
    let i = MultiPoly::constant(GaussRational::i());

    let mut orders = vec![MultiPoly::one()];
    for k in 1..=kmax {
        let mut rhs = MultiPoly::zero();
        if k >= 2 {
            let w = &orders[k - 2];
            let mut bracket = MultiPoly::zero();
            for (&s, g) in pos.iter().zip(&grad) {
                bracket = &bracket + &w.diff(s).diff(s);
                bracket = &bracket - &(&(&t * g) * &w.diff(s)).scale_rational(&crate::exactalg::int(2));
            }
            bracket = &bracket - &(&(&t * &lap_v) * w);
            bracket = &bracket + &(&(&t2 * &grad_sq) * w);
            rhs = &rhs + &bracket.scale(&half);
        }
        let w = &orders[k - 1];
        let mut drift = MultiPoly::zero();
        for (&s, g) in pos.iter().zip(&grad) {
            let p = MultiPoly::var(s.conjugate().expect("position symbol"));
            let d = &w.diff(s) - &(&(&t * g) * w);
            drift = &drift + &(&p * &d);
        }
        rhs = &rhs + &(&i * &drift);
        orders.push(rhs.integrate_t()?);
    }
    Ok(WkSequence { potential: potential.clone(), orders })
}
