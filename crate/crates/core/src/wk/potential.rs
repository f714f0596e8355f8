use serde::{Deserialize, Serialize};

use crate::exactalg::{rat, MultiPoly, Symbol};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PotentialTag {
    QuarticXy,
    LinearAlpha,
    Custom,
}

impl PotentialTag {
    /// Directory name used in the fixture layout.
    pub fn slug(self) -> &'static str {
        match self {
            PotentialTag::QuarticXy => "quartic-xy",
            PotentialTag::LinearAlpha => "linear",
            PotentialTag::Custom => "custom",
        }
    }
}

/// A polynomial potential in 1 or 2 dimensions.
///
/// For `quartic_xy` the symbol `alpha` stands for g², so V = alpha x² y² / 2.
/// For `linear_alpha` it is the slope a_n = (n + 1/2) hbar g.
#[derive(Clone, Debug, PartialEq)]
pub struct PotentialSpec {
    dims: usize,
    v: MultiPoly,
    tag: PotentialTag,
}

impl PotentialSpec {
    pub fn quartic_xy() -> Self {
        PotentialSpec {
            dims: 2,
            v: MultiPoly::mono(rat(1, 2), &[(Symbol::Alpha, 1), (Symbol::X, 2), (Symbol::Y, 2)]),
            tag: PotentialTag::QuarticXy,
        }
    }

    pub fn linear_alpha() -> Self {
        PotentialSpec {
            dims: 1,
            v: MultiPoly::mono(rat(1, 1), &[(Symbol::Alpha, 1), (Symbol::X, 1)]),
            tag: PotentialTag::LinearAlpha,
        }
    }

    pub fn custom(dims: usize, v: MultiPoly) -> Result<Self, Error> {
        if !(1..=2).contains(&dims) {
            return Err(Error::InvalidArgument(format!("dimension {dims} not supported")));
        }
        for s in [Symbol::Px, Symbol::Py, Symbol::T] {
            if v.involves(s) {
                return Err(Error::InvalidArgument(format!("potential depends on `{}`", s.name())));
            }
        }
        if dims == 1 && v.involves(Symbol::Y) {
            return Err(Error::InvalidArgument("1D potential depends on `y`".into()));
        }
        for (m, c) in v.terms() {
            if m.0.iter().any(|&e| e < 0) {
                return Err(Error::InvalidArgument("potential is not a polynomial".into()));
            }
            if !c.is_real() {
                return Err(Error::InvalidArgument("potential must be real".into()));
            }
        }
        Ok(PotentialSpec { dims, v, tag: PotentialTag::Custom })
    }

    pub fn from_slug(slug: &str) -> Result<Self, Error> {
        match slug {
            "quartic-xy" => Ok(Self::quartic_xy()),
            "linear" | "linear-alpha" => Ok(Self::linear_alpha()),
            _ => Err(Error::InvalidArgument(format!("unknown potential `{slug}`"))),
        }
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn v(&self) -> &MultiPoly {
        &self.v
    }

    pub fn tag(&self) -> PotentialTag {
        self.tag
    }

    pub fn grad(&self) -> Vec<MultiPoly> {
        Symbol::positions(self.dims).iter().map(|&s| self.v.diff(s)).collect()
    }

    pub fn laplacian(&self) -> MultiPoly {
        Symbol::positions(self.dims)
            .iter()
            .fold(MultiPoly::zero(), |acc, &s| &acc + &self.v.diff(s).diff(s))
    }
}
