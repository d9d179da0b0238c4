//! Tensor products and Tor over ℤ.
//!
//! Both are computed summand-wise on the canonical cyclic decompositions:
//! `ℤ ⊗ G = G`, `ℤ_d ⊗ ℤ_e = ℤ_gcd(d,e)`, `Tor(ℤ, G) = 0`,
//! `Tor(ℤ_d, ℤ_e) = ℤ_gcd(d,e)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::group::{canonicalize, FgAbGroup, GroupElement};
use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `g ⊗ h` with the identification used to map elementary tensors.
#[derive(Clone, Debug)]
pub struct TensorProduct {
    pub group: FgAbGroup,
    left: FgAbGroup,
    right: FgAbGroup,
    /// Pair coordinates (`a * right.ngens() + b`) to canonical coordinates.
    to_canonical: IntMatrix,
}

impl TensorProduct {
    pub fn new(g: &FgAbGroup, h: &FgAbGroup) -> Self {
        let (ng, nh) = (g.ngens(), h.ngens());
        let n = ng * nh;
        let mut rel = IntMatrix::zeros(n, n);
        for a in 0..ng {
            for b in 0..nh {
                let k = a * nh + b;
                rel[(k, k)] = g.modulus(a).gcd(&h.modulus(b));
            }
        }
        let c = canonicalize(n, &rel);
        TensorProduct {
            group: c.group,
            left: g.clone(),
            right: h.clone(),
            to_canonical: c.to_canonical,
        }
    }

    /// `x ⊗ y`
    pub fn elem(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        if !x.belongs_to(&self.left) || !y.belongs_to(&self.right) {
            return Err(Error::GroupMismatch(format!(
                "cannot form {x} (x) {y} in ({}) (x) ({})",
                self.left, self.right
            )));
        }
        let pairs: Vec<BigInt> = x
            .coords()
            .iter()
            .flat_map(|a| y.coords().iter().map(move |b| a * b))
            .collect();
        self.group.element(&self.to_canonical.apply(&pairs))
    }
}

pub fn tensor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    TensorProduct::new(g, h).group
}

/// `x ⊗ y` in `tensor(x.group(), y.group())`.
pub fn tensor_elem(x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
    TensorProduct::new(x.group(), y.group()).elem(x, y)
}

pub fn tor(g: &FgAbGroup, h: &FgAbGroup) -> FgAbGroup {
    let factors: Vec<BigInt> = g
        .torsion()
        .iter()
        .flat_map(|d| h.torsion().iter().map(move |e| d.gcd(e)))
        .filter(|f| !f.is_zero())
        .collect();
    FgAbGroup::new(0, &factors)
}
