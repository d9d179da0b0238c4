//! Homomorphisms between canonical groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use super::group::{canonicalize, Canonicalized, FgAbGroup, GroupElement};
use super::matrix::IntMatrix;
use super::solve::integer_kernel;
use crate::error::{Error, Result};

/// A homomorphism given by its matrix against canonical generators:
/// column `j` is the image of source generator `j` in target coordinates.
/// Rows belonging to torsion generators of the target are kept reduced,
/// so equal maps have equal matrices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    pub fn new(source: FgAbGroup, target: FgAbGroup, mut matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.ngens() || matrix.cols() != source.ngens() {
            return Err(Error::Dimension(format!(
                "a map {source} -> {target} needs a {}x{} matrix, got {}x{}",
                target.ngens(),
                source.ngens(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        for i in target.rank()..target.ngens() {
            matrix.reduce_row(i, &target.modulus(i));
        }
        for j in source.rank()..source.ngens() {
            let d = source.modulus(j);
            for i in 0..target.ngens() {
                let e = target.modulus(i);
                let x = &matrix[(i, j)] * &d;
                let killed = if e.is_zero() {
                    x.is_zero()
                } else {
                    x.is_multiple_of(&e)
                };
                if !killed {
                    return Err(Error::NotWellDefined(format!(
                        "generator {j} has order {d} in {source} but its image does not"
                    )));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom::new(g.clone(), g.clone(), IntMatrix::identity(g.ngens())).expect("identity")
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.ngens(), source.ngens()),
        }
    }

    /// Multiplication by `k` on `g`.
    pub fn scalar<T: Into<BigInt>>(g: &FgAbGroup, k: T) -> Self {
        let k = k.into();
        let mut m = IntMatrix::zeros(g.ngens(), g.ngens());
        for i in 0..g.ngens() {
            m[(i, i)] = k.clone();
        }
        GroupHom::new(g.clone(), g.clone(), m).expect("scalar maps are well defined")
    }

    /// The map sending generator `j` of `source` to `images[j]`.
    pub fn from_images(
        source: &FgAbGroup,
        target: &FgAbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.ngens() {
            return Err(Error::Dimension(format!(
                "{} images for {} generators",
                images.len(),
                source.ngens()
            )));
        }
        let mut m = IntMatrix::zeros(target.ngens(), source.ngens());
        for (j, y) in images.iter().enumerate() {
            y.check_in(target)?;
            for (i, c) in y.coords().iter().enumerate() {
                m[(i, j)] = c.clone();
            }
        }
        GroupHom::new(source.clone(), target.clone(), m)
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, x: &GroupElement) -> Result<GroupElement> {
        x.check_in(&self.source)?;
        self.target.element(&self.matrix.apply(x.coords()))
    }

    /// `next ∘ self`
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        compose(self, next)
    }

    /// The image lattice together with the target relations, as columns.
    fn image_with_relations(&self) -> IntMatrix {
        self.matrix
            .hstack(&self.target.relation_matrix().transpose())
    }

    /// `target / image`.
    pub fn cokernel(&self) -> Canonicalized {
        let a = self.image_with_relations();
        canonicalize(self.target.ngens(), &a.transpose())
    }

    /// Generators of the kernel (possibly redundant, zero entries dropped).
    pub fn kernel_generators(&self) -> Vec<GroupElement> {
        let a = self.image_with_relations();
        let k = integer_kernel(&a);
        let n = self.source.ngens();
        (0..k.cols())
            .map(|j| {
                let c: Vec<BigInt> = k.col(j).into_iter().take(n).collect();
                self.source.element(&c).expect("length fixed")
            })
            .filter(|x| !x.is_zero())
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        is_surjective(self)
    }

    pub fn is_injective(&self) -> bool {
        is_injective(self)
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }
}

/// `g ∘ f`; requires `f.target == g.source`.
pub fn compose(f: &GroupHom, g: &GroupHom) -> Result<GroupHom> {
    if f.target != g.source {
        return Err(Error::DomainMismatch(format!(
            "cannot follow a map into {} by a map out of {}",
            f.target, g.source
        )));
    }
    GroupHom::new(f.source.clone(), g.target.clone(), &g.matrix * &f.matrix)
}

pub fn is_surjective(f: &GroupHom) -> bool {
    f.cokernel().group.is_trivial()
}

pub fn is_injective(f: &GroupHom) -> bool {
    f.kernel_generators().is_empty()
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GroupHom({} -> {}, {})",
            self.source, self.target, self.matrix
        )
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} : {}", self.source, self.target, self.matrix)
    }
}

impl Serialize for GroupHom {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            source: &'a FgAbGroup,
            target: &'a FgAbGroup,
            matrix: &'a IntMatrix,
        }
        Repr {
            source: &self.source,
            target: &self.target,
            matrix: &self.matrix,
        }
        .serialize(s)
    }
}
