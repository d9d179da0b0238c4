//! Finitely generated abelian groups in invariant-factor form, their
//! elements, and the constructions that produce new groups from
//! presentations: canonicalization, direct sums and cyclic quotients.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bigint_json;
use super::hom::GroupHom;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// `ℤ^rank ⊕ ℤ_{d₁} ⊕ … ⊕ ℤ_{d_k}` with `2 ≤ d₁ | d₂ | … | d_k`.
///
/// Generators are ordered free part first, then torsion in chain order.
/// Two groups are isomorphic iff they compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    /// Normalizes an arbitrary list of cyclic factors: `0` becomes a free
    /// summand, `±1` is dropped, signs are discarded, and the result is
    /// brought into divisibility-chain form.
    pub fn new<T: Into<BigInt> + Clone>(rank: usize, factors: &[T]) -> Self {
        let diag: Vec<BigInt> = factors.iter().map(|f| f.clone().into()).collect();
        let n = rank + diag.len();
        let mut rel = IntMatrix::zeros(diag.len(), n);
        for (i, d) in diag.iter().enumerate() {
            rel[(i, rank + i)] = d.clone();
        }
        canonicalize(n, &rel).group
    }

    pub fn trivial() -> Self {
        FgAbGroup {
            rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            rank,
            torsion: Vec::new(),
        }
    }

    /// `ℤ_n`; `n = 0` gives `ℤ`, `|n| = 1` the trivial group.
    pub fn cyclic<T: Into<BigInt>>(n: T) -> Self {
        Self::new(0, &[n.into()])
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Number of canonical generators.
    pub fn ngens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    /// Order of generator `i`'s cyclic summand, `0` for free generators.
    pub fn modulus(&self, i: usize) -> BigInt {
        if i < self.rank {
            BigInt::zero()
        } else {
            self.torsion[i - self.rank].clone()
        }
    }

    pub fn moduli(&self) -> Vec<BigInt> {
        (0..self.ngens()).map(|i| self.modulus(i)).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.torsion_order())
    }

    /// Exponent of the torsion subgroup (the last invariant factor, or 1).
    pub fn torsion_exponent(&self) -> BigInt {
        self.torsion.last().cloned().unwrap_or_else(BigInt::one)
    }

    /// One row `dᵢ·e_{rank+i}` per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.torsion.len(), self.ngens());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, self.rank + i)] = d.clone();
        }
        m
    }

    pub(crate) fn reduce_in_place(&self, coords: &mut [BigInt]) {
        for (i, d) in self.torsion.iter().enumerate() {
            let c = &mut coords[self.rank + i];
            *c = c.mod_floor(d);
        }
    }

    pub fn element<T: Into<BigInt> + Clone>(&self, coords: &[T]) -> Result<GroupElement> {
        if coords.len() != self.ngens() {
            return Err(Error::GroupMismatch(format!(
                "{} coordinates given for a group with {} generators ({self})",
                coords.len(),
                self.ngens()
            )));
        }
        let mut c: Vec<BigInt> = coords.iter().map(|x| x.clone().into()).collect();
        self.reduce_in_place(&mut c);
        Ok(GroupElement {
            group: self.clone(),
            coords: c,
        })
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            coords: vec![BigInt::zero(); self.ngens()],
        }
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut e = self.zero();
        e.coords[i] = BigInt::one();
        self.reduce_in_place(&mut e.coords);
        e
    }

    pub fn generators(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.ngens()).map(|i| self.generator(i))
    }

    /// Enumerates every element of a finite group. Panics on infinite groups.
    pub fn elements(&self) -> Vec<GroupElement> {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let mut out = vec![self.zero()];
        for (i, d) in self.torsion.iter().enumerate() {
            let d: u64 = d.try_into().expect("group too large to enumerate");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for e in &out {
                for k in 0..d {
                    let mut c = e.coords.clone();
                    c[i] = BigInt::from(k);
                    next.push(GroupElement {
                        group: self.clone(),
                        coords: c,
                    });
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z_{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    rank: usize,
    #[serde(with = "bigint_json::vec")]
    torsion: Vec<BigInt>,
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupRepr {
            rank: self.rank,
            torsion: self.torsion.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = GroupRepr::deserialize(d)?;
        Ok(FgAbGroup::new(r.rank, &r.torsion))
    }
}

/// An element in canonical coordinates; torsion coordinates live in `[0, dᵢ)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: FgAbGroup,
    coords: Vec<BigInt>,
}

impl GroupElement {
    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn belongs_to(&self, g: &FgAbGroup) -> bool {
        &self.group == g
    }

    pub(crate) fn check_in(&self, g: &FgAbGroup) -> Result<()> {
        if self.belongs_to(g) {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!(
                "element of {} used where an element of {g} was expected",
                self.group
            )))
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> GroupElement {
        let k = k.into();
        let coords: Vec<BigInt> = self.coords.iter().map(|c| c * &k).collect();
        let mut e = GroupElement {
            group: self.group.clone(),
            coords,
        };
        self.group.reduce_in_place(&mut e.coords);
        e
    }

    /// `None` for elements of infinite order.
    pub fn order(&self) -> Option<BigInt> {
        element_order(self)
    }

    /// Free coordinates only.
    pub fn free_part(&self) -> &[BigInt] {
        &self.coords[..self.group.rank]
    }

    /// Torsion coordinates only.
    pub fn torsion_part(&self) -> &[BigInt] {
        &self.coords[self.group.rank..]
    }
}

/// Exact order of an element; `None` means infinite.
pub fn element_order(x: &GroupElement) -> Option<BigInt> {
    if x.free_part().iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(
        x.torsion_part()
            .iter()
            .zip(x.group.torsion())
            .fold(BigInt::one(), |acc, (c, d)| acc.lcm(&(d / c.gcd(d)))),
    )
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.group)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", c.join(", "))
    }
}

/// Serialized as `{"coords": [...]}`; the group travels separately.
impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            coords: bigint_json::Row<'a>,
        }
        Repr {
            coords: bigint_json::Row(&self.coords),
        }
        .serialize(s)
    }
}

impl Add for &GroupElement {
    type Output = GroupElement;

    fn add(self, rhs: &GroupElement) -> GroupElement {
        assert_eq!(self.group, rhs.group, "adding elements of different groups");
        let coords: Vec<BigInt> = self
            .coords
            .iter()
            .zip(&rhs.coords)
            .map(|(a, b)| a + b)
            .collect();
        self.group.element(&coords).expect("same group")
    }
}

impl Sub for &GroupElement {
    type Output = GroupElement;

    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self + &(-rhs)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;

    fn neg(self) -> GroupElement {
        self.scale(-1)
    }
}

/// Result of bringing `ℤ^n / ⟨relations⟩` into canonical form.
#[derive(Clone, Debug)]
pub struct Canonicalized {
    pub group: FgAbGroup,
    /// `group.ngens() × n`: presentation coordinates to canonical coordinates.
    pub to_canonical: IntMatrix,
    /// `n × group.ngens()`: a lift of each canonical generator.
    pub from_canonical: IntMatrix,
}

impl Canonicalized {
    pub fn project(&self, coords: &[BigInt]) -> GroupElement {
        let c = self.to_canonical.apply(coords);
        self.group.element(&c).expect("shape fixed by construction")
    }

    /// The basis change as a homomorphism from the presented group.
    pub fn basis_change(&self, presented: &FgAbGroup) -> Result<GroupHom> {
        GroupHom::new(
            presented.clone(),
            self.group.clone(),
            self.to_canonical.clone(),
        )
    }
}

/// Canonical form of `ℤ^generators / rowspan(relations)`.
pub fn canonicalize(generators: usize, relations: &IntMatrix) -> Canonicalized {
    assert_eq!(
        relations.cols(),
        generators,
        "relation rows must have one entry per generator"
    );
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();
    let factor = |i: usize| diag.get(i).cloned().unwrap_or_else(BigInt::zero);

    let free: Vec<usize> = (0..generators).filter(|&i| factor(i).is_zero()).collect();
    let tors: Vec<usize> = (0..generators)
        .filter(|&i| {
            let f = factor(i);
            !f.is_zero() && !f.abs().is_one()
        })
        .collect();
    let mut order = free.clone();
    order.extend(&tors);

    let group = FgAbGroup {
        rank: free.len(),
        torsion: tors.iter().map(|&i| factor(i).abs()).collect(),
    };
    let mut to_canonical = snf.v.transpose().select_rows(&order);
    for i in group.rank..group.ngens() {
        to_canonical.reduce_row(i, &group.modulus(i));
    }
    let from_canonical = snf.v_inv.select_rows(&order).transpose();
    Canonicalized {
        group,
        to_canonical,
        from_canonical,
    }
}

/// A direct sum together with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub group: FgAbGroup,
    pub injections: Vec<GroupHom>,
    pub projections: Vec<GroupHom>,
}

impl DirectSum {
    /// Element of the sum built from one element per summand.
    pub fn combine(&self, parts: &[GroupElement]) -> Result<GroupElement> {
        if parts.len() != self.injections.len() {
            return Err(Error::Dimension(format!(
                "{} parts for a sum of {} summands",
                parts.len(),
                self.injections.len()
            )));
        }
        let mut acc = self.group.zero();
        for (inj, p) in self.injections.iter().zip(parts) {
            acc = &acc + &inj.apply(p)?;
        }
        Ok(acc)
    }
}

pub fn direct_sum_many(groups: &[&FgAbGroup]) -> DirectSum {
    let n: usize = groups.iter().map(|g| g.ngens()).sum();
    let mut rel = IntMatrix::zeros(0, 0);
    for g in groups {
        rel = rel.block_diag(&g.relation_matrix());
    }
    let c = canonicalize(n, &rel);

    let mut injections = Vec::with_capacity(groups.len());
    let mut projections = Vec::with_capacity(groups.len());
    let mut offset = 0;
    for g in groups {
        let range: Vec<usize> = (offset..offset + g.ngens()).collect();
        let inj = GroupHom::new(
            (*g).clone(),
            c.group.clone(),
            c.to_canonical.select_cols(&range),
        )
        .expect("injection into a direct sum is well defined");
        let proj = GroupHom::new(
            c.group.clone(),
            (*g).clone(),
            c.from_canonical.select_rows(&range),
        )
        .expect("projection out of a direct sum is well defined");
        injections.push(inj);
        projections.push(proj);
        offset += g.ngens();
    }
    DirectSum {
        group: c.group,
        injections,
        projections,
    }
}

pub fn direct_sum(g: &FgAbGroup, h: &FgAbGroup) -> DirectSum {
    direct_sum_many(&[g, h])
}

/// `g / ⟨x⟩` with its projection and a lift of each canonical generator.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FgAbGroup,
    pub proj: GroupHom,
    /// `source.ngens() × group.ngens()`
    pub lift: IntMatrix,
}

impl Quotient {
    pub fn lift_element(&self, y: &GroupElement) -> Result<GroupElement> {
        y.check_in(&self.group)?;
        let c = self.lift.apply(y.coords());
        self.proj.source().element(&c)
    }
}

pub fn quotient_by(g: &FgAbGroup, x: &GroupElement) -> Result<Quotient> {
    quotient_by_many(g, std::slice::from_ref(x))
}

pub fn quotient_by_many(g: &FgAbGroup, xs: &[GroupElement]) -> Result<Quotient> {
    let mut rel = g.relation_matrix();
    for x in xs {
        x.check_in(g)?;
        rel = rel.vstack(&IntMatrix::from_rows(g.ngens(), &[x.coords().to_vec()]));
    }
    let c = canonicalize(g.ngens(), &rel);
    let proj = GroupHom::new(g.clone(), c.group.clone(), c.to_canonical)?;
    Ok(Quotient {
        group: c.group,
        proj,
        lift: c.from_canonical,
    })
}
