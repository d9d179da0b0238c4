//! K-theory of tensor products and free products from the invariants of
//! the factors, and the maps induced by the quotients onto `A ⊗ B`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fgab::{
    bigint_json, canonicalize, direct_sum, direct_sum_many, quotient_by, tor, DirectSum, FgAbGroup,
    GroupElement, GroupHom, IntMatrix, Quotient, TensorProduct,
};

/// `L(A) = (K₀(A), K₁(A), [1_A])`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KInvariant {
    k0: FgAbGroup,
    k1: FgAbGroup,
    unit: GroupElement,
}

impl KInvariant {
    pub fn new(k0: FgAbGroup, k1: FgAbGroup, unit: GroupElement) -> Result<Self> {
        unit.check_in(&k0)?;
        Ok(KInvariant { k0, k1, unit })
    }

    /// Builds an invariant from unit coordinates in `k0`'s canonical basis.
    pub fn from_coords<T: Into<BigInt> + Clone>(
        k0: FgAbGroup,
        k1: FgAbGroup,
        unit: &[T],
    ) -> Result<Self> {
        let unit = k0.element(unit)?;
        Ok(KInvariant { k0, k1, unit })
    }

    pub fn k0(&self) -> &FgAbGroup {
        &self.k0
    }

    pub fn k1(&self) -> &FgAbGroup {
        &self.k1
    }

    pub fn unit(&self) -> &GroupElement {
        &self.unit
    }

    /// True when `[1]` has finite order.
    pub fn unit_is_torsion(&self) -> bool {
        self.unit.order().is_some()
    }

    /// Both K-groups finite.
    pub fn is_finite(&self) -> bool {
        self.k0.is_finite() && self.k1.is_finite()
    }
}

impl fmt::Display for KInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.k0, self.k1, self.unit)
    }
}

impl fmt::Debug for KInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KInvariant{self}")
    }
}

impl Serialize for KInvariant {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            k0: &'a FgAbGroup,
            k1: &'a FgAbGroup,
            unit: bigint_json::Row<'a>,
        }
        Repr {
            k0: &self.k0,
            k1: &self.k1,
            unit: bigint_json::Row(self.unit.coords()),
        }
        .serialize(s)
    }
}

/// The unit is read against the presentation exactly as written
/// (`rank` free generators, then one generator per listed factor) and
/// carried through canonicalization.
impl<'de> Deserialize<'de> for KInvariant {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct RawGroup {
            rank: usize,
            #[serde(with = "bigint_json::vec")]
            torsion: Vec<BigInt>,
        }
        #[derive(Deserialize)]
        struct Repr {
            k0: RawGroup,
            k1: RawGroup,
            #[serde(with = "bigint_json::vec")]
            unit: Vec<BigInt>,
        }
        let r = Repr::deserialize(d)?;
        let n = r.k0.rank + r.k0.torsion.len();
        if r.unit.len() != n {
            return Err(serde::de::Error::custom(format!(
                "unit has {} coordinates but k0 has {n} generators",
                r.unit.len()
            )));
        }
        let mut rel = IntMatrix::zeros(r.k0.torsion.len(), n);
        for (i, t) in r.k0.torsion.iter().enumerate() {
            rel[(i, r.k0.rank + i)] = t.clone();
        }
        let c = canonicalize(n, &rel);
        let unit = c.project(&r.unit);
        let k1 = FgAbGroup::new(r.k1.rank, &r.k1.torsion);
        Ok(KInvariant {
            k0: c.group,
            k1,
            unit,
        })
    }
}

/// Names of the summands in the K-theory formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SummandLabel {
    K0AxK0B,
    K1AxK1B,
    TorK0AK1B,
    TorK1AK0B,
    K0AxK1B,
    K1AxK0B,
    TorK0AK0B,
    TorK1AK1B,
    K0A,
    K0B,
    K1A,
    K1B,
    ExtraZ,
}

impl SummandLabel {
    pub fn name(self) -> &'static str {
        use SummandLabel::*;
        match self {
            K0AxK0B => "K0A⊗K0B",
            K1AxK1B => "K1A⊗K1B",
            TorK0AK1B => "Tor(K0A,K1B)",
            TorK1AK0B => "Tor(K1A,K0B)",
            K0AxK1B => "K0A⊗K1B",
            K1AxK0B => "K1A⊗K0B",
            TorK0AK0B => "Tor(K0A,K0B)",
            TorK1AK1B => "Tor(K1A,K1B)",
            K0A => "K0A",
            K0B => "K0B",
            K1A => "K1A",
            K1B => "K1B",
            ExtraZ => "ExtraZ",
        }
    }
}

impl fmt::Display for SummandLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One labeled piece of a [`KPair`], with its map into `k0` or `k1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub label: SummandLabel,
    pub degree: u8,
    pub map: GroupHom,
    /// The summand exists but is not a well-defined subgroup.
    pub indeterminate: bool,
}

/// K₀ and K₁ of a composite algebra with their summand bookkeeping.
///
/// For tensor and free products the summand maps are injections that
/// jointly give `k0` and `k1` as direct sums. For the unital free product
/// `k0` is a quotient, and its two entries are the canonical maps from
/// `K₀(A)` and `K₀(B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KPair {
    pub k0: FgAbGroup,
    pub k1: FgAbGroup,
    pub summands: Vec<Summand>,
    pub unit: Option<GroupElement>,
    pub extra_z: bool,
}

impl KPair {
    pub fn summand(&self, label: SummandLabel) -> Option<&Summand> {
        self.summands.iter().find(|s| s.label == label)
    }

    pub fn map(&self, label: SummandLabel) -> Option<&GroupHom> {
        self.summand(label).map(|s| &s.map)
    }

    /// The underlying invariant, when a unit class is present.
    pub fn to_invariant(&self) -> Option<KInvariant> {
        let unit = self.unit.clone()?;
        Some(KInvariant {
            k0: self.k0.clone(),
            k1: self.k1.clone(),
            unit,
        })
    }
}

impl Serialize for KPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            k0: &'a FgAbGroup,
            k1: &'a FgAbGroup,
            unit: Option<bigint_json::Row<'a>>,
            extra_z: bool,
            summands: BTreeMap<&'static str, &'a IntMatrix>,
        }
        Repr {
            k0: &self.k0,
            k1: &self.k1,
            unit: self.unit.as_ref().map(|u| bigint_json::Row(u.coords())),
            extra_z: self.extra_z,
            summands: self
                .summands
                .iter()
                .map(|s| (s.label.name(), s.map.matrix()))
                .collect(),
        }
        .serialize(s)
    }
}

fn injections(sum: &DirectSum, degree: u8, labels: &[SummandLabel]) -> Vec<Summand> {
    labels
        .iter()
        .zip(&sum.injections)
        .map(|(&label, map)| Summand {
            label,
            degree,
            map: map.clone(),
            indeterminate: false,
        })
        .collect()
}

/// Künneth decomposition of `K_*(A ⊗ B)`, keeping the tensor products
/// that the induced maps are written in.
pub(crate) struct Kunneth {
    pub pair: KPair,
    pub t00: TensorProduct,
    pub t01: TensorProduct,
    pub t10: TensorProduct,
    pub sum0: DirectSum,
    pub sum1: DirectSum,
}

impl Kunneth {
    pub fn new(a: &KInvariant, b: &KInvariant) -> Self {
        use SummandLabel::*;
        let t00 = TensorProduct::new(&a.k0, &b.k0);
        let t11 = TensorProduct::new(&a.k1, &b.k1);
        let t01 = TensorProduct::new(&a.k0, &b.k1);
        let t10 = TensorProduct::new(&a.k1, &b.k0);
        let tor01 = tor(&a.k0, &b.k1);
        let tor10 = tor(&a.k1, &b.k0);
        let tor00 = tor(&a.k0, &b.k0);
        let tor11 = tor(&a.k1, &b.k1);

        let sum0 = direct_sum_many(&[&t00.group, &t11.group, &tor01, &tor10]);
        let sum1 = direct_sum_many(&[&t01.group, &t10.group, &tor00, &tor11]);
        let unit_t = t00.elem(&a.unit, &b.unit).expect("units belong to K0");
        let unit = sum0.injections[0]
            .apply(&unit_t)
            .expect("unit lies in the first summand");

        let mut summands = injections(&sum0, 0, &[K0AxK0B, K1AxK1B, TorK0AK1B, TorK1AK0B]);
        summands.extend(injections(
            &sum1,
            1,
            &[K0AxK1B, K1AxK0B, TorK0AK0B, TorK1AK1B],
        ));
        let pair = KPair {
            k0: sum0.group.clone(),
            k1: sum1.group.clone(),
            summands,
            unit: Some(unit),
            extra_z: false,
        };
        Kunneth {
            pair,
            t00,
            t01,
            t10,
            sum0,
            sum1,
        }
    }

    /// `(x, y) ↦ x ⊗ [1_B] + [1_A] ⊗ y` on `K₀(A) ⊕ K₀(B)`.
    fn degree0_on_sum(&self, a: &KInvariant, b: &KInvariant, sum: &DirectSum) -> GroupHom {
        let images: Vec<GroupElement> = sum
            .group
            .generators()
            .map(|e| {
                let x = sum.projections[0].apply(&e).expect("in sum");
                let y = sum.projections[1].apply(&e).expect("in sum");
                let t = &self.t00.elem(&x, &b.unit).expect("K0A")
                    + &self.t00.elem(&a.unit, &y).expect("K0B");
                self.sum0.injections[0].apply(&t).expect("K0A⊗K0B")
            })
            .collect();
        GroupHom::from_images(&sum.group, &self.pair.k0, &images)
            .expect("the lifted formula is a homomorphism")
    }

    /// `(x, y) ↦ ([1_A] ⊗ y) ⊕ (x ⊗ [1_B])` on `K₁(A) ⊕ K₁(B)`.
    fn degree1_on_sum(&self, a: &KInvariant, b: &KInvariant, sum: &DirectSum) -> GroupHom {
        let images: Vec<GroupElement> = sum
            .group
            .generators()
            .map(|e| {
                let x = sum.projections[0].apply(&e).expect("in sum");
                let y = sum.projections[1].apply(&e).expect("in sum");
                let left = self.sum1.injections[0]
                    .apply(&self.t01.elem(&a.unit, &y).expect("K1B"))
                    .expect("K0A⊗K1B");
                let right = self.sum1.injections[1]
                    .apply(&self.t10.elem(&x, &b.unit).expect("K1A"))
                    .expect("K1A⊗K0B");
                &left + &right
            })
            .collect();
        GroupHom::from_images(&sum.group, &self.pair.k1, &images)
            .expect("the formula is a homomorphism")
    }
}

/// `K_*(A ⊗ B)` with its unit class `[1_A] ⊗ [1_B]`.
pub fn kunneth(a: &KInvariant, b: &KInvariant) -> KPair {
    Kunneth::new(a, b).pair
}

/// `L(A ⊗ B)` as an invariant.
pub fn tensor_invariant(a: &KInvariant, b: &KInvariant) -> KInvariant {
    kunneth(a, b)
        .to_invariant()
        .expect("the tensor product is unital")
}

/// `K_*(A * B)`: direct sums in both degrees, no unit.
pub fn free_product_k(a: &KInvariant, b: &KInvariant) -> KPair {
    use SummandLabel::*;
    let s0 = direct_sum(&a.k0, &b.k0);
    let s1 = direct_sum(&a.k1, &b.k1);
    let mut summands = injections(&s0, 0, &[K0A, K0B]);
    summands.extend(injections(&s1, 1, &[K1A, K1B]));
    KPair {
        k0: s0.group,
        k1: s1.group,
        summands,
        unit: None,
        extra_z: false,
    }
}

pub(crate) struct UnitalFreeProduct {
    pub pair: KPair,
    pub sum0: DirectSum,
    pub quotient: Quotient,
    pub sum1: DirectSum,
    /// `K₁(A) ⊕ K₁(B)` into `k1` (identity unless the extra ℤ is present).
    pub k1_inclusion: GroupHom,
}

impl UnitalFreeProduct {
    pub fn new(a: &KInvariant, b: &KInvariant) -> Self {
        use SummandLabel::*;
        let sum0 = direct_sum(&a.k0, &b.k0);
        let rel = sum0
            .combine(&[a.unit.clone(), -&b.unit])
            .expect("units belong to K0");
        let quotient = quotient_by(&sum0.group, &rel).expect("relation lies in the sum");
        let unit_a = sum0.injections[0].apply(&a.unit).expect("K0A");
        let unit = quotient.proj.apply(&unit_a).expect("sum");

        let mut summands = Vec::new();
        for (k, label) in [(0, K0A), (1, K0B)] {
            summands.push(Summand {
                label,
                degree: 0,
                map: sum0.injections[k].then(&quotient.proj).expect("composable"),
                indeterminate: false,
            });
        }

        let extra_z = a.unit_is_torsion() && b.unit_is_torsion();
        let sum1 = direct_sum(&a.k1, &b.k1);
        let (k1, k1_inclusion) = if extra_z {
            let z = FgAbGroup::free(1);
            let full = direct_sum_many(&[&a.k1, &b.k1, &z]);
            summands.extend(injections(&full, 1, &[K1A, K1B]));
            summands.push(Summand {
                label: ExtraZ,
                degree: 1,
                map: full.injections[2].clone(),
                indeterminate: true,
            });
            let images: Vec<GroupElement> = sum1
                .group
                .generators()
                .map(|e| {
                    let x = sum1.projections[0].apply(&e).expect("sum");
                    let y = sum1.projections[1].apply(&e).expect("sum");
                    full.combine(&[x, y, z.zero()]).expect("parts")
                })
                .collect();
            let incl = GroupHom::from_images(&sum1.group, &full.group, &images).expect("inclusion");
            (full.group, incl)
        } else {
            summands.extend(injections(&sum1, 1, &[K1A, K1B]));
            (sum1.group.clone(), GroupHom::identity(&sum1.group))
        };

        let pair = KPair {
            k0: quotient.group.clone(),
            k1,
            summands,
            unit: Some(unit),
            extra_z,
        };
        UnitalFreeProduct {
            pair,
            sum0,
            quotient,
            sum1,
            k1_inclusion,
        }
    }
}

/// `K_*(A *_ℂ B)`: `K₀` is `(K₀(A) ⊕ K₀(B)) / ⟨([1_A], −[1_B])⟩`; `K₁` gains
/// an extra ℤ when both unit classes are torsion.
pub fn unital_free_product_k(a: &KInvariant, b: &KInvariant) -> KPair {
    UnitalFreeProduct::new(a, b).pair
}

/// `K₀(A) ⊕ K₀(B) → K₀(A *_ℂ B)`, with lifts back to the sum.
pub fn unital_k0_quotient(a: &KInvariant, b: &KInvariant) -> Quotient {
    UnitalFreeProduct::new(a, b).quotient
}

/// Maps induced by `A *_ℂ B → A ⊗ B`.
///
/// `pi1` is defined on the determinate part `K₁(A) ⊕ K₁(B)`. When the
/// extra ℤ summand is present its image is only known to lie in
/// `extra_z_target = Tor(K₀(A), K₀(B))`; no matrix is chosen for it.
#[derive(Clone, Debug)]
pub struct PiStar {
    pub pi0: GroupHom,
    pub pi1: GroupHom,
    pub extra_z_target: Option<FgAbGroup>,
}

pub fn pi_star(a: &KInvariant, b: &KInvariant) -> PiStar {
    let kun = Kunneth::new(a, b);
    let ufp = UnitalFreeProduct::new(a, b);
    let lifted = kun.degree0_on_sum(a, b, &ufp.sum0);
    let images: Vec<GroupElement> = ufp
        .quotient
        .group
        .generators()
        .map(|q| {
            let x = ufp.quotient.lift_element(&q).expect("quotient generator");
            lifted.apply(&x).expect("in sum")
        })
        .collect();
    let pi0 = GroupHom::from_images(&ufp.quotient.group, &kun.pair.k0, &images)
        .expect("([1_A], -[1_B]) maps to zero");
    let pi1 = kun.degree1_on_sum(a, b, &ufp.sum1);
    PiStar {
        pi0,
        pi1,
        extra_z_target: ufp.pair.extra_z.then(|| tor(&a.k0, &b.k0)),
    }
}

/// Maps induced by `A * B → A ⊗ B`, on `K₀(A) ⊕ K₀(B)` and `K₁(A) ⊕ K₁(B)`.
#[derive(Clone, Debug)]
pub struct PiStarFull {
    pub pi0: GroupHom,
    pub pi1: GroupHom,
}

pub fn pi_star_full(a: &KInvariant, b: &KInvariant) -> PiStarFull {
    let kun = Kunneth::new(a, b);
    let s0 = direct_sum(&a.k0, &b.k0);
    let s1 = direct_sum(&a.k1, &b.k1);
    PiStarFull {
        pi0: kun.degree0_on_sum(a, b, &s0),
        pi1: kun.degree1_on_sum(a, b, &s1),
    }
}

/// Maps induced by `A * B → A *_ℂ B`: the quotient in degree 0 and the
/// inclusion of `K₁(A) ⊕ K₁(B)` in degree 1.
pub fn free_to_unital(a: &KInvariant, b: &KInvariant) -> (GroupHom, GroupHom) {
    let ufp = UnitalFreeProduct::new(a, b);
    (ufp.quotient.proj, ufp.k1_inclusion)
}

/// The relation `([1_A], −[1_B])` in `K₀(A) ⊕ K₀(B)`.
pub fn unit_relation(a: &KInvariant, b: &KInvariant) -> Result<GroupElement> {
    let s = direct_sum(&a.k0, &b.k0);
    s.combine(&[a.unit.clone(), -&b.unit])
}

/// Parses the JSON form `{"k0": {...}, "k1": {...}, "unit": [...]}`.
pub fn invariant_from_json(text: &str) -> Result<KInvariant> {
    serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))
}
