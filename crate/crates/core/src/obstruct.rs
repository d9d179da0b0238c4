//! Splitting obstructions at the level of K-theory.
//!
//! [`classify`] first runs the structural tests of [`basic_obstructions`],
//! then matches the invariants against the four admissible shapes and
//! confirms the match on the induced maps themselves: a match whose `π₀`
//! or `π₁` has no right inverse is reported as obstructed.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fgab::{
    bigint_json, constrained_section_exists, direct_sum, quotient_by, right_inverse_exists, tensor,
    tor, FgAbGroup, GroupElement, GroupHom,
};
use crate::kinv::{pi_star, pi_star_full, unital_free_product_k, KInvariant};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Clause {
    K1TensorNonzero,
    RankInequality,
    TorNonzero,
    Pi0NotSurjective,
    Pi1NotSurjective,
    NoSection0,
    NoSection1,
    ExtraZBlocked,
}

impl Clause {
    /// Degree of the induced map a map-level clause refers to.
    pub fn degree(self) -> Option<u8> {
        match self {
            Clause::Pi0NotSurjective | Clause::NoSection0 => Some(0),
            Clause::Pi1NotSurjective | Clause::NoSection1 => Some(1),
            _ => None,
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// The data a witness points at, enough to recompute the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Detail {
    Tensor {
        left: FgAbGroup,
        right: FgAbGroup,
        product: FgAbGroup,
    },
    Tor {
        degree_a: u8,
        degree_b: u8,
        left: FgAbGroup,
        right: FgAbGroup,
        tor: FgAbGroup,
    },
    Ranks {
        rank_a: usize,
        rank_b: usize,
        bound: usize,
    },
    Map {
        degree: u8,
        map: GroupHom,
        cokernel: FgAbGroup,
    },
    Relation {
        map: GroupHom,
        #[serde(serialize_with = "bigint_json::vec::serialize")]
        relation: Vec<BigInt>,
    },
    ExtraZ {
        target: FgAbGroup,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionWitness {
    pub clause: Clause,
    pub detail: Detail,
    pub explanation: String,
}

impl ObstructionWitness {
    /// Recomputes the failure from `detail`.
    pub fn verify(&self) -> bool {
        match (&self.clause, &self.detail) {
            (
                Clause::K1TensorNonzero,
                Detail::Tensor {
                    left,
                    right,
                    product,
                },
            ) => &tensor(left, right) == product && !product.is_trivial(),
            (
                Clause::TorNonzero,
                Detail::Tor {
                    left,
                    right,
                    tor: t,
                    ..
                },
            ) => &tor(left, right) == t && !t.is_trivial(),
            (
                Clause::RankInequality,
                Detail::Ranks {
                    rank_a,
                    rank_b,
                    bound,
                },
            ) => rank_a * rank_b > *bound,
            (
                Clause::Pi0NotSurjective | Clause::Pi1NotSurjective,
                Detail::Map { map, cokernel, .. },
            ) => &map.cokernel().group == cokernel && !cokernel.is_trivial(),
            (Clause::NoSection0 | Clause::NoSection1, Detail::Map { map, .. }) => {
                right_inverse_exists(map).is_none()
            }
            (Clause::NoSection0, Detail::Relation { map, relation }) => {
                let Ok(x) = map.source().element(relation) else {
                    return false;
                };
                !x.is_zero() && map.apply(&x).is_ok_and(|y| y.is_zero())
            }
            (Clause::ExtraZBlocked, Detail::ExtraZ { target }) => !target.is_trivial(),
            _ => false,
        }
    }
}

fn finite_order(g: &FgAbGroup) -> BigInt {
    g.order().expect("finite group")
}

fn torsion_subgroup(g: &FgAbGroup) -> FgAbGroup {
    FgAbGroup::new(0, g.torsion())
}

fn infinite_unit(x: &KInvariant) -> bool {
    !x.unit_is_torsion()
}

/// Every violated structural condition: `K₁(A) ⊗ K₁(B) ≠ 0`, any nonzero
/// `Tor(K_i(A), K_j(B))`, then the rank inequality.
pub fn basic_obstructions(a: &KInvariant, b: &KInvariant) -> Vec<ObstructionWitness> {
    let mut out = Vec::new();
    let t11 = tensor(a.k1(), b.k1());
    if !t11.is_trivial() {
        out.push(ObstructionWitness {
            clause: Clause::K1TensorNonzero,
            explanation: format!("K1(A) (x) K1(B) = {t11} is nonzero"),
            detail: Detail::Tensor {
                left: a.k1().clone(),
                right: b.k1().clone(),
                product: t11,
            },
        });
    }
    for (i, ga) in [a.k0(), a.k1()].into_iter().enumerate() {
        for (j, hb) in [b.k0(), b.k1()].into_iter().enumerate() {
            let t = tor(ga, hb);
            if !t.is_trivial() {
                out.push(ObstructionWitness {
                    clause: Clause::TorNonzero,
                    explanation: format!(
                        "Tor(K{i}(A), K{j}(B)) = Tor({ga}, {hb}) = {t} is nonzero"
                    ),
                    detail: Detail::Tor {
                        degree_a: i as u8,
                        degree_b: j as u8,
                        left: ga.clone(),
                        right: hb.clone(),
                        tor: t,
                    },
                });
            }
        }
    }
    let (ra, rb) = (a.k0().rank(), b.k0().rank());
    let slack = usize::from(infinite_unit(a) || infinite_unit(b));
    let bound = (ra + rb).saturating_sub(slack);
    if ra * rb > bound {
        out.push(ObstructionWitness {
            clause: Clause::RankInequality,
            explanation: format!("rank product {ra}*{rb} = {} exceeds {bound}", ra * rb),
            detail: Detail::Ranks {
                rank_a: ra,
                rank_b: rb,
                bound,
            },
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    PossibleCaseI,
    PossibleCaseII,
    PossibleCaseIII,
    PossibleCaseIV,
    Obstructed,
    NotApplicable,
}

impl Outcome {
    pub fn is_possible(self) -> bool {
        !matches!(self, Outcome::Obstructed | Outcome::NotApplicable)
    }

    pub fn case_label(self) -> Option<&'static str> {
        match self {
            Outcome::PossibleCaseI => Some("i"),
            Outcome::PossibleCaseII => Some("ii"),
            Outcome::PossibleCaseIII => Some("iii"),
            Outcome::PossibleCaseIV => Some("iv"),
            _ => None,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Outcome {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Which argument plays the role of `A` in the matched case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    First,
    Second,
}

/// Data of a matched case, in the roles of the case statement:
/// `G₀, G₁` are the torsion parts on the `A` side, `H₀, H₁` on the `B` side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseParameters {
    pub role_a: Role,
    #[serde(serialize_with = "bigint_json::opt::serialize")]
    pub u: Option<BigInt>,
    #[serde(serialize_with = "bigint_json::opt::serialize")]
    pub w: Option<BigInt>,
    pub b: Option<usize>,
    pub g0: FgAbGroup,
    pub g1: FgAbGroup,
    pub h0: FgAbGroup,
    pub h1: FgAbGroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub parameters: Option<CaseParameters>,
    pub witness: Option<ObstructionWitness>,
    pub reason: Option<String>,
}

impl Verdict {
    fn possible(outcome: Outcome, parameters: CaseParameters) -> Self {
        Verdict {
            outcome,
            parameters: Some(parameters),
            witness: None,
            reason: None,
        }
    }

    fn obstructed(witness: ObstructionWitness) -> Self {
        Verdict {
            outcome: Outcome::Obstructed,
            parameters: None,
            witness: Some(witness),
            reason: None,
        }
    }

    fn not_applicable(reason: String) -> Self {
        Verdict {
            outcome: Outcome::NotApplicable,
            parameters: None,
            witness: None,
            reason: Some(reason),
        }
    }

    pub fn clause(&self) -> Option<Clause> {
        self.witness.as_ref().map(|w| w.clause)
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            outcome: Outcome,
            case: Option<&'static str>,
            parameters: &'a Option<CaseParameters>,
            witness: &'a Option<ObstructionWitness>,
            reason: &'a Option<String>,
        }
        Repr {
            outcome: self.outcome,
            case: self.outcome.case_label(),
            parameters: &self.parameters,
            witness: &self.witness,
            reason: &self.reason,
        }
        .serialize(s)
    }
}

fn params(role_a: Role, x: &KInvariant, y: &KInvariant) -> CaseParameters {
    CaseParameters {
        role_a,
        u: None,
        w: None,
        b: None,
        g0: torsion_subgroup(x.k0()),
        g1: torsion_subgroup(x.k1()),
        h0: torsion_subgroup(y.k0()),
        h1: torsion_subgroup(y.k1()),
    }
}

fn coprime(x: &BigInt, y: &BigInt) -> bool {
    x.gcd(y).is_one()
}

/// `(0,0,0)` or `(ℤ,0,±1)`.
fn is_trivial_shape(x: &KInvariant) -> bool {
    if !x.k1().is_trivial() {
        return false;
    }
    let k0 = x.k0();
    k0.is_trivial()
        || (k0.rank() == 1 && k0.torsion().is_empty() && x.unit().coords()[0].abs().is_one())
}

fn match_case_i(x: &KInvariant, y: &KInvariant, role_a: Role) -> Option<CaseParameters> {
    if !is_trivial_shape(x) {
        return None;
    }
    let mut p = params(role_a, x, y);
    p.u = (x.k0().rank() == 1).then(BigInt::one);
    Some(p)
}

fn match_case_ii(x: &KInvariant, y: &KInvariant, role_a: Role) -> Option<CaseParameters> {
    if !(x.is_finite() && y.is_finite()) {
        return None;
    }
    let gx = finite_order(x.k0()) * finite_order(x.k1());
    let gy = finite_order(y.k0()) * finite_order(y.k1());
    coprime(&gx, &gy).then(|| params(role_a, x, y))
}

/// Orders of the torsion parts on one side.
fn torsion_orders(x: &KInvariant) -> (BigInt, BigInt) {
    (x.k0().torsion_order(), finite_order(x.k1()))
}

fn match_case_iii(x: &KInvariant, y: &KInvariant, role_a: Role) -> Option<CaseParameters> {
    if x.k0().rank() != 1 || y.k0().rank() != 1 || !x.k1().is_finite() || !y.k1().is_finite() {
        return None;
    }
    let u = x.unit().free_part()[0].abs();
    let w = y.unit().free_part()[0].abs();
    if u.is_zero() || w.is_zero() {
        return None;
    }
    let (g0, g1) = torsion_orders(x);
    let (h0, h1) = torsion_orders(y);
    let ok = coprime(&u, &w)
        && coprime(&u, &h0)
        && coprime(&u, &h1)
        && coprime(&w, &g0)
        && coprime(&w, &g1)
        && coprime(&(&g0 * &g1), &(&h0 * &h1));
    ok.then(|| {
        let mut p = params(role_a, x, y);
        p.u = Some(u);
        p.w = Some(w);
        p.b = Some(1);
        p
    })
}

fn match_case_iv(x: &KInvariant, y: &KInvariant, role_a: Role) -> Option<CaseParameters> {
    let k0 = x.k0();
    if k0.rank() != 1 || !k0.torsion().is_empty() || !x.k1().is_trivial() {
        return None;
    }
    let b = y.k0().rank();
    if b <= 1 || !y.k1().is_finite() {
        return None;
    }
    let u = x.unit().coords()[0].abs();
    // a unimodular change of basis moves the free part of [1_B] to (w, 0, ..., 0)
    let w = y
        .unit()
        .free_part()
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if u.is_zero() || w.is_zero() {
        return None;
    }
    let (h0, h1) = torsion_orders(y);
    (coprime(&u, &w) && coprime(&u, &h0) && coprime(&u, &h1)).then(|| {
        let mut p = params(role_a, x, y);
        p.u = Some(u);
        p.w = Some(w);
        p.b = Some(b);
        p
    })
}

type Matcher = fn(&KInvariant, &KInvariant, Role) -> Option<CaseParameters>;

/// The first admissible shape, trying both argument orders.
pub fn match_case(a: &KInvariant, b: &KInvariant) -> Option<(Outcome, CaseParameters)> {
    let matchers: [(Outcome, Matcher); 4] = [
        (Outcome::PossibleCaseII, match_case_ii),
        (Outcome::PossibleCaseI, match_case_i),
        (Outcome::PossibleCaseIII, match_case_iii),
        (Outcome::PossibleCaseIV, match_case_iv),
    ];
    matchers.iter().find_map(|(outcome, m)| {
        m(a, b, Role::First)
            .or_else(|| m(b, a, Role::Second))
            .map(|p| (*outcome, p))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `A *_ℂ B → A ⊗ B`
    Unital,
    /// `A * B → A ⊗ B`
    Full,
}

/// Induced maps in both degrees together with right inverses when they exist.
#[derive(Clone, Debug, Serialize)]
pub struct KSections {
    pub mode: Mode,
    pub pi0: GroupHom,
    pub pi1: GroupHom,
    pub deg0: Option<GroupHom>,
    pub deg1: Option<GroupHom>,
    /// False only when the extra ℤ of `K₁(A *_ℂ B)` may map into a
    /// nonzero `Tor(K₀(A), K₀(B))`.
    pub extra_z_ok: bool,
}

impl KSections {
    pub fn both(&self) -> bool {
        self.deg0.is_some() && self.deg1.is_some()
    }

    /// `ExtraZBlocked` when `extra_z_ok` is false. This is a caveat, never
    /// a verdict: the map on the extra summand is not determined.
    pub fn caveat(&self, a: &KInvariant, b: &KInvariant) -> Option<ObstructionWitness> {
        if self.extra_z_ok {
            return None;
        }
        let target = tor(a.k0(), b.k0());
        Some(ObstructionWitness {
            clause: Clause::ExtraZBlocked,
            explanation: format!(
                "the extra Z summand of K1 may map nontrivially into Tor(K0(A), K0(B)) = {target}"
            ),
            detail: Detail::ExtraZ { target },
        })
    }
}

pub fn section_exists_k(a: &KInvariant, b: &KInvariant, mode: Mode) -> KSections {
    let (pi0, pi1, extra_z_ok) = match mode {
        Mode::Unital => {
            let p = pi_star(a, b);
            let ok = p.extra_z_target.as_ref().is_none_or(FgAbGroup::is_trivial);
            (p.pi0, p.pi1, ok)
        }
        Mode::Full => {
            let p = pi_star_full(a, b);
            (p.pi0, p.pi1, true)
        }
    };
    KSections {
        mode,
        deg0: right_inverse_exists(&pi0),
        deg1: right_inverse_exists(&pi1),
        pi0,
        pi1,
        extra_z_ok,
    }
}

/// The first map-level failure, degree 0 before degree 1.
fn map_witness(s: &KSections) -> Option<ObstructionWitness> {
    for (degree, map, section) in [(0u8, &s.pi0, &s.deg0), (1, &s.pi1, &s.deg1)] {
        if section.is_some() {
            continue;
        }
        let cokernel = map.cokernel().group;
        let (clause, explanation) = if !cokernel.is_trivial() {
            let clause = if degree == 0 {
                Clause::Pi0NotSurjective
            } else {
                Clause::Pi1NotSurjective
            };
            (
                clause,
                format!(
                    "pi{degree}: {} -> {} has cokernel {cokernel}",
                    map.source(),
                    map.target()
                ),
            )
        } else {
            let clause = if degree == 0 {
                Clause::NoSection0
            } else {
                Clause::NoSection1
            };
            (
                clause,
                format!(
                    "pi{degree}: {} -> {} is onto but has no right inverse",
                    map.source(),
                    map.target()
                ),
            )
        };
        return Some(ObstructionWitness {
            clause,
            explanation,
            detail: Detail::Map {
                degree,
                map: map.clone(),
                cokernel,
            },
        });
    }
    None
}

pub fn classify(a: &KInvariant, b: &KInvariant) -> Verdict {
    if let Some(w) = basic_obstructions(a, b).into_iter().next() {
        return Verdict::obstructed(w);
    }
    let sections = section_exists_k(a, b, Mode::Unital);
    if let Some(w) = map_witness(&sections) {
        return Verdict::obstructed(w);
    }
    match match_case(a, b) {
        Some((outcome, p)) => Verdict::possible(outcome, p),
        None => Verdict::not_applicable(format!(
            "both induced maps have right inverses, but ({a}, {b}) matches none of the four admissible shapes"
        )),
    }
}

/// Whether both induced maps of `A *_ℂ B → A ⊗ B` are isomorphisms.
pub fn iso_remark_check(a: &KInvariant, b: &KInvariant) -> Result<bool> {
    let v = classify(a, b);
    if !matches!(
        v.outcome,
        Outcome::PossibleCaseI | Outcome::PossibleCaseIII | Outcome::PossibleCaseIV
    ) {
        return Err(Error::Precondition(format!(
            "isomorphism check needs case i, iii or iv, got {}",
            v.outcome
        )));
    }
    let p = pi_star(a, b);
    Ok(p.pi0.is_isomorphism() && p.pi1.is_isomorphism())
}

/// Whether `(G₀ ⊕ H₀)/⟨(r, −s)⟩` equals `G₀/⟨r⟩ ⊕ H₀/⟨s⟩` for finite groups
/// of coprime orders.
pub fn case_ii_k_check(
    g0: &FgAbGroup,
    g1: &FgAbGroup,
    h0: &FgAbGroup,
    h1: &FgAbGroup,
    r: &GroupElement,
    s: &GroupElement,
) -> Result<bool> {
    if ![g0, g1, h0, h1].iter().all(|g| g.is_finite()) {
        return Err(Error::Precondition("all four groups must be finite".into()));
    }
    let g = finite_order(g0) * finite_order(g1);
    let h = finite_order(h0) * finite_order(h1);
    if !coprime(&g, &h) {
        return Err(Error::Precondition(format!(
            "orders {g} and {h} are not coprime"
        )));
    }
    r.check_in(g0)?;
    s.check_in(h0)?;
    let sum = direct_sum(g0, h0);
    let rel = sum.combine(&[r.clone(), -s])?;
    let lhs = quotient_by(&sum.group, &rel)?.group;
    let rhs = direct_sum(&quotient_by(g0, r)?.group, &quotient_by(h0, s)?.group).group;
    Ok(lhs == rhs)
}

/// `ℤ⁴ → ℤ⁴/⟨(1,1,−1,−1)⟩` together with the forced images `[eᵢ] ↦ eᵢ`
/// coming from the scale of `K₀(ℂ² * ℂ²)`, taken as given data.
pub fn ex4_scale_constraints() -> (GroupHom, Vec<(GroupElement, GroupElement)>) {
    let z4 = FgAbGroup::free(4);
    let rel = z4.element(&[1, 1, -1, -1]).expect("four coordinates");
    let q = quotient_by(&z4, &rel).expect("relation lies in the group");
    let constraints = z4
        .generators()
        .map(|e| (q.proj.apply(&e).expect("generator"), e))
        .collect();
    (q.proj, constraints)
}

/// No section of the degree-0 quotient map respects the scale constraints.
pub fn ex4_no_scaled_section() -> ObstructionWitness {
    let (map, constraints) = ex4_scale_constraints();
    let found =
        constrained_section_exists(&map, &constraints).expect("constraints are well formed");
    assert!(
        found.is_none(),
        "scale constraints unexpectedly admit a section"
    );
    ObstructionWitness {
        clause: Clause::NoSection0,
        explanation: "a section fixing every [e_i] would have to send the zero class [(1,1,-1,-1)] to (1,1,-1,-1)"
            .into(),
        detail: Detail::Relation {
            map,
            relation: [1, 1, -1, -1].map(BigInt::from).to_vec(),
        },
    }
}

/// Some `x` in `K₀((ℤ,0,m) *_ℂ (ℤ,0,n))` with `mn·x = [1]`.
pub fn m_oo_unit_divisibility(m: u64, n: u64) -> Result<Option<GroupElement>> {
    if m == 0 || n == 0 {
        return Err(Error::Precondition(format!(
            "matrix sizes must be positive, got ({m}, {n})"
        )));
    }
    let z = FgAbGroup::free(1);
    let trivial = FgAbGroup::trivial();
    let a = KInvariant::from_coords(z.clone(), trivial.clone(), &[m])?;
    let b = KInvariant::from_coords(z, trivial, &[n])?;
    let p = unital_free_product_k(&a, &b);
    let unit = p.unit.expect("unital free product has a unit");
    crate::fgab::solve_divisibility(&p.k0, &unit, &(BigInt::from(m) * n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(k0: FgAbGroup, k1: FgAbGroup, unit: &[i64]) -> KInvariant {
        KInvariant::from_coords(k0, k1, unit).unwrap()
    }

    fn cuntz(n: i64) -> KInvariant {
        let k0 = FgAbGroup::cyclic(n - 1);
        let unit = vec![1; k0.ngens()];
        inv(k0, FgAbGroup::trivial(), &unit)
    }

    fn matrix(n: i64) -> KInvariant {
        inv(FgAbGroup::free(1), FgAbGroup::trivial(), &[n])
    }

    fn ck(k: usize) -> KInvariant {
        inv(FgAbGroup::free(k), FgAbGroup::trivial(), &vec![1; k])
    }

    fn ct() -> KInvariant {
        inv(FgAbGroup::free(1), FgAbGroup::free(1), &[1])
    }

    #[test]
    fn basic_examples() {
        let w = basic_obstructions(&ct(), &ct());
        assert_eq!(w[0].clause, Clause::K1TensorNonzero);
        let w = basic_obstructions(&ck(2), &ck(2));
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].clause, Clause::RankInequality);
        assert!(matches!(w[0].detail, Detail::Ranks { bound: 3, .. }));
        let w = basic_obstructions(&cuntz(3), &cuntz(5));
        assert_eq!(w[0].clause, Clause::TorNonzero);
        assert!(w.iter().all(ObstructionWitness::verify));
        assert!(basic_obstructions(&matrix(2), &matrix(3)).is_empty());
    }

    #[test]
    fn classify_examples() {
        let v = classify(&matrix(2), &matrix(3));
        assert_eq!(v.outcome, Outcome::PossibleCaseIII);
        let p = v.parameters.unwrap();
        assert_eq!((p.u, p.w), (Some(BigInt::from(2)), Some(BigInt::from(3))));

        assert_eq!(
            classify(&cuntz(2), &cuntz(5)).outcome,
            Outcome::PossibleCaseII
        );
        assert_eq!(
            classify(&cuntz(4), &cuntz(7)).clause(),
            Some(Clause::TorNonzero)
        );
        for n in [2, 3, 4, 6] {
            let v = classify(&matrix(n), &matrix(n));
            assert_eq!(v.clause(), Some(Clause::Pi0NotSurjective));
            assert!(v.witness.unwrap().verify());
        }
        assert_eq!(
            classify(&ct(), &ct()).clause(),
            Some(Clause::K1TensorNonzero)
        );
        assert_eq!(classify(&ck(1), &ct()).outcome, Outcome::PossibleCaseI);
    }

    #[test]
    fn case_iv_and_its_failure() {
        // (Z,0,1) against C^3 is case i; (Z,0,u) with u > 1 fails on the extra rank
        assert_eq!(classify(&matrix(1), &ck(3)).outcome, Outcome::PossibleCaseI);
        let v = classify(&matrix(2), &ck(2));
        assert_eq!(
            match_case(&matrix(2), &ck(2)).unwrap().0,
            Outcome::PossibleCaseIV
        );
        assert_eq!(v.clause(), Some(Clause::Pi0NotSurjective));
    }

    #[test]
    fn finite_against_coprime_matrix_unit() {
        let v = classify(&cuntz(4), &matrix(2));
        assert_eq!(v.outcome, Outcome::NotApplicable);
        assert!(v.reason.is_some());
    }

    #[test]
    fn sections_m2_m3() {
        let s = section_exists_k(&matrix(2), &matrix(3), Mode::Unital);
        assert!(s.both() && s.extra_z_ok);
        let s0 = s.deg0.unwrap();
        let back = s0.then(&s.pi0).unwrap();
        assert_eq!(back, GroupHom::identity(s.pi0.target()));
        let s = section_exists_k(&cuntz(2), &cuntz(2), Mode::Unital);
        assert!(s.both() && s.extra_z_ok);
        assert!(s.caveat(&cuntz(2), &cuntz(2)).is_none());
        assert!(section_exists_k(&matrix(3), &matrix(3), Mode::Unital)
            .deg0
            .is_none());
    }

    #[test]
    fn extra_z_caveat() {
        let s = section_exists_k(&cuntz(3), &cuntz(3), Mode::Unital);
        assert!(!s.extra_z_ok);
        let c = s.caveat(&cuntz(3), &cuntz(3)).unwrap();
        assert_eq!(c.clause, Clause::ExtraZBlocked);
        assert!(c.verify());
    }

    #[test]
    fn induced_maps_bijective() {
        assert!(iso_remark_check(&matrix(2), &matrix(3)).unwrap());
        assert!(iso_remark_check(&matrix(1), &ck(3)).unwrap());
        assert!(iso_remark_check(&cuntz(2), &cuntz(3)).is_err());
    }

    #[test]
    fn case_ii_display() {
        let z = |n: i64| FgAbGroup::cyclic(n);
        let t = FgAbGroup::trivial();
        let e = |g: &FgAbGroup, k: i64| g.element(&[k]).unwrap();
        assert!(case_ii_k_check(&z(4), &t, &z(9), &t, &e(&z(4), 2), &e(&z(9), 3)).unwrap());
        assert!(case_ii_k_check(&z(2), &t, &z(3), &t, &e(&z(2), 0), &e(&z(3), 0)).unwrap());
        assert!(case_ii_k_check(&z(8), &t, &z(3), &t, &e(&z(8), 1), &e(&z(3), 1)).unwrap());
        assert!(case_ii_k_check(&z(2), &t, &z(4), &t, &e(&z(2), 1), &e(&z(4), 1)).is_err());
    }

    #[test]
    fn scaled_section() {
        let w = ex4_no_scaled_section();
        assert_eq!(w.clause, Clause::NoSection0);
        assert!(w.explanation.contains("(1,1,-1,-1)"));
        assert!(w.verify());
    }

    #[test]
    fn divisibility_of_unit() {
        let x = m_oo_unit_divisibility(2, 3).unwrap().unwrap();
        let p = unital_free_product_k(&matrix(2), &matrix(3));
        assert_eq!(x.scale(6), p.unit.unwrap());
        assert!(m_oo_unit_divisibility(2, 4).unwrap().is_none());
        assert!(m_oo_unit_divisibility(1, 5).unwrap().is_some());
        assert!(m_oo_unit_divisibility(0, 5).is_err());
    }

    #[test]
    fn verdict_json() {
        let v = serde_json::to_value(classify(&ct(), &ct())).unwrap();
        assert_eq!(v["outcome"], "Obstructed");
        assert_eq!(v["witness"]["clause"], "K1TensorNonzero");
        assert!(v["case"].is_null());
        let v = serde_json::to_value(classify(&matrix(2), &matrix(3))).unwrap();
        assert_eq!(v["case"], "iii");
        assert_eq!(v["parameters"]["u"], 2);
    }
}
