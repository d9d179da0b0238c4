//! Integer linear systems with congruence rows, and the solvers built on
//! them: sections of homomorphisms and divisibility of elements.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{FgAbGroup, GroupElement};
use super::hom::GroupHom;
use super::matrix::IntMatrix;
use super::snf::smith_normal_form;
use crate::error::{Error, Result};

/// Basis of `{x ∈ ℤⁿ : a·x = 0}`, one column per basis vector.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let cols: Vec<usize> = (r..a.cols()).collect();
    snf.v.select_cols(&cols)
}

/// Some `x ∈ ℤⁿ` with `a·x = b`, if one exists.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    let snf = smith_normal_form(a);
    let c = snf.u.apply(b);
    let r = snf.rank();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        if i < r {
            let (q, rem) = ci.div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(snf.v.apply(&y))
}

/// Rows `coeffs · x ≡ rhs (mod modulus)`; a zero modulus means equality.
#[derive(Clone, Debug, Default)]
pub struct CongruenceSystem {
    unknowns: usize,
    rows: Vec<(Vec<BigInt>, BigInt, BigInt)>,
}

impl CongruenceSystem {
    pub fn new(unknowns: usize) -> Self {
        CongruenceSystem {
            unknowns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, coeffs: Vec<BigInt>, rhs: BigInt, modulus: BigInt) {
        assert_eq!(coeffs.len(), self.unknowns);
        self.rows.push((coeffs, rhs, modulus));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Adds one slack unknown per congruence row and solves over ℤ.
    pub fn solve(&self) -> Option<Vec<BigInt>> {
        let moduli: Vec<usize> = (0..self.rows.len())
            .filter(|&k| !self.rows[k].2.is_zero())
            .collect();
        let mut a = IntMatrix::zeros(self.rows.len(), self.unknowns + moduli.len());
        let mut b = Vec::with_capacity(self.rows.len());
        for (k, (coeffs, rhs, _)) in self.rows.iter().enumerate() {
            for (j, c) in coeffs.iter().enumerate() {
                a[(k, j)] = c.clone();
            }
            b.push(rhs.clone());
        }
        for (s, &k) in moduli.iter().enumerate() {
            a[(k, self.unknowns + s)] = self.rows[k].2.clone();
        }
        let mut x = solve_integer(&a, &b)?;
        x.truncate(self.unknowns);
        Some(x)
    }
}

/// Some `s` with `f ∘ s = id` on `f.target()`.
pub fn right_inverse_exists(f: &GroupHom) -> Option<GroupHom> {
    constrained_section_exists(f, &[]).expect("no constraints to reject")
}

/// Some `s` with `f ∘ s = id` and `s(tᵢ) = gᵢ` for every constraint `(tᵢ, gᵢ)`.
pub fn constrained_section_exists(
    f: &GroupHom,
    constraints: &[(GroupElement, GroupElement)],
) -> Result<Option<GroupHom>> {
    let src = f.source();
    let tgt = f.target();
    for (t, g) in constraints {
        if !t.belongs_to(tgt) || !g.belongs_to(src) {
            return Err(Error::MalformedConstraint(format!(
                "constraint {t} -> {g} must map {tgt} into {src}"
            )));
        }
    }
    let (ns, nt) = (src.ngens(), tgt.ngens());
    // unknown S[i][j] (row i of the source, column j of the target) at j * ns + i
    let var = |i: usize, j: usize| j * ns + i;
    let mut sys = CongruenceSystem::new(ns * nt);
    let zero_row = || vec![BigInt::zero(); ns * nt];

    for j in tgt.rank()..nt {
        let e = tgt.modulus(j);
        for i in 0..ns {
            let mut c = zero_row();
            c[var(i, j)] = e.clone();
            sys.push(c, BigInt::zero(), src.modulus(i));
        }
    }
    let m = f.matrix();
    for j in 0..nt {
        for k in 0..nt {
            let mut c = zero_row();
            for i in 0..ns {
                c[var(i, j)] = m[(k, i)].clone();
            }
            let rhs = if k == j {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            sys.push(c, rhs, tgt.modulus(k));
        }
    }
    for (t, g) in constraints {
        for i in 0..ns {
            let mut c = zero_row();
            for (j, tj) in t.coords().iter().enumerate() {
                c[var(i, j)] = tj.clone();
            }
            sys.push(c, g.coords()[i].clone(), src.modulus(i));
        }
    }

    let Some(x) = sys.solve() else {
        return Ok(None);
    };
    let mut s = IntMatrix::zeros(ns, nt);
    for i in 0..ns {
        for j in 0..nt {
            s[(i, j)] = x[var(i, j)].clone();
        }
    }
    let s = GroupHom::new(tgt.clone(), src.clone(), s).expect("solver enforces well-definedness");
    Ok(Some(s))
}

/// Some `x` with `n·x = target`, if one exists.
pub fn solve_divisibility(
    g: &FgAbGroup,
    target: &GroupElement,
    n: &BigInt,
) -> Result<Option<GroupElement>> {
    target.check_in(g)?;
    if n < &BigInt::one() {
        return Err(Error::Precondition(format!(
            "divisor must be positive, got {n}"
        )));
    }
    let k = g.ngens();
    let mut sys = CongruenceSystem::new(k);
    for i in 0..k {
        let mut c = vec![BigInt::zero(); k];
        c[i] = n.clone();
        sys.push(c, target.coords()[i].clone(), g.modulus(i));
    }
    Ok(sys.solve().map(|x| g.element(&x).expect("length fixed")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::group::quotient_by;

    #[test]
    fn kernel_and_solve() {
        let a = IntMatrix::from_i64_rows(&[&[2, 4, 6]]);
        let k = integer_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert!(solve_integer(&a, &[BigInt::from(3)]).is_none());
        let x = solve_integer(&a, &[BigInt::from(8)]).unwrap();
        assert_eq!(a.apply(&x), vec![BigInt::from(8)]);
    }

    #[test]
    fn reduction_has_no_section() {
        let f = GroupHom::new(
            FgAbGroup::free(1),
            FgAbGroup::cyclic(2),
            IntMatrix::from_i64_rows(&[&[1]]),
        )
        .unwrap();
        assert!(right_inverse_exists(&f).is_none());
    }

    #[test]
    fn projection_section() {
        let f = GroupHom::new(
            FgAbGroup::free(2),
            FgAbGroup::free(1),
            IntMatrix::from_i64_rows(&[&[1, 0]]),
        )
        .unwrap();
        let s = right_inverse_exists(&f).unwrap();
        assert_eq!(s.then(&f).unwrap(), GroupHom::identity(f.target()));
        assert_eq!(s.matrix().col(0)[0], BigInt::one());
    }

    #[test]
    fn identity_with_constraints() {
        let g = FgAbGroup::new(1, &[6]);
        let id = GroupHom::identity(&g);
        let x = g.element(&[2, 5]).unwrap();
        let s = constrained_section_exists(&id, &[(x.clone(), x)])
            .unwrap()
            .unwrap();
        assert_eq!(s, id);
        let bad = FgAbGroup::free(3).zero();
        assert!(matches!(
            constrained_section_exists(&id, &[(bad, g.zero())]),
            Err(Error::MalformedConstraint(_))
        ));
    }

    #[test]
    fn forced_images_contradict_relation() {
        let z4 = FgAbGroup::free(4);
        let q = quotient_by(&z4, &z4.element(&[1, 1, -1, -1]).unwrap()).unwrap();
        let f = q.proj.clone();
        let all: Vec<_> = z4.generators().map(|e| (f.apply(&e).unwrap(), e)).collect();
        assert!(constrained_section_exists(&f, &all).unwrap().is_none());
        assert!(constrained_section_exists(&f, &all[..2]).unwrap().is_some());
        assert!(right_inverse_exists(&f).is_some());
    }

    #[test]
    fn divisibility() {
        let z = FgAbGroup::free(1);
        let six = z.element(&[6]).unwrap();
        assert_eq!(
            solve_divisibility(&z, &six, &BigInt::from(2))
                .unwrap()
                .unwrap(),
            z.element(&[3]).unwrap()
        );
        let one = z.element(&[1]).unwrap();
        assert!(solve_divisibility(&z, &one, &BigInt::from(2))
            .unwrap()
            .is_none());
        assert!(solve_divisibility(&z, &one, &BigInt::zero()).is_err());
    }

    #[test]
    fn divisibility_in_quotient() {
        // Z^2/<(2,-3)>: 6·[(1,-1)] = [(2,0)]
        let z2 = FgAbGroup::free(2);
        let q = quotient_by(&z2, &z2.element(&[2, -3]).unwrap()).unwrap();
        let target = q.proj.apply(&z2.element(&[2, 0]).unwrap()).unwrap();
        let x = solve_divisibility(&q.group, &target, &BigInt::from(6))
            .unwrap()
            .unwrap();
        assert_eq!(x, q.proj.apply(&z2.element(&[1, -1]).unwrap()).unwrap());
    }
}
