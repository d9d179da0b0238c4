//! Named algebras and a small expression language over them.
//!
//! | atom | invariant |
//! |---|---|
//! | `O_n`, `n ≥ 2` | `(ℤ_{n−1}, 0, 1)` |
//! | `Oinf` | `(ℤ, 0, 1)` |
//! | `M_n`, `M_n(Oinf)` | `(ℤ, 0, n)` |
//! | `C` | `(ℤ, 0, 1)` |
//! | `C^k` | `(ℤᵏ, 0, (1,…,1))` |
//! | `CT` | `(ℤ, ℤ, 1)` |
//! | `C01` | `(ℤ, 0, 1)` |
//!
//! `CAR` and `M_n^inf` parse but are refused by [`builtin`]: their K₀ is
//! not finitely generated.

mod parse;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fgab::FgAbGroup;
use crate::kinv::{free_product_k, tensor_invariant, unital_free_product_k, KInvariant, KPair};

pub use parse::parse;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Atom {
    Cuntz(u64),
    CuntzInf,
    Matrix(u64),
    MatrixOinf(u64),
    Complex,
    ComplexPower(u64),
    CircleFunctions,
    Interval,
    Car,
    Uhf(u64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Cuntz(n) => write!(f, "O_{n}"),
            Atom::CuntzInf => f.write_str("Oinf"),
            Atom::Matrix(n) => write!(f, "M_{n}"),
            Atom::MatrixOinf(n) => write!(f, "M_{n}(Oinf)"),
            Atom::Complex => f.write_str("C"),
            Atom::ComplexPower(k) => write!(f, "C^{k}"),
            Atom::CircleFunctions => f.write_str("CT"),
            Atom::Interval => f.write_str("C01"),
            Atom::Car => f.write_str("CAR"),
            Atom::Uhf(n) => write!(f, "M_{n}^inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraExpr {
    Atom(Atom),
    Literal(KInvariant),
    Tensor(Box<AlgebraExpr>, Box<AlgebraExpr>),
    FreeProd(Box<AlgebraExpr>, Box<AlgebraExpr>),
    UnitalFreeProd(Box<AlgebraExpr>, Box<AlgebraExpr>),
}

impl AlgebraExpr {
    pub fn tensor(l: AlgebraExpr, r: AlgebraExpr) -> Self {
        AlgebraExpr::Tensor(Box::new(l), Box::new(r))
    }

    pub fn free(l: AlgebraExpr, r: AlgebraExpr) -> Self {
        AlgebraExpr::FreeProd(Box::new(l), Box::new(r))
    }

    pub fn unital_free(l: AlgebraExpr, r: AlgebraExpr) -> Self {
        AlgebraExpr::UnitalFreeProd(Box::new(l), Box::new(r))
    }

    fn children(&self) -> Option<(&AlgebraExpr, &AlgebraExpr, &'static str)> {
        match self {
            AlgebraExpr::Tensor(l, r) => Some((l, r, "(x)")),
            AlgebraExpr::FreeProd(l, r) => Some((l, r, "(*)")),
            AlgebraExpr::UnitalFreeProd(l, r) => Some((l, r, "(*C)")),
            _ => None,
        }
    }

    fn is_free_product(&self) -> bool {
        matches!(
            self,
            AlgebraExpr::FreeProd(..) | AlgebraExpr::UnitalFreeProd(..)
        )
    }
}

/// Binary children are always parenthesized, so printing then parsing
/// gives back the same tree.
impl fmt::Display for AlgebraExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraExpr::Atom(a) => write!(f, "{a}"),
            AlgebraExpr::Literal(k) => {
                let s = serde_json::to_string(k).map_err(|_| fmt::Error)?;
                f.write_str(&s)
            }
            _ => {
                let (l, r, op) = self.children().expect("binary node");
                let side = |f: &mut fmt::Formatter<'_>, e: &AlgebraExpr| {
                    if e.children().is_some() {
                        write!(f, "({e})")
                    } else {
                        write!(f, "{e}")
                    }
                };
                side(f, l)?;
                write!(f, " {op} ")?;
                side(f, r)
            }
        }
    }
}

pub fn builtin(atom: Atom) -> Result<KInvariant> {
    let z = || FgAbGroup::free(1);
    let zero = FgAbGroup::trivial;
    let inv = |k0: FgAbGroup, k1: FgAbGroup, unit: Vec<u64>| {
        KInvariant::from_coords(k0, k1, &unit).expect("table entries are consistent")
    };
    Ok(match atom {
        Atom::Cuntz(n) if n >= 2 => {
            let k0 = FgAbGroup::cyclic(n - 1);
            let unit = vec![1; k0.ngens()];
            inv(k0, zero(), unit)
        }
        Atom::Cuntz(n) => return Err(out_of_range(format!("O_n needs n >= 2, got {n}"))),
        Atom::Matrix(0) | Atom::MatrixOinf(0) => {
            return Err(out_of_range("M_n needs n >= 1".into()))
        }
        Atom::ComplexPower(0) => return Err(out_of_range("C^k needs k >= 1".into())),
        Atom::CuntzInf | Atom::Complex | Atom::Interval => inv(z(), zero(), vec![1]),
        Atom::Matrix(n) | Atom::MatrixOinf(n) => inv(z(), zero(), vec![n]),
        Atom::ComplexPower(k) => inv(FgAbGroup::free(k as usize), zero(), vec![1; k as usize]),
        Atom::CircleFunctions => inv(z(), z(), vec![1]),
        Atom::Car | Atom::Uhf(_) => return Err(Error::NonFinitelyGenerated(atom.to_string())),
    })
}

fn out_of_range(msg: String) -> Error {
    Error::ParamOutOfRange { pos: 0, msg }
}

/// Result of evaluating an expression: an invariant, or the K-pair of a
/// root-level free product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evaluated {
    Invariant(KInvariant),
    Pair(KPair),
}

pub fn eval(expr: &AlgebraExpr) -> Result<Evaluated> {
    match expr {
        AlgebraExpr::FreeProd(l, r) => {
            Ok(Evaluated::Pair(free_product_k(&operand(l)?, &operand(r)?)))
        }
        AlgebraExpr::UnitalFreeProd(l, r) => Ok(Evaluated::Pair(unital_free_product_k(
            &operand(l)?,
            &operand(r)?,
        ))),
        _ => operand(expr).map(Evaluated::Invariant),
    }
}

/// Evaluates an expression that must denote a unital algebra invariant.
pub fn eval_invariant(expr: &AlgebraExpr) -> Result<KInvariant> {
    if expr.is_free_product() {
        return Err(Error::NotAnInvariant(expr.to_string()));
    }
    operand(expr)
}

fn operand(expr: &AlgebraExpr) -> Result<KInvariant> {
    match expr {
        AlgebraExpr::Atom(a) => builtin(*a),
        AlgebraExpr::Literal(k) => Ok(k.clone()),
        AlgebraExpr::Tensor(l, r) => Ok(tensor_invariant(&operand(l)?, &operand(r)?)),
        _ => Err(Error::UnsupportedNesting(expr.to_string())),
    }
}

/// Parses and evaluates in one step.
pub fn evaluate(text: &str) -> Result<Evaluated> {
    eval(&parse(text)?)
}

pub fn evaluate_invariant(text: &str) -> Result<KInvariant> {
    eval_invariant(&parse(text)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub atom: Atom,
    /// Purely infinite simple nuclear: `O_n`, `Oinf`, `M_n(Oinf)`.
    pub kirchberg: bool,
}

impl CatalogEntry {
    pub fn name(&self) -> String {
        self.atom.to_string()
    }

    pub fn invariant(&self) -> KInvariant {
        builtin(self.atom).expect("catalog entries are finitely generated")
    }
}

/// The algebras used for catalog-wide sweeps.
pub fn catalog() -> Vec<CatalogEntry> {
    let k = |atom| CatalogEntry {
        atom,
        kirchberg: true,
    };
    let plain = |atom| CatalogEntry {
        atom,
        kirchberg: false,
    };
    let mut out: Vec<CatalogEntry> = [2, 3, 4, 5, 6, 7, 9, 13]
        .map(|n| k(Atom::Cuntz(n)))
        .to_vec();
    out.push(k(Atom::CuntzInf));
    out.extend([2, 3, 4, 6].map(|n| plain(Atom::Matrix(n))));
    out.extend([2, 3].map(|n| k(Atom::MatrixOinf(n))));
    out.push(plain(Atom::Complex));
    out.extend([2, 3].map(|n| plain(Atom::ComplexPower(n))));
    out.push(plain(Atom::CircleFunctions));
    out.push(plain(Atom::Interval));
    out
}
