//! Fixed regression suite over the worked examples.

use num_integer::Integer;
use serde_json::{json, Value};

use kobstruct::catalog::{builtin, catalog, Atom};
use kobstruct::fgab::{FgAbGroup, GroupHom};
use kobstruct::kinv::{
    free_product_k, kunneth, tensor_invariant, unital_free_product_k, unital_k0_quotient,
    KInvariant,
};
use kobstruct::obstruct::{
    classify, ex4_no_scaled_section, m_oo_unit_divisibility, section_exists_k, Clause, Mode,
    Outcome,
};
use kobstruct::sweep::{self, Strategy};

use crate::commands::{Output, EXIT_ERROR, EXIT_OBSTRUCTED, EXIT_OK};

type Check = Result<String, String>;

struct Item {
    id: &'static str,
    title: &'static str,
    run: fn() -> Check,
}

fn atom(a: Atom) -> KInvariant {
    builtin(a).expect("builtin atom")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c2_c2() -> Check {
    let c2 = atom(Atom::ComplexPower(2));
    let v = classify(&c2, &c2);
    ensure(v.clause() == Some(Clause::RankInequality), || {
        format!("got {:?}", v.outcome)
    })?;
    Ok("Obstructed / RankInequality".into())
}

fn mn_mn() -> Check {
    for n in [2u64, 3, 4, 6] {
        let m = atom(Atom::Matrix(n));
        let v = classify(&m, &m);
        ensure(v.clause() == Some(Clause::Pi0NotSurjective), || {
            format!("M_{n}: got {:?}", v.clause())
        })?;
        let pi0 = section_exists_k(&m, &m, Mode::Unital).pi0;
        let cok = pi0.cokernel().group;
        ensure(cok == FgAbGroup::cyclic(n), || {
            format!("M_{n}: cokernel {cok}")
        })?;
    }
    Ok("pi0 is multiplication by n with cokernel Z_n for n = 2, 3, 4, 6".into())
}

fn m2_m3() -> Check {
    let (a, b) = (atom(Atom::Matrix(2)), atom(Atom::Matrix(3)));
    let v = classify(&a, &b);
    ensure(v.outcome == Outcome::PossibleCaseIII, || {
        format!("got {}", v.outcome)
    })?;
    let s = section_exists_k(&a, &b, Mode::Unital);
    let sec = s.deg0.ok_or("no degree-0 section")?;
    let q = unital_k0_quotient(&a, &b);
    let expected = q
        .proj
        .apply(&q.proj.source().element(&[1, -1]).expect("two coordinates"))
        .expect("in the sum");
    let image = sec.apply(&sec.source().generator(0)).expect("generator");
    ensure(image == expected, || format!("section sends 1 to {image}"))?;
    Ok("PossibleCaseIII, section n -> [(n,-n)]".into())
}

fn unit_divisibility() -> Check {
    let x = m_oo_unit_divisibility(2, 3)
        .map_err(|e| e.to_string())?
        .ok_or("no x with 6x = [1]")?;
    let unit = unital_free_product_k(&atom(Atom::MatrixOinf(2)), &atom(Atom::MatrixOinf(3)))
        .unit
        .expect("unital");
    ensure(x.scale(6) == unit, || format!("6 * {x} != [1]"))?;
    let none = m_oo_unit_divisibility(2, 4).map_err(|e| e.to_string())?;
    ensure(none.is_none(), || "8x = [1] unexpectedly solvable".into())?;
    Ok(format!("6 * {x} = [1] for (2,3); no solution for (2,4)"))
}

fn scaled_section() -> Check {
    let w = ex4_no_scaled_section();
    ensure(w.clause == Clause::NoSection0 && w.verify(), || {
        format!("got {}", w.clause)
    })?;
    let p = free_product_k(&atom(Atom::ComplexPower(2)), &atom(Atom::ComplexPower(2)));
    ensure(p.k0 == FgAbGroup::free(4), || {
        format!("K0 of the free product is {}", p.k0)
    })?;
    Ok(format!("NoSection0: {}", w.explanation))
}

fn cuntz_gcd() -> Check {
    for m in 2u64..=12 {
        for n in 2u64..=12 {
            let v = classify(&atom(Atom::Cuntz(m)), &atom(Atom::Cuntz(n)));
            let coprime = (m - 1).gcd(&(n - 1)) == 1;
            ensure((v.outcome == Outcome::PossibleCaseII) == coprime, || {
                format!("O_{m}, O_{n}: {}", v.outcome)
            })?;
        }
    }
    Ok("PossibleCaseII exactly when gcd(m-1, n-1) = 1, 2 <= m, n <= 12".into())
}

fn matrix_oinf_pairs() -> Check {
    for m in 2u64..=8 {
        for n in 2u64..=8 {
            let v = classify(&atom(Atom::MatrixOinf(m)), &atom(Atom::MatrixOinf(n)));
            let coprime = m.gcd(&n) == 1;
            let ok = if coprime {
                v.outcome == Outcome::PossibleCaseIII
            } else {
                v.outcome == Outcome::Obstructed
            };
            ensure(ok, || format!("M_{m}(Oinf), M_{n}(Oinf): {}", v.outcome))?;
        }
    }
    Ok("PossibleCaseIII exactly when gcd(m, n) = 1, 2 <= m, n <= 8".into())
}

fn circle() -> Check {
    let ct = atom(Atom::CircleFunctions);
    let v = classify(&ct, &ct);
    ensure(v.clause() == Some(Clause::K1TensorNonzero), || {
        format!("got {:?}", v.clause())
    })?;
    Ok("Obstructed / K1TensorNonzero".into())
}

fn kunneth_absorption() -> Check {
    let o2 = atom(Atom::Cuntz(2));
    let p = kunneth(&o2, &o2);
    ensure(p.k0.is_trivial() && p.k1.is_trivial(), || {
        "O_2 (x) O_2 is not (0,0,0)".into()
    })?;
    let oinf = atom(Atom::CuntzInf);
    for e in catalog() {
        let x = e.invariant();
        ensure(tensor_invariant(&oinf, &x) == x, || {
            format!("Oinf (x) {} differs", e.name())
        })?;
    }
    Ok("O_2 (x) O_2 = (0,0,0); Oinf (x) X = X on the catalog".into())
}

fn unital_c2() -> Check {
    let c2 = atom(Atom::ComplexPower(2));
    let p = unital_free_product_k(&c2, &c2);
    ensure(p.k0 == FgAbGroup::free(3), || format!("K0 is {}", p.k0))?;
    let pi = section_exists_k(&c2, &c2, Mode::Full);
    ensure(pi.pi0.target() == &FgAbGroup::free(4), || {
        "K0 of the tensor product".into()
    })?;
    ensure(!GroupHom::is_surjective(&pi.pi0), || {
        "pi0 on Z^4 is onto".into()
    })?;
    Ok("K0 = Z^3 (unital), Z^4 (free); pi0 not onto".into())
}

const ITEMS: &[Item] = &[
    Item {
        id: "c2-c2",
        title: "C^2 against itself",
        run: c2_c2,
    },
    Item {
        id: "mn-mn",
        title: "M_n against itself",
        run: mn_mn,
    },
    Item {
        id: "m2-m3",
        title: "M_2 against M_3",
        run: m2_m3,
    },
    Item {
        id: "moo",
        title: "unit divisibility for M_m(Oinf) *_C M_n(Oinf)",
        run: unit_divisibility,
    },
    Item {
        id: "ex4",
        title: "scaled sections for C^2 * C^2",
        run: scaled_section,
    },
    Item {
        id: "cuntz-gcd",
        title: "O_m against O_n",
        run: cuntz_gcd,
    },
    Item {
        id: "moo-gcd",
        title: "M_m(Oinf) against M_n(Oinf)",
        run: matrix_oinf_pairs,
    },
    Item {
        id: "ct-ct",
        title: "C(T) against itself",
        run: circle,
    },
    Item {
        id: "kunneth",
        title: "tensor absorption",
        run: kunneth_absorption,
    },
    Item {
        id: "c2-unital",
        title: "C^2 *_C C^2",
        run: unital_c2,
    },
];

pub fn run(only: Option<&str>) -> Output {
    let selected: Vec<&Item> = ITEMS
        .iter()
        .filter(|i| only.is_none_or(|id| i.id == id))
        .collect();
    if selected.is_empty() {
        let ids: Vec<&str> = ITEMS.iter().map(|i| i.id).collect();
        let msg = format!(
            "unknown example id {:?}; known ids: {}",
            only.unwrap_or(""),
            ids.join(", ")
        );
        return Output::new(
            json!({ "command": "paper-examples", "error": msg }),
            vec![format!("error: {msg}")],
            EXIT_ERROR,
        );
    }
    let results = sweep::map(Strategy::Parallel, &selected, |i| (i.run)());
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for (item, r) in selected.iter().zip(&results) {
        let (passed, detail) = match r {
            Ok(d) => (true, d.clone()),
            Err(d) => (false, d.clone()),
        };
        text.push(format!(
            "{} {:<10} {}: {detail}",
            if passed { "PASS" } else { "FAIL" },
            item.id,
            item.title
        ));
        rows.push(
            json!({ "id": item.id, "title": item.title, "passed": passed, "detail": detail }),
        );
    }
    let all = results.iter().all(Result::is_ok);
    let json: Value = json!({ "command": "paper-examples", "results": rows, "passed": all });
    Output::new(json, text, if all { EXIT_OK } else { EXIT_OBSTRUCTED })
}
