//! Acceptance criteria, one PASS/FAIL line each. Every comparison is exact.

use std::process::{Command, Output};
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kobstruct::catalog::{builtin, catalog, Atom};
use kobstruct::fgab::{
    quotient_by, right_inverse_exists, smith_normal_form, FgAbGroup, GroupHom, IntMatrix,
};
use kobstruct::kinv::{
    kunneth, pi_star, tensor_invariant, unital_free_product_k, unital_k0_quotient, KInvariant,
};
use kobstruct::obstruct::{
    case_ii_k_check, classify, ex4_no_scaled_section, iso_remark_check, m_oo_unit_divisibility,
    section_exists_k, Clause, Detail, Mode, Outcome,
};

type Check = Result<String, Vec<String>>;

fn fail<T>(msg: impl Into<String>) -> Result<T, Vec<String>> {
    Err(vec![msg.into()])
}

fn atom(a: Atom) -> KInvariant {
    builtin(a).unwrap()
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn to_i64(x: &BigInt) -> i64 {
    i64::try_from(x).expect("small entry")
}

fn c1a() -> Check {
    let c2 = atom(Atom::ComplexPower(2));
    match classify(&c2, &c2).clause() {
        Some(Clause::RankInequality) => Ok("classify(C^2, C^2) = Obstructed/RankInequality".into()),
        other => fail(format!("got {other:?}")),
    }
}

fn c1b() -> Check {
    for n in [2, 3, 4, 6] {
        let m = atom(Atom::Matrix(n));
        let v = classify(&m, &m);
        let Some(w) = v.witness else {
            return fail(format!("M_{n}: {}", v.outcome));
        };
        if w.clause != Clause::Pi0NotSurjective {
            return fail(format!("M_{n}: clause {}", w.clause));
        }
        let Detail::Map { map, cokernel, .. } = &w.detail else {
            return fail("witness carries no map");
        };
        // Z + Z_n -> Z with the free generator sent to ±n and the torsion to 0
        let row = map.matrix().row(0);
        let is_mult = map.source() == &FgAbGroup::new(1, &[n])
            && map.target() == &FgAbGroup::free(1)
            && (row[0] == big(n as i64) || row[0] == big(-(n as i64)))
            && row[1] == big(0);
        if !is_mult || cokernel != &FgAbGroup::cyclic(n) {
            return fail(format!("M_{n}: pi0 = {map}, cokernel {cokernel}"));
        }
    }
    Ok("classify(M_n, M_n) = Obstructed/Pi0NotSurjective, pi0 = multiplication by n, n in {2,3,4,6}".into())
}

fn c1c() -> Check {
    let (a, b) = (atom(Atom::Matrix(2)), atom(Atom::Matrix(3)));
    let v = classify(&a, &b);
    if v.outcome != Outcome::PossibleCaseIII {
        return fail(format!("outcome {}", v.outcome));
    }
    let s = section_exists_k(&a, &b, Mode::Unital);
    let Some(sec) = s.deg0 else {
        return fail("solver found no degree-0 section");
    };
    let q = unital_k0_quotient(&a, &b);
    for n in [-3i64, 1, 5] {
        let t = sec.source().element(&[n]).unwrap();
        let want = q
            .proj
            .apply(&q.proj.source().element(&[n, -n]).unwrap())
            .unwrap();
        if sec.apply(&t).unwrap() != want {
            return fail(format!("section sends {n} to {}", sec.apply(&t).unwrap()));
        }
    }
    Ok("classify(M_2, M_3) = PossibleCaseIII, solver section n -> [(n,-n)]".into())
}

fn c1d() -> Check {
    let x = m_oo_unit_divisibility(2, 3).unwrap();
    let unit = unital_free_product_k(&atom(Atom::MatrixOinf(2)), &atom(Atom::MatrixOinf(3)))
        .unit
        .unwrap();
    match x {
        Some(x) if x.scale(6) == unit => {}
        other => return fail(format!("(2,3): {other:?}")),
    }
    if let Some(x) = m_oo_unit_divisibility(2, 4).unwrap() {
        return fail(format!("(2,4) returned {x}"));
    }
    Ok("m_oo_unit_divisibility: (2,3) gives 6x = [1], (2,4) gives none".into())
}

fn c1e() -> Check {
    let w = ex4_no_scaled_section();
    if w.clause != Clause::NoSection0 || !w.verify() {
        return fail(format!("clause {}", w.clause));
    }
    Ok("ex4_no_scaled_section = NoSection0".into())
}

fn c1f() -> Check {
    let mut bad = Vec::new();
    for m in 2u64..=12 {
        for n in 2u64..=12 {
            let v = classify(&atom(Atom::Cuntz(m)), &atom(Atom::Cuntz(n)));
            let coprime = (m - 1).gcd(&(n - 1)) == 1;
            if (v.outcome == Outcome::PossibleCaseII) != coprime {
                bad.push(format!("O_{m}, O_{n}: {}", v.outcome));
            }
        }
    }
    if bad.is_empty() {
        Ok("classify(O_m, O_n) = PossibleCaseII iff gcd(m-1, n-1) = 1, 2 <= m,n <= 12".into())
    } else {
        Err(bad)
    }
}

fn c1g() -> Check {
    let ct = atom(Atom::CircleFunctions);
    match classify(&ct, &ct).clause() {
        Some(Clause::K1TensorNonzero) => {
            Ok("classify(C(T), C(T)) = Obstructed/K1TensorNonzero".into())
        }
        other => fail(format!("got {other:?}")),
    }
}

fn c1h() -> Check {
    let o2 = atom(Atom::Cuntz(2));
    let p = kunneth(&o2, &o2);
    if !(p.k0.is_trivial() && p.k1.is_trivial() && p.unit.as_ref().unwrap().is_zero()) {
        return fail("L(O_2 (x) O_2) != (0,0,0)");
    }
    let oinf = atom(Atom::CuntzInf);
    let bad: Vec<String> = catalog()
        .iter()
        .filter(|e| tensor_invariant(&oinf, &e.invariant()) != e.invariant())
        .map(|e| e.name())
        .collect();
    if !bad.is_empty() {
        return Err(bad);
    }
    Ok(format!(
        "L(O_2 (x) O_2) = (0,0,0); L(Oinf (x) X) = L(X) for all {} catalog X",
        catalog().len()
    ))
}

/// Finite groups `Z_d1 + Z_d2`, `d1 | d2`, of order at most `max`.
fn small_groups(max: i64) -> Vec<FgAbGroup> {
    let mut out = Vec::new();
    for d1 in 1..=max {
        for d2 in (d1..=max / d1).filter(|d2| d2 % d1 == 0) {
            out.push(FgAbGroup::new(0, &[d1, d2]));
        }
    }
    out
}

fn c2(rng: &mut ChaCha8Rng) -> Check {
    let mut bad = Vec::new();
    let mut checked = 0;
    for a in catalog() {
        for b in catalog() {
            let (ka, kb) = (a.invariant(), b.invariant());
            let v = classify(&ka, &kb);
            if matches!(
                v.outcome,
                Outcome::PossibleCaseI | Outcome::PossibleCaseIII | Outcome::PossibleCaseIV
            ) {
                checked += 1;
                if !iso_remark_check(&ka, &kb).unwrap() {
                    let p = pi_star(&ka, &kb);
                    let desc = |h: &GroupHom| {
                        format!(
                            "{} -> {} (injective {}, surjective {})",
                            h.source(),
                            h.target(),
                            h.is_injective(),
                            h.is_surjective()
                        )
                    };
                    bad.push(format!(
                        "{} / {} ({}): pi0 {}; pi1 {}",
                        a.name(),
                        b.name(),
                        v.outcome,
                        desc(&p.pi0),
                        desc(&p.pi1)
                    ));
                }
            }
        }
    }

    let groups = small_groups(24);
    let order = |g: &FgAbGroup| to_i64(&g.order().unwrap());
    let pick = |rng: &mut ChaCha8Rng| groups[rng.gen_range(0..groups.len())].clone();
    let random_elem = |rng: &mut ChaCha8Rng, g: &FgAbGroup| {
        let c: Vec<i64> = g
            .moduli()
            .iter()
            .map(|d| rng.gen_range(0..to_i64(d)))
            .collect();
        g.element(&c).unwrap()
    };
    let mut trials = 0;
    while trials < 200 {
        let (g0, g1, h0, h1) = (pick(rng), pick(rng), pick(rng), pick(rng));
        if (order(&g0) * order(&g1)).gcd(&(order(&h0) * order(&h1))) != 1 {
            continue;
        }
        trials += 1;
        let (r, s) = (random_elem(rng, &g0), random_elem(rng, &h0));
        if !case_ii_k_check(&g0, &g1, &h0, &h1, &r, &s).unwrap() {
            bad.push(format!(
                "case ii display fails for G0={g0}, r={r}, H0={h0}, s={s}"
            ));
        }
        let a = KInvariant::new(g0.clone(), g1.clone(), r).unwrap();
        let b = KInvariant::new(h0.clone(), h1.clone(), s).unwrap();
        if classify(&a, &b).outcome != Outcome::PossibleCaseII {
            bad.push(format!("({a}, {b}) not classified as case ii"));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "iso_remark_check on {checked} catalog pairs in cases i/iii/iv; case_ii_k_check on 200 random inputs"
        ))
    } else {
        bad.insert(
            0,
            format!(
                "{} of {checked} catalog pairs in cases i/iii/iv have non-bijective induced maps:",
                bad.len()
            ),
        );
        Err(bad)
    }
}

// ---- criterion 3: independent oracles ----

/// Fraction-free elimination.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return big(1);
    }
    let mut a = m.to_vec();
    let mut negate = false;
    let mut prev = big(1);
    for k in 0..n - 1 {
        if a[k][k] == big(0) {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != big(0)) else {
                return big(0);
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k = D_k / D_{k−1}` with `D_k` the gcd of the k×k minors.
fn minors_diagonal(m: &[Vec<BigInt>], rows: usize, cols: usize) -> Vec<BigInt> {
    let k_max = rows.min(cols);
    let mut out = Vec::new();
    let mut prev = big(1);
    for k in 1..=k_max {
        let mut g = big(0);
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<BigInt>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == big(0) {
            out.resize(k_max, big(0));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn c3a(rng: &mut ChaCha8Rng) -> Check {
    let mut bad = Vec::new();
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect())
            .collect();
        let m = IntMatrix::from_rows(c, &rows);
        let snf = smith_normal_form(&m);
        let want = minors_diagonal(&m.to_rows(), r, c);
        let got = snf.diagonal();
        let uni = |x: &IntMatrix| det(&x.to_rows()).magnitude() == big(1).magnitude();
        let product = &(&snf.u * &m) * &snf.v;
        if got != want || !uni(&snf.u) || !uni(&snf.v) || product != snf.d {
            bad.push(format!("{rows:?}: snf {got:?}, minors {want:?}"));
        }
    }
    if bad.is_empty() {
        Ok("500 random matrices: SNF diagonal = gcd-of-minors sequence, U and V unimodular, UMV = D".into())
    } else {
        Err(bad)
    }
}

/// All tuples `0 <= x_i < m_i`.
fn tuples(m: &[i64]) -> Vec<Vec<i64>> {
    m.iter().fold(vec![vec![]], |acc, &d| {
        acc.into_iter()
            .flat_map(|t| {
                (0..d).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect()
    })
}

/// A right inverse exists iff each target generator `h_j` has a preimage
/// `g` with `e_j·g = 0`; checked over every element of the source.
fn brute_force_section(f: &GroupHom) -> bool {
    let dm: Vec<i64> = f.source().moduli().iter().map(to_i64).collect();
    let em: Vec<i64> = f.target().moduli().iter().map(to_i64).collect();
    let mat: Vec<Vec<i64>> = f
        .matrix()
        .to_rows()
        .iter()
        .map(|r| r.iter().map(to_i64).collect())
        .collect();
    let elems = tuples(&dm);
    (0..em.len()).all(|j| {
        elems.iter().any(|g| {
            let killed = g.iter().zip(&dm).all(|(x, d)| (em[j] * x) % d == 0);
            let hits = (0..em.len()).all(|k| {
                let y: i64 = mat[k].iter().zip(g).map(|(a, x)| a * x).sum();
                (y - i64::from(k == j)).rem_euclid(em[k]) == 0
            });
            killed && hits
        })
    })
}

fn c3b(rng: &mut ChaCha8Rng) -> Check {
    let groups = small_groups(64);
    let mut maps = Vec::new();
    for g in &groups {
        let dm: Vec<i64> = g.moduli().iter().map(to_i64).collect();
        for x in tuples(&dm) {
            maps.push(quotient_by(g, &g.element(&x).unwrap()).unwrap().proj);
        }
        let exp = to_i64(&g.torsion_exponent());
        for k in 0..=exp {
            maps.push(GroupHom::scalar(g, k));
        }
    }
    for m in 1..=64i64 {
        for n in 1..=64i64 {
            let step = n / m.gcd(&n);
            for k in (0..n).step_by(step as usize) {
                let (s, t) = (FgAbGroup::cyclic(m), FgAbGroup::cyclic(n));
                let mat = IntMatrix::from_rows(s.ngens(), &vec![vec![k; s.ngens()]; t.ngens()]);
                maps.push(GroupHom::new(s, t, mat).unwrap());
            }
        }
    }
    let small: Vec<&FgAbGroup> = groups
        .iter()
        .filter(|g| to_i64(&g.order().unwrap()) <= 32)
        .collect();
    let mut random = 0;
    while random < 3000 {
        let s = small[rng.gen_range(0..small.len())];
        let t = small[rng.gen_range(0..small.len())];
        let rows: Vec<Vec<i64>> = t
            .moduli()
            .iter()
            .map(|e| {
                (0..s.ngens())
                    .map(|_| rng.gen_range(0..to_i64(e)))
                    .collect()
            })
            .collect();
        if let Ok(f) = GroupHom::new(s.clone(), t.clone(), IntMatrix::from_rows(s.ngens(), &rows)) {
            maps.push(f);
            random += 1;
        }
    }
    let mut bad = Vec::new();
    for f in &maps {
        let solver = right_inverse_exists(f);
        if let Some(s) = &solver {
            if s.then(f).unwrap() != GroupHom::identity(f.target()) {
                bad.push(format!("{f}: returned section is not a right inverse"));
            }
        }
        let exhaustive = brute_force_section(f);
        if solver.is_some() != exhaustive {
            bad.push(format!(
                "{f}: solver {}, exhaustive {exhaustive}",
                solver.is_some()
            ));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "{} groups of order <= 64 with <= 2 generators, {} maps: right_inverse_exists = exhaustive search",
            groups.len(),
            maps.len()
        ))
    } else {
        Err(bad)
    }
}

fn c4() -> Check {
    let mut bad = Vec::new();
    let mut tally = std::collections::BTreeMap::new();
    for a in catalog() {
        for b in catalog() {
            let (ka, kb) = (a.invariant(), b.invariant());
            let v = classify(&ka, &kb);
            *tally.entry(v.outcome.to_string()).or_insert(0) += 1;
            for mode in [Mode::Unital, Mode::Full] {
                let s = section_exists_k(&ka, &kb, mode);
                let ok = if v.outcome.is_possible() {
                    s.both() && s.extra_z_ok
                } else {
                    match v.clause().and_then(Clause::degree) {
                        Some(0) => s.deg0.is_none(),
                        Some(_) => s.deg1.is_none(),
                        None => true,
                    }
                };
                if !ok {
                    bad.push(format!(
                        "{} / {} {mode:?}: {} but sections {:?}",
                        a.name(),
                        b.name(),
                        v.outcome,
                        (s.deg0.is_some(), s.deg1.is_some(), s.extra_z_ok)
                    ));
                }
            }
        }
    }
    if bad.is_empty() {
        let n = catalog().len();
        Ok(format!(
            "{}x{n} catalog pairs, unital and full modes agree with classify; outcomes {tally:?}",
            n
        ))
    } else {
        Err(bad)
    }
}

// ---- criterion 5: the binary ----

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kobstruct"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn c5() -> Check {
    let matrix: &[(&[&str], u8)] = &[
        (&["kgroups", "C^2 (*) C^2"], 0),
        (&["kgroups", "O_3 (x) O_3", "--format", "json"], 0),
        (&["kgroups", "M_2"], 0),
        (&["kgroups", "M_2 (x"], 2),
        (&["kgroups", "CAR"], 3),
        (&["classify", "M_2", "M_3", "--mode", "unital"], 0),
        (&["classify", "O_2", "O_5", "--format", "json"], 0),
        (&["classify", "O_4", "O_7"], 1),
        (&["classify", "C(T)", "C(T)"], 1),
        (&["classify", "C^2", "C^2", "--mode", "full"], 1),
        (&["classify", "O_4", "M_2"], 4),
        (&["classify", "O_1", "M_2"], 2),
        (&["classify", "C (*) C", "M_2"], 2),
        (&["classify", "M_2^inf", "C"], 3),
        (&["section", "M_2", "M_3"], 0),
        (&["section", "M_3", "M_3", "--mode", "full"], 1),
        (&["paper-examples"], 0),
        (&["paper-examples", "--only", "ex4", "--format", "json"], 0),
        (&["paper-examples", "--only", "nope"], 2),
    ];
    let mut bad = Vec::new();
    for (args, code) in matrix {
        let first = run(args);
        let second = run(args);
        if first.status.code() != Some(i32::from(*code)) {
            bad.push(format!(
                "{args:?}: exit {:?}, expected {code}",
                first.status.code()
            ));
        }
        if first.stdout != second.stdout || first.stderr != second.stderr {
            bad.push(format!("{args:?}: output differs between runs"));
        }
    }
    let json = run(&[
        "classify", "M_2", "M_3", "--format", "json", "--mode", "unital",
    ]);
    let text = String::from_utf8(json.stdout).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap_or_default();
    if v["verdict"]["outcome"] != "PossibleCaseIII" || v["verdict"]["case"] != "iii" {
        bad.push(format!("unexpected classify JSON: {text}"));
    }
    if bad.is_empty() {
        Ok(format!(
            "{} CLI invocations: exit codes as specified, byte-identical reruns",
            matrix.len()
        ))
    } else {
        Err(bad)
    }
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b6f_6273);
    let start = Instant::now();
    let results: Vec<(&str, Check)> = vec![
        ("1a", c1a()),
        ("1b", c1b()),
        ("1c", c1c()),
        ("1d", c1d()),
        ("1e", c1e()),
        ("1f", c1f()),
        ("1g", c1g()),
        ("1h", c1h()),
        ("2", c2(&mut rng)),
        ("3a", c3a(&mut rng)),
        ("3b", c3b(&mut rng)),
        ("4", c4()),
        ("5", c5()),
    ];
    let mut failed = 0;
    for (id, r) in &results {
        match r {
            Ok(msg) => println!("PASS {id:<3} [exact] {msg}"),
            Err(lines) => {
                failed += 1;
                println!("FAIL {id:<3} [exact] {}", lines[0]);
                for l in &lines[1..] {
                    println!("         {l}");
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
