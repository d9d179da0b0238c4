use std::io::Write;
use std::time::Duration;

use serde_json::{json, Value};

use kobstruct::catalog::{self, Evaluated};
use kobstruct::fgab::GroupHom;
use kobstruct::kinv::{unital_k0_quotient, KInvariant, KPair};
use kobstruct::obstruct::{self, KSections, Mode, Outcome, Verdict};
use kobstruct::Error;

use crate::Format;

pub const EXIT_OK: u8 = 0;
pub const EXIT_OBSTRUCTED: u8 = 1;
pub const EXIT_ERROR: u8 = 2;
pub const EXIT_NON_FG: u8 = 3;
pub const EXIT_NOT_APPLICABLE: u8 = 4;

pub struct Output {
    pub json: Value,
    pub text: Vec<String>,
    pub exit: u8,
    error: bool,
}

impl Output {
    pub fn new(json: Value, text: Vec<String>, exit: u8) -> Self {
        Output {
            json,
            text,
            exit,
            error: false,
        }
    }

    fn error(command: &str, e: &Error) -> Self {
        let exit = match e {
            Error::NonFinitelyGenerated(_) => EXIT_NON_FG,
            _ => EXIT_ERROR,
        };
        Output {
            json: json!({ "command": command, "error": e.to_string() }),
            text: vec![format!("error: {e}")],
            exit,
            error: true,
        }
    }

    pub fn set_timing(&mut self, d: Duration) {
        if let Value::Object(m) = &mut self.json {
            m.insert("timing_ms".into(), json!(d.as_secs_f64() * 1e3));
        }
        self.text
            .push(format!("time: {:.3} ms", d.as_secs_f64() * 1e3));
    }

    /// Write errors, such as a closed pipe, are ignored; the exit code still reports the result.
    pub fn print(&self, format: Format) {
        let body = match format {
            Format::Json => serde_json::to_string_pretty(&self.json).expect("values serialize"),
            Format::Text => self.text.join("\n"),
        };
        let _ = if format == Format::Text && self.error {
            writeln!(std::io::stderr().lock(), "{body}")
        } else {
            writeln!(std::io::stdout().lock(), "{body}")
        };
    }
}

fn to_json<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn pair_text(p: &KPair) -> Vec<String> {
    let mut t = vec![
        format!("k0: {}", p.k0),
        format!("k1: {}", p.k1),
        format!(
            "unit: {}",
            p.unit.as_ref().map_or("none".into(), |u| u.to_string())
        ),
        format!("extra_z: {}", p.extra_z),
        "summands:".into(),
    ];
    for s in &p.summands {
        let flag = if s.indeterminate {
            " (indeterminate)"
        } else {
            ""
        };
        t.push(format!(
            "  {} -> k{}: {} {}{flag}",
            s.label,
            s.degree,
            s.map.source(),
            s.map.matrix()
        ));
    }
    t
}

pub fn kgroups(expr: &str) -> Output {
    let value = match catalog::evaluate(expr) {
        Ok(v) => v,
        Err(e) => return Output::error("kgroups", &e),
    };
    let mut text = vec![format!("expression: {expr}")];
    match &value {
        Evaluated::Invariant(k) => {
            text.push(format!("k0: {}", k.k0()));
            text.push(format!("k1: {}", k.k1()));
            text.push(format!("unit: {}", k.unit()));
        }
        Evaluated::Pair(p) => text.extend(pair_text(p)),
    }
    let kind = match value {
        Evaluated::Invariant(_) => "invariant",
        Evaluated::Pair(_) => "pair",
    };
    let json = json!({
        "command": "kgroups",
        "query": { "expr": expr },
        "kind": kind,
        "groups": to_json(&value),
    });
    Output::new(json, text, EXIT_OK)
}

fn operands(command: &str, a: &str, b: &str) -> Result<(KInvariant, KInvariant), Output> {
    let ka = catalog::evaluate_invariant(a).map_err(|e| Output::error(command, &e))?;
    let kb = catalog::evaluate_invariant(b).map_err(|e| Output::error(command, &e))?;
    Ok((ka, kb))
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or("-".into(), T::to_string)
}

fn verdict_text(v: &Verdict) -> Vec<String> {
    let mut t = vec![format!("outcome: {}", v.outcome)];
    if let Some(p) = &v.parameters {
        t.push(format!(
            "parameters: role_a={:?} u={} w={} b={} G0={} G1={} H0={} H1={}",
            p.role_a,
            opt(&p.u),
            opt(&p.w),
            opt(&p.b),
            p.g0,
            p.g1,
            p.h0,
            p.h1
        ));
    }
    if let Some(w) = &v.witness {
        t.push(format!("witness: {}", w.clause));
        t.push(format!("  {}", w.explanation));
    }
    if let Some(r) = &v.reason {
        t.push(format!("reason: {r}"));
    }
    t
}

fn hom_text(h: &GroupHom) -> String {
    format!("{} -> {} : {}", h.source(), h.target(), h.matrix())
}

/// Images of the degree-0 section, lifted to `K₀(A) ⊕ K₀(B)` coordinates.
fn section_lifts(a: &KInvariant, b: &KInvariant, s: &KSections) -> Option<Vec<Value>> {
    let sec = s.deg0.as_ref()?;
    if s.mode != Mode::Unital {
        return None;
    }
    let q = unital_k0_quotient(a, b);
    let lifts = sec
        .source()
        .generators()
        .map(|t| {
            let y = sec.apply(&t).expect("generator of the source");
            let x = q.lift_element(&y).expect("element of the quotient");
            to_json(&kobstruct::fgab::bigint_json::Row(x.coords()))
        })
        .collect();
    Some(lifts)
}

fn sections_report(a: &KInvariant, b: &KInvariant, s: &KSections) -> (Value, Vec<String>) {
    let caveat = s.caveat(a, b);
    let lifts = section_lifts(a, b, s);
    let mut text = vec![
        format!(
            "sections ({}):",
            if s.mode == Mode::Unital {
                "unital"
            } else {
                "full"
            }
        ),
        format!("  pi0: {}", hom_text(&s.pi0)),
        format!("  pi1: {}", hom_text(&s.pi1)),
        format!(
            "  deg0: {}",
            s.deg0.as_ref().map_or("none".into(), hom_text)
        ),
        format!(
            "  deg1: {}",
            s.deg1.as_ref().map_or("none".into(), hom_text)
        ),
        format!("  extra_z_ok: {}", s.extra_z_ok),
    ];
    if let Some(l) = &lifts {
        let rows: Vec<String> = l.iter().map(Value::to_string).collect();
        let rows = if rows.is_empty() {
            "-".into()
        } else {
            rows.join(" ")
        };
        text.push(format!("  deg0 lifted to K0(A)+K0(B): {rows}"));
    }
    if let Some(c) = &caveat {
        text.push(format!("  caveat: {} ({})", c.clause, c.explanation));
    }
    let mut json = to_json(s);
    if let Value::Object(m) = &mut json {
        m.insert("caveat".into(), to_json(&caveat));
        m.insert("deg0_lifts".into(), to_json(&lifts));
    }
    (json, text)
}

pub fn classify(a: &str, b: &str, mode: Option<Mode>) -> Output {
    let (ka, kb) = match operands("classify", a, b) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let v = obstruct::classify(&ka, &kb);
    let mut text = vec![format!("A: {a} = {ka}"), format!("B: {b} = {kb}")];
    text.extend(verdict_text(&v));
    let mut json = json!({
        "command": "classify",
        "query": { "a": a, "b": b, "mode": mode },
        "invariants": { "a": to_json(&ka), "b": to_json(&kb) },
        "verdict": to_json(&v),
        "sections": Value::Null,
    });
    if let Some(mode) = mode {
        let s = obstruct::section_exists_k(&ka, &kb, mode);
        let (sj, st) = sections_report(&ka, &kb, &s);
        json["sections"] = sj;
        text.extend(st);
    }
    let exit = match v.outcome {
        Outcome::Obstructed => EXIT_OBSTRUCTED,
        Outcome::NotApplicable => EXIT_NOT_APPLICABLE,
        _ => EXIT_OK,
    };
    Output::new(json, text, exit)
}

pub fn section(a: &str, b: &str, mode: Mode) -> Output {
    let (ka, kb) = match operands("section", a, b) {
        Ok(x) => x,
        Err(o) => return o,
    };
    let s = obstruct::section_exists_k(&ka, &kb, mode);
    let (sj, st) = sections_report(&ka, &kb, &s);
    let mut text = vec![format!("A: {a} = {ka}"), format!("B: {b} = {kb}")];
    text.extend(st);
    let json = json!({
        "command": "section",
        "query": { "a": a, "b": b, "mode": mode },
        "invariants": { "a": to_json(&ka), "b": to_json(&kb) },
        "sections": sj,
    });
    let exit = if s.both() { EXIT_OK } else { EXIT_OBSTRUCTED };
    Output::new(json, text, exit)
}
