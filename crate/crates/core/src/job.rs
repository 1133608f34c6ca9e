//! Batch jobs and named presets behind the command-line tool.

use serde_json::{json, Value};

use crate::algebra::Algebra;
use crate::corestriction::{
    base_change_embedding_check, central_simple_check, corestriction, is_proper_idempotent,
    split_idempotent_witness,
};
use crate::cyclic::CyclicExtension;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_symbol_q, norm_zero_search, Splitting};
use crate::isotropy::{isotropy_2ext, system_from_json};
use crate::quadform::{QFSystem, QuadraticForm};
use crate::quaternion::QuaternionAlgebra;
use crate::rational::q;
use crate::serial;
use crate::slot::quadratic_slot_split;
use crate::split::{split_input_from_json, split_over_2ext, KChain};
use crate::tower::{Elem, Tower};
use crate::{random, verify};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Isotropy,
    SplitQuaternion,
    Corestrict,
    Verify,
    Demo,
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    /// Input records; when empty, inputs come from `preset`, `seed` and
    /// `count`.
    pub inputs: Vec<Value>,
    pub seed: u64,
    pub count: usize,
    pub preset: Option<String>,
}

impl JobSpec {
    pub fn new(command: Command) -> JobSpec {
        JobSpec {
            command,
            inputs: Vec::new(),
            seed: 0,
            count: 1,
            preset: None,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct JobOutput {
    pub records: Vec<Value>,
    /// Records whose certificate or self-check did not pass.
    pub failures: usize,
}

impl JobOutput {
    pub fn exit_code(&self) -> i32 {
        if self.failures > 0 {
            1
        } else {
            0
        }
    }

    fn push(&mut self, record: Value, passed: bool) {
        if !passed {
            self.failures += 1;
        }
        self.records.push(record);
    }
}

/// One JSON document, a JSON list of records, or one record per line.
pub fn parse_records(text: &str) -> Result<Vec<Value>> {
    match serde_json::from_str::<Value>(text) {
        Ok(Value::Array(items)) => Ok(items),
        Ok(v) => Ok(vec![v]),
        Err(_) => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(Error::from))
            .collect(),
    }
}

pub const DEMOS: &[&str] = &[
    "isotropy-r1",
    "isotropy-r2",
    "isotropy-r3",
    "split-cubic",
    "split-quintic",
    "split-septic",
    "cor-m2-sqrt2",
    "cor-m2-cubic",
    "cor-quat-cubic",
    "base-change",
    "hilbert",
    "slot",
];

pub fn run(spec: &JobSpec) -> Result<JobOutput> {
    match spec.command {
        Command::Isotropy => run_isotropy(spec),
        Command::SplitQuaternion => run_split(spec),
        Command::Corestrict => run_corestrict(spec),
        Command::Verify => run_verify(spec),
        Command::Demo => run_demo(spec),
    }
}

fn run_isotropy(spec: &JobSpec) -> Result<JobOutput> {
    let systems: Vec<(Tower, QFSystem)> = if spec.inputs.is_empty() {
        let r = match spec.preset.as_deref().unwrap_or("r2") {
            "r1" => 1,
            "r2" => 2,
            "r3" => 3,
            other => return Err(Error::Parse(format!("unknown isotropy preset {other:?}"))),
        };
        let mut rng = random::rng(spec.seed);
        (0..spec.count)
            .map(|_| (Tower::rationals(), random::int_system(&mut rng, r, 9)))
            .collect()
    } else {
        spec.inputs.iter().map(system_from_json).collect::<Result<_>>()?
    };
    let mut out = JobOutput::default();
    for (t, sys) in systems {
        let cert = isotropy_2ext(&t, &sys)?.to_json();
        let passed = verify::verify_json(&cert)?.passed;
        out.push(cert, passed);
    }
    Ok(out)
}

/// Splitting presets: the field and its chain.
fn split_field(name: &str) -> Result<(Tower, KChain)> {
    let one = |m: &[i64]| Tower::from_int_minpolys(&[m]);
    Ok(match name {
        "rationals" => (Tower::rationals(), KChain::default()),
        "cubic" => (one(&[-1, -2, 1, 1])?, KChain::default()),
        "quintic" => (one(&[-1, -1, 0, 0, 0, 1])?, KChain::default()),
        "septic" => (one(&[-1, -1, 0, 0, 0, 0, 0, 1])?, KChain::default()),
        "sqrt2" => (
            one(&[-2, 0, 1])?,
            KChain {
                base_levels: 0,
                two_part_levels: Some(1),
            },
        ),
        other => return Err(Error::Parse(format!("unknown split preset {other:?}"))),
    })
}

fn run_split(spec: &JobSpec) -> Result<JobOutput> {
    let inputs: Vec<(QuaternionAlgebra, KChain)> = if spec.inputs.is_empty() {
        let (t, chain) = split_field(spec.preset.as_deref().unwrap_or("cubic"))?;
        let mut rng = random::rng(spec.seed);
        (0..spec.count)
            .map(|_| (random::quaternion(&mut rng, &t, 5), chain))
            .collect()
    } else {
        spec.inputs
            .iter()
            .map(split_input_from_json)
            .collect::<Result<_>>()?
    };
    let mut out = JobOutput::default();
    for (q, chain) in inputs {
        let cert = split_over_2ext(&q, &chain)?.to_json();
        let passed = verify::verify_json(&cert)?.passed;
        out.push(cert, passed);
    }
    Ok(out)
}

/// A corestriction job: the algebra, its cyclic extension, and optionally
/// a field `L` for the base-change check.
struct CorJob {
    algebra: Algebra,
    cyclic: CyclicExtension,
    base_change: Option<Vec<Elem>>,
}

fn cor_preset(name: &str) -> Result<CorJob> {
    let quat = |c: &CyclicExtension, u: Elem, v: Elem| -> Result<Algebra> {
        Ok(Algebra::quaternion(&QuaternionAlgebra::standard(
            c.tower(),
            u,
            v,
        )?))
    };
    let (cyclic, algebra, base_change) = match name {
        "m2-sqrt2" | "m2-i" | "m2-cubic" => {
            let c = match name {
                "m2-sqrt2" => CyclicExtension::quadratic(2)?,
                "m2-i" => CyclicExtension::quadratic(-1)?,
                _ => CyclicExtension::cyclic_cubic()?,
            };
            let a = Algebra::matrix_units_2(c.tower());
            (c, a, None)
        }
        "quat-sqrt2" => {
            let c = CyclicExtension::quadratic(2)?;
            let a = quat(&c, -&c.tower().gen(1), Elem::int(-1))?;
            (c, a, None)
        }
        "quat-i" => {
            let c = CyclicExtension::quadratic(-1)?;
            let a = quat(&c, Elem::int(2), Elem::int(5))?;
            (c, a, None)
        }
        "quat-cubic" => {
            let c = CyclicExtension::cyclic_cubic()?;
            let a = quat(&c, Elem::int(-1), c.tower().gen(1))?;
            (c, a, None)
        }
        "base-change" => {
            let c = CyclicExtension::quadratic(2)?;
            let a = quat(&c, Elem::int(-1), c.tower().gen(1))?;
            (c, a, Some(vec![Elem::int(-3), Elem::zero(), Elem::one()]))
        }
        other => return Err(Error::Parse(format!("unknown corestriction preset {other:?}"))),
    };
    Ok(CorJob {
        algebra,
        cyclic,
        base_change,
    })
}

/// `{"cyclic": ..., "algebra": ..., "base_change": {"minpoly": [...]}}`.
/// The algebra is either a full structure-constant description,
/// `{"matrix_units": true}`, or a quaternion presentation over `K`.
fn cor_input(v: &Value) -> Result<CorJob> {
    let cyclic = CyclicExtension::from_json(serial::get(v, "cyclic")?)?;
    let a = serial::get(v, "algebra")?;
    let algebra = if a.get("matrix_units").and_then(Value::as_bool) == Some(true) {
        Algebra::matrix_units_2(cyclic.tower())
    } else if a.get("presentation").is_some() {
        Algebra::quaternion(&QuaternionAlgebra::presentation_from_json(cyclic.tower(), a)?)
    } else {
        let mut a = a.clone();
        if a.get("field").is_none() {
            a["field"] = serial::tower_to_json(cyclic.tower());
        }
        Algebra::from_json(&a)?
    };
    let base_change = match v.get("base_change") {
        Some(b) => Some(serial::vec_from_json(
            &Tower::rationals(),
            serial::get(b, "minpoly")?,
        )?),
        None => None,
    };
    Ok(CorJob {
        algebra,
        cyclic,
        base_change,
    })
}

fn run_cor_job(job: &CorJob, full: bool) -> Result<(Value, bool)> {
    let (cor, idempotent) = if job.algebra.is_matrix_units_2() {
        let (cor, e) = split_idempotent_witness(&job.algebra, &job.cyclic)?;
        (cor, Some(e))
    } else {
        (corestriction(&job.algebra, &job.cyclic)?, None)
    };
    let csa = central_simple_check(&cor.algebra)?;
    let mut passed = csa.is_central_simple();
    let f = &cor.field;
    let mut record = json!({
        "field": serial::tower_to_json(job.cyclic.tower()),
        "degree": job.cyclic.order(),
        "source_dimension": job.algebra.dim(),
        "dimension": cor.dim(),
        "center_dimension": csa.center_dim,
        "trace_form_rank": csa.trace_form_rank,
        "central_simple": csa.is_central_simple(),
    });
    if let Some(e) = &idempotent {
        let ok = is_proper_idempotent(&cor.algebra, e);
        passed &= ok;
        record["idempotent"] = serial::vec_to_json(f, e, f.height());
        record["idempotent_verified"] = json!(ok);
    }
    if let Some(m) = &job.base_change {
        let rep = base_change_embedding_check(&job.algebra, &job.cyclic, m)?;
        passed &= rep.passed();
        record["base_change"] = json!({
            "minpoly": serial::vec_to_json(&Tower::rationals(), m, 0),
            "dimension": rep.dim,
            "rank": rep.rank,
            "multiplicative": rep.multiplicative,
            "unital": rep.unital,
            "isomorphism": rep.passed(),
        });
    }
    if full {
        record["corestriction"] = cor.to_json();
    }
    Ok((record, passed))
}

fn run_corestrict(spec: &JobSpec) -> Result<JobOutput> {
    let jobs: Vec<CorJob> = if spec.inputs.is_empty() {
        vec![cor_preset(spec.preset.as_deref().unwrap_or("m2-sqrt2"))?]
    } else {
        spec.inputs.iter().map(cor_input).collect::<Result<_>>()?
    };
    let mut out = JobOutput::default();
    for job in &jobs {
        let (record, passed) = run_cor_job(job, true)?;
        out.push(record, passed);
    }
    Ok(out)
}

fn run_verify(spec: &JobSpec) -> Result<JobOutput> {
    if spec.inputs.is_empty() {
        return Err(Error::Parse("verify needs certificates as input".into()));
    }
    let mut out = JobOutput::default();
    for cert in &spec.inputs {
        let rep = verify::verify_json(cert)?;
        let result = if rep.passed { "PASS" } else { "FAIL" };
        out.push(json!({"result": result, "detail": rep.detail}), rep.passed);
    }
    Ok(out)
}

fn run_demo(spec: &JobSpec) -> Result<JobOutput> {
    let names: Vec<&str> = match spec.preset.as_deref() {
        Some(p) => vec![p],
        None => DEMOS.to_vec(),
    };
    let mut out = JobOutput::default();
    for name in names {
        let (summary, passed) = demo(name)?;
        out.push(
            json!({"demo": name, "passed": passed, "summary": summary}),
            passed,
        );
    }
    Ok(out)
}

fn diag(v: &[i64]) -> Result<QuadraticForm> {
    QuadraticForm::diagonal(&v.iter().map(|&x| Elem::int(x)).collect::<Vec<_>>())
}

fn demo(name: &str) -> Result<(String, bool)> {
    let isotropy = |forms: Vec<QuadraticForm>| -> Result<(String, bool)> {
        let cert = isotropy_2ext(&Tower::rationals(), &QFSystem::new(forms)?)?;
        let rep = verify::verify_json(&cert.to_json())?;
        Ok((
            format!(
                "{} forms in {} variables: common zero over a degree-{} extension (bound {})",
                cert.system.len(),
                cert.system.dim(),
                cert.actual_degree,
                cert.claimed_bound
            ),
            rep.passed,
        ))
    };
    let split = |preset: &str, u: &dyn Fn(&Tower) -> Elem, v: &dyn Fn(&Tower) -> Elem| {
        let (t, chain) = split_field(preset)?;
        let q = QuaternionAlgebra::standard(&t, u(&t), v(&t))?;
        let cert = split_over_2ext(&q, &chain)?;
        let rep = verify::verify_json(&cert.to_json())?;
        Ok::<_, Error>((
            format!(
                "{preset} field, (u, v) = ({}, {}): split over an extension of degree {} (bound {})",
                u(&t),
                v(&t),
                cert.degree_over_f,
                cert.claimed_bound
            ),
            rep.passed,
        ))
    };
    let cor = |preset: &str| -> Result<(String, bool)> {
        let (rec, passed) = run_cor_job(&cor_preset(preset)?, false)?;
        let mut s = format!(
            "corestriction has dimension {}, center dimension {}, trace form rank {}",
            rec["dimension"], rec["center_dimension"], rec["trace_form_rank"]
        );
        if let Some(ok) = rec.get("idempotent_verified") {
            s.push_str(&format!("; E11 tensor power is a proper idempotent: {ok}"));
        }
        if let Some(b) = rec.get("base_change") {
            s.push_str(&format!(
                "; base change to Q(sqrt 3) has rank {} of {}, multiplicative: {}",
                b["rank"], b["dimension"], b["multiplicative"]
            ));
        }
        Ok((s, passed))
    };
    match name {
        "isotropy-r1" => isotropy(vec![diag(&[1, 1])?]),
        "isotropy-r2" => isotropy(vec![diag(&[1, 1, 1, 1])?, diag(&[1, 2, -3, 5])?]),
        "isotropy-r3" => isotropy(vec![
            diag(&[1, 1, 1, 1, 1, 1, 1])?,
            diag(&[1, -2, 3, -4, 5, -6, 7])?,
            QuadraticForm::from_int_gram(&[
                &[2, 1, 0, 0, 0, 0, 0],
                &[1, 0, 1, 0, 0, 0, 0],
                &[0, 1, 3, 0, 0, 0, 1],
                &[0, 0, 0, 1, 1, 0, 0],
                &[0, 0, 0, 1, -1, 0, 0],
                &[0, 0, 0, 0, 0, 5, 0],
                &[0, 0, 1, 0, 0, 0, 1],
            ])?,
        ]),
        "split-cubic" => split("cubic", &|_| Elem::int(-1), &|_| Elem::int(-1)),
        "split-quintic" => split("quintic", &|t| t.gen(1), &|_| Elem::int(-3)),
        "split-septic" => split("septic", &|t| &t.gen(1) + &Elem::int(2), &|t| {
            &t.square(&t.gen(1)) - &Elem::int(3)
        }),
        "cor-m2-sqrt2" => cor("m2-sqrt2"),
        "cor-m2-cubic" => cor("m2-cubic"),
        "cor-quat-cubic" => cor("quat-cubic"),
        "base-change" => cor("base-change"),
        "hilbert" => {
            let mut lines = Vec::new();
            let mut ok = true;
            for (u, v) in [(-1, -1), (2, 7), (2, 5), (-1, 5)] {
                let kind = hilbert_symbol_q(&q(u), &q(v));
                let zero = norm_zero_search(&q(u), &q(v));
                ok &= zero.is_some() == (kind == Splitting::Split);
                lines.push(match zero {
                    Some([x, y, z, _]) => format!("({u},{v}) split: {x}^2 = {u}*({y})^2 + {v}*({z})^2"),
                    None => format!("({u},{v}) division"),
                });
            }
            Ok((lines.join("; "), ok))
        }
        "slot" => {
            let g = vec![Elem::int(1), Elem::zero(), Elem::int(1)];
            let s = quadratic_slot_split(&Tower::rationals(), &g)?;
            let ok = s.witness.residual(&s.tower, &g).is_empty();
            Ok((
                format!(
                    "<1, X, X^2 + 1> isotropic over a degree-{} extension, uniformly in X",
                    s.degree()
                ),
                ok,
            ))
        }
        other => Err(Error::Parse(format!(
            "unknown demo {other:?}; known: {}",
            DEMOS.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records() {
        assert_eq!(parse_records("{\"a\":1}").unwrap().len(), 1);
        assert_eq!(parse_records("{\"a\":1}\n\n{\"a\":2}\n").unwrap().len(), 2);
        assert_eq!(parse_records("[{}, {}, {}]").unwrap().len(), 3);
        assert!(parse_records("{nope").is_err());
    }

    #[test]
    fn random_batches_verify() {
        let mut spec = JobSpec::new(Command::Isotropy);
        spec.preset = Some("r2".into());
        spec.count = 3;
        let out = run(&spec).unwrap();
        assert_eq!((out.records.len(), out.failures), (3, 0));
        let mut v = JobSpec::new(Command::Verify);
        v.inputs = out.records;
        assert_eq!(run(&v).unwrap().exit_code(), 0);
    }

    #[test]
    fn cheap_demos() {
        for name in ["isotropy-r1", "split-cubic", "cor-m2-sqrt2", "hilbert", "slot"] {
            let (_, ok) = demo(name).unwrap();
            assert!(ok, "{name}");
        }
        assert!(demo("nope").is_err());
    }

    #[test]
    fn corestriction_input() {
        let v = json!({
            "cyclic": {"preset": "sqrt-1"},
            "algebra": {"presentation": "standard", "u": "2/1", "v": "5/1"},
        });
        let mut spec = JobSpec::new(Command::Corestrict);
        spec.inputs = vec![v];
        let out = run(&spec).unwrap();
        assert_eq!(out.records[0]["dimension"], 16);
        assert_eq!(out.records[0]["central_simple"], true);
    }
}
