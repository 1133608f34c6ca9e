//! Certificates are plain JSON checked by a small independent verifier;
//! any tampering is caught.

use quatsplit::job::{run, Command, JobSpec};
use quatsplit::verify::verify_json;
use serde_json::json;

fn main() -> quatsplit::Result<()> {
    let mut spec = JobSpec::new(Command::SplitQuaternion);
    spec.preset = Some("quintic".into());
    spec.seed = 9;
    let cert = run(&spec)?.records.remove(0);
    let keys: Vec<&String> = cert.as_object().unwrap().keys().collect();
    println!("certificate fields: {keys:?}");
    println!("tower levels: {}", cert["tower"].as_array().unwrap().len());
    println!("original: {:?}", verify_json(&cert)?);

    let mut bad = cert.clone();
    bad["witness"][0] = json!("12345/1");
    println!("witness altered: {:?}", verify_json(&bad)?);

    let mut bad = cert.clone();
    bad["claimed_bound"] = json!(1);
    println!("bound understated: {:?}", verify_json(&bad)?);

    let mut bad = cert;
    bad["quaternion"]["v"] = json!("1/1");
    println!("algebra swapped: {:?}", verify_json(&bad)?);
    Ok(())
}
