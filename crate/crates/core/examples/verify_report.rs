// Drives the command line in-process and reads back the JSON report.

use tsing::cli::run;

pub fn run_example() -> tsing::Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["tsing", "--json", "verify", "d-triples"], &mut out, &mut err);
    let text = String::from_utf8(out).expect("utf-8 output");
    for line in text.lines() {
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| tsing::Error::Parse(e.to_string()))?;
        if v["type"] == "record" {
            println!("{} K^2 = {} passed {}", v["d"], v["k2"], v["passed"]);
        } else {
            println!("{v}");
        }
    }
    println!("exit code {code}");

    let code = run(["tsing", "surface", "1", "1,1,2"], &mut std::io::stdout(), &mut std::io::stderr());
    println!("exit code {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> tsing::Result<()> {
    run_example()
}
