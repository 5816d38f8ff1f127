//! The problem language, its pretty-printer, and JSON and text reports.

use dglift::cli_format::{emit_report, parse_problem, run_command, Command, CommandOptions, Format, ReportDocument};
use dglift::Result;

pub fn run_example() -> Result<()> {
    let p = parse_problem(include_str!("../data/nonliftable.dga"))?;
    let printed = p.to_string();
    print!("{printed}");
    assert_eq!(parse_problem(&printed)?, p);

    let opts = CommandOptions {
        witness: true,
        ..Default::default()
    };
    let mut doc = run_command(Command::CheckLift, Some(&p), &opts)?;
    doc.timing_ms = 0;
    let json = emit_report(&doc, Format::Json);
    let back: ReportDocument = serde_json::from_str(&json).expect("reports round-trip");
    assert_eq!(back, doc);
    println!("{}", &json[..json.len().min(200)]);
    print!("{}", emit_report(&doc, Format::Text));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
