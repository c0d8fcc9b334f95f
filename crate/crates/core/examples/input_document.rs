//! Reading a TOML input document and running the report commands on it.
//!
//! Run with `cargo run --example input_document`.

use sgkit::commands::{run_command, Command};
use sgkit::document::{parse_input, serialize};

const DOC: &str = r#"
[[matrices]]
name = "presentation"
rows = [[2, 0], [0, 6]]

[[surfaces]]
name = "torus"
feet = ["a", "b", "a", "b"]
bands = [
    { label = "a", twists = -1 },
    { label = "b", twists = -1 },
]
crossings = [{ bands = ["a", "b"], count = 5 }]

[[curves]]
name = "K"
surface = "torus"
word = ["+a", "+b"]
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = parse_input(DOC)?;
    for command in [Command::Tb, Command::Snf] {
        let report = run_command(command, &doc)?;
        print!("{}", report.human);
        println!("{}", serde_json::to_string(&report.machine)?);
    }
    // documents round-trip through the serializer
    assert_eq!(parse_input(&serialize(&doc))?, doc);

    match parse_input("[[surfaces]]\nname = \"s\"\nfeet = [\"x\", \"x\"]\nbands = []\n") {
        Ok(_) => println!("unexpectedly accepted"),
        Err(e) => println!("rejected as expected: {e}"),
    }
    Ok(())
}
