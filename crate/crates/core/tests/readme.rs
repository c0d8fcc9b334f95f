use sgkit::commands::{run_command, Command};
use sgkit::document::parse_input;

/// The schema snippets in the README, joined into one document.
fn snippets() -> String {
    let text = include_str!("../../../README.md");
    let mut out = String::new();
    let mut inside = false;
    for line in text.lines() {
        match line.trim_end() {
            "```toml" => inside = true,
            "```" if inside => inside = false,
            l if inside => {
                out.push_str(l);
                out.push('\n');
            }
            _ => {}
        }
    }
    out
}

#[test]
fn readme_snippets_form_a_valid_document() {
    let doc = parse_input(&snippets()).unwrap();
    for command in [Command::Tb, Command::Rot, Command::Snf, Command::Hf, Command::SgBounds] {
        let report = run_command(command, &doc).unwrap();
        assert!(report.success, "{}", command.name());
    }
}
