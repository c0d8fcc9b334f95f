//! The bundled fixture files must match their builders byte for byte.
//! Run with `SGKIT_BLESS=1` to rewrite them after changing a builder.

use std::path::PathBuf;

use sgkit::document::{parse_input, serialize};
use sgkit::fixtures;

#[test]
fn bundled_files_match_builders() {
    let bless = std::env::var_os("SGKIT_BLESS").is_some();
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut stale = Vec::new();
    for (name, contents) in fixtures::BUNDLED {
        let expected = serialize(&fixtures::build(name).unwrap());
        if *contents != expected {
            if bless {
                std::fs::write(dir.join(format!("{name}.toml")), &expected).unwrap();
            } else {
                stale.push(*name);
            }
        }
    }
    assert!(stale.is_empty(), "stale fixture files (rerun with SGKIT_BLESS=1): {stale:?}");
}

#[test]
fn bundled_files_parse_and_round_trip() {
    for (name, contents) in fixtures::BUNDLED {
        let doc = parse_input(contents).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_input(&serialize(&doc)).unwrap(), doc, "{name}");
    }
}
