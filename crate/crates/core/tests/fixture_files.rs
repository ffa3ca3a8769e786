//! The shipped `fixtures/` directory matches the generator byte for byte.

use std::path::PathBuf;

use pretopo::{fixtures, io};

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

#[test]
fn shipped_fixtures_are_current() {
    let expected = fixtures::files();
    let mut on_disk: Vec<String> = std::fs::read_dir(dir())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n.ends_with(".json"))
        .collect();
    on_disk.sort();
    let names: Vec<&String> = expected.iter().map(|(n, _)| n).collect();
    assert_eq!(
        on_disk.iter().collect::<Vec<_>>(),
        names,
        "run the write_fixtures example"
    );
    for (name, text) in expected {
        let got = std::fs::read_to_string(dir().join(&name)).unwrap();
        assert_eq!(got, text, "{name} is stale");
    }
}

#[test]
fn named_spaces_load_back() {
    for (stem, x) in fixtures::named() {
        let text = std::fs::read_to_string(dir().join(format!("{stem}.json"))).unwrap();
        assert_eq!(io::parse_space(&text).unwrap(), x, "{stem}");
    }
}

#[test]
fn notcover_is_rejected() {
    let text = std::fs::read_to_string(dir().join("notcover.json")).unwrap();
    let err = io::parse_space(&text).unwrap_err();
    assert_eq!(err.name(), "CoverError");
}
