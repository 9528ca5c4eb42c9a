use std::path::PathBuf;

use arboreal_core::format::{parse_presentation, PresentationFile};

#[test]
fn fixtures_round_trip() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let Ok(pres) = parse_presentation(&text) else {
            assert!(path.ends_with("degenerate_order_one.json"), "{}", path.display());
            continue;
        };
        let file = PresentationFile::from_presentation(&pres);
        let again = parse_presentation(&file.to_json()).unwrap();
        assert_eq!(again, pres, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 8);
}
