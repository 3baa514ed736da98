use std::fs;
use std::path::PathBuf;

use atcert::io::{parse_arcs, parse_graph};
use atcert::verify::check_certificate;
use atcert::Certificate;

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.display().to_string(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

fn text(b: &[u8]) -> &str {
    std::str::from_utf8(b).unwrap()
}

#[test]
fn graph_seeds_parse() {
    for (name, data) in seeds("parse_graph") {
        parse_graph(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn orientation_seeds_parse() {
    for (name, data) in seeds("parse_orientation") {
        parse_arcs(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn certificate_seeds_parse() {
    for (name, data) in seeds("parse_certificate") {
        Certificate::from_json(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn verify_seeds_pass() {
    for (name, data) in seeds("verify_certificate") {
        let cut = data.iter().position(|&b| b == 0).unwrap();
        let g = parse_graph(text(&data[..cut])).unwrap();
        let c = Certificate::parse_claims(text(&data[cut + 1..])).unwrap();
        assert!(check_certificate(&c, &g).pass, "{name}");
    }
}
