//! Replays the checked-in fuzz corpus and a batch of seeded mutations of it
//! through the same checks as the fuzz targets.

use std::fs;
use std::path::PathBuf;

use horocenter::pointset::PointSetFile;
use horocenter::polytope::{off, validate, TangentPolytope, DEFAULT_EDGE_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn corpus(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<PathBuf> = fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds in {}", dir.display());
    files.into_iter().map(|f| fs::read(f).unwrap()).collect()
}

fn check_off(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(mesh) = off::parse(text) {
        assert_eq!(off::parse(&off::write(&mesh, 0)).unwrap(), mesh);
    }
    if let Ok(poly) = TangentPolytope::from_off(text) {
        let _ = validate(&poly, DEFAULT_EDGE_TOL);
        assert_eq!(TangentPolytope::from_off(&poly.to_off()).unwrap(), poly);
    }
}

fn check_pointset(data: &[u8]) {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = PointSetFile::parse(text) {
        assert_eq!(PointSetFile::parse(&file.to_json()).unwrap(), file);
        let _ = file.configuration(false, 1e-9);
        let _ = file.configuration(true, 1e-9);
    }
}

const ALPHABET: &[u8] = b"0123456789 -+.eE\n#OFFnaif[]{},:\"";

fn mutate(rng: &mut ChaCha8Rng, seed: &[u8]) -> Vec<u8> {
    let mut out = seed.to_vec();
    for _ in 0..rng.random_range(1..=4) {
        let pos = if out.is_empty() {
            0
        } else {
            rng.random_range(0..out.len())
        };
        match rng.random_range(0..4) {
            0 if !out.is_empty() => {
                out.remove(pos);
            }
            1 => out.insert(pos, ALPHABET[rng.random_range(0..ALPHABET.len())]),
            2 if !out.is_empty() => out[pos] = ALPHABET[rng.random_range(0..ALPHABET.len())],
            _ => out.truncate(pos),
        }
    }
    out
}

#[test]
fn off_seeds_and_mutations() {
    let seeds = corpus("off_parse");
    let parsed = seeds
        .iter()
        .filter(|s| off::parse(std::str::from_utf8(s).unwrap()).is_ok())
        .count();
    assert!(
        parsed >= 3 && parsed < seeds.len(),
        "corpus should hold valid and invalid files"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for s in &seeds {
        check_off(s);
        for _ in 0..300 {
            check_off(&mutate(&mut rng, s));
        }
    }
    check_off(format!("OFF\n1 1 0\n0 0 0\n{} 0\n", usize::MAX).as_bytes());
}

#[test]
fn pointset_seeds_and_mutations() {
    let seeds = corpus("pointset_parse");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for s in &seeds {
        check_pointset(s);
        for _ in 0..300 {
            check_pointset(&mutate(&mut rng, s));
        }
    }
}
