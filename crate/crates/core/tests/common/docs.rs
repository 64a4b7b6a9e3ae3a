//! Corpus round trips, golden files and parser fuzzing.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use szlam_core::{parse, render_svg, serialize, Document};

pub fn tests_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests")
}

/// `(file name, contents)` of every corpus document, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut docs: Vec<(String, String)> = std::fs::read_dir(tests_dir().join("corpus"))
        .expect("corpus directory")
        .map(|e| e.expect("corpus entry").path())
        .filter(|p| p.extension().is_some_and(|x| x == "szlam"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).expect("readable corpus file"))
        })
        .collect();
    docs.sort();
    docs
}

fn blessing() -> bool {
    std::env::var_os("SZLAM_BLESS").is_some()
}

/// Compares `actual` with `tests/golden/<rel>`; with `SZLAM_BLESS` set the
/// golden file is rewritten instead.
pub fn check_golden(rel: &str, actual: &str) -> Result<(), String> {
    let path = tests_dir().join("golden").join(rel);
    if blessing() {
        std::fs::create_dir_all(path.parent().unwrap()).map_err(|e| e.to_string())?;
        return std::fs::write(&path, actual).map_err(|e| e.to_string());
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected == actual {
        Ok(())
    } else {
        let line = expected.lines().zip(actual.lines()).position(|(a, b)| a != b).map_or(0, |i| i + 1);
        Err(format!("{rel} differs from its golden copy (first difference near line {line})"))
    }
}

/// Parses, serializes, reparses and reserializes; the two serializations
/// must be identical and the reparsed document equal to the first one.
pub fn round_trip(name: &str, text: &str) -> Result<String, String> {
    let doc = parse(text).map_err(|e| format!("{name}: {e}"))?;
    let once = serialize(&doc);
    let again = parse(&once).map_err(|e| format!("{name}: canonical form does not parse: {e}\n{once}"))?;
    if again != doc {
        return Err(format!("{name}: reparsed document differs"));
    }
    let twice = serialize(&again);
    if twice != once {
        return Err(format!("{name}: serialization is not idempotent:\n{once}---\n{twice}"));
    }
    Ok(once)
}

pub fn check_corpus() -> Result<usize, String> {
    let docs = corpus();
    for (name, text) in &docs {
        let canonical = round_trip(name, text)?;
        check_golden(&format!("canonical/{name}"), &canonical)?;
    }
    Ok(docs.len())
}

/// SVG renderings checked against golden files: the two 1-D example
/// documents and the Hadwiger patch.
pub const GOLDEN_SVGS: [(&str, &str); 4] = [
    ("01_example_coloring.szlam", "example_bands.svg"),
    ("02_example_szlam.szlam", "example_szlam.svg"),
    ("05_hadwiger.szlam", "hadwiger_patch.svg"),
    ("06_hadwiger_szlam.szlam", "hadwiger_szlam.svg"),
];

pub fn check_svgs() -> Result<(), String> {
    for (source, golden) in GOLDEN_SVGS {
        let text = std::fs::read_to_string(tests_dir().join("corpus").join(source)).map_err(|e| e.to_string())?;
        let doc = parse(&text).map_err(|e| e.to_string())?;
        let first = render_svg(&doc).map_err(|e| e.to_string())?;
        let second = render_svg(&parse(&text).unwrap()).map_err(|e| e.to_string())?;
        if first != second {
            return Err(format!("{golden}: two renderings differ"));
        }
        check_golden(&format!("svg/{golden}"), &first)?;
    }
    Ok(())
}

const VOCABULARY: &[&str] = &[
    "[", "]", "(", ")", "{", "}", ",", "=", "#", "-", "/", " ", "\n", "\t", "0", "1", "6", "-3", "7/2", "0/0", "1/0",
    "-1/0", "4/-5", "99999999999999999999999", "1/99999999999999999999", "class", "set", "f", "t", "ordering", "space",
    "period", "diameter", "hexquot", "periodic1d", "szlam/1", "coloring", "szlam", "certificate", "B", "green", "é",
    "\u{0}", "\u{feff}", "\r", "{}", "[0,3)", "{0,7}",
];

fn mutate(r: &mut ChaCha8Rng, text: &str) -> String {
    let mut s: Vec<char> = text.chars().collect();
    for _ in 0..r.gen_range(1..=4) {
        let at = r.gen_range(0..=s.len());
        match r.gen_range(0..6) {
            0 if !s.is_empty() => {
                let end = (at + r.gen_range(1..=6)).min(s.len());
                s.drain(at.min(end)..end);
            }
            1 if at < s.len() => s[at] = char::from(r.gen_range(0x20u8..0x7f)),
            2 => {
                let tok = VOCABULARY.choose(r).unwrap();
                s.splice(at..at, tok.chars());
            }
            3 => {
                let lines: Vec<String> = s.iter().collect::<String>().lines().map(str::to_string).collect();
                if lines.len() >= 2 {
                    let (i, j) = (r.gen_range(0..lines.len()), r.gen_range(0..lines.len()));
                    let mut lines = lines;
                    if r.gen_bool(0.5) {
                        lines.swap(i, j);
                    } else {
                        let dup = lines[i].clone();
                        lines.insert(j, dup);
                    }
                    s = lines.join("\n").chars().collect();
                }
            }
            4 => {
                let digits: Vec<usize> = (0..s.len()).filter(|&i| s[i].is_ascii_digit()).collect();
                if let Some(&i) = digits.choose(r) {
                    s[i] = char::from(b'0' + r.gen_range(0..10));
                }
            }
            _ => {}
        }
    }
    s.into_iter().collect()
}

fn random_input(r: &mut ChaCha8Rng, seeds: &[String]) -> String {
    match r.gen_range(0..10) {
        0 => {
            let bytes: Vec<u8> = (0..r.gen_range(0..80)).map(|_| r.gen()).collect();
            String::from_utf8_lossy(&bytes).into_owned()
        }
        1 => (0..r.gen_range(0..30)).map(|_| *VOCABULARY.choose(r).unwrap()).collect(),
        _ => {
            let base = seeds.choose(r).unwrap();
            mutate(r, base)
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct FuzzStats {
    pub inputs: usize,
    pub accepted: usize,
}

/// Feeds `n` mutated and random inputs to the parser. Nothing may panic,
/// errors must point inside the input, and accepted inputs must round trip.
pub fn fuzz(seed: u64, n: usize) -> Result<FuzzStats, String> {
    let seeds: Vec<String> = corpus().into_iter().map(|(_, t)| t).collect();
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut stats = FuzzStats::default();
    for _ in 0..n {
        let input = random_input(&mut r, &seeds);
        stats.inputs += 1;
        let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<bool, String> {
            match parse(&input) {
                Ok(doc) => {
                    let once = serialize(&doc);
                    let again: Document = parse(&once).map_err(|e| format!("canonical form rejected: {e}"))?;
                    if serialize(&again) != once {
                        return Err("serialization not idempotent".into());
                    }
                    let _ = render_svg(&doc);
                    Ok(true)
                }
                Err(e) => {
                    let lines = input.lines().count().max(1);
                    if e.line == 0 || e.line > lines || e.column == 0 {
                        return Err(format!("error outside the input: {e}"));
                    }
                    Ok(false)
                }
            }
        }));
        match outcome {
            Ok(Ok(accepted)) => stats.accepted += usize::from(accepted),
            Ok(Err(msg)) => return Err(format!("{msg}\ninput: {input:?}")),
            Err(_) => return Err(format!("panic on input {input:?}")),
        }
    }
    Ok(stats)
}
