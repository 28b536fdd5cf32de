//! TSPLIB ATSP parsing and writing (EXPLICIT / FULL_MATRIX only), and the
//! registry of best-known optima used as the ratio reference for instances
//! too large to solve exactly.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use crate::exact::held_karp_limited;
use crate::instance::Instance;
use crate::{Error, Result};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parse a TSPLIB ATSP document. Supports NAME, TYPE (ATSP), DIMENSION,
/// EDGE_WEIGHT_TYPE: EXPLICIT, EDGE_WEIGHT_FORMAT: FULL_MATRIX; other header
/// keys are ignored. Matrix tokens may be split across lines arbitrarily.
/// Diagonal entries are forced to zero (TSPLIB ATSP files carry large
/// diagonal sentinels).
pub fn parse_tsplib(reader: impl BufRead) -> Result<Instance<i64>> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut weight_type: Option<String> = None;
    let mut weight_format: Option<String> = None;
    let mut in_section = false;
    let mut seen_section = false;
    let mut values: Vec<i64> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if trimmed == "EOF" {
            break;
        }
        if in_section {
            for tok in trimmed.split_whitespace() {
                let v: i64 = tok
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("non-integer matrix token {:?}", tok)))?;
                values.push(v);
            }
            continue;
        }
        if trimmed == "EDGE_WEIGHT_SECTION" {
            if dimension.is_none() {
                return Err(parse_err(lineno, "EDGE_WEIGHT_SECTION before DIMENSION"));
            }
            match weight_type.as_deref() {
                Some("EXPLICIT") => {}
                other => {
                    return Err(parse_err(
                        lineno,
                        format!("unsupported EDGE_WEIGHT_TYPE {:?} (only EXPLICIT)", other.unwrap_or("<missing>")),
                    ))
                }
            }
            match weight_format.as_deref() {
                Some("FULL_MATRIX") => {}
                other => {
                    return Err(parse_err(
                        lineno,
                        format!(
                            "unsupported EDGE_WEIGHT_FORMAT {:?} (only FULL_MATRIX)",
                            other.unwrap_or("<missing>")
                        ),
                    ))
                }
            }
            in_section = true;
            seen_section = true;
            continue;
        }
        let (key, value) = match trimmed.split_once(':') {
            Some((k, v)) => (k.trim(), v.trim()),
            None => (trimmed, ""),
        };
        match key {
            "NAME" => name = value.to_string(),
            "TYPE" => {
                if value != "ATSP" {
                    return Err(parse_err(lineno, format!("TYPE must be ATSP, got {:?}", value)));
                }
            }
            "DIMENSION" => {
                let d: usize = value
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("bad DIMENSION {:?}", value)))?;
                if d == 0 {
                    return Err(parse_err(lineno, "DIMENSION must be positive"));
                }
                dimension = Some(d);
            }
            "EDGE_WEIGHT_TYPE" => weight_type = Some(value.to_string()),
            "EDGE_WEIGHT_FORMAT" => weight_format = Some(value.to_string()),
            _ => {} // COMMENT and friends
        }
    }
    let n = dimension.ok_or_else(|| parse_err(0, "missing DIMENSION"))?;
    if !seen_section {
        return Err(parse_err(0, "missing EDGE_WEIGHT_SECTION"));
    }
    if values.len() != n * n {
        return Err(parse_err(
            0,
            format!("matrix has {} entries, expected {}x{} = {}", values.len(), n, n, n * n),
        ));
    }
    for (i, v) in values.iter().enumerate() {
        if *v < 0 && i / n != i % n {
            return Err(parse_err(0, format!("negative cost at ({}, {})", i / n, i % n)));
        }
    }
    Ok(Instance::from_fn(name, n, |u, v| values[u * n + v]))
}

/// Parse from a file path.
pub fn parse_tsplib_file(path: impl AsRef<std::path::Path>) -> Result<Instance<i64>> {
    let file = std::fs::File::open(path)?;
    parse_tsplib(std::io::BufReader::new(file))
}

/// Write the canonical FULL_MATRIX document: fixed key order, one matrix row
/// per line, space-separated, closed by EOF. parse -> write is a fixpoint.
pub fn write_tsplib(instance: &Instance<i64>, mut out: impl Write) -> Result<()> {
    writeln!(out, "NAME: {}", instance.name())?;
    writeln!(out, "TYPE: ATSP")?;
    writeln!(out, "DIMENSION: {}", instance.n())?;
    writeln!(out, "EDGE_WEIGHT_TYPE: EXPLICIT")?;
    writeln!(out, "EDGE_WEIGHT_FORMAT: FULL_MATRIX")?;
    writeln!(out, "EDGE_WEIGHT_SECTION")?;
    for u in 0..instance.n() {
        let row: Vec<String> = (0..instance.n()).map(|v| instance.c(u, v).to_string()).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    writeln!(out, "EOF")?;
    Ok(())
}

pub fn write_tsplib_string(instance: &Instance<i64>) -> String {
    let mut buf = Vec::new();
    write_tsplib(instance, &mut buf).expect("write to vec");
    String::from_utf8(buf).expect("ascii document")
}

/// Whether a registry value refers to the raw instance or its metric
/// closure. Ratios against raw optima understate the closure ratio, since
/// the closure optimum can only be lower.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RefKind {
    Raw,
    Closure,
}

#[derive(Debug, Clone)]
pub struct OptimumEntry {
    pub cost: i64,
    pub kind: RefKind,
    pub note: String,
}

/// Best-known optima keyed by instance name, loaded from a plain text file:
/// `name cost raw|closure  # provenance note` per line.
#[derive(Debug, Clone, Default)]
pub struct OptimaRegistry {
    entries: BTreeMap<String, OptimumEntry>,
}

impl OptimaRegistry {
    pub fn empty() -> OptimaRegistry {
        OptimaRegistry::default()
    }

    pub fn load(reader: impl BufRead) -> Result<OptimaRegistry> {
        let mut entries = BTreeMap::new();
        for (idx, line) in reader.lines().enumerate() {
            let lineno = idx + 1;
            let line = line?;
            let (data, note) = match line.split_once('#') {
                Some((d, n)) => (d.trim(), n.trim().to_string()),
                None => (line.trim(), String::new()),
            };
            if data.is_empty() {
                continue;
            }
            let mut parts = data.split_whitespace();
            let name = parts
                .next()
                .ok_or_else(|| parse_err(lineno, "missing instance name"))?
                .to_string();
            let cost: i64 = parts
                .next()
                .ok_or_else(|| parse_err(lineno, "missing optimum cost"))?
                .parse()
                .map_err(|_| parse_err(lineno, "bad optimum cost"))?;
            if cost <= 0 {
                return Err(parse_err(lineno, "optimum must be positive"));
            }
            let kind = match parts.next() {
                Some("raw") | None => RefKind::Raw,
                Some("closure") => RefKind::Closure,
                Some(other) => return Err(parse_err(lineno, format!("bad reference kind {:?}", other))),
            };
            if entries.contains_key(&name) {
                return Err(parse_err(lineno, format!("duplicate registry entry {:?}", name)));
            }
            entries.insert(name, OptimumEntry { cost, kind, note });
        }
        Ok(OptimaRegistry { entries })
    }

    pub fn load_file(path: impl AsRef<std::path::Path>) -> Result<OptimaRegistry> {
        let file = std::fs::File::open(path)?;
        OptimaRegistry::load(std::io::BufReader::new(file))
    }

    pub fn get(&self, name: &str) -> Option<&OptimumEntry> {
        self.entries.get(name)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Where a reference optimum came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceSource {
    Exact,
    Registry(RefKind),
}

impl std::fmt::Display for ReferenceSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ReferenceSource::Exact => write!(f, "exact"),
            ReferenceSource::Registry(RefKind::Raw) => write!(f, "registry-raw"),
            ReferenceSource::Registry(RefKind::Closure) => write!(f, "registry-closure"),
        }
    }
}

/// Reference optimum for ratio reporting: solved exactly when the instance
/// is small enough, otherwise looked up by name; absent when neither works
/// (ratios are then omitted, never fabricated).
pub fn reference_optimum(
    instance: &Instance<i64>,
    registry: &OptimaRegistry,
    exact_limit: usize,
) -> Option<(i64, ReferenceSource)> {
    if instance.n() <= exact_limit {
        if let Ok((_, cost)) = held_karp_limited(instance, exact_limit) {
            return Some((cost, ReferenceSource::Exact));
        }
    }
    registry
        .get(instance.name())
        .map(|e| (e.cost, ReferenceSource::Registry(e.kind)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    const MINI: &str = "NAME: mini\nTYPE: ATSP\nCOMMENT: tiny fixture\nDIMENSION: 3\nEDGE_WEIGHT_TYPE: EXPLICIT\nEDGE_WEIGHT_FORMAT: FULL_MATRIX \nEDGE_WEIGHT_SECTION\n9999 1 2\n3 9999 4\n5 6 9999\nEOF\n";

    #[test]
    fn parses_minimal_document() {
        let inst = parse_tsplib(Cursor::new(MINI)).unwrap();
        assert_eq!(inst.name(), "mini");
        assert_eq!(inst.n(), 3);
        assert_eq!(inst.c(0, 0), 0); // sentinel diagonal zeroed
        assert_eq!(inst.c(0, 1), 1);
        assert_eq!(inst.c(2, 1), 6);
    }

    #[test]
    fn write_then_parse_is_identity_and_fixpoint() {
        let inst = parse_tsplib(Cursor::new(MINI)).unwrap();
        let doc1 = write_tsplib_string(&inst);
        let again = parse_tsplib(Cursor::new(doc1.as_bytes())).unwrap();
        assert_eq!(again, inst);
        let doc2 = write_tsplib_string(&again);
        assert_eq!(doc1, doc2);
    }

    #[test]
    fn rejects_unsupported_formats_with_line_numbers() {
        let bad = MINI.replace("FULL_MATRIX", "UPPER_ROW");
        match parse_tsplib(Cursor::new(bad.as_bytes())) {
            Err(Error::Parse { line, msg }) => {
                assert_eq!(line, 7);
                assert!(msg.contains("UPPER_ROW"));
            }
            other => panic!("expected parse error, got {:?}", other.map(|i| i.n())),
        }
        let bad = MINI.replace("TYPE: ATSP", "TYPE: TSP");
        assert!(parse_tsplib(Cursor::new(bad.as_bytes())).is_err());
        let bad = MINI.replace(" 4\n", " x\n");
        assert!(matches!(parse_tsplib(Cursor::new(bad.as_bytes())), Err(Error::Parse { line: 9, .. })));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let bad = MINI.replace("DIMENSION: 3", "DIMENSION: 4");
        assert!(parse_tsplib(Cursor::new(bad.as_bytes())).is_err());
    }

    #[test]
    fn one_vertex_document_roundtrips() {
        let inst = Instance::from_fn("single", 1, |_, _| 0i64);
        let doc = write_tsplib_string(&inst);
        let back = parse_tsplib(Cursor::new(doc.as_bytes())).unwrap();
        assert_eq!(back.n(), 1);
    }

    #[test]
    fn registry_parses_and_looks_up() {
        let text = "# comment line\nft53 6905 raw # TSPLIB best known\nftv33 1286 raw\n";
        let reg = OptimaRegistry::load(Cursor::new(text)).unwrap();
        assert_eq!(reg.len(), 2);
        assert_eq!(reg.get("ft53").unwrap().cost, 6905);
        assert_eq!(reg.get("ft53").unwrap().kind, RefKind::Raw);
        assert!(reg.get("nope").is_none());
    }

    #[test]
    fn reference_prefers_exact_then_registry_then_none() {
        let reg = OptimaRegistry::load(Cursor::new("big 100 raw\n")).unwrap();
        let small = crate::generators::gen_random_metric(6, 1, crate::weight::Frac::new(1, 2));
        let (c, src) = reference_optimum(&small, &reg, 22).unwrap();
        let (_, bf) = crate::exact::brute_force_tour(&small).unwrap();
        assert_eq!(c, bf);
        assert_eq!(src, ReferenceSource::Exact);
        let big = Instance::from_fn("big", 30, |_, _| 1i64);
        assert_eq!(reference_optimum(&big, &reg, 22), Some((100, ReferenceSource::Registry(RefKind::Raw))));
        let unknown = Instance::from_fn("unknown", 30, |_, _| 1i64);
        assert_eq!(reference_optimum(&unknown, &reg, 22), None);
    }
}
