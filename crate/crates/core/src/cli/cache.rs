//! Persisted plethysm and rewrite tables.
//!
//! `plethysm.cache` holds `P <h> <k> <elementary-poly>` lines and
//! `rewrite-m<m>.cache` holds `RW <orbit-index> <generator-poly>` lines for
//! arity `m`. Each file starts with [`HEADER`] and ends with
//! `sha256 <hex>` over everything before the trailer.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::orbitring::OrbitIndex;
use crate::presentation::{cached_rewrites, preload_rewrite};
use crate::ringcore::parse::{parse_elementary_poly, parse_generator_poly, parse_orbit_index};
use crate::ringcore::{CoeffRing, ElementaryPoly, GeneratorPoly};
use crate::symfun::{cached_plethysms, preload_plethysm};

pub const HEADER: &str = "msym-cache 1";
const PLETHYSM_FILE: &str = "plethysm.cache";

#[derive(Debug, Default)]
pub struct CacheReport {
    pub plethysms: usize,
    pub rewrites: usize,
    pub warnings: Vec<String>,
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

/// Checks header and trailer; returns the entry lines, or why the file was
/// rejected as a whole.
fn verified_lines(text: &str) -> Result<Vec<&str>, String> {
    let body_end = text.trim_end_matches('\n').rfind('\n').map_or(0, |i| i + 1);
    let (body, trailer) = text.split_at(body_end);
    let expected = trailer.trim().strip_prefix("sha256 ").ok_or("missing checksum trailer")?;
    if digest(body) != expected {
        return Err("checksum mismatch".into());
    }
    let mut lines = body.lines();
    if lines.next() != Some(HEADER) {
        return Err("unknown format version".into());
    }
    Ok(lines.filter(|l| !l.trim().is_empty()).collect())
}

fn parse_plethysm_line(line: &str) -> Option<(u32, u32, ElementaryPoly)> {
    let mut parts = line.splitn(4, ' ');
    if parts.next()? != "P" {
        return None;
    }
    let h = parts.next()?.parse().ok().filter(|&h| h > 0)?;
    let k = parts.next()?.parse().ok().filter(|&k| k > 0)?;
    let p = parse_elementary_poly(parts.next()?, CoeffRing::Integers).ok()?;
    Some((h, k, p))
}

fn parse_rewrite_line(line: &str, m: usize) -> Option<(OrbitIndex, GeneratorPoly)> {
    let rest = line.strip_prefix("RW ")?;
    let close = rest.find('}')?;
    let alpha = parse_orbit_index(&rest[..=close], m).ok()?;
    let g = parse_generator_poly(rest[close + 1..].trim(), m, CoeffRing::Integers).ok()?;
    Some((alpha, g))
}

fn rewrite_file_arity(name: &str) -> Option<usize> {
    name.strip_prefix("rewrite-m")?.strip_suffix(".cache")?.parse().ok().filter(|&m| m > 0)
}

/// Loads every table found in `dir`. Missing files are not an error; a file
/// that fails its checksum is ignored as a whole, and unparsable lines are
/// skipped. Both produce warnings.
pub fn load_cache(dir: &Path) -> CacheReport {
    let mut report = CacheReport::default();
    let Ok(entries) = fs::read_dir(dir) else {
        return report;
    };
    let mut names: Vec<String> = entries.filter_map(|e| e.ok()?.file_name().into_string().ok()).collect();
    names.sort();
    for name in names {
        let arity = rewrite_file_arity(&name);
        if name != PLETHYSM_FILE && arity.is_none() {
            continue;
        }
        let path = dir.join(&name);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                report.warnings.push(format!("{}: unreadable ({e}); recomputing", path.display()));
                continue;
            }
        };
        let lines = match verified_lines(&text) {
            Ok(lines) => lines,
            Err(why) => {
                report.warnings.push(format!("{}: {why}; recomputing", path.display()));
                continue;
            }
        };
        for (i, line) in lines.into_iter().enumerate() {
            let loaded = match arity {
                None => parse_plethysm_line(line).map(|(h, k, p)| {
                    preload_plethysm(h, k, p);
                    report.plethysms += 1;
                }),
                Some(m) => parse_rewrite_line(line, m).map(|(alpha, g)| {
                    preload_rewrite(alpha, g);
                    report.rewrites += 1;
                }),
            };
            if loaded.is_none() {
                report.warnings.push(format!("{}: skipping bad line {}", path.display(), i + 2));
            }
        }
    }
    report
}

fn write_table(path: &Path, lines: impl IntoIterator<Item = String>) -> io::Result<()> {
    let mut body = format!("{HEADER}\n");
    for line in lines {
        body.push_str(&line);
        body.push('\n');
    }
    let trailer = format!("sha256 {}\n", digest(&body));
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, body + &trailer)?;
    fs::rename(tmp, path)
}

/// Writes the current in-memory tables to `dir`, sorted for stable output.
pub fn save_cache(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut plethysms = cached_plethysms();
    plethysms.sort_by_key(|(key, _)| *key);
    write_table(&dir.join(PLETHYSM_FILE), plethysms.into_iter().map(|((h, k), p)| format!("P {h} {k} {p}")))?;
    let mut by_arity: BTreeMap<usize, Vec<(OrbitIndex, String)>> = BTreeMap::new();
    for (alpha, g) in cached_rewrites() {
        by_arity.entry(alpha.arity()).or_default().push((alpha.clone(), format!("RW {alpha} {g}")));
    }
    for (m, mut lines) in by_arity {
        lines.sort_by(|x, y| x.0.cmp(&y.0));
        write_table(&dir.join(format!("rewrite-m{m}.cache")), lines.into_iter().map(|(_, l)| l))?;
    }
    Ok(())
}
