//! Function file format: a `# group=<kind>` header line, then one entry per
//! line as `<element><TAB><re><TAB><im>`, elements in the groups' textual
//! format and values in round-trippable form (shortest floats, `num/den`
//! rationals). Entries are written in canonical element order.

use crate::algebra::{AlgebraError, SparseFunction};
use crate::groups::{DiscreteGroup, GroupError, GroupKind};
use crate::scalar::Scalar;
use std::io::{BufRead, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("missing or malformed header line: {0:?}")]
    Header(String),
    #[error("file is for group {found}, expected {expected}")]
    GroupMismatch { expected: String, found: String },
    #[error("line {line}: {reason}")]
    Entry { line: usize, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub fn write_function<G: DiscreteGroup, S: Scalar>(
    f: &SparseFunction<G, S>,
    mut out: impl Write,
) -> Result<(), IoError> {
    writeln!(out, "# group={}", f.group().kind())?;
    for (x, v) in f.sorted_entries() {
        let (re, im) = v.value_parts();
        writeln!(out, "{}\t{}\t{}", f.group().format_elem(x), re, im)?;
    }
    Ok(())
}

pub fn read_function<G: DiscreteGroup, S: Scalar>(
    group: G,
    input: impl BufRead,
) -> Result<SparseFunction<G, S>, IoError> {
    let mut lines = input.lines().enumerate();
    let header = loop {
        match lines.next() {
            Some((_, line)) => {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                break line;
            }
            None => return Err(IoError::Header("<empty file>".to_string())),
        }
    };
    let kind_str = header
        .trim()
        .strip_prefix("# group=")
        .ok_or_else(|| IoError::Header(header.clone()))?;
    let kind: GroupKind = kind_str.parse()?;
    if kind != group.kind() {
        return Err(IoError::GroupMismatch {
            expected: group.kind().to_string(),
            found: kind.to_string(),
        });
    }

    let mut pairs = Vec::new();
    for (idx, line) in lines {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut cols = line.split('\t');
        let entry = |reason: String| IoError::Entry { line: idx + 1, reason };
        let elem_str = cols.next().ok_or_else(|| entry("missing element".into()))?;
        let re = cols.next().ok_or_else(|| entry("missing re column".into()))?;
        let im = cols.next().ok_or_else(|| entry("missing im column".into()))?;
        let elem = group.parse_elem(elem_str)?;
        let value = S::from_parts(re.trim(), im.trim()).map_err(entry)?;
        pairs.push((elem, value));
    }
    Ok(SparseFunction::from_entries(group, pairs)?)
}

pub fn write_function_to_path<G: DiscreteGroup, S: Scalar>(
    f: &SparseFunction<G, S>,
    path: impl AsRef<Path>,
) -> Result<(), IoError> {
    let file = std::fs::File::create(path)?;
    write_function(f, std::io::BufWriter::new(file))
}

pub fn read_function_from_path<G: DiscreteGroup, S: Scalar>(
    group: G,
    path: impl AsRef<Path>,
) -> Result<SparseFunction<G, S>, IoError> {
    let file = std::fs::File::open(path)?;
    read_function(group, std::io::BufReader::new(file))
}

/// Peek the group header of a function file.
pub fn read_group_kind(path: impl AsRef<Path>) -> Result<GroupKind, IoError> {
    let file = std::fs::File::open(path)?;
    let mut first = String::new();
    std::io::BufReader::new(file).read_line(&mut first)?;
    let kind_str =
        first.trim().strip_prefix("# group=").ok_or_else(|| IoError::Header(first.clone()))?;
    Ok(kind_str.parse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_complex, random_rational};
    use crate::groups::{CyclicGroup, FreeGroup};

    #[test]
    fn float_function_round_trips() {
        let g = FreeGroup::new(2);
        let f = random_complex(&g, 5, 30, 6).unwrap();
        let mut buf = Vec::new();
        write_function(&f, &mut buf).unwrap();
        let back = read_function(g, buf.as_slice()).unwrap();
        assert_eq!(back, f);
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("# group=free rank=2\n"));
    }

    #[test]
    fn rational_function_round_trips_exactly() {
        let g = CyclicGroup::new(9);
        let f = random_rational(&g, 8, 7, 5).unwrap();
        let mut buf = Vec::new();
        write_function(&f, &mut buf).unwrap();
        let back = read_function(g, buf.as_slice()).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn header_mismatch_is_detected() {
        let g2 = FreeGroup::new(2);
        let f = random_complex(&g2, 5, 3, 4).unwrap();
        let mut buf = Vec::new();
        write_function(&f, &mut buf).unwrap();
        let err = read_function::<_, crate::C64>(FreeGroup::new(3), buf.as_slice());
        assert!(matches!(err, Err(IoError::GroupMismatch { .. })));
    }

    #[test]
    fn identity_word_round_trips_as_e() {
        let g = FreeGroup::new(2);
        let f = SparseFunction::delta(g, crate::Word::identity(), crate::C64::new(1.5, 0.0))
            .unwrap();
        let mut buf = Vec::new();
        write_function(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.contains("e\t1.5\t0"));
        assert_eq!(read_function::<_, crate::C64>(g, buf.as_slice()).unwrap(), f);
    }
}
