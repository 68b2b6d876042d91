//! Plain-text permutation-array files.
//!
//! ```text
//! n M
//! a_0 a_1 ... a_{n-1}     (M lines, 0-indexed one-line images)
//! ```

use std::io::{BufRead, Write};
use std::path::Path;

use super::{Permutation, PermutationArray};
use crate::error::{Error, Result};

pub fn write_pa<W: Write>(mut w: W, pa: &PermutationArray) -> Result<()> {
    writeln!(w, "{} {}", pa.n(), pa.len())?;
    for m in pa.members() {
        writeln!(w, "{m}")?;
    }
    Ok(())
}

pub fn to_string(pa: &PermutationArray) -> String {
    let mut buf = Vec::new();
    write_pa(&mut buf, pa).expect("writing to memory");
    String::from_utf8(buf).expect("ascii")
}

pub fn read_pa<R: BufRead>(r: R) -> Result<PermutationArray> {
    let mut lines = r.lines().enumerate();
    let (n, m) = match lines.next() {
        Some((_, line)) => {
            let line = line?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [n, m] => (parse_num(n, 1)?, parse_num(m, 1)?),
                _ => return Err(Error::Parse { line: 1, msg: "expected header \"n M\"".into() }),
            }
        }
        None => return Err(Error::Parse { line: 1, msg: "empty input".into() }),
    };
    let mut members = Vec::with_capacity(m);
    for (idx, line) in lines {
        let line = line?;
        let lineno = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if members.len() == m {
            return Err(Error::Parse { line: lineno, msg: format!("more than {m} permutations") });
        }
        let images = line.split_whitespace().map(|f| parse_num(f, lineno)).collect::<Result<Vec<usize>>>()?;
        if images.len() != n {
            return Err(Error::Parse { line: lineno, msg: format!("expected {n} entries, found {}", images.len()) });
        }
        let p = Permutation::from_slice(&images).map_err(|e| Error::Parse { line: lineno, msg: e.to_string() })?;
        members.push(p);
    }
    if members.len() != m {
        return Err(Error::Parse { line: m + 1, msg: format!("expected {m} permutations, found {}", members.len()) });
    }
    PermutationArray::new(n, members)
}

pub fn read_pa_file(path: &Path) -> Result<PermutationArray> {
    read_pa(std::io::BufReader::new(std::fs::File::open(path)?))
}

pub fn write_pa_file(path: &Path, pa: &PermutationArray) -> Result<()> {
    let mut w = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_pa(&mut w, pa)?;
    w.flush()?;
    Ok(())
}

fn parse_num(s: &str, line: usize) -> Result<usize> {
    s.parse().map_err(|_| Error::Parse { line, msg: format!("not a nonnegative integer: {s:?}") })
}
