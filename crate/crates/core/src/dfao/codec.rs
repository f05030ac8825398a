//! The automaton text format:
//!
//! ```text
//! p=2
//! states=N
//! <label> <target on digit 0> <target on digit 1>   (N lines, 1-based)
//! ```
//! State 1 is the start state. Blank lines and `#` comments are ignored.

use super::Dfao;
use crate::algebra::fp;
use crate::error::{Error, Result};

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

impl Dfao {
    /// Serializes with the start state first (callers wanting the canonical
    /// file should serialize `minimize()` or `canonical()`).
    pub fn to_text(&self) -> String {
        let a = if self.start == 0 { self.clone() } else { self.canonical() };
        let mut s = format!("p={}\nstates={}\n", a.p, a.num_states());
        for q in 0..a.num_states() {
            s.push_str(&a.labels[q].to_string());
            for r in 0..a.p {
                s.push(' ');
                s.push_str(&(a.next(q, r) + 1).to_string());
            }
            s.push('\n');
        }
        s
    }

    /// Parses the text format, reporting the line and column of the first
    /// problem.
    pub fn from_text(text: &str) -> Result<Dfao> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let header = |lines: &mut dyn Iterator<Item = (usize, &str)>, key: &str| -> Result<(usize, u64)> {
            let (no, l) = lines
                .next()
                .ok_or_else(|| perr(text.lines().count() + 1, 1, format!("missing `{key}=` header")))?;
            let t = l.trim();
            let col = l.find(t).unwrap_or(0) + 1;
            let v = t
                .strip_prefix(key)
                .and_then(|r| r.trim_start().strip_prefix('='))
                .ok_or_else(|| perr(no, col, format!("expected `{key}=`")))?;
            let v = v
                .trim()
                .parse::<u64>()
                .map_err(|_| perr(no, col + key.len() + 1, "expected a nonnegative integer"))?;
            Ok((no, v))
        };
        let (pline, p) = header(&mut lines, "p")?;
        if p > u32::MAX as u64 || fp::check_prime(p as u32).is_err() {
            return Err(perr(pline, 3, format!("unsupported modulus {p}")));
        }
        let p = p as u32;
        let (sline, n) = header(&mut lines, "states")?;
        if n == 0 {
            return Err(perr(sline, 8, "an automaton needs at least one state"));
        }
        let n = n as usize;
        let mut labels = Vec::with_capacity(n);
        let mut trans = Vec::with_capacity(n * p as usize);
        let mut last_line = sline;
        for _ in 0..n {
            let (no, l) = lines.next().ok_or_else(|| {
                perr(last_line + 1, 1, format!("truncated file: expected {n} state lines, got {}", labels.len()))
            })?;
            last_line = no;
            let fields: Vec<(usize, &str)> = l
                .split_whitespace()
                .map(|f| (f.as_ptr() as usize - l.as_ptr() as usize + 1, f))
                .collect();
            if fields.len() != p as usize + 1 {
                return Err(perr(no, 1, format!("expected {} fields, found {}", p + 1, fields.len())));
            }
            let (col, lab) = fields[0];
            let label: u32 = lab.parse().map_err(|_| perr(no, col, "bad label"))?;
            if label >= p {
                return Err(perr(no, col, format!("label {label} not in F_{p}")));
            }
            labels.push(label as u8);
            for &(col, f) in &fields[1..] {
                let t: usize = f.parse().map_err(|_| perr(no, col, "bad transition target"))?;
                if t == 0 || t > n {
                    return Err(perr(no, col, format!("target {t} outside 1..={n}")));
                }
                trans.push((t - 1) as u32);
            }
        }
        if let Some((no, _)) = lines.next() {
            return Err(perr(no, 1, "unexpected extra line"));
        }
        Dfao::new(p, labels, trans, 0)
    }
}
