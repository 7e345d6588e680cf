//! Graph arguments: `S[l1,l2,...]`, `P<n>`, or a path to a tree file.

use std::path::Path;

use anyhow::{bail, Context, Result};
use csf_core::{Spider, Tree};

#[derive(Debug, Clone)]
pub enum Target {
    Spider(Spider),
    Tree(Tree),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Spider(s) => s.to_string(),
            Target::Tree(t) => t.label(),
        }
    }
}

pub fn parse(arg: &str) -> Result<Target> {
    let arg = arg.trim();
    if let Some(rest) = arg.strip_prefix('S') {
        if rest.starts_with('[') || rest.starts_with('(') {
            return Ok(Target::Spider(arg.parse()?));
        }
    }
    if let Some(rest) = arg.strip_prefix('P') {
        if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
            let n: usize = rest.parse()?;
            if n == 0 {
                bail!("a path needs at least one vertex");
            }
            return Ok(Target::Tree(Tree::path(n)));
        }
    }
    let path = Path::new(arg);
    if !path.is_file() {
        bail!("{arg:?} is not S[l1,...], P<n> or a tree file");
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {arg}"))?;
    Ok(Target::Tree(Tree::parse_text(&text).with_context(|| format!("parsing {arg}"))?))
}

/// `a..b`, `a..=b` or `n`, all inclusive.
pub fn parse_range(text: &str) -> Result<(u64, u64)> {
    let text = text.trim();
    let bad = || anyhow::anyhow!("bad range {text:?}; expected a..b or n");
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
            if a > b {
                bail!("empty range {text:?}");
            }
            Ok((a, b))
        }
        None => {
            let n = text.parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}
