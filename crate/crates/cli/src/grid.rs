//! Parameter lists like `4`, `2..6` or `1,3,5..7` (ranges are inclusive).

use anyhow::{bail, Context, Result};

const MAX_POINTS: usize = 1 << 20;

pub fn parse_list(text: &str) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        if part.is_empty() {
            bail!("empty item in '{text}'");
        }
        if let Some((a, b)) = part.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let lo: u64 = a
                .trim()
                .parse()
                .with_context(|| format!("bad range start in '{part}'"))?;
            let hi: u64 = b
                .trim()
                .parse()
                .with_context(|| format!("bad range end in '{part}'"))?;
            if lo > hi {
                bail!("range '{part}' is empty");
            }
            if hi - lo >= MAX_POINTS as u64 {
                bail!("range '{part}' has more than {MAX_POINTS} points");
            }
            out.extend(lo..=hi);
        } else {
            out.push(
                part.parse()
                    .with_context(|| format!("'{part}' is not a nonnegative integer"))?,
            );
        }
        if out.len() > MAX_POINTS {
            bail!("'{text}' has more than {MAX_POINTS} points");
        }
    }
    Ok(out)
}
