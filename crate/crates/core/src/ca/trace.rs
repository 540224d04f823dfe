use std::collections::{BTreeMap, BTreeSet};

use super::rule::{decode, increment, LocalRule1D, Sidedness, CA};
use super::CaError;
use crate::par::*;

/// Largest number of prefixes `trace_words` will enumerate.
pub const PREFIX_BUDGET: usize = 1 << 28;

/// Length-`L` columns `(fⁿ(x)₀)_{n<L}` with the lexicographically least
/// prefix producing each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceLanguage {
    pub length: usize,
    pub words: BTreeSet<Vec<u8>>,
    pub witnesses: BTreeMap<Vec<u8>, Vec<u8>>,
    /// Symbols collapsed during enumeration (see [`transparent_symbols`]).
    pub transparent: Vec<u8>,
}

impl TraceLanguage {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

fn one_sided_rule(f: &CA) -> Result<LocalRule1D, CaError> {
    let rule = f.rule().canonicalize();
    match f.sided() {
        Sidedness::One if rule.lo() >= 0 => Ok(rule),
        _ => Err(CaError::NotOneSided(rule.lo())),
    }
}

/// The largest set `Z` of symbols that `f` fixes and that are invisible to
/// the other cells: a cell outside `Z` never enters `Z`, and its image does
/// not change when `Z` symbols in its window are exchanged.
///
/// Columns through a `Z` cell are then constant and columns through other
/// cells only see which positions hold `Z`, so one representative suffices.
pub fn transparent_symbols(rule: &LocalRule1D) -> Vec<u8> {
    if rule.lo() > 0 || rule.hi() < 0 {
        return Vec::new();
    }
    let q = rule.q();
    let w = rule.width();
    let centre = (-rule.lo()) as usize;
    let mut fixed = vec![true; q];
    let mut window = vec![0u8; w];
    loop {
        let c = window[centre] as usize;
        if rule.eval(&window) as usize != c {
            fixed[c] = false;
        }
        if !increment(&mut window, q) {
            break;
        }
    }
    let z: Vec<u8> = (0..q as u8).filter(|&s| fixed[s as usize]).collect();
    let Some(&zmin) = z.first() else {
        return z;
    };
    let mut window = vec![0u8; w];
    loop {
        if !fixed[window[centre] as usize] {
            let out = rule.eval(&window);
            if fixed[out as usize] {
                return Vec::new();
            }
            let collapsed: Vec<u8> = window
                .iter()
                .map(|&s| if fixed[s as usize] { zmin } else { s })
                .collect();
            if rule.eval(&collapsed) != out {
                return Vec::new();
            }
        }
        if !increment(&mut window, q) {
            break;
        }
    }
    z
}

/// Column of `f` through coordinate 0 of a prefix, times `0..len`.
fn forward_column(
    rule: &LocalRule1D,
    prefix: &[u8],
    len: usize,
    buf: &mut Vec<u8>,
    out: &mut Vec<u8>,
) {
    let w = rule.width();
    let lo = rule.lo() as usize;
    buf.clear();
    buf.extend_from_slice(prefix);
    out.clear();
    // buf[k] holds coordinate k - shift
    let mut shift = 0usize;
    for n in 0..len {
        out.push(buf[shift]);
        if n + 1 == len {
            break;
        }
        let next = buf.len() + 1 - w;
        for i in 0..next {
            buf[i] = rule.eval(&buf[i..i + w]);
        }
        buf.truncate(next);
        shift += lo;
    }
}

/// The set `{ (fⁿ(x)₀)_{n<L} : x₀ ∈ first }` for a one-sided `f`, by
/// enumeration of all prefixes of length `1 + hi·(L−1)`.
pub fn trace_words(f: &CA, len: usize, first: Option<&[u8]>) -> Result<TraceLanguage, CaError> {
    let rule = one_sided_rule(f)?;
    let q = rule.q();
    if len == 0 {
        return Err(CaError::BadBound("trace length must be at least 1"));
    }
    let first: Vec<u8> = match first {
        Some(s) => {
            if let Some(&bad) = s.iter().find(|&&x| x as usize >= q) {
                return Err(CaError::SymbolOutOfRange(bad));
            }
            let set: BTreeSet<u8> = s.iter().copied().collect();
            set.into_iter().collect()
        }
        None => (0..q as u8).collect(),
    };
    let hi = rule.hi() as usize;
    let plen = 1 + (len - 1) * hi;

    let z = transparent_symbols(&rule);
    let in_z = |s: u8| z.contains(&s);
    let reps: Vec<u8> = (0..q as u8)
        .filter(|&s| !in_z(s) || Some(&s) == z.first())
        .collect();
    let starts: Vec<u8> = first.iter().copied().filter(|&s| !in_z(s)).collect();
    let r = reps.len();
    let tail = plen - 1;
    let per_start = r
        .checked_pow(tail as u32)
        .ok_or(CaError::SearchTooLarge("trace prefixes"))?;
    let total = per_start
        .checked_mul(starts.len())
        .filter(|&t| t <= PREFIX_BUDGET)
        .ok_or(CaError::SearchTooLarge("trace prefixes"))?;

    const CHUNK: usize = 1 << 14;
    let parts: Vec<BTreeMap<Vec<u8>, Vec<u8>>> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut found: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();
            let (mut buf, mut col) = (Vec::new(), Vec::new());
            let mut digits = vec![0u8; plen];
            decode(c * CHUNK, r, &mut digits[1..]);
            let mut prefix = vec![0u8; plen];
            for idx in c * CHUNK..((c + 1) * CHUNK).min(total) {
                prefix[0] = starts[idx / per_start];
                for k in 1..plen {
                    prefix[k] = reps[digits[k] as usize];
                }
                forward_column(&rule, &prefix, len, &mut buf, &mut col);
                if !found.contains_key(&col) {
                    found.insert(col.clone(), prefix.clone());
                }
                increment(&mut digits[1..], r);
            }
            found
        })
        .collect();
    let mut witnesses: BTreeMap<Vec<u8>, Vec<u8>> = BTreeMap::new();
    for part in parts {
        for (col, prefix) in part {
            witnesses
                .entry(col)
                .and_modify(|p| {
                    if prefix < *p {
                        *p = prefix.clone();
                    }
                })
                .or_insert(prefix);
        }
    }
    for &s in first.iter().filter(|&&s| in_z(s)) {
        witnesses.insert(vec![s; len], vec![s; plen]);
    }
    Ok(TraceLanguage {
        length: len,
        words: witnesses.keys().cloned().collect(),
        witnesses,
        transparent: z,
    })
}

/// The trace column `(fᵗ(x)₀)` for `t0 ≤ t ≤ t1`, using `f_inv` for negative times.
pub fn column(
    f: &CA,
    f_inv: Option<&CA>,
    prefix: &[u8],
    t0: i64,
    t1: i64,
) -> Result<Vec<u8>, CaError> {
    if t0 > 0 || t1 < 0 {
        return Err(CaError::BadBound("column needs t0 <= 0 <= t1"));
    }
    let rule = one_sided_rule(f)?;
    let inv = match (t0 < 0, f_inv) {
        (false, _) => None,
        (true, Some(g)) => Some(one_sided_rule(g)?),
        (true, None) => return Err(CaError::BadBound("negative times need the inverse")),
    };
    let forward_need = 1 + (t1 as usize) * rule.hi() as usize;
    let backward_need = inv
        .as_ref()
        .map_or(1, |g| 1 + (-t0) as usize * g.hi() as usize);
    let need = forward_need.max(backward_need);
    if prefix.len() < need {
        return Err(CaError::PrefixTooShort {
            need,
            got: prefix.len(),
        });
    }
    if let Some(&bad) = prefix.iter().find(|&&s| s as usize >= rule.q()) {
        return Err(CaError::SymbolOutOfRange(bad));
    }
    let (mut buf, mut fwd) = (Vec::new(), Vec::new());
    forward_column(
        &rule,
        &prefix[..forward_need],
        t1 as usize + 1,
        &mut buf,
        &mut fwd,
    );
    let mut out = Vec::with_capacity((t1 - t0 + 1) as usize);
    if let Some(g) = inv {
        let mut back = Vec::new();
        forward_column(
            &g,
            &prefix[..backward_need],
            (-t0) as usize + 1,
            &mut buf,
            &mut back,
        );
        out.extend(back[1..].iter().rev());
    }
    out.extend(fwd);
    Ok(out)
}
