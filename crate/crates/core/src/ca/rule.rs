use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::CaError;
use crate::par::*;

/// Largest table (in entries) any operation will materialize.
pub const TABLE_BUDGET: usize = 1 << 27;

/// An ordered list of distinct symbol names. Symbols are addressed by index.
#[derive(Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, u8>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Alphabet>, CaError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() || names.len() > 255 {
            return Err(CaError::BadAlphabet(format!(
                "size {} outside 1..=255",
                names.len()
            )));
        }
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as u8).is_some() {
                return Err(CaError::BadAlphabet(format!("duplicate symbol {n:?}")));
            }
        }
        Ok(Arc::new(Alphabet { names, index }))
    }

    /// Symbols `"0", "1", .., "k-1"`.
    pub fn numeric(k: usize) -> Arc<Alphabet> {
        Alphabet::new((0..k).map(|i| i.to_string())).expect("valid numeric alphabet")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: u8) -> &str {
        &self.names[s as usize]
    }

    pub fn symbol(&self, name: &str) -> Option<u8> {
        self.index.get(name).copied()
    }

    /// Parses whitespace-separated symbol names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<u8>, CaError> {
        text.split_whitespace()
            .map(|t| {
                self.symbol(t)
                    .ok_or_else(|| CaError::UnknownSymbol(t.to_string()))
            })
            .collect()
    }

    pub fn render(&self, word: &[u8]) -> String {
        word.iter()
            .map(|&s| self.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// A local rule `f(x)ᵢ = table(x[i+lo ..= i+hi])`, stored densely with windows
/// indexed in mixed radix, leftmost symbol most significant.
#[derive(Clone, PartialEq, Eq)]
pub struct LocalRule1D {
    alphabet: Arc<Alphabet>,
    lo: i32,
    hi: i32,
    table: Vec<u8>,
}

impl LocalRule1D {
    pub fn new(alphabet: Arc<Alphabet>, lo: i32, hi: i32, table: Vec<u8>) -> Result<Self, CaError> {
        if lo > hi {
            return Err(CaError::BadRange(lo, hi));
        }
        let q = alphabet.len();
        let size = table_size(q, (hi - lo + 1) as usize)?;
        if table.len() != size {
            return Err(CaError::BadTable(format!(
                "expected {size} entries, got {}",
                table.len()
            )));
        }
        if let Some(&s) = table.iter().find(|&&s| s as usize >= q) {
            return Err(CaError::SymbolOutOfRange(s));
        }
        Ok(LocalRule1D {
            alphabet,
            lo,
            hi,
            table,
        })
    }

    /// Builds the table from a window function.
    pub fn from_fn(
        alphabet: Arc<Alphabet>,
        lo: i32,
        hi: i32,
        f: impl Fn(&[u8]) -> u8 + Sync,
    ) -> Result<Self, CaError> {
        if lo > hi {
            return Err(CaError::BadRange(lo, hi));
        }
        let q = alphabet.len();
        let width = (hi - lo + 1) as usize;
        let size = table_size(q, width)?;
        let mut table = vec![0u8; size];
        fill_table(&mut table, q, width, |w| f(w));
        LocalRule1D::new(alphabet, lo, hi, table)
    }

    pub fn identity(alphabet: Arc<Alphabet>) -> Self {
        let table = (0..alphabet.len() as u8).collect();
        LocalRule1D {
            alphabet,
            lo: 0,
            hi: 0,
            table,
        }
    }

    /// `f(x)ᵢ = x_{i+1}`.
    pub fn shift(alphabet: Arc<Alphabet>) -> Self {
        let table = (0..alphabet.len() as u8).collect();
        LocalRule1D {
            alphabet,
            lo: 1,
            hi: 1,
            table,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn q(&self) -> usize {
        self.alphabet.len()
    }

    pub fn lo(&self) -> i32 {
        self.lo
    }

    pub fn hi(&self) -> i32 {
        self.hi
    }

    pub fn width(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn index_of(&self, window: &[u8]) -> usize {
        let q = self.q();
        window.iter().fold(0, |acc, &s| acc * q + s as usize)
    }

    #[inline]
    pub fn eval(&self, window: &[u8]) -> u8 {
        debug_assert_eq!(window.len(), self.width());
        self.table[self.index_of(window)]
    }

    pub fn is_identity(&self) -> bool {
        self.lo == 0 && self.hi == 0 && self.table.iter().enumerate().all(|(i, &s)| i == s as usize)
    }

    /// The same map written with a larger range `[lo, hi] ⊇ [self.lo, self.hi]`.
    pub fn widen(&self, lo: i32, hi: i32) -> Result<Self, CaError> {
        if lo > self.lo || hi < self.hi {
            return Err(CaError::BadRange(lo, hi));
        }
        let q = self.q();
        let width = (hi - lo + 1) as usize;
        let size = table_size(q, width)?;
        let left = (self.lo - lo) as usize;
        let inner_w = self.width();
        let right = (hi - self.hi) as usize;
        let inner_div = q.pow(right as u32);
        let inner_mod = q.pow(inner_w as u32);
        debug_assert_eq!(q.pow((left + inner_w + right) as u32), size);
        let table = (0..size)
            .map(|idx| self.table[(idx / inner_div) % inner_mod])
            .collect();
        LocalRule1D::new(self.alphabet.clone(), lo, hi, table)
    }

    /// Drops extreme offsets the output does not depend on. A constant rule
    /// becomes the range `[0, 0]`.
    pub fn canonicalize(&self) -> Self {
        let (mut lo, mut hi, table) =
            trim_offsets(self.table.clone(), self.q(), self.lo, self.hi, None);
        if lo == hi && table.iter().all(|&s| s == table[0]) {
            lo = 0;
            hi = 0;
        }
        LocalRule1D {
            alphabet: self.alphabet.clone(),
            lo,
            hi,
            table,
        }
    }

    /// `(self ∘ inner)`: `inner` is applied first. Range `[lo+lo', hi+hi']`, not canonicalized.
    pub fn compose_raw(&self, inner: &LocalRule1D) -> Result<Self, CaError> {
        if self.alphabet != inner.alphabet {
            return Err(CaError::AlphabetMismatch);
        }
        let q = self.q();
        let wf = self.width();
        let wg = inner.width();
        let width = wf + wg - 1;
        let size = table_size(q, width)?;
        let mut table = vec![0u8; size];
        let g_mod = q.pow((wg - 1) as u32);
        let f_mod = q.pow((wf - 1) as u32);
        fill_table(&mut table, q, width, |w| {
            let mut gi = w[..wg - 1].iter().fold(0usize, |a, &s| a * q + s as usize);
            let mut fi = 0usize;
            for k in 0..wf {
                gi = (gi % g_mod) * q + w[k + wg - 1] as usize;
                fi = (fi % f_mod) * q + inner.table[gi] as usize;
            }
            self.table[fi]
        });
        LocalRule1D::new(
            self.alphabet.clone(),
            self.lo + inner.lo,
            self.hi + inner.hi,
            table,
        )
    }

    pub fn compose(&self, inner: &LocalRule1D) -> Result<Self, CaError> {
        Ok(self.compose_raw(inner)?.canonicalize())
    }
}

impl fmt::Debug for LocalRule1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LocalRule1D {{ q: {}, range: [{}, {}], entries: {} }}",
            self.q(),
            self.lo,
            self.hi,
            self.table.len()
        )
    }
}

/// Drops extreme offsets of a dense window table that never affect the
/// output, except the offset `keep`.
pub(crate) fn trim_offsets(
    mut table: Vec<u8>,
    q: usize,
    mut lo: i32,
    mut hi: i32,
    keep: Option<i32>,
) -> (i32, i32, Vec<u8>) {
    while lo < hi {
        let w = (hi - lo + 1) as usize;
        let stride = q.pow((w - 1) as u32);
        // leftmost offset: index = d·stride + rest
        if keep != Some(lo)
            && (1..q).all(|d| table[d * stride..(d + 1) * stride] == table[..stride])
        {
            table.truncate(stride);
            lo += 1;
            continue;
        }
        // rightmost offset: index = prefix·q + d
        if keep != Some(hi) && table.chunks(q).all(|c| c.iter().all(|&s| s == c[0])) {
            table = table.chunks(q).map(|c| c[0]).collect();
            hi -= 1;
            continue;
        }
        break;
    }
    (lo, hi, table)
}

pub(crate) fn table_size(q: usize, width: usize) -> Result<usize, CaError> {
    let mut size = 1usize;
    for _ in 0..width {
        size = size
            .checked_mul(q)
            .filter(|&s| s <= TABLE_BUDGET)
            .ok_or(CaError::TableTooLarge { q, width })?;
    }
    Ok(size)
}

/// Fills `table[idx] = f(window(idx))` in parallel chunks.
pub(crate) fn fill_table(table: &mut [u8], q: usize, width: usize, f: impl Fn(&[u8]) -> u8 + Sync) {
    const CHUNK: usize = 1 << 14;
    table
        .par_chunks_mut(CHUNK)
        .enumerate()
        .for_each(|(c, chunk)| {
            let mut window = vec![0u8; width];
            decode(c * CHUNK, q, &mut window);
            for slot in chunk.iter_mut() {
                *slot = f(&window);
                increment(&mut window, q);
            }
        });
}

pub(crate) fn decode(mut idx: usize, q: usize, out: &mut [u8]) {
    for d in out.iter_mut().rev() {
        *d = (idx % q) as u8;
        idx /= q;
    }
}

/// Advances a mixed-radix counter; returns false on wrap-around.
pub(crate) fn increment(w: &mut [u8], q: usize) -> bool {
    for d in w.iter_mut().rev() {
        *d += 1;
        if (*d as usize) < q {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sidedness {
    /// Endomorphism of `Σ^ℕ`; the range satisfies `lo ≥ 0`.
    One,
    Two,
}

/// A cellular automaton: a local rule plus the space it acts on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CA {
    rule: LocalRule1D,
    sided: Sidedness,
}

impl CA {
    pub fn new(rule: LocalRule1D, sided: Sidedness) -> Result<CA, CaError> {
        if sided == Sidedness::One && rule.lo < 0 {
            return Err(CaError::NotOneSided(rule.lo));
        }
        Ok(CA { rule, sided })
    }

    pub fn two_sided(rule: LocalRule1D) -> CA {
        CA {
            rule,
            sided: Sidedness::Two,
        }
    }

    pub fn one_sided(rule: LocalRule1D) -> Result<CA, CaError> {
        CA::new(rule, Sidedness::One)
    }

    pub fn identity(alphabet: Arc<Alphabet>, sided: Sidedness) -> CA {
        CA {
            rule: LocalRule1D::identity(alphabet),
            sided,
        }
    }

    pub fn shift(alphabet: Arc<Alphabet>, sided: Sidedness) -> CA {
        CA {
            rule: LocalRule1D::shift(alphabet),
            sided,
        }
    }

    pub fn rule(&self) -> &LocalRule1D {
        &self.rule
    }

    pub fn sided(&self) -> Sidedness {
        self.sided
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        self.rule.alphabet()
    }

    pub fn canonicalize(&self) -> CA {
        CA {
            rule: self.rule.canonicalize(),
            sided: self.sided,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rule.canonicalize().is_identity()
    }

    /// `self ∘ inner`, canonical. One-sided only if both are.
    pub fn compose(&self, inner: &CA) -> Result<CA, CaError> {
        Ok(CA {
            rule: self.rule.compose(&inner.rule)?,
            sided: joint_sidedness(self.sided, inner.sided),
        })
    }

    pub fn compose_raw(&self, inner: &CA) -> Result<CA, CaError> {
        Ok(CA {
            rule: self.rule.compose_raw(&inner.rule)?,
            sided: joint_sidedness(self.sided, inner.sided),
        })
    }

    fn check_symbols(&self, word: &[u8]) -> Result<(), CaError> {
        match word.iter().find(|&&s| s as usize >= self.rule.q()) {
            Some(&s) => Err(CaError::SymbolOutOfRange(s)),
            None => Ok(()),
        }
    }

    pub fn apply_periodic(&self, c: &PeriodicConfig) -> Result<PeriodicConfig, CaError> {
        self.check_symbols(&c.word)?;
        Ok(PeriodicConfig {
            word: self.apply_periodic_unchecked(&c.word),
        })
    }

    pub(crate) fn apply_periodic_unchecked(&self, word: &[u8]) -> Vec<u8> {
        let p = word.len() as i64;
        let r = &self.rule;
        let q = r.q();
        (0..p)
            .map(|i| {
                let idx = (r.lo..=r.hi).fold(0usize, |acc, k| {
                    acc * q + word[(i + k as i64).rem_euclid(p) as usize] as usize
                });
                r.table[idx]
            })
            .collect()
    }

    /// Evaluates on a finite window. A window on `[s, t]` maps to `[s-lo, t-hi]`,
    /// possibly empty.
    pub fn apply_window(&self, c: &WindowConfig) -> Result<WindowConfig, CaError> {
        self.check_symbols(&c.word)?;
        Ok(self.apply_window_unchecked(c))
    }

    pub(crate) fn apply_window_unchecked(&self, c: &WindowConfig) -> WindowConfig {
        let w = self.rule.width();
        let word: Vec<u8> = if c.word.len() >= w {
            c.word.windows(w).map(|win| self.rule.eval(win)).collect()
        } else {
            Vec::new()
        };
        WindowConfig {
            word,
            base: c.base - self.rule.lo as i64,
        }
    }
}

fn joint_sidedness(a: Sidedness, b: Sidedness) -> Sidedness {
    if a == Sidedness::One && b == Sidedness::One {
        Sidedness::One
    } else {
        Sidedness::Two
    }
}

/// The spatially periodic point `word^∞` with coordinate 0 at `word[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicConfig {
    pub word: Vec<u8>,
}

impl PeriodicConfig {
    pub fn new(word: Vec<u8>) -> Result<PeriodicConfig, CaError> {
        if word.is_empty() {
            return Err(CaError::EmptyConfig);
        }
        Ok(PeriodicConfig { word })
    }

    pub fn period(&self) -> usize {
        self.word.len()
    }
}

/// A finite segment of a configuration: `word[k]` sits at coordinate `base + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindowConfig {
    pub word: Vec<u8>,
    pub base: i64,
}

impl WindowConfig {
    pub fn new(word: Vec<u8>, base: i64) -> WindowConfig {
        WindowConfig { word, base }
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// Last covered coordinate (`base - 1` when empty).
    pub fn end(&self) -> i64 {
        self.base + self.word.len() as i64 - 1
    }

    pub fn at(&self, i: i64) -> Option<u8> {
        let k = i - self.base;
        if k < 0 {
            None
        } else {
            self.word.get(k as usize).copied()
        }
    }
}
