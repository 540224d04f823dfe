//! Space-time diagrams: row `t` is the configuration after `t` steps.

use std::fmt::Write;
use std::sync::Arc;

use super::rule::{Alphabet, PeriodicConfig, WindowConfig, CA};
use super::CaError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Start {
    Periodic(PeriodicConfig),
    Window(WindowConfig),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Text,
    Pgm,
}

/// A rectangular grid of symbols; `base` is the coordinate of column 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub alphabet: Arc<Alphabet>,
    pub base: i64,
    pub rows: Vec<Vec<u8>>,
}

impl Diagram {
    pub fn width(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    /// The cells at coordinate `i` from top to bottom.
    pub fn column(&self, i: i64) -> Option<Vec<u8>> {
        let k = usize::try_from(i - self.base)
            .ok()
            .filter(|&k| k < self.width())?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    /// Keeps at most `width` columns starting at column 0.
    pub fn crop(mut self, width: usize) -> Diagram {
        for r in &mut self.rows {
            r.truncate(width);
        }
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            out.push_str(&self.alphabet.render(r));
            out.push('\n');
        }
        out
    }

    /// Plain PGM with gray level = symbol index.
    pub fn to_pgm(&self) -> String {
        let max = self.alphabet.len().saturating_sub(1).max(1);
        let mut out = format!("P2\n{} {}\n{}\n", self.width(), self.height(), max);
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(u8::to_string).collect();
            let _ = writeln!(out, "{}", cells.join(" "));
        }
        out
    }

    pub fn render(&self, format: DiagramFormat) -> String {
        match format {
            DiagramFormat::Text => self.to_text(),
            DiagramFormat::Pgm => self.to_pgm(),
        }
    }
}

/// Iterates `f` to produce `steps` rows, the first being the start.
///
/// A window shrinks as it evolves; every row is cut to the coordinates that
/// stay known throughout.
pub fn render_spacetime(f: &CA, start: &Start, steps: usize) -> Result<Diagram, CaError> {
    if steps == 0 {
        return Err(CaError::BadBound("steps must be at least 1"));
    }
    let alphabet = f.alphabet().clone();
    match start {
        Start::Periodic(c) => {
            f.apply_periodic(c)?;
            let mut rows = vec![c.word.clone()];
            let mut cur = c.word.clone();
            for _ in 1..steps {
                cur = f.apply_periodic_unchecked(&cur);
                rows.push(cur.clone());
            }
            Ok(Diagram {
                alphabet,
                base: 0,
                rows,
            })
        }
        Start::Window(c) => {
            f.apply_window(c)?;
            let mut windows = vec![c.clone()];
            for step in 1..steps {
                let next = f.apply_window_unchecked(windows.last().expect("nonempty"));
                if next.is_empty() {
                    return Err(CaError::WindowExhausted { step });
                }
                windows.push(next);
            }
            let lo = windows.iter().map(|w| w.base).max().expect("nonempty");
            let hi = windows.iter().map(|w| w.end()).min().expect("nonempty");
            if hi < lo {
                return Err(CaError::WindowExhausted { step: steps - 1 });
            }
            let rows = windows
                .iter()
                .map(|w| (lo..=hi).map(|i| w.at(i).expect("inside")).collect())
                .collect();
            Ok(Diagram {
                alphabet,
                base: lo,
                rows,
            })
        }
    }
}
