//! Rule files:
//!
//! ```json
//! { "alphabet": ["0", "1"], "lo": 0, "hi": 1, "sided": "two",
//!   "table": { "0|0": "0", "0|1": "1", "1|0": "1", "1|1": "0" } }
//! ```
//!
//! `alphabet` may also name a built-in alphabet (`"conveyor"`, `"onesided8"`).
//! Every window must appear exactly once.

use std::fmt;
use std::sync::Arc;

use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rule::{decode, table_size, Alphabet, LocalRule1D, Sidedness, CA};
use super::CaError;

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum AlphabetSpec {
    Named(String),
    Symbols(Vec<String>),
}

/// Table entries in file order, duplicates preserved.
struct Entries(Vec<(String, String)>);

impl<'de> Deserialize<'de> for Entries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Entries;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object mapping windows to symbols")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Entries, A::Error> {
                let mut out = Vec::new();
                while let Some(e) = map.next_entry()? {
                    out.push(e);
                }
                Ok(Entries(out))
            }
        }
        d.deserialize_map(V)
    }
}

impl Serialize for Entries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(k, v)| (k, v)))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleFile {
    alphabet: AlphabetSpec,
    lo: i32,
    hi: i32,
    sided: String,
    table: Entries,
}

fn bad(msg: impl Into<String>) -> CaError {
    CaError::BadTable(msg.into())
}

/// Resolves an alphabet given by name or as a JSON list of names.
pub fn alphabet_from_json(value: &serde_json::Value) -> Result<Arc<Alphabet>, CaError> {
    let spec: AlphabetSpec =
        serde_json::from_value(value.clone()).map_err(|e| bad(e.to_string()))?;
    resolve(spec)
}

fn resolve(spec: AlphabetSpec) -> Result<Arc<Alphabet>, CaError> {
    match spec {
        AlphabetSpec::Named(name) => crate::constructions::named_alphabet(&name)
            .ok_or_else(|| CaError::BadAlphabet(format!("unknown built-in alphabet {name:?}"))),
        AlphabetSpec::Symbols(names) => Alphabet::new(names),
    }
}

pub fn rule_from_json(text: &str) -> Result<CA, CaError> {
    let file: RuleFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
    let alphabet = resolve(file.alphabet)?;
    let sided = match file.sided.as_str() {
        "one" => Sidedness::One,
        "two" => Sidedness::Two,
        other => {
            return Err(bad(format!(
                "sided must be \"one\" or \"two\", got {other:?}"
            )))
        }
    };
    if file.lo > file.hi {
        return Err(CaError::BadRange(file.lo, file.hi));
    }
    let q = alphabet.len();
    let width = (file.hi - file.lo + 1) as usize;
    let size = table_size(q, width)?;
    const UNSET: u8 = u8::MAX;
    let mut table = vec![UNSET; size];
    for (window, out) in file.table.0 {
        let syms: Vec<&str> = window.split('|').collect();
        if syms.len() != width {
            return Err(bad(format!(
                "window {window:?} does not have {width} symbols"
            )));
        }
        let idx = syms.iter().try_fold(0usize, |acc, s| {
            alphabet
                .symbol(s)
                .map(|v| acc * q + v as usize)
                .ok_or_else(|| CaError::UnknownSymbol(s.to_string()))
        })?;
        let o = alphabet
            .symbol(&out)
            .ok_or_else(|| CaError::UnknownSymbol(out.clone()))?;
        if table[idx] != UNSET {
            return Err(bad(format!("window {window:?} appears twice")));
        }
        table[idx] = o;
    }
    if let Some(missing) = table.iter().position(|&s| s == UNSET) {
        let mut w = vec![0u8; width];
        decode(missing, q, &mut w);
        let names: Vec<&str> = w.iter().map(|&s| alphabet.name(s)).collect();
        return Err(bad(format!("window {:?} is missing", names.join("|"))));
    }
    CA::new(LocalRule1D::new(alphabet, file.lo, file.hi, table)?, sided)
}

pub fn rule_to_json(f: &CA) -> String {
    let rule = f.rule();
    let alphabet = rule.alphabet();
    let q = rule.q();
    let mut w = vec![0u8; rule.width()];
    let entries = rule
        .table()
        .iter()
        .enumerate()
        .map(|(i, &o)| {
            decode(i, q, &mut w);
            let key: Vec<&str> = w.iter().map(|&s| alphabet.name(s)).collect();
            (key.join("|"), alphabet.name(o).to_string())
        })
        .collect();
    let file = RuleFile {
        alphabet: AlphabetSpec::Symbols(alphabet.names().to_vec()),
        lo: rule.lo(),
        hi: rule.hi(),
        sided: match f.sided() {
            Sidedness::One => "one".into(),
            Sidedness::Two => "two".into(),
        },
        table: Entries(entries),
    };
    serde_json::to_string_pretty(&file).expect("rule serializes")
}
