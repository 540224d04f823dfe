//! Rule, configuration and file handling.

use std::fs;

use anyhow::{bail, Context, Result};
use revca_core::ca::{rule_from_json, PeriodicConfig, Start, WindowConfig, CA};
use revca_core::constructions::{
    build_drive, build_fa, build_fab, build_fpj, build_frot, drive_inverse, frot_inverse,
};
use revca_core::perm::Perm;

use crate::ConfigArgs;

pub const BUILTINS: &str =
    "frot, frot-inv, fa:<cycles>, drive, drive-inv, fab:<a>,<b>, fpj:<cycles>@<j>";

/// A rule file path, or `builtin:<name>`.
pub fn load_rule(spec: &str) -> Result<CA> {
    match spec.strip_prefix("builtin:") {
        Some(name) => {
            builtin(name).with_context(|| format!("built-in rule {name:?} (known: {BUILTINS})"))
        }
        None => {
            let text = fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?;
            rule_from_json(&text).with_context(|| format!("parsing {spec}"))
        }
    }
}

fn builtin(name: &str) -> Result<CA> {
    Ok(match name {
        "frot" => build_frot(),
        "frot-inv" => frot_inverse()?,
        "drive" => build_drive(),
        "drive-inv" => drive_inverse()?,
        _ => {
            if let Some(c) = name.strip_prefix("fa:") {
                build_fa(&Perm::parse_cycles(c, 5)?)?
            } else if let Some(ab) = name.strip_prefix("fab:") {
                let (a, b) = ab.split_once(',').context("expected fab:<a>,<b>")?;
                build_fab(a.trim().parse()?, b.trim().parse()?)?
            } else if let Some(pj) = name.strip_prefix("fpj:") {
                let (c, j) = pj.rsplit_once('@').context("expected fpj:<cycles>@<j>")?;
                build_fpj(&Perm::parse_cycles(c, 5)?, j.trim().parse()?)?
            } else {
                bail!("unknown built-in");
            }
        }
    })
}

pub fn load_start(f: &CA, args: &ConfigArgs) -> Result<Start> {
    let word = f.alphabet().parse_word(&args.config)?;
    if args.window {
        Ok(Start::Window(WindowConfig::new(word, args.base)))
    } else {
        Ok(Start::Periodic(PeriodicConfig::new(word)?))
    }
}

pub fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {path}"))
}

/// Writes to `out` if given, else prints.
pub fn emit(text: &str, out: Option<&str>) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {path}")),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}
