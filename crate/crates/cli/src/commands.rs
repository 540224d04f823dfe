use anyhow::{bail, Context, Result};
use revca_core::ca::{
    invert, is_injective, is_surjective, order_upto, render_spacetime, rule_to_json, trace_words,
    CaError, DiagramFormat, CA,
};
use revca_core::constructions::{onesided_alphabet, OneSidedSetup, CONTROLS};
use revca_core::linca::{ca_to_matrix, mat_invert, matrix_to_ca, LaurentMatrix, LinearCA};
use revca_core::perm::{CommutatorTable, GroupTable, Perm};
use revca_core::suite::{run_all, run_with, Params};
use revca_core::wreath::{
    act_tuple, border_array, find_unbordered, is_identity, is_unbordered, normal_form, parse_broom,
    pi_build, CylinderSpec, SizeSet, Word,
};

use crate::rules::{emit, load_rule, load_start, read};
use crate::{CaCmd, Cli, Command, Format, LincaCmd, PermCmd, Status, VerifyCmd, WreathCmd};

pub fn dispatch(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Perm(c) => perm(c),
        Command::Wreath(c) => wreath(c),
        Command::Ca(c) => ca(c),
        Command::Verify(c) => verify(c, cli.seed),
        Command::Linca(c) => linca(c),
    }
}

fn check(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::Violation
    }
}

fn group(gens: &[String], degree: usize) -> Result<GroupTable> {
    if gens.is_empty() {
        return Ok(GroupTable::a5());
    }
    let gens: Vec<Perm> = gens
        .iter()
        .map(|g| Perm::parse_cycles(g, degree))
        .collect::<Result<_, _>>()?;
    Ok(GroupTable::generate(&gens, 1 << 20)?)
}

fn perm(cmd: PermCmd) -> Result<Status> {
    match cmd {
        PermCmd::Compose { a, b, degree } => {
            let (a, b) = (
                Perm::parse_cycles(&a, degree)?,
                Perm::parse_cycles(&b, degree)?,
            );
            println!("{}", a.compose(&b)?);
        }
        PermCmd::Order { p, degree } => println!("{}", Perm::parse_cycles(&p, degree)?.order()),
        PermCmd::Exponent { gens, degree } => println!("{}", group(&gens, degree)?.exponent()),
        PermCmd::Solvable { gens, degree } => {
            let g = group(&gens, degree)?;
            let orders: Vec<String> = g
                .derived_series()
                .iter()
                .map(|h| h.order().to_string())
                .collect();
            println!("derived series: {}", orders.join(" > "));
            println!("solvable: {}", g.is_solvable());
        }
    }
    Ok(Status::Ok)
}

fn parse_sizes(text: &str) -> Result<SizeSet> {
    let text = text.trim();
    if let Some(max) = text.strip_prefix("evens:") {
        return Ok(SizeSet::evens(max.parse()?));
    }
    if let Some((a, b)) = text.split_once("..") {
        let (a, b): (usize, usize) = (a.parse()?, b.parse()?);
        if a == 1 {
            return Ok(SizeSet::naturals(b));
        }
        return SizeSet::listed((a..=b).collect()).context("empty size range");
    }
    let sizes = text
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<Vec<usize>, _>>()?;
    SizeSet::listed(sizes).context("sizes must be positive")
}

fn control_word(text: &str) -> Result<Vec<u8>> {
    let w = text
        .split_whitespace()
        .map(|s| s.parse::<u8>().ok().filter(|&j| j < CONTROLS))
        .collect::<Option<Vec<u8>>>()
        .with_context(|| format!("control symbols must be 0..{}", CONTROLS - 1))?;
    if w.is_empty() {
        bail!("empty word");
    }
    Ok(w)
}

fn wreath(cmd: WreathCmd) -> Result<Status> {
    match cmd {
        WreathCmd::Act { word, tuple } => {
            let w = parse_broom(&word)?;
            let t = tuple
                .split_whitespace()
                .map(|s| {
                    s.parse::<u8>()
                        .ok()
                        .filter(|m| (1..=5).contains(m))
                        .map(|m| m - 1)
                })
                .collect::<Option<Vec<u8>>>()
                .context("tuple entries must be 1..5")?;
            let out: Vec<String> = act_tuple(&w, &t)?
                .iter()
                .map(|m| (m + 1).to_string())
                .collect();
            println!("{}", out.join(" "));
            Ok(Status::Ok)
        }
        WreathCmd::Nf { word, n } => {
            if n == 0 {
                bail!("n must be positive");
            }
            println!("{}", normal_form(&parse_broom(&word)?, n));
            Ok(Status::Ok)
        }
        WreathCmd::Identity { word, sizes } => {
            let sizes = parse_sizes(&sizes)?;
            let ok = is_identity(&parse_broom(&word)?, &sizes);
            println!("identity on sizes {:?}: {ok}", sizes.tests());
            Ok(check(ok))
        }
        WreathCmd::Law {
            g,
            h,
            exponent,
            max_n,
        } => {
            let law = Word::commutator(&parse_broom(&g)?, &parse_broom(&h)?).pow(exponent);
            let bad: Vec<usize> = (1..=max_n)
                .filter(|&n| !normal_form(&law, n).is_identity())
                .collect();
            println!("[g, h]^{exponent} nontrivial for n in {bad:?}");
            Ok(check(bad.is_empty()))
        }
        WreathCmd::Pi { g, i, w } => {
            let g = Perm::parse_cycles(&g, 5)?;
            let table = CommutatorTable::new(&GroupTable::a5());
            let word = pi_build(
                &CylinderSpec {
                    g,
                    i,
                    w: control_word(&w)?,
                },
                &table,
            )?;
            let letters: Vec<String> = word.letters().iter().map(ToString::to_string).collect();
            println!("{}", letters.join(" "));
            Ok(Status::Ok)
        }
        WreathCmd::Unbordered { word, len } => match (word, len) {
            (Some(w), _) => {
                let w: Vec<String> = w.split_whitespace().map(str::to_string).collect();
                let ok = is_unbordered(&w);
                println!("border array: {:?}", border_array(&w));
                println!("unbordered: {ok}");
                Ok(check(ok))
            }
            (None, Some(n)) => {
                let lang = OneSidedSetup::global()?.language(n)?;
                match find_unbordered(&lang.words, n) {
                    Some(w) => {
                        let prefix = &lang.witnesses[&w];
                        println!(
                            "word: {}",
                            w.iter().map(u8::to_string).collect::<Vec<_>>().join(" ")
                        );
                        println!("prefix: {}", onesided_alphabet().render(prefix));
                        Ok(Status::Ok)
                    }
                    None => {
                        println!("no unbordered word of length {n}");
                        Ok(Status::Violation)
                    }
                }
            }
            (None, None) => bail!("give --word or --len"),
        },
    }
}

fn ca(cmd: CaCmd) -> Result<Status> {
    match cmd {
        CaCmd::Apply {
            rule,
            config,
            steps,
        } => {
            let f = load_rule(&rule)?;
            let d = render_spacetime(&f, &load_start(&f, &config)?, steps + 1)?;
            let last = d.rows.last().expect("nonempty");
            if config.window {
                println!("base {}: {}", d.base, f.alphabet().render(last));
            } else {
                println!("{}", f.alphabet().render(last));
            }
            Ok(Status::Ok)
        }
        CaCmd::Compose {
            outer,
            inner,
            raw,
            out,
        } => {
            let (f, g) = (load_rule(&outer)?, load_rule(&inner)?);
            let h = if raw {
                f.compose_raw(&g)?
            } else {
                f.compose(&g)?
            };
            emit(&rule_to_json(&h), out.as_deref())?;
            Ok(Status::Ok)
        }
        CaCmd::Invert {
            rule,
            max_range,
            out,
        } => match invert(&load_rule(&rule)?, max_range)? {
            Some(g) => {
                emit(&rule_to_json(&g), out.as_deref())?;
                Ok(Status::Ok)
            }
            None => {
                println!("no inverse with offsets within [-{max_range}, {max_range}]");
                Ok(Status::Violation)
            }
        },
        CaCmd::Injective { rule } => {
            let f = load_rule(&rule)?;
            let r = is_injective(&f)?;
            println!("injective: {}", r.injective);
            if let Some(w) = r.witness.as_ref().and_then(|w| w.periodic_pair()) {
                println!(
                    "collision: {} | {}",
                    f.alphabet().render(&w.0.word),
                    f.alphabet().render(&w.1.word)
                );
            }
            Ok(Status::Ok)
        }
        CaCmd::Surjective { rule } => {
            let f = load_rule(&rule)?;
            let r = is_surjective(&f)?;
            println!("surjective: {}", r.surjective);
            if let Some(o) = r.orphan {
                println!("orphan: {}", f.alphabet().render(&o));
            }
            Ok(Status::Ok)
        }
        CaCmd::Order { rule, kmax } => {
            match order_upto(&load_rule(&rule)?, kmax) {
                Ok(Some(k)) => println!("order {k}"),
                Ok(None) => println!("no order up to {kmax}"),
                Err(e @ CaError::TableTooLarge { .. }) => {
                    println!("undecided: {e}");
                    return Ok(Status::Violation);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(Status::Ok)
        }
        CaCmd::Trace {
            rule,
            len,
            first,
            witnesses,
        } => {
            let f = load_rule(&rule)?;
            let first = first.map(|s| f.alphabet().parse_word(&s)).transpose()?;
            let lang = trace_words(&f, len, first.as_deref())?;
            println!("{} words of length {len}", lang.len());
            for w in &lang.words {
                if witnesses {
                    println!(
                        "{}  <-  {}",
                        f.alphabet().render(w),
                        f.alphabet().render(&lang.witnesses[w])
                    );
                } else {
                    println!("{}", f.alphabet().render(w));
                }
            }
            Ok(Status::Ok)
        }
        CaCmd::Run {
            rule,
            config,
            steps,
            format,
            width,
            out,
        } => {
            let f = load_rule(&rule)?;
            let mut d = render_spacetime(&f, &load_start(&f, &config)?, steps)?;
            if let Some(w) = width {
                d = d.crop(w);
            }
            let format = match format {
                Format::Text => DiagramFormat::Text,
                Format::Pgm => DiagramFormat::Pgm,
            };
            emit(&d.render(format), out.as_deref())?;
            Ok(Status::Ok)
        }
    }
}

fn verify(cmd: VerifyCmd, seed: u64) -> Result<Status> {
    let mut p = Params::default();
    let id = match cmd {
        VerifyCmd::Law {
            pairs,
            max_len,
            max_n,
        } => {
            p.law_pairs = pairs.unwrap_or(p.law_pairs);
            p.law_max_len = max_len.unwrap_or(p.law_max_len);
            p.law_sizes = max_n.unwrap_or(p.law_sizes);
            1
        }
        VerifyCmd::Exponent => 2,
        VerifyCmd::Quotient => 3,
        VerifyCmd::TwoSided {
            max_word,
            max_block,
            configs,
        } => {
            p.two_sided_max_word = max_word.unwrap_or(p.two_sided_max_word);
            p.two_sided_max_block = max_block.unwrap_or(p.two_sided_max_block);
            p.two_sided_configs = configs.unwrap_or(p.two_sided_configs);
            p.two_sided_exhaustive = true;
            4
        }
        VerifyCmd::Reversibility => 5,
        VerifyCmd::Oracle { cas, max_period } => {
            p.oracle_cas = cas.unwrap_or(p.oracle_cas);
            p.oracle_max_period = max_period.unwrap_or(p.oracle_max_period);
            6
        }
        VerifyCmd::Construction { kmax, max_len } => {
            p.order_bound = kmax.unwrap_or(p.order_bound);
            p.trace_max_len = max_len.unwrap_or(p.trace_max_len);
            7
        }
        VerifyCmd::Pi { samples } => {
            p.pi_samples = samples.unwrap_or(p.pi_samples);
            8
        }
        VerifyCmd::OneSided { words, max_len } => {
            p.one_sided_words = words.unwrap_or(p.one_sided_words);
            p.one_sided_max_len = max_len.unwrap_or(p.one_sided_max_len);
            9
        }
        VerifyCmd::Linca { samples } => {
            p.linear_samples = samples.unwrap_or(p.linear_samples);
            10
        }
        VerifyCmd::All => {
            let reports = run_all(seed, &p);
            for r in &reports {
                println!("{r}");
            }
            return Ok(check(reports.iter().all(|r| r.passed)));
        }
    };
    if p.trace_max_len == 0 || p.one_sided_max_len == 0 || p.two_sided_max_word == 0 {
        bail!("bounds must be positive");
    }
    let r = run_with(id, seed, &p);
    println!("{r}");
    Ok(check(r.passed))
}

fn load_matrix(path: &str, field: Option<u32>) -> Result<LaurentMatrix> {
    LaurentMatrix::from_json(&read(path)?, field).with_context(|| format!("parsing {path}"))
}

fn linca(cmd: LincaCmd) -> Result<Status> {
    match cmd {
        LincaCmd::Det { matrix, field } => {
            let m = load_matrix(&matrix, field)?;
            println!("{}@F{}", m.det()?, m.modulus());
            Ok(Status::Ok)
        }
        LincaCmd::Invert { matrix, field } => match mat_invert(&load_matrix(&matrix, field)?)? {
            Some(inv) => {
                println!("{}", inv.to_json());
                Ok(Status::Ok)
            }
            None => {
                println!("determinant is not a unit");
                Ok(Status::Violation)
            }
        },
        LincaCmd::Toca {
            matrix,
            field,
            rule_out,
        } => {
            let f = matrix_to_ca(&load_matrix(&matrix, field)?)?;
            println!("{}", f.to_json());
            if let Some(path) = rule_out {
                let rule: CA = f.to_ca()?;
                emit(&rule_to_json(&rule), Some(&path))?;
            }
            Ok(Status::Ok)
        }
        LincaCmd::Tomatrix { linear } => {
            let f = LinearCA::from_json(&read(&linear)?)?;
            println!("{}", ca_to_matrix(&f).to_json());
            Ok(Status::Ok)
        }
    }
}
