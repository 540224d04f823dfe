//! One-sided automata over `Σ = Y ⊔ A` with `Y = {q1..q5}`, `A = {0, 1, 2}`,
//! and the comparison of words over `f, f⁻¹, f_{p,j}` with the abstract
//! action on `Y × X`, where `X` is the trace of `f` inside `Aᶻ`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::ConstructionError;
use crate::ca::{
    column, invert, periodic_words, trace_words, Alphabet, ClassRule, LocalRule1D, TraceLanguage,
    CA,
};
use crate::perm::Perm;
use crate::wreath::{cocycle_form, XBroomWord, XToken};

/// Number of state symbols `Y`.
pub const STATES: u8 = 5;
/// Number of control symbols `A`.
pub const CONTROLS: u8 = 3;

pub fn onesided_alphabet() -> Arc<Alphabet> {
    static ALPHABET: OnceLock<Arc<Alphabet>> = OnceLock::new();
    ALPHABET
        .get_or_init(|| {
            Alphabet::new(["q1", "q2", "q3", "q4", "q5", "0", "1", "2"])
                .expect("one-sided alphabet")
        })
        .clone()
}

/// Σ index of the state `q_{k+1}`.
pub fn state(k: u8) -> u8 {
    debug_assert!(k < STATES);
    k
}

/// Σ index of the control symbol `j`.
pub fn control(j: u8) -> u8 {
    debug_assert!(j < CONTROLS);
    STATES + j
}

pub fn is_control(s: u8) -> bool {
    (STATES..STATES + CONTROLS).contains(&s)
}

/// The Σ indices of `A`.
pub fn controls() -> Vec<u8> {
    (0..CONTROLS).map(control).collect()
}

/// The Σ indices of `Y`.
pub fn states() -> Vec<u8> {
    (0..STATES).map(state).collect()
}

/// `f_{a,b}`: an `a` or `b` followed by a symbol outside `{a, b}` swaps.
pub fn build_fab(a: u8, b: u8) -> Result<CA, ConstructionError> {
    if a == b || a >= CONTROLS || b >= CONTROLS {
        return Err(ConstructionError::BadControls(a, b));
    }
    let (a, b) = (control(a), control(b));
    let rule = LocalRule1D::from_fn(onesided_alphabet(), 0, 1, move |w| {
        let (c, d) = (w[0], w[1]);
        if d != a && d != b {
            if c == a {
                return b;
            }
            if c == b {
                return a;
            }
        }
        c
    })?;
    Ok(CA::one_sided(rule)?)
}

/// The driver `f = f_{0,1} ∘ f_{1,2}`.
pub fn build_drive() -> CA {
    static DRIVE: OnceLock<CA> = OnceLock::new();
    DRIVE
        .get_or_init(|| {
            let f01 = build_fab(0, 1).expect("f01");
            let f12 = build_fab(1, 2).expect("f12");
            f01.compose(&f12).expect("driver")
        })
        .clone()
}

/// The one-sided inverse of the driver, found by search.
pub fn drive_inverse() -> Result<CA, ConstructionError> {
    static INV: OnceLock<Option<CA>> = OnceLock::new();
    INV.get_or_init(|| invert(&build_drive(), 4).ok().flatten())
        .clone()
        .ok_or(ConstructionError::NoInverse)
}

/// `f_{p,j}`: a state followed by the control `j` is moved by `p`.
pub fn build_fpj(p: &Perm, j: u8) -> Result<CA, ConstructionError> {
    if p.degree() != 5 || !p.is_even() {
        return Err(ConstructionError::NotInA5(*p));
    }
    if j >= CONTROLS {
        return Err(ConstructionError::BadControls(j, j));
    }
    let p = *p;
    let cj = control(j);
    let rule = LocalRule1D::from_fn(onesided_alphabet(), 0, 1, move |w| {
        if w[0] < STATES && w[1] == cj {
            p.apply(w[0] as usize) as u8
        } else {
            w[0]
        }
    })?;
    Ok(CA::one_sided(rule)?)
}

/// The driver's trace column through `prefix` at times `t0..=t1`.
pub fn driver_column(prefix: &[u8], t0: i64, t1: i64) -> Result<Vec<u8>, ConstructionError> {
    let inv = if t0 < 0 { Some(drive_inverse()?) } else { None };
    Ok(column(&build_drive(), inv.as_ref(), prefix, t0, t1)?)
}

/// Shared data for repeated one-sided checks: generator automata, their
/// reductions, and the languages of `X` by length.
pub struct OneSidedSetup {
    drive: CA,
    drive_inv: CA,
    drive_class: ClassRule,
    inv_class: ClassRule,
    fpj: Mutex<HashMap<(Perm, u8), (CA, ClassRule)>>,
    languages: Mutex<BTreeMap<usize, Arc<TraceLanguage>>>,
}

/// Both sides of the comparison for one word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneSidedVerdict {
    pub ca_identity: bool,
    pub abstract_identity: bool,
}

impl OneSidedVerdict {
    pub fn agrees(&self) -> bool {
        self.ca_identity == self.abstract_identity
    }
}

impl OneSidedSetup {
    pub fn new() -> Result<OneSidedSetup, ConstructionError> {
        let drive = build_drive();
        let drive_inv = drive_inverse()?;
        let y = states();
        let drive_class = ClassRule::from_ca(&drive, &y)?;
        let inv_class = ClassRule::from_ca_like(&drive_inv, &drive_class)?;
        Ok(OneSidedSetup {
            drive,
            drive_inv,
            drive_class,
            inv_class,
            fpj: Mutex::new(HashMap::new()),
            languages: Mutex::new(BTreeMap::new()),
        })
    }

    /// The shared instance.
    pub fn global() -> Result<&'static OneSidedSetup, ConstructionError> {
        static SETUP: OnceLock<Result<OneSidedSetup, ConstructionError>> = OnceLock::new();
        SETUP
            .get_or_init(OneSidedSetup::new)
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn drive(&self) -> &CA {
        &self.drive
    }

    pub fn drive_inverse(&self) -> &CA {
        &self.drive_inv
    }

    fn generator(&self, tok: &XToken) -> Result<(CA, ClassRule), ConstructionError> {
        match tok {
            XToken::Rot => Ok((self.drive.clone(), self.drive_class.clone())),
            XToken::RotInv => Ok((self.drive_inv.clone(), self.inv_class.clone())),
            XToken::PermAt(p, j) => {
                let mut cache = self.fpj.lock().expect("cache lock");
                if let Some(v) = cache.get(&(*p, *j)) {
                    return Ok(v.clone());
                }
                let f = build_fpj(p, *j)?;
                let c = ClassRule::from_ca_like(&f, &self.drive_class)?;
                cache.insert((*p, *j), (f.clone(), c.clone()));
                Ok((f, c))
            }
        }
    }

    /// Length-`n` words of `X`, as control indices `0..3`.
    pub fn language(&self, n: usize) -> Result<Arc<TraceLanguage>, ConstructionError> {
        if let Some(l) = self.languages.lock().expect("language lock").get(&n) {
            return Ok(l.clone());
        }
        let lang = trace_words(&self.drive, n, Some(&controls()))?;
        let words: BTreeSet<Vec<u8>> = lang
            .words
            .iter()
            .map(|w| w.iter().map(|&s| s - STATES).collect())
            .collect();
        let witnesses = lang
            .witnesses
            .iter()
            .map(|(w, p)| (w.iter().map(|&s| s - STATES).collect(), p.clone()))
            .collect();
        let lang = Arc::new(TraceLanguage {
            words,
            witnesses,
            ..lang
        });
        self.languages
            .lock()
            .expect("language lock")
            .insert(n, lang.clone());
        Ok(lang)
    }

    /// Whether the automaton of `word` (rightmost first) is the identity.
    pub fn ca_identity(&self, word: &XBroomWord) -> Result<bool, ConstructionError> {
        let gens: Vec<(CA, ClassRule)> = word
            .letters()
            .iter()
            .map(|t| self.generator(t))
            .collect::<Result<_, _>>()?;
        // a moved periodic point settles it quickly
        for w in periodic_words(onesided_alphabet().len(), 4) {
            let mut cur = w.clone();
            for (f, _) in gens.iter().rev() {
                cur = f
                    .apply_periodic(&crate::ca::PeriodicConfig { word: cur })?
                    .word;
            }
            if cur != w {
                return Ok(false);
            }
        }
        let mut acc: Option<ClassRule> = None;
        for (_, c) in &gens {
            acc = Some(match acc {
                None => c.clone(),
                Some(a) => a.compose(c)?,
            });
        }
        Ok(acc.is_none_or(|a| a.is_identity()))
    }

    /// Whether the abstract element of `word` fixes every `(y, x) ∈ Y × X`.
    pub fn abstract_identity(&self, word: &XBroomWord) -> Result<bool, ConstructionError> {
        let form = cocycle_form(word, CONTROLS)?;
        let s = form.shift();
        if s != 0 {
            let n = s.unsigned_abs() as usize;
            let lang = self.language(n + 1)?;
            if lang.words.iter().any(|u| u[0] != u[n]) {
                return Ok(false);
            }
        }
        if form.support().is_empty() {
            return Ok(form.is_trivial_table());
        }
        let lang = self.language(form.span())?;
        Ok(form.is_trivial_on(&lang.words))
    }

    pub fn check(&self, word: &XBroomWord) -> Result<OneSidedVerdict, ConstructionError> {
        Ok(OneSidedVerdict {
            ca_identity: self.ca_identity(word)?,
            abstract_identity: self.abstract_identity(word)?,
        })
    }
}

/// `true` iff the automaton of `word` is the identity exactly when the
/// abstract element is.
pub fn check_one_sided(word: &XBroomWord) -> Result<bool, ConstructionError> {
    Ok(OneSidedSetup::global()?.check(word)?.agrees())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::{order_upto, transparent_symbols, PeriodicConfig};
    use crate::wreath::parse_xbroom;

    fn perm(s: &str) -> Perm {
        Perm::parse_cycles(s, 5).unwrap()
    }

    #[test]
    fn alphabet_layout() {
        let a = onesided_alphabet();
        assert_eq!(a.len(), 8);
        assert_eq!(a.name(state(0)), "q1");
        assert_eq!(a.name(control(2)), "2");
    }

    #[test]
    fn swap_rule_examples() {
        let f = build_fab(0, 1).unwrap();
        assert_eq!(f.rule().eval(&[control(0), control(2)]), control(1));
        assert_eq!(f.rule().eval(&[control(0), control(1)]), control(0));
        assert_eq!(f.rule().eval(&[control(1), state(3)]), control(0));
        assert_eq!(f.rule().eval(&[state(1), control(2)]), state(1));
        assert!(build_fab(1, 1).is_err());
        assert!(f.compose(&f).unwrap().is_identity());
        let f12 = build_fab(1, 2).unwrap();
        let raw = f12.compose_raw(&f12).unwrap();
        assert_eq!((raw.rule().lo(), raw.rule().hi()), (0, 2));
        assert!(raw.is_identity());
    }

    #[test]
    fn driver_shape() {
        let d = build_drive();
        assert_eq!((d.rule().lo(), d.rule().hi()), (0, 2));
        assert_eq!(transparent_symbols(d.rule()), states());
        let inv = drive_inverse().unwrap();
        assert!(inv.compose(&d).unwrap().is_identity());
        assert!(d.compose(&inv).unwrap().is_identity());
        assert_eq!(order_upto(&build_fab(0, 1).unwrap(), 10).unwrap(), Some(2));
    }

    #[test]
    fn state_cells_move_only_before_their_control() {
        let f = build_fpj(&perm("(1 2 3)"), 1).unwrap();
        let x = PeriodicConfig::new(vec![state(0), control(1), state(1), state(2)]).unwrap();
        assert_eq!(
            f.apply_periodic(&x).unwrap().word,
            vec![state(1), control(1), state(1), state(2)]
        );
    }

    #[test]
    fn driver_columns() {
        let prefix = [control(1), control(1), control(0), control(2), state(0)];
        assert_eq!(driver_column(&prefix, 0, 0).unwrap(), vec![control(1)]);
        let d = build_drive();
        let step = d
            .apply_window(&crate::ca::WindowConfig::new(prefix.to_vec(), 0))
            .unwrap();
        let col = driver_column(&prefix, 0, 2).unwrap();
        assert_eq!(col[1], step.at(0).unwrap());
        assert!(col.iter().all(|&s| is_control(s)));
        let back = driver_column(&prefix, -2, 0).unwrap();
        assert_eq!(back[2], control(1));
        assert!(driver_column(&prefix[..2], 0, 2).is_err());
    }

    #[test]
    fn one_sided_examples() {
        let setup = OneSidedSetup::global().unwrap();
        let v = setup.check(&parse_xbroom("rot rot'", 3).unwrap()).unwrap();
        assert_eq!(
            v,
            OneSidedVerdict {
                ca_identity: true,
                abstract_identity: true
            }
        );
        let v = setup
            .check(&parse_xbroom("p@1:(1 2 3)", 3).unwrap())
            .unwrap();
        assert_eq!(
            v,
            OneSidedVerdict {
                ca_identity: false,
                abstract_identity: false
            }
        );
        let v = setup.check(&parse_xbroom("rot", 3).unwrap()).unwrap();
        assert_eq!(
            v,
            OneSidedVerdict {
                ca_identity: false,
                abstract_identity: false
            }
        );
        // same control: a commutator of non-commuting permutations
        let w = parse_xbroom("[p@0:(1 2 3), p@0:(1 4 5)]", 3).unwrap();
        assert!(!setup.check(&w).unwrap().ca_identity);
        // different controls never fire together
        let w = parse_xbroom("[p@0:(1 2 3), p@1:(1 4 5)]", 3).unwrap();
        assert_eq!(
            setup.check(&w).unwrap(),
            OneSidedVerdict {
                ca_identity: true,
                abstract_identity: true
            }
        );
        assert!(check_one_sided(
            &parse_xbroom("[p@0:(1 2 3), rot p@1:(1 4 5) rot']^2", 3).unwrap()
        )
        .unwrap());
    }
}
