use super::rule::{increment, CA};
use super::CaError;
use crate::par::*;
use crate::perm::lcm;

/// Periodic points examined before falling back to table powers.
const ORBIT_BUDGET: usize = 1 << 19;

/// The least `k ≤ kmax` with `fᵏ = id`, or `None` if there is none.
///
/// Every periodic point's orbit length divides the order, so an orbit (or an
/// lcm of orbits) longer than `kmax` certifies `None`. Otherwise the multiples
/// of that lcm are tested on canonical tables.
pub fn order_upto(f: &CA, kmax: u64) -> Result<Option<u64>, CaError> {
    if kmax == 0 {
        return Err(CaError::BadBound("kmax must be at least 1"));
    }
    let q = f.rule().q();
    let mut l = 1u64;
    let mut spent = 0usize;
    for period in 1.. {
        let count = match q.checked_pow(period as u32) {
            Some(c) if spent + c <= ORBIT_BUDGET => c,
            _ => break,
        };
        spent += count;
        let orbits: Vec<u64> = (0..count)
            .into_par_iter()
            .map(|idx| {
                let mut word = vec![0u8; period];
                super::rule::decode(idx, q, &mut word);
                orbit_length(f, &word, kmax)
            })
            .collect();
        for o in orbits {
            l = lcm(l, o);
            if l > kmax {
                return Ok(None);
            }
        }
    }

    let g = power(f, l)?;
    let mut h = g.clone();
    let mut k = l;
    while k <= kmax {
        if h.is_identity() {
            return Ok(Some(k));
        }
        h = h.compose(&g)?;
        k += l;
    }
    Ok(None)
}

/// Length of the orbit of the periodic point `word^∞`, capped at `cap + 1`.
fn orbit_length(f: &CA, word: &[u8], cap: u64) -> u64 {
    let mut cur = f.apply_periodic_unchecked(word);
    let mut n = 1u64;
    while cur != word {
        if n > cap {
            return cap + 1;
        }
        cur = f.apply_periodic_unchecked(&cur);
        n += 1;
    }
    n
}

/// `fᵏ` in canonical form, by repeated squaring.
pub fn power(f: &CA, mut k: u64) -> Result<CA, CaError> {
    let mut result = CA::identity(f.alphabet().clone(), f.sided());
    let mut base = f.canonicalize();
    while k > 0 {
        if k & 1 == 1 {
            result = result.compose(&base)?;
        }
        k >>= 1;
        if k > 0 {
            base = base.compose(&base)?;
        }
    }
    Ok(result)
}

/// Every periodic word of each period up to `max_period`, in lexicographic order.
pub fn periodic_words(q: usize, max_period: usize) -> impl Iterator<Item = Vec<u8>> {
    (1..=max_period).flat_map(move |p| {
        let mut w = vec![0u8; p];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = w.clone();
            done = !increment(&mut w, q);
            Some(out)
        })
    })
}
