use super::rule::{decode, increment, table_size, LocalRule1D, Sidedness, CA, TABLE_BUDGET};
use super::CaError;
use crate::par::*;

/// Default bound on the offsets of an inverse candidate.
pub const DEFAULT_MAX_RANGE: i32 = 4;

const UNSET: u8 = u8::MAX;

enum Candidate {
    Found(LocalRule1D),
    /// Two preimages with different centres share an image window.
    Ambiguous,
    /// Some window is not an image at all.
    NotSurjective,
}

/// Searches for `g` with `g ∘ f = f ∘ g = id` and offsets within
/// `[-max_range, max_range]` (one-sided: `[0, max_range]`).
///
/// `Ok(None)` means no inverse exists within the bound, or `f` is not surjective.
pub fn invert(f: &CA, max_range: i32) -> Result<Option<CA>, CaError> {
    let rule = f.rule().canonicalize();
    let mut ranges = Vec::new();
    let min_a = match f.sided() {
        Sidedness::One => 0,
        Sidedness::Two => -max_range,
    };
    for width in 1..=(max_range - min_a + 1) {
        for a in min_a..=max_range {
            let b = a + width - 1;
            if b > max_range {
                break;
            }
            // the image window must see x_0
            if a + rule.lo() <= 0 && 0 <= b + rule.hi() {
                ranges.push((a, b));
            }
        }
    }
    for (a, b) in ranges {
        match candidate(&rule, a, b)? {
            Candidate::Found(g) => {
                let g = CA::new(g, f.sided())?;
                let f = CA::new(rule.clone(), f.sided())?;
                if g.compose(&f)?.is_identity() && f.compose(&g)?.is_identity() {
                    return Ok(Some(g.canonicalize()));
                }
            }
            Candidate::Ambiguous => {}
            Candidate::NotSurjective => return Ok(None),
        }
    }
    Ok(None)
}

/// Tabulates `y[a..=b] ↦ x_0` over all source windows `x[a+lo ..= b+hi]`.
fn candidate(rule: &LocalRule1D, a: i32, b: i32) -> Result<Candidate, CaError> {
    let q = rule.q();
    let gw = (b - a + 1) as usize;
    let src_w = gw + rule.width() - 1;
    let centre = (-(a + rule.lo())) as usize;
    let g_size = table_size(q, gw)?;
    let src_size = q
        .checked_pow(src_w as u32)
        .filter(|&s| s <= TABLE_BUDGET * 8)
        .ok_or(CaError::TableTooLarge { q, width: src_w })?;
    const CHUNK: usize = 1 << 16;
    let chunks = src_size.div_ceil(CHUNK);
    let rw = rule.width();
    let partial: Vec<Option<Vec<u8>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut table = vec![UNSET; g_size];
            let mut x = vec![0u8; src_w];
            decode(c * CHUNK, q, &mut x);
            let end = ((c + 1) * CHUNK).min(src_size);
            for _ in c * CHUNK..end {
                let idx =
                    (0..gw).fold(0usize, |acc, k| acc * q + rule.eval(&x[k..k + rw]) as usize);
                let slot = &mut table[idx];
                if *slot == UNSET {
                    *slot = x[centre];
                } else if *slot != x[centre] {
                    return None;
                }
                increment(&mut x, q);
            }
            Some(table)
        })
        .collect();
    let mut table = vec![UNSET; g_size];
    for part in partial {
        let Some(part) = part else {
            return Ok(Candidate::Ambiguous);
        };
        for (slot, v) in table.iter_mut().zip(part) {
            if v == UNSET {
                continue;
            }
            if *slot == UNSET {
                *slot = v;
            } else if *slot != v {
                return Ok(Candidate::Ambiguous);
            }
        }
    }
    if table.contains(&UNSET) {
        return Ok(Candidate::NotSurjective);
    }
    Ok(Candidate::Found(LocalRule1D::new(
        rule.alphabet().clone(),
        a,
        b,
        table,
    )?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::rule::Alphabet;

    #[test]
    fn inverse_of_shift() {
        let s = CA::shift(Alphabet::numeric(3), Sidedness::Two);
        let g = invert(&s, DEFAULT_MAX_RANGE).unwrap().unwrap();
        assert_eq!((g.rule().lo(), g.rule().hi()), (-1, -1));
        assert_eq!(g.rule().table(), &[0, 1, 2]);
    }

    #[test]
    fn one_sided_shift_has_no_inverse() {
        let s = CA::shift(Alphabet::numeric(2), Sidedness::One);
        assert_eq!(invert(&s, 3).unwrap(), None);
    }

    #[test]
    fn non_surjective_and_non_injective_rules() {
        let a = Alphabet::numeric(2);
        let or = CA::two_sided(LocalRule1D::from_fn(a.clone(), 0, 1, |w| w[0] | w[1]).unwrap());
        assert_eq!(invert(&or, 2).unwrap(), None);
        let xor = CA::two_sided(LocalRule1D::from_fn(a, 0, 1, |w| w[0] ^ w[1]).unwrap());
        assert_eq!(invert(&xor, 2).unwrap(), None);
    }

    #[test]
    fn inverse_with_memory() {
        // flip 0 and 1 behind a 2
        let a = Alphabet::numeric(3);
        let f = LocalRule1D::from_fn(a, -1, 0, |w| {
            if w[0] == 2 && w[1] < 2 {
                1 - w[1]
            } else {
                w[1]
            }
        })
        .unwrap();
        let f = CA::two_sided(f);
        let g = invert(&f, 2).unwrap().unwrap();
        assert!(g.compose(&f).unwrap().is_identity());
        assert!(f.compose(&g).unwrap().is_identity());
    }
}
