//! Injectivity via the pair graph and surjectivity via the subset
//! construction on the de Bruijn graph.

use std::collections::{HashMap, VecDeque};

use super::rule::{LocalRule1D, PeriodicConfig, Sidedness, CA};
use super::CaError;
use crate::par::*;

/// Largest pair graph (vertices) the injectivity check will build.
pub const PAIR_GRAPH_BUDGET: usize = 1 << 24;
/// Largest number of subsets the surjectivity search will visit.
pub const SUBSET_BUDGET: usize = 1 << 20;

/// Two bi-infinite configurations described as `left^∞ · bridge · right^∞`
/// on two tracks, with equal images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionWitness {
    pub left: [Vec<u8>; 2],
    pub bridge: [Vec<u8>; 2],
    pub right: [Vec<u8>; 2],
}

impl CollisionWitness {
    /// The pair of periodic points obtained when the witness is a single cycle.
    pub fn periodic_pair(&self) -> Option<(PeriodicConfig, PeriodicConfig)> {
        if self.left == self.right && self.bridge[0].is_empty() && self.bridge[1].is_empty() {
            Some((
                PeriodicConfig {
                    word: self.left[0].clone(),
                },
                PeriodicConfig {
                    word: self.left[1].clone(),
                },
            ))
        } else {
            None
        }
    }

    /// Checks by evaluation that the two configurations differ and have equal images.
    pub fn verify(&self, f: &CA) -> bool {
        match self.periodic_pair() {
            Some((u, v)) => {
                u != v
                    && matches!(
                        (f.apply_periodic(&u), f.apply_periodic(&v)),
                        (Ok(a), Ok(b)) if a == b
                    )
            }
            None => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectivityReport {
    pub injective: bool,
    pub witness: Option<CollisionWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub surjective: bool,
    /// A shortest word with no preimage.
    pub orphan: Option<Vec<u8>>,
}

/// A rule with window width at least 2, so that de Bruijn vertices are nonempty words.
fn working_rule(f: &CA) -> Result<LocalRule1D, CaError> {
    let r = f.rule();
    if r.width() == 1 {
        r.widen(r.lo(), r.hi() + 1)
    } else {
        Ok(r.clone())
    }
}

fn require_two_sided(f: &CA) -> Result<(), CaError> {
    match f.sided() {
        Sidedness::Two => Ok(()),
        Sidedness::One => Err(CaError::NeedsTwoSided),
    }
}

struct PairGraph {
    q: usize,
    /// number of words of length `m`
    words: usize,
    offsets: Vec<u32>,
    targets: Vec<u32>,
}

impl PairGraph {
    fn build(rule: &LocalRule1D) -> Result<PairGraph, CaError> {
        let q = rule.q();
        let m = rule.width() - 1;
        let words = q.pow(m as u32);
        let n = words
            .checked_mul(words)
            .filter(|&n| n <= PAIR_GRAPH_BUDGET)
            .ok_or(CaError::SearchTooLarge("pair graph"))?;
        let table = rule.table();
        let adjacency: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|vertex| {
                let (u, v) = (vertex / words, vertex % words);
                let mut by_output: Vec<Vec<u8>> = vec![Vec::new(); q];
                for b in 0..q {
                    by_output[table[v * q + b] as usize].push(b as u8);
                }
                let mut out = Vec::new();
                for a in 0..q {
                    let ua = u * q + a;
                    let nu = ua % words;
                    for &b in &by_output[table[ua] as usize] {
                        let nv = (v * q + b as usize) % words;
                        out.push((nu * words + nv) as u32);
                    }
                }
                out
            })
            .collect();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0u32);
        for adj in adjacency {
            targets.extend(adj);
            offsets.push(targets.len() as u32);
        }
        Ok(PairGraph {
            q,
            words,
            offsets,
            targets,
        })
    }

    fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    fn succ(&self, v: usize) -> &[u32] {
        &self.targets[self.offsets[v] as usize..self.offsets[v + 1] as usize]
    }

    fn is_diagonal(&self, v: usize) -> bool {
        v / self.words == v % self.words
    }

    /// Last symbols of the two tracks of vertex `v`.
    fn last_symbols(&self, v: usize) -> (u8, u8) {
        (
            ((v / self.words) % self.q) as u8,
            ((v % self.words) % self.q) as u8,
        )
    }
}

/// Strongly connected components (iterative Tarjan). Returns the component id of each vertex.
fn tarjan(g: &PairGraph) -> Vec<u32> {
    const UNSEEN: u32 = u32::MAX;
    let n = g.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0u32; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![UNSEEN; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(&mut (v, ref mut edge)) = call.last_mut() {
            if *edge == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            let succ = g.succ(v);
            if *edge < succ.len() {
                let w = succ[*edge] as usize;
                *edge += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

fn reach(n: usize, seeds: &[usize], next: impl Fn(usize, &mut dyn FnMut(usize))) -> Vec<bool> {
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &s in seeds {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        next(v, &mut |w| {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        });
    }
    seen
}

/// Decides injectivity of a two-sided CA on `Σ^ℤ`.
pub fn is_injective(f: &CA) -> Result<InjectivityReport, CaError> {
    require_two_sided(f)?;
    let rule = working_rule(f)?;
    let g = PairGraph::build(&rule)?;
    let n = g.len();
    let comp = tarjan(&g);

    let mut comp_size: HashMap<u32, usize> = HashMap::new();
    for &c in &comp {
        *comp_size.entry(c).or_default() += 1;
    }
    let cyclic: Vec<bool> = (0..n)
        .map(|v| comp_size[&comp[v]] > 1 || g.succ(v).contains(&(v as u32)))
        .collect();
    let seeds: Vec<usize> = (0..n).filter(|&v| cyclic[v]).collect();

    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n {
        for &w in g.succ(v) {
            preds[w as usize].push(v as u32);
        }
    }
    let forward = reach(n, &seeds, |v, push| {
        g.succ(v).iter().for_each(|&w| push(w as usize))
    });
    let backward = reach(n, &seeds, |v, push| {
        preds[v].iter().for_each(|&w| push(w as usize))
    });
    let bad = (0..n).any(|v| forward[v] && backward[v] && !g.is_diagonal(v));
    if !bad {
        return Ok(InjectivityReport {
            injective: true,
            witness: None,
        });
    }
    // Some non-diagonal vertex lies on a cycle: the diagonal is strongly
    // connected, so a non-diagonal survivor either sits in a cyclic component
    // of its own or shares one with the diagonal.
    let start = (0..n)
        .find(|&v| cyclic[v] && !g.is_diagonal(v))
        .expect("non-diagonal cyclic vertex");
    let cycle = cycle_through(&g, &comp, start);
    let mut top = Vec::with_capacity(cycle.len());
    let mut bottom = Vec::with_capacity(cycle.len());
    for &v in &cycle {
        let (a, b) = g.last_symbols(v);
        top.push(a);
        bottom.push(b);
    }
    let witness = CollisionWitness {
        left: [top.clone(), bottom.clone()],
        bridge: [Vec::new(), Vec::new()],
        right: [top, bottom],
    };
    debug_assert!(witness.verify(&CA::two_sided(rule)));
    Ok(InjectivityReport {
        injective: false,
        witness: Some(witness),
    })
}

/// Vertices of a shortest cycle through `start`, ending at `start`.
fn cycle_through(g: &PairGraph, comp: &[u32], start: usize) -> Vec<usize> {
    let c = comp[start];
    let mut parent: HashMap<usize, usize> = HashMap::new();
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &w in g.succ(v) {
            let w = w as usize;
            if comp[w] != c {
                continue;
            }
            if w == start {
                let mut path = vec![start];
                let mut cur = v;
                while cur != start {
                    path.push(cur);
                    cur = parent[&cur];
                }
                path.reverse();
                // path = [.., v, start] walked forward from start's successor
                return path;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    unreachable!("vertex in a cyclic component lies on a cycle")
}

/// Decides surjectivity of a two-sided CA; non-surjective rules come with a
/// shortest orphan word.
pub fn is_surjective(f: &CA) -> Result<SurjectivityReport, CaError> {
    require_two_sided(f)?;
    let rule = working_rule(f)?;
    let q = rule.q();
    let m = rule.width() - 1;
    let words = q.pow(m as u32);
    let table = rule.table();
    let blocks = words.div_ceil(64);
    let full: Vec<u64> = (0..blocks)
        .map(|b| {
            let bits = (words - b * 64).min(64);
            if bits == 64 {
                u64::MAX
            } else {
                (1u64 << bits) - 1
            }
        })
        .collect();

    let step = |set: &[u64], s: u8| -> Vec<u64> {
        let mut out = vec![0u64; blocks];
        for (bi, &bits) in set.iter().enumerate() {
            let mut bits = bits;
            while bits != 0 {
                let v = bi * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for a in 0..q {
                    let idx = v * q + a;
                    if table[idx] == s {
                        let w = idx % words;
                        out[w / 64] |= 1 << (w % 64);
                    }
                }
            }
        }
        out
    };

    let mut seen: HashMap<Vec<u64>, (usize, u8)> = HashMap::new();
    let mut order: Vec<Vec<u64>> = vec![full.clone()];
    seen.insert(full, (usize::MAX, 0));
    let mut head = 0;
    while head < order.len() {
        let cur = order[head].clone();
        let nexts: Vec<Vec<u64>> = (0..q as u8)
            .into_par_iter()
            .map(|s| step(&cur, s))
            .collect();
        for (s, next) in nexts.into_iter().enumerate() {
            if seen.contains_key(&next) {
                continue;
            }
            let empty = next.iter().all(|&b| b == 0);
            seen.insert(next.clone(), (head, s as u8));
            if empty {
                let mut orphan = Vec::new();
                let mut key = next;
                while let Some(&(parent, sym)) = seen.get(&key) {
                    if parent == usize::MAX {
                        break;
                    }
                    orphan.push(sym);
                    key = order[parent].clone();
                }
                orphan.reverse();
                return Ok(SurjectivityReport {
                    surjective: false,
                    orphan: Some(orphan),
                });
            }
            if order.len() >= SUBSET_BUDGET {
                return Err(CaError::SearchTooLarge("subset construction"));
            }
            order.push(next);
        }
        head += 1;
    }
    Ok(SurjectivityReport {
        surjective: true,
        orphan: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::rule::Alphabet;

    fn binary(lo: i32, hi: i32, f: impl Fn(&[u8]) -> u8 + Sync) -> CA {
        CA::two_sided(LocalRule1D::from_fn(Alphabet::numeric(2), lo, hi, f).unwrap())
    }

    #[test]
    fn shift_is_bijective() {
        let s = CA::shift(Alphabet::numeric(3), Sidedness::Two);
        assert!(is_injective(&s).unwrap().injective);
        assert!(is_surjective(&s).unwrap().surjective);
    }

    #[test]
    fn constant_rule_collides() {
        let c = binary(0, 0, |_| 0);
        let rep = is_injective(&c).unwrap();
        assert!(!rep.injective);
        assert!(rep.witness.unwrap().verify(&c));
        let s = is_surjective(&c).unwrap();
        assert_eq!(s.orphan, Some(vec![1]));
    }

    #[test]
    fn or_rule_is_not_injective() {
        let or = binary(0, 1, |w| w[0] | w[1]);
        let rep = is_injective(&or).unwrap();
        assert!(!rep.injective);
        let w = rep.witness.unwrap();
        assert!(w.verify(&or));
        assert!(!is_surjective(&or).unwrap().surjective);
    }

    #[test]
    fn xor_is_surjective_not_injective() {
        let xor = binary(0, 1, |w| w[0] ^ w[1]);
        assert!(is_surjective(&xor).unwrap().surjective);
        let rep = is_injective(&xor).unwrap();
        assert!(!rep.injective);
        assert!(rep.witness.unwrap().verify(&xor));
    }

    #[test]
    fn orphans_are_shortest() {
        // AND outputs 1 only on 11, so 1 0 1 would need x1 = x2 = 1
        let and = binary(0, 1, |w| w[0] & w[1]);
        let orphan = is_surjective(&and).unwrap().orphan.unwrap();
        assert_eq!(orphan, vec![1, 0, 1]);
    }

    #[test]
    fn one_sided_input_rejected() {
        let s = CA::shift(Alphabet::numeric(2), Sidedness::One);
        assert_eq!(is_injective(&s), Err(CaError::NeedsTwoSided));
    }
}
