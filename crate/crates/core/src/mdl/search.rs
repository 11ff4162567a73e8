//! Exhaustive shortest-description search over the code grammar.
//!
//! Interval dynamic programming over `seq[i..j]`:
//!
//! * an *atom* is a non-`Concat` code: a literal, an arithmetic run, or a
//!   repetition of the best code for a shorter prefix period;
//! * the best code for a range is the cheaper of its best atom and every flat
//!   `Concat` of two or more atoms partitioning the range.
//!
//! Nested `Concat`s, `Repeat(_, 1)` and length-1 `ArithSeq`s are always
//! strictly more expensive than an equivalent code the search does consider,
//! so the restriction loses nothing.
//!
//! Ties on cost go to fewer `Concat` parts (counted over the whole tree),
//! then to the lexicographically smaller pre-order sequence of production
//! tags.

use std::cmp::Ordering;

use super::code::{integer_bits, Code, Domain, Literal, TAG_BITS};
use super::MdlError;
use crate::cost::BitCost;

/// Longest sequence accepted by [`shortest_description`].
pub const MAX_SEARCH_LEN: usize = 12;

const SIGN_BITS: u32 = 1;

#[derive(Debug, Clone)]
enum Shape {
    Literal,
    Arith {
        step: i64,
    },
    Repeat {
        period: usize,
    },
    /// Atom boundaries, as absolute offsets `start, b1, .., end`.
    Concat(Vec<usize>),
}

#[derive(Debug, Clone)]
struct Cand {
    fixed: u32,
    literals: u32,
    concat_parts: u32,
    tags: Vec<u8>,
    shape: Shape,
}

impl Cand {
    fn bits(&self, log_width: f64) -> f64 {
        // same evaluation order as CostTally::bits for a single domain
        self.fixed as f64 + self.literals as f64 * log_width
    }

    fn cmp(&self, other: &Cand, log_width: f64) -> Ordering {
        self.bits(log_width)
            .total_cmp(&other.bits(log_width))
            .then(self.concat_parts.cmp(&other.concat_parts))
            .then_with(|| self.tags.cmp(&other.tags))
    }
}

fn keep_best(slot: &mut Option<Cand>, cand: Cand, log_width: f64) {
    match slot {
        Some(cur) if cand.cmp(cur, log_width) != Ordering::Less => {}
        _ => *slot = Some(cand),
    }
}

struct Search<'a> {
    seq: &'a [i64],
    domain: Domain,
    log_width: f64,
    /// `atom[i][j]`: best non-Concat code for `seq[i..j]`
    atom: Vec<Vec<Option<Cand>>>,
    /// `any[i][j]`: best code of any shape for `seq[i..j]`
    any: Vec<Vec<Option<Cand>>>,
    /// `cover[i][j][m]`: best partition of `seq[i..j]` into `m` atoms
    cover: Vec<Vec<Vec<Option<Cand>>>>,
}

impl<'a> Search<'a> {
    fn new(seq: &'a [i64], domain: Domain) -> Self {
        let n = seq.len();
        Search {
            seq,
            domain,
            log_width: (domain.width() as f64).log2(),
            atom: vec![vec![None; n + 1]; n + 1],
            any: vec![vec![None; n + 1]; n + 1],
            cover: vec![vec![vec![None; n + 1]; n + 1]; n + 1],
        }
    }

    fn run(&mut self) {
        let n = self.seq.len();
        for len in 1..=n {
            for i in 0..=n - len {
                let j = i + len;
                self.best_atom(i, j);
                self.best_cover(i, j);
                self.best_any(i, j);
            }
        }
    }

    fn best_atom(&mut self, i: usize, j: usize) {
        let lw = self.log_width;
        let len = j - i;
        let mut best = None;

        if len == 1 {
            keep_best(
                &mut best,
                Cand { fixed: TAG_BITS as u32, literals: 1, concat_parts: 0, tags: vec![0], shape: Shape::Literal },
                lw,
            );
        }

        if len >= 2 {
            let run = &self.seq[i..j];
            let step = run[1] as i128 - run[0] as i128;
            if run.windows(2).all(|w| w[1] as i128 - w[0] as i128 == step) {
                // a constant step between in-domain values fits in i64 only
                // when the domain is narrower than 2^63
                if let Ok(step) = i64::try_from(step) {
                    let fixed = 2 * TAG_BITS as u32
                        + integer_bits(step.unsigned_abs()) as u32
                        + SIGN_BITS
                        + integer_bits(len as u64) as u32;
                    keep_best(
                        &mut best,
                        Cand { fixed, literals: 1, concat_parts: 0, tags: vec![1], shape: Shape::Arith { step } },
                        lw,
                    );
                }
            }

            for period in 1..len {
                if !len.is_multiple_of(period) {
                    continue;
                }
                let body = &self.seq[i..i + period];
                if !run.chunks(period).all(|c| c == body) {
                    continue;
                }
                let inner = self.any[i][i + period].as_ref().expect("shorter range solved");
                let mut tags = Vec::with_capacity(inner.tags.len() + 1);
                tags.push(2);
                tags.extend_from_slice(&inner.tags);
                keep_best(
                    &mut best,
                    Cand {
                        fixed: TAG_BITS as u32 + inner.fixed + integer_bits((len / period) as u64) as u32,
                        literals: inner.literals,
                        concat_parts: inner.concat_parts,
                        tags,
                        shape: Shape::Repeat { period },
                    },
                    lw,
                );
            }
        }

        self.atom[i][j] = best;
    }

    /// Fills `cover[i][j][m]` for every `m`, from partitions of shorter ranges.
    fn best_cover(&mut self, i: usize, j: usize) {
        let lw = self.log_width;
        self.cover[i][j][1] = self.atom[i][j].clone();
        for m in 2..=j - i {
            let mut best: Option<Cand> = None;
            for k in i + m - 1..j {
                let (Some(head), Some(last)) = (&self.cover[i][k][m - 1], &self.atom[k][j]) else {
                    continue;
                };
                let mut bounds = match &head.shape {
                    Shape::Concat(b) => b.clone(),
                    _ => vec![i, k],
                };
                bounds.push(j);
                let mut tags = head.tags.clone();
                tags.extend_from_slice(&last.tags);
                keep_best(
                    &mut best,
                    Cand {
                        fixed: head.fixed + last.fixed,
                        literals: head.literals + last.literals,
                        concat_parts: head.concat_parts + last.concat_parts,
                        tags,
                        shape: Shape::Concat(bounds),
                    },
                    lw,
                );
            }
            self.cover[i][j][m] = best;
        }
    }

    fn best_any(&mut self, i: usize, j: usize) {
        let lw = self.log_width;
        let mut best = self.atom[i][j].clone();
        for m in 2..=j - i {
            if let Some(c) = &self.cover[i][j][m] {
                let mut tags = Vec::with_capacity(c.tags.len() + 1);
                tags.push(3);
                tags.extend_from_slice(&c.tags);
                keep_best(
                    &mut best,
                    Cand {
                        fixed: TAG_BITS as u32 + c.fixed + integer_bits(m as u64) as u32,
                        literals: c.literals,
                        concat_parts: c.concat_parts + m as u32,
                        tags,
                        shape: c.shape.clone(),
                    },
                    lw,
                );
            }
        }
        self.any[i][j] = best;
    }

    fn literal(&self, at: usize) -> Literal {
        Literal { value: self.seq[at], domain: self.domain }
    }

    fn build(&self, cand: &Cand, i: usize, j: usize) -> Code {
        match &cand.shape {
            Shape::Literal => Code::Literal(self.literal(i)),
            Shape::Arith { step } => Code::ArithSeq { start: self.literal(i), step: *step, length: (j - i) as u64 },
            Shape::Repeat { period } => {
                let body = self.any[i][i + period].as_ref().expect("solved");
                Code::Repeat { body: Box::new(self.build(body, i, i + period)), count: ((j - i) / period) as u64 }
            }
            Shape::Concat(bounds) => Code::Concat {
                parts: bounds
                    .windows(2)
                    .map(|w| {
                        let a = self.atom[w[0]][w[1]].as_ref().expect("solved");
                        self.build(a, w[0], w[1])
                    })
                    .collect(),
            },
        }
    }
}

/// Finds a minimal-cost code decoding exactly to `seq`.
///
/// Every element must lie in `domain`, and `1 <= seq.len() <= MAX_SEARCH_LEN`.
pub fn shortest_description(seq: &[i64], domain: Domain) -> Result<(Code, BitCost), MdlError> {
    if seq.is_empty() {
        return Err(MdlError::EmptySequence);
    }
    if seq.len() > MAX_SEARCH_LEN {
        return Err(MdlError::Capacity { len: seq.len(), max: MAX_SEARCH_LEN });
    }
    seq.iter().try_for_each(|&v| domain.check(v))?;

    let mut search = Search::new(seq, domain);
    search.run();
    let n = seq.len();
    let best = search.any[0][n].as_ref().expect("a literal encoding always exists");
    let code = search.build(best, 0, n);
    let cost = BitCost::new(best.bits(search.log_width)).expect("non-negative");
    debug_assert_eq!(super::code_cost(&code).map(BitCost::bits), Ok(cost.bits()));
    Ok((code, cost))
}
