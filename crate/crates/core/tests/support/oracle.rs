//! Brute-force enumeration oracle for description costs.
//!
//! Builds every code of the grammar bottom-up by decoded length over a small
//! domain, keeping the cheapest cost seen for each decoded sequence. Unlike
//! the interval search it checks, it covers nested concatenations, repeats
//! of any body, and single-part productions, and it shares no code with the
//! library: costs come from the production rules written out here.

#![allow(dead_code, clippy::needless_range_loop)]

pub struct Oracle {
    lo: i64,
    width: usize,
    max_len: usize,
    /// `best[len][index]`, sequences indexed big-endian in base `width`.
    best: Vec<Vec<f64>>,
}

const TAG: f64 = 2.0;

fn gamma(v: u64) -> f64 {
    // 2 * floor(log2(v + 1)) + 1, by counting bits
    let mut n = v as u128 + 1;
    let mut floor_log = 0u32;
    while n > 1 {
        n >>= 1;
        floor_log += 1;
    }
    f64::from(2 * floor_log + 1)
}

impl Oracle {
    pub fn build(lo: i64, hi: i64, max_len: usize) -> Oracle {
        let width = (hi - lo + 1) as usize;
        let literal = TAG + (width as f64).log2();
        let mut best: Vec<Vec<f64>> = vec![Vec::new()];
        for len in 1..=max_len {
            let size = width.pow(len as u32);
            let mut table = vec![f64::INFINITY; size];

            if len == 1 {
                table.iter_mut().for_each(|c| *c = literal);
            }

            // arithmetic runs, any length (length 1 included)
            for start in 0..width as i64 {
                for step in -(width as i64)..=(width as i64) {
                    let last = start + step * (len as i64 - 1);
                    if last < 0 || last >= width as i64 {
                        continue;
                    }
                    let idx = (0..len as i64).fold(0usize, |acc, i| acc * width + (start + step * i) as usize);
                    let cost = TAG + literal + gamma(step.unsigned_abs()) + 1.0 + gamma(len as u64);
                    table[idx] = table[idx].min(cost);
                }
            }

            // repeats of any strictly shorter body
            for period in 1..len {
                if len % period != 0 {
                    continue;
                }
                let count = len / period;
                let body_size = width.pow(period as u32);
                for body in 0..body_size {
                    let idx = (0..count).fold(0usize, |acc, _| acc * body_size + body);
                    let cost = TAG + best[period][body] + gamma(count as u64);
                    table[idx] = table[idx].min(cost);
                }
            }

            // concatenations of two or more parts, each part any code
            for parts in compositions(len).into_iter().filter(|p| p.len() >= 2) {
                let head = TAG + gamma(parts.len() as u64);
                let mut bounds = Vec::with_capacity(parts.len());
                let mut end = len;
                for &p in parts.iter().rev() {
                    bounds.push((width.pow((len - end) as u32), width.pow(p as u32), p));
                    end -= p;
                }
                for (idx, slot) in table.iter_mut().enumerate() {
                    let mut cost = head;
                    for &(shift, modulus, p) in &bounds {
                        cost += best[p][(idx / shift) % modulus];
                    }
                    if cost < *slot {
                        *slot = cost;
                    }
                }
            }
            best.push(table);
        }
        Oracle { lo, width, max_len, best }
    }

    pub fn cost(&self, seq: &[i64]) -> f64 {
        let idx = seq.iter().fold(0usize, |acc, &v| acc * self.width + (v - self.lo) as usize);
        self.best[seq.len()][idx]
    }

    /// Every sequence of the given length, in index order.
    pub fn sequences(&self, len: usize) -> impl Iterator<Item = Vec<i64>> + '_ {
        let size = self.width.pow(len as u32);
        (0..size).map(move |mut idx| {
            let mut seq = vec![0; len];
            for slot in seq.iter_mut().rev() {
                *slot = self.lo + (idx % self.width) as i64;
                idx /= self.width;
            }
            seq
        })
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Cost of concatenating one literal per element.
    pub fn all_literals(&self, len: usize) -> f64 {
        if len == 1 {
            return TAG + (self.width as f64).log2();
        }
        TAG + gamma(len as u64) + len as f64 * (TAG + (self.width as f64).log2())
    }
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Compares `check(seq)` against the oracle for every sequence up to the
/// oracle's length bound, in parallel. Returns the number of sequences checked
/// and the first few disagreements.
pub fn sweep(oracle: &Oracle, check: impl Fn(&[i64]) -> f64 + Sync) -> (usize, Vec<(Vec<i64>, f64, f64)>) {
    let threads = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let mut checked = 0;
    let mut bad = Vec::new();
    for len in 1..=oracle.max_len() {
        let seqs: Vec<Vec<i64>> = oracle.sequences(len).collect();
        let chunk = seqs.len().div_ceil(threads);
        let results: Vec<Vec<(Vec<i64>, f64, f64)>> = std::thread::scope(|s| {
            let handles: Vec<_> = seqs
                .chunks(chunk)
                .map(|part| {
                    let check = &check;
                    s.spawn(move || {
                        part.iter()
                            .filter_map(|seq| {
                                let got = check(seq);
                                let want = oracle.cost(seq);
                                ((got - want).abs() > 1e-9).then(|| (seq.clone(), got, want))
                            })
                            .take(5)
                            .collect()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        checked += seqs.len();
        bad.extend(results.into_iter().flatten().take(5));
    }
    (checked, bad)
}
